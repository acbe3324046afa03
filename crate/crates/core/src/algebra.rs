//! `TL_n(q)` and `TL-hat_{n+1}(q)` as spans of fully commutative heaps.
//!
//! Products are computed in the `g` basis by right-multiplying one letter at a time. A
//! letter that collides with the heap either squares a generator (quadratic relation) or
//! completes a braid triple, which is rewritten with `V(g_s, g_t) = 0` into strictly
//! shorter words.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::RingElem;
use crate::words::{Append, Heap, Letter, System};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "g")]
    G,
    #[serde(rename = "T")]
    T,
    #[serde(rename = "f")]
    F,
}

impl Basis {
    pub fn symbol(self) -> &'static str {
        match self {
            Basis::G => "g",
            Basis::T => "T",
            Basis::F => "f",
        }
    }
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Basis> {
        match s {
            "g" => Ok(Basis::G),
            "T" => Ok(Basis::T),
            "f" => Ok(Basis::F),
            _ => Err(Error::Usage(format!("unknown basis {s:?}; expected g, T or f"))),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

type Terms = Vec<(Heap, RingElem)>;

static CACHE_ENABLED: AtomicBool = AtomicBool::new(true);

thread_local! {
    static PRODUCTS: RefCell<HashMap<(System, Heap, Letter), Rc<Terms>>> = RefCell::new(HashMap::new());
    static F_WORDS: RefCell<HashMap<(System, Heap), Rc<Terms>>> = RefCell::new(HashMap::new());
}

/// Turns the heap-times-letter memo on or off. Results are identical either way.
pub fn set_product_cache(enabled: bool) {
    CACHE_ENABLED.store(enabled, Ordering::SeqCst);
    if !enabled {
        clear_product_cache();
    }
}

pub fn product_cache_enabled() -> bool {
    CACHE_ENABLED.load(Ordering::SeqCst)
}

/// Drops this thread's memoised products.
pub fn clear_product_cache() {
    PRODUCTS.with(|c| c.borrow_mut().clear());
    F_WORDS.with(|c| c.borrow_mut().clear());
}

fn accumulate(acc: &mut HashMap<Heap, RingElem>, h: Heap, c: RingElem) {
    if c.is_zero() {
        return;
    }
    match acc.entry(h) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            let s = e.get().add(&c);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

/// `g_h · g_s` in the g basis.
fn heap_times_letter(system: &System, h: &Heap, s: Letter) -> Rc<Terms> {
    let cached = product_cache_enabled();
    if cached {
        let key = (*system, h.clone(), s);
        if let Some(hit) = PRODUCTS.with(|c| c.borrow().get(&key).cloned()) {
            return hit;
        }
    }
    let out: Terms = match h.append(system, s) {
        Append::Extends(e) => vec![(e, RingElem::one())],
        Append::QuadraticAt(r) => {
            let q = RingElem::q();
            vec![(h.clone(), q.sub(&RingElem::one())), (r, q)]
        }
        Append::BraidSplit { prefix, t, suffix } => {
            // g_h g_s = g_P (g_s g_t g_s) g_R and g_s g_t g_s = -(g_s g_t + g_t g_s + g_s + g_t + 1)
            let mut acc = HashMap::new();
            let minus_one = RingElem::from_int(-1);
            let middles: [&[Letter]; 5] = [&[s, t], &[t, s], &[s], &[t], &[]];
            for mid in middles {
                let word: Vec<Letter> = mid.iter().chain(suffix.iter()).copied().collect();
                let part = comb_times_word(system, vec![(prefix.clone(), minus_one.clone())], &word);
                for (k, c) in part {
                    accumulate(&mut acc, k, c);
                }
            }
            acc.into_iter().collect()
        }
    };
    let out = Rc::new(out);
    if cached {
        PRODUCTS.with(|c| c.borrow_mut().insert((*system, h.clone(), s), out.clone()));
    }
    out
}

fn comb_times_word(system: &System, mut comb: Terms, word: &[Letter]) -> Terms {
    for &s in word {
        let mut acc = HashMap::with_capacity(comb.len() * 2);
        for (h, c) in &comb {
            for (k, d) in heap_times_letter(system, h, s).iter() {
                accumulate(&mut acc, k.clone(), c.mul(d));
            }
        }
        comb = acc.into_iter().collect();
    }
    comb
}

/// `f_w` expanded in the g basis, multiplying `(g_s + 1)/(q + 1)` along the stored word.
fn f_word_in_g(system: &System, h: &Heap) -> Rc<Terms> {
    let cached = product_cache_enabled();
    if cached {
        if let Some(hit) = F_WORDS.with(|c| c.borrow().get(&(*system, h.clone())).cloned()) {
            return hit;
        }
    }
    let out = Rc::new(f_along_word(system, h.word()));
    if cached {
        F_WORDS.with(|c| c.borrow_mut().insert((*system, h.clone()), out.clone()));
    }
    out
}

/// Product of `f_s` factors along an explicit word, in the g basis.
fn f_along_word(system: &System, word: &[Letter]) -> Terms {
    let inv = RingElem::one().add(&RingElem::q()).inv().expect("1+q is nonzero");
    let mut comb: Terms = vec![(Heap::identity(), RingElem::one())];
    for &s in word {
        let mut acc = HashMap::new();
        for (h, c) in &comb {
            let c = c.mul(&inv);
            accumulate(&mut acc, h.clone(), c.clone());
            for (k, d) in heap_times_letter(system, h, s).iter() {
                accumulate(&mut acc, k.clone(), c.mul(d));
            }
        }
        comb = acc.into_iter().collect();
    }
    comb
}

/// A finite K-linear combination of basis heaps in one algebra and one basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    system: System,
    basis: Basis,
    terms: BTreeMap<Heap, RingElem>,
}

impl Element {
    pub fn zero(system: System, basis: Basis) -> Self {
        Element { system, basis, terms: BTreeMap::new() }
    }

    pub fn one(system: System) -> Self {
        Self::scalar(system, RingElem::one())
    }

    pub fn scalar(system: System, c: RingElem) -> Self {
        Self::monomial(system, Basis::G, Heap::identity(), c)
    }

    pub fn monomial(system: System, basis: Basis, heap: Heap, c: RingElem) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(heap, c);
        }
        Element { system, basis, terms }
    }

    pub fn basis_element(system: System, basis: Basis, heap: Heap) -> Self {
        Self::monomial(system, basis, heap, RingElem::one())
    }

    /// The basis element of a reduced fully commutative word.
    pub fn from_word(system: System, basis: Basis, letters: &[Letter]) -> Result<Self> {
        Ok(Self::basis_element(system, basis, Heap::from_word(&system, letters)?))
    }

    /// `g_s`.
    pub fn generator(system: System, s: Letter) -> Result<Self> {
        Self::from_word(system, Basis::G, &[s])
    }

    /// `g_s^{-1} = q^{-1} g_s - (q-1)/q`.
    pub fn generator_inverse(system: System, s: Letter) -> Result<Self> {
        let q = RingElem::q();
        let qi = q.inv()?;
        let g = Self::generator(system, s)?;
        let c = RingElem::one().sub(&q).mul(&qi);
        g.scale(&qi).add_scale(&Self::one(system), &c)
    }

    /// `g_{s_1} ... g_{s_k}` for any word, reduced or not.
    pub fn word_product(system: System, letters: &[Letter]) -> Result<Self> {
        if let Some(&s) = letters.iter().find(|&&s| !system.contains(s)) {
            return Err(Error::Usage(format!("letter {s} is not in system {system}")));
        }
        let terms = comb_times_word(&system, vec![(Heap::identity(), RingElem::one())], letters);
        Ok(Self::from_terms(system, Basis::G, terms))
    }

    /// `g_{s_1}^{e_1} ... g_{s_k}^{e_k}` with `e_i = ±1`.
    pub fn signed_word_product(system: System, letters: &[(Letter, bool)]) -> Result<Self> {
        let mut acc = Self::one(system);
        for &(s, inverse) in letters {
            let f = if inverse {
                Self::generator_inverse(system, s)?
            } else {
                Self::generator(system, s)?
            };
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    pub(crate) fn from_terms(system: System, basis: Basis, terms: impl IntoIterator<Item = (Heap, RingElem)>) -> Self {
        let mut e = Self::zero(system, basis);
        for (h, c) in terms {
            e.add_term(h, c);
        }
        e
    }

    pub(crate) fn add_term(&mut self, h: Heap, c: RingElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(h) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn system(&self) -> System {
        self.system
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Heap, &RingElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, h: &Heap) -> RingElem {
        self.terms.get(h).cloned().unwrap_or_else(RingElem::zero)
    }

    /// Longest heap present, if any.
    pub fn max_len(&self) -> Option<usize> {
        self.terms.keys().map(Heap::len).max()
    }

    /// The coefficient of the identity if the element is a scalar.
    pub fn as_scalar(&self) -> Option<RingElem> {
        match self.terms.len() {
            0 => Some(RingElem::zero()),
            1 => self.terms.get(&Heap::identity()).cloned(),
            _ => None,
        }
    }

    fn check_compatible(&self, other: &Element) -> Result<()> {
        self.system.ensure_same(&other.system)?;
        if self.basis != other.basis {
            return Err(Error::BasisMismatch(format!(
                "cannot combine {} and {} basis elements",
                self.basis, other.basis
            )));
        }
        Ok(())
    }

    /// `self + c·other`.
    pub fn add_scale(&self, other: &Element, c: &RingElem) -> Result<Element> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        if c.is_zero() {
            return Ok(out);
        }
        for (h, d) in &other.terms {
            out.add_term(h.clone(), d.mul(c));
        }
        Ok(out)
    }

    /// Sum after converting `other` into this element's basis.
    pub fn plus(&self, other: &Element) -> Result<Element> {
        self.add_scale(&other.to_basis(self.basis)?, &RingElem::one())
    }

    pub fn minus(&self, other: &Element) -> Result<Element> {
        self.add_scale(&other.to_basis(self.basis)?, &RingElem::from_int(-1))
    }

    pub fn scale(&self, c: &RingElem) -> Element {
        if c.is_zero() {
            return Element::zero(self.system, self.basis);
        }
        Element {
            system: self.system,
            basis: self.basis,
            terms: self.terms.iter().map(|(h, d)| (h.clone(), d.mul(c))).collect(),
        }
    }

    pub fn neg(&self) -> Element {
        self.scale(&RingElem::from_int(-1))
    }

    /// The product in the g basis.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.system.ensure_same(&other.system)?;
        let a = self.to_basis(Basis::G)?;
        let b = other.to_basis(Basis::G)?;
        let left: Terms = a.terms.into_iter().collect();
        let mut acc: HashMap<Heap, RingElem> = HashMap::new();
        for (hb, cb) in &b.terms {
            for (h, c) in comb_times_word(&self.system, left.clone(), hb.word()) {
                accumulate(&mut acc, h, c.mul(cb));
            }
        }
        Ok(Self::from_terms(self.system, Basis::G, acc))
    }

    pub fn pow(&self, k: u32) -> Result<Element> {
        let mut acc = Element::one(self.system);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Inverse of `c·g_w` or `c·T_w`; other elements are not inverted.
    pub fn monomial_inverse(&self) -> Result<Element> {
        let (h, c) = match (self.terms.len(), self.basis) {
            (1, Basis::G | Basis::T) => self.terms.iter().next().unwrap(),
            _ => {
                return Err(Error::Unsupported(
                    "only scalar multiples of g_w or T_w are inverted".into(),
                ))
            }
        };
        let mut c = c.clone();
        if self.basis == Basis::T {
            c = c.mul(&RingElem::v_pow(h.len() as i32));
        }
        let mut acc = Element::scalar(self.system, c.inv()?);
        for &s in h.word().iter().rev() {
            acc = acc.mul(&Element::generator_inverse(self.system, s)?)?;
        }
        Ok(acc)
    }

    /// Change of basis. `T_w = v^{l(w)} g_w`, and `f_w` multiplies `(g_s+1)/(q+1)` along `w`.
    pub fn to_basis(&self, target: Basis) -> Result<Element> {
        if self.basis == target {
            return Ok(self.clone());
        }
        let g = match self.basis {
            Basis::G => self.clone(),
            Basis::T => Self::from_terms(
                self.system,
                Basis::G,
                self.terms
                    .iter()
                    .map(|(h, c)| (h.clone(), c.mul(&RingElem::v_pow(h.len() as i32)))),
            ),
            Basis::F => {
                let mut acc = HashMap::new();
                for (h, c) in &self.terms {
                    for (k, d) in f_word_in_g(&self.system, h).iter() {
                        accumulate(&mut acc, k.clone(), c.mul(d));
                    }
                }
                Self::from_terms(self.system, Basis::G, acc)
            }
        };
        Ok(match target {
            Basis::G => g,
            Basis::T => Self::from_terms(
                self.system,
                Basis::T,
                g.terms
                    .into_iter()
                    .map(|(h, c)| {
                        let l = h.len() as i32;
                        (h, c.mul(&RingElem::v_pow(-l)))
                    }),
            ),
            Basis::F => g.g_to_f()?,
        })
    }

    /// Back-substitution: `f_w = (q+1)^{-l(w)} g_w + shorter terms`.
    fn g_to_f(&self) -> Result<Element> {
        let opq = RingElem::one().add(&RingElem::q());
        let mut rest = self.terms.clone();
        let mut out = Element::zero(self.system, Basis::F);
        while let Some((h, c)) = rest.pop_last() {
            let fc = c.mul(&opq.pow(h.len() as i32)?);
            for (k, d) in f_word_in_g(&self.system, &h).iter() {
                if *k == h {
                    continue;
                }
                debug_assert!(k.len() < h.len());
                let delta = d.mul(&fc).neg();
                let entry = rest.entry(k.clone()).or_insert_with(RingElem::zero);
                *entry = entry.add(&delta);
                if entry.is_zero() {
                    rest.remove(k);
                }
            }
            out.add_term(h, fc);
        }
        Ok(out)
    }

    /// Applies a coefficient-preserving map on heaps (for instance a diagram rotation).
    pub fn map_heaps(&self, system: System, f: impl Fn(&Heap) -> Heap) -> Element {
        Self::from_terms(system, self.basis, self.terms.iter().map(|(h, c)| (f(h), c.clone())))
    }

    /// Canonical text accepted back by the expression parser.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (h, c) in &self.terms {
            let ct = c.to_text();
            let simple = !ct.contains(' ') && !ct.contains('/');
            let coeff = if simple { ct.clone() } else { format!("({ct})") };
            let part = if h.is_empty() {
                coeff
            } else {
                let atom = format!("{}[{}]", self.basis, self.system.format_word(h.word()));
                if c.is_one() {
                    atom
                } else if ct == "-1" {
                    format!("-{atom}")
                } else {
                    format!("{coeff}*{atom}")
                }
            };
            parts.push(part);
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ElementJson::from(self)).expect("element serialises")
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Element> {
        let raw: ElementJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Format(e.to_string()))?;
        raw.try_into()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[{}, {}]({})", self.system, self.basis, self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct SystemJson {
    rank: usize,
    affine: bool,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    word: Vec<String>,
    coeff: RingElem,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    system: SystemJson,
    basis: Basis,
    terms: Vec<TermJson>,
}

impl From<&Element> for ElementJson {
    fn from(e: &Element) -> Self {
        ElementJson {
            system: SystemJson { rank: e.system.rank, affine: e.system.affine },
            basis: e.basis,
            terms: e
                .terms
                .iter()
                .map(|(h, c)| TermJson {
                    word: h.word().iter().map(|&s| e.system.letter_name(s)).collect(),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<ElementJson> for Element {
    type Error = Error;
    fn try_from(raw: ElementJson) -> Result<Element> {
        let system = System { rank: raw.system.rank, affine: raw.system.affine };
        let mut out = Element::zero(system, raw.basis);
        for t in raw.terms {
            let letters = t
                .word
                .iter()
                .map(|s| system.parse_letter(s))
                .collect::<Result<Vec<_>>>()?;
            out.add_term(Heap::from_word(&system, &letters)?, t.coeff);
        }
        Ok(out)
    }
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        ElementJson::deserialize(d)?.try_into().map_err(D::Error::custom)
    }
}

/// The T-basis rule `T_s T_w = v(q-1) T_w + q^2 T_{sw}` for a left descent `s` of `w`,
/// checked against the engine. Returns the two sides in the T basis.
pub fn check_t_mult_rule(system: System, s: Letter, w: &Heap) -> Result<(Element, Element)> {
    let sw = w.strip_left(&system, s).ok_or_else(|| {
        Error::Precondition(format!(
            "{} is not a left descent of {}",
            system.letter_name(s),
            w.display(&system)
        ))
    })?;
    let ts = Element::from_word(system, Basis::T, &[s])?;
    let tw = Element::basis_element(system, Basis::T, w.clone());
    let lhs = ts.mul(&tw)?.to_basis(Basis::T)?;
    let q = RingElem::q();
    let c1 = RingElem::v().mul(&q.sub(&RingElem::one()));
    let rhs = tw
        .scale(&c1)
        .add_scale(&Element::basis_element(system, Basis::T, sw), &q.mul(&q))?;
    if lhs != rhs {
        return Err(Error::Falsification(format!("T-rule fails: {lhs} != {rhs}")));
    }
    Ok((lhs, rhs))
}

/// `f_w` computed along an arbitrary linear extension of its heap, in the g basis.
pub fn f_along_linear_extension(system: System, word: &[Letter]) -> Result<Element> {
    Heap::from_word(&system, word)?;
    Ok(Element::from_terms(system, Basis::G, f_along_word(&system, word)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: System = System::finite(2);
    const AT2: System = System::affine(2);

    fn g(sys: System, w: &[Letter]) -> Element {
        Element::from_word(sys, Basis::G, w).unwrap()
    }

    #[test]
    fn quadratic_relation() {
        let s = g(A2, &[1]);
        let q = RingElem::q();
        let rhs = s
            .scale(&q.sub(&RingElem::one()))
            .add_scale(&Element::one(A2), &q)
            .unwrap();
        assert_eq!(s.mul(&s).unwrap(), rhs);
    }

    #[test]
    fn braid_collapses_to_five_terms() {
        let lhs = g(A2, &[1]).mul(&g(A2, &[2, 1])).unwrap();
        let mut rhs = Element::zero(A2, Basis::G);
        for w in [&[1u8, 2][..], &[2, 1], &[1], &[2], &[]] {
            rhs = rhs.add_scale(&g(A2, w), &RingElem::from_int(-1)).unwrap();
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn generator_inverse_is_inverse() {
        let s = g(AT2, &[0]);
        let inv = Element::generator_inverse(AT2, 0).unwrap();
        assert_eq!(inv.mul(&s).unwrap(), Element::one(AT2));
        assert_eq!(s.mul(&inv).unwrap(), Element::one(AT2));
        let q = RingElem::q();
        let expected = s
            .scale(&q.inv().unwrap())
            .add_scale(&Element::one(AT2), &RingElem::one().sub(&q).div(&q).unwrap())
            .unwrap();
        assert_eq!(inv, expected);
        assert!(inv.monomial_inverse().is_err());
    }

    #[test]
    fn f_is_idempotent() {
        let f = Element::from_word(A2, Basis::F, &[1]).unwrap();
        let ff = f.mul(&f).unwrap().to_basis(Basis::F).unwrap();
        assert_eq!(ff, f);
    }

    #[test]
    fn t_to_g() {
        let t = Element::from_word(A2, Basis::T, &[1]).unwrap();
        assert_eq!(t.to_basis(Basis::G).unwrap(), g(A2, &[1]).scale(&RingElem::v()));
    }

    #[test]
    fn t_rule_examples() {
        check_t_mult_rule(A2, 1, &Heap::from_word(&A2, &[1]).unwrap()).unwrap();
        check_t_mult_rule(A2, 2, &Heap::from_word(&A2, &[2, 1]).unwrap()).unwrap();
        assert!(matches!(
            check_t_mult_rule(A2, 2, &Heap::from_word(&A2, &[1, 2]).unwrap()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let e = g(AT2, &[2, 1, 0]).add_scale(&Element::one(AT2), &RingElem::z()).unwrap();
        let back = Element::from_json_value(&e.to_json_value()).unwrap();
        assert_eq!(back, e);
        assert_eq!(e.to_json_value()["terms"][1]["word"], serde_json::json!(["s2", "s1", "a"]));
    }

    #[test]
    fn cache_does_not_change_results() {
        let x = g(AT2, &[2, 1, 0]).mul(&g(AT2, &[2, 1, 0, 2])).unwrap();
        set_product_cache(false);
        let y = g(AT2, &[2, 1, 0]).mul(&g(AT2, &[2, 1, 0, 2])).unwrap();
        set_product_cache(true);
        assert_eq!(x, y);
    }
}
