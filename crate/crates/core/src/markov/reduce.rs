//! Reduction of `τ(a)`, for any trace `τ` on `TL-hat_3`, to values on Markov elements.
//!
//! Basis heaps that factor as Markov elements are taken as they are. The rest are pushed
//! through cyclic moves to trace classes (see [`cyclic`](super::cyclic)); the class vector is
//! then matched, level by level from the top, against the class vectors of explicit Markov
//! elements. Every step is either an algebra identity or a move valid under all traces, so
//! the result holds for every trace, not only for `ρ_3`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use crate::algebra::{Basis, Element};
use crate::error::{Error, Result};
use crate::linalg::Span;
use crate::markov::cyclic::{reduce_to_classes, TraceClass, AT2};
use crate::markov::normal_form::is_markov;
use crate::markov::{MarkovCombination, MarkovElement, Move};
use crate::ring::RingElem;
use crate::words::{Letter, System, AFFINE};

const AT1: System = System::affine(1);

type ClassVec = BTreeMap<TraceClass, RingElem>;

thread_local! {
    static FAMILIES: RefCell<HashMap<usize, Vec<(MarkovElement, ClassVec)>>> = RefCell::new(HashMap::new());
}

fn pre(word: &[(Letter, bool)]) -> Result<Element> {
    Element::signed_word_product(AT1, word)
}

fn markov(a: Element, epsilon: bool, b: Element) -> Result<MarkovElement> {
    MarkovElement::new(2, a, epsilon, b)
}

/// Markov elements whose class vectors have level-`m` part of full rank.
fn level_elements(m: usize) -> Result<Vec<MarkovElement>> {
    let one = Element::one(AT1);
    if m == 0 {
        // one element per short class, trace-equal to it by a single cyclic move at most
        return [
            (vec![], false, vec![]),
            (vec![(AFFINE, false)], false, vec![]),
            (vec![(1, false)], false, vec![]),
            (vec![], true, vec![]),
            (vec![(AFFINE, false)], true, vec![]),
            (vec![(1, false)], true, vec![]),
            // g_1 g_a = g_1 g_2^{-1} F(t_a) g_2 ~ g_2 g_1 g_2^{-1} F(t_a) = g_1^{-1} g_2 g_1 F(t_a)
            (vec![(1, true)], true, vec![(1, false), (AFFINE, false)]),
        ]
        .into_iter()
        .map(|(a, e, b)| markov(pre(&a)?, e, pre(&b)?))
        .collect();
    }
    // F(t_{(σ_1 a)^m}) and F(t_{(σ_1 a)^m}) g_{σ_2}
    let word: Vec<Letter> = (0..2 * m).map(|i| if i % 2 == 0 { 1 } else { AFFINE }).collect();
    let a = Element::from_word(AT1, Basis::G, &word)?;
    Ok(vec![markov(a.clone(), false, one.clone())?, markov(a, true, one)?])
}

fn family(m: usize) -> Result<Vec<(MarkovElement, ClassVec)>> {
    if let Some(f) = FAMILIES.with(|c| c.borrow().get(&m).cloned()) {
        return Ok(f);
    }
    let mut out = Vec::new();
    for e in level_elements(m)? {
        let v = reduce_to_classes(&e.realize()?)?;
        if let Some((c, _)) = v.iter().find(|(c, _)| c.level() > m) {
            return Err(Error::Falsification(format!("Markov element for level {m} reaches class {c:?}")));
        }
        out.push((e, v));
    }
    FAMILIES.with(|c| c.borrow_mut().insert(m, out.clone()));
    Ok(out)
}

fn axpy(y: &mut ClassVec, a: &RingElem, x: &ClassVec) {
    for (k, c) in x {
        let e = y.entry(k.clone()).or_insert_with(RingElem::zero);
        *e = e.sub(&a.mul(c));
        if e.is_zero() {
            y.remove(k);
        }
    }
}

fn at_level(v: &ClassVec, m: usize) -> BTreeMap<TraceClass, RingElem> {
    v.iter().filter(|(c, _)| c.level() == m).map(|(c, x)| (c.clone(), x.clone())).collect()
}

/// Writes `τ(a)` as `Σ c_i τ(M_i)` for every trace `τ` on `TL-hat_3`.
pub fn reduce_trace_to_markov(a: &Element) -> Result<MarkovCombination> {
    let sys = a.system();
    if sys.affine && sys.rank > 2 {
        return Err(Error::Unsupported(format!(
            "unsupported rank: the constructive reduction covers TL-hat_3 only, got TL-hat_{}",
            sys.rank + 1
        )));
    }
    AT2.ensure_same(&sys)?;
    let a = a.to_basis(Basis::G)?;
    let mut out = MarkovCombination::new(2);
    let mut rest = Element::zero(AT2, Basis::G);
    for (h, c) in a.terms() {
        match is_markov(h, 3)? {
            Some(m) => {
                out.note(Move::AlgebraIdentity, format!("g[{}] is a Markov element", h.display(&AT2)));
                out.push(c.clone(), m);
            }
            None => rest = rest.add_scale(&Element::basis_element(AT2, Basis::G, h.clone()), c)?,
        }
    }
    if rest.is_zero() {
        return Ok(out);
    }
    let mut classes = reduce_to_classes(&rest)?;
    out.note(Move::CyclicMove, format!("{} remaining terms moved cyclically to trace classes", rest.num_terms()));
    let top = classes.keys().map(TraceClass::level).max().unwrap_or(0);
    for m in (0..=top).rev() {
        let target = at_level(&classes, m);
        if target.is_empty() {
            continue;
        }
        let fam = family(m)?;
        let mut span = Span::new();
        for (_, v) in &fam {
            span.insert(at_level(v, m));
        }
        let coeffs = span.express(&target).ok_or_else(|| {
            Error::Falsification(format!("the Markov elements of level {m} do not reach the classes {:?}", target.keys()))
        })?;
        for (i, c) in coeffs {
            let (e, v) = &fam[i];
            axpy(&mut classes, &c, v);
            out.push(c, e.clone());
        }
        if classes.keys().any(|c| c.level() >= m) {
            return Err(Error::Falsification(format!("level {m} not cleared; the measure failed to decrease")));
        }
        out.note(Move::CyclicMove, format!("level {m} matched against Markov elements"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homs::coxeter_power;
    use crate::trace::rho;

    #[test]
    fn generator_is_its_own_markov_element() {
        let g2 = Element::generator(AT2, 2).unwrap();
        let r = reduce_trace_to_markov(&g2).unwrap();
        assert_eq!(r.terms.len(), 1);
        assert!(r.terms[0].0.is_one());
        assert_eq!(r.terms[0].1.realize().unwrap(), g2);
    }

    #[test]
    fn coxeter_powers_are_rho_consistent() {
        for k in 1..=2 {
            let c = coxeter_power(2, k).unwrap();
            let r = reduce_trace_to_markov(&c).unwrap();
            assert!(r.is_reduced());
            assert_eq!(r.evaluate_rho().unwrap(), rho(3, &c).unwrap());
        }
    }

    #[test]
    fn higher_rank_is_rejected() {
        let x = Element::one(System::affine(3));
        assert!(matches!(reduce_trace_to_markov(&x), Err(Error::Unsupported(_))));
    }
}
