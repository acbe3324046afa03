//! Constructive decompositions of products with powers of `C = g_{σ_n ... σ_1 a_{n+1}}`.
//!
//! Every coefficient in the image of `F_n` is carried as a preimage in `TL-hat_n`. Two facts
//! drive the recursions: `C^d F(y) = F(ψ'^d y) C^d`, where `ψ'` is the transported rotation of
//! [`transported_psi`], and `g_{σ_n} C = (q-1) C + q X g_{σ_n} F(t_a^{-1})` with
//! `X = g_{σ_{n-1} ... σ_1} F(t_{a_n})`.

use crate::algebra::{Basis, Element};
use crate::error::{Error, Result};
use crate::homs::{apply_f, coxeter_power, transported_psi};
use crate::markov::{check_rank, MarkovCombination, MarkovElement, Move};
use crate::ring::RingElem;
use crate::words::{Letter, System, AFFINE};

fn q() -> RingElem {
    RingElem::q()
}

fn qm1() -> RingElem {
    q().sub(&RingElem::one())
}

fn source(n: usize) -> System {
    System::affine(n - 1)
}

/// Preimage of `X = g_{σ_{n-1} ... σ_1} F(t_{a_n})`.
pub fn x_preimage(n: usize) -> Result<Element> {
    let mut w: Vec<Letter> = (1..n as Letter).rev().collect();
    w.push(AFFINE);
    Element::word_product(source(n), &w)
}

fn ta_inv(n: usize) -> Result<Element> {
    Element::generator_inverse(source(n), AFFINE)
}

fn lift(n: usize, y: &Element) -> Result<Element> {
    apply_f(n, y)
}

fn gn(n: usize) -> Result<Element> {
    Element::generator(System::affine(n), n as Letter)
}

fn mismatch(what: &str) -> Error {
    Error::Falsification(format!("{what}: reassembled sum differs from the direct product"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `g_{σ_n} C^k = (q-1) C^k + Σ_i F(f_i) C^i + A F(x)^k g_{σ_n} Π_j F(r_j)` (left), or
/// `C^k g_{σ_n} = (q-1) C^k + Σ_i F(h_i) C^i + A Π_j F(l_j) g_{σ_n} F(x)^k` (right).
#[derive(Clone, Debug)]
pub struct CoxeterSplit {
    pub n: usize,
    pub k: u32,
    pub side: Side,
    pub a: RingElem,
    /// `(i, f_i)` or `(i, h_i)` for `1 <= i < k`.
    pub middle: Vec<(u32, Element)>,
    /// The factors of the trailing (left) or leading (right) product, in order.
    pub factors: Vec<Element>,
    pub x: Element,
}

impl CoxeterSplit {
    pub fn direct(&self) -> Result<Element> {
        let c = coxeter_power(self.n, self.k as i64)?;
        match self.side {
            Side::Left => gn(self.n)?.mul(&c),
            Side::Right => c.mul(&gn(self.n)?),
        }
    }

    pub fn reassemble(&self) -> Result<Element> {
        let n = self.n;
        let mut acc = coxeter_power(n, self.k as i64)?.scale(&qm1());
        for (i, f) in &self.middle {
            acc = acc.add_scale(&lift(n, f)?.mul(&coxeter_power(n, *i as i64)?)?, &RingElem::one())?;
        }
        let prod = self.factors.iter().try_fold(Element::one(source(n)), |p, f| p.mul(f))?;
        let xk = self.x.pow(self.k)?;
        let last = match self.side {
            Side::Left => lift(n, &xk)?.mul(&gn(n)?)?.mul(&lift(n, &prod)?)?,
            Side::Right => lift(n, &prod)?.mul(&gn(n)?)?.mul(&lift(n, &xk)?)?,
        };
        acc.add_scale(&last, &self.a)
    }

    pub fn verify(&self) -> Result<()> {
        if self.reassemble()? == self.direct()? {
            Ok(())
        } else {
            Err(mismatch(&format!("split of C^k ({:?}, n = {}, k = {})", self.side, self.n, self.k)))
        }
    }
}

fn add_middle(middle: &mut Vec<(u32, Element)>, i: u32, f: Element) -> Result<()> {
    match middle.iter_mut().find(|(j, _)| *j == i) {
        Some((_, g)) => *g = g.plus(&f)?,
        None => middle.push((i, f)),
    }
    Ok(())
}

/// Runs the induction on `k` behind the lemma and checks the result against the engine.
pub fn lemma_513_decompose(n: usize, k: u32, side: Side) -> Result<CoxeterSplit> {
    check_rank(n)?;
    if k == 0 {
        return Err(Error::Usage("the decomposition needs k >= 1".into()));
    }
    let x = x_preimage(n)?;
    let mut rec = CoxeterSplit { n, k: 1, side, a: q(), middle: Vec::new(), factors: Vec::new(), x: x.clone() };
    match side {
        Side::Left => rec.factors.push(ta_inv(n)?),
        Side::Right => rec.factors.push(Element::generator_inverse(source(n), (n - 1) as Letter)?),
    }
    for step in 2..=k {
        let mut middle = Vec::new();
        match side {
            Side::Left => {
                // g C^step = (q-1) C^step + q X (g C^{step-1}) F(r), F(r) C^{step-1} = C^{step-1} F(t_a^{-1})
                let r = transported_psi(&ta_inv(n)?, -((step - 1) as i64))?;
                add_middle(&mut middle, step - 1, x.mul(&ta_inv(n)?)?.scale(&q().mul(&qm1())))?;
                for (i, f) in &rec.middle {
                    let moved = transported_psi(&r, *i as i64)?;
                    add_middle(&mut middle, *i, x.mul(f)?.mul(&moved)?.scale(&q()))?;
                }
                rec.factors.push(r);
            }
            Side::Right => {
                // C^step g = (q-1) C^step + q F(l) (C^{step-1} g) X, C^{step-1} g_{σ_{n-1}}^{-1} = F(l) C^{step-1}
                let l = transported_psi(
                    &Element::generator_inverse(source(n), (n - 1) as Letter)?,
                    (step - 1) as i64,
                )?;
                let moved_x = transported_psi(&x, (step - 1) as i64)?;
                add_middle(&mut middle, step - 1, l.mul(&moved_x)?.scale(&q().mul(&qm1())))?;
                for (i, h) in &rec.middle {
                    let mx = transported_psi(&x, *i as i64)?;
                    add_middle(&mut middle, *i, l.mul(h)?.mul(&mx)?.scale(&q()))?;
                }
                rec.factors.insert(0, l);
            }
        }
        middle.sort_by_key(|(i, _)| *i);
        rec.middle = middle.into_iter().filter(|(_, f)| !f.is_zero()).collect();
        rec.a = rec.a.mul(&q());
        rec.k = step;
    }
    rec.verify()?;
    Ok(rec)
}

/// One summand of `C^k`: type 1 is `s · g_{σ_n} X^j g_{σ_n} F(coeff)`, type 2 is
/// `s · X^j g_{σ_n} F(coeff)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TypedTerm {
    pub kind: u8,
    pub exponent: u32,
    pub scalar: RingElem,
    pub coeff: Element,
}

impl TypedTerm {
    pub fn realize(&self, n: usize) -> Result<Element> {
        let xj = lift(n, &x_preimage(n)?.pow(self.exponent)?)?;
        let body = if self.kind == 1 {
            gn(n)?.mul(&xj)?.mul(&gn(n)?)?
        } else {
            xj.mul(&gn(n)?)?
        };
        Ok(body.mul(&lift(n, &self.coeff)?)?.scale(&self.scalar))
    }
}

/// `Π_{i=0}^{k-1} φ^i[t_{a_n}^{-1}]` with `φ = ψ^{-1}`, as a preimage.
pub fn lemma_515_leading_product(n: usize, k: u32) -> Result<Element> {
    (0..k).try_fold(Element::one(source(n)), |p, i| p.mul(&transported_psi(&ta_inv(n)?, -(i as i64))?))
}

/// Splits `C^k` into type-1 and type-2 summands by multiplying the `k = 1` identity
/// `C = g_{σ_n} X g_{σ_n} F(t_a^{-1})` on the right by `C` repeatedly.
pub fn lemma_515_decompose(n: usize, k: u32) -> Result<Vec<TypedTerm>> {
    check_rank(n)?;
    if k == 0 {
        return Err(Error::Usage("the decomposition needs k >= 1".into()));
    }
    let x = x_preimage(n)?;
    let tai = ta_inv(n)?;
    let mut terms = vec![TypedTerm { kind: 1, exponent: 1, scalar: RingElem::one(), coeff: tai.clone() }];
    for _ in 1..k {
        let mut next = Vec::new();
        for t in &terms {
            // F(y) C = C F(ψ'^{-1} y)
            let shifted = transported_psi(&t.coeff, -1)?;
            let xj = transported_psi(&x.pow(t.exponent)?, -1)?;
            let through = tai.mul(&xj)?.mul(&shifted)?;
            if t.kind == 1 {
                next.push(TypedTerm {
                    kind: 1,
                    exponent: t.exponent + 1,
                    scalar: t.scalar.mul(&q()),
                    coeff: tai.mul(&shifted)?,
                });
                next.push(TypedTerm {
                    kind: 1,
                    exponent: 1,
                    scalar: t.scalar.mul(&qm1()).mul(&qm1()),
                    coeff: through.clone(),
                });
                next.push(TypedTerm { kind: 2, exponent: 1, scalar: t.scalar.mul(&qm1()).mul(&q()), coeff: through });
            } else {
                next.push(TypedTerm {
                    kind: 2,
                    exponent: t.exponent + 1,
                    scalar: t.scalar.mul(&q()),
                    coeff: tai.mul(&shifted)?,
                });
                next.push(TypedTerm { kind: 1, exponent: 1, scalar: t.scalar.mul(&qm1()), coeff: through });
            }
        }
        terms = next;
    }
    let mut sum = Element::zero(System::affine(n), Basis::G);
    for t in &terms {
        sum = sum.add_scale(&t.realize(n)?, &RingElem::one())?;
    }
    if sum != coxeter_power(n, k as i64)? {
        return Err(mismatch(&format!("typed split of C^k (n = {n}, k = {k})")));
    }
    let top: Vec<&TypedTerm> = terms.iter().filter(|t| t.kind == 1 && t.exponent == k).collect();
    let expected = lemma_515_leading_product(n, k)?;
    if top.len() != 1 || top[0].coeff != expected {
        return Err(Error::Falsification(format!(
            "typed split of C^k (n = {n}, k = {k}): {} type-1 terms of exponent k, expected exactly one with leading product Π φ^i[t_a^{{-1}}]",
            top.len()
        )));
    }
    Ok(terms)
}

/// Inverse of the leading product, `Π_{i=k-1}^{0} φ^i[t_{a_n}]`.
fn leading_product_inverse(n: usize, k: u32) -> Result<Element> {
    let ta = Element::generator(source(n), AFFINE)?;
    (0..k).rev().try_fold(Element::one(source(n)), |p, i| p.mul(&transported_psi(&ta, -(i as i64))?))
}

fn expand_516(h: u32, right: &Element, out: &mut MarkovCombination, scale: &RingElem) -> Result<()> {
    let n = 2;
    let src = source(n);
    if h == 0 {
        // g_{σ_2}^2 = (q-1) g_{σ_2} + q
        let one = Element::one(src);
        out.push(scale.mul(&qm1()), MarkovElement::new(n, one.clone(), true, right.clone())?);
        out.push(scale.mul(&q()), MarkovElement::new(n, right.clone(), false, one)?);
        out.note(Move::AlgebraIdentity, "quadratic relation on g_{σ_2}^2");
        return Ok(());
    }
    let terms = lemma_515_decompose(n, h)?;
    let lead_scalar = q().pow(h as i32 - 1)?;
    let tail = leading_product_inverse(n, h)?.mul(right)?;
    let s_inv = lead_scalar.inv()?;
    // g X^h g = s^{-1} (C^h - Σ other terms) F(lead)^{-1}
    let c_h = transported_psi(&tail, h as i64)?.scale(&scale.mul(&s_inv));
    out.residual.push((c_h, h));
    out.note(Move::AlgebraIdentity, format!("typed split of C^{h}, solved for its unique top term"));
    let x = x_preimage(n)?;
    for t in terms.iter().filter(|t| !(t.kind == 1 && t.exponent == h)) {
        let c = scale.mul(&t.scalar).mul(&s_inv).neg();
        let coeff = t.coeff.mul(&tail)?;
        if t.kind == 1 {
            expand_516(t.exponent, &coeff, out, &c)?;
        } else {
            out.push(c, MarkovElement::new(n, x.pow(t.exponent)?, true, coeff)?);
        }
    }
    Ok(())
}

/// `g_{σ_2} X^h g_{σ_2} = Σ_j F(c_j) C^j + Σ_i M_i` in `TL-hat_3`; the `C^j` terms with
/// `j >= 1` are the residual of the returned combination.
pub fn corollary_516_expand(n1: usize, h: u32) -> Result<MarkovCombination> {
    if n1 != 3 {
        return Err(Error::Unsupported(format!("the corollary is stated for n1 = 3, got {n1}")));
    }
    if h == 0 {
        return Err(Error::Usage("the corollary needs h >= 1".into()));
    }
    let mut out = MarkovCombination::new(2);
    expand_516(h, &Element::one(source(2)), &mut out, &RingElem::one())?;
    merge_residual(&mut out)?;
    if out.realize()? != corollary_516_lhs(h)? {
        return Err(mismatch(&format!("expansion of g X^h g (h = {h})")));
    }
    Ok(out)
}

/// `g_{σ_2} X^h g_{σ_2}` computed directly.
pub fn corollary_516_lhs(h: u32) -> Result<Element> {
    gn(2)?.mul(&lift(2, &x_preimage(2)?.pow(h)?)?)?.mul(&gn(2)?)
}

fn merge_residual(out: &mut MarkovCombination) -> Result<()> {
    let mut merged: Vec<(Element, u32)> = Vec::new();
    for (c, k) in out.residual.drain(..) {
        match merged.iter_mut().find(|(_, j)| *j == k) {
            Some((d, _)) => *d = d.plus(&c)?,
            None => merged.push((c, k)),
        }
    }
    merged.retain(|(c, _)| !c.is_zero());
    merged.sort_by_key(|(_, k)| *k);
    out.residual = merged;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_513_first_case_matches_display() {
        let rec = lemma_513_decompose(2, 1, Side::Left).unwrap();
        assert_eq!(rec.a, RingElem::q());
        assert!(rec.middle.is_empty());
        assert_eq!(rec.factors, vec![Element::generator_inverse(System::affine(1), 0).unwrap()]);
    }

    #[test]
    fn lemma_513_small() {
        for side in [Side::Left, Side::Right] {
            for k in 1..=3 {
                lemma_513_decompose(2, k, side).unwrap();
            }
        }
        lemma_513_decompose(3, 2, Side::Right).unwrap();
    }

    #[test]
    fn lemma_515_small() {
        let t = lemma_515_decompose(2, 1).unwrap();
        assert_eq!(t.len(), 1);
        lemma_515_decompose(2, 2).unwrap();
        lemma_515_decompose(3, 2).unwrap();
    }

    #[test]
    fn corollary_516_small() {
        let c = corollary_516_expand(3, 1).unwrap();
        assert_eq!(c.residual.iter().map(|(_, k)| *k).max(), Some(1));
        let c2 = corollary_516_expand(3, 2).unwrap();
        let direct = crate::trace::rho(3, &corollary_516_lhs(2).unwrap()).unwrap();
        assert_eq!(c2.evaluate_rho().unwrap(), direct);
    }
}
