//! The Jones trace tower `τ_{n+1}` on `TL_n` and the affine trace `ρ_{n+1} = τ_{n+1} ∘ E_n`.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::algebra::{product_cache_enabled, Basis, Element};
use crate::error::{Error, Result};
use crate::homs::{apply_e, apply_f, apply_psi};
use crate::random::{rng, HeapSampler};
use crate::report::Report;
use crate::ring::RingElem;
use crate::words::{enumerate_fc, Heap, Letter, System};

thread_local! {
    static TAU: RefCell<HashMap<(usize, Heap), RingElem>> = RefCell::new(HashMap::new());
}

/// `τ_{n+1}(T_w)` for a heap of `TL_n`.
fn tau_t_basis(n: usize, h: &Heap) -> RingElem {
    if h.is_empty() {
        return RingElem::z().pow(n as i32).expect("nonzero");
    }
    let key = (n, h.clone());
    if product_cache_enabled() {
        if let Some(v) = TAU.with(|t| t.borrow().get(&key).cloned()) {
            return v;
        }
    }
    let top = n as Letter;
    let w = h.word();
    let value = match w.iter().position(|&s| s == top) {
        // T_w lies in TL_{n-1}
        None => RingElem::z().mul(&tau_t_basis(n - 1, h)),
        Some(i) => {
            // the top generator occurs once: T_w = T_u T_{σ_n} T_v
            let below = System::finite(n - 1);
            let tu = Element::from_word(below, Basis::T, &w[..i]).expect("subword is FC");
            let tv = Element::from_word(below, Basis::T, &w[i + 1..]).expect("subword is FC");
            let prod = tu.mul(&tv).expect("same system").to_basis(Basis::T).expect("basis change");
            prod.terms().map(|(k, c)| c.mul(&tau_t_basis(n - 1, k))).sum()
        }
    };
    if product_cache_enabled() {
        TAU.with(|t| t.borrow_mut().insert(key, value.clone()));
    }
    value
}

pub fn clear_trace_cache() {
    TAU.with(|t| t.borrow_mut().clear());
}

/// `τ_{n+1}(a)` for `a` in `TL_n`.
pub fn jones_tau(a: &Element) -> Result<RingElem> {
    let sys = a.system();
    if sys.affine {
        return Err(Error::Usage("the Jones trace is defined on TL_n; use rho for affine elements".into()));
    }
    let a = a.to_basis(Basis::T)?;
    Ok(a.terms().map(|(h, c)| c.mul(&tau_t_basis(sys.rank, h))).sum())
}

/// `ρ_{n1}` on `TL-hat_{n1}`, i.e. on the affine system of rank `n1 - 1`.
pub fn rho(n1: usize, a: &Element) -> Result<RingElem> {
    if n1 == 0 {
        return Err(Error::Usage("ρ is indexed from 1".into()));
    }
    System::affine(n1 - 1).ensure_same(&a.system())?;
    jones_tau(&apply_e(n1 - 1, a)?)
}

/// `T_{σ_n}^{-1} = q^{-2} T_{σ_n} - (q-1)/(q v)`, in the g basis.
pub fn t_inverse(system: System, s: Letter) -> Result<Element> {
    let q = RingElem::q();
    let t = Element::from_word(system, Basis::T, &[s])?;
    let c = q.sub(&RingElem::one()).div(&q.mul(&RingElem::v()))?.neg();
    t.scale(&q.mul(&q).inv()?).to_basis(Basis::G)?.add_scale(&Element::one(system), &c)
}

/// The affine Markov trace axioms, checked for `ρ`: for random `h` in `TL-hat_n`,
/// `ρ_{n+1}(F_n(h) T_{σ_n}^{±1}) = ρ_n(h)` and `ρ_{n+1}(F_n(h)) = z ρ_n(h)`.
pub fn check_markov_axioms(n: usize, samples: usize, seed: u64, max_len: usize) -> Result<Report> {
    if n < 2 {
        return Err(Error::Usage("the Markov axioms are checked for n >= 2".into()));
    }
    let mut report = Report::new(format!("affine Markov axioms, n = {n}"));
    let src = System::affine(n - 1);
    let big = System::affine(n);
    let top = n as Letter;
    let t = Element::from_word(big, Basis::T, &[top])?;
    let t_inv = t_inverse(big, top)?;
    let sampler = HeapSampler::new(src, max_len)?;
    let mut r = rng(seed);
    for i in 0..samples {
        let h = sampler.element(&mut r, 1);
        let base = rho(n, &h)?;
        let fh = apply_f(n, &h)?;
        report.expect_eq(format!("sample {i}: T"), &rho(n + 1, &fh.mul(&t)?)?, &base);
        report.expect_eq(format!("sample {i}: T^-1"), &rho(n + 1, &fh.mul(&t_inv)?)?, &base);
        report.expect_eq(
            format!("sample {i}: stabilisation"),
            &rho(n + 1, &fh)?,
            &RingElem::z().mul(&base),
        );
    }
    Ok(report)
}

/// `ρ_{n1}(g_w) = ρ_{n1}(ψ g_w)` for every FC heap of length at most `max_len`.
pub fn check_psi_invariance(n1: usize, max_len: usize) -> Result<Report> {
    let sys = System::affine(n1 - 1);
    let mut report = Report::new(format!("ψ-invariance of ρ_{n1}"));
    for h in enumerate_fc(&sys, Some(max_len))? {
        let x = Element::basis_element(sys, Basis::G, h.clone());
        report.expect_eq(h.display(&sys), &rho(n1, &x)?, &rho(n1, &apply_psi(&x, 1)?)?);
    }
    Ok(report)
}

/// `ρ_{n1}(xy) = ρ_{n1}(yx)` on random pairs.
pub fn check_trace_property(n1: usize, samples: usize, seed: u64, max_len: usize) -> Result<Report> {
    let sys = System::affine(n1 - 1);
    let mut report = Report::new(format!("trace property of ρ_{n1}"));
    let sampler = HeapSampler::new(sys, max_len)?;
    let mut r = rng(seed);
    for i in 0..samples {
        let x = sampler.element(&mut r, 2);
        let y = sampler.element(&mut r, 2);
        report.expect_eq(format!("pair {i}"), &rho(n1, &x.mul(&y)?)?, &rho(n1, &y.mul(&x)?)?);
    }
    Ok(report)
}

/// Markov property of the finite tower: `τ_{n+1}(h T_{σ_n}^{±1}) = τ_n(h)` on
/// every basis heap `h` of `TL_{n-1}`.
pub fn check_jones_markov(n: usize) -> Result<Report> {
    let mut report = Report::new(format!("Jones Markov property, n = {n}"));
    let below = System::finite(n - 1);
    let fin = System::finite(n);
    let top = n as Letter;
    let t = Element::from_word(fin, Basis::T, &[top])?;
    let t_inv = t_inverse(fin, top)?;
    for h in enumerate_fc(&below, None)? {
        let x = Element::basis_element(below, Basis::G, h.clone());
        let base = jones_tau(&x)?;
        let up = x.map_heaps(fin, Heap::clone);
        report.expect_eq(format!("{} T", h.display(&below)), &jones_tau(&up.mul(&t)?)?, &base);
        report.expect_eq(format!("{} T^-1", h.display(&below)), &jones_tau(&up.mul(&t_inv)?)?, &base);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize, w: &[Letter]) -> Element {
        Element::from_word(System::finite(n), Basis::T, w).unwrap()
    }

    #[test]
    fn base_values() {
        assert_eq!(jones_tau(&Element::one(System::finite(0))).unwrap(), RingElem::one());
        assert_eq!(jones_tau(&t(1, &[1])).unwrap(), RingElem::one());
        assert_eq!(jones_tau(&Element::one(System::finite(1))).unwrap(), RingElem::z());
    }

    #[test]
    fn rho_of_affine_generator() {
        let at2 = System::affine(2);
        let expected = RingElem::one().add(&RingElem::q()).div(&RingElem::q()).unwrap().neg();
        for s in [0, 1, 2] {
            assert_eq!(rho(3, &Element::generator(at2, s).unwrap()).unwrap(), expected);
        }
        let z2 = RingElem::z().mul(&RingElem::z());
        assert_eq!(rho(3, &Element::one(at2)).unwrap(), z2);
    }

    #[test]
    fn t_inverse_is_inverse() {
        let sys = System::finite(2);
        let prod = t_inverse(sys, 2).unwrap().mul(&t(2, &[2])).unwrap();
        assert_eq!(prod, Element::one(sys));
    }

    #[test]
    fn finite_markov_property() {
        for n in 1..=3 {
            let rep = check_jones_markov(n).unwrap();
            assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn affine_axioms_small() {
        let rep = check_markov_axioms(2, 5, 1, 4).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }
}
