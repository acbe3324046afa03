//! The tower map `F_n`, the surjection `E_n`, inclusions, and the Dynkin rotation.
//!
//! Ranks follow the affine system: `TL-hat_{n+1}` is `System::affine(n)`, with letters
//! `σ_1..σ_n` and `a_{n+1}`, and `TL_n` is `System::finite(n)`.

use std::collections::HashMap;

use crate::algebra::{Basis, Element};
use crate::error::{Error, Result};
use crate::random::{rng, HeapSampler};
use crate::report::Report;
use crate::ring::RingElem;
use crate::words::{rotate_word, Heap, Letter, System, AFFINE};

fn expect_system(x: &Element, expected: System) -> Result<()> {
    expected.ensure_same(&x.system())
}

/// Applies the algebra map determined by generator images, multiplying along each heap.
fn apply_on_letters(x: &Element, target: System, image: &dyn Fn(Letter) -> Result<Element>) -> Result<Element> {
    let x = x.to_basis(Basis::G)?;
    let mut images: HashMap<Letter, Element> = HashMap::new();
    let mut out = Element::zero(target, Basis::G);
    for (h, c) in x.terms() {
        let mut acc = Element::scalar(target, c.clone());
        for &s in h.word() {
            if let std::collections::hash_map::Entry::Vacant(e) = images.entry(s) {
                e.insert(image(s)?);
            }
            acc = acc.mul(&images[&s])?;
        }
        out = out.add_scale(&acc, &RingElem::one())?;
    }
    Ok(out)
}

/// `F_n: TL-hat_n -> TL-hat_{n+1}`, `t_{σ_i} -> g_{σ_i}`, `t_{a_n} -> g_{σ_n} g_{a_{n+1}} g_{σ_n}^{-1}`.
/// For `n = 1` the source is the scalars.
pub fn apply_f(n: usize, x: &Element) -> Result<Element> {
    if n == 0 {
        return Err(Error::Usage("F_n needs n >= 1".into()));
    }
    expect_system(x, System::affine(n - 1))?;
    let target = System::affine(n);
    let nl = n as Letter;
    apply_on_letters(x, target, &|s| {
        if s == AFFINE {
            Element::generator(target, nl)?
                .mul(&Element::generator(target, AFFINE)?)?
                .mul(&Element::generator_inverse(target, nl)?)
        } else {
            Element::generator(target, s)
        }
    })
}

/// `E_n: TL-hat_{n+1} -> TL_n`, fixing `σ_i` and sending
/// `a_{n+1} -> g_1 ... g_{n-1} g_n g_{n-1}^{-1} ... g_1^{-1}`.
pub fn apply_e(n: usize, x: &Element) -> Result<Element> {
    expect_system(x, System::affine(n))?;
    let target = System::finite(n);
    apply_on_letters(x, target, &|s| {
        if s != AFFINE {
            return Element::generator(target, s);
        }
        let mut word: Vec<(Letter, bool)> = (1..=n as Letter).map(|i| (i, false)).collect();
        word.extend((1..n as Letter).rev().map(|i| (i, true)));
        Element::signed_word_product(target, &word)
    })
}

/// The natural inclusion `TL_n -> TL-hat_{n+1}`.
pub fn incl(n: usize, x: &Element) -> Result<Element> {
    expect_system(x, System::finite(n))?;
    Ok(x.map_heaps(System::affine(n), Heap::clone))
}

/// The inclusion `TL_{n-1} -> TL_n`.
pub fn finite_incl(n: usize, x: &Element) -> Result<Element> {
    if n == 0 {
        return Err(Error::Usage("no algebra below TL_0".into()));
    }
    expect_system(x, System::finite(n - 1))?;
    Ok(x.map_heaps(System::finite(n), Heap::clone))
}

/// `ψ^d`, the rotation `σ_1 -> σ_2 -> ... -> a_{n+1} -> σ_1` applied `d` times.
pub fn apply_psi(x: &Element, d: i64) -> Result<Element> {
    let sys = x.system();
    sys.ensure_affine("ψ")?;
    if sys.rank == 0 {
        return Ok(x.clone());
    }
    Ok(x.map_heaps(sys, |h| h.rotate(&sys, d).expect("affine system")))
}

/// The source-side rotation realising `ψ^d` on the image of `F_n`:
/// `ψ^d[F_n(y)] = F_n(rotate(y, -d))`, i.e. the rotation `σ_1 -> a_n -> σ_{n-1} -> ...` of
/// `TL-hat_n` applied `d` times.
pub fn transported_psi(y: &Element, d: i64) -> Result<Element> {
    apply_psi(y, -d)
}

/// `g_{σ_n ... σ_1 a_{n+1}}` in `TL-hat_{n+1}`.
pub fn coxeter_element(n: usize) -> Result<Element> {
    let mut word: Vec<Letter> = (1..=n as Letter).rev().collect();
    word.push(AFFINE);
    Element::from_word(System::affine(n), Basis::G, &word)
}

/// Integer powers, negative ones via the inverse of the monomial `g_C`.
pub fn coxeter_power(n: usize, k: i64) -> Result<Element> {
    let c = coxeter_element(n)?;
    let base = if k < 0 { c.monomial_inverse()? } else { c };
    base.pow(k.unsigned_abs() as u32)
}

/// Checks `C^d F(x) = ψ^d[F(x)] C^d` with `C = g_{σ_n...σ_1 a}` and `ψ^d[F(x)]` computed
/// from the preimage. Returns both sides.
pub fn check_conjugation(n: usize, x: &Element, d: i64) -> Result<(Element, Element)> {
    let c = coxeter_power(n, d)?;
    let fx = apply_f(n, x)?;
    let lhs = c.mul(&fx)?;
    let rhs = apply_f(n, &transported_psi(x, d)?)?.mul(&c)?;
    Ok((lhs, rhs))
}

/// Also confirms that the transported rotation agrees with the rotation of the big algebra
/// whenever the latter preserves `F_n`'s image on the given element.
pub fn conjugation_report(n: usize, samples: usize, seed: u64, max_len: usize) -> Result<Report> {
    let mut report = Report::new(format!("conjugation convention, n = {n}"));
    let src = System::affine(n - 1);
    let sampler = HeapSampler::new(src, max_len)?;
    let mut r = rng(seed);
    for i in 0..samples {
        let x = sampler.element(&mut r, 2);
        for d in [0i64, 1, 2, -1] {
            let (lhs, rhs) = check_conjugation(n, &x, d)?;
            report.expect_eq(format!("sample {i}, d = {d}"), &lhs, &rhs);
        }
    }
    Ok(report)
}

/// `E_n ∘ F_n = incl ∘ E_{n-1}` on generators and random elements, and `E_n ∘ incl = id`
/// on every basis heap of `TL_n`.
pub fn check_commuting_diagram(n: usize, samples: usize, seed: u64, max_len: usize) -> Result<Report> {
    if n < 2 {
        return Err(Error::Usage("the commuting diagram needs n >= 2".into()));
    }
    let src = System::affine(n - 1);
    let mut report = Report::new(format!("commuting diagram, n = {n}"));
    let both = |x: &Element| -> Result<(Element, Element)> {
        let top = apply_e(n, &apply_f(n, x)?)?;
        let bottom = finite_incl(n, &apply_e(n - 1, x)?)?;
        Ok((top, bottom))
    };
    for s in src.letters() {
        let (a, b) = both(&Element::generator(src, s)?)?;
        report.expect_eq(format!("generator {}", src.letter_name(s)), &a, &b);
    }
    let sampler = HeapSampler::new(src, max_len)?;
    let mut r = rng(seed);
    for i in 0..samples {
        let x = sampler.element(&mut r, 3);
        let (a, b) = both(&x)?;
        report.expect_eq(format!("random element {i}"), &a, &b);
    }
    let fin = System::finite(n);
    for h in crate::words::enumerate_fc(&fin, None)? {
        let x = Element::basis_element(fin, Basis::G, h.clone());
        let back = apply_e(n, &incl(n, &x)?)?;
        report.expect_eq(format!("E∘incl on {}", h.display(&fin)), &back, &x);
    }
    Ok(report)
}

/// Image of a heap word under the source rotation, re-canonicalised.
pub fn rotate_source_heap(n: usize, h: &Heap, d: i64) -> Heap {
    let src = System::affine(n - 1);
    Heap::from_word(&src, &rotate_word(&src, h.word(), -d)).expect("rotation preserves FC")
}

#[cfg(test)]
mod tests {
    use super::*;

    const AT1: System = System::affine(1);
    const AT2: System = System::affine(2);

    #[test]
    fn f_on_generators() {
        let x = Element::generator(AT1, 1).unwrap();
        assert_eq!(apply_f(2, &x).unwrap(), Element::generator(AT2, 1).unwrap());
        let y = apply_f(2, &Element::generator(AT1, 0).unwrap()).unwrap();
        let direct = Element::signed_word_product(AT2, &[(2, false), (0, false), (2, true)]).unwrap();
        assert_eq!(y, direct);
        assert_eq!(apply_f(2, &Element::one(AT1)).unwrap(), Element::one(AT2));
    }

    #[test]
    fn e_of_affine_generator() {
        let e = apply_e(2, &Element::generator(AT2, 0).unwrap()).unwrap();
        let f2 = System::finite(2);
        let direct = Element::signed_word_product(f2, &[(1, false), (2, false), (1, true)]).unwrap();
        assert_eq!(e, direct);
        let e1 = apply_e(1, &Element::generator(AT1, 0).unwrap()).unwrap();
        assert_eq!(e1, Element::generator(System::finite(1), 1).unwrap());
    }

    #[test]
    fn psi_moves_letters() {
        let at3 = System::affine(3);
        let x = Element::generator(at3, 1).unwrap();
        assert_eq!(apply_psi(&x, 1).unwrap(), Element::generator(at3, 2).unwrap());
        assert_eq!(apply_psi(&x, 4).unwrap(), x);
        assert!(apply_psi(&Element::generator(System::finite(2), 1).unwrap(), 1).is_err());
    }

    #[test]
    fn conjugation_small_cases() {
        let x = Element::generator(AT1, 1).unwrap();
        let (l, r) = check_conjugation(2, &x, 1).unwrap();
        assert_eq!(l, r);
        let (l, r) = check_conjugation(2, &x, 0).unwrap();
        assert_eq!(l, r);
        let x3 = Element::generator(AT2, 0).unwrap();
        let (l, r) = check_conjugation(3, &x3, 2).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn diagram_commutes_n2() {
        let rep = check_commuting_diagram(2, 5, 7, 3).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }
}
