//! Normal forms of basis elements of `TL-hat_{n+1}`:
//! `c C^k g_{σ_n ... σ_i}` (form 1) or `g_{σ_{i0} ... σ_1 a} C^k d g_{σ_n ... σ_i}` (form 2),
//! with `c, d` in the image of `F_n` and `C = g_{σ_n ... σ_1 a_{n+1}}`.
//!
//! The search runs over `(k, i, i0)` with `k` decreasing, divides `g_w` by the known
//! monomial factors, and asks the preimage solver whether the quotient lies in the image.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::algebra::{Basis, Element};
use crate::error::{Error, Result};
use crate::homs::{apply_f, coxeter_power};
use crate::markov::preimage::FImage;
use crate::markov::{check_rank, MarkovElement};
use crate::words::{Heap, Letter, System, AFFINE};

thread_local! {
    static IMAGES: RefCell<HashMap<usize, (usize, std::rc::Rc<FImage>)>> = RefCell::new(HashMap::new());
    static INV_POWERS: RefCell<HashMap<(usize, u32), Element>> = RefCell::new(HashMap::new());
}

fn image_space(n: usize, bound: usize) -> Result<std::rc::Rc<FImage>> {
    if let Some((b, f)) = IMAGES.with(|m| m.borrow().get(&n).cloned()) {
        if b >= bound {
            return Ok(f);
        }
    }
    let f = std::rc::Rc::new(FImage::new(n, bound)?);
    IMAGES.with(|m| m.borrow_mut().insert(n, (bound, f.clone())));
    Ok(f)
}

fn inverse_power(n: usize, k: u32) -> Result<Element> {
    if let Some(x) = INV_POWERS.with(|m| m.borrow().get(&(n, k)).cloned()) {
        return Ok(x);
    }
    let x = coxeter_power(n, -(k as i64))?;
    INV_POWERS.with(|m| m.borrow_mut().insert((n, k), x.clone()));
    Ok(x)
}

/// Letters of `σ_n σ_{n-1} ... σ_i`; empty when `i = n + 1`.
fn run_word(n: usize, i: usize) -> Vec<Letter> {
    (i..=n).rev().map(|s| s as Letter).collect()
}

/// Letters of `σ_{i0} ... σ_1 a`.
fn head_word(i0: usize) -> Vec<Letter> {
    let mut w: Vec<Letter> = (1..=i0).rev().map(|s| s as Letter).collect();
    w.push(AFFINE);
    w
}

fn inverse_of_word(sys: System, w: &[Letter]) -> Result<Element> {
    let signed: Vec<(Letter, bool)> = w.iter().rev().map(|&s| (s, true)).collect();
    Element::signed_word_product(sys, &signed)
}

#[derive(Clone, Debug, PartialEq)]
pub enum NormalFormVariant {
    Form1 { c: Element, k: u32, i: usize },
    Form2 { i0: usize, k: u32, d: Element, i: usize },
}

/// `c` and `d` are preimages in `TL-hat_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineNormalForm {
    pub n: usize,
    pub variant: NormalFormVariant,
}

impl AffineNormalForm {
    pub fn power(&self) -> u32 {
        match self.variant {
            NormalFormVariant::Form1 { k, .. } | NormalFormVariant::Form2 { k, .. } => k,
        }
    }

    pub fn realize(&self) -> Result<Element> {
        let n = self.n;
        let sys = System::affine(n);
        match &self.variant {
            NormalFormVariant::Form1 { c, k, i } => apply_f(n, c)?
                .mul(&coxeter_power(n, *k as i64)?)?
                .mul(&Element::word_product(sys, &run_word(n, *i))?),
            NormalFormVariant::Form2 { i0, k, d, i } => Element::word_product(sys, &head_word(*i0))?
                .mul(&coxeter_power(n, *k as i64)?)?
                .mul(&apply_f(n, d)?)?
                .mul(&Element::word_product(sys, &run_word(n, *i))?),
        }
    }

    pub fn describe(&self) -> String {
        match &self.variant {
            NormalFormVariant::Form1 { c, k, i } => {
                format!("form 1: c = F({}), k = {k}, i = {i}", c.to_text())
            }
            NormalFormVariant::Form2 { i0, k, d, i } => {
                format!("form 2: i0 = {i0}, k = {k}, d = F({}), i = {i}", d.to_text())
            }
        }
    }
}

fn validate(n1: usize, w: &Heap) -> Result<usize> {
    let n = n1.checked_sub(1).ok_or_else(|| Error::Usage("rank must be positive".into()))?;
    check_rank(n)?;
    Heap::from_word(&System::affine(n), w.word())?;
    Ok(n)
}

fn form1_at(n: usize, g: &Element, k: u32, i: usize, images: &FImage) -> Result<Option<Element>> {
    let sys = System::affine(n);
    let c = g.mul(&inverse_of_word(sys, &run_word(n, i))?)?.mul(&inverse_power(n, k)?)?;
    images.preimage(&c)
}

/// Classifies the basis element `g_w` of `TL-hat_{n1}`, `n1 = n + 1`.
pub fn classify_affine(w: &Heap, n1: usize) -> Result<AffineNormalForm> {
    let n = validate(n1, w)?;
    let sys = System::affine(n);
    let images = image_space(n, w.len())?;
    let g = Element::basis_element(sys, Basis::G, w.clone());
    let k_max = (w.len() / (n + 1)) as u32;
    for k in (0..=k_max).rev() {
        for i in 1..=n + 1 {
            if let Some(c) = form1_at(n, &g, k, i, &images)? {
                return Ok(AffineNormalForm { n, variant: NormalFormVariant::Form1 { c, k, i } });
            }
        }
        for i0 in 0..n {
            let head = inverse_of_word(sys, &head_word(i0))?;
            let left = inverse_power(n, k)?.mul(&head)?.mul(&g)?;
            for i in 1..=n + 1 {
                let d = left.mul(&inverse_of_word(sys, &run_word(n, i))?)?;
                if let Some(d) = images.preimage(&d)? {
                    return Ok(AffineNormalForm { n, variant: NormalFormVariant::Form2 { i0, k, d, i } });
                }
            }
        }
    }
    Err(Error::Falsification(format!(
        "no normal form found for {} in the affine algebra of rank {n}",
        w.display(&sys)
    )))
}

/// `Some(A g_{σ_n}^ε B)` when `g_w = c g_{σ_n ... σ_i}` with `c` in the image of `F_n`.
pub fn is_markov(w: &Heap, n1: usize) -> Result<Option<MarkovElement>> {
    let n = validate(n1, w)?;
    let sys = System::affine(n);
    let src = System::affine(n - 1);
    let images = image_space(n, w.len())?;
    let g = Element::basis_element(sys, Basis::G, w.clone());
    for i in (1..=n + 1).rev() {
        if let Some(c) = form1_at(n, &g, 0, i, &images)? {
            // g_{σ_n ... σ_i} = g_{σ_n} g_{σ_{n-1} ... σ_i}, the tail lying in TL_{n-1}
            let tail: Vec<Letter> = run_word(n, i).into_iter().skip(1).collect();
            let b = Element::from_word(src, Basis::G, &tail)?;
            return Ok(Some(MarkovElement::new(n, c, i <= n, b)?));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    const AT2: System = System::affine(2);

    fn heap(w: &[Letter]) -> Heap {
        Heap::from_word(&AT2, w).unwrap()
    }

    #[test]
    fn coxeter_word_is_form1_power_one() {
        let nf = classify_affine(&heap(&[2, 1, 0]), 3).unwrap();
        let one = Element::one(System::affine(1));
        assert_eq!(nf.variant, NormalFormVariant::Form1 { c: one, k: 1, i: 3 });
    }

    #[test]
    fn finite_letter_is_form1() {
        let nf = classify_affine(&heap(&[1]), 3).unwrap();
        let g1 = Element::generator(System::affine(1), 1).unwrap();
        assert_eq!(nf.variant, NormalFormVariant::Form1 { c: g1, k: 0, i: 3 });
    }

    #[test]
    fn s1_a_is_form2() {
        let nf = classify_affine(&heap(&[1, 0]), 3).unwrap();
        let one = Element::one(System::affine(1));
        assert_eq!(nf.variant, NormalFormVariant::Form2 { i0: 1, k: 0, d: one, i: 3 });
        assert_eq!(nf.realize().unwrap(), Element::from_word(AT2, Basis::G, &[1, 0]).unwrap());
    }

    #[test]
    fn markov_examples() {
        let m = is_markov(&Heap::identity(), 3).unwrap().unwrap();
        assert_eq!(m, MarkovElement::identity(2).unwrap());
        let m = is_markov(&heap(&[2]), 3).unwrap().unwrap();
        assert!(m.epsilon);
        assert_eq!(m.realize().unwrap(), Element::generator(AT2, 2).unwrap());
        assert!(is_markov(&heap(&[2, 1, 0]), 3).unwrap().is_none());
    }
}
