//! Membership in `F_n(TL-hat_n)` and explicit preimages, by exact row reduction against the
//! images of the basis heaps of `TL-hat_n` up to a length bound.

use crate::algebra::{Basis, Element};
use crate::error::Result;
use crate::homs::apply_f;
use crate::linalg::{SparseVec, Span};
use crate::words::{enumerate_fc, Heap, System};

fn as_vec(x: &Element) -> SparseVec<Heap> {
    x.terms().map(|(h, c)| (h.clone(), c.clone())).collect()
}

pub struct FImage {
    n: usize,
    source: Vec<Heap>,
    span: Span<Heap>,
}

impl FImage {
    /// Images of all basis heaps of `TL-hat_n` of length at most `max_len`.
    pub fn new(n: usize, max_len: usize) -> Result<Self> {
        let src = System::affine(n - 1);
        let source = enumerate_fc(&src, Some(max_len))?;
        let mut span = Span::new();
        for h in &source {
            let img = apply_f(n, &Element::basis_element(src, Basis::G, h.clone()))?;
            span.insert(as_vec(&img));
        }
        Ok(FImage { n, source, span })
    }

    /// `y` with `F_n(y) = x`, if one exists within the length bound.
    pub fn preimage(&self, x: &Element) -> Result<Option<Element>> {
        System::affine(self.n).ensure_same(&x.system())?;
        let x = x.to_basis(Basis::G)?;
        let Some(coeffs) = self.span.express(&as_vec(&x)) else {
            return Ok(None);
        };
        let src = System::affine(self.n - 1);
        let mut y = Element::zero(src, Basis::G);
        for (i, c) in coeffs {
            y = y.add_scale(&Element::basis_element(src, Basis::G, self.source[i].clone()), &c)?;
        }
        Ok(Some(y))
    }
}

/// Convenience wrapper choosing the bound from `x` itself.
pub fn f_preimage(n: usize, x: &Element) -> Result<Option<Element>> {
    let bound = x.max_len().unwrap_or(0);
    FImage::new(n, bound)?.preimage(x)
}

