//! Bounded-length check that trace values are determined by Markov elements.
//!
//! Work in `V = span{g_w : l(w) <= L + 2}`. The relations are `g_s g_x - g_x g_s` for every
//! generator `s` and heap `x` of length at most `L + 1`, and the Markov elements are
//! `F(g_u) g_{σ_n}^ε F(g_{u'})` whose expansion stays inside `V`. Every `g_w` with
//! `l(w) <= L` lying in the span of both sets means any trace's value on it is fixed by its
//! values on Markov elements.

use serde::Serialize;

use crate::algebra::{Basis, Element};
use crate::error::{Error, Result};
use crate::homs::apply_f;
use crate::linalg::{SparseVec, Span};
use crate::markov::{MarkovCombination, MarkovElement, Move};
use crate::ring::RingElem;
use crate::words::{enumerate_fc, Heap, Letter, System};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverStatus {
    Spanned,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolverReport {
    pub n1: usize,
    pub max_len: usize,
    pub ambient_len: usize,
    pub words: usize,
    pub ambient_dim: usize,
    pub relation_rank: usize,
    pub markov_elements: usize,
    pub combined_rank: usize,
    /// Words of length at most `max_len` not reached at this truncation.
    pub unspanned: Vec<String>,
    pub status: SolverStatus,
}

fn as_vec(x: &Element) -> SparseVec<Heap> {
    x.terms().map(|(h, c)| (h.clone(), c.clone())).collect()
}

pub struct TraceSolver {
    n1: usize,
    max_len: usize,
    ambient_len: usize,
    words: Vec<Heap>,
    ambient_dim: usize,
    relations: usize,
    relation_rank: usize,
    markov: Vec<MarkovElement>,
    span: Span<Heap>,
}

impl TraceSolver {
    pub fn new(n1: usize, max_len: usize) -> Result<Self> {
        if !(3..=4).contains(&n1) {
            return Err(Error::Usage(format!("the solver covers n1 = 3 and 4, got {n1}")));
        }
        let n = n1 - 1;
        let sys = System::affine(n);
        let src = System::affine(n - 1);
        let ambient_len = max_len + 2;
        let ambient = enumerate_fc(&sys, Some(ambient_len))?;
        let mut span = Span::new();
        let mut relations = 0;
        for x in ambient.iter().filter(|h| h.len() < ambient_len) {
            let gx = Element::basis_element(sys, Basis::G, x.clone());
            for s in sys.letters() {
                let gs = Element::generator(sys, s)?;
                let r = gs.mul(&gx)?.minus(&gx.mul(&gs)?)?;
                span.insert(as_vec(&r));
                relations += 1;
            }
        }
        let relation_rank = span.rank();
        let gn = Element::generator(sys, n as Letter)?;
        let pieces: Vec<(Heap, Element)> = enumerate_fc(&src, Some(ambient_len))?
            .into_iter()
            .map(|u| {
                let img = apply_f(n, &Element::basis_element(src, Basis::G, u.clone()))?;
                Ok((u, img))
            })
            .collect::<Result<_>>()?;
        let fits = |x: &Element| x.max_len().unwrap_or(0) <= ambient_len;
        let mut markov = Vec::new();
        let one = Element::one(src);
        for (u, fu) in &pieces {
            if fits(fu) {
                span.insert(as_vec(fu));
                markov.push(MarkovElement::new(n, Element::basis_element(src, Basis::G, u.clone()), false, one.clone())?);
            }
        }
        for (u, fu) in &pieces {
            let left = fu.mul(&gn)?;
            for (w, fw) in &pieces {
                // skip pairs far too long to cancel back into V; dropping candidates only
                // makes the check more conservative
                if fu.max_len().unwrap_or(0) + 1 + fw.max_len().unwrap_or(0) > ambient_len + 4 {
                    continue;
                }
                let m = left.mul(fw)?;
                if fits(&m) {
                    span.insert(as_vec(&m));
                    markov.push(MarkovElement::new(
                        n,
                        Element::basis_element(src, Basis::G, u.clone()),
                        true,
                        Element::basis_element(src, Basis::G, w.clone()),
                    )?);
                }
            }
        }
        let words = ambient.iter().filter(|h| h.len() <= max_len).cloned().collect();
        Ok(TraceSolver { n1, max_len, ambient_len, words, ambient_dim: ambient.len(), relations, relation_rank, markov, span })
    }

    /// `τ(x) = Σ c_i τ(M_i)` for every trace, if `x` is reached at this truncation.
    pub fn express(&self, x: &Element) -> Result<Option<MarkovCombination>> {
        System::affine(self.n1 - 1).ensure_same(&x.system())?;
        let Some(coeffs) = self.span.express(&as_vec(&x.to_basis(Basis::G)?)) else {
            return Ok(None);
        };
        let mut out = MarkovCombination::new(self.n1 - 1);
        for (i, c) in coeffs {
            if i >= self.relations {
                out.push(c, self.markov[i - self.relations].clone());
            }
        }
        out.note(Move::CyclicMove, format!("row reduction modulo commutators at length {}", self.ambient_len));
        Ok(Some(out))
    }

    pub fn report(&self) -> SolverReport {
        let sys = System::affine(self.n1 - 1);
        let unspanned: Vec<String> = self
            .words
            .iter()
            .filter(|h| {
                let v = SparseVec::from([((*h).clone(), RingElem::one())]);
                !self.span.contains(&v)
            })
            .map(|h| h.display(&sys))
            .collect();
        SolverReport {
            n1: self.n1,
            max_len: self.max_len,
            ambient_len: self.ambient_len,
            words: self.words.len(),
            ambient_dim: self.ambient_dim,
            relation_rank: self.relation_rank,
            markov_elements: self.markov.len(),
            combined_rank: self.span.rank(),
            status: if unspanned.is_empty() { SolverStatus::Spanned } else { SolverStatus::Inconclusive },
            unspanned,
        }
    }
}

pub fn trace_relation_solver(n1: usize, max_len: usize) -> Result<SolverReport> {
    Ok(TraceSolver::new(n1, max_len)?.report())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::rho;

    #[test]
    fn trivial_truncation() {
        let r = trace_relation_solver(3, 0).unwrap();
        assert_eq!(r.status, SolverStatus::Spanned);
    }

    #[test]
    fn length_four_and_consistency() {
        let s = TraceSolver::new(3, 4).unwrap();
        assert_eq!(s.report().status, SolverStatus::Spanned);
        let at2 = System::affine(2);
        let c = Element::from_word(at2, Basis::G, &[2, 1, 0]).unwrap();
        let comb = s.express(&c).unwrap().unwrap();
        assert_eq!(comb.evaluate_rho().unwrap(), rho(3, &c).unwrap());
    }
}
