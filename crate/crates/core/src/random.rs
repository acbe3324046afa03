//! Seeded random heaps and elements for property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Basis, Element};
use crate::error::Result;
use crate::ring::RingElem;
use crate::words::{enumerate_fc, Heap, System};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `1, -1, q, 1/(1+q)`
pub fn palette() -> [RingElem; 4] {
    [
        RingElem::one(),
        RingElem::from_int(-1),
        RingElem::q(),
        RingElem::one().add(&RingElem::q()).inv().expect("nonzero"),
    ]
}

/// Draws uniformly from a pool of heaps, e.g. one returned by [`enumerate_fc`].
pub struct HeapSampler {
    system: System,
    pool: Vec<Heap>,
}

impl HeapSampler {
    pub fn new(system: System, max_len: usize) -> Result<Self> {
        Ok(HeapSampler { system, pool: enumerate_fc(&system, Some(max_len))? })
    }

    pub fn pool(&self) -> &[Heap] {
        &self.pool
    }

    pub fn heap(&self, rng: &mut Rng64) -> Heap {
        self.pool.choose(rng).expect("pool contains the identity").clone()
    }

    /// A g-basis element with `1..=max_terms` terms and palette coefficients.
    pub fn element(&self, rng: &mut Rng64, max_terms: usize) -> Element {
        let pal = palette();
        let k = rng.gen_range(1..=max_terms.max(1));
        let mut e = Element::zero(self.system, Basis::G);
        for _ in 0..k {
            let h = self.heap(rng);
            let c = pal.choose(rng).unwrap().clone();
            e = e
                .add_scale(&Element::basis_element(self.system, Basis::G, h), &c)
                .expect("same system");
        }
        e
    }
}
