//! Fixed workloads shared by the benchmarks.

use atl_core::random::{rng, HeapSampler};
use atl_core::{enumerate_fc, Element, Heap, System};

/// Pairs of random g-basis elements, reproducible from `seed`.
pub fn element_pairs(system: System, max_len: usize, terms: usize, count: usize, seed: u64) -> Vec<(Element, Element)> {
    let sampler = HeapSampler::new(system, max_len).expect("enumerable");
    let mut r = rng(seed);
    (0..count).map(|_| (sampler.element(&mut r, terms), sampler.element(&mut r, terms))).collect()
}

/// Heaps of exactly length `len`.
pub fn heaps_of_length(system: System, len: usize) -> Vec<Heap> {
    enumerate_fc(&system, Some(len)).expect("enumerable").into_iter().filter(|h| h.len() == len).collect()
}
