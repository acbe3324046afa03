//! Sparse exact row reduction over `K`, kept incremental: vectors are inserted one at a
//! time and each reduced row remembers which inserted vectors it came from.

use std::collections::BTreeMap;

use crate::ring::RingElem;

pub type SparseVec<K> = BTreeMap<K, RingElem>;

fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &RingElem, x: &SparseVec<K>) {
    for (k, c) in x {
        let e = y.entry(k.clone()).or_insert_with(RingElem::zero);
        *e = e.add(&a.mul(c));
        if e.is_zero() {
            y.remove(k);
        }
    }
}

fn scaled<K: Ord + Clone>(v: &SparseVec<K>, c: &RingElem) -> SparseVec<K> {
    v.iter().map(|(k, x)| (k.clone(), x.mul(c))).collect()
}

#[derive(Clone, Debug)]
struct Row<K> {
    /// Normalised to 1 at its leading key.
    vec: SparseVec<K>,
    /// The row as a combination of inserted vectors.
    origin: SparseVec<usize>,
}

/// Echelon span of inserted vectors.
#[derive(Clone, Debug)]
pub struct Span<K: Ord + Clone> {
    rows: BTreeMap<K, Row<K>>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for Span<K> {
    fn default() -> Self {
        Span { rows: BTreeMap::new(), inserted: 0 }
    }
}

impl<K: Ord + Clone> Span<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduces `vec` against the rows; returns the remainder and the combination of
    /// inserted vectors that was subtracted.
    fn reduce(&self, mut vec: SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut used: SparseVec<usize> = BTreeMap::new();
        // pivots are eliminated from the largest key down, so a key once cleared stays clear
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => vec.keys().next_back().cloned(),
                Some(c) => vec.range(..c.clone()).next_back().map(|(k, _)| k.clone()),
            };
            let Some(k) = next else { break };
            if let Some(row) = self.rows.get(&k) {
                let c = vec[&k].clone();
                axpy(&mut vec, &c.neg(), &row.vec);
                axpy(&mut used, &c, &row.origin);
            }
            cursor = Some(k);
        }
        (vec, used)
    }

    /// Inserts a vector; returns `true` if it enlarged the span.
    pub fn insert(&mut self, vec: SparseVec<K>) -> bool {
        let index = self.inserted;
        self.inserted += 1;
        let (rem, used) = self.reduce(vec);
        let Some((pivot, lead)) = rem.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.inv().expect("nonzero pivot");
        let mut origin = used.iter().map(|(k, c)| (*k, c.neg())).collect::<SparseVec<usize>>();
        origin.insert(index, RingElem::one());
        let row = Row { vec: scaled(&rem, &inv), origin: scaled(&origin, &inv) };
        self.rows.insert(pivot, row);
        true
    }

    pub fn contains(&self, vec: &SparseVec<K>) -> bool {
        self.reduce(vec.clone()).0.is_empty()
    }

    /// Coefficients `c_i` with `vec = Σ c_i inserted_i`, if `vec` lies in the span.
    pub fn express(&self, vec: &SparseVec<K>) -> Option<SparseVec<usize>> {
        let (rem, used) = self.reduce(vec.clone());
        rem.is_empty().then_some(used)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, c)| (k, RingElem::from_int(c))).collect()
    }

    #[test]
    fn rank_and_expression() {
        let mut s = Span::new();
        assert!(s.insert(v(&[(0, 1), (1, 2)])));
        assert!(s.insert(v(&[(1, 1), (2, 1)])));
        assert!(!s.insert(v(&[(0, 1), (1, 3), (2, 1)])));
        assert_eq!(s.rank(), 2);
        let target = v(&[(0, 2), (1, 1), (2, -3)]);
        let c = s.express(&target).unwrap();
        let mut back = SparseVec::new();
        let originals = [v(&[(0, 1), (1, 2)]), v(&[(1, 1), (2, 1)])];
        for (i, ci) in &c {
            axpy(&mut back, ci, &originals[*i]);
        }
        assert_eq!(back, target);
        assert!(s.express(&v(&[(3, 1)])).is_none());
    }
}
