//! Trace classes of `TL-hat_3`: every fully commutative heap of `Ã_2` is a chain, and a
//! cyclic move (first letter to the end) shortens any word of length at least 4 that is not
//! a multiple of 3. What remains are the short words and the descending/ascending cycles.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{Basis, Element};
use crate::error::Result;
use crate::ring::RingElem;
use crate::words::{Heap, Letter, System};

pub const AT2: System = System::affine(2);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TraceClass {
    /// A heap of length at most 2, taken up to cyclic rotation.
    Short(Vec<Letter>),
    /// `(σ_2 σ_1 a)^m` and its rotations.
    Descending(usize),
    /// `(σ_1 σ_2 a)^m` and its rotations.
    Ascending(usize),
}

impl TraceClass {
    pub fn level(&self) -> usize {
        match self {
            TraceClass::Short(_) => 0,
            TraceClass::Descending(m) | TraceClass::Ascending(m) => *m,
        }
    }
}

fn short_class(word: &[Letter]) -> TraceClass {
    let mut w = word.to_vec();
    if w.len() == 2 && w[1] < w[0] {
        w.swap(0, 1);
    }
    TraceClass::Short(w)
}

/// The class of a heap whose length is at most 2 or a multiple of 3.
pub fn stuck_class(h: &Heap) -> Option<TraceClass> {
    let w = h.word();
    match w.len() {
        0..=2 => Some(short_class(w)),
        l if l % 3 == 0 => {
            let descending = (w[0] + 2) % 3 == w[1];
            Some(if descending {
                TraceClass::Descending(l / 3)
            } else {
                TraceClass::Ascending(l / 3)
            })
        }
        _ => None,
    }
}

/// Reduces an element of `TL-hat_3` modulo commutators to trace classes.
pub fn reduce_to_classes(x: &Element) -> Result<BTreeMap<TraceClass, RingElem>> {
    AT2.ensure_same(&x.system())?;
    let x = x.to_basis(Basis::G)?;
    let mut pending: BTreeMap<Heap, RingElem> = x.terms().map(|(h, c)| (h.clone(), c.clone())).collect();
    let mut out: BTreeMap<TraceClass, RingElem> = BTreeMap::new();
    let mut moves: HashMap<Heap, Element> = HashMap::new();
    while let Some((h, c)) = pending.pop_last() {
        if let Some(cls) = stuck_class(&h) {
            let e = out.entry(cls.clone()).or_insert_with(RingElem::zero);
            *e = e.add(&c);
            if e.is_zero() {
                out.remove(&cls);
            }
            continue;
        }
        let moved = match moves.get(&h) {
            Some(m) => m.clone(),
            None => {
                let w = h.word();
                let rest = Element::from_word(AT2, Basis::G, &w[1..])?;
                let m = rest.mul(&Element::generator(AT2, w[0])?)?;
                moves.insert(h.clone(), m.clone());
                m
            }
        };
        for (k, d) in moved.terms() {
            debug_assert!(k.len() < h.len());
            let e = pending.entry(k.clone()).or_insert_with(RingElem::zero);
            *e = e.add(&d.mul(&c));
            if e.is_zero() {
                pending.remove(k);
            }
        }
    }
    Ok(out)
}
