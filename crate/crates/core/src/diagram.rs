//! Planar (Temperley–Lieb) diagrams on `n + 1` strands, an independent model of `TL_n`.
//!
//! Points `0..m` are the top boundary and `m..2m` the bottom boundary, left to right, with
//! `m = n + 1`. The cup-cap `e_i` joins top `i-1, i` and bottom `i-1, i`. A closed loop is
//! worth `z`, `e_i = z f_{σ_i}`, and `z^2 δ = 1` makes `e_i e_{i±1} e_i = e_i` agree with
//! `f f' f = δ f`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::algebra::{Basis, Element};
use crate::error::{Error, Result};
use crate::ring::RingElem;
use crate::words::{Heap, Letter, System};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    partner: Vec<usize>,
}

impl Diagram {
    pub fn identity(strands: usize) -> Self {
        let m = strands;
        Diagram { partner: (0..2 * m).map(|p| if p < m { p + m } else { p - m }).collect() }
    }

    /// `e_i` for `1 <= i < strands`.
    pub fn cup_cap(strands: usize, i: usize) -> Self {
        assert!(i >= 1 && i < strands, "cup-cap index out of range");
        let m = strands;
        let mut d = Self::identity(m);
        let (a, b) = (i - 1, i);
        d.partner[a] = b;
        d.partner[b] = a;
        d.partner[m + a] = m + b;
        d.partner[m + b] = m + a;
        d
    }

    pub fn strands(&self) -> usize {
        self.partner.len() / 2
    }

    /// Sorted arcs `(p, partner)` with `p < partner`.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len())
            .filter(|&p| p < self.partner[p])
            .map(|p| (p, self.partner[p]))
            .collect()
    }

    fn circle_pos(&self, p: usize) -> usize {
        let m = self.strands();
        if p < m {
            p
        } else {
            3 * m - 1 - p
        }
    }

    pub fn is_planar(&self) -> bool {
        let arcs: Vec<(usize, usize)> = self
            .arcs()
            .into_iter()
            .map(|(a, b)| {
                let (x, y) = (self.circle_pos(a), self.circle_pos(b));
                (x.min(y), x.max(y))
            })
            .collect();
        arcs.iter().all(|&(a, b)| arcs.iter().all(|&(c, d)| !(a < c && c < b && b < d)))
    }

    /// Stacks `self` above `other`; returns the product and the number of closed loops.
    pub fn multiply(&self, other: &Diagram) -> Result<(Diagram, usize)> {
        let m = self.strands();
        if other.strands() != m {
            return Err(Error::Usage(format!(
                "cannot stack diagrams on {m} and {} strands",
                other.strands()
            )));
        }
        // middle row j is self's bottom point m + j and other's top point j
        let mut partner = vec![usize::MAX; 2 * m];
        let mut seen_middle = vec![false; m];
        // outer points: self top 0..m, other bottom m..2m (as result indices)
        for start in 0..2 * m {
            if partner[start] != usize::MAX {
                continue;
            }
            let (mut in_top, mut p) = if start < m { (true, start) } else { (false, start) };
            let end = loop {
                if in_top {
                    let q = self.partner[p];
                    if q < m {
                        break q;
                    }
                    seen_middle[q - m] = true;
                    in_top = false;
                    p = q - m;
                } else {
                    let q = other.partner[p];
                    if q >= m {
                        break q;
                    }
                    seen_middle[q] = true;
                    in_top = true;
                    p = q + m;
                }
            };
            partner[start] = end;
            partner[end] = start;
        }
        // remaining middle points lie on closed loops
        let mut loops = 0;
        for j in 0..m {
            if seen_middle[j] {
                continue;
            }
            loops += 1;
            let mut p = j;
            loop {
                seen_middle[p] = true;
                let down = other.partner[p];
                debug_assert!(down < m);
                seen_middle[down] = true;
                let up = self.partner[down + m];
                debug_assert!(up >= m);
                p = up - m;
                if seen_middle[p] {
                    break;
                }
            }
        }
        Ok((Diagram { partner }, loops))
    }

    /// Loops in the closure that joins top `i` to bottom `i`.
    pub fn closure_loops(&self) -> usize {
        let m = self.strands();
        let mut seen = vec![false; 2 * m];
        let mut loops = 0;
        for s in 0..2 * m {
            if seen[s] {
                continue;
            }
            loops += 1;
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                let q = self.partner[p];
                seen[q] = true;
                p = if q < m { q + m } else { q - m };
            }
        }
        loops
    }

    /// All planar diagrams on `strands` strands.
    pub fn enumerate(strands: usize) -> Vec<Diagram> {
        let m = strands;
        let circle_to_point = |c: usize| if c < m { c } else { 3 * m - 1 - c };
        let mut out = Vec::new();
        let mut pairing = vec![usize::MAX; 2 * m];
        fn rec(pairing: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let Some(first) = pairing.iter().position(|&x| x == usize::MAX) else {
                out.push(pairing.clone());
                return;
            };
            // partner must enclose an even number of free points
            for j in first + 1..pairing.len() {
                if pairing[j] != usize::MAX || (j - first) % 2 == 0 {
                    continue;
                }
                if pairing[first + 1..j].iter().any(|&x| x != usize::MAX) {
                    break;
                }
                pairing[first] = j;
                pairing[j] = first;
                rec(pairing, out);
                pairing[first] = usize::MAX;
                pairing[j] = usize::MAX;
            }
        }
        let mut raw = Vec::new();
        rec(&mut pairing, &mut raw);
        for circ in raw {
            let mut partner = vec![0; 2 * m];
            for (c, &d) in circ.iter().enumerate() {
                partner[circle_to_point(c)] = circle_to_point(d);
            }
            out.push(Diagram { partner });
        }
        out.sort();
        out
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram{:?}", self.arcs())
    }
}

/// A K-linear combination of diagrams.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DiagramVec {
    pub terms: BTreeMap<Diagram, RingElem>,
}

impl DiagramVec {
    pub fn add(&mut self, d: Diagram, c: RingElem) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(d.clone()).or_insert_with(RingElem::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn multiply(&self, other: &DiagramVec) -> Result<DiagramVec> {
        let z = RingElem::z();
        let mut out = DiagramVec::default();
        let mut zpow: HashMap<usize, RingElem> = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (d, loops) = a.multiply(b)?;
                let f = zpow.entry(loops).or_insert_with(|| z.pow(loops as i32).unwrap()).clone();
                out.add(d, ca.mul(cb).mul(&f));
            }
        }
        Ok(out)
    }
}

/// The diagram product `e_{s_1} ... e_{s_k}` with its loop factor.
pub fn word_diagram(strands: usize, word: &[Letter]) -> Result<(Diagram, RingElem)> {
    let mut d = Diagram::identity(strands);
    let mut c = RingElem::one();
    for &s in word {
        let (next, loops) = d.multiply(&Diagram::cup_cap(strands, s as usize))?;
        d = next;
        c = c.mul(&RingElem::z().pow(loops as i32)?);
    }
    Ok((d, c))
}

/// `f_w -> z^{-l(w)} e_w` on an element of `TL_n` (converted to the f basis first).
pub fn map_to_diagrams(a: &Element) -> Result<DiagramVec> {
    let sys = a.system();
    if sys.affine {
        return Err(Error::Usage("the diagram oracle only models the finite algebra".into()));
    }
    let a = a.to_basis(Basis::F)?;
    let mut out = DiagramVec::default();
    for (h, c) in a.terms() {
        let (d, f) = word_diagram(sys.rank + 1, h.word())?;
        out.add(d, c.mul(&f).mul(&RingElem::z().pow(-(h.len() as i32))?));
    }
    Ok(out)
}

/// Closure trace `z^{loops - 1}`, normalised so the identity on `n + 1` strands gives `z^n`.
pub fn oracle_trace(d: &Diagram) -> RingElem {
    RingElem::z().pow(d.closure_loops() as i32 - 1).expect("z is nonzero")
}

pub fn oracle_trace_vec(v: &DiagramVec) -> RingElem {
    v.terms.iter().map(|(d, c)| c.mul(&oracle_trace(d))).sum()
}

/// Heap of `TL_n` whose f-basis element maps to a multiple of the diagram, by search over
/// basis heaps.
pub fn diagram_heaps(n: usize) -> Result<Vec<(Heap, Diagram)>> {
    let sys = System::finite(n);
    crate::words::enumerate_fc(&sys, None)?
        .into_iter()
        .map(|h| Ok((h.clone(), word_diagram(n + 1, h.word())?.0)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cup_cap_squares_to_loop() {
        let e1 = Diagram::cup_cap(3, 1);
        assert_eq!(e1.multiply(&e1).unwrap(), (e1.clone(), 1));
    }

    #[test]
    fn e1_e2_e1() {
        let e1 = Diagram::cup_cap(3, 1);
        let e2 = Diagram::cup_cap(3, 2);
        let (d, l1) = e1.multiply(&e2).unwrap();
        let (d, l2) = d.multiply(&e1).unwrap();
        assert_eq!((d, l1 + l2), (e1, 0));
    }

    #[test]
    fn identity_is_neutral() {
        let id = Diagram::identity(4);
        let e = Diagram::cup_cap(4, 2);
        assert_eq!(id.multiply(&e).unwrap(), (e.clone(), 0));
        assert_eq!(e.multiply(&id).unwrap(), (e, 0));
    }

    #[test]
    fn catalan_counts_and_planarity() {
        let counts: Vec<usize> = (1..=6).map(|m| Diagram::enumerate(m).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42, 132]);
        assert!(Diagram::enumerate(4).iter().all(Diagram::is_planar));
    }

    #[test]
    fn closure_values() {
        let z = RingElem::z();
        assert_eq!(oracle_trace(&Diagram::identity(3)), z.mul(&z));
        assert_eq!(oracle_trace(&Diagram::cup_cap(2, 1)), RingElem::one());
        assert_eq!(oracle_trace(&Diagram::cup_cap(3, 1)), z);
    }

    #[test]
    fn normalisation_constants() {
        let z = RingElem::z();
        assert!(z.mul(&z).mul(&RingElem::delta()).is_one());
        let f1 = Element::from_word(System::finite(1), Basis::F, &[1]).unwrap();
        let v = map_to_diagrams(&f1).unwrap();
        let mut expect = DiagramVec::default();
        expect.add(Diagram::cup_cap(2, 1), z.inv().unwrap());
        assert_eq!(v, expect);
    }
}
