//! Words in the Coxeter systems `A_n` and `Ã_n`, and heaps of fully commutative elements.
//!
//! Letters are small integers. In the finite system `A_n` they are `1..=n`. In the affine
//! system `Ã_n` they are `0..=n`, where `0` is the affine generator and adjacency is cyclic
//! modulo `n + 1`. For `Ã_1` the two generators are joined by an infinite bond.
//!
//! A heap is stored as its Cartier–Foata word: letters sorted by (depth, label), where the
//! depth of an occurrence is one more than the deepest earlier occurrence it does not
//! commute with. Two words give the same heap iff they are commutation equivalent.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u8;

/// The affine generator's index.
pub const AFFINE: Letter = 0;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct System {
    pub rank: usize,
    pub affine: bool,
}

impl System {
    pub const fn finite(rank: usize) -> Self {
        System { rank, affine: false }
    }

    pub const fn affine(rank: usize) -> Self {
        System { rank, affine: true }
    }

    /// All generators, the affine one first.
    pub fn letters(&self) -> Vec<Letter> {
        if self.rank == 0 {
            return Vec::new();
        }
        let start = if self.affine { 0 } else { 1 };
        (start..=self.rank as Letter).collect()
    }

    pub fn contains(&self, s: Letter) -> bool {
        if self.rank == 0 {
            return false;
        }
        (s as usize) <= self.rank && (self.affine || s >= 1)
    }

    /// Distinct and non-commuting.
    pub fn adjacent(&self, s: Letter, t: Letter) -> bool {
        if s == t {
            return false;
        }
        if self.affine {
            let m = self.rank as i32 + 1;
            let d = (s as i32 - t as i32).rem_euclid(m);
            d == 1 || d == m - 1
        } else {
            (s as i32 - t as i32).abs() == 1
        }
    }

    /// True for the bond of `Ã_1`, which carries no braid relation.
    pub fn infinite_bond(&self, s: Letter, t: Letter) -> bool {
        self.affine && self.rank == 1 && s != t
    }

    pub fn commute(&self, s: Letter, t: Letter) -> bool {
        s != t && !self.adjacent(s, t)
    }

    /// `s1`..`sn`, and `a` for the affine generator.
    pub fn letter_name(&self, s: Letter) -> String {
        if self.affine && s == AFFINE {
            "a".to_string()
        } else {
            format!("s{s}")
        }
    }

    pub fn parse_letter(&self, tok: &str) -> Result<Letter> {
        let s = if tok == "a" {
            if !self.affine {
                return Err(Error::Usage(format!("letter `a` is not in finite system {self}")));
            }
            AFFINE
        } else if let Some(num) = tok.strip_prefix('s') {
            num.parse::<Letter>()
                .map_err(|_| Error::Usage(format!("unknown letter {tok:?}")))?
        } else {
            return Err(Error::Usage(format!("unknown letter {tok:?}")));
        };
        if s == AFFINE && tok != "a" || !self.contains(s) {
            return Err(Error::Usage(format!("letter {tok:?} is not in system {self}")));
        }
        Ok(s)
    }

    /// Parses a whitespace separated letter list such as `"s2 s1 a"`.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Letter>> {
        text.split_whitespace().map(|t| self.parse_letter(t)).collect()
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        word.iter().map(|&s| self.letter_name(s)).collect::<Vec<_>>().join(" ")
    }

    pub fn ensure_affine(&self, what: &str) -> Result<()> {
        if self.affine {
            Ok(())
        } else {
            Err(Error::Usage(format!("{what} requires an affine system, got {self}")))
        }
    }

    pub fn ensure_same(&self, other: &System) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SystemMismatch { expected: *self, found: *other })
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.affine {
            write!(f, "affine A~{}", self.rank)
        } else {
            write!(f, "A{}", self.rank)
        }
    }
}

impl fmt::Debug for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Why a word failed to be reduced and fully commutative. Positions index the input word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotFc {
    /// Two occurrences of one letter with nothing non-commuting in between.
    Quadratic { first: usize, second: usize },
    /// A factor `s t s` up to commutation.
    Braid { first: usize, middle: usize, second: usize },
}

impl fmt::Display for NotFc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotFc::Quadratic { first, second } => {
                write!(f, "quadratic collision at positions {first} and {second}")
            }
            NotFc::Braid { first, middle, second } => {
                write!(f, "braid triple at positions {first}, {middle}, {second}")
            }
        }
    }
}

/// A fully commutative element, stored as its Cartier–Foata word.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Heap {
    word: Vec<Letter>,
}

impl Ord for Heap {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word.len().cmp(&other.word.len()).then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for Heap {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Heap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Heap{:?}", self.word)
    }
}

/// Depth of each occurrence in the heap of `word`.
fn depths(system: &System, word: &[Letter]) -> Vec<usize> {
    let mut depth = vec![0usize; word.len()];
    for i in 0..word.len() {
        let mut d = 0;
        for j in 0..i {
            if word[j] == word[i] || system.adjacent(word[j], word[i]) {
                d = d.max(depth[j]);
            }
        }
        depth[i] = d + 1;
    }
    depth
}

fn foata_order(system: &System, word: &[Letter]) -> Vec<Letter> {
    let depth = depths(system, word);
    let mut idx: Vec<usize> = (0..word.len()).collect();
    idx.sort_by_key(|&i| (depth[i], word[i]));
    idx.into_iter().map(|i| word[i]).collect()
}

/// Checks the interval criterion on consecutive equal letters.
fn fc_witness(system: &System, word: &[Letter]) -> Option<NotFc> {
    for i in 0..word.len() {
        let s = word[i];
        let Some(j) = (i + 1..word.len()).find(|&j| word[j] == s) else {
            continue;
        };
        let between: Vec<usize> =
            (i + 1..j).filter(|&k| system.adjacent(word[k], s)).collect();
        match between.len() {
            0 => return Some(NotFc::Quadratic { first: i, second: j }),
            1 if !system.infinite_bond(s, word[between[0]]) => {
                return Some(NotFc::Braid { first: i, middle: between[0], second: j })
            }
            _ => {}
        }
    }
    None
}

impl Heap {
    pub fn identity() -> Self {
        Heap { word: Vec::new() }
    }

    /// The heap of a word, or the reason it is not reduced and fully commutative.
    pub fn canonicalize(system: &System, letters: &[Letter]) -> std::result::Result<Heap, NotFc> {
        if let Some(w) = fc_witness(system, letters) {
            return Err(w);
        }
        Ok(Heap { word: foata_order(system, letters) })
    }

    /// Like [`Heap::canonicalize`] but also validates letters against the system.
    pub fn from_word(system: &System, letters: &[Letter]) -> Result<Heap> {
        if let Some(&s) = letters.iter().find(|&&s| !system.contains(s)) {
            return Err(Error::Usage(format!("letter {s} is not in system {system}")));
        }
        Heap::canonicalize(system, letters).map_err(Error::NotFullyCommutative)
    }

    /// Builds a heap from a word already known to be reduced and fully commutative.
    pub(crate) fn from_fc_word(system: &System, letters: &[Letter]) -> Heap {
        debug_assert!(fc_witness(system, letters).is_none(), "{letters:?} is not FC");
        Heap { word: foata_order(system, letters) }
    }

    pub fn generator(s: Letter) -> Heap {
        Heap { word: vec![s] }
    }

    /// The Cartier–Foata word, a linear extension of the heap.
    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn contains_letter(&self, s: Letter) -> bool {
        self.word.contains(&s)
    }

    pub fn layers(&self, system: &System) -> Vec<Vec<Letter>> {
        let depth = depths(system, &self.word);
        let mut layers: Vec<Vec<Letter>> = Vec::new();
        for (i, &s) in self.word.iter().enumerate() {
            if layers.len() < depth[i] {
                layers.resize(depth[i], Vec::new());
            }
            layers[depth[i] - 1].push(s);
        }
        layers
    }

    /// Classifies the product of this heap with one more letter on the right.
    pub fn append(&self, system: &System, s: Letter) -> Append {
        let w = &self.word;
        let Some(x) = w.iter().rposition(|&c| c == s) else {
            return Append::Extends(self.extended(system, s));
        };
        let between: Vec<usize> = (x + 1..w.len()).filter(|&j| system.adjacent(w[j], s)).collect();
        match between.len() {
            0 => {
                let mut rest = w.clone();
                rest.remove(x);
                Append::QuadraticAt(Heap::from_fc_word(system, &rest))
            }
            1 if !system.infinite_bond(s, w[between[0]]) => {
                let y = between[0];
                // up-set of x; everything in it other than x and y lies above y and commutes with s
                let mut up = vec![false; w.len()];
                up[x] = true;
                for j in x + 1..w.len() {
                    up[j] = (x..j).any(|i| up[i] && (w[i] == w[j] || system.adjacent(w[i], w[j])));
                }
                let prefix: Vec<Letter> =
                    (0..w.len()).filter(|&i| !up[i]).map(|i| w[i]).collect();
                let suffix: Vec<Letter> = (x + 1..w.len())
                    .filter(|&i| up[i] && i != y)
                    .map(|i| w[i])
                    .collect();
                debug_assert!(suffix.iter().all(|&r| system.commute(r, s)));
                Append::BraidSplit {
                    prefix: Heap::from_fc_word(system, &prefix),
                    t: w[y],
                    suffix,
                }
            }
            _ => Append::Extends(self.extended(system, s)),
        }
    }

    fn extended(&self, system: &System, s: Letter) -> Heap {
        let mut w = self.word.clone();
        w.push(s);
        Heap::from_fc_word(system, &w)
    }

    /// Letters `s` with `l(h s) = l(h) - 1`.
    pub fn right_descents(&self, system: &System) -> BTreeSet<Letter> {
        let w = &self.word;
        let mut out = BTreeSet::new();
        for &s in w {
            let x = w.iter().rposition(|&c| c == s).unwrap();
            if !w[x + 1..].iter().any(|&c| system.adjacent(c, s)) {
                out.insert(s);
            }
        }
        out
    }

    /// Letters `s` with `l(s h) = l(h) - 1`.
    pub fn left_descents(&self, system: &System) -> BTreeSet<Letter> {
        let w = &self.word;
        let mut out = BTreeSet::new();
        for &s in w {
            let x = w.iter().position(|&c| c == s).unwrap();
            if !w[..x].iter().any(|&c| system.adjacent(c, s)) {
                out.insert(s);
            }
        }
        out
    }

    /// The heap with its first occurrence of the left descent `s` removed.
    pub fn strip_left(&self, system: &System, s: Letter) -> Option<Heap> {
        if !self.left_descents(system).contains(&s) {
            return None;
        }
        let mut w = self.word.clone();
        let x = w.iter().position(|&c| c == s).unwrap();
        w.remove(x);
        Some(Heap::from_fc_word(system, &w))
    }

    /// The Dynkin rotation `i -> i + d (mod n+1)`.
    pub fn rotate(&self, system: &System, d: i64) -> Result<Heap> {
        system.ensure_affine("the Dynkin rotation")?;
        Ok(Heap::from_fc_word(system, &rotate_word(system, &self.word, d)))
    }

    pub fn reversed(&self, system: &System) -> Heap {
        let mut w = self.word.clone();
        w.reverse();
        Heap::from_fc_word(system, &w)
    }

    pub fn display(&self, system: &System) -> String {
        if self.word.is_empty() {
            "1".to_string()
        } else {
            system.format_word(&self.word)
        }
    }
}

pub fn rotate_letter(system: &System, s: Letter, d: i64) -> Letter {
    let m = system.rank as i64 + 1;
    (s as i64 + d).rem_euclid(m) as Letter
}

pub fn rotate_word(system: &System, word: &[Letter], d: i64) -> Vec<Letter> {
    word.iter().map(|&s| rotate_letter(system, s, d)).collect()
}

/// Result of multiplying a heap by a letter on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Append {
    /// `h s` is again reduced and fully commutative.
    Extends(Heap),
    /// `s` is a right descent; the payload is the heap of `h s`, one shorter.
    QuadraticAt(Heap),
    /// `h s = prefix · s t s · suffix` up to commutation.
    BraidSplit { prefix: Heap, t: Letter, suffix: Vec<Letter> },
}

/// All fully commutative heaps of length at most `max_len`, each once, sorted.
/// `None` enumerates everything and is only allowed for finite systems.
pub fn enumerate_fc(system: &System, max_len: Option<usize>) -> Result<Vec<Heap>> {
    if max_len.is_none() && system.affine && system.rank > 0 {
        return Err(Error::Usage("affine systems are infinite; give a maximum length".into()));
    }
    let letters = system.letters();
    let mut all = vec![Heap::identity()];
    let mut frontier = vec![Heap::identity()];
    let mut len = 0;
    while !frontier.is_empty() && max_len.is_none_or(|m| len < m) {
        let mut next: HashSet<Heap> = HashSet::new();
        for h in &frontier {
            for &s in &letters {
                if let Append::Extends(e) = h.append(system, s) {
                    next.insert(e);
                }
            }
        }
        let mut next: Vec<Heap> = next.into_iter().collect();
        next.sort();
        all.extend(next.iter().cloned());
        frontier = next;
        len += 1;
    }
    all.sort();
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: System = System::finite(2);
    const A3: System = System::finite(3);
    const AT2: System = System::affine(2);

    fn heap(sys: &System, w: &[Letter]) -> Heap {
        Heap::canonicalize(sys, w).unwrap()
    }

    #[test]
    fn commuting_letters_share_a_layer() {
        let h = heap(&A3, &[1, 3, 2]);
        assert_eq!(h.layers(&A3), vec![vec![1, 3], vec![2]]);
        assert_eq!(h, heap(&A3, &[3, 1, 2]));
    }

    #[test]
    fn braid_triple_is_not_fc() {
        assert!(matches!(
            Heap::canonicalize(&A2, &[1, 2, 1]),
            Err(NotFc::Braid { first: 0, middle: 1, second: 2 })
        ));
        assert!(matches!(
            Heap::canonicalize(&A3, &[1, 3, 1]),
            Err(NotFc::Quadratic { .. })
        ));
    }

    #[test]
    fn affine_cycle_word() {
        let h = heap(&AT2, &[2, 1, 0]);
        assert_eq!(h.len(), 3);
        assert_eq!(h.layers(&AT2).len(), 3);
    }

    #[test]
    fn affine_rank_one_is_free_alternation() {
        let sys = System::affine(1);
        assert!(Heap::canonicalize(&sys, &[0, 1, 0, 1, 0]).is_ok());
        assert!(Heap::canonicalize(&sys, &[0, 0]).is_err());
        let h = heap(&sys, &[0, 1]);
        assert!(matches!(h.append(&sys, 0), Append::Extends(_)));
    }

    #[test]
    fn append_examples() {
        assert_eq!(heap(&A2, &[1]).append(&A2, 1), Append::QuadraticAt(Heap::identity()));
        assert_eq!(
            heap(&A2, &[1, 2]).append(&A2, 1),
            Append::BraidSplit { prefix: Heap::identity(), t: 2, suffix: vec![] }
        );
        match heap(&AT2, &[2, 1, 0]).append(&AT2, 2) {
            Append::Extends(h) => assert_eq!(h.len(), 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn braid_split_factorisation_is_consistent() {
        // s3 s1 s2 s3 * s2 in A3: the s2 collides through s3 only
        let h = heap(&A3, &[1, 2, 3]);
        match h.append(&A3, 2) {
            Append::BraidSplit { prefix, t, suffix } => {
                assert_eq!(prefix, heap(&A3, &[1]));
                assert_eq!(t, 3);
                assert!(suffix.is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn descents() {
        assert!(Heap::identity().right_descents(&AT2).is_empty());
        assert_eq!(heap(&AT2, &[2, 1, 0]).right_descents(&AT2), BTreeSet::from([0]));
        assert_eq!(heap(&A3, &[1, 3]).right_descents(&A3), BTreeSet::from([1, 3]));
        assert_eq!(heap(&AT2, &[2, 1, 0]).left_descents(&AT2), BTreeSet::from([2]));
    }

    #[test]
    fn rotation() {
        assert_eq!(heap(&AT2, &[1]).rotate(&AT2, 1).unwrap(), heap(&AT2, &[2]));
        assert_eq!(heap(&AT2, &[0]).rotate(&AT2, 1).unwrap(), heap(&AT2, &[1]));
        let h = heap(&AT2, &[2, 1, 0, 2]);
        assert_eq!(h.rotate(&AT2, 3).unwrap(), h);
        assert!(heap(&A2, &[1]).rotate(&A2, 1).is_err());
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_fc(&A2, None).unwrap().len(), 5);
        assert_eq!(enumerate_fc(&A3, None).unwrap().len(), 14);
        assert_eq!(enumerate_fc(&AT2, Some(1)).unwrap().len(), 4);
        assert!(enumerate_fc(&AT2, None).is_err());
    }

    #[test]
    fn letter_parsing() {
        assert_eq!(AT2.parse_word("s2 s1 a").unwrap(), vec![2, 1, 0]);
        assert!(A2.parse_word("a").is_err());
        assert!(A2.parse_word("s3").is_err());
        assert!(A2.parse_word("s0").is_err());
        assert_eq!(AT2.format_word(&[2, 1, 0]), "s2 s1 a");
    }
}
