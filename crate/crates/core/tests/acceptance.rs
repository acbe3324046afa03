//! The acceptance criteria, one test each. Every comparison is exact equality over K.

use std::time::Instant;

use atl_core::homs::check_commuting_diagram;
use atl_core::suites;
use atl_core::trace::{check_markov_axioms, check_psi_invariance, check_trace_property};
use atl_core::{Report, Result, System};

const SEED: u64 = 20240601;

fn criterion(id: u32, name: &str, run: impl FnOnce() -> Result<Vec<Report>>) {
    let start = Instant::now();
    let reports = run().unwrap_or_else(|e| panic!("criterion {id} ({name}) raised: {e}"));
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    let failures: Vec<String> = reports
        .iter()
        .flat_map(|r| r.failures().map(move |c| format!("{}: {} {}", r.title, c.name, c.detail)))
        .collect();
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {id:>2} {verdict}  {name} ({checks} checks, {:.1?})", start.elapsed());
    assert!(checks > 0, "criterion {id} ran no checks");
    assert!(failures.is_empty(), "criterion {id} failed:\n{}", failures.join("\n"));
}

#[test]
fn criterion_01_relations() {
    criterion(1, "defining relations of TL-hat_{n+1}, n = 2, 3, 4", || {
        (2..=4).map(|n| suites::check_relations(System::affine(n))).collect()
    });
}

#[test]
fn criterion_02_basis() {
    criterion(2, "FC counts are Catalan numbers, n = 1..5", || Ok(vec![suites::check_basis(5)?]));
}

#[test]
fn criterion_03_oracle() {
    criterion(3, "products agree with the planar diagram model, n <= 4", || {
        (1..=4).map(suites::check_oracle).collect()
    });
}

#[test]
fn criterion_04_jones() {
    // n = 5 adds the identity value and the closure check on all 132 basis elements
    criterion(4, "Jones trace against diagram closure, and τ(1)", || (1..=5).map(suites::check_jones).collect());
}

#[test]
fn criterion_05_markov_axioms() {
    criterion(5, "ρ satisfies the affine Markov axioms, ψ-invariance and the trace property", || {
        Ok(vec![
            check_markov_axioms(2, 100, SEED, 6)?,
            check_markov_axioms(3, 100, SEED, 6)?,
            check_psi_invariance(3, 6)?,
            check_psi_invariance(4, 6)?,
            check_trace_property(3, 100, SEED, 6)?,
            check_trace_property(4, 100, SEED, 6)?,
        ])
    });
}

#[test]
fn criterion_06_commuting_diagram() {
    criterion(6, "E∘F = incl∘E and E∘incl = id, n = 2, 3, 4", || {
        (2..=4).map(|n| check_commuting_diagram(n, 50, SEED, 6)).collect()
    });
}

#[test]
fn criterion_07_lemmas() {
    criterion(7, "C^k decompositions reassemble, n = 2, 3, k = 1..4", || Ok(vec![suites::check_lemmas(4)?]));
}

#[test]
fn criterion_08_corollary() {
    criterion(8, "g X^h g expansions reassemble and agree under ρ_3, h = 1..4", || {
        Ok(vec![suites::check_corollary(4)?])
    });
}

#[test]
fn criterion_09_reduction() {
    criterion(9, "ρ_3 reduces to Markov elements on heaps of length <= 8 and C^k, k <= 4", || {
        Ok(vec![suites::check_reduction(8, 4)?])
    });
}

#[test]
fn criterion_10_solver() {
    criterion(10, "Markov classes span the trace quotient, n1 = 3, length 6", || {
        Ok(vec![suites::check_solver(3, 6)?])
    });
}
