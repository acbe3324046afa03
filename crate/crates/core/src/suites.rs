//! Verification suites shared by the command line and the acceptance tests.

use crate::algebra::{Basis, Element};
use crate::diagram::{map_to_diagrams, oracle_trace_vec};
use crate::error::Result;
use crate::report::Report;
use crate::ring::RingElem;
use crate::homs::coxeter_power;
use crate::markov::{
    classify_affine, corollary_516_expand, lemma_513_decompose, lemma_515_decompose, reduce_trace_to_markov,
    trace_relation_solver, SolverStatus, Side,
};
use crate::trace::{jones_tau, rho};
use crate::words::{enumerate_fc, System};

/// `V(x, y) = xyx + xy + yx + x + y + 1`.
pub fn v_relation(x: &Element, y: &Element) -> Result<Element> {
    let xy = x.mul(y)?;
    let yx = y.mul(x)?;
    let one = Element::one(x.system());
    [xy.mul(x)?, yx, x.clone(), y.clone(), one].iter().try_fold(xy, |acc, t| acc.plus(t))
}

/// The defining relations of `TL-hat_{n+1}` (system `affine(n)`), each as an element that
/// must vanish: quadratic, commutation, braid and `V` on every bonded pair.
pub fn check_relations(system: System) -> Result<Report> {
    let mut report = Report::new(format!("defining relations of {system}"));
    let q = RingElem::q();
    let letters = system.letters();
    let name = |s| system.letter_name(s);
    for &s in &letters {
        let g = Element::generator(system, s)?;
        let rhs = g.scale(&q.sub(&RingElem::one())).plus(&Element::scalar(system, q.clone()))?;
        report.expect_zero(format!("quadratic {}", name(s)), &g.mul(&g)?.minus(&rhs)?);
        let inv = Element::generator_inverse(system, s)?;
        report.expect_zero(format!("inverse {}", name(s)), &g.mul(&inv)?.minus(&Element::one(system))?);
    }
    for (i, &s) in letters.iter().enumerate() {
        for &t in &letters[i + 1..] {
            let (gs, gt) = (Element::generator(system, s)?, Element::generator(system, t)?);
            let label = format!("{} {}", name(s), name(t));
            if system.commute(s, t) {
                report.expect_zero(format!("commute {label}"), &gs.mul(&gt)?.minus(&gt.mul(&gs)?)?);
            } else if !system.infinite_bond(s, t) {
                let sts = gs.mul(&gt)?.mul(&gs)?;
                let tst = gt.mul(&gs)?.mul(&gt)?;
                report.expect_zero(format!("braid {label}"), &sts.minus(&tst)?);
                report.expect_zero(format!("V({label})"), &v_relation(&gs, &gt)?);
                report.expect_zero(format!("V({} {})", name(t), name(s)), &v_relation(&gt, &gs)?);
            }
        }
    }
    Ok(report)
}

fn catalan(m: usize) -> usize {
    (0..m).fold(1u128, |c, i| c * 2 * (2 * i as u128 + 1) / (i as u128 + 2)) as usize
}

/// `|FC(A_n)| = Catalan(n + 1)` for `n = 1..=n_max`.
pub fn check_basis(n_max: usize) -> Result<Report> {
    let mut report = Report::new("FC counts of type A");
    for n in 1..=n_max {
        let count = enumerate_fc(&System::finite(n), None)?.len();
        report.expect_eq(format!("A_{n}"), &count, &catalan(n + 1));
    }
    Ok(report)
}

fn f_basis(system: System) -> Result<Vec<(String, Element)>> {
    Ok(enumerate_fc(&system, None)?
        .into_iter()
        .map(|h| (h.display(&system), Element::basis_element(system, Basis::F, h)))
        .collect())
}

/// Every product `f_u f_w` in `TL_n` against the stacked planar diagrams.
pub fn check_oracle(n: usize) -> Result<Report> {
    let system = System::finite(n);
    let mut report = Report::new(format!("diagram oracle, TL_{n}"));
    let basis = f_basis(system)?;
    let images: Vec<_> = basis.iter().map(|(_, x)| map_to_diagrams(x)).collect::<Result<_>>()?;
    for (i, (nu, u)) in basis.iter().enumerate() {
        for (j, (nw, w)) in basis.iter().enumerate() {
            let engine = map_to_diagrams(&u.mul(w)?)?;
            let oracle = images[i].multiply(&images[j])?;
            report.record(format!("{nu} * {nw}"), engine == oracle, "");
        }
    }
    Ok(report)
}

/// `τ_{n+1}` against closure of diagrams on every basis element, and `τ_{n+1}(1) = z^n`.
pub fn check_jones(n: usize) -> Result<Report> {
    let system = System::finite(n);
    let mut report = Report::new(format!("Jones trace, TL_{n}"));
    for (name, x) in f_basis(system)? {
        report.expect_eq(name, &jones_tau(&x)?, &oracle_trace_vec(&map_to_diagrams(&x)?));
    }
    let expected = RingElem::one().add(&RingElem::q()).div(&RingElem::v())?.neg().pow(n as i32)?;
    report.expect_eq("τ(1)", &jones_tau(&Element::one(system))?, &expected);
    Ok(report)
}

fn outcome<T>(report: &mut Report, name: String, r: Result<T>) -> Option<T> {
    match r {
        Ok(v) => {
            report.record(name, true, "");
            Some(v)
        }
        Err(e) => {
            report.record(name, false, e.to_string());
            None
        }
    }
}

/// The decomposition lemmas for `n ∈ {2, 3}` and `k = 1..=k_max`.
pub fn check_lemmas(k_max: u32) -> Result<Report> {
    let mut report = Report::new("decomposition lemmas");
    for n in [2, 3] {
        for k in 1..=k_max {
            for side in [Side::Left, Side::Right] {
                let rec = lemma_513_decompose(n, k, side);
                let name = format!("C^k expansion, {side:?}, n = {n}, k = {k}");
                outcome(&mut report, name, rec.and_then(|r| r.verify()));
            }
            // the decomposition verifies its own sum and its unique top term
            outcome(&mut report, format!("C^k split by type, n = {n}, k = {k}"), lemma_515_decompose(n, k));
        }
    }
    Ok(report)
}

/// `g X^h g` expanded for `h = 1..=h_max` and checked under `ρ_3`.
pub fn check_corollary(h_max: u32) -> Result<Report> {
    let mut report = Report::new("expansion of g X^h g");
    for h in 1..=h_max {
        let Some(c) = outcome(&mut report, format!("g X^h g expansion, h = {h}"), corollary_516_expand(3, h)) else {
            continue;
        };
        let direct = crate::markov::lemmas::corollary_516_lhs(h)?;
        report.expect_eq(format!("ρ_3 of the expansion, h = {h}"), &c.evaluate_rho()?, &rho(3, &direct)?);
    }
    Ok(report)
}

/// Normal forms of every FC heap of `TL-hat_{n1}` up to `max_len`, re-expanded exactly.
pub fn check_normal_forms(n1: usize, max_len: usize) -> Result<Report> {
    let sys = System::affine(n1 - 1);
    let mut report = Report::new(format!("normal forms in TL-hat_{n1}"));
    for h in enumerate_fc(&sys, Some(max_len))? {
        let name = h.display(&sys);
        let Some(nf) = outcome(&mut report, format!("classify {name}"), classify_affine(&h, n1)) else {
            continue;
        };
        report.expect_eq(format!("re-expand {name}"), &nf.realize()?, &Element::basis_element(sys, Basis::G, h));
    }
    Ok(report)
}

fn check_reduction_of(report: &mut Report, name: String, x: &Element) -> Result<()> {
    let Some(comb) = outcome(report, format!("reduce {name}"), reduce_trace_to_markov(x)) else {
        return Ok(());
    };
    report.record(format!("empty residual for {name}"), comb.is_reduced(), "");
    report.expect_eq(format!("ρ_3 of {name}"), &comb.evaluate_rho()?, &rho(3, x)?);
    Ok(())
}

/// Reduction of `ρ_3` to Markov elements on every heap up to `max_len` and on `C^k`.
pub fn check_reduction(max_len: usize, k_max: u32) -> Result<Report> {
    let sys = System::affine(2);
    let mut report = Report::new("trace reduction in TL-hat_3");
    for h in enumerate_fc(&sys, Some(max_len))? {
        let name = h.display(&sys);
        check_reduction_of(&mut report, name, &Element::basis_element(sys, Basis::G, h))?;
    }
    for k in 1..=k_max {
        check_reduction_of(&mut report, format!("C^{k}"), &coxeter_power(2, k as i64)?)?;
    }
    Ok(report)
}

pub fn check_solver(n1: usize, max_len: usize) -> Result<Report> {
    let rep = trace_relation_solver(n1, max_len)?;
    let mut report = Report::new(format!("trace relation solver, n1 = {n1}, length {max_len}"));
    let detail = format!(
        "ambient {}, relations {}, combined {}, unspanned {}",
        rep.ambient_dim, rep.relation_rank, rep.combined_rank, rep.unspanned.len()
    );
    report.record("Markov classes span", rep.status == SolverStatus::Spanned, detail);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for rep in [
            check_relations(System::affine(1)).unwrap(),
            check_relations(System::affine(2)).unwrap(),
            check_relations(System::finite(3)).unwrap(),
            check_basis(4).unwrap(),
            check_oracle(2).unwrap(),
            check_jones(3).unwrap(),
        ] {
            assert!(rep.passed(), "{}: {:?}", rep.title, rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn catalan_numbers() {
        assert_eq!((1..=6).map(catalan).collect::<Vec<_>>(), vec![1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn markov_suites_small() {
        for rep in [
            check_lemmas(2).unwrap(),
            check_corollary(2).unwrap(),
            check_normal_forms(3, 5).unwrap(),
            check_reduction(4, 2).unwrap(),
            check_solver(3, 3).unwrap(),
        ] {
            assert!(rep.passed(), "{}: {:?}", rep.title, rep.failures().collect::<Vec<_>>());
        }
    }
}
