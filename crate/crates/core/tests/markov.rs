use atl_core::homs::apply_psi;
use atl_core::markov::{is_markov, reduce_trace_to_markov, trace_relation_solver, SolverStatus, TraceSolver};
use atl_core::random::{rng, HeapSampler};
use atl_core::suites::check_normal_forms;
use atl_core::trace::rho;
use atl_core::{enumerate_fc, Basis, Element, System};

fn assert_passes(rep: atl_core::Report) {
    assert!(rep.passed(), "{}: {:?}", rep.title, rep.failures().take(5).collect::<Vec<_>>());
}

#[test]
fn normal_forms_of_rank_three() {
    assert_passes(check_normal_forms(3, 10).unwrap());
}

#[test]
fn normal_forms_of_rank_four() {
    assert_passes(check_normal_forms(4, 10).unwrap());
}

#[test]
fn markov_heaps_realize_themselves() {
    for n1 in [3, 4] {
        let sys = System::affine(n1 - 1);
        for h in enumerate_fc(&sys, Some(7)).unwrap() {
            if let Some(m) = is_markov(&h, n1).unwrap() {
                assert_eq!(m.realize().unwrap(), Element::basis_element(sys, Basis::G, h));
            }
        }
    }
}

#[test]
fn reduction_on_random_elements() {
    let sys = System::affine(2);
    let sampler = HeapSampler::new(sys, 7).unwrap();
    let mut r = rng(77);
    for i in 0..50 {
        let x = sampler.element(&mut r, 4);
        let comb = reduce_trace_to_markov(&x).unwrap();
        assert!(comb.is_reduced(), "sample {i}");
        assert_eq!(comb.evaluate_rho().unwrap(), rho(3, &x).unwrap(), "sample {i}: {x}");
        // no step used ρ, so a rotated input reduces to a combination with the same value
        let y = apply_psi(&x, 1).unwrap();
        assert_eq!(reduce_trace_to_markov(&y).unwrap().evaluate_rho().unwrap(), comb.evaluate_rho().unwrap());
    }
}

#[test]
fn reduction_rejects_higher_rank() {
    let x = Element::generator(System::affine(3), 1).unwrap();
    assert!(reduce_trace_to_markov(&x).is_err());
}

#[test]
fn solver_spans_rank_four_short_words() {
    for len in 2..=3 {
        let rep = trace_relation_solver(4, len).unwrap();
        assert_eq!(rep.status, SolverStatus::Spanned, "length {len}");
    }
}

#[test]
fn solver_expressions_agree_under_rho() {
    let solver = TraceSolver::new(3, 4).unwrap();
    let sys = System::affine(2);
    for h in enumerate_fc(&sys, Some(4)).unwrap() {
        let x = Element::basis_element(sys, Basis::G, h);
        let comb = solver.express(&x).unwrap().expect("spanned");
        assert_eq!(comb.evaluate_rho().unwrap(), rho(3, &x).unwrap(), "{x}");
    }
}
