use std::time::Duration;

use atl_bench::{element_pairs, heaps_of_length};
use atl_core::algebra::set_product_cache;
use atl_core::homs::coxeter_power;
use atl_core::markov::{classify_affine, reduce_trace_to_markov, trace_relation_solver};
use atl_core::trace::{jones_tau, rho};
use atl_core::{enumerate_fc, Basis, Element, System};
use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};

fn multiplication(c: &mut Criterion) {
    let mut group = c.benchmark_group("multiply");
    for (name, sys) in [("TL_4", System::finite(4)), ("TL-hat_3", System::affine(2)), ("TL-hat_4", System::affine(3))] {
        let pairs = element_pairs(sys, 6, 4, 16, 5);
        for cached in [true, false] {
            set_product_cache(cached);
            let label = format!("{name}/{}", if cached { "cached" } else { "uncached" });
            group.bench_function(label, |b| {
                b.iter(|| pairs.iter().map(|(x, y)| x.mul(y).unwrap().num_terms()).sum::<usize>())
            });
        }
    }
    set_product_cache(true);
    group.finish();
}

fn basis_change(c: &mut Criterion) {
    let sys = System::affine(2);
    let xs: Vec<Element> = element_pairs(sys, 7, 3, 8, 11).into_iter().map(|p| p.0).collect();
    c.bench_function("to f basis, TL-hat_3", |b| {
        b.iter(|| xs.iter().map(|x| x.to_basis(Basis::F).unwrap().num_terms()).sum::<usize>())
    });
}

fn traces(c: &mut Criterion) {
    let fin = System::finite(4);
    let basis: Vec<Element> =
        enumerate_fc(&fin, None).unwrap().into_iter().map(|h| Element::basis_element(fin, Basis::G, h)).collect();
    c.bench_function("tau on TL_4 basis", |b| b.iter(|| basis.iter().map(|x| jones_tau(x).unwrap()).collect::<Vec<_>>()));
    let aff = System::affine(2);
    let heaps = heaps_of_length(aff, 6);
    c.bench_function("rho_3 on length-6 heaps", |b| {
        b.iter(|| {
            heaps.iter().map(|h| rho(3, &Element::basis_element(aff, Basis::G, h.clone())).unwrap()).collect::<Vec<_>>()
        })
    });
}

fn markov(c: &mut Criterion) {
    let aff = System::affine(2);
    let heaps = heaps_of_length(aff, 6);
    c.bench_function("classify length-6 heaps of TL-hat_3", |b| {
        b.iter(|| heaps.iter().map(|h| classify_affine(h, 3).unwrap()).collect::<Vec<_>>())
    });
    let c3 = coxeter_power(2, 3).unwrap();
    c.bench_function("reduce C^3 to Markov elements", |b| {
        b.iter_batched(|| c3.clone(), |x| reduce_trace_to_markov(&x).unwrap(), BatchSize::SmallInput)
    });
    c.bench_function("trace relation solver, n1 = 3, length 4", |b| {
        b.iter(|| trace_relation_solver(black_box(3), black_box(4)).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10).measurement_time(Duration::from_secs(3));
    targets = multiplication, basis_change, traces, markov
}
criterion_main!(benches);
