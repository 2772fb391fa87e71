//! Benchmark: convergence sweeps over a batch of terms, sequential vs.
//! data-parallel.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use ndlam::convergence::{may_converges, must_converges, Budget};
use ndlam::encodings::{
    ctx_xnor_twice, ctx_xor_twice, chooser_once, chooser_per_call, numeral_term, or_term,
};
use ndlam::syntax::{plug, Term};

fn workload() -> Vec<Term> {
    let mut terms = Vec::new();
    // Deep or-chains: wide choice fanout, shallow depth.
    for width in 1..=6u64 {
        let mut e = numeral_term(0);
        for k in 1..=width {
            e = or_term(e, numeral_term(k));
        }
        terms.push(e);
    }
    // The doubled-call frames around each chooser: deeper, cyclic for
    // one of the four combinations.
    for ctx in [ctx_xor_twice(), ctx_xnor_twice()] {
        terms.push(plug(&ctx, &Term::Val(chooser_per_call())));
        terms.push(plug(&ctx, &chooser_once()));
    }
    terms
}

fn sweep_sequential(terms: &[Term], budget: &Budget) -> usize {
    terms
        .iter()
        .map(|e| {
            let may = may_converges(e, budget);
            let must = must_converges(e, budget);
            usize::from(may.converges()) + usize::from(must.holds_exactly())
        })
        .sum()
}

#[cfg(feature = "parallel")]
fn sweep_parallel(terms: &[Term], budget: &Budget) -> usize {
    use rayon::prelude::*;
    terms
        .par_iter()
        .map(|e| {
            let may = may_converges(e, budget);
            let must = must_converges(e, budget);
            usize::from(may.converges()) + usize::from(must.holds_exactly())
        })
        .sum()
}

fn bench_sweeps(c: &mut Criterion) {
    let terms = workload();
    let budget = Budget::default().with_fuel(300).with_choice_bound(4);

    let mut group = c.benchmark_group("verdict-sweep");
    group.bench_function("sequential", |b| {
        b.iter_batched(
            || terms.clone(),
            |ts| sweep_sequential(&ts, &budget),
            BatchSize::SmallInput,
        )
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter_batched(
            || terms.clone(),
            |ts| sweep_parallel(&ts, &budget),
            BatchSize::SmallInput,
        )
    });
    group.finish();
}

criterion_group!(benches, bench_sweeps);
criterion_main!(benches);
