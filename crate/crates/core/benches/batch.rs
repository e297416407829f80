use closurelab::algebra::{Field, Polynomial, RingDescriptor};
use closurelab::ideal_closure::newton_closure_monomials;
use closurelab::par;
use closurelab::props::{random_monomial_ideal, trial_rng};
use closurelab::search::{certify_ideal_member, SearchOptions};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

/// Certifies every closure generator of one random monomial ideal.
fn certify_batch(seed: u64, t: usize) -> usize {
    let ring = RingDescriptor::poly(Field::Rational, &["x", "y"]).unwrap();
    let mut rng = trial_rng(seed, t);
    let gens = random_monomial_ideal(&mut rng, 2, 4, 6);
    let gp: Vec<Polynomial> = gens.iter().map(|m| Polynomial::monomial(ring.field(), m.clone())).collect();
    newton_closure_monomials(&gens, 2)
        .into_iter()
        .filter(|g| {
            let z = Polynomial::monomial(ring.field(), g.clone());
            certify_ideal_member(&z, &gp, &ring, SearchOptions::with_max_degree(6)).unwrap().is_some()
        })
        .count()
}

fn bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("certify_batch");
    group.sample_size(10);
    for n in [16usize, 64] {
        let idx: Vec<usize> = (0..n).collect();
        group.bench_with_input(BenchmarkId::new("sequential", n), &idx, |b, idx| {
            b.iter(|| par::run_sequential(idx, |&t| certify_batch(7, t)))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", n), &idx, |b, idx| {
            b.iter(|| par::run_parallel(idx, |&t| certify_batch(7, t)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
