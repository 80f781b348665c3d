//! Compares the rayon-backed kernels against the sequential fallback on the
//! library's two hot paths: Gram assembly and an admissibility quadrature
//! sweep. Run with `cargo bench` (the `parallel` feature is on by default;
//! the sequential numbers below come from calling the fallback directly).

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use grouprep::coefficients::admissibility_constant;
use grouprep::dependency::gram_matrix;
use grouprep::exec;
use grouprep::functions;
use grouprep::numerics::{Grid, SampledFunction};
use grouprep::representations::{apply, RepresentationTag};
use grouprep::groups::GroupElement;

fn workloads(c: &mut Criterion) {
    let grid = Grid::line(-8.0, 8.0, 4096).unwrap();
    let f = SampledFunction::from_fn(grid.clone(), functions::gaussian());

    let elements: Vec<GroupElement> = (0..12)
        .map(|k| GroupElement::affine(2f64.powi(k % 4 - 2), 0.5 * k as f64).unwrap())
        .collect();
    let translates: Vec<Vec<grouprep::C64>> = elements
        .iter()
        .map(|g| apply(RepresentationTag::affine(), g, &f).unwrap().values().to_vec())
        .collect();
    let vol = grid.cell_volume();

    let mut group = c.benchmark_group("gram-assembly");
    group.bench_with_input(BenchmarkId::new("parallel", translates.len()), &translates, |b, t| {
        b.iter(|| gram_matrix(t, &|_| vol))
    });
    group.bench_with_input(BenchmarkId::new("sequential", translates.len()), &translates, |b, t| {
        // same entries, plain loops
        b.iter(|| {
            let n = t.len();
            exec::sequential::map_indexed(n * n, |idx| {
                let (j, k) = (idx / n, idx % n);
                exec::sequential::sum_indexed(t[j].len(), |i| {
                    (t[j][i] * t[k][i].conj()).re * vol
                })
            })
        })
    });
    group.finish();

    // quadrature sweep over the Fourier side of the admissibility integrand
    let u = SampledFunction::from_fn(grid, functions::odd_gaussian());
    let uhat = grouprep::numerics::fourier_transform(&u).unwrap();
    let n = 1 << 12;
    let integrand = move |i: usize| {
        let xi = 2f64.powf(-12.0 + 16.0 * (i as f64 + 0.5) / n as f64);
        (uhat.eval(&[xi]).norm_sqr() + uhat.eval(&[-xi]).norm_sqr()) / xi
    };
    let mut group = c.benchmark_group("admissibility-sweep");
    group.bench_function("parallel", |b| b.iter(|| exec::sum_indexed(n, &integrand)));
    group.bench_function("sequential", |b| b.iter(|| exec::sequential::sum_indexed(n, &integrand)));
    group.bench_function("full-constant", |b| {
        b.iter(|| admissibility_constant(RepresentationTag::affine(), &u).unwrap())
    });
    group.finish();
}

criterion_group!(benches, workloads);
criterion_main!(benches);
