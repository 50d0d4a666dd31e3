//! Microbenchmarks for the arithmetic layer: element multiplication,
//! Frobenius application, and the dense linear algebra the decoder and key
//! generation lean on. Fields are picked to match the registry rows (q = 3,
//! m around 50–60) plus a binary field for contrast.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rankpke::linalg::FieldMatrix;
use rankpke::{DetRng, ExtField};

fn element_ops(c: &mut Criterion) {
    let mut group = c.benchmark_group("element");
    for (q, m) in [(2u8, 24usize), (3, 57)] {
        let field = ExtField::new(q, m).unwrap();
        let mut rng = DetRng::from_u64_seed(0xBE_0001);
        let a = field.random(&mut rng);
        let b = field.random(&mut rng);

        group.bench_function(format!("mul/q{q}m{m}"), |bench| {
            bench.iter(|| std::hint::black_box(&a) * std::hint::black_box(&b))
        });
        group.bench_function(format!("mul_acc/q{q}m{m}"), |bench| {
            let mut acc = field.zero();
            bench.iter(|| acc.mul_acc(std::hint::black_box(&a), std::hint::black_box(&b)))
        });
        group.bench_function(format!("inverse/q{q}m{m}"), |bench| {
            bench.iter(|| std::hint::black_box(&a).inv().unwrap())
        });
        group.bench_function(format!("frobenius/q{q}m{m}"), |bench| {
            bench.iter(|| std::hint::black_box(&a).frobenius(1))
        });
    }
    group.finish();
}

fn matrix_ops(c: &mut Criterion) {
    let field = ExtField::new(3, 57).unwrap();
    let mut rng = DetRng::from_u64_seed(0xBE_0002);
    let n = 35;
    let mat = loop {
        let m = FieldMatrix::random(&field, n, n, &mut rng);
        if m.rank() == n {
            break m;
        }
    };

    let mut group = c.benchmark_group("matrix");
    group.sample_size(10);
    group.bench_function(format!("rref/{n}x{n}_q3m57"), |bench| {
        bench.iter_batched(|| mat.clone(), |m| m.rref(), BatchSize::SmallInput)
    });
    group.bench_function(format!("inverse/{n}x{n}_q3m57"), |bench| {
        bench.iter_batched(|| mat.clone(), |m| m.inverse().unwrap(), BatchSize::SmallInput)
    });
    group.finish();
}

criterion_group!(benches, element_ops, matrix_ops);
criterion_main!(benches);
