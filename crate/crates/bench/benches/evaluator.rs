use criterion::{black_box, criterion_group, criterion_main, Criterion};

use polyzeta::algebra::{stuffle, KyIndex};
use polyzeta::eval::Evaluator;
use polyzeta::finite::{eval_formal_sum, mhs_eval};
use polyzeta::identities::ky::ky_example_closed_form;
use polyzeta::identities::verify::run_suite;
use polyzeta::rational::int;
use polyzeta::{ix, Sign};

fn exact(c: &mut Criterion) {
    let (u, v) = (ix(&[2, -1, 1]), ix(&[-3, 2]));
    c.bench_function("stuffle depth 3 x 2", |b| b.iter(|| stuffle(black_box(&u), black_box(&v))));
    let fs = stuffle(&u, &v);
    c.bench_function("stuffle sum at n = 60", |b| b.iter(|| eval_formal_sum(black_box(60), &fs)));
    c.bench_function("harmonic sum (2,1) at n = 300", |b| b.iter(|| mhs_eval(black_box(300), &ix(&[2, 1]))));
}

fn numeric(c: &mut Criterion) {
    for prec in [128, 256] {
        c.bench_function(&format!("zeta(2,1,1) at {prec} bits"), |b| {
            b.iter(|| Evaluator::with_prec(prec).mzv(black_box(&ix(&[2, 1, 1]))).unwrap())
        });
        c.bench_function(&format!("zeta(-1,-1,1) at {prec} bits"), |b| {
            b.iter(|| Evaluator::with_prec(prec).mzv(black_box(&ix(&[-1, -1, 1]))).unwrap())
        });
    }
    let ky = KyIndex { k: ix(&[3, 2]), l_head: 0, l_head_sign: Sign::Plus, l_tail: ix(&[2, 2]) };
    c.bench_function("KY (3,2),(0,2,2)", |b| b.iter(|| Evaluator::with_prec(128).ky(&ky, &int(1)).unwrap()));
    c.bench_function("closed form of the KY example", |b| {
        b.iter(|| Evaluator::with_prec(128).expr(&ky_example_closed_form()).unwrap())
    });
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("suites");
    g.sample_size(10);
    for name in ["exact-algebra", "bbb", "ky"] {
        g.bench_function(name, |b| b.iter(|| run_suite(name, &Evaluator::with_prec(128), None).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, exact, numeric, suites);
criterion_main!(benches);
