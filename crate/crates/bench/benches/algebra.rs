use std::hint::black_box;

use cliffpar_core::norm_search::search;
use cliffpar_core::parse::{parse_line, parse_map, parse_quaternion};
use cliffpar_core::semilinear::galois_outer;
use cliffpar_core::{
    classify, CliffordLikeParallelism, DefiningSet, F2Poly, FieldConfig, FieldElem,
    QuaternionAlgebra,
};
use criterion::{criterion_group, criterion_main, Criterion};

fn root3() -> QuaternionAlgebra {
    QuaternionAlgebra::ordinary_default(FieldConfig::quadratic(3).unwrap()).unwrap()
}

fn c2() -> QuaternionAlgebra {
    QuaternionAlgebra::cyclic_char2(FieldElem::from(F2Poly::t().add(&F2Poly::u()))).unwrap()
}

fn arithmetic(c: &mut Criterion) {
    for (name, alg, x, y) in [
        ("root3", root3(), "(1+s)+2*i-(1/3)*j+s*k", "3-i+(2-s)*j+k"),
        ("c2", c2(), "1+(t/u)*i+u*j+(t+1)*k", "u+i+(1/(t+u))*j+t*k"),
    ] {
        let x = parse_quaternion(&alg, x).unwrap();
        let y = parse_quaternion(&alg, y).unwrap();
        c.bench_function(&format!("{name}/mul"), |b| {
            b.iter(|| alg.mul(black_box(&x), black_box(&y)))
        });
        c.bench_function(&format!("{name}/norm"), |b| {
            b.iter(|| alg.try_norm(black_box(&x)))
        });
        c.bench_function(&format!("{name}/inverse"), |b| {
            b.iter(|| alg.inverse(black_box(&x)))
        });
    }
}

fn geometry(c: &mut Criterion) {
    let alg = c2();
    let l = parse_line(&alg, "span(1; i+u*j)").unwrap();
    let p = CliffordLikeParallelism::new(alg.clone(), DefiningSet::from_reps(vec![l])).unwrap();
    let m1 = parse_line(&alg, "span(1+t*j; i+k)").unwrap();
    let m2 = parse_line(&alg, "span(u+j; t*i+k)").unwrap();
    c.bench_function("c2/anchor", |b| b.iter(|| alg.left_anchor(black_box(&m1))));
    c.bench_function("c2/clifford_like_parallel", |b| {
        b.iter(|| p.are_parallel(black_box(&m1), black_box(&m2)))
    });
}

fn maps(c: &mut Criterion) {
    let alg = c2();
    let beta = parse_map(&alg, "inner(i+t*k)").unwrap();
    let galois = galois_outer(&alg).unwrap();
    c.bench_function("c2/classify_inner", |b| {
        b.iter(|| classify(&alg, black_box(&beta)))
    });
    c.bench_function("c2/classify_galois", |b| {
        b.iter(|| classify(&alg, black_box(&galois)))
    });
}

fn norm_search(c: &mut Criterion) {
    let b = F2Poly::t().add(&F2Poly::u());
    let mut group = c.benchmark_group("norm_search");
    group.sample_size(10);
    group.bench_function("t+u/degree_1", |bn| bn.iter(|| search(black_box(&b), 1)));
    group.bench_function("t+u/degree_2", |bn| bn.iter(|| search(black_box(&b), 2)));
    group.finish();
}

criterion_group!(benches, arithmetic, geometry, maps, norm_search);
criterion_main!(benches);
