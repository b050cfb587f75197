mod common;

use cliffpar_core::field::{artin_schreier_solve, artin_schreier_solve_rational};
use cliffpar_core::{F2Poly, F2RatFun, FieldConfig, FieldElem, Rational};
use common::{cases, elem, nonzero_elem, poly_from_mask};
use proptest::prelude::*;

fn fields() -> [FieldConfig; 3] {
    [
        FieldConfig::rationals(),
        FieldConfig::quadratic(3).unwrap(),
        FieldConfig::f2tu(),
    ]
}

fn field_index() -> impl Strategy<Value = FieldConfig> {
    (0usize..3).prop_map(|i| fields()[i])
}

fn triple() -> impl Strategy<Value = (FieldElem, FieldElem, FieldElem)> {
    field_index().prop_flat_map(|f| (elem(f), elem(f), elem(f)))
}

fn ratfun() -> impl Strategy<Value = F2RatFun> {
    (0u16..1024, 1u16..1024)
        .prop_map(|(n, d)| F2RatFun::new(poly_from_mask(n), poly_from_mask(d)).unwrap())
}

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn ring_axioms((x, y, z) in triple()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&(&x - &y) + &y) == x);
        prop_assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    fn nonzero_elements_invert(x in field_index().prop_flat_map(nonzero_elem)) {
        let inv = x.inv().unwrap();
        prop_assert!((&x * &inv).is_one());
        prop_assert_eq!(inv.inv().unwrap(), x);
    }

    #[test]
    fn squares_are_recognised(y in field_index().prop_flat_map(elem)) {
        let x = y.square();
        let root = x.is_square().expect("a square has a root");
        prop_assert_eq!(root.square(), x);
    }

    #[test]
    fn reported_roots_square_back(x in field_index().prop_flat_map(elem)) {
        if let Some(r) = x.is_square() {
            prop_assert_eq!(r.square(), x);
        }
    }

    #[test]
    fn galois_is_an_involutive_homomorphism(
        (x, y) in (0usize..2).prop_map(|i| [FieldConfig::quadratic(3).unwrap(), FieldConfig::f2tu()][i])
            .prop_flat_map(|f| (elem(f), elem(f)))
    ) {
        let g = |v: &FieldElem| v.galois_apply().unwrap();
        prop_assert_eq!(g(&g(&x)), x.clone());
        prop_assert_eq!(g(&(&x * &y)), &g(&x) * &g(&y));
        prop_assert_eq!(g(&(&x + &y)), &g(&x) + &g(&y));
    }

    #[test]
    fn leading_pairs_add_under_multiplication(a in 1u16..1024, b in 1u16..1024) {
        let (p, q) = (poly_from_mask(a), poly_from_mask(b));
        let (pa, pb) = p.t_leading_pair().unwrap();
        let (qa, qb) = q.t_leading_pair().unwrap();
        prop_assert_eq!(p.mul(&q).t_leading_pair().unwrap(), (pa + qa, pb + qb));
        let (pa, pb) = p.u_leading_pair().unwrap();
        let (qa, qb) = q.u_leading_pair().unwrap();
        prop_assert_eq!(p.mul(&q).u_leading_pair().unwrap(), (pa + qa, pb + qb));
    }

    #[test]
    fn frobenius_coordinates_recombine(f in ratfun()) {
        let [s0, s1, s2, s3] = f.frobenius_coordinates();
        let t = F2RatFun::from_poly(F2Poly::t());
        let u = F2RatFun::from_poly(F2Poly::u());
        let tu = t.mul(&u);
        let sum = s0.square()
            .add(&s1.square().mul(&t))
            .add(&s2.square().mul(&u))
            .add(&s3.square().mul(&tu));
        prop_assert_eq!(sum, f);
    }

    #[test]
    fn artin_schreier_matches_exhaustive_search(mask in 0u16..1024) {
        // deg(d^2 + d) = 2 deg(d), so roots of a degree-3 target have degree at most 1;
        // searching degree 2 leaves margin.
        let p = poly_from_mask(mask);
        let brute = F2Poly::all_up_to_degree(2).into_iter().find(|d| d.square().add(d) == p);
        match artin_schreier_solve(&p) {
            Some(d) => prop_assert_eq!(d.square().add(&d), p),
            None => prop_assert!(brute.is_none(), "missed root {:?}", brute),
        }
    }

    #[test]
    fn artin_schreier_rational_solutions_check(f in ratfun(), d in ratfun()) {
        if let Some(r) = artin_schreier_solve_rational(&f) {
            prop_assert_eq!(r.square().add(&r), f);
        }
        // Every d^2 + d is solvable.
        let target = d.square().add(&d);
        let r = artin_schreier_solve_rational(&target).expect("constructed target");
        prop_assert_eq!(r.square().add(&r), target);
    }
}

#[test]
fn quadratic_non_squares_survive_bounded_search() {
    let field = FieldConfig::quadratic(3).unwrap();
    let q = |a: i64, b: i64| {
        field
            .quad(
                Rational::from_integer(a.into()),
                Rational::from_integer(b.into()),
            )
            .unwrap()
    };
    let mut squares = Vec::new();
    for a in -30..=30 {
        for b in -30..=30 {
            squares.push(q(a, b).square());
        }
    }
    for a in -12..=12 {
        for b in -12..=12 {
            let x = q(a, b);
            let hit = squares.contains(&x);
            match x.is_square() {
                Some(r) => assert_eq!(r.square(), x),
                None => assert!(!hit, "{x} has an integral root"),
            }
        }
    }
    assert!(q(13, 0).is_square().is_none());
    assert!(q(5, 2).is_square().is_none());
}

#[test]
fn f2_non_squares_survive_exhaustive_search() {
    let roots = F2Poly::all_up_to_degree(2);
    for p in F2Poly::all_up_to_degree(3) {
        let x = FieldElem::from(p.clone());
        let hit = roots.iter().any(|r| r.square() == p);
        assert_eq!(x.is_square().is_some(), hit, "{p}");
    }
}

proptest! {
    #![proptest_config(cases(150))]

    #[test]
    fn gcd_is_the_greatest_common_divisor(a in 1u16..1024, b in 1u16..1024, c in 1u16..1024) {
        let c = poly_from_mask(c);
        let (a, b) = (poly_from_mask(a).mul(&c), poly_from_mask(b).mul(&c));
        let g = a.gcd(&b);
        prop_assert!(a.div_exact(&g).is_some());
        prop_assert!(b.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&c).is_some());
        // Every common divisor of degree at most 2 divides the gcd.
        for d in F2Poly::all_up_to_degree(2).iter().filter(|d| !d.is_zero()) {
            if a.div_exact(d).is_some() && b.div_exact(d).is_some() {
                prop_assert!(g.div_exact(d).is_some(), "{} misses {}", g, d);
            }
        }
    }

    #[test]
    fn fractions_are_stored_in_lowest_terms(f in ratfun(), g in ratfun()) {
        for h in [f.add(&g), f.mul(&g)] {
            prop_assert!(h.numerator().gcd(h.denominator()).is_one());
        }
    }
}
