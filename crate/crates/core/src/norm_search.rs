//! Bounded search for norms from `K = F(w)`, `w^2 + w + 1 = 0`, over
//! `F = F2(t,u)`.
//!
//! `b` is a norm `N(x + y w) = x^2 + xy + y^2` with `x = p1/p2`, `y = p3/p4`
//! exactly when
//!
//! ```text
//!   (p1 p4)^2 + p1 p2 p3 p4 + (p2 p3)^2 + b (p2 p4)^2 = 0.
//! ```
//!
//! Write `X = p1 p4`, `Y = p2 p3`, `Z = p2 p4`. For any monomial order the
//! leading monomial of `X^2 + XY + Y^2` is the square of the larger of the
//! leading monomials of `X` and `Y`: if they differ one square dominates, and
//! if they agree the leading coefficient is `1 + 1 + 1 = 1`. The right side
//! `b Z^2` has leading exponent `LP(b) + 2 LP(Z)`. Hence a solution forces
//! both components of the leading pair of `b` to be even, under the
//! `t`-first and the `u`-first order alike; otherwise there is no solution
//! of any degree. When the parity test passes, the search fixes `p2`, `p4`,
//! `p3` (dropping `p3` whose leading pair already overshoots) and solves for
//! `p1`, which enters additively: `p4^2 p1^2 + (Y p4) p1 = Y^2 + b Z^2`.

use crate::field::{solve_additive, F2Poly};

/// True when a leading pair of `b`, under either lexicographic order, has an
/// odd component; then no solution exists in any degree.
fn parity_obstruction(b: &F2Poly) -> bool {
    let even = |(a, c): (u32, u32)| a % 2 == 0 && c % 2 == 0;
    match (b.t_leading_pair(), b.u_leading_pair()) {
        (Ok(t), Some(u)) => !(even(t) && even(u)),
        _ => false,
    }
}

fn half(p: (u32, u32)) -> (u32, u32) {
    (p.0 / 2, p.1 / 2)
}

fn add_pairs(a: (u32, u32), b: (u32, u32)) -> (u32, u32) {
    (a.0 + b.0, a.1 + b.1)
}

/// Whether `(p1, p2, p3, p4)` solves the norm condition for `b` with
/// `p2, p4` nonzero.
pub fn is_norm_witness(b: &F2Poly, w: &[F2Poly; 4]) -> bool {
    let [p1, p2, p3, p4] = w;
    if p2.is_zero() || p4.is_zero() {
        return false;
    }
    let x = p1.mul(p4);
    let y = p2.mul(p3);
    let z = p2.mul(p4);
    x.square()
        .add(&x.mul(&y))
        .add(&y.square())
        .add(&b.mul(&z.square()))
        .is_zero()
}

/// Searches polynomial 4-tuples of total degree at most `degree_bound`,
/// `p2, p4 != 0`, for a solution of the norm condition above.
pub fn is_norm_of_k_bounded(b: &F2Poly, degree_bound: u32) -> Option<[F2Poly; 4]> {
    if b.is_zero() {
        return Some([F2Poly::zero(), F2Poly::one(), F2Poly::zero(), F2Poly::one()]);
    }
    if parity_obstruction(b) {
        return None;
    }
    search(b, degree_bound)
}

/// The enumeration behind [`is_norm_of_k_bounded`] without the parity test,
/// for auditing that test on small bounds.
pub fn search(b: &F2Poly, degree_bound: u32) -> Option<[F2Poly; 4]> {
    let polys = F2Poly::all_up_to_degree(degree_bound);
    let nonzero = &polys[1..];
    let lp_b = b.t_leading_pair().ok()?;
    for p2 in nonzero {
        let lp2 = p2.t_leading_pair().ok()?;
        for p4 in nonzero {
            let lp4 = p4.t_leading_pair().ok()?;
            let z = p2.mul(p4);
            let bz2 = b.mul(&z.square());
            // max(LP(X), LP(Y)) must equal this.
            let target = half(add_pairs(
                lp_b,
                add_pairs(add_pairs(lp2, lp2), add_pairs(lp4, lp4)),
            ));
            for p3 in &polys {
                if let Ok(lp3) = p3.t_leading_pair() {
                    if add_pairs(lp2, lp3) > target {
                        continue;
                    }
                }
                let y = p2.mul(p3);
                let rhs = y.square().add(&bz2);
                let lin = y.mul(p4);
                if let Some(p1) = solve_additive(&p4.square(), &lin, &rhs, degree_bound) {
                    let w = [p1, p2.clone(), p3.clone(), p4.clone()];
                    debug_assert!(is_norm_witness(b, &w));
                    return Some(w);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pairs: &[(u32, u32)]) -> F2Poly {
        F2Poly::from_exponents(pairs.iter().copied())
    }

    /// Plain enumeration of all 4-tuples, no pruning.
    fn brute_force(b: &F2Poly, bound: u32) -> Option<[F2Poly; 4]> {
        let polys = F2Poly::all_up_to_degree(bound);
        for p1 in &polys {
            for p2 in &polys {
                for p3 in &polys {
                    for p4 in &polys {
                        let w = [p1.clone(), p2.clone(), p3.clone(), p4.clone()];
                        if is_norm_witness(b, &w) {
                            return Some(w);
                        }
                    }
                }
            }
        }
        None
    }

    #[test]
    fn t_plus_u_is_not_a_norm() {
        let b = poly(&[(1, 0), (0, 1)]);
        assert!(is_norm_of_k_bounded(&b, 3).is_none());
        assert!(brute_force(&b, 1).is_none());
    }

    #[test]
    fn t_squared_is_the_norm_of_t() {
        let b = poly(&[(2, 0)]);
        let w = is_norm_of_k_bounded(&b, 1).unwrap();
        assert_eq!(
            w,
            [F2Poly::t(), F2Poly::one(), F2Poly::zero(), F2Poly::one()]
        );
    }

    #[test]
    fn one_is_a_norm_in_degree_zero() {
        let w = is_norm_of_k_bounded(&F2Poly::one(), 0).unwrap();
        assert!(is_norm_witness(&F2Poly::one(), &w));
    }

    #[test]
    fn pruned_search_matches_brute_force() {
        let targets = [
            poly(&[(1, 0), (0, 1)]),
            poly(&[(2, 0)]),
            poly(&[(0, 0)]),
            poly(&[(1, 0)]),
            poly(&[(1, 1)]),
            poly(&[(2, 0), (1, 1), (0, 2)]),
            poly(&[(2, 0), (0, 0)]),
            poly(&[(2, 2), (1, 0)]),
        ];
        for b in &targets {
            for bound in 0..=1 {
                let fast = is_norm_of_k_bounded(b, bound);
                let slow = brute_force(b, bound);
                assert_eq!(fast.is_some(), slow.is_some(), "b = {b}, bound {bound}");
                if let Some(w) = fast {
                    assert!(is_norm_witness(b, &w));
                }
            }
        }
    }

    #[test]
    fn unpruned_search_agrees_with_brute_force_on_odd_targets() {
        for b in [
            poly(&[(1, 0), (0, 1)]),
            poly(&[(1, 0)]),
            poly(&[(1, 1), (0, 0)]),
        ] {
            assert_eq!(
                search(&b, 1).is_some(),
                brute_force(&b, 1).is_some(),
                "b = {b}"
            );
        }
    }

    #[test]
    fn parity_test_only_fires_on_odd_leading_pairs() {
        assert!(parity_obstruction(&poly(&[(1, 0), (0, 1)])));
        assert!(parity_obstruction(&poly(&[(1, 1)])));
        assert!(!parity_obstruction(&poly(&[(2, 0), (0, 2)])));
        // t^2 + u: t-first pair (2,0) is even but u-first pair (0,1) is odd.
        assert!(parity_obstruction(&poly(&[(2, 0), (0, 1)])));
    }
}
