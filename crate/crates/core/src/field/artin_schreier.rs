//! Solving `d^2 + d = f` in characteristic 2.
//!
//! Over `F2` the map `d -> d^2 + d` is additive, and so is `e -> e^2 + q*e`
//! for a fixed polynomial `q`. Both equations therefore become linear systems
//! over `F2` in the unknown coefficients of the solution once its degree is
//! bounded.
//!
//! Polynomial targets: if `d^2 + d = p` then `deg d = deg p / 2`, so
//! monomials of total degree at most `ceil(deg p / 2)` suffice. A solution in
//! `F2(t,u)` of `d^2 + d = p` is automatically a polynomial: in lowest terms
//! `d = d1/d2` gives `d1^2 + d1*d2 = p*d2^2`, so `d2` divides `d1^2` and is a
//! unit.
//!
//! Rational targets `f = n/q`: writing `d = e/q` turns the equation into
//! `e^2 + q*e = n*q`. If `f` lies in the image at all, the lowest-terms
//! denominator of the solution squared divides `q`, which makes `e` a
//! polynomial. For `deg e > deg q` the top homogeneous part of `e^2` cannot
//! cancel, hence `deg e <= max(deg q, deg(n*q) / 2)` and the search is
//! complete.

use super::f2poly::{pack, F2Poly};
use super::f2ratfun::F2RatFun;

/// Dense bit rows over `F2`.
#[derive(Clone)]
struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
        }
    }
    fn get(&self, idx: usize) -> bool {
        self.words[idx / 64] >> (idx % 64) & 1 == 1
    }
    fn flip(&mut self, idx: usize) {
        self.words[idx / 64] ^= 1 << (idx % 64);
    }
    fn xor_assign(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }
}

/// Finds `x` with `sum_k x_k * columns[k] = target` over `F2`, where vectors
/// are sets of packed monomials.
fn solve_gf2(columns: &[Vec<u64>], target: &[u64]) -> Option<Vec<bool>> {
    let mut row_index = std::collections::HashMap::new();
    for &m in columns.iter().flatten() {
        let next = row_index.len();
        row_index.entry(m).or_insert(next);
    }
    for m in target {
        if !row_index.contains_key(m) {
            return None;
        }
    }
    let ncols = columns.len();
    // Augmented rows: columns 0..ncols are unknowns, column ncols is the target.
    let mut rows = vec![BitRow::zeros(ncols + 1); row_index.len()];
    for (c, col) in columns.iter().enumerate() {
        for m in col {
            rows[row_index[m]].flip(c);
        }
    }
    for m in target {
        rows[row_index[m]].flip(ncols);
    }

    let mut pivots = Vec::new();
    let mut next_row = 0;
    for c in 0..ncols {
        let Some(found) = (next_row..rows.len()).find(|&r| rows[r].get(c)) else {
            continue;
        };
        rows.swap(next_row, found);
        let pivot = rows[next_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next_row && row.get(c) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push(c);
        next_row += 1;
    }
    if rows[next_row..].iter().any(|row| row.get(ncols)) {
        return None;
    }
    let mut x = vec![false; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r].get(ncols);
    }
    Some(x)
}

/// Solves `e^2 + q*e = r` for a polynomial `e` whose monomials have total
/// degree at most `bound`.
fn solve_twisted(q: &F2Poly, r: &F2Poly, bound: u32) -> Option<F2Poly> {
    solve_additive(&F2Poly::one(), q, r, bound)
}

/// Solves `a*e^2 + q*e = r` for a polynomial `e` of total degree at most
/// `bound`. The left side is additive in `e`, so this is linear over `F2`.
pub(crate) fn solve_additive(a: &F2Poly, q: &F2Poly, r: &F2Poly, bound: u32) -> Option<F2Poly> {
    let monos = F2Poly::monomials_up_to(bound);
    let columns: Vec<Vec<u64>> = monos
        .iter()
        .map(|&(ta, ua)| {
            let m = F2Poly::monomial(ta, ua);
            a.mul(&m.square()).add(&q.mul(&m)).packed().to_vec()
        })
        .collect();
    let x = solve_gf2(&columns, r.packed())?;
    Some(F2Poly::from_packed(
        monos
            .iter()
            .zip(x)
            .filter(|(_, bit)| *bit)
            .map(|(&(a, b), _)| pack(a, b))
            .collect(),
    ))
}

/// A polynomial `d` with `d^2 + d = p`, if one exists in `F2(t,u)`.
pub fn artin_schreier_solve(p: &F2Poly) -> Option<F2Poly> {
    let Some(deg) = p.degree() else {
        return Some(F2Poly::zero());
    };
    let d = solve_twisted(&F2Poly::one(), p, deg.div_ceil(2))?;
    debug_assert_eq!(d.square().add(&d), *p);
    Some(d)
}

/// A `d` in `F2(t,u)` with `d^2 + d = f`, if one exists.
pub fn artin_schreier_solve_rational(f: &F2RatFun) -> Option<F2RatFun> {
    if let Some(p) = f.as_polynomial() {
        return artin_schreier_solve(&p).map(F2RatFun::from_poly);
    }
    let q = f.denominator();
    let r = f.numerator().mul(q);
    let bound = q
        .degree()
        .unwrap_or(0)
        .max(r.degree().unwrap_or(0).div_ceil(2));
    let e = solve_twisted(q, &r, bound)?;
    let d = F2RatFun::new(e, q.clone()).expect("nonzero denominator");
    debug_assert!(d.square().add(&d) == *f);
    Some(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pairs: &[(u32, u32)]) -> F2Poly {
        F2Poly::from_exponents(pairs.iter().copied())
    }

    fn t_plus_u() -> F2Poly {
        poly(&[(1, 0), (0, 1)])
    }

    #[test]
    fn solves_t_squared_plus_t() {
        let p = poly(&[(2, 0), (1, 0)]);
        let d = artin_schreier_solve(&p).unwrap();
        assert_eq!(d.square().add(&d), p);
        // Solutions come in pairs d, d+1.
        assert!(d == F2Poly::t() || d == F2Poly::t().add(&F2Poly::one()));
    }

    #[test]
    fn cube_of_t_plus_u_is_not_in_the_image() {
        assert_eq!(artin_schreier_solve(&t_plus_u().pow(3)), None);
    }

    #[test]
    fn t4_plus_t2_has_degree_two_solution() {
        let p = poly(&[(4, 0), (2, 0)]);
        let d = artin_schreier_solve(&p).unwrap();
        assert_eq!(d.square().add(&d), p);
        assert_eq!(d.degree(), Some(2));
    }

    #[test]
    fn zero_target() {
        assert_eq!(artin_schreier_solve(&F2Poly::zero()), Some(F2Poly::zero()));
    }

    #[test]
    fn rational_targets() {
        // d = t/(t+u): d^2 + d = (t^2 + t^2 + tu)/(t+u)^2 = tu/(t^2+u^2)
        let d = F2RatFun::new(F2Poly::t(), t_plus_u()).unwrap();
        let f = d.square().add(&d);
        assert!(f.as_polynomial().is_none());
        let sol = artin_schreier_solve_rational(&f).unwrap();
        assert!(sol.square().add(&sol) == f);

        // 1/t is not of the form d^2 + d: the denominator t is not a square.
        let g = F2RatFun::new(F2Poly::one(), F2Poly::t()).unwrap();
        assert!(artin_schreier_solve_rational(&g).is_none());
    }

    #[test]
    fn solver_matches_brute_force_on_small_targets() {
        // Every target of degree <= 2 against all candidates of degree <= 2.
        let candidates = F2Poly::all_up_to_degree(2);
        for p in F2Poly::all_up_to_degree(2) {
            let brute = candidates.iter().any(|d| d.square().add(d) == p);
            assert_eq!(artin_schreier_solve(&p).is_some(), brute, "target {p}");
        }
    }
}
