//! Small dense linear algebra over a [`FieldElem`] field.

use crate::field::{split_denominators, FieldElem};

pub type Row = Vec<FieldElem>;

/// Reduced row-echelon form in place; returns the pivot columns.
/// Zero rows are dropped.
pub fn rref(rows: &mut Vec<Row>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        let pivot_row: Row = rows[r].iter().map(|x| x * &inv).collect();
        rows[r] = pivot_row;
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            let updated: Row = rows[i]
                .iter()
                .zip(&rows[r])
                .map(|(x, p)| x - &(&factor * p))
                .collect();
            rows[i] = updated;
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Row]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// A basis of `{ x : A x = 0 }` for the matrix given by `rows`.
pub fn nullspace(rows: &[Row], ncols: usize, zero: &FieldElem) -> Vec<Row> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let one = zero.one_like();
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![zero.clone(); ncols];
            v[free] = one.clone();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&m[r][free];
            }
            v
        })
        .collect()
}

pub fn determinant(rows: &[Row]) -> FieldElem {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut det = m[0][0].one_like();
    for c in 0..n {
        let Some(found) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return det.zero_like();
        };
        if found != c {
            m.swap(found, c);
            det = -det;
        }
        det = &det * &m[c][c];
        let inv = m[c][c].inv().expect("nonzero pivot");
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] * &inv;
            let updated: Row = m[i]
                .iter()
                .zip(&m[c])
                .map(|(x, p)| x - &(&factor * p))
                .collect();
            m[i] = updated;
        }
    }
    det
}

/// Inverse of a square matrix, or `None` if it is singular.
pub fn inverse(rows: &[Row]) -> Option<Vec<Row>> {
    let n = rows.len();
    let zero = rows[0][0].zero_like();
    let one = zero.one_like();
    let mut aug: Vec<Row> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { one.clone() } else { zero.clone() }));
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// The product is formed on cleared numerators and divided by the two
/// common denominators once per entry.
pub fn mat_mul(a: &[Row], b: &[Row]) -> Vec<Row> {
    let (a, da) = split_matrix(a);
    let (b, db) = split_matrix(b);
    let scale = (&da * &db).inv().expect("denominators are nonzero");
    let zero = a[0][0].zero_like();
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| {
                    let sum = row
                        .iter()
                        .zip(&b)
                        .filter(|(x, brow)| !x.is_zero() && !brow[j].is_zero())
                        .fold(zero.clone(), |acc, (x, brow)| &acc + &(x * &brow[j]));
                    if scale.is_one() {
                        sum
                    } else {
                        &sum * &scale
                    }
                })
                .collect()
        })
        .collect()
}

/// `(X, d)` with `m = X / d` entrywise and `X` free of denominators.
pub(crate) fn split_matrix(m: &[Row]) -> (Vec<Row>, FieldElem) {
    let width = m[0].len();
    let flat: Vec<FieldElem> = m.iter().flatten().cloned().collect();
    let (cleared, d) = split_denominators(&flat);
    (
        cleared.chunks(width).map(<[FieldElem]>::to_vec).collect(),
        d,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;

    fn mat(vals: &[&[i64]]) -> Vec<Row> {
        let f = FieldConfig::rationals();
        vals.iter()
            .map(|r| r.iter().map(|&v| f.from_int(v)).collect())
            .collect()
    }

    #[test]
    fn rref_and_nullspace() {
        let mut m = mat(&[&[1, 1, 0, 0], &[1, -1, 0, 0]]);
        let piv = rref(&mut m);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(m, mat(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]));
        let zero = FieldConfig::rationals().zero();
        let ns = nullspace(&m, 4, &zero);
        assert_eq!(ns, mat(&[&[0, 0, 1, 0], &[0, 0, 0, 1]]));
    }

    #[test]
    fn determinant_and_inverse() {
        let m = mat(&[&[2, 1], &[7, 4]]);
        assert_eq!(determinant(&m), FieldConfig::rationals().one());
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, mat(&[&[4, -1], &[-7, 2]]));
        assert_eq!(mat_mul(&m, &inv), mat(&[&[1, 0], &[0, 1]]));
        assert!(inverse(&mat(&[&[1, 2], &[2, 4]])).is_none());
        assert!(determinant(&mat(&[&[1, 2], &[2, 4]])).is_zero());
    }
}
