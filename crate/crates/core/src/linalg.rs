//! Dense exact linear algebra over the rationals.
//!
//! Sign-critical routines (determinants, leading principal minors, square
//! solves) run fraction-free Bareiss elimination on integer matrices obtained
//! by clearing row denominators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &[Vec<Rational>]) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Integer row obtained by multiplying `row` with the lcm of its denominators.
/// Returns the row and the multiplier.
fn clear_row(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    (ints, lcm)
}

/// Leading principal minors `Δ₁, …, Δₖ` of a square matrix, stopping after the
/// first zero minor (elimination without pivoting cannot continue past it).
pub fn leading_principal_minors(m: &[Vec<Rational>]) -> Vec<Rational> {
    let n = m.len();
    let mut a = Vec::with_capacity(n);
    let mut scales = Vec::with_capacity(n);
    for row in m {
        let (r, s) = clear_row(row);
        a.push(r);
        scales.push(s);
    }
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    let mut scale_prod = BigInt::one();
    for k in 0..n {
        scale_prod *= &scales[k];
        let pivot = a[k][k].clone();
        minors.push(Rational::new(pivot.clone(), scale_prod.clone()));
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&pivot * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = pivot;
    }
    minors
}

/// Determinant by Bareiss elimination with row pivoting.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut a = Vec::with_capacity(n);
    let mut scale = BigInt::one();
    for row in m {
        let (r, s) = clear_row(row);
        a.push(r);
        scale *= s;
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Rational::new(sign * &a[n - 1][n - 1], scale)
}

/// Solves `m·x = b` for each right-hand side in `rhs`, `m` square.
/// Returns `None` when `m` is singular.
pub fn solve_many(m: &[Vec<Rational>], rhs: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let k = rhs.len();
    if n == 0 {
        return Some(vec![Vec::new(); k]);
    }
    // Augmented integer matrix [m | b₁ … bₖ], each row scaled independently.
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = m[i].clone();
            row.extend(rhs.iter().map(|b| b[i].clone()));
            clear_row(&row).0
        })
        .collect();
    let width = n + k;
    let mut prev = BigInt::one();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(p, c);
        for i in 0..n {
            if i == c {
                continue;
            }
            for j in 0..width {
                if j == c {
                    continue;
                }
                a[i][j] = (&a[c][c] * &a[i][j] - &a[i][c] * &a[c][j]) / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        // Rows above the pivot were also updated; their diagonal entries now
        // share the common Bareiss denominator with the current pivot.
        prev = a[c][c].clone();
    }
    // Gauss-Jordan Bareiss: every diagonal entry equals the final determinant.
    Some(
        (0..k)
            .map(|r| {
                (0..n)
                    .map(|i| Rational::new(a[i][n + r].clone(), a[i][i].clone()))
                    .collect()
            })
            .collect(),
    )
}

pub fn solve(m: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    solve_many(m, &[b.to_vec()]).map(|mut v| v.remove(0))
}

pub fn inverse(m: &[Vec<Rational>]) -> Option<Matrix> {
    let cols = solve_many(m, &identity(m.len()))?;
    Some(transpose(&cols))
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Solves `Σ xⱼ·columns[j] = target` when the columns are linearly
/// independent and the system is consistent; `None` otherwise.
pub fn solve_in_span(columns: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = columns.len();
    let n = target.len();
    let mut aug: Matrix = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    // dependent columns, or a pivot in the augmented column (inconsistent)
    if !pivots.iter().copied().eq(0..k) {
        return None;
    }
    Some((0..k).map(|i| aug[i][k].clone()).collect())
}

/// Inertia `(positive, negative, zero)` of a symmetric matrix by congruence
/// diagonalization (symmetric row/column operations).
pub fn inertia(m: &[Vec<Rational>]) -> (usize, usize, usize) {
    let n = m.len();
    let mut a = m.to_vec();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // row_k += row_j, col_k += col_j makes a[k][k] = 2·a[k][j] ≠ 0
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            } else {
                zero += 1;
                k += 1;
                continue;
            }
        }
        let p = a[k][k].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for c in k..n {
                let delta = &f * &a[k][c];
                a[i][c] -= delta;
            }
            for r in k..n {
                let delta = &f * &a[r][k];
                a[r][i] -= delta;
            }
        }
        k += 1;
    }
    (pos, neg, zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&m(&[&[-2, 1, 2], &[1, -2, 2], &[2, 2, -2]])), int(18));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), int(-1));
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]])), int(0));
        let h = vec![vec![frac(1, 2), frac(1, 3)], vec![frac(1, 3), frac(1, 4)]];
        assert_eq!(determinant(&h), frac(1, 72));
    }

    #[test]
    fn minors_stop_at_zero() {
        let q = m(&[&[-2, 2], &[2, -2]]);
        assert_eq!(leading_principal_minors(&q), vec![int(-2), int(0)]);
        let z = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(leading_principal_minors(&z), vec![int(0)]);
        let h = vec![vec![frac(1, 2), frac(1, 3)], vec![frac(1, 3), frac(1, 4)]];
        assert_eq!(leading_principal_minors(&h), vec![frac(1, 2), frac(1, 72)]);
    }

    #[test]
    fn solves() {
        let a = m(&[&[-2, 1], &[1, -2]]);
        assert_eq!(solve(&a, &[int(-1), int(-1)]).unwrap(), vec![int(1), int(1)]);
        let b = m(&[&[0, 2, 1], &[1, 0, 0], &[3, 1, 1]]);
        let x = solve(&b, &[int(1), int(2), int(3)]).unwrap();
        assert_eq!(mat_vec(&b, &x), vec![int(1), int(2), int(3)]);
        assert!(solve(&m(&[&[1, 2], &[2, 4]]), &[int(1), int(1)]).is_none());
        let inv = inverse(&b).unwrap();
        let prod: Matrix = (0..3)
            .map(|i| (0..3).map(|j| dot(&b[i], &transpose(&inv)[j])).collect())
            .collect();
        assert_eq!(prod, identity(3));
    }

    #[test]
    fn span_solves() {
        let cols = vec![vec![int(1), int(0), int(1)], vec![int(0), int(1), int(1)]];
        assert_eq!(
            solve_in_span(&cols, &[int(2), int(3), int(5)]).unwrap(),
            vec![int(2), int(3)]
        );
        assert!(solve_in_span(&cols, &[int(2), int(3), int(6)]).is_none());
        let dep = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert!(solve_in_span(&dep, &[int(1), int(1)]).is_none());
    }

    #[test]
    fn inertia_counts() {
        assert_eq!(inertia(&m(&[&[-2, 1, 2], &[1, -2, 2], &[2, 2, -2]])), (1, 2, 0));
        assert_eq!(inertia(&m(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(inertia(&m(&[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]])), (1, 3, 0));
        assert_eq!(inertia(&m(&[&[1, 1], &[1, 1]])), (1, 0, 1));
        assert_eq!(inertia(&m(&[&[0, 0], &[0, 0]])), (0, 0, 2));
    }
}
