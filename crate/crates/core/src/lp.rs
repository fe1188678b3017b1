//! Exact phase-one simplex for `A·λ = b, λ ≥ 0` feasibility.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Finds `λ ≥ 0` with `Σ λⱼ·columns[j] = target`, or `None` if infeasible.
/// Bland's rule keeps the pivoting finite on degenerate inputs.
pub fn nonnegative_combination(columns: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let m = target.len();
    let n = columns.len();
    // Tableau rows: [A | I | b] with rows sign-flipped so that b ≥ 0.
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let flip = target[i].is_negative();
            let s = |x: &Rational| if flip { -x } else { x.clone() };
            let mut row = Vec::with_capacity(width);
            row.extend(columns.iter().map(|c| s(&c[i])));
            row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            row.push(s(&target[i]));
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs of the phase-one objective Σ artificials.
    let mut cost = vec![Rational::zero(); width];
    for row in &t {
        for (j, v) in row.iter().enumerate() {
            if j < n || j == width - 1 {
                cost[j] -= v;
            }
        }
    }
    loop {
        let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave?;
        let piv = t[r][enter].clone();
        for v in t[r].iter_mut() {
            *v /= &piv;
        }
        let prow = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= &f * p;
                }
            }
        }
        let f = cost[enter].clone();
        for (x, p) in cost.iter_mut().zip(&prow) {
            *x -= &f * p;
        }
        basis[r] = enter;
    }
    // Phase-one optimum is −cost[rhs]; feasible iff it is zero.
    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut lambda = vec![Rational::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            lambda[b] = t[i][width - 1].clone();
        }
    }
    Some(lambda)
}
