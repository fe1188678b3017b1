//! Independent oracles and seeded generators shared by the integration tests.
//! Nothing here calls the library's linear algebra, cone or polygon code.
#![allow(dead_code)]

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use okounkov_core::cones;
use okounkov_core::okounkov::check_flag;
use okounkov_core::{fixtures, DivisorClass, Flag, Point, Rational, RationalPolygon, SurfaceModel};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn z(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn cls(v: &[i64]) -> DivisorClass {
    DivisorClass::from_ints(v)
}

pub fn main_fixtures() -> [SurfaceModel; 2] {
    [fixtures::quartic(), fixtures::del_pezzo_6()]
}

pub fn all_fixtures() -> Vec<SurfaceModel> {
    fixtures::NAMES.iter().map(|n| fixtures::by_name(n).unwrap()).collect()
}

// ---------------------------------------------------------------- algebra

/// `aᵀ·G·b` read straight off the Gram matrix.
pub fn pair(model: &SurfaceModel, a: &DivisorClass, b: &DivisorClass) -> Rational {
    let g = model.gram();
    let mut s = Rational::zero();
    for (i, ai) in a.coords().iter().enumerate() {
        for (j, bj) in b.coords().iter().enumerate() {
            s += ai * &g[i][j] * bj;
        }
    }
    s
}

pub fn combine(classes: &[DivisorClass], coeffs: &[Rational], rank: usize) -> DivisorClass {
    let mut out = vec![Rational::zero(); rank];
    for (c, a) in classes.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(c.coords()) {
            *o += a * x;
        }
    }
    DivisorClass::new(out)
}

pub fn sub_gram(model: &SurfaceModel, s: &[usize]) -> Vec<Vec<Rational>> {
    s.iter()
        .map(|&i| {
            s.iter()
                .map(|&j| pair(model, model.negative_curve(i), model.negative_curve(j)))
                .collect()
        })
        .collect()
}

/// Inertia `(positive, negative, zero)` by symmetric congruence
/// diagonalization.
pub fn inertia_oracle(m: &[Vec<Rational>]) -> (usize, usize, usize) {
    let mut a = m.to_vec();
    let n = a.len();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        if let Some(p) = (k..n).find(|&i| !a[i][i].is_zero()) {
            a.swap(k, p);
            for row in a.iter_mut() {
                row.swap(k, p);
            }
        } else if let Some((i, j)) = (k..n)
            .flat_map(|i| (k..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        {
            // a[i][i] = a[j][j] = 0: add row/column j to i, making a[i][i] = 2a[i][j].
            for c in 0..n {
                let v = a[j][c].clone();
                a[i][c] += v;
            }
            for row in a.iter_mut() {
                let v = row[j].clone();
                row[i] += v;
            }
            continue;
        } else {
            break;
        }
        let pivot = a[k][k].clone();
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &pivot;
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
        }
        for i in k + 1..n {
            a[k][i] = Rational::zero();
            a[i][k] = Rational::zero();
        }
        k += 1;
    }
    (pos, neg, n - pos - neg)
}

pub fn negative_definite_oracle(m: &[Vec<Rational>]) -> bool {
    inertia_oracle(m).1 == m.len()
}

/// Gauss–Jordan solve of a square system; `None` if singular.
pub fn solve_oracle(m: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, p);
        let pivot = a[k][k].clone();
        for c in k..=n {
            a[k][c] = &a[k][c] / &pivot;
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                for c in k..=n {
                    let v = &f * &a[k][c];
                    a[i][c] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n].clone()).collect())
}

pub fn rank_oracle(rows: &[Vec<Rational>]) -> usize {
    let mut a = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in 0..a.len() {
            if i != rank && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[rank][c];
                for k in c..cols {
                    let v = &f * &a[rank][k];
                    a[i][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
}

pub fn nef_oracle(model: &SurfaceModel, d: &DivisorClass) -> bool {
    model
        .effective_generators()
        .iter()
        .all(|g| !pair(model, d, &g.class).is_negative())
}

/// Every support `S` (negative definite) whose solution of `P·Nᵢ = 0`
/// has all coefficients positive and leaves a nef `P`.
pub fn zariski_oracle(model: &SurfaceModel, d: &DivisorClass) -> Vec<(Vec<usize>, Vec<Rational>, DivisorClass)> {
    let mut found = Vec::new();
    for s in subsets(model.negative_curves().len()) {
        let g = sub_gram(model, &s);
        if !negative_definite_oracle(&g) {
            continue;
        }
        let rhs: Vec<Rational> = s.iter().map(|&i| pair(model, d, model.negative_curve(i))).collect();
        let a = solve_oracle(&g, &rhs).expect("definite matrices are invertible");
        if !a.iter().all(Signed::is_positive) {
            continue;
        }
        let curves: Vec<DivisorClass> = s.iter().map(|&i| model.negative_curve(i).clone()).collect();
        let n = combine(&curves, &a, model.rank());
        let p = d - &n;
        if nef_oracle(model, &p) {
            found.push((s, a, p));
        }
    }
    found
}

// ---------------------------------------------------------------- geometry

pub fn pt(x: &Rational, y: &Rational) -> Point {
    Point::new(x.clone(), y.clone())
}

fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

fn dist2(a: &Point, b: &Point) -> Rational {
    let dx = &a.x - &b.x;
    let dy = &a.y - &b.y;
    &dx * &dx + &dy * &dy
}

/// Gift-wrapping hull: counterclockwise from the lexicographically smallest
/// point, collinear points dropped.
pub fn hull_oracle(points: &[Point]) -> Vec<Point> {
    let Some(start) = points.iter().min().cloned() else {
        return Vec::new();
    };
    let mut hull = vec![start.clone()];
    let mut cur = start.clone();
    loop {
        let mut next: Option<Point> = None;
        for r in points {
            if *r == cur {
                continue;
            }
            next = Some(match next {
                None => r.clone(),
                Some(nq) => {
                    let c = cross(&cur, &nq, r);
                    if c.is_negative() || (c.is_zero() && dist2(&cur, r) > dist2(&cur, &nq)) {
                        r.clone()
                    } else {
                        nq
                    }
                }
            });
        }
        match next {
            None => return hull,
            Some(n) if n == start => return hull,
            Some(n) => {
                hull.push(n.clone());
                cur = n;
            }
        }
    }
}

/// Fan-triangulation area of a counterclockwise polygon.
pub fn area_oracle(v: &[Point]) -> Rational {
    let mut a = Rational::zero();
    for i in 1..v.len().saturating_sub(1) {
        a += cross(&v[0], &v[i], &v[i + 1]);
    }
    a / z(2)
}

fn inside_oracle(v: &[Point], p: &Point) -> bool {
    let n = v.len();
    (0..n).all(|i| !cross(&v[i], &v[(i + 1) % n], p).is_negative())
}

fn segment_intersection(a: &Point, b: &Point, c: &Point, d: &Point) -> Option<Point> {
    let den = (&b.x - &a.x) * (&d.y - &c.y) - (&b.y - &a.y) * (&d.x - &c.x);
    if den.is_zero() {
        return None;
    }
    let t = ((&c.x - &a.x) * (&d.y - &c.y) - (&c.y - &a.y) * (&d.x - &c.x)) / &den;
    let u = ((&c.x - &a.x) * (&b.y - &a.y) - (&c.y - &a.y) * (&b.x - &a.x)) / &den;
    let unit = |s: &Rational| !s.is_negative() && *s <= Rational::one();
    (unit(&t) && unit(&u)).then(|| Point::new(&a.x + &t * (&b.x - &a.x), &a.y + &t * (&b.y - &a.y)))
}

/// `area(P ∩ Q)` from the hull of mutually contained vertices and edge
/// crossings.
pub fn intersection_area_oracle(p: &RationalPolygon, q: &RationalPolygon) -> Rational {
    let (pv, qv) = (p.vertices(), q.vertices());
    if pv.len() < 3 || qv.len() < 3 {
        return Rational::zero();
    }
    let mut pts: Vec<Point> = pv.iter().filter(|v| inside_oracle(qv, v)).cloned().collect();
    pts.extend(qv.iter().filter(|v| inside_oracle(pv, v)).cloned());
    for i in 0..pv.len() {
        for j in 0..qv.len() {
            let (a, b) = (&pv[i], &pv[(i + 1) % pv.len()]);
            let (c, d) = (&qv[j], &qv[(j + 1) % qv.len()]);
            if let Some(x) = segment_intersection(a, b, c, d) {
                pts.push(x);
            }
        }
    }
    area_oracle(&hull_oracle(&pts))
}

pub fn minkowski_oracle(p: &RationalPolygon, q: &RationalPolygon) -> Vec<Point> {
    let mut sums = Vec::new();
    for a in p.vertices() {
        for b in q.vertices() {
            sums.push(Point::new(&a.x + &b.x, &a.y + &b.y));
        }
    }
    hull_oracle(&sums)
}

// ---------------------------------------------------------------- generators

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    q(rng.random_range(1..=6), rng.random_range(1..=3))
}

/// Nonnegative combination of the effective generators, not all zero.
pub fn random_pseudoeffective(rng: &mut ChaCha8Rng, model: &SurfaceModel) -> DivisorClass {
    let gens: Vec<DivisorClass> = model.effective_generators().iter().map(|g| g.class.clone()).collect();
    loop {
        let coeffs: Vec<Rational> = gens
            .iter()
            .map(|_| {
                if rng.random_bool(0.5) {
                    small_rational(rng)
                } else {
                    Rational::zero()
                }
            })
            .collect();
        if coeffs.iter().any(|c| !c.is_zero()) {
            return combine(&gens, &coeffs, model.rank());
        }
    }
}

pub fn random_big(rng: &mut ChaCha8Rng, model: &SurfaceModel) -> DivisorClass {
    loop {
        let d = random_pseudoeffective(rng, model);
        if cones::is_big(model, &d).unwrap() {
            return d;
        }
    }
}

/// Nonnegative combination of the nef rays, not all zero.
pub fn random_nef(rng: &mut ChaCha8Rng, model: &SurfaceModel) -> DivisorClass {
    let rays = cones::nef_rays(model).unwrap();
    loop {
        let coeffs: Vec<Rational> = rays
            .iter()
            .map(|_| {
                if rng.random_bool(0.6) {
                    z(rng.random_range(1..=4))
                } else {
                    Rational::zero()
                }
            })
            .collect();
        if coeffs.iter().any(|c| !c.is_zero()) {
            return combine(&rays, &coeffs, model.rank());
        }
    }
}

/// Flag classes to try, in order: ample, big and nef but not ample, nef not
/// big, then the negative curves.
pub fn flag_candidates(model: &SurfaceModel) -> Vec<DivisorClass> {
    let mut out: Vec<DivisorClass> = match model.name() {
        "quartic" => vec![cls(&[1, 1, 1]), cls(&[2, 2, 1]), cls(&[1, 0, 1])],
        "dp6" => vec![cls(&[3, -1, -1, -1]), cls(&[3, 0, -1, -1]), cls(&[1, 0, 0, 0]), cls(&[1, -1, 0, 0])],
        _ => Vec::new(),
    };
    out.extend(model.negative_curves().iter().map(|c| c.class.clone()));
    out
}

/// Up to `k` flags admissible for every class in `ds`.
pub fn admissible_flags(model: &SurfaceModel, ds: &[&DivisorClass], k: usize) -> Vec<Flag> {
    flag_candidates(model)
        .into_iter()
        .map(Flag::very_general)
        .filter(|f| ds.iter().all(|d| check_flag(model, d, f).is_ok()))
        .take(k)
        .collect()
}
