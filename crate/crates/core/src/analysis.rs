//! Numerical-equivalence tests through Okounkov polygons, and the
//! polygon-level report on Fujita-type approximations.

use num_traits::{One, Signed, Zero};

use crate::cones;
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, SurfaceModel};
use crate::linalg;
use crate::okounkov::{self, Flag};
use crate::polygon::{Point, RationalPolygon};
use crate::rational::{int, Rational};
use crate::zariski;

/// ρ ample classes forming a basis of N¹, each as a very general flag.
///
/// Starts from the primitive sum `A₀` of the nef rays and perturbs it by
/// `2⁻ᵏ·eᵢ`, halving until every perturbation is ample and the family is
/// linearly independent.
pub fn ample_flag_battery(model: &SurfaceModel) -> Result<Vec<Flag>> {
    let rays = cones::nef_rays(model)?;
    let rank = model.rank();
    let a0 = rays
        .iter()
        .fold(DivisorClass::zero(rank), |acc, r| &acc + r)
        .primitive();
    if a0.is_zero() || !cones::is_ample(model, &a0)? {
        return Err(Error::NoAmpleClass);
    }
    if rank == 1 {
        return Ok(vec![Flag::very_general(a0)]);
    }
    let mut eps = Rational::one();
    for _ in 0..64 {
        eps /= int(2);
        let family: Vec<DivisorClass> = (0..rank)
            .map(|i| (&a0 + &DivisorClass::basis_vector(rank, i).scaled(&eps)).primitive())
            .collect();
        let mut ample = true;
        for a in &family {
            if !cones::is_ample(model, a)? {
                ample = false;
                break;
            }
        }
        if !ample {
            continue;
        }
        let m: Vec<Vec<Rational>> = family.iter().map(|a| a.coords().to_vec()).collect();
        if !linalg::determinant(&m).is_zero() {
            return Ok(family.into_iter().map(Flag::very_general).collect());
        }
    }
    Err(Error::NoAmpleClass)
}

/// Whether the polygons of two big classes agree for every battery flag.
/// The answer is cross-checked against equality of the positive parts.
pub fn positive_parts_equal(
    model: &SurfaceModel,
    battery: &[Flag],
    d1: &DivisorClass,
    d2: &DivisorClass,
) -> Result<bool> {
    for d in [d1, d2] {
        if !cones::is_big(model, d)? {
            return Err(Error::NotBig);
        }
    }
    let mut equal = true;
    for flag in battery {
        if okounkov::okounkov_polygon(model, d1, flag)? != okounkov::okounkov_polygon(model, d2, flag)? {
            equal = false;
            break;
        }
    }
    let p1 = zariski::decompose(model, d1)?.positive;
    let p2 = zariski::decompose(model, d2)?.positive;
    if equal != (p1 == p2) {
        return Err(Error::Invariant(format!(
            "polygon comparison ({equal}) disagrees with positive parts {p1} and {p2}"
        )));
    }
    Ok(equal)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equivalent,
    NotEquivalent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Index into the battery.
    Flag(usize),
    /// Index into the model's negative curves.
    Curve(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub verdict: Verdict,
    pub battery: Vec<Flag>,
    pub polygon_agreement: Vec<bool>,
    pub negative_curve_agreement: Vec<bool>,
    /// First disagreeing flag and first disagreeing curve, in that order.
    pub witnesses: Vec<Witness>,
}

/// Polygon test on positive parts over the ample battery, plus the pairing
/// of the negative parts with every negative curve.
pub fn numerically_equivalent(
    model: &SurfaceModel,
    d1: &DivisorClass,
    d2: &DivisorClass,
) -> Result<EquivalenceReport> {
    for d in [d1, d2] {
        model.check_rank(d)?;
        if !cones::is_pseudoeffective(model, d)? {
            return Err(Error::NotPseudoeffective);
        }
    }
    let battery = ample_flag_battery(model)?;
    let z1 = zariski::decompose(model, d1)?;
    let z2 = zariski::decompose(model, d2)?;

    let mut polygon_agreement = Vec::with_capacity(battery.len());
    for flag in &battery {
        let b1 = okounkov::okounkov_body(model, &z1.positive, flag)?;
        let b2 = okounkov::okounkov_body(model, &z2.positive, flag)?;
        polygon_agreement.push(b1 == b2);
    }
    let (n1, n2) = (z1.negative_part(model), z2.negative_part(model));
    let negative_curve_agreement: Vec<bool> = model
        .negative_curves()
        .iter()
        .map(|c| model.pair(&c.class, &n1) == model.pair(&c.class, &n2))
        .collect();

    let mut witnesses = Vec::new();
    if let Some(i) = polygon_agreement.iter().position(|ok| !ok) {
        witnesses.push(Witness::Flag(i));
    }
    if let Some(j) = negative_curve_agreement.iter().position(|ok| !ok) {
        witnesses.push(Witness::Curve(j));
    }
    let verdict = if witnesses.is_empty() {
        Verdict::Equivalent
    } else {
        Verdict::NotEquivalent
    };
    if (verdict == Verdict::Equivalent) != (d1 == d2) {
        return Err(Error::Invariant(format!(
            "equivalence verdict {verdict:?} disagrees with coordinates of {d1} and {d2}"
        )));
    }
    Ok(EquivalenceReport {
        verdict,
        battery,
        polygon_agreement,
        negative_curve_agreement,
        witnesses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FujitaReport {
    pub inner_contained: bool,
    /// `area(Δ(D)) − area(Δ(D) ∩ Δ(A))`.
    pub inner_gap: Rational,
    /// Least `δ ≥ 0` with `Δ(D) ⊆ (1+δ)·Δ(A)`.
    pub minimal_delta: Rational,
    pub outer_gap_at_delta: Rational,
    pub inner_within_beta: bool,
    pub outer_within_beta: bool,
}

/// Compares `Δ(D)` with `Δ(A)` for nef `A ≤ D`: inner gap, the scaling
/// needed for `(1+δ)·Δ(A)` to cover `Δ(D)`, and the gap left at that scale.
pub fn fujita_report(
    model: &SurfaceModel,
    d: &DivisorClass,
    a: &DivisorClass,
    flag: &Flag,
    beta: &Rational,
) -> Result<FujitaReport> {
    model.check_rank(d)?;
    model.check_rank(a)?;
    if !beta.is_positive() {
        return Err(Error::NonPositiveBeta(beta.clone()));
    }
    if !cones::is_big(model, d)? {
        return Err(Error::NotBig);
    }
    if !cones::is_nef(model, a)? {
        return Err(Error::NotNef);
    }
    if !cones::is_pseudoeffective(model, &(d - a))? {
        return Err(Error::NotDominated);
    }
    let body_d = okounkov::okounkov_polygon(model, d, flag)?;
    let body_a = okounkov::okounkov_body(model, a, flag)?;
    let origin = Point::new(Rational::zero(), Rational::zero());
    if !body_a.contains_point(&origin) {
        return Err(Error::OriginNotInBody);
    }

    let inner_contained = body_d.contains(&body_a);
    let inner_gap = body_d.difference_area(&body_a);
    let mut factor = Rational::one();
    for v in body_d.vertices() {
        let g = body_a.gauge(v).ok_or(Error::DeltaUndefined)?;
        if g > factor {
            factor = g;
        }
    }
    let minimal_delta = &factor - Rational::one();
    let outer: RationalPolygon = body_a.scale(&factor)?;
    let outer_gap_at_delta = outer.difference_area(&body_d);
    Ok(FujitaReport {
        inner_contained,
        inner_within_beta: inner_gap < *beta,
        outer_within_beta: outer_gap_at_delta < *beta,
        inner_gap,
        minimal_delta,
        outer_gap_at_delta,
    })
}
