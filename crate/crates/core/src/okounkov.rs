//! Okounkov polygons of divisors on the surface model.
//!
//! For a flag `(x, C)` with `x` very general, the polygon of `D` is the region
//! `a ≤ t ≤ μ, α(t) ≤ y ≤ β(t)` where `D − tC = P_t + N_t`, `α(t)` is the
//! coefficient of `C` in `N_t` and `β(t) = α(t) + P_t·C`. Both functions are
//! piecewise affine; [`chamber_walk`] finds the pieces exactly by following
//! the Zariski chambers crossed by `D − tC`.

use num_traits::{Signed, Zero};

use crate::cones;
use crate::error::{Error, Result};
use crate::lattice::{CurveSubset, DivisorClass, SurfaceModel};
use crate::polygon::{Point, RationalPolygon};
use crate::rational::Rational;
use crate::zariski::{self, Germ};

/// Admissible flag `(x, C)`; the point `x` is always very general.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flag {
    pub curve: DivisorClass,
}

impl Flag {
    pub fn very_general(curve: DivisorClass) -> Self {
        Flag { curve }
    }
}

/// `intercept + slope·t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub intercept: Rational,
    pub slope: Rational,
}

impl Affine {
    pub fn eval(&self, t: &Rational) -> Rational {
        &self.intercept + &self.slope * t
    }

    fn from_germ(g: &Germ, t0: &Rational) -> Self {
        Affine {
            intercept: &g.value - &g.slope * t0,
            slope: g.slope.clone(),
        }
    }

    fn zero() -> Self {
        Affine {
            intercept: Rational::zero(),
            slope: Rational::zero(),
        }
    }
}

/// A maximal interval on which the negative-part support of `D − tC` is
/// constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkSegment {
    pub t_lo: Rational,
    pub t_hi: Rational,
    pub support: CurveSubset,
    pub alpha: Affine,
    pub beta: Affine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberWalk {
    /// Coefficient of the flag curve in the negative part of `D`.
    pub start: Rational,
    /// Pseudoeffective threshold of `D` along the flag curve.
    pub end: Rational,
    /// Empty exactly when `start == end`.
    pub segments: Vec<WalkSegment>,
    /// `(α, β)` at `start`; used for the degenerate walk.
    pub start_values: (Rational, Rational),
}

impl ChamberWalk {
    pub fn alpha_beta_at(&self, t: &Rational) -> Result<(Rational, Rational)> {
        if *t < self.start || *t > self.end {
            return Err(Error::OutOfRange {
                t: t.clone(),
                lo: self.start.clone(),
                hi: self.end.clone(),
            });
        }
        let mut found: Option<(Rational, Rational)> = None;
        for s in self.segments.iter().filter(|s| s.t_lo <= *t && *t <= s.t_hi) {
            let v = (s.alpha.eval(t), s.beta.eval(t));
            match &found {
                Some(prev) if *prev != v => {
                    return Err(Error::Invariant(format!(
                        "alpha/beta discontinuous at breakpoint t = {t}"
                    )));
                }
                _ => found = Some(v),
            }
        }
        Ok(found.unwrap_or_else(|| self.start_values.clone()))
    }

    pub fn polygon(&self) -> RationalPolygon {
        let mut pts = vec![
            Point::new(self.start.clone(), self.start_values.0.clone()),
            Point::new(self.start.clone(), self.start_values.1.clone()),
        ];
        for s in &self.segments {
            pts.push(Point::new(s.t_hi.clone(), s.alpha.eval(&s.t_hi)));
            pts.push(Point::new(s.t_hi.clone(), s.beta.eval(&s.t_hi)));
        }
        RationalPolygon::from_points(pts)
    }
}

/// Checks the flag conditions for `D` (pseudoeffective): a negative-curve
/// flag must not be orthogonal to `P_D`; any other flag class must be nef and
/// nonzero.
pub fn check_flag(model: &SurfaceModel, d: &DivisorClass, flag: &Flag) -> Result<()> {
    let c = &flag.curve;
    model.check_rank(c)?;
    if c.is_zero() {
        return Err(Error::InadmissibleFlag("flag class is zero".into()));
    }
    if !cones::is_pseudoeffective(model, c)? {
        return Err(Error::InadmissibleFlag(
            "flag class is not pseudoeffective".into(),
        ));
    }
    if let Some(k) = model.negative_curve_index(c) {
        let z = zariski::decompose(model, d)?;
        if model.pair(&z.positive, c).is_zero() {
            return Err(Error::InadmissibleFlag(format!(
                "flag curve {} lies in the augmented base locus of D",
                model.negative_curves()[k].label
            )));
        }
        return Ok(());
    }
    if !cones::is_nef(model, c)? {
        return Err(Error::InadmissibleFlag(
            "flag class is neither a negative curve nor nef".into(),
        ));
    }
    Ok(())
}

/// Walk for any pseudoeffective `D`; the flag is assumed admissible.
fn walk(model: &SurfaceModel, d: &DivisorClass, c: &DivisorClass) -> Result<ChamberWalk> {
    let flag_index = model.negative_curve_index(c);
    let zd = zariski::decompose(model, d)?;
    let start = flag_index
        .and_then(|k| zd.negative_coeffs.get(&k).cloned())
        .unwrap_or_else(Rational::zero);
    let end = cones::mu_max(model, d, c)?;
    let start_values = {
        let z = zariski::decompose(model, &(d - &c.scaled(&start)))?;
        let alpha = flag_index
            .and_then(|k| z.negative_coeffs.get(&k).cloned())
            .unwrap_or_else(Rational::zero);
        let beta = &alpha + model.pair(&z.positive, c);
        (alpha, beta)
    };
    let curves = model.negative_curves().len();
    let mut segments = Vec::new();
    let mut t = start.clone();
    while t < end {
        let g = zariski::decompose_germ(model, d, c, &t)?;
        let mut next = end.clone();
        let mut consider = |germ: &Germ| {
            // A positive quantity that decreases reaches zero at t + value/|slope|.
            if germ.slope.is_negative() && germ.value.is_positive() {
                let root = &t + &germ.value / -&germ.slope;
                if root < next {
                    next = root;
                }
            }
        };
        for a in &g.coeffs {
            consider(a);
        }
        for j in (0..curves).filter(|&j| !g.support.contains(j)) {
            consider(&g.positive_pairing(model, model.negative_curve(j)));
        }
        let alpha = match flag_index.and_then(|k| g.support.indices().iter().position(|&i| i == k)) {
            Some(pos) => Affine::from_germ(&g.coeffs[pos], &t),
            None => Affine::zero(),
        };
        let pc = Affine::from_germ(&g.positive_pairing(model, c), &t);
        let beta = Affine {
            intercept: &alpha.intercept + &pc.intercept,
            slope: &alpha.slope + &pc.slope,
        };
        segments.push(WalkSegment {
            t_lo: t.clone(),
            t_hi: next.clone(),
            support: g.support,
            alpha,
            beta,
        });
        t = next;
    }
    Ok(ChamberWalk {
        start,
        end,
        segments,
        start_values,
    })
}

/// Exact chamber walk of `D − tC` over `[a, μ]` for big `D`.
pub fn chamber_walk(model: &SurfaceModel, d: &DivisorClass, flag: &Flag) -> Result<ChamberWalk> {
    if !cones::is_big(model, d)? {
        return Err(Error::NotBig);
    }
    check_flag(model, d, flag)?;
    walk(model, d, &flag.curve)
}

/// Okounkov polygon of a big class.
pub fn okounkov_polygon(model: &SurfaceModel, d: &DivisorClass, flag: &Flag) -> Result<RationalPolygon> {
    Ok(chamber_walk(model, d, flag)?.polygon())
}

/// Polygon of any pseudoeffective class: for big classes this is
/// [`okounkov_polygon`]; otherwise the region degenerates to the vertical
/// segment (or point) `{a} × [α(a), β(a)]`, the limit of the polygons of
/// nearby big classes.
pub fn okounkov_body(model: &SurfaceModel, d: &DivisorClass, flag: &Flag) -> Result<RationalPolygon> {
    if !cones::is_pseudoeffective(model, d)? {
        return Err(Error::NotPseudoeffective);
    }
    check_flag(model, d, flag)?;
    Ok(walk(model, d, &flag.curve)?.polygon())
}

pub fn alpha_beta_at(
    model: &SurfaceModel,
    d: &DivisorClass,
    flag: &Flag,
    t: &Rational,
) -> Result<(Rational, Rational)> {
    chamber_walk(model, d, flag)?.alpha_beta_at(t)
}
