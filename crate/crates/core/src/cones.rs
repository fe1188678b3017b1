//! Pseudoeffective, nef and big cones of a model.
//!
//! The effective cone is converted to its facet description by the double
//! description method. Facets are stored as classes `F` acting through the
//! intersection pairing (`x ↦ F·x`), so the facet list of the effective cone
//! is exactly the extremal-ray list of the nef cone.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, SurfaceModel};
use crate::linalg::{self, Matrix};
use crate::lp;
use crate::rational::{primitive_integral, Rational};
use crate::zariski;

/// Generators and facets of a full-dimensional polyhedral cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeDescription {
    pub generators: Vec<DivisorClass>,
    /// Classes `F` with `F·g ≥ 0` for every generator `g`.
    pub facets: Vec<DivisorClass>,
}

/// Extreme rays of `{x : hᵢ·x ≥ 0}` (Euclidean dot product) as primitive
/// integral vectors in descending lexicographic order. `None` if the
/// constraints do not have full rank (the cone is then not pointed).
pub fn extreme_rays(constraints: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let d = constraints.first()?.len();
    // Greedy choice of d independent rows for the initial simplicial cone.
    let mut chosen: Vec<usize> = Vec::new();
    for (i, _) in constraints.iter().enumerate() {
        let mut trial: Matrix = chosen.iter().map(|&j| constraints[j].clone()).collect();
        trial.push(constraints[i].clone());
        if linalg::rank(&trial) == trial.len() {
            chosen.push(i);
            if chosen.len() == d {
                break;
            }
        }
    }
    if chosen.len() < d {
        return None;
    }
    let basis: Matrix = chosen.iter().map(|&j| constraints[j].clone()).collect();
    let inv = linalg::inverse(&basis)?;
    // Columns of the inverse are the rays of the initial cone.
    let mut rays: Vec<Ray> = (0..d)
        .map(|k| {
            let v: Vec<Rational> = inv.iter().map(|row| row[k].clone()).collect();
            Ray::new(v, constraints, &chosen)
        })
        .collect();
    let mut processed = chosen.clone();
    for (i, h) in constraints.iter().enumerate() {
        if chosen.contains(&i) {
            continue;
        }
        let values: Vec<Rational> = rays.iter().map(|r| linalg::dot(h, &r.v)).collect();
        let (pos, neg): (Vec<usize>, Vec<usize>) = (
            (0..rays.len()).filter(|&k| values[k].is_positive()).collect(),
            (0..rays.len()).filter(|&k| values[k].is_negative()).collect(),
        );
        let mut next: Vec<Ray> = Vec::new();
        for p in &pos {
            for n in &neg {
                if adjacent(&rays, *p, *n, d) {
                    let v: Vec<Rational> = rays[*p]
                        .v
                        .iter()
                        .zip(&rays[*n].v)
                        .map(|(a, b)| &values[*p] * b - &values[*n] * a)
                        .collect();
                    next.push(Ray::from_parts(v, &rays[*p], &rays[*n], i));
                }
            }
        }
        processed.push(i);
        for (k, r) in rays.into_iter().enumerate() {
            if values[k].is_negative() {
                continue;
            }
            let mut r = r;
            if values[k].is_zero() {
                r.tight.push(i);
            }
            next.push(r);
        }
        rays = next;
        for r in &mut rays {
            r.tight.sort_unstable();
            r.tight.dedup();
        }
    }
    let mut out: Vec<Vec<Rational>> = rays
        .into_iter()
        .map(|r| primitive_integral(&r.v).into_iter().map(Rational::from_integer).collect())
        .collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out.dedup();
    Some(out)
}

struct Ray {
    v: Vec<Rational>,
    /// Indices of processed constraints that vanish on the ray.
    tight: Vec<usize>,
}

impl Ray {
    fn new(v: Vec<Rational>, constraints: &[Vec<Rational>], processed: &[usize]) -> Self {
        let tight = processed
            .iter()
            .copied()
            .filter(|&j| linalg::dot(&constraints[j], &v).is_zero())
            .collect();
        Ray { v, tight }
    }

    fn from_parts(v: Vec<Rational>, p: &Ray, n: &Ray, new_constraint: usize) -> Self {
        let mut tight: Vec<usize> = p.tight.iter().copied().filter(|j| n.tight.contains(j)).collect();
        tight.push(new_constraint);
        Ray { v, tight }
    }
}

/// Combinatorial adjacency test: the common zero set has at least d−2
/// elements and is not contained in the zero set of any third ray.
fn adjacent(rays: &[Ray], p: usize, n: usize, d: usize) -> bool {
    let common: Vec<usize> = rays[p]
        .tight
        .iter()
        .copied()
        .filter(|j| rays[n].tight.contains(j))
        .collect();
    if common.len() + 2 < d {
        return false;
    }
    !rays.iter().enumerate().any(|(k, r)| {
        k != p && k != n && common.iter().all(|j| r.tight.contains(j))
    })
}

/// Rays of the cone dual (under the intersection form) to `generators`.
pub fn dual_rays(model: &SurfaceModel, generators: &[DivisorClass]) -> Option<Vec<DivisorClass>> {
    let constraints: Matrix = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| linalg::mat_vec(model.gram(), g.coords()))
        .collect();
    extreme_rays(&constraints).map(|rays| rays.into_iter().map(DivisorClass::new).collect())
}

pub(crate) fn describe_effective_cone(model: &SurfaceModel) -> Option<ConeDescription> {
    let generators: Vec<DivisorClass> = model
        .effective_generators()
        .iter()
        .map(|g| g.class.clone())
        .collect();
    let facets = dual_rays(model, &generators)?;
    Some(ConeDescription { generators, facets })
}

/// Outcome of a pseudoeffectivity test with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `D = Σ coefficients[j]·effective_generators[j]`, all coefficients ≥ 0.
    Inside { coefficients: Vec<Rational> },
    /// `functional·g ≥ 0` on every generator while `functional·D < 0`.
    Outside { functional: DivisorClass },
}

pub fn is_pseudoeffective(model: &SurfaceModel, d: &DivisorClass) -> Result<bool> {
    model.check_rank(d)?;
    let cone = model.cone()?;
    Ok(cone.facets.iter().all(|f| !model.pair(f, d).is_negative()))
}

/// Pseudoeffectivity with a Farkas certificate either way.
pub fn pseudoeffective_certificate(model: &SurfaceModel, d: &DivisorClass) -> Result<Membership> {
    model.check_rank(d)?;
    let cone = model.cone()?;
    if let Some(f) = cone.facets.iter().find(|f| model.pair(f, d).is_negative()) {
        return Ok(Membership::Outside {
            functional: f.clone(),
        });
    }
    let columns: Matrix = cone.generators.iter().map(|g| g.coords().to_vec()).collect();
    let coefficients = lp::nonnegative_combination(&columns, d.coords()).ok_or_else(|| {
        Error::Invariant("facet test and generator LP disagree on membership".into())
    })?;
    Ok(Membership::Inside { coefficients })
}

/// `D·E ≥ 0` for every effective generator `E`.
pub fn is_nef(model: &SurfaceModel, d: &DivisorClass) -> Result<bool> {
    model.check_rank(d)?;
    Ok(model
        .effective_generators()
        .iter()
        .all(|g| !model.pair(d, &g.class).is_negative()))
}

/// Strictly positive against every effective generator and of positive square.
pub fn is_ample(model: &SurfaceModel, d: &DivisorClass) -> Result<bool> {
    model.check_rank(d)?;
    Ok(model.pair(d, d).is_positive()
        && model
            .effective_generators()
            .iter()
            .filter(|g| !g.class.is_zero())
            .all(|g| model.pair(d, &g.class).is_positive()))
}

/// `P_D² > 0`; false for classes that are not pseudoeffective.
pub fn is_big(model: &SurfaceModel, d: &DivisorClass) -> Result<bool> {
    if !is_pseudoeffective(model, d)? {
        return Ok(false);
    }
    let z = zariski::decompose(model, d)?;
    Ok(model.pair(&z.positive, &z.positive).is_positive())
}

pub fn is_big_and_nef(model: &SurfaceModel, d: &DivisorClass) -> Result<bool> {
    Ok(is_nef(model, d)? && model.pair(d, d).is_positive())
}

/// Extremal rays of the nef cone, primitive integral, in the cone's
/// canonical order.
pub fn nef_rays(model: &SurfaceModel) -> Result<Vec<DivisorClass>> {
    Ok(model.cone()?.facets.clone())
}

/// Extremal rays of the nef cone with self-intersection zero. Their number is
/// the NnB count.
pub fn nef_not_big_rays(model: &SurfaceModel) -> Result<Vec<DivisorClass>> {
    Ok(model
        .cone()?
        .facets
        .iter()
        .filter(|f| model.pair(f, f).is_zero())
        .cloned()
        .collect())
}

pub fn nnb_count(model: &SurfaceModel) -> Result<usize> {
    nef_not_big_rays(model).map(|r| r.len())
}

/// Largest `t` with `D − t·C` pseudoeffective.
pub fn mu_max(model: &SurfaceModel, d: &DivisorClass, c: &DivisorClass) -> Result<Rational> {
    model.check_rank(c)?;
    if !is_pseudoeffective(model, d)? {
        return Err(Error::NotPseudoeffective);
    }
    let cone = model.cone()?;
    cone.facets
        .iter()
        .filter_map(|f| {
            let fc = model.pair(f, c);
            fc.is_positive().then(|| model.pair(f, d) / fc)
        })
        .min()
        .ok_or(Error::UnboundedThreshold)
}
