//! Minkowski bases of nef classes with respect to a big and nef flag, and
//! the counts that predict their size.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::cones;
use crate::error::{Error, Result};
use crate::lattice::{gram_is_negative_definite, CurveSubset, DivisorClass, SurfaceModel};
use crate::linalg::{self, Matrix};
use crate::okounkov::{self, Flag};
use crate::polygon::{minkowski_sum, Point, RationalPolygon};
use crate::rational::Rational;
use crate::zariski::{self, ZariskiChamber};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// The flag class itself.
    NefChamber,
    NefNotBigRay,
    Chamber(CurveSubset),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    /// Integral representative (see [`minkowski_element`]).
    pub class: DivisorClass,
    pub polygon: RationalPolygon,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinkowskiBasis {
    pub flag: Flag,
    pub elements: Vec<BasisElement>,
}

impl MinkowskiBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn classes(&self) -> Vec<DivisorClass> {
        self.elements.iter().map(|e| e.class.clone()).collect()
    }
}

fn require_big_nef(model: &SurfaceModel, c: &DivisorClass) -> Result<()> {
    model.check_rank(c)?;
    if cones::is_big_and_nef(model, c)? {
        Ok(())
    } else {
        Err(Error::FlagNotBigAndNef)
    }
}

/// Negative curves orthogonal to a big and nef class.
pub fn null_set(model: &SurfaceModel, c: &DivisorClass) -> Result<CurveSubset> {
    require_big_nef(model, c)?;
    Ok(zariski::orthogonal_curves(model, c))
}

/// `M = C + Σ aᵢNᵢ` with `S·a = −(C·N₁, …, C·N_r)`, multiplied by the
/// smallest positive integer that clears its denominators.
pub fn minkowski_element(
    model: &SurfaceModel,
    chamber: &ZariskiChamber,
    flag_class: &DivisorClass,
) -> Result<DivisorClass> {
    require_big_nef(model, flag_class)?;
    let s = &chamber.support;
    if s.is_empty() {
        return Ok(flag_class.clear_denominators());
    }
    let gram = model.subset_gram(s);
    if !gram_is_negative_definite(&gram) {
        return Err(Error::NotNegativeDefinite(s.indices().to_vec()));
    }
    let rhs: Vec<Rational> = s
        .indices()
        .iter()
        .map(|&i| -model.pair(flag_class, model.negative_curve(i)))
        .collect();
    let a = linalg::solve(&gram, &rhs).ok_or_else(|| Error::NotNegativeDefinite(s.indices().to_vec()))?;
    let m = s
        .indices()
        .iter()
        .zip(&a)
        .fold(flag_class.clone(), |acc, (&i, ai)| &acc + &model.negative_curve(i).scaled(ai));
    Ok(m.clear_denominators())
}

/// Flag element, nef-not-big rays and one element per chamber, deduplicated
/// by primitive representative (first occurrence wins).
pub fn minkowski_basis(model: &SurfaceModel, flag: &Flag) -> Result<MinkowskiBasis> {
    let c = &flag.curve;
    require_big_nef(model, c)?;
    let mut candidates: Vec<(DivisorClass, Provenance)> =
        vec![(c.clear_denominators(), Provenance::NefChamber)];
    for r in cones::nef_not_big_rays(model)? {
        candidates.push((r, Provenance::NefNotBigRay));
    }
    for chamber in zariski::enumerate_chambers(model) {
        let m = minkowski_element(model, &chamber, c)?;
        candidates.push((m, Provenance::Chamber(chamber.support)));
    }
    let mut seen = BTreeSet::new();
    let mut elements = Vec::new();
    for (class, provenance) in candidates {
        if !seen.insert(class.primitive()) {
            continue;
        }
        let polygon = okounkov::okounkov_body(model, &class, flag)?;
        elements.push(BasisElement {
            class,
            polygon,
            provenance,
        });
    }
    Ok(MinkowskiBasis {
        flag: flag.clone(),
        elements,
    })
}

/// `1 + NnB + Zar`, the basis size for ample flags.
pub fn cardinality_ample(model: &SurfaceModel) -> Result<usize> {
    Ok(1 + cones::nnb_count(model)? + zariski::zar_count(model))
}

/// Chambers whose support meets `Null(C)`.
pub fn nz_count(model: &SurfaceModel, c: &DivisorClass) -> Result<usize> {
    let null = null_set(model, c)?;
    Ok(zariski::enumerate_chambers(model)
        .iter()
        .filter(|ch| ch.support.indices().iter().any(|&i| null.contains(i)))
        .count())
}

/// Nonempty negative definite subsets of `Null(C)`.
pub fn nullzar_count(model: &SurfaceModel, c: &DivisorClass) -> Result<usize> {
    let null = null_set(model, c)?;
    Ok(zariski::negative_definite_subsets(&model.subset_gram(&null)).len())
}

/// `1 + NnB + Zar − NZ(C)`; only valid on models satisfying condition (★).
pub fn cardinality_bignef(model: &SurfaceModel, c: &DivisorClass) -> Result<usize> {
    require_big_nef(model, c)?;
    if let Some((i, j)) = zariski::star_violation(model) {
        return Err(Error::StarViolated {
            first: model.negative_curves()[i].label.clone(),
            second: model.negative_curves()[j].label.clone(),
        });
    }
    Ok(cardinality_ample(model)? - nz_count(model, c)?)
}

/// `1 + NnB + Zar − NullZar(C)`, an upper bound on the basis size.
pub fn cardinality_upper_bound(model: &SurfaceModel, c: &DivisorClass) -> Result<usize> {
    Ok(cardinality_ample(model)? - nullzar_count(model, c)?)
}

/// Chamber count of the curve matrix with the rows and columns of `Null(C)`
/// removed. Requires every chamber to be determined by intersections.
pub fn reduced_chamber_count(model: &SurfaceModel, c: &DivisorClass) -> Result<usize> {
    if let Some(s) = zariski::non_diagonal_chamber(model) {
        return Err(Error::NotSimpleWeyl(s.indices().to_vec()));
    }
    let null = null_set(model, c)?;
    let keep: Vec<usize> = (0..model.negative_curves().len())
        .filter(|&i| !null.contains(i))
        .collect();
    let g = model.curve_gram();
    let reduced: Matrix = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| g[i][j].clone()).collect())
        .collect();
    Ok(zariski::negative_definite_subsets(&reduced).len())
}

/// Nonnegative coefficients over basis elements, as `(element index, coefficient)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinkowskiDecomposition {
    pub coefficients: Vec<(usize, Rational)>,
}

impl MinkowskiDecomposition {
    pub fn class(&self, basis: &MinkowskiBasis, rank: usize) -> DivisorClass {
        self.coefficients
            .iter()
            .fold(DivisorClass::zero(rank), |acc, (i, a)| &acc + &basis.elements[*i].class.scaled(a))
    }

    pub fn polygon(&self, basis: &MinkowskiBasis) -> RationalPolygon {
        self.coefficients.iter().fold(
            RationalPolygon::point(Point::new(Rational::zero(), Rational::zero())),
            |acc, (i, a)| {
                let scaled = basis.elements[*i]
                    .polygon
                    .scale(a)
                    .expect("coefficients are positive");
                minkowski_sum(&acc, &scaled)
            },
        )
    }
}

fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return visit(cur);
        }
        let start = cur.last().map_or(0, |&i| i + 1);
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            let stop = rec(n, k, cur, visit);
            cur.pop();
            if stop {
                return true;
            }
        }
        false
    }
    rec(n, k, &mut Vec::new(), &mut visit);
}

/// Writes a nef class as a nonnegative combination of basis elements whose
/// polygons Minkowski-sum to its own polygon. Vertex solutions of the
/// coordinate system are tried by increasing support size; the first one
/// passing the polygon check is returned.
pub fn minkowski_decompose(
    model: &SurfaceModel,
    basis: &MinkowskiBasis,
    d: &DivisorClass,
) -> Result<MinkowskiDecomposition> {
    model.check_rank(d)?;
    if !cones::is_nef(model, d)? {
        return Err(Error::NotNef);
    }
    let target = okounkov::okounkov_body(model, d, &basis.flag)?;
    let cols: Vec<Vec<Rational>> = basis.elements.iter().map(|e| e.class.coords().to_vec()).collect();
    if d.is_zero() {
        return Ok(MinkowskiDecomposition {
            coefficients: Vec::new(),
        });
    }
    let mut tried = Vec::new();
    let mut found = None;
    for k in 1..=model.rank().min(cols.len()) {
        combinations(cols.len(), k, |idx| {
            let sub: Vec<Vec<Rational>> = idx.iter().map(|&i| cols[i].clone()).collect();
            let Some(alpha) = linalg::solve_in_span(&sub, d.coords()) else {
                return false;
            };
            if !alpha.iter().all(Signed::is_positive) {
                return false;
            }
            let cand = MinkowskiDecomposition {
                coefficients: idx.iter().copied().zip(alpha).collect(),
            };
            if cand.polygon(basis) == target {
                found = Some(cand);
                return true;
            }
            tried.push(cand.coefficients);
            false
        });
        if found.is_some() {
            break;
        }
    }
    found.ok_or(Error::NoVerifiedDecomposition { candidates: tried })
}
