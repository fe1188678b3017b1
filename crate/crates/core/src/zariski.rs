//! Zariski decomposition, chamber enumeration and the intersection-matrix
//! conditions built on it.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::cones;
use crate::error::{Error, Result};
use crate::lattice::{gram_is_negative_definite, CurveSubset, DivisorClass, SurfaceModel};
use crate::linalg::{self, Matrix};
use crate::rational::Rational;

/// `D = P + Σ aᵢNᵢ` with `P` nef, `P·Nᵢ = 0` and the support negative definite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZariskiDecomposition {
    pub positive: DivisorClass,
    /// Curve index → coefficient, all strictly positive.
    pub negative_coeffs: BTreeMap<usize, Rational>,
    pub support: CurveSubset,
}

impl ZariskiDecomposition {
    pub fn negative_part(&self, model: &SurfaceModel) -> DivisorClass {
        self.negative_coeffs
            .iter()
            .fold(DivisorClass::zero(model.rank()), |acc, (&i, a)| {
                &acc + &model.negative_curve(i).scaled(a)
            })
    }
}

/// An affine function of `t` sampled just to the right of a base point:
/// `value` at the base point and `slope = d/dt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Germ {
    pub value: Rational,
    pub slope: Rational,
}

impl Germ {
    /// Sign of the function on `(t₀, t₀ + ε)` for small `ε > 0`.
    pub fn is_negative(&self) -> bool {
        self.value.is_negative() || (self.value.is_zero() && self.slope.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        self.value.is_positive() || (self.value.is_zero() && self.slope.is_positive())
    }
}

/// Decomposition of `D_t = D − t·C` valid on `(t₀, t₀ + ε)`; with `C = 0`
/// this is the ordinary decomposition of `D` at `t₀`.
#[derive(Clone, Debug)]
pub(crate) struct GermDecomposition {
    pub support: CurveSubset,
    /// Coefficients in support order.
    pub coeffs: Vec<Germ>,
    /// `P_t` at `t₀` and its derivative.
    pub positive: DivisorClass,
    pub positive_slope: DivisorClass,
}

impl GermDecomposition {
    /// `P_t·X` as a germ.
    pub fn positive_pairing(&self, model: &SurfaceModel, x: &DivisorClass) -> Germ {
        Germ {
            value: model.pair(&self.positive, x),
            slope: model.pair(&self.positive_slope, x),
        }
    }
}

/// Greedy support growth: start from the curves `D` meets negatively, solve
/// `S·a = (D·Nⱼ)`, and add the curves the candidate positive part meets
/// negatively until it is nef. Signs are taken to the right of `t0`, which
/// makes the routine valid over the ordered field of germs.
pub(crate) fn decompose_germ(
    model: &SurfaceModel,
    base: &DivisorClass,
    direction: &DivisorClass,
    t0: &Rational,
) -> Result<GermDecomposition> {
    let n = model.negative_curves().len();
    let d0 = base - &direction.scaled(t0);
    let slope = -direction;
    let germ_of = |value: &DivisorClass, slope: &DivisorClass, x: &DivisorClass| Germ {
        value: model.pair(value, x),
        slope: model.pair(slope, x),
    };
    let mut support: Vec<usize> = (0..n)
        .filter(|&j| germ_of(&d0, &slope, model.negative_curve(j)).is_negative())
        .collect();
    loop {
        let s = CurveSubset::from_sorted(support.clone());
        let gram = model.subset_gram(&s);
        let (coeffs, positive, positive_slope) = if s.is_empty() {
            (Vec::new(), d0.clone(), slope.clone())
        } else {
            if !gram_is_negative_definite(&gram) {
                return Err(Error::NotNegativeDefinite(support));
            }
            let rhs_value: Vec<Rational> = support
                .iter()
                .map(|&j| model.pair(&d0, model.negative_curve(j)))
                .collect();
            let rhs_slope: Vec<Rational> = support
                .iter()
                .map(|&j| model.pair(&slope, model.negative_curve(j)))
                .collect();
            let sol = linalg::solve_many(&gram, &[rhs_value, rhs_slope])
                .ok_or_else(|| Error::NotNegativeDefinite(support.clone()))?;
            let coeffs: Vec<Germ> = sol[0]
                .iter()
                .zip(&sol[1])
                .map(|(v, s)| Germ {
                    value: v.clone(),
                    slope: s.clone(),
                })
                .collect();
            let mut p = d0.clone();
            let mut ps = slope.clone();
            for (k, &j) in support.iter().enumerate() {
                p = &p - &model.negative_curve(j).scaled(&coeffs[k].value);
                ps = &ps - &model.negative_curve(j).scaled(&coeffs[k].slope);
            }
            (coeffs, p, ps)
        };
        let violators: Vec<usize> = (0..n)
            .filter(|j| !support.contains(j))
            .filter(|&j| germ_of(&positive, &positive_slope, model.negative_curve(j)).is_negative())
            .collect();
        if violators.is_empty() {
            // Greedy growth only ever produces strictly positive coefficients.
            if !coeffs.iter().all(Germ::is_positive) {
                return Err(Error::Invariant(format!(
                    "support {support:?} acquired a non-positive coefficient"
                )));
            }
            return Ok(GermDecomposition {
                support: s,
                coeffs,
                positive,
                positive_slope,
            });
        }
        support.extend(violators);
        support.sort_unstable();
    }
}

/// Zariski decomposition of a pseudoeffective class.
pub fn decompose(model: &SurfaceModel, d: &DivisorClass) -> Result<ZariskiDecomposition> {
    if !cones::is_pseudoeffective(model, d)? {
        return Err(Error::NotPseudoeffective);
    }
    let zero = DivisorClass::zero(model.rank());
    let g = decompose_germ(model, d, &zero, &Rational::zero())?;
    let negative_coeffs = g
        .support
        .indices()
        .iter()
        .zip(&g.coeffs)
        .map(|(&i, a)| (i, a.value.clone()))
        .collect();
    Ok(ZariskiDecomposition {
        positive: g.positive,
        negative_coeffs,
        support: g.support,
    })
}

/// `vol(D) = P_D²`.
pub fn volume(model: &SurfaceModel, d: &DivisorClass) -> Result<Rational> {
    let z = decompose(model, d)?;
    Ok(model.pair(&z.positive, &z.positive))
}

/// A Zariski chamber, identified with the support of the negative part on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZariskiChamber {
    pub support: CurveSubset,
}

/// All nonempty index sets of `gram` with negative definite principal
/// submatrix, by depth-first extension. Definiteness is hereditary, so a
/// failing set is never extended.
pub fn negative_definite_subsets(gram: &Matrix) -> Vec<Vec<usize>> {
    fn extend(gram: &Matrix, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let start = current.last().map_or(0, |&i| i + 1);
        for next in start..gram.len() {
            current.push(next);
            let sub: Matrix = current
                .iter()
                .map(|&i| current.iter().map(|&j| gram[i][j].clone()).collect())
                .collect();
            if gram_is_negative_definite(&sub) {
                out.push(current.clone());
                extend(gram, current, out);
            }
            current.pop();
        }
    }
    let mut out = Vec::new();
    extend(gram, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Non-nef Zariski chambers in canonical order; their number is Zar.
pub fn enumerate_chambers(model: &SurfaceModel) -> Vec<ZariskiChamber> {
    negative_definite_subsets(model.curve_gram())
        .into_iter()
        .map(|s| ZariskiChamber {
            support: CurveSubset::from_sorted(s),
        })
        .collect()
}

/// The nef chamber (empty support) followed by [`enumerate_chambers`].
pub fn chamber_census(model: &SurfaceModel) -> Vec<ZariskiChamber> {
    std::iter::once(ZariskiChamber {
        support: CurveSubset::empty(),
    })
    .chain(enumerate_chambers(model))
    .collect()
}

pub fn zar_count(model: &SurfaceModel) -> usize {
    enumerate_chambers(model).len()
}

/// Pair of negative curves violating `N₁·N₂ ≥ √(N₁²·N₂²)` for meeting curves.
pub fn star_violation(model: &SurfaceModel) -> Option<(usize, usize)> {
    let g = model.curve_gram();
    let n = g.len();
    for i in 0..n {
        for j in i + 1..n {
            let m = &g[i][j];
            if m.is_positive() && m * m < &g[i][i] * &g[j][j] {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn satisfies_star(model: &SurfaceModel) -> bool {
    star_violation(model).is_none()
}

/// First chamber support whose intersection matrix is not diagonal.
pub fn non_diagonal_chamber(model: &SurfaceModel) -> Option<CurveSubset> {
    let g = model.curve_gram();
    enumerate_chambers(model).into_iter().map(|c| c.support).find(|s| {
        let idx = s.indices();
        idx.iter()
            .enumerate()
            .any(|(a, &i)| idx[a + 1..].iter().any(|&j| !g[i][j].is_zero()))
    })
}

/// Every negative definite principal submatrix of the curve matrix is diagonal.
pub fn is_simple_weyl(model: &SurfaceModel) -> bool {
    non_diagonal_chamber(model).is_none()
}

/// Negative curves orthogonal to the positive part of a big class.
pub fn b_plus_null(model: &SurfaceModel, d: &DivisorClass) -> Result<CurveSubset> {
    let z = decompose(model, d)?;
    if !model.pair(&z.positive, &z.positive).is_positive() {
        return Err(Error::NotBig);
    }
    Ok(orthogonal_curves(model, &z.positive))
}

pub(crate) fn orthogonal_curves(model: &SurfaceModel, d: &DivisorClass) -> CurveSubset {
    CurveSubset::from_sorted(
        (0..model.negative_curves().len())
            .filter(|&i| model.pair(d, model.negative_curve(i)).is_zero())
            .collect(),
    )
}
