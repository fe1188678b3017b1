//! The Néron–Severi model of a surface: divisor classes, the intersection
//! pairing and exact definiteness tests.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_traits::{Signed, Zero};

use crate::cones::{self, ConeDescription};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{int, primitive_integral, Rational};

/// Coordinates of a class in the model basis of N¹.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass(Vec<Rational>);

impl DivisorClass {
    pub fn new(coords: Vec<Rational>) -> Self {
        DivisorClass(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        DivisorClass(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass(vec![Rational::zero(); rank])
    }

    pub fn basis_vector(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = int(1);
        v
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        DivisorClass(self.0.iter().map(|c| c * s).collect())
    }

    /// Primitive integral representative of the ray through `self`.
    pub fn primitive(&self) -> Self {
        DivisorClass(
            primitive_integral(&self.0)
                .into_iter()
                .map(Rational::from_integer)
                .collect(),
        )
    }

    /// Smallest positive integer multiple with integral coordinates.
    pub fn clear_denominators(&self) -> Self {
        let lcm = self
            .0
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
        self.scaled(&Rational::from_integer(lcm))
    }

    /// `Some(λ)` with `self = λ·other`, `λ > 0`.
    pub fn positive_multiple_of(&self, other: &DivisorClass) -> Option<Rational> {
        if self.rank() != other.rank() || other.is_zero() {
            return None;
        }
        let i = other.0.iter().position(|c| !c.is_zero())?;
        let lambda = &self.0[i] / &other.0[i];
        if !lambda.is_positive() {
            return None;
        }
        (other.scaled(&lambda) == *self).then_some(lambda)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: DivisorClass) -> DivisorClass {
        &self + &rhs
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        &self - &rhs
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&DivisorClass> for &Rational {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scaled(self)
    }
}

/// A class together with its display label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledClass {
    pub label: String,
    pub class: DivisorClass,
}

impl LabeledClass {
    pub fn new(label: impl Into<String>, class: DivisorClass) -> Self {
        LabeledClass {
            label: label.into(),
            class,
        }
    }
}

/// Sorted, duplicate-free set of indices into a model's negative curves.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveSubset(Vec<usize>);

impl CurveSubset {
    pub fn new(indices: Vec<usize>, curve_count: usize) -> Result<Self> {
        let increasing = indices.windows(2).all(|w| w[0] < w[1]);
        if !increasing || indices.last().is_some_and(|&i| i >= curve_count) {
            return Err(Error::InvalidSubset(indices));
        }
        Ok(CurveSubset(indices))
    }

    pub fn empty() -> Self {
        CurveSubset(Vec::new())
    }

    /// Internal constructor for index lists already known to be valid.
    pub(crate) fn from_sorted(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        CurveSubset(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// Canonical chamber order: by cardinality, then lexicographic.
    pub fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Smooth projective surface as a lattice model: basis, intersection form,
/// negative curves and generators of the pseudoeffective cone.
#[derive(Debug)]
pub struct SurfaceModel {
    name: String,
    basis_labels: Vec<String>,
    gram: Matrix,
    negative_curves: Vec<LabeledClass>,
    effective_generators: Vec<LabeledClass>,
    curve_gram: Matrix,
    cone: OnceLock<Option<ConeDescription>>,
}

impl Clone for SurfaceModel {
    fn clone(&self) -> Self {
        SurfaceModel {
            name: self.name.clone(),
            basis_labels: self.basis_labels.clone(),
            gram: self.gram.clone(),
            negative_curves: self.negative_curves.clone(),
            effective_generators: self.effective_generators.clone(),
            curve_gram: self.curve_gram.clone(),
            cone: self.cone.clone(),
        }
    }
}

impl SurfaceModel {
    /// Builds a model after shape checks only; call [`validate_model`] for
    /// the mathematical invariants.
    pub fn new(
        name: impl Into<String>,
        basis_labels: Vec<String>,
        gram: Matrix,
        negative_curves: Vec<LabeledClass>,
        effective_generators: Vec<LabeledClass>,
    ) -> Result<Self> {
        let rank = basis_labels.len();
        if rank == 0 {
            return Err(Error::MalformedModel("rank must be positive".into()));
        }
        if gram.len() != rank || gram.iter().any(|row| row.len() != rank) {
            return Err(Error::MalformedModel(format!(
                "gram must be {rank}x{rank}"
            )));
        }
        for c in negative_curves.iter().chain(&effective_generators) {
            if c.class.rank() != rank {
                return Err(Error::MalformedModel(format!(
                    "class {:?} has {} coordinates, expected {rank}",
                    c.label,
                    c.class.rank()
                )));
            }
        }
        let pair = |a: &DivisorClass, b: &DivisorClass| {
            linalg::dot(a.coords(), &linalg::mat_vec(&gram, b.coords()))
        };
        let curve_gram = negative_curves
            .iter()
            .map(|a| negative_curves.iter().map(|b| pair(&a.class, &b.class)).collect())
            .collect();
        Ok(SurfaceModel {
            name: name.into(),
            basis_labels,
            gram,
            negative_curves,
            effective_generators,
            curve_gram,
            cone: OnceLock::new(),
        })
    }

    /// [`SurfaceModel::new`] followed by validation.
    pub fn validated(
        name: impl Into<String>,
        basis_labels: Vec<String>,
        gram: Matrix,
        negative_curves: Vec<LabeledClass>,
        effective_generators: Vec<LabeledClass>,
    ) -> Result<Self> {
        let model = Self::new(name, basis_labels, gram, negative_curves, effective_generators)?;
        let report = validate_model(&model);
        if report.is_valid() {
            Ok(model)
        } else {
            Err(Error::InvalidModel(
                report.violations.iter().map(ToString::to_string).collect(),
            ))
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn negative_curves(&self) -> &[LabeledClass] {
        &self.negative_curves
    }

    pub fn negative_curve(&self, i: usize) -> &DivisorClass {
        &self.negative_curves[i].class
    }

    pub fn effective_generators(&self) -> &[LabeledClass] {
        &self.effective_generators
    }

    /// Intersection matrix of all negative curves, in list order.
    pub fn curve_gram(&self) -> &Matrix {
        &self.curve_gram
    }

    pub fn check_rank(&self, d: &DivisorClass) -> Result<()> {
        if d.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: d.rank(),
            })
        }
    }

    /// Pairing without the dimension check; callers guarantee matching ranks.
    pub(crate) fn pair(&self, a: &DivisorClass, b: &DivisorClass) -> Rational {
        linalg::dot(a.coords(), &linalg::mat_vec(&self.gram, b.coords()))
    }

    /// Gram matrix of the curves in `s`.
    pub fn subset_gram(&self, s: &CurveSubset) -> Matrix {
        s.indices()
            .iter()
            .map(|&i| s.indices().iter().map(|&j| self.curve_gram[i][j].clone()).collect())
            .collect()
    }

    /// Index of the negative curve whose class equals `d` exactly.
    pub fn negative_curve_index(&self, d: &DivisorClass) -> Option<usize> {
        self.negative_curves.iter().position(|c| c.class == *d)
    }

    /// Facet/generator description of the pseudoeffective cone, computed on
    /// first use.
    pub fn cone(&self) -> Result<&ConeDescription> {
        self.cone
            .get_or_init(|| cones::describe_effective_cone(self))
            .as_ref()
            .ok_or_else(|| {
                Error::InvalidModel(vec![
                    "effective generators do not span N^1 (cone is not full-dimensional)".into(),
                ])
            })
    }
}

/// `D1 · D2` under the model's intersection form.
pub fn intersect(model: &SurfaceModel, d1: &DivisorClass, d2: &DivisorClass) -> Result<Rational> {
    model.check_rank(d1)?;
    model.check_rank(d2)?;
    Ok(model.pair(d1, d2))
}

/// Exact test via leading principal minors: the k-th minor must have sign (−1)ᵏ.
pub fn gram_is_negative_definite(m: &Matrix) -> bool {
    let minors = linalg::leading_principal_minors(m);
    minors.len() == m.len()
        && minors.iter().enumerate().all(|(k, minor)| {
            if k % 2 == 0 {
                minor.is_negative()
            } else {
                minor.is_positive()
            }
        })
}

pub fn is_negative_definite(model: &SurfaceModel, s: &CurveSubset) -> bool {
    gram_is_negative_definite(&model.subset_gram(s))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotSymmetric { row: usize, col: usize },
    Signature { positive: usize, negative: usize, zero: usize },
    NonNegativeSelfIntersection { curve: String, square: Rational },
    CurveNotAmongGenerators { curve: String },
    GeneratorsNotSpanning { rank: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSymmetric { row, col } => {
                write!(f, "gram is not symmetric at ({row}, {col})")
            }
            Violation::Signature {
                positive,
                negative,
                zero,
            } => write!(
                f,
                "signature ({positive}, {negative}) with {zero} null directions; expected (1, rank-1)"
            ),
            Violation::NonNegativeSelfIntersection { curve, square } => {
                write!(f, "negative curve {curve} has self-intersection {square} >= 0")
            }
            Violation::CurveNotAmongGenerators { curve } => {
                write!(f, "negative curve {curve} is not among the effective generators")
            }
            Violation::GeneratorsNotSpanning { rank } => {
                write!(f, "effective generators span a subspace of rank {rank} only")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_model(model: &SurfaceModel) -> ValidationReport {
    let mut violations = Vec::new();
    let n = model.rank();
    let gram = model.gram();
    let mut symmetric = true;
    for i in 0..n {
        for j in i + 1..n {
            if gram[i][j] != gram[j][i] {
                violations.push(Violation::NotSymmetric { row: i, col: j });
                symmetric = false;
            }
        }
    }
    if symmetric {
        let (positive, negative, zero) = linalg::inertia(gram);
        if positive != 1 || negative != n - 1 {
            violations.push(Violation::Signature {
                positive,
                negative,
                zero,
            });
        }
    }
    for (i, curve) in model.negative_curves().iter().enumerate() {
        let square = model.curve_gram()[i][i].clone();
        if !square.is_negative() {
            violations.push(Violation::NonNegativeSelfIntersection {
                curve: curve.label.clone(),
                square,
            });
        }
        let ray = curve.class.primitive();
        let listed = model
            .effective_generators()
            .iter()
            .any(|g| !g.class.is_zero() && g.class.primitive() == ray);
        if !listed {
            violations.push(Violation::CurveNotAmongGenerators {
                curve: curve.label.clone(),
            });
        }
    }
    let gens: Matrix = model
        .effective_generators()
        .iter()
        .map(|g| g.class.coords().to_vec())
        .collect();
    let r = linalg::rank(&gens);
    if r != n {
        violations.push(Violation::GeneratorsNotSpanning { rank: r });
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::frac;

    fn subset(v: &[usize]) -> CurveSubset {
        CurveSubset::from_sorted(v.to_vec())
    }

    #[test]
    fn quartic_pairings() {
        let q = fixtures::quartic();
        let d = DivisorClass::from_ints(&[2, 2, 1]);
        let l1 = DivisorClass::from_ints(&[1, 0, 0]);
        let l2 = DivisorClass::from_ints(&[0, 1, 0]);
        let c = DivisorClass::from_ints(&[0, 0, 1]);
        assert_eq!(intersect(&q, &d, &l1).unwrap(), int(0));
        assert_eq!(intersect(&q, &d, &l2).unwrap(), int(0));
        assert_eq!(intersect(&q, &d, &c).unwrap(), int(6));
        assert_eq!(intersect(&q, &DivisorClass::zero(3), &d).unwrap(), int(0));
        assert_eq!(
            intersect(&q, &d, &DivisorClass::from_ints(&[1, 0])),
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn quartic_definiteness() {
        let q = fixtures::quartic();
        assert!(is_negative_definite(&q, &subset(&[0, 1])));
        assert!(!is_negative_definite(&q, &subset(&[0, 2])));
        assert!(!is_negative_definite(&q, &subset(&[0, 1, 2])));
        assert!(is_negative_definite(&q, &CurveSubset::empty()));
    }

    #[test]
    fn subsets_reject_bad_indices() {
        assert!(CurveSubset::new(vec![1, 0], 3).is_err());
        assert!(CurveSubset::new(vec![0, 0], 3).is_err());
        assert!(CurveSubset::new(vec![0, 3], 3).is_err());
        assert!(CurveSubset::new(vec![0, 2], 3).is_ok());
    }

    #[test]
    fn validation_reports() {
        assert!(validate_model(&fixtures::quartic()).is_valid());
        assert!(validate_model(&fixtures::del_pezzo_6()).is_valid());

        let labels = vec!["A".to_string(), "B".to_string()];
        let gens = vec![
            LabeledClass::new("A", DivisorClass::from_ints(&[1, 0])),
            LabeledClass::new("B", DivisorClass::from_ints(&[0, 1])),
        ];
        let id = linalg::identity(2);
        let bad = SurfaceModel::new("id", labels.clone(), id, vec![], gens.clone()).unwrap();
        let report = validate_model(&bad);
        assert_eq!(
            report.violations,
            vec![Violation::Signature {
                positive: 2,
                negative: 0,
                zero: 0
            }]
        );

        let asym = vec![vec![int(1), int(1)], vec![int(0), int(-1)]];
        let m = SurfaceModel::new("asym", labels.clone(), asym, vec![], gens.clone()).unwrap();
        assert!(matches!(
            validate_model(&m).violations[0],
            Violation::NotSymmetric { row: 0, col: 1 }
        ));

        let hyperbolic = vec![vec![int(0), int(1)], vec![int(1), int(-1)]];
        let stray = LabeledClass::new("X", DivisorClass::from_ints(&[1, 1]));
        let m = SurfaceModel::new("stray", labels, hyperbolic, vec![stray], gens).unwrap();
        let v = validate_model(&m).violations;
        assert!(v.contains(&Violation::NonNegativeSelfIntersection {
            curve: "X".into(),
            square: int(1)
        }));
        assert!(v.contains(&Violation::CurveNotAmongGenerators { curve: "X".into() }));
    }

    #[test]
    fn class_arithmetic() {
        let a = DivisorClass::new(vec![frac(1, 2), int(-3)]);
        let b = DivisorClass::from_ints(&[1, -6]);
        assert_eq!(a.primitive(), b);
        assert_eq!(b.positive_multiple_of(&a), Some(int(2)));
        assert_eq!(a.positive_multiple_of(&(-&b)), None);
        assert_eq!(&(&a + &a) - &b, DivisorClass::zero(2));
    }
}
