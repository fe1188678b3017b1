//! Exact computations on divisor classes of smooth projective surfaces:
//! Zariski decompositions, Zariski chambers, Okounkov polygons and
//! Minkowski bases, over rational arithmetic throughout.

pub mod analysis;
pub mod cones;
pub mod error;
pub mod expr;
pub mod fixtures;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod minkowski;
pub mod model_file;
pub mod okounkov;
pub mod polygon;
pub mod rational;
pub mod svg;
pub mod zariski;

pub use error::{Error, Result};
pub use lattice::{
    intersect, is_negative_definite, validate_model, CurveSubset, DivisorClass, LabeledClass,
    SurfaceModel, ValidationReport, Violation,
};
pub use minkowski::{minkowski_basis, minkowski_decompose, MinkowskiBasis, MinkowskiDecomposition};
pub use okounkov::{chamber_walk, okounkov_body, okounkov_polygon, ChamberWalk, Flag};
pub use polygon::{minkowski_sum, Point, RationalPolygon};
pub use rational::{format_rational, parse_rational, Rational};
pub use zariski::{decompose, enumerate_chambers, volume, ZariskiChamber, ZariskiDecomposition};
pub use analysis::{
    ample_flag_battery, fujita_report, numerically_equivalent, positive_parts_equal,
    EquivalenceReport, FujitaReport, Verdict, Witness,
};
pub use expr::{format_class, parse_class};
pub use model_file::{parse_model, write_model};
