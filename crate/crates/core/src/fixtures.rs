//! Built-in surface models.

use crate::lattice::{DivisorClass, LabeledClass, SurfaceModel};
use crate::rational::int;

fn build(name: &str, labels: &[&str], gram: &[&[i64]], curves: &[(&str, &[i64])], gens: &[(&str, &[i64])]) -> SurfaceModel {
    let lc = |v: &[(&str, &[i64])]| -> Vec<LabeledClass> {
        v.iter()
            .map(|(l, c)| LabeledClass::new(*l, DivisorClass::from_ints(c)))
            .collect()
    };
    SurfaceModel::validated(
        name,
        labels.iter().map(|s| s.to_string()).collect(),
        gram.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(),
        lc(curves),
        lc(gens),
    )
    .expect("built-in fixture is valid")
}

/// Quartic surface in P³ containing two lines and a conic forming a
/// hyperplane section. Basis `L1, L2, C`.
pub fn quartic() -> SurfaceModel {
    let curves: &[(&str, &[i64])] = &[("L1", &[1, 0, 0]), ("L2", &[0, 1, 0]), ("C", &[0, 0, 1])];
    build(
        "quartic",
        &["L1", "L2", "C"],
        &[&[-2, 1, 2], &[1, -2, 2], &[2, 2, -2]],
        curves,
        curves,
    )
}

/// Blow-up of P² at three non-collinear points. Basis `H, E1, E2, E3`; the
/// six (−1)-curves are the exceptional curves and the strict transforms
/// `Lij = H − Ei − Ej`.
pub fn del_pezzo_6() -> SurfaceModel {
    let curves: &[(&str, &[i64])] = &[
        ("E1", &[0, 1, 0, 0]),
        ("E2", &[0, 0, 1, 0]),
        ("E3", &[0, 0, 0, 1]),
        ("L12", &[1, -1, -1, 0]),
        ("L13", &[1, -1, 0, -1]),
        ("L23", &[1, 0, -1, -1]),
    ];
    build(
        "dp6",
        &["H", "E1", "E2", "E3"],
        &[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]],
        curves,
        curves,
    )
}

/// The projective plane: rank one, no negative curves.
pub fn plane() -> SurfaceModel {
    build("plane", &["H"], &[&[1]], &[], &[("H", &[1])])
}

/// Hirzebruch surface F₁. Basis `F, E` with `E² = −1`, `F² = 0`, `E·F = 1`.
pub fn hirzebruch_one() -> SurfaceModel {
    build(
        "f1",
        &["F", "E"],
        &[&[0, 1], &[1, -1]],
        &[("E", &[0, 1])],
        &[("E", &[0, 1]), ("F", &[1, 0])],
    )
}

/// P¹ × P¹: two rulings, no negative curves, both nef rays of square zero.
pub fn quadric() -> SurfaceModel {
    build(
        "p1xp1",
        &["F1", "F2"],
        &[&[0, 1], &[1, 0]],
        &[],
        &[("F1", &[1, 0]), ("F2", &[0, 1])],
    )
}

/// Rank-two lattice spanned by two (−1)-curves meeting with multiplicity 3;
/// its nef cone is spanned by ample classes only.
pub fn two_curves() -> SurfaceModel {
    let curves: &[(&str, &[i64])] = &[("N1", &[1, 0]), ("N2", &[0, 1])];
    build("two-curves", &["N1", "N2"], &[&[-1, 3], &[3, -1]], curves, curves)
}

/// Rank-three lattice with two disjoint (−1)-curves `E1, E2` and effective
/// cone spanned by them together with the fibre classes `H − E1`, `H − E2`.
pub fn disjoint_curves() -> SurfaceModel {
    build(
        "disjoint",
        &["H", "E1", "E2"],
        &[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]],
        &[("E1", &[0, 1, 0]), ("E2", &[0, 0, 1])],
        &[
            ("E1", &[0, 1, 0]),
            ("E2", &[0, 0, 1]),
            ("F1", &[1, -1, 0]),
            ("F2", &[1, 0, -1]),
        ],
    )
}

/// Looks up a fixture by its CLI name.
pub fn by_name(name: &str) -> Option<SurfaceModel> {
    match name {
        "quartic" => Some(quartic()),
        "dp6" => Some(del_pezzo_6()),
        "plane" => Some(plane()),
        "f1" => Some(hirzebruch_one()),
        "p1xp1" => Some(quadric()),
        "two-curves" => Some(two_curves()),
        "disjoint" => Some(disjoint_curves()),
        _ => None,
    }
}

pub const NAMES: &[&str] = &["quartic", "dp6", "plane", "f1", "p1xp1", "two-curves", "disjoint"];
