mod common;

use common::*;
use num_traits::{Signed, Zero};

use okounkov_core::cones::{self, Membership};
use okounkov_core::okounkov::alpha_beta_at;
use okounkov_core::svg::emit_svg;
use okounkov_core::zariski::{self, negative_definite_subsets};
use okounkov_core::{
    chamber_walk, decompose, enumerate_chambers, is_negative_definite, minkowski_sum, okounkov_polygon,
    validate_model, CurveSubset, DivisorClass, Flag, Point, Rational, RationalPolygon,
};

fn fixture_polygons() -> Vec<RationalPolygon> {
    let mut out = Vec::new();
    let mut r = rng(11);
    for m in main_fixtures() {
        for _ in 0..6 {
            let d = random_big(&mut r, &m);
            for f in admissible_flags(&m, &[&d], 3) {
                out.push(okounkov_polygon(&m, &d, &f).unwrap());
            }
        }
    }
    out
}

fn random_polygon(r: &mut rand_chacha::ChaCha8Rng) -> RationalPolygon {
    use rand::Rng;
    let n = r.random_range(1..=7);
    RationalPolygon::from_points((0..n).map(|_| {
        Point::new(
            q(r.random_range(-8..=8), r.random_range(1..=3)),
            q(r.random_range(-8..=8), r.random_range(1..=3)),
        )
    }))
}

#[test]
fn negative_definiteness_matches_diagonalization() {
    for m in all_fixtures() {
        let n = m.negative_curves().len();
        for s in subsets(n) {
            let lib = is_negative_definite(&m, &CurveSubset::new(s.clone(), n).unwrap());
            assert_eq!(lib, negative_definite_oracle(&sub_gram(&m, &s)), "{} {s:?}", m.name());
        }
    }
}

#[test]
fn fixture_signatures() {
    for m in all_fixtures() {
        assert!(validate_model(&m).is_valid(), "{}", m.name());
        assert_eq!(inertia_oracle(m.gram()), (1, m.rank() - 1, 0), "{}", m.name());
    }
}

#[test]
fn chambers_match_power_set() {
    for m in all_fixtures() {
        let n = m.negative_curves().len();
        let mut expected: Vec<Vec<usize>> = subsets(n)
            .filter(|s| !s.is_empty() && negative_definite_oracle(&sub_gram(&m, s)))
            .collect();
        expected.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let got: Vec<Vec<usize>> = enumerate_chambers(&m)
            .into_iter()
            .map(|c| c.support.indices().to_vec())
            .collect();
        assert_eq!(got, expected, "{}", m.name());
        assert_eq!(negative_definite_subsets(m.curve_gram()), expected);
    }
}

#[test]
fn zariski_matches_exhaustive_support() {
    let mut r = rng(3);
    for m in all_fixtures() {
        for _ in 0..60 {
            let d = random_pseudoeffective(&mut r, &m);
            let found = zariski_oracle(&m, &d);
            assert_eq!(found.len(), 1, "{} {d}: {} supports", m.name(), found.len());
            let (s, a, p) = &found[0];
            let z = decompose(&m, &d).unwrap();
            assert_eq!(z.support.indices(), &s[..]);
            assert_eq!(&z.positive, p);
            let coeffs: Vec<Rational> = z.negative_coeffs.values().cloned().collect();
            assert_eq!(&coeffs, a);
        }
    }
}

#[test]
fn minkowski_sum_matches_pairwise_hull() {
    let polys = fixture_polygons();
    for p in &polys {
        for q in polys.iter().step_by(3) {
            assert_eq!(minkowski_sum(p, q).vertices(), &minkowski_oracle(p, q)[..]);
        }
    }
    let mut r = rng(5);
    for _ in 0..300 {
        let (a, b) = (random_polygon(&mut r), random_polygon(&mut r));
        assert_eq!(minkowski_sum(&a, &b).vertices(), &minkowski_oracle(&a, &b)[..], "{a} + {b}");
    }
}

#[test]
fn hull_and_area_match_oracles() {
    let mut r = rng(6);
    for _ in 0..300 {
        let p = random_polygon(&mut r);
        assert_eq!(p.vertices(), &hull_oracle(p.vertices())[..]);
        assert_eq!(p.area(), area_oracle(p.vertices()));
    }
}

#[test]
fn difference_area_matches_triangulation() {
    let polys = fixture_polygons();
    for p in &polys {
        for q in &polys {
            let expected = p.area() - intersection_area_oracle(p, q);
            assert_eq!(p.difference_area(q), expected, "{p} \\ {q}");
        }
    }
    let mut r = rng(7);
    for _ in 0..400 {
        let (a, b) = (random_polygon(&mut r), random_polygon(&mut r));
        assert_eq!(a.difference_area(&b), a.area() - intersection_area_oracle(&a, &b), "{a} \\ {b}");
    }
}

/// `α` and `β` recomputed from the exhaustive-support decomposition of
/// `D − tC`.
fn probe(m: &okounkov_core::SurfaceModel, d: &DivisorClass, c: &DivisorClass, t: &Rational) -> (Vec<usize>, Rational, Rational) {
    let dt = d - &c.scaled(t);
    let found = zariski_oracle(m, &dt);
    assert_eq!(found.len(), 1);
    let (s, a, p) = &found[0];
    let alpha = m
        .negative_curve_index(c)
        .and_then(|k| s.iter().position(|&i| i == k).map(|j| a[j].clone()))
        .unwrap_or_else(Rational::zero);
    let beta = &alpha + pair(m, p, c);
    (s.clone(), alpha, beta)
}

fn check_walk_against_grid(m: &okounkov_core::SurfaceModel, d: &DivisorClass, flag: &Flag) {
    let walk = chamber_walk(m, d, flag).unwrap();
    let c = &flag.curve;
    let (lo, hi) = (walk.start.clone(), walk.end.clone());
    let mut grid: Vec<Rational> = (0..=16).map(|k| &lo + (&hi - &lo) * q(k, 16)).collect();
    for s in &walk.segments {
        grid.push(s.t_lo.clone());
        grid.push(s.t_hi.clone());
        grid.push((&s.t_lo + &s.t_hi) / z(2));
    }
    for t in &grid {
        let (support, alpha, beta) = probe(m, d, c, t);
        assert_eq!(walk.alpha_beta_at(t).unwrap(), (alpha, beta), "{} {d} t={t}", m.name());
        for s in walk.segments.iter().filter(|s| s.t_lo < *t && *t < s.t_hi) {
            assert_eq!(s.support.indices(), &support[..], "{} {d} t={t}", m.name());
        }
    }
    for w in walk.segments.windows(2) {
        let left = probe(m, d, c, &((&w[0].t_lo + &w[0].t_hi) / z(2))).0;
        let right = probe(m, d, c, &((&w[1].t_lo + &w[1].t_hi) / z(2))).0;
        assert_ne!(left, right, "spurious breakpoint at {}", w[0].t_hi);
    }
}

#[test]
fn walk_breakpoints_match_grid_probe() {
    let dp6 = okounkov_core::fixtures::del_pezzo_6();
    let d = cls(&[3, -1, -1, -1]);
    let h = Flag::very_general(cls(&[1, 0, 0, 0]));
    let walk = chamber_walk(&dp6, &d, &h).unwrap();
    let breaks: Vec<Rational> = walk.segments.iter().map(|s| s.t_hi.clone()).collect();
    assert_eq!(breaks, vec![z(1), q(3, 2)]);
    assert_eq!(alpha_beta_at(&dp6, &d, &h, &q(5, 4)).unwrap(), (z(0), z(1)));
    check_walk_against_grid(&dp6, &d, &h);

    let mut r = rng(13);
    for m in main_fixtures() {
        for _ in 0..8 {
            let d = random_big(&mut r, &m);
            for f in admissible_flags(&m, &[&d], 3) {
                check_walk_against_grid(&m, &d, &f);
            }
        }
    }
}

fn assert_inside(m: &okounkov_core::SurfaceModel, x: &DivisorClass) {
    match cones::pseudoeffective_certificate(m, x).unwrap() {
        Membership::Inside { coefficients } => {
            assert!(coefficients.iter().all(|c| !c.is_negative()));
            let gens: Vec<DivisorClass> = m.effective_generators().iter().map(|g| g.class.clone()).collect();
            assert_eq!(&combine(&gens, &coefficients, m.rank()), x);
        }
        other => panic!("{x} should be pseudoeffective: {other:?}"),
    }
}

fn assert_outside(m: &okounkov_core::SurfaceModel, x: &DivisorClass) {
    match cones::pseudoeffective_certificate(m, x).unwrap() {
        Membership::Outside { functional } => {
            assert!(pair(m, &functional, x).is_negative());
            for g in m.effective_generators() {
                assert!(!pair(m, &functional, &g.class).is_negative());
            }
        }
        other => panic!("{x} should not be pseudoeffective: {other:?}"),
    }
}

#[test]
fn mu_satisfies_probe_schedule() {
    let mut r = rng(17);
    for m in main_fixtures() {
        for _ in 0..15 {
            let d = random_big(&mut r, &m);
            for c in flag_candidates(&m) {
                let mu = cones::mu_max(&m, &d, &c).unwrap();
                assert_inside(&m, &(&d - &c.scaled(&mu)));
                let mut eps = z(1);
                for _ in 0..12 {
                    assert_outside(&m, &(&d - &c.scaled(&(&mu + &eps))));
                    eps /= z(2);
                }
            }
        }
    }
    let dp6 = okounkov_core::fixtures::del_pezzo_6();
    assert_eq!(cones::mu_max(&dp6, &cls(&[3, -1, -1, -1]), &cls(&[0, 1, 0, 0])).unwrap(), z(2));
}

#[test]
fn double_description_round_trip() {
    for m in all_fixtures() {
        let facets = cones::nef_rays(&m).unwrap();
        let back = cones::dual_rays(&m, &facets).unwrap();
        let mut expected: Vec<DivisorClass> =
            m.effective_generators().iter().map(|g| g.class.primitive()).collect();
        let mut got: Vec<DivisorClass> = back.iter().map(DivisorClass::primitive).collect();
        expected.sort();
        expected.dedup();
        got.sort();
        assert_eq!(got, expected, "{}", m.name());

        // Each facet is tight on a corank-one set of generators.
        for f in &facets {
            let tight: Vec<Vec<Rational>> = m
                .effective_generators()
                .iter()
                .filter(|g| pair(&m, f, &g.class).is_zero())
                .map(|g| g.class.coords().to_vec())
                .collect();
            assert_eq!(rank_oracle(&tight), m.rank() - 1, "{} facet {f}", m.name());
            assert!(m.effective_generators().iter().all(|g| !pair(&m, f, &g.class).is_negative()));
        }
    }
}

#[test]
fn star_models_have_diagonal_chambers() {
    for m in all_fixtures() {
        if zariski::satisfies_star(&m) {
            for ch in enumerate_chambers(&m) {
                let g = sub_gram(&m, ch.support.indices());
                for (i, row) in g.iter().enumerate() {
                    for (j, x) in row.iter().enumerate() {
                        assert!(i == j || x.is_zero(), "{} {:?}", m.name(), ch.support);
                    }
                }
            }
        }
    }
}

#[test]
fn svg_golden_file() {
    let q4 = okounkov_core::fixtures::quartic();
    let d = cls(&[2, 2, 1]);
    let flag = Flag::very_general(d.clone());
    let polys = vec![
        (okounkov_polygon(&q4, &d, &flag).unwrap(), "C+2L1+2L2".to_string()),
        (okounkov_polygon(&q4, &cls(&[2, 2, 4]), &flag).unwrap(), "4C+2L1+2L2".to_string()),
    ];
    let svg = emit_svg(&polys);
    assert_eq!(svg, emit_svg(&polys));
    let golden = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/quartic.svg");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(golden, &svg).unwrap();
    }
    assert_eq!(svg, std::fs::read_to_string(golden).unwrap());
}
