use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::error::ErrorKind;
use clap::{ArgGroup, Args, CommandFactory, Parser, Subcommand};
use serde_json::{json, Map, Value};

use okounkov_core::cones;
use okounkov_core::minkowski::{self, Provenance};
use okounkov_core::okounkov::{Affine, ChamberWalk};
use okounkov_core::svg::emit_svg;
use okounkov_core::zariski;
use okounkov_core::{
    chamber_walk, decompose, fixtures, format_class, format_rational, fujita_report, minkowski_basis,
    minkowski_decompose, numerically_equivalent, parse_class, parse_model, parse_rational, validate_model,
    volume, CurveSubset, DivisorClass, Error, Flag, Rational, RationalPolygon, SurfaceModel, Verdict, Witness,
};

mod exit;

#[derive(Parser)]
#[command(name = "okounkov", version, about = "Zariski chambers, Okounkov polygons and Minkowski bases on surfaces")]
struct Cli {
    #[command(flatten)]
    source: Source,

    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// Built-in model.
    #[arg(long, global = true, value_parser = clap::builder::PossibleValuesParser::new(fixtures::NAMES))]
    fixture: Option<String>,

    /// Model file (TOML).
    #[arg(long, global = true, conflicts_with = "fixture")]
    model: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the model invariants.
    Validate,
    /// Zariski decomposition of a class.
    Zariski { class: String },
    /// Volume of a class.
    Volume { class: String },
    /// Zariski chambers (nonempty negative definite curve sets).
    Chambers {
        #[arg(long)]
        count_only: bool,
    },
    /// Condition (star) on pairs of meeting negative curves.
    StarCheck,
    /// Whether every chamber has a diagonal intersection matrix.
    WeylCheck,
    /// Okounkov polygon of a big class.
    Okounkov {
        class: String,
        #[arg(long)]
        flag: String,
        /// Write the polygon as SVG.
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
    },
    /// Minkowski basis for a big and nef flag.
    Mb {
        #[arg(long)]
        flag: String,
    },
    /// Predicted Minkowski basis size.
    #[command(group(ArgGroup::new("mode").required(true).args(["ample", "bignef", "bound"])))]
    MbCard {
        #[arg(long)]
        ample: bool,
        #[arg(long, requires = "flag")]
        bignef: bool,
        #[arg(long, requires = "flag")]
        bound: bool,
        #[arg(long)]
        flag: Option<String>,
    },
    /// Decompose a nef class over the Minkowski basis.
    MbDecompose {
        class: String,
        #[arg(long)]
        flag: String,
    },
    /// Numerical-equivalence battery.
    Numeq { first: String, second: String },
    /// Polygon-level Fujita approximation report.
    Fujita {
        d: String,
        a: String,
        #[arg(long)]
        flag: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Chamber count after deleting Null(flag).
    ReducedChambers {
        #[arg(long)]
        flag: String,
    },
}

fn r(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

fn class_json(d: &DivisorClass) -> Value {
    Value::Array(d.coords().iter().map(r).collect())
}

fn labels(model: &SurfaceModel, s: &CurveSubset) -> Vec<String> {
    s.indices()
        .iter()
        .map(|&i| model.negative_curves()[i].label.clone())
        .collect()
}

fn polygon_json(p: &RationalPolygon) -> Value {
    Value::Array(p.vertices().iter().map(|v| json!([r(&v.x), r(&v.y)])).collect())
}

fn affine_json(a: &Affine) -> Value {
    json!({ "intercept": r(&a.intercept), "slope": r(&a.slope) })
}

fn walk_json(model: &SurfaceModel, w: &ChamberWalk, p: &RationalPolygon) -> Value {
    let segments: Vec<Value> = w
        .segments
        .iter()
        .map(|s| {
            json!({
                "t_lo": r(&s.t_lo),
                "t_hi": r(&s.t_hi),
                "support": labels(model, &s.support),
                "alpha": affine_json(&s.alpha),
                "beta": affine_json(&s.beta),
            })
        })
        .collect();
    json!({
        "start": r(&w.start),
        "end": r(&w.end),
        "vertices": polygon_json(p),
        "area": r(&p.area()),
        "segments": segments,
    })
}

fn load(source: &Source) -> anyhow::Result<SurfaceModel> {
    match (&source.fixture, &source.model) {
        (Some(name), None) => Ok(fixtures::by_name(name).expect("fixture name checked by clap")),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_model(&text).with_context(|| format!("in model file {}", path.display()))
        }
        _ => bail!("exactly one of --fixture or --model is required"),
    }
}

struct Output {
    json: Value,
    human: String,
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let model = load(&cli.source)?;
    let m = &model;
    let class = |s: &str| parse_class(m, s).with_context(|| format!("in class expression '{s}'"));
    let out = match &cli.command {
        Command::Validate => {
            let report = validate_model(m);
            let violations: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
            let human = if violations.is_empty() {
                format!("{}: valid (rank {})", m.name(), m.rank())
            } else {
                violations.join("\n")
            };
            Output {
                json: json!({ "name": m.name(), "valid": violations.is_empty(), "violations": violations }),
                human,
            }
        }
        Command::Zariski { class: c } => {
            let z = decompose(m, &class(c)?)?;
            let mut negative = Map::new();
            for (&i, a) in &z.negative_coeffs {
                negative.insert(m.negative_curves()[i].label.clone(), r(a));
            }
            let n = z.negative_part(m);
            Output {
                json: json!({ "positive": class_json(&z.positive), "negative": negative }),
                human: format!("P = {}\nN = {}", format_class(m, &z.positive), format_class(m, &n)),
            }
        }
        Command::Volume { class: c } => {
            let v = volume(m, &class(c)?)?;
            Output {
                json: json!({ "volume": r(&v) }),
                human: format_rational(&v),
            }
        }
        Command::Chambers { count_only } => {
            let chambers = zariski::enumerate_chambers(m);
            let supports: Vec<Vec<String>> = chambers.iter().map(|c| labels(m, &c.support)).collect();
            let human = if *count_only {
                chambers.len().to_string()
            } else {
                supports
                    .iter()
                    .map(|s| format!("{{{}}}", s.join(", ")))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            let json = if *count_only {
                json!({ "count": chambers.len() })
            } else {
                json!({ "count": chambers.len(), "chambers": supports })
            };
            Output { json, human }
        }
        Command::StarCheck => {
            let v = zariski::star_violation(m).map(|(i, j)| {
                vec![m.negative_curves()[i].label.clone(), m.negative_curves()[j].label.clone()]
            });
            let human = match &v {
                None => "satisfied".to_string(),
                Some(p) => format!("violated by {} and {}", p[0], p[1]),
            };
            Output {
                json: json!({ "satisfied": v.is_none(), "violation": v }),
                human,
            }
        }
        Command::WeylCheck => {
            let s = zariski::non_diagonal_chamber(m).map(|s| labels(m, &s));
            let human = match &s {
                None => "simple Weyl".to_string(),
                Some(s) => format!("not simple Weyl: chamber {{{}}} is not diagonal", s.join(", ")),
            };
            Output {
                json: json!({ "simple_weyl": s.is_none(), "non_diagonal_chamber": s }),
                human,
            }
        }
        Command::Okounkov { class: c, flag, svg } => {
            let d = class(c)?;
            let flag = Flag::very_general(class(flag)?);
            let w = chamber_walk(m, &d, &flag)?;
            let p = w.polygon();
            if let Some(path) = svg {
                let doc = emit_svg(&[(p.clone(), format_class(m, &d))]);
                fs::write(path, doc).with_context(|| format!("writing {}", path.display()))?;
            }
            Output {
                json: walk_json(m, &w, &p),
                human: format!("{}\narea {}", p, format_rational(&p.area())),
            }
        }
        Command::Mb { flag } => {
            let basis = minkowski_basis(m, &Flag::very_general(class(flag)?))?;
            let mut human = Vec::new();
            let elements: Vec<Value> = basis
                .elements
                .iter()
                .map(|e| {
                    let (kind, support) = match &e.provenance {
                        Provenance::NefChamber => ("flag", None),
                        Provenance::NefNotBigRay => ("nef-not-big-ray", None),
                        Provenance::Chamber(s) => ("chamber", Some(labels(m, s))),
                    };
                    human.push(format!("{}  [{}]  {}", format_class(m, &e.class), kind, e.polygon));
                    json!({
                        "class": class_json(&e.class),
                        "expression": format_class(m, &e.class),
                        "provenance": kind,
                        "chamber": support,
                        "vertices": polygon_json(&e.polygon),
                    })
                })
                .collect();
            Output {
                json: json!({ "flag": class_json(&basis.flag.curve), "elements": elements }),
                human: human.join("\n"),
            }
        }
        Command::MbCard { ample, bignef, flag, .. } => {
            let nnb = cones::nnb_count(m)?;
            let zar = zariski::zar_count(m);
            let (json, n) = if *ample {
                let n = minkowski::cardinality_ample(m)?;
                (json!({ "mode": "ample", "cardinality": n, "nnb": nnb, "zar": zar }), n)
            } else {
                let c = class(flag.as_deref().expect("clap requires --flag"))?;
                if *bignef {
                    let n = minkowski::cardinality_bignef(m, &c)?;
                    let nz = minkowski::nz_count(m, &c)?;
                    (json!({ "mode": "bignef", "cardinality": n, "nnb": nnb, "zar": zar, "nz": nz }), n)
                } else {
                    let n = minkowski::cardinality_upper_bound(m, &c)?;
                    let nullzar = minkowski::nullzar_count(m, &c)?;
                    (
                        json!({ "mode": "bound", "cardinality": n, "nnb": nnb, "zar": zar, "nullzar": nullzar }),
                        n,
                    )
                }
            };
            Output {
                json,
                human: n.to_string(),
            }
        }
        Command::MbDecompose { class: c, flag } => {
            let d = class(c)?;
            let basis = minkowski_basis(m, &Flag::very_general(class(flag)?))?;
            let dec = minkowski_decompose(m, &basis, &d)?;
            let terms: Vec<Value> = dec
                .coefficients
                .iter()
                .map(|(i, a)| {
                    json!({
                        "element": i,
                        "class": class_json(&basis.elements[*i].class),
                        "coefficient": r(a),
                    })
                })
                .collect();
            let human = dec
                .coefficients
                .iter()
                .map(|(i, a)| format!("{} * ({})", format_rational(a), format_class(m, &basis.elements[*i].class)))
                .collect::<Vec<_>>()
                .join(" + ");
            Output {
                json: json!({ "coefficients": terms, "polygon": polygon_json(&dec.polygon(&basis)) }),
                human: if human.is_empty() { "0".into() } else { human },
            }
        }
        Command::Numeq { first, second } => {
            let rep = numerically_equivalent(m, &class(first)?, &class(second)?)?;
            let verdict = match rep.verdict {
                Verdict::Equivalent => "equivalent",
                Verdict::NotEquivalent => "not-equivalent",
            };
            let polygons: Vec<Value> = rep
                .battery
                .iter()
                .zip(&rep.polygon_agreement)
                .map(|(f, ok)| json!({ "flag": class_json(&f.curve), "agrees": ok }))
                .collect();
            let curves: Vec<Value> = m
                .negative_curves()
                .iter()
                .zip(&rep.negative_curve_agreement)
                .map(|(c, ok)| json!({ "curve": c.label, "agrees": ok }))
                .collect();
            let mut human = vec![verdict.to_string()];
            let witnesses: Vec<Value> = rep
                .witnesses
                .iter()
                .map(|w| match w {
                    Witness::Flag(i) => {
                        let f = &rep.battery[*i].curve;
                        human.push(format!("polygons differ for flag {}", format_class(m, f)));
                        json!({ "flag": class_json(f) })
                    }
                    Witness::Curve(j) => {
                        let l = &m.negative_curves()[*j].label;
                        human.push(format!("negative parts pair differently with {l}"));
                        json!({ "curve": l })
                    }
                })
                .collect();
            Output {
                json: json!({
                    "verdict": verdict,
                    "polygon_agreement": polygons,
                    "negative_curve_agreement": curves,
                    "witnesses": witnesses,
                }),
                human: human.join("\n"),
            }
        }
        Command::Fujita { d, a, flag, beta } => {
            let beta = parse_rational(beta).map_err(|e| Error::Parse {
                line: 1,
                column: 1,
                message: format!("--beta: {e}"),
            })?;
            let rep = fujita_report(m, &class(d)?, &class(a)?, &Flag::very_general(class(flag)?), &beta)?;
            Output {
                json: json!({
                    "inner_contained": rep.inner_contained,
                    "inner_gap": r(&rep.inner_gap),
                    "minimal_delta": r(&rep.minimal_delta),
                    "outer_gap_at_delta": r(&rep.outer_gap_at_delta),
                    "inner_within_beta": rep.inner_within_beta,
                    "outer_within_beta": rep.outer_within_beta,
                }),
                human: format!(
                    "inner contained: {}\ninner gap: {}\nminimal delta: {}\nouter gap at delta: {}",
                    rep.inner_contained,
                    format_rational(&rep.inner_gap),
                    format_rational(&rep.minimal_delta),
                    format_rational(&rep.outer_gap_at_delta)
                ),
            }
        }
        Command::ReducedChambers { flag } => {
            let n = minkowski::reduced_chamber_count(m, &class(flag)?)?;
            Output {
                json: json!({ "count": n }),
                human: n.to_string(),
            }
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.source.fixture.is_none() && cli.source.model.is_none() {
        Cli::command()
            .error(ErrorKind::MissingRequiredArgument, "one of --fixture or --model is required")
            .exit();
    }
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                println!("{}", out.human);
            }
            let invalid = matches!(cli.command, Command::Validate)
                && out.json.get("valid") == Some(&Value::Bool(false));
            if invalid {
                ExitCode::from(exit::INVALID_MODEL)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let (code, kind) = exit::classify(&e);
            eprintln!("error[{kind}]: {e:#}");
            ExitCode::from(code)
        }
    }
}
