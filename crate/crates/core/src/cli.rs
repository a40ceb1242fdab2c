//! The `inflator` command line.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::directory::DirectoryElement;
use crate::error::{Error, Result};
use crate::fields::{parse_element, FieldElement, FieldId, HahnSeries, Rational};
use crate::fundamental::{classify_tame, default_qs, membership, mv_type_test, Classification};
use crate::hahn;
use crate::inflators::{
    catalog, check_morphism, malleability_probe, refute_twist_step, Inflator, InflatorSpec, Verdict,
};
use crate::lattice::cube::max_strict_cube;
use crate::lattice::{flatten, rk0, rk_bot, FiniteLattice, LatticeJson};
use crate::linalg::Subspace;
use crate::mutation::{limit_ring_probe, mutate, Line};
use crate::report::Report;
use crate::{repro, sample, suites};

pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Parser, Debug)]
#[command(
    name = "inflator",
    version,
    about = "Inflators, fundamental rings, mutation and lattice flattening"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    #[arg(long, global = true, default_value_t = 3)]
    pub max_level: usize,
    /// Comma-separated rationals.
    #[arg(long, global = true)]
    pub qs: Option<String>,
    /// Human-readable text instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

/// `INFLATOR` arguments are a spec file path or a catalog name:
/// valuation-0, valuation-inf, product-0-1, gerald, galois, eric, fiona, restrict.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate an inflator on a subspace file.
    Eval {
        inflator: String,
        subspace: PathBuf,
    },
    /// Fundamental ring and ideal membership of an element.
    Fundamental {
        inflator: String,
        #[arg(long)]
        element: String,
    },
    Tame {
        inflator: String,
        #[arg(long)]
        element: String,
    },
    /// Search for a counterexample to multi-valuation type.
    Mvtype {
        inflator: String,
        /// Semicolon-separated literals; random samples when absent.
        #[arg(long)]
        elements: Option<String>,
    },
    Mutate {
        inflator: String,
        #[arg(long)]
        line: String,
    },
    LimitRing {
        inflator: String,
        #[arg(long)]
        element: String,
    },
    CheckMorphism {
        inflator: String,
    },
    /// Exact refutation for a directory element file, or a sampled probe.
    Malleable {
        inflator: String,
        #[arg(long)]
        y: Option<PathBuf>,
    },
    Lattice {
        #[command(subcommand)]
        op: LatticeOp,
    },
    Hahn {
        #[command(subcommand)]
        op: HahnOp,
    },
    Suite {
        name: String,
    },
    Repro {
        id: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum LatticeOp {
    Validate { file: PathBuf },
    Rank { file: PathBuf },
    Flatten { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum HahnOp {
    Endless {
        #[arg(long)]
        line: String,
    },
}

/// What a command produced: a JSON value, its text rendering and whether
/// it counts as a pass.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

impl Output {
    fn value<T: Serialize>(v: &T, ok: bool) -> Result<Output> {
        let json = serde_json::to_value(v)?;
        let text = serde_json::to_string_pretty(&json)?;
        Ok(Output { json, text, ok })
    }

    fn report(r: Report) -> Result<Output> {
        let ok = r.passed();
        Ok(Output {
            json: serde_json::to_value(&r)?,
            text: r.to_string(),
            ok,
        })
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_inflator(arg: &str) -> Result<Inflator> {
    let spec = match catalog::by_name(arg) {
        Some(s) => s,
        None => {
            let text = read(Path::new(arg))?;
            serde_json::from_str::<InflatorSpec>(&text)?
        }
    };
    Inflator::build(&spec)
}

fn parse_qs(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(|x| {
            parse_element(FieldId::Q, x.trim())?
                .as_rational()
                .ok_or_else(|| Error::Syntax {
                    offset: 0,
                    message: format!("not a rational: {x}"),
                })
        })
        .collect()
}

fn parse_list(field: FieldId, s: &str, sep: char) -> Result<Vec<FieldElement>> {
    s.split(sep)
        .map(|x| parse_element(field, x.trim()))
        .collect()
}

fn qs_or(common: &Common, k: usize) -> Result<Vec<Rational>> {
    common
        .qs
        .as_deref()
        .map(parse_qs)
        .unwrap_or_else(|| Ok(default_qs(k)))
}

fn lattice_file(path: &Path) -> Result<FiniteLattice> {
    let j: LatticeJson = serde_json::from_str(&read(path)?)?;
    FiniteLattice::from_json(&j)
}

pub fn execute(cmd: &Command, common: &Common) -> Result<Output> {
    let seed = common.seed;
    match cmd {
        Command::Eval { inflator, subspace } => {
            let f = load_inflator(inflator)?;
            let v: Subspace = serde_json::from_str(&read(subspace)?)?;
            let e = f.evaluate(v.ambient(), &v)?;
            let json = json!({"element": e, "length": e.length()});
            Ok(Output {
                text: format!("{e}\nlength {}", e.length()),
                json,
                ok: true,
            })
        }
        Command::Fundamental { inflator, element } => {
            let f = load_inflator(inflator)?;
            let a = parse_element(f.source(), element)?;
            let m = membership(&f, &a)?;
            let json = m.to_json();
            Ok(Output {
                text: serde_json::to_string_pretty(&json)?,
                json,
                ok: true,
            })
        }
        Command::Tame { inflator, element } => {
            let f = load_inflator(inflator)?;
            let a = parse_element(f.source(), element)?;
            let t = classify_tame(&f, &a, &qs_or(common, f.degree() + 1)?)?;
            let ok = t.classification == Classification::Tame;
            Output::value(&t, ok)
        }
        Command::Mvtype { inflator, elements } => {
            let f = load_inflator(inflator)?;
            let xs = match elements {
                Some(s) => parse_list(f.source(), s, ';')?,
                None => {
                    let mut rng = sample::trial_rng(seed, 0);
                    (0..common.trials.unwrap_or(20))
                        .map(|_| sample::element(&mut rng, f.source()))
                        .collect()
                }
            };
            let mut r = mv_type_test(&f, &xs, &qs_or(common, f.degree())?)?;
            r.seed = seed;
            Output::report(r)
        }
        Command::Mutate { inflator, line } => {
            let f = load_inflator(inflator)?;
            let l = Line::new(f.source(), parse_list(f.source(), line, ',')?)?;
            let g = mutate(&f, &l)?;
            let json = json!({"spec": g.spec(), "codomain": g.codomain(), "degree": g.degree()});
            Ok(Output {
                text: g.to_string(),
                json,
                ok: true,
            })
        }
        Command::LimitRing { inflator, element } => {
            let f = load_inflator(inflator)?;
            let x = parse_element(f.source(), element)?;
            let e = limit_ring_probe(&f, &x, &qs_or(common, f.degree())?)?;
            let ok = e.found.is_some();
            Output::value(&e, ok)
        }
        Command::CheckMorphism { inflator } => {
            let f = load_inflator(inflator)?;
            Output::report(check_morphism(
                &f,
                common.trials.unwrap_or(200),
                seed,
                common.max_level,
            ))
        }
        Command::Malleable { inflator, y } => {
            let f = load_inflator(inflator)?;
            match y {
                Some(path) => {
                    let y: DirectoryElement = serde_json::from_str(&read(path)?)?;
                    let v = refute_twist_step(&f, &y)?;
                    let ok = matches!(v, Verdict::Witness { .. });
                    Output::value(&v, ok)
                }
                None => Output::report(malleability_probe(&f, common.trials.unwrap_or(100), seed)),
            }
        }
        Command::Lattice { op } => lattice(op),
        Command::Hahn {
            op: HahnOp::Endless { line },
        } => {
            let l: Vec<HahnSeries> = parse_list(FieldId::Hahn, line, ',')?
                .into_iter()
                .map(|x| match x {
                    FieldElement::Hahn(h) => h,
                    _ => unreachable!(),
                })
                .collect();
            let w = hahn::endless_witness(&hahn::mutated_gamma(&l)?)?;
            let ok = w.verdict == "not_stabilized_by_O";
            Output::value(&w, ok)
        }
        Command::Suite { name } => Output::report(suites::run(
            name,
            seed,
            common.trials.unwrap_or(100),
            common.max_level,
        )?),
        Command::Repro { id } => Output::report(repro::run(id, seed, common.trials.unwrap_or(50))?),
    }
}

fn lattice(op: &LatticeOp) -> Result<Output> {
    match op {
        LatticeOp::Validate { file } => {
            let j: LatticeJson = serde_json::from_str(&read(file)?)?;
            let json = match FiniteLattice::from_json(&j) {
                Ok(l) => json!({
                    "lattice": true,
                    "elements": l.len(),
                    "height": l.height(),
                    "modular": l.is_modular(),
                    "modularity_witness": l.modularity_witness(),
                }),
                Err(Error::NotALattice { message, witness }) => {
                    json!({"lattice": false, "reason": message, "witness": witness})
                }
                Err(e) => return Err(e),
            };
            let ok = json["lattice"] == true;
            Ok(Output {
                text: serde_json::to_string_pretty(&json)?,
                json,
                ok,
            })
        }
        LatticeOp::Rank { file } => {
            let l = lattice_file(file)?;
            let r0 = rk0(&l)?;
            let cube = max_strict_cube(&l, None);
            let json = json!({
                "rk0": r0,
                "rk_bot": rk_bot(&l)?,
                "cube": {"base": cube.base, "generators": cube.generators},
            });
            Ok(Output {
                text: serde_json::to_string_pretty(&json)?,
                json,
                ok: true,
            })
        }
        LatticeOp::Flatten { file } => {
            let l = lattice_file(file)?;
            let fl = flatten(&l)?;
            let check = crate::lattice::flatten::verify_flattening(&l, &fl)?;
            let ok = check.passed();
            let json = json!({"flattening": fl, "checks": check.checks});
            Ok(Output {
                text: format!(
                    "{}\n{check}",
                    serde_json::to_string_pretty(&json["flattening"])?
                ),
                json,
                ok,
            })
        }
    }
}

/// Parses `args`, runs the command and writes the result. Returns the exit
/// code: 0 pass, 1 property failure or wild, 2 usage or parse error.
pub fn run_with<I, T>(
    args: I,
    stdout: &mut dyn std::io::Write,
    stderr: &mut dyn std::io::Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 2 {
                write!(stderr, "{e}")
            } else {
                write!(stdout, "{e}")
            };
            return code;
        }
    };
    let out = match execute(&cli.command, &cli.common) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return match e {
                Error::NotALattice { .. } | Error::NotModular(_) | Error::NoWitness(_) => 1,
                _ => 2,
            };
        }
    };
    let body = if cli.common.pretty {
        out.text
    } else {
        out.json.to_string()
    };
    match &cli.common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, format!("{body}\n")) {
                let _ = writeln!(stderr, "error: {}: {e}", path.display());
                return 2;
            }
        }
        None => {
            let _ = writeln!(stdout, "{body}");
        }
    }
    if out.ok {
        0
    } else {
        1
    }
}
