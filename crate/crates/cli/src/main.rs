//! Command-line surface: polynomial generation, identity verification,
//! path signatures, return maps, center checks, the separable example, and
//! the Lyndon/Witt tables.
//!
//! Exit codes: 0 success or verified; 1 verification failed (counterexample
//! printed); 2 usage or input-file error; 3 numeric non-convergence.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hopfcenter_core::displacement::{self, Method};
use hopfcenter_core::error::Error;
use hopfcenter_core::exact::{parse_rat, rat_to_string, Rat};
use hopfcenter_core::fdb::PowerSeriesMap;
use hopfcenter_core::paths::{chen_map, path_from_json_str, CoeffPath};
use hopfcenter_core::returnmap::{
    ode_solve, return_map, separable_closed_form, separable_series, OdeConfig, ReturnMapMethod,
};
use hopfcenter_core::shuffle::{poly_to_string, poly_to_x_string, NcPoly};
use hopfcenter_core::verify;
use hopfcenter_core::words::{lyndon_words, witt_dimension, Word};
use hopfcenter_core::TPoly;

#[derive(Parser)]
#[command(name = "hopfcenter", version, about = "Exact Hopf-algebra engine for the center problem of dv/dx = Σ a_i(x) v^(i+1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyKind {
    /// P_i with rational coefficients.
    Displacement,
    /// P~_i(·;t), symbolic t unless --t is given.
    Generalized,
    /// P_i^N: letters above N removed (requires --N).
    Truncated,
    /// S(P_i), the shuffle-antipode image.
    Antipode,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Integrals,
    Hopf,
}

#[derive(Subcommand)]
enum Command {
    /// Print a displacement-family polynomial.
    Poly {
        #[arg(long, value_enum)]
        kind: PolyKind,
        #[arg(long)]
        degree: u32,
        /// Evaluate the generalized polynomial at this rational t.
        #[arg(long)]
        t: Option<String>,
        /// Alphabet cutoff for --kind truncated.
        #[arg(long = "N")]
        n_letters: Option<u32>,
    },
    /// Run a named identity suite and report per-degree status.
    Verify {
        #[arg(long)]
        identity: String,
        /// Degree to verify to; defaults to the suite's documented scale.
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Print the iterated-integral signature of a path, by degree.
    Signature {
        #[arg(long)]
        input: String,
        #[arg(long)]
        max_degree: u32,
    },
    /// Print the first return map of a path.
    Returnmap {
        #[arg(long)]
        input: String,
        #[arg(long)]
        order: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::Integrals)]
        method: MethodArg,
        /// Also integrate the ODE numerically and print the residual.
        #[arg(long)]
        check_ode: bool,
        #[arg(long, default_value_t = 1e-3, allow_negative_numbers = true)]
        r0: f64,
        #[arg(long, default_value_t = 1e-13)]
        tol: f64,
    },
    /// Per-degree return-map coefficients and the center verdict.
    Center {
        #[arg(long)]
        input: String,
        #[arg(long)]
        order: u32,
    },
    /// Series vs Lambert-W closed form for the all-ones equation.
    Separable {
        #[arg(long)]
        order: u32,
        #[arg(long = "T")]
        horizon: String,
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
    },
    /// Lyndon words per degree.
    Lyndon {
        #[arg(long)]
        max_degree: u32,
    },
    /// Dimensions of the homogeneous free-Lie components.
    Dims {
        #[arg(long)]
        max_degree: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidInput(_) | Error::Domain(_) => ExitCode::from(2),
                Error::Numeric(_) => ExitCode::from(3),
                Error::Internal(_) => ExitCode::from(1),
            }
        }
    }
}

fn check_scale(what: &str, value: u32, cap: u32) -> Result<(), Error> {
    if value > cap {
        return Err(Error::InvalidInput(format!(
            "{what} {value} is outside desk scale (max {cap})"
        )));
    }
    Ok(())
}

fn load_path(file: &str) -> Result<CoeffPath, Error> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Error::InvalidInput(format!("cannot read {file}: {e}")))?;
    path_from_json_str(&text)
}

fn rat_terms_json(p: &NcPoly<Rat>) -> Vec<Value> {
    p.terms()
        .map(|(w, c)| json!({ "word": w.to_string(), "coeff": rat_to_string(c) }))
        .collect()
}

fn t_terms_json(p: &TPoly) -> Vec<Value> {
    p.terms()
        .map(|(w, c)| {
            let coeffs: Vec<String> = c.coeffs().iter().map(rat_to_string).collect();
            json!({ "word": w.to_string(), "coeff": coeffs })
        })
        .collect()
}

fn series_json(s: &PowerSeriesMap) -> Vec<String> {
    s.coeffs().iter().map(rat_to_string).collect()
}

fn dispatch(cli: &Cli) -> Result<ExitCode, Error> {
    let json_out = cli.format == Format::Json;
    match &cli.command {
        Command::Poly { kind, degree, t, n_letters } => {
            let degree = *degree;
            if degree == 0 {
                return Err(Error::InvalidInput("--degree must be at least 1".into()));
            }
            check_scale("--degree", degree, 16)?;
            let (label, text, terms) = match kind {
                PolyKind::Displacement => {
                    let p = displacement::displacement(degree, Method::Recurrence);
                    (format!("P_{degree}"), poly_to_x_string(&p), rat_terms_json(&p))
                }
                PolyKind::Generalized => match t {
                    Some(t0) => {
                        let t0 = parse_rat(t0)?;
                        let p = displacement::gen_displacement_at(degree, &t0);
                        (
                            format!("P~_{degree}(t={})", rat_to_string(&t0)),
                            poly_to_x_string(&p),
                            rat_terms_json(&p),
                        )
                    }
                    None => {
                        let p = displacement::gen_displacement(degree);
                        (format!("P~_{degree}"), poly_to_x_string(&p), t_terms_json(&p))
                    }
                },
                PolyKind::Truncated => {
                    let n = n_letters.ok_or_else(|| {
                        Error::InvalidInput("--kind truncated requires --N".into())
                    })?;
                    let p = displacement::truncated_displacement(degree, n, Method::Recurrence);
                    (format!("P_{degree}^{n}"), poly_to_x_string(&p), rat_terms_json(&p))
                }
                PolyKind::Antipode => {
                    let p = displacement::antipode_image(degree);
                    (format!("S(P_{degree})"), poly_to_string(&p), rat_terms_json(&p))
                }
            };
            if json_out {
                println!(
                    "{}",
                    json!({ "label": label, "degree": degree, "text": text, "terms": terms })
                );
            } else {
                println!("{label} = {text}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { identity, max_degree } => {
            let max = match max_degree {
                Some(n) => *n,
                None => verify::default_max_degree(identity).ok_or_else(|| {
                    Error::InvalidInput(format!("unknown identity name {identity:?}"))
                })?,
            };
            let report = verify::run(identity, max)?;
            if json_out {
                let degrees: Vec<Value> = report
                    .lines
                    .iter()
                    .map(|l| {
                        json!({ "degree": l.degree, "ok": l.failure.is_none(),
                                "diff": l.failure.clone().unwrap_or_default() })
                    })
                    .collect();
                println!(
                    "{}",
                    json!({ "identity": identity, "max_degree": max,
                            "passed": report.passed(), "degrees": degrees })
                );
            } else {
                print!("{report}");
            }
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Signature { input, max_degree } => {
            check_scale("--max-degree", *max_degree, 14)?;
            let path = load_path(input)?;
            let e = chen_map(&path, *max_degree);
            if json_out {
                let values: Vec<Value> = e
                    .values()
                    .map(|(w, v)| json!({ "word": w.to_string(), "value": rat_to_string(v) }))
                    .collect();
                println!("{}", json!({ "max_degree": max_degree, "values": values }));
            } else {
                let mut out = String::new();
                let mut current: Option<u32> = None;
                for (w, v) in e.values() {
                    if current != Some(w.degree()) {
                        current = Some(w.degree());
                        writeln!(out, "degree {}:", w.degree()).unwrap();
                    }
                    writeln!(out, "  {w} = {}", rat_to_string(v)).unwrap();
                }
                print!("{out}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Returnmap { input, order, method, check_ode, r0, tol } => {
            check_scale("--order", *order, 14)?;
            let path = load_path(input)?;
            let method = match method {
                MethodArg::Integrals => ReturnMapMethod::Integrals,
                MethodArg::Hopf => ReturnMapMethod::Hopf,
            };
            let series = return_map(&path, *order, method);
            let mut ode_json = Value::Null;
            let mut ode_text = String::new();
            if *check_ode {
                let cfg = OdeConfig::new((*order).max(1), *r0, *tol)?;
                let numeric = ode_solve(&path, &cfg)?;
                let from_series = series.eval_f64(*r0);
                let residual = (from_series - numeric).abs();
                ode_json = json!({ "r0": r0, "series": from_series, "ode": numeric, "residual": residual });
                ode_text = format!(
                    "ode check at r0 = {r0}: series = {from_series:.15e}, ode = {numeric:.15e}, residual = {residual:.3e}"
                );
            }
            if json_out {
                let mut obj = json!({ "order": order, "coeffs": series_json(&series) });
                if !ode_json.is_null() {
                    obj["ode"] = ode_json;
                }
                println!("{obj}");
            } else {
                println!("P(a) = {series}");
                if !ode_text.is_empty() {
                    println!("{ode_text}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Center { input, order } => {
            check_scale("--order", *order, 14)?;
            let path = load_path(input)?;
            let series = return_map(&path, *order, ReturnMapMethod::Integrals);
            let is_center = series.is_identity();
            if json_out {
                println!(
                    "{}",
                    json!({ "order": order, "coeffs": series_json(&series), "center": is_center })
                );
            } else {
                for i in 1..=*order {
                    println!("p_{i} = {}", rat_to_string(&series.coeff(i)));
                }
                println!("center to order {order}: {}", if is_center { "yes" } else { "no" });
            }
            Ok(if is_center { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Separable { order, horizon, r } => {
            check_scale("--order", *order, 30)?;
            let t = parse_rat(horizon)?;
            let tf = hopfcenter_core::exact::rat_to_f64(&t);
            let coeffs: Vec<Rat> = (1..=*order).map(|i| separable_series(i, &t)).collect();
            let series = PowerSeriesMap::new(coeffs);
            let series_value = series.eval_f64(*r);
            let closed = separable_closed_form(tf, *r)?;
            let residual = (series_value - closed).abs();
            if json_out {
                println!(
                    "{}",
                    json!({ "order": order, "T": rat_to_string(&t), "r": r,
                            "coeffs": series_json(&series),
                            "series_value": series_value, "closed_form": closed,
                            "residual": residual })
                );
            } else {
                println!("series (order {order}) = {series}");
                println!("series value at r = {r}: {series_value:.15e}");
                println!("closed form:           {closed:.15e}");
                println!("residual: {residual:.3e}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Lyndon { max_degree } => {
            check_scale("--max-degree", *max_degree, 16)?;
            let groups = lyndon_words(*max_degree);
            if json_out {
                let degrees: Vec<Value> = groups
                    .iter()
                    .enumerate()
                    .map(|(idx, g)| {
                        json!({ "degree": idx as u32 + 1,
                                "words": g.iter().map(Word::to_string).collect::<Vec<_>>() })
                    })
                    .collect();
                println!("{}", json!({ "max_degree": max_degree, "degrees": degrees }));
            } else {
                for (idx, group) in groups.iter().enumerate() {
                    let words: Vec<String> = group.iter().map(Word::to_string).collect();
                    println!("degree {}: {}", idx + 1, words.join(" "));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dims { max_degree } => {
            check_scale("--max-degree", *max_degree, 63)?;
            if json_out {
                let mut dims = Vec::new();
                for n in 1..=*max_degree {
                    dims.push(json!({ "degree": n, "dim": witt_dimension(n)? }));
                }
                println!("{}", json!({ "max_degree": max_degree, "dimensions": dims }));
            } else {
                for n in 1..=*max_degree {
                    println!("degree {n}: {}", witt_dimension(n)?);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
