use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use leavitt_core::gauge::{project, shift_endo};
use leavitt_core::invariants::{
    classify_iso, hom_obstruction, k0_contains, parse_exponent, parse_rational_literal, supernatural_of, AlgebraDescriptor,
    GeneratorSequence, SupernaturalNumber,
};
use leavitt_core::json::{element_from_json_str, element_to_json, Num, SCHEMA};
use leavitt_core::lpnorm::{elem_norm, opnorm, CMatrix, NormConfig, NormInterval, PExponent};
use leavitt_core::uhf::{expect_to_level, group_average, phi, phi_inv, trace, CoreMatrix, CoreMatrixJson};
use leavitt_core::witness::{annihilating_word, default_r_max, witness_with_bound};
use leavitt_core::{format_element, parse_element, Error, LeavittElement, Result, Word};
use num_complex::Complex64;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "leavitt-lp", version, about = "Exact Leavitt algebra calculator with lp operator norms")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Opts {
    /// Alphabet size.
    #[arg(short = 'd', global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
    d: u32,
    /// Exponent p in [1, inf]: integer, fraction, decimal or `inf`.
    #[arg(long, global = true, default_value = "2")]
    p: String,
    /// Emit JSON.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, global = true, default_value_t = 32, value_parser = clap::value_parser!(u64).range(1..))]
    restarts: u64,
    #[arg(long = "max-iter", global = true, default_value_t = 10_000)]
    max_iter: usize,
    /// Cap on the σ-word search; defaults to a bound derived from the input.
    #[arg(long = "r-max", global = true)]
    r_max: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the canonical form of an element.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    Add {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    Star {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
    /// Degree-n component P_n(a).
    Project {
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
    /// ψ_r(a) = Σ_{|γ|=r} s_γ a t_γ.
    Shift {
        #[arg(long)]
        r: usize,
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
    /// Conditional expectation of a core element onto level m.
    Expect {
        #[arg(long)]
        level: usize,
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
    /// Normalized trace of a core element.
    Trace {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
    /// Average of g a g⁻¹ over the signed permutation group (level-1 input).
    Avg {
        #[arg(allow_hyphen_values = true)]
        input: Option<String>,
    },
    /// lp operator norm bounds of an element or a matrix.
    Norm {
        #[arg(allow_hyphen_values = true)]
        input: Option<String>,
    },
    /// Elements x, y with x·a·y = 1.
    Witness {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
    /// Smallest σ-word annihilating a JSON list of word pairs.
    Annihilate {
        #[arg(allow_hyphen_values = true)]
        pairs: Option<String>,
    },
    /// Supernatural number of an eventually periodic sequence `pre;period`.
    Snat {
        #[arg(long)]
        seq: String,
    },
    /// Membership of a rational in K₀ of the UHF algebra of type N.
    K0 {
        #[arg(long)]
        n: String,
        #[arg(long, allow_hyphen_values = true)]
        contains: String,
    },
    Classify {
        #[arg(long)]
        p1: String,
        #[arg(long)]
        n1: String,
        #[arg(long)]
        p2: String,
        #[arg(long)]
        n2: String,
    },
    /// Whether the known necessary condition rules out homomorphisms L^p1 UHF → B(L^p2).
    Obstruct {
        #[arg(long)]
        p1: String,
        #[arg(long)]
        p2: String,
    },
}

fn read_input(arg: Option<&str>) -> Result<String> {
    match arg {
        Some(text) if text != "-" => Ok(text.to_string()),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::Precondition(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn element(d: u32, arg: Option<&str>) -> Result<LeavittElement> {
    let text = read_input(arg)?;
    if text.trim_start().starts_with('{') {
        element_from_json_str(&text)
    } else {
        parse_element(d, &text)
    }
}

fn emit_element(a: &LeavittElement, as_json: bool) -> String {
    if as_json {
        element_to_json(a).to_string()
    } else {
        format_element(a)
    }
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), Value::String(SCHEMA.into()));
    }
    v
}

fn num_value(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or(Error::NonFinite),
        Value::String(s) => Num::Text(s.clone()).to_f64(),
        other => Err(Error::Json(format!("expected a number, got {other}"))),
    }
}

fn complex_value(v: &Value) -> Result<Complex64> {
    match v {
        Value::Array(parts) if parts.len() == 2 => Ok(Complex64::new(num_value(&parts[0])?, num_value(&parts[1])?)),
        Value::Object(map) => Ok(Complex64::new(
            num_value(map.get("re").ok_or_else(|| Error::Json("entry lacks \"re\"".into()))?)?,
            map.get("im").map(num_value).transpose()?.unwrap_or(0.0),
        )),
        other => Ok(Complex64::new(num_value(other)?, 0.0)),
    }
}

/// `{"rows": [[entry, …], …]}` with entries as numbers, `"p/q"` strings,
/// `[re, im]` pairs or `{"re", "im"}` objects.
fn matrix_from_json(v: &Value) -> Result<CMatrix> {
    let rows = v["rows"].as_array().ok_or_else(|| Error::Json("matrix JSON needs \"rows\"".into()))?;
    let parsed: Vec<Vec<Complex64>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Json("each row must be an array".into()))?
                .iter()
                .map(complex_value)
                .collect()
        })
        .collect::<Result<_>>()?;
    let ncols = parsed.first().map_or(0, Vec::len);
    if parsed.iter().any(|r| r.len() != ncols) {
        return Err(Error::DimensionMismatch("rows have different lengths".into()));
    }
    Ok(CMatrix::from_fn(parsed.len(), ncols, |i, j| parsed[i][j]))
}

fn interval_json(iv: &NormInterval) -> Value {
    json!({
        "lower": iv.lower,
        "upper": iv.upper,
        "witness": iv.witness.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>(),
        "method": iv.method,
        "converged": iv.converged,
    })
}

fn norm_config(o: &Opts) -> Result<NormConfig> {
    if !(o.tol > 0.0) {
        return Err(Error::Precondition("--tol must be positive".into()));
    }
    Ok(NormConfig { restarts: o.restarts as usize, max_iter: o.max_iter, tol: o.tol, seed: o.seed })
}

fn run(cli: Cli) -> Result<String> {
    let o = &cli.opts;
    let d = o.d;
    Ok(match &cli.cmd {
        Cmd::Normalize { expr } => emit_element(&element(d, expr.as_deref())?, o.json),
        Cmd::Mul { a, b } => emit_element(&element(d, Some(a))?.try_mul(&element(d, Some(b))?)?, o.json),
        Cmd::Add { a, b } => emit_element(&element(d, Some(a))?.try_add(&element(d, Some(b))?)?, o.json),
        Cmd::Star { expr } => emit_element(&element(d, expr.as_deref())?.star(), o.json),
        Cmd::Project { degree, expr } => emit_element(&project(&element(d, expr.as_deref())?, *degree), o.json),
        Cmd::Shift { r, expr } => emit_element(&shift_endo(&element(d, expr.as_deref())?, *r)?, o.json),
        Cmd::Expect { level, expr } => emit_element(&expect_to_level(&element(d, expr.as_deref())?, *level)?, o.json),
        Cmd::Trace { expr } => {
            let t = trace(&element(d, expr.as_deref())?)?;
            if o.json {
                with_schema(json!({ "trace": { "re": Num::from_rational(&t.re), "im": Num::from_rational(&t.im) } })).to_string()
            } else {
                t.to_string()
            }
        }
        Cmd::Avg { input } => {
            let text = read_input(input.as_deref())?;
            let mat = if text.contains("\"rows\"") {
                let parsed: CoreMatrixJson = serde_json::from_str(&text)?;
                CoreMatrix::from_json(&parsed)?
            } else {
                let a = if text.trim_start().starts_with('{') { element_from_json_str(&text)? } else { parse_element(d, &text)? };
                phi_inv(&a, 1)?
            };
            let avg = group_average(&mat)?;
            if o.json {
                with_schema(serde_json::to_value(avg.to_json())?).to_string()
            } else {
                format_element(&phi(&avg))
            }
        }
        Cmd::Norm { input } => {
            let p: PExponent = o.p.parse()?;
            let cfg = norm_config(o)?;
            let text = read_input(input.as_deref())?;
            let value: Option<Value> = if text.trim_start().starts_with('{') { Some(serde_json::from_str(&text)?) } else { None };
            let out = match value {
                Some(v) if v.get("rows").is_some() && v.get("components").is_none() => {
                    with_schema(interval_json(&opnorm(&matrix_from_json(&v)?, p, &cfg)?))
                }
                _ => {
                    let a = match value {
                        Some(_) => element_from_json_str(&text)?,
                        None => parse_element(d, &text)?,
                    };
                    let n = elem_norm(&a, p, &cfg)?;
                    let components: Vec<Value> = n
                        .components
                        .iter()
                        .map(|c| {
                            let mut v = interval_json(&c.interval);
                            v["degree"] = json!(c.degree);
                            v["level"] = json!(c.level);
                            v
                        })
                        .collect();
                    let witness = n
                        .components
                        .iter()
                        .max_by(|a, b| a.interval.lower.total_cmp(&b.interval.lower))
                        .map(|c| c.interval.witness.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>())
                        .unwrap_or_default();
                    with_schema(json!({
                        "lower": n.lower,
                        "upper": n.upper,
                        "witness": witness,
                        "method": if n.assumes_component_norm { "component-bounds" } else { "core-matrix" },
                        "assumes_component_norm": n.assumes_component_norm,
                        "components": components,
                    }))
                }
            };
            if o.json {
                out.to_string()
            } else {
                let mut line = format!("[{:.12}, {:.12}]", out["lower"].as_f64().unwrap_or(0.0), out["upper"].as_f64().unwrap_or(0.0));
                if out["assumes_component_norm"] == json!(true) {
                    line.push_str(" (upper bound assumes component norms equal matrix norms)");
                }
                line
            }
        }
        Cmd::Witness { expr } => {
            let a = element(d, expr.as_deref())?;
            let pair = witness_with_bound(&a, o.r_max)?;
            let check = format_element(&pair.certificate);
            if o.json {
                with_schema(json!({
                    "x": format_element(&pair.x),
                    "y": format_element(&pair.y),
                    "check": check,
                }))
                .to_string()
            } else {
                format!("x = {}\ny = {}\nx·a·y = {check}", format_element(&pair.x), format_element(&pair.y))
            }
        }
        Cmd::Annihilate { pairs } => {
            let text = read_input(pairs.as_deref())?;
            let raw: Vec<(Vec<u32>, Vec<u32>)> = serde_json::from_str(&text)?;
            let pairs = raw
                .into_iter()
                .map(|(a, b)| Ok((Word::new(d, a)?, Word::new(d, b)?)))
                .collect::<Result<Vec<_>>>()?;
            let cap = o.r_max.unwrap_or_else(|| default_r_max(&pairs));
            let w = annihilating_word(d, &pairs, cap)?;
            if o.json {
                with_schema(json!({ "word": w.letters(), "r": w.len() })).to_string()
            } else {
                w.to_string()
            }
        }
        Cmd::Snat { seq } => {
            let seq: GeneratorSequence = seq.parse()?;
            let n = supernatural_of(&seq);
            if o.json {
                with_schema(n.to_json()).to_string()
            } else {
                n.to_string()
            }
        }
        Cmd::K0 { n, contains } => {
            let n: SupernaturalNumber = n.parse()?;
            let q = parse_rational_literal(contains)?;
            let member = k0_contains(&n, &q);
            if o.json {
                with_schema(json!({ "contains": member })).to_string()
            } else {
                member.to_string()
            }
        }
        Cmd::Classify { p1, n1, p2, n2 } => {
            let a = AlgebraDescriptor::parse(p1, n1)?;
            let b = AlgebraDescriptor::parse(p2, n2)?;
            let iso = classify_iso(&a, &b);
            if o.json {
                with_schema(json!({ "isomorphic": iso })).to_string()
            } else if iso {
                "isomorphic".into()
            } else {
                "not isomorphic".into()
            }
        }
        Cmd::Obstruct { p1, p2 } => {
            let verdict = hom_obstruction(&parse_exponent(p1)?, &parse_exponent(p2)?)?;
            if o.json {
                with_schema(json!({ "verdict": verdict.to_string() })).to_string()
            } else {
                verdict.to_string()
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
