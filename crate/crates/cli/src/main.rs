//! Batch CLI for the two-photon algebra workbench.
//!
//! Subcommands: `classify`, `family`, `cocommutator`, `verify`, `rmatrix`,
//! `eigenstate`. All state flows through files or stdin/stdout; exit codes
//! are 0 (pass), 1 (verification failure), 2 (input error), 3 (arithmetic
//! domain error).

use std::collections::BTreeMap;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use twophoton::bialgebra::{
    classification_residuals, cocommutator, family, family_ii_solved, BialgebraParams,
    FamilyKind, Verdict,
};
use twophoton::eigenstates::{
    matrix_residual, ode_from_problem, solution_to_json, solve_series, EigenProblem,
};
use twophoton::error::Error;
use twophoton::expr::coproduct_table;
use twophoton::fockrep::{
    check_relations, rep, to_number_basis, truncation_growth_ok, RepKind,
};
use twophoton::lie::{Gen, LieElement};
use twophoton::quantum::{coassoc_check, hom_check, intertwine_check, qybe_check, RMatrixSpec};
use twophoton::scalar::{parse_scalar, Scalar, VarSet};
use twophoton::tensor::TensorElement;

#[derive(Parser)]
#[command(name = "twophoton", version, about = "Exact workbench for two-photon algebra deformations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct IoOpts {
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Parse and print numbers as floats (decimals accepted, converted
    /// exactly; output rendered in double precision)
    #[arg(long, conflicts_with = "exact")]
    float: bool,
    /// Exact mode (default): inputs must be integers or p/q rationals
    #[arg(long)]
    exact: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the 19 classification equations, discriminant, verdict and
    /// primitive set of a 15-parameter tuple
    Classify {
        /// Path to a params JSON object, inline JSON, or `-` for stdin
        #[arg(long)]
        params: String,
        #[command(flatten)]
        io: IoOpts,
    },
    /// Construct a classified family from its free parameters
    Family {
        /// One of: I-standard, I-nonstandard, II, II-solved, III-standard,
        /// III-nonstandard
        kind: String,
        /// Free parameter assignment, repeatable: --set c1=1/2
        #[arg(long = "set", value_name = "NAME=VALUE")]
        sets: Vec<String>,
        #[command(flatten)]
        io: IoOpts,
    },
    /// Cocommutator of a generator under a parameter tuple
    Cocommutator {
        #[arg(long)]
        params: String,
        /// Generator name: N, A+, A-, B+, B-, M
        #[arg(long)]
        generator: String,
        #[command(flatten)]
        io: IoOpts,
    },
    /// Representation-level audit: relation table on the guarded block,
    /// truncation growth, and (for deformations) coproduct checks
    Verify {
        /// classical, ua1 or ua2
        kind: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 4)]
        guard: usize,
        /// Deformation parameter (rational)
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        param: String,
        /// Include generator matrices in the report: `monomial` (exact
        /// rational strings) or `number` (float, number basis)
        #[arg(long, value_name = "BASIS")]
        matrices: Option<String>,
        #[command(flatten)]
        io: IoOpts,
    },
    /// Quantum R-matrix audit: Yang-Baxter on the tensor cube and
    /// intertwining on the guarded block
    Rmatrix {
        /// ua1 or ua2
        kind: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        guard: usize,
        #[arg(long, allow_hyphen_values = true)]
        param: String,
        #[command(flatten)]
        io: IoOpts,
    },
    /// Solve the eigenstate differential equation as a truncated power series
    Eigenstate {
        /// classical, ua1 or ua2
        kind: String,
        /// Five comma-separated coefficients: β1,β2,β3,β4,β5
        #[arg(long, allow_hyphen_values = true)]
        betas: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        param: String,
        /// Series truncation order (>= 4)
        #[arg(long)]
        order: usize,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        c0: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        c1: String,
        /// Also run the matrix-representation residual at this dimension
        #[arg(long)]
        dim: Option<usize>,
        /// Output format: csv (default) or json (echoes the ODE spec)
        #[arg(long, default_value = "csv")]
        format: String,
        #[command(flatten)]
        io: IoOpts,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Constraint(_) => 2,
        Error::Verification(_) => 1,
        _ => 3,
    }
}

fn read_params_arg(arg: &str) -> Result<serde_json::Value, Error> {
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        buf
    } else if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("bad JSON: {e}")))
}

/// Exact-mode scalar parsing: rejects decimal/exponent literals.
fn parse_value(s: &str, io: &IoOpts) -> Result<Scalar, Error> {
    if !io.float && (s.contains('.') || s.contains('e') || s.contains('E')) {
        return Err(Error::Parse(format!(
            "`{s}` is not exact; pass --float to accept decimal input"
        )));
    }
    parse_scalar(s, &VarSet::params15())
}

fn rational_json(s: &Scalar, io: &IoOpts) -> Result<serde_json::Value, Error> {
    if io.float {
        Ok(serde_json::json!(s.to_f64()?))
    } else {
        Ok(serde_json::Value::String(s.to_string()))
    }
}

fn tensor_json(t: &TensorElement, io: &IoOpts) -> Result<serde_json::Value, Error> {
    let mut entries = Vec::new();
    for (key, c) in t.terms() {
        entries.push(serde_json::json!({
            "basis": key.iter().map(|g| g.name()).collect::<Vec<_>>(),
            "coeff": rational_json(c, io)?,
        }));
    }
    let mut obj = serde_json::json!({ "order": t.order(), "entries": entries });
    if t.is_antisymmetric() {
        let wedge: Vec<serde_json::Value> = t
            .wedge_coefficients()
            .into_iter()
            .map(|(key, c)| {
                Ok(serde_json::json!({
                    "basis": key.iter().map(|g| g.name()).collect::<Vec<_>>(),
                    "coeff": rational_json(&c, io)?,
                }))
            })
            .collect::<Result<_, Error>>()?;
        obj["wedge"] = serde_json::Value::Array(wedge);
    }
    Ok(obj)
}

fn params_json(p: &BialgebraParams, io: &IoOpts) -> Result<serde_json::Value, Error> {
    if !io.float {
        return Ok(p.to_json());
    }
    let mut m = serde_json::Map::new();
    for (name, v) in p.entries() {
        m.insert(name.to_string(), rational_json(v, io)?);
    }
    Ok(serde_json::Value::Object(m))
}

fn parse_params(v: &serde_json::Value, io: &IoOpts) -> Result<BialgebraParams, Error> {
    if !io.float {
        // exact mode rejects decimal literals anywhere in the object
        if let Some(obj) = v.as_object() {
            for (k, val) in obj {
                if let Some(s) = val.as_str() {
                    if s.contains('.') || s.contains('e') || s.contains('E') {
                        return Err(Error::Parse(format!(
                            "param `{k}` = `{s}` is not exact; pass --float"
                        )));
                    }
                } else if val.is_number() && !val.is_i64() && !val.is_u64() {
                    return Err(Error::Parse(format!(
                        "param `{k}` is a float; pass --float"
                    )));
                }
            }
        }
    }
    // numbers are also accepted (converted exactly)
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("params must be a JSON object".into()))?;
    let mut normalized = serde_json::Map::new();
    for (k, val) in obj {
        let s = match val {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            _ => return Err(Error::Parse(format!("param `{k}` must be a string"))),
        };
        normalized.insert(k.clone(), serde_json::Value::String(s));
    }
    BialgebraParams::from_json(&serde_json::Value::Object(normalized))
}

fn emit(io: &IoOpts, text: &str) -> Result<(), Error> {
    match &io.out {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
    }
}

fn cmd_classify(params: &str, io: &IoOpts) -> Result<u8, Error> {
    let v = read_params_arg(params)?;
    let p = parse_params(&v, io)?;
    let report = classification_residuals(&p)?;
    let verdict = report.verdict;
    let out = serde_json::json!({
        "params": params_json(&p, io)?,
        "report": serde_json::to_value(&report).map_err(|e| Error::Parse(e.to_string()))?,
    });
    emit(io, &serde_json::to_string_pretty(&out).unwrap())?;
    Ok(if verdict == Verdict::NotABialgebra { 1 } else { 0 })
}

fn cmd_family(kind: &str, sets: &[String], io: &IoOpts) -> Result<u8, Error> {
    let mut free = BTreeMap::new();
    for s in sets {
        let (name, value) = s
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("--set expects NAME=VALUE, got `{s}`")))?;
        free.insert(name.trim().to_string(), parse_value(value.trim(), io)?);
    }
    let p = if kind.eq_ignore_ascii_case("ii-solved") {
        let get = |n: &str| free.get(n).cloned().unwrap_or_else(Scalar::zero);
        for k in free.keys() {
            if !["a1", "a3", "a5", "b3", "c1"].contains(&k.as_str()) {
                return Err(Error::Constraint(format!(
                    "parameter `{k}` is not free in II-solved (free: a1, a3, a5, b3, c1)"
                )));
            }
        }
        family_ii_solved(get("a1"), get("a3"), get("a5"), get("b3"), get("c1"))?
    } else {
        family(FamilyKind::parse(kind)?, &free)?
    };
    emit(io, &serde_json::to_string_pretty(&params_json(&p, io)?).unwrap())?;
    Ok(0)
}

fn cmd_cocommutator(params: &str, generator: &str, io: &IoOpts) -> Result<u8, Error> {
    let v = read_params_arg(params)?;
    let p = parse_params(&v, io)?;
    let g = Gen::parse(generator)?;
    let d = cocommutator(&p, &LieElement::gen(g))?;
    let out = serde_json::json!({
        "generator": g.name(),
        "cocommutator": tensor_json(&d, io)?,
    });
    emit(io, &serde_json::to_string_pretty(&out).unwrap())?;
    Ok(0)
}

fn matrices_json(
    r: &twophoton::fockrep::TruncRep,
    basis: &str,
) -> Result<serde_json::Value, Error> {
    let mut m = serde_json::Map::new();
    match basis {
        "monomial" => {
            for (g, mat) in r.generators() {
                let rows: Vec<Vec<String>> = (0..mat.dim())
                    .map(|i| (0..mat.dim()).map(|j| mat.get(i, j).to_string()).collect())
                    .collect();
                m.insert(g.name().to_string(), serde_json::json!(rows));
            }
        }
        "number" => {
            for (g, rows) in to_number_basis(r)? {
                m.insert(g.name().to_string(), serde_json::json!(rows));
            }
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown basis `{other}` (expected monomial or number)"
            )))
        }
    }
    Ok(serde_json::Value::Object(m))
}

fn cmd_verify(
    kind: &str,
    dim: usize,
    guard: usize,
    param: &str,
    matrices: Option<&str>,
    io: &IoOpts,
) -> Result<u8, Error> {
    let kind = RepKind::parse(kind)?;
    let a = parse_value(param, io)?;
    let r = rep(kind, dim, &a)?;
    let relations = check_relations(&r, guard)?;
    let growth = truncation_growth_ok(kind, dim, 8, &a)?;
    let mut pass = relations.all_passed() && growth;
    let mut out = serde_json::json!({
        "kind": kind.name(),
        "dim": dim,
        "guard": guard,
        "parameter": a.to_string(),
        "relations": serde_json::to_value(&relations).unwrap(),
        "truncation_growth": growth,
    });
    if kind != RepKind::Classical {
        let table = coproduct_table(kind, &a)?;
        let hom = hom_check(&table, &r, guard.min(dim - 2))?;
        pass &= hom.passed();
        out["hom"] = serde_json::to_value(&hom).unwrap();
        if dim <= 6 {
            let coassoc = coassoc_check(&table, &r, guard.min(dim - 2))?;
            pass &= coassoc.passed();
            out["coassoc"] = serde_json::to_value(&coassoc).unwrap();
        } else {
            out["coassoc"] = serde_json::json!("skipped (dim > 6)");
        }
    }
    if let Some(basis) = matrices {
        out["matrices"] = matrices_json(&r, basis)?;
        out["basis"] = serde_json::json!(basis);
    }
    out["status"] = serde_json::json!(if pass { "pass" } else { "fail" });
    emit(io, &serde_json::to_string_pretty(&out).unwrap())?;
    Ok(if pass { 0 } else { 1 })
}

fn cmd_rmatrix(kind: &str, dim: usize, guard: usize, param: &str, io: &IoOpts) -> Result<u8, Error> {
    let kind = RepKind::parse(kind)?;
    let a = parse_value(param, io)?;
    let r = rep(kind, dim, &a)?;
    let spec = RMatrixSpec::new(kind, a.clone())?;
    let table = coproduct_table(kind, &a)?;
    let qybe = qybe_check(&spec, &r, guard)?;
    let intertwine = intertwine_check(&spec, &table, &r, guard)?;
    let pass = qybe.passed() && intertwine.passed();
    let out = serde_json::json!({
        "kind": kind.name(),
        "dim": dim,
        "guard": guard,
        "parameter": a.to_string(),
        "qybe": serde_json::to_value(&qybe).unwrap(),
        "intertwine": serde_json::to_value(&intertwine).unwrap(),
        "status": if pass { "pass" } else { "fail" },
    });
    emit(io, &serde_json::to_string_pretty(&out).unwrap())?;
    Ok(if pass { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_eigenstate(
    kind: &str,
    betas: &str,
    lambda: &str,
    param: &str,
    order: usize,
    c0: &str,
    c1: &str,
    dim: Option<usize>,
    format: &str,
    io: &IoOpts,
) -> Result<u8, Error> {
    let kind = RepKind::parse(kind)?;
    let parts: Vec<&str> = betas.split(',').map(|s| s.trim()).collect();
    if parts.len() != 5 {
        return Err(Error::Parse(format!(
            "--betas expects five comma-separated values, got {}",
            parts.len()
        )));
    }
    let betas: [Scalar; 5] = [
        parse_value(parts[0], io)?,
        parse_value(parts[1], io)?,
        parse_value(parts[2], io)?,
        parse_value(parts[3], io)?,
        parse_value(parts[4], io)?,
    ];
    let problem = EigenProblem {
        kind,
        param: parse_value(param, io)?,
        betas,
        lambda: parse_value(lambda, io)?,
        order,
    };
    let spec = ode_from_problem(&problem)?;
    let sol = solve_series(&spec, &parse_value(c0, io)?, &parse_value(c1, io)?, order)?;
    let mut pass = sol.residual_is_zero();
    let residual_report = match dim {
        Some(d) => {
            let r = matrix_residual(&problem, &sol, d)?;
            pass &= r.passed;
            Some(r)
        }
        None => None,
    };
    match format {
        "csv" => {
            let text = if io.float {
                sol.to_csv_float()?
            } else {
                sol.to_csv_exact()?
            };
            emit(io, text.trim_end())?;
        }
        "json" => {
            let mut out = solution_to_json(&problem, &spec, &sol);
            if let Some(r) = &residual_report {
                out["matrix_residual"] = serde_json::to_value(r).unwrap();
            }
            emit(io, &serde_json::to_string_pretty(&out).unwrap())?;
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown format `{other}` (expected csv or json)"
            )))
        }
    }
    Ok(if pass { 0 } else { 1 })
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Classify { params, io } => cmd_classify(params, io),
        Command::Family { kind, sets, io } => cmd_family(kind, sets, io),
        Command::Cocommutator {
            params,
            generator,
            io,
        } => cmd_cocommutator(params, generator, io),
        Command::Verify {
            kind,
            dim,
            guard,
            param,
            matrices,
            io,
        } => cmd_verify(kind, *dim, *guard, param, matrices.as_deref(), io),
        Command::Rmatrix {
            kind,
            dim,
            guard,
            param,
            io,
        } => cmd_rmatrix(kind, *dim, *guard, param, io),
        Command::Eigenstate {
            kind,
            betas,
            lambda,
            param,
            order,
            c0,
            c1,
            dim,
            format,
            io,
        } => cmd_eigenstate(kind, betas, lambda, param, *order, c0, c1, *dim, format, io),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
