use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gelfand::group::{load_group_json, load_subgroup_json, Limits};
use gelfand::harness::documents::{basis_order, FunctionDocument};
use gelfand::harness::report::to_canonical_json;
use gelfand::harness::suites::suite_weight;
use gelfand::harness::{catalog, find, run_suite, Suite, SuiteConfig};
use gelfand::hecke::{certify, structure_constants};
use gelfand::sobolev::{
    class_moduli, embedding_lp_constant, embedding_sup_constant, SobolevParams, WeightDocument,
};
use gelfand::cosets::double_cosets;

/// Harmonic analysis on finite Gelfand pairs.
///
/// Exit status: 0 success (every check passed), 1 a check failed, 2 bad
/// input or configuration.
#[derive(Parser)]
#[command(name = "gelfand", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in pairs.
    Catalog,
    /// Decide whether a group and subgroup form a Gelfand pair.
    Gelfand {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        subgroup: PathBuf,
    },
    /// Spherical basis, Plancherel weights, Sobolev weight and constants.
    Analyze {
        #[arg(long)]
        pair: String,
        /// JSON document, path to one, or `cayley:I[+J...]` / `user:V,V,...`.
        #[arg(long)]
        weight: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spherical transform of a function document, or its inverse.
    Transform {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        function: PathBuf,
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites and write a report.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Pair name; repeat for several.
    #[arg(long, required_unless_present = "all")]
    pair: Vec<String>,
    #[arg(long, conflicts_with = "pair")]
    all: bool,
    /// Comma-separated suite names, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Trials per suite; each suite has its own default when omitted.
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Equality tolerance, relative to 1 + |rhs|.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Absolute slack allowed on inequalities.
    #[arg(long, default_value_t = 1e-12)]
    ineq_tol: f64,
    #[arg(long)]
    weight: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    s: f64,
    /// Repeat to sweep several values; defaults to 1.5s, 2s, 4s.
    #[arg(long)]
    alpha: Vec<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn weight_document(spec: &str) -> Result<WeightDocument> {
    let trimmed = spec.trim();
    let looks_inline = trimmed.starts_with('{') || trimmed.contains(':');
    let text = if !looks_inline && Path::new(trimmed).exists() {
        read(Path::new(trimmed))?
    } else {
        trimmed.to_string()
    };
    Ok(WeightDocument::parse(&text)?)
}

fn catalog_command() -> Result<i32> {
    let entries: Vec<Value> = catalog()
        .iter()
        .map(|e| serde_json::to_value(e).unwrap())
        .collect();
    emit(&to_canonical_json(&json!({ "pairs": entries })), None)?;
    Ok(0)
}

fn gelfand_command(group: &Path, subgroup: &Path, limits: &Limits) -> Result<i32> {
    let g = std::sync::Arc::new(load_group_json(&read(group)?, limits)?);
    let k = load_subgroup_json(&g, &read(subgroup)?)?;
    let space = std::sync::Arc::new(double_cosets(&k));
    let cert = certify(&structure_constants(&space));
    let doc = json!({
        "group": g.name(),
        "order": g.order(),
        "subgroupOrder": k.order(),
        "doubleCosets": space.len(),
        "certificate": cert,
    });
    emit(&to_canonical_json(&doc), None)?;
    Ok(0)
}

fn analyze_command(
    pair: &str,
    weight: Option<&str>,
    s: f64,
    alpha: Option<f64>,
    out: Option<&Path>,
    limits: &Limits,
) -> Result<i32> {
    let entry = find(pair)?;
    if !entry.expect_gelfand {
        bail!("'{pair}' is not a Gelfand pair; use `verify --suite gelfand` to inspect it");
    }
    let pair = entry.pair(limits)?;
    let params = SobolevParams::new(s, alpha)?;
    let doc = weight.map(weight_document).transpose()?;
    let gamma = suite_weight(&pair, doc.as_ref())?;
    let space = pair.space();
    let classes: Vec<Value> = (0..space.len())
        .map(|c| {
            json!({
                "index": c,
                "size": space.class_size(c),
                "representative": space.representative(c),
                "inverse": space.inverse_class(c),
            })
        })
        .collect();
    let mut constants = json!({
        "supEmbedding": embedding_sup_constant(&pair, &gamma, s)?,
        "translationModuli": class_moduli(&pair, &gamma, s)?,
    });
    if alpha.is_some() {
        constants["p"] = params.p()?.into();
        constants["pConjugate"] = params.p_conjugate()?.into();
        constants["lpEmbedding"] = embedding_lp_constant(&pair, &gamma, &params)?.into();
    }
    let report = json!({
        "pair": pair.name(),
        "order": pair.group().order(),
        "classes": classes,
        "basis": basis_order(pair.basis()),
        "psdMinEigenvalues": pair.basis().functions().iter().map(|f| f.psd_min_eigenvalue()).collect::<Vec<_>>(),
        "plancherel": pair.plancherel().weights,
        "weight": gamma,
        "params": params,
        "constants": constants,
    });
    emit(&to_canonical_json(&report), out)?;
    Ok(0)
}

fn transform_command(
    pair: &str,
    function: &Path,
    inverse: bool,
    out: Option<&Path>,
    limits: &Limits,
) -> Result<i32> {
    let pair = find(pair)?.pair(limits)?;
    let doc = FunctionDocument::parse(&read(function)?)?;
    let result = if inverse {
        FunctionDocument::from_classes(&pair, &doc.inverse(&pair)?)
    } else {
        FunctionDocument::from_spectrum(&pair, &doc.transform(&pair)?)
    };
    emit(&to_canonical_json(&serde_json::to_value(result)?), out)?;
    Ok(0)
}

fn verify_command(args: &VerifyArgs, limits: &Limits) -> Result<i32> {
    let config = SuiteConfig {
        pairs: if args.all {
            SuiteConfig::all_pairs()
        } else {
            args.pair.clone()
        },
        suites: Suite::parse_list(&args.suite)?,
        trials: args.trials,
        master_seed: args.seed,
        tolerance: args.tol,
        inequality_tolerance: args.ineq_tol,
        weight: args.weight.as_deref().map(weight_document).transpose()?,
        s: args.s,
        alphas: (!args.alpha.is_empty()).then(|| args.alpha.clone()),
        limits: *limits,
        ..SuiteConfig::default()
    };
    let report = run_suite(&config)?;
    emit(&report.to_json(), args.out.as_deref())?;
    let failed = report.failed();
    eprintln!(
        "{} checks, {} failed",
        report.records.len(),
        failed.len()
    );
    for r in failed {
        eprintln!(
            "FAIL {} {} {} slack={:e} (trial {})",
            r.pair,
            r.check_name,
            Value::Object(r.params.clone()),
            r.slack(),
            r.worst_trial()
        );
    }
    Ok(report.exit_code())
}

fn run(cli: Cli) -> Result<i32> {
    let limits = Limits::from_env();
    match cli.command {
        Command::Catalog => catalog_command(),
        Command::Gelfand { group, subgroup } => gelfand_command(&group, &subgroup, &limits),
        Command::Analyze {
            pair,
            weight,
            s,
            alpha,
            out,
        } => analyze_command(&pair, weight.as_deref(), s, alpha, out.as_deref(), &limits),
        Command::Transform {
            pair,
            function,
            inverse,
            out,
        } => transform_command(&pair, &function, inverse, out.as_deref(), &limits),
        Command::Verify(args) => verify_command(&args, &limits),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
