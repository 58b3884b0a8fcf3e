//! Suite orchestration. Each suite evaluates its checks on every selected
//! pair and feeds a [`Recorder`]; the report is assembled in (suite, pair)
//! order, so its bytes depend only on the configuration.

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::cosets::{double_cosets, project_bi_invariant, BiInvariantFunction};
use crate::error::{Error, Result};
use crate::group::Limits;
use crate::harness::catalog::{catalog, CatalogEntry};
use crate::harness::family::cyclic_family;
use crate::harness::random::{
    random_bi_invariant, random_complex, random_group_function, random_mollifier, trial_rng,
    Purpose,
};
use crate::harness::report::{to_canonical_json, CheckRecord, Observation, Recorder, Scope, Tolerances};
use crate::hecke::{certify, structure_constants};
use crate::pair::GelfandPair;
use crate::sobolev::{
    default_cayley_classes, embedding_l2_check, embedding_lp_check, embedding_sup_check,
    hausdorff_young_check, inverse_hausdorff_young_check, make_weight, mollifier_bound_check,
    rellich_chain_links, rellich_chain_report, sobolev_norm, translation_bound_check,
    translation_modulus, SobolevParams, SobolevWeight, WeightDocument, INEQUALITY_TOL,
};
use crate::spherical::{
    eigenvalue_check, functional_equation_residual, lp_norm_spectral, spectral_inner,
    SPHERICAL_TOL,
};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Gelfand,
    Spherical,
    Plancherel,
    Hy,
    InverseHy,
    Embeddings,
    Translation,
    Mollifier,
    RellichChain,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Gelfand,
        Suite::Spherical,
        Suite::Plancherel,
        Suite::Hy,
        Suite::InverseHy,
        Suite::Embeddings,
        Suite::Translation,
        Suite::Mollifier,
        Suite::RellichChain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gelfand => "gelfand",
            Suite::Spherical => "spherical",
            Suite::Plancherel => "plancherel",
            Suite::Hy => "hy",
            Suite::InverseHy => "inverse-hy",
            Suite::Embeddings => "embeddings",
            Suite::Translation => "translation",
            Suite::Mollifier => "mollifier",
            Suite::RellichChain => "rellich-chain",
        }
    }

    pub fn parse(name: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| Error::Unknown {
                kind: "suite",
                name: name.to_string(),
            })
    }

    /// Comma-separated names, or `all`.
    pub fn parse_list(list: &str) -> Result<Vec<Suite>> {
        if list.trim() == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        let mut out = list
            .split(',')
            .map(|s| Suite::parse(s.trim()))
            .collect::<Result<Vec<_>>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Trial counts used when the configuration does not fix one.
    pub fn default_trials(self) -> u64 {
        match self {
            Suite::Gelfand => 1,
            Suite::Spherical => 20,
            Suite::Plancherel | Suite::Embeddings => 100,
            Suite::Hy | Suite::InverseHy | Suite::Translation => 50,
            Suite::Mollifier | Suite::RellichChain => 20,
        }
    }

    fn index(self) -> usize {
        Suite::ALL.iter().position(|s| *s == self).unwrap()
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub pairs: Vec<String>,
    pub suites: Vec<Suite>,
    /// Overrides every suite's default trial count.
    pub trials: Option<u64>,
    pub master_seed: u64,
    /// Equality tolerance, relative to `1 + |rhs|`.
    pub tolerance: f64,
    /// Absolute slack allowed on inequality checks.
    pub inequality_tolerance: f64,
    /// `None` selects the Cayley weight on `D_1 ∪ D_1⁻¹`.
    pub weight: Option<WeightDocument>,
    pub s: f64,
    /// `None` sweeps `α ∈ {1.5s, 2s, 4s}`.
    pub alphas: Option<Vec<f64>>,
    pub hy_grid: Vec<f64>,
    pub inverse_hy_grid: Vec<f64>,
    pub limits: Limits,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            pairs: SuiteConfig::all_pairs(),
            suites: Suite::ALL.to_vec(),
            trials: None,
            master_seed: 42,
            tolerance: SPHERICAL_TOL,
            inequality_tolerance: INEQUALITY_TOL,
            weight: None,
            s: 1.0,
            alphas: None,
            hy_grid: vec![1.0, 1.25, 1.5, 1.75, 2.0],
            inverse_hy_grid: vec![1.25, 1.5, 1.75, 2.0],
            limits: Limits::default(),
        }
    }
}

impl SuiteConfig {
    pub fn all_pairs() -> Vec<String> {
        catalog().iter().map(|e| e.name.to_string()).collect()
    }

    pub fn trials_for(&self, suite: Suite) -> u64 {
        self.trials.unwrap_or_else(|| suite.default_trials())
    }

    pub fn alphas(&self) -> Vec<f64> {
        self.alphas
            .clone()
            .unwrap_or_else(|| vec![1.5 * self.s, 2.0 * self.s, 4.0 * self.s])
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::BadParameter(msg));
        if self.pairs.is_empty() {
            return bad("no pairs selected".into());
        }
        if self.suites.is_empty() {
            return bad("no suites selected".into());
        }
        for p in &self.pairs {
            crate::harness::catalog::find(p)?;
        }
        if self.trials == Some(0) {
            return bad("trials must be >= 1".into());
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return bad(format!("tolerance {} must be > 0", self.tolerance));
        }
        if !(self.inequality_tolerance.is_finite() && self.inequality_tolerance >= 0.0) {
            return bad(format!(
                "inequality tolerance {} must be >= 0",
                self.inequality_tolerance
            ));
        }
        for a in self.alphas() {
            SobolevParams::new(self.s, Some(a))?;
        }
        if let Some(p) = self.hy_grid.iter().find(|p| !(1.0..=2.0).contains(*p)) {
            return Err(Error::BadExponent(*p, "[1, 2]"));
        }
        if let Some(p) = self.inverse_hy_grid.iter().find(|p| !(**p > 1.0 && **p <= 2.0)) {
            return Err(Error::BadExponent(*p, "(1, 2]"));
        }
        Ok(())
    }

    fn echo(&self) -> Value {
        let trials: Map<String, Value> = self
            .suites
            .iter()
            .map(|s| (s.name().to_string(), self.trials_for(*s).into()))
            .collect();
        json!({
            "pairs": self.pairs,
            "suites": self.suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
            "trials": trials,
            "masterSeed": self.master_seed,
            "tolerance": self.tolerance,
            "inequalityTolerance": self.inequality_tolerance,
            "weight": match &self.weight {
                Some(doc) => serde_json::to_value(doc).unwrap(),
                None => json!("default"),
            },
            "s": self.s,
            "alphas": self.alphas(),
            "pGrid": self.hy_grid,
            "inversePGrid": self.inverse_hy_grid,
            "limits": {"maxOrder": self.limits.max_order, "psdCap": self.limits.psd_cap},
        })
    }
}

/// Weight used by the suites: the configured document, or the Cayley weight
/// on `D_1 ∪ D_1⁻¹`.
pub fn suite_weight(pair: &GelfandPair, doc: Option<&WeightDocument>) -> Result<SobolevWeight> {
    match doc {
        Some(doc) => make_weight(pair, doc),
        None => make_weight(pair, &WeightDocument::cayley(default_cayley_classes(pair))),
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub config: Value,
    pub records: Vec<CheckRecord>,
    pub tables: Map<String, Value>,
    pub skipped: Vec<Value>,
}

impl SuiteReport {
    pub fn failed(&self) -> Vec<&CheckRecord> {
        self.records.iter().filter(|r| !r.pass()).collect()
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(CheckRecord::pass)
    }

    /// 0 when every check passes, 1 otherwise. Configuration errors (2) never
    /// produce a report.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_value(&self) -> Value {
        let failed: Vec<Value> = self
            .failed()
            .iter()
            .map(|r| json!({"pair": r.pair, "checkName": r.check_name, "params": r.params}))
            .collect();
        json!({
            "artifactVersion": ARTIFACT_VERSION,
            "config": self.config,
            "records": self.records.iter().map(CheckRecord::to_value).collect::<Vec<_>>(),
            "summary": {
                "records": self.records.len(),
                "passed": self.records.len() - failed.len(),
                "failed": failed.len(),
                "evaluations": self.records.iter().map(|r| r.trial_count).sum::<u64>(),
                "failedChecks": failed,
            },
            "tables": self.tables,
            "skipped": self.skipped,
        })
    }

    pub fn to_json(&self) -> String {
        to_canonical_json(&self.to_value())
    }
}

fn params(entries: &[(&str, Value)]) -> Map<String, Value> {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

struct Ctx<'a> {
    pair: &'a GelfandPair,
    gamma: &'a SobolevWeight,
    config: &'a SuiteConfig,
}

impl Ctx<'_> {
    fn f(&self, purpose: Purpose, t: u64) -> BiInvariantFunction {
        random_bi_invariant(self.pair.space(), &mut trial_rng(self.config.master_seed, purpose, t))
    }

    fn weight_params(&self) -> Vec<(&'static str, Value)> {
        vec![("s", self.config.s.into()), ("weight", self.gamma.mode.clone().into())]
    }
}

pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let entries = catalog();
    let mut recorder = Recorder::new(Tolerances {
        equality: config.tolerance,
        inequality: config.inequality_tolerance,
    });
    let mut rellich_tables = Map::new();
    let mut skipped = Vec::new();
    let mut selected: Vec<(usize, &CatalogEntry)> = config
        .pairs
        .iter()
        .map(|p| entries.iter().enumerate().find(|(_, e)| e.name == p).unwrap())
        .collect();
    selected.sort_by_key(|(i, _)| *i);
    selected.dedup_by_key(|(i, _)| *i);

    for (pi, entry) in selected {
        let subgroup = entry.build(&config.limits)?;
        if config.suites.contains(&Suite::Gelfand) {
            let space = Arc::new(double_cosets(&subgroup));
            let sc = structure_constants(&space);
            let cert = certify(&sc);
            let mut scope = scope_for(&mut recorder, Suite::Gelfand, (pi, entry.name));
            let none = Map::new();
            let mut obs = Observation::new(
                f64::from(u8::from(cert.verdict)),
                f64::from(u8::from(entry.expect_gelfand)),
                0,
            )
            .with("doubleCosets", space.len())
            .with("maxAsymmetry", cert.max_asymmetry);
            if let Some((i, j, x)) = cert.witness {
                obs = obs.with("witness", json!([i, j, x]));
            }
            scope.equality("gelfand-verdict", &none, obs);
            scope.equality(
                "mass-balance",
                &none,
                Observation::new(f64::from(u8::from(sc.mass_balance_holds())), 1.0, 0),
            );
        }
        let rest: Vec<Suite> = config
            .suites
            .iter()
            .copied()
            .filter(|s| *s != Suite::Gelfand)
            .collect();
        if rest.is_empty() {
            continue;
        }
        if !entry.expect_gelfand {
            for s in rest {
                skipped.push(json!({"pair": entry.name, "suite": s.name(), "reason": "not a Gelfand pair"}));
            }
            continue;
        }
        let pair = GelfandPair::analyze(entry.name, &subgroup, &config.limits)?;
        let gamma = suite_weight(&pair, config.weight.as_ref())?;
        let ctx = Ctx {
            pair: &pair,
            gamma: &gamma,
            config,
        };
        for suite in rest {
            let mut scope = scope_for(&mut recorder, suite, (pi, entry.name));
            let trials = config.trials_for(suite);
            match suite {
                Suite::Gelfand => unreachable!(),
                Suite::Spherical => spherical_suite(&ctx, &mut scope, trials)?,
                Suite::Plancherel => plancherel_suite(&ctx, &mut scope, trials)?,
                Suite::Hy => hy_suite(&ctx, &mut scope, trials, false)?,
                Suite::InverseHy => hy_suite(&ctx, &mut scope, trials, true)?,
                Suite::Embeddings => embeddings_suite(&ctx, &mut scope, trials)?,
                Suite::Translation => translation_suite(&ctx, &mut scope, trials)?,
                Suite::Mollifier => mollifier_suite(&ctx, &mut scope, trials)?,
                Suite::RellichChain => {
                    rellich_suite(&ctx, &mut scope, trials)?;
                    let alpha = config.alphas()[0];
                    let p = SobolevParams::new(config.s, Some(alpha))?;
                    let report = rellich_chain_report(&pair, &gamma, &p)?;
                    rellich_tables.insert(entry.name.to_string(), serde_json::to_value(report)?);
                }
            }
        }
    }
    let mut tables = Map::new();
    if !rellich_tables.is_empty() {
        tables.insert("rellich".into(), Value::Object(rellich_tables));
    }
    if config.suites.contains(&Suite::RellichChain) {
        // Descriptive only: no limit claim is checked.
        let ns: Vec<usize> = (1..=64).map(|k| 4 * k).collect();
        tables.insert("cyclicFamily".into(), serde_json::to_value(cyclic_family(&ns, config.s))?);
    }
    Ok(SuiteReport {
        config: config.echo(),
        records: recorder.into_records(),
        tables,
        skipped,
    })
}

fn scope_for<'a>(rec: &'a mut Recorder, suite: Suite, pair: (usize, &'a str)) -> Scope<'a> {
    rec.scope((suite.index(), suite.name()), pair)
}

fn spherical_suite(ctx: &Ctx, scope: &mut Scope, trials: u64) -> Result<()> {
    let pair = ctx.pair;
    let space = pair.space();
    let g = pair.group();
    let tol = ctx.config.tolerance;
    let none = Map::new();
    scope.equality(
        "basis-size",
        &none,
        Observation::new(pair.basis().len() as f64, space.len() as f64, 0),
    );
    for (j, phi) in pair.basis().functions().iter().enumerate() {
        let j64 = j as u64;
        scope.inequality(
            "functional-equation",
            &none,
            Observation::new(functional_equation_residual(phi), tol, j64).with("index", j),
        );
        scope.equality(
            "identity-value",
            &none,
            Observation::new((phi.at(0) - 1.0).norm(), 0.0, j64).with("index", j),
        );
        let conj = (0..g.order())
            .map(|x| (phi.at(g.inv(x)) - phi.at(x).conj()).norm())
            .fold(0.0, f64::max);
        scope.equality(
            "conjugation-symmetry",
            &none,
            Observation::new(conj, 0.0, j64).with("index", j),
        );
        let sup = phi.class_values().iter().map(|v| v.norm()).fold(0.0, f64::max);
        scope.inequality("sup-bound", &none, Observation::new(sup, 1.0, j64).with("index", j));
        if let Some(min) = phi.psd_min_eigenvalue() {
            scope.inequality(
                "gram-psd",
                &none,
                Observation::new(-min, tol, j64).with("index", j),
            );
        }
    }
    for t in 0..trials {
        let f = ctx.f(Purpose::Function, t);
        for (j, phi) in pair.basis().functions().iter().enumerate() {
            scope.equality(
                "eigenfunction",
                &none,
                Observation::new(eigenvalue_check(&f, phi)?, 0.0, t).with("index", j),
            );
        }
    }
    Ok(())
}

fn plancherel_suite(ctx: &Ctx, scope: &mut Scope, trials: u64) -> Result<()> {
    let pair = ctx.pair;
    let mu = pair.plancherel();
    let none = Map::new();
    for t in 0..trials {
        let f = ctx.f(Purpose::Function, t);
        let g = ctx.f(Purpose::Second, t);
        let (hf, hg) = (pair.transform(&f)?, pair.transform(&g)?);
        let (nf, ng) = (f.lp_norm(2.0)?, g.lp_norm(2.0)?);
        scope.equality(
            "plancherel",
            &none,
            Observation::new(nf, lp_norm_spectral(&hf, 2.0, mu)?, t),
        );
        let gap = (f.inner(&g)? - spectral_inner(&hf, &hg, mu)).norm() / (nf * ng);
        scope.equality("parseval", &none, Observation::new(gap, 0.0, t));
        let back = pair.inverse(&hf)?;
        scope.equality(
            "inversion",
            &none,
            Observation::new(back.sub(&f)?.max_abs() / f.max_abs(), 0.0, t),
        );
        let h = random_group_function(
            pair.space(),
            &mut trial_rng(ctx.config.master_seed, Purpose::Scalar, t),
        );
        let direct = pair.transform_group(&h)?;
        let projected = pair.transform(&project_bi_invariant(&h, pair.space())?)?;
        let gap = direct
            .values()
            .iter()
            .zip(projected.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        scope.equality("transform-projection", &none, Observation::new(gap, 0.0, t));
    }
    Ok(())
}

fn hy_suite(ctx: &Ctx, scope: &mut Scope, trials: u64, inverse: bool) -> Result<()> {
    let (grid, name) = if inverse {
        (&ctx.config.inverse_hy_grid, "inverse-hausdorff-young")
    } else {
        (&ctx.config.hy_grid, "hausdorff-young")
    };
    for &p in grid {
        let ps = params(&[("p", p.into())]);
        for t in 0..trials {
            let f = ctx.f(Purpose::Function, t);
            let out = if inverse {
                inverse_hausdorff_young_check(ctx.pair, &f, p)?
            } else {
                hausdorff_young_check(ctx.pair, &f, p)?
            };
            scope.inequality(name, &ps, Observation::new(out.lhs, out.rhs, t));
            if p == 2.0 {
                scope.equality(
                    &format!("{name}-endpoint"),
                    &ps,
                    Observation::new(out.lhs, out.rhs, t),
                );
            }
        }
    }
    Ok(())
}

fn embeddings_suite(ctx: &Ctx, scope: &mut Scope, trials: u64) -> Result<()> {
    let pair = ctx.pair;
    let s = ctx.config.s;
    let gamma = ctx.gamma;
    let flat = SobolevWeight::zero(pair);
    let wp = params(&ctx.weight_params());
    let sp = params(&[("s", s.into())]);
    let alphas: Vec<(f64, Map<String, Value>)> = ctx
        .config
        .alphas()
        .into_iter()
        .map(|a| {
            let mut m = wp.clone();
            m.insert("alpha".into(), a.into());
            (a, m)
        })
        .collect();
    for t in 0..trials {
        let f = ctx.f(Purpose::Function, t);
        let g = ctx.f(Purpose::Second, t);
        let out = embedding_l2_check(pair, &f, gamma, s)?;
        scope.inequality("embedding-l2", &wp, Observation::new(out.lhs, out.rhs, t));
        let out = embedding_l2_check(pair, &f, &flat, s)?;
        scope.equality("embedding-l2-flat", &sp, Observation::new(out.lhs, out.rhs, t));
        let out = embedding_sup_check(pair, &f, gamma, s)?;
        scope.inequality("embedding-sup", &wp, Observation::new(out.lhs, out.rhs, t));
        for (a, ps) in &alphas {
            let params = SobolevParams::new(s, Some(*a))?;
            let out = embedding_lp_check(pair, &f, gamma, &params)?;
            scope.inequality("embedding-lp", ps, Observation::new(out.lhs, out.rhs, t));
        }

        let nf = sobolev_norm(pair, &f, gamma, s)?;
        let ng = sobolev_norm(pair, &g, gamma, s)?;
        let c = random_complex(&mut trial_rng(ctx.config.master_seed, Purpose::Scalar, t));
        let scaled = scale(&f, c)?;
        scope.equality(
            "sobolev-homogeneity",
            &wp,
            Observation::new(sobolev_norm(pair, &scaled, gamma, s)?, c.norm() * nf, t),
        );
        let sum = f.sub(&scale(&g, Complex64::new(-1.0, 0.0))?)?;
        scope.inequality(
            "sobolev-triangle",
            &wp,
            Observation::new(sobolev_norm(pair, &sum, gamma, s)?, nf + ng, t),
        );
        scope.inequality(
            "sobolev-monotone",
            &wp,
            Observation::new(sobolev_norm(pair, &f, gamma, s / 2.0)?, nf, t).with("s1", s / 2.0),
        );
    }
    Ok(())
}

fn scale(f: &BiInvariantFunction, c: Complex64) -> Result<BiInvariantFunction> {
    BiInvariantFunction::new(f.space(), f.class_values().iter().map(|v| v * c).collect())
}

fn translation_suite(ctx: &Ctx, scope: &mut Scope, trials: u64) -> Result<()> {
    let pair = ctx.pair;
    let s = ctx.config.s;
    let wp = params(&ctx.weight_params());
    scope.equality(
        "translation-modulus-identity",
        &wp,
        Observation::new(translation_modulus(pair, ctx.gamma, s, 0)?, 0.0, 0),
    );
    for t in 0..trials {
        let f = ctx.f(Purpose::Function, t);
        for y in 0..pair.group().order() {
            let out = translation_bound_check(pair, &f, ctx.gamma, s, y)?;
            let obs = |lhs, rhs| Observation::new(lhs, rhs, t).with("y", y);
            scope.inequality("translation-bound", &wp, obs(out.bound.lhs, out.bound.rhs));
            scope.inequality(
                "translation-energy-bound",
                &wp,
                obs(out.energy_bound.lhs, out.energy_bound.rhs),
            );
            scope.equality(
                "translation-transform-identity",
                &wp,
                obs(out.transform_identity_residual, 0.0),
            );
            scope.equality(
                "translation-energy-identity",
                &wp,
                obs(out.energy_identity_residual, 0.0),
            );
        }
    }
    Ok(())
}

fn mollifier_suite(ctx: &Ctx, scope: &mut Scope, trials: u64) -> Result<()> {
    let pair = ctx.pair;
    let wp = params(&ctx.weight_params());
    let fs: Vec<BiInvariantFunction> = (0..trials).map(|t| ctx.f(Purpose::Function, t)).collect();
    for m in 0..trials {
        let eta = random_mollifier(
            pair.space(),
            &mut trial_rng(ctx.config.master_seed, Purpose::Mollifier, m),
        )?;
        for (t, f) in fs.iter().enumerate() {
            let out = mollifier_bound_check(pair, f, ctx.gamma, ctx.config.s, &eta)?;
            scope.inequality(
                "mollifier-bound",
                &wp,
                Observation::new(out.lhs, out.rhs, t as u64).with("mollifier", m),
            );
        }
    }
    Ok(())
}

fn rellich_suite(ctx: &Ctx, scope: &mut Scope, trials: u64) -> Result<()> {
    let pair = ctx.pair;
    for alpha in ctx.config.alphas() {
        let params_doc = SobolevParams::new(ctx.config.s, Some(alpha))?;
        let mut ps = params(&ctx.weight_params());
        ps.insert("alpha".into(), alpha.into());
        for t in 0..trials {
            let f_n = ctx.f(Purpose::Function, t);
            let f = ctx.f(Purpose::Second, t);
            let eta = random_mollifier(
                pair.space(),
                &mut trial_rng(ctx.config.master_seed, Purpose::Mollifier, t),
            )?;
            for link in rellich_chain_links(pair, ctx.gamma, &params_doc, &f_n, &f, &eta)? {
                scope.inequality(
                    &format!("rellich-{}", link.name),
                    &ps,
                    Observation::new(link.outcome.lhs, link.outcome.rhs, t),
                );
            }
        }
    }
    Ok(())
}
