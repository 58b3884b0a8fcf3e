//! Sobolev spaces `H^s_γ` on a finite Gelfand pair and the inequalities that
//! surround them: the embedding estimates, Hausdorff-Young and its inverse,
//! translation and mollifier estimates, and the Rellich-Kondrachov chain.
//!
//! Every check returns a [`CheckOutcome`] with signed `slack = rhs − lhs`.

use serde::{Deserialize, Serialize};

use crate::cosets::{holder_conjugate, BiInvariantFunction, GroupFunction};
use crate::error::{Error, Result};
use crate::pair::GelfandPair;
use crate::spherical::{lp_norm_spectral, symbol, SPHERICAL_TOL};

/// Pass threshold for inequality slacks.
pub const INEQUALITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

impl CheckOutcome {
    pub fn new(lhs: f64, rhs: f64) -> Self {
        CheckOutcome {
            lhs,
            rhs,
            slack: rhs - lhs,
        }
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.slack >= -tol
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightMode {
    User,
    /// Union of double cosets defining the Cayley operator.
    Cayley(Vec<usize>),
}

impl WeightMode {
    pub fn tag(&self) -> String {
        match self {
            WeightMode::User => "user".into(),
            WeightMode::Cayley(classes) => {
                let ids: Vec<String> = classes.iter().map(usize::to_string).collect();
                format!("cayley:{}", ids.join("+"))
            }
        }
    }
}

/// Weight document: `{"mode": "user", "values": [...]}` or
/// `{"mode": "cayley", "class": i}` (also accepts `"classes": [i, j, ...]`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum WeightDocument {
    User {
        values: Vec<f64>,
    },
    Cayley {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        class: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        classes: Option<Vec<usize>>,
    },
}

impl WeightDocument {
    pub fn cayley(classes: Vec<usize>) -> Self {
        WeightDocument::Cayley {
            class: None,
            classes: Some(classes),
        }
    }

    /// Parses JSON or the shorthands `cayley:1`, `cayley:1+3`, `user:0,1,1.5`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('{') {
            return serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()));
        }
        let bad = || Error::Malformed(format!("weight spec '{text}'"));
        let (mode, rest) = text.split_once(':').ok_or_else(bad)?;
        match mode {
            "cayley" => {
                let classes = rest
                    .split('+')
                    .map(|c| c.trim().parse().map_err(|_| bad()))
                    .collect::<Result<Vec<usize>>>()?;
                Ok(WeightDocument::cayley(classes))
            }
            "user" => {
                let values = rest
                    .split(',')
                    .map(|c| c.trim().parse().map_err(|_| bad()))
                    .collect::<Result<Vec<f64>>>()?;
                Ok(WeightDocument::User { values })
            }
            _ => Err(bad()),
        }
    }
}

/// `γ_j ≥ 0` for every spherical index `j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SobolevWeight {
    pub gamma: Vec<f64>,
    pub mode: String,
}

impl SobolevWeight {
    pub fn zero(pair: &GelfandPair) -> Self {
        SobolevWeight {
            gamma: vec![0.0; pair.basis().len()],
            mode: WeightMode::User.tag(),
        }
    }

    /// `(1 + γ_j²)^t`
    fn factor(&self, j: usize, t: f64) -> f64 {
        (1.0 + self.gamma[j] * self.gamma[j]).powf(t)
    }
}

/// Default Cayley generator: `D_1 ∪ D_1⁻¹`, or nothing for a single-class pair.
pub fn default_cayley_classes(pair: &GelfandPair) -> Vec<usize> {
    let space = pair.space();
    if space.len() < 2 {
        return Vec::new();
    }
    let mut c = vec![1, space.inverse_class(1)];
    c.sort_unstable();
    c.dedup();
    c
}

pub fn make_weight(pair: &GelfandPair, doc: &WeightDocument) -> Result<SobolevWeight> {
    let dim = pair.basis().len();
    match doc {
        WeightDocument::User { values } => {
            if values.len() != dim {
                return Err(Error::BadParameter(format!(
                    "{} weight values for {dim} spherical functions",
                    values.len()
                )));
            }
            if let Some(v) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
                return Err(Error::BadParameter(format!("weight value {v} is not >= 0")));
            }
            Ok(SobolevWeight {
                gamma: values.clone(),
                mode: WeightMode::User.tag(),
            })
        }
        WeightDocument::Cayley { class, classes } => {
            let mut set: Vec<usize> = classes.clone().unwrap_or_default();
            set.extend(class.iter().copied());
            set.sort_unstable();
            set.dedup();
            cayley_weight(pair, &set)
        }
    }
}

/// `γ_j = sqrt(max(0, 1 − f̂_S(φ_j)/f̂_S(φ_0)))` for `f = 1_S`, `S` a symmetric
/// union of double cosets: the square root of the normalized Laplacian
/// eigenvalue of the Cayley operator on `S`.
fn cayley_weight(pair: &GelfandPair, classes: &[usize]) -> Result<SobolevWeight> {
    let space = pair.space();
    let dim = pair.basis().len();
    for &c in classes {
        if c >= space.len() {
            return Err(Error::IndexOutOfRange {
                index: c,
                order: space.len(),
            });
        }
        if !classes.contains(&space.inverse_class(c)) {
            return Err(Error::BadParameter(format!(
                "class {c} is not closed under inversion within the generator set"
            )));
        }
    }
    let mode = WeightMode::Cayley(classes.to_vec()).tag();
    if classes.is_empty() {
        return Ok(SobolevWeight {
            gamma: vec![0.0; dim],
            mode,
        });
    }
    let mut values = vec![num_complex::Complex64::new(0.0, 0.0); space.len()];
    for &c in classes {
        values[c] = num_complex::Complex64::new(1.0, 0.0);
    }
    let indicator = BiInvariantFunction::new(space, values)?;
    let symbols = pair
        .basis()
        .functions()
        .iter()
        .map(|phi| symbol(&indicator, phi).map(|z| z.re))
        .collect::<Result<Vec<f64>>>()?;
    let top = symbols[0];
    let gamma = symbols
        .iter()
        .enumerate()
        .map(|(j, s)| if j == 0 { 0.0 } else { (1.0 - s / top).max(0.0).sqrt() })
        .collect();
    Ok(SobolevWeight { gamma, mode })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SobolevParams {
    pub s: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

impl SobolevParams {
    pub fn new(s: f64, alpha: Option<f64>) -> Result<Self> {
        if !s.is_finite() || s < 0.0 {
            return Err(Error::BadParameter(format!("s = {s} must be >= 0")));
        }
        if let Some(a) = alpha {
            if !(a.is_finite() && a > s && s > 0.0) {
                return Err(Error::BadParameter(format!(
                    "need alpha > s > 0, got alpha = {a}, s = {s}"
                )));
            }
        }
        Ok(SobolevParams { s, alpha })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SobolevParams =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::new(raw.s, raw.alpha)
    }

    fn require_alpha(&self) -> Result<f64> {
        self.alpha
            .ok_or_else(|| Error::BadParameter("alpha is required".into()))
    }

    /// `p = 2α/(α + s)`.
    pub fn p(&self) -> Result<f64> {
        let a = self.require_alpha()?;
        Ok(2.0 * a / (a + self.s))
    }

    /// Hölder conjugate of `p`, equal to `2α/(α − s)`.
    pub fn p_conjugate(&self) -> Result<f64> {
        Ok(holder_conjugate(self.p()?))
    }
}

fn check_s(s: f64) -> Result<()> {
    if !s.is_finite() || s < 0.0 {
        return Err(Error::BadParameter(format!("s = {s} must be >= 0")));
    }
    Ok(())
}

fn check_weight(pair: &GelfandPair, gamma: &SobolevWeight) -> Result<()> {
    if gamma.gamma.len() != pair.basis().len() {
        return Err(Error::Mismatch);
    }
    Ok(())
}

/// `(Σ_j μ̂_j (1+γ_j²)^s |f̂_j|²)^{1/2}`.
pub fn sobolev_norm(
    pair: &GelfandPair,
    f: &BiInvariantFunction,
    gamma: &SobolevWeight,
    s: f64,
) -> Result<f64> {
    check_s(s)?;
    check_weight(pair, gamma)?;
    let hat = pair.transform(f)?;
    let sum: f64 = hat
        .values()
        .iter()
        .enumerate()
        .map(|(j, v)| pair.plancherel().weights[j] * gamma.factor(j, s) * v.norm_sqr())
        .sum();
    Ok(sum.sqrt())
}

/// `‖f‖₂ ≤ ‖f‖_{H^s_γ}`.
pub fn embedding_l2_check(
    pair: &GelfandPair,
    f: &BiInvariantFunction,
    gamma: &SobolevWeight,
    s: f64,
) -> Result<CheckOutcome> {
    Ok(CheckOutcome::new(f.lp_norm(2.0)?, sobolev_norm(pair, f, gamma, s)?))
}

/// `C = ‖(1+γ²)^{−s/2}‖_{L²(μ̂)}`.
pub fn embedding_sup_constant(pair: &GelfandPair, gamma: &SobolevWeight, s: f64) -> Result<f64> {
    check_s(s)?;
    check_weight(pair, gamma)?;
    let w = &pair.plancherel().weights;
    Ok((0..w.len())
        .map(|j| w[j] * gamma.factor(j, -s))
        .sum::<f64>()
        .sqrt())
}

/// `‖f‖_∞ ≤ C·‖f‖_{H^s_γ}`.
pub fn embedding_sup_check(
    pair: &GelfandPair,
    f: &BiInvariantFunction,
    gamma: &SobolevWeight,
    s: f64,
) -> Result<CheckOutcome> {
    let c = embedding_sup_constant(pair, gamma, s)?;
    Ok(CheckOutcome::new(
        f.max_abs(),
        c * sobolev_norm(pair, f, gamma, s)?,
    ))
}

/// `‖(1+γ²)^{−1}‖_{L^α(μ̂)}^{s/2} = (Σ_j μ̂_j (1+γ_j²)^{−α})^{s/(2α)}`.
pub fn embedding_lp_constant(
    pair: &GelfandPair,
    gamma: &SobolevWeight,
    params: &SobolevParams,
) -> Result<f64> {
    check_weight(pair, gamma)?;
    let a = params.require_alpha()?;
    let w = &pair.plancherel().weights;
    let sum: f64 = (0..w.len()).map(|j| w[j] * gamma.factor(j, -a)).sum();
    Ok(sum.powf(params.s / (2.0 * a)))
}

/// `‖f‖_{p'} ≤ ‖f‖_{H^s_γ}·‖(1+γ²)^{−1}‖_α^{s/2}` with `p = 2α/(α+s)`.
pub fn embedding_lp_check(
    pair: &GelfandPair,
    f: &BiInvariantFunction,
    gamma: &SobolevWeight,
    params: &SobolevParams,
) -> Result<CheckOutcome> {
    let pc = params.p_conjugate()?;
    let c = embedding_lp_constant(pair, gamma, params)?;
    Ok(CheckOutcome::new(
        f.lp_norm(pc)?,
        sobolev_norm(pair, f, gamma, params.s)? * c,
    ))
}

/// `‖f̂‖_{p'} ≤ ‖f‖_p` for `p ∈ [1, 2]`.
pub fn hausdorff_young_check(
    pair: &GelfandPair,
    f: &BiInvariantFunction,
    p: f64,
) -> Result<CheckOutcome> {
    if !(1.0..=2.0).contains(&p) {
        return Err(Error::BadExponent(p, "[1, 2]"));
    }
    let hat = pair.transform(f)?;
    Ok(CheckOutcome::new(
        lp_norm_spectral(&hat, holder_conjugate(p), pair.plancherel())?,
        f.lp_norm(p)?,
    ))
}

/// `‖f‖_{p'} ≤ ‖f̂‖_p` for `p ∈ (1, 2]`.
pub fn inverse_hausdorff_young_check(
    pair: &GelfandPair,
    f: &BiInvariantFunction,
    p: f64,
) -> Result<CheckOutcome> {
    if !(p > 1.0 && p <= 2.0) {
        return Err(Error::BadExponent(p, "(1, 2]"));
    }
    let hat = pair.transform(f)?;
    Ok(CheckOutcome::new(
        f.lp_norm(holder_conjugate(p))?,
        lp_norm_spectral(&hat, p, pair.plancherel())?,
    ))
}

fn check_element(pair: &GelfandPair, y: usize) -> Result<()> {
    let n = pair.group().order();
    if y >= n {
        return Err(Error::IndexOutOfRange { index: y, order: n });
    }
    Ok(())
}

/// `sup_j |φ_j(y) − 1| / (1+γ_j²)^{s/2}`.
pub fn translation_modulus(
    pair: &GelfandPair,
    gamma: &SobolevWeight,
    s: f64,
    y: usize,
) -> Result<f64> {
    check_s(s)?;
    check_weight(pair, gamma)?;
    check_element(pair, y)?;
    Ok(pair
        .basis()
        .functions()
        .iter()
        .enumerate()
        .map(|(j, phi)| (phi.at(y) - 1.0).norm() / gamma.factor(j, s / 2.0))
        .fold(0.0, f64::max))
}

/// `sup_j (2 − 2 Re φ_j(y)) / (1+γ_j²)^s`, the sharp constant for the
/// full-group translation energy `∫_G |f(xy⁻¹) − f(x)|² dx`.
///
/// It dominates the squared translation modulus because `|φ| ≤ 1`; the two
/// agree when every `|φ_j(y)| = 1` (abelian pairs with `K = {e}`).
pub fn translation_energy_modulus(
    pair: &GelfandPair,
    gamma: &SobolevWeight,
    s: f64,
    y: usize,
) -> Result<f64> {
    check_s(s)?;
    check_weight(pair, gamma)?;
    check_element(pair, y)?;
    Ok(pair
        .basis()
        .functions()
        .iter()
        .enumerate()
        .map(|(j, phi)| (2.0 - 2.0 * phi.at(y).re).max(0.0) / gamma.factor(j, s))
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TranslationOutcome {
    /// `∫_G |f(xy⁻¹) − f(x)|² dx` against `modulus²·‖f‖²_{H^s_γ}`.
    pub bound: CheckOutcome,
    /// Same left side against `translation_energy_modulus·‖f‖²_{H^s_γ}`.
    pub energy_bound: CheckOutcome,
    /// `max_j |(R_y f)^(φ_j) − f̂(φ_j)·φ_j(y⁻¹)|`.
    pub transform_identity_residual: f64,
    /// `|lhs − Σ_j μ̂_j |f̂_j|² (2 − 2 Re φ_j(y))|`.
    pub energy_identity_residual: f64,
}

pub fn translation_bound_check(
    pair: &GelfandPair,
    f: &BiInvariantFunction,
    gamma: &SobolevWeight,
    s: f64,
    y: usize,
) -> Result<TranslationOutcome> {
    let modulus = translation_modulus(pair, gamma, s, y)?;
    let energy = translation_energy_modulus(pair, gamma, s, y)?;
    let norm = sobolev_norm(pair, f, gamma, s)?;
    let fg = f.expand();
    let shifted = fg.translate(y);
    let diff = shifted.sub(&fg)?;
    let n = fg.values().len() as f64;
    let lhs: f64 = diff.values().iter().map(|v| v.norm_sqr()).sum::<f64>() / n;

    let hat = pair.transform(f)?;
    let shifted_hat = pair.transform_group(&shifted)?;
    let yi = pair.group().inv(y);
    let mu = &pair.plancherel().weights;
    let mut identity: f64 = 0.0;
    let mut spectral_energy = 0.0;
    for (j, phi) in pair.basis().functions().iter().enumerate() {
        identity = identity.max((shifted_hat.values()[j] - hat.values()[j] * phi.at(yi)).norm());
        spectral_energy += mu[j] * hat.values()[j].norm_sqr() * (2.0 - 2.0 * phi.at(y).re);
    }
    Ok(TranslationOutcome {
        bound: CheckOutcome::new(lhs, modulus * modulus * norm * norm),
        energy_bound: CheckOutcome::new(lhs, energy * norm * norm),
        transform_identity_residual: identity,
        energy_identity_residual: (lhs - spectral_energy).abs(),
    })
}

/// Nonnegative bi-invariant `η` with unit integral and `η(e) ≠ 0`.
#[derive(Debug, Clone)]
pub struct MollifierFunction {
    eta: BiInvariantFunction,
    support: Vec<bool>,
}

impl MollifierFunction {
    pub fn new(eta: BiInvariantFunction) -> Result<Self> {
        let values = eta.class_values();
        if values.iter().any(|v| v.im != 0.0 || v.re < 0.0) {
            return Err(Error::BadParameter("mollifier must be real and >= 0".into()));
        }
        if values[0].re == 0.0 {
            return Err(Error::BadParameter("mollifier must not vanish at e".into()));
        }
        let integral: f64 = eta
            .space()
            .class_weights()
            .iter()
            .zip(values)
            .map(|(w, v)| w * v.re)
            .sum();
        if (integral - 1.0).abs() > SPHERICAL_TOL {
            return Err(Error::BadParameter(format!(
                "mollifier integral is {integral}, expected 1"
            )));
        }
        let support = values.iter().map(|v| v.re > 0.0).collect();
        Ok(MollifierFunction { eta, support })
    }

    /// Uniform density on the union of the given classes (`D_0` is added).
    pub fn uniform_on(pair: &GelfandPair, classes: &[usize]) -> Result<Self> {
        let space = pair.space();
        let mut mask = vec![false; space.len()];
        mask[0] = true;
        for &c in classes {
            if c >= space.len() {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    order: space.len(),
                });
            }
            mask[c] = true;
        }
        let mass: f64 = space
            .class_weights()
            .iter()
            .zip(&mask)
            .filter(|(_, m)| **m)
            .map(|(w, _)| w)
            .sum();
        let values = mask
            .iter()
            .map(|&m| num_complex::Complex64::new(if m { 1.0 / mass } else { 0.0 }, 0.0))
            .collect();
        Self::new(BiInvariantFunction::new(space, values)?)
    }

    pub fn function(&self) -> &BiInvariantFunction {
        &self.eta
    }

    /// Support as a class mask.
    pub fn support(&self) -> &[bool] {
        &self.support
    }
}

/// Modulus evaluated per double coset (it is bi-invariant in `y`).
pub fn class_moduli(pair: &GelfandPair, gamma: &SobolevWeight, s: f64) -> Result<Vec<f64>> {
    let space = pair.space();
    (0..space.len())
        .map(|c| translation_modulus(pair, gamma, s, space.representative(c)))
        .collect()
}

/// `sup_{y ∈ supp η}` of the translation modulus.
pub fn mollifier_constant(
    pair: &GelfandPair,
    gamma: &SobolevWeight,
    s: f64,
    eta: &MollifierFunction,
) -> Result<f64> {
    let moduli = class_moduli(pair, gamma, s)?;
    Ok(moduli
        .iter()
        .zip(eta.support())
        .filter(|(_, s)| **s)
        .map(|(m, _)| *m)
        .fold(0.0, f64::max))
}

/// `‖f⋆η − f‖₂ ≤ (sup_{y∈supp η} modulus(y))·‖f‖_{H^s_γ}`.
pub fn mollifier_bound_check(
    pair: &GelfandPair,
    f: &BiInvariantFunction,
    gamma: &SobolevWeight,
    s: f64,
    eta: &MollifierFunction,
) -> Result<CheckOutcome> {
    let smoothed = pair
        .basis()
        .structure_constants()
        .convolve(f, eta.function())?;
    let lhs = smoothed.sub(f)?.lp_norm(2.0)?;
    let rhs = mollifier_constant(pair, gamma, s, eta)? * sobolev_norm(pair, f, gamma, s)?;
    Ok(CheckOutcome::new(lhs, rhs))
}

pub const DISCRETE_RELLICH_NOTE: &str = "K\\G/K is finite and discrete: the only y in a small \
enough neighbourhood of e is e itself, where the translation modulus is 0, so the limit \
hypothesis holds vacuously. Every embedding of a finite-dimensional space is compact; the \
report certifies the inequalities of the proof chain, not compactness.";

#[derive(Debug, Clone, Serialize)]
pub struct ModulusEntry {
    pub y: usize,
    #[serde(rename = "class")]
    pub class: usize,
    pub modulus: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinMollifier {
    /// The support is `D_0 ∪ D_class`.
    pub class: usize,
    pub constant: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RellichReport {
    pub pair: String,
    pub s: f64,
    pub alpha: f64,
    pub p: f64,
    #[serde(rename = "pConjugate")]
    pub p_conjugate: f64,
    /// Translation modulus for every `y ≠ e`.
    pub moduli: Vec<ModulusEntry>,
    /// Smallest mollifier constant over supports strictly larger than `D_0`,
    /// with the class that achieves it; `None` for a single-class pair.
    #[serde(rename = "minMollifierConstant")]
    pub min_mollifier_constant: Option<MinMollifier>,
    #[serde(rename = "embeddingConstant")]
    pub embedding_constant: f64,
    pub note: &'static str,
}

pub fn rellich_chain_report(
    pair: &GelfandPair,
    gamma: &SobolevWeight,
    params: &SobolevParams,
) -> Result<RellichReport> {
    let alpha = params.require_alpha()?;
    let space = pair.space();
    let per_class = class_moduli(pair, gamma, params.s)?;
    let moduli = (1..pair.group().order())
        .map(|y| ModulusEntry {
            y,
            class: space.class_of(y),
            modulus: per_class[space.class_of(y)],
        })
        .collect();
    // Supports are unions of classes containing D_0 and the constant is a max
    // over the support, so the minimum is attained by D_0 plus one class.
    let min_mollifier_constant = (1..space.len())
        .map(|c| MinMollifier {
            class: c,
            constant: per_class[c].max(per_class[0]),
        })
        .min_by(|a, b| a.constant.total_cmp(&b.constant));
    Ok(RellichReport {
        pair: pair.name().to_string(),
        s: params.s,
        alpha,
        p: params.p()?,
        p_conjugate: params.p_conjugate()?,
        moduli,
        min_mollifier_constant,
        embedding_constant: embedding_lp_constant(pair, gamma, params)?,
        note: DISCRETE_RELLICH_NOTE,
    })
}

/// One inequality of the Rellich-Kondrachov proof chain.
#[derive(Debug, Clone, Serialize)]
pub struct ChainLink {
    pub name: &'static str,
    pub outcome: CheckOutcome,
}

/// Checks every link of the chain for a sequence element `f_n`, a limit `f`
/// and a mollifier `η`:
///
/// - `embedding`: `‖f_n‖_{p'} ≤ ‖f_n‖_{H^s_γ}·‖(1+γ²)^{−1}‖_α^{s/2}`
/// - `lq-monotone`: `‖f_n − f‖_q ≤ ‖f_n − f‖_{p'}` for `q ∈ {1, 2}`
/// - `triangle`: `‖f_n − f‖₂ ≤ ‖f_n − f_n⋆η‖₂ + ‖f_n⋆η − f⋆η‖₂ + ‖f⋆η − f‖₂`
/// - `mollifier-fn`, `mollifier-f`: the mollifier estimate for each function
/// - `convolution-holder`: `sup_x |(f_n − f)⋆η(x)| ≤ ‖f_n − f‖_{p'}·‖η‖_p`
pub fn rellich_chain_links(
    pair: &GelfandPair,
    gamma: &SobolevWeight,
    params: &SobolevParams,
    f_n: &BiInvariantFunction,
    f: &BiInvariantFunction,
    eta: &MollifierFunction,
) -> Result<Vec<ChainLink>> {
    let p = params.p()?;
    let pc = params.p_conjugate()?;
    let s = params.s;
    let sc = pair.basis().structure_constants();
    let fn_eta = sc.convolve(f_n, eta.function())?;
    let f_eta = sc.convolve(f, eta.function())?;
    let diff = f_n.sub(f)?;

    let l1 = diff.lp_norm(1.0)?;
    let l2 = diff.lp_norm(2.0)?;
    let lpc = diff.lp_norm(pc)?;
    let monotone = if l1 > l2 {
        CheckOutcome::new(l1, lpc)
    } else {
        CheckOutcome::new(l2, lpc)
    };

    let links = vec![
        ChainLink {
            name: "embedding",
            outcome: embedding_lp_check(pair, f_n, gamma, params)?,
        },
        ChainLink {
            name: "lq-monotone",
            outcome: monotone,
        },
        ChainLink {
            name: "triangle",
            outcome: CheckOutcome::new(
                l2,
                f_n.sub(&fn_eta)?.lp_norm(2.0)?
                    + fn_eta.sub(&f_eta)?.lp_norm(2.0)?
                    + f_eta.sub(f)?.lp_norm(2.0)?,
            ),
        },
        ChainLink {
            name: "mollifier-fn",
            outcome: mollifier_bound_check(pair, f_n, gamma, s, eta)?,
        },
        ChainLink {
            name: "mollifier-f",
            outcome: mollifier_bound_check(pair, f, gamma, s, eta)?,
        },
        ChainLink {
            name: "convolution-holder",
            outcome: CheckOutcome::new(
                fn_eta.sub(&f_eta)?.max_abs(),
                lpc * eta.function().lp_norm(p)?,
            ),
        },
    ];
    Ok(links)
}

/// Hölder's inequality `|⟨f, g⟩| ≤ ‖f‖_p ‖g‖_{p'}` on `G`.
pub fn holder_check(f: &GroupFunction, g: &GroupFunction, p: f64) -> Result<CheckOutcome> {
    use crate::cosets::lp_norm_group;
    Ok(CheckOutcome::new(
        f.inner(g)?.norm(),
        lp_norm_group(f, p)? * lp_norm_group(g, holder_conjugate(p))?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteGroup, Limits, Subgroup};
    use num_complex::Complex64;
    use std::sync::Arc;

    fn z4() -> GelfandPair {
        let rows: Vec<Vec<usize>> = (0..4).map(|i| (0..4).map(|j| (i + j) % 4).collect()).collect();
        let g = Arc::new(FiniteGroup::from_table("z4", &rows).unwrap());
        GelfandPair::analyze("z4", &Subgroup::generated(&g, &[]).unwrap(), &Limits::default())
            .unwrap()
    }

    fn s3_s2() -> GelfandPair {
        let g = Arc::new(
            FiniteGroup::from_permutations("s3", 3, &[vec![1, 0, 2], vec![1, 2, 0]], 5040)
                .unwrap(),
        );
        GelfandPair::analyze("s3/s2", &Subgroup::generated(&g, &[1]).unwrap(), &Limits::default())
            .unwrap()
    }

    fn z4_gamma(pair: &GelfandPair) -> SobolevWeight {
        make_weight(pair, &WeightDocument::cayley(vec![1, 3])).unwrap()
    }

    fn delta(pair: &GelfandPair) -> BiInvariantFunction {
        BiInvariantFunction::indicator(pair.space(), 0)
    }

    #[test]
    fn z4_cayley_weight() {
        let pair = z4();
        let g = z4_gamma(&pair);
        let want = [0.0, 1.0, 2f64.sqrt(), 1.0];
        for (a, b) in g.gamma.iter().zip(want) {
            assert!((a - b).abs() < 1e-12, "{:?}", g.gamma);
        }
        assert_eq!(g.mode, "cayley:1+3");
        // D_1 = {1} alone is not symmetric.
        assert!(make_weight(&pair, &WeightDocument::cayley(vec![1])).is_err());
    }

    #[test]
    fn s3_s2_cayley_weight() {
        let pair = s3_s2();
        let g = make_weight(
            &pair,
            &WeightDocument::Cayley {
                class: Some(1),
                classes: None,
            },
        )
        .unwrap();
        // 1̂_{D_1}(φ_1)/1̂_{D_1}(φ_0) = (4·(−1/2))/4 = −1/2, so γ_1 = sqrt(3/2).
        assert_eq!(g.gamma[0], 0.0);
        assert!((g.gamma[1] - 1.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn user_weights_are_validated() {
        let pair = z4();
        assert!(make_weight(&pair, &WeightDocument::User { values: vec![0.0, -1.0, 0.0, 0.0] }).is_err());
        assert!(make_weight(&pair, &WeightDocument::User { values: vec![0.0; 3] }).is_err());
        let zero = make_weight(&pair, &WeightDocument::User { values: vec![0.0; 4] }).unwrap();
        let f = BiInvariantFunction::new(
            pair.space(),
            vec![Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.0), Complex64::new(0.0, 1.0), Complex64::new(3.0, -1.0)],
        )
        .unwrap();
        for s in [0.0, 1.0, 3.5] {
            let c = embedding_l2_check(&pair, &f, &zero, s).unwrap();
            assert!((c.lhs - c.rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn weight_document_parsing() {
        assert_eq!(
            WeightDocument::parse("cayley:1+3").unwrap(),
            WeightDocument::cayley(vec![1, 3])
        );
        assert_eq!(
            WeightDocument::parse(r#"{"mode":"cayley","class":2}"#).unwrap(),
            WeightDocument::Cayley { class: Some(2), classes: None }
        );
        assert_eq!(
            WeightDocument::parse("user:0,1.5").unwrap(),
            WeightDocument::User { values: vec![0.0, 1.5] }
        );
        assert!(WeightDocument::parse("nope").is_err());
    }

    #[test]
    fn z4_worked_constants() {
        let pair = z4();
        let g = z4_gamma(&pair);
        let d = delta(&pair);
        let norm = sobolev_norm(&pair, &d, &g, 1.0).unwrap();
        assert!((norm - 0.5f64.sqrt()).abs() < 1e-12);
        let c = embedding_sup_constant(&pair, &g, 1.0).unwrap();
        assert!((c * c - 7.0 / 3.0).abs() < 1e-12);
        let sup = embedding_sup_check(&pair, &d, &g, 1.0).unwrap();
        assert_eq!(sup.lhs, 1.0);
        assert!((sup.rhs - 1.0801234497346435).abs() < 1e-12);
        let l2 = embedding_l2_check(&pair, &d, &g, 1.0).unwrap();
        assert!((l2.lhs - 0.5).abs() < 1e-15 && l2.holds(INEQUALITY_TOL));
        let params = SobolevParams::new(1.0, Some(2.0)).unwrap();
        assert!((params.p().unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!((params.p_conjugate().unwrap() - 4.0).abs() < 1e-12);
        let lp = embedding_lp_check(&pair, &d, &g, &params).unwrap();
        let k = (1.0f64 + 0.25 + 1.0 / 9.0 + 0.25).powf(0.25);
        assert!((embedding_lp_constant(&pair, &g, &params).unwrap() - k).abs() < 1e-12);
        assert!((lp.lhs - 0.25f64.powf(0.25)).abs() < 1e-12);
        assert!((lp.rhs - k * 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn unit_function_has_unit_norm() {
        let pair = z4();
        let g = z4_gamma(&pair);
        let one = BiInvariantFunction::new(pair.space(), vec![Complex64::new(1.0, 0.0); 4]).unwrap();
        for s in [0.0, 1.0, 2.5] {
            assert!((sobolev_norm(&pair, &one, &g, s).unwrap() - 1.0).abs() < 1e-12);
        }
        let ihy = inverse_hausdorff_young_check(&pair, &one, 1.5).unwrap();
        assert!((ihy.lhs - 1.0).abs() < 1e-12 && (ihy.rhs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_function_lp_embedding() {
        let pair = z4();
        let g = z4_gamma(&pair);
        let zero = BiInvariantFunction::new(pair.space(), vec![Complex64::new(0.0, 0.0); 4]).unwrap();
        let params = SobolevParams::new(1.0, Some(2.0)).unwrap();
        let c = embedding_lp_check(&pair, &zero, &g, &params).unwrap();
        assert_eq!((c.lhs, c.rhs), (0.0, 0.0));
    }

    #[test]
    fn hausdorff_young_endpoint_examples() {
        let pair = z4();
        let d = delta(&pair);
        let hy = hausdorff_young_check(&pair, &d, 1.0).unwrap();
        assert!((hy.lhs - 0.25).abs() < 1e-15 && (hy.rhs - 0.25).abs() < 1e-15);
        let hy2 = hausdorff_young_check(&pair, &d, 2.0).unwrap();
        assert!((hy2.lhs - hy2.rhs).abs() < 1e-12);
        assert!(hausdorff_young_check(&pair, &d, 2.5).is_err());
        assert!(inverse_hausdorff_young_check(&pair, &d, 1.0).is_err());
    }

    #[test]
    fn parameter_domain() {
        assert!(SobolevParams::new(-1.0, None).is_err());
        assert!(SobolevParams::new(1.0, Some(0.5)).is_err());
        assert!(SobolevParams::new(0.0, Some(1.0)).is_err());
        assert!(SobolevParams::from_json(r#"{"s": 1, "alpha": 3}"#).is_ok());
        let pair = z4();
        let g = z4_gamma(&pair);
        assert!(sobolev_norm(&pair, &delta(&pair), &g, -0.1).is_err());
        assert!(embedding_lp_check(&pair, &delta(&pair), &g, &SobolevParams::new(1.0, None).unwrap()).is_err());
    }

    #[test]
    fn z4_translation_examples() {
        let pair = z4();
        let g = z4_gamma(&pair);
        assert_eq!(translation_modulus(&pair, &g, 1.0, 0).unwrap(), 0.0);
        assert!((translation_modulus(&pair, &g, 1.0, 2).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        let t = translation_bound_check(&pair, &delta(&pair), &g, 1.0, 2).unwrap();
        assert!((t.bound.lhs - 0.5).abs() < 1e-15);
        assert!((t.bound.rhs - 1.0).abs() < 1e-12);
        assert!(t.transform_identity_residual < 1e-12);
        assert!(t.energy_identity_residual < 1e-12);
        let t0 = translation_bound_check(&pair, &delta(&pair), &g, 1.0, 0).unwrap();
        assert_eq!(t0.bound.lhs, 0.0);
    }

    #[test]
    fn full_group_translation_of_spherical_function_exceeds_modulus_bound() {
        // f = φ_1 on (S3, S2), y in D_1: ∫|f(xy⁻¹) − f(x)|² = 3/2, while
        // modulus²·‖f‖²_H = (9/4)·(1/2) = 9/8 for every γ and s.
        let pair = s3_s2();
        let g = make_weight(&pair, &WeightDocument::cayley(vec![1])).unwrap();
        let f = pair.basis().get(1).as_function();
        let y = pair.space().representative(1);
        let t = translation_bound_check(&pair, &f, &g, 1.0, y).unwrap();
        assert!((t.bound.lhs - 1.5).abs() < 1e-12);
        assert!((t.bound.rhs - 1.125).abs() < 1e-12);
        assert!(!t.bound.holds(INEQUALITY_TOL));
        assert!(t.energy_bound.holds(INEQUALITY_TOL));
        assert!(t.transform_identity_residual < 1e-12);
        assert!(t.energy_identity_residual < 1e-12);
    }

    #[test]
    fn mollifier_examples() {
        let pair = z4();
        let g = z4_gamma(&pair);
        let f = BiInvariantFunction::new(
            pair.space(),
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0), Complex64::new(-1.0, 0.5), Complex64::new(0.3, 0.0)],
        )
        .unwrap();
        let point = MollifierFunction::uniform_on(&pair, &[]).unwrap();
        let c = mollifier_bound_check(&pair, &f, &g, 1.0, &point).unwrap();
        assert!(c.lhs < 1e-12);
        let flat = MollifierFunction::uniform_on(&pair, &[1, 2, 3]).unwrap();
        let c = mollifier_bound_check(&pair, &f, &g, 1.0, &flat).unwrap();
        // f⋆1 = mean(f)·1
        let mean = f.class_values().iter().sum::<Complex64>() / 4.0;
        let direct = f
            .class_values()
            .iter()
            .map(|v| (v - mean).norm_sqr())
            .sum::<f64>()
            / 4.0;
        assert!((c.lhs - direct.sqrt()).abs() < 1e-12);
        assert!(c.holds(INEQUALITY_TOL));
    }

    #[test]
    fn mollifier_validation() {
        let pair = z4();
        let sp = pair.space();
        let neg = BiInvariantFunction::new(sp, vec![Complex64::new(2.0, 0.0), Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)]).unwrap();
        assert!(MollifierFunction::new(neg).is_err());
        let unnormalized = BiInvariantFunction::new(sp, vec![Complex64::new(1.0, 0.0); 4]).unwrap();
        assert!(MollifierFunction::new(unnormalized.clone()).is_ok());
        let vanishing = BiInvariantFunction::new(sp, vec![Complex64::new(0.0, 0.0), Complex64::new(4.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)]).unwrap();
        assert!(MollifierFunction::new(vanishing).is_err());
        let heavy = BiInvariantFunction::new(sp, vec![Complex64::new(2.0, 0.0); 4]).unwrap();
        assert!(MollifierFunction::new(heavy).is_err());
    }

    #[test]
    fn rellich_report_z4() {
        let pair = z4();
        let g = z4_gamma(&pair);
        let params = SobolevParams::new(1.0, Some(2.0)).unwrap();
        let r = rellich_chain_report(&pair, &g, &params).unwrap();
        assert_eq!(r.moduli.len(), 3);
        assert!((r.moduli[1].modulus - 2f64.sqrt()).abs() < 1e-12);
        assert!((r.moduli[0].modulus - r.moduli[2].modulus).abs() < 1e-12);
        // y = 1: max(|i−1|/√2, 2/√3, |−i−1|/√2) = 2/√3
        assert!((r.moduli[0].modulus - 2.0 / 3f64.sqrt()).abs() < 1e-12);
        let best = r.min_mollifier_constant.unwrap();
        assert_eq!(best.class, 1);
        assert!((best.constant - 2.0 / 3f64.sqrt()).abs() < 1e-12);
    }
}
