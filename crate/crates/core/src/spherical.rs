//! Spherical functions of a finite Gelfand pair, the spherical transform,
//! Plancherel weights and the inversion formula.
//!
//! The spherical functions are the joint eigenvectors of the commuting
//! operators `g ↦ 1_{D_i} ⋆ g` acting on class-value vectors. In the weighted
//! coordinates `v_k = sqrt(|D_k|/n)·g_k` these operators are normal, so their
//! Hermitian and skew-Hermitian parts form a commuting Hermitian family. A
//! random real combination of that family separates the joint eigenvectors.

use std::cmp::Ordering;
use std::f64::consts::TAU;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cosets::{
    project_bi_invariant, weighted_lp, BiInvariantFunction, DoubleCosetSpace, GroupFunction,
};
use crate::error::{Error, Result};
use crate::group::Limits;
use crate::hecke::{certify, convolve, structure_constants, StructureConstants};
use crate::linalg::{clusters, hermitian_eigen, hermitian_min_eigenvalue};

pub const SPHERICAL_TOL: f64 = 1e-10;
/// Minimum separation of eigenvalues of the random combination.
pub const COLLISION_GAP: f64 = 1e-8;
pub const MAX_RETRIES: u64 = 8;
const SOLVER_SEED: u64 = 0x7370_6865_7269_6361;
const ORDER_ROUNDING: f64 = 1e9;

#[derive(Debug, Clone, Serialize)]
pub struct SphericalFunction {
    #[serde(skip)]
    space: Arc<DoubleCosetSpace>,
    #[serde(rename = "classValues")]
    class_values: Vec<Complex64>,
    index: usize,
    /// Minimum eigenvalue of the Gram matrix, `None` when `|G|` exceeds the PSD cap.
    #[serde(rename = "psdMinEigenvalue")]
    psd_min_eigenvalue: Option<f64>,
    #[serde(rename = "l2NormSq")]
    l2_norm_sq: f64,
}

impl SphericalFunction {
    pub fn class_values(&self) -> &[Complex64] {
        &self.class_values
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn psd_min_eigenvalue(&self) -> Option<f64> {
        self.psd_min_eigenvalue
    }

    pub fn l2_norm_sq(&self) -> f64 {
        self.l2_norm_sq
    }

    pub fn space(&self) -> &Arc<DoubleCosetSpace> {
        &self.space
    }

    /// `φ(x)` for a group element.
    pub fn at(&self, x: usize) -> Complex64 {
        self.class_values[self.space.class_of(x)]
    }

    pub fn as_function(&self) -> BiInvariantFunction {
        BiInvariantFunction::new(&self.space, self.class_values.clone())
            .expect("spherical values are finite")
    }

    /// A candidate with arbitrary class values, for validating perturbed inputs.
    pub fn candidate(space: &Arc<DoubleCosetSpace>, class_values: Vec<Complex64>) -> Result<Self> {
        let f = BiInvariantFunction::new(space, class_values)?;
        Ok(SphericalFunction {
            space: Arc::clone(space),
            l2_norm_sq: f.inner(&f)?.re,
            class_values: f.class_values().to_vec(),
            index: 0,
            psd_min_eigenvalue: None,
        })
    }
}

#[derive(Debug, Clone)]
pub struct SphericalBasis {
    space: Arc<DoubleCosetSpace>,
    constants: StructureConstants,
    functions: Vec<SphericalFunction>,
}

impl SphericalBasis {
    pub fn space(&self) -> &Arc<DoubleCosetSpace> {
        &self.space
    }

    pub fn functions(&self) -> &[SphericalFunction] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn get(&self, j: usize) -> &SphericalFunction {
        &self.functions[j]
    }
}

/// Positive weights `μ̂_j` on the spherical spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlancherelMeasure {
    pub weights: Vec<f64>,
}

/// Values `F_j` of a function on the spherical spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralVector {
    space: Arc<DoubleCosetSpace>,
    values: Vec<Complex64>,
    /// Set when the input was not bi-invariant and was projected first.
    projected: bool,
}

impl SpectralVector {
    pub fn new(basis: &SphericalBasis, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != basis.len() {
            return Err(Error::BadParameter(format!(
                "{} spectral values for a basis of size {}",
                values.len(),
                basis.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::BadParameter("non-finite spectral value".into()));
        }
        Ok(SpectralVector {
            space: Arc::clone(basis.space()),
            values,
            projected: false,
        })
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn projected(&self) -> bool {
        self.projected
    }
}

fn weighted_operators(sc: &StructureConstants) -> Vec<DMatrix<f64>> {
    let space = sc.space();
    let dim = sc.dim();
    let root_w: Vec<f64> = space.class_weights().iter().map(|w| w.sqrt()).collect();
    (0..dim)
        .map(|i| {
            let scale = 1.0 / space.class_weights()[i];
            DMatrix::from_fn(dim, dim, |k, j| {
                sc.get(i, j, k) * scale * root_w[k] / root_w[j]
            })
        })
        .collect()
}

/// Hermitian part `(B + Bᵀ)/2` and skew part `-i(B − Bᵀ)/2` of each operator.
fn hermitian_family(ops: &[DMatrix<f64>]) -> Vec<DMatrix<Complex64>> {
    let mut out = Vec::with_capacity(2 * ops.len());
    for b in ops {
        let bt = b.transpose();
        out.push((b + &bt).map(|v| Complex64::new(v / 2.0, 0.0)));
        let skew = b - &bt;
        if skew.amax() > 0.0 {
            out.push(skew.map(|v| Complex64::new(0.0, -v / 2.0)));
        }
    }
    out
}

fn random_combination(family: &[DMatrix<Complex64>], seed: u64) -> DMatrix<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = family[0].nrows();
    let mut h = DMatrix::zeros(dim, dim);
    for m in family {
        let t: f64 = rng.random_range(-1.0..1.0);
        h += m * Complex64::new(t, 0.0);
    }
    h
}

/// Orthonormal joint eigenvectors (weighted coordinates) as columns.
fn joint_eigenvectors(family: &[DMatrix<Complex64>]) -> Result<DMatrix<Complex64>> {
    let dim = family[0].nrows();
    let mut last = None;
    for attempt in 0..=MAX_RETRIES {
        let h = random_combination(family, SOLVER_SEED.wrapping_add(attempt));
        let (values, vectors) = hermitian_eigen(h);
        if clusters(&values, COLLISION_GAP).len() == dim {
            return Ok(vectors);
        }
        last = Some((values, vectors));
    }
    let (values, vectors) = last.expect("at least one attempt ran");
    refine_blocks(&values, &vectors, family)
}

/// Joint block refinement: split each degenerate eigenvalue block using the
/// family members one at a time.
fn refine_blocks(
    values: &[f64],
    vectors: &DMatrix<Complex64>,
    family: &[DMatrix<Complex64>],
) -> Result<DMatrix<Complex64>> {
    let dim = vectors.nrows();
    let mut blocks: Vec<DMatrix<Complex64>> = clusters(values, COLLISION_GAP)
        .into_iter()
        .map(|r| vectors.columns(r.start, r.len()).into_owned())
        .collect();
    for m in family {
        let mut next = Vec::with_capacity(blocks.len());
        for v in blocks {
            if v.ncols() == 1 {
                next.push(v);
                continue;
            }
            let restricted = v.adjoint() * m * &v;
            let (vals, rot) = hermitian_eigen(restricted);
            let rotated = &v * rot;
            for r in clusters(&vals, COLLISION_GAP) {
                next.push(rotated.columns(r.start, r.len()).into_owned());
            }
        }
        blocks = next;
    }
    if blocks.iter().any(|b| b.ncols() > 1) {
        return Err(Error::Diagonalization(
            "degenerate joint eigenspace after block refinement".into(),
        ));
    }
    let mut out = DMatrix::zeros(dim, dim);
    for (c, b) in blocks.iter().enumerate() {
        out.set_column(c, &b.column(0));
    }
    Ok(out)
}

fn rounded(x: f64) -> i64 {
    (x * ORDER_ROUNDING).round() as i64
}

/// Per-class ordering key: argument in `[0, 2π)`, then modulus descending.
fn class_key(v: Complex64) -> (i64, i64) {
    let modulus = v.norm();
    let mut arg = v.im.atan2(v.re);
    if arg < 0.0 {
        arg += TAU;
    }
    if modulus * ORDER_ROUNDING < 1.0 || rounded(arg) >= rounded(TAU) {
        arg = 0.0;
    }
    (rounded(arg), -rounded(modulus))
}

fn basis_order(a: &[Complex64], b: &[Complex64]) -> Ordering {
    let trivial = |v: &[Complex64]| v.iter().all(|z| (z - 1.0).norm() * ORDER_ROUNDING < 1.0);
    match (trivial(a), trivial(b)) {
        (true, false) => return Ordering::Less,
        (false, true) => return Ordering::Greater,
        _ => {}
    }
    for (x, y) in a.iter().zip(b).skip(1) {
        let o = class_key(*x).cmp(&class_key(*y));
        if o != Ordering::Equal {
            return o;
        }
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            (rounded(x.re), rounded(x.im)).cmp(&(rounded(y.re), rounded(y.im)))
        })
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

/// Spherical functions of the pair, trivial function first.
pub fn spherical_basis(space: &Arc<DoubleCosetSpace>, limits: &Limits) -> Result<SphericalBasis> {
    let sc = structure_constants(space);
    let cert = certify(&sc);
    if !cert.verdict {
        return Err(Error::NotGelfand(space.group().name().to_string()));
    }
    let dim = space.len();
    let family = hermitian_family(&weighted_operators(&sc));
    let vectors = joint_eigenvectors(&family)?;
    let root_w: Vec<f64> = space.class_weights().iter().map(|w| w.sqrt()).collect();

    let mut raw: Vec<Vec<Complex64>> = (0..dim)
        .map(|c| {
            let col: Vec<Complex64> = (0..dim).map(|k| vectors[(k, c)] / root_w[k]).collect();
            let lead = col[0];
            let mut phi: Vec<Complex64> = col.iter().map(|v| v / lead).collect();
            // Enforce φ(x⁻¹) = conj φ(x) and φ(e) = 1 exactly.
            let sym: Vec<Complex64> = (0..dim)
                .map(|k| (phi[k] + phi[space.inverse_class(k)].conj()) / 2.0)
                .collect();
            phi.copy_from_slice(&sym);
            phi[0] = Complex64::new(1.0, 0.0);
            phi
        })
        .collect();
    raw.sort_by(|a, b| basis_order(a, b));
    // The constant function is always spherical; store it exactly.
    if raw[0].iter().all(|z| (z - 1.0).norm() < SPHERICAL_TOL) {
        raw[0].fill(Complex64::new(1.0, 0.0));
    }

    let weights = space.class_weights();
    let psd_enabled = space.group().order() <= limits.psd_cap;
    let mut functions = Vec::with_capacity(dim);
    for (index, class_values) in raw.into_iter().enumerate() {
        let l2_norm_sq = weights
            .iter()
            .zip(&class_values)
            .map(|(w, v)| w * v.norm_sqr())
            .sum();
        let mut phi = SphericalFunction {
            space: Arc::clone(space),
            class_values,
            index,
            psd_min_eigenvalue: None,
            l2_norm_sq,
        };
        let residual = class_functional_residual(&phi);
        if residual > SPHERICAL_TOL {
            return Err(Error::Diagonalization(format!(
                "function {index} has functional-equation residual {residual:e}"
            )));
        }
        if psd_enabled {
            phi.psd_min_eigenvalue = Some(gram_min_eigenvalue(&phi.as_function().expand()).1);
        }
        functions.push(phi);
    }
    Ok(SphericalBasis {
        space: Arc::clone(space),
        constants: sc,
        functions,
    })
}

/// Functional-equation residual using one representative per class pair.
/// `x ↦ (1/|K|) Σ_k φ(xky)` is bi-invariant in `x` and in `y`, so this equals
/// the full maximum over `G × G`.
fn class_functional_residual(phi: &SphericalFunction) -> f64 {
    let space = phi.space();
    let g = space.group();
    let k = space.subgroup().members();
    let mut worst: f64 = 0.0;
    for a in 0..space.len() {
        let x = space.representative(a);
        for b in 0..space.len() {
            let y = space.representative(b);
            let avg: Complex64 =
                k.iter().map(|&m| phi.at(g.mul(g.mul(x, m), y))).sum::<Complex64>() / k.len() as f64;
            worst = worst.max((avg - phi.class_values[a] * phi.class_values[b]).norm());
        }
    }
    worst
}

/// `max_{x,y ∈ G} |(1/|K|) Σ_{k∈K} φ(xky) − φ(x)φ(y)|`, by full enumeration.
pub fn functional_equation_residual(phi: &SphericalFunction) -> f64 {
    let space = phi.space();
    let g = space.group();
    let k = space.subgroup().members();
    let n = g.order();
    let mut worst: f64 = 0.0;
    for x in 0..n {
        let px = phi.at(x);
        for y in 0..n {
            let avg: Complex64 =
                k.iter().map(|&m| phi.at(g.mul(g.mul(x, m), y))).sum::<Complex64>() / k.len() as f64;
            worst = worst.max((avg - px * phi.at(y)).norm());
        }
    }
    worst
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PsdReport {
    pub verdict: bool,
    #[serde(rename = "minEigenvalue")]
    pub min_eigenvalue: f64,
    /// `max |A − A†|` of the Gram matrix; nonzero means `f(x⁻¹) ≠ conj f(x)`.
    pub asymmetry: f64,
}

fn gram_min_eigenvalue(f: &GroupFunction) -> (f64, f64) {
    let g = f.group();
    let n = g.order();
    let v = f.values();
    let gram = DMatrix::from_fn(n, n, |u, w| v[g.mul(g.inv(u), w)]);
    let asymmetry = (&gram - gram.adjoint()).map(|z| z.norm()).max();
    let herm = (&gram + gram.adjoint()) / Complex64::new(2.0, 0.0);
    (asymmetry, hermitian_min_eigenvalue(herm))
}

/// Gram matrix `A[u][v] = f(x_u⁻¹ x_v)` over all of `G`.
pub fn is_positive_semidefinite(f: &GroupFunction, limits: &Limits) -> Result<PsdReport> {
    let n = f.group().order();
    if n > limits.psd_cap {
        return Err(Error::PsdCapExceeded {
            order: n,
            cap: limits.psd_cap,
        });
    }
    let (asymmetry, min_eigenvalue) = gram_min_eigenvalue(f);
    Ok(PsdReport {
        verdict: asymmetry <= SPHERICAL_TOL && min_eigenvalue >= -SPHERICAL_TOL,
        min_eigenvalue,
        asymmetry,
    })
}

/// `f̂(φ_j) = (1/n) Σ_x f(x) φ_j(x⁻¹)`.
pub fn spherical_transform(f: &BiInvariantFunction, basis: &SphericalBasis) -> Result<SpectralVector> {
    if !f.space().same_as(basis.space()) {
        return Err(Error::Mismatch);
    }
    let space = basis.space();
    let w = space.class_weights();
    let fv = f.class_values();
    let values = basis
        .functions()
        .iter()
        .map(|phi| {
            (0..space.len())
                .map(|k| fv[k] * phi.class_values()[space.inverse_class(k)] * w[k])
                .sum()
        })
        .collect();
    Ok(SpectralVector {
        space: Arc::clone(space),
        values,
        projected: false,
    })
}

/// Transform of an arbitrary function on `G`, projected to `K\G/K` first when
/// it is not bi-invariant.
pub fn spherical_transform_group(f: &GroupFunction, basis: &SphericalBasis) -> Result<SpectralVector> {
    let projected = !f.is_bi_invariant(basis.space().subgroup(), 0.0);
    let fb = project_bi_invariant(f, basis.space())?;
    let mut out = spherical_transform(&fb, basis)?;
    out.projected = projected;
    Ok(out)
}

/// `μ̂_j = 1/‖φ_j‖₂²`, validated by Parseval on every class indicator.
pub fn plancherel_measure(basis: &SphericalBasis) -> Result<PlancherelMeasure> {
    let mut weights = Vec::with_capacity(basis.len());
    for phi in basis.functions() {
        if phi.l2_norm_sq() < 1e-14 {
            return Err(Error::Diagonalization(format!(
                "spherical function {} has numerically zero norm",
                phi.index()
            )));
        }
        weights.push(1.0 / phi.l2_norm_sq());
    }
    let mu = PlancherelMeasure { weights };
    let space = basis.space();
    for (i, w) in space.class_weights().into_iter().enumerate() {
        let hat = spherical_transform(&BiInvariantFunction::indicator(space, i), basis)?;
        let spectral: f64 = mu
            .weights
            .iter()
            .zip(hat.values())
            .map(|(m, v)| m * v.norm_sqr())
            .sum();
        if (spectral - w).abs() > SPHERICAL_TOL {
            return Err(Error::Diagonalization(format!(
                "Parseval fails on class {i}: {spectral} vs {w}"
            )));
        }
    }
    Ok(mu)
}

/// `f(x) = Σ_j μ̂_j F_j φ_j(x)`.
pub fn inverse_transform(
    spectral: &SpectralVector,
    basis: &SphericalBasis,
    mu: &PlancherelMeasure,
) -> Result<BiInvariantFunction> {
    if !spectral.space.same_as(basis.space()) || mu.weights.len() != basis.len() {
        return Err(Error::Mismatch);
    }
    let dim = basis.space().len();
    let values = (0..dim)
        .map(|k| {
            basis
                .functions()
                .iter()
                .zip(spectral.values())
                .zip(&mu.weights)
                .map(|((phi, f), m)| f * phi.class_values()[k] * *m)
                .sum()
        })
        .collect();
    BiInvariantFunction::new(basis.space(), values)
}

/// `(Σ_j μ̂_j |F_j|^p)^{1/p}`, `max_j |F_j|` at `p = ∞`.
pub fn lp_norm_spectral(spectral: &SpectralVector, p: f64, mu: &PlancherelMeasure) -> Result<f64> {
    if mu.weights.len() != spectral.values.len() {
        return Err(Error::Mismatch);
    }
    weighted_lp(
        mu.weights
            .iter()
            .zip(&spectral.values)
            .map(|(&m, v)| (m, v.norm())),
        p,
    )
}

/// `⟨F, G⟩ = Σ_j μ̂_j F_j conj(G_j)`.
pub fn spectral_inner(a: &SpectralVector, b: &SpectralVector, mu: &PlancherelMeasure) -> Complex64 {
    mu.weights
        .iter()
        .zip(a.values.iter().zip(&b.values))
        .map(|(&m, (x, y))| x * y.conj() * m)
        .sum()
}

/// Spherical symbol `λ_f = f̂(φ)` of a bi-invariant function.
pub fn symbol(f: &BiInvariantFunction, phi: &SphericalFunction) -> Result<Complex64> {
    if !f.space().same_as(phi.space()) {
        return Err(Error::Mismatch);
    }
    let space = phi.space();
    let w = space.class_weights();
    Ok((0..space.len())
        .map(|k| f.class_values()[k] * phi.class_values()[space.inverse_class(k)] * w[k])
        .sum())
}

/// `max_x |(f⋆φ)(x) − f̂(φ)·φ(x)|`, with the convolution done on `G`.
pub fn eigenvalue_check(f: &BiInvariantFunction, phi: &SphericalFunction) -> Result<f64> {
    let lambda = symbol(f, phi)?;
    let phi_g = phi.as_function().expand();
    let conv = convolve(&f.expand(), &phi_g)?;
    Ok(conv
        .values()
        .iter()
        .zip(phi_g.values())
        .map(|(c, p)| (c - lambda * p).norm())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosets::double_cosets;
    use crate::group::{FiniteGroup, Subgroup};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn z_space(n: usize) -> Arc<DoubleCosetSpace> {
        let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let g = Arc::new(FiniteGroup::from_table("z", &rows).unwrap());
        Arc::new(double_cosets(&Subgroup::generated(&g, &[]).unwrap()))
    }

    fn s3_s2() -> Arc<DoubleCosetSpace> {
        let g = Arc::new(
            FiniteGroup::from_permutations("s3", 3, &[vec![1, 0, 2], vec![1, 2, 0]], 5040)
                .unwrap(),
        );
        Arc::new(double_cosets(&Subgroup::generated(&g, &[1]).unwrap()))
    }

    #[test]
    fn z2_characters() {
        let basis = spherical_basis(&z_space(2), &Limits::default()).unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis.get(0).class_values(), &[c(1.0), c(1.0)]);
        assert!((basis.get(1).class_values()[1] - c(-1.0)).norm() < 1e-12);
    }

    #[test]
    fn z4_characters_in_frequency_order() {
        let basis = spherical_basis(&z_space(4), &Limits::default()).unwrap();
        let i = Complex64::new(0.0, 1.0);
        for (j, phi) in basis.functions().iter().enumerate() {
            for x in 0..4 {
                let expected = i.powu((j * x) as u32);
                assert!((phi.class_values()[x] - expected).norm() < 1e-12, "j={j} x={x}");
            }
        }
    }

    #[test]
    fn s3_s2_basis() {
        let basis = spherical_basis(&s3_s2(), &Limits::default()).unwrap();
        assert_eq!(basis.len(), 2);
        assert!((basis.get(1).class_values()[1] - c(-0.5)).norm() < 1e-12);
        let mu = plancherel_measure(&basis).unwrap();
        assert!((mu.weights[0] - 1.0).abs() < 1e-12);
        assert!((mu.weights[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn functional_residual_examples() {
        let space = s3_s2();
        let basis = spherical_basis(&space, &Limits::default()).unwrap();
        assert_eq!(functional_equation_residual(basis.get(0)), 0.0);
        assert!(functional_equation_residual(basis.get(1)) <= 1e-10);
        let bad = SphericalFunction::candidate(&space, vec![c(1.0), c(-0.4)]).unwrap();
        assert!(functional_equation_residual(&bad) >= 0.05);
    }

    #[test]
    fn psd_examples() {
        let space = z_space(2);
        let g = space.group();
        let lim = Limits::default();
        let one = GroupFunction::from_real(g, &[1.0, 1.0]).unwrap();
        let r = is_positive_semidefinite(&one, &lim).unwrap();
        assert!(r.verdict && r.min_eigenvalue.abs() < 1e-12);
        let chi = GroupFunction::from_real(g, &[1.0, -1.0]).unwrap();
        let r = is_positive_semidefinite(&chi, &lim).unwrap();
        assert!(r.verdict && r.min_eigenvalue.abs() < 1e-12);
        let bad = GroupFunction::from_real(g, &[1.0, 2.0]).unwrap();
        let r = is_positive_semidefinite(&bad, &lim).unwrap();
        assert!(!r.verdict);
        assert!((r.min_eigenvalue + 1.0).abs() < 1e-12);
        let tight = Limits { psd_cap: 1, ..lim };
        assert!(matches!(
            is_positive_semidefinite(&one, &tight),
            Err(Error::PsdCapExceeded { .. })
        ));
    }

    #[test]
    fn non_hermitian_function_is_not_psd() {
        let space = z_space(4);
        let f = GroupFunction::new(
            space.group(),
            vec![c(1.0), Complex64::new(0.0, 0.5), c(0.0), Complex64::new(0.0, 0.5)],
        )
        .unwrap();
        let r = is_positive_semidefinite(&f, &Limits::default()).unwrap();
        assert!(!r.verdict);
        assert!(r.asymmetry > 0.5);
    }

    #[test]
    fn transform_examples_z4() {
        let space = z_space(4);
        let basis = spherical_basis(&space, &Limits::default()).unwrap();
        let mu = plancherel_measure(&basis).unwrap();
        assert!(mu.weights.iter().all(|w| (w - 1.0).abs() < 1e-12));
        let delta = BiInvariantFunction::indicator(&space, 0);
        let hat = spherical_transform(&delta, &basis).unwrap();
        assert!(hat.values().iter().all(|v| (v - 0.25).norm() < 1e-15));
        let back = inverse_transform(&hat, &basis, &mu).unwrap();
        for (k, v) in back.class_values().iter().enumerate() {
            let want = if k == 0 { 1.0 } else { 0.0 };
            assert!((v - want).norm() < 1e-12);
        }
        let one = BiInvariantFunction::new(&space, vec![c(1.0); 4]).unwrap();
        let hat = spherical_transform(&one, &basis).unwrap();
        assert!((hat.values()[0] - 1.0).norm() < 1e-12);
        assert!(hat.values()[1..].iter().all(|v| v.norm() < 1e-12));
        assert!((lp_norm_spectral(&hat, 3.0, &mu).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn transform_of_basis_function_is_its_norm() {
        let space = s3_s2();
        let basis = spherical_basis(&space, &Limits::default()).unwrap();
        let hat = spherical_transform(&basis.get(1).as_function(), &basis).unwrap();
        assert!(hat.values()[0].norm() < 1e-12);
        assert!((hat.values()[1] - basis.get(1).l2_norm_sq()).norm() < 1e-12);
        let mu = plancherel_measure(&basis).unwrap();
        let f = SpectralVector::new(&basis, vec![c(0.0), c(1.0)]).unwrap();
        assert!((lp_norm_spectral(&f, 2.0, &mu).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        let quarter = SpectralVector::new(&basis, vec![c(0.25), c(0.25)]).unwrap();
        assert_eq!(lp_norm_spectral(&quarter, f64::INFINITY, &mu).unwrap(), 0.25);
    }

    #[test]
    fn group_transform_records_projection() {
        let space = s3_s2();
        let basis = spherical_basis(&space, &Limits::default()).unwrap();
        let f = GroupFunction::delta(space.group(), 1);
        let hat = spherical_transform_group(&f, &basis).unwrap();
        assert!(hat.projected());
        let g = BiInvariantFunction::indicator(&space, 0).expand();
        assert!(!spherical_transform_group(&g, &basis).unwrap().projected());
    }

    #[test]
    fn eigenvalue_examples() {
        let space = s3_s2();
        let basis = spherical_basis(&space, &Limits::default()).unwrap();
        let f = BiInvariantFunction::indicator(&space, 0);
        assert!(eigenvalue_check(&f, basis.get(1)).unwrap() <= 1e-12);
        let zero = BiInvariantFunction::new(&space, vec![c(0.0); 2]).unwrap();
        assert_eq!(eigenvalue_check(&zero, basis.get(1)).unwrap(), 0.0);
    }

    #[test]
    fn full_pair_has_single_unit_weight() {
        let g = Arc::new(
            FiniteGroup::from_permutations("s3", 3, &[vec![1, 0, 2], vec![1, 2, 0]], 5040)
                .unwrap(),
        );
        let space = Arc::new(double_cosets(&Subgroup::whole(&g)));
        let basis = spherical_basis(&space, &Limits::default()).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(plancherel_measure(&basis).unwrap().weights, vec![1.0]);
    }

    #[test]
    fn non_gelfand_pair_is_rejected() {
        let g = Arc::new(
            FiniteGroup::from_permutations("s3", 3, &[vec![1, 0, 2], vec![1, 2, 0]], 5040)
                .unwrap(),
        );
        let space = Arc::new(double_cosets(&Subgroup::generated(&g, &[]).unwrap()));
        assert!(matches!(
            spherical_basis(&space, &Limits::default()),
            Err(Error::NotGelfand(_))
        ));
    }

    #[test]
    fn block_refinement_splits_fully_degenerate_start() {
        // Start from a single 4-dimensional block, as if every random
        // combination had collided.
        let space = z_space(4);
        let sc = structure_constants(&space);
        let family = hermitian_family(&weighted_operators(&sc));
        let v = refine_blocks(&[0.0; 4], &DMatrix::identity(4, 4), &family).unwrap();
        let gram = v.adjoint() * &v;
        assert!((gram - DMatrix::<Complex64>::identity(4, 4)).camax() < 1e-12);
        for m in &family {
            let d = v.adjoint() * m * &v;
            for r in 0..4 {
                for c in 0..4 {
                    if r != c {
                        assert!(d[(r, c)].norm() < 1e-12);
                    }
                }
            }
        }
        // A family that cannot separate the space is reported.
        let id = vec![DMatrix::<Complex64>::identity(3, 3)];
        assert!(refine_blocks(&[0.0; 3], &DMatrix::identity(3, 3), &id).is_err());
    }

}
