//! Convolution on `G`, the structure constants of the double-coset (Hecke)
//! algebra, and the commutativity test that decides the Gelfand property.
//!
//! Convolution is `(f⋆g)(x) = (1/n) Σ_y f(x y⁻¹) g(y)`. On a finite group this
//! equals `(1/n) Σ_y f(y) g(y⁻¹ x)`, so both orientations used in the
//! literature agree.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Ratio;
use serde::Serialize;

use crate::cosets::{double_cosets, BiInvariantFunction, DoubleCosetSpace, GroupFunction};
use crate::error::{Error, Result};
use crate::group::Subgroup;

/// Float-path tolerance for commutativity.
pub const HECKE_TOL: f64 = 1e-12;

pub fn convolve(f: &GroupFunction, g: &GroupFunction) -> Result<GroupFunction> {
    f.check_same_group(g)?;
    let grp = f.group();
    let n = grp.order();
    let (fv, gv) = (f.values(), g.values());
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for y in 0..n {
        let gy = gv[y];
        if gy == Complex64::new(0.0, 0.0) {
            continue;
        }
        let yi = grp.inv(y);
        for (x, o) in out.iter_mut().enumerate() {
            *o += fv[grp.mul(x, yi)] * gy;
        }
    }
    let scale = 1.0 / n as f64;
    GroupFunction::new(grp, out.into_iter().map(|v| v * scale).collect())
}

/// `c[i][j][k]` with `1_{D_i} ⋆ 1_{D_j} = Σ_k c[i][j][k] 1_{D_k}`.
///
/// Stored exactly as integer counts `#{(a, b) ∈ D_i × D_j : ab = r_k}` where
/// `r_k` is the representative of `D_k`; the coefficient is `count / n`.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    space: Arc<DoubleCosetSpace>,
    counts: Vec<u64>,
    dim: usize,
}

pub fn structure_constants(space: &Arc<DoubleCosetSpace>) -> StructureConstants {
    let g = space.group();
    let dim = space.len();
    let mut counts = vec![0u64; dim * dim * dim];
    for k in 0..dim {
        let r = space.representative(k);
        for a in 0..g.order() {
            let b = g.mul(g.inv(a), r);
            let (i, j) = (space.class_of(a), space.class_of(b));
            counts[(i * dim + j) * dim + k] += 1;
        }
    }
    StructureConstants {
        space: Arc::clone(space),
        counts,
        dim,
    }
}

impl StructureConstants {
    pub fn space(&self) -> &Arc<DoubleCosetSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self, i: usize, j: usize, k: usize) -> u64 {
        self.counts[(i * self.dim + j) * self.dim + k]
    }

    pub fn exact(&self, i: usize, j: usize, k: usize) -> Ratio<u64> {
        Ratio::new(self.count(i, j, k), self.space.group().order() as u64)
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.count(i, j, k) as f64 / self.space.group().order() as f64
    }

    /// Exact check of `Σ_k c[i][j][k]·|D_k|/n = (|D_i|/n)(|D_j|/n)` for all `i, j`.
    pub fn mass_balance_holds(&self) -> bool {
        let size = |i| self.space.class_size(i) as u64;
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let lhs: u64 = (0..self.dim).map(|k| self.count(i, j, k) * size(k)).sum();
                lhs == size(i) * size(j)
            })
        })
    }

    /// Matrix of `g ↦ 1_{D_i} ⋆ g` in the class-indicator basis:
    /// `M[k][j] = c[i][j][k]`.
    pub fn operator_matrix(&self, i: usize) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |k, j| self.get(i, j, k))
    }

    /// Convolution of bi-invariant functions expanded through the tensor.
    pub fn convolve(
        &self,
        a: &BiInvariantFunction,
        b: &BiInvariantFunction,
    ) -> Result<BiInvariantFunction> {
        if !a.space().same_as(&self.space) || !b.space().same_as(&self.space) {
            return Err(Error::Mismatch);
        }
        let (av, bv) = (a.class_values(), b.class_values());
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for i in 0..self.dim {
            if av[i] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..self.dim {
                let ab = av[i] * bv[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.count(i, j, k);
                    if c != 0 {
                        *o += ab * c as f64;
                    }
                }
            }
        }
        let n = self.space.group().order() as f64;
        BiInvariantFunction::new(&self.space, out.into_iter().map(|v| v / n).collect())
    }
}

pub fn convolution_operator_matrix(space: &Arc<DoubleCosetSpace>, i: usize) -> Result<DMatrix<f64>> {
    if i >= space.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            order: space.len(),
        });
    }
    Ok(structure_constants(space).operator_matrix(i))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GelfandCertificate {
    pub verdict: bool,
    /// `(i, j, x)` with `(1_{D_i}⋆1_{D_j})(x) ≠ (1_{D_j}⋆1_{D_i})(x)`.
    pub witness: Option<(usize, usize, usize)>,
    #[serde(rename = "maxAsymmetry")]
    pub max_asymmetry: f64,
}

/// Commutativity of indicator convolutions, decided on exact counts.
pub fn certify(sc: &StructureConstants) -> GelfandCertificate {
    let dim = sc.dim();
    let n = sc.space().group().order() as f64;
    let mut witness = None;
    let mut worst = 0u64;
    for i in 0..dim {
        for j in (i + 1)..dim {
            for k in 0..dim {
                let (a, b) = (sc.count(i, j, k), sc.count(j, i, k));
                let diff = a.abs_diff(b);
                if diff > worst {
                    worst = diff;
                    witness = Some((i, j, sc.space().representative(k)));
                }
            }
        }
    }
    GelfandCertificate {
        verdict: witness.is_none(),
        witness,
        max_asymmetry: worst as f64 / n,
    }
}

pub fn is_gelfand_pair(subgroup: &Subgroup) -> GelfandCertificate {
    let space = Arc::new(double_cosets(subgroup));
    certify(&structure_constants(&space))
}
