//! Built-in pairs. Abelian groups with trivial `K`, symmetric groups over a
//! point stabilizer, the cube under its symmetry group, the square under the
//! dihedral group, and two negative controls.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits, Permutation, Subgroup};
use crate::pair::GelfandPair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Construction {
    /// `ℤ_n` with `K = {e}`.
    Cyclic { n: usize },
    /// `ℤ₂ × ℤ₂` with `K = {e}`.
    Klein,
    /// `S_n` with `K` the stabilizer of the last point.
    SymmetricStabilizer { n: usize },
    /// `S_n` over itself.
    SymmetricFull { n: usize },
    /// `S_n` with `K = {e}`.
    SymmetricTrivial { n: usize },
    /// Symmetries of the `dim`-cube acting on its vertices, `K` fixing vertex 0.
    Hyperoctahedral { dim: usize },
    /// Symmetries of the regular `n`-gon, `K` the reflection fixing vertex 0.
    Dihedral { n: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub construction: Construction,
    #[serde(rename = "expectGelfand")]
    pub expect_gelfand: bool,
}

pub fn catalog() -> Vec<CatalogEntry> {
    use Construction::*;
    let entry = |name, description, construction, expect_gelfand| CatalogEntry {
        name,
        description,
        construction,
        expect_gelfand,
    };
    vec![
        entry("z2", "cyclic group of order 2 over {e}", Cyclic { n: 2 }, true),
        entry("z3", "cyclic group of order 3 over {e}", Cyclic { n: 3 }, true),
        entry("z4", "cyclic group of order 4 over {e}", Cyclic { n: 4 }, true),
        entry("z8", "cyclic group of order 8 over {e}", Cyclic { n: 8 }, true),
        entry("z16", "cyclic group of order 16 over {e}", Cyclic { n: 16 }, true),
        entry("z64", "cyclic group of order 64 over {e}", Cyclic { n: 64 }, true),
        entry("klein4", "Klein four-group over {e}", Klein, true),
        entry("s3/s2", "S3 over the stabilizer of a point", SymmetricStabilizer { n: 3 }, true),
        entry("s4/s3", "S4 over the stabilizer of a point", SymmetricStabilizer { n: 4 }, true),
        entry("s5/s4", "S5 over the stabilizer of a point", SymmetricStabilizer { n: 5 }, true),
        entry(
            "cube3",
            "hyperoctahedral group of order 48 on the cube vertices over the stabilizer of a vertex",
            Hyperoctahedral { dim: 3 },
            true,
        ),
        entry(
            "d8",
            "dihedral group of order 8 on the square over a reflection subgroup of order 2",
            Dihedral { n: 4 },
            true,
        ),
        entry("s3/s3", "S3 over itself", SymmetricFull { n: 3 }, true),
        entry("s3/e", "S3 over {e}, not a Gelfand pair", SymmetricTrivial { n: 3 }, false),
        entry("s4/e", "S4 over {e}, not a Gelfand pair", SymmetricTrivial { n: 4 }, false),
    ]
}

pub fn find(name: &str) -> Result<CatalogEntry> {
    catalog()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Unknown {
            kind: "pair",
            name: name.to_string(),
        })
}

fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
}

fn symmetric_generators(n: usize) -> Vec<Permutation> {
    let mut swap: Permutation = (0..n).collect();
    swap.swap(0, 1);
    let cycle: Permutation = (0..n).map(|i| (i + 1) % n).collect();
    vec![swap, cycle]
}

fn cube_generators(dim: usize) -> Vec<Permutation> {
    let m = 1usize << dim;
    let flip: Permutation = (0..m).map(|v| v ^ 1).collect();
    let swap: Permutation = (0..m)
        .map(|v| (v & !3) | ((v & 1) << 1) | ((v >> 1) & 1))
        .collect();
    let rotate: Permutation = (0..m)
        .map(|v| ((v << 1) & (m - 1)) | (v >> (dim - 1)))
        .collect();
    vec![flip, swap, rotate]
}

fn point_stabilizer(g: &Arc<FiniteGroup>, point: usize) -> Result<Subgroup> {
    let perms = g
        .permutations()
        .ok_or_else(|| Error::BadParameter("group has no permutation representation".into()))?
        .to_vec();
    Subgroup::from_predicate(g, |x| perms[x][point] == point)
}

impl CatalogEntry {
    pub fn build(&self, limits: &Limits) -> Result<Subgroup> {
        use Construction::*;
        let cap = limits.max_order;
        let name = self.name;
        match self.construction {
            Cyclic { n } => {
                let g = Arc::new(FiniteGroup::from_table(name, &cyclic_table(n))?);
                Subgroup::generated(&g, &[])
            }
            Klein => {
                let rows: Vec<Vec<usize>> =
                    (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
                let g = Arc::new(FiniteGroup::from_table(name, &rows)?);
                Subgroup::generated(&g, &[])
            }
            SymmetricStabilizer { n } => {
                let g = Arc::new(FiniteGroup::from_permutations(
                    name,
                    n,
                    &symmetric_generators(n),
                    cap,
                )?);
                point_stabilizer(&g, n - 1)
            }
            SymmetricFull { n } => {
                let g = Arc::new(FiniteGroup::from_permutations(
                    name,
                    n,
                    &symmetric_generators(n),
                    cap,
                )?);
                Ok(Subgroup::whole(&g))
            }
            SymmetricTrivial { n } => {
                let g = Arc::new(FiniteGroup::from_permutations(
                    name,
                    n,
                    &symmetric_generators(n),
                    cap,
                )?);
                Subgroup::generated(&g, &[])
            }
            Hyperoctahedral { dim } => {
                let g = Arc::new(FiniteGroup::from_permutations(
                    name,
                    1 << dim,
                    &cube_generators(dim),
                    cap,
                )?);
                point_stabilizer(&g, 0)
            }
            Dihedral { n } => {
                let rotation: Permutation = (0..n).map(|i| (i + 1) % n).collect();
                let reflection: Permutation = (0..n).map(|i| (n - i) % n).collect();
                let g = Arc::new(FiniteGroup::from_permutations(
                    name,
                    n,
                    &[rotation, reflection],
                    cap,
                )?);
                point_stabilizer(&g, 0)
            }
        }
    }

    /// Builds and analyzes a positive entry.
    pub fn pair(&self, limits: &Limits) -> Result<GelfandPair> {
        GelfandPair::analyze(self.name, &self.build(limits)?, limits)
    }
}
