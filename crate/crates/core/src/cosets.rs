//! Double coset spaces `K\G/K`, functions on `G`, and bi-`K`-invariant
//! functions stored by their value on each double coset.

use std::collections::VecDeque;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCosetSpace {
    group: Arc<FiniteGroup>,
    subgroup: Subgroup,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    inverse_class: Vec<usize>,
}

/// Partition `G` into double cosets `KxK`, ordered by smallest element.
pub fn double_cosets(subgroup: &Subgroup) -> DoubleCosetSpace {
    let g = Arc::clone(subgroup.parent());
    let n = g.order();
    let k = subgroup.members();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = vec![start];
        class_of[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &a in k {
                let ax = g.mul(a, x);
                for &b in k {
                    let y = g.mul(ax, b);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    let inverse_class = classes.iter().map(|c| class_of[g.inv(c[0])]).collect();
    DoubleCosetSpace {
        group: g,
        subgroup: subgroup.clone(),
        classes,
        class_of,
        inverse_class,
    }
}

impl DoubleCosetSpace {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// Number of double cosets (`d + 1`).
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    pub fn class_size(&self, i: usize) -> usize {
        self.classes[i].len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn representative(&self, i: usize) -> usize {
        self.classes[i][0]
    }

    /// Index of the class `D_i⁻¹`.
    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse_class[i]
    }

    /// Haar mass `|D_i| / n` of each class.
    pub fn class_weights(&self) -> Vec<f64> {
        let n = self.group.order() as f64;
        self.classes.iter().map(|c| c.len() as f64 / n).collect()
    }

    pub fn same_as(&self, other: &DoubleCosetSpace) -> bool {
        std::ptr::eq(self, other) || self == other
    }
}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A complex-valued function on `G`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Complex64>,
}

impl GroupFunction {
    pub fn new(group: &Arc<FiniteGroup>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::BadParameter(format!(
                "function has {} values, group order is {}",
                values.len(),
                group.order()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::BadParameter("non-finite function value".into()));
        }
        Ok(GroupFunction {
            group: Arc::clone(group),
            values,
        })
    }

    pub fn from_real(group: &Arc<FiniteGroup>, values: &[f64]) -> Result<Self> {
        Self::new(group, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn zeros(group: &Arc<FiniteGroup>) -> Self {
        GroupFunction {
            group: Arc::clone(group),
            values: vec![Complex64::new(0.0, 0.0); group.order()],
        }
    }

    /// Point mass `δ_x` with value 1 at `x`.
    pub fn delta(group: &Arc<FiniteGroup>, x: usize) -> Self {
        let mut f = Self::zeros(group);
        f.values[x] = Complex64::new(1.0, 0.0);
        f
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn check_same_group(&self, other: &GroupFunction) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::Mismatch)
        }
    }

    /// Right translation `R_y f(x) = f(x y⁻¹)`.
    pub fn translate(&self, y: usize) -> GroupFunction {
        let g = &self.group;
        let yi = g.inv(y);
        let values = (0..g.order()).map(|x| self.values[g.mul(x, yi)]).collect();
        GroupFunction {
            group: Arc::clone(g),
            values,
        }
    }

    pub fn zip_with(
        &self,
        other: &GroupFunction,
        op: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<GroupFunction> {
        self.check_same_group(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| op(a, b))
            .collect();
        Ok(GroupFunction {
            group: Arc::clone(&self.group),
            values,
        })
    }

    pub fn sub(&self, other: &GroupFunction) -> Result<GroupFunction> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: Complex64) -> GroupFunction {
        GroupFunction {
            group: Arc::clone(&self.group),
            values: self.values.iter().map(|&v| v * c).collect(),
        }
    }

    /// `(1/n) Σ f(x)·conj(g(x))`.
    pub fn inner(&self, other: &GroupFunction) -> Result<Complex64> {
        self.check_same_group(other)?;
        let n = self.values.len() as f64;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum::<Complex64>()
            / n)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Whether `f(k₁xk₂) = f(x)` for all `k₁, k₂ ∈ K`, to `tol`.
    pub fn is_bi_invariant(&self, subgroup: &Subgroup, tol: f64) -> bool {
        let g = &self.group;
        (0..g.order()).all(|x| {
            subgroup.members().iter().all(|&a| {
                subgroup.members().iter().all(|&b| {
                    (self.values[g.mul(g.mul(a, x), b)] - self.values[x]).norm() <= tol
                })
            })
        })
    }
}

/// Normalized `L^p(G)` norm `((1/n) Σ |f|^p)^{1/p}`; `p = ∞` gives the max.
pub fn lp_norm_group(f: &GroupFunction, p: f64) -> Result<f64> {
    let n = f.values.len() as f64;
    weighted_lp(f.values.iter().map(|v| (1.0 / n, v.norm())), p)
}

/// `(Σ w_i |v_i|^p)^{1/p}` with the usual `p = ∞` convention.
pub(crate) fn weighted_lp(terms: impl Iterator<Item = (f64, f64)>, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::BadExponent(p, "[1, ∞]"));
    }
    if p.is_infinite() {
        return Ok(terms.map(|(_, a)| a).fold(0.0, f64::max));
    }
    let terms: Vec<(f64, f64)> = terms.collect();
    // Scale by the max to avoid under/overflow at large p.
    let scale = terms.iter().map(|&(_, a)| a).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(0.0);
    }
    let sum: f64 = terms.iter().map(|&(w, a)| w * (a / scale).powf(p)).sum();
    Ok(scale * sum.powf(1.0 / p))
}

/// Hölder conjugate `p/(p-1)`, with `1 ↔ ∞`.
pub fn holder_conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

/// A bi-`K`-invariant function, one value per double coset.
#[derive(Debug, Clone, PartialEq)]
pub struct BiInvariantFunction {
    space: Arc<DoubleCosetSpace>,
    class_values: Vec<Complex64>,
}

impl BiInvariantFunction {
    pub fn new(space: &Arc<DoubleCosetSpace>, class_values: Vec<Complex64>) -> Result<Self> {
        if class_values.len() != space.len() {
            return Err(Error::BadParameter(format!(
                "{} class values for {} double cosets",
                class_values.len(),
                space.len()
            )));
        }
        if class_values.iter().any(|v| !v.is_finite()) {
            return Err(Error::BadParameter("non-finite function value".into()));
        }
        Ok(BiInvariantFunction {
            space: Arc::clone(space),
            class_values,
        })
    }

    pub fn indicator(space: &Arc<DoubleCosetSpace>, i: usize) -> Self {
        let mut v = vec![Complex64::new(0.0, 0.0); space.len()];
        v[i] = Complex64::new(1.0, 0.0);
        BiInvariantFunction {
            space: Arc::clone(space),
            class_values: v,
        }
    }

    pub fn space(&self) -> &Arc<DoubleCosetSpace> {
        &self.space
    }

    pub fn class_values(&self) -> &[Complex64] {
        &self.class_values
    }

    pub fn expand(&self) -> GroupFunction {
        let g = self.space.group();
        let values = (0..g.order())
            .map(|x| self.class_values[self.space.class_of(x)])
            .collect();
        GroupFunction {
            group: Arc::clone(g),
            values,
        }
    }

    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        let w = self.space.class_weights();
        weighted_lp(
            w.into_iter()
                .zip(&self.class_values)
                .map(|(w, v)| (w, v.norm())),
            p,
        )
    }

    pub fn inner(&self, other: &BiInvariantFunction) -> Result<Complex64> {
        if !self.space.same_as(&other.space) {
            return Err(Error::Mismatch);
        }
        Ok(self
            .space
            .class_weights()
            .iter()
            .zip(self.class_values.iter().zip(&other.class_values))
            .map(|(&w, (a, b))| a * b.conj() * w)
            .sum())
    }

    pub fn sub(&self, other: &BiInvariantFunction) -> Result<BiInvariantFunction> {
        if !self.space.same_as(&other.space) {
            return Err(Error::Mismatch);
        }
        let v = self
            .class_values
            .iter()
            .zip(&other.class_values)
            .map(|(a, b)| a - b)
            .collect();
        Ok(BiInvariantFunction {
            space: Arc::clone(&self.space),
            class_values: v,
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.class_values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Double average `f♮(x) = (1/|K|²) Σ_{k₁,k₂} f(k₁xk₂)`.
///
/// `K x K` covers its double coset uniformly, so this equals the plain mean of
/// `f` over each class.
pub fn project_bi_invariant(
    f: &GroupFunction,
    space: &Arc<DoubleCosetSpace>,
) -> Result<BiInvariantFunction> {
    if !same_group(f.group(), space.group()) {
        return Err(Error::Mismatch);
    }
    let class_values = space
        .classes()
        .iter()
        .map(|c| c.iter().map(|&x| f.values[x]).sum::<Complex64>() / c.len() as f64)
        .collect();
    Ok(BiInvariantFunction {
        space: Arc::clone(space),
        class_values,
    })
}
