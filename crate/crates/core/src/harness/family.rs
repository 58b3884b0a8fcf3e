//! Translation moduli across the cyclic family `ℤ_n` with the Cayley weight on
//! `{±1}`, in closed form: the spherical functions are the characters
//! `x ↦ e^{2πijx/n}`, `μ̂_j = 1` and `γ_j² = 1 − cos(2πj/n)`.
//!
//! Nothing here asserts a limit; the table only shows how the moduli behave
//! as `n` grows.

use std::f64::consts::TAU;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyPoint {
    pub n: usize,
    /// Modulus at the generator `y = 1`.
    #[serde(rename = "generatorModulus")]
    pub generator_modulus: f64,
    /// Largest modulus over all `y`.
    #[serde(rename = "maxModulus")]
    pub max_modulus: f64,
    /// `C = ‖(1+γ²)^{−s/2}‖₂`.
    #[serde(rename = "supConstant")]
    pub sup_constant: f64,
}

pub fn cyclic_modulus(n: usize, s: f64, y: usize) -> f64 {
    (0..n)
        .map(|j| {
            let theta = TAU * (j * y % n) as f64 / n as f64;
            let dist = (2.0 - 2.0 * theta.cos()).max(0.0).sqrt();
            let g2 = 1.0 - (TAU * j as f64 / n as f64).cos();
            dist / (1.0 + g2).powf(s / 2.0)
        })
        .fold(0.0, f64::max)
}

pub fn cyclic_family(ns: &[usize], s: f64) -> Vec<FamilyPoint> {
    ns.iter()
        .map(|&n| {
            let sup = (0..n)
                .map(|j| (2.0 - (TAU * j as f64 / n as f64).cos()).powf(-s))
                .sum::<f64>()
                .sqrt();
            FamilyPoint {
                n,
                generator_modulus: if n > 1 { cyclic_modulus(n, s, 1) } else { 0.0 },
                max_modulus: (0..n).map(|y| cyclic_modulus(n, s, y)).fold(0.0, f64::max),
                sup_constant: sup,
            }
        })
        .collect()
}
