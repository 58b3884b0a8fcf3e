//! Deterministic random inputs. Every draw is keyed by `(masterSeed, purpose,
//! index)`: the master seed seeds a ChaCha8 generator and `(purpose, index)`
//! selects its stream, so a trial's inputs do not depend on which other
//! trials run or in what order.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cosets::{BiInvariantFunction, DoubleCosetSpace, GroupFunction};
use crate::error::Result;
use crate::pair::GelfandPair;
use crate::sobolev::MollifierFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionKind {
    BiInvariant,
    General,
}

/// Independent streams for the different inputs of one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Purpose {
    Function = 0,
    Second = 1,
    Mollifier = 2,
    Scalar = 3,
}

pub fn trial_rng(master_seed: u64, purpose: Purpose, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(((purpose as u64) << 48) | index);
    rng
}

pub fn random_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))
}

pub fn random_bi_invariant(space: &Arc<DoubleCosetSpace>, rng: &mut impl Rng) -> BiInvariantFunction {
    let values = (0..space.len()).map(|_| random_complex(rng)).collect();
    BiInvariantFunction::new(space, values).expect("finite values of the right length")
}

pub fn random_group_function(space: &Arc<DoubleCosetSpace>, rng: &mut impl Rng) -> GroupFunction {
    let values = (0..space.group().order()).map(|_| random_complex(rng)).collect();
    GroupFunction::new(space.group(), values).expect("finite values of the right length")
}

/// Random function on `G` keyed by `(seed, index)`; the bi-invariant kind
/// draws one value per double coset and expands it.
pub fn random_function(pair: &GelfandPair, seed: u64, index: u64, kind: FunctionKind) -> GroupFunction {
    let mut rng = trial_rng(seed, Purpose::Function, index);
    match kind {
        FunctionKind::BiInvariant => random_bi_invariant(pair.space(), &mut rng).expand(),
        FunctionKind::General => random_group_function(pair.space(), &mut rng),
    }
}

/// Mollifier supported on `D_0` plus a random set of further classes, with
/// values in `(0, 1]` on the support before normalization.
pub fn random_mollifier(space: &Arc<DoubleCosetSpace>, rng: &mut impl Rng) -> Result<MollifierFunction> {
    let weights = space.class_weights();
    let raw: Vec<f64> = (0..space.len())
        .map(|c| {
            let keep = c == 0 || rng.random_bool(0.5);
            let v = 1.0 - rng.random::<f64>();
            if keep {
                v
            } else {
                0.0
            }
        })
        .collect();
    let mass: f64 = raw.iter().zip(&weights).map(|(v, w)| v * w).sum();
    let values = raw.iter().map(|v| Complex64::new(v / mass, 0.0)).collect();
    MollifierFunction::new(BiInvariantFunction::new(space, values)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Limits;
    use crate::harness::catalog::find;

    #[test]
    fn draws_are_reproducible_and_keyed() {
        let pair = find("s3/s2").unwrap().pair(&Limits::default()).unwrap();
        let a = random_function(&pair, 42, 7, FunctionKind::General);
        let b = random_function(&pair, 42, 7, FunctionKind::General);
        assert_eq!(a.values(), b.values());
        let c = random_function(&pair, 42, 8, FunctionKind::General);
        assert_ne!(a.values(), c.values());
        let d = random_function(&pair, 43, 7, FunctionKind::General);
        assert_ne!(a.values(), d.values());
    }

    #[test]
    fn bi_invariant_kind_is_constant_on_classes() {
        let pair = find("s4/s3").unwrap().pair(&Limits::default()).unwrap();
        let f = random_function(&pair, 1, 0, FunctionKind::BiInvariant);
        assert!(f.is_bi_invariant(pair.space().subgroup(), 0.0));
    }

    #[test]
    fn empirical_mean_is_near_zero() {
        let pair = find("z4").unwrap().pair(&Limits::default()).unwrap();
        let mut sum = Complex64::new(0.0, 0.0);
        let mut count = 0.0;
        for i in 0..1000 {
            for v in random_function(&pair, 9, i, FunctionKind::General).values() {
                assert!(v.re.abs() <= 1.0 && v.im.abs() <= 1.0);
                sum += v;
                count += 1.0;
            }
        }
        let mean = sum / count;
        assert!(mean.re.abs() < 0.1 && mean.im.abs() < 0.1);
    }

    #[test]
    fn mollifiers_are_admissible() {
        let pair = find("cube3").unwrap().pair(&Limits::default()).unwrap();
        for i in 0..50 {
            let mut rng = trial_rng(5, Purpose::Mollifier, i);
            let eta = random_mollifier(pair.space(), &mut rng).unwrap();
            assert!(eta.support()[0]);
        }
    }
}
