//! Function and spectral documents:
//! `{"pair": name, "domain": "group" | "classes", "values": [[re, im], ...]}`
//! and `{"pair": name, "domain": "spectrum", "basisOrder": [...], "values": [...]}`,
//! where `basisOrder` lists the class values of each spherical function.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cosets::{BiInvariantFunction, GroupFunction};
use crate::error::{Error, Result};
use crate::pair::GelfandPair;
use crate::spherical::{SpectralVector, SphericalBasis};

/// Agreement required between an echoed `basisOrder` and the current basis.
pub const BASIS_ECHO_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Group,
    Classes,
    Spectrum,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionDocument {
    pub pair: String,
    pub domain: Domain,
    pub values: Vec<[f64; 2]>,
    #[serde(rename = "basisOrder", default, skip_serializing_if = "Option::is_none")]
    pub basis_order: Option<Vec<Vec<[f64; 2]>>>,
    /// Set on a spectrum computed from a function that was not bi-invariant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projected: Option<bool>,
}

fn pack(values: &[Complex64]) -> Vec<[f64; 2]> {
    values.iter().map(|v| [v.re, v.im]).collect()
}

fn unpack(values: &[[f64; 2]]) -> Vec<Complex64> {
    values.iter().map(|[re, im]| Complex64::new(*re, *im)).collect()
}

pub fn basis_order(basis: &SphericalBasis) -> Vec<Vec<[f64; 2]>> {
    basis.functions().iter().map(|phi| pack(phi.class_values())).collect()
}

impl FunctionDocument {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_classes(pair: &GelfandPair, f: &BiInvariantFunction) -> Self {
        FunctionDocument {
            pair: pair.name().to_string(),
            domain: Domain::Classes,
            values: pack(f.class_values()),
            basis_order: None,
            projected: None,
        }
    }

    pub fn from_spectrum(pair: &GelfandPair, f: &SpectralVector) -> Self {
        FunctionDocument {
            pair: pair.name().to_string(),
            domain: Domain::Spectrum,
            values: pack(f.values()),
            basis_order: Some(basis_order(pair.basis())),
            projected: Some(f.projected()),
        }
    }

    fn check_pair(&self, pair: &GelfandPair) -> Result<()> {
        if self.pair != pair.name() {
            return Err(Error::BadParameter(format!(
                "document is for pair '{}', not '{}'",
                self.pair,
                pair.name()
            )));
        }
        Ok(())
    }

    /// Spherical transform of a `group` or `classes` document.
    pub fn transform(&self, pair: &GelfandPair) -> Result<SpectralVector> {
        self.check_pair(pair)?;
        let values = unpack(&self.values);
        match self.domain {
            Domain::Group => pair.transform_group(&GroupFunction::new(pair.group(), values)?),
            Domain::Classes => pair.transform(&BiInvariantFunction::new(pair.space(), values)?),
            Domain::Spectrum => Err(Error::BadParameter(
                "expected a group or classes document".into(),
            )),
        }
    }

    /// Inverse transform of a `spectrum` document; an echoed `basisOrder` must
    /// match the current basis.
    pub fn inverse(&self, pair: &GelfandPair) -> Result<BiInvariantFunction> {
        self.check_pair(pair)?;
        if self.domain != Domain::Spectrum {
            return Err(Error::BadParameter("expected a spectrum document".into()));
        }
        if let Some(echo) = &self.basis_order {
            let current = basis_order(pair.basis());
            let same = echo.len() == current.len()
                && echo.iter().zip(&current).all(|(a, b)| {
                    a.len() == b.len()
                        && a.iter().zip(b).all(|(x, y)| {
                            (x[0] - y[0]).abs() <= BASIS_ECHO_TOL
                                && (x[1] - y[1]).abs() <= BASIS_ECHO_TOL
                        })
                });
            if !same {
                return Err(Error::BadParameter(
                    "basisOrder does not match the spherical basis of this pair".into(),
                ));
            }
        }
        pair.inverse(&SpectralVector::new(pair.basis(), unpack(&self.values))?)
    }
}
