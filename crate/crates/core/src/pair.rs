use std::sync::Arc;

use crate::cosets::{double_cosets, BiInvariantFunction, DoubleCosetSpace, GroupFunction};
use crate::error::Result;
use crate::group::{FiniteGroup, Limits, Subgroup};
use crate::spherical::{
    inverse_transform, plancherel_measure, spherical_basis, spherical_transform,
    spherical_transform_group, PlancherelMeasure, SpectralVector, SphericalBasis,
};

/// A Gelfand pair with its spherical basis and Plancherel weights computed.
#[derive(Debug, Clone)]
pub struct GelfandPair {
    name: String,
    space: Arc<DoubleCosetSpace>,
    basis: SphericalBasis,
    plancherel: PlancherelMeasure,
}

impl GelfandPair {
    pub fn analyze(name: &str, subgroup: &Subgroup, limits: &Limits) -> Result<Self> {
        let space = Arc::new(double_cosets(subgroup));
        let basis = spherical_basis(&space, limits)?;
        let plancherel = plancherel_measure(&basis)?;
        Ok(GelfandPair {
            name: name.to_string(),
            space,
            basis,
            plancherel,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.space.group()
    }

    pub fn space(&self) -> &Arc<DoubleCosetSpace> {
        &self.space
    }

    pub fn basis(&self) -> &SphericalBasis {
        &self.basis
    }

    pub fn plancherel(&self) -> &PlancherelMeasure {
        &self.plancherel
    }

    pub fn transform(&self, f: &BiInvariantFunction) -> Result<SpectralVector> {
        spherical_transform(f, &self.basis)
    }

    pub fn transform_group(&self, f: &GroupFunction) -> Result<SpectralVector> {
        spherical_transform_group(f, &self.basis)
    }

    pub fn inverse(&self, spectral: &SpectralVector) -> Result<BiInvariantFunction> {
        inverse_transform(spectral, &self.basis, &self.plancherel)
    }
}
