//! Quantitative checks of the bounds, asymptotics and scalar identities,
//! registered by name behind the [`Check`] trait.

pub mod asymptotics;
pub mod checks;
pub mod decay;
pub mod identities;
pub mod pointwise;
pub mod report;
pub mod spectral_bounds;

use std::collections::BTreeMap;

pub use asymptotics::{check_asymptotics, study_asymptotics, AsymptoticsReport, AsymptoticsStudy, RegimeScale};
pub use decay::{compute_a, compute_b, fit_decay, DecayFit, DecayFitReport};
pub use identities::{check_psi_subordination, comparison_residual, laguerre_connection_residual, SubordinationResidual};
pub use pointwise::{pointwise_control_slack, TrigPath};
pub use report::CheckReport;
pub use spectral_bounds::{check_pointwise_spherical, check_spectral_integral, spectrum_sample, PointwiseSphericalReport, SpectralIntegralReport};

use crate::error::Result;

pub trait Check: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn run(&self) -> Result<CheckReport>;
}

pub struct CheckRegistry {
    checks: BTreeMap<&'static str, Box<dyn Check>>,
}

impl CheckRegistry {
    pub fn empty() -> Self {
        Self { checks: BTreeMap::new() }
    }

    pub fn standard() -> Self {
        let mut r = Self::empty();
        for c in checks::standard_checks() {
            r.register(c);
        }
        r
    }

    pub fn register(&mut self, check: Box<dyn Check>) {
        self.checks.insert(check.name(), check);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Check> {
        self.checks.get(name).map(|c| c.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.checks.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Check> {
        self.checks.values().map(|c| c.as_ref())
    }
}
