//! Singlet-threshold hypotheses.
//!
//! Each simulation runs under a hypothesized singlet-ionization threshold
//! wavelength λ_s. A laser ionizes the singlet iff its photon energy is at
//! least the threshold energy, i.e. iff its wavelength is ≤ λ_s. Paired
//! simulations use a "red" scenario (ionization laser above threshold
//! energy) and a "blue" scenario (below threshold).

use crate::error::{Error, Result};

/// Which of the paired hypothesis curves a scenario feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveLabel {
    Red,
    Blue,
}

impl CurveLabel {
    pub fn label(self) -> &'static str {
        match self {
            CurveLabel::Red => "red",
            CurveLabel::Blue => "blue",
        }
    }
}

impl std::fmt::Display for CurveLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// A hypothesized singlet-ionization threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    /// Threshold wavelength λ_s in nm: photons at or below this wavelength
    /// carry enough energy to ionize the singlet ground state.
    pub lambda_s_nm: f64,
    /// Reporting label for paired red/blue curves.
    pub curve: CurveLabel,
}

impl Scenario {
    pub fn new(lambda_s_nm: f64, curve: CurveLabel) -> Result<Self> {
        if !lambda_s_nm.is_finite() || lambda_s_nm <= 0.0 {
            return Err(Error::NonPositiveWavelength { nm: lambda_s_nm });
        }
        Ok(Scenario { lambda_s_nm, curve })
    }

    pub fn red(lambda_s_nm: f64) -> Result<Self> {
        Self::new(lambda_s_nm, CurveLabel::Red)
    }

    pub fn blue(lambda_s_nm: f64) -> Result<Self> {
        Self::new(lambda_s_nm, CurveLabel::Blue)
    }

    /// Whether a laser at the given wavelength ionizes the singlet under
    /// this hypothesis.
    #[inline]
    pub fn ionizes_singlet(&self, wavelength_nm: f64) -> bool {
        wavelength_nm <= self.lambda_s_nm
    }
}
