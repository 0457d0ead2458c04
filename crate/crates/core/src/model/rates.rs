//! The rate ledger: spontaneous decay rates, intersystem-crossing rates,
//! and per-laser cross sections.
//!
//! Rates are in MHz; cross sections in MHz/mW. The default values are a
//! working ledger assembled from commonly used NV dynamics figures: a
//! ~15 ns radiative excited-state lifetime, strongly spin-dependent ISC,
//! a ~220 ns singlet lifetime, and charge cross sections several times
//! smaller than the optical absorption cross sections. The singlet cross
//! section defaults to the detectability threshold of 0.5 MHz/mW, which
//! also keeps the green-range photocurrent contrast near its nominal ~30%
//! saturation level. All of them are overridable through the run
//! configuration file.

use crate::error::{Error, Result};

/// All model rates and cross sections.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelRates {
    /// NV⁻ triplet excited → ground radiative decay (MHz).
    pub gamma_rad: f64,
    /// NV⁻ triplet excited m_s = 0 → singlet ISC (MHz).
    pub gamma_isc0: f64,
    /// NV⁻ triplet excited m_s = ±1 → singlet ISC (MHz).
    pub gamma_isc1: f64,
    /// Singlet ground decay rate 1/τ_s (MHz).
    pub gamma_s: f64,
    /// Branching fraction of singlet decay into the m_s = 0 triplet ground
    /// sublevel (the remainder goes to m_s = ±1).
    pub beta_s0: f64,
    /// NV⁰ excited → ground decay (MHz).
    pub gamma_n: f64,
    /// NV⁻ ground → excited absorption cross section (MHz/mW).
    pub sigma_abs_minus: f64,
    /// NV⁰ ground → excited absorption cross section (MHz/mW).
    pub sigma_abs_zero: f64,
    /// NV⁻ excited → conduction band ionization cross section (MHz/mW).
    pub sigma_ion: f64,
    /// NV⁰ excited recombination cross section (MHz/mW).
    pub sigma_rec: f64,
    /// Stimulated-emission cross section for photons below the NV⁻ ZPL
    /// (MHz/mW).
    pub sigma_stim: f64,
    /// Singlet ground ionization cross section (MHz/mW) — the quantity the
    /// protocol is designed to detect.
    pub sigma_s: f64,
}

impl Default for ModelRates {
    fn default() -> Self {
        ModelRates {
            gamma_rad: 66.0,
            gamma_isc0: 8.0,
            gamma_isc1: 55.0,
            gamma_s: 4.5,
            beta_s0: 0.9,
            gamma_n: 52.0,
            sigma_abs_minus: 30.0,
            sigma_abs_zero: 30.0,
            sigma_ion: 5.0,
            sigma_rec: 5.0,
            sigma_stim: 30.0,
            sigma_s: 0.5,
        }
    }
}

impl ModelRates {
    /// Check non-negativity, the branching-fraction range, and the
    /// spin-dependence of ISC (m_s = ±1 must cross faster than m_s = 0,
    /// which is what polarizes the spin under optical cycling).
    pub fn validate(&self) -> Result<()> {
        let named = self.named_values();
        for (name, value) in named {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidRates(format!(
                    "{name} must be finite and non-negative, got {value}"
                )));
            }
        }
        if !(0.0..=1.0).contains(&self.beta_s0) {
            return Err(Error::InvalidRates(format!(
                "beta_s0 must lie in [0, 1], got {}",
                self.beta_s0
            )));
        }
        if self.gamma_isc1 <= self.gamma_isc0 {
            return Err(Error::InvalidRates(format!(
                "gamma_isc1 ({}) must exceed gamma_isc0 ({})",
                self.gamma_isc1, self.gamma_isc0
            )));
        }
        Ok(())
    }

    /// Singlet lifetime τ_s in µs (infinite if gamma_s is zero).
    pub fn singlet_lifetime_us(&self) -> f64 {
        1.0 / self.gamma_s
    }

    pub fn with_sigma_s(mut self, sigma_s: f64) -> Self {
        self.sigma_s = sigma_s;
        self
    }

    fn named_values(&self) -> [(&'static str, f64); 12] {
        [
            ("gamma_rad", self.gamma_rad),
            ("gamma_isc0", self.gamma_isc0),
            ("gamma_isc1", self.gamma_isc1),
            ("gamma_s", self.gamma_s),
            ("beta_s0", self.beta_s0),
            ("gamma_n", self.gamma_n),
            ("sigma_abs_minus", self.sigma_abs_minus),
            ("sigma_abs_zero", self.sigma_abs_zero),
            ("sigma_ion", self.sigma_ion),
            ("sigma_rec", self.sigma_rec),
            ("sigma_stim", self.sigma_stim),
            ("sigma_s", self.sigma_s),
        ]
    }

    /// Smallest nonzero spontaneous rate, used to pick relaxation horizons.
    pub fn min_nonzero_rate(&self) -> Option<f64> {
        [
            self.gamma_rad,
            self.gamma_isc0,
            self.gamma_isc1,
            self.gamma_s,
            self.gamma_n,
        ]
        .into_iter()
        .filter(|&r| r > 0.0)
        .fold(None, |acc: Option<f64>, r| {
            Some(acc.map_or(r, |a| a.min(r)))
        })
    }
}
