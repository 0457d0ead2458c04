//! Laser field descriptions and photon-energy conversion.
//!
//! Units: wavelength in nm, power in mW. A laser-induced transition rate is
//! cross section (MHz/mW) times power (mW), giving MHz.

use crate::error::{Error, Result};

/// hc in eV·nm.
pub const HC_EV_NM: f64 = 1239.84193;

/// Wavelength window available to ionization-role lasers. The bounds are the
/// photon energies bracketing the singlet-to-conduction-band gap.
pub const IONIZATION_BAND_NM: (f64, f64) = (477.0, 674.0);

/// Photon energy in eV for a wavelength in nm.
pub fn photon_energy_ev(wavelength_nm: f64) -> Result<f64> {
    if !wavelength_nm.is_finite() || wavelength_nm <= 0.0 {
        return Err(Error::NonPositiveWavelength { nm: wavelength_nm });
    }
    Ok(HC_EV_NM / wavelength_nm)
}

/// Temporal mode of a laser. Short-pulsed drives (pulse width well below the
/// excited-state lifetime) excite but do not cause appreciable ionization or
/// recombination from the excited states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaserMode {
    Continuous,
    ShortPulsed,
}

impl LaserMode {
    pub fn label(self) -> &'static str {
        match self {
            LaserMode::Continuous => "continuous",
            LaserMode::ShortPulsed => "short_pulsed",
        }
    }
}

/// Role a laser plays in a sequence. Only ionization-role lasers are
/// restricted to the singlet ionization search band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaserRole {
    Population,
    Ionization,
    Readout,
}

impl LaserRole {
    pub fn label(self) -> &'static str {
        match self {
            LaserRole::Population => "population",
            LaserRole::Ionization => "ionization",
            LaserRole::Readout => "readout",
        }
    }
}

/// A single laser: wavelength, optical power, temporal mode, and role.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaserField {
    pub wavelength_nm: f64,
    pub power_mw: f64,
    pub mode: LaserMode,
    pub role: LaserRole,
}

impl LaserField {
    pub fn new(wavelength_nm: f64, power_mw: f64, mode: LaserMode, role: LaserRole) -> Result<Self> {
        if !wavelength_nm.is_finite() || wavelength_nm <= 0.0 {
            return Err(Error::NonPositiveWavelength { nm: wavelength_nm });
        }
        if !power_mw.is_finite() || power_mw < 0.0 {
            return Err(Error::InvalidLaser(format!(
                "power must be finite and non-negative, got {power_mw} mW"
            )));
        }
        if role == LaserRole::Ionization {
            let (lo, hi) = IONIZATION_BAND_NM;
            if !(lo..=hi).contains(&wavelength_nm) {
                return Err(Error::WavelengthOutOfRange {
                    nm: wavelength_nm,
                    lo,
                    hi,
                });
            }
        }
        Ok(LaserField {
            wavelength_nm,
            power_mw,
            mode,
            role,
        })
    }

    /// Continuous-wave population laser.
    pub fn population(wavelength_nm: f64, power_mw: f64) -> Result<Self> {
        Self::new(wavelength_nm, power_mw, LaserMode::Continuous, LaserRole::Population)
    }

    /// Continuous-wave ionization laser.
    pub fn ionization(wavelength_nm: f64, power_mw: f64) -> Result<Self> {
        Self::new(wavelength_nm, power_mw, LaserMode::Continuous, LaserRole::Ionization)
    }

    /// Continuous-wave readout laser.
    pub fn readout(wavelength_nm: f64, power_mw: f64) -> Result<Self> {
        Self::new(wavelength_nm, power_mw, LaserMode::Continuous, LaserRole::Readout)
    }

    pub fn with_power(mut self, power_mw: f64) -> Result<Self> {
        if !power_mw.is_finite() || power_mw < 0.0 {
            return Err(Error::InvalidLaser(format!(
                "power must be finite and non-negative, got {power_mw} mW"
            )));
        }
        self.power_mw = power_mw;
        Ok(self)
    }

    pub fn with_mode(mut self, mode: LaserMode) -> Self {
        self.mode = mode;
        self
    }

    /// Rate (MHz) induced by this laser for a channel with the given cross
    /// section in MHz/mW.
    #[inline]
    pub fn induced_rate(&self, cross_section_mhz_per_mw: f64) -> f64 {
        cross_section_mhz_per_mw * self.power_mw
    }

    pub fn photon_energy_ev(&self) -> f64 {
        HC_EV_NM / self.wavelength_nm
    }
}
