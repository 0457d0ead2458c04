//! Wavelength regimes of the singlet-ionization search band.
//!
//! The band [477, 674] nm is split at the NV⁻ ZPL (637 nm), the NV⁰ ZPL
//! (575 nm), and the standard green excitation wavelength (532 nm). Each
//! split wavelength itself belongs to the shorter-wavelength (higher-energy)
//! regime, so that a laser exactly at a ZPL is treated as able to drive the
//! corresponding ground-state transition.

use crate::error::{Error, Result};

/// Band boundaries, long to short wavelength (nm).
pub const BAND_MAX_NM: f64 = 674.0;
pub const RED_ORANGE_NM: f64 = 637.0;
pub const ORANGE_GREEN_NM: f64 = 575.0;
pub const GREEN_BLUE_NM: f64 = 532.0;
pub const BAND_MIN_NM: f64 = 477.0;

/// The four wavelength regimes:
///
/// * `Red`    — (637, 674] nm: neither ground state is excited,
/// * `Orange` — (575, 637] nm: only the NV⁻ ground state is excited,
/// * `Green`  — (532, 575] nm: both ground states are excited,
/// * `Blue`   — [477, 532] nm: both ground states are excited and the
///   532 nm initialization/population laser does not reach the singlet
///   threshold hypothesized in this regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Red,
    Orange,
    Green,
    Blue,
}

impl Regime {
    pub const ALL: [Regime; 4] = [Regime::Red, Regime::Orange, Regime::Green, Regime::Blue];

    pub fn label(self) -> &'static str {
        match self {
            Regime::Red => "red",
            Regime::Orange => "orange",
            Regime::Green => "green",
            Regime::Blue => "blue",
        }
    }

    /// Inclusive wavelength interval (lo, hi) covered by this regime, with
    /// the ownership convention above.
    pub fn bounds_nm(self) -> (f64, f64) {
        match self {
            Regime::Red => (RED_ORANGE_NM, BAND_MAX_NM),
            Regime::Orange => (ORANGE_GREEN_NM, RED_ORANGE_NM),
            Regime::Green => (GREEN_BLUE_NM, ORANGE_GREEN_NM),
            Regime::Blue => (BAND_MIN_NM, GREEN_BLUE_NM),
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Classify a wavelength into its regime. Errors outside [477, 674] nm.
pub fn classify_regime(wavelength_nm: f64) -> Result<Regime> {
    if !wavelength_nm.is_finite() || !(BAND_MIN_NM..=BAND_MAX_NM).contains(&wavelength_nm) {
        return Err(Error::WavelengthOutOfRange {
            nm: wavelength_nm,
            lo: BAND_MIN_NM,
            hi: BAND_MAX_NM,
        });
    }
    Ok(if wavelength_nm <= GREEN_BLUE_NM {
        Regime::Blue
    } else if wavelength_nm <= ORANGE_GREEN_NM {
        Regime::Green
    } else if wavelength_nm <= RED_ORANGE_NM {
        Regime::Orange
    } else {
        Regime::Red
    })
}
