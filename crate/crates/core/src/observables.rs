//! The two measurement channels extracted from sequence reports, and the
//! red/blue contrast between paired runs.

use crate::error::{Error, Result};
use crate::sequence::SequenceReport;

/// Guard for contrast denominators (the blue photocurrent in the red
/// wavelength range is legitimately near zero).
pub const CONTRAST_EPS: f64 = 1e-12;

/// Which observable a figure reads out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReadoutChannel {
    /// Final NV⁻ population fraction (fluorescence-based readout).
    Population,
    /// Collected photocurrent (AU).
    Photocurrent,
}

impl ReadoutChannel {
    pub const ALL: [ReadoutChannel; 2] = [ReadoutChannel::Population, ReadoutChannel::Photocurrent];

    pub fn label(self) -> &'static str {
        match self {
            ReadoutChannel::Population => "population",
            ReadoutChannel::Photocurrent => "photocurrent",
        }
    }
}

impl std::fmt::Display for ReadoutChannel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Final NV⁻ population fraction, read at the end of the last non-readout
/// step.
pub fn nv_minus_population(report: &SequenceReport) -> f64 {
    report.final_read_state.nv_minus_fraction()
}

/// Final NV⁰ population fraction at the same instant.
pub fn nv_zero_population(report: &SequenceReport) -> f64 {
    report.final_read_state.nv_zero_fraction()
}

/// Total charge collected during the photocurrent window(s). Errors if the
/// sequence had no collection window.
pub fn pc_signal(report: &SequenceReport) -> Result<f64> {
    report.collected_pc.ok_or(Error::NoCollectWindow)
}

/// Value of a readout channel for one report.
pub fn channel_value(channel: ReadoutChannel, report: &SequenceReport) -> Result<f64> {
    match channel {
        ReadoutChannel::Population => Ok(nv_minus_population(report)),
        ReadoutChannel::Photocurrent => pc_signal(report),
    }
}

/// Red/blue contrast for a channel. Population contrast is the blue excess
/// (singlet ionization lowers the red curve); photocurrent contrast is the
/// red excess (singlet ionization raises the red curve). Both are
/// normalized to the blue curve with an epsilon guard.
pub fn contrast(channel: ReadoutChannel, y_red: f64, y_blue: f64) -> f64 {
    match channel {
        ReadoutChannel::Population => (y_blue - y_red) / y_blue.max(CONTRAST_EPS),
        ReadoutChannel::Photocurrent => (y_red - y_blue) / y_blue.max(CONTRAST_EPS),
    }
}

/// One x-grid point of a paired red/blue sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    /// Swept-parameter value (units depend on the axis).
    pub x: f64,
    /// Observable under the red-curve (above-threshold) scenario.
    pub y_red: f64,
    /// Observable under the blue-curve (below-threshold) scenario.
    pub y_blue: f64,
    /// Red/blue contrast per [`contrast`].
    pub contrast: f64,
}

impl CurvePoint {
    pub fn new(channel: ReadoutChannel, x: f64, y_red: f64, y_blue: f64) -> Self {
        CurvePoint {
            x,
            y_red,
            y_blue,
            contrast: contrast(channel, y_red, y_blue),
        }
    }
}
