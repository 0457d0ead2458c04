//! Wavelength- and mode-gated transition channels.
//!
//! Each laser can drive up to six optically induced channels. Whether a
//! channel is open depends on the photon energy relative to the two ZPLs
//! (637 nm for NV⁻, 575 nm for NV⁰), on the hypothesized singlet threshold,
//! and on the temporal mode: a sufficiently short pulse excites the ground
//! states but does not drive the second, excited-state-mediated step of
//! ionization or recombination.

use super::laser::{LaserField, LaserMode};
use super::regime::{ORANGE_GREEN_NM, RED_ORANGE_NM};
use super::scenario::Scenario;

/// Optically induced transition channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    /// NV⁻ triplet ground → excited absorption (spin conserving).
    PumpMinus,
    /// NV⁰ ground → excited absorption.
    PumpZero,
    /// NV⁻ triplet excited → conduction band (ionization to NV⁰).
    IonizeExcited,
    /// NV⁰ excited → NV⁻ ground (recombination, spin mixing).
    Recombine,
    /// NV⁻ triplet excited → ground stimulated emission (photon energy
    /// below the NV⁻ ZPL only).
    StimEmit,
    /// NV⁻ singlet ground → conduction band (the hypothesis under test).
    IonizeSinglet,
}

impl Channel {
    pub const ALL: [Channel; 6] = [
        Channel::PumpMinus,
        Channel::PumpZero,
        Channel::IonizeExcited,
        Channel::Recombine,
        Channel::StimEmit,
        Channel::IonizeSinglet,
    ];
}

/// Whether `laser` drives `channel` under the given scenario.
pub fn channel_active(channel: Channel, laser: &LaserField, scenario: &Scenario) -> bool {
    let wl = laser.wavelength_nm;
    let cw = laser.mode == LaserMode::Continuous;
    match channel {
        Channel::PumpMinus => wl <= RED_ORANGE_NM,
        Channel::PumpZero => wl <= ORANGE_GREEN_NM,
        // The excited-state step of two-step ionization (and the mirrored
        // recombination step) needs the photon to arrive while the excited
        // state is occupied; a < 5 ps pulse is over before that.
        Channel::IonizeExcited => cw,
        Channel::Recombine => cw,
        Channel::StimEmit => wl > RED_ORANGE_NM,
        // Singlet ionization is a single-photon process from an already
        // occupied state, so it survives short-pulsed operation.
        Channel::IonizeSinglet => scenario.ionizes_singlet(wl),
    }
}
