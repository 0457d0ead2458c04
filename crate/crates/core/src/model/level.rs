//! The seven-level population scheme spanning both NV charge states.
//!
//! NV⁻ contributes five levels: the triplet ground and excited states (each
//! split into an m_s = 0 sublevel and a lumped m_s = ±1 pair) plus the
//! metastable singlet ground state. NV⁰ contributes its ground and excited
//! states. Populations are dimensionless occupation probabilities that sum
//! to one across all seven levels.

use nalgebra::SVector;

use crate::error::{Error, Result};

/// Number of levels in the scheme.
pub const LEVEL_COUNT: usize = 7;

/// Population vector type over the seven levels.
pub type Populations = SVector<f64, LEVEL_COUNT>;

/// One level of the combined NV⁻/NV⁰ scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(usize)]
pub enum Level {
    /// NV⁻ triplet ground, m_s = 0.
    G0 = 0,
    /// NV⁻ triplet ground, m_s = ±1 (lumped pair).
    G1 = 1,
    /// NV⁻ triplet excited, m_s = 0.
    E0 = 2,
    /// NV⁻ triplet excited, m_s = ±1 (lumped pair).
    E1 = 3,
    /// NV⁻ singlet metastable ground.
    S = 4,
    /// NV⁰ ground.
    N0 = 5,
    /// NV⁰ excited.
    N1 = 6,
}

impl Level {
    pub const ALL: [Level; LEVEL_COUNT] = [
        Level::G0,
        Level::G1,
        Level::E0,
        Level::E1,
        Level::S,
        Level::N0,
        Level::N1,
    ];

    /// Levels belonging to the negative charge state.
    pub const NV_MINUS: [Level; 5] = [Level::G0, Level::G1, Level::E0, Level::E1, Level::S];

    /// Levels belonging to the neutral charge state.
    pub const NV_ZERO: [Level; 2] = [Level::N0, Level::N1];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_nv_minus(self) -> bool {
        !matches!(self, Level::N0 | Level::N1)
    }

    pub fn label(self) -> &'static str {
        match self {
            Level::G0 => "G0",
            Level::G1 => "G1",
            Level::E0 => "E0",
            Level::E1 => "E1",
            Level::S => "S",
            Level::N0 => "N0",
            Level::N1 => "N1",
        }
    }
}

impl std::fmt::Display for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Tolerances for state validity after numerical propagation.
pub const POPULATION_FLOOR: f64 = -1e-12;
pub const TRACE_TOL: f64 = 1e-9;

/// Populations over the seven levels plus two running accumulators:
/// collected photocurrent charge and radiated photon count (both in
/// arbitrary units, monotonically non-decreasing over a simulation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector {
    p: Populations,
    q_acc: f64,
    f_acc: f64,
}

impl StateVector {
    /// All population in the NV⁻ triplet ground m_s = 0 level.
    pub fn ground() -> Self {
        let mut p = Populations::zeros();
        p[Level::G0.index()] = 1.0;
        StateVector {
            p,
            q_acc: 0.0,
            f_acc: 0.0,
        }
    }

    /// Uniform population over all seven levels.
    pub fn uniform() -> Self {
        StateVector {
            p: Populations::repeat(1.0 / LEVEL_COUNT as f64),
            q_acc: 0.0,
            f_acc: 0.0,
        }
    }

    /// All population in a single level.
    pub fn pure(level: Level) -> Self {
        let mut p = Populations::zeros();
        p[level.index()] = 1.0;
        StateVector {
            p,
            q_acc: 0.0,
            f_acc: 0.0,
        }
    }

    /// Build from explicit populations; they must be non-negative (within
    /// the numerical floor) and sum to one within the trace tolerance.
    pub fn from_populations(p: [f64; LEVEL_COUNT]) -> Result<Self> {
        let v = Populations::from_column_slice(&p);
        Self::from_parts(v, 0.0, 0.0)
    }

    pub(crate) fn from_parts(p: Populations, q_acc: f64, f_acc: f64) -> Result<Self> {
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidState("non-finite population".into()));
        }
        if let Some(bad) = p.iter().find(|&&x| x < POPULATION_FLOOR) {
            return Err(Error::InvalidState(format!(
                "negative population {bad} below floor {POPULATION_FLOOR}"
            )));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!(
                "populations sum to {total}, expected 1 within {TRACE_TOL}"
            )));
        }
        if !(q_acc.is_finite() && f_acc.is_finite()) || q_acc < 0.0 || f_acc < 0.0 {
            return Err(Error::InvalidState("invalid accumulator value".into()));
        }
        Ok(StateVector { p, q_acc, f_acc })
    }

    #[inline]
    pub fn populations(&self) -> &Populations {
        &self.p
    }

    #[inline]
    pub fn population(&self, level: Level) -> f64 {
        self.p[level.index()]
    }

    /// Accumulated photocurrent charge (AU) since the state was created.
    #[inline]
    pub fn charge_acc(&self) -> f64 {
        self.q_acc
    }

    /// Accumulated radiated photon count (AU) since the state was created.
    #[inline]
    pub fn photons_acc(&self) -> f64 {
        self.f_acc
    }

    pub fn total(&self) -> f64 {
        self.p.iter().sum()
    }

    /// Population fraction in the negative charge state.
    pub fn nv_minus_fraction(&self) -> f64 {
        Level::NV_MINUS
            .iter()
            .map(|l| self.p[l.index()])
            .sum()
    }

    /// Population fraction in the neutral charge state.
    pub fn nv_zero_fraction(&self) -> f64 {
        Level::NV_ZERO.iter().map(|l| self.p[l.index()]).sum()
    }

    /// Swap the two triplet ground sublevels, leaving everything else
    /// (including the accumulators) untouched.
    pub fn with_ground_spins_swapped(&self) -> Self {
        let mut out = *self;
        out.p.swap_rows(Level::G0.index(), Level::G1.index());
        out
    }
}
