//! Photophysics model: the level scheme, rate ledger, laser descriptions,
//! wavelength regimes, threshold scenarios, and channel gating.

pub mod gating;
pub mod laser;
pub mod level;
pub mod rates;
pub mod regime;
pub mod scenario;

pub use gating::{channel_active, Channel};
pub use laser::{photon_energy_ev, LaserField, LaserMode, LaserRole, HC_EV_NM, IONIZATION_BAND_NM};
pub use level::{Level, Populations, StateVector, LEVEL_COUNT};
pub use rates::ModelRates;
pub use regime::{classify_regime, Regime};
pub use scenario::{CurveLabel, Scenario};
