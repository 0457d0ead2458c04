//! Assembly of the 7×7 rate-generator matrix for a set of simultaneously
//! active lasers.
//!
//! The generator `m` acts on population column vectors, `dp/dt = m · p`,
//! with `m[(to, from)]` holding the rate from `from` into `to`. Off-diagonal
//! entries are non-negative and every column sums to zero: ionization and
//! recombination move population between charge states rather than losing
//! it. Alongside `m`, two flux vectors record the observable rates driven by
//! the same gated channels: the photocurrent-generating ionization flux out
//! of the triplet excited states and the singlet, and the radiated-photon
//! flux out of the triplet excited states.

use nalgebra::{SMatrix, SVector};

use crate::error::{Error, Result};
use crate::model::{
    channel_active, Channel, LaserField, Level, ModelRates, Scenario, LEVEL_COUNT,
};

pub type Matrix7 = SMatrix<f64, LEVEL_COUNT, LEVEL_COUNT>;
pub type FluxVector = SVector<f64, LEVEL_COUNT>;

/// Column-sum tolerance for a valid generator.
pub const COLUMN_SUM_TOL: f64 = 1e-12;

/// A rate generator with its observable flux rows.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorMatrix {
    m: Matrix7,
    charge_flux: FluxVector,
    photon_flux: FluxVector,
}

impl GeneratorMatrix {
    /// Wrap a raw matrix and flux vectors, checking the generator
    /// invariants (used by tests that hand-construct small systems).
    pub fn from_raw(m: Matrix7, charge_flux: FluxVector, photon_flux: FluxVector) -> Result<Self> {
        if m.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidGenerator("non-finite matrix entry".into()));
        }
        for col in 0..LEVEL_COUNT {
            // Accumulate off-diagonals first (the order the builder uses to
            // form the diagonal), so a properly built column cancels exactly
            // instead of leaving an order-dependent rounding residual.
            let mut off = 0.0;
            for row in 0..LEVEL_COUNT {
                if row == col {
                    continue;
                }
                let v = m[(row, col)];
                if v < 0.0 {
                    return Err(Error::InvalidGenerator(format!(
                        "negative off-diagonal entry {v} at ({row}, {col})"
                    )));
                }
                off += v;
            }
            let sum = off + m[(col, col)];
            if sum.abs() > COLUMN_SUM_TOL {
                return Err(Error::InvalidGenerator(format!(
                    "column {col} sums to {sum}, expected 0 within {COLUMN_SUM_TOL}"
                )));
            }
        }
        if charge_flux.iter().chain(photon_flux.iter()).any(|&x| !x.is_finite() || x < 0.0) {
            return Err(Error::InvalidGenerator("flux rates must be finite and non-negative".into()));
        }
        Ok(GeneratorMatrix {
            m,
            charge_flux,
            photon_flux,
        })
    }

    #[inline]
    pub fn matrix(&self) -> &Matrix7 {
        &self.m
    }

    /// Photocurrent-generating ionization rate out of each level (MHz).
    #[inline]
    pub fn charge_flux(&self) -> &FluxVector {
        &self.charge_flux
    }

    /// Radiative photon emission rate out of each level (MHz).
    #[inline]
    pub fn photon_flux(&self) -> &FluxVector {
        &self.photon_flux
    }

    /// Largest entry magnitude, used for time scaling heuristics.
    pub fn max_rate(&self) -> f64 {
        self.m.iter().fold(0.0_f64, |a, &x| a.max(x.abs()))
    }

    /// Smallest nonzero off-diagonal rate.
    pub fn min_nonzero_rate(&self) -> Option<f64> {
        let mut min: Option<f64> = None;
        for col in 0..LEVEL_COUNT {
            for row in 0..LEVEL_COUNT {
                let v = self.m[(row, col)];
                if row != col && v > 0.0 {
                    min = Some(min.map_or(v, |m: f64| m.min(v)));
                }
            }
        }
        min
    }
}

/// Build the generator for a set of simultaneously active lasers under a
/// threshold scenario. An empty laser list yields the darkness generator
/// (spontaneous terms only).
pub fn build_generator(
    rates: &ModelRates,
    lasers: &[LaserField],
    scenario: &Scenario,
) -> Result<GeneratorMatrix> {
    rates.validate()?;
    for laser in lasers {
        // Re-validate: LaserField construction already enforces these, but
        // plain struct updates can bypass the constructor.
        LaserField::new(laser.wavelength_nm, laser.power_mw, laser.mode, laser.role)?;
    }

    let mut m = Matrix7::zeros();
    let mut charge = FluxVector::zeros();
    let mut photon = FluxVector::zeros();

    let (g0, g1, e0, e1, s, n0, n1) = (
        Level::G0.index(),
        Level::G1.index(),
        Level::E0.index(),
        Level::E1.index(),
        Level::S.index(),
        Level::N0.index(),
        Level::N1.index(),
    );

    // Spontaneous terms (always present).
    m[(g0, e0)] += rates.gamma_rad;
    m[(g1, e1)] += rates.gamma_rad;
    m[(s, e0)] += rates.gamma_isc0;
    m[(s, e1)] += rates.gamma_isc1;
    m[(g0, s)] += rates.beta_s0 * rates.gamma_s;
    m[(g1, s)] += (1.0 - rates.beta_s0) * rates.gamma_s;
    m[(n0, n1)] += rates.gamma_n;
    photon[e0] += rates.gamma_rad;
    photon[e1] += rates.gamma_rad;

    // Laser-induced terms, gated per channel.
    for laser in lasers {
        if channel_active(Channel::PumpMinus, laser, scenario) {
            let r = laser.induced_rate(rates.sigma_abs_minus);
            m[(e0, g0)] += r;
            m[(e1, g1)] += r;
        }
        if channel_active(Channel::StimEmit, laser, scenario) {
            let r = laser.induced_rate(rates.sigma_stim);
            m[(g0, e0)] += r;
            m[(g1, e1)] += r;
        }
        if channel_active(Channel::IonizeExcited, laser, scenario) {
            let r = laser.induced_rate(rates.sigma_ion);
            m[(n0, e0)] += r;
            m[(n0, e1)] += r;
            charge[e0] += r;
            charge[e1] += r;
        }
        if channel_active(Channel::IonizeSinglet, laser, scenario) {
            let r = laser.induced_rate(rates.sigma_s);
            m[(n0, s)] += r;
            charge[s] += r;
        }
        if channel_active(Channel::PumpZero, laser, scenario) {
            let r = laser.induced_rate(rates.sigma_abs_zero);
            m[(n1, n0)] += r;
        }
        if channel_active(Channel::Recombine, laser, scenario) {
            // Recombination arrives spin-mixed: equal split over the two
            // triplet ground sublevels.
            let r = laser.induced_rate(rates.sigma_rec) / 2.0;
            m[(g0, n1)] += r;
            m[(g1, n1)] += r;
        }
    }

    // Diagonal: negative column sums, computed from the accumulated
    // off-diagonals so that each column cancels exactly in floating point.
    for col in 0..LEVEL_COUNT {
        let mut out = 0.0;
        for row in 0..LEVEL_COUNT {
            if row != col {
                out += m[(row, col)];
            }
        }
        m[(col, col)] = -out;
    }

    GeneratorMatrix::from_raw(m, charge, photon)
}

/// The darkness generator: spontaneous terms only.
pub fn spontaneous_generator(rates: &ModelRates) -> Result<GeneratorMatrix> {
    // Scenario is irrelevant without lasers.
    build_generator(rates, &[], &Scenario::red(crate::model::regime::RED_ORANGE_NM)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn defaults() -> ModelRates {
        ModelRates::default()
    }

    #[test]
    fn darkness_has_only_spontaneous_terms() {
        let g = spontaneous_generator(&defaults()).unwrap();
        let m = g.matrix();
        let r = defaults();
        assert_eq!(m[(Level::G0.index(), Level::E0.index())], r.gamma_rad);
        assert_eq!(m[(Level::G1.index(), Level::E1.index())], r.gamma_rad);
        assert_eq!(m[(Level::S.index(), Level::E0.index())], r.gamma_isc0);
        assert_eq!(m[(Level::S.index(), Level::E1.index())], r.gamma_isc1);
        assert_eq!(m[(Level::G0.index(), Level::S.index())], r.beta_s0 * r.gamma_s);
        assert_eq!(
            m[(Level::G1.index(), Level::S.index())],
            (1.0 - r.beta_s0) * r.gamma_s
        );
        assert_eq!(m[(Level::N0.index(), Level::N1.index())], r.gamma_n);
        // Ground columns carry no outflow in darkness.
        assert_eq!(m.column(Level::G0.index()).amax(), 0.0);
        assert_eq!(m.column(Level::G1.index()).amax(), 0.0);
        assert_eq!(m.column(Level::N0.index()).amax(), 0.0);
        // No laser, no photocurrent channel.
        assert_eq!(g.charge_flux().amax(), 0.0);
    }

    #[test]
    fn doubling_power_doubles_exactly_the_laser_induced_entries() {
        let scen = Scenario::red(600.0).unwrap();
        let lasers1 = [
            LaserField::population(532.0, 2.0).unwrap(),
            LaserField::ionization(650.0, 5.0).unwrap(),
        ];
        let lasers2 = [
            LaserField::population(532.0, 4.0).unwrap(),
            LaserField::ionization(650.0, 10.0).unwrap(),
        ];
        let dark = spontaneous_generator(&defaults()).unwrap();
        let g1 = build_generator(&defaults(), &lasers1, &scen).unwrap();
        let g2 = build_generator(&defaults(), &lasers2, &scen).unwrap();
        for row in 0..LEVEL_COUNT {
            for col in 0..LEVEL_COUNT {
                if row == col {
                    continue;
                }
                let spont = dark.matrix()[(row, col)];
                let induced1 = g1.matrix()[(row, col)] - spont;
                let induced2 = g2.matrix()[(row, col)] - spont;
                assert_eq!(induced2, 2.0 * induced1, "entry ({row}, {col})");
            }
        }
    }

    #[test]
    fn singlet_ionization_entry_follows_the_threshold() {
        let r = defaults();
        let green = [LaserField::population(532.0, 1.0).unwrap()];

        let above = Scenario::red(600.0).unwrap(); // 532 <= 600: gated on
        let g = build_generator(&r, &green, &above).unwrap();
        assert_eq!(
            g.matrix()[(Level::N0.index(), Level::S.index())],
            r.sigma_s * 1.0
        );
        assert_eq!(g.charge_flux()[Level::S.index()], r.sigma_s * 1.0);

        let below = Scenario::red(500.0).unwrap(); // 532 > 500: gated off
        let g = build_generator(&r, &green, &below).unwrap();
        assert_eq!(g.matrix()[(Level::N0.index(), Level::S.index())], 0.0);
        assert_eq!(g.charge_flux()[Level::S.index()], 0.0);
    }

    #[test]
    fn hand_constructed_green_generator_matches() {
        // Single 532 nm, 1 mW laser with threshold at 600 nm. Every channel
        // except stimulated emission is open.
        let r = defaults();
        let scen = Scenario::red(600.0).unwrap();
        let laser = [LaserField::population(532.0, 1.0).unwrap()];
        let g = build_generator(&r, &laser, &scen).unwrap();

        let mut want = Matrix7::zeros();
        let (g0, g1, e0, e1, s, n0, n1) = (0, 1, 2, 3, 4, 5, 6);
        want[(g0, e0)] = r.gamma_rad;
        want[(g1, e1)] = r.gamma_rad;
        want[(s, e0)] = r.gamma_isc0;
        want[(s, e1)] = r.gamma_isc1;
        want[(g0, s)] = r.beta_s0 * r.gamma_s;
        want[(g1, s)] = (1.0 - r.beta_s0) * r.gamma_s;
        want[(n0, n1)] = r.gamma_n;
        want[(e0, g0)] = r.sigma_abs_minus;
        want[(e1, g1)] = r.sigma_abs_minus;
        want[(n0, e0)] = r.sigma_ion;
        want[(n0, e1)] = r.sigma_ion;
        want[(n0, s)] = r.sigma_s;
        want[(n1, n0)] = r.sigma_abs_zero;
        want[(g0, n1)] = r.sigma_rec / 2.0;
        want[(g1, n1)] = r.sigma_rec / 2.0;
        for c in 0..7 {
            let col_sum: f64 = (0..7).filter(|&x| x != c).map(|x| want[(x, c)]).sum();
            want[(c, c)] = -col_sum;
        }
        assert_eq!(g.matrix(), &want);
    }

    #[test]
    fn pulsed_mode_removes_excited_state_charge_channels() {
        let r = defaults();
        let scen = Scenario::red(600.0).unwrap();
        let pulsed = [LaserField::ionization(580.0, 5.0)
            .unwrap()
            .with_mode(crate::model::LaserMode::ShortPulsed)];
        let g = build_generator(&r, &pulsed, &scen).unwrap();
        assert_eq!(g.matrix()[(Level::N0.index(), Level::E0.index())], 0.0);
        assert_eq!(g.matrix()[(Level::G0.index(), Level::N1.index())], 0.0);
        // Ground pumping and singlet ionization survive.
        assert!(g.matrix()[(Level::E0.index(), Level::G0.index())] > 0.0);
        assert!(g.matrix()[(Level::N0.index(), Level::S.index())] > 0.0);
        assert_eq!(g.charge_flux()[Level::E0.index()], 0.0);
        assert!(g.charge_flux()[Level::S.index()] > 0.0);
    }

    #[test]
    fn two_laser_generator_is_additive_over_the_spontaneous_baseline() {
        let r = defaults();
        let scen = Scenario::blue(560.0).unwrap();
        let a = LaserField::population(532.0, 2.0).unwrap();
        let b = LaserField::ionization(550.0, 5.0).unwrap();
        let dark = spontaneous_generator(&r).unwrap();
        let ga = build_generator(&r, &[a], &scen).unwrap();
        let gb = build_generator(&r, &[b], &scen).unwrap();
        let gab = build_generator(&r, &[a, b], &scen).unwrap();
        let sum = ga.matrix() + gb.matrix() - dark.matrix();
        let diff = (gab.matrix() - sum).amax();
        assert!(diff <= 1e-12, "additivity violated by {diff}");
    }

    #[test]
    fn rejects_invalid_inputs() {
        let scen = Scenario::red(600.0).unwrap();
        let mut bad_laser = LaserField::population(532.0, 1.0).unwrap();
        bad_laser.power_mw = -2.0;
        assert!(build_generator(&defaults(), &[bad_laser], &scen).is_err());

        let mut bad_rates = defaults();
        bad_rates.sigma_ion = -5.0;
        assert!(build_generator(&bad_rates, &[], &scen).is_err());
    }

    #[test]
    fn ionization_band_enforced_for_ionization_role() {
        let scen = Scenario::red(600.0).unwrap();
        let mut laser = LaserField::population(700.0, 1.0).unwrap();
        laser.role = crate::model::LaserRole::Ionization;
        assert!(build_generator(&defaults(), &[laser], &scen).is_err());
    }
}
