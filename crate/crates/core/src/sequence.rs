//! Pulse sequences: representation, the default charge-conversion sequence,
//! and execution against a rate ledger and threshold scenario.
//!
//! The default sequence has six steps: simulated green initialization (with
//! a dark settle window), a microwave π-pulse moving the polarized spin into
//! m_s = ±1, a short green population pulse feeding the singlet through ISC,
//! a short dark delay that empties the excited states, the ionization pulse
//! (during which photocurrent is collected), and a weak green readout pulse.

use crate::error::{Error, Result};
use crate::generator::build_generator;
use crate::model::{
    classify_regime, LaserField, LaserMode, LaserRole, Regime, Scenario, StateVector,
};
use crate::propagator::{propagate_sampled, SegmentResult, TrajectorySample};

/// Defaults for the charge-conversion sequence.
pub const INIT_WAVELENGTH_NM: f64 = 532.0;
pub const INIT_DURATION_US: f64 = 3.0;
pub const INIT_SETTLE_US: f64 = 1.0;
pub const POPULATION_PULSE_US: f64 = 0.03;
pub const DEFAULT_DELAY_US: f64 = 0.03;
pub const IONIZATION_PULSE_US: f64 = 0.1;
pub const READOUT_POWER_MW: f64 = 0.1;
pub const READOUT_DURATION_US: f64 = 1.0;
pub const POPULATION_POWER_MW: f64 = 2.0;
/// In the blue regime the population laser cannot ionize the singlet, so a
/// stronger pulse is used to build singlet population.
pub const POPULATION_POWER_BLUE_MW: f64 = 5.0;

/// Default population-pulse power for a regime (mW).
pub fn population_power_for(regime: Regime) -> f64 {
    match regime {
        Regime::Blue => POPULATION_POWER_BLUE_MW,
        _ => POPULATION_POWER_MW,
    }
}

/// One step of a pulse sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SequenceStep {
    /// Optical initialization followed by a dark settle window.
    Initialize {
        laser: LaserField,
        duration_us: f64,
        settle_us: f64,
    },
    /// Instantaneous microwave π-pulse swapping the triplet ground spins.
    PiPulse,
    /// A timed laser pulse; at most one pulse per sequence collects
    /// photocurrent (the ionization window).
    Pulse {
        laser: LaserField,
        duration_us: f64,
        collect_pc: bool,
    },
    /// Dark evolution.
    Delay { duration_us: f64 },
    /// Readout pulse; photons radiated here feed the fluorescence readout.
    Readout { laser: LaserField, duration_us: f64 },
}

impl SequenceStep {
    pub fn label(&self) -> &'static str {
        match self {
            SequenceStep::Initialize { .. } => "init",
            SequenceStep::PiPulse => "pi",
            SequenceStep::Pulse { .. } => "pulse",
            SequenceStep::Delay { .. } => "delay",
            SequenceStep::Readout { .. } => "readout",
        }
    }

    /// Wall-clock duration of the step (µs), including any settle window.
    pub fn duration_us(&self) -> f64 {
        match self {
            SequenceStep::Initialize {
                duration_us,
                settle_us,
                ..
            } => duration_us + settle_us,
            SequenceStep::PiPulse => 0.0,
            SequenceStep::Pulse { duration_us, .. } => *duration_us,
            SequenceStep::Delay { duration_us } => *duration_us,
            SequenceStep::Readout { duration_us, .. } => *duration_us,
        }
    }

    fn validate(&self) -> Result<()> {
        let check = |d: f64, what: &str| -> Result<()> {
            if !d.is_finite() || d < 0.0 {
                Err(Error::Sequence(format!("{what} duration must be non-negative, got {d} us")))
            } else {
                Ok(())
            }
        };
        match self {
            SequenceStep::Initialize {
                duration_us,
                settle_us,
                ..
            } => {
                check(*duration_us, "init")?;
                check(*settle_us, "settle")
            }
            SequenceStep::PiPulse => Ok(()),
            SequenceStep::Pulse { duration_us, .. } => check(*duration_us, "pulse"),
            SequenceStep::Delay { duration_us } => check(*duration_us, "delay"),
            SequenceStep::Readout { duration_us, .. } => check(*duration_us, "readout"),
        }
    }
}

/// An ordered, validated pulse sequence bound to a threshold scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSequence {
    steps: Vec<SequenceStep>,
    pub scenario: Scenario,
}

impl PulseSequence {
    pub fn new(steps: Vec<SequenceStep>, scenario: Scenario) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::Sequence("sequence must contain at least one step".into()));
        }
        let mut collect_count = 0usize;
        let mut first_pulse: Option<usize> = None;
        let mut last_pi: Option<usize> = None;
        for (i, step) in steps.iter().enumerate() {
            step.validate()?;
            match step {
                SequenceStep::Pulse { collect_pc, .. } => {
                    if first_pulse.is_none() {
                        first_pulse = Some(i);
                    }
                    if *collect_pc {
                        collect_count += 1;
                    }
                }
                SequenceStep::PiPulse => last_pi = Some(i),
                _ => {}
            }
        }
        if collect_count > 1 {
            return Err(Error::Sequence(format!(
                "at most one pulse may collect photocurrent, found {collect_count}"
            )));
        }
        if let (Some(pi), Some(pulse)) = (last_pi, first_pulse) {
            if pi > pulse {
                return Err(Error::Sequence(format!(
                    "pi-pulse at step {pi} must precede the first laser pulse at step {pulse}"
                )));
            }
        }
        Ok(PulseSequence { steps, scenario })
    }

    pub fn steps(&self) -> &[SequenceStep] {
        &self.steps
    }

    /// Same steps under a different threshold hypothesis.
    pub fn with_scenario(&self, scenario: Scenario) -> Self {
        PulseSequence {
            steps: self.steps.clone(),
            scenario,
        }
    }

    pub fn has_collect_window(&self) -> bool {
        self.steps
            .iter()
            .any(|s| matches!(s, SequenceStep::Pulse { collect_pc: true, .. }))
    }

    /// Switch the photocurrent-collecting pulse to short-pulsed operation.
    /// Returns an error if the sequence has no collection window.
    pub fn with_pulsed_ionization(&self) -> Result<Self> {
        let mut steps = self.steps.clone();
        let mut found = false;
        for step in &mut steps {
            if let SequenceStep::Pulse {
                laser,
                collect_pc: true,
                ..
            } = step
            {
                *laser = laser.with_mode(LaserMode::ShortPulsed);
                found = true;
            }
        }
        if !found {
            return Err(Error::Sequence(
                "cannot switch to pulsed ionization: no collection window".into(),
            ));
        }
        PulseSequence::new(steps, self.scenario)
    }

    /// Total wall-clock duration (µs).
    pub fn duration_us(&self) -> f64 {
        self.steps.iter().map(|s| s.duration_us()).sum()
    }
}

/// The six-step charge-conversion sequence for a given regime. The
/// ionization laser's wavelength must classify into `regime`.
pub fn default_sequence(
    regime: Regime,
    ionization_laser: LaserField,
    scenario: Scenario,
) -> Result<PulseSequence> {
    let actual = classify_regime(ionization_laser.wavelength_nm)?;
    if actual != regime {
        return Err(Error::Sequence(format!(
            "ionization wavelength {} nm lies in the {actual} regime, not {regime}",
            ionization_laser.wavelength_nm
        )));
    }
    if ionization_laser.role != LaserRole::Ionization {
        return Err(Error::Sequence(format!(
            "ionization pulse requires an ionization-role laser, got {}",
            ionization_laser.role.label()
        )));
    }
    let pop_power = population_power_for(regime);
    let green = LaserField::population(INIT_WAVELENGTH_NM, pop_power)?;
    let readout = LaserField::readout(INIT_WAVELENGTH_NM, READOUT_POWER_MW)?;
    PulseSequence::new(
        vec![
            SequenceStep::Initialize {
                laser: green,
                duration_us: INIT_DURATION_US,
                settle_us: INIT_SETTLE_US,
            },
            SequenceStep::PiPulse,
            SequenceStep::Pulse {
                laser: green,
                duration_us: POPULATION_PULSE_US,
                collect_pc: false,
            },
            SequenceStep::Delay {
                duration_us: DEFAULT_DELAY_US,
            },
            SequenceStep::Pulse {
                laser: ionization_laser,
                duration_us: IONIZATION_PULSE_US,
                collect_pc: true,
            },
            SequenceStep::Readout {
                laser: readout,
                duration_us: READOUT_DURATION_US,
            },
        ],
        scenario,
    )
}

/// The instantaneous, perfect π-pulse: swap the two triplet ground spin
/// populations, leave every other level and both accumulators untouched.
pub fn apply_pi_pulse(state: &StateVector) -> StateVector {
    state.with_ground_spins_swapped()
}

/// Execution record for one sequence step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub index: usize,
    pub label: &'static str,
    /// Time at which the step started (µs from sequence start).
    pub start_us: f64,
    pub duration_us: f64,
    pub result: SegmentResult,
}

/// Full execution report for a sequence run.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceReport {
    pub scenario: Scenario,
    pub steps: Vec<StepRecord>,
    /// State after the last step (including readout).
    pub final_state: StateVector,
    /// State at the end of the last non-readout step: the instant at which
    /// the final population observables are defined.
    pub final_read_state: StateVector,
    /// Total charge collected over photocurrent-collection windows, if the
    /// sequence has one.
    pub collected_pc: Option<f64>,
    /// Photons radiated during readout steps (AU).
    pub readout_photons: f64,
}

impl SequenceReport {
    pub fn total_duration_us(&self) -> f64 {
        self.steps.iter().map(|s| s.duration_us).sum()
    }
}

/// Run a sequence from `initial` (uniform by default).
pub fn run_sequence(
    seq: &PulseSequence,
    rates: &crate::model::ModelRates,
    initial: Option<&StateVector>,
) -> Result<SequenceReport> {
    run_sequence_sampled(seq, rates, initial, None)
}

/// Run a sequence, sampling each propagated segment every `stride_us`.
pub fn run_sequence_sampled(
    seq: &PulseSequence,
    rates: &crate::model::ModelRates,
    initial: Option<&StateVector>,
    stride_us: Option<f64>,
) -> Result<SequenceReport> {
    rates.validate()?;
    let scenario = seq.scenario;
    let darkness = build_generator(rates, &[], &scenario)?;

    let mut state = initial.copied().unwrap_or_else(StateVector::uniform);
    let mut records = Vec::with_capacity(seq.steps().len());
    let mut collected: Option<f64> = None;
    let mut readout_photons = 0.0;
    let mut final_read_state = state;
    let mut clock_us = 0.0;

    for (index, step) in seq.steps().iter().enumerate() {
        let wrap = |e: Error| Error::StepFailed {
            index,
            label: step.label().to_string(),
            source: Box::new(e),
        };
        let result = match *step {
            SequenceStep::Initialize {
                laser,
                duration_us,
                settle_us,
            } => {
                let gen = build_generator(rates, &[laser], &scenario).map_err(wrap)?;
                let lit = propagate_sampled(&state, &gen, duration_us, stride_us).map_err(wrap)?;
                let dark =
                    propagate_sampled(&lit.state, &darkness, settle_us, stride_us).map_err(wrap)?;
                merge_segments(lit, dark, duration_us)
            }
            SequenceStep::PiPulse => {
                let swapped = apply_pi_pulse(&state);
                SegmentResult {
                    state: swapped,
                    delta_q: 0.0,
                    delta_f: 0.0,
                    trajectory: stride_us.map(|_| {
                        vec![TrajectorySample {
                            time_us: 0.0,
                            state: swapped,
                        }]
                    }),
                }
            }
            SequenceStep::Pulse {
                laser,
                duration_us,
                collect_pc,
            } => {
                let gen = build_generator(rates, &[laser], &scenario).map_err(wrap)?;
                let seg = propagate_sampled(&state, &gen, duration_us, stride_us).map_err(wrap)?;
                if collect_pc {
                    *collected.get_or_insert(0.0) += seg.delta_q;
                }
                seg
            }
            SequenceStep::Delay { duration_us } => {
                propagate_sampled(&state, &darkness, duration_us, stride_us).map_err(wrap)?
            }
            SequenceStep::Readout { laser, duration_us } => {
                let gen = build_generator(rates, &[laser], &scenario).map_err(wrap)?;
                let seg = propagate_sampled(&state, &gen, duration_us, stride_us).map_err(wrap)?;
                readout_photons += seg.delta_f;
                seg
            }
        };

        state = result.state;
        if !matches!(step, SequenceStep::Readout { .. }) {
            final_read_state = state;
        }
        records.push(StepRecord {
            index,
            label: step.label(),
            start_us: clock_us,
            duration_us: step.duration_us(),
            result,
        });
        clock_us += step.duration_us();
    }

    Ok(SequenceReport {
        scenario,
        steps: records,
        final_state: state,
        final_read_state,
        collected_pc: collected,
        readout_photons,
    })
}

/// Merge the lit and settle halves of an initialize step into one segment.
fn merge_segments(first: SegmentResult, second: SegmentResult, first_duration_us: f64) -> SegmentResult {
    let trajectory = match (first.trajectory, second.trajectory) {
        (Some(mut a), Some(b)) => {
            // Drop the duplicated boundary sample and shift the settle times.
            a.extend(b.into_iter().skip(1).map(|ts| TrajectorySample {
                time_us: ts.time_us + first_duration_us,
                state: ts.state,
            }));
            Some(a)
        }
        _ => None,
    };
    SegmentResult {
        state: second.state,
        delta_q: first.delta_q + second.delta_q,
        delta_f: first.delta_f + second.delta_f,
        trajectory,
    }
}
