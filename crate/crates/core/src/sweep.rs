//! Parameter sweeps: the five standard axes, per-regime figure
//! specifications, and the full figure suite with its manifest.
//!
//! Every grid point is an independent deterministic task. Points are
//! evaluated (possibly concurrently) and assembled in grid order, so the
//! output is byte-identical whatever the worker count.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{CurveLabel, LaserField, LaserMode, LaserRole, ModelRates, Regime, Scenario};
use crate::observables::{channel_value, CurvePoint, ReadoutChannel};
use crate::sequence::{
    self, run_sequence, PulseSequence, SequenceStep, INIT_DURATION_US, INIT_SETTLE_US,
    INIT_WAVELENGTH_NM, POPULATION_PULSE_US,
};

/// The five swept parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepAxis {
    /// Green population-pulse (and initialization) power, mW.
    PopulationPower,
    /// Ionization-pulse power, mW.
    IonizationPower,
    /// Singlet ionization cross section, MHz/mW.
    SingletCrossSection,
    /// Delay between population and ionization pulses, µs.
    Delay,
    /// Ionization-pulse duration, µs.
    IonizationDuration,
}

impl SweepAxis {
    pub const ALL: [SweepAxis; 5] = [
        SweepAxis::PopulationPower,
        SweepAxis::IonizationPower,
        SweepAxis::SingletCrossSection,
        SweepAxis::Delay,
        SweepAxis::IonizationDuration,
    ];

    /// Key used in CSV headers and the manifest (carries the unit).
    pub fn key(self) -> &'static str {
        match self {
            SweepAxis::PopulationPower => "population_power_mw",
            SweepAxis::IonizationPower => "ionization_power_mw",
            SweepAxis::SingletCrossSection => "sigma_s_mhz_per_mw",
            SweepAxis::Delay => "delay_us",
            SweepAxis::IonizationDuration => "ionization_duration_us",
        }
    }

    /// Short tag used in file names.
    pub fn file_tag(self) -> &'static str {
        match self {
            SweepAxis::PopulationPower => "population-power",
            SweepAxis::IonizationPower => "ionization-power",
            SweepAxis::SingletCrossSection => "cross-section",
            SweepAxis::Delay => "delay",
            SweepAxis::IonizationDuration => "ionization-duration",
        }
    }

    pub fn is_log(self) -> bool {
        !matches!(self, SweepAxis::Delay)
    }

    /// Default grid: log-spaced for powers and the cross section, linear
    /// for the delay, log-spaced for the window duration.
    pub fn default_grid(self) -> Vec<f64> {
        match self {
            SweepAxis::PopulationPower | SweepAxis::IonizationPower => log_grid(0.01, 30.0, 24),
            SweepAxis::SingletCrossSection => log_grid(0.01, 3.0, 24),
            SweepAxis::Delay => linear_grid(0.0, 1.5, 32),
            SweepAxis::IonizationDuration => log_grid(0.001, 1.0, 32),
        }
    }
}

impl std::fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.key())
    }
}

/// Strictly increasing log-spaced grid.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (llo, lhi) = (lo.log10(), hi.log10());
    (0..n)
        .map(|i| 10f64.powf(llo + (lhi - llo) * i as f64 / (n - 1) as f64))
        .collect()
}

/// Strictly increasing linear grid.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(hi > lo && n >= 2);
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Everything needed to produce one figure: the regime, the readout
/// channel, the paired threshold hypotheses, and the sequence parameters
/// (defaults mirror the standard sequence; any of them can be overridden).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureSpec {
    pub regime: Regime,
    pub channel: ReadoutChannel,
    pub ionization_wavelength_nm: f64,
    /// Threshold for the red (above-threshold) curve; must be ≥ the
    /// ionization wavelength.
    pub lambda_s_red_nm: f64,
    /// Threshold for the blue (below-threshold) curve; must be < the
    /// ionization wavelength.
    pub lambda_s_blue_nm: f64,
    pub ionization_power_mw: f64,
    pub population_power_mw: f64,
    pub delay_us: f64,
    pub ionization_duration_us: f64,
    pub readout_power_mw: f64,
    pub readout_duration_us: f64,
    /// Run the ionization pulse in short-pulsed mode.
    pub pulsed_ionization: bool,
}

impl FigureSpec {
    /// Per-regime defaults: the ionization wavelength sits mid-regime and
    /// the two hypotheses ±10 nm around it.
    pub fn for_regime(regime: Regime, channel: ReadoutChannel) -> Self {
        let (ion, red, blue) = match regime {
            Regime::Red => (650.0, 660.0, 640.0),
            Regime::Orange => (600.0, 610.0, 590.0),
            Regime::Green => (550.0, 560.0, 540.0),
            Regime::Blue => (510.0, 520.0, 500.0),
        };
        FigureSpec {
            regime,
            channel,
            ionization_wavelength_nm: ion,
            lambda_s_red_nm: red,
            lambda_s_blue_nm: blue,
            ionization_power_mw: 5.0,
            population_power_mw: sequence::population_power_for(regime),
            delay_us: sequence::DEFAULT_DELAY_US,
            ionization_duration_us: sequence::IONIZATION_PULSE_US,
            readout_power_mw: sequence::READOUT_POWER_MW,
            readout_duration_us: sequence::READOUT_DURATION_US,
            pulsed_ionization: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let actual = crate::model::classify_regime(self.ionization_wavelength_nm)?;
        if actual != self.regime {
            return Err(Error::InvalidSweep(format!(
                "ionization wavelength {} nm lies in the {actual} regime, not {}",
                self.ionization_wavelength_nm, self.regime
            )));
        }
        if self.lambda_s_red_nm.is_nan() || self.lambda_s_red_nm < self.ionization_wavelength_nm {
            return Err(Error::InvalidSweep(format!(
                "red-curve threshold {} nm must be at or above the ionization wavelength {} nm",
                self.lambda_s_red_nm, self.ionization_wavelength_nm
            )));
        }
        if self.lambda_s_blue_nm.is_nan() || self.lambda_s_blue_nm >= self.ionization_wavelength_nm {
            return Err(Error::InvalidSweep(format!(
                "blue-curve threshold {} nm must be below the ionization wavelength {} nm",
                self.lambda_s_blue_nm, self.ionization_wavelength_nm
            )));
        }
        if self.lambda_s_blue_nm <= 0.0 {
            return Err(Error::InvalidSweep("blue-curve threshold must be positive".into()));
        }
        Ok(())
    }

    pub fn red_scenario(&self) -> Result<Scenario> {
        Scenario::red(self.lambda_s_red_nm)
    }

    pub fn blue_scenario(&self) -> Result<Scenario> {
        Scenario::blue(self.lambda_s_blue_nm)
    }

    pub fn scenario_for(&self, curve: CurveLabel) -> Result<Scenario> {
        match curve {
            CurveLabel::Red => self.red_scenario(),
            CurveLabel::Blue => self.blue_scenario(),
        }
    }

    /// Build the sequence for this spec, optionally overriding one swept
    /// parameter. The cross-section axis does not touch the sequence; it
    /// overrides the rate ledger instead (see [`rates_for`]).
    ///
    /// [`rates_for`]: FigureSpec::rates_for
    pub fn build_sequence(
        &self,
        over: Option<(SweepAxis, f64)>,
        scenario: Scenario,
    ) -> Result<PulseSequence> {
        let grab = |axis: SweepAxis, base: f64| -> f64 {
            match over {
                Some((a, x)) if a == axis => x,
                _ => base,
            }
        };
        let population_power = grab(SweepAxis::PopulationPower, self.population_power_mw);
        let ionization_power = grab(SweepAxis::IonizationPower, self.ionization_power_mw);
        let delay = grab(SweepAxis::Delay, self.delay_us);
        let window = grab(SweepAxis::IonizationDuration, self.ionization_duration_us);

        let green = LaserField::population(INIT_WAVELENGTH_NM, population_power)?;
        let readout = LaserField::readout(INIT_WAVELENGTH_NM, self.readout_power_mw)?;
        let mode = if self.pulsed_ionization {
            LaserMode::ShortPulsed
        } else {
            LaserMode::Continuous
        };
        let ion = LaserField::new(
            self.ionization_wavelength_nm,
            ionization_power,
            mode,
            LaserRole::Ionization,
        )?;

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
                SequenceStep::Delay { duration_us: delay },
                SequenceStep::Pulse {
                    laser: ion,
                    duration_us: window,
                    collect_pc: true,
                },
                SequenceStep::Readout {
                    laser: readout,
                    duration_us: self.readout_duration_us,
                },
            ],
            scenario,
        )
    }

    /// Rate ledger for a grid point (only the cross-section axis touches it).
    pub fn rates_for(&self, base: &ModelRates, over: Option<(SweepAxis, f64)>) -> ModelRates {
        match over {
            Some((SweepAxis::SingletCrossSection, x)) => base.with_sigma_s(x),
            _ => *base,
        }
    }
}

/// Evaluate one grid point: run both scenarios, extract the channel.
fn eval_point(axis: SweepAxis, spec: &FigureSpec, rates: &ModelRates, x: f64) -> Result<CurvePoint> {
    let over = Some((axis, x));
    let rates_x = spec.rates_for(rates, over);

    let red_seq = spec.build_sequence(over, spec.red_scenario()?)?;
    let red = run_sequence(&red_seq, &rates_x, None)?;
    let y_red = channel_value(spec.channel, &red)?;

    let blue_seq = spec.build_sequence(over, spec.blue_scenario()?)?;
    let blue = run_sequence(&blue_seq, &rates_x, None)?;
    let y_blue = channel_value(spec.channel, &blue)?;

    Ok(CurvePoint::new(spec.channel, x, y_red, y_blue))
}

/// Sweep one axis over its default grid.
pub fn sweep(axis: SweepAxis, spec: &FigureSpec, rates: &ModelRates) -> Result<Vec<CurvePoint>> {
    sweep_on_grid(axis, spec, rates, &axis.default_grid())
}

/// Sweep one axis over an explicit grid. Grid points are evaluated
/// concurrently on the current rayon pool and assembled in grid order; any
/// failure aborts the sweep naming the offending grid value.
pub fn sweep_on_grid(
    axis: SweepAxis,
    spec: &FigureSpec,
    rates: &ModelRates,
    grid: &[f64],
) -> Result<Vec<CurvePoint>> {
    spec.validate()?;
    rates.validate()?;
    grid.par_iter()
        .map(|&x| {
            eval_point(axis, spec, rates, x).map_err(|e| Error::SweepFailed {
                axis: axis.key().to_string(),
                x,
                source: Box::new(e),
            })
        })
        .collect()
}

/// Sweep on a dedicated pool with an explicit worker count.
pub fn sweep_with_workers(
    axis: SweepAxis,
    spec: &FigureSpec,
    rates: &ModelRates,
    grid: &[f64],
    workers: usize,
) -> Result<Vec<CurvePoint>> {
    if workers == 0 {
        return Err(Error::InvalidSweep("worker count must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidSweep(format!("failed to build worker pool: {e}")))?;
    pool.install(|| sweep_on_grid(axis, spec, rates, grid))
}

/// The eight standard figures: every regime on both readout channels.
pub fn default_figure_specs() -> Vec<FigureSpec> {
    let mut specs = Vec::with_capacity(8);
    for regime in Regime::ALL {
        for channel in ReadoutChannel::ALL {
            specs.push(FigureSpec::for_regime(regime, channel));
        }
    }
    specs
}

/// Manifest entry binding one emitted curve file to its parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveFile {
    pub file: String,
    pub regime: Regime,
    pub channel: ReadoutChannel,
    pub axis: SweepAxis,
    pub curve: CurveLabel,
    pub lambda_s_nm: f64,
    pub points: usize,
    pub spec: FigureSpec,
}

/// Manifest of a full figure-suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteManifest {
    pub entries: Vec<CurveFile>,
}

impl SuiteManifest {
    pub const FILE_NAME: &'static str = "manifest.toml";

    /// Deterministic structured-text rendering.
    pub fn render(&self) -> String {
        let mut out = String::from("# figure-suite manifest: one entry per emitted curve file\n");
        for e in &self.entries {
            let s = &e.spec;
            let _ = write!(
                out,
                "\n[[curve]]\nfile = \"{}\"\nregime = \"{}\"\nchannel = \"{}\"\naxis = \"{}\"\ncurve = \"{}\"\nlambda_s_nm = {}\npoints = {}\nionization_wavelength_nm = {}\nionization_power_mw = {}\npopulation_power_mw = {}\ndelay_us = {}\nionization_duration_us = {}\nreadout_power_mw = {}\nreadout_duration_us = {}\npulsed_ionization = {}\n",
                e.file,
                e.regime,
                e.channel,
                e.axis.key(),
                e.curve,
                e.lambda_s_nm,
                e.points,
                s.ionization_wavelength_nm,
                s.ionization_power_mw,
                s.population_power_mw,
                s.delay_us,
                s.ionization_duration_us,
                s.readout_power_mw,
                s.readout_duration_us,
                s.pulsed_ionization,
            );
        }
        out
    }
}

/// File name for one curve of one panel.
pub fn curve_file_name(spec: &FigureSpec, axis: SweepAxis, curve: CurveLabel) -> String {
    format!(
        "{}_{}_{}_{}.csv",
        spec.regime,
        spec.channel,
        axis.file_tag(),
        curve
    )
}

/// Render one curve CSV: schema comments, an `x,y` header, one row per
/// grid point.
pub fn render_curve_csv(
    axis: SweepAxis,
    spec: &FigureSpec,
    curve: CurveLabel,
    lambda_s_nm: f64,
    points: &[CurvePoint],
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# axis={}", axis.key());
    let _ = writeln!(out, "# regime={}", spec.regime);
    let _ = writeln!(out, "# curve={curve}");
    let _ = writeln!(out, "# lambda_s_nm={lambda_s_nm}");
    out.push_str("x,y\n");
    for p in points {
        let y = match curve {
            CurveLabel::Red => p.y_red,
            CurveLabel::Blue => p.y_blue,
        };
        let _ = writeln!(out, "{},{}", p.x, y);
    }
    out
}

/// Run the full suite: 8 figures × 5 axes × 2 curves = 80 CSV files plus a
/// manifest, written under `out_dir`. Returns the manifest. Output is
/// byte-identical for any worker count.
pub fn figure_suite(rates: &ModelRates, out_dir: &Path, workers: usize) -> Result<SuiteManifest> {
    if workers == 0 {
        return Err(Error::InvalidSweep("worker count must be at least 1".into()));
    }
    rates.validate()?;
    fs::create_dir_all(out_dir)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidSweep(format!("failed to build worker pool: {e}")))?;

    let specs = default_figure_specs();
    let tasks: Vec<(FigureSpec, SweepAxis)> = specs
        .iter()
        .flat_map(|s| SweepAxis::ALL.iter().map(move |&a| (*s, a)))
        .collect();

    let results: Result<Vec<Vec<CurvePoint>>> = pool.install(|| {
        tasks
            .iter()
            .map(|(spec, axis)| sweep(*axis, spec, rates))
            .collect()
    });
    let results = results?;

    let mut entries = Vec::with_capacity(tasks.len() * 2);
    for ((spec, axis), points) in tasks.iter().zip(results.iter()) {
        for curve in [CurveLabel::Red, CurveLabel::Blue] {
            let lambda_s = match curve {
                CurveLabel::Red => spec.lambda_s_red_nm,
                CurveLabel::Blue => spec.lambda_s_blue_nm,
            };
            let file = curve_file_name(spec, *axis, curve);
            let body = render_curve_csv(*axis, spec, curve, lambda_s, points);
            write_file(&out_dir.join(&file), &body)?;
            entries.push(CurveFile {
                file,
                regime: spec.regime,
                channel: spec.channel,
                axis: *axis,
                curve,
                lambda_s_nm: lambda_s,
                points: points.len(),
                spec: *spec,
            });
        }
    }

    let manifest = SuiteManifest { entries };
    write_file(&out_dir.join(SuiteManifest::FILE_NAME), &manifest.render())?;
    Ok(manifest)
}

fn write_file(path: &PathBuf, body: &str) -> Result<()> {
    fs::write(path, body).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn defaults() -> ModelRates {
        ModelRates::default()
    }

    #[test]
    fn grids_are_strictly_increasing_and_sized() {
        for axis in SweepAxis::ALL {
            let grid = axis.default_grid();
            assert!(grid.len() >= 16, "{axis} grid too small");
            for w in grid.windows(2) {
                assert!(w[1] > w[0], "{axis} grid not increasing");
            }
        }
        assert_eq!(SweepAxis::PopulationPower.default_grid().len(), 24);
        assert_eq!(SweepAxis::Delay.default_grid().len(), 32);
        assert_eq!(SweepAxis::IonizationDuration.default_grid().len(), 32);
    }

    #[test]
    fn figure_spec_defaults_follow_the_regime() {
        let spec = FigureSpec::for_regime(Regime::Blue, ReadoutChannel::Population);
        assert_eq!(spec.population_power_mw, 5.0);
        assert_eq!(spec.ionization_wavelength_nm, 510.0);
        spec.validate().unwrap();
        let spec = FigureSpec::for_regime(Regime::Red, ReadoutChannel::Photocurrent);
        assert_eq!(spec.population_power_mw, 2.0);
        assert_eq!(spec.readout_power_mw, 0.1);
        assert_eq!(spec.readout_duration_us, 1.0);
        spec.validate().unwrap();
    }

    #[test]
    fn figure_spec_rejects_inverted_thresholds() {
        let mut spec = FigureSpec::for_regime(Regime::Red, ReadoutChannel::Population);
        spec.lambda_s_red_nm = 640.0; // below the 650 nm ionization laser
        assert!(spec.validate().is_err());

        let mut spec = FigureSpec::for_regime(Regime::Red, ReadoutChannel::Population);
        spec.lambda_s_blue_nm = 655.0; // above the ionization laser
        assert!(spec.validate().is_err());

        let mut spec = FigureSpec::for_regime(Regime::Red, ReadoutChannel::Population);
        spec.ionization_wavelength_nm = 600.0; // orange, not red
        assert!(spec.validate().is_err());
    }

    #[test]
    fn zero_cross_section_grid_point_makes_curves_identical() {
        let spec = FigureSpec::for_regime(Regime::Green, ReadoutChannel::Population);
        let pts = sweep_on_grid(SweepAxis::SingletCrossSection, &spec, &defaults(), &[0.0]).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].y_red, pts[0].y_blue);
        assert_eq!(pts[0].contrast, 0.0);
    }

    #[test]
    fn default_grid_point_reproduces_the_unswept_run_exactly() {
        let spec = FigureSpec::for_regime(Regime::Orange, ReadoutChannel::Population);
        let rates = defaults();
        let pts = sweep_on_grid(
            SweepAxis::IonizationPower,
            &spec,
            &rates,
            &[spec.ionization_power_mw],
        )
        .unwrap();

        let seq = spec.build_sequence(None, spec.red_scenario().unwrap()).unwrap();
        let report = run_sequence(&seq, &rates, None).unwrap();
        let y = channel_value(spec.channel, &report).unwrap();
        assert_eq!(pts[0].y_red, y, "swept default must be bit-identical");
    }

    #[test]
    fn sweep_failures_name_the_offending_grid_value() {
        let spec = FigureSpec::for_regime(Regime::Green, ReadoutChannel::Population);
        let err = sweep_on_grid(
            SweepAxis::SingletCrossSection,
            &spec,
            &defaults(),
            &[0.5, -1.0],
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("sigma_s_mhz_per_mw = -1"), "{msg}");
    }

    #[test]
    fn sweep_output_is_deterministic() {
        let spec = FigureSpec::for_regime(Regime::Red, ReadoutChannel::Photocurrent);
        let grid = [0.5, 5.0];
        let a = sweep_on_grid(SweepAxis::IonizationPower, &spec, &defaults(), &grid).unwrap();
        let b = sweep_on_grid(SweepAxis::IonizationPower, &spec, &defaults(), &grid).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn red_regime_delay_sweep_gap_collapses_with_the_singlet() {
        let spec = FigureSpec::for_regime(Regime::Red, ReadoutChannel::Population);
        let pts =
            sweep_on_grid(SweepAxis::Delay, &spec, &defaults(), &[0.03, 1.5]).unwrap();
        let gap_short = pts[0].y_blue - pts[0].y_red;
        let gap_long = pts[1].y_blue - pts[1].y_red;
        assert!(gap_short > 0.0);
        assert!(
            gap_long <= 0.1 * gap_short,
            "gap at 1.5 us ({gap_long}) should be under 10% of the 30 ns gap ({gap_short})"
        );
    }

    #[test]
    fn curve_csv_schema_is_stable() {
        let spec = FigureSpec::for_regime(Regime::Red, ReadoutChannel::Population);
        let pts = vec![CurvePoint {
            x: 1.0,
            y_red: 0.25,
            y_blue: 0.5,
            contrast: 0.5,
        }];
        let body = render_curve_csv(SweepAxis::IonizationPower, &spec, CurveLabel::Red, 660.0, &pts);
        let lines: Vec<&str> = body.lines().collect();
        assert_eq!(lines[0], "# axis=ionization_power_mw");
        assert_eq!(lines[1], "# regime=red");
        assert_eq!(lines[2], "# curve=red");
        assert_eq!(lines[3], "# lambda_s_nm=660");
        assert_eq!(lines[4], "x,y");
        assert_eq!(lines[5], "1,0.25");
    }

    #[test]
    fn file_names_enumerate_the_suite() {
        let mut names = std::collections::HashSet::new();
        for spec in default_figure_specs() {
            for axis in SweepAxis::ALL {
                for curve in [CurveLabel::Red, CurveLabel::Blue] {
                    names.insert(curve_file_name(&spec, axis, curve));
                }
            }
        }
        assert_eq!(names.len(), 80);
    }
}
