//! Command-line front end: simulate sequence files, sweep figure axes,
//! reproduce the full figure suite, and inspect CW steady states.
//!
//! Diagnostics go to stderr; curve data goes to files; small result
//! summaries print on stdout. Exit code is 0 iff no errors occurred.

mod plot;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use nvsim_core::config::{self, LoadedConfig, RunConfig};
use nvsim_core::model::{CurveLabel, LaserField, Regime, Scenario};
use nvsim_core::observables::{nv_minus_population, nv_zero_population, ReadoutChannel};
use nvsim_core::propagator::steady_state;
use nvsim_core::seqfile::parse_sequence;
use nvsim_core::sequence::{run_sequence_sampled, PulseSequence, SequenceReport};
use nvsim_core::sweep::{
    curve_file_name, figure_suite, render_curve_csv, sweep_with_workers, FigureSpec, SuiteManifest,
    SweepAxis,
};

#[derive(Parser)]
#[command(
    name = "nvsim",
    about = "NV-center charge-state dynamics simulator: pulse sequences, threshold scenarios, and figure sweeps",
    version
)]
struct Cli {
    /// Configuration file (TOML; missing rate keys fall back to the
    /// documented defaults, with a warning per fill)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output directory (overrides the config file)
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Worker count for sweeps (overrides the config file)
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,

    /// Reserved for future stochastic extensions; the model is deterministic
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Also emit SVG line plots derived from the CSVs
    #[arg(long, global = true)]
    plot: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sequence file; prints final NV-/NV0 fractions and collected
    /// photocurrent, and dumps a step report plus trajectory CSVs
    Simulate {
        /// Sequence file (see the README for the line format)
        sequence: PathBuf,
        /// Threshold wavelength (nm) for an above-threshold run
        #[arg(long, value_name = "NM", requires = "lambda_s_blue")]
        lambda_s_red: Option<f64>,
        /// Threshold wavelength (nm) for a below-threshold run
        #[arg(long, value_name = "NM", requires = "lambda_s_red")]
        lambda_s_blue: Option<f64>,
        /// Run the photocurrent-collection pulse in short-pulsed mode
        #[arg(long)]
        pulsed: bool,
    },
    /// Sweep one axis of the standard sequence, writing paired red/blue
    /// curve CSVs
    Sweep {
        #[arg(long, value_enum)]
        axis: AxisArg,
        #[arg(long, value_enum)]
        regime: RegimeArg,
        #[arg(long, value_enum)]
        channel: ChannelArg,
        /// Above-threshold hypothesis (nm); default is the regime's
        /// ionization wavelength + 10 nm
        #[arg(long, value_name = "NM")]
        lambda_s_red: Option<f64>,
        /// Below-threshold hypothesis (nm); default is the regime's
        /// ionization wavelength - 10 nm
        #[arg(long, value_name = "NM")]
        lambda_s_blue: Option<f64>,
        /// Ionization wavelength (nm); default sits mid-regime
        #[arg(long, value_name = "NM")]
        ion_wavelength: Option<f64>,
        /// Ionization power (mW)
        #[arg(long, value_name = "MW")]
        ion_power: Option<f64>,
        /// Run the ionization pulse in short-pulsed mode
        #[arg(long)]
        pulsed: bool,
    },
    /// Reproduce the full figure suite: 80 curve CSVs plus a manifest
    Figures,
    /// Print the steady state under a single CW laser, e.g.
    /// `nvsim steady 594nm 5mW`
    Steady {
        /// Laser wavelength with unit suffix, e.g. 594nm
        wavelength: String,
        /// Laser power with unit suffix, e.g. 5mW or 100uW
        power: String,
        /// Threshold hypothesis (nm); defaults to the configured value
        #[arg(long, value_name = "NM")]
        lambda_s: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    PopulationPower,
    IonizationPower,
    CrossSection,
    Delay,
    IonizationDuration,
}

impl From<AxisArg> for SweepAxis {
    fn from(a: AxisArg) -> Self {
        match a {
            AxisArg::PopulationPower => SweepAxis::PopulationPower,
            AxisArg::IonizationPower => SweepAxis::IonizationPower,
            AxisArg::CrossSection => SweepAxis::SingletCrossSection,
            AxisArg::Delay => SweepAxis::Delay,
            AxisArg::IonizationDuration => SweepAxis::IonizationDuration,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Red,
    Orange,
    Green,
    Blue,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::Red => Regime::Red,
            RegimeArg::Orange => Regime::Orange,
            RegimeArg::Green => Regime::Green,
            RegimeArg::Blue => Regime::Blue,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ChannelArg {
    Population,
    Photocurrent,
}

impl From<ChannelArg> for ReadoutChannel {
    fn from(c: ChannelArg) -> Self {
        match c {
            ChannelArg::Population => ReadoutChannel::Population,
            ChannelArg::Photocurrent => ReadoutChannel::Photocurrent,
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nvsim: error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run() -> Result<()> {
    let cli = Cli::parse();

    let LoadedConfig { mut config, filled } = match &cli.config {
        Some(path) => config::load_config(path)?,
        None => LoadedConfig {
            config: RunConfig::default(),
            filled: Vec::new(),
        },
    };
    if let Some(out) = &cli.out {
        config.out_dir = out.clone();
    }
    if let Some(workers) = cli.workers {
        if workers == 0 {
            bail!("--workers must be at least 1");
        }
        config.workers = workers;
    }
    config.plot |= cli.plot;

    // Startup banner on the diagnostic stream.
    let tau_ns = config.rates.singlet_lifetime_us() * 1e3;
    eprintln!(
        "nvsim: gamma_s = {} MHz (tau_s = {:.1} ns), sigma_s = {} MHz/mW",
        config.rates.gamma_s, tau_ns, config.rates.sigma_s
    );
    if let Some(path) = &cli.config {
        for key in &filled {
            eprintln!(
                "nvsim: config {}: {key} not set, using default",
                path.display()
            );
        }
    }
    if cli.seed.is_some() {
        eprintln!("nvsim: note: --seed is reserved; the model is deterministic");
    }

    match cli.command {
        Command::Simulate {
            sequence,
            lambda_s_red,
            lambda_s_blue,
            pulsed,
        } => cmd_simulate(&config, &sequence, lambda_s_red, lambda_s_blue, pulsed),
        Command::Sweep {
            axis,
            regime,
            channel,
            lambda_s_red,
            lambda_s_blue,
            ion_wavelength,
            ion_power,
            pulsed,
        } => cmd_sweep(
            &config,
            axis.into(),
            regime.into(),
            channel.into(),
            lambda_s_red,
            lambda_s_blue,
            ion_wavelength,
            ion_power,
            pulsed,
        ),
        Command::Figures => cmd_figures(&config),
        Command::Steady {
            wavelength,
            power,
            lambda_s,
        } => cmd_steady(&config, &wavelength, &power, lambda_s),
    }
}

fn cmd_simulate(
    config: &RunConfig,
    sequence_path: &Path,
    lambda_s_red: Option<f64>,
    lambda_s_blue: Option<f64>,
    pulsed: bool,
) -> Result<()> {
    let text = fs::read_to_string(sequence_path)
        .with_context(|| format!("reading {}", sequence_path.display()))?;
    let mut seq = parse_sequence(&text)?;
    if pulsed {
        seq = seq.with_pulsed_ionization()?;
    }

    let scenarios = match (lambda_s_red, lambda_s_blue) {
        (Some(red), Some(blue)) => vec![Scenario::red(red)?, Scenario::blue(blue)?],
        _ => vec![seq.scenario],
    };

    fs::create_dir_all(&config.out_dir)?;
    let mut report_text = String::new();
    for scenario in scenarios {
        let run = seq.with_scenario(scenario);
        let report = run_sequence_sampled(&run, &config.rates, None, Some(config.stride_us))?;
        println!(
            "scenario {} (lambda_s = {} nm): NV- = {:.6}, NV0 = {:.6}, PC = {}, readout photons = {:.6}",
            scenario.curve,
            scenario.lambda_s_nm,
            nv_minus_population(&report),
            nv_zero_population(&report),
            report
                .collected_pc
                .map_or("n/a (no collect window)".to_string(), |q| format!("{q:.6}")),
            report.readout_photons,
        );

        let traj_path = config
            .out_dir
            .join(format!("simulate_trajectory_{}.csv", scenario.curve));
        fs::write(&traj_path, render_trajectory_csv(&report))
            .with_context(|| format!("writing {}", traj_path.display()))?;
        eprintln!("nvsim: wrote {}", traj_path.display());

        append_report_section(&mut report_text, &run, &report);
    }

    let report_path = config.out_dir.join("simulate_report.txt");
    fs::write(&report_path, report_text)
        .with_context(|| format!("writing {}", report_path.display()))?;
    eprintln!("nvsim: wrote {}", report_path.display());
    Ok(())
}

fn render_trajectory_csv(report: &SequenceReport) -> String {
    let mut out = String::from("time_us,G0,G1,E0,E1,S,N0,N1,charge_au,photons_au\n");
    for record in &report.steps {
        let Some(samples) = &record.result.trajectory else {
            continue;
        };
        for ts in samples {
            let p = ts.state.populations();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                record.start_us + ts.time_us,
                p[0],
                p[1],
                p[2],
                p[3],
                p[4],
                p[5],
                p[6],
                ts.state.charge_acc(),
                ts.state.photons_acc(),
            );
        }
    }
    out
}

fn append_report_section(out: &mut String, seq: &PulseSequence, report: &SequenceReport) {
    let _ = writeln!(
        out,
        "scenario {} (lambda_s = {} nm)",
        seq.scenario.curve, seq.scenario.lambda_s_nm
    );
    for record in &report.steps {
        let p = record.result.state.populations();
        let _ = writeln!(
            out,
            "  [{}] {:<7} t = {:>9.4} us  dt = {:>8.4} us  dQ = {:.6e}  dF = {:.6e}",
            record.index,
            record.label,
            record.start_us,
            record.duration_us,
            record.result.delta_q,
            record.result.delta_f,
        );
        let _ = writeln!(
            out,
            "        G0 {:.6}  G1 {:.6}  E0 {:.6}  E1 {:.6}  S {:.6}  N0 {:.6}  N1 {:.6}",
            p[0], p[1], p[2], p[3], p[4], p[5], p[6]
        );
    }
    let _ = writeln!(
        out,
        "  final: NV- = {:.6}, NV0 = {:.6}, PC = {:?}, readout photons = {:.6}\n",
        nv_minus_population(report),
        nv_zero_population(report),
        report.collected_pc,
        report.readout_photons,
    );
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    config: &RunConfig,
    axis: SweepAxis,
    regime: Regime,
    channel: ReadoutChannel,
    lambda_s_red: Option<f64>,
    lambda_s_blue: Option<f64>,
    ion_wavelength: Option<f64>,
    ion_power: Option<f64>,
    pulsed: bool,
) -> Result<()> {
    let mut spec = FigureSpec::for_regime(regime, channel);
    if let Some(v) = ion_wavelength {
        spec.ionization_wavelength_nm = v;
        // Keep the default +/-10 nm hypotheses centered unless overridden.
        spec.lambda_s_red_nm = v + 10.0;
        spec.lambda_s_blue_nm = v - 10.0;
    }
    if let Some(v) = lambda_s_red {
        spec.lambda_s_red_nm = v;
    }
    if let Some(v) = lambda_s_blue {
        spec.lambda_s_blue_nm = v;
    }
    if let Some(v) = ion_power {
        spec.ionization_power_mw = v;
    }
    spec.pulsed_ionization = pulsed;

    let points = sweep_with_workers(axis, &spec, &config.rates, &axis.default_grid(), config.workers)?;

    fs::create_dir_all(&config.out_dir)?;
    let mut paths = Vec::new();
    for curve in [CurveLabel::Red, CurveLabel::Blue] {
        let lambda_s = match curve {
            CurveLabel::Red => spec.lambda_s_red_nm,
            CurveLabel::Blue => spec.lambda_s_blue_nm,
        };
        let name = curve_file_name(&spec, axis, curve);
        let path = config.out_dir.join(&name);
        fs::write(&path, render_curve_csv(axis, &spec, curve, lambda_s, &points))
            .with_context(|| format!("writing {}", path.display()))?;
        eprintln!("nvsim: wrote {}", path.display());
        paths.push(path);
    }

    if config.plot {
        let svg = plot_panel(&paths[0], &paths[1], axis, &spec)?;
        let svg_path = config.out_dir.join(format!(
            "{}_{}_{}.svg",
            spec.regime,
            spec.channel,
            axis.file_tag()
        ));
        fs::write(&svg_path, svg).with_context(|| format!("writing {}", svg_path.display()))?;
        eprintln!("nvsim: wrote {}", svg_path.display());
    }
    Ok(())
}

fn cmd_figures(config: &RunConfig) -> Result<()> {
    let manifest = figure_suite(&config.rates, &config.out_dir, config.workers)?;
    eprintln!(
        "nvsim: wrote {} curve files + {} to {}",
        manifest.entries.len(),
        SuiteManifest::FILE_NAME,
        config.out_dir.display()
    );

    if config.plot {
        // Plots are derived from the emitted CSVs, which stay the ground
        // truth. Entries come in red/blue pairs per panel.
        let mut n = 0usize;
        for pair in manifest.entries.chunks(2) {
            let [red, blue] = pair else { continue };
            let spec = red.spec;
            let red_path = config.out_dir.join(&red.file);
            let blue_path = config.out_dir.join(&blue.file);
            let svg = plot_panel(&red_path, &blue_path, red.axis, &spec)?;
            let svg_path = config.out_dir.join(format!(
                "{}_{}_{}.svg",
                spec.regime,
                spec.channel,
                red.axis.file_tag()
            ));
            fs::write(&svg_path, svg)
                .with_context(|| format!("writing {}", svg_path.display()))?;
            n += 1;
        }
        eprintln!("nvsim: wrote {n} panel plots");
    }
    Ok(())
}

/// Read back a curve CSV (comments + `x,y` header) and plot red over blue.
fn plot_panel(red_csv: &Path, blue_csv: &Path, axis: SweepAxis, spec: &FigureSpec) -> Result<String> {
    let red = read_curve_csv(red_csv)?;
    let blue = read_curve_csv(blue_csv)?;
    Ok(plot::render_line_plot(
        &format!("{} regime, {}", spec.regime, spec.channel),
        axis.key(),
        spec.channel.label(),
        axis.is_log(),
        &[
            plot::Series {
                label: "above threshold",
                color: "#c0392b",
                points: &red,
            },
            plot::Series {
                label: "below threshold",
                color: "#2980b9",
                points: &blue,
            },
        ],
    ))
}

fn read_curve_csv(path: &Path) -> Result<Vec<(f64, f64)>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut points = Vec::new();
    for line in text.lines() {
        if line.starts_with('#') || line.starts_with("x,") || line.trim().is_empty() {
            continue;
        }
        let (x, y) = line
            .split_once(',')
            .with_context(|| format!("malformed row `{line}` in {}", path.display()))?;
        points.push((x.trim().parse()?, y.trim().parse()?));
    }
    Ok(points)
}

fn cmd_steady(
    config: &RunConfig,
    wavelength_token: &str,
    power_token: &str,
    lambda_s: Option<f64>,
) -> Result<()> {
    let wavelength_nm = parse_unit(wavelength_token, &[("nm", 1.0)])
        .with_context(|| format!("wavelength `{wavelength_token}`"))?;
    let power_mw = parse_unit(power_token, &[("mW", 1.0), ("uW", 1e-3)])
        .with_context(|| format!("power `{power_token}`"))?;

    let scenario = Scenario::red(lambda_s.unwrap_or(config.lambda_s_nm))?;
    let laser = LaserField::population(wavelength_nm, power_mw)?;
    let generator = nvsim_core::build_generator(&config.rates, &[laser], &scenario)?;
    let steady = steady_state(&generator)?;

    println!(
        "steady state under {wavelength_nm} nm at {power_mw} mW (lambda_s = {} nm):",
        scenario.lambda_s_nm
    );
    for level in nvsim_core::model::Level::ALL {
        println!("  {:<3} {:.6}", level.label(), steady.state.population(level));
    }
    println!("  NV- fraction: {:.6}", steady.state.nv_minus_fraction());
    println!("  NV0 fraction: {:.6}", steady.state.nv_zero_fraction());
    if steady.degenerate {
        println!("  (degenerate null space; limit of propagation from a uniform start)");
    }
    Ok(())
}

fn parse_unit(token: &str, units: &[(&str, f64)]) -> Result<f64> {
    for (suffix, scale) in units {
        if token.len() >= suffix.len() {
            let (head, tail) = token.split_at(token.len() - suffix.len());
            if tail.eq_ignore_ascii_case(suffix) && !head.is_empty() {
                let v: f64 = head.parse()?;
                return Ok(v * scale);
            }
        }
    }
    let names: Vec<&str> = units.iter().map(|(s, _)| *s).collect();
    bail!("missing unit suffix (expected one of: {})", names.join(", "))
}
