//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line. Tolerances are fixed here, not tuned at run time.
//!
//! Criterion 7 (orange-range high-power plateau of the below-threshold
//! population curve) is expected to fail with the default power grid: the
//! below-threshold curve approaches its plateau only when the two-step
//! ionization rate dwarfs the intersystem-crossing rate, i.e. at watt-scale
//! powers far outside the milliwatt grid. The test states the criterion
//! honestly rather than widening it; see the discussion in the assertion
//! message.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nvsim_core::fit::{fit_double_exponential, fit_exponential_tail};
use nvsim_core::generator::{build_generator, GeneratorMatrix};
use nvsim_core::model::{
    photon_energy_ev, CurveLabel, LaserField, LaserMode, LaserRole, Level, ModelRates, Regime,
    Scenario, StateVector,
};
use nvsim_core::observables::ReadoutChannel;
use nvsim_core::propagator::{propagate, propagate_numeric, steady_state};
use nvsim_core::seqfile::{format_sequence, parse_sequence};
use nvsim_core::sequence::{
    apply_pi_pulse, default_sequence, run_sequence, PulseSequence, SequenceStep,
};
use nvsim_core::sweep::{figure_suite, log_grid, sweep, sweep_on_grid, FigureSpec, SweepAxis};

fn verdict(number: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {number:02} ({name}): {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {number:02} ({name}) failed: {detail}");
}

#[test]
fn acceptance_01_energy_anchors() {
    let e637 = photon_energy_ev(637.0).unwrap();
    let e674 = photon_energy_ev(674.0).unwrap();
    let e477 = photon_energy_ev(477.0).unwrap();
    let pass = (e637 - 1.95).abs() <= 0.005
        && (e674 - 1.84).abs() <= 0.005
        && (e477 - 2.60).abs() <= 0.01;
    verdict(
        1,
        "energy anchors",
        pass,
        &format!("637 nm -> {e637:.4} eV, 674 nm -> {e674:.4} eV, 477 nm -> {e477:.4} eV"),
    );
}

fn random_rates(rng: &mut ChaCha8Rng) -> ModelRates {
    let isc0 = rng.random_range(0.0..50.0);
    ModelRates {
        gamma_rad: rng.random_range(0.0..200.0),
        gamma_isc0: isc0,
        gamma_isc1: isc0 + rng.random_range(1.0..100.0),
        gamma_s: rng.random_range(0.0..20.0),
        beta_s0: rng.random_range(0.0..=1.0),
        gamma_n: rng.random_range(0.0..200.0),
        sigma_abs_minus: rng.random_range(0.0..60.0),
        sigma_abs_zero: rng.random_range(0.0..60.0),
        sigma_ion: rng.random_range(0.0..20.0),
        sigma_rec: rng.random_range(0.0..20.0),
        sigma_stim: rng.random_range(0.0..60.0),
        sigma_s: rng.random_range(0.0..5.0),
    }
}

fn random_laser(rng: &mut ChaCha8Rng) -> LaserField {
    let role = match rng.random_range(0..3) {
        0 => LaserRole::Population,
        1 => LaserRole::Ionization,
        _ => LaserRole::Readout,
    };
    let wavelength = if role == LaserRole::Ionization {
        rng.random_range(477.0..=674.0)
    } else {
        rng.random_range(400.0..700.0)
    };
    let mode = if rng.random_bool(0.2) {
        LaserMode::ShortPulsed
    } else {
        LaserMode::Continuous
    };
    LaserField::new(wavelength, rng.random_range(0.0..30.0), mode, role).unwrap()
}

#[test]
fn acceptance_02_generator_validity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e76_7369_6d01);
    let mut worst_col_sum = 0.0_f64;
    for _ in 0..1000 {
        let rates = random_rates(&mut rng);
        let n_lasers = rng.random_range(0..=3);
        let lasers: Vec<LaserField> = (0..n_lasers).map(|_| random_laser(&mut rng)).collect();
        let scenario = Scenario::red(rng.random_range(450.0..700.0)).unwrap();
        let g = build_generator(&rates, &lasers, &scenario).unwrap();
        let m = g.matrix();
        for col in 0..7 {
            // Off-diagonals first, diagonal last: the builder's own
            // accumulation order, so the check measures construction
            // consistency rather than summation-order rounding.
            let mut off = 0.0;
            for row in 0..7 {
                if row != col {
                    assert!(
                        m[(row, col)] >= 0.0,
                        "negative off-diagonal at ({row},{col})"
                    );
                    off += m[(row, col)];
                }
            }
            worst_col_sum = worst_col_sum.max((off + m[(col, col)]).abs());
        }
    }
    let pass = worst_col_sum <= 1e-12;
    verdict(
        2,
        "generator validity",
        pass,
        &format!("1000 random configurations, worst |column sum| = {worst_col_sum:.2e}"),
    );
}

/// Replay a sequence with the fixed-step integrator, segment by segment.
/// Kept independent of `run_sequence` so it can serve as its oracle.
fn replay_numeric(
    seq: &PulseSequence,
    rates: &ModelRates,
    start: &StateVector,
    step_us: f64,
) -> (StateVector, f64) {
    let darkness = build_generator(rates, &[], &seq.scenario).unwrap();
    let mut state = *start;
    let mut pc = 0.0;
    for s in seq.steps() {
        match *s {
            SequenceStep::Initialize {
                laser,
                duration_us,
                settle_us,
            } => {
                let g = build_generator(rates, &[laser], &seq.scenario).unwrap();
                state = propagate_numeric(&state, &g, duration_us, step_us).unwrap().state;
                state = propagate_numeric(&state, &darkness, settle_us, step_us)
                    .unwrap()
                    .state;
            }
            SequenceStep::PiPulse => state = apply_pi_pulse(&state),
            SequenceStep::Pulse {
                laser,
                duration_us,
                collect_pc,
            } => {
                let g = build_generator(rates, &[laser], &seq.scenario).unwrap();
                let seg = propagate_numeric(&state, &g, duration_us, step_us).unwrap();
                if collect_pc {
                    pc += seg.delta_q;
                }
                state = seg.state;
            }
            SequenceStep::Delay { duration_us } => {
                state = propagate_numeric(&state, &darkness, duration_us, step_us)
                    .unwrap()
                    .state;
            }
            SequenceStep::Readout { laser, duration_us } => {
                let g = build_generator(rates, &[laser], &seq.scenario).unwrap();
                state = propagate_numeric(&state, &g, duration_us, step_us).unwrap().state;
            }
        }
    }
    (state, pc)
}

#[test]
fn acceptance_03_propagator_correctness() {
    let rates = ModelRates::default();
    let scen = Scenario::red(660.0).unwrap();
    let lasers = [LaserField::population(532.0, 2.0).unwrap()];
    let g = build_generator(&rates, &lasers, &scen).unwrap();
    let start = StateVector::ground();

    // Trace conservation under a long, strongly driven segment.
    let seg = propagate(&start, &g, 3.0).unwrap();
    let trace_err = (seg.state.total() - 1.0).abs();

    // Semigroup: one step vs two half steps.
    let direct = propagate(&start, &g, 1.0).unwrap();
    let half = propagate(&start, &g, 0.5).unwrap();
    let halves = propagate(&half.state, &g, 0.5).unwrap();
    let semigroup_err = (direct.state.populations() - halves.state.populations()).amax();

    // Analytic two-level decay.
    let mut m = nvsim_core::generator::Matrix7::zeros();
    m[(Level::G1.index(), Level::E1.index())] = 66.0;
    m[(Level::E1.index(), Level::E1.index())] = -66.0;
    let toy = GeneratorMatrix::from_raw(
        m,
        nvsim_core::generator::FluxVector::zeros(),
        nvsim_core::generator::FluxVector::zeros(),
    )
    .unwrap();
    let r = propagate(&StateVector::pure(Level::E1), &toy, 0.01).unwrap();
    let analytic_err = (r.state.population(Level::E1) - (-0.66_f64).exp()).abs();

    // Exponential vs numeric oracle over the whole default sequence.
    let seq = default_sequence(
        Regime::Red,
        LaserField::ionization(650.0, 5.0).unwrap(),
        scen,
    )
    .unwrap();
    let exact = run_sequence(&seq, &rates, Some(&start)).unwrap();
    let (numeric_state, numeric_pc) = replay_numeric(&seq, &rates, &start, 1e-4);
    let oracle_err = (exact.final_state.populations() - numeric_state.populations()).amax();
    let pc_err = (exact.collected_pc.unwrap() - numeric_pc).abs();

    let pass = trace_err <= 1e-9
        && semigroup_err <= 1e-9
        && analytic_err <= 1e-9
        && oracle_err <= 1e-6
        && pc_err <= 1e-6;
    verdict(
        3,
        "propagator correctness",
        pass,
        &format!(
            "trace {trace_err:.2e}, semigroup {semigroup_err:.2e}, analytic {analytic_err:.2e}, oracle {oracle_err:.2e} (pc {pc_err:.2e})"
        ),
    );
}

#[test]
fn acceptance_04_null_hypothesis_identity() {
    let rates = ModelRates::default().with_sigma_s(0.0);
    let mut checked = 0usize;
    for regime in Regime::ALL {
        for channel in ReadoutChannel::ALL {
            let spec = FigureSpec::for_regime(regime, channel);
            for axis in SweepAxis::ALL {
                // The cross-section axis sweeps sigma_s itself; the zero
                // hypothesis is only meaningful at the zero grid point.
                let points = if axis == SweepAxis::SingletCrossSection {
                    sweep_on_grid(axis, &spec, &rates, &[0.0]).unwrap()
                } else {
                    sweep(axis, &spec, &rates).unwrap()
                };
                for p in points {
                    assert_eq!(
                        p.y_red.to_bits(),
                        p.y_blue.to_bits(),
                        "sigma_s = 0 must make the hypotheses bit-identical ({regime}, {channel}, {axis}, x = {})",
                        p.x
                    );
                    checked += 1;
                }
            }
        }
    }
    verdict(
        4,
        "null-hypothesis identity",
        true,
        &format!("{checked} grid points bit-identical across all axes and regimes"),
    );
}

#[test]
fn acceptance_05_red_regime_pc_cleanliness() {
    let rates = ModelRates::default();
    let spec = FigureSpec::for_regime(Regime::Red, ReadoutChannel::Photocurrent);
    let points = sweep(SweepAxis::IonizationPower, &spec, &rates).unwrap();
    let worst = points
        .iter()
        .map(|p| p.y_blue / p.y_red.max(f64::MIN_POSITIVE))
        .fold(0.0_f64, f64::max);
    let pass = worst <= 0.05;
    verdict(
        5,
        "red-regime PC cleanliness",
        pass,
        &format!("worst below-threshold/above-threshold PC ratio = {worst:.4} (limit 0.05)"),
    );
}

#[test]
fn acceptance_06_singlet_lifetime_recovery() {
    let rates = ModelRates::default();
    let spec = FigureSpec::for_regime(Regime::Red, ReadoutChannel::Population);
    let points = sweep(SweepAxis::Delay, &spec, &rates).unwrap();
    let series: Vec<(f64, f64)> = points.iter().map(|p| (p.x, p.contrast)).collect();

    // Tail region: past three times the slowest excited-state lifetime
    // (either triplet excited sublevel or the neutral excited state).
    let tau_excited = (1.0 / (rates.gamma_rad + rates.gamma_isc0))
        .max(1.0 / (rates.gamma_rad + rates.gamma_isc1))
        .max(1.0 / rates.gamma_n);
    let fit = fit_exponential_tail(&series, 3.0 * tau_excited).expect("tail fit failed");
    let tau_s = rates.singlet_lifetime_us();
    let rel_err = (fit.timescale() - tau_s).abs() / tau_s;
    let pass = rel_err <= 0.10;
    verdict(
        6,
        "singlet-lifetime recovery",
        pass,
        &format!(
            "fitted tau_s = {:.4} us vs configured {:.4} us (rel err {:.4}, limit 0.10)",
            fit.timescale(),
            tau_s,
            rel_err
        ),
    );
}

#[test]
fn acceptance_07_orange_plateau_and_splitting() {
    let rates = ModelRates::default();
    let spec = FigureSpec::for_regime(Regime::Orange, ReadoutChannel::Population);
    let points = sweep(SweepAxis::IonizationPower, &spec, &rates).unwrap();

    let hi = points.last().unwrap();
    let lo = points
        .iter()
        .find(|p| p.x >= hi.x / 10.0)
        .expect("grid spans at least a decade");

    let blue_change = (hi.y_blue - lo.y_blue).abs() / lo.y_blue;
    let red_drop = (lo.y_red - hi.y_red) / lo.y_red;
    let pass = blue_change < 0.01 && red_drop > 0.05;
    verdict(
        7,
        "orange plateau and splitting",
        pass,
        &format!(
            "top decade [{:.2}, {:.2}] mW: below-threshold change {blue_change:.4} (limit 0.01), \
             above-threshold drop {red_drop:.4} (floor 0.05). The below-threshold curve only \
             flattens once two-step ionization outruns intersystem crossing \
             (sigma_ion*P >> gamma_isc1), which happens at watt-scale power, far beyond this grid; \
             its approach to the plateau scales as gamma_isc1/(sigma_ion*P)",
            lo.x, hi.x
        ),
    );
}

#[test]
fn acceptance_08_steady_state_charge_preference() {
    let rates = ModelRates::default();

    let scen = Scenario::red(637.0).unwrap();
    let orange = build_generator(&rates, &[LaserField::population(594.0, 5.0).unwrap()], &scen)
        .unwrap();
    let orange_frac = steady_state(&orange).unwrap().state.nv_minus_fraction();

    let scen = Scenario::red(532.0).unwrap();
    let green = build_generator(&rates, &[LaserField::population(532.0, 5.0).unwrap()], &scen)
        .unwrap();
    let green_frac = steady_state(&green).unwrap().state.nv_minus_fraction();

    let pass = orange_frac < 0.5 && green_frac > 0.5;
    verdict(
        8,
        "steady-state charge preference",
        pass,
        &format!("orange 594 nm NV- = {orange_frac:.4} (< 0.5), green 532 nm NV- = {green_frac:.4} (> 0.5)"),
    );
}

#[test]
fn acceptance_09_orange_double_exponential() {
    let rates = ModelRates::default();
    let spec = FigureSpec::for_regime(Regime::Orange, ReadoutChannel::Population);
    let points = sweep(SweepAxis::IonizationDuration, &spec, &rates).unwrap();

    // Reference timescales, pinned from the ledger. The fast transient
    // drains the triplet pool through both ionization and ISC at the
    // pumped excited-state occupation; the slow constant is the lifetime
    // of the singlet-bottlenecked mode of the NV- block.
    let pump = rates.sigma_abs_minus * spec.ionization_power_mw;
    let f_excited = pump / (pump + rates.gamma_rad);
    let ion_rate = rates.sigma_ion * spec.ionization_power_mw;
    let pool_exit = f_excited * (ion_rate + 0.5 * (rates.gamma_isc0 + rates.gamma_isc1));
    let tau_two_step = 1.0 / (ion_rate * f_excited);

    let slow_reference = |lambda_s: f64| -> f64 {
        let scen = Scenario::red(lambda_s).unwrap();
        let laser = LaserField::ionization(spec.ionization_wavelength_nm, spec.ionization_power_mw)
            .unwrap();
        let g = build_generator(&rates, &[laser], &scen).unwrap();
        let nv_minus_block = g.matrix().fixed_view::<5, 5>(0, 0).into_owned();
        nv_minus_block
            .complex_eigenvalues()
            .iter()
            .map(|c| c.re)
            .fold(f64::NEG_INFINITY, f64::max)
            .abs()
    };

    let mut slow_rates = [0.0; 2];
    let mut pass = true;
    let mut detail = String::new();
    for (idx, curve) in [CurveLabel::Red, CurveLabel::Blue].into_iter().enumerate() {
        let series: Vec<(f64, f64)> = points
            .iter()
            .map(|p| {
                (
                    p.x,
                    match curve {
                        CurveLabel::Red => p.y_red,
                        CurveLabel::Blue => p.y_blue,
                    },
                )
            })
            .collect();
        let fit = fit_double_exponential(&series, tau_two_step, 5.0 * tau_two_step)
            .expect("double-exponential fit failed");
        let lambda_s = match curve {
            CurveLabel::Red => spec.lambda_s_red_nm,
            CurveLabel::Blue => spec.lambda_s_blue_nm,
        };
        let slow_ref = slow_reference(lambda_s);
        let fast_ratio = fit.fast.rate / pool_exit;
        let slow_err = (fit.slow.rate - slow_ref).abs() / slow_ref;
        slow_rates[idx] = fit.slow.rate;
        pass &= (1.0 / 3.0..=3.0).contains(&fast_ratio) && slow_err <= 0.30;
        detail.push_str(&format!(
            "{curve}: fast {:.1} MHz ({fast_ratio:.2}x of {pool_exit:.1} MHz ref), slow {:.3} MHz vs {:.3} MHz ({slow_err:.3} rel); ",
            fit.fast.rate, fit.slow.rate, slow_ref
        ));
    }
    pass &= slow_rates[0] > slow_rates[1];
    detail.push_str(&format!(
        "red slow {:.3} > blue slow {:.3}",
        slow_rates[0], slow_rates[1]
    ));
    verdict(9, "orange double exponential", pass, &detail);
}

#[test]
fn acceptance_10_green_pc_plateau() {
    let rates = ModelRates::default();
    let spec = FigureSpec::for_regime(Regime::Green, ReadoutChannel::Photocurrent);
    // The photocurrent ratio converges like 1/t as accumulation dilutes the
    // turn-on transient, so the plateau check runs on an extended window
    // grid; the plateau value itself is what the default ledger calibrates.
    let grid = log_grid(1e-3, 100.0, 48);
    let points = sweep_on_grid(SweepAxis::IonizationDuration, &spec, &rates, &grid).unwrap();

    let hi = points.last().unwrap();
    let lo = points
        .iter()
        .find(|p| p.x >= hi.x / 10.0)
        .expect("grid spans a decade");
    let change = (hi.contrast - lo.contrast).abs() / lo.contrast.abs().max(f64::MIN_POSITIVE);
    let plateau = hi.contrast;
    let pass = change < 0.02 && (0.15..=0.45).contains(&plateau);
    verdict(
        10,
        "green PC plateau",
        pass,
        &format!(
            "last-decade change {change:.4} (limit 0.02), plateau contrast {plateau:.4} (window 0.15..0.45; calibration-sensitive)"
        ),
    );
}

#[test]
fn acceptance_11_pulsed_ionization_mode() {
    let rates = ModelRates::default();
    let mut detail = String::new();
    let mut pass = true;
    for regime in Regime::ALL {
        let spec = FigureSpec::for_regime(regime, ReadoutChannel::Photocurrent);
        let continuous = {
            let seq = spec
                .build_sequence(None, spec.blue_scenario().unwrap())
                .unwrap();
            run_sequence(&seq, &rates, None)
                .unwrap()
                .collected_pc
                .unwrap()
        };
        let pulsed = {
            let mut p = spec;
            p.pulsed_ionization = true;
            let seq = p.build_sequence(None, p.blue_scenario().unwrap()).unwrap();
            run_sequence(&seq, &rates, None)
                .unwrap()
                .collected_pc
                .unwrap()
        };
        let ok = pulsed <= 0.01 * continuous;
        pass &= ok;
        detail.push_str(&format!(
            "{regime}: pulsed {pulsed:.3e} vs cw {continuous:.3e}; "
        ));
    }
    verdict(11, "pulsed ionization mode", pass, &detail);
}

#[test]
fn acceptance_12_figure_suite() {
    let rates = ModelRates::default();
    let dir1 = tempfile::tempdir().unwrap();
    let dir2 = tempfile::tempdir().unwrap();

    let t0 = std::time::Instant::now();
    let manifest1 = figure_suite(&rates, dir1.path(), 1).unwrap();
    let single_worker_time = t0.elapsed();
    let manifest4 = figure_suite(&rates, dir2.path(), 4).unwrap();

    assert_eq!(manifest1.entries.len(), 80);
    assert_eq!(manifest1, manifest4);

    let csv_count = std::fs::read_dir(dir1.path())
        .unwrap()
        .filter(|e| {
            e.as_ref()
                .unwrap()
                .path()
                .extension()
                .is_some_and(|x| x == "csv")
        })
        .count();
    assert_eq!(csv_count, 80);

    // Byte-identical output across worker counts, manifest included.
    let mut names: Vec<String> = manifest1.entries.iter().map(|e| e.file.clone()).collect();
    names.push(nvsim_core::sweep::SuiteManifest::FILE_NAME.to_string());
    for name in &names {
        let a = std::fs::read(dir1.path().join(name)).unwrap();
        let b = std::fs::read(dir2.path().join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between worker counts");
    }

    let pass = single_worker_time.as_secs_f64() < 120.0;
    verdict(
        12,
        "figure suite",
        pass,
        &format!(
            "80 curve files + manifest, byte-identical across 1 and 4 workers, {:.2} s single-worker",
            single_worker_time.as_secs_f64()
        ),
    );
}

fn random_valid_sequence(rng: &mut ChaCha8Rng) -> PulseSequence {
    let curve = if rng.random_bool(0.5) {
        CurveLabel::Red
    } else {
        CurveLabel::Blue
    };
    let scenario = Scenario::new(rng.random_range(450.0..700.0), curve).unwrap();
    let mut steps = Vec::new();

    if rng.random_bool(0.8) {
        steps.push(SequenceStep::Initialize {
            laser: LaserField::population(
                rng.random_range(400.0..700.0),
                rng.random_range(0.0..10.0),
            )
            .unwrap(),
            duration_us: rng.random_range(0.0..5.0),
            settle_us: rng.random_range(0.0..2.0),
        });
    }
    if rng.random_bool(0.7) {
        steps.push(SequenceStep::PiPulse);
    }
    let n_pulses = rng.random_range(1..=4);
    let collect_at = rng.random_range(0..n_pulses);
    for i in 0..n_pulses {
        if rng.random_bool(0.4) {
            steps.push(SequenceStep::Delay {
                duration_us: rng.random_range(0.0..1.5),
            });
        }
        let collect = i == collect_at && rng.random_bool(0.8);
        let (wavelength, role) = if collect {
            (rng.random_range(477.0..674.0), LaserRole::Ionization)
        } else {
            (rng.random_range(400.0..700.0), LaserRole::Population)
        };
        let mode = if rng.random_bool(0.25) {
            LaserMode::ShortPulsed
        } else {
            LaserMode::Continuous
        };
        steps.push(SequenceStep::Pulse {
            laser: LaserField::new(wavelength, rng.random_range(0.0..30.0), mode, role).unwrap(),
            duration_us: rng.random_range(0.0..1.0),
            collect_pc: collect,
        });
    }
    if rng.random_bool(0.8) {
        steps.push(SequenceStep::Readout {
            laser: LaserField::readout(
                rng.random_range(400.0..700.0),
                rng.random_range(0.0..1.0),
            )
            .unwrap(),
            duration_us: rng.random_range(0.0..2.0),
        });
    }
    PulseSequence::new(steps, scenario).unwrap()
}

#[test]
fn acceptance_13_parser_round_trip() {
    // The four regime default sequences.
    for (regime, nm, ls) in [
        (Regime::Red, 650.0, 660.0),
        (Regime::Orange, 600.0, 610.0),
        (Regime::Green, 550.0, 560.0),
        (Regime::Blue, 510.0, 520.0),
    ] {
        let seq = default_sequence(
            regime,
            LaserField::ionization(nm, 5.0).unwrap(),
            Scenario::red(ls).unwrap(),
        )
        .unwrap();
        let text = format_sequence(&seq);
        let reparsed = parse_sequence(&text).unwrap();
        assert_eq!(reparsed, seq, "default {regime} sequence failed round-trip");
        assert_eq!(format_sequence(&reparsed), text);
    }

    // Fifty randomized valid sequences.
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e76_7369_6d0d);
    for i in 0..50 {
        let seq = random_valid_sequence(&mut rng);
        let text = format_sequence(&seq);
        let reparsed =
            parse_sequence(&text).unwrap_or_else(|e| panic!("case {i} failed to reparse: {e}\n{text}"));
        assert_eq!(reparsed, seq, "case {i} round-trip mismatch:\n{text}");
        assert_eq!(format_sequence(&reparsed), text, "case {i} format not idempotent");
    }
    verdict(
        13,
        "parser round-trip",
        true,
        "4 regime defaults + 50 randomized sequences parse/format exactly",
    );
}
