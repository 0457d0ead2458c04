//! Line-oriented text format for pulse sequences.
//!
//! ```text
//! # charge-conversion sequence, red regime
//! scenario 660nm red
//! init 532nm 2mW 3us settle=1us
//! pi
//! pulse 532nm 2mW 30ns
//! delay 30ns
//! pulse 650nm 5mW 100ns collect=pc
//! readout 532nm 100uW 1us
//! ```
//!
//! Every quantity carries an explicit unit suffix (`nm`, `mW`/`uW`,
//! `us`/`ns`); bare numbers are rejected. `#` starts a comment. The
//! optional `scenario` line fixes the threshold hypothesis; without it the
//! sequence gets the neutral default of λ_s = 637 nm, labelled red. A
//! `pulsed` token marks a laser as short-pulsed. Formatting normalizes
//! durations to `us` and powers to `mW`, so parse → format → parse is
//! exact.

use crate::error::{Error, Result};
use crate::model::{CurveLabel, LaserField, LaserMode, LaserRole, Scenario};
use crate::sequence::{PulseSequence, SequenceStep};

/// Scenario assumed when a sequence file does not declare one: threshold at
/// the NV⁻ ZPL, labelled as the red curve.
pub const DEFAULT_LAMBDA_S_NM: f64 = 637.0;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parse `text` into a validated sequence.
pub fn parse_sequence(text: &str) -> Result<PulseSequence> {
    let mut steps = Vec::new();
    let mut scenario: Option<Scenario> = None;
    let mut collect_line: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let mut tokens = line.split_whitespace();
        let Some(keyword) = tokens.next() else {
            continue;
        };
        let rest: Vec<&str> = tokens.collect();

        match keyword {
            "scenario" => {
                if scenario.is_some() {
                    return Err(parse_err(line_no, "duplicate scenario line"));
                }
                if rest.len() != 2 {
                    return Err(parse_err(
                        line_no,
                        "scenario takes a wavelength and a curve label, e.g. `scenario 660nm red`",
                    ));
                }
                let lambda = parse_wavelength(rest[0], line_no)?;
                let curve = match rest[1] {
                    "red" => CurveLabel::Red,
                    "blue" => CurveLabel::Blue,
                    other => {
                        return Err(parse_err(
                            line_no,
                            format!("curve label must be `red` or `blue`, got `{other}`"),
                        ))
                    }
                };
                scenario =
                    Some(Scenario::new(lambda, curve).map_err(|e| parse_err(line_no, e.to_string()))?);
            }
            "init" => {
                let (positional, flags) = split_flags(&rest);
                if positional.len() != 3 {
                    return Err(parse_err(
                        line_no,
                        "init takes wavelength, power, and duration, e.g. `init 532nm 2mW 3us settle=1us`",
                    ));
                }
                let flags = parse_flags(&flags, line_no, FlagSet::Init)?;
                let laser = build_laser(
                    positional[0],
                    positional[1],
                    LaserRole::Population,
                    flags.pulsed,
                    line_no,
                )?;
                steps.push(SequenceStep::Initialize {
                    laser,
                    duration_us: parse_duration(positional[2], line_no)?,
                    settle_us: flags.settle_us.unwrap_or(0.0),
                });
            }
            "pi" => {
                if !rest.is_empty() {
                    return Err(parse_err(line_no, "pi takes no arguments"));
                }
                steps.push(SequenceStep::PiPulse);
            }
            "pulse" => {
                let (positional, flags) = split_flags(&rest);
                if positional.len() != 3 {
                    return Err(parse_err(
                        line_no,
                        "pulse takes wavelength, power, and duration, e.g. `pulse 650nm 5mW 100ns collect=pc`",
                    ));
                }
                let flags = parse_flags(&flags, line_no, FlagSet::Pulse)?;
                if flags.collect_pc {
                    if let Some(first) = collect_line {
                        return Err(parse_err(
                            line_no,
                            format!("duplicate collect=pc (first on line {first})"),
                        ));
                    }
                    collect_line = Some(line_no);
                }
                let role = if flags.collect_pc {
                    LaserRole::Ionization
                } else {
                    LaserRole::Population
                };
                let laser = build_laser(positional[0], positional[1], role, flags.pulsed, line_no)?;
                steps.push(SequenceStep::Pulse {
                    laser,
                    duration_us: parse_duration(positional[2], line_no)?,
                    collect_pc: flags.collect_pc,
                });
            }
            "delay" => {
                if rest.len() != 1 {
                    return Err(parse_err(line_no, "delay takes a single duration, e.g. `delay 30ns`"));
                }
                steps.push(SequenceStep::Delay {
                    duration_us: parse_duration(rest[0], line_no)?,
                });
            }
            "readout" => {
                let (positional, flags) = split_flags(&rest);
                if positional.len() != 3 {
                    return Err(parse_err(
                        line_no,
                        "readout takes wavelength, power, and duration, e.g. `readout 532nm 100uW 1us`",
                    ));
                }
                let flags = parse_flags(&flags, line_no, FlagSet::Readout)?;
                let laser = build_laser(
                    positional[0],
                    positional[1],
                    LaserRole::Readout,
                    flags.pulsed,
                    line_no,
                )?;
                steps.push(SequenceStep::Readout {
                    laser,
                    duration_us: parse_duration(positional[2], line_no)?,
                });
            }
            other => {
                return Err(parse_err(line_no, format!("unknown keyword `{other}`")));
            }
        }
    }

    let scenario = match scenario {
        Some(s) => s,
        None => Scenario::red(DEFAULT_LAMBDA_S_NM)?,
    };
    PulseSequence::new(steps, scenario)
}

/// Render a sequence in the canonical form accepted by [`parse_sequence`].
pub fn format_sequence(seq: &PulseSequence) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "scenario {}nm {}\n",
        seq.scenario.lambda_s_nm,
        seq.scenario.curve.label()
    ));
    for step in seq.steps() {
        match *step {
            SequenceStep::Initialize {
                laser,
                duration_us,
                settle_us,
            } => {
                out.push_str(&format!(
                    "init {}nm {}mW {}us settle={}us{}\n",
                    laser.wavelength_nm,
                    laser.power_mw,
                    duration_us,
                    settle_us,
                    pulsed_suffix(&laser)
                ));
            }
            SequenceStep::PiPulse => out.push_str("pi\n"),
            SequenceStep::Pulse {
                laser,
                duration_us,
                collect_pc,
            } => {
                let collect = if collect_pc { " collect=pc" } else { "" };
                out.push_str(&format!(
                    "pulse {}nm {}mW {}us{}{}\n",
                    laser.wavelength_nm,
                    laser.power_mw,
                    duration_us,
                    collect,
                    pulsed_suffix(&laser)
                ));
            }
            SequenceStep::Delay { duration_us } => {
                out.push_str(&format!("delay {}us\n", duration_us));
            }
            SequenceStep::Readout { laser, duration_us } => {
                out.push_str(&format!(
                    "readout {}nm {}mW {}us{}\n",
                    laser.wavelength_nm,
                    laser.power_mw,
                    duration_us,
                    pulsed_suffix(&laser)
                ));
            }
        }
    }
    out
}

fn pulsed_suffix(laser: &LaserField) -> &'static str {
    if laser.mode == LaserMode::ShortPulsed {
        " pulsed"
    } else {
        ""
    }
}

fn build_laser(
    wavelength_tok: &str,
    power_tok: &str,
    role: LaserRole,
    pulsed: bool,
    line: usize,
) -> Result<LaserField> {
    let wavelength = parse_wavelength(wavelength_tok, line)?;
    let power = parse_power(power_tok, line)?;
    let mode = if pulsed {
        LaserMode::ShortPulsed
    } else {
        LaserMode::Continuous
    };
    LaserField::new(wavelength, power, mode, role).map_err(|e| parse_err(line, e.to_string()))
}

fn split_flags<'a>(rest: &[&'a str]) -> (Vec<&'a str>, Vec<&'a str>) {
    let is_flag = |t: &str| t.contains('=') || t == "pulsed";
    let positional = rest.iter().copied().filter(|t| !is_flag(t)).collect();
    let flags = rest.iter().copied().filter(|t| is_flag(t)).collect();
    (positional, flags)
}

#[derive(Default)]
struct Flags {
    settle_us: Option<f64>,
    collect_pc: bool,
    pulsed: bool,
}

#[derive(Clone, Copy, PartialEq)]
enum FlagSet {
    Init,
    Pulse,
    Readout,
}

fn parse_flags(tokens: &[&str], line: usize, allowed: FlagSet) -> Result<Flags> {
    let mut flags = Flags::default();
    for tok in tokens {
        if let Some(value) = tok.strip_prefix("settle=") {
            if allowed != FlagSet::Init {
                return Err(parse_err(line, "settle= is only valid on init lines"));
            }
            if flags.settle_us.is_some() {
                return Err(parse_err(line, "duplicate settle="));
            }
            flags.settle_us = Some(parse_duration(value, line)?);
        } else if *tok == "collect=pc" {
            if allowed != FlagSet::Pulse {
                return Err(parse_err(line, "collect=pc is only valid on pulse lines"));
            }
            if flags.collect_pc {
                return Err(parse_err(line, "duplicate collect=pc"));
            }
            flags.collect_pc = true;
        } else if *tok == "pulsed" {
            flags.pulsed = true;
        } else {
            return Err(parse_err(line, format!("unknown flag `{tok}`")));
        }
    }
    Ok(flags)
}

fn parse_suffixed(token: &str, units: &[(&str, f64)], what: &str, line: usize) -> Result<f64> {
    for (suffix, scale) in units {
        if let Some(number) = strip_suffix_ci(token, suffix) {
            if number.is_empty() {
                return Err(parse_err(line, format!("{what} `{token}` has no numeric part")));
            }
            let value: f64 = number.parse().map_err(|_| {
                parse_err(line, format!("cannot parse {what} `{token}` as a number"))
            })?;
            if !value.is_finite() {
                return Err(parse_err(line, format!("{what} `{token}` is not finite")));
            }
            return Ok(value * scale);
        }
    }
    let names: Vec<&str> = units.iter().map(|(s, _)| *s).collect();
    Err(parse_err(
        line,
        format!(
            "{what} `{token}` is missing a unit suffix (expected one of: {})",
            names.join(", ")
        ),
    ))
}

fn strip_suffix_ci<'a>(token: &'a str, suffix: &str) -> Option<&'a str> {
    if token.len() < suffix.len() {
        return None;
    }
    let (head, tail) = token.split_at(token.len() - suffix.len());
    tail.eq_ignore_ascii_case(suffix).then_some(head)
}

fn parse_wavelength(token: &str, line: usize) -> Result<f64> {
    parse_suffixed(token, &[("nm", 1.0)], "wavelength", line)
}

fn parse_power(token: &str, line: usize) -> Result<f64> {
    parse_suffixed(token, &[("mW", 1.0), ("uW", 1e-3)], "power", line)
}

fn parse_duration(token: &str, line: usize) -> Result<f64> {
    parse_suffixed(token, &[("us", 1.0), ("ns", 1e-3)], "duration", line)
}
