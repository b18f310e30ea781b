//! Command-line surface. Inputs are JSON (inline, file path, or `-` for
//! stdin); outputs are single-line JSON on stdout. Exit codes: 0 when the
//! command succeeds and every verdict passes, 1 when a verification verdict
//! fails, 2 on input errors (with a line/column diagnostic for bad JSON).

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::choquet::{choquet_integral, handle_from_spec, lp_norm, ContentHandle};
use crate::decomp::{cz_decompose, packing_select, PACKING_BUDGET};
use crate::equivalence::{
    doubling_constants, equivalence_check, packing_condition_test, TheoremConstants,
};
use crate::experiments::{
    differentiation_experiment, jn_experiment, maximal_comparison_experiment, standard_battery,
    strong_type_experiment, weak_type_experiment, ExperimentReport,
};
use crate::gauge::CapacitySpec;
use crate::grid::{GridFunction, GridSet};
use crate::lattice::{CubeId, LatticeConfig};
use crate::maximal::{ball_maximal, dyadic_maximal, sharp_maximal};
use crate::sampling;

#[derive(Parser)]
#[command(
    name = "capacitary",
    no_binary_name = true,
    version,
    about = "Dyadic contents, Choquet integrals, maximal operators, and inequality verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cover content of a cell set under a cube gauge
    Content {
        /// Capacity spec JSON, e.g. '{"kind":"power","beta":1}'
        #[arg(long)]
        gauge: String,
        /// GridSet JSON: {"config":{"dimension":n,"finest_level":L},"cells":[...]}
        #[arg(long)]
        set: String,
        /// Also print an optimal cover attaining the content
        #[arg(long)]
        cover: bool,
    },
    /// Choquet integral of a grid function
    Integral {
        #[arg(long)]
        gauge: String,
        /// GridFunction JSON: {"config":{...},"values":[...]}
        #[arg(long)]
        function: String,
        /// Optional GridSet JSON region (defaults to the whole window)
        #[arg(long)]
        region: Option<String>,
    },
    /// Maximal operator values and attaining witnesses
    Maximal {
        #[arg(long)]
        gauge: String,
        #[arg(long)]
        function: String,
        #[arg(long, value_enum, default_value_t = OpKind::Dyadic)]
        op: OpKind,
        /// Also report the L^p norm of the output values
        #[arg(long)]
        p: Option<f64>,
    },
    /// Stopping-time decomposition at a height
    Cz {
        #[arg(long)]
        gauge: String,
        #[arg(long)]
        function: String,
        /// Stopping height Λ (must be ≥ the root average of |f|)
        #[arg(long)]
        height: f64,
        /// Root cube JSON (defaults to the whole window)
        #[arg(long)]
        cube: Option<String>,
    },
    /// Greedy budget-respecting selection from a cube family
    Pack {
        #[arg(long)]
        gauge: String,
        /// Family JSON: {"config":{...},"cubes":[{"level":..,"index":[..]},...]}
        #[arg(long)]
        family: String,
    },
    /// Statistical verification of the structural inequalities
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// End-to-end inequality experiments with reports
    Experiment {
        #[command(subcommand)]
        what: ExperimentCommand,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum OpKind {
    Dyadic,
    Ball,
    BallUncentered,
    Sharp,
}

#[derive(Args)]
struct WindowArgs {
    /// Grid dimension n (window = [0,1)^n)
    #[arg(long, default_value_t = 1)]
    dimension: usize,
    /// Finest dyadic level (a non-positive integer)
    #[arg(long, default_value_t = -6, allow_negative_numbers = true)]
    level: i32,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Two-sided comparison of a capacity with its induced content
    Equivalence {
        /// Capacity spec JSON or file path
        #[arg(long)]
        capacity: String,
        #[command(flatten)]
        window: WindowArgs,
        /// Number of random sets beyond the deterministic battery
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Family-budget integral inequality over sampled cube families
    Packing {
        #[arg(long)]
        capacity: String,
        #[command(flatten)]
        window: WindowArgs,
        /// Number of random families beyond the deterministic battery
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Budget factor A₀ in the family hypothesis and conclusion
        #[arg(long, default_value_t = PACKING_BUDGET)]
        budget: f64,
    },
    /// Doubling factors on cubes (and optionally concentric balls)
    Doubling {
        #[arg(long)]
        capacity: String,
        #[command(flatten)]
        window: WindowArgs,
        /// Also scan concentric ball pairs (slow on large windows)
        #[arg(long)]
        balls: bool,
    },
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// Distribution bound for the dyadic maximal operator
    WeakType {
        #[arg(long, default_value = r#"{"kind":"power","beta":1}"#)]
        gauge: String,
        #[command(flatten)]
        window: WindowArgs,
        /// Random battery functions beyond the three built-ins
        #[arg(long, default_value_t = 200)]
        functions: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// L^p bound for the dyadic maximal operator
    StrongType {
        #[arg(long, default_value = r#"{"kind":"power","beta":1}"#)]
        gauge: String,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, default_value_t = 200)]
        functions: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Integrability exponent (finite, > 1)
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Tower averages of |f−f(x)| for the sampled function f(x) = x₀
    Differentiation {
        #[arg(long, default_value = r#"{"kind":"power","beta":1}"#)]
        gauge: String,
        #[arg(long, default_value_t = 1)]
        dimension: usize,
        /// Window levels to sample, coarse to fine
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true,
              default_values_t = vec![-3, -4, -5, -6, -7, -8])]
        levels: Vec<i32>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Exponential oscillation-tail decay for a bounded-oscillation function
    Jn {
        #[arg(long, default_value = r#"{"kind":"power","beta":1}"#)]
        gauge: String,
        #[arg(long, default_value_t = 1)]
        dimension: usize,
        #[arg(long, default_value_t = -10, allow_negative_numbers = true)]
        level: i32,
        /// GridFunction JSON (defaults to the leading-zero-bits oscillator)
        #[arg(long)]
        function: Option<String>,
        /// Base cube JSON (defaults to the whole window)
        #[arg(long)]
        cube: Option<String>,
        /// Exhaustive subcube depth below the base cube
        #[arg(long, default_value_t = 4)]
        depth: u32,
        /// Extra random deeper subcubes
        #[arg(long, default_value_t = 100)]
        random_cubes: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Ball vs dyadic maximal operator comparison (measured constants)
    MaximalComparison {
        #[arg(long, default_value = r#"{"kind":"power","beta":1}"#)]
        gauge: String,
        #[arg(long, default_value_t = 1)]
        dimension: usize,
        #[arg(long, default_value_t = -4, allow_negative_numbers = true)]
        level: i32,
        #[arg(long, default_value_t = 4)]
        functions: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// Runs the CLI against `args` (without the binary name), writing reports to
/// `out`. Returns the process exit code.
pub fn run_with_io(args: &[String], out: &mut dyn Write) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            eprint!("{e}");
            return 2;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    }
}

fn load_text(arg: &str, what: &str) -> Result<String, String> {
    if arg == "-" {
        return io::read_to_string(io::stdin()).map_err(|e| format!("cannot read stdin: {e}"));
    }
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).map_err(|e| format!("cannot read {what} file {arg}: {e}"))
}

fn json_arg<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T, String> {
    let text = load_text(arg, what)?;
    serde_json::from_str(&text).map_err(|e| format!("malformed {what} JSON: {e}"))
}

/// Whole numbers print as JSON integers, so small exact results keep their
/// canonical shape ({"content":1}, not {"content":1.0}).
fn render_number(v: f64) -> Value {
    if v.is_finite() {
        if v.fract() == 0.0 && v.abs() < 9.0e15 {
            return json!(v as i64);
        }
        json!(v)
    } else if v == f64::INFINITY {
        json!("inf")
    } else if v == f64::NEG_INFINITY {
        json!("-inf")
    } else {
        json!("nan")
    }
}

fn emit(out: &mut dyn Write, value: &Value) -> Result<(), String> {
    let text = serde_json::to_string(value).map_err(|e| e.to_string())?;
    writeln!(out, "{text}").map_err(|e| e.to_string())
}

fn to_value<T: serde::Serialize>(value: &T) -> Result<Value, String> {
    serde_json::to_value(value).map_err(|e| e.to_string())
}

fn report_exit(
    report: &ExperimentReport,
    csv: Option<&PathBuf>,
    out: &mut dyn Write,
) -> Result<u8, String> {
    if let Some(path) = csv {
        fs::write(path, report.csv())
            .map_err(|e| format!("cannot write CSV {}: {e}", path.display()))?;
    }
    emit(out, &to_value(report)?)?;
    Ok(if report.pass() { 0 } else { 1 })
}

fn window_config(window: &WindowArgs) -> Result<LatticeConfig, String> {
    LatticeConfig::new(window.dimension, window.level).map_err(|e| e.to_string())
}

#[derive(Deserialize)]
struct FamilyInput {
    config: LatticeConfig,
    cubes: Vec<CubeId>,
}

fn execute(command: Command, out: &mut dyn Write) -> Result<u8, String> {
    match command {
        Command::Content { gauge, set, cover } => {
            let set: GridSet = json_arg(&set, "set")?;
            let spec: CapacitySpec = json_arg(&gauge, "gauge")?;
            let cube_gauge = spec
                .build_cube_gauge(set.config())
                .map_err(|e| e.to_string())?;
            let handle =
                ContentHandle::new(set.config(), cube_gauge).map_err(|e| e.to_string())?;
            let mut object = Map::new();
            if cover {
                let (value, cubes) = handle.optimal_cover(&set);
                object.insert("content".into(), render_number(value));
                object.insert("cover".into(), to_value(&cubes)?);
            } else {
                object.insert("content".into(), render_number(handle.content(&set)));
            }
            emit(out, &Value::Object(object))?;
            Ok(0)
        }
        Command::Integral {
            gauge,
            function,
            region,
        } => {
            let f: GridFunction = json_arg(&function, "function")?;
            let spec: CapacitySpec = json_arg(&gauge, "gauge")?;
            let handle = handle_from_spec(&spec, f.config()).map_err(|e| e.to_string())?;
            let region = match region {
                Some(r) => json_arg::<GridSet>(&r, "region")?,
                None => GridSet::full(f.config()),
            };
            if region.config() != f.config() {
                return Err("region window differs from function window".into());
            }
            let value = choquet_integral(&f, handle.as_ref(), &region);
            emit(out, &json!({ "integral": render_number(value) }))?;
            Ok(0)
        }
        Command::Maximal {
            gauge,
            function,
            op,
            p,
        } => {
            let f: GridFunction = json_arg(&function, "function")?;
            let spec: CapacitySpec = json_arg(&gauge, "gauge")?;
            let handle = handle_from_spec(&spec, f.config()).map_err(|e| e.to_string())?;
            let result = match op {
                OpKind::Dyadic => dyadic_maximal(&f, handle.as_ref()),
                OpKind::Ball => ball_maximal(&f, handle.as_ref(), true),
                OpKind::BallUncentered => ball_maximal(&f, handle.as_ref(), false),
                OpKind::Sharp => sharp_maximal(&f, handle.as_ref(), &f.config().root()),
            };
            let mut value = to_value(&result)?;
            if let Some(p) = p {
                let norm = lp_norm(&result.values, handle.as_ref(), p).map_err(|e| e.to_string())?;
                value
                    .as_object_mut()
                    .expect("maximal result serializes to an object")
                    .insert("lp_norm".into(), render_number(norm));
            }
            emit(out, &value)?;
            Ok(0)
        }
        Command::Cz {
            gauge,
            function,
            height,
            cube,
        } => {
            let f: GridFunction = json_arg(&function, "function")?;
            let spec: CapacitySpec = json_arg(&gauge, "gauge")?;
            let handle = handle_from_spec(&spec, f.config()).map_err(|e| e.to_string())?;
            let q0 = match cube {
                Some(c) => json_arg::<CubeId>(&c, "cube")?,
                None => f.config().root(),
            };
            let decomposition =
                cz_decompose(&f, handle.as_ref(), &q0, height).map_err(|e| e.to_string())?;
            emit(out, &to_value(&decomposition)?)?;
            Ok(0)
        }
        Command::Pack { gauge, family } => {
            let input: FamilyInput = json_arg(&family, "family")?;
            let spec: CapacitySpec = json_arg(&gauge, "gauge")?;
            let cube_gauge = spec
                .build_cube_gauge(input.config)
                .map_err(|e| e.to_string())?;
            let selection = packing_select(input.config, &input.cubes, &cube_gauge)
                .map_err(|e| e.to_string())?;
            let certificate = selection.certify(input.config, &cube_gauge);
            emit(
                out,
                &json!({ "selection": to_value(&selection)?, "certificate": to_value(&certificate)? }),
            )?;
            Ok(if certificate.pass() { 0 } else { 1 })
        }
        Command::Verify { what } => match what {
            VerifyCommand::Equivalence {
                capacity,
                window,
                samples,
                seed,
            } => {
                let config = window_config(&window)?;
                let spec: CapacitySpec = json_arg(&capacity, "capacity")?;
                let handle = handle_from_spec(&spec, config).map_err(|e| e.to_string())?;
                let report =
                    equivalence_check(handle.as_ref(), samples, seed).map_err(|e| e.to_string())?;
                emit(out, &to_value(&report)?)?;
                Ok(if report.pass { 0 } else { 1 })
            }
            VerifyCommand::Packing {
                capacity,
                window,
                samples,
                seed,
                budget,
            } => {
                let config = window_config(&window)?;
                let spec: CapacitySpec = json_arg(&capacity, "capacity")?;
                let handle = handle_from_spec(&spec, config).map_err(|e| e.to_string())?;
                let report = packing_condition_test(handle.as_ref(), samples, seed, budget)
                    .map_err(|e| e.to_string())?;
                emit(out, &to_value(&report)?)?;
                Ok(if report.pass { 0 } else { 1 })
            }
            VerifyCommand::Doubling {
                capacity,
                window,
                balls,
            } => {
                let config = window_config(&window)?;
                let spec: CapacitySpec = json_arg(&capacity, "capacity")?;
                let handle = handle_from_spec(&spec, config).map_err(|e| e.to_string())?;
                let report = doubling_constants(handle.as_ref(), balls);
                let constants =
                    TheoremConstants::from_doubling(report.cube_factor, report.ball_factor);
                emit(
                    out,
                    &json!({ "doubling": to_value(&report)?, "constants": to_value(&constants)? }),
                )?;
                Ok(0)
            }
        },
        Command::Experiment { what } => match what {
            ExperimentCommand::WeakType {
                gauge,
                window,
                functions,
                seed,
                csv,
            } => {
                let config = window_config(&window)?;
                let spec: CapacitySpec = json_arg(&gauge, "gauge")?;
                let handle = handle_from_spec(&spec, config).map_err(|e| e.to_string())?;
                let battery = standard_battery(config, functions, seed);
                let report = weak_type_experiment(&battery, handle.as_ref());
                report_exit(&report, csv.as_ref(), out)
            }
            ExperimentCommand::StrongType {
                gauge,
                window,
                functions,
                seed,
                p,
                csv,
            } => {
                let config = window_config(&window)?;
                let spec: CapacitySpec = json_arg(&gauge, "gauge")?;
                let handle = handle_from_spec(&spec, config).map_err(|e| e.to_string())?;
                let battery = standard_battery(config, functions, seed);
                let report = strong_type_experiment(&battery, handle.as_ref(), p)
                    .map_err(|e| e.to_string())?;
                report_exit(&report, csv.as_ref(), out)
            }
            ExperimentCommand::Differentiation {
                gauge,
                dimension,
                levels,
                csv,
            } => {
                let spec: CapacitySpec = json_arg(&gauge, "gauge")?;
                let report =
                    differentiation_experiment(&spec, dimension, &levels, &|x| x[0], 1.0)
                        .map_err(|e| e.to_string())?;
                report_exit(&report, csv.as_ref(), out)
            }
            ExperimentCommand::Jn {
                gauge,
                dimension,
                level,
                function,
                cube,
                depth,
                random_cubes,
                seed,
                csv,
            } => {
                let config =
                    LatticeConfig::new(dimension, level).map_err(|e| e.to_string())?;
                let spec: CapacitySpec = json_arg(&gauge, "gauge")?;
                let handle = handle_from_spec(&spec, config).map_err(|e| e.to_string())?;
                let f = match function {
                    Some(text) => {
                        let f: GridFunction = json_arg(&text, "function")?;
                        if f.config() != config {
                            return Err("function window differs from --dimension/--level".into());
                        }
                        f
                    }
                    None => sampling::leading_zeros_function(config),
                };
                let q0 = match cube {
                    Some(c) => json_arg::<CubeId>(&c, "cube")?,
                    None => config.root(),
                };
                let report =
                    jn_experiment(&f, handle.as_ref(), &q0, depth, random_cubes, seed)
                        .map_err(|e| e.to_string())?;
                report_exit(&report, csv.as_ref(), out)
            }
            ExperimentCommand::MaximalComparison {
                gauge,
                dimension,
                level,
                functions,
                seed,
                csv,
            } => {
                let config =
                    LatticeConfig::new(dimension, level).map_err(|e| e.to_string())?;
                let spec: CapacitySpec = json_arg(&gauge, "gauge")?;
                let handle = handle_from_spec(&spec, config).map_err(|e| e.to_string())?;
                let battery = standard_battery(config, functions, seed);
                let report = maximal_comparison_experiment(
                    &battery,
                    handle.as_ref(),
                    &[1.0, 0.5, 0.25, 0.125],
                );
                report_exit(&report, csv.as_ref(), out)
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (u8, String) {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let mut out = Vec::new();
        let code = run_with_io(&args, &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn content_worked_values_bit_for_bit() {
        let set = r#"{"config":{"dimension":1,"finest_level":-2},"cells":[0,3]}"#;
        let (code, text) = run(&[
            "content",
            "--gauge",
            r#"{"kind":"power","beta":1}"#,
            "--set",
            set,
        ]);
        assert_eq!(code, 0);
        assert_eq!(text, "{\"content\":0.5}\n");
        let (code, text) = run(&[
            "content",
            "--gauge",
            r#"{"kind":"power","beta":0.25}"#,
            "--set",
            set,
        ]);
        assert_eq!(code, 0);
        assert_eq!(text, "{\"content\":1}\n");
        let empty = r#"{"config":{"dimension":1,"finest_level":-2},"cells":[]}"#;
        let (code, text) = run(&[
            "content",
            "--gauge",
            r#"{"kind":"power","beta":1}"#,
            "--set",
            empty,
        ]);
        assert_eq!(code, 0);
        assert_eq!(text, "{\"content\":0}\n");
    }

    #[test]
    fn malformed_json_is_input_error() {
        let (code, _) = run(&[
            "content",
            "--gauge",
            r#"{"kind":"power","beta":1}"#,
            "--set",
            r#"{"config":{"dimension":1,"finest_level":-2},"cells":[0,"#,
        ]);
        assert_eq!(code, 2);
    }

    #[test]
    fn unknown_flag_is_input_error() {
        let (code, _) = run(&["content", "--nonsense"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn verify_packing_content_passes() {
        let (code, text) = run(&[
            "verify",
            "packing",
            "--capacity",
            r#"{"kind":"power","beta":0.5}"#,
            "--level",
            "-6",
            "--samples",
            "20",
            "--seed",
            "7",
        ]);
        assert_eq!(code, 0, "{text}");
        assert!(text.contains("\"pass\":true"));
    }

    #[test]
    fn verify_equivalence_flags_bad_capacity() {
        let (code, text) = run(&[
            "verify",
            "equivalence",
            "--capacity",
            r#"{"kind":"measure_power","alpha":0.5,"density":"uniform"}"#,
            "--level",
            "-12",
            "--samples",
            "5",
            "--seed",
            "1",
        ]);
        assert_eq!(code, 1, "{text}");
        assert!(text.contains("stride-64"));
    }

    #[test]
    fn cz_height_error_is_input_error() {
        let f = r#"{"config":{"dimension":1,"finest_level":-2},"values":[4,0,0,0]}"#;
        let (code, _) = run(&[
            "cz",
            "--gauge",
            r#"{"kind":"power","beta":1}"#,
            "--function",
            f,
            "--height",
            "0.5",
        ]);
        assert_eq!(code, 2);
    }

    #[test]
    fn cz_spike_emits_left_half()  {
        let f = r#"{"config":{"dimension":1,"finest_level":-2},"values":[4,0,0,0]}"#;
        let (code, text) = run(&[
            "cz",
            "--gauge",
            r#"{"kind":"power","beta":1}"#,
            "--function",
            f,
            "--height",
            "1",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["cubes"], json!([{"level": -1, "index": [0]}]));
        assert_eq!(v["upper_factor"], json!(2.0));
    }

    #[test]
    fn experiment_reports_deterministic_modulo_runtime() {
        let args = [
            "experiment",
            "weak-type",
            "--level",
            "-4",
            "--functions",
            "6",
            "--seed",
            "3",
        ];
        let (code_a, text_a) = run(&args);
        let (code_b, text_b) = run(&args);
        assert_eq!(code_a, 0);
        assert_eq!(code_b, 0);
        let mut a: Value = serde_json::from_str(&text_a).unwrap();
        let mut b: Value = serde_json::from_str(&text_b).unwrap();
        a["runtime_ms"] = json!(0);
        b["runtime_ms"] = json!(0);
        assert_eq!(a, b);
    }

    #[test]
    fn jn_experiment_writes_csv_tails() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tails.csv");
        let (code, text) = run(&[
            "experiment",
            "jn",
            "--level",
            "-6",
            "--depth",
            "3",
            "--random-cubes",
            "5",
            "--csv",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{text}");
        let csv = fs::read_to_string(&path).unwrap();
        assert!(csv.starts_with("Qprime_id,t,tail,bound\n"));
        assert!(csv.lines().count() > 10);
    }

    #[test]
    fn pack_round_trips_family_json() {
        let family = r#"{"config":{"dimension":2,"finest_level":-2},
            "cubes":[{"level":-1,"index":[0,0]},{"level":-1,"index":[1,0]},
                     {"level":-1,"index":[0,1]},{"level":-1,"index":[1,1]}]}"#;
        let (code, text) = run(&[
            "pack",
            "--gauge",
            r#"{"kind":"power","beta":0.5}"#,
            "--family",
            family,
        ]);
        assert_eq!(code, 0, "{text}");
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["selection"]["selected"].as_array().unwrap().len(), 2);
        assert_eq!(v["certificate"]["covers_input"], json!(true));
    }

    #[test]
    fn maximal_sharp_reports_values() {
        let f = r#"{"config":{"dimension":1,"finest_level":-2},"values":[1,0,0,0]}"#;
        let (code, text) = run(&[
            "maximal",
            "--gauge",
            r#"{"kind":"power","beta":1}"#,
            "--function",
            f,
            "--op",
            "sharp",
            "--p",
            "2",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["values"]["values"], json!([0.5, 0.5, 0.25, 0.25]));
        assert!(v["lp_norm"].is_number());
    }
}
