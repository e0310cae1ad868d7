use clap::{Parser, ValueEnum};
use prover::fol::Formula;
use prover::game::generate_game;
use prover::saturation::{decide, Decision, ProverConfig, SatResult, Saturation};
use prover::sig::Role;
use prover::smtlib::parse_smtlib;
use prover::ta::{AcyclicityMode, TransitivityVariant};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    /// Refute the asserted clause set.
    Refute,
    /// Decide the asserted sentence by dual saturation.
    Decide,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Acyclicity {
    Off,
    Axioms,
    Rules,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Transitivity {
    Full,
    Stepwise,
}

/// Saturation prover for first-order problems over algebraic data types.
#[derive(Parser, Debug)]
#[command(name = "prover", disable_help_subcommand = true)]
struct Args {
    /// Input file in SMTLIB syntax; standard input when omitted or `-`.
    file: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Mode::Refute)]
    mode: Mode,

    /// Acyclicity handling: subterm-predicate axioms, light-weight
    /// rules, or neither.
    #[arg(long, value_enum, default_value_t = Acyclicity::Rules)]
    acyclicity: Acyclicity,

    /// Constructor distinctness/injectivity simplification rules.
    #[arg(long = "ta-rules", value_enum, default_value_t = Switch::On)]
    ta_rules: Switch,

    /// Shape of the subterm transitivity axiom (axioms mode only).
    #[arg(long, value_enum, default_value_t = Transitivity::Stepwise)]
    transitivity: Transitivity,

    /// Wall-clock limit in seconds.
    #[arg(long = "time-limit", default_value_t = 60.0)]
    time_limit: f64,

    /// Maximum number of retained clauses.
    #[arg(long = "clause-limit", default_value_t = 500_000)]
    clause_limit: usize,

    /// Emit the game benchmark instance for parameter K and exit.
    #[arg(long = "generate-game", value_name = "K")]
    generate_game: Option<u32>,

    /// Print the refutation.
    #[arg(long)]
    proof: bool,

    /// Print search statistics.
    #[arg(long)]
    stats: bool,
}

fn read_input(file: &Option<PathBuf>) -> Result<String, String> {
    match file {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("stdin: {e}"))?;
            Ok(buf)
        }
    }
}

fn print_stats(sat: &Saturation, elapsed: Duration) {
    println!("% generated:  {}", sat.stats.generated);
    println!("% activated:  {}", sat.stats.activated);
    println!("% simplified: {}", sat.stats.simplified);
    println!("% deleted:    {}", sat.stats.deleted);
    println!("% clauses:    {}", sat.num_clauses());
    println!("% time:       {:.3}s", elapsed.as_secs_f64());
}

fn main() -> ExitCode {
    let args = Args::parse();

    if let Some(k) = args.generate_game {
        return match generate_game(k) {
            Ok(text) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }

    if !args.time_limit.is_finite() || args.time_limit < 0.0 {
        eprintln!("error: time limit must be a nonnegative number of seconds");
        return ExitCode::from(2);
    }

    let text = match read_input(&args.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let problem = match parse_smtlib(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let mut cfg = ProverConfig {
        time_limit: Duration::from_secs_f64(args.time_limit),
        clause_limit: args.clause_limit,
        ..ProverConfig::default()
    };
    cfg.ta.acyclicity_mode = match args.acyclicity {
        Acyclicity::Off => AcyclicityMode::Off,
        Acyclicity::Axioms => AcyclicityMode::Axioms,
        Acyclicity::Rules => AcyclicityMode::Rules,
    };
    cfg.ta.ta_rules_enabled = matches!(args.ta_rules, Switch::On);
    cfg.ta.transitivity_variant = match args.transitivity {
        Transitivity::Full => TransitivityVariant::Transitive,
        Transitivity::Stepwise => TransitivityVariant::Stepwise,
    };

    let start = Instant::now();
    match args.mode {
        Mode::Refute => {
            let mut sat = match prover::build_saturation(&problem, &cfg) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let result = sat.run();
            let elapsed = start.elapsed();
            let code = match &result {
                SatResult::Unsatisfiable(proof) => {
                    println!("% SZS status Unsatisfiable");
                    if args.proof {
                        for step in proof {
                            let premises: Vec<String> =
                                step.premises.iter().map(u32::to_string).collect();
                            if premises.is_empty() {
                                println!(
                                    "{}. {} [{}]",
                                    step.id,
                                    step.clause.display(&sat.sig),
                                    step.rule.name()
                                );
                            } else {
                                println!(
                                    "{}. {} [{}, {}]",
                                    step.id,
                                    step.clause.display(&sat.sig),
                                    step.rule.name(),
                                    premises.join(", ")
                                );
                            }
                        }
                    }
                    ExitCode::SUCCESS
                }
                SatResult::Saturated => {
                    // without the subterm axioms the saturated set may
                    // still be unsatisfiable in the intended models
                    if sat.config.ta.acyclicity_mode == AcyclicityMode::Axioms {
                        println!("% SZS status Satisfiable");
                        ExitCode::SUCCESS
                    } else {
                        println!("% SZS status GaveUp");
                        ExitCode::from(1)
                    }
                }
                SatResult::ResourceOut => {
                    println!("% SZS status GaveUp");
                    ExitCode::from(1)
                }
            };
            if args.stats {
                print_stats(&sat, elapsed);
            }
            code
        }
        Mode::Decide => {
            let impure = problem
                .sig
                .symbols()
                .any(|(_, s)| matches!(s.role, Role::Function | Role::Predicate));
            if impure {
                eprintln!(
                    "note: uninterpreted symbols present; the decision guarantee covers pure term-algebra sentences"
                );
            }
            let f = Formula::And(problem.assertions.clone());
            match decide(&f, &problem.sig, &cfg) {
                Decision::Theorem => {
                    println!("% SZS status Theorem");
                    ExitCode::SUCCESS
                }
                Decision::NonTheorem => {
                    println!("% SZS status CounterSatisfiable");
                    ExitCode::SUCCESS
                }
                Decision::ResourceOut => {
                    println!("% SZS status GaveUp");
                    ExitCode::from(1)
                }
            }
        }
    }
}
