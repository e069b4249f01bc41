//! The `motionless` command line.
//!
//! Exit codes: 0 success, 1 a cross-check disagreed, 2 bad arguments or
//! input. Results go to stdout in the selected format; diagnostics go to
//! stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use motionless_core::combinatorics::{
    self, binomial, brute_force_fixed_point_count, count_permutations_fixing, derangement_count,
    factorial, fixed_point_permutation_count, MAX_BRUTE_FORCE, MAX_CLOSED_FORM,
};
use motionless_core::ensemble::{generate_ensemble, BasePattern, MAX_ENSEMBLE};
use motionless_core::experiment::{check_sorted_grid, degradation_sweep, sweep_seed};
use motionless_core::perm::Permutations;
use motionless_core::{ExperimentConfig, MemoryVariant};

use crate::formats::{self, OutputFormat, UnionDoc};
use crate::parallel::run_experiment_with_threads;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "motionless",
    version,
    about = "Fixed-point permutation counts, ensembles and recall experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convergence of the fixed-point share N_m / m! towards 1 - 1/e.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=MAX_CLOSED_FORM as i64))]
        max_m: u16,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Cross-check the closed forms against enumeration and the derangement recurrence.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=MAX_BRUTE_FORCE as i64))]
        max_m: u8,
    },
    /// Every permutation of a base pattern with its fixed positions.
    Ensemble {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=MAX_ENSEMBLE as i64))]
        n: u8,
        /// Comma-separated distinct labels (default a1..an).
        #[arg(long, value_delimiter = ',')]
        labels: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Union cardinality of a set family read from a JSON array of arrays.
    Union {
        sets_file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// One seeded recall experiment.
    Recall {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        noise: f64,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Recall accuracy over a grid of noise rates.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        /// Comma-separated ascending noise rates.
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<f64>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
}

#[derive(Debug, clap::Args)]
pub struct RunArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    /// full, fixed or reduced:K
    #[arg(long, value_parser = formats::parse_variant, default_value = "full")]
    variant: MemoryVariant,
    /// Worker threads for trials; output does not depend on it.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            code
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Table { max_m, format } => cmd_table(max_m.into(), format, out),
        Command::Verify { max_m } => cmd_verify(max_m.into(), out),
        Command::Ensemble { n, labels, format } => cmd_ensemble(n.into(), labels, format, out),
        Command::Union { sets_file, format } => cmd_union(&sets_file, format, out),
        Command::Recall { run, noise, format } => cmd_recall(&run, noise, format, out),
        Command::Sweep { run, grid, format } => cmd_sweep(&run, &grid, format, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

type CmdResult = Result<i32, formats::FormatError>;

fn cmd_table(max_m: usize, format: OutputFormat, out: &mut dyn Write) -> CmdResult {
    let rows = combinatorics::convergence_table(max_m)?;
    formats::write_table(out, &rows, format)?;
    Ok(EXIT_OK)
}

/// Counts, for every subset of positions, the permutations of `m` that
/// fix it: each permutation adds one to every subset of its fixed set.
fn fixing_counts(m: usize) -> Vec<u64> {
    let mut counts = vec![0u64; 1 << m];
    for p in Permutations::new(m) {
        let fixed = p
            .iter()
            .enumerate()
            .filter(|&(i, &v)| i == v)
            .fold(0usize, |acc, (i, _)| acc | 1 << i);
        let mut sub = fixed;
        loop {
            counts[sub] += 1;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & fixed;
        }
    }
    counts
}

fn cmd_verify(max_m: usize, out: &mut dyn Write) -> CmdResult {
    let mut failures = 0;
    let mut report = |out: &mut dyn Write, ok: bool, line: String| -> std::io::Result<()> {
        if !ok {
            failures += 1;
        }
        writeln!(out, "{} {line}", if ok { "ok  " } else { "FAIL" })
    };
    for m in 1..=max_m {
        let closed = fixed_point_permutation_count(m)?;
        let brute = brute_force_fixed_point_count(m)?;
        let fact = factorial(m)?;
        let d = derangement_count(m)?;
        let via_d = fact.as_biguint() - d.as_biguint();
        let ok = closed == brute && *closed.as_biguint() == via_d;
        report(
            out,
            ok,
            format!("N_{m}: closed form {closed}, enumeration {brute}, m! - D_m {via_d}"),
        )?;
    }
    for m in 1..=max_m {
        let counts = fixing_counts(m);
        for k in 0..=m {
            let expected = count_permutations_fixing(m, k)?;
            let subsets: Vec<usize> = (0..counts.len())
                .filter(|s| s.count_ones() as usize == k)
                .collect();
            let all_match = subsets.iter().all(|&s| expected == counts[s]);
            let ok = all_match && binomial(m, k)? == subsets.len() as u64;
            report(
                out,
                ok,
                format!(
                    "fixing m={m} k={k}: all {} subsets fixed by (m-k)! = {expected} permutations",
                    subsets.len()
                ),
            )?;
        }
    }
    Ok(if failures == 0 {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

fn cmd_ensemble(
    n: usize,
    labels: Option<Vec<String>>,
    format: OutputFormat,
    out: &mut dyn Write,
) -> CmdResult {
    let base = match labels {
        Some(labels) => {
            if labels.len() != n {
                return Err(motionless_core::Error::LengthMismatch {
                    expected: n,
                    actual: labels.len(),
                }
                .into());
            }
            BasePattern::new(labels)?
        }
        None => BasePattern::default_labels(n)?,
    };
    let ensemble = generate_ensemble(base)?;
    formats::write_ensemble(out, &ensemble, format)?;
    Ok(EXIT_OK)
}

fn cmd_union(path: &std::path::Path, format: OutputFormat, out: &mut dyn Write) -> CmdResult {
    let family = formats::load_set_family(path)?;
    let (ie, terms) = combinatorics::union_cardinality_inclusion_exclusion(&family)?;
    let recursive = combinatorics::union_cardinality_recursive(&family)?;
    let direct = combinatorics::union_cardinality_direct(&family);
    let count = |c: &combinatorics::ExactCount| c.to_u64().expect("bounded by the universe size");
    let doc = UnionDoc {
        direct: count(&direct),
        inclusion_exclusion: count(&ie),
        recursive: count(&recursive),
        terms_evaluated: count(&terms),
    };
    formats::write_union(out, &doc, format)?;
    Ok(if doc.agrees() { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_recall(run: &RunArgs, noise: f64, format: OutputFormat, out: &mut dyn Write) -> CmdResult {
    let config = ExperimentConfig {
        n: run.n,
        trials: run.trials,
        noise_rate: noise,
        seed: run.seed,
        variant: run.variant,
    };
    let result = run_experiment_with_threads(config, run.threads)?;
    formats::write_experiment(out, &result, format)?;
    Ok(EXIT_OK)
}

fn cmd_sweep(run: &RunArgs, grid: &[f64], format: OutputFormat, out: &mut dyn Write) -> CmdResult {
    let rows = if run.threads <= 1 {
        degradation_sweep(run.n, run.trials, run.seed, run.variant, grid)?
    } else {
        // Same seeds as degradation_sweep, trials spread over the pool.
        check_sorted_grid(grid)?;
        grid.iter()
            .enumerate()
            .map(|(i, &noise_rate)| {
                run_experiment_with_threads(
                    ExperimentConfig {
                        n: run.n,
                        trials: run.trials,
                        noise_rate,
                        seed: sweep_seed(run.seed, i),
                        variant: run.variant,
                    },
                    run.threads,
                )
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    formats::write_sweep(out, &rows, format)?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use motionless_core::combinatorics::count_permutations_fixing;

    #[test]
    fn fixing_counts_are_factorials() {
        let counts = fixing_counts(4);
        for (s, &c) in counts.iter().enumerate() {
            let k = s.count_ones() as usize;
            assert_eq!(count_permutations_fixing(4, k).unwrap(), c);
        }
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
