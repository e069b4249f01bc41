//! Multi-threaded trial execution. Each trial draws from its own
//! `(seed, trial)` stream and outcomes are folded in trial order, so the
//! result is bit-identical to [`Experiment::run`].

use rayon::prelude::*;

use motionless_core::experiment::Experiment;
use motionless_core::{ExperimentConfig, ExperimentResult};

/// Runs all trials on the current rayon pool.
pub fn run_parallel(experiment: &Experiment) -> ExperimentResult {
    let outcomes: Vec<_> = (0..experiment.config().trials)
        .into_par_iter()
        .map(|t| experiment.trial(t))
        .collect();
    experiment.summarize(outcomes)
}

/// Prepares `config` and runs it on `threads` workers; `threads <= 1` runs
/// on the calling thread.
pub fn run_experiment_with_threads(
    config: ExperimentConfig,
    threads: usize,
) -> Result<ExperimentResult, crate::FormatError> {
    let experiment = Experiment::prepare(config)?;
    if threads <= 1 {
        return Ok(experiment.run());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(pool.install(|| run_parallel(&experiment)))
}
