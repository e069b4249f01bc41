//! Seeded recall trials over ensemble memories: distort a stored member,
//! recall it, score an exact index match.
//!
//! Memory contents per [`MemoryVariant`], all in lexicographic ensemble
//! order and encoded with [`PermutationPattern::encode`]:
//! * `Full`: all `n!` members,
//! * `FixedOnly`: the χ members with at least one fixed position,
//! * `Reduced(k)`: the first `k` of those.
//!
//! Trial `t` owns the stream [`SplitMix64::stream`]`(seed, t)` and draws, in
//! order, the source index (`below(len)`) followed by one `next_f64` per
//! position and one `below(levels - 1)` per position that gets distorted.

use alloc::vec::Vec;

use crate::ensemble::{generate_ensemble, BasePattern, PermutationPattern};
use crate::error::{Error, Result};
use crate::hamming::{encode_level, PatternMemory};
use crate::rng::SplitMix64;

/// Equally spaced levels `0, 1/(L−1), …, 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alphabet {
    levels: usize,
}

impl Alphabet {
    pub fn new(levels: usize) -> Result<Self> {
        if levels < 2 {
            return Err(Error::AlphabetTooSmall { levels, min: 2 });
        }
        Ok(Self { levels })
    }

    pub fn binary() -> Self {
        Self { levels: 2 }
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn value(&self, k: usize) -> f64 {
        encode_level(k, self.levels)
    }

    pub fn index_of(&self, value: f64) -> Result<usize> {
        let scaled = value * (self.levels - 1) as f64;
        // value is in [0, 1] so the rounded index is in range.
        let k = (scaled + 0.5) as usize;
        if (0.0..=1.0).contains(&value) && self.value(k) == value {
            Ok(k)
        } else {
            Err(Error::NotInAlphabet(value))
        }
    }
}

/// Replaces each position, with probability `noise_rate`, by a uniformly
/// chosen different level of `alphabet`.
pub fn distort(
    pattern: &[f64],
    alphabet: Alphabet,
    noise_rate: f64,
    rng: &mut SplitMix64,
) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&noise_rate) {
        return Err(Error::InvalidNoiseRate(noise_rate));
    }
    let others = (alphabet.levels - 1) as u64;
    pattern
        .iter()
        .map(|&v| {
            let current = alphabet.index_of(v)?;
            if rng.next_f64() < noise_rate {
                let r = rng.below(others) as usize;
                let replacement = if r >= current { r + 1 } else { r };
                Ok(alphabet.value(replacement))
            } else {
                Ok(v)
            }
        })
        .collect()
}

/// Which ensemble members the recall memory holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MemoryVariant {
    Full,
    FixedOnly,
    Reduced(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Base pattern size, `2..=8`.
    pub n: usize,
    pub trials: u64,
    pub noise_rate: f64,
    pub seed: u64,
    pub variant: MemoryVariant,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if !(2..=8).contains(&self.n) {
            return Err(Error::PatternSizeOutOfRange(self.n));
        }
        if self.trials == 0 {
            return Err(Error::NoTrials);
        }
        if !(0.0..=1.0).contains(&self.noise_rate) {
            return Err(Error::InvalidNoiseRate(self.noise_rate));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    /// `correct / trials`.
    pub accuracy: f64,
    pub correct: u64,
    /// Stored-pattern distance evaluations across all trials.
    pub comparisons: u64,
}

/// Outcome of a single trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOutcome {
    pub correct: bool,
    pub comparisons: usize,
}

/// A validated configuration with its memory built, ready to run trials in
/// any order.
#[derive(Debug, Clone)]
pub struct Experiment {
    config: ExperimentConfig,
    memory: PatternMemory,
    alphabet: Alphabet,
}

impl Experiment {
    pub fn prepare(config: ExperimentConfig) -> Result<Self> {
        config.validate()?;
        let memory = build_memory(config.n, config.variant)?;
        if memory.is_empty() {
            return Err(Error::EmptyMemory);
        }
        Ok(Self {
            alphabet: Alphabet::new(config.n)?,
            config,
            memory,
        })
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.config
    }

    pub fn memory(&self) -> &PatternMemory {
        &self.memory
    }

    /// Runs trial `index`; depends only on the configuration and `index`.
    pub fn trial(&self, index: u64) -> TrialOutcome {
        let mut rng = SplitMix64::stream(self.config.seed, index);
        let source = rng.below(self.memory.len() as u64) as usize;
        let probe = distort(
            self.memory.stored()[source].components(),
            self.alphabet,
            self.config.noise_rate,
            &mut rng,
        )
        .expect("stored patterns are alphabet levels and the rate was validated");
        let recalled = self
            .memory
            .recall(&probe)
            .expect("probe has the memory width");
        TrialOutcome {
            correct: recalled.winner_index == source,
            comparisons: recalled.comparisons,
        }
    }

    /// Folds outcomes, given in trial order, into a result.
    pub fn summarize<I>(&self, outcomes: I) -> ExperimentResult
    where
        I: IntoIterator<Item = TrialOutcome>,
    {
        let (correct, comparisons) = outcomes.into_iter().fold((0u64, 0u64), |(c, k), o| {
            (c + u64::from(o.correct), k + o.comparisons as u64)
        });
        ExperimentResult {
            config: self.config.clone(),
            accuracy: correct as f64 / self.config.trials as f64,
            correct,
            comparisons,
        }
    }

    pub fn run(&self) -> ExperimentResult {
        self.summarize((0..self.config.trials).map(|t| self.trial(t)))
    }
}

/// Members of the `n`-ensemble selected by `variant`.
pub fn select_members(n: usize, variant: MemoryVariant) -> Result<Vec<PermutationPattern<usize>>> {
    let ensemble = generate_ensemble(BasePattern::new((0..n).collect())?)?;
    let chi = ensemble.chi();
    let members: Vec<_> = match variant {
        MemoryVariant::Full => ensemble.members().to_vec(),
        MemoryVariant::FixedOnly => ensemble.fixed_members().cloned().collect(),
        MemoryVariant::Reduced(k) if k > chi => return Err(Error::ReducedTooLarge { k, chi }),
        MemoryVariant::Reduced(k) => ensemble.fixed_members().take(k).cloned().collect(),
    };
    Ok(members)
}

/// Exact-match memory (tolerance 0) over the selected members.
pub fn build_memory(n: usize, variant: MemoryVariant) -> Result<PatternMemory> {
    let members = select_members(n, variant)?;
    PatternMemory::new(0.0)?.store(members.iter().map(PermutationPattern::encode))
}

pub fn run_experiment(config: ExperimentConfig) -> Result<ExperimentResult> {
    Ok(Experiment::prepare(config)?.run())
}

/// Seed used for point `index` of a sweep seeded with `seed`.
pub fn sweep_seed(seed: u64, index: usize) -> u64 {
    SplitMix64::stream(seed, index as u64).next_u64()
}

/// Rejects grids that are not ascending (or contain NaN).
pub fn check_sorted_grid(grid: &[f64]) -> Result<()> {
    let descending = |w: &[f64]| w[0].partial_cmp(&w[1]).is_none_or(|o| o.is_gt());
    if grid.windows(2).any(descending) {
        Err(Error::UnsortedGrid)
    } else {
        Ok(())
    }
}

/// One experiment per noise rate, in grid order, each with its own
/// [`sweep_seed`].
pub fn degradation_sweep(
    n: usize,
    trials: u64,
    seed: u64,
    variant: MemoryVariant,
    noise_grid: &[f64],
) -> Result<Vec<ExperimentResult>> {
    check_sorted_grid(noise_grid)?;
    noise_grid
        .iter()
        .enumerate()
        .map(|(i, &noise_rate)| {
            run_experiment(ExperimentConfig {
                n,
                trials,
                noise_rate,
                seed: sweep_seed(seed, i),
                variant,
            })
        })
        .collect()
}

/// Increases between consecutive values, as `(index of the later value,
/// size of the increase)`.
pub fn inversions(values: &[f64]) -> Vec<(usize, f64)> {
    values
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[1] > w[0])
        .map(|(i, w)| (i + 1, w[1] - w[0]))
        .collect()
}

/// Kendall's tau-a between `xs` and `ys` (tied pairs count as neither
/// concordant nor discordant).
pub fn kendall_tau(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len().min(ys.len());
    if n < 2 {
        return 0.0;
    }
    let mut score = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            let dx = xs[j] - xs[i];
            let dy = ys[j] - ys[i];
            let s = dx * dy;
            if s > 0.0 {
                score += 1;
            } else if s < 0.0 {
                score -= 1;
            }
        }
    }
    score as f64 / (n * (n - 1) / 2) as f64
}
