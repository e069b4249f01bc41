//! Exact counting of permutations with motionless (fixed) elements, the
//! permutation ensembles they live in, and a Hamming-metric associative
//! memory used to measure how well distorted ensemble members are recalled.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs; file formats, the command line and parallel
//! execution live in the companion `motionless` crate.
//!
//! * [`combinatorics`]: factorials, binomials, N_m (permutations of `m`
//!   elements with at least one fixed point), the share N_m / m! and its
//!   limit [`combinatorics::mu`] = 1 − 1/e, plus three independent
//!   set-union cardinality routes.
//! * [`ensemble`]: all `n!` permutations of a base pattern in lexicographic
//!   order, classified by their fixed positions.
//! * [`hamming`]: stimulus/observation vectors in `[0, 1]`, the Hamming
//!   distance with tolerance, and nearest-pattern recall.
//! * [`experiment`]: seeded distortion and recall trials over ensemble
//!   memories.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod combinatorics;
pub mod ensemble;
mod error;
pub mod experiment;
pub mod hamming;
pub mod perm;
pub mod rng;

pub use combinatorics::{ConvergenceRow, ExactCount, SetFamily};
pub use ensemble::{BasePattern, Ensemble, PermutationPattern};
pub use error::{Error, Result};
pub use experiment::{ExperimentConfig, ExperimentResult, MemoryVariant};
pub use hamming::{ObservationVector, PatternMemory, RecallResult, StimulusVector, TransformSpec};
pub use rng::SplitMix64;
