//! Stimulus and observation vectors, the Hamming metric and
//! nearest-pattern recall.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Level `k` of `n` equally spaced values in `[0, 1]`.
pub fn encode_level(k: usize, n: usize) -> f64 {
    if n <= 1 {
        0.0
    } else {
        k as f64 / (n - 1) as f64
    }
}

fn check_components(components: &[f64]) -> Result<()> {
    if components.is_empty() {
        return Err(Error::EmptyVector);
    }
    match components.iter().position(|c| !(0.0..=1.0).contains(c)) {
        Some(index) => Err(Error::ComponentOutOfRange {
            index,
            value: components[index],
        }),
        None => Ok(()),
    }
}

macro_rules! unit_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq)]
        pub struct $name(Vec<f64>);

        impl $name {
            /// Rejects empty vectors and components outside `[0, 1]` (NaN included).
            pub fn new(components: Vec<f64>) -> Result<Self> {
                check_components(&components)?;
                Ok(Self(components))
            }

            pub fn components(&self) -> &[f64] {
                &self.0
            }

            pub fn into_components(self) -> Vec<f64> {
                self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }
        }

        impl AsRef<[f64]> for $name {
            fn as_ref(&self) -> &[f64] {
                &self.0
            }
        }
    };
}

unit_vector!(
    /// Input vector `X`, components in `[0, 1]`.
    StimulusVector
);
unit_vector!(
    /// Output vector `Y`, components in `[0, 1]`.
    ObservationVector
);

fn check_tolerance(tolerance: f64) -> Result<()> {
    if tolerance >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tolerance))
    }
}

/// Number of positions where `|a_i − b_i| > tolerance`.
pub fn hamming_distance(a: &[f64], b: &[f64], tolerance: f64) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    check_tolerance(tolerance)?;
    Ok(distance_unchecked(a, b, tolerance))
}

#[inline]
fn distance_unchecked(a: &[f64], b: &[f64], tolerance: f64) -> usize {
    a.iter()
        .zip(b)
        .filter(|(x, y)| (*x - *y).abs() > tolerance)
        .count()
}

/// The mapping from stimulus to observation.
#[derive(Debug, Clone, PartialEq)]
pub enum TransformSpec {
    Identity,
    /// Output position `i` takes input component `perm[i]`.
    Permutation(Vec<usize>),
    /// 1 where the component is `>= theta`, else 0.
    Threshold(f64),
}

pub fn transform(x: &StimulusVector, spec: &TransformSpec) -> Result<ObservationVector> {
    let xs = x.components();
    let out = match spec {
        TransformSpec::Identity => xs.to_vec(),
        TransformSpec::Permutation(perm) => {
            if perm.len() != xs.len() {
                return Err(Error::LengthMismatch {
                    expected: xs.len(),
                    actual: perm.len(),
                });
            }
            let mut seen = alloc::vec![false; perm.len()];
            for &p in perm {
                if p >= perm.len() || seen[p] {
                    return Err(Error::NotAPermutation);
                }
                seen[p] = true;
            }
            perm.iter().map(|&p| xs[p]).collect()
        }
        &TransformSpec::Threshold(theta) => {
            if !(0.0..=1.0).contains(&theta) {
                return Err(Error::InvalidThreshold(theta));
            }
            xs.iter()
                .map(|&c| if c >= theta { 1.0 } else { 0.0 })
                .collect()
        }
    };
    ObservationVector::new(out)
}

/// Outcome of a recall: the first stored pattern at minimal distance and
/// every index sharing that distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecallResult {
    pub winner_index: usize,
    pub distance: usize,
    pub tie_indices: Vec<usize>,
    /// Stored patterns whose distance to the probe was evaluated.
    pub comparisons: usize,
}

/// Stored observation vectors of a common length, compared with a fixed
/// component tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternMemory {
    stored: Vec<ObservationVector>,
    tolerance: f64,
}

impl PatternMemory {
    /// An empty memory; `tolerance` must lie in `[0, 1)`.
    pub fn new(tolerance: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&tolerance) {
            return Err(Error::InvalidTolerance(tolerance));
        }
        Ok(Self {
            stored: Vec::new(),
            tolerance,
        })
    }

    /// Appends `patterns` in order. Duplicates are kept.
    pub fn store<I>(mut self, patterns: I) -> Result<Self>
    where
        I: IntoIterator<Item = ObservationVector>,
    {
        for p in patterns {
            if let Some(width) = self.width() {
                if p.len() != width {
                    return Err(Error::LengthMismatch {
                        expected: width,
                        actual: p.len(),
                    });
                }
            }
            self.stored.push(p);
        }
        Ok(self)
    }

    pub fn stored(&self) -> &[ObservationVector] {
        &self.stored
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Common length of the stored vectors, `None` while empty.
    pub fn width(&self) -> Option<usize> {
        self.stored.first().map(ObservationVector::len)
    }

    pub fn len(&self) -> usize {
        self.stored.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stored.is_empty()
    }

    /// Exhaustive nearest-pattern search; ties go to the lowest index.
    pub fn recall(&self, probe: &[f64]) -> Result<RecallResult> {
        let width = self.width().ok_or(Error::EmptyMemory)?;
        if probe.len() != width {
            return Err(Error::LengthMismatch {
                expected: width,
                actual: probe.len(),
            });
        }
        let mut best = usize::MAX;
        let mut ties = Vec::new();
        for (i, s) in self.stored.iter().enumerate() {
            let d = distance_unchecked(s.components(), probe, self.tolerance);
            if d < best {
                best = d;
                ties.clear();
            }
            if d == best {
                ties.push(i);
            }
        }
        Ok(RecallResult {
            winner_index: ties[0],
            distance: best,
            tie_indices: ties,
            comparisons: self.stored.len(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn obs(v: &[f64]) -> ObservationVector {
        ObservationVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn distance_examples() {
        let a = [0.3, 0.9, 0.0];
        assert_eq!(hamming_distance(&a, &a, 0.0).unwrap(), 0);
        assert_eq!(hamming_distance(&a, &a, 0.5).unwrap(), 0);
        assert_eq!(
            hamming_distance(&[0.0, 1.0, 1.0, 0.0], &[1.0, 1.0, 0.0, 0.0], 0.0).unwrap(),
            2
        );
        assert_eq!(
            hamming_distance(&[0.0, 0.5, 1.0], &[0.05, 0.7, 1.0], 0.1).unwrap(),
            1
        );
        assert!(matches!(
            hamming_distance(&[0.0], &[0.0, 1.0], 0.0),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(hamming_distance(&[0.0], &[0.0], -1.0).is_err());
    }

    #[test]
    fn vectors_validate_range() {
        assert!(StimulusVector::new(vec![0.0, 1.0]).is_ok());
        assert_eq!(
            StimulusVector::new(vec![0.2, 1.5]),
            Err(Error::ComponentOutOfRange {
                index: 1,
                value: 1.5
            })
        );
        assert!(ObservationVector::new(vec![f64::NAN]).is_err());
        assert_eq!(ObservationVector::new(vec![]), Err(Error::EmptyVector));
    }

    #[test]
    fn transforms() {
        let x = StimulusVector::new(vec![0.2, 0.8]).unwrap();
        assert_eq!(
            transform(&x, &TransformSpec::Identity)
                .unwrap()
                .components(),
            &[0.2, 0.8]
        );
        let abc = StimulusVector::new(vec![0.1, 0.2, 0.3]).unwrap();
        assert_eq!(
            transform(&abc, &TransformSpec::Permutation(vec![2, 0, 1]))
                .unwrap()
                .components(),
            &[0.3, 0.1, 0.2]
        );
        let t = StimulusVector::new(vec![0.2, 0.5, 0.9]).unwrap();
        assert_eq!(
            transform(&t, &TransformSpec::Threshold(0.5))
                .unwrap()
                .components(),
            &[0.0, 1.0, 1.0]
        );
        assert!(transform(&abc, &TransformSpec::Permutation(vec![0, 1])).is_err());
        assert_eq!(
            transform(&abc, &TransformSpec::Permutation(vec![0, 0, 1])),
            Err(Error::NotAPermutation)
        );
        assert_eq!(
            transform(&t, &TransformSpec::Threshold(1.2)),
            Err(Error::InvalidThreshold(1.2))
        );
    }

    #[test]
    fn store_and_recall() {
        let mem = PatternMemory::new(0.0)
            .unwrap()
            .store([obs(&[0.0, 0.0, 0.0]), obs(&[1.0, 1.0, 1.0])])
            .unwrap();
        assert_eq!(mem.len(), 2);
        let r = mem.recall(&[0.0, 0.0, 1.0]).unwrap();
        assert_eq!((r.winner_index, r.distance, r.tie_indices), (0, 1, vec![0]));
        let r = mem.recall(&[1.0, 1.0, 1.0]).unwrap();
        assert_eq!((r.winner_index, r.distance), (1, 0));
        assert_eq!(
            mem.recall(&[0.0]),
            Err(Error::LengthMismatch {
                expected: 3,
                actual: 1
            })
        );
    }

    #[test]
    fn ties_are_reported() {
        let mem = PatternMemory::new(0.0)
            .unwrap()
            .store([obs(&[0.0, 0.0]), obs(&[1.0, 1.0])])
            .unwrap();
        let r = mem.recall(&[0.0, 1.0]).unwrap();
        assert_eq!(r.distance, 1);
        assert_eq!(r.tie_indices, vec![0, 1]);
        assert_eq!(r.winner_index, 0);
        assert_eq!(r.comparisons, 2);
    }

    #[test]
    fn empty_memory_and_bad_input() {
        let mem = PatternMemory::new(0.0).unwrap().store([]).unwrap();
        assert!(mem.is_empty());
        assert_eq!(mem.recall(&[0.0]), Err(Error::EmptyMemory));
        let mixed = PatternMemory::new(0.0)
            .unwrap()
            .store([obs(&[0.0]), obs(&[0.0, 1.0])]);
        assert!(matches!(mixed, Err(Error::LengthMismatch { .. })));
        assert!(PatternMemory::new(1.0).is_err());
        assert!(PatternMemory::new(-0.1).is_err());
    }

    #[test]
    fn levels() {
        assert_eq!(encode_level(0, 1), 0.0);
        assert_eq!(encode_level(1, 3), 0.5);
        assert_eq!(encode_level(3, 4), 1.0);
    }
}
