//! Cardinality of a union of finite sets, three ways.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{ExactCount, MAX_INCLUSION_EXCLUSION};
use crate::error::{Error, Result};

/// An ordered family `A_1, …, A_m` of finite sets of element ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    sets: Vec<BTreeSet<u64>>,
}

impl SetFamily {
    /// Builds a family from element lists; repeated ids within a list collapse.
    pub fn new<I, S>(sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = u64>,
    {
        let sets: Vec<BTreeSet<u64>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        if sets.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Ok(Self { sets })
    }

    pub fn sets(&self) -> &[BTreeSet<u64>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    fn check_size(&self) -> Result<()> {
        if self.len() > MAX_INCLUSION_EXCLUSION {
            Err(Error::TooLarge {
                m: self.len(),
                max: MAX_INCLUSION_EXCLUSION,
            })
        } else {
            Ok(())
        }
    }

    /// Each set as a bitmask over the compressed universe.
    fn bitsets(&self) -> Vec<Bits> {
        let universe: Vec<u64> = self
            .sets
            .iter()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let words = universe.len().div_ceil(64).max(1);
        self.sets
            .iter()
            .map(|set| {
                let mut bits = vec![0u64; words];
                for id in set {
                    let pos = universe.binary_search(id).expect("id is in the universe");
                    bits[pos / 64] |= 1 << (pos % 64);
                }
                bits
            })
            .collect()
    }
}

type Bits = Vec<u64>;

fn popcount(bits: &[u64]) -> u64 {
    bits.iter().map(|w| u64::from(w.count_ones())).sum()
}

fn intersect_into(out: &mut [u64], a: &[u64], b: &[u64]) {
    for ((o, x), y) in out.iter_mut().zip(a).zip(b) {
        *o = x & y;
    }
}

/// `|A_1 ∪ … ∪ A_m|` by materializing the union.
pub fn union_cardinality_direct(family: &SetFamily) -> ExactCount {
    let union: BTreeSet<u64> = family.sets.iter().flatten().copied().collect();
    ExactCount::from(union.len() as u64)
}

/// `|A_1 ∪ … ∪ A_m|` as the signed sum of all `2^m − 1` intersection
/// cardinalities, `+` for odd subset sizes and `−` for even ones.
///
/// Returns the cardinality and the number of terms evaluated.
pub fn union_cardinality_inclusion_exclusion(
    family: &SetFamily,
) -> Result<(ExactCount, ExactCount)> {
    family.check_size()?;
    let sets = family.bitsets();
    let m = sets.len();
    let words = sets[0].len();
    // scratch[d] holds the intersection of the d + 1 sets chosen so far.
    let mut scratch = vec![vec![0u64; words]; m];
    let mut walk = SubsetWalk {
        sets: &sets,
        sum: 0,
        terms: 0,
    };
    for (first, set) in sets.iter().enumerate() {
        scratch[0].copy_from_slice(set);
        walk.visit(&mut scratch, first, 0);
    }
    let sum = u64::try_from(walk.sum).expect("union cardinality is non-negative");
    Ok((ExactCount::from(sum), ExactCount::from(walk.terms)))
}

struct SubsetWalk<'a> {
    sets: &'a [Bits],
    sum: i128,
    terms: u64,
}

impl SubsetWalk<'_> {
    /// Accounts for the subset whose largest index is `last` and whose
    /// intersection sits in `scratch[depth]`, then extends it.
    fn visit(&mut self, scratch: &mut [Bits], last: usize, depth: usize) {
        let count = i128::from(popcount(&scratch[depth]));
        if depth.is_multiple_of(2) {
            self.sum += count;
        } else {
            self.sum -= count;
        }
        self.terms += 1;
        for next in last + 1..self.sets.len() {
            let (head, tail) = scratch.split_at_mut(depth + 1);
            intersect_into(&mut tail[0], &head[depth], &self.sets[next]);
            self.visit(scratch, next, depth + 1);
        }
    }
}

/// `|A_1 ∪ … ∪ A_m|` by splitting off the last set:
/// with `B = A_1 ∪ … ∪ A_{m−1}`, `|B ∪ A_m| = |B| + |A_m| − |B ∩ A_m|`,
/// where `B ∩ A_m` is the union of the family `{A_i ∩ A_m}`.
pub fn union_cardinality_recursive(family: &SetFamily) -> Result<ExactCount> {
    family.check_size()?;
    let sets = family.bitsets();
    Ok(ExactCount::from(recursive_union(&sets)))
}

fn recursive_union(sets: &[Bits]) -> u64 {
    let (last, rest) = sets.split_last().expect("family is non-empty");
    if rest.is_empty() {
        return popcount(last);
    }
    let overlaps: Vec<Bits> = rest
        .iter()
        .map(|s| s.iter().zip(last).map(|(a, b)| a & b).collect())
        .collect();
    recursive_union(rest) + popcount(last) - recursive_union(&overlaps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(sets: &[&[u64]]) -> SetFamily {
        SetFamily::new(sets.iter().map(|s| s.iter().copied())).unwrap()
    }

    #[test]
    fn two_overlapping_sets() {
        let f = family(&[&[1, 2], &[2, 3]]);
        assert_eq!(union_cardinality_direct(&f), 3);
        let (count, terms) = union_cardinality_inclusion_exclusion(&f).unwrap();
        assert_eq!((count, terms), (3u64.into(), 3u64.into()));
        assert_eq!(union_cardinality_recursive(&f).unwrap(), 3);
    }

    #[test]
    fn empty_member() {
        let f = family(&[&[]]);
        assert_eq!(union_cardinality_direct(&f), 0);
        assert_eq!(union_cardinality_inclusion_exclusion(&f).unwrap().0, 0);
        assert_eq!(union_cardinality_recursive(&f).unwrap(), 0);
    }

    #[test]
    fn three_sets() {
        let f = family(&[&[1, 2], &[3, 4], &[1, 4]]);
        assert_eq!(union_cardinality_direct(&f), 4);
        assert_eq!(union_cardinality_recursive(&f).unwrap(), 4);
        assert_eq!(union_cardinality_inclusion_exclusion(&f).unwrap().0, 4);
    }

    #[test]
    fn identical_sets() {
        let f = family(&[&[1], &[1], &[1]]);
        let (count, terms) = union_cardinality_inclusion_exclusion(&f).unwrap();
        assert_eq!(count, 1);
        assert_eq!(terms, 7);
    }

    #[test]
    fn single_base_case() {
        let f = family(&[&[1, 2, 3]]);
        assert_eq!(union_cardinality_recursive(&f).unwrap(), 3);
    }

    #[test]
    fn guards() {
        assert_eq!(
            SetFamily::new(Vec::<Vec<u64>>::new()),
            Err(Error::EmptyFamily)
        );
        let big = SetFamily::new((0..21u64).map(|i| vec![i])).unwrap();
        assert!(union_cardinality_inclusion_exclusion(&big).is_err());
        assert!(union_cardinality_recursive(&big).is_err());
        assert_eq!(union_cardinality_direct(&big), 21);
    }

    #[test]
    fn wide_universe_spans_several_words() {
        let f = SetFamily::new([
            (0..150u64).collect::<Vec<_>>(),
            (100..300u64).collect(),
            (1000..1010u64).collect(),
        ])
        .unwrap();
        assert_eq!(union_cardinality_direct(&f), 310);
        assert_eq!(union_cardinality_inclusion_exclusion(&f).unwrap().0, 310);
        assert_eq!(union_cardinality_recursive(&f).unwrap(), 310);
    }
}
