//! Permutation ensembles of a base pattern and their motionless elements.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hamming::{encode_level, ObservationVector};
use crate::perm::Permutations;

/// Largest base pattern for which the full ensemble is generated.
pub const MAX_ENSEMBLE: usize = 8;

/// An ordered sequence of pairwise distinct labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePattern<T> {
    elements: Vec<T>,
}

impl<T: PartialEq> BasePattern<T> {
    pub fn new(elements: Vec<T>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::ZeroSize);
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(Error::DuplicateLabel(i));
            }
        }
        Ok(Self { elements })
    }
}

impl BasePattern<String> {
    /// `a1, a2, …, an`.
    pub fn default_labels(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("a{i}")).collect())
    }
}

impl<T> BasePattern<T> {
    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// A rearrangement of a base pattern together with the positions it leaves
/// in place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationPattern<T> {
    elements: Vec<T>,
    order: Vec<usize>,
    fixed: Vec<usize>,
}

impl<T: Clone + PartialEq> PermutationPattern<T> {
    /// The pattern whose position `i` holds `base[order[i]]`.
    pub fn from_order(base: &BasePattern<T>, order: Vec<usize>) -> Result<Self> {
        let n = base.len();
        if order.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: order.len(),
            });
        }
        let mut seen = [false; 64];
        if n > seen.len() {
            return Err(Error::TooLarge {
                m: n,
                max: seen.len(),
            });
        }
        for &idx in &order {
            if idx >= n || seen[idx] {
                return Err(Error::NotAPermutation);
            }
            seen[idx] = true;
        }
        let elements = order.iter().map(|&i| base.elements[i].clone()).collect();
        let fixed = order
            .iter()
            .enumerate()
            .filter(|&(i, &o)| i == o)
            .map(|(i, _)| i)
            .collect();
        Ok(Self {
            elements,
            order,
            fixed,
        })
    }

    /// Locates each label of `elements` in `base`.
    pub fn from_elements(base: &BasePattern<T>, elements: Vec<T>) -> Result<Self> {
        let order = elements
            .iter()
            .map(|e| {
                base.elements
                    .iter()
                    .position(|b| b == e)
                    .ok_or(Error::NotAPermutation)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_order(base, order)
    }
}

impl<T> PermutationPattern<T> {
    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    /// Base-pattern index of the label at each position.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Positions holding the same label as the base, ascending.
    pub fn fixed(&self) -> &[usize] {
        &self.fixed
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn has_fixed(&self) -> bool {
        !self.fixed.is_empty()
    }

    /// Encodes the labels as equally spaced levels `k / (n − 1)` of their
    /// base index, so the pattern can be stored in a pattern memory.
    pub fn encode(&self) -> ObservationVector {
        let n = self.order.len();
        ObservationVector::new(self.order.iter().map(|&k| encode_level(k, n)).collect())
            .expect("encoded levels lie in [0, 1]")
    }
}

/// Positions where `member` and `base` carry the same label.
pub fn fixed_positions<T: PartialEq>(
    member: &PermutationPattern<T>,
    base: &BasePattern<T>,
) -> Result<Vec<usize>> {
    if member.len() != base.len() {
        return Err(Error::LengthMismatch {
            expected: base.len(),
            actual: member.len(),
        });
    }
    Ok(member
        .elements
        .iter()
        .zip(&base.elements)
        .enumerate()
        .filter(|(_, (m, b))| m == b)
        .map(|(i, _)| i)
        .collect())
}

/// Number of positions where `a` and `b` agree.
pub fn pairwise_agreement<T: PartialEq>(
    a: &PermutationPattern<T>,
    b: &PermutationPattern<T>,
) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(a.elements
        .iter()
        .zip(&b.elements)
        .filter(|(x, y)| x == y)
        .count())
}

/// Every permutation of a base pattern in lexicographic order of base
/// indices, with χ the number of members keeping at least one element in
/// place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ensemble<T> {
    base: BasePattern<T>,
    members: Vec<PermutationPattern<T>>,
    chi: usize,
}

impl<T> Ensemble<T> {
    pub fn base(&self) -> &BasePattern<T> {
        &self.base
    }

    pub fn members(&self) -> &[PermutationPattern<T>] {
        &self.members
    }

    pub fn chi(&self) -> usize {
        self.chi
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Splits the members into those with a fixed position and the
    /// derangements, each in ensemble order.
    pub fn classify(&self) -> (Vec<&PermutationPattern<T>>, Vec<&PermutationPattern<T>>) {
        self.members.iter().partition(|m| m.has_fixed())
    }

    /// Members with at least one fixed position, in ensemble order.
    pub fn fixed_members(&self) -> impl Iterator<Item = &PermutationPattern<T>> {
        self.members.iter().filter(|m| m.has_fixed())
    }
}

/// Builds the full ensemble of `base`.
pub fn generate_ensemble<T: Clone + PartialEq>(base: BasePattern<T>) -> Result<Ensemble<T>> {
    let n = base.len();
    if n > MAX_ENSEMBLE {
        return Err(Error::TooLarge {
            m: n,
            max: MAX_ENSEMBLE,
        });
    }
    let members = Permutations::new(n)
        .map(|order| PermutationPattern::from_order(&base, order))
        .collect::<Result<Vec<_>>>()?;
    let chi = members.iter().filter(|m| m.has_fixed()).count();
    Ok(Ensemble { base, members, chi })
}
