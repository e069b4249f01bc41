//! Lexicographic enumeration of index permutations.

use alloc::vec::Vec;

/// Rearranges `items` into the next permutation in lexicographic order.
///
/// Returns `false` (leaving `items` sorted ascending) when `items` was the
/// last permutation.
pub fn next_permutation<T: Ord>(items: &mut [T]) -> bool {
    if items.len() < 2 {
        return false;
    }
    let mut pivot = items.len() - 1;
    while pivot > 0 && items[pivot - 1] >= items[pivot] {
        pivot -= 1;
    }
    if pivot == 0 {
        items.reverse();
        return false;
    }
    let mut swap = items.len() - 1;
    while items[swap] <= items[pivot - 1] {
        swap -= 1;
    }
    items.swap(pivot - 1, swap);
    items[pivot..].reverse();
    true
}

/// Iterator over every permutation of `0..n`, starting at the identity.
#[derive(Debug, Clone)]
pub struct Permutations {
    current: Vec<usize>,
    done: bool,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        Self {
            current: (0..n).collect(),
            done: false,
        }
    }
}

impl Iterator for Permutations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        self.done = !next_permutation(&mut self.current);
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn three_elements_in_lexicographic_order() {
        let all: Vec<_> = Permutations::new(3).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0],
            ]
        );
    }

    #[test]
    fn empty_and_singleton() {
        assert_eq!(Permutations::new(0).count(), 1);
        assert_eq!(Permutations::new(1).collect::<Vec<_>>(), vec![vec![0]]);
    }

    #[test]
    fn counts_match_factorial() {
        for (n, f) in [(4usize, 24usize), (5, 120), (6, 720)] {
            assert_eq!(Permutations::new(n).count(), f);
        }
    }

    #[test]
    fn wraps_to_sorted() {
        let mut v = [3, 2, 1];
        assert!(!next_permutation(&mut v));
        assert_eq!(v, [1, 2, 3]);
    }
}
