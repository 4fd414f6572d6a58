//! Bit-packed subsets of the ground set `[n] = {1, ..., n}`.
//!
//! Neurons are numbered from 1 everywhere in the public API, matching the
//! notation used for codewords like `12` (the set `{1, 2}`). Internally
//! neuron `i` lives in bit `i - 1` of a `u128`, so the ambient width is
//! capped at [`MAX_NEURONS`]. The cap leaves room for the doubled virtual
//! column space that covering maps need at width up to 64.

use std::fmt;

/// Largest supported ambient set size.
pub const MAX_NEURONS: usize = 128;

/// A subset of `[n]`, packed into a single word.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mask(pub u128);

impl Mask {
    pub const EMPTY: Mask = Mask(0);

    /// The full set `[n]`.
    pub fn full(n: usize) -> Mask {
        assert!(n <= MAX_NEURONS, "width {n} exceeds {MAX_NEURONS}");
        if n == MAX_NEURONS {
            Mask(u128::MAX)
        } else {
            Mask((1u128 << n) - 1)
        }
    }

    /// The singleton `{i}` (1-based).
    pub fn singleton(i: usize) -> Mask {
        assert!((1..=MAX_NEURONS).contains(&i), "index {i} out of range");
        Mask(1u128 << (i - 1))
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Mask {
        let mut m = Mask::EMPTY;
        for i in indices {
            m = m.insert(i);
        }
        m
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && i <= MAX_NEURONS && (self.0 >> (i - 1)) & 1 == 1
    }

    #[must_use]
    pub fn insert(self, i: usize) -> Mask {
        Mask(self.0 | Mask::singleton(i).0)
    }

    #[must_use]
    pub fn remove(self, i: usize) -> Mask {
        Mask(self.0 & !Mask::singleton(i).0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Cardinality.
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: Mask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Mask) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn intersects(self, other: Mask) -> bool {
        self.0 & other.0 != 0
    }

    #[must_use]
    pub fn union(self, other: Mask) -> Mask {
        Mask(self.0 | other.0)
    }

    #[must_use]
    pub fn inter(self, other: Mask) -> Mask {
        Mask(self.0 & other.0)
    }

    #[must_use]
    pub fn minus(self, other: Mask) -> Mask {
        Mask(self.0 & !other.0)
    }

    /// Complement within `[n]`.
    #[must_use]
    pub fn complement(self, n: usize) -> Mask {
        Mask(!self.0 & Mask::full(n).0)
    }

    /// Members in ascending order, 1-based.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize + 1;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    pub fn max_index(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(128 - self.0.leading_zeros() as usize)
        }
    }

    /// Deletes coordinate `i` and shifts every higher coordinate down by one,
    /// relabeling a subset of `[n]` into a subset of `[n - 1]`.
    #[must_use]
    pub fn delete_and_pack(self, i: usize) -> Mask {
        assert!((1..=MAX_NEURONS).contains(&i));
        let p = i - 1;
        let low = self.0 & ((1u128 << p) - 1);
        let high = if p + 1 >= 128 {
            0
        } else {
            (self.0 >> (p + 1)) << p
        };
        Mask(low | high)
    }

    /// Compact notation: `∅` for the empty set, concatenated digits like `123`
    /// while every member is a single digit, and `{1,2,10}` otherwise.
    pub fn compact(self) -> String {
        if self.is_empty() {
            return "∅".to_string();
        }
        if self.max_index().unwrap() <= 9 {
            self.iter().map(|i| i.to_string()).collect()
        } else {
            let inner: Vec<String> = self.iter().map(|i| i.to_string()).collect();
            format!("{{{}}}", inner.join(","))
        }
    }
}

impl fmt::Display for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.compact())
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.compact())
    }
}

/// All subsets of `[n]` in ascending packed order. Only callable for widths
/// small enough to enumerate.
pub fn all_masks(n: usize) -> impl Iterator<Item = Mask> {
    assert!(n <= 32, "refusing to enumerate 2^{n} masks");
    (0..(1u128 << n)).map(Mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_singleton() {
        assert_eq!(Mask::full(0), Mask::EMPTY);
        assert_eq!(Mask::full(3).0, 0b111);
        assert_eq!(Mask::full(128).0, u128::MAX);
        assert_eq!(Mask::singleton(1).0, 1);
        assert_eq!(Mask::singleton(128).0, 1 << 127);
    }

    #[test]
    fn subset_and_lattice_ops() {
        let a = Mask::from_indices([1, 2]);
        let b = Mask::from_indices([2, 3]);
        assert!(a.inter(b) == Mask::singleton(2));
        assert!(a.union(b) == Mask::from_indices([1, 2, 3]));
        assert!(a.minus(b) == Mask::singleton(1));
        assert!(Mask::EMPTY.is_subset(a));
        assert!(!a.is_subset(b));
        assert!(a.inter(b).is_proper_subset(a));
    }

    #[test]
    fn iter_ascending() {
        let m = Mask::from_indices([5, 1, 9]);
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![1, 5, 9]);
        assert_eq!(m.max_index(), Some(9));
        assert_eq!(Mask::EMPTY.max_index(), None);
    }

    #[test]
    fn delete_and_pack_shifts_down() {
        // {1,3,4} with coordinate 3 deleted becomes {1,3}.
        let m = Mask::from_indices([1, 3, 4]);
        assert_eq!(m.delete_and_pack(3), Mask::from_indices([1, 3]));
        // deleting an absent coordinate still shifts the tail
        assert_eq!(m.delete_and_pack(2), Mask::from_indices([1, 2, 3]));
        let top = Mask::singleton(128);
        assert_eq!(top.delete_and_pack(128), Mask::EMPTY);
        assert_eq!(top.delete_and_pack(1), Mask::singleton(127));
    }

    #[test]
    fn compact_notation() {
        assert_eq!(Mask::EMPTY.compact(), "∅");
        assert_eq!(Mask::from_indices([1, 2]).compact(), "12");
        assert_eq!(Mask::from_indices([2, 10]).compact(), "{2,10}");
    }
}
