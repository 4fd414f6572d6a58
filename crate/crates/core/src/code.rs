//! Combinatorial codes and their trunk structure.
//!
//! A code is a finite set of codewords, each a subset of `[n]`. The trunk of
//! a subset `tau` is the set of codewords containing `tau`; the root of a
//! family of sets is its intersection, with the convention that the empty
//! family has root `[n]`. Roots of trunks drive everything else here: the
//! redundancy test, the reduction pass, the free/rooted split of neurons,
//! and the trunk count `t`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;

use crate::bits::{Mask, MAX_NEURONS};
use crate::error::{Error, Result};
use crate::matrix::BitMatrix;

/// A set of codewords over the ambient set `[n]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Code {
    n: usize,
    words: BTreeSet<Mask>,
}

/// Classification of a single neuron within a code.
///
/// A neuron is trivial when no codeword contains it, and redundant when its
/// trunk equals the trunk of some set avoiding it; the witness returned is
/// the root-derived candidate, which decides redundancy on its own.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NeuronStatus {
    Trivial,
    Redundant(Mask),
    Essential,
}

/// One neuron deletion performed by [`Code::reduce`], in the 1-based frame
/// of the code at the moment of deletion.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ReduceStep {
    pub index: usize,
    pub was_trivial: bool,
}

/// Result of reducing a code: the reduced code, the column-selection
/// projection, the surviving original column indices, and a replayable log
/// of the deletions.
#[derive(Clone)]
pub struct Reduction {
    pub code: Code,
    pub projection: BitMatrix,
    pub kept: Vec<usize>,
    pub steps: Vec<ReduceStep>,
}

impl Reduction {
    /// Image of one original-frame word under the reduction morphism:
    /// restrict to the kept columns and relabel them to `1..=k`.
    pub fn map_word(&self, w: Mask) -> Mask {
        let mut out = Mask::EMPTY;
        for (new_j, &old_j) in self.kept.iter().enumerate() {
            if w.contains(old_j) {
                out = out.insert(new_j + 1);
            }
        }
        out
    }
}

/// Intersection of a family of subsets of `[n]`; the empty family meets to
/// the whole ambient set.
pub fn family_root<'a, I: IntoIterator<Item = &'a Mask>>(members: I, n: usize) -> Mask {
    let mut it = members.into_iter();
    match it.next() {
        None => Mask::full(n),
        Some(first) => it.fold(*first, |acc, m| acc.inter(*m)),
    }
}

impl Code {
    pub fn new<I: IntoIterator<Item = Mask>>(n: usize, words: I) -> Result<Code> {
        if n > MAX_NEURONS {
            return Err(Error::domain(format!(
                "width {n} exceeds the supported maximum of {MAX_NEURONS} neurons"
            )));
        }
        let ambient = Mask::full(n);
        let mut set = BTreeSet::new();
        for w in words {
            if !w.is_subset(ambient) {
                return Err(Error::domain(format!(
                    "codeword {w} has members beyond neuron {n}"
                )));
            }
            set.insert(w);
        }
        Ok(Code { n, words: set })
    }

    pub fn empty(n: usize) -> Code {
        Code {
            n,
            words: BTreeSet::new(),
        }
    }

    /// All of `2^[n]`.
    pub fn cube(n: usize) -> Code {
        assert!(n <= 20, "refusing to materialize 2^{n} words");
        Code {
            n,
            words: crate::bits::all_masks(n).collect(),
        }
    }

    /// The code presented by a matrix: rows as codewords, duplicates merged.
    pub fn from_matrix(m: &BitMatrix) -> Code {
        Code {
            n: m.cols(),
            words: m.row_slice().iter().copied().collect(),
        }
    }

    /// The matrix presenting this code, rows in ascending packed order.
    pub fn to_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(self.n, self.words.iter().copied().collect())
            .expect("codewords fit the width by construction")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: Mask) -> bool {
        self.words.contains(&w)
    }

    pub fn words(&self) -> impl Iterator<Item = Mask> + '_ {
        self.words.iter().copied()
    }

    pub fn word_set(&self) -> &BTreeSet<Mask> {
        &self.words
    }

    /// The trunk of `tau`: every codeword containing `tau`. Indices of `tau`
    /// beyond `n` are allowed and force the trunk empty.
    pub fn trunk(&self, tau: Mask) -> BTreeSet<Mask> {
        self.words
            .iter()
            .copied()
            .filter(|w| tau.is_subset(*w))
            .collect()
    }

    /// The root of the trunk of `sigma`: the intersection of all codewords
    /// containing `sigma`, or `[n]` when none does.
    pub fn relative_root(&self, sigma: Mask) -> Mask {
        let mut acc: Option<Mask> = None;
        for w in &self.words {
            if sigma.is_subset(*w) {
                acc = Some(match acc {
                    None => *w,
                    Some(a) => a.inter(*w),
                });
            }
        }
        acc.unwrap_or_else(|| Mask::full(self.n))
    }

    fn check_neuron(&self, i: usize) -> Result<()> {
        if i >= 1 && i <= self.n {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "neuron {i} out of range for a code on {} neurons",
                self.n
            )))
        }
    }

    /// Classifies neuron `i` as trivial, redundant (with the witness set it
    /// is redundant to), or essential. Redundancy needs only one comparison:
    /// `i` is redundant precisely when its trunk equals the trunk of
    /// `relative_root({i}) \ {i}`.
    pub fn neuron_status(&self, i: usize) -> Result<NeuronStatus> {
        self.check_neuron(i)?;
        let si = Mask::singleton(i);
        let ti = self.trunk(si);
        if ti.is_empty() {
            return Ok(NeuronStatus::Trivial);
        }
        let witness = self.relative_root(si).minus(si);
        if self.trunk(witness) == ti {
            Ok(NeuronStatus::Redundant(witness))
        } else {
            Ok(NeuronStatus::Essential)
        }
    }

    /// A reduced code has no trivial and no redundant neurons.
    pub fn is_reduced(&self) -> bool {
        (1..=self.n).all(|i| matches!(self.neuron_status(i), Ok(NeuronStatus::Essential)))
    }

    /// A nontrivial neuron is free when the root of its trunk is not itself
    /// a codeword, and rooted otherwise. Asking about a trivial neuron is a
    /// contract violation.
    pub fn is_free(&self, i: usize) -> Result<bool> {
        self.check_neuron(i)?;
        let root = self.relative_root(Mask::singleton(i));
        if root == Mask::full(self.n) && self.trunk(Mask::singleton(i)).is_empty() {
            return Err(Error::domain(format!(
                "neuron {i} is trivial, freeness is undefined"
            )));
        }
        Ok(!self.contains(root))
    }

    /// Deletes column `i`, relabeling the higher columns down by one.
    pub fn delete_neuron(&self, i: usize) -> Result<Code> {
        self.check_neuron(i)?;
        Ok(Code {
            n: self.n - 1,
            words: self.words.iter().map(|w| w.delete_and_pack(i)).collect(),
        })
    }

    /// Deletes every trivial neuron, then repeatedly deletes the
    /// lowest-index redundant neuron until none remains. Records the
    /// deletions so morphism representations can be replayed through the
    /// same sequence.
    pub fn reduce(&self) -> Reduction {
        let mut cur = self.clone();
        let mut kept: Vec<usize> = (1..=self.n).collect();
        let mut steps = Vec::new();
        // trivial first; deleting a column never changes the others
        loop {
            let trivial = (1..=cur.n)
                .find(|&i| cur.trunk(Mask::singleton(i)).is_empty());
            match trivial {
                Some(i) => {
                    cur = cur.delete_neuron(i).expect("index in range");
                    kept.remove(i - 1);
                    steps.push(ReduceStep {
                        index: i,
                        was_trivial: true,
                    });
                }
                None => break,
            }
        }
        loop {
            let redundant = (1..=cur.n).find(|&i| {
                matches!(
                    cur.neuron_status(i).expect("index in range"),
                    NeuronStatus::Redundant(_)
                )
            });
            match redundant {
                Some(i) => {
                    cur = cur.delete_neuron(i).expect("index in range");
                    kept.remove(i - 1);
                    steps.push(ReduceStep {
                        index: i,
                        was_trivial: false,
                    });
                }
                None => break,
            }
        }
        debug_assert!(cur.is_reduced());
        let mut projection = BitMatrix::zeros(self.n, kept.len());
        for (new_j, &old_j) in kept.iter().enumerate() {
            projection.set(old_j - 1, new_j, true);
        }
        Reduction {
            code: cur,
            projection,
            kept,
            steps,
        }
    }

    /// Number of neurons surviving reduction, an isomorphism invariant.
    pub fn reduced_size(&self) -> usize {
        self.reduce().code.n
    }

    /// Every nonempty trunk of the code: the closure of the whole code and
    /// the simple trunks under pairwise intersection, empty sets discarded.
    pub fn enumerate_trunks(&self) -> BTreeSet<BTreeSet<Mask>> {
        let mut family: BTreeSet<BTreeSet<Mask>> = BTreeSet::new();
        if !self.words.is_empty() {
            family.insert(self.words.clone());
        }
        for i in 1..=self.n {
            let t = self.trunk(Mask::singleton(i));
            if !t.is_empty() {
                family.insert(t);
            }
        }
        let mut frontier: Vec<BTreeSet<Mask>> = family.iter().cloned().collect();
        while let Some(t) = frontier.pop() {
            let mut fresh = Vec::new();
            for s in &family {
                let meet: BTreeSet<Mask> = s.intersection(&t).copied().collect();
                if !meet.is_empty() && !family.contains(&meet) {
                    fresh.push(meet);
                }
            }
            for m in fresh {
                if family.insert(m.clone()) {
                    frontier.push(m);
                }
            }
        }
        family
    }

    /// The trunk count `t`.
    pub fn trunk_count(&self) -> usize {
        self.enumerate_trunks().len()
    }

    /// A canonical matrix for the isomorphism class of this code: reduce,
    /// then take the smallest sorted-row matrix over all column
    /// permutations. Only permutations that order columns by ascending
    /// column sum can attain the minimum of this class-invariant candidate
    /// set, so ties are the only branching.
    pub fn canonical_label(&self) -> BitMatrix {
        let reduced = self.reduce().code;
        let n = reduced.n;
        let words: Vec<Mask> = reduced.words.iter().copied().collect();
        if n == 0 {
            return BitMatrix::from_rows(0, vec![Mask::EMPTY; words.len()])
                .expect("zero-width rows");
        }
        let col_sum =
            |j: usize| -> usize { words.iter().filter(|w| w.contains(j)).count() };
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (_, group) in &(1..=n)
            .sorted_by_key(|&j| (col_sum(j), j))
            .chunk_by(|&j| col_sum(j))
        {
            groups.push(group.collect());
        }
        let mut best: Option<Vec<u128>> = None;
        let mut perm: Vec<usize> = Vec::with_capacity(n);
        fn descend(
            groups: &[Vec<usize>],
            depth: usize,
            perm: &mut Vec<usize>,
            words: &[Mask],
            n: usize,
            best: &mut Option<Vec<u128>>,
        ) {
            if depth == groups.len() {
                let mut key: Vec<u128> = words
                    .iter()
                    .map(|w| {
                        let mut v = 0u128;
                        for (pos, &old_j) in perm.iter().enumerate() {
                            if w.contains(old_j) {
                                v |= 1u128 << (n - 1 - pos);
                            }
                        }
                        v
                    })
                    .collect();
                key.sort_unstable();
                if best.as_ref().map_or(true, |b| key < *b) {
                    *best = Some(key);
                }
                return;
            }
            let k = groups[depth].len();
            for order in groups[depth].iter().copied().permutations(k) {
                perm.extend(&order);
                descend(groups, depth + 1, perm, words, n, best);
                perm.truncate(perm.len() - k);
            }
        }
        descend(&groups, 0, &mut perm, &words, n, &mut best);
        let key = best.expect("at least the identity permutation was tried");
        let rows: Vec<Mask> = key
            .iter()
            .map(|v| {
                let mut w = Mask::EMPTY;
                for pos in 0..n {
                    if (v >> (n - 1 - pos)) & 1 == 1 {
                        w = w.insert(pos + 1);
                    }
                }
                w
            })
            .collect();
        BitMatrix::from_rows(n, rows).expect("rows fit the width")
    }

    /// Two codes are isomorphic exactly when their canonical labels agree.
    pub fn is_isomorphic(&self, other: &Code) -> bool {
        self.canonical_label() == other.canonical_label()
    }

    /// Stable one-line identity for the isomorphism class, used as a poset
    /// node key: `"m x n : rows"` of the canonical label.
    pub fn label_string(&self) -> String {
        let label = self.canonical_label();
        let rows: Vec<String> = label
            .row_slice()
            .iter()
            .map(|r| crate::matrix::row_string(*r, label.cols()))
            .collect();
        format!("{}x{}:{}", label.rows(), label.cols(), rows.join("|"))
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = self.words.iter().map(|w| w.compact()).join(", ");
        write!(f, "{{{inner}}}")
    }
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Code(n={}, {})", self.n, self)
    }
}

/// Convenience constructor used throughout the tests: build a code over `n`
/// from explicit index lists, e.g. `code_on(4, &[&[], &[1,2], &[2,3]])`.
pub fn code_on(n: usize, words: &[&[usize]]) -> Code {
    Code::new(
        n,
        words.iter().map(|ix| Mask::from_indices(ix.iter().copied())),
    )
    .expect("words fit the stated width")
}

/// Brute-force redundancy check: scans every subset of `[n]` avoiding `i`
/// for one with the same trunk as `i`. Usable only at small width; this is
/// the oracle the single root-based comparison is checked against.
pub fn redundant_by_exhaustion(code: &Code, i: usize) -> Option<Mask> {
    let n = code.n();
    assert!(n <= 20);
    let ti = code.trunk(Mask::singleton(i));
    crate::bits::all_masks(n)
        .filter(|s| !s.contains(i))
        .find(|&s| code.trunk(s) == ti)
}

/// All isomorphism classes of codes that are reduced and use exactly `n`
/// neurons, each given by its canonical representative, in label order.
pub fn enumerate_reduced_codes(n: usize) -> Result<Vec<Code>> {
    if n > 4 {
        return Err(Error::resource(format!(
            "enumerating reduced codes over {n} neurons means scanning 2^{} subsets",
            1usize << n
        )));
    }
    let words: Vec<Mask> = crate::bits::all_masks(n).collect();
    let mut seen: BTreeMap<String, Code> = BTreeMap::new();
    for chosen in 0u32..(1u32 << words.len()) {
        let code = Code {
            n,
            words: words
                .iter()
                .enumerate()
                .filter(|(k, _)| (chosen >> k) & 1 == 1)
                .map(|(_, w)| *w)
                .collect(),
        };
        if !code.is_reduced() {
            continue;
        }
        let label = code.label_string();
        seen.entry(label).or_insert_with(|| {
            Code::from_matrix(&code.canonical_label())
        });
    }
    Ok(seen.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The running seven-word example over four neurons.
    fn example() -> Code {
        code_on(4, &[&[], &[1, 2], &[2, 3], &[3, 4], &[1, 2, 3], &[2, 3, 4], &[1, 2, 3, 4]])
    }

    #[test]
    fn trunk_of_a_singleton() {
        let c = example();
        let t = c.trunk(Mask::singleton(2));
        let expect: BTreeSet<Mask> = [
            Mask::from_indices([1, 2]),
            Mask::from_indices([2, 3]),
            Mask::from_indices([1, 2, 3]),
            Mask::from_indices([2, 3, 4]),
            Mask::from_indices([1, 2, 3, 4]),
        ]
        .into_iter()
        .collect();
        assert_eq!(t, expect);
        // indices beyond the width force an empty trunk
        assert!(c.trunk(Mask::singleton(5)).is_empty());
        // the empty set trunks to the whole code
        assert_eq!(c.trunk(Mask::EMPTY).len(), 7);
    }

    #[test]
    fn roots_of_the_example() {
        let c = example();
        assert_eq!(c.relative_root(Mask::singleton(1)), Mask::from_indices([1, 2]));
        assert_eq!(c.relative_root(Mask::singleton(2)), Mask::singleton(2));
        assert_eq!(c.relative_root(Mask::singleton(4)), Mask::from_indices([3, 4]));
        // empty trunk: root is the ambient set
        assert_eq!(
            Code::empty(3).relative_root(Mask::singleton(1)),
            Mask::full(3)
        );
    }

    #[test]
    fn neuron_status_cases() {
        let c = example();
        assert_eq!(c.neuron_status(2).unwrap(), NeuronStatus::Essential);
        // a column of a code nobody fires in is trivial
        let with_dead = code_on(3, &[&[1], &[1, 2]]);
        assert_eq!(with_dead.neuron_status(3).unwrap(), NeuronStatus::Trivial);
        // {∅,1,2,123}: neuron 3 fires exactly when 1 and 2 both do
        let c3 = code_on(3, &[&[], &[1], &[2], &[1, 2, 3]]);
        assert_eq!(
            c3.neuron_status(3).unwrap(),
            NeuronStatus::Redundant(Mask::from_indices([1, 2]))
        );
        assert!(c3.neuron_status(0).is_err());
        assert!(c3.neuron_status(4).is_err());
    }

    #[test]
    fn all_ones_column_is_redundant_to_the_empty_set() {
        // a neuron firing in every word duplicates the empty product
        let c = code_on(2, &[&[1], &[1, 2]]);
        assert_eq!(c.neuron_status(1).unwrap(), NeuronStatus::Redundant(Mask::EMPTY));
    }

    #[test]
    fn freeness_of_the_example() {
        let c = example();
        assert!(!c.is_free(1).unwrap());
        assert!(c.is_free(2).unwrap());
        assert!(c.is_free(3).unwrap());
        assert!(!c.is_free(4).unwrap());
        let with_dead = code_on(3, &[&[1], &[1, 2]]);
        assert!(with_dead.is_free(3).is_err());
    }

    #[test]
    fn reduce_drops_a_product_column() {
        // {∅,1,2,123} reduces to the full two-neuron cube
        let c = code_on(3, &[&[], &[1], &[2], &[1, 2, 3]]);
        let r = c.reduce();
        assert_eq!(r.kept, vec![1, 2]);
        assert_eq!(r.code, code_on(2, &[&[], &[1], &[2], &[1, 2]]));
        assert_eq!(r.steps.len(), 1);
        assert!(!r.steps[0].was_trivial);
        // the projection selects the kept columns
        let projected = Code::from_matrix(
            &crate::galois::bool_mul(&c.to_matrix(), &r.projection).unwrap(),
        );
        assert_eq!(projected, r.code);
    }

    #[test]
    fn reduce_is_idempotent_and_example_is_reduced() {
        let c = example();
        assert!(c.is_reduced());
        let r = c.reduce();
        assert_eq!(r.code, c);
        assert_eq!(r.kept, vec![1, 2, 3, 4]);
        // single-word singleton code collapses entirely: its neuron fires
        // everywhere, so it is redundant to the empty set
        let tiny = code_on(1, &[&[1]]);
        let rt = tiny.reduce();
        assert_eq!(rt.code.n(), 0);
        assert_eq!(rt.code.len(), 1);
        // {∅} over three dead neurons keeps the word, drops the columns
        let just_empty = code_on(3, &[&[]]);
        let rj = just_empty.reduce();
        assert_eq!(rj.code.n(), 0);
        assert_eq!(rj.code.len(), 1);
        assert_eq!(rj.steps.len(), 3);
        assert!(rj.steps.iter().all(|s| s.was_trivial));
    }

    #[test]
    fn trunk_count_of_the_example_is_nine() {
        let c = example();
        let trunks = c.enumerate_trunks();
        assert_eq!(trunks.len(), 9);
        assert!(trunks.iter().all(|t| !t.is_empty()));
        // |C| <= t always: every codeword is the root of its own trunk
        assert!(c.len() <= trunks.len());
        assert_eq!(Code::empty(2).trunk_count(), 0);
        assert_eq!(code_on(2, &[&[]]).trunk_count(), 1);
    }

    #[test]
    fn canonical_label_identifies_isomorphs() {
        // {∅,1} and {∅,12} present the same class: the doubled column is
        // redundant and reduction strips it
        let a = code_on(1, &[&[], &[1]]);
        let b = code_on(2, &[&[], &[1, 2]]);
        assert!(a.is_isomorphic(&b));
        assert_eq!(a.label_string(), b.label_string());
        // an always-on column is likewise stripped
        let c = code_on(2, &[&[1], &[1, 2]]);
        assert!(a.is_isomorphic(&c));
        // a column swap is invisible
        let d = code_on(2, &[&[], &[1], &[1, 2]]);
        let d_swapped = code_on(2, &[&[], &[2], &[1, 2]]);
        assert!(d.is_isomorphic(&d_swapped));
        // distinct classes stay apart
        assert!(!a.is_isomorphic(&d));
        let e = code_on(2, &[&[], &[1], &[2]]);
        let f = code_on(2, &[&[], &[1], &[1, 2]]);
        assert!(!e.is_isomorphic(&f));
    }

    #[test]
    fn label_string_distinguishes_width_zero_classes() {
        assert_ne!(
            Code::empty(0).label_string(),
            code_on(0, &[&[]]).label_string()
        );
    }

    #[test]
    fn exhaustive_redundancy_oracle_agrees_on_a_case() {
        let c3 = code_on(3, &[&[], &[1], &[2], &[1, 2, 3]]);
        assert!(redundant_by_exhaustion(&c3, 3).is_some());
        assert!(redundant_by_exhaustion(&c3, 1).is_none());
    }

    #[test]
    fn reduced_enumeration_small_widths() {
        // width 0: the empty code and the one-word code
        assert_eq!(enumerate_reduced_codes(0).unwrap().len(), 2);
        // width 1: only {∅,1}; the singleton {1} has an always-on neuron
        let one = enumerate_reduced_codes(1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0], code_on(1, &[&[], &[1]]));
        // width 2: computed by the same scan the label test exercises
        let two = enumerate_reduced_codes(2).unwrap();
        assert_eq!(two.len(), 5);
        assert!(enumerate_reduced_codes(5).is_err());
    }
}
