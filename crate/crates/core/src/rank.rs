//! Boolean rank and monomial rank.
//!
//! The Boolean rank of a binary matrix is the smallest inner dimension of a
//! factorization over the Boolean semiring, equivalently the smallest number
//! of all-ones submatrices covering the 1-entries. [`brank_exact`] finds it
//! by branch-and-bound over maximal rectangles and returns a verified
//! factorization; [`brank_exhaustive`] is a brute-force cross-check;
//! [`brank_bounds`] collects cheap named bounds without ever failing;
//! [`brank_chain`] drives chains of covering maps and converts the narrowest
//! code reached into a factorization of the original matrix. [`mrank_exact`]
//! computes the smallest width into which the row code embeds by a monomial
//! morphism, and [`conjecture_scan`] measures how often Boolean rank is
//! additive across reduction plus non-simple redundancies.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::{all_masks, Mask, MAX_NEURONS};
use crate::code::{Code, NeuronStatus};
use crate::covering::{self, CoveringStep};
use crate::error::{Error, Result};
use crate::galois;
use crate::matrix::BitMatrix;
use crate::morphism::{self, MorphismRep};
use crate::verify::gen;

/// Largest `min(distinct nonzero rows, columns)` the exact search accepts.
pub const EXACT_SCALE_LIMIT: usize = 20;

/// Node budget [`brank_chain`] uses when the caller does not pick one.
pub const DEFAULT_CHAIN_BUDGET: usize = 100_000;

/// Cap on `rows * cols` for the cover machinery inside the bounds report.
const CELL_CAP: usize = 100_000;

/// Cap on the number of closed intents the cover search will enumerate.
const INTENT_CAP: usize = 100_000;

/// Smallest `r` with `2^r >= x`; zero for `x <= 1`.
pub fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

fn distinct_nonzero_rows(m: &BitMatrix) -> Vec<Mask> {
    let set: BTreeSet<Mask> = m.row_slice().iter().copied().filter(|r| !r.is_empty()).collect();
    set.into_iter().collect()
}

/// Closure of the distinct nonzero rows under pairwise intersection, empty
/// set excluded. These are exactly the intents of maximal all-ones
/// submatrices, so a minimum cover over them attains the Boolean rank.
fn closed_intents(rows: &[Mask]) -> Result<Vec<Mask>> {
    let mut set: BTreeSet<Mask> = rows.iter().copied().collect();
    let mut frontier: Vec<Mask> = set.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        for &r in rows {
            let meet = x.inter(r);
            if !meet.is_empty() && set.insert(meet) {
                if set.len() > INTENT_CAP {
                    return Err(Error::resource(format!(
                        "rectangle enumeration exceeded {INTENT_CAP} closed intents"
                    )));
                }
                frontier.push(meet);
            }
        }
    }
    Ok(set.into_iter().collect())
}

fn fully_covered(rows: &[Mask], covered: &[Mask]) -> bool {
    rows.iter().zip(covered).all(|(r, c)| *r == *c)
}

fn stamp_intent(rows: &[Mask], covered: &mut [Mask], intent: Mask) {
    for (i, &r) in rows.iter().enumerate() {
        if intent.is_subset(r) {
            covered[i] = covered[i].union(intent);
        }
    }
}

/// Greedy maximal set of pairwise isolated uncovered 1-entries. Two entries
/// `(i, j)` and `(i', j')` can share a rectangle only if both `m[i][j']` and
/// `m[i'][j]` hold, so the size of any such set bounds the rank from below.
fn isolation_from(rows: &[Mask], covered: &[Mask]) -> usize {
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    for (i, &r) in rows.iter().enumerate() {
        for j in r.minus(covered[i]).iter() {
            let isolated = chosen
                .iter()
                .all(|&(i2, j2)| !(rows[i].contains(j2) && rows[i2].contains(j)));
            if isolated {
                chosen.push((i, j));
            }
        }
    }
    chosen.len()
}

/// Size of a greedy isolated set of 1-entries: a lower bound on the Boolean
/// rank of `m`.
pub fn isolation_bound(m: &BitMatrix) -> usize {
    let rows = distinct_nonzero_rows(m);
    let covered = vec![Mask::EMPTY; rows.len()];
    isolation_from(&rows, &covered)
}

fn greedy_cover_intents(rows: &[Mask], intents: &[Mask]) -> Vec<usize> {
    let mut covered = vec![Mask::EMPTY; rows.len()];
    let mut chosen = Vec::new();
    while !fully_covered(rows, &covered) {
        let mut best = usize::MAX;
        let mut best_gain = 0usize;
        for (k, &b) in intents.iter().enumerate() {
            let mut gain = 0usize;
            for (i, &r) in rows.iter().enumerate() {
                if b.is_subset(r) {
                    gain += b.minus(covered[i]).len();
                }
            }
            if gain > best_gain {
                best_gain = gain;
                best = k;
            }
        }
        assert!(best != usize::MAX, "every 1-entry lies in its own row's intent");
        chosen.push(best);
        stamp_intent(rows, &mut covered, intents[best]);
    }
    chosen
}

struct CoverSearch<'a> {
    rows: &'a [Mask],
    intents: &'a [Mask],
    best: Vec<usize>,
}

impl CoverSearch<'_> {
    fn run(mut self) -> Vec<usize> {
        let mut covered = vec![Mask::EMPTY; self.rows.len()];
        let mut chosen = Vec::new();
        self.descend(&mut covered, &mut chosen);
        self.best
    }

    fn descend(&mut self, covered: &mut Vec<Mask>, chosen: &mut Vec<usize>) {
        if fully_covered(self.rows, covered) {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        if chosen.len() + isolation_from(self.rows, covered) >= self.best.len() {
            return;
        }
        // Branch on the uncovered entry admitting the fewest rectangles.
        let mut cell = None;
        let mut fewest = usize::MAX;
        for (i, &r) in self.rows.iter().enumerate() {
            for j in r.minus(covered[i]).iter() {
                let options = self
                    .intents
                    .iter()
                    .filter(|b| b.contains(j) && b.is_subset(r))
                    .count();
                if options < fewest {
                    fewest = options;
                    cell = Some((i, j));
                }
            }
        }
        let (ci, cj) = cell.expect("an uncovered entry exists on this branch");
        let picks: Vec<usize> = self
            .intents
            .iter()
            .enumerate()
            .filter(|(_, b)| b.contains(cj) && b.is_subset(self.rows[ci]))
            .map(|(k, _)| k)
            .collect();
        for k in picks {
            let saved = covered.clone();
            stamp_intent(self.rows, covered, self.intents[k]);
            chosen.push(k);
            self.descend(covered, chosen);
            chosen.pop();
            *covered = saved;
        }
    }
}

/// Exact Boolean rank of `m` together with factors `v` (`rows x r`) and `h`
/// (`r x cols`) whose Boolean product reproduces `m`. Refuses inputs whose
/// `min(distinct nonzero rows, columns)` exceeds [`EXACT_SCALE_LIMIT`].
pub fn brank_exact(m: &BitMatrix) -> Result<(usize, BitMatrix, BitMatrix)> {
    let rows = distinct_nonzero_rows(m);
    if rows.is_empty() {
        debug_assert!(m.is_zero());
        return Ok((0, BitMatrix::zeros(m.rows(), 0), BitMatrix::zeros(0, m.cols())));
    }
    if rows.len().min(m.cols()) > EXACT_SCALE_LIMIT
        || rows.len().saturating_mul(m.cols()) > CELL_CAP
    {
        let occupied = rows.iter().fold(Mask::EMPTY, |a, &r| a.union(r));
        return Err(Error::resource(format!(
            "exact Boolean rank search handles min(distinct nonzero rows, columns) up to \
             {EXACT_SCALE_LIMIT}; this input has {} such rows and {} columns; the value lies \
             between {} and {}",
            rows.len(),
            m.cols(),
            ceil_log2(rows.len()),
            rows.len().min(occupied.len()),
        )));
    }
    let intents = closed_intents(&rows)?;
    let greedy = greedy_cover_intents(&rows, &intents);
    let chosen = CoverSearch {
        rows: &rows,
        intents: &intents,
        best: greedy,
    }
    .run();
    let r = chosen.len();
    let h = BitMatrix::from_rows(m.cols(), chosen.iter().map(|&k| intents[k]).collect())?;
    let mut v = BitMatrix::zeros(m.rows(), r);
    for i in 0..m.rows() {
        let row = m.row(i);
        for (t, &k) in chosen.iter().enumerate() {
            if intents[k].is_subset(row) {
                v.set(i, t, true);
            }
        }
    }
    let product = galois::bool_mul(&v, &h)?;
    assert_eq!(product, *m, "minimum rectangle cover must reproduce the input");
    Ok((r, v, h))
}

/// Brute-force Boolean rank: try every set of `r` distinct nonzero rows for
/// `h`, `r` ascending, accepting as soon as the residual factor closes the
/// product. Independent of the cover search; only for small widths.
pub fn brank_exhaustive(m: &BitMatrix) -> Result<usize> {
    if m.cols() > 5 || m.rows() > 64 {
        return Err(Error::resource(format!(
            "brute-force Boolean rank handles up to 5 columns and 64 rows; got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if m.rows() == 0 || m.is_zero() {
        return Ok(0);
    }
    let candidates: Vec<Mask> = all_masks(m.cols()).filter(|x| !x.is_empty()).collect();
    for r in 1..=m.cols() {
        for combo in candidates.iter().copied().combinations(r) {
            let h = BitMatrix::from_rows(m.cols(), combo)?;
            let v = galois::residual(m, &h)?;
            if galois::bool_mul(&v, &h)? == *m {
                return Ok(r);
            }
        }
    }
    unreachable!("the singleton rows alone already factor the matrix")
}

/// One named rank bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedBound {
    pub name: &'static str,
    pub value: usize,
}

/// Every bound [`brank_bounds`] could afford, with the tightest pair pulled
/// out and `exact` filled in when they meet.
#[derive(Debug, Clone, Serialize)]
pub struct RankReport {
    pub rows: usize,
    pub cols: usize,
    pub distinct_words: usize,
    pub reduced_cols: usize,
    pub lower: Vec<NamedBound>,
    pub upper: Vec<NamedBound>,
    pub best_lower: usize,
    pub best_upper: usize,
    pub exact: Option<usize>,
}

fn is_meet_closed(code: &Code) -> bool {
    let words: Vec<Mask> = code.words().collect();
    for (a, b) in words.iter().tuple_combinations() {
        if !code.contains(a.inter(*b)) {
            return false;
        }
    }
    true
}

/// Collects Boolean rank bounds without ever failing: each bound is included
/// only when its cost fits, and the report always retains at least one bound
/// on each side.
pub fn brank_bounds(m: &BitMatrix) -> RankReport {
    let code = Code::from_matrix(m);
    let words = code.len();
    let reduction = code.reduce();
    let lambda = reduction.code.n();
    let deleted_redundant = reduction.steps.iter().filter(|s| !s.was_trivial).count();

    let mut lower: Vec<NamedBound> = Vec::new();
    let mut upper: Vec<NamedBound> = Vec::new();

    match mrank_exact(m) {
        Ok(r) => lower.push(NamedBound { name: "mrank", value: r }),
        Err(_) => lower.push(NamedBound {
            name: "log2_words",
            value: ceil_log2(words),
        }),
    }

    let rows = distinct_nonzero_rows(m);
    let cells_ok = rows.len().saturating_mul(m.cols()) <= CELL_CAP;
    if cells_ok {
        let covered = vec![Mask::EMPTY; rows.len()];
        lower.push(NamedBound {
            name: "isolation_set",
            value: isolation_from(&rows, &covered),
        });
    }

    if words <= 512 && is_meet_closed(&code) {
        let value = words.min(lambda);
        lower.push(NamedBound {
            name: "intersection_complete",
            value,
        });
        if code.is_reduced() {
            upper.push(NamedBound {
                name: "intersection_complete",
                value,
            });
        }
    }

    let occupied = rows.iter().fold(Mask::EMPTY, |a, &r| a.union(r));
    let distinct_cols = if m.rows() <= MAX_NEURONS {
        let t = m.transpose();
        t.row_slice()
            .iter()
            .filter(|r| !r.is_empty())
            .collect::<BTreeSet<_>>()
            .len()
    } else {
        occupied.len()
    };
    upper.push(NamedBound {
        name: "matrix_size",
        value: rows.len().min(distinct_cols),
    });

    if cells_ok {
        if let Ok(intents) = closed_intents(&rows) {
            upper.push(NamedBound {
                name: "greedy_cover",
                value: greedy_cover_intents(&rows, &intents).len(),
            });
        }
    }

    if 2 * lambda <= MAX_NEURONS && lambda <= 24 && words <= 1024 {
        if let Ok(chain) = brank_chain(m, DEFAULT_CHAIN_BUDGET) {
            upper.push(NamedBound {
                name: "covering_chain",
                value: chain.bound,
            });
        }
    }

    if !reduction.steps.is_empty() {
        let rho_m = reduction.code.to_matrix();
        let inner = if lambda.min(reduction.code.len()) <= 12 {
            brank_exact(&rho_m).map(|(r, _, _)| r).ok()
        } else {
            None
        };
        let inner = inner.unwrap_or_else(|| brank_bounds(&rho_m).best_upper);
        upper.push(NamedBound {
            name: "redundancy",
            value: inner + deleted_redundant,
        });
    }

    let best_lower = lower.iter().map(|b| b.value).max().unwrap_or(0);
    let best_upper = upper
        .iter()
        .map(|b| b.value)
        .min()
        .expect("the size bound is always present");
    let exact = if best_lower == best_upper {
        Some(best_lower)
    } else {
        None
    };
    RankReport {
        rows: m.rows(),
        cols: m.cols(),
        distinct_words: words,
        reduced_cols: lambda,
        lower,
        upper,
        best_lower,
        best_upper,
        exact,
    }
}

/// One certified link in a factorization chain: a covering step at a free
/// neuron together with its target-reduced representation, which the search
/// validated as a factorization morphism onto the reduced image. Target
/// reduction can genuinely fail, so steps that stall are never recorded.
#[derive(Clone)]
pub struct ChainStep {
    /// The covering map this link came from.
    pub covering: CoveringStep,
    /// Target-reduced canonical representation out of `covering.source`.
    pub slim: MorphismRep,
    /// Image of `slim`: a reduced code in the class of `covering.image`.
    pub image: Code,
    /// Source word to `image` word under `slim`.
    pub word_map: BTreeMap<Mask, Mask>,
}

/// Outcome of a chain search: the narrowest code reached, the covering steps
/// that got there, and a verified factorization of the original matrix with
/// inner dimension `bound`.
#[derive(Clone)]
pub struct ChainReport {
    /// Upper bound on the Boolean rank of the input matrix.
    pub bound: usize,
    /// Narrowest reduced width reached from the reduced row code.
    pub reduced_bound: usize,
    /// Extra identity columns appended for the input's redundant neurons.
    pub appended_columns: usize,
    /// Certified covering steps from the reduced row code to the narrowest
    /// code.
    pub steps: Vec<ChainStep>,
    /// `(v, h)` with `v * h` equal to the input, inner dimension `bound`.
    pub factors: (BitMatrix, BitMatrix),
    /// Covering maps expanded before the search stopped.
    pub nodes: usize,
    /// Whether the search exhausted the reachable codes within budget.
    pub complete: bool,
}

struct ChainSearch {
    budget: usize,
    nodes: usize,
    complete: bool,
    visited: BTreeSet<String>,
    best_width: usize,
    best_chain: Vec<ChainStep>,
}

impl ChainSearch {
    fn descend(&mut self, node: &Code, chain: &mut Vec<ChainStep>) -> Result<()> {
        if node.n() < self.best_width {
            self.best_width = node.n();
            self.best_chain = chain.clone();
        }
        if covering::defect(node) == 0 {
            return Ok(());
        }
        if 2 * node.n() > MAX_NEURONS {
            // The doubled frame of a covering map would not fit; treat the
            // node as a leaf rather than fail the whole search.
            self.complete = false;
            return Ok(());
        }
        for i in covering::free_neurons(node)? {
            if self.nodes >= self.budget {
                self.complete = false;
                return Ok(());
            }
            self.nodes += 1;
            let step = covering::covering_map(node, i)?;
            // Only follow edges whose target reduction certifies: dropping
            // redundant image neurons can break the factorization, in which
            // case this edge carries no usable certificate.
            let slim = match morphism::bmf_reduce_target(node, &step.rep) {
                Ok(s) => s,
                Err(_) => continue,
            };
            let (image, word_map) = morphism::apply(node, &slim)?;
            debug_assert!(image.is_reduced());
            debug_assert_eq!(image.label_string(), step.image.label_string());
            if !self.visited.insert(image.label_string()) {
                continue;
            }
            chain.push(ChainStep {
                covering: step,
                slim,
                image: image.clone(),
                word_map,
            });
            self.descend(&image, chain)?;
            chain.pop();
        }
        Ok(())
    }
}

/// Upper-bounds the Boolean rank of `m` by chaining covering maps at free
/// neurons of its reduced row code, keeping the narrowest code seen anywhere
/// along the way. Isomorphic codes are expanded once; `budget` caps the
/// number of covering maps taken. The narrowest chain is then replayed
/// through target-reduced representatives and assembled, together with one
/// appended singleton column per deleted redundant neuron, into a verified
/// factorization of `m`.
pub fn brank_chain(m: &BitMatrix, budget: usize) -> Result<ChainReport> {
    let code = Code::from_matrix(m);
    let reduction = code.reduce();
    let rho = reduction.code.clone();

    let mut search = ChainSearch {
        budget,
        nodes: 0,
        complete: true,
        visited: BTreeSet::new(),
        best_width: rho.n(),
        best_chain: Vec::new(),
    };
    search.visited.insert(rho.label_string());
    let mut chain = Vec::new();
    search.descend(&rho, &mut chain)?;

    // Replay the winning chain, accumulating the composed generator matrix
    // over the reduced frame; every step was certified during the search.
    let mut h_inner = BitMatrix::identity(rho.n());
    let mut word_maps: Vec<&BTreeMap<Mask, Mask>> = Vec::new();
    let mut cur = rho.clone();
    for step in &search.best_chain {
        debug_assert_eq!(step.covering.source, cur);
        h_inner = galois::bool_mul(&step.slim.to_matrix(), &h_inner)?;
        word_maps.push(&step.word_map);
        cur = step.image.clone();
    }
    assert_eq!(cur.n(), search.best_width);

    // Original positions of the deleted redundant columns, in deletion order.
    let mut orig: Vec<usize> = (1..=code.n()).collect();
    let mut appended: Vec<usize> = Vec::new();
    for st in &reduction.steps {
        let o = orig.remove(st.index - 1);
        if !st.was_trivial {
            appended.push(o);
        }
    }
    debug_assert_eq!(orig, reduction.kept);

    let r_total = search.best_width + appended.len();
    let mut h_full = BitMatrix::zeros(r_total, m.cols());
    for t in 0..search.best_width {
        let row = h_inner.row(t);
        for (j_new, &j_orig) in reduction.kept.iter().enumerate() {
            if row.contains(j_new + 1) {
                h_full.set(t, j_orig - 1, true);
            }
        }
    }
    for (s_idx, &col) in appended.iter().enumerate() {
        h_full.set(search.best_width + s_idx, col - 1, true);
    }
    let mut v_full = BitMatrix::zeros(m.rows(), r_total);
    for i in 0..m.rows() {
        let w = m.row(i);
        let mut x = reduction.map_word(w);
        for map in &word_maps {
            x = map[&x];
        }
        for b in x.iter() {
            v_full.set(i, b - 1, true);
        }
        for (s_idx, &col) in appended.iter().enumerate() {
            if w.contains(col) {
                v_full.set(i, search.best_width + s_idx, true);
            }
        }
    }
    let product = galois::bool_mul(&v_full, &h_full)?;
    assert_eq!(product, *m, "chain certificate must reproduce the input");

    Ok(ChainReport {
        bound: r_total,
        reduced_bound: search.best_width,
        appended_columns: appended.len(),
        steps: search.best_chain,
        factors: (v_full, h_full),
        nodes: search.nodes,
        complete: search.complete,
    })
}

/// Minimum width of an injective monomial image of the row code of `m`.
///
/// Every coordinate of a monomial morphism tests membership in one trunk, so
/// only the distinct trunk indicator vectors matter; the search deepens from
/// the information bound and refines word groups, skipping indicators that
/// split nothing.
pub fn mrank_exact(m: &BitMatrix) -> Result<usize> {
    let code = Code::from_matrix(m);
    let words: Vec<Mask> = code.words().collect();
    let mw = words.len();
    if mw <= 1 {
        return Ok(0);
    }
    if code.n() > 10 || mw > 64 {
        return Err(Error::resource(format!(
            "minimum monomial width search handles up to 10 columns and 64 distinct words; this \
             input has {} and {}; the value lies between {} and {}",
            code.n(),
            mw,
            ceil_log2(mw),
            code.n()
        )));
    }
    let full: u128 = if mw == 128 { u128::MAX } else { (1u128 << mw) - 1 };
    let mut indicator_set: BTreeSet<u128> = BTreeSet::new();
    for trunk in code.enumerate_trunks() {
        let mut ind = 0u128;
        for (w_idx, w) in words.iter().enumerate() {
            if trunk.contains(w) {
                ind |= 1 << w_idx;
            }
        }
        if ind != 0 && ind != full {
            indicator_set.insert(ind);
        }
    }
    let indicators: Vec<u128> = indicator_set.into_iter().collect();
    for r in ceil_log2(mw)..=indicators.len() {
        if separates(&indicators, 0, r, &[full]) {
            return Ok(r);
        }
    }
    unreachable!("coordinate trunks separate any two distinct words")
}

/// Whether some `budget` indicators from `cands[start..]` refine every group
/// down to singletons. Groups already singleton are dropped on entry.
fn separates(cands: &[u128], start: usize, budget: usize, groups: &[u128]) -> bool {
    if groups.is_empty() {
        return true;
    }
    let need = groups
        .iter()
        .map(|g| ceil_log2(g.count_ones() as usize))
        .max()
        .unwrap();
    if need > budget {
        return false;
    }
    for idx in start..cands.len() {
        let mut next: Vec<u128> = Vec::new();
        let mut split_any = false;
        for &g in groups {
            let a = g & cands[idx];
            let b = g & !cands[idx];
            if a != 0 && b != 0 {
                split_any = true;
            }
            if a.count_ones() >= 2 {
                next.push(a);
            }
            if b.count_ones() >= 2 {
                next.push(b);
            }
        }
        if !split_any {
            continue;
        }
        if separates(cands, idx + 1, budget - 1, &next) {
            return true;
        }
    }
    false
}

/// Whether the trunk of neuron `i` is reproduced by the empty set or by a
/// single other neuron. True implies `i` is redundant; trivial neurons
/// report false.
pub fn is_simply_redundant(code: &Code, i: usize) -> Result<bool> {
    if i == 0 || i > code.n() {
        return Err(Error::domain(format!(
            "neuron {i} is out of range for a code on {} neurons",
            code.n()
        )));
    }
    let ti = code.trunk(Mask::singleton(i));
    if ti.is_empty() {
        return Ok(false);
    }
    if ti.len() == code.len() {
        return Ok(true);
    }
    for j in 1..=code.n() {
        if j != i && code.trunk(Mask::singleton(j)) == ti {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Number of redundant neurons whose witness set cannot be shrunk to a
/// singleton or the empty set.
pub fn nonsimple_redundant_count(code: &Code) -> usize {
    (1..=code.n())
        .filter(|&i| {
            matches!(code.neuron_status(i), Ok(NeuronStatus::Redundant(_)))
                && !is_simply_redundant(code, i).unwrap_or(false)
        })
        .count()
}

/// One sampled code in the additivity scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRecord {
    /// Row strings of the sampled code's matrix, for reproduction.
    pub matrix: Vec<String>,
    pub cols: usize,
    pub words: usize,
    pub deleted_redundant: usize,
    pub nonsimple_redundant: usize,
    pub brank_full: usize,
    pub brank_reduced: usize,
    /// `brank_reduced + nonsimple_redundant`.
    pub predicted: usize,
    pub agrees: bool,
}

/// Outcome of [`conjecture_scan`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub samples: usize,
    pub n_max: usize,
    pub seed: u64,
    pub agreements: usize,
    pub disagreements: usize,
    pub records: Vec<ScanRecord>,
}

/// Samples reduced codes, widens each by one or two dependent columns, and
/// compares the exact Boolean rank against the rank of the reduced code plus
/// the number of non-simply-redundant neurons. Every sample is factored
/// exactly, so the ambient width is capped at 6.
pub fn conjecture_scan(samples: usize, n_max: usize, seed: u64) -> Result<ScanReport> {
    if n_max < 2 {
        return Err(Error::domain(
            "the additivity scan widens its samples; n_max must be at least 2".to_string(),
        ));
    }
    if n_max > 6 {
        return Err(Error::resource(
            "the additivity scan factors every sample exactly; n_max must stay at or below 6"
                .to_string(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::with_capacity(samples);
    let mut agreements = 0usize;
    let mut disagreements = 0usize;
    for _ in 0..samples {
        let base_n = rng.gen_range(1..=(n_max - 1));
        let mut sample = gen::random_reduced_code(&mut rng, base_n);
        let extra = rng.gen_range(1..=(n_max - base_n).min(2));
        for _ in 0..extra {
            sample = gen::widen_with_dependent_column(&mut rng, &sample);
        }
        let matrix = sample.to_matrix();
        let reduction = sample.reduce();
        let deleted_redundant = reduction.steps.iter().filter(|s| !s.was_trivial).count();
        let nonsimple = nonsimple_redundant_count(&sample);
        let (brank_full, _, _) = brank_exact(&matrix)?;
        let (brank_reduced, _, _) = brank_exact(&reduction.code.to_matrix())?;
        let predicted = brank_reduced + nonsimple;
        let agrees = brank_full == predicted;
        if agrees {
            agreements += 1;
        } else {
            disagreements += 1;
        }
        records.push(ScanRecord {
            matrix: (0..matrix.rows())
                .map(|i| crate::matrix::row_string(matrix.row(i), matrix.cols()))
                .collect(),
            cols: matrix.cols(),
            words: sample.len(),
            deleted_redundant,
            nonsimple_redundant: nonsimple,
            brank_full,
            brank_reduced,
            predicted,
            agrees,
        });
    }
    Ok(ScanReport {
        samples,
        n_max,
        seed,
        agreements,
        disagreements,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::code_on;

    fn square_pair() -> (Code, Code) {
        let square = code_on(2, &[&[], &[1], &[2], &[1, 2]]);
        let tilted = code_on(3, &[&[], &[1], &[2], &[1, 2, 3]]);
        (square, tilted)
    }

    fn running_example() -> Code {
        code_on(
            4,
            &[
                &[],
                &[1, 2],
                &[2, 3],
                &[3, 4],
                &[1, 2, 3],
                &[2, 3, 4],
                &[1, 2, 3, 4],
            ],
        )
    }

    #[test]
    fn rank_two_versus_three() {
        let (square, tilted) = square_pair();
        assert!(square.reduce().code.is_isomorphic(&tilted.reduce().code));
        let (r2, v2, h2) = brank_exact(&square.to_matrix()).unwrap();
        let (r3, v3, h3) = brank_exact(&tilted.to_matrix()).unwrap();
        assert_eq!(r2, 2);
        assert_eq!(r3, 3);
        assert_eq!((v2.rows(), v2.cols(), h2.rows(), h2.cols()), (4, 2, 2, 2));
        assert_eq!((v3.rows(), v3.cols(), h3.rows(), h3.cols()), (4, 3, 3, 3));
    }

    #[test]
    fn identity_has_full_rank() {
        let (r, _, _) = brank_exact(&BitMatrix::identity(5)).unwrap();
        assert_eq!(r, 5);
        assert_eq!(isolation_bound(&BitMatrix::identity(5)), 5);
    }

    #[test]
    fn degenerate_matrices_have_rank_zero() {
        let (r, v, h) = brank_exact(&BitMatrix::zeros(3, 4)).unwrap();
        assert_eq!((r, v.rows(), v.cols(), h.rows(), h.cols()), (0, 3, 0, 0, 4));
        let (r, _, _) = brank_exact(&BitMatrix::zeros(0, 4)).unwrap();
        assert_eq!(r, 0);
    }

    #[test]
    fn meet_closed_code_attains_the_size_bound() {
        let code = code_on(4, &[&[], &[1], &[2], &[3], &[4], &[1, 2], &[3, 4]]);
        assert!(is_meet_closed(&code));
        assert!(code.is_reduced());
        let (r, _, _) = brank_exact(&code.to_matrix()).unwrap();
        assert_eq!(r, 4);
        let report = brank_bounds(&code.to_matrix());
        assert_eq!(report.exact, Some(4));
    }

    #[test]
    fn monomial_width_goldens() {
        let (square, _) = square_pair();
        assert_eq!(mrank_exact(&square.to_matrix()).unwrap(), 2);
        let half = code_on(1, &[&[], &[1]]);
        assert_eq!(mrank_exact(&half.to_matrix()).unwrap(), 1);
        let point = code_on(2, &[&[1, 2]]);
        assert_eq!(mrank_exact(&point.to_matrix()).unwrap(), 0);
    }

    #[test]
    fn chain_narrows_the_running_example() {
        let m = running_example().to_matrix();
        let report = brank_chain(&m, DEFAULT_CHAIN_BUDGET).unwrap();
        assert!(report.complete);
        assert_eq!(report.reduced_bound, 3);
        assert_eq!(report.appended_columns, 0);
        assert_eq!(report.bound, 3);
        let (v, h) = &report.factors;
        assert_eq!((v.rows(), v.cols(), h.rows(), h.cols()), (7, 3, 3, 4));
        let (exact, _, _) = brank_exact(&m).unwrap();
        assert_eq!(exact, 3);
    }

    #[test]
    fn chain_appends_redundant_columns() {
        let (_, tilted) = square_pair();
        let report = brank_chain(&tilted.to_matrix(), DEFAULT_CHAIN_BUDGET).unwrap();
        assert_eq!(report.reduced_bound, 2);
        assert_eq!(report.appended_columns, 1);
        assert_eq!(report.bound, 3);
        assert!(report.steps.is_empty());
    }

    #[test]
    fn bounds_close_on_the_tilted_square()
    {
        let (_, tilted) = square_pair();
        let report = brank_bounds(&tilted.to_matrix());
        assert_eq!(report.exact, Some(3));
        let redundancy = report.upper.iter().find(|b| b.name == "redundancy").unwrap();
        assert_eq!(redundancy.value, 3);
        let isolation = report.lower.iter().find(|b| b.name == "isolation_set").unwrap();
        assert_eq!(isolation.value, 3);
    }

    #[test]
    fn bounds_close_without_the_exact_search() {
        let report = brank_bounds(&BitMatrix::identity(25));
        assert!(brank_exact(&BitMatrix::identity(25)).is_err());
        assert_eq!(report.exact, Some(25));
    }

    #[test]
    fn bounds_bracket_the_exact_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(1..=5usize);
            let sample = gen::random_code(&mut rng, n);
            let m = sample.to_matrix();
            let (exact, _, _) = brank_exact(&m).unwrap();
            let report = brank_bounds(&m);
            assert!(report.best_lower <= exact && exact <= report.best_upper);
            for lo in &report.lower {
                for hi in &report.upper {
                    assert!(
                        lo.value <= hi.value,
                        "bound {} = {} exceeds bound {} = {}",
                        lo.name,
                        lo.value,
                        hi.name,
                        hi.value
                    );
                }
            }
            if let Ok(mr) = mrank_exact(&m) {
                assert!(mr <= exact);
            }
        }
    }

    #[test]
    fn brute_force_agrees_with_the_cover_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..30 {
            let rows = rng.gen_range(1..=5);
            let cols = rng.gen_range(1..=4);
            let m = gen::random_matrix(&mut rng, rows, cols);
            let (exact, _, _) = brank_exact(&m).unwrap();
            assert_eq!(brank_exhaustive(&m).unwrap(), exact);
        }
    }

    #[test]
    fn simple_redundancy_is_detected() {
        let (_, tilted) = square_pair();
        assert!(!is_simply_redundant(&tilted, 3).unwrap());
        assert_eq!(nonsimple_redundant_count(&tilted), 1);
        let doubled = code_on(2, &[&[], &[1, 2]]);
        assert!(is_simply_redundant(&doubled, 2).unwrap());
        assert_eq!(nonsimple_redundant_count(&doubled), 0);
    }

    #[test]
    fn scan_is_deterministic() {
        let a = conjecture_scan(12, 5, 7).unwrap();
        let b = conjecture_scan(12, 5, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.records.len(), 12);
        assert_eq!(a.agreements + a.disagreements, 12);
        for rec in &a.records {
            assert_eq!(rec.predicted, rec.brank_reduced + rec.nonsimple_redundant);
        }
    }
}
