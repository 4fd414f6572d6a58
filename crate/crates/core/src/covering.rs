//! Covering maps: the elementary morphisms that peel one trunk off a
//! reduced code.
//!
//! For a reduced code over `[n]` and a neuron `i`, the covering map at `i`
//! sends a word `c` to `(c ∖ i) ∪ {j+n : {i,j} ⊆ c, tk(ij) ≠ tk(i)}`,
//! read over a doubled coordinate set: the original neurons (with `i`
//! silenced) plus one virtual neuron per pair `{i,j}` whose trunk is a
//! proper nonempty part of `tk(i)`. The image has exactly one nonempty
//! trunk fewer than the source and its defect drops by one or stays, so
//! iterating covering maps drives the defect of a code down to zero. The
//! step is a factorization morphism precisely when `i` is a free neuron.

use std::collections::BTreeMap;

use crate::bits::{Mask, MAX_NEURONS};
use crate::code::Code;
use crate::error::{Error, Result};
use crate::morphism::{self, MorphismRep};

/// Number of nonempty trunks minus the number of codewords. Zero exactly
/// when the code is closed under intersections of codewords.
pub fn defect(code: &Code) -> usize {
    code.trunk_count() - code.len()
}

/// The neurons whose relative root is not itself a codeword. Requires a
/// reduced code.
pub fn free_neurons(code: &Code) -> Result<Vec<usize>> {
    require_reduced(code)?;
    (1..=code.n())
        .filter_map(|i| match code.is_free(i) {
            Ok(true) => Some(Ok(i)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect()
}

/// The only pair of words a covering map can merge: `(√i ∖ i, √i)`,
/// returned when both are codewords.
pub fn collision_check(code: &Code, i: usize) -> Result<Option<(Mask, Mask)>> {
    require_reduced(code)?;
    if code.trunk(Mask::singleton(i)).is_empty() {
        return Err(Error::domain(format!("neuron {i} never fires")));
    }
    let root = code.relative_root(Mask::singleton(i));
    let lowered = root.remove(i);
    if code.contains(root) && code.contains(lowered) {
        Ok(Some((lowered, root)))
    } else {
        Ok(None)
    }
}

/// One application of a covering map, with everything downstream consumers
/// need: the raw doubled-coordinate image, the inducing representation over
/// the surviving coordinates, the reduced image, and how the trunk count
/// and defect moved.
#[derive(Clone)]
pub struct CoveringStep {
    pub source: Code,
    pub neuron: usize,
    /// Generators for the raw image's nontrivial coordinates, in `kept`
    /// order: the surviving singletons ascending, then one pair `{i,j}`
    /// per kept virtual neuron.
    pub rep: MorphismRep,
    /// 1-based raw coordinates (in `[2n]`) that carry a generator, in the
    /// order of `rep`'s rows: `j` for survivors, `n + j` for virtuals.
    pub kept: Vec<usize>,
    /// The `j` whose virtual neuron `{i,j}` survived, ascending.
    pub virtual_kept: Vec<usize>,
    /// The image exactly as the doubled-coordinate formula produces it.
    pub image_raw: Code,
    /// The image after dropping dead coordinates and reducing.
    pub image: Code,
    /// Source word to reduced-image word.
    pub word_map: BTreeMap<Mask, Mask>,
    /// Whether the step is a factorization morphism. Coincides with `i`
    /// being free.
    pub is_bmf_step: bool,
    /// Defect of the source minus defect of the image: 1 when the map is
    /// injective, 0 when it merges the one collision pair.
    pub defect_drop: usize,
}

fn require_reduced(code: &Code) -> Result<()> {
    if code.is_reduced() {
        Ok(())
    } else {
        Err(Error::domain(
            "covering maps are defined on reduced codes; reduce first".to_string(),
        ))
    }
}

/// Builds the covering map of a reduced code at neuron `i` and applies it.
pub fn covering_map(code: &Code, i: usize) -> Result<CoveringStep> {
    require_reduced(code)?;
    let n = code.n();
    if i == 0 || i > n {
        return Err(Error::domain(format!(
            "neuron {i} out of range for a code over {n} neurons"
        )));
    }
    if 2 * n > MAX_NEURONS {
        return Err(Error::resource(format!(
            "covering doubles the coordinate count; {n} neurons exceed the {MAX_NEURONS}-bit words"
        )));
    }
    let trunk_i = code.trunk(Mask::singleton(i));
    if trunk_i.is_empty() {
        return Err(Error::domain(format!("neuron {i} never fires")));
    }

    // which virtual pair-neurons have a trunk strictly between ∅ and tk(i)
    let mut virtual_kept = Vec::new();
    for j in (1..=n).filter(|&j| j != i) {
        let trunk_pair = code.trunk(Mask::from_indices([i, j]));
        if !trunk_pair.is_empty() && trunk_pair != trunk_i {
            virtual_kept.push(j);
        }
    }

    // the raw image over [2n], straight from the formula
    let mut raw_map = BTreeMap::new();
    for c in code.words() {
        let mut w = c.remove(i);
        if c.contains(i) {
            for &j in &virtual_kept {
                if c.contains(j) {
                    w = w.insert(n + j);
                }
            }
        }
        raw_map.insert(c, w);
    }
    let image_raw = Code::new(2 * n, raw_map.values().copied())?;

    // generators for the nontrivial coordinates
    let mut kept: Vec<usize> = (1..=n).filter(|&j| j != i).collect();
    let mut taus: Vec<Mask> = kept.iter().map(|&j| Mask::singleton(j)).collect();
    for &j in &virtual_kept {
        kept.push(n + j);
        taus.push(Mask::from_indices([i, j]));
    }
    let rep = MorphismRep::new(n, taus)?;
    let (cleaned, cleaned_map) = morphism::apply(code, &rep)?;
    debug_assert!(cleaned_map.iter().all(|(c, w)| {
        let relabeled = Mask::from_indices(w.iter().map(|p| kept[p - 1]));
        relabeled == raw_map[c]
    }));
    let is_bmf_step = morphism::is_bmf(code, &rep)?;

    let reduction = cleaned.reduce();
    let image = reduction.code.clone();
    let word_map: BTreeMap<Mask, Mask> = cleaned_map
        .into_iter()
        .map(|(c, w)| (c, reduction.map_word(w)))
        .collect();

    let t_source = code.trunk_count();
    let t_image = image.trunk_count();
    assert_eq!(
        t_image + 1,
        t_source,
        "a covering step must remove exactly one nonempty trunk"
    );
    let d_source = defect(code);
    let d_image = defect(&image);
    assert!(
        d_image == d_source || d_image + 1 == d_source,
        "a covering step may lower the defect by at most one"
    );

    Ok(CoveringStep {
        source: code.clone(),
        neuron: i,
        rep,
        kept,
        virtual_kept,
        image_raw,
        image,
        word_map,
        is_bmf_step,
        defect_drop: d_source - d_image,
    })
}
