//! Morphisms between codes, presented by trunk generators.
//!
//! A tuple `(tau_1, ..., tau_r)` of subsets of `[n]` defines the map
//! `f(c) = { j : tau_j ⊆ c }`, which is the upper adjoint of the `r x n`
//! matrix with rows `tau_j` applied word by word. Replacing each `tau_j` by
//! the root of its preimage trunk gives the canonical representative, the
//! largest tuple inducing the same map on the code; it feeds the adjoint
//! `d ↦ ⋃_{j∈d} tau_j`, and a morphism is a factorization map (a "BMF
//! morphism" below) exactly when the adjoint undoes it on every codeword,
//! which in matrix form says `C = (C : T) T`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;

use crate::bits::{Mask, MAX_NEURONS};
use crate::code::{Code, NeuronStatus};
use crate::error::{Error, Result};
use crate::galois;
use crate::matrix::BitMatrix;

/// A morphism representation: an ordered tuple of trunk generators over a
/// fixed source width. Row `j` of [`MorphismRep::to_matrix`] is `tau_j`.
#[derive(Clone, PartialEq, Eq)]
pub struct MorphismRep {
    source_n: usize,
    taus: Vec<Mask>,
}

impl MorphismRep {
    pub fn new<I: IntoIterator<Item = Mask>>(source_n: usize, taus: I) -> Result<MorphismRep> {
        if source_n > MAX_NEURONS {
            return Err(Error::domain(format!(
                "source width {source_n} exceeds {MAX_NEURONS}"
            )));
        }
        let ambient = Mask::full(source_n);
        let taus: Vec<Mask> = taus.into_iter().collect();
        if taus.len() > MAX_NEURONS {
            return Err(Error::domain(format!(
                "{} image neurons exceed {MAX_NEURONS}",
                taus.len()
            )));
        }
        for (j, t) in taus.iter().enumerate() {
            if !t.is_subset(ambient) {
                return Err(Error::domain(format!(
                    "generator {} reaches beyond the source width {source_n}",
                    j + 1
                )));
            }
        }
        Ok(MorphismRep { source_n, taus })
    }

    /// The identity morphism on width `n`.
    pub fn identity(n: usize) -> MorphismRep {
        MorphismRep::new(n, (1..=n).map(Mask::singleton)).expect("singletons fit")
    }

    pub fn source_n(&self) -> usize {
        self.source_n
    }

    /// Number of image neurons.
    pub fn len(&self) -> usize {
        self.taus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taus.is_empty()
    }

    pub fn taus(&self) -> &[Mask] {
        &self.taus
    }

    pub fn to_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(self.source_n, self.taus.clone()).expect("validated on construction")
    }

    pub fn from_matrix(m: &BitMatrix) -> MorphismRep {
        MorphismRep {
            source_n: m.cols(),
            taus: m.row_slice().to_vec(),
        }
    }

    /// The image of one word: which generators it contains.
    pub fn map_word(&self, c: Mask) -> Mask {
        let mut out = Mask::EMPTY;
        for (j, t) in self.taus.iter().enumerate() {
            if t.is_subset(c) {
                out = out.insert(j + 1);
            }
        }
        out
    }
}

impl fmt::Display for MorphismRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.taus.iter().map(|t| t.compact()).join(", "))
    }
}

impl fmt::Debug for MorphismRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MorphismRep(n={}, {})", self.source_n, self)
    }
}

fn check_source(code: &Code, rep: &MorphismRep) -> Result<()> {
    if code.n() == rep.source_n() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "representation over {} neurons applied to a code over {}",
            rep.source_n(),
            code.n()
        )))
    }
}

/// Applies the morphism to every codeword, returning the image code and the
/// word-by-word map. The per-word computation is the upper adjoint of the
/// generator matrix, asserted against it.
pub fn apply(code: &Code, rep: &MorphismRep) -> Result<(Code, BTreeMap<Mask, Mask>)> {
    check_source(code, rep)?;
    let mut map = BTreeMap::new();
    for c in code.words() {
        let image = rep.map_word(c);
        debug_assert_eq!(
            image,
            galois::g_map(&rep.to_matrix(), c).expect("widths agree"),
            "direct evaluation must match the upper adjoint"
        );
        map.insert(c, image);
    }
    let image_code = Code::new(rep.len(), map.values().copied())?;
    Ok((image_code, map))
}

/// Replaces every generator by the root of its preimage trunk. This is the
/// largest representation inducing the same map on the given code. A
/// generator whose preimage trunk is empty describes an image neuron that
/// never fires; such representations are rejected, use
/// [`drop_trivial_image_neurons`] first.
pub fn canonical_representative(code: &Code, rep: &MorphismRep) -> Result<MorphismRep> {
    check_source(code, rep)?;
    let mut taus = Vec::with_capacity(rep.len());
    for (j, t) in rep.taus().iter().enumerate() {
        if code.trunk(*t).is_empty() {
            return Err(Error::domain(format!(
                "image neuron {} has an empty preimage trunk; drop trivial image neurons first",
                j + 1
            )));
        }
        taus.push(code.relative_root(*t));
    }
    MorphismRep::new(rep.source_n(), taus)
}

/// Removes the generators with empty preimage trunks, returning the slimmer
/// representation and the surviving 1-based image-neuron indices.
pub fn drop_trivial_image_neurons(
    code: &Code,
    rep: &MorphismRep,
) -> Result<(MorphismRep, Vec<usize>)> {
    check_source(code, rep)?;
    let mut kept = Vec::new();
    let mut taus = Vec::new();
    for (j, t) in rep.taus().iter().enumerate() {
        if !code.trunk(*t).is_empty() {
            kept.push(j + 1);
            taus.push(*t);
        }
    }
    Ok((MorphismRep::new(rep.source_n(), taus)?, kept))
}

/// The adjoint of a morphism out of `code`: image words back to unions of
/// canonical generators.
pub struct Adjoint {
    canonical: MorphismRep,
}

impl Adjoint {
    pub fn canonical_rep(&self) -> &MorphismRep {
        &self.canonical
    }

    /// `d ↦ ⋃_{j ∈ d} tau_j` over the canonical generators, which is the
    /// lower adjoint of the canonical generator matrix.
    pub fn map_word(&self, d: Mask) -> Result<Mask> {
        galois::f_map(&self.canonical.to_matrix(), d)
    }
}

/// Builds the adjoint through the canonical representative.
pub fn adjoint(code: &Code, rep: &MorphismRep) -> Result<Adjoint> {
    Ok(Adjoint {
        canonical: canonical_representative(code, rep)?,
    })
}

/// True when the adjoint restores every codeword, i.e. the morphism
/// witnesses a factorization of the code matrix: with `T` the canonical
/// generator matrix, `C = (C : T) T`.
pub fn is_bmf(code: &Code, rep: &MorphismRep) -> Result<bool> {
    let adj = adjoint(code, rep)?;
    let mut ok = true;
    for c in code.words() {
        let roundtrip = adj.map_word(rep.map_word(c))?;
        if roundtrip != c {
            ok = false;
            break;
        }
    }
    if ok {
        debug_assert!({
            let c_mat = code.to_matrix();
            let t = adj.canonical_rep().to_matrix();
            let v = galois::residual(&c_mat, &t).expect("widths agree");
            galois::bool_mul(&v, &t).expect("inner dims agree") == c_mat
        });
    }
    Ok(ok)
}

/// Composition `g ∘ f` for `f` out of a source of width `n` and `g` out of
/// the image width of `f`. On generator matrices this is the Boolean
/// product `[g][f]`: generator `k` of the composite is the union of the
/// `f`-generators that `g`'s generator `k` indexes.
pub fn compose(f: &MorphismRep, g: &MorphismRep) -> Result<MorphismRep> {
    if g.source_n() != f.len() {
        return Err(Error::domain(format!(
            "composition mismatch: outer source width {} vs inner image width {}",
            g.source_n(),
            f.len()
        )));
    }
    let product = galois::bool_mul(&g.to_matrix(), &f.to_matrix())?;
    Ok(MorphismRep::from_matrix(&product))
}

/// Restricts a factorization morphism along the reduction of its source:
/// replays the deletion sequence of `code.reduce()`, re-rooting the
/// generators before each deletion and intersecting them with the surviving
/// columns. Returns the reduced source and the restricted representation,
/// which is again a factorization morphism with the same image class.
pub fn bmf_reduce_source(code: &Code, rep: &MorphismRep) -> Result<(Code, MorphismRep)> {
    if !is_bmf(code, rep)? {
        return Err(Error::domain(
            "source reduction is only defined for factorization morphisms".to_string(),
        ));
    }
    let reduction = code.reduce();
    let mut cur_code = code.clone();
    let mut cur_rep = canonical_representative(code, rep)?;
    for step in &reduction.steps {
        cur_rep = canonical_representative(&cur_code, &cur_rep)?;
        let taus: Vec<Mask> = cur_rep
            .taus()
            .iter()
            .map(|t| t.delete_and_pack(step.index))
            .collect();
        cur_code = cur_code.delete_neuron(step.index)?;
        cur_rep = MorphismRep::new(cur_code.n(), taus)?;
    }
    debug_assert_eq!(cur_code, reduction.code);
    let final_rep = canonical_representative(&cur_code, &cur_rep)?;
    debug_assert!(is_bmf(&cur_code, &final_rep).unwrap_or(false));
    Ok((cur_code, final_rep))
}

/// Drops redundant image neurons of a factorization morphism out of a
/// reduced code until the image is reduced, backtracking over deletion
/// orders. Dropping a redundant image neuron does not always preserve the
/// factorization property — a generator can be the unique cover of some
/// source neuron even though its image column is redundant — so this can
/// fail outright; the error then reports that no deletion order works.
pub fn bmf_reduce_target(code: &Code, rep: &MorphismRep) -> Result<MorphismRep> {
    if !code.is_reduced() {
        return Err(Error::domain(
            "target reduction expects a reduced source code".to_string(),
        ));
    }
    if !is_bmf(code, rep)? {
        return Err(Error::domain(
            "target reduction is only defined for factorization morphisms".to_string(),
        ));
    }
    let canon = canonical_representative(code, rep)?;
    let mut dead: BTreeSet<Vec<Mask>> = BTreeSet::new();
    match slim_search(code, canon.taus().to_vec(), &mut dead)? {
        Some(taus) => MorphismRep::new(code.n(), taus),
        None => Err(Error::domain(
            "no deletion order of redundant image neurons preserves the factorization"
                .to_string(),
        )),
    }
}

/// Cap on distinct generator subsequences a single target reduction may
/// abandon before giving up.
const SLIM_STATE_CAP: usize = 10_000;

fn slim_search(
    code: &Code,
    taus: Vec<Mask>,
    dead: &mut BTreeSet<Vec<Mask>>,
) -> Result<Option<Vec<Mask>>> {
    let rep = MorphismRep::new(code.n(), taus.clone())?;
    let (image, _) = apply(code, &rep)?;
    let redundant: Vec<usize> = (1..=image.n())
        .filter(|&j| {
            matches!(
                image.neuron_status(j).expect("index in range"),
                NeuronStatus::Redundant(_)
            )
        })
        .collect();
    if redundant.is_empty() {
        return Ok(Some(taus));
    }
    for j in redundant {
        let slim: Vec<Mask> = taus
            .iter()
            .enumerate()
            .filter(|(k, _)| k + 1 != j)
            .map(|(_, t)| *t)
            .collect();
        if dead.contains(&slim) {
            continue;
        }
        if dead.len() >= SLIM_STATE_CAP {
            return Err(Error::resource(
                "target reduction abandoned too many deletion orders".to_string(),
            ));
        }
        let slim_rep = MorphismRep::new(code.n(), slim.clone())?;
        if is_bmf(code, &slim_rep)? {
            if let Some(done) = slim_search(code, slim.clone(), dead)? {
                return Ok(Some(done));
            }
        }
        dead.insert(slim);
    }
    Ok(None)
}
