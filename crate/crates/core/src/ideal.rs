//! Canonical forms of vanishing ideals.
//!
//! A squarefree pseudomonomial `x^sigma (1-x)^tau` (with `sigma` and `tau`
//! disjoint) evaluates to 1 at a word `c` exactly when `sigma ⊆ c` and
//! `tau ∩ c = ∅`. The canonical form of a code is the set of
//! divisibility-minimal squarefree pseudomonomials vanishing on it. Two
//! completion operations fall out of the canonical form by filtering on
//! factor degrees; the matching fixpoint closures are implemented here too,
//! as an independent route to the same codes.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::bits::{all_masks, Mask};
use crate::code::Code;
use crate::error::{Error, Result};

/// Width beyond which the `3^n` candidate scan and `2^n` zero-set scan are
/// refused.
const SCAN_CAP: usize = 20;

/// A squarefree pseudomonomial `x^sigma (1-x)^tau`, `sigma ∩ tau = ∅`.
/// The empty product (both sets empty) is the constant 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pseudomonomial {
    sigma: Mask,
    tau: Mask,
}

impl Pseudomonomial {
    pub fn new(sigma: Mask, tau: Mask) -> Result<Pseudomonomial> {
        if sigma.intersects(tau) {
            return Err(Error::domain(format!(
                "x^{sigma} (1-x)^{tau} is not squarefree: the factor sets overlap"
            )));
        }
        Ok(Pseudomonomial { sigma, tau })
    }

    pub const ONE: Pseudomonomial = Pseudomonomial {
        sigma: Mask::EMPTY,
        tau: Mask::EMPTY,
    };

    pub fn sigma(&self) -> Mask {
        self.sigma
    }

    pub fn tau(&self) -> Mask {
        self.tau
    }

    pub fn degree(&self) -> usize {
        self.sigma.len() + self.tau.len()
    }

    /// Evaluation at a word.
    pub fn eval(&self, c: Mask) -> bool {
        self.sigma.is_subset(c) && !self.tau.intersects(c)
    }

    /// True when this evaluates to 0 on every codeword.
    pub fn vanishes_on(&self, code: &Code) -> bool {
        code.words().all(|c| !self.eval(c))
    }

    /// Divisibility of squarefree pseudomonomials is containment of both
    /// factor sets.
    pub fn divides(&self, other: &Pseudomonomial) -> bool {
        self.sigma.is_subset(other.sigma) && self.tau.is_subset(other.tau)
    }
}

impl Ord for Pseudomonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.sigma.0, self.tau.0).cmp(&(
            other.degree(),
            other.sigma.0,
            other.tau.0,
        ))
    }
}

impl PartialOrd for Pseudomonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for Pseudomonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&crate::text::pseudomonomial_string(self))
    }
}

impl std::fmt::Debug for Pseudomonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

/// The separator of two squarefree pseudomonomials: indices where one has a
/// positive factor and the other the matching negative factor.
pub fn separator(p: &Pseudomonomial, q: &Pseudomonomial) -> Mask {
    p.sigma.inter(q.tau).union(p.tau.inter(q.sigma))
}

/// A canonical form: the minimal squarefree pseudomonomials vanishing on
/// some code over `[n]`. Ordered by (degree, packed factor sets).
#[derive(Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    n: usize,
    elements: BTreeSet<Pseudomonomial>,
}

/// Why a set of pseudomonomials fails to be a canonical form.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CanonicalViolation {
    /// The first element divides the second.
    Divides(Pseudomonomial, Pseudomonomial),
    /// The pair has a singleton separator but no element divides the
    /// squarefree part of their product.
    MissingWitness(Pseudomonomial, Pseudomonomial),
}

impl CanonicalForm {
    /// Validates an arbitrary element set with [`is_canonical`] before
    /// accepting it.
    pub fn from_elements<I: IntoIterator<Item = Pseudomonomial>>(
        n: usize,
        elements: I,
    ) -> Result<CanonicalForm> {
        let set: BTreeSet<Pseudomonomial> = elements.into_iter().collect();
        let as_vec: Vec<Pseudomonomial> = set.iter().copied().collect();
        if let Some(v) = is_canonical(&as_vec) {
            return Err(Error::domain(format!(
                "not a canonical form: {}",
                describe_violation(&v)
            )));
        }
        Ok(CanonicalForm { n, elements: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = &Pseudomonomial> {
        self.elements.iter()
    }

    pub fn contains(&self, p: &Pseudomonomial) -> bool {
        self.elements.contains(p)
    }

    /// Printing syntax lines, one element per line in sorted order.
    pub fn lines(&self) -> Vec<String> {
        self.elements
            .iter()
            .map(crate::text::pseudomonomial_string)
            .collect()
    }
}

impl std::fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CF(n={}, {{{}}})", self.n, self.lines().join(", "))
    }
}

fn describe_violation(v: &CanonicalViolation) -> String {
    match v {
        CanonicalViolation::Divides(p, q) => format!("{p} divides {q}"),
        CanonicalViolation::MissingWitness(p, q) => format!(
            "{p} and {q} have a singleton separator but no witness divides their product"
        ),
    }
}

fn check_scan_width(n: usize, what: &str) -> Result<()> {
    if n > SCAN_CAP {
        Err(Error::resource(format!(
            "{what} over {n} neurons needs an exponential scan; the cap is {SCAN_CAP}"
        )))
    } else {
        Ok(())
    }
}

/// The canonical form of the vanishing ideal of `code`: all squarefree
/// candidates scanned in degree order, keeping the vanishing ones no kept
/// element divides. For the empty code every polynomial vanishes and the
/// constant 1 is the single minimal element.
pub fn canonical_form(code: &Code) -> Result<CanonicalForm> {
    let n = code.n();
    check_scan_width(n, "canonical form")?;
    let mut candidates: Vec<Pseudomonomial> = Vec::new();
    for sigma in all_masks(n) {
        let complement = sigma.complement(n);
        let mut tau = complement.0;
        loop {
            candidates.push(Pseudomonomial {
                sigma,
                tau: Mask(tau),
            });
            if tau == 0 {
                break;
            }
            tau = (tau - 1) & complement.0;
        }
    }
    candidates.sort();
    let mut kept: Vec<Pseudomonomial> = Vec::new();
    for cand in candidates {
        if kept.iter().any(|k| k.divides(&cand)) {
            continue;
        }
        if cand.vanishes_on(code) {
            kept.push(cand);
        }
    }
    Ok(CanonicalForm {
        n,
        elements: kept.into_iter().collect(),
    })
}

/// Checks minimality plus the separator criterion: a finite set of
/// squarefree pseudomonomials is a canonical form of its zero set exactly
/// when no element divides another and every pair with a singleton
/// separator `{i}` has a third element dividing their product with the
/// factor `x_i (1-x_i)` removed. Returns the violation, or `None` when the
/// set is canonical.
pub fn is_canonical(elements: &[Pseudomonomial]) -> Option<CanonicalViolation> {
    for (a, b) in elements.iter().tuple_combinations() {
        if a.divides(b) {
            return Some(CanonicalViolation::Divides(*a, *b));
        }
        if b.divides(a) {
            return Some(CanonicalViolation::Divides(*b, *a));
        }
    }
    for (a, b) in elements.iter().tuple_combinations() {
        let sep = separator(a, b);
        if sep.len() != 1 {
            continue;
        }
        let quotient_sigma = a.sigma.union(b.sigma).minus(sep);
        let quotient_tau = a.tau.union(b.tau).minus(sep);
        let witnessed = elements.iter().any(|r| {
            r.sigma.is_subset(quotient_sigma) && r.tau.is_subset(quotient_tau)
        });
        if !witnessed {
            return Some(CanonicalViolation::MissingWitness(*a, *b));
        }
    }
    None
}

/// The words of `[n]` on which every element of `elements` vanishes.
pub fn code_of_cf(elements: &[Pseudomonomial], n: usize) -> Result<Code> {
    check_scan_width(n, "zero set")?;
    Code::new(
        n,
        all_masks(n).filter(|&c| elements.iter().all(|p| !p.eval(c))),
    )
}

/// Canonical form of the intersection completion: keep the elements with at
/// most one negative factor. The input must be a canonical form.
pub fn intersection_completion_cf(cf: &CanonicalForm) -> CanonicalForm {
    CanonicalForm {
        n: cf.n,
        elements: cf
            .elements
            .iter()
            .filter(|p| p.tau.len() <= 1)
            .copied()
            .collect(),
    }
}

/// Canonical form of the union completion: keep the elements with at most
/// one positive factor. The input must be a canonical form.
pub fn union_completion_cf(cf: &CanonicalForm) -> CanonicalForm {
    CanonicalForm {
        n: cf.n,
        elements: cf
            .elements
            .iter()
            .filter(|p| p.sigma.len() <= 1)
            .copied()
            .collect(),
    }
}

/// Least superset of the code closed under pairwise intersection. This is
/// the fixpoint route, independent of canonical forms.
pub fn closure_intersection(code: &Code) -> Code {
    closure_by(code, Mask::inter)
}

/// Least superset of the code closed under pairwise union.
pub fn closure_union(code: &Code) -> Code {
    closure_by(code, Mask::union)
}

fn closure_by(code: &Code, op: fn(Mask, Mask) -> Mask) -> Code {
    let mut words: BTreeSet<Mask> = code.words().collect();
    let mut frontier: Vec<Mask> = words.iter().copied().collect();
    while let Some(w) = frontier.pop() {
        let fresh: Vec<Mask> = words
            .iter()
            .map(|&v| op(v, w))
            .filter(|m| !words.contains(m))
            .collect();
        for m in fresh {
            if words.insert(m) {
                frontier.push(m);
            }
        }
    }
    Code::new(code.n(), words).expect("closure stays inside the ambient set")
}

/// `intersection_completion_cf` evaluated back to a code; the closure
/// fixpoint is the oracle this is tested against.
pub fn intersection_completion(code: &Code) -> Result<Code> {
    let cf = canonical_form(code)?;
    let filtered: Vec<Pseudomonomial> =
        intersection_completion_cf(&cf).elements.into_iter().collect();
    code_of_cf(&filtered, code.n())
}

/// `union_completion_cf` evaluated back to a code.
pub fn union_completion(code: &Code) -> Result<Code> {
    let cf = canonical_form(code)?;
    let filtered: Vec<Pseudomonomial> =
        union_completion_cf(&cf).elements.into_iter().collect();
    code_of_cf(&filtered, code.n())
}

/// True when the code equals its intersection closure.
pub fn is_intersection_complete(code: &Code) -> bool {
    closure_intersection(code) == *code
}

/// True when the code equals its union closure.
pub fn is_union_complete(code: &Code) -> bool {
    closure_union(code) == *code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::code_on;

    fn pm(sigma: &[usize], tau: &[usize]) -> Pseudomonomial {
        Pseudomonomial::new(
            Mask::from_indices(sigma.iter().copied()),
            Mask::from_indices(tau.iter().copied()),
        )
        .unwrap()
    }

    fn example() -> Code {
        code_on(4, &[&[], &[1, 2], &[2, 3], &[3, 4], &[1, 2, 3], &[2, 3, 4], &[1, 2, 3, 4]])
    }

    #[test]
    fn squarefree_enforced() {
        assert!(Pseudomonomial::new(Mask::singleton(1), Mask::singleton(1)).is_err());
    }

    #[test]
    fn evaluation() {
        let p = pm(&[2], &[1, 3]);
        assert!(p.eval(Mask::from_indices([2, 4])));
        assert!(!p.eval(Mask::from_indices([1, 2])));
        assert!(!p.eval(Mask::EMPTY));
        assert!(Pseudomonomial::ONE.eval(Mask::EMPTY));
    }

    #[test]
    fn canonical_form_of_the_example() {
        let cf = canonical_form(&example()).unwrap();
        let expect: BTreeSet<Pseudomonomial> = [
            pm(&[4], &[3]),
            pm(&[1], &[2]),
            pm(&[2], &[1, 3]),
            pm(&[3], &[2, 4]),
        ]
        .into_iter()
        .collect();
        assert_eq!(cf.elements, expect);
    }

    #[test]
    fn canonical_form_edge_codes() {
        // one word: the two monomials x1, x2 cut out {∅}
        let cf = canonical_form(&code_on(2, &[&[]])).unwrap();
        let expect: BTreeSet<Pseudomonomial> = [pm(&[1], &[]), pm(&[2], &[])].into_iter().collect();
        assert_eq!(cf.elements, expect);
        // the full cube has an ideal with no squarefree elements at all
        assert!(canonical_form(&Code::cube(3)).unwrap().is_empty());
        // the empty code: everything vanishes, 1 is the single minimal element
        let empty_cf = canonical_form(&Code::empty(3)).unwrap();
        assert_eq!(empty_cf.len(), 1);
        assert!(empty_cf.contains(&Pseudomonomial::ONE));
    }

    #[test]
    fn separator_cases() {
        let p = pm(&[1], &[2]);
        assert_eq!(separator(&p, &pm(&[2, 3], &[])), Mask::singleton(2));
        assert_eq!(separator(&p, &p), Mask::EMPTY);
        assert_eq!(separator(&p, &pm(&[2], &[1])), Mask::from_indices([1, 2]));
    }

    #[test]
    fn canonicality_criterion() {
        // a genuine canonical form passes
        let cf = canonical_form(&example()).unwrap();
        let elems: Vec<_> = cf.elements().copied().collect();
        assert_eq!(is_canonical(&elems), None);
        // divisibility violation
        let v = is_canonical(&[pm(&[1], &[]), pm(&[1, 2], &[])]);
        assert!(matches!(v, Some(CanonicalViolation::Divides(_, _))));
        // singleton separator with no witness: x1(1-x2), x2(1-x3) need
        // x1(1-x3) or a divisor of it
        let v = is_canonical(&[pm(&[1], &[2]), pm(&[2], &[3])]);
        assert!(matches!(v, Some(CanonicalViolation::MissingWitness(_, _))));
        // adding the witness repairs it
        let v = is_canonical(&[pm(&[1], &[2]), pm(&[2], &[3]), pm(&[1], &[3])]);
        assert_eq!(v, None);
    }

    #[test]
    fn completions_of_the_example() {
        let cf = canonical_form(&example()).unwrap();
        let icf = intersection_completion_cf(&cf);
        let expect: BTreeSet<Pseudomonomial> =
            [pm(&[4], &[3]), pm(&[1], &[2])].into_iter().collect();
        assert_eq!(icf.elements, expect);
        // every element of this canonical form has one positive factor
        let ucf = union_completion_cf(&cf);
        assert_eq!(ucf.elements, cf.elements);
        // the evaluated intersection completion adds exactly {2} and {3}
        let completed = intersection_completion(&example()).unwrap();
        let by_closure = closure_intersection(&example());
        assert_eq!(completed, by_closure);
        assert_eq!(completed.len(), 9);
        assert!(completed.contains(Mask::singleton(2)));
        assert!(completed.contains(Mask::singleton(3)));
    }

    #[test]
    fn closures_fixpoint() {
        let c = code_on(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(
            closure_intersection(&c),
            code_on(3, &[&[2], &[1, 2], &[2, 3]])
        );
        let u = code_on(2, &[&[1], &[2]]);
        assert_eq!(closure_union(&u), code_on(2, &[&[1], &[2], &[1, 2]]));
        assert!(is_intersection_complete(&closure_intersection(&example())));
        assert!(is_union_complete(&closure_union(&example())));
        assert!(closure_intersection(&Code::empty(3)).is_empty());
    }

    #[test]
    fn zero_set_scan() {
        let z = code_of_cf(&[pm(&[1], &[])], 2).unwrap();
        assert_eq!(z, code_on(2, &[&[], &[2]]));
        assert!(code_of_cf(&[], 21).is_err());
    }

    #[test]
    fn trunk_roots_equal_intersection_closure() {
        // the nonempty trunks of a code are in bijection with the words of
        // its intersection closure, via the root map
        let c = example();
        let roots: BTreeSet<Mask> = c
            .enumerate_trunks()
            .iter()
            .map(|t| crate::code::family_root(t.iter(), c.n()))
            .collect();
        let closure: BTreeSet<Mask> = closure_intersection(&c).words().collect();
        assert_eq!(roots, closure);
    }
}
