//! Self-check suite: every structural law the library relies on, run
//! against seeded random instances, plus the generators the checks share.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::{all_masks, Mask};
use crate::code::{self, Code, NeuronStatus};
use crate::covering;
use crate::galois;
use crate::ideal::{self, Pseudomonomial};
use crate::matrix::BitMatrix;
use crate::morphism::{self, MorphismRep};
use crate::poset;
use crate::rank;

pub mod gen {
    //! Seeded generators for random codes, matrices, and morphism
    //! representations. All sampling flows through a caller-provided
    //! ChaCha stream so every suite is reproducible from one seed.

    use std::collections::BTreeSet;

    use rand::Rng;
    use rand_chacha::ChaCha8Rng;

    use crate::bits::Mask;
    use crate::code::Code;
    use crate::ideal;
    use crate::matrix::BitMatrix;
    use crate::morphism::MorphismRep;

    /// A nonempty random code over exactly `n` neurons (columns may still
    /// be trivial or redundant).
    pub fn random_code(rng: &mut ChaCha8Rng, n: usize) -> Code {
        assert!(n <= 20, "generator is meant for desk-scale widths");
        let total: u128 = 1u128 << n;
        let m = rng.gen_range(1..=total.min(64) as usize);
        let mut words = BTreeSet::new();
        for _ in 0..m {
            words.insert(Mask(rng.gen_range(0..total)));
        }
        Code::new(n, words).expect("sampled words fit the width")
    }

    /// A random 0/1 matrix with each entry set independently.
    pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if rng.gen_bool(0.5) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Rejection-samples a code over exactly `n` neurons that is already
    /// reduced.
    pub fn random_reduced_code(rng: &mut ChaCha8Rng, n: usize) -> Code {
        loop {
            let c = random_code(rng, n);
            if c.is_reduced() {
                return c;
            }
        }
    }

    /// Rejection-samples a reduced intersection-complete code over at most
    /// `n_max` neurons: closes a random code under intersections and keeps
    /// the result when it is reduced.
    pub fn random_intersection_complete_reduced(rng: &mut ChaCha8Rng, n_max: usize) -> Code {
        loop {
            let n = rng.gen_range(1..=n_max);
            let closed = ideal::closure_intersection(&random_code(rng, n));
            if closed.is_reduced() {
                return closed;
            }
        }
    }

    /// A random morphism representation with `r` generators over `[n]`.
    pub fn random_rep(rng: &mut ChaCha8Rng, n: usize, r: usize) -> MorphismRep {
        let total: u128 = 1u128 << n;
        let taus = (0..r).map(|_| Mask(rng.gen_range(0..total)));
        MorphismRep::new(n, taus).expect("sampled generators fit the width")
    }

    /// Widens a code by one column whose firing pattern is determined by
    /// the existing columns (a duplicate, a two-column product, or a
    /// constant), so the new neuron is never essential.
    pub fn widen_with_dependent_column(rng: &mut ChaCha8Rng, code: &Code) -> Code {
        let n = code.n();
        let new = n + 1;
        let fire: Box<dyn Fn(Mask) -> bool> = match rng.gen_range(0..3u32) {
            0 if n >= 1 => {
                let j = rng.gen_range(1..=n);
                Box::new(move |w: Mask| w.contains(j))
            }
            2 if n >= 2 => {
                let a = rng.gen_range(1..=n);
                let mut b = rng.gen_range(1..=n);
                while b == a {
                    b = rng.gen_range(1..=n);
                }
                let sigma = Mask::from_indices([a, b]);
                Box::new(move |w: Mask| sigma.is_subset(w))
            }
            _ => Box::new(|_| true),
        };
        let widened = code.words().map(|w| if fire(w) { w.insert(new) } else { w });
        Code::new(new, widened.collect::<Vec<_>>()).expect("one extra column stays in range")
    }
}

/// Result of one named law check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

fn stream(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn matrix_from_bits(rows: usize, cols: usize, bits: u32) -> BitMatrix {
    let mut m = BitMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if bits >> (i * cols + j) & 1 == 1 {
                m.set(i, j, true);
            }
        }
    }
    m
}

fn check_trunk_root_laws(seed: u64) -> String {
    let mut rng = stream(seed, 1);
    let mut pairs = 0usize;
    for _ in 0..120 {
        let n = rng.gen_range(1..=6);
        let c = gen::random_code(&mut rng, n);
        let trunks: Vec<BTreeSet<Mask>> = c.enumerate_trunks().into_iter().collect();
        for (a, s) in trunks.iter().enumerate() {
            for t in &trunks[a..] {
                let rs = code::family_root(s, n);
                let rt = code::family_root(t, n);
                let meet: BTreeSet<Mask> = s.intersection(t).copied().collect();
                let rm = code::family_root(&meet, n);
                assert!(
                    rs.union(rt).is_subset(rm),
                    "the root of a trunk intersection must contain the union of the roots"
                );
                assert!(rs.inter(rt).is_subset(rs.union(rt)));
                pairs += 1;
            }
        }
    }
    format!("{pairs} trunk pairs over 120 codes")
}

fn check_misc_trunk_laws(seed: u64) -> String {
    let mut rng = stream(seed, 2);
    let mut containments = 0usize;
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let c = gen::random_code(&mut rng, n);
        for sigma in all_masks(n) {
            assert!(
                sigma.is_subset(c.relative_root(sigma)),
                "every set sits inside its root"
            );
        }
        for t in c.enumerate_trunks() {
            assert_eq!(
                c.trunk(code::family_root(&t, n)),
                t,
                "a trunk is recovered as the trunk of its root"
            );
        }
        for w in c.words() {
            assert_eq!(c.relative_root(w), w, "codewords are their own roots");
        }
        for i in 1..=n {
            if c.trunk(Mask::singleton(i)).is_empty() {
                continue;
            }
            for j in 1..=n {
                if j == i || c.trunk(Mask::singleton(j)).is_empty() {
                    continue;
                }
                let ti = c.trunk(Mask::singleton(i));
                let tj = c.trunk(Mask::singleton(j));
                let meet: BTreeSet<Mask> = ti.intersection(&tj).copied().collect();
                let shrinks = meet != ti;
                let grows = c
                    .relative_root(Mask::singleton(i))
                    .is_proper_subset(c.relative_root(Mask::from_indices([i, j])));
                assert_eq!(
                    shrinks, grows,
                    "trunk shrinking and root growth must coincide (neurons {i},{j})"
                );
                containments += 1;
            }
        }
    }
    format!("{containments} ordered neuron pairs over 100 codes")
}

fn check_redundancy_oracle(seed: u64) -> String {
    let mut rng = stream(seed, 3);
    let mut neurons = 0usize;
    for _ in 0..100 {
        let n = rng.gen_range(1..=5);
        let c = gen::random_code(&mut rng, n);
        for i in 1..=n {
            let status = c.neuron_status(i).expect("index in range");
            if status == NeuronStatus::Trivial {
                continue;
            }
            let brute = code::redundant_by_exhaustion(&c, i);
            match status {
                NeuronStatus::Redundant(w) => {
                    assert!(brute.is_some(), "the single root test missed neuron {i}");
                    assert!(!w.contains(i));
                    assert_eq!(
                        c.trunk(w),
                        c.trunk(Mask::singleton(i)),
                        "returned witness must reproduce the trunk of neuron {i}"
                    );
                }
                NeuronStatus::Essential => {
                    assert!(
                        brute.is_none(),
                        "the single root test wrongly kept neuron {i}: witness {:?}",
                        brute
                    );
                }
                NeuronStatus::Trivial => unreachable!(),
            }
            neurons += 1;
        }
    }
    format!("{neurons} nontrivial neurons against the exhaustive witness search")
}

fn check_reduce_properties(seed: u64) -> String {
    let mut rng = stream(seed, 4);
    for _ in 0..150 {
        let n = rng.gen_range(1..=6);
        let c = gen::random_code(&mut rng, n);
        let red = c.reduce();
        assert!(red.code.is_reduced(), "reduction must land on a reduced code");
        let again = red.code.reduce();
        assert!(again.steps.is_empty(), "reduction must be idempotent");
        assert_eq!(again.code, red.code);
        let product = galois::bool_mul(&c.to_matrix(), &red.projection).expect("widths agree");
        assert_eq!(
            Code::from_matrix(&product),
            red.code,
            "the projection matrix must carry the code onto its reduction"
        );
        assert_eq!(red.code.len(), c.len(), "reduction is injective on codewords");
        let images: BTreeSet<Mask> = c.words().map(|w| red.map_word(w)).collect();
        assert_eq!(images, red.code.word_set().clone());
    }
    "150 codes reduced, replayed, and factored".to_string()
}

fn check_trunk_injection(seed: u64) -> String {
    let mut rng = stream(seed, 5);
    for _ in 0..150 {
        let n = rng.gen_range(1..=6);
        let c = gen::random_code(&mut rng, n);
        assert!(
            c.len() <= c.trunk_count(),
            "a code can never have more words than trunks"
        );
    }
    "150 codes: word count bounded by trunk count".to_string()
}

fn check_label_orbit_invariance(seed: u64) -> String {
    let mut rng = stream(seed, 6);
    for _ in 0..60 {
        let n = rng.gen_range(1..=5);
        let c = gen::random_code(&mut rng, n);
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.shuffle(&mut rng);
        let permuted = Code::new(
            n,
            c.words()
                .map(|w| Mask::from_indices(w.iter().map(|b| perm[b - 1]))),
        )
        .expect("permutation preserves the width");
        assert_eq!(
            c.label_string(),
            permuted.label_string(),
            "column permutations must not move the canonical label"
        );
        assert!(c.is_isomorphic(&permuted));
        let widened = gen::widen_with_dependent_column(&mut rng, &c);
        assert_eq!(
            c.label_string(),
            widened.label_string(),
            "a dependent extra column must not move the canonical label"
        );
    }
    "60 codes under column permutation and dependent widening".to_string()
}

fn check_completion_oracles(seed: u64) -> String {
    let mut rng = stream(seed, 7);
    for _ in 0..200 {
        let n = rng.gen_range(1..=6);
        let c = gen::random_code(&mut rng, n);
        assert_eq!(
            ideal::intersection_completion(&c).expect("completion in range"),
            ideal::closure_intersection(&c),
            "algebraic and set-theoretic intersection completions disagree"
        );
        assert_eq!(
            ideal::union_completion(&c).expect("completion in range"),
            ideal::closure_union(&c),
            "algebraic and set-theoretic union completions disagree"
        );
    }
    "200 codes, both completions against the fixpoint oracles".to_string()
}

fn check_completion_degree_criterion(seed: u64) -> String {
    let mut rng = stream(seed, 8);
    for _ in 0..150 {
        let n = rng.gen_range(1..=6);
        let c = gen::random_code(&mut rng, n);
        let cf = ideal::canonical_form(&c).expect("width in range");
        assert_eq!(
            ideal::is_intersection_complete(&c),
            cf.elements().all(|p| p.tau().len() <= 1),
            "intersection completeness must match the negative degrees"
        );
        assert_eq!(
            ideal::is_union_complete(&c),
            cf.elements().all(|p| p.sigma().len() <= 1),
            "union completeness must match the positive degrees"
        );
    }
    "150 codes against the generator degree criterion".to_string()
}

fn check_cf_canonicality(seed: u64) -> String {
    let mut rng = stream(seed, 9);
    for _ in 0..150 {
        let n = rng.gen_range(1..=6);
        let c = gen::random_code(&mut rng, n);
        let cf = ideal::canonical_form(&c).expect("width in range");
        let elements: Vec<Pseudomonomial> = cf.elements().cloned().collect();
        assert!(
            ideal::is_canonical(&elements).is_none(),
            "the computed canonical form failed its own validity test"
        );
        assert_eq!(
            ideal::code_of_cf(&elements, n).expect("width matches"),
            c,
            "the canonical form must cut out exactly the code"
        );
    }
    "150 canonical forms validated and inverted".to_string()
}

fn check_cf_minimal_and_complete(seed: u64) -> String {
    let mut rng = stream(seed, 10);
    let mut vanishing = 0usize;
    for _ in 0..60 {
        let n = rng.gen_range(1..=4);
        let c = gen::random_code(&mut rng, n);
        let cf = ideal::canonical_form(&c).expect("width in range");
        for p in cf.elements() {
            assert!(p.vanishes_on(&c), "a canonical generator must vanish on the code");
            assert!(
                !cf.elements().any(|q| q != p && q.divides(p)),
                "no canonical generator may divide another"
            );
        }
        for sigma in all_masks(n) {
            for tau in all_masks(n) {
                if sigma.intersects(tau) {
                    continue;
                }
                let p = Pseudomonomial::new(sigma, tau).expect("disjoint supports");
                if p.vanishes_on(&c) {
                    assert!(
                        cf.elements().any(|q| q.divides(&p)),
                        "vanishing {:?} escaped every canonical generator",
                        p
                    );
                    vanishing += 1;
                }
            }
        }
    }
    format!("{vanishing} vanishing pseudomonomials all divisible, 60 codes")
}

fn check_roots_of_trunks(seed: u64) -> String {
    let mut rng = stream(seed, 11);
    for _ in 0..100 {
        let n = rng.gen_range(1..=5);
        let c = gen::random_code(&mut rng, n);
        let roots: BTreeSet<Mask> = c
            .enumerate_trunks()
            .iter()
            .map(|t| code::family_root(t, n))
            .collect();
        let completion = Code::new(n, roots).expect("roots fit the width");
        assert_eq!(
            completion,
            ideal::closure_intersection(&c),
            "the trunk roots must enumerate the intersection completion"
        );
    }
    "100 codes: trunk roots equal the intersection completion".to_string()
}

fn check_galois_adjunction(seed: u64) -> String {
    let mut rng = stream(seed, 12);
    let mut cases = 0usize;
    for round in 0..33 {
        let top = if round < 25 { 4 } else { 6 };
        let r = rng.gen_range(1..=top);
        let n = rng.gen_range(1..=top);
        let h = gen::random_matrix(&mut rng, r, n);
        for a in all_masks(r) {
            for b in all_masks(n) {
                let lhs = galois::f_map(&h, a).expect("row mask fits").is_subset(b);
                let rhs = a.is_subset(galois::g_map(&h, b).expect("column mask fits"));
                assert_eq!(lhs, rhs, "adjunction failed at a={:?}, b={:?}", a, b);
                cases += 1;
            }
        }
    }
    format!("{cases} (a, b) pairs across 33 matrices")
}

fn check_galois_triple_composition(seed: u64) -> String {
    let mut rng = stream(seed, 13);
    for _ in 0..30 {
        let r = rng.gen_range(1..=5);
        let n = rng.gen_range(1..=5);
        let h = gen::random_matrix(&mut rng, r, n);
        for a in all_masks(r) {
            let fa = galois::f_map(&h, a).expect("fits");
            let gfa = galois::g_map(&h, fa).expect("fits");
            assert_eq!(galois::f_map(&h, gfa).expect("fits"), fa, "FGF must equal F");
        }
        for b in all_masks(n) {
            let gb = galois::g_map(&h, b).expect("fits");
            let fgb = galois::f_map(&h, gb).expect("fits");
            assert_eq!(galois::g_map(&h, fgb).expect("fits"), gb, "GFG must equal G");
        }
    }
    "30 matrices, all arguments".to_string()
}

fn check_residual_maximality(seed: u64) -> String {
    let mut rng = stream(seed, 14);
    let mut competitors = 0usize;
    for _ in 0..40 {
        let r = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=3);
        let a = gen::random_matrix(&mut rng, r, n);
        let b = gen::random_matrix(&mut rng, m, n);
        let x = galois::residual(&b, &a).expect("widths agree");
        assert!(
            galois::bool_mul(&x, &a).expect("inner dims agree").le(&b),
            "the residual must stay below the target"
        );
        for bits in 0..(1u32 << (m * r)) {
            let cand = matrix_from_bits(m, r, bits);
            if galois::bool_mul(&cand, &a).expect("inner dims agree").le(&b) {
                assert!(
                    cand.le(&x),
                    "residual is not maximal: a larger feasible factor exists"
                );
                competitors += 1;
            }
        }
    }
    format!("{competitors} feasible competitors dominated, 40 instances")
}

fn check_plemmons_solvability(seed: u64) -> String {
    let mut rng = stream(seed, 15);
    let mut solvable = 0usize;
    for _ in 0..40 {
        let r = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=3);
        let h = gen::random_matrix(&mut rng, r, n);
        let c = gen::random_matrix(&mut rng, m, n);
        let v = galois::residual(&c, &h).expect("widths agree");
        let closed = galois::bool_mul(&v, &h).expect("inner dims agree") == c;
        let exists = (0..(1u32 << (m * r))).any(|bits| {
            galois::bool_mul(&matrix_from_bits(m, r, bits), &h).expect("inner dims agree") == c
        });
        assert_eq!(
            closed, exists,
            "the residual test must decide exact solvability"
        );
        if closed {
            solvable += 1;
        }
    }
    format!("40 instances, {solvable} exactly solvable")
}

fn check_g_map_formulas(seed: u64) -> String {
    let mut rng = stream(seed, 16);
    for _ in 0..30 {
        let r = rng.gen_range(1..=6);
        let n = rng.gen_range(1..=6);
        let h = gen::random_matrix(&mut rng, r, n);
        for y in all_masks(n) {
            assert_eq!(
                galois::g_map(&h, y).expect("fits"),
                galois::g_map_by_complement(&h, y).expect("fits"),
                "the two upper adjoint formulas disagree"
            );
        }
    }
    "30 matrices, every column mask".to_string()
}

fn check_galois_monotonicity(seed: u64) -> String {
    let mut rng = stream(seed, 17);
    for _ in 0..20 {
        let r = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=4);
        let h = gen::random_matrix(&mut rng, r, n);
        for a in all_masks(r) {
            for extra in all_masks(r) {
                let fa = galois::f_map(&h, a).expect("fits");
                let fbig = galois::f_map(&h, a.union(extra)).expect("fits");
                assert!(fa.is_subset(fbig), "the lower map must be monotone");
            }
        }
        for b in all_masks(n) {
            for extra in all_masks(n) {
                let gb = galois::g_map(&h, b).expect("fits");
                let gbig = galois::g_map(&h, b.union(extra)).expect("fits");
                assert!(gb.is_subset(gbig), "the upper map must be monotone");
            }
        }
    }
    "20 matrices, all nested argument pairs".to_string()
}

fn check_rep_canonical_bijection(seed: u64) -> String {
    let mut rng = stream(seed, 18);
    let mut distinct = 0usize;
    for _ in 0..40 {
        let n = rng.gen_range(1..=5);
        let c = gen::random_code(&mut rng, n);
        let words: Vec<Mask> = c.words().collect();
        let r = rng.gen_range(1..=n + 1);
        let sample = |rng: &mut ChaCha8Rng| {
            let taus = (0..r).map(|_| {
                let w = words[rng.gen_range(0..words.len())];
                Mask(w.0 & rng.gen::<u128>())
            });
            MorphismRep::new(n, taus).expect("subwords fit the width")
        };
        let f = sample(&mut rng);
        let g = sample(&mut rng);
        let cf = morphism::canonical_representative(&c, &f).expect("trunks are nonempty");
        let cg = morphism::canonical_representative(&c, &g).expect("trunks are nonempty");
        assert_eq!(
            morphism::canonical_representative(&c, &cf).expect("still nonempty"),
            cf,
            "canonicalization must be idempotent"
        );
        for w in c.words() {
            assert_eq!(
                f.map_word(w),
                cf.map_word(w),
                "canonicalization must not change the action on the code"
            );
        }
        if cf != cg {
            assert!(
                c.words().any(|w| f.map_word(w) != g.map_word(w)),
                "distinct canonical tuples must act differently on some codeword"
            );
            distinct += 1;
        }
    }
    format!("40 representation pairs, {distinct} canonically distinct")
}

fn check_apply_is_rowwise_adjoint(seed: u64) -> String {
    let mut rng = stream(seed, 19);
    for _ in 0..60 {
        let n = rng.gen_range(1..=6);
        let c = gen::random_code(&mut rng, n);
        let r = rng.gen_range(1..=n + 1);
        let rep = gen::random_rep(&mut rng, n, r);
        let (_, map) = morphism::apply(&c, &rep).expect("source widths agree");
        let t = rep.to_matrix();
        for w in c.words() {
            let expected: Mask = galois::g_map(&t, w).expect("fits");
            assert_eq!(
                map[&w], expected,
                "applying a morphism must agree with the coordinatewise trunk test"
            );
        }
    }
    "60 code/representation pairs".to_string()
}

fn check_bmf_laws(seed: u64) -> String {
    let mut rng = stream(seed, 20);
    let mut steps = 0usize;
    for _ in 0..50 {
        let n = rng.gen_range(2..=5);
        let c = gen::random_reduced_code(&mut rng, n);
        let ident = MorphismRep::identity(n);
        assert!(
            morphism::is_bmf(&c, &ident).expect("identity is canonical-ready"),
            "the identity must always be a factorization morphism"
        );
        for i in covering::free_neurons(&c).expect("code is reduced") {
            let step = covering::covering_map(&c, i).expect("free neuron in range");
            assert!(step.is_bmf_step);
            let (image, _) = morphism::apply(&c, &step.rep).expect("source widths agree");
            assert_eq!(
                image.len(),
                c.len(),
                "a factorization morphism must be injective on codewords"
            );
            let cm = c.to_matrix();
            let t = morphism::canonical_representative(&c, &step.rep)
                .expect("covering generators have nonempty trunks")
                .to_matrix();
            let v = galois::residual(&cm, &t).expect("widths agree");
            assert_eq!(
                galois::bool_mul(&v, &t).expect("inner dims agree"),
                cm,
                "the residual factor must restore the code matrix"
            );
            assert_eq!(
                covering::defect(&step.image) + 1,
                covering::defect(&c),
                "a factorization covering step must lower the defect by exactly one"
            );
            steps += 1;
        }
    }
    format!("{steps} factorization steps over 50 reduced codes")
}

fn check_composition_associativity(seed: u64) -> String {
    let mut rng = stream(seed, 21);
    for _ in 0..40 {
        let n = rng.gen_range(1..=4);
        let r1 = rng.gen_range(1..=4);
        let r2 = rng.gen_range(1..=4);
        let r3 = rng.gen_range(1..=4);
        let f = gen::random_rep(&mut rng, n, r1);
        let g = gen::random_rep(&mut rng, r1, r2);
        let h = gen::random_rep(&mut rng, r2, r3);
        let left = morphism::compose(&morphism::compose(&f, &g).expect("widths chain"), &h)
            .expect("widths chain");
        let right = morphism::compose(&f, &morphism::compose(&g, &h).expect("widths chain"))
            .expect("widths chain");
        assert_eq!(left, right, "composition must be associative");
        for x in all_masks(n) {
            assert_eq!(
                left.map_word(x),
                h.map_word(g.map_word(f.map_word(x))),
                "the composite must act as the chain of actions"
            );
        }
    }
    "40 triples, matrix and pointwise".to_string()
}

fn check_squeeze_and_collision(seed: u64) -> String {
    let mut rng = stream(seed, 22);
    let mut maps = 0usize;
    for _ in 0..60 {
        let n = rng.gen_range(1..=6);
        let c = gen::random_reduced_code(&mut rng, n);
        for i in 1..=n {
            let step = covering::covering_map(&c, i).expect("neuron in range");
            let (_, map) = morphism::apply(&c, &step.rep).expect("source widths agree");
            let t = step.rep.to_matrix();
            let ri = c.relative_root(Mask::singleton(i));
            let mut fibers: BTreeMap<Mask, Vec<Mask>> = BTreeMap::new();
            for w in c.words() {
                let rt = galois::f_map(&t, map[&w]).expect("fits");
                assert!(
                    w.remove(i).is_subset(rt) && rt.is_subset(w),
                    "roundtrip image must sit between the word and the word minus {i}"
                );
                assert_ne!(
                    rt, ri,
                    "the root of the covering neuron may never be a roundtrip image"
                );
                fibers.entry(map[&w]).or_default().push(w);
            }
            for fiber in fibers.values() {
                assert!(fiber.len() <= 2, "covering fibers have at most two words");
                if let [a, b] = fiber[..] {
                    assert_eq!(
                        a.minus(b).union(b.minus(a)),
                        Mask::singleton(i),
                        "merged words must differ exactly at the covering neuron"
                    );
                }
            }
            assert_eq!(
                c.trunk_count(),
                step.image.trunk_count() + 1,
                "every covering step removes exactly one trunk"
            );
            assert!(step.defect_drop <= 1);
            assert_eq!(
                step.defect_drop == 0,
                covering::collision_check(&c, i)
                    .expect("neuron in range")
                    .is_some(),
                "the defect stalls exactly when the collision pair is present"
            );
            maps += 1;
        }
    }
    format!("{maps} covering maps over 60 reduced codes")
}

fn check_covering_bmf_iff_free(seed: u64) -> String {
    let mut rng = stream(seed, 23);
    let mut cases = 0usize;
    let audit = |c: &Code, cases: &mut usize| {
        for i in 1..=c.n() {
            let step = covering::covering_map(c, i).expect("neuron in range");
            let free = c.is_free(i).expect("neuron in range");
            assert_eq!(
                step.is_bmf_step, free,
                "a covering step factors exactly at free neurons"
            );
            assert_eq!(
                morphism::is_bmf(c, &step.rep).expect("generators have nonempty trunks"),
                free,
                "the adjoint roundtrip must agree with freeness"
            );
            *cases += 1;
        }
    };
    for n in 0..=3 {
        for c in code::enumerate_reduced_codes(n).expect("width in range") {
            audit(&c, &mut cases);
        }
    }
    for _ in 0..60 {
        let n = rng.gen_range(4..=5);
        let c = gen::random_reduced_code(&mut rng, n);
        audit(&c, &mut cases);
    }
    format!("{cases} neurons, exhaustive to width 3 plus 60 samples")
}

fn check_second_galois_connection(seed: u64) -> String {
    let mut rng = stream(seed, 24);
    let mut cases = 0usize;
    for _ in 0..25 {
        let n = rng.gen_range(1..=4);
        let c = loop {
            let c = gen::random_code(&mut rng, n);
            if c.len() <= 10 {
                break c;
            }
        };
        let words: Vec<Mask> = c.words().collect();
        for sigma in all_masks(n) {
            let tk = c.trunk(sigma);
            for bits in 0..(1u32 << words.len()) {
                let s: BTreeSet<Mask> = words
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| bits >> k & 1 == 1)
                    .map(|(_, w)| *w)
                    .collect();
                let lhs = s.is_subset(&tk);
                let rhs = sigma.is_subset(code::family_root(&s, n));
                assert_eq!(lhs, rhs, "trunk containment must mirror root containment");
                cases += 1;
            }
        }
        let closed = c
            .enumerate_trunks()
            .iter()
            .all(|t| c.contains(code::family_root(t, n)));
        assert_eq!(
            closed,
            covering::defect(&c) == 0,
            "the maps invert each other exactly on defect-zero codes"
        );
    }
    format!("{cases} (set, subfamily) pairs over 25 codes")
}

fn check_rank_certificates(seed: u64) -> String {
    let mut rng = stream(seed, 25);
    for _ in 0..60 {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=5);
        let m = gen::random_matrix(&mut rng, rows, cols);
        let (r, v, h) = rank::brank_exact(&m).expect("well inside the search gate");
        assert_eq!(v.cols(), r);
        assert_eq!(
            galois::bool_mul(&v, &h).expect("inner dims agree"),
            m,
            "the exact factorization must restore the input"
        );
        let chain = rank::brank_chain(&m, rank::DEFAULT_CHAIN_BUDGET).expect("small instance");
        assert_eq!(
            galois::bool_mul(&chain.factors.0, &chain.factors.1).expect("inner dims agree"),
            m,
            "the chain certificate must restore the input"
        );
        assert!(chain.bound >= r, "no certificate may beat the exact rank");
        let report = rank::brank_bounds(&m);
        assert!(report.best_lower <= r && r <= report.best_upper);
        if let Some(exact) = report.exact {
            assert_eq!(exact, r);
        }
        let vmax = galois::residual(&m, &h).expect("widths agree");
        assert!(v.le(&vmax));
        assert_eq!(galois::bool_mul(&vmax, &h).expect("inner dims agree"), m);
        assert!(galois::is_h_maximal(&vmax, &h).expect("widths agree"));
    }
    "60 matrices: exact, chain, bounds, and residual normalization".to_string()
}

fn check_rank_exact_vs_oracle(seed: u64) -> String {
    let mut rng = stream(seed, 26);
    for _ in 0..60 {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=4);
        let m = gen::random_matrix(&mut rng, rows, cols);
        let (r, _, _) = rank::brank_exact(&m).expect("well inside the search gate");
        assert_eq!(
            r,
            rank::brank_exhaustive(&m).expect("small instance"),
            "cover search and exhaustive factor search disagree"
        );
    }
    "60 matrices against the exhaustive factor search".to_string()
}

fn check_rank_order_laws(seed: u64) -> String {
    let mut rng = stream(seed, 27);
    for _ in 0..60 {
        let n = rng.gen_range(1..=5);
        let c = gen::random_code(&mut rng, n);
        let m = c.to_matrix();
        let (r, _, _) = rank::brank_exact(&m).expect("well inside the search gate");
        assert!(
            rank::mrank_exact(&m).expect("small instance") <= r,
            "the monomial rank may never exceed the Boolean rank"
        );
        let red = c.reduce().code.to_matrix();
        let (rr, _, _) = rank::brank_exact(&red).expect("well inside the search gate");
        assert!(rr <= r, "reduction may never raise the Boolean rank");
    }
    let mut attained = 0usize;
    for _ in 0..40 {
        let c = gen::random_intersection_complete_reduced(&mut rng, 5);
        let m = c.to_matrix();
        let (r, _, _) = rank::brank_exact(&m).expect("well inside the search gate");
        assert_eq!(
            r,
            c.len().min(c.n()),
            "reduced intersection-complete codes must attain the size bound"
        );
        attained += 1;
    }
    format!("60 order comparisons, {attained} size-bound attainments")
}

fn check_poset_edge_laws(_seed: u64) -> String {
    let seeds = code::enumerate_reduced_codes(2).expect("width in range");
    let graph = poset::downset(&seeds, 10_000).expect("seeds are reduced");
    assert!(!graph.truncated);
    for (label, node) in &graph.nodes {
        assert_eq!(
            &node.representative.label_string(),
            label,
            "every node label must match its representative"
        );
    }
    for edge in &graph.edges {
        let parent = &graph.nodes[&edge.from];
        let child = &graph.nodes[&edge.to];
        assert_eq!(
            child.t + 1,
            parent.t,
            "every edge steps the trunk count down by one"
        );
        assert!(child.d <= parent.d && parent.d - child.d <= 1);
        let free = parent
            .representative
            .is_free(edge.neuron)
            .expect("neuron in range");
        assert_eq!(edge.bmf, free, "edge kind must match freeness in the parent");
        let step =
            covering::covering_map(&parent.representative, edge.neuron).expect("neuron in range");
        assert_eq!(
            step.image.label_string(),
            edge.to,
            "replaying the covering step must land on the recorded child"
        );
        if edge.bmf {
            assert_eq!(parent.d, child.d + 1);
        }
    }
    format!(
        "{} nodes and {} edges replayed",
        graph.nodes.len(),
        graph.edges.len()
    )
}

/// Runs every law check against one master seed, converting panics into
/// failed outcomes, and returns the table of results in a fixed order.
pub fn run_all(seed: u64) -> Vec<CheckOutcome> {
    let checks: Vec<(&'static str, fn(u64) -> String)> = vec![
        ("trunk_root_laws", check_trunk_root_laws),
        ("misc_trunk_laws", check_misc_trunk_laws),
        ("redundancy_oracle", check_redundancy_oracle),
        ("reduce_properties", check_reduce_properties),
        ("trunk_injection", check_trunk_injection),
        ("label_orbit_invariance", check_label_orbit_invariance),
        ("completion_oracles", check_completion_oracles),
        ("completion_degree_criterion", check_completion_degree_criterion),
        ("cf_canonicality", check_cf_canonicality),
        ("cf_minimal_and_complete", check_cf_minimal_and_complete),
        ("roots_of_trunks", check_roots_of_trunks),
        ("galois_adjunction", check_galois_adjunction),
        ("galois_triple_composition", check_galois_triple_composition),
        ("residual_maximality", check_residual_maximality),
        ("plemmons_solvability", check_plemmons_solvability),
        ("g_map_formulas", check_g_map_formulas),
        ("galois_monotonicity", check_galois_monotonicity),
        ("rep_canonical_bijection", check_rep_canonical_bijection),
        ("apply_is_rowwise_adjoint", check_apply_is_rowwise_adjoint),
        ("bmf_laws", check_bmf_laws),
        ("composition_associativity", check_composition_associativity),
        ("squeeze_and_collision", check_squeeze_and_collision),
        ("covering_bmf_iff_free", check_covering_bmf_iff_free),
        ("second_galois_connection", check_second_galois_connection),
        ("rank_certificates", check_rank_certificates),
        ("rank_exact_vs_oracle", check_rank_exact_vs_oracle),
        ("rank_order_laws", check_rank_order_laws),
        ("poset_edge_laws", check_poset_edge_laws),
    ];
    checks
        .into_iter()
        .map(|(name, f)| match panic::catch_unwind(AssertUnwindSafe(|| f(seed))) {
            Ok(details) => CheckOutcome {
                name,
                passed: true,
                details,
            },
            Err(payload) => {
                let details = payload
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "check panicked".to_string());
                CheckOutcome {
                    name,
                    passed: false,
                    details,
                }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_law_check_passes() {
        let outcomes = run_all(0xC0DE_C0DE);
        assert_eq!(outcomes.len(), 28);
        for o in &outcomes {
            assert!(o.passed, "{} failed: {}", o.name, o.details);
        }
    }

    #[test]
    fn the_suite_is_deterministic() {
        let a = run_all(7);
        let b = run_all(7);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.name, y.name);
            assert_eq!(x.passed, y.passed);
            assert_eq!(x.details, y.details);
        }
    }
}
