//! Randomized algebra laws: set operations on packed masks, text format
//! round-trips, and the residual adjunction on small matrices.

use proptest::prelude::*;

use codemat::bits::Mask;
use codemat::code::Code;
use codemat::galois;
use codemat::ideal::Pseudomonomial;
use codemat::matrix::{row_string, BitMatrix};
use codemat::text;

const N: usize = 8;

fn mask() -> impl Strategy<Value = Mask> {
    (0u128..(1u128 << N)).prop_map(Mask)
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(|(r, c)| {
            proptest::collection::vec(0u128..(1u128 << c), r)
                .prop_map(move |rows| {
                    BitMatrix::from_rows(c, rows.into_iter().map(Mask).collect()).unwrap()
                })
        })
}

fn matrix_text(m: &BitMatrix) -> String {
    (0..m.rows())
        .map(|i| row_string(m.row(i), m.cols()) + "\n")
        .collect()
}

proptest! {
    #[test]
    fn mask_lattice_laws(a in mask(), b in mask(), c in mask()) {
        prop_assert!(a.inter(b).is_subset(a));
        prop_assert!(a.is_subset(a.union(b)));
        prop_assert_eq!(a.union(b).minus(b), a.minus(b));
        prop_assert_eq!(a.inter(b.union(c)), a.inter(b).union(a.inter(c)));
        prop_assert_eq!(a.complement(N).complement(N), a);
        prop_assert_eq!(a.is_subset(b) && b.is_subset(a), a == b);
    }

    #[test]
    fn mask_index_round_trip(a in mask()) {
        prop_assert_eq!(Mask::from_indices(a.iter()), a);
        prop_assert_eq!(a.iter().count(), a.len());
        for i in a.iter() {
            prop_assert!(a.contains(i));
            prop_assert_eq!(a.remove(i).insert(i), a);
        }
    }

    #[test]
    fn matrix_text_round_trip(m in matrix(6, 8)) {
        let parsed = text::parse_matrix(&matrix_text(&m)).unwrap();
        prop_assert_eq!(parsed, m);
    }

    #[test]
    fn code_text_round_trip(m in matrix(6, 8)) {
        let code = Code::from_matrix(&m);
        let parsed = text::parse_code(&matrix_text(&code.to_matrix())).unwrap();
        prop_assert_eq!(parsed, code);
    }

    #[test]
    fn pseudomonomial_text_round_trip(sigma in mask(), raw_tau in mask()) {
        let tau = raw_tau.minus(sigma);
        prop_assume!(!sigma.is_empty() || !tau.is_empty());
        let p = Pseudomonomial::new(sigma, tau).unwrap();
        let printed = text::pseudomonomial_string(&p);
        let parsed = text::parse_pseudomonomial(&printed, 1).unwrap();
        prop_assert_eq!(parsed, p);
    }

    #[test]
    fn boolean_product_is_associative(
        bits_a in proptest::collection::vec(0u128..16, 1..=4),
        bits_b in proptest::collection::vec(0u128..16, 4),
        bits_c in proptest::collection::vec(0u128..16, 4),
    ) {
        let a = BitMatrix::from_rows(4, bits_a.into_iter().map(Mask).collect()).unwrap();
        let b = BitMatrix::from_rows(4, bits_b.into_iter().map(Mask).collect()).unwrap();
        let c = BitMatrix::from_rows(4, bits_c.into_iter().map(Mask).collect()).unwrap();
        let left = galois::bool_mul(&galois::bool_mul(&a, &b).unwrap(), &c).unwrap();
        let right = galois::bool_mul(&a, &galois::bool_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn residual_is_the_largest_left_factor(
        bits_b in proptest::collection::vec(0u128..32, 1..=4),
        bits_a in proptest::collection::vec(0u128..32, 3),
        bits_x in proptest::collection::vec(0u128..8, 1..=4),
    ) {
        let rows = bits_b.len().min(bits_x.len());
        let b = BitMatrix::from_rows(5, bits_b.into_iter().take(rows).map(Mask).collect()).unwrap();
        let a = BitMatrix::from_rows(5, bits_a.into_iter().map(Mask).collect()).unwrap();
        let v = galois::residual(&b, &a).unwrap();
        prop_assert!(galois::bool_mul(&v, &a).unwrap().le(&b));
        let x = BitMatrix::from_rows(3, bits_x.into_iter().take(rows).map(Mask).collect()).unwrap();
        if galois::bool_mul(&x, &a).unwrap().le(&b) {
            prop_assert!(x.le(&v));
        }
    }
}
