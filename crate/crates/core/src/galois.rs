//! The Galois connection carried by a binary matrix.
//!
//! Multiplication over the Boolean semiring (OR of AND) makes an `r x n`
//! matrix `H` into a pair of order-preserving maps: the lower adjoint
//! `F(x) = xH` sends `x ⊆ [r]` to the union of the rows it indexes, and the
//! upper adjoint `G(y)` collects the rows contained in `y ⊆ [n]`. The pair
//! satisfies `F(a) ⊆ b  iff  a ⊆ G(b)`, which yields residuation: `B : A`
//! is the largest solution `X` of `XA ⊆ B`, and `XA = B` is solvable at all
//! exactly when the residual solves it.

use crate::bits::Mask;
use crate::code::Code;
use crate::error::{Error, Result};
use crate::ideal::closure_union;
use crate::matrix::BitMatrix;

/// Boolean matrix product: entry `(i, k)` is `OR_j a_ij AND b_jk`. An inner
/// dimension of zero yields the zero matrix.
pub fn bool_mul(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix> {
    if a.cols() != b.rows() {
        return Err(Error::domain(format!(
            "inner dimensions differ: {}x{} times {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let rows = (0..a.rows()).map(|i| f_map_unchecked(b, a.row(i))).collect();
    BitMatrix::from_rows(b.cols(), rows)
}

fn check_vector(width: usize, x: Mask, side: &str) -> Result<()> {
    if x.is_subset(Mask::full(width)) {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "vector {x} does not fit the {side} of width {width}"
        )))
    }
}

fn f_map_unchecked(h: &BitMatrix, x: Mask) -> Mask {
    let mut out = Mask::EMPTY;
    for j in x.iter() {
        out = out.union(h.row(j - 1));
    }
    out
}

/// Lower adjoint: `x ⊆ [r]` to the union of the rows of `h` it indexes.
pub fn f_map(h: &BitMatrix, x: Mask) -> Result<Mask> {
    check_vector(h.rows(), x, "row space")?;
    Ok(f_map_unchecked(h, x))
}

/// Upper adjoint: bit `j` of the result is set when row `j` of `h` is
/// contained in `y`. Also expressible through complements as
/// `¬((¬y) Hᵀ)`; the two routes agree and the computed one is checked
/// against the other in the verification suites.
pub fn g_map(h: &BitMatrix, y: Mask) -> Result<Mask> {
    check_vector(h.cols(), y, "column space")?;
    let mut out = Mask::EMPTY;
    for j in 0..h.rows() {
        if h.row(j).is_subset(y) {
            out = out.insert(j + 1);
        }
    }
    debug_assert_eq!(out, g_map_by_complement(h, y).expect("same width"));
    Ok(out)
}

/// The complement-transpose route to the upper adjoint, kept as an
/// independent implementation for cross-checking.
pub fn g_map_by_complement(h: &BitMatrix, y: Mask) -> Result<Mask> {
    check_vector(h.cols(), y, "column space")?;
    let not_y = y.complement(h.cols());
    let ht = h.transpose();
    let product = f_map_unchecked(&ht, not_y);
    Ok(product.complement(h.rows()))
}

/// The residual `B : A`, the entry-wise largest `X` with `X A ⊆ B`.
/// `B` is `m x n`, `A` is `r x n`, the result is `m x r`; its row `i` is the
/// upper adjoint of `A` applied to row `i` of `B`. A zero-row `A` makes
/// every entry 1.
pub fn residual(b: &BitMatrix, a: &BitMatrix) -> Result<BitMatrix> {
    if b.cols() != a.cols() {
        return Err(Error::domain(format!(
            "residual needs matching column counts: {}x{} by {}x{}",
            b.rows(),
            b.cols(),
            a.rows(),
            a.cols()
        )));
    }
    let rows: Vec<Mask> = (0..b.rows())
        .map(|i| g_map(a, b.row(i)).expect("widths agree"))
        .collect();
    BitMatrix::from_rows(a.rows(), rows)
}

/// `V` is `H`-maximal when it is the largest matrix with its product:
/// `V = (V H) : H`.
pub fn is_h_maximal(v: &BitMatrix, h: &BitMatrix) -> Result<bool> {
    let product = bool_mul(v, h)?;
    Ok(residual(&product, h)? == *v)
}

/// The image of the lower adjoint over all of `2^[r]`: every union of rows,
/// including the empty union.
pub fn image_f(h: &BitMatrix) -> Code {
    let mut base = Code::from_matrix(h);
    base = Code::new(
        h.cols(),
        base.words().chain(std::iter::once(Mask::EMPTY)),
    )
    .expect("rows fit the width");
    closure_union(&base)
}

/// The image of the upper adjoint over all of `2^[n]`, enumerated directly.
pub fn image_g(h: &BitMatrix) -> Result<Code> {
    if h.cols() > 20 {
        return Err(Error::resource(format!(
            "image of the upper adjoint scans 2^{} vectors; the cap is 20",
            h.cols()
        )));
    }
    Code::new(
        h.rows(),
        crate::bits::all_masks(h.cols()).map(|y| g_map(h, y).expect("width fits")),
    )
}

/// A matrix bundled with its two adjoints.
pub struct GaloisPair {
    h: BitMatrix,
}

impl GaloisPair {
    pub fn new(h: BitMatrix) -> GaloisPair {
        GaloisPair { h }
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.h
    }

    pub fn lower(&self, x: Mask) -> Result<Mask> {
        f_map(&self.h, x)
    }

    pub fn upper(&self, y: Mask) -> Result<Mask> {
        g_map(&self.h, y)
    }

    /// The defining adjunction.
    pub fn adjoint_pair_holds(&self, a: Mask, b: Mask) -> Result<bool> {
        Ok(self.lower(a)?.is_subset(b) == a.is_subset(self.upper(b)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::code_on;
    use crate::text::parse_matrix;

    fn h_example() -> BitMatrix {
        parse_matrix("1100\n0110\n0011\n").unwrap()
    }

    #[test]
    fn bool_mul_basics() {
        let h = h_example();
        let i3 = BitMatrix::identity(3);
        assert_eq!(bool_mul(&i3, &h).unwrap(), h);
        let ones_row = parse_matrix("11").unwrap();
        let ones_col = parse_matrix("1\n1").unwrap();
        assert_eq!(
            bool_mul(&ones_row, &ones_col).unwrap(),
            parse_matrix("1").unwrap()
        );
        assert!(bool_mul(&h, &h).is_err());
    }

    #[test]
    fn zero_inner_dimension_gives_zeros() {
        let a = BitMatrix::zeros(2, 0);
        let b = BitMatrix::zeros(0, 3);
        let p = bool_mul(&a, &b).unwrap();
        assert_eq!((p.rows(), p.cols()), (2, 3));
        assert!(p.is_zero());
    }

    #[test]
    fn lower_adjoint_unions_rows() {
        let h = h_example();
        assert_eq!(
            f_map(&h, Mask::from_indices([1, 2])).unwrap(),
            Mask::from_indices([1, 2, 3])
        );
        assert_eq!(f_map(&h, Mask::EMPTY).unwrap(), Mask::EMPTY);
        assert!(f_map(&h, Mask::singleton(4)).is_err());
    }

    #[test]
    fn upper_adjoint_collects_contained_rows() {
        let h = h_example();
        assert_eq!(
            g_map(&h, Mask::full(4)).unwrap(),
            Mask::from_indices([1, 2, 3])
        );
        assert_eq!(
            g_map(&h, Mask::from_indices([1, 2, 3])).unwrap(),
            Mask::from_indices([1, 2])
        );
        assert_eq!(
            g_map(&h, Mask::from_indices([1, 2, 3])).unwrap(),
            g_map_by_complement(&h, Mask::from_indices([1, 2, 3])).unwrap()
        );
    }

    #[test]
    fn residual_against_identity_is_identity() {
        let b = parse_matrix("110\n011\n").unwrap();
        let r = residual(&b, &BitMatrix::identity(3)).unwrap();
        assert_eq!(r, b);
        // a zero-row A puts no constraint on X, so the residual is all ones
        let a0 = BitMatrix::zeros(0, 3);
        let r0 = residual(&b, &a0).unwrap();
        assert_eq!((r0.rows(), r0.cols()), (2, 0));
    }

    #[test]
    fn residuation_law() {
        // X A ⊆ B iff X ⊆ B : A, spot-checked
        let a = parse_matrix("110\n011\n").unwrap();
        let b = parse_matrix("111\n110\n").unwrap();
        let r = residual(&b, &a).unwrap();
        assert!(bool_mul(&r, &a).unwrap().le(&b));
    }

    #[test]
    fn h_maximality_of_the_display_pair() {
        let h = h_example();
        let v = parse_matrix("000\n100\n010\n001\n110\n011\n111\n").unwrap();
        assert!(is_h_maximal(&v, &h).unwrap());
        // swapping the last row for 101 keeps the product but loses maximality
        let v_prime = parse_matrix("000\n100\n010\n001\n110\n011\n101\n").unwrap();
        assert_eq!(
            bool_mul(&v_prime, &h).unwrap(),
            bool_mul(&v, &h).unwrap()
        );
        assert!(!is_h_maximal(&v_prime, &h).unwrap());
    }

    #[test]
    fn images() {
        let h = h_example();
        let expect = code_on(
            4,
            &[&[], &[1, 2], &[2, 3], &[3, 4], &[1, 2, 3], &[2, 3, 4], &[1, 2, 3, 4]],
        );
        assert_eq!(image_f(&h), expect);
        // single row: the empty union and the row itself
        let single = parse_matrix("110").unwrap();
        assert_eq!(image_f(&single), code_on(3, &[&[], &[1, 2]]));
        let g_im = image_g(&h).unwrap();
        assert_eq!(g_im.n(), 3);
        assert!(g_im.contains(Mask::from_indices([1, 2, 3])));
    }

    #[test]
    fn adjunction_spot_checks() {
        let pair = GaloisPair::new(h_example());
        for a in crate::bits::all_masks(3) {
            for b in crate::bits::all_masks(4) {
                assert!(pair.adjoint_pair_holds(a, b).unwrap());
            }
        }
    }
}
