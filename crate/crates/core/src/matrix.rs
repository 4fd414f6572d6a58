//! Binary matrices with bit-packed rows.
//!
//! A `BitMatrix` is an ordered list of rows (duplicates allowed), each a
//! [`Mask`] over the column set. Column `j` of the display corresponds to
//! neuron `j` when the matrix presents a code: row `1100` is the codeword
//! `12`.

use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::bits::{Mask, MAX_NEURONS};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Mask>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> BitMatrix {
        assert!(cols <= MAX_NEURONS);
        BitMatrix {
            rows,
            cols,
            data: vec![Mask::EMPTY; rows],
        }
    }

    pub fn identity(n: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i] = Mask::singleton(i + 1);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Mask>) -> Result<BitMatrix> {
        if cols > MAX_NEURONS {
            return Err(Error::domain(format!(
                "width {cols} exceeds the supported maximum of {MAX_NEURONS} columns"
            )));
        }
        let ambient = Mask::full(cols);
        for (k, r) in rows.iter().enumerate() {
            if !r.is_subset(ambient) {
                return Err(Error::domain(format!(
                    "row {} has entries beyond column {cols}",
                    k + 1
                )));
            }
        }
        Ok(BitMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    /// Row `i`, 0-based.
    pub fn row(&self, i: usize) -> Mask {
        self.data[i]
    }

    pub fn row_slice(&self) -> &[Mask] {
        &self.data
    }

    /// Entry at row `i`, column `j`, both 0-based.
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].contains(j + 1)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols);
        self.data[i] = if value {
            self.data[i].insert(j + 1)
        } else {
            self.data[i].remove(j + 1)
        };
    }

    /// Column `j` (0-based) as a mask over row indices (bit `i` holds row
    /// `i + 1`). Only meaningful while the matrix has at most 128 rows.
    pub fn column(&self, j: usize) -> Mask {
        assert!(self.rows <= MAX_NEURONS);
        let mut c = Mask::EMPTY;
        for (i, r) in self.data.iter().enumerate() {
            if r.contains(j + 1) {
                c = c.insert(i + 1);
            }
        }
        c
    }

    pub fn transpose(&self) -> BitMatrix {
        assert!(self.rows <= MAX_NEURONS, "transpose needs at most 128 rows");
        let mut out = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.data[i].iter() {
                out.data[j - 1] = out.data[j - 1].insert(i + 1);
            }
        }
        out
    }

    /// Entry-wise Boolean complement within the matrix width.
    pub fn complement(&self) -> BitMatrix {
        BitMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.complement(self.cols)).collect(),
        }
    }

    /// Entry-wise `self ≤ other` in the Boolean order (every 1 of `self` is a
    /// 1 of `other`). Dimensions must match.
    pub fn le(&self, other: &BitMatrix) -> bool {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .all(|(a, b)| a.is_subset(*b))
    }

    /// Keeps the columns listed in `kept` (1-based, in order), relabeling
    /// them to `1..=kept.len()`.
    pub fn select_columns(&self, kept: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, kept.len());
        for i in 0..self.rows {
            for (new_j, &old_j) in kept.iter().enumerate() {
                if self.data[i].contains(old_j) {
                    out.data[i] = out.data[i].insert(new_j + 1);
                }
            }
        }
        out
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.data {
            for j in 1..=self.cols {
                f.write_str(if r.contains(j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

/// Renders a single row as a `0`/`1` string of the given width.
pub fn row_string(row: Mask, cols: usize) -> String {
    (1..=cols)
        .map(|j| if row.contains(j) { '1' } else { '0' })
        .collect()
}

impl Serialize for BitMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for r in &self.data {
            seq.serialize_element(&row_string(*r, self.cols))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[&str]) -> BitMatrix {
        crate::text::parse_matrix(&rows.join("\n")).map(|mm| {
            assert_eq!(mm.cols(), cols);
            mm
        })
        .unwrap()
    }

    #[test]
    fn transpose_involution() {
        let a = m(4, &["1100", "0110", "0011"]);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().rows(), 4);
        assert!(a.transpose().get(0, 0));
        assert!(!a.transpose().get(3, 0));
    }

    #[test]
    fn complement_and_order() {
        let a = m(3, &["101", "000"]);
        let c = a.complement();
        assert_eq!(format!("{c}"), "010\n111\n");
        assert!(a.le(&m(3, &["111", "010"])));
        assert!(!m(3, &["111", "010"]).le(&a));
    }

    #[test]
    fn select_columns_relabels() {
        let a = m(4, &["1100", "0111"]);
        let s = a.select_columns(&[1, 2, 4]);
        assert_eq!(format!("{s}"), "110\n011\n");
    }

    #[test]
    fn identity_rows() {
        let i = BitMatrix::identity(3);
        assert_eq!(format!("{i}"), "100\n010\n001\n");
    }
}
