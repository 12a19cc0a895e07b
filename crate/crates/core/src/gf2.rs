//! Bit-packed GF(2) vectors and matrices.
//!
//! A vector of width `w <= 64` is a single `u64` with bit `i` holding
//! coordinate `i`. A matrix is stored row-major, one word per row, so row
//! operations are single XORs. Everything here is an immutable value;
//! operations return new values.

use crate::error::Error;
use std::fmt;

/// Maximum number of coordinates in a vector (columns in a matrix).
pub const MAX_WIDTH: usize = 64;

/// A GF(2) vector with a fixed width. Bits above `width` are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    width: usize,
    bits: u64,
}

impl Gf2Vector {
    pub fn zero(width: usize) -> Self {
        assert!(width <= MAX_WIDTH);
        Gf2Vector { width, bits: 0 }
    }

    pub fn from_bits(width: usize, bits: u64) -> Self {
        assert!(width <= MAX_WIDTH);
        let mask = if width == 64 { !0 } else { (1u64 << width) - 1 };
        Gf2Vector { width, bits: bits & mask }
    }

    /// Parses a coordinate string such as "01011" (coordinate 1 first).
    pub fn parse(s: &str) -> Result<Self, Error> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        let mut bits = 0u64;
        let mut width = 0;
        for ch in s.chars() {
            match ch {
                '0' => width += 1,
                '1' => {
                    bits |= 1 << width;
                    width += 1;
                }
                ' ' | ',' => continue,
                other => return Err(Error::Parse(format!("bad vector character {other:?}"))),
            }
            if width > MAX_WIDTH {
                return Err(Error::Parse("vector wider than 64".into()));
            }
        }
        Ok(Gf2Vector { width, bits })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.width);
        (self.bits >> i) & 1 == 1
    }

    pub fn set(&self, i: usize, value: bool) -> Self {
        assert!(i < self.width);
        let bits = if value { self.bits | (1 << i) } else { self.bits & !(1 << i) };
        Gf2Vector { width: self.width, bits }
    }

    pub fn xor(&self, other: &Self) -> Self {
        assert_eq!(self.width, other.width);
        Gf2Vector { width: self.width, bits: self.bits ^ other.bits }
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.width).map(move |i| (self.bits >> i) & 1 == 1)
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({self})")
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// A GF(2) matrix with up to 64 columns, stored one `u64` word per row.
/// Bit `j` of word `i` is the entry in row `i`, column `j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    row_bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(cols <= MAX_WIDTH);
        Gf2Matrix { rows, cols, row_bits: vec![0; rows] }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_WIDTH);
        Gf2Matrix { rows: n, cols: n, row_bits: (0..n).map(|i| 1u64 << i).collect() }
    }

    pub fn from_rows(cols: usize, row_bits: Vec<u64>) -> Self {
        assert!(cols <= MAX_WIDTH);
        let mask = if cols == 64 { !0 } else { (1u64 << cols) - 1 };
        assert!(row_bits.iter().all(|r| r & !mask == 0), "row bits exceed column count");
        Gf2Matrix { rows: row_bits.len(), cols, row_bits }
    }

    /// Parses rows separated by whitespace, e.g. "011 101".
    pub fn parse(s: &str) -> Result<Self, Error> {
        let mut rows = Vec::new();
        let mut cols = None;
        for line in s.split_whitespace() {
            let v = Gf2Vector::parse(line)?;
            match cols {
                None => cols = Some(v.width()),
                Some(c) if c != v.width() => {
                    return Err(Error::Parse("ragged matrix rows".into()))
                }
                _ => {}
            }
            rows.push(v.bits());
        }
        let cols = cols.ok_or_else(|| Error::Parse("empty matrix".into()))?;
        Ok(Gf2Matrix::from_rows(cols, rows))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        (self.row_bits[i] >> j) & 1 == 1
    }

    pub fn set(&self, i: usize, j: usize, value: bool) -> Self {
        assert!(i < self.rows && j < self.cols);
        let mut m = self.clone();
        if value {
            m.row_bits[i] |= 1 << j;
        } else {
            m.row_bits[i] &= !(1 << j);
        }
        m
    }

    pub fn row(&self, i: usize) -> Gf2Vector {
        Gf2Vector { width: self.cols, bits: self.row_bits[i] }
    }

    pub fn row_words(&self) -> &[u64] {
        &self.row_bits
    }

    /// The column as a packed word: bit `i` is the entry in row `i`.
    pub fn col_bits(&self, j: usize) -> u64 {
        assert!(j < self.cols);
        let mut bits = 0u64;
        for i in 0..self.rows {
            bits |= ((self.row_bits[i] >> j) & 1) << i;
        }
        bits
    }

    pub fn col(&self, j: usize) -> Gf2Vector {
        Gf2Vector { width: self.rows, bits: self.col_bits(j) }
    }

    /// All columns as packed words, in column order.
    pub fn col_words(&self) -> Vec<u64> {
        (0..self.cols).map(|j| self.col_bits(j)).collect()
    }

    pub fn transpose(&self) -> Gf2Matrix {
        assert!(self.rows <= MAX_WIDTH);
        Gf2Matrix { rows: self.cols, cols: self.rows, row_bits: self.col_words() }
    }

    pub fn append_col(&self, col: u64) -> Gf2Matrix {
        assert!(self.cols < MAX_WIDTH);
        let mut m = Gf2Matrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            m.row_bits[i] = self.row_bits[i] | (((col >> i) & 1) << self.cols);
        }
        m
    }

    pub fn append_row(&self, row: u64) -> Gf2Matrix {
        let mut m = self.clone();
        let mask = if self.cols == 64 { !0 } else { (1u64 << self.cols) - 1 };
        assert!(row & !mask == 0);
        m.row_bits.push(row);
        m.rows += 1;
        m
    }

    /// Keeps the columns at the given (strictly increasing) positions.
    pub fn select_cols(&self, keep: &[usize]) -> Gf2Matrix {
        let mut m = Gf2Matrix::zero(self.rows, keep.len());
        for (new_j, &old_j) in keep.iter().enumerate() {
            assert!(old_j < self.cols);
            for i in 0..self.rows {
                m.row_bits[i] |= ((self.row_bits[i] >> old_j) & 1) << new_j;
            }
        }
        m
    }

    /// GF(2) row rank.
    pub fn rank(&self) -> usize {
        let mut basis: Vec<u64> = Vec::with_capacity(self.rows.min(self.cols));
        for &row in &self.row_bits {
            let mut v = row;
            for &b in &basis {
                let pivot = b & b.wrapping_neg(); // lowest set bit of the basis row
                if v & pivot != 0 {
                    v ^= b;
                }
            }
            if v != 0 {
                basis.push(v);
            }
        }
        basis.len()
    }

    /// Reduced row echelon form plus the pivot column positions (strictly
    /// increasing). Zero rows are kept at the bottom so the shape is
    /// unchanged; the row space is preserved.
    pub fn rref(&self) -> (Gf2Matrix, Vec<usize>) {
        let mut rows = self.row_bits.clone();
        let mut pivots = Vec::new();
        let mut next = 0usize;
        for j in 0..self.cols {
            let Some(p) = (next..self.rows).find(|&i| (rows[i] >> j) & 1 == 1) else {
                continue;
            };
            rows.swap(next, p);
            let pivot_row = rows[next];
            for (i, r) in rows.iter_mut().enumerate() {
                if i != next && (*r >> j) & 1 == 1 {
                    *r ^= pivot_row;
                }
            }
            pivots.push(j);
            next += 1;
            if next == self.rows {
                break;
            }
        }
        (Gf2Matrix { rows: self.rows, cols: self.cols, row_bits: rows }, pivots)
    }

    /// Reduced row echelon form with zero rows dropped.
    pub fn rref_compact(&self) -> (Gf2Matrix, Vec<usize>) {
        let (m, pivots) = self.rref();
        let rank = pivots.len();
        let row_bits = m.row_bits[..rank].to_vec();
        (Gf2Matrix { rows: rank, cols: self.cols, row_bits }, pivots)
    }

    /// Whether `v` is a GF(2) combination of the rows.
    pub fn in_row_space(&self, v: &Gf2Vector) -> Result<bool, Error> {
        if v.width() != self.cols {
            return Err(Error::WidthMismatch { got: v.width(), expected: self.cols });
        }
        let (r, pivots) = self.rref_compact();
        let mut bits = v.bits();
        for (i, &j) in pivots.iter().enumerate() {
            if (bits >> j) & 1 == 1 {
                bits ^= r.row_bits[i];
            }
        }
        Ok(bits == 0)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row(i))?;
        }
        Ok(())
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

/// Inserts `v` into an incremental GF(2) basis kept in reduced form.
/// Returns true if `v` was independent of the basis (and was added).
pub(crate) fn basis_insert(basis: &mut Vec<u64>, v: u64) -> bool {
    let mut v = v;
    for &b in basis.iter() {
        let pivot = b & b.wrapping_neg();
        if v & pivot != 0 {
            v ^= b;
        }
    }
    if v == 0 {
        return false;
    }
    basis.push(v);
    true
}

/// Rank of a set of packed column words.
pub(crate) fn word_rank(words: impl IntoIterator<Item = u64>) -> usize {
    let mut basis = Vec::new();
    for w in words {
        basis_insert(&mut basis, w);
    }
    basis.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn alpha5_matrix() -> Gf2Matrix {
        // [I_5 | D] with D rows 01111 / 10111 / 11010 / 11110 / 00011
        Gf2Matrix::parse(
            "1000001111
             0100010111
             0010011010
             0001011110
             0000100011",
        )
        .unwrap()
    }

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(Gf2Matrix::identity(3).rank(), 3);
        assert_eq!(Gf2Matrix::zero(2, 2).rank(), 0);
    }

    #[test]
    fn rank_alpha5_display_is_five() {
        assert_eq!(alpha5_matrix().rank(), 5);
    }

    #[test]
    fn rref_identity_fixed() {
        let id = Gf2Matrix::identity(4);
        let (r, pivots) = id.rref();
        assert_eq!(r, id);
        assert_eq!(pivots, vec![0, 1, 2, 3]);
    }

    #[test]
    fn rref_duplicate_row_drops_rank() {
        let m = Gf2Matrix::parse("101 101 011").unwrap();
        let (_, pivots) = m.rref();
        assert_eq!(pivots.len(), 2);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rref_standard_form_unchanged() {
        // The P_9* style display [I_5 | D] is already reduced.
        let m = Gf2Matrix::parse(
            "100000111
             010001011
             001001101
             000101111
             000011100",
        )
        .unwrap();
        let (r, pivots) = m.rref();
        assert_eq!(r, m);
        assert_eq!(pivots, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn in_row_space_rows_and_zero() {
        let m = alpha5_matrix();
        for i in 0..m.rows() {
            assert!(m.in_row_space(&m.row(i)).unwrap());
        }
        assert!(m.in_row_space(&Gf2Vector::zero(m.cols())).unwrap());
        assert!(matches!(
            m.in_row_space(&Gf2Vector::zero(3)),
            Err(Error::WidthMismatch { .. })
        ));
    }

    /// Exhaustive oracle: membership by enumerating all 2^rows combinations.
    fn in_row_space_naive(m: &Gf2Matrix, v: u64) -> bool {
        (0..1u64 << m.rows()).any(|pick| {
            let mut acc = 0u64;
            for i in 0..m.rows() {
                if (pick >> i) & 1 == 1 {
                    acc ^= m.row_words()[i];
                }
            }
            acc == v
        })
    }

    #[test]
    fn all_ones_in_alpha5_row_space() {
        // Expected value frozen from the exhaustive combination oracle.
        let m = alpha5_matrix();
        let ones = Gf2Vector::from_bits(10, (1 << 10) - 1);
        assert!(in_row_space_naive(&m, ones.bits()));
        assert!(m.in_row_space(&ones).unwrap());
    }

    proptest! {
        #[test]
        fn rank_equals_rref_rank(rows in 1usize..8, cols in 1usize..16, seed in any::<u64>()) {
            let mut s = seed;
            let mask = (1u64 << cols) - 1;
            let bits = (0..rows).map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (s >> 7) & mask
            }).collect();
            let m = Gf2Matrix::from_rows(cols, bits);
            let (r, pivots) = m.rref();
            prop_assert_eq!(m.rank(), pivots.len());
            prop_assert_eq!(r.rank(), m.rank());
            // rref is idempotent
            let (rr, pivots2) = r.rref();
            prop_assert_eq!(rr, r);
            prop_assert_eq!(pivots2, pivots);
        }

        #[test]
        fn in_row_space_matches_enumeration(rows in 1usize..7, cols in 1usize..10,
                                            seed in any::<u64>(), probe in any::<u64>()) {
            let mut s = seed;
            let mask = (1u64 << cols) - 1;
            let bits = (0..rows).map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (s >> 9) & mask
            }).collect();
            let m = Gf2Matrix::from_rows(cols, bits);
            let v = probe & mask;
            prop_assert_eq!(
                m.in_row_space(&Gf2Vector::from_bits(cols, v)).unwrap(),
                in_row_space_naive(&m, v)
            );
        }
    }

    #[test]
    fn rank_transpose_500_random() {
        // 500 random matrices up to 12x24.
        let mut s = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s
        };
        for _ in 0..500 {
            let rows = 1 + (next() % 12) as usize;
            let cols = 1 + (next() % 24) as usize;
            let mask = (1u64 << cols) - 1;
            let bits = (0..rows).map(|_| next() & mask).collect();
            let m = Gf2Matrix::from_rows(cols, bits);
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn vector_parse_and_display_round_trip() {
        let v = Gf2Vector::parse("[01011]").unwrap();
        assert_eq!(v.width(), 5);
        assert_eq!(v.to_string(), "01011");
        assert_eq!(v.weight(), 3);
    }
}
