//! The binary matroid value type: a full-row-rank GF(2) matrix with labeled
//! columns. Labels are stable under minors, so element references like
//! "contract 3, delete {7, 8, 10}" stay meaningful after earlier operations.

use crate::error::{Error, Result};
use crate::gf2::{self, Gf2Matrix, Gf2Vector};
use std::collections::BTreeMap;
use std::fmt;

/// A ground-set element. Ids are positive and never renumbered by minors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementId(u32);

impl ElementId {
    pub fn new(id: u32) -> Self {
        assert!(id > 0, "element ids are positive");
        ElementId(id)
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Map from symbolic family names (b_i, a_i, c_i, d_i, e_i, f_i, g_{r,k})
/// to elements of the carrying matroid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FamilyLabeling {
    map: BTreeMap<String, ElementId>,
}

impl FamilyLabeling {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, e: ElementId) {
        let name = name.into();
        let prev = self.map.insert(name.clone(), e);
        assert!(prev.is_none(), "duplicate family label {name}");
    }

    pub fn get(&self, name: &str) -> Option<ElementId> {
        self.map.get(name).copied()
    }

    /// Panicking lookup for labels that are guaranteed by construction.
    pub fn id(&self, name: &str) -> ElementId {
        self.get(name).unwrap_or_else(|| panic!("no family label {name}"))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, ElementId)> {
        self.map.iter().map(|(k, &v)| (k.as_str(), v))
    }
}

/// A rank-r, n-element binary matroid represented by a full-row-rank GF(2)
/// matrix with one labeled column per element. Columns are kept in strictly
/// increasing label order. Immutable; all operations return new values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatroid {
    mat: Gf2Matrix,
    labels: Vec<ElementId>,
    name: Option<String>,
}

impl BinaryMatroid {
    /// Builds a matroid from a matrix, reducing the rows to full row rank.
    /// Columns are labeled 1..n in the given order.
    pub fn from_matrix(m: &Gf2Matrix) -> Result<BinaryMatroid> {
        if m.cols() == 0 {
            return Err(Error::EmptyGroundSet);
        }
        let (reduced, _) = m.rref_compact();
        let labels = (1..=m.cols() as u32).map(ElementId::new).collect();
        Ok(BinaryMatroid { mat: reduced, labels, name: None })
    }

    /// Builds `[I_r | D]` from the D columns given as packed words
    /// (bit i = row i). Elements are labeled 1..n, identity columns first.
    pub fn standard_form(r: usize, d_cols: &[u64]) -> BinaryMatroid {
        let mut m = Gf2Matrix::identity(r);
        for &c in d_cols {
            m = m.append_col(c);
        }
        let mut b = BinaryMatroid::from_matrix(&m).expect("nonempty");
        debug_assert_eq!(b.rank(), r);
        b.name = None;
        b
    }

    /// Parses the D block of a display written row by row ("0111 1011 ...")
    /// and builds `[I_r | D]`.
    pub fn from_display(d_rows: &str) -> BinaryMatroid {
        let d = Gf2Matrix::parse(d_rows).expect("display parses");
        let cols = d.col_words();
        BinaryMatroid::standard_form(d.rows(), &cols)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.mat.rows()
    }

    pub fn size(&self) -> usize {
        self.mat.cols()
    }

    pub fn corank(&self) -> usize {
        self.size() - self.rank()
    }

    pub fn matrix(&self) -> &Gf2Matrix {
        &self.mat
    }

    pub fn labels(&self) -> &[ElementId] {
        &self.labels
    }

    pub fn ground(&self) -> Vec<ElementId> {
        self.labels.clone()
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.labels.binary_search(&e).is_ok()
    }

    pub fn col_index(&self, e: ElementId) -> Result<usize> {
        self.labels.binary_search(&e).map_err(|_| Error::UnknownElement(e.get()))
    }

    fn next_id(&self) -> ElementId {
        ElementId::new(self.labels.last().map_or(1, |e| e.get() + 1))
    }

    /// Column words (bit i = row i) in label order.
    pub fn col_words(&self) -> Vec<u64> {
        self.mat.col_words()
    }

    /// Column values in the coordinates of the reduced representation,
    /// paired with their elements. Together with `rank()` this is the
    /// point-set view of the matroid inside PG(r-1, 2).
    pub fn points(&self) -> Vec<(u64, ElementId)> {
        let words = self.mat.col_words();
        words.into_iter().zip(self.labels.iter().copied()).collect()
    }

    /// GF(2) rank of the columns selected by `s`.
    pub fn rank_of(&self, s: &[ElementId]) -> Result<usize> {
        let mut basis = Vec::new();
        for &e in s {
            let j = self.col_index(e)?;
            gf2::basis_insert(&mut basis, self.mat.col_bits(j));
        }
        Ok(basis.len())
    }

    /// The dual matroid. Each element keeps its id; if the standard form is
    /// `[I_r | D]` the dual is represented by `[transpose(D) | I_{n-r}]`
    /// read against the same element order.
    pub fn dual(&self) -> BinaryMatroid {
        let n = self.size();
        let r = self.rank();
        let rstar = n - r;
        let (reduced, pivots) = self.mat.rref_compact();
        debug_assert_eq!(pivots.len(), r);
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let nonpivots: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
        let mut rows = vec![0u64; rstar];
        for (k, &q) in nonpivots.iter().enumerate() {
            rows[k] |= 1 << q;
            for (i, &p) in pivots.iter().enumerate() {
                if reduced.get(i, q) {
                    rows[k] |= 1 << p;
                }
            }
        }
        let mat = Gf2Matrix::from_rows(n, rows);
        #[cfg(debug_assertions)]
        for i in 0..r {
            for k in 0..rstar {
                debug_assert_eq!(
                    (reduced.row_words()[i] & mat.row_words()[k]).count_ones() % 2,
                    0,
                    "dual rows must be orthogonal to the primal row space"
                );
            }
        }
        // store the reduced form so dualizing twice reproduces the
        // representation exactly, not just up to row operations
        let (mat, _) = mat.rref_compact();
        BinaryMatroid { mat, labels: self.labels.clone(), name: None }
    }

    /// Deletes the elements of `s`. The resulting column set must be nonempty.
    pub fn delete(&self, s: &[ElementId]) -> Result<BinaryMatroid> {
        let mut drop = vec![false; self.size()];
        for &e in s {
            drop[self.col_index(e)?] = true;
        }
        let keep: Vec<usize> = (0..self.size()).filter(|&j| !drop[j]).collect();
        if keep.is_empty() {
            return Err(Error::EmptyGroundSet);
        }
        let labels = keep.iter().map(|&j| self.labels[j]).collect();
        let (mat, _) = self.mat.select_cols(&keep).rref_compact();
        Ok(BinaryMatroid { mat, labels, name: None })
    }

    /// Contracts the elements of `s`. Contracting a loop deletes it;
    /// contracting a non-loop drops the rank by exactly one. Equal to
    /// `dual(delete(dual(M), s))`.
    pub fn contract(&self, s: &[ElementId]) -> Result<BinaryMatroid> {
        for &e in s {
            self.col_index(e)?;
        }
        let mut m = self.clone();
        for &e in s {
            m = m.contract_one(e)?;
        }
        Ok(m)
    }

    fn contract_one(&self, e: ElementId) -> Result<BinaryMatroid> {
        let j = self.col_index(e)?;
        if self.size() == 1 {
            return Err(Error::EmptyGroundSet);
        }
        let col = self.mat.col_bits(j);
        let keep: Vec<usize> = (0..self.size()).filter(|&x| x != j).collect();
        let labels: Vec<ElementId> = keep.iter().map(|&x| self.labels[x]).collect();
        if col == 0 {
            // loop: contraction equals deletion
            let (mat, _) = self.mat.select_cols(&keep).rref_compact();
            return Ok(BinaryMatroid { mat, labels, name: None });
        }
        let pivot = col.trailing_zeros() as usize;
        let mut rows = self.mat.row_words().to_vec();
        let pivot_row = rows[pivot];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != pivot && (*row >> j) & 1 == 1 {
                *row ^= pivot_row;
            }
        }
        rows.remove(pivot);
        let mat = Gf2Matrix::from_rows(self.size(), rows).select_cols(&keep);
        debug_assert_eq!(mat.rank(), mat.rows());
        Ok(BinaryMatroid { mat, labels, name: None })
    }

    /// Contract `c` then delete `d` (the usual minor notation M/C\D).
    pub fn minor(&self, c: &[ElementId], d: &[ElementId]) -> Result<BinaryMatroid> {
        let m = self.contract(c)?;
        if d.is_empty() {
            Ok(m)
        } else {
            m.delete(d)
        }
    }

    /// Adds one column (an extension). The new element gets the next id.
    pub fn extend(&self, col: Gf2Vector) -> Result<(BinaryMatroid, ElementId)> {
        if col.width() != self.rank() {
            return Err(Error::WidthMismatch { got: col.width(), expected: self.rank() });
        }
        let e = self.next_id();
        let mat = self.mat.append_col(col.bits());
        let mut labels = self.labels.clone();
        labels.push(e);
        Ok((BinaryMatroid { mat, labels, name: None }, e))
    }

    /// Adds one element in series: appends the row `w` (given over the full
    /// column set) and a new column that is nonzero only in the new row.
    /// The dual of this operation is an extension of the dual by the
    /// corresponding column.
    pub fn coextend(&self, w: Gf2Vector) -> Result<(BinaryMatroid, ElementId)> {
        if w.width() != self.size() {
            return Err(Error::WidthMismatch { got: w.width(), expected: self.size() });
        }
        let e = self.next_id();
        let mat = self.mat.append_row(w.bits()).append_col(1 << self.rank());
        let mut labels = self.labels.clone();
        labels.push(e);
        debug_assert_eq!(mat.rank(), self.rank() + 1);
        Ok((BinaryMatroid { mat, labels, name: None }, e))
    }

    /// Positions of the non-pivot (D block) columns of the reduced form.
    pub fn nonpivot_positions(&self) -> Vec<usize> {
        let (_, pivots) = self.mat.rref_compact();
        let mut is_pivot = vec![false; self.size()];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.size()).filter(|&j| !is_pivot[j]).collect()
    }

    /// Coextension written the way the paper prints its rows: `w` has one
    /// coordinate per D-block column, left to right.
    pub fn coextend_over_d(&self, w: Gf2Vector) -> Result<(BinaryMatroid, ElementId)> {
        let nonpivots = self.nonpivot_positions();
        if w.width() != nonpivots.len() {
            return Err(Error::WidthMismatch { got: w.width(), expected: nonpivots.len() });
        }
        let mut full = 0u64;
        for (k, &j) in nonpivots.iter().enumerate() {
            if w.get(k) {
                full |= 1 << j;
            }
        }
        self.coextend(Gf2Vector::from_bits(self.size(), full))
    }

    /// The column the new element of `coextend(w)` adds to the dual
    /// representation, in the dual's reduced coordinates. Dualizing a
    /// coextension is an extension of the dual by exactly this column.
    pub fn coext_row_to_dual_col(&self, w: &Gf2Vector) -> Result<u64> {
        if w.width() != self.size() {
            return Err(Error::WidthMismatch { got: w.width(), expected: self.size() });
        }
        let dual = self.dual();
        let mut col = 0u64;
        for (k, &row) in dual.matrix().row_words().iter().enumerate() {
            col |= u64::from((row & w.bits()).count_ones() % 2) << k;
        }
        Ok(col)
    }

    /// Inverse of [`Self::coext_row_to_dual_col`] for rows supported on the
    /// D block: the coextension row (one coordinate per D-block column)
    /// whose dual column is `col`.
    pub fn dual_col_to_coext_row(&self, col: u64) -> Result<Gf2Vector> {
        let dual = self.dual();
        let nonpivots = self.nonpivot_positions();
        let cols: Vec<u64> = nonpivots.iter().map(|&j| dual.matrix().col_bits(j)).collect();
        // solve for the subset of D-block columns of the dual matrix
        // that XORs to `col`; the restriction is invertible
        let mut rows: Vec<(u64, u64)> = Vec::with_capacity(cols.len());
        for (k, &c) in cols.iter().enumerate() {
            let mut v = c;
            let mut t = 1u64 << k;
            for &(rv, rt) in &rows {
                let pivot = rv & rv.wrapping_neg();
                if v & pivot != 0 {
                    v ^= rv;
                    t ^= rt;
                }
            }
            debug_assert!(v != 0, "dual D-block columns are independent");
            rows.push((v, t));
        }
        let mut v = col;
        let mut picked = 0u64;
        for &(rv, rt) in &rows {
            let pivot = rv & rv.wrapping_neg();
            if v & pivot != 0 {
                v ^= rv;
                picked ^= rt;
            }
        }
        if v != 0 {
            return Err(Error::Construction(format!(
                "dual column {col:#b} is not reachable from a D-block supported row"
            )));
        }
        Ok(Gf2Vector::from_bits(nonpivots.len(), picked))
    }

    /// Re-labels into display convention: identity (pivot) columns first,
    /// then the D block, ids 1..n. Used when a construction must match a
    /// printed `[I_r | D]` matrix whose element numbers are referenced.
    pub fn standardize_display(&self) -> BinaryMatroid {
        let (_, pivots) = self.mat.rref_compact();
        let mut is_pivot = vec![false; self.size()];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let order: Vec<usize> = (0..self.size())
            .filter(|&j| is_pivot[j])
            .chain((0..self.size()).filter(|&j| !is_pivot[j]))
            .collect();
        BinaryMatroid::from_matrix(&self.mat.select_cols(&order)).expect("nonempty")
    }

    pub fn is_simple(&self) -> bool {
        let words = self.mat.col_words();
        let mut seen = std::collections::HashSet::with_capacity(words.len());
        words.iter().all(|&w| w != 0 && seen.insert(w))
    }

    pub fn is_cosimple(&self) -> bool {
        self.dual().is_simple()
    }

    /// Removes loops and all but the smallest-id member of each parallel
    /// class. Returns the simplification and what was collapsed.
    pub fn simplify(&self) -> (BinaryMatroid, SimplifyInfo) {
        let words = self.mat.col_words();
        let mut loops = Vec::new();
        let mut first_of: BTreeMap<u64, usize> = BTreeMap::new();
        let mut classes: BTreeMap<u64, Vec<ElementId>> = BTreeMap::new();
        for (j, &w) in words.iter().enumerate() {
            if w == 0 {
                loops.push(self.labels[j]);
            } else {
                first_of.entry(w).or_insert(j);
                classes.entry(w).or_default().push(self.labels[j]);
            }
        }
        let keep: Vec<usize> = {
            let mut k: Vec<usize> = first_of.values().copied().collect();
            k.sort_unstable();
            k
        };
        let labels: Vec<ElementId> = keep.iter().map(|&j| self.labels[j]).collect();
        let mat = self.mat.select_cols(&keep);
        let parallel_classes: Vec<Vec<ElementId>> =
            classes.into_values().filter(|c| c.len() > 1).collect();
        (
            BinaryMatroid { mat, labels, name: None },
            SimplifyInfo { loops, parallel_classes },
        )
    }

    /// All circuits (minimal dependent sets) of size at most `k`,
    /// as sorted element sets. Intended for k <= 4.
    pub fn small_circuits(&self, k: usize) -> Vec<Vec<ElementId>> {
        let words = self.mat.col_words();
        let n = self.size();
        let mut out = Vec::new();
        // loops
        for j in 0..n {
            if words[j] == 0 {
                out.push(vec![self.labels[j]]);
            }
        }
        if k >= 2 {
            for a in 0..n {
                if words[a] == 0 {
                    continue;
                }
                for b in a + 1..n {
                    if words[b] == words[a] {
                        out.push(vec![self.labels[a], self.labels[b]]);
                    }
                }
            }
        }
        if k >= 3 {
            for a in 0..n {
                if words[a] == 0 {
                    continue;
                }
                for b in a + 1..n {
                    if words[b] == 0 || words[b] == words[a] {
                        continue;
                    }
                    let ab = words[a] ^ words[b];
                    for c in b + 1..n {
                        if words[c] == ab {
                            out.push(vec![self.labels[a], self.labels[b], self.labels[c]]);
                        }
                    }
                }
            }
        }
        if k >= 4 {
            for a in 0..n {
                if words[a] == 0 {
                    continue;
                }
                for b in a + 1..n {
                    if words[b] == 0 || words[b] == words[a] {
                        continue;
                    }
                    for c in b + 1..n {
                        let abc = words[a] ^ words[b] ^ words[c];
                        if words[c] == 0
                            || words[c] == words[a]
                            || words[c] == words[b]
                            || abc == 0
                        {
                            continue;
                        }
                        for d in c + 1..n {
                            if words[d] == abc {
                                out.push(vec![
                                    self.labels[a],
                                    self.labels[b],
                                    self.labels[c],
                                    self.labels[d],
                                ]);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn triangles(&self) -> Vec<Vec<ElementId>> {
        self.small_circuits(3).into_iter().filter(|c| c.len() == 3).collect()
    }

    /// Whether `{a, b, c}` is a triad (3-element cocircuit), i.e. a triangle
    /// of the dual.
    pub fn is_triad(&self, a: ElementId, b: ElementId, c: ElementId) -> Result<bool> {
        let d = self.dual();
        let ja = d.col_index(a)?;
        let jb = d.col_index(b)?;
        let jc = d.col_index(c)?;
        let words = d.mat.col_words();
        let (wa, wb, wc) = (words[ja], words[jb], words[jc]);
        Ok(wa != 0 && wb != 0 && wc != 0 && wa != wb && wa != wc && wb != wc && wa ^ wb ^ wc == 0)
    }

    /// True iff every circuit has even cardinality; equivalently the
    /// all-ones vector lies in the row space of the representation.
    pub fn all_circuits_even(&self) -> bool {
        let ones = Gf2Vector::from_bits(self.size(), if self.size() == 64 { !0 } else { (1u64 << self.size()) - 1 });
        self.mat.in_row_space(&ones).expect("width matches")
    }
}

/// What `simplify` removed: loops and the parallel classes of size >= 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplifyInfo {
    pub loops: Vec<ElementId>,
    pub parallel_classes: Vec<Vec<ElementId>>,
}

impl SimplifyInfo {
    pub fn was_simple(&self) -> bool {
        self.loops.is_empty() && self.parallel_classes.is_empty()
    }
}

impl fmt::Debug for BinaryMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BinaryMatroid(r={}, n={}{})",
            self.rank(),
            self.size(),
            self.name.as_deref().map(|s| format!(", {s}")).unwrap_or_default()
        )
    }
}

impl fmt::Display for BinaryMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rank {} on {{{}}}", self.rank(),
            self.labels.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", "))?;
        write!(f, "{}", self.mat)
    }
}

/// Convenience constructor for element-id slices in tests and the CLI.
pub fn ids(raw: &[u32]) -> Vec<ElementId> {
    raw.iter().map(|&i| ElementId::new(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p9_star() -> BinaryMatroid {
        BinaryMatroid::from_display(
            "0111
             1011
             1101
             1111
             1100",
        )
    }

    fn fano() -> BinaryMatroid {
        BinaryMatroid::from_display("0111 1011 1101")
    }

    #[test]
    fn from_matrix_p9_star_display() {
        let m = p9_star();
        assert_eq!(m.rank(), 5);
        assert_eq!(m.size(), 9);
        assert!(m.is_simple());
    }

    #[test]
    fn from_matrix_identity_is_free() {
        let m = BinaryMatroid::from_matrix(&Gf2Matrix::identity(4)).unwrap();
        assert_eq!(m.rank(), 4);
        assert_eq!(m.size(), 4);
        assert!(m.small_circuits(4).is_empty());
    }

    #[test]
    fn from_matrix_drops_dependent_row() {
        let with_dep = Gf2Matrix::parse("101 011 110").unwrap(); // row3 = row1 + row2
        let without = Gf2Matrix::parse("101 011").unwrap();
        let a = BinaryMatroid::from_matrix(&with_dep).unwrap();
        let b = BinaryMatroid::from_matrix(&without).unwrap();
        assert_eq!(a.rank(), 2);
        assert_eq!(a.matrix(), b.matrix());
    }

    #[test]
    fn dual_shapes_and_involution() {
        let m = p9_star();
        let d = m.dual();
        assert_eq!(d.rank(), 4);
        assert_eq!(d.size(), 9);
        assert_eq!(d.labels(), m.labels());
        assert_eq!(d.dual().matrix(), m.matrix());
        let f = fano();
        assert_eq!(f.dual().rank(), 4);
        assert_eq!(f.dual().size(), 7);
    }

    #[test]
    fn rank_plus_dual_rank_is_size() {
        for m in [p9_star(), fano()] {
            assert_eq!(m.rank() + m.dual().rank(), m.size());
        }
    }

    #[test]
    fn delete_contract_duality() {
        let m = p9_star();
        for e in m.ground() {
            let a = m.dual().delete(&[e]).unwrap();
            let b = m.contract(&[e]).unwrap().dual();
            assert_eq!(a.matrix(), b.matrix());
            assert_eq!(a.labels(), b.labels());
        }
    }

    #[test]
    fn contract_nonloop_drops_rank_by_one() {
        let m = p9_star();
        for e in m.ground() {
            assert_eq!(m.contract(&[e]).unwrap().rank(), 4);
        }
    }

    #[test]
    fn delete_nothing_is_identity() {
        let m = p9_star();
        let d = m.delete(&[]).unwrap();
        assert_eq!(d.matrix(), m.matrix());
    }

    #[test]
    fn unknown_element_rejected() {
        let m = fano();
        assert!(matches!(m.delete(&ids(&[9])), Err(Error::UnknownElement(9))));
        assert!(matches!(m.contract(&ids(&[9])), Err(Error::UnknownElement(9))));
        assert!(matches!(m.rank_of(&ids(&[9])), Err(Error::UnknownElement(9))));
    }

    #[test]
    fn rank_of_examples() {
        let m = fano();
        assert_eq!(m.rank_of(&[]).unwrap(), 0);
        assert_eq!(m.rank_of(&m.ground()).unwrap(), 3);
        for c in m.triangles() {
            assert_eq!(m.rank_of(&c).unwrap(), c.len() - 1);
        }
    }

    #[test]
    fn rank_of_submodular_random_pairs() {
        let m = p9_star();
        let ground = m.ground();
        let mut s = 0x2545f4914f6cdd1du64;
        for _ in 0..1000 {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            let pick_a = s & 0x1ff;
            s ^= s >> 11;
            let pick_b = (s >> 20) & 0x1ff;
            let a: Vec<ElementId> =
                ground.iter().enumerate().filter(|(i, _)| (pick_a >> i) & 1 == 1).map(|(_, &e)| e).collect();
            let b: Vec<ElementId> =
                ground.iter().enumerate().filter(|(i, _)| (pick_b >> i) & 1 == 1).map(|(_, &e)| e).collect();
            let union: Vec<ElementId> =
                ground.iter().enumerate().filter(|(i, _)| ((pick_a | pick_b) >> i) & 1 == 1).map(|(_, &e)| e).collect();
            let inter: Vec<ElementId> =
                ground.iter().enumerate().filter(|(i, _)| ((pick_a & pick_b) >> i) & 1 == 1).map(|(_, &e)| e).collect();
            let r = |s: &[ElementId]| m.rank_of(s).unwrap();
            assert!(r(&a) + r(&b) >= r(&union) + r(&inter));
        }
    }

    #[test]
    fn simplicity_checks() {
        assert!(fano().is_simple());
        let with_parallel = BinaryMatroid::from_matrix(&Gf2Matrix::parse("11 11").unwrap());
        // 2x2 all-ones: two equal columns of (1,1)
        let m = with_parallel.unwrap();
        assert!(!m.is_simple());
    }

    #[test]
    fn fano_has_exactly_seven_triangles() {
        // Frozen from the brute-force 3-subset oracle below.
        let m = fano();
        assert_eq!(brute_small_circuits(&m, 3).iter().filter(|c| c.len() == 3).count(), 7);
        assert_eq!(m.triangles().len(), 7);
    }

    #[test]
    fn simple_matroid_has_no_tiny_circuits() {
        let m = p9_star();
        assert!(m.small_circuits(2).is_empty());
    }

    #[test]
    fn small_circuits_match_brute_force() {
        for m in [fano(), p9_star(), fano().dual()] {
            let mut got = m.small_circuits(4);
            let mut want = brute_small_circuits(&m, 4);
            got.sort();
            want.sort();
            assert_eq!(got, want);
        }
    }

    /// Oracle: all minimal dependent subsets of size <= k by direct subset
    /// enumeration using only the rank oracle.
    fn brute_small_circuits(m: &BinaryMatroid, k: usize) -> Vec<Vec<ElementId>> {
        let ground = m.ground();
        let n = ground.len();
        let mut out = Vec::new();
        for mask in 1u64..(1 << n) {
            let sz = mask.count_ones() as usize;
            if sz > k {
                continue;
            }
            let set: Vec<ElementId> =
                (0..n).filter(|i| (mask >> i) & 1 == 1).map(|i| ground[i]).collect();
            if m.rank_of(&set).unwrap() == sz {
                continue; // independent
            }
            let minimal = (0..n).filter(|i| (mask >> i) & 1 == 1).all(|i| {
                let sub: Vec<ElementId> = (0..n)
                    .filter(|&x| x != i && (mask >> x) & 1 == 1)
                    .map(|x| ground[x])
                    .collect();
                m.rank_of(&sub).unwrap() == sub.len()
            });
            if minimal {
                out.push(set);
            }
        }
        out
    }

    #[test]
    fn circuits_even_examples() {
        assert!(!fano().all_circuits_even());
        let free = BinaryMatroid::from_matrix(&Gf2Matrix::identity(5)).unwrap();
        assert!(free.all_circuits_even());
    }

    #[test]
    fn coextension_matches_dual_extension() {
        // Coextending by a row over the D block is dual to extending the
        // dual by the corresponding column.
        let m = p9_star();
        for bits in 1u64..16 {
            let w = Gf2Vector::from_bits(4, bits);
            let (co, _) = m.coextend_over_d(w).unwrap();
            assert_eq!(co.rank(), 6);
            assert_eq!(co.size(), 10);
            let nonpivots = m.nonpivot_positions();
            let mut full = 0u64;
            for (k, &j) in nonpivots.iter().enumerate() {
                if w.get(k) {
                    full |= 1 << j;
                }
            }
            let full = Gf2Vector::from_bits(m.size(), full);
            let col = m.coext_row_to_dual_col(&full).unwrap();
            let (ext, _) = m.dual().extend(Gf2Vector::from_bits(4, col)).unwrap();
            assert_eq!(co.dual().matrix(), ext.matrix());
            // round trip
            assert_eq!(m.dual_col_to_coext_row(col).unwrap(), w);
        }
    }

    #[test]
    fn simplify_collapses_loops_and_parallels() {
        // columns: e1, e1, e2, 0
        let m = BinaryMatroid::from_matrix(&Gf2Matrix::parse("1100 0010").unwrap()).unwrap();
        let (s, info) = m.simplify();
        assert_eq!(s.size(), 2);
        assert!(s.is_simple());
        assert_eq!(info.loops.len(), 1);
        assert_eq!(info.parallel_classes, vec![ids(&[1, 2])]);
    }
}
