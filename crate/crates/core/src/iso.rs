//! Canonical forms and isomorphism testing for binary matroids.
//!
//! Two binary matroids are isomorphic exactly when one column set can be
//! carried to the other by an invertible GF(2) row map followed by a column
//! permutation, so a canonical key is a canonical representative of the
//! point set inside PG(r-1, 2) under GL(r, 2).
//!
//! The search ranges over ordered bases drawn from the columns: each basis
//! is mapped to the identity and the resulting point set is recorded as a
//! characteristic bitmask over the 2^r - 1 nonzero vectors. The canonical
//! form is the mask whose sorted value list is lexicographically least.
//! The first one or two basis positions are restricted to columns that are
//! extremal for an isomorphism-invariant (triangle counts), which prunes
//! the search without affecting the optimum.
//!
//! Keys are always computed on the side (matroid or dual) of smaller rank;
//! loops and parallel elements are folded in as canonical multiplicity
//! bytes, so key equality coincides with isomorphism for arbitrary inputs.

use crate::error::{Error, Result};
use crate::matroid::BinaryMatroid;
use std::fmt;

/// Largest side rank supported by the canonical search.
pub const MAX_KEY_RANK: usize = 8;

const ACHIEVER_CAP: usize = 2_000_000;

/// Canonical byte string; equal keys <=> isomorphic matroids.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        let mut s = String::with_capacity(self.0.len() * 2);
        for b in &self.0 {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Characteristic mask over the nonzero vectors of GF(2)^t, t <= 8.
type Chi = [u64; 4];

fn chi_better(a: &Chi, b: &Chi) -> std::cmp::Ordering {
    // "Better" means the sorted list of present values is lexicographically
    // smaller: at the lowest value where the masks differ, better has it.
    use std::cmp::Ordering;
    for w in 0..4 {
        if a[w] != b[w] {
            let diff = a[w] ^ b[w];
            let low = diff & diff.wrapping_neg();
            return if a[w] & low != 0 { Ordering::Greater } else { Ordering::Less };
        }
    }
    Ordering::Equal
}

/// Outcome of the canonical search on a simple point set.
struct CanonOutcome {
    chi: Chi,
    /// For each achieving transform, the canonical value assigned to each
    /// input point (indexed like the input slice).
    achiever_values: Vec<Vec<u8>>,
}

/// Echelon basis with coordinate tags: reduces a vector and reports its
/// coordinates relative to the chosen ordered basis.
struct Coordizer {
    rows: Vec<(u64, u64)>, // (reduced value, tag)
}

impl Coordizer {
    fn new(basis: &[u64]) -> Coordizer {
        let mut rows: Vec<(u64, u64)> = Vec::with_capacity(basis.len());
        for (i, &b) in basis.iter().enumerate() {
            let mut v = b;
            let mut t = 1u64 << i;
            for &(rv, rt) in &rows {
                let pivot = rv & rv.wrapping_neg();
                if v & pivot != 0 {
                    v ^= rv;
                    t ^= rt;
                }
            }
            debug_assert!(v != 0, "basis must be independent");
            rows.push((v, t));
        }
        Coordizer { rows }
    }

    /// Coordinates of `x` in the basis; `x` must lie in the span.
    fn coords(&self, x: u64) -> u64 {
        let mut v = x;
        let mut t = 0u64;
        for &(rv, rt) in &self.rows {
            let pivot = rv & rv.wrapping_neg();
            if v & pivot != 0 {
                v ^= rv;
                t ^= rt;
            }
        }
        debug_assert_eq!(v, 0, "vector outside basis span");
        t
    }
}

/// Exhaustive-with-pruning canonical search over ordered bases.
struct CanonSearch<'a> {
    points: &'a [u64],
    rank: usize,
    collect: bool,
    first_candidates: Vec<usize>,
    second_candidates: Vec<Vec<usize>>, // indexed like first_candidates
    best: Option<Chi>,
    achievers: Vec<Vec<u8>>,
    // span of the chosen prefix
    span_vals: Vec<u64>,
    span_mask: [u64; 4],
    chosen: Vec<u64>,
    scratch_vals: Vec<u8>,
}

impl<'a> CanonSearch<'a> {
    fn run(points: &'a [u64], rank: usize, collect: bool) -> Result<CanonOutcome> {
        debug_assert!(rank <= MAX_KEY_RANK);
        if rank == 0 || points.is_empty() {
            return Ok(CanonOutcome { chi: [0; 4], achiever_values: vec![vec![]] });
        }
        if !collect && points.len() == (1usize << rank) - 1 {
            // the full projective space: every basis achieves the full mask
            let mut chi: Chi = [0; 4];
            for v in 1..(1u64 << rank) {
                chi[(v >> 6) as usize] |= 1 << (v & 63);
            }
            return Ok(CanonOutcome { chi, achiever_values: Vec::new() });
        }
        let n = points.len();
        let in_set = {
            let mut m = [0u64; 4];
            for &p in points {
                m[(p >> 6) as usize] |= 1 << (p & 63);
            }
            m
        };
        let member = |v: u64| in_set[(v >> 6) as usize] >> (v & 63) & 1 == 1;
        // triangle-degree invariant: for i, the number of j with p_i ^ p_j
        // in the point set (each triangle through i contributes twice)
        let tri: Vec<u16> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i && member(points[i] ^ points[j]))
                    .count() as u16
            })
            .collect();
        // first basis column: the invariant class with the fewest members,
        // ties broken by invariant value
        let mut best_class: Option<(usize, u16)> = None;
        for i in 0..n {
            let count = tri.iter().filter(|&&t| t == tri[i]).count();
            let cand = (count, tri[i]);
            if best_class.map_or(true, |b| cand < b) {
                best_class = Some(cand);
            }
        }
        let (_, class_val) = best_class.unwrap();
        let first_candidates: Vec<usize> = (0..n).filter(|&i| tri[i] == class_val).collect();
        // second basis column: minimize (triangle-with-first, invariant)
        // over valid ordered pairs, then restrict to achievers
        let pinv = |c1: usize, c2: usize| -> (u8, u16) {
            (u8::from(!member(points[c1] ^ points[c2])), tri[c2])
        };
        let mut second_best: Option<(u8, u16)> = None;
        if rank >= 2 {
            for &c1 in &first_candidates {
                for c2 in 0..n {
                    if c2 == c1 {
                        continue;
                    }
                    let v = pinv(c1, c2);
                    if second_best.map_or(true, |b| v < b) {
                        second_best = Some(v);
                    }
                }
            }
        }
        let second_candidates: Vec<Vec<usize>> = first_candidates
            .iter()
            .map(|&c1| {
                (0..n)
                    .filter(|&c2| c2 != c1 && Some(pinv(c1, c2)) == second_best)
                    .collect()
            })
            .collect();

        let mut search = CanonSearch {
            points,
            rank,
            collect,
            first_candidates,
            second_candidates,
            best: None,
            achievers: Vec::new(),
            span_vals: vec![0],
            span_mask: [1, 0, 0, 0],
            chosen: Vec::new(),
            scratch_vals: vec![0; n],
        };
        for fi in 0..search.first_candidates.len() {
            let c1 = search.first_candidates[fi];
            search.push_span(points[c1]);
            search.chosen.push(points[c1]);
            if rank == 1 {
                search.leaf()?;
            } else {
                let seconds = search.second_candidates[fi].clone();
                for c2 in seconds {
                    if search.in_span(points[c2]) {
                        continue;
                    }
                    search.push_span(points[c2]);
                    search.chosen.push(points[c2]);
                    search.descend(2)?;
                    search.chosen.pop();
                    search.pop_span();
                }
            }
            search.chosen.pop();
            search.pop_span();
        }
        let best = search.best.ok_or_else(|| {
            Error::Construction("canonical search found no basis in a full-rank point set".into())
        })?;
        Ok(CanonOutcome { chi: best, achiever_values: search.achievers })
    }

    fn in_span(&self, v: u64) -> bool {
        self.span_mask[(v >> 6) as usize] >> (v & 63) & 1 == 1
    }

    fn push_span(&mut self, v: u64) {
        let len = self.span_vals.len();
        for i in 0..len {
            let s = self.span_vals[i] ^ v;
            self.span_vals.push(s);
            self.span_mask[(s >> 6) as usize] |= 1 << (s & 63);
        }
    }

    fn pop_span(&mut self) {
        let half = self.span_vals.len() / 2;
        for &s in &self.span_vals[half..] {
            self.span_mask[(s >> 6) as usize] &= !(1 << (s & 63));
        }
        self.span_vals.truncate(half);
    }

    fn descend(&mut self, depth: usize) -> Result<()> {
        if depth == self.rank {
            return self.leaf();
        }
        for i in 0..self.points.len() {
            let p = self.points[i];
            if self.in_span(p) {
                continue;
            }
            self.push_span(p);
            self.chosen.push(p);
            self.descend(depth + 1)?;
            self.chosen.pop();
            self.pop_span();
        }
        Ok(())
    }

    fn leaf(&mut self) -> Result<()> {
        let coord = Coordizer::new(&self.chosen);
        let mut chi: Chi = [0; 4];
        for (i, &p) in self.points.iter().enumerate() {
            let v = coord.coords(p);
            debug_assert!(v > 0 && v < 256);
            self.scratch_vals[i] = v as u8;
            chi[(v >> 6) as usize] |= 1 << (v & 63);
        }
        match self.best {
            None => {
                self.best = Some(chi);
                if self.collect {
                    self.achievers = vec![self.scratch_vals.clone()];
                }
            }
            Some(ref b) => match chi_better(&chi, b) {
                std::cmp::Ordering::Greater => {
                    self.best = Some(chi);
                    if self.collect {
                        self.achievers.clear();
                        self.achievers.push(self.scratch_vals.clone());
                    }
                }
                std::cmp::Ordering::Equal => {
                    if self.collect {
                        if self.achievers.len() >= ACHIEVER_CAP {
                            return Err(Error::BoundExceeded(
                                "automorphism achiever cap exceeded".into(),
                            ));
                        }
                        self.achievers.push(self.scratch_vals.clone());
                    }
                }
                std::cmp::Ordering::Less => {}
            },
        }
        Ok(())
    }
}

/// Which side of the matroid the key was computed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Primal,
    Dual,
}

fn key_side(m: &BinaryMatroid) -> Side {
    if m.rank() <= m.size() - m.rank() {
        Side::Primal
    } else {
        Side::Dual
    }
}

/// Canonical key: invariant under GF(2) row operations and column
/// permutation; equal keys exactly when the matroids are isomorphic.
pub fn canonical_key(m: &BinaryMatroid) -> Result<CanonicalKey> {
    let side = key_side(m);
    let x = match side {
        Side::Primal => m.clone(),
        Side::Dual => m.dual(),
    };
    let t = x.rank();
    if t > MAX_KEY_RANK {
        return Err(Error::KeyRank(t, MAX_KEY_RANK));
    }
    let mut bytes = Vec::with_capacity(48 + m.size());
    bytes.push(1u8); // version
    bytes.push(match side {
        Side::Primal => 0,
        Side::Dual => 1,
    });
    bytes.extend_from_slice(&(m.rank() as u16).to_le_bytes());
    bytes.extend_from_slice(&(m.size() as u16).to_le_bytes());

    if t == 0 {
        // every element of the chosen side is a loop
        bytes.extend_from_slice(&[0u8; 32]);
        bytes.push(1);
        bytes.extend_from_slice(&(m.size() as u16).to_le_bytes());
        return Ok(CanonicalKey(bytes));
    }
    // fold loops and parallel classes into multiplicities on the simple part
    let (simple, info) = x.simplify();
    let points: Vec<u64> = simple.points().iter().map(|&(v, _)| v).collect();
    let mut mult: Vec<u8> = vec![1; points.len()];
    for class in &info.parallel_classes {
        let rep = class.iter().min().unwrap();
        let idx = simple
            .labels()
            .iter()
            .position(|e| e == rep)
            .expect("class representative kept by simplify");
        mult[idx] = u8::try_from(class.len()).unwrap_or(u8::MAX);
    }
    let outcome = CanonSearch::run(&points, t, !info.was_simple())?;
    for w in outcome.chi {
        bytes.extend_from_slice(&w.to_le_bytes());
    }
    if info.was_simple() {
        bytes.push(0);
    } else {
        // canonical multiplicity assignment: the lexicographically greatest
        // value-indexed multiplicity vector over all achieving transforms
        let mut best: Option<Vec<u8>> = None;
        for vals in &outcome.achiever_values {
            let mut by_value = vec![0u8; 1 << t];
            for (i, &v) in vals.iter().enumerate() {
                by_value[v as usize] = mult[i];
            }
            if best.as_ref().map_or(true, |b| by_value > *b) {
                best = Some(by_value);
            }
        }
        bytes.push(1);
        bytes.extend_from_slice(&(info.loops.len() as u16).to_le_bytes());
        bytes.extend_from_slice(&best.unwrap());
    }
    Ok(CanonicalKey(bytes))
}

pub fn are_isomorphic(a: &BinaryMatroid, b: &BinaryMatroid) -> Result<bool> {
    if a.rank() != b.rank() || a.size() != b.size() {
        return Ok(false);
    }
    Ok(canonical_key(a)? == canonical_key(b)?)
}

/// Self-duality check; immediately false unless n = 2r.
pub fn is_self_dual(m: &BinaryMatroid) -> Result<bool> {
    if m.size() != 2 * m.rank() {
        return Ok(false);
    }
    Ok(canonical_key(m)? == canonical_key(&m.dual())?)
}

/// The automorphism group of a simple matroid, as column permutations.
/// A permutation induces a linear map on either the primal or the dual
/// representation space; build one with [`Automorphisms::linear_action`].
pub struct Automorphisms {
    perms: Vec<Vec<u16>>,
}

impl Automorphisms {
    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    /// Column permutations (by column index).
    pub fn perms(&self) -> &[Vec<u16>] {
        &self.perms
    }

    /// The linear action induced on a representation whose column values
    /// (in its own coordinates) are `points`. The points must span.
    pub fn linear_action(&self, points: &[u64]) -> LinearAction {
        let mut base_idx = Vec::new();
        let mut probe = Vec::new();
        for (i, &p) in points.iter().enumerate() {
            if crate::gf2::basis_insert(&mut probe, p) {
                base_idx.push(i);
            }
        }
        let base_points: Vec<u64> = base_idx.iter().map(|&i| points[i]).collect();
        let coordizer = Coordizer::new(&base_points);
        let images: Vec<Vec<u64>> = self
            .perms
            .iter()
            .map(|perm| base_idx.iter().map(|&i| points[perm[i] as usize]).collect())
            .collect();
        let action = LinearAction { coordizer, images };
        #[cfg(debug_assertions)]
        for (g, perm) in self.perms.iter().enumerate() {
            for (i, &p) in points.iter().enumerate() {
                debug_assert_eq!(action.apply(g, p), points[perm[i] as usize]);
            }
        }
        action
    }
}

/// A group of invertible maps on one representation space.
pub struct LinearAction {
    coordizer: Coordizer,
    /// images[g][k] = image of the k-th base point under automorphism g
    images: Vec<Vec<u64>>,
}

impl LinearAction {
    pub fn len(&self) -> usize {
        self.images.len()
    }

    /// Applies automorphism `g` to an arbitrary vector of the space.
    pub fn apply(&self, g: usize, x: u64) -> u64 {
        let coords = self.coordizer.coords(x);
        let mut out = 0u64;
        for (k, &img) in self.images[g].iter().enumerate() {
            if (coords >> k) & 1 == 1 {
                out ^= img;
            }
        }
        out
    }
}

/// Computes the full automorphism group of a simple matroid by collecting
/// every basis that achieves the canonical form.
pub fn automorphisms(m: &BinaryMatroid) -> Result<Automorphisms> {
    assert!(m.is_simple(), "automorphism computation expects a simple matroid");
    let side = key_side(m);
    let x = match side {
        Side::Primal => m.clone(),
        Side::Dual => m.dual(),
    };
    let t = x.rank();
    if t > MAX_KEY_RANK {
        return Err(Error::KeyRank(t, MAX_KEY_RANK));
    }
    let points: Vec<u64> = x.points().iter().map(|&(v, _)| v).collect();
    let outcome = CanonSearch::run(&points, t, true)?;
    let base_vals = &outcome.achiever_values[0];
    let mut index_of_value = vec![u16::MAX; 256];
    for (i, &v) in base_vals.iter().enumerate() {
        index_of_value[v as usize] = i as u16;
    }
    let mut perms = Vec::with_capacity(outcome.achiever_values.len());
    for vals in &outcome.achiever_values {
        let perm: Vec<u16> = vals.iter().map(|&v| index_of_value[v as usize]).collect();
        debug_assert!(perm.iter().all(|&p| p != u16::MAX));
        perms.push(perm);
    }
    Ok(Automorphisms { perms })
}

/// Orbit partition of the nonzero vectors of GF(2)^rank under a linear
/// action. Returns, for each value, the smallest value in its orbit.
pub fn vector_orbits(action: &LinearAction, rank: usize) -> Vec<u64> {
    let total = 1usize << rank;
    let mut rep: Vec<u64> = (0..total as u64).collect();
    let find = |rep: &mut Vec<u64>, mut v: u64| -> u64 {
        while rep[v as usize] != v {
            let r = rep[rep[v as usize] as usize];
            rep[v as usize] = r;
            v = r;
        }
        v
    };
    for g in 0..action.len() {
        for v in 1..total as u64 {
            let w = action.apply(g, v);
            let rv = find(&mut rep, v);
            let rw = find(&mut rep, w);
            if rv != rw {
                let (lo, hi) = if rv < rw { (rv, rw) } else { (rw, rv) };
                rep[hi as usize] = lo;
            }
        }
    }
    for v in 1..total as u64 {
        find(&mut rep, v);
    }
    (0..total as u64).map(|v| if v == 0 { 0 } else { rep[v as usize] }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::Gf2Matrix;

    fn fano() -> BinaryMatroid {
        BinaryMatroid::from_display("0111 1011 1101")
    }

    fn p9_star() -> BinaryMatroid {
        BinaryMatroid::from_display("0111 1011 1101 1111 1100")
    }

    #[test]
    fn key_reflexive_and_rank_sensitive() {
        let f = fano();
        assert_eq!(canonical_key(&f).unwrap(), canonical_key(&f.clone()).unwrap());
        // ranks 3 vs 4 differ
        assert_ne!(canonical_key(&f).unwrap(), canonical_key(&f.dual()).unwrap());
        assert!(!are_isomorphic(&f, &f.dual()).unwrap());
    }

    #[test]
    fn key_invariant_under_row_maps_and_column_shuffles() {
        let m = p9_star();
        let key = canonical_key(&m).unwrap();
        let mut s = 0x853c49e6748fea9bu64;
        let mut next = move || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s
        };
        for _ in 0..200 {
            let mut rows: Vec<u64> = m.matrix().row_words().to_vec();
            // random invertible row map as a sequence of row additions/swaps
            for _ in 0..24 {
                let a = (next() % rows.len() as u64) as usize;
                let b = (next() % rows.len() as u64) as usize;
                if a != b {
                    if next() & 1 == 0 {
                        let rb = rows[b];
                        rows[a] ^= rb;
                    } else {
                        rows.swap(a, b);
                    }
                }
            }
            // random column permutation
            let n = m.size();
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = (next() % (i as u64 + 1)) as usize;
                perm.swap(i, j);
            }
            let shuffled = Gf2Matrix::from_rows(
                n,
                rows.iter()
                    .map(|&r| {
                        let mut out = 0u64;
                        for (new_j, &old_j) in perm.iter().enumerate() {
                            out |= ((r >> old_j) & 1) << new_j;
                        }
                        out
                    })
                    .collect(),
            );
            let m2 = BinaryMatroid::from_matrix(&shuffled).unwrap();
            assert_eq!(m2.rank(), m.rank());
            assert_eq!(canonical_key(&m2).unwrap(), key);
        }
    }

    #[test]
    fn distinct_small_matroids_get_distinct_keys() {
        let tri = BinaryMatroid::from_display("11"); // triangle U_{2,3}
        let free = BinaryMatroid::from_matrix(&Gf2Matrix::identity(3)).unwrap();
        assert_ne!(canonical_key(&tri).unwrap(), canonical_key(&free).unwrap());
    }

    #[test]
    fn multiplicities_distinguish_nonsimple() {
        // a triangle with one element doubled vs a triangle with a loop added
        let doubled =
            BinaryMatroid::from_matrix(&Gf2Matrix::parse("1011 0111").unwrap()).unwrap();
        let with_loop =
            BinaryMatroid::from_matrix(&Gf2Matrix::parse("1010 0110").unwrap()).unwrap();
        assert_eq!(doubled.size(), with_loop.size());
        assert_ne!(canonical_key(&doubled).unwrap(), canonical_key(&with_loop).unwrap());
    }

    #[test]
    fn fano_automorphism_group_order() {
        // |PGL(3,2)| = 168
        let aut = automorphisms(&fano()).unwrap();
        assert_eq!(aut.len(), 168);
        // identity permutation present
        assert!(aut.perms().iter().any(|p| p.iter().enumerate().all(|(i, &x)| x as usize == i)));
    }

    #[test]
    fn automorphism_linear_action_stabilizes_point_set() {
        let m = p9_star();
        let aut = automorphisms(&m).unwrap();
        // the permutations act on both the primal and the dual representation
        for rep in [m.clone(), m.dual()] {
            let points: Vec<u64> = rep.points().iter().map(|&(v, _)| v).collect();
            let action = aut.linear_action(&points);
            let set: std::collections::HashSet<u64> = points.iter().copied().collect();
            for g in 0..action.len() {
                for &p in &points {
                    assert!(set.contains(&action.apply(g, p)));
                }
            }
        }
    }

    #[test]
    fn self_dual_short_circuits_on_size() {
        assert!(!is_self_dual(&fano()).unwrap()); // 7 != 6
    }

    #[test]
    fn key_of_free_matroid_side_choice() {
        // free matroid: rank 4, corank 0 -> keyed on the dual (all loops)
        let free = BinaryMatroid::from_matrix(&Gf2Matrix::identity(4)).unwrap();
        let k = canonical_key(&free).unwrap();
        let free5 = BinaryMatroid::from_matrix(&Gf2Matrix::identity(5)).unwrap();
        assert_ne!(k, canonical_key(&free5).unwrap());
        assert_eq!(k, canonical_key(&free.clone()).unwrap());
    }
}
