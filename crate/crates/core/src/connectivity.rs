//! Connectivity function, 2-separation detection, 3-connectivity and
//! internal 4-connectivity.
//!
//! Two detection modes back `find_2separation`: an exhaustive bipartition
//! scan (pruned by the fact that lambda only grows as elements are
//! assigned) used up to [`EXHAUSTIVE_BOUND`] elements, and a linkage mode
//! for larger ground sets that fixes an element pair on each side and
//! minimizes lambda by matroid-intersection augmentation (Tutte's linking
//! theorem). The two modes are cross-validated in the test suite.
//!
//! Small-matroid convention: ground sets of at most three elements admit no
//! 2-separation, so there `is_3connected` reduces to connectedness; loops
//! and parallel pairs are only an obstruction from four elements up.

use crate::error::{Error, Result};
use crate::matroid::{BinaryMatroid, ElementId};

/// Largest ground set scanned exhaustively by `find_2separation`.
pub const EXHAUSTIVE_BOUND: usize = 20;

/// Largest ground set accepted by `is_internally_4connected`.
pub const I4C_BOUND: usize = 24;

/// One side of a separation, with its connectivity value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationCertificate {
    pub side: Vec<ElementId>,
    pub lambda: usize,
}

impl SeparationCertificate {
    pub fn order(&self) -> usize {
        self.lambda + 1
    }

    /// Recomputes lambda on the host and checks the stored value.
    pub fn verify(&self, m: &BinaryMatroid) -> Result<bool> {
        Ok(lambda(m, &self.side)? == self.lambda)
    }
}

/// The connectivity function: r(X) + r(E - X) - r(M).
pub fn lambda(m: &BinaryMatroid, x: &[ElementId]) -> Result<usize> {
    let mut in_x = vec![false; m.size()];
    for &e in x {
        in_x[m.col_index(e)?] = true;
    }
    let ground = m.ground();
    let complement: Vec<ElementId> = ground
        .iter()
        .enumerate()
        .filter(|&(j, _)| !in_x[j])
        .map(|(_, &e)| e)
        .collect();
    let selected: Vec<ElementId> =
        ground.iter().enumerate().filter(|&(j, _)| in_x[j]).map(|(_, &e)| e).collect();
    Ok(m.rank_of(&selected)? + m.rank_of(&complement)? - m.rank())
}

/// Incremental GF(2) basis with stack discipline for the scan.
struct BasisStack {
    basis: Vec<u64>,
    grew: Vec<bool>,
}

impl BasisStack {
    fn new() -> Self {
        BasisStack { basis: Vec::new(), grew: Vec::new() }
    }

    fn push(&mut self, v: u64) {
        let mut v = v;
        for &b in &self.basis {
            let pivot = b & b.wrapping_neg();
            if v & pivot != 0 {
                v ^= b;
            }
        }
        if v != 0 {
            self.basis.push(v);
            self.grew.push(true);
        } else {
            self.grew.push(false);
        }
    }

    fn pop(&mut self) {
        if self.grew.pop().expect("pop matches push") {
            self.basis.pop();
        }
    }

    fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Exhaustive scan for X with lambda(X) <= target and both sides of size at
/// least `min_side`. Element 0 is pinned to X, which loses no generality.
fn scan_separation(m: &BinaryMatroid, target: usize, min_side: usize) -> Option<Vec<ElementId>> {
    let n = m.size();
    if n < 2 * min_side {
        return None;
    }
    let cols = m.col_words();
    let r = m.rank();
    let mut side_x = BasisStack::new();
    let mut side_y = BasisStack::new();
    let mut in_x = vec![false; n];
    side_x.push(cols[0]);
    in_x[0] = true;

    struct Frame<'a> {
        cols: &'a [u64],
        r: usize,
        n: usize,
        target: usize,
        min_side: usize,
    }

    fn go(
        f: &Frame,
        idx: usize,
        count_x: usize,
        in_x: &mut Vec<bool>,
        sx: &mut BasisStack,
        sy: &mut BasisStack,
    ) -> bool {
        if sx.rank() + sy.rank() > f.r + f.target {
            return false;
        }
        if idx == f.n {
            let count_y = f.n - count_x;
            return count_x >= f.min_side
                && count_y >= f.min_side
                && sx.rank() + sy.rank() - f.r <= f.target;
        }
        let remaining = f.n - idx;
        // feasibility: X can still reach min_side
        if count_x + remaining >= f.min_side {
            sx.push(f.cols[idx]);
            in_x[idx] = true;
            if go(f, idx + 1, count_x + 1, in_x, sx, sy) {
                return true;
            }
            in_x[idx] = false;
            sx.pop();
        }
        // Y side: y-count so far = idx - count_x
        if (idx - count_x) + remaining >= f.min_side {
            sy.push(f.cols[idx]);
            if go(f, idx + 1, count_x, in_x, sx, sy) {
                return true;
            }
            sy.pop();
        }
        false
    }

    let f = Frame { cols: &cols, r, n, target, min_side };
    if go(&f, 1, 1, &mut in_x, &mut side_x, &mut side_y) {
        let ground = m.ground();
        Some((0..n).filter(|&j| in_x[j]).map(|j| ground[j]).collect())
    } else {
        None
    }
}

/// Connectedness via the fundamental-circuit graph of any basis.
pub fn is_connected(m: &BinaryMatroid) -> bool {
    let n = m.size();
    if n <= 1 {
        return true;
    }
    let cols = m.col_words();
    // greedy basis with positions
    let mut basis: Vec<(u64, usize)> = Vec::new(); // (reduced value, column)
    let mut reducers: Vec<u64> = Vec::new();
    let mut basis_pos = Vec::new();
    for (j, &c) in cols.iter().enumerate() {
        let mut v = c;
        for &b in &reducers {
            let pivot = b & b.wrapping_neg();
            if v & pivot != 0 {
                v ^= b;
            }
        }
        if v != 0 {
            reducers.push(v);
            basis.push((v, j));
            basis_pos.push(j);
        }
    }
    // union-find over columns
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut union = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        if ra != rb {
            p[ra.max(rb)] = ra.min(rb);
        }
    };
    // coordinates of non-basis columns in the basis give fundamental circuits
    let coord_rows: Vec<(u64, u64)> = {
        let mut rows: Vec<(u64, u64)> = Vec::new();
        for (k, &(_, j)) in basis.iter().enumerate() {
            let mut v = cols[j];
            let mut t = 1u64 << k;
            for &(rv, rt) in &rows {
                let pivot = rv & rv.wrapping_neg();
                if v & pivot != 0 {
                    v ^= rv;
                    t ^= rt;
                }
            }
            rows.push((v, t));
        }
        rows
    };
    for (j, &c) in cols.iter().enumerate() {
        if basis_pos.contains(&j) {
            continue;
        }
        let mut v = c;
        let mut t = 0u64;
        for &(rv, rt) in &coord_rows {
            let pivot = rv & rv.wrapping_neg();
            if v & pivot != 0 {
                v ^= rv;
                t ^= rt;
            }
        }
        debug_assert_eq!(v, 0);
        for (k, &(_, bj)) in basis.iter().enumerate() {
            if (t >> k) & 1 == 1 {
                union(&mut parent, j, bj);
            }
        }
        // a loop has an empty expansion and stays isolated
    }
    let root = find(&mut parent, 0);
    (1..n).all(|j| find(&mut parent, j) == root)
}

/// Maximum common independent set of two column families over a shared
/// ground set, by shortest augmenting paths. Returns the set and the
/// canonical minimizing partition side (elements not reachable from the
/// M1-sources at termination).
fn matroid_intersection(cols1: &[u64], cols2: &[u64]) -> (Vec<bool>, Vec<bool>) {
    let n = cols1.len();
    let mut in_i = vec![false; n];

    let indep_with = |cols: &[u64], members: &[usize], extra: Option<usize>, skip: Option<usize>| {
        let mut basis: Vec<u64> = Vec::new();
        for &x in members {
            if Some(x) == skip {
                continue;
            }
            if !crate::gf2::basis_insert(&mut basis, cols[x]) {
                return false;
            }
        }
        if let Some(y) = extra {
            if !crate::gf2::basis_insert(&mut basis, cols[y]) {
                return false;
            }
        }
        true
    };

    loop {
        let members: Vec<usize> = (0..n).filter(|&x| in_i[x]).collect();
        let sources: Vec<usize> = (0..n)
            .filter(|&y| !in_i[y] && indep_with(cols1, &members, Some(y), None))
            .collect();
        let sinks: Vec<bool> = (0..n)
            .map(|y| !in_i[y] && indep_with(cols2, &members, Some(y), None))
            .collect();
        // BFS over the exchange graph
        let mut prev = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut queue: std::collections::VecDeque<usize> = Default::default();
        for &s in &sources {
            seen[s] = true;
            queue.push_back(s);
        }
        let mut found: Option<usize> = None;
        'bfs: while let Some(u) = queue.pop_front() {
            if !in_i[u] && sinks[u] {
                found = Some(u);
                break 'bfs;
            }
            if in_i[u] {
                // arcs x -> y when I - x + y is independent in M1
                for y in 0..n {
                    if !in_i[y] && !seen[y] && indep_with(cols1, &members, Some(y), Some(u)) {
                        seen[y] = true;
                        prev[y] = u;
                        queue.push_back(y);
                    }
                }
            } else {
                // arcs y -> x when I - x + y is independent in M2
                for x in 0..n {
                    if in_i[x] && !seen[x] && indep_with(cols2, &members, Some(u), Some(x)) {
                        seen[x] = true;
                        prev[x] = u;
                        queue.push_back(x);
                    }
                }
            }
        }
        match found {
            Some(mut v) => {
                // flip membership along the path
                loop {
                    in_i[v] = !in_i[v];
                    if prev[v] == usize::MAX {
                        break;
                    }
                    v = prev[v];
                }
            }
            None => {
                // not reachable = the M1 side of the minimizing partition
                let not_reachable: Vec<bool> = (0..n).map(|x| !seen[x]).collect();
                return (in_i, not_reachable);
            }
        }
    }
}

/// Tutte connectivity between disjoint element sets:
/// kappa(S, T) = min { lambda(X) : S subset X subset E - T }, together with
/// a minimizing X.
pub fn connectivity_between(
    m: &BinaryMatroid,
    s: &[ElementId],
    t: &[ElementId],
) -> Result<(usize, Vec<ElementId>)> {
    let cols = m.col_words();
    let ground = m.ground();
    let mut role = vec![0u8; m.size()]; // 0 free, 1 in S, 2 in T
    for &e in s {
        role[m.col_index(e)?] = 1;
    }
    for &e in t {
        let j = m.col_index(e)?;
        assert_eq!(role[j], 0, "S and T must be disjoint");
        role[j] = 2;
    }
    let free: Vec<usize> = (0..m.size()).filter(|&j| role[j] == 0).collect();
    // contraction transforms: reduce free columns by span(S) resp. span(T)
    let reduce_by = |anchor: u8| -> Vec<u64> {
        let mut basis = Vec::new();
        for j in 0..m.size() {
            if role[j] == anchor {
                crate::gf2::basis_insert(&mut basis, cols[j]);
            }
        }
        free.iter()
            .map(|&j| {
                let mut v = cols[j];
                for &b in &basis {
                    let pivot = b & b.wrapping_neg();
                    if v & pivot != 0 {
                        v ^= b;
                    }
                }
                v
            })
            .collect()
    };
    let cols1 = reduce_by(1); // M / S \ T
    let cols2 = reduce_by(2); // M / T \ S
    let (in_i, m1_side) = matroid_intersection(&cols1, &cols2);
    let common = in_i.iter().filter(|&&b| b).count();
    let r_s = m.rank_of(s)?;
    let r_t = m.rank_of(t)?;
    let kappa = r_s + r_t + common - m.rank();
    let mut x: Vec<ElementId> = s.to_vec();
    for (k, &j) in free.iter().enumerate() {
        if m1_side[k] {
            x.push(ground[j]);
        }
    }
    x.sort_unstable();
    debug_assert_eq!(lambda(m, &x)?, kappa, "linkage certificate must match kappa");
    Ok((kappa, x))
}

/// Linkage-based 2-separation search: sound and complete for any size.
pub fn find_2separation_linkage(m: &BinaryMatroid) -> Result<Option<SeparationCertificate>> {
    let ground = m.ground();
    let n = ground.len();
    if n < 4 {
        return Ok(None);
    }
    let a = ground[0];
    for bi in 1..n {
        let b = ground[bi];
        for ci in 1..n {
            if ci == bi {
                continue;
            }
            for di in ci + 1..n {
                if di == bi {
                    continue;
                }
                let (kappa, x) = connectivity_between(m, &[a, b], &[ground[ci], ground[di]])?;
                if kappa <= 1 {
                    let lam = lambda(m, &x)?;
                    return Ok(Some(SeparationCertificate { side: x, lambda: lam }));
                }
            }
        }
    }
    Ok(None)
}

/// Exhaustive 2-separation search; ground truth for sizes within
/// [`EXHAUSTIVE_BOUND`]. Prefers an order-1 certificate when one exists.
pub fn find_2separation_exhaustive(m: &BinaryMatroid) -> Option<SeparationCertificate> {
    let side = scan_separation(m, 0, 2).or_else(|| scan_separation(m, 1, 2))?;
    let lam = lambda(m, &side).expect("side drawn from the ground set");
    Some(SeparationCertificate { side, lambda: lam })
}

/// Finds a 2-separation (lambda <= 1 with both sides of size >= 2), or None.
/// Dispatches between the exhaustive and linkage modes by ground set size.
pub fn find_2separation(m: &BinaryMatroid) -> Result<Option<SeparationCertificate>> {
    if m.size() <= EXHAUSTIVE_BOUND {
        Ok(find_2separation_exhaustive(m))
    } else {
        find_2separation_linkage(m)
    }
}

/// 3-connectivity. Ground sets of size <= 3 follow the standard
/// convention (3-connected iff connected); otherwise the matroid must be
/// simple, cosimple, connected, and free of 2-separations.
pub fn is_3connected(m: &BinaryMatroid) -> Result<bool> {
    if m.size() <= 3 {
        return Ok(is_connected(m));
    }
    if !m.is_simple() || !m.is_cosimple() || !is_connected(m) {
        return Ok(false);
    }
    Ok(find_2separation(m)?.is_none())
}

/// Internal 4-connectivity: 3-connected with no lambda(X) <= 2 separation
/// having both sides of size >= 4. Exhaustive only; sizes beyond
/// [`I4C_BOUND`] are rejected.
pub fn is_internally_4connected(m: &BinaryMatroid) -> Result<bool> {
    if m.size() > I4C_BOUND {
        return Err(Error::UnsupportedSize { elements: m.size(), bound: I4C_BOUND });
    }
    if !is_3connected(m)? {
        return Ok(false);
    }
    Ok(scan_separation(m, 2, 4).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::Gf2Matrix;
    use crate::matroid::ids;

    fn fano() -> BinaryMatroid {
        BinaryMatroid::from_display("0111 1011 1101")
    }

    fn two_triangles() -> BinaryMatroid {
        // direct sum of two triangles in rank 4
        BinaryMatroid::from_matrix(
            &Gf2Matrix::parse(
                "100010
                 010010
                 001001
                 000101",
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn lambda_trivial_sides() {
        let m = fano();
        assert_eq!(lambda(&m, &[]).unwrap(), 0);
        assert_eq!(lambda(&m, &m.ground()).unwrap(), 0);
    }

    #[test]
    fn lambda_of_parallel_pair_is_one() {
        // triangle with one element doubled: connected, rank 2
        let m = BinaryMatroid::from_matrix(
            &Gf2Matrix::parse("1101 0011").unwrap(),
        )
        .unwrap();
        assert!(is_connected(&m));
        assert_eq!(lambda(&m, &ids(&[1, 2])).unwrap(), 1);
    }

    #[test]
    fn lambda_symmetric_in_complement() {
        let m = fano();
        let ground = m.ground();
        for mask in 0u32..(1 << ground.len()) {
            let x: Vec<_> = ground
                .iter()
                .enumerate()
                .filter(|(i, _)| (mask >> i) & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let y: Vec<_> = ground
                .iter()
                .enumerate()
                .filter(|(i, _)| (mask >> i) & 1 == 0)
                .map(|(_, &e)| e)
                .collect();
            assert_eq!(lambda(&m, &x).unwrap(), lambda(&m, &y).unwrap());
        }
    }

    #[test]
    fn lambda_invariant_under_dualization() {
        let m = fano();
        let d = m.dual();
        let ground = m.ground();
        for mask in 0u32..(1 << ground.len()) {
            let x: Vec<_> = ground
                .iter()
                .enumerate()
                .filter(|(i, _)| (mask >> i) & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            assert_eq!(lambda(&m, &x).unwrap(), lambda(&d, &x).unwrap());
        }
    }

    #[test]
    fn direct_sum_has_zero_separation() {
        let m = two_triangles();
        let cert = find_2separation_exhaustive(&m).unwrap();
        assert_eq!(cert.lambda, 0);
        assert!(cert.verify(&m).unwrap());
        assert!(!is_connected(&m));
        assert!(!is_3connected(&m).unwrap());
    }

    #[test]
    fn fano_is_3connected_and_internally_4connected() {
        let m = fano();
        assert!(is_connected(&m));
        assert!(is_3connected(&m).unwrap());
        assert!(is_internally_4connected(&m).unwrap());
    }

    #[test]
    fn coloop_makes_disconnected() {
        // triangle plus a coloop
        let m = BinaryMatroid::from_matrix(
            &Gf2Matrix::parse("1100 0110 0001").unwrap(),
        )
        .unwrap();
        assert!(!is_connected(&m));
        assert!(!is_3connected(&m).unwrap());
    }

    #[test]
    fn small_matroid_convention() {
        // parallel pair and U_{1,3}: connected, hence 3-connected by the
        // small-ground-set convention
        let pair = BinaryMatroid::from_matrix(&Gf2Matrix::parse("11").unwrap()).unwrap();
        assert!(is_3connected(&pair).unwrap());
        let u13 = BinaryMatroid::from_matrix(&Gf2Matrix::parse("111").unwrap()).unwrap();
        assert!(is_3connected(&u13).unwrap());
        // loop plus element: disconnected
        let lp = BinaryMatroid::from_matrix(&Gf2Matrix::parse("01").unwrap()).unwrap();
        assert!(!is_3connected(&lp).unwrap());
    }

    #[test]
    fn connected_agrees_with_lambda_scan() {
        let mut s = 0xd1b54a32d192ed03u64;
        let mut next = move || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s
        };
        for _ in 0..300 {
            let rows = 2 + (next() % 3) as usize;
            let cols = 2 + (next() % 6) as usize;
            let mask = (1u64 << cols) - 1;
            let bits: Vec<u64> = (0..rows).map(|_| next() & mask).collect();
            let Ok(m) = BinaryMatroid::from_matrix(&Gf2Matrix::from_rows(cols, bits)) else {
                continue;
            };
            let scan_disconnected = scan_separation(&m, 0, 1).is_some();
            assert_eq!(is_connected(&m), !scan_disconnected, "matroid {m}");
        }
    }

    #[test]
    fn linkage_agrees_with_exhaustive_on_random_matroids() {
        let mut s = 0x6a09e667f3bcc909u64;
        let mut next = move || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s
        };
        let mut checked = 0;
        while checked < 150 {
            let rows = 3 + (next() % 3) as usize;
            let cols = 4 + (next() % 6) as usize;
            let mask = (1u64 << cols) - 1;
            let bits: Vec<u64> = (0..rows).map(|_| next() & mask).collect();
            let Ok(m) = BinaryMatroid::from_matrix(&Gf2Matrix::from_rows(cols, bits)) else {
                continue;
            };
            if m.rank() == 0 {
                continue;
            }
            checked += 1;
            let ex = find_2separation_exhaustive(&m);
            let link = find_2separation_linkage(&m).unwrap();
            assert_eq!(ex.is_some(), link.is_some(), "disagreement on {m}");
            if let Some(c) = link {
                assert!(c.lambda <= 1);
                assert!(c.verify(&m).unwrap());
                assert!(c.side.len() >= 2 && m.size() - c.side.len() >= 2);
            }
        }
    }

    #[test]
    fn i4c_rejects_oversized_input() {
        // 26-element rank-5 host exceeds the exhaustive bound
        let cols: Vec<u64> = (1..=26u64).collect();
        let mut m = Gf2Matrix::zero(5, 0);
        for c in cols {
            m = m.append_col(c);
        }
        let m = BinaryMatroid::from_matrix(&m).unwrap();
        assert!(matches!(
            is_internally_4connected(&m),
            Err(Error::UnsupportedSize { .. })
        ));
    }

    #[test]
    fn intersection_matches_brute_force() {
        let mut s = 0x71c9d9f0a443b4bdu64;
        let mut next = move || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s
        };
        for _ in 0..300 {
            let n = 2 + (next() % 6) as usize;
            let c1: Vec<u64> = (0..n).map(|_| next() & 0x7).collect();
            let c2: Vec<u64> = (0..n).map(|_| next() & 0x7).collect();
            let (in_i, _) = matroid_intersection(&c1, &c2);
            let got = in_i.iter().filter(|&&b| b).count();
            let mut want = 0usize;
            for mask in 0u32..(1 << n) {
                let pick: Vec<usize> = (0..n).filter(|&i| (mask >> i) & 1 == 1).collect();
                let indep = |cols: &[u64]| {
                    let mut basis = Vec::new();
                    pick.iter().all(|&i| crate::gf2::basis_insert(&mut basis, cols[i]))
                };
                if indep(&c1) && indep(&c2) {
                    want = want.max(pick.len());
                }
            }
            assert_eq!(got, want, "intersection size mismatch");
        }
    }
}
