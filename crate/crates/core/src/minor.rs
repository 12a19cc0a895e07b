//! Minor containment testing and the regularity predicate.
//!
//! The generic engine iterates over independent contraction sets C with
//! |C| = r(M) - r(N), simplifies M/C, and then tests whether the target
//! embeds as a restriction of the simplification. Restriction testing is a
//! backtracking search over images of a target basis, pruned by point-set
//! membership of every target point that becomes determined.
//!
//! For rank-5 targets there is a second path: the orbit table of the
//! target's point set in PG(4, 2) under GL(5, 2). A rank-5 host contains
//! the target as a restriction exactly when its point-set mask is a
//! superset of some orbit mask. The table is built once per target, kept in
//! a process-wide cache, and can be persisted to disk.

use crate::error::{Error, Result};
use crate::iso::{are_isomorphic, canonical_key, CanonicalKey};
use crate::matroid::{BinaryMatroid, ElementId};
use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

/// A (contract, delete) certificate for `M / C \ D ≅ target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorWitness {
    pub contract: Vec<ElementId>,
    pub delete: Vec<ElementId>,
    pub target: String,
}

impl MinorWitness {
    pub fn trivial(target: impl Into<String>) -> Self {
        MinorWitness { contract: Vec::new(), delete: Vec::new(), target: target.into() }
    }
}

/// Independently checks a witness by building the minor and testing
/// isomorphism with the target.
pub fn verify_witness(m: &BinaryMatroid, w: &MinorWitness, n: &BinaryMatroid) -> Result<bool> {
    for c in &w.contract {
        if w.delete.contains(c) {
            return Err(Error::Construction(format!(
                "witness contract and delete sets overlap at {c}"
            )));
        }
    }
    let minor = m.minor(&w.contract, &w.delete)?;
    are_isomorphic(&minor, n)
}

/// Resource limits for the generic engine. Exceeding a limit is an error,
/// never a silent wrong answer.
#[derive(Debug, Clone)]
pub struct MinorConfig {
    pub max_contraction_sets: u64,
    /// Use the PG(4,2) orbit oracle for rank-5 targets when available.
    pub use_orbit: bool,
}

impl Default for MinorConfig {
    fn default() -> Self {
        MinorConfig { max_contraction_sets: 50_000_000, use_orbit: true }
    }
}

impl MinorConfig {
    pub fn generic_only() -> Self {
        MinorConfig { use_orbit: false, ..Default::default() }
    }
}

/// Simple point-set view of a target matroid.
struct TargetData {
    rank: usize,
    points: Vec<u64>,
    /// basis point indices and, per DFS depth, the target points that
    /// become determined once that basis image is chosen
    base: Vec<usize>,
    resolve: Vec<Vec<(usize, u64)>>, // (point index, coords over base)
}

impl TargetData {
    fn new(n: &BinaryMatroid) -> TargetData {
        assert!(n.is_simple(), "minor targets must be simple");
        let points: Vec<u64> = n.points().iter().map(|&(v, _)| v).collect();
        let rank = n.rank();
        let mut base = Vec::new();
        let mut probe = Vec::new();
        for (i, &p) in points.iter().enumerate() {
            if crate::gf2::basis_insert(&mut probe, p) {
                base.push(i);
            }
        }
        debug_assert_eq!(base.len(), rank);
        // coordinates of every point over the chosen base
        let base_points: Vec<u64> = base.iter().map(|&i| points[i]).collect();
        let mut rows: Vec<(u64, u64)> = Vec::new();
        for (k, &b) in base_points.iter().enumerate() {
            let mut v = b;
            let mut t = 1u64 << k;
            for &(rv, rt) in &rows {
                let piv = rv & rv.wrapping_neg();
                if v & piv != 0 {
                    v ^= rv;
                    t ^= rt;
                }
            }
            rows.push((v, t));
        }
        let coords = |x: u64| -> u64 {
            let mut v = x;
            let mut t = 0u64;
            for &(rv, rt) in &rows {
                let piv = rv & rv.wrapping_neg();
                if v & piv != 0 {
                    v ^= rv;
                    t ^= rt;
                }
            }
            debug_assert_eq!(v, 0);
            t
        };
        let mut resolve: Vec<Vec<(usize, u64)>> = vec![Vec::new(); rank];
        for (i, &p) in points.iter().enumerate() {
            let c = coords(p);
            let top = 63 - c.leading_zeros() as usize;
            resolve[top].push((i, c));
        }
        TargetData { rank, points, base, resolve }
    }
}

/// Does the target embed into the host point set by an invertible map?
/// Both live in GF(2)^t with the host points spanning. On success, returns
/// the image values of all target points.
fn embed_restriction(host_points: &[u64], target: &TargetData) -> Option<Vec<u64>> {
    let host_set: std::collections::HashSet<u64> = host_points.iter().copied().collect();
    if host_points.len() < target.points.len() {
        return None;
    }
    let t = target.rank;
    let mut images = vec![0u64; t]; // image of each base point
    let mut span: Vec<u64> = Vec::new();

    fn go(
        depth: usize,
        t: usize,
        host_points: &[u64],
        host_set: &std::collections::HashSet<u64>,
        target: &TargetData,
        images: &mut Vec<u64>,
        span: &mut Vec<u64>,
    ) -> bool {
        if depth == t {
            return true;
        }
        'cand: for &h in host_points {
            // independence of the images
            {
                let mut v = h;
                for &b in span.iter() {
                    let piv = b & b.wrapping_neg();
                    if v & piv != 0 {
                        v ^= b;
                    }
                }
                if v == 0 {
                    continue;
                }
                span.push(v);
            }
            images[depth] = h;
            // every target point determined at this depth must land in the host
            for &(_, coords) in &target.resolve[depth] {
                let mut img = 0u64;
                for (k, &im) in images.iter().enumerate().take(depth + 1) {
                    if (coords >> k) & 1 == 1 {
                        img ^= im;
                    }
                }
                if !host_set.contains(&img) {
                    span.pop();
                    continue 'cand;
                }
            }
            if go(depth + 1, t, host_points, host_set, target, images, span) {
                return true;
            }
            span.pop();
        }
        false
    }

    if !go(0, t, host_points, &host_set, target, &mut images, &mut span) {
        return None;
    }
    let mut out = Vec::with_capacity(target.points.len());
    for level in &target.resolve {
        for &(_, coords) in level {
            let mut img = 0u64;
            for (k, &im) in images.iter().enumerate() {
                if (coords >> k) & 1 == 1 {
                    img ^= im;
                }
            }
            out.push(img);
        }
    }
    Some(out)
}

/// Orbit of a rank-5 point set in PG(4, 2) under GL(5, 2), stored as
/// 31-bit point-set masks (bit v = the point with coordinate word v).
pub struct OrbitTable {
    target_key: CanonicalKey,
    rank: usize,
    point_count: usize,
    masks: Vec<u32>,
}

impl OrbitTable {
    pub fn target_key(&self) -> &CanonicalKey {
        &self.target_key
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn masks(&self) -> &[u32] {
        &self.masks
    }

    /// Does `host_mask` contain some image of the target point set?
    pub fn contains_restriction(&self, host_mask: u32) -> bool {
        self.masks.iter().any(|&m| m & !host_mask == 0)
    }

    /// The first contained image, if any.
    pub fn find_restriction(&self, host_mask: u32) -> Option<u32> {
        self.masks.iter().copied().find(|&m| m & !host_mask == 0)
    }
}

/// Builds the orbit table of a simple rank-5 target by closing its point
/// mask under the transvection generators of GL(5, 2).
pub fn build_orbit_table(n: &BinaryMatroid) -> Result<OrbitTable> {
    if n.rank() != 5 {
        return Err(Error::OrbitTargetRank(n.rank()));
    }
    if !n.is_simple() {
        return Err(Error::Construction("orbit table target must be simple".into()));
    }
    let target_key = canonical_key(n)?;
    let mut mask0 = 0u32;
    for (v, _) in n.points() {
        mask0 |= 1 << v;
    }
    // transvections x -> x + x_i e_j as permutations of the 31 points
    let mut gens: Vec<[u8; 32]> = Vec::new();
    for i in 0..5 {
        for j in 0..5 {
            if i == j {
                continue;
            }
            let mut perm = [0u8; 32];
            for v in 1u32..32 {
                perm[v as usize] = (v ^ (((v >> i) & 1) << j)) as u8;
            }
            gens.push(perm);
        }
    }
    let apply = |perm: &[u8; 32], mask: u32| -> u32 {
        let mut out = 0u32;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            out |= 1 << perm[v];
            m &= m - 1;
        }
        out
    };
    let mut seen = std::collections::HashSet::new();
    let mut queue = std::collections::VecDeque::new();
    seen.insert(mask0);
    queue.push_back(mask0);
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let im = apply(g, m);
            if seen.insert(im) {
                queue.push_back(im);
            }
        }
    }
    let mut masks: Vec<u32> = seen.into_iter().collect();
    masks.sort_unstable();
    debug_assert!(masks.iter().all(|m| m.count_ones() as usize == n.size()));
    Ok(OrbitTable { target_key, rank: 5, point_count: n.size(), masks })
}

const ORBIT_MAGIC: &[u8; 4] = b"BMXO";

/// Writes the table in the cache format: header (magic, version, rank,
/// point count, target key) followed by the sorted masks, little-endian.
pub fn save_orbit_table(table: &OrbitTable, path: &Path) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(ORBIT_MAGIC)?;
    f.write_all(&[1u8, table.rank as u8, table.point_count as u8])?;
    let key = table.target_key.as_bytes();
    f.write_all(&(key.len() as u16).to_le_bytes())?;
    f.write_all(key)?;
    f.write_all(&(table.masks.len() as u32).to_le_bytes())?;
    let mut buf = Vec::with_capacity(table.masks.len() * 4);
    for &m in &table.masks {
        buf.extend_from_slice(&m.to_le_bytes());
    }
    f.write_all(&buf)?;
    Ok(())
}

/// Loads a cached table; `Err(CacheMismatch)` when the header or target key
/// does not match the expected target.
pub fn load_orbit_table(path: &Path, expected_key: &CanonicalKey) -> Result<OrbitTable> {
    let mut f = std::fs::File::open(path)?;
    let mut head = [0u8; 7];
    f.read_exact(&mut head)?;
    if &head[0..4] != ORBIT_MAGIC || head[4] != 1 {
        return Err(Error::CacheMismatch("bad magic or version".into()));
    }
    let rank = head[5] as usize;
    let point_count = head[6] as usize;
    let mut len2 = [0u8; 2];
    f.read_exact(&mut len2)?;
    let key_len = u16::from_le_bytes(len2) as usize;
    let mut key = vec![0u8; key_len];
    f.read_exact(&mut key)?;
    if key != expected_key.as_bytes() {
        return Err(Error::CacheMismatch("target key differs".into()));
    }
    let mut len4 = [0u8; 4];
    f.read_exact(&mut len4)?;
    let count = u32::from_le_bytes(len4) as usize;
    let mut buf = vec![0u8; count * 4];
    f.read_exact(&mut buf)?;
    let masks: Vec<u32> =
        buf.chunks_exact(4).map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]])).collect();
    Ok(OrbitTable { target_key: expected_key.clone(), rank, point_count, masks })
}

fn orbit_cache() -> &'static Mutex<HashMap<Vec<u8>, Arc<OrbitTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<u8>, Arc<OrbitTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Returns the orbit table for a rank-5 target, building it on first use.
/// When `cache_dir` is given, the table is loaded from or persisted to
/// `<cache_dir>/<key-prefix>.orb`.
pub fn orbit_table_for(n: &BinaryMatroid, cache_dir: Option<&Path>) -> Result<Arc<OrbitTable>> {
    let key = canonical_key(n)?;
    if let Some(t) = orbit_cache().lock().unwrap().get(key.as_bytes()) {
        return Ok(t.clone());
    }
    let file = cache_dir.map(|d| d.join(format!("{}.orb", &key.to_hex()[..24])));
    let table = match &file {
        Some(p) if p.exists() => match load_orbit_table(p, &key) {
            Ok(t) => t,
            Err(Error::CacheMismatch(_)) => build_orbit_table(n)?,
            Err(e) => return Err(e),
        },
        _ => {
            let t = build_orbit_table(n)?;
            if let Some(p) = &file {
                if let Some(parent) = p.parent() {
                    std::fs::create_dir_all(parent)?;
                }
                save_orbit_table(&t, p)?;
            }
            t
        }
    };
    let arc = Arc::new(table);
    orbit_cache().lock().unwrap().insert(key.as_bytes().to_vec(), arc.clone());
    Ok(arc)
}

/// Host-side machinery shared by the minor queries: enumerates independent
/// contraction sets and hands out the simplified quotient point sets.
struct HostScan<'a> {
    m: &'a BinaryMatroid,
    cols: Vec<u64>,
    ground: Vec<ElementId>,
}

/// A simplified quotient M/C: distinct nonzero point values with one
/// representative element each.
struct Quotient {
    values: Vec<u64>,
    reps: Vec<ElementId>,
}

impl<'a> HostScan<'a> {
    fn new(m: &'a BinaryMatroid) -> Self {
        HostScan { m, cols: m.col_words(), ground: m.ground() }
    }

    fn quotient(&self, contract_idx: &[usize]) -> Quotient {
        // eliminate span(C), then compress away the pivot coordinates
        let mut basis: Vec<u64> = Vec::new();
        for &j in contract_idx {
            let ok = crate::gf2::basis_insert(&mut basis, self.cols[j]);
            debug_assert!(ok);
        }
        let mut pivot_bits = 0u64;
        for &b in &basis {
            pivot_bits |= b & b.wrapping_neg();
        }
        let r = self.m.rank();
        let mut compress = vec![0usize; r];
        let mut out_bit = 0;
        for i in 0..r {
            if (pivot_bits >> i) & 1 == 0 {
                compress[i] = out_bit;
                out_bit += 1;
            }
        }
        let mut seen: HashMap<u64, ElementId> = HashMap::new();
        for (j, &c) in self.cols.iter().enumerate() {
            if contract_idx.contains(&j) {
                continue;
            }
            let mut v = c;
            for &b in &basis {
                let piv = b & b.wrapping_neg();
                if v & piv != 0 {
                    v ^= b;
                }
            }
            if v == 0 {
                continue;
            }
            let mut packed = 0u64;
            let mut rest = v;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                packed |= 1 << compress[i];
                rest &= rest - 1;
            }
            seen.entry(packed).or_insert(self.ground[j]);
        }
        let mut pairs: Vec<(u64, ElementId)> = seen.into_iter().collect();
        pairs.sort_unstable();
        Quotient {
            values: pairs.iter().map(|&(v, _)| v).collect(),
            reps: pairs.iter().map(|&(_, e)| e).collect(),
        }
    }

    /// Calls `f` on every independent contraction set of the given size,
    /// in lexicographic column order, until `f` returns true.
    fn for_each_contraction<F: FnMut(&[usize]) -> Result<bool>>(
        &self,
        size: usize,
        budget: u64,
        f: &mut F,
    ) -> Result<bool> {
        let mut chosen: Vec<usize> = Vec::with_capacity(size);
        let mut basis: Vec<u64> = Vec::new();
        let mut count: u64 = 0;
        self.descend(size, 0, &mut chosen, &mut basis, &mut count, budget, f)
    }

    #[allow(clippy::too_many_arguments)]
    fn descend<F: FnMut(&[usize]) -> Result<bool>>(
        &self,
        size: usize,
        from: usize,
        chosen: &mut Vec<usize>,
        basis: &mut Vec<u64>,
        count: &mut u64,
        budget: u64,
        f: &mut F,
    ) -> Result<bool> {
        if chosen.len() == size {
            *count += 1;
            if *count > budget {
                return Err(Error::BoundExceeded(format!(
                    "more than {budget} contraction sets explored"
                )));
            }
            return f(chosen);
        }
        for j in from..self.cols.len() {
            let before = basis.len();
            if !crate::gf2::basis_insert(basis, self.cols[j]) {
                continue;
            }
            chosen.push(j);
            let hit = self.descend(size, j + 1, chosen, basis, count, budget, f)?;
            chosen.pop();
            basis.truncate(before);
            if hit {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn target_name(n: &BinaryMatroid) -> String {
    n.name().map(str::to_string).unwrap_or_else(|| format!("r{}n{}", n.rank(), n.size()))
}

/// Exhaustive minor containment: a verified witness when M has an N-minor,
/// None otherwise. Sound and complete within the configured bounds.
pub fn has_minor(m: &BinaryMatroid, n: &BinaryMatroid) -> Result<Option<MinorWitness>> {
    has_minor_with(m, n, &MinorConfig::default())
}

pub fn has_minor_with(
    m: &BinaryMatroid,
    n: &BinaryMatroid,
    cfg: &MinorConfig,
) -> Result<Option<MinorWitness>> {
    let orbit = usable_orbit(n, cfg)?;
    search_minor(m, n, cfg, orbit.as_deref())
}

/// Boolean-only query; avoids building the witness.
pub fn has_minor_flag(m: &BinaryMatroid, n: &BinaryMatroid, cfg: &MinorConfig) -> Result<bool> {
    Ok(has_minor_with(m, n, cfg)?.is_some())
}

fn usable_orbit(n: &BinaryMatroid, cfg: &MinorConfig) -> Result<Option<Arc<OrbitTable>>> {
    if cfg.use_orbit && n.rank() == 5 && n.is_simple() {
        Ok(Some(orbit_table_for(n, None)?))
    } else {
        Ok(None)
    }
}

fn search_minor(
    m: &BinaryMatroid,
    n: &BinaryMatroid,
    cfg: &MinorConfig,
    orbit: Option<&OrbitTable>,
) -> Result<Option<MinorWitness>> {
    if n.rank() > m.rank() || n.size() > m.size() || n.corank() > m.corank() {
        return Ok(None);
    }
    let k = m.rank() - n.rank();
    let target = TargetData::new(n);
    let scan = HostScan::new(m);
    let mut memo: HashMap<Vec<u64>, Option<Vec<u64>>> = HashMap::new();
    let mut witness: Option<MinorWitness> = None;

    scan.for_each_contraction(k, cfg.max_contraction_sets, &mut |contract_idx| {
        let q = scan.quotient(contract_idx);
        if q.values.len() < n.size() {
            return Ok(false);
        }
        let image = match memo.get(&q.values) {
            Some(cached) => cached.clone(),
            None => {
                let found = match orbit {
                    Some(table) => {
                        let mut mask = 0u32;
                        for &v in &q.values {
                            mask |= 1 << v;
                        }
                        table.find_restriction(mask).map(|im| {
                            (0..32u32).filter(|b| (im >> b) & 1 == 1).map(u64::from).collect()
                        })
                    }
                    None => embed_restriction(&q.values, &target),
                };
                memo.insert(q.values.clone(), found.clone());
                found
            }
        };
        let Some(image) = image else {
            return Ok(false);
        };
        // witness: contract C, delete everything outside C and the chosen
        // representatives of the image points
        let contract: Vec<ElementId> =
            contract_idx.iter().map(|&j| scan.ground[j]).collect();
        let mut keep: Vec<ElementId> = image
            .iter()
            .map(|v| {
                let i = q.values.binary_search(v).expect("image point in host");
                q.reps[i]
            })
            .collect();
        keep.sort_unstable();
        let delete: Vec<ElementId> = scan
            .ground
            .iter()
            .copied()
            .filter(|e| !contract.contains(e) && keep.binary_search(e).is_err())
            .collect();
        let w = MinorWitness { contract, delete, target: target_name(n) };
        if !verify_witness(m, &w, n)? {
            return Err(Error::Construction(
                "internal: constructed minor witness failed verification".into(),
            ));
        }
        witness = Some(w);
        Ok(true)
    })?;
    Ok(witness)
}

/// Equal-rank restriction test: is `x` isomorphic to a deletion-minor of
/// `host` (no contractions)? Both simple.
pub fn is_restriction_of(x: &BinaryMatroid, host: &BinaryMatroid) -> Result<bool> {
    if x.rank() != host.rank() || x.size() > host.size() {
        return Ok(false);
    }
    let target = TargetData::new(x);
    let host_points: Vec<u64> = {
        let (s, _) = host.simplify();
        s.points().iter().map(|&(v, _)| v).collect()
    };
    Ok(embed_restriction(&host_points, &target).is_some())
}

/// Binary regularity: no F_7-minor and no F_7*-minor.
pub fn is_regular(m: &BinaryMatroid) -> Result<bool> {
    let f7 = BinaryMatroid::from_display("0111 1011 1101").with_name("F7");
    let f7d = f7.dual().with_name("F7*");
    let cfg = MinorConfig::default();
    Ok(!has_minor_flag(m, &f7, &cfg)? && !has_minor_flag(m, &f7d, &cfg)?)
}

/// Reference oracle: minor containment by memoized enumeration of all
/// single-element deletions and contractions. Exponential; used to
/// cross-check the production engine on hosts of up to ~12 elements.
pub fn has_minor_naive(m: &BinaryMatroid, n: &BinaryMatroid) -> Result<bool> {
    let nkey = canonical_key(n)?;
    let mut seen: std::collections::HashSet<CanonicalKey> = Default::default();
    fn go(
        m: &BinaryMatroid,
        n: &BinaryMatroid,
        nkey: &CanonicalKey,
        seen: &mut std::collections::HashSet<CanonicalKey>,
    ) -> Result<bool> {
        if n.rank() > m.rank() || n.size() > m.size() || n.corank() > m.corank() {
            return Ok(false);
        }
        let key = canonical_key(m)?;
        if key == *nkey {
            return Ok(true);
        }
        if !seen.insert(key) {
            return Ok(false);
        }
        if m.size() == n.size() {
            return Ok(false);
        }
        for e in m.ground() {
            if m.size() > 1 {
                if go(&m.delete(&[e])?, n, nkey, seen)? {
                    return Ok(true);
                }
                if go(&m.contract(&[e])?, n, nkey, seen)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
    go(m, n, &nkey, &mut seen)
}
