//! Clique enumeration for `VR(Q_n; r)`: skeletons up to a dimension cap,
//! simplex maximality, and structural cross-polytope recognition at `n = r+1`.
//!
//! The complex is the closed Vietoris-Rips complex (diameter `<= r`). A
//! skeleton stores, per dimension, a flat sorted array of vertex tuples; the
//! position of a tuple in its array is the simplex index used by the boundary
//! matrices.

use crate::error::{capability, usage, Result};
use crate::hypercube::{self, mask_n, VertexSet};
use rayon::prelude::*;
use std::io::{self, Write};
use std::sync::atomic::{AtomicU64, Ordering};

/// Default cap on total boundary-matrix column entries (sum over dimensions of
/// simplex count times vertex count).
pub const DEFAULT_BUDGET: u64 = 200_000_000;

/// A simplex: a strictly increasing list of vertex bit-words in one `Q_n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    n: u32,
    verts: Vec<u32>,
}

impl Simplex {
    pub fn new(n: u32, verts: Vec<u32>) -> Result<Self> {
        if verts.is_empty() {
            return Err(usage("a simplex needs at least one vertex"));
        }
        if !verts.windows(2).all(|w| w[0] < w[1]) {
            return Err(usage("simplex vertices must be strictly increasing"));
        }
        if n == 0 || n > hypercube::MAX_DIM {
            return Err(usage(format!("dimension {n} outside 1..={}", hypercube::MAX_DIM)));
        }
        if *verts.last().unwrap() > mask_n(n) {
            return Err(usage(format!("simplex vertex out of range for Q_{n}")));
        }
        Ok(Simplex { n, verts })
    }

    pub fn from_vertex_set(s: &VertexSet) -> Self {
        Simplex { n: s.dim(), verts: s.members().to_vec() }
    }

    pub fn ambient_dim(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn verts(&self) -> &[u32] {
        &self.verts
    }

    pub fn diameter(&self) -> u32 {
        let mut best = 0;
        for (i, &x) in self.verts.iter().enumerate() {
            for &y in &self.verts[i + 1..] {
                best = best.max((x ^ y).count_ones());
            }
        }
        best
    }

    /// Vertices as coordinate-order binary strings joined by spaces.
    pub fn coord_strings(&self) -> String {
        let parts: Vec<String> =
            self.verts.iter().map(|&b| hypercube::coord_string(b, self.n)).collect();
        parts.join(" ")
    }
}

/// All simplices of `VR(Q_n; r)` of dimension at most `dim_cap`, stored
/// per-dimension in lexicographic order.
pub struct SkeletonComplex {
    n: u32,
    r: u32,
    dim_cap: usize,
    dims: Vec<DimSlab>,
}

/// Flat storage for one dimension: `width` vertices per simplex.
pub struct DimSlab {
    width: usize,
    data: Vec<u32>,
}

impl DimSlab {
    fn new(width: usize) -> Self {
        DimSlab { width, data: Vec::new() }
    }

    pub fn len(&self) -> usize {
        if self.width == 0 {
            0
        } else {
            self.data.len() / self.width
        }
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> &[u32] {
        &self.data[i * self.width..(i + 1) * self.width]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.data.chunks_exact(self.width.max(1))
    }

    /// Binary search by lexicographic tuple order.
    pub fn position(&self, verts: &[u32]) -> Option<usize> {
        debug_assert_eq!(verts.len(), self.width);
        let mut lo = 0usize;
        let mut hi = self.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(verts) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

impl SkeletonComplex {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    /// Number of simplices of dimension `k` (0 when `k` exceeds the cap).
    pub fn count(&self, k: usize) -> usize {
        self.dims.get(k).map_or(0, DimSlab::len)
    }

    pub fn slab(&self, k: usize) -> Option<&DimSlab> {
        self.dims.get(k)
    }

    pub fn simplex_at(&self, k: usize, i: usize) -> &[u32] {
        self.dims[k].get(i)
    }

    pub fn position(&self, k: usize, verts: &[u32]) -> Option<usize> {
        self.dims.get(k).and_then(|s| s.position(verts))
    }

    /// One line per simplex, dimension-major, vertices as zero-padded
    /// coordinate-order binary strings.
    pub fn dump(&self, out: &mut impl Write) -> io::Result<()> {
        for slab in &self.dims {
            for verts in slab.iter() {
                let parts: Vec<String> =
                    verts.iter().map(|&b| hypercube::coord_string(b, self.n)).collect();
                writeln!(out, "{}", parts.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Enumerate all simplices of `VR(Q_n; r)` of dimension `<= dim_cap`.
///
/// Per base vertex, cliques are grown over the base's radius-`r` ball using
/// only larger-indexed vertices, so each simplex is produced exactly once, in
/// lexicographic order. Construction is parallel over base vertices; the
/// output is independent of thread count.
pub fn build_skeleton(n: u32, r: u32, dim_cap: usize, budget: u64) -> Result<SkeletonComplex> {
    if n == 0 || n > hypercube::MAX_DIM {
        return Err(usage(format!("dimension {n} outside 1..={}", hypercube::MAX_DIM)));
    }
    let size = 1u64 << n;
    let entries = AtomicU64::new(0);
    let per_base: Vec<Vec<Vec<u32>>> = (0..size as u32)
        .into_par_iter()
        .map(|base| {
            let ball: Vec<u32> =
                (base + 1..size as u32).filter(|&u| (u ^ base).count_ones() <= r).collect();
            let mut out: Vec<Vec<u32>> = vec![Vec::new(); dim_cap + 1];
            out[0].push(base);
            let mut clique = vec![base];
            if dim_cap > 0 {
                extend_cliques(&mut clique, &ball, r, dim_cap, &mut out, &entries);
            }
            out
        })
        .collect();
    if entries.load(Ordering::Relaxed) > budget {
        return Err(capability(format!(
            "simplex enumeration for VR(Q_{n}; {r}) up to dimension {dim_cap} exceeds the \
             column-entry budget of {budget}"
        )));
    }
    let mut dims: Vec<DimSlab> = (0..=dim_cap).map(|k| DimSlab::new(k + 1)).collect();
    for base_out in per_base {
        for (k, flat) in base_out.into_iter().enumerate() {
            dims[k].data.extend(flat);
        }
    }
    Ok(SkeletonComplex { n, r, dim_cap, dims })
}

fn extend_cliques(
    clique: &mut Vec<u32>,
    cands: &[u32],
    r: u32,
    dim_cap: usize,
    out: &mut [Vec<u32>],
    entries: &AtomicU64,
) {
    for (i, &v) in cands.iter().enumerate() {
        clique.push(v);
        let k = clique.len() - 1;
        out[k].extend_from_slice(clique);
        // Entry budget: dimension-k simplices contribute k+1 boundary entries.
        entries.fetch_add((k + 1) as u64, Ordering::Relaxed);
        if k < dim_cap {
            let nxt: Vec<u32> =
                cands[i + 1..].iter().copied().filter(|&u| (u ^ v).count_ones() <= r).collect();
            if !nxt.is_empty() {
                extend_cliques(clique, &nxt, r, dim_cap, out, entries);
            }
        }
        clique.pop();
    }
}

/// True iff no vertex of `Q_n` outside `sigma` can be added while keeping the
/// diameter at most `r`.
pub fn is_maximal(n: u32, r: u32, sigma: &Simplex) -> Result<bool> {
    if sigma.ambient_dim() != n {
        return Err(usage("simplex ambient dimension mismatch"));
    }
    if sigma.diameter() > r {
        return Err(usage(format!("not a simplex of VR(Q_{n}; {r}): diameter exceeds {r}")));
    }
    let verts = sigma.verts();
    for u in 0..=mask_n(n) {
        if verts.binary_search(&u).is_ok() {
            continue;
        }
        if verts.iter().all(|&w| (u ^ w).count_ones() <= r) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Adjacency check that `VR(Q_{r+1}; r)` is the boundary of the cross-polytope
/// on `2^{r+1}` vertices: every vertex is joined to every other vertex except
/// exactly its antipode.
pub fn cross_polytope_isomorphic(r: u32) -> Result<bool> {
    if r < 1 {
        return Err(usage("cross-polytope recognition needs r >= 1"));
    }
    let n = r + 1;
    if n > hypercube::MAX_DIM {
        return Err(usage(format!("Q_{n} exceeds the dimension cap {}", hypercube::MAX_DIM)));
    }
    let full = mask_n(n);
    for u in 0..=full {
        for v in u + 1..=full {
            let joined = (u ^ v).count_ones() <= r;
            let antipodal = v == !u & full;
            if joined == antipodal {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Naive oracle: filter all subsets of {0,1}^n of size <= cap+1 by diameter.
    fn naive_counts(n: u32, r: u32, cap: usize) -> Vec<usize> {
        let size = 1u32 << n;
        let mut counts = vec![0usize; cap + 1];
        let mut subset = Vec::new();
        fn rec(
            start: u32,
            size: u32,
            r: u32,
            cap: usize,
            subset: &mut Vec<u32>,
            counts: &mut [usize],
        ) {
            for v in start..size {
                if subset.iter().all(|&u| (u ^ v).count_ones() <= r) {
                    subset.push(v);
                    counts[subset.len() - 1] += 1;
                    if subset.len() <= cap {
                        rec(v + 1, size, r, cap, subset, counts);
                    }
                    subset.pop();
                }
            }
        }
        rec(0, size, r, cap, &mut subset, &mut counts);
        counts
    }

    #[test]
    fn hypercube_graph_counts() {
        let sk = build_skeleton(3, 1, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(sk.count(0), 8);
        assert_eq!(sk.count(1), 12);
    }

    #[test]
    fn q3_scale2_top_simplices() {
        let sk = build_skeleton(3, 2, 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(sk.count(3), 16);
        assert_eq!(sk.count(4), 0);
    }

    #[test]
    fn no_triangles_at_scale_one() {
        let sk = build_skeleton(4, 1, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(sk.count(2), 0);
    }

    #[test]
    fn oracle_equivalence_small() {
        for n in 1..=4u32 {
            for r in 0..=n {
                let cap = 5usize;
                let sk = build_skeleton(n, r, cap, DEFAULT_BUDGET).unwrap();
                let naive = naive_counts(n, r, cap);
                for k in 0..=cap {
                    assert_eq!(sk.count(k), naive[k], "n={n} r={r} k={k}");
                }
            }
        }
    }

    #[test]
    fn face_closure_and_sortedness() {
        let sk = build_skeleton(4, 2, 4, DEFAULT_BUDGET).unwrap();
        for k in 1..=4usize {
            let slab = sk.slab(k).unwrap();
            let mut prev: Option<Vec<u32>> = None;
            for s in slab.iter() {
                if let Some(p) = &prev {
                    assert!(p.as_slice() < s, "lexicographic order violated");
                }
                prev = Some(s.to_vec());
                let mut face = Vec::with_capacity(k);
                for drop in 0..=k {
                    face.clear();
                    face.extend(s.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, &v)| v));
                    assert!(sk.position(k - 1, &face).is_some(), "missing face");
                }
            }
        }
    }

    #[test]
    fn monotone_in_scale() {
        for r in 0..3u32 {
            let small = build_skeleton(4, r, 3, DEFAULT_BUDGET).unwrap();
            let large = build_skeleton(4, r + 1, 3, DEFAULT_BUDGET).unwrap();
            for k in 0..=3usize {
                if let Some(slab) = small.slab(k) {
                    for s in slab.iter() {
                        assert!(large.position(k, s).is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            build_skeleton(4, 2, 4, 10),
            Err(crate::Error::Capability(_))
        ));
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let reference = build_skeleton(4, 2, 4, DEFAULT_BUDGET).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let serial = pool.install(|| build_skeleton(4, 2, 4, DEFAULT_BUDGET).unwrap());
        for k in 0..=4usize {
            assert_eq!(reference.count(k), serial.count(k));
            if let (Some(a), Some(b)) = (reference.slab(k), serial.slab(k)) {
                assert!(a.iter().eq(b.iter()));
            }
        }
    }

    #[test]
    fn maximality_examples() {
        let sigma = Simplex::new(3, vec![0b000, 0b011, 0b101, 0b110]).unwrap();
        assert!(is_maximal(3, 2, &sigma).unwrap());

        // Same simplex embedded in Q_4 with either offset on coordinate 4.
        for offset in [0u32, 0b1000] {
            let verts: Vec<u32> = [0b000u32, 0b011, 0b101, 0b110]
                .iter()
                .map(|&b| b | offset)
                .collect();
            let sigma = Simplex::new(4, verts).unwrap();
            assert!(is_maximal(4, 2, &sigma).unwrap());
        }

        // At r = n the whole cube is one simplex, so singletons are not maximal.
        let single = Simplex::new(3, vec![0b010]).unwrap();
        assert!(!is_maximal(3, 3, &single).unwrap());

        let bad = Simplex::new(3, vec![0b000, 0b111]).unwrap();
        assert!(is_maximal(3, 2, &bad).is_err());
    }

    #[test]
    fn cross_polytope_recognition() {
        assert!(cross_polytope_isomorphic(1).unwrap());
        assert!(cross_polytope_isomorphic(2).unwrap());
        assert!(cross_polytope_isomorphic(5).unwrap());
        assert!(cross_polytope_isomorphic(1).is_ok());
        assert!(cross_polytope_isomorphic(0).is_err());
    }

    #[test]
    fn dump_is_dimension_major() {
        let sk = build_skeleton(2, 1, 1, DEFAULT_BUDGET).unwrap();
        let mut buf = Vec::new();
        sk.dump(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4 + 4); // 4 vertices, 4 edges
        assert_eq!(lines[0], "00");
        assert_eq!(lines[4], "00 10"); // first edge: 0b00 with 0b01, coordinate order
    }
}
