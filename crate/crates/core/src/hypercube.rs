//! The hypercube graph `Q_n` as a metric space, and the maps on it used by the
//! rest of the crate: subcube embeddings and projections, cubic hulls,
//! concentration maps, and an exhaustive contraction verifier.
//!
//! A vertex of `Q_n` is an n-bit word; coordinate `i` (1-based, as in the
//! tuple notation `(a_1, ..., a_n)`) is bit `i-1`. Distance is Hamming
//! distance, so `XOR` + popcount make it O(1).

use crate::error::{capability, usage, Result};

/// Hard cap on the ambient dimension; everything here enumerates `2^n`.
pub const MAX_DIM: u32 = 24;

/// Exhaustive pair verification is `4^n`; refuse beyond this.
pub const MAX_VERIFY_DIM: u32 = 14;

/// A vertex of `Q_n`, stored as an n-bit word.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    bits: u32,
    n: u32,
}

impl Vertex {
    pub fn new(bits: u32, n: u32) -> Result<Self> {
        check_dim(n)?;
        if n < 32 && bits >= 1 << n {
            return Err(usage(format!("vertex bits {bits:#b} out of range for Q_{n}")));
        }
        Ok(Vertex { bits, n })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    /// The point differing in every coordinate.
    pub fn antipode(&self) -> Vertex {
        Vertex { bits: !self.bits & mask_n(self.n), n: self.n }
    }

    /// Coordinate-order rendering: leftmost character is coordinate 1 (bit 0).
    pub fn coord_string(&self) -> String {
        coord_string(self.bits, self.n)
    }

    /// Parse a coordinate-order binary string (inverse of `coord_string`).
    pub fn from_coord_string(s: &str) -> Result<Self> {
        let n = s.len() as u32;
        check_dim(n)?;
        let mut bits = 0u32;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(usage(format!("invalid vertex string {s:?}"))),
            }
        }
        Ok(Vertex { bits, n })
    }
}

pub(crate) fn mask_n(n: u32) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub(crate) fn coord_string(bits: u32, n: u32) -> String {
    (0..n).map(|i| if bits >> i & 1 == 1 { '1' } else { '0' }).collect()
}

fn check_dim(n: u32) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(usage(format!("dimension {n} outside 1..={MAX_DIM}")));
    }
    Ok(())
}

fn check_same_dim(u: Vertex, v: Vertex) -> Result<()> {
    if u.n != v.n {
        return Err(usage(format!("dimension mismatch: Q_{} vs Q_{}", u.n, v.n)));
    }
    Ok(())
}

/// Hamming distance: the number of coordinates in which `u` and `v` differ.
pub fn distance(u: Vertex, v: Vertex) -> Result<u32> {
    check_same_dim(u, v)?;
    Ok((u.bits ^ v.bits).count_ones())
}

/// Antipode as a free function, mirroring `distance`.
pub fn antipode(u: Vertex) -> Vertex {
    u.antipode()
}

/// A finite subset of one `Q_n`, kept strictly increasing by bit pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    n: u32,
    members: Vec<u32>,
}

impl VertexSet {
    pub fn new(n: u32, mut members: Vec<u32>) -> Result<Self> {
        check_dim(n)?;
        if members.is_empty() {
            return Err(usage("vertex set must be nonempty"));
        }
        members.sort_unstable();
        members.dedup();
        if let Some(&b) = members.last() {
            if n < 32 && b >= 1 << n {
                return Err(usage(format!("member {b:#b} out of range for Q_{n}")));
            }
        }
        Ok(VertexSet { n, members })
    }

    pub fn from_vertices(vertices: &[Vertex]) -> Result<Self> {
        let n = vertices.first().ok_or_else(|| usage("vertex set must be nonempty"))?.n;
        for v in vertices {
            if v.n != n {
                return Err(usage("vertex set members must share one dimension"));
            }
        }
        Self::new(n, vertices.iter().map(|v| v.bits).collect())
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.n == self.n && self.members.binary_search(&v.bits).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.members.iter().map(move |&b| Vertex { bits: b, n: self.n })
    }
}

/// Max pairwise distance within `a`.
pub fn diameter(a: &VertexSet) -> u32 {
    let m = a.members();
    let mut best = 0;
    for (i, &x) in m.iter().enumerate() {
        for &y in &m[i + 1..] {
            best = best.max((x ^ y).count_ones());
        }
    }
    best
}

/// Max distance from `w` to a member of `a`; requires `w` in `a`.
pub fn local_diameter(a: &VertexSet, w: Vertex) -> Result<u32> {
    if !a.contains(w) {
        return Err(usage("local_diameter base point not in the set"));
    }
    Ok(a.members().iter().map(|&x| (x ^ w.bits).count_ones()).max().unwrap_or(0))
}

/// An order-preserving isometric embedding of `Q_p` into `Q_n`: the coordinate
/// subset `S` (an n-bit mask) receives the embedded coordinates in order, and
/// the offset fixes the remaining bits.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubcubeEmbedding {
    n: u32,
    mask: u32,
    offset: u32,
}

impl SubcubeEmbedding {
    pub fn new(n: u32, mask: u32, offset: u32) -> Result<Self> {
        check_dim(n)?;
        if mask == 0 {
            return Err(usage("subcube coordinate set must be nonempty"));
        }
        if mask & !mask_n(n) != 0 || offset & !mask_n(n) != 0 {
            return Err(usage(format!("mask/offset out of range for Q_{n}")));
        }
        if offset & mask != 0 {
            return Err(usage("offset must be zero on the subcube coordinates"));
        }
        Ok(SubcubeEmbedding { n, mask, offset })
    }

    /// Degenerate zero-dimensional "subcube" at a single point. Only
    /// `cubic_hull` of a singleton produces this; callers must check
    /// [`Self::is_degenerate`] before using it as an embedding.
    pub(crate) fn degenerate(n: u32, point: u32) -> Self {
        SubcubeEmbedding { n, mask: 0, offset: point }
    }

    pub fn ambient_dim(&self) -> u32 {
        self.n
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn offset(&self) -> u32 {
        self.offset
    }

    /// Dimension `p` of the embedded cube.
    pub fn subcube_dim(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_degenerate(&self) -> bool {
        self.mask == 0
    }

    /// Raw bit scatter of a p-bit word into the masked positions plus offset.
    pub fn embed_bits(&self, x: u32) -> u32 {
        scatter(x, self.mask) | self.offset
    }

    /// Raw bit gather from the masked positions.
    pub fn project_bits(&self, y: u32) -> u32 {
        gather(y, self.mask)
    }

    /// Nearest point of the subcube: gather then re-embed.
    pub fn project_onto_bits(&self, y: u32) -> u32 {
        self.embed_bits(self.project_bits(y))
    }

    /// Does `y` lie on the embedded subcube?
    pub fn contains_bits(&self, y: u32) -> bool {
        y & !self.mask == self.offset
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        (0u32..1 << self.subcube_dim()).map(move |x| self.embed_bits(x))
    }
}

/// Scatter the low `popcount(mask)` bits of `x` into the set positions of
/// `mask`, preserving bit order.
pub fn scatter(x: u32, mask: u32) -> u32 {
    let mut out = 0;
    let mut src = 0;
    let mut m = mask;
    while m != 0 {
        let pos = m.trailing_zeros();
        out |= (x >> src & 1) << pos;
        src += 1;
        m &= m - 1;
    }
    out
}

/// Gather the bits of `y` at the set positions of `mask` into a dense word.
pub fn gather(y: u32, mask: u32) -> u32 {
    let mut out = 0;
    let mut dst = 0;
    let mut m = mask;
    while m != 0 {
        let pos = m.trailing_zeros();
        out |= (y >> pos & 1) << dst;
        dst += 1;
        m &= m - 1;
    }
    out
}

/// `embed(e, x)`: scatter a `Q_p` vertex into `Q_n` through the embedding.
pub fn embed(e: &SubcubeEmbedding, x: Vertex) -> Result<Vertex> {
    if e.is_degenerate() {
        return Err(usage("cannot embed through a degenerate subcube"));
    }
    if x.n != e.subcube_dim() {
        return Err(usage(format!(
            "embed: vertex lives in Q_{} but the subcube has dimension {}",
            x.n,
            e.subcube_dim()
        )));
    }
    Ok(Vertex { bits: e.embed_bits(x.bits), n: e.n })
}

/// `project(S, y)`: gather the coordinates of `S`, preserving order.
pub fn project(mask: u32, y: Vertex) -> Result<Vertex> {
    if mask == 0 {
        return Err(usage("projection coordinate set must be nonempty"));
    }
    if mask & !mask_n(y.n) != 0 {
        return Err(usage(format!("mask {mask:#b} out of range for Q_{}", y.n)));
    }
    Ok(Vertex { bits: gather(y.bits, mask), n: mask.count_ones() })
}

/// `project_onto(e, y) = embed(e, project(S, y))`: the nearest point of the
/// embedded subcube.
pub fn project_onto(e: &SubcubeEmbedding, y: Vertex) -> Result<Vertex> {
    if e.is_degenerate() {
        return Err(usage("cannot project onto a degenerate subcube"));
    }
    if y.n != e.n {
        return Err(usage(format!("project_onto: vertex in Q_{} vs ambient Q_{}", y.n, e.n)));
    }
    Ok(Vertex { bits: e.project_onto_bits(y.bits), n: e.n })
}

/// The smallest coordinate-aligned subcube containing `b`: free coordinates
/// are those where members differ, the offset records the shared values.
///
/// A singleton yields the degenerate zero-dimensional subcube at that point.
pub fn cubic_hull(b: &VertexSet) -> SubcubeEmbedding {
    let m = b.members();
    let first = m[0];
    let mut mask = 0;
    for &x in &m[1..] {
        mask |= x ^ first;
    }
    if mask == 0 {
        return SubcubeEmbedding::degenerate(b.n, first);
    }
    SubcubeEmbedding { n: b.n, mask, offset: first & !mask }
}

/// A concentration map `Q_n -> C` of codimension `n-k`, with
/// `C = {0,1}^k x {a}`. Off `C`, coordinates below `k` are kept, coordinate
/// `k` is pinned to the pivot value, and the tail is forced to `a`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ConcentrationSpec {
    n: u32,
    k: u32,
    /// Values of coordinates k+1..n, as an n-bit word with zero low bits.
    tail: u32,
    /// Pin coordinate k to 1 (the convention) or to 0 (for symmetry tests).
    pivot_one: bool,
}

impl ConcentrationSpec {
    pub fn new(n: u32, k: u32, tail: u32) -> Result<Self> {
        Self::with_pivot(n, k, tail, true)
    }

    pub fn with_pivot(n: u32, k: u32, tail: u32, pivot_one: bool) -> Result<Self> {
        check_dim(n)?;
        if k == 0 || k >= n {
            return Err(usage(format!("concentration requires 1 <= k < n, got k={k}, n={n}")));
        }
        if tail & mask_n(k) != 0 {
            return Err(usage("tail values must be zero on coordinates 1..=k"));
        }
        if tail & !mask_n(n) != 0 {
            return Err(usage(format!("tail out of range for Q_{n}")));
        }
        Ok(ConcentrationSpec { n, k, tail, pivot_one })
    }

    pub fn ambient_dim(&self) -> u32 {
        self.n
    }

    pub fn target_dim(&self) -> u32 {
        self.k
    }

    /// The target subcube `C` as an embedding.
    pub fn target(&self) -> SubcubeEmbedding {
        SubcubeEmbedding { n: self.n, mask: mask_n(self.k), offset: self.tail }
    }

    pub fn apply_bits(&self, x: u32) -> u32 {
        if x & !mask_n(self.k) == self.tail {
            return x; // already on C
        }
        let kept = x & mask_n(self.k - 1);
        let pivot = if self.pivot_one { 1 << (self.k - 1) } else { 0 };
        kept | pivot | self.tail
    }
}

/// Apply the concentration map to a vertex.
pub fn concentrate(c: &ConcentrationSpec, x: Vertex) -> Result<Vertex> {
    if x.n != c.n {
        return Err(usage(format!("concentrate: vertex in Q_{} vs ambient Q_{}", x.n, c.n)));
    }
    Ok(Vertex { bits: c.apply_bits(x.bits), n: c.n })
}

/// Exhaustively verify that `map` is a contraction onto `fixed`: identity on
/// `fixed` and 1-Lipschitz on all `2^{2n}` ordered pairs.
pub fn verify_contraction(
    map: impl Fn(u32) -> u32,
    n: u32,
    fixed: &VertexSet,
) -> Result<bool> {
    check_dim(n)?;
    if n > MAX_VERIFY_DIM {
        return Err(capability(format!(
            "exhaustive contraction check needs 4^{n} pair evaluations; capped at n <= {MAX_VERIFY_DIM}"
        )));
    }
    if fixed.dim() != n {
        return Err(usage("fixed subspace dimension mismatch"));
    }
    for &a in fixed.members() {
        if map(a) != a {
            return Ok(false);
        }
    }
    let size = 1u32 << n;
    let images: Vec<u32> = (0..size).map(&map).collect();
    for x in 0..size {
        for y in x + 1..size {
            let d = (x ^ y).count_ones();
            let df = (images[x as usize] ^ images[y as usize]).count_ones();
            if df > d {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All order-preserving embeddings of `Q_p` into `Q_n`: every coordinate
/// subset of size `p` paired with every offset, in ascending (mask, offset)
/// order. There are `binom(n, p) * 2^(n-p)` of them.
pub fn enumerate_subcubes(n: u32, p: u32) -> Result<Vec<SubcubeEmbedding>> {
    check_dim(n)?;
    if p == 0 || p > n {
        return Err(usage(format!("subcube dimension {p} outside 1..={n}")));
    }
    let mut out = Vec::new();
    for mask in masks_of_weight(n, p) {
        let comp = !mask & mask_n(n);
        let free = comp.count_ones();
        for t in 0..1u32 << free {
            out.push(SubcubeEmbedding { n, mask, offset: scatter(t, comp) });
        }
    }
    Ok(out)
}

/// Ascending enumeration of n-bit masks with exactly `w` bits set.
pub fn masks_of_weight(n: u32, w: u32) -> Vec<u32> {
    let mut out = Vec::new();
    if w == 0 {
        out.push(0);
        return out;
    }
    if w > n {
        return out;
    }
    // Gosper's hack.
    let limit = mask_n(n);
    let mut v = mask_n(w);
    while v <= limit {
        out.push(v);
        let t = v | (v - 1);
        let next = t.wrapping_add(1) | (((!t & t.wrapping_add(1)) - 1) >> (v.trailing_zeros() + 1));
        if next <= v {
            break;
        }
        v = next;
    }
    out
}
