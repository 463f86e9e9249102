//! Betti numbers of `VR(Q_n; r)` over a prime field, and ranks of the maps on
//! homology induced by subcomplex inclusions and by scale inclusions.
//!
//! Everything is a rank computation on sparse boundary matrices. Betti numbers
//! use column reduction with the clearing optimization (reduce `d_{q+1}`
//! first; its pivot rows index columns of `d_q` that reduce to zero and are
//! skipped). Induced-map ranks concatenate subcomplex cycle generators after
//! the big complex's boundary columns and measure rank growth, which equals
//! the dimension of (cycles + boundaries)/boundaries.

use crate::error::{usage, Result};
use crate::hypercube::SubcubeEmbedding;
use crate::reduce::{kernel_basis, Field, Reducer};
use crate::rips::{build_skeleton, Simplex, SkeletonComplex};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::time::Instant;

/// Exact Betti number with the matrix statistics behind it.
#[derive(Clone, Debug, Serialize)]
pub struct BettiResult {
    pub n: u32,
    pub r: u32,
    pub q: usize,
    pub field: u32,
    pub betti: usize,
    /// Simplex counts in dimensions q-1, q, q+1.
    pub counts: [usize; 3],
    /// Ranks of d_q and d_{q+1}.
    pub rank_lower: usize,
    pub rank_upper: usize,
    pub millis: u64,
}

impl BettiResult {
    pub fn csv_header() -> &'static str {
        "n,r,q,field,betti,count_qm1,count_q,count_qp1,rank_dq,rank_dq1,millis"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.r,
            self.q,
            self.field,
            self.betti,
            self.counts[0],
            self.counts[1],
            self.counts[2],
            self.rank_lower,
            self.rank_upper,
            self.millis
        )
    }
}

/// Boundary columns of `d_k`: for column `i`, the faces of the `i`-th
/// k-simplex with alternating signs. Empty columns for `k = 0`.
fn boundary_columns(skel: &SkeletonComplex, k: usize) -> Vec<Vec<(u32, i64)>> {
    let count = skel.count(k);
    if k == 0 || count == 0 {
        return vec![Vec::new(); count];
    }
    (0..count)
        .into_par_iter()
        .map(|i| {
            let verts = skel.simplex_at(k, i);
            let mut face = Vec::with_capacity(k);
            let mut col = Vec::with_capacity(k + 1);
            for drop in 0..=k {
                face.clear();
                face.extend(
                    verts.iter().enumerate().filter(|(j, _)| *j != drop).map(|(_, &v)| v),
                );
                let row = skel
                    .position(k - 1, &face)
                    .expect("face closure guarantees every face is stored");
                let sign = if drop % 2 == 0 { 1 } else { -1 };
                col.push((row as u32, sign));
            }
            col
        })
        .collect()
}

/// Rank of `d_k`, skipping columns marked in `cleared`, and the pivot rows
/// claimed (these index the columns of `d_{k-1}` that the clearing step may
/// skip).
fn reduce_dim(
    skel: &SkeletonComplex,
    k: usize,
    field: Field,
    cleared: Option<&[bool]>,
) -> (usize, Vec<u32>) {
    if k == 0 || skel.count(k) == 0 {
        return (0, Vec::new());
    }
    let columns = boundary_columns(skel, k);
    let mut red = Reducer::new(field, skel.count(k - 1));
    for (i, col) in columns.iter().enumerate() {
        if cleared.is_some_and(|c| c[i]) {
            continue;
        }
        red.push(field, col);
    }
    let pivots = red.pivot_rows().to_vec();
    (red.rank(), pivots)
}

/// Ranks of `d_k` for `k` from `hi` down to `lo`, chaining the clearing
/// optimization downward. Returns a vec indexed by dimension (zeros outside
/// the requested range). `on_dim(k, count, rank)` fires after each dimension.
pub fn boundary_ranks_desc(
    skel: &SkeletonComplex,
    field: Field,
    hi: usize,
    lo: usize,
    mut on_dim: impl FnMut(usize, usize, usize),
) -> Vec<usize> {
    let mut ranks = vec![0usize; hi + 2];
    let mut cleared: Option<Vec<bool>> = None;
    for k in (lo..=hi).rev() {
        let (rank, pivots) = reduce_dim(skel, k, field, cleared.as_deref());
        ranks[k] = rank;
        on_dim(k, skel.count(k), rank);
        if k > 0 {
            let mut flags = vec![false; skel.count(k - 1)];
            for &p in &pivots {
                flags[p as usize] = true;
            }
            cleared = Some(flags);
        }
    }
    ranks
}

/// Rank of `d_q` over the field (no clearing; standalone).
pub fn boundary_rank(skel: &SkeletonComplex, q: usize, field: Field) -> Result<usize> {
    if q == 0 {
        return Err(usage("boundary_rank needs q >= 1"));
    }
    if q > skel.dim_cap() {
        return Err(usage(format!(
            "skeleton only holds dimensions up to {}, asked for d_{q}",
            skel.dim_cap()
        )));
    }
    Ok(reduce_dim(skel, q, field, None).0)
}

/// Exact q-th Betti number of `VR(Q_n; r)`. Unreduced: `q = 0` counts
/// connected components.
pub fn betti(n: u32, r: u32, q: usize, field: Field, budget: u64) -> Result<BettiResult> {
    let start = Instant::now();
    let skel = build_skeleton(n, r, q + 1, budget)?;
    let ranks = boundary_ranks_desc(&skel, field, q + 1, q.max(1), |_, _, _| {});
    Ok(assemble(&skel, q, field, &ranks, start.elapsed().as_millis() as u64))
}

/// Betti numbers for all `0 <= q <= q_max` from one skeleton build and one
/// downward reduction chain.
pub fn betti_profile(
    n: u32,
    r: u32,
    q_max: usize,
    field: Field,
    budget: u64,
) -> Result<Vec<BettiResult>> {
    let start = Instant::now();
    let skel = build_skeleton(n, r, q_max + 1, budget)?;
    let ranks = boundary_ranks_desc(&skel, field, q_max + 1, 1, |_, _, _| {});
    let millis = start.elapsed().as_millis() as u64;
    Ok((0..=q_max).map(|q| assemble(&skel, q, field, &ranks, millis)).collect())
}

fn assemble(
    skel: &SkeletonComplex,
    q: usize,
    field: Field,
    ranks: &[usize],
    millis: u64,
) -> BettiResult {
    let count_q = skel.count(q);
    let rank_lower = if q == 0 { 0 } else { ranks[q] };
    let rank_upper = ranks[q + 1];
    BettiResult {
        n: skel.n(),
        r: skel.r(),
        q,
        field: field.modulus(),
        betti: count_q - rank_lower - rank_upper,
        counts: [if q == 0 { 0 } else { skel.count(q - 1) }, count_q, skel.count(q + 1)],
        rank_lower,
        rank_upper,
        millis,
    }
}

/// Kernel basis of `d_q` for `VR(Q_p; r)`, as supports in the complex's own
/// q-simplex index space.
fn cycle_space(p: u32, r: u32, q: usize, field: Field, budget: u64) -> Result<CycleSpace> {
    let skel = build_skeleton(p, r, q, budget)?;
    let columns = boundary_columns(&skel, q);
    let nrows = if q == 0 { 0 } else { skel.count(q - 1) };
    let cycles = kernel_basis(field, nrows, &columns);
    Ok(CycleSpace { skel, cycles })
}

struct CycleSpace {
    skel: SkeletonComplex,
    cycles: Vec<Vec<(u32, u32)>>,
}

/// Rank of the map on `H_q` induced by including the given subcubes'
/// Vietoris-Rips complexes into `VR(Q_n; r)`: the dimension of
/// (subcomplex cycles + boundaries) / boundaries. With the full list of
/// p-subcubes this is the rank of the all-inclusions homomorphism.
pub fn induced_map_rank(
    subs: &[SubcubeEmbedding],
    n: u32,
    r: u32,
    q: usize,
    field: Field,
    budget: u64,
) -> Result<usize> {
    if subs.is_empty() {
        return Err(usage("need at least one subcube"));
    }
    let p = subs[0].subcube_dim();
    for e in subs {
        if e.is_degenerate() {
            return Err(usage("degenerate subcube has no Rips complex"));
        }
        if e.ambient_dim() != n {
            return Err(usage("subcube ambient dimension mismatch"));
        }
        if e.subcube_dim() != p {
            return Err(usage("subcubes must share one dimension"));
        }
    }
    let big = build_skeleton(n, r, q + 1, budget)?;
    let sub = cycle_space(p, r, q, field, budget)?;
    let mut red = Reducer::new(field, big.count(q));
    for col in boundary_columns(&big, q + 1) {
        red.push(field, &col);
    }
    let base = red.rank();
    let mut entries: Vec<(u32, i64)> = Vec::new();
    let mut mapped: Vec<u32> = Vec::new();
    for e in subs {
        for cycle in &sub.cycles {
            entries.clear();
            for &(local, coeff) in cycle {
                mapped.clear();
                mapped.extend(
                    sub.skel.simplex_at(q, local as usize).iter().map(|&v| e.embed_bits(v)),
                );
                let idx = big
                    .position(q, &mapped)
                    .expect("isometric embedding preserves the diameter bound");
                entries.push((idx as u32, coeff as i64));
            }
            red.push(field, &entries);
        }
    }
    Ok(red.rank() - base)
}

/// Rank of `H_q(VR(Q_n; r)) / im (Psi_{m-1,n})_*`: the Betti number minus the
/// rank spanned by all (m-1)-subcube inclusions.
pub fn quotient_rank(
    n: u32,
    r: u32,
    q: usize,
    m: u32,
    field: Field,
    budget: u64,
) -> Result<usize> {
    if m < 2 || m > n {
        return Err(usage(format!("quotient rank needs 2 <= m <= n, got m={m}, n={n}")));
    }
    let subs = crate::hypercube::enumerate_subcubes(n, m - 1)?;
    let total = betti(n, r, q, field, budget)?.betti;
    let image = induced_map_rank(&subs, n, r, q, field, budget)?;
    Ok(total - image)
}

/// Rank of `H_q(VR(Q_n; r)) -> H_q(VR(Q_n; r'))` under the scale inclusion.
/// Zero for every integer `r < r'`; the identity (`r = r'`) returns the Betti
/// number.
pub fn scale_inclusion_rank(
    n: u32,
    r: u32,
    r_prime: u32,
    q: usize,
    field: Field,
    budget: u64,
) -> Result<usize> {
    if r > r_prime {
        return Err(usage(format!("scale inclusion needs r <= r', got {r} > {r_prime}")));
    }
    let small = cycle_space(n, r, q, field, budget)?;
    let big = build_skeleton(n, r_prime, q + 1, budget)?;
    let mut red = Reducer::new(field, big.count(q));
    for col in boundary_columns(&big, q + 1) {
        red.push(field, &col);
    }
    let base = red.rank();
    let mut entries: Vec<(u32, i64)> = Vec::new();
    for cycle in &small.cycles {
        entries.clear();
        for &(local, coeff) in cycle {
            let verts = small.skel.simplex_at(q, local as usize);
            let idx = big.position(q, verts).expect("scale inclusion is simplexwise");
            entries.push((idx as u32, coeff as i64));
        }
        red.push(field, &entries);
    }
    Ok(red.rank() - base)
}

/// A chain: field coefficients on q-simplices of an ambient skeleton, sparse
/// and sorted by simplex index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub q: usize,
    pub entries: Vec<(u32, u32)>,
}

/// A cochain, same representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub q: usize,
    pub entries: Vec<(u32, u32)>,
}

/// Evaluate a cochain against a chain: the sum of products of matching
/// coefficients. For an indicator cochain of a maximal simplex this is the
/// cap-product pairing that reads off the simplex's coefficient in the cycle.
pub fn pair(field: Field, omega: &Cochain, alpha: &Chain) -> Result<u32> {
    if omega.q != alpha.q {
        return Err(usage(format!(
            "pairing dimension mismatch: cochain in dim {}, chain in dim {}",
            omega.q, alpha.q
        )));
    }
    let p = field.modulus() as u64;
    let mut acc = 0u64;
    let mut it = alpha.entries.iter().peekable();
    for &(idx, w) in &omega.entries {
        while let Some(&&(j, _)) = it.peek() {
            if j < idx {
                it.next();
            } else {
                break;
            }
        }
        if let Some(&&(j, a)) = it.peek() {
            if j == idx {
                acc = (acc + w as u64 * a as u64) % p;
            }
        }
    }
    Ok(acc as u32)
}

/// Faces of odd multiplicity in the Z/2 boundary of a formal sum of
/// simplices. Empty output means the sum is a cycle.
pub fn gf2_boundary_support(terms: &[Simplex]) -> Result<Vec<Simplex>> {
    let Some(first) = terms.first() else {
        return Ok(Vec::new());
    };
    let k = first.dim();
    let n = first.ambient_dim();
    let mut parity: HashMap<Vec<u32>, bool> = HashMap::new();
    for t in terms {
        if t.dim() != k || t.ambient_dim() != n {
            return Err(usage("boundary of a mixed-dimension sum"));
        }
        for drop in 0..=k {
            let face: Vec<u32> = t
                .verts()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .map(|(_, &v)| v)
                .collect();
            *parity.entry(face).or_insert(false) ^= true;
        }
    }
    let mut odd: Vec<Vec<u32>> =
        parity.into_iter().filter(|(_, p)| *p).map(|(f, _)| f).collect();
    odd.sort();
    odd.into_iter().map(|f| Simplex::new(n, f)).collect()
}
