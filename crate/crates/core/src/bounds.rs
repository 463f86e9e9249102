//! Closed-form lower bounds on Betti numbers of `VR(Q_n; r)`, evaluated in
//! exact big-integer arithmetic.
//!
//! Four bound shapes, tagged by source:
//!
//! * cross-polytope: `2^(n-(r+1)) * binom(n, r+1)` independent classes in
//!   dimension `2^r - 1`, no seed needed;
//! * projection: `binom(n, p) * seed`;
//! * codimension 1: `(2p+1) * seed`;
//! * propagation / quotient propagation: `sum_{i=base}^n 2^(i-base) *
//!   binom(i-1, base-1) * seed`, identical summations that differ in what the
//!   seed measures (a Betti number of `VR(Q_base; r)` versus a rank of
//!   `H_q / im(Psi_{base-1,base})`).
//!
//! Seeded bounds take their seed ranks from data, not code: a bundled JSON
//! file ships defaults for `r <= 4`, and callers may substitute their own as
//! new computations land.

use crate::error::{usage, Result};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Memoized Pascal triangle with arbitrary-precision entries.
pub struct Binomials {
    rows: Vec<Vec<BigUint>>,
}

impl Binomials {
    pub fn new() -> Self {
        Binomials { rows: vec![vec![BigUint::one()]] }
    }

    pub fn get(&mut self, n: u64, k: u64) -> BigUint {
        if k > n {
            return BigUint::zero();
        }
        while (self.rows.len() as u64) <= n {
            let prev = self.rows.last().unwrap();
            let mut row = Vec::with_capacity(prev.len() + 1);
            row.push(BigUint::one());
            for w in prev.windows(2) {
                row.push(&w[0] + &w[1]);
            }
            row.push(BigUint::one());
            self.rows.push(row);
        }
        self.rows[n as usize][k as usize].clone()
    }
}

impl Default for Binomials {
    fn default() -> Self {
        Self::new()
    }
}

fn pow2(e: u64) -> BigUint {
    BigUint::one() << e as usize
}

/// Which theorem-shaped formula produced a bound.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    CrossPolytope,
    Projection,
    Codim1,
    Propagation,
    Quotient,
    Combined,
}

impl std::fmt::Display for BoundSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            BoundSource::CrossPolytope => "cross_polytope",
            BoundSource::Projection => "projection",
            BoundSource::Codim1 => "codim1",
            BoundSource::Propagation => "propagation",
            BoundSource::Quotient => "quotient",
            BoundSource::Combined => "combined",
        };
        f.write_str(s)
    }
}

/// A seed rank that entered a bound, with provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedRef {
    /// The `p` or `m` of the summation.
    pub base: u32,
    pub rank: BigUint,
    pub note: String,
}

/// An evaluated lower bound with provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRecord {
    pub n: u32,
    /// Scale, where the formula pins it (cross-polytope) or the caller
    /// supplies it (table rows).
    pub r: Option<u32>,
    /// Homology dimension the bound addresses, when pinned.
    pub q: Option<u64>,
    pub value: BigUint,
    pub source: BoundSource,
    pub seeds: Vec<SeedRef>,
}

/// `2^(n-(r+1)) * binom(n, r+1)` independent cross-polytopal classes in
/// dimension `2^r - 1`.
pub fn bound_cross_polytope(n: u32, r: u32) -> Result<BoundRecord> {
    if r < 2 {
        return Err(usage("the cross-polytopal bound needs r >= 2"));
    }
    if n < r + 1 {
        return Err(usage(format!("the cross-polytopal bound needs n >= r+1, got n={n}, r={r}")));
    }
    let mut binom = Binomials::new();
    let value = pow2((n - r - 1) as u64) * binom.get(n as u64, (r + 1) as u64);
    Ok(BoundRecord {
        n,
        r: Some(r),
        q: Some((1u64 << r.min(62)) - 1),
        value,
        source: BoundSource::CrossPolytope,
        seeds: Vec::new(),
    })
}

/// `binom(n, p) * seed`: one marked copy of `Q_p` per coordinate subset.
pub fn bound_projection(n: u32, p: u32, seed: &BigUint) -> Result<BoundRecord> {
    if p < 1 || n < p {
        return Err(usage(format!("projection bound needs n >= p >= 1, got n={n}, p={p}")));
    }
    let mut binom = Binomials::new();
    Ok(BoundRecord {
        n,
        r: None,
        q: None,
        value: binom.get(n as u64, p as u64) * seed,
        source: BoundSource::Projection,
        seeds: vec![SeedRef { base: p, rank: seed.clone(), note: String::new() }],
    })
}

/// `(2p+1) * seed`: all but one of the `2p+2` codimension-1 subcubes stay
/// independent.
pub fn bound_codim1(p: u32, seed: &BigUint) -> Result<BoundRecord> {
    if p < 1 {
        return Err(usage("codimension-1 bound needs p >= 1"));
    }
    Ok(BoundRecord {
        n: p + 1,
        r: None,
        q: None,
        value: BigUint::from(2 * p + 1) * seed,
        source: BoundSource::Codim1,
        seeds: vec![SeedRef { base: p, rank: seed.clone(), note: String::new() }],
    })
}

fn propagation_sum(n: u32, base: u32, seed: &BigUint) -> BigUint {
    let mut binom = Binomials::new();
    let mut acc = BigUint::zero();
    for i in base..=n {
        acc += pow2((i - base) as u64) * binom.get((i - 1) as u64, (base - 1) as u64);
    }
    acc * seed
}

/// `sum_{i=p}^n 2^(i-p) * binom(i-1, p-1) * seed`, where `p` is the first
/// dimension with nonzero `H_q` and the seed is its rank.
pub fn bound_propagation(n: u32, p: u32, seed: &BigUint) -> Result<BoundRecord> {
    if p < 1 || n < p {
        return Err(usage(format!("propagation bound needs n >= p >= 1, got n={n}, p={p}")));
    }
    Ok(BoundRecord {
        n,
        r: None,
        q: None,
        value: propagation_sum(n, p, seed),
        source: BoundSource::Propagation,
        seeds: vec![SeedRef { base: p, rank: seed.clone(), note: String::new() }],
    })
}

/// Same summation as propagation, seeded with a quotient rank
/// `R_m = rank(H_q / im(Psi_{m-1,m}))`; bounds the part of `H_q` not induced
/// from `(m-1)`-subcubes.
pub fn bound_quotient(n: u32, m: u32, seed: &BigUint) -> Result<BoundRecord> {
    if m < 1 || n < m {
        return Err(usage(format!("quotient bound needs n >= m >= 1, got n={n}, m={m}")));
    }
    Ok(BoundRecord {
        n,
        r: None,
        q: None,
        value: propagation_sum(n, m, seed),
        source: BoundSource::Quotient,
        seeds: vec![SeedRef { base: m, rank: seed.clone(), note: String::new() }],
    })
}

/// The closed-form count of 3-spheres at scale 2:
/// `c_n = sum_{0 <= j < i < n} (j+1) * (2^(n-2) - 2^(i-1))`.
pub fn c_n(n: u32) -> Result<BigUint> {
    if n < 3 {
        return Err(usage("c_n is defined for n >= 3"));
    }
    let mut acc = BigUint::zero();
    let base = pow2((n - 2) as u64);
    for i in 1..n as u64 {
        let term = &base - pow2(i - 1);
        for j in 0..i {
            acc += BigUint::from(j + 1) * &term;
        }
    }
    Ok(acc)
}

/// The two closed-form sphere counts at scale 3:
/// `2^(n-4) * binom(n,4)` seven-spheres and
/// `sum_{i=4}^{n-1} 2^(i-4) * binom(i,4)` four-spheres.
pub fn scale3_sphere_counts(n: u32) -> Result<(BigUint, BigUint)> {
    if n < 5 {
        return Err(usage("sphere counts at scale 3 are defined for n >= 5"));
    }
    let mut binom = Binomials::new();
    let count7 = pow2((n - 4) as u64) * binom.get(n as u64, 4);
    let mut count4 = BigUint::zero();
    for i in 4..n as u64 {
        count4 += pow2(i - 4) * binom.get(i, 4);
    }
    Ok((count7, count4))
}

/// `n * 2^(n-1) - 2^n + 1`, the first Betti number of the hypercube graph.
pub fn beta1_closed_form(n: u32) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    // Rearranged to stay nonnegative: n*2^(n-1) + 1 - 2^n.
    BigUint::from(n as u64) * pow2((n - 1) as u64) + BigUint::one() - pow2(n as u64)
}

/// Verify both summation identities exactly for all `n <= n_max`:
/// `sum_{i=2}^n (i-1) 2^(i-2) = n 2^(n-1) - 2^n + 1` and
/// `sum_{i=3}^n 2^(i-3) binom(i,3) = 2^(n-2) binom(n,3)
///  - sum_{i=1}^{n-2} 2^(i-1) binom(i+1,2)`.
pub fn summation_identities(n_max: u32) -> Result<bool> {
    if n_max < 3 {
        return Err(usage("identity check needs n_max >= 3"));
    }
    let mut binom = Binomials::new();
    for n in 2..=n_max as u64 {
        let mut lhs = BigUint::zero();
        for i in 2..=n {
            lhs += BigUint::from(i - 1) * pow2(i - 2);
        }
        // lhs + 2^n == n*2^(n-1) + 1, avoiding subtraction.
        if lhs + pow2(n) != BigUint::from(n) * pow2(n - 1) + BigUint::one() {
            return Ok(false);
        }
    }
    for n in 3..=n_max as u64 {
        let mut lhs = BigUint::zero();
        for i in 3..=n {
            lhs += pow2(i - 3) * binom.get(i, 3);
        }
        let mut correction = BigUint::zero();
        for i in 1..=n - 2 {
            correction += pow2(i - 1) * binom.get(i + 1, 2);
        }
        if lhs + correction != pow2(n - 2) * binom.get(n, 3) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The telescoping identity behind the scale-2 column: the cross-polytopal
/// bound plus the quotient bound seeded at m=4 equals `c_n`, for every
/// `3 <= n <= n_max` (at `n = 3` the quotient summation is empty).
pub fn chain_identity_holds(n_max: u32) -> Result<bool> {
    if n_max < 3 {
        return Err(usage("chain identity check needs n_max >= 3"));
    }
    for n in 3..=n_max {
        let mut total = bound_cross_polytope(n, 2)?.value;
        if n >= 4 {
            total += bound_quotient(n, 4, &BigUint::one())?.value;
        }
        if total != c_n(n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// What a seed rank measures.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedKind {
    Propagation,
    Quotient,
}

/// A seed rank entry: the scale it belongs to, the homology dimension it
/// bounds, the base dimension of the summation, and provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seed {
    pub r: u32,
    pub q: u64,
    pub base_dim: u32,
    pub rank: u64,
    pub kind: SeedKind,
    pub field: String,
    pub note: String,
}

const DEFAULT_SEEDS_JSON: &str = include_str!("../data/default_seeds.json");

/// The bundled seed ranks for `r <= 4`.
pub fn default_seeds() -> Vec<Seed> {
    serde_json::from_str(DEFAULT_SEEDS_JSON).expect("bundled seed file parses")
}

/// Parse a user-supplied seed file (JSON array of seed objects).
pub fn parse_seeds(json: &str) -> Result<Vec<Seed>> {
    let seeds: Vec<Seed> =
        serde_json::from_str(json).map_err(|e| usage(format!("malformed seed file: {e}")))?;
    for s in &seeds {
        if s.base_dim < 1 {
            return Err(usage("seed base dimension must be >= 1"));
        }
    }
    Ok(seeds)
}

/// One table cell: the combined bound for a homology dimension, with its
/// additive decomposition.
#[derive(Clone, Debug)]
pub struct TableCell {
    pub q: u64,
    pub total: BigUint,
    pub parts: Vec<BoundRecord>,
}

impl TableCell {
    pub fn decomposition(&self) -> String {
        let parts: Vec<String> = self.parts.iter().map(|p| p.value.to_string()).collect();
        parts.join("+")
    }

    pub fn sources(&self) -> String {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|p| match p.seeds.first() {
                Some(seed) => format!("{}(base={})", p.source, seed.base),
                None => p.source.to_string(),
            })
            .collect();
        parts.join("+")
    }
}

/// One table row: all bounded dimensions for a given `n`, highest first.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub n: u32,
    pub r: u32,
    pub cells: Vec<TableCell>,
}

/// Evaluate the combined bound columns for scale `r` and `r+1 <= n <= n_max`.
///
/// Per dimension `q`, quotient-seeded bounds add onto the cross-polytopal
/// term (they count classes missed by smaller subcubes, so nothing is
/// double-counted), while propagation-seeded bounds compete by maximum with
/// that sum (their summation already includes every smaller subcube's
/// contribution).
pub fn table(r: u32, n_max: u32, seeds: &[Seed]) -> Result<Vec<TableRow>> {
    if r < 1 {
        return Err(usage("bound tables need r >= 1"));
    }
    if n_max < r + 1 {
        return Err(usage(format!("n_max must be at least r+1 = {}", r + 1)));
    }
    let cross_q: Option<u64> = if r >= 2 { Some((1u64 << r.min(62)) - 1) } else { None };
    let mut qs: Vec<u64> = seeds.iter().filter(|s| s.r == r).map(|s| s.q).collect();
    if let Some(q) = cross_q {
        qs.push(q);
    }
    qs.sort_unstable_by(|a, b| b.cmp(a));
    qs.dedup();

    let mut rows = Vec::new();
    for n in r + 1..=n_max {
        let mut cells = Vec::new();
        for &q in &qs {
            let mut additive: Vec<BoundRecord> = Vec::new();
            if cross_q == Some(q) {
                additive.push(bound_cross_polytope(n, r)?);
            }
            for seed in seeds.iter().filter(|s| {
                s.r == r && s.q == q && s.kind == SeedKind::Quotient && s.base_dim <= n
            }) {
                let mut rec = bound_quotient(n, seed.base_dim, &BigUint::from(seed.rank))?;
                rec.r = Some(r);
                rec.q = Some(q);
                rec.seeds[0].note = seed.note.clone();
                additive.push(rec);
            }
            let additive_total: BigUint = additive.iter().map(|p| p.value.clone()).sum();
            let mut best_parts = additive;
            let mut best_total = additive_total;
            for seed in seeds.iter().filter(|s| {
                s.r == r && s.q == q && s.kind == SeedKind::Propagation && s.base_dim <= n
            }) {
                let mut rec = bound_propagation(n, seed.base_dim, &BigUint::from(seed.rank))?;
                rec.r = Some(r);
                rec.q = Some(q);
                rec.seeds[0].note = seed.note.clone();
                if rec.value > best_total {
                    best_total = rec.value.clone();
                    best_parts = vec![rec];
                }
            }
            if !best_parts.is_empty() {
                cells.push(TableCell { q, total: best_total, parts: best_parts });
            }
        }
        rows.push(TableRow { n, r, cells });
    }
    Ok(rows)
}

/// CSV rendering: one line per (n, q) cell.
pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("n,r,q,bound,decomposition,sources\n");
    for row in rows {
        for cell in &row.cells {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                row.n,
                row.r,
                cell.q,
                cell.total,
                cell.decomposition(),
                cell.sources()
            ));
        }
    }
    out
}

/// JSON rendering with big values as decimal strings.
pub fn table_json(rows: &[TableRow]) -> serde_json::Value {
    serde_json::Value::Array(
        rows.iter()
            .map(|row| {
                serde_json::json!({
                    "n": row.n,
                    "r": row.r,
                    "cells": row.cells.iter().map(|cell| serde_json::json!({
                        "q": cell.q,
                        "bound": cell.total.to_string(),
                        "decomposition": cell.decomposition(),
                        "sources": cell.sources(),
                        "seeds": cell.parts.iter().flat_map(|p| p.seeds.iter().map(|s| serde_json::json!({
                            "base": s.base,
                            "rank": s.rank.to_string(),
                            "note": s.note,
                        }))).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

/// Markdown rendering shaped like the comparison tables: one column per
/// bounded dimension, decompositions kept visible.
pub fn table_markdown(rows: &[TableRow]) -> String {
    let mut qs: Vec<u64> = rows.iter().flat_map(|r| r.cells.iter().map(|c| c.q)).collect();
    qs.sort_unstable_by(|a, b| b.cmp(a));
    qs.dedup();
    let mut out = String::from("| n |");
    for q in &qs {
        out.push_str(&format!(" beta_{q} >= |"));
    }
    out.push('\n');
    out.push_str("|---|");
    for _ in &qs {
        out.push_str("---|");
    }
    out.push('\n');
    for row in rows {
        out.push_str(&format!("| {} |", row.n));
        for q in &qs {
            match row.cells.iter().find(|c| c.q == *q) {
                Some(cell) => out.push_str(&format!(" {} |", cell.decomposition())),
                None => out.push_str(" |"),
            }
        }
        out.push('\n');
    }
    out
}
