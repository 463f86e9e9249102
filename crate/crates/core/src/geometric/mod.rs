//! Exact-rational geometry for the affine vertex-identification map
//! `VR(Q_n; r) -> [0,1]^n`: convex-hull membership with certificates,
//! center-coverage search over diameter-bounded vertex subsets, and
//! triangulation verification for the unit cube.
//!
//! No floating point anywhere: feasibility is decided by an exact simplex
//! ([`lp`]), so a "yes" comes with convex weights and a "no" with a
//! separating affine functional, both in rationals.

pub mod lp;

use crate::error::{usage, Error, Result};
use crate::hypercube::{mask_n, Vertex};
use lp::{solve, LpOutcome, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Cap on LP feasibility tests during a center-coverage search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 200_000;

/// A point of `[0,1]^n` (or R^n) with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoint {
    coords: Vec<Rat>,
}

impl RationalPoint {
    pub fn new(coords: Vec<Rat>) -> Self {
        RationalPoint { coords }
    }

    /// The center `(1/2, ..., 1/2)` of `[0,1]^n`.
    pub fn center(n: u32) -> Self {
        let half = Rat::new(BigInt::one(), BigInt::from(2));
        RationalPoint { coords: vec![half; n as usize] }
    }

    pub fn from_vertex(v: Vertex) -> Self {
        let coords = (0..v.dim())
            .map(|i| if v.bits() >> i & 1 == 1 { Rat::one() } else { Rat::zero() })
            .collect();
        RationalPoint { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }
}

/// Outcome of an exact hull-membership test.
#[derive(Clone, Debug)]
pub enum HullResult {
    /// Convex weights on the input points reproducing the target.
    Inside { weights: Vec<Rat> },
    /// Affine functional `g(x) = sum separator[i] * x_i + separator[n]` with
    /// `g(p) <= 0` on every input point and `g(target) > 0`.
    Outside { separator: Vec<Rat> },
}

impl HullResult {
    pub fn is_inside(&self) -> bool {
        matches!(self, HullResult::Inside { .. })
    }
}

fn vertex_coord(bits: u32, i: usize) -> Rat {
    if bits >> i & 1 == 1 {
        Rat::one()
    } else {
        Rat::zero()
    }
}

fn evaluate_affine(separator: &[Rat], coords: &[Rat]) -> Rat {
    let mut acc = separator[coords.len()].clone();
    for (s, c) in separator.iter().zip(coords) {
        acc += s * c;
    }
    acc
}

/// Exact convex-hull membership for a set of cube vertices: either convex
/// weights for the target, or a strictly separating affine functional.
pub fn hull_contains(points: &[Vertex], target: &RationalPoint) -> Result<HullResult> {
    let Some(first) = points.first() else {
        return Err(usage("hull membership needs at least one point"));
    };
    let n = first.dim();
    if points.iter().any(|p| p.dim() != n) || target.dim() != n as usize {
        return Err(usage("hull membership dimension mismatch"));
    }
    hull_contains_bits(&points.iter().map(|p| p.bits()).collect::<Vec<_>>(), n, target)
}

fn hull_contains_bits(points: &[u32], n: u32, target: &RationalPoint) -> Result<HullResult> {
    let n = n as usize;
    let k = points.len();
    // Rows: one per coordinate plus the weight-sum row. Columns: one weight
    // per point. Feasibility only (zero objective).
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(n + 1);
    for i in 0..n {
        a.push(points.iter().map(|&p| vertex_coord(p, i)).collect());
    }
    a.push(vec![Rat::one(); k]);
    let mut b: Vec<Rat> = target.coords().to_vec();
    b.push(Rat::one());
    let c = vec![Rat::zero(); k];
    match solve(&a, &b, &c) {
        LpOutcome::Optimal { x, .. } => {
            let total: Rat = x.iter().sum();
            let mut reproduced = vec![Rat::zero(); n];
            for (w, &p) in x.iter().zip(points) {
                for (i, coord) in reproduced.iter_mut().enumerate() {
                    *coord += w * vertex_coord(p, i);
                }
            }
            if total != Rat::one()
                || x.iter().any(|w| w < &Rat::zero())
                || reproduced != target.coords()
            {
                return Err(Error::Verification(
                    "hull weights failed exact re-verification".into(),
                ));
            }
            Ok(HullResult::Inside { weights: x })
        }
        LpOutcome::Infeasible { farkas } => {
            for &p in points {
                let coords = RationalPoint::from_vertex(Vertex::new(p, n as u32)?);
                if evaluate_affine(&farkas, coords.coords()) > Rat::zero() {
                    return Err(Error::Verification(
                        "separator failed exact re-verification".into(),
                    ));
                }
            }
            if evaluate_affine(&farkas, target.coords()) <= Rat::zero() {
                return Err(Error::Verification(
                    "separator does not separate the target".into(),
                ));
            }
            Ok(HullResult::Outside { separator: farkas })
        }
        LpOutcome::Unbounded => {
            Err(Error::Verification("feasibility program cannot be unbounded".into()))
        }
    }
}

/// Why the center is not coverable.
#[derive(Clone, Debug)]
pub enum NonCoverage {
    /// `2r < n`: every vertex within distance r of the origin has coordinate
    /// sum at most r, strictly below the center's n/2.
    CoordinateSum { separator: Vec<Rat> },
    /// The hull of the whole radius-r ball already misses the center.
    BallHull { separator: Vec<Rat> },
    /// Complete enumeration of diameter-bounded subsets found no cover.
    Exhausted { subsets_tested: u64 },
}

/// Outcome of the center-coverage search.
#[derive(Clone, Debug)]
pub enum Coverage {
    Coverable {
        witness: Vec<u32>,
        weights: Vec<Rat>,
        /// Whether the witness is balanced: its uniform barycenter is already
        /// the center (a stronger property than hull membership).
        balanced: bool,
    },
    NotCoverable(NonCoverage),
    /// Search budget exhausted with neither a witness nor a certificate.
    Indeterminate { subsets_tested: u64 },
}

impl Coverage {
    pub fn is_coverable(&self) -> Option<bool> {
        match self {
            Coverage::Coverable { .. } => Some(true),
            Coverage::NotCoverable(_) => Some(false),
            Coverage::Indeterminate { .. } => None,
        }
    }
}

/// Does some subset of `Q_n` of diameter at most `r` contain the cube's
/// center in its convex hull?
///
/// XOR-translation by a member vertex preserves distances and fixes the
/// center, so it is enough to search subsets of the radius-r ball around the
/// origin that contain the origin, in increasing size. The quick negative for
/// `2r < n` is the coordinate-sum functional; otherwise a single LP on the
/// whole ball can certify "no" before the subset search starts.
pub fn center_coverable(n: u32, r: u32, search_budget: u64) -> Result<Coverage> {
    if n < 1 || n > crate::hypercube::MAX_DIM {
        return Err(usage(format!("dimension {n} outside 1..={}", crate::hypercube::MAX_DIM)));
    }
    let center = RationalPoint::center(n);
    if 2 * r < n {
        // g(x) = sum x_i - r: nonpositive on the ball, n/2 - r > 0 at center.
        let mut separator = vec![Rat::one(); n as usize + 1];
        separator[n as usize] = -Rat::new(BigInt::from(r), BigInt::one());
        return Ok(Coverage::NotCoverable(NonCoverage::CoordinateSum { separator }));
    }
    let ball: Vec<u32> = (0..=mask_n(n)).filter(|v| v.count_ones() <= r).collect();
    if let HullResult::Outside { separator } = hull_contains_bits(&ball, n, &center)? {
        return Ok(Coverage::NotCoverable(NonCoverage::BallHull { separator }));
    }
    // Positive search: subsets containing the origin, by increasing size.
    let cands: Vec<u32> = ball.iter().copied().filter(|&v| v != 0).collect();
    let mut tested: u64 = 0;
    for size in 1..=cands.len() + 1 {
        let mut clique: Vec<u32> = vec![0];
        if let Some(found) =
            search_cliques(&cands, r, size, &mut clique, &mut tested, search_budget, &|subset| {
                hull_contains_bits(subset, n, &center)
            })?
        {
            let HullResult::Inside { weights } = found.1 else { unreachable!() };
            let witness = found.0;
            let balanced = (0..n).all(|i| {
                let ones = witness.iter().filter(|&&v| v >> i & 1 == 1).count();
                2 * ones == witness.len()
            });
            return Ok(Coverage::Coverable { witness, weights, balanced });
        }
        if tested >= search_budget {
            return Ok(Coverage::Indeterminate { subsets_tested: tested });
        }
    }
    Ok(Coverage::NotCoverable(NonCoverage::Exhausted { subsets_tested: tested }))
}

/// Depth-first enumeration of diameter-bounded subsets of exactly `size`
/// vertices extending `clique`, in lexicographic order; tests each with `lp`.
fn search_cliques(
    cands: &[u32],
    r: u32,
    size: usize,
    clique: &mut Vec<u32>,
    tested: &mut u64,
    budget: u64,
    lp: &impl Fn(&[u32]) -> Result<HullResult>,
) -> Result<Option<(Vec<u32>, HullResult)>> {
    if clique.len() == size {
        if *tested >= budget {
            return Ok(None);
        }
        *tested += 1;
        let res = lp(clique)?;
        if res.is_inside() {
            return Ok(Some((clique.clone(), res)));
        }
        return Ok(None);
    }
    for (i, &v) in cands.iter().enumerate() {
        if !clique.iter().all(|&u| (u ^ v).count_ones() <= r) {
            continue;
        }
        clique.push(v);
        let found =
            search_cliques(&cands[i + 1..], r, size, clique, tested, budget, lp)?;
        clique.pop();
        if found.is_some() || *tested >= budget {
            return Ok(found);
        }
    }
    Ok(None)
}

/// A geometric simplex: cube vertices treated as 0/1 points of R^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeomSimplex {
    n: u32,
    verts: Vec<u32>,
}

impl GeomSimplex {
    pub fn new(n: u32, mut verts: Vec<u32>) -> Result<Self> {
        if n < 1 || n > crate::hypercube::MAX_DIM {
            return Err(usage(format!("dimension {n} outside 1..={}", crate::hypercube::MAX_DIM)));
        }
        if verts.is_empty() {
            return Err(usage("a simplex needs at least one vertex"));
        }
        verts.sort_unstable();
        verts.dedup();
        if *verts.last().unwrap() > mask_n(n) {
            return Err(usage(format!("vertex out of range for Q_{n}")));
        }
        Ok(GeomSimplex { n, verts })
    }

    pub fn ambient_dim(&self) -> u32 {
        self.n
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

    /// Exact volume `|det| / n!` of the affine span; requires n+1 vertices.
    pub fn volume(&self) -> Option<Rat> {
        let n = self.n as usize;
        if self.verts.len() != n + 1 {
            return None;
        }
        let base = self.verts[0];
        let m: Vec<Vec<BigInt>> = self.verts[1..]
            .iter()
            .map(|&v| {
                (0..n)
                    .map(|i| BigInt::from((v >> i & 1) as i64 - (base >> i & 1) as i64))
                    .collect()
            })
            .collect();
        let det = int_det(m);
        let mut fact = BigInt::one();
        for i in 2..=n {
            fact *= BigInt::from(i);
        }
        Some(Rat::new(det.abs(), fact))
    }
}

/// Bareiss fraction-free determinant.
fn int_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Why a claimed triangulation was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriangulationFailure {
    WrongVertexCount { index: usize },
    DimensionMismatch { index: usize },
    Degenerate { index: usize },
    DiameterExceeded { index: usize, diameter: u32 },
    VolumeSum { total: Rat },
    InteriorOverlap { first: usize, second: usize },
}

impl std::fmt::Display for TriangulationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TriangulationFailure::WrongVertexCount { index } => {
                write!(f, "simplex {index} does not have n+1 vertices")
            }
            TriangulationFailure::DimensionMismatch { index } => {
                write!(f, "simplex {index} lives in a different ambient dimension")
            }
            TriangulationFailure::Degenerate { index } => {
                write!(f, "simplex {index} is affinely degenerate")
            }
            TriangulationFailure::DiameterExceeded { index, diameter } => {
                write!(f, "simplex {index} has diameter {diameter}")
            }
            TriangulationFailure::VolumeSum { total } => {
                write!(f, "volumes sum to {total}, not 1")
            }
            TriangulationFailure::InteriorOverlap { first, second } => {
                write!(f, "simplices {first} and {second} share an interior point")
            }
        }
    }
}

/// Result of checking a claimed triangulation of `[0,1]^n` by simplices of
/// diameter at most `r`.
#[derive(Clone, Debug)]
pub struct TriangulationReport {
    pub passed: bool,
    pub volume_sum: Rat,
    pub failure: Option<TriangulationFailure>,
}

/// Verify that the simplices triangulate the unit cube: full-dimensional and
/// affinely independent, diameter at most `r`, exact volumes summing to 1,
/// and pairwise disjoint interiors (an exact LP finds no point strictly
/// inside two of them).
pub fn verify_triangulation(simplices: &[GeomSimplex], r: u32) -> TriangulationReport {
    let fail = |volume_sum: Rat, failure: TriangulationFailure| TriangulationReport {
        passed: false,
        volume_sum,
        failure: Some(failure),
    };
    let Some(first) = simplices.first() else {
        return fail(Rat::zero(), TriangulationFailure::VolumeSum { total: Rat::zero() });
    };
    let n = first.ambient_dim();
    let mut volume_sum = Rat::zero();
    for (i, s) in simplices.iter().enumerate() {
        if s.ambient_dim() != n {
            return fail(volume_sum, TriangulationFailure::DimensionMismatch { index: i });
        }
        let Some(vol) = s.volume() else {
            return fail(volume_sum, TriangulationFailure::WrongVertexCount { index: i });
        };
        if vol.is_zero() {
            return fail(volume_sum, TriangulationFailure::Degenerate { index: i });
        }
        let d = s.diameter();
        if d > r {
            return fail(volume_sum, TriangulationFailure::DiameterExceeded { index: i, diameter: d });
        }
        volume_sum += vol;
    }
    if volume_sum != Rat::one() {
        return fail(volume_sum.clone(), TriangulationFailure::VolumeSum { total: volume_sum });
    }
    for i in 0..simplices.len() {
        for j in i + 1..simplices.len() {
            if interiors_overlap(&simplices[i], &simplices[j]) {
                return fail(volume_sum, TriangulationFailure::InteriorOverlap { first: i, second: j });
            }
        }
    }
    TriangulationReport { passed: true, volume_sum, failure: None }
}

/// Exact LP: maximize the smallest barycentric coordinate of a common point.
/// A positive optimum is a point strictly inside both simplices.
fn interiors_overlap(a: &GeomSimplex, b: &GeomSimplex) -> bool {
    let n = a.ambient_dim() as usize;
    let k1 = a.verts().len();
    let k2 = b.verts().len();
    // Variables: lambda (k1), mu (k2), t, slack_a (k1), slack_b (k2).
    let ncols = k1 + k2 + 1 + k1 + k2;
    let t_col = k1 + k2;
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for i in 0..n {
        let mut row = vec![Rat::zero(); ncols];
        for (j, &v) in a.verts().iter().enumerate() {
            row[j] = vertex_coord(v, i);
        }
        for (j, &v) in b.verts().iter().enumerate() {
            row[k1 + j] = -vertex_coord(v, i);
        }
        rows.push(row);
        rhs.push(Rat::zero());
    }
    let mut sum_a = vec![Rat::zero(); ncols];
    for slot in sum_a.iter_mut().take(k1) {
        *slot = Rat::one();
    }
    rows.push(sum_a);
    rhs.push(Rat::one());
    let mut sum_b = vec![Rat::zero(); ncols];
    for slot in sum_b.iter_mut().skip(k1).take(k2) {
        *slot = Rat::one();
    }
    rows.push(sum_b);
    rhs.push(Rat::one());
    for j in 0..k1 {
        let mut row = vec![Rat::zero(); ncols];
        row[j] = Rat::one();
        row[t_col] = -Rat::one();
        row[k1 + k2 + 1 + j] = -Rat::one();
        rows.push(row);
        rhs.push(Rat::zero());
    }
    for j in 0..k2 {
        let mut row = vec![Rat::zero(); ncols];
        row[k1 + j] = Rat::one();
        row[t_col] = -Rat::one();
        row[k1 + k2 + 1 + k1 + j] = -Rat::one();
        rows.push(row);
        rhs.push(Rat::zero());
    }
    let mut c = vec![Rat::zero(); ncols];
    c[t_col] = -Rat::one();
    match solve(&rows, &rhs, &c) {
        LpOutcome::Optimal { objective, .. } => -objective > Rat::zero(),
        LpOutcome::Infeasible { .. } => false,
        LpOutcome::Unbounded => unreachable!("t is bounded by 1/(n+1)"),
    }
}

/// The five tetrahedra that triangulate `[0,1]^3` with diameter 2: the
/// regular tetrahedron on the even-weight vertices plus four corner pieces.
pub fn unit_cube_tetrahedra() -> Vec<GeomSimplex> {
    let tetra = |verts: [&str; 4]| {
        let bits: Vec<u32> =
            verts.iter().map(|s| Vertex::from_coord_string(s).unwrap().bits()).collect();
        GeomSimplex::new(3, bits).unwrap()
    };
    vec![
        tetra(["011", "110", "101", "000"]),
        tetra(["000", "100", "110", "101"]),
        tetra(["011", "110", "000", "010"]),
        tetra(["111", "011", "110", "101"]),
        tetra(["000", "011", "001", "101"]),
    ]
}

/// Scan report for the smallest `n` whose center is not coverable at scale
/// `r`. Non-coverage certifies that the affine vertex-identification map on
/// `VR(Q_n; r)` is not surjective; coverage does NOT certify surjectivity,
/// so the reported value is an upper-bound proxy, except where an explicit
/// triangulation certifies the positive side.
#[derive(Clone, Debug)]
pub struct NrReport {
    pub r: u32,
    /// min(n_budget, 2r+1); the scan never needs to go past 2r+1.
    pub upper_bound: u32,
    pub first_non_coverable: Option<u32>,
    /// Dimensions where the subset search ran out of budget.
    pub indeterminate: Vec<u32>,
}

/// Find the least `n <= min(n_budget, 2r+1)` with a non-coverable center.
pub fn n_of_r(r: u32, n_budget: u32, search_budget: u64) -> Result<NrReport> {
    if r < 2 {
        return Err(usage("the non-surjectivity scan starts at r = 2"));
    }
    let upper = n_budget.min(2 * r + 1);
    let mut report =
        NrReport { r, upper_bound: upper, first_non_coverable: None, indeterminate: Vec::new() };
    for n in 1..=upper {
        match center_coverable(n, r, search_budget)? {
            Coverage::Coverable { .. } => {}
            Coverage::NotCoverable(_) => {
                report.first_non_coverable = Some(n);
                break;
            }
            Coverage::Indeterminate { .. } => report.indeterminate.push(n),
        }
    }
    Ok(report)
}

fn rat_json(r: &Rat) -> serde_json::Value {
    serde_json::Value::String(r.to_string())
}

/// Witness/certificate serialization: vertices as coordinate-order binary
/// strings, rationals as "p/q" strings.
pub fn coverage_json(n: u32, cov: &Coverage) -> serde_json::Value {
    match cov {
        Coverage::Coverable { witness, weights, balanced } => serde_json::json!({
            "coverable": true,
            "witness": witness.iter().map(|&v| crate::hypercube::coord_string(v, n)).collect::<Vec<_>>(),
            "weights": weights.iter().map(rat_json).collect::<Vec<_>>(),
            "balanced": balanced,
        }),
        Coverage::NotCoverable(cert) => {
            let (kind, value) = match cert {
                NonCoverage::CoordinateSum { separator } => {
                    ("coordinate_sum", serde_json::Value::Array(separator.iter().map(rat_json).collect()))
                }
                NonCoverage::BallHull { separator } => {
                    ("ball_hull", serde_json::Value::Array(separator.iter().map(rat_json).collect()))
                }
                NonCoverage::Exhausted { subsets_tested } => {
                    ("exhausted", serde_json::json!(subsets_tested))
                }
            };
            serde_json::json!({ "coverable": false, "certificate": kind, "detail": value })
        }
        Coverage::Indeterminate { subsets_tested } => serde_json::json!({
            "coverable": null,
            "subsets_tested": subsets_tested,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vx(s: &str) -> Vertex {
        Vertex::from_coord_string(s).unwrap()
    }

    #[test]
    fn regular_tetrahedron_contains_center_uniformly() {
        let tau1 = [vx("011"), vx("110"), vx("101"), vx("000")];
        match hull_contains(&tau1, &RationalPoint::center(3)).unwrap() {
            HullResult::Inside { weights } => {
                let quarter = Rat::new(BigInt::from(1), BigInt::from(4));
                assert!(weights.iter().all(|w| *w == quarter));
            }
            HullResult::Outside { .. } => panic!("center must be inside"),
        }
    }

    #[test]
    fn stuck_coordinate_separates() {
        let pts = [vx("000"), vx("100")];
        match hull_contains(&pts, &RationalPoint::center(3)).unwrap() {
            HullResult::Outside { separator } => {
                // Re-verification already ran inside; sanity-check the shape.
                assert_eq!(separator.len(), 4);
            }
            HullResult::Inside { .. } => panic!("second coordinate is stuck at 0"),
        }
    }

    #[test]
    fn full_cube_contains_center() {
        for n in 1..=4u32 {
            let pts: Vec<Vertex> =
                (0..1u32 << n).map(|b| Vertex::new(b, n).unwrap()).collect();
            assert!(hull_contains(&pts, &RationalPoint::center(n)).unwrap().is_inside());
        }
    }

    #[test]
    fn coverage_small_cases() {
        // (3,2): the regular tetrahedron, found in lexicographic order.
        match center_coverable(3, 2, DEFAULT_SEARCH_BUDGET).unwrap() {
            Coverage::Coverable { witness, balanced, .. } => {
                assert_eq!(witness, vec![0b000, 0b011, 0b101, 0b110]);
                assert!(balanced);
            }
            other => panic!("expected coverable, got {other:?}"),
        }
        // (4,2): exhaustive search proves non-coverage.
        match center_coverable(4, 2, DEFAULT_SEARCH_BUDGET).unwrap() {
            Coverage::NotCoverable(NonCoverage::Exhausted { .. }) => {}
            other => panic!("expected exhaustion, got {other:?}"),
        }
        // Tiny cases are coverable.
        assert_eq!(center_coverable(1, 2, 1000).unwrap().is_coverable(), Some(true));
        assert_eq!(center_coverable(2, 2, 1000).unwrap().is_coverable(), Some(true));
    }

    #[test]
    fn coordinate_sum_certificate() {
        for r in 2..=5u32 {
            let n = 2 * r + 1;
            match center_coverable(n, r, 10).unwrap() {
                Coverage::NotCoverable(NonCoverage::CoordinateSum { separator }) => {
                    // Validate numerically: ball vertices score <= 0, center > 0.
                    for v in 0..1u32 << n {
                        if v.count_ones() <= r {
                            let p = RationalPoint::from_vertex(Vertex::new(v, n).unwrap());
                            assert!(evaluate_affine(&separator, p.coords()) <= Rat::zero());
                        }
                    }
                    let c = RationalPoint::center(n);
                    assert!(evaluate_affine(&separator, c.coords()) > Rat::zero());
                }
                other => panic!("expected coordinate-sum certificate, got {other:?}"),
            }
        }
    }

    #[test]
    fn translation_invariance_of_witnesses() {
        // XOR-translating a witness by any word preserves distances and hull
        // membership of the center.
        let Coverage::Coverable { witness, .. } =
            center_coverable(3, 2, DEFAULT_SEARCH_BUDGET).unwrap()
        else {
            panic!("(3,2) is coverable");
        };
        for w in 0..8u32 {
            let translated: Vec<Vertex> =
                witness.iter().map(|&v| Vertex::new(v ^ w, 3).unwrap()).collect();
            for (i, &a) in witness.iter().enumerate() {
                for &b in &witness[i + 1..] {
                    assert_eq!(
                        (a ^ b).count_ones(),
                        ((a ^ w) ^ (b ^ w)).count_ones()
                    );
                }
            }
            assert!(hull_contains(&translated, &RationalPoint::center(3))
                .unwrap()
                .is_inside());
        }
    }

    #[test]
    fn five_tetrahedra_triangulate_the_cube() {
        let tetra = unit_cube_tetrahedra();
        let report = verify_triangulation(&tetra, 2);
        assert!(report.passed, "failure: {:?}", report.failure);
        assert_eq!(report.volume_sum, Rat::one());
        // Volumes: 1/3 for the regular tetrahedron, 1/6 for each corner.
        let third = Rat::new(BigInt::from(1), BigInt::from(3));
        let sixth = Rat::new(BigInt::from(1), BigInt::from(6));
        assert_eq!(tetra[0].volume().unwrap(), third);
        for t in &tetra[1..] {
            assert_eq!(t.volume().unwrap(), sixth);
        }
    }

    #[test]
    fn proper_subsets_fail() {
        let tetra = unit_cube_tetrahedra();
        for drop in 0..tetra.len() {
            let subset: Vec<GeomSimplex> = tetra
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .map(|(_, t)| t.clone())
                .collect();
            let report = verify_triangulation(&subset, 2);
            assert!(!report.passed);
            assert!(matches!(report.failure, Some(TriangulationFailure::VolumeSum { .. })));
        }
    }

    #[test]
    fn unit_interval_triangulation() {
        let seg = GeomSimplex::new(1, vec![0, 1]).unwrap();
        let report = verify_triangulation(&[seg], 1);
        assert!(report.passed);
        assert_eq!(report.volume_sum, Rat::one());
    }

    #[test]
    fn overlap_and_diameter_failures() {
        let tetra = unit_cube_tetrahedra();
        // Duplicated simplex: volume sum exceeds 1 before overlap is checked,
        // so test overlap via a doctored volume: two complementary halves
        // versus two overlapping ones.
        let t2 = GeomSimplex::new(1, vec![0, 1]).unwrap();
        let report = verify_triangulation(&[t2.clone(), t2.clone()], 1);
        assert!(!report.passed); // volume 2
        // Diameter violation.
        let report = verify_triangulation(&tetra, 1);
        assert!(matches!(
            report.failure,
            Some(TriangulationFailure::DiameterExceeded { .. })
        ));
    }

    #[test]
    fn interior_overlap_is_detected() {
        // tau_1 overlaps itself.
        let tetra = unit_cube_tetrahedra();
        assert!(interiors_overlap(&tetra[0], &tetra[0]));
        // Distinct members of a triangulation do not overlap.
        assert!(!interiors_overlap(&tetra[0], &tetra[1]));
    }

    #[test]
    fn n_of_r_scale_two() {
        let report = n_of_r(2, 10, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(report.first_non_coverable, Some(4));
        assert_eq!(report.upper_bound, 5);
        assert!(report.indeterminate.is_empty());
        assert!(n_of_r(1, 10, 10).is_err());
    }

    #[test]
    fn determinant_basics() {
        let id = vec![
            vec![BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(1)],
        ];
        assert_eq!(int_det(id), BigInt::from(1));
        let singular = vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(2), BigInt::from(4)],
        ];
        assert_eq!(int_det(singular), BigInt::from(0));
        let swap = vec![
            vec![BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(0)],
        ];
        assert_eq!(int_det(swap), BigInt::from(-1));
    }
}
