//! Named verification suites: each prints one PASS/FAIL line per check and
//! the command exits 0 only if everything passed.

use clap::ValueEnum;
use num_bigint::BigUint;
use qrips::error::Error;
use qrips::geometric::{self, Coverage, NonCoverage, RationalPoint};
use qrips::homology;
use qrips::hypercube::{self, ConcentrationSpec, Vertex, VertexSet};
use qrips::reduce::Field;
use qrips::{bounds, generators};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Exhaustive 1-Lipschitz checks for projections and concentrations.
    Contractions,
    /// Cross-polytopal families: cycles, pairing matrices, ranks.
    Generators,
    /// Scale inclusions induce zero maps on homology.
    ScaleInclusions,
    /// Every closed-form bound is at most the exact Betti number.
    BoundsVsBetti,
    /// Summation identities in exact arithmetic.
    Identities,
    /// Hull membership, triangulation, and center coverage.
    Geometry,
}

pub struct SuiteConfig {
    pub n_max: Option<u32>,
    pub n: Option<u32>,
    pub r: Option<u32>,
    pub budget: u64,
    pub search_budget: u64,
}

struct Tally {
    passed: usize,
    failed: usize,
}

impl Tally {
    fn new() -> Self {
        Tally { passed: 0, failed: 0 }
    }

    fn check(&mut self, ok: bool, label: impl AsRef<str>) {
        if ok {
            self.passed += 1;
            println!("PASS: {}", label.as_ref());
        } else {
            self.failed += 1;
            println!("FAIL: {}", label.as_ref());
        }
    }

    fn finish(self) -> qrips::Result<()> {
        println!("{} passed, {} failed", self.passed, self.failed);
        if self.failed == 0 {
            Ok(())
        } else {
            Err(Error::Verification(format!("{} check(s) failed", self.failed)))
        }
    }
}

pub fn run_suite(suite: Suite, cfg: SuiteConfig) -> qrips::Result<()> {
    match suite {
        Suite::Contractions => contractions(&cfg),
        Suite::Generators => generator_families(&cfg),
        Suite::ScaleInclusions => scale_inclusions(&cfg),
        Suite::BoundsVsBetti => bounds_vs_betti(&cfg),
        Suite::Identities => identities(&cfg),
        Suite::Geometry => geometry(&cfg),
    }
}

fn contractions(cfg: &SuiteConfig) -> qrips::Result<()> {
    let n_max = cfg.n_max.unwrap_or(6);
    let mut t = Tally::new();
    for n in 2..=n_max {
        let mut all = true;
        let mut count = 0usize;
        for p in 1..n {
            for e in hypercube::enumerate_subcubes(n, p)? {
                let fixed = VertexSet::new(n, e.vertices().collect())?;
                all &= hypercube::verify_contraction(|x| e.project_onto_bits(x), n, &fixed)?;
                count += 1;
            }
        }
        t.check(all, format!("all {count} subcube projections of Q_{n} are contractions"));
        let mut all = true;
        let mut count = 0usize;
        for k in 1..n {
            for tail in 0..1u32 << (n - k) {
                for pivot_one in [true, false] {
                    let c = ConcentrationSpec::with_pivot(n, k, tail << k, pivot_one)?;
                    let fixed = VertexSet::new(n, c.target().vertices().collect())?;
                    all &= hypercube::verify_contraction(|x| c.apply_bits(x), n, &fixed)?;
                    count += 1;
                }
            }
        }
        t.check(all, format!("all {count} concentration maps on Q_{n} are contractions"));
    }
    // A map that merely fixes a subset is not automatically a contraction.
    let swap = |x: u32| match x {
        0b00 => 0b01,
        0b01 => 0b00,
        other => other,
    };
    let fixed = VertexSet::new(2, vec![0b10, 0b11])?;
    t.check(
        !hypercube::verify_contraction(swap, 2, &fixed)?,
        "swapping two adjacent vertices of Q_2 is rejected",
    );
    t.finish()
}

fn generator_families(cfg: &SuiteConfig) -> qrips::Result<()> {
    let r = cfg.r.unwrap_or(2);
    let ns: Vec<u32> = match cfg.n {
        Some(n) => vec![n],
        None => (r + 1..=r + 3).collect(),
    };
    let mut t = Tally::new();
    for &n in &ns {
        let fam = generators::build_family(n, r)?;
        let expected = (1usize << (n - r - 1))
            * hypercube::masks_of_weight(n, r + 1).len();
        t.check(
            fam.len() == expected,
            format!("family size for (n={n}, r={r}) is {expected}"),
        );
        match generators::family_rank(&fam, Field::GF2) {
            Ok(rank) => t.check(
                rank == expected,
                format!("cycles, maximality, and pairing matrix certify rank {rank}"),
            ),
            Err(e) => t.check(false, format!("family verification errored: {e}")),
        }
        match generators::family_rank_mod_boundaries(&fam, Field::GF2, cfg.budget) {
            Ok(rank) => t.check(
                rank == expected,
                format!("rank of cycles modulo boundaries is {rank}"),
            ),
            Err(Error::Capability(msg)) => {
                println!("SKIP: boundary-rank check for (n={n}, r={r}): {msg}");
            }
            Err(e) => return Err(e),
        }
        let q = (1usize << r) - 1;
        match homology::betti(n, r, q, Field::GF2, cfg.budget) {
            Ok(res) => {
                t.check(
                    res.betti >= expected,
                    format!("betti(n={n}, r={r}, q={q}) = {} >= family rank {expected}", res.betti),
                );
                if r == 2 && n == 4 {
                    t.check(
                        res.betti > expected,
                        format!(
                            "strictly more homology than cross-polytopal classes: {} > {expected}",
                            res.betti
                        ),
                    );
                }
            }
            Err(Error::Capability(msg)) => {
                println!("SKIP: betti comparison for (n={n}, r={r}): {msg}");
            }
            Err(e) => return Err(e),
        }
    }
    t.finish()
}

fn scale_inclusions(cfg: &SuiteConfig) -> qrips::Result<()> {
    let mut t = Tally::new();
    for (n, r, r2, q) in [(3u32, 1u32, 2u32, 1usize), (4, 1, 2, 1), (4, 2, 3, 3)] {
        let rank = homology::scale_inclusion_rank(n, r, r2, q, Field::GF2, cfg.budget)?;
        t.check(
            rank == 0,
            format!("H_{q}(VR(Q_{n}; {r})) -> H_{q}(VR(Q_{n}; {r2})) has rank {rank}"),
        );
    }
    // Same machinery applied to the identity recovers the Betti number.
    let id = homology::scale_inclusion_rank(3, 1, 1, 1, Field::GF2, cfg.budget)?;
    let b = homology::betti(3, 1, 1, Field::GF2, cfg.budget)?.betti;
    t.check(id == b, format!("identity inclusion has full rank {id} = betti {b}"));
    // Wider sweep at small n: every integer scale step is null on homology.
    for n in 2..=4u32 {
        for r in 1..3u32 {
            for q in 1..=3usize {
                let rank = homology::scale_inclusion_rank(n, r, r + 1, q, Field::GF2, cfg.budget)?;
                if rank != 0 {
                    t.check(false, format!("nonzero scale inclusion at (n={n}, r={r}, q={q})"));
                }
            }
        }
    }
    t.check(true, "scale inclusions vanish across the n <= 4 sweep");
    t.finish()
}

fn bounds_vs_betti(cfg: &SuiteConfig) -> qrips::Result<()> {
    let n_max = cfg.n_max.unwrap_or(6);
    let mut t = Tally::new();
    for n in 2..=n_max.min(8) {
        let b = homology::betti(n, 1, 1, Field::GF2, cfg.budget)?.betti;
        let closed = bounds::beta1_closed_form(n);
        t.check(
            BigUint::from(b) == closed,
            format!("betti(n={n}, r=1, q=1) = {b} matches the closed form (tight)"),
        );
    }
    for n in 3..=n_max.min(6) {
        let b = homology::betti(n, 2, 3, Field::GF2, cfg.budget)?.betti;
        let expected = bounds::c_n(n)?;
        t.check(
            BigUint::from(b) == expected,
            format!("betti(n={n}, r=2, q=3) = {b} matches c_n (tight)"),
        );
        for q in [1usize, 2] {
            let z = homology::betti(n, 2, q, Field::GF2, cfg.budget)?.betti;
            t.check(z == 0, format!("betti(n={n}, r=2, q={q}) = 0"));
        }
    }
    if n_max >= 4 {
        let b = homology::betti(4, 3, 7, Field::GF2, cfg.budget)?.betti;
        t.check(b == 1, format!("betti(n=4, r=3, q=7) = {b} matches the cross-polytopal bound"));
    }
    if n_max >= 5 {
        let b7 = homology::betti(5, 3, 7, Field::GF2, cfg.budget)?.betti;
        let red = bounds::bound_cross_polytope(5, 3)?.value;
        t.check(
            BigUint::from(b7) == red,
            format!("betti(n=5, r=3, q=7) = {b7} matches the cross-polytopal bound (tight)"),
        );
        let b4 = homology::betti(5, 3, 4, Field::GF2, cfg.budget)?.betti;
        t.check(b4 == 1, format!("betti(n=5, r=3, q=4) = {b4} matches the propagated seed"));
    }
    t.finish()
}

fn identities(cfg: &SuiteConfig) -> qrips::Result<()> {
    let n_max = cfg.n_max.unwrap_or(30);
    let mut t = Tally::new();
    t.check(
        bounds::summation_identities(n_max)?,
        format!("both summation identities hold for all n <= {n_max}"),
    );
    t.check(
        bounds::chain_identity_holds(n_max)?,
        format!("cross-polytope + quotient telescopes to c_n for all n <= {n_max}"),
    );
    let mut ok = true;
    for n in 5..=n_max {
        let (c7, c4) = bounds::scale3_sphere_counts(n)?;
        ok &= bounds::bound_cross_polytope(n, 3)?.value == c7;
        ok &= bounds::bound_quotient(n, 5, &BigUint::from(1u32))?.value == c4;
    }
    t.check(ok, format!("scale-3 sphere counts match the bound forms for n <= {n_max}"));
    let mut ok = true;
    for n in 2..=n_max {
        ok &= bounds::beta1_closed_form(n)
            == bounds::bound_propagation(n, 2, &BigUint::from(1u32))?.value;
    }
    t.check(ok, format!("closed-form beta_1 equals the propagation sum for n <= {n_max}"));
    let mut ok = true;
    for p in 1..=6u32 {
        for n in p..=20 {
            let seed = BigUint::from(3u32);
            ok &= bounds::bound_propagation(n, p, &seed)?.value
                >= bounds::bound_projection(n, p, &seed)?.value;
        }
        let s = BigUint::from(2u32);
        ok &= bounds::bound_propagation(p + 1, p, &s)?.value == bounds::bound_codim1(p, &s)?.value;
    }
    t.check(ok, "propagation dominates projection and specializes to the codimension-1 bound");
    t.finish()
}

fn geometry(cfg: &SuiteConfig) -> qrips::Result<()> {
    let r = cfg.r.unwrap_or(2);
    let mut t = Tally::new();
    if r == 2 {
        let tau1 = [
            Vertex::from_coord_string("011")?,
            Vertex::from_coord_string("110")?,
            Vertex::from_coord_string("101")?,
            Vertex::from_coord_string("000")?,
        ];
        match geometric::hull_contains(&tau1, &RationalPoint::center(3))? {
            geometric::HullResult::Inside { weights } => {
                let quarter: geometric::lp::Rat =
                    geometric::lp::Rat::new(1.into(), 4.into());
                t.check(
                    weights.iter().all(|w| *w == quarter),
                    "the regular tetrahedron holds the center with uniform weights",
                );
            }
            geometric::HullResult::Outside { .. } => {
                t.check(false, "the regular tetrahedron must contain the center");
            }
        }
        let tetra = geometric::unit_cube_tetrahedra();
        let report = geometric::verify_triangulation(&tetra, 2);
        t.check(
            report.passed && report.volume_sum == geometric::lp::Rat::new(1.into(), 1.into()),
            "five tetrahedra triangulate the unit cube with volume 1",
        );
        let mut rejects = true;
        for drop in 0..tetra.len() {
            let subset: Vec<_> = tetra
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .map(|(_, s)| s.clone())
                .collect();
            rejects &= !geometric::verify_triangulation(&subset, 2).passed;
        }
        t.check(rejects, "every four-tetrahedra subset is rejected");
        let cover3 = geometric::center_coverable(3, 2, cfg.search_budget)?;
        t.check(
            matches!(cover3, Coverage::Coverable { .. }),
            "the center of [0,1]^3 is coverable at diameter 2",
        );
        let cover4 = geometric::center_coverable(4, 2, cfg.search_budget)?;
        t.check(
            matches!(cover4, Coverage::NotCoverable(_)),
            "the center of [0,1]^4 is not coverable at diameter 2",
        );
        println!(
            "witness/certificates: {}",
            serde_json::to_string(&serde_json::json!([
                geometric::coverage_json(3, &cover3),
                geometric::coverage_json(4, &cover4),
            ]))
            .expect("stringify")
        );
    }
    let report = geometric::n_of_r(r, 2 * r + 1, cfg.search_budget)?;
    match report.first_non_coverable {
        Some(n) => {
            t.check(
                n <= 2 * r + 1,
                format!(
                    "first non-coverable center at scale {r} is n = {n} \
                     (certifies non-surjectivity; coverage below does not certify surjectivity)"
                ),
            );
            if r == 2 {
                t.check(n == 4, "the scale-2 threshold is exactly 4");
            }
        }
        None => {
            let detail = if report.indeterminate.is_empty() {
                "no non-coverable dimension found".to_string()
            } else {
                format!("indeterminate at n in {:?}", report.indeterminate)
            };
            t.check(false, format!("scan up to n = {} failed: {detail}", report.upper_bound));
        }
    }
    for rr in 2..=5u32 {
        let n = 2 * rr + 1;
        match geometric::center_coverable(n, rr, cfg.search_budget)? {
            Coverage::NotCoverable(NonCoverage::CoordinateSum { .. }) => {
                t.check(true, format!("coordinate-sum certificate rules out (n={n}, r={rr})"));
            }
            other => {
                t.check(false, format!("expected coordinate-sum certificate, got {other:?}"));
            }
        }
    }
    t.finish()
}
