//! Explicit cross-polytopal homology generators.
//!
//! In `VR(Q_{r+1}; r)` every vertex is joined to everything except its
//! antipode, so the complex is the boundary of a cross-polytope and its top
//! homology is generated by the Z/2 sum of all maximal antipode-free vertex
//! sets. Pushed through each isometric embedding `Q_{r+1} -> Q_n`, these
//! cycles stay independent: each one is certified by a dual cocycle supported
//! on a single maximal simplex whose cubic hull is the whole subcube, so the
//! pairing matrix of duals against cycles is the identity.

use crate::error::{capability, usage, Error, Result};
use crate::homology::{gf2_boundary_support, pair, Chain, Cochain};
use crate::hypercube::{
    cubic_hull, enumerate_subcubes, local_diameter, mask_n, SubcubeEmbedding, Vertex, VertexSet,
};
use crate::reduce::{Field, Reducer};
use crate::rips::{build_skeleton, is_maximal, Simplex};
use rayon::prelude::*;

/// Refuse to materialize more than this many antipode-free sets (there are
/// `2^(2^r)` of them).
const MAX_FAMILY_SETS: u64 = 1 << 20;

/// All maximal antipode-free subsets of `Q_{r+1}`: one vertex from each of
/// the `2^r` antipodal pairs, every combination. Each has cardinality `2^r`
/// and diameter at most `r`.
pub fn antipode_free_sets(r: u32) -> Result<Vec<VertexSet>> {
    if r < 1 {
        return Err(usage("antipode-free families need r >= 1"));
    }
    if r > 20 {
        return Err(capability("antipode-free families capped at r <= 20"));
    }
    let pairs = 1u64 << r;
    if pairs >= 63 || (1u64 << pairs) > MAX_FAMILY_SETS {
        return Err(capability(format!(
            "enumerating 2^(2^{r}) antipode-free sets exceeds the cap of {MAX_FAMILY_SETS}"
        )));
    }
    let n = r + 1;
    let full = mask_n(n);
    let count = 1u64 << pairs;
    let mut out = Vec::with_capacity(count as usize);
    for selection in 0..count {
        let members: Vec<u32> = (0..pairs as u32)
            .map(|i| if selection >> i & 1 == 1 { !i & full } else { i })
            .collect();
        out.push(VertexSet::new(n, members)?);
    }
    Ok(out)
}

/// The even/odd maximal simplex in `Q_{r+1}`: for even `r` the even-weight
/// vertices; for odd `r` the even-case simplex one level down crossed with
/// `{0,1}`. It is antipode-free, has local diameter `r` at every vertex, and
/// its cubic hull is all of `Q_{r+1}`.
pub fn sigma_max(r: u32) -> Result<Simplex> {
    if r < 2 {
        return Err(usage("the maximal-simplex construction starts at r = 2"));
    }
    if r + 1 > crate::hypercube::MAX_DIM {
        return Err(capability(format!("Q_{} exceeds the dimension cap", r + 1)));
    }
    let verts = sigma_max_bits(r);
    Simplex::new(r + 1, verts)
}

fn sigma_max_bits(r: u32) -> Vec<u32> {
    if r % 2 == 0 {
        (0..=mask_n(r + 1)).filter(|x| x.count_ones() % 2 == 0).collect()
    } else {
        let tau = sigma_max_bits(r - 1);
        let mut verts: Vec<u32> = tau.iter().flat_map(|&w| [w, w | 1 << r]).collect();
        verts.sort_unstable();
        verts
    }
}

/// One generator entry: an embedded `Q_{r+1}`, its cross-polytopal cycle, and
/// the embedded maximal simplex whose indicator cochain is the dual cocycle.
#[derive(Clone, Debug)]
pub struct GeneratorEntry {
    pub embedding: SubcubeEmbedding,
    /// Z/2 cycle: the embedded antipode-free sets, sorted, coefficient 1 each.
    pub cycle: Vec<Simplex>,
    /// Embedded even/odd maximal simplex; its indicator is the dual cocycle.
    pub sigma: Simplex,
}

impl GeneratorEntry {
    /// Coefficient of this entry's sigma in another entry's cycle (Z/2).
    pub fn pairing_with(&self, other: &GeneratorEntry) -> u32 {
        u32::from(other.cycle.binary_search(&self.sigma).is_ok())
    }
}

/// The cross-polytopal cycle of one embedded `Q_{r+1}`, together with the
/// dual maximal simplex. The chain is the Z/2 sum of all embedded
/// antipode-free sets; its boundary vanishes because every codimension-1
/// face lies in exactly two of them.
pub fn cross_polytopal_cycle(
    e: &SubcubeEmbedding,
    n: u32,
    r: u32,
) -> Result<(Vec<Simplex>, Simplex)> {
    if e.ambient_dim() != n {
        return Err(usage("embedding ambient dimension mismatch"));
    }
    if e.is_degenerate() || e.subcube_dim() != r + 1 {
        return Err(usage(format!(
            "cross-polytopal cycles need a Q_{} subcube, got dimension {}",
            r + 1,
            e.subcube_dim()
        )));
    }
    let sets = antipode_free_sets(r)?;
    let mut cycle: Vec<Simplex> = sets
        .into_iter()
        .map(|set| {
            let verts: Vec<u32> = set.members().iter().map(|&v| e.embed_bits(v)).collect();
            Simplex::new(n, verts)
        })
        .collect::<Result<_>>()?;
    cycle.sort();
    let sigma_local = sigma_max(r)?;
    let verts: Vec<u32> = sigma_local.verts().iter().map(|&v| e.embed_bits(v)).collect();
    let sigma = Simplex::new(n, verts)?;
    Ok((cycle, sigma))
}

/// One cross-polytopal generator per isometric embedding of `Q_{r+1}` into
/// `Q_n`: `2^(n-(r+1)) * binom(n, r+1)` entries.
#[derive(Clone, Debug)]
pub struct GeneratorFamily {
    pub n: u32,
    pub r: u32,
    pub entries: Vec<GeneratorEntry>,
}

impl GeneratorFamily {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Dump format for regression diffs: one entry per line with the
    /// coordinate set, offset, sigma vertices, and cycle support size.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for entry in &self.entries {
            let e = entry.embedding;
            out.push_str(&format!(
                "S={} b={} sigma={} support={}\n",
                crate::hypercube::coord_string(e.mask(), self.n),
                crate::hypercube::coord_string(e.offset(), self.n),
                entry.sigma.coord_strings().replace(' ', ","),
                entry.cycle.len()
            ));
        }
        out
    }
}

pub fn build_family(n: u32, r: u32) -> Result<GeneratorFamily> {
    if n < r + 1 {
        return Err(usage(format!("Q_{n} has no Q_{} subcube", r + 1)));
    }
    let subs = enumerate_subcubes(n, r + 1)?;
    let entries: Vec<GeneratorEntry> = subs
        .par_iter()
        .map(|e| {
            let (cycle, sigma) = cross_polytopal_cycle(e, n, r)?;
            Ok(GeneratorEntry { embedding: *e, cycle, sigma })
        })
        .collect::<Result<_>>()?;
    Ok(GeneratorFamily { n, r, entries })
}

/// Certified rank of the family's homology classes via the pairing argument:
/// every sigma is checked maximal in `VR(Q_n; r)` (so its indicator is a
/// cocycle), every cycle has vanishing boundary, and the pairing matrix of
/// duals against cycles is the identity. Returns the family size.
///
/// Cycles are Z/2 objects; other fields are rejected.
pub fn family_rank(fam: &GeneratorFamily, field: Field) -> Result<usize> {
    if !field.is_gf2() {
        return Err(usage("cross-polytopal cycles are constructed over Z/2 only"));
    }
    for (i, entry) in fam.entries.iter().enumerate() {
        if !is_maximal(fam.n, fam.r, &entry.sigma)? {
            return Err(Error::Verification(format!(
                "entry {i}: sigma is not maximal in VR(Q_{}; {})",
                fam.n, fam.r
            )));
        }
        let support = gf2_boundary_support(&entry.cycle)?;
        if !support.is_empty() {
            return Err(Error::Verification(format!(
                "entry {i}: cycle has {} odd boundary faces",
                support.len()
            )));
        }
    }
    for (i, a) in fam.entries.iter().enumerate() {
        for (j, b) in fam.entries.iter().enumerate() {
            let expected = u32::from(i == j);
            if a.pairing_with(b) != expected {
                return Err(Error::Verification(format!(
                    "pairing matrix is not the identity at ({i}, {j})"
                )));
            }
        }
    }
    Ok(fam.entries.len())
}

/// Independence check (b): the rank of the cycle set modulo boundaries of
/// `VR(Q_n; r)`, measured directly against the `(2^r)`-dimensional boundary
/// matrix. Equals the family size whenever the skeleton fits the budget.
pub fn family_rank_mod_boundaries(
    fam: &GeneratorFamily,
    field: Field,
    budget: u64,
) -> Result<usize> {
    if !field.is_gf2() {
        return Err(usage("cross-polytopal cycles are constructed over Z/2 only"));
    }
    let q = (1usize << fam.r) - 1;
    let skel = build_skeleton(fam.n, fam.r, q + 1, budget)?;
    let mut red = Reducer::new(field, skel.count(q));
    for i in 0..skel.count(q + 1) {
        let verts = skel.simplex_at(q + 1, i);
        let mut col: Vec<(u32, i64)> = Vec::with_capacity(q + 2);
        let mut face = Vec::with_capacity(q + 1);
        for drop in 0..=q + 1 {
            face.clear();
            face.extend(verts.iter().enumerate().filter(|(j, _)| *j != drop).map(|(_, &v)| v));
            let row = skel.position(q, &face).expect("face closure");
            col.push((row as u32, 1));
        }
        red.push(field, &col);
    }
    let base = red.rank();
    for entry in &fam.entries {
        let col: Vec<(u32, i64)> = entry
            .cycle
            .iter()
            .map(|s| {
                let idx = skel.position(q, s.verts()).expect("cycle simplex is in the skeleton");
                (idx as u32, 1)
            })
            .collect();
        red.push(field, &col);
    }
    Ok(red.rank() - base)
}

/// Sanity facts about the even/odd simplex used by tests and the verify CLI:
/// antipode-free membership, constant local diameter r, full cubic hull.
pub fn sigma_max_properties(r: u32) -> Result<bool> {
    let sigma = sigma_max(r)?;
    let n = r + 1;
    let full = mask_n(n);
    let set = VertexSet::new(n, sigma.verts().to_vec())?;
    for x in 0..=full {
        let in_sigma = sigma.verts().binary_search(&x).is_ok();
        let antipode_in = sigma.verts().binary_search(&(!x & full)).is_ok();
        if in_sigma == antipode_in {
            return Ok(false);
        }
    }
    for &y in sigma.verts() {
        if local_diameter(&set, Vertex::new(y, n)?)? != r {
            return Ok(false);
        }
    }
    let hull = cubic_hull(&set);
    Ok(hull.mask() == full)
}

/// Index the family against its own simplex support and evaluate the full
/// pairing matrix through the cochain/chain pairing.
pub fn indexed_pairing_matrix(fam: &GeneratorFamily, field: Field) -> Result<Vec<Vec<u32>>> {
    let q = (1usize << fam.r) - 1;
    let mut support: Vec<&Simplex> = fam.entries.iter().flat_map(|e| e.cycle.iter()).collect();
    support.sort();
    support.dedup();
    let index_of = |s: &Simplex| -> u32 {
        support.binary_search(&s).expect("support contains every term") as u32
    };
    let chains: Vec<Chain> = fam
        .entries
        .iter()
        .map(|e| {
            let mut entries: Vec<(u32, u32)> =
                e.cycle.iter().map(|s| (index_of(s), 1)).collect();
            entries.sort_unstable();
            Chain { q, entries }
        })
        .collect();
    let duals: Vec<Cochain> = fam
        .entries
        .iter()
        .map(|e| Cochain { q, entries: vec![(index_of(&e.sigma), 1)] })
        .collect();
    let mut matrix = vec![vec![0u32; fam.entries.len()]; fam.entries.len()];
    for (i, dual) in duals.iter().enumerate() {
        for (j, chain) in chains.iter().enumerate() {
            matrix[i][j] = pair(field, dual, chain)?;
        }
    }
    Ok(matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::betti;
    use crate::rips::DEFAULT_BUDGET;

    #[test]
    fn antipode_free_counts_and_shape() {
        let sets = antipode_free_sets(1).unwrap();
        assert_eq!(sets.len(), 4);
        for s in &sets {
            assert_eq!(s.members().len(), 2);
            assert!(crate::hypercube::diameter(s) <= 1);
        }
        let sets = antipode_free_sets(2).unwrap();
        assert_eq!(sets.len(), 16);
        for s in &sets {
            assert_eq!(s.members().len(), 4);
            assert!(crate::hypercube::diameter(s) <= 2);
            // Every member set is a maximal simplex of VR(Q_3; 2).
            let simplex = Simplex::from_vertex_set(s);
            assert!(is_maximal(3, 2, &simplex).unwrap());
        }
        assert!(antipode_free_sets(0).is_err());
        assert!(matches!(antipode_free_sets(6), Err(Error::Capability(_))));
        assert!(matches!(antipode_free_sets(21), Err(Error::Capability(_))));
    }

    #[test]
    fn sigma_max_base_cases() {
        assert_eq!(sigma_max(2).unwrap().verts(), &[0b000, 0b011, 0b101, 0b110]);
        // r = 3: the r = 2 simplex crossed with {0,1}.
        let s3 = sigma_max(3).unwrap();
        assert_eq!(s3.verts(), &[0, 3, 5, 6, 8, 11, 13, 14]);
        assert!(sigma_max(1).is_err());
    }

    #[test]
    fn sigma_max_properties_through_r10() {
        for r in 2..=10 {
            assert!(sigma_max_properties(r).unwrap(), "r = {r}");
        }
    }

    #[test]
    fn identity_embedding_cycle_is_a_cycle() {
        let e = SubcubeEmbedding::new(3, 0b111, 0).unwrap();
        let (cycle, sigma) = cross_polytopal_cycle(&e, 3, 2).unwrap();
        assert_eq!(cycle.len(), 16);
        assert!(gf2_boundary_support(&cycle).unwrap().is_empty());
        assert_eq!(sigma.verts(), &[0b000, 0b011, 0b101, 0b110]);
    }

    #[test]
    fn embedded_sigma_is_maximal_everywhere() {
        for e in enumerate_subcubes(4, 3).unwrap() {
            let (_, sigma) = cross_polytopal_cycle(&e, 4, 2).unwrap();
            assert!(is_maximal(4, 2, &sigma).unwrap());
        }
    }

    #[test]
    fn family_rank_small_cases() {
        let fam = build_family(3, 2).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(family_rank(&fam, Field::GF2).unwrap(), 1);

        let fam = build_family(4, 2).unwrap();
        assert_eq!(fam.len(), 8);
        assert_eq!(family_rank(&fam, Field::GF2).unwrap(), 8);
        assert!(family_rank(&fam, Field::new(3).unwrap()).is_err());
    }

    #[test]
    fn family_rank_against_boundaries() {
        let fam = build_family(4, 2).unwrap();
        let rank = family_rank_mod_boundaries(&fam, Field::GF2, DEFAULT_BUDGET).unwrap();
        assert_eq!(rank, 8);
        // The ninth class is not cross-polytopal.
        assert_eq!(betti(4, 2, 3, Field::GF2, DEFAULT_BUDGET).unwrap().betti, 9);
    }

    #[test]
    fn indexed_pairing_agrees() {
        let fam = build_family(4, 2).unwrap();
        let matrix = indexed_pairing_matrix(&fam, Field::GF2).unwrap();
        for (i, row) in matrix.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(v, u32::from(i == j));
                assert_eq!(v, fam.entries[i].pairing_with(&fam.entries[j]));
            }
        }
    }

    #[test]
    fn dump_is_stable() {
        let fam = build_family(3, 2).unwrap();
        let dump = fam.dump();
        assert_eq!(dump.lines().count(), 1);
        assert!(dump.starts_with("S=111 b=000 sigma="));
        assert!(dump.trim_end().ends_with("support=16"));
    }
}
