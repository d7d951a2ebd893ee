//! The Chvátal–Hanson function and the family of candidate internal graphs.
//!
//! `chvatal_hanson(nu, delta)` evaluates the closed form for the maximum
//! number of edges in a graph with matching number at most `nu` and maximum
//! degree at most `delta`; `chvatal_hanson_bruteforce` recomputes small cases
//! from scratch by exhaustive enumeration. `enumerate_family(k)` lists, up to
//! isomorphism, every graph with no isolated vertices, matching number and
//! maximum degree at most `k-1`, and exactly `f(k-1, k-1)` edges — the
//! candidate internal graphs planted inside the extremal constructions.

use serde::Serialize;

use crate::canon::{canonical_form, CanonicalLabel};
use crate::enumerate::constrained_by_edges;
use crate::graph::Graph;
use crate::{Error, Result};

/// Largest `k` for which `enumerate_family` guarantees exhaustiveness.
/// Beyond it the generation space explodes; results are flagged.
pub const EXHAUSTIVE_FAMILY_MAX_K: usize = 4;

/// Feasibility caps for the brute-force recomputation of `f`.
pub const BRUTEFORCE_MAX_NU: usize = 2;
/// See [`BRUTEFORCE_MAX_NU`].
pub const BRUTEFORCE_MAX_DELTA: usize = 3;

/// Closed form of the Chvátal–Hanson maximum:
/// `f(nu, delta) = nu*delta + floor(delta/2) * floor(nu / ceil(delta/2))`.
pub fn chvatal_hanson(nu: usize, delta: usize) -> Result<i64> {
    if nu == 0 || delta == 0 {
        return Err(Error::InvalidArgument(format!(
            "chvatal_hanson requires nu >= 1 and delta >= 1, got ({nu}, {delta})"
        )));
    }
    let (nu, delta) = (nu as i64, delta as i64);
    Ok(nu * delta + delta / 2 * (nu / ((delta + 1) / 2)))
}

/// Brute-force recomputation of `f(nu, delta)` with one maximizer.
///
/// Exhausts all graphs without isolated vertices satisfying both bounds, one
/// edge at a time. Any such graph has a vertex cover of size at most `2*nu`
/// (the endpoints of a maximum matching), so it has at most `2*nu*delta`
/// edges and at most `2*nu*(delta+1)` vertices; generation provably
/// terminates within that edge cap without consulting the closed form.
pub fn chvatal_hanson_bruteforce(nu: usize, delta: usize) -> Result<(i64, Graph)> {
    if nu == 0 || delta == 0 {
        return Err(Error::InvalidArgument("nu and delta must be positive".into()));
    }
    if nu > BRUTEFORCE_MAX_NU || delta > BRUTEFORCE_MAX_DELTA {
        return Err(Error::FeasibilityCap(format!(
            "brute force capped at nu <= {BRUTEFORCE_MAX_NU}, delta <= {BRUTEFORCE_MAX_DELTA}; got ({nu}, {delta})"
        )));
    }
    let levels = constrained_by_edges(nu, delta, 2 * nu * delta);
    let top = levels.iter().rposition(|level| !level.is_empty()).unwrap_or(0);
    let witness = levels[top]
        .values()
        .next()
        .cloned()
        .unwrap_or_else(|| Graph::empty(0));
    Ok((top as i64, witness))
}

/// One member of the internal-graph family, stored in canonical form.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    /// The graph itself, canonically labeled.
    pub graph: Graph,
    /// Its matching number.
    pub nu: usize,
    /// Its maximum degree.
    pub max_deg: usize,
    /// Its edge count (equals the family's target).
    pub edges: usize,
    /// Complete isomorphism invariant; members are sorted by it.
    pub label: CanonicalLabel,
}

/// The family of candidate internal graphs for a given `k`.
#[derive(Clone, Debug)]
pub struct Family {
    /// The parameter the family was generated for.
    pub k: usize,
    /// The prescribed edge count `f(k-1, k-1)`.
    pub edge_count: i64,
    /// Pairwise non-isomorphic members, ordered by canonical label.
    pub members: Vec<FamilyMember>,
    /// Whether the list is provably complete.
    pub exhaustive: bool,
}

/// Enumerates the family for `k`, exhaustively for `k <= 4`.
///
/// For larger `k` the exhaustive generation is infeasible; for odd `k` the
/// best-effort list contains the two-disjoint-cliques member `2K_k` (which
/// meets all constraints), flagged non-exhaustive. For even `k >= 6` no
/// member is known a priori and the flagged list is empty.
pub fn enumerate_family(k: usize) -> Result<Family> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("family requires k >= 2, got {k}")));
    }
    let target = chvatal_hanson(k - 1, k - 1)?;
    if k <= EXHAUSTIVE_FAMILY_MAX_K {
        // Cap from the vertex-cover argument; independent of the closed form.
        let edge_cap = 2 * (k - 1) * (k - 1);
        let levels = constrained_by_edges(k - 1, k - 1, edge_cap);
        let top = levels.iter().rposition(|level| !level.is_empty()).unwrap_or(0);
        if top as i64 != target {
            return Err(Error::Internal(format!(
                "exhaustive maximum {top} disagrees with closed form {target} at k={k}"
            )));
        }
        let members = levels[top]
            .iter()
            .map(|(label, g)| make_member(g.clone(), label.clone(), k, target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Family {
            k,
            edge_count: target,
            members,
            exhaustive: true,
        })
    } else {
        let mut members = Vec::new();
        if k % 2 == 1 {
            let g = Graph::complete(k).disjoint_union(&Graph::complete(k));
            let (canon, _, label) = canonical_form(&g);
            members.push(make_member(canon, label, k, target)?);
        }
        Ok(Family {
            k,
            edge_count: target,
            members,
            exhaustive: false,
        })
    }
}

fn make_member(graph: Graph, label: CanonicalLabel, k: usize, target: i64) -> Result<FamilyMember> {
    validate_member(&graph, k)?;
    debug_assert_eq!(graph.edge_count() as i64, target);
    Ok(FamilyMember {
        nu: graph.nu(),
        max_deg: graph.max_degree(),
        edges: graph.edge_count(),
        label,
        graph,
    })
}

/// Checks the defining constraints of family membership for `k`: no isolated
/// vertices, matching number and maximum degree at most `k-1`, and exactly
/// `f(k-1, k-1)` edges.
pub fn validate_member(g: &Graph, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("family requires k >= 2, got {k}")));
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return Err(Error::NotInFamily(format!("isolated vertex {v}")));
    }
    if g.has_matching_of_size(k) {
        return Err(Error::NotInFamily(format!("matching number exceeds {}", k - 1)));
    }
    if g.max_degree() > k - 1 {
        return Err(Error::NotInFamily(format!(
            "maximum degree {} exceeds {}",
            g.max_degree(),
            k - 1
        )));
    }
    let target = chvatal_hanson(k - 1, k - 1)?;
    if g.edge_count() as i64 != target {
        return Err(Error::NotInFamily(format!(
            "edge count {} differs from required {target}",
            g.edge_count()
        )));
    }
    Ok(())
}

/// JSON manifest describing an enumerated family.
#[derive(Serialize)]
pub struct FamilyManifest {
    /// Family parameter.
    pub k: usize,
    /// Required edge count of each member.
    pub f_value: i64,
    /// Number of members found.
    pub count: usize,
    /// Whether the enumeration is provably complete.
    pub exhaustive: bool,
    /// Per-member data.
    pub members: Vec<FamilyManifestEntry>,
}

/// One manifest row.
#[derive(Serialize)]
pub struct FamilyManifestEntry {
    /// graph6 encoding of the canonical representative.
    pub graph6: String,
    /// Hex canonical label.
    pub canonical_label: String,
    /// Matching number.
    pub nu: usize,
    /// Maximum degree.
    pub max_deg: usize,
    /// Vertex count.
    pub n: usize,
}

impl Family {
    /// Builds the JSON manifest for export.
    pub fn manifest(&self) -> FamilyManifest {
        FamilyManifest {
            k: self.k,
            f_value: self.edge_count,
            count: self.members.len(),
            exhaustive: self.exhaustive,
            members: self
                .members
                .iter()
                .map(|m| FamilyManifestEntry {
                    graph6: m.graph.to_graph6(),
                    canonical_label: m.label.to_hex(),
                    nu: m.nu,
                    max_deg: m.max_deg,
                    n: m.graph.n(),
                })
                .collect(),
        }
    }
}
