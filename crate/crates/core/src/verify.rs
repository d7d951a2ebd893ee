//! Independent verification: friendship-freeness, exact vertex-disjoint
//! packing, certificate replay, and exhaustive small-case exploration.
//!
//! A graph contains a friendship copy `F_k` centered at `v` exactly when the
//! subgraph induced by the neighborhood of `v` has a matching of size `k`,
//! so freeness reduces to one threshold matching computation per vertex.
//!
//! The packer computes the exact maximum number of pairwise vertex-disjoint
//! copies. It first squeezes the instance between a greedy packing (lower
//! bound) and a greedy deletion set whose removal makes the graph free
//! (upper bound); when the two meet the answer is certified without
//! branching. Otherwise it branches on a vertex of some copy — either the
//! vertex is unused (delete it) or some packed copy contains it (enumerate
//! those copies) — within a node budget, and an exhausted budget flags the
//! result as a certified lower bound rather than an exact value.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::admissible::{admissibility_violation, cross_triangles, objective, AdmissibleTriple, Overlay};
use crate::canon::{canonical_label_budgeted, CanonicalLabel};
use crate::construct::{build_hn, g_value, FormulaParams};
use crate::enumerate::classes_on_n_vertices;
use crate::families::validate_member;
use crate::graph::Graph;
use crate::search::Certificate;
use crate::{Error, Result, Side};

/// One friendship copy: a center and `k` vertex-disjoint neighbor edges.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FkCopy {
    /// The shared vertex of the triangles.
    pub center: usize,
    /// `k` pairwise disjoint edges inside the center's neighborhood.
    pub spokes: Vec<(usize, usize)>,
}

impl FkCopy {
    /// All `2k + 1` vertices of the copy.
    pub fn vertices(&self) -> Vec<usize> {
        let mut out = vec![self.center];
        for &(u, v) in &self.spokes {
            out.push(u);
            out.push(v);
        }
        out
    }

    /// Checks the copy against a host graph: spokes are disjoint host edges
    /// inside the center's neighborhood.
    pub fn validate(&self, g: &Graph, k: usize) -> Result<()> {
        if self.spokes.len() != k {
            return Err(Error::Internal(format!(
                "copy has {} spokes, expected {k}",
                self.spokes.len()
            )));
        }
        let mut used = vec![false; g.n()];
        used[self.center] = true;
        for &(u, v) in &self.spokes {
            if !g.has_edge(u, v) || !g.has_edge(self.center, u) || !g.has_edge(self.center, v) {
                return Err(Error::Internal(format!("({u},{v}) is not a triangle with the center")));
            }
            if used[u] || used[v] {
                return Err(Error::Internal("copy reuses a vertex".into()));
            }
            used[u] = true;
            used[v] = true;
        }
        Ok(())
    }
}

/// Outcome of the freeness check.
#[derive(Clone, Debug)]
pub enum Verdict {
    /// No vertex centers a friendship copy.
    Free,
    /// An explicit copy at the first violating center.
    WitnessCenter(FkCopy),
}

/// Freeness certificate: the per-vertex neighborhood matching numbers
/// (capped at `k`, where the threshold matcher stops) and the verdict.
#[derive(Clone, Debug)]
pub struct FreenessCertificate {
    /// The parameter checked against.
    pub k: usize,
    /// `min(nu(G[N(v)]), k)` for every vertex.
    pub per_vertex_nu: Vec<usize>,
    /// Free, or the first witnessed center.
    pub verdict: Verdict,
}

impl FreenessCertificate {
    /// Whether the graph was found free.
    pub fn is_free(&self) -> bool {
        matches!(self.verdict, Verdict::Free)
    }
}

/// Checks whether `g` has no friendship copy with `k` triangles, reporting
/// the first center and an explicit copy when it does.
pub fn is_fk_free(g: &Graph, k: usize) -> FreenessCertificate {
    assert!(k >= 1, "freeness requires k >= 1");
    let mut per_vertex_nu = Vec::with_capacity(g.n());
    let mut witness: Option<FkCopy> = None;
    for v in 0..g.n() {
        let (nbhd, map) = g.neighborhood(v);
        let matching = crate::matching::maximum_matching(&nbhd, Some(k));
        let mut edges: Vec<(usize, usize)> = matching
            .iter()
            .enumerate()
            .filter_map(|(x, &m)| m.filter(|&y| x < y).map(|y| (x, y)))
            .collect();
        per_vertex_nu.push(edges.len().min(k));
        if edges.len() >= k && witness.is_none() {
            edges.truncate(k);
            let copy = FkCopy {
                center: v,
                spokes: edges.iter().map(|&(x, y)| (map[x], map[y])).collect(),
            };
            debug_assert!(copy.validate(g, k).is_ok());
            witness = Some(copy);
        }
    }
    FreenessCertificate {
        k,
        per_vertex_nu,
        verdict: match witness {
            None => Verdict::Free,
            Some(c) => Verdict::WitnessCenter(c),
        },
    }
}

/// A pairwise vertex-disjoint family of friendship copies.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct PackingWitness {
    /// The packed copies.
    pub copies: Vec<FkCopy>,
}

impl PackingWitness {
    /// Checks every copy and pairwise disjointness against a host graph.
    pub fn validate(&self, g: &Graph, k: usize) -> Result<()> {
        let mut used = vec![false; g.n()];
        for copy in &self.copies {
            copy.validate(g, k)?;
            for v in copy.vertices() {
                if used[v] {
                    return Err(Error::Internal(format!("vertex {v} used by two copies")));
                }
                used[v] = true;
            }
        }
        Ok(())
    }
}

/// Result of the exact packing search.
#[derive(Clone, Debug)]
pub struct PackingResult {
    /// Number of copies found (exact maximum when `exact` is set, else a
    /// certified lower bound).
    pub count: usize,
    /// A packing realizing `count`.
    pub witness: PackingWitness,
    /// Whether the search completed within its budget.
    pub exact: bool,
}

/// Exact maximum number of pairwise vertex-disjoint friendship copies,
/// within `budget` search nodes.
pub fn max_disjoint_fk(g: &Graph, k: usize, budget: u64) -> PackingResult {
    assert!(k >= 1, "packing requires k >= 1");
    let mut active = vec![true; g.n()];
    let mut searcher = Packer {
        g,
        k,
        budget,
        memo: BTreeMap::new(),
    };
    let (count, witness, exact) = searcher.solve(&mut active);
    debug_assert!(witness.validate(g, k).is_ok());
    debug_assert_eq!(witness.copies.len(), count);
    PackingResult {
        count,
        witness,
        exact,
    }
}

struct Packer<'a> {
    g: &'a Graph,
    k: usize,
    budget: u64,
    memo: BTreeMap<CanonicalLabel, usize>,
}

/// Residual graphs with at most this many non-isolated vertices are
/// memoized by canonical label.
const MEMO_MAX_RELEVANT: usize = 16;

/// At most this many copies are enumerated per branching step; exceeding
/// the cap flags the result inexact.
const MAX_BRANCH_COPIES: usize = 4096;

impl Packer<'_> {
    /// Finds one copy in the residual graph, preferring high-degree centers.
    fn find_copy(&self, active: &[bool]) -> Option<FkCopy> {
        let mut centers: Vec<usize> = (0..self.g.n()).filter(|&v| active[v]).collect();
        centers.sort_by_key(|&v| {
            let deg = self.g.neighbors(v).filter(|&u| active[u]).count();
            (std::cmp::Reverse(deg), v)
        });
        for v in centers {
            if let Some(copy) = self.copy_at_center(active, v, None) {
                return Some(copy);
            }
        }
        None
    }

    /// A copy centered at `v`, optionally avoiding a forbidden vertex set.
    fn copy_at_center(&self, active: &[bool], v: usize, avoid: Option<&[bool]>) -> Option<FkCopy> {
        let verts: Vec<usize> = self
            .g
            .neighbors(v)
            .filter(|&u| active[u] && avoid.is_none_or(|f| !f[u]))
            .collect();
        if verts.len() < 2 * self.k {
            return None;
        }
        let nbhd = self.g.induced(&verts).expect("in range");
        let matching = crate::matching::maximum_matching(&nbhd, Some(self.k));
        let mut edges: Vec<(usize, usize)> = matching
            .iter()
            .enumerate()
            .filter_map(|(x, &m)| m.filter(|&y| x < y).map(|y| (x, y)))
            .collect();
        if edges.len() < self.k {
            return None;
        }
        edges.truncate(self.k);
        Some(FkCopy {
            center: v,
            spokes: edges.iter().map(|&(x, y)| (verts[x], verts[y])).collect(),
        })
    }

    /// Greedy packing: repeatedly take any copy and delete its vertices.
    fn greedy_pack(&self, active: &[bool]) -> PackingWitness {
        let mut active = active.to_vec();
        let mut copies = Vec::new();
        while let Some(copy) = self.find_copy(&active) {
            for v in copy.vertices() {
                active[v] = false;
            }
            copies.push(copy);
        }
        PackingWitness { copies }
    }

    /// Greedy deletion set, in deletion order: repeatedly find a copy and
    /// delete its busiest vertex until the residual is free. Every copy of
    /// the residual meets the deleted set, so the packing number is at most
    /// its size.
    fn greedy_hitting_set(&self, active: &[bool]) -> Vec<usize> {
        let mut active = active.to_vec();
        let mut deleted = Vec::new();
        while let Some(copy) = self.find_copy(&active) {
            let v = copy
                .vertices()
                .into_iter()
                .max_by_key(|&v| {
                    (self.g.neighbors(v).filter(|&u| active[u]).count(), std::cmp::Reverse(v))
                })
                .expect("copy is nonempty");
            active[v] = false;
            deleted.push(v);
        }
        deleted
    }

    /// Packing guided by a hitting set: give each hitting vertex its own
    /// copy while keeping the other unused hitting vertices out of it. When
    /// every copy of the host must meet the hitting set (which is how the
    /// set was built), this recovers one copy per hitting vertex whenever
    /// the surrounding graph is rich enough, closing the gap to the upper
    /// bound without branching.
    fn guided_pack(&self, active: &[bool], hitting: &[usize]) -> PackingWitness {
        let mut active = active.to_vec();
        let mut forbidden = vec![false; self.g.n()];
        for &d in hitting {
            forbidden[d] = true;
        }
        let mut copies = Vec::new();
        for &d in hitting {
            if !active[d] {
                continue;
            }
            forbidden[d] = false;
            if let Some(copy) = self.copy_at_center(&active, d, Some(&forbidden)) {
                for v in copy.vertices() {
                    active[v] = false;
                }
                copies.push(copy);
            }
            forbidden[d] = true;
        }
        // Pack whatever is left the plain way.
        while let Some(copy) = self.find_copy(&active) {
            for v in copy.vertices() {
                active[v] = false;
            }
            copies.push(copy);
        }
        PackingWitness { copies }
    }

    fn lower_bound_pack(&self, active: &[bool], hitting: &[usize]) -> PackingWitness {
        let plain = self.greedy_pack(active);
        let guided = self.guided_pack(active, hitting);
        if guided.copies.len() >= plain.copies.len() {
            guided
        } else {
            plain
        }
    }

    fn relevant_label(&self, active: &[bool]) -> Option<CanonicalLabel> {
        let verts: Vec<usize> = (0..self.g.n())
            .filter(|&v| active[v] && self.g.neighbors(v).any(|u| active[u]))
            .collect();
        if verts.len() > MEMO_MAX_RELEVANT {
            return None;
        }
        let sub = self.g.induced(&verts).expect("in range");
        // Highly symmetric residuals have factorially many orderings; the
        // memo is an optimization, so give up rather than pay for the label.
        canonical_label_budgeted(&sub, &[(0..sub.n()).collect()], 2_000).map(|(label, _)| label)
    }

    fn solve(&mut self, active: &mut Vec<bool>) -> (usize, PackingWitness, bool) {
        let hitting = self.greedy_hitting_set(active);
        let lower = self.lower_bound_pack(active, &hitting);
        debug_assert!(lower.copies.len() <= hitting.len());
        if lower.copies.len() == hitting.len() {
            let count = lower.copies.len();
            return (count, lower, true);
        }
        if let Some(label) = self.relevant_label(active) {
            if let Some(&count) = self.memo.get(&label) {
                // Memoized counts are only stored for exactly solved
                // residuals; rebuild a witness greedily up to that count.
                let witness = self.greedy_pack(active);
                if witness.copies.len() == count {
                    return (count, witness, true);
                }
            }
        }
        if self.budget == 0 {
            return (lower.copies.len(), lower, false);
        }
        self.budget -= 1;

        let pivot_copy = match self.find_copy(active) {
            None => return (0, PackingWitness::default(), true),
            Some(c) => c,
        };
        // Pivot on the busiest vertex of the found copy.
        let pivot = pivot_copy
            .vertices()
            .into_iter()
            .max_by_key(|&v| (self.g.neighbors(v).filter(|&u| active[u]).count(), std::cmp::Reverse(v)))
            .expect("copy is nonempty");

        // Branch 1: no packed copy uses the pivot.
        active[pivot] = false;
        let (mut best, mut witness, mut exact) = self.solve(active);
        active[pivot] = true;

        // Branch 2: some packed copy contains the pivot.
        let (copies, complete) = self.copies_through(active, pivot);
        exact &= complete;
        for copy in copies {
            for v in copy.vertices() {
                active[v] = false;
            }
            let (sub, sub_witness, sub_exact) = self.solve(active);
            for v in copy.vertices() {
                active[v] = true;
            }
            exact &= sub_exact;
            if 1 + sub > best {
                best = 1 + sub;
                let mut w = PackingWitness { copies: vec![copy.clone()] };
                w.copies.extend(sub_witness.copies);
                witness = w;
            }
        }

        if exact {
            if let Some(label) = self.relevant_label(active) {
                self.memo.insert(label, best);
            }
        }
        (best, witness, exact)
    }

    /// Enumerates copies whose vertex set contains `pivot`: for each center
    /// (the pivot itself or an active neighbor), the threshold matchings of
    /// the neighborhood, seeded with a pivot edge when the pivot is a spoke
    /// vertex. Capped at [`MAX_BRANCH_COPIES`]; returns the copies and
    /// whether enumeration was complete.
    fn copies_through(&mut self, active: &[bool], pivot: usize) -> (Vec<FkCopy>, bool) {
        let mut out = Vec::new();
        let mut complete = true;
        let mut centers = vec![pivot];
        centers.extend(self.g.neighbors(pivot).filter(|&u| active[u]));
        'centers: for center in centers {
            let verts: Vec<usize> = self.g.neighbors(center).filter(|&u| active[u]).collect();
            if verts.len() < 2 * self.k {
                continue;
            }
            let nbhd = self.g.induced(&verts).expect("in range");
            let mut matchings: Vec<Vec<(usize, usize)>> = Vec::new();
            let mut used = vec![false; verts.len()];
            let mut cur: Vec<(usize, usize)> = Vec::new();
            let room = MAX_BRANCH_COPIES - out.len();
            let finished = if center == pivot {
                self.enum_matchings(&nbhd, 0, &mut used, &mut cur, &mut matchings, room)
            } else {
                // The pivot must be covered: seed the matching with each of
                // its edges, then extend.
                let f = verts.iter().position(|&u| u == pivot).expect("pivot is a neighbor");
                let mut finished = true;
                let f_nbrs: Vec<usize> = nbhd.neighbors(f).collect();
                for u in f_nbrs {
                    used[f] = true;
                    used[u] = true;
                    cur.push((f.min(u), f.max(u)));
                    let sub_room = room.saturating_sub(matchings.len());
                    finished &= self.enum_matchings(&nbhd, 0, &mut used, &mut cur, &mut matchings, sub_room);
                    cur.pop();
                    used[f] = false;
                    used[u] = false;
                    if !finished {
                        break;
                    }
                }
                finished
            };
            for m in &matchings {
                out.push(FkCopy {
                    center,
                    spokes: m.iter().map(|&(x, y)| (verts[x], verts[y])).collect(),
                });
            }
            if !finished || out.len() >= MAX_BRANCH_COPIES {
                complete = finished && out.len() < MAX_BRANCH_COPIES;
                if !complete {
                    break 'centers;
                }
            }
        }
        (out, complete)
    }

    /// Enumerates size-`k` matchings of `nbhd` extending `cur`, scanning
    /// lowest uncovered vertices which either join an edge or stay out.
    /// Stops early when `limit` matchings were collected or the budget ran
    /// out; returns whether enumeration was complete.
    fn enum_matchings(
        &mut self,
        nbhd: &Graph,
        from: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
        limit: usize,
    ) -> bool {
        if out.len() >= limit {
            return false;
        }
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        if cur.len() == self.k {
            out.push(cur.clone());
            return out.len() < limit;
        }
        let Some(v) = (from..nbhd.n()).find(|&v| !used[v]) else {
            return true;
        };
        // v joins the matching with some unused neighbor...
        let nbrs: Vec<usize> = nbhd.neighbors(v).filter(|&u| !used[u]).collect();
        for u in nbrs {
            used[v] = true;
            used[u] = true;
            cur.push((v.min(u), v.max(u)));
            let ok = self.enum_matchings(nbhd, v + 1, used, cur, out, limit);
            cur.pop();
            used[v] = false;
            used[u] = false;
            if !ok {
                return false;
            }
        }
        // ...or stays out of it.
        used[v] = true;
        let ok = self.enum_matchings(nbhd, v + 1, used, cur, out, limit);
        used[v] = false;
        ok
    }
}

/// One check of a certificate replay.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    /// Stable check identifier.
    pub check: String,
    /// Whether the check passed.
    pub pass: bool,
    /// Human-readable details.
    pub details: String,
}

/// Replay report: all checks with an overall verdict.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    /// Individual checks in execution order.
    pub checks: Vec<CheckResult>,
    /// True when every check passed.
    pub pass: bool,
}

impl VerifyReport {
    fn push(&mut self, check: &str, pass: bool, details: String) {
        self.checks.push(CheckResult {
            check: check.to_string(),
            pass,
            details,
        });
        self.pass &= pass;
    }

    /// Names of the failed checks.
    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.check.as_str()).collect()
    }
}

/// Replays a certificate from scratch: family membership of both graphs,
/// overlay shape, both admissibility inequalities, the objective value of
/// every optimizer, and the rebuilt construction on `n` vertices against
/// the closed forms and the claimed constant. Fails loudly, naming each
/// violated check.
pub fn verify_certificate(cert: &Certificate, n: usize) -> VerifyReport {
    let mut report = VerifyReport {
        checks: Vec::new(),
        pass: true,
    };
    if cert.k < 3 || cert.t < 1 {
        report.push(
            "parameters",
            false,
            format!("k = {} and t = {} out of range", cert.k, cert.t),
        );
        return report;
    }
    report.push("parameters", true, format!("k = {}, t = {}", cert.k, cert.t));
    if cert.optimizers.is_empty() {
        report.push("optimizers_nonempty", false, "certificate lists no optimizers".into());
        return report;
    }
    report.push(
        "optimizers_nonempty",
        true,
        format!("{} optimizer(s)", cert.optimizers.len()),
    );

    for (idx, opt) in cert.optimizers.iter().enumerate() {
        let tag = format!("optimizer {idx}");
        let p = match Graph::from_graph6(&opt.p) {
            Ok(g) => g,
            Err(e) => {
                report.push("graph6_p", false, format!("{tag}: {e}"));
                continue;
            }
        };
        let q = match Graph::from_graph6(&opt.q) {
            Ok(g) => g,
            Err(e) => {
                report.push("graph6_q", false, format!("{tag}: {e}"));
                continue;
            }
        };
        let family_p = validate_member(&p, cert.k);
        report.push(
            "family_p",
            family_p.is_ok(),
            match &family_p {
                Ok(()) => format!("{tag}: first graph satisfies the membership constraints"),
                Err(e) => format!("{tag}: {e}"),
            },
        );
        let family_q = validate_member(&q, cert.k);
        report.push(
            "family_q",
            family_q.is_ok(),
            match &family_q {
                Ok(()) => format!("{tag}: second graph satisfies the membership constraints"),
                Err(e) => format!("{tag}: {e}"),
            },
        );
        if family_p.is_err() || family_q.is_err() {
            continue;
        }
        let overlay = match Overlay::new(p.n(), q.n(), &opt.r) {
            Ok(r) => {
                report.push("overlay_shape", true, format!("{tag}: {} pairs", opt.r.len()));
                r
            }
            Err(e) => {
                report.push("overlay_shape", false, format!("{tag}: {e}"));
                continue;
            }
        };
        match admissibility_violation(&p, &q, &overlay, cert.k) {
            Ok(None) => {
                report.push("admissible_a", true, format!("{tag}: first inequality holds"));
                report.push("admissible_b", true, format!("{tag}: second inequality holds"));
            }
            Ok(Some(v)) => {
                let (check, other) = match v.side {
                    Side::A => ("admissible_a", "admissible_b"),
                    Side::B => ("admissible_b", "admissible_a"),
                };
                report.push(
                    check,
                    false,
                    format!("{tag}: vertex {} has degree+matching {} > {}", v.vertex, v.lhs, cert.k - 1),
                );
                let _ = other;
                continue;
            }
            Err(e) => {
                report.push("admissible_a", false, format!("{tag}: {e}"));
                continue;
            }
        }
        let phi = objective(&p, &q, &overlay, cert.k, cert.t).expect("validated above");
        report.push(
            "objective_value",
            phi == cert.value,
            format!("{tag}: recomputed objective {phi}, certificate claims {}", cert.value),
        );
        if phi != cert.value {
            continue;
        }

        let triple = AdmissibleTriple::new(p.clone(), q.clone(), overlay.clone(), cert.k)
            .expect("validated above");
        let rep = match build_hn(&triple, n) {
            Ok(rep) => rep,
            Err(e) => {
                report.push("construction", false, format!("{tag}: {e}"));
                continue;
            }
        };
        let f = crate::families::chvatal_hanson(cert.k - 1, cert.k - 1).expect("k >= 3");
        let (na, nb) = (p.n() as i64, q.n() as i64);
        let nn = n as i64;
        let e_expect = nn * nn / 4 - na * nb + overlay.edge_count() as i64 + 2 * f;
        report.push(
            "edge_closed_form",
            rep.e_direct == e_expect,
            format!("{tag}: edges {} vs closed form {e_expect}", rep.e_direct),
        );
        let tau = cross_triangles(&p, &q, &overlay).expect("validated above");
        let tri_expect = f * (nn - na - nb)
            + p.triangle_count() as i64
            + q.triangle_count() as i64
            + tau;
        report.push(
            "triangle_closed_form",
            rep.tri_direct == tri_expect,
            format!("{tag}: triangles {} vs closed form {tri_expect}", rep.tri_direct),
        );
        let g = g_value(&FormulaParams {
            k: cert.k,
            t: cert.t,
            n: nn,
            ell: None,
            cstar: Some(cert.value),
        })
        .expect("validated above");
        let weighted = cert.t * rep.e_direct + rep.tri_direct;
        report.push(
            "g_consistency",
            weighted == g.value,
            format!("{tag}: t*e + triangles = {weighted} vs formula {}", g.value),
        );
        let free = is_fk_free(&rep.graph, cert.k);
        report.push(
            "construction_free",
            free.is_free(),
            format!("{tag}: construction on {n} vertices is friendship-free"),
        );
    }
    report
}

/// Exhaustive small-`n` maximum of `t * edges + triangles` over
/// friendship-free graphs on exactly `n <= 8` vertices, with all maximizers
/// (as graph6 of canonical forms).
///
/// This is an exploration tool: the closed form for this quantity is an
/// asymptotic statement, so disagreement at these tiny `n` is expected and
/// not a failure.
pub fn explore_small_g(k: usize, t: i64, n: usize) -> Result<(i64, Vec<String>)> {
    if n > 8 {
        return Err(Error::FeasibilityCap(format!(
            "exhaustive exploration capped at 8 vertices, got {n}"
        )));
    }
    if k < 1 || t < 1 {
        return Err(Error::InvalidArgument("k and t must be positive".into()));
    }
    // Freeness is inherited by induced subgraphs, so it prunes the
    // vertex-augmentation lattice exactly.
    let classes = classes_on_n_vertices(n, |g| is_fk_free(g, k).is_free());
    let mut best = i64::MIN;
    let mut maximizers = Vec::new();
    for g in classes {
        let value = t * g.edge_count() as i64 + g.triangle_count() as i64;
        if value > best {
            best = value;
            maximizers.clear();
        }
        if value == best {
            maximizers.push(g.to_graph6());
        }
    }
    if best == i64::MIN {
        // n = 0: the empty graph is the only (free) graph.
        return Ok((0, vec![Graph::empty(0).to_graph6()]));
    }
    maximizers.sort();
    Ok((best, maximizers))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::enumerate_family;
    use crate::search::{cstar_search, SearchOptions};

    fn two_k3() -> Graph {
        Graph::complete(3).disjoint_union(&Graph::complete(3))
    }

    fn optimal_k3_triple() -> AdmissibleTriple {
        let g = two_k3();
        let mut edges = Vec::new();
        for i in 0..3 {
            edges.extend_from_slice(&[(i, i), (i, 3 + i), (3 + i, i), (3 + i, 3 + i)]);
        }
        let r = Overlay::new(6, 6, &edges).unwrap();
        AdmissibleTriple::new(g.clone(), g, r, 3).unwrap()
    }

    #[test]
    fn friendship_graph_is_not_free_of_itself() {
        for k in 1..=3 {
            let g = Graph::friendship(k).unwrap();
            let cert = is_fk_free(&g, k);
            assert!(!cert.is_free());
            match cert.verdict {
                Verdict::WitnessCenter(ref c) => {
                    assert_eq!(c.center, 0);
                    c.validate(&g, k).unwrap();
                }
                Verdict::Free => unreachable!(),
            }
            // One more triangle than present is never found.
            assert!(is_fk_free(&g, k + 1).is_free());
        }
    }

    #[test]
    fn bipartite_graphs_are_always_free() {
        let g = Graph::complete_bipartite(4, 4);
        for k in 1..=3 {
            assert!(is_fk_free(&g, k).is_free());
        }
    }

    #[test]
    fn construction_is_free() {
        let tr = optimal_k3_triple();
        let rep = build_hn(&tr, 30).unwrap();
        assert!(is_fk_free(&rep.graph, 3).is_free());
    }

    #[test]
    fn freeness_agrees_with_naive_detector_small() {
        // Exhaustive over all graphs on up to 5 vertices and k in {2, 3}:
        // compare with a from-scratch detector that enumerates all k-subsets
        // of disjoint neighborhood edges.
        fn naive_has_fk(g: &Graph, k: usize) -> bool {
            (0..g.n()).any(|v| {
                let (nbhd, _) = g.neighborhood(v);
                let edges: Vec<(usize, usize)> = nbhd.edges().collect();
                fn rec(edges: &[(usize, usize)], chosen: &mut Vec<(usize, usize)>, k: usize, from: usize) -> bool {
                    if chosen.len() == k {
                        return true;
                    }
                    for i in from..edges.len() {
                        let (u, v) = edges[i];
                        if chosen.iter().all(|&(x, y)| x != u && x != v && y != u && y != v) {
                            chosen.push((u, v));
                            if rec(edges, chosen, k, i + 1) {
                                return true;
                            }
                            chosen.pop();
                        }
                    }
                    false
                }
                rec(&edges, &mut Vec::new(), k, 0)
            })
        }
        for n in 1..=5 {
            for g in classes_on_n_vertices(n, |_| true) {
                for k in 2..=3 {
                    assert_eq!(is_fk_free(&g, k).is_free(), !naive_has_fk(&g, k));
                }
            }
        }
    }

    #[test]
    fn packing_disjoint_copies() {
        let f3 = Graph::friendship(3).unwrap();
        let mut g = f3.clone();
        for _ in 1..3 {
            g = g.disjoint_union(&f3);
        }
        let res = max_disjoint_fk(&g, 3, 1_000_000);
        assert!(res.exact);
        assert_eq!(res.count, 3);
        res.witness.validate(&g, 3).unwrap();
    }

    #[test]
    fn packing_edgeless_and_small() {
        let res = max_disjoint_fk(&Graph::empty(10), 2, 1000);
        assert!(res.exact);
        assert_eq!(res.count, 0);
        // A single friendship graph packs exactly once.
        let res = max_disjoint_fk(&Graph::friendship(2).unwrap(), 2, 1000);
        assert!(res.exact);
        assert_eq!(res.count, 1);
    }

    #[test]
    fn packing_matches_reference_on_small_graphs() {
        // Reference: exhaustive recursion over all copies, no heuristics.
        fn all_copies(g: &Graph, k: usize, active: &[bool]) -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            for v in 0..g.n() {
                if !active[v] {
                    continue;
                }
                let verts: Vec<usize> = g.neighbors(v).filter(|&u| active[u]).collect();
                let nbhd = g.induced(&verts).expect("in range");
                let edges: Vec<(usize, usize)> = nbhd.edges().collect();
                fn rec(
                    edges: &[(usize, usize)],
                    chosen: &mut Vec<(usize, usize)>,
                    k: usize,
                    from: usize,
                    out: &mut Vec<Vec<(usize, usize)>>,
                ) {
                    if chosen.len() == k {
                        out.push(chosen.clone());
                        return;
                    }
                    for i in from..edges.len() {
                        let (u, w) = edges[i];
                        if chosen.iter().all(|&(x, y)| x != u && x != w && y != u && y != w) {
                            chosen.push((u, w));
                            rec(edges, chosen, k, i + 1, out);
                            chosen.pop();
                        }
                    }
                }
                let mut matchings = Vec::new();
                rec(&edges, &mut Vec::new(), k, 0, &mut matchings);
                for m in matchings {
                    let mut copy = vec![v];
                    for (x, y) in m {
                        copy.push(verts[x]);
                        copy.push(verts[y]);
                    }
                    out.push(copy);
                }
            }
            out
        }
        fn reference_pack(g: &Graph, k: usize, active: &mut Vec<bool>) -> usize {
            let copies = all_copies(g, k, active);
            let mut best = 0;
            for copy in copies {
                for &v in &copy {
                    active[v] = false;
                }
                best = best.max(1 + reference_pack(g, k, active));
                for &v in &copy {
                    active[v] = true;
                }
            }
            best
        }
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..60 {
            let n = rng.random_range(5..=9);
            let p = rng.random_range(0.3..0.9);
            let g = Graph::from_predicate(n, |_, _| rng.random_bool(p));
            let expect = reference_pack(&g, 2, &mut vec![true; n]);
            let got = max_disjoint_fk(&g, 2, 10_000_000);
            assert!(got.exact, "budget must suffice on tiny instances");
            assert_eq!(got.count, expect, "graph {:?}", g);
        }
    }

    #[test]
    fn packing_extremal_construction() {
        let tr = optimal_k3_triple();
        let t = 2i64;
        let g = crate::construct::build_extremal(&tr, t, 60).unwrap();
        let res = max_disjoint_fk(&g, 3, 10_000_000);
        assert!(res.exact);
        assert_eq!(res.count, t as usize);
    }

    #[test]
    fn deleting_clique_vertices_restores_freeness() {
        let tr = optimal_k3_triple();
        let t = 2i64;
        let g = crate::construct::build_extremal(&tr, t, 40).unwrap();
        // Remove clique vertices one at a time; a copy survives until the
        // last one is gone.
        let g1 = g.remove_vertex(0).unwrap();
        assert!(!is_fk_free(&g1, 3).is_free());
        let g2 = g1.remove_vertex(0).unwrap();
        assert!(is_fk_free(&g2, 3).is_free());
    }

    #[test]
    fn certificate_replay_round_trip() {
        let family = enumerate_family(3).unwrap();
        let res = cstar_search(3, 1, &family, &SearchOptions::default()).unwrap();
        let cert = res.certificate();
        for n in [30usize, 50] {
            let report = verify_certificate(&cert, n);
            assert!(report.pass, "failed checks: {:?}", report.failed());
        }
    }

    #[test]
    fn tampered_certificates_are_rejected_by_name() {
        let family = enumerate_family(3).unwrap();
        let res = cstar_search(3, 1, &family, &SearchOptions::default()).unwrap();
        let good = res.certificate();

        // Off-by-one value.
        let mut c = good.clone();
        c.value += 1;
        let rep = verify_certificate(&c, 50);
        assert!(!rep.pass && rep.failed().contains(&"objective_value"));

        // Overlay pair out of range.
        let mut c = good.clone();
        c.optimizers[0].r.push((7, 0));
        let rep = verify_certificate(&c, 50);
        assert!(!rep.pass && rep.failed().contains(&"overlay_shape"));
    }

    #[test]
    fn explore_tiny_maxima() {
        // k=3, t=1, n=4: the complete graph wins with 6 + 4 = 10.
        let (value, maxi) = explore_small_g(3, 1, 4).unwrap();
        assert_eq!(value, 10);
        assert_eq!(maxi, vec![Graph::complete(4).to_graph6()]);
        // Trivial cases.
        assert_eq!(explore_small_g(3, 1, 1).unwrap().0, 0);
        assert_eq!(explore_small_g(3, 2, 2).unwrap().0, 2);
        assert!(explore_small_g(3, 1, 9).is_err());
    }
}
