//! Exact branch-and-bound over all admissible triples.
//!
//! For every ordered pair `(P, Q)` from the family, the search assigns the
//! overlay neighborhood of each `A`-side vertex in a fixed vertex order. The
//! first admissibility inequality acts as a generator: the candidates for
//! vertex `a` are exactly the subsets `S` of `B` with
//! `nu(Q[S]) <= k - 1 - d_P(a)` (a downward-closed family, enumerated once
//! per degree budget). The second inequality is re-checked incrementally as
//! `B`-side neighborhoods grow, and violating branches are cut — soundly,
//! because the induced matching number only grows along a branch.
//!
//! The objective is linear in the overlay edge count and in the
//! cross-triangle weight, so an optimistic completion bound is cheap: every
//! unassigned vertex is assumed to take a maximum-gain feasible set, and
//! every internal edge with an unassigned endpoint contributes the smaller
//! of its endpoints' neighborhood caps. Subtrees are pruned only when the
//! bound falls strictly below the incumbent, so ties survive and every
//! optimizer is reported.
//!
//! Optimizers are deduplicated by a complete invariant of the whole triple
//! (joint relabeling of both sides plus the side swap) and reported in
//! canonical form, which makes the output deterministic regardless of
//! thread count or of whether symmetry pruning is enabled.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::admissible::{induced_nu_capped, AdmissibleTriple, Overlay};
use crate::canon::{automorphisms, canonical_label_partitioned, relabel, CanonicalLabel};
use crate::families::{chvatal_hanson, validate_member, Family};
use crate::graph::Graph;
use crate::{Error, Result};

/// Tuning knobs for [`cstar_search`].
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Skip ordered pairs that are swap-images of each other and restrict
    /// the first branched vertex to orbit representatives under the
    /// automorphisms of `Q`. Never changes the reported value or the
    /// canonical optimizer set; disabled only for audit runs.
    pub symmetry_pruning: bool,
    /// Worker threads for independent top-level branches. Results and
    /// statistics are identical for every thread count.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            symmetry_pruning: true,
            threads: 1,
        }
    }
}

/// Search statistics. Wall time is informational and deliberately excluded
/// from serialized certificates so that output files are byte-reproducible.
#[derive(Clone, Debug, Default)]
pub struct SearchStats {
    /// Candidate-set assignments attempted.
    pub nodes: u64,
    /// Branches cut by the completion bound or the second inequality.
    pub prunes: u64,
    /// Wall-clock milliseconds.
    pub wall_ms: u128,
}

/// The exact optimum and all optimizing triples.
#[derive(Clone, Debug)]
pub struct CStarResult {
    /// Family parameter.
    pub k: usize,
    /// Multiplicity parameter.
    pub t: i64,
    /// The computed constant.
    pub value: i64,
    /// Whether the input family was exhaustive; if not, the value is only a
    /// certified lower bound on the true constant.
    pub exhaustive: bool,
    /// All optimizers in canonical form, ordered by canonical label.
    pub optimizers: Vec<AdmissibleTriple>,
    /// Node and prune counters plus wall time.
    pub stats: SearchStats,
}

/// Serialized certificate schema (accepted back for re-verification).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    /// Family parameter.
    pub k: usize,
    /// Multiplicity parameter.
    pub t: i64,
    /// Claimed optimum.
    pub value: i64,
    /// Whether the claimed optimum is exact or a lower bound.
    pub exhaustive: bool,
    /// Claimed optimizers.
    pub optimizers: Vec<CertificateTriple>,
    /// Search counters.
    #[serde(default)]
    pub stats: CertificateStats,
}

/// One optimizer in a certificate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateTriple {
    /// graph6 of the first internal graph.
    #[serde(rename = "P")]
    pub p: String,
    /// graph6 of the second internal graph.
    #[serde(rename = "Q")]
    pub q: String,
    /// Overlay pair list.
    #[serde(rename = "R")]
    pub r: Vec<(usize, usize)>,
}

/// Deterministic subset of the search statistics.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CertificateStats {
    /// Candidate-set assignments attempted.
    pub nodes: u64,
    /// Branches cut.
    pub prunes: u64,
}

impl CStarResult {
    /// The serializable certificate for this result.
    pub fn certificate(&self) -> Certificate {
        Certificate {
            k: self.k,
            t: self.t,
            value: self.value,
            exhaustive: self.exhaustive,
            optimizers: self
                .optimizers
                .iter()
                .map(|tr| CertificateTriple {
                    p: tr.p().to_graph6(),
                    q: tr.q().to_graph6(),
                    r: tr.overlay().edges(),
                })
                .collect(),
            stats: CertificateStats {
                nodes: self.stats.nodes,
                prunes: self.stats.prunes,
            },
        }
    }
}

impl Certificate {
    /// Serializes to pretty JSON with a deterministic field order.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Parses a certificate from JSON.
    pub fn from_json(text: &str) -> Result<Certificate> {
        Ok(serde_json::from_str(text)?)
    }
}

/// A complete invariant of a triple under relabeling of either side and the
/// side swap, together with the canonical form it labels.
///
/// The triple is encoded as a two-colored graph (side `A` first, side `B`
/// second, overlay edges crossing) and canonically labeled with the color
/// classes as the initial partition; the swap is handled by taking the
/// smaller of the two orientations.
pub fn canonical_triple(tr: &AdmissibleTriple) -> (CanonicalLabel, AdmissibleTriple) {
    let forward = side_labeled(tr);
    let backward = side_labeled(&tr.swapped());
    if forward.0 <= backward.0 {
        forward
    } else {
        backward
    }
}

fn side_labeled(tr: &AdmissibleTriple) -> (CanonicalLabel, AdmissibleTriple) {
    let (na, nb) = (tr.p().n(), tr.q().n());
    let combined = combined_graph(tr.p(), tr.q(), tr.overlay());
    let cells = vec![(0..na).collect::<Vec<_>>(), (na..na + nb).collect()];
    let (label, order) = canonical_label_partitioned(&combined, &cells);
    // Refinement never reorders across the two initial cells, so the first
    // na positions carry side A.
    debug_assert!(order[..na].iter().all(|&v| v < na));
    let canon = relabel(&combined, &order);
    let p = canon.induced(&(0..na).collect::<Vec<_>>()).expect("in range");
    let q = canon.induced(&(na..na + nb).collect::<Vec<_>>()).expect("in range");
    let mut r_edges = Vec::new();
    for a in 0..na {
        for b in 0..nb {
            if canon.has_edge(a, na + b) {
                r_edges.push((a, b));
            }
        }
    }
    let overlay = Overlay::new(na, nb, &r_edges).expect("valid by construction");
    let triple = AdmissibleTriple::new(p, q, overlay, tr.k())
        .expect("admissibility is invariant under relabeling");
    (label, triple)
}

fn combined_graph(p: &Graph, q: &Graph, r: &Overlay) -> Graph {
    let na = p.n();
    let mut g = p.disjoint_union(q);
    for (a, b) in r.edges() {
        g.set_edge(a, na + b);
    }
    g
}

/// A feasible overlay neighborhood for one `A`-side vertex.
#[derive(Clone, Copy, Debug)]
struct FeasibleSet {
    mask: u64,
    size: i64,
    q_edges: i64,
}

/// Per-pair search context: candidate sets, gains, and completion bounds.
pub(crate) struct PairCtx {
    k: usize,
    t: i64,
    p: Graph,
    q: Graph,
    const_term: i64,
    candidates: Vec<Vec<FeasibleSet>>,
    /// Earlier internal neighbors of each vertex in branch order.
    earlier_nbrs: Vec<Vec<usize>>,
    q_degree: Vec<usize>,
    /// `suffix_bound[d]` bounds the total gain of vertices `d..` in any
    /// completion of a partial assignment covering `0..d`.
    suffix_bound: Vec<i64>,
}

impl PairCtx {
    pub(crate) fn new(p: &Graph, q: &Graph, k: usize, t: i64) -> Result<PairCtx> {
        validate_member(p, k)?;
        validate_member(q, k)?;
        if t < 1 {
            return Err(Error::InvalidArgument(format!("t must be positive, got {t}")));
        }
        let f = chvatal_hanson(k - 1, k - 1)?;
        let (na, nb) = (p.n() as i64, q.n() as i64);
        let const_term = (2 * f - na * nb) * t - f * (na + nb)
            + p.triangle_count() as i64
            + q.triangle_count() as i64;

        // Feasible neighborhoods per matching budget, shared across vertices
        // of equal internal degree.
        let mut by_budget: BTreeMap<usize, Vec<FeasibleSet>> = BTreeMap::new();
        let mut candidates = Vec::with_capacity(p.n());
        for a in 0..p.n() {
            let budget = (k - 1).saturating_sub(p.degree(a));
            let sets = by_budget
                .entry(budget)
                .or_insert_with(|| feasible_sets(q, budget, t))
                .clone();
            candidates.push(sets);
        }

        let earlier_nbrs: Vec<Vec<usize>> = (0..p.n())
            .map(|a| p.neighbors(a).filter(|&u| u < a).collect())
            .collect();

        let best_gain: Vec<i64> = candidates
            .iter()
            .map(|sets| sets.iter().map(|s| t * s.size + s.q_edges).max().unwrap_or(0))
            .collect();
        let cap: Vec<i64> = candidates
            .iter()
            .map(|sets| sets.iter().map(|s| s.size).max().unwrap_or(0))
            .collect();
        let mut suffix_bound = vec![0i64; p.n() + 1];
        for d in (0..p.n()).rev() {
            let pair_part: i64 = earlier_nbrs[d].iter().map(|&i| cap[i].min(cap[d])).sum();
            suffix_bound[d] = suffix_bound[d + 1] + best_gain[d] + pair_part;
        }

        Ok(PairCtx {
            k,
            t,
            p: p.clone(),
            q: q.clone(),
            const_term,
            candidates,
            earlier_nbrs,
            q_degree: (0..q.n()).map(|b| q.degree(b)).collect(),
            suffix_bound,
        })
    }

    pub(crate) fn suffix_bound(&self, depth: usize) -> i64 {
        self.suffix_bound[depth]
    }

    fn side_a(&self) -> usize {
        self.p.n()
    }

    /// Gain of assigning `set` at `depth` given the rows assigned so far:
    /// the linear edge term, the internal edges of the set in `Q`, and the
    /// overlaps with earlier internal neighbors.
    fn delta(&self, depth: usize, set: &FeasibleSet, rows: &[u64]) -> i64 {
        let pair: i64 = self.earlier_nbrs[depth]
            .iter()
            .map(|&i| (rows[i] & set.mask).count_ones() as i64)
            .sum();
        self.t * set.size + set.q_edges + pair
    }

    /// Incremental second-inequality check for every `B`-vertex newly
    /// covered by assigning `mask` at `depth`.
    fn b_side_ok(&self, depth: usize, mask: u64, cols: &[u64]) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let grown = cols[b] | (1 << depth);
            let budget = (self.k - 1).saturating_sub(self.q_degree[b]);
            if induced_nu_capped(&self.p, grown, budget) > budget {
                return false;
            }
        }
        true
    }

    /// Deterministic greedy completion; its value seeds the incumbent.
    fn greedy_value(&self) -> i64 {
        let na = self.side_a();
        let mut rows = vec![0u64; na];
        let mut cols = vec![0u64; self.q.n()];
        let mut v = 0i64;
        for depth in 0..na {
            let mut best: Option<(i64, u64)> = None;
            for set in &self.candidates[depth] {
                if !self.b_side_ok(depth, set.mask, &cols) {
                    continue;
                }
                let gain = self.delta(depth, set, &rows);
                if best.is_none_or(|(g, _)| gain > g) {
                    best = Some((gain, set.mask));
                }
            }
            let (gain, mask) = best.expect("the empty set is always feasible");
            v += gain;
            rows[depth] = mask;
            let mut rest = mask;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                cols[b] |= 1 << depth;
            }
        }
        self.const_term + v
    }
}

/// All feasible neighborhoods for one matching budget, ordered by
/// descending direct gain (mask ascending on ties, for determinism). The
/// family is downward closed, so DFS with pruning enumerates it exactly.
fn feasible_sets(q: &Graph, budget: usize, t: i64) -> Vec<FeasibleSet> {
    let q_masks: Vec<u64> = (0..q.n())
        .map(|b| q.neighbors(b).fold(0u64, |m, u| m | (1 << u)))
        .collect();
    let mut out = Vec::new();
    let mut stack = vec![(0u64, 0usize)];
    while let Some((mask, next)) = stack.pop() {
        let mut q_edges = 0i64;
        let mut rest = mask;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            q_edges += (q_masks[b] & mask).count_ones() as i64;
        }
        out.push(FeasibleSet {
            mask,
            size: mask.count_ones() as i64,
            q_edges: q_edges / 2,
        });
        for b in next..q.n() {
            let cand = mask | (1 << b);
            if induced_nu_capped(q, cand, budget) <= budget {
                stack.push((cand, b + 1));
            }
        }
    }
    out.sort_by(|x, y| (t * y.size + y.q_edges, x.mask).cmp(&(t * x.size + x.q_edges, y.mask)));
    out
}

struct TaskOutcome {
    best: i64,
    optimizers: BTreeMap<CanonicalLabel, AdmissibleTriple>,
    nodes: u64,
    prunes: u64,
}

struct BranchState<'a> {
    ctx: &'a PairCtx,
    rows: Vec<u64>,
    cols: Vec<u64>,
    incumbent: i64,
    best: i64,
    optimizers: BTreeMap<CanonicalLabel, AdmissibleTriple>,
    nodes: u64,
    prunes: u64,
}

impl BranchState<'_> {
    fn leaf(&mut self, v_cur: i64) {
        let ctx = self.ctx;
        let total = ctx.const_term + v_cur;
        if total < self.best.max(self.incumbent) {
            return;
        }
        if total > self.best {
            self.best = total;
            self.incumbent = self.incumbent.max(total);
            self.optimizers.clear();
        }
        let overlay = Overlay::from_rows(ctx.side_a(), ctx.q.n(), &self.rows);
        let triple = AdmissibleTriple::new(ctx.p.clone(), ctx.q.clone(), overlay, ctx.k)
            .expect("search leaves satisfy both inequalities");
        let (label, canon) = canonical_triple(&triple);
        self.optimizers.entry(label).or_insert(canon);
    }

    fn descend(&mut self, depth: usize, v_cur: i64) {
        let ctx = self.ctx;
        if depth == ctx.side_a() {
            self.leaf(v_cur);
            return;
        }
        for i in 0..ctx.candidates[depth].len() {
            let set = ctx.candidates[depth][i];
            self.nodes += 1;
            let gain = ctx.delta(depth, &set, &self.rows);
            if ctx.const_term + v_cur + gain + ctx.suffix_bound(depth + 1) < self.incumbent {
                self.prunes += 1;
                continue;
            }
            if !ctx.b_side_ok(depth, set.mask, &self.cols) {
                self.prunes += 1;
                continue;
            }
            self.rows[depth] = set.mask;
            let mut rest = set.mask;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                self.cols[b] |= 1 << depth;
            }
            self.descend(depth + 1, v_cur + gain);
            let mut rest = set.mask;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                self.cols[b] &= !(1 << depth);
            }
            self.rows[depth] = 0;
        }
    }
}

/// Exact maximum of the objective over all admissible triples drawn from
/// `family`, with every optimizer reported in canonical form.
///
/// When the family is flagged non-exhaustive the result is too: the value
/// is then a certified lower bound over the listed members only.
pub fn cstar_search(k: usize, t: i64, family: &Family, options: &SearchOptions) -> Result<CStarResult> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("search requires k >= 3, got {k}")));
    }
    if t < 1 {
        return Err(Error::InvalidArgument(format!("t must be positive, got {t}")));
    }
    if family.k != k {
        return Err(Error::InvalidArgument(format!(
            "family generated for k={} used with k={k}",
            family.k
        )));
    }
    if family.members.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "family for k={k} has no members to search"
        )));
    }
    let start = Instant::now();

    // Ordered pairs, optionally halved by the swap symmetry: objective and
    // canonical labels are invariant under (P, Q, R) -> (Q, P, R transposed).
    let m = family.members.len();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if options.symmetry_pruning && family.members[i].label > family.members[j].label {
                continue;
            }
            pairs.push((i, j));
        }
    }

    let mut contexts = Vec::with_capacity(pairs.len());
    for &(i, j) in &pairs {
        contexts.push(PairCtx::new(
            &family.members[i].graph,
            &family.members[j].graph,
            k,
            t,
        )?);
    }

    // Deterministic incumbent seed shared by every branch; the greedy
    // completion is admissible, so this is a valid lower bound. Using the
    // same seed in every task keeps node counts independent of scheduling.
    let seed = contexts.iter().map(|c| c.greedy_value()).max().unwrap();

    // Top-level tasks: one per (pair, first-vertex candidate). With symmetry
    // pruning, first-vertex candidates are restricted to orbit minima under
    // Aut(Q); relabeling Q maps full assignments onto each other without
    // changing objective values or canonical labels.
    let mut tasks: Vec<(usize, usize)> = Vec::new();
    for (ci, ctx) in contexts.iter().enumerate() {
        let keep: Vec<usize> = if options.symmetry_pruning {
            let auts = automorphisms(&ctx.q);
            (0..ctx.candidates[0].len())
                .filter(|&i| {
                    let mask = ctx.candidates[0][i].mask;
                    auts.iter().all(|sigma| permute_mask(mask, sigma) >= mask)
                })
                .collect()
        } else {
            (0..ctx.candidates[0].len()).collect()
        };
        tasks.extend(keep.into_iter().map(|si| (ci, si)));
    }

    let run_task = |&(ci, si): &(usize, usize)| -> TaskOutcome {
        let ctx = &contexts[ci];
        let mut state = BranchState {
            ctx,
            rows: vec![0u64; ctx.side_a()],
            cols: vec![0u64; ctx.q.n()],
            incumbent: seed,
            best: i64::MIN,
            optimizers: BTreeMap::new(),
            nodes: 0,
            prunes: 0,
        };
        let set = ctx.candidates[0][si];
        state.nodes += 1;
        let gain = ctx.delta(0, &set, &state.rows);
        if ctx.const_term + gain + ctx.suffix_bound(1) < state.incumbent {
            state.prunes += 1;
        } else if !ctx.b_side_ok(0, set.mask, &state.cols) {
            state.prunes += 1;
        } else {
            state.rows[0] = set.mask;
            let mut rest = set.mask;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                state.cols[b] |= 1;
            }
            state.descend(1, gain);
        }
        TaskOutcome {
            best: state.best,
            optimizers: state.optimizers,
            nodes: state.nodes,
            prunes: state.prunes,
        }
    };

    let outcomes: Vec<TaskOutcome> = if options.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.threads)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
        pool.install(|| {
            use rayon::prelude::*;
            tasks.par_iter().map(run_task).collect()
        })
    } else {
        tasks.iter().map(run_task).collect()
    };

    // The empty overlay is always admissible, so the greedy seed exists and
    // at least one task reaches a leaf at the optimum.
    let mut value = seed;
    let mut nodes = 0u64;
    let mut prunes = 0u64;
    for o in &outcomes {
        value = value.max(o.best);
        nodes += o.nodes;
        prunes += o.prunes;
    }
    let mut merged: BTreeMap<CanonicalLabel, AdmissibleTriple> = BTreeMap::new();
    for o in outcomes {
        if o.best == value {
            for (label, triple) in o.optimizers {
                merged.entry(label).or_insert(triple);
            }
        }
    }
    debug_assert!(!merged.is_empty());

    Ok(CStarResult {
        k,
        t,
        value,
        exhaustive: family.exhaustive,
        optimizers: merged.into_values().collect(),
        stats: SearchStats {
            nodes,
            prunes,
            wall_ms: start.elapsed().as_millis(),
        },
    })
}

fn permute_mask(mask: u64, sigma: &[usize]) -> u64 {
    let mut out = 0u64;
    let mut rest = mask;
    while rest != 0 {
        let b = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out |= 1 << sigma[b];
    }
    out
}

/// Enumerates every admissible overlay for the pair `(p, q)` exactly once
/// and returns the count. No pruning beyond the two admissibility
/// inequalities themselves.
pub fn for_each_admissible(
    p: &Graph,
    q: &Graph,
    k: usize,
    mut visit: impl FnMut(&Overlay),
) -> Result<u64> {
    let ctx = PairCtx::new(p, q, k, 1)?;
    let mut rows = vec![0u64; ctx.side_a()];
    let mut cols = vec![0u64; q.n()];
    let mut count = 0u64;
    rec(&ctx, 0, &mut rows, &mut cols, &mut count, &mut visit);
    return Ok(count);

    fn rec(
        ctx: &PairCtx,
        depth: usize,
        rows: &mut Vec<u64>,
        cols: &mut Vec<u64>,
        count: &mut u64,
        visit: &mut impl FnMut(&Overlay),
    ) {
        if depth == ctx.side_a() {
            *count += 1;
            visit(&Overlay::from_rows(ctx.side_a(), ctx.q.n(), rows));
            return;
        }
        for i in 0..ctx.candidates[depth].len() {
            let set = ctx.candidates[depth][i];
            if !ctx.b_side_ok(depth, set.mask, cols) {
                continue;
            }
            rows[depth] = set.mask;
            let mut rest = set.mask;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                cols[b] |= 1 << depth;
            }
            rec(ctx, depth + 1, rows, cols, count, visit);
            let mut rest = set.mask;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                cols[b] &= !(1 << depth);
            }
            rows[depth] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::{is_admissible, objective, sample_admissible};
    use crate::families::enumerate_family;
    use rand::{Rng, SeedableRng};

    fn two_k3() -> Graph {
        Graph::complete(3).disjoint_union(&Graph::complete(3))
    }

    fn aligned_matchings() -> Overlay {
        let mut edges = Vec::new();
        for i in 0..3 {
            edges.extend_from_slice(&[(i, i), (i, 3 + i), (3 + i, i), (3 + i, 3 + i)]);
        }
        Overlay::new(6, 6, &edges).unwrap()
    }

    #[test]
    fn triple_label_invariant_under_relabeling_and_swap() {
        let g = two_k3();
        let r = aligned_matchings();
        let tr = AdmissibleTriple::new(g.clone(), g.clone(), r.clone(), 3).unwrap();
        let (l1, canon1) = canonical_triple(&tr);
        let (l2, canon2) = canonical_triple(&tr.swapped());
        assert_eq!(l1, l2);
        assert_eq!(canon1.overlay().edges(), canon2.overlay().edges());

        // Relabel Q by a rotation of its first triangle.
        let sigma = [1usize, 2, 0, 3, 4, 5];
        let q2 = relabel(&g, &sigma);
        let mut r2_edges = Vec::new();
        for (a, b) in r.edges() {
            r2_edges.push((a, sigma[b]));
        }
        let r2 = Overlay::new(6, 6, &r2_edges).unwrap();
        let tr2 = AdmissibleTriple::new(g.clone(), q2, r2, 3).unwrap();
        assert_eq!(canonical_triple(&tr2).0, l1);
    }

    #[test]
    fn triple_labels_distinguish_edge_counts() {
        let g = two_k3();
        let r11 = Overlay::new(6, 6, &[(0, 0)]).unwrap();
        let r12 = Overlay::new(6, 6, &[(0, 0), (1, 4)]).unwrap();
        let t1 = AdmissibleTriple::new(g.clone(), g.clone(), r11, 3).unwrap();
        let t2 = AdmissibleTriple::new(g.clone(), g.clone(), r12, 3).unwrap();
        assert_ne!(canonical_triple(&t1).0, canonical_triple(&t2).0);
    }

    #[test]
    fn search_k3_t1() {
        let family = enumerate_family(3).unwrap();
        let res = cstar_search(3, 1, &family, &SearchOptions::default()).unwrap();
        assert_eq!(res.value, -80);
        assert!(res.exhaustive);
        assert!(!res.optimizers.is_empty());
        for tr in &res.optimizers {
            assert_eq!(tr.overlay().edge_count(), 12);
            assert_eq!(tr.objective(1).unwrap(), -80);
        }
    }

    #[test]
    fn search_agrees_with_and_without_pruning_and_threads() {
        let family = enumerate_family(3).unwrap();
        let base = cstar_search(3, 1, &family, &SearchOptions::default()).unwrap();
        let plain = cstar_search(
            3,
            1,
            &family,
            &SearchOptions {
                symmetry_pruning: false,
                threads: 1,
            },
        )
        .unwrap();
        let parallel = cstar_search(
            3,
            1,
            &family,
            &SearchOptions {
                symmetry_pruning: true,
                threads: 4,
            },
        )
        .unwrap();
        assert_eq!(base.value, plain.value);
        assert_eq!(base.value, parallel.value);
        let labels = |r: &CStarResult| -> Vec<CanonicalLabel> {
            r.optimizers.iter().map(|t| canonical_triple(t).0).collect()
        };
        assert_eq!(labels(&base), labels(&plain));
        assert_eq!(labels(&base), labels(&parallel));
        // Thread count must not even perturb the statistics.
        assert_eq!(base.stats.nodes, parallel.stats.nodes);
        assert_eq!(base.stats.prunes, parallel.stats.prunes);
    }

    #[test]
    fn admissible_enumeration_counts_block_matchings() {
        // For the two-triangle pair the admissible overlays are exactly the
        // choices of one partial matching per triangle pair: 34^4 in total.
        let g = two_k3();
        let count = for_each_admissible(&g, &g, 3, |_| {}).unwrap();
        assert_eq!(count, 34u64.pow(4));
    }

    #[test]
    fn fuzz_admissible_never_beats_optimum() {
        let family = enumerate_family(3).unwrap();
        let res = cstar_search(3, 2, &family, &SearchOptions::default()).unwrap();
        let g = two_k3();
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let r = sample_admissible(&g, &g, 3, &mut rng).unwrap();
            assert!(objective(&g, &g, &r, 3, 2).unwrap() <= res.value);
        }
    }

    #[test]
    fn bound_dominates_every_completion() {
        // Replay random closed subtrees exhaustively: the bound at a prefix
        // must be at least the objective of every completion below it.
        let g = two_k3();
        let ctx = PairCtx::new(&g, &g, 3, 1).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        let mut audited = 0;
        while audited < 100 {
            let depth = rng.random_range(1..=5usize);
            let mut rows = vec![0u64; 6];
            let mut cols = vec![0u64; 6];
            let mut v = 0i64;
            let mut ok = true;
            for d in 0..depth {
                let pick = rng.random_range(0..ctx.candidates[d].len());
                let set = ctx.candidates[d][pick];
                if !ctx.b_side_ok(d, set.mask, &cols) {
                    ok = false;
                    break;
                }
                v += ctx.delta(d, &set, &rows);
                rows[d] = set.mask;
                let mut rest = set.mask;
                while rest != 0 {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    cols[b] |= 1 << d;
                }
            }
            if !ok {
                continue;
            }
            audited += 1;
            let bound = ctx.const_term + v + ctx.suffix_bound(depth);
            let mut best = i64::MIN;
            exhaust(&ctx, depth, &mut rows, &mut cols, v, &mut best);
            assert!(best > i64::MIN, "every prefix has a completion");
            assert!(bound >= best, "bound {bound} < completion {best}");
        }

        fn exhaust(
            ctx: &PairCtx,
            depth: usize,
            rows: &mut Vec<u64>,
            cols: &mut Vec<u64>,
            v: i64,
            best: &mut i64,
        ) {
            if depth == ctx.side_a() {
                *best = (*best).max(ctx.const_term + v);
                return;
            }
            for i in 0..ctx.candidates[depth].len() {
                let set = ctx.candidates[depth][i];
                if !ctx.b_side_ok(depth, set.mask, cols) {
                    continue;
                }
                let gain = ctx.delta(depth, &set, rows);
                rows[depth] = set.mask;
                let mut rest = set.mask;
                while rest != 0 {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    cols[b] |= 1 << depth;
                }
                exhaust(ctx, depth + 1, rows, cols, v + gain, best);
                let mut rest = set.mask;
                while rest != 0 {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    cols[b] &= !(1 << depth);
                }
                rows[depth] = 0;
            }
        }
    }

    #[test]
    fn spot_recheck_sampled_leaves_with_naive_evaluator() {
        // Every hundredth admissible overlay re-checked against a direct
        // evaluation of both inequalities from first principles.
        let g = two_k3();
        let mut idx = 0u64;
        for_each_admissible(&g, &g, 3, |r| {
            idx += 1;
            if idx % 100 != 0 {
                return;
            }
            for a in 0..6 {
                let nbrs: Vec<usize> = (0..6).filter(|&b| r.row(a) >> b & 1 == 1).collect();
                let nu = g.induced(&nbrs).unwrap().nu();
                assert!(g.degree(a) + nu <= 2);
            }
            for b in 0..6 {
                let nbrs: Vec<usize> = (0..6).filter(|&a| r.col(b) >> a & 1 == 1).collect();
                let nu = g.induced(&nbrs).unwrap().nu();
                assert!(g.degree(b) + nu <= 2);
            }
            assert!(is_admissible(&g, &g, r, 3).unwrap());
        })
        .unwrap();
    }

    #[test]
    fn certificate_round_trips_through_json() {
        let family = enumerate_family(3).unwrap();
        let res = cstar_search(3, 1, &family, &SearchOptions::default()).unwrap();
        let cert = res.certificate();
        let text = cert.to_json();
        let back = Certificate::from_json(&text).unwrap();
        assert_eq!(back.value, -80);
        assert_eq!(back.optimizers.len(), cert.optimizers.len());
        assert!(!text.contains("wall"));
    }
}
