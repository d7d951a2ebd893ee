//! Bipartite overlays between two internal graphs, the per-vertex
//! admissibility inequalities, and the integer objective.
//!
//! An overlay `R` connects the vertex set `A` of an internal graph `P` to
//! the vertex set `B` of an internal graph `Q`. The triple `(P, Q, R)` is
//! admissible for `k` when, at every vertex of either side, the internal
//! degree plus the matching number of the opposite graph induced on the
//! overlay neighborhood stays below `k`:
//!
//! ```text
//!   d_P(a) + nu(Q[N_R(a)]) <= k - 1   for every a in A,
//!   d_Q(b) + nu(P[N_R(b)]) <= k - 1   for every b in B.
//! ```
//!
//! The objective combines the overlay with the cross-triangle weight
//!
//! ```text
//!   tau(P, Q, R) = sum_{aa' in E(P)} |N_R(a) ∩ N_R(a')|
//!                + sum_{bb' in E(Q)} |N_R(b) ∩ N_R(b')|
//! ```
//!
//! into the integer
//!
//! ```text
//!   Phi(P, Q, R, t) = (2f - |A||B| + e(R)) t - f (|A| + |B|)
//!                   + tri(P) + tri(Q) + tau(P, Q, R)
//! ```
//!
//! where `f = f(k-1, k-1)` and `tri` counts triangles. Maximizing `Phi`
//! over all admissible triples is the job of the [`crate::search`] module.

use rand::Rng;

use crate::families::{chvatal_hanson, validate_member};
use crate::graph::Graph;
use crate::{Error, Result, Side};

/// Overlay sides are stored as 64-bit masks.
pub const MAX_OVERLAY_SIDE: usize = 64;

/// A bipartite edge set between `0..size_a` and `0..size_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlay {
    size_a: usize,
    size_b: usize,
    rows: Vec<u64>, // per a-vertex mask over B
    cols: Vec<u64>, // per b-vertex mask over A
}

impl Overlay {
    /// Builds an overlay from an explicit pair list. Pairs must be in range
    /// and distinct.
    pub fn new(size_a: usize, size_b: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if size_a > MAX_OVERLAY_SIDE || size_b > MAX_OVERLAY_SIDE {
            return Err(Error::BadOverlay(format!(
                "sides {size_a}x{size_b} exceed the supported {MAX_OVERLAY_SIDE}"
            )));
        }
        let mut overlay = Overlay {
            size_a,
            size_b,
            rows: vec![0; size_a],
            cols: vec![0; size_b],
        };
        for &(a, b) in edges {
            if a >= size_a || b >= size_b {
                return Err(Error::BadOverlay(format!(
                    "pair ({a},{b}) out of range for sides {size_a}x{size_b}"
                )));
            }
            if overlay.rows[a] >> b & 1 == 1 {
                return Err(Error::BadOverlay(format!("duplicate pair ({a},{b})")));
            }
            overlay.rows[a] |= 1 << b;
            overlay.cols[b] |= 1 << a;
        }
        Ok(overlay)
    }

    /// Builds an overlay directly from per-`a` neighborhood masks.
    pub(crate) fn from_rows(size_a: usize, size_b: usize, rows: &[u64]) -> Self {
        debug_assert_eq!(rows.len(), size_a);
        let mut cols = vec![0u64; size_b];
        for (a, &mask) in rows.iter().enumerate() {
            debug_assert!(size_b == 64 || mask >> size_b == 0);
            let mut rest = mask;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                cols[b] |= 1 << a;
            }
        }
        Overlay {
            size_a,
            size_b,
            rows: rows.to_vec(),
            cols,
        }
    }

    /// Size of the `A` side.
    pub fn size_a(&self) -> usize {
        self.size_a
    }

    /// Size of the `B` side.
    pub fn size_b(&self) -> usize {
        self.size_b
    }

    /// Number of overlay edges.
    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|m| m.count_ones() as usize).sum()
    }

    /// Neighborhood of an `A`-side vertex as a mask over `B`.
    pub fn row(&self, a: usize) -> u64 {
        self.rows[a]
    }

    /// Neighborhood of a `B`-side vertex as a mask over `A`.
    pub fn col(&self, b: usize) -> u64 {
        self.cols[b]
    }

    /// All pairs `(a, b)` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for a in 0..self.size_a {
            let mut rest = self.rows[a];
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                out.push((a, b));
            }
        }
        out
    }

    /// The transposed overlay (sides exchanged).
    pub fn transpose(&self) -> Overlay {
        Overlay {
            size_a: self.size_b,
            size_b: self.size_a,
            rows: self.cols.clone(),
            cols: self.rows.clone(),
        }
    }

    /// Whether the block between `a_set` and `b_set` (masks) is a matching:
    /// every vertex on either side has at most one neighbor in the block.
    pub fn block_is_matching(&self, a_set: u64, b_set: u64) -> bool {
        let mut rest = a_set;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (self.rows[a] & b_set).count_ones() > 1 {
                return false;
            }
        }
        let mut rest = b_set;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (self.cols[b] & a_set).count_ones() > 1 {
                return false;
            }
        }
        true
    }
}

fn check_dims(p: &Graph, q: &Graph, r: &Overlay) -> Result<()> {
    if r.size_a() != p.n() || r.size_b() != q.n() {
        return Err(Error::BadOverlay(format!(
            "overlay {}x{} does not match graphs on {} and {} vertices",
            r.size_a(),
            r.size_b(),
            p.n(),
            q.n()
        )));
    }
    Ok(())
}

fn subset(g: &Graph, mask: u64) -> Vec<usize> {
    let mut out = Vec::new();
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out.push(v);
    }
    debug_assert!(out.iter().all(|&v| v < g.n()));
    out
}

/// Matching number of `g` induced on the vertices of `mask`, computed with
/// early exit: the return value is `min(nu, cap + 1)`.
pub(crate) fn induced_nu_capped(g: &Graph, mask: u64, cap: usize) -> usize {
    let verts = subset(g, mask);
    if verts.len() < 2 {
        return 0;
    }
    let sub = g.induced(&verts).expect("mask vertices are in range");
    if sub.has_matching_of_size(cap + 1) {
        return cap + 1;
    }
    sub.nu()
}

/// A detected violation of one of the two admissibility inequalities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// The side the violating vertex lives on.
    pub side: Side,
    /// The violating vertex index within its side.
    pub vertex: usize,
    /// The left-hand value `degree + induced matching number` (the matching
    /// number is reported capped at its budget plus one).
    pub lhs: usize,
}

/// Checks both admissibility inequalities; `None` means the triple is
/// admissible, otherwise the first violating vertex is reported.
pub fn admissibility_violation(
    p: &Graph,
    q: &Graph,
    r: &Overlay,
    k: usize,
) -> Result<Option<Violation>> {
    check_dims(p, q, r)?;
    if k < 1 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    for a in 0..p.n() {
        let d = p.degree(a);
        let budget = (k - 1).saturating_sub(d);
        let nu = induced_nu_capped(q, r.row(a), budget);
        if d + nu > k - 1 {
            return Ok(Some(Violation {
                side: Side::A,
                vertex: a,
                lhs: d + nu,
            }));
        }
    }
    for b in 0..q.n() {
        let d = q.degree(b);
        let budget = (k - 1).saturating_sub(d);
        let nu = induced_nu_capped(p, r.col(b), budget);
        if d + nu > k - 1 {
            return Ok(Some(Violation {
                side: Side::B,
                vertex: b,
                lhs: d + nu,
            }));
        }
    }
    Ok(None)
}

/// Convenience wrapper around [`admissibility_violation`].
pub fn is_admissible(p: &Graph, q: &Graph, r: &Overlay, k: usize) -> Result<bool> {
    Ok(admissibility_violation(p, q, r, k)?.is_none())
}

/// The cross-triangle weight of the overlay: over every internal edge on
/// either side, the number of common overlay neighbors of its endpoints.
pub fn cross_triangles(p: &Graph, q: &Graph, r: &Overlay) -> Result<i64> {
    check_dims(p, q, r)?;
    let mut total: i64 = 0;
    for (a, a2) in p.edges() {
        total += (r.row(a) & r.row(a2)).count_ones() as i64;
    }
    for (b, b2) in q.edges() {
        total += (r.col(b) & r.col(b2)).count_ones() as i64;
    }
    Ok(total)
}

/// The integer objective of a triple at multiplicity `t`.
///
/// Validates that both graphs satisfy the internal-family constraints for
/// `k`; admissibility of the overlay is not required (the objective is a
/// plain formula and is evaluated on candidate overlays during search).
pub fn objective(p: &Graph, q: &Graph, r: &Overlay, k: usize, t: i64) -> Result<i64> {
    check_dims(p, q, r)?;
    validate_member(p, k).map_err(|e| Error::NotInFamily(format!("first graph: {e}")))?;
    validate_member(q, k).map_err(|e| Error::NotInFamily(format!("second graph: {e}")))?;
    if t < 1 {
        return Err(Error::InvalidArgument(format!("t must be positive, got {t}")));
    }
    let f = chvatal_hanson(k - 1, k - 1)?;
    let (na, nb) = (p.n() as i64, q.n() as i64);
    Ok((2 * f - na * nb + r.edge_count() as i64) * t - f * (na + nb)
        + p.triangle_count() as i64
        + q.triangle_count() as i64
        + cross_triangles(p, q, r)?)
}

/// A validated admissible triple: both graphs re-checked against the family
/// constraints, dimensions consistent, both inequalities verified.
#[derive(Clone, Debug)]
pub struct AdmissibleTriple {
    p: Graph,
    q: Graph,
    r: Overlay,
    k: usize,
}

impl AdmissibleTriple {
    /// Validates and wraps a triple.
    pub fn new(p: Graph, q: Graph, r: Overlay, k: usize) -> Result<Self> {
        check_dims(&p, &q, &r)?;
        validate_member(&p, k).map_err(|e| Error::NotInFamily(format!("first graph: {e}")))?;
        validate_member(&q, k).map_err(|e| Error::NotInFamily(format!("second graph: {e}")))?;
        if let Some(v) = admissibility_violation(&p, &q, &r, k)? {
            return Err(Error::NotAdmissible {
                side: v.side,
                vertex: v.vertex,
                lhs: v.lhs,
            });
        }
        Ok(AdmissibleTriple { p, q, r, k })
    }

    /// The first internal graph.
    pub fn p(&self) -> &Graph {
        &self.p
    }

    /// The second internal graph.
    pub fn q(&self) -> &Graph {
        &self.q
    }

    /// The overlay between them.
    pub fn overlay(&self) -> &Overlay {
        &self.r
    }

    /// The family parameter.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Objective value of this triple at multiplicity `t`.
    pub fn objective(&self, t: i64) -> Result<i64> {
        objective(&self.p, &self.q, &self.r, self.k, t)
    }

    /// The swapped triple (sides exchanged, overlay transposed). Always
    /// admissible and with the same objective.
    pub fn swapped(&self) -> AdmissibleTriple {
        AdmissibleTriple {
            p: self.q.clone(),
            q: self.p.clone(),
            r: self.r.transpose(),
            k: self.k,
        }
    }
}

/// Draws a random admissible overlay for `(p, q)`: candidate pairs are
/// visited in a random order and kept with probability 1/2, rejecting any
/// pair that would break either inequality. Subsets of admissible overlays
/// are admissible, so every admissible overlay is reachable this way, and
/// the result is re-checked as a whole before being returned.
pub fn sample_admissible<R: Rng + ?Sized>(
    p: &Graph,
    q: &Graph,
    k: usize,
    rng: &mut R,
) -> Result<Overlay> {
    validate_member(p, k)?;
    validate_member(q, k)?;
    if q.n() > MAX_OVERLAY_SIDE || p.n() > MAX_OVERLAY_SIDE {
        return Err(Error::BadOverlay("graphs too large to sample an overlay".into()));
    }
    let mut pairs: Vec<(usize, usize)> = (0..p.n())
        .flat_map(|a| (0..q.n()).map(move |b| (a, b)))
        .collect();
    for i in (1..pairs.len()).rev() {
        pairs.swap(i, rng.random_range(0..=i));
    }
    let mut rows = vec![0u64; p.n()];
    let mut cols = vec![0u64; q.n()];
    for (a, b) in pairs {
        if !rng.random_bool(0.5) {
            continue;
        }
        let row_budget = (k - 1).saturating_sub(p.degree(a));
        let col_budget = (k - 1).saturating_sub(q.degree(b));
        let new_row = rows[a] | (1 << b);
        let new_col = cols[b] | (1 << a);
        if induced_nu_capped(q, new_row, row_budget) <= row_budget
            && induced_nu_capped(p, new_col, col_budget) <= col_budget
        {
            rows[a] = new_row;
            cols[b] = new_col;
        }
    }
    let overlay = Overlay::from_rows(p.n(), q.n(), &rows);
    match admissibility_violation(p, q, &overlay, k)? {
        None => Ok(overlay),
        Some(v) => Err(Error::Internal(format!(
            "incrementally checked draw failed the final check at {v:?}"
        ))),
    }
}
