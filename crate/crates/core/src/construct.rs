//! Extremal constructions and closed-form evaluators.
//!
//! `build_hn` realizes the near-complete-bipartite construction: a balanced
//! partition `X ∪ Y` of `n` vertices with the first internal graph planted
//! on `A ⊆ X` and the second on `B ⊆ Y`, all other vertices internally
//! isolated, and the cross edges `((X × Y) \ (A × B)) ∪ R`. Its edge and
//! triangle counts have exact closed forms, and the builder refuses to emit
//! a report unless the direct counts match them.
//!
//! `build_extremal` joins a clique of size `t` to the construction on the
//! remaining `n - t` vertices. The formula evaluators cover the resulting
//! triangle-count optimum, the single-copy baselines, and the
//! matching-number edge bound.

use serde::{Deserialize, Serialize};

use crate::admissible::AdmissibleTriple;
use crate::families::chvatal_hanson;
use crate::graph::Graph;
use crate::{Error, Result};

/// The built construction together with both count routes and the placement.
#[derive(Clone, Debug)]
pub struct ConstructionReport {
    /// The constructed graph.
    pub graph: Graph,
    /// Closed-form edge count `|X||Y| - |A||B| + e(R) + 2f`.
    pub e_closed: i64,
    /// Edge count read off the built graph.
    pub e_direct: i64,
    /// Closed-form triangle count `f (n - |A| - |B|) + tri(P) + tri(Q) + tau`.
    pub tri_closed: i64,
    /// Triangle count read off the built graph.
    pub tri_direct: i64,
    /// Vertices of the first side.
    pub x: Vec<usize>,
    /// Vertices of the second side.
    pub y: Vec<usize>,
    /// Vertices hosting the first internal graph (a prefix of `x`).
    pub a: Vec<usize>,
    /// Vertices hosting the second internal graph (a prefix of `y`).
    pub b: Vec<usize>,
}

/// Builds the construction on `n` vertices with the default balanced split
/// `|X| = ceil(n/2)`.
///
/// Preconditions: `n >= |A| + |B| + 2` and both sides large enough to host
/// their internal graph.
pub fn build_hn(tr: &AdmissibleTriple, n: usize) -> Result<ConstructionReport> {
    build_hn_with_split(tr, n, n.div_ceil(2))
}

/// Builds the construction with an explicit first-side size. The counts are
/// split-invariant as long as the split is balanced; exposing the choice
/// lets tests build both placements for odd `n`.
pub fn build_hn_with_split(
    tr: &AdmissibleTriple,
    n: usize,
    x_size: usize,
) -> Result<ConstructionReport> {
    let (na, nb) = (tr.p().n(), tr.q().n());
    if n < na + nb + 2 {
        return Err(Error::InvalidArgument(format!(
            "n = {n} too small: need at least |A| + |B| + 2 = {}",
            na + nb + 2
        )));
    }
    if x_size > n || x_size.abs_diff(n - x_size) > 1 {
        return Err(Error::InvalidArgument(format!("split {x_size} of {n} is not balanced")));
    }
    let y_size = n - x_size;
    if x_size < na || y_size < nb {
        return Err(Error::InvalidArgument(format!(
            "split {x_size}+{y_size} cannot host internal graphs of sizes {na} and {nb}"
        )));
    }

    // Side X occupies 0..x_size with A as its prefix; side Y the rest, with
    // B as its prefix.
    let r = tr.overlay();
    let g = Graph::from_predicate(n, |u, v| {
        let (u, v) = (u.min(v), u.max(v));
        if v < x_size {
            u < na && v < na && tr.p().has_edge(u, v)
        } else if u >= x_size {
            let (bu, bv) = (u - x_size, v - x_size);
            bu < nb && bv < nb && tr.q().has_edge(bu, bv)
        } else {
            let b = v - x_size;
            if u < na && b < nb {
                r.row(u) >> b & 1 == 1
            } else {
                true
            }
        }
    });

    let f = chvatal_hanson(tr.k() - 1, tr.k() - 1)?;
    let tau = crate::admissible::cross_triangles(tr.p(), tr.q(), r)?;
    let e_closed = (x_size * y_size) as i64 - (na * nb) as i64 + r.edge_count() as i64 + 2 * f;
    let tri_closed = f * (n - na - nb) as i64
        + tr.p().triangle_count() as i64
        + tr.q().triangle_count() as i64
        + tau;
    let e_direct = g.edge_count() as i64;
    let tri_direct = g.triangle_count() as i64;
    if e_direct != e_closed || tri_direct != tri_closed {
        return Err(Error::Internal(format!(
            "construction counts disagree: edges {e_direct} vs {e_closed}, triangles {tri_direct} vs {tri_closed}"
        )));
    }
    Ok(ConstructionReport {
        graph: g,
        e_closed,
        e_direct,
        tri_closed,
        tri_direct,
        x: (0..x_size).collect(),
        y: (x_size..n).collect(),
        a: (0..na).collect(),
        b: (x_size..x_size + nb).collect(),
    })
}

/// The extremal candidate on `n` vertices: a `t`-clique joined to the
/// construction on the remaining `n - t` vertices. Vertices `0..t` form the
/// clique.
pub fn build_extremal(tr: &AdmissibleTriple, t: i64, n: usize) -> Result<Graph> {
    if t < 1 {
        return Err(Error::InvalidArgument(format!("t must be at least 1, got {t}")));
    }
    if (n as i64) <= t {
        return Err(Error::InvalidArgument(format!("n = {n} must exceed t = {t}")));
    }
    let inner = build_hn(tr, n - t as usize)?;
    Ok(Graph::complete(t as usize).join(&inner.graph))
}

/// Inputs to the closed-form evaluators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormulaParams {
    /// Family parameter, at least 3.
    pub k: usize,
    /// Multiplicity parameter, at least 1.
    pub t: i64,
    /// Number of vertices.
    pub n: i64,
    /// Optional per-copy parameters for the mixed-union evaluator;
    /// nonincreasing, length `t + 1`, minimum at least 3.
    pub ell: Option<Vec<i64>>,
    /// The constant computed by the search (or replayed from a
    /// certificate). Required by the evaluators that include it.
    pub cstar: Option<i64>,
}

/// A formula value plus a flag marking evaluations below the asymptotic
/// range the statements are proved for. The arithmetic is exact everywhere;
/// only the extremal interpretation needs large `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Evaluation {
    /// Exact integer value of the right-hand side.
    pub value: i64,
    /// True when `n` is below the documented threshold.
    pub range_warning: bool,
}

impl FormulaParams {
    fn check_basic(&self) -> Result<()> {
        if self.k < 3 {
            return Err(Error::InvalidArgument(format!("k must be at least 3, got {}", self.k)));
        }
        if self.t < 1 {
            return Err(Error::InvalidArgument(format!("t must be at least 1, got {}", self.t)));
        }
        Ok(())
    }

    fn need_cstar(&self) -> Result<i64> {
        self.cstar
            .ok_or_else(|| Error::InvalidArgument("cstar value required but not supplied".into()))
    }
}

fn binom2(x: i64) -> i64 {
    if x < 2 {
        0
    } else {
        x * (x - 1) / 2
    }
}

fn binom3(x: i64) -> i64 {
    if x < 3 {
        0
    } else {
        x * (x - 1) * (x - 2) / 6
    }
}

/// Default asymptotic threshold `4k^3` used for range warnings.
pub fn asymptotic_threshold(k: usize) -> i64 {
    4 * (k as i64).pow(3)
}

/// Maximum triangle count over `n`-vertex graphs without `t + 1` disjoint
/// friendship copies:
/// `binom(t,3) + (n-t) binom(t,2) + t floor((n-t)^2/4) + f(k-1,k-1)(n-t) + c*`.
pub fn ex_count(p: &FormulaParams) -> Result<Evaluation> {
    p.check_basic()?;
    let c = p.need_cstar()?;
    if p.n < p.t {
        return Err(Error::InvalidArgument(format!(
            "n = {} must be at least t = {}",
            p.n, p.t
        )));
    }
    let f = chvatal_hanson(p.k - 1, p.k - 1)?;
    let m = p.n - p.t;
    let value = binom3(p.t) + m * binom2(p.t) + p.t * (m * m / 4) + f * m + c;
    Ok(Evaluation {
        value,
        range_warning: p.n < asymptotic_threshold(p.k),
    })
}

/// The weighted maximum `t * edges + triangles` over friendship-free graphs
/// on `n` vertices: `t floor(n^2/4) + f(k-1,k-1) n + c*`.
pub fn g_value(p: &FormulaParams) -> Result<Evaluation> {
    p.check_basic()?;
    let c = p.need_cstar()?;
    if p.n < 0 {
        return Err(Error::InvalidArgument(format!("n must be nonnegative, got {}", p.n)));
    }
    let f = chvatal_hanson(p.k - 1, p.k - 1)?;
    let value = p.t * (p.n * p.n / 4) + f * p.n + c;
    Ok(Evaluation {
        value,
        range_warning: p.n < asymptotic_threshold(p.k),
    })
}

/// Maximum triangle count over `n`-vertex graphs with no single friendship
/// copy (the no-disjoint-copies baseline, proved for `n >= 4k^3`):
/// odd `k`: `(n-2k) k(k-1) + 2 binom(k,3)`;
/// even `k`: `(n-2k+1) k(2k-3)/2 + 2 binom(k-1,3) + (k/2 - 1)^2`.
pub fn zhu_chen_formula(k: usize, n: i64) -> Result<Evaluation> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("k must be at least 3, got {k}")));
    }
    let kk = k as i64;
    let value = if k % 2 == 1 {
        (n - 2 * kk) * kk * (kk - 1) + 2 * binom3(kk)
    } else {
        (n - 2 * kk + 1) * kk * (2 * kk - 3) / 2 + 2 * binom3(kk - 1) + (kk / 2 - 1).pow(2)
    };
    Ok(Evaluation {
        value,
        range_warning: n < asymptotic_threshold(k),
    })
}

/// Maximum edge count over `n`-vertex graphs with no single friendship copy
/// (proved for `n >= 50k^2`): `floor(n^2/4) + f(k-1,k-1)`.
pub fn edge_extremal(k: usize, n: i64) -> Result<Evaluation> {
    if k < 1 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if n < 0 {
        return Err(Error::InvalidArgument("n must be nonnegative".into()));
    }
    let f = if k == 1 { 0 } else { chvatal_hanson(k - 1, k - 1)? };
    Ok(Evaluation {
        value: n * n / 4 + f,
        range_warning: n < 50 * (k as i64).pow(2),
    })
}

/// Edge bound for graphs with matching number below `k`:
/// `max(binom(2k-1, 2), binom(k-1, 2) + (k-1)(n-k+1))`.
pub fn erdos_gallai_bound(k: usize, n: i64) -> Result<i64> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if n < 0 {
        return Err(Error::InvalidArgument("n must be nonnegative".into()));
    }
    let kk = k as i64;
    Ok(binom2(2 * kk - 1).max(binom2(kk - 1) + (kk - 1) * (n - kk + 1)))
}

/// Mixed-union evaluator: for nonincreasing copy sizes
/// `ell_1 >= ... >= ell_{t+1} >= 3`, the maximum depends only on the
/// smallest one, and the value equals [`ex_count`] with `k := ell_{t+1}`
/// (with `cstar` the constant for that `k`).
pub fn mixed_ex_count(p: &FormulaParams) -> Result<Evaluation> {
    let ell = p
        .ell
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("mixed evaluator requires the ell list".into()))?;
    if ell.len() as i64 != p.t + 1 {
        return Err(Error::InvalidArgument(format!(
            "ell list has {} entries, need t + 1 = {}",
            ell.len(),
            p.t + 1
        )));
    }
    if ell.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidArgument("ell list must be nonincreasing".into()));
    }
    if *ell.last().unwrap() < 3 {
        return Err(Error::InvalidArgument("all ell values must be at least 3".into()));
    }
    let k_min = *ell.last().unwrap() as usize;
    ex_count(&FormulaParams {
        k: k_min,
        t: p.t,
        n: p.n,
        ell: None,
        cstar: p.cstar,
    })
}
