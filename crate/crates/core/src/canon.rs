//! Canonical labeling by individualization and equitable refinement.
//!
//! The label is a complete isomorphism invariant: the lexicographically
//! minimum upper-triangle encoding of the adjacency matrix over all vertex
//! orderings reachable by refining an initial partition and individualizing
//! one cell member at a time. No automorphism pruning is performed, which
//! keeps the search exhaustive; graphs in this crate stay small enough
//! (about 20 vertices) that the full tree is cheap.
//!
//! A variant with a fixed initial partition handles vertex-colored graphs;
//! refinement never merges the given cells, so colors are respected.

use crate::graph::Graph;

/// A complete isomorphism invariant: equal labels iff isomorphic graphs
/// (with matching colors, for the partitioned variant).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalLabel(Vec<u8>);

impl CanonicalLabel {
    /// The raw label bytes.
    pub fn bytes(&self) -> &[u8] {
        &self.0
    }

    /// Hex rendering for manifests and debugging.
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl std::fmt::Debug for CanonicalLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CanonicalLabel({})", self.to_hex())
    }
}

/// Canonical label of an uncolored graph.
pub fn canonical_label(g: &Graph) -> CanonicalLabel {
    canonical_label_partitioned(g, &[(0..g.n()).collect()]).0
}

/// Canonical relabeling of `g`: the canonical form, the ordering used
/// (position -> original vertex), and the label.
pub fn canonical_form(g: &Graph) -> (Graph, Vec<usize>, CanonicalLabel) {
    let (label, order) = canonical_label_partitioned(g, &[(0..g.n()).collect()]);
    (relabel(g, &order), order, label)
}

/// Canonical label of a graph with an ordered initial partition; cells are
/// color classes and never mix. Returns the label and the winning ordering.
pub fn canonical_label_partitioned(g: &Graph, cells: &[Vec<usize>]) -> (CanonicalLabel, Vec<usize>) {
    canonical_label_budgeted(g, cells, u64::MAX).expect("unbounded search always completes")
}

/// Like [`canonical_label_partitioned`], but gives up and returns `None`
/// once the ordering search has visited `max_leaves` leaves. Useful where a
/// canonical label is an optimization (memoization keys) rather than a
/// requirement: highly symmetric graphs have factorially many orderings.
pub fn canonical_label_budgeted(
    g: &Graph,
    cells: &[Vec<usize>],
    max_leaves: u64,
) -> Option<(CanonicalLabel, Vec<usize>)> {
    let n = g.n();
    debug_assert_eq!(cells.iter().map(Vec::len).sum::<usize>(), n);
    if n == 0 {
        return Some((CanonicalLabel(encode_header(0, cells)), Vec::new()));
    }
    let mut search = Search {
        g,
        best_bits: None,
        best_order: Vec::new(),
        leaves_left: max_leaves,
    };
    let initial = refine(g, cells.to_vec());
    if !search.descend(initial) {
        return None;
    }
    let mut bytes = encode_header(n, cells);
    bytes.extend_from_slice(&search.best_bits.expect("n > 0 has at least one leaf"));
    Some((CanonicalLabel(bytes), search.best_order))
}

/// All automorphisms of `g`, as permutation vectors `sigma` with
/// `sigma[v]` the image of `v`. Exhaustive; intended for small graphs.
pub fn automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut search = Search {
        g,
        best_bits: None,
        best_order: Vec::new(),
        leaves_left: u64::MAX,
    };
    let mut leaves: Vec<Vec<usize>> = Vec::new();
    search.collect_min_leaves(refine(g, vec![(0..n).collect()]), &mut leaves);
    // Orderings with equal minimal encodings differ by an automorphism:
    // map reference positions onto each leaf's positions.
    let reference = &leaves[0];
    let mut auts = Vec::with_capacity(leaves.len());
    for order in &leaves {
        let mut sigma = vec![0usize; n];
        for i in 0..n {
            sigma[order[i]] = reference[i];
        }
        debug_assert!(is_automorphism(g, &sigma));
        auts.push(sigma);
    }
    auts
}

fn is_automorphism(g: &Graph, sigma: &[usize]) -> bool {
    (0..g.n()).all(|u| (0..g.n()).all(|v| u == v || g.has_edge(u, v) == g.has_edge(sigma[u], sigma[v])))
}

/// Applies an ordering (position -> original vertex) to produce the
/// relabeled graph.
pub fn relabel(g: &Graph, order: &[usize]) -> Graph {
    Graph::from_predicate(g.n(), |i, j| g.has_edge(order[i], order[j]))
}

fn encode_header(n: usize, cells: &[Vec<usize>]) -> Vec<u8> {
    let mut bytes = Vec::with_capacity(4 + cells.len() * 2);
    bytes.extend_from_slice(&(n as u16).to_be_bytes());
    bytes.push(cells.len() as u8);
    for c in cells {
        bytes.extend_from_slice(&(c.len() as u16).to_be_bytes());
    }
    bytes
}

struct Search<'a> {
    g: &'a Graph,
    best_bits: Option<Vec<u8>>,
    best_order: Vec<usize>,
    leaves_left: u64,
}

impl Search<'_> {
    /// Returns false if the leaf budget ran out.
    fn descend(&mut self, partition: Vec<Vec<usize>>) -> bool {
        match first_non_singleton(&partition) {
            None => {
                if self.leaves_left == 0 {
                    return false;
                }
                self.leaves_left -= 1;
                let order: Vec<usize> = partition.iter().map(|c| c[0]).collect();
                let bits = encode_order(self.g, &order);
                if self.best_bits.as_ref().is_none_or(|b| bits < *b) {
                    self.best_bits = Some(bits);
                    self.best_order = order;
                }
                true
            }
            Some(idx) => {
                for &v in &partition[idx] {
                    if !self.descend(refine(self.g, individualize(&partition, idx, v))) {
                        return false;
                    }
                }
                true
            }
        }
    }

    /// Like `descend`, but records every ordering achieving the minimum.
    fn collect_min_leaves(&mut self, partition: Vec<Vec<usize>>, leaves: &mut Vec<Vec<usize>>) {
        match first_non_singleton(&partition) {
            None => {
                let order: Vec<usize> = partition.iter().map(|c| c[0]).collect();
                let bits = encode_order(self.g, &order);
                match &self.best_bits {
                    Some(best) if *best < bits => {}
                    Some(best) if *best == bits => leaves.push(order),
                    _ => {
                        self.best_bits = Some(bits);
                        leaves.clear();
                        leaves.push(order);
                    }
                }
            }
            Some(idx) => {
                for &v in &partition[idx] {
                    self.collect_min_leaves(refine(self.g, individualize(&partition, idx, v)), leaves);
                }
            }
        }
    }
}

fn first_non_singleton(partition: &[Vec<usize>]) -> Option<usize> {
    partition.iter().position(|c| c.len() > 1)
}

fn individualize(partition: &[Vec<usize>], idx: usize, v: usize) -> Vec<Vec<usize>> {
    let mut next = Vec::with_capacity(partition.len() + 1);
    for (i, cell) in partition.iter().enumerate() {
        if i == idx {
            next.push(vec![v]);
            next.push(cell.iter().copied().filter(|&u| u != v).collect());
        } else {
            next.push(cell.clone());
        }
    }
    next
}

/// Equitable refinement: split cells by the multiset of neighbor counts into
/// every current cell until stable. Fragment order is by key, which is an
/// isomorphism-invariant choice.
fn refine(g: &Graph, mut partition: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let mut changed = false;
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(partition.len());
        for cell in &partition {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let key: Vec<u32> = partition
                        .iter()
                        .map(|c| c.iter().filter(|&&u| g.has_edge(v, u)).count() as u32)
                        .collect();
                    (key, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    if i - start != cell.len() {
                        changed = true;
                    }
                    start = i;
                }
            }
        }
        partition = next;
        if !changed {
            return partition;
        }
    }
}

/// Upper-triangle adjacency bits of the graph relabeled by `order`,
/// row-major, packed big-endian.
fn encode_order(g: &Graph, order: &[usize]) -> Vec<u8> {
    let n = order.len();
    let mut bytes = vec![0u8; (n * (n - 1) / 2).div_ceil(8).max(1)];
    let mut pos = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if g.has_edge(order[i], order[j]) {
                bytes[pos / 8] |= 0x80 >> (pos % 8);
            }
            pos += 1;
        }
    }
    bytes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label_of(n: usize, edges: &[(usize, usize)]) -> CanonicalLabel {
        canonical_label(&Graph::from_edges(n, edges).unwrap())
    }

    #[test]
    fn relabelings_of_k3_agree() {
        let a = label_of(3, &[(0, 1), (1, 2), (0, 2)]);
        let b = label_of(3, &[(2, 0), (0, 1), (2, 1)]);
        assert_eq!(a, b);
    }

    #[test]
    fn k3_differs_from_path() {
        assert_ne!(label_of(3, &[(0, 1), (1, 2), (0, 2)]), label_of(3, &[(0, 1), (1, 2)]));
    }

    #[test]
    fn cycle_relabelings_agree() {
        let c5 = Graph::cycle(5).unwrap();
        let shuffled = Graph::from_edges(5, &[(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(canonical_label(&c5), canonical_label(&shuffled));
        let p5 = Graph::path(5);
        assert_ne!(canonical_label(&c5), canonical_label(&p5));
    }

    #[test]
    fn canonical_form_is_isomorphic_relabeling() {
        let g = Graph::friendship(2).unwrap();
        let (canon, order, label) = canonical_form(&g);
        assert_eq!(canon.edge_count(), g.edge_count());
        assert_eq!(canon.triangle_count(), g.triangle_count());
        assert_eq!(canonical_label(&canon), label);
        let mut sorted = order.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..g.n()).collect::<Vec<_>>());
    }

    #[test]
    fn automorphism_group_sizes() {
        // |Aut(C5)| = 10, |Aut(K4)| = 24, |Aut(2K3)| = 72.
        assert_eq!(automorphisms(&Graph::cycle(5).unwrap()).len(), 10);
        assert_eq!(automorphisms(&Graph::complete(4)).len(), 24);
        let two_k3 = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert_eq!(automorphisms(&two_k3).len(), 72);
    }

    #[test]
    fn colored_labels_distinguish_sides() {
        // A path 0-1 with colors {0},{1} vs colors {1},{0}: the colored
        // labels must coincide only when colors map consistently.
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let (l1, _) = canonical_label_partitioned(&g, &[vec![0], vec![1]]);
        let (l2, _) = canonical_label_partitioned(&g, &[vec![1], vec![0]]);
        assert_eq!(l1, l2); // both sides symmetric here
        let h = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let (l3, _) = canonical_label_partitioned(&h, &[vec![1], vec![0, 2]]);
        let (l4, _) = canonical_label_partitioned(&h, &[vec![0], vec![1, 2]]);
        assert_ne!(l3, l4); // center vs leaf colored differently
    }

    #[test]
    fn eleven_classes_on_four_vertices() {
        // Brute-force reference: all 2^6 edge subsets, pairwise isomorphism
        // by permutation search, must give 11 classes; canonical labels must
        // give the same count.
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut graphs = Vec::new();
        for mask in 0u32..64 {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            graphs.push(Graph::from_edges(4, &edges).unwrap());
        }
        // Reference isomorphism test over all 24 permutations of 4 vertices.
        let perms: Vec<Vec<usize>> = {
            let mut out = Vec::new();
            let mut p = [0, 1, 2, 3];
            permute(&mut p, 0, &mut out);
            out
        };
        fn permute(p: &mut [usize; 4], k: usize, out: &mut Vec<Vec<usize>>) {
            if k == 4 {
                out.push(p.to_vec());
                return;
            }
            for i in k..4 {
                p.swap(k, i);
                permute(p, k + 1, out);
                p.swap(k, i);
            }
        }
        let iso = |a: &Graph, b: &Graph| {
            perms.iter().any(|perm| {
                (0..4).all(|u| (u + 1..4).all(|v| a.has_edge(u, v) == b.has_edge(perm[u], perm[v])))
            })
        };
        let mut reps: Vec<Graph> = Vec::new();
        for g in &graphs {
            if !reps.iter().any(|r| iso(r, g)) {
                reps.push(g.clone());
            }
        }
        assert_eq!(reps.len(), 11);
        let labels: std::collections::BTreeSet<_> = graphs.iter().map(canonical_label).collect();
        assert_eq!(labels.len(), 11);
        // The two routes agree graph by graph, not just in count.
        for a in &graphs {
            for b in &graphs {
                assert_eq!(iso(a, b), canonical_label(a) == canonical_label(b));
            }
        }
    }
}
