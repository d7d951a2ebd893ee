//! Maximum matching on general graphs via augmenting paths with blossom
//! contraction (the classical O(V^3) scheme).
//!
//! Neighborhood graphs of the constructions in this crate are non-bipartite,
//! so the general algorithm is required. An optional target lets callers stop
//! as soon as a matching of a given size is found, which is all the
//! friendship-freeness check needs.

use crate::graph::Graph;

const NONE: usize = usize::MAX;

/// Returns the mate array of a maximum matching, or of the first matching
/// reaching `target` edges when a target is given.
pub(crate) fn maximum_matching(g: &Graph, target: Option<usize>) -> Vec<Option<usize>> {
    let n = g.n();
    let goal = target.unwrap_or(n / 2);
    let mut mate = vec![NONE; n];
    let mut size = 0usize;

    // Greedy seed: match each free vertex with its first free neighbor.
    'seed: for v in 0..n {
        if mate[v] == NONE {
            for u in g.neighbors(v) {
                if mate[u] == NONE {
                    mate[v] = u;
                    mate[u] = v;
                    size += 1;
                    if size >= goal {
                        break 'seed;
                    }
                    break;
                }
            }
        }
    }

    if size < goal {
        let mut ctx = Ctx {
            g,
            parent: vec![NONE; n],
            base: (0..n).collect(),
            in_queue: vec![false; n],
            queue: Vec::with_capacity(n),
        };
        // If no augmenting path starts at a free vertex now, none will after
        // later augmentations, so one pass over free vertices suffices.
        for v in 0..n {
            if mate[v] == NONE {
                if let Some(end) = ctx.find_augmenting_path(v, &mate) {
                    augment(v, end, &mut mate, &ctx.parent);
                    size += 1;
                    if size >= goal {
                        break;
                    }
                }
            }
        }
    }

    mate.into_iter().map(|m| (m != NONE).then_some(m)).collect()
}

struct Ctx<'a> {
    g: &'a Graph,
    parent: Vec<usize>,
    base: Vec<usize>,
    in_queue: Vec<bool>,
    queue: Vec<usize>,
}

impl Ctx<'_> {
    /// BFS over the alternating tree rooted at `start`; returns the free
    /// endpoint of an augmenting path if one exists.
    fn find_augmenting_path(&mut self, start: usize, mate: &[usize]) -> Option<usize> {
        let n = self.g.n();
        for i in 0..n {
            self.parent[i] = NONE;
            self.base[i] = i;
            self.in_queue[i] = false;
        }
        self.queue.clear();
        self.queue.push(start);
        self.in_queue[start] = true;

        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            let nbrs: Vec<usize> = self.g.neighbors(v).collect();
            for u in nbrs {
                if self.base[v] == self.base[u] || mate[v] == u {
                    continue;
                }
                if u == start || (mate[u] != NONE && self.parent[mate[u]] != NONE) {
                    // Found an odd cycle: contract the blossom.
                    let b = self.lowest_common_ancestor(v, u, mate, start);
                    let mut in_blossom = vec![false; n];
                    self.mark_path(v, b, u, mate, &mut in_blossom);
                    self.mark_path(u, b, v, mate, &mut in_blossom);
                    for i in 0..n {
                        if in_blossom[self.base[i]] {
                            self.base[i] = b;
                            if !self.in_queue[i] {
                                self.in_queue[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[u] == NONE {
                    self.parent[u] = v;
                    if mate[u] == NONE {
                        return Some(u);
                    }
                    if !self.in_queue[mate[u]] {
                        self.in_queue[mate[u]] = true;
                        self.queue.push(mate[u]);
                    }
                }
            }
        }
        None
    }

    fn lowest_common_ancestor(&self, v: usize, u: usize, mate: &[usize], start: usize) -> usize {
        let mut on_path = vec![false; self.g.n()];
        let mut x = v;
        loop {
            x = self.base[x];
            on_path[x] = true;
            if x == self.base[start] || mate[x] == NONE {
                break;
            }
            x = self.parent[mate[x]];
        }
        let mut y = u;
        loop {
            y = self.base[y];
            if on_path[y] {
                return y;
            }
            y = self.parent[mate[y]];
        }
    }

    fn mark_path(
        &mut self,
        mut v: usize,
        b: usize,
        mut child: usize,
        mate: &[usize],
        in_blossom: &mut [bool],
    ) {
        while self.base[v] != b {
            in_blossom[self.base[v]] = true;
            in_blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }
}

fn augment(start: usize, mut v: usize, mate: &mut [usize], parent: &[usize]) {
    while v != start {
        let pv = parent[v];
        let next = mate[pv];
        mate[v] = pv;
        mate[pv] = v;
        if next == NONE {
            break;
        }
        v = next;
    }
}
