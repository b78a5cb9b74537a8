//! Exact copy counting: injective homomorphisms, copies, induced copies,
//! disjoint pattern pairs, and split-copy bookkeeping for a pattern built
//! from two cliques.
//!
//! A "copy" of `h` in `g` is a subgraph of `g` isomorphic to `h`, not
//! necessarily induced, so `count_copies(P3, K3) == 3`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use num_bigint::BigUint;

use crate::canon::{self, MAX_CANON_VERTICES};
use crate::combinatorics::next_permutation;
use crate::error::{Error, Result};
use crate::graph::{cliques_of_size, iter_mask, SmallGraph, VertexMask};

/// Placement order for the pattern: highest degree first, then greedily the
/// vertex with most already-placed neighbours.
struct Plan {
    order: Vec<usize>,
    /// For position `i`, mask of earlier positions adjacent to it in `h`.
    adj_prev: Vec<u64>,
    /// For position `i`, mask of earlier positions not adjacent to it in `h`.
    non_adj_prev: Vec<u64>,
}

impl Plan {
    fn new(h: &SmallGraph) -> Self {
        let n = h.vertex_count();
        let mut order: Vec<usize> = Vec::with_capacity(n);
        let mut placed = 0u64;
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| placed >> v & 1 == 0)
                .max_by_key(|&v| ((h.neighbors(v) & placed).count_ones(), h.degree(v), core::cmp::Reverse(v)))
                .expect("unplaced vertex exists");
            order.push(next);
            placed |= 1 << next;
        }
        let mut adj_prev = Vec::with_capacity(n);
        let mut non_adj_prev = Vec::with_capacity(n);
        for (i, &v) in order.iter().enumerate() {
            let mut a = 0u64;
            let mut na = 0u64;
            for (j, &u) in order[..i].iter().enumerate() {
                if h.has_edge(u, v) {
                    a |= 1 << j;
                } else {
                    na |= 1 << j;
                }
            }
            adj_prev.push(a);
            non_adj_prev.push(na);
        }
        Plan { order, adj_prev, non_adj_prev }
    }

    fn candidates(&self, g: &SmallGraph, induced: bool, pos: usize, image: &[usize], free: u64) -> u64 {
        let mut cand = free;
        for j in iter_mask(self.adj_prev[pos]) {
            cand &= g.neighbors(image[j]);
        }
        if induced {
            for j in iter_mask(self.non_adj_prev[pos]) {
                cand &= !g.neighbors(image[j]);
            }
        }
        cand
    }
}

fn count_maps(h: &SmallGraph, g: &SmallGraph, induced: bool, allowed: VertexMask) -> u128 {
    fn go(plan: &Plan, g: &SmallGraph, induced: bool, pos: usize, free: u64, image: &mut [usize]) -> u128 {
        let cand = plan.candidates(g, induced, pos, image, free);
        if pos + 1 == plan.order.len() {
            return cand.count_ones() as u128;
        }
        let mut total = 0;
        for v in iter_mask(cand) {
            image[pos] = v;
            total += go(plan, g, induced, pos + 1, free & !(1 << v), image);
        }
        total
    }
    let k = h.vertex_count();
    let free = allowed & g.all_vertices();
    if k == 0 {
        return 1;
    }
    if k > free.count_ones() as usize {
        return 0;
    }
    let plan = Plan::new(h);
    let mut image = [0usize; 64];
    go(&plan, g, induced, 0, free, &mut image)
}

/// Visit every injective edge-preserving map; the visitor receives the image
/// of each pattern vertex, indexed by pattern vertex.
fn for_each_map<B>(
    h: &SmallGraph,
    g: &SmallGraph,
    allowed: VertexMask,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    fn go<B>(
        plan: &Plan,
        g: &SmallGraph,
        pos: usize,
        free: u64,
        image: &mut [usize],
        by_vertex: &mut [usize],
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if pos == plan.order.len() {
            for (p, &v) in plan.order.iter().enumerate() {
                by_vertex[v] = image[p];
            }
            return visit(by_vertex);
        }
        let cand = plan.candidates(g, false, pos, image, free);
        for v in iter_mask(cand) {
            image[pos] = v;
            go(plan, g, pos + 1, free & !(1 << v), image, by_vertex, visit)?;
        }
        ControlFlow::Continue(())
    }
    let plan = Plan::new(h);
    let k = h.vertex_count();
    let mut image = alloc::vec![0usize; k];
    let mut by_vertex = alloc::vec![0usize; k];
    go(&plan, g, 0, allowed & g.all_vertices(), &mut image, &mut by_vertex, &mut visit)
}

/// Order of `Aut(h)`; falls back to counting self-maps above the canonical
/// labeling size limit.
pub(crate) fn aut_order(h: &SmallGraph) -> u128 {
    if h.vertex_count() <= MAX_CANON_VERTICES {
        canon::automorphism_count(h).expect("size checked") as u128
    } else {
        count_maps(h, h, false, h.all_vertices())
    }
}

/// Injective maps `V(h) -> V(g)` sending every edge of `h` to an edge of `g`.
pub fn count_injective_homs(h: &SmallGraph, g: &SmallGraph) -> BigUint {
    BigUint::from(count_maps(h, g, false, g.all_vertices()))
}

/// Number of (not necessarily induced) subgraphs of `g` isomorphic to `h`.
pub fn count_copies(h: &SmallGraph, g: &SmallGraph) -> BigUint {
    BigUint::from(count_maps(h, g, false, g.all_vertices()) / aut_order(h))
}

/// Number of vertex subsets of `g` inducing a graph isomorphic to `h`.
pub fn count_induced_copies(h: &SmallGraph, g: &SmallGraph) -> BigUint {
    BigUint::from(count_maps(h, g, true, g.all_vertices()) / aut_order(h))
}

/// True if `g` has a subgraph isomorphic to `h`.
pub fn contains_subgraph(h: &SmallGraph, g: &SmallGraph) -> bool {
    if h.vertex_count() > g.vertex_count() || h.edge_count() > g.edge_count() {
        return false;
    }
    for_each_map(h, g, g.all_vertices(), |_| ControlFlow::Break(())).is_break()
}

/// Ordered pairs `(H1, H2)` of vertex-disjoint copies of `g1` and `g2` in `g`.
pub fn count_disjoint_pairs(g1: &SmallGraph, g2: &SmallGraph, g: &SmallGraph) -> BigUint {
    let mut labeled: u128 = 0;
    let all = g.all_vertices();
    let _ = for_each_map::<()>(g1, g, all, |image| {
        let used = image.iter().fold(0u64, |acc, &v| acc | 1 << v);
        labeled += count_maps(g2, g, false, all & !used);
        ControlFlow::Continue(())
    });
    BigUint::from(labeled / (aut_order(g1) * aut_order(g2)))
}

/// A pattern whose vertex set splits into a clique `left` and a disjoint
/// clique `right`, with arbitrary edges between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPattern {
    host: SmallGraph,
    left: VertexMask,
    right: VertexMask,
}

impl SplitPattern {
    /// `left` is the vertex mask of the `K_l` part; the complement is the
    /// `K_m` part.
    pub fn new(host: SmallGraph, left: VertexMask) -> Result<Self> {
        let all = host.all_vertices();
        if left & !all != 0 {
            return Err(Error::InvalidSplit("left part references missing vertices"));
        }
        let right = all & !left;
        if left == 0 {
            return Err(Error::InvalidSplit("left part is empty"));
        }
        if right == 0 {
            return Err(Error::InvalidSplit("right part is empty"));
        }
        if !host.is_clique(left) {
            return Err(Error::InvalidSplit("left part is not a clique"));
        }
        if !host.is_clique(right) {
            return Err(Error::InvalidSplit("right part is not a clique"));
        }
        Ok(SplitPattern { host, left, right })
    }

    pub fn host(&self) -> &SmallGraph {
        &self.host
    }

    pub fn left_part(&self) -> VertexMask {
        self.left
    }

    pub fn right_part(&self) -> VertexMask {
        self.right
    }

    /// Size of the left clique.
    pub fn l(&self) -> usize {
        self.left.count_ones() as usize
    }

    /// Size of the right clique.
    pub fn m(&self) -> usize {
        self.right.count_ones() as usize
    }
}

/// Number of copies of the split host inside `g[s1 ∪ s2]` whose left clique
/// lands on `s1` and right clique on `s2`.
pub fn count_split_copies(split: &SplitPattern, s1: VertexMask, s2: VertexMask, g: &SmallGraph) -> Result<BigUint> {
    let all = g.all_vertices();
    if (s1 | s2) & !all != 0 {
        return Err(Error::InvalidPair("vertex outside the graph"));
    }
    if s1 & s2 != 0 {
        return Err(Error::InvalidPair("parts overlap"));
    }
    if s1.count_ones() as usize != split.l() || !g.is_clique(s1) {
        return Err(Error::InvalidPair("first part is not a clique of the left size"));
    }
    if s2.count_ones() as usize != split.m() || !g.is_clique(s2) {
        return Err(Error::InvalidPair("second part is not a clique of the right size"));
    }
    Ok(BigUint::from(split_copies_unchecked(split, s1, s2, g)))
}

fn split_copies_unchecked(split: &SplitPattern, s1: VertexMask, s2: VertexMask, g: &SmallGraph) -> usize {
    let host = &split.host;
    let left: Vec<usize> = iter_mask(split.left).collect();
    let right: Vec<usize> = iter_mask(split.right).collect();
    let targets_l: Vec<usize> = iter_mask(s1).collect();
    let targets_r: Vec<usize> = iter_mask(s2).collect();
    let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    let mut image = alloc::vec![0usize; host.vertex_count()];
    let mut pl: Vec<usize> = (0..left.len()).collect();
    loop {
        for (i, &v) in left.iter().enumerate() {
            image[v] = targets_l[pl[i]];
        }
        let mut pr: Vec<usize> = (0..right.len()).collect();
        loop {
            for (i, &v) in right.iter().enumerate() {
                image[v] = targets_r[pr[i]];
            }
            if host.edges().all(|(u, v)| g.has_edge(image[u], image[v])) {
                let mut edges: Vec<(usize, usize)> =
                    host.edges().map(|(u, v)| (image[u].min(image[v]), image[u].max(image[v]))).collect();
                edges.sort_unstable();
                seen.insert(edges);
            }
            if !next_permutation(&mut pr) {
                break;
            }
        }
        if !next_permutation(&mut pl) {
            break;
        }
    }
    seen.len()
}

/// Ordered pairs of disjoint cliques `(S1, S2)` of sizes `(l, m)` in `g`.
pub fn clique_pairs(g: &SmallGraph, l: usize, m: usize) -> Vec<(VertexMask, VertexMask)> {
    let ls = cliques_of_size(g, l);
    let ms = cliques_of_size(g, m);
    let mut out = Vec::new();
    for &a in &ls {
        for &b in &ms {
            if a & b == 0 {
                out.push((a, b));
            }
        }
    }
    out
}

/// Sum of split-copy counts over every clique pair of `g`; equals
/// `split_multiplicity(split) * count_copies(host, g)`.
pub fn split_sum(split: &SplitPattern, g: &SmallGraph) -> BigUint {
    let total: usize =
        clique_pairs(g, split.l(), split.m()).into_iter().map(|(a, b)| split_copies_unchecked(split, a, b, g)).sum();
    BigUint::from(total)
}

/// How many times each copy of the host is counted by [`split_sum`].
pub fn split_multiplicity(split: &SplitPattern) -> BigUint {
    split_sum(split, &split.host)
}
