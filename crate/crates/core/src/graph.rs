//! Labeled simple graphs on at most 64 vertices.
//!
//! Every vertex carries one `u64` neighbourhood mask, so most kernels in this
//! crate reduce to mask intersections and popcounts.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Bit set of vertex indices.
pub type VertexMask = u64;

/// A labeled simple graph on `0..=64` vertices.
///
/// Equality is labeled equality; use [`crate::canon`] for isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallGraph {
    adj: Vec<u64>,
}

impl SmallGraph {
    pub const MAX_VERTICES: usize = 64;

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > Self::MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: Self::MAX_VERTICES });
        }
        Ok(SmallGraph { adj: alloc::vec![0; n] })
    }

    /// Graph on `n` vertices with exactly the given edges. Vertices that
    /// appear in no edge stay isolated, which is how patterns get padded.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let all = g.all_vertices();
        for v in 0..n {
            g.adj[v] = all & !(1u64 << v);
        }
        Ok(g)
    }

    /// Path on `n` vertices (`n - 1` edges).
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Self::from_edges(n, &edges)
    }

    /// Matching with `l` edges on `2l` vertices.
    pub fn matching(l: usize) -> Result<Self> {
        let edges: Vec<_> = (0..l).map(|i| (2 * i, 2 * i + 1)).collect();
        Self::from_edges(2 * l, &edges)
    }

    /// Build a graph directly from neighbourhood masks. Masks must be
    /// symmetric and loop-free.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        if n > Self::MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: Self::MAX_VERTICES });
        }
        let all = mask_below(n);
        for (v, &row) in adj.iter().enumerate() {
            if row & !all != 0 {
                return Err(Error::VertexOutOfRange { vertex: (row & !all).trailing_zeros() as usize, n });
            }
            if row >> v & 1 == 1 {
                return Err(Error::Loop { vertex: v });
            }
            let mut rest = row;
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if adj[u] >> v & 1 == 0 {
                    return Err(Error::InvalidArgument(format!("adjacency not symmetric at {v}-{u}")));
                }
            }
        }
        Ok(SmallGraph { adj })
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Mask with one bit per vertex.
    #[inline]
    pub fn all_vertices(&self) -> VertexMask {
        mask_below(self.vertex_count())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexMask {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        let n = self.vertex_count();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(Error::Loop { vertex: u });
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
        Ok(())
    }

    /// Edges as `(u, v)` with `u < v`, ordered by `v` then `u`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |v| {
            let mut below = self.adj[v] & mask_below(v);
            core::iter::from_fn(move || {
                if below == 0 {
                    return None;
                }
                let u = below.trailing_zeros() as usize;
                below &= below - 1;
                Some((u, v))
            })
        })
    }

    /// Append `extra` isolated vertices.
    pub fn with_isolated(&self, extra: usize) -> Result<Self> {
        let n = self.vertex_count() + extra;
        if n > Self::MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: Self::MAX_VERTICES });
        }
        let mut adj = self.adj.clone();
        adj.resize(n, 0);
        Ok(SmallGraph { adj })
    }

    /// Pad with isolated vertices up to exactly `m` vertices.
    pub fn padded_to(&self, m: usize) -> Result<Self> {
        let n = self.vertex_count();
        if n > m {
            return Err(Error::InvalidArgument(format!("cannot pad a {n}-vertex graph to {m} vertices")));
        }
        self.with_isolated(m - n)
    }

    /// Vertex-disjoint union; `other`'s vertices come after `self`'s.
    pub fn disjoint_union(&self, other: &SmallGraph) -> Result<Self> {
        let shift = self.vertex_count();
        let mut g = self.with_isolated(other.vertex_count())?;
        for (u, v) in other.edges() {
            g.add_edge(u + shift, v + shift)?;
        }
        Ok(g)
    }

    /// Relabel: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.vertex_count());
        let mut adj = alloc::vec![0u64; self.vertex_count()];
        for (u, v) in self.edges() {
            adj[perm[u]] |= 1 << perm[v];
            adj[perm[v]] |= 1 << perm[u];
        }
        SmallGraph { adj }
    }

    /// Subgraph induced on `mask`, vertices renumbered in increasing order.
    pub fn induced(&self, mask: VertexMask) -> Self {
        let verts: Vec<usize> = iter_mask(mask & self.all_vertices()).collect();
        let adj = verts
            .iter()
            .map(|&v| {
                let row = self.adj[v];
                verts.iter().enumerate().filter(|&(_, &u)| row >> u & 1 == 1).fold(0u64, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        SmallGraph { adj }
    }

    pub fn complement(&self) -> Self {
        let all = self.all_vertices();
        let adj = self.adj.iter().enumerate().map(|(v, &row)| !row & all & !(1 << v)).collect();
        SmallGraph { adj }
    }

    /// True if the vertices in `mask` are pairwise adjacent.
    pub fn is_clique(&self, mask: VertexMask) -> bool {
        iter_mask(mask).all(|v| (mask & !(1 << v)) & !self.adj[v] == 0)
    }

    /// Vertex masks of the connected components, ordered by lowest vertex.
    pub fn components(&self) -> Vec<VertexMask> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for v in 0..self.vertex_count() {
            if seen >> v & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << v;
            let mut frontier = comp;
            while frontier != 0 {
                let next = iter_mask(frontier).fold(0, |acc, u| acc | self.adj[u]) & !comp;
                comp |= next;
                frontier = next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn isolated_vertices(&self) -> VertexMask {
        self.adj.iter().enumerate().filter(|(_, &row)| row == 0).fold(0, |acc, (v, _)| acc | 1 << v)
    }

    /// The graph with isolated vertices removed, and how many were removed.
    pub fn strip_isolated(&self) -> (Self, usize) {
        let iso = self.isolated_vertices();
        (self.induced(self.all_vertices() & !iso), iso.count_ones() as usize)
    }

    pub fn is_complete(&self) -> bool {
        self.is_clique(self.all_vertices())
    }

    /// Text form `n; u-v,u-v,...`.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{};", self.vertex_count());
        for (i, (u, v)) in self.edges().enumerate() {
            s.push_str(if i == 0 { " " } else { "," });
            s.push_str(&format!("{u}-{v}"));
        }
        s
    }

    /// Parse the `n; u-v,u-v,...` edge-list form.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let (head, body) = text
            .trim()
            .split_once(';')
            .ok_or_else(|| Error::EdgeList(String::from("missing ';' after vertex count")))?;
        let n: usize =
            head.trim().parse().map_err(|_| Error::EdgeList(format!("bad vertex count {:?}", head.trim())))?;
        let mut edges = Vec::new();
        for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (a, b) = item.split_once('-').ok_or_else(|| Error::EdgeList(format!("bad edge {item:?}")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::EdgeList(format!("bad vertex {:?} in edge {item:?}", s.trim())))
            };
            edges.push((parse(a)?, parse(b)?));
        }
        Self::from_edges(n, &edges)
    }
}

impl fmt::Debug for SmallGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SmallGraph({})", self.to_edge_list())
    }
}

impl fmt::Display for SmallGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

impl FromStr for SmallGraph {
    type Err = Error;

    /// Accepts either the edge-list form (contains `;`) or graph6.
    fn from_str(s: &str) -> Result<Self> {
        if s.contains(';') {
            Self::parse_edge_list(s)
        } else {
            crate::graph6::decode(s.trim())
        }
    }
}

/// Mask with the low `n` bits set.
#[inline]
pub fn mask_below(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterate the set bits of a mask in increasing order.
#[inline]
pub fn iter_mask(mut mask: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let v = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(v)
    })
}

/// True if `g` has `r` pairwise adjacent vertices.
pub fn contains_clique(g: &SmallGraph, r: usize) -> bool {
    clique_within(g, g.all_vertices(), r)
}

/// True if the vertices in `candidates` contain an `r`-clique of `g`.
pub fn clique_within(g: &SmallGraph, candidates: VertexMask, r: usize) -> bool {
    if r == 0 {
        return true;
    }
    if (candidates.count_ones() as usize) < r {
        return false;
    }
    let mut rest = candidates;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        // only extend with higher-indexed vertices so each clique is tried once
        if clique_within(g, rest & g.neighbors(v), r - 1) {
            return true;
        }
    }
    false
}

/// All `r`-cliques of `g`, as vertex masks in increasing numeric order of
/// their lowest vertices.
pub fn cliques_of_size(g: &SmallGraph, r: usize) -> Vec<VertexMask> {
    fn go(g: &SmallGraph, cand: u64, acc: u64, r: usize, out: &mut Vec<u64>) {
        if r == 0 {
            out.push(acc);
            return;
        }
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            go(g, rest & g.neighbors(v), acc | 1 << v, r - 1, out);
        }
    }
    let mut out = Vec::new();
    go(g, g.all_vertices(), 0, r, &mut out);
    out
}
