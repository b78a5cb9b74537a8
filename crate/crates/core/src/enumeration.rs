//! Isomorph-free generation of small graphs by canonical augmentation.
//!
//! A graph on `n` vertices is produced from the canonical representative of
//! `child - c`, where `c` is the vertex at the last canonical position, by
//! adding a vertex joined to one representative subset per orbit of the
//! parent's automorphism group. A child is kept only when the new vertex lies
//! in the automorphism orbit of `c`. Being `K_k`-free is hereditary, so the
//! clique filter prunes parents as well.

use alloc::vec;
use alloc::vec::Vec;

use crate::canon;
use crate::counting::contains_subgraph;
use crate::error::{Error, Result};
use crate::graph::{clique_within, SmallGraph};
use crate::graph6;

/// Hard cap for exhaustive generation.
pub const MAX_ENUMERATION_VERTICES: usize = 10;

/// Duplicate-free canonical graphs on a fixed vertex count, ordered by edge
/// count and then canonical code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphStream {
    vertex_count: usize,
    graphs: Vec<SmallGraph>,
}

impl GraphStream {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, SmallGraph> {
        self.graphs.iter()
    }

    pub fn as_slice(&self) -> &[SmallGraph] {
        &self.graphs
    }

    pub fn into_vec(self) -> Vec<SmallGraph> {
        self.graphs
    }

    /// Keep the members satisfying `pred`; order is preserved.
    pub fn filter(self, pred: impl FnMut(&SmallGraph) -> bool) -> Self {
        let mut pred = pred;
        GraphStream { vertex_count: self.vertex_count, graphs: self.graphs.into_iter().filter(|g| pred(g)).collect() }
    }
}

impl<'a> IntoIterator for &'a GraphStream {
    type Item = &'a SmallGraph;
    type IntoIter = core::slice::Iter<'a, SmallGraph>;

    fn into_iter(self) -> Self::IntoIter {
        self.graphs.iter()
    }
}

impl IntoIterator for GraphStream {
    type Item = SmallGraph;
    type IntoIter = alloc::vec::IntoIter<SmallGraph>;

    fn into_iter(self) -> Self::IntoIter {
        self.graphs.into_iter()
    }
}

/// Sort canonical graphs into stream order: edge count, then canonical code.
pub(crate) fn sort_stream(graphs: Vec<SmallGraph>) -> Vec<SmallGraph> {
    let mut keyed: Vec<(usize, alloc::string::String, SmallGraph)> =
        graphs.into_iter().map(|g| (g.edge_count(), graph6::encode(&g), g)).collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    keyed.into_iter().map(|(_, _, g)| g).collect()
}

fn check_cap(m: usize) -> Result<()> {
    if m > MAX_ENUMERATION_VERTICES {
        return Err(Error::UnsupportedSize { n: m, max: MAX_ENUMERATION_VERTICES });
    }
    Ok(())
}

/// One representative mask per orbit of the group generated by `generators`
/// acting on subsets of `0..n`.
fn subset_orbit_representatives(n: usize, generators: &[Vec<usize>]) -> Vec<u64> {
    let total = 1usize << n;
    let mut seen = vec![false; total];
    let mut reps = Vec::new();
    let image =
        |mask: u64, gen: &[usize]| -> u64 { crate::graph::iter_mask(mask).fold(0u64, |acc, v| acc | 1 << gen[v]) };
    let mut stack = Vec::new();
    for start in 0..total {
        if seen[start] {
            continue;
        }
        reps.push(start as u64);
        seen[start] = true;
        stack.push(start as u64);
        while let Some(s) = stack.pop() {
            for gen in generators {
                let t = image(s, gen) as usize;
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t as u64);
                }
            }
        }
    }
    reps
}

/// All canonical graphs on `m` vertices, optionally without `K_k`, unsorted.
fn generate(m: usize, forbidden_clique: Option<usize>) -> Result<Vec<SmallGraph>> {
    check_cap(m)?;
    let mut level = vec![SmallGraph::empty(0)?];
    if forbidden_clique == Some(0) {
        // every graph contains the empty clique
        return Ok(Vec::new());
    }
    for n in 1..=m {
        let mut next = Vec::new();
        for parent in &level {
            let pc = canon::canonize(parent)?;
            for s in subset_orbit_representatives(n - 1, &pc.generators) {
                if let Some(k) = forbidden_clique {
                    if clique_within(parent, s, k - 1) {
                        continue;
                    }
                }
                let mut child = parent.with_isolated(1)?;
                for v in crate::graph::iter_mask(s) {
                    child.add_edge(v, n - 1)?;
                }
                let cc = canon::canonize(&child)?;
                let last = cc.labeling[n - 1];
                let orbits = cc.orbits();
                if orbits[last] == orbits[n - 1] {
                    next.push(cc.canonical_graph(&child));
                }
            }
        }
        level = next;
    }
    Ok(level)
}

/// Every isomorphism class on `m` vertices exactly once (`m <= 10`; ten
/// vertices means about 12 million classes).
pub fn enumerate_graphs(m: usize) -> Result<GraphStream> {
    Ok(GraphStream { vertex_count: m, graphs: sort_stream(generate(m, None)?) })
}

/// Every `K_k`-free class on `m` vertices; `None` means no clique filter.
pub fn enumerate_kfree(m: usize, k: Option<usize>) -> Result<GraphStream> {
    Ok(GraphStream { vertex_count: m, graphs: sort_stream(generate(m, k)?) })
}

/// `K_k`-free classes on `m` vertices containing a copy of `h`.
pub fn enumerate_types(m: usize, k: Option<usize>, h: &SmallGraph) -> Result<GraphStream> {
    if h.vertex_count() > m {
        return Err(Error::InvalidArgument(alloc::format!("pattern has {} vertices, more than {m}", h.vertex_count())));
    }
    Ok(enumerate_kfree(m, k)?.filter(|t| contains_subgraph(h, t)))
}

/// True if no non-edge of `g` can be added without creating `K_k`.
pub fn is_kfree_maximal(g: &SmallGraph, k: usize) -> bool {
    let n = g.vertex_count();
    (0..n).all(|u| {
        (u + 1..n).all(|v| g.has_edge(u, v) || clique_within(g, g.neighbors(u) & g.neighbors(v), k.saturating_sub(2)))
    })
}

/// Edge-maximal `K_k`-free classes on `n` vertices.
pub fn enumerate_kfree_maximal(n: usize, k: usize) -> Result<GraphStream> {
    Ok(enumerate_kfree(n, Some(k))?.filter(|g| is_kfree_maximal(g, k)))
}
