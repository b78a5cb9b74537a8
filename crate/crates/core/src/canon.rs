//! Canonical labeling and automorphism groups of graphs on at most 10 vertices.
//!
//! The search individualizes vertices of an ordered partition refined by
//! neighbour counts, starting from cells sorted by ascending degree. Among the
//! discrete leaves the smallest adjacency bit-string (graph6 bit order) wins.
//! Subtrees that are images of already explored ones under a known
//! automorphism fixing the current prefix are not re-explored, but their leaf
//! statistics are still accounted for, so the number of leaves attaining the
//! minimum equals `|Aut(g)|`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::{iter_mask, SmallGraph};
use crate::graph6;

/// Largest vertex count accepted by canonical labeling.
pub const MAX_CANON_VERTICES: usize = 10;

/// Isomorphism-class identifier: the graph6 text of the canonical relabeling.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        // built from graph6 output, which is ASCII
        core::str::from_utf8(&self.0).expect("canonical code is ASCII")
    }

    /// The canonical representative graph.
    pub fn graph(&self) -> SmallGraph {
        graph6::decode(self.as_str()).expect("canonical code is valid graph6")
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.as_str())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of a full canonical search.
#[derive(Clone, Debug)]
pub struct Canonization {
    pub code: CanonicalCode,
    /// `labeling[i]` is the original vertex placed at canonical position `i`.
    pub labeling: Vec<usize>,
    pub automorphism_count: u64,
    /// Generators of the automorphism group; `gen[v]` is the image of `v`.
    pub generators: Vec<Vec<usize>>,
}

impl Canonization {
    /// The canonical relabeling of the input graph.
    pub fn canonical_graph(&self, g: &SmallGraph) -> SmallGraph {
        g.permuted(&self.inverse_labeling())
    }

    /// `inverse[v]` is the canonical position of original vertex `v`.
    pub fn inverse_labeling(&self) -> Vec<usize> {
        let mut inv = vec![0; self.labeling.len()];
        for (pos, &v) in self.labeling.iter().enumerate() {
            inv[v] = pos;
        }
        inv
    }

    /// Orbit representative (smallest member) of every vertex.
    pub fn orbits(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.labeling.len());
        for gen in &self.generators {
            for (v, &w) in gen.iter().enumerate() {
                uf.union(v, w);
            }
        }
        (0..self.labeling.len()).map(|v| uf.find(v)).collect()
    }
}

pub fn canonize(g: &SmallGraph) -> Result<Canonization> {
    let n = g.vertex_count();
    if n > MAX_CANON_VERTICES {
        return Err(Error::UnsupportedSize { n, max: MAX_CANON_VERTICES });
    }
    let mut search = Search { g, best: None, generators: Vec::new() };
    let mut cells = vec![g.all_vertices()];
    if n == 0 {
        cells.clear();
    }
    refine(g, &mut cells);
    let mut prefix = Vec::new();
    let outcome = search.explore(cells, &mut prefix);
    let (_, labeling) = search.best.expect("search reaches at least one leaf");
    let code = CanonicalCode(graph6::encode(&g.permuted(&invert(&labeling))).into_bytes());
    Ok(Canonization { code, labeling, automorphism_count: outcome.count, generators: search.generators })
}

/// Canonical code of `g`: equal exactly for isomorphic graphs.
pub fn canonical_form(g: &SmallGraph) -> Result<CanonicalCode> {
    canonize(g).map(|c| c.code)
}

/// The canonical representative of `g`'s isomorphism class.
pub fn canonical_graph(g: &SmallGraph) -> Result<SmallGraph> {
    let c = canonize(g)?;
    Ok(c.canonical_graph(g))
}

/// Order of the automorphism group.
pub fn automorphism_count(g: &SmallGraph) -> Result<u64> {
    canonize(g).map(|c| c.automorphism_count)
}

pub fn are_isomorphic(a: &SmallGraph, b: &SmallGraph) -> Result<bool> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

fn invert(labeling: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; labeling.len()];
    for (pos, &v) in labeling.iter().enumerate() {
        inv[v] = pos;
    }
    inv
}

/// Split cells by neighbour counts into each splitter cell until stable.
/// Sub-cells are ordered by ascending count, which keeps the result a
/// function of the isomorphism class of (graph, ordered partition).
fn refine(g: &SmallGraph, cells: &mut Vec<u64>) {
    'outer: loop {
        for s in 0..cells.len() {
            let splitter = cells[s];
            for x in 0..cells.len() {
                let cell = cells[x];
                if cell.count_ones() < 2 {
                    continue;
                }
                let mut buckets: [u64; 65] = [0; 65];
                let mut distinct = 0;
                for v in iter_mask(cell) {
                    let c = (g.neighbors(v) & splitter).count_ones() as usize;
                    if buckets[c] == 0 {
                        distinct += 1;
                    }
                    buckets[c] |= 1 << v;
                }
                if distinct > 1 {
                    let parts: Vec<u64> = buckets.iter().copied().filter(|&b| b != 0).collect();
                    cells.splice(x..=x, parts);
                    continue 'outer;
                }
            }
        }
        break;
    }
}

/// Adjacency bits of the labeled graph in graph6 order, first bit most
/// significant, so numeric order is lexicographic order.
fn leaf_code(g: &SmallGraph, labeling: &[usize]) -> u64 {
    let mut code = 0u64;
    for j in 1..labeling.len() {
        let row = g.neighbors(labeling[j]);
        for &vi in &labeling[..j] {
            code = code << 1 | (row >> vi & 1);
        }
    }
    code
}

#[derive(Clone, Copy)]
struct Outcome {
    code: u64,
    count: u64,
}

struct Search<'a> {
    g: &'a SmallGraph,
    best: Option<(u64, Vec<usize>)>,
    generators: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn explore(&mut self, cells: Vec<u64>, prefix: &mut Vec<usize>) -> Outcome {
        let target = cells.iter().position(|c| c.count_ones() > 1);
        let Some(target) = target else {
            return self.leaf(&cells);
        };
        let cell = cells[target];
        let mut explored: Vec<(usize, Outcome)> = Vec::new();
        let mut result: Option<Outcome> = None;
        for w in iter_mask(cell) {
            let known = self.equivalent_explored(prefix, w, &explored);
            let outcome = match known {
                Some(o) => o,
                None => {
                    let mut child = cells.clone();
                    child.splice(target..=target, [1u64 << w, cell & !(1 << w)]);
                    refine(self.g, &mut child);
                    prefix.push(w);
                    let o = self.explore(child, prefix);
                    prefix.pop();
                    explored.push((w, o));
                    o
                }
            };
            result = Some(match result {
                None => outcome,
                Some(r) if outcome.code < r.code => outcome,
                Some(r) if outcome.code == r.code => Outcome { code: r.code, count: r.count + outcome.count },
                Some(r) => r,
            });
        }
        result.expect("target cell is nonempty")
    }

    fn leaf(&mut self, cells: &[u64]) -> Outcome {
        let labeling: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let code = leaf_code(self.g, &labeling);
        match &self.best {
            Some((best, best_lab)) if *best == code => {
                let mut gen = vec![0; labeling.len()];
                for (pos, &v) in labeling.iter().enumerate() {
                    gen[v] = best_lab[pos];
                }
                self.generators.push(gen);
            }
            Some((best, _)) if *best < code => {}
            _ => self.best = Some((code, labeling)),
        }
        Outcome { code, count: 1 }
    }

    /// An explored sibling mapped to `w` by the group generated by known
    /// automorphisms that fix `prefix` pointwise.
    fn equivalent_explored(&self, prefix: &[usize], w: usize, explored: &[(usize, Outcome)]) -> Option<Outcome> {
        if explored.is_empty() {
            return None;
        }
        let n = self.g.vertex_count();
        let mut uf = UnionFind::new(n);
        let mut any = false;
        for gen in &self.generators {
            if prefix.iter().all(|&p| gen[p] == p) {
                any = true;
                for (v, &img) in gen.iter().enumerate() {
                    uf.union(v, img);
                }
            }
        }
        if !any {
            return None;
        }
        let root = uf.find(w);
        explored.iter().find(|(u, _)| uf.find(*u) == root).map(|&(_, o)| o)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Keeps the smaller index as root.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie() -> SmallGraph {
        SmallGraph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap()
    }

    fn paw() -> SmallGraph {
        SmallGraph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap()
    }

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            out.push(p.clone());
            let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
            let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
            p.swap(i - 1, j);
            p[i..].reverse();
        }
        out
    }

    #[test]
    fn relabeled_paths_share_code() {
        let a = SmallGraph::path(4).unwrap();
        // 2-0-3-1
        let b = SmallGraph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&SmallGraph::cycle(4).unwrap()).unwrap());
    }

    #[test]
    fn paw_relabelings_give_one_code() {
        let g = paw();
        let code = canonical_form(&g).unwrap();
        for p in all_perms(4) {
            assert_eq!(canonical_form(&g.permuted(&p)).unwrap(), code);
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphism_count(&SmallGraph::path(4).unwrap()).unwrap(), 2);
        assert_eq!(automorphism_count(&SmallGraph::complete(4).unwrap()).unwrap(), 24);
        assert_eq!(automorphism_count(&SmallGraph::complete(10).unwrap()).unwrap(), 3_628_800);
        assert_eq!(automorphism_count(&SmallGraph::empty(10).unwrap()).unwrap(), 3_628_800);
        assert_eq!(automorphism_count(&SmallGraph::empty(0).unwrap()).unwrap(), 1);
    }

    #[test]
    fn bowtie_automorphisms_match_brute_force() {
        let g = bowtie();
        let brute = all_perms(5).into_iter().filter(|p| g.permuted(p) == g).count() as u64;
        assert_eq!(brute, 8);
        assert_eq!(automorphism_count(&g).unwrap(), brute);
    }

    #[test]
    fn petersen_group_order() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        let g = SmallGraph::from_edges(10, &edges).unwrap();
        let c = canonize(&g).unwrap();
        assert_eq!(c.automorphism_count, 120);
        assert!(c.orbits().iter().all(|&r| r == 0));
    }

    #[test]
    fn generators_are_automorphisms() {
        let g = bowtie();
        let c = canonize(&g).unwrap();
        assert!(!c.generators.is_empty());
        for gen in &c.generators {
            assert_eq!(g.permuted(gen), g);
        }
        // centre is fixed, the four wing vertices form one orbit
        assert_eq!(c.orbits(), vec![0, 1, 1, 1, 1]);
    }

    #[test]
    fn canonical_graph_is_fixed_point() {
        let g = paw();
        let cg = canonical_graph(&g).unwrap();
        assert_eq!(canonical_graph(&cg).unwrap(), cg);
        assert_eq!(canonical_form(&g).unwrap().graph(), cg);
    }

    #[test]
    fn oversized_input_rejected() {
        assert_eq!(
            canonical_form(&SmallGraph::empty(11).unwrap()),
            Err(Error::UnsupportedSize { n: 11, max: MAX_CANON_VERTICES })
        );
    }
}
