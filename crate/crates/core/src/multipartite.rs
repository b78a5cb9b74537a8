//! Complete multipartite graphs handled by part sizes, without realizing
//! the graph: closed-form copy counts, induced type censuses, Zykov's bound
//! and the single-vertex balancing comparison.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::canon;
use crate::combinatorics::{binomial, factorial, falling, injective_weighted_sum, integer_partitions};
use crate::counting::aut_order;
use crate::enumeration::sort_stream;
use crate::error::{Error, Result};
use crate::graph::SmallGraph;

/// Part sizes of a complete multipartite graph, non-increasing, no zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PartVector(Vec<u64>);

impl PartVector {
    /// Canonicalize: drop empty parts and sort non-increasing.
    pub fn new(mut sizes: Vec<u64>) -> Self {
        sizes.retain(|&s| s > 0);
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        PartVector(sizes)
    }

    pub fn sizes(&self) -> &[u64] {
        &self.0
    }

    pub fn part_count(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for PartVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| format!("{s}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for PartVector {
    type Err = Error;

    /// Comma-separated sizes, e.g. `3,2,2`.
    fn from_str(s: &str) -> Result<Self> {
        let sizes = s
            .split(',')
            .map(|t| {
                t.trim().parse::<u64>().map_err(|_| Error::InvalidPartVector(format!("bad part size {:?}", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        let p = PartVector::new(sizes);
        if p.part_count() == 0 {
            return Err(Error::InvalidPartVector(String::from("no nonempty parts")));
        }
        Ok(p)
    }
}

/// Turán graph part sizes: `r` parts as equal as possible summing to `n`.
/// Zero-size parts are dropped when `n < r`.
pub fn turan_parts(r: usize, n: u64) -> Result<PartVector> {
    if r == 0 {
        return Err(Error::InvalidArgument(String::from("Turán graph needs at least one part")));
    }
    let r64 = r as u64;
    let (q, rem) = (n / r64, n % r64);
    Ok(PartVector::new((0..r64).map(|i| q + u64::from(i < rem)).collect()))
}

/// The complete multipartite graph, vertices grouped by part in order.
pub fn realize_multipartite(p: &PartVector) -> Result<SmallGraph> {
    realize_sizes(p.sizes())
}

fn realize_sizes(sizes: &[u64]) -> Result<SmallGraph> {
    let n = sizes.iter().sum::<u64>() as usize;
    if n > SmallGraph::MAX_VERTICES {
        return Err(Error::TooManyVertices { n, max: SmallGraph::MAX_VERTICES });
    }
    let mut part_of = Vec::with_capacity(n);
    for (i, &s) in sizes.iter().enumerate() {
        part_of.extend(core::iter::repeat_n(i, s as usize));
    }
    let mut g = SmallGraph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Partitions of `V(h)` into independent sets, reported as multisets of block
/// sizes (sorted non-increasing) with multiplicities.
fn independent_block_profiles(h: &SmallGraph, max_blocks: usize) -> Vec<(Vec<usize>, u64)> {
    fn go(h: &SmallGraph, v: usize, blocks: &mut Vec<u64>, max_blocks: usize, out: &mut Vec<(Vec<usize>, u64)>) {
        if v == h.vertex_count() {
            let mut sizes: Vec<usize> = blocks.iter().map(|b| b.count_ones() as usize).collect();
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            match out.iter_mut().find(|(s, _)| *s == sizes) {
                Some((_, c)) => *c += 1,
                None => out.push((sizes, 1)),
            }
            return;
        }
        let nbrs = h.neighbors(v);
        for i in 0..blocks.len() {
            if blocks[i] & nbrs == 0 {
                blocks[i] |= 1 << v;
                go(h, v + 1, blocks, max_blocks, out);
                blocks[i] &= !(1 << v);
            }
        }
        if blocks.len() < max_blocks {
            blocks.push(1 << v);
            go(h, v + 1, blocks, max_blocks, out);
            blocks.pop();
        }
    }
    let mut out = Vec::new();
    go(h, 0, &mut Vec::new(), max_blocks, &mut out);
    out
}

/// Injective edge-preserving maps of `h` into the complete multipartite graph
/// with the given part sizes (any order, zeros allowed).
pub fn count_injective_homs_in_multipartite(h: &SmallGraph, sizes: &[u64]) -> BigUint {
    let parts: Vec<u64> = sizes.iter().copied().filter(|&s| s > 0).collect();
    independent_block_profiles(h, parts.len())
        .into_iter()
        .map(|(blocks, mult)| injective_weighted_sum(&blocks, &parts, falling) * mult)
        .sum()
}

fn copies_in_sizes(h: &SmallGraph, sizes: &[u64]) -> BigUint {
    count_injective_homs_in_multipartite(h, sizes) / BigUint::from(aut_order(h))
}

/// Exact `N(h, K(p))` from the part sizes alone.
pub fn count_copies_in_multipartite(h: &SmallGraph, p: &PartVector) -> BigUint {
    copies_in_sizes(h, p.sizes())
}

/// Part sizes of `t` if it is complete multipartite (non-adjacency is an
/// equivalence relation), sorted non-increasing.
pub fn multipartite_shape(t: &SmallGraph) -> Option<Vec<usize>> {
    let comp = t.complement();
    let mut sizes = Vec::new();
    for c in comp.components() {
        if !comp.is_clique(c) {
            return None;
        }
        sizes.push(c.count_ones() as usize);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Some(sizes)
}

/// One canonical representative per complete multipartite graph on `m`
/// vertices with at most `rmax` parts, in stream order.
pub fn multipartite_types(m: usize, rmax: usize) -> Result<Vec<SmallGraph>> {
    if m > 8 {
        return Err(Error::UnsupportedSize { n: m, max: 8 });
    }
    let mut graphs = Vec::new();
    for parts in integer_partitions(m, rmax) {
        let sizes: Vec<u64> = parts.iter().map(|&s| s as u64).collect();
        graphs.push(canon::canonical_graph(&realize_sizes(&sizes)?)?);
    }
    Ok(sort_stream(graphs))
}

/// Number of `|V(t)|`-subsets of `K(p)` inducing a copy of the complete
/// multipartite graph `t`.
pub fn induced_type_count(t: &SmallGraph, p: &PartVector) -> Result<BigUint> {
    let shape = multipartite_shape(t).ok_or(Error::NotCompleteMultipartite)?;
    let raw = injective_weighted_sum(&shape, p.sizes(), |n, k| binomial(n, k as u64));
    // blocks of equal size are interchangeable
    let mut symmetry = BigUint::one();
    let mut i = 0;
    while i < shape.len() {
        let j = shape[i..].iter().take_while(|&&s| s == shape[i]).count();
        symmetry *= factorial(j as u64);
        i += j;
    }
    Ok(raw / symmetry)
}

/// Zykov's upper bound `C(k-1, r) * ceil(n/(k-1))^r` on `N(K_r, G)` for
/// `K_k`-free `G` on `n` vertices.
pub fn zykov_bound(n: u64, r: usize, k: usize) -> Result<BigUint> {
    if r < 1 || r >= k {
        return Err(Error::InvalidArgument(format!("need 1 <= r < k, got r = {r}, k = {k}")));
    }
    let parts = (k - 1) as u64;
    Ok(binomial(parts, r as u64) * num_traits::pow(BigUint::from(n.div_ceil(parts)), r))
}

/// Copy counts before and after moving one vertex from part `from` to part
/// `to` of a complete multipartite graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Balancing {
    pub before: BigUint,
    pub after: BigUint,
}

impl Balancing {
    /// How the count changed (`Greater` means the move increased it).
    pub fn ordering(&self) -> Ordering {
        self.after.cmp(&self.before)
    }
}

/// Compare `N(h, ·)` before and after moving one vertex from part `from` to
/// part `to`, where `sizes[from] >= sizes[to] + 2`. Indices refer to
/// `sizes` as given.
pub fn balancing_compare(h: &SmallGraph, sizes: &[u64], to: usize, from: usize) -> Result<Balancing> {
    if to >= sizes.len() || from >= sizes.len() || to == from {
        return Err(Error::InvalidArgument(format!("bad part indices {to}, {from} for {} parts", sizes.len())));
    }
    if sizes[from] < sizes[to] + 2 {
        return Err(Error::InvalidArgument(format!(
            "part {from} (size {}) must exceed part {to} (size {}) by at least 2",
            sizes[from], sizes[to]
        )));
    }
    let mut moved = sizes.to_vec();
    moved[from] -= 1;
    moved[to] += 1;
    Ok(Balancing { before: copies_in_sizes(h, sizes), after: copies_in_sizes(h, &moved) })
}
