//! Exhaustive `ex(n, h, K_k)` at small `n` and the Turán-goodness verdict at
//! a single `n`.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::canon::canonical_graph;
use crate::counting::count_copies;
use crate::enumeration::{enumerate_kfree, enumerate_kfree_maximal, sort_stream};
use crate::error::{Error, Result};
use crate::graph::SmallGraph;
use crate::multipartite::{count_copies_in_multipartite, realize_multipartite, turan_parts};

/// Largest `n` searched over edge-maximal graphs only.
pub const MAX_EXTREMAL_MAXIMAL: usize = 9;
/// Largest `n` searched over all `K_k`-free graphs.
pub const MAX_EXTREMAL_FULL: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalReport {
    pub n: usize,
    pub k: usize,
    pub h: SmallGraph,
    /// Whether only edge-maximal `K_k`-free classes were searched.
    pub maximal_only: bool,
    pub classes_searched: usize,
    pub maximum: BigUint,
    /// Canonical graphs attaining the maximum, in stream order.
    pub extremal_graphs: Vec<SmallGraph>,
    pub turan_value: BigUint,
    pub turan_is_max: bool,
    /// The Turán graph is the only searched class attaining the maximum.
    pub turan_is_unique_max: bool,
}

impl ExtremalReport {
    /// Assemble a report from per-class counts, as produced by any search
    /// strategy over the class stream.
    pub fn from_counts(
        n: usize,
        k: usize,
        h: &SmallGraph,
        maximal_only: bool,
        counts: Vec<(SmallGraph, BigUint)>,
    ) -> Result<Self> {
        let parts = turan_parts(k - 1, n as u64)?;
        let turan_value = count_copies_in_multipartite(h, &parts);
        let turan = canonical_graph(&realize_multipartite(&parts)?)?;
        let classes_searched = counts.len();
        let maximum = counts.iter().map(|(_, c)| c.clone()).max().unwrap_or_default();
        let extremal_graphs = sort_stream(counts.into_iter().filter(|(_, c)| *c == maximum).map(|(g, _)| g).collect());
        let turan_is_max = maximum == turan_value;
        let turan_is_unique_max = turan_is_max && extremal_graphs.len() == 1 && extremal_graphs[0] == turan;
        Ok(ExtremalReport {
            n,
            k,
            h: h.clone(),
            maximal_only,
            classes_searched,
            maximum,
            extremal_graphs,
            turan_value,
            turan_is_max,
            turan_is_unique_max,
        })
    }

    /// What a positive verdict does and does not mean.
    pub fn note(&self) -> String {
        alloc::format!("verdict holds at n = {} only; goodness is a statement about all sufficiently large n", self.n)
    }
}

/// The classes a search at `(n, k)` ranges over.
pub fn search_space(n: usize, k: usize, maximal_only: bool) -> Result<Vec<SmallGraph>> {
    check_args(n, k, maximal_only)?;
    Ok(if maximal_only { enumerate_kfree_maximal(n, k)? } else { enumerate_kfree(n, Some(k))? }.into_vec())
}

fn check_args(n: usize, k: usize, maximal_only: bool) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument(alloc::format!("k = {k} is below 2")));
    }
    let cap = if maximal_only { MAX_EXTREMAL_MAXIMAL } else { MAX_EXTREMAL_FULL };
    if n > cap {
        return Err(Error::UnsupportedSize { n, max: cap });
    }
    Ok(())
}

/// Maximum of `N(h, G)` over `K_k`-free `G` on `n` vertices. With
/// `maximal_only`, only edge-maximal graphs are searched, which finds the
/// same maximum since copy counts never drop when edges are added; ties
/// among non-maximal graphs are then not reported.
pub fn brute_force_ex(n: usize, h: &SmallGraph, k: usize, maximal_only: bool) -> Result<ExtremalReport> {
    let counts = search_space(n, k, maximal_only)?
        .into_iter()
        .map(|g| {
            let c = count_copies(h, &g);
            (g, c)
        })
        .collect();
    ExtremalReport::from_counts(n, k, h, maximal_only, counts)
}

/// Whether `T_{k-1}(n)` attains `ex(n, h, K_k)` at this `n`.
pub fn check_turan_good_at(n: usize, h: &SmallGraph, k: usize) -> Result<(bool, ExtremalReport)> {
    let report = brute_force_ex(n, h, k, true)?;
    Ok((report.turan_is_max, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangles_without_k4() {
        let r = brute_force_ex(5, &SmallGraph::complete(3).unwrap(), 4, false).unwrap();
        assert_eq!(r.maximum, BigUint::from(4u32));
        assert!(r.turan_is_max && r.turan_is_unique_max);
    }

    #[test]
    fn p4_on_four_vertices() {
        let r = brute_force_ex(4, &SmallGraph::path(4).unwrap(), 5, false).unwrap();
        assert_eq!(r.maximum, BigUint::from(12u32));
        assert_eq!(r.extremal_graphs, alloc::vec![SmallGraph::complete(4).unwrap()]);
        assert!(r.turan_is_max);
    }

    #[test]
    fn forced_small_case() {
        let (good, r) = check_turan_good_at(3, &SmallGraph::path(3).unwrap(), 3).unwrap();
        assert!(good);
        assert_eq!(r.maximum, BigUint::from(1u32));
    }

    #[test]
    fn pruning_agrees() {
        for n in 2..=6 {
            for k in 3..=5 {
                for h in [SmallGraph::path(3).unwrap(), SmallGraph::path(4).unwrap(), SmallGraph::cycle(4).unwrap()] {
                    let full = brute_force_ex(n, &h, k, false).unwrap();
                    let pruned = brute_force_ex(n, &h, k, true).unwrap();
                    assert_eq!(full.maximum, pruned.maximum, "n = {n}, k = {k}, h = {h}");
                }
            }
        }
    }

    #[test]
    fn caps() {
        let h = SmallGraph::path(3).unwrap();
        assert!(brute_force_ex(9, &h, 4, false).is_err());
        assert!(brute_force_ex(10, &h, 4, true).is_err());
    }
}
