//! Known `k`-Turán-good graphs with provenance.
//!
//! Structural recognizers run in a fixed order and the first hit wins:
//! cliques, disjoint unions of small cliques, a clique plus one vertex, an
//! edge plus a `(k-2)`-clique on `k` vertices, balanced complete multipartite
//! graphs, fixed small entries, attachment constructions, then user axioms.
//! Isolated vertices never affect goodness, so recognizers look at the graph
//! with isolated vertices removed.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::canon::{canonical_form, CanonicalCode};
use crate::error::{Error, Result};
use crate::graph::{contains_clique, iter_mask, SmallGraph};
use crate::multipartite::{multipartite_shape, turan_parts};

/// Largest graph the registry can key (canonical codes are exact up to here).
pub const MAX_REGISTRY_VERTICES: usize = crate::canon::MAX_CANON_VERTICES;

/// Which result establishes goodness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    /// Cliques `K_r` with `r < k`.
    Zykov,
    /// Bipartite graphs with a near-perfect matching at `k = 3`, and balanced
    /// complete multipartite graphs.
    Gps,
    /// Attachment of a `(k-1)`-clique to a good graph along a clique.
    GpAttachment,
    /// Matchings.
    GerbnerMatching,
    /// A clique plus one vertex joined arbitrarily.
    CliquePlusVertex,
    /// Vertex-disjoint union of cliques of size below `k`.
    CliqueUnion,
    /// A `(k-2)`-clique plus an edge joined arbitrarily, `k` vertices in all.
    CliquePlusEdge,
    /// The path on four vertices for `k >= 5`.
    PathP4,
    /// The path on five vertices for `k >= 4`.
    PathP5,
    /// Two triangles sharing a vertex for `k >= 6`.
    Bowtie,
    UserAxiom,
}

impl Provenance {
    pub const ALL: [Provenance; 11] = [
        Provenance::Zykov,
        Provenance::Gps,
        Provenance::GpAttachment,
        Provenance::GerbnerMatching,
        Provenance::CliquePlusVertex,
        Provenance::CliqueUnion,
        Provenance::CliquePlusEdge,
        Provenance::PathP4,
        Provenance::PathP5,
        Provenance::Bowtie,
        Provenance::UserAxiom,
    ];

    /// Stable text tag.
    pub fn tag(self) -> &'static str {
        match self {
            Provenance::Zykov => "Zykov",
            Provenance::Gps => "GPS",
            Provenance::GpAttachment => "GP-attachment",
            Provenance::GerbnerMatching => "Gerbner-matching",
            Provenance::CliquePlusVertex => "clique-plus-vertex",
            Provenance::CliqueUnion => "clique-union",
            Provenance::CliquePlusEdge => "clique-plus-edge",
            Provenance::PathP4 => "path-P4",
            Provenance::PathP5 => "path-P5",
            Provenance::Bowtie => "bowtie",
            Provenance::UserAxiom => "user-axiom",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Provenance::ALL
            .into_iter()
            .find(|p| p.tag() == s)
            .ok_or_else(|| Error::InvalidArgument(alloc::format!("unknown provenance tag {s:?}")))
    }
}

/// The set of `k` for which an entry holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KCondition {
    AtLeast(usize),
    Exactly(usize),
    /// Inclusive range.
    Between(usize, usize),
}

impl KCondition {
    pub fn holds(self, k: usize) -> bool {
        match self {
            KCondition::AtLeast(lo) => k >= lo,
            KCondition::Exactly(v) => k == v,
            KCondition::Between(lo, hi) => lo <= k && k <= hi,
        }
    }
}

impl fmt::Display for KCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KCondition::AtLeast(lo) => write!(f, "k>={lo}"),
            KCondition::Exactly(v) => write!(f, "k={v}"),
            KCondition::Between(lo, hi) => write!(f, "{lo}<=k<={hi}"),
        }
    }
}

impl FromStr for KCondition {
    type Err = Error;

    /// Accepts `k>=4`, `k=3`, `4<=k<=6`, with optional spaces and `≥`/`≤`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.replace('≥', ">=").replace('≤', "<=");
        let bad = || Error::InvalidArgument(alloc::format!("bad k condition {s:?}"));
        let num = |x: &str| x.parse::<usize>().map_err(|_| bad());
        if let Some(rest) = t.strip_prefix("k>=") {
            return Ok(KCondition::AtLeast(num(rest)?));
        }
        if let Some(rest) = t.strip_prefix("k=") {
            return Ok(KCondition::Exactly(num(rest)?));
        }
        if let Some((lo, hi)) = t.split_once("<=k<=") {
            let (lo, hi) = (num(lo)?, num(hi)?);
            if lo > hi {
                return Err(bad());
            }
            return Ok(KCondition::Between(lo, hi));
        }
        Err(bad())
    }
}

/// A goodness fact about one isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodnessEntry {
    pub canonical: CanonicalCode,
    pub k_condition: KCondition,
    pub provenance: Provenance,
    pub note: String,
    /// The entry this one was derived from, for attachment constructions.
    pub basis: Option<Box<GoodnessEntry>>,
}

impl GoodnessEntry {
    fn new(canonical: CanonicalCode, k_condition: KCondition, provenance: Provenance, note: impl Into<String>) -> Self {
        GoodnessEntry { canonical, k_condition, provenance, note: note.into(), basis: None }
    }

    /// Provenance tags from this entry down its derivation chain.
    pub fn provenance_chain(&self) -> Vec<Provenance> {
        let mut out = alloc::vec![self.provenance];
        let mut cur = &self.basis;
        while let Some(b) = cur {
            out.push(b.provenance);
            cur = &b.basis;
        }
        out
    }
}

impl fmt::Display for GoodnessEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.canonical, self.k_condition, self.provenance)
    }
}

fn recognize_structure(core: &SmallGraph, k: usize) -> Option<(KCondition, Provenance, &'static str)> {
    let n = core.vertex_count();
    // (1) a single clique
    if core.is_complete() && n >= 1 && n < k {
        return Some((KCondition::AtLeast(n + 1), Provenance::Zykov, "clique"));
    }
    // (2) disjoint union of cliques
    let comps = core.components();
    if comps.iter().all(|&c| core.is_clique(c)) {
        let largest = comps.iter().map(|c| c.count_ones() as usize).max().unwrap_or(0);
        if largest < k {
            let prov = if largest <= 2 { Provenance::GerbnerMatching } else { Provenance::CliqueUnion };
            return Some((KCondition::AtLeast(largest.max(2) + 1), prov, "union of cliques"));
        }
    }
    // (3) a clique plus one vertex
    if n >= 2 && n <= k && !core.is_complete() {
        let all = core.all_vertices();
        if (0..n).any(|v| core.is_clique(all & !(1 << v))) {
            return Some((KCondition::AtLeast(n), Provenance::CliquePlusVertex, "clique plus a vertex"));
        }
    }
    // (4) an edge plus a (k-2)-clique on exactly k vertices
    if n == k && k >= 3 && !core.is_complete() {
        let all = core.all_vertices();
        let hit = core.edges().any(|(a, b)| core.is_clique(all & !(1 << a) & !(1 << b)));
        if hit {
            return Some((KCondition::Exactly(k), Provenance::CliquePlusEdge, "clique plus an edge"));
        }
    }
    // (5) the balanced complete (k-1)-partite graph
    if k >= 2 {
        if let (Some(shape), Ok(parts)) = (multipartite_shape(core), turan_parts(k - 1, n as u64)) {
            let balanced: Vec<usize> = parts.sizes().iter().map(|&s| s as usize).collect();
            if shape == balanced && n > k - 1 {
                return Some((KCondition::Exactly(k), Provenance::Gps, "balanced complete multipartite"));
            }
        }
    }
    None
}

fn g(n: usize, edges: &[(usize, usize)]) -> SmallGraph {
    SmallGraph::from_edges(n, edges).expect("fixed entry graphs are valid")
}

/// Bowtie: two triangles sharing vertex 0.
pub fn bowtie() -> SmallGraph {
    g(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
}

fn fixed_entries() -> Vec<(SmallGraph, KCondition, Provenance, &'static str)> {
    let mut out = alloc::vec![
        (SmallGraph::path(3).unwrap(), KCondition::AtLeast(3), Provenance::Gps, "path on three vertices"),
        (SmallGraph::path(4).unwrap(), KCondition::AtLeast(5), Provenance::PathP4, "path on four vertices"),
        (SmallGraph::path(5).unwrap(), KCondition::AtLeast(4), Provenance::PathP5, "path on five vertices"),
        (bowtie(), KCondition::Exactly(4), Provenance::GpAttachment, "triangle attached to an edge"),
        (bowtie(), KCondition::AtLeast(6), Provenance::Bowtie, "two triangles sharing a vertex"),
        (g(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]), KCondition::Exactly(3), Provenance::Gps, "K_{2,3}"),
    ];
    for l in 2..=MAX_REGISTRY_VERTICES {
        out.push((SmallGraph::path(l).unwrap(), KCondition::Exactly(3), Provenance::Gps, "path"));
    }
    for l in (4..=MAX_REGISTRY_VERTICES).step_by(2) {
        out.push((SmallGraph::cycle(l).unwrap(), KCondition::Exactly(3), Provenance::Gps, "even cycle"));
    }
    out
}

/// Append-only store of constructed entries and user axioms, layered over the
/// built-in recognizers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Registry {
    constructed: Vec<GoodnessEntry>,
    axioms: Vec<GoodnessEntry>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Constructed entries followed by axioms, in insertion order.
    pub fn entries(&self) -> impl Iterator<Item = &GoodnessEntry> {
        self.constructed.iter().chain(self.axioms.iter())
    }

    /// First matching goodness fact for `h` at `k`, or `None` if unknown.
    /// Graphs containing `K_k` and graphs above ten vertices are never known.
    pub fn is_known_good(&self, h: &SmallGraph, k: usize) -> Option<GoodnessEntry> {
        if k < 3 || h.vertex_count() > MAX_REGISTRY_VERTICES || contains_clique(h, k) {
            return None;
        }
        let code = canonical_form(h).ok()?;
        let (core, _) = h.strip_isolated();
        let target = if core.vertex_count() == 0 { h.clone() } else { core.clone() };
        if let Some((cond, prov, note)) = recognize_structure(&target, k) {
            return Some(GoodnessEntry::new(code, cond, prov, note));
        }
        let core_code = canonical_form(&core).ok()?;
        let matches = |c: &CanonicalCode| *c == code || *c == core_code;
        for (graph, cond, prov, note) in fixed_entries() {
            if cond.holds(k) && matches(&canonical_form(&graph).ok()?) {
                return Some(GoodnessEntry::new(code, cond, prov, note));
            }
        }
        for e in self.constructed.iter().chain(self.axioms.iter()) {
            if e.k_condition.holds(k) && matches(&e.canonical) {
                return Some(e.clone());
            }
        }
        None
    }

    /// Attach a disjoint `K_{k-1}` to `h`, joining vertex `x` of `h` to new
    /// clique vertex `j` for every `(x, j)` in `join`; `x_set` must be a
    /// clique of `h` containing every joined `x`.
    pub fn extend_by_attachment(
        &mut self,
        h: &SmallGraph,
        x_set: u64,
        join: &[(usize, usize)],
        k: usize,
    ) -> Result<(SmallGraph, GoodnessEntry)> {
        let n = h.vertex_count();
        if k < 3 {
            return Err(Error::InvalidArgument(String::from("k must be at least 3")));
        }
        if x_set & !h.all_vertices() != 0 || !h.is_clique(x_set) {
            return Err(Error::NotAClique);
        }
        let parent = self.is_known_good(h, k).ok_or(Error::NotKnownGood { k })?;
        let mut out = h.with_isolated(k - 1)?;
        for a in n..n + k - 1 {
            for b in a + 1..n + k - 1 {
                out.add_edge(a, b)?;
            }
        }
        for &(x, j) in join {
            if x >= n || x_set >> x & 1 == 0 {
                return Err(Error::InvalidArgument(alloc::format!("vertex {x} is not in the attachment clique")));
            }
            if j >= k - 1 {
                return Err(Error::VertexOutOfRange { vertex: j, n: k - 1 });
            }
            out.add_edge(x, n + j)?;
        }
        if contains_clique(&out, k) {
            return Err(Error::ContainsForbiddenClique { k });
        }
        if out.vertex_count() > MAX_REGISTRY_VERTICES {
            return Err(Error::UnsupportedSize { n: out.vertex_count(), max: MAX_REGISTRY_VERTICES });
        }
        let joined: Vec<usize> = iter_mask(x_set).collect();
        let mut entry = GoodnessEntry::new(
            canonical_form(&out)?,
            KCondition::Exactly(k),
            Provenance::GpAttachment,
            alloc::format!("attached K_{} along clique {:?}", k - 1, joined),
        );
        entry.basis = Some(Box::new(parent));
        if let Some(existing) =
            self.constructed.iter().find(|e| e.canonical == entry.canonical && e.k_condition == entry.k_condition)
        {
            return Ok((out, existing.clone()));
        }
        self.constructed.push(entry.clone());
        Ok((out, entry))
    }

    /// Record a goodness fact taken on trust. Registering the same graph and
    /// condition again returns the stored entry.
    pub fn register_axiom(&mut self, h: &SmallGraph, k_condition: KCondition, note: &str) -> Result<GoodnessEntry> {
        let canonical = canonical_form(h)?;
        if let Some(e) = self.axioms.iter().find(|e| e.canonical == canonical && e.k_condition == k_condition) {
            return Ok(e.clone());
        }
        let entry = GoodnessEntry::new(canonical, k_condition, Provenance::UserAxiom, note.to_string());
        self.axioms.push(entry.clone());
        Ok(entry)
    }

    /// Re-insert a previously dumped entry; duplicates are ignored.
    pub fn insert_entry(&mut self, entry: GoodnessEntry) {
        let list = if entry.provenance == Provenance::UserAxiom { &mut self.axioms } else { &mut self.constructed };
        if !list.iter().any(|e| e.canonical == entry.canonical && e.k_condition == entry.k_condition) {
            list.push(entry);
        }
    }
}
