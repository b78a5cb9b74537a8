//! Induced-type tables: for every `K_k`-free `m`-vertex type containing `h`,
//! the spanning counts of each gadget and of `h`.

use alloc::format;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::counting::count_copies;
use crate::enumeration::enumerate_types;
use crate::error::{Error, Result};
use crate::graph::SmallGraph;

/// Largest type size built without an explicit override.
pub const DEFAULT_MAX_TABLE_VERTICES: usize = 6;
/// Largest type size accepted with an override.
pub const MAX_TABLE_VERTICES: usize = 8;

/// One column of a table: a type with its gadget and pattern counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeColumn {
    pub ty: SmallGraph,
    pub gadget_counts: Vec<u64>,
    pub h_count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeTable {
    pub h: SmallGraph,
    /// Forbidden clique size; `None` means no clique filter.
    pub k: Option<usize>,
    pub m: usize,
    /// Gadgets padded with isolated vertices to `m` vertices.
    pub gadgets: Vec<SmallGraph>,
    pub columns: Vec<TypeColumn>,
}

impl TypeTable {
    /// Counts of `h` across the columns.
    pub fn h_row(&self) -> Vec<u64> {
        self.columns.iter().map(|c| c.h_count).collect()
    }

    /// Counts of gadget `j` across the columns.
    pub fn gadget_row(&self, j: usize) -> Vec<u64> {
        self.columns.iter().map(|c| c.gadget_counts[j]).collect()
    }

    pub fn types(&self) -> Vec<SmallGraph> {
        self.columns.iter().map(|c| c.ty.clone()).collect()
    }
}

fn small(count: num_bigint::BigUint) -> u64 {
    count.to_u64().expect("spanning counts on at most 8 vertices fit in u64")
}

fn pad_all(h: &SmallGraph, gadgets: &[SmallGraph], limit: usize) -> Result<(usize, Vec<SmallGraph>)> {
    let m = gadgets.iter().map(SmallGraph::vertex_count).chain([h.vertex_count()]).max().unwrap_or(0);
    if m > limit {
        return Err(Error::UnsupportedSize { n: m, max: limit });
    }
    let padded = gadgets.iter().map(|g| g.padded_to(m)).collect::<Result<Vec<_>>>()?;
    Ok((m, padded))
}

/// Table over every `K_k`-free `m`-vertex type containing `h`, where `m` is
/// the largest vertex count among `h` and the gadgets (at most 6).
pub fn build_type_table(h: &SmallGraph, k: Option<usize>, gadgets: &[SmallGraph]) -> Result<TypeTable> {
    build_type_table_with_limit(h, k, gadgets, DEFAULT_MAX_TABLE_VERTICES)
}

/// As [`build_type_table`] with a raised size limit (at most 8).
pub fn build_type_table_with_limit(
    h: &SmallGraph,
    k: Option<usize>,
    gadgets: &[SmallGraph],
    limit: usize,
) -> Result<TypeTable> {
    if limit > MAX_TABLE_VERTICES {
        return Err(Error::InvalidArgument(format!("table size limit {limit} exceeds {MAX_TABLE_VERTICES}")));
    }
    let (m, _) = pad_all(h, gadgets, limit)?;
    let types = enumerate_types(m, k, &h.padded_to(m)?)?.into_vec();
    build_type_table_over(h, k, gadgets, &types)
}

/// Table over an explicit list of `m`-vertex types, kept in the given order.
/// Types need not contain `h`, so `h_count` may be zero here.
pub fn build_type_table_over(
    h: &SmallGraph,
    k: Option<usize>,
    gadgets: &[SmallGraph],
    types: &[SmallGraph],
) -> Result<TypeTable> {
    let (m, gadgets) = pad_all(h, gadgets, MAX_TABLE_VERTICES)?;
    let h = h.padded_to(m)?;
    let mut columns = Vec::with_capacity(types.len());
    for t in types {
        if t.vertex_count() != m {
            return Err(Error::InvalidArgument(format!("type has {} vertices, table needs {m}", t.vertex_count())));
        }
        columns.push(TypeColumn {
            ty: t.clone(),
            gadget_counts: gadgets.iter().map(|g| small(count_copies(g, t))).collect(),
            h_count: small(count_copies(&h, t)),
        });
    }
    Ok(TypeTable { h, k, m, gadgets, columns })
}
