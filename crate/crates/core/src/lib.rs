//! Exact tools for generalized Turán problems on small graphs.
//!
//! Copy counting in arbitrary graphs and in complete multipartite graphs,
//! isomorph-free enumeration, induced-type tables, linear goodness
//! certificates checked in exact rational arithmetic, and a brute-force
//! extremal verifier. The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod canon;
pub mod certify;
pub mod counting;
pub mod enumeration;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod graph6;
pub mod lp;
pub mod multipartite;
pub mod registry;
pub mod tables;

mod combinatorics;

pub use canon::{automorphism_count, canonical_form, CanonicalCode};
pub use certify::{
    certificate_bound_at, find_certificate, verify_certificate, Certificate, FindOutcome, InfeasibilityWitness,
    VerificationReport,
};
pub use counting::{
    count_copies, count_disjoint_pairs, count_induced_copies, count_injective_homs, count_split_copies,
    split_multiplicity, SplitPattern,
};
pub use enumeration::{enumerate_graphs, enumerate_kfree_maximal, enumerate_types, GraphStream};
pub use error::{Error, Result};
pub use extremal::{brute_force_ex, check_turan_good_at, ExtremalReport};
pub use graph::{contains_clique, SmallGraph};
pub use multipartite::{
    balancing_compare, count_copies_in_multipartite, induced_type_count, multipartite_types, realize_multipartite,
    turan_parts, zykov_bound, PartVector,
};
pub use registry::{GoodnessEntry, KCondition, Provenance, Registry};
pub use tables::{build_type_table, TypeTable};
