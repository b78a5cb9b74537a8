//! Linear goodness certificates.
//!
//! A certificate for `(h, k)` is a list of `k`-Turán-good gadgets on
//! `m = |V(h)|` vertices with nonnegative rational coefficients `c_j` such
//! that `N(h, t) <= sum_j c_j N(B_j, t)` on every `K_k`-free `m`-vertex type
//! `t` containing `h`, with equality on every complete multipartite
//! `m`-vertex graph with at most `k - 1` parts. The equalities make both
//! sides agree on every Turán graph `T_{k-1}(n)`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::counting::count_copies;
use crate::enumeration::enumerate_types;
use crate::error::{Error, Result};
use crate::graph::SmallGraph;
use crate::lp::{self, Constraint, LinearProgram, LpOutcome, Relation};
use crate::multipartite::{count_copies_in_multipartite, multipartite_shape, multipartite_types, turan_parts};
use crate::registry::{GoodnessEntry, Registry};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub h: SmallGraph,
    pub k: usize,
    /// Gadgets padded to `|V(h)|` vertices.
    pub gadgets: Vec<SmallGraph>,
    pub coefficients: Vec<BigRational>,
    /// Goodness facts for the gadgets, in gadget order.
    pub provenance: Vec<GoodnessEntry>,
}

fn pad_gadgets(h: &SmallGraph, gadgets: &[SmallGraph]) -> Result<Vec<SmallGraph>> {
    let m = h.vertex_count();
    gadgets
        .iter()
        .enumerate()
        .map(|(index, g)| {
            if g.vertex_count() > m {
                Err(Error::GadgetTooLarge { index, vertices: g.vertex_count(), m })
            } else {
                g.padded_to(m)
            }
        })
        .collect()
}

fn gadget_provenance(gadgets: &[SmallGraph], k: usize, registry: &Registry) -> Result<Vec<GoodnessEntry>> {
    gadgets
        .iter()
        .enumerate()
        .map(|(index, g)| registry.is_known_good(g, k).ok_or(Error::UnregisteredGadget { index, k }))
        .collect()
}

impl Certificate {
    /// Pad the gadgets, check the coefficients and attach registry provenance.
    pub fn new(
        h: SmallGraph,
        k: usize,
        gadgets: &[SmallGraph],
        coefficients: Vec<BigRational>,
        registry: &Registry,
    ) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidCertificate(format!("k = {k} is below 3")));
        }
        if gadgets.len() != coefficients.len() {
            return Err(Error::InvalidCertificate(format!(
                "{} gadgets but {} coefficients",
                gadgets.len(),
                coefficients.len()
            )));
        }
        if let Some(i) = coefficients.iter().position(Signed::is_negative) {
            return Err(Error::InvalidCertificate(format!("coefficient {i} is negative")));
        }
        let gadgets = pad_gadgets(&h, gadgets)?;
        let provenance = gadget_provenance(&gadgets, k, registry)?;
        Ok(Certificate { h, k, gadgets, coefficients, provenance })
    }

    /// Same certificate with every coefficient multiplied by `factor`.
    pub fn scaled(&self, factor: &BigRational) -> Self {
        let mut c = self.clone();
        for x in c.coefficients.iter_mut() {
            *x = &*x * factor;
        }
        c
    }
}

/// One column of a verification: `margin = combination - h_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnCheck {
    pub column: SmallGraph,
    pub h_count: BigUint,
    pub combination: BigRational,
    pub margin: BigRational,
}

impl ColumnCheck {
    fn new(column: &SmallGraph, h: &SmallGraph, gadgets: &[SmallGraph], coefficients: &[BigRational]) -> Self {
        let h_count = count_copies(h, column);
        let combination = gadgets.iter().zip(coefficients).fold(BigRational::zero(), |acc, (g, c)| {
            acc + c * BigRational::from_integer(BigInt::from(count_copies(g, column)))
        });
        let margin = &combination - BigRational::from_integer(BigInt::from(h_count.clone()));
        ColumnCheck { column: column.clone(), h_count, combination, margin }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub passed: bool,
    /// One check per `K_k`-free type containing `h`, in stream order.
    pub inequality_checks: Vec<ColumnCheck>,
    /// One check per complete multipartite type with at most `k - 1` parts.
    pub equality_checks: Vec<ColumnCheck>,
    /// The first failing equality column, else the first failing inequality
    /// column.
    pub failing_column: Option<SmallGraph>,
    pub provenance: Vec<GoodnessEntry>,
}

impl VerificationReport {
    /// The conclusion a passing report supports.
    pub fn conclusion(&self, k: usize) -> String {
        if self.passed {
            format!("k-Turán-good for k = {k}, conditional on the goodness of every gadget")
        } else {
            String::from("certificate does not verify")
        }
    }
}

fn check_structure(c: &Certificate) -> Result<Vec<SmallGraph>> {
    if c.k < 3 {
        return Err(Error::InvalidCertificate(format!("k = {} is below 3", c.k)));
    }
    if c.gadgets.len() != c.coefficients.len() {
        return Err(Error::InvalidCertificate(format!(
            "{} gadgets but {} coefficients",
            c.gadgets.len(),
            c.coefficients.len()
        )));
    }
    if let Some(i) = c.coefficients.iter().position(Signed::is_negative) {
        return Err(Error::InvalidCertificate(format!("coefficient {i} is negative")));
    }
    pad_gadgets(&c.h, &c.gadgets)
}

/// Check a certificate exactly. Gadget goodness is re-derived from `registry`;
/// an unregistered gadget is an error, a numerical failure is a failing report.
pub fn verify_certificate(c: &Certificate, registry: &Registry) -> Result<VerificationReport> {
    let gadgets = check_structure(c)?;
    let provenance = gadget_provenance(&gadgets, c.k, registry)?;
    let m = c.h.vertex_count();
    let inequality_checks: Vec<ColumnCheck> = enumerate_types(m, Some(c.k), &c.h)?
        .iter()
        .map(|t| ColumnCheck::new(t, &c.h, &gadgets, &c.coefficients))
        .collect();
    let equality_checks: Vec<ColumnCheck> =
        multipartite_types(m, c.k - 1)?.iter().map(|t| ColumnCheck::new(t, &c.h, &gadgets, &c.coefficients)).collect();
    let failing_column = equality_checks
        .iter()
        .find(|x| !x.margin.is_zero())
        .or_else(|| inequality_checks.iter().find(|x| x.margin.is_negative()))
        .map(|x| x.column.clone());
    Ok(VerificationReport {
        passed: failing_column.is_none(),
        inequality_checks,
        equality_checks,
        failing_column,
        provenance,
    })
}

/// A constraint in an infeasibility proof, with its Farkas multiplier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessRow {
    pub column: SmallGraph,
    /// `true` for a multipartite equality column, `false` for an inequality.
    pub equality: bool,
    pub multiplier: BigRational,
}

/// Nonnegative-on-inequalities multipliers `y` over the columns such that
/// `sum_t y_t N(B_j, t) <= 0` for every gadget and `sum_t y_t N(h, t) > 0`;
/// no nonnegative coefficients can then satisfy every column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfeasibilityWitness {
    pub h: SmallGraph,
    pub k: usize,
    pub gadgets: Vec<SmallGraph>,
    pub rows: Vec<WitnessRow>,
}

impl InfeasibilityWitness {
    /// Recheck the Farkas conditions from scratch.
    pub fn verify(&self) -> bool {
        let mut rhs = BigRational::zero();
        let mut combo = alloc::vec![BigRational::zero(); self.gadgets.len()];
        for row in &self.rows {
            if !row.equality && row.multiplier.is_negative() {
                return false;
            }
            rhs += &row.multiplier * BigRational::from_integer(BigInt::from(count_copies(&self.h, &row.column)));
            for (acc, g) in combo.iter_mut().zip(&self.gadgets) {
                *acc += &row.multiplier * BigRational::from_integer(BigInt::from(count_copies(g, &row.column)));
            }
        }
        rhs.is_positive() && combo.iter().all(|x| !x.is_positive())
    }

    /// The single separating column when one constraint alone is infeasible.
    pub fn separating_column(&self) -> Option<&SmallGraph> {
        match self.rows.as_slice() {
            [only] => Some(&only.column),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FindOutcome {
    Found(Certificate),
    Infeasible(InfeasibilityWitness),
}

fn to_rational(x: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Search for coefficients over `pool` by exact linear programming. Among
/// feasible solutions the one with least coefficient sum is chosen, ties
/// broken by lexicographically smallest coefficient vector.
pub fn find_certificate(h: &SmallGraph, k: usize, pool: &[SmallGraph], registry: &Registry) -> Result<FindOutcome> {
    if pool.is_empty() {
        return Err(Error::InvalidArgument(String::from("empty gadget pool")));
    }
    if k < 3 {
        return Err(Error::InvalidArgument(format!("k = {k} is below 3")));
    }
    let gadgets = pad_gadgets(h, pool)?;
    gadget_provenance(&gadgets, k, registry)?;
    let m = h.vertex_count();

    let mut columns: Vec<(SmallGraph, bool)> = multipartite_types(m, k - 1)?.into_iter().map(|t| (t, true)).collect();
    for t in enumerate_types(m, Some(k), h)? {
        if multipartite_shape(&t).is_none_or(|s| s.len() > k - 1) {
            columns.push((t, false));
        }
    }
    let constraints: Vec<Constraint> = columns
        .iter()
        .map(|(t, eq)| Constraint {
            coefficients: gadgets.iter().map(|g| to_rational(count_copies(g, t))).collect(),
            relation: if *eq { Relation::Eq } else { Relation::Ge },
            rhs: to_rational(count_copies(h, t)),
        })
        .collect();
    let n = gadgets.len();
    let ones = alloc::vec![BigRational::one(); n];
    let program = LinearProgram { variables: n, objective: ones.clone(), constraints };
    let mut objectives = alloc::vec![ones];
    for j in 0..n {
        let mut e = alloc::vec![BigRational::zero(); n];
        e[j] = BigRational::one();
        objectives.push(e);
    }
    match lp::minimize_lexicographic(&program, &objectives) {
        LpOutcome::Optimal { point, .. } => {
            let cert = Certificate::new(h.clone(), k, &gadgets, point, registry)?;
            debug_assert!(verify_certificate(&cert, registry).map(|r| r.passed).unwrap_or(false));
            Ok(FindOutcome::Found(cert))
        }
        LpOutcome::Infeasible { farkas } => {
            let rows = columns
                .into_iter()
                .zip(farkas)
                .filter(|(_, y)| !y.is_zero())
                .map(|((column, equality), multiplier)| WitnessRow { column, equality, multiplier })
                .collect();
            Ok(FindOutcome::Infeasible(InfeasibilityWitness { h: h.clone(), k, gadgets, rows }))
        }
        LpOutcome::Unbounded => unreachable!("coefficient sum is bounded below by zero"),
    }
}

/// Both sides of the certificate evaluated on `T_{k-1}(n)`:
/// `(N(h, T), sum_j c_j N(B_j, T))`. Padded gadgets are counted with their
/// isolated vertices, on both sides alike.
pub fn certificate_bound_at(c: &Certificate, registry: &Registry, n: u64) -> Result<(BigUint, BigUint)> {
    if !verify_certificate(c, registry)?.passed {
        return Err(Error::UnverifiedCertificate);
    }
    let gadgets = pad_gadgets(&c.h, &c.gadgets)?;
    let parts = turan_parts(c.k - 1, n)?;
    let lhs = count_copies_in_multipartite(&c.h, &parts);
    let rhs = gadgets
        .iter()
        .zip(&c.coefficients)
        .fold(BigRational::zero(), |acc, (g, coef)| acc + coef * to_rational(count_copies_in_multipartite(g, &parts)));
    if !rhs.is_integer() {
        return Err(Error::NonIntegralBound);
    }
    let rhs = rhs.to_integer().to_biguint().ok_or(Error::NonIntegralBound)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::registry::bowtie;
    use alloc::vec;

    fn g(n: usize, edges: &[(usize, usize)]) -> SmallGraph {
        SmallGraph::from_edges(n, edges).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn p4_pool() -> Vec<SmallGraph> {
        vec![g(4, &[(0, 1), (2, 3)]), g(4, &[(0, 1), (1, 2), (0, 2)]), SmallGraph::complete(4).unwrap()]
    }

    fn p5_pool() -> Vec<SmallGraph> {
        vec![g(5, &[(0, 1), (2, 3)]), g(5, &[(0, 1), (2, 3), (3, 4), (2, 4)]), bowtie()]
    }

    fn bowtie_pool() -> Vec<SmallGraph> {
        vec![
            g(5, &[(0, 1), (2, 3), (3, 4), (2, 4)]),
            SmallGraph::complete(4).unwrap().padded_to(5).unwrap(),
            SmallGraph::complete(5).unwrap(),
        ]
    }

    fn cert(h: SmallGraph, k: usize, pool: &[SmallGraph], c: &[(i64, i64)]) -> Certificate {
        let coefficients = c.iter().map(|&(n, d)| q(n, d)).collect();
        Certificate::new(h, k, pool, coefficients, &Registry::new()).unwrap()
    }

    #[test]
    fn known_certificates_pass() {
        let r = Registry::new();
        for k in 5..=7 {
            let c = cert(SmallGraph::path(4).unwrap(), k, &p4_pool(), &[(2, 1), (1, 1), (2, 1)]);
            assert!(verify_certificate(&c, &r).unwrap().passed, "P4 k = {k}");
        }
        for k in 4..=6 {
            let c = cert(SmallGraph::path(5).unwrap(), k, &p5_pool(), &[(1, 1), (3, 1), (1, 1)]);
            let rep = verify_certificate(&c, &r).unwrap();
            assert!(rep.passed, "P5 k = {k}");
            assert_eq!(rep.inequality_checks.len(), [14, 17, 18][k - 4]);
        }
        for k in 6..=7 {
            let c = cert(bowtie(), k, &bowtie_pool(), &[(1, 2), (3, 2), (5, 2)]);
            assert!(verify_certificate(&c, &r).unwrap().passed, "bowtie k = {k}");
        }
    }

    #[test]
    fn wrong_coefficients_fail_at_c4() {
        let c = cert(SmallGraph::path(4).unwrap(), 5, &p4_pool(), &[(1, 1), (0, 1), (0, 1)]);
        let rep = verify_certificate(&c, &Registry::new()).unwrap();
        assert!(!rep.passed);
        let col = rep.failing_column.unwrap();
        assert!(are_isomorphic(&col, &SmallGraph::cycle(4).unwrap()).unwrap());
        let check = rep.equality_checks.iter().find(|x| x.column == col).unwrap();
        assert_eq!(check.h_count, BigUint::from(4u32));
        assert_eq!(check.combination, q(2, 1));
    }

    #[test]
    fn scaling_breaks_equalities_only() {
        let c = cert(SmallGraph::path(4).unwrap(), 5, &p4_pool(), &[(2, 1), (1, 1), (2, 1)]);
        let r = Registry::new();
        let rep = verify_certificate(&c.scaled(&q(3, 2)), &r).unwrap();
        assert!(!rep.passed);
        assert!(rep.inequality_checks.iter().all(|x| !x.margin.is_negative()));
        assert!(rep.equality_checks.iter().any(|x| !x.margin.is_zero()));
    }

    #[test]
    fn unregistered_gadget_is_an_error() {
        let c5 = SmallGraph::cycle(5).unwrap();
        let e = Certificate::new(SmallGraph::path(5).unwrap(), 4, &[c5], vec![q(1, 1)], &Registry::new());
        assert_eq!(e.unwrap_err(), Error::UnregisteredGadget { index: 0, k: 4 });
    }

    #[test]
    fn recovers_known_coefficients() {
        let r = Registry::new();
        let FindOutcome::Found(c) = find_certificate(&SmallGraph::path(4).unwrap(), 5, &p4_pool(), &r).unwrap() else {
            panic!("P4 pool is feasible");
        };
        assert_eq!(c.coefficients, vec![q(2, 1), q(1, 1), q(2, 1)]);

        let FindOutcome::Found(c) = find_certificate(&bowtie(), 6, &bowtie_pool(), &r).unwrap() else {
            panic!("bowtie pool is feasible");
        };
        assert_eq!(c.coefficients, vec![q(1, 2), q(3, 2), q(5, 2)]);

        let FindOutcome::Found(c) = find_certificate(&SmallGraph::path(5).unwrap(), 6, &p5_pool(), &r).unwrap() else {
            panic!("P5 pool is feasible");
        };
        assert!(verify_certificate(&c, &r).unwrap().passed);
    }

    #[test]
    fn smaller_pool_is_infeasible_with_witness() {
        let r = Registry::new();
        let pool = vec![g(4, &[(0, 1), (2, 3)]), SmallGraph::complete(4).unwrap()];
        match find_certificate(&SmallGraph::path(4).unwrap(), 5, &pool, &r).unwrap() {
            FindOutcome::Infeasible(w) => assert!(w.verify()),
            FindOutcome::Found(c) => panic!("unexpected {:?}", c.coefficients),
        }
    }

    #[test]
    fn bound_at_turan_graphs() {
        let r = Registry::new();
        let p4 = cert(SmallGraph::path(4).unwrap(), 5, &p4_pool(), &[(2, 1), (1, 1), (2, 1)]);
        for n in 0..12 {
            let (lhs, rhs) = certificate_bound_at(&p4, &r, n).unwrap();
            assert_eq!(lhs, rhs, "n = {n}");
        }
        let bow = cert(bowtie(), 6, &bowtie_pool(), &[(1, 2), (3, 2), (5, 2)]);
        for n in 0..15 {
            let (lhs, rhs) = certificate_bound_at(&bow, &r, n).unwrap();
            assert_eq!(lhs, rhs, "n = {n}");
        }
        let bad = cert(SmallGraph::path(4).unwrap(), 5, &p4_pool(), &[(1, 1), (0, 1), (0, 1)]);
        assert_eq!(certificate_bound_at(&bad, &r, 7).unwrap_err(), Error::UnverifiedCertificate);
    }
}
