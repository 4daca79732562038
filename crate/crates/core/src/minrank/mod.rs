//! Exact minrank over prime fields.
//!
//! [`minrank_exact`] brackets the answer between the independence number and
//! the clique cover number, then deepens `k` upward from the lower end with
//! [`minrank_decision`] until a fit of rank `k` appears. Every answer carries
//! a witness matrix that [`verify_certificate`] can re-check independently.

mod search;
mod space;

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{mat_rank, AlgebraError, AnyMatrix, Domain, Field, Matrix, PrimeField, Rationals};
use crate::geom::fit_from_coloring;
use crate::graph::{clique_cover_exact, complement, independence_number, is_fit, Graph, GraphError};

pub use space::MAX_DENSE;

/// Node budget used when the caller does not pick one.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Largest graph [`minrank_exact`] accepts by default over GF(q).
pub fn default_exact_limit(q: u32) -> usize {
    if q == 2 {
        14
    } else {
        10
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MinrankError {
    #[error("undecided: node budget exhausted after {nodes} nodes")]
    Undecided { nodes: u64 },
    #[error("instance too large: n = {n} exceeds limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("rank bound {k} outside 1..={n}")]
    InvalidRank { k: usize, n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("malformed certificate: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LowerSource {
    Independence,
    ProductInequality,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpperSource {
    CliqueCover,
    Search,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinrankResult {
    pub field: PrimeField,
    /// Exact minrank when the search finished within budget.
    pub value: Option<usize>,
    /// A fit of rank `value`.
    pub witness: Option<Matrix<u32>>,
    pub lower: usize,
    pub lower_source: LowerSource,
    pub upper: usize,
    pub upper_source: UpperSource,
    /// Tightest proven interval; `(v, v)` when exact.
    pub bracket: (usize, usize),
    pub alpha: usize,
    pub clique_cover: usize,
    pub nodes: u64,
}

impl MinrankResult {
    pub fn is_exact(&self) -> bool {
        self.value.is_some()
    }
}

/// Searches GF(q) for a fit of `g` with rank at most `k`.
///
/// `Ok(None)` means the whole search space was exhausted without finding
/// one; running out of budget is [`MinrankError::Undecided`].
pub fn minrank_decision(
    g: &Graph,
    field: PrimeField,
    k: usize,
    budget: u64,
) -> Result<Option<Matrix<u32>>, MinrankError> {
    match decide_counted(g, field, k, budget)? {
        (search::Outcome::Found(m), _) => Ok(Some(m)),
        (search::Outcome::Infeasible, _) => Ok(None),
        (search::Outcome::OutOfBudget, nodes) => Err(MinrankError::Undecided { nodes }),
    }
}

fn decide_counted(
    g: &Graph,
    field: PrimeField,
    k: usize,
    budget: u64,
) -> Result<(search::Outcome, u64), MinrankError> {
    let n = g.n();
    if k == 0 || k > n {
        return Err(MinrankError::InvalidRank { k, n });
    }
    let cap = if field.modulus() == 2 { 64 } else { MAX_DENSE };
    if n > cap {
        return Err(MinrankError::TooLarge { n, limit: cap });
    }
    Ok(search::decide(g, field, k, budget))
}

/// `(independence number, clique cover number)`; every field's minrank lies
/// between them.
pub fn sandwich(g: &Graph) -> Result<(usize, usize), GraphError> {
    Ok((independence_number(g)?, clique_cover_exact(g)?.0))
}

pub fn minrank_exact(g: &Graph, field: PrimeField, budget: u64) -> Result<MinrankResult, MinrankError> {
    minrank_exact_with_limit(g, field, budget, default_exact_limit(field.modulus()))
}

pub fn minrank_exact_with_limit(
    g: &Graph,
    field: PrimeField,
    budget: u64,
    limit: usize,
) -> Result<MinrankResult, MinrankError> {
    let n = g.n();
    if n > limit {
        return Err(MinrankError::TooLarge { n, limit });
    }
    if n == 0 {
        return Err(MinrankError::InvalidRank { k: 0, n });
    }
    let alpha = independence_number(g)?;
    let (cc, cover) = clique_cover_exact(g)?;
    // minrank(G) * minrank(co-G) >= n and minrank(co-G) <= chi(G)
    let (chi, _) = clique_cover_exact(&complement(g))?;
    let product_bound = n.div_ceil(chi);
    let (lower, lower_source) = if product_bound > alpha {
        (product_bound, LowerSource::ProductInequality)
    } else {
        (alpha, LowerSource::Independence)
    };
    let mut result = MinrankResult {
        field,
        value: None,
        witness: None,
        lower,
        lower_source,
        upper: cc,
        upper_source: UpperSource::CliqueCover,
        bracket: (lower, cc),
        alpha,
        clique_cover: cc,
        nodes: 0,
    };
    for k in lower..cc {
        let remaining = budget.saturating_sub(result.nodes);
        let (outcome, used) = decide_counted(g, field, k, remaining)?;
        result.nodes += used;
        match outcome {
            search::Outcome::Found(m) => {
                result.value = Some(k);
                result.witness = Some(m);
                result.upper = k;
                result.upper_source = UpperSource::Search;
                result.bracket = (k, k);
                return Ok(result);
            }
            search::Outcome::Infeasible => result.bracket.0 = k + 1,
            search::Outcome::OutOfBudget => return Ok(result),
        }
    }
    result.value = Some(cc);
    result.witness = Some(fit_from_coloring(&field, g, &cover)?);
    result.bracket = (cc, cc);
    Ok(result)
}

/// True iff `m` fits `g` and has rank at most `claimed`.
pub fn verify_certificate<F: Field>(
    field: &F,
    g: &Graph,
    m: &Matrix<F::Elem>,
    claimed: usize,
) -> Result<bool, GraphError> {
    Ok(is_fit(field, m, g)? && mat_rank(field, m) <= claimed)
}

/// A fit certificate as exchanged on disk:
/// `{"graph":..,"matrix":..,"claimed_rank":k,"field":"gf:2"}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub graph: Graph,
    pub matrix: AnyMatrix,
    pub claimed_rank: usize,
}

impl Certificate {
    pub fn from_result(g: &Graph, result: &MinrankResult) -> Option<Self> {
        Some(Certificate {
            graph: g.clone(),
            matrix: AnyMatrix::Prime(result.field, result.witness.clone()?),
            claimed_rank: result.value?,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "graph": self.graph.to_json(),
            "matrix": self.matrix.to_json(),
            "claimed_rank": self.claimed_rank,
            "field": self.matrix.domain().to_string(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, MinrankError> {
        let graph = Graph::from_json(v.get("graph").ok_or_else(|| missing("graph"))?)?;
        let matrix = AnyMatrix::from_json(v.get("matrix").ok_or_else(|| missing("matrix"))?)?;
        let claimed_rank = v
            .get("claimed_rank")
            .and_then(Value::as_u64)
            .ok_or_else(|| missing("claimed_rank"))? as usize;
        if let Some(f) = v.get("field").and_then(Value::as_str) {
            let declared: Domain = f.parse()?;
            if declared != matrix.domain() {
                return Err(MinrankError::Parse(format!(
                    "field {declared} disagrees with matrix domain {}",
                    matrix.domain()
                )));
            }
        }
        Ok(Certificate {
            graph,
            matrix,
            claimed_rank,
        })
    }

    /// Checks the certificate in its own field; float matrices are rejected.
    pub fn verify(&self) -> Result<bool, MinrankError> {
        match &self.matrix {
            AnyMatrix::Prime(f, m) => Ok(verify_certificate(f, &self.graph, m, self.claimed_rank)?),
            AnyMatrix::Rational(m) => Ok(verify_certificate(&Rationals, &self.graph, m, self.claimed_rank)?),
            AnyMatrix::Float(_) => Err(MinrankError::Algebra(AlgebraError::DomainMismatch(
                "certificates must be exact".into(),
            ))),
        }
    }
}

fn missing(key: &str) -> MinrankError {
    MinrankError::Parse(format!("missing {key:?}"))
}
