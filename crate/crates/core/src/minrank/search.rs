use super::space::{DenseRow, DenseSpace, Gf2Space, RowSpace, MAX_DENSE};
use crate::algebra::{Matrix, PrimeField};
use crate::graph::Graph;

pub(crate) enum Outcome {
    /// Rows of a fit of rank at most `k`, in vertex order.
    Found(Matrix<u32>),
    Infeasible,
    OutOfBudget,
}

/// Row-assignment search for a fit of rank at most `k`.
///
/// Vertices are visited in ascending degree. For each vertex the row either
/// lies in the span of the rows chosen so far (then only feasibility matters,
/// since the span only grows) or extends it; extending rows are drawn from
/// the vectors with a 1 on the diagonal and zeros outside the closed
/// neighbourhood, fewest nonzeros first. Once the span has dimension `k`
/// every remaining vertex must be realizable inside it.
struct Search<S: RowSpace> {
    order: Vec<usize>,
    allowed: Vec<u64>,
    candidates: Vec<Vec<S::Row>>,
    k: usize,
    budget: u64,
    nodes: u64,
    /// `Some(row)` when the position extended the span, `None` when deferred.
    chosen: Vec<Option<S::Row>>,
}

enum Step {
    Found,
    Exhausted,
    Budget,
}

impl<S: RowSpace> Search<S> {
    fn run(&mut self, t: usize, space: &mut S) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::Budget;
        }
        let n = self.order.len();
        if t == n {
            return Step::Found;
        }
        if space.rank() == self.k {
            let all = (t..n).all(|s| {
                let v = self.order[s];
                space.feasible(v, self.allowed[v])
            });
            if all {
                for s in t..n {
                    self.chosen[s] = None;
                }
                return Step::Found;
            }
            return Step::Exhausted;
        }
        let v = self.order[t];
        if space.feasible(v, self.allowed[v]) {
            self.chosen[t] = None;
            match self.run(t + 1, space) {
                Step::Exhausted => {}
                other => return other,
            }
        }
        let base = space.rank();
        for idx in 0..self.candidates[t].len() {
            let row = self.candidates[t][idx];
            if !space.push(row) {
                continue;
            }
            self.chosen[t] = Some(row);
            let step = self.run(t + 1, space);
            match step {
                Step::Exhausted => space.truncate(base),
                other => return other,
            }
        }
        Step::Exhausted
    }

    /// Completes deferred positions inside the final span.
    fn witness(&self, space: &S) -> Matrix<u32> {
        let n = self.order.len();
        let mut rows = vec![Vec::new(); n];
        for (s, &v) in self.order.iter().enumerate() {
            let row = match self.chosen[s] {
                Some(r) => r,
                None => space
                    .solve(v, self.allowed[v])
                    .expect("deferred vertex is realizable in the final span"),
            };
            rows[v] = space.to_residues(&row);
        }
        Matrix::from_rows(rows).expect("square")
    }
}

/// Vertex visiting order: ascending degree, ties by index.
fn vertex_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    order
}

/// All vectors with entry 1 at `v`, zeros outside `N[v]`, sorted by number of
/// nonzeros (stable in enumeration order).
fn candidate_vectors(g: &Graph, v: usize, q: u32) -> Vec<Vec<u32>> {
    let free: Vec<usize> = g.neighbors(v).collect();
    let mut out = Vec::with_capacity((q as usize).pow(free.len() as u32));
    let total = (q as u64).pow(free.len() as u32);
    for code in 0..total {
        let mut c = code;
        let mut row = vec![0u32; g.n()];
        row[v] = 1;
        for &u in &free {
            row[u] = (c % q as u64) as u32;
            c /= q as u64;
        }
        out.push(row);
    }
    out.sort_by_key(|r| r.iter().filter(|&&x| x != 0).count());
    out
}

fn run_search<S: RowSpace>(
    g: &Graph,
    q: u32,
    k: usize,
    budget: u64,
    mut space: S,
    encode: impl Fn(&[u32]) -> S::Row,
) -> (Outcome, u64) {
    let order = vertex_order(g);
    let allowed: Vec<u64> = (0..g.n()).map(|v| g.neighbor_mask(v) | 1 << v).collect();
    let candidates = order
        .iter()
        .map(|&v| candidate_vectors(g, v, q).iter().map(|r| encode(r)).collect())
        .collect();
    let mut search = Search {
        chosen: vec![None; g.n()],
        order,
        allowed,
        candidates,
        k,
        budget,
        nodes: 0,
    };
    let outcome = match search.run(0, &mut space) {
        Step::Found => Outcome::Found(search.witness(&space)),
        Step::Exhausted => Outcome::Infeasible,
        Step::Budget => Outcome::OutOfBudget,
    };
    (outcome, search.nodes)
}

/// Dispatches to the GF(2) bitmask backend or the dense GF(q) backend.
pub(crate) fn decide(g: &Graph, field: PrimeField, k: usize, budget: u64) -> (Outcome, u64) {
    let q = field.modulus();
    if q == 2 && g.n() <= 64 {
        run_search(g, q, k, budget, Gf2Space::new(g.n()), |r| {
            r.iter().enumerate().fold(0u64, |m, (j, &x)| m | (x as u64) << j)
        })
    } else {
        assert!(
            g.n() <= MAX_DENSE,
            "dense backend supports at most {MAX_DENSE} vertices"
        );
        run_search(g, q, k, budget, DenseSpace::new(field, g.n()), |r| {
            let mut out: DenseRow = [0; MAX_DENSE];
            for (x, &y) in out.iter_mut().zip(r) {
                *x = y as u16;
            }
            out
        })
    }
}

/// Runs the dense backend even for GF(2); lets tests cross-check backends.
#[cfg(test)]
pub(crate) fn decide_dense(g: &Graph, field: PrimeField, k: usize, budget: u64) -> (Outcome, u64) {
    run_search(
        g,
        field.modulus(),
        k,
        budget,
        DenseSpace::new(field, g.n()),
        |r| {
            let mut out: DenseRow = [0; MAX_DENSE];
            for (x, &y) in out.iter_mut().zip(r) {
                *x = y as u16;
            }
            out
        },
    )
}
