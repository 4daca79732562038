use crate::algebra::{Field, Matrix};
use crate::graph::{Coloring, Graph, GraphError};

/// The 0/1 fit of `g` built from a clique cover: `M[i][j] = 1` iff `i` and
/// `j` share a class. Its rank is exactly the number of classes.
///
/// ```
/// use minrank_lab::algebra::{mat_rank, PrimeField};
/// use minrank_lab::geom::fit_from_coloring;
/// use minrank_lab::graph::{clique_cover_exact, is_fit, Graph};
///
/// let f2 = PrimeField::new(2).unwrap();
/// let c5 = Graph::cycle(5);
/// let (c, cover) = clique_cover_exact(&c5).unwrap();
/// let m = fit_from_coloring(&f2, &c5, &cover).unwrap();
/// assert!(is_fit(&f2, &m, &c5).unwrap());
/// assert_eq!(mat_rank(&f2, &m), c);
/// ```
pub fn fit_from_coloring<F: Field>(
    field: &F,
    g: &Graph,
    cover: &Coloring,
) -> Result<Matrix<F::Elem>, GraphError> {
    cover.check_clique_cover(g)?;
    Ok(Matrix::from_fn(g.n(), g.n(), |i, j| {
        if cover.class_of(i) == cover.class_of(j) {
            field.one()
        } else {
            field.zero()
        }
    }))
}

/// Orthogonal representation from a clique cover: vertex `i` maps to the
/// standard basis vector of its class in `R^c`. Returns the vectors and their
/// Gram matrix.
pub fn orthogonal_rep_from_cover(
    g: &Graph,
    cover: &Coloring,
) -> Result<(Vec<Vec<f64>>, Matrix<f64>), GraphError> {
    cover.check_clique_cover(g)?;
    let c = cover.num_colors();
    let vectors: Vec<Vec<f64>> = (0..g.n())
        .map(|i| {
            let mut v = vec![0.0; c];
            v[cover.class_of(i)] = 1.0;
            v
        })
        .collect();
    let gram = Matrix::from_fn(g.n(), g.n(), |i, j| {
        vectors[i].iter().zip(&vectors[j]).map(|(a, b)| a * b).sum()
    });
    Ok((vectors, gram))
}
