use super::GeomError;
use crate::algebra::{Field, Matrix};
use crate::pattern::MultiPoly;

/// `P(x, y) = <F(x), H(y)>` for a symmetric `P` of degree at most 3 in
/// `x = (x_1..x_d)`, `y = (y_1..y_d)`.
///
/// Monomials are bucketed by their x- and y-degrees `(a, b)`:
///
/// | `(a, b)`            | bucket                          |
/// |---------------------|---------------------------------|
/// | `(0, 0)`            | constant `c`                    |
/// | `(1, _)`            | `x_i f_i(y)`                    |
/// | `(0, 1)`, `(>=2, 1)`| `y_j h_j(x)`                    |
/// | `(>=2, 0)`          | pure part `g(x)`                |
/// | `(0, >=2)`          | `g(y)`, the twin of `g(x)`      |
///
/// giving `F(x) = (1, g(x), x_1..x_d, h_1(x)..h_d(x))` and
/// `H(y) = (c + g(y), 1, f_1(y)..f_d(y), y_1..y_d)`. When `g` vanishes its
/// coordinate is dropped and the length is `2d + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearFactorization<T> {
    pub d: usize,
    pub c: T,
    /// Pure part, in `d` variables.
    pub g: MultiPoly<T>,
    pub f: Vec<MultiPoly<T>>,
    pub h: Vec<MultiPoly<T>>,
    /// Coordinates of `F`, each in `d` variables.
    pub f_coords: Vec<MultiPoly<T>>,
    /// Coordinates of `H`, each in `d` variables.
    pub h_coords: Vec<MultiPoly<T>>,
}

impl<T: Clone + PartialEq> BilinearFactorization<T> {
    /// Length `L` of `F` and `H`.
    pub fn len(&self) -> usize {
        self.f_coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f_coords.is_empty()
    }

    /// Coordinates whose `F` and `H` parts are both nonzero; a rank bound
    /// at least as good as [`Self::len`].
    pub fn effective_len(&self) -> usize {
        self.f_coords
            .iter()
            .zip(&self.h_coords)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .count()
    }

    /// `<F(x), H(y)>` as a polynomial in `2d` variables.
    pub fn inner_product<F: Field<Elem = T>>(&self, field: &F) -> Result<MultiPoly<T>, GeomError> {
        let two_d = 2 * self.d;
        let mut acc = MultiPoly::zero(two_d);
        for (a, b) in self.f_coords.iter().zip(&self.h_coords) {
            let prod = a.embed(two_d, 0)?.mul(field, &b.embed(two_d, self.d)?)?;
            acc = acc.add(field, &prod)?;
        }
        Ok(acc)
    }

    /// `{"d":..,"length":..,"c":..,"g":poly,"F":[poly..],"H":[poly..]}`.
    pub fn to_json<F: Field<Elem = T>>(&self, field: &F) -> serde_json::Value {
        let polys =
            |ps: &[MultiPoly<T>]| -> Vec<serde_json::Value> { ps.iter().map(|p| p.to_json(field)).collect() };
        serde_json::json!({
            "d": self.d,
            "length": self.len(),
            "effective_length": self.effective_len(),
            "c": field.elem_to_json(&self.c),
            "g": self.g.to_json(field),
            "F": polys(&self.f_coords),
            "H": polys(&self.h_coords),
        })
    }

    /// `(F(x), H(x))` at one point.
    pub fn vectors_at<F: Field<Elem = T>>(&self, field: &F, x: &[T]) -> Result<(Vec<T>, Vec<T>), GeomError> {
        let eval = |coords: &[MultiPoly<T>]| -> Result<Vec<T>, GeomError> {
            coords.iter().map(|p| Ok(p.eval(field, x)?)).collect()
        };
        Ok((eval(&self.f_coords)?, eval(&self.h_coords)?))
    }
}

/// Swaps the x and y halves of an exponent vector.
fn swap_halves(e: &[u32], d: usize) -> Vec<u32> {
    e[d..].iter().chain(&e[..d]).copied().collect()
}

/// Splits a symmetric degree-3 polynomial into a bilinear form.
///
/// ```
/// use minrank_lab::algebra::Rationals;
/// use minrank_lab::geom::pgraph_factorize;
/// use minrank_lab::pattern::MultiPoly;
///
/// // P = x_1 y_1
/// let p = MultiPoly::from_i64_terms(&Rationals, 2, &[(&[1, 1], 1)]).unwrap();
/// let fact = pgraph_factorize(&Rationals, &p, 1).unwrap();
/// assert!(fact.g.is_zero());
/// assert_eq!(fact.len(), 3);
/// assert_eq!(fact.inner_product(&Rationals).unwrap(), p);
/// ```
pub fn pgraph_factorize<F: Field>(
    field: &F,
    p: &MultiPoly<F::Elem>,
    d: usize,
) -> Result<BilinearFactorization<F::Elem>, GeomError> {
    if p.num_vars() != 2 * d {
        return Err(GeomError::Arity {
            expected: 2 * d,
            got: p.num_vars(),
        });
    }
    if p.degree() > 3 {
        return Err(GeomError::DegreeTooHigh(p.degree()));
    }
    if p.map_exponents(field, 2 * d, |e| swap_halves(e, d))? != *p {
        return Err(GeomError::NotSymmetric);
    }

    let mut c = field.zero();
    let mut g_terms = Vec::new();
    let mut f_terms = vec![Vec::new(); d];
    let mut h_terms = vec![Vec::new(); d];
    for (e, coef) in p.terms() {
        let (ex, ey) = e.split_at(d);
        let (a, b) = (ex.iter().sum::<u32>(), ey.iter().sum::<u32>());
        match (a, b) {
            (0, 0) => c = coef.clone(),
            (1, _) => {
                let i = ex.iter().position(|&k| k == 1).expect("x-degree 1");
                f_terms[i].push((ey.to_vec(), coef.clone()));
            }
            (_, 1) => {
                let j = ey.iter().position(|&k| k == 1).expect("y-degree 1");
                h_terms[j].push((ex.to_vec(), coef.clone()));
            }
            (_, 0) => g_terms.push((ex.to_vec(), coef.clone())),
            // (0, >=2) is the twin of a (>=2, 0) term
            _ => {}
        }
    }
    let g = MultiPoly::from_terms(field, d, g_terms)?;
    let f = f_terms
        .into_iter()
        .map(|t| MultiPoly::from_terms(field, d, t))
        .collect::<Result<Vec<_>, _>>()?;
    let h = h_terms
        .into_iter()
        .map(|t| MultiPoly::from_terms(field, d, t))
        .collect::<Result<Vec<_>, _>>()?;

    let one = MultiPoly::constant(field, d, field.one());
    let head = MultiPoly::constant(field, d, c.clone()).add(field, &g)?;
    let vars = (0..d)
        .map(|i| MultiPoly::var(field, d, i))
        .collect::<Result<Vec<_>, _>>()?;
    let mut f_coords = vec![one.clone()];
    let mut h_coords = vec![head];
    if !g.is_zero() {
        f_coords.push(g.clone());
        h_coords.push(one);
    }
    f_coords.extend(vars.iter().cloned());
    h_coords.extend(f.iter().cloned());
    f_coords.extend(h.iter().cloned());
    h_coords.extend(vars);

    let fact = BilinearFactorization {
        d,
        c,
        g,
        f,
        h,
        f_coords,
        h_coords,
    };
    if fact.inner_product(field)? != *p {
        return Err(GeomError::IdentityFailed);
    }
    Ok(fact)
}

/// `M[i][j] = <F(x_i), H(x_j)> = P(x_i, x_j)`; rank at most `fact.len()`.
pub fn pgraph_matrix<F: Field>(
    field: &F,
    fact: &BilinearFactorization<F::Elem>,
    reps: &[Vec<F::Elem>],
) -> Result<Matrix<F::Elem>, GeomError> {
    let vecs = reps
        .iter()
        .map(|x| fact.vectors_at(field, x))
        .collect::<Result<Vec<_>, _>>()?;
    let n = reps.len();
    Ok(Matrix::from_fn(n, n, |i, j| {
        vecs[i]
            .0
            .iter()
            .zip(&vecs[j].1)
            .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
    }))
}
