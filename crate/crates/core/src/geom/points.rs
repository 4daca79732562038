use serde::{Deserialize, Serialize};

use super::GeomError;
use crate::algebra::{Field, Matrix};
use crate::graph::{Coloring, Graph, GraphError};

/// One point of `R^dim` per vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointConfig {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
}

impl PointConfig {
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self, GeomError> {
        let cfg = PointConfig { dim, points };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), GeomError> {
        for p in &self.points {
            if p.len() != self.dim {
                return Err(GeomError::InvalidConfig(format!(
                    "point of length {} in dimension {}",
                    p.len(),
                    self.dim
                )));
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(GeomError::InvalidConfig("non-finite coordinate".into()));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, GeomError> {
        let cfg: PointConfig =
            serde_json::from_value(v.clone()).map_err(|e| GeomError::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Sphere `i` has center `centers[i]` and radius `radii[i] > 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphereConfig {
    pub dim: usize,
    pub centers: Vec<Vec<f64>>,
    pub radii: Vec<f64>,
}

impl SphereConfig {
    pub fn new(dim: usize, centers: Vec<Vec<f64>>, radii: Vec<f64>) -> Result<Self, GeomError> {
        let cfg = SphereConfig { dim, centers, radii };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), GeomError> {
        PointConfig {
            dim: self.dim,
            points: self.centers.clone(),
        }
        .validate()?;
        if self.radii.len() != self.centers.len() {
            return Err(GeomError::InvalidConfig(format!(
                "{} radii for {} centers",
                self.radii.len(),
                self.centers.len()
            )));
        }
        if self.radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            return Err(GeomError::InvalidConfig(
                "radii must be positive and finite".into(),
            ));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, GeomError> {
        let cfg: SphereConfig =
            serde_json::from_value(v.clone()).map_err(|e| GeomError::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

/// `d` points in `R^max(d-1, 1)` at pairwise distance 1.
///
/// Point `i` sits above the centroid of points `0..i` at height
/// `sqrt(1 - R_i^2)` in a fresh coordinate, where `R_i^2 = (i-1)/(2i)` is the
/// squared circumradius of a unit simplex on `i` points.
///
/// ```
/// use minrank_lab::geom::regular_simplex;
/// let tri = regular_simplex(3);
/// assert_eq!(tri.points[1], vec![1.0, 0.0]);
/// assert!((tri.points[2][1] - 3f64.sqrt() / 2.0).abs() < 1e-15);
/// ```
pub fn regular_simplex(d: usize) -> PointConfig {
    let dim = d.saturating_sub(1).max(1);
    let mut points: Vec<Vec<f64>> = Vec::with_capacity(d);
    for i in 0..d {
        let mut p = vec![0.0; dim];
        if i > 0 {
            for q in &points {
                for (a, b) in p.iter_mut().zip(q) {
                    *a += b / i as f64;
                }
            }
            let r2 = (i as f64 - 1.0) / (2.0 * i as f64);
            p[i - 1] = (1.0 - r2).sqrt();
        }
        points.push(p);
    }
    PointConfig { dim, points }
}

/// Places every vertex at the simplex vertex of its color class. With a
/// proper coloring of `g` by `c` colors, every edge has length 1 in
/// `R^max(c-1, 1)`.
pub fn unit_distance_points(g: &Graph, coloring: &Coloring) -> Result<PointConfig, GeomError> {
    if coloring.n() != g.n() {
        return Err(GeomError::InvalidConfig(format!(
            "coloring of {} vertices for a graph on {}",
            coloring.n(),
            g.n()
        )));
    }
    coloring
        .check_proper(g)
        .map_err(|(i, j)| GraphError::ImproperOnGraph(i, j))?;
    let simplex = regular_simplex(coloring.num_colors());
    let points = (0..g.n())
        .map(|v| simplex.points[coloring.class_of(v)].clone())
        .collect();
    Ok(PointConfig {
        dim: simplex.dim,
        points,
    })
}

/// `M = A + B + C` with `M[i][j] = 1 - |u_i - u_j|^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitDistanceParts<T> {
    pub m: Matrix<T>,
    /// `1 - |u_i|^2`, constant along rows.
    pub a: Matrix<T>,
    /// `-|u_j|^2`, constant along columns.
    pub b: Matrix<T>,
    /// `2 <u_i, u_j>`.
    pub c: Matrix<T>,
}

/// `M = A + B + R + C` with `M[i][j] = (r_i + r_j)^2 - |u_i - u_j|^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereParts<T> {
    pub m: Matrix<T>,
    /// `r_i^2 - |u_i|^2`.
    pub a: Matrix<T>,
    /// `r_j^2 - |u_j|^2`.
    pub b: Matrix<T>,
    /// `2 r_i r_j`.
    pub r: Matrix<T>,
    /// `2 <u_i, u_j>`.
    pub c: Matrix<T>,
}

fn dot<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter()
        .zip(b)
        .fold(field.zero(), |acc, (x, y)| field.add(&acc, &field.mul(x, y)))
}

fn dist2<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter().zip(b).fold(field.zero(), |acc, (x, y)| {
        let d = field.sub(x, y);
        field.add(&acc, &field.mul(&d, &d))
    })
}

fn check_lengths<T>(points: &[Vec<T>]) -> Result<(), GeomError> {
    match points.first() {
        Some(p) if points.iter().any(|q| q.len() != p.len()) => {
            Err(GeomError::InvalidConfig("points of different lengths".into()))
        }
        _ => Ok(()),
    }
}

/// Exact unit-distance matrix and its parts over any field.
pub fn unit_distance_matrix_exact<F: Field>(
    field: &F,
    points: &[Vec<F::Elem>],
) -> Result<UnitDistanceParts<F::Elem>, GeomError> {
    check_lengths(points)?;
    let n = points.len();
    let two = field.from_i64(2);
    let norms: Vec<F::Elem> = points.iter().map(|p| dot(field, p, p)).collect();
    Ok(UnitDistanceParts {
        m: Matrix::from_fn(n, n, |i, j| {
            field.sub(&field.one(), &dist2(field, &points[i], &points[j]))
        }),
        a: Matrix::from_fn(n, n, |i, _| field.sub(&field.one(), &norms[i])),
        b: Matrix::from_fn(n, n, |_, j| field.neg(&norms[j])),
        c: Matrix::from_fn(n, n, |i, j| field.mul(&two, &dot(field, &points[i], &points[j]))),
    })
}

/// Exact touching-spheres matrix and its parts over any field.
pub fn touching_spheres_matrix_exact<F: Field>(
    field: &F,
    centers: &[Vec<F::Elem>],
    radii: &[F::Elem],
) -> Result<SphereParts<F::Elem>, GeomError> {
    check_lengths(centers)?;
    if centers.len() != radii.len() {
        return Err(GeomError::InvalidConfig("one radius per center".into()));
    }
    let n = centers.len();
    let two = field.from_i64(2);
    let own: Vec<F::Elem> = centers
        .iter()
        .zip(radii)
        .map(|(u, r)| field.sub(&field.mul(r, r), &dot(field, u, u)))
        .collect();
    Ok(SphereParts {
        m: Matrix::from_fn(n, n, |i, j| {
            let s = field.add(&radii[i], &radii[j]);
            field.sub(&field.mul(&s, &s), &dist2(field, &centers[i], &centers[j]))
        }),
        a: Matrix::from_fn(n, n, |i, _| own[i].clone()),
        b: Matrix::from_fn(n, n, |_, j| own[j].clone()),
        r: Matrix::from_fn(n, n, |i, j| field.mul(&two, &field.mul(&radii[i], &radii[j]))),
        c: Matrix::from_fn(n, n, |i, j| {
            field.mul(&two, &dot(field, &centers[i], &centers[j]))
        }),
    })
}

/// Float arithmetic with the field interface; only used to share the
/// formulas above with the float constructors.
#[derive(Clone, Copy, Debug)]
struct Reals;

impl Field for Reals {
    type Elem = f64;

    fn zero(&self) -> f64 {
        0.0
    }
    fn one(&self) -> f64 {
        1.0
    }
    fn add(&self, a: &f64, b: &f64) -> f64 {
        a + b
    }
    fn sub(&self, a: &f64, b: &f64) -> f64 {
        a - b
    }
    fn mul(&self, a: &f64, b: &f64) -> f64 {
        a * b
    }
    fn neg(&self, a: &f64) -> f64 {
        -a
    }
    fn inv(&self, a: &f64) -> Result<f64, crate::algebra::AlgebraError> {
        Ok(1.0 / a)
    }
    fn is_zero(&self, a: &f64) -> bool {
        *a == 0.0
    }
    fn from_i64(&self, v: i64) -> f64 {
        v as f64
    }
    fn from_rational(&self, r: &num_rational::BigRational) -> Result<f64, crate::algebra::AlgebraError> {
        use num_traits::ToPrimitive;
        r.to_f64().ok_or(crate::algebra::AlgebraError::NonFinite)
    }
    fn elem_to_json(&self, a: &f64) -> serde_json::Value {
        serde_json::Value::from(*a)
    }
}

/// Unit-distance matrix of a point configuration; rank at most `dim + 2`.
///
/// ```
/// use minrank_lab::algebra::real_rank;
/// use minrank_lab::geom::{unit_distance_matrix, PointConfig};
///
/// let pts = PointConfig::new(1, vec![vec![0.0], vec![1.0]]).unwrap();
/// let parts = unit_distance_matrix(&pts);
/// assert_eq!(parts.m.to_rows(), vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
/// assert!(real_rank(&parts.m, 1e-9).unwrap() <= pts.dim + 2);
/// ```
pub fn unit_distance_matrix(pts: &PointConfig) -> UnitDistanceParts<f64> {
    unit_distance_matrix_exact(&Reals, &pts.points).expect("validated config")
}

/// Touching-spheres matrix of a sphere configuration; rank at most `dim + 3`.
pub fn touching_spheres_matrix(cfg: &SphereConfig) -> SphereParts<f64> {
    touching_spheres_matrix_exact(&Reals, &cfg.centers, &cfg.radii).expect("validated config")
}
