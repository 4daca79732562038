use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::PatternError;
use crate::algebra::{parse_rational, Field};

/// Sparse polynomial in `num_vars` variables with coefficients in a field.
///
/// Terms map exponent vectors to coefficients. Zero coefficients are never
/// stored, so the zero polynomial has no terms and two polynomials are equal
/// iff their term maps are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly<T> {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, T>,
}

impl<T: Clone + PartialEq> MultiPoly<T> {
    pub fn zero(num_vars: usize) -> Self {
        MultiPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<F: Field<Elem = T>>(field: &F, num_vars: usize, c: T) -> Self {
        Self::from_terms(field, num_vars, [(vec![0; num_vars], c)]).expect("arity matches")
    }

    /// The variable `x_i`.
    pub fn var<F: Field<Elem = T>>(field: &F, num_vars: usize, i: usize) -> Result<Self, PatternError> {
        if i >= num_vars {
            return Err(PatternError::Arity {
                expected: num_vars,
                got: i + 1,
            });
        }
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Self::from_terms(field, num_vars, [(e, field.one())])
    }

    /// Sums coefficients of repeated exponent vectors and drops zeros.
    pub fn from_terms<F: Field<Elem = T>>(
        field: &F,
        num_vars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, T)>,
    ) -> Result<Self, PatternError> {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(PatternError::Arity {
                    expected: num_vars,
                    got: e.len(),
                });
            }
            p.add_term(field, e, c);
        }
        Ok(p)
    }

    /// Shorthand for integer coefficients.
    ///
    /// ```
    /// use minrank_lab::algebra::PrimeField;
    /// use minrank_lab::pattern::MultiPoly;
    ///
    /// let f2 = PrimeField::new(2).unwrap();
    /// // x^2 + x vanishes on all of GF(2)
    /// let p = MultiPoly::from_i64_terms(&f2, 1, &[(&[2], 1), (&[1], 1)]).unwrap();
    /// assert_eq!(p.degree(), 2);
    /// assert!(f2.elements().all(|t| p.eval(&f2, &[t]).unwrap() == 0));
    /// ```
    pub fn from_i64_terms<F: Field<Elem = T>>(
        field: &F,
        num_vars: usize,
        terms: &[(&[u32], i64)],
    ) -> Result<Self, PatternError> {
        Self::from_terms(
            field,
            num_vars,
            terms.iter().map(|(e, c)| (e.to_vec(), field.from_i64(*c))),
        )
    }

    fn add_term<F: Field<Elem = T>>(&mut self, field: &F, e: Vec<u32>, c: T) {
        let sum = match self.terms.get(&e) {
            Some(old) => field.add(old, &c),
            None => c,
        };
        if field.is_zero(&sum) {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &T)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> Option<&T> {
        self.terms.get(exps)
    }

    /// Maximum total degree; 0 for constants and the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Maximum total degree in the variables `lo..hi`.
    pub fn partial_degree(&self, lo: usize, hi: usize) -> u32 {
        self.terms
            .keys()
            .map(|e| e[lo..hi].iter().sum())
            .max()
            .unwrap_or(0)
    }

    fn check_arity(&self, other: &Self) -> Result<(), PatternError> {
        if self.num_vars == other.num_vars {
            Ok(())
        } else {
            Err(PatternError::Arity {
                expected: self.num_vars,
                got: other.num_vars,
            })
        }
    }

    pub fn add<F: Field<Elem = T>>(&self, field: &F, other: &Self) -> Result<Self, PatternError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(field, e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub<F: Field<Elem = T>>(&self, field: &F, other: &Self) -> Result<Self, PatternError> {
        self.add(field, &other.scale(field, &field.neg(&field.one())))
    }

    pub fn scale<F: Field<Elem = T>>(&self, field: &F, c: &T) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (e, a) in &self.terms {
            out.add_term(field, e.clone(), field.mul(a, c));
        }
        out
    }

    pub fn mul<F: Field<Elem = T>>(&self, field: &F, other: &Self) -> Result<Self, PatternError> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.num_vars);
        for (ea, a) in &self.terms {
            for (eb, b) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(field, e, field.mul(a, b));
            }
        }
        Ok(out)
    }

    pub fn eval<F: Field<Elem = T>>(&self, field: &F, point: &[T]) -> Result<T, PatternError> {
        if point.len() != self.num_vars {
            return Err(PatternError::Arity {
                expected: self.num_vars,
                got: point.len(),
            });
        }
        let mut acc = field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = field.mul(&t, x);
                }
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Re-reads the polynomial in `total_vars` variables, variable `i`
    /// becoming variable `i + offset`.
    pub fn embed(&self, total_vars: usize, offset: usize) -> Result<Self, PatternError> {
        if offset + self.num_vars > total_vars {
            return Err(PatternError::Arity {
                expected: total_vars,
                got: offset + self.num_vars,
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut big = vec![0; total_vars];
                big[offset..offset + self.num_vars].copy_from_slice(e);
                (big, c.clone())
            })
            .collect();
        Ok(MultiPoly {
            num_vars: total_vars,
            terms,
        })
    }

    /// Keeps the terms accepted by `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&[u32]) -> bool) -> Self {
        MultiPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Maps exponent vectors through `f`, which may change the arity to
    /// `num_vars`. Coefficients of colliding images are summed.
    pub fn map_exponents<F: Field<Elem = T>>(
        &self,
        field: &F,
        num_vars: usize,
        mut f: impl FnMut(&[u32]) -> Vec<u32>,
    ) -> Result<Self, PatternError> {
        Self::from_terms(field, num_vars, self.terms.iter().map(|(e, c)| (f(e), c.clone())))
    }

    /// `{"num_vars":N,"terms":[{"exps":[..],"coef":..}]}`.
    pub fn to_json<F: Field<Elem = T>>(&self, field: &F) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!({ "exps": e, "coef": field.elem_to_json(c) }))
            .collect();
        json!({ "num_vars": self.num_vars, "terms": terms })
    }

    /// Reads the JSON form; coefficients may be integers or `"a/b"` strings
    /// and are mapped into `field`.
    pub fn from_json<F: Field<Elem = T>>(field: &F, v: &Value) -> Result<Self, PatternError> {
        let bad = |what: &str| PatternError::Parse(what.to_string());
        let num_vars = v
            .get("num_vars")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing \"num_vars\""))? as usize;
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"terms\""))?;
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            let exps = t
                .get("exps")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("term without \"exps\""))?
                .iter()
                .map(|x| x.as_u64().and_then(|k| u32::try_from(k).ok()))
                .collect::<Option<Vec<u32>>>()
                .ok_or_else(|| bad("exponents must be nonnegative integers"))?;
            let coef = parse_rational(t.get("coef").ok_or_else(|| bad("term without \"coef\""))?)?;
            parsed.push((exps, field.from_rational(&coef)?));
        }
        Self::from_terms(field, num_vars, parsed)
    }
}

/// Evaluates `p` at `point`.
pub fn poly_eval<F: Field>(
    field: &F,
    p: &MultiPoly<F::Elem>,
    point: &[F::Elem],
) -> Result<F::Elem, PatternError> {
    p.eval(field, point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    /// prod_{i<d} (1 + x_i + y_i), x = vars 0..d, y = vars d..2d.
    fn product_poly(field: &PrimeField, d: usize) -> MultiPoly<u32> {
        let mut p = MultiPoly::constant(field, 2 * d, 1);
        for i in 0..d {
            let factor = MultiPoly::constant(field, 2 * d, 1)
                .add(field, &MultiPoly::var(field, 2 * d, i).unwrap())
                .unwrap()
                .add(field, &MultiPoly::var(field, 2 * d, d + i).unwrap())
                .unwrap();
            p = p.mul(field, &factor).unwrap();
        }
        p
    }

    #[test]
    fn eval_examples() {
        let f = f2();
        let x = MultiPoly::var(&f, 1, 0).unwrap();
        assert_eq!(poly_eval(&f, &x, &[0]).unwrap(), 0);
        let p = x.mul(&f, &x).unwrap().add(&f, &x).unwrap();
        for t in f.elements() {
            assert_eq!(p.eval(&f, &[t]).unwrap(), 0);
        }
        let pp = product_poly(&f, 2);
        assert_eq!(pp.eval(&f, &[0, 0, 0, 1]).unwrap(), 0);
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(pp.eval(&f, &[a, b, a, b]).unwrap(), 1);
            }
        }
        assert!(matches!(x.eval(&f, &[0, 1]), Err(PatternError::Arity { .. })));
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let f = f2();
        let x = MultiPoly::var(&f, 2, 0).unwrap();
        assert!(x.add(&f, &x).unwrap().is_zero());
        let p = MultiPoly::from_i64_terms(&f, 2, &[(&[1, 0], 1), (&[1, 0], 1), (&[0, 2], 3)]).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.degree(), 2);
        assert_eq!(p.partial_degree(0, 1), 0);
    }

    #[test]
    fn json_round_trip() {
        let q = Rationals;
        let p = MultiPoly::from_terms(
            &q,
            2,
            [
                (vec![1, 0], q.from_i64(3)),
                (vec![0, 2], q.div(&q.from_i64(-1), &q.from_i64(2)).unwrap()),
            ],
        )
        .unwrap();
        let v = p.to_json(&q);
        assert_eq!(v["terms"][0]["coef"], json!("-1/2"));
        assert_eq!(MultiPoly::from_json(&q, &v).unwrap(), p);

        let f5 = PrimeField::new(5).unwrap();
        let v: Value = serde_json::from_str(r#"{"num_vars":1,"terms":[{"exps":[1],"coef":"1/2"}]}"#).unwrap();
        let p = MultiPoly::from_json(&f5, &v).unwrap();
        assert_eq!(p.coefficient(&[1]), Some(&3));
        let bad: Value = serde_json::from_str(r#"{"num_vars":2,"terms":[{"exps":[1],"coef":1}]}"#).unwrap();
        assert!(MultiPoly::from_json(&f5, &bad).is_err());
    }

    #[test]
    fn embed_shifts_variables() {
        let f = f2();
        let x = MultiPoly::var(&f, 1, 0).unwrap();
        let y = x.embed(2, 1).unwrap();
        assert_eq!(y, MultiPoly::var(&f, 2, 1).unwrap());
        assert!(x.embed(1, 1).is_err());
    }

    fn arb_poly(q: u32, nv: usize) -> impl Strategy<Value = Vec<(Vec<u32>, u32)>> {
        prop::collection::vec((prop::collection::vec(0u32..3, nv), 0..q), 0..5)
    }

    proptest! {
        #[test]
        fn ring_operations_commute_with_evaluation(
            a in arb_poly(5, 3),
            b in arb_poly(5, 3),
            pt in prop::collection::vec(0u32..5, 3),
        ) {
            let f = PrimeField::new(5).unwrap();
            let pa = MultiPoly::from_terms(&f, 3, a).unwrap();
            let pb = MultiPoly::from_terms(&f, 3, b).unwrap();
            let (va, vb) = (pa.eval(&f, &pt).unwrap(), pb.eval(&f, &pt).unwrap());
            prop_assert_eq!(pa.add(&f, &pb).unwrap().eval(&f, &pt).unwrap(), f.add(&va, &vb));
            prop_assert_eq!(pa.sub(&f, &pb).unwrap().eval(&f, &pt).unwrap(), f.sub(&va, &vb));
            prop_assert_eq!(pa.mul(&f, &pb).unwrap().eval(&f, &pt).unwrap(), f.mul(&va, &vb));
        }
    }
}
