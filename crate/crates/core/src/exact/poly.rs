use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::GaussianRational;
use crate::error::{Error, Result};

/// Integer lattice vector; used both as a monomial exponent and as a lattice point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Exponent(pub Vec<i64>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Exponent(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn dot(&self, w: &[i64]) -> i64 {
        self.0.iter().zip(w).map(|(a, b)| a * b).sum()
    }

    /// Appends one coordinate (used when adding a variable).
    pub fn extended(&self, last: i64) -> Exponent {
        let mut v = self.0.clone();
        v.push(last);
        Exponent(v)
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<i64>> for Exponent {
    fn from(v: Vec<i64>) -> Self {
        Exponent(v)
    }
}

impl<const N: usize> From<[i64; N]> for Exponent {
    fn from(v: [i64; N]) -> Self {
        Exponent(v.to_vec())
    }
}

/// Sparse polynomial in `nvars` variables over ℚ(i). Terms are kept in
/// lexicographic exponent order and zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, GaussianRational>,
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: GaussianRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Exponent::zero(nvars), c);
        p
    }

    pub fn monomial(exp: Exponent, c: GaussianRational) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, GaussianRational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::VariableCountMismatch {
                    left: e.len(),
                    right: nvars,
                });
            }
            if !e.is_nonnegative() {
                return Err(Error::NegativeExponent(e.0));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Integer-coefficient shorthand, handy in tests and examples.
    pub fn from_int_terms(nvars: usize, terms: &[(&[i64], i64)]) -> Self {
        Self::from_terms(
            nvars,
            terms
                .iter()
                .map(|(e, c)| (Exponent(e.to_vec()), GaussianRational::from_integer(*c))),
        )
        .expect("well-formed integer terms")
    }

    pub fn add_term(&mut self, exp: Exponent, c: GaussianRational) {
        debug_assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponent) -> GaussianRational {
        self.terms.get(e).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    /// Exact product.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.nvars, GaussianRational::one());
        for _ in 0..k {
            out = out.product(self).expect("same variable count");
        }
        out
    }

    /// `x_i ∂g/∂x_i`, with `i` zero-based.
    pub fn euler_derivative(&self, i: usize) -> Result<Self> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * &GaussianRational::from_integer(e.0[i]));
        }
        Ok(out)
    }

    /// Keeps only the terms whose exponent satisfies `keep`.
    pub fn restrict<F: Fn(&Exponent) -> bool>(&self, keep: F) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Same polynomial viewed in `nvars + extra` variables.
    pub fn embed(&self, extra: usize) -> Self {
        Self {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut v = e.0.clone();
                    v.extend(std::iter::repeat_n(0, extra));
                    (Exponent(v), c.clone())
                })
                .collect(),
        }
    }

    /// Floating-point coefficients, for numerical evaluation.
    pub fn to_complex_terms(&self) -> Vec<(Vec<i64>, Complex64)> {
        self.terms
            .iter()
            .map(|(e, c)| {
                let (re, im) = c.to_f64_parts();
                (e.0.clone(), Complex64::new(re, im))
            })
            .collect()
    }
}

/// Writes e.g. `x1^2 + -3*x2^3`; mostly for diagnostics.
impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, k)
                    }
                })
                .collect();
            let coeff = if c.is_real() { c.to_string() } else { format!("({c})") };
            match (mono.is_empty(), c.is_one()) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{}*{}", coeff, mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(&[i64], i64)]) -> SparsePolynomial {
        SparsePolynomial::from_int_terms(terms[0].0.len(), terms)
    }

    #[test]
    fn difference_of_squares() {
        let a = p(&[(&[1, 0], 1), (&[0, 1], 1)]);
        let b = p(&[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!(a.product(&b).unwrap(), p(&[(&[2, 0], 1), (&[0, 2], -1)]));
    }

    #[test]
    fn product_with_one() {
        let a = p(&[(&[2, 0], 1), (&[0, 3], 1)]);
        let one = SparsePolynomial::constant(2, GaussianRational::one());
        assert_eq!(a.product(&one).unwrap(), a);
    }

    #[test]
    fn gaussian_square() {
        // (x + i y)^2 = x^2 + 2i xy - y^2
        let i = GaussianRational::i();
        let a = SparsePolynomial::from_terms(
            2,
            [
                (Exponent::from([1, 0]), GaussianRational::one()),
                (Exponent::from([0, 1]), i.clone()),
            ],
        )
        .unwrap();
        let expected = SparsePolynomial::from_terms(
            2,
            [
                (Exponent::from([2, 0]), GaussianRational::one()),
                (Exponent::from([1, 1]), i.scale(&num_rational::BigRational::from_integer(2.into()))),
                (Exponent::from([0, 2]), GaussianRational::from_integer(-1)),
            ],
        )
        .unwrap();
        assert_eq!(a.product(&a).unwrap(), expected);
    }

    #[test]
    fn mismatched_product_fails() {
        let a = SparsePolynomial::constant(2, GaussianRational::one());
        let b = SparsePolynomial::constant(3, GaussianRational::one());
        assert!(matches!(a.product(&b), Err(Error::VariableCountMismatch { .. })));
    }

    #[test]
    fn euler_derivatives() {
        let g = p(&[(&[2, 0], 1), (&[0, 3], 1)]);
        assert_eq!(g.euler_derivative(0).unwrap(), p(&[(&[2, 0], 2)]));
        let h = p(&[(&[2, 2], 1)]);
        assert_eq!(h.euler_derivative(1).unwrap(), p(&[(&[2, 2], 2)]));
        let c = p(&[(&[0, 0], 7)]);
        assert!(c.euler_derivative(0).unwrap().is_zero());
        assert!(matches!(
            g.euler_derivative(2),
            Err(Error::IndexOutOfRange { index: 2, nvars: 2 })
        ));
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = p(&[(&[1, 0], 1), (&[0, 1], 1)]);
        let d = a.checked_sub(&a).unwrap();
        assert!(d.is_zero());
        assert!(d.support().is_empty());
    }

    #[test]
    fn negative_exponents_rejected() {
        let r = SparsePolynomial::from_terms(1, [(Exponent::from([-1]), GaussianRational::one())]);
        assert!(matches!(r, Err(Error::NegativeExponent(_))));
    }
}
