//! Differential forms in the logarithmic basis `x^m (dx)_I / x_I`, and the
//! leading pairs `(α, k)` that order them.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::exterior::merge_sign;
use crate::exact::{Exponent, GaussianRational, Rational, SparsePolynomial};

/// `Σ c_{I,m} x^m (dx)_I / x_I` with ascending zero-based index sets `I`.
#[derive(Clone, PartialEq, Eq)]
pub struct LogForm {
    nvars: usize,
    grade: usize,
    terms: BTreeMap<(Vec<usize>, Exponent), GaussianRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogTerm {
    pub indices: Vec<usize>,
    pub exponent: Exponent,
    pub coeff: GaussianRational,
}

impl LogForm {
    pub fn zero(nvars: usize, grade: usize) -> Self {
        Self {
            nvars,
            grade,
            terms: BTreeMap::new(),
        }
    }

    /// A function viewed as a 0-form.
    pub fn function(f: &SparsePolynomial) -> Self {
        let mut out = Self::zero(f.nvars(), 0);
        for (m, c) in f.terms() {
            out.push(Vec::new(), m.clone(), c.clone());
        }
        out
    }

    /// `h · dx_1 ∧ … ∧ dx_n = (x_1⋯x_n h) · (dx)_{[n]} / x_{[n]}`.
    pub fn holomorphic_top(h: &SparsePolynomial) -> Self {
        let n = h.nvars();
        let all: Vec<usize> = (0..n).collect();
        let ones = Exponent(vec![1; n]);
        let mut out = Self::zero(n, n);
        for (m, c) in h.terms() {
            out.push(all.clone(), m.add(&ones), c.clone());
        }
        out
    }

    /// Adds `c · x^m (dx)_I / x_I`; `indices` may be unsorted, the sorting sign
    /// is applied and repeated indices give zero.
    pub fn add_term(&mut self, indices: &[usize], m: Exponent, c: GaussianRational) -> Result<()> {
        if indices.len() != self.grade {
            return Err(Error::Malformed(format!(
                "index set {indices:?} does not have grade {}",
                self.grade
            )));
        }
        if m.len() != self.nvars {
            return Err(Error::VariableCountMismatch {
                left: m.len(),
                right: self.nvars,
            });
        }
        if !m.is_nonnegative() {
            return Err(Error::NegativeExponent(m.0));
        }
        let mut sorted: Vec<usize> = Vec::new();
        let mut sign = 1;
        for &i in indices {
            if i >= self.nvars {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    nvars: self.nvars,
                });
            }
            match merge_sign(&sorted, &[i]) {
                Some((s, sg)) => {
                    sorted = s;
                    sign *= sg;
                }
                None => return Ok(()),
            }
        }
        let c = if sign < 0 { -c } else { c };
        self.push(sorted, m, c);
        Ok(())
    }

    fn push(&mut self, indices: Vec<usize>, m: Exponent, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let key = (indices, m);
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn grade(&self) -> usize {
        self.grade
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Exponent, &GaussianRational)> {
        self.terms.iter().map(|((i, m), c)| (i, m, c))
    }

    pub fn coefficient(&self, indices: &[usize], m: &Exponent) -> GaussianRational {
        self.terms
            .get(&(indices.to_vec(), m.clone()))
            .cloned()
            .unwrap_or_default()
    }

    /// Distinct exponents carrying a non-zero coefficient.
    pub fn support(&self) -> Vec<Exponent> {
        self.terms
            .keys()
            .map(|(_, m)| m.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        let mut out = Self::zero(self.nvars, self.grade);
        for ((i, m), c) in &self.terms {
            out.push(i.clone(), m.clone(), c * k);
        }
        out
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars || self.grade != other.grade {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        let mut out = self.clone();
        for ((i, m), c) in &other.terms {
            out.push(i.clone(), m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Exterior derivative: `d(x^m (dx)_I/x_I) = Σ_{i∉I} m_i x^m (dx_i/x_i) ∧ (dx)_I/x_I`.
    pub fn d(&self) -> Self {
        let mut out = Self::zero(self.nvars, self.grade + 1);
        for ((idx, m), c) in &self.terms {
            for (i, &mi) in m.coords().iter().enumerate() {
                if mi == 0 {
                    continue;
                }
                if let Some((merged, sign)) = merge_sign(&[i], idx) {
                    let k = GaussianRational::from_integer(mi * sign as i64);
                    out.push(merged, m.clone(), c * &k);
                }
            }
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        let mut out = Self::zero(self.nvars, self.grade + other.grade);
        for ((ia, ma), ca) in &self.terms {
            for ((ib, mb), cb) in &other.terms {
                if let Some((merged, sign)) = merge_sign(ia, ib) {
                    let mut c = ca * cb;
                    if sign < 0 {
                        c = -c;
                    }
                    out.push(merged, ma.add(mb), c);
                }
            }
        }
        Ok(out)
    }

    /// Adds `extra` variables, with exponents and indices otherwise unchanged.
    pub fn embed(&self, extra: usize) -> Self {
        let mut out = Self::zero(self.nvars + extra, self.grade);
        for ((i, m), c) in &self.terms {
            let mut v = m.0.clone();
            v.extend(std::iter::repeat_n(0, extra));
            out.push(i.clone(), Exponent(v), c.clone());
        }
        out
    }

    pub fn to_terms(&self) -> Vec<LogTerm> {
        self.terms
            .iter()
            .map(|((i, m), c)| LogTerm {
                indices: i.clone(),
                exponent: m.clone(),
                coeff: c.clone(),
            })
            .collect()
    }
}

impl fmt::Debug for LogForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogForm(n={}, p={}) {{", self.nvars, self.grade)?;
        for ((i, m), c) in &self.terms {
            write!(f, " {c}·x^{m:?}·dlog{i:?}")?;
        }
        write!(f, " }}")
    }
}

impl Serialize for LogForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            nvars: usize,
            grade: usize,
            terms: Vec<LogTerm>,
        }
        Repr {
            nvars: self.nvars,
            grade: self.grade,
            terms: self.to_terms(),
        }
        .serialize(s)
    }
}

/// Convenience for the log form of `h dx_1∧…∧dx_n`.
pub fn holomorphic_to_log(h: &SparsePolynomial) -> LogForm {
    LogForm::holomorphic_top(h)
}

/// `(α, k)` ordered by `α < α′`, or `α = α′` and `k ≥ k′`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeadingPair {
    #[serde(with = "crate::exact::rational_string")]
    pub alpha: Rational,
    pub k: usize,
}

impl LeadingPair {
    pub fn new(alpha: Rational, k: usize) -> Self {
        Self { alpha, k }
    }
}

impl Ord for LeadingPair {
    fn cmp(&self, other: &Self) -> Ordering {
        self.alpha
            .cmp(&other.alpha)
            .then_with(|| other.k.cmp(&self.k))
    }
}

impl PartialOrd for LeadingPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LeadingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_integer(n)
    }

    #[test]
    fn holomorphic_shift() {
        let h = SparsePolynomial::from_int_terms(2, &[(&[2, 0], 2), (&[0, 3], -3)]);
        let w = holomorphic_to_log(&h);
        assert_eq!(w.grade(), 2);
        assert_eq!(w.coefficient(&[0, 1], &Exponent::from([3, 1])), g(2));
        assert_eq!(w.coefficient(&[0, 1], &Exponent::from([1, 4])), g(-3));
        let one = holomorphic_to_log(&SparsePolynomial::from_int_terms(2, &[(&[0, 0], 1)]));
        assert_eq!(one.support(), vec![Exponent::from([1, 1])]);
    }

    #[test]
    fn d_squared_is_zero() {
        let f = SparsePolynomial::from_int_terms(3, &[(&[2, 1, 0], 3), (&[0, 1, 4], -1), (&[1, 1, 1], 2)]);
        let w = LogForm::function(&f);
        assert!(w.d().d().is_zero());
        let mut b = LogForm::zero(3, 1);
        b.add_term(&[1], Exponent::from([1, 2, 3]), g(5)).unwrap();
        assert!(b.d().d().is_zero());
    }

    #[test]
    fn df_wedge_d_xy_for_the_cusp() {
        // df ∧ d(xy) = (2x² − 3y³) dx∧dy, i.e. (3,1) ↦ 2 and (1,4) ↦ −3 in the log basis
        let f = SparsePolynomial::from_int_terms(2, &[(&[2, 0], 1), (&[0, 3], 1)]);
        let beta = LogForm::function(&SparsePolynomial::from_int_terms(2, &[(&[1, 1], 1)]));
        let w = LogForm::function(&f).d().wedge(&beta.d()).unwrap();
        assert_eq!(w.coefficient(&[0, 1], &Exponent::from([3, 1])), g(2));
        assert_eq!(w.coefficient(&[0, 1], &Exponent::from([1, 4])), g(-3));
        assert_eq!(w.len(), 2);
    }

    #[test]
    fn add_term_sorts_with_sign() {
        let mut w = LogForm::zero(3, 2);
        w.add_term(&[2, 0], Exponent::from([1, 1, 1]), g(1)).unwrap();
        assert_eq!(w.coefficient(&[0, 2], &Exponent::from([1, 1, 1])), g(-1));
        w.add_term(&[1, 1], Exponent::from([1, 1, 1]), g(1)).unwrap();
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn leading_pair_order() {
        let a = LeadingPair::new(ratio(-1, 2), 1);
        let b = LeadingPair::new(ratio(-1, 2), 0);
        let c = LeadingPair::new(int(0), 3);
        assert!(a < b);
        assert!(b < c);
        assert!(a < c);
    }
}
