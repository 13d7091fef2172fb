//! Formal asymptotic series `Σ c_{α,k} r^{2α} (ln r²)^k / k!` and the principal
//! parts `(−1)^k c_{α,k} (λ + α)^{−(k+1)}` of their Mellin transforms.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AsymptoticSeries {
    terms: BTreeMap<(Rational, usize), GaussianRational>,
    /// Exponents at or beyond this value are not represented.
    pub truncation: Option<Rational>,
}

impl AsymptoticSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, alpha: Rational, k: usize, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let key = (alpha, k);
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coefficient(&self, alpha: &Rational, k: usize) -> GaussianRational {
        self.terms
            .get(&(alpha.clone(), k))
            .cloned()
            .unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, usize, &GaussianRational)> {
        self.terms.iter().map(|((a, k), c)| (a, *k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        let mut out = Self {
            truncation: self.truncation.clone(),
            ..Self::default()
        };
        for ((a, k), c) in &self.terms {
            out.add_term(a.clone(), *k, c * s);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, k), c) in &other.terms {
            out.add_term(a.clone(), *k, c.clone());
        }
        out
    }
}

/// Laurent principal part at `location = −α`: `coeffs[j]` multiplies `(λ + α)^{−j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrincipalPart {
    #[serde(with = "crate::exact::rational_string")]
    pub location: Rational,
    pub coeffs: BTreeMap<usize, GaussianRational>,
}

impl PrincipalPart {
    pub fn order(&self) -> usize {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }
}

fn sign(k: usize) -> GaussianRational {
    if k.is_multiple_of(2) {
        GaussianRational::one()
    } else {
        -GaussianRational::one()
    }
}

/// Principal parts of the Mellin transform, one per exponent with a non-zero term.
pub fn principal_parts(s: &AsymptoticSeries) -> Vec<PrincipalPart> {
    let mut by_alpha: BTreeMap<Rational, BTreeMap<usize, GaussianRational>> = BTreeMap::new();
    for (alpha, k, c) in s.terms() {
        let slot = by_alpha.entry(alpha.clone()).or_default();
        slot.insert(k + 1, &sign(k) * c);
    }
    by_alpha
        .into_iter()
        .filter(|(_, coeffs)| !coeffs.is_empty())
        .map(|(alpha, coeffs)| PrincipalPart {
            location: -alpha,
            coeffs,
        })
        .collect()
}

/// Inverse of [`principal_parts`].
pub fn series_from_principal_parts(parts: &[PrincipalPart]) -> AsymptoticSeries {
    let mut s = AsymptoticSeries::new();
    for p in parts {
        for (&j, c) in &p.coeffs {
            s.add_term(-p.location.clone(), j - 1, &sign(j - 1) * c);
        }
    }
    s
}

/// Predicted pole: location `−a`, order `r` for `a ∉ ℤ` and `r + 1` for `a ∈ ℤ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoleProfile {
    #[serde(with = "crate::exact::rational_string")]
    pub location: Rational,
    pub order: usize,
}

pub fn predict_pole_profile(a: &Rational, r: usize, n: usize) -> Result<PoleProfile> {
    if r < 1 || r > n {
        return Err(Error::PoleOrderRange { r, n });
    }
    if !a.is_positive() {
        return Err(Error::Malformed(format!("pole parameter a must be positive, got {a}")));
    }
    let order = if a.is_integer() { r + 1 } else { r };
    Ok(PoleProfile {
        location: -a.clone(),
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};
    use proptest::prelude::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_integer(n)
    }

    #[test]
    fn single_terms() {
        let mut s = AsymptoticSeries::new();
        s.add_term(ratio(1, 2), 0, g(1));
        let p = principal_parts(&s);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].location, ratio(-1, 2));
        assert_eq!(p[0].coeffs[&1], g(1));

        let mut s = AsymptoticSeries::new();
        s.add_term(ratio(2, 3), 1, g(5));
        let p = principal_parts(&s);
        assert_eq!(p[0].coeffs[&2], g(-5));
        assert_eq!(p[0].order(), 2);

        assert!(principal_parts(&AsymptoticSeries::new()).is_empty());
    }

    #[test]
    fn profiles() {
        assert_eq!(
            predict_pole_profile(&ratio(5, 6), 1, 2).unwrap(),
            PoleProfile { location: ratio(-5, 6), order: 1 }
        );
        assert_eq!(predict_pole_profile(&ratio(1, 2), 2, 2).unwrap().order, 2);
        assert_eq!(
            predict_pole_profile(&int(2), 2, 3).unwrap(),
            PoleProfile { location: int(-2), order: 3 }
        );
        assert!(matches!(predict_pole_profile(&int(1), 3, 2), Err(Error::PoleOrderRange { .. })));
        assert!(predict_pole_profile(&int(0), 1, 2).is_err());
    }

    fn series_strategy() -> impl Strategy<Value = AsymptoticSeries> {
        proptest::collection::vec((-20i64..40, 1i64..9, 0usize..4, -9i64..10, -9i64..10, 1i64..7), 0..8).prop_map(
            |terms| {
                let mut s = AsymptoticSeries::new();
                for (p, q, k, re, im, d) in terms {
                    s.add_term(ratio(p, q), k, GaussianRational::new(ratio(re, d), ratio(im, d)));
                }
                s
            },
        )
    }

    proptest! {
        #[test]
        fn round_trip(s in series_strategy()) {
            prop_assert_eq!(series_from_principal_parts(&principal_parts(&s)), s);
        }

        #[test]
        fn linear(s in series_strategy(), t in series_strategy(), c in -5i64..6) {
            let lhs = principal_parts(&s.add(&t.scale(&g(c))));
            let rhs = principal_parts(&series_from_principal_parts(&principal_parts(&s))
                .add(&series_from_principal_parts(&principal_parts(&t)).scale(&g(c))));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
