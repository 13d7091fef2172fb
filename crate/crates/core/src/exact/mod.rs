//! Exact arithmetic: Gaussian rationals, sparse polynomials, exterior algebra
//! and linear algebra over ℚ(i).

pub mod exterior;
mod gaussian;
pub mod linalg;
mod poly;

pub use exterior::{iterated_contraction, MultiVector};
pub use gaussian::{GaussianRational, ParseGaussianError};
pub use linalg::{image_membership, Matrix, Membership};
pub use poly::{Exponent, SparsePolynomial};

pub use num_rational::BigRational as Rational;

use num_bigint::BigInt;

/// `p/q` as a big rational.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Serde helper storing rationals as `"p/q"` strings.
pub mod rational_string {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::Rational;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.collect_str(r),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            let s = Option::<String>::deserialize(d)?;
            s.map(|s| s.parse().map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}
