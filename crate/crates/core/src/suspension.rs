//! Suspension `F = f + yᵉ/e`: the suspended form `φ ∧ yᶜ dy/y`, the
//! `ℤ/eℤ`-eigenspace bookkeeping for the graded quotients, and the Beta
//! factor of the Thom–Sebastiani leading term.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rug::{Complex, Float};
use serde::Serialize;

use crate::certifier::{koszul_de_rham_matrix, GradedBasis};
use crate::error::{Error, Result};
use crate::exact::{image_membership, Exponent, GaussianRational, Matrix, Rational, SparsePolynomial};
use crate::forms::LogForm;
use crate::grading::FaceContext;
use crate::polytope::NewtonPolyhedron;

/// Working precision for the Beta factor, in bits (about 77 digits).
pub const BETA_PRECISION: u32 = 256;

/// `lcm` of the levels of the compact facets; `e·ν(m) ∈ ℤ` for every `m`.
pub fn suspension_exponent(poly: &NewtonPolyhedron) -> Result<i64> {
    if !poly.is_convenient() {
        return Err(Error::NotConvenient);
    }
    Ok(poly
        .facets()
        .iter()
        .filter(|f| f.level > 0 && f.normal.iter().all(|&a| a > 0))
        .fold(1i64, |acc, f| acc.lcm(&f.level)))
}

/// `f + yᵉ/e` in one more variable (the new variable is last).
pub fn suspend(f: &SparsePolynomial, e: i64) -> Result<SparsePolynomial> {
    if e < 1 {
        return Err(Error::Malformed(format!("suspension exponent must be positive, got {e}")));
    }
    let mut big = f.embed(1);
    let mut m = vec![0; f.nvars()];
    m.push(e);
    big.add_term(Exponent(m), GaussianRational::from_ratio(1, e));
    Ok(big)
}

/// `c = e([a] + 1 − a)`, required to be an integer.
pub fn suspension_shift(a: &Rational, e: i64) -> Result<i64> {
    let b = a.floor() + Rational::one();
    let c = (b - a) * Rational::from_integer(e.into());
    if !c.is_integer() {
        return Err(Error::NonIntegralSuspension(
            (a * Rational::from_integer(e.into())).to_string(),
        ));
    }
    Ok(c.to_integer().to_i64().expect("shift fits in i64"))
}

#[derive(Clone, Debug)]
pub struct SuspendedForm {
    pub form: LogForm,
    pub c: i64,
    /// Suspended degree `b = [a] + 1`.
    pub b: Rational,
}

/// `φ ∧ yᶜ dy/y`, with `c = e([a] + 1 − a)`.
pub fn suspend_form(phi: &LogForm, a: &Rational, e: i64) -> Result<SuspendedForm> {
    let c = suspension_shift(a, e)?;
    Ok(SuspendedForm {
        form: wedge_dlog_y(phi, c),
        c,
        b: a.floor() + Rational::one(),
    })
}

fn wedge_dlog_y(phi: &LogForm, c: i64) -> LogForm {
    let n = phi.nvars();
    let mut y = vec![0; n];
    y.push(c);
    let mut dy = LogForm::zero(n + 1, 1);
    dy.add_term(&[n], Exponent(y), GaussianRational::one())
        .expect("well-formed term");
    phi.embed(1).wedge(&dy).expect("same variable count")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuspensionCheck {
    pub face_id: usize,
    pub suspended_face_id: usize,
    pub e: i64,
    pub c: i64,
    #[serde(with = "crate::exact::rational_string")]
    pub a: Rational,
    #[serde(with = "crate::exact::rational_string")]
    pub b: Rational,
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    /// Basis vectors of the left quotient outside the image.
    pub forward_checked: usize,
    /// ... whose suspension stays outside the image on the right.
    pub forward_preserved: usize,
}

/// Restriction of a graded basis to monomials with last exponent `≡ c (mod e)`.
fn eigen_restrict(basis: &GradedBasis, c: i64, e: i64) -> GradedBasis {
    GradedBasis {
        grade: basis.grade,
        degree: basis.degree.clone(),
        elements: basis
            .elements
            .iter()
            .filter(|(_, m)| (m.coords()[m.len() - 1] - c).rem_euclid(e) == 0)
            .cloned()
            .collect(),
    }
}

/// Dimensions of `(Ω_σⁿ/df_δ∧dΩ_σ^{n−2})_a` and of the `ζᶜ`-eigenspace of
/// `(Ω_σ̂^{n+1}/dF_δ̂∧dΩ_σ̂^{n−1})_b`, plus a spot check of the forward map
/// `[φ] ↦ [φ ∧ yᶜ dy/y]` on basis vectors.
pub fn suspended_quotient_dims(f: &SparsePolynomial, face_id: usize, a: &Rational) -> Result<SuspensionCheck> {
    if a.is_integer() {
        return Err(Error::IntegralDegree(a.to_string()));
    }
    if !a.is_positive() {
        return Err(Error::Malformed(format!("degree must be positive, got {a}")));
    }
    let poly = NewtonPolyhedron::build(&f.support())?;
    let ctx = FaceContext::new(&poly, face_id)?;
    let n = poly.nvars();
    let e = suspension_exponent(&poly)?;
    let c = suspension_shift(a, e)?;
    let b = a.floor() + Rational::one();

    let f_delta = ctx.face_polynomial(f);
    let left = koszul_de_rham_matrix(&ctx, &f_delta, a)?;
    let left_rank = left.matrix.rank();
    let lhs_dim = left.target.len() - left_rank;

    let big = suspend(f, e)?;
    let big_poly = NewtonPolyhedron::build(&big.support())?;
    let mut hat: Vec<Exponent> = ctx.face().vertices.iter().map(|v| v.extended(0)).collect();
    let mut apex = vec![0; n];
    apex.push(e);
    hat.push(Exponent(apex));
    let hat_face = big_poly
        .face_by_vertices(&hat)
        .ok_or_else(|| Error::Malformed("suspended face not found".into()))?;
    let hat_ctx = FaceContext::new(&big_poly, hat_face.id)?;
    let big_delta = hat_ctx.face_polynomial(&big);

    let target = eigen_restrict(&GradedBasis::new(&hat_ctx, n + 1, &b)?, c, e);
    let domain = eigen_restrict(&GradedBasis::new(&hat_ctx, n - 1, &(&b - Rational::one()))?, c, e);
    let d_big = LogForm::function(&big_delta).d();
    let columns: Vec<Vec<GaussianRational>> = (0..domain.len())
        .map(|k| {
            let image = d_big
                .wedge(&domain.element_form(n + 1, k).d())
                .expect("same variable count");
            target
                .coordinates(&image)
                .expect("dF ∧ d preserves degree and eigenclass")
        })
        .collect();
    let right = Matrix::from_columns(target.len(), &columns);
    let rhs_dim = target.len() - right.rank();

    let mut forward_checked = 0;
    let mut forward_preserved = 0;
    for k in 0..left.target.len() {
        let mut unit = vec![GaussianRational::zero(); left.target.len()];
        unit[k] = GaussianRational::one();
        if image_membership(&left.matrix, &unit).is_in_image() {
            continue;
        }
        forward_checked += 1;
        let lifted = wedge_dlog_y(&left.target.element_form(n, k), c);
        let v = target
            .coordinates(&lifted)
            .expect("suspended basis vector lies in the eigenspace");
        if !image_membership(&right, &v).is_in_image() {
            forward_preserved += 1;
        }
    }

    Ok(SuspensionCheck {
        face_id,
        suspended_face_id: hat_face.id,
        e,
        c,
        a: a.clone(),
        b,
        lhs_dim,
        rhs_dim,
        forward_checked,
        forward_preserved,
    })
}

/// Leading term `t^α (ln t)^k / k! · coeff` of an expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct LeadingTerm {
    pub alpha: Rational,
    pub k: usize,
    pub coeff: Complex,
}

impl LeadingTerm {
    pub fn new(alpha: Rational, k: usize, coeff: Complex) -> Self {
        Self { alpha, k, coeff }
    }

    pub fn real(alpha: Rational, k: usize, coeff: f64) -> Self {
        Self::new(alpha, k, Complex::with_val(BETA_PRECISION, (coeff, 0.0)))
    }
}

fn rational_to_float(q: &Rational) -> Float {
    let num = Float::parse(q.numer().to_string()).expect("integer literal");
    let den = Float::parse(q.denom().to_string()).expect("integer literal");
    // exact for numerators and denominators below 2^256
    Float::with_val(BETA_PRECISION, num) / Float::with_val(BETA_PRECISION, den)
}

/// `B(p, q) = Γ(p)Γ(q)/Γ(p+q)` for `p, q > 0`; exact when both are integers.
pub fn beta(p: &Rational, q: &Rational) -> Result<Float> {
    if !p.is_positive() || !q.is_positive() {
        return Err(Error::BetaDomain(p.to_string(), q.to_string()));
    }
    if p.is_integer() && q.is_integer() {
        // (p−1)!(q−1)!/(p+q−1)!
        let p = p.to_integer().to_u64().expect("small argument");
        let q = q.to_integer().to_u64().expect("small argument");
        let fact = |k: u64| (1..=k).fold(num_bigint::BigInt::one(), |acc, i| acc * i);
        let exact = Rational::new(fact(p - 1) * fact(q - 1), fact(p + q - 1));
        return Ok(rational_to_float(&exact));
    }
    let fp = rational_to_float(p);
    let fq = rational_to_float(q);
    let sum = Float::with_val(BETA_PRECISION, &fp + &fq);
    let ln = fp.ln_gamma() + fq.ln_gamma() - sum.ln_gamma();
    Ok(ln.exp())
}

/// `(α + β + 1, k_ω, c_ω c_η B(α+1, β+1))` for a leading term `η` without logarithm.
pub fn leading_term_tensor(omega: &LeadingTerm, eta: &LeadingTerm) -> Result<LeadingTerm> {
    if eta.k != 0 {
        return Err(Error::Malformed(format!(
            "second leading term must carry no logarithm, got k = {}",
            eta.k
        )));
    }
    let one = Rational::one();
    let b = beta(&(&omega.alpha + &one), &(&eta.alpha + &one))?;
    let coeff = Complex::with_val(BETA_PRECISION, &omega.coeff * &eta.coeff) * b;
    Ok(LeadingTerm::new(&omega.alpha + &eta.alpha + one, omega.k, coeff))
}
