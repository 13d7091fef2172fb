//! The graded quotient criterion: `[φ] ≠ 0` in
//! `(Ω_σⁿ)_a / df_δ ∧ d(Ω_σ^{n−2})_{a−1}` gives `(α, k)(φ) = (a − 1, r − 1)`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::exterior::index_sets;
use crate::exact::{image_membership, Exponent, GaussianRational, Matrix, Membership, Rational, SparsePolynomial};
use crate::forms::{LeadingPair, LogForm};
use crate::grading::{nondegeneracy_heuristic, FaceContext, NewtonSettings, NondegeneracyReport};
use crate::polytope::NewtonPolyhedron;

/// Basis `x^m (dx)_I / x_I` of a graded piece, `|I| = p`, `m ∈ bδ ∩ ℤⁿ`,
/// ordered lexicographically on `(I, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedBasis {
    pub grade: usize,
    #[serde(with = "crate::exact::rational_string")]
    pub degree: Rational,
    pub elements: Vec<(Vec<usize>, Exponent)>,
}

impl GradedBasis {
    pub fn new(ctx: &FaceContext, grade: usize, degree: &Rational) -> Result<Self> {
        let points = if degree.is_negative() || grade > ctx.nvars() {
            Vec::new()
        } else {
            ctx.lattice_points(degree, false)?
        };
        let mut elements: Vec<(Vec<usize>, Exponent)> = index_sets(ctx.nvars(), grade)
            .into_iter()
            .flat_map(|i| points.iter().map(move |m| (i.clone(), m.clone())))
            .collect();
        elements.sort();
        Ok(Self {
            grade,
            degree: degree.clone(),
            elements,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index(&self) -> BTreeMap<(Vec<usize>, Exponent), usize> {
        self.elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect()
    }

    /// Coordinates of `form` in this basis; `None` if a term falls outside it.
    pub fn coordinates(&self, form: &LogForm) -> Option<Vec<GaussianRational>> {
        let idx = self.index();
        let mut v = vec![GaussianRational::zero(); self.len()];
        for (i, m, c) in form.terms() {
            let k = *idx.get(&(i.clone(), m.clone()))?;
            v[k] = c.clone();
        }
        Some(v)
    }

    pub fn element_form(&self, nvars: usize, k: usize) -> LogForm {
        let (i, m) = &self.elements[k];
        let mut w = LogForm::zero(nvars, self.grade);
        w.add_term(i, m.clone(), GaussianRational::one())
            .expect("basis elements are well formed");
        w
    }
}

/// Matrix of `β ↦ df_δ ∧ dβ` from `GradedBasis(n−2, a−1)` to `GradedBasis(n, a)`.
pub struct KoszulDeRham {
    pub matrix: Matrix,
    pub domain: GradedBasis,
    pub target: GradedBasis,
}

pub fn koszul_de_rham_matrix(ctx: &FaceContext, f_delta: &SparsePolynomial, a: &Rational) -> Result<KoszulDeRham> {
    let n = ctx.nvars();
    let target = GradedBasis::new(ctx, n, a)?;
    let domain = if n >= 2 {
        GradedBasis::new(ctx, n - 2, &(a - Rational::one()))?
    } else {
        GradedBasis {
            grade: 0,
            degree: a - Rational::one(),
            elements: Vec::new(),
        }
    };
    let df = LogForm::function(f_delta).d();
    let columns: Vec<Vec<GaussianRational>> = (0..domain.len())
        .map(|k| {
            let image = df
                .wedge(&domain.element_form(n, k).d())
                .expect("same variable count");
            target
                .coordinates(&image)
                .expect("df_δ ∧ dβ stays in the graded piece")
        })
        .collect();
    Ok(KoszulDeRham {
        matrix: Matrix::from_columns(target.len(), &columns),
        domain,
        target,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvalidReason {
    SupportNotInterior,
    MixedDegrees,
    IntegerAWithREqualsN,
    FaceOnHyperplane,
    NonConvenient,
}

impl InvalidReason {
    pub fn code(self) -> &'static str {
        match self {
            InvalidReason::SupportNotInterior => "support-not-interior",
            InvalidReason::MixedDegrees => "mixed-degrees",
            InvalidReason::IntegerAWithREqualsN => "integer-a-with-r-equals-n",
            InvalidReason::FaceOnHyperplane => "face-on-hyperplane",
            InvalidReason::NonConvenient => "non-convenient",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    Certified(LeadingPair),
    Inconclusive,
    InvalidInput { reason: InvalidReason },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub face_id: usize,
    #[serde(with = "crate::exact::rational_string::option")]
    pub a: Option<Rational>,
    pub r: Option<usize>,
    pub verdict: Verdict,
    pub quotient_dim: Option<usize>,
    pub matrix_rank: Option<usize>,
    pub domain_dim: Option<usize>,
    pub target_dim: Option<usize>,
    pub nondegeneracy: Option<NondegeneracyReport>,
    /// Functional on the target basis killing every column but not `φ`.
    pub witness: Option<Vec<GaussianRational>>,
    /// The witness was re-checked against the matrix and `φ` after elimination.
    pub witness_verified: Option<bool>,
}

impl Certificate {
    fn invalid(face_id: usize, reason: InvalidReason) -> Self {
        Self {
            face_id,
            a: None,
            r: None,
            verdict: Verdict::InvalidInput { reason },
            quotient_dim: None,
            matrix_rank: None,
            domain_dim: None,
            target_dim: None,
            nondegeneracy: None,
            witness: None,
            witness_verified: None,
        }
    }

    pub fn pair(&self) -> Option<&LeadingPair> {
        match &self.verdict {
            Verdict::Certified(p) => Some(p),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub trials: usize,
    pub seed: u64,
    pub newton: NewtonSettings,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            trials: 24,
            seed: 0x5EED,
            newton: NewtonSettings::default(),
        }
    }
}

/// Common face degree `a` of the support, if it lies in `aδ°`.
fn common_degree(ctx: &FaceContext, phi: &LogForm) -> std::result::Result<Rational, InvalidReason> {
    let mut a: Option<Rational> = None;
    for m in phi.support() {
        let d = ctx.face_degree(&m).ok_or(InvalidReason::SupportNotInterior)?;
        match &a {
            None => a = Some(d),
            Some(prev) if *prev != d => return Err(InvalidReason::MixedDegrees),
            Some(_) => {}
        }
    }
    let a = a.expect("non-zero form");
    if phi.support().iter().all(|m| ctx.scaled_face_interior_test(&a, m)) {
        Ok(a)
    } else {
        Err(InvalidReason::SupportNotInterior)
    }
}

fn check_form(poly: &NewtonPolyhedron, phi: &LogForm) -> Result<()> {
    let n = poly.nvars();
    if phi.nvars() != n {
        return Err(Error::VariableCountMismatch {
            left: phi.nvars(),
            right: n,
        });
    }
    if phi.grade() != n {
        return Err(Error::Malformed(format!("expected a top form of grade {n}, got grade {}", phi.grade())));
    }
    if phi.is_zero() {
        return Err(Error::ZeroForm);
    }
    Ok(())
}

/// Runs the graded quotient test for `φ` on the face `face_id` of `Γ₊(f)`.
pub fn certify(f: &SparsePolynomial, face_id: usize, phi: &LogForm, opts: &CertifyOptions) -> Result<Certificate> {
    let poly = NewtonPolyhedron::build(&f.support())?;
    certify_on(&poly, f, face_id, phi, opts)
}

pub fn certify_on(
    poly: &NewtonPolyhedron,
    f: &SparsePolynomial,
    face_id: usize,
    phi: &LogForm,
    opts: &CertifyOptions,
) -> Result<Certificate> {
    check_form(poly, phi)?;
    if !poly.is_convenient() {
        return Ok(Certificate::invalid(face_id, InvalidReason::NonConvenient));
    }
    let ctx = match FaceContext::new(poly, face_id) {
        Ok(c) => c,
        Err(Error::FaceOnHyperplane(_)) => {
            return Ok(Certificate::invalid(face_id, InvalidReason::FaceOnHyperplane))
        }
        Err(e) => return Err(e),
    };
    let a = match common_degree(&ctx, phi) {
        Ok(a) => a,
        Err(reason) => return Ok(Certificate::invalid(face_id, reason)),
    };
    let n = poly.nvars();
    let r = ctx.r();
    if a.is_integer() && r == n {
        let mut c = Certificate::invalid(face_id, InvalidReason::IntegerAWithREqualsN);
        c.a = Some(a);
        c.r = Some(r);
        return Ok(c);
    }

    let f_delta = ctx.face_polynomial(f);
    let nondeg = nondegeneracy_heuristic(&f_delta, ctx.weight(), opts.trials, opts.seed, &opts.newton);
    let kdr = koszul_de_rham_matrix(&ctx, &f_delta, &a)?;
    let v = kdr
        .target
        .coordinates(phi)
        .expect("support checked to lie in aδ");
    let rank = kdr.matrix.rank();
    let quotient_dim = kdr.target.len() - rank;
    let (verdict, witness, verified) = match image_membership(&kdr.matrix, &v) {
        Membership::NotInImage(y) => {
            let kills = kdr.matrix.left_mul_vec(&y).iter().all(|z| z.is_zero());
            let pairing: GaussianRational = y.iter().zip(&v).map(|(p, q)| p * q).sum();
            let ok = kills && !pairing.is_zero();
            let pair = LeadingPair::new(&a - Rational::one(), r - 1);
            (Verdict::Certified(pair), Some(y), Some(ok))
        }
        Membership::InImage(_) => (Verdict::Inconclusive, None, None),
    };
    Ok(Certificate {
        face_id,
        a: Some(a),
        r: Some(r),
        verdict,
        quotient_dim: Some(quotient_dim),
        matrix_rank: Some(rank),
        domain_dim: Some(kdr.domain.len()),
        target_dim: Some(kdr.target.len()),
        nondegeneracy: Some(nondeg),
        witness,
        witness_verified: verified,
    })
}

/// Faces whose scaled relative interior holds the whole support of `φ` at one
/// degree. Relative interiors of distinct faces are disjoint, so there is at
/// most one such face.
pub fn admissible_faces(poly: &NewtonPolyhedron, phi: &LogForm) -> Vec<usize> {
    poly.compact_faces()
        .filter(|face| !face.on_coordinate_hyperplane)
        .filter(|face| {
            FaceContext::new(poly, face.id)
                .map(|ctx| common_degree(&ctx, phi).is_ok())
                .unwrap_or(false)
        })
        .map(|face| face.id)
        .collect()
}

/// One certificate per admissible face.
pub fn certify_auto(f: &SparsePolynomial, phi: &LogForm, opts: &CertifyOptions) -> Result<Vec<Certificate>> {
    let poly = NewtonPolyhedron::build(&f.support())?;
    check_form(&poly, phi)?;
    admissible_faces(&poly, phi)
        .into_iter()
        .map(|id| certify_on(&poly, f, id, phi, opts))
        .collect()
}

/// `dim (Ω_σⁿ / df_δ ∧ dΩ_σ^{n−2})_a`.
pub fn graded_quotient_dim(ctx: &FaceContext, f_delta: &SparsePolynomial, a: &Rational) -> Result<usize> {
    let k = koszul_de_rham_matrix(ctx, f_delta, a)?;
    Ok(k.target.len() - k.matrix.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};
    use crate::forms::holomorphic_to_log;

    fn poly(t: &[(&[i64], i64)]) -> SparsePolynomial {
        SparsePolynomial::from_int_terms(2, t)
    }

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_integer(n)
    }

    fn face_id(f: &SparsePolynomial, vs: &[&[i64]]) -> usize {
        let p = NewtonPolyhedron::build(&f.support()).unwrap();
        let vs: Vec<Exponent> = vs.iter().map(|v| Exponent(v.to_vec())).collect();
        p.face_by_vertices(&vs).unwrap().id
    }

    fn ctx(f: &SparsePolynomial, vs: &[&[i64]]) -> FaceContext {
        let p = NewtonPolyhedron::build(&f.support()).unwrap();
        FaceContext::new(&p, face_id(f, vs)).unwrap()
    }

    #[test]
    fn graded_bases() {
        let f = poly(&[(&[3, 0], 1), (&[0, 3], 1)]);
        let c = ctx(&f, &[&[0, 3], &[3, 0]]);
        let b = GradedBasis::new(&c, 0, &ratio(1, 3)).unwrap();
        assert_eq!(
            b.elements,
            vec![(vec![], Exponent::from([0, 1])), (vec![], Exponent::from([1, 0]))]
        );
        assert_eq!(GradedBasis::new(&c, 2, &ratio(4, 3)).unwrap().len(), 5);
        let cusp = poly(&[(&[2, 0], 1), (&[0, 3], 1)]);
        let c = ctx(&cusp, &[&[0, 3], &[2, 0]]);
        assert!(GradedBasis::new(&c, 0, &ratio(-1, 6)).unwrap().is_empty());
    }

    #[test]
    fn matrix_columns_for_cubic() {
        let f = poly(&[(&[3, 0], 1), (&[0, 3], 1)]);
        let c = ctx(&f, &[&[0, 3], &[3, 0]]);
        let k = koszul_de_rham_matrix(&c, &c.face_polynomial(&f), &ratio(4, 3)).unwrap();
        let idx = k.target.index();
        let at = |m: [i64; 2]| idx[&(vec![0, 1], Exponent::from(m))];
        // domain order: y = (0,1) then x = (1,0)
        assert_eq!(k.domain.elements[1].1, Exponent::from([1, 0]));
        assert_eq!(k.matrix.get(at([1, 3]), 1), &g(-3));
        assert_eq!(k.matrix.get(at([3, 1]), 0), &g(3));
        assert_eq!(k.matrix.rank(), 2);
    }

    #[test]
    fn matrix_for_cusp() {
        let f = poly(&[(&[2, 0], 1), (&[0, 3], 1)]);
        let c = ctx(&f, &[&[0, 3], &[2, 0]]);
        let k = koszul_de_rham_matrix(&c, &f, &ratio(5, 6)).unwrap();
        assert_eq!((k.matrix.rows(), k.matrix.cols()), (1, 0));
        let k = koszul_de_rham_matrix(&c, &f, &ratio(11, 6)).unwrap();
        assert_eq!(k.domain.elements, vec![(vec![], Exponent::from([1, 1]))]);
        let col = k.matrix.column(0);
        let v = k.target.coordinates(&holomorphic_to_log(&poly(&[(&[2, 0], 2), (&[0, 3], -3)]))).unwrap();
        assert_eq!(col, v);
    }

    #[test]
    fn certificates() {
        let opts = CertifyOptions::default();
        let cusp = poly(&[(&[2, 0], 1), (&[0, 3], 1)]);
        let one = holomorphic_to_log(&poly(&[(&[0, 0], 1)]));
        let c = certify(&cusp, face_id(&cusp, &[&[0, 3], &[2, 0]]), &one, &opts).unwrap();
        assert_eq!(c.verdict, Verdict::Certified(LeadingPair::new(ratio(-1, 6), 0)));
        assert_eq!(c.quotient_dim, Some(1));
        assert_eq!(c.witness_verified, Some(true));

        let cubic = poly(&[(&[3, 0], 1), (&[0, 3], 1)]);
        let xy = holomorphic_to_log(&poly(&[(&[1, 1], 1)]));
        let c = certify(&cubic, face_id(&cubic, &[&[0, 3], &[3, 0]]), &xy, &opts).unwrap();
        assert_eq!(c.verdict, Verdict::Certified(LeadingPair::new(ratio(1, 3), 0)));
        assert_eq!(c.quotient_dim, Some(3));

        let t = poly(&[(&[5, 0], 1), (&[2, 2], 1), (&[0, 5], 1)]);
        let c = certify(&t, face_id(&t, &[&[2, 2]]), &one, &opts).unwrap();
        assert_eq!(c.verdict, Verdict::Certified(LeadingPair::new(ratio(-1, 2), 1)));

        let img = holomorphic_to_log(&poly(&[(&[2, 0], 2), (&[0, 3], -3)]));
        let c = certify(&cusp, face_id(&cusp, &[&[0, 3], &[2, 0]]), &img, &opts).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert_eq!(c.a, Some(ratio(11, 6)));
    }

    #[test]
    fn invalid_inputs() {
        let opts = CertifyOptions::default();
        let sq = poly(&[(&[2, 0], 1), (&[0, 2], 1)]);
        let one = holomorphic_to_log(&poly(&[(&[0, 0], 1)]));
        let edge = face_id(&sq, &[&[0, 2], &[2, 0]]);
        let c = certify(&sq, edge, &one, &opts).unwrap();
        assert_eq!(c.a, Some(int(1)));
        assert!(matches!(c.verdict, Verdict::Certified(_) | Verdict::Inconclusive));

        let mixed = holomorphic_to_log(&poly(&[(&[0, 0], 1), (&[1, 0], 1)]));
        let c = certify(&sq, edge, &mixed, &opts).unwrap();
        assert_eq!(c.verdict, Verdict::InvalidInput { reason: InvalidReason::MixedDegrees });

        let xy = poly(&[(&[1, 1], 1)]);
        let c = certify(&xy, 0, &one, &opts).unwrap();
        assert_eq!(c.verdict, Verdict::InvalidInput { reason: InvalidReason::NonConvenient });

        let cusp = poly(&[(&[2, 0], 1), (&[0, 3], 1)]);
        let v = face_id(&cusp, &[&[2, 0]]);
        let c = certify(&cusp, v, &one, &opts).unwrap();
        assert_eq!(c.verdict, Verdict::InvalidInput { reason: InvalidReason::FaceOnHyperplane });

        // x y dx∧dy sits at the (2,2)-vertex itself: a = 1 with r = n
        let t = poly(&[(&[5, 0], 1), (&[2, 2], 1), (&[0, 5], 1)]);
        let vtx = face_id(&t, &[&[2, 2]]);
        let w = holomorphic_to_log(&poly(&[(&[1, 1], 1)]));
        let c = certify(&t, vtx, &w, &opts).unwrap();
        assert_eq!(c.verdict, Verdict::InvalidInput { reason: InvalidReason::IntegerAWithREqualsN });

        assert!(matches!(certify(&cusp, 0, &LogForm::zero(2, 2), &opts), Err(Error::ZeroForm)));
    }

    #[test]
    fn auto_face_selection() {
        let cusp = poly(&[(&[2, 0], 1), (&[0, 3], 1)]);
        let one = holomorphic_to_log(&poly(&[(&[0, 0], 1)]));
        let cs = certify_auto(&cusp, &one, &CertifyOptions::default()).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].pair(), Some(&LeadingPair::new(ratio(-1, 6), 0)));
    }
}
