//! Face-local data: face polynomials, the δ-grading with `deg f_δ = 1`,
//! relative-interior tests and a numerical non-degeneracy heuristic.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Exponent, Rational, SparsePolynomial};
use crate::numeric::{derive_seed, solve_complex};
use crate::polytope::{Face, NewtonPolyhedron};

/// A compact face `δ` of dimension `n − r`, not in a coordinate hyperplane,
/// with the supporting weight `w` (sum of the active facet normals) and
/// `N = ⟨w, δ⟩`.
#[derive(Clone, Debug)]
pub struct FaceContext {
    poly: NewtonPolyhedron,
    face: Face,
    r: usize,
    w: Vec<i64>,
    level: i64,
}

impl FaceContext {
    pub fn new(poly: &NewtonPolyhedron, face_id: usize) -> Result<Self> {
        let face = poly.face(face_id)?.clone();
        if !face.is_compact {
            return Err(Error::NonCompactFace(face_id));
        }
        if face.on_coordinate_hyperplane {
            return Err(Error::FaceOnHyperplane(face_id));
        }
        let n = poly.nvars();
        let w: Vec<i64> = (0..n)
            .map(|j| face.active_facets.iter().map(|&i| poly.facets()[i].normal[j]).sum())
            .collect();
        let level = face.vertices[0].dot(&w);
        debug_assert!(face.vertices.iter().all(|v| v.dot(&w) == level));
        debug_assert!(level > 0);
        Ok(Self {
            poly: poly.clone(),
            r: n - face.dim,
            face,
            w,
            level,
        })
    }

    pub fn polyhedron(&self) -> &NewtonPolyhedron {
        &self.poly
    }

    pub fn face(&self) -> &Face {
        &self.face
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    /// Codimension `r = n − dim δ`.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn weight(&self) -> &[i64] {
        &self.w
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    /// `⟨w, m⟩ / N` when `m` lies in the cone `ℝ₊δ`, i.e. in `tδ` for that `t`.
    pub fn face_degree(&self, m: &Exponent) -> Option<Rational> {
        if m.len() != self.nvars() {
            return None;
        }
        let t = Rational::new(m.dot(&self.w).into(), self.level.into());
        self.poly.in_scaled_face(&self.face, &t, m, false).then_some(t)
    }

    /// `m ∈ a·δ°` (relative interior).
    pub fn scaled_face_interior_test(&self, a: &Rational, m: &Exponent) -> bool {
        self.poly.in_scaled_face(&self.face, a, m, true)
    }

    pub fn lattice_points(&self, t: &Rational, interior: bool) -> Result<Vec<Exponent>> {
        self.poly.lattice_points_scaled_face(&self.face, t, interior)
    }

    pub fn face_polynomial(&self, f: &SparsePolynomial) -> SparsePolynomial {
        face_polynomial(&self.poly, f, &self.face)
    }
}

/// `f_δ`: the terms of `f` whose exponents lie on `δ`.
pub fn face_polynomial(poly: &NewtonPolyhedron, f: &SparsePolynomial, face: &Face) -> SparsePolynomial {
    let one = Rational::from_integer(1.into());
    f.restrict(|m| poly.in_scaled_face(face, &one, m, false))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NondegeneracyVerdict {
    PassHeuristic,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NondegeneracyReport {
    pub verdict: NondegeneracyVerdict,
    /// Torus point `(re, im)` per coordinate where all `x_i ∂f_δ/∂x_i` are small.
    pub witness: Option<Vec<[f64; 2]>>,
    pub residual: Option<f64>,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NewtonSettings {
    pub tol: f64,
    pub max_iter: usize,
    /// Smallest admissible `|x_i|` after normalization to `max |x_i| = 1`.
    pub torus_floor: f64,
}

impl Default for NewtonSettings {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 200,
            torus_floor: 1e-4,
        }
    }
}

struct EulerSystem {
    n: usize,
    terms: Vec<(Vec<f64>, Complex64)>,
    w: Vec<f64>,
}

impl EulerSystem {
    /// Residuals `F_i = Σ c_m m_i x^m` and the Jacobian in `u = log x`,
    /// `∂F_i/∂u_j = Σ c_m m_i m_j x^m`.
    fn eval(&self, u: &[Complex64]) -> (Vec<Complex64>, Vec<Vec<Complex64>>) {
        let n = self.n;
        let mut f = vec![Complex64::new(0.0, 0.0); n];
        let mut j = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for (m, c) in &self.terms {
            let e: Complex64 = m.iter().zip(u).map(|(mi, ui)| ui * mi).sum();
            let t = c * e.exp();
            for i in 0..n {
                if m[i] == 0.0 {
                    continue;
                }
                f[i] += t * m[i];
                for k in 0..n {
                    j[i][k] += t * (m[i] * m[k]);
                }
            }
        }
        (f, j)
    }

    fn norm(v: &[Complex64]) -> f64 {
        v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Moves `u` along the weighted torus action so that `max |x_i| = 1`
    /// and `x_0` is real positive.
    fn normalize(&self, u: &mut [Complex64]) {
        let t = u
            .iter()
            .zip(&self.w)
            .map(|(ui, wi)| ui.re / wi)
            .fold(f64::NEG_INFINITY, f64::max);
        let phase = u[0].im / self.w[0];
        for (ui, wi) in u.iter_mut().zip(&self.w) {
            ui.re -= t * wi;
            ui.im -= phase * wi;
            ui.im = ui.im.rem_euclid(std::f64::consts::TAU);
            if ui.im > std::f64::consts::PI {
                ui.im -= std::f64::consts::TAU;
            }
        }
    }

    /// Orthonormal basis of the real complement of `w`. Steps along `w` only
    /// move along the torus orbit, which the Euler identity makes the exact
    /// Newton direction towards the trivial zero.
    fn slice_basis(&self) -> Vec<Vec<f64>> {
        let n = self.n;
        let wn = self.w.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut basis: Vec<Vec<f64>> = vec![self.w.iter().map(|x| x / wn).collect()];
        for i in 0..n {
            let mut v = vec![0.0; n];
            v[i] = 1.0;
            for b in &basis {
                let d: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= d * y;
                }
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-8 {
                basis.push(v.into_iter().map(|x| x / norm).collect());
            }
        }
        basis.remove(0);
        basis
    }

    /// Levenberg–Marquardt from one start, with steps restricted to the
    /// slice transverse to the torus orbit; returns a converged torus point.
    fn run(&self, mut u: Vec<Complex64>, s: &NewtonSettings) -> Option<(Vec<Complex64>, f64)> {
        let n = self.n;
        let p = self.slice_basis();
        let d = p.len();
        if d == 0 {
            return None;
        }
        self.normalize(&mut u);
        let (mut f, mut jac) = self.eval(&u);
        let mut res = Self::norm(&f);
        let mut mu = 1e-3;
        for _ in 0..s.max_iter {
            if res < s.tol {
                break;
            }
            // J' = J P, then (J'ᴴJ' + μ I) z = −J'ᴴ F and δ = P z
            let jp: Vec<Vec<Complex64>> = (0..n)
                .map(|l| (0..d).map(|c| (0..n).map(|k| jac[l][k] * p[c][k]).sum()).collect())
                .collect();
            let mut a = vec![vec![Complex64::new(0.0, 0.0); d]; d];
            let mut b = vec![Complex64::new(0.0, 0.0); d];
            for i in 0..d {
                for k in 0..d {
                    a[i][k] = (0..n).map(|l| jp[l][i].conj() * jp[l][k]).sum();
                }
                b[i] = -(0..n).map(|l| jp[l][i].conj() * f[l]).sum::<Complex64>();
            }
            let scale = (0..d).map(|i| a[i][i].re).fold(0.0, f64::max).max(1e-300);
            for (i, row) in a.iter_mut().enumerate() {
                row[i] += mu * scale;
            }
            let z = solve_complex(a, b)?;
            let mut trial: Vec<Complex64> = (0..n)
                .map(|k| u[k] + (0..d).map(|c| z[c] * p[c][k]).sum::<Complex64>())
                .collect();
            self.normalize(&mut trial);
            if trial.iter().any(|z| !z.re.is_finite() || z.re < -60.0) {
                return None;
            }
            let (tf, tj) = self.eval(&trial);
            let tres = Self::norm(&tf);
            if tres < res {
                u = trial;
                f = tf;
                jac = tj;
                res = tres;
                mu = (mu / 3.0).max(1e-15);
            } else {
                mu *= 4.0;
                if mu > 1e12 {
                    return None;
                }
            }
        }
        let floor = s.torus_floor.ln();
        (res < s.tol && u.iter().all(|z| z.re >= floor)).then_some((u, res))
    }
}

/// Damped Newton search for a torus critical point of `f_δ`, i.e. a common
/// zero of `x_i ∂f_δ/∂x_i`. Finding none is evidence, not proof, of
/// non-degeneracy. Trial `t` uses the stream `derive_seed(seed, t)`; the
/// lowest-indexed converged trial is reported.
pub fn nondegeneracy_heuristic(
    f_delta: &SparsePolynomial,
    weight: &[i64],
    trials: usize,
    seed: u64,
    settings: &NewtonSettings,
) -> NondegeneracyReport {
    let n = f_delta.nvars();
    let system = EulerSystem {
        n,
        terms: f_delta
            .to_complex_terms()
            .into_iter()
            .map(|(m, c)| (m.into_iter().map(|x| x as f64).collect(), c))
            .collect(),
        w: weight.iter().map(|&x| x as f64).collect(),
    };
    let found = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, t as u64));
            let u: Vec<Complex64> = (0..n)
                .map(|_| {
                    let modulus: f64 = rng.random_range(0.3f64.ln()..3.0f64.ln());
                    let phase: f64 = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
                    Complex64::new(modulus, phase)
                })
                .collect();
            system.run(u, settings)
        })
        .find_first(|r| r.is_some())
        .flatten();
    match found {
        Some((u, res)) => NondegeneracyReport {
            verdict: NondegeneracyVerdict::Fail,
            witness: Some(
                u.iter()
                    .map(|z| {
                        let x = z.exp();
                        [x.re, x.im]
                    })
                    .collect(),
            ),
            residual: Some(res),
            trials,
            seed,
        },
        None => NondegeneracyReport {
            verdict: NondegeneracyVerdict::PassHeuristic,
            witness: None,
            residual: None,
            trials,
            seed,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio, GaussianRational};
    use proptest::prelude::*;

    fn poly(n: usize, t: &[(&[i64], i64)]) -> SparsePolynomial {
        SparsePolynomial::from_int_terms(n, t)
    }

    fn ctx_for(f: &SparsePolynomial, vertices: &[&[i64]]) -> FaceContext {
        let p = NewtonPolyhedron::build(&f.support()).unwrap();
        let vs: Vec<Exponent> = vertices.iter().map(|v| Exponent(v.to_vec())).collect();
        let id = p.face_by_vertices(&vs).unwrap().id;
        FaceContext::new(&p, id).unwrap()
    }

    #[test]
    fn face_polynomials() {
        let f = poly(2, &[(&[5, 0], 1), (&[2, 2], 1), (&[0, 5], 1)]);
        let c = ctx_for(&f, &[&[2, 2]]);
        assert_eq!(c.face_polynomial(&f), poly(2, &[(&[2, 2], 1)]));
        let g = poly(2, &[(&[3, 0], 1), (&[1, 1], 1), (&[0, 3], 1)]);
        let c = ctx_for(&g, &[&[1, 1], &[3, 0]]);
        assert_eq!(c.face_polynomial(&g), poly(2, &[(&[3, 0], 1), (&[1, 1], 1)]));
        assert_eq!(c.weight(), &[1, 2]);
        assert_eq!(c.level(), 3);
    }

    #[test]
    fn degrees_on_cusp_edge() {
        let f = poly(2, &[(&[2, 0], 1), (&[0, 3], 1)]);
        let c = ctx_for(&f, &[&[0, 3], &[2, 0]]);
        assert_eq!(c.r(), 1);
        assert_eq!(c.face_degree(&Exponent::from([1, 1])), Some(ratio(5, 6)));
        assert_eq!(c.face_degree(&Exponent::from([2, 0])), Some(int(1)));
        assert_eq!(c.face_degree(&Exponent::from([1, 2])), Some(ratio(7, 6)));
        assert!(c.scaled_face_interior_test(&ratio(5, 6), &Exponent::from([1, 1])));
    }

    #[test]
    fn degree_outside_cone_is_none() {
        // vertex (2,2) of x^5 + x^2y^2 + y^5: only multiples of (1,1) are graded
        let f = poly(2, &[(&[5, 0], 1), (&[2, 2], 1), (&[0, 5], 1)]);
        let c = ctx_for(&f, &[&[2, 2]]);
        assert_eq!(c.r(), 2);
        assert_eq!(c.face_degree(&Exponent::from([1, 1])), Some(ratio(1, 2)));
        assert_eq!(c.face_degree(&Exponent::from([1, 2])), None);
        assert!(c.scaled_face_interior_test(&ratio(1, 2), &Exponent::from([1, 1])));
    }

    #[test]
    fn endpoint_not_interior() {
        let f = poly(2, &[(&[3, 0], 1), (&[0, 3], 1)]);
        let c = ctx_for(&f, &[&[0, 3], &[3, 0]]);
        assert!(!c.scaled_face_interior_test(&ratio(4, 3), &Exponent::from([4, 0])));
        assert!(c.scaled_face_interior_test(&ratio(4, 3), &Exponent::from([2, 2])));
    }

    #[test]
    fn vertex_on_axis_rejected() {
        let f = poly(2, &[(&[2, 0], 1), (&[0, 3], 1)]);
        let p = NewtonPolyhedron::build(&f.support()).unwrap();
        let id = p.face_by_vertices(&[Exponent::from([2, 0])]).unwrap().id;
        assert!(matches!(FaceContext::new(&p, id), Err(Error::FaceOnHyperplane(_))));
    }

    #[test]
    fn heuristic_examples() {
        let s = NewtonSettings::default();
        let r = nondegeneracy_heuristic(&poly(2, &[(&[2, 2], 1)]), &[1, 1], 16, 1, &s);
        assert_eq!(r.verdict, NondegeneracyVerdict::PassHeuristic);
        let r = nondegeneracy_heuristic(&poly(2, &[(&[2, 0], 1), (&[0, 3], 1)]), &[3, 2], 16, 1, &s);
        assert_eq!(r.verdict, NondegeneracyVerdict::PassHeuristic);
        let sq = poly(2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]);
        let r = nondegeneracy_heuristic(&sq, &[1, 1], 16, 1, &s);
        assert_eq!(r.verdict, NondegeneracyVerdict::Fail);
        let w = r.witness.unwrap();
        assert!((w[0][0] - 1.0).abs() < 1e-6 && w[0][1].abs() < 1e-6);
        assert!((w[1][0] + 1.0).abs() < 1e-6 && w[1][1].abs() < 1e-6);
        // residuals re-evaluated independently at the witness
        let x = [Complex64::new(w[0][0], w[0][1]), Complex64::new(w[1][0], w[1][1])];
        for i in 0..2 {
            let d = sq.euler_derivative(i).unwrap();
            let v: Complex64 = d
                .to_complex_terms()
                .iter()
                .map(|(m, c)| c * x[0].powi(m[0] as i32) * x[1].powi(m[1] as i32))
                .sum();
            assert!(v.norm() < 1e-9);
        }
        let again = nondegeneracy_heuristic(&sq, &[1, 1], 16, 1, &s);
        assert_eq!(again.witness, Some(w));
    }

    #[test]
    fn heuristic_finds_complex_degeneracy() {
        // (x − i y)^2 = x^2 − 2i xy − y^2
        let mut f = SparsePolynomial::zero(2);
        f.add_term(Exponent::from([2, 0]), GaussianRational::from_integer(1));
        f.add_term(Exponent::from([1, 1]), GaussianRational::from_integer(-2) * GaussianRational::i());
        f.add_term(Exponent::from([0, 2]), GaussianRational::from_integer(-1));
        let r = nondegeneracy_heuristic(&f, &[1, 1], 16, 9, &NewtonSettings::default());
        assert_eq!(r.verdict, NondegeneracyVerdict::Fail);
    }

    proptest! {
        #[test]
        fn vertices_have_degree_one_and_degrees_add(
            a in 2i64..7, b in 2i64..7, c in 1i64..3, d in 1i64..3,
            m1 in (0i64..6, 0i64..6), m2 in (0i64..6, 0i64..6),
        ) {
            let f = poly(2, &[(&[a, 0], 1), (&[0, b], 1), (&[c, d], 1)]);
            let p = NewtonPolyhedron::build(&f.support()).unwrap();
            for face in p.compact_faces().filter(|f| !f.on_coordinate_hyperplane) {
                let ctx = FaceContext::new(&p, face.id).unwrap();
                for v in &face.vertices {
                    prop_assert_eq!(ctx.face_degree(v), Some(int(1)));
                }
                let x = Exponent::from([m1.0, m1.1]);
                let y = Exponent::from([m2.0, m2.1]);
                if let (Some(dx), Some(dy)) = (ctx.face_degree(&x), ctx.face_degree(&y)) {
                    prop_assert_eq!(ctx.face_degree(&x.add(&y)), Some(dx + dy));
                }
                for t in [ratio(1, 2), ratio(5, 6), int(2), ratio(7, 3)] {
                    for m in ctx.lattice_points(&t, true).unwrap() {
                        prop_assert!(ctx.scaled_face_interior_test(&t, &m));
                        prop_assert_eq!(ctx.face_degree(&m), Some(t.clone()));
                    }
                }
            }
        }
    }
}
