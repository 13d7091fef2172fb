//! Newton polyhedra `Γ₊ = conv(supp + ℕⁿ)`: facets, face lattice, Newton
//! order, scaled-face lattice points and the Kouchnirenko number.

mod hull;
mod kouchnirenko;
mod lattice;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Exponent, GaussianRational, Matrix, Rational};
use crate::forms::{LeadingPair, LogForm};

pub use kouchnirenko::newton_number;

/// Facet inequality `⟨normal, x⟩ ≥ level` with a primitive nonnegative normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub level: i64,
}

impl Facet {
    pub fn value(&self, m: &Exponent) -> i64 {
        m.dot(&self.normal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub id: usize,
    pub dim: usize,
    /// Indices into [`NewtonPolyhedron::facets`] of the facets containing this face.
    pub active_facets: Vec<usize>,
    pub vertices: Vec<Exponent>,
    /// Coordinate directions `e_i` in the recession cone of the face.
    pub rays: Vec<usize>,
    pub is_compact: bool,
    pub on_coordinate_hyperplane: bool,
}

/// `(v, l)`: Newton order and codimension defect of a support.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderPair {
    #[serde(with = "crate::exact::rational_string")]
    pub v: Rational,
    pub l: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolyhedron {
    nvars: usize,
    generators: Vec<Exponent>,
    facets: Vec<Facet>,
    faces: Vec<Face>,
}

fn integer_rank(rows: &[&[i64]], n: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m = Matrix::zeros(rows.len(), n);
    for (i, r) in rows.iter().enumerate() {
        for (j, &x) in r.iter().enumerate() {
            m.set(i, j, GaussianRational::from_integer(x));
        }
    }
    m.rank()
}

impl NewtonPolyhedron {
    /// Builds `Γ₊(supp)` exactly: facets by double description, then the face
    /// lattice as the intersection closure of the facets.
    pub fn build(support: &[Exponent]) -> Result<Self> {
        let first = support.first().ok_or(Error::EmptySupport)?;
        let n = first.len();
        for e in support {
            if e.len() != n {
                return Err(Error::VariableCountMismatch {
                    left: e.len(),
                    right: n,
                });
            }
            if !e.is_nonnegative() {
                return Err(Error::NegativeExponent(e.0.clone()));
            }
        }
        let generators: Vec<Exponent> = support
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let facets = hull::facets(&generators, n);
        let faces = enumerate_faces(n, &generators, &facets);
        Ok(Self {
            nvars: n,
            generators,
            facets,
            faces,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Exponent] {
        &self.generators
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> Result<&Face> {
        self.faces.get(id).ok_or(Error::UnknownFace(id))
    }

    pub fn compact_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| f.is_compact)
    }

    /// Finds the face with exactly this vertex set (order-insensitive).
    pub fn face_by_vertices(&self, vertices: &[Exponent]) -> Option<&Face> {
        let want: BTreeSet<&Exponent> = vertices.iter().collect();
        self.faces
            .iter()
            .find(|f| f.is_compact && f.vertices.iter().collect::<BTreeSet<_>>() == want)
    }

    /// Γ₊ meets every coordinate axis.
    pub fn is_convenient(&self) -> bool {
        (0..self.nvars).all(|i| {
            self.generators.iter().any(|g| {
                g.coords()
                    .iter()
                    .enumerate()
                    .all(|(j, &c)| if j == i { c > 0 } else { c == 0 })
            })
        })
    }

    /// Newton order `ν(m) = min ⟨a, m⟩ / N_a` over facets of positive level.
    pub fn newton_order(&self, m: &Exponent) -> Result<Rational> {
        if m.len() != self.nvars {
            return Err(Error::VariableCountMismatch {
                left: m.len(),
                right: self.nvars,
            });
        }
        if !m.is_nonnegative() {
            return Err(Error::NegativeExponent(m.0.clone()));
        }
        let best = self
            .facets
            .iter()
            .filter(|f| f.level > 0)
            .map(|f| Rational::new(f.value(m).into(), f.level.into()))
            .min()
            .ok_or(Error::NoPositiveLevel)?;
        if m.coords().iter().all(|&c| c == 0) {
            return Ok(Rational::zero());
        }
        Ok(best)
    }

    /// Facets tight at `m / t`, i.e. with `⟨a, m⟩ = t·N_a`.
    fn tight_facets(&self, m: &Exponent, t: &Rational) -> BTreeSet<usize> {
        self.facets
            .iter()
            .enumerate()
            .filter(|(_, f)| Rational::from_integer(f.value(m).into()) == t * Rational::from_integer(f.level.into()))
            .map(|(i, _)| i)
            .collect()
    }

    /// Smallest face of Γ₊ containing `m / t`, for `m ∈ tΓ₊`, `t > 0`.
    pub fn minimal_face_of_scaled_point(&self, m: &Exponent, t: &Rational) -> Option<&Face> {
        let tight: Vec<usize> = self.tight_facets(m, t).into_iter().collect();
        if tight.is_empty() {
            return None;
        }
        self.faces.iter().find(|f| f.active_facets == tight)
    }

    /// `v(h)` and `l(h)` for a support in `ℕⁿ`.
    pub fn newton_pair_support(&self, support: &[Exponent]) -> Result<OrderPair> {
        if support.is_empty() {
            return Err(Error::ZeroForm);
        }
        let orders = support
            .iter()
            .map(|m| self.newton_order(m))
            .collect::<Result<Vec<_>>>()?;
        let v = orders.iter().min().expect("non-empty").clone();
        let minimizers = support.iter().zip(&orders).filter(|(_, o)| **o == v).map(|(m, _)| m);
        let mut best: Option<usize> = None;
        for m in minimizers {
            let candidate = if v.is_zero() {
                // 0·δ = {0} for every compact face; vertices are the smallest
                (m.coords().iter().all(|&c| c == 0)).then_some(self.nvars - 1)
            } else {
                self.minimal_face_of_scaled_point(m, &v)
                    .filter(|f| f.is_compact)
                    .map(|f| self.nvars - 1 - f.dim)
            };
            if let Some(l) = candidate {
                best = Some(best.map_or(l, |b| b.max(l)));
            }
        }
        match best {
            Some(l) => Ok(OrderPair { v, l }),
            None => {
                let m = support.iter().zip(&orders).find(|(_, o)| **o == v).unwrap().0;
                Err(Error::NoCompactFace(m.0.clone()))
            }
        }
    }

    /// `(v, l)` of a form, measured on its logarithmic-basis support.
    pub fn newton_pair_form(&self, form: &LogForm) -> Result<OrderPair> {
        self.check_form(form)?;
        self.newton_pair_support(&form.support())
    }

    /// `(v(φ) − 1, l(φ))`, a lower bound for the leading pair of `φ`.
    pub fn vasilev_lower_bound(&self, form: &LogForm) -> Result<LeadingPair> {
        let p = self.newton_pair_form(form)?;
        Ok(LeadingPair::new(p.v - Rational::from_integer(1.into()), p.l))
    }

    fn check_form(&self, form: &LogForm) -> Result<()> {
        if form.nvars() != self.nvars {
            return Err(Error::VariableCountMismatch {
                left: form.nvars(),
                right: self.nvars,
            });
        }
        if form.is_zero() {
            return Err(Error::ZeroForm);
        }
        Ok(())
    }

    /// Convex-hull membership test `m ∈ tΓ₊` (used by tests and the grading).
    pub fn contains_scaled(&self, m: &Exponent, t: &Rational) -> bool {
        m.is_nonnegative()
            && self.facets.iter().all(|f| {
                Rational::from_integer(f.value(m).into()) >= t * Rational::from_integer(f.level.into())
            })
    }
}

fn enumerate_faces(n: usize, points: &[Exponent], facets: &[Facet]) -> Vec<Face> {
    type Incidence = (BTreeSet<usize>, BTreeSet<usize>);
    let facet_incidence: Vec<Incidence> = facets
        .iter()
        .map(|f| {
            let pts = points
                .iter()
                .enumerate()
                .filter(|(_, p)| f.value(p) == f.level)
                .map(|(i, _)| i)
                .collect();
            let rays = (0..n).filter(|&i| f.normal[i] == 0).collect();
            (pts, rays)
        })
        .collect();

    let mut seen: BTreeSet<Incidence> = facet_incidence.iter().cloned().collect();
    let mut queue: Vec<Incidence> = seen.iter().cloned().collect();
    while let Some((pts, rays)) = queue.pop() {
        for (fp, fr) in &facet_incidence {
            let p: BTreeSet<usize> = pts.intersection(fp).copied().collect();
            if p.is_empty() {
                continue;
            }
            let r: BTreeSet<usize> = rays.intersection(fr).copied().collect();
            let key = (p, r);
            if seen.insert(key.clone()) {
                queue.push(key);
            }
        }
    }

    let tight_at: Vec<Vec<usize>> = points
        .iter()
        .map(|p| {
            facets
                .iter()
                .enumerate()
                .filter(|(_, f)| f.value(p) == f.level)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let is_vertex: Vec<bool> = tight_at
        .iter()
        .map(|t| {
            let rows: Vec<&[i64]> = t.iter().map(|&i| facets[i].normal.as_slice()).collect();
            integer_rank(&rows, n) == n
        })
        .collect();

    let mut faces: Vec<Face> = seen
        .into_iter()
        .map(|(pts, rays)| {
            let active: Vec<usize> = facet_incidence
                .iter()
                .enumerate()
                .filter(|(_, (fp, fr))| pts.is_subset(fp) && rays.is_subset(fr))
                .map(|(i, _)| i)
                .collect();
            let rows: Vec<&[i64]> = active.iter().map(|&i| facets[i].normal.as_slice()).collect();
            let dim = n - integer_rank(&rows, n);
            let vertices: Vec<Exponent> = pts
                .iter()
                .filter(|&&i| is_vertex[i])
                .map(|&i| points[i].clone())
                .collect();
            let normal_sum: Vec<i64> = (0..n)
                .map(|j| active.iter().map(|&i| facets[i].normal[j]).sum())
                .collect();
            let is_compact = normal_sum.iter().all(|&s| s > 0);
            debug_assert_eq!(is_compact, rays.is_empty());
            let on_coordinate_hyperplane = (0..n)
                .any(|j| !rays.contains(&j) && vertices.iter().all(|v| v.coords()[j] == 0));
            Face {
                id: 0,
                dim,
                active_facets: active,
                vertices,
                rays: rays.into_iter().collect(),
                is_compact,
                on_coordinate_hyperplane,
            }
        })
        .collect();
    faces.sort_by(|a, b| {
        (a.dim, &a.vertices, &a.rays).cmp(&(b.dim, &b.vertices, &b.rays))
    });
    for (i, f) in faces.iter_mut().enumerate() {
        f.id = i;
    }
    faces
}

/// Groups compact faces by dimension; handy for reports.
pub fn compact_face_counts(p: &NewtonPolyhedron) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for f in p.compact_faces() {
        *out.entry(f.dim).or_insert(0) += 1;
    }
    out
}
