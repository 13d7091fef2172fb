//! Integer points of scaled compact faces `tδ` and of their relative interiors.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{Face, NewtonPolyhedron};
use crate::error::{Error, Result};
use crate::exact::{Exponent, Rational};

impl NewtonPolyhedron {
    /// `m ∈ tδ`: every facet inequality holds at `m`, with equality on the
    /// facets containing `δ`. With `interior`, the remaining facets must be strict.
    pub fn in_scaled_face(&self, face: &Face, t: &Rational, m: &Exponent, interior: bool) -> bool {
        if m.len() != self.nvars || !m.is_nonnegative() {
            return false;
        }
        if t.is_zero() {
            return m.coords().iter().all(|&c| c == 0);
        }
        self.facets.iter().enumerate().all(|(i, f)| {
            let lhs = Rational::from_integer(f.value(m).into());
            let rhs = t * Rational::from_integer(f.level.into());
            if face.active_facets.binary_search(&i).is_ok() {
                lhs == rhs
            } else if interior {
                lhs > rhs
            } else {
                lhs >= rhs
            }
        })
    }

    /// All lattice points of `tδ` (or of its relative interior), in lexicographic order.
    pub fn lattice_points_scaled_face(&self, face: &Face, t: &Rational, interior: bool) -> Result<Vec<Exponent>> {
        if !face.is_compact {
            return Err(Error::NonCompactFace(face.id));
        }
        if t.is_negative() {
            return Err(Error::NegativeScale);
        }
        if t.is_zero() {
            let origin = Exponent::zero(self.nvars);
            // 0·δ is a single point, which is its own relative interior
            return Ok(vec![origin]);
        }
        let n = self.nvars;
        let bounds: Vec<(i64, i64)> = (0..n)
            .map(|i| {
                let lo = face.vertices.iter().map(|v| v.coords()[i]).min().expect("face has vertices");
                let hi = face.vertices.iter().map(|v| v.coords()[i]).max().expect("face has vertices");
                let lo = (t * Rational::from_integer(BigInt::from(lo))).ceil().to_integer();
                let hi = (t * Rational::from_integer(BigInt::from(hi))).floor().to_integer();
                (to_i64(&lo), to_i64(&hi))
            })
            .collect();
        let mut out = Vec::new();
        if bounds.iter().any(|(lo, hi)| lo > hi) {
            return Ok(out);
        }
        let mut cur: Vec<i64> = bounds.iter().map(|b| b.0).collect();
        loop {
            let m = Exponent(cur.clone());
            if self.in_scaled_face(face, t, &m, interior) {
                out.push(m);
            }
            // odometer, last coordinate fastest
            let mut k = n;
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                if cur[k] < bounds[k].1 {
                    cur[k] += 1;
                    for (j, c) in cur.iter_mut().enumerate().skip(k + 1) {
                        *c = bounds[j].0;
                    }
                    break;
                }
            }
        }
    }
}

fn to_i64(x: &BigInt) -> i64 {
    i64::try_from(x).expect("scaled face coordinates fit in i64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};
    use proptest::prelude::*;

    fn build(pts: &[&[i64]]) -> NewtonPolyhedron {
        let s: Vec<Exponent> = pts.iter().map(|p| Exponent(p.to_vec())).collect();
        NewtonPolyhedron::build(&s).unwrap()
    }

    fn e(v: &[i64]) -> Exponent {
        Exponent(v.to_vec())
    }

    fn edge(p: &NewtonPolyhedron) -> &Face {
        p.compact_faces().find(|f| f.dim == 1).unwrap()
    }

    #[test]
    fn cusp_edge_at_five_sixths() {
        let p = build(&[&[2, 0], &[0, 3]]);
        let pts = p.lattice_points_scaled_face(edge(&p), &ratio(5, 6), false).unwrap();
        assert_eq!(pts, vec![e(&[1, 1])]);
    }

    #[test]
    fn cubic_edge_at_four_thirds() {
        let p = build(&[&[3, 0], &[0, 3]]);
        let closed = p.lattice_points_scaled_face(edge(&p), &ratio(4, 3), false).unwrap();
        assert_eq!(closed, vec![e(&[0, 4]), e(&[1, 3]), e(&[2, 2]), e(&[3, 1]), e(&[4, 0])]);
        let open = p.lattice_points_scaled_face(edge(&p), &ratio(4, 3), true).unwrap();
        assert_eq!(open, vec![e(&[1, 3]), e(&[2, 2]), e(&[3, 1])]);
    }

    #[test]
    fn scaled_vertex() {
        let p = build(&[&[5, 0], &[2, 2], &[0, 5]]);
        let v = p.face_by_vertices(&[e(&[2, 2])]).unwrap();
        assert_eq!(p.lattice_points_scaled_face(v, &ratio(1, 2), false).unwrap(), vec![e(&[1, 1])]);
        assert_eq!(p.lattice_points_scaled_face(v, &ratio(1, 2), true).unwrap(), vec![e(&[1, 1])]);
        assert!(p.lattice_points_scaled_face(v, &ratio(1, 3), false).unwrap().is_empty());
    }

    #[test]
    fn non_compact_face_rejected() {
        let p = build(&[&[2, 0], &[0, 3]]);
        let nc = p.faces().iter().find(|f| !f.is_compact).unwrap();
        assert!(matches!(
            p.lattice_points_scaled_face(nc, &int(1), false),
            Err(Error::NonCompactFace(_))
        ));
    }

    proptest! {
        #[test]
        fn closed_counts_monotone_in_integer_scale(
            a in 2i64..6, b in 2i64..6, c in 0i64..3, d in 0i64..3,
        ) {
            let p = build(&[&[a, 0], &[0, b], &[c, d]]);
            for face in p.compact_faces() {
                let mut prev = 0;
                for t in 0..5 {
                    let k = p.lattice_points_scaled_face(face, &int(t), false).unwrap().len();
                    prop_assert!(k >= prev);
                    prev = k;
                }
            }
        }
    }
}
