//! Generator-to-inequality conversion for `conv(points) + ℝ₊ⁿ` by the
//! double description method on the homogenized dual cone
//! `{(a, t) : ⟨p, a⟩ + t ≥ 0 ∀p, a ≥ 0}`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::Facet;
use crate::exact::Exponent;

#[derive(Clone, Debug)]
struct Ray {
    coords: Vec<BigInt>,
    zeros: BTreeSet<usize>,
}

fn normalize(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

/// Constraint `k` as a vector in ℤ^{n+1}: points come first, then the `n`
/// coordinate constraints `a_i ≥ 0`.
fn constraint(points: &[Exponent], n: usize, k: usize) -> Vec<BigInt> {
    if k < points.len() {
        let mut c: Vec<BigInt> = points[k].coords().iter().map(|&x| BigInt::from(x)).collect();
        c.push(BigInt::from(1));
        c
    } else {
        let mut c = vec![BigInt::zero(); n + 1];
        c[k - points.len()] = BigInt::from(1);
        c
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Facet inequalities `⟨normal, x⟩ ≥ level` of `conv(points) + ℝ₊ⁿ`.
/// `points` must be non-empty, nonnegative and of common length `n`.
pub(super) fn facets(points: &[Exponent], n: usize) -> Vec<Facet> {
    let m = points.len();
    let d = n + 1;
    let coord_constraint = |i: usize| m + i;

    // Cone cut out by the first point and all coordinate constraints: an
    // orthant in the coordinates (a, t + ⟨p₀, a⟩).
    let p0 = points[0].coords();
    let mut rays = Vec::with_capacity(n + 1);
    let mut top = vec![BigInt::zero(); d];
    top[n] = BigInt::from(1);
    rays.push(Ray {
        coords: top,
        zeros: (0..n).map(coord_constraint).collect(),
    });
    for i in 0..n {
        let mut c = vec![BigInt::zero(); d];
        c[i] = BigInt::from(1);
        c[n] = BigInt::from(-p0[i]);
        let mut zeros: BTreeSet<usize> = (0..n).filter(|&j| j != i).map(coord_constraint).collect();
        zeros.insert(0);
        rays.push(Ray { coords: c, zeros });
    }

    for k in 1..m {
        let c = constraint(points, n, k);
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(&c, &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.insert(k);
                }
            }
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if vals[i].is_positive() {
                next.push(r.clone());
            } else if vals[i].is_zero() {
                let mut r = r.clone();
                r.zeros.insert(k);
                next.push(r);
            }
        }
        for &ip in &pos {
            for &iq in &neg {
                let common: BTreeSet<usize> =
                    rays[ip].zeros.intersection(&rays[iq].zeros).copied().collect();
                if common.len() + 2 < d {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(j, r)| {
                    j == ip || j == iq || !common.is_subset(&r.zeros)
                });
                if !adjacent {
                    continue;
                }
                let vp = &vals[ip];
                let vq = -&vals[iq];
                let mut coords: Vec<BigInt> = rays[iq]
                    .coords
                    .iter()
                    .zip(&rays[ip].coords)
                    .map(|(q, p)| vp * q + &vq * p)
                    .collect();
                normalize(&mut coords);
                let mut zeros = common;
                zeros.insert(k);
                next.push(Ray { coords, zeros });
            }
        }
        rays = next;
    }

    let mut out: Vec<Facet> = rays
        .into_iter()
        .filter(|r| r.coords[..n].iter().any(|x| !x.is_zero()))
        .map(|r| {
            let mut v = r.coords;
            let g = v[..n].iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            for x in v.iter_mut() {
                *x /= &g;
            }
            Facet {
                normal: v[..n].iter().map(|x| x.to_i64().expect("normal fits i64")).collect(),
                level: (-&v[n]).to_i64().expect("level fits i64"),
            }
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<Exponent> {
        v.iter().map(|p| Exponent(p.to_vec())).collect()
    }

    fn f(normal: &[i64], level: i64) -> Facet {
        Facet {
            normal: normal.to_vec(),
            level,
        }
    }

    #[test]
    fn two_point_hull() {
        let mut got = facets(&pts(&[&[2, 0], &[0, 3]]), 2);
        got.sort();
        let mut want = vec![f(&[3, 2], 6), f(&[1, 0], 0), f(&[0, 1], 0)];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn orthant_translate() {
        let got = facets(&pts(&[&[1, 1]]), 2);
        assert_eq!(got, vec![f(&[0, 1], 1), f(&[1, 0], 1)]);
    }

    #[test]
    fn redundant_points_ignored() {
        // (3,3) and (2,2) both lie above the boundary of x^2 + y^2
        let got = facets(&pts(&[&[2, 0], &[3, 3], &[0, 2], &[1, 1], &[5, 0]]), 2);
        let mut want = vec![f(&[1, 1], 2), f(&[1, 0], 0), f(&[0, 1], 0)];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn three_dimensional_simplex() {
        let got = facets(&pts(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 6]]), 3);
        let mut want = vec![f(&[3, 2, 1], 6), f(&[1, 0, 0], 0), f(&[0, 1, 0], 0), f(&[0, 0, 1], 0)];
        want.sort();
        assert_eq!(got, want);
    }
}
