//! Kouchnirenko's Newton number
//! `ν(Γ₊) = Σ_{k=1}^{n} (−1)^{n−k} Σ_{|J|=k} k!·V_k(J) + (−1)^n`,
//! with `V_k(J)` the volume under the Newton boundary in the coordinate
//! subspace `ℝ^J`.

use super::{Face, NewtonPolyhedron};
use crate::error::{Error, Result};
use crate::exact::exterior::index_sets;
use crate::exact::Exponent;

/// Determinant by fraction-free (Bareiss) elimination.
pub(crate) fn det_i128(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Pulling triangulation of a compact face using the face lattice.
fn triangulate<'a>(p: &'a NewtonPolyhedron, face: &'a Face) -> Vec<Vec<&'a Exponent>> {
    if face.dim == 0 {
        return vec![vec![&face.vertices[0]]];
    }
    let v0 = &face.vertices[0];
    let mut out = Vec::new();
    for g in p.compact_faces() {
        if g.dim + 1 != face.dim
            || g.vertices.contains(v0)
            || !g.vertices.iter().all(|v| face.vertices.contains(v))
        {
            continue;
        }
        for mut s in triangulate(p, g) {
            s.push(v0);
            out.push(s);
        }
    }
    out
}

/// `k!·V_k` for a polyhedron in `k` variables: the normalized volume of the
/// region between the origin and the compact facets.
fn normalized_volume_under_boundary(p: &NewtonPolyhedron) -> i128 {
    let k = p.nvars();
    p.compact_faces()
        .filter(|f| f.dim + 1 == k)
        .flat_map(|f| triangulate(p, f))
        .map(|simplex| {
            let m: Vec<Vec<i128>> = simplex
                .iter()
                .map(|v| v.coords().iter().map(|&x| x as i128).collect())
                .collect();
            det_i128(m).abs()
        })
        .sum()
}

/// Newton number of a convenient Newton polyhedron.
pub fn newton_number(p: &NewtonPolyhedron) -> Result<i128> {
    if !p.is_convenient() {
        return Err(Error::NotConvenient);
    }
    let n = p.nvars();
    if p.generators().iter().any(|g| g.coords().iter().all(|&c| c == 0)) {
        // a unit has no critical point at the origin
        return Ok(0);
    }
    let mut total: i128 = if n.is_multiple_of(2) { 1 } else { -1 };
    for k in 1..=n {
        let sign: i128 = if (n - k).is_multiple_of(2) { 1 } else { -1 };
        for j in index_sets(n, k) {
            let restricted: Vec<Exponent> = p
                .generators()
                .iter()
                .filter(|g| (0..n).all(|i| j.contains(&i) || g.coords()[i] == 0))
                .map(|g| Exponent(j.iter().map(|&i| g.coords()[i]).collect()))
                .collect();
            let q = NewtonPolyhedron::build(&restricted)?;
            total += sign * normalized_volume_under_boundary(&q);
        }
    }
    Ok(total)
}
