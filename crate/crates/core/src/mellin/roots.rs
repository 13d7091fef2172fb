//! Univariate complex root finding (Aberth–Ehrlich), started from the Newton
//! polygon of `ln |a_k|` so that widely separated root scales are resolved.

use num_complex::Complex64;

/// Upper convex hull of `(k, ln|a_k|)` over the non-zero coefficients.
fn newton_polygon(logs: &[(usize, f64)]) -> Vec<(usize, f64)> {
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in logs {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

fn initial_guesses(coeffs: &[Complex64]) -> Vec<Complex64> {
    let logs: Vec<(usize, f64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(k, c)| (k, c.norm().ln()))
        .collect();
    let hull = newton_polygon(&logs);
    let degree = coeffs.len() - 1;
    let mut out = Vec::with_capacity(degree);
    for w in hull.windows(2) {
        let (k0, l0) = w[0];
        let (k1, l1) = w[1];
        let count = k1 - k0;
        let log_r = (l0 - l1) / count as f64;
        for j in 0..count {
            let theta = std::f64::consts::TAU * (j as f64 + 0.25) / count as f64 + 0.4 * k0 as f64;
            out.push(Complex64::from_polar(log_r.exp(), theta));
        }
    }
    out
}

/// `p(z)` and `p'(z)` by Horner.
fn eval(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Roots of `Σ a_k z^k` (ascending coefficients, `a_0 ≠ 0`, `a_d ≠ 0`).
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let degree = coeffs.len() - 1;
    if degree == 0 {
        return Vec::new();
    }
    if degree == 1 {
        return vec![-coeffs[0] / coeffs[1]];
    }
    let mut z = initial_guesses(coeffs);
    debug_assert_eq!(z.len(), degree);
    let mut done = vec![false; degree];
    for _ in 0..200 {
        let mut all_done = true;
        for j in 0..degree {
            if done[j] {
                continue;
            }
            let (p, dp) = eval(coeffs, z[j]);
            if p == Complex64::new(0.0, 0.0) {
                done[j] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree)
                .filter(|&k| k != j)
                .map(|k| (z[j] - z[k]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[j] -= step;
            }
            if !step.is_finite() || step.norm() <= 1e-15 * z[j].norm() {
                done[j] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn check(coeffs: &[Complex64]) {
        let roots = polynomial_roots(coeffs);
        assert_eq!(roots.len(), coeffs.len() - 1);
        // monic reconstruction: Π (z − r_j) matches a / a_d coefficientwise
        let mut prod = vec![c(1.0)];
        for r in &roots {
            let mut next = vec![c(0.0); prod.len() + 1];
            for (k, p) in prod.iter().enumerate() {
                next[k + 1] += p;
                next[k] -= p * r;
            }
            prod = next;
        }
        let lead = coeffs[coeffs.len() - 1];
        for (k, (a, b)) in prod.iter().zip(coeffs).enumerate() {
            let want = b / lead;
            let scale = want.norm().max(1e-300);
            assert!((a - want).norm() <= 1e-9 * scale.max(1.0) || (a - want).norm() / scale < 1e-8, "k={k} {a} vs {want}");
        }
    }

    #[test]
    fn cubic() {
        check(&[c(-6.0), c(11.0), c(-6.0), c(1.0)]);
    }

    #[test]
    fn widely_separated_scales() {
        // x^5 + y^2 x^2 + y^5 at y = 1e-20
        let y: f64 = 1e-20;
        let coeffs = [c(y.powi(5)), c(0.0), c(y * y), c(0.0), c(0.0), c(1.0)];
        let roots = polynomial_roots(&coeffs);
        let mut mags: Vec<f64> = roots.iter().map(|r| r.norm().log10()).collect();
        mags.sort_by(f64::total_cmp);
        assert!((mags[0] + 30.0).abs() < 1e-6 && (mags[1] + 30.0).abs() < 1e-6);
        for m in &mags[2..] {
            assert!((m + 40.0 / 3.0).abs() < 1e-6);
        }
        for r in roots {
            let (p, _) = eval(&coeffs, r);
            // relative to the size of the dominant terms at |r|
            let size = r.norm().powi(5) + y * y * r.norm().powi(2) + y.powi(5);
            assert!(p.norm() < 1e-12 * size);
        }
    }

    #[test]
    fn complex_coefficients() {
        check(&[Complex64::new(1.0, 2.0), Complex64::new(0.0, -1.0), c(3.0), Complex64::new(0.5, 0.5)]);
    }
}
