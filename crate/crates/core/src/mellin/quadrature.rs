//! Deterministic quadrature for the model integrals
//! `∫_{|z|<1} |z|^{2λ} |z^m|² dV = π / (λ + m + 1)` and for radial cutoffs.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

/// Upper limit of the exp-sinh abscissae; beyond it the weights underflow.
const T_MAX: f64 = 4.5;

/// Exp-sinh rule on `[0, ∞)` with step `h`: `x = exp(π/2 · sinh t)`.
pub fn exp_sinh<F: Fn(f64) -> f64>(g: F, h: f64) -> f64 {
    let k = (T_MAX / h).ceil() as i64;
    (-k..=k)
        .map(|j| {
            let t = j as f64 * h;
            let x = (FRAC_PI_2 * t.sinh()).exp();
            let dx = x * FRAC_PI_2 * t.cosh();
            if dx == 0.0 || !dx.is_finite() {
                return 0.0;
            }
            let v = g(x);
            if v == 0.0 {
                0.0
            } else {
                v * dx
            }
        })
        .sum::<f64>()
        * h
}

/// Tanh-sinh rule on `[a, b]` with step `h`.
pub fn tanh_sinh<F: Fn(f64) -> f64>(g: F, a: f64, b: f64, h: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let k = (3.2 / h).ceil() as i64;
    (-k..=k)
        .map(|j| {
            let t = j as f64 * h;
            let u = FRAC_PI_2 * t.sinh();
            let x = u.tanh();
            let w = FRAC_PI_2 * t.cosh() / u.cosh().powi(2);
            if w < 1e-300 || x.abs() >= 1.0 {
                return 0.0;
            }
            g(mid + half * x) * w
        })
        .sum::<f64>()
        * half
        * h
}

/// `2π ∫_0^1 ρ^{2λ+2m+1} dρ` after `ρ = e^{−x}`; the power is evaluated as
/// `exp(p ln ρ)` so that `ρ` itself never under- or overflows.
pub fn model_mellin(m: u32, lambda: f64, h: f64) -> f64 {
    let p = 2.0 * lambda + 2.0 * m as f64 + 2.0;
    let radial = exp_sinh(|x| (-p * x).exp(), h);
    // angular integral of a radial integrand, by the trapezoid rule on 64 nodes
    let angular: f64 = (0..64).map(|_| 2.0 * PI / 64.0).sum();
    angular * radial
}

pub fn model_closed_form(m: u32, lambda: f64) -> f64 {
    PI / (lambda + m as f64 + 1.0)
}

/// Default exp-sinh step for [`verify_model_mellin`].
pub const MODEL_STEP: f64 = 1.0 / 64.0;

#[derive(Clone, Debug, Serialize)]
pub struct ModelRow {
    pub lambda: f64,
    pub numeric: f64,
    pub exact: f64,
    pub rel_error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelMellinReport {
    pub m: u32,
    pub rows: Vec<ModelRow>,
    pub max_rel_error: f64,
}

/// Quadrature against the closed form on each `λ > −m − 1`.
pub fn verify_model_mellin(m: u32, lambdas: &[f64]) -> ModelMellinReport {
    let rows: Vec<ModelRow> = lambdas
        .iter()
        .map(|&lambda| {
            let numeric = model_mellin(m, lambda, MODEL_STEP);
            let exact = model_closed_form(m, lambda);
            ModelRow {
                lambda,
                numeric,
                exact,
                rel_error: ((numeric - exact) / exact).abs(),
            }
        })
        .collect();
    let max_rel_error = rows.iter().map(|r| r.rel_error).fold(0.0, f64::max);
    ModelMellinReport { m, rows, max_rel_error }
}

/// `(λ + m + 1)·M(λ)` at `λ = −m − 1 + ε` for each `ε`; tends to `π`.
pub fn residue_sequence(m: u32, eps: &[f64]) -> Vec<(f64, f64)> {
    eps.iter()
        .map(|&e| {
            let lambda = -(m as f64) - 1.0 + e;
            (lambda, e * model_mellin(m, lambda, MODEL_STEP))
        })
        .collect()
}

/// Relative errors for steps `h_0 / 2^j`, `j = 0..levels`.
pub fn refinement_errors(m: u32, lambda: f64, h0: f64, levels: usize) -> Vec<(f64, f64)> {
    let exact = model_closed_form(m, lambda);
    (0..levels)
        .map(|j| {
            let h = h0 / 2f64.powi(j as i32);
            (h, ((model_mellin(m, lambda, h) - exact) / exact).abs())
        })
        .collect()
}

/// Smallest `log₂(err_j / err_{j+1})` over consecutive halvings whose errors
/// are still above the rounding floor `floor`.
pub fn observed_order(errors: &[(f64, f64)], floor: f64) -> Option<f64> {
    errors
        .windows(2)
        .filter(|w| w[1].1 > floor)
        .map(|w| (w[0].1 / w[1].1).log2())
        .min_by(f64::total_cmp)
}

/// Quintic smoothstep cutoff: 1 on `r ≤ ρ/2`, 0 on `r ≥ ρ`.
pub fn cutoff(r: f64, rho: f64) -> f64 {
    let half = 0.5 * rho;
    if r <= half {
        1.0
    } else if r >= rho {
        0.0
    } else {
        let t = (r - half) / half;
        1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t)
    }
}

/// `∫_{ℂ} |z|^{2λ} σ(|z|) dV` for the cutoff of radius `ρ`, `λ > −1`.
pub fn cutoff_disk_mellin(lambda: f64, rho: f64) -> f64 {
    let p = 2.0 * lambda + 2.0;
    let inner = (0.5 * rho).powf(p) / p;
    let outer = tanh_sinh(|r| r.powf(p - 1.0) * cutoff(r, rho), 0.5 * rho, rho, 1.0 / 64.0);
    2.0 * PI * (inner + outer)
}
