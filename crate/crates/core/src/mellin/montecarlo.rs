//! Monte Carlo estimation of `M(λ) = ∫ |f|^{2λ} σ |h|² dV` and fitting of the
//! leading pole.
//!
//! The first variable is sampled from a mixture of log-uniform annuli centred
//! at the origin and at the roots of `f(·, y)`; the remaining variables are
//! log-uniform in modulus with uniform phase. One set of samples serves every
//! `λ` of the grid. Samples are drawn in fixed-size blocks whose seeds derive
//! from the master seed, so the result does not depend on the worker count.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::fit::{fit_pole, FitModel, FitPoint};
use super::quadrature::cutoff;
use super::roots::polynomial_roots;
use crate::error::{Error, Result};
use crate::exact::SparsePolynomial;
use crate::numeric::derive_seed;

#[derive(Clone, Debug, Serialize)]
pub struct McOptions {
    pub radius: f64,
    pub grid: Vec<f64>,
    pub samples: u64,
    pub seed: u64,
    pub block_size: u64,
    /// Smallest sampled modulus; `None` picks `10^{−⌊250/deg f⌋}` clamped to
    /// `[10^{−60}, 10^{−25}]`, small enough that the truncated mass is negligible
    /// near the pole and large enough that no monomial underflows.
    pub floor: Option<f64>,
    pub model: FitModel,
    pub bootstrap: usize,
    /// Largest accepted relative standard error of any grid value.
    pub max_rel_se: f64,
    /// Largest accepted weight fraction from the bottom 5% of the log-radius range.
    pub max_tail_fraction: f64,
}

impl Default for McOptions {
    fn default() -> Self {
        Self {
            radius: 1.0,
            grid: Vec::new(),
            samples: 10_000_000,
            seed: 0x5EED,
            block_size: 1 << 16,
            floor: None,
            model: FitModel::PowerLawTrivialPole,
            bootstrap: 200,
            max_rel_se: 0.05,
            max_tail_fraction: 0.05,
        }
    }
}

/// Grid of `steps` equally spaced values on `[lo, hi]`.
pub fn linear_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps <= 1 {
        return vec![lo];
    }
    (0..steps).map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GridValue {
    pub lambda: f64,
    pub value: f64,
    pub std_error: f64,
    pub tail_fraction: f64,
}

/// Per-λ sums from one block.
#[derive(Clone, Debug)]
struct BlockSums {
    count: u64,
    sum: Vec<f64>,
    sum_sq: Vec<f64>,
    tail: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MellinEstimate {
    pub grid: Vec<GridValue>,
    pub samples: u64,
    pub blocks: usize,
    pub seed: u64,
    pub radius: f64,
    pub floor: f64,
    #[serde(skip)]
    block_means: Vec<(u64, Vec<f64>)>,
}

/// `f` written as `Σ_k a_k(y) x^k`, each `a_k` a list of `(y-exponent, coeff)`.
struct Fibered {
    nvars: usize,
    by_degree: Vec<Vec<(Vec<f64>, Complex64)>>,
    h: Option<Vec<(Vec<f64>, Complex64)>>,
}

/// A point stored as `(ln|z_i|, arg z_i)` per coordinate.
type Polar = Vec<(f64, f64)>;

fn monomial(e: &[f64], p: &[(f64, f64)]) -> Complex64 {
    let (mut lr, mut th) = (0.0, 0.0);
    for (k, (l, t)) in e.iter().zip(p) {
        if *k != 0.0 {
            lr += k * l;
            th += k * t;
        }
    }
    Complex64::from_polar(lr.exp(), th)
}

impl Fibered {
    fn new(f: &SparsePolynomial, h: Option<&SparsePolynomial>) -> Self {
        let nvars = f.nvars();
        let mut by_degree: Vec<Vec<(Vec<f64>, Complex64)>> = Vec::new();
        for (e, c) in f.to_complex_terms() {
            let k = e[0] as usize;
            if by_degree.len() <= k {
                by_degree.resize(k + 1, Vec::new());
            }
            by_degree[k].push((e[1..].iter().map(|&v| v as f64).collect(), c));
        }
        let h = h.map(|h| {
            h.to_complex_terms()
                .into_iter()
                .map(|(e, c)| (e.iter().map(|&v| v as f64).collect(), c))
                .collect()
        });
        Self { nvars, by_degree, h }
    }

    fn coefficients(&self, y: &[(f64, f64)]) -> Vec<Complex64> {
        self.by_degree
            .iter()
            .map(|terms| terms.iter().map(|(e, c)| c * monomial(e, y)).sum())
            .collect()
    }

    fn h_abs_sq(&self, p: &[(f64, f64)]) -> f64 {
        match &self.h {
            None => 1.0,
            Some(terms) => terms.iter().map(|(e, c)| c * monomial(e, p)).sum::<Complex64>().norm_sqr(),
        }
    }
}

/// One mixture component for the first coordinate: centre and log-radius range.
struct Component {
    centre: Complex64,
    lo: f64,
    hi: f64,
    weight: f64,
}

impl Component {
    fn density(&self, x: Complex64) -> f64 {
        let d = (x - self.centre).norm();
        let l = d.ln();
        if l < self.lo || l > self.hi || d == 0.0 {
            0.0
        } else {
            self.weight / (TAU * d * d * (self.hi - self.lo))
        }
    }
}

struct Sampler<'a> {
    fib: &'a Fibered,
    grid: &'a [f64],
    radius: f64,
    ln_floor: f64,
    ln_radius: f64,
    tail_cut: f64,
}

impl Sampler<'_> {
    fn block(&self, seed: u64, count: u64) -> BlockSums {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = self.grid.len();
        let mut out = BlockSums {
            count,
            sum: vec![0.0; g],
            sum_sq: vec![0.0; g],
            tail: vec![0.0; g],
        };
        let span = self.ln_radius - self.ln_floor;
        let n = self.fib.nvars;
        for i in 0..count {
            // the first radial draw is stratified across the block
            let strat = (i as f64 + rng.random::<f64>()) / count as f64;
            let mut y: Polar = Vec::with_capacity(n - 1);
            let mut ln_q = 0.0;
            for j in 1..n {
                let u = if j == 1 { strat } else { rng.random::<f64>() };
                let s = self.ln_floor + span * u;
                y.push((s, TAU * rng.random::<f64>()));
                ln_q += -(TAU * span).ln() - 2.0 * s;
            }
            let Some((lnf, ln_qx, x, min_scale)) = self.draw_x(&y, &mut rng, if n == 1 { Some(strat) } else { None }) else {
                continue;
            };
            ln_q += ln_qx;
            let norm_sq = x.norm_sqr() + y.iter().map(|(s, _)| (2.0 * s).exp()).sum::<f64>();
            let sigma = cutoff(norm_sq.sqrt(), self.radius);
            if sigma == 0.0 {
                continue;
            }
            let mut point: Polar = vec![(x.norm().ln(), x.arg())];
            point.extend_from_slice(&y);
            let h2 = self.fib.h_abs_sq(&point);
            if h2 == 0.0 || !lnf.is_finite() {
                continue;
            }
            let base = sigma.ln() + h2.ln() - ln_q;
            let min_scale = y.iter().map(|p| p.0).fold(min_scale, f64::min);
            let in_tail = min_scale < self.tail_cut;
            for (k, &lambda) in self.grid.iter().enumerate() {
                let w = (2.0 * lambda * lnf + base).exp();
                out.sum[k] += w;
                out.sum_sq[k] += w * w;
                if in_tail {
                    out.tail[k] += w;
                }
            }
        }
        out
    }

    /// Returns `(ln|f|, ln q_x, x, ln of the distance to the nearest centre)`.
    fn draw_x(&self, y: &[(f64, f64)], rng: &mut ChaCha8Rng, strat: Option<f64>) -> Option<(f64, f64, Complex64, f64)> {
        let mut coeffs = self.fib.coefficients(y);
        let zero = Complex64::new(0.0, 0.0);
        while coeffs.last() == Some(&zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return None;
        }
        let k0 = coeffs.iter().position(|c| *c != zero).unwrap_or(0);
        let roots = polynomial_roots(&coeffs[k0..]);
        let lead = coeffs[coeffs.len() - 1];

        let near: Vec<Complex64> = roots.iter().copied().filter(|r| r.norm() < 2.0 * self.radius).collect();
        let mut comps = vec![Component {
            centre: zero,
            lo: self.ln_floor,
            hi: self.ln_radius,
            weight: if near.is_empty() { 1.0 } else { 0.5 },
        }];
        for r in &near {
            let lo = self.ln_floor.max((1e-9 * r.norm()).ln());
            if lo < self.ln_radius {
                comps.push(Component {
                    centre: *r,
                    lo,
                    hi: self.ln_radius,
                    weight: 0.0,
                });
            }
        }
        if comps.len() > 1 {
            let w = 0.5 / (comps.len() - 1) as f64;
            for c in &mut comps[1..] {
                c.weight = w;
            }
        }
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut pick = comps.len() - 1;
        for (i, c) in comps.iter().enumerate() {
            acc += c.weight;
            if u < acc {
                pick = i;
                break;
            }
        }
        let c = &comps[pick];
        let t = strat.unwrap_or_else(|| rng.random::<f64>());
        let s = c.lo + (c.hi - c.lo) * t;
        let x = c.centre + Complex64::from_polar(s.exp(), TAU * rng.random::<f64>());
        if x.norm() == 0.0 {
            return None;
        }
        let q: f64 = comps.iter().map(|c| c.density(x)).sum();
        let lnf = lead.norm().ln() + k0 as f64 * x.norm().ln() + roots.iter().map(|r| (x - r).norm().ln()).sum::<f64>();
        let min_scale = near.iter().map(|r| (x - r).norm().ln()).fold(x.norm().ln(), f64::min);
        Some((lnf, q.ln(), x, min_scale))
    }
}

fn auto_floor(f: &SparsePolynomial) -> f64 {
    let deg = f.terms().map(|(e, _)| e.0.iter().sum::<i64>()).max().unwrap_or(1).max(1);
    let decades = (250 / deg).clamp(25, 60);
    10f64.powi(-(decades as i32))
}

/// Monte Carlo values of `M(λ)` on the grid, with standard errors.
pub fn estimate_mellin(f: &SparsePolynomial, h: Option<&SparsePolynomial>, opts: &McOptions) -> Result<MellinEstimate> {
    if f.nvars() == 0 || f.is_zero() {
        return Err(Error::Malformed("Monte Carlo needs a non-zero polynomial in at least one variable".into()));
    }
    if let Some(h) = h {
        if h.nvars() != f.nvars() {
            return Err(Error::Malformed("density and function have different variable counts".into()));
        }
    }
    if opts.grid.is_empty() || opts.samples == 0 || opts.block_size == 0 || !(opts.radius > 0.0) {
        return Err(Error::Malformed("Monte Carlo needs a grid, a positive radius and samples".into()));
    }
    let floor = opts.floor.unwrap_or_else(|| auto_floor(f));
    let fib = Fibered::new(f, h);
    let (ln_floor, ln_radius) = (floor.ln(), opts.radius.ln());
    let sampler = Sampler {
        fib: &fib,
        grid: &opts.grid,
        radius: opts.radius,
        ln_floor,
        ln_radius,
        tail_cut: ln_floor + 0.05 * (ln_radius - ln_floor),
    };
    let nblocks = opts.samples.div_ceil(opts.block_size);
    let blocks: Vec<BlockSums> = (0..nblocks)
        .into_par_iter()
        .map(|b| {
            let count = opts.block_size.min(opts.samples - b * opts.block_size);
            sampler.block(derive_seed(opts.seed, b), count)
        })
        .collect();

    let total = opts.samples as f64;
    let mut grid = Vec::with_capacity(opts.grid.len());
    for (k, &lambda) in opts.grid.iter().enumerate() {
        let (mut s, mut s2, mut t) = (0.0, 0.0, 0.0);
        for b in &blocks {
            s += b.sum[k];
            s2 += b.sum_sq[k];
            t += b.tail[k];
        }
        let mean = s / total;
        let var = (s2 / total - mean * mean).max(0.0);
        grid.push(GridValue {
            lambda,
            value: mean,
            std_error: (var / total).sqrt(),
            tail_fraction: if s > 0.0 { t / s } else { 1.0 },
        });
    }
    let block_means = blocks.iter().map(|b| (b.count, b.sum.clone())).collect();
    Ok(MellinEstimate {
        grid,
        samples: opts.samples,
        blocks: nblocks as usize,
        seed: opts.seed,
        radius: opts.radius,
        floor,
        block_means,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PoleFit {
    pub location: f64,
    pub order: f64,
    pub location_ci: [f64; 2],
    pub order_ci: [f64; 2],
    pub coeff: f64,
    /// Coefficient of the `1/(λ + 1)` term when the model carries it.
    pub trivial_coeff: f64,
    pub chi2: f64,
    pub model: FitModel,
    pub estimate: MellinEstimate,
}

fn fit_estimate(est: &MellinEstimate, values: &[f64], model: FitModel) -> Option<FitPoint> {
    let lambdas: Vec<f64> = est.grid.iter().map(|g| g.lambda).collect();
    let se: Vec<f64> = est.grid.iter().map(|g| g.std_error.max(1e-12 * g.value)).collect();
    fit_pole(&lambdas, values, &se, model)
}

fn percentile(sorted: &[f64], p: f64) -> f64 {
    let i = ((sorted.len() - 1) as f64 * p).round() as usize;
    sorted[i]
}

/// Estimates `M(λ)` and fits `C (λ + a)^{−q}`; the fitted pole is `−a` of order `q`.
pub fn estimate_leading_pole_mc(f: &SparsePolynomial, h: Option<&SparsePolynomial>, opts: &McOptions) -> Result<PoleFit> {
    if opts.model == FitModel::PowerLawTrivialPole && opts.grid.iter().any(|l| *l <= -1.0) {
        return Err(Error::Malformed(
            "the two-pole fit needs every λ above −1; use the power-law model".into(),
        ));
    }
    let est = estimate_mellin(f, h, opts)?;
    for g in &est.grid {
        if g.tail_fraction > opts.max_tail_fraction {
            return Err(Error::DivergentGrid(format!(
                "λ = {}: {:.1}% of the weight sits at the smallest scales",
                g.lambda,
                100.0 * g.tail_fraction
            )));
        }
        if !(g.value > 0.0) || g.std_error > opts.max_rel_se * g.value {
            return Err(Error::SampleStarvation(format!(
                "λ = {}: relative standard error {:.3} exceeds {}",
                g.lambda,
                g.std_error / g.value,
                opts.max_rel_se
            )));
        }
    }
    let values: Vec<f64> = est.grid.iter().map(|g| g.value).collect();
    let point = fit_estimate(&est, &values, opts.model)
        .ok_or_else(|| Error::SampleStarvation("pole fit did not converge".into()))?;

    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(opts.seed, u64::MAX));
    let nb = est.block_means.len();
    let mut locs = Vec::with_capacity(opts.bootstrap);
    let mut orders = Vec::with_capacity(opts.bootstrap);
    for _ in 0..opts.bootstrap {
        let mut count = 0u64;
        let mut sums = vec![0.0; values.len()];
        for _ in 0..nb {
            let (c, s) = &est.block_means[rng.random_range(0..nb)];
            count += c;
            for (a, b) in sums.iter_mut().zip(s) {
                *a += b;
            }
        }
        let resampled: Vec<f64> = sums.iter().map(|s| s / count as f64).collect();
        if resampled.iter().all(|v| *v > 0.0) {
            if let Some(p) = fit_estimate(&est, &resampled, opts.model) {
                locs.push(-p.a);
                orders.push(p.q);
            }
        }
    }
    locs.sort_by(f64::total_cmp);
    orders.sort_by(f64::total_cmp);
    let ci = |v: &[f64], centre: f64| {
        if v.is_empty() {
            [centre, centre]
        } else {
            [percentile(v, 0.025), percentile(v, 0.975)]
        }
    };
    Ok(PoleFit {
        location: -point.a,
        order: point.q,
        location_ci: ci(&locs, -point.a),
        order_ci: ci(&orders, point.q),
        coeff: point.coeff,
        trivial_coeff: point.trivial,
        chi2: point.chi2,
        model: opts.model,
        estimate: est,
    })
}
