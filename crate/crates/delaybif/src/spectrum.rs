//! Characteristic roots of the linearization.
//!
//! The quasipolynomial det Δ(λ) = λ² + aλ + ã λ e^{-λτ} + c is evaluated
//! directly; rightmost roots are approximated by spectral (Chebyshev)
//! collocation of the solution-operator generator on [-τ, 0] and refined by
//! Newton iteration on the quasipolynomial itself.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Equilibrium, SwingParams};

/// Coefficients of det Δ(λ) = λ² + aλ + ã λ e^{-λτ} + c.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quasipolynomial {
    pub a: f64,
    pub atilde: f64,
    pub c: f64,
    pub tau: f64,
}

impl Quasipolynomial {
    pub fn new(a: f64, atilde: f64, c: f64, tau: f64) -> Self {
        Self { a, atilde, c, tau }
    }

    /// Linearization about an equilibrium: c = cos(y_e).
    pub fn from_equilibrium(params: &SwingParams, eq: &Equilibrium) -> Self {
        Self {
            a: params.a,
            atilde: params.atilde,
            c: eq.c,
            tau: params.tau,
        }
    }

    /// det Δ(λ).
    pub fn eval(&self, lambda: Complex64) -> Complex64 {
        lambda * lambda
            + self.a * lambda
            + self.atilde * lambda * (-lambda * self.tau).exp()
            + self.c
    }

    /// d/dλ det Δ(λ) = 2λ + a + ã e^{-λτ}(1 - λτ).
    pub fn deriv(&self, lambda: Complex64) -> Complex64 {
        2.0 * lambda
            + self.a
            + self.atilde * (-lambda * self.tau).exp() * (1.0 - lambda * self.tau)
    }

    /// ∂/∂τ det Δ(λ) = -ã λ² e^{-λτ}.
    pub fn dtau(&self, lambda: Complex64) -> Complex64 {
        -self.atilde * lambda * lambda * (-lambda * self.tau).exp()
    }
}

/// A refined characteristic root. Roots are stored with Im λ ≥ 0;
/// `is_pair` marks the implicit conjugate partner.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CharRoot {
    pub lambda: Complex64,
    pub residual: f64,
    pub is_pair: bool,
}

/// Rightmost part of the spectrum.
#[derive(Debug, Clone, Serialize)]
pub struct RootSet {
    pub roots: Vec<CharRoot>,
    /// Unstable root count within the computed window (conjugates counted).
    pub n_u: usize,
    /// Max Re λ over computed roots.
    pub abscissa: f64,
    /// False when fewer verified roots than requested survived refinement.
    pub complete: bool,
    /// Discretization size the adaptive loop settled on.
    pub collocation_size: usize,
}

const NEWTON_TOL: f64 = 1e-12;
const NEWTON_MAX_ITER: usize = 50;
const DEDUP_TOL: f64 = 1e-7;
const RESIDUAL_BOUND: f64 = 1e-9;
const N0: usize = 32;
const N_CAP: usize = 512;
const DRIFT_TOL: f64 = 1e-8;

/// Newton refinement of a starter on the quasipolynomial.
fn refine(qp: &Quasipolynomial, mut lambda: Complex64) -> Option<Complex64> {
    for _ in 0..NEWTON_MAX_ITER {
        let f = qp.eval(lambda);
        let df = qp.deriv(lambda);
        if df.norm() < 1e-14 {
            return None;
        }
        let step = f / df;
        lambda -= step;
        if step.norm() <= NEWTON_TOL * (1.0 + lambda.norm()) {
            return Some(lambda);
        }
    }
    None
}

/// Chebyshev differentiation matrix on N+1 points mapped to [0, -τ]
/// (node 0 at θ = 0).
fn chebyshev_diff(n: usize, tau: f64) -> (DMatrix<f64>, Vec<f64>) {
    let np1 = n + 1;
    let x: Vec<f64> = (0..np1)
        .map(|j| (j as f64 * std::f64::consts::PI / n as f64).cos())
        .collect();
    let mut cw = vec![1.0; np1];
    cw[0] = 2.0;
    cw[n] = 2.0;
    let mut d = DMatrix::zeros(np1, np1);
    for i in 0..np1 {
        for j in 0..np1 {
            if i != j {
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                d[(i, j)] = (cw[i] / cw[j]) * sign / (x[i] - x[j]);
            }
        }
    }
    for i in 0..np1 {
        let mut sum = 0.0;
        for j in 0..np1 {
            if j != i {
                sum += d[(i, j)];
            }
        }
        d[(i, i)] = -sum;
    }
    // x ∈ [1, -1] ↦ θ = (x-1)·τ/2, so d/dθ = (2/τ)·d/dx.
    (d * (2.0 / tau), x)
}

/// Eigenvalues of the collocated generator; starters for Newton.
fn generator_eigenvalues(qp: &Quasipolynomial, n: usize) -> Vec<Complex64> {
    let (d, _) = chebyshev_diff(n, qp.tau);
    let np1 = n + 1;
    let dim = 2 * np1;
    let mut m = DMatrix::zeros(dim, dim);
    // Head row: the generator acts as x'(0) = L0 x(0) + L1 x(-τ).
    m[(0, 1)] = 1.0;
    m[(1, 0)] = -qp.c;
    m[(1, 1)] = -qp.a;
    m[(1, 2 * n + 1)] -= qp.atilde;
    // Remaining nodes: differentiation along the segment.
    for k in 1..np1 {
        for j in 0..np1 {
            let v = d[(k, j)];
            m[(2 * k, 2 * j)] = v;
            m[(2 * k + 1, 2 * j + 1)] = v;
        }
    }
    m.complex_eigenvalues().iter().copied().collect()
}

fn rightmost_refined(qp: &Quasipolynomial, n: usize, count: usize) -> (Vec<Complex64>, usize) {
    let starters = generator_eigenvalues(qp, n);
    let mut refined: Vec<Complex64> = Vec::new();
    let mut dropped = 0usize;
    for s in starters {
        match refine(qp, s) {
            Some(lam) => refined.push(lam),
            None => dropped += 1,
        }
    }
    refined.sort_by(|x, y| y.re.total_cmp(&x.re));
    let mut unique: Vec<Complex64> = Vec::new();
    for lam in refined {
        // Conjugate-canonical representative.
        let lam = if lam.im < 0.0 { lam.conj() } else { lam };
        if !unique.iter().any(|u| (u - lam).norm() < DEDUP_TOL) {
            unique.push(lam);
        }
        if unique.len() >= count + 4 {
            break;
        }
    }
    unique.truncate(count);
    (unique, dropped)
}

/// Rightmost `count` characteristic roots.
///
/// The collocation size doubles from 32 until the rightmost roots move less
/// than 1e-8, capped at 512. For τ = 0 the quadratic is solved directly.
pub fn approximate_spectrum(qp: &Quasipolynomial, count: usize) -> Result<RootSet> {
    if count == 0 {
        return Err(Error::InvalidParameter("count must be positive".into()));
    }
    if qp.tau < 0.0 {
        return Err(Error::InvalidParameter("tau must be nonnegative".into()));
    }
    if qp.tau == 0.0 {
        return Ok(quadratic_roots(qp));
    }
    let mut n = N0;
    let (mut current, _) = rightmost_refined(qp, n, count);
    loop {
        let n2 = n * 2;
        let (next, _) = rightmost_refined(qp, n2, count);
        let drift = current
            .iter()
            .zip(next.iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0f64, f64::max);
        let settled = current.len() == next.len() && drift <= DRIFT_TOL;
        current = next;
        n = n2;
        if settled || n >= N_CAP {
            break;
        }
    }
    finalize_rootset(qp, current, count, n)
}

fn quadratic_roots(qp: &Quasipolynomial) -> RootSet {
    // λ² + (a+ã)λ + c = 0.
    let b = qp.a + qp.atilde;
    let disc = Complex64::new(b * b - 4.0 * qp.c, 0.0).sqrt();
    let r1 = (-b + disc.re) * 0.5;
    let roots = if disc.im == 0.0 && b * b - 4.0 * qp.c >= 0.0 {
        vec![
            Complex64::new(r1, 0.0),
            Complex64::new((-b - disc.re) * 0.5, 0.0),
        ]
    } else {
        let im = 0.5 * (4.0 * qp.c - b * b).sqrt();
        vec![Complex64::new(-0.5 * b, im)]
    };
    let mut out = Vec::new();
    let mut n_u = 0;
    let mut abscissa = f64::NEG_INFINITY;
    for lam in roots {
        let is_pair = lam.im > 0.0;
        if lam.re > 0.0 {
            n_u += if is_pair { 2 } else { 1 };
        }
        abscissa = abscissa.max(lam.re);
        out.push(CharRoot {
            lambda: lam,
            residual: qp.eval(lam).norm(),
            is_pair,
        });
    }
    RootSet {
        roots: out,
        n_u,
        abscissa,
        complete: true,
        collocation_size: 0,
    }
}

fn finalize_rootset(
    qp: &Quasipolynomial,
    lambdas: Vec<Complex64>,
    count: usize,
    n: usize,
) -> Result<RootSet> {
    let mut roots = Vec::new();
    for lam in lambdas {
        let res = qp.eval(lam).norm();
        if res <= RESIDUAL_BOUND * (1.0 + lam.norm_sqr()) {
            roots.push(CharRoot {
                lambda: lam,
                residual: res,
                is_pair: lam.im > DEDUP_TOL,
            });
        }
    }
    let complete = roots.len() >= count;
    let mut n_u = 0;
    let mut abscissa = f64::NEG_INFINITY;
    for r in &roots {
        if r.lambda.re > 0.0 {
            n_u += if r.is_pair { 2 } else { 1 };
        }
        abscissa = abscissa.max(r.lambda.re);
    }
    Ok(RootSet {
        roots,
        n_u,
        abscissa,
        complete,
        collocation_size: n,
    })
}

/// One row of a spectral-abscissa sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepPoint {
    pub tau: f64,
    /// Real parts of the k most critical roots, descending.
    pub re_parts: Vec<f64>,
    pub n_u: usize,
}

/// Per-τ summary of the k most critical roots over a monotone τ grid.
pub fn abscissa_sweep(
    a: f64,
    atilde: f64,
    c: f64,
    taus: &[f64],
    k: usize,
) -> Result<Vec<SweepPoint>> {
    if taus.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("tau grid must be increasing".into()));
    }
    taus.par_iter()
        .map(|&tau| {
            let qp = Quasipolynomial::new(a, atilde, c, tau);
            let set = approximate_spectrum(&qp, k)?;
            Ok(SweepPoint {
                tau,
                re_parts: set.roots.iter().map(|r| r.lambda.re).collect(),
                n_u: set.n_u,
            })
        })
        .collect()
}

/// Sign of d(Re λ)/dτ at a simple root λ₀ = iω, by implicit differentiation:
/// dλ/dτ = -(∂detΔ/∂τ)/(∂detΔ/∂λ).
pub fn crossing_direction(qp: &Quasipolynomial, omega: f64, tau0: f64) -> Result<i8> {
    let qp0 = Quasipolynomial { tau: tau0, ..*qp };
    let lam = Complex64::new(0.0, omega);
    let dlam = qp0.deriv(lam);
    if dlam.norm() < 1e-9 {
        return Err(Error::Singular(
            "root is not simple; crossing direction undefined".into(),
        ));
    }
    let d = (-qp0.dtau(lam) / dlam).re;
    Ok(if d > 0.0 { 1 } else { -1 })
}

/// Finite-difference cross-check: Newton-tracks the root at τ₀ ± h and
/// differences the real parts.
pub fn crossing_direction_fd(
    qp: &Quasipolynomial,
    omega: f64,
    tau0: f64,
    h: f64,
) -> Result<i8> {
    let lam0 = Complex64::new(0.0, omega);
    let plus = refine(&Quasipolynomial { tau: tau0 + h, ..*qp }, lam0)
        .ok_or_else(|| Error::NoConvergence("root tracking at tau+h".into()))?;
    let minus = refine(&Quasipolynomial { tau: tau0 - h, ..*qp }, lam0)
        .ok_or_else(|| Error::NoConvergence("root tracking at tau-h".into()))?;
    let d = plus.re - minus.re;
    Ok(if d > 0.0 { 1 } else { -1 })
}
