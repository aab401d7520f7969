//! Governing equations, nondimensionalization, equilibria and linearization
//! data for the delayed swing equation
//!
//! ```text
//! y''(t) + a y'(t) + ã y'(t - τ) + sin(y(t)) = w
//! ```
//!
//! with the restoring coefficient scaled to one. Angles live on the real
//! line (plane state space); equilibria differing by 2π are distinct.
//! [`wrap_angle`] exists for plotting only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients of the dimensional equation
/// `ŷ'' + â ŷ' + ã̂ ŷ'(t̂ - τ̂) + k̂ₛ sin(ŷ) = ŵ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Instantaneous damping coefficient [1/s].
    pub a_hat: f64,
    /// Delayed damping coefficient [1/s].
    pub atilde_hat: f64,
    /// Restoring coefficient [1/s²]; must be positive.
    pub ks_hat: f64,
    /// Constant drive [1/s²].
    pub w_hat: f64,
    /// Delay [s].
    pub tau_hat: f64,
}

/// Dimensionless coefficients with kₛ = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwingParams {
    /// Instantaneous damping.
    pub a: f64,
    /// Delayed damping.
    pub atilde: f64,
    /// Drive; equilibria exist for 0 < w ≤ 1, larger values are
    /// simulation-only.
    pub w: f64,
    /// Delay.
    pub tau: f64,
}

impl SwingParams {
    pub fn new(a: f64, atilde: f64, w: f64, tau: f64) -> Result<Self> {
        let p = Self { a, atilde, w, tau };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("a", self.a),
            ("atilde", self.atilde),
            ("w", self.w),
            ("tau", self.tau),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} is not finite")));
            }
        }
        if self.a <= 0.0 || self.atilde <= 0.0 {
            return Err(Error::InvalidParameter(
                "damping coefficients must be positive".into(),
            ));
        }
        if self.tau < 0.0 {
            return Err(Error::InvalidParameter("tau must be nonnegative".into()));
        }
        Ok(())
    }

    /// Same parameter set at a different delay.
    pub fn with_tau(&self, tau: f64) -> Self {
        Self { tau, ..*self }
    }

    /// Principal equilibrium angle arcsin(w), defined for 0 < w ≤ 1.
    pub fn y_e(&self) -> Result<f64> {
        if self.w <= 0.0 {
            return Err(Error::OutOfScope(
                "drive w ≤ 0 is outside the studied regime".into(),
            ));
        }
        if self.w > 1.0 {
            return Err(Error::OutOfScope(format!(
                "no equilibrium exists for w = {} > 1",
                self.w
            )));
        }
        Ok(self.w.asin())
    }
}

/// Scales an arbitrary restoring coefficient to kₛ = 1 by
/// t = t̂·√k̂ₛ: a = â/√k̂ₛ, ã = ã̂/√k̂ₛ, w = ŵ/k̂ₛ, τ = τ̂·√k̂ₛ.
pub fn to_dimensionless(p: &PhysicalParams) -> Result<SwingParams> {
    if !p.ks_hat.is_finite() || p.ks_hat <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "ks_hat must be finite and positive, got {}",
            p.ks_hat
        )));
    }
    for (name, v) in [
        ("a_hat", p.a_hat),
        ("atilde_hat", p.atilde_hat),
        ("w_hat", p.w_hat),
        ("tau_hat", p.tau_hat),
    ] {
        if !v.is_finite() {
            return Err(Error::InvalidParameter(format!("{name} is not finite")));
        }
    }
    let sk = p.ks_hat.sqrt();
    Ok(SwingParams {
        a: p.a_hat / sk,
        atilde: p.atilde_hat / sk,
        w: p.w_hat / p.ks_hat,
        tau: p.tau_hat * sk,
    })
}

/// Inverse of [`to_dimensionless`] for a given restoring coefficient.
pub fn to_physical(p: &SwingParams, ks_hat: f64) -> Result<PhysicalParams> {
    if !ks_hat.is_finite() || ks_hat <= 0.0 {
        return Err(Error::InvalidParameter(
            "ks_hat must be finite and positive".into(),
        ));
    }
    let sk = ks_hat.sqrt();
    Ok(PhysicalParams {
        a_hat: p.a * sk,
        atilde_hat: p.atilde * sk,
        ks_hat,
        w_hat: p.w * ks_hat,
        tau_hat: p.tau / sk,
    })
}

/// Which solution family of sin(y) = w an equilibrium belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BranchKind {
    /// y = arcsin(w) + 2kπ, linearization coefficient c = √(1-w²) ≥ 0.
    Lower,
    /// y = π - arcsin(w) + 2kπ, c = -√(1-w²) ≤ 0.
    Upper,
    /// w = 1: both families coincide at π/2 + 2kπ (fold point).
    DegenerateFold,
}

/// An equilibrium angle with its branch tag and linearization coefficient
/// c = cos(y_e).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Equilibrium {
    pub y_e: f64,
    pub kind: BranchKind,
    pub c: f64,
}

/// Result of an equilibrium scan over a window.
#[derive(Debug, Clone, PartialEq)]
pub struct Equilibria {
    pub points: Vec<Equilibrium>,
    /// False when w > 1 and no equilibrium exists at all.
    pub exists: bool,
}

/// All equilibria with angle in `window = [lo, hi]`, sorted ascending.
///
/// Closed forms per branch (arcsin), no root finding. `w > 1` yields an
/// empty list with `exists = false`; `w ≤ 0` is rejected.
pub fn equilibria(params: &SwingParams, window: (f64, f64)) -> Result<Equilibria> {
    let (lo, hi) = window;
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(Error::InvalidParameter(
            "window must be a finite interval".into(),
        ));
    }
    if params.w <= 0.0 {
        return Err(Error::OutOfScope(
            "drive w ≤ 0 is outside the studied regime".into(),
        ));
    }
    if params.w > 1.0 {
        return Ok(Equilibria {
            points: Vec::new(),
            exists: false,
        });
    }
    let ye = params.w.asin();
    let tau_bases: &[(f64, BranchKind)] = if params.w == 1.0 {
        &[(std::f64::consts::FRAC_PI_2, BranchKind::DegenerateFold)]
    } else {
        &[
            (ye, BranchKind::Lower),
            (std::f64::consts::PI - ye, BranchKind::Upper),
        ]
    };
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut points = Vec::new();
    for &(base, kind) in tau_bases {
        let k_lo = ((lo - base) / two_pi).ceil() as i64;
        let k_hi = ((hi - base) / two_pi).floor() as i64;
        for k in k_lo..=k_hi {
            let y = base + two_pi * k as f64;
            points.push(Equilibrium {
                y_e: y,
                kind,
                c: y.cos(),
            });
        }
    }
    points.sort_by(|p, q| p.y_e.total_cmp(&q.y_e));
    Ok(Equilibria {
        points,
        exists: true,
    })
}

/// Derivatives of the nonlinearity at an equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonlinearityJet {
    /// h′ at the equilibrium (equals the linearization coefficient c).
    pub h1: f64,
    /// h″ at the equilibrium.
    pub h2: f64,
    /// h‴ at the equilibrium.
    pub h3: f64,
}

/// Jet of h(y) = sin(y) - w at an equilibrium: (cos y_e, -sin y_e, -cos y_e).
pub fn swing_jet(params: &SwingParams, eq: &Equilibrium) -> NonlinearityJet {
    let _ = params;
    NonlinearityJet {
        h1: eq.y_e.cos(),
        h2: -eq.y_e.sin(),
        h3: -eq.y_e.cos(),
    }
}

/// The swing equation in coordinates shifted so a chosen equilibrium sits at
/// the origin: x = (y - y_e, y'). Shared by the integrator and the periodic
/// collocation solver.
#[derive(Debug, Clone, Copy)]
pub struct SwingSystem {
    pub params: SwingParams,
    pub y_e: f64,
}

impl SwingSystem {
    /// System shifted to the principal lower-branch equilibrium.
    pub fn at_principal_equilibrium(params: &SwingParams) -> Result<Self> {
        Ok(Self {
            params: *params,
            y_e: params.y_e()?,
        })
    }

    /// In simulation-only regimes (w > 1) there is no equilibrium; use the
    /// raw angle coordinate.
    pub fn unshifted(params: &SwingParams) -> Self {
        Self {
            params: *params,
            y_e: 0.0,
        }
    }

    /// Right-hand side f(x(t), x(t-τ)).
    #[inline]
    pub fn f(&self, x: [f64; 2], xd: [f64; 2]) -> [f64; 2] {
        [
            x[1],
            -self.params.a * x[1] - self.params.atilde * xd[1] + self.params.w
                - (x[0] + self.y_e).sin(),
        ]
    }

    /// ∂f/∂x at instantaneous state `x`.
    #[inline]
    pub fn jac_x(&self, x: [f64; 2]) -> [[f64; 2]; 2] {
        [[0.0, 1.0], [-(x[0] + self.y_e).cos(), -self.params.a]]
    }

    /// ∂f/∂x(t-τ); constant.
    #[inline]
    pub fn jac_xd(&self) -> [[f64; 2]; 2] {
        [[0.0, 0.0], [0.0, -self.params.atilde]]
    }

    /// The saddle neighbour π - 2 y_e of the principal equilibrium, in
    /// shifted coordinates.
    pub fn saddle_shifted(&self) -> [f64; 2] {
        [std::f64::consts::PI - 2.0 * self.y_e, 0.0]
    }
}

/// Reduce an angle to (-π, π] for plotting.
pub fn wrap_angle(y: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut r = y.rem_euclid(two_pi);
    if r > std::f64::consts::PI {
        r -= two_pi;
    }
    r
}
