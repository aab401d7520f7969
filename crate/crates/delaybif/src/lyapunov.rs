//! Sign of the first Lyapunov coefficient at Hopf candidates of
//!
//! ```text
//! y'' + a y' + ã y'(t-τ) + h(y) = 0,   a < ã, h′(y_e) > 0,
//! ```
//!
//! via the closed form
//!
//! ```text
//! sgn L = sgn[ Re(1/(β·detΔ(2iω))) + Re(1/β)·(2/h′ - h‴/h″²) ]
//! ```
//!
//! with β = -(ωτ)(ω²-h′) + i((ωτ)ωa + h′ + ω²), plus an independent
//! general-formula evaluation ([`lyapunov_general_oracle`]) that builds the
//! left/right null vectors and the h₁₁/h₂₀ corrections from the
//! characteristic matrix numerically.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{NonlinearityJet, SwingParams};
use crate::stability::{hopf_points, Family, HopfPointTable, StabilityRegime};

/// The inverse normalization factor β = 1/(α_p α_q).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BetaValue {
    pub re: f64,
    pub im: f64,
}

impl BetaValue {
    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// sgn Re(1/β) = -sgn(ω²-h′): -1 on family 1, +1 on family 2.
    pub fn sign_re_inverse(&self) -> i8 {
        if self.re > 0.0 {
            1
        } else if self.re < 0.0 {
            -1
        } else {
            0
        }
    }
}

/// β at a Hopf candidate.
pub fn beta(omega: f64, tau: f64, a: f64, h1: f64) -> Result<BetaValue> {
    if !(omega > 0.0 && tau > 0.0) {
        return Err(Error::InvalidParameter(
            "beta needs omega > 0 and tau > 0".into(),
        ));
    }
    let z = omega * tau;
    let b = BetaValue {
        re: -z * (omega * omega - h1),
        im: z * omega * a + h1 + omega * omega,
    };
    if b.re == 0.0 && b.im == 0.0 {
        return Err(Error::Degenerate("beta vanished at candidate".into()));
    }
    Ok(b)
}

/// det Δ(2iω) in closed form, valid when (ω, τ) satisfies the candidate
/// relation iω(a + ã e^{-iωτ}) = ω² - h′:
/// -3ω² - (1 + 4a/ã)(ω²-h′) + 2iω(a - ã + 2a²/ã).
pub fn det_delta_2iw(omega: f64, a: f64, atilde: f64, h1: f64) -> Complex64 {
    let d = omega * omega - h1;
    Complex64::new(
        -3.0 * omega * omega - (1.0 + 4.0 * a / atilde) * d,
        2.0 * omega * (a - atilde + 2.0 * a * a / atilde),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Criticality {
    /// L < 0: a stable limit cycle appears where the equilibrium is unstable.
    Supercritical,
    /// L > 0: an unstable limit cycle appears where the equilibrium is stable.
    Subcritical,
    /// The sign bracket is below the degeneracy tolerance.
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BranchSide {
    LargerDelay,
    SmallerDelay,
}

/// Outcome of the sign evaluation at one Hopf candidate.
#[derive(Debug, Clone, Serialize)]
pub struct LyapunovReport {
    pub sign: i8,
    /// The real bracket whose sign equals sgn L.
    pub bracket_value: f64,
    pub beta: BetaValue,
    pub det2iw: Complex64,
    pub criticality: Criticality,
    /// Side of the candidate on which the emerging cycle exists.
    pub branch_side: BranchSide,
}

/// Relative tolerance below which the bracket is reported degenerate; the
/// bracket is a difference of large terms for large n.
const DEGENERACY_TOL: f64 = 1e-9;

/// Matches (ω, τ) to its family in the table and rejects candidates who sit
/// in both sequences at once (codimension two).
fn identify_candidate(
    table: &HopfPointTable,
    omega: f64,
    tau: f64,
) -> Result<(Family, usize)> {
    let om = table
        .omega
        .ok_or_else(|| Error::InvalidParameter("table carries no frequencies".into()))?;
    let fam = if (omega - om.omega1).abs() <= 1e-9 * omega.max(1.0) {
        Family::One
    } else if (omega - om.omega2).abs() <= 1e-9 * omega.max(1.0) {
        Family::Two
    } else {
        return Err(Error::InvalidParameter(format!(
            "omega = {omega} is not a crossing frequency of the table"
        )));
    };
    let omj = table.omega_of(fam).unwrap();
    let th = match fam {
        Family::One => table.theta(),
        Family::Two => 2.0 * std::f64::consts::PI - table.theta(),
    };
    let k = ((tau * omj - th) / (2.0 * std::f64::consts::PI)).round();
    if k < 0.0 {
        return Err(Error::InvalidParameter("tau below the first candidate".into()));
    }
    let n = k as usize;
    let t = table.tau(fam, n).unwrap();
    if (tau - t).abs() > 1e-8 * tau.max(1.0) {
        return Err(Error::InvalidParameter(format!(
            "tau = {tau} is not a family-{} candidate",
            fam.index()
        )));
    }
    // Exclude the intersection set {τ₁ₙ} ∩ {τ₂ₘ}: those are Hopf-Hopf points.
    let other = match fam {
        Family::One => Family::Two,
        Family::Two => Family::One,
    };
    let om_other = table.omega_of(other).unwrap();
    let th_other = match other {
        Family::One => table.theta(),
        Family::Two => 2.0 * std::f64::consts::PI - table.theta(),
    };
    let m = ((tau * om_other - th_other) / (2.0 * std::f64::consts::PI)).round();
    if m >= 0.0 {
        let t_other = (th_other + 2.0 * std::f64::consts::PI * m) / om_other;
        if (tau - t_other).abs() <= 1e-12 * tau {
            return Err(Error::Degenerate(
                "candidate sits in both families (Hopf-Hopf); use the codim-2 search".into(),
            ));
        }
    }
    Ok((fam, n))
}

/// Sign of the first Lyapunov coefficient at a Hopf candidate from the
/// closed form.
pub fn sign_first_lyapunov(
    jet: &NonlinearityJet,
    a: f64,
    atilde: f64,
    omega: f64,
    tau: f64,
) -> Result<LyapunovReport> {
    if a >= atilde {
        return Err(Error::OutOfScope("formula requires a < ã".into()));
    }
    if jet.h1 <= 0.0 {
        return Err(Error::OutOfScope("formula requires h′(y_e) > 0".into()));
    }
    if jet.h2 == 0.0 {
        return Err(Error::Degenerate(
            "h″ = 0 makes the quadratic term vanish; the sign bracket is undefined".into(),
        ));
    }
    let table = hopf_points(a, atilde, jet.h1, 0)?;
    let (family, _) = identify_candidate(&table, omega, tau)?;

    let b = beta(omega, tau, a, jet.h1)?;
    let det2 = det_delta_2iw(omega, a, atilde, jet.h1);
    let bc = b.as_complex();
    let s1 = (1.0 / (bc * det2)).re;
    let s2 = (1.0 / bc).re * (2.0 / jet.h1 - jet.h3 / (jet.h2 * jet.h2));
    let bracket = s1 + s2;

    let degenerate = bracket.abs() < DEGENERACY_TOL * (1.0 + s1.abs() + s2.abs());
    let (sign, criticality) = if degenerate {
        (0, Criticality::Degenerate)
    } else if bracket < 0.0 {
        (-1, Criticality::Supercritical)
    } else {
        (1, Criticality::Subcritical)
    };
    let branch_side = if i32::from(family.crossing_direction()) * i32::from(sign) < 0 {
        BranchSide::LargerDelay
    } else {
        BranchSide::SmallerDelay
    };
    Ok(LyapunovReport {
        sign,
        bracket_value: bracket,
        beta: b,
        det2iw: det2,
        criticality,
        branch_side,
    })
}

/// Null vectors and correction terms of the general formula, kept for
/// residual checks.
#[derive(Debug, Clone, Serialize)]
pub struct GeneralLyapunovInputs {
    pub p: [Complex64; 2],
    pub q: [Complex64; 2],
    /// α_p·α_q; equals 1/β.
    pub alpha_product: Complex64,
    pub h11_at_0: Complex64,
    pub h20_at_0: Complex64,
    /// Relative residuals of (pᵀΔ(iω), Δ(iω)q, pᵀDΔ(iω)q - 1).
    pub residuals: [f64; 3],
}

/// Characteristic matrix Δ(λ) of the linearization with c = h′.
fn delta(lambda: Complex64, a: f64, atilde: f64, c: f64, tau: f64) -> [[Complex64; 2]; 2] {
    [
        [lambda, Complex64::new(-1.0, 0.0)],
        [
            Complex64::new(c, 0.0),
            lambda + a + atilde * (-lambda * tau).exp(),
        ],
    ]
}

fn solve2(m: [[Complex64; 2]; 2], rhs: [Complex64; 2]) -> Result<[Complex64; 2]> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det.norm() < 1e-300 {
        return Err(Error::Singular("2x2 characteristic solve".into()));
    }
    Ok([
        (rhs[0] * m[1][1] - rhs[1] * m[0][1]) / det,
        (m[0][0] * rhs[1] - m[1][0] * rhs[0]) / det,
    ])
}

fn mat_vec(m: [[Complex64; 2]; 2], v: [Complex64; 2]) -> [Complex64; 2] {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

/// First Lyapunov coefficient (up to the positive factor |α_q|²) from the
/// general center-manifold formula, built directly from Δ: left/right null
/// vectors with pᵀDΔ(iω)q = 1, h₁₁ = Δ⁻¹(0)·B(φ,φ̄), h₂₀(0) = Δ⁻¹(2iω)·B(φ,φ).
///
/// This path shares no closed-form simplification with
/// [`sign_first_lyapunov`]; it is the cross-check the sign contract is
/// validated against.
pub fn lyapunov_general_oracle(
    jet: &NonlinearityJet,
    a: f64,
    atilde: f64,
    omega: f64,
    tau: f64,
    alpha_q: f64,
) -> Result<(f64, GeneralLyapunovInputs)> {
    if jet.h1 == 0.0 {
        return Err(Error::Singular(
            "Δ(0) is singular (h′ = 0); the h11 correction is undefined".into(),
        ));
    }
    let c = jet.h1;
    let i = Complex64::i();
    let q = [
        Complex64::new(alpha_q, 0.0),
        i * omega * alpha_q,
    ];
    // Left null direction of Δ(iω) before normalization.
    let p_dir = [i * c, Complex64::new(omega, 0.0)];
    // DΔ(λ) = diag(1, 1 - τ ã e^{-λτ}).
    let ddelta_22 = Complex64::new(1.0, 0.0)
        - tau * atilde * (-i * omega * tau).exp();
    let scale = p_dir[0] * q[0] + p_dir[1] * ddelta_22 * q[1];
    if scale.norm() < 1e-300 {
        return Err(Error::Degenerate("normalization pᵀDΔ(iω)q vanished".into()));
    }
    let p = [p_dir[0] / scale, p_dir[1] / scale];
    // α_p = 1/scale, so α_p α_q = α_q/scale; this equals 1/β.
    let alpha_product = Complex64::new(alpha_q, 0.0) / scale;

    // Second- and third-order terms act only through the instantaneous first
    // component: B(u,v) = [0, -h″ u₁ v₁], C(u,v,z) = [0, -h‴ u₁ v₁ z₁].
    let q1 = q[0];
    let b_phi_phibar = [Complex64::new(0.0, 0.0), -jet.h2 * q1 * q1.conj()];
    let b_phi_phi = [Complex64::new(0.0, 0.0), -jet.h2 * q1 * q1];
    let h11 = solve2(delta(Complex64::new(0.0, 0.0), a, atilde, c, tau), b_phi_phibar)?;
    let h20 = solve2(
        delta(2.0 * i * omega, a, atilde, c, tau),
        b_phi_phi,
    )?;
    let term1 = -jet.h2 * q1 * h11[0];
    let term2 = -0.5 * jet.h2 * q1.conj() * h20[0];
    let term3 = -0.5 * jet.h3 * q1 * q1 * q1.conj();
    // pᵀ[0, z] = p₂ z; the 1/ω prefactor cancels against p₂ = α_p ω only up
    // to the stored normalization, so keep it explicit.
    let l = ((term1 + term2 + term3) * p[1]).re / omega;

    // Residual bookkeeping.
    let d_iw = delta(i * omega, a, atilde, c, tau);
    let pt_d = [
        p[0] * d_iw[0][0] + p[1] * d_iw[1][0],
        p[0] * d_iw[0][1] + p[1] * d_iw[1][1],
    ];
    let d_q = mat_vec(d_iw, q);
    let norm_p = (p[0].norm_sqr() + p[1].norm_sqr()).sqrt();
    let norm_q = (q[0].norm_sqr() + q[1].norm_sqr()).sqrt();
    let d_norm = d_iw
        .iter()
        .flatten()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt();
    let normalization = p[0] * q[0] + p[1] * ddelta_22 * q[1];
    let residuals = [
        (pt_d[0].norm_sqr() + pt_d[1].norm_sqr()).sqrt() / (norm_p * d_norm),
        (d_q[0].norm_sqr() + d_q[1].norm_sqr()).sqrt() / (norm_q * d_norm),
        (normalization - 1.0).norm(),
    ];

    Ok((
        l,
        GeneralLyapunovInputs {
            p,
            q,
            alpha_product,
            h11_at_0: h11[0],
            h20_at_0: h20[0],
            residuals,
        },
    ))
}

/// One classified Hopf candidate.
#[derive(Debug, Clone, Serialize)]
pub struct HopfClassification {
    pub family: Family,
    pub n: usize,
    pub tau: f64,
    pub omega: f64,
    pub report: LyapunovReport,
}

/// Classifies every Hopf candidate of the principal lower-branch
/// equilibrium up to index `n_upper`. Empty when ã < a.
pub fn classify_all_hopf(
    params: &SwingParams,
    n_upper: usize,
) -> Result<Vec<HopfClassification>> {
    if !(params.w > 0.0 && params.w < 1.0) {
        return Err(Error::OutOfScope("classification needs 0 < w < 1".into()));
    }
    let ye = params.y_e()?;
    let jet = NonlinearityJet {
        h1: ye.cos(),
        h2: -ye.sin(),
        h3: -ye.cos(),
    };
    let table = hopf_points(params.a, params.atilde, jet.h1, n_upper)?;
    if table.regime != StabilityRegime::Switching {
        return Ok(Vec::new());
    }
    let om = table.omega.unwrap();
    let mut out = Vec::with_capacity(2 * (n_upper + 1));
    for n in 0..=n_upper {
        for (family, omega, tau) in [
            (Family::One, om.omega1, table.tau1[n]),
            (Family::Two, om.omega2, table.tau2[n]),
        ] {
            let report = sign_first_lyapunov(&jet, params.a, params.atilde, omega, tau)?;
            out.push(HopfClassification {
                family,
                n,
                tau,
                omega,
                report,
            });
        }
    }
    out.sort_by(|x, y| x.tau.total_cmp(&y.tau));
    Ok(out)
}

/// The sign bracket as an explicit rational function of the family index:
/// `(first_num + second_num) / denom` with affine numerator parts and a
/// monic quadratic denominator. The candidate ωτ is affine in n, which makes
/// every β-dependent quantity rational in n.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BracketIndexForm {
    /// (slope, intercept) of the Re(1/(β detΔ(2iω))) part.
    pub first_num: (f64, f64),
    /// (slope, intercept) of the Re(1/β)(2/h′ - h‴/h″²) part.
    pub second_num: (f64, f64),
    /// (linear, constant) coefficients of the monic quadratic denominator.
    pub denom: (f64, f64),
}

impl BracketIndexForm {
    pub fn eval(&self, n: f64) -> f64 {
        let num =
            self.first_num.0 * n + self.first_num.1 + self.second_num.0 * n + self.second_num.1;
        num / (n * n + self.denom.0 * n + self.denom.1)
    }
}

/// Expands the sign bracket of [`sign_first_lyapunov`] in the family index.
pub fn bracket_index_form(
    jet: &NonlinearityJet,
    a: f64,
    atilde: f64,
    family: Family,
) -> Result<BracketIndexForm> {
    if a >= atilde {
        return Err(Error::OutOfScope("requires a < ã".into()));
    }
    if jet.h2 == 0.0 {
        return Err(Error::Degenerate("h″ = 0".into()));
    }
    let table = hopf_points(a, atilde, jet.h1, 0)?;
    let om = table
        .omega
        .ok_or_else(|| Error::Degenerate("no crossing frequencies".into()))?;
    let (omega, theta) = match family {
        Family::One => (om.omega1, table.theta()),
        Family::Two => (om.omega2, 2.0 * std::f64::consts::PI - table.theta()),
    };
    let two_pi = 2.0 * std::f64::consts::PI;
    // β(n) = (u0 + u1 n) + i (v0 + v1 n) along the family.
    let u1 = -two_pi * (omega * omega - jet.h1);
    let u0 = -theta * (omega * omega - jet.h1);
    let v1 = two_pi * omega * a;
    let v0 = theta * omega * a + jet.h1 + omega * omega;
    let nrm = u1 * u1 + v1 * v1;
    let d = det_delta_2iw(omega, a, atilde, jet.h1);
    let dn2 = d.norm_sqr();
    let k = 2.0 / jet.h1 - jet.h3 / (jet.h2 * jet.h2);
    Ok(BracketIndexForm {
        first_num: (
            (u1 * d.re - v1 * d.im) / dn2 / nrm,
            (u0 * d.re - v0 * d.im) / dn2 / nrm,
        ),
        second_num: (k * u1 / nrm, k * u0 / nrm),
        denom: (2.0 * (u0 * u1 + v0 * v1) / nrm, (u0 * u0 + v0 * v0) / nrm),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{equilibria, swing_jet};
    use approx::assert_relative_eq;

    fn paper_params() -> SwingParams {
        SwingParams::new(0.025, 0.0625, 0.125, 0.0).unwrap()
    }

    fn paper_jet() -> NonlinearityJet {
        let p = paper_params();
        let eq = equilibria(&p, (0.0, 1.0)).unwrap().points[0];
        swing_jet(&p, &eq)
    }

    fn candidate(family: Family, n: usize) -> (f64, f64) {
        let jet = paper_jet();
        let t = hopf_points(0.025, 0.0625, jet.h1, n).unwrap();
        (
            t.omega_of(family).unwrap(),
            t.tau(family, n).unwrap(),
        )
    }

    #[test]
    fn sign_re_inverse_beta_per_family() {
        let jet = paper_jet();
        let (om1, t10) = candidate(Family::One, 0);
        let b = beta(om1, t10, 0.025, jet.h1).unwrap();
        assert_eq!(b.sign_re_inverse(), -1);
        let (om2, t20) = candidate(Family::Two, 0);
        let b = beta(om2, t20, 0.025, jet.h1).unwrap();
        assert_eq!(b.sign_re_inverse(), 1);
    }

    #[test]
    fn det_delta_closed_form_matches_direct_evaluation() {
        // Oracle: det Δ(2iω) = (2iω)² + a(2iω) + ã(2iω)e^{-2iωτ} + c.
        let jet = paper_jet();
        for (fam, n) in [(Family::One, 0), (Family::Two, 0), (Family::One, 3)] {
            let (om, tau) = candidate(fam, n);
            let lam = Complex64::new(0.0, 2.0 * om);
            let direct =
                lam * lam + 0.025 * lam + 0.0625 * lam * (-lam * tau).exp() + jet.h1;
            let closed = det_delta_2iw(om, 0.025, 0.0625, jet.h1);
            assert!(
                (direct - closed).norm() <= 1e-10 * closed.norm(),
                "family {fam:?} n {n}: {direct} vs {closed}"
            );
        }
    }

    #[test]
    fn substitution_limit() {
        // a = ã, ω² = h1: the closed form collapses to -3ω² + 4iaω.
        let om: f64 = 1.3;
        let d = det_delta_2iw(om, 0.05, 0.05, om * om);
        assert_relative_eq!(d.re, -3.0 * om * om, epsilon = 1e-12);
        assert_relative_eq!(d.im, 2.0 * om * 2.0 * 0.05, epsilon = 1e-12);
    }

    #[test]
    fn reference_signs_alternate() {
        let jet = paper_jet();
        for n in 0..=5 {
            let (om1, t1) = candidate(Family::One, n);
            let r1 = sign_first_lyapunov(&jet, 0.025, 0.0625, om1, t1).unwrap();
            assert_eq!(r1.sign, -1, "family 1, n = {n}");
            assert_eq!(r1.criticality, Criticality::Supercritical);
            assert_eq!(r1.branch_side, BranchSide::LargerDelay);
            let (om2, t2) = candidate(Family::Two, n);
            let r2 = sign_first_lyapunov(&jet, 0.025, 0.0625, om2, t2).unwrap();
            assert_eq!(r2.sign, 1, "family 2, n = {n}");
            assert_eq!(r2.criticality, Criticality::Subcritical);
            assert_eq!(r2.branch_side, BranchSide::LargerDelay);
        }
    }

    #[test]
    fn bracket_index_form_matches_pointwise_bracket() {
        let jet = paper_jet();
        for family in [Family::One, Family::Two] {
            let form = bracket_index_form(&jet, 0.025, 0.0625, family).unwrap();
            for n in 0..=8 {
                let (om, tau) = candidate(family, n);
                let r = sign_first_lyapunov(&jet, 0.025, 0.0625, om, tau).unwrap();
                assert_relative_eq!(form.eval(n as f64), r.bracket_value, max_relative = 1e-11);
            }
        }
    }

    #[test]
    fn bracket_coefficients_reference_values() {
        // Frozen from an extended-precision evaluation of the expansion.
        let jet = paper_jet();
        let f1 = bracket_index_form(&jet, 0.025, 0.0625, Family::One).unwrap();
        assert_relative_eq!(f1.first_num.0, 0.691_979, epsilon = 5e-7);
        assert_relative_eq!(f1.first_num.1, 0.259_713, epsilon = 5e-7);
        assert_relative_eq!(f1.second_num.0, -149.154_604, epsilon = 5e-6);
        assert_relative_eq!(f1.second_num.1, -47.057_523, epsilon = 5e-6);
        assert_relative_eq!(f1.denom.0, 4.691_024, epsilon = 5e-6);
        assert_relative_eq!(f1.denom.1, 27.136_518, epsilon = 5e-6);
        let f2 = bracket_index_form(&jet, 0.025, 0.0625, Family::Two).unwrap();
        assert_relative_eq!(f2.first_num.0, -0.899_351, epsilon = 5e-7);
        assert_relative_eq!(f2.first_num.1, -0.551_981, epsilon = 5e-7);
        assert_relative_eq!(f2.second_num.0, 157.982_398, epsilon = 5e-6);
        assert_relative_eq!(f2.second_num.1, 108.139_751, epsilon = 5e-6);
        assert_relative_eq!(f2.denom.0, 5.429_044, epsilon = 5e-6);
        assert_relative_eq!(f2.denom.1, 29.003_721, epsilon = 5e-6);
    }

    #[test]
    fn oracle_agrees_with_closed_form() {
        let jet = paper_jet();
        for n in 0..=10 {
            for family in [Family::One, Family::Two] {
                let (om, tau) = candidate(family, n);
                let r = sign_first_lyapunov(&jet, 0.025, 0.0625, om, tau).unwrap();
                let (l, inputs) =
                    lyapunov_general_oracle(&jet, 0.025, 0.0625, om, tau, 1.0).unwrap();
                assert_eq!(l.signum() as i8, r.sign, "family {family:?} n {n}");
                for res in inputs.residuals {
                    assert!(res <= 1e-10, "null-vector residual {res}");
                }
                // Simplification identity a + ã e^{-iωτ} = -iω + i c/ω.
                let lhs = Complex64::new(0.025, 0.0)
                    + 0.0625 * (-Complex64::i() * om * tau).exp();
                let rhs = Complex64::i() * (jet.h1 / om - om);
                assert!((lhs - rhs).norm() <= 1e-10);
                // And the L value itself factors through the bracket.
                assert_relative_eq!(
                    l,
                    0.5 * jet.h2 * jet.h2 * r.bracket_value,
                    max_relative = 1e-9
                );
            }
        }
    }

    #[test]
    fn oracle_scaling_is_quartic_in_alpha_q() {
        let jet = paper_jet();
        let (om, tau) = candidate(Family::One, 0);
        let (l1, _) = lyapunov_general_oracle(&jet, 0.025, 0.0625, om, tau, 1.0).unwrap();
        let (l2, _) = lyapunov_general_oracle(&jet, 0.025, 0.0625, om, tau, 2.0).unwrap();
        assert_relative_eq!(l2 / l1, 4.0, max_relative = 1e-10);
        assert_eq!(l1.signum(), l2.signum());
    }

    #[test]
    fn linear_system_is_degenerate() {
        let jet = NonlinearityJet {
            h1: 0.9921567416492215,
            h2: 0.0,
            h3: 0.0,
        };
        let (om, tau) = candidate(Family::One, 0);
        let (l, _) = lyapunov_general_oracle(&jet, 0.025, 0.0625, om, tau, 1.0).unwrap();
        assert_eq!(l, 0.0);
        assert!(matches!(
            sign_first_lyapunov(&jet, 0.025, 0.0625, om, tau),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn classify_all_reference() {
        let mut params = paper_params();
        params.tau = 0.0;
        let rows = classify_all_hopf(&params, 5).unwrap();
        assert_eq!(rows.len(), 12);
        // Sorted by tau the criticalities strictly alternate.
        for pair in rows.windows(2) {
            assert!(pair[0].tau < pair[1].tau);
            assert_ne!(
                pair[0].report.criticality, pair[1].report.criticality,
                "alternation broken at tau = {}",
                pair[1].tau
            );
        }
        for r in &rows {
            assert_eq!(r.report.branch_side, BranchSide::LargerDelay);
        }
    }

    #[test]
    fn classify_all_empty_when_instantaneous_damping_prevails() {
        let params = SwingParams::new(0.1, 0.05, 0.125, 0.0).unwrap();
        assert!(classify_all_hopf(&params, 5).unwrap().is_empty());
    }
}
