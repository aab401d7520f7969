//! Time-domain integration of the delayed swing equation by the method of
//! steps: an explicit Dormand–Prince 5(4) pair whose quartic continuous
//! extension doubles as the delayed-term lookup table, plus Poincaré section
//! detection on the dense output.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{SwingParams, SwingSystem};

/// Initial data on [-τ, 0].
#[derive(Debug, Clone)]
pub enum InitialFunction {
    /// φ(θ) ≡ x for θ ∈ [-τ, 0].
    Constant([f64; 2]),
    /// Sampled values with derivatives on a mesh covering exactly [-τ, 0];
    /// evaluated by cubic Hermite interpolation.
    SampledSegment(SampledSegment),
}

#[derive(Debug, Clone)]
pub struct SampledSegment {
    pub times: Vec<f64>,
    pub values: Vec<[f64; 2]>,
    pub derivatives: Vec<[f64; 2]>,
}

impl SampledSegment {
    fn validate(&self, tau: f64) -> Result<()> {
        let n = self.times.len();
        if n < 2 || self.values.len() != n || self.derivatives.len() != n {
            return Err(Error::InvalidParameter(
                "segment needs matching times/values/derivatives with ≥ 2 samples".into(),
            ));
        }
        if (self.times[0] + tau).abs() > 1e-9 * tau.max(1.0) || self.times[n - 1].abs() > 1e-12 {
            return Err(Error::InvalidParameter(
                "segment must cover exactly [-tau, 0]".into(),
            ));
        }
        if self.times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter("segment times must increase".into()));
        }
        if self
            .values
            .iter()
            .chain(self.derivatives.iter())
            .any(|v| !v[0].is_finite() || !v[1].is_finite())
        {
            return Err(Error::InvalidParameter("segment data must be finite".into()));
        }
        Ok(())
    }

    fn eval(&self, t: f64) -> [f64; 2] {
        let n = self.times.len();
        let t = t.clamp(self.times[0], self.times[n - 1]);
        let k = match self.times.binary_search_by(|x| x.total_cmp(&t)) {
            Ok(k) => k.min(n - 2),
            Err(k) => k.saturating_sub(1).min(n - 2),
        };
        let h = self.times[k + 1] - self.times[k];
        let s = (t - self.times[k]) / h;
        let (y0, y1) = (self.values[k], self.values[k + 1]);
        let (d0, d1) = (self.derivatives[k], self.derivatives[k + 1]);
        let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        [
            h00 * y0[0] + h10 * h * d0[0] + h01 * y1[0] + h11 * h * d1[0],
            h00 * y0[1] + h10 * h * d0[1] + h01 * y1[1] + h11 * h * d1[1],
        ]
    }
}

impl InitialFunction {
    fn eval(&self, t: f64) -> [f64; 2] {
        match self {
            InitialFunction::Constant(x) => *x,
            InitialFunction::SampledSegment(seg) => seg.eval(t),
        }
    }

    fn at_zero(&self) -> [f64; 2] {
        self.eval(0.0)
    }
}

/// One accepted step with its quartic interpolant per component,
/// x(t₀ + θh) = Σ c_k θᵏ.
#[derive(Debug, Clone)]
struct StepPoly {
    t0: f64,
    h: f64,
    coef: [[f64; 5]; 2],
}

impl StepPoly {
    fn eval(&self, t: f64) -> [f64; 2] {
        let s = (t - self.t0) / self.h;
        let mut out = [0.0; 2];
        for (i, c) in self.coef.iter().enumerate() {
            out[i] = c[0] + s * (c[1] + s * (c[2] + s * (c[3] + s * c[4])));
        }
        out
    }

    fn eval_deriv(&self, t: f64) -> [f64; 2] {
        let s = (t - self.t0) / self.h;
        let mut out = [0.0; 2];
        for (i, c) in self.coef.iter().enumerate() {
            out[i] = (c[1] + s * (2.0 * c[2] + s * (3.0 * c[3] + s * 4.0 * c[4]))) / self.h;
        }
        out
    }
}

/// Dense solution of an integration run. Immutable; queries are
/// re-entrant.
#[derive(Debug, Clone)]
pub struct Trajectory {
    params: SwingParams,
    init: InitialFunction,
    steps: Vec<StepPoly>,
    t_end: f64,
    /// Step metadata: (size, error estimate) per accepted step.
    pub step_stats: Vec<(f64, f64)>,
}

impl Trajectory {
    pub fn params(&self) -> &SwingParams {
        &self.params
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    /// Accepted step endpoints, starting at 0.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.steps.iter().map(|s| s.t0).collect();
        out.push(self.t_end);
        out
    }

    fn locate(&self, t: f64) -> Result<&StepPoly> {
        let k = self
            .steps
            .partition_point(|s| s.t0 + s.h < t)
            .min(self.steps.len() - 1);
        Ok(&self.steps[k])
    }

    /// State at time t ∈ [-τ, t_end].
    pub fn eval(&self, t: f64) -> Result<[f64; 2]> {
        if t > self.t_end * (1.0 + 1e-12) + 1e-14 {
            return Err(Error::Contract(format!(
                "query at t = {t} beyond the integrated range {}",
                self.t_end
            )));
        }
        if t < 0.0 {
            if t < -self.params.tau - 1e-9 * self.params.tau.max(1.0) {
                return Err(Error::Contract(format!(
                    "query at t = {t} precedes the initial segment"
                )));
            }
            return Ok(self.init.eval(t));
        }
        self.locate(t).map(|s| s.eval(t))
    }

    /// Time derivative of the interpolant at t ∈ [0, t_end].
    pub fn eval_deriv(&self, t: f64) -> Result<[f64; 2]> {
        if !(0.0..=self.t_end * (1.0 + 1e-12) + 1e-14).contains(&t) {
            return Err(Error::Contract("derivative query out of range".into()));
        }
        self.locate(t).map(|s| s.eval_deriv(t))
    }

    /// Resamples the tail [t_end - τ, t_end] as an initial segment for a
    /// follow-up run.
    pub fn tail_segment(&self, samples_per_tau: usize) -> Result<SampledSegment> {
        let tau = self.params.tau;
        if tau <= 0.0 {
            return Err(Error::InvalidParameter("tail segment needs tau > 0".into()));
        }
        let n = samples_per_tau.max(8);
        let mut times = Vec::with_capacity(n + 1);
        let mut values = Vec::with_capacity(n + 1);
        let mut derivatives = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let t = self.t_end - tau + tau * k as f64 / n as f64;
            times.push(t - self.t_end);
            values.push(self.eval(t)?);
            derivatives.push(self.eval_deriv(t.max(0.0))?);
        }
        Ok(SampledSegment {
            times,
            values,
            derivatives,
        })
    }
}

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];
// Continuous-extension weights.
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

/// How many propagated derivative-jump times kτ get pinned as step
/// endpoints; past that the solution is smoother than the scheme order.
const DISCONTINUITY_LEVELS: usize = 7;

/// Integrates the delayed swing equation from `phi` to `t_end` with local
/// error controlled to `tol` (both absolute and relative).
///
/// Delayed lookups read the trajectory's own dense interpolant; the step
/// size never exceeds τ so lookups never extrapolate.
pub fn integrate(
    params: &SwingParams,
    phi: &InitialFunction,
    t_end: f64,
    tol: f64,
) -> Result<Trajectory> {
    if !(t_end > 0.0) {
        return Err(Error::InvalidParameter("t_end must be positive".into()));
    }
    if !(1e-12..=1e-3).contains(&tol) {
        return Err(Error::InvalidParameter(
            "tol must lie in [1e-12, 1e-3]".into(),
        ));
    }
    params.validate()?;
    if let InitialFunction::SampledSegment(seg) = phi {
        seg.validate(params.tau)?;
    }
    let system = if params.w > 0.0 && params.w <= 1.0 {
        SwingSystem::at_principal_equilibrium(params)?
    } else {
        SwingSystem::unshifted(params)
    };
    // The shift moves coordinates; the caller's data is already in the
    // shifted frame used throughout (x1 = y - y_e). Keep the raw field.
    let tau = params.tau;

    let mut traj = Trajectory {
        params: *params,
        init: phi.clone(),
        steps: Vec::new(),
        t_end: 0.0,
        step_stats: Vec::new(),
    };

    let delayed = |traj: &Trajectory, t: f64, current: [f64; 2]| -> Result<[f64; 2]> {
        if tau == 0.0 {
            Ok(current)
        } else {
            traj.eval(t - tau)
        }
    };

    let mut t = 0.0f64;
    let mut y = phi.at_zero();
    let mut h = if tau > 0.0 { (tau / 4.0).min(0.1) } else { 0.1 };
    h = h.min(t_end);
    let mut discontinuities: Vec<f64> = if tau > 0.0 {
        (1..=DISCONTINUITY_LEVELS)
            .map(|k| k as f64 * tau)
            .filter(|&d| d < t_end)
            .collect()
    } else {
        Vec::new()
    };
    discontinuities.reverse();

    let h_min = 1e-13 * t_end.max(1.0);
    let max_steps = 50_000_000usize;
    let mut k = [[0.0f64; 2]; 7];

    for step_count in 0..max_steps {
        if t >= t_end * (1.0 - 1e-15) {
            break;
        }
        if step_count + 1 == max_steps {
            return Err(Error::NoConvergence("step budget exhausted".into()));
        }
        if tau > 0.0 {
            h = h.min(tau);
        }
        // Land exactly on propagated discontinuities and on t_end.
        if let Some(&next_disc) = discontinuities.last() {
            if t + h > next_disc - 1e-14 && t < next_disc {
                h = next_disc - t;
            }
        }
        if t + h > t_end {
            h = t_end - t;
        }
        if h < h_min {
            return Err(Error::Accuracy(format!(
                "step size underflow at t = {t}; the problem is too stiff for the tolerance"
            )));
        }

        // Stage sweep; delayed argument always ≥ t - τ which is covered.
        let d0 = delayed(&traj, t, y)?;
        k[0] = system.f(y, if tau == 0.0 { y } else { d0 });
        let mut failed = false;
        for i in 1..7 {
            let mut yi = y;
            for (j, kj) in k.iter().enumerate().take(i) {
                yi[0] += h * A[i][j] * kj[0];
                yi[1] += h * A[i][j] * kj[1];
            }
            let ti = t + C[i] * h;
            let di = if tau == 0.0 { yi } else { delayed(&traj, ti, yi)? };
            k[i] = system.f(yi, di);
            if !k[i][0].is_finite() || !k[i][1].is_finite() {
                failed = true;
                break;
            }
        }
        if failed {
            h *= 0.25;
            continue;
        }
        // 5th-order solution is the a7 row; k[6] = f(t+h, y5).
        let mut y5 = y;
        for (j, kj) in k.iter().enumerate().take(6) {
            y5[0] += h * A[6][j] * kj[0];
            y5[1] += h * A[6][j] * kj[1];
        }
        let mut y4 = y;
        for (j, kj) in k.iter().enumerate() {
            y4[0] += h * B4[j] * kj[0];
            y4[1] += h * B4[j] * kj[1];
        }
        let mut err = 0.0f64;
        for i in 0..2 {
            let sc = tol + tol * y[i].abs().max(y5[i].abs());
            err = err.max(((y5[i] - y4[i]) / sc).abs());
        }
        if err <= 1.0 {
            // Build the quartic continuous extension.
            let ydiff = [y5[0] - y[0], y5[1] - y[1]];
            let mut coef = [[0.0; 5]; 2];
            for i in 0..2 {
                let r1 = y[i];
                let r2 = ydiff[i];
                let r3 = h * k[0][i] - ydiff[i];
                let r4 = ydiff[i] - h * k[6][i] - r3;
                let mut r5 = 0.0;
                for (j, dj) in D.iter().enumerate() {
                    r5 += dj * k[j][i];
                }
                r5 *= h;
                coef[i] = [
                    r1,
                    r2 + r3,
                    -r3 + r4 + r5,
                    -r4 - 2.0 * r5,
                    r5,
                ];
            }
            traj.steps.push(StepPoly { t0: t, h, coef });
            traj.step_stats.push((h, err * tol));
            t += h;
            traj.t_end = t;
            y = y5;
            if let Some(&next_disc) = discontinuities.last() {
                if (t - next_disc).abs() <= 1e-12 * t.max(1.0) {
                    discontinuities.pop();
                }
            }
            let grow = (0.9 * err.powf(-0.2)).clamp(0.2, 5.0);
            h *= grow;
        } else {
            h *= (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
        }
    }
    Ok(traj)
}

/// Orientation filter for section crossings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CrossingOrientation {
    /// Normal velocity positive at the crossing.
    Positive,
    /// Normal velocity negative.
    Negative,
}

/// A hyperplane {x : n·(x - p₀) = 0} in the (x₁, x₂) plane with orientation.
#[derive(Debug, Clone, Copy)]
pub struct Section {
    pub point: [f64; 2],
    pub normal: [f64; 2],
    pub orientation: CrossingOrientation,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Crossing {
    pub t: f64,
    pub state: [f64; 2],
    /// True when the normal velocity was below the grazing tolerance.
    pub ambiguous: bool,
}

const GRAZING_TOL: f64 = 1e-9;
const CROSSING_TIME_TOL: f64 = 1e-10;

/// All transversal crossings of the section in the stated orientation,
/// found on the dense interpolant and bisected to 1e-10 in time.
pub fn poincare_section(traj: &Trajectory, section: &Section) -> Result<Vec<Crossing>> {
    let n = section.normal;
    if n[0] == 0.0 && n[1] == 0.0 {
        return Err(Error::InvalidParameter("section normal must be nonzero".into()));
    }
    let g = |t: f64| -> Result<f64> {
        let x = traj.eval(t)?;
        Ok(n[0] * (x[0] - section.point[0]) + n[1] * (x[1] - section.point[1]))
    };
    let mut out = Vec::new();
    // The interpolant is quartic; five samples per step bound the sign
    // changes it can hide.
    let subdiv = 5usize;
    let mut ts = Vec::new();
    for s in &traj.steps {
        for j in 0..subdiv {
            ts.push(s.t0 + s.h * j as f64 / subdiv as f64);
        }
    }
    ts.push(traj.t_end);
    let mut g_prev = g(ts[0])?;
    for w in ts.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let g1 = g(t1)?;
        if g_prev == 0.0 || g_prev * g1 < 0.0 {
            let (mut lo, mut hi) = (t0, t1);
            let mut glo = g_prev;
            while hi - lo > CROSSING_TIME_TOL {
                let mid = 0.5 * (lo + hi);
                let gm = g(mid)?;
                if glo * gm <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    glo = gm;
                }
            }
            let tc = 0.5 * (lo + hi);
            let state = traj.eval(tc)?;
            let xdot = traj.eval_deriv(tc.max(0.0))?;
            let v = n[0] * xdot[0] + n[1] * xdot[1];
            let wanted = match section.orientation {
                CrossingOrientation::Positive => v > 0.0,
                CrossingOrientation::Negative => v < 0.0,
            };
            let ambiguous = v.abs() < GRAZING_TOL;
            if wanted || ambiguous {
                out.push(Crossing {
                    t: tc,
                    state,
                    ambiguous,
                });
            }
        }
        g_prev = g1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn paper_params(tau: f64) -> SwingParams {
        SwingParams::new(0.025, 0.0625, 0.125, tau).unwrap()
    }

    #[test]
    fn equilibrium_is_invariant() {
        for tau in [0.0, 1.0, 3.7] {
            let params = paper_params(tau);
            let tol = 1e-8;
            let traj = integrate(&params, &InitialFunction::Constant([0.0, 0.0]), 50.0, tol)
                .unwrap();
            let mut sup: f64 = 0.0;
            for k in 0..=200 {
                let x = traj.eval(50.0 * k as f64 / 200.0).unwrap();
                sup = sup.max(x[0].abs().max(x[1].abs()));
            }
            assert!(sup <= 10.0 * tol * 50.0, "drift {sup} at tau={tau}");
        }
    }

    #[test]
    fn delay_free_matches_ode_oracle() {
        // Oracle: plain RK4 with tiny fixed step on the damped pendulum with
        // lumped damping a + ã.
        let params = paper_params(0.0);
        let system = SwingSystem::at_principal_equilibrium(&params).unwrap();
        let x0 = [0.1, 0.0];
        let t_end = 40.0;
        let mut y = x0;
        let hstep = 1e-3;
        let n = (t_end / hstep) as usize;
        for _ in 0..n {
            let f = |x: [f64; 2]| system.f(x, x);
            let k1 = f(y);
            let k2 = f([y[0] + 0.5 * hstep * k1[0], y[1] + 0.5 * hstep * k1[1]]);
            let k3 = f([y[0] + 0.5 * hstep * k2[0], y[1] + 0.5 * hstep * k2[1]]);
            let k4 = f([y[0] + hstep * k3[0], y[1] + hstep * k3[1]]);
            y[0] += hstep / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
            y[1] += hstep / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        }
        let traj = integrate(&params, &InitialFunction::Constant(x0), t_end, 1e-9).unwrap();
        let xf = traj.eval(t_end).unwrap();
        assert!((xf[0] - y[0]).abs() < 1e-6 && (xf[1] - y[1]).abs() < 1e-6);
        // Converging to the equilibrium.
        assert!(xf[0].abs() < 0.1);
    }

    #[test]
    fn observed_order_at_least_nominal_minus_half() {
        // Error against a tight-tolerance reference scales like the step
        // size to the scheme order as the tolerance is tightened.
        let params = paper_params(0.0);
        let x0 = [0.4, 0.0];
        let t_end = 10.0;
        let reference = integrate(&params, &InitialFunction::Constant(x0), t_end, 1e-12)
            .unwrap()
            .eval(t_end)
            .unwrap();
        let mut data = Vec::new();
        for tol in [1e-5, 1e-7, 1e-9] {
            let traj = integrate(&params, &InitialFunction::Constant(x0), t_end, tol).unwrap();
            let xf = traj.eval(t_end).unwrap();
            let err = ((xf[0] - reference[0]).powi(2) + (xf[1] - reference[1]).powi(2)).sqrt();
            let mean_h = t_end / traj.step_stats.len() as f64;
            data.push((mean_h.ln(), err.max(1e-16).ln()));
        }
        // Least-squares slope of log err vs log h.
        let n = data.len() as f64;
        let sx: f64 = data.iter().map(|d| d.0).sum();
        let sy: f64 = data.iter().map(|d| d.1).sum();
        let sxx: f64 = data.iter().map(|d| d.0 * d.0).sum();
        let sxy: f64 = data.iter().map(|d| d.0 * d.1).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        assert!(slope >= 3.5, "observed order {slope}");
    }

    #[test]
    fn breakpoints_include_delay_multiples() {
        let params = paper_params(0.8);
        let traj = integrate(
            &params,
            &InitialFunction::Constant([0.3, 0.0]),
            5.0,
            1e-8,
        )
        .unwrap();
        let bps = traj.breakpoints();
        for k in 1..=5 {
            let target = 0.8 * k as f64;
            if target < 5.0 {
                assert!(
                    bps.iter().any(|&b| (b - target).abs() < 1e-9),
                    "missing breakpoint at {target}"
                );
            }
        }
    }

    #[test]
    fn history_query_contract() {
        let params = paper_params(1.0);
        let traj = integrate(&params, &InitialFunction::Constant([0.1, 0.0]), 2.0, 1e-8)
            .unwrap();
        assert!(traj.eval(-0.5).is_ok());
        assert!(matches!(traj.eval(-1.5), Err(Error::Contract(_))));
        assert!(matches!(traj.eval(2.5), Err(Error::Contract(_))));
    }

    #[test]
    fn interpolant_derivative_consistency() {
        // x₂ equals d x₁/dt to interpolant order.
        let params = paper_params(2.0);
        let traj = integrate(&params, &InitialFunction::Constant([0.5, 0.0]), 30.0, 1e-10)
            .unwrap();
        for k in 1..100 {
            let t = 30.0 * k as f64 / 100.0;
            let x = traj.eval(t).unwrap();
            let dx = traj.eval_deriv(t).unwrap();
            assert!((dx[0] - x[1]).abs() < 1e-6, "at t={t}: {} vs {}", dx[0], x[1]);
        }
    }

    #[test]
    fn constant_trajectory_has_no_crossings() {
        let params = paper_params(1.0);
        let traj = integrate(&params, &InitialFunction::Constant([0.0, 0.0]), 20.0, 1e-9)
            .unwrap();
        let section = Section {
            point: [0.5, 0.0],
            normal: [1.0, 0.0],
            orientation: CrossingOrientation::Positive,
        };
        assert!(poincare_section(&traj, &section).unwrap().is_empty());
    }

    #[test]
    fn tolerance_rejected_outside_range() {
        let params = paper_params(1.0);
        for tol in [1e-13, 1e-2] {
            assert!(matches!(
                integrate(&params, &InitialFunction::Constant([0.0, 0.0]), 1.0, tol),
                Err(Error::InvalidParameter(_))
            ));
        }
    }

    #[test]
    fn time_scale_consistency() {
        // Dimensional delay-free run (RK4 oracle on
        // ŷ'' + (â+ã̂)ŷ' + k̂s sin ŷ = ŵ) maps onto the dimensionless
        // trajectory under t = t̂·√k̂s.
        let dimless = paper_params(0.0);
        let phys = crate::model::to_physical(&dimless, 16.0).unwrap();
        let sk = phys.ks_hat.sqrt();
        let ye = dimless.y_e().unwrap();
        // Shifted initial state x = (0.2, 0) means ŷ(0) = y_e + 0.2, ŷ'(0) = 0.
        let mut yh = [ye + 0.2, 0.0];
        let f = |x: [f64; 2]| {
            [
                x[1],
                phys.w_hat
                    - (phys.a_hat + phys.atilde_hat) * x[1]
                    - phys.ks_hat * x[0].sin(),
            ]
        };
        let t_end = 8.0;
        let t_hat_end = t_end / sk;
        let hstep = 1e-5;
        let n = (t_hat_end / hstep).round() as usize;
        let mut samples = Vec::new();
        for step in 0..n {
            if step % (n / 20) == 0 {
                samples.push((step as f64 * hstep, yh));
            }
            let k1 = f(yh);
            let k2 = f([yh[0] + 0.5 * hstep * k1[0], yh[1] + 0.5 * hstep * k1[1]]);
            let k3 = f([yh[0] + 0.5 * hstep * k2[0], yh[1] + 0.5 * hstep * k2[1]]);
            let k4 = f([yh[0] + hstep * k3[0], yh[1] + hstep * k3[1]]);
            for i in 0..2 {
                yh[i] += hstep / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
        }
        let traj = integrate(&dimless, &InitialFunction::Constant([0.2, 0.0]), t_end, 1e-11)
            .unwrap();
        for (t_hat, yhat) in samples {
            let x = traj.eval(t_hat * sk).unwrap();
            assert_relative_eq!(x[0] + ye, yhat[0], epsilon = 1e-6);
            assert_relative_eq!(x[1], yhat[1] / sk, epsilon = 1e-6);
        }
    }
}
