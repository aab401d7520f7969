//! Closed-form stability switching of the linearization
//!
//! ```text
//! x'' + a x' + ã x'(t-τ) + c x = 0,   a, ã > 0
//! ```
//!
//! Hopf candidate delays and frequencies, crossing directions, the unstable
//! delay set, equilibrium classification and codimension-two point location.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{BranchKind, Equilibrium, SwingParams};

/// Crossing frequencies of the two delay families,
/// ω₁,₂ = ±½√(ã²-a²) + √(c + ¼(ã²-a²)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HopfFrequencies {
    pub omega1: f64,
    pub omega2: f64,
}

/// The two families of candidate delays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// Destabilizing crossings, d(Re λ)/dτ > 0.
    One,
    /// Restabilizing crossings, d(Re λ)/dτ < 0.
    Two,
}

impl Family {
    pub fn crossing_direction(self) -> i8 {
        match self {
            Family::One => 1,
            Family::Two => -1,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Family::One => 1,
            Family::Two => 2,
        }
    }
}

/// Which of the delay-parametrized regimes the coefficients fall in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StabilityRegime {
    /// c > 0, ã < a: asymptotically stable for every delay.
    DelayIndependentlyStable,
    /// c > 0, a < ã: stability switching along the two delay sequences.
    Switching,
    /// c > 0, a = ã: the two sequences coincide; Lyapunov coefficient
    /// vanishes there (Bautin-adjacent).
    BautinDegenerate,
    /// c = 0: a root sits at the origin for every delay.
    NonHyperbolic,
    /// c < 0: unstable for every delay.
    UnstableAllDelays,
}

/// Candidate Hopf delays for fixed (a, ã, c).
///
/// Delays are available both as materialized lists (`tau1`, `tau2`, up to
/// `n_upper`) and through the exact-formula accessors [`Self::tau`], which
/// ordering decisions use so that `n_max` does not depend on cached
/// rounding.
#[derive(Debug, Clone, Serialize)]
pub struct HopfPointTable {
    pub a: f64,
    pub atilde: f64,
    pub c: f64,
    pub regime: StabilityRegime,
    pub omega: Option<HopfFrequencies>,
    /// τ₁ₙ = (arccos(-a/ã) + 2πn)/ω₁ for n = 0..=n_upper.
    pub tau1: Vec<f64>,
    /// τ₂ₙ = (-arccos(-a/ã) + 2π(n+1))/ω₂ for n = 0..=n_upper.
    pub tau2: Vec<f64>,
}

/// Default index bound; covers every delay window in the reference figures
/// with margin.
pub const DEFAULT_N_UPPER: usize = 32;

impl HopfPointTable {
    pub fn is_empty(&self) -> bool {
        self.tau1.is_empty()
    }

    /// arccos(-a/ã).
    pub fn theta(&self) -> f64 {
        (-self.a / self.atilde).acos()
    }

    /// Exact-formula delay for family j, index n.
    pub fn tau(&self, family: Family, n: usize) -> Option<f64> {
        let om = self.omega?;
        let th = self.theta();
        let two_pi = 2.0 * std::f64::consts::PI;
        Some(match family {
            Family::One => (th + two_pi * n as f64) / om.omega1,
            Family::Two => (-th + two_pi * (n as f64 + 1.0)) / om.omega2,
        })
    }

    /// ω of family j.
    pub fn omega_of(&self, family: Family) -> Option<f64> {
        self.omega.map(|om| match family {
            Family::One => om.omega1,
            Family::Two => om.omega2,
        })
    }

    /// Number of family-j delays strictly below τ, from the closed form.
    pub fn crossings_below(&self, family: Family, tau: f64) -> usize {
        let Some(om) = self.omega_of(family) else {
            return 0;
        };
        let th = match family {
            Family::One => self.theta(),
            Family::Two => 2.0 * std::f64::consts::PI - self.theta(),
        };
        let t = (tau * om - th) / (2.0 * std::f64::consts::PI);
        if t <= 0.0 {
            if tau * om > th {
                1
            } else {
                0
            }
        } else {
            t.floor() as usize + 1
        }
    }

    /// Number of unstable roots at delay τ (off the critical set):
    /// twice the family-1 crossings below τ minus twice the family-2 ones.
    pub fn n_unstable(&self, tau: f64) -> usize {
        match self.regime {
            StabilityRegime::DelayIndependentlyStable => 0,
            StabilityRegime::UnstableAllDelays => {
                // One real unstable root for every delay (c < 0).
                1
            }
            StabilityRegime::NonHyperbolic => 0,
            StabilityRegime::BautinDegenerate => 0,
            StabilityRegime::Switching => {
                2 * (self.crossings_below(Family::One, tau)
                    - self.crossings_below(Family::Two, tau))
            }
        }
    }
}

/// Hopf candidate table per the stability-switching lemma.
///
/// `c ≤ 0` and `ã ≤ a` do not produce imaginary-axis crossings; the returned
/// table is empty and carries the regime flag instead of erroring, so grid
/// sweeps can classify uniformly.
pub fn hopf_points(a: f64, atilde: f64, c: f64, n_upper: usize) -> Result<HopfPointTable> {
    if !(a.is_finite() && atilde.is_finite() && c.is_finite()) {
        return Err(Error::InvalidParameter(
            "hopf_points needs finite coefficients".into(),
        ));
    }
    if a <= 0.0 || atilde <= 0.0 {
        return Err(Error::InvalidParameter(
            "damping coefficients must be positive".into(),
        ));
    }
    let empty = |regime| HopfPointTable {
        a,
        atilde,
        c,
        regime,
        omega: None,
        tau1: Vec::new(),
        tau2: Vec::new(),
    };
    if c < 0.0 {
        return Ok(empty(StabilityRegime::UnstableAllDelays));
    }
    if c == 0.0 {
        return Ok(empty(StabilityRegime::NonHyperbolic));
    }
    if atilde < a {
        return Ok(empty(StabilityRegime::DelayIndependentlyStable));
    }
    let regime = if atilde == a {
        StabilityRegime::BautinDegenerate
    } else {
        StabilityRegime::Switching
    };
    let half_s = 0.5 * (atilde * atilde - a * a).sqrt();
    let root = (c + half_s * half_s).sqrt();
    let omega = HopfFrequencies {
        omega1: half_s + root,
        omega2: -half_s + root,
    };
    let mut table = HopfPointTable {
        a,
        atilde,
        c,
        regime,
        omega: Some(omega),
        tau1: Vec::with_capacity(n_upper + 1),
        tau2: Vec::with_capacity(n_upper + 1),
    };
    for n in 0..=n_upper {
        table.tau1.push(table.tau(Family::One, n).unwrap());
        table.tau2.push(table.tau(Family::Two, n).unwrap());
    }
    Ok(table)
}

/// The set of delays with an unstable equilibrium, Θᵤ: bounded intervals
/// (τ₁ₙ, τ₂ₙ) for n ≤ n_max plus the final ray.
#[derive(Debug, Clone, Serialize)]
pub struct UnstableDelaySet {
    /// Largest n with τ₂ₙ < τ₁₍ₙ₊₁₎; `None` when already τ₂₀ ≥ τ₁₁ (the ray
    /// then starts at τ₁₀) or when the table produces no switching at all.
    pub n_max: Option<usize>,
    /// The bounded intervals, ascending and pairwise disjoint.
    pub intervals: Vec<(f64, f64)>,
    /// Start of the final unbounded interval (τ₁₍ₙ_max+1₎, ∞); `None` when
    /// the equilibrium never destabilizes.
    pub ray_from: Option<f64>,
}

/// Verdict for a single delay value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TauStability {
    AsymptoticallyStable,
    /// Inside Θᵤ, with the unstable root count.
    Unstable { n_unstable: usize },
    /// Exactly on a candidate delay; carries the verdicts on either side.
    NonHyperbolic {
        below: StabilityVerdict,
        above: StabilityVerdict,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StabilityVerdict {
    Stable,
    Unstable,
}

/// Builds Θᵤ from a switching table.
///
/// Delay-independently stable tables yield the empty set; tables flagged
/// non-hyperbolic or unstable-for-all-delays are rejected since Θᵤ is not
/// defined for them.
pub fn unstable_set(table: &HopfPointTable) -> Result<UnstableDelaySet> {
    match table.regime {
        StabilityRegime::DelayIndependentlyStable | StabilityRegime::BautinDegenerate => {
            return Ok(UnstableDelaySet {
                n_max: None,
                intervals: Vec::new(),
                ray_from: None,
            })
        }
        StabilityRegime::NonHyperbolic | StabilityRegime::UnstableAllDelays => {
            return Err(Error::OutOfScope(
                "unstable delay set requires c > 0".into(),
            ))
        }
        StabilityRegime::Switching => {}
    }
    // The gap τ₁(n+1) - τ₂(n) decreases linearly in n, so the first failure
    // is permanent.
    let mut n_max = None;
    let mut n = 0usize;
    loop {
        let t2 = table.tau(Family::Two, n).unwrap();
        let t1_next = table.tau(Family::One, n + 1).unwrap();
        if t2 < t1_next {
            n_max = Some(n);
            n += 1;
        } else {
            break;
        }
        if n > 1_000_000 {
            return Err(Error::NoConvergence(
                "unstable-set enumeration did not terminate".into(),
            ));
        }
    }
    let mut intervals = Vec::new();
    if let Some(nm) = n_max {
        for k in 0..=nm {
            intervals.push((
                table.tau(Family::One, k).unwrap(),
                table.tau(Family::Two, k).unwrap(),
            ));
        }
    }
    let ray_from = table.tau(Family::One, n_max.map_or(0, |nm| nm + 1));
    Ok(UnstableDelaySet {
        n_max,
        intervals,
        ray_from,
    })
}

impl UnstableDelaySet {
    /// Number of bounded unstable intervals (= n_max + 1 when defined).
    /// Equals the count of restabilizations as the delay grows.
    pub fn bounded_interval_count(&self) -> usize {
        self.intervals.len()
    }

    /// Membership of τ in Θᵤ / its complement / its boundary.
    pub fn classify(&self, tau: f64, table: &HopfPointTable) -> TauStability {
        // Exact boundary test against the candidate formulas.
        let on_boundary = |fam: Family| {
            let Some(om) = table.omega_of(fam) else {
                return false;
            };
            let th = match fam {
                Family::One => table.theta(),
                Family::Two => 2.0 * std::f64::consts::PI - table.theta(),
            };
            let k = ((tau * om - th) / (2.0 * std::f64::consts::PI)).round();
            if k < 0.0 {
                return false;
            }
            let t = (th + 2.0 * std::f64::consts::PI * k) / om;
            (tau - t).abs() <= 1e-12 * tau.max(1.0)
        };
        if on_boundary(Family::One) || on_boundary(Family::Two) {
            let eps = 1e-9 * tau.max(1.0);
            let side = |t: f64| {
                if self.contains(t) {
                    StabilityVerdict::Unstable
                } else {
                    StabilityVerdict::Stable
                }
            };
            return TauStability::NonHyperbolic {
                below: side(tau - eps),
                above: side(tau + eps),
            };
        }
        if self.contains(tau) {
            TauStability::Unstable {
                n_unstable: table.n_unstable(tau),
            }
        } else {
            TauStability::AsymptoticallyStable
        }
    }

    fn contains(&self, tau: f64) -> bool {
        if let Some(r) = self.ray_from {
            if tau > r {
                return true;
            }
        }
        self.intervals.iter().any(|&(lo, hi)| tau > lo && tau < hi)
    }
}

/// Stability verdict for an equilibrium of the nonlinear equation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum EquilibriumStability {
    DelayIndependentlyStable,
    DelayIndependentlyUnstable,
    /// Lower branch with prevalent delayed damping: verdict depends on τ.
    AtDelay(TauStability),
    /// Fold point (w = 1): a root sits at the origin.
    NonHyperbolicFold,
}

/// Classifies an equilibrium produced by [`crate::model::equilibria`].
pub fn classify_equilibrium(
    params: &SwingParams,
    eq: &Equilibrium,
) -> Result<EquilibriumStability> {
    if params.w <= 0.0 || params.w > 1.0 {
        return Err(Error::OutOfScope(format!(
            "classification needs w in (0, 1], got {}",
            params.w
        )));
    }
    match eq.kind {
        BranchKind::Upper => Ok(EquilibriumStability::DelayIndependentlyUnstable),
        BranchKind::DegenerateFold => Ok(EquilibriumStability::NonHyperbolicFold),
        BranchKind::Lower => {
            let c = (1.0 - params.w * params.w).sqrt();
            let table = hopf_points(params.a, params.atilde, c, 0)?;
            match table.regime {
                StabilityRegime::DelayIndependentlyStable
                | StabilityRegime::BautinDegenerate => {
                    Ok(EquilibriumStability::DelayIndependentlyStable)
                }
                StabilityRegime::Switching => {
                    let set = unstable_set(&table)?;
                    Ok(EquilibriumStability::AtDelay(
                        set.classify(params.tau, &table),
                    ))
                }
                _ => unreachable!("c > 0 by construction"),
            }
        }
    }
}

/// Kinds of codimension-two points the chart locates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Codim2Kind {
    HopfHopf,
    Bautin,
    FoldHopf,
}

#[derive(Debug, Clone, Serialize)]
pub struct Codim2Point {
    pub kind: Codim2Kind,
    pub tau: f64,
    pub atilde: f64,
    pub w: f64,
    /// One frequency for Bautin/FoldHopf, the two crossing frequencies for
    /// HopfHopf.
    pub omegas: Vec<f64>,
    /// Family indices (n, m) of the intersecting curves, for HopfHopf.
    pub indices: Option<(usize, usize)>,
}

/// τ₁ₙ(ã) = τ₂ₘ(ã) intersections over an ã range at fixed (a, w).
///
/// Per-(n, m) bracketing on a fine grid followed by bisection; the
/// intersections are transversal so no curve tracing is needed.
pub fn hopf_hopf_points(
    a: f64,
    w: f64,
    atilde_range: (f64, f64),
    tau_window: (f64, f64),
    n_bound: usize,
    m_bound: usize,
) -> Result<Vec<Codim2Point>> {
    let c = (1.0 - w * w).sqrt();
    if !(w > 0.0 && w < 1.0) {
        return Err(Error::OutOfScope("HopfHopf search needs 0 < w < 1".into()));
    }
    let (lo, hi) = atilde_range;
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::InvalidParameter("bad atilde range".into()));
    }
    let lo = lo.max(a * (1.0 + 1e-9));
    if lo >= hi {
        return Ok(Vec::new());
    }
    let diff = |at: f64, n: usize, m: usize| -> f64 {
        let t = hopf_points(a, at, c, 0).unwrap();
        t.tau(Family::One, n).unwrap() - t.tau(Family::Two, m).unwrap()
    };
    let grid = 400usize;
    let mut out = Vec::new();
    for n in 0..=n_bound {
        for m in 0..=m_bound {
            let mut prev_at = lo;
            let mut prev = diff(prev_at, n, m);
            for k in 1..=grid {
                let at = lo + (hi - lo) * k as f64 / grid as f64;
                let cur = diff(at, n, m);
                if prev == 0.0 || prev * cur < 0.0 {
                    let (mut x0, mut x1) = (prev_at, at);
                    let mut f0 = prev;
                    for _ in 0..200 {
                        let mid = 0.5 * (x0 + x1);
                        let fm = diff(mid, n, m);
                        if f0 * fm <= 0.0 {
                            x1 = mid;
                        } else {
                            x0 = mid;
                            f0 = fm;
                        }
                        if x1 - x0 <= 1e-14 * x1.abs() {
                            break;
                        }
                    }
                    let at_star = 0.5 * (x0 + x1);
                    let t = hopf_points(a, at_star, c, 0)?;
                    let tau = t.tau(Family::One, n).unwrap();
                    if tau >= tau_window.0 && tau <= tau_window.1 {
                        let om = t.omega.unwrap();
                        out.push(Codim2Point {
                            kind: Codim2Kind::HopfHopf,
                            tau,
                            atilde: at_star,
                            w,
                            omegas: vec![om.omega1, om.omega2],
                            indices: Some((n, m)),
                        });
                    }
                }
                prev = cur;
                prev_at = at;
            }
        }
    }
    out.sort_by(|p, q| p.tau.total_cmp(&q.tau));
    Ok(out)
}

/// Fold-Hopf points: w = 1 makes c = 0 and λ = 0 an eigenvalue while the
/// family-1 crossings persist with ω₁ = √(ã²-a²).
pub fn fold_hopf_points(a: f64, atilde: f64, n_bound: usize) -> Result<Vec<Codim2Point>> {
    if atilde <= a {
        return Ok(Vec::new());
    }
    let omega1 = (atilde * atilde - a * a).sqrt();
    let theta = (-a / atilde).acos();
    let two_pi = 2.0 * std::f64::consts::PI;
    Ok((0..=n_bound)
        .map(|n| Codim2Point {
            kind: Codim2Kind::FoldHopf,
            tau: (theta + two_pi * n as f64) / omega1,
            atilde,
            w: 1.0,
            omegas: vec![omega1],
            indices: Some((n, 0)),
        })
        .collect())
}

/// Bautin candidates on the a = ã line.
///
/// At a = ã an imaginary pair needs cos(ωτ) = -1 and ω² = c, hence
/// τₙ = π(2n+1)/√c with c = √(1-w²). Each returned delay satisfies the
/// characteristic equation at iω to machine precision.
pub fn bautin_points(a: f64, w: f64, n_bound: usize) -> Result<Vec<Codim2Point>> {
    if !(w > 0.0 && w < 1.0) {
        return Err(Error::OutOfScope("Bautin line needs 0 < w < 1".into()));
    }
    let c = (1.0 - w * w).sqrt();
    let omega = c.sqrt();
    Ok((0..=n_bound)
        .map(|n| Codim2Point {
            kind: Codim2Kind::Bautin,
            tau: std::f64::consts::PI * (2.0 * n as f64 + 1.0) / omega,
            atilde: a,
            w,
            omegas: vec![omega],
            indices: Some((n, 0)),
        })
        .collect())
}
