//! Theorem-level verification: exponential trace integrals, sub-threshold
//! boundedness, super-threshold blow-up fits, the two Hardy inequalities,
//! the one-dimensional exponential lemma, the trace Hansson–Brezis–Wainger
//! functional, and the weak-endpoint divergence experiments.
//!
//! The statements being probed are qualitative (a constant exists, or an
//! integral is +∞), so every check here uses a decidable desk-scale proxy:
//! "bounded" means max/min < 3 over a parameter sweep, "divergent" means
//! ≥ 10× growth over three grid refinements, and blow-up rates are fitted
//! on the last four sweep points with an R² gate.

use crate::calibration::Calibration;
use crate::constants::{
    riesz_gamma, theorem_threshold, unit_ball_volume, Params, QExp, TheoremId,
};
use crate::grid::GridFunction;
use crate::measures::{
    certify_growth, certify_nondegeneracy, make_hyperplane, make_lebesgue, make_radial_power,
    Domain, RadonMeasure,
};
use crate::potentials::{grad_k, riesz_radial, SpherePotentialTable};
use crate::quad::{graded_breaks, integrate_panels, GaussLegendre, LogSumExp};
use crate::rearrangement::{double_star, lorentz_norm_of, rearrange, StepProfile};
use crate::testfun::{
    capacitary_fr, log_cap_u_eps, weak_endpoint_f, weak_endpoint_norm_bound, FamilyKind,
};
use crate::{Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
// needed for the pure no_std build; std builds resolve these inherently
#[allow(unused_imports)]
use num_traits::Float;

/// Boundedness proxy: max/min expint ratio below this over a sweep.
pub const BOUNDED_RATIO: f64 = 3.0;
/// Divergence proxy: total growth at least this over three refinements.
pub const DIVERGENT_GROWTH: f64 = 10.0;
/// R² gate for accepting a fitted blow-up slope.
pub const FIT_R2_GATE: f64 = 0.95;

// ---------------------------------------------------------------------------
// Exponential integrals
// ---------------------------------------------------------------------------

/// ∫ exp((κ|u|)^{q'}) dν with log-sum-exp accumulation; `value` saturates
/// to +∞ on overflow while `log_value` stays finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpIntegral {
    pub value: f64,
    pub log_value: f64,
}

pub fn exp_integral(
    u: &GridFunction,
    nu: &RadonMeasure,
    kappa: f64,
    q_prime: f64,
) -> Result<ExpIntegral> {
    if kappa < 0.0 || q_prime < 1.0 {
        return Err(Error::Domain("exp integral requires kappa >= 0, q' >= 1"));
    }
    let mut lse = LogSumExp::new();
    nu.support_iter().for_each(|x, w| {
        let t = (kappa * u.value_at(x).abs()).powf(q_prime) + w.ln();
        lse.push(t);
    });
    Ok(ExpIntegral {
        value: lse.value(),
        log_value: lse.log_value(),
    })
}

/// Same integral for values already paired with ν-weights.
pub fn exp_integral_values(pairs: &[(f64, f64)], kappa: f64, q_prime: f64) -> ExpIntegral {
    let mut lse = LogSumExp::new();
    for (v, w) in pairs {
        if *w > 0.0 {
            lse.push((kappa * v.abs()).powf(q_prime) + w.ln());
        }
    }
    ExpIntegral {
        value: lse.value(),
        log_value: lse.log_value(),
    }
}

// ---------------------------------------------------------------------------
// Sharpness sweeps
// ---------------------------------------------------------------------------

/// One sweep point: family parameter, computed Lorentz norm of the
/// relevant derivative/function, the exponential integral, and the κ used.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub param: f64,
    pub norm: f64,
    pub expint: f64,
    pub log_expint: f64,
    pub beta: f64,
}

/// Least-squares fit of log(expint) against log(1/param).
///
/// `slope` fits the raw integral. `slope_excess` fits log(expint − ν(Ω)):
/// the integrand is ≥ 1 everywhere, so the integral carries an additive
/// ν(Ω) floor that dilutes the fitted power whenever the divergent part
/// has not yet dwarfed it (small growth dimensions at desk scale); the
/// floor-subtracted fit estimates the displayed power directly.
#[derive(Debug, Clone, PartialEq)]
pub struct BlowupFit {
    pub slope: f64,
    pub slope_excess: f64,
    pub predicted: f64,
    pub rel_err: f64,
    pub r_squared: f64,
    pub points_used: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Bounded,
    Blowup,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Bounded => "BOUNDED",
            Verdict::Blowup => "BLOWUP",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub theorem: TheoremId,
    pub family: FamilyKind,
    pub beta_multiple: f64,
    pub records: Vec<SweepRecord>,
    pub fit: Option<BlowupFit>,
    pub verdict: Verdict,
    pub certificates_ok: bool,
}

/// Measure specification for sweeps, so reports can be reproduced from a
/// config line.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureSpec {
    Lebesgue,
    /// Slice {x_axis = 0}; growth dimension n−1.
    Hyperplane,
    /// Radial power density with growth dimension d.
    RadialPower(f64),
    /// Externally supplied measure (e.g. atoms loaded from CSV) with a
    /// declared growth dimension; the certificates still gate its use.
    Custom { measure: RadonMeasure, d: f64 },
}

impl MeasureSpec {
    pub fn growth_dimension(&self, n: usize) -> f64 {
        match self {
            MeasureSpec::Lebesgue => n as f64,
            MeasureSpec::Hyperplane => n as f64 - 1.0,
            MeasureSpec::RadialPower(d) => *d,
            MeasureSpec::Custom { d, .. } => *d,
        }
    }

    pub fn build(&self, domain: &Domain, h: f64) -> Result<RadonMeasure> {
        match self {
            MeasureSpec::Lebesgue => make_lebesgue(domain, h),
            MeasureSpec::Hyperplane => make_hyperplane(domain, h, 0, 0.0),
            MeasureSpec::RadialPower(d) => make_radial_power(domain, h, *d),
            MeasureSpec::Custom { measure, .. } => Ok(measure.clone()),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            MeasureSpec::Lebesgue => "lebesgue",
            MeasureSpec::Hyperplane => "hyperplane",
            MeasureSpec::RadialPower(_) => "radial_power",
            MeasureSpec::Custom { .. } => "custom",
        }
    }
}

/// Predicted blow-up slope d(log expint)/d(log 1/param) at a threshold
/// multiple m: the capacitary and logarithmic-cap computations both give
/// d·(m^{q'} − 1), zero exactly at the sharp threshold.
pub fn predicted_slope(multiple: f64, q_prime: f64, d: f64) -> f64 {
    d * (multiple.powf(q_prime) - 1.0)
}

fn fit_log_log(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    // returns (slope, r²) of y against x
    let n = points.len() as f64;
    if points.len() < 2 {
        return None;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (x, y) in points {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Some((slope, r2))
}

/// Run a sharpness sweep for one theorem/family at a threshold multiple.
///
/// Each family member is normalized by its computed Lorentz norm; the
/// exponential integral runs at κ = multiple × threshold.linear. With
/// failed certificates the verdict is Inconclusive (reported, not fatal).
pub fn sharpness_sweep(
    theorem: TheoremId,
    p: &Params,
    measure: &MeasureSpec,
    beta_multiple: f64,
    family_params: &[f64],
    h: f64,
) -> Result<SweepReport> {
    if !(beta_multiple > 0.0) {
        return Err(Error::Domain("threshold multiple must be positive"));
    }
    let threshold = theorem_threshold(theorem, p)?;
    let kappa = beta_multiple * threshold.linear;
    let q_prime = p.q_prime();
    let (family, radius) = match theorem {
        TheoremId::T1 | TheoremId::Tinf => (FamilyKind::CapacitaryFr, 1.0),
        TheoremId::T1_0 | TheoremId::T1_1 | TheoremId::Tinf1 | TheoremId::Tinf2 => {
            (FamilyKind::LogCapUEps, 2.0)
        }
    };
    let domain = Domain::ball(p.n, radius);
    // atom-based measures are decoupled from the field grid, so sample
    // them finer; the density measure must share the field geometry
    let h_nu = match measure {
        MeasureSpec::Hyperplane => h / 4.0,
        _ => h,
    };
    let nu = measure.build(&domain, h_nu)?;
    let d = measure.growth_dimension(p.n);
    // gate: growth certificate at (d, C'_d) plus non-degeneracy at the
    // family center
    let omega = unit_ball_volume(p.n)?;
    let c_d_prime = match measure {
        MeasureSpec::Lebesgue => omega,
        MeasureSpec::Hyperplane => unit_ball_volume(p.n - 1)?,
        MeasureSpec::RadialPower(_) => 1.5,
        // no declared constant: certify against the observed ratio so the
        // growth side reports numbers while non-degeneracy does the gating
        MeasureSpec::Custom { .. } => f64::INFINITY,
    };
    let growth = certify_growth(&nu, &domain, d, c_d_prime, 48)?;
    let nondeg = certify_nondegeneracy(&nu, &domain, &vec![0.0; p.n], radius / 4.0, d)?;
    let certificates_ok = growth.passed && nondeg.passed;

    let mut records = Vec::with_capacity(family_params.len());
    for &param in family_params {
        let rec = match family {
            FamilyKind::CapacitaryFr => {
                sweep_point_capacitary(p, param, h, &nu, kappa, q_prime)?
            }
            FamilyKind::LogCapUEps => {
                sweep_point_log_cap(p, theorem, param, h, &nu, kappa, q_prime)?
            }
            _ => unreachable!(),
        };
        records.push(rec);
    }
    // fit on the last ≥4 points (5 when available) in log-log coordinates
    let tail = records.len().saturating_sub(5);
    let pts: Vec<(f64, f64)> = records[tail..]
        .iter()
        .map(|r| ((1.0 / r.param).ln(), r.log_expint))
        .collect();
    let floor = nu.total_mass;
    let pts_excess: Vec<(f64, f64)> = records[tail..]
        .iter()
        .filter(|r| r.expint.is_finite() && r.expint > floor * (1.0 + 1e-9))
        .map(|r| ((1.0 / r.param).ln(), (r.expint - floor).ln()))
        .collect();
    let predicted = predicted_slope(beta_multiple, q_prime, d);
    let fit = if pts.len() >= 4 {
        fit_log_log(&pts).map(|(slope, r2)| {
            let slope_excess = if pts_excess.len() == pts.len() {
                fit_log_log(&pts_excess).map(|(s, _)| s).unwrap_or(slope)
            } else {
                slope
            };
            BlowupFit {
                slope,
                slope_excess,
                predicted,
                rel_err: (slope - predicted).abs() / predicted.abs().max(1e-12),
                r_squared: r2,
                points_used: pts.len(),
            }
        })
    } else {
        None
    };
    let exps: Vec<f64> = records.iter().map(|r| r.log_expint).collect();
    let spread = exps.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - exps.iter().cloned().fold(f64::INFINITY, f64::min);
    let verdict = if !certificates_ok {
        Verdict::Inconclusive
    } else if spread.exp() < BOUNDED_RATIO {
        Verdict::Bounded
    } else if fit.as_ref().map_or(false, |f| f.r_squared >= FIT_R2_GATE) {
        Verdict::Blowup
    } else {
        Verdict::Inconclusive
    };
    Ok(SweepReport {
        theorem,
        family,
        beta_multiple,
        records,
        fit,
        verdict,
        certificates_ok,
    })
}

fn sweep_point_capacitary(
    p: &Params,
    r: f64,
    h: f64,
    nu: &RadonMeasure,
    kappa: f64,
    q_prime: f64,
) -> Result<SweepRecord> {
    let fam = capacitary_fr(r, p.alpha, p.n, h)?;
    let dom = Domain::cube(p.n, 1.0);
    let leb = make_lebesgue(&dom, h)?;
    let norm = lorentz_norm_of(&fam.grid, &leb, p.n as f64 / p.alpha, p.q)?;
    // the potential is radial: evaluate the profile once per distinct
    // support radius and push (value, weight) pairs
    let table = SpherePotentialTable::new(p.alpha, p.n)?;
    let pairs = radial_potential_pairs(&table, &fam, nu)?;
    let scaled: Vec<(f64, f64)> = pairs.iter().map(|(v, w)| (v / norm, *w)).collect();
    let e = exp_integral_values(&scaled, kappa, q_prime);
    Ok(SweepRecord {
        param: r,
        norm,
        expint: e.value,
        log_expint: e.log_value,
        beta: kappa,
    })
}

fn sweep_point_log_cap(
    p: &Params,
    theorem: TheoremId,
    eps: f64,
    h: f64,
    nu: &RadonMeasure,
    kappa: f64,
    q_prime: f64,
) -> Result<SweepRecord> {
    let fam = log_cap_u_eps(eps, p.n, h)?;
    let dom = Domain::cube(p.n, 2.0);
    let leb = make_lebesgue(&dom, h)?;
    let deriv = match theorem {
        TheoremId::T1_1 | TheoremId::Tinf2 => crate::potentials::adams_derivative(&fam.grid, p.k)?,
        _ => grad_k(&fam.grid, p.k)?,
    };
    let norm = lorentz_norm_of(&deriv, &leb, p.n as f64 / p.k as f64, p.q)?;
    let mut pairs = Vec::new();
    nu.support_iter().for_each(|x, w| {
        pairs.push((fam.grid.value_at(x) / norm, w));
    });
    let e = exp_integral_values(&pairs, kappa, q_prime);
    Ok(SweepRecord {
        param: eps,
        norm,
        expint: e.value,
        log_expint: e.log_value,
        beta: kappa,
    })
}

/// Radial closed form handed to the potential fast path: the profile, its
/// kink radii, and the support radius.
pub struct RadialSpec<'a> {
    pub profile: &'a dyn Fn(f64) -> f64,
    pub kinks: &'a [f64],
    pub support: f64,
}

impl<'a> RadialSpec<'a> {
    pub fn of_family(fam: &'a crate::testfun::RadialFamily) -> (impl Fn(f64) -> f64 + 'a, &'a [f64], f64) {
        (move |s| fam.radial(s), &fam.kinks, fam.support)
    }
}

/// (I_α f)(x) over the support of ν for a radial family, via the radial
/// quadrature interpolated over a geometric radius grid (the potential of
/// the singular families varies on the scale of the radius itself, so a
/// uniform grid under-resolves the inner region).
fn radial_potential_pairs(
    table: &SpherePotentialTable,
    fam: &crate::testfun::RadialFamily,
    nu: &RadonMeasure,
) -> Result<Vec<(f64, f64)>> {
    let spec = RadialSpec {
        profile: &|s| fam.radial(s),
        kinks: &fam.kinks,
        support: fam.support,
    };
    radial_potential_pairs_spec(table, &spec, nu)
}

/// Same fast path for an arbitrary radial profile.
pub fn radial_potential_pairs_spec(
    table: &SpherePotentialTable,
    spec: &RadialSpec<'_>,
    nu: &RadonMeasure,
) -> Result<Vec<(f64, f64)>> {
    let mut max_rho = 0.0f64;
    let mut min_rho = f64::INFINITY;
    nu.support_iter().for_each(|x, _| {
        let r = crate::grid::norm(x);
        if r > max_rho {
            max_rho = r;
        }
        if r > 0.0 && r < min_rho {
            min_rho = r;
        }
    });
    let lo = (min_rho * 0.5).max(max_rho * 1e-6);
    let ratio = max_rho / lo;
    let m = 1024usize;
    let mut radii: Vec<f64> = Vec::with_capacity(m + 2);
    radii.push(0.0);
    for i in 0..=m {
        radii.push(lo * ratio.powf(i as f64 / m as f64));
    }
    let pots = riesz_radial(table, spec.profile, spec.kinks, spec.support, &radii)?;
    let log_ratio = ratio.ln();
    let mut pairs = Vec::new();
    nu.support_iter().for_each(|x, w| {
        let r = crate::grid::norm(x);
        let v = if r <= lo {
            pots[1] + (pots[0] - pots[1]) * (1.0 - r / lo)
        } else {
            let t = (r / lo).ln() / log_ratio * m as f64;
            let i = (t.floor() as usize).min(m - 1);
            let frac = t - i as f64;
            pots[i + 1] * (1.0 - frac) + pots[i + 2] * frac
        };
        pairs.push((v, w));
    });
    Ok(pairs)
}

// ---------------------------------------------------------------------------
// Hardy inequalities
// ---------------------------------------------------------------------------

/// Nonnegative piecewise-constant function on [0, breakpoints.last]:
/// value `values[i]` on [breakpoints[i-1], breakpoints[i]).
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseFn {
    pub breakpoints: Vec<f64>,
    pub values: Vec<f64>,
}

impl PiecewiseFn {
    pub fn eval(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        let mut left = 0.0;
        for (i, &b) in self.breakpoints.iter().enumerate() {
            if t >= left && t < b {
                return self.values[i];
            }
            left = b;
        }
        0.0
    }

    pub fn support_end(&self) -> f64 {
        self.breakpoints.last().copied().unwrap_or(0.0)
    }

    /// ∫₀ᵗ ψ(s) ds, exact.
    pub fn integral_to(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        let mut left = 0.0;
        for (i, &b) in self.breakpoints.iter().enumerate() {
            if t <= left {
                break;
            }
            acc += self.values[i] * (t.min(b) - left);
            left = b;
        }
        acc
    }

    /// ∫ₜ^∞ ψ(s) ds, exact.
    pub fn integral_from(&self, t: f64) -> f64 {
        self.integral_to(self.support_end()) - self.integral_to(t.min(self.support_end()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardyReport {
    pub lhs: f64,
    pub rhs_bound: f64,
    pub passed: bool,
    pub skipped: bool,
}

/// Classical Hardy inequality:
/// ∫₀^∞ t^{−w} (∫₀ᵗ ψ)ᵖ dt ≤ (p/(w−1))ᵖ ∫₀^∞ t^{−w} (tψ(t))ᵖ dt,
/// p > 1, w > 1. Divergent right side (w ≥ p+1 with ψ active at 0) is a
/// skip, not a failure.
pub fn hardy_classical_check(psi: &PiecewiseFn, p: f64, w: f64) -> Result<HardyReport> {
    if !(p > 1.0 && w > 1.0) {
        return Err(Error::Domain("hardy requires p > 1, w > 1"));
    }
    let support = psi.support_end();
    if support <= 0.0 {
        return Ok(HardyReport {
            lhs: 0.0,
            rhs_bound: 0.0,
            passed: true,
            skipped: false,
        });
    }
    // RHS: Σ ψ_iᵖ ∫ t^{p−w} dt per piece, exact power integrals
    let e = p - w + 1.0;
    if e <= 0.0 && psi.values.first().map_or(false, |v| *v > 0.0) {
        return Ok(HardyReport {
            lhs: f64::INFINITY,
            rhs_bound: f64::INFINITY,
            passed: true,
            skipped: true,
        });
    }
    let mut rhs = 0.0;
    let mut left: f64 = 0.0;
    for (i, &b) in psi.breakpoints.iter().enumerate() {
        let v = psi.values[i];
        if v > 0.0 {
            rhs += v.powf(p)
                * if e == 0.0 {
                    (b / left.max(1e-300)).ln()
                } else {
                    (b.powf(e) - left.powf(e)) / e
                };
        }
        left = b;
    }
    let constant = (p / (w - 1.0)).powf(p);
    // LHS: Ψ(t) = ∫₀ᵗψ is piecewise linear; Gauss panels per piece plus
    // the exact tail beyond the support where Ψ is constant
    let gl = GaussLegendre::new(16);
    let mut breaks = vec![0.0];
    breaks.extend_from_slice(&psi.breakpoints);
    let mut lhs = 0.0;
    for win in breaks.windows(2) {
        // t^{-w} is singular only toward 0; grade the first panel
        let sub = graded_breaks(win[0], win[1], &[0.0], 40, (win[1] - win[0]) / 4.0);
        lhs += integrate_panels(&gl, &sub, |t| {
            let ps = psi.integral_to(t);
            if ps == 0.0 {
                0.0
            } else {
                t.powf(-w) * ps.powf(p)
            }
        });
    }
    let psi_total = psi.integral_to(support);
    lhs += psi_total.powf(p) * support.powf(1.0 - w) / (w - 1.0);
    Ok(HardyReport {
        lhs,
        rhs_bound: constant * rhs,
        passed: lhs <= constant * rhs * (1.0 + 1e-6) + 1e-300,
        skipped: false,
    })
}

/// Logarithmic Hardy inequality:
/// ∫₀^R (∫ₜ^R ψ)ᵖ / (1+|log(t/R)|)ᵖ dt/t ≤ (p/(p−1))ᵖ ∫₀^R t^{p−1} ψᵖ dt.
pub fn hardy_log_check(psi: &PiecewiseFn, p: f64, r_outer: f64) -> Result<HardyReport> {
    if !(p > 1.0 && r_outer > 0.0) {
        return Err(Error::Domain("log hardy requires p > 1, R > 0"));
    }
    // RHS: exact power integrals of t^{p-1} ψ(t)^p over [0, R]
    let mut rhs = 0.0;
    let mut left = 0.0f64;
    for (i, &b) in psi.breakpoints.iter().enumerate() {
        let hi = b.min(r_outer);
        if hi <= left {
            break;
        }
        let v = psi.values[i];
        if v > 0.0 {
            rhs += v.powf(p) * (hi.powf(p) - left.powf(p)) / p;
        }
        left = b;
    }
    let constant = (p / (p - 1.0)).powf(p);
    // LHS via u = log(R/t): ∫₀^∞ G(u)ᵖ/(1+u)ᵖ du with G(u) = ∫_{Re^{-u}}^R ψ
    let gl = GaussLegendre::new(16);
    let tail = |u0: f64, g: f64| g.powf(p) * (1.0 + u0).powf(1.0 - p) / (p - 1.0);
    let u_max = 40.0f64;
    let breaks = graded_breaks(0.0, u_max, &[0.0], 20, 0.5);
    let mut lhs = integrate_panels(&gl, &breaks, |u| {
        let t = r_outer * (-u).exp();
        let g = psi.integral_from(t) - psi.integral_from(r_outer);
        if g <= 0.0 {
            0.0
        } else {
            (g / (1.0 + u)).powf(p)
        }
    });
    // beyond u_max the inner integral is the full mass below R
    let g_full = psi.integral_from(r_outer * (-u_max).exp()) - psi.integral_from(r_outer);
    if g_full > 0.0 {
        lhs += tail(u_max, g_full);
    }
    Ok(HardyReport {
        lhs,
        rhs_bound: constant * rhs,
        passed: lhs <= constant * rhs * (1.0 + 1e-6) + 1e-300,
        skipped: false,
    })
}

/// Deterministic random suite of piecewise-constant ψ for the Hardy checks.
pub fn random_psi_suite(seed: u64, count: usize) -> Vec<PiecewiseFn> {
    use rand::Rng;
    let mut rng = crate::seeded_rng(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let pieces = rng.gen_range(3..12usize);
        let mut breaks: Vec<f64> = (0..pieces).map(|_| rng.gen_range(0.01..2.0)).collect();
        breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
        breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        let values: Vec<f64> = (0..breaks.len())
            .map(|_| {
                if rng.gen_range(0.0..1.0) < 0.2 {
                    0.0
                } else {
                    rng.gen_range(0.0..3.0)
                }
            })
            .collect();
        out.push(PiecewiseFn {
            breakpoints: breaks,
            values,
        });
    }
    out
}

// ---------------------------------------------------------------------------
// One-dimensional exponential lemma
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct AdamsMoserReport {
    pub b: f64,
    pub integral: f64,
    pub cap: f64,
    pub passed: bool,
}

/// Check the one-dimensional exponential lemma: for a kernel a(s,t) ≤ 1
/// below the diagonal with b = sup_t (∫ₜ^∞ a^{q'} ds)^{1/q'} < ∞ and
/// ∫ φ^q ≤ 1, the integral ∫₀^∞ e^{−F(t)} dt with
/// F(t) = t − (∫ a(s,t) φ(s) ds)^{q'} is finite. The admissible value is
/// recorded against a frozen calibration cap keyed by (q, b).
pub fn adams_moser_check<A, P>(
    a_kernel: A,
    phi: P,
    q: f64,
    s_max: f64,
    cap: f64,
) -> Result<AdamsMoserReport>
where
    A: Fn(f64, f64) -> f64,
    P: Fn(f64) -> f64,
{
    if !(q > 1.0) {
        return Err(Error::Domain("exponential lemma requires q > 1"));
    }
    let q_prime = q / (q - 1.0);
    let gl = GaussLegendre::new(16);
    // b by quadrature over a t-grid; the kernels in scope decay beyond
    // s_max so the truncated integral is the whole thing
    let mut b_pow = 0.0f64;
    for i in 0..=32 {
        let t = s_max * i as f64 / 32.0;
        let breaks = graded_breaks(t, t + s_max, &[t], 20, s_max / 16.0);
        let integral = integrate_panels(&gl, &breaks, |s| a_kernel(s, t).powf(q_prime));
        if integral > b_pow {
            b_pow = integral;
        }
    }
    let b = b_pow.powf(1.0 / q_prime);
    if !b.is_finite() {
        return Err(Error::Quadrature("exponential lemma b diverged", b));
    }
    // ∫ e^{-F(t)} dt, truncated once the envelope t − b^{q'}·‖φ‖-ish decays
    let t_max = 20.0 + 4.0 * s_max + 4.0 * b_pow;
    let breaks = graded_breaks(0.0, t_max, &[0.0], 10, 0.25);
    let integral = integrate_panels(&gl, &breaks, |t| {
        let inner_breaks = graded_breaks(0.0, t + s_max, &[t], 24, s_max / 16.0);
        let inner = integrate_panels(&gl, &inner_breaks, |s| a_kernel(s, t) * phi(s));
        (-(t - inner.max(0.0).powf(q_prime))).exp()
    });
    // tail bound: beyond t_max the kernel mass is exhausted, F(t) ≥ t − b_pow·c
    let tail = (-(t_max - b_pow - s_max)).exp();
    let total = integral + tail;
    Ok(AdamsMoserReport {
        b,
        integral: total,
        cap,
        passed: total <= cap,
    })
}

// ---------------------------------------------------------------------------
// Trace Hansson–Brezis–Wainger
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct HbwReport {
    pub lhs: f64,
    pub rhs_norm: f64,
    pub ratio: f64,
    pub i1: f64,
    pub i2: f64,
    pub triangle_ok: bool,
    pub pointwise_ok: bool,
    pub worst_pointwise_ratio: f64,
}

/// Log-weighted functional (∫₀^M [p(t)/(1+|log(t/M)|)]^q dt/t)^{1/q} for a
/// step profile; each piece integrates in closed form.
pub fn log_weighted_norm(prof: &StepProfile, m: f64, q: f64) -> f64 {
    let mut acc = 0.0;
    let mut left = 0.0f64;
    for (i, v) in prof.values.iter().enumerate() {
        let right = prof.breakpoints[i].min(m);
        if right <= left {
            break;
        }
        if *v > 0.0 {
            // ∫ (1+log(M/t))^{-q} dt/t = [(1+log(M/t))^{1-q}]/(q-1)
            let wa = if left == 0.0 {
                0.0
            } else {
                (1.0 + (m / left).ln()).powf(1.0 - q)
            };
            let wb = (1.0 + (m / right).ln()).powf(1.0 - q);
            acc += v.powf(q) * (wb - wa) / (q - 1.0);
        }
        left = prof.breakpoints[i];
        if left >= m {
            break;
        }
    }
    acc.powf(1.0 / q)
}

/// Trace HBW check: computes
///   LHS = (∫₀^{ν(Ω)} [(I_αf)*_ν(t)/(1+|log(t/ν(Ω))|)]^q dt/t)^{1/q},
///   RHS = ‖f‖_{L^{n/α,q}} (Lebesgue),
/// plus the two-term split I₁ + I₂ at τ = t^{n/d} with the frozen first
/// constant, asserting both the integral triangle bound and the pointwise
/// two-term domination of (I_αf)** on a t-grid.
#[allow(clippy::too_many_arguments)]
pub fn hbw_trace_check(
    f: &GridFunction,
    fam_radial: Option<&RadialSpec<'_>>,
    nu: &RadonMeasure,
    lebesgue: &RadonMeasure,
    p: &Params,
    r_exp: f64,
    cal: &Calibration,
    oneil_key: &str,
) -> Result<HbwReport> {
    let q = match p.q {
        QExp::Finite(q) => q,
        QExp::Infinity => return Err(Error::Domain("trace HBW requires finite q")),
    };
    let d = p.d;
    let n = p.n as f64;
    let alpha = p.alpha;
    let mass = nu.total_mass;
    if !(mass > 0.0) {
        return Err(Error::Domain("measure must have positive mass"));
    }
    let c_frozen = cal
        .get(oneil_key)
        .ok_or(Error::Domain("missing calibration entry for the first term"))?;
    let theta = r_exp * d / (n - alpha * r_exp);
    // LHS profile: potential at the ν-support
    let pot_pairs: Vec<(f64, f64)> = if let Some(spec) = fam_radial {
        let table = SpherePotentialTable::new(alpha, p.n)?;
        radial_potential_pairs_spec(&table, spec, nu)?
    } else {
        let mut targets = Vec::new();
        nu.support_iter().for_each(|x, _| targets.push(x.to_vec()));
        let pot = crate::potentials::riesz_potential(f, alpha, &targets)?;
        let mut pairs = Vec::with_capacity(targets.len());
        let mut i = 0;
        nu.support_iter().for_each(|_, w| {
            pairs.push((pot[i], w));
            i += 1;
        });
        pairs
    };
    let prof = StepProfile::from_weighted_values(&pot_pairs);
    let lhs = log_weighted_norm(&prof, mass, q);
    let rhs_norm = lorentz_norm_of(f, lebesgue, n / alpha, p.q)?;
    // two-term split: G₁(τ) = ∫₀^τ f* u^{-1+1/r} du, G₂(τ) = ∫_τ^{|Ω|} f* u^{α/n-1} du
    let fstar = rearrange(f, lebesgue)?;
    let leb_mass = lebesgue.total_mass;
    let gamma = riesz_gamma(alpha, p.n)?;
    let omega = unit_ball_volume(p.n)?;
    let second_c = omega.powf((n - alpha) / n) / gamma;
    let term1 = |t: f64| {
        let tau = t.powf(n / d);
        c_frozen * t.powf(-1.0 / theta) * fstar.power_integral(tau.min(leb_mass), 1.0 / r_exp, 0.0)
    };
    let term2 = |t: f64| {
        let tau = t.powf(n / d);
        second_c * fstar.power_integral(leb_mass, alpha / n, tau.min(leb_mass))
    };
    // pointwise domination of (I_αf)** on a 32-point log grid
    let mut pointwise_ok = true;
    let mut worst = 0.0f64;
    for i in 0..32 {
        let t = mass * (1e-4f64).powf(1.0 - i as f64 / 31.0);
        let lhs_pt = double_star(&prof, t)?;
        let rhs_pt = term1(t) + term2(t);
        let ratio = lhs_pt / rhs_pt.max(1e-300);
        if ratio > worst {
            worst = ratio;
        }
        if lhs_pt > rhs_pt * (1.0 + 1e-9) {
            pointwise_ok = false;
        }
    }
    // integral triangle bound: the log-weighted norm of each term over the
    // same grid, assembled by panel quadrature
    let gl = GaussLegendre::new(16);
    let breaks = graded_breaks(mass * 1e-6, mass, &[0.0], 30, mass / 16.0);
    let weighted = |g: &dyn Fn(f64) -> f64| {
        integrate_panels(&gl, &breaks, |t| {
            let w = 1.0 + (mass / t).ln();
            (g(t) / w).powf(q) / t
        })
        .powf(1.0 / q)
    };
    let i1 = weighted(&term1);
    let i2 = weighted(&term2);
    let triangle_ok = lhs <= (i1 + i2) * (1.0 + 1e-6);
    Ok(HbwReport {
        lhs,
        rhs_norm,
        ratio: lhs / rhs_norm.max(1e-300),
        i1,
        i2,
        triangle_ok,
        pointwise_ok,
        worst_pointwise_ratio: worst,
    })
}

/// Sobolev-side HBW check: LHS with u*_ν against ‖∇ᵏu‖ (or ‖Dᵏu‖) on the
/// Lebesgue side. Routes through the representation composition: finite
/// ratio expected, no absolute constant asserted.
pub fn hbw_sobolev_check(
    u: &GridFunction,
    nu: &RadonMeasure,
    lebesgue: &RadonMeasure,
    p: &Params,
    use_adams: bool,
) -> Result<HbwReport> {
    let q = match p.q {
        QExp::Finite(q) => q,
        QExp::Infinity => return Err(Error::Domain("trace HBW requires finite q")),
    };
    let mass = nu.total_mass;
    if !(mass > 0.0) {
        return Err(Error::Domain("measure must have positive mass"));
    }
    let prof = rearrange(u, nu)?;
    let lhs = log_weighted_norm(&prof, mass, q);
    let deriv = if use_adams {
        crate::potentials::adams_derivative(u, p.k)?
    } else {
        grad_k(u, p.k)?
    };
    let rhs_norm = lorentz_norm_of(&deriv, lebesgue, p.n as f64 / p.k as f64, p.q)?;
    Ok(HbwReport {
        lhs,
        rhs_norm,
        ratio: lhs / rhs_norm.max(1e-300),
        i1: 0.0,
        i2: 0.0,
        triangle_ok: true,
        pointwise_ok: true,
        worst_pointwise_ratio: 0.0,
    })
}

// ---------------------------------------------------------------------------
// Weak-endpoint divergence experiments
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct EndpointReport {
    pub theorem: TheoremId,
    pub gamma_multiple: f64,
    pub expints: Vec<(f64, f64)>, // (h, expint)
    pub monotone: bool,
    pub growth_factor: f64,
    pub divergent: bool,
    pub bounded: bool,
    pub detail: String,
}

/// Probe the weak-endpoint statements over shrinking grids. At a multiple
/// of the endpoint the exponential integral is computed on each grid; the
/// report records monotone growth, the total growth factor, and the two
/// proxy verdicts (≥ 10× growth / max-min ratio < 3).
///
/// Families are normalized by the closed-form weak-norm bounds: the grid
/// sup of a singular profile overshoots its continuum weak norm by an
/// h-independent staircase factor, which would silently re-scale the
/// exponent being tested.
pub fn weak_endpoint_divergence(
    theorem: TheoremId,
    p: &Params,
    measure: &MeasureSpec,
    gamma_multiple: f64,
    grids: &[f64],
) -> Result<EndpointReport> {
    if !theorem.is_weak_endpoint() {
        return Err(Error::Domain("endpoint check requires a weak-endpoint theorem"));
    }
    let threshold = theorem_threshold(theorem, p)?;
    let gamma = gamma_multiple * threshold.linear;
    let domain = Domain::ball(p.n, 1.0);
    let d = measure.growth_dimension(p.n);
    let mut expints = Vec::with_capacity(grids.len());
    let cal = Calibration::frozen();
    for &h in grids {
        let nu = measure.build(&domain, h)?;
        // non-degeneracy at the family center gates the claim
        let nondeg = certify_nondegeneracy(&nu, &domain, &vec![0.0; p.n], 0.25, d)?;
        if !nondeg.passed {
            return Err(Error::Domain("measure is degenerate at the family center"));
        }
        let value = match theorem {
            TheoremId::Tinf => {
                let fam = weak_endpoint_f(p.alpha, p.n, h)?;
                let bound = weak_endpoint_norm_bound(p.alpha, p.n)?;
                let table = SpherePotentialTable::new(p.alpha, p.n)?;
                let pairs = radial_potential_pairs(&table, &fam, &nu)?;
                let scaled: Vec<(f64, f64)> =
                    pairs.iter().map(|(v, w)| (v / bound, *w)).collect();
                exp_integral_values(&scaled, gamma, 1.0)
            }
            TheoremId::Tinf1 | TheoremId::Tinf2 => {
                // Alberico family at a fixed large parameter; the grid
                // refinement resolves the divergent inner ball
                let a = 50.0f64;
                let fam = crate::testfun::alberico_ua(a, p.n, h)?;
                let c = cal.get("alberico_c.n2.k1").unwrap_or(2.0);
                let bound = if theorem == TheoremId::Tinf1 {
                    crate::testfun::alberico_weak_norm_bound(a, p.n, p.k, c)?
                } else {
                    // Dᵏ variant: same shape with the parity constant
                    let parity = if p.k % 2 == 0 {
                        riesz_gamma(p.k as f64, p.n)?
                    } else {
                        crate::constants::riesz_gamma_tilde(p.k as f64 - 1.0, p.n)?
                    };
                    let la = a.ln();
                    parity / (p.n as f64 * unit_ball_volume(p.n)?.powf(1.0 - p.k as f64 / p.n as f64))
                        / la
                        * (1.0 + c / (la * la))
                };
                let mut pairs = Vec::new();
                nu.support_iter().for_each(|x, w| {
                    pairs.push((fam.grid.value_at(x) / bound, w));
                });
                exp_integral_values(&pairs, gamma, 1.0)
            }
            _ => unreachable!(),
        };
        expints.push((h, value.value));
    }
    let mut monotone = true;
    for w in expints.windows(2) {
        if w[1].1 <= w[0].1 {
            monotone = false;
        }
    }
    let first = expints.first().map(|p| p.1).unwrap_or(0.0);
    let last = expints.last().map(|p| p.1).unwrap_or(0.0);
    let growth_factor = last / first.max(1e-300);
    let vals: Vec<f64> = expints.iter().map(|p| p.1).collect();
    let ratio = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        / vals.iter().cloned().fold(f64::INFINITY, f64::min).max(1e-300);
    Ok(EndpointReport {
        theorem,
        gamma_multiple,
        expints,
        monotone,
        growth_factor,
        divergent: monotone && growth_factor >= DIVERGENT_GROWTH,
        bounded: ratio < BOUNDED_RATIO,
        detail: format!("growth {growth_factor:.3}x over {} grids", vals.len()),
    })
}
