//! The extremal test-function families: the capacitary annulus family f_r,
//! a concrete logarithmic-cap family u_ε, the Alberico family u_a, and the
//! weak-endpoint kernel power f. All are radial; each carries its sampled
//! grid, its exact radial profile, and the closed-form norm bounds the
//! sharpness arguments lean on.

use crate::constants::{ell_combinatorial_f64, unit_ball_volume, QExp};
use crate::grid::{norm, BoundingBox, GridFunction};
use crate::rearrangement::StepProfile;
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;
// needed for the pure no_std build; std builds resolve these inherently
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    CapacitaryFr,
    LogCapUEps,
    AlbericoUa,
    WeakEndpointF,
}

impl FamilyKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyKind::CapacitaryFr => "capacitary_fr",
            FamilyKind::LogCapUEps => "log_cap_u_eps",
            FamilyKind::AlbericoUa => "alberico_ua",
            FamilyKind::WeakEndpointF => "weak_endpoint_f",
        }
    }
}

/// Radial closed form behind a sampled family member.
#[derive(Debug, Clone, PartialEq)]
enum Profile {
    Capacitary { r: f64, alpha: f64, coeff: f64 },
    LogCap { eps: f64 },
    Alberico { a: f64 },
    WeakEndpoint { alpha: f64, coeff: f64 },
    Indicator { r: f64 },
}

/// One member of a radial test family: the sampled grid plus the exact
/// radial profile it was sampled from.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFamily {
    pub kind: FamilyKind,
    pub param: f64,
    pub grid: GridFunction,
    /// Outer radius of the support.
    pub support: f64,
    /// Radii where the profile has kinks (quadrature panels honor these).
    pub kinks: Vec<f64>,
    profile: Profile,
}

impl RadialFamily {
    /// Exact radial profile value at radius s.
    pub fn radial(&self, s: f64) -> f64 {
        match &self.profile {
            Profile::Capacitary { r, alpha, coeff } => {
                if s > *r && s < 1.0 {
                    coeff * s.powf(-alpha)
                } else {
                    0.0
                }
            }
            Profile::LogCap { eps } => log_cap_radial(*eps, s),
            Profile::Alberico { a } => {
                if s < 1.0 && s > 0.0 {
                    phi((1.0 / s).ln() / a.ln())
                } else {
                    0.0
                }
            }
            Profile::WeakEndpoint { alpha, coeff } => {
                if s < 1.0 && s > 0.0 {
                    coeff * s.powf(-alpha)
                } else {
                    0.0
                }
            }
            Profile::Indicator { r } => {
                if s < *r {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

/// Capacitary family f_r(x) = |x|^{−α} / (nω_n log(1/r)) on r < |x| < 1.
pub fn capacitary_fr(r: f64, alpha: f64, n: usize, h: f64) -> Result<RadialFamily> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain("capacitary radius must lie in (0, 1)"));
    }
    if h > r / 4.0 {
        return Err(Error::Grid("grid too coarse for the inner radius"));
    }
    let coeff = 1.0 / (n as f64 * unit_ball_volume(n)? * (1.0 / r).ln());
    let profile = Profile::Capacitary { r, alpha, coeff };
    let grid = GridFunction::from_fn(BoundingBox::centered_cube(n, 1.0), h, |x| {
        let s = norm(x);
        if s > r && s < 1.0 {
            coeff * s.powf(-alpha)
        } else {
            0.0
        }
    })?;
    Ok(RadialFamily {
        kind: FamilyKind::CapacitaryFr,
        param: r,
        grid,
        support: 1.0,
        kinks: vec![r, 1.0],
        profile,
    })
}

/// Closed-form Lebesgue rearrangement of f_r:
/// f_r*(s) = (1/(nω_n log(1/r))) (s ω_n^{−1} + rⁿ)^{−α/n} for
/// s < ω_n(1 − rⁿ), else 0.
pub fn capacitary_rearrangement(r: f64, alpha: f64, n: usize, s: f64) -> Result<f64> {
    let omega = unit_ball_volume(n)?;
    if s >= omega * (1.0 - r.powi(n as i32)) {
        return Ok(0.0);
    }
    Ok(
        (s / omega + r.powi(n as i32)).powf(-alpha / n as f64)
            / (n as f64 * omega * (1.0 / r).ln()),
    )
}

/// ‖f_r‖^q_{L^{n/α,q}} upper bound
/// n^{1−q} ω^{(α−n)q/n} (1+δ)^{q/q'} (log 1/r)^{1−q}.
pub fn capacitary_norm_bound_pow_q(
    r: f64,
    alpha: f64,
    n: usize,
    q: f64,
    delta: f64,
) -> Result<f64> {
    let omega = unit_ball_volume(n)?;
    let qp = q / (q - 1.0);
    Ok((n as f64).powf(1.0 - q)
        * omega.powf((alpha - n as f64) * q / n as f64)
        * (1.0 + delta).powf(q / qp)
        * (1.0 / r).ln().powf(1.0 - q))
}

// C⁴ smoothstep on [0, 1] (vanishing first four derivatives at both ends).
fn smoothstep_c4(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let t4 = t * t * t * t;
        t4 * t * (126.0 + t * (-420.0 + t * (540.0 + t * (-315.0 + t * 70.0))))
    }
}

/// Radial profile of the logarithmic-cap family:
///   log(1/s) on [ε, 1];
///   the C² even cap log(1/ε) + 3/4 − (s/ε)² + (s/ε)⁴/4 on [0, ε);
///   log(1/s)·S(2−s) on (1, 2) with S the C⁴ smoothstep; 0 beyond 2.
pub fn log_cap_radial(eps: f64, s: f64) -> f64 {
    if s >= 2.0 {
        0.0
    } else if s > 1.0 {
        (1.0 / s).ln() * smoothstep_c4(2.0 - s)
    } else if s >= eps {
        (1.0 / s).ln()
    } else {
        let t2 = (s / eps) * (s / eps);
        (1.0 / eps).ln() + 0.75 - t2 + 0.25 * t2 * t2
    }
}

/// Logarithmic-cap family u_ε with support in B₂; equals log(1/|x|) on
/// B₁ \ B_ε, capped smoothly inside B_ε, blended to zero on B₂ \ B₁.
pub fn log_cap_u_eps(eps: f64, n: usize, h: f64) -> Result<RadialFamily> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::Domain("cap radius must lie in (0, 1/2)"));
    }
    if eps < 4.0 * h {
        return Err(Error::Grid("grid too coarse for the cap radius"));
    }
    let grid = GridFunction::from_fn(BoundingBox::centered_cube(n, 2.0), h, |x| {
        log_cap_radial(eps, norm(x))
    })?;
    Ok(RadialFamily {
        kind: FamilyKind::LogCapUEps,
        param: eps,
        grid,
        support: 2.0,
        kinks: vec![eps, 1.0, 2.0],
        profile: Profile::LogCap { eps },
    })
}

/// Lorentz-norm bound for the cap family gradient:
/// ‖∇ᵏu_ε‖_{L^{n/k,q}(B₂)} ≤ (1+δ)^{1/q'} n^{1/q} ω^{k/n} √ℓᵏₙ
/// (log(1/(mε)))^{1/q}. Holds for ε below a (δ, m)-dependent threshold.
pub fn log_cap_norm_bound(eps: f64, n: usize, k: usize, q: f64, delta: f64, m: f64) -> Result<f64> {
    let omega = unit_ball_volume(n)?;
    let ell = ell_combinatorial_f64(k, n)?;
    let qp = q / (q - 1.0);
    Ok((1.0 + delta).powf(1.0 / qp)
        * (n as f64).powf(1.0 / q)
        * omega.powf(k as f64 / n as f64)
        * ell.sqrt()
        * (1.0 / (m * eps)).ln().powf(1.0 / q))
}

/// φ(t) = ∫₀ᵗ σ, σ the quintic smoothstep: 0 for t ≤ 0, t − 1/2 for t ≥ 1,
/// t⁴(t² − 3t + 5/2) in between; increasing with |φ'| ≤ 1.
pub fn phi(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        t - 0.5
    } else {
        let t4 = t * t * t * t;
        t4 * (t * t - 3.0 * t + 2.5)
    }
}

/// φ' = σ, the quintic smoothstep itself.
pub fn phi_prime(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        t * t * t * (10.0 + t * (-15.0 + 6.0 * t))
    }
}

/// Alberico family u_a(x) = φ(log(1/|x|)/log a) on the unit ball, a > e.
pub fn alberico_ua(a: f64, n: usize, h: f64) -> Result<RadialFamily> {
    if a <= core::f64::consts::E {
        return Err(Error::Domain("alberico parameter must exceed e"));
    }
    let grid = GridFunction::from_fn(BoundingBox::centered_cube(n, 1.0), h, |x| {
        let s = norm(x);
        if s < 1.0 && s > 0.0 {
            phi((1.0 / s).ln() / a.ln())
        } else {
            0.0
        }
    })?;
    Ok(RadialFamily {
        kind: FamilyKind::AlbericoUa,
        param: a,
        grid,
        support: 1.0,
        kinks: vec![1.0 / a, 1.0],
        profile: Profile::Alberico { a },
    })
}

/// Weak-norm bound for the Alberico gradient:
/// ‖∇ᵏu_a‖_{L^{n/k,∞}(B)} ≤ (ω^{k/n}√ℓᵏₙ/log a)(1 + C/(log a)²), with the
/// calibration constant C measured once and frozen.
pub fn alberico_weak_norm_bound(a: f64, n: usize, k: usize, c_frozen: f64) -> Result<f64> {
    let omega = unit_ball_volume(n)?;
    let ell = ell_combinatorial_f64(k, n)?;
    let la = a.ln();
    Ok(omega.powf(k as f64 / n as f64) * ell.sqrt() / la * (1.0 + c_frozen / (la * la)))
}

/// Weak-endpoint family f(x) = χ_B(x) |x|^{−α} / (nω_n).
pub fn weak_endpoint_f(alpha: f64, n: usize, h: f64) -> Result<RadialFamily> {
    let coeff = 1.0 / (n as f64 * unit_ball_volume(n)?);
    let grid = GridFunction::from_fn(BoundingBox::centered_cube(n, 1.0), h, |x| {
        let s = norm(x);
        if s < 1.0 && s > 0.0 {
            coeff * s.powf(-alpha)
        } else {
            0.0
        }
    })?;
    Ok(RadialFamily {
        kind: FamilyKind::WeakEndpointF,
        param: alpha,
        grid,
        support: 1.0,
        kinks: vec![1.0],
        profile: Profile::WeakEndpoint { alpha, coeff },
    })
}

/// Companion closed-form weak norm bound ‖f‖_{L^{n/α,∞}(B)} ≤ ω^{α/n−1}/n,
/// attained on the unit ball.
pub fn weak_endpoint_norm_bound(alpha: f64, n: usize) -> Result<f64> {
    Ok(unit_ball_volume(n)?.powf(alpha / n as f64 - 1.0) / n as f64)
}

/// Plain ball indicator χ_{B(0,r)} wrapped as a radial family; handy as a
/// reference input for the trace checks.
pub fn indicator_family(r: f64, n: usize, h: f64) -> Result<RadialFamily> {
    if !(r > 0.0) {
        return Err(Error::Domain("indicator radius must be positive"));
    }
    let grid = GridFunction::from_fn(BoundingBox::centered_cube(n, r.max(1.0)), h, |x| {
        if norm(x) < r {
            1.0
        } else {
            0.0
        }
    })?;
    Ok(RadialFamily {
        kind: FamilyKind::WeakEndpointF,
        param: r,
        grid,
        support: r,
        kinks: vec![r],
        profile: Profile::Indicator { r },
    })
}

/// Exact rearrangement of a radial function on the shell s ∈ (s_lo, s_hi):
/// shell-resolved, so singular radial profiles avoid the cell-staircase
/// inflation a grid sample would produce. Shells are geometric in s.
pub fn rearrange_radial<F: Fn(f64) -> f64>(
    g: F,
    s_lo: f64,
    s_hi: f64,
    n: usize,
    shells: usize,
) -> Result<StepProfile> {
    if !(s_lo > 0.0 && s_lo < s_hi) {
        return Err(Error::Domain("radial range must satisfy 0 < s_lo < s_hi"));
    }
    let omega = unit_ball_volume(n)?;
    let ratio = (s_hi / s_lo).powf(1.0 / shells as f64);
    let mut pairs = Vec::with_capacity(shells);
    let mut left = s_lo;
    for _ in 0..shells {
        let right = left * ratio;
        let mid = (left * right).sqrt();
        let weight = omega * (right.powi(n as i32) - left.powi(n as i32));
        pairs.push((g(mid), weight));
        left = right;
    }
    Ok(StepProfile::from_weighted_values(&pairs))
}

/// Continuum-resolved Lorentz norm of a radial function via shell
/// rearrangement.
pub fn radial_lorentz_norm<F: Fn(f64) -> f64>(
    g: F,
    s_lo: f64,
    s_hi: f64,
    n: usize,
    p_exp: f64,
    q_exp: QExp,
    shells: usize,
) -> Result<f64> {
    let prof = rearrange_radial(g, s_lo, s_hi, n, shells)?;
    let m = unit_ball_volume(n)? * s_hi.powi(n as i32);
    crate::rearrangement::lorentz_norm(&prof, p_exp, q_exp, m)
}
