//! Distribution functions, non-increasing rearrangements with respect to an
//! arbitrary finite measure, running averages, and Lorentz quasi-norms.
//!
//! The rearrangement is exact on the discrete representation: cell values
//! are sorted, breakpoints sit at cumulative ν-masses, and equal adjacent
//! values coalesce. Continuum comparisons inherit the O(h) grid error of
//! whatever was sampled; the profile arithmetic itself is exact piecewise
//! power integration.

use crate::grid::GridFunction;
use crate::measures::{MeasureData, RadonMeasure};
use crate::quad::pairwise_sum;
use crate::{Error, Result};
use alloc::vec::Vec;
// needed for the pure no_std build; std builds resolve these inherently
#[allow(unused_imports)]
use num_traits::Float;

/// Right-continuous non-increasing step function on [0, support_end).
///
/// Value is `values[i]` on [breakpoints[i-1], breakpoints[i]) with an
/// implicit breakpoint t₀ = 0, and 0 beyond the support.
#[derive(Debug, Clone, PartialEq)]
pub struct StepProfile {
    pub breakpoints: Vec<f64>,
    pub values: Vec<f64>,
}

impl StepProfile {
    /// Build from (value, weight) pairs: sort |value| descending (ties by
    /// insertion index), accumulate weights into breakpoints, coalesce
    /// equal adjacent values.
    pub fn from_weighted_values(pairs: &[(f64, f64)]) -> Self {
        let mut order: Vec<usize> = (0..pairs.len()).filter(|&i| pairs[i].1 > 0.0).collect();
        order.sort_by(|&a, &b| {
            let va = pairs[a].0.abs();
            let vb = pairs[b].0.abs();
            vb.partial_cmp(&va).unwrap().then(a.cmp(&b))
        });
        let mut breakpoints = Vec::new();
        let mut values = Vec::new();
        let mut cum = 0.0;
        for &i in &order {
            let v = pairs[i].0.abs();
            cum += pairs[i].1;
            if v == 0.0 {
                break; // zero tail carries no information
            }
            if values.last() == Some(&v) {
                *breakpoints.last_mut().unwrap() = cum;
            } else {
                breakpoints.push(cum);
                values.push(v);
            }
        }
        StepProfile {
            breakpoints,
            values,
        }
    }

    /// Sample a non-increasing function g on (0, M) into a profile with
    /// geometrically spaced breakpoints. The value on [t_i, t_{i+1}) is
    /// g(t_i); below t_min the profile is truncated at g(t_min), so an
    /// integrable singularity at 0 contributes at most g(t_min)·t_min.
    pub fn from_decreasing_fn<F: Fn(f64) -> f64>(g: F, m: f64, pieces: usize, t_min: f64) -> Self {
        let mut breakpoints = Vec::with_capacity(pieces + 1);
        let mut values = Vec::with_capacity(pieces + 1);
        let ratio = (m / t_min).powf(1.0 / pieces as f64);
        breakpoints.push(t_min);
        values.push(g(t_min));
        let mut left = t_min;
        for i in 0..pieces {
            let right = if i + 1 == pieces {
                m
            } else {
                t_min * ratio.powi(i as i32 + 1)
            };
            let v = g(left);
            if values.last() == Some(&v) {
                *breakpoints.last_mut().unwrap() = right;
            } else {
                breakpoints.push(right);
                values.push(v);
            }
            left = right;
        }
        StepProfile {
            breakpoints,
            values,
        }
    }

    pub fn support_end(&self) -> f64 {
        self.breakpoints.last().copied().unwrap_or(0.0)
    }

    /// Value at t (right-continuous; 0 beyond the support).
    pub fn eval(&self, t: f64) -> f64 {
        if t < 0.0 {
            return self.values.first().copied().unwrap_or(0.0);
        }
        match self
            .breakpoints
            .binary_search_by(|b| b.partial_cmp(&t).unwrap())
        {
            Ok(i) => self.values.get(i + 1).copied().unwrap_or(0.0),
            Err(i) => self.values.get(i).copied().unwrap_or(0.0),
        }
    }

    /// Lebesgue length of {t : profile(t) > λ}.
    pub fn superlevel_length(&self, lambda: f64) -> f64 {
        let mut len = 0.0;
        for (i, v) in self.values.iter().enumerate() {
            if *v > lambda {
                len = self.breakpoints[i];
            }
        }
        len
    }

    /// ∫₀ᵗ p(s) ds by exact piecewise integration.
    pub fn integral_to(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        let mut left = 0.0;
        for (i, v) in self.values.iter().enumerate() {
            let right = self.breakpoints[i];
            if t <= left {
                break;
            }
            acc += v * (t.min(right) - left);
            left = right;
        }
        acc
    }

    /// ∫₀^∞ p(s)^q s^{e-1} ds exactly (each piece is a power integral).
    /// Requires e > 0 so the origin is integrable.
    pub fn power_moment(&self, q: f64, e: f64) -> f64 {
        let mut acc = 0.0;
        let mut left = 0.0f64;
        for (i, v) in self.values.iter().enumerate() {
            let right = self.breakpoints[i];
            if *v > 0.0 {
                acc += v.powf(q) * (right.powf(e) - left.powf(e)) / e;
            }
            left = right;
        }
        acc
    }
}

/// ν-mass of the superlevel set {|f| > s}.
///
/// Accumulation follows the same descending value order as `rearrange`, so
/// the equimeasurability identity with the profile is exact, not just up to
/// floating-point reassociation.
pub fn distribution(f: &GridFunction, nu: &RadonMeasure, s: f64) -> Result<f64> {
    let pairs = value_weight_pairs(f, nu)?;
    let mut order: Vec<usize> = (0..pairs.len()).filter(|&i| pairs[i].1 > 0.0).collect();
    order.sort_by(|&a, &b| {
        let va = pairs[a].0.abs();
        let vb = pairs[b].0.abs();
        vb.partial_cmp(&va).unwrap().then(a.cmp(&b))
    });
    let mut cum = 0.0;
    for &i in &order {
        if pairs[i].0.abs() > s {
            cum += pairs[i].1;
        } else {
            break;
        }
    }
    Ok(cum)
}

fn value_weight_pairs(f: &GridFunction, nu: &RadonMeasure) -> Result<Vec<(f64, f64)>> {
    let mut pairs = Vec::new();
    match &nu.data {
        MeasureData::Atoms(atoms) => {
            for a in atoms {
                pairs.push((f.value_at(&a.point), a.weight));
            }
        }
        MeasureData::GridDensity(g) => {
            if !g.same_geometry(f) {
                return Err(Error::Grid(
                    "function and measure grids must share geometry",
                ));
            }
            let vol = g.cell_volume();
            for (fv, dv) in f.values.iter().zip(&g.values) {
                if *dv > 0.0 {
                    pairs.push((*fv, dv * vol));
                }
            }
        }
    }
    Ok(pairs)
}

/// Non-increasing rearrangement of |f| with respect to ν.
pub fn rearrange(f: &GridFunction, nu: &RadonMeasure) -> Result<StepProfile> {
    let pairs = value_weight_pairs(f, nu)?;
    if pairs.iter().any(|(v, _)| !v.is_finite()) {
        return Err(Error::Domain("function must be finite on supp nu"));
    }
    Ok(StepProfile::from_weighted_values(&pairs))
}

/// Double-star average p**(t) = (1/t) ∫₀ᵗ p(s) ds.
pub fn double_star(p: &StepProfile, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain("double star requires t > 0"));
    }
    Ok(p.integral_to(t) / t)
}

/// Lorentz quasi-norm of a profile on (0, M):
/// q < ∞ → (∫₀^M (s^{1/p} p(s))^q ds/s)^{1/q}; q = ∞ → sup s^{1/p} p(s),
/// the sup running over breakpoint left-limits.
pub fn lorentz_norm(p: &StepProfile, p_exp: f64, q_exp: crate::constants::QExp, m: f64) -> Result<f64> {
    if !(p_exp >= 1.0) {
        return Err(Error::Domain("lorentz primary exponent must be >= 1"));
    }
    match q_exp {
        crate::constants::QExp::Finite(q) => {
            let mut acc = 0.0;
            let mut left = 0.0f64;
            let e = q / p_exp;
            for (i, v) in p.values.iter().enumerate() {
                let right = p.breakpoints[i].min(m);
                if right <= left {
                    break;
                }
                if *v > 0.0 {
                    acc += v.powf(q) * (right.powf(e) - left.powf(e)) / e;
                }
                left = p.breakpoints[i];
                if left >= m {
                    break;
                }
            }
            Ok(acc.powf(1.0 / q))
        }
        crate::constants::QExp::Infinity => {
            let mut sup = 0.0f64;
            for (i, v) in p.values.iter().enumerate() {
                let right = p.breakpoints[i].min(m);
                let s = right.powf(1.0 / p_exp) * v;
                if s > sup {
                    sup = s;
                }
                if p.breakpoints[i] >= m {
                    break;
                }
            }
            Ok(sup)
        }
    }
}

/// Lorentz norm of a grid function via its rearrangement w.r.t. ν.
pub fn lorentz_norm_of(
    f: &GridFunction,
    nu: &RadonMeasure,
    p_exp: f64,
    q_exp: crate::constants::QExp,
) -> Result<f64> {
    let prof = rearrange(f, nu)?;
    let m = nu.total_mass;
    lorentz_norm(&prof, p_exp, q_exp, m)
}

/// Same norm from the alternative distribution-function formulation:
/// q < ∞ → p^{1/q} (∫₀^∞ [d_f(s)^{1/p} s]^q ds/s)^{1/q};
/// q = ∞ → sup s d_f(s)^{1/p}.
pub fn lorentz_norm_by_distribution(
    f: &GridFunction,
    nu: &RadonMeasure,
    p_exp: f64,
    q_exp: crate::constants::QExp,
) -> Result<f64> {
    let prof = rearrange(f, nu)?;
    // the distribution function of |f| is the step function
    //   d(s) = breakpoints[i]  for s ∈ [values[i+1], values[i])
    // with d(s) = 0 for s ≥ values[0]; integrate s^{q-1} d(s)^{q/p} exactly.
    match q_exp {
        crate::constants::QExp::Finite(q) => {
            let mut acc = 0.0;
            for i in 0..prof.values.len() {
                let hi = prof.values[i];
                let lo = prof.values.get(i + 1).copied().unwrap_or(0.0);
                let d = prof.breakpoints[i];
                acc += d.powf(q / p_exp) * (hi.powf(q) - lo.powf(q)) / q;
            }
            Ok(p_exp.powf(1.0 / q) * acc.powf(1.0 / q))
        }
        crate::constants::QExp::Infinity => {
            let mut sup = 0.0f64;
            for i in 0..prof.values.len() {
                let s = prof.values[i] * prof.breakpoints[i].powf(1.0 / p_exp);
                if s > sup {
                    sup = s;
                }
            }
            Ok(sup)
        }
    }
}

/// Outcome of the disjoint-union triangle inequality check
/// ‖f‖_{L^{p,q}(A∪B)} ≤ ‖f‖_{L^{p,q}(A)} + ‖f‖_{L^{p,q}(B)}.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleReport {
    pub norm_union: f64,
    pub norm_a: f64,
    pub norm_b: f64,
    pub passed: bool,
}

/// Check the triangle inequality over a disjoint cell split. `in_a`/`in_b`
/// flag cells of `f`; overlapping flags are rejected. Norms are taken with
/// respect to Lebesgue cell measure.
pub fn triangle_disjoint_check(
    f: &GridFunction,
    in_a: &[bool],
    in_b: &[bool],
    p_exp: f64,
    q_exp: crate::constants::QExp,
) -> Result<TriangleReport> {
    if in_a.len() != f.len() || in_b.len() != f.len() {
        return Err(Error::Grid("cell masks must match the grid"));
    }
    if in_a.iter().zip(in_b).any(|(a, b)| *a && *b) {
        return Err(Error::Domain("cell sets must be disjoint"));
    }
    let vol = f.cell_volume();
    let collect = |mask: &dyn Fn(usize) -> bool| -> Vec<(f64, f64)> {
        (0..f.len())
            .filter(|&i| mask(i))
            .map(|i| (f.values[i], vol))
            .collect()
    };
    let pairs_a = collect(&|i| in_a[i]);
    let pairs_b = collect(&|i| in_b[i]);
    let pairs_u = collect(&|i| in_a[i] || in_b[i]);
    let total = |pairs: &[(f64, f64)]| pairwise_sum(&pairs.iter().map(|p| p.1).collect::<Vec<_>>());
    let norm_of = |pairs: &[(f64, f64)]| -> Result<f64> {
        let prof = StepProfile::from_weighted_values(pairs);
        lorentz_norm(&prof, p_exp, q_exp, total(pairs).max(1e-300))
    };
    let norm_a = norm_of(&pairs_a)?;
    let norm_b = norm_of(&pairs_b)?;
    let norm_union = norm_of(&pairs_u)?;
    let tol = 1e-9 * (norm_a + norm_b).max(1.0);
    Ok(TriangleReport {
        norm_union,
        norm_a,
        norm_b,
        passed: norm_union <= norm_a + norm_b + tol,
    })
}
