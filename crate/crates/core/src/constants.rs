//! Closed-form constants: unit-ball volumes, the Riesz normalizations γ(α)
//! and γ̃(α), the combinatorial constant ℓᵏₙ in exact rational arithmetic,
//! the parity constants β_{n,k,q}, and the six sharp thresholds.
//!
//! Everything here is pure scalar arithmetic; the only nontrivial numerics
//! is a Lanczos evaluation of Γ (relative error below 1e-12 on (0, 50),
//! which covers every argument that can arise from admissible parameters).

use crate::{Error, Result};
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
// needed for the pure no_std build; std builds resolve these inherently
#[allow(unused_imports)]
use num_traits::Float;

/// Secondary Lorentz exponent; q = ∞ is a distinguished value so the
/// conjugate exponent q' = 1 is exact rather than a float-sentinel limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QExp {
    Finite(f64),
    Infinity,
}

impl QExp {
    /// Conjugate exponent q' = q/(q-1); exactly 1 for q = ∞.
    pub fn q_prime(self) -> f64 {
        match self {
            QExp::Finite(q) => q / (q - 1.0),
            QExp::Infinity => 1.0,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, QExp::Finite(_))
    }
}

/// Parameter bundle shared by the whole toolkit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    /// Spatial dimension, n ≥ 2.
    pub n: usize,
    /// Derivative order, 1 ≤ k < n.
    pub k: usize,
    /// Riesz potential order, 0 < α < n.
    pub alpha: f64,
    /// Secondary Lorentz exponent, q ∈ (1, ∞].
    pub q: QExp,
    /// Growth dimension of the trace measure, 0 < d ≤ n.
    pub d: f64,
}

impl Params {
    pub fn new(n: usize, k: usize, alpha: f64, q: QExp, d: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain("n must be at least 2"));
        }
        if k < 1 || k >= n {
            return Err(Error::Domain("k must satisfy 1 <= k < n"));
        }
        if !(alpha > 0.0 && alpha < n as f64) {
            return Err(Error::Domain("alpha must lie in (0, n)"));
        }
        if let QExp::Finite(q) = q {
            if !(q > 1.0 && q.is_finite()) {
                return Err(Error::Domain("finite q must lie in (1, inf)"));
            }
        }
        if !(d > 0.0 && d <= n as f64) {
            return Err(Error::Domain("d must lie in (0, n]"));
        }
        Ok(Params { n, k, alpha, q, d })
    }

    pub fn q_prime(&self) -> f64 {
        self.q.q_prime()
    }
}

/// Γ(x) for x > 0 by the 9-term Lanczos approximation (g = 7).
///
/// Coefficients are the classic GSL set; relative error is below 1e-13 for
/// the arguments in scope here.
pub fn gamma_fn(x: f64) -> f64 {
    const G: f64 = 7.0;
    const P: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        // reflection; only reachable for 0 < x < 1/2 in this crate
        core::f64::consts::PI / ((core::f64::consts::PI * x).sin() * gamma_fn(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = P[0];
        for (i, p) in P.iter().enumerate().skip(1) {
            acc += p / (x + i as f64);
        }
        let t = x + G + 0.5;
        (2.0 * core::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
    }
}

/// Volume of the unit ball in ℝⁿ: ω_n = π^{n/2} / Γ(n/2 + 1).
pub fn unit_ball_volume(n: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain("dimension must be at least 1"));
    }
    let nf = n as f64;
    Ok(core::f64::consts::PI.powf(nf / 2.0) / gamma_fn(nf / 2.0 + 1.0))
}

/// Riesz normalization γ(α) = π^{n/2} 2^α Γ(α/2) / Γ((n-α)/2), 0 < α < n.
pub fn riesz_gamma(alpha: f64, n: usize) -> Result<f64> {
    if !(alpha > 0.0 && alpha < n as f64) {
        return Err(Error::Domain("alpha must lie in (0, n)"));
    }
    let nf = n as f64;
    Ok(core::f64::consts::PI.powf(nf / 2.0) * 2.0f64.powf(alpha) * gamma_fn(alpha / 2.0)
        / gamma_fn((nf - alpha) / 2.0))
}

/// γ̃(α) = α γ(α) for α > 0, and γ̃(0) = n ω_n; continuous at α = 0.
pub fn riesz_gamma_tilde(alpha: f64, n: usize) -> Result<f64> {
    if alpha < 0.0 {
        return Err(Error::Domain("alpha must be nonnegative"));
    }
    if alpha == 0.0 {
        Ok(n as f64 * unit_ball_volume(n)?)
    } else {
        Ok(alpha * riesz_gamma(alpha, n)?)
    }
}

/// Pochhammer-style falling product (μ)_i = ∏_{j=0}^{i-1} (μ - j); (μ)_0 = 1.
pub fn pochhammer(mu: f64, i: i64) -> Result<f64> {
    if i < 0 {
        return Err(Error::Domain("pochhammer index must be nonnegative"));
    }
    let mut acc = 1.0;
    for j in 0..i {
        acc *= mu - j as f64;
    }
    Ok(acc)
}

fn big(i: i64) -> BigInt {
    BigInt::from(i)
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(big(num), big(den))
}

fn factorial(m: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=m {
        acc *= big(j as i64);
    }
    acc
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * big((n - j) as i64) / big((j + 1) as i64);
    }
    acc
}

fn pochhammer_rational(mu: &BigRational, i: u64) -> BigRational {
    let mut acc = BigRational::one();
    for j in 0..i {
        acc *= mu - BigRational::from(big(j as i64));
    }
    acc
}

fn pow2_rational(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from(big(2).pow(e as u32))
    } else {
        BigRational::new(BigInt::one(), big(2).pow((-e) as u32))
    }
}

/// The addends of the outer l-sum of ℓᵏₙ, in index order.
fn ell_terms(k: usize, n: usize) -> Vec<BigRational> {
    let kf = factorial(k as u64);
    let mut terms = Vec::new();
    for l in 0..=(k / 2) {
        // inner alternating t-sum, squared
        let mut inner = BigRational::zero();
        let t_lo = k.div_ceil(2);
        for t in t_lo..=(k - l) {
            let sign = if t % 2 == 0 { 1 } else { -1 };
            let coeff = pow2_rational((2 * t) as i64 - k as i64 + l as i64)
                * ratio(sign, 2 * t as i64)
                * BigRational::from(binomial(t as u64, (k - t) as u64))
                * BigRational::from(binomial((k - t) as u64, l as u64));
            inner += coeff;
        }
        let mu = ratio(n as i64 - 3, 2) + BigRational::from(big(l as i64));
        let term = BigRational::from(factorial((k - 2 * l) as u64))
            * BigRational::from(factorial(l as u64))
            * pochhammer_rational(&mu, l as u64)
            * (&inner * &inner);
        terms.push(BigRational::from(kf.clone()) * term);
    }
    terms
}

/// ℓᵏₙ, the constant with |∇ᵏ log|x|| = √ℓᵏₙ / |x|ᵏ, as an exact rational.
///
/// The alternating double sum cancels catastrophically in floats for k ≥ 4,
/// so it is evaluated in exact arithmetic and converted only at the boundary.
pub fn ell_combinatorial(k: usize, n: usize) -> Result<BigRational> {
    if k < 1 || k >= n {
        return Err(Error::Domain("ell requires 1 <= k < n"));
    }
    let mut acc = BigRational::zero();
    for t in ell_terms(k, n) {
        acc += t;
    }
    Ok(acc)
}

/// ℓᵏₙ as f64.
pub fn ell_combinatorial_f64(k: usize, n: usize) -> Result<f64> {
    Ok(ell_combinatorial(k, n)?
        .to_f64()
        .expect("ell fits in f64 for the supported range"))
}

/// Parity branch of β_{n,k,q}: even uses γ(k), odd uses γ̃(k-1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityOperator {
    EvenDk,
    OddDk,
}

/// β_{n,k,q} = (d/n)^{1/q'} γ(k) ω_n^{-(n-k)/n} for even k, with γ̃(k-1)
/// replacing γ(k) for odd k.
pub fn beta_sharp(p: &Params, parity: ParityOperator) -> Result<f64> {
    let nf = p.n as f64;
    let omega = unit_ball_volume(p.n)?;
    let front = (p.d / nf).powf(1.0 / p.q_prime());
    let core = match parity {
        ParityOperator::EvenDk => riesz_gamma(p.k as f64, p.n)?,
        ParityOperator::OddDk => riesz_gamma_tilde(p.k as f64 - 1.0, p.n)?,
    };
    Ok(front * core * omega.powf(-((nf - p.k as f64) / nf)))
}

fn parity_of(k: usize) -> ParityOperator {
    if k % 2 == 0 {
        ParityOperator::EvenDk
    } else {
        ParityOperator::OddDk
    }
}

/// The six sharp inequalities, named by which statement they gate.
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TheoremId {
    /// ∇ᵏ in L^{n/k,q}, q < ∞.
    T1_0,
    /// Riesz potential on L^{n/α,q}, q < ∞.
    T1,
    /// Dᵏ in L^{n/k,q}, q < ∞.
    T1_1,
    /// Riesz potential, weak endpoint q = ∞.
    Tinf,
    /// ∇ᵏ, weak endpoint q = ∞.
    Tinf1,
    /// Dᵏ, weak endpoint q = ∞.
    Tinf2,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::T1_0,
        TheoremId::T1,
        TheoremId::T1_1,
        TheoremId::Tinf,
        TheoremId::Tinf1,
        TheoremId::Tinf2,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::T1_0 => "T1_0",
            TheoremId::T1 => "T1",
            TheoremId::T1_1 => "T1_1",
            TheoremId::Tinf => "Tinf",
            TheoremId::Tinf1 => "Tinf1",
            TheoremId::Tinf2 => "Tinf2",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "T1_0" => Ok(TheoremId::T1_0),
            "T1" => Ok(TheoremId::T1),
            "T1_1" => Ok(TheoremId::T1_1),
            "Tinf" => Ok(TheoremId::Tinf),
            "Tinf1" => Ok(TheoremId::Tinf1),
            "Tinf2" => Ok(TheoremId::Tinf2),
            _ => Err(Error::Domain("unknown theorem id")),
        }
    }

    /// Weak-endpoint statements hold at q = ∞ only.
    pub fn is_weak_endpoint(&self) -> bool {
        matches!(self, TheoremId::Tinf | TheoremId::Tinf1 | TheoremId::Tinf2)
    }
}

/// A sharp threshold in both normalizations: κ multiplies |u| inside the
/// exponential, κ^{q'} multiplies |u|^{q'}. The statements mix the two
/// conventions, so both are always exposed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold {
    pub linear: f64,
    pub exponent: f64,
}

/// Sharp threshold of one theorem for the given parameters.
///
/// Finite-q statements reject q = ∞ and vice versa: the two families differ
/// in normalization and silently crossing over would hide that.
pub fn theorem_threshold(id: TheoremId, p: &Params) -> Result<Threshold> {
    if id.is_weak_endpoint() {
        if p.q.is_finite() {
            return Err(Error::Domain("weak-endpoint threshold requires q = inf"));
        }
    } else if !p.q.is_finite() {
        return Err(Error::Domain("finite-q threshold requires finite q"));
    }
    threshold_value(id, p)
}

fn threshold_value(id: TheoremId, p: &Params) -> Result<Threshold> {
    let nf = p.n as f64;
    let omega = unit_ball_volume(p.n)?;
    let qp = p.q_prime();
    let linear = match id {
        TheoremId::T1_0 => {
            let q = match p.q {
                QExp::Finite(q) => q,
                QExp::Infinity => f64::INFINITY,
            };
            let sqrt_ell = ell_combinatorial_f64(p.k, p.n)?.sqrt();
            p.d.powf(1.0 / qp) * nf.powf(1.0 / q) * omega.powf(p.k as f64 / nf) * sqrt_ell
        }
        TheoremId::T1 => {
            (p.d / nf).powf(1.0 / qp)
                * riesz_gamma(p.alpha, p.n)?
                * omega.powf(-((nf - p.alpha) / nf))
        }
        TheoremId::T1_1 => beta_sharp(p, parity_of(p.k))?,
        TheoremId::Tinf => {
            (p.d / nf) * riesz_gamma(p.alpha, p.n)? * omega.powf(-((nf - p.alpha) / nf))
        }
        TheoremId::Tinf1 => {
            let sqrt_ell = ell_combinatorial_f64(p.k, p.n)?.sqrt();
            p.d * omega.powf(p.k as f64 / nf) * sqrt_ell
        }
        TheoremId::Tinf2 => {
            let pinf = Params {
                q: QExp::Infinity,
                ..*p
            };
            beta_sharp(&pinf, parity_of(p.k))?
        }
    };
    let exponent = if id.is_weak_endpoint() {
        linear
    } else {
        linear.powf(qp)
    };
    Ok(Threshold { linear, exponent })
}

/// Every closed-form scalar for one parameter bundle.
#[derive(Debug, Clone)]
pub struct SharpConstants {
    pub omega_n: f64,
    pub gamma_alpha: f64,
    pub gamma_tilde: f64,
    pub ell_k_n: BigRational,
    pub beta_nkq: f64,
    /// Thresholds of all six statements in `TheoremId::ALL` order. The
    /// weak-endpoint entries never depend on q; the finite-q entries are
    /// evaluated at q' = 1 when q = ∞ (their degenerate limit).
    pub thresholds: Vec<(TheoremId, Threshold)>,
}

impl SharpConstants {
    pub fn compute(p: &Params) -> Result<Self> {
        let mut thresholds = Vec::with_capacity(6);
        for id in TheoremId::ALL {
            thresholds.push((id, threshold_value(id, p)?));
        }
        Ok(SharpConstants {
            omega_n: unit_ball_volume(p.n)?,
            gamma_alpha: riesz_gamma(p.alpha, p.n)?,
            gamma_tilde: riesz_gamma_tilde(p.alpha, p.n)?,
            ell_k_n: ell_combinatorial(p.k, p.n)?,
            beta_nkq: beta_sharp(p, parity_of(p.k))?,
            thresholds,
        })
    }

    pub fn threshold(&self, id: TheoremId) -> Threshold {
        self.thresholds
            .iter()
            .find(|(t, _)| *t == id)
            .map(|(_, th)| *th)
            .expect("all six thresholds are always present")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeded_rng;
    use num_traits::Signed;
    use rand::Rng;

    const PI: f64 = core::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn unit_ball_volumes_low_dimensions() {
        assert!(rel(unit_ball_volume(2).unwrap(), PI) < 1e-14);
        assert!(rel(unit_ball_volume(3).unwrap(), 4.0 * PI / 3.0) < 1e-14);
        // direct Γ evaluation: ω₄ = π²/2
        assert!(rel(unit_ball_volume(4).unwrap(), PI * PI / 2.0) < 1e-14);
        assert!(unit_ball_volume(0).is_err());
    }

    #[test]
    fn riesz_gamma_closed_forms() {
        // Γ(1)/Γ(1) · 4π² for (α=2, n=4)
        assert!(rel(riesz_gamma(2.0, 4).unwrap(), 4.0 * PI * PI) < 1e-13);
        // 2π · Γ(1/2)/Γ(1/2) for (α=1, n=2)
        assert!(rel(riesz_gamma(1.0, 2).unwrap(), 2.0 * PI) < 1e-13);
        for n in 2..=8 {
            let g = riesz_gamma(n as f64 / 2.0, n).unwrap();
            assert!(g.is_finite() && g > 0.0);
        }
        assert!(riesz_gamma(0.0, 3).is_err());
        assert!(riesz_gamma(3.0, 3).is_err());
    }

    #[test]
    fn gamma_tilde_branches_and_continuity() {
        // γ̃(0) = n ω_n
        assert!(rel(riesz_gamma_tilde(0.0, 3).unwrap(), 4.0 * PI) < 1e-13);
        for n in 2..=6 {
            let limit = n as f64 * unit_ball_volume(n).unwrap();
            let near = riesz_gamma_tilde(1e-9, n).unwrap();
            assert!((near - limit).abs() < 1e-6, "n={n}: {near} vs {limit}");
        }
        assert!(rel(
            riesz_gamma_tilde(1.0, 2).unwrap(),
            riesz_gamma(1.0, 2).unwrap()
        ) < 1e-15);
        assert!(riesz_gamma_tilde(-0.1, 2).is_err());
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(5.0, 0).unwrap(), 1.0);
        assert_eq!(pochhammer(3.0, 2).unwrap(), 6.0);
        assert!((pochhammer(0.5, 2).unwrap() - (-0.25)).abs() < 1e-15);
        assert!(pochhammer(1.0, -1).is_err());
    }

    #[test]
    fn ell_low_orders_are_exact() {
        for n in 2..=6 {
            let l1 = ell_combinatorial(1, n).unwrap();
            assert_eq!(l1, BigRational::from(big(1)));
        }
        for n in 3..=6 {
            let l2 = ell_combinatorial(2, n).unwrap();
            assert_eq!(l2, BigRational::from(big(n as i64)));
        }
        assert!(ell_combinatorial(3, 3).is_err());
        assert!(ell_combinatorial(0, 3).is_err());
    }

    #[test]
    fn ell_positive_up_to_supported_range() {
        for n in 2..=6usize {
            for k in 1..n.min(5) {
                let l = ell_combinatorial(k, n).unwrap();
                assert!(l.is_positive(), "ell({k},{n}) = {l}");
            }
        }
    }

    #[test]
    fn ell_sum_is_order_independent() {
        for n in 3..=6usize {
            for k in 1..n.min(5) {
                let terms = ell_terms(k, n);
                let fwd = terms
                    .iter()
                    .fold(BigRational::zero(), |acc, t| acc + t.clone());
                let rev = terms
                    .iter()
                    .rev()
                    .fold(BigRational::zero(), |acc, t| acc + t.clone());
                assert_eq!(fwd, rev);
                assert_eq!(fwd, ell_combinatorial(k, n).unwrap());
            }
        }
    }

    #[test]
    fn beta_sharp_branches() {
        // odd, k=1, n=2, q=2, d=2: 1^{1/2} · γ̃(0) · ω₂^{-1/2} = 2π·π^{-1/2}
        let p = Params::new(2, 1, 1.0, QExp::Finite(2.0), 2.0).unwrap();
        let beta = beta_sharp(&p, ParityOperator::OddDk).unwrap();
        assert!(rel(beta, 2.0 * PI * PI.powf(-0.5)) < 1e-13);

        // even vs odd differ exactly by γ(k)/γ̃(k-1)
        let p2 = Params::new(4, 2, 1.0, QExp::Finite(3.0), 2.5).unwrap();
        let be = beta_sharp(&p2, ParityOperator::EvenDk).unwrap();
        let bo = beta_sharp(&p2, ParityOperator::OddDk).unwrap();
        let factor = riesz_gamma(2.0, 4).unwrap() / riesz_gamma_tilde(1.0, 4).unwrap();
        assert!(rel(be / bo, factor) < 1e-13);

        // q → ∞ gives the q' = 1 branch
        let pinf = Params::new(4, 2, 1.0, QExp::Infinity, 2.5).unwrap();
        let binf = beta_sharp(&pinf, ParityOperator::EvenDk).unwrap();
        let expect = (2.5 / 4.0)
            * riesz_gamma(2.0, 4).unwrap()
            * unit_ball_volume(4).unwrap().powf(-0.5);
        assert!(rel(binf, expect) < 1e-13);
    }

    #[test]
    fn moser_constant_in_two_dimensions() {
        // k=1, n=2, q=2, d=2: κ = 2√π, κ² = 4π (the classical constant)
        let p = Params::new(2, 1, 1.0, QExp::Finite(2.0), 2.0).unwrap();
        let th = theorem_threshold(TheoremId::T1_0, &p).unwrap();
        assert!(rel(th.linear, 2.0 * PI.sqrt()) < 1e-13);
        assert!(rel(th.exponent, 4.0 * PI) < 1e-13);
    }

    #[test]
    fn weak_endpoint_threshold_examples() {
        let p = Params::new(2, 1, 1.0, QExp::Infinity, 1.0).unwrap();
        let th = theorem_threshold(TheoremId::Tinf1, &p).unwrap();
        assert!(rel(th.linear, PI.sqrt()) < 1e-13);
        assert!(rel(th.exponent, th.linear) < 1e-15);
    }

    #[test]
    fn threshold_parameter_mismatch_is_rejected() {
        let pfin = Params::new(2, 1, 1.0, QExp::Finite(2.0), 2.0).unwrap();
        let pinf = Params::new(2, 1, 1.0, QExp::Infinity, 2.0).unwrap();
        assert!(theorem_threshold(TheoremId::Tinf, &pfin).is_err());
        assert!(theorem_threshold(TheoremId::T1, &pinf).is_err());
    }

    #[test]
    fn threshold_bridge_identity() {
        // d^{1/q'} n^{1/q} ω^{k/n} √ℓ · γ(k)/(n ω √ℓ) = (d/n)^{1/q'} γ(k) ω^{k/n-1}
        let mut rng = seeded_rng(42);
        for _ in 0..50 {
            let n = rng.gen_range(2..=6usize);
            let k = rng.gen_range(1..n);
            let q = rng.gen_range(1.1..8.0);
            let d = rng.gen_range(0.2..n as f64);
            let p = Params::new(n, k, k as f64, QExp::Finite(q), d).unwrap();
            let omega = unit_ball_volume(n).unwrap();
            let sqrt_ell = ell_combinatorial_f64(k, n).unwrap().sqrt();
            let lhs = theorem_threshold(TheoremId::T1_0, &p).unwrap().linear
                * riesz_gamma(k as f64, n).unwrap()
                / (n as f64 * omega * sqrt_ell);
            let rhs = (d / n as f64).powf(1.0 / p.q_prime())
                * riesz_gamma(k as f64, n).unwrap()
                * omega.powf(k as f64 / n as f64 - 1.0);
            assert!(rel(lhs, rhs) < 1e-12, "n={n} k={k} q={q} d={d}: {lhs} {rhs}");
        }
    }

    #[test]
    fn thresholds_increase_in_d() {
        let mut rng = seeded_rng(7);
        for _ in 0..20 {
            let n = rng.gen_range(2..=5usize);
            let k = rng.gen_range(1..n);
            let alpha = rng.gen_range(0.3..n as f64 - 0.1);
            let q = rng.gen_range(1.2..6.0);
            let d1 = rng.gen_range(0.2..n as f64 - 0.1);
            let d2 = rng.gen_range(d1..n as f64);
            if d2 <= d1 {
                continue;
            }
            for (qe, ids) in [
                (
                    QExp::Finite(q),
                    &[TheoremId::T1_0, TheoremId::T1, TheoremId::T1_1][..],
                ),
                (
                    QExp::Infinity,
                    &[TheoremId::Tinf, TheoremId::Tinf1, TheoremId::Tinf2][..],
                ),
            ] {
                let pa = Params::new(n, k, alpha, qe, d1).unwrap();
                let pb = Params::new(n, k, alpha, qe, d2).unwrap();
                for &id in ids {
                    let ta = theorem_threshold(id, &pa).unwrap();
                    let tb = theorem_threshold(id, &pb).unwrap();
                    assert!(tb.linear > ta.linear, "{id:?} not increasing in d");
                }
            }
        }
    }

    #[test]
    fn sharp_constants_all_positive() {
        let p = Params::new(4, 3, 1.5, QExp::Finite(2.5), 3.0).unwrap();
        let c = SharpConstants::compute(&p).unwrap();
        assert!(c.omega_n > 0.0 && c.gamma_alpha > 0.0 && c.gamma_tilde > 0.0);
        assert!(c.ell_k_n.is_positive());
        assert!(c.beta_nkq > 0.0);
        assert_eq!(c.thresholds.len(), 6);
        for (_, th) in &c.thresholds {
            assert!(th.linear > 0.0 && th.exponent > 0.0);
        }
    }
}
