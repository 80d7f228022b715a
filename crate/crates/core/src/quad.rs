//! One-dimensional quadrature utilities: Gauss–Legendre rules computed by
//! Newton iteration on the Legendre polynomials, panel integration over
//! graded subdivisions, and a plain adaptive Simpson fallback.

use alloc::vec::Vec;
// needed for the pure no_std build; std builds resolve these inherently
#[allow(unused_imports)]
use num_traits::Float;

/// Gauss–Legendre rule on [-1, 1] with `n` nodes.
///
/// Nodes are roots of P_n found by Newton from the Chebyshev initial guess;
/// weights are 2 / ((1-x²) P'_n(x)²). Exact for polynomials of degree 2n-1.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            // Chebyshev-based initial guess, then Newton on P_n.
            let mut x = (core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        nodes.reverse();
        weights.reverse();
        GaussLegendre { nodes, weights }
    }

    /// Integrate `f` over [a, b] with this rule.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let c = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(c + half * x);
        }
        acc * half
    }
}

/// (P_n(x), P'_n(x)) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integrate `f` over the consecutive panels given by `breaks` with a fixed
/// Gauss rule per panel.
pub fn integrate_panels<F: FnMut(f64) -> f64>(gl: &GaussLegendre, breaks: &[f64], mut f: F) -> f64 {
    let mut acc = 0.0;
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            acc += gl.integrate(w[0], w[1], &mut f);
        }
    }
    acc
}

/// Panel breakpoints on [a, b], geometrically graded toward each point of
/// `singular` (which may include the endpoints). `levels` dyadic halvings
/// per singular point; smooth stretches are split to at most `coarse` width.
pub fn graded_breaks(a: f64, b: f64, singular: &[f64], levels: u32, coarse: f64) -> Vec<f64> {
    let mut pts = Vec::new();
    pts.push(a);
    pts.push(b);
    for &s in singular {
        if s < a - 1e-300 || s > b + 1e-300 {
            continue;
        }
        pts.push(s.clamp(a, b));
        let span = (b - a).max(1e-300);
        let mut step = span;
        for _ in 0..levels {
            step *= 0.5;
            let lo = s - step;
            let hi = s + step;
            if lo > a {
                pts.push(lo);
            }
            if hi < b {
                pts.push(hi);
            }
        }
    }
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts.dedup_by(|x, y| (*x - *y).abs() < 1e-300);
    // split long smooth stretches
    let mut out = Vec::new();
    for w in pts.windows(2) {
        out.push(w[0]);
        let len = w[1] - w[0];
        if len > coarse {
            let m = (len / coarse).ceil() as usize;
            for j in 1..m {
                out.push(w[0] + len * j as f64 / m as f64);
            }
        }
    }
    out.push(b);
    out
}

/// Adaptive Simpson on [a, b] to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Pairwise (cascade) summation; deterministic and accurate for long sums.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

/// Streaming log-sum-exp accumulator: log Σ exp(tᵢ) without overflow.
#[derive(Debug, Clone, Copy)]
pub struct LogSumExp {
    max: f64,
    sum: f64, // Σ exp(tᵢ - max)
}

impl LogSumExp {
    pub fn new() -> Self {
        LogSumExp {
            max: f64::NEG_INFINITY,
            sum: 0.0,
        }
    }

    pub fn push(&mut self, t: f64) {
        if t.is_infinite() && t < 0.0 {
            return;
        }
        if t <= self.max {
            self.sum += (t - self.max).exp();
        } else {
            self.sum = self.sum * (self.max - t).exp() + 1.0;
            self.max = t;
        }
    }

    /// log Σ exp(tᵢ); -inf when nothing was pushed.
    pub fn log_value(&self) -> f64 {
        if self.sum == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.max + self.sum.ln()
        }
    }

    /// Σ exp(tᵢ), saturating to +inf.
    pub fn value(&self) -> f64 {
        self.log_value().exp()
    }
}

impl Default for LogSumExp {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn gauss_legendre_exact_on_high_degree_polynomials() {
        let gl = GaussLegendre::new(16);
        // degree 31 is the highest exactly integrated degree for n = 16
        let exact = 2.0 / 31.0; // ∫_{-1}^{1} x^30 dx
        let got = gl.integrate(-1.0, 1.0, |x| x.powi(30));
        assert!((got - exact).abs() < 1e-14, "got {got}, want {exact}");
        let got_odd = gl.integrate(-1.0, 1.0, |x| x.powi(31));
        assert!(got_odd.abs() < 1e-14);
    }

    #[test]
    fn graded_panels_resolve_endpoint_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2
        let gl = GaussLegendre::new(16);
        let breaks = graded_breaks(0.0, 1.0, &[0.0], 40, 0.25);
        let got = integrate_panels(&gl, &breaks, |x| 1.0 / x.sqrt());
        assert!((got - 2.0).abs() < 1e-6, "got {got}");
    }

    #[test]
    fn adaptive_simpson_smooth() {
        let got = adaptive_simpson(&|x: f64| x.exp(), 0.0, 1.0, 1e-12, 40);
        assert!((got - (core::f64::consts::E - 1.0)).abs() < 1e-10);
    }

    #[test]
    fn log_sum_exp_matches_direct_sum() {
        let ts = vec![0.3, -2.0, 5.0, 1.2];
        let mut lse = LogSumExp::new();
        for &t in &ts {
            lse.push(t);
        }
        let direct: f64 = ts.iter().map(|t| t.exp()).sum();
        assert!((lse.value() - direct).abs() / direct < 1e-14);
    }

    #[test]
    fn log_sum_exp_survives_overflowing_terms() {
        let mut lse = LogSumExp::new();
        lse.push(800.0);
        lse.push(801.0);
        assert!(lse.value().is_infinite());
        let expect = 801.0 + (1.0 + (-1.0f64).exp()).ln();
        assert!((lse.log_value() - expect).abs() < 1e-12);
    }
}
