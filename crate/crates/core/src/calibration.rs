//! Frozen calibration constants.
//!
//! The statements behind several checks are existential ("there exists a
//! constant C"), so the numeric value is not part of the theory. Each value
//! below was measured once on a fixed calibration suite and then frozen;
//! checks compare against these numbers and must not re-fit them at run
//! time. The CLI can load overrides from a key=value file, which is how a
//! tampered tolerance file surfaces as a named check failure.

use alloc::vec::Vec;

/// One frozen scalar, addressable by key.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalEntry {
    pub key: &'static str,
    pub value: f64,
}

/// Calibration table used by the verification checks.
#[derive(Debug, Clone)]
pub struct Calibration {
    entries: Vec<(alloc::string::String, f64)>,
}

/// First-term constant of the modified O'Neil bound, keyed by the
/// configuration it was calibrated for. Measured on the calibration set
/// {χ_{B(0,0.6)}, capacitary r=0.1, Gaussian bump} at 8×8 (τ, t) samples
/// and frozen with a 25% safety factor.
pub const ONEIL_C: &[CalEntry] = &[
    CalEntry {
        key: "oneil_c.n2.a1.d2.r1_5",
        value: 0.46,
    },
    CalEntry {
        key: "oneil_c.n2.a1.d1.r1_5",
        value: 0.50,
    },
];

/// Caps for the one-dimensional exponential lemma value ∫ e^{-F}, keyed by
/// (q, b) of the calibration kernels. Frozen at 1.2× the observed value.
pub const ADAMS_MOSER_CAPS: &[CalEntry] = &[
    // a(s,t) = χ_{s<t}, b = 0, q = 2: observed 1.849
    CalEntry {
        key: "adams_cap.q2.b0",
        value: 2.22,
    },
    // proof kernel with H = 1, θ = 6 (r = 1.5, n = 2, α = 1, d = 2), q = 2:
    // observed 2.613
    CalEntry {
        key: "adams_cap.q2.b1_732",
        value: 3.14,
    },
];

/// Constant C with γ(α) I_α f ≥ log(1/|x|) − C on small balls for the
/// weak-endpoint family; measured on B_{0.2} over three grids and frozen.
pub const WEAK_ENDPOINT_C: &[CalEntry] = &[
    // the potential actually exceeds log(1/|x|) by the v-integral tail, so a
    // small positive C only has to absorb quadrature noise
    CalEntry {
        key: "weak_endpoint_c.n2.a1",
        value: 0.05,
    },
    CalEntry {
        key: "weak_endpoint_c.n3.a2",
        value: 0.05,
    },
];

/// Constant C in the Alberico-family weak-norm bound
/// ‖∇ᵏu_a‖_{L^{n/k,∞}} ≤ (ω^{k/n}√ℓ/log a)(1 + C/(log a)²);
/// fitted once over a ∈ {8, 16, 32, 64} and frozen.
pub const ALBERICO_NORM_C: &[CalEntry] = &[CalEntry {
    // for k = 1 the chain rule brings no correction terms, so the fitted C
    // only covers shell-resolution effects (observed ≤ 0.006)
    key: "alberico_c.n2.k1",
    value: 0.5,
}];

/// Measured suprema for the logarithmic-cap family over the ε-sweep
/// {0.1, 0.05, 0.025, 0.0125}: εᵏ‖∇ᵏu_ε‖_{L∞(B_ε)}, ‖∇ᵏu_ε‖_{L∞(B₂\B₁)},
/// and the cap excess u_ε(0) − log(1/ε).
pub const LOG_CAP_BOUNDS: &[CalEntry] = &[
    CalEntry {
        key: "log_cap.grad_sup_eps.n2.k1",
        value: 1.09,
    },
    CalEntry {
        key: "log_cap.grad_sup_eps.n2.k2",
        value: 2.83,
    },
    CalEntry {
        key: "log_cap.grad_sup_outer.n2.k1",
        value: 1.00,
    },
    CalEntry {
        key: "log_cap.grad_sup_outer.n2.k2",
        value: 5.77,
    },
    // exact by construction: u_ε(0) − log(1/ε) = 3/4
    CalEntry {
        key: "log_cap.cap_excess",
        value: 0.75,
    },
    // O(1) excess of ‖∇u_ε‖²_{L^{2,2}(B₂)} over 2π log(1/ε); observed 5.73..5.83
    CalEntry {
        key: "log_cap.norm_sq_excess.n2.k1",
        value: 5.85,
    },
];

impl Calibration {
    /// The frozen in-crate table.
    pub fn frozen() -> Self {
        let mut entries = Vec::new();
        for table in [
            ONEIL_C,
            ADAMS_MOSER_CAPS,
            WEAK_ENDPOINT_C,
            ALBERICO_NORM_C,
            LOG_CAP_BOUNDS,
        ] {
            for e in table {
                entries.push((alloc::string::String::from(e.key), e.value));
            }
        }
        Calibration { entries }
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| *v)
    }

    /// Replace or insert an entry (used by the CLI file override).
    pub fn set(&mut self, key: &str, value: f64) {
        if let Some(slot) = self.entries.iter_mut().find(|(k, _)| k == key) {
            slot.1 = value;
        } else {
            self.entries.push((alloc::string::String::from(key), value));
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, f64)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl Default for Calibration {
    fn default() -> Self {
        Self::frozen()
    }
}
