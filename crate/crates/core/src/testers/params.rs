//! Sample-count formulas. Every count is an exact integer function of
//! `(n, ε, δ)` so it can be checked against the closed forms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qstate::{check_unit, joint_attempts};

fn ceil_u64(x: f64) -> u64 {
    x.ceil() as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotonicityParams {
    pub n: usize,
    pub epsilon: f64,
    pub delta: f64,
    pub epsilon2: f64,
    pub epsilon5: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub delta5: f64,
    pub m1: u64,
    pub m2: u64,
    pub m4: u64,
    pub m5: u64,
}

impl MonotonicityParams {
    pub fn new(n: usize, epsilon: f64, delta: f64) -> Result<Self> {
        check_unit("epsilon", epsilon)?;
        check_unit("delta", delta)?;
        if n == 0 {
            return Err(Error::Arity("monotonicity testing needs n ≥ 1".into()));
        }
        let nf = n as f64;
        let epsilon2 = epsilon / 3.0;
        let epsilon5 = epsilon / (3.0 * nf);
        let delta1 = delta / 3.0;
        let delta2 = delta / 3.0;
        let delta5 = delta / (3.0 * nf);
        let m2 = ceil_u64(nf * nf * (2.0 / delta2).ln() / (2.0 * epsilon2 * epsilon2));
        let m1 = (3 * m2).max(ceil_u64(18.0 * (2.0 / delta1).ln()));
        let m4 = ceil_u64(4.0 * (2.0 / delta5).ln() / (epsilon5 * epsilon5));
        Ok(Self { n, epsilon, delta, epsilon2, epsilon5, delta1, delta2, delta5, m1, m2, m4, m5: m4 })
    }

    /// Copies drawn by one run, `m₁ + m₄`.
    pub fn copies(&self) -> u64 {
        self.m1 + self.m4
    }

    /// Accept iff `p̂ < ε/2n`.
    pub fn threshold(&self) -> f64 {
        self.epsilon / (2.0 * self.n as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetryParams {
    pub epsilon: f64,
    pub delta: f64,
    pub m: u64,
}

impl SymmetryParams {
    pub fn new(epsilon: f64, delta: f64) -> Result<Self> {
        check_unit("epsilon", epsilon)?;
        check_unit("delta", delta)?;
        Ok(Self { epsilon, delta, m: ceil_u64(9.0 * (2.0 / delta).ln() / (epsilon * epsilon)) })
    }
}

/// Parameters of the triangle-freeness tester. `epsilon_tilde` is the
/// triangle-density gap supplied by the caller; `eta` is the lower bound on
/// `Pr[f = 1]` used to size post-selection (the far-ness `ε`), defaulting to
/// `epsilon_tilde`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleParams {
    pub epsilon_tilde: f64,
    pub delta: f64,
    pub eta: f64,
    pub m: u64,
    pub delta_tilde: f64,
    pub step1_attempts: u64,
    /// SWAP tests per overlap, `⌈162 ln(6/δ̃)(6/ε̃)⁴⌉`.
    pub k: u64,
    /// Post-selection attempts per prepared copy, `⌈ln(2K/δ̃)/η⌉`.
    pub attempts: u64,
}

impl TriangleParams {
    pub fn new(epsilon_tilde: f64, delta: f64) -> Result<Self> {
        Self::with_eta(epsilon_tilde, delta, epsilon_tilde)
    }

    pub fn with_eta(epsilon_tilde: f64, delta: f64, eta: f64) -> Result<Self> {
        check_unit("epsilon_tilde", epsilon_tilde)?;
        check_unit("delta", delta)?;
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::InvalidParameter(format!("eta must lie in (0,1], got {eta}")));
        }
        let m = ceil_u64(18.0 * (10.0 / delta).ln() / (epsilon_tilde * epsilon_tilde));
        let delta_tilde = delta / (5.0 * m as f64);
        let step1_attempts = ceil_u64((m as f64 / delta_tilde).ln() / eta).max(1);
        let k = ceil_u64(162.0 * (6.0 / delta_tilde).ln() * (6.0 / epsilon_tilde).powi(4));
        let attempts = joint_attempts(k, delta_tilde, eta);
        Ok(Self { epsilon_tilde, delta, eta, m, delta_tilde, step1_attempts, k, attempts })
    }

    /// The per-run copy count of the theorem statement,
    /// `m·(2·2K·a + 2K)`, which leaves out step 1.
    pub fn theorem_copies(&self) -> u64 {
        self.m * (2 * 2 * self.k * self.attempts + 2 * self.k)
    }

    pub fn threshold(&self) -> f64 {
        self.epsilon_tilde / 2.0
    }
}

/// Fourier samples per MM run: `⌈2 ln(12)·81⌉`, enough for a `1/9`-accurate
/// estimate with confidence `5/6`.
pub fn mm_sample_count() -> u64 {
    ceil_u64(2.0 * 12f64.ln() * 81.0)
}

/// Majority-vote repetitions: 1 for `δ ≥ 1/3`, else `⌈18 ln(1/δ)⌉`.
pub fn mm_repetitions(delta: f64) -> u64 {
    if delta >= 1.0 / 3.0 {
        1
    } else {
        ceil_u64(18.0 * (1.0 / delta).ln())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntersectionParams {
    pub epsilon: f64,
    pub delta: f64,
    /// Successful Fourier samples for `Înf`, `⌈ln(6/δ)/(2(2ε/3)²)⌉`.
    pub fourier_samples: u64,
    /// Classical samples for each of `Â`, `B̂`, `⌈2 ln(6/δ)/(2ε/3)²⌉`.
    pub classical_samples: u64,
}

impl IntersectionParams {
    pub fn new(epsilon: f64, delta: f64) -> Result<Self> {
        check_unit("epsilon", epsilon)?;
        check_unit("delta", delta)?;
        let t = 2.0 * epsilon / 3.0;
        let l = (6.0 / delta).ln();
        Ok(Self {
            epsilon,
            delta,
            fourier_samples: ceil_u64(l / (2.0 * t * t)),
            classical_samples: ceil_u64(2.0 * l / (t * t)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotonicity_counts_at_n8() {
        let p = MonotonicityParams::new(8, 0.25, 0.1).unwrap();
        // ⌈64·ln 60 / (2·(1/12)²)⌉ = ⌈64·ln 60·72⌉
        assert_eq!(p.m2, (64.0 * 60f64.ln() * 72.0).ceil() as u64);
        assert_eq!(p.m1, 3 * p.m2);
        assert_eq!(p.m5, p.m4);
    }

    #[test]
    fn monotonicity_small_m2_uses_floor_term() {
        let p = MonotonicityParams::new(1, 0.99, 0.9).unwrap();
        assert_eq!(p.m1, (3 * p.m2).max((18.0 * (2.0 / 0.3f64).ln()).ceil() as u64));
    }

    #[test]
    fn symmetry_count() {
        assert_eq!(SymmetryParams::new(0.3, 0.1).unwrap().m, (9.0 * 20f64.ln() / 0.09).ceil() as u64);
    }

    #[test]
    fn triangle_counts() {
        let p = TriangleParams::new(0.2, 0.2).unwrap();
        assert_eq!(p.m, 1761);
        assert_eq!(p.delta_tilde, 0.2 / (5.0 * 1761.0));
        assert_eq!(p.k, (162.0 * (6.0 / p.delta_tilde).ln() * 30f64.powi(4)).ceil() as u64);
    }

    #[test]
    fn mm_constants() {
        assert_eq!(mm_sample_count(), 403);
        assert_eq!(mm_repetitions(0.5), 1);
        assert_eq!(mm_repetitions(0.1), 42);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(MonotonicityParams::new(3, 0.0, 0.1).is_err());
        assert!(SymmetryParams::new(0.3, 1.0).is_err());
        assert!(TriangleParams::with_eta(0.2, 0.2, 0.0).is_err());
    }
}
