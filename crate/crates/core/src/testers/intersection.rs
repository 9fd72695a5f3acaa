use serde::Serialize;

use super::IntersectionParams;
use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};
use crate::qstate::{classical_histogram, CopyLedger, FourierSampler, RngStream};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntersectionEstimate {
    /// Estimate of `|A∩B|/2^n`.
    pub estimate: f64,
    pub inf_hat: f64,
    pub a_hat: f64,
    pub b_hat: f64,
    pub copies_used: u64,
}

/// 2-fold intersection size for `f = pair(A, B)` on `n+1` bits.
///
/// `Înf` is the fraction of successful Fourier samples containing the last
/// coordinate, `Â` and `B̂` come from two independent batches of classical
/// samples, and the output is `((1 − 2Înf) + 2Â + 2B̂ − 1)/4`.
pub fn estimate_intersection2(
    f: &BooleanFunction,
    epsilon: f64,
    delta: f64,
    rng: &mut RngStream,
) -> Result<IntersectionEstimate> {
    if f.arity() < 2 {
        return Err(Error::Arity("pair encodings have arity n + 1 ≥ 2".into()));
    }
    let params = IntersectionParams::new(epsilon, delta)?;
    let mut ledger = CopyLedger::unlimited();

    let sampler = FourierSampler::new(f);
    let (mut got, mut hits) = (0u64, 0u64);
    while got < params.fourier_samples {
        if let Some(s) = sampler.sample(&mut ledger, rng)? {
            got += 1;
            hits += (s & 1) as u64;
        }
    }
    let inf_hat = hits as f64 / got as f64;

    // Pr[a = slice, f = 1] = |set|/2^{n+1}
    let mut slice_estimate = |slice: u32, ledger: &mut CopyLedger| -> Result<f64> {
        let hist = classical_histogram(f, params.classical_samples, ledger, rng)?;
        let count: u64 = hist
            .iter()
            .enumerate()
            .filter(|&(z, _)| z as u32 & 1 == slice && f.get(z as u32))
            .map(|(_, &c)| c)
            .sum();
        Ok(2.0 * count as f64 / params.classical_samples as f64)
    };
    let a_hat = slice_estimate(0, &mut ledger)?;
    let b_hat = slice_estimate(1, &mut ledger)?;

    let estimate = ((1.0 - 2.0 * inf_hat) + 2.0 * a_hat + 2.0 * b_hat - 1.0) / 4.0;
    Ok(IntersectionEstimate { estimate, inf_hat, a_hat, b_hat, copies_used: ledger.consumed() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{builtin, pair};

    #[test]
    fn full_sets() {
        let one = builtin("constant1", 6).unwrap();
        let f = pair(&one, &one).unwrap();
        let e = estimate_intersection2(&f, 0.1, 0.1, &mut RngStream::new(0, 0)).unwrap();
        assert!((e.estimate - 1.0).abs() <= 0.1);
        assert_eq!(e.inf_hat, 0.0);
    }

    #[test]
    fn disjoint_halves() {
        let a = builtin("dictator", 6).unwrap();
        let b = a.complement();
        let f = pair(&a, &b).unwrap();
        let e = estimate_intersection2(&f, 0.1, 0.1, &mut RngStream::new(0, 1)).unwrap();
        assert!(e.estimate.abs() <= 0.1);
        assert_eq!(e.inf_hat, 1.0);
    }
}
