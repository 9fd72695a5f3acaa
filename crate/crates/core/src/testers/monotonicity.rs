use super::{Decision, MonotonicityParams, TesterVerdict};
use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};
use crate::qstate::{classical_histogram, CopyLedger, FourierSampler, RngStream};

/// Fourier-sampling monotonicity tester.
///
/// `m₁` copies are Fourier-sampled and the first `m₂` successes give
/// `Î = mean |S|`; `m₄` classical samples give `g̃ᵢ`. Then
/// `p̂ = (Î − Σᵢ g̃ᵢ)/2n` and the tester accepts iff `p̂ < ε/2n`. If fewer than
/// `m₂` of the `m₁` copies succeed it rejects and flags `shortfall`. `p̂` is
/// not clamped and can dip below zero.
pub fn test_monotonicity(
    f: &BooleanFunction,
    epsilon: f64,
    delta: f64,
    rng: &mut RngStream,
) -> Result<TesterVerdict> {
    let params = MonotonicityParams::new(f.arity(), epsilon, delta)?;
    let n = f.arity();
    let mut ledger = CopyLedger::with_budget(params.copies());

    let sampler = FourierSampler::new(f);
    let mut successes = 0u64;
    let mut size_sum = 0u64;
    for _ in 0..params.m1 {
        if let Some(s) = sampler.sample(&mut ledger, rng)? {
            if successes < params.m2 {
                size_sum += s.count_ones() as u64;
            }
            successes += 1;
        }
    }
    let shortfall = successes < params.m2;
    let i_hat = size_sum as f64 / params.m2 as f64;

    let hist = classical_histogram(f, params.m4, &mut ledger, rng)?;
    let mut g_sum = 0.0;
    for i in 0..n {
        let bit = 1u32 << (n - 1 - i);
        let mut acc: i64 = 0;
        for (x, &c) in hist.iter().enumerate() {
            let x = x as u32;
            let odd = (x & bit != 0) ^ f.get(x);
            acc += if odd { -(c as i64) } else { c as i64 };
        }
        g_sum += acc as f64 / params.m5 as f64;
    }
    let p_hat = (i_hat - g_sum) / (2.0 * n as f64);

    if ledger.consumed() != params.copies() {
        return Err(Error::InternalConsistency(format!(
            "monotonicity tester drew {} copies, expected m₁+m₄ = {}",
            ledger.consumed(),
            params.copies()
        )));
    }

    let decision = if !shortfall && p_hat < params.threshold() {
        Decision::Accept
    } else {
        Decision::Reject
    };
    let nf = n as f64;
    let scale = nf * nf * (nf / delta).ln() / (epsilon * epsilon);
    let mut v = TesterVerdict::new(decision, p_hat, &ledger)
        .diag("i_hat", i_hat)
        .diag("g_sum", g_sum)
        .diag("fourier_successes", successes as f64)
        .diag("m1", params.m1 as f64)
        .diag("m2", params.m2 as f64)
        .diag("m4", params.m4 as f64)
        .diag("threshold", params.threshold())
        .diag("copy_constant", ledger.consumed() as f64 / scale);
    if shortfall {
        v.flags.push("shortfall".into());
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::builtin;

    #[test]
    fn copies_are_exact() {
        let f = builtin("majority", 5).unwrap();
        let p = MonotonicityParams::new(5, 0.3, 0.2).unwrap();
        let v = test_monotonicity(&f, 0.3, 0.2, &mut RngStream::new(1, 1)).unwrap();
        assert_eq!(v.copies_used, p.m1 + p.m4);
    }

    #[test]
    fn dictator_accepted_antidictator_rejected() {
        let mut r = RngStream::new(2, 0);
        let d = builtin("dictator", 5).unwrap();
        let a = builtin("antidictator", 5).unwrap();
        assert!(test_monotonicity(&d, 0.3, 0.2, &mut r).unwrap().decision.is_accept());
        assert!(!test_monotonicity(&a, 0.3, 0.2, &mut r).unwrap().decision.is_accept());
    }

    #[test]
    fn deterministic_under_seed() {
        let f = builtin("or", 4).unwrap();
        let a = test_monotonicity(&f, 0.3, 0.2, &mut RngStream::new(5, 9)).unwrap();
        let b = test_monotonicity(&f, 0.3, 0.2, &mut RngStream::new(5, 9)).unwrap();
        assert_eq!(a, b);
    }
}
