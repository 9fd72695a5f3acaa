use super::{Decision, SymmetryParams, TesterVerdict};
use crate::boolfn::BooleanFunction;
use crate::error::Result;
use crate::qstate::{symmetric_subspace_measure, CopyLedger, RngStream};

/// `m = ⌈9 ln(2/δ)/ε²⌉` symmetric-subspace measurements; `v̂` is the
/// rejection frequency and the tester accepts iff `v̂ < ε/2`.
pub fn test_symmetry(
    f: &BooleanFunction,
    epsilon: f64,
    delta: f64,
    rng: &mut RngStream,
) -> Result<TesterVerdict> {
    let params = SymmetryParams::new(epsilon, delta)?;
    let mut ledger = CopyLedger::with_budget(params.m);
    let mut rejects = 0u64;
    for _ in 0..params.m {
        if !symmetric_subspace_measure(f, &mut ledger, rng)? {
            rejects += 1;
        }
    }
    let v_hat = rejects as f64 / params.m as f64;
    let decision = if v_hat < epsilon / 2.0 { Decision::Accept } else { Decision::Reject };
    Ok(TesterVerdict::new(decision, v_hat, &ledger)
        .diag("m", params.m as f64)
        .diag("threshold", epsilon / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::builtin;

    #[test]
    fn symmetric_never_rejected() {
        let v = test_symmetry(&builtin("parity", 6).unwrap(), 0.3, 0.1, &mut RngStream::new(0, 0)).unwrap();
        assert_eq!(v.statistic, 0.0);
        assert!(v.decision.is_accept());
        assert_eq!(v.copies_used, SymmetryParams::new(0.3, 0.1).unwrap().m);
    }

    #[test]
    fn dictator_rejected() {
        let v = test_symmetry(&builtin("dictator", 8).unwrap(), 0.3, 0.1, &mut RngStream::new(0, 1)).unwrap();
        assert_eq!(v.decision, Decision::Reject);
    }
}
