use rand::Rng;

use super::{Decision, TesterVerdict, TriangleParams};
use crate::boolfn::BooleanFunction;
use crate::error::Result;
use crate::qstate::{joint_membership_with_counts, postselect_subset, CopyLedger, JointMembership, RngStream};

/// Triangle-freeness tester, run for `m` iterations:
///
/// 1. post-select a copy on `f = 1` within `step1_attempts` copies and read
///    out `yᵢ`;
/// 2. and 3. prepare `2K` copies each of `|f^{−1}(1)⟩` and of its shift by
///    `yᵢ`, `a` attempts per copy;
/// 4. `μ̂ᵢ` = joint-membership estimate of `Pr_x[f(x) = 1 = f(x⊕yᵢ)]`.
///
/// A FAIL anywhere aborts the iteration with `μ̂ᵢ = 0`. Accepts iff the mean
/// `μ̂` is below `ε̃/2`. Diagnostics compare actual copies with the theorem
/// statement's count, which omits step 1 and assumes no aborts.
pub fn test_triangle_freeness(
    f: &BooleanFunction,
    params: &TriangleParams,
    rng: &mut RngStream,
) -> Result<TesterVerdict> {
    let mut ledger = CopyLedger::unlimited();
    let support = f.support();
    let mut mu_sum = 0.0;
    let mut aborted = 0u64;
    let mut step1_copies = 0u64;
    for _ in 0..params.m {
        let before = ledger.consumed();
        let found = postselect_subset(f, true, params.step1_attempts, &mut ledger, rng)?;
        step1_copies += ledger.consumed() - before;
        if found.is_none() {
            aborted += 1;
            continue;
        }
        let y = support[rng.random_range(0..support.len())];
        let query = JointMembership { f, b: true, f_prime: f, b_prime: true, shift: y, eta: params.eta };
        match joint_membership_with_counts(&query, params.k, params.attempts, &mut ledger, rng)? {
            Some(est) => mu_sum += est.gamma,
            None => aborted += 1,
        }
    }
    let mean = mu_sum / params.m as f64;
    let decision = if mean < params.threshold() { Decision::Accept } else { Decision::Reject };
    let theorem = params.theorem_copies();
    let mut v = TesterVerdict::new(decision, mean, &ledger)
        .diag("m", params.m as f64)
        .diag("k", params.k as f64)
        .diag("attempts_per_copy", params.attempts as f64)
        .diag("step1_copies", step1_copies as f64)
        .diag("theorem_copies", theorem as f64)
        .diag("copies_minus_theorem", ledger.consumed() as f64 - theorem as f64)
        .diag("threshold", params.threshold());
    v.aborted_iterations = aborted;
    if ledger.consumed() != theorem {
        v.flags.push("copies_differ_from_theorem_count".into());
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::builtin;

    #[test]
    fn zero_function_aborts_everything() {
        let p = TriangleParams::new(0.3, 0.3).unwrap();
        let v = test_triangle_freeness(&builtin("constant0", 5).unwrap(), &p, &mut RngStream::new(0, 0)).unwrap();
        assert_eq!(v.statistic, 0.0);
        assert_eq!(v.aborted_iterations, p.m);
        assert_eq!(v.copies_used, p.m * p.step1_attempts);
        assert!(v.decision.is_accept());
    }

    #[test]
    fn constant_one_rejected() {
        let p = TriangleParams::new(0.3, 0.3).unwrap();
        let v = test_triangle_freeness(&builtin("constant1", 5).unwrap(), &p, &mut RngStream::new(0, 1)).unwrap();
        assert_eq!(v.decision, Decision::Reject);
        // step 1 always succeeds on its first copy
        assert_eq!(v.copies_used, p.theorem_copies() + p.m);
    }

    #[test]
    fn halfspace_accepted() {
        let p = TriangleParams::new(0.3, 0.3).unwrap();
        let v = test_triangle_freeness(&builtin("dictator", 5).unwrap(), &p, &mut RngStream::new(0, 2)).unwrap();
        assert!(v.decision.is_accept());
        assert!(v.statistic < 0.05);
    }
}
