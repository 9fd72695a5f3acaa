use super::{mm_repetitions, mm_sample_count, Decision, TesterVerdict};
use crate::boolfn::BooleanFunction;
use crate::error::Result;
use crate::qstate::{check_unit, ip_transform, CopyLedger, FourierSampler, RngStream};

/// Maiorana–McFarland membership on `2n` bits.
///
/// Each repetition Fourier-samples `f̃ = f ⊕ ⟨x,y⟩` until `C = 403` samples
/// succeed and computes `p̂`, the fraction of samples touching the `y` half
/// `J = {n+1, …, 2n}`. A repetition votes Reject iff `p̂ > 1/9`. With
/// `δ < 1/3` there are `⌈18 ln(1/δ)⌉` repetitions and the tester rejects iff
/// a strict majority votes Reject. The statistic is the mean `p̂`.
pub fn test_mm(f: &BooleanFunction, delta: f64, rng: &mut RngStream) -> Result<TesterVerdict> {
    check_unit("delta", delta)?;
    let tilde = ip_transform(f)?;
    let n = f.arity() / 2;
    let j_mask = (1u32 << n) - 1;
    let sampler = FourierSampler::new(&tilde);
    let c = mm_sample_count();
    let reps = mm_repetitions(delta);
    let mut ledger = CopyLedger::unlimited();
    let mut reject_votes = 0u64;
    let mut p_sum = 0.0;
    for _ in 0..reps {
        let mut got = 0u64;
        let mut hits = 0u64;
        while got < c {
            if let Some(s) = sampler.sample(&mut ledger, rng)? {
                got += 1;
                hits += (s & j_mask != 0) as u64;
            }
        }
        let p_hat = hits as f64 / c as f64;
        p_sum += p_hat;
        if p_hat > 1.0 / 9.0 {
            reject_votes += 1;
        }
    }
    let decision = if 2 * reject_votes > reps { Decision::Reject } else { Decision::Accept };
    Ok(TesterVerdict::new(decision, p_sum / reps as f64, &ledger)
        .diag("repetitions", reps as f64)
        .diag("reject_votes", reject_votes as f64)
        .diag("samples_per_repetition", c as f64))
}
