//! Subset states `|S⟩ = |S|^{−1/2} Σ_{x∈S} |x⟩`, post-selection, SWAP tests
//! and the overlap-based estimators built on them.

use rand::Rng;
use rand_distr::{Binomial, Distribution, Geometric};

use super::{CopyLedger, RngStream};
use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetState {
    members: BooleanFunction,
    size: u64,
}

impl SubsetState {
    /// The state on the support of `indicator`. Fails on an empty set.
    pub fn from_indicator(indicator: BooleanFunction) -> Result<Self> {
        let size = indicator.count_ones() as u64;
        if size == 0 {
            return Err(Error::InvalidParameter("subset state needs a nonempty member set".into()));
        }
        Ok(Self { members: indicator, size })
    }

    pub fn from_members(n: usize, members: &[u32]) -> Result<Self> {
        let mut ind = BooleanFunction::zeros(n)?;
        for &x in members {
            if (x as usize) >= ind.len() {
                return Err(Error::Arity(format!("member {x} does not fit in {n} bits")));
            }
            ind.set(x, true);
        }
        Self::from_indicator(ind)
    }

    /// Uniform superposition over the whole cube.
    pub fn full(n: usize) -> Result<Self> {
        Self::from_indicator(BooleanFunction::zeros(n)?.complement())
    }

    /// `|{x : f(x) = b}⟩`, or `None` when that preimage is empty.
    pub fn preimage(f: &BooleanFunction, b: bool) -> Option<Self> {
        let ind = if b { f.clone() } else { f.complement() };
        Self::from_indicator(ind).ok()
    }

    pub fn arity(&self) -> usize {
        self.members.arity()
    }

    pub fn len(&self) -> u64 {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members.get(x)
    }

    pub fn indicator(&self) -> &BooleanFunction {
        &self.members
    }

    /// `⟨S|T⟩ = |S∩T| / √(|S||T|)`.
    pub fn overlap(&self, other: &Self) -> Result<f64> {
        let common = self.members.and(&other.members)?.count_ones() as f64;
        Ok(common / ((self.size as f64) * (other.size as f64)).sqrt())
    }
}

/// Measures the output qubit of up to `attempts` copies, stopping at the
/// first outcome `b`. Returns `None` (FAIL) if it never occurs. The ledger is
/// charged for the copies actually measured.
pub fn postselect_subset(
    f: &BooleanFunction,
    b: bool,
    attempts: u64,
    ledger: &mut CopyLedger,
    rng: &mut RngStream,
) -> Result<Option<SubsetState>> {
    if attempts == 0 {
        return Err(Error::InvalidParameter("post-selection needs at least one attempt".into()));
    }
    ledger.ensure(attempts)?;
    let q = preimage_fraction(f, b);
    if q == 0.0 {
        ledger.charge(attempts)?;
        return Ok(None);
    }
    // Failures before the first success.
    let failures = Geometric::new(q).expect("q in (0, 1]").sample(rng);
    if failures >= attempts {
        ledger.charge(attempts)?;
        return Ok(None);
    }
    ledger.charge(failures + 1)?;
    Ok(SubsetState::preimage(f, b))
}

/// Prepares `count` copies of `|f^{−1}(b)⟩` from `count·attempts` copies,
/// running one post-selection block of `attempts` per output copy. All input
/// copies are consumed. FAIL iff some block sees no `b`, which happens with
/// probability `1 − (1 − (1−q)^attempts)^count`.
pub fn postselect_copies(
    f: &BooleanFunction,
    b: bool,
    count: u64,
    attempts: u64,
    ledger: &mut CopyLedger,
    rng: &mut RngStream,
) -> Result<Option<SubsetState>> {
    if attempts == 0 || count == 0 {
        return Err(Error::InvalidParameter("post-selection needs count, attempts ≥ 1".into()));
    }
    let total = count
        .checked_mul(attempts)
        .ok_or_else(|| Error::Capability("post-selection copy count overflows u64".into()))?;
    ledger.charge(total)?;
    let q = preimage_fraction(f, b);
    if rng.random_bool(all_blocks_succeed(q, count, attempts)) {
        Ok(SubsetState::preimage(f, b))
    } else {
        Ok(None)
    }
}

/// `(1 − (1−q)^a)^c`, evaluated in log space.
pub fn all_blocks_succeed(q: f64, count: u64, attempts: u64) -> f64 {
    if q <= 0.0 {
        return 0.0;
    }
    if q >= 1.0 {
        return 1.0;
    }
    let block_fail = (attempts as f64 * (-q).ln_1p()).exp();
    (count as f64 * (-block_fail).ln_1p()).exp().clamp(0.0, 1.0)
}

fn preimage_fraction(f: &BooleanFunction, b: bool) -> f64 {
    let ones = f.count_ones();
    let hits = if b { ones } else { f.len() - ones };
    hits as f64 / f.len() as f64
}

/// SWAP test acceptance probability `(1 + |⟨a|b⟩|²)/2`.
pub fn swap_accept_probability(a: &SubsetState, b: &SubsetState) -> Result<f64> {
    let o = a.overlap(b)?;
    Ok(((1.0 + o * o) / 2.0).clamp(0.5, 1.0))
}

/// One SWAP test; `true` means accept.
pub fn swap_test(a: &SubsetState, b: &SubsetState, rng: &mut RngStream) -> Result<bool> {
    Ok(rng.random_bool(swap_accept_probability(a, b)?))
}

/// `⌈2 ln(2/δ)/ε⁴⌉` SWAP tests for an `ε`-accurate overlap.
pub fn overlap_test_count(epsilon: f64, delta: f64) -> u64 {
    (2.0 * (2.0 / delta).ln() / epsilon.powi(4)).ceil() as u64
}

/// `μ̂ = √max(0, 2(ô − 1/2))` from `tests` SWAP tests at overlap `overlap`.
/// The accept count is drawn as one binomial, which has the same law as
/// running the tests one by one.
pub fn overlap_from_swap_tests(overlap: f64, tests: u64, rng: &mut RngStream) -> f64 {
    let p = ((1.0 + overlap * overlap) / 2.0).clamp(0.5, 1.0);
    let accepts = Binomial::new(tests, p).expect("p in [1/2, 1]").sample(rng);
    let o_hat = accepts as f64 / tests as f64;
    (2.0 * (o_hat - 0.5)).max(0.0).sqrt()
}

pub fn estimate_overlap(
    a: &SubsetState,
    b: &SubsetState,
    epsilon: f64,
    delta: f64,
    rng: &mut RngStream,
) -> Result<f64> {
    check_unit("epsilon", epsilon)?;
    check_unit("delta", delta)?;
    let overlap = a.overlap(b)?;
    Ok(overlap_from_swap_tests(overlap, overlap_test_count(epsilon, delta), rng))
}

pub(crate) fn check_unit(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::InvalidParameter(format!("{name} must lie in (0,1), got {v}")));
    }
    Ok(())
}

/// Inputs to the joint-membership estimator: estimates
/// `Pr_x[f(x) = b, f′(x ⊕ shift) = b′]`. `eta` lower-bounds both preimage
/// fractions and sets the post-selection attempts per output copy.
#[derive(Debug, Clone, Copy)]
pub struct JointMembership<'a> {
    pub f: &'a BooleanFunction,
    pub b: bool,
    pub f_prime: &'a BooleanFunction,
    pub b_prime: bool,
    pub shift: u32,
    pub eta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JointEstimate {
    pub gamma: f64,
    pub alpha: f64,
    pub alpha_prime: f64,
    pub beta: f64,
}

/// SWAP tests per overlap, `K = ⌈162 ln(6/δ)/ε⁴⌉`.
pub fn joint_swap_count(epsilon: f64, delta: f64) -> u64 {
    (162.0 * (6.0 / delta).ln() / epsilon.powi(4)).ceil() as u64
}

/// Post-selection attempts per prepared copy, `⌈ln(2K/δ)/η⌉`.
pub fn joint_attempts(k: u64, delta: f64, eta: f64) -> u64 {
    ((2.0 * k as f64 / delta).ln() / eta).ceil().max(1.0) as u64
}

/// Copies of the function state consumed by a run that does not FAIL:
/// `2·(2K·a) + 2K`.
pub fn joint_copy_count(epsilon: f64, delta: f64, eta: f64) -> u64 {
    let k = joint_swap_count(epsilon, delta);
    2 * 2 * k * joint_attempts(k, delta, eta) + 2 * k
}

/// `γ̂ = β̂·α̂·α̂′`: post-select `2K` copies of each of `|f^{−1}(b)⟩` and
/// `|(f′∘shift)^{−1}(b′)⟩`, then estimate three overlaps at accuracy `ε/3`
/// from `K` SWAP tests each, the `α` overlaps against `K` fresh copies of the
/// respective function state. Returns `None` on FAIL; on a FAIL of the first
/// preparation the second is never started.
pub fn estimate_joint_membership(
    q: &JointMembership<'_>,
    epsilon: f64,
    delta: f64,
    ledger: &mut CopyLedger,
    rng: &mut RngStream,
) -> Result<Option<JointEstimate>> {
    check_unit("epsilon", epsilon)?;
    check_unit("delta", delta)?;
    if !(q.eta > 0.0 && q.eta <= 1.0) {
        return Err(Error::InvalidParameter(format!("eta must lie in (0,1], got {}", q.eta)));
    }
    let k = joint_swap_count(epsilon, delta);
    let attempts = joint_attempts(k, delta, q.eta);
    joint_membership_with_counts(q, k, attempts, ledger, rng)
}

/// The estimator with explicit SWAP-test count `k` and post-selection
/// attempts per copy, for callers whose formulas fix these differently.
pub fn joint_membership_with_counts(
    q: &JointMembership<'_>,
    k: u64,
    attempts: u64,
    ledger: &mut CopyLedger,
    rng: &mut RngStream,
) -> Result<Option<JointEstimate>> {
    if q.f.arity() != q.f_prime.arity() {
        return Err(Error::Arity("joint membership needs equal arities".into()));
    }
    let shifted = super::shift_by_index(q.f_prime, q.shift);

    let Some(s) = postselect_copies(q.f, q.b, 2 * k, attempts, ledger, rng)? else {
        return Ok(None);
    };
    let Some(s_prime) = postselect_copies(&shifted, q.b_prime, 2 * k, attempts, ledger, rng)? else {
        return Ok(None);
    };
    ledger.charge(2 * k)?;

    let n = q.f.arity();
    let full = SubsetState::full(n)?;
    // ⟨Ψ|Ψ_{f,b}⟩ = √(|f^{−1}(b)|/2^n) equals the overlap of |f^{−1}(b)⟩ with
    // the uniform state on the cube.
    let alpha = overlap_from_swap_tests(full.overlap(&s)?, k, rng);
    let alpha_prime = overlap_from_swap_tests(full.overlap(&s_prime)?, k, rng);
    let beta = overlap_from_swap_tests(s.overlap(&s_prime)?, k, rng);
    Ok(Some(JointEstimate { gamma: beta * alpha * alpha_prime, alpha, alpha_prime, beta }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::builtin;

    fn three_sigma(hits: u64, trials: u64, p: f64) -> bool {
        let sd = (trials as f64 * p * (1.0 - p)).sqrt();
        (hits as f64 - trials as f64 * p).abs() <= 3.0 * sd + 1e-9
    }

    #[test]
    fn postselect_constant_one() {
        let f = builtin("constant1", 4).unwrap();
        let mut l = CopyLedger::unlimited();
        let mut r = RngStream::new(0, 0);
        let s = postselect_subset(&f, true, 1, &mut l, &mut r).unwrap().unwrap();
        assert_eq!(s.len(), 16);
        assert_eq!(l.consumed(), 1);
    }

    #[test]
    fn postselect_impossible_fails_and_charges_all() {
        let f = builtin("constant0", 4).unwrap();
        let mut l = CopyLedger::unlimited();
        let mut r = RngStream::new(0, 0);
        assert!(postselect_subset(&f, true, 17, &mut l, &mut r).unwrap().is_none());
        assert_eq!(l.consumed(), 17);
        assert!(postselect_subset(&f, true, 1, &mut CopyLedger::with_budget(0), &mut r).is_err());
    }

    #[test]
    fn postselect_fail_rate() {
        // q = 1/16 for AND on 4 bits; (1 − q)^8 ≈ 0.5967.
        let f = builtin("and", 4).unwrap();
        let mut r = RngStream::new(9, 0);
        let runs = 20_000;
        let fails = (0..runs)
            .filter(|_| postselect_subset(&f, true, 8, &mut CopyLedger::unlimited(), &mut r).unwrap().is_none())
            .count() as u64;
        assert!(three_sigma(fails, runs, (15.0f64 / 16.0).powi(8)));
    }

    #[test]
    fn block_success_probability() {
        assert_eq!(all_blocks_succeed(0.0, 3, 5), 0.0);
        assert_eq!(all_blocks_succeed(1.0, 3, 5), 1.0);
        let direct = (1.0 - 0.75f64.powi(4)).powi(3);
        assert!((all_blocks_succeed(0.25, 3, 4) - direct).abs() < 1e-14);
    }

    #[test]
    fn swap_probabilities() {
        let a = SubsetState::from_members(2, &[0b00, 0b01]).unwrap();
        let b = SubsetState::from_members(2, &[0b00, 0b10]).unwrap();
        let c = SubsetState::from_members(2, &[0b11]).unwrap();
        assert_eq!(a.overlap(&b).unwrap(), 0.5);
        assert_eq!(swap_accept_probability(&a, &b).unwrap(), 0.625);
        assert_eq!(swap_accept_probability(&a, &a).unwrap(), 1.0);
        assert_eq!(swap_accept_probability(&a, &c).unwrap(), 0.5);
        let mut r = RngStream::new(1, 1);
        let hits = (0..100_000).filter(|_| swap_test(&a, &b, &mut r).unwrap()).count() as u64;
        assert!(three_sigma(hits, 100_000, 0.625));
        assert!(a.overlap(&SubsetState::full(3).unwrap()).is_err());
    }

    #[test]
    fn overlap_estimates() {
        assert_eq!(overlap_test_count(0.3, 0.1), 740);
        let a = SubsetState::from_members(3, &[1, 2, 3]).unwrap();
        let c = SubsetState::from_members(3, &[4, 5]).unwrap();
        let mut r = RngStream::new(2, 2);
        let mut close = 0;
        for _ in 0..100 {
            let same = estimate_overlap(&a, &a, 0.2, 0.1, &mut r).unwrap();
            assert!((0.8..=1.0).contains(&same));
            close += (estimate_overlap(&a, &c, 0.2, 0.1, &mut r).unwrap() <= 0.2) as u32;
        }
        assert!(close >= 90);
    }

    #[test]
    fn joint_membership_trivial_cases() {
        let one = builtin("constant1", 3).unwrap();
        let zero = builtin("constant0", 3).unwrap();
        let mut r = RngStream::new(3, 3);
        let q = JointMembership { f: &one, b: true, f_prime: &one, b_prime: true, shift: 0, eta: 0.5 };
        let mut l = CopyLedger::unlimited();
        let est = estimate_joint_membership(&q, 0.2, 0.1, &mut l, &mut r).unwrap().unwrap();
        assert!(est.gamma > 0.8);
        assert_eq!(l.consumed(), joint_copy_count(0.2, 0.1, 0.5));

        let q = JointMembership { f_prime: &zero, ..q };
        let mut l = CopyLedger::unlimited();
        assert!(estimate_joint_membership(&q, 0.2, 0.1, &mut l, &mut r).unwrap().is_none());
        let k = joint_swap_count(0.2, 0.1);
        assert_eq!(l.consumed(), 2 * 2 * k * joint_attempts(k, 0.1, 0.5));
    }
}
