//! Exact alternating sums for the twin-ensemble difference matrix.
//!
//! All sums are accumulated as big integers and divided by a power of two at
//! the end; a nonzero remainder means a transcription bug and is reported as
//! an internal-consistency error.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// `n`, `t` and `m` with `2m ≤ 2^n`. The alphabet is `Σ = {0,1}^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClosedFormParams {
    pub n: usize,
    pub t: usize,
    pub m: usize,
}

impl ClosedFormParams {
    pub fn new(n: usize, t: usize, m: usize) -> Result<Self> {
        if n > 62 {
            return Err(Error::Capability(format!("closed forms are evaluated for n ≤ 62, got {n}")));
        }
        if (2 * m) as u128 > 1u128 << n {
            return Err(Error::InvalidParameter(format!("2m = {} exceeds 2^n = {}", 2 * m, 1u128 << n)));
        }
        Ok(Self { n, t, m })
    }

    pub fn with_t(self, t: usize) -> Self {
        Self { t, ..self }
    }

    fn alphabet(&self) -> i64 {
        1i64 << self.n
    }
}

fn binomial_row(k: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for i in 0..k {
        let next = &row[i] * BigInt::from(k - i) / BigInt::from(i + 1);
        row.push(next);
    }
    row
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        BigInt::zero()
    } else {
        binomial_row(n).swap_remove(k)
    }
}

fn exact_shift(sum: BigInt, shift: usize, what: &str) -> Result<BigInt> {
    let mask = (BigInt::one() << shift) - 1;
    if !(&sum & &mask).is_zero() {
        return Err(Error::InternalConsistency(format!("{what}: sum is not divisible by 2^{shift}")));
    }
    Ok(sum >> shift)
}

fn pow(base: i64, t: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), t)
}

/// `T(t, p)`: strings of length `t` over `Σ` where `2p` marked symbols occur
/// an odd number of times, `2(m − p)` occur an even number of times and the
/// rest are free.
pub fn t_closed(params: &ClosedFormParams, p: usize) -> Result<BigInt> {
    let m = params.m;
    if p > m {
        return Err(Error::InvalidParameter(format!("p = {p} exceeds m = {m}")));
    }
    let (ce, co) = (binomial_row(2 * m - 2 * p), binomial_row(2 * p));
    let mut sum = BigInt::zero();
    for (j, cj) in ce.iter().enumerate() {
        for (k, ck) in co.iter().enumerate() {
            let term = cj * ck * pow(params.alphabet() - 2 * j as i64 - 2 * k as i64, params.t);
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
    }
    exact_shift(sum, 2 * m, "T")
}

/// `N(t, p)`: strings where each of `p` marked pairs has its two symbols at
/// different parities and each remaining pair has them at equal parity.
pub fn n_closed(params: &ClosedFormParams, p: usize) -> Result<BigInt> {
    let m = params.m;
    if p > m {
        return Err(Error::InvalidParameter(format!("p = {p} exceeds m = {m}")));
    }
    let (cp, cr) = (binomial_row(p), binomial_row(m - p));
    let mut sum = BigInt::zero();
    for (j, cj) in cp.iter().enumerate() {
        for (k, ck) in cr.iter().enumerate() {
            let term = cj * ck * pow(params.alphabet() - 4 * j as i64 - 4 * k as i64, params.t);
            if j % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
    }
    exact_shift(sum, m, "N")
}

/// `x₁(t) + x₂(t) = 2^{−m} Σ_k C(m,k) (2^n − 4k)^t`.
pub fn x1_plus_x2(params: &ClosedFormParams) -> Result<BigInt> {
    let mut sum = BigInt::zero();
    for (k, ck) in binomial_row(params.m).iter().enumerate() {
        sum += ck * pow(params.alphabet() - 4 * k as i64, params.t);
    }
    exact_shift(sum, params.m, "x1 + x2")
}

/// `x₁ = Σ_{p odd} C(m,p) T(t,p)`, `x₂ = Σ_{p even} C(m,p) T(t,p)`, checked
/// against [`x1_plus_x2`].
pub fn x1_x2_split(params: &ClosedFormParams) -> Result<(BigInt, BigInt)> {
    let row = binomial_row(params.m);
    let (mut x1, mut x2) = (BigInt::zero(), BigInt::zero());
    for p in 0..=params.m.min(params.t) {
        let term = &row[p] * t_closed(params, p)?;
        if p % 2 == 1 {
            x1 += term;
        } else {
            x2 += term;
        }
    }
    let total = x1_plus_x2(params)?;
    if &x1 + &x2 != total {
        return Err(Error::InternalConsistency(format!(
            "x1 + x2 = {} but the direct sum gives {total}",
            &x1 + &x2
        )));
    }
    Ok((x1, x2))
}

/// `num / 2^shift` as a float without overflowing on huge numerators.
pub fn ratio_pow2(num: &BigInt, shift: usize) -> f64 {
    let bits = num.bits() as i64;
    let drop = (bits - 62).max(0);
    let mantissa = (num.abs() >> drop as usize).to_f64().unwrap();
    let v = mantissa * 2f64.powi((drop - shift as i64) as i32);
    if num.is_negative() {
        -v
    } else {
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedFormNorm {
    /// `(2/2^{nt−1}) √(x₁x₂)`, the empty-type block.
    pub empty_type_term: f64,
    /// `(2/2^{nt−1}) Σ_{k≥1} C(m,k) N(t,k)/2`.
    pub star_term: f64,
    pub total: f64,
}

const CROSS_CHECK_TOL: f64 = 1e-9;

/// Trace norm of the difference matrix from its block structure. The star
/// term is computed from the `N` sum and again as
/// `2(1 − (x₁ + x₂)/2^{nt})`; the two must agree to `1e−9`.
pub fn trace_norm_closed_form(params: &ClosedFormParams) -> Result<ClosedFormNorm> {
    let nt = params.n * params.t;
    let (x1, x2) = x1_x2_split(params)?;
    let empty_type_term = 4.0 * ratio_pow2(&(&x1 * &x2), 2 * nt).sqrt();

    let row = binomial_row(params.m);
    let mut n_sum = BigInt::zero();
    for k in 1..=params.m.min(params.t) {
        n_sum += &row[k] * n_closed(params, k)?;
    }
    let star_term = 2.0 * ratio_pow2(&n_sum, nt);
    let via_identity = star_term_exact(params)?;
    if (star_term - via_identity).abs() > CROSS_CHECK_TOL {
        return Err(Error::InternalConsistency(format!(
            "star term {star_term} disagrees with 2(1 − (x1+x2)/2^nt) = {via_identity}"
        )));
    }
    Ok(ClosedFormNorm { empty_type_term, star_term, total: empty_type_term + star_term })
}

/// `2(1 − E_K[(1 − 4K/2^n)^t])`, `K ∼ Binomial(m, 1/2)`, evaluated exactly.
pub fn star_term_exact(params: &ClosedFormParams) -> Result<f64> {
    let nt = params.n * params.t;
    let full = BigInt::one() << nt;
    Ok(2.0 * ratio_pow2(&(full - x1_plus_x2(params)?), nt))
}
