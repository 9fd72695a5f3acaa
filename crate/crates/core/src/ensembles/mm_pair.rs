use rand::Rng;
use serde::Serialize;

use crate::boolfn::{mm, mm_dual, BooleanFunction};
use crate::error::{Error, Result};
use crate::qstate::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MmFamily {
    /// `mm(h)`, inside MM.
    F1,
    /// `mm_dual(h)`, far from MM.
    F2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MmPairSample {
    pub function: BooleanFunction,
    pub h: BooleanFunction,
    pub bias: f64,
    /// Number of `h` drawn before one passed the bias bound.
    pub draws: u64,
}

/// `|E_x (−1)^{h(x)}|`.
pub fn bias(h: &BooleanFunction) -> f64 {
    let len = h.len() as f64;
    (len - 2.0 * h.count_ones() as f64).abs() / len
}

/// `2^{−n/3}`.
pub fn bias_bound(n: usize) -> f64 {
    2f64.powf(-(n as f64) / 3.0)
}

const MAX_DRAWS: u64 = 1 << 20;

/// Rejection-samples a uniform `h` on `n` bits with `bias(h) ≤ 2^{−n/3}` and
/// returns `mm(h)` or `mm_dual(h)` on `2n` bits.
pub fn sample_mm_pair(n: usize, which: MmFamily, rng: &mut RngStream) -> Result<MmPairSample> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("MM pairs need n ≥ 3, got {n}")));
    }
    if 2 * n > crate::boolfn::MAX_ARITY {
        return Err(Error::Capability(format!("2n = {} exceeds the maximum arity", 2 * n)));
    }
    let bound = bias_bound(n);
    for draws in 1..=MAX_DRAWS {
        let h = BooleanFunction::from_fn(n, |_| rng.random_bool(0.5))?;
        let b = bias(&h);
        if b <= bound {
            let function = match which {
                MmFamily::F1 => mm(&h)?,
                MmFamily::F2 => mm_dual(&h)?,
            };
            return Ok(MmPairSample { function, h, bias: b, draws });
        }
    }
    Err(Error::InternalConsistency(format!("no h with bias ≤ {bound} in {MAX_DRAWS} draws")))
}
