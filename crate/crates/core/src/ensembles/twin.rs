use rand::Rng;
use serde::Serialize;

use super::Matching;
use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};
use crate::qstate::RngStream;

/// A member `f_{A,B}^{(variant)}` of the twin ensembles over a matching `M`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwinFunction {
    #[serde(skip)]
    pub base: BooleanFunction,
    pub variant: u8,
    /// `in_a[i]` is true iff pair `i` of the matching lies in `A`.
    pub in_a: Vec<bool>,
    pub b_size: usize,
}

/// `g(x) = 1` iff `|x| ≥ n/2`, the background off `∪M`.
pub fn background(n: usize) -> Result<BooleanFunction> {
    BooleanFunction::from_fn(n, |x| 2 * x.count_ones() as usize >= n)
}

/// Values `(f(u), f(v))` on a pair, by variant and side.
pub fn pair_values(variant: u8, in_a: bool) -> (bool, bool) {
    match (variant, in_a) {
        (0, true) => (true, true),
        (0, false) => (false, false),
        (_, true) => (true, false),
        (_, false) => (false, true),
    }
}

/// Builds `f_{A,B}^{(variant)}` for an explicit bipartition.
pub fn twin_function(m: &Matching, variant: u8, in_a: &[bool]) -> Result<TwinFunction> {
    if variant > 1 {
        return Err(Error::InvalidParameter(format!("variant must be 0 or 1, got {variant}")));
    }
    if in_a.len() != m.achieved_m() {
        return Err(Error::InvalidParameter(format!(
            "bipartition has {} labels for {} pairs",
            in_a.len(),
            m.achieved_m()
        )));
    }
    let mut base = background(m.n())?;
    for (&(u, v), &a) in m.pairs().iter().zip(in_a) {
        let (fu, fv) = pair_values(variant, a);
        base.set(u, fu);
        base.set(v, fv);
    }
    let b_size = in_a.iter().filter(|&&a| !a).count();
    Ok(TwinFunction { base, variant, in_a: in_a.to_vec(), b_size })
}

/// Draws a uniform bipartition `A ⊔ B` and builds the twin function.
pub fn sample_twin(m: &Matching, variant: u8, rng: &mut RngStream) -> Result<TwinFunction> {
    let in_a: Vec<bool> = (0..m.achieved_m()).map(|_| rng.random_bool(0.5)).collect();
    twin_function(m, variant, &in_a)
}

impl TwinFunction {
    pub fn a_size(&self) -> usize {
        self.in_a.len() - self.b_size
    }

    /// Pairs whose values `(1, 0)` break monotonicity (variant 1, side `A`).
    pub fn violating_pairs(&self) -> usize {
        if self.variant == 1 {
            self.a_size()
        } else {
            0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{exact_distance_to_monotone, is_monotone};
    use crate::ensembles::build_layer_matching;

    #[test]
    fn variant_zero_is_monotone() {
        let mut r = RngStream::new(4, 0);
        for n in 2..=10 {
            let m = build_layer_matching(n, 1 << 10, &mut r).unwrap();
            for _ in 0..20 {
                assert!(is_monotone(&sample_twin(&m, 0, &mut r).unwrap().base));
            }
        }
    }

    #[test]
    fn variant_one_all_b() {
        let mut r = RngStream::new(5, 0);
        let m = build_layer_matching(6, 100, &mut r).unwrap();
        let all_b = vec![false; m.achieved_m()];
        let f = twin_function(&m, 1, &all_b).unwrap();
        assert_eq!(f.b_size, m.achieved_m());
        for &(u, v) in m.pairs() {
            assert!(!f.base.get(u) && f.base.get(v));
        }
        // (0,1) pairs agree with the background, so this one is monotone
        assert!(is_monotone(&f.base));
    }

    #[test]
    fn background_off_matching() {
        let mut r = RngStream::new(6, 0);
        let m = build_layer_matching(7, 100, &mut r).unwrap();
        let f = sample_twin(&m, 1, &mut r).unwrap();
        let g = background(7).unwrap();
        let member = m.membership();
        for x in 0..128u32 {
            if member[x as usize].is_none() {
                assert_eq!(f.base.get(x), g.get(x));
            }
        }
    }

    // Each violating pair needs one flip, and flips for distinct pairs are
    // distinct points, so the distance is exactly |A| when the matching
    // pairs are the only violations.
    #[test]
    fn variant_one_distance_counts_a_pairs() {
        let mut r = RngStream::new(7, 0);
        for n in 3..=5 {
            let m = build_layer_matching(n, 100, &mut r).unwrap();
            for _ in 0..5 {
                let f = sample_twin(&m, 1, &mut r).unwrap();
                let d = exact_distance_to_monotone(&f.base).unwrap();
                assert_eq!(d.flips, f.violating_pairs() as u64);
            }
        }
    }
}
