//! Single-copy measurements on function states `2^{−n/2} Σₓ |x, f(x)⟩`.
//! Each primitive computes its exact outcome distribution from the truth
//! table and samples it, charging the ledger one copy per measurement.

use rand::{Rng, RngCore};
use rand_distr::weighted::WeightedAliasIndex;
use rand_distr::Distribution;

use super::{CopyLedger, RngStream};
use crate::boolfn::{symmetry_violation_probability, walsh_transform, BooleanFunction};
use crate::error::Result;

/// Measures one copy in the computational basis: a uniform `x` and `f(x)`.
pub fn sample_classical(
    f: &BooleanFunction,
    ledger: &mut CopyLedger,
    rng: &mut RngStream,
) -> Result<(u32, bool)> {
    ledger.charge(1)?;
    let x = uniform_index(f.arity(), rng);
    Ok((x, f.get(x)))
}

/// Histogram of `copies` classical samples over the inputs; `hist[x]` is the
/// number of draws of `x`. Distributed exactly like `copies` calls of
/// [`sample_classical`].
pub fn classical_histogram(
    f: &BooleanFunction,
    copies: u64,
    ledger: &mut CopyLedger,
    rng: &mut RngStream,
) -> Result<Vec<u64>> {
    ledger.charge(copies)?;
    let mut hist = vec![0u64; f.len()];
    for _ in 0..copies {
        hist[uniform_index(f.arity(), rng) as usize] += 1;
    }
    Ok(hist)
}

#[inline]
fn uniform_index(n: usize, rng: &mut RngStream) -> u32 {
    if n == 32 {
        rng.next_u32()
    } else {
        rng.next_u32() & ((1u32 << n) - 1)
    }
}

/// Fourier sampling from the function state: the last qubit comes out `1`
/// with probability exactly 1/2, and then `S` is distributed as `ĝ(S)²`.
/// The alias table is built once so per-copy cost is constant.
#[derive(Debug, Clone)]
pub struct FourierSampler {
    arity: usize,
    alias: WeightedAliasIndex<f64>,
    weights: Vec<f64>,
}

impl FourierSampler {
    pub fn new(f: &BooleanFunction) -> Self {
        let weights = walsh_transform(f).weights();
        let alias = WeightedAliasIndex::new(weights.clone())
            .expect("Fourier weights are nonnegative with unit sum");
        Self { arity: f.arity(), alias, weights }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// The conditional distribution `ĝ(S)²` being sampled.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// One copy: `None` on the flagged failure branch, otherwise `S`.
    pub fn sample(&self, ledger: &mut CopyLedger, rng: &mut RngStream) -> Result<Option<u32>> {
        ledger.charge(1)?;
        if rng.random_bool(0.5) {
            Ok(Some(self.alias.sample(rng) as u32))
        } else {
            Ok(None)
        }
    }
}

/// Fourier-samples one copy of `f`. Rebuilds the alias table on each call;
/// use [`FourierSampler`] in loops.
pub fn fourier_sample(
    f: &BooleanFunction,
    ledger: &mut CopyLedger,
    rng: &mut RngStream,
) -> Result<Option<u32>> {
    FourierSampler::new(f).sample(ledger, rng)
}

/// Probability that projecting a copy onto the symmetric subspace accepts:
/// `Pr_{x,π}[f(x) = f(πx)]`.
pub fn symmetric_accept_probability(f: &BooleanFunction) -> f64 {
    1.0 - symmetry_violation_probability(f)
}

/// One symmetric-subspace measurement; `true` means accept.
pub fn symmetric_subspace_measure(
    f: &BooleanFunction,
    ledger: &mut CopyLedger,
    rng: &mut RngStream,
) -> Result<bool> {
    ledger.charge(1)?;
    Ok(rng.random_bool(symmetric_accept_probability(f).clamp(0.0, 1.0)))
}
