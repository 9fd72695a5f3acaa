use rayon::prelude::*;

use super::{check_cap, DensityMatrix};
use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};

/// Dense real state vector of power-of-two dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<f64>,
}

const NORM_TOL: f64 = 1e-10;

impl StateVector {
    pub fn new(amplitudes: Vec<f64>) -> Result<Self> {
        if !amplitudes.len().is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "state dimension {} is not a power of two",
                amplitudes.len()
            )));
        }
        let norm: f64 = amplitudes.iter().map(|a| a * a).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Contract(format!("state has squared norm {norm}")));
        }
        Ok(Self { amplitudes })
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn inner(&self, other: &Self) -> Result<f64> {
        if self.dimension() != other.dimension() {
            return Err(Error::InvalidParameter("state dimensions differ".into()));
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a * b).sum())
    }

    /// Applies a Hadamard to the least significant qubit.
    pub fn hadamard_last(&self) -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut out = self.amplitudes.clone();
        for z in (0..out.len()).step_by(2) {
            let (a0, a1) = (self.amplitudes[z], self.amplitudes[z + 1]);
            out[z] = h * (a0 + a1);
            out[z + 1] = h * (a0 - a1);
        }
        Self { amplitudes: out }
    }

    /// `|ψ⟩^{⊗t}`, first factor most significant.
    pub fn tensor_power(&self, t: usize, cap: usize) -> Result<Self> {
        let dim = tensor_dimension(self.dimension(), t, cap)?;
        let mut out = vec![1.0];
        for _ in 0..t {
            out = out.iter().flat_map(|&a| self.amplitudes.iter().map(move |&b| a * b)).collect();
        }
        debug_assert_eq!(out.len(), dim);
        Ok(Self { amplitudes: out })
    }
}

fn tensor_dimension(d: usize, t: usize, cap: usize) -> Result<usize> {
    let dim = (0..t).try_fold(1usize, |acc, _| acc.checked_mul(d));
    match dim {
        Some(dim) => {
            check_cap(dim, cap)?;
            Ok(dim)
        }
        None => Err(Error::Capability(format!("{d}^{t} overflows"))),
    }
}

/// `2^{−n/2} Σ_x (−1)^{f(x)} |x⟩`.
pub fn phase_state(f: &BooleanFunction) -> StateVector {
    let a = (f.len() as f64).sqrt().recip();
    StateVector { amplitudes: (0..f.len() as u32).map(|x| if f.get(x) { -a } else { a }).collect() }
}

/// `2^{−n/2} Σ_x |x, f(x)⟩` on `n + 1` qubits, output qubit last.
pub fn function_state(f: &BooleanFunction) -> StateVector {
    let a = (f.len() as f64).sqrt().recip();
    let mut amplitudes = vec![0.0; 2 * f.len()];
    for x in 0..f.len() as u32 {
        amplitudes[((x << 1) | f.get(x) as u32) as usize] = a;
    }
    StateVector { amplitudes }
}

/// `E[(|ψ⟩⟨ψ|)^{⊗t}]` over a uniform list of states. Zero amplitudes are
/// skipped, so sparse states such as function states stay cheap.
pub fn ensemble_average(states: &[StateVector], t: usize, cap: usize) -> Result<DensityMatrix> {
    let first = states.first().ok_or_else(|| Error::InvalidParameter("no states to average".into()))?;
    let d = first.dimension();
    if states.iter().any(|s| s.dimension() != d) {
        return Err(Error::InvalidParameter("states have different dimensions".into()));
    }
    let dim = tensor_dimension(d, t, cap)?;
    let w = 1.0 / states.len() as f64;
    let data = states
        .par_iter()
        .fold(
            || vec![0.0; dim * dim],
            |mut acc, s| {
                let v = s.tensor_power(t, cap).expect("dimension checked above");
                let support: Vec<(usize, f64)> =
                    v.amplitudes.iter().enumerate().filter(|(_, &a)| a != 0.0).map(|(i, &a)| (i, a)).collect();
                for &(i, a) in &support {
                    let row = &mut acc[i * dim..(i + 1) * dim];
                    for &(j, b) in &support {
                        row[j] += w * a * b;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0.0; dim * dim],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    DensityMatrix::from_rows(dim, data)
}
