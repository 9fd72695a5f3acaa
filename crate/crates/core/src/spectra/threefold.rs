//! Distinct-subspace analysis of the 3-fold intersection ensembles.
//!
//! One copy of `|f_{(A,B,C)}⟩` lives on `(x, a, b)` with index
//! `x·8 + a·2 + b`, which is the function-state layout of the `(n+2)`-bit
//! triple encoding. `t` copies are indexed with the first copy most
//! significant. `Π` keeps the tuples whose `x` registers are pairwise
//! distinct.

use rayon::prelude::*;
use serde::Serialize;

use super::{check_cap, eigen_symmetric, ensemble_average, function_state, DensityMatrix, StateVector};
use crate::boolfn::{triple, BooleanFunction};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ThreeFoldMethod {
    /// Literal average over every `(A, B, C)` and every `(A, B)`.
    Enumeration,
    /// Exact per-point factorisation of the same averages.
    Factorized,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThreeFoldReport {
    pub n: usize,
    pub t: usize,
    pub method: ThreeFoldMethod,
    pub dimension: usize,
    /// Tuples with a repeated `x`, i.e. outside the range of `Π`.
    pub repeated_tuples: usize,
    /// `max |ΠE₀Π − ΠE₁Π|` entrywise.
    pub max_projected_deviation: f64,
    /// `‖E₀ − E₁‖₁`.
    pub trace_norm: f64,
    /// `4t/2^{n/2}`.
    pub bound: f64,
    pub reduced_dimension: usize,
}

fn copy_dimension(n: usize) -> usize {
    8usize << n
}

fn decode(i: usize, n: usize, t: usize) -> Vec<usize> {
    let d = copy_dimension(n);
    let mut out = vec![0; t];
    let mut i = i;
    for j in (0..t).rev() {
        out[j] = i % d;
        i /= d;
    }
    out
}

fn has_repeat(labels: &[usize]) -> bool {
    labels.iter().enumerate().any(|(j, a)| labels[..j].iter().any(|b| a >> 3 == b >> 3))
}

/// Probability that one point satisfies every label in `mask` (bit `q` set
/// for label `q = a·2 + b`). Label `q` asks for `z ∈ S_a` when `b = 1` and
/// `z ∉ S_a` when `b = 0`, with `S_{11} = ∅`.
fn label_probabilities(xor: bool) -> [f64; 256] {
    let assignments: Vec<[bool; 4]> = if xor {
        (0..4u8).map(|w| [w & 1 == 1, w & 2 == 2, (w & 1 == 1) ^ (w & 2 == 2), false]).collect()
    } else {
        (0..8u8).map(|w| [w & 1 == 1, w & 2 == 2, w & 4 == 4, false]).collect()
    };
    let mut out = [0.0; 256];
    for (mask, slot) in out.iter_mut().enumerate() {
        let ok = assignments
            .iter()
            .filter(|sets| (0..8).all(|q| mask >> q & 1 == 0 || sets[q >> 1] == (q & 1 == 1)))
            .count();
        *slot = ok as f64 / assignments.len() as f64;
    }
    out
}

struct Factorized {
    n: usize,
    t: usize,
    p0: [f64; 256],
    p1: [f64; 256],
    norm: f64,
}

impl Factorized {
    fn new(n: usize, t: usize) -> Self {
        let norm = (4.0 * (1u64 << n) as f64).powi(-(t as i32));
        Self { n, t, p0: label_probabilities(false), p1: label_probabilities(true), norm }
    }

    /// `(E₀(r,s), E₁(r,s))`.
    fn entry(&self, r: &[usize], s: &[usize]) -> (f64, f64) {
        let mut points: Vec<(usize, u32)> = Vec::with_capacity(2 * self.t);
        for &c in r.iter().chain(s) {
            let (x, q) = (c >> 3, c & 7);
            match points.iter_mut().find(|(z, _)| *z == x) {
                Some((_, mask)) => *mask |= 1 << q,
                None => points.push((x, 1 << q)),
            }
        }
        let (mut e0, mut e1) = (self.norm, self.norm);
        for &(_, mask) in &points {
            e0 *= self.p0[mask as usize];
            e1 *= self.p1[mask as usize];
        }
        (e0, e1)
    }

    fn dimension(&self) -> usize {
        copy_dimension(self.n).pow(self.t as u32)
    }
}

fn subsets(n: usize) -> impl Iterator<Item = BooleanFunction> + Clone {
    let n_points = 1usize << n;
    (0..1u64 << n_points).map(move |mask| BooleanFunction::from_fn(n, |x| mask >> x & 1 == 1).unwrap())
}

/// Literal `E₀` and `E₁` from every triple. Only for `n ≤ 2`.
pub fn threefold_ensembles(n: usize, t: usize, cap: usize) -> Result<(DensityMatrix, DensityMatrix)> {
    if n > 2 {
        return Err(Error::Capability(format!("literal enumeration needs n ≤ 2, got {n}")));
    }
    check_cap(copy_dimension(n).pow(t as u32), cap)?;
    let mut e0_states: Vec<StateVector> = Vec::new();
    let mut e1_states: Vec<StateVector> = Vec::new();
    for a in subsets(n) {
        for b in subsets(n) {
            e1_states.push(function_state(&triple(&a, &b, &a.xor(&b)?)?));
            for c in subsets(n) {
                e0_states.push(function_state(&triple(&a, &b, &c)?));
            }
        }
    }
    Ok((ensemble_average(&e0_states, t, cap)?, ensemble_average(&e1_states, t, cap)?))
}

const PROJECTED_TOL: f64 = 1e-12;

/// Checks `ΠE₀Π = ΠE₁Π` and computes `‖E₀ − E₁‖₁`.
///
/// With `D = E₀ − E₁` and `ΠDΠ = 0`, write `D` on `R ⊕ R^⊥` (repeated and
/// distinct tuples) as `[[P, Q], [Qᵀ, 0]]`. With `Qᵀ = VRf` from a QR
/// factorisation, `D` vanishes off `R ⊕ range(V)` and equals
/// `[[P, Rfᵀ], [Rf, 0]]` there, a matrix of dimension at most `2|R|`.
pub fn distinct_projector_check(n: usize, t: usize, method: ThreeFoldMethod, cap: usize) -> Result<ThreeFoldReport> {
    if t == 0 {
        return Err(Error::InvalidParameter("t must be positive".into()));
    }
    let per_copy = copy_dimension(n);
    let dim = (0..t)
        .try_fold(1usize, |acc, _| acc.checked_mul(per_copy))
        .ok_or_else(|| Error::Capability("dimension overflows".into()))?;
    check_cap(dim, cap)?;

    let dense = match method {
        ThreeFoldMethod::Enumeration => Some(threefold_ensembles(n, t, cap)?),
        ThreeFoldMethod::Factorized => None,
    };
    let fact = Factorized::new(n, t);
    debug_assert_eq!(fact.dimension(), dim);
    let labels: Vec<Vec<usize>> = (0..dim).map(|i| decode(i, n, t)).collect();
    let entry = |i: usize, j: usize| -> f64 {
        match &dense {
            Some((e0, e1)) => e0.get(i, j) - e1.get(i, j),
            None => {
                let (a, b) = fact.entry(&labels[i], &labels[j]);
                a - b
            }
        }
    };

    let repeated: Vec<usize> = (0..dim).filter(|&i| has_repeat(&labels[i])).collect();
    let distinct: Vec<usize> = (0..dim).filter(|&i| !has_repeat(&labels[i])).collect();

    let max_projected_deviation = distinct
        .par_iter()
        .map(|&i| distinct.iter().map(|&j| entry(i, j).abs()).fold(0.0, f64::max))
        .reduce(|| 0.0, f64::max);
    if max_projected_deviation > PROJECTED_TOL {
        return Err(Error::TheoremViolation(format!(
            "ΠE₀Π and ΠE₁Π differ by {max_projected_deviation:e}"
        )));
    }

    let r = repeated.len();
    let bound = 4.0 * t as f64 / 2f64.powf(n as f64 / 2.0);
    if r == 0 {
        return Ok(ThreeFoldReport {
            n,
            t,
            method,
            dimension: dim,
            repeated_tuples: 0,
            max_projected_deviation,
            trace_norm: 0.0,
            bound,
            reduced_dimension: 0,
        });
    }

    let p_block: Vec<f64> = repeated.par_iter().flat_map_iter(|&i| repeated.iter().map(move |&j| entry(i, j))).collect();
    let mut columns: Vec<Vec<f64>> =
        repeated.par_iter().map(|&i| distinct.iter().map(|&j| entry(i, j)).collect()).collect();
    let rf = householder_r(&mut columns);
    let scale = rf.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
    let kept: Vec<usize> =
        (0..rf.len()).filter(|&k| rf[k].iter().any(|v| v.abs() > 1e-15 * scale)).collect();

    let size = r + kept.len();
    let mut reduced = DensityMatrix::zeros(size);
    for i in 0..r {
        for j in 0..r {
            reduced.set(i, j, p_block[i * r + j]);
        }
        for (c, &k) in kept.iter().enumerate() {
            reduced.set(i, r + c, rf[k][i]);
            reduced.set(r + c, i, rf[k][i]);
        }
    }
    let trace_norm = eigen_symmetric(&reduced)?.values.iter().map(|l| l.abs()).sum();
    Ok(ThreeFoldReport {
        n,
        t,
        method,
        dimension: dim,
        repeated_tuples: r,
        max_projected_deviation,
        trace_norm,
        bound,
        reduced_dimension: size,
    })
}

/// Householder QR of the matrix whose columns are given; returns the rows of
/// the triangular factor. Columns are overwritten.
fn householder_r(columns: &mut [Vec<f64>]) -> Vec<Vec<f64>> {
    let cols = columns.len();
    let len = columns.first().map_or(0, |c| c.len());
    let steps = cols.min(len);
    let mut rf = vec![vec![0.0; cols]; steps];
    for k in 0..steps {
        let norm = columns[k][k..].iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            for j in k + 1..cols {
                rf[k][j] = columns[j][k];
            }
            continue;
        }
        let alpha = if columns[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = columns[k][k..].to_vec();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        rf[k][k] = alpha;
        let (_, rest) = columns.split_at_mut(k + 1);
        rest.par_iter_mut().for_each(|col| {
            let dot: f64 = v.iter().zip(&col[k..]).map(|(a, b)| a * b).sum();
            let f = 2.0 * dot / vnorm2;
            for (c, a) in col[k..].iter_mut().zip(&v) {
                *c -= f * a;
            }
        });
        for j in k + 1..cols {
            rf[k][j] = columns[j][k];
        }
    }
    rf
}

/// `Π` applied to both sides of `|ψ⟩⟨ψ|^{⊗t}` for a single triple state,
/// returned as `|ψ⟩⟨ψ|^{⊗t} − Π|ψ⟩⟨ψ|^{⊗t}Π`.
pub fn projection_gap_matrix(state: &StateVector, n: usize, t: usize, cap: usize) -> Result<DensityMatrix> {
    if state.dimension() != copy_dimension(n) {
        return Err(Error::InvalidParameter("state is not a one-copy triple state".into()));
    }
    let rho = ensemble_average(std::slice::from_ref(state), t, cap)?;
    let dim = rho.dimension();
    let keep: Vec<bool> = (0..dim).map(|i| !has_repeat(&decode(i, n, t))).collect();
    let mut out = rho.clone();
    for i in 0..dim {
        for j in 0..dim {
            if keep[i] && keep[j] {
                out.set(i, j, 0.0);
            }
        }
    }
    Ok(out)
}

/// `√((1 + 3r)(1 − r))` with `r = 4^t N^{(t)}/(4N)^t`, `N^{(t)}` the falling
/// factorial.
pub fn projection_gap_formula(n: usize, t: usize) -> f64 {
    let big_n = (1u64 << n) as f64;
    let r: f64 = (0..t).map(|j| (big_n - j as f64) / big_n).product();
    ((1.0 + 3.0 * r) * (1.0 - r)).max(0.0).sqrt()
}
