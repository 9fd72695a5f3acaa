use rayon::prelude::*;

use super::tuples::{compatible_direct, PairLookup};
use super::{check_cap, ensemble_average, phase_state, DensityMatrix};
use crate::ensembles::{background, twin_function, Matching};
use crate::error::{Error, Result};

/// Decodes tuple index `i` into `(x₁, …, x_t)`, `x₁` most significant.
pub fn decode_tuple(i: usize, n: usize, t: usize) -> Vec<u32> {
    let mask = (1usize << n) - 1;
    (0..t).map(|j| ((i >> (n * (t - 1 - j))) & mask) as u32).collect()
}

fn tuple_dimension(n: usize, t: usize, cap: usize) -> Result<usize> {
    if n * t >= usize::BITS as usize {
        return Err(Error::Capability(format!("2^(nt) with nt = {} overflows", n * t)));
    }
    let dim = 1usize << (n * t);
    check_cap(dim, cap)?;
    Ok(dim)
}

/// The difference matrix `A = A⁽⁰⁾ − A⁽¹⁾` of the twin ensembles over `M`,
/// entry by entry: `(2/2^{nt}) s(𝐱∪𝐲)` when `𝐱` and `𝐲` are compatible and
/// 0 otherwise, with `s` the sign of the background off `∪M`.
pub fn build_difference_matrix(m: &Matching, t: usize, cap: usize) -> Result<DensityMatrix> {
    let n = m.n();
    let dim = tuple_dimension(n, t, cap)?;
    let lookup = PairLookup::new(m);
    let g = background(n)?;
    let member = m.membership();
    let sign: Vec<bool> = (0..dim)
        .map(|i| decode_tuple(i, n, t).iter().filter(|&&z| member[z as usize].is_none() && g.get(z)).count() % 2 == 1)
        .collect();
    let scale = 2.0 / dim as f64;
    let mut out = DensityMatrix::zeros(dim);
    out.data_mut().par_chunks_mut(dim).enumerate().for_each(|(i, row)| {
        let x = decode_tuple(i, n, t);
        for (j, slot) in row.iter_mut().enumerate() {
            if compatible_direct(&x, &decode_tuple(j, n, t), &lookup) {
                *slot = if sign[i] ^ sign[j] { -scale } else { scale };
            }
        }
    });
    Ok(out)
}

/// The same matrix from its definition: exact averages of `t`-fold phase
/// state projectors over all `2^m` bipartitions, variant 0 minus variant 1.
pub fn twin_average_difference(m: &Matching, t: usize, cap: usize) -> Result<DensityMatrix> {
    let pairs = m.achieved_m();
    if pairs > 16 {
        return Err(Error::Capability(format!("2^{pairs} bipartitions is too many to enumerate")));
    }
    tuple_dimension(m.n(), t, cap)?;
    let states = |variant: u8| -> Result<Vec<_>> {
        (0..1u32 << pairs)
            .map(|mask| {
                let in_a: Vec<bool> = (0..pairs).map(|i| (mask >> i) & 1 == 1).collect();
                Ok(phase_state(&twin_function(m, variant, &in_a)?.base))
            })
            .collect()
    };
    let a0 = ensemble_average(&states(0)?, t, cap)?;
    let a1 = ensemble_average(&states(1)?, t, cap)?;
    a0.sub(&a1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::build_layer_matching;
    use crate::qstate::RngStream;
    use crate::spectra::DEFAULT_DIM_CAP;

    #[test]
    fn matches_ensemble_average() {
        let mut r = RngStream::new(3, 0);
        for (n, t, target) in [(3, 1, 2), (3, 2, 2), (4, 2, 2), (4, 1, 4)] {
            let m = build_layer_matching(n, target, &mut r).unwrap();
            let a = build_difference_matrix(&m, t, DEFAULT_DIM_CAP).unwrap();
            let b = twin_average_difference(&m, t, DEFAULT_DIM_CAP).unwrap();
            assert!(a.max_abs_diff(&b).unwrap() <= 1e-12);
            assert_eq!(a.asymmetry(), 0.0);
            assert!(a.trace().abs() < 1e-12);
        }
    }

    #[test]
    fn unmatched_diagonal_is_zero() {
        let mut r = RngStream::new(4, 0);
        let m = build_layer_matching(3, 2, &mut r).unwrap();
        let a = build_difference_matrix(&m, 1, DEFAULT_DIM_CAP).unwrap();
        let member = m.membership();
        for x in 0..8 {
            if member[x].is_none() {
                assert_eq!(a.get(x, x), 0.0);
            }
        }
        assert!(build_difference_matrix(&m, 5, DEFAULT_DIM_CAP).is_err());
    }
}
