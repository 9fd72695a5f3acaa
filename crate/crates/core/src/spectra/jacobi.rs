use rayon::prelude::*;

use super::DensityMatrix;
use crate::error::{Error, Result};

/// Eigendecomposition `M = V Λ Vᵀ`; `vectors` holds the eigenvectors as
/// columns, row-major.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: DensityMatrix,
    pub sweeps: usize,
}

const MAX_SWEEPS: usize = 100;
const ASYMMETRY_TOL: f64 = 1e-9;
const RECONSTRUCTION_TOL: f64 = 1e-9;

fn off_diagonal_mass(a: &[f64], d: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..d {
        for j in i + 1..d {
            s += 2.0 * a[i * d + j] * a[i * d + j];
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi eigensolver for dense symmetric matrices.
///
/// Sweeps until the off-diagonal Frobenius mass drops below
/// `max(1e−12, 1e−15‖M‖_F)`, then checks that `VΛVᵀ` reproduces the input
/// to `1e−9` in Frobenius norm (scaled by `‖M‖_F` when that exceeds 1).
pub fn eigen_symmetric(m: &DensityMatrix) -> Result<Eigen> {
    let d = m.dimension();
    let asym = m.asymmetry();
    if asym > ASYMMETRY_TOL {
        return Err(Error::Contract(format!("matrix is not symmetric (max |Mᵢⱼ − Mⱼᵢ| = {asym:e})")));
    }
    let mut a = m.data().to_vec();
    for i in 0..d {
        for j in i + 1..d {
            let avg = 0.5 * (a[i * d + j] + a[j * d + i]);
            a[i * d + j] = avg;
            a[j * d + i] = avg;
        }
    }
    let mut vt = vec![0.0; d * d];
    for i in 0..d {
        vt[i * d + i] = 1.0;
    }
    let norm = m.frobenius();
    let target = 1e-12f64.max(1e-15 * norm);

    let mut sweeps = 0;
    while off_diagonal_mass(&a, d) >= target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::InternalConsistency(format!("Jacobi did not converge in {MAX_SWEEPS} sweeps")));
        }
        sweeps += 1;
        for p in 0..d {
            for q in p + 1..d {
                let apq = a[p * d + q];
                if apq == 0.0 {
                    continue;
                }
                let (app, aqq) = (a[p * d + p], a[q * d + q]);
                // negligible against both diagonal entries: drop it
                if sweeps > 3 && app.abs() + 1e3 * apq.abs() == app.abs() && aqq.abs() + 1e3 * apq.abs() == aqq.abs() {
                    a[p * d + q] = 0.0;
                    a[q * d + p] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..d {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[p * d + k];
                    let akq = a[q * d + k];
                    let np = c * akp - s * akq;
                    let nq = s * akp + c * akq;
                    a[p * d + k] = np;
                    a[k * d + p] = np;
                    a[q * d + k] = nq;
                    a[k * d + q] = nq;
                }
                a[p * d + p] = app - t * apq;
                a[q * d + q] = aqq + t * apq;
                a[p * d + q] = 0.0;
                a[q * d + p] = 0.0;
                // rows of `vt` are eigenvectors
                let (head, tail) = vt.split_at_mut(q * d);
                let (vp, vq) = (&mut head[p * d..(p + 1) * d], &mut tail[..d]);
                for (x, y) in vp.iter_mut().zip(vq.iter_mut()) {
                    let (xp, xq) = (*x, *y);
                    *x = c * xp - s * xq;
                    *y = s * xp + c * xq;
                }
            }
        }
    }
    let values: Vec<f64> = (0..d).map(|i| a[i * d + i]).collect();

    let mut v = vec![0.0; d * d];
    for k in 0..d {
        for i in 0..d {
            v[i * d + k] = vt[k * d + i];
        }
    }

    // reconstruction check
    let err2: f64 = (0..d)
        .into_par_iter()
        .map(|i| {
            let wi: Vec<f64> = v[i * d..(i + 1) * d].iter().zip(&values).map(|(x, l)| x * l).collect();
            let mut e = 0.0;
            for j in 0..d {
                let r: f64 = wi.iter().zip(&v[j * d..(j + 1) * d]).map(|(a, b)| a * b).sum();
                let diff = r - m.get(i, j);
                e += diff * diff;
            }
            e
        })
        .sum();
    let tol = RECONSTRUCTION_TOL * norm.max(1.0);
    if err2.sqrt() > tol {
        return Err(Error::InternalConsistency(format!(
            "Jacobi reconstruction error {:e} exceeds {tol:e}",
            err2.sqrt()
        )));
    }
    Ok(Eigen { values, vectors: DensityMatrix::from_rows(d, v)?, sweeps })
}

/// `‖M‖₁ = Σ|λᵢ|`.
pub fn trace_norm(m: &DensityMatrix) -> Result<f64> {
    Ok(eigen_symmetric(m)?.values.iter().map(|l| l.abs()).sum())
}

/// `1/2 + ‖ρ₀ − ρ₁‖₁/4`, clamped to `[1/2, 1]`.
pub fn helstrom_success(rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<f64> {
    Ok(helstrom_from_trace_norm(trace_norm(&rho0.sub(rho1)?)?))
}

pub fn helstrom_from_trace_norm(norm: f64) -> f64 {
    (0.5 + norm / 4.0).clamp(0.5, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trivial_spectra() {
        assert_eq!(trace_norm(&DensityMatrix::zeros(5)).unwrap(), 0.0);
        assert_eq!(trace_norm(&DensityMatrix::diagonal(&[1.0, -1.0])).unwrap(), 2.0);
        let bad = DensityMatrix::from_rows(2, vec![0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(trace_norm(&bad), Err(Error::Contract(_))));
    }

    #[test]
    fn two_by_two() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3
        let m = DensityMatrix::from_rows(2, vec![2.0, 1.0, 1.0, 2.0]).unwrap();
        let mut e = eigen_symmetric(&m).unwrap().values;
        e.sort_by(f64::total_cmp);
        assert!((e[0] - 1.0).abs() < 1e-14 && (e[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn helstrom_limits() {
        let rho = DensityMatrix::diagonal(&[0.5, 0.5]);
        assert_eq!(helstrom_success(&rho, &rho).unwrap(), 0.5);
        let p0 = DensityMatrix::diagonal(&[1.0, 0.0]);
        let p1 = DensityMatrix::diagonal(&[0.0, 1.0]);
        assert_eq!(helstrom_success(&p0, &p1).unwrap(), 1.0);
        assert!(helstrom_success(&p0, &DensityMatrix::zeros(3)).is_err());
    }

    proptest! {
        #[test]
        fn trace_and_frobenius_preserved(d in 1usize..12, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut m = DensityMatrix::zeros(d);
            for i in 0..d {
                for j in i..d {
                    let x: f64 = r.random_range(-1.0..1.0);
                    m.set(i, j, x);
                    m.set(j, i, x);
                }
            }
            let e = eigen_symmetric(&m).unwrap();
            let tr: f64 = e.values.iter().sum();
            let fro: f64 = e.values.iter().map(|l| l * l).sum::<f64>().sqrt();
            prop_assert!((tr - m.trace()).abs() < 1e-10);
            prop_assert!((fro - m.frobenius()).abs() < 1e-10);
        }
    }
}
