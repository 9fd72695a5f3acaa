use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};
use crate::qstate::{sample_classical, CopyLedger, RngStream};

/// Draws `q` labelled samples and counts index triples `i < j < k` with
/// `xᵢ ⊕ xⱼ = xₖ` and all three labels 1.
pub fn classical_triangle_baseline(f: &BooleanFunction, q: usize, rng: &mut RngStream) -> Result<u64> {
    if q < 3 {
        return Err(Error::InvalidParameter(format!("need q ≥ 3 samples, got {q}")));
    }
    let mut ledger = CopyLedger::with_budget(q as u64);
    let mut ones = Vec::with_capacity(q);
    for _ in 0..q {
        let (x, v) = sample_classical(f, &mut ledger, rng)?;
        if v {
            ones.push(x);
        }
    }
    let mut count = 0u64;
    for i in 0..ones.len() {
        for j in i + 1..ones.len() {
            let target = ones[i] ^ ones[j];
            count += ones[j + 1..].iter().filter(|&&z| z == target).count() as u64;
        }
    }
    Ok(count)
}

/// The union bound `q³/2^n` on the probability of seeing any dependent
/// triple.
pub fn witness_rate_bound(n: usize, q: usize) -> f64 {
    (q as f64).powi(3) / 2f64.powi(n as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::builtin;

    #[test]
    fn zero_function_has_no_witness() {
        let f = builtin("constant0", 6).unwrap();
        let mut r = RngStream::new(0, 0);
        for _ in 0..50 {
            assert_eq!(classical_triangle_baseline(&f, 40, &mut r).unwrap(), 0);
        }
    }

    #[test]
    fn tiny_cube_always_has_witnesses() {
        // 20 samples from {0,1}^2 miss every dependent triple only if they avoid 0 and one nonzero point.
        let f = builtin("constant1", 2).unwrap();
        assert!(classical_triangle_baseline(&f, 20, &mut RngStream::new(1, 0)).unwrap() > 0);
        assert!(classical_triangle_baseline(&f, 2, &mut RngStream::new(1, 0)).is_err());
    }
}
