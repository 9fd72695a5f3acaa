use rayon::prelude::*;

use crate::boolfn::{hamming_distance, BooleanFunction};
use crate::error::{Error, Result};

/// Minimum normalised Hamming distance between members of two sample sets.
pub fn certify_separation(f0: &[BooleanFunction], f1: &[BooleanFunction]) -> Result<f64> {
    let n = f0
        .first()
        .or(f1.first())
        .ok_or_else(|| Error::InvalidParameter("both sample sets are empty".into()))?
        .arity();
    if f0.is_empty() || f1.is_empty() {
        return Err(Error::InvalidParameter("sample sets must be nonempty".into()));
    }
    if let Some(g) = f0.iter().chain(f1).find(|g| g.arity() != n) {
        return Err(Error::Arity(format!("arity mismatch: {} vs {n}", g.arity())));
    }
    let min = f0
        .par_iter()
        .map(|f| f1.iter().map(|g| hamming_distance(f, g).unwrap()).min().unwrap())
        .min()
        .unwrap();
    Ok(min as f64 / (1u64 << n) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::builtin;

    #[test]
    fn trivial_cases() {
        let f = builtin("majority", 5).unwrap();
        let g = builtin("dictator", 5).unwrap();
        let set = vec![f.clone(), g.clone()];
        assert_eq!(certify_separation(&set, &set).unwrap(), 0.0);
        let d = hamming_distance(&f, &g).unwrap() as f64 / 32.0;
        assert_eq!(certify_separation(&[f.clone()], &[g]).unwrap(), d);
        assert!(certify_separation(&[f], &[builtin("parity", 4).unwrap()]).is_err());
        assert!(certify_separation(&[], &[]).is_err());
    }
}
