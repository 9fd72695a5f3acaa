//! Exact distance oracles. Everything here is exhaustive and only defined at
//! small arity; callers get a capability error beyond the bounds.

use super::{is_symmetric, weight_class_counts, BooleanFunction};
use crate::error::{Error, Result};

/// Largest arity for which all monotone functions are enumerated.
pub const MAX_MONOTONE_ARITY: usize = 5;
/// Largest arity for which all `2^{2^n}` functions are enumerated.
pub const MAX_CLASS_ARITY: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceReport {
    /// Normalised Hamming distance to the class.
    pub epsilon: f64,
    /// Number of inputs changed by the witness.
    pub flips: u64,
    pub witness: Option<BooleanFunction>,
}

impl DistanceReport {
    fn new(n: usize, flips: u64, witness: Option<BooleanFunction>) -> Self {
        Self { epsilon: flips as f64 / (1u64 << n) as f64, flips, witness }
    }
}

/// Number of inputs where `f` and `g` differ.
pub fn hamming_distance(f: &BooleanFunction, g: &BooleanFunction) -> Result<u64> {
    if f.arity() != g.arity() {
        return Err(Error::Arity(format!(
            "arity mismatch: {} vs {}",
            f.arity(),
            g.arity()
        )));
    }
    Ok(f.words().iter().zip(g.words()).map(|(a, b)| (a ^ b).count_ones() as u64).sum())
}

/// Packed tables of all monotone functions on `n ≤ 5` bits.
///
/// With `x₁` as the index MSB, `f = f₀ ∥ f₁` splits on `x₁` and is monotone
/// iff both halves are and `f₀ ≤ f₁` pointwise, so the list is built by
/// recursive extension.
fn monotone_tables(n: usize) -> Vec<u32> {
    let mut tables: Vec<u32> = vec![0b0, 0b1];
    for k in 1..=n {
        let half = 1u32 << (k - 1);
        let mut next = Vec::new();
        for &lo in &tables {
            for &hi in &tables {
                if lo & !hi == 0 {
                    next.push(lo | (hi << half));
                }
            }
        }
        tables = next;
    }
    tables
}

/// All monotone functions on `n ≤ 5` bits (168 at `n = 4`, 7581 at `n = 5`).
pub fn monotone_functions(n: usize) -> Result<Vec<BooleanFunction>> {
    check_bound(n, MAX_MONOTONE_ARITY, "monotone enumeration")?;
    monotone_tables(n)
        .into_iter()
        .map(|t| BooleanFunction::from_small_table(n, t as u64))
        .collect()
}

fn check_bound(n: usize, max: usize, what: &str) -> Result<()> {
    if n > max {
        return Err(Error::Capability(format!(
            "{what} is exhaustive and supports n ≤ {max}, got n = {n}"
        )));
    }
    Ok(())
}

pub fn exact_distance_to_monotone(f: &BooleanFunction) -> Result<DistanceReport> {
    let n = f.arity();
    check_bound(n, MAX_MONOTONE_ARITY, "exact distance to monotone")?;
    let table = f.small_table().expect("n ≤ 5") as u32;
    let (flips, best) = monotone_tables(n)
        .into_iter()
        .map(|m| ((m ^ table).count_ones() as u64, m))
        .min()
        .expect("constants are monotone");
    let witness = BooleanFunction::from_small_table(n, best as u64)?;
    Ok(DistanceReport::new(n, flips, Some(witness)))
}

/// Per-weight-class majority vote; ties go to 0.
pub fn exact_distance_to_symmetric(f: &BooleanFunction) -> Result<DistanceReport> {
    let counts = weight_class_counts(f);
    let flips = counts.iter().map(|c| c[0].min(c[1])).sum();
    let witness = BooleanFunction::from_fn(f.arity(), |x| {
        let [c0, c1] = counts[x.count_ones() as usize];
        c1 > c0
    })?;
    debug_assert!(is_symmetric(&witness));
    Ok(DistanceReport::new(f.arity(), flips, Some(witness)))
}

/// Minimum distance to any function satisfying `predicate`, by enumerating
/// all `2^{2^n}` tables. The witness is `None` when no function qualifies,
/// in which case `epsilon` is reported as 1.
pub fn exact_distance_to_class(
    f: &BooleanFunction,
    predicate: impl Fn(&BooleanFunction) -> bool,
) -> Result<DistanceReport> {
    let n = f.arity();
    check_bound(n, MAX_CLASS_ARITY, "exact distance to a class")?;
    let table = f.small_table().expect("n ≤ 4");
    let mut best: Option<(u64, u64)> = None;
    for g in 0..1u64 << (1 << n) {
        let d = (g ^ table).count_ones() as u64;
        if best.is_some_and(|(bd, _)| d >= bd) {
            continue;
        }
        if predicate(&BooleanFunction::from_small_table(n, g)?) {
            best = Some((d, g));
        }
    }
    match best {
        Some((d, g)) => Ok(DistanceReport::new(n, d, Some(BooleanFunction::from_small_table(n, g)?))),
        None => Ok(DistanceReport { epsilon: 1.0, flips: 1 << n, witness: None }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{builtin, is_monotone, is_triangle_free};

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn dedekind_counts() {
        let expected = [2usize, 3, 6, 20, 168, 7581];
        for (n, &count) in expected.iter().enumerate().skip(1) {
            assert_eq!(monotone_functions(n).unwrap().len(), count);
        }
        assert!(monotone_functions(6).is_err());
    }

    #[test]
    fn enumeration_agrees_with_filter() {
        for n in 1..=4 {
            let filtered = (0..1u64 << (1 << n))
                .filter(|&t| is_monotone(&BooleanFunction::from_small_table(n, t).unwrap()))
                .count();
            assert_eq!(filtered, monotone_functions(n).unwrap().len());
        }
    }

    #[test]
    fn monotone_distance_examples() {
        let maj = builtin("majority", 5).unwrap();
        let r = exact_distance_to_monotone(&maj).unwrap();
        assert_eq!(r.epsilon, 0.0);
        assert_eq!(r.witness.unwrap(), maj);

        // Brute force over all 256 tables at n = 3.
        let anti = builtin("antidictator", 3).unwrap();
        let brute = (0..256u64)
            .map(|t| BooleanFunction::from_small_table(3, t).unwrap())
            .filter(is_monotone)
            .map(|g| hamming_distance(&anti, &g).unwrap())
            .min()
            .unwrap();
        assert_eq!(exact_distance_to_monotone(&anti).unwrap().flips, brute);
        assert_eq!(brute, 4);

        let parity = builtin("parity", 4).unwrap();
        let brute = monotone_functions(4)
            .unwrap()
            .iter()
            .map(|g| hamming_distance(&parity, g).unwrap())
            .min()
            .unwrap();
        let r = exact_distance_to_monotone(&parity).unwrap();
        assert_eq!(r.flips, brute);
        let w = r.witness.unwrap();
        assert!(is_monotone(&w));
        assert_eq!(hamming_distance(&parity, &w).unwrap(), r.flips);
    }

    #[test]
    fn symmetric_distance_examples() {
        assert_eq!(exact_distance_to_symmetric(&builtin("parity", 6).unwrap()).unwrap().flips, 0);
        let d2 = builtin("dictator", 2).unwrap();
        assert_eq!(exact_distance_to_symmetric(&d2).unwrap().epsilon, 0.25);
        // All 8 symmetric functions on 2 bits: one value per weight class.
        let brute = (0..8u32)
            .map(|c| BooleanFunction::from_fn(2, |x| (c >> x.count_ones()) & 1 == 1).unwrap())
            .map(|g| hamming_distance(&d2, &g).unwrap())
            .min()
            .unwrap();
        assert_eq!(brute, 1);

        let d8 = builtin("dictator", 8).unwrap();
        let oracle: u64 = (0..=8).map(|w| {
            let ones = if w == 0 { 0 } else { binomial(7, w - 1) };
            let zeros = if w == 8 { 0 } else { binomial(7, w) };
            ones.min(zeros)
        }).sum();
        assert_eq!(oracle, 93);
        let r = exact_distance_to_symmetric(&d8).unwrap();
        assert_eq!(r.flips, 93);
        assert_eq!(r.epsilon, 93.0 / 256.0);
    }

    #[test]
    fn symmetric_witness_achieves_distance() {
        for t in (0..65536u64).step_by(97) {
            let f = BooleanFunction::from_small_table(4, t).unwrap();
            let r = exact_distance_to_symmetric(&f).unwrap();
            let w = r.witness.unwrap();
            assert!(is_symmetric(&w));
            assert_eq!(hamming_distance(&f, &w).unwrap(), r.flips);
        }
    }

    #[test]
    fn class_distance_triangle_free() {
        let one3 = builtin("constant1", 3).unwrap();
        let r3 = exact_distance_to_class(&one3, is_triangle_free).unwrap();
        // The largest triangle-free sets are the affine halfspaces missing 0.
        assert_eq!(r3.flips, 4);
        let one4 = builtin("constant1", 4).unwrap();
        let r4 = exact_distance_to_class(&one4, is_triangle_free).unwrap();
        assert_eq!(r4.flips, 8);
        assert!(is_triangle_free(r4.witness.as_ref().unwrap()));
        let half = builtin("dictator", 4).unwrap();
        assert_eq!(exact_distance_to_class(&half, is_triangle_free).unwrap().flips, 0);
        assert!(exact_distance_to_class(&builtin("constant1", 5).unwrap(), is_triangle_free).is_err());
    }
}
