//! Exact property predicates and the violation probabilities that the
//! soundness theorems relate to distances.

use super::BooleanFunction;

/// `c[w] = [#{x : |x| = w, f(x) = 0}, #{x : |x| = w, f(x) = 1}]`.
pub fn weight_class_counts(f: &BooleanFunction) -> Vec<[u64; 2]> {
    let mut counts = vec![[0u64; 2]; f.arity() + 1];
    for x in 0..f.len() as u32 {
        counts[x.count_ones() as usize][f.get(x) as usize] += 1;
    }
    counts
}

pub fn is_monotone(f: &BooleanFunction) -> bool {
    let n = f.arity();
    (0..n).all(|bit| {
        let mask = 1u32 << bit;
        (0..f.len() as u32)
            .filter(|x| x & mask == 0)
            .all(|x| !f.get(x) || f.get(x | mask))
    })
}

/// `Pr_{x,i}` of the local violation event: `x` sits on an edge in direction
/// `i` whose lower endpoint has value 1 and upper endpoint value 0. Each
/// violated edge is hit from both of its endpoints.
pub fn monotone_violation_probability(f: &BooleanFunction) -> f64 {
    let n = f.arity();
    let mut violated_edges = 0u64;
    for bit in 0..n {
        let mask = 1u32 << bit;
        for x in (0..f.len() as u32).filter(|x| x & mask == 0) {
            if f.get(x) && !f.get(x | mask) {
                violated_edges += 1;
            }
        }
    }
    2.0 * violated_edges as f64 / (n as f64 * f.len() as f64)
}

pub fn is_symmetric(f: &BooleanFunction) -> bool {
    weight_class_counts(f).iter().all(|c| c[0] == 0 || c[1] == 0)
}

/// `Pr_{x, π}[f(x) ≠ f(πx)] = 1 − 2^{−n} Σ_w (c_{w,0}² + c_{w,1}²)/C(n,w)`.
pub fn symmetry_violation_probability(f: &BooleanFunction) -> f64 {
    let agree: f64 = weight_class_counts(f)
        .iter()
        .map(|&[c0, c1]| {
            let size = (c0 + c1) as f64;
            (c0 * c0 + c1 * c1) as f64 / size
        })
        .sum();
    (1.0 - agree / f.len() as f64).max(0.0)
}

/// `Pr_{x,y}[f(x) = f(y) = f(x⊕y) = 1]` by enumeration over the support.
pub fn triangle_density(f: &BooleanFunction) -> f64 {
    let support = f.support();
    let mut count = 0u64;
    for &x in &support {
        for &y in &support {
            count += f.get(x ^ y) as u64;
        }
    }
    count as f64 / (f.len() as f64 * f.len() as f64)
}

/// No `x, y` (including `x = y`) with `f(x) = f(y) = f(x⊕y) = 1`.
pub fn is_triangle_free(f: &BooleanFunction) -> bool {
    let support = f.support();
    support
        .iter()
        .all(|&x| support.iter().all(|&y| !f.get(x ^ y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{builtin, coordinate_mask};
    use proptest::prelude::*;

    /// Direct transcription of the local condition over all `(x, i)`.
    fn violation_oracle(f: &BooleanFunction) -> f64 {
        let n = f.arity();
        let mut hits = 0u64;
        for x in 0..f.len() as u32 {
            for i in 1..=n {
                let e = coordinate_mask(i, n);
                let xi = x & e != 0;
                let (fx, fy) = (f.get(x), f.get(x ^ e));
                if (!xi && fx && !fy) || (xi && !fx && fy) {
                    hits += 1;
                }
            }
        }
        hits as f64 / (n as f64 * f.len() as f64)
    }

    /// Enumerates every permutation of `[n]` by Heap's algorithm.
    fn permutations(n: usize) -> Vec<Vec<usize>> {
        fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k <= 1 {
                out.push(a.clone());
                return;
            }
            for i in 0..k {
                heap(k - 1, a, out);
                let j = if k % 2 == 0 { i } else { 0 };
                a.swap(j, k - 1);
            }
        }
        let mut out = Vec::new();
        heap(n, &mut (0..n).collect(), &mut out);
        out
    }

    fn permute(x: u32, perm: &[usize]) -> u32 {
        perm.iter()
            .enumerate()
            .fold(0, |acc, (dst, &src)| acc | (((x >> src) & 1) << dst))
    }

    fn symmetry_oracle(f: &BooleanFunction) -> f64 {
        let perms = permutations(f.arity());
        let mut hits = 0u64;
        for p in &perms {
            for x in 0..f.len() as u32 {
                hits += (f.get(x) != f.get(permute(x, p))) as u64;
            }
        }
        hits as f64 / (perms.len() as f64 * f.len() as f64)
    }

    #[test]
    fn violation_examples() {
        for n in 1..8 {
            assert_eq!(monotone_violation_probability(&builtin("dictator", n).unwrap()), 0.0);
            let anti = monotone_violation_probability(&builtin("antidictator", n).unwrap());
            assert!((anti - 1.0 / n as f64).abs() < 1e-15);
            assert!((anti - violation_oracle(&builtin("antidictator", n).unwrap())).abs() < 1e-15);
        }
        for n in 2..8 {
            let parity = builtin("parity", n).unwrap();
            assert_eq!(monotone_violation_probability(&parity), 0.5);
            assert_eq!(violation_oracle(&parity), 0.5);
        }
    }

    #[test]
    fn symmetry_examples() {
        assert_eq!(symmetry_violation_probability(&builtin("parity", 5).unwrap()), 0.0);
        assert_eq!(symmetry_violation_probability(&builtin("majority", 6).unwrap()), 0.0);
        let d2 = builtin("dictator", 2).unwrap();
        assert_eq!(symmetry_violation_probability(&d2), 0.25);
        assert_eq!(symmetry_oracle(&d2), 0.25);
        for n in 1..=5 {
            let d = builtin("dictator", n).unwrap();
            assert!((symmetry_violation_probability(&d) - symmetry_oracle(&d)).abs() < 1e-12);
        }
    }

    #[test]
    fn triangle_examples() {
        assert_eq!(triangle_density(&builtin("constant1", 4).unwrap()), 1.0);
        assert_eq!(triangle_density(&builtin("constant0", 4).unwrap()), 0.0);
        let half = builtin("dictator", 6).unwrap();
        assert_eq!(triangle_density(&half), 0.0);
        assert!(is_triangle_free(&half));
        assert!(!is_triangle_free(&builtin("constant1", 1).unwrap()));
    }

    #[test]
    fn predicate_examples() {
        let maj = builtin("majority", 3).unwrap();
        assert!(is_monotone(&maj) && is_symmetric(&maj));
        assert!(!is_monotone(&builtin("antidictator", 3).unwrap()));
        assert!(!is_symmetric(&builtin("dictator", 3).unwrap()));
    }

    #[test]
    fn violation_matches_oracle_on_all_three_bit_functions() {
        for t in 0..256u64 {
            let f = BooleanFunction::from_small_table(3, t).unwrap();
            assert_eq!(monotone_violation_probability(&f), violation_oracle(&f));
            assert_eq!(is_monotone(&f), violation_oracle(&f) == 0.0);
        }
    }

    proptest! {
        #[test]
        fn symmetry_closed_form_matches_permutation_enumeration(n in 1usize..=5, t in any::<u64>()) {
            let f = BooleanFunction::from_fn(n, |x| (t >> (x % 64)) & 1 == 1).unwrap();
            prop_assert!((symmetry_violation_probability(&f) - symmetry_oracle(&f)).abs() < 1e-12);
            prop_assert_eq!(is_symmetric(&f), symmetry_oracle(&f) == 0.0);
        }

        #[test]
        fn triangle_free_iff_zero_density(t in any::<u16>()) {
            let f = BooleanFunction::from_small_table(4, t as u64).unwrap();
            prop_assert_eq!(is_triangle_free(&f), triangle_density(&f) == 0.0);
        }
    }
}
