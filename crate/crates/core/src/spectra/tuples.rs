use std::collections::HashMap;

use serde::Serialize;

use crate::ensembles::Matching;

/// Where each endpoint of a matching sits: `(pair index, is_upper)`.
#[derive(Debug, Clone)]
pub struct PairLookup {
    pairs: Vec<(u32, u32)>,
    slot: HashMap<u32, (usize, bool)>,
}

impl PairLookup {
    pub fn new(m: &Matching) -> Self {
        let mut slot = HashMap::new();
        for (i, &(u, v)) in m.pairs().iter().enumerate() {
            slot.insert(u, (i, false));
            slot.insert(v, (i, true));
        }
        Self { pairs: m.pairs().to_vec(), slot }
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn slot(&self, z: u32) -> Option<(usize, bool)> {
        self.slot.get(&z).copied()
    }
}

/// `E(𝐱)`, `sing(𝐱)` and `type(𝐱)` of a tuple read as a multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TupleStats {
    /// Number of extracted pairs, mod 2.
    pub e: bool,
    /// Sorted singleton set.
    pub sing: Vec<u32>,
    /// Sorted indices of the pairs meeting `sing`.
    pub type_pairs: Vec<usize>,
}

impl TupleStats {
    pub fn type_size(&self) -> usize {
        self.type_pairs.len()
    }
}

/// Greedy pair extraction: pair `(u, v)` is taken `min(#u, #v)` times; the
/// leftovers of odd multiplicity form `sing`.
pub fn tuple_stats(x: &[u32], lookup: &PairLookup) -> TupleStats {
    let mut counts: HashMap<usize, [u32; 2]> = HashMap::new();
    for &z in x {
        if let Some((i, upper)) = lookup.slot(z) {
            counts.entry(i).or_default()[upper as usize] += 1;
        }
    }
    let mut pairs_taken = 0u32;
    let mut sing = Vec::new();
    let mut type_pairs = Vec::new();
    for (&i, &[cu, cv]) in &counts {
        let k = cu.min(cv);
        pairs_taken += k;
        let (u, v) = lookup.pairs[i];
        if (cu - k) % 2 == 1 {
            sing.push(u);
            type_pairs.push(i);
        }
        if (cv - k) % 2 == 1 {
            sing.push(v);
            type_pairs.push(i);
        }
    }
    sing.sort_unstable();
    type_pairs.sort_unstable();
    type_pairs.dedup();
    TupleStats { e: pairs_taken % 2 == 1, sing, type_pairs }
}

/// `P(𝐱, 𝐲)`: pairs contained in `sing(𝐱) ∪ sing(𝐲)`, mod 2.
pub fn pair_parity(sx: &TupleStats, sy: &TupleStats, lookup: &PairLookup) -> bool {
    let mut sides: HashMap<usize, [bool; 2]> = HashMap::new();
    for &z in sx.sing.iter().chain(&sy.sing) {
        let (i, upper) = lookup.slot(z).expect("singletons lie in the matching");
        sides.entry(i).or_default()[upper as usize] = true;
    }
    sides.values().filter(|s| s[0] && s[1]).count() % 2 == 1
}

/// Compatibility through types: `type(𝐱) = type(𝐲)` and
/// `E(𝐱) + E(𝐲) + P(𝐱, 𝐲) ≡ 1`.
pub fn compatible_stats(sx: &TupleStats, sy: &TupleStats, lookup: &PairLookup) -> bool {
    sx.type_pairs == sy.type_pairs && (sx.e ^ sy.e ^ pair_parity(sx, sy, lookup))
}

pub fn compatible(x: &[u32], y: &[u32], lookup: &PairLookup) -> bool {
    compatible_stats(&tuple_stats(x, lookup), &tuple_stats(y, lookup), lookup)
}

/// Compatibility from its definition on the multiset `𝐱 ∪ 𝐲`: every pair has
/// `L_p = U_p` and an odd number of pairs have `L_p = U_p = 1`.
pub fn compatible_direct(x: &[u32], y: &[u32], lookup: &PairLookup) -> bool {
    let mut parity: HashMap<usize, [bool; 2]> = HashMap::new();
    for &z in x.iter().chain(y) {
        if let Some((i, upper)) = lookup.slot(z) {
            let e = parity.entry(i).or_default();
            e[upper as usize] ^= true;
        }
    }
    let mut odd = 0;
    for [l, u] in parity.values() {
        if l != u {
            return false;
        }
        odd += *l as usize;
    }
    odd % 2 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::build_layer_matching;
    use crate::qstate::RngStream;

    fn example() -> PairLookup {
        PairLookup::new(&Matching::unordered(3, vec![(1, 2), (3, 4), (5, 6)]).unwrap())
    }

    #[test]
    fn worked_examples() {
        let l = example();
        let s = tuple_stats(&[0, 1, 1, 1, 1, 2, 2, 3, 3, 3, 3, 4], &l);
        assert!(s.e);
        assert_eq!(s.sing, vec![3]);
        assert_eq!(s.type_pairs, vec![1]);

        assert_eq!(tuple_stats(&[3, 5, 5, 5], &l).type_pairs, vec![1, 2]);
        let (a, b) = (tuple_stats(&[1, 3], &l), tuple_stats(&[1, 4], &l));
        assert!(pair_parity(&a, &b, &l));

        let outside = tuple_stats(&[0, 7, 7], &l);
        assert!(!outside.e && outside.sing.is_empty() && outside.type_pairs.is_empty());
    }

    fn tuples(n: usize, t: usize) -> Vec<Vec<u32>> {
        (0..1u32 << (n * t))
            .map(|i| (0..t).map(|j| (i >> (n * (t - 1 - j))) & ((1 << n) - 1)).collect())
            .collect()
    }

    #[test]
    fn lemma_matches_definition() {
        let mut r = RngStream::new(0, 0);
        for (n, t) in [(3, 1), (3, 2), (3, 3), (4, 2)] {
            let l = PairLookup::new(&build_layer_matching(n, 2, &mut r).unwrap());
            let all = tuples(n, t);
            for x in &all {
                assert!(!compatible(x, x, &l));
                for y in &all {
                    assert_eq!(compatible(x, y, &l), compatible_direct(x, y, &l), "{x:?} {y:?}");
                }
            }
        }
    }

    #[test]
    fn rows_of_compatible_tuples_agree() {
        let mut r = RngStream::new(1, 0);
        let l = PairLookup::new(&build_layer_matching(3, 2, &mut r).unwrap());
        let all = tuples(3, 2);
        let adj: Vec<Vec<bool>> = all.iter().map(|x| all.iter().map(|y| compatible(x, y, &l)).collect()).collect();
        for x in 0..all.len() {
            for xp in 0..all.len() {
                if (0..all.len()).any(|xpp| adj[x][xpp] && adj[xp][xpp]) {
                    assert_eq!(adj[x], adj[xp]);
                }
            }
        }
    }
}
