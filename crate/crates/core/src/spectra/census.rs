use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::closed_form::{binomial, n_closed, x1_x2_split, ClosedFormParams};
use super::difference::decode_tuple;
use super::tuples::{tuple_stats, PairLookup};
use super::check_cap;
use crate::ensembles::Matching;
use crate::error::{Error, Result};

/// One compatibility class: a complete bipartite graph on tuples of one type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub type_pairs: Vec<usize>,
    /// For the empty type `(#E = 1, #E = 0)`, otherwise the two part sizes
    /// in increasing order.
    pub parts: (u64, u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub type_size: usize,
    pub count: u64,
    pub parts: (u64, u64),
}

/// Parity of `u` and `v` occurrences per pair, two bits per pair. The
/// parity vector of `𝐱 ∪ 𝐲` is the xor of the two.
fn parity_signature(x: &[u32], member: &[Option<(usize, bool)>]) -> u64 {
    x.iter().fold(0u64, |acc, &z| match member[z as usize] {
        Some((i, upper)) => acc ^ (1u64 << (2 * i + upper as usize)),
        None => acc,
    })
}

const LOW: u64 = 0x5555_5555_5555_5555;

fn compatible_signatures(a: u64, b: u64) -> bool {
    let s = a ^ b;
    let (l, u) = (s & LOW, (s >> 1) & LOW);
    l == u && l.count_ones() % 2 == 1
}

/// Enumerates the compatibility graph on all `2^{nt}` tuples and checks the
/// structure lemma exhaustively: one class per type, each class a complete
/// bipartite graph, no edges between classes, the number of types equal to
/// `Σ_{k ≤ min(t,m)} C(m,k)`, part sizes `N(t,k)/2` for `k ≥ 1` and
/// `(x₁, x₂)` for the empty type. Any failure is a theorem violation.
pub fn component_census(m: &Matching, t: usize, cap: usize) -> Result<Vec<CensusEntry>> {
    Ok(summarize(&census_components(m, t, cap)?))
}

pub fn census_components(m: &Matching, t: usize, cap: usize) -> Result<Vec<Component>> {
    let n = m.n();
    if m.achieved_m() > 32 {
        return Err(Error::Capability("census signatures hold at most 32 pairs".into()));
    }
    if n * t >= 40 {
        return Err(Error::Capability(format!("2^{} tuples is too many", n * t)));
    }
    let dim = 1usize << (n * t);
    check_cap(dim, cap)?;
    let lookup = PairLookup::new(m);
    let member = m.membership();
    let tuples: Vec<Vec<u32>> = (0..dim).map(|i| decode_tuple(i, n, t)).collect();
    let sig: Vec<u64> = tuples.iter().map(|x| parity_signature(x, &member)).collect();
    let stats: Vec<_> = tuples.iter().map(|x| tuple_stats(x, &lookup)).collect();

    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (i, s) in stats.iter().enumerate() {
        groups.entry(s.type_pairs.clone()).or_default().push(i);
    }
    let mut side = vec![0u32; dim];
    for (gi, members) in groups.values().enumerate() {
        let x0 = members[0];
        for &y in members {
            // classes are labelled 2·gi + (is a neighbour of x0)
            side[y] = 2 * gi as u32 + compatible_signatures(sig[x0], sig[y]) as u32;
        }
    }
    for i in 0..dim {
        for j in 0..dim {
            let expect = side[i] / 2 == side[j] / 2 && side[i] != side[j];
            if compatible_signatures(sig[i], sig[j]) != expect {
                return Err(Error::TheoremViolation(format!(
                    "tuples {:?} and {:?} break the complete bipartite structure",
                    tuples[i], tuples[j]
                )));
            }
        }
    }

    let expected_types: BigInt = (0..=m.achieved_m().min(t)).map(|k| binomial(m.achieved_m(), k)).sum();
    if BigInt::from(groups.len()) != expected_types {
        return Err(Error::TheoremViolation(format!(
            "{} types but Σ C(m,k) = {expected_types}",
            groups.len()
        )));
    }

    let params = ClosedFormParams::new(n, t, m.achieved_m())?;
    let mut out = Vec::new();
    for (gi, (type_pairs, members)) in groups.into_iter().enumerate() {
        let parts = if type_pairs.is_empty() {
            let odd = members.iter().filter(|&&i| stats[i].e).count() as u64;
            // the bipartition must be the E split
            let first_side = side[members[0]];
            for &i in &members {
                if (side[i] == first_side) != (stats[i].e == stats[members[0]].e) {
                    return Err(Error::TheoremViolation("empty-type parts do not follow E".into()));
                }
            }
            let (x1, x2) = x1_x2_split(&params)?;
            let parts = (odd, members.len() as u64 - odd);
            if (BigInt::from(parts.0), BigInt::from(parts.1)) != (x1, x2) {
                return Err(Error::TheoremViolation(format!("empty-type parts {parts:?} differ from (x1, x2)")));
            }
            parts
        } else {
            let near = members.iter().filter(|&&i| side[i] == 2 * gi as u32 + 1).count() as u64;
            let far = members.len() as u64 - near;
            let half = n_closed(&params, type_pairs.len())? / 2;
            if BigInt::from(near) != half || BigInt::from(far) != half {
                return Err(Error::TheoremViolation(format!(
                    "type {type_pairs:?} has parts ({near}, {far}) but N(t,k)/2 = {half}"
                )));
            }
            (near.min(far), near.max(far))
        };
        out.push(Component { type_pairs, parts });
    }
    Ok(out)
}

fn summarize(components: &[Component]) -> Vec<CensusEntry> {
    let mut by_k: BTreeMap<usize, CensusEntry> = BTreeMap::new();
    for c in components {
        let e = by_k.entry(c.type_pairs.len()).or_insert(CensusEntry {
            type_size: c.type_pairs.len(),
            count: 0,
            parts: c.parts,
        });
        e.count += 1;
    }
    by_k.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::build_layer_matching;
    use crate::qstate::RngStream;
    use crate::spectra::tuples::compatible_direct;
    use crate::spectra::DEFAULT_DIM_CAP;

    #[test]
    fn signatures_agree_with_definition() {
        let mut r = RngStream::new(0, 0);
        let m = build_layer_matching(3, 2, &mut r).unwrap();
        let (l, member) = (PairLookup::new(&m), m.membership());
        for i in 0..64 {
            for j in 0..64 {
                let (x, y) = (decode_tuple(i, 3, 2), decode_tuple(j, 3, 2));
                assert_eq!(
                    compatible_signatures(parity_signature(&x, &member), parity_signature(&y, &member)),
                    compatible_direct(&x, &y, &l)
                );
            }
        }
    }

    #[test]
    fn n3_t2_m2() {
        let mut r = RngStream::new(1, 0);
        let m = build_layer_matching(3, 2, &mut r).unwrap();
        assert_eq!(m.achieved_m(), 2);
        let census = component_census(&m, 2, DEFAULT_DIM_CAP).unwrap();
        let count: u64 = census.iter().map(|e| e.count).sum();
        assert_eq!(count, 1 + 2 + 1);
        let total: u64 = census.iter().map(|e| e.count * (e.parts.0 + e.parts.1)).sum();
        assert_eq!(total, 64);
    }

    #[test]
    fn other_sizes() {
        let mut r = RngStream::new(2, 0);
        for (n, t) in [(3, 1), (3, 3), (4, 2), (4, 3)] {
            let m = build_layer_matching(n, 4, &mut r).unwrap();
            component_census(&m, t, DEFAULT_DIM_CAP).unwrap();
        }
    }
}
