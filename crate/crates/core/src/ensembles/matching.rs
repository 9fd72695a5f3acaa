use rand::seq::SliceRandom;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qstate::RngStream;

/// Pairs `u ≺ v` between layers `k−1` and `k`, `k = ⌈n/2⌉`, with all
/// endpoints distinct and no `uᵢ ≼ vⱼ` for `i ≠ j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matching {
    n: usize,
    pairs: Vec<(u32, u32)>,
}

fn below(u: u32, v: u32) -> bool {
    u & !v == 0
}

impl Matching {
    /// Validates an explicit pair list. Layers are not enforced here, only
    /// distinctness, `u ≺ v` and cross-incomparability, so hand-built
    /// examples on arbitrary points are allowed.
    pub fn from_pairs(n: usize, pairs: Vec<(u32, u32)>) -> Result<Self> {
        let m = Self { n, pairs };
        m.verify()?;
        Ok(m)
    }

    /// Pairs over integer labels with no order structure, as used by the
    /// combinatorial lemmas; only distinctness is checked.
    pub fn unordered(n: usize, pairs: Vec<(u32, u32)>) -> Result<Self> {
        let m = Self { n, pairs };
        m.check_distinct()?;
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn achieved_m(&self) -> usize {
        self.pairs.len()
    }

    /// `ε = m/2^n`.
    pub fn epsilon(&self) -> f64 {
        self.pairs.len() as f64 / (1u64 << self.n) as f64
    }

    /// For each point of the cube, `Some((pair index, is_upper))` if it lies
    /// in `∪M`.
    pub fn membership(&self) -> Vec<Option<(usize, bool)>> {
        let mut out = vec![None; 1usize << self.n];
        for (i, &(u, v)) in self.pairs.iter().enumerate() {
            out[u as usize] = Some((i, false));
            out[v as usize] = Some((i, true));
        }
        out
    }

    fn check_distinct(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &self.pairs {
            if u >> self.n != 0 || v >> self.n != 0 {
                return Err(Error::Arity(format!("pair ({u}, {v}) does not fit in {} bits", self.n)));
            }
            if !seen.insert(u) || !seen.insert(v) {
                return Err(Error::InternalConsistency("matching endpoints are not distinct".into()));
            }
        }
        Ok(())
    }

    /// Exhaustive check of the three matching conditions (without parity).
    pub fn verify(&self) -> Result<()> {
        self.check_distinct()?;
        for &(u, v) in &self.pairs {
            if u == v || !below(u, v) {
                return Err(Error::InternalConsistency(format!("pair ({u:b}, {v:b}) is not u ≺ v")));
            }
        }
        for (i, &(ui, _)) in self.pairs.iter().enumerate() {
            for (j, &(_, vj)) in self.pairs.iter().enumerate() {
                if i != j && (below(ui, vj) || below(vj, ui)) {
                    return Err(Error::InternalConsistency(format!(
                        "u_{i} = {ui:b} and v_{j} = {vj:b} are comparable"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Greedy randomised matching between layers `k−1` and `k`: candidate
/// edges `u ≺ v` are visited in random order and kept when both endpoints are
/// free and no cross-comparability arises. Stops at `target_m` and trims to
/// an even size, so `achieved_m ≤ target_m` may fall short.
pub fn build_layer_matching(n: usize, target_m: usize, rng: &mut RngStream) -> Result<Matching> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("layer matchings need n ≥ 2, got {n}")));
    }
    if target_m % 2 != 0 {
        return Err(Error::InvalidParameter(format!("target_m must be even, got {target_m}")));
    }
    if n > 24 {
        return Err(Error::Capability(format!("layer matchings are built for n ≤ 24, got {n}")));
    }
    let k = n.div_ceil(2) as u32;
    let mut edges: Vec<(u32, u32)> = (0..1u32 << n)
        .filter(|u| u.count_ones() == k - 1)
        .flat_map(|u| (0..n).map(move |b| (u, u | (1 << b))).filter(move |&(_, v)| v != u))
        .collect();
    edges.shuffle(rng);

    let mut used = vec![false; 1usize << n];
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for (u, v) in edges {
        if pairs.len() >= target_m {
            break;
        }
        if used[u as usize] || used[v as usize] {
            continue;
        }
        if pairs.iter().any(|&(u2, v2)| below(u2, v) || below(u, v2)) {
            continue;
        }
        used[u as usize] = true;
        used[v as usize] = true;
        pairs.push((u, v));
    }
    if pairs.len() % 2 == 1 {
        pairs.pop();
    }
    let m = Matching { n, pairs };
    m.verify()?;
    Ok(m)
}
