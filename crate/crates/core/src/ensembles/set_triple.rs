use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::boolfn::{triple, BooleanFunction};
use crate::error::{Error, Result};
use crate::qstate::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TripleMode {
    /// `C` uniform and independent of `A, B`.
    Independent,
    /// `C = A Δ B`.
    Xor,
}

/// Three subsets of `{0,1}^n`, stored as indicator functions.
#[derive(Debug, Clone, PartialEq)]
pub struct SetTriple {
    pub a: BooleanFunction,
    pub b: BooleanFunction,
    pub c: BooleanFunction,
    pub mode: TripleMode,
}

fn uniform_subset(n: usize, rng: &mut RngStream) -> Result<BooleanFunction> {
    BooleanFunction::from_fn(n, |_| rng.random_bool(0.5))
}

pub fn sample_set_triple(n: usize, mode: TripleMode, rng: &mut RngStream) -> Result<SetTriple> {
    let a = uniform_subset(n, rng)?;
    let b = uniform_subset(n, rng)?;
    let c = match mode {
        TripleMode::Independent => uniform_subset(n, rng)?,
        TripleMode::Xor => a.xor(&b)?,
    };
    Ok(SetTriple { a, b, c, mode })
}

/// `C = (A Δ B) ∪ P` where `P` is `k` uniformly chosen points of `A ∩ B`
/// (all of them if fewer). The result sits at distance exactly `|P|` from
/// the xor triple on the same `A, B`, which makes it the closest dense
/// triple to that xor triple.
pub fn planted_triple(a: &BooleanFunction, b: &BooleanFunction, k: usize, rng: &mut RngStream) -> Result<SetTriple> {
    let mut common = a.and(b)?.support();
    common.shuffle(rng);
    let mut c = a.xor(b)?;
    for &x in common.iter().take(k) {
        c.set(x, true);
    }
    SetTriple::new(a.clone(), b.clone(), c, TripleMode::Independent)
}

impl SetTriple {
    /// Checks arities and, in xor mode, `C = A Δ B`.
    pub fn new(a: BooleanFunction, b: BooleanFunction, c: BooleanFunction, mode: TripleMode) -> Result<Self> {
        if a.arity() != b.arity() || a.arity() != c.arity() {
            return Err(Error::Arity("set triple members must share an arity".into()));
        }
        if mode == TripleMode::Xor && c != a.xor(&b)? {
            return Err(Error::Contract("xor-mode triple needs C = A Δ B".into()));
        }
        Ok(Self { a, b, c, mode })
    }

    pub fn arity(&self) -> usize {
        self.a.arity()
    }

    pub fn intersection_size(&self) -> usize {
        self.a.and(&self.b).and_then(|ab| ab.and(&self.c)).map(|s| s.count_ones()).unwrap_or(0)
    }

    /// `|A∩B∩C| / 2^n`.
    pub fn intersection_density(&self) -> f64 {
        self.intersection_size() as f64 / self.a.len() as f64
    }

    /// The `(n+2)`-bit encoding `f_{(A,B,C)}`.
    pub fn function(&self) -> Result<BooleanFunction> {
        triple(&self.a, &self.b, &self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xor_triples_have_empty_intersection() {
        let mut r = RngStream::new(0, 0);
        for n in 1..=10 {
            let t = sample_set_triple(n, TripleMode::Xor, &mut r).unwrap();
            assert_eq!(t.intersection_size(), 0);
        }
    }

    #[test]
    fn independent_density_concentrates() {
        let mut r = RngStream::new(1, 0);
        let inside = (0..200)
            .filter(|_| {
                let d = sample_set_triple(10, TripleMode::Independent, &mut r).unwrap().intersection_density();
                (1.0 / 16.0..=0.25).contains(&d)
            })
            .count();
        assert!(inside >= 198);
    }

    #[test]
    fn planted_intersection() {
        let mut r = RngStream::new(3, 0);
        let t = sample_set_triple(6, TripleMode::Xor, &mut r).unwrap();
        let p = planted_triple(&t.a, &t.b, 4, &mut r).unwrap();
        let common = t.a.and(&t.b).unwrap().count_ones();
        assert_eq!(p.intersection_size(), common.min(4));
    }

    #[test]
    fn encodings_differ_on_c_slice_only() {
        let mut r = RngStream::new(2, 0);
        let t = sample_set_triple(5, TripleMode::Independent, &mut r).unwrap();
        let x = SetTriple::new(t.a.clone(), t.b.clone(), t.a.xor(&t.b).unwrap(), TripleMode::Xor).unwrap();
        let (f, g) = (t.function().unwrap(), x.function().unwrap());
        for z in 0..(1u32 << 7) {
            if z & 3 != 2 {
                assert_eq!(f.get(z), g.get(z));
            }
        }
    }
}
