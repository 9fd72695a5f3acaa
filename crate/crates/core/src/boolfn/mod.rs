//! Boolean functions as truth tables.
//!
//! Index convention: the table entry for input `x = x₁x₂…xₙ` lives at
//! `Σᵢ xᵢ·2^{n−i}`, so `x₁` is the most significant bit of the index. The same
//! convention encodes subsets `S ⊆ [n]` as characteristic strings, so
//! coordinate `i` (1-based) is bit `n − i` of an index everywhere in the crate.

mod builtin;
mod distance;
mod fourier;
mod hex;
mod props;

pub use builtin::{builtin, mm, mm_dual, pair, triple, Builtin, SIMPLE_NAMES};
pub use distance::{
    exact_distance_to_class, exact_distance_to_monotone, exact_distance_to_symmetric,
    hamming_distance, monotone_functions, DistanceReport, MAX_CLASS_ARITY, MAX_MONOTONE_ARITY,
};
pub use fourier::{fourier_monotonicity_statistic, total_influence, walsh_transform, FourierSpectrum};
pub use hex::{from_hex, to_hex};
pub use props::{
    is_monotone, is_symmetric, is_triangle_free, monotone_violation_probability,
    symmetry_violation_probability, triangle_density, weight_class_counts,
};

use crate::error::{Error, Result};

/// Largest supported arity.
pub const MAX_ARITY: usize = 20;

/// Truth table of an `n`-bit Boolean function, bit-packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    arity: usize,
    words: Vec<u64>,
}

impl std::fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.arity >= 2 {
            write!(f, "BooleanFunction({}; {})", self.arity, to_hex(self))
        } else {
            write!(f, "BooleanFunction({}; {:?})", self.arity, self.bits().collect::<Vec<_>>())
        }
    }
}

fn check_arity(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Arity("arity must be at least 1".into()));
    }
    if n > MAX_ARITY {
        return Err(Error::Capability(format!(
            "arity {n} exceeds the supported maximum of {MAX_ARITY}"
        )));
    }
    Ok(())
}

impl BooleanFunction {
    /// The all-zero function on `n` bits.
    pub fn zeros(n: usize) -> Result<Self> {
        check_arity(n)?;
        let len = 1usize << n;
        Ok(Self { arity: n, words: vec![0; len.div_ceil(64)] })
    }

    /// Builds a function by evaluating `f` on every index `0..2^n`.
    pub fn from_fn(n: usize, mut f: impl FnMut(u32) -> bool) -> Result<Self> {
        let mut out = Self::zeros(n)?;
        for x in 0..out.len() as u32 {
            if f(x) {
                out.set(x, true);
            }
        }
        Ok(out)
    }

    /// Builds a function from an explicit table of 0/1 entries in index order.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let len = bits.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::Arity(format!(
                "table length {len} is not a power of two ≥ 2"
            )));
        }
        let n = len.trailing_zeros() as usize;
        let mut out = Self::zeros(n)?;
        for (x, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => out.set(x as u32, true),
                other => {
                    return Err(Error::Parse(format!("table entry {other} is not a bit")));
                }
            }
        }
        Ok(out)
    }

    /// Builds a function from a packed table with at most 64 entries
    /// (`n ≤ 6`); bit `x` of `table` is `f(x)`.
    pub fn from_small_table(n: usize, table: u64) -> Result<Self> {
        check_arity(n)?;
        if n > 6 {
            return Err(Error::Arity(format!("packed small tables hold n ≤ 6, got {n}")));
        }
        let mask = if n == 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
        Ok(Self { arity: n, words: vec![table & mask] })
    }

    /// Packed table for `n ≤ 6`, bit `x` holding `f(x)`.
    pub fn small_table(&self) -> Option<u64> {
        (self.arity <= 6).then(|| self.words[0])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Table length `2^n`.
    pub fn len(&self) -> usize {
        1usize << self.arity
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `f(x)` for an index `x < 2^n`.
    #[inline]
    pub fn get(&self, x: u32) -> bool {
        let x = x as usize;
        (self.words[x >> 6] >> (x & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, x: u32, value: bool) {
        let x = x as usize;
        let bit = 1u64 << (x & 63);
        if value {
            self.words[x >> 6] |= bit;
        } else {
            self.words[x >> 6] &= !bit;
        }
    }

    /// `f(x)` for an explicit bit string `x₁…xₙ`.
    pub fn evaluate(&self, x: &[u8]) -> Result<bool> {
        Ok(self.get(bits_to_index(x, self.arity)?))
    }

    /// ±1 value `(−1)^{f(x)}`.
    #[inline]
    pub fn sign(&self, x: u32) -> f64 {
        if self.get(x) {
            -1.0
        } else {
            1.0
        }
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len() as u32).map(|x| self.get(x))
    }

    /// Number of inputs with `f(x) = 1`.
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Inputs with `f(x) = 1`, in increasing index order.
    pub fn support(&self) -> Vec<u32> {
        (0..self.len() as u32).filter(|&x| self.get(x)).collect()
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    /// Pointwise complement.
    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for w in &mut out.words {
            *w = !*w;
        }
        out.mask_tail();
        out
    }

    /// Pointwise XOR with a function of the same arity.
    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.zip_words(other, |a, b| a ^ b)
    }

    /// Pointwise AND with a function of the same arity.
    pub fn and(&self, other: &Self) -> Result<Self> {
        self.zip_words(other, |a, b| a & b)
    }

    fn zip_words(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::Arity(format!(
                "arity mismatch: {} vs {}",
                self.arity, other.arity
            )));
        }
        let words = self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect();
        Ok(Self { arity: self.arity, words })
    }

    fn mask_tail(&mut self) {
        let len = self.len();
        if len < 64 {
            self.words[0] &= (1u64 << len) - 1;
        }
    }
}

/// Index `Σᵢ xᵢ·2^{n−i}` of a bit string.
pub fn bits_to_index(x: &[u8], n: usize) -> Result<u32> {
    if x.len() != n {
        return Err(Error::Arity(format!(
            "input has length {} but the function has arity {n}",
            x.len()
        )));
    }
    x.iter().try_fold(0u32, |acc, &b| match b {
        0 | 1 => Ok((acc << 1) | b as u32),
        other => Err(Error::Parse(format!("input entry {other} is not a bit"))),
    })
}

/// Bit string `x₁…xₙ` of an index.
pub fn index_to_bits(x: u32, n: usize) -> Vec<u8> {
    (0..n).map(|i| ((x >> (n - 1 - i)) & 1) as u8).collect()
}

/// Bit mask selecting coordinate `i` (1-based) within an `n`-bit index.
#[inline]
pub fn coordinate_mask(i: usize, n: usize) -> u32 {
    1u32 << (n - i)
}
