//! One-line lowercase hex truth tables: `2^n` bits packed most significant
//! bit first in index order, so the first digit's high bit is `f(0)`. The
//! arity is inferred from the digit count, which makes `n = 1` unencodable.

use super::BooleanFunction;
use crate::error::{Error, Result};

pub fn to_hex(f: &BooleanFunction) -> String {
    assert!(f.arity() >= 2, "hex truth tables need arity ≥ 2");
    let digits = f.len() / 4;
    let mut out = String::with_capacity(digits);
    for d in 0..digits {
        let mut v = 0u32;
        for k in 0..4 {
            v = (v << 1) | f.get((4 * d + k) as u32) as u32;
        }
        out.push(char::from_digit(v, 16).unwrap());
    }
    out
}

pub fn from_hex(text: &str) -> Result<BooleanFunction> {
    let text = text.trim();
    let digits = text.len();
    if digits == 0 || !digits.is_power_of_two() {
        return Err(Error::Parse(format!(
            "hex truth table has {digits} digits; expected a power of two"
        )));
    }
    let n = (4 * digits).trailing_zeros() as usize;
    let mut f = BooleanFunction::zeros(n)?;
    for (d, c) in text.chars().enumerate() {
        if c.is_ascii_uppercase() {
            return Err(Error::Parse(format!("hex digit `{c}` must be lowercase")));
        }
        let v = c
            .to_digit(16)
            .ok_or_else(|| Error::Parse(format!("`{c}` is not a hex digit")))?;
        for k in 0..4 {
            if (v >> (3 - k)) & 1 == 1 {
                f.set((4 * d + k) as u32, true);
            }
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::builtin;
    use proptest::prelude::*;

    #[test]
    fn majority_three_hex() {
        // table 00010111
        let maj = builtin("majority", 3).unwrap();
        assert_eq!(to_hex(&maj), "17");
        assert_eq!(from_hex("17").unwrap(), maj);
    }

    #[test]
    fn rejects_uppercase_and_bad_length() {
        assert!(from_hex("1F").is_err());
        assert!(from_hex("123").is_err());
        assert!(from_hex("").is_err());
        assert!(from_hex("zz").is_err());
    }

    #[test]
    fn trailing_newline_is_accepted() {
        assert_eq!(from_hex("e8\n").unwrap().arity(), 3);
    }

    proptest! {
        #[test]
        fn hex_round_trip(n in 2usize..9, seed in any::<u64>()) {
            let f = BooleanFunction::from_fn(n, |x| (seed.rotate_left(x % 64) ^ x as u64) & 1 == 1).unwrap();
            prop_assert_eq!(from_hex(&to_hex(&f)).unwrap(), f);
        }
    }
}
