use crate::boolfn::{bits_to_index, BooleanFunction};
use crate::error::{Error, Result};

/// `x ↦ f(x ⊕ y)`, the effect of `U_y|x⟩ = |x ⊕ y⟩` on the input register.
pub fn shift_function(f: &BooleanFunction, y: &[u8]) -> Result<BooleanFunction> {
    let y = bits_to_index(y, f.arity())?;
    Ok(shift_by_index(f, y))
}

pub fn shift_by_index(f: &BooleanFunction, y: u32) -> BooleanFunction {
    if y == 0 {
        return f.clone();
    }
    BooleanFunction::from_fn(f.arity(), |x| f.get(x ^ y)).expect("arity already valid")
}

/// `f̃(x, y) = f(x, y) ⊕ ⟨x, y⟩` for `f` on `2n` bits, `x` the high half.
pub fn ip_transform(f: &BooleanFunction) -> Result<BooleanFunction> {
    let arity = f.arity();
    if arity % 2 != 0 {
        return Err(Error::Arity(format!("ip_transform needs even arity, got {arity}")));
    }
    let n = arity / 2;
    let low = (1u32 << n) - 1;
    BooleanFunction::from_fn(arity, |z| f.get(z) ^ (((z >> n) & z & low).count_ones() % 2 == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{builtin, index_to_bits, mm, mm_dual};
    use crate::qstate::SubsetState;
    use proptest::prelude::*;

    #[test]
    fn zero_shift_is_identity() {
        let f = builtin("majority", 5).unwrap();
        assert_eq!(shift_function(&f, &[0; 5]).unwrap(), f);
        assert!(shift_function(&f, &[0; 4]).is_err());
    }

    #[test]
    fn ip_transform_of_mm() {
        let h = BooleanFunction::from_fn(3, |x| x == 2 || x == 7).unwrap();
        let t = ip_transform(&mm(&h).unwrap()).unwrap();
        let td = ip_transform(&mm_dual(&h).unwrap()).unwrap();
        for z in 0..64u32 {
            assert_eq!(t.get(z), h.get(z >> 3));
            assert_eq!(td.get(z), h.get(z & 7));
        }
        assert!(ip_transform(&builtin("parity", 3).unwrap()).is_err());
    }

    #[test]
    fn shifted_intersection_matches_overlap() {
        let f = BooleanFunction::from_fn(5, |x| (x * 11 + 5) % 7 < 3).unwrap();
        let s = SubsetState::from_indicator(f.clone()).unwrap();
        for y in 0..32u32 {
            let g = shift_function(&f, &index_to_bits(y, 5)).unwrap();
            let both = (0..32u32).filter(|&x| f.get(x) && f.get(x ^ y)).count() as f64;
            let t = SubsetState::from_indicator(g).unwrap();
            let scaled = s.overlap(&t).unwrap() * s.len() as f64;
            assert!((scaled - both).abs() < 1e-9);
        }
    }

    proptest! {
        #[test]
        fn shift_is_involution(t in any::<u64>(), y in 0u32..64) {
            let f = BooleanFunction::from_small_table(6, t).unwrap();
            prop_assert_eq!(shift_by_index(&shift_by_index(&f, y), y), f);
        }

        #[test]
        fn ip_transform_is_involution(t in any::<u64>()) {
            let f = BooleanFunction::from_small_table(6, t).unwrap();
            prop_assert_eq!(ip_transform(&ip_transform(&f).unwrap()).unwrap(), f);
        }
    }
}
