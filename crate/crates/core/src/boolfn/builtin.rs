use super::BooleanFunction;
use crate::error::{Error, Result};

/// Named function families. The parameterised constructors carry their inner
/// functions; sets `A, B, C ⊆ {0,1}^n` are passed as indicator functions.
#[derive(Debug, Clone, PartialEq)]
pub enum Builtin {
    Constant0,
    Constant1,
    Dictator,
    Antidictator,
    Majority,
    Parity,
    And,
    Or,
    InnerProduct,
    /// `f(x, y) = ⟨x, y⟩ ⊕ h(x)` on `2n` bits.
    Mm(BooleanFunction),
    /// `f(x, y) = ⟨x, y⟩ ⊕ h(y)` on `2n` bits.
    MmDual(BooleanFunction),
    /// `(n+2)`-bit encoding: `f(x, a)` is `A(x)`, `B(x)`, `C(x)`, `0` for
    /// `a = 00, 01, 10, 11`.
    Triple(BooleanFunction, BooleanFunction, BooleanFunction),
    /// `(n+1)`-bit encoding: `f(x, 0) = A(x)`, `f(x, 1) = B(x)`.
    Pair(BooleanFunction, BooleanFunction),
}

pub const SIMPLE_NAMES: [&str; 9] = [
    "constant0",
    "constant1",
    "dictator",
    "antidictator",
    "majority",
    "parity",
    "and",
    "or",
    "inner_product",
];

impl Builtin {
    /// Looks up a parameter-free family by name.
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "constant0" => Builtin::Constant0,
            "constant1" => Builtin::Constant1,
            "dictator" => Builtin::Dictator,
            "antidictator" => Builtin::Antidictator,
            "majority" => Builtin::Majority,
            "parity" => Builtin::Parity,
            "and" => Builtin::And,
            "or" => Builtin::Or,
            "inner_product" => Builtin::InnerProduct,
            "mm" | "mm_dual" | "triple" | "pair" => {
                return Err(Error::InvalidParameter(format!(
                    "builtin `{name}` needs function parameters"
                )))
            }
            other => return Err(Error::UnknownBuiltin(other.to_string())),
        })
    }

    /// Builds the function. `n` is the arity of the family's parameter space:
    /// the input length for simple families, the arity of `h` for `mm`, and
    /// the arity of the sets for `triple` and `pair`.
    pub fn build(&self, n: usize) -> Result<BooleanFunction> {
        let high = |x: u32| (x >> (n - 1)) & 1 == 1;
        match self {
            Builtin::Constant0 => BooleanFunction::zeros(n),
            Builtin::Constant1 => Ok(BooleanFunction::zeros(n)?.complement()),
            Builtin::Dictator => BooleanFunction::from_fn(n, high),
            Builtin::Antidictator => BooleanFunction::from_fn(n, |x| !high(x)),
            Builtin::Majority => BooleanFunction::from_fn(n, |x| 2 * x.count_ones() as usize > n),
            Builtin::Parity => BooleanFunction::from_fn(n, |x| x.count_ones() % 2 == 1),
            Builtin::And => {
                let all = (1u32 << n) - 1;
                BooleanFunction::from_fn(n, |x| x == all)
            }
            Builtin::Or => BooleanFunction::from_fn(n, |x| x != 0),
            Builtin::InnerProduct => {
                if n % 2 != 0 {
                    return Err(Error::Arity(format!("inner_product needs even arity, got {n}")));
                }
                let half = n / 2;
                let low = (1u32 << half) - 1;
                BooleanFunction::from_fn(n, |z| ((z >> half) & z & low).count_ones() % 2 == 1)
            }
            Builtin::Mm(h) => {
                expect_arity("mm", h, n)?;
                mm_with(h, false)
            }
            Builtin::MmDual(h) => {
                expect_arity("mm_dual", h, n)?;
                mm_with(h, true)
            }
            Builtin::Triple(a, b, c) => {
                for set in [a, b, c] {
                    expect_arity("triple", set, n)?;
                }
                BooleanFunction::from_fn(n + 2, |z| {
                    let x = z >> 2;
                    match z & 3 {
                        0 => a.get(x),
                        1 => b.get(x),
                        2 => c.get(x),
                        _ => false,
                    }
                })
            }
            Builtin::Pair(a, b) => {
                expect_arity("pair", a, n)?;
                expect_arity("pair", b, n)?;
                BooleanFunction::from_fn(n + 1, |z| if z & 1 == 0 { a.get(z >> 1) } else { b.get(z >> 1) })
            }
        }
    }
}

fn expect_arity(name: &str, f: &BooleanFunction, n: usize) -> Result<()> {
    if f.arity() != n {
        return Err(Error::Arity(format!(
            "{name} parameter has arity {} but n = {n}",
            f.arity()
        )));
    }
    Ok(())
}

fn mm_with(h: &BooleanFunction, dual: bool) -> Result<BooleanFunction> {
    let n = h.arity();
    let low = (1u32 << n) - 1;
    BooleanFunction::from_fn(2 * n, |z| {
        let (x, y) = (z >> n, z & low);
        let ip = (x & y).count_ones() % 2 == 1;
        ip ^ h.get(if dual { y } else { x })
    })
}

/// A parameter-free builtin on `n` bits.
pub fn builtin(name: &str, n: usize) -> Result<BooleanFunction> {
    Builtin::from_name(name)?.build(n)
}

pub fn mm(h: &BooleanFunction) -> Result<BooleanFunction> {
    Builtin::Mm(h.clone()).build(h.arity())
}

pub fn mm_dual(h: &BooleanFunction) -> Result<BooleanFunction> {
    Builtin::MmDual(h.clone()).build(h.arity())
}

pub fn triple(a: &BooleanFunction, b: &BooleanFunction, c: &BooleanFunction) -> Result<BooleanFunction> {
    Builtin::Triple(a.clone(), b.clone(), c.clone()).build(a.arity())
}

pub fn pair(a: &BooleanFunction, b: &BooleanFunction) -> Result<BooleanFunction> {
    Builtin::Pair(a.clone(), b.clone()).build(a.arity())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(f: &BooleanFunction) -> Vec<u8> {
        f.bits().map(|b| b as u8).collect()
    }

    #[test]
    fn majority_three_table() {
        assert_eq!(table(&builtin("majority", 3).unwrap()), [0, 0, 0, 1, 0, 1, 1, 1]);
    }

    #[test]
    fn mm_of_zero_is_inner_product() {
        let h = builtin("constant0", 2).unwrap();
        assert_eq!(mm(&h).unwrap(), builtin("inner_product", 4).unwrap());
        // ⟨x,y⟩ for x = 11, y = 01 is 1
        assert!(mm(&h).unwrap().evaluate(&[1, 1, 0, 1]).unwrap());
    }

    #[test]
    fn empty_triple_is_zero() {
        let e = builtin("constant0", 3).unwrap();
        let f = triple(&e, &e, &e).unwrap();
        assert_eq!(f.arity(), 5);
        assert_eq!(f.count_ones(), 0);
    }

    #[test]
    fn triple_slices() {
        let a = BooleanFunction::from_fn(2, |x| x == 1).unwrap();
        let b = BooleanFunction::from_fn(2, |x| x >= 2).unwrap();
        let c = builtin("constant1", 2).unwrap();
        let f = triple(&a, &b, &c).unwrap();
        for x in 0..4u32 {
            assert_eq!(f.get(4 * x), a.get(x));
            assert_eq!(f.get(4 * x + 1), b.get(x));
            assert_eq!(f.get(4 * x + 2), c.get(x));
            assert!(!f.get(4 * x + 3));
        }
    }

    #[test]
    fn pair_slices() {
        let a = BooleanFunction::from_fn(3, |x| x % 3 == 0).unwrap();
        let b = builtin("parity", 3).unwrap();
        let f = pair(&a, &b).unwrap();
        for x in 0..8u32 {
            assert_eq!(f.get(2 * x), a.get(x));
            assert_eq!(f.get(2 * x + 1), b.get(x));
        }
    }

    #[test]
    fn dictator_reads_first_coordinate() {
        let d = builtin("dictator", 4).unwrap();
        assert!(d.evaluate(&[1, 0, 0, 0]).unwrap());
        assert!(!d.evaluate(&[0, 1, 1, 1]).unwrap());
    }

    #[test]
    fn errors() {
        assert!(matches!(builtin("nope", 3), Err(Error::UnknownBuiltin(_))));
        assert!(matches!(builtin("inner_product", 3), Err(Error::Arity(_))));
        assert!(builtin("mm", 3).is_err());
        let h = builtin("parity", 2).unwrap();
        assert!(matches!(Builtin::Mm(h).build(3), Err(Error::Arity(_))));
    }
}
