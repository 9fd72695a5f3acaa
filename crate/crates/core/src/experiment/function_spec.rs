use std::path::Path;

use crate::boolfn::{builtin, from_hex, mm, mm_dual, pair, triple, BooleanFunction};
use crate::error::{Error, Result};

/// Resolves a `--function` argument.
///
/// Accepted forms:
///
/// * `@path`: a hex truth table on disk; the arity comes from the file.
/// * a parameter-free builtin name (`majority`, `constant1`, ...) on `n` bits.
/// * `mm:<hex h>` and `mm_dual:<hex h>`, on twice the arity of `h`.
/// * `pair:<hex A>,<hex B>` and `triple:<hex A>,<hex B>,<hex C>`.
///
/// When `n` is given for a form that fixes its own arity, the two must agree
/// (for `mm`, `n` is the arity of `h`; for `pair` and `triple`, of the sets).
pub fn parse_function_spec(spec: &str, n: Option<usize>) -> Result<BooleanFunction> {
    let spec = spec.trim();
    if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(Path::new(path))
            .map_err(|e| Error::Io(format!("reading `{path}`: {e}")))?;
        let f = from_hex(&text)?;
        return check_n(f.arity(), n, f);
    }
    let Some((name, args)) = spec.split_once(':') else {
        let n = n.ok_or_else(|| Error::InvalidParameter(format!("n: builtin `{spec}` needs --n")))?;
        return builtin(spec, n);
    };
    let tables = args.split(',').map(from_hex).collect::<Result<Vec<_>>>()?;
    let arity = tables[0].arity();
    if tables.iter().any(|g| g.arity() != arity) {
        return Err(Error::Arity(format!("`{name}` parameters must share an arity")));
    }
    let f = match (name, tables.as_slice()) {
        ("mm", [h]) => mm(h)?,
        ("mm_dual", [h]) => mm_dual(h)?,
        ("pair", [a, b]) => pair(a, b)?,
        ("triple", [a, b, c]) => triple(a, b, c)?,
        ("mm" | "mm_dual" | "pair" | "triple", _) => {
            return Err(Error::InvalidParameter(format!(
                "`{name}` got {} hex parameters",
                tables.len()
            )))
        }
        (other, _) => return Err(Error::UnknownBuiltin(other.to_string())),
    };
    check_n(arity, n, f)
}

fn check_n(arity: usize, n: Option<usize>, f: BooleanFunction) -> Result<BooleanFunction> {
    match n {
        Some(n) if n != arity => Err(Error::InvalidParameter(format!(
            "--n {n} disagrees with the function's parameter arity {arity}"
        ))),
        _ => Ok(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::to_hex;

    #[test]
    fn builtins_and_parameters() {
        assert_eq!(parse_function_spec("majority", Some(3)).unwrap(), builtin("majority", 3).unwrap());
        assert!(matches!(parse_function_spec("majority", None), Err(Error::InvalidParameter(_))));
        assert!(matches!(parse_function_spec("nope", Some(3)), Err(Error::UnknownBuiltin(_))));

        let h = builtin("parity", 3).unwrap();
        let f = parse_function_spec(&format!("mm:{}", to_hex(&h)), Some(3)).unwrap();
        assert_eq!(f, mm(&h).unwrap());
        assert!(parse_function_spec(&format!("mm:{}", to_hex(&h)), Some(4)).is_err());

        let (a, b) = (builtin("and", 2).unwrap(), builtin("or", 2).unwrap());
        let f = parse_function_spec(&format!("pair:{},{}", to_hex(&a), to_hex(&b)), None).unwrap();
        assert_eq!(f.arity(), 3);
        assert!(parse_function_spec(&format!("triple:{},{}", to_hex(&a), to_hex(&b)), None).is_err());
    }

    #[test]
    fn hex_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.hex");
        let f = builtin("dictator", 4).unwrap();
        std::fs::write(&path, to_hex(&f) + "\n").unwrap();
        let spec = format!("@{}", path.display());
        assert_eq!(parse_function_spec(&spec, None).unwrap(), f);
        assert!(parse_function_spec(&spec, Some(5)).is_err());
        assert!(matches!(parse_function_spec("@/no/such/file", None), Err(Error::Io(_))));
    }
}
