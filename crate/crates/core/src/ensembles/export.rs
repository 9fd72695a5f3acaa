use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::boolfn::{from_hex, to_hex, BooleanFunction};
use crate::error::{Error, Result};

/// Metadata written next to an exported ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub schema: u32,
    pub construction: String,
    pub seed: u64,
    pub parameters: serde_json::Value,
    pub certifications: serde_json::Value,
    pub members: usize,
    pub arity: usize,
}

/// Writes `<stem>.hex` (one truth table per line) and `<stem>.json`.
/// Returns both paths.
pub fn export_ensemble(
    dir: &Path,
    stem: &str,
    members: &[BooleanFunction],
    construction: &str,
    seed: u64,
    parameters: serde_json::Value,
    certifications: serde_json::Value,
) -> Result<(PathBuf, PathBuf)> {
    let arity = members.first().map_or(0, |f| f.arity());
    if members.iter().any(|f| f.arity() != arity) {
        return Err(Error::Arity("ensemble members must share an arity".into()));
    }
    if !members.is_empty() && arity < 2 {
        return Err(Error::Capability("the hex format cannot encode arity 1".into()));
    }
    fs::create_dir_all(dir)?;
    let hex_path = dir.join(format!("{stem}.hex"));
    let json_path = dir.join(format!("{stem}.json"));
    let mut text = String::new();
    for f in members {
        text.push_str(&to_hex(f));
        text.push('\n');
    }
    fs::write(&hex_path, text)?;
    let sidecar = Sidecar {
        schema: 1,
        construction: construction.to_string(),
        seed,
        parameters,
        certifications,
        members: members.len(),
        arity,
    };
    let json = serde_json::to_string_pretty(&sidecar).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(&json_path, json + "\n")?;
    Ok((hex_path, json_path))
}

/// Reads back an exported ensemble and checks it against its sidecar.
pub fn read_ensemble(dir: &Path, stem: &str) -> Result<(Vec<BooleanFunction>, Sidecar)> {
    let json = fs::read_to_string(dir.join(format!("{stem}.json")))?;
    let sidecar: Sidecar = serde_json::from_str(&json).map_err(|e| Error::Parse(e.to_string()))?;
    let text = fs::read_to_string(dir.join(format!("{stem}.hex")))?;
    let members = text.lines().filter(|l| !l.trim().is_empty()).map(from_hex).collect::<Result<Vec<_>>>()?;
    if members.len() != sidecar.members || members.iter().any(|f| f.arity() != sidecar.arity) {
        return Err(Error::Parse("hex file disagrees with its sidecar".into()));
    }
    Ok((members, sidecar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{build_layer_matching, sample_twin};
    use crate::qstate::RngStream;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let mut r = RngStream::new(9, 0);
        let m = build_layer_matching(6, 8, &mut r).unwrap();
        let fs: Vec<_> = (0..4).map(|_| sample_twin(&m, 1, &mut r).unwrap().base).collect();
        let params = serde_json::json!({ "n": 6, "m": m.achieved_m() });
        export_ensemble(dir.path(), "twin", &fs, "twin/variant1", 9, params.clone(), serde_json::json!({})).unwrap();
        let (back, side) = read_ensemble(dir.path(), "twin").unwrap();
        assert_eq!(back, fs);
        assert_eq!(side.parameters, params);
        assert_eq!(side.schema, 1);
    }
}
