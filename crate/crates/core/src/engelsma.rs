//! Loading and verification of tuple data files: JSON arrays of strictly
//! increasing integers, checked for admissibility and measured for diameter.
//! The shipped `data/engelsma_105.json` carries the record 105-element tuple
//! of diameter 600; the build verifies it rather than rediscovering it.

use std::path::Path;

use crate::error::{Error, Result};
use crate::tuples::{is_admissible, Tuple, Witness};

/// A verified tuple record.
#[derive(Debug, Clone)]
pub struct TupleRecord {
    pub source: String,
    pub elements: Vec<i64>,
    pub verified: bool,
    pub diameter: u64,
}

/// Parses a JSON integer-array file, requires strict increase, runs the
/// admissibility check, and records the diameter. Inadmissible input is an
/// error carrying the witness prime.
pub fn load_and_verify(path: &Path) -> Result<TupleRecord> {
    let text = std::fs::read_to_string(path)?;
    verify_text(&text, &path.display().to_string())
}

pub fn verify_text(text: &str, source: &str) -> Result<TupleRecord> {
    let elements: Vec<i64> = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("{source}: {e}")))?;
    if elements.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parse(format!(
            "{source}: elements must be strictly increasing"
        )));
    }
    let tuple = Tuple::from_integers(elements.clone())?;
    let report = is_admissible(&tuple)?;
    if !report.admissible {
        let Witness { prime, .. } = report.witness.unwrap();
        return Err(Error::precondition(format!(
            "{source}: tuple is inadmissible, witness prime {prime}"
        )));
    }
    Ok(TupleRecord {
        source: source.to_string(),
        elements,
        verified: true,
        diameter: tuple.diameter()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verifies_small_tuples() {
        let rec = verify_text("[0,2,6]", "inline").unwrap();
        assert!(rec.verified);
        assert_eq!(rec.diameter, 6);
        assert_eq!(rec.elements.len(), 3);
    }

    #[test]
    fn rejects_inadmissible() {
        let err = verify_text("[0,1]", "inline").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("witness prime 2"), "{msg}");
    }

    #[test]
    fn rejects_malformed() {
        assert!(verify_text("[0,2,", "inline").is_err());
        assert!(verify_text("[2,0]", "inline").is_err());
        assert!(verify_text("[0,0,2]", "inline").is_err());
    }

    #[test]
    fn verification_idempotent() {
        let a = verify_text("[0,4,6,10,12]", "x").unwrap();
        let b = verify_text("[0,4,6,10,12]", "x").unwrap();
        assert_eq!(a.elements, b.elements);
        assert_eq!(a.diameter, b.diameter);
        assert_eq!(a.verified, b.verified);
    }

    #[test]
    fn shipped_engelsma_file_verifies() {
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("../../data/engelsma_105.json");
        if !path.exists() {
            eprintln!("data file missing; skipping");
            return;
        }
        let rec = load_and_verify(&path).unwrap();
        assert_eq!(rec.elements.len(), 105);
        assert_eq!(rec.diameter, 600);
        assert_eq!(rec.elements[0], 0);
    }
}
