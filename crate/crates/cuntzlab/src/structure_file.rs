//! JSON structure files: a finite pom with an optional auxiliary relation.
//!
//! ```json
//! {"name": "E1", "elements": ["0","1","inf"], "zero": "0",
//!  "add": [[0,1,2],[1,2,2],[2,2,2]], "leq": [[1,1,1],[0,1,1],[0,0,1]]}
//! ```
//!
//! `aux` defaults to `leq`. Output is canonical: fixed key order, one table
//! row per line, `aux` written only when it differs from `leq`.

use std::path::Path;

use serde::Deserialize;

use crate::finite::FiniteQ;
use crate::order::{transitivity_witness, validate_aux, validate_pom, AuxRelation, Pom, ValidationReport, Violation};
use crate::{Error, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    name: String,
    elements: Vec<String>,
    zero: String,
    add: Vec<Vec<usize>>,
    leq: Vec<Vec<u8>>,
    #[serde(default)]
    aux: Option<Vec<Vec<u8>>>,
}

/// A well-formed but not yet validated structure file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureFile {
    pub name: String,
    pub pom: Pom,
    pub aux: Option<AuxRelation>,
}

fn bits(name: &str, t: Vec<Vec<u8>>) -> Result<Vec<Vec<bool>>> {
    t.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|v| match v {
                    0 => Ok(false),
                    1 => Ok(true),
                    _ => Err(Error::Structure(format!("{name} entries must be 0 or 1, found {v}"))),
                })
                .collect()
        })
        .collect()
}

impl StructureFile {
    pub fn parse(text: &str) -> Result<StructureFile> {
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let zero = raw
            .elements
            .iter()
            .position(|e| *e == raw.zero)
            .ok_or_else(|| Error::Structure(format!("zero {:?} is not an element", raw.zero)))?;
        let pom = Pom::new(raw.elements, zero, raw.add, bits("leq", raw.leq)?)?;
        let aux = match raw.aux {
            Some(t) => {
                let rel = bits("aux", t)?;
                if rel.len() != pom.len() || rel.iter().any(|r| r.len() != pom.len()) {
                    return Err(Error::Structure(format!("aux table must be {0}x{0}", pom.len())));
                }
                Some(AuxRelation { rel })
            }
            None => None,
        };
        Ok(StructureFile { name: raw.name, pom, aux })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<StructureFile> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        StructureFile::parse(&text)
    }

    pub fn from_q(name: impl Into<String>, q: &FiniteQ) -> StructureFile {
        let aux = (q.aux.rel != q.pom.leq).then(|| q.aux.clone());
        StructureFile { name: name.into(), pom: q.pom.clone(), aux }
    }

    pub fn aux_or_leq(&self) -> AuxRelation {
        self.aux.clone().unwrap_or_else(|| self.pom.order_relation())
    }

    /// Every violated law: pom laws first, then the auxiliary relation's.
    pub fn report(&self) -> Result<ValidationReport> {
        let mut report = validate_pom(&self.pom)?;
        if !report.is_empty() {
            return Ok(report);
        }
        let aux = self.aux_or_leq();
        report = validate_aux(&self.pom, &aux)?;
        if let Some((a, b, c)) = transitivity_witness(&aux) {
            report.violations.push(Violation {
                law: "aux-transitive".into(),
                witness: [a, b, c].iter().map(|&i| self.pom.label(i).to_string()).collect(),
            });
        }
        Ok(report)
    }

    pub fn to_q(&self) -> Result<FiniteQ> {
        FiniteQ::new(self.pom.clone(), self.aux_or_leq())
    }

    pub fn to_json(&self) -> String {
        let s = |x: &str| serde_json::to_string(x).expect("string");
        let table = |rows: Vec<String>| format!("[\n    {}\n  ]", rows.join(",\n    "));
        let ints = |r: &[usize]| format!("[{}]", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
        let flags =
            |r: &[bool]| format!("[{}]", r.iter().map(|&v| if v { "1" } else { "0" }).collect::<Vec<_>>().join(","));
        let mut out = String::from("{\n");
        out += &format!("  \"name\": {},\n", s(&self.name));
        let elems: Vec<String> = self.pom.elements.iter().map(|e| s(e)).collect();
        out += &format!("  \"elements\": [{}],\n", elems.join(", "));
        out += &format!("  \"zero\": {},\n", s(self.pom.label(self.pom.zero)));
        out += &format!("  \"add\": {},\n", table(self.pom.add.iter().map(|r| ints(r)).collect()));
        out += &format!("  \"leq\": {}", table(self.pom.leq.iter().map(|r| flags(r)).collect()));
        if let Some(aux) = &self.aux {
            out += &format!(",\n  \"aux\": {}", table(aux.rel.iter().map(|r| flags(r)).collect()));
        }
        out += "\n}\n";
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::random_q_family;

    const E1: &str = r#"{"name": "E1", "elements": ["0","1","inf"], "zero": "0",
        "add": [[0,1,2],[1,2,2],[2,2,2]], "leq": [[1,1,1],[0,1,1],[0,0,1]]}"#;

    #[test]
    fn parses_and_validates() {
        let f = StructureFile::parse(E1).unwrap();
        assert_eq!(f.pom, Pom::e_k(1));
        assert!(f.report().unwrap().is_empty());
        assert_eq!(f.to_q().unwrap().aux, Pom::e_k(1).order_relation());
    }

    #[test]
    fn canonical_round_trip_is_byte_stable() {
        let f = StructureFile::parse(E1).unwrap();
        let text = f.to_json();
        assert_eq!(StructureFile::parse(&text).unwrap(), f);
        assert_eq!(StructureFile::parse(&text).unwrap().to_json(), text);
        for (i, q) in random_q_family(40, 4, 3).unwrap().iter().enumerate() {
            let f = StructureFile::from_q(format!("q{i}"), q);
            let text = f.to_json();
            let back = StructureFile::parse(&text).unwrap();
            assert_eq!(back.to_q().unwrap(), *q);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(StructureFile::parse("{"), Err(Error::Parse(_))));
        let bad_zero = E1.replace(r#""zero": "0""#, r#""zero": "7""#);
        assert!(matches!(StructureFile::parse(&bad_zero), Err(Error::Structure(_))));
        let bad_flag = E1.replace("[[1,1,1],[0,1,1]", "[[1,1,2],[0,1,1]");
        assert!(matches!(StructureFile::parse(&bad_flag), Err(Error::Structure(_))));
        let bad_range = E1.replace("[2,2,2]]", "[2,2,3]]");
        assert!(matches!(StructureFile::parse(&bad_range), Err(Error::Structure(_))));
    }

    #[test]
    fn reports_law_violations_with_labels() {
        let not_compatible = E1.replace(r#""leq": [[1,1,1],[0,1,1],[0,0,1]]"#, r#""leq": [[1,1,1],[0,1,0],[0,1,1]]"#);
        let f = StructureFile::parse(&not_compatible).unwrap();
        let r = f.report().unwrap();
        assert!(!r.is_empty());
        assert!(r.violations.iter().all(|v| v.witness.iter().all(|w| f.pom.index_of(w).is_some())));
        let bad_aux = format!("{}, \"aux\": [[1,1,1],[0,0,1],[0,0,0]]}}", E1.trim_end_matches('}'));
        let f = StructureFile::parse(&bad_aux).unwrap();
        assert!(f.report().unwrap().laws().contains(&"aux-additive"));
        assert!(matches!(f.to_q(), Err(Error::Invalid(_))));
    }
}
