//! JSON profile documents.
//!
//! ```json
//! {"name": "k3:h=2", "dim": 2,
//!  "flags": {"hodge_witt": true, "crystalline_torsion_free": true, "hodge_de_rham_degenerates": true},
//!  "cohomology": [{"degree": 2, "slopes": [{"slope": "1/2", "mult": 2}]}],
//!  "hodge": [{"degree": 2, "numbers": [1, 20, 1]}],
//!  "dominoes": [{"i": 0, "j": 2, "T": 1}]}
//! ```
//!
//! `hodge` and `dominoes` are optional; an absent `dominoes` key means the
//! domino numbers are unknown, an empty list means they are all zero.
//! Unknown fields are rejected and degrees may not repeat.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_path_to_error::Segment;

use crate::model::{CohomologyProfile, DominoTable, Dominoes, Flags, HodgeTable, SlopeMultiset};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDocument {
    pub name: String,
    pub dim: usize,
    pub flags: FlagsDocument,
    pub cohomology: Vec<DegreeSlopes>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hodge: Option<Vec<HodgeRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dominoes: Option<Vec<DominoEntry>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsDocument {
    pub hodge_witt: Option<bool>,
    pub crystalline_torsion_free: bool,
    pub hodge_de_rham_degenerates: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeSlopes {
    pub degree: usize,
    pub slopes: Vec<SlopeEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlopeEntry {
    pub slope: Rational,
    pub mult: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HodgeRow {
    pub degree: usize,
    pub numbers: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DominoEntry {
    pub i: usize,
    pub j: usize,
    #[serde(rename = "T")]
    pub t: u64,
}

/// A malformed document, with a JSON pointer to the offending location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError {
    pub pointer: String,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = if self.pointer.is_empty() { "/" } else { &self.pointer };
        write!(f, "{at}: {}", self.message)
    }
}

impl std::error::Error for SchemaError {}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => out.push_str(&format!("/{}", key.replace('~', "~0").replace('/', "~1"))),
            Segment::Enum { variant } => out.push_str(&format!("/{variant}")),
            Segment::Unknown => out.push_str("/?"),
        }
    }
    out
}

fn duplicate(pointer: String, what: String) -> SchemaError {
    SchemaError { pointer, message: format!("duplicate {what}") }
}

pub fn parse_document(text: &str) -> Result<ProfileDocument, SchemaError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| SchemaError {
        pointer: pointer_of(e.path()),
        message: e.inner().to_string(),
    })
}

pub fn parse_profile(text: &str) -> Result<CohomologyProfile, SchemaError> {
    parse_document(text)?.into_profile()
}

impl ProfileDocument {
    pub fn into_profile(self) -> Result<CohomologyProfile, SchemaError> {
        let mut slopes = BTreeMap::new();
        for (k, d) in self.cohomology.into_iter().enumerate() {
            let degree = d.degree;
            let multiset = SlopeMultiset::new(d.slopes.into_iter().map(|e| (e.slope, e.mult)));
            if slopes.insert(degree, multiset).is_some() {
                return Err(duplicate(format!("/cohomology/{k}/degree"), format!("degree {degree}")));
            }
        }

        let hodge = match self.hodge {
            None => None,
            Some(rows) => {
                let mut table = HodgeTable::new();
                let mut seen = BTreeSet::new();
                for (k, row) in rows.into_iter().enumerate() {
                    if !seen.insert(row.degree) {
                        return Err(duplicate(format!("/hodge/{k}/degree"), format!("degree {}", row.degree)));
                    }
                    table.set_row(row.degree, row.numbers);
                }
                Some(table)
            }
        };

        let dominoes = match self.dominoes {
            None => Dominoes::Unknown,
            Some(entries) => {
                let mut seen = BTreeSet::new();
                let mut table = DominoTable::zero();
                for (k, e) in entries.into_iter().enumerate() {
                    if !seen.insert((e.i, e.j)) {
                        return Err(duplicate(format!("/dominoes/{k}"), format!("entry T^{{{},{}}}", e.i, e.j)));
                    }
                    table.set(e.i, e.j, e.t);
                }
                Dominoes::Known(table)
            }
        };

        Ok(CohomologyProfile {
            name: self.name,
            dim: self.dim,
            slopes,
            hodge,
            dominoes,
            flags: Flags {
                hodge_witt: self.flags.hodge_witt,
                crystalline_torsion_free: self.flags.crystalline_torsion_free,
                hodge_de_rham_degenerates: self.flags.hodge_de_rham_degenerates,
            },
        })
    }
}

impl From<&CohomologyProfile> for ProfileDocument {
    fn from(p: &CohomologyProfile) -> Self {
        ProfileDocument {
            name: p.name.clone(),
            dim: p.dim,
            flags: FlagsDocument {
                hodge_witt: p.flags.hodge_witt,
                crystalline_torsion_free: p.flags.crystalline_torsion_free,
                hodge_de_rham_degenerates: p.flags.hodge_de_rham_degenerates,
            },
            cohomology: p
                .slopes
                .iter()
                .map(|(&degree, s)| DegreeSlopes {
                    degree,
                    slopes: s
                        .entries()
                        .iter()
                        .map(|(slope, mult)| SlopeEntry { slope: slope.clone(), mult: *mult })
                        .collect(),
                })
                .collect(),
            hodge: p.hodge.as_ref().map(|h| {
                h.rows()
                    .map(|(degree, row)| HodgeRow { degree, numbers: row.to_vec() })
                    .collect()
            }),
            dominoes: p.dominoes.table().map(|t| {
                t.nonzero().map(|((i, j), t)| DominoEntry { i, j, t }).collect()
            }),
        }
    }
}

/// Pretty-printed document with a stable key and entry order.
pub fn profile_to_json(p: &CohomologyProfile) -> String {
    serde_json::to_string_pretty(&ProfileDocument::from(p)).expect("profile serializes")
}
