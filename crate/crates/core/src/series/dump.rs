//! Line-oriented JSON dump of a series: one term per line in canonical
//! monomial order, e.g. `{"x":4,"y":[2],"z":"2","coeff":"1/8"}`.
//!
//! Tagged z-parts serialize as an object keyed by component order,
//! `{"2":3}` for `z_2^3`; weighted ones as a rational string.

use std::collections::BTreeMap;
use std::io::{self, Write};

use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::{Monomial, Series, ZKind, ZPart};
use crate::error::{Error, Result};
use crate::rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DumpTerm {
    pub x: u32,
    pub y: Vec<u32>,
    pub z: DumpZ,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DumpZ {
    Tags(Vec<(u32, u32)>),
    Weighted(String),
}

impl Serialize for DumpZ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DumpZ::Weighted(e) => s.serialize_str(e),
            DumpZ::Tags(tags) => {
                let mut map = s.serialize_map(Some(tags.len()))?;
                for (i, a) in tags {
                    map.serialize_entry(&i.to_string(), a)?;
                }
                map.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for DumpZ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Weighted(String),
            Tags(BTreeMap<String, u32>),
        }
        match Raw::deserialize(d)? {
            Raw::Weighted(e) => Ok(DumpZ::Weighted(e)),
            Raw::Tags(map) => {
                let mut tags = Vec::with_capacity(map.len());
                for (k, a) in map {
                    let i: u32 = k
                        .parse()
                        .map_err(|_| de::Error::custom(format!("bad z index {k:?}")))?;
                    if i == 0 {
                        return Err(de::Error::custom("z indices start at 1"));
                    }
                    tags.push((i, a));
                }
                tags.sort_unstable();
                Ok(DumpZ::Tags(tags))
            }
        }
    }
}

impl DumpTerm {
    pub fn from_term(m: &Monomial, c: &rational::Rational) -> DumpTerm {
        DumpTerm {
            x: m.x,
            y: m.y.clone(),
            z: match &m.z {
                ZPart::Tags(t) => DumpZ::Tags(t.clone()),
                ZPart::Weighted(e) => DumpZ::Weighted(rational::format(e)),
            },
            coeff: rational::format(c),
        }
    }

    fn into_term(self) -> Result<(Monomial, rational::Rational)> {
        let z = match self.z {
            DumpZ::Tags(t) => ZPart::tags(t),
            DumpZ::Weighted(e) => ZPart::Weighted(rational::parse(&e)?),
        };
        Ok((
            Monomial::new(self.x, self.y, z),
            rational::parse(&self.coeff)?,
        ))
    }
}

pub fn write_dump<W: Write>(series: &Series, out: &mut W) -> io::Result<()> {
    for (m, c) in series.terms() {
        let line = serde_json::to_string(&DumpTerm::from_term(m, c)).map_err(io::Error::other)?;
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// Reads a dump back. Blank lines are skipped; errors carry the 1-based
/// line number.
pub fn parse_dump(input: &str, order: u32, arity: usize, kind: ZKind) -> Result<Series> {
    let mut terms = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let raw: DumpTerm = serde_json::from_str(line).map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        let term = raw.into_term().map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        terms.push(term);
    }
    Series::from_terms(order, arity, kind, terms)
}
