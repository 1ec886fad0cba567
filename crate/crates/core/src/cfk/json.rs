//! The JSON input format for complexes.
//!
//! ```json
//! {
//!   "format": 1,
//!   "name": "trefoil_staircase",
//!   "generators": [{"id": "a", "alexander": -1}, {"id": "b", "alexander": 0}],
//!   "differential": [{"from": "b", "to": "a", "drop_i": 1, "drop_j": 0}],
//!   "symmetry": [["a", "c"], ["b"]]
//! }
//! ```
//!
//! `symmetry` lists the orbits of the involution; generators missing from it
//! are fixed. `flip` is an explicit `n x n` matrix (see [`Gf2Matrix`] wire
//! form) whose column `k` is the image of generator `k` of `C{i=0}` in the
//! generator basis of `C{j=0}`. `tau_override` holds three matrices.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_path_to_error::Segment;

use super::{Arrow, BifilteredComplex, Generator, TauOverride};
use crate::gf2::Gf2Matrix;

pub const FORMAT: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    /// JSON pointer to the offending value; empty for the document root.
    pub path: String,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path = if self.path.is_empty() { "/" } else { &self.path };
        write!(f, "{path}: {}", self.message)
    }
}

impl std::error::Error for InputError {}

fn at(path: impl Into<String>, message: impl Into<String>) -> InputError {
    InputError {
        path: path.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowFile {
    pub from: String,
    pub to: String,
    pub drop_i: u32,
    pub drop_j: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<u32>,
    pub name: String,
    pub generators: Vec<Generator>,
    #[serde(default)]
    pub differential: Vec<ArrowFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flip: Option<Gf2Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_override: Option<TauOverride>,
}

fn pointer(path: &serde_path_to_error::Path) -> String {
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

impl ComplexFile {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = pointer(e.path());
            let inner = e.into_inner();
            at(path, inner.to_string())
        })
    }

    pub fn from_complex(c: &BifilteredComplex) -> Self {
        let id = |x: usize| c.generators()[x].id.clone();
        let symmetry = c.symmetry().map(|sigma| {
            let mut orbits = Vec::new();
            for (x, &y) in sigma.iter().enumerate() {
                match y.cmp(&x) {
                    std::cmp::Ordering::Greater => orbits.push(vec![id(x), id(y)]),
                    std::cmp::Ordering::Equal => orbits.push(vec![id(x)]),
                    std::cmp::Ordering::Less => {}
                }
            }
            orbits
        });
        ComplexFile {
            format: Some(FORMAT),
            name: c.name().to_string(),
            generators: c.generators().to_vec(),
            differential: c
                .arrows()
                .iter()
                .map(|a| ArrowFile {
                    from: id(a.from),
                    to: id(a.to),
                    drop_i: a.drop_i,
                    drop_j: a.drop_j,
                })
                .collect(),
            symmetry,
            flip: c.explicit_flip().cloned(),
            tau_override: c.tau_override().cloned(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    /// Resolves ids and checks the structural parts of the schema. Whether the
    /// result is a valid complex is a separate question for
    /// [`BifilteredComplex::validate`].
    pub fn into_complex(self) -> Result<BifilteredComplex, InputError> {
        if let Some(f) = self.format {
            if f != FORMAT {
                return Err(at("/format", format!("unsupported format {f}, expected {FORMAT}")));
            }
        }
        let mut index = HashMap::new();
        for (k, g) in self.generators.iter().enumerate() {
            if index.insert(g.id.clone(), k).is_some() {
                return Err(at(format!("/generators/{k}/id"), format!("duplicate id {:?}", g.id)));
            }
        }
        let lookup = |id: &str, path: String| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| at(path, format!("unknown generator id {id:?}")))
        };
        let mut arrows = Vec::with_capacity(self.differential.len());
        for (k, a) in self.differential.iter().enumerate() {
            arrows.push(Arrow {
                from: lookup(&a.from, format!("/differential/{k}/from"))?,
                to: lookup(&a.to, format!("/differential/{k}/to"))?,
                drop_i: a.drop_i,
                drop_j: a.drop_j,
            });
        }
        let n = self.generators.len();
        let symmetry = match &self.symmetry {
            None => None,
            Some(orbits) => {
                let mut perm: Vec<usize> = (0..n).collect();
                let mut seen = vec![false; n];
                for (k, orbit) in orbits.iter().enumerate() {
                    let path = format!("/symmetry/{k}");
                    let members = orbit
                        .iter()
                        .enumerate()
                        .map(|(m, id)| lookup(id, format!("{path}/{m}")))
                        .collect::<Result<Vec<_>, _>>()?;
                    for &m in &members {
                        if std::mem::replace(&mut seen[m], true) {
                            return Err(at(path.clone(), "generator listed in two orbits"));
                        }
                    }
                    match members[..] {
                        [_] => {}
                        [a, b] => {
                            perm[a] = b;
                            perm[b] = a;
                        }
                        _ => return Err(at(path, "an orbit must have one or two generators")),
                    }
                }
                Some(perm)
            }
        };
        if let Some(f) = &self.flip {
            if f.shape() != (n, n) {
                return Err(at(
                    "/flip",
                    format!("flip is {}x{}, expected {n}x{n}", f.rows(), f.cols()),
                ));
            }
        }
        Ok(BifilteredComplex::from_parts(self.name, self.generators, arrows)
            .with_symmetry(symmetry)
            .with_flip(self.flip)
            .with_tau_override(self.tau_override))
    }
}

impl BifilteredComplex {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        ComplexFile::from_json(text)?.into_complex()
    }

    pub fn to_json(&self) -> String {
        ComplexFile::from_complex(self).to_json()
    }
}
