//! JSON documents for posets, characters, spectral sets, chains and families.

use std::collections::BTreeMap;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chain::{EigenChain, Side, Termination};
use crate::character::Character;
use crate::error::{Error, Result};
use crate::family::ProjectionFamily;
use crate::poset::Poset;
use crate::spectrum::DeltaSet;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    #[serde(default)]
    pub relations: Vec<[String; 2]>,
}

impl PosetDoc {
    pub fn from_poset(p: &Poset) -> Self {
        PosetDoc {
            elements: p.elements().to_vec(),
            relations: p.named_hasse().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_poset(&self) -> Result<Poset> {
        let rel: Vec<(&str, &str)> = self.relations.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        let els: Vec<&str> = self.elements.iter().map(String::as_str).collect();
        Poset::new(&els, &rel)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterDoc {
    pub weights: BTreeMap<String, f64>,
}

impl CharacterDoc {
    pub fn from_character(c: &Character) -> Self {
        CharacterDoc { weights: c.weights().clone() }
    }

    pub fn to_character(&self) -> Result<Character> {
        Character::new(self.weights.iter().map(|(k, &v)| (k.clone(), v)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaSetDoc {
    pub discrete: Vec<f64>,
    pub intervals: Vec<[f64; 2]>,
    pub sigma: f64,
}

impl DeltaSetDoc {
    pub fn from_delta(d: &DeltaSet) -> Self {
        DeltaSetDoc {
            discrete: d.discrete.clone(),
            intervals: d.continuous.iter().map(|&(a, b)| [a, b]).collect(),
            sigma: d.sigma,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub lambda0: f64,
    pub lambdas: Vec<f64>,
    pub mus: Vec<f64>,
    pub termination: Termination,
    pub dimension: usize,
    pub start_side: Side,
    #[serde(default)]
    pub boundary_ambiguous: bool,
}

impl ChainReport {
    pub fn from_chain(c: &EigenChain) -> Self {
        ChainReport {
            lambda0: c.lambdas[0],
            lambdas: c.lambdas.clone(),
            mus: c.mus.clone(),
            termination: c.termination,
            dimension: c.dimension(),
            start_side: c.start_side,
            boundary_ambiguous: c.boundary_ambiguous,
        }
    }
}

pub type MatrixDoc = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub dimension: usize,
    pub projections: BTreeMap<String, MatrixDoc>,
    pub character: CharacterDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poset: Option<PosetDoc>,
}

pub fn matrix_to_doc(m: &DMatrix<Complex64>) -> MatrixDoc {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

pub fn matrix_from_doc(doc: &MatrixDoc) -> Result<DMatrix<Complex64>> {
    let n = doc.len();
    for row in doc {
        if row.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
    }
    Ok(DMatrix::from_fn(n, n, |i, j| Complex64::new(doc[i][j][0], doc[i][j][1])))
}

impl FamilyDoc {
    pub fn from_family(f: &ProjectionFamily) -> Self {
        FamilyDoc {
            dimension: f.dimension(),
            projections: f
                .poset
                .elements()
                .iter()
                .zip(&f.matrices)
                .map(|(e, m)| (e.clone(), matrix_to_doc(m)))
                .collect(),
            character: CharacterDoc::from_character(&f.character),
            poset: Some(PosetDoc::from_poset(&f.poset)),
        }
    }

    /// `poset` overrides the embedded poset when given.
    pub fn to_family(&self, poset: Option<&Poset>) -> Result<ProjectionFamily> {
        let poset = match (poset, &self.poset) {
            (Some(p), _) => p.clone(),
            (None, Some(doc)) => doc.to_poset()?,
            (None, None) => return Err(Error::Parse("family document has no poset".into())),
        };
        let mats = poset
            .elements()
            .iter()
            .map(|e| {
                let doc = self
                    .projections
                    .get(e)
                    .ok_or_else(|| Error::Parse(format!("no projection for `{e}`")))?;
                let m = matrix_from_doc(doc)?;
                if m.nrows() != self.dimension {
                    return Err(Error::DimensionMismatch { expected: self.dimension, found: m.nrows() });
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        ProjectionFamily::new(poset, self.character.to_character()?, mats)
    }
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

pub fn read<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn read_poset(path: &Path) -> Result<Poset> {
    read::<PosetDoc>(path)?.to_poset()
}

pub fn read_character(path: &Path) -> Result<Character> {
    read::<CharacterDoc>(path)?.to_character()
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::CatalogName;

    #[test]
    fn poset_round_trip() {
        let p = CatalogName::A6.poset();
        let doc = PosetDoc::from_poset(&p);
        let back: PosetDoc = parse(&to_json(&doc)).unwrap();
        assert_eq!(back.to_poset().unwrap(), p);
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse::<PosetDoc>("{\n  \"elements\": [1,\n").unwrap_err();
        match err {
            Error::Parse(msg) => assert!(msg.starts_with("line 2"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let cyc: PosetDoc = parse(r#"{"elements":["a","b"],"relations":[["a","b"],["b","a"]]}"#).unwrap();
        assert!(matches!(cyc.to_poset(), Err(Error::Cycle(_))));
    }

    #[test]
    fn matrix_round_trip() {
        let m = DMatrix::from_fn(2, 2, |i, j| Complex64::new(i as f64, j as f64));
        assert_eq!(matrix_from_doc(&matrix_to_doc(&m)).unwrap(), m);
    }
}
