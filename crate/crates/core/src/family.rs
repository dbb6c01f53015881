//! Concrete representations: one matrix per poset element.

use crate::character::Character;
use crate::error::{Error, Result};
use crate::linalg::{c, zeros, CMat};
use crate::poset::Poset;

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionFamily {
    pub poset: Poset,
    pub character: Character,
    /// Aligned with `poset.elements()`.
    pub matrices: Vec<CMat>,
}

impl ProjectionFamily {
    pub fn new(poset: Poset, character: Character, matrices: Vec<CMat>) -> Result<Self> {
        if matrices.len() != poset.len() {
            return Err(Error::DimensionMismatch { expected: poset.len(), found: matrices.len() });
        }
        let n = matrices.first().map_or(0, |m| m.nrows());
        for m in &matrices {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.nrows().max(m.ncols()) });
            }
        }
        character.aligned(&poset)?;
        Ok(ProjectionFamily { poset, character, matrices })
    }

    pub fn dimension(&self) -> usize {
        self.matrices.first().map_or(0, |m| m.nrows())
    }

    pub fn get(&self, element: &str) -> Option<&CMat> {
        self.poset.index_of(element).map(|i| &self.matrices[i])
    }

    pub fn projection(&self, element: &str) -> Result<&CMat> {
        self.get(element).ok_or_else(|| Error::UnknownElement(element.to_string()))
    }

    /// `Σ α_g P_g` over the listed elements.
    pub fn weighted_sum<S: AsRef<str>>(&self, elements: &[S]) -> Result<CMat> {
        let mut acc = zeros(self.dimension());
        for e in elements {
            let w = self.character.weight(e.as_ref())?;
            acc += self.projection(e.as_ref())? * c(w);
        }
        Ok(acc)
    }

    pub fn total_sum(&self) -> CMat {
        self.weighted_sum(self.poset.elements()).expect("character covers the poset")
    }

    /// The family restricted to a subset of elements (weights kept).
    pub fn restrict<S: AsRef<str>>(&self, elements: &[S]) -> Result<ProjectionFamily> {
        let sub = self.poset.induced_by_names(elements)?;
        let chi = self.character.restrict(sub.elements())?;
        let mats = sub
            .elements()
            .iter()
            .map(|e| self.projection(e).cloned())
            .collect::<Result<Vec<_>>>()?;
        ProjectionFamily::new(sub, chi, mats)
    }

    /// `U* P U` for every matrix.
    pub fn conjugated(&self, u: &CMat) -> ProjectionFamily {
        let mats = self.matrices.iter().map(|p| u.adjoint() * p * u).collect();
        ProjectionFamily { poset: self.poset.clone(), character: self.character.clone(), matrices: mats }
    }
}
