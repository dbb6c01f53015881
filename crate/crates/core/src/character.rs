//! Positive element weights.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poset::Poset;

#[derive(Debug, Clone, PartialEq)]
pub struct Character {
    weights: BTreeMap<String, f64>,
    total: f64,
}

impl Character {
    pub fn new<S: Into<String>, I: IntoIterator<Item = (S, f64)>>(weights: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, w) in weights {
            let k = k.into();
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::InvalidCharacter(format!("weight of `{k}` must be positive, got {w}")));
            }
            if map.insert(k.clone(), w).is_some() {
                return Err(Error::InvalidCharacter(format!("element `{k}` given twice")));
            }
        }
        let total = map.values().sum();
        Ok(Character { weights: map, total })
    }

    /// Weights listed in the order of `p.elements()`.
    pub fn for_poset(p: &Poset, values: &[f64]) -> Result<Self> {
        if values.len() != p.len() {
            return Err(Error::InvalidCharacter(format!(
                "{} weights for {} elements",
                values.len(),
                p.len()
            )));
        }
        Self::new(p.elements().iter().cloned().zip(values.iter().copied()))
    }

    pub fn weights(&self) -> &BTreeMap<String, f64> {
        &self.weights
    }

    pub fn get(&self, element: &str) -> Option<f64> {
        self.weights.get(element).copied()
    }

    pub fn weight(&self, element: &str) -> Result<f64> {
        self.get(element).ok_or_else(|| Error::UnknownElement(element.to_string()))
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// True when all weights lie strictly inside (0, 1).
    pub fn is_nondegenerate(&self) -> bool {
        self.weights.values().all(|&w| w < 1.0)
    }

    /// Weights in the order of `p.elements()`; every element must be covered
    /// and no foreign element may appear.
    pub fn aligned(&self, p: &Poset) -> Result<Vec<f64>> {
        if let Some(extra) = self.weights.keys().find(|k| !p.contains(k)) {
            return Err(Error::InvalidCharacter(format!("weight for unknown element `{extra}`")));
        }
        p.elements()
            .iter()
            .map(|e| {
                self.get(e)
                    .ok_or_else(|| Error::InvalidCharacter(format!("missing weight for `{e}`")))
            })
            .collect()
    }

    pub fn restrict(&self, elements: &[String]) -> Result<Character> {
        Self::new(
            elements
                .iter()
                .map(|e| self.weight(e).map(|w| (e.clone(), w)))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn scaled(&self, factor: f64) -> Result<Character> {
        Self::new(self.weights.iter().map(|(k, &w)| (k.clone(), w * factor)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totals_and_validation() {
        let c = Character::new([("a", 0.3), ("b", 0.5)]).unwrap();
        assert!((c.total() - 0.8).abs() < 1e-15);
        assert!(c.is_nondegenerate());
        assert!(Character::new([("a", 0.0)]).is_err());
        assert!(Character::new([("a", f64::NAN)]).is_err());
        assert!(!Character::new([("a", 1.2)]).unwrap().is_nondegenerate());
    }

    #[test]
    fn alignment_follows_poset_order() {
        let p = Poset::antichain(&["y", "x"]);
        let c = Character::new([("x", 0.1), ("y", 0.2)]).unwrap();
        assert_eq!(c.aligned(&p).unwrap(), vec![0.2, 0.1]);
        let missing = Character::new([("x", 0.1)]).unwrap();
        assert!(missing.aligned(&p).is_err());
    }
}
