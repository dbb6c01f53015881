//! A poset together with a partition into two one-parameter parts.

use crate::error::{Error, Result};
use crate::poset::{split_parts, split_two_one_parameter, Poset, PosetClass};

#[derive(Debug, Clone, PartialEq)]
pub struct Split {
    pub poset: Poset,
    pub first: Poset,
    pub second: Poset,
}

impl Split {
    /// Both parts must be one-parameter.
    pub fn new<S: AsRef<str>>(poset: &Poset, first: &[S]) -> Result<Self> {
        let (a, b) = split_two_one_parameter(poset, first)?;
        Ok(Split { poset: poset.clone(), first: a, second: b })
    }

    /// Each part may also be a chain (possibly empty); used for reduced problems.
    pub fn lenient<S: AsRef<str>>(poset: &Poset, first: &[S]) -> Result<Self> {
        let (a, b) = split_parts(poset, first)?;
        for (name, part) in [("first", &a), ("second", &b)] {
            if !matches!(part.classify(), PosetClass::OneParameter | PosetClass::ChainTame) {
                return Err(Error::BadSplit(format!(
                    "{name} part is {:?}, not one-parameter",
                    part.classify()
                )));
            }
        }
        Ok(Split { poset: poset.clone(), first: a, second: b })
    }

    /// Parses `"g1,g2,g5"`.
    pub fn parse(poset: &Poset, spec: &str) -> Result<Self> {
        let names: Vec<&str> = spec.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        Self::lenient(poset, &names)
    }

    pub fn first_names(&self) -> &[String] {
        self.first.elements()
    }

    pub fn second_names(&self) -> &[String] {
        self.second.elements()
    }

    pub fn swapped(&self) -> Split {
        Split { poset: self.poset.clone(), first: self.second.clone(), second: self.first.clone() }
    }

    /// Restriction to the elements kept in `keep`.
    pub fn restricted(&self, keep: &[String]) -> Result<Split> {
        let idx: Vec<usize> = self
            .poset
            .elements()
            .iter()
            .enumerate()
            .filter(|(_, e)| keep.contains(e))
            .map(|(i, _)| i)
            .collect();
        let sub = self.poset.induced(&idx);
        let first: Vec<&String> = self.first_names().iter().filter(|e| keep.contains(e)).collect();
        Self::lenient(&sub, &first)
    }
}
