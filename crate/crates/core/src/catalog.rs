//! The essential posets that split into two one-parameter parts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CatalogName {
    Quadruple,
    A2,
    A2Dual,
    A6,
    A6Dual,
    A4,
    A4Dual,
}

pub const ALL: [CatalogName; 7] = [
    CatalogName::Quadruple,
    CatalogName::A2,
    CatalogName::A2Dual,
    CatalogName::A6,
    CatalogName::A6Dual,
    CatalogName::A4,
    CatalogName::A4Dual,
];

impl CatalogName {
    pub fn as_str(self) -> &'static str {
        match self {
            CatalogName::Quadruple => "(1,1,1,1)",
            CatalogName::A2 => "a2",
            CatalogName::A2Dual => "a2_dual",
            CatalogName::A6 => "a6",
            CatalogName::A6Dual => "a6_dual",
            CatalogName::A4 => "a4",
            CatalogName::A4Dual => "a4_dual",
        }
    }

    pub fn dual(self) -> CatalogName {
        match self {
            CatalogName::Quadruple => CatalogName::Quadruple,
            CatalogName::A2 => CatalogName::A2Dual,
            CatalogName::A2Dual => CatalogName::A2,
            CatalogName::A6 => CatalogName::A6Dual,
            CatalogName::A6Dual => CatalogName::A6,
            CatalogName::A4 => CatalogName::A4Dual,
            CatalogName::A4Dual => CatalogName::A4,
        }
    }

    pub fn poset(self) -> Poset {
        let base = match self {
            CatalogName::Quadruple => return Poset::antichain(&["g1", "g2", "g3", "g4"]),
            CatalogName::A2 | CatalogName::A2Dual => a2(),
            CatalogName::A4 | CatalogName::A4Dual => a4(),
            CatalogName::A6 | CatalogName::A6Dual => a6(),
        };
        match self {
            CatalogName::A2Dual | CatalogName::A4Dual | CatalogName::A6Dual => base.dual(),
            _ => base,
        }
    }

    /// Elements of the first part in the standard split.
    pub fn first_part(self) -> &'static [&'static str] {
        match self {
            CatalogName::Quadruple => &["g1", "g2"],
            CatalogName::A2 | CatalogName::A2Dual | CatalogName::A4 | CatalogName::A4Dual => &["g1", "g2", "g5"],
            CatalogName::A6 | CatalogName::A6Dual => &["g1", "g2", "g5", "g6"],
        }
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CatalogName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL.iter()
            .copied()
            .find(|c| c.as_str() == s || (s == "quadruple" && *c == CatalogName::Quadruple))
            .ok_or_else(|| Error::Parse(format!("unknown catalog poset `{s}`")))
    }
}

fn a2() -> Poset {
    Poset::new(&["g1", "g2", "g3", "g4", "g5"], &[("g1", "g5"), ("g2", "g5")]).unwrap()
}

fn a4() -> Poset {
    Poset::new(
        &["g1", "g2", "g3", "g4", "g5", "g6"],
        &[("g1", "g5"), ("g2", "g5"), ("g3", "g6"), ("g4", "g6")],
    )
    .unwrap()
}

fn a6() -> Poset {
    Poset::new(
        &["g1", "g2", "g3", "g4", "g5", "g6"],
        &[("g1", "g5"), ("g2", "g5"), ("g5", "g6")],
    )
    .unwrap()
}

/// The pair `g1, g2` with a common top `g5` and a common bottom `g6`, next to
/// the pair `g3, g4`; it splits into two one-parameter parts but is not essential.
pub fn a8() -> Poset {
    Poset::new(
        &["g1", "g2", "g3", "g4", "g5", "g6"],
        &[("g1", "g5"), ("g2", "g5"), ("g6", "g1"), ("g6", "g2")],
    )
    .unwrap()
}

pub fn a8_first_part() -> &'static [&'static str] {
    &["g1", "g2", "g5", "g6"]
}

pub fn essential_catalog_match(p: &Poset) -> Option<CatalogName> {
    ALL.iter().copied().find(|c| c.poset().is_isomorphic(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_matches() {
        for c in ALL {
            assert_eq!(essential_catalog_match(&c.poset()), Some(c));
            assert_eq!(essential_catalog_match(&c.poset().dual()), Some(c.dual()));
            assert_eq!(c.as_str().parse::<CatalogName>().unwrap(), c);
        }
        assert_eq!(essential_catalog_match(&a8()), None);
        assert_eq!(essential_catalog_match(&Poset::chain(&["1", "2", "3", "4", "5"])), None);
    }

    #[test]
    fn catalog_is_pairwise_distinct() {
        for (i, a) in ALL.iter().enumerate() {
            for b in &ALL[i + 1..] {
                assert!(!a.poset().is_isomorphic(&b.poset()), "{a} ~ {b}");
            }
        }
    }
}
