//! Finite posets, their tame classification and chain-block decomposition.
//!
//! A [`Poset`] stores the transitive closure of its order as a dense boolean
//! matrix; element identifiers are opaque strings and their order in
//! [`Poset::elements`] fixes row conventions for every matrix built on top.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    // less[i][j] <=> elements[i] < elements[j]
    less: Vec<Vec<bool>>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hasse: Vec<String> = self
            .hasse()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.elements[a], self.elements[b]))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.elements)
            .field("hasse", &hasse)
            .finish()
    }
}

impl Poset {
    /// Builds a poset from any generating set of strict relations `(g, h)`
    /// meaning `g < h`. The transitive closure is taken; cycles are rejected.
    pub fn new<S: AsRef<str>>(elements: &[S], relations: &[(S, S)]) -> Result<Self> {
        let elements: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if e.is_empty() {
                return Err(Error::InvalidPoset("empty element identifier".into()));
            }
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::InvalidPoset(format!("duplicate element `{e}`")));
            }
        }
        let mut pairs = Vec::with_capacity(relations.len());
        for (g, h) in relations {
            let gi = *index
                .get(g.as_ref())
                .ok_or_else(|| Error::UnknownElement(g.as_ref().to_string()))?;
            let hi = *index
                .get(h.as_ref())
                .ok_or_else(|| Error::UnknownElement(h.as_ref().to_string()))?;
            pairs.push((gi, hi));
        }
        Self::from_index_relations(elements, &pairs)
    }

    pub(crate) fn from_index_relations(elements: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let mut less = vec![vec![false; n]; n];
        for &(g, h) in pairs {
            less[g][h] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if less[i][k] {
                    for j in 0..n {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| less[i][i]) {
            return Err(Error::Cycle(elements[i].clone()));
        }
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(Poset { elements, index, less })
    }

    /// An antichain on the given identifiers.
    pub fn antichain<S: AsRef<str>>(elements: &[S]) -> Self {
        Self::new(elements, &[]).expect("antichain identifiers must be distinct")
    }

    /// A chain `elements[0] < elements[1] < ...`.
    pub fn chain<S: AsRef<str>>(elements: &[S]) -> Self {
        let rel: Vec<(&str, &str)> = elements
            .windows(2)
            .map(|w| (w[0].as_ref(), w[1].as_ref()))
            .collect();
        let names: Vec<&str> = elements.iter().map(|e| e.as_ref()).collect();
        Self::new(&names, &rel).expect("chain identifiers must be distinct")
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, element: &str) -> Option<usize> {
        self.index.get(element).copied()
    }

    pub fn contains(&self, element: &str) -> bool {
        self.index.contains_key(element)
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.less[i][j]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        i == j || self.less[i][j] || self.less[j][i]
    }

    /// All strict relations of the transitive closure, as index pairs.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.less[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The cover relation (transitive reduction).
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        self.relations()
            .into_iter()
            .filter(|&(i, j)| !(0..n).any(|k| self.less[i][k] && self.less[k][j]))
            .collect()
    }

    pub fn named_relations(&self) -> Vec<(String, String)> {
        self.relations()
            .into_iter()
            .map(|(i, j)| (self.elements[i].clone(), self.elements[j].clone()))
            .collect()
    }

    pub fn named_hasse(&self) -> Vec<(String, String)> {
        self.hasse()
            .into_iter()
            .map(|(i, j)| (self.elements[i].clone(), self.elements[j].clone()))
            .collect()
    }

    /// Induced subposet on `subset` (indices), keeping the given order.
    pub fn induced(&self, subset: &[usize]) -> Poset {
        let elements = subset.iter().map(|&i| self.elements[i].clone()).collect();
        let mut pairs = Vec::new();
        for (a, &i) in subset.iter().enumerate() {
            for (b, &j) in subset.iter().enumerate() {
                if self.less[i][j] {
                    pairs.push((a, b));
                }
            }
        }
        Self::from_index_relations(elements, &pairs).expect("induced order is acyclic")
    }

    pub fn induced_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Poset> {
        let idx = names
            .iter()
            .map(|n| {
                self.index_of(n.as_ref())
                    .ok_or_else(|| Error::UnknownElement(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.induced(&idx))
    }

    /// Same elements with every relation reversed.
    pub fn dual(&self) -> Poset {
        let n = self.len();
        let mut less = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                less[i][j] = self.less[j][i];
            }
        }
        Poset { elements: self.elements.clone(), index: self.index.clone(), less }
    }

    /// Size of a maximum antichain.
    pub fn width(&self) -> usize {
        fn grow(p: &Poset, chosen: &mut Vec<usize>, next: usize, best: &mut usize) {
            *best = (*best).max(chosen.len());
            if chosen.len() + (p.len() - next) <= *best {
                return;
            }
            for k in next..p.len() {
                if chosen.iter().all(|&c| !p.comparable(c, k)) {
                    chosen.push(k);
                    grow(p, chosen, k + 1, best);
                    chosen.pop();
                }
            }
        }
        let mut best = 0;
        grow(self, &mut Vec::new(), 0, &mut best);
        best
    }

    /// True iff some element is incomparable to both ends of a 2-chain.
    pub fn contains_one_two(&self) -> bool {
        let n = self.len();
        for b in 0..n {
            for c in 0..n {
                if !self.less[b][c] {
                    continue;
                }
                if (0..n).any(|a| !self.comparable(a, b) && !self.comparable(a, c)) {
                    return true;
                }
            }
        }
        false
    }

    pub fn classify(&self) -> PosetClass {
        let width = self.width();
        if width >= 3 || self.contains_one_two() {
            return PosetClass::Wild;
        }
        if width <= 1 {
            return PosetClass::ChainTame;
        }
        match self.decompose() {
            Ok(d) if d.pair_count() == 1 => PosetClass::OneParameter,
            _ => PosetClass::TwoWidthTame,
        }
    }

    /// Splits a tame poset into comparable blocks, listed bottom to top.
    pub fn decompose(&self) -> Result<ChainDecomposition> {
        let n = self.len();
        let mut partner: Vec<Option<usize>> = vec![None; n];
        for i in 0..n {
            let inc: Vec<usize> = (0..n).filter(|&j| !self.comparable(i, j)).collect();
            match inc.len() {
                0 => {}
                1 => partner[i] = Some(inc[0]),
                _ => return Err(Error::NotTame),
            }
        }
        let below = |i: usize| (0..n).filter(|&j| self.less[j][i]).count();
        let mut seen = vec![false; n];
        let mut blocks: Vec<(usize, Block)> = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            seen[i] = true;
            match partner[i] {
                None => blocks.push((below(i), Block::Singleton(self.elements[i].clone()))),
                Some(j) => {
                    if partner[j] != Some(i) {
                        return Err(Error::NotTame);
                    }
                    seen[j] = true;
                    if below(i) != below(j) {
                        return Err(Error::NotTame);
                    }
                    blocks.push((
                        below(i),
                        Block::Pair(self.elements[i].clone(), self.elements[j].clone()),
                    ));
                }
            }
        }
        blocks.sort_by_key(|(b, _)| *b);
        let blocks: Vec<Block> = blocks.into_iter().map(|(_, b)| b).collect();
        // every element of a lower block must lie below every element of a higher one
        for (lo, blo) in blocks.iter().enumerate() {
            for bhi in &blocks[lo + 1..] {
                for a in blo.members() {
                    for b in bhi.members() {
                        if !self.less[self.index[a]][self.index[b]] {
                            return Err(Error::NotTame);
                        }
                    }
                }
            }
        }
        Ok(ChainDecomposition { blocks })
    }

    /// Brute-force order isomorphism: returns `map` with `self[i] ↦ other[map[i]]`.
    pub fn isomorphism_to(&self, other: &Poset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() || self.relations().len() != other.relations().len() {
            return None;
        }
        let sig = |p: &Poset, i: usize| {
            let down = (0..p.len()).filter(|&j| p.less[j][i]).count();
            let up = (0..p.len()).filter(|&j| p.less[i][j]).count();
            (down, up)
        };
        let mine: Vec<_> = (0..n).map(|i| sig(self, i)).collect();
        let theirs: Vec<_> = (0..n).map(|i| sig(other, i)).collect();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn place(
            a: &Poset,
            b: &Poset,
            mine: &[(usize, usize)],
            theirs: &[(usize, usize)],
            k: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if k == a.len() {
                return true;
            }
            for t in 0..b.len() {
                if used[t] || mine[k] != theirs[t] {
                    continue;
                }
                let ok = (0..k).all(|i| a.less[i][k] == b.less[map[i]][t] && a.less[k][i] == b.less[t][map[i]]);
                if !ok {
                    continue;
                }
                map[k] = t;
                used[t] = true;
                if place(a, b, mine, theirs, k + 1, map, used) {
                    return true;
                }
                used[t] = false;
            }
            false
        }
        place(self, other, &mine, &theirs, 0, &mut map, &mut used).then_some(map)
    }

    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.isomorphism_to(other).is_some()
    }

    /// Whether the comparability graph is connected.
    pub fn is_connected(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && i != j && self.comparable(i, j) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn canonical_code(&self) -> Vec<bool> {
        let n = self.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<bool>> = None;
        let code = |perm: &[usize]| -> Vec<bool> {
            let mut c = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    c.push(self.less[perm[i]][perm[j]]);
                }
            }
            c
        };
        fn heap(k: usize, perm: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
            if k <= 1 {
                visit(perm);
                return;
            }
            for i in 0..k - 1 {
                heap(k - 1, perm, visit);
                if k.is_multiple_of(2) {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
            }
            heap(k - 1, perm, visit);
        }
        heap(n, &mut perm, &mut |p| {
            let c = code(p);
            if best.as_ref().is_none_or(|b| c > *b) {
                best = Some(c);
            }
        });
        best.unwrap_or_default()
    }
}

/// All posets on `n` elements (named `x0..`), one per isomorphism class.
pub fn enumerate_up_to_isomorphism(n: usize) -> Vec<Poset> {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    // naturally labelled posets: element k gets a down-closed set of earlier elements
    let mut labelled: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for rel in &labelled {
            for mask in 0u32..(1 << k) {
                let closed = (0..k).filter(|&j| mask >> j & 1 == 1).all(|j| {
                    rel.iter().filter(|&&(_, b)| b == j).all(|&(a, _)| mask >> a & 1 == 1)
                });
                if !closed {
                    continue;
                }
                let mut r = rel.clone();
                r.extend((0..k).filter(|&j| mask >> j & 1 == 1).map(|j| (j, k)));
                next.push(r);
            }
        }
        labelled = next;
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for rel in labelled {
        let p = Poset::from_index_relations(names.clone(), &rel).expect("natural labelling is acyclic");
        if seen.insert(p.canonical_code()) {
            out.push(p);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Block {
    Singleton(String),
    Pair(String, String),
}

impl Block {
    pub fn members(&self) -> Vec<&str> {
        match self {
            Block::Singleton(a) => vec![a],
            Block::Pair(a, b) => vec![a, b],
        }
    }

    pub fn is_pair(&self) -> bool {
        matches!(self, Block::Pair(..))
    }
}

/// Blocks listed from the bottom of the poset to its top.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDecomposition {
    pub blocks: Vec<Block>,
}

impl ChainDecomposition {
    pub fn pair_count(&self) -> usize {
        self.blocks.iter().filter(|b| b.is_pair()).count()
    }

    /// Position of the unique pair block, if there is exactly one.
    pub fn pair_index(&self) -> Option<usize> {
        let mut it = self.blocks.iter().enumerate().filter(|(_, b)| b.is_pair());
        match (it.next(), it.next()) {
            (Some((k, _)), None) => Some(k),
            _ => None,
        }
    }

    pub fn elements(&self) -> Vec<&str> {
        self.blocks.iter().flat_map(|b| b.members()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PosetClass {
    ChainTame,
    TwoWidthTame,
    OneParameter,
    Wild,
}

impl PosetClass {
    pub fn is_tame(self) -> bool {
        self != PosetClass::Wild
    }
}

/// Induced subposets on `s1_elements` and on its complement; both must be
/// one-parameter. Relations between the parts stay in `p` but are not used here.
pub fn split_two_one_parameter<S: AsRef<str>>(p: &Poset, s1_elements: &[S]) -> Result<(Poset, Poset)> {
    let (a, b) = split_parts(p, s1_elements)?;
    for (name, part) in [("first", &a), ("second", &b)] {
        if part.classify() != PosetClass::OneParameter {
            return Err(Error::BadSplit(format!("{name} part is {:?}, not one-parameter", part.classify())));
        }
    }
    Ok((a, b))
}

pub(crate) fn split_parts<S: AsRef<str>>(p: &Poset, s1_elements: &[S]) -> Result<(Poset, Poset)> {
    let mut first = Vec::new();
    for e in s1_elements {
        let i = p
            .index_of(e.as_ref())
            .ok_or_else(|| Error::UnknownElement(e.as_ref().to_string()))?;
        if first.contains(&i) {
            return Err(Error::BadSplit(format!("element `{}` listed twice", e.as_ref())));
        }
        first.push(i);
    }
    first.sort_unstable();
    let second: Vec<usize> = (0..p.len()).filter(|i| !first.contains(i)).collect();
    Ok((p.induced(&first), p.induced(&second)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Poset {
        Poset::new(&["g1", "g2", "g3", "g4", "g5"], &[("g1", "g5"), ("g2", "g5")]).unwrap()
    }

    fn diamond() -> Poset {
        Poset::new(&["g1", "g2", "g5"], &[("g1", "g5"), ("g2", "g5")]).unwrap()
    }

    #[test]
    fn closure_and_hasse() {
        let p = Poset::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(p.relations().len(), 3);
        assert!(p.less(0, 2));
        assert_eq!(p.hasse(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn rejects_cycles_and_unknowns() {
        assert!(matches!(
            Poset::new(&["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(Error::Cycle(_))
        ));
        assert!(matches!(Poset::new(&["a"], &[("a", "a")]), Err(Error::Cycle(_))));
        assert!(matches!(Poset::new(&["a"], &[("a", "z")]), Err(Error::UnknownElement(_))));
        assert!(matches!(Poset::new(&["a", "a"], &[]), Err(Error::InvalidPoset(_))));
    }

    #[test]
    fn widths() {
        assert_eq!(Poset::chain(&["a", "b", "c"]).width(), 1);
        assert_eq!(Poset::antichain(&["1", "2", "3", "4"]).width(), 4);
        assert_eq!(a2().width(), 4);
    }

    #[test]
    fn one_two_detection() {
        assert!(!Poset::antichain(&["a", "b"]).contains_one_two());
        let p = Poset::new(&["a", "b", "c"], &[("b", "c")]).unwrap();
        assert!(p.contains_one_two());
        assert!(!Poset::chain(&["a", "b", "c", "d"]).contains_one_two());
    }

    #[test]
    fn classification() {
        assert_eq!(Poset::chain(&["a", "b"]).classify(), PosetClass::ChainTame);
        assert_eq!(diamond().classify(), PosetClass::OneParameter);
        assert_eq!(Poset::antichain(&["a", "b", "c"]).classify(), PosetClass::Wild);
        assert_eq!(Poset::antichain(&["a", "b"]).classify(), PosetClass::OneParameter);
        // two stacked incomparable pairs
        let p = Poset::new(
            &["a", "b", "c", "d"],
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )
        .unwrap();
        assert_eq!(p.classify(), PosetClass::TwoWidthTame);
        assert_eq!(a2().classify(), PosetClass::Wild);
    }

    #[test]
    fn decomposition_bottom_to_top() {
        let d = diamond().decompose().unwrap();
        assert_eq!(
            d.blocks,
            vec![Block::Pair("g1".into(), "g2".into()), Block::Singleton("g5".into())]
        );
        let c = Poset::chain(&["a", "b", "c"]).decompose().unwrap();
        assert_eq!(
            c.blocks,
            vec![
                Block::Singleton("a".into()),
                Block::Singleton("b".into()),
                Block::Singleton("c".into())
            ]
        );
        let one_two = Poset::new(&["a", "b", "c"], &[("b", "c")]).unwrap();
        assert_eq!(one_two.decompose(), Err(Error::NotTame));
    }

    #[test]
    fn splits() {
        let quad = Poset::antichain(&["1", "2", "3", "4"]);
        let (a, b) = split_two_one_parameter(&quad, &["1", "2"]).unwrap();
        assert_eq!(a.width(), 2);
        assert_eq!(b.elements(), &["3".to_string(), "4".to_string()]);

        let (s1, s2) = split_two_one_parameter(&a2(), &["g1", "g2", "g5"]).unwrap();
        assert!(s1.is_isomorphic(&diamond()));
        assert!(s2.is_isomorphic(&Poset::antichain(&["x", "y"])));

        assert!(matches!(
            split_two_one_parameter(&a2(), &["g1", "g5"]),
            Err(Error::BadSplit(_))
        ));
    }

    #[test]
    fn duality() {
        let d = diamond().dual();
        assert!(d.less(2, 0) && d.less(2, 1));
        let anti = Poset::antichain(&["a", "b"]);
        assert_eq!(anti.dual(), anti);
        let p = a2();
        assert_eq!(p.dual().dual(), p);
    }

    #[test]
    fn poset_counts_up_to_isomorphism() {
        let counts: Vec<usize> = (0..=5).map(|n| enumerate_up_to_isomorphism(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn isomorphism_ignores_names() {
        let renamed = Poset::new(&["q", "w", "e"], &[("w", "q"), ("e", "q")]).unwrap();
        assert!(renamed.is_isomorphic(&diamond()));
        assert!(!renamed.is_isomorphic(&diamond().dual()));
    }
}
