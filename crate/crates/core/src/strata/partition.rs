use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A set partition of `{0, .., n-1}` in canonical form: indices sorted
/// within blocks and blocks sorted by their least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidIndexSet("empty block".into()));
            }
            for &i in b {
                if i >= n {
                    return Err(Error::InvalidIndexSet(format!("index {} exceeds {n}", i + 1)));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidIndexSet(format!("index {} appears twice", i + 1)));
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidIndexSet(format!("index {} is not covered", i + 1)));
        }
        Ok(Self::canonical(n, blocks))
    }

    pub fn from_one_based(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let zero_based = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&i| i.checked_sub(1).ok_or_else(|| Error::InvalidIndexSet("index 0".into())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(n, zero_based)
    }

    fn canonical(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Partition { n, blocks }
    }

    /// Groups indices by label; equal labels share a block.
    pub fn from_labels<L: PartialEq>(labels: &[L]) -> Self {
        let mut reps: Vec<usize> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, l) in labels.iter().enumerate() {
            match reps.iter().position(|&r| labels[r] == *l) {
                Some(b) => blocks[b].push(i),
                None => {
                    reps.push(i);
                    blocks.push(vec![i]);
                }
            }
        }
        Partition { n: labels.len(), blocks }
    }

    pub fn singletons(n: usize) -> Self {
        Partition { n, blocks: (0..n).map(|i| vec![i]).collect() }
    }

    pub fn single_block(n: usize) -> Self {
        Partition { n, blocks: if n == 0 { vec![] } else { vec![(0..n).collect()] } }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `labels()[i]` is the index of the block containing `i`.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &i in block {
                out[i] = b;
            }
        }
        out
    }

    pub fn one_based(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.iter().map(|i| i + 1).collect()).collect()
    }

    fn same_ambient(&self, other: &Partition) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Shape(format!("partitions of {} and {} elements", self.n, other.n)));
        }
        Ok(())
    }

    /// The finest partition coarser than both: connected components of the
    /// graph whose edges join indices sharing a block in either input.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.same_ambient(other)?;
        let mut uf = UnionFind::<usize>::new(self.n);
        for b in self.blocks.iter().chain(&other.blocks) {
            for w in b.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        Ok(Partition::from_labels(&uf.into_labeling()))
    }

    /// Whether every block of `self` lies inside a block of `coarser`.
    pub fn is_refinement(&self, coarser: &Partition) -> Result<bool> {
        self.same_ambient(coarser)?;
        let labels = coarser.labels();
        Ok(self.blocks.iter().all(|b| b.iter().all(|&i| labels[i] == labels[b[0]])))
    }

    /// Merges blocks `a` and `b`.
    pub fn merge_blocks(&self, a: usize, b: usize) -> Partition {
        let mut blocks = self.blocks.clone();
        let (lo, hi) = (a.min(b), a.max(b));
        if lo != hi {
            let moved = blocks.remove(hi);
            blocks[lo].extend(moved);
        }
        Partition::canonical(self.n, blocks)
    }

    /// Every partition that `self` refines, including `self`.
    pub fn coarsenings(&self) -> Vec<Partition> {
        all_partitions(self.len())
            .into_iter()
            .map(|outer| {
                let blocks = outer
                    .blocks
                    .iter()
                    .map(|group| group.iter().flat_map(|&b| self.blocks[b].iter().copied()).collect())
                    .collect();
                Partition::canonical(self.n, blocks)
            })
            .collect()
    }
}

/// All set partitions of `{0, .., n-1}`, via restricted growth strings.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    if n == 0 {
        return vec![Partition::single_block(0)];
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        out.push(Partition::from_labels(&rgs));
        // Next restricted growth string: rgs[i] <= 1 + max(rgs[..i]).
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            let bound = rgs[..i].iter().copied().max().unwrap_or(0) + 1;
            if rgs[i] < bound {
                rgs[i] += 1;
                for r in &mut rgs[i + 1..] {
                    *r = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .one_based()
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Serialized as a list of one-based blocks.
impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<Vec<usize>>::deserialize(d)?;
        let n = blocks.iter().map(Vec::len).sum();
        Partition::from_one_based(n, &blocks).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, blocks: &[&[usize]]) -> Partition {
        Partition::from_one_based(n, &blocks.iter().map(|b| b.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn canonical_form() {
        let a = p(5, &[&[4], &[5, 1, 2], &[3]]);
        assert_eq!(a.to_string(), "{{1,2,5},{3},{4}}");
        assert_eq!(a.labels(), vec![0, 0, 1, 2, 0]);
    }

    #[test]
    fn invalid_partitions() {
        assert!(Partition::new(3, vec![vec![0, 1]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::new(2, vec![vec![0, 1], vec![]]).is_err());
        assert!(Partition::new(2, vec![vec![0, 2]]).is_err());
    }

    #[test]
    fn meet_connects_chains() {
        let a = p(3, &[&[1, 2], &[3]]);
        let b = p(3, &[&[1], &[2, 3]]);
        assert_eq!(a.meet(&b).unwrap(), Partition::single_block(3));
        assert_eq!(a.meet(&a).unwrap(), a);
        assert!(a.meet(&Partition::singletons(4)).is_err());
    }

    #[test]
    fn refinement_order() {
        let fine = p(4, &[&[1], &[2], &[3, 4]]);
        let coarse = p(4, &[&[1, 2], &[3, 4]]);
        assert!(fine.is_refinement(&coarse).unwrap());
        assert!(!coarse.is_refinement(&fine).unwrap());
        assert!(fine.is_refinement(&fine).unwrap());
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..=6).map(|n| all_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203]);
        let mut five = all_partitions(5);
        five.sort();
        five.dedup();
        assert_eq!(five.len(), 52);
    }

    #[test]
    fn coarsenings_of_singletons() {
        let c = Partition::singletons(3).coarsenings();
        assert_eq!(c.len(), 5);
        let p = p(4, &[&[1, 2], &[3], &[4]]);
        let cs = p.coarsenings();
        assert_eq!(cs.len(), 5);
        assert!(cs.iter().all(|c| p.is_refinement(c).unwrap()));
    }

    #[test]
    fn json_round_trip() {
        let a = p(5, &[&[1, 2, 5], &[3], &[4]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, "[[1,2,5],[3],[4]]");
        assert_eq!(serde_json::from_str::<Partition>(&s).unwrap(), a);
    }
}
