//! Permutations of `{1..n}`: derangements, orbits and fixed points.
//!
//! Storage is 0-based; parsing and display use 1-based image lists such as
//! `2,3,1`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Strictly increasing subset of `{0..n-1}` (shown 1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidIndexSet(format!("repeated index in {members:?}")));
        }
        Ok(IndexSet(members))
    }

    pub fn from_mask(mask: u64, n: usize) -> Self {
        IndexSet((0..n).filter(|i| mask >> i & 1 == 1).collect())
    }

    /// Parses `1,3` (1-based).
    pub fn parse_one_based(s: &str) -> Result<Self> {
        let members = parse_one_based_list(s, "index set")?;
        IndexSet::new(members.into_iter().map(|i| i - 1).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn complement(&self, n: usize) -> IndexSet {
        IndexSet((0..n).filter(|&i| !self.contains(i)).collect())
    }

    /// Checks `members ⊆ {0..n-1}`.
    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&max) if max >= n => Err(Error::InvalidIndexSet(format!(
                "index {} outside 1..{n}",
                max + 1
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().map(|i| i + 1).join(","))
    }
}

fn parse_one_based_list(s: &str, what: &'static str) -> Result<Vec<usize>> {
    let err = || Error::Parse { what, input: s.to_string() };
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v),
            _ => Err(err()),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// From a 0-based image list.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{} is not a bijection of 1..{n}",
                    image.iter().map(|i| i + 1).join(",")
                )));
            }
        }
        Ok(Permutation(image))
    }

    /// From a 1-based image list such as `[2, 3, 1]`.
    pub fn from_one_based(image: &[usize]) -> Result<Self> {
        if image.contains(&0) {
            return Err(Error::InvalidPermutation("images are 1-based".into()));
        }
        Permutation::new(image.iter().map(|i| i - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// σ(i), 0-based.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_derangement(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i != v)
    }

    pub fn fixed_points(&self) -> IndexSet {
        IndexSet(self.0.iter().enumerate().filter(|&(i, &v)| i == v).map(|(i, _)| i).collect())
    }

    /// Cycles covering `{0..n-1}`, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<IndexSet> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.0[i];
            }
            cycle.sort_unstable();
            out.push(IndexSet(cycle));
        }
        out
    }

    pub fn is_transposition(&self) -> bool {
        let sizes: Vec<usize> = self.orbits().iter().map(IndexSet::len).filter(|&l| l > 1).collect();
        sizes == [2]
    }

    /// +1 for even, -1 for odd.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.orbits().iter().map(|o| o.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Permutation(inv)
    }

    /// The restriction of σ to a set it maps onto itself, relabelled as a
    /// permutation of `{0..|set|-1}` in the set's order.
    pub fn restrict(&self, set: &IndexSet) -> Result<Permutation> {
        let pos = |v: usize| set.members().binary_search(&v).ok();
        set.members()
            .iter()
            .map(|&i| {
                pos(self.0[i]).ok_or_else(|| {
                    Error::InvalidPermutation(format!("{set} is not invariant under {self}"))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Permutation)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().map(|i| i + 1).join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::from_one_based(&parse_one_based_list(s, "permutation")?)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All permutations of `{0..n-1}` in lexicographic order of image lists.
pub fn permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (0..n).permutations(n).map(Permutation)
}

pub fn non_identity_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    permutations(n).filter(|p| !p.is_identity())
}

/// All fixed-point-free permutations, lexicographic.
pub fn derangements(n: usize) -> Vec<Permutation> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut image = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend_derangements(n, &mut image, &mut used, &mut out);
    out
}

fn extend_derangements(n: usize, image: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
    let i = image.len();
    if i == n {
        out.push(Permutation(image.clone()));
        return;
    }
    for v in 0..n {
        if v != i && !used[v] {
            used[v] = true;
            image.push(v);
            extend_derangements(n, image, used, out);
            image.pop();
            used[v] = false;
        }
    }
}
