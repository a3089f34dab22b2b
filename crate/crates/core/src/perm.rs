//! Permutations of `{1..n}` and the intersection graphs of permutation diagrams.
//!
//! A [`Permutation`] is stored as its one-line word `[p(1), ..., p(n)]` and doubles
//! as a linear order: `a` precedes `b` when `a` sits to the left of `b` in the word.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{1..n}`, `n >= 1`, written as a word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    word: Vec<usize>,
    // pos[a - 1] = index of `a` in `word`
    pos: Vec<usize>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::InvalidPermutation {
                word,
                reason: "empty word".into(),
            });
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &a) in word.iter().enumerate() {
            if a == 0 || a > n {
                return Err(Error::InvalidPermutation {
                    reason: format!("value {a} outside 1..={n}"),
                    word,
                });
            }
            if pos[a - 1] != usize::MAX {
                return Err(Error::InvalidPermutation {
                    reason: format!("value {a} repeated"),
                    word,
                });
            }
            pos[a - 1] = i;
        }
        Ok(Self { word, pos })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "identity permutation needs n >= 1");
        Self {
            word: (1..=n).collect(),
            pos: (0..n).collect(),
        }
    }

    /// The word `[n, n-1, ..., 1]`.
    pub fn reversal(n: usize) -> Self {
        Self::new((1..=n).rev().collect()).expect("reversal is a permutation")
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// `p(a)`, i.e. the entry at one-based position `a`.
    pub fn apply(&self, a: usize) -> usize {
        self.word[a - 1]
    }

    /// Zero-based position of value `a` in the word.
    pub fn position(&self, a: usize) -> usize {
        self.pos[a - 1]
    }

    /// True when `a` is strictly left of `b`.
    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.pos[a - 1] < self.pos[b - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &a)| a == i + 1)
    }

    pub fn inverse(&self) -> Self {
        Self {
            word: self.pos.iter().map(|&i| i + 1).collect(),
            pos: self.word.iter().map(|&a| a - 1).collect(),
        }
    }

    /// `r(a) = self(other(a))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Self::new(other.word.iter().map(|&a| self.apply(a)).collect())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.word, f)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.word.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(word: Vec<usize>) -> Result<Self> {
        Self::new(word)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.word
    }
}

/// Result of [`normalize_realizer`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedRealizer {
    /// `pi = s^-1 t`; the poset `P_{id,pi}` is isomorphic to `P_{s,t}`.
    pub pi: Permutation,
    /// `iso[j - 1] = s(j)`, an order isomorphism `P_{id,pi} -> P_{s,t}`.
    pub iso: Vec<usize>,
}

/// Rewrites the two-line realizer `(s, t)` so that the first line is the identity.
pub fn normalize_realizer(s: &Permutation, t: &Permutation) -> Result<NormalizedRealizer> {
    let pi = s.inverse().compose(t)?;
    Ok(NormalizedRealizer {
        pi,
        iso: s.word().to_vec(),
    })
}

/// Simple undirected graph on `{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::new(n);
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds `{a, b}`; self-loops are rejected as out of range of a simple graph.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        for x in [a, b] {
            if x == 0 || x > self.n {
                return Err(Error::LabelOutOfRange {
                    label: x,
                    n: self.n,
                });
            }
        }
        if a == b {
            return Err(Error::LabelOutOfRange {
                label: a,
                n: self.n,
            });
        }
        self.edges.insert((a.min(b), a.max(b)));
        Ok(())
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Edges as `(i, j)` with `i < j`, lexicographically sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Intersection graph of the concatenation of permutation diagrams drawn on `lines`.
///
/// Curves `f_i` and `f_j` cross exactly when `i` and `j` swap relative order
/// between some pair of consecutive lines.
pub fn diagram_intersection_graph(lines: &[Permutation]) -> Result<Graph> {
    if lines.len() < 2 {
        return Err(Error::TooFewLines {
            needed: 2,
            got: lines.len(),
        });
    }
    let n = lines[0].len();
    if let Some(bad) = lines.iter().find(|l| l.len() != n) {
        return Err(Error::SizeMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    let mut g = Graph::new(n);
    for i in 1..=n {
        for j in i + 1..=n {
            let crosses = lines
                .windows(2)
                .any(|w| w[0].precedes(i, j) != w[1].precedes(i, j));
            if crosses {
                g.edges.insert((i, j));
            }
        }
    }
    Ok(g)
}
