//! Finite posets on `{1..n}` with a transitively closed strict relation.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Strictly increasing sequence of elements.
pub type Chain = Vec<usize>;

/// A finite poset on `{1..n}`. The strict relation is always transitively closed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    // lt[(x - 1) * n + (y - 1)] <=> x < y
    lt: Vec<bool>,
}

/// Per-element heights together with rank, purity and the height layers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightProfile {
    /// `heights[x - 1]` is the height of `x`.
    pub heights: Vec<usize>,
    pub rank: usize,
    pub pure: bool,
    /// `layers[i]` holds the height-`i` elements in increasing order.
    pub layers: Vec<Vec<usize>>,
}

impl HeightProfile {
    pub fn height(&self, x: usize) -> usize {
        self.heights[x - 1]
    }
}

/// An induced subposet relabeled to `{1..k}`; `labels[i - 1]` is the original
/// label of element `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubPoset {
    pub poset: Poset,
    pub labels: Vec<usize>,
}

impl SubPoset {
    pub fn original(&self, x: usize) -> usize {
        self.labels[x - 1]
    }
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Poset")
            .field("n", &self.n)
            .field("covers", &self.covers())
            .finish()
    }
}

impl Poset {
    /// Builds a poset from a strict relation predicate, closing it transitively.
    /// Fails if the closure is not irreflexive.
    pub fn from_relation(n: usize, mut rel: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        let mut lt = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                lt[x * n + y] = rel(x + 1, y + 1);
            }
        }
        // Warshall
        for k in 0..n {
            for x in 0..n {
                if lt[x * n + k] {
                    for y in 0..n {
                        if lt[k * n + y] {
                            lt[x * n + y] = true;
                        }
                    }
                }
            }
        }
        if let Some(x) = (0..n).find(|&x| lt[x * n + x]) {
            return Err(Error::Cycle(x + 1));
        }
        Ok(Self { n, lt })
    }

    pub fn chain(n: usize) -> Self {
        Self::from_linear_orders(&[Permutation::identity(n)]).expect("identity is valid")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_relation(n, |_, _| false).expect("empty relation is a poset")
    }

    /// Intersection of the given linear orders.
    pub fn from_linear_orders(lines: &[Permutation]) -> Result<Self> {
        let first = lines
            .first()
            .ok_or(Error::TooFewLines { needed: 1, got: 0 })?;
        let n = first.len();
        if let Some(bad) = lines.iter().find(|l| l.len() != n) {
            return Err(Error::SizeMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        let mut lt = vec![false; n * n];
        for x in 1..=n {
            for y in 1..=n {
                lt[(x - 1) * n + y - 1] = x != y && lines.iter().all(|l| l.precedes(x, y));
            }
        }
        Ok(Self { n, lt })
    }

    /// `P_pi`, the intersection of the identity order with `pi`.
    pub fn from_permutation(pi: &Permutation) -> Self {
        Self::from_linear_orders(&[Permutation::identity(pi.len()), pi.clone()])
            .expect("equal sizes")
    }

    /// Transitive closure of the pairs `(a, b)` read as `a < b`.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        let mut rel = vec![false; n * n];
        for &(a, b) in covers {
            for x in [a, b] {
                if x == 0 || x > n {
                    return Err(Error::LabelOutOfRange { label: x, n });
                }
            }
            if a == b {
                return Err(Error::Cycle(a));
            }
            rel[(a - 1) * n + b - 1] = true;
        }
        Self::from_relation(n, |x, y| rel[(x - 1) * n + y - 1])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.lt[(x - 1) * self.n + y - 1]
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        x == y || self.lt(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        x == y || self.lt(x, y) || self.lt(y, x)
    }

    pub fn check_label(&self, x: usize) -> Result<()> {
        if x == 0 || x > self.n {
            Err(Error::LabelOutOfRange {
                label: x,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// All pairs `(x, y)` with `x < y`, lexicographic.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        self.elements()
            .flat_map(|x| self.elements().map(move |y| (x, y)))
            .filter(|&(x, y)| self.lt(x, y))
            .collect()
    }

    pub fn comparable_pair_count(&self) -> usize {
        self.lt.iter().filter(|&&b| b).count()
    }

    pub fn is_antichain(&self) -> bool {
        !self.lt.iter().any(|&b| b)
    }

    pub fn is_chain(&self) -> bool {
        self.comparable_pair_count() == self.n * (self.n - 1) / 2
    }

    pub fn covers_pair(&self, x: usize, y: usize) -> bool {
        self.lt(x, y) && !self.elements().any(|z| self.lt(x, z) && self.lt(z, y))
    }

    /// Cover pairs `x ⋖ y`, lexicographic.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.relations()
            .into_iter()
            .filter(|&(x, y)| self.covers_pair(x, y))
            .collect()
    }

    /// Elements covering `x`, increasing.
    pub fn upper_covers_of(&self, x: usize) -> Vec<usize> {
        self.elements()
            .filter(|&y| self.covers_pair(x, y))
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        self.elements()
            .filter(|&y| !self.elements().any(|x| self.lt(x, y)))
            .collect()
    }

    pub fn height_profile(&self) -> HeightProfile {
        // Counting strict predecessors gives a linear extension of a closed relation.
        let mut order: Vec<usize> = self.elements().collect();
        order.sort_by_key(|&y| self.elements().filter(|&x| self.lt(x, y)).count());
        let mut heights = vec![0usize; self.n];
        for &y in &order {
            heights[y - 1] = self
                .elements()
                .filter(|&x| self.lt(x, y))
                .map(|x| heights[x - 1] + 1)
                .max()
                .unwrap_or(0);
        }
        let rank = heights.iter().copied().max().unwrap_or(0);
        let covers = self.covers();
        let steps_by_one = covers
            .iter()
            .all(|&(x, y)| heights[y - 1] == heights[x - 1] + 1);
        let maximal_at_top = self
            .elements()
            .filter(|&x| !self.elements().any(|y| self.lt(x, y)))
            .all(|x| heights[x - 1] == rank);
        let mut layers = vec![Vec::new(); rank + 1];
        for x in self.elements() {
            layers[heights[x - 1]].push(x);
        }
        HeightProfile {
            heights,
            rank,
            pure: steps_by_one && maximal_at_top,
            layers,
        }
    }

    pub fn induced_subposet(&self, subset: &[usize]) -> Result<SubPoset> {
        let labels: Vec<usize> = subset
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        for &x in &labels {
            self.check_label(x)?;
        }
        let poset =
            Poset::from_relation(labels.len(), |a, b| self.lt(labels[a - 1], labels[b - 1]))?;
        Ok(SubPoset { poset, labels })
    }

    /// Components of the comparability graph, each sorted, ordered by least element.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (x, y) in self.relations() {
            let (rx, ry) = (find(&mut parent, x - 1), find(&mut parent, y - 1));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.n];
        for x in 0..self.n {
            let r = find(&mut parent, x);
            if slot[r] == usize::MAX {
                slot[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[slot[r]].push(x + 1);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// All maximal chains in lexicographic order.
    pub fn maximal_chains(&self) -> Vec<Chain> {
        let up: Vec<Vec<usize>> = self.elements().map(|x| self.upper_covers_of(x)).collect();
        let mut out = Vec::new();
        let mut stack = Vec::new();
        fn walk(up: &[Vec<usize>], x: usize, stack: &mut Vec<usize>, out: &mut Vec<Chain>) {
            stack.push(x);
            if up[x - 1].is_empty() {
                out.push(stack.clone());
            } else {
                for &y in &up[x - 1] {
                    walk(up, y, stack, out);
                }
            }
            stack.pop();
        }
        for x in self.minimal_elements() {
            walk(&up, x, &mut stack, &mut out);
        }
        out
    }

    /// Lazily enumerates the linear extensions in lexicographic order of their words.
    pub fn linear_extensions(&self) -> LinearExtensions<'_> {
        LinearExtensions::new(self)
    }

    /// If the labeling is already of the form `P_{id,pi}`, returns `pi`.
    ///
    /// That holds iff every relation `x < y` has `x < y` numerically and
    /// ordering incomparable pairs by decreasing label extends `P` to a
    /// linear order.
    pub fn natural_realizer(&self) -> Option<Permutation> {
        if self.relations().iter().any(|&(x, y)| x > y) {
            return None;
        }
        let before = |x: usize, y: usize| self.lt(x, y) || (!self.comparable(x, y) && x > y);
        let mut word: Vec<usize> = self.elements().collect();
        word.sort_by_key(|&y| self.elements().filter(|&x| before(x, y)).count());
        let pi = Permutation::new(word).ok()?;
        let valid = self.elements().all(|x| {
            self.elements()
                .all(|y| x == y || before(x, y) == pi.precedes(x, y))
        });
        (valid && Poset::from_permutation(&pi) == *self).then_some(pi)
    }
}

/// Iterator over linear extensions; see [`Poset::linear_extensions`].
pub struct LinearExtensions<'a> {
    poset: &'a Poset,
    prefix: Vec<usize>,
    placed: Vec<bool>,
    // number of unplaced strict predecessors
    pending: Vec<usize>,
    cursor: Vec<usize>,
    done: bool,
}

impl<'a> LinearExtensions<'a> {
    fn new(poset: &'a Poset) -> Self {
        let n = poset.n;
        let pending = poset
            .elements()
            .map(|y| poset.elements().filter(|&x| poset.lt(x, y)).count())
            .collect();
        Self {
            poset,
            prefix: Vec::with_capacity(n),
            placed: vec![false; n],
            pending,
            cursor: vec![0; n + 1],
            done: false,
        }
    }

    fn push(&mut self, x: usize) {
        self.placed[x] = true;
        self.prefix.push(x);
        for y in 0..self.poset.n {
            if self.poset.lt[x * self.poset.n + y] {
                self.pending[y] -= 1;
            }
        }
        self.cursor[self.prefix.len()] = 0;
    }

    fn pop(&mut self) {
        let x = self.prefix.pop().expect("non-empty prefix");
        self.placed[x] = false;
        for y in 0..self.poset.n {
            if self.poset.lt[x * self.poset.n + y] {
                self.pending[y] += 1;
            }
        }
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let n = self.poset.n;
        while !self.done {
            let depth = self.prefix.len();
            if depth == n {
                let word = self.prefix.iter().map(|&x| x + 1).collect();
                self.pop();
                return Some(Permutation::new(word).expect("extension is a permutation"));
            }
            let next = (self.cursor[depth]..n).find(|&x| !self.placed[x] && self.pending[x] == 0);
            match next {
                Some(x) => {
                    self.cursor[depth] = x + 1;
                    self.push(x);
                }
                None if depth == 0 => self.done = true,
                None => self.pop(),
            }
        }
        None
    }
}

/// True iff `f` (with `f[x - 1]` the image of `x`) is an order isomorphism `p -> q`.
pub fn isomorphism_check(p: &Poset, q: &Poset, f: &[usize]) -> Result<bool> {
    let n = p.n;
    if q.n != n || f.len() != n {
        return Err(Error::NotBijection(n));
    }
    let mut seen = vec![false; n];
    for &y in f {
        if y == 0 || y > n || seen[y - 1] {
            return Err(Error::NotBijection(n));
        }
        seen[y - 1] = true;
    }
    Ok(p.elements()
        .all(|x| p.elements().all(|y| p.lt(x, y) == q.lt(f[x - 1], f[y - 1]))))
}
