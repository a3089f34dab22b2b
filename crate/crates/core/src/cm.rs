//! Cohen-Macaulay decision for posets of dimension at most two.
//!
//! For such posets being Cohen-Macaulay, shellable, strongly connected, and
//! the combinatorial layer criterion ([`condition4`]) all coincide. The
//! criterion is checked directly; a realizer search classifies the
//! dimension, and positive verdicts carry a verified shelling order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Graph, Permutation};
use crate::poset::{Poset, SubPoset};
use crate::shelling::{e_order, e_order_with_realizer, ChainOrder};

/// Why the layer criterion fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition4Failure {
    NotPure,
    /// Heights `i` and `i + 1` induce a disconnected subposet.
    LayerDisconnected(usize),
}

impl fmt::Display for Condition4Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition4Failure::NotPure => write!(f, "not pure"),
            Condition4Failure::LayerDisconnected(i) => {
                write!(f, "layers {i} and {} disconnected", i + 1)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Condition4 {
    pub holds: bool,
    pub witness: Option<Condition4Failure>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DimensionClass {
    #[serde(rename = "dim<=1")]
    AtMostOne,
    #[serde(rename = "dim=2")]
    Two,
    #[serde(rename = "dim>=3")]
    AtLeastThree,
}

impl fmt::Display for DimensionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DimensionClass::AtMostOne => "dim<=1",
            DimensionClass::Two => "dim=2",
            DimensionClass::AtLeastThree => "dim>=3",
        })
    }
}

/// Everything [`decide_cm`] learns about a poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmVerdict {
    pub is_antichain: bool,
    pub pure: bool,
    pub condition4: bool,
    pub failing_layer: Option<usize>,
    pub dimension_class: DimensionClass,
    pub realizer: Option<(Permutation, Permutation)>,
    /// `None` when the dimension is three or more: the criterion does not decide those.
    pub cm: Option<bool>,
    pub shelling_certificate: Option<ChainOrder>,
    pub note: Option<String>,
}

pub const UNDECIDED_NOTE: &str =
    "dimension >= 3: the layer criterion is necessary but not sufficient; run the homology oracle";

/// Induced subposet on the elements of height `i` and `i + 1`.
pub fn layer_subposet(p: &Poset, i: usize) -> Result<SubPoset> {
    let prof = p.height_profile();
    if i >= prof.rank {
        return Err(Error::LayerOutOfRange {
            index: i,
            rank: prof.rank,
        });
    }
    let elems: Vec<usize> = prof.layers[i]
        .iter()
        .chain(&prof.layers[i + 1])
        .copied()
        .collect();
    p.induced_subposet(&elems)
}

/// `P` is an antichain, or `P` is pure and every pair of consecutive height
/// layers induces a connected subposet.
pub fn condition4(p: &Poset) -> Condition4 {
    if p.is_antichain() {
        return Condition4 {
            holds: true,
            witness: None,
        };
    }
    let prof = p.height_profile();
    if !prof.pure {
        return Condition4 {
            holds: false,
            witness: Some(Condition4Failure::NotPure),
        };
    }
    for i in 0..prof.rank {
        let layer = layer_subposet(p, i).expect("index below rank");
        if !layer.poset.is_connected() {
            return Condition4 {
                holds: false,
                witness: Some(Condition4Failure::LayerDisconnected(i)),
            };
        }
    }
    Condition4 {
        holds: true,
        witness: None,
    }
}

pub fn cocomparability_graph(p: &Poset) -> Graph {
    let mut g = Graph::new(p.n());
    for x in p.elements() {
        for y in x + 1..=p.n() {
            if !p.comparable(x, y) {
                g.add_edge(x, y).expect("labels in range");
            }
        }
    }
    g
}

/// Generators `x_i x_j` (as `(i, j)`, `i < j`) of the edge ideal, sorted.
/// Empty for an edgeless graph.
pub fn edge_ideal_generators(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().collect()
}

/// Two linear extensions whose intersection is `p`, if `p` has dimension at most two.
///
/// Searches for a transitive orientation of the incomparability graph by
/// forcing and backtracking; each complete orientation `Q` yields the
/// candidate pair `(P ∪ Q, P ∪ Q^op)`, accepted only after re-intersection.
pub fn dim2_realizer(p: &Poset) -> Option<(Permutation, Permutation)> {
    if p.is_chain() {
        let e = p
            .linear_extensions()
            .next()
            .expect("a chain has one extension");
        return Some((e.clone(), e));
    }
    let search = OrientationSearch::new(p);
    if !search.implication_classes_consistent() {
        return None;
    }
    search.run(Orientation::new(p.n()))
}

#[derive(Clone)]
struct Orientation {
    n: usize,
    // dir[a * n + b] = 1 if a -> b, -1 if b -> a, 0 unset (0-based)
    dir: Vec<i8>,
}

impl Orientation {
    fn new(n: usize) -> Self {
        Self {
            n,
            dir: vec![0; n * n],
        }
    }

    fn get(&self, a: usize, b: usize) -> i8 {
        self.dir[a * self.n + b]
    }

    fn set(&mut self, a: usize, b: usize) {
        self.dir[a * self.n + b] = 1;
        self.dir[b * self.n + a] = -1;
    }
}

struct OrientationSearch<'a> {
    p: &'a Poset,
    n: usize,
}

impl<'a> OrientationSearch<'a> {
    fn new(p: &'a Poset) -> Self {
        Self { p, n: p.n() }
    }

    // 0-based incomparability edge
    fn edge(&self, a: usize, b: usize) -> bool {
        a != b && !self.p.comparable(a + 1, b + 1)
    }

    /// No implication class contains an edge in both directions.
    fn implication_classes_consistent(&self) -> bool {
        let n = self.n;
        let mut class = vec![usize::MAX; n * n];
        let mut next = 0;
        for a in 0..n {
            for b in 0..n {
                if !self.edge(a, b) || class[a * n + b] != usize::MAX {
                    continue;
                }
                let mut stack = vec![(a, b)];
                class[a * n + b] = next;
                while let Some((x, y)) = stack.pop() {
                    for c in 0..n {
                        if c == x || c == y {
                            continue;
                        }
                        let mut visit = |u: usize, v: usize| {
                            if class[u * n + v] == usize::MAX {
                                class[u * n + v] = next;
                                stack.push((u, v));
                            }
                        };
                        if self.edge(x, c) && !self.edge(y, c) {
                            visit(x, c);
                        }
                        if self.edge(c, y) && !self.edge(x, c) {
                            visit(c, y);
                        }
                    }
                }
                next += 1;
            }
        }
        (0..n).all(|a| (0..n).all(|b| !self.edge(a, b) || class[a * n + b] != class[b * n + a]))
    }

    /// Orients `a -> b` and everything it forces; false on contradiction.
    fn force(&self, o: &mut Orientation, a: usize, b: usize) -> bool {
        let mut queue = vec![(a, b)];
        while let Some((a, b)) = queue.pop() {
            match o.get(a, b) {
                1 => continue,
                -1 => return false,
                _ => o.set(a, b),
            }
            for c in 0..self.n {
                if c == a || c == b {
                    continue;
                }
                if self.edge(a, c) && !self.edge(b, c) {
                    queue.push((a, c));
                }
                if self.edge(c, b) && !self.edge(a, c) {
                    queue.push((c, b));
                }
                if o.get(c, a) == 1 {
                    if !self.edge(c, b) {
                        return false;
                    }
                    queue.push((c, b));
                }
                if o.get(b, c) == 1 {
                    if !self.edge(a, c) {
                        return false;
                    }
                    queue.push((a, c));
                }
            }
        }
        true
    }

    fn run(&self, o: Orientation) -> Option<(Permutation, Permutation)> {
        let n = self.n;
        let free = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.edge(a, b) && o.get(a, b) == 0);
        let Some((a, b)) = free else {
            return self.realizer_from(&o);
        };
        for (x, y) in [(a, b), (b, a)] {
            let mut trial = o.clone();
            if self.force(&mut trial, x, y) {
                if let Some(r) = self.run(trial) {
                    return Some(r);
                }
            }
        }
        None
    }

    fn realizer_from(&self, o: &Orientation) -> Option<(Permutation, Permutation)> {
        let p = self.p;
        let sigma = linear_order(p.n(), |x, y| p.lt(x, y) || o.get(x - 1, y - 1) == 1)?;
        let tau = linear_order(p.n(), |x, y| p.lt(x, y) || o.get(y - 1, x - 1) == 1)?;
        let back = Poset::from_linear_orders(&[sigma.clone(), tau.clone()]).ok()?;
        (back == *p).then_some((sigma, tau))
    }
}

/// The permutation listing `1..=n` under `before`, if `before` is a strict total order.
fn linear_order(n: usize, before: impl Fn(usize, usize) -> bool) -> Option<Permutation> {
    let mut word: Vec<usize> = (1..=n).collect();
    word.sort_by_key(|&y| (1..=n).filter(|&x| before(x, y)).count());
    let total = word
        .iter()
        .enumerate()
        .all(|(i, &x)| word[i + 1..].iter().all(|&y| before(x, y) && !before(y, x)));
    total.then(|| Permutation::new(word).expect("sorted labels form a permutation"))
}

/// Exhaustive realizer search over pairs of linear extensions; exponential.
pub fn dim2_realizer_exhaustive(p: &Poset) -> Option<(Permutation, Permutation)> {
    let exts: Vec<Permutation> = p.linear_extensions().collect();
    for (i, s) in exts.iter().enumerate() {
        for t in &exts[i..] {
            if Poset::from_linear_orders(&[s.clone(), t.clone()]).ok()? == *p {
                return Some((s.clone(), t.clone()));
            }
        }
    }
    None
}

pub fn decide_cm(p: &Poset) -> CmVerdict {
    let realizer = dim2_realizer(p);
    verdict(p, realizer)
}

/// As [`decide_cm`] with a known realizer; fails if it does not realize `p`.
pub fn decide_cm_with_realizer(p: &Poset, s: &Permutation, t: &Permutation) -> Result<CmVerdict> {
    if Poset::from_linear_orders(&[s.clone(), t.clone()])? != *p {
        return Err(Error::Precondition(
            "a realizer whose intersection is the poset".into(),
        ));
    }
    Ok(verdict(p, Some((s.clone(), t.clone()))))
}

fn verdict(p: &Poset, realizer: Option<(Permutation, Permutation)>) -> CmVerdict {
    let prof = p.height_profile();
    let c4 = condition4(p);
    let dimension_class = match (&realizer, p.is_chain()) {
        (_, true) => DimensionClass::AtMostOne,
        (Some(_), false) => DimensionClass::Two,
        (None, false) => DimensionClass::AtLeastThree,
    };
    let cm = match dimension_class {
        DimensionClass::AtMostOne => Some(true),
        DimensionClass::Two => Some(c4.holds),
        DimensionClass::AtLeastThree => None,
    };
    let shelling_certificate = match (&realizer, cm) {
        (Some((s, t)), Some(true)) => {
            let order = if p.natural_realizer().is_some() {
                e_order(p)
            } else {
                e_order_with_realizer(p, s, t)
            };
            Some(order.expect("criterion holds and a realizer is known"))
        }
        _ => None,
    };
    CmVerdict {
        is_antichain: p.is_antichain(),
        pure: prof.pure,
        condition4: c4.holds,
        failing_layer: match c4.witness {
            Some(Condition4Failure::LayerDisconnected(i)) => Some(i),
            _ => None,
        },
        dimension_class,
        realizer,
        cm,
        shelling_certificate,
        note: (dimension_class == DimensionClass::AtLeastThree).then(|| UNDECIDED_NOTE.to_string()),
    }
}

/// Verdict for the permutation graph drawn by the two-line diagram `(l0, l1)`.
pub fn decide_cm_permutation_graph(l0: &Permutation, l1: &Permutation) -> Result<CmVerdict> {
    let p = Poset::from_linear_orders(&[l0.clone(), l1.clone()])?;
    decide_cm_with_realizer(&p, l0, l1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(w: &[usize]) -> Permutation {
        Permutation::new(w.to_vec()).unwrap()
    }

    fn fig2() -> Poset {
        Poset::from_permutation(&p(&[2, 1, 3, 5, 4]))
    }

    fn fig3() -> Poset {
        Poset::from_covers(
            8,
            &[
                (3, 4),
                (2, 4),
                (2, 5),
                (3, 5),
                (1, 6),
                (3, 6),
                (4, 7),
                (6, 7),
                (5, 8),
                (6, 8),
            ],
        )
        .unwrap()
    }

    /// Restriction of the relation matrix to a label set, without relabeling.
    fn restricted(q: &Poset, labels: &[usize]) -> Vec<(usize, usize)> {
        q.relations()
            .into_iter()
            .filter(|(x, y)| labels.contains(x) && labels.contains(y))
            .collect()
    }

    fn relabeled(s: &SubPoset) -> Vec<(usize, usize)> {
        s.poset
            .relations()
            .into_iter()
            .map(|(x, y)| (s.original(x), s.original(y)))
            .collect()
    }

    #[test]
    fn layers() {
        let l = layer_subposet(&fig2(), 0).unwrap();
        assert_eq!(l.labels, vec![1, 2, 3]);
        assert_eq!(relabeled(&l), restricted(&fig2(), &[1, 2, 3]));
        assert_eq!(relabeled(&l), vec![(1, 3), (2, 3)]);

        let l = layer_subposet(&fig3(), 1).unwrap();
        assert_eq!(l.labels, vec![4, 5, 6, 7, 8]);
        let mut rel = relabeled(&l);
        rel.sort();
        assert_eq!(rel, restricted(&fig3(), &[4, 5, 6, 7, 8]));
        assert_eq!(rel, vec![(4, 7), (5, 8), (6, 7), (6, 8)]);

        assert_eq!(
            layer_subposet(&Poset::chain(2), 0).unwrap().poset,
            Poset::chain(2)
        );
        assert!(matches!(
            layer_subposet(&fig2(), 2),
            Err(Error::LayerOutOfRange { .. })
        ));
        assert!(layer_subposet(&Poset::antichain(3), 0).is_err());
    }

    #[test]
    fn criterion() {
        assert_eq!(
            condition4(&fig2()),
            Condition4 {
                holds: true,
                witness: None
            }
        );
        assert_eq!(
            condition4(&Poset::from_permutation(&p(&[3, 4, 1, 2]))),
            Condition4 {
                holds: false,
                witness: Some(Condition4Failure::LayerDisconnected(0))
            }
        );
        assert_eq!(
            condition4(&Poset::from_permutation(&p(&[3, 1, 2]))),
            Condition4 {
                holds: false,
                witness: Some(Condition4Failure::NotPure)
            }
        );
        assert!(condition4(&fig3()).holds);
        assert!(condition4(&Poset::antichain(4)).holds);
    }

    #[test]
    fn realizers() {
        assert_eq!(
            dim2_realizer(&Poset::chain(3)),
            Some((p(&[1, 2, 3]), p(&[1, 2, 3])))
        );
        let (s, t) = dim2_realizer(&fig2()).unwrap();
        assert_eq!(Poset::from_linear_orders(&[s, t]).unwrap(), fig2());
        let pst = Poset::from_linear_orders(&[p(&[2, 3, 1, 4, 5]), p(&[3, 2, 1, 5, 4])]).unwrap();
        let (s, t) = dim2_realizer(&pst).unwrap();
        assert_eq!(Poset::from_linear_orders(&[s, t]).unwrap(), pst);
        assert_eq!(dim2_realizer(&fig3()), None);
        assert_eq!(dim2_realizer_exhaustive(&fig3()), None);
    }

    #[test]
    fn standard_example_has_dimension_three() {
        // S_3: a_i < b_j iff i != j
        let s3 = Poset::from_covers(6, &[(1, 5), (1, 6), (2, 4), (2, 6), (3, 4), (3, 5)]).unwrap();
        assert_eq!(dim2_realizer(&s3), None);
        assert_eq!(dim2_realizer_exhaustive(&s3), None);
    }

    #[test]
    fn verdicts() {
        let v = decide_cm(&fig2());
        assert_eq!(v.dimension_class, DimensionClass::Two);
        assert_eq!(v.cm, Some(true));
        let cert = v.shelling_certificate.unwrap();
        assert!(cert.verified);
        assert_eq!(cert.chains.len(), 4);

        let v = decide_cm(&Poset::from_permutation(&p(&[3, 4, 1, 2])));
        assert_eq!(
            (v.dimension_class, v.cm, v.failing_layer),
            (DimensionClass::Two, Some(false), Some(0))
        );
        assert!(v.shelling_certificate.is_none());

        let v = decide_cm(&fig3());
        assert_eq!(v.dimension_class, DimensionClass::AtLeastThree);
        assert_eq!(v.cm, None);
        assert!(v.condition4);
        assert!(v.note.is_some());

        let v = decide_cm(&Poset::chain(1));
        assert_eq!(
            (v.dimension_class, v.cm),
            (DimensionClass::AtMostOne, Some(true))
        );
    }

    #[test]
    fn graphs_and_ideals() {
        let g = cocomparability_graph(&fig2());
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2), (4, 5)]);
        assert_eq!(edge_ideal_generators(&g), vec![(1, 2), (4, 5)]);
        assert_eq!(cocomparability_graph(&Poset::chain(4)).edge_count(), 0);
        assert!(edge_ideal_generators(&cocomparability_graph(&Poset::chain(4))).is_empty());
        let k3 = cocomparability_graph(&Poset::antichain(3));
        assert_eq!(edge_ideal_generators(&k3), vec![(1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn permutation_graph_verdicts() {
        let v = decide_cm_permutation_graph(&p(&[2, 3, 1, 4, 5]), &p(&[3, 2, 1, 5, 4])).unwrap();
        assert_eq!(v.cm, Some(true));
        assert!(v.shelling_certificate.unwrap().verified);
        let v = decide_cm_permutation_graph(&p(&[1, 2, 3, 4]), &p(&[3, 4, 1, 2])).unwrap();
        assert_eq!(v.cm, Some(false));
        let l = p(&[2, 4, 1, 3]);
        let v = decide_cm_permutation_graph(&l, &l).unwrap();
        assert_eq!(
            (v.dimension_class, v.cm),
            (DimensionClass::AtMostOne, Some(true))
        );
        assert!(decide_cm_permutation_graph(&p(&[1]), &p(&[1, 2])).is_err());
    }
}
