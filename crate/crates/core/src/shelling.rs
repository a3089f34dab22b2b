//! Shelling orders of order complexes.
//!
//! [`e_order`] builds an explicit shelling for a dimension-two poset that passes
//! the layer-connectivity criterion: relabel the poset as `P_pi` (the
//! intersection of the identity with `pi`), order every height layer by
//! *decreasing* label, and sort maximal chains by the layer order at the
//! highest position where they differ. [`verify_shelling`] checks any facet
//! order against the definition of a shelling.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::cm::{condition4, dim2_realizer};
use crate::error::{Error, Result};
use crate::perm::{normalize_realizer, Permutation};
use crate::poset::{Chain, HeightProfile, Poset};

/// A candidate shelling order of maximal chains, with its verification result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainOrder {
    pub chains: Vec<Chain>,
    pub verified: bool,
    pub first_violation: Option<(usize, usize)>,
}

impl ChainOrder {
    /// Verifies `chains` as given; fails only on duplicate or nested chains.
    pub fn new(chains: Vec<Chain>) -> Result<Self> {
        let check = verify_shelling(&chains)?;
        Ok(Self {
            chains,
            verified: check.ok,
            first_violation: check.first_violation,
        })
    }
}

/// Upper covers of an element and their extremes under the layer order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperCovers {
    pub covers: Vec<usize>,
    /// Least cover under the layer order: the numerically largest.
    pub min: Option<usize>,
    /// Greatest cover under the layer order: the numerically smallest.
    pub max: Option<usize>,
}

pub fn upper_covers(p: &Poset, x: usize) -> Result<UpperCovers> {
    p.check_label(x)?;
    let covers = p.upper_covers_of(x);
    Ok(UpperCovers {
        min: covers.last().copied(),
        max: covers.first().copied(),
        covers,
    })
}

/// Layer orders and cover neighbourhoods of a pure poset in `P_pi` labelling.
#[derive(Debug, Clone)]
pub struct LayerOrderContext {
    pub profile: HeightProfile,
    up: Vec<UpperCovers>,
}

impl LayerOrderContext {
    pub fn new(p: &Poset) -> Result<Self> {
        let profile = p.height_profile();
        if !profile.pure {
            return Err(Error::Precondition("a pure poset".into()));
        }
        let up = p
            .elements()
            .map(|x| upper_covers(p, x))
            .collect::<Result<_>>()?;
        Ok(Self { profile, up })
    }

    /// `x <_i y` for two elements of the same layer `i`; `None` across layers.
    pub fn layer_less(&self, x: usize, y: usize) -> Option<bool> {
        (self.profile.height(x) == self.profile.height(y)).then_some(x > y)
    }

    pub fn upper_covers(&self, x: usize) -> &UpperCovers {
        &self.up[x - 1]
    }

    /// Immediate predecessor of `y` in its layer order, if any.
    pub fn layer_predecessor(&self, y: usize) -> Option<usize> {
        let layer = &self.profile.layers[self.profile.height(y)];
        layer.iter().copied().filter(|&z| z > y).min()
    }
}

/// Compares two maximal chains of a pure `P_pi` at the highest index where
/// they differ, using the reversed natural order on that layer.
pub fn chain_compare_e(c1: &[usize], c2: &[usize]) -> Result<Ordering> {
    if c1.len() != c2.len() {
        return Err(Error::ChainLengthMismatch(c1.len(), c2.len()));
    }
    Ok(c1
        .iter()
        .zip(c2)
        .rev()
        .find(|(a, b)| a != b)
        .map_or(Ordering::Equal, |(a, b)| b.cmp(a)))
}

/// Sorts the maximal chains of `p`, which must already be labelled as `P_pi`.
fn sort_natural(p: &Poset) -> Vec<Chain> {
    let mut chains = p.maximal_chains();
    chains.sort_by(|a, b| chain_compare_e(a, b).expect("pure poset has equal-length chains"));
    chains
}

/// Maximal chains of `p` sorted by [`chain_compare_e`] in a `P_pi` labelling, mapped back to `p`'s labels.
///
/// Needs `p` to satisfy the layer-connectivity criterion and to have dimension
/// at most two. A poset already labelled as `P_pi` is used as is; otherwise a
/// realizer is searched for and normalized first.
pub fn e_order(p: &Poset) -> Result<ChainOrder> {
    check_condition4(p)?;
    if p.natural_realizer().is_some() {
        return ChainOrder::new(sort_natural(p));
    }
    let (s, t) =
        dim2_realizer(p).ok_or_else(|| Error::Precondition("dimension at most two".into()))?;
    e_order_with_realizer(p, &s, &t)
}

/// As [`e_order`], using the given two-line realizer of `p`.
pub fn e_order_with_realizer(p: &Poset, s: &Permutation, t: &Permutation) -> Result<ChainOrder> {
    if Poset::from_linear_orders(&[s.clone(), t.clone()])? != *p {
        return Err(Error::Precondition(
            "a realizer whose intersection is the poset".into(),
        ));
    }
    check_condition4(p)?;
    let norm = normalize_realizer(s, t)?;
    let natural = Poset::from_permutation(&norm.pi);
    let chains = sort_natural(&natural)
        .into_iter()
        .map(|c| c.into_iter().map(|x| norm.iso[x - 1]).collect())
        .collect();
    ChainOrder::new(chains)
}

fn check_condition4(p: &Poset) -> Result<()> {
    let c4 = condition4(p);
    if c4.holds {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "the layer criterion to hold (fails: {})",
            c4.witness.expect("failure has a witness")
        )))
    }
}

/// Outcome of [`verify_shelling`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShellingCheck {
    pub ok: bool,
    pub first_violation: Option<(usize, usize)>,
}

/// Checks that, for all `j < i`, some `v ∈ γ_i ∖ γ_j` equals `γ_i ∖ γ_k` for
/// some `k < i` (indices from zero).
///
/// Facets of different sizes never form a shelling here: a pair `(i, j)`
/// with `|γ_i| != |γ_j|` is reported as a violation. The first violation in
/// lexicographic `(i, j)` order is returned.
pub fn verify_shelling(facets: &[Chain]) -> Result<ShellingCheck> {
    let sets: Vec<Vec<usize>> = facets
        .iter()
        .map(|f| {
            let mut s = f.clone();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[..i] {
            if a == b {
                return Err(Error::DuplicateFacet(a.clone()));
            }
            let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
            if small.iter().all(|x| big.contains(x)) {
                return Err(Error::NestedFacet {
                    inner: small.clone(),
                    outer: big.clone(),
                });
            }
        }
    }
    for i in 1..sets.len() {
        let witnesses = singleton_witnesses(&sets, i);
        for j in 0..i {
            let bad = sets[i].len() != sets[j].len()
                || !sets[i]
                    .iter()
                    .any(|v| !sets[j].contains(v) && witnesses.contains(v));
            if bad {
                return Ok(ShellingCheck {
                    ok: false,
                    first_violation: Some((i, j)),
                });
            }
        }
    }
    Ok(ShellingCheck {
        ok: true,
        first_violation: None,
    })
}

// vertices v with γ_i ∖ γ_k = {v} for some k < i
fn singleton_witnesses(sets: &[Vec<usize>], i: usize) -> Vec<usize> {
    sets[..i]
        .iter()
        .filter_map(|prev| {
            let mut diff = sets[i].iter().filter(|v| !prev.contains(v));
            match (diff.next(), diff.next()) {
                (Some(&v), None) => Some(v),
                _ => None,
            }
        })
        .collect()
}

pub const MAX_BRUTE_FORCE_FACETS: usize = 9;

/// Searches all facet orders for a shelling, pruning on the first failing prefix.
pub fn brute_force_shelling(facets: &[Chain]) -> Result<Option<Vec<Chain>>> {
    if facets.len() > MAX_BRUTE_FORCE_FACETS {
        return Err(Error::TooManyFacets {
            cap: MAX_BRUTE_FORCE_FACETS,
            got: facets.len(),
        });
    }
    // surface duplicate / nested errors up front
    verify_shelling(facets)?;
    if facets.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let sets: Vec<Vec<usize>> = facets
        .iter()
        .map(|f| {
            let mut s = f.clone();
            s.sort_unstable();
            s
        })
        .collect();
    let mut order = Vec::with_capacity(sets.len());
    let mut dead = vec![false; 1 << sets.len()];
    if extend(&sets, &mut order, 0, &mut dead) {
        Ok(Some(order.into_iter().map(|i| facets[i].clone()).collect()))
    } else {
        Ok(None)
    }
}

// Whether the new facet fits depends only on the set of facets before it,
// so failed subsets are memoized by bitmask.
fn extend(sets: &[Vec<usize>], order: &mut Vec<usize>, used: usize, dead: &mut [bool]) -> bool {
    if order.len() == sets.len() {
        return true;
    }
    if dead[used] {
        return false;
    }
    for next in 0..sets.len() {
        if used & (1 << next) != 0 || !fits(sets, order, next) {
            continue;
        }
        order.push(next);
        if extend(sets, order, used | (1 << next), dead) {
            return true;
        }
        order.pop();
    }
    dead[used] = true;
    false
}

fn fits(sets: &[Vec<usize>], order: &[usize], next: usize) -> bool {
    let new = &sets[next];
    let witnesses: Vec<usize> = order
        .iter()
        .filter_map(|&k| {
            let mut diff = new.iter().filter(|v| !sets[k].contains(v));
            match (diff.next(), diff.next()) {
                (Some(&v), None) => Some(v),
                _ => None,
            }
        })
        .collect();
    order.iter().all(|&j| {
        sets[j].len() == new.len()
            && new
                .iter()
                .any(|v| !sets[j].contains(v) && witnesses.contains(v))
    })
}
