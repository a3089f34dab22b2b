#![allow(dead_code)]

use std::path::PathBuf;

use cmposet::{Permutation, Poset};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn perm(word: &[usize]) -> Permutation {
    Permutation::new(word.to_vec()).expect("valid permutation")
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut w: Vec<usize> = (1..=n).collect();
    w.shuffle(rng);
    Permutation::new(w).expect("shuffle of 1..=n")
}

/// A random pure poset on `n` elements and rank at most 3, built layer by
/// layer. Sparse covers between wide layers leave some layer pairs
/// disconnected.
///
/// Each element above the bottom layer gets at least one lower cover in the
/// layer just below, and each element below the top gets at least one upper
/// cover in the layer just above. Labels are shuffled so the layers are not
/// contiguous ranges.
pub fn random_pure_poset<R: Rng>(rng: &mut R, n: usize) -> Poset {
    assert!(n > 0);
    let rank = rng.gen_range(0..n.min(4));
    // every layer gets one element, the rest are spread at random
    let mut sizes = vec![1usize; rank + 1];
    for _ in 0..n - rank - 1 {
        sizes[rng.gen_range(0..=rank)] += 1;
    }
    let mut labels: Vec<usize> = (1..=n).collect();
    labels.shuffle(rng);
    let mut layers: Vec<Vec<usize>> = Vec::new();
    let mut next = labels.into_iter();
    for &s in &sizes {
        layers.push(next.by_ref().take(s).collect());
    }

    let density: f64 = rng.gen_range(0.0..0.35);
    let mut covers = Vec::new();
    for w in layers.windows(2) {
        let (low, high) = (&w[0], &w[1]);
        let mut has_up = vec![false; low.len()];
        for &y in high {
            let mut any = false;
            for (i, &x) in low.iter().enumerate() {
                if rng.gen_bool(density) {
                    covers.push((x, y));
                    has_up[i] = true;
                    any = true;
                }
            }
            if !any {
                let i = rng.gen_range(0..low.len());
                covers.push((low[i], y));
                has_up[i] = true;
            }
        }
        for (i, &x) in low.iter().enumerate() {
            if !has_up[i] {
                covers.push((x, *high.choose(rng).expect("non-empty layer")));
            }
        }
    }
    Poset::from_covers(n, &covers).expect("layered covers are acyclic")
}

/// Any poset on `n` elements: a random subset of pairs `i < j` in a random
/// relabelling, closed transitively.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> Poset {
    let relabel = random_permutation(rng, n);
    let mut rel = vec![false; n * n];
    for i in 1..=n {
        for j in i + 1..=n {
            rel[(i - 1) * n + (j - 1)] = rng.gen_bool(density);
        }
    }
    let inv = relabel.inverse();
    Poset::from_relation(n, |x, y| rel[(inv.apply(x) - 1) * n + (inv.apply(y) - 1)])
        .expect("acyclic by construction")
}
