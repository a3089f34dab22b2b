//! Exhaustive agreement check over every `P_pi`, `pi` in `S_n`.

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cm::condition4;
use crate::perm::Permutation;
use crate::poset::Poset;
use crate::shelling::{brute_force_shelling, e_order, MAX_BRUTE_FORCE_FACETS};
use crate::topology::{is_cm_reisner, is_strongly_connected, order_complex, Field};

pub const MAX_SWEEP_N: usize = 7;

/// The four predicates evaluated on one `P_pi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceCheck {
    pub pi: Permutation,
    pub condition4: bool,
    /// The constructed order verifies (criterion holds) or a brute-force
    /// search finds some shelling (criterion fails). `None` when the search
    /// would exceed its facet cap.
    pub shellable: Option<bool>,
    pub reisner_cm: bool,
    pub strongly_connected: bool,
}

impl InstanceCheck {
    pub fn agrees(&self) -> bool {
        self.shellable.is_none_or(|s| s == self.condition4)
            && self.reisner_cm == self.condition4
            && self.strongly_connected == self.condition4
    }
}

pub fn check_instance(pi: &Permutation, field: Field) -> InstanceCheck {
    let p = Poset::from_permutation(pi);
    let c4 = condition4(&p).holds;
    let d = order_complex(&p);
    let shellable = if c4 {
        Some(e_order(&p).is_ok_and(|o| o.verified))
    } else if d.facets().len() <= MAX_BRUTE_FORCE_FACETS {
        Some(
            brute_force_shelling(d.facets())
                .expect("order complex facets are distinct and maximal")
                .is_some(),
        )
    } else {
        None
    };
    InstanceCheck {
        pi: pi.clone(),
        condition4: c4,
        shellable,
        reisner_cm: is_cm_reisner(&d, field)
            .expect("order complexes are non-void")
            .cm,
        strongly_connected: is_strongly_connected(&d),
    }
}

/// All permutations of `1..=n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n)
        .permutations(n)
        .map(|w| Permutation::new(w).expect("itertools yields permutations"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub n: usize,
    pub field: Field,
    pub total: usize,
    pub cm: usize,
    pub non_cm: usize,
    /// Instances whose shelling search was skipped for size.
    pub shelling_unchecked: usize,
    pub disagreements: Vec<InstanceCheck>,
}

impl SweepSummary {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

pub fn sweep(n: usize, field: Field) -> SweepSummary {
    let perms: Vec<Permutation> = all_permutations(n).collect();
    let checks: Vec<InstanceCheck> = perms
        .par_iter()
        .map(|pi| check_instance(pi, field))
        .collect();
    let cm = checks.iter().filter(|c| c.condition4).count();
    SweepSummary {
        n,
        field,
        total: checks.len(),
        cm,
        non_cm: checks.len() - cm,
        shelling_unchecked: checks.iter().filter(|c| c.shellable.is_none()).count(),
        disagreements: checks.into_iter().filter(|c| !c.agrees()).collect(),
    }
}
