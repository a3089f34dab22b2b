use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::cm::{CmVerdict, DimensionClass};
use crate::error::Result;
use crate::perm::{normalize_realizer, Permutation};
use crate::poset::{isomorphism_check, Chain, Poset};
use crate::shelling::ChainOrder;
use crate::topology::{Face, Field};

/// The realizer rewritten with the identity as first order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalForm {
    pub pi: Permutation,
    /// `iso[j - 1]` is the image of `j` under the isomorphism onto the input poset.
    pub iso: Vec<usize>,
    pub iso_verified: bool,
}

impl NormalForm {
    pub fn new(p: &Poset, s: &Permutation, t: &Permutation) -> Result<Self> {
        let norm = normalize_realizer(s, t)?;
        let iso_verified = isomorphism_check(&Poset::from_permutation(&norm.pi), p, &norm.iso)?;
        Ok(Self {
            pi: norm.pi,
            iso: norm.iso,
            iso_verified,
        })
    }
}

/// Machine-readable result of `analyze`. Field names are part of the CLI contract.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub n: usize,
    pub dimension_class: DimensionClass,
    pub is_antichain: bool,
    pub pure: bool,
    pub condition4: bool,
    pub failing_layer: Option<usize>,
    pub strongly_connected: bool,
    pub cm: Option<bool>,
    pub field: Field,
    pub shelling: Option<Vec<Chain>>,
    pub shelling_verified: Option<bool>,
    pub realizer: Option<(Permutation, Permutation)>,
    pub normal_form: Option<NormalForm>,
    /// Link-homology verdict; present only when the oracle was run.
    pub reisner_cm: Option<bool>,
    pub reisner_witness: Option<Face>,
    /// Reduced Betti numbers of the order complex from degree -1 upward.
    pub reduced_betti: Option<Vec<usize>>,
    pub oracle_agrees: Option<bool>,
    pub edge_ideal_generators: usize,
    pub note: Option<String>,
}

impl Report {
    pub fn new(n: usize, verdict: &CmVerdict, strongly_connected: bool, field: Field) -> Self {
        let cert = verdict.shelling_certificate.as_ref();
        Self {
            n,
            dimension_class: verdict.dimension_class,
            is_antichain: verdict.is_antichain,
            pure: verdict.pure,
            condition4: verdict.condition4,
            failing_layer: verdict.failing_layer,
            strongly_connected,
            cm: verdict.cm,
            field,
            shelling: cert.map(|c| c.chains.clone()),
            shelling_verified: cert.map(|c| c.verified),
            realizer: verdict.realizer.clone(),
            normal_form: None,
            reisner_cm: None,
            reisner_witness: None,
            reduced_betti: None,
            oracle_agrees: None,
            edge_ideal_generators: 0,
            note: verdict.note.clone(),
        }
    }

    /// Rebuilds the verdict; the shelling order is re-verified from scratch.
    pub fn verdict(&self) -> Result<CmVerdict> {
        Ok(CmVerdict {
            is_antichain: self.is_antichain,
            pure: self.pure,
            condition4: self.condition4,
            failing_layer: self.failing_layer,
            dimension_class: self.dimension_class,
            realizer: self.realizer.clone(),
            cm: self.cm,
            shelling_certificate: self.shelling.clone().map(ChainOrder::new).transpose()?,
            note: self.note.clone(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let mut s = String::new();
        writeln!(s, "elements: {}", self.n).unwrap();
        match &self.realizer {
            Some((a, b)) => writeln!(
                s,
                "dimension: {} (realizer {a} and {b})",
                self.dimension_class
            )
            .unwrap(),
            None => writeln!(s, "dimension: {}", self.dimension_class).unwrap(),
        }
        if let Some(nf) = &self.normal_form {
            let status = if nf.iso_verified {
                "verified"
            } else {
                "NOT verified"
            };
            writeln!(
                s,
                "normal form: pi = {} via j -> {:?} ({status})",
                nf.pi, nf.iso
            )
            .unwrap();
        }
        writeln!(s, "antichain: {}", yn(self.is_antichain)).unwrap();
        writeln!(s, "pure: {}", yn(self.pure)).unwrap();
        let crit = match (self.condition4, self.failing_layer) {
            (true, _) => "holds".to_string(),
            (false, Some(i)) => format!("fails (layers {i} and {} disconnected)", i + 1),
            (false, None) => "fails (not pure)".to_string(),
        };
        writeln!(s, "layer criterion: {crit}").unwrap();
        writeln!(s, "strongly connected: {}", yn(self.strongly_connected)).unwrap();
        let cm = match self.cm {
            Some(b) => yn(b).to_string(),
            None => "undecided by the layer criterion".to_string(),
        };
        writeln!(s, "Cohen-Macaulay: {cm}").unwrap();
        if let Some(chains) = &self.shelling {
            let status = if self.shelling_verified == Some(true) {
                "verified"
            } else {
                "NOT verified"
            };
            writeln!(s, "shelling order ({} chains, {status}):", chains.len()).unwrap();
            for c in chains {
                writeln!(
                    s,
                    "  {}",
                    c.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                )
                .unwrap();
            }
        }
        if self.edge_ideal_generators == 0 {
            writeln!(s, "edge ideal: trivial (no incomparable pairs)").unwrap();
        } else {
            writeln!(s, "edge ideal: {} generators", self.edge_ideal_generators).unwrap();
        }
        if let Some(r) = self.reisner_cm {
            let witness = match &self.reisner_witness {
                Some(f) => format!(
                    ", failing link at {{{}}}",
                    f.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                ),
                None => String::new(),
            };
            writeln!(
                s,
                "homology oracle over {}: Cohen-Macaulay {}{witness}",
                self.field,
                yn(r)
            )
            .unwrap();
            if let Some(b) = &self.reduced_betti {
                writeln!(s, "reduced Betti numbers (from degree -1): {b:?}").unwrap();
            }
            match self.oracle_agrees {
                Some(true) => writeln!(s, "oracle agrees with the criterion").unwrap(),
                Some(false) => writeln!(s, "ORACLE DISAGREES with the criterion").unwrap(),
                None => {}
            }
        }
        if let Some(note) = &self.note {
            writeln!(s, "note: {note}").unwrap();
        }
        s
    }
}
