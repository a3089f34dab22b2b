//! Command implementations behind the `cmposet` binary.
//!
//! Every command returns an [`Output`] instead of printing, so the binary
//! stays a thin wrapper and the commands are testable in-process.

pub mod ideal;
pub mod input;
pub mod report;
pub mod sweep;

use std::fmt::Write;
use std::path::Path;

use crate::cm::{
    cocomparability_graph, decide_cm, decide_cm_with_realizer, edge_ideal_generators,
    layer_subposet, CmVerdict, DimensionClass,
};
use crate::poset::Poset;
use crate::shelling::{brute_force_shelling, verify_shelling, MAX_BRUTE_FORCE_FACETS};
use crate::topology::{
    is_cm_reisner, is_strongly_connected, link, order_complex, reduced_betti, Field,
};

pub use ideal::{render_ideal, IdealFormat};
pub use input::{InputError, InputSpec};
pub use report::Report;
pub use sweep::{sweep, SweepSummary, MAX_SWEEP_N};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    pub fn input_error(message: impl std::fmt::Display) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            code: EXIT_INPUT,
        }
    }
}

pub fn load(path: &Path) -> Result<InputSpec, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError {
        line: None,
        message: format!("{}: {e}", path.display()),
    })?;
    InputSpec::parse(&text).map_err(|e| InputError {
        message: format!("{}: {}", path.display(), e.message),
        ..e
    })
}

fn verdict_for(spec: &InputSpec, p: &Poset) -> CmVerdict {
    match spec.lines() {
        Some(lines) if lines.len() == 2 => {
            decide_cm_with_realizer(p, &lines[0], &lines[1]).expect("input lines realize the poset")
        }
        _ => decide_cm(p),
    }
}

/// Runs the full analysis. The second value lists certificate checks that
/// failed; it is empty for a healthy run.
pub fn analyze(
    spec: &InputSpec,
    field: Field,
    oracle: bool,
) -> Result<(Report, Vec<String>), InputError> {
    let p = spec.poset()?;
    let verdict = verdict_for(spec, &p);
    let complex = order_complex(&p);
    let strongly_connected = is_strongly_connected(&complex);
    let mut report = Report::new(p.n(), &verdict, strongly_connected, field);
    report.edge_ideal_generators = edge_ideal_generators(&cocomparability_graph(&p)).len();

    let mut problems = Vec::new();
    if let Some((s, t)) = &verdict.realizer {
        match report::NormalForm::new(&p, s, t) {
            Ok(nf) => {
                if !nf.iso_verified {
                    problems.push("normalized realizer is not isomorphic to the poset".into());
                }
                report.normal_form = Some(nf);
            }
            Err(e) => problems.push(format!("cannot normalize realizer: {e}")),
        }
    }
    if let Some(cert) = &verdict.shelling_certificate {
        match verify_shelling(&cert.chains) {
            Ok(c) if c.ok => {}
            other => problems.push(format!(
                "shelling certificate failed verification: {other:?}"
            )),
        }
    }
    if let Some((s, t)) = &verdict.realizer {
        if Poset::from_linear_orders(&[s.clone(), t.clone()])
            .ok()
            .as_ref()
            != Some(&p)
        {
            problems.push("realizer does not intersect to the poset".into());
        }
    }
    if let Some(i) = verdict.failing_layer {
        if layer_subposet(&p, i)
            .map(|l| l.poset.is_connected())
            .unwrap_or(true)
        {
            problems.push(format!("failing layer {i} is connected on re-check"));
        }
    }
    if let Some(cm) = verdict.cm {
        if cm != strongly_connected {
            problems.push(format!(
                "criterion says cm = {cm} but strong connectivity is {strongly_connected}"
            ));
        }
    }
    if oracle {
        let r = is_cm_reisner(&complex, field).map_err(|e| InputError {
            line: None,
            message: e.to_string(),
        })?;
        if let Some(w) = &r.witness {
            let reproduces = link(&complex, w)
                .and_then(|lk| reduced_betti(&lk, field))
                .map(|h| !h.vanishes_below_dim())
                .unwrap_or(false);
            if !reproduces {
                problems.push(format!("witness face {w:?} does not reproduce the failure"));
            }
        }
        report.reduced_betti = reduced_betti(&complex, field).ok().map(|h| h.reduced_betti);
        report.oracle_agrees = verdict.cm.map(|cm| cm == r.cm);
        if report.oracle_agrees == Some(false) {
            problems.push(format!(
                "homology oracle says cm = {} against the criterion",
                r.cm
            ));
        }
        report.reisner_cm = Some(r.cm);
        report.reisner_witness = r.witness;
    }
    Ok((report, problems))
}

pub fn cmd_analyze(spec: &InputSpec, field: Field, oracle: bool, json: bool) -> Output {
    match analyze(spec, field, oracle) {
        Ok((report, problems)) => Output {
            stdout: if json {
                report.to_json() + "\n"
            } else {
                report.render_text()
            },
            stderr: problems
                .iter()
                .map(|p| format!("internal check failed: {p}\n"))
                .collect(),
            code: if problems.is_empty() {
                EXIT_OK
            } else {
                EXIT_INTERNAL
            },
        },
        Err(e) => Output::input_error(e),
    }
}

pub fn cmd_sweep(n: usize, field: Field, json: bool) -> Output {
    if !(1..=MAX_SWEEP_N).contains(&n) {
        return Output::input_error(format!("sweep size must be in 1..={MAX_SWEEP_N}, got {n}"));
    }
    let summary = sweep(n, field);
    let stdout = if json {
        serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n"
    } else {
        let mut s = String::new();
        writeln!(s, "n = {n}, field {field}").unwrap();
        writeln!(s, "posets: {}", summary.total).unwrap();
        writeln!(s, "Cohen-Macaulay: {}", summary.cm).unwrap();
        writeln!(s, "not Cohen-Macaulay: {}", summary.non_cm).unwrap();
        if summary.shelling_unchecked > 0 {
            writeln!(
                s,
                "shelling search skipped (more than {MAX_BRUTE_FORCE_FACETS} facets): {}",
                summary.shelling_unchecked
            )
            .unwrap();
        }
        writeln!(s, "disagreements: {}", summary.disagreements.len()).unwrap();
        for d in summary.disagreements.iter().take(10) {
            writeln!(s, "  {d:?}").unwrap();
        }
        s
    };
    Output {
        stdout,
        stderr: String::new(),
        code: if summary.all_agree() {
            EXIT_OK
        } else {
            EXIT_INTERNAL
        },
    }
}

pub fn cmd_homology(spec: &InputSpec, link_face: Option<&[usize]>, field: Field) -> Output {
    let p = match spec.poset() {
        Ok(p) => p,
        Err(e) => return Output::input_error(e),
    };
    let whole = order_complex(&p);
    let (label, complex) = match link_face {
        None => ("order complex".to_string(), whole),
        Some(face) => match link(&whole, face) {
            Ok(lk) => (format!("link of {face:?}"), lk),
            Err(e) => return Output::input_error(e),
        },
    };
    let h = match reduced_betti(&complex, field) {
        Ok(h) => h,
        Err(e) => return Output::input_error(e),
    };
    let mut s = String::new();
    writeln!(
        s,
        "{label}: {} facets, dimension {}",
        complex.facets().len(),
        h.dim()
    )
    .unwrap();
    writeln!(s, "facets: {:?}", complex.facets()).unwrap();
    writeln!(s, "field: {field}").unwrap();
    writeln!(s, "f-vector (from degree -1): {:?}", h.f_vector).unwrap();
    for (k, b) in h.reduced_betti.iter().enumerate() {
        writeln!(s, "reduced betti {}: {b}", k as isize - 1).unwrap();
    }
    if h.dim() == -1 {
        writeln!(
            s,
            "note: the complex {{∅}} is given reduced betti -1 = 1 by convention"
        )
        .unwrap();
    }
    if !h.euler_identity_holds() {
        return Output {
            stdout: s,
            stderr: "internal check failed: Euler characteristic mismatch\n".into(),
            code: EXIT_INTERNAL,
        };
    }
    Output::ok(s)
}

pub fn cmd_shelling(spec: &InputSpec) -> Output {
    let p = match spec.poset() {
        Ok(p) => p,
        Err(e) => return Output::input_error(e),
    };
    let verdict = verdict_for(spec, &p);
    let mut s = String::new();
    let fmt_chain = |c: &[usize]| {
        c.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    if let Some(cert) = &verdict.shelling_certificate {
        writeln!(s, "shelling order ({} chains):", cert.chains.len()).unwrap();
        for c in &cert.chains {
            writeln!(s, "  {}", fmt_chain(c)).unwrap();
        }
        return if cert.verified {
            Output::ok(s)
        } else {
            Output {
                stdout: s,
                stderr: format!(
                    "internal check failed: violation at {:?}\n",
                    cert.first_violation
                ),
                code: EXIT_INTERNAL,
            }
        };
    }
    match verdict.dimension_class {
        DimensionClass::AtLeastThree => {
            let facets = p.maximal_chains();
            if facets.len() > MAX_BRUTE_FORCE_FACETS {
                writeln!(
                    s,
                    "dimension >= 3 and {} maximal chains: no certificate available",
                    facets.len()
                )
                .unwrap();
            } else {
                match brute_force_shelling(&facets).expect("maximal chains are distinct") {
                    Some(order) => {
                        writeln!(
                            s,
                            "shelling order found by exhaustive search ({} chains):",
                            order.len()
                        )
                        .unwrap();
                        for c in &order {
                            writeln!(s, "  {}", fmt_chain(c)).unwrap();
                        }
                    }
                    None => writeln!(
                        s,
                        "not shellable (exhaustive search over {} chains)",
                        facets.len()
                    )
                    .unwrap(),
                }
            }
        }
        _ => {
            let reason = match verdict.failing_layer {
                Some(i) => format!("layers {i} and {} are disconnected", i + 1),
                None => "the poset is not pure".into(),
            };
            writeln!(s, "not shellable: {reason}").unwrap();
        }
    }
    Output::ok(s)
}

pub fn cmd_export_ideal(spec: &InputSpec, format: IdealFormat) -> Output {
    match spec.poset() {
        Ok(p) => {
            let gens = edge_ideal_generators(&cocomparability_graph(&p));
            Output::ok(render_ideal(format, p.n(), &gens) + "\n")
        }
        Err(e) => Output::input_error(e),
    }
}

pub fn cmd_graph(spec: &InputSpec) -> Output {
    match spec.poset() {
        Ok(p) => {
            let g = cocomparability_graph(&p);
            let mut s = String::new();
            writeln!(s, "n {}", g.n()).unwrap();
            for (i, j) in g.edges() {
                writeln!(s, "edge {i} {j}").unwrap();
            }
            Output::ok(s)
        }
        Err(e) => Output::input_error(e),
    }
}

/// Parses `1,2,3` into a face; an empty string is the empty face.
pub fn parse_face(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| format!("`{t}` is not a vertex label"))
        })
        .collect()
}
