//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use cmposet::cli::sweep::all_permutations;
use cmposet::cm::{condition4, dim2_realizer};
use cmposet::perm::normalize_realizer;
use cmposet::poset::isomorphism_check;
use cmposet::shelling::{brute_force_shelling, e_order, verify_shelling, MAX_BRUTE_FORCE_FACETS};
use cmposet::topology::{
    boundary_matrices, is_cm_reisner, is_strongly_connected, link, order_complex, reduced_betti,
};
use cmposet::{Field, Permutation, Poset, SimplicialComplex};

use common::{fixture, perm, random_pure_poset};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const FIELDS: [Field; 3] = [Field::GF2, Field::GF3, Field::Rational];

const FIG3_COVERS: [(usize, usize); 10] = [
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
];

fn fig3_lines() -> Vec<Permutation> {
    vec![
        perm(&[1, 3, 6, 2, 4, 7, 5, 8]),
        perm(&[2, 3, 4, 5, 1, 6, 7, 8]),
        perm(&[3, 1, 2, 6, 5, 8, 4, 7]),
    ]
}

fn criterion_1() -> Outcome {
    let s = perm(&[2, 3, 1, 4, 5]);
    let t = perm(&[3, 2, 1, 5, 4]);
    let norm = normalize_realizer(&s, &t).map_err(|e| e.to_string())?;
    ensure!(norm.pi.word() == [2, 1, 3, 5, 4], "pi = {}", norm.pi);
    ensure!(norm.iso == s.word(), "iso = {:?}", norm.iso);
    let p = Poset::from_linear_orders(&[s, t]).map_err(|e| e.to_string())?;
    let ok = isomorphism_check(&Poset::from_permutation(&norm.pi), &p, &norm.iso)
        .map_err(|e| e.to_string())?;
    ensure!(ok, "j -> sigma(j) is not an isomorphism");
    Ok(format!("pi = {}, j -> sigma(j) verified", norm.pi))
}

fn criterion_2() -> Outcome {
    let p = Poset::from_covers(8, &FIG3_COVERS).map_err(|e| e.to_string())?;
    let q = Poset::from_linear_orders(&fig3_lines()).map_err(|e| e.to_string())?;
    ensure!(
        p.relations() == q.relations(),
        "covers give {:?}, lines give {:?}",
        p.relations(),
        q.relations()
    );
    ensure!(
        condition4(&p).holds,
        "layer criterion fails: {:?}",
        condition4(&p)
    );
    let d = order_complex(&p);
    for field in FIELDS {
        let v = is_cm_reisner(&d, field).map_err(|e| e.to_string())?;
        ensure!(!v.cm, "Reisner says CM over {field}");
        ensure!(
            v.witness.as_deref() == Some(&[2][..]),
            "witness over {field} is {:?}",
            v.witness
        );
    }
    let lk = link(&d, &[2]).map_err(|e| e.to_string())?;
    let expected: Vec<Vec<usize>> = vec![vec![4, 7], vec![5, 8]];
    ensure!(
        lk.facets() == expected.as_slice(),
        "link facets {:?}",
        lk.facets()
    );
    for field in FIELDS {
        let h = reduced_betti(&lk, field).map_err(|e| e.to_string())?;
        ensure!(h.betti(0) == 1, "b0 of link over {field} is {}", h.betti(0));
    }
    ensure!(dim2_realizer(&p).is_none(), "found a two-line realizer");
    Ok("covers = lines, criterion holds, witness {2} over GF(2)/GF(3)/Q, link {47,58}, b0 = 1, no 2-realizer".into())
}

/// Everything computed once per `P_pi` in the sweep.
struct Instance {
    pi: Permutation,
    c4: bool,
    e_order_verified: Option<bool>,
    brute_force: Option<bool>,
    reisner: [bool; 3],
    strongly_connected: bool,
    euler_ok: bool,
    boundary_ok: bool,
}

fn examine(pi: &Permutation) -> Instance {
    let p = Poset::from_permutation(pi);
    let c4 = condition4(&p).holds;
    let d = order_complex(&p);
    let e_order_verified = c4.then(|| {
        e_order(&p)
            .ok()
            .and_then(|o| verify_shelling(&o.chains).ok())
            .is_some_and(|c| c.ok)
    });
    let brute_force = (!c4 && d.facets().len() <= MAX_BRUTE_FORCE_FACETS).then(|| {
        brute_force_shelling(d.facets())
            .expect("distinct maximal chains")
            .is_some()
    });
    let reisner = FIELDS.map(|f| is_cm_reisner(&d, f).expect("non-void").cm);

    let mut complexes = vec![d.clone()];
    complexes.extend(
        d.vertices()
            .iter()
            .map(|&v| link(&d, &[v]).expect("vertex is a face")),
    );
    let euler_ok = complexes.iter().all(|c| {
        FIELDS
            .iter()
            .all(|&f| reduced_betti(c, f).is_ok_and(|h| h.euler_identity_holds()))
    });
    let ms = boundary_matrices(&d);
    let boundary_ok = ms
        .windows(2)
        .all(|w| w[0].compose(&w[1]).iter().flatten().all(|&x| x == 0));

    Instance {
        pi: pi.clone(),
        c4,
        e_order_verified,
        brute_force,
        reisner,
        strongly_connected: is_strongly_connected(&d),
        euler_ok,
        boundary_ok,
    }
}

fn sweep_instances() -> Vec<Instance> {
    let perms: Vec<Permutation> = (1..=6).flat_map(all_permutations).collect();
    perms.par_iter().map(examine).collect()
}

fn criterion_3(instances: &[Instance]) -> Outcome {
    ensure!(instances.len() == 873, "{} instances", instances.len());
    let mut cm = 0;
    let mut brute = 0;
    for inst in instances {
        let n = inst.pi.len();
        if inst.c4 {
            cm += 1;
            ensure!(
                inst.e_order_verified == Some(true),
                "{}: constructed order is not a shelling",
                inst.pi
            );
        } else {
            ensure!(
                n > 5 || inst.brute_force.is_some(),
                "{}: brute-force search skipped at n = {n}",
                inst.pi
            );
            if let Some(found) = inst.brute_force {
                brute += 1;
                ensure!(!found, "{}: criterion fails but a shelling exists", inst.pi);
            }
        }
        ensure!(
            inst.reisner[0] == inst.c4,
            "{}: Reisner over GF(2) says {}",
            inst.pi,
            inst.reisner[0]
        );
        ensure!(
            inst.strongly_connected == inst.c4,
            "{}: strong connectivity says {}",
            inst.pi,
            inst.strongly_connected
        );
    }
    Ok(format!(
        "873 posets, {cm} Cohen-Macaulay, {} not; {brute} exhaustive shelling searches came up empty",
        873 - cm
    ))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let (mut strongly, mut disconnected) = (0, 0);
    for k in 0..500 {
        let n = 1 + k % 8;
        let p = random_pure_poset(&mut rng, n);
        ensure!(
            p.height_profile().pure,
            "generator produced a non-pure poset {p:?}"
        );
        let c4 = condition4(&p).holds;
        disconnected += usize::from(!c4);
        if is_strongly_connected(&order_complex(&p)) {
            strongly += 1;
            ensure!(c4, "strongly connected but layers disconnected: {p:?}");
        }
    }
    ensure!(
        strongly > 0 && disconnected > 0,
        "degenerate sample: {strongly} strongly connected, {disconnected} layer-disconnected"
    );
    Ok(format!(
        "500 pure posets, {strongly} strongly connected (all layer-connected), {disconnected} layer-disconnected"
    ))
}

fn criterion_5(instances: &[Instance]) -> Outcome {
    for inst in instances {
        ensure!(inst.euler_ok, "{}: Euler identity fails", inst.pi);
        ensure!(
            inst.boundary_ok,
            "{}: boundary of boundary is non-zero",
            inst.pi
        );
        let shellable = inst.e_order_verified == Some(true) || inst.brute_force == Some(true);
        ensure!(
            !shellable || inst.reisner.iter().all(|&r| r),
            "{}: shellable but not CM",
            inst.pi
        );
    }
    let hollow = SimplicialComplex::from_faces([vec![1, 2], vec![1, 3], vec![2, 3]]);
    let simplex = SimplicialComplex::from_faces([vec![1, 2, 3, 4]]);
    for field in FIELDS {
        let h = reduced_betti(&hollow, field).map_err(|e| e.to_string())?;
        ensure!(
            (h.betti(0), h.betti(1)) == (0, 1),
            "hollow triangle over {field}: {:?}",
            h.reduced_betti
        );
        ensure!(h.euler_identity_holds(), "hollow triangle Euler identity");
        let h = reduced_betti(&simplex, field).map_err(|e| e.to_string())?;
        ensure!(
            h.reduced_betti.iter().all(|&b| b == 0),
            "simplex over {field}: {:?}",
            h.reduced_betti
        );
        ensure!(h.euler_identity_holds(), "simplex Euler identity");
    }
    Ok("Euler identity, boundary squares to zero, reference complexes, shellable => CM".into())
}

fn criterion_6(instances: &[Instance]) -> Outcome {
    for inst in instances {
        ensure!(
            inst.reisner.iter().all(|&r| r == inst.reisner[0]),
            "{}: verdicts {:?} over GF(2), GF(3), Q",
            inst.pi,
            inst.reisner
        );
    }
    Ok(format!(
        "{} posets, identical verdicts over GF(2), GF(3), Q",
        instances.len()
    ))
}

fn run_cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_cmposet"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run binary: {e}"))?;
    let stdout = String::from_utf8_lossy(&out.stdout).into_owned();
    ensure!(
        out.status.code() == Some(0),
        "{args:?} exited with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    Ok(stdout)
}

fn json_report(args: &[&str]) -> Result<Value, String> {
    let text = run_cli(args)?;
    serde_json::from_str(&text).map_err(|e| format!("{args:?}: bad JSON ({e})"))
}

fn criterion_7() -> Outcome {
    let fig2 = fixture("fig2.perms");
    let fig2 = fig2.to_str().expect("utf-8 path");
    let r = json_report(&["analyze", fig2, "--json", "--oracle"])?;
    let expect = [
        ("dimension_class", json!("dim=2")),
        ("cm", json!(true)),
        ("condition4", json!(true)),
        ("shelling_verified", json!(true)),
        ("realizer", json!([[2, 3, 1, 4, 5], [3, 2, 1, 5, 4]])),
        (
            "normal_form",
            json!({"pi": [2, 1, 3, 5, 4], "iso": [2, 3, 1, 4, 5], "iso_verified": true}),
        ),
        ("reisner_cm", json!(true)),
        ("oracle_agrees", json!(true)),
    ];
    for (key, want) in &expect {
        ensure!(&r[key] == want, "fig2 {key}: {} != {want}", r[key]);
    }

    let fig3 = fixture("fig3.covers");
    let fig3 = fig3.to_str().expect("utf-8 path");
    let fig3_lines = fixture("fig3.perms");
    let fig3_lines = fig3_lines.to_str().expect("utf-8 path");
    for field in ["gf2", "gf3", "rat"] {
        let r = json_report(&["analyze", fig3, "--json", "--oracle", "--field", field])?;
        let expect = [
            ("n", json!(8)),
            ("dimension_class", json!("dim>=3")),
            ("condition4", json!(true)),
            ("strongly_connected", json!(true)),
            ("realizer", Value::Null),
            ("reisner_cm", json!(false)),
            ("reisner_witness", json!([2])),
        ];
        for (key, want) in &expect {
            ensure!(
                &r[key] == want,
                "fig3 over {field}, {key}: {} != {want}",
                r[key]
            );
        }
        let from_lines = json_report(&[
            "analyze", fig3_lines, "--json", "--oracle", "--field", field,
        ])?;
        ensure!(
            from_lines == r,
            "fig3 reports from covers and from lines differ over {field}"
        );
    }
    let lk = run_cli(&["homology", fig3, "--link", "2"])?;
    ensure!(lk.contains("facets: [[4, 7], [5, 8]]"), "link output: {lk}");
    ensure!(lk.contains("reduced betti 0: 1"), "link output: {lk}");

    let ideal = run_cli(&["export-ideal", fig2, "--format", "macaulay2"])?;
    ensure!(
        ideal == "R = QQ[x_1..x_5]; I = ideal(x_2*x_3, x_4*x_5);\n",
        "fig2 ideal: {ideal:?}"
    );
    let normalized = fixture("fig2-normalized.perms");
    let ideal = run_cli(&[
        "export-ideal",
        normalized.to_str().expect("utf-8 path"),
        "--format",
        "macaulay2",
    ])?;
    ensure!(
        ideal == "R = QQ[x_1..x_5]; I = ideal(x_1*x_2, x_4*x_5);\n",
        "normalized fig2 ideal: {ideal:?}"
    );
    Ok("fig2/fig3 reports match field-for-field, Macaulay2 output bit-exact".into())
}

fn run(id: usize, title: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("[PASS] {id}. {title} ({secs:.2}s): {detail}");
            true
        }
        Err(detail) => {
            println!("[FAIL] {id}. {title} ({secs:.2}s): {detail}");
            false
        }
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let instances = sweep_instances();
    println!("swept S_1..S_6 in {:.2}s", start.elapsed().as_secs_f64());
    let distinct: BTreeSet<&[usize]> = instances.iter().map(|i| i.pi.word()).collect();
    assert_eq!(distinct.len(), instances.len());

    let results = [
        run(1, "two-line realizer normalization", criterion_1),
        run(2, "three-layer dimension-three example", criterion_2),
        run(3, "equivalence sweep over S_1..S_6", || {
            criterion_3(&instances)
        }),
        run(4, "strongly connected implies layer-connected", criterion_4),
        run(5, "homology engine properties", || criterion_5(&instances)),
        run(6, "field independence", || criterion_6(&instances)),
        run(7, "command-line contract", criterion_7),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
