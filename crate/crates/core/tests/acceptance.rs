//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when
//! any criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use aluthge::harness::{self, ExperimentConfig, Record, Report, Status};
use serde_json::Value;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn recs<'a>(r: &'a Report, claim: &str) -> Vec<&'a Record> {
    r.records().filter(|x| x.claim == claim).collect()
}

fn all_pass(r: &Report, claims: &[&str]) -> (bool, usize) {
    let mut n = 0;
    let mut ok = true;
    for c in claims {
        let v = recs(r, c);
        ok &= !v.is_empty() && v.iter().all(|x| x.status == Status::Pass);
        n += v.len();
    }
    (ok, n)
}

fn at(rec: &Record, a: f64, alpha: f64) -> bool {
    rec.input_f64("a") == Some(a) && rec.input_f64("alpha") == Some(alpha)
}

fn worst(rs: &[&Record], key: &str) -> f64 {
    rs.iter()
        .filter_map(|r| r.computed_f64(key))
        .fold(0.0, f64::max)
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_aluthge")
}

fn closed_form_fidelity(r: &Report) -> Outcome {
    let cfg = ExperimentConfig::default();
    let start = Instant::now();
    let rerun =
        harness::run_experiment("exp_closed_form_iteration", &cfg).expect("experiment exists");
    let secs = start.elapsed().as_secs_f64();
    let grid_ok =
        cfg.n_max_symbolic >= 12 && cfg.a == [0.25, 0.5, 0.75] && cfg.alpha == [-0.5, 0.0, 1.0];
    let (ok, n) = all_pass(r, &["iterate-closed-form", "adjoint-iterate-closed-form"]);
    let fresh_ok = rerun.records.iter().all(|x| x.status == Status::Pass);
    outcome(
        ok && fresh_ok && grid_ok && secs < 1.0,
        format!(
            "{n} records, n <= {}, runtime {secs:.4} s",
            cfg.n_max_symbolic
        ),
    )
}

fn worked_example() -> Outcome {
    let out = Command::new(bin())
        .args(["symbols", "--a", "0.5", "--alpha", "0", "--n", "1"])
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout);
    let lines_ok = out.status.success()
        && text.contains("f(z) = (8/(9 - z))^2")
        && text.contains("ψ(z) = (3z + 5)/(9 - z)");
    let js = Command::new(bin())
        .args([
            "symbols", "--a", "0.5", "--alpha", "0", "--n", "1", "--json",
        ])
        .output()
        .expect("binary runs");
    let v: Value = serde_json::from_slice(&js.stdout).unwrap_or(Value::Null);
    let lam = v["lambda"].as_f64().unwrap_or(f64::NAN);
    let m: Vec<f64> = v["matrix"]
        .as_array()
        .into_iter()
        .flatten()
        .flat_map(|row| row.as_array().cloned().unwrap_or_default())
        .filter_map(|x| x.as_f64())
        .collect();
    let want = [3.0 / 9.0, 5.0 / 9.0, -1.0 / 9.0, 1.0];
    let mut err = (lam - 64.0 / 81.0).abs();
    for (x, w) in m.iter().zip(want) {
        err = err.max((x - w).abs());
    }
    let ok = lines_ok && m.len() == 4 && err <= 1e-14;
    outcome(
        ok,
        format!("printed forms match: {lines_ok}, max coefficient error {err:.3e}"),
    )
}

fn polar_identities(r: &Report) -> Outcome {
    let claims = [
        "polar-reconstruction",
        "unitary-forms-agree",
        "unitary-is-unitary",
        "dual-unitary-is-unitary",
    ];
    let (ok, n) = all_pass(r, &claims);
    let rs: Vec<&Record> = claims.iter().flat_map(|c| recs(r, c)).collect();
    let e = [
        "reconstruction_distance",
        "composition_first_distance",
        "defect",
        "parameter_form_distance",
    ]
    .iter()
    .map(|k| worst(&rs, k))
    .fold(0.0, f64::max);
    outcome(ok, format!("{n} records, worst defect {e:.3e}"))
}

fn semigroup_laws(r: &Report) -> Outcome {
    let (ok, n) = all_pass(r, &["semigroup-law", "gram-power-law"]);
    outcome(ok, format!("{n} records"))
}

fn norm_claim(r: &Report) -> Outcome {
    let (ok, n) = all_pass(r, &["iterate-norm-bound", "iterate-norm-monotone"]);
    let cal = recs(r, "iterate-norm-calibration");
    let ratio = cal
        .iter()
        .filter(|x| at(x, 0.5, 0.0) && x.input_f64("N") == Some(256.0))
        .filter_map(|x| x.computed_f64("norm_ratio"))
        .fold(0.0, f64::max);
    outcome(
        ok,
        format!("{n} records, best norm/bound at a=0.5, alpha=0, N=256: {ratio:.4} (calibration)"),
    )
}

fn sot_convergence(r: &Report) -> Outcome {
    let labels = ["0", "0.3", "0.5i"];
    let pick = |claim: &str| -> Vec<&Record> {
        recs(r, claim)
            .into_iter()
            .filter(|x| {
                at(x, 0.5, 0.0)
                    && x.inputs
                        .get("omega")
                        .and_then(Value::as_str)
                        .is_some_and(|o| labels.contains(&o))
            })
            .collect()
    };
    let kernel = pick("sot-kernel-identity");
    let bound = pick("sot-proof-bound");
    let thr = pick("sot-threshold");
    let kernel_err = worst(&kernel, "max_abs_error");
    let kernel_ok = kernel.len() == 3 && kernel_err <= 1e-12;
    let bound_ok = bound.len() == 3 && bound.iter().all(|x| x.status == Status::Pass);
    let final_norm = worst(&thr, "final_norm");
    let final_sq = worst(&thr, "final_norm_sq");
    let thr_ok = thr.len() == 3 && final_norm < 1e-6;
    let nc: Vec<&Record> = recs(r, "norm-non-convergence")
        .into_iter()
        .filter(|x| at(x, 0.5, 0.0))
        .collect();
    let nc_ok = !nc.is_empty() && nc.iter().all(|x| x.status == Status::Pass);
    outcome(
        kernel_ok && bound_ok && thr_ok && nc_ok,
        format!(
            "kernel identity {kernel_err:.3e} ({kernel_ok}), bound ({bound_ok}), largest norm at n=30 {final_norm:.3e} vs 1e-6 ({thr_ok}; squared {final_sq:.3e}), distinct iterates with constant norm ({nc_ok})"
        ),
    )
}

fn numeric_cross_check(r: &Report) -> Outcome {
    let conv: Vec<&Record> = recs(r, "numeric-corner-convergence")
        .into_iter()
        .filter(|x| x.input_f64("n").is_some_and(|n| n <= 3.0))
        .collect();
    let n = conv.len();
    let conv_ok = n > 0 && conv.iter().all(|x| x.status == Status::Pass);
    let tol: Vec<&Record> = recs(r, "numeric-corner-tolerance")
        .into_iter()
        .filter(|x| x.input_f64("n") == Some(1.0))
        .collect();
    let tol_ok = !tol.is_empty()
        && tol
            .iter()
            .all(|x| x.status == Status::Pass && x.input_f64("N") == Some(256.0));
    let e1 = tol
        .iter()
        .filter(|x| at(x, 0.5, 0.0))
        .filter_map(|x| x.computed_f64("error"))
        .fold(0.0, f64::max);
    let e1_all = worst(&tol, "error");
    outcome(conv_ok && tol_ok, format!("{n} convergence records, n=1 error at N=256: {e1:.3e} (a=0.5, alpha=0), {e1_all:.3e} (grid worst)"))
}

fn hardy_structure(r: &Report) -> Outcome {
    let (block_ok, _) = all_pass(r, &["block-equals-c-sigma", "sigma-limit-normal"]);
    let block_n = recs(r, "block-equals-c-sigma")
        .iter()
        .all(|x| x.input_f64("N") == Some(256.0));
    let sup: Vec<&Record> = recs(r, "sigma-norm-sup-law")
        .into_iter()
        .filter(|x| matches!(x.input_f64("alpha"), Some(a) if a == 0.0 || a == 1.0))
        .collect();
    let sup_ok = !sup.is_empty() && sup.iter().all(|x| x.status == Status::Pass);
    let resid = |claim: &str| {
        recs(r, claim)
            .into_iter()
            .filter(|x| at(x, 0.5, 0.0))
            .filter_map(|x| x.computed_f64("final_residual"))
            .fold(f64::NAN, f64::max)
    };
    let (w, wa) = (resid("sigma-sot-limit"), resid("sigma-adjoint-sot-limit"));
    let lim_ok = w < 1e-3 && wa < 1e-3;
    let comm = worst(&recs(r, "sigma-limit-normal"), "commutator_corner");
    outcome(
        block_ok && block_n && sup_ok && lim_ok,
        format!("block at N=256 ({}), sup law ({sup_ok}), residuals at n=30: {w:.3e} / {wa:.3e}, limit commutator {comm:.3e}", block_ok && block_n),
    )
}

fn structure_probes(r: &Report) -> Outcome {
    let (ok, n) = all_pass(
        r,
        &[
            "iterate-binormal",
            "sigma-binormal",
            "iterate-not-quasinormal",
            "sigma-not-quasinormal",
        ],
    );
    let interior = recs(r, "zero-in-numerical-range-interior");
    let inside = !interior.is_empty()
        && interior.iter().all(|x| {
            x.computed.get("zero_in_interior") == Some(&Value::Bool(true))
                && x.input_f64("N") == Some(256.0)
                && x.input_f64("angles") == Some(256.0)
        });
    let margin = interior
        .iter()
        .filter_map(|x| x.computed_f64("margin"))
        .fold(f64::INFINITY, f64::min);
    outcome(ok && inside, format!("{n} structure records, zero interior at N=256, K=256 ({inside}, smallest margin {margin:.3e})"))
}

fn verify_body(cfg: &Path, dir: &Path) -> Option<(Value, Vec<(String, String)>)> {
    let st = Command::new(bin())
        .args(["verify", "--seed", "12345", "--config"])
        .arg(cfg)
        .arg("--out")
        .arg(dir)
        .output()
        .ok()?;
    if st.status.code()? > 1 {
        return None;
    }
    let mut v: Value = serde_json::from_str(
        &std::fs::read_to_string(dir.join(harness::report::REPORT_FILE)).ok()?,
    )
    .ok()?;
    v.get_mut("meta")?
        .as_object_mut()?
        .remove("wall_time_seconds");
    let mut csvs = Vec::new();
    for e in std::fs::read_dir(dir).ok()? {
        let p = e.ok()?.path();
        if p.extension().is_some_and(|x| x == "csv") {
            csvs.push((
                p.file_name()?.to_string_lossy().into_owned(),
                std::fs::read_to_string(&p).ok()?,
            ));
        }
    }
    csvs.sort();
    Some((v, csvs))
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().expect("tempdir");
    let cfg = tmp.path().join("small.toml");
    std::fs::write(
        &cfg,
        "a = [0.5]\nalpha = [0.0, 1.0]\nsections = [16, 32]\nn_max_symbolic = 4\nn_max_numeric = 2\nn_max_sot = 8\nrandom_samples = 8\nhyponormal_section = 16\n",
    )
    .expect("write config");
    let dir = tmp.path().join("out");
    let first = verify_body(&cfg, &dir);
    let second = verify_body(&cfg, &dir);
    let ok = first.is_some() && first == second;
    let n = first.as_ref().map_or(0, |(_, c)| c.len());
    outcome(
        ok,
        format!("report bodies and {n} CSV files identical across two runs"),
    )
}

fn main() {
    let start = Instant::now();
    let report = harness::run_all(&ExperimentConfig::default()).expect("default config runs");
    let run_secs = start.elapsed().as_secs_f64();
    let results = [
        ("closed-form fidelity", closed_form_fidelity(&report)),
        ("worked example", worked_example()),
        ("polar and unitary identities", polar_identities(&report)),
        ("semigroup laws", semigroup_laws(&report)),
        ("norm bound and monotonicity", norm_claim(&report)),
        (
            "kernel decay and norm non-convergence",
            sot_convergence(&report),
        ),
        ("numeric versus closed form", numeric_cross_check(&report)),
        ("weighted Hardy structure", hardy_structure(&report)),
        (
            "binormality, non-quasinormality, interior",
            structure_probes(&report),
        ),
        ("determinism", determinism()),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        failed += usize::from(!o.ok);
        println!(
            "criterion {:>2} {} {name}: {}",
            i + 1,
            if o.ok { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "default verify run: {run_secs:.1} s, summary {:?}",
        report.meta.summary
    );
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
