//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.

use std::path::{Path, PathBuf};
use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::Value;
use toroidal::cli::{cmd_run, cmd_verify, run_scenario, ExitStatus, Format};
use toroidal::invariants::{big_omega, small_omega};
use toroidal::oracle::{exhaustive_search, oracle_principal, oracle_rank, FreeVars, SearchBound};
use toroidal::principalize::{run, Phase};
use toroidal::scenario_file::ScenarioFile;
use toroidal::{
    blowup, enumerate_centers, is_principal, ExponentRow, LocalForm, MonomialPresentation, Scenario, ToroidalTemplate,
    Trace,
};

type Check = Result<String, String>;

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn valid_fixtures() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(fixtures_dir())
        .expect("fixtures")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json") && !p.ends_with("malformed.json"))
        .collect();
    v.sort();
    v
}

fn single(form: LocalForm, n: usize) -> Option<Scenario> {
    let p = MonomialPresentation::in_chart(form, n, 1).ok()?;
    let q = p.context().q_in_e;
    Scenario::new(n, vec![q], vec![p]).ok()
}

fn criterion_1() -> Check {
    let mut cases = 0;
    for a in 1..=8u64 {
        for b in 1..a {
            let s = single(LocalForm::f1(&[a], &[b]), 2).ok_or("scenario")?;
            let (_, trace) = run(&s, 1000).map_err(|e| e.to_string())?;
            if trace.steps.len() as u64 != a - b {
                return Err(format!("u=({a}) v=({b}): {} steps, expected {}", trace.steps.len(), a - b));
            }
            for (k, step) in trace.steps.iter().enumerate() {
                let omega = BigUint::from(a - b - k as u64);
                if step.phase != Phase::BigOmega || step.value != omega {
                    return Err(format!("u=({a}) v=({b}) step {k}: Ω = {}, expected {omega}", step.value));
                }
                for d in step.descendants.iter().filter(|d| !d.principal) {
                    let after = big_omega(&d.presentation).map_err(|e| e.to_string())?;
                    if after + 1u32 != omega {
                        return Err(format!("u=({a}) v=({b}) step {k}: Ω did not drop by exactly 1"));
                    }
                }
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} one-point scenarios, Ω drops by exactly 1 per step"))
}

fn criterion_2() -> Check {
    let mut cases = 0;
    let mut steps = 0;
    for a in 0..=5u64 {
        for b in 0..=5u64 {
            for c in 0..=5u64 {
                for d in 0..=5u64 {
                    let Some(s) = single(LocalForm::f5(&[a, b], &[c, d]), 2) else { continue };
                    if s.active().next().is_none() {
                        continue;
                    }
                    let tag = format!("u=({a},{b}) v=({c},{d})");
                    let (end, trace) = run(&s, 10_000).map_err(|e| format!("{tag}: {e}"))?;
                    if end.active().next().is_some() {
                        return Err(format!("{tag}: locus not empty"));
                    }
                    for step in &trace.steps {
                        for desc in step.descendants.iter().filter(|x| !x.principal) {
                            let w = small_omega(&desc.presentation).map_err(|e| format!("{tag}: {e}"))?;
                            if w >= step.value {
                                return Err(format!("{tag} step {}: ω {w} >= {}", step.index, step.value));
                            }
                        }
                    }
                    let r = exhaustive_search(&s, &SearchBound::new(5, 2, 1000).unwrap()).map_err(|e| format!("{tag}: {e}"))?;
                    let n = trace.steps.len() as u64;
                    if !r.all_terminate || n < r.min_depth || n > r.max_depth {
                        return Err(format!("{tag}: {n} steps outside oracle range [{}, {}]", r.min_depth, r.max_depth));
                    }
                    cases += 1;
                    steps += n;
                }
            }
        }
    }
    Ok(format!("{cases} two-point scenarios, {steps} steps, ω strictly decreasing, depths within oracle range"))
}

/// Every pair of rows of length `k` with entries in `0..=max`.
fn grid(k: usize, max: u64) -> impl ParallelIterator<Item = (Vec<u64>, Vec<u64>)> {
    let base = max + 1;
    let total = base.pow(2 * k as u32);
    (0..total).into_par_iter().map(move |mut idx| {
        let mut digits = Vec::with_capacity(2 * k);
        for _ in 0..2 * k {
            digits.push(idx % base);
            idx /= base;
        }
        let v = digits.split_off(k);
        (digits, v)
    })
}

fn criterion_3() -> Check {
    let mut cases = 0usize;
    for k in 1..=4 {
        let (n, bad) = grid(k, 6)
            .map(|(u, v)| {
                let (ur, vr) = (ExponentRow::from_u64s(&u), ExponentRow::from_u64s(&v));
                let mut n = 0usize;
                let mut bad = 0usize;
                let forms = [
                    (LocalForm::f1(&u, &v), FreeVars { u: false, v: true }),
                    (LocalForm::f3(&u, &v), FreeVars::default()),
                    (LocalForm::f5(&u, &v), FreeVars::default()),
                    (LocalForm::f2(&u, &v), FreeVars::default()),
                ];
                for (form, free) in forms {
                    if let Ok(p) = MonomialPresentation::in_chart(form, k + 1, 1) {
                        n += 1;
                        if is_principal(&p) != oracle_principal(&ur, &vr, free) {
                            bad += 1;
                        }
                    }
                }
                (n, bad)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        if bad > 0 {
            return Err(format!("{bad} disagreements at k = {k}"));
        }
        cases += n;
    }
    if cases < 100_000 {
        return Err(format!("only {cases} cases"));
    }
    Ok(format!("{cases} presentations, 0 disagreements"))
}

fn criterion_4() -> Check {
    let mut blown = 0usize;
    for k in 1..=4 {
        let (n, bad) = grid(k, 6)
            .map(|(u, v)| {
                let mut n = 0usize;
                let mut bad = None;
                for form in [LocalForm::f1(&u, &v), LocalForm::f5(&u, &v)] {
                    let Ok(p) = MonomialPresentation::in_chart(form, k + 1, 1) else { continue };
                    for c in enumerate_centers(&p) {
                        let Ok(set) = blowup(&p, &c) else {
                            bad = Some(format!("{p} {c}: blowup failed"));
                            continue;
                        };
                        n += 1;
                        for d in set.iter().filter(|d| !is_principal(&d.presentation)) {
                            if d.presentation.tag() != p.tag() {
                                bad = Some(format!("{p} {c}: {:?} gives {}", d.label, d.presentation));
                            }
                        }
                    }
                }
                (n, bad)
            })
            .reduce(|| (0, None), |a, b| (a.0 + b.0, a.1.or(b.1)));
        if let Some(b) = bad {
            return Err(b);
        }
        blown += n;
    }
    Ok(format!("{blown} blowups, every non-principal descendant keeps its form"))
}

fn check_template(t: &ToroidalTemplate) -> Result<(), String> {
    match t {
        ToroidalTemplate::T1 { row } => {
            if row.iter().any(|x| x == &BigUint::from(0u32)) {
                return Err(format!("{t}: zero entry"));
            }
        }
        ToroidalTemplate::T2 { g, m, t: tt } => {
            let one = BigUint::from(1u32);
            let gcd = g.iter().fold(BigUint::from(0u32), |a, b| num_integer::Integer::gcd(&a, b));
            if gcd != one || m == &BigUint::from(0u32) || tt == &BigUint::from(0u32) {
                return Err(format!("{t}: not primitive or zero power"));
            }
        }
        ToroidalTemplate::T3 { u, v } => {
            if oracle_rank(u, v) != 2 {
                return Err(format!("{t}: rank below 2"));
            }
        }
    }
    t.check()
}

fn run_fixture(path: &Path, out: &Path) -> Result<ExitStatus, String> {
    let (mut o, mut e) = (Vec::new(), Vec::new());
    Ok(cmd_run(path, Some(out), None, Format::Json, &mut o, &mut e))
}

fn criterion_5(dir: &Path) -> Check {
    let fixtures = valid_fixtures();
    let mut leaves = 0;
    let mut has = (false, false, false);
    for f in &fixtures {
        let out = dir.join("c5.json");
        let code = run_fixture(f, &out)?;
        if code != ExitStatus::Ok {
            return Err(format!("{}: exit {}", f.display(), code.code()));
        }
        let file = ScenarioFile::load(f).map_err(|e| e.to_string())?;
        has.0 |= file.presentations.iter().any(|p| p.form.k() >= 3 && matches!(p.form, LocalForm::F5 { .. }));
        has.1 |= file.q_in_e.iter().any(|&q| q) && file.q_in_e.iter().any(|&q| !q);
        has.2 |= file.presentations.iter().any(|p| matches!(p.form, LocalForm::F4 { .. }));
        let doc = run_scenario(&file, None);
        for leaf in doc.canonical.rounds.iter().flat_map(|r| &r.leaves) {
            check_template(&leaf.template).map_err(|e| format!("{}: {e}", f.display()))?;
            leaves += 1;
        }
    }
    if fixtures.len() < 20 || !(has.0 && has.1 && has.2) {
        return Err(format!("fixture suite incomplete ({} files, coverage {has:?})", fixtures.len()));
    }
    let mut o = Vec::new();
    let code = cmd_run(&fixtures_dir().join("malformed.json"), None, None, Format::Json, &mut o, &mut Vec::new());
    if code != ExitStatus::Schema {
        return Err(format!("malformed.json: exit {}", code.code()));
    }
    Ok(format!("{} fixtures exit 0, {leaves} leaves in T1/T2/T3 with rank and positivity checked", fixtures.len()))
}

fn persistence(trace: &Trace) -> Result<(), String> {
    let mut principal: Vec<bool> = trace.initial.iter().map(|i| i.principal).collect();
    for step in &trace.steps {
        if principal.get(step.parent.0).copied().unwrap_or(true) {
            return Err(format!("step {}: {} was principal", step.index, step.parent));
        }
        for d in &step.descendants {
            principal.push(d.principal);
        }
    }
    Ok(())
}

fn criterion_6() -> Check {
    let mut traces = 0;
    for f in valid_fixtures() {
        let file = ScenarioFile::load(&f).map_err(|e| e.to_string())?;
        for r in &run_scenario(&file, None).canonical.rounds {
            persistence(&r.trace).map_err(|e| format!("{}: {e}", f.display()))?;
            traces += 1;
        }
    }
    for a in 0..=4u64 {
        for b in 0..=4u64 {
            for c in 0..=4u64 {
                let Some(s) = single(LocalForm::f5(&[a, b, c], &[c, a, b]), 3) else { continue };
                let (_, t) = run(&s, 10_000).map_err(|e| e.to_string())?;
                persistence(&t)?;
                traces += 1;
            }
        }
    }
    Ok(format!("{traces} traces, no principal presentation is blown up later"))
}

fn canonical(path: &Path) -> Result<Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let v: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    Ok(v["canonical"].clone())
}

fn verify(path: &Path) -> ExitStatus {
    cmd_verify(path, Format::Json, &mut Vec::new(), &mut Vec::new())
}

fn criterion_7(dir: &Path) -> Check {
    let fixtures = valid_fixtures();
    for f in &fixtures {
        let (a, b) = (dir.join("a.json"), dir.join("b.json"));
        run_fixture(f, &a)?;
        run_fixture(f, &b)?;
        if canonical(&a)? != canonical(&b)? {
            return Err(format!("{}: canonical traces differ", f.display()));
        }
        if verify(&a) != ExitStatus::Ok {
            return Err(format!("{}: verify failed", f.display()));
        }
    }

    let good = dir.join("euclid.json");
    run_fixture(&fixtures_dir().join("euclid.json"), &good)?;
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    let mut corrupted = Vec::new();

    // ω raised on a recorded descendant
    let mut d = doc.clone();
    d["canonical"]["rounds"][0]["trace"]["steps"][0]["descendants"][0]["presentation"]["u"][0] = Value::from(5);
    corrupted.push(("ω increase", d));
    // last step dropped
    let mut d = doc.clone();
    d["canonical"]["rounds"][0]["trace"]["steps"].as_array_mut().unwrap().pop();
    corrupted.push(("truncated", d));
    // a leaf marked non-principal
    let mut d = doc.clone();
    d["canonical"]["rounds"][0]["trace"]["steps"][0]["descendants"][1]["principal"] = Value::from(false);
    corrupted.push(("principal flag", d));

    for (name, d) in corrupted {
        let p = dir.join("bad.json");
        std::fs::write(&p, serde_json::to_string(&d).unwrap()).unwrap();
        if verify(&p) != ExitStatus::Verify {
            return Err(format!("corrupted trace ({name}) not rejected with exit 5"));
        }
    }
    Ok(format!("{} fixtures deterministic and verified, 3 corrupted traces rejected", fixtures.len()))
}

type Criterion<'a> = Box<dyn Fn() -> Check + 'a>;

fn main() {
    let dir = tempfile::tempdir().expect("tempdir");
    let criteria: Vec<(&str, Criterion)> = vec![
        ("1 Ω exact drop", Box::new(criterion_1)),
        ("2 ω strict descent", Box::new(criterion_2)),
        ("3 oracle equivalence", Box::new(criterion_3)),
        ("4 closure", Box::new(criterion_4)),
        ("5 end-to-end toroidality", Box::new(|| criterion_5(dir.path()))),
        ("6 principality persistence", Box::new(criterion_6)),
        ("7 determinism and round trip", Box::new(|| criterion_7(dir.path()))),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let t = Instant::now();
        let r = check();
        let ms = t.elapsed().as_millis();
        match r {
            Ok(msg) => println!("criterion {name}: PASS ({msg}; {ms} ms)"),
            Err(msg) => {
                failed += 1;
                println!("criterion {name}: FAIL ({msg}; {ms} ms)");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
