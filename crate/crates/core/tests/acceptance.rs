//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;
use serde_json::Value;

use tangles::clustering::{
    block_tangle_correspondence, dendogram_from_kappa, kappa_from_dendogram, minimax_ultrametric, psi, psi_inverse,
    remarks, separation_ultrametric, single_linkage, validate_dendogram,
};
use tangles::connectivity::{find_violation, MaxLinkage, Property, SetFunction};
use tangles::decomposition::{
    construct_decomposition_over, exactness_transform, validate_pre_decomposition, verify_duality, width,
    width_radius, DualityOutcome, SubsetFamily,
};
use tangles::fixtures;
use tangles::instances::{self, random_dendogram, random_integer_metric, random_metric, random_ultrametric};
use tangles::metric::{ultrametric_check, DistanceMatrix};
use tangles::tangle::{enumerate_tangles, tangle_number_radius, verify_tangle};
use tangles::Subset;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

/// Mix of continuous and integer-weighted metrics so that ties occur.
fn random_instance<R: Rng>(rng: &mut R, n: usize, i: usize) -> DistanceMatrix {
    if i % 3 == 2 {
        random_integer_metric(rng, n, 4)
    } else {
        random_metric(rng, n)
    }
}

fn write_temp(dir: &std::path::Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).expect("temp file");
    p
}

fn seven_points_csv() -> String {
    let cloud = fixtures::seven_point_cloud();
    let mut s = String::from("label,x,y\n");
    for (l, c) in cloud.labels().iter().zip(cloud.coords()) {
        s.push_str(&format!("{l},{},{}\n", c[0], c[1]));
    }
    s
}

fn tangles_bin(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_tangles")).args(args).output().expect("run binary");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_1() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let input = write_temp(dir.path(), "points.csv", &seven_points_csv());
    let start = Instant::now();
    let (code, stdout) = tangles_bin(&["cluster", "--input", input.to_str().unwrap(), "--format", "points"]);
    let elapsed = start.elapsed();
    ensure(code == 0, || format!("cluster exited with {code}"))?;
    let v: Value = serde_json::from_slice(&stdout).map_err(|e| e.to_string())?;
    let steps = v["steps"].as_array().ok_or("no steps")?;
    let radii: Vec<f64> = steps.iter().map(|s| s["r"].as_f64().unwrap()).collect();
    ensure(radii == [0.0, 1.0, 2.0, 3.0, 5.0], || format!("radii {radii:?}"))?;
    let blocks: Vec<Vec<String>> = steps
        .iter()
        .map(|s| {
            s["blocks"]
                .as_array()
                .unwrap()
                .iter()
                .map(|b| b.as_array().unwrap().iter().map(|l| l.as_str().unwrap()).collect::<String>())
                .collect()
        })
        .collect();
    let expected: Vec<Vec<&str>> = vec![
        vec!["a", "b", "c", "d", "e", "f", "g"],
        vec!["a", "b", "cd", "ef", "g"],
        vec!["ab", "cd", "efg"],
        vec!["ab", "cdefg"],
        vec!["abcdefg"],
    ];
    ensure(blocks == expected, || format!("partitions {blocks:?}"))?;
    within(elapsed, Duration::from_secs(1), "cluster")?;
    Ok(format!("radii 1,2,3,5 with the expected partitions in {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let l4 = fixtures::line4_matrix();
    let f = MaxLinkage::new(l4.clone());
    let (x, y) = find_violation(Property::Submodular, &f)
        .map_err(|e| e.to_string())?
        .ok_or("no submodular violation on the line")?;
    let ix = |l: &str| l4.index_of(l).unwrap();
    ensure(x == Subset::from_indices([ix("1"), ix("2")]), || format!("X = {x:?}"))?;
    ensure(y == Subset::from_indices([ix("1"), ix("-1")]), || format!("Y = {y:?}"))?;
    let e = std::f64::consts::E;
    let (fx, fy) = (f.eval(x), f.eval(y));
    let (fi, fu) = (f.eval(x.intersection(y)), f.eval(x.union(y)));
    ensure(fx == e.powi(-2) || (fx - e.powi(-2)).abs() < 1e-15, || format!("f(X) = {fx}"))?;
    ensure(fx + fy < fi + fu && (fi - 1.0 / e).abs() < 1e-15 && (fu - 1.0 / e).abs() < 1e-15, || {
        format!("values {fx} {fy} {fi} {fu}")
    })?;
    let mut instances = vec![l4];
    let mut rng = instances::rng(2);
    for i in 0..200 {
        let n = rng.gen_range(2..=8);
        instances.push(random_instance(&mut rng, n, i));
    }
    for (i, m) in instances.iter().enumerate() {
        let f = MaxLinkage::new(m.clone());
        if let Some(w) = find_violation(Property::MaxSubmodular, &f).map_err(|e| e.to_string())? {
            return Err(format!("max-submodular violation {w:?} on instance {i}"));
        }
        // Independent sweep on the distance axis: min(r(X), r(Y)) <= min(r(X∩Y), r(X∪Y)).
        let t = common::mind_table(m);
        let size = t.len();
        for a in 0..size {
            for b in 0..size {
                if t[a].min(t[b]) > t[a & b].min(t[a | b]) {
                    return Err(format!("oracle finds a violation on instance {i}"));
                }
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(60), "criterion 2")?;
    Ok(format!(
        "submodular violation X={{1,2}} Y={{1,-1}}; no max-submodular violation on {} metrics",
        instances.len()
    ))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = instances::rng(3);
    for i in 0..50 {
        let n = 4 + i % 4;
        let m = random_instance(&mut rng, n, i);
        let f = MaxLinkage::new(m.clone());
        let rep = verify_duality(&f).map_err(|e| e.to_string())?;
        let table = common::mind_table(&m);
        let tn = common::tangle_number(&table, n);
        let bw = common::branch_width(&table, n);
        ensure(rep.equal && rep.tangle_radius == rep.branch_width_radius, || {
            format!("instance {i}: tn {} bw {}", rep.tangle_radius, rep.branch_width_radius)
        })?;
        ensure(rep.tangle_radius == tn && rep.branch_width_radius == bw, || {
            format!("instance {i}: oracle tn {tn} bw {bw}, library {} {}", rep.tangle_radius, rep.branch_width_radius)
        })?;
        let v = validate_pre_decomposition(rep.decomposition.as_pre());
        ensure(v.is_branch_decomposition(), || format!("instance {i}: witness is not a branch decomposition"))?;
        ensure(width_radius(rep.decomposition.as_pre(), &f).unwrap() == bw, || {
            format!("instance {i}: witness width differs")
        })?;
        ensure(verify_tangle(&f, &rep.tangle).unwrap().passed(), || format!("instance {i}: tangle fails"))?;
        let fam = SubsetFamily::singletons(n);
        match construct_decomposition_over(&f, &fam, tn).map_err(|e| e.to_string())? {
            DualityOutcome::Tangle(t) => {
                let family: Vec<u64> = t.family(&f).unwrap().iter().map(|s| s.bits()).collect();
                ensure(common::is_tangle(&table, n, tn, &family), || format!("instance {i}: constructed tangle"))?;
            }
            DualityOutcome::Decomposition(_) => return Err(format!("instance {i}: decomposition at the tangle number")),
        }
        match construct_decomposition_over(&f, &fam, tn.next_down()).map_err(|e| e.to_string())? {
            DualityOutcome::Decomposition(d) => {
                let v = validate_pre_decomposition(d.as_pre());
                ensure(v.is_decomposition() && v.atoms.iter().all(|(_, a)| a.len() <= 1), || {
                    format!("instance {i}: constructed tree is not over singletons")
                })?;
                ensure(width_radius(d.as_pre(), &f).unwrap() == bw, || format!("instance {i}: constructed width"))?;
            }
            DualityOutcome::Tangle(_) => return Err(format!("instance {i}: tangle below the tangle number")),
        }
    }
    within(start.elapsed(), Duration::from_secs(300), "criterion 3")?;
    Ok(format!("tn = bw exactly on 50 metrics with n in 4..=7 ({:.2?})", start.elapsed()))
}

fn exactness_case(pd: &tangles::decomposition::PreDecomposition, f: &MaxLinkage) -> Result<(), String> {
    let out = exactness_transform(pd, f).map_err(|e| e.to_string())?;
    let tree = out.as_pre().tree();
    for s in tree.internal_nodes() {
        let sets: Vec<u64> = tree.neighbors(s).iter().map(|&u| out.as_pre().gamma(s, u).bits()).collect();
        ensure(sets[0] & sets[1] == 0 && sets[0] & sets[2] == 0 && sets[1] & sets[2] == 0, || {
            format!("not exact at node {s}")
        })?;
    }
    ensure(width(out.as_pre(), f).unwrap() <= width(pd, f).unwrap(), || "width increased".into())?;
    let before: BTreeMap<usize, Subset> = pd.atoms().into_iter().collect();
    for (leaf, atom) in out.as_pre().atoms() {
        ensure(atom.is_subset_of(before[&leaf]), || format!("atom at leaf {leaf} grew"))?;
    }
    let again = exactness_transform(out.as_pre(), f).map_err(|e| e.to_string())?;
    ensure(again == out, || "second application changed the decomposition".into())
}

fn criterion_4() -> Outcome {
    let (pd, _) = fixtures::seven_point_pre_decomposition();
    ensure(validate_pre_decomposition(&pd).inexact_nodes.len() == 3, || "fixture inexactness".into())?;
    exactness_case(&pd, &MaxLinkage::new(fixtures::seven_point_matrix())).map_err(|e| format!("fixture: {e}"))?;
    let mut rng = instances::rng(4);
    let mut inexact = 0;
    for i in 0..100 {
        let n = rng.gen_range(1..=10);
        let m = random_instance(&mut rng, n, i);
        let pd = instances::random_pre_decomposition(&mut rng, n);
        if !validate_pre_decomposition(&pd).inexact_nodes.is_empty() {
            inexact += 1;
        }
        exactness_case(&pd, &MaxLinkage::new(m)).map_err(|e| format!("instance {i}: {e}"))?;
    }
    Ok(format!("fixture and 100 random pre-decompositions ({inexact} inexact) made exact"))
}

fn criterion_5() -> Outcome {
    let mut all = vec![fixtures::seven_point_matrix(), fixtures::line4_matrix()];
    let mut rng = instances::rng(5);
    for i in 0..50 {
        let n = rng.gen_range(2..=8);
        all.push(random_instance(&mut rng, n, i));
    }
    for (i, m) in all.iter().enumerate() {
        let n = m.n();
        let rep = block_tangle_correspondence(m).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("instance {i}: {:?}", rep.failures))?;
        let table = common::mind_table(m);
        let oracle = common::catalog(&table, n);
        let got: Vec<(u64, f64, f64)> = rep.blocks.iter().map(|b| (b.block.bits(), b.r_lo, b.r_hi)).collect();
        ensure(got == oracle, || format!("instance {i}: blocks {got:?}, oracle {oracle:?}"))?;
        if n <= 6 {
            for &(core, lo, _) in &oracle {
                let family: Vec<u64> = (0..1u64 << n).filter(|&x| x & core == core && table[x as usize] > lo).collect();
                ensure(common::is_tangle(&table, n, lo, &family), || format!("instance {i}: core {core:b}"))?;
            }
        }
    }
    let seven = block_tangle_correspondence(&fixtures::seven_point_matrix()).unwrap();
    ensure(seven.blocks.len() == 6, || "seven points should have six cores".into())?;
    Ok(format!("blocks and tangles coincide on {} instances", all.len()))
}

fn criterion_6() -> Outcome {
    let mut rng = instances::rng(6);
    for i in 0..50 {
        let n = rng.gen_range(2..=8);
        let m = random_instance(&mut rng, n, i);
        let f = MaxLinkage::new(m.clone());
        let u = separation_ultrametric(&f, m.labels().to_vec()).map_err(|e| e.to_string())?;
        ensure(ultrametric_check(&u).is_none(), || format!("instance {i}: u_kappa is not ultrametric"))?;
        let back = MaxLinkage::new(u.clone());
        for x in Subset::all(n) {
            let (a, b) = (back.eval(x), f.eval(x));
            ensure((a - b).abs() <= 1e-12 * a.abs().max(b.abs()), || format!("instance {i}: differs at {x:?}"))?;
        }
        let paths = common::bottleneck_all_paths(&m);
        ensure(u.rows() == paths, || format!("instance {i}: u_kappa is not the bottleneck distance"))?;
        let d = dendogram_from_kappa(&f).map_err(|e| e.to_string())?;
        ensure(d == single_linkage(&m), || format!("instance {i}: dendogram differs from single linkage"))?;
    }
    for i in 0..50 {
        let n = rng.gen_range(1..=9);
        let d = random_dendogram(&mut rng, n);
        let k = kappa_from_dendogram(&d).map_err(|e| e.to_string())?;
        let back = dendogram_from_kappa(&k).map_err(|e| e.to_string())?;
        ensure(back == d, || format!("dendogram {i} not recovered"))?;
    }
    Ok("u_kappa claims on 50 metrics; 50 dendograms recovered exactly".into())
}

fn criterion_7() -> Outcome {
    let mut rng = instances::rng(7);
    for i in 0..50 {
        let n = rng.gen_range(1..=9);
        let d = random_dendogram(&mut rng, n);
        ensure(validate_dendogram(&d).passed(), || format!("dendogram {i} invalid"))?;
        let u = psi(&d).map_err(|e| e.to_string())?;
        ensure(psi_inverse(&u) == d, || format!("dendogram {i}: psi_inverse(psi(d)) != d"))?;
        ensure(psi(&psi_inverse(&u)).unwrap() == u, || format!("dendogram {i}: psi(psi_inverse(u)) != u"))?;
    }
    for i in 0..50 {
        let n = rng.gen_range(2..=7);
        let m = random_instance(&mut rng, n, i);
        let mm = minimax_ultrametric(&m);
        let sl = psi(&single_linkage(&m)).map_err(|e| e.to_string())?;
        ensure(mm.rows() == sl.rows(), || format!("metric {i}: minimax differs from psi(single_linkage)"))?;
        ensure(mm.rows() == common::bottleneck_all_paths(&m), || format!("metric {i}: path oracle differs"))?;
    }
    for i in 0..50 {
        let n = rng.gen_range(1..=10);
        let u = random_ultrametric(&mut rng, n);
        let fixed = psi(&single_linkage(&u)).map_err(|e| e.to_string())?;
        ensure(fixed == u, || format!("ultrametric {i} is not a fixed point"))?;
        ensure(minimax_ultrametric(&u) == u, || format!("ultrametric {i}: minimax moved it"))?;
    }
    let seven = fixtures::seven_point_matrix();
    ensure(psi_inverse(&minimax_ultrametric(&seven)) == single_linkage(&seven), || "seven points".into())?;
    Ok("psi bijection, minimax = psi(single linkage) = path oracle, 50 fixed points".into())
}

fn criterion_8() -> Outcome {
    let mut all = vec![fixtures::seven_point_matrix(), fixtures::line4_matrix()];
    let mut rng = instances::rng(8);
    for i in 0..12 {
        let n = rng.gen_range(2..=8);
        all.push(random_instance(&mut rng, n, i));
    }
    let mut partitions = 0usize;
    for (i, m) in all.iter().enumerate() {
        if let Some(fail) = remarks::sl_partition_identity(m).map_err(|e| e.to_string())? {
            return Err(format!("single-linkage identity fails on instance {i}: {fail:?}"));
        }
        if let Some(fail) = remarks::al_identity(m).map_err(|e| e.to_string())? {
            return Err(format!("average-linkage identity fails on instance {i}: {fail:?}"));
        }
        partitions += remarks::bell(m.n());
    }
    let (p, lhs, rhs) = all
        .iter()
        .find_map(|m| remarks::cl_mismatch(m).unwrap())
        .ok_or("no complete-linkage mismatch")?;
    ensure(lhs != rhs, || "mismatch is not a mismatch".into())?;
    let small: Vec<DistanceMatrix> = all.iter().filter(|m| m.n() <= 6).cloned().collect();
    let phi = remarks::phi_violation(Property::MaxSubmodular, &small)
        .map_err(|e| e.to_string())?
        .ok_or("no phi-dist max-submodular violation")?;
    remarks::phi_violation(Property::Submodular, &small)
        .map_err(|e| e.to_string())?
        .ok_or("no phi-dist submodular violation")?;
    let nu = remarks::nu_report(6).map_err(|e| e.to_string())?;
    ensure(nu.submodular_failure.is_none(), || format!("nu not submodular: {:?}", nu.submodular_failure))?;
    let (edges, x, y) = nu.max_submodular_violation.clone().ok_or("no nu max-submodular violation")?;
    Ok(format!(
        "identities on {partitions} partitions; CL mismatch at {p:?}; phi violation {:?}; nu submodular on {} graphs, max-violation on {edges:?} at {x:?},{y:?}",
        (phi.1, phi.2),
        nu.graphs_checked
    ))
}

fn check_dendogram_json(v: &Value) -> Result<(), String> {
    let labels = v["labels"].as_array().ok_or("labels")?;
    let steps = v["steps"].as_array().ok_or("steps")?;
    let mut last = -1.0;
    for s in steps {
        let r = s["r"].as_f64().ok_or("r")?;
        ensure(r > last, || "radii not increasing".into())?;
        last = r;
        let count: usize = s["blocks"].as_array().ok_or("blocks")?.iter().map(|b| b.as_array().unwrap().len()).sum();
        ensure(count == labels.len(), || "blocks do not cover the labels".into())?;
    }
    Ok(())
}

fn check_catalog_json(v: &Value) -> Result<(), String> {
    for e in v["entries"].as_array().ok_or("entries")? {
        e["core"].as_array().ok_or("core")?;
        e["r_lo"].as_f64().ok_or("r_lo")?;
        ensure(e["r_hi"].as_f64().is_some() || e["r_hi"] == "inf", || "r_hi".into())?;
        e["k_lo"].as_f64().ok_or("k_lo")?;
        e["k_hi"].as_f64().ok_or("k_hi")?;
    }
    Ok(())
}

fn pipeline(dir: &std::path::Path) -> Result<Vec<Vec<u8>>, String> {
    let points = write_temp(dir, "points.csv", &seven_points_csv());
    let p = |name: &str| dir.join(name).to_str().unwrap().to_string();
    let steps: Vec<Vec<String>> = vec![
        vec!["cluster".into(), "--input".into(), p("points.csv"), "--output".into(), p("dendogram.json")],
        vec!["convert".into(), "--input".into(), p("dendogram.json"), "--output".into(), p("ultrametric.csv")],
        vec!["tangles".into(), "--input".into(), p("ultrametric.csv"), "--output".into(), p("catalog.json")],
        vec!["branch-width".into(), "--input".into(), p("points.csv"), "--output".into(), p("witness.dot")],
    ];
    let _ = points;
    for args in &steps {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, _) = tangles_bin(&refs);
        ensure(code == 0, || format!("{} exited with {code}", args[0]))?;
    }
    let files = ["dendogram.json", "ultrametric.csv", "catalog.json", "witness.dot"];
    files
        .iter()
        .map(|f| std::fs::read(dir.join(f)).map_err(|e| e.to_string()))
        .collect()
}

fn criterion_9() -> Outcome {
    let first = tempfile::tempdir().map_err(|e| e.to_string())?;
    let second = tempfile::tempdir().map_err(|e| e.to_string())?;
    let a = pipeline(first.path())?;
    let b = pipeline(second.path())?;
    ensure(a == b, || "outputs differ between runs".into())?;
    let dendogram: Value = serde_json::from_slice(&a[0]).map_err(|e| e.to_string())?;
    check_dendogram_json(&dendogram)?;
    let ultra = tangles::io::read_matrix_csv(std::str::from_utf8(&a[1]).unwrap()).map_err(|e| e.to_string())?;
    ensure(ultrametric_check(&ultra).is_none(), || "ultrametric CSV is not an ultrametric".into())?;
    let catalog: Value = serde_json::from_slice(&a[2]).map_err(|e| e.to_string())?;
    check_catalog_json(&catalog)?;
    ensure(catalog["entries"].as_array().unwrap().len() == 6, || "catalog should list six tangles".into())?;
    let dot = std::str::from_utf8(&a[3]).unwrap();
    ensure(
        dot.starts_with("graph decomposition {") && dot.trim_end().ends_with('}') && dot.matches(" -- ").count() == 11,
        || "witness DOT malformed".into(),
    )?;
    let f = MaxLinkage::new(fixtures::seven_point_matrix());
    ensure(
        enumerate_tangles(&f).unwrap().entries.len() == 6 && tangle_number_radius(&f).unwrap() == 1.0,
        || "library disagrees with pipeline".into(),
    )?;
    Ok("points -> dendogram -> ultrametric -> catalog -> DOT, byte-identical on rerun".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 seven-point clustering", criterion_1),
        ("2 line counterexample and max-submodularity", criterion_2),
        ("3 duality", criterion_3),
        ("4 exactness", criterion_4),
        ("5 block/tangle correspondence", criterion_5),
        ("6 equivalence claims", criterion_6),
        ("7 psi bijection and minimax", criterion_7),
        ("8 linkage remarks", criterion_8),
        ("9 cli pipeline", criterion_9),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{:.2?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why} [{:.2?}]", start.elapsed());
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 9 acceptance criteria passed");
}
