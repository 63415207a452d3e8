//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Pass `--ignored` (or
//! `--include-ignored`) to add the long exact-chi run on G_5.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use chibound::cli::sha256_hex;
use chibound::coloring::{bounded_color, edge_partition, longest_path_coloring, ColoringError};
use chibound::farey::{farey_sequence, gcd, phi_count, residue_partition};
use chibound::graph::OrientedGraph;
use chibound::oracles::{
    exact_chromatic_number, longest_path, max_clique, verify_acyclic, verify_no_long_path,
    verify_partition_sums, verify_proper, verify_triangle_free, verify_unique_paths, Budget,
    OracleError,
};
use chibound::power::{build_power_graph, class_parameters, FunctionSpec, ResidueGraph};
use chibound::primes::primes_up_to;
use chibound::zykov::build_zykov;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn is_clique(g: &OrientedGraph, vs: &[usize]) -> bool {
    let m = common::matrix(g);
    vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| a != b && m[a][b]))
}

fn power(k: usize, p: u32) -> ResidueGraph {
    build_power_graph(&build_zykov(k).unwrap().graph, p).unwrap().into_residue_graph()
}

fn criterion_1() -> Outcome {
    for k in 1..=5 {
        let g = build_zykov(k).unwrap().graph;
        let name = format!("G_{k}");
        for report in [verify_acyclic(&g, &name), verify_triangle_free(&g, &name), verify_unique_paths(&g, &name)] {
            ensure!(report.passed(), "{} failed on {name}: {:?}", report.check, report.witness);
        }
    }
    for k in 1..=4 {
        let g = build_zykov(k).unwrap().graph;
        let chi = exact_chromatic_number(&g, Budget::unlimited()).map_err(|e| e.to_string())?.chi;
        ensure!(chi == k, "chi(G_{k}) = {chi}");
    }
    Ok("G_1..G_5 acyclic, triangle-free, unique-path; chi(G_k) = k for k <= 4".into())
}

fn criterion_2() -> Outcome {
    let mut seen = Vec::new();
    for (k, p) in [(3, 2), (3, 3), (4, 2), (4, 3), (4, 5)] {
        let g = power(k, p);
        let cert = max_clique(g.graph(), Budget::unlimited()).map_err(|e| e.to_string())?;
        ensure!(cert.size <= p as usize, "omega(G'_{p} of G_{k}) = {} > {p}", cert.size);
        ensure!(cert.witness.len() == cert.size && is_clique(g.graph(), &cert.witness), "bad witness {:?}", cert.witness);
        ensure!(cert.size == common::brute_clique_number(g.graph()), "clique oracle disagrees with enumeration");
        if p == 2 {
            let r = verify_triangle_free(g.graph(), "G'_2");
            ensure!(r.passed(), "G'_2 of G_{k} has triangle {:?}", r.witness);
        }
        seen.push(format!("({k},{p}):{}", cert.size));
    }
    Ok(format!("omega {}", seen.join(" ")))
}

fn criterion_3() -> Outcome {
    let f = FunctionSpec::PowerOfTwo.tabulate(6).map_err(|e| e.to_string())?;
    let params = class_parameters(&f, 6).map_err(|e| e.to_string())?;
    ensure!(params.g(2) == Some(4), "g(2) = {:?}", params.g(2));
    let base = build_zykov(4).unwrap().graph;
    let g = build_power_graph(&base, 2).unwrap();
    ensure!(
        base.edges().iter().all(|&(u, v)| g.graph().has_edge(u, v)),
        "G'_2 does not contain G_4"
    );
    let omega = max_clique(g.graph(), Budget::unlimited()).map_err(|e| e.to_string())?.size;
    ensure!(omega == 2, "omega(G'_2) = {omega}");
    let cert = exact_chromatic_number(g.graph(), Budget::unlimited()).map_err(|e| e.to_string())?;
    ensure!(cert.chi >= 4, "chi(G'_2) = {}", cert.chi);
    Ok(format!("g(2) = 4, omega(G'_2) = 2, chi(G'_2) = {} >= f(2) = 4", cert.chi))
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    for p in primes_up_to(31) {
        let p = p as u32;
        for n in 1..=6.min(p - 1) {
            let part = residue_partition(p, n).map_err(|e| e.to_string())?;
            let r = verify_partition_sums(&part);
            ensure!(r.passed(), "p={p} n={n}: {:?}", r.witness);
            checked += 1;
        }
    }
    let mut totient_sum = 0u64;
    for n in 1..=1000u64 {
        totient_sum += if n == 1 { 1 } else { (1..n).filter(|&i| gcd(i, n) == 1).count() as u64 };
        let phi = phi_count(n);
        ensure!(phi == totient_sum, "Phi({n}) = {phi}, sum of totients {totient_sum}");
        ensure!(phi <= n * (n + 1) / 2, "Phi({n}) = {phi} > n(n+1)/2");
        if n <= 100 {
            ensure!(farey_sequence(n).phi() as u64 == phi, "|F_{n}| - 1 != Phi({n})");
        }
    }
    Ok(format!("{checked} (p, n) partitions zero-sum free; Phi identities hold for n <= 1000"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..1000 {
        let n = rng.random_range(1..=200);
        let density = rng.random_range(0.0..0.1);
        let g = common::random_dag(&mut rng, n, density);
        let longest = longest_path(&g).map_err(|e| e.to_string())?.len() - 1;
        let k = longest + 1;
        let c = longest_path_coloring(&g, k).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure!(verify_proper(&g, &c, "dag").passed(), "trial {trial}: improper");
        ensure!(c.palette() <= k, "trial {trial}: {} colours > {k}", c.palette());
        for k in 1..=longest + 2 {
            let raised = matches!(longest_path_coloring(&g, k), Err(ColoringError::PathTooLong { .. }));
            ensure!(raised == (k <= longest), "trial {trial}: k = {k}, longest = {longest}, raised = {raised}");
        }
    }
    Ok("1000 random DAGs coloured properly with longest+1 colours".into())
}

/// Checks the class-graph and product-colouring claims on one residue graph
/// with `omega < p`, plus the contrapositive with `n = omega - 1`.
fn check_classes(g: &ResidueGraph, omega: usize, name: &str) -> Result<(), String> {
    let p = g.p();
    let n = omega.max(1) as u32;
    let part = residue_partition(p, n).map_err(|e| e.to_string())?;
    let classes = edge_partition(g, &part).map_err(|e| e.to_string())?;
    for i in 0..part.len() {
        let r = verify_no_long_path(&classes.class_graph(i), n as usize, name).map_err(|e| e.to_string())?;
        ensure!(r.passed(), "{name} class {}: {:?}", i + 1, r.witness);
    }
    let c = bounded_color(g, n, &part).map_err(|e| format!("{name}: {e}"))?;
    ensure!(verify_proper(g.graph(), &c, name).passed(), "{name}: improper product colouring");
    let space = (n as u128).pow(part.len() as u32);
    ensure!(c.palette() as u128 <= space, "{name}: palette {} > {space}", c.palette());
    ensure!(part.len() as u32 <= n * n, "{name}: Phi(n) > n^2");

    if omega >= 2 {
        let low = omega as u32 - 1;
        let part = residue_partition(p, low).map_err(|e| e.to_string())?;
        match bounded_color(g, low, &part) {
            Ok(c) => ensure!(verify_proper(g.graph(), &c, name).passed(), "{name}: improper at n = {low}"),
            Err(ColoringError::CliqueTooLarge { witness, .. }) => {
                ensure!(witness.len() == omega && is_clique(g.graph(), &witness), "{name}: bad clique {witness:?}")
            }
            Err(e) => return Err(format!("{name}: n = {low}: {e}")),
        }
    }
    Ok(())
}

fn clique_number(g: &ResidueGraph) -> Result<usize, String> {
    max_clique(g.graph(), Budget::unlimited()).map(|c| c.size).map_err(|e| e.to_string())
}

fn criterion_6() -> Outcome {
    let g = power(4, 5);
    let omega = clique_number(&g)?;
    ensure!(omega < 5, "omega(G'_5 of G_4) = {omega}");
    check_classes(&g, omega, "G'_5 of G_4")?;

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let sampled_from = [power(4, 5), power(5, 7)];
    let mut sampled = 0;
    for i in 0..200 {
        let parent = &sampled_from[i % 2];
        let density = rng.random_range(0.2..0.8);
        let subset: Vec<usize> =
            (0..parent.graph().n_vertices()).filter(|_| rng.random_bool(density)).collect();
        let sub = parent.induced(&subset).unwrap().graph;
        let omega = clique_number(&sub)?;
        if omega < parent.p() as usize {
            check_classes(&sub, omega, &format!("sample {i}"))?;
            sampled += 1;
        }
    }

    let tree = OrientedGraph::new(12, (1..12).map(|v| ((v - 1) / 2, v))).unwrap();
    let bases = [("G_3", build_zykov(3).unwrap().graph), ("P_12", common::path(12)), ("tree_12", tree)];
    let mut exhaustive = 0;
    let mut skipped = 0;
    for (label, base) in &bases {
        let g = build_power_graph(base, 3).unwrap().into_residue_graph();
        let n = g.graph().n_vertices();
        for mask in 0u32..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let sub = g.induced(&subset).unwrap().graph;
            let omega = clique_number(&sub)?;
            if omega >= 3 {
                skipped += 1;
                continue;
            }
            check_classes(&sub, omega, &format!("{label} mask {mask:#x}"))?;
            exhaustive += 1;
        }
    }
    Ok(format!(
        "G'_5 of G_4 ok; {sampled}/200 samples with omega < p ok; {exhaustive} exhaustive subgraphs ok ({skipped} with omega >= p skipped)"
    ))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut histogram = BTreeMap::new();
    for trial in 0..500 {
        let n = rng.random_range(0..=9);
        let density = rng.random_range(0.0..1.0);
        let g = common::random_graph(&mut rng, n, density);
        let chi = exact_chromatic_number(&g, Budget::unlimited()).map_err(|e| e.to_string())?;
        let brute = common::brute_chromatic_number(&g);
        ensure!(chi.chi == brute, "trial {trial}: chi {} vs enumeration {brute}", chi.chi);
        let colors: Vec<u128> = chi.coloring.iter().map(|&c| c as u128).collect();
        let c = chibound::coloring::Coloring::from_assignment(colors);
        ensure!(verify_proper(&g, &c, "random").passed(), "trial {trial}: certificate colouring improper");
        let omega = max_clique(&g, Budget::unlimited()).map_err(|e| e.to_string())?;
        let brute = common::brute_clique_number(&g);
        ensure!(omega.size == brute, "trial {trial}: omega {} vs enumeration {brute}", omega.size);
        ensure!(is_clique(&g, &omega.witness), "trial {trial}: clique witness invalid");
        *histogram.entry(chi.chi).or_insert(0) += 1;
    }
    Ok(format!("500 graphs agree; chi histogram {histogram:?}"))
}

fn run_cli(dir: &Path, args: &[&str], threads: &str) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_chibound"))
        .current_dir(dir)
        .args(args)
        .args(["--threads", threads])
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code();
    ensure!(matches!(code, Some(0 | 1)), "{args:?} exited with {code:?}: {}", String::from_utf8_lossy(&out.stderr));
    let mut digest = sha256_hex(&out.stdout);
    let mut files: Vec<_> = std::fs::read_dir(dir).map_err(|e| e.to_string())?.map(|e| e.unwrap().path()).collect();
    files.sort();
    for f in files {
        digest.push_str(&format!(" {}:{}", f.file_name().unwrap().to_string_lossy(), sha256_hex(&std::fs::read(&f).unwrap())));
    }
    Ok(digest)
}

fn criterion_8() -> Outcome {
    let commands: [&[&str]; 7] = [
        &["construct", "zykov", "--k", "4", "--out", "g4"],
        &["construct", "power", "--k", "4", "--p", "5", "--out", "p45", "--format", "json"],
        &["construct", "power", "--k", "4", "--p", "5", "--out", "p45"],
        &["verify", "all", "--k", "4", "--p", "5", "--out", "verify.json"],
        &["color", "--input", "p45.edges", "--p", "5", "--out", "coloring.json"],
        &["sample", "--input", "p45.edges", "--p", "5", "--count", "25", "--seed", "11"],
        &["params", "--f", "2^n", "--n-max", "8"],
    ];
    let runs: Vec<tempfile::TempDir> = (0..3).map(|_| tempfile::tempdir().unwrap()).collect();
    for args in commands {
        let digests: Vec<String> = runs
            .iter()
            .zip(["1", "4", "1"])
            .map(|(dir, threads)| run_cli(dir.path(), args, threads))
            .collect::<Result<_, _>>()?;
        ensure!(digests.iter().all(|d| d == &digests[0]), "{args:?} differs across runs:\n{}", digests.join("\n"));
    }
    let files = std::fs::read_dir(runs[0].path()).map_err(|e| e.to_string())?.count();
    ensure!(files == 6, "expected 6 output files, found {files}");
    Ok(format!("{} commands and {files} files byte-identical across 3 runs (threads 1, 4, 1)", commands.len()))
}

fn optional_g5_chi() -> Outcome {
    let g = build_zykov(5).unwrap().graph;
    let budget = Budget { max_nodes: None, max_time: Some(Duration::from_secs(600)) };
    match exact_chromatic_number(&g, budget) {
        Ok(c) if c.chi == 5 => Ok("chi(G_5) = 5".into()),
        Ok(c) => Err(format!("chi(G_5) = {}", c.chi)),
        Err(OracleError::BudgetExceeded { lower, upper, nodes }) => {
            Ok(format!("budget exceeded after {nodes} nodes; chi(G_5) in [{lower}, {upper}]"))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let long = args.iter().any(|a| a == "--ignored" || a == "--include-ignored");
    let filter = args.iter().skip(1).find(|a| !a.starts_with('-'));
    let mut criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("criterion 1: Zykov graphs", criterion_1),
        ("criterion 2: power graph clique bound", criterion_2),
        ("criterion 3: desk witness at n = 2", criterion_3),
        ("criterion 4: zero-sum free partitions", criterion_4),
        ("criterion 5: longest-path colouring", criterion_5),
        ("criterion 6: class graphs and product colouring", criterion_6),
        ("criterion 7: oracle cross-validation", criterion_7),
        ("criterion 8: determinism", criterion_8),
    ];
    if long {
        criteria.push(("optional: exact chi(G_5)", optional_g5_chi));
    }
    let mut failed = 0;
    for (name, run) in criteria {
        if filter.is_some_and(|f| !name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic.downcast_ref::<String>().cloned().or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name} ({secs:.1}s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name} ({secs:.1}s): {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
