//! Acceptance criteria 1 to 12. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use kneserlab::graph::{complete, cycle, is_homomorphism, is_proper_coloring, Graph};
use kneserlab::lab::{
    block_decomposition, catalog, run_suite, verify_blocks_totally_joined, Report, Suite, SuiteParams, Verdict,
};
use kneserlab::solvers::{chromatic_number, homomorphism_exists, max_clique, maximum_independent_set};
use kneserlab::Budget;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn FnOnce() -> Outcome + 'a>);

fn suite(s: Suite, cap: Option<usize>) -> Vec<Report> {
    run_suite(
        s,
        &SuiteParams {
            max_vertices: cap,
            ..Default::default()
        },
    )
}

fn bad_rows(rows: &[Report], ok: impl Fn(&Report) -> bool) -> Vec<String> {
    rows.iter()
        .filter(|r| !ok(r))
        .map(|r| format!("{} {} [{}]", r.operation, r.instance, r.verdict.as_str()))
        .collect()
}

fn verdict(rows: usize, bad: Vec<String>) -> Outcome {
    if rows == 0 {
        return Err("no rows".into());
    }
    if bad.is_empty() {
        Ok(format!("{rows} instances"))
    } else {
        Err(format!("{} of {rows} rows off: {}", bad.len(), bad.join("; ")))
    }
}

fn num(r: &Report, key: &str) -> Option<u64> {
    r.values.get(key).and_then(Value::as_u64)
}

/// `(m, n, k)` from an instance like `Kneser(7,3),k=2`.
fn stahl_cell(instance: &str) -> Option<(u64, u64, u64)> {
    let rest = instance.strip_prefix("Kneser(")?;
    let (mn, k) = rest.split_once("),k=")?;
    let (m, n) = mn.split_once(',')?;
    Some((m.parse().ok()?, n.parse().ok()?, k.parse().ok()?))
}

fn lovasz() -> Outcome {
    let t = Instant::now();
    let rows = suite(Suite::Lovasz, Some(60));
    let secs = t.elapsed().as_secs_f64();
    let bad = bad_rows(&rows, |r| {
        let (m, n) = match r.instance.strip_prefix("Kneser(").and_then(|s| s.strip_suffix(')')) {
            Some(mn) => match mn.split_once(',') {
                Some((m, n)) => (m.parse::<u64>().unwrap_or(0), n.parse::<u64>().unwrap_or(0)),
                None => return false,
            },
            None => return false,
        };
        r.verdict == Verdict::Pass && num(r, "chi") == Some(m + 2 - 2 * n)
    });
    let out = verdict(rows.len(), bad)?;
    if secs >= 60.0 {
        return Err(format!("{out}, but took {secs:.1} s"));
    }
    Ok(format!("{out} in {secs:.2} s"))
}

fn stahl_rows() -> Vec<Report> {
    suite(Suite::Stahl, Some(35))
}

fn stahl_equalities(rows: &[Report], pick: impl Fn(u64, u64) -> bool) -> Outcome {
    let cells: Vec<&Report> = rows
        .iter()
        .filter(|r| r.operation == "stahl")
        .filter(|r| stahl_cell(&r.instance).is_some_and(|(_, n, k)| pick(n, k)))
        .collect();
    let bad: Vec<String> = cells
        .iter()
        .filter(|r| {
            let (m, n, k) = stahl_cell(&r.instance).expect("filtered");
            num(r, "computed") != Some(m - 2 * (n - k)) || r.verdict != Verdict::Pass
        })
        .map(|r| format!("{} computed={:?}", r.instance, r.values.get("computed")))
        .collect();
    verdict(cells.len(), bad)
}

fn stahl_subadditivity(rows: &[Report]) -> Outcome {
    let sub: Vec<Report> = rows.iter().filter(|r| r.operation == "stahl_subadditivity").cloned().collect();
    let bad = bad_rows(&sub, |r| {
        r.verdict == Verdict::Pass
            && matches!(
                (num(r, "chi_k"), num(r, "chi_k_prime"), num(r, "chi_sum")),
                (Some(a), Some(b), Some(s)) if s <= a + b
            )
    });
    verdict(sub.len(), bad)
}

fn fractional(s: Suite) -> Outcome {
    let rows = suite(s, Some(120));
    let bad = bad_rows(&rows, |r| {
        r.verdict == Verdict::Pass
            && r.values.get("certified") == Some(&Value::Bool(true))
            && r.values.contains_key("product")
            && r.values.get("product") == r.values.get("expected")
    });
    verdict(rows.len(), bad)
}

fn canonical() -> Outcome {
    let rows = suite(Suite::CanonicalColoring, Some(4096));
    let expected = catalog().iter().filter(|e| e.graph.n() <= 5).count();
    if rows.len() != expected {
        return Err(format!("{} rows for {expected} catalog graphs", rows.len()));
    }
    verdict(
        rows.len(),
        bad_rows(&rows, |r| {
            r.verdict == Verdict::Pass && r.values.get("chi_product_at_most_c") == Some(&Value::Bool(true))
        }),
    )
}

fn blocks() -> Outcome {
    let mut direct = Vec::new();
    for (id, h) in [("K(3)", complete(3)), ("C(5)", cycle(5).map_err(|e| e.to_string())?)] {
        let dec = block_decomposition(&h, 2, 2).map_err(|e| e.to_string())?;
        if !(dec.blocks_isomorphic().map_err(|e| e.to_string())? && verify_blocks_totally_joined(&dec)) {
            direct.push(id);
        }
    }
    if !direct.is_empty() {
        return Err(format!("block structure fails for {direct:?}"));
    }
    let rows = suite(Suite::Blocks, None);
    if rows.len() != 6 {
        return Err(format!("expected 6 rows, found {}", rows.len()));
    }
    verdict(rows.len(), bad_rows(&rows, |r| r.verdict == Verdict::Pass))
}

fn hedetniemi() -> Outcome {
    let rows = suite(Suite::Hedetniemi, Some(400));
    verdict(
        rows.len(),
        bad_rows(&rows, |r| {
            r.verdict == Verdict::Pass && r.values.get("deficit").and_then(Value::as_i64) == Some(0)
        }),
    )
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges, Vec::new(), None).expect("valid edges")
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect()
}

fn is_independent_mask(adj: &[u32], s: u32) -> bool {
    (0..adj.len()).all(|v| s & (1 << v) == 0 || adj[v] & s == 0)
}

fn brute_alpha(g: &Graph) -> usize {
    let adj = adjacency_masks(g);
    (0u32..1 << g.n())
        .filter(|&s| is_independent_mask(&adj, s))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn brute_omega(g: &Graph) -> usize {
    let adj = adjacency_masks(g);
    (0u32..1 << g.n())
        .filter(|&s| (0..g.n()).all(|v| s & (1 << v) == 0 || (adj[v] | 1 << v) & s == s))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Fewest independent sets covering each subset, by exhaustive dynamic
/// programming over all subsets.
fn brute_chi(g: &Graph) -> usize {
    let n = g.n();
    let adj = adjacency_masks(g);
    let full = (1u32 << n) - 1;
    let mut best = vec![usize::MAX; 1 << n];
    best[0] = 0;
    for s in 1..=full {
        let low = s & s.wrapping_neg();
        let rest = s & !low;
        let mut sub = rest;
        loop {
            let part = sub | low;
            if is_independent_mask(&adj, part) && best[(s & !part) as usize] != usize::MAX {
                best[s as usize] = best[s as usize].min(best[(s & !part) as usize] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    best[full as usize]
}

/// Exhaustive assignment of `g`'s vertices in index order, checking each
/// edge once both ends are placed.
fn brute_hom(g: &Graph, h: &Graph) -> bool {
    fn place(g: &Graph, h: &Graph, map: &mut Vec<usize>) -> bool {
        let v = map.len();
        if v == g.n() {
            return true;
        }
        for t in 0..h.n() {
            let ok = g
                .neighbors(v)
                .iter()
                .filter(|&&u| (u as usize) < v)
                .all(|&u| {
                    let s = map[u as usize];
                    if s == t {
                        h.has_loop(t)
                    } else {
                        h.has_edge(s, t)
                    }
                });
            if ok {
                map.push(t);
                if place(g, h, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    place(g, h, &mut Vec::new())
}

fn oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let b = Budget::unlimited();
    let mut bad = Vec::new();
    let mut homs = 0;
    for i in 0..200 {
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.15..0.85);
        let g = random_graph(&mut rng, n, p);
        let err = |e: kneserlab::Error| format!("graph {i}: {e}");

        let chi = chromatic_number(&g, &b).map_err(err)?;
        if chi.value != brute_chi(&g) || !is_proper_coloring(&g, &chi.witness).map_err(err)? {
            bad.push(format!("graph {i}: chromatic {} vs {}", chi.value, brute_chi(&g)));
        }
        let w = max_clique(&g, &b).map_err(err)?;
        if w.clique.len() != brute_omega(&g) {
            bad.push(format!("graph {i}: clique {} vs {}", w.clique.len(), brute_omega(&g)));
        }
        let a = maximum_independent_set(&g, &b).map_err(err)?;
        if a.clique.len() != brute_alpha(&g) {
            bad.push(format!("graph {i}: independence {} vs {}", a.clique.len(), brute_alpha(&g)));
        }

        let hn = rng.gen_range(1..=5);
        let hp = rng.gen_range(0.3..0.95);
        let mut target = random_graph(&mut rng, hn, hp);
        if rng.gen_bool(0.1) {
            let v = rng.gen_range(0..hn);
            let edges: Vec<(usize, usize)> = target.edges().collect();
            target = Graph::from_edges(hn, &edges, vec![v], None).map_err(err)?;
        }
        let mut targets = vec![target, complete(chi.value)];
        if chi.value >= 2 {
            targets.push(complete(chi.value - 1));
        }
        for h in &targets {
            homs += 1;
            let r = homomorphism_exists(&g, h, &b).map_err(err)?;
            let expected = brute_hom(&g, h);
            let witness_ok = match r.witness() {
                Some(f) => is_homomorphism(&g, h, f).map_err(err)?,
                None => true,
            };
            if r.witness().is_some() != expected || !witness_ok {
                bad.push(format!("graph {i}: hom into {}-vertex target", h.n()));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("200 graphs, {homs} homomorphism queries, zero discrepancies"))
    } else {
        Err(format!("{} discrepancies: {}", bad.len(), bad.join("; ")))
    }
}

fn extraction() -> Outcome {
    let rows = suite(Suite::Extraction, None);
    let synthetic: Vec<&Report> = rows.iter().filter(|r| r.operation == "extraction_synthetic").collect();
    let real: Vec<&Report> = rows.iter().filter(|r| r.operation == "extraction_exponential").collect();
    let mut bad: Vec<String> = synthetic
        .iter()
        .filter(|r| r.verdict != Verdict::Pass || r.values.get("is_homomorphism") != Some(&Value::Bool(true)))
        .map(|r| r.instance.clone())
        .collect();
    bad.extend(
        real.iter()
            .filter(|r| {
                r.verdict != Verdict::Regime
                    || !r.values.get("subset").and_then(Value::as_array).is_some_and(|a| !a.is_empty())
            })
            .map(|r| r.instance.clone()),
    );
    if synthetic.is_empty() || real.is_empty() {
        return Err("missing extraction rows".into());
    }
    if bad.is_empty() {
        Ok(format!(
            "{} synthetic homomorphisms, {} regime errors with witness subsets",
            synthetic.len(),
            real.len()
        ))
    } else {
        Err(format!("unexpected rows: {}", bad.join("; ")))
    }
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut files = Vec::new();
    for run in 0..2 {
        let path = dir.path().join(format!("run{run}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_kneserlab"))
            .args(["verify", "all", "--out"])
            .arg(&path)
            .env_remove("KNESERLAB_NODE_BUDGET")
            .env_remove("KNESERLAB_TIME_BUDGET_MS")
            .env_remove("KNESERLAB_MAX_VERTICES")
            .env("KNESERLAB_CACHE_DIR", dir.path().join("cache"))
            .stderr(std::process::Stdio::null())
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("verify all exited with {status}"));
        }
        files.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    if files[0] == files[1] {
        Ok(format!("{} bytes, identical", files[0].len()))
    } else {
        Err("report files differ".into())
    }
}

fn main() -> ExitCode {
    let stahl = stahl_rows();
    let criteria: Vec<Criterion<'_>> = vec![
        ("Lovasz values", Box::new(lovasz)),
        ("Stahl, k <= n", Box::new(|| stahl_equalities(&stahl, |n, k| k <= n))),
        ("Stahl, k = n", Box::new(|| stahl_equalities(&stahl, |n, k| k == n))),
        ("Stahl subadditivity", Box::new(|| stahl_subadditivity(&stahl))),
        ("fractional Hedetniemi", Box::new(|| fractional(Suite::FractionalHedetniemi))),
        ("lexicographic multiplicativity", Box::new(|| fractional(Suite::Lexicographic))),
        ("canonical coloring", Box::new(canonical)),
        ("block machinery", Box::new(blocks)),
        ("Hedetniemi at min <= 4", Box::new(hedetniemi)),
        ("oracle equivalence", Box::new(oracle)),
        ("extraction", Box::new(extraction)),
        ("determinism of verify all", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let (tag, detail) = match check() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag}  {name}: {detail} ({:.1} s)", i + 1, t.elapsed().as_secs_f64());
    }
    if failed == 0 {
        println!("acceptance: all 12 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 12 criteria fail");
        ExitCode::FAILURE
    }
}
