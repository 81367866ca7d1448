//! Verification grids. Cells run in parallel; the returned rows are sorted
//! by operation and instance, so output depends only on the parameters.

use rayon::prelude::*;

use super::catalog::{catalog, catalog_pairs, kneser_parameters, CatalogEntry, KNESER_LIMIT};
use super::exponential::{canonical_coloring, chromatic_superadditivity_check, constant_clique_inequality};
use super::extraction::{extract_from_exponential, extract_from_regions, synthetic_block_graph, verify_extraction};
use super::hedetniemi::{hedetniemi_check, poljak_rodl_upper};
use super::report::{sort_reports, Report, Verdict};
use super::stahl::{stahl_check, stahl_conjecture, subadditivity_reports, StahlInstance};
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::graph::{
    categorical_product, complete, cycle, edgeless, exponential_graph, is_proper_coloring, is_proper_on_product,
    kneser, lexicographic_product, Graph,
};
use crate::rational::Rational;
use crate::solvers::{
    chromatic_number, fractional_chromatic, verify_fractional_certificate, FractionalCertificate, MultichromaticOptions,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Lovasz,
    Stahl,
    FractionalHedetniemi,
    Lexicographic,
    CanonicalColoring,
    Blocks,
    Hedetniemi,
    Extraction,
    PoljakRodl,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Lovasz,
        Suite::Stahl,
        Suite::FractionalHedetniemi,
        Suite::Lexicographic,
        Suite::CanonicalColoring,
        Suite::Blocks,
        Suite::Hedetniemi,
        Suite::Extraction,
        Suite::PoljakRodl,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Lovasz => "lovasz",
            Suite::Stahl => "stahl",
            Suite::FractionalHedetniemi => "fractional-hedetniemi",
            Suite::Lexicographic => "lexicographic",
            Suite::CanonicalColoring => "canonical-coloring",
            Suite::Blocks => "blocks",
            Suite::Hedetniemi => "hedetniemi",
            Suite::Extraction => "extraction",
            Suite::PoljakRodl => "poljak-rodl",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Size limit of the grid when none is given: Kneser vertex count for
    /// `lovasz` and `stahl`, product size for the pair suites, `c^|V(H)|`
    /// for `canonical-coloring`. Unused by `blocks` and `extraction`.
    pub fn default_cap(&self) -> usize {
        match self {
            Suite::Lovasz => KNESER_LIMIT,
            Suite::Stahl => 35,
            Suite::FractionalHedetniemi | Suite::Lexicographic => 120,
            Suite::CanonicalColoring => 4096,
            Suite::Hedetniemi | Suite::PoljakRodl => 400,
            Suite::Blocks | Suite::Extraction => 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteParams {
    /// Overrides [`Suite::default_cap`].
    pub max_vertices: Option<usize>,
    pub budget: Budget,
    /// Seed for the synthetic extraction colorings.
    pub seed: u64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            max_vertices: None,
            budget: Budget::unlimited(),
            seed: 0,
        }
    }
}

/// Largest palette searched by the multichromatic grid.
pub const STAHL_MAX_PALETTE: usize = 12;
/// Node cap for multichromatic cells outside the proven cases.
pub const STAHL_OPEN_NODES: u64 = 2_000_000;
/// Largest `n` for which a Poljak-Rödl bound is recorded.
pub const POLJAK_RODL_MAX_N: usize = 6;
/// Node cap for each product in the Poljak-Rödl grid.
pub const POLJAK_RODL_NODES: u64 = 200_000;

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Vec<Report> {
    let cap = params.max_vertices.unwrap_or(suite.default_cap());
    let mut rows = match suite {
        Suite::Lovasz => lovasz(cap, params),
        Suite::Stahl => stahl(cap, params),
        Suite::FractionalHedetniemi => fractional_pairs(cap, params, false),
        Suite::Lexicographic => fractional_pairs(cap, params, true),
        Suite::CanonicalColoring => canonical(cap),
        Suite::Blocks => blocks(params),
        Suite::Hedetniemi => hedetniemi(cap, params),
        Suite::Extraction => extraction(params),
        Suite::PoljakRodl => poljak_rodl(cap, params),
    };
    sort_reports(&mut rows);
    rows
}

/// Every suite, rows sorted.
pub fn run_all(params: &SuiteParams) -> Vec<Report> {
    let mut rows: Vec<Report> = Suite::ALL
        .par_iter()
        .flat_map_iter(|&s| run_suite(s, params))
        .collect();
    sort_reports(&mut rows);
    rows
}

fn row_or_error(operation: &str, instance: String, r: Result<Report>) -> Report {
    r.unwrap_or_else(|e| Report::from_error(operation, instance, &e))
}

fn lovasz(cap: usize, params: &SuiteParams) -> Vec<Report> {
    kneser_parameters(1, cap)
        .into_par_iter()
        .map(|(m, n)| {
            let instance = format!("Kneser({m},{n})");
            let r = (|| {
                let cert = chromatic_number(&kneser(m, n)?, &params.budget)?;
                let expected = m - 2 * n + 2;
                Ok(Report::new("lovasz", instance.clone())
                    .value("chi", cert.value)
                    .value("expected", expected)
                    .nodes(cert.nodes)
                    .certify(&cert.witness)
                    .check(cert.value == expected))
            })();
            row_or_error("lovasz", instance, r)
        })
        .collect()
}

/// `(m, n, k)` cells: `k <= 2n` and conjectured value within the palette
/// limit.
pub fn stahl_grid(cap: usize) -> Vec<(usize, usize, usize)> {
    kneser_parameters(1, cap)
        .into_iter()
        .flat_map(|(m, n)| (1..=2 * n).map(move |k| (m, n, k)))
        .filter(|&(m, n, k)| stahl_conjecture(m, n, k) <= STAHL_MAX_PALETTE)
        .collect()
}

fn stahl(cap: usize, params: &SuiteParams) -> Vec<Report> {
    let cells = stahl_grid(cap);
    let results: Vec<((usize, usize, usize), Result<StahlInstance>)> = cells
        .into_par_iter()
        .map(|(m, n, k)| {
            let mut budget = params.budget.clone();
            if k > n {
                budget.nodes = Some(budget.nodes.map_or(STAHL_OPEN_NODES, |b| b.min(STAHL_OPEN_NODES)));
            }
            let opts = MultichromaticOptions {
                budget,
                max_palette: Some(STAHL_MAX_PALETTE),
            };
            ((m, n, k), stahl_check(m, n, k, &opts))
        })
        .collect();
    let mut rows = Vec::new();
    let mut by_graph: std::collections::BTreeMap<(usize, usize), Vec<StahlInstance>> = Default::default();
    for ((m, n, k), r) in results {
        match r {
            Ok(inst) => {
                let mut row = inst.report();
                // Outside the proven cases an exhausted budget is expected.
                if row.verdict == Verdict::Budget && inst.proven_case() {
                    row.verdict = Verdict::Error;
                }
                rows.push(row);
                by_graph.entry((m, n)).or_default().push(inst);
            }
            Err(e) => rows.push(Report::from_error("stahl", format!("Kneser({m},{n}),k={k}"), &e)),
        }
    }
    for insts in by_graph.values() {
        rows.extend(subadditivity_reports(insts));
    }
    rows
}

fn fractional_of(entries: &[CatalogEntry], budget: &Budget) -> Vec<Result<FractionalCertificate>> {
    entries.par_iter().map(|e| fractional_chromatic(&e.graph, budget)).collect()
}

fn fractional_pairs(cap: usize, params: &SuiteParams, lex: bool) -> Vec<Report> {
    let entries = catalog();
    let pairs = catalog_pairs(&entries, cap, lex);
    let factors = fractional_of(&entries, &params.budget);
    let operation = if lex { "lexicographic" } else { "fractional_hedetniemi" };
    pairs
        .into_par_iter()
        .map(|(i, j)| {
            let (g, h) = (&entries[i], &entries[j]);
            let instance = if lex {
                format!("Lex({},{})", g.id, h.id)
            } else {
                format!("X({},{})", g.id, h.id)
            };
            let r = (|| {
                let fg = factors[i].clone()?;
                let fh = factors[j].clone()?;
                let p = if lex {
                    lexicographic_product(&g.graph, &h.graph)?
                } else {
                    categorical_product(&g.graph, &h.graph)?
                };
                let fp = fractional_chromatic(&p, &params.budget)?;
                let certified = verify_fractional_certificate(&p, &fp)?;
                let expected: Rational = if lex {
                    &fg.value * &fh.value
                } else {
                    fg.value.clone().min(fh.value.clone())
                };
                Ok(Report::new(operation, instance.clone())
                    .value("g", &fg.value)
                    .value("h", &fh.value)
                    .value("product", &fp.value)
                    .value("expected", &expected)
                    .value("certified", certified)
                    .nodes(fg.nodes + fh.nodes + fp.nodes)
                    .certify(&(&fp.cover, &fp.dual))
                    .check(certified && fp.value == expected))
            })();
            row_or_error(operation, instance, r)
        })
        .collect()
}

/// Checks `Φ(v,f) = f(v)` on `H x K_c^H` for every `c` with
/// `c^|V(H)| <= cap`. With edgeless `H` the product is edgeless.
fn canonical_for(h: &Graph, c: usize) -> Result<bool> {
    let col = canonical_coloring(h, c)?;
    if h.edge_count() == 0 {
        return is_proper_coloring(&edgeless(col.len()), &col);
    }
    let e = exponential_graph(c, h)?;
    is_proper_on_product(h, &e, &col)
}

fn canonical(cap: usize) -> Vec<Report> {
    let entries: Vec<CatalogEntry> = catalog().into_iter().filter(|e| e.graph.n() <= 5).collect();
    entries
        .par_iter()
        .map(|entry| {
            let k = entry.graph.n() as u32;
            let cs: Vec<usize> = (1..).take_while(|&c: &usize| (c as u128).pow(k) <= cap as u128).collect();
            let r = (|| {
                let checked: Vec<(usize, bool)> = cs
                    .par_iter()
                    .map(|&c| Ok((c, canonical_for(&entry.graph, c)?)))
                    .collect::<Result<_>>()?;
                let failed: Vec<usize> = checked.iter().filter(|(_, ok)| !ok).map(|&(c, _)| c).collect();
                Ok(Report::new("canonical_coloring", format!("H={}", entry.id))
                    .value("c_max", cs.last().copied().unwrap_or(0))
                    .value("checked", checked.len())
                    .value("failed", &failed)
                    .value("chi_product_at_most_c", failed.is_empty())
                    .certify(&checked)
                    .check(failed.is_empty()))
            })();
            row_or_error("canonical_coloring", format!("H={}", entry.id), r)
        })
        .collect()
}

/// `(H id, H)` bases of the block checks.
fn block_bases() -> Vec<(&'static str, Graph)> {
    vec![("K(3)", complete(3)), ("C(5)", cycle(5).expect("C5"))]
}

fn blocks(params: &SuiteParams) -> Vec<Report> {
    let (c, d) = (2, 2);
    let mut cells: Vec<(&'static str, Graph, Option<usize>)> = Vec::new();
    for (id, h) in block_bases() {
        cells.push((id, h.clone(), None));
        for i in 1..=2 {
            cells.push((id, h.clone(), Some(i)));
        }
    }
    cells
        .into_par_iter()
        .map(|(id, h, i)| match i {
            None => row_or_error(
                "superadditivity",
                format!("H={id},c={c},d={d}"),
                chromatic_superadditivity_check(&h, id, c, d, &params.budget),
            ),
            Some(i) => row_or_error(
                "constant_clique",
                format!("H={id},cd={},i={i}", c * d),
                constant_clique_inequality(&h, id, c * d, i, &params.budget),
            ),
        })
        .collect()
}

fn chromatic_numbers(entries: &[CatalogEntry], budget: &Budget) -> Vec<Result<usize>> {
    entries
        .par_iter()
        .map(|e| chromatic_number(&e.graph, budget).map(|c| c.value))
        .collect()
}

fn hedetniemi(cap: usize, params: &SuiteParams) -> Vec<Report> {
    let entries = catalog();
    let chi = chromatic_numbers(&entries, &params.budget);
    catalog_pairs(&entries, cap, false)
        .into_par_iter()
        .filter(|&(i, j)| matches!((&chi[i], &chi[j]), (Ok(a), Ok(b)) if *a.min(b) <= 4))
        .map(|(i, j)| {
            let (g, h) = (&entries[i], &entries[j]);
            row_or_error(
                "hedetniemi",
                format!("X({},{})", g.id, h.id),
                hedetniemi_check(&g.graph, &g.id, &h.graph, &h.id, &params.budget),
            )
        })
        .collect()
}

/// Synthetic `(c, d)` grid for the extraction success path.
pub const SYNTHETIC_GRID: [(usize, usize); 5] = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)];

/// Exponential graphs `K_{cd}^H` with `χ(H) > cd`, so loop-free.
fn exponential_extraction_cells() -> Vec<(&'static str, Graph, usize, usize)> {
    vec![
        ("K(3)", complete(3), 1, 2),
        ("K(4)", complete(4), 1, 2),
        ("K(4)", complete(4), 1, 3),
        ("C(5)", cycle(5).expect("C5"), 1, 2),
        ("K(5)", complete(5), 2, 2),
    ]
}

fn extraction(params: &SuiteParams) -> Vec<Report> {
    let synthetic = SYNTHETIC_GRID.par_iter().map(|&(c, d)| {
        let instance = format!("Kneser({},{})[K({})],seed={}", c * d, c, c + 1, params.seed);
        let r = (|| {
            let s = synthetic_block_graph(c, d, params.seed)?;
            let proper = is_proper_coloring(&s.graph, &s.coloring)?;
            let e = extract_from_regions(c, d, &s.regions, &s.coloring)?;
            let ok = verify_extraction(&e)?;
            Ok(Report::new("extraction_synthetic", instance.clone())
                .value("x", e.x)
                .value("target", format!("Kneser({},{})", e.x, c + 1))
                .value("coloring_proper", proper)
                .value("is_homomorphism", ok)
                .certify(&e.psi)
                .check(proper && ok))
        })();
        row_or_error("extraction_synthetic", instance, r)
    });
    let real = exponential_extraction_cells().into_par_iter().map(|(id, h, c, d)| {
        let instance = format!("K({})^{id},c={c},d={d}", c * d);
        match extract_from_exponential(&h, c, d, &params.budget) {
            Ok((e, phi)) => {
                let ok = verify_extraction(&e).unwrap_or(false);
                Report::new("extraction_exponential", instance)
                    .value("x", e.x)
                    .value("is_homomorphism", ok)
                    .certify(&phi)
                    .check(ok)
            }
            Err(Error::Regime {
                subset,
                colors_used,
                needed,
            }) => Report::new("extraction_exponential", instance)
                .value("subset", &subset)
                .value("colors_used", colors_used)
                .value("needed", needed)
                .certify(&subset)
                .verdict(Verdict::Regime)
                .note(format!(
                    "regime not met: maps with image in {subset:?} use {colors_used} colors, need {needed}"
                )),
            Err(e) => Report::from_error("extraction_exponential", instance, &e),
        }
    });
    synthetic.chain(real).collect()
}

fn poljak_rodl(cap: usize, params: &SuiteParams) -> Vec<Report> {
    let entries = catalog();
    let pairs = catalog_pairs(&entries, cap, false);
    let mut budget = params.budget.clone();
    budget.nodes = Some(budget.nodes.map_or(POLJAK_RODL_NODES, |b| b.min(POLJAK_RODL_NODES)));
    let records: Vec<(usize, Result<super::hedetniemi::PoljakRodlRecord>)> = (1..=POLJAK_RODL_MAX_N)
        .into_par_iter()
        .map(|n| (n, poljak_rodl_upper(&entries, &pairs, n, &params.budget, &budget)))
        .collect();
    let bounds: Vec<Option<usize>> = records
        .iter()
        .map(|(_, r)| r.as_ref().ok().map(|rec| rec.chi_product))
        .collect();
    records
        .into_iter()
        .enumerate()
        .map(|(idx, (n, r))| match r {
            Ok(rec) => {
                // f nondecreasing: a bound at any n' >= n also bounds f(n).
                let monotone = bounds[idx..].iter().flatten().min().copied();
                let ok = rec.chi_g >= n && rec.chi_h >= n && rec.chi_product <= rec.chi_g.min(rec.chi_h);
                Report::new("poljak_rodl", format!("n={n}"))
                    .value("g", &rec.g_id)
                    .value("h", &rec.h_id)
                    .value("chi_g", rec.chi_g)
                    .value("chi_h", rec.chi_h)
                    .value("chi_product", rec.chi_product)
                    .value("exact", rec.exact)
                    .value("implies", &rec.implies)
                    .value("monotone_bound", monotone)
                    .certify(&rec)
                    .note("monotone_bound assumes f is nondecreasing")
                    .check(ok)
            }
            Err(e) => Report::from_error("poljak_rodl", format!("n={n}"), &e),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("nope"), None);
    }

    #[test]
    fn stahl_grid_shape() {
        let g = stahl_grid(35);
        assert!(g.contains(&(5, 2, 3)));
        assert!(g.contains(&(7, 3, 3)));
        assert!(g.contains(&(12, 1, 1)));
        assert!(!g.contains(&(13, 1, 1)));
        assert!(!g.contains(&(8, 2, 3)));
        assert!(g.iter().all(|&(m, n, k)| stahl_conjecture(m, n, k) <= STAHL_MAX_PALETTE));
    }

    #[test]
    fn small_suites_pass() {
        let p = SuiteParams::default();
        for s in [Suite::Lovasz, Suite::Blocks, Suite::Extraction] {
            let rows = run_suite(s, &p);
            assert!(!rows.is_empty());
            assert!(rows.iter().all(|r| !r.is_failure()), "{s:?}: {rows:?}");
        }
    }

    #[test]
    fn capped_fractional_suite() {
        let p = SuiteParams {
            max_vertices: Some(30),
            ..Default::default()
        };
        let rows = run_suite(Suite::FractionalHedetniemi, &p);
        assert!(rows.len() > 10);
        assert!(rows.iter().all(|r| r.verdict == Verdict::Pass), "{rows:?}");
        let again = run_suite(Suite::FractionalHedetniemi, &p);
        assert_eq!(rows, again);
    }
}
