//! Named small graphs used by the verification grids.
//!
//! Identifiers double as construction expressions: `K(4)`, `C(7)`,
//! `Kneser(7,3)`, `Grotzsch`.

use crate::graph::{complete, cycle, grotzsch, kneser, Graph};

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub graph: Graph,
}

/// Largest Kneser graph in the catalog.
pub const KNESER_LIMIT: usize = 60;

/// `K_1..K_6`, `C_4..C_9`, every `K(m,k)` with `k >= 2`, `m >= 2k` and at
/// most [`KNESER_LIMIT`] vertices, and the Grötzsch graph.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push(CatalogEntry {
            id: format!("K({n})"),
            graph: complete(n),
        });
    }
    for n in 4..=9 {
        out.push(CatalogEntry {
            id: format!("C({n})"),
            graph: cycle(n).expect("n >= 3"),
        });
    }
    for (m, k) in kneser_parameters(2, KNESER_LIMIT) {
        out.push(CatalogEntry {
            id: format!("Kneser({m},{k})"),
            graph: kneser(m, k).expect("within limits"),
        });
    }
    out.push(CatalogEntry {
        id: "Grotzsch".into(),
        graph: grotzsch(),
    });
    out
}

/// Looks up a catalog graph by identifier.
pub fn catalog_entry(id: &str) -> Option<Graph> {
    catalog().into_iter().find(|e| e.id == id).map(|e| e.graph)
}

/// All `(m, k)` with `k >= min_k`, `m >= 2k` and `binom(m, k) <= limit`,
/// ordered by `k` then `m`.
pub fn kneser_parameters(min_k: usize, limit: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for k in min_k.max(1).. {
        if binom(2 * k, k) > limit as u128 {
            break;
        }
        for m in 2 * k.. {
            if binom(m, k) > limit as u128 {
                break;
            }
            out.push((m, k));
        }
    }
    out
}

fn binom(m: usize, k: usize) -> u128 {
    crate::graph::families_binomial(m as u64, k as u64)
}

/// Pairs of catalog entries whose product has at most `max_vertices`
/// vertices. With `ordered` false only pairs `(i, j)` with `i <= j` appear.
pub fn catalog_pairs(entries: &[CatalogEntry], max_vertices: usize, ordered: bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..entries.len() {
        for j in 0..entries.len() {
            if (ordered || i <= j) && entries[i].graph.n() * entries[j].graph.n() <= max_vertices {
                out.push((i, j));
            }
        }
    }
    out
}
