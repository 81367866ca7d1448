//! Maximum clique by bitset branch-and-bound with greedy-coloring bounds.

use super::bitset::BitSet;
use crate::config::{Budget, Meter};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A clique found by a greedy sweep: from every start vertex, repeatedly add
/// the candidate of largest degree (lowest index on ties). Fast, not exact.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut best: Vec<usize> = Vec::new();
    let mut cand = Vec::new();
    for start in 0..n {
        if g.degree(start) < best.len() {
            continue;
        }
        let mut clique = vec![start];
        cand.clear();
        cand.extend(g.neighbors(start).iter().map(|&w| w as usize));
        while !cand.is_empty() {
            let &v = cand
                .iter()
                .max_by(|&&a, &&b| g.degree(a).cmp(&g.degree(b)).then(b.cmp(&a)))
                .expect("non-empty");
            clique.push(v);
            cand.retain(|&w| w != v && g.has_edge(v, w));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

struct Search<'a> {
    rows: &'a [BitSet],
    best: Vec<usize>,
    current: Vec<usize>,
    meter: Meter,
}

impl Search<'_> {
    // Greedy color classes over `p`; returns vertices with their class number,
    // in the order they should be popped (last = highest bound).
    fn color_sort(&self, p: &BitSet) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(p.count());
        let mut uncolored = p.clone();
        let mut k = 0;
        while !uncolored.is_empty() {
            k += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                q.difference_with(&self.rows[v]);
                uncolored.remove(v);
                out.push((v, k));
            }
        }
        out
    }

    fn expand(&mut self, mut p: BitSet) -> std::result::Result<(), crate::config::Exhausted> {
        self.meter.tick()?;
        let order = self.color_sort(&p);
        for &(v, k) in order.iter().rev() {
            if self.current.len() + k <= self.best.len() {
                return Ok(());
            }
            self.current.push(v);
            let next = p.intersection(&self.rows[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next)?;
            }
            self.current.pop();
            p.remove(v);
        }
        Ok(())
    }
}

/// Result of an exact clique search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueResult {
    pub clique: Vec<usize>,
    pub nodes: u64,
}

/// Exact maximum clique, vertices sorted ascending.
pub fn max_clique(g: &Graph, budget: &Budget) -> Result<CliqueResult> {
    g.require_loop_free()?;
    let n = g.n();
    // Renumber by non-increasing degree so bitset order is the branching order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let rows: Vec<BitSet> = order
        .iter()
        .map(|&v| {
            let mut r = BitSet::new(n);
            g.neighbors(v).iter().for_each(|&w| r.insert(pos[w as usize]));
            r
        })
        .collect();
    let seed: Vec<usize> = greedy_clique(g).into_iter().map(|v| pos[v]).collect();
    let mut search = Search {
        rows: &rows,
        best: seed,
        current: Vec::new(),
        meter: budget.meter(),
    };
    if n > 0
        && search.expand(BitSet::full(n)).is_err() {
            return Err(Error::BudgetExceeded {
                nodes: search.meter.nodes(),
                lower: search.best.len() as u64,
                upper: None,
            });
        }
    let mut clique: Vec<usize> = search.best.iter().map(|&i| order[i]).collect();
    clique.sort_unstable();
    Ok(CliqueResult {
        clique,
        nodes: search.meter.nodes(),
    })
}

/// Clique number ω(G), a lower bound on χ(G).
pub fn max_clique_lower_bound(g: &Graph) -> Result<usize> {
    Ok(max_clique(g, &Budget::unlimited())?.clique.len())
}
