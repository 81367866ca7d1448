//! Exact chromatic number by DSATUR branch-and-bound.
//!
//! The search pre-colors a large clique, then repeatedly looks for a proper
//! coloring with fewer colors than the best one known. Branching takes the
//! uncolored vertex of maximal saturation (lowest index on ties) and tries
//! its available colors in ascending order, never opening more than one new
//! color at a time. When the tree is exhausted the best coloring is optimal.

use serde::{Deserialize, Serialize};

use super::clique::{greedy_clique, max_clique};
use crate::config::{Budget, Exhausted, Meter};
use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph};

/// Why the certified value cannot be lowered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerBoundReason {
    /// A clique of the certified size.
    Clique(Vec<usize>),
    /// The branch-and-bound tree for one color fewer was exhausted.
    Exhausted { nodes: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticCertificate {
    pub value: usize,
    pub witness: Coloring,
    pub lower_bound: LowerBoundReason,
    pub nodes: u64,
}

struct Dsatur<'a> {
    g: &'a Graph,
    colors: Vec<u32>,
    /// `counts[v * stride + c]`: neighbors of `v` colored `c`.
    counts: Vec<u32>,
    stride: usize,
    saturation: Vec<u32>,
    uncolored: usize,
    /// Number of colors of the best complete coloring so far.
    ub: usize,
    best: Vec<u32>,
    lb: usize,
    meter: Meter,
}

impl<'a> Dsatur<'a> {
    /// Colors stay below `stride`.
    fn new(g: &'a Graph, stride: usize, ub: usize, best: Vec<u32>, lb: usize, meter: Meter) -> Self {
        let n = g.n();
        Dsatur {
            g,
            colors: vec![0; n],
            counts: vec![0; n * stride],
            stride,
            saturation: vec![0; n],
            uncolored: n,
            ub,
            best,
            lb,
            meter,
        }
    }

    fn assign(&mut self, v: usize, c: u32) {
        self.colors[v] = c;
        self.uncolored -= 1;
        for &w in self.g.neighbors(v) {
            let slot = w as usize * self.stride + c as usize;
            self.counts[slot] += 1;
            if self.counts[slot] == 1 {
                self.saturation[w as usize] += 1;
            }
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colors[v];
        self.colors[v] = 0;
        self.uncolored += 1;
        for &w in self.g.neighbors(v) {
            let slot = w as usize * self.stride + c as usize;
            self.counts[slot] -= 1;
            if self.counts[slot] == 0 {
                self.saturation[w as usize] -= 1;
            }
        }
    }

    fn select(&self) -> usize {
        let mut best = usize::MAX;
        let mut best_sat = 0;
        for v in 0..self.colors.len() {
            if self.colors[v] == 0 && (best == usize::MAX || self.saturation[v] > best_sat) {
                best = v;
                best_sat = self.saturation[v];
            }
        }
        best
    }

    /// Explores completions of the current partial coloring that use fewer
    /// than `ub` colors. `used` is the largest color in use.
    fn search(&mut self, used: usize) -> std::result::Result<(), Exhausted> {
        self.meter.tick()?;
        if self.uncolored == 0 {
            self.ub = used;
            self.best = self.colors.clone();
            return Ok(());
        }
        let v = self.select();
        let limit = (used + 1).min(self.ub - 1);
        for c in 1..=limit as u32 {
            if self.counts[v * self.stride + c as usize] != 0 {
                continue;
            }
            self.assign(v, c);
            let r = self.search(used.max(c as usize));
            self.unassign(v);
            r?;
            if self.ub <= self.lb {
                return Ok(());
            }
            // A better coloring shrank the palette below this color.
            if c as usize >= self.ub - 1 {
                break;
            }
        }
        Ok(())
    }
}

pub(crate) fn dsatur_heuristic(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let max_degree = (0..n).map(|v| g.degree(v)).max().unwrap_or(0);
    let mut d = Dsatur::new(g, max_degree + 2, n + 1, Vec::new(), 0, Budget::unlimited().meter());
    let mut used = 0usize;
    while d.uncolored > 0 {
        let v = d.select();
        let c = (1..=used as u32 + 1)
            .find(|&c| d.counts[v * d.stride + c as usize] == 0)
            .expect("a fresh color is always free");
        d.assign(v, c);
        used = used.max(c as usize);
    }
    d.colors
}

pub(crate) fn palette_of(colors: &[u32]) -> usize {
    colors.iter().copied().max().unwrap_or(0) as usize
}

const CLIQUE_NODES: u64 = 200_000;

/// Options for [`chromatic_number_with`].
#[derive(Debug, Clone, Default)]
pub struct ChromaticOptions {
    pub budget: Budget,
    /// Run the exact clique search when `n` is at most this (default 400).
    pub exact_clique_limit: Option<usize>,
}

/// Exact χ(G) with a witness coloring and the reason it is optimal.
pub fn chromatic_number(g: &Graph, budget: &Budget) -> Result<ChromaticCertificate> {
    chromatic_number_with(
        g,
        &ChromaticOptions {
            budget: budget.clone(),
            exact_clique_limit: None,
        },
    )
}

pub fn chromatic_number_with(g: &Graph, opts: &ChromaticOptions) -> Result<ChromaticCertificate> {
    g.require_loop_free()?;
    let n = g.n();
    if n == 0 {
        return Ok(ChromaticCertificate {
            value: 0,
            witness: Coloring::new(Vec::new(), 0)?,
            lower_bound: LowerBoundReason::Clique(Vec::new()),
            nodes: 0,
        });
    }
    let heuristic = dsatur_heuristic(g);
    let ub = palette_of(&heuristic);
    let mut clique = greedy_clique(g);
    let mut nodes = 0;
    if clique.len() < ub && n <= opts.exact_clique_limit.unwrap_or(400) {
        // Bounded effort: the greedy clique stays if the exact search stalls.
        let mut clique_budget = opts.budget.clone();
        clique_budget.nodes = Some(clique_budget.nodes.map_or(CLIQUE_NODES, |b| b.min(CLIQUE_NODES)));
        match max_clique(g, &clique_budget) {
            Ok(r) => {
                nodes += r.nodes;
                clique = r.clique;
            }
            Err(Error::BudgetExceeded { nodes: used, .. }) => nodes += used,
            Err(e) => return Err(e),
        }
    }
    if clique.len() == ub {
        return Ok(ChromaticCertificate {
            value: ub,
            witness: Coloring::new(heuristic, ub as u32)?,
            lower_bound: LowerBoundReason::Clique(clique),
            nodes,
        });
    }
    let mut search = Dsatur::new(g, ub + 1, ub, heuristic, clique.len(), opts.budget.meter());
    for (i, &v) in clique.iter().enumerate() {
        search.assign(v, i as u32 + 1);
    }
    let outcome = search.search(clique.len());
    nodes += search.meter.nodes();
    if outcome.is_err() {
        return Err(Error::BudgetExceeded {
            nodes,
            lower: clique.len() as u64,
            upper: Some(search.ub as u64),
        });
    }
    let value = search.ub;
    let lower_bound = if value == clique.len() {
        LowerBoundReason::Clique(clique)
    } else {
        LowerBoundReason::Exhausted { nodes: search.meter.nodes() }
    };
    Ok(ChromaticCertificate {
        value,
        witness: Coloring::new(search.best, value as u32)?,
        lower_bound,
        nodes,
    })
}

/// Decides whether `g` has a proper coloring with at most `k` colors.
pub fn is_k_colorable(g: &Graph, k: usize, budget: &Budget) -> Result<Option<Coloring>> {
    g.require_loop_free()?;
    if g.n() == 0 {
        return Ok(Some(Coloring::new(Vec::new(), k as u32)?));
    }
    if k == 0 {
        return Ok(None);
    }
    let clique = greedy_clique(g);
    if clique.len() > k {
        return Ok(None);
    }
    let mut search = Dsatur::new(g, k + 2, k + 1, Vec::new(), k, budget.meter());
    for (i, &v) in clique.iter().enumerate() {
        search.assign(v, i as u32 + 1);
    }
    if search.search(clique.len()).is_err() {
        return Err(Error::BudgetExceeded {
            nodes: search.meter.nodes(),
            lower: clique.len() as u64,
            upper: None,
        });
    }
    if search.best.is_empty() {
        Ok(None)
    } else {
        Ok(Some(Coloring::new(search.best, k as u32)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        categorical_product, complete, cycle, edgeless, exponential_graph, grotzsch, is_proper_coloring, kneser,
    };

    fn chi(g: &Graph) -> usize {
        let cert = chromatic_number(g, &Budget::unlimited()).unwrap();
        assert!(is_proper_coloring(g, &cert.witness).unwrap());
        assert_eq!(cert.witness.colors_used(), cert.value);
        cert.value
    }

    #[test]
    fn small_catalog() {
        assert_eq!(chi(&complete(1)), 1);
        assert_eq!(chi(&complete(4)), 4);
        assert_eq!(chi(&edgeless(5)), 1);
        assert_eq!(chi(&cycle(5).unwrap()), 3);
        assert_eq!(chi(&cycle(6).unwrap()), 2);
        assert_eq!(chi(&grotzsch()), 4);
        assert_eq!(chi(&edgeless(0)), 0);
    }

    #[test]
    fn kneser_values() {
        assert_eq!(chi(&kneser(5, 2).unwrap()), 3);
        assert_eq!(chi(&kneser(7, 3).unwrap()), 3);
        assert_eq!(chi(&kneser(6, 2).unwrap()), 4);
    }

    #[test]
    fn product_bound() {
        let p = categorical_product(&complete(3), &complete(4)).unwrap();
        assert_eq!(chi(&p), 3);
    }

    #[test]
    fn exhaustion_certificate() {
        let cert = chromatic_number(&cycle(7).unwrap(), &Budget::unlimited()).unwrap();
        assert_eq!(cert.value, 3);
        assert!(matches!(cert.lower_bound, LowerBoundReason::Exhausted { .. }));
    }

    #[test]
    fn loops_rejected() {
        let e = exponential_graph(2, &complete(2)).unwrap();
        assert!(matches!(
            chromatic_number(&e, &Budget::unlimited()),
            Err(Error::Looped { .. })
        ));
    }

    #[test]
    fn budget_error_carries_bounds() {
        let g = kneser(9, 2).unwrap();
        match chromatic_number(&g, &Budget::nodes(5)) {
            Err(Error::BudgetExceeded { lower, upper, .. }) => {
                assert!(lower <= 7);
                assert!(upper.unwrap() >= 7);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn k_colorability() {
        let c5 = cycle(5).unwrap();
        assert!(is_k_colorable(&c5, 2, &Budget::unlimited()).unwrap().is_none());
        let col = is_k_colorable(&c5, 3, &Budget::unlimited()).unwrap().unwrap();
        assert!(is_proper_coloring(&c5, &col).unwrap());
    }
}
