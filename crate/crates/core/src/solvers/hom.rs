//! Homomorphism existence by backtracking with maintained arc consistency.

use serde::{Deserialize, Serialize};

use super::bitset::BitSet;
use crate::config::{Budget, Exhausted, Meter};
use crate::error::{Error, Result};
use crate::graph::{Graph, Homomorphism};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HomOutcome {
    Found(Homomorphism),
    /// The search tree was exhausted.
    NoHom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomResult {
    pub outcome: HomOutcome,
    pub nodes: u64,
}

impl HomResult {
    pub fn witness(&self) -> Option<&Homomorphism> {
        match &self.outcome {
            HomOutcome::Found(h) => Some(h),
            HomOutcome::NoHom => None,
        }
    }
}

struct Mac<'a> {
    g: &'a Graph,
    /// Target vertices adjacent to t, t itself included when looped.
    support: Vec<BitSet>,
    meter: Meter,
}

impl Mac<'_> {
    /// Narrows domains until every arc is consistent; false on a wipe-out.
    fn propagate(&self, dom: &mut [BitSet], mut queue: Vec<usize>) -> bool {
        let mut queued = vec![false; dom.len()];
        queue.iter().for_each(|&v| queued[v] = true);
        while let Some(v) = queue.pop() {
            queued[v] = false;
            let mut allowed = BitSet::new(self.support.len());
            for t in dom[v].iter() {
                allowed.union_with(&self.support[t]);
            }
            for &u in self.g.neighbors(v) {
                let u = u as usize;
                let before = dom[u].count();
                dom[u].intersect_with(&allowed);
                let after = dom[u].count();
                if after == 0 {
                    return false;
                }
                if after < before && !queued[u] {
                    queued[u] = true;
                    queue.push(u);
                }
            }
        }
        true
    }

    fn search(&mut self, dom: Vec<BitSet>) -> std::result::Result<Option<Vec<usize>>, Exhausted> {
        self.meter.tick()?;
        // Smallest undecided domain, lowest index on ties.
        let pick = (0..dom.len())
            .filter(|&v| dom[v].count() > 1)
            .min_by_key(|&v| (dom[v].count(), v));
        let Some(v) = pick else {
            return Ok(Some(dom.iter().map(|d| d.first().expect("non-empty")).collect()));
        };
        for t in dom[v].iter().collect::<Vec<_>>() {
            let mut next = dom.clone();
            next[v] = BitSet::new(self.support.len());
            next[v].insert(t);
            if self.propagate(&mut next, vec![v]) {
                if let Some(found) = self.search(next)? {
                    return Ok(Some(found));
                }
            }
        }
        Ok(None)
    }
}

/// Searches for a homomorphism `g -> h`. `g` must be loop-free; loops in `h`
/// are allowed and let an edge collapse onto the looped vertex.
pub fn homomorphism_exists(g: &Graph, h: &Graph, budget: &Budget) -> Result<HomResult> {
    g.require_loop_free()?;
    let (n, m) = (g.n(), h.n());
    let mut support: Vec<BitSet> = super::bitset::adjacency_rows(h);
    for &t in h.loops() {
        support[t].insert(t);
    }
    let mut meter = budget.meter();
    if n == 0 {
        return Ok(HomResult {
            outcome: HomOutcome::Found(Homomorphism::new(Vec::new())),
            nodes: 0,
        });
    }
    if m == 0 {
        return Ok(HomResult {
            outcome: HomOutcome::NoHom,
            nodes: 0,
        });
    }
    // Vertices with an edge need a target with a neighbor (or a loop).
    let mut dom: Vec<BitSet> = (0..n)
        .map(|v| {
            if g.degree(v) == 0 {
                BitSet::full(m)
            } else {
                let mut d = BitSet::new(m);
                (0..m).filter(|&t| !support[t].is_empty()).for_each(|t| d.insert(t));
                d
            }
        })
        .collect();
    let _ = meter.tick();
    let mut mac = Mac { g, support, meter };
    if dom.iter().any(BitSet::is_empty) || !mac.propagate(&mut dom, (0..n).collect()) {
        return Ok(HomResult {
            outcome: HomOutcome::NoHom,
            nodes: mac.meter.nodes(),
        });
    }
    let found = mac.search(dom).map_err(|_| Error::BudgetExceeded {
        nodes: mac.meter.nodes(),
        lower: 0,
        upper: None,
    })?;
    Ok(HomResult {
        outcome: match found {
            Some(map) => HomOutcome::Found(Homomorphism::new(map)),
            None => HomOutcome::NoHom,
        },
        nodes: mac.meter.nodes(),
    })
}
