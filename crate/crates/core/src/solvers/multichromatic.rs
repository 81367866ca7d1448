//! Multichromatic numbers χ_k: the least `m` such that every vertex can get a
//! `k`-subset of `{1..m}` with adjacent vertices receiving disjoint subsets,
//! i.e. the least `m` with a homomorphism into the Kneser graph `K(m,k)`.
//!
//! Each palette size is decided by a DSATUR-style set-coloring search. Colors
//! are interchangeable, so the colors in use always form a prefix `1..u` and
//! a new subset may only open the next unused colors in order.

use serde::{Deserialize, Serialize};

use super::clique::max_clique;
use super::fractional::fractional_chromatic;
use crate::config::{Budget, Exhausted, Meter};
use crate::error::{Error, Result};
use crate::graph::{Graph, Homomorphism};

/// A `k`-fold coloring with palette `{1..m}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetColoring {
    pub sets: Vec<Vec<u32>>,
    pub m: usize,
    pub k: usize,
}

impl SetColoring {
    /// Each set as a vertex of `kneser(m, k)` (lexicographic rank).
    pub fn to_homomorphism(&self) -> Homomorphism {
        Homomorphism::new(self.sets.iter().map(|s| subset_rank(s, self.m)).collect())
    }

    /// Every set has `k` distinct elements of `{1..m}` and adjacent vertices
    /// get disjoint sets.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        if self.sets.len() != g.n() {
            return false;
        }
        let shape_ok = self.sets.iter().all(|s| {
            s.len() == self.k
                && s.windows(2).all(|w| w[0] < w[1])
                && s.iter().all(|&c| c >= 1 && c as usize <= self.m)
        });
        shape_ok
            && g.edges().all(|(u, v)| self.sets[u].iter().all(|c| !self.sets[v].contains(c)))
    }
}

/// Lexicographic rank of a sorted subset of `{1..m}` among subsets of its size.
pub fn subset_rank(set: &[u32], m: usize) -> usize {
    use crate::graph::families_binomial as binom;
    let k = set.len();
    let mut rank = 0u128;
    let mut prev = 0u32;
    for (i, &s) in set.iter().enumerate() {
        for skipped in prev + 1..s {
            rank += binom((m - skipped as usize) as u64, (k - i - 1) as u64);
        }
        prev = s;
    }
    rank as usize
}

struct SetSearch<'a> {
    g: &'a Graph,
    m: usize,
    k: usize,
    sets: Vec<u64>,
    /// `counts[v * (m + 1) + c]`: neighbors of `v` holding color `c`.
    counts: Vec<u32>,
    blocked: Vec<u32>,
    uncolored: usize,
    meter: Meter,
}

impl SetSearch<'_> {
    fn assign(&mut self, v: usize, set: u64) {
        self.sets[v] = set;
        self.uncolored -= 1;
        let stride = self.m + 1;
        for &w in self.g.neighbors(v) {
            let w = w as usize;
            for c in bits(set) {
                let slot = w * stride + c;
                self.counts[slot] += 1;
                if self.counts[slot] == 1 {
                    self.blocked[w] += 1;
                }
            }
        }
    }

    fn unassign(&mut self, v: usize) {
        let set = std::mem::replace(&mut self.sets[v], 0);
        self.uncolored += 1;
        let stride = self.m + 1;
        for &w in self.g.neighbors(v) {
            let w = w as usize;
            for c in bits(set) {
                let slot = w * stride + c;
                self.counts[slot] -= 1;
                if self.counts[slot] == 0 {
                    self.blocked[w] -= 1;
                }
            }
        }
    }

    fn available(&self, v: usize, upto: usize) -> Vec<usize> {
        let stride = self.m + 1;
        (1..=upto).filter(|&c| self.counts[v * stride + c] == 0).collect()
    }

    fn neighbors_viable(&self, v: usize) -> bool {
        self.g
            .neighbors(v)
            .iter()
            .all(|&w| self.sets[w as usize] != 0 || self.m - self.blocked[w as usize] as usize >= self.k)
    }

    fn search(&mut self, used: usize) -> std::result::Result<bool, Exhausted> {
        self.meter.tick()?;
        if self.uncolored == 0 {
            return Ok(true);
        }
        let v = (0..self.sets.len())
            .filter(|&v| self.sets[v] == 0)
            .max_by(|&a, &b| self.blocked[a].cmp(&self.blocked[b]).then(b.cmp(&a)))
            .expect("uncolored vertex");
        let old = self.available(v, used);
        let max_new = self.k.min(self.m - used);
        for fresh in 0..=max_new {
            let reuse = self.k - fresh;
            if reuse > old.len() {
                continue;
            }
            let new_mask = (used + 1..=used + fresh).fold(0u64, |acc, c| acc | 1 << c);
            for combo in combinations(old.len(), reuse) {
                let set = combo.iter().fold(new_mask, |acc, &i| acc | 1 << old[i]);
                self.assign(v, set);
                let ok = self.neighbors_viable(v) && self.search(used + fresh)?;
                if ok {
                    return Ok(true);
                }
                self.unassign(v);
            }
        }
        Ok(false)
    }
}

fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            return None;
        }
        let b = x.trailing_zeros() as usize;
        x &= x - 1;
        Some(b)
    })
}

/// Index combinations of size `r` from `0..n`, lexicographic.
fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    crate::graph::subsets_lex(n, r)
        .into_iter()
        .map(|s| s.into_iter().map(|e| e as usize - 1).collect())
        .collect()
}

/// Outcome of a fixed-palette search plus its node count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetColoringSearch {
    pub coloring: Option<SetColoring>,
    pub nodes: u64,
}

/// Decides whether `g` has a `k`-fold coloring with `m` colors. `clique`, if
/// given, must be a clique of `g`; its members are pre-assigned disjoint blocks.
pub fn set_coloring_exists(
    g: &Graph,
    m: usize,
    k: usize,
    clique: &[usize],
    budget: &Budget,
) -> Result<SetColoringSearch> {
    g.require_loop_free()?;
    if k == 0 {
        return Err(Error::InvalidParameter("set size k must be positive".into()));
    }
    if m > 63 {
        return Err(Error::InvalidParameter(format!("palette {m} > 63")));
    }
    let n = g.n();
    if clique.len() * k > m || (n > 0 && k > m) {
        return Ok(SetColoringSearch { coloring: None, nodes: 0 });
    }
    let mut s = SetSearch {
        g,
        m,
        k,
        sets: vec![0; n],
        counts: vec![0; n * (m + 1)],
        blocked: vec![0; n],
        uncolored: n,
        meter: budget.meter(),
    };
    for (i, &v) in clique.iter().enumerate() {
        let block = (i * k + 1..=(i + 1) * k).fold(0u64, |acc, c| acc | 1 << c);
        s.assign(v, block);
    }
    let found = s.search(clique.len() * k).map_err(|_| Error::BudgetExceeded {
        nodes: s.meter.nodes(),
        lower: m as u64,
        upper: None,
    })?;
    let coloring = found.then(|| SetColoring {
        sets: s.sets.iter().map(|&x| bits(x).map(|c| c as u32).collect()).collect(),
        m,
        k,
    });
    Ok(SetColoringSearch {
        coloring,
        nodes: s.meter.nodes(),
    })
}

#[derive(Debug, Clone, Default)]
pub struct MultichromaticOptions {
    pub budget: Budget,
    /// Give up (with a budget error) beyond this palette size.
    pub max_palette: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultichromaticResult {
    pub value: usize,
    pub k: usize,
    pub witness: SetColoring,
    /// Where the ascending scan started: max(k·ω, ⌈k·χ_f⌉).
    pub start: usize,
    pub nodes: u64,
}

/// χ_k(G) by ascending scan over the palette size.
pub fn multichromatic_number(g: &Graph, k: usize, opts: &MultichromaticOptions) -> Result<MultichromaticResult> {
    g.require_loop_free()?;
    if k == 0 {
        return Err(Error::InvalidParameter("multichromatic index k must be positive".into()));
    }
    if g.n() == 0 {
        return Ok(MultichromaticResult {
            value: k,
            k,
            witness: SetColoring { sets: Vec::new(), m: k, k },
            start: k,
            nodes: 0,
        });
    }
    let clique = max_clique(g, &opts.budget)?;
    let frac = fractional_chromatic(g, &opts.budget)?;
    let scaled = &frac.value * &crate::rational::Rational::from_integer(k as i64);
    let start = (k * clique.clique.len()).max(scaled.ceil_u64() as usize);
    let mut nodes = clique.nodes + frac.nodes;
    let mut m = start;
    loop {
        if opts.max_palette.is_some_and(|cap| m > cap) {
            return Err(Error::BudgetExceeded {
                nodes,
                lower: m as u64,
                upper: None,
            });
        }
        let r = set_coloring_exists(g, m, k, &clique.clique, &opts.budget).map_err(|e| match e {
            Error::BudgetExceeded { nodes: used, .. } => Error::BudgetExceeded {
                nodes: nodes + used,
                lower: m as u64,
                upper: None,
            },
            other => other,
        })?;
        nodes += r.nodes;
        if let Some(witness) = r.coloring {
            return Ok(MultichromaticResult {
                value: m,
                k,
                witness,
                start,
                nodes,
            });
        }
        m += 1;
    }
}
