//! Exact fractional chromatic number.
//!
//! χ_f is the optimum of the covering LP over maximal independent sets.
//! The LP is solved by exact column generation: the simplex dual prices are
//! vertex weights, and a new column is a maximum-weight independent set
//! whose weight exceeds one. Pricing either scans an explicit enumeration
//! of all maximal independent sets or runs an exact weighted search.

use std::collections::BTreeMap;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::bitset::BitSet;
use super::chromatic::{dsatur_heuristic, palette_of};
use super::clique::greedy_clique;
use super::mis::enumerate_maximal_independent_sets;
use super::simplex::{solve_covering, ColumnOracle};
use crate::config::{Budget, Meter};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::Rational;

/// How improving columns are found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pricing {
    /// Enumerate maximal independent sets when there are at most this many
    /// (checked up front), otherwise fall back to search.
    #[default]
    Auto,
    /// Always enumerate every maximal independent set.
    Enumerate,
    /// Always run the weighted branch-and-bound.
    Search,
}

const AUTO_ENUMERATION_CAP: usize = 2_000;

/// Optimal fractional coloring with a matching dual certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalCertificate {
    pub value: Rational,
    /// Maximal independent sets with positive weight; weights sum to `value`
    /// and every vertex is covered with total weight at least one.
    pub cover: Vec<(Vec<usize>, Rational)>,
    /// Vertex weights summing to `value` with weight at most one on every
    /// independent set.
    pub dual: Vec<Rational>,
    pub pivots: u64,
    pub nodes: u64,
}

/// Extends an independent set to a maximal one, adding vertices in index order.
pub(crate) fn extend_to_maximal(g: &Graph, set: &[usize]) -> Vec<usize> {
    let n = g.n();
    let mut blocked = vec![false; n];
    let mut out = set.to_vec();
    for &v in set {
        blocked[v] = true;
        g.neighbors(v).iter().for_each(|&w| blocked[w as usize] = true);
    }
    for v in 0..n {
        if !blocked[v] {
            out.push(v);
            blocked[v] = true;
            g.neighbors(v).iter().for_each(|&w| blocked[w as usize] = true);
        }
    }
    out.sort_unstable();
    out
}

struct Enumerated(Vec<Vec<usize>>);

impl ColumnOracle for Enumerated {
    fn price(&mut self, y: &[BigRational], meter: &mut Meter) -> Result<Option<Vec<usize>>> {
        let one = BigRational::one();
        let mut best: Option<(BigRational, usize)> = None;
        for (i, s) in self.0.iter().enumerate() {
            if meter.tick().is_err() {
                return Err(budget_error(meter));
            }
            let w = s.iter().fold(BigRational::zero(), |acc, &v| acc + &y[v]);
            if w > one && best.as_ref().is_none_or(|(b, _)| w > *b) {
                best = Some((w, i));
            }
        }
        Ok(best.map(|(_, i)| self.0[i].clone()))
    }

    fn price_approx(&mut self, _: &[f64], _: &mut Meter) -> Result<Vec<Vec<usize>>> {
        Ok(self.0.clone())
    }
}

const APPROX_EPS: f64 = 1e-9;

fn budget_error(meter: &Meter) -> Error {
    Error::BudgetExceeded {
        nodes: meter.nodes(),
        lower: 0,
        upper: None,
    }
}

/// Maximum-weight independent set by branch-and-bound. Vertices with no
/// candidate neighbor are taken outright, and so is a pendant vertex at least
/// as heavy as its neighbor. Otherwise the search branches on a vertex of
/// maximal candidate degree. Candidate sets are covered greedily by cliques;
/// a clique contributes at most its heaviest vertex, which bounds the weight
/// still attainable.
struct WeightedSearch<'a, W> {
    /// Adjacency in the renumbered (weight-descending) order.
    rows: &'a [BitSet],
    weight: &'a [W],
    best: W,
    /// With `limit == 1` the single best set; otherwise every complete set
    /// heavier than the threshold, up to `limit` of them.
    found: Vec<Vec<usize>>,
    limit: usize,
    current: Vec<usize>,
}

impl<W> WeightedSearch<'_, W>
where
    W: Clone + Ord + Zero + for<'x> Add<&'x W, Output = W>,
{
    fn take(&mut self, v: usize, p: &mut BitSet, acc: &mut W) {
        *acc = acc.clone() + &self.weight[v];
        self.current.push(v);
        p.difference_with(&self.rows[v]);
        p.remove(v);
    }

    fn reduce(&mut self, p: &mut BitSet, acc: &mut W) {
        let mut changed = true;
        while changed {
            changed = false;
            let members: Vec<usize> = p.iter().collect();
            for v in members {
                if !p.contains(v) {
                    continue;
                }
                let mut nb = self.rows[v].intersection(p);
                let first = nb.first();
                match first {
                    None => {
                        self.take(v, p, acc);
                        changed = true;
                    }
                    Some(u) => {
                        nb.remove(u);
                        if nb.is_empty() && self.weight[v] >= self.weight[u] {
                            self.take(v, p, acc);
                            changed = true;
                        }
                    }
                }
            }
        }
    }

    fn bound(&self, p: &BitSet) -> W {
        // In bitset order the first vertex of each clique is its heaviest.
        let mut rest = p.clone();
        let mut bound = W::zero();
        while let Some(v) = rest.first() {
            bound = bound + &self.weight[v];
            let mut cand = rest.intersection(&self.rows[v]);
            rest.remove(v);
            while let Some(w) = cand.first() {
                cand.intersect_with(&self.rows[w]);
                rest.remove(w);
            }
        }
        bound
    }

    fn expand(&mut self, mut p: BitSet, mut acc: W, meter: &mut Meter) -> Result<()> {
        if meter.tick().is_err() {
            return Err(budget_error(meter));
        }
        let depth = self.current.len();
        self.reduce(&mut p, &mut acc);
        if acc > self.best {
            if self.limit == 1 {
                self.best = acc.clone();
                self.found = vec![self.current.clone()];
            } else if p.is_empty() {
                self.found.push(self.current.clone());
            }
        }
        let full = self.limit > 1 && self.found.len() >= self.limit;
        let result = if full || p.is_empty() || acc.clone() + &self.bound(&p) <= self.best {
            Ok(())
        } else {
            let v = p
                .iter()
                .max_by_key(|&v| (self.rows[v].intersection_count(&p), std::cmp::Reverse(v)))
                .expect("nonempty");
            let mut with = p.clone();
            let mut gained = acc.clone();
            self.take(v, &mut with, &mut gained);
            let r = self.expand(with, gained, meter);
            self.current.pop();
            r.and_then(|_| {
                if self.limit > 1 && self.found.len() >= self.limit {
                    return Ok(());
                }
                p.remove(v);
                self.expand(p, acc, meter)
            })
        };
        self.current.truncate(depth);
        result
    }
}

fn weighted_search<W>(
    g: &Graph,
    positive: &[usize],
    weights: Vec<W>,
    threshold: W,
    limit: usize,
    meter: &mut Meter,
) -> Result<Vec<Vec<usize>>>
where
    W: Clone + Ord + Zero + for<'x> Add<&'x W, Output = W>,
{
    // `positive` is sorted by weight descending; bitset index i = positive[i].
    let k = positive.len();
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in positive.iter().enumerate() {
        pos[v] = i;
    }
    let rows: Vec<BitSet> = positive
        .iter()
        .map(|&v| {
            let mut r = BitSet::new(k);
            for &w in g.neighbors(v) {
                if pos[w as usize] != usize::MAX {
                    r.insert(pos[w as usize]);
                }
            }
            r
        })
        .collect();
    let mut search = WeightedSearch {
        rows: &rows,
        weight: &weights,
        best: threshold,
        found: Vec::new(),
        limit: limit.max(1),
        current: Vec::new(),
    };
    if k > 0 {
        search.expand(BitSet::full(k), W::zero(), meter)?;
    }
    Ok(search
        .found
        .into_iter()
        .map(|s| s.into_iter().map(|i| positive[i]).collect())
        .collect())
}

/// Maximum-weight independent set among vertices of positive weight, if its
/// weight exceeds one. Returned set is extended to a maximal one.
pub(crate) fn heavy_independent_set(
    g: &Graph,
    y: &[BigRational],
    meter: &mut Meter,
) -> Result<Option<Vec<usize>>> {
    let mut positive: Vec<usize> = (0..g.n()).filter(|&v| y[v] > BigRational::zero()).collect();
    positive.sort_by(|&a, &b| y[b].cmp(&y[a]).then(a.cmp(&b)));
    // Scale to integers: w_v = y_v * L with L the common denominator.
    let lcm = positive
        .iter()
        .fold(BigInt::one(), |acc, &v| acc.lcm(y[v].denom()));
    let scaled: Vec<BigInt> = positive
        .iter()
        .map(|&v| (y[v].clone() * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let small = scaled.iter().map(|w| w.to_i128()).collect::<Option<Vec<_>>>();
    let found = match (small, lcm.to_i128()) {
        (Some(ws), Some(l)) if ws.iter().try_fold(0i128, |a, &w| a.checked_add(w)).is_some() => {
            weighted_search(g, &positive, ws, l, 1, meter)?.pop()
        }
        _ => weighted_search(g, &positive, scaled, lcm, 1, meter)?.pop(),
    };
    Ok(found.map(|s| extend_to_maximal(g, &s)))
}

/// Greedy independent set taking vertices by descending weight.
fn greedy_heavy<W: Clone + PartialOrd>(g: &Graph, y: &[W], cmp: impl Fn(&W, &W) -> std::cmp::Ordering) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| cmp(&y[b], &y[a]).then(a.cmp(&b)));
    let mut blocked = vec![false; g.n()];
    let mut set = Vec::new();
    for v in order {
        if !blocked[v] {
            set.push(v);
            blocked[v] = true;
            g.neighbors(v).iter().for_each(|&u| blocked[u as usize] = true);
        }
    }
    set.sort_unstable();
    set
}

struct Searched<'a>(&'a Graph);

impl ColumnOracle for Searched<'_> {
    fn price(&mut self, y: &[BigRational], meter: &mut Meter) -> Result<Option<Vec<usize>>> {
        let g = self.0;
        let set = greedy_heavy(g, y, |a, b| a.cmp(b));
        let w = set.iter().fold(BigRational::zero(), |acc, &v| acc + &y[v]);
        if w > BigRational::one() {
            return Ok(Some(set));
        }
        heavy_independent_set(g, y, meter)
    }

    fn price_approx(&mut self, y: &[f64], meter: &mut Meter) -> Result<Vec<Vec<usize>>> {
        let g = self.0;
        let n = g.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| y[b].total_cmp(&y[a]).then(a.cmp(&b)));
        // One locally improved greedy set per start vertex.
        let mut found = Vec::new();
        for start in 0..n {
            let set = local_search(g, y, &order, vec![start]);
            if set.iter().map(|&v| y[v]).sum::<f64>() > 1.0 + APPROX_EPS {
                found.push(set);
            }
        }
        if !found.is_empty() {
            return Ok(found);
        }
        // Fixed-point weights; the exact pass corrects any rounding.
        const SCALE: f64 = (1u64 << 32) as f64;
        let mut positive: Vec<usize> = (0..n).filter(|&v| y[v] * SCALE >= 1.0).collect();
        positive.sort_by(|&a, &b| y[b].total_cmp(&y[a]).then(a.cmp(&b)));
        let weights: Vec<i128> = positive.iter().map(|&v| (y[v].min(1e6) * SCALE) as i128).collect();
        let threshold = (SCALE * (1.0 + 1e-7)) as i128;
        let best = meter.with_cap(APPROX_SEARCH_NODES, |m| weighted_search(g, &positive, weights, threshold, 4 * n, m));
        match best {
            Ok(sets) => Ok(sets.iter().map(|s| extend_to_maximal(g, s)).collect()),
            // A stalled search only ends the approximate pass early.
            Err(Error::BudgetExceeded { .. }) if !meter.exhausted() => Ok(Vec::new()),
            Err(e) => Err(e),
        }
    }
}

const APPROX_SEARCH_NODES: u64 = 2_000_000;

/// Extends `seed` greedily along `order`, then applies improving swaps
/// (add one vertex, drop its neighbors in the set) until none is left.
fn local_search(g: &Graph, y: &[f64], order: &[usize], seed: Vec<usize>) -> Vec<usize> {
    let n = g.n();
    let mut inside = vec![false; n];
    // Number of set members adjacent to each vertex.
    let mut blockers = vec![0u32; n];
    let add = |v: usize, inside: &mut [bool], blockers: &mut [u32]| {
        inside[v] = true;
        g.neighbors(v).iter().for_each(|&u| blockers[u as usize] += 1);
    };
    let remove = |v: usize, inside: &mut [bool], blockers: &mut [u32]| {
        inside[v] = false;
        g.neighbors(v).iter().for_each(|&u| blockers[u as usize] -= 1);
    };
    for v in seed {
        add(v, &mut inside, &mut blockers);
    }
    for _ in 0..64 {
        for &v in order {
            if !inside[v] && blockers[v] == 0 {
                add(v, &mut inside, &mut blockers);
            }
        }
        let mut improved = false;
        for &v in order {
            if inside[v] {
                continue;
            }
            let loss: f64 = g.neighbors(v).iter().filter(|&&u| inside[u as usize]).map(|&u| y[u as usize]).sum();
            if y[v] > loss + APPROX_EPS {
                for &u in g.neighbors(v) {
                    if inside[u as usize] {
                        remove(u as usize, &mut inside, &mut blockers);
                    }
                }
                add(v, &mut inside, &mut blockers);
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    (0..n).filter(|&v| inside[v]).collect()
}

/// Connected components, each sorted, ordered by smallest vertex.
fn components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut part = vec![root];
        let mut i = 0;
        while i < part.len() {
            for &w in g.neighbors(part[i]) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    part.push(w as usize);
                }
            }
            i += 1;
        }
        part.sort_unstable();
        out.push(part);
    }
    out
}

/// Stable vertex partition of color refinement, starting from one cell:
/// cells are split by the number of neighbors in each cell until nothing
/// changes. Automorphisms preserve every cell.
fn refined_cells(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut cell = vec![0usize; n];
    let mut count = 1;
    loop {
        let signature: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = g.neighbors(v).iter().map(|&w| cell[w as usize]).collect();
                around.sort_unstable();
                (cell[v], around)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<usize>)> = signature.iter().collect();
        distinct.sort();
        distinct.dedup();
        if distinct.len() == count {
            return cell;
        }
        count = distinct.len();
        cell = signature
            .iter()
            .map(|s| distinct.binary_search(&s).expect("present"))
            .collect();
    }
}

struct Solved {
    value: BigRational,
    cover: Vec<(Vec<usize>, BigRational)>,
    dual: Vec<BigRational>,
    pivots: u64,
    nodes: u64,
}

fn solve_connected(g: &Graph, pricing: Pricing, budget: &Budget) -> Result<Solved> {
    let n = g.n();
    let colors = dsatur_heuristic(g);
    let mut classes = vec![Vec::new(); palette_of(&colors)];
    for (v, &c) in colors.iter().enumerate() {
        classes[c as usize - 1].push(v);
    }
    let clique = greedy_clique(g);
    if clique.len() == classes.len() {
        let mut dual = vec![BigRational::zero(); n];
        clique.iter().for_each(|&v| dual[v] = BigRational::one());
        return Ok(Solved {
            value: BigRational::from_integer(classes.len().into()),
            cover: classes.into_iter().map(|s| (s, BigRational::one())).collect(),
            dual,
            pivots: 0,
            nodes: 0,
        });
    }
    let cells = refined_cells(g);
    let enumerated = match pricing {
        Pricing::Search => None,
        Pricing::Enumerate => Some(enumerate_maximal_independent_sets(g, None, budget)?),
        Pricing::Auto => match enumerate_maximal_independent_sets(g, Some(AUTO_ENUMERATION_CAP), budget) {
            Ok(sets) => Some(sets),
            Err(Error::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e),
        },
    };
    let sol = match enumerated {
        Some(sets) => solve_covering(n, &classes, &cells, &mut Enumerated(sets), budget)?,
        None => solve_covering(n, &classes, &cells, &mut Searched(g), budget)?,
    };
    Ok(Solved {
        value: sol.value,
        cover: sol.cover,
        dual: sol.dual,
        pivots: sol.pivots,
        nodes: sol.nodes,
    })
}

/// Lays the covers of the components side by side on `[0, value]` and takes
/// unions over each elementary interval.
fn merge_covers(parts: &[Vec<usize>], solved: &[Solved], value: &BigRational) -> Vec<(Vec<usize>, BigRational)> {
    let mut cuts: Vec<BigRational> = vec![BigRational::zero(), value.clone()];
    for s in solved {
        let mut at = BigRational::zero();
        for (_, x) in &s.cover {
            at += x;
            if at < *value {
                cuts.push(at.clone());
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut cursor = vec![(0usize, BigRational::zero()); solved.len()];
    let mut merged: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
    for w in cuts.windows(2) {
        let mut set = Vec::new();
        for (c, s) in solved.iter().enumerate() {
            let (i, start) = &mut cursor[c];
            while *i < s.cover.len() && start.clone() + &s.cover[*i].1 <= w[0] {
                *start += &s.cover[*i].1;
                *i += 1;
            }
            if let Some((members, _)) = s.cover.get(*i) {
                set.extend(members.iter().map(|&v| parts[c][v]));
            }
        }
        set.sort_unstable();
        *merged.entry(set).or_insert_with(BigRational::zero) += &w[1] - &w[0];
    }
    merged.into_iter().collect()
}

/// Exact χ_f(G) with default pricing.
pub fn fractional_chromatic(g: &Graph, budget: &Budget) -> Result<FractionalCertificate> {
    fractional_chromatic_with(g, Pricing::Auto, budget)
}

/// Exact χ_f(G). Components are solved separately; the largest value wins.
pub fn fractional_chromatic_with(g: &Graph, pricing: Pricing, budget: &Budget) -> Result<FractionalCertificate> {
    g.require_loop_free()?;
    if g.n() == 0 {
        return Err(Error::InvalidParameter("fractional chromatic number of the empty graph".into()));
    }
    let parts = components(g);
    let solved = parts
        .iter()
        .map(|p| solve_connected(&g.induced_subgraph(p)?, pricing, budget))
        .collect::<Result<Vec<_>>>()?;
    let top = (0..solved.len())
        .max_by(|&a, &b| solved[a].value.cmp(&solved[b].value).then(b.cmp(&a)))
        .expect("at least one component");
    let value = solved[top].value.clone();
    let mut dual = vec![BigRational::zero(); g.n()];
    for (i, y) in solved[top].dual.iter().enumerate() {
        dual[parts[top][i]] = y.clone();
    }
    // Color classes may be non-maximal; extending keeps the cover valid.
    let mut cover: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
    for (s, x) in merge_covers(&parts, &solved, &value) {
        *cover.entry(extend_to_maximal(g, &s)).or_insert_with(BigRational::zero) += x;
    }
    Ok(FractionalCertificate {
        value: value.into(),
        cover: cover.into_iter().map(|(s, x)| (s, x.into())).collect(),
        dual: dual.into_iter().map(Rational::from).collect(),
        pivots: solved.iter().map(|s| s.pivots).sum(),
        nodes: solved.iter().map(|s| s.nodes).sum(),
    })
}

/// Re-checks a fractional certificate: the cover is a feasible fractional
/// coloring of the claimed value, and the dual weights are feasible (no
/// independent set heavier than one, checked exactly) with the same total.
pub fn verify_fractional_certificate(g: &Graph, cert: &FractionalCertificate) -> Result<bool> {
    let n = g.n();
    let zero = Rational::zero();
    let one = Rational::one();
    let mut covered = vec![Rational::zero(); n];
    let mut total = Rational::zero();
    for (set, x) in &cert.cover {
        if x.is_negative() || set.iter().any(|&v| v >= n) {
            return Ok(false);
        }
        let independent = set
            .iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| !g.has_edge(a, b)));
        if !independent {
            return Ok(false);
        }
        for &v in set {
            covered[v] = &covered[v] + x;
        }
        total = &total + x;
    }
    if total != cert.value || covered.iter().any(|c| *c < one) {
        return Ok(false);
    }
    if cert.dual.len() != n || cert.dual.iter().any(|y| *y < zero) {
        return Ok(false);
    }
    let dual_total = cert.dual.iter().fold(Rational::zero(), |a, y| &a + y);
    if dual_total != cert.value {
        return Ok(false);
    }
    let y: Vec<BigRational> = cert.dual.iter().map(|r| r.as_big().clone()).collect();
    let mut meter = Budget::unlimited().meter();
    Ok(heavy_independent_set(g, &y, &mut meter)?.is_none())
}
