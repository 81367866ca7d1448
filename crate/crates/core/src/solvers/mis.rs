//! Maximal independent sets via Bron–Kerbosch with pivoting on the complement.

use super::bitset::BitSet;
use crate::config::{Budget, Exhausted, Meter};
use crate::error::{Error, Result};
use super::clique::{max_clique, CliqueResult};
use crate::graph::{complement, Graph};

struct Enumerator<'a> {
    /// Non-neighbors of each vertex (excluding itself).
    comp: &'a [BitSet],
    found: Vec<Vec<usize>>,
    current: Vec<usize>,
    max_sets: Option<usize>,
    meter: Meter,
}

impl Enumerator<'_> {
    fn run(&mut self, mut p: BitSet, mut x: BitSet) -> std::result::Result<(), Exhausted> {
        self.meter.tick()?;
        if p.is_empty() {
            if x.is_empty() {
                let mut set = self.current.clone();
                set.sort_unstable();
                self.found.push(set);
                if self.max_sets.is_some_and(|m| self.found.len() > m) {
                    return Err(Exhausted);
                }
            }
            return Ok(());
        }
        // Pivot maximizing |P ∩ N(u)| over P ∪ X, lowest index on ties.
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by(|&a, &b| {
                p.intersection_count(&self.comp[a])
                    .cmp(&p.intersection_count(&self.comp[b]))
                    .then(b.cmp(&a))
            })
            .expect("P non-empty");
        let mut branch = p.clone();
        branch.difference_with(&self.comp[pivot]);
        for v in branch.iter().collect::<Vec<_>>() {
            self.current.push(v);
            self.run(p.intersection(&self.comp[v]), x.intersection(&self.comp[v]))?;
            self.current.pop();
            p.remove(v);
            x.insert(v);
        }
        Ok(())
    }
}

/// Every maximal independent set of a loop-free graph, each once, sorted
/// lexicographically. `max_sets` bounds the output size.
pub fn enumerate_maximal_independent_sets(
    g: &Graph,
    max_sets: Option<usize>,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>> {
    g.require_loop_free()?;
    let n = g.n();
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let comp: Vec<BitSet> = (0..n)
        .map(|v| {
            let mut r = BitSet::full(n);
            r.remove(v);
            g.neighbors(v).iter().for_each(|&w| r.remove(w as usize));
            r
        })
        .collect();
    let mut e = Enumerator {
        comp: &comp,
        found: Vec::new(),
        current: Vec::new(),
        max_sets,
        meter: budget.meter(),
    };
    if e.run(BitSet::full(n), BitSet::new(n)).is_err() {
        return Err(Error::BudgetExceeded {
            nodes: e.meter.nodes(),
            lower: e.found.len() as u64,
            upper: None,
        });
    }
    let mut found = e.found;
    found.sort();
    Ok(found)
}

/// A maximum independent set, found as a maximum clique of the complement.
pub fn maximum_independent_set(g: &Graph, budget: &Budget) -> Result<CliqueResult> {
    max_clique(&complement(g)?, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, edgeless, kneser};

    fn all(g: &Graph) -> Vec<Vec<usize>> {
        enumerate_maximal_independent_sets(g, None, &Budget::unlimited()).unwrap()
    }

    // Subsets that are independent and admit no independent extension.
    fn brute(g: &Graph) -> Vec<Vec<usize>> {
        let n = g.n();
        let indep = |m: u32| (0..n).all(|a| (a + 1..n).all(|b| m >> a & 1 == 0 || m >> b & 1 == 0 || !g.has_edge(a, b)));
        let mut out: Vec<Vec<usize>> = (0u32..1 << n)
            .filter(|&m| indep(m) && (0..n).all(|v| m >> v & 1 == 1 || !indep(m | 1 << v)))
            .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn known_values() {
        assert_eq!(all(&complete(4)), vec![vec![0], vec![1], vec![2], vec![3]]);
        let c5 = all(&cycle(5).unwrap());
        assert_eq!(c5.len(), 5);
        assert!(c5.iter().all(|s| s.len() == 2));
        assert_eq!(all(&edgeless(3)), vec![vec![0, 1, 2]]);
        let alpha = |g: &Graph| maximum_independent_set(g, &Budget::unlimited()).unwrap().clique.len();
        assert_eq!(alpha(&cycle(7).unwrap()), 3);
        assert_eq!(alpha(&kneser(7, 3).unwrap()), 15);
        assert_eq!(alpha(&edgeless(4)), 4);
    }

    #[test]
    fn matches_brute_force() {
        for g in [cycle(7).unwrap(), kneser(5, 2).unwrap(), kneser(6, 2).unwrap()] {
            assert_eq!(all(&g), brute(&g));
        }
    }

    #[test]
    fn output_cap() {
        let r = enumerate_maximal_independent_sets(&cycle(9).unwrap(), Some(3), &Budget::unlimited());
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }
}
