//! The canonical coloring of `H x K_c^H`, the color-block decomposition of
//! `K_{cd}^H`, and the chromatic inequalities built on it.

use serde::Serialize;

use super::report::{Report, Verdict};
use crate::config::{check_guard, max_vertices, Budget};
use crate::error::{Error, Result};
use crate::graph::{exponential_graph, function_index, function_values, Coloring, Graph};
use crate::solvers::chromatic::{dsatur_heuristic, palette_of};
use crate::solvers::{chromatic_number, greedy_clique};

/// `Φ(v, f) = f(v)` on `H x K_c^H`, indexed `v * c^|V(H)| + f`.
pub fn canonical_coloring(h: &Graph, c: usize) -> Result<Coloring> {
    h.require_loop_free()?;
    if c == 0 {
        return Err(Error::InvalidParameter("canonical coloring needs c >= 1".into()));
    }
    let k = h.n();
    let functions = (c as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    let fcount = check_guard(functions, max_vertices())?;
    check_guard(functions.saturating_mul(k as u128), max_vertices())?;
    let mut colors = vec![0u32; k * fcount];
    for f in 0..fcount {
        for (v, &value) in function_values(f, c, k).iter().enumerate() {
            colors[v * fcount + f] = value;
        }
    }
    Coloring::new(colors, c as u32)
}

/// The `d` color blocks of `K_{cd}^H`: block `i` holds the functions with
/// image in `{ic+1..ic+c}`, listed in the vertex order of `K_c^H` after the
/// shift `j -> j + ic`.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    pub c: usize,
    pub d: usize,
    pub base: Graph,
    /// `K_{cd}^H`.
    pub graph: Graph,
    pub blocks: Vec<Vec<usize>>,
}

pub fn block_decomposition(h: &Graph, c: usize, d: usize) -> Result<BlockDecomposition> {
    if c == 0 || d == 0 {
        return Err(Error::InvalidParameter("block decomposition needs c, d >= 1".into()));
    }
    let graph = exponential_graph(c * d, h)?;
    let k = h.n();
    let per_block = c.pow(k as u32);
    let blocks = (0..d)
        .map(|i| {
            (0..per_block)
                .map(|j| {
                    let shifted: Vec<u32> = function_values(j, c, k)
                        .into_iter()
                        .map(|x| x + (i * c) as u32)
                        .collect();
                    function_index(&shifted, c * d)
                })
                .collect()
        })
        .collect();
    Ok(BlockDecomposition {
        c,
        d,
        base: h.clone(),
        graph,
        blocks,
    })
}

impl BlockDecomposition {
    /// True iff the shift relabeling maps every block onto `K_c^H`, loops included.
    pub fn blocks_isomorphic(&self) -> Result<bool> {
        let small = exponential_graph(self.c, &self.base)?;
        let g = &self.graph;
        Ok(self.blocks.iter().all(|b| {
            (0..b.len()).all(|j| {
                small.has_loop(j) == g.has_loop(b[j])
                    && (j + 1..b.len()).all(|j2| small.has_edge(j, j2) == g.has_edge(b[j], b[j2]))
            })
        }))
    }

    pub fn blocks_disjoint(&self) -> bool {
        let mut seen = vec![false; self.graph.n()];
        self.blocks.iter().flatten().all(|&v| !std::mem::replace(&mut seen[v], true))
    }
}

/// True iff every pair of vertices in different blocks is an edge.
pub fn verify_blocks_totally_joined(dec: &BlockDecomposition) -> bool {
    let g = &dec.graph;
    dec.blocks.iter().enumerate().all(|(i, a)| {
        dec.blocks[i + 1..]
            .iter()
            .all(|b| a.iter().all(|&u| b.iter().all(|&v| g.has_edge(u, v))))
    })
}

/// Bounds on the chromatic number of the loop-free part of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoopFreeChromatic {
    pub vertices: usize,
    pub looped: usize,
    pub lower: usize,
    pub upper: usize,
    /// Coloring of the loop-free vertices (in index order) with `upper` colors.
    pub coloring: Vec<u32>,
    pub nodes: u64,
}

impl LoopFreeChromatic {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.upper)
    }
}

/// Colors a map `f` that is not a proper coloring of `H` by its value on
/// the first monochromatic edge of `H`.
fn monochromatic_edge_colors(h: &Graph, c: usize, functions: &[usize]) -> Option<Vec<u32>> {
    let edges: Vec<(usize, usize)> = h.edges().collect();
    functions
        .iter()
        .map(|&f| {
            let vals = function_values(f, c, h.n());
            edges.iter().find(|&&(u, v)| vals[u] == vals[v]).map(|&(u, _)| vals[u])
        })
        .collect()
}

/// χ of the subgraph of `K_c^H` induced by its non-looped vertices.
///
/// The constant maps give a clique of size `c` when `H` has an edge; the
/// upper bound is the better of DSATUR and the monochromatic-edge coloring.
/// The exact search runs only while the bounds differ.
pub fn exponential_chromatic(h: &Graph, c: usize, budget: &Budget) -> Result<LoopFreeChromatic> {
    let e = exponential_graph(c, h)?;
    let keep = e.loop_free_vertices();
    let sub = e.induced_subgraph(&keep)?;
    let looped = e.n() - keep.len();
    if sub.n() == 0 {
        return Ok(LoopFreeChromatic {
            vertices: e.n(),
            looped,
            lower: 0,
            upper: 0,
            coloring: Vec::new(),
            nodes: 0,
        });
    }
    let mut lower = greedy_clique(&sub).len();
    if h.edge_count() > 0 {
        lower = lower.max(c);
    }
    let mut coloring = dsatur_heuristic(&sub);
    if let Some(alt) = monochromatic_edge_colors(h, c, &keep) {
        let alt = compact_colors(alt);
        if palette_of(&alt) < palette_of(&coloring) && sub.edges().all(|(u, v)| alt[u] != alt[v]) {
            coloring = alt;
        }
    }
    let mut upper = palette_of(&coloring);
    let mut nodes = 0;
    if lower < upper {
        match chromatic_number(&sub, budget) {
            Ok(cert) => {
                nodes = cert.nodes;
                lower = cert.value;
                upper = cert.value;
                coloring = cert.witness.colors().to_vec();
            }
            Err(Error::BudgetExceeded { nodes: spent, lower: l, .. }) => {
                nodes = spent;
                lower = lower.max(l as usize);
            }
            Err(err) => return Err(err),
        }
    }
    Ok(LoopFreeChromatic {
        vertices: e.n(),
        looped,
        lower,
        upper,
        coloring,
        nodes,
    })
}

/// Renumbers colors to `1..=k` in order of first use.
fn compact_colors(colors: Vec<u32>) -> Vec<u32> {
    let mut map = std::collections::HashMap::new();
    colors
        .into_iter()
        .map(|c| {
            let next = map.len() as u32 + 1;
            *map.entry(c).or_insert(next)
        })
        .collect()
}

fn describe(h_id: &str, c: usize) -> String {
    format!("K({c})^{h_id}")
}

/// Checks `χ(K_{cd}^H) >= d·χ(K_c^H)` using certified bounds, together with
/// the block isomorphism and total join that imply it. Looped vertices are
/// dropped on both sides and their counts reported.
pub fn chromatic_superadditivity_check(h: &Graph, h_id: &str, c: usize, d: usize, budget: &Budget) -> Result<Report> {
    let dec = block_decomposition(h, c, d)?;
    let isomorphic = dec.blocks_isomorphic()?;
    let joined = verify_blocks_totally_joined(&dec);
    let small = exponential_chromatic(h, c, budget)?;
    let big = exponential_chromatic(h, c * d, budget)?;
    let report = Report::new("superadditivity", format!("H={h_id},c={c},d={d}"))
        .value("blocks_isomorphic", isomorphic)
        .value("blocks_disjoint", dec.blocks_disjoint())
        .value("totally_joined", joined)
        .value("small", bounds_value(&small))
        .value("large", bounds_value(&big))
        .value("small_graph", describe(h_id, c))
        .value("large_graph", describe(h_id, c * d))
        .nodes(small.nodes + big.nodes)
        .certify(&(&small.coloring, &big.coloring));
    let structural = isomorphic && dec.blocks_disjoint() && (joined || h.edge_count() == 0);
    let verdict = if !structural || big.upper < d * small.lower {
        Verdict::Fail
    } else if big.lower >= d * small.upper {
        Verdict::Pass
    } else {
        Verdict::Budget
    };
    Ok(report.verdict(verdict))
}

fn bounds_value(b: &LoopFreeChromatic) -> serde_json::Value {
    serde_json::json!({
        "vertices": b.vertices,
        "looped": b.looped,
        "lower": b.lower,
        "upper": b.upper,
    })
}

/// Inside `K_{cd+i}^H`, the constant maps with values `cd+1..cd+i` are
/// loop-free, pairwise adjacent and adjacent to every map into `{1..cd}`.
pub fn constant_clique_check(h: &Graph, cd: usize, i: usize) -> Result<bool> {
    if h.edge_count() == 0 {
        return Err(Error::InvalidParameter("constant clique check needs an edge in H".into()));
    }
    if cd == 0 {
        return Err(Error::InvalidParameter("constant clique check needs cd >= 1".into()));
    }
    let total = cd + i;
    let k = h.n();
    let g = exponential_graph(total, h)?;
    let constant = |j: usize| function_index(&vec![j as u32; k], total);
    let constants: Vec<usize> = (cd + 1..=total).map(constant).collect();
    let clique = constants
        .iter()
        .enumerate()
        .all(|(a, &u)| !g.has_loop(u) && constants[a + 1..].iter().all(|&v| g.has_edge(u, v)));
    let inner = cd.pow(k as u32);
    let joined = (0..inner).all(|f| {
        let idx = function_index(&function_values(f, cd, k), total);
        constants.iter().all(|&u| g.has_edge(u, idx))
    });
    Ok(clique && joined)
}

/// Checks `χ(K_{cd+i}^H) >= χ(K_{cd}^H) + i` on loop-free parts, with the
/// structural clique condition.
pub fn constant_clique_inequality(h: &Graph, h_id: &str, cd: usize, i: usize, budget: &Budget) -> Result<Report> {
    let structural = constant_clique_check(h, cd, i)?;
    let base = exponential_chromatic(h, cd, budget)?;
    let grown = exponential_chromatic(h, cd + i, budget)?;
    let report = Report::new("constant_clique", format!("H={h_id},cd={cd},i={i}"))
        .value("clique_joined", structural)
        .value("base", bounds_value(&base))
        .value("grown", bounds_value(&grown))
        .value("base_graph", describe(h_id, cd))
        .value("grown_graph", describe(h_id, cd + i))
        .nodes(base.nodes + grown.nodes)
        .certify(&(&base.coloring, &grown.coloring));
    let verdict = if !structural || grown.upper < base.lower + i {
        Verdict::Fail
    } else if grown.lower >= base.upper + i {
        Verdict::Pass
    } else {
        Verdict::Budget
    };
    Ok(report.verdict(verdict))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{categorical_product_with_loops, complete, cycle, edgeless, is_proper_coloring, is_proper_on_product};

    #[test]
    fn canonical_coloring_examples() {
        for (h, c, size) in [(complete(3), 2, 24), (complete(2), 1, 2), (cycle(5).unwrap(), 2, 160)] {
            let col = canonical_coloring(&h, c).unwrap();
            assert_eq!(col.len(), size);
            let e = exponential_graph(c, &h).unwrap();
            assert!(is_proper_on_product(&h, &e, &col).unwrap());
            let p = categorical_product_with_loops(&h, &e).unwrap();
            assert!(is_proper_coloring(&p, &col).unwrap());
        }
        let trivial = categorical_product_with_loops(&complete(2), &exponential_graph(1, &complete(2)).unwrap()).unwrap();
        assert_eq!(trivial.edge_count(), 0);
    }

    #[test]
    fn canonical_coloring_on_looped_exponential() {
        // K_3^{K_3} is looped at the six proper colorings.
        let h = complete(3);
        let e = exponential_graph(3, &h).unwrap();
        assert_eq!(e.loops().len(), 6);
        let col = canonical_coloring(&h, 3).unwrap();
        assert!(is_proper_on_product(&h, &e, &col).unwrap());
    }

    #[test]
    fn blocks_of_k4_over_k3() {
        let dec = block_decomposition(&complete(3), 2, 2).unwrap();
        assert_eq!(dec.graph.n(), 64);
        assert_eq!(dec.blocks.len(), 2);
        assert!(dec.blocks.iter().all(|b| b.len() == 8));
        assert!(dec.blocks_disjoint());
        assert!(dec.blocks_isomorphic().unwrap());
        assert!(verify_blocks_totally_joined(&dec));
    }

    #[test]
    fn single_block_is_everything() {
        let dec = block_decomposition(&cycle(5).unwrap(), 2, 1).unwrap();
        let mut b = dec.blocks[0].clone();
        b.sort_unstable();
        assert_eq!(b, (0..32).collect::<Vec<_>>());
    }

    #[test]
    fn blocks_carry_loops() {
        let dec = block_decomposition(&complete(2), 2, 2).unwrap();
        let small = exponential_graph(2, &complete(2)).unwrap();
        assert_eq!(small.loops(), &[1, 2]);
        for b in &dec.blocks {
            let shifted: Vec<usize> = small.loops().iter().map(|&j| b[j]).collect();
            assert!(shifted.iter().all(|&v| dec.graph.has_loop(v)));
        }
        assert!(dec.blocks_isomorphic().unwrap());
    }

    #[test]
    fn edgeless_base_is_totally_joined() {
        let dec = block_decomposition(&edgeless(2), 2, 2).unwrap();
        assert!(verify_blocks_totally_joined(&dec));
    }

    #[test]
    fn c5_blocks_joined() {
        let dec = block_decomposition(&cycle(5).unwrap(), 2, 2).unwrap();
        assert_eq!(dec.graph.n(), 1024);
        assert!(verify_blocks_totally_joined(&dec));
        assert!(dec.blocks_isomorphic().unwrap());
    }

    #[test]
    fn superadditivity_examples() {
        let b = Budget::nodes(2_000_000);
        for (h, id) in [(complete(3), "K(3)"), (cycle(5).unwrap(), "C(5)"), (complete(4), "K(4)")] {
            let r = chromatic_superadditivity_check(&h, id, 2, 2, &b).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        }
        let r = chromatic_superadditivity_check(&complete(3), "K(3)", 2, 1, &b).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.values["small"], r.values["large"]);
    }

    #[test]
    fn constant_cliques() {
        assert!(constant_clique_check(&complete(3), 2, 1).unwrap());
        assert!(constant_clique_check(&complete(3), 2, 2).unwrap());
        assert!(constant_clique_check(&complete(3), 2, 0).unwrap());
        assert!(constant_clique_check(&edgeless(3), 2, 1).is_err());
        let b = Budget::nodes(2_000_000);
        for i in 1..=2 {
            let r = constant_clique_inequality(&cycle(5).unwrap(), "C(5)", 4, i, &b).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        }
    }

    #[test]
    fn loop_free_part_of_c5_exponential() {
        let b = exponential_chromatic(&cycle(5).unwrap(), 4, &Budget::nodes(1000)).unwrap();
        assert_eq!(b.vertices, 1024);
        assert_eq!((b.lower, b.upper), (4, 4));
        let e = exponential_graph(4, &cycle(5).unwrap()).unwrap();
        let sub = e.induced_subgraph(&e.loop_free_vertices()).unwrap();
        assert!(is_proper_coloring(&sub, &Coloring::from_colors(b.coloring).unwrap()).unwrap());
    }
}
