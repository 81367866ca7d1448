//! Constructors for the graph families used throughout the crate.

use std::collections::HashMap;

use rayon::prelude::*;

use super::{Graph, VertexLabel};
use crate::config::{check_guard, max_vertices};
use crate::error::{Error, Result};

fn index_labels(n: usize) -> Option<Vec<VertexLabel>> {
    Some((0..n).map(VertexLabel::Index).collect())
}

/// The complete graph `K_n`.
pub fn complete(n: usize) -> Graph {
    let adjacency = (0..n)
        .map(|v| (0..n as u32).filter(|&w| w as usize != v).collect())
        .collect();
    Graph::from_sorted_adjacency(adjacency, Vec::new(), index_labels(n))
}

/// `n` isolated vertices.
pub fn edgeless(n: usize) -> Graph {
    Graph::from_sorted_adjacency(vec![Vec::new(); n], Vec::new(), index_labels(n))
}

/// The cycle `C_n`, `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle length {n} < 3")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges, Vec::new(), index_labels(n))
}

/// All `k`-subsets of `{1..m}` in lexicographic order.
pub fn subsets_lex(m: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    let mut cur: Vec<u32> = (1..=k as u32).collect();
    loop {
        out.push(cur.clone());
        // Rightmost position that can still be incremented.
        let mut i = k;
        while i > 0 && cur[i - 1] as usize == m - k + i {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub(crate) fn binomial(m: u64, k: u64) -> u128 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (m - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn mask_of(set: &[u32]) -> u128 {
    set.iter().fold(0u128, |acc, &e| acc | 1u128 << (e - 1))
}

/// The Kneser graph `K(m,n)`: `n`-subsets of `{1..m}`, adjacent when disjoint.
/// Vertices are the subsets in lexicographic order.
pub fn kneser(m: usize, n: usize) -> Result<Graph> {
    if n == 0 || n > m {
        return Err(Error::InvalidParameter(format!(
            "Kneser graph needs 1 <= n <= m, got m={m}, n={n}"
        )));
    }
    if m > 128 {
        return Err(Error::InvalidParameter(format!("Kneser ground set {m} > 128")));
    }
    check_guard(binomial(m as u64, n as u64), max_vertices())?;
    let sets = subsets_lex(m, n);
    let masks: Vec<u128> = sets.iter().map(|s| mask_of(s)).collect();
    let rank: HashMap<u128, u32> = masks.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
    let adjacency: Vec<Vec<u32>> = sets
        .par_iter()
        .map(|s| {
            let taken = mask_of(s);
            let rest: Vec<u32> = (1..=m as u32).filter(|e| taken & (1u128 << (e - 1)) == 0).collect();
            if rest.len() < n {
                return Vec::new();
            }
            // n-subsets of the complement, enumerated lexicographically, so
            // their ranks come out increasing.
            subsets_lex(rest.len(), n)
                .into_iter()
                .map(|pos| {
                    let mask = pos.iter().fold(0u128, |acc, &p| acc | 1u128 << (rest[p as usize - 1] - 1));
                    rank[&mask]
                })
                .collect()
        })
        .collect();
    let labels = sets.into_iter().map(|elements| VertexLabel::Subset { elements }).collect();
    Ok(Graph::from_sorted_adjacency(adjacency, Vec::new(), Some(labels)))
}

fn pair_labels(g: &Graph, h: &Graph) -> Vec<VertexLabel> {
    let mut out = Vec::with_capacity(g.n() * h.n());
    for x in 0..g.n() {
        let lx = g.label_or_index(x);
        for y in 0..h.n() {
            out.push(VertexLabel::pair(lx.clone(), h.label_or_index(y)));
        }
    }
    out
}

fn product_guard(g: &Graph, h: &Graph) -> Result<usize> {
    check_guard(g.n() as u128 * h.n() as u128, max_vertices())
}

/// Categorical (tensor) product: `(x,y) ~ (x',y')` iff `xx'` and `yy'` are
/// both edges. Factors must be loop-free.
pub fn categorical_product(g: &Graph, h: &Graph) -> Result<Graph> {
    g.require_loop_free()?;
    h.require_loop_free()?;
    categorical_product_with_loops(g, h)
}

/// Categorical product where a looped vertex counts as adjacent to itself in
/// its factor. `(x,y)` is looped iff both `x` and `y` are. Vertex `(x,y)` has
/// index `x * |V(h)| + y`.
pub fn categorical_product_with_loops(g: &Graph, h: &Graph) -> Result<Graph> {
    let total = product_guard(g, h)?;
    let hn = h.n();
    let closed = |graph: &Graph, v: usize| -> Vec<u32> {
        let mut list = graph.neighbors(v).to_vec();
        if graph.has_loop(v) {
            let pos = list.binary_search(&(v as u32)).unwrap_err();
            list.insert(pos, v as u32);
        }
        list
    };
    let adjacency: Vec<Vec<u32>> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let (x, y) = (idx / hn, idx % hn);
            let gx = closed(g, x);
            let hy = closed(h, y);
            let mut list = Vec::with_capacity(gx.len() * hy.len());
            for &x2 in &gx {
                for &y2 in &hy {
                    let j = x2 as usize * hn + y2 as usize;
                    if j != idx {
                        list.push(j as u32);
                    }
                }
            }
            list
        })
        .collect();
    let loops = (0..total)
        .filter(|&idx| g.has_loop(idx / hn) && h.has_loop(idx % hn))
        .collect();
    Ok(Graph::from_sorted_adjacency(adjacency, loops, Some(pair_labels(g, h))))
}

/// Lexicographic product `G[H]`: `(x,y) ~ (x',y')` iff `xx'` is an edge, or
/// `x = x'` and `yy'` is an edge. Factors must be loop-free.
pub fn lexicographic_product(g: &Graph, h: &Graph) -> Result<Graph> {
    g.require_loop_free()?;
    h.require_loop_free()?;
    let total = product_guard(g, h)?;
    let hn = h.n();
    let adjacency: Vec<Vec<u32>> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let (x, y) = (idx / hn, idx % hn);
            let mut list = Vec::new();
            let mut inner_done = false;
            let push_inner = |list: &mut Vec<u32>| {
                list.extend(h.neighbors(y).iter().map(|&y2| (x * hn + y2 as usize) as u32));
            };
            for &x2 in g.neighbors(x) {
                let x2 = x2 as usize;
                if !inner_done && x2 > x {
                    push_inner(&mut list);
                    inner_done = true;
                }
                list.extend((0..hn).map(|y2| (x2 * hn + y2) as u32));
            }
            if !inner_done {
                push_inner(&mut list);
            }
            list
        })
        .collect();
    Ok(Graph::from_sorted_adjacency(adjacency, Vec::new(), Some(pair_labels(g, h))))
}

/// Index of a function `V(H) -> {1..c}` among the vertices of `K_c^H`:
/// the values read as a base-`c` numeral, vertex 0 most significant.
pub fn function_index(values: &[u32], c: usize) -> usize {
    values.iter().fold(0usize, |acc, &v| acc * c + (v as usize - 1))
}

pub(crate) fn function_values(mut idx: usize, c: usize, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for slot in out.iter_mut().rev() {
        *slot = (idx % c) as u32 + 1;
        idx /= c;
    }
    out
}

/// The exponential graph `K_c^H`.
///
/// Vertices are all maps `f: V(H) -> {1..c}`; `f ~ g` iff `f(u) != g(v)` for
/// every edge `uv` of `H` (both orientations). A map is looped iff it is a
/// proper coloring of `H`; loops go in the loop list, never in adjacency.
pub fn exponential_graph(c: usize, h: &Graph) -> Result<Graph> {
    if c == 0 {
        return Err(Error::InvalidParameter("exponential graph needs c >= 1".into()));
    }
    let k = h.n();
    let requested = (c as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    let total = check_guard(requested, max_vertices())?;
    // Arcs into each vertex v of H: the u with uv an edge (or v itself when looped).
    let into: Vec<Vec<usize>> = (0..k)
        .map(|v| {
            let mut us: Vec<usize> = h.neighbors(v).iter().map(|&u| u as usize).collect();
            if h.has_loop(v) {
                us.push(v);
            }
            us
        })
        .collect();
    let rows: Vec<(Vec<u32>, bool)> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let f = function_values(idx, c, k);
            // g is a neighbor iff g(v) avoids every f(u) with uv an arc.
            let allowed: Vec<Vec<u32>> = (0..k)
                .map(|v| {
                    let mut banned = vec![false; c + 1];
                    for &u in &into[v] {
                        banned[f[u] as usize] = true;
                    }
                    (1..=c as u32).filter(|&x| !banned[x as usize]).collect()
                })
                .collect();
            let looped = (0..k).all(|v| allowed[v].contains(&f[v]));
            let mut list = Vec::new();
            if allowed.iter().all(|a| !a.is_empty()) {
                let mut pos = vec![0usize; k];
                'odometer: loop {
                    let j = allowed
                        .iter()
                        .zip(&pos)
                        .fold(0usize, |acc, (a, &p)| acc * c + (a[p] as usize - 1));
                    if j != idx {
                        list.push(j as u32);
                    }
                    // Last digit fastest, so indices come out increasing.
                    let mut i = k;
                    loop {
                        if i == 0 {
                            break 'odometer;
                        }
                        i -= 1;
                        pos[i] += 1;
                        if pos[i] < allowed[i].len() {
                            break;
                        }
                        pos[i] = 0;
                    }
                }
            }
            (list, looped)
        })
        .collect();
    let loops = rows
        .iter()
        .enumerate()
        .filter(|(_, (_, l))| *l)
        .map(|(i, _)| i)
        .collect();
    let adjacency = rows.into_iter().map(|(l, _)| l).collect();
    let labels = (0..total)
        .map(|idx| VertexLabel::FunctionTable {
            values: function_values(idx, c, k),
        })
        .collect();
    Ok(Graph::from_sorted_adjacency(adjacency, loops, Some(labels)))
}

/// Complement of a loop-free graph; labels are kept.
pub fn complement(g: &Graph) -> Result<Graph> {
    g.require_loop_free()?;
    let n = g.n();
    let adjacency = (0..n)
        .map(|v| {
            let nb = g.neighbors(v);
            (0..n as u32)
                .filter(|&w| w as usize != v && nb.binary_search(&w).is_err())
                .collect()
        })
        .collect();
    Ok(Graph::from_sorted_adjacency(adjacency, Vec::new(), g.labels().map(<[VertexLabel]>::to_vec)))
}

/// Mycielski construction: `n` original vertices, `n` shadows, one apex.
pub fn mycielskian(g: &Graph) -> Result<Graph> {
    g.require_loop_free()?;
    let n = g.n();
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        edges.push((u, v));
        edges.push((u, n + v));
        edges.push((v, n + u));
    }
    for i in 0..n {
        edges.push((n + i, 2 * n));
    }
    Graph::from_edges(2 * n + 1, &edges, Vec::new(), index_labels(2 * n + 1))
}

/// The Grötzsch graph: Mycielskian of `C_5`, triangle-free with chromatic number 4.
pub fn grotzsch() -> Graph {
    mycielskian(&cycle(5).expect("C5")).expect("loop-free")
}
