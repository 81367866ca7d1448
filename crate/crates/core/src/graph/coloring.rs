use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Assignment of colors `1..=palette` to the vertices of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<u32>,
    palette: u32,
}

impl Coloring {
    pub fn new(colors: Vec<u32>, palette: u32) -> Result<Self> {
        if let Some(&bad) = colors.iter().find(|&&c| c == 0 || c > palette) {
            return Err(Error::ColorOutOfRange { color: bad, palette });
        }
        Ok(Coloring { colors, palette })
    }

    /// Uses the largest color as the palette size.
    pub fn from_colors(colors: Vec<u32>) -> Result<Self> {
        let palette = colors.iter().copied().max().unwrap_or(0);
        Self::new(colors, palette)
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn palette(&self) -> u32 {
        self.palette
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mut seen = vec![false; self.palette as usize + 1];
        self.colors.iter().for_each(|&c| seen[c as usize] = true);
        seen.iter().filter(|&&s| s).count()
    }
}

/// Vertex map from a source graph into a target graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homomorphism {
    pub map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(map: Vec<usize>) -> Self {
        Homomorphism { map }
    }

    pub fn identity(n: usize) -> Self {
        Homomorphism { map: (0..n).collect() }
    }
}

/// True iff adjacent vertices get distinct colors and no looped vertex is
/// colored at all (a loop forbids every color).
pub fn is_proper_coloring(g: &Graph, col: &Coloring) -> Result<bool> {
    if col.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            found: col.len(),
        });
    }
    if !g.is_loop_free() {
        return Ok(false);
    }
    let c = col.colors();
    Ok(g.edges().all(|(u, v)| c[u] != c[v]))
}

/// True iff every edge of `g` maps onto an edge of `h`. An edge collapsing
/// onto a single target vertex is accepted only when that vertex is looped;
/// a looped source vertex must map to a looped target vertex.
pub fn is_homomorphism(g: &Graph, h: &Graph, hom: &Homomorphism) -> Result<bool> {
    if hom.map.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            found: hom.map.len(),
        });
    }
    if let Some(&bad) = hom.map.iter().find(|&&t| t >= h.n()) {
        return Err(Error::VertexOutOfRange { vertex: bad, n: h.n() });
    }
    let m = &hom.map;
    let arc_ok = |a: usize, b: usize| {
        if a == b {
            h.has_loop(a)
        } else {
            h.has_edge(a, b)
        }
    };
    Ok(g.edges().all(|(u, v)| arc_ok(m[u], m[v])) && g.loops().iter().all(|&v| h.has_loop(m[v])))
}

/// [`is_proper_coloring`] on the categorical product of `g` and `h` (with
/// looped vertices counting as self-adjacent in their factor), evaluated
/// without materializing the product. `col` is indexed by `x * |V(h)| + y`.
pub fn is_proper_on_product(g: &Graph, h: &Graph, col: &Coloring) -> Result<bool> {
    let hn = h.n();
    let expected = g.n() * hn;
    if col.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            found: col.len(),
        });
    }
    let c = col.colors();
    // Arcs of each factor, loops included as (v, v).
    let arcs = |graph: &Graph| -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = graph.edges().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
        out.extend(graph.loops().iter().map(|&v| (v, v)));
        out
    };
    let (ga, ha) = (arcs(g), arcs(h));
    for &(x, x2) in &ga {
        for &(y, y2) in &ha {
            if c[x * hn + y] == c[x2 * hn + y2] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
