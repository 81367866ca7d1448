use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph};

/// First-fit coloring along `order`; each vertex takes the smallest color
/// not used by an already colored neighbor.
pub fn greedy_coloring(g: &Graph, order: &[usize]) -> Result<Coloring> {
    g.require_loop_free()?;
    let n = g.n();
    if order.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: order.len(),
        });
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidParameter(format!("vertex {v} repeated in order")));
        }
    }
    let mut colors = vec![0u32; n];
    let mut taken: Vec<u32> = Vec::new();
    for &v in order {
        taken.clear();
        taken.extend(g.neighbors(v).iter().map(|&w| colors[w as usize]).filter(|&c| c > 0));
        taken.sort_unstable();
        taken.dedup();
        let mut c = 1;
        for &t in &taken {
            if t == c {
                c += 1;
            } else if t > c {
                break;
            }
        }
        colors[v] = c;
    }
    Coloring::from_colors(colors)
}

/// Number of colors first-fit uses along `order`; an upper bound on χ.
pub fn greedy_upper_bound(g: &Graph, order: &[usize]) -> Result<usize> {
    Ok(greedy_coloring(g, order)?.palette() as usize)
}
