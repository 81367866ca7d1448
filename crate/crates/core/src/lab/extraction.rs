//! Kneser homomorphisms read off a coloring of a block graph.
//!
//! For every `c`-subset `A` of `{1..cd}` there is a region `R_A` of the
//! graph. When a proper coloring uses at least `c + 1` colors on each
//! region, sending `A` to the `c + 1` smallest of those colors is a
//! homomorphism `K(cd, c) -> K(x, c + 1)`, provided regions of disjoint
//! subsets are totally joined.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::graph::{
    complete, exponential_graph, function_index, function_values, is_proper_coloring, kneser, lexicographic_product,
    subsets_lex, Coloring, Graph, Homomorphism,
};
use crate::solvers::{chromatic_number, subset_rank};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KneserExtraction {
    pub c: usize,
    pub d: usize,
    /// Palette size of the coloring; the target is `K(x, c + 1)`.
    pub x: usize,
    /// `ψ(A)` for each `c`-subset `A` of `{1..cd}`, in lexicographic order.
    pub psi: Vec<Vec<u32>>,
    pub hom: Homomorphism,
}

/// Applies the extraction to explicit regions (one per `c`-subset of
/// `{1..cd}`, lexicographic order).
pub fn extract_from_regions(c: usize, d: usize, regions: &[Vec<usize>], coloring: &Coloring) -> Result<KneserExtraction> {
    let subsets = subsets_lex(c * d, c);
    if regions.len() != subsets.len() {
        return Err(Error::LengthMismatch {
            expected: subsets.len(),
            found: regions.len(),
        });
    }
    let colors = coloring.colors();
    let x = coloring.palette() as usize;
    let mut psi = Vec::with_capacity(subsets.len());
    for (a, region) in subsets.iter().zip(regions) {
        let mut used = vec![false; x + 1];
        for &v in region {
            let col = *colors.get(v).ok_or(Error::VertexOutOfRange {
                vertex: v,
                n: colors.len(),
            })?;
            used[col as usize] = true;
        }
        let present: Vec<u32> = (1..=x as u32).filter(|&col| used[col as usize]).collect();
        if present.len() < c + 1 {
            return Err(Error::Regime {
                subset: a.clone(),
                colors_used: present.len(),
                needed: c + 1,
            });
        }
        psi.push(present[..=c].to_vec());
    }
    let hom = Homomorphism::new(psi.iter().map(|s| subset_rank(s, x)).collect());
    Ok(KneserExtraction { c, d, x, psi, hom })
}

/// `R_A` inside `K_{cd}^H`: the maps with image in `A`.
pub fn exponential_regions(h: &Graph, c: usize, d: usize) -> Vec<Vec<usize>> {
    let k = h.n();
    let per = c.pow(k as u32);
    subsets_lex(c * d, c)
        .into_iter()
        .map(|a| {
            (0..per)
                .map(|j| {
                    let vals: Vec<u32> = function_values(j, c, k).into_iter().map(|x| a[x as usize - 1]).collect();
                    function_index(&vals, c * d)
                })
                .collect()
        })
        .collect()
}

/// Extraction from a coloring `phi` of `K_{cd}^H`.
pub fn extract_kneser_hom(h: &Graph, c: usize, d: usize, phi: &Coloring) -> Result<KneserExtraction> {
    if c == 0 || d < 2 {
        return Err(Error::InvalidParameter("extraction needs c >= 1 and d >= 2".into()));
    }
    let g = exponential_graph(c * d, h)?;
    g.require_loop_free()?;
    if !is_proper_coloring(&g, phi)? {
        return Err(Error::ImproperColoring);
    }
    extract_from_regions(c, d, &exponential_regions(h, c, d), phi)
}

/// Colors `K_{cd}^H` optimally, then extracts.
pub fn extract_from_exponential(h: &Graph, c: usize, d: usize, budget: &Budget) -> Result<(KneserExtraction, Coloring)> {
    if c == 0 || d < 2 {
        return Err(Error::InvalidParameter("extraction needs c >= 1 and d >= 2".into()));
    }
    let g = exponential_graph(c * d, h)?;
    let phi = chromatic_number(&g, budget)?.witness;
    Ok((extract_kneser_hom(h, c, d, &phi)?, phi))
}

/// True iff `e.hom` is a homomorphism `K(cd, c) -> K(x, c + 1)` with every
/// image of size `c + 1`.
pub fn verify_extraction(e: &KneserExtraction) -> Result<bool> {
    let source = kneser(e.c * e.d, e.c)?;
    let target = kneser(e.x, e.c + 1)?;
    Ok(e.psi.iter().all(|s| s.len() == e.c + 1) && crate::graph::is_homomorphism(&source, &target, &e.hom)?)
}

/// `K(cd, c)[K_{c+1}]` with region `R_A = {A} x K_{c+1}`. Disjoint subsets
/// give totally joined regions and every region is a `(c+1)`-clique, so the
/// extraction hypothesis holds by construction.
#[derive(Debug, Clone)]
pub struct SyntheticBlockGraph {
    pub c: usize,
    pub d: usize,
    pub graph: Graph,
    pub regions: Vec<Vec<usize>>,
    pub coloring: Coloring,
}

/// Builds the synthetic graph with a proper coloring: an optimal coloring
/// of `K(cd, c)` expanded to blocks of `c + 1` colors, then shuffled by a
/// seeded permutation of the palette.
pub fn synthetic_block_graph(c: usize, d: usize, seed: u64) -> Result<SyntheticBlockGraph> {
    if c == 0 || d < 2 {
        return Err(Error::InvalidParameter("synthetic block graph needs c >= 1 and d >= 2".into()));
    }
    let base = kneser(c * d, c)?;
    let graph = lexicographic_product(&base, &complete(c + 1))?;
    let outer = chromatic_number(&base, &Budget::unlimited())?.witness;
    let palette = outer.palette() as usize * (c + 1);
    let mut perm: Vec<u32> = (1..=palette as u32).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let colors = (0..graph.n())
        .map(|v| {
            let (a, j) = (v / (c + 1), v % (c + 1));
            perm[(outer.colors()[a] as usize - 1) * (c + 1) + j]
        })
        .collect();
    let regions = (0..base.n()).map(|a| (a * (c + 1)..(a + 1) * (c + 1)).collect()).collect();
    Ok(SyntheticBlockGraph {
        c,
        d,
        graph,
        regions,
        coloring: Coloring::new(colors, palette as u32)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synthetic_success() {
        for (c, d) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)] {
            for seed in 0..3 {
                let s = synthetic_block_graph(c, d, seed).unwrap();
                assert!(is_proper_coloring(&s.graph, &s.coloring).unwrap());
                let e = extract_from_regions(c, d, &s.regions, &s.coloring).unwrap();
                assert!(verify_extraction(&e).unwrap());
            }
        }
    }

    #[test]
    fn disjoint_subsets_get_disjoint_images() {
        let s = synthetic_block_graph(2, 3, 7).unwrap();
        let e = extract_from_regions(2, 3, &s.regions, &s.coloring).unwrap();
        let subsets = subsets_lex(6, 2);
        for (i, a) in subsets.iter().enumerate() {
            for (j, b) in subsets.iter().enumerate() {
                if a.iter().all(|x| !b.contains(x)) {
                    assert!(e.psi[i].iter().all(|x| !e.psi[j].contains(x)));
                }
            }
        }
    }

    #[test]
    fn regime_error_on_real_graphs() {
        for (h, c, d) in [(complete(3), 1, 2), (complete(4), 1, 3), (complete(5), 2, 2)] {
            match extract_from_exponential(&h, c, d, &Budget::nodes(1_000_000)) {
                Err(Error::Regime { subset, colors_used, needed }) => {
                    assert_eq!(subset.len(), c);
                    assert!(colors_used <= c);
                    assert_eq!(needed, c + 1);
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn looped_exponential_is_a_regime_error() {
        let e = extract_from_exponential(&complete(3), 3, 2, &Budget::nodes(1000)).unwrap_err();
        assert!(e.is_regime());
    }

    #[test]
    fn improper_coloring_rejected() {
        let h = complete(3);
        let n = exponential_graph(2, &h).unwrap().n();
        let phi = Coloring::new(vec![1; n], 1).unwrap();
        assert_eq!(extract_kneser_hom(&h, 1, 2, &phi), Err(Error::ImproperColoring));
    }

    #[test]
    fn regions_have_image_in_subset() {
        let h = complete(3);
        let g = exponential_graph(4, &h).unwrap();
        for (a, region) in subsets_lex(4, 2).iter().zip(exponential_regions(&h, 2, 2)) {
            assert_eq!(region.len(), 8);
            for v in region {
                let img = g.label(v).unwrap().image().unwrap();
                assert!(img.iter().all(|x| a.contains(x)));
            }
        }
    }
}
