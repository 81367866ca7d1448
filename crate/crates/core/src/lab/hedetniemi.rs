//! Chromatic numbers of categorical products against the smaller factor,
//! and certified upper bounds on the Poljak-Rödl function.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::catalog::CatalogEntry;
use super::report::Report;
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::graph::{categorical_product, Graph};
use crate::solvers::{chromatic_number, ChromaticCertificate};

/// `χ(G)`, `χ(H)`, `χ(G x H)` and the deficit `min − χ(G x H)`.
/// The check passes when the deficit is zero or the minimum exceeds 4.
pub fn hedetniemi_check(g: &Graph, g_id: &str, h: &Graph, h_id: &str, budget: &Budget) -> Result<Report> {
    let cg = chromatic_number(g, budget)?;
    let ch = chromatic_number(h, budget)?;
    let p = categorical_product(g, h)?;
    let cp = chromatic_number(&p, budget)?;
    Ok(product_report(g_id, h_id, &cg, &ch, &cp))
}

fn product_report(
    g_id: &str,
    h_id: &str,
    cg: &ChromaticCertificate,
    ch: &ChromaticCertificate,
    cp: &ChromaticCertificate,
) -> Report {
    let min = cg.value.min(ch.value);
    let deficit = min as i64 - cp.value as i64;
    Report::new("hedetniemi", format!("X({g_id},{h_id})"))
        .value("chi_g", cg.value)
        .value("chi_h", ch.value)
        .value("chi_product", cp.value)
        .value("deficit", deficit)
        .nodes(cg.nodes + ch.nodes + cp.nodes)
        .certify(&cp.witness)
        .check(deficit == 0 || min > 4)
}

/// `f(n) <= chi_product`, certified by the pair `(G, H)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoljakRodlRecord {
    pub n: usize,
    pub g_id: String,
    pub h_id: String,
    pub chi_g: usize,
    pub chi_h: usize,
    /// Exact when `exact`, otherwise the palette of the best coloring found
    /// before the budget ran out.
    pub chi_product: usize,
    pub exact: bool,
    /// Text form of the bound, `f(n) <= v`.
    pub implies: String,
}

/// Smallest certified upper bound on `χ(G x H)` over the given catalog
/// pairs with `χ(G), χ(H) >= n`. Products whose exact search exhausts the
/// budget contribute the best coloring found. Ties prefer exact values,
/// then the earliest pair. Factor chromatic numbers must finish within
/// `factor_budget`; `product_budget` applies to each product.
pub fn poljak_rodl_upper(
    entries: &[CatalogEntry],
    pairs: &[(usize, usize)],
    n: usize,
    factor_budget: &Budget,
    product_budget: &Budget,
) -> Result<PoljakRodlRecord> {
    let mut chi: BTreeMap<usize, usize> = BTreeMap::new();
    let mut chi_of = |i: usize| -> Result<usize> {
        if let Some(&v) = chi.get(&i) {
            return Ok(v);
        }
        let v = chromatic_number(&entries[i].graph, factor_budget)?.value;
        chi.insert(i, v);
        Ok(v)
    };
    let mut best: Option<PoljakRodlRecord> = None;
    for &(i, j) in pairs {
        let (ci, cj) = (chi_of(i)?, chi_of(j)?);
        if ci < n || cj < n {
            continue;
        }
        let p = categorical_product(&entries[i].graph, &entries[j].graph)?;
        let (cp, exact) = match chromatic_number(&p, product_budget) {
            Ok(cert) => (cert.value, true),
            Err(Error::BudgetExceeded { upper: Some(u), .. }) => (u as usize, false),
            Err(Error::BudgetExceeded { upper: None, .. }) => (ci.min(cj), false),
            Err(e) => return Err(e),
        };
        if best
            .as_ref()
            .is_none_or(|b| cp < b.chi_product || (cp == b.chi_product && exact && !b.exact))
        {
            best = Some(PoljakRodlRecord {
                n,
                g_id: entries[i].id.clone(),
                h_id: entries[j].id.clone(),
                chi_g: ci,
                chi_h: cj,
                chi_product: cp,
                exact,
                implies: format!("f({n}) <= {cp}"),
            });
        }
    }
    best.ok_or_else(|| Error::InvalidParameter(format!("no catalog pair has both chromatic numbers >= {n}")))
}
