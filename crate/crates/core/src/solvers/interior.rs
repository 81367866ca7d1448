//! Floating-point column generation for covering LPs.
//!
//! Each restricted master `min Σ x_S, Σ_{S∋v} x_S ≥ 1, x ≥ 0` is solved by a
//! primal-dual interior-point method (Mehrotra predictor-corrector on the
//! normal equations). Interior duals are well centred, which keeps the
//! number of pricing rounds small on highly degenerate instances. The
//! result only seeds the exact simplex; nothing here is trusted.

use std::collections::HashSet;

use super::simplex::ColumnOracle;
use crate::config::Meter;
use crate::error::Result;

/// Columns found by the approximate pass and the final interior duals.
#[derive(Debug, Clone)]
pub(crate) struct ApproxCover {
    pub columns: Vec<Vec<usize>>,
    pub dual: Vec<f64>,
}

impl ApproxCover {
    /// Columns whose approximate reduced cost is within `tol` of zero.
    pub fn tight(&self, tol: f64) -> Vec<Vec<usize>> {
        self.columns
            .iter()
            .filter(|s| s.iter().map(|&v| self.dual[v]).sum::<f64>() >= 1.0 - tol)
            .cloned()
            .collect()
    }
}

/// In-place Cholesky factorization of a dense symmetric positive
/// semidefinite matrix. Pivots that vanish numerically are replaced by a
/// huge value, which pins the matching component of the solution to zero.
fn cholesky(k: &mut [Vec<f64>]) {
    let n = k.len();
    let scale = (0..n).map(|j| k[j][j].abs()).fold(0.0f64, f64::max).max(1.0);
    for j in 0..n {
        let mut d = k[j][j];
        for p in 0..j {
            d -= k[j][p] * k[j][p];
        }
        let d = if d <= 1e-30 * scale { 1e64 } else { d.sqrt() };
        k[j][j] = d;
        for i in j + 1..n {
            let mut s = k[i][j];
            for p in 0..j {
                s -= k[i][p] * k[j][p];
            }
            k[i][j] = s / d;
        }
    }
}

fn cholesky_solve(l: &[Vec<f64>], b: &mut [f64]) {
    let n = l.len();
    for i in 0..n {
        let mut s = b[i];
        for p in 0..i {
            s -= l[i][p] * b[p];
        }
        b[i] = s / l[i][i];
    }
    for i in (0..n).rev() {
        let mut s = b[i];
        for p in i + 1..n {
            s -= l[p][i] * b[p];
        }
        b[i] = s / l[i][i];
    }
}

fn max_step(v: &[f64], dv: &[f64]) -> f64 {
    v.iter()
        .zip(dv)
        .filter(|(_, d)| **d < 0.0)
        .map(|(x, d)| -x / d)
        .fold(1.0f64, f64::min)
}

/// Solves one restricted master. Variables are `w = (x, s)` with surplus
/// `s`; constraint matrix `M = [A, -I]`, costs `(1, 0)`, right-hand side 1.
/// Returns the duals `y`, or `None` on numerical failure.
fn restricted_master(n: usize, cols: &[Vec<usize>], tol: f64) -> Option<Vec<f64>> {
    let k = cols.len();
    let total = k + n;
    let m_times = |w: &[f64]| -> Vec<f64> {
        let mut out: Vec<f64> = w[k..].iter().map(|s| -s).collect();
        for (j, s) in cols.iter().enumerate() {
            s.iter().for_each(|&v| out[v] += w[j]);
        }
        out
    };
    let mt_times = |y: &[f64]| -> Vec<f64> {
        let mut out: Vec<f64> = cols.iter().map(|s| s.iter().map(|&v| y[v]).sum()).collect();
        out.extend(y.iter().map(|v| -v));
        out
    };
    let cost: Vec<f64> = (0..total).map(|j| if j < k { 1.0 } else { 0.0 }).collect();
    let mut w = vec![1.0; total];
    let mut z = vec![1.0; total];
    let mut y = vec![0.0; n];
    for _ in 0..200 {
        let mw = m_times(&w);
        let r_b: Vec<f64> = mw.iter().map(|v| 1.0 - v).collect();
        let mty = mt_times(&y);
        let r_c: Vec<f64> = (0..total).map(|j| cost[j] - mty[j] - z[j]).collect();
        let mu = w.iter().zip(&z).map(|(a, b)| a * b).sum::<f64>() / total as f64;
        let primal: f64 = w[..k].iter().sum();
        let dual: f64 = y.iter().sum();
        let infeasible = r_b.iter().chain(&r_c).fold(0.0f64, |a, v| a.max(v.abs()));
        let converged = infeasible < tol && (primal - dual).abs() < tol * (1.0 + primal.abs());
        if converged {
            return Some(y);
        }
        let d: Vec<f64> = w.iter().zip(&z).map(|(a, b)| a / b).collect();
        let mut normal = vec![vec![0.0; n]; n];
        for (j, s) in cols.iter().enumerate() {
            for (a, &u) in s.iter().enumerate() {
                for &v in &s[..=a] {
                    normal[u.max(v)][u.min(v)] += d[j];
                }
            }
        }
        for v in 0..n {
            normal[v][v] += d[k + v];
        }
        cholesky(&mut normal);
        let solve = |r_xz: &[f64]| -> (Vec<f64>, Vec<f64>, Vec<f64>) {
            let t: Vec<f64> = (0..total).map(|j| r_xz[j] / z[j] - d[j] * r_c[j]).collect();
            let mt = m_times(&t);
            let mut dy: Vec<f64> = r_b.iter().zip(&mt).map(|(a, b)| a - b).collect();
            cholesky_solve(&normal, &mut dy);
            let mtdy = mt_times(&dy);
            let dz: Vec<f64> = (0..total).map(|j| r_c[j] - mtdy[j]).collect();
            let dw: Vec<f64> = (0..total).map(|j| (r_xz[j] - w[j] * dz[j]) / z[j]).collect();
            (dw, dy, dz)
        };
        let r_aff: Vec<f64> = (0..total).map(|j| -w[j] * z[j]).collect();
        let (dw_a, _, dz_a) = solve(&r_aff);
        let (ap, ad) = (max_step(&w, &dw_a), max_step(&z, &dz_a));
        let mu_aff = (0..total)
            .map(|j| (w[j] + ap * dw_a[j]) * (z[j] + ad * dz_a[j]))
            .sum::<f64>()
            / total as f64;
        let sigma = (mu_aff / mu).powi(3);
        let r_corr: Vec<f64> = (0..total)
            .map(|j| -w[j] * z[j] - dw_a[j] * dz_a[j] + sigma * mu)
            .collect();
        let (dw, dy, dz) = solve(&r_corr);
        let ap = (0.995 * max_step(&w, &dw)).min(1.0);
        let ad = (0.995 * max_step(&z, &dz)).min(1.0);
        w.iter_mut().zip(&dw).for_each(|(a, b)| *a += ap * b);
        z.iter_mut().zip(&dz).for_each(|(a, b)| *a += ad * b);
        y.iter_mut().zip(&dy).for_each(|(a, b)| *a += ad * b);
        if w.iter().chain(&z).any(|v| !v.is_finite()) {
            return None;
        }
    }
    Some(y)
}

/// Column generation until the oracle finds no column with `y(S) > 1 + tol`.
/// `Ok(None)` on numerical failure or when `max_rounds` is exhausted.
pub(crate) fn generate_columns<O: ColumnOracle>(
    n: usize,
    start: &[Vec<usize>],
    oracle: &mut O,
    meter: &mut Meter,
    max_rounds: usize,
) -> Result<Option<ApproxCover>> {
    const TOL: f64 = 1e-7;
    const FINAL_TOL: f64 = 1e-9;
    let mut tol = 1e-4;
    let mut columns: Vec<Vec<usize>> = start.to_vec();
    let mut seen: HashSet<Vec<usize>> = columns.iter().cloned().collect();
    for _ in 0..max_rounds {
        let Some(y) = restricted_master(n, &columns, tol) else {
            return Ok(None);
        };
        let clipped: Vec<f64> = y.iter().map(|v| v.max(0.0)).collect();
        let mut added = false;
        for mut s in oracle.price_approx(&clipped, meter)? {
            s.sort_unstable();
            let weight: f64 = s.iter().map(|&v| clipped[v]).sum();
            if weight > 1.0 + TOL && seen.insert(s.clone()) {
                columns.push(s);
                added = true;
            }
        }
        if !added && tol > FINAL_TOL {
            // Loosely solved masters only steer pricing; confirm at full accuracy.
            tol = FINAL_TOL;
        } else if !added {
            return Ok(Some(ApproxCover { columns, dual: clipped }));
        }
    }
    Ok(None)
}

/// A constraint of a packing polytope `{z ≥ 0, a_i · z ≤ 1}`: row `i`, or
/// the sign of coordinate `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Tight {
    Row(usize),
    Zero(usize),
}

/// Orthonormal basis of a growing set of vectors.
struct Span(Vec<Vec<f64>>);

impl Span {
    fn residual(&self, mut a: Vec<f64>) -> Vec<f64> {
        for _ in 0..2 {
            for q in &self.0 {
                let dot: f64 = a.iter().zip(q).map(|(x, y)| x * y).sum();
                a.iter_mut().zip(q).for_each(|(x, y)| *x -= dot * y);
            }
        }
        a
    }

    /// Adds `a` if it is numerically independent of the span.
    fn add(&mut self, a: Vec<f64>) -> bool {
        let size = norm(&a);
        let r = self.residual(a);
        let rest = norm(&r);
        if rest > 1e-9 * size.max(1.0) {
            self.0.push(r.into_iter().map(|x| x / rest).collect());
            true
        } else {
            false
        }
    }
}

fn norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Moves `z` within the hyperplane `objective · z = const` across the
/// packing polytope `{z ≥ 0, a_i · z ≤ 1}` until it reaches a vertex, and
/// returns `k` linearly independent constraints active there. Each step
/// walks in a direction orthogonal to the constraints collected so far
/// until a new one becomes active.
pub(crate) fn vertex_constraints(rows: &[Vec<f64>], objective: &[f64], start: &[f64]) -> Option<Vec<Tight>> {
    const ACTIVE: f64 = 1e-7;
    let k = objective.len();
    let mut z: Vec<f64> = start.iter().map(|v| v.max(0.0)).collect();
    let normal = |t: Tight| -> Vec<f64> {
        match t {
            Tight::Row(i) => rows[i].clone(),
            Tight::Zero(c) => {
                let mut a = vec![0.0; k];
                a[c] = -1.0;
                a
            }
        }
    };
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let slack = |t: Tight, z: &[f64]| -> f64 {
        match t {
            Tight::Row(i) => 1.0 - dot(&rows[i], z),
            Tight::Zero(c) => z[c],
        }
    };
    let all: Vec<Tight> = (0..rows.len()).map(Tight::Row).chain((0..k).map(Tight::Zero)).collect();
    // `span` also holds the objective, which stays constant along the walk.
    let mut span = Span(Vec::new());
    let mut own = Span(Vec::new());
    span.add(objective.to_vec());
    let mut chosen: Vec<Tight> = Vec::new();
    for &t in &all {
        if slack(t, &z) < ACTIVE && span.add(normal(t)) {
            own.add(normal(t));
            chosen.push(t);
        }
    }
    while span.0.len() < k {
        let d = (0..k)
            .map(|c| {
                let mut e = vec![0.0; k];
                e[c] = 1.0;
                span.residual(e)
            })
            .find(|d| norm(d) > 1e-6)?;
        let mut step: Option<(f64, Tight)> = None;
        for &t in &all {
            let rate = match t {
                Tight::Row(i) => dot(&rows[i], &d),
                Tight::Zero(c) => -d[c],
            };
            if rate > 1e-12 {
                let s = slack(t, &z).max(0.0) / rate;
                if step.is_none_or(|(b, _)| s < b) {
                    step = Some((s, t));
                }
            }
        }
        let (s, t) = step?;
        z.iter_mut().zip(&d).for_each(|(a, b)| *a += s * b);
        if !span.add(normal(t)) {
            return None;
        }
        own.add(normal(t));
        chosen.push(t);
    }
    // At a vertex some further active constraint replaces the objective.
    for &t in &all {
        if chosen.len() == k {
            break;
        }
        if slack(t, &z).abs() < ACTIVE && !chosen.contains(&t) && own.add(normal(t)) {
            chosen.push(t);
        }
    }
    (chosen.len() == k).then_some(chosen)
}
