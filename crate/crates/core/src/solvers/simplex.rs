//! Exact revised simplex for set-covering LPs with generated columns.
//!
//! Solves `min Σ x_S  s.t.  Σ_{S ∋ v} x_S ≥ 1 (every row v),  x ≥ 0`
//! where the columns `S` are 0/1 row subsets produced on demand by a
//! [`ColumnOracle`]. All arithmetic is over `BigRational`. The basis always
//! has one column per row; surplus columns `-e_v` complete it.
//!
//! An approximate interior-point pass first generates columns in floating
//! point. A floating-point simplex over the nearly tight columns proposes a
//! primal basis, which is inverted exactly. The dual side is recovered from
//! the interior duals: rounded directly, or moved to a vertex of the dual
//! face (first within the suggested cells of equal price, then without)
//! and solved exactly there. Every candidate is checked with exact pricing.
//! When no candidate survives, exact simplex pivots take over, and as a last
//! resort the exact pass restarts from the initial partition with the
//! lexicographic ratio rule, which cannot cycle.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interior::{generate_columns, vertex_constraints, Tight};
use crate::config::{Budget, Meter};
use crate::error::{Error, Result};

/// Supplies improving columns given the current dual prices.
pub trait ColumnOracle {
    /// A column `S` with `Σ_{v∈S} y_v > 1`, or `None` when there is none.
    /// Only called with `y ≥ 0`.
    fn price(&mut self, y: &[BigRational], meter: &mut Meter) -> Result<Option<Vec<usize>>>;

    /// Floating-point candidates for the approximate pass, preferably with
    /// `Σ_{v∈S} y_v > 1`. It may miss columns; returning none simply ends
    /// the approximate pass.
    fn price_approx(&mut self, _y: &[f64], _meter: &mut Meter) -> Result<Vec<Vec<usize>>> {
        Ok(Vec::new())
    }
}

/// Scales nonnegative rationals to integers over their common denominator.
/// Returns `(weights, denominator)` when everything fits in `i128` with room
/// for sums.
pub(crate) fn scale_to_i128(y: &[BigRational]) -> Option<(Vec<i128>, i128)> {
    let lcm = y.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let den = lcm.to_i128()?;
    let weights = y
        .iter()
        .map(|v| (v.numer() * (&lcm / v.denom())).to_i128())
        .collect::<Option<Vec<_>>>()?;
    let headroom = i128::MAX / (y.len() as i128 + 2);
    (den < headroom && weights.iter().all(|w| w.abs() < headroom)).then_some((weights, den))
}

/// Best rational approximation of `x ≥ 0` with denominator at most
/// `max_den`, by continued fractions.
pub(crate) fn rationalize(x: f64, max_den: i64) -> BigRational {
    if !x.is_finite() || x <= 0.0 {
        return BigRational::zero();
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a > i64::MAX as f64 / 2.0 {
            break;
        }
        let a = a as i64;
        let (Some(p2), Some(q2)) = (a.checked_mul(p1).and_then(|v| v.checked_add(p0)), a.checked_mul(q1).and_then(|v| v.checked_add(q0))) else {
            break;
        };
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = r - a as f64;
        if frac < 1e-12 {
            break;
        }
        r = 1.0 / frac;
    }
    if q1 == 0 {
        return BigRational::zero();
    }
    BigRational::new(p1.into(), q1.into())
}

/// Heaviest column of `pool` with weight above one.
fn best_in_pool(pool: &[Vec<usize>], y: &[BigRational]) -> Option<Vec<usize>> {
    match scale_to_i128(y) {
        Some((w, den)) => pool
            .iter()
            .map(|s| (s.iter().map(|&v| w[v]).sum::<i128>(), s))
            .filter(|(total, _)| *total > den)
            .max_by_key(|(total, _)| *total)
            .map(|(_, s)| s.clone()),
        None => pool
            .iter()
            .map(|s| (s.iter().fold(BigRational::zero(), |a, &v| a + &y[v]), s))
            .filter(|(total, _)| total > &BigRational::one())
            .max_by(|a, b| a.0.cmp(&b.0))
            .map(|(_, s)| s.clone()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Column {
    Set(Vec<usize>),
    Surplus(usize),
}

/// Optimal primal and dual solutions of a covering LP.
#[derive(Debug, Clone)]
pub struct CoveringSolution {
    pub value: BigRational,
    /// Columns in the basis with positive weight.
    pub cover: Vec<(Vec<usize>, BigRational)>,
    /// Dual prices; feasible for the packing dual and summing to `value`.
    pub dual: Vec<BigRational>,
    pub pivots: u64,
    pub nodes: u64,
}

fn budget_error(meter: &Meter) -> Error {
    Error::BudgetExceeded {
        nodes: meter.nodes(),
        lower: 0,
        upper: None,
    }
}

/// Entry `B[row][j]` of the basis matrix for basis column `j`.
fn basis_matrix<T: Clone>(n: usize, basis: &[Column], zero: T, one: T, minus_one: T) -> Vec<Vec<T>> {
    let mut a = vec![vec![zero; n]; n];
    for (j, col) in basis.iter().enumerate() {
        match col {
            Column::Set(s) => s.iter().for_each(|&v| a[v][j] = one.clone()),
            Column::Surplus(v) => a[*v][j] = minus_one.clone(),
        }
    }
    a
}

/// Basis inverse by Gauss-Jordan elimination over the rationals.
fn invert_exact(n: usize, basis: &[Column]) -> Option<Vec<Vec<BigRational>>> {
    let mut a = basis_matrix(n, basis, BigRational::zero(), BigRational::one(), -BigRational::one());
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row = vec![BigRational::zero(); n];
            row[i] = BigRational::one();
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let pv = a[col][col].clone();
        if !pv.is_one() {
            a[col].iter_mut().chain(inv[col].iter_mut()).filter(|x| !x.is_zero()).for_each(|x| *x /= &pv);
        }
        let a_support: Vec<usize> = (col..n).filter(|&j| !a[col][j].is_zero()).collect();
        let i_support: Vec<usize> = (0..n).filter(|&j| !inv[col][j].is_zero()).collect();
        let (pa, pi) = (a[col].clone(), inv[col].clone());
        for r in (0..n).filter(|&r| r != col) {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for &j in &a_support {
                let delta = &f * &pa[j];
                a[r][j] -= delta;
            }
            for &j in &i_support {
                let delta = &f * &pi[j];
                inv[r][j] -= delta;
            }
        }
    }
    Some(inv)
}

/// The point where the constraints `tight` hold with equality, solved
/// exactly.
fn vertex_point(rows: &[Vec<f64>], tight: &[Tight]) -> Option<Vec<BigRational>> {
    let k = tight.len();
    let exact = |x: f64| BigRational::from_integer(BigInt::from(x as i64));
    let mut a: Vec<Vec<BigRational>> = tight
        .iter()
        .map(|&t| match t {
            Tight::Row(i) => {
                let mut r: Vec<BigRational> = rows[i].iter().map(|&x| exact(x)).collect();
                r.push(BigRational::one());
                r
            }
            Tight::Zero(c) => {
                let mut r = vec![BigRational::zero(); k + 1];
                r[c] = BigRational::one();
                r
            }
        })
        .collect();
    for col in 0..k {
        let p = (col..k).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let pv = a[col][col].clone();
        a[col].iter_mut().for_each(|x| *x /= &pv);
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                row.iter_mut().zip(&pivot_row).skip(col).for_each(|(x, p)| *x -= &f * p);
            }
        }
    }
    Some(a.into_iter().map(|r| r[k].clone()).collect())
}

/// Basis inverse in floating point with partial pivoting.
fn invert_approx(n: usize, basis: &[Column]) -> Option<Vec<Vec<f64>>> {
    let mut a = basis_matrix(n, basis, 0.0f64, 1.0, -1.0);
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = vec![0.0; n];
            row[i] = 1.0;
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[p][col].abs() < 1e-9 {
            return None;
        }
        a.swap(col, p);
        inv.swap(col, p);
        let pv = a[col][col];
        a[col].iter_mut().chain(inv[col].iter_mut()).for_each(|x| *x /= pv);
        let (pa, pi) = (a[col].clone(), inv[col].clone());
        for r in (0..n).filter(|&r| r != col) {
            let f = a[r][col];
            if f != 0.0 {
                a[r].iter_mut().zip(&pa).for_each(|(x, p)| *x -= f * p);
                inv[r].iter_mut().zip(&pi).for_each(|(x, p)| *x -= f * p);
            }
        }
    }
    Some(inv)
}

/// The starting basis for a partition: position `p` holds the class column
/// if `p` is its class's smallest member, otherwise the surplus of row `p`.
/// Each row of `(x_B | B^-1)` then has a positive leading entry, as the
/// lexicographic rule requires.
fn partition_basis(n: usize, classes: &[Vec<usize>]) -> Result<Vec<Column>> {
    let mut owner = vec![usize::MAX; n];
    for (i, class) in classes.iter().enumerate() {
        for &v in class {
            if v >= n || owner[v] != usize::MAX {
                return Err(Error::InvalidParameter("initial classes must partition the rows".into()));
            }
            owner[v] = i;
        }
    }
    if owner.contains(&usize::MAX) {
        return Err(Error::InvalidParameter("initial classes must cover every row".into()));
    }
    let rep: Vec<usize> = classes.iter().map(|c| *c.iter().min().expect("non-empty class")).collect();
    Ok((0..n)
        .map(|p| {
            if rep[owner[p]] == p {
                let mut s = classes[owner[p]].clone();
                s.sort_unstable();
                Column::Set(s)
            } else {
                Column::Surplus(p)
            }
        })
        .collect())
}

fn direction_of<T, F>(binv: &[Vec<T>], col: &Column, zero: F) -> Vec<T>
where
    T: Clone + std::ops::Neg<Output = T>,
    for<'a> T: std::ops::Add<&'a T, Output = T>,
    F: Fn() -> T,
{
    binv.iter()
        .map(|row| match col {
            Column::Set(s) => s.iter().fold(zero(), |acc, &v| acc + &row[v]),
            Column::Surplus(v) => -row[*v].clone(),
        })
        .collect()
}

/// Floating-point simplex over the fixed columns `pool`, from `basis`.
/// The right-hand side is perturbed so degenerate pivots make progress.
/// Returns the final basis, or `None` after numerical trouble.
fn approximate_basis(n: usize, mut basis: Vec<Column>, pool: &[Vec<usize>], max_pivots: u64) -> Option<Vec<Column>> {
    const EPS: f64 = 1e-9;
    const REINVERT: u64 = 50;
    let rhs: Vec<f64> = (0..n)
        .map(|v| 1.0 + 1e-7 * (1.0 + ((v * 7919) % 997) as f64 / 997.0))
        .collect();
    let mut binv = invert_approx(n, &basis)?;
    for pivots in 0..=max_pivots {
        if pivots % REINVERT == 0 && pivots > 0 {
            binv = invert_approx(n, &basis)?;
        }
        let xb: Vec<f64> = binv.iter().map(|row| row.iter().zip(&rhs).map(|(a, b)| a * b).sum()).collect();
        let mut y = vec![0.0f64; n];
        for (i, col) in basis.iter().enumerate() {
            if matches!(col, Column::Set(_)) {
                y.iter_mut().zip(&binv[i]).for_each(|(a, b)| *a += b);
            }
        }
        let negative = (0..n)
            .filter(|&v| y[v] < -EPS)
            .min_by(|&a, &b| y[a].total_cmp(&y[b]));
        let entering = match negative {
            Some(v) => Column::Surplus(v),
            None => {
                let best = pool
                    .iter()
                    .map(|s| (s.iter().map(|&v| y[v]).sum::<f64>(), s))
                    .filter(|(w, _)| *w > 1.0 + EPS)
                    .max_by(|a, b| a.0.total_cmp(&b.0));
                match best {
                    Some((_, s)) => Column::Set(s.clone()),
                    None => return Some(basis),
                }
            }
        };
        let d = direction_of(&binv, &entering, || 0.0);
        let mut leave: Option<usize> = None;
        for i in (0..n).filter(|&i| d[i] > EPS) {
            let better = match leave {
                None => true,
                Some(b) => {
                    let (ri, rb) = (xb[i].max(0.0) / d[i], xb[b].max(0.0) / d[b]);
                    ri < rb - 1e-12 || (ri <= rb + 1e-12 && d[i] > d[b])
                }
            };
            if better {
                leave = Some(i);
            }
        }
        let r = leave?;
        let pr = d[r];
        binv[r].iter_mut().for_each(|x| *x /= pr);
        let pivot_row = binv[r].clone();
        for i in (0..n).filter(|&i| i != r && d[i] != 0.0) {
            let f = d[i];
            binv[i].iter_mut().zip(&pivot_row).for_each(|(x, p)| *x -= f * p);
        }
        basis[r] = entering;
    }
    Some(basis)
}

struct Revised {
    n: usize,
    basis: Vec<Column>,
    binv: Vec<Vec<BigRational>>,
    xb: Vec<BigRational>,
}

impl Revised {
    /// `None` if the basis is singular or not primal feasible.
    fn new(n: usize, basis: Vec<Column>) -> Option<Self> {
        let binv = invert_exact(n, &basis)?;
        let xb: Vec<BigRational> = binv
            .iter()
            .map(|row| row.iter().fold(BigRational::zero(), |acc, x| acc + x))
            .collect();
        if xb.iter().any(|x| x.is_negative()) {
            return None;
        }
        Some(Revised { n, basis, binv, xb })
    }

    fn objective(&self) -> BigRational {
        self.basis
            .iter()
            .zip(&self.xb)
            .filter(|(c, _)| matches!(c, Column::Set(_)))
            .fold(BigRational::zero(), |acc, (_, x)| acc + x)
    }

    fn duals(&self) -> Vec<BigRational> {
        let mut y = vec![BigRational::zero(); self.n];
        for (i, col) in self.basis.iter().enumerate() {
            if matches!(col, Column::Set(_)) {
                for (yj, b) in y.iter_mut().zip(&self.binv[i]) {
                    if !b.is_zero() {
                        *yj += b;
                    }
                }
            }
        }
        y
    }

    fn direction(&self, col: &Column) -> Vec<BigRational> {
        direction_of(&self.binv, col, BigRational::zero)
    }

    fn leaving(&self, d: &[BigRational]) -> Option<usize> {
        let mut best: Option<usize> = None;
        for i in (0..self.n).filter(|&i| d[i].is_positive()) {
            let Some(b) = best else {
                best = Some(i);
                continue;
            };
            let lhs = &self.xb[i] * &d[b];
            let rhs = &self.xb[b] * &d[i];
            let ord = lhs.cmp(&rhs).then_with(|| {
                (0..self.n)
                    .map(|j| (&self.binv[i][j] * &d[b]).cmp(&(&self.binv[b][j] * &d[i])))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
            if ord.is_lt() {
                best = Some(i);
            }
        }
        best
    }

    fn pivot(&mut self, r: usize, d: &[BigRational], col: Column) {
        let pr = d[r].clone();
        for x in self.binv[r].iter_mut().filter(|x| !x.is_zero()) {
            *x /= &pr;
        }
        self.xb[r] /= &pr;
        let pivot_row = self.binv[r].clone();
        let support: Vec<usize> = (0..self.n).filter(|&j| !pivot_row[j].is_zero()).collect();
        let xr = self.xb[r].clone();
        for i in 0..self.n {
            if i == r || d[i].is_zero() {
                continue;
            }
            let f = &d[i];
            for &j in &support {
                let delta = f * &pivot_row[j];
                self.binv[i][j] -= delta;
            }
            let delta = f * &xr;
            self.xb[i] -= delta;
        }
        self.basis[r] = col;
    }
}



/// Exact pivoting until optimal; columns of `pool` are priced before the
/// oracle is asked. `Ok(None)` once `max_pivots` pivots have been made.
fn exact_pass<O: ColumnOracle>(
    lp: &mut Revised,
    pool: &[Vec<usize>],
    oracle: &mut O,
    meter: &mut Meter,
    pivots: &mut u64,
    max_pivots: Option<u64>,
) -> Result<Option<Vec<BigRational>>> {
    let start = *pivots;
    loop {
        let y = lp.duals();
        let entering = match y.iter().position(|v| v.is_negative()) {
            Some(v) => Column::Surplus(v),
            None => {
                let found = match best_in_pool(pool, &y) {
                    Some(s) => Some(s),
                    None => oracle.price(&y, meter)?,
                };
                match found {
                    Some(mut s) => {
                        s.sort_unstable();
                        Column::Set(s)
                    }
                    None => return Ok(Some(y)),
                }
            }
        };
        if max_pivots.is_some_and(|m| *pivots - start >= m) {
            return Ok(None);
        }
        meter.tick().map_err(|_| budget_error(meter))?;
        let d = lp.direction(&entering);
        let r = lp
            .leaving(&d)
            .ok_or_else(|| Error::InvalidParameter("covering LP reported unbounded".into()))?;
        lp.pivot(r, &d, entering);
        *pivots += 1;
    }
}

const VERTEX_ROUNDS: usize = 40;

enum Violation {
    Column(Vec<usize>),
    Other,
}

/// Checks that `y` is dual feasible with objective `primal`, reporting a
/// violated column when there is one.
fn is_optimal_dual<O: ColumnOracle>(
    y: &[BigRational],
    primal: &BigRational,
    pool: &[Vec<usize>],
    oracle: &mut O,
    meter: &mut Meter,
) -> Result<Option<Violation>> {
    if y.iter().any(|v| v.is_negative()) || y.iter().fold(BigRational::zero(), |acc, v| acc + v) != *primal {
        return Ok(Some(Violation::Other));
    }
    if let Some(s) = best_in_pool(pool, y) {
        return Ok(Some(Violation::Column(s)));
    }
    Ok(oracle.price(y, meter)?.map(Violation::Column))
}

/// Solves the covering LP on `n` rows, starting from a partition of the rows
/// into `classes` (each class must be a valid column). `cells[v]` groups
/// rows that are expected to share a dual price in some optimal solution;
/// the grouping is only a hint and every answer is checked exactly.
pub fn solve_covering<O: ColumnOracle>(
    n: usize,
    classes: &[Vec<usize>],
    cells: &[usize],
    oracle: &mut O,
    budget: &Budget,
) -> Result<CoveringSolution> {
    let start = partition_basis(n, classes)?;
    let mut meter = budget.meter();
    let approx = generate_columns(n, classes, oracle, &mut meter, 10 * n + 100)?;
    let pool = approx.as_ref().map_or_else(Vec::new, |a| a.tight(1e-6));
    let mut pivots = 0u64;
    let mut solved = None;
    if let Some(approx) = approx.filter(|_| !pool.is_empty()) {
        let warm = approximate_basis(n, start.clone(), &pool, 50 * n as u64 + 500).and_then(|b| Revised::new(n, b));
        if let Some(mut lp) = warm {
            // An exact optimal dual is usually either the rounded interior
            // duals or a nearby vertex of the dual face.
            let primal = lp.objective();
            let rounded: Vec<BigRational> = approx.dual.iter().map(|&v| rationalize(v, 10_000)).collect();
            let mut accepted = None;
            if is_optimal_dual(&rounded, &primal, &approx.columns, oracle, &mut meter)?.is_none() {
                accepted = Some(rounded);
            }
            let mut columns = approx.columns.clone();
            let identity: Vec<usize> = (0..n).collect();
            let mut partitions = vec![identity];
            if cells.iter().max().is_some_and(|&c| c + 1 < n) {
                partitions.insert(0, cells.to_vec());
            }
            for cell in &partitions {
                if accepted.is_some() {
                    break;
                }
                let k = cell.iter().max().map_or(0, |&c| c + 1);
                let mut size = vec![0.0f64; k];
                let mut start = vec![0.0f64; k];
                for v in 0..n {
                    size[cell[v]] += 1.0;
                    start[cell[v]] += approx.dual[v];
                }
                start.iter_mut().zip(&size).for_each(|(z, s)| *z /= s);
                for _ in 0..VERTEX_ROUNDS {
                    let rows: Vec<Vec<f64>> = columns
                        .iter()
                        .map(|s| {
                            let mut r = vec![0.0; k];
                            s.iter().for_each(|&v| r[cell[v]] += 1.0);
                            r
                        })
                        .collect();
                    let Some(z) = vertex_constraints(&rows, &size, &start).and_then(|tight| vertex_point(&rows, &tight)) else {
                        break;
                    };
                    let y: Vec<BigRational> = (0..n).map(|v| z[cell[v]].clone()).collect();
                    match is_optimal_dual(&y, &primal, &columns, oracle, &mut meter)? {
                        None => {
                            accepted = Some(y);
                            break;
                        }
                        Some(Violation::Column(s)) => {
                            // Columns near the violated one are likely missing too.
                            let approx_y: Vec<f64> = y.iter().map(|v| v.to_f64().unwrap_or(0.0)).collect();
                            let mut extra = oracle.price_approx(&approx_y, &mut meter)?;
                            extra.push(s);
                            for mut c in extra {
                                c.sort_unstable();
                                if !columns.contains(&c) {
                                    columns.push(c);
                                }
                            }
                        }
                        Some(Violation::Other) => break,
                    }
                }
            }
            if let Some(y) = accepted {
                solved = Some((lp, y));
            } else if let Some(y) = exact_pass(&mut lp, &pool, oracle, &mut meter, &mut pivots, Some(5 * n as u64 + 100))? {
                solved = Some((lp, y));
            }
        }
    }
    let (lp, y) = match solved {
        Some(s) => s,
        None => {
            let mut lp = Revised::new(n, start).expect("partition basis is invertible and feasible");
            let y = exact_pass(&mut lp, &pool, oracle, &mut meter, &mut pivots, None)?.expect("no pivot cap");
            (lp, y)
        }
    };
    let value = y.iter().fold(BigRational::zero(), |acc, v| acc + v);
    let cover = lp
        .basis
        .iter()
        .zip(&lp.xb)
        .filter_map(|(c, x)| match c {
            Column::Set(s) if x.is_positive() => Some((s.clone(), x.clone())),
            _ => None,
        })
        .collect();
    Ok(CoveringSolution {
        value,
        cover,
        dual: y,
        pivots,
        nodes: meter.nodes(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Prices over an explicit column list.
    struct Listed(Vec<Vec<usize>>);

    impl ColumnOracle for Listed {
        fn price(&mut self, y: &[BigRational], _: &mut Meter) -> Result<Option<Vec<usize>>> {
            let one = BigRational::one();
            Ok(self
                .0
                .iter()
                .map(|s| (s.iter().fold(BigRational::zero(), |a, &v| a + &y[v]), s))
                .filter(|(w, _)| *w > one)
                .max_by(|a, b| a.0.cmp(&b.0))
                .map(|(_, s)| s.clone()))
        }

        fn price_approx(&mut self, _: &[f64], _: &mut Meter) -> Result<Vec<Vec<usize>>> {
            Ok(self.0.clone())
        }
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn five_cycle_cover() {
        // Maximal independent sets of C5.
        let sets = vec![vec![0, 2], vec![0, 3], vec![1, 3], vec![1, 4], vec![2, 4]];
        let classes = vec![vec![0, 2], vec![1, 3], vec![4]];
        let sol = solve_covering(5, &classes, &[0; 5], &mut Listed(sets), &Budget::unlimited()).unwrap();
        assert_eq!(sol.value, q(5, 2));
        assert!(sol.dual.iter().all(|y| *y >= BigRational::zero()));
        let total = sol.cover.iter().fold(BigRational::zero(), |a, (_, x)| a + x);
        assert_eq!(total, q(5, 2));
    }

    #[test]
    fn singleton_columns_only() {
        let classes: Vec<Vec<usize>> = (0..4).map(|v| vec![v]).collect();
        let sol = solve_covering(4, &classes, &[0; 4], &mut Listed(classes.clone()), &Budget::unlimited()).unwrap();
        assert_eq!(sol.value, q(4, 1));
        assert_eq!(sol.pivots, 0);
    }

    #[test]
    fn rationalize_recovers_small_fractions() {
        assert_eq!(rationalize(1.0 / 36.0 + 1e-10, 10_000), q(1, 36));
        assert_eq!(rationalize(2.5, 10_000), q(5, 2));
        assert_eq!(rationalize(-1e-12, 10_000), q(0, 1));
        assert_eq!(rationalize(0.0, 10_000), q(0, 1));
        assert_eq!(rationalize(3.0, 10_000), q(3, 1));
    }

    #[test]
    fn rejects_bad_partition() {
        let r = solve_covering(3, &[vec![0, 1]], &[0; 3], &mut Listed(vec![]), &Budget::unlimited());
        assert!(r.is_err());
        let r = solve_covering(2, &[vec![0, 1], vec![1]], &[0; 2], &mut Listed(vec![]), &Budget::unlimited());
        assert!(r.is_err());
    }
}
