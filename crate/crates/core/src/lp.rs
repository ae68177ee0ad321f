//! Dense linear feasibility via phase-1 simplex.
//!
//! Decides whether `{x : A x (≤|=) b, x ≥ 0}` is non-empty and returns a
//! verified witness or a verified Farkas certificate `y` with
//! `yᵀA ≥ 0`, `yᵀb < 0` (`y ≥ 0` on inequality rows). Pivoting follows
//! Bland's rule so the result is deterministic and cycling cannot occur.

use crate::error::{Error, Result};

/// Entries at or below this magnitude are never used as pivots.
pub const PIVOT_TOL: f64 = 1e-11;
/// Constraint residual allowed on a returned witness.
pub const FEAS_TOL: f64 = 1e-8;
/// Slack allowed on `yᵀA ≥ 0` for a returned certificate.
pub const CERT_TOL: f64 = 1e-10;

pub const MAX_VARS: usize = 50;
pub const MAX_ROWS: usize = 200;

const MAX_PIVOTS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityProblem {
    nvars: usize,
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    senses: Vec<Sense>,
    nonneg: bool,
}

impl FeasibilityProblem {
    /// An empty system in `nvars` variables. With `nonneg` every variable is
    /// constrained to be `≥ 0`; otherwise variables are free.
    pub fn new(nvars: usize, nonneg: bool) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::domain("feasibility problem needs a variable"));
        }
        if nvars > MAX_VARS {
            return Err(Error::Resource(format!(
                "{nvars} variables exceed the limit of {MAX_VARS}"
            )));
        }
        Ok(FeasibilityProblem {
            nvars,
            rows: Vec::new(),
            rhs: Vec::new(),
            senses: Vec::new(),
            nonneg,
        })
    }

    /// Builds a problem from a full constraint matrix.
    pub fn from_parts(
        a: Vec<Vec<f64>>,
        b: Vec<f64>,
        senses: Vec<Sense>,
        nonneg: bool,
    ) -> Result<Self> {
        if a.len() != b.len() || a.len() != senses.len() {
            return Err(Error::domain(format!(
                "{} constraint rows but {} right-hand sides and {} senses",
                a.len(),
                b.len(),
                senses.len()
            )));
        }
        let nvars = a.first().map_or(0, Vec::len);
        let mut prob = Self::new(nvars, nonneg)?;
        for ((row, rhs), sense) in a.into_iter().zip(b).zip(senses) {
            prob.add_row(row, sense, rhs)?;
        }
        Ok(prob)
    }

    pub fn add_row(&mut self, coeffs: Vec<f64>, sense: Sense, rhs: f64) -> Result<()> {
        if coeffs.len() != self.nvars {
            return Err(Error::domain(format!(
                "constraint has {} coefficients, expected {}",
                coeffs.len(),
                self.nvars
            )));
        }
        if !rhs.is_finite() || coeffs.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("constraint entries must be finite"));
        }
        if self.rows.len() == MAX_ROWS {
            return Err(Error::Resource(format!(
                "more than {MAX_ROWS} constraint rows"
            )));
        }
        self.rows.push(coeffs);
        self.rhs.push(rhs);
        self.senses.push(sense);
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    pub fn senses(&self) -> &[Sense] {
        &self.senses
    }

    pub fn nonneg(&self) -> bool {
        self.nonneg
    }

    /// Largest constraint violation of `x` (including sign constraints).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let mut worst = 0.0f64;
        if self.nonneg {
            for &v in x {
                worst = worst.max(-v);
            }
        }
        for ((row, &b), sense) in self.rows.iter().zip(&self.rhs).zip(&self.senses) {
            let lhs: f64 = row.iter().zip(x).map(|(a, v)| a * v).sum();
            let gap = match sense {
                Sense::Le => lhs - b,
                Sense::Eq => (lhs - b).abs(),
            };
            worst = worst.max(gap);
        }
        worst
    }

    /// Checks the Farkas conditions on `y` at the stated tolerances.
    pub fn is_farkas_certificate(&self, y: &[f64]) -> bool {
        if y.len() != self.nrows() {
            return false;
        }
        let sign_ok = y
            .iter()
            .zip(&self.senses)
            .all(|(&v, s)| *s == Sense::Eq || v >= -CERT_TOL);
        let columns_ok = (0..self.nvars).all(|j| {
            let c: f64 = self.rows.iter().zip(y).map(|(r, v)| r[j] * v).sum();
            if self.nonneg {
                c >= -CERT_TOL
            } else {
                c.abs() <= CERT_TOL
            }
        });
        let yb: f64 = y.iter().zip(&self.rhs).map(|(a, b)| a * b).sum();
        sign_ok && columns_ok && yb < -FEAS_TOL
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeasibilityStatus {
    Feasible,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityResult {
    pub status: FeasibilityStatus,
    pub witness: Option<Vec<f64>>,
    pub farkas_certificate: Option<Vec<f64>>,
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        self.status == FeasibilityStatus::Feasible
    }
}

/// Row kind after flipping rows with negative right-hand side.
#[derive(Clone, Copy, PartialEq)]
enum RowKind {
    Le,
    Ge,
    Eq,
}

struct Tableau {
    /// `m` rows of `ncols + 1` entries; the last entry is the rhs.
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
    cost: Vec<f64>,
    ncols: usize,
}

impl Tableau {
    fn reduced_cost(&self, j: usize) -> f64 {
        let dual: f64 = self
            .basis
            .iter()
            .zip(&self.t)
            .map(|(&b, row)| self.cost[b] * row[j])
            .sum();
        self.cost[j] - dual
    }

    fn objective(&self) -> f64 {
        self.basis
            .iter()
            .zip(&self.t)
            .map(|(&b, row)| self.cost[b] * row[self.ncols])
            .sum()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.t[r][c];
        for v in self.t[r].iter_mut() {
            *v /= piv;
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (v, p) in row.iter_mut().zip(&prow) {
                    *v -= f * p;
                }
                row[c] = 0.0;
            }
        }
        self.basis[r] = c;
    }

    /// Bland's rule: lowest-index improving column, ratio ties broken by the
    /// lowest basic index.
    fn run(&mut self) -> Result<()> {
        for _ in 0..MAX_PIVOTS {
            let Some(enter) = (0..self.ncols).find(|&j| self.reduced_cost(j) < -PIVOT_TOL) else {
                return Ok(());
            };
            let mut leave: Option<(usize, f64)> = None;
            for (i, row) in self.t.iter().enumerate() {
                let a = row[enter];
                if a <= PIVOT_TOL {
                    continue;
                }
                let ratio = row[self.ncols].max(0.0) / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr - 1e-15
                            || (ratio <= lr + 1e-15 && self.basis[i] < self.basis[li])
                        {
                            Some((i, ratio))
                        } else {
                            Some((li, lr))
                        }
                    }
                };
            }
            let Some((r, _)) = leave else {
                return Err(Error::Solver(format!(
                    "no admissible pivot in column {enter} (entries below {PIVOT_TOL:e})"
                )));
            };
            self.pivot(r, enter);
        }
        Err(Error::Solver(format!(
            "simplex did not terminate within {MAX_PIVOTS} pivots"
        )))
    }
}

/// Phase-1 simplex feasibility test with verified witness or certificate.
pub fn solve_feasibility(prob: &FeasibilityProblem) -> Result<FeasibilityResult> {
    let nx = if prob.nonneg {
        prob.nvars
    } else {
        2 * prob.nvars
    };
    let m = prob.nrows();
    if m == 0 {
        return Ok(FeasibilityResult {
            status: FeasibilityStatus::Feasible,
            witness: Some(vec![0.0; prob.nvars]),
            farkas_certificate: None,
        });
    }

    // Normalize every row to a non-negative rhs.
    let mut sign = vec![1.0; m];
    let mut kinds = Vec::with_capacity(m);
    for i in 0..m {
        let flip = prob.rhs[i] < 0.0;
        if flip {
            sign[i] = -1.0;
        }
        kinds.push(match (prob.senses[i], flip) {
            (Sense::Eq, _) => RowKind::Eq,
            (Sense::Le, false) => RowKind::Le,
            (Sense::Le, true) => RowKind::Ge,
        });
    }
    let n_slack = kinds.iter().filter(|k| **k != RowKind::Eq).count();
    let n_art = kinds.iter().filter(|k| **k != RowKind::Le).count();
    let ncols = nx + n_slack + n_art;

    let mut t = vec![vec![0.0; ncols + 1]; m];
    let mut basis = vec![0usize; m];
    let mut cost = vec![0.0; ncols];
    let mut unit_col = vec![0usize; m];
    let (mut next_slack, mut next_art) = (nx, nx + n_slack);
    for i in 0..m {
        let row = &prob.rows[i];
        for j in 0..prob.nvars {
            t[i][j] = sign[i] * row[j];
            if !prob.nonneg {
                t[i][prob.nvars + j] = -sign[i] * row[j];
            }
        }
        t[i][ncols] = sign[i] * prob.rhs[i];
        match kinds[i] {
            RowKind::Le => {
                t[i][next_slack] = 1.0;
                basis[i] = next_slack;
                unit_col[i] = next_slack;
                next_slack += 1;
            }
            RowKind::Ge => {
                t[i][next_slack] = -1.0;
                next_slack += 1;
                t[i][next_art] = 1.0;
                cost[next_art] = 1.0;
                basis[i] = next_art;
                unit_col[i] = next_art;
                next_art += 1;
            }
            RowKind::Eq => {
                t[i][next_art] = 1.0;
                cost[next_art] = 1.0;
                basis[i] = next_art;
                unit_col[i] = next_art;
                next_art += 1;
            }
        }
    }

    let mut tab = Tableau {
        t,
        basis,
        cost,
        ncols,
    };
    tab.run()?;
    let infeasibility = tab.objective();

    if infeasibility <= FEAS_TOL {
        let mut full = vec![0.0; ncols];
        for (i, &b) in tab.basis.iter().enumerate() {
            full[b] = tab.t[i][ncols].max(0.0);
        }
        let x: Vec<f64> = if prob.nonneg {
            full[..prob.nvars].to_vec()
        } else {
            (0..prob.nvars)
                .map(|j| full[j] - full[prob.nvars + j])
                .collect()
        };
        let viol = prob.violation(&x);
        if viol > FEAS_TOL {
            return Err(Error::Solver(format!(
                "phase-1 optimum {infeasibility:e} but witness violates constraints by {viol:e}"
            )));
        }
        return Ok(FeasibilityResult {
            status: FeasibilityStatus::Feasible,
            witness: Some(x),
            farkas_certificate: None,
        });
    }

    // Dual prices π = c_Bᵀ B⁻¹; column `unit_col[i]` of the tableau is B⁻¹ e_i.
    let y: Vec<f64> = (0..m)
        .map(|i| {
            let pi: f64 = tab
                .basis
                .iter()
                .zip(&tab.t)
                .map(|(&b, row)| tab.cost[b] * row[unit_col[i]])
                .sum();
            -pi * sign[i]
        })
        .collect();
    if !prob.is_farkas_certificate(&y) {
        return Err(Error::Solver(format!(
            "phase-1 optimum {infeasibility:e} but the dual certificate fails verification"
        )));
    }
    Ok(FeasibilityResult {
        status: FeasibilityStatus::Infeasible,
        witness: None,
        farkas_certificate: Some(y),
    })
}
