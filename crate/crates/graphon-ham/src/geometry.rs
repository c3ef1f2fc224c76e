//! Exact rational rank and cone membership.
//!
//! Both membership tests reduce to small linear programs in standard form,
//! solved by a dense two-phase simplex with Bland's rule. Nothing here uses
//! floating point.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("rows have different lengths".into()));
        }
        let n = rows.len();
        Ok(RationalMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(Rational::zero(), |acc, j| acc + self.get(i, j) * &v[j]))
            .collect()
    }
}

/// Rank over the rationals by Gaussian elimination.
pub fn rank(m: &RationalMatrix) -> usize {
    let mut a: Vec<Vec<Rational>> = (0..m.rows)
        .map(|i| (0..m.cols).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut r = 0;
    for col in 0..m.cols {
        let Some(pivot) = (r..m.rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, pivot);
        let inv = a[r][col].recip();
        for j in col..m.cols {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..m.rows {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..m.cols {
                    let sub = &f * &a[r][j];
                    a[i][j] -= sub;
                }
            }
        }
        r += 1;
        if r == m.rows {
            break;
        }
    }
    r
}

/// Nonnegative coefficients `c` with `Z c = x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeCertificate {
    pub coefficients: Vec<Rational>,
    /// Every coefficient is strictly positive.
    pub strict: bool,
}

impl ConeCertificate {
    fn new(coefficients: Vec<Rational>) -> Self {
        let strict = coefficients.iter().all(|c| c.is_positive());
        ConeCertificate { coefficients, strict }
    }
}

fn check_dims(z: &RationalMatrix, x: &[Rational]) -> Result<()> {
    if z.rows != x.len() {
        return Err(Error::Dimension(format!(
            "matrix has {} rows but the point has {} entries",
            z.rows,
            x.len()
        )));
    }
    Ok(())
}

/// Is `x` in the cone generated by the columns of `z`?
pub fn cone_membership(z: &RationalMatrix, x: &[Rational]) -> Result<Option<ConeCertificate>> {
    check_dims(z, x)?;
    let b: Vec<Rational> = x.to_vec();
    let cost = vec![Rational::zero(); z.cols];
    let out = solve(z, &b, &cost);
    Ok(match out.status {
        LpStatus::Optimal { solution, .. } => Some(ConeCertificate::new(solution)),
        LpStatus::Infeasible => None,
        LpStatus::Unbounded => unreachable!("a zero objective is bounded"),
    })
}

/// Result of `max t` subject to `Z c = x`, `c_j ≥ t`, `t ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxMinCoefficient {
    /// `None` when `x` is not in the cone at all.
    pub t: Option<Rational>,
    pub coefficients: Vec<Rational>,
    pub pivots: usize,
}

/// Maximizes the smallest coefficient of a representation `x = Z c`.
///
/// Substituting `c = t𝟙 + d` gives the standard-form program
/// `max t` over `t, d ≥ 0` with `(Z𝟙) t + Z d = x`. It is bounded whenever
/// `z` has a nonzero column, since every entry of `Z c` grows with `t`.
pub fn max_min_coefficient(z: &RationalMatrix, x: &[Rational]) -> Result<MaxMinCoefficient> {
    check_dims(z, x)?;
    let k = z.cols;
    let a = RationalMatrix::from_fn(z.rows, k + 1, |i, j| {
        if j == 0 {
            (0..k).fold(Rational::zero(), |acc, c| acc + z.get(i, c))
        } else {
            z.get(i, j - 1).clone()
        }
    });
    let mut cost = vec![Rational::zero(); k + 1];
    cost[0] = -Rational::one();
    let out = solve(&a, x, &cost);
    Ok(match out.status {
        LpStatus::Optimal { solution, .. } => {
            let t = solution[0].clone();
            let coefficients = solution[1..].iter().map(|d| d + &t).collect();
            MaxMinCoefficient {
                t: Some(t),
                coefficients,
                pivots: out.pivots,
            }
        }
        LpStatus::Infeasible => MaxMinCoefficient {
            t: None,
            coefficients: Vec::new(),
            pivots: out.pivots,
        },
        // Only possible when every column of z is zero, i.e. there are no
        // generators worth keeping strictly positive.
        LpStatus::Unbounded => MaxMinCoefficient {
            t: Some(Rational::one()),
            coefficients: vec![Rational::one(); k],
            pivots: out.pivots,
        },
    })
}

/// Is `x` in the relative interior of the cone generated by the columns of
/// `z`? Holds iff some representation has every coefficient positive.
pub fn relative_interior_membership(z: &RationalMatrix, x: &[Rational]) -> Result<Option<ConeCertificate>> {
    check_dims(z, x)?;
    if z.cols == 0 {
        // The cone is {0}, which is its own relative interior.
        return Ok(x.iter().all(|v| v.is_zero()).then(|| ConeCertificate::new(Vec::new())));
    }
    let r = max_min_coefficient(z, x)?;
    Ok(match r.t {
        Some(t) if t.is_positive() => Some(ConeCertificate::new(r.coefficients)),
        _ => None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum LpStatus {
    Optimal {
        solution: Vec<Rational>,
        #[allow(dead_code)]
        value: Rational,
    },
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub(crate) struct LpOutcome {
    pub status: LpStatus,
    pub pivots: usize,
}

/// Minimizes `cost·v` subject to `a v = b`, `v ≥ 0`.
pub(crate) fn solve(a: &RationalMatrix, b: &[Rational], cost: &[Rational]) -> LpOutcome {
    let (m, n) = (a.rows, a.cols);
    // Tableau columns: n structural, m artificial, then the right-hand side.
    let width = n + m + 1;
    let rhs = n + m;
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let flip = b[i].is_negative();
            let mut row = Vec::with_capacity(width);
            for j in 0..n {
                row.push(if flip { -a.get(i, j) } else { a.get(i, j).clone() });
            }
            for k in 0..m {
                row.push(if k == i { Rational::one() } else { Rational::zero() });
            }
            row.push(if flip { -&b[i] } else { b[i].clone() });
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut pivots = 0usize;

    // Phase I: minimize the sum of the artificials.
    let phase1: Vec<Rational> = (0..n + m)
        .map(|j| if j >= n { Rational::one() } else { Rational::zero() })
        .collect();
    let status = run_simplex(&mut t, &mut basis, &phase1, n + m, &mut pivots);
    debug_assert!(status, "phase I is bounded below by zero");
    let infeasibility = basis
        .iter()
        .enumerate()
        .filter(|(_, &v)| v >= n)
        .fold(Rational::zero(), |acc, (i, _)| acc + &t[i][rhs]);
    if infeasibility.is_positive() {
        return LpOutcome {
            status: LpStatus::Infeasible,
            pivots,
        };
    }

    // Drive remaining artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut basis, i, j);
                pivots += 1;
            } else {
                t.remove(i);
                basis.remove(i);
                continue;
            }
        }
        i += 1;
    }

    // Phase II over the structural columns only.
    let mut phase2 = cost.to_vec();
    phase2.extend(std::iter::repeat_n(Rational::zero(), m));
    if !run_simplex(&mut t, &mut basis, &phase2, n, &mut pivots) {
        return LpOutcome {
            status: LpStatus::Unbounded,
            pivots,
        };
    }
    let mut solution = vec![Rational::zero(); n];
    for (i, &v) in basis.iter().enumerate() {
        if v < n {
            solution[v] = t[i][rhs].clone();
        }
    }
    let value = (0..n).fold(Rational::zero(), |acc, j| acc + &cost[j] * &solution[j]);
    LpOutcome {
        status: LpStatus::Optimal { solution, value },
        pivots,
    }
}

/// Bland's rule on a tableau already in basic form. Columns `>= enter_limit`
/// never enter. Returns false if the objective is unbounded.
fn run_simplex(
    t: &mut [Vec<Rational>],
    basis: &mut [usize],
    cost: &[Rational],
    enter_limit: usize,
    pivots: &mut usize,
) -> bool {
    let rhs = t.first().map_or(0, |r| r.len() - 1);
    loop {
        // Reduced cost r_j = c_j − Σ_i c_{basis[i]} t[i][j].
        let entering = (0..enter_limit).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut r = cost[j].clone();
            for (i, &bv) in basis.iter().enumerate() {
                if !cost[bv].is_zero() && !t[i][j].is_zero() {
                    r -= &cost[bv] * &t[i][j];
                }
            }
            r.is_negative()
        });
        let Some(j) = entering else {
            return true;
        };
        let mut best: Option<(usize, Rational)> = None;
        for i in 0..t.len() {
            if t[i][j].is_positive() {
                let ratio = &t[i][rhs] / &t[i][j];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = best else {
            return false;
        };
        pivot(t, basis, row, j);
        *pivots += 1;
    }
}

fn pivot(t: &mut [Vec<Rational>], basis: &mut [usize], row: usize, col: usize) {
    let inv = t[row][col].recip();
    for v in t[row].iter_mut() {
        if !v.is_zero() {
            *v *= &inv;
        }
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        for (v, p) in r.iter_mut().zip(pivot_row.iter()) {
            if !p.is_zero() {
                *v -= &f * p;
            }
        }
    }
    basis[row] = col;
}
