//! Exact linear-program feasibility: phase-1 simplex over the rationals with
//! Bland's anti-cycling rule.

use super::matrix::RatMatrix;
use super::rat::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Debug, thiserror::Error)]
pub enum LpError {
    #[error("dimension mismatch: {rows} equality rows but {rhs} right-hand sides")]
    DimensionMismatch { rows: usize, rhs: usize },
    #[error("equalities have {cols} columns but {nonneg_vars} nonnegative variables declared")]
    VariableCountMismatch { cols: usize, nonneg_vars: usize },
}

/// Searches for x ≥ 0 with `equalities`·x = `rhs`. Returns a feasible basic
/// solution if one exists. All arithmetic is exact; Bland's rule (lowest
/// eligible index for both entering and leaving variables) guarantees
/// termination without cycling.
pub fn lp_feasible(
    equalities: &RatMatrix,
    rhs: &[Rat],
    nonneg_vars: usize,
) -> Result<Option<Vec<Rat>>, LpError> {
    let m = equalities.rows();
    let n = equalities.cols();
    if rhs.len() != m {
        return Err(LpError::DimensionMismatch { rows: m, rhs: rhs.len() });
    }
    if n != nonneg_vars {
        return Err(LpError::VariableCountMismatch { cols: n, nonneg_vars });
    }

    // Tableau columns: n originals, m artificials, 1 right-hand side.
    let width = n + m + 1;
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<Rat> = Vec::with_capacity(width);
        let flip = rhs[i].is_negative();
        for j in 0..n {
            let v = equalities[(i, j)].clone();
            row.push(if flip { -v } else { v });
        }
        for k in 0..m {
            row.push(if k == i { Rat::one() } else { Rat::zero() });
        }
        row.push(if flip { -rhs[i].clone() } else { rhs[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1: minimize the sum of artificial variables.
    let cost = |var: usize| -> bool { var >= n };
    let mut iterations = 0usize;
    // Bland's rule visits each basis at most once; this bound is generous.
    let max_iterations = 2_000_000usize;
    loop {
        iterations += 1;
        assert!(iterations <= max_iterations, "simplex iteration bound exceeded");

        // Reduced costs r_j = c_j − Σ_i c_{basis(i)}·T[i][j].
        let mut entering: Option<usize> = None;
        for j in 0..n + m {
            let mut r = if cost(j) { Rat::one() } else { Rat::zero() };
            for i in 0..m {
                if cost(basis[i]) && !t[i][j].is_zero() {
                    r -= t[i][j].clone();
                }
            }
            if r.is_negative() {
                entering = Some(j);
                break;
            }
        }
        let Some(j) = entering else { break };

        // Ratio test; ties broken by the smallest basis variable index.
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..m {
            if t[i][j].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][j];
                let better = match &best {
                    None => true,
                    Some(b) => &ratio < b || (&ratio == b && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let i = leave.expect("phase-1 objective is bounded below; a pivot row must exist");

        // Pivot on (i, j).
        let pivot = t[i][j].clone();
        for v in t[i].iter_mut() {
            *v /= pivot.clone();
        }
        for r in 0..m {
            if r != i && !t[r][j].is_zero() {
                let factor = t[r][j].clone();
                for c in 0..width {
                    let delta = &factor * &t[i][c];
                    t[r][c] -= delta;
                }
            }
        }
        basis[i] = j;
    }

    // Feasible iff every artificial ends at zero.
    let residual: Rat = (0..m)
        .filter(|&i| cost(basis[i]))
        .map(|i| t[i][width - 1].clone())
        .sum();
    if !residual.is_zero() {
        return Ok(None);
    }
    let mut x = vec![Rat::zero(); n];
    for i in 0..m {
        if basis[i] < n {
            x[basis[i]] = t[i][width - 1].clone();
        }
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::super::rat::{rat, rint};
    use super::*;

    #[test]
    fn single_equation_feasible() {
        let a = RatMatrix::from_ints(1, 2, &[1, 1], 1);
        let x = lp_feasible(&a, &[rint(1)], 2).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x), vec![rint(1)]);
        assert!(x.iter().all(|v| !v.is_negative()));
    }

    #[test]
    fn negative_rhs_feasible() {
        let a = RatMatrix::from_ints(1, 2, &[1, -1], 1);
        let x = lp_feasible(&a, &[rint(-1)], 2).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x), vec![rint(-1)]);
        assert!(x.iter().all(|v| !v.is_negative()));
    }

    #[test]
    fn infeasible_system() {
        // x1 + x2 = -1 has no nonnegative solution
        let a = RatMatrix::from_ints(1, 2, &[1, 1], 1);
        assert!(lp_feasible(&a, &[rint(-1)], 2).unwrap().is_none());
        // x = 1 and x = 2 simultaneously
        let b = RatMatrix::from_ints(2, 1, &[1, 1], 1);
        assert!(lp_feasible(&b, &[rint(1), rint(2)], 1).unwrap().is_none());
    }

    #[test]
    fn rational_coefficients() {
        let a = RatMatrix::new(2, 3, vec![rat(1, 2), rint(1), rint(0), rint(0), rat(1, 3), rint(1)]);
        let rhs = [rat(5, 2), rat(4, 3)];
        let x = lp_feasible(&a, &rhs, 3).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x), rhs.to_vec());
        assert!(x.iter().all(|v| !v.is_negative()));
    }

    #[test]
    fn dimension_errors() {
        let a = RatMatrix::from_ints(1, 2, &[1, 1], 1);
        assert!(lp_feasible(&a, &[rint(1), rint(2)], 2).is_err());
        assert!(lp_feasible(&a, &[rint(1)], 3).is_err());
    }
}
