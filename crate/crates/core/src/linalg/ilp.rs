//! Integer feasibility of linear systems.
//!
//! Equalities are eliminated first: `x = p + K u` with `u` ranging over a
//! lattice of free integer parameters. The remaining inequalities are
//! searched by depth-first branch-and-bound on `u` with exact LP
//! relaxations. Termination comes from an a-priori box: if the system has an
//! integer solution at all, it has one with every `|x_j|` at most
//! [`a_priori_bound`], so the box constraints can be added to every
//! relaxation without losing solutions and the search polytope is bounded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use super::diophantine::solve_diophantine;
use super::lp::{lp_feasible, LinearSystem};
use super::matrix::{dot, IntMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IlpOptions {
    /// Maximum number of relaxations solved before giving up.
    pub node_limit: usize,
}

impl Default for IlpOptions {
    fn default() -> Self {
        IlpOptions {
            node_limit: 200_000,
        }
    }
}

/// Bound on `|x_j|` for some solution of a feasible integer system.
///
/// The system is put in standard form `A y = b, y >= 0` (free variables
/// split, one slack per inequality). Every non-negative integer solution of
/// `[A | -b] (y, z) = 0` is a conformal sum of Graver elements, and Graver
/// elements of an `m`-row matrix with entries bounded by `D` have 1-norm at
/// most `(2 m D + 1)^m`. The summand with `z = 1` is a solution, hence the
/// bound `(2 m D + 1)^m - 1`.
pub fn a_priori_bound(system: &LinearSystem) -> BigInt {
    let m = system.equalities.len() + system.weak_inequalities.len();
    let mut delta = if system.weak_inequalities.is_empty() {
        BigInt::zero()
    } else {
        BigInt::one()
    };
    for (row, rhs) in system.equalities.iter().chain(&system.weak_inequalities) {
        for x in row.iter().chain(std::iter::once(rhs)) {
            let ax = x.abs();
            if ax > delta {
                delta = ax;
            }
        }
    }
    let base = BigInt::from(2 * m) * delta + 1;
    Pow::pow(base, m as u32) - 1
}

/// Decides whether `system` has an integer solution with `x_j >= 0` for
/// every `j` in `nonneg`, returning a witness when it does.
pub fn ilp_feasible(system: &LinearSystem, nonneg: &[usize]) -> Result<Option<Vec<BigInt>>> {
    ilp_feasible_with(system, nonneg, IlpOptions::default())
}

pub fn ilp_feasible_with(
    system: &LinearSystem,
    nonneg: &[usize],
    options: IlpOptions,
) -> Result<Option<Vec<BigInt>>> {
    system.check()?;
    let n = system.num_vars;
    if let Some(&j) = nonneg.iter().find(|&&j| j >= n) {
        return Err(Error::IndexOutOfRange { index: j, size: n });
    }

    let mut full = system.clone();
    for &j in nonneg {
        let mut row = vec![BigInt::zero(); n];
        row[j] = BigInt::one();
        full.add_at_least(row, BigInt::zero());
    }
    // sign constraints are variable domains in the standard form, not rows
    let bound = a_priori_bound(system);

    // eliminate equalities
    let eq_rows: Vec<Vec<BigInt>> = system.equalities.iter().map(|(r, _)| r.clone()).collect();
    let eq_rhs: Vec<BigInt> = system.equalities.iter().map(|(_, b)| b.clone()).collect();
    let eq_matrix = IntMatrix::from_rows(&eq_rows, n)?;
    let sol = solve_diophantine(&eq_matrix, &eq_rhs)?;
    let Some(p) = sol.particular else {
        return Ok(None);
    };
    let basis = sol.kernel_basis;
    let k = basis.len();
    let lift = |u: &[BigInt]| -> Vec<BigInt> {
        let mut x = p.clone();
        for (c, v) in u.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            for (xi, vi) in x.iter_mut().zip(v) {
                *xi += c * vi;
            }
        }
        x
    };

    // inequalities in the parameters u: (g K) u >= h - g p
    let mut reduced = LinearSystem::new(k);
    let project = |g: &[BigInt]| -> Vec<BigInt> { basis.iter().map(|v| dot(g, v)).collect() };
    for (g, h) in &full.weak_inequalities {
        let (row, rhs) = round_row(project(g), h - dot(g, &p));
        reduced.add_at_least(row, rhs);
    }
    for j in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[j] = BigInt::one();
        let row = project(&e);
        reduced.add_at_least(row.clone(), -&bound - &p[j]);
        reduced.add_at_most(row, &bound - &p[j]);
    }

    let found = branch_and_bound(&reduced, options)?;
    Ok(found.map(|u| lift(&u)))
}

#[derive(Clone)]
enum Cut {
    AtMost(usize, BigInt),
    AtLeast(usize, BigInt),
}

fn branch_and_bound(base: &LinearSystem, options: IlpOptions) -> Result<Option<Vec<BigInt>>> {
    let k = base.num_vars;
    let mut stack: Vec<Vec<Cut>> = vec![Vec::new()];
    let mut nodes = 0usize;

    while let Some(cuts) = stack.pop() {
        nodes += 1;
        if nodes > options.node_limit {
            return Err(Error::SearchBudgetExhausted {
                nodes: options.node_limit,
            });
        }
        let mut sys = base.clone();
        for cut in &cuts {
            let mut e = vec![BigInt::zero(); k];
            match cut {
                Cut::AtMost(j, b) => {
                    e[*j] = BigInt::one();
                    sys.add_at_most(e, b.clone());
                }
                Cut::AtLeast(j, b) => {
                    e[*j] = BigInt::one();
                    sys.add_at_least(e, b.clone());
                }
            }
        }
        let Some(w) = lp_feasible(&sys)? else {
            continue;
        };
        match w.iter().position(|v| !v.is_integer()) {
            None => return Ok(Some(w.into_iter().map(|v| v.to_integer()).collect())),
            Some(j) => {
                let lo = floor(&w[j]);
                let hi = &lo + 1;
                let mut up = cuts.clone();
                up.push(Cut::AtLeast(j, hi));
                let mut down = cuts;
                down.push(Cut::AtMost(j, lo));
                stack.push(up);
                stack.push(down);
            }
        }
    }
    Ok(None)
}

/// Divides `row . u >= rhs` by the content of `row` and rounds the right
/// side up, which keeps every integer solution.
fn round_row(row: Vec<BigInt>, rhs: BigInt) -> (Vec<BigInt>, BigInt) {
    let content = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if content.is_zero() || content.is_one() {
        return (row, rhs);
    }
    let rhs = -((-rhs).div_floor(&content));
    (row.into_iter().map(|x| x / &content).collect(), rhs)
}

fn floor(q: &BigRational) -> BigInt {
    q.numer().div_floor(q.denom())
}
