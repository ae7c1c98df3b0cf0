//! Exact rational feasibility of linear systems.
//!
//! Systems are brought to standard form `A y = b, y >= 0` (free variables
//! split into differences, inequalities given slacks) and decided by a
//! phase-one simplex with Bland's rule, which is deterministic and cannot
//! cycle.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Linear constraints over `num_vars` variables with integer data.
///
/// Equalities read `row . x = rhs`, inequalities `row . x >= rhs`. Strict
/// homogeneous constraints are expressed by the caller as `row . x >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearSystem {
    pub num_vars: usize,
    pub equalities: Vec<(Vec<BigInt>, BigInt)>,
    pub weak_inequalities: Vec<(Vec<BigInt>, BigInt)>,
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        LinearSystem {
            num_vars,
            ..Default::default()
        }
    }

    pub fn add_equality(&mut self, row: Vec<BigInt>, rhs: BigInt) -> &mut Self {
        assert_eq!(row.len(), self.num_vars, "equality row length");
        self.equalities.push((row, rhs));
        self
    }

    /// `row . x >= rhs`
    pub fn add_at_least(&mut self, row: Vec<BigInt>, rhs: BigInt) -> &mut Self {
        assert_eq!(row.len(), self.num_vars, "inequality row length");
        self.weak_inequalities.push((row, rhs));
        self
    }

    /// `row . x <= rhs`
    pub fn add_at_most(&mut self, row: Vec<BigInt>, rhs: BigInt) -> &mut Self {
        let neg: Vec<BigInt> = row.into_iter().map(|x| -x).collect();
        self.add_at_least(neg, -rhs)
    }

    pub fn is_empty(&self) -> bool {
        self.equalities.is_empty() && self.weak_inequalities.is_empty()
    }

    pub fn check(&self) -> Result<()> {
        for (row, _) in self.equalities.iter().chain(&self.weak_inequalities) {
            if row.len() != self.num_vars {
                return Err(Error::DimensionMismatch {
                    expected: self.num_vars,
                    found: row.len(),
                });
            }
        }
        Ok(())
    }

    /// Exact check of a rational point against every constraint.
    pub fn is_satisfied_by(&self, x: &[BigRational]) -> bool {
        let eval = |row: &[BigInt]| -> BigRational {
            row.iter()
                .zip(x)
                .map(|(a, v)| BigRational::from_integer(a.clone()) * v)
                .sum()
        };
        x.len() == self.num_vars
            && self
                .equalities
                .iter()
                .all(|(row, rhs)| eval(row) == BigRational::from_integer(rhs.clone()))
            && self
                .weak_inequalities
                .iter()
                .all(|(row, rhs)| eval(row) >= BigRational::from_integer(rhs.clone()))
    }

    pub fn is_satisfied_by_integers(&self, x: &[BigInt]) -> bool {
        let xr: Vec<BigRational> = x.iter().cloned().map(BigRational::from_integer).collect();
        self.is_satisfied_by(&xr)
    }
}

/// Decides rational feasibility; returns a witness satisfying every
/// constraint exactly.
pub fn lp_feasible(system: &LinearSystem) -> Result<Option<Vec<BigRational>>> {
    system.check()?;
    let n = system.num_vars;
    if system.is_empty() {
        return Ok(Some(vec![BigRational::zero(); n]));
    }
    let n_ineq = system.weak_inequalities.len();
    let cols = 2 * n + n_ineq;

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let rat = |x: &BigInt| BigRational::from_integer(x.clone());
    for (row, b) in &system.equalities {
        let mut r: Vec<BigRational> = Vec::with_capacity(cols);
        r.extend(row.iter().map(rat));
        r.extend(row.iter().map(|x| rat(&-x)));
        r.extend(std::iter::repeat_n(BigRational::zero(), n_ineq));
        rows.push(r);
        rhs.push(rat(b));
    }
    for (k, (row, b)) in system.weak_inequalities.iter().enumerate() {
        let mut r: Vec<BigRational> = Vec::with_capacity(cols);
        r.extend(row.iter().map(rat));
        r.extend(row.iter().map(|x| rat(&-x)));
        r.extend((0..n_ineq).map(|j| {
            if j == k {
                -BigRational::from_integer(1.into())
            } else {
                BigRational::zero()
            }
        }));
        rows.push(r);
        rhs.push(rat(b));
    }

    Ok(phase_one(rows, rhs).map(|y| {
        (0..n)
            .map(|j| &y[j] - &y[n + j])
            .collect::<Vec<BigRational>>()
    }))
}

/// Finds `y >= 0` with `a y = b`, or `None` if none exists.
pub(crate) fn phase_one(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    for i in 0..m {
        if b[i].is_negative() {
            b[i] = -std::mem::take(&mut b[i]);
            for x in a[i].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
    }

    // columns 0..n original, n..n+m artificial
    let total = n + m;
    let one = BigRational::from_integer(1.into());
    let mut tab: Vec<Vec<BigRational>> = a
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..m).map(|k| if k == i { one.clone() } else { BigRational::zero() }));
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..total).collect();

    // reduced costs of the phase-one objective (sum of artificials)
    let mut cost: Vec<BigRational> = (0..total)
        .map(|j| {
            if j >= n {
                BigRational::zero()
            } else {
                -tab.iter().map(|row| &row[j]).sum::<BigRational>()
            }
        })
        .collect();
    let mut obj: BigRational = -b.iter().sum::<BigRational>();

    loop {
        let Some(enter) = (0..total).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = &b[i] / &tab[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // phase one is bounded below by zero
        let (pr, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tab, &mut b, &mut cost, &mut obj, pr, enter);
        basis[pr] = enter;
    }

    if !obj.is_zero() {
        return None;
    }
    let mut y = vec![BigRational::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            y[j] = b[i].clone();
        }
    }
    Some(y)
}

fn pivot(
    tab: &mut [Vec<BigRational>],
    b: &mut [BigRational],
    cost: &mut [BigRational],
    obj: &mut BigRational,
    pr: usize,
    pc: usize,
) {
    let p = tab[pr][pc].clone();
    for x in tab[pr].iter_mut() {
        *x /= &p;
    }
    b[pr] /= &p;
    let pivot_row = tab[pr].clone();
    let pivot_b = b[pr].clone();
    for i in 0..tab.len() {
        if i == pr || tab[i][pc].is_zero() {
            continue;
        }
        let f = tab[i][pc].clone();
        for (x, y) in tab[i].iter_mut().zip(&pivot_row) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
        b[i] -= &f * &pivot_b;
    }
    if !cost[pc].is_zero() {
        let f = cost[pc].clone();
        for (x, y) in cost.iter_mut().zip(&pivot_row) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
        *obj -= &f * &pivot_b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::to_bigints;

    fn sys(n: usize, ge: &[(&[i64], i64)], eq: &[(&[i64], i64)]) -> LinearSystem {
        let mut s = LinearSystem::new(n);
        for (r, b) in ge {
            s.add_at_least(to_bigints(r), BigInt::from(*b));
        }
        for (r, b) in eq {
            s.add_equality(to_bigints(r), BigInt::from(*b));
        }
        s
    }

    #[test]
    fn opposite_bounds_are_infeasible() {
        let s = sys(1, &[(&[1], 1), (&[-1], 1)], &[]);
        assert_eq!(lp_feasible(&s).unwrap(), None);
    }

    #[test]
    fn single_bound_has_witness_one() {
        let s = sys(1, &[(&[1], 1)], &[]);
        let w = lp_feasible(&s).unwrap().unwrap();
        assert_eq!(w, vec![BigRational::from_integer(1.into())]);
    }

    #[test]
    fn pointed_cone_functional() {
        let s = sys(2, &[(&[1, 0], 1), (&[1, 2], 1)], &[]);
        let w = lp_feasible(&s).unwrap().unwrap();
        assert!(s.is_satisfied_by(&w));
    }

    #[test]
    fn equalities_with_negative_values() {
        let s = sys(2, &[(&[1, 1], -5)], &[(&[1, -1], -7)]);
        let w = lp_feasible(&s).unwrap().unwrap();
        assert!(s.is_satisfied_by(&w));
    }

    #[test]
    fn redundant_equalities() {
        let s = sys(2, &[], &[(&[1, 1], 2), (&[2, 2], 4), (&[1, -1], 0)]);
        let w = lp_feasible(&s).unwrap().unwrap();
        assert!(s.is_satisfied_by(&w));
        let bad = sys(2, &[], &[(&[1, 1], 2), (&[2, 2], 5)]);
        assert!(lp_feasible(&bad).unwrap().is_none());
    }

    #[test]
    fn empty_system_is_feasible() {
        let w = lp_feasible(&LinearSystem::new(3)).unwrap().unwrap();
        assert!(w.iter().all(Zero::is_zero));
    }
}
