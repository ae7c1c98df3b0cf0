use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::IntMatrix;
use super::normal_form::{canonical_lattice_basis, smith_normal_form};
use crate::error::{Error, Result};

/// Integer solutions of `a x = b`: one particular solution (if any) plus a
/// lattice basis of the homogeneous solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiophantineSolution {
    pub particular: Option<Vec<BigInt>>,
    pub kernel_basis: Vec<Vec<BigInt>>,
}

impl DiophantineSolution {
    pub fn is_solvable(&self) -> bool {
        self.particular.is_some()
    }
}

/// Solves `a x = b` over the integers.
///
/// The kernel basis is in Hermite normal form and the particular solution is
/// reduced against it, so the output is unique for given input.
pub fn solve_diophantine(a: &IntMatrix, b: &[BigInt]) -> Result<DiophantineSolution> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let kernel_raw: Vec<Vec<BigInt>> = (r..a.cols()).map(|j| snf.v.column(j)).collect();
    let kernel_basis = canonical_lattice_basis(&kernel_raw, a.cols());

    let c = snf.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    let mut solvable = c[r..].iter().all(Zero::is_zero);
    if solvable {
        for i in 0..r {
            let (q, rem) = c[i].div_rem(&snf.d[(i, i)]);
            if !rem.is_zero() {
                solvable = false;
                break;
            }
            y[i] = q;
        }
    }

    let particular = solvable.then(|| reduce_modulo_basis(snf.v.mul_vec(&y), &kernel_basis));
    Ok(DiophantineSolution {
        particular,
        kernel_basis,
    })
}

/// Reduces `x` modulo a lattice basis given in Hermite normal form so that
/// every pivot coordinate lies in `[0, pivot)`.
fn reduce_modulo_basis(mut x: Vec<BigInt>, hnf_rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    for row in hnf_rows {
        let Some(p) = row.iter().position(|v| !v.is_zero()) else {
            continue;
        };
        let q = x[p].div_floor(&row[p]);
        if q.is_zero() {
            continue;
        }
        for (xi, ri) in x.iter_mut().zip(row) {
            *xi -= &q * ri;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::to_bigints;

    #[test]
    fn single_equation_cases() {
        let a = IntMatrix::from_i64_rows(&[&[2]]);
        let s = solve_diophantine(&a, &to_bigints(&[4])).unwrap();
        assert_eq!(s.particular, Some(to_bigints(&[2])));
        assert!(s.kernel_basis.is_empty());

        let s = solve_diophantine(&a, &to_bigints(&[3])).unwrap();
        assert_eq!(s.particular, None);

        let a = IntMatrix::from_i64_rows(&[&[1, 2]]);
        let s = solve_diophantine(&a, &to_bigints(&[1])).unwrap();
        assert_eq!(s.particular, Some(to_bigints(&[1, 0])));
        assert_eq!(s.kernel_basis, vec![to_bigints(&[2, -1])]);
    }

    #[test]
    fn inconsistent_rows() {
        let a = IntMatrix::from_i64_rows(&[&[1, 1], &[2, 2]]);
        let s = solve_diophantine(&a, &to_bigints(&[1, 3])).unwrap();
        assert!(!s.is_solvable());
        let s = solve_diophantine(&a, &to_bigints(&[1, 2])).unwrap();
        let x = s.particular.unwrap();
        assert_eq!(a.mul_vec(&x), to_bigints(&[1, 2]));
    }

    #[test]
    fn empty_system() {
        let a = IntMatrix::zeros(0, 2);
        let s = solve_diophantine(&a, &[]).unwrap();
        assert_eq!(s.particular, Some(to_bigints(&[0, 0])));
        assert_eq!(s.kernel_basis.len(), 2);
    }

    #[test]
    fn rhs_length_checked() {
        let a = IntMatrix::from_i64_rows(&[&[1, 2]]);
        assert!(solve_diophantine(&a, &[]).is_err());
    }
}
