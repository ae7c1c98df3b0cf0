use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;

/// Reduced row echelon form over `Q` and its pivot columns.
pub fn rref(a: &IntMatrix) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut m: Vec<Vec<BigRational>> = (0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols() {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Basis of `{x in Q^cols : a x = 0}`, one vector per non-pivot column.
pub fn rational_kernel(a: &IntMatrix) -> Vec<Vec<BigRational>> {
    let (m, pivots) = rref(a);
    let n = a.cols();
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Positive multiple of `v` with integer entries.
pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_p2_rays() {
        let a = IntMatrix::from_i64_rows(&[&[1, 0, -1], &[0, 1, -1]]);
        let k = rational_kernel(&a);
        assert_eq!(k.len(), 1);
        let one = BigRational::one();
        assert_eq!(k[0], vec![one.clone(), one.clone(), one]);
    }

    #[test]
    fn full_rank_square_has_trivial_kernel() {
        let a = IntMatrix::from_i64_rows(&[&[1, 1], &[0, 2]]);
        assert!(rational_kernel(&a).is_empty());
        let (m, p) = rref(&a);
        assert_eq!(p, vec![0, 1]);
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn denominators_cleared() {
        let v = vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-2).into(), 3.into()),
        ];
        assert_eq!(clear_denominators(&v), vec![BigInt::from(3), BigInt::from(-4)]);
    }
}
