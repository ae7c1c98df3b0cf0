//! Smith and Hermite normal forms over the integers.
//!
//! Both algorithms are deterministic: Smith pivots are chosen as the entry of
//! smallest absolute value, ties broken by the lexicographically smallest
//! `(row, column)`; Hermite reduction sweeps columns left to right.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `u * a * v == d` with `u`, `v` unimodular and `d` diagonal with
/// non-negative entries `d_1 | d_2 | ...` followed by zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Non-zero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest_entry(&d, (t..m).flat_map(|i| (t..n).map(move |j| (i, j))))
        else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, t)] / &d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(t, j)] / &d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !d[(t, j)].is_zero();
            }

            if !dirty {
                // row and column cleared; enforce divisibility of the rest
                let bad_row = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)]))
                });
                match bad_row {
                    Some(i) => {
                        let one = BigInt::one();
                        d.add_row_multiple(t, i, &one);
                        u.add_row_multiple(t, i, &one);
                    }
                    None => break,
                }
            }

            // bring the smallest remaining entry of row/column t to the pivot
            let line = (t..m).map(|i| (i, t)).chain((t + 1..n).map(|j| (t, j)));
            let (pi, pj) = smallest_entry(&d, line).expect("pivot line is non-zero");
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
        }

        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    SnfResult { u, d, v }
}

fn smallest_entry(
    m: &IntMatrix,
    positions: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for (i, j) in positions {
        let x = &m[(i, j)];
        if x.is_zero() {
            continue;
        }
        let ax = x.abs();
        let better = match &best {
            None => true,
            Some((pos, b)) => ax < *b || (ax == *b && (i, j) < *pos),
        };
        if better {
            best = Some(((i, j), ax));
        }
    }
    best.map(|(pos, _)| pos)
}

/// Row-style Hermite normal form: `u * a == h` with `u` unimodular, `h` in
/// row echelon form with positive pivots and entries above each pivot
/// reduced into `[0, pivot)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnfResult {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Column index of the pivot in each non-zero row.
    pub pivots: Vec<usize>,
}

impl HnfResult {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn hermite_normal_form(a: &IntMatrix) -> HnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut pivots = Vec::new();
    let mut p = 0;

    for j in 0..n {
        if p == m {
            break;
        }
        loop {
            let Some((pi, _)) = smallest_entry(&h, (p..m).map(|i| (i, j))) else {
                break;
            };
            h.swap_rows(p, pi);
            u.swap_rows(p, pi);
            let mut cleared = true;
            for i in p + 1..m {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = -(&h[(i, j)] / &h[(p, j)]);
                h.add_row_multiple(i, p, &q);
                u.add_row_multiple(i, p, &q);
                cleared &= h[(i, j)].is_zero();
            }
            if cleared {
                break;
            }
        }
        if h[(p, j)].is_zero() {
            continue;
        }
        if h[(p, j)].is_negative() {
            h.negate_row(p);
            u.negate_row(p);
        }
        for i in 0..p {
            let q = -h[(i, j)].div_floor(&h[(p, j)]);
            h.add_row_multiple(i, p, &q);
            u.add_row_multiple(i, p, &q);
        }
        pivots.push(j);
        p += 1;
    }

    HnfResult { h, u, pivots }
}

pub fn rank(a: &IntMatrix) -> usize {
    hermite_normal_form(a).rank()
}

/// Canonical basis of a lattice spanned by `vectors`: the non-zero rows of
/// the Hermite normal form of the matrix with those rows.
pub fn canonical_lattice_basis(vectors: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = IntMatrix::from_rows(vectors, dim).expect("vectors of equal length");
    let hnf = hermite_normal_form(&m);
    (0..hnf.rank()).map(|i| hnf.h.row(i).to_vec()).collect()
}

/// Lattice basis of `{x in Z^cols : a x = 0}` in Hermite normal form.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let basis: Vec<Vec<BigInt>> = (r..a.cols()).map(|j| snf.v.column(j)).collect();
    canonical_lattice_basis(&basis, a.cols())
}
