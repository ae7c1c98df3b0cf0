use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::linalg::{lp_feasible, rank, smith_normal_form, IntMatrix, LinearSystem};

/// Integer vectors `n_1, ..., n_r` in `Z^rank` spanning `Q^rank`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VectorConfiguration {
    rank: usize,
    vectors: Vec<Vec<BigInt>>,
}

impl VectorConfiguration {
    pub fn new(rank: usize, vectors: Vec<Vec<BigInt>>) -> Result<Self> {
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: v.len(),
                });
            }
            if v.iter().all(Zero::is_zero) {
                return Err(Error::ZeroVector { index: i });
            }
        }
        if vectors.len() > crate::MAX_INDEX {
            return Err(Error::cap("configuration size", crate::MAX_INDEX, vectors.len()));
        }
        let config = VectorConfiguration { rank, vectors };
        let r = rank_of(&config.column_matrix());
        if r < rank {
            return Err(Error::DegenerateConfiguration { rank: r, dim: rank });
        }
        Ok(config)
    }

    pub fn from_i64(rank: usize, vectors: &[&[i64]]) -> Result<Self> {
        VectorConfiguration::new(
            rank,
            vectors
                .iter()
                .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Configuration from a `rank x r` matrix whose columns are the vectors.
    pub fn from_column_matrix(m: &IntMatrix) -> Result<Self> {
        VectorConfiguration::new(m.rows(), m.column_vecs())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[BigInt] {
        &self.vectors[i]
    }

    pub fn all_indices(&self) -> IndexSet {
        IndexSet::full(self.vectors.len())
    }

    /// The `rank x r` matrix with columns `n_i`.
    pub fn column_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(&self.vectors, self.rank).expect("vector lengths checked")
    }

    /// Columns of the selected vectors.
    pub fn cone_matrix(&self, cone: IndexSet) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = cone.iter().map(|i| self.vectors[i].clone()).collect();
        IntMatrix::from_columns(&cols, self.rank).expect("vector lengths checked")
    }

    pub(crate) fn check_indices(&self, cone: IndexSet) -> Result<()> {
        match cone.iter().find(|&i| i >= self.len()) {
            Some(i) => Err(Error::IndexOutOfRange {
                index: i,
                size: self.len(),
            }),
            None => Ok(()),
        }
    }
}

fn rank_of(m: &IntMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        0
    } else {
        rank(m)
    }
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn is_primitive(v: &[BigInt]) -> Result<bool> {
    let g = content(v);
    if g.is_zero() {
        return Err(Error::ZeroVector { index: 0 });
    }
    Ok(g.is_one())
}

pub fn primitivize(v: &[BigInt]) -> Result<Vec<BigInt>> {
    let g = content(v);
    if g.is_zero() {
        return Err(Error::ZeroVector { index: 0 });
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Linearly independent over `Q`.
pub fn is_simplicial(config: &VectorConfiguration, cone: IndexSet) -> bool {
    cone.is_empty() || rank_of(&config.cone_matrix(cone)) == cone.len()
}

/// Some rational functional is `>= 1` on every selected vector.
pub fn is_strictly_convex(config: &VectorConfiguration, cone: IndexSet) -> Result<bool> {
    config.check_indices(cone)?;
    let mut sys = LinearSystem::new(config.rank());
    for i in cone.iter() {
        sys.add_at_least(config.vector(i).to_vec(), BigInt::one());
    }
    Ok(lp_feasible(&sys)?.is_some())
}

/// The selected vectors extend to a basis of `Z^rank`.
pub fn is_regular_cone(config: &VectorConfiguration, cone: IndexSet) -> Result<bool> {
    config.check_indices(cone)?;
    if cone.is_empty() {
        return Ok(true);
    }
    let snf = smith_normal_form(&config.cone_matrix(cone));
    let factors = snf.invariant_factors();
    Ok(factors.len() == cone.len() && factors.iter().all(One::is_one))
}

/// Whether `cone(I)` and `cone(J)` intersect in a common face.
///
/// Decided by a separating functional that is non-negative on `I`,
/// non-positive on `J`, and vanishes on `I u J` exactly on `I n J`.
pub fn cones_meet_in_common_face(config: &VectorConfiguration, i: IndexSet, j: IndexSet) -> Result<bool> {
    config.check_indices(i.union(j))?;
    for c in [i, j] {
        if !is_simplicial(config, c) {
            return Err(Error::NotSimplicial { cone: c });
        }
    }
    let mut sys = LinearSystem::new(config.rank());
    for k in i.difference(j).iter() {
        sys.add_at_least(config.vector(k).to_vec(), BigInt::one());
    }
    for k in j.difference(i).iter() {
        sys.add_at_most(config.vector(k).to_vec(), -BigInt::one());
    }
    for k in i.intersection(j).iter() {
        sys.add_equality(config.vector(k).to_vec(), BigInt::zero());
    }
    Ok(lp_feasible(&sys)?.is_some())
}
