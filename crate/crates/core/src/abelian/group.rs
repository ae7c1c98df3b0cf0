use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{hermite_normal_form, smith_normal_form, IntMatrix};

/// `Z^free_rank + Z/d_1 + ... + Z/d_t` with `2 <= d_1 | d_2 | ... | d_t`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for (k, d) in torsion.iter().enumerate() {
            if d < &BigInt::from(2) {
                return Err(Error::InvalidGroup(format!(
                    "invariant factor {d} is smaller than 2"
                )));
            }
            if k > 0 && !d.is_multiple_of(&torsion[k - 1]) {
                return Err(Error::InvalidGroup(format!(
                    "invariant factors {} and {d} do not form a divisibility chain",
                    torsion[k - 1]
                )));
            }
        }
        Ok(AbelianGroup { free_rank, torsion })
    }

    pub fn from_i64(free_rank: usize, torsion: &[i64]) -> Result<Self> {
        AbelianGroup::new(free_rank, torsion.iter().map(|&d| BigInt::from(d)).collect())
    }

    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        AbelianGroup::new(0, vec![BigInt::from(order)]).expect("order at least 2")
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Number of normal-form coordinates (free then torsion).
    pub fn num_coords(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Exponent of the torsion subgroup (1 when it is trivial).
    pub fn exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// The relation matrix of the normal form: coordinates by torsion
    /// columns `d_j e_{free_rank + j}`.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.num_coords();
        let mut m = IntMatrix::zeros(n, self.torsion.len());
        for (j, d) in self.torsion.iter().enumerate() {
            m[(self.free_rank + j, j)] = d.clone();
        }
        m
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".into());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// An element in normal-form coordinates; torsion coordinates lie in
/// `[0, d_j)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    group: Arc<AbelianGroup>,
    free: Vec<BigInt>,
    torsion: Vec<BigInt>,
}

impl GroupElement {
    pub fn new(group: &Arc<AbelianGroup>, free: Vec<BigInt>, torsion: Vec<BigInt>) -> Result<Self> {
        if free.len() != group.free_rank {
            return Err(Error::DimensionMismatch {
                expected: group.free_rank,
                found: free.len(),
            });
        }
        if torsion.len() != group.torsion.len() {
            return Err(Error::DimensionMismatch {
                expected: group.torsion.len(),
                found: torsion.len(),
            });
        }
        Ok(GroupElement {
            group: Arc::clone(group),
            free,
            torsion,
        }
        .normalize())
    }

    pub fn from_i64(group: &Arc<AbelianGroup>, free: &[i64], torsion: &[i64]) -> Result<Self> {
        GroupElement::new(
            group,
            free.iter().map(|&x| BigInt::from(x)).collect(),
            torsion.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    /// Element from a flat coordinate vector (free coordinates first).
    pub fn from_coords(group: &Arc<AbelianGroup>, coords: &[BigInt]) -> Result<Self> {
        if coords.len() != group.num_coords() {
            return Err(Error::DimensionMismatch {
                expected: group.num_coords(),
                found: coords.len(),
            });
        }
        let (f, t) = coords.split_at(group.free_rank);
        GroupElement::new(group, f.to_vec(), t.to_vec())
    }

    pub fn zero(group: &Arc<AbelianGroup>) -> Self {
        GroupElement {
            group: Arc::clone(group),
            free: vec![BigInt::zero(); group.free_rank],
            torsion: vec![BigInt::zero(); group.torsion.len()],
        }
    }

    /// The `k`-th normal-form generator.
    pub fn generator(group: &Arc<AbelianGroup>, k: usize) -> Self {
        let mut coords = vec![BigInt::zero(); group.num_coords()];
        coords[k] = BigInt::one();
        GroupElement::from_coords(group, &coords).expect("coordinate count")
    }

    pub fn group(&self) -> &Arc<AbelianGroup> {
        &self.group
    }

    pub fn free(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn coords(&self) -> Vec<BigInt> {
        self.free.iter().chain(&self.torsion).cloned().collect()
    }

    /// Reduces torsion coordinates into `[0, d_j)`. Idempotent.
    pub fn normalize(mut self) -> Self {
        for (c, d) in self.torsion.iter_mut().zip(&self.group.torsion) {
            *c = c.mod_floor(d);
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }

    pub fn same_group(&self, other: &GroupElement) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || self.group == other.group
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        if !self.same_group(other) {
            return Err(Error::OwnerMismatch);
        }
        Ok(self.combine(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement> {
        if !self.same_group(other) {
            return Err(Error::OwnerMismatch);
        }
        Ok(self.combine(other, |a, b| a - b))
    }

    pub fn neg(&self) -> GroupElement {
        GroupElement {
            group: Arc::clone(&self.group),
            free: self.free.iter().map(|x| -x).collect(),
            torsion: self.torsion.iter().map(|x| -x).collect(),
        }
        .normalize()
    }

    pub fn scale(&self, k: &BigInt) -> GroupElement {
        GroupElement {
            group: Arc::clone(&self.group),
            free: self.free.iter().map(|x| x * k).collect(),
            torsion: self.torsion.iter().map(|x| x * k).collect(),
        }
        .normalize()
    }

    fn combine(&self, other: &GroupElement, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> GroupElement {
        GroupElement {
            group: Arc::clone(&self.group),
            free: self.free.iter().zip(&other.free).map(|(a, b)| op(a, b)).collect(),
            torsion: self
                .torsion
                .iter()
                .zip(&other.torsion)
                .map(|(a, b)| op(a, b))
                .collect(),
        }
        .normalize()
    }

    /// Largest absolute free coordinate.
    pub fn height(&self) -> BigInt {
        self.free
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.free.iter().map(|x| x.to_string()).collect();
        let tors: Vec<String> = self.torsion.iter().map(|x| format!("{x}~")).collect();
        write!(f, "({})", free.into_iter().chain(tors).collect::<Vec<_>>().join(","))
    }
}

/// Ordered collection `a_1, ..., a_r` (repetitions allowed) in one group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementCollection {
    group: Arc<AbelianGroup>,
    elements: Vec<GroupElement>,
}

impl ElementCollection {
    pub fn new(group: Arc<AbelianGroup>, elements: Vec<GroupElement>) -> Result<Self> {
        if elements.iter().any(|e| *e.group != *group) {
            return Err(Error::OwnerMismatch);
        }
        let elements = elements
            .into_iter()
            .map(|e| GroupElement {
                group: Arc::clone(&group),
                ..e
            })
            .collect();
        Ok(ElementCollection { group, elements })
    }

    /// Collection from coordinate rows (free coordinates first).
    pub fn from_coords(group: AbelianGroup, rows: &[Vec<i64>]) -> Result<Self> {
        let group = Arc::new(group);
        let elements = rows
            .iter()
            .map(|r| {
                let c: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
                GroupElement::from_coords(&group, &c)
            })
            .collect::<Result<Vec<_>>>()?;
        ElementCollection::new(group, elements)
    }

    /// Collection in `Z` from plain integers.
    pub fn integers(values: &[i64]) -> Self {
        let rows: Vec<Vec<i64>> = values.iter().map(|&v| vec![v]).collect();
        ElementCollection::from_coords(AbelianGroup::free(1), &rows).expect("valid coordinates")
    }

    /// Collection in `Z/d` from residues.
    pub fn residues(order: u64, values: &[i64]) -> Self {
        let rows: Vec<Vec<i64>> = values.iter().map(|&v| vec![v]).collect();
        ElementCollection::from_coords(AbelianGroup::cyclic(order), &rows)
            .expect("valid coordinates")
    }

    pub fn group(&self) -> &Arc<AbelianGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> Result<&GroupElement> {
        self.elements.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            size: self.elements.len(),
        })
    }

    pub fn select(&self, subset: crate::IndexSet) -> Vec<GroupElement> {
        subset
            .iter()
            .filter_map(|i| self.elements.get(i).cloned())
            .collect()
    }

    pub fn all_indices(&self) -> crate::IndexSet {
        crate::IndexSet::full(self.elements.len())
    }

    /// Sorted copy of the elements, for multiset comparison.
    pub fn sorted_elements(&self) -> Vec<GroupElement> {
        let mut v = self.elements.clone();
        v.sort();
        v
    }

    /// Applies a coordinate map (rows: target coordinates) to every element.
    pub fn map_coords(&self, target: &Arc<AbelianGroup>, matrix: &IntMatrix) -> Result<Self> {
        let elements = self
            .elements
            .iter()
            .map(|e| GroupElement::from_coords(target, &matrix.mul_vec(&e.coords())))
            .collect::<Result<Vec<_>>>()?;
        ElementCollection::new(Arc::clone(target), elements)
    }
}

impl fmt::Debug for ElementCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", DebugList(&self.elements), self.group)
    }
}

struct DebugList<'a>(&'a [GroupElement]);

impl fmt::Display for DebugList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", items.join(", "))
    }
}

/// Cokernel `Z^m / colspan(a)` in normal form together with the projection
/// matrix sending `Z^m` to normal-form coordinates.
///
/// Free coordinates of the projection are put in Hermite normal form, so
/// for instance the sum map `Z^3 -> Z` comes out as `(1, 1, 1)` rather than
/// with negative signs.
pub fn group_from_cokernel(a: &IntMatrix) -> (AbelianGroup, IntMatrix) {
    let m = a.rows();
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    let rank = snf.rank();

    let mut torsion_rows = Vec::new();
    let mut torsion = Vec::new();
    for (i, d) in diag.iter().enumerate().take(rank) {
        if !d.is_one() {
            torsion_rows.push(i);
            torsion.push(d.clone());
        }
    }
    let free_rows: Vec<usize> = (rank..m).collect();

    let free_part = snf.u.select_rows(&free_rows);
    let free_part = if free_rows.is_empty() {
        free_part
    } else {
        hermite_normal_form(&free_part).h
    };
    let projection = free_part
        .vstack(&snf.u.select_rows(&torsion_rows))
        .expect("same width");
    let group = AbelianGroup::new(m - rank, torsion).expect("Smith diagonal is a divisibility chain");
    (group, projection)
}

/// Image of a vector under a projection from [`group_from_cokernel`].
pub fn project(group: &Arc<AbelianGroup>, projection: &IntMatrix, v: &[BigInt]) -> GroupElement {
    GroupElement::from_coords(group, &projection.mul_vec(v)).expect("projection height")
}

/// `P1 + P2` in normal form with the two coordinate embeddings.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub group: Arc<AbelianGroup>,
    /// Maps normal-form coordinates of the left summand to the sum.
    pub left: IntMatrix,
    /// Maps normal-form coordinates of the right summand to the sum.
    pub right: IntMatrix,
}

impl DirectSum {
    pub fn embed_left(&self, e: &GroupElement) -> GroupElement {
        project(&self.group, &self.left, &e.coords())
    }

    pub fn embed_right(&self, e: &GroupElement) -> GroupElement {
        project(&self.group, &self.right, &e.coords())
    }
}

pub fn direct_sum(p1: &AbelianGroup, p2: &AbelianGroup) -> DirectSum {
    let (n1, n2) = (p1.num_coords(), p2.num_coords());
    let r1 = p1.relation_matrix();
    let r2 = p2.relation_matrix();
    let mut rel = IntMatrix::zeros(n1 + n2, r1.cols() + r2.cols());
    for i in 0..n1 {
        for j in 0..r1.cols() {
            rel[(i, j)] = r1[(i, j)].clone();
        }
    }
    for i in 0..n2 {
        for j in 0..r2.cols() {
            rel[(n1 + i, r1.cols() + j)] = r2[(i, j)].clone();
        }
    }
    let (group, proj) = group_from_cokernel(&rel);
    let cols1: Vec<usize> = (0..n1).collect();
    let cols2: Vec<usize> = (n1..n1 + n2).collect();
    DirectSum {
        group: Arc::new(group),
        left: proj.select_columns(&cols1),
        right: proj.select_columns(&cols2),
    }
}
