use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::gset::GSet;
use super::maximal::{maximal_cones_of, MAXIMAL_FAN_CAP};
use crate::abelian::{
    elements_generate_group, generates_semigroup_a, require_admissible, ElementCollection,
    GroupElement,
};
use crate::error::{Error, Result};
use crate::gale::inverse_gale_transform;
use crate::index_set::IndexSet;
use crate::linalg::{lp_feasible, IntMatrix, LinearSystem};

/// Sign pattern of an admissible collection in `Z`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RankOneType {
    /// Both positive and negative elements.
    Mixed,
    /// All elements positive. `z_reg` holds when every subcollection that
    /// generates `Z` as a group already generates `A`.
    Positive { z_reg: bool },
    /// All elements non-negative, with at least one zero.
    WithZero,
}

impl RankOneType {
    pub fn number(self) -> u8 {
        match self {
            RankOneType::Mixed => 1,
            RankOneType::Positive { .. } => 2,
            RankOneType::WithZero => 3,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemisimpleShape {
    pub is_shape: bool,
    /// Indices grouped by value, groups in order of first occurrence.
    pub groups: Vec<IndexSet>,
    pub coincides_with_maximal: bool,
    /// Generating subcollections meeting every group; present when
    /// `is_shape` holds.
    pub gset: Option<GSet>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassificationReport {
    pub affine: bool,
    pub complete: bool,
    pub quasiaffine: bool,
    /// Finest partition of the indices into parts generating independent
    /// direct summands, ordered by smallest index.
    pub product_decomposition: Vec<IndexSet>,
    /// Present when the group is `Z`.
    pub rank_one_type: Option<RankOneType>,
    pub semisimple_shape: SemisimpleShape,
}

/// Classification of the maximal fan of an admissible pair.
pub fn classify_pair(coll: &ElementCollection) -> Result<ClassificationReport> {
    require_admissible(coll)?;
    let group = coll.group();
    Ok(ClassificationReport {
        affine: group.is_trivial(),
        complete: is_complete(coll)?,
        quasiaffine: is_quasiaffine(coll)?,
        product_decomposition: product_decomposition(coll)?,
        rank_one_type: rank_one_type(coll)?,
        semisimple_shape: semisimple_shape(coll)?,
    })
}

fn value_groups(coll: &ElementCollection) -> (Vec<GroupElement>, Vec<IndexSet>) {
    let mut values: Vec<GroupElement> = Vec::new();
    let mut groups: Vec<IndexSet> = Vec::new();
    for (i, e) in coll.elements().iter().enumerate() {
        match values.iter().position(|v| v == e) {
            Some(k) => groups[k] = groups[k].with(i),
            None => {
                values.push(e.clone());
                groups.push(IndexSet::singleton(i));
            }
        }
    }
    (values, groups)
}

/// Free group, distinct values forming a basis, each repeated at least
/// twice.
pub fn is_complete(coll: &ElementCollection) -> Result<bool> {
    let group = coll.group();
    if !group.is_free() {
        return Ok(false);
    }
    let (values, groups) = value_groups(coll);
    let m = group.free_rank();
    if values.len() != m || groups.iter().any(|g| g.len() < 2) {
        return Ok(false);
    }
    let rows: Vec<Vec<BigInt>> = values.iter().map(|v| v.free().to_vec()).collect();
    let det = IntMatrix::from_rows(&rows, m)?.determinant();
    Ok(det.abs().is_one())
}

/// The free parts span the whole rational space as a cone.
pub fn is_quasiaffine(coll: &ElementCollection) -> Result<bool> {
    let k = coll.group().free_rank();
    let r = coll.len();
    for j in 0..k {
        for sign in [1i64, -1] {
            let mut sys = LinearSystem::new(r);
            for i in 0..r {
                let mut row = vec![BigInt::zero(); r];
                row[i] = BigInt::one();
                sys.add_at_least(row, BigInt::zero());
            }
            for a in 0..k {
                let row = coll.elements().iter().map(|e| e.free()[a].clone()).collect();
                let rhs = if a == j { BigInt::from(sign) } else { BigInt::zero() };
                sys.add_equality(row, rhs);
            }
            if lp_feasible(&sys)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Finest split of the indices such that the subgroups generated by the
/// parts form a direct sum.
///
/// A part `T` is admissible for a split when every relation among the
/// `a_i`, restricted to `T`, is again a relation. Such parts are closed
/// under intersection, so the part of the smallest remaining index is the
/// smallest such `T` containing it.
pub fn product_decomposition(coll: &ElementCollection) -> Result<Vec<IndexSet>> {
    let r = coll.len();
    Error::check_cap("product decomposition", MAXIMAL_FAN_CAP, r)?;
    let relations = inverse_gale_transform(coll)?.column_matrix().row_vecs();
    let splits = |t: IndexSet| {
        relations.iter().all(|m| {
            let mut acc = GroupElement::zero(coll.group());
            for i in t.iter() {
                acc = acc.add(&coll.elements()[i].scale(&m[i])).expect("one group");
            }
            acc.is_zero()
        })
    };
    let mut parts = Vec::new();
    let mut remaining = coll.all_indices();
    while let Some(i) = remaining.iter().next() {
        let mut candidates: Vec<IndexSet> = remaining.without(i).subsets().collect();
        candidates.sort();
        let part = candidates
            .into_iter()
            .map(|s| s.with(i))
            .find(|&t| splits(t))
            .unwrap_or(remaining);
        parts.push(part);
        remaining = remaining.difference(part);
    }
    Ok(parts)
}

/// The type of an admissible collection in `Z`, after flipping signs so
/// that some element is positive; `None` for other groups.
pub fn rank_one_type(coll: &ElementCollection) -> Result<Option<RankOneType>> {
    let group = coll.group();
    if !group.is_free() || group.free_rank() != 1 {
        return Ok(None);
    }
    let mut values: Vec<BigInt> = coll.elements().iter().map(|e| e.free()[0].clone()).collect();
    if !values.iter().any(|v| v.is_positive()) {
        values.iter_mut().for_each(|v| *v = -v.clone());
    }
    if values.iter().any(|v| v.is_negative()) {
        return Ok(Some(RankOneType::Mixed));
    }
    if values.iter().any(|v| v.is_zero()) {
        return Ok(Some(RankOneType::WithZero));
    }
    Ok(Some(RankOneType::Positive {
        z_reg: group_generating_subsets_generate_a(coll, &values)?,
    }))
}

// Only minimal subcollections with gcd 1 need checking: if a larger one
// missed A, so would every subcollection of it.
fn group_generating_subsets_generate_a(coll: &ElementCollection, values: &[BigInt]) -> Result<bool> {
    Error::check_cap("rank one type", MAXIMAL_FAN_CAP, coll.len())?;
    let mut subsets: Vec<IndexSet> = coll.all_indices().subsets().collect();
    subsets.sort();
    let mut minimal: Vec<IndexSet> = Vec::new();
    for s in subsets {
        if minimal.iter().any(|m| m.is_subset(s)) {
            continue;
        }
        let g = s.iter().fold(BigInt::zero(), |g, i| g.gcd(&values[i]));
        if g.is_one() {
            if !generates_semigroup_a(coll, s)? {
                return Ok(false);
            }
            minimal.push(s);
        }
    }
    Ok(true)
}

/// Value-group structure of a collection.
pub fn semisimple_shape(coll: &ElementCollection) -> Result<SemisimpleShape> {
    let r = coll.len();
    let group = coll.group();
    let (values, groups) = value_groups(coll);
    let is_shape = groups.iter().all(|g| g.len() >= 2) && elements_generate_group(group, &values)?;

    let distinct = ElementCollection::new(group.clone(), values.clone())?;
    let all = distinct.all_indices();
    let mut coincides = true;
    for i in 0..values.len() {
        if generates_semigroup_a(&distinct, all.without(i))? {
            coincides = false;
            break;
        }
    }

    let gset = if is_shape {
        let members: BTreeSet<IndexSet> = maximal_cones_of(coll)?
            .into_iter()
            .map(|c| c.complement(r))
            .filter(|b| groups.iter().all(|g| !g.is_disjoint(*b)))
            .collect();
        Some(GSet::new_unchecked(coll.clone(), members))
    } else {
        None
    };
    Ok(SemisimpleShape {
        is_shape,
        groups,
        coincides_with_maximal: coincides,
        gset,
    })
}
