use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::{group_from_cokernel, AbelianGroup, ElementCollection, GroupElement};
use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::linalg::{a_priori_bound, ilp_feasible, solve_diophantine, IntMatrix, LinearSystem};

fn check_owner(group: &AbelianGroup, elements: &[&GroupElement]) -> Result<()> {
    if elements.iter().all(|e| **e.group() == *group) {
        Ok(())
    } else {
        Err(Error::OwnerMismatch)
    }
}

/// The system `sum x_s g_s - sum_j d_j y_j e_j = t` in the variables
/// `(x_1..x_k, y_1..y_tau)`.
fn lifted_system(t: &GroupElement, gens: &[GroupElement]) -> LinearSystem {
    let group = t.group();
    let k = gens.len();
    let tau = group.torsion().len();
    let mut sys = LinearSystem::new(k + tau);
    for c in 0..group.free_rank() {
        let row: Vec<BigInt> = gens
            .iter()
            .map(|g| g.free()[c].clone())
            .chain(std::iter::repeat_n(BigInt::zero(), tau))
            .collect();
        sys.add_equality(row, t.free()[c].clone());
    }
    for (j, d) in group.torsion().iter().enumerate() {
        let mut row: Vec<BigInt> = gens.iter().map(|g| g.torsion()[j].clone()).collect();
        row.extend((0..tau).map(|i| if i == j { -d } else { BigInt::zero() }));
        sys.add_equality(row, t.torsion()[j].clone());
    }
    sys
}

/// Is `t` in the subgroup generated by `gens`?
pub fn subgroup_membership(t: &GroupElement, gens: &[GroupElement]) -> Result<bool> {
    Ok(express_in_span(t, gens)?.is_some())
}

/// Integer coefficients `c` with `t = sum c_s g_s`, if any.
pub fn express_in_span(t: &GroupElement, gens: &[GroupElement]) -> Result<Option<Vec<BigInt>>> {
    check_owner(t.group(), &gens.iter().collect::<Vec<_>>())?;
    let sys = lifted_system(t, gens);
    let rows: Vec<Vec<BigInt>> = sys.equalities.iter().map(|(r, _)| r.clone()).collect();
    let rhs: Vec<BigInt> = sys.equalities.iter().map(|(_, b)| b.clone()).collect();
    let a = IntMatrix::from_rows(&rows, sys.num_vars)?;
    let sol = solve_diophantine(&a, &rhs)?;
    Ok(sol.particular.map(|mut x| {
        x.truncate(gens.len());
        x
    }))
}

/// Decides `t = sum x_s g_s` with `x_s >= 0` (the empty sum gives 0) and
/// returns such an `x`.
///
/// Generators with zero free part have finite order, so their coefficients
/// may be taken modulo the exponent and need no sign constraint.
pub fn semigroup_membership(t: &GroupElement, gens: &[GroupElement]) -> Result<Option<Vec<BigInt>>> {
    check_owner(t.group(), &gens.iter().collect::<Vec<_>>())?;
    let k = gens.len();
    if t.is_zero() {
        return Ok(Some(vec![BigInt::zero(); k]));
    }
    if let Some(s) = gens.iter().position(|g| g == t) {
        let mut x = vec![BigInt::zero(); k];
        x[s] = BigInt::one();
        return Ok(Some(x));
    }
    let exponent = t.group().exponent();
    let bounded: Vec<usize> = (0..k)
        .filter(|&s| gens[s].free().iter().any(|c| !c.is_zero()))
        .collect();

    let raw = if bounded.is_empty() {
        express_in_span(t, gens)?
    } else {
        let sys = lifted_system(t, gens);
        ilp_feasible(&sys, &bounded)?.map(|mut x| {
            x.truncate(k);
            x
        })
    };
    Ok(raw.map(|x| {
        x.into_iter()
            .enumerate()
            .map(|(s, c)| {
                if bounded.contains(&s) {
                    c
                } else {
                    c.mod_floor(&exponent)
                }
            })
            .collect()
    }))
}

/// The a-priori magnitude bound used by the integer search for this
/// membership question.
pub fn membership_bound(t: &GroupElement, gens: &[GroupElement]) -> BigInt {
    a_priori_bound(&lifted_system(t, gens))
}

/// Checks `t = sum x_s g_s` exactly.
pub fn verify_combination(t: &GroupElement, gens: &[GroupElement], x: &[BigInt]) -> bool {
    if x.len() != gens.len() {
        return false;
    }
    let mut acc = GroupElement::zero(t.group());
    for (g, c) in gens.iter().zip(x) {
        match acc.add(&g.scale(c)) {
            Ok(s) => acc = s,
            Err(_) => return false,
        }
    }
    acc == *t
}

/// Do the elements generate the whole group?
pub fn elements_generate_group(group: &Arc<AbelianGroup>, elements: &[GroupElement]) -> Result<bool> {
    check_owner(group, &elements.iter().collect::<Vec<_>>())?;
    let n = group.num_coords();
    let rel = group.relation_matrix();
    let mut m = IntMatrix::zeros(n, elements.len() + rel.cols());
    for (s, e) in elements.iter().enumerate() {
        for (i, c) in e.coords().into_iter().enumerate() {
            m[(i, s)] = c;
        }
    }
    for j in 0..rel.cols() {
        for i in 0..n {
            m[(i, elements.len() + j)] = rel[(i, j)].clone();
        }
    }
    Ok(group_from_cokernel(&m).0.is_trivial())
}

/// Do the selected elements generate the group?
pub fn generates_group(coll: &ElementCollection, subset: IndexSet) -> Result<bool> {
    check_subset(coll, subset)?;
    elements_generate_group(coll.group(), &coll.select(subset))
}

/// Does the semigroup of the selected elements equal the semigroup `A` of
/// the whole collection? Holds iff every deselected element is reachable.
pub fn generates_semigroup_a(coll: &ElementCollection, subset: IndexSet) -> Result<bool> {
    check_subset(coll, subset)?;
    let gens = coll.select(subset);
    for i in subset.complement(coll.len()).iter() {
        if semigroup_membership(&coll.elements()[i], &gens)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn check_subset(coll: &ElementCollection, subset: IndexSet) -> Result<()> {
    if let Some(i) = subset.iter().find(|&i| i >= coll.len()) {
        return Err(Error::IndexOutOfRange {
            index: i,
            size: coll.len(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    NotGenerating,
    /// 0-based index of the first element not reachable from the others.
    Unreachable { index: usize },
}

impl Admissibility {
    pub fn is_admissible(self) -> bool {
        self == Admissibility::Admissible
    }
}

/// Generates the group, and each `a_i` lies in the semigroup of the others.
pub fn is_admissible(coll: &ElementCollection) -> Result<Admissibility> {
    if !generates_group(coll, coll.all_indices())? {
        return Ok(Admissibility::NotGenerating);
    }
    let all = coll.all_indices();
    for i in 0..coll.len() {
        let others = coll.select(all.without(i));
        if semigroup_membership(&coll.elements()[i], &others)?.is_none() {
            return Ok(Admissibility::Unreachable { index: i });
        }
    }
    Ok(Admissibility::Admissible)
}

/// Errors unless the collection is admissible.
pub fn require_admissible(coll: &ElementCollection) -> Result<()> {
    match is_admissible(coll)? {
        Admissibility::Admissible => Ok(()),
        Admissibility::NotGenerating => Err(Error::NotGenerating),
        Admissibility::Unreachable { index } => Err(Error::NotAdmissible { index }),
    }
}
