use num_bigint::BigInt;
use num_traits::One;

use super::group::{ElementCollection, GroupElement};
use super::membership::{check_subset, semigroup_membership};
use crate::error::{Error, Result};
use crate::index_set::IndexSet;

/// Default cap on the collection size for exhaustive link enumeration.
pub const LINK_ENUMERATION_CAP: usize = 10;

/// `a_target = sum_{j in support} alpha_j a_j` with every `alpha_j >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Link {
    pub target: usize,
    pub support: IndexSet,
    /// One coefficient per support index, in increasing index order.
    pub coefficients: Vec<BigInt>,
}

/// Returns one witness when `(a_target, support)` is a link.
pub fn is_link(coll: &ElementCollection, target: usize, support: IndexSet) -> Result<Option<Link>> {
    let size = coll.len();
    if target >= size {
        return Err(Error::IndexOutOfRange {
            index: target,
            size,
        });
    }
    check_subset(coll, support)?;
    if support.contains(target) {
        return Err(Error::IndexOverlap { index: target });
    }
    let gens = coll.select(support);
    let mut rest = coll.elements()[target].clone();
    for g in &gens {
        rest = rest.sub(g)?;
    }
    Ok(semigroup_membership(&rest, &gens)?.map(|x| Link {
        target,
        support,
        coefficients: x.into_iter().map(|c| c + BigInt::one()).collect(),
    }))
}

/// Every link of the collection, ordered by target and then by the sorted
/// support indices lexicographically.
pub fn enumerate_links(coll: &ElementCollection) -> Result<Vec<Link>> {
    enumerate_links_capped(coll, LINK_ENUMERATION_CAP)
}

pub fn enumerate_links_capped(coll: &ElementCollection, cap: usize) -> Result<Vec<Link>> {
    Error::check_cap("link enumeration", cap, coll.len())?;
    let mut out = Vec::new();
    for target in 0..coll.len() {
        let others = coll.all_indices().without(target);
        let mut supports: Vec<IndexSet> = others.subsets().collect();
        supports.sort_by_key(|s| s.to_vec());
        for support in supports {
            if let Some(link) = is_link(coll, target, support)? {
                out.push(link);
            }
        }
    }
    Ok(out)
}

/// Checks a link witness exactly.
pub fn verify_link(coll: &ElementCollection, link: &Link) -> bool {
    if link.support.contains(link.target)
        || link.coefficients.len() != link.support.len()
        || link.coefficients.iter().any(|c| c < &BigInt::one())
    {
        return false;
    }
    let mut acc = GroupElement::zero(coll.group());
    for (j, c) in link.support.iter().zip(&link.coefficients) {
        let Some(e) = coll.elements().get(j) else {
            return false;
        };
        acc = acc.add(&e.scale(c)).expect("same group");
    }
    coll.elements().get(link.target) == Some(&acc)
}
