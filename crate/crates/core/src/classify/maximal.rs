use std::collections::BTreeSet;

use crate::abelian::{direct_sum, generates_semigroup_a, require_admissible, ElementCollection};
use crate::error::{Error, Result};
use crate::fans::{is_regular_cone, is_simplicial, validate_fan, SimplicialFan, VectorConfiguration};
use crate::gale::{canonical_form, inverse_gale_transform};
use crate::index_set::IndexSet;
use crate::linalg::IntMatrix;

/// Cap on the collection size for [`build_maximal_fan`].
pub const MAXIMAL_FAN_CAP: usize = 20;

/// Index sets `I` whose complement generates the semigroup `A`, scanned by
/// size. A candidate is only tested when all its facets passed, since
/// shrinking the complement can only shrink the semigroup.
pub fn maximal_cones_of(coll: &ElementCollection) -> Result<BTreeSet<IndexSet>> {
    let r = coll.len();
    Error::check_cap("maximal fan", MAXIMAL_FAN_CAP, r)?;
    let mut cones = BTreeSet::new();
    cones.insert(IndexSet::EMPTY);
    let mut level = vec![IndexSet::EMPTY];
    while !level.is_empty() {
        let mut next = Vec::new();
        for &c in &level {
            let start = c.iter().last().map_or(0, |m| m + 1);
            for j in start..r {
                let cand = c.with(j);
                if !cand.facets().all(|f| cones.contains(&f)) {
                    continue;
                }
                if generates_semigroup_a(coll, cand.complement(r))? {
                    next.push(cand);
                }
            }
        }
        cones.extend(next.iter().copied());
        level = next;
    }
    Ok(cones)
}

/// The maximal strongly regular fan of an admissible pair.
///
/// Simpliciality, regularity and the fan axioms are re-checked on the
/// result; a failure is reported as an internal inconsistency.
pub fn build_maximal_fan(coll: &ElementCollection) -> Result<SimplicialFan> {
    Error::check_cap("maximal fan", MAXIMAL_FAN_CAP, coll.len())?;
    require_admissible(coll)?;
    let config = inverse_gale_transform(coll)?;
    let cones = maximal_cones_of(coll)?;
    for &c in &cones {
        if !is_simplicial(&config, c) || !is_regular_cone(&config, c)? {
            return Err(Error::Inconsistent(format!("cone {c} is not regular")));
        }
    }
    let fan = SimplicialFan::new(config, cones)?;
    let report = validate_fan(&fan)?;
    if let Some(v) = report.violations.first() {
        return Err(Error::Inconsistent(format!("maximal fan fails validation: {v}")));
    }
    Ok(fan)
}

/// `fan` has the rays of `maximal` and every cone of `fan` is a cone of
/// `maximal`.
pub fn is_big_open_subfan(fan: &SimplicialFan, maximal: &SimplicialFan) -> Result<bool> {
    if fan.config() != maximal.config() {
        return Err(Error::ConfigurationMismatch);
    }
    let rays = (0..fan.num_rays()).all(|i| fan.contains(IndexSet::singleton(i)));
    Ok(rays && fan.cones().is_subset(maximal.cones()))
}

/// `A1 + A2` in `P1 + P2`, first collection first.
pub fn direct_sum_pair(a: &ElementCollection, b: &ElementCollection) -> ElementCollection {
    let s = direct_sum(a.group(), b.group());
    let elements = a
        .elements()
        .iter()
        .map(|e| s.embed_left(e))
        .chain(b.elements().iter().map(|e| s.embed_right(e)))
        .collect();
    ElementCollection::new(s.group.clone(), elements).expect("one group")
}

/// Rays `(n_i, 0)` then `(0, n'_j)`; cones are unions of a cone of each.
pub fn product_fan(f1: &SimplicialFan, f2: &SimplicialFan) -> Result<SimplicialFan> {
    let (c1, c2) = (f1.config(), f2.config());
    let (n1, n2) = (c1.rank(), c2.rank());
    let (r1, r2) = (c1.len(), c2.len());
    let mut m = IntMatrix::zeros(n1 + n2, r1 + r2);
    for i in 0..r1 {
        for a in 0..n1 {
            m[(a, i)] = c1.vector(i)[a].clone();
        }
    }
    for j in 0..r2 {
        for b in 0..n2 {
            m[(n1 + b, r1 + j)] = c2.vector(j)[b].clone();
        }
    }
    let config = VectorConfiguration::from_column_matrix(&m)?;
    let mut cones = BTreeSet::new();
    for &s in f1.cones() {
        for &t in f2.cones() {
            cones.insert(IndexSet::from_mask(s.mask() | (t.mask() << r1)));
        }
    }
    SimplicialFan::new(config, cones)
}

/// Maximal cones all have `rank` rays and every cone with `rank - 1` rays
/// lies in exactly two of them.
pub fn has_complete_combinatorics(fan: &SimplicialFan) -> bool {
    let n = fan.config().rank();
    let maximal = fan.maximal_cones();
    if maximal.iter().any(|c| c.len() != n) {
        return false;
    }
    if n == 0 {
        return true;
    }
    fan.cones_of_dim(n - 1)
        .iter()
        .all(|f| maximal.iter().filter(|m| f.is_subset(**m)).count() == 2)
}

/// Same rays up to a lattice automorphism, position by position.
pub fn same_rays_up_to_isomorphism(a: &VectorConfiguration, b: &VectorConfiguration) -> bool {
    canonical_form(a) == canonical_form(b)
}
