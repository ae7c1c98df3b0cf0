use std::collections::BTreeSet;
use std::fmt;

use super::maximal::maximal_cones_of;
use crate::abelian::{enumerate_links, generates_semigroup_a, ElementCollection, Link};
use crate::error::{Error, Result};
use crate::fans::{SimplicialFan, VectorConfiguration};
use crate::gale::{canonical_form, inverse_gale_transform};
use crate::index_set::IndexSet;

/// Cap on the collection size for [`enumerate_connected_gsets`].
pub const GSET_ENUMERATION_CAP: usize = 4;

/// A family of generating subcollections, each stored as an index set.
///
/// The cone attached to a member is spanned by the rays outside it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GSet {
    collection: ElementCollection,
    members: BTreeSet<IndexSet>,
}

impl GSet {
    /// Checks that every member generates the semigroup `A` and that the
    /// whole collection is a member.
    pub fn new(collection: ElementCollection, members: impl IntoIterator<Item = IndexSet>) -> Result<Self> {
        let members: BTreeSet<IndexSet> = members.into_iter().collect();
        let full = collection.all_indices();
        if !members.contains(&full) {
            return Err(Error::InvalidGSet("the whole collection must be a member".into()));
        }
        for &b in &members {
            if !generates_semigroup_a(&collection, b)? {
                return Err(Error::InvalidGSet(format!("member {b} is not generating")));
            }
        }
        Ok(GSet { collection, members })
    }

    pub(crate) fn new_unchecked(collection: ElementCollection, members: BTreeSet<IndexSet>) -> Self {
        GSet { collection, members }
    }

    pub fn collection(&self) -> &ElementCollection {
        &self.collection
    }

    pub fn members(&self) -> &BTreeSet<IndexSet> {
        &self.members
    }

    pub fn contains(&self, member: IndexSet) -> bool {
        self.members.contains(&member)
    }

    /// Complements of the members.
    pub fn cones(&self) -> BTreeSet<IndexSet> {
        let r = self.collection.len();
        self.members.iter().map(|b| b.complement(r)).collect()
    }
}

fn check_rays(config: &VectorConfiguration, coll: &ElementCollection) -> Result<()> {
    let rays = inverse_gale_transform(coll)?;
    if config.len() != coll.len() || canonical_form(config) != canonical_form(&rays) {
        return Err(Error::ConfigurationMismatch);
    }
    Ok(())
}

/// The family `{complement of sigma : sigma in fan}`.
///
/// The rays of the fan must be the inverse Gale transform of `coll`,
/// position by position; a cone whose complement is not generating is not
/// a cone of the maximal fan.
pub fn gset_from_subfan(fan: &SimplicialFan, coll: &ElementCollection) -> Result<GSet> {
    check_rays(fan.config(), coll)?;
    let r = coll.len();
    let mut members = BTreeSet::new();
    for &c in fan.cones() {
        let b = c.complement(r);
        if !generates_semigroup_a(coll, b)? {
            return Err(Error::NotSubfan { cone: c });
        }
        members.insert(b);
    }
    if !members.contains(&coll.all_indices()) {
        return Err(Error::InvalidGSet("the fan has no zero cone".into()));
    }
    Ok(GSet::new_unchecked(coll.clone(), members))
}

/// The fan on `rays` whose cones are the complements of the members.
pub fn subfan_from_gset(gset: &GSet, rays: &VectorConfiguration) -> Result<SimplicialFan> {
    check_rays(rays, &gset.collection)?;
    SimplicialFan::new(rays.clone(), gset.cones())
}

/// Outcome of [`is_connected_gset`]; the first violated condition wins.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Connectedness {
    Connected,
    /// (C1): the co-singleton of this index is missing.
    MissingCoSingleton { index: usize },
    /// (C2): `member` is present but its superset `superset` is not.
    NotUpwardClosed { member: IndexSet, superset: IndexSet },
    /// (C3): no 𝒢-link `(a, S)` with `S ⊆ member` and `a ∉ member`.
    NoGLink { member: IndexSet },
}

impl Connectedness {
    pub fn is_connected(&self) -> bool {
        *self == Connectedness::Connected
    }
}

impl fmt::Display for Connectedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Connectedness::Connected => write!(f, "connected"),
            Connectedness::MissingCoSingleton { index } => {
                write!(f, "(C1) fails: the complement of {} is missing", index + 1)
            }
            Connectedness::NotUpwardClosed { member, superset } => {
                write!(f, "(C2) fails: {member} is a member but {superset} is not")
            }
            Connectedness::NoGLink { member } => write!(f, "(C3) fails: no link for {member}"),
        }
    }
}

/// `(a, S)` is a 𝒢-link: every member containing `S` and `a` stays a
/// member after removing `a`.
pub fn is_g_link(gset: &GSet, target: usize, support: IndexSet) -> bool {
    let need = support.with(target);
    gset.members
        .iter()
        .filter(|b| need.is_subset(**b))
        .all(|b| gset.members.contains(&b.without(target)))
}

/// Checks (C1), (C2) and (C3) in that order.
pub fn is_connected_gset(gset: &GSet) -> Result<Connectedness> {
    let links = enumerate_links(&gset.collection)?;
    Ok(connectedness_with(gset, &links))
}

fn connectedness_with(gset: &GSet, links: &[Link]) -> Connectedness {
    let r = gset.collection.len();
    let full = gset.collection.all_indices();
    for i in 0..r {
        if !gset.contains(full.without(i)) {
            return Connectedness::MissingCoSingleton { index: i };
        }
    }
    for &b in &gset.members {
        for j in b.complement(r).iter() {
            if !gset.contains(b.with(j)) {
                return Connectedness::NotUpwardClosed {
                    member: b,
                    superset: b.with(j),
                };
            }
        }
    }
    let g_links: Vec<&Link> = links
        .iter()
        .filter(|l| is_g_link(gset, l.target, l.support))
        .collect();
    for &b in &gset.members {
        if b == full {
            continue;
        }
        let found = g_links
            .iter()
            .any(|l| l.support.is_subset(b) && !b.contains(l.target));
        if !found {
            return Connectedness::NoGLink { member: b };
        }
    }
    Connectedness::Connected
}

/// Every connected family of generating subcollections.
///
/// Candidates are the face-closed families of maximal-fan cones that
/// contain every ray; the order follows the binary counter over the cones
/// of dimension at least two.
pub fn enumerate_connected_gsets(coll: &ElementCollection) -> Result<Vec<GSet>> {
    let r = coll.len();
    Error::check_cap("connected G-set enumeration", GSET_ENUMERATION_CAP, r)?;
    let cones = maximal_cones_of(coll)?;
    let base: BTreeSet<IndexSet> = cones.iter().filter(|c| c.len() <= 1).copied().collect();
    if base.len() != r + 1 {
        return Ok(Vec::new());
    }
    let higher: Vec<IndexSet> = cones.iter().filter(|c| c.len() >= 2).copied().collect();
    let links = enumerate_links(coll)?;
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << higher.len()) {
        let mut family = base.clone();
        family.extend((0..higher.len()).filter(|k| mask >> k & 1 == 1).map(|k| higher[k]));
        let closed = family
            .iter()
            .all(|c| c.len() < 2 || c.facets().all(|f| family.contains(&f)));
        if !closed {
            continue;
        }
        let members = family.iter().map(|c| c.complement(r)).collect();
        let gset = GSet::new_unchecked(coll.clone(), members);
        if connectedness_with(&gset, &links).is_connected() {
            out.push(gset);
        }
    }
    Ok(out)
}
