//! Finitely generated abelian groups in invariant-factor form, membership
//! in generated subgroups and semigroups, admissibility and links.

mod group;
mod links;
mod membership;

pub use group::{
    direct_sum, group_from_cokernel, project, AbelianGroup, DirectSum, ElementCollection,
    GroupElement,
};
pub use links::{
    enumerate_links, enumerate_links_capped, is_link, verify_link, Link, LINK_ENUMERATION_CAP,
};
pub use membership::{
    elements_generate_group, express_in_span, generates_group, generates_semigroup_a,
    is_admissible, membership_bound, require_admissible, semigroup_membership,
    subgroup_membership, verify_combination, Admissibility,
};
