//! Vector configurations, simplicial fans, Demazure roots and strong
//! regularity.
//!
//! Cones are index sets into the ray configuration; faces are subsets.

mod config;
mod fan;
mod roots;

pub use config::{
    cones_meet_in_common_face, is_primitive, is_regular_cone, is_simplicial, is_strictly_convex,
    primitivize, VectorConfiguration,
};
pub use fan::{is_regular_fan, require_valid, validate_fan, FanReport, FanViolation, SimplicialFan};
pub use roots::{
    check_root, he_connected_pairs, is_strongly_regular, is_suitable,
    one_skeleton_strongly_regular, root_exists_connecting, roots_in_box, ConeCertificate,
    DemazureRoot, RootOracle, StrongRegularity, Suitability,
};
