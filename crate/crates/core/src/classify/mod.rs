//! The maximal strongly regular fan of an admissible pair, connected
//! families of generating subcollections, and the classifiers built on top.

mod gset;
mod maximal;
mod report;

pub use gset::{
    enumerate_connected_gsets, gset_from_subfan, is_connected_gset, is_g_link, subfan_from_gset,
    Connectedness, GSet, GSET_ENUMERATION_CAP,
};
pub use maximal::{
    build_maximal_fan, direct_sum_pair, has_complete_combinatorics, is_big_open_subfan,
    maximal_cones_of, product_fan, same_rays_up_to_isomorphism, MAXIMAL_FAN_CAP,
};
pub use report::{
    classify_pair, is_complete, is_quasiaffine, product_decomposition, rank_one_type,
    semisimple_shape, ClassificationReport, RankOneType, SemisimpleShape,
};
