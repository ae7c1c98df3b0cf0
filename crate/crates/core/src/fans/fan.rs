use std::collections::BTreeSet;
use std::fmt;

use super::config::{
    cones_meet_in_common_face, is_primitive, is_regular_cone, is_simplicial, is_strictly_convex,
    primitivize, VectorConfiguration,
};
use crate::error::{Error, Result};
use crate::index_set::IndexSet;

/// A simplicial fan stored as index sets into the ray configuration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialFan {
    config: VectorConfiguration,
    cones: BTreeSet<IndexSet>,
}

impl SimplicialFan {
    /// Stores the cones as given; use [`validate_fan`] to check them.
    pub fn new(config: VectorConfiguration, cones: impl IntoIterator<Item = IndexSet>) -> Result<Self> {
        let cones: BTreeSet<IndexSet> = cones.into_iter().collect();
        for c in &cones {
            config.check_indices(*c)?;
        }
        Ok(SimplicialFan { config, cones })
    }

    /// All faces of the given cones, plus every ray and the zero cone.
    pub fn from_maximal_cones(
        config: VectorConfiguration,
        maximal: impl IntoIterator<Item = IndexSet>,
    ) -> Result<Self> {
        let mut cones: BTreeSet<IndexSet> = BTreeSet::new();
        cones.insert(IndexSet::EMPTY);
        for i in 0..config.len() {
            cones.insert(IndexSet::singleton(i));
        }
        for m in maximal {
            config.check_indices(m)?;
            cones.extend(m.subsets());
        }
        Ok(SimplicialFan { config, cones })
    }

    /// The rays and the zero cone.
    pub fn one_skeleton(config: VectorConfiguration) -> Self {
        SimplicialFan::from_maximal_cones(config, []).expect("no cones to check")
    }

    /// Every subset of the rays (a single regular cone and its faces when
    /// the rays form a basis).
    pub fn full_subset_lattice(config: VectorConfiguration) -> Self {
        let all = config.all_indices();
        SimplicialFan::from_maximal_cones(config, [all]).expect("indices in range")
    }

    pub fn config(&self) -> &VectorConfiguration {
        &self.config
    }

    pub fn cones(&self) -> &BTreeSet<IndexSet> {
        &self.cones
    }

    pub fn num_rays(&self) -> usize {
        self.config.len()
    }

    pub fn contains(&self, cone: IndexSet) -> bool {
        self.cones.contains(&cone)
    }

    /// Cones not properly contained in another cone, in fan order.
    pub fn maximal_cones(&self) -> Vec<IndexSet> {
        let mut kept: Vec<IndexSet> = Vec::new();
        for &c in self.cones.iter().rev() {
            if !kept.iter().any(|d| c.is_subset(*d)) {
                kept.push(c);
            }
        }
        kept.reverse();
        kept
    }

    pub fn cones_of_dim(&self, k: usize) -> Vec<IndexSet> {
        self.cones.iter().filter(|c| c.len() == k).copied().collect()
    }

    pub fn nonzero_cones(&self) -> impl Iterator<Item = IndexSet> + '_ {
        self.cones.iter().filter(|c| !c.is_empty()).copied()
    }

    /// Same configuration and every cone of `self` is a cone of `other`.
    pub fn is_subfan_of(&self, other: &SimplicialFan) -> bool {
        self.config == other.config && self.cones.is_subset(&other.cones)
    }

    pub fn with_cones(&self, cones: impl IntoIterator<Item = IndexSet>) -> Result<Self> {
        SimplicialFan::new(self.config.clone(), cones)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FanViolation {
    NotPrimitive { ray: usize },
    DuplicateRay { first: usize, second: usize },
    MissingZeroCone,
    MissingRay { ray: usize },
    MissingFace { cone: IndexSet, face: IndexSet },
    NotSimplicial { cone: IndexSet },
    NotStrictlyConvex { cone: IndexSet },
    BadIntersection { first: IndexSet, second: IndexSet },
}

impl fmt::Display for FanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanViolation::NotPrimitive { ray } => write!(f, "ray {} is not primitive", ray + 1),
            FanViolation::DuplicateRay { first, second } => {
                write!(f, "rays {} and {} span the same ray", first + 1, second + 1)
            }
            FanViolation::MissingZeroCone => write!(f, "the zero cone is missing"),
            FanViolation::MissingRay { ray } => write!(f, "ray {} is not a cone of the fan", ray + 1),
            FanViolation::MissingFace { cone, face } => {
                write!(f, "face {face} of cone {cone} is missing")
            }
            FanViolation::NotSimplicial { cone } => write!(f, "cone {cone} is not simplicial"),
            FanViolation::NotStrictlyConvex { cone } => {
                write!(f, "cone {cone} is not strictly convex")
            }
            FanViolation::BadIntersection { first, second } => {
                write!(f, "cones {first} and {second} do not meet in a common face")
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FanReport {
    pub violations: Vec<FanViolation>,
}

impl FanReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every fan axiom and reports all violations found.
///
/// Intersections are only tested between maximal cones; for face-closed
/// simplicial families this covers all pairs.
pub fn validate_fan(fan: &SimplicialFan) -> Result<FanReport> {
    validate_with(fan, |i, j| cones_meet_in_common_face(fan.config(), i, j))
}

pub(crate) fn validate_with(
    fan: &SimplicialFan,
    mut meets: impl FnMut(IndexSet, IndexSet) -> Result<bool>,
) -> Result<FanReport> {
    let config = fan.config();
    let mut v = Vec::new();

    let mut primitive = Vec::with_capacity(config.len());
    for i in 0..config.len() {
        if !is_primitive(config.vector(i))? {
            v.push(FanViolation::NotPrimitive { ray: i });
        }
        primitive.push(primitivize(config.vector(i))?);
    }
    for i in 0..config.len() {
        for j in i + 1..config.len() {
            if primitive[i] == primitive[j] {
                v.push(FanViolation::DuplicateRay { first: i, second: j });
            }
        }
    }
    if !fan.contains(IndexSet::EMPTY) {
        v.push(FanViolation::MissingZeroCone);
    }
    for i in 0..config.len() {
        if !fan.contains(IndexSet::singleton(i)) {
            v.push(FanViolation::MissingRay { ray: i });
        }
    }

    let mut geometric = true;
    for &c in fan.cones() {
        for face in c.facets() {
            if !fan.contains(face) {
                v.push(FanViolation::MissingFace { cone: c, face });
            }
        }
        // linearly independent generators always span a pointed cone
        if !is_simplicial(config, c) {
            v.push(FanViolation::NotSimplicial { cone: c });
            geometric = false;
            if !is_strictly_convex(config, c)? {
                v.push(FanViolation::NotStrictlyConvex { cone: c });
            }
        }
    }

    if geometric {
        let maximal = fan.maximal_cones();
        for (a, &i) in maximal.iter().enumerate() {
            for &j in &maximal[a + 1..] {
                if !meets(i, j)? {
                    v.push(FanViolation::BadIntersection { first: i, second: j });
                }
            }
        }
    }
    Ok(FanReport { violations: v })
}

/// Errors with the first violation unless the fan is valid.
pub fn require_valid(fan: &SimplicialFan) -> Result<()> {
    let report = validate_fan(fan)?;
    match report.violations.first() {
        None => Ok(()),
        Some(first) => Err(Error::InvalidFan(first.to_string())),
    }
}

/// Every cone of the fan is regular.
pub fn is_regular_fan(fan: &SimplicialFan) -> Result<bool> {
    for &c in fan.cones() {
        if !is_regular_cone(fan.config(), c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> VectorConfiguration {
        VectorConfiguration::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]]).unwrap()
    }

    #[test]
    fn p2_fan_is_valid() {
        let fan = SimplicialFan::from_maximal_cones(
            p2(),
            [
                IndexSet::from_indices([0, 1]),
                IndexSet::from_indices([1, 2]),
                IndexSet::from_indices([0, 2]),
            ],
        )
        .unwrap();
        assert_eq!(fan.cones().len(), 7);
        assert!(validate_fan(&fan).unwrap().is_valid());
        assert!(is_regular_fan(&fan).unwrap());
    }

    #[test]
    fn missing_face_reported() {
        let c = VectorConfiguration::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap();
        let fan = SimplicialFan::new(
            c,
            [IndexSet::EMPTY, IndexSet::singleton(1), IndexSet::from_indices([0, 1])],
        )
        .unwrap();
        let r = validate_fan(&fan).unwrap();
        assert!(r.violations.contains(&FanViolation::MissingFace {
            cone: IndexSet::from_indices([0, 1]),
            face: IndexSet::singleton(0),
        }));
        assert!(r.violations.contains(&FanViolation::MissingRay { ray: 0 }));
    }

    #[test]
    fn duplicate_direction_reported() {
        let c = VectorConfiguration::from_i64(2, &[&[1, 0], &[2, 0], &[0, 1]]).unwrap();
        let fan = SimplicialFan::one_skeleton(c);
        let r = validate_fan(&fan).unwrap();
        assert!(r.violations.contains(&FanViolation::DuplicateRay { first: 0, second: 1 }));
        assert!(r.violations.contains(&FanViolation::NotPrimitive { ray: 1 }));
    }

    #[test]
    fn overlapping_cones_reported() {
        let c = VectorConfiguration::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]).unwrap();
        let fan = SimplicialFan::from_maximal_cones(
            c,
            [IndexSet::from_indices([0, 1]), IndexSet::from_indices([2, 3])],
        )
        .unwrap();
        let r = validate_fan(&fan).unwrap();
        assert_eq!(
            r.violations,
            vec![FanViolation::BadIntersection {
                first: IndexSet::from_indices([0, 1]),
                second: IndexSet::from_indices([2, 3])
            }]
        );
    }

    #[test]
    fn maximal_cones_and_subfans() {
        let fan = SimplicialFan::from_maximal_cones(p2(), [IndexSet::from_indices([0, 1])]).unwrap();
        assert_eq!(
            fan.maximal_cones(),
            vec![IndexSet::singleton(2), IndexSet::from_indices([0, 1])]
        );
        let skel = SimplicialFan::one_skeleton(p2());
        assert!(skel.is_subfan_of(&fan));
        assert!(!fan.is_subfan_of(&skel));
    }
}
