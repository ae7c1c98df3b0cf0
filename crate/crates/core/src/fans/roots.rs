use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::config::{cones_meet_in_common_face, VectorConfiguration};
use super::fan::{validate_with, FanReport, SimplicialFan};
use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::linalg::{dot, ilp_feasible, lp_feasible, LinearSystem};

/// A covector `e` with `<n_rho, e> = -1` for its distinguished ray `rho`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct DemazureRoot {
    pub covector: Vec<BigInt>,
    pub distinguished_ray: usize,
}

impl DemazureRoot {
    pub fn pairing(&self, config: &VectorConfiguration, i: usize) -> BigInt {
        dot(config.vector(i), &self.covector)
    }

    /// Rays on which the covector vanishes.
    pub fn zero_set(&self, config: &VectorConfiguration) -> IndexSet {
        (0..config.len())
            .filter(|&i| self.pairing(config, i).is_zero())
            .collect()
    }
}

fn r2_holds(fan: &SimplicialFan, rho: usize, zero: IndexSet) -> bool {
    fan.cones()
        .iter()
        .filter(|c| c.is_subset(zero))
        .all(|c| fan.contains(c.with(rho)))
}

/// Checks (R1) against every ray of the fan and (R2) against its cones.
pub fn check_root(fan: &SimplicialFan, root: &DemazureRoot) -> Result<()> {
    let config = fan.config();
    let rho = root.distinguished_ray;
    if rho >= config.len() {
        return Err(Error::InvalidRoot(format!("ray {} does not exist", rho + 1)));
    }
    if root.covector.len() != config.rank() {
        return Err(Error::InvalidRoot(format!(
            "covector has length {}, lattice rank is {}",
            root.covector.len(),
            config.rank()
        )));
    }
    if root.pairing(config, rho) != -BigInt::one() {
        return Err(Error::InvalidRoot(format!(
            "pairing with the distinguished ray {} is not -1",
            rho + 1
        )));
    }
    for j in (0..config.len()).filter(|&j| j != rho) {
        if root.pairing(config, j).is_negative() {
            return Err(Error::InvalidRoot(format!("pairing with ray {} is negative", j + 1)));
        }
    }
    let zero = root.zero_set(config);
    if let Some(c) = fan
        .cones()
        .iter()
        .find(|c| c.is_subset(zero) && !fan.contains(c.with(rho)))
    {
        return Err(Error::InvalidRoot(format!(
            "cone {c} vanishes on the root but {} is not in the fan",
            c.with(rho)
        )));
    }
    Ok(())
}

/// All roots with `|e|_inf <= bound`, in lexicographic order of `e`.
pub fn roots_in_box(fan: &SimplicialFan, bound: u64) -> Result<Vec<DemazureRoot>> {
    let config = fan.config();
    let n = config.rank();
    let b = BigInt::from(bound);
    let mut out = Vec::new();
    let mut e = vec![-b.clone(); n];
    loop {
        let values: Vec<BigInt> = (0..config.len()).map(|i| dot(config.vector(i), &e)).collect();
        let negative: Vec<usize> = (0..values.len()).filter(|&i| values[i].is_negative()).collect();
        if let [rho] = negative[..] {
            if values[rho] == -BigInt::one() {
                let zero: IndexSet = (0..values.len()).filter(|&i| values[i].is_zero()).collect();
                if r2_holds(fan, rho, zero) {
                    out.push(DemazureRoot {
                        covector: e.clone(),
                        distinguished_ray: rho,
                    });
                }
            }
        }
        // odometer, last coordinate fastest
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if e[k] < b {
                e[k] += 1;
                for x in e.iter_mut().skip(k + 1) {
                    *x = -b.clone();
                }
                break;
            }
        }
    }
}

/// Per-cone evidence that a fan is strongly regular.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConeCertificate {
    pub cone: IndexSet,
    pub facet: IndexSet,
    pub root: DemazureRoot,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StrongRegularity {
    pub certificates: Vec<ConeCertificate>,
    /// First nonzero cone (in fan order) with no root to any facet.
    pub failing_cone: Option<IndexSet>,
}

impl StrongRegularity {
    pub fn is_strongly_regular(&self) -> bool {
        self.failing_cone.is_none()
    }
}

/// Root and fan queries over one configuration, with the integer feasibility
/// of root sign patterns and the pairwise cone meets cached.
///
/// Sign-pattern feasibility does not depend on the fan, so one oracle can be
/// shared by all subfans on the same rays.
#[derive(Debug)]
pub struct RootOracle {
    config: VectorConfiguration,
    patterns: RefCell<HashMap<(usize, IndexSet), Option<Vec<BigInt>>>>,
    meets: RefCell<HashMap<(IndexSet, IndexSet), bool>>,
}

impl RootOracle {
    pub fn new(config: &VectorConfiguration) -> Self {
        RootOracle {
            config: config.clone(),
            patterns: RefCell::new(HashMap::new()),
            meets: RefCell::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> &VectorConfiguration {
        &self.config
    }

    fn check_config(&self, fan: &SimplicialFan) -> Result<()> {
        if *fan.config() == self.config {
            Ok(())
        } else {
            Err(Error::ConfigurationMismatch)
        }
    }

    /// An integer covector that is `-1` on `rho`, `0` on `zero` and `>= 1` on
    /// every other ray.
    pub fn pattern_covector(&self, rho: usize, zero: IndexSet) -> Result<Option<Vec<BigInt>>> {
        if let Some(hit) = self.patterns.borrow().get(&(rho, zero)) {
            return Ok(hit.clone());
        }
        let config = &self.config;
        let mut sys = LinearSystem::new(config.rank());
        sys.add_equality(config.vector(rho).to_vec(), -BigInt::one());
        for j in (0..config.len()).filter(|&j| j != rho) {
            if zero.contains(j) {
                sys.add_equality(config.vector(j).to_vec(), BigInt::zero());
            } else {
                sys.add_at_least(config.vector(j).to_vec(), BigInt::one());
            }
        }
        let found = if lp_feasible(&sys)?.is_none() {
            None
        } else {
            ilp_feasible(&sys, &[])?
        };
        self.patterns.borrow_mut().insert((rho, zero), found.clone());
        Ok(found)
    }

    pub fn meets(&self, i: IndexSet, j: IndexSet) -> Result<bool> {
        let key = if i <= j { (i, j) } else { (j, i) };
        if let Some(&hit) = self.meets.borrow().get(&key) {
            return Ok(hit);
        }
        let m = cones_meet_in_common_face(&self.config, i, j)?;
        self.meets.borrow_mut().insert(key, m);
        Ok(m)
    }

    pub fn validate(&self, fan: &SimplicialFan) -> Result<FanReport> {
        self.check_config(fan)?;
        validate_with(fan, |i, j| self.meets(i, j))
    }

    /// A root of `fan` connecting `sigma` with its facet `tau`.
    ///
    /// The zero set `Z` of such a root contains `tau` and decides (R2) on its
    /// own, so candidate zero sets satisfying (R2) are generated by size and
    /// each is tested for an integer covector with that exact sign pattern.
    pub fn connecting_root(
        &self,
        fan: &SimplicialFan,
        sigma: IndexSet,
        tau: IndexSet,
    ) -> Result<Option<DemazureRoot>> {
        self.check_config(fan)?;
        self.config.check_indices(sigma)?;
        if !tau.is_subset(sigma) || sigma.len() != tau.len() + 1 {
            return Err(Error::NotAFacet { sigma, tau });
        }
        let rho = sigma.difference(tau).iter().next().expect("one element");
        if !r2_holds(fan, rho, tau) {
            return Ok(None);
        }
        let free = self.config.all_indices().without(rho).difference(tau);
        let free: Vec<usize> = free.to_vec();

        // level k holds the valid zero sets with k elements beyond tau,
        // together with the position of their largest added element
        let mut level: Vec<(IndexSet, usize)> = vec![(tau, 0)];
        while !level.is_empty() {
            for &(zero, _) in &level {
                if let Some(e) = self.pattern_covector(rho, zero)? {
                    return Ok(Some(DemazureRoot {
                        covector: e,
                        distinguished_ray: rho,
                    }));
                }
            }
            let mut next = Vec::new();
            for &(zero, start) in &level {
                for (p, &k) in free.iter().enumerate().skip(start) {
                    let z = zero.with(k);
                    if r2_holds(fan, rho, z) {
                        next.push((z, p + 1));
                    }
                }
            }
            level = next;
        }
        Ok(None)
    }

    /// Strong regularity of a fan on this configuration; the fan is
    /// validated first.
    pub fn strong_regularity(&self, fan: &SimplicialFan) -> Result<StrongRegularity> {
        let report = self.validate(fan)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidFan(v.to_string()));
        }
        self.strong_regularity_of_valid(fan)
    }

    pub(crate) fn strong_regularity_of_valid(&self, fan: &SimplicialFan) -> Result<StrongRegularity> {
        let mut certificates = Vec::new();
        for sigma in fan.nonzero_cones() {
            let mut found = None;
            for tau in sigma.facets() {
                if let Some(root) = self.connecting_root(fan, sigma, tau)? {
                    found = Some(ConeCertificate {
                        cone: sigma,
                        facet: tau,
                        root,
                    });
                    break;
                }
            }
            match found {
                Some(c) => certificates.push(c),
                None => {
                    return Ok(StrongRegularity {
                        certificates,
                        failing_cone: Some(sigma),
                    })
                }
            }
        }
        Ok(StrongRegularity {
            certificates,
            failing_cone: None,
        })
    }

    /// Whether every nonzero cone is connected by a root with every one of
    /// its facets.
    pub fn every_facet_connected(&self, fan: &SimplicialFan) -> Result<bool> {
        for sigma in fan.nonzero_cones() {
            for tau in sigma.facets() {
                if self.connecting_root(fan, sigma, tau)?.is_none() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn root_exists_connecting(
    fan: &SimplicialFan,
    sigma: IndexSet,
    tau: IndexSet,
) -> Result<Option<DemazureRoot>> {
    RootOracle::new(fan.config()).connecting_root(fan, sigma, tau)
}

pub fn is_strongly_regular(fan: &SimplicialFan) -> Result<StrongRegularity> {
    RootOracle::new(fan.config()).strong_regularity(fan)
}

/// Pairs `(sigma_1, sigma_2)` such that `sigma_2` is connected with its
/// facet `sigma_1` by the root.
pub fn he_connected_pairs(fan: &SimplicialFan, root: &DemazureRoot) -> Result<Vec<(IndexSet, IndexSet)>> {
    check_root(fan, root)?;
    let config = fan.config();
    let rho = root.distinguished_ray;
    let zero = root.zero_set(config);
    Ok(fan
        .cones()
        .iter()
        .filter(|c| c.contains(rho) && c.without(rho).is_subset(zero))
        .map(|c| (c.without(rho), *c))
        .collect())
}

/// Integer covectors `e_i` with `<n_i, e_i> = -1` and `<n_j, e_i> >= 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Suitability {
    pub witnesses: Vec<Option<Vec<BigInt>>>,
}

impl Suitability {
    pub fn is_suitable(&self) -> bool {
        self.witnesses.iter().all(Option::is_some)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.witnesses.iter().position(Option::is_none)
    }
}

pub fn is_suitable(config: &VectorConfiguration) -> Result<Suitability> {
    let mut witnesses = Vec::with_capacity(config.len());
    for i in 0..config.len() {
        let mut sys = LinearSystem::new(config.rank());
        sys.add_equality(config.vector(i).to_vec(), -BigInt::one());
        for j in (0..config.len()).filter(|&j| j != i) {
            sys.add_at_least(config.vector(j).to_vec(), BigInt::zero());
        }
        witnesses.push(ilp_feasible(&sys, &[])?);
    }
    Ok(Suitability { witnesses })
}

/// Strong regularity of the fan made of the rays and the zero cone.
///
/// With at most two rays this always holds; otherwise each ray must be an
/// extreme ray of a pointed cone, i.e. cut out by a functional vanishing on
/// it and positive on the other rays.
pub fn one_skeleton_strongly_regular(config: &VectorConfiguration) -> Result<bool> {
    let r = config.len();
    if r <= 2 {
        return Ok(true);
    }
    for i in 0..r {
        let mut sys = LinearSystem::new(config.rank());
        sys.add_equality(config.vector(i).to_vec(), BigInt::zero());
        for j in (0..r).filter(|&j| j != i) {
            sys.add_at_least(config.vector(j).to_vec(), BigInt::one());
        }
        if lp_feasible(&sys)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
