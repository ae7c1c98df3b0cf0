//! Lattice and rational Gale transforms, canonical forms of configurations
//! and equivalence of pairs `(P, A)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::abelian::{
    elements_generate_group, express_in_span, group_from_cokernel, project, AbelianGroup,
    ElementCollection, GroupElement,
};
use crate::error::{Error, Result};
use crate::fans::VectorConfiguration;
use crate::index_set::IndexSet;
use crate::linalg::{
    canonical_lattice_basis, clear_denominators, integer_kernel, lp_feasible, rational_kernel,
    IntMatrix, LinearSystem,
};

/// Default cap on the torsion order for [`pairs_equivalent`].
pub const EQUIVALENCE_TORSION_CAP: usize = 64;
/// Default cap on the free rank for [`pairs_equivalent`].
pub const EQUIVALENCE_FREE_RANK_CAP: usize = 3;

/// `P = Z^r / M` where `M` is the row space of the configuration matrix,
/// with `a_i` the class of the `i`-th basis vector.
pub fn lattice_gale_transform(config: &VectorConfiguration) -> ElementCollection {
    let r = config.len();
    let (group, proj) = group_from_cokernel(&config.column_matrix().transpose());
    let group = Arc::new(group);
    let elements = (0..r)
        .map(|i| {
            let mut e = vec![BigInt::zero(); r];
            e[i] = BigInt::one();
            project(&group, &proj, &e)
        })
        .collect();
    ElementCollection::new(group, elements).expect("one group")
}

/// The configuration whose Gale transform is the given pair, returned in
/// canonical form.
///
/// `M = ker(Z^r -> P)` is computed as the projection of the integer kernel
/// of the lifted system `[free part; torsion part | -diag(d)]`; the `n_i` are
/// the coordinates of `e_i` against a basis of `M`.
pub fn inverse_gale_transform(coll: &ElementCollection) -> Result<VectorConfiguration> {
    let group = coll.group();
    if !elements_generate_group(group, coll.elements())? {
        return Err(Error::NotGenerating);
    }
    let r = coll.len();
    let f = group.free_rank();
    let tau = group.torsion().len();
    let mut lifted = IntMatrix::zeros(f + tau, r + tau);
    for (i, a) in coll.elements().iter().enumerate() {
        for (c, x) in a.coords().into_iter().enumerate() {
            lifted[(c, i)] = x;
        }
    }
    for (j, d) in group.torsion().iter().enumerate() {
        lifted[(f + j, r + j)] = -d;
    }
    let kernel: Vec<Vec<BigInt>> = integer_kernel(&lifted)
        .into_iter()
        .map(|mut v| {
            v.truncate(r);
            v
        })
        .collect();
    let basis = canonical_lattice_basis(&kernel, r);
    let n = basis.len();
    let m = IntMatrix::from_rows(&basis, r)?;
    if n + f != r {
        return Err(Error::Inconsistent(format!(
            "kernel rank {n} does not match {r} - {f}"
        )));
    }
    VectorConfiguration::from_column_matrix(&m)
}

/// Hermite normal form of the configuration matrix under left unimodular
/// action; equal for two configurations iff a lattice automorphism maps one
/// onto the other position by position.
pub fn canonical_form(config: &VectorConfiguration) -> VectorConfiguration {
    let basis = canonical_lattice_basis(&config.column_matrix().row_vecs(), config.len());
    let m = IntMatrix::from_rows(&basis, config.len()).expect("row lengths");
    VectorConfiguration::from_column_matrix(&m).expect("rank is preserved")
}

/// The rational Gale dual `w_1, ..., w_r` in `Q^(r - n)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearGale {
    pub dim: usize,
    pub vectors: Vec<Vec<BigRational>>,
}

/// `w_i = (k_1[i], ..., k_d[i])` for a basis `k_1, ..., k_d` of the rational
/// kernel of the configuration matrix.
pub fn linear_gale_transform(config: &VectorConfiguration) -> Result<LinearGale> {
    let kernel = rational_kernel(&config.column_matrix());
    let dim = kernel.len();
    let vectors: Vec<Vec<BigRational>> = (0..config.len())
        .map(|i| kernel.iter().map(|k| k[i].clone()).collect())
        .collect();
    let gale = LinearGale { dim, vectors };
    if !bilinear_relation_holds(config, &gale) {
        return Err(Error::Inconsistent("sum of v_i (x) w_i is not zero".into()));
    }
    Ok(gale)
}

/// `sum_i v_i (x) w_i = 0`, evaluated exactly.
pub fn bilinear_relation_holds(config: &VectorConfiguration, gale: &LinearGale) -> bool {
    if gale.vectors.len() != config.len() || gale.vectors.iter().any(|w| w.len() != gale.dim) {
        return false;
    }
    (0..config.rank()).all(|a| {
        (0..gale.dim).all(|b| {
            (0..config.len())
                .map(|i| BigRational::from_integer(config.vector(i)[a].clone()) * &gale.vectors[i][b])
                .sum::<BigRational>()
                .is_zero()
        })
    })
}

/// Common relative interior point of `cone(w_k, k not in I)` and
/// `cone(w_s, s not in J)`: positive `mu`, `nu` with
/// `sum mu_k w_k = sum nu_s w_s`.
pub fn gale_cones_share_interior_point(gale: &LinearGale, i: IndexSet, j: IndexSet) -> Result<bool> {
    let r = gale.vectors.len();
    let left: Vec<usize> = i.complement(r).to_vec();
    let right: Vec<usize> = j.complement(r).to_vec();
    // positive rescaling of each w keeps both cones
    let w: Vec<Vec<BigInt>> = gale.vectors.iter().map(|v| clear_denominators(v)).collect();
    let vars = left.len() + right.len();
    let mut sys = LinearSystem::new(vars);
    for b in 0..gale.dim {
        let row: Vec<BigInt> = left
            .iter()
            .map(|&k| w[k][b].clone())
            .chain(right.iter().map(|&s| -&w[s][b]))
            .collect();
        sys.add_equality(row, BigInt::zero());
    }
    for v in 0..vars {
        let mut row = vec![BigInt::zero(); vars];
        row[v] = BigInt::one();
        sys.add_at_least(row, BigInt::one());
    }
    Ok(lp_feasible(&sys)?.is_some())
}

/// Whether some isomorphism `P1 -> P2` maps `A1` onto `A2` as multisets.
///
/// The collections must generate their groups. A generating subset `S` of
/// `A1` is fixed, and every assignment of values of `A2` to `S` is tried; the
/// assignment determines a homomorphism on the normal-form generators, which
/// is accepted if it is well defined and maps `A1` onto `A2`. Such a map is
/// onto, hence an isomorphism of isomorphic finitely generated groups.
pub fn pairs_equivalent(a: &ElementCollection, b: &ElementCollection) -> Result<bool> {
    for c in [a, b] {
        let order = c.group().torsion_order().to_usize().unwrap_or(usize::MAX);
        Error::check_cap("torsion order", EQUIVALENCE_TORSION_CAP, order)?;
        Error::check_cap("free rank", EQUIVALENCE_FREE_RANK_CAP, c.group().free_rank())?;
        if !elements_generate_group(c.group(), c.elements())? {
            return Err(Error::NotGenerating);
        }
    }
    if a.group() != b.group() || a.len() != b.len() {
        return Ok(false);
    }
    let p1 = a.group();
    let p2 = b.group();

    let s = generating_subset(a)?;
    let s_elems: Vec<GroupElement> = s.iter().map(|&i| a.elements()[i].clone()).collect();
    // g_k = sum_s c_ks a_s for each normal-form generator of P1
    let mut expressions = Vec::with_capacity(p1.num_coords());
    for k in 0..p1.num_coords() {
        let g = GroupElement::generator(p1, k);
        expressions.push(express_in_span(&g, &s_elems)?.ok_or_else(|| {
            Error::Inconsistent("generating subset does not span a generator".into())
        })?);
    }

    let target = b.sorted_elements();
    let values: Vec<GroupElement> = target
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut choice = vec![0usize; s.len()];
    loop {
        let images: Vec<&GroupElement> = choice.iter().map(|&c| &values[c]).collect();
        if let Some(gamma) = homomorphism(p1, p2, &expressions, &images) {
            let mut mapped: Vec<GroupElement> = a.elements().iter().map(|x| apply(&gamma, p2, x)).collect();
            mapped.sort();
            if mapped == target {
                return Ok(true);
            }
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(false);
            }
            choice[k] += 1;
            if choice[k] < values.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Indices added greedily while they enlarge the generated subgroup.
fn generating_subset(c: &ElementCollection) -> Result<Vec<usize>> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut elems: Vec<GroupElement> = Vec::new();
    for (i, e) in c.elements().iter().enumerate() {
        if elements_generate_group(c.group(), &elems)? {
            break;
        }
        if !crate::abelian::subgroup_membership(e, &elems)? {
            chosen.push(i);
            elems.push(e.clone());
        }
    }
    Ok(chosen)
}

/// Images of the normal-form generators, if they respect the torsion
/// relations.
fn homomorphism(
    p1: &Arc<AbelianGroup>,
    p2: &Arc<AbelianGroup>,
    expressions: &[Vec<BigInt>],
    images: &[&GroupElement],
) -> Option<Vec<GroupElement>> {
    let mut gens = Vec::with_capacity(expressions.len());
    for (k, coeffs) in expressions.iter().enumerate() {
        let mut g = GroupElement::zero(p2);
        for (c, img) in coeffs.iter().zip(images) {
            g = g.add(&img.scale(c)).ok()?;
        }
        if k >= p1.free_rank() && !g.scale(&p1.torsion()[k - p1.free_rank()]).is_zero() {
            return None;
        }
        gens.push(g);
    }
    Some(gens)
}

fn apply(gamma: &[GroupElement], p2: &Arc<AbelianGroup>, x: &GroupElement) -> GroupElement {
    let mut acc = GroupElement::zero(p2);
    for (c, g) in x.coords().iter().zip(gamma) {
        acc = acc.add(&g.scale(c)).expect("same group");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fans::cones_meet_in_common_face;
    use crate::linalg::to_bigints;

    fn cfg(n: usize, v: &[&[i64]]) -> VectorConfiguration {
        VectorConfiguration::from_i64(n, v).unwrap()
    }

    #[test]
    fn transform_of_two_rays() {
        let t = lattice_gale_transform(&cfg(2, &[&[1, 0], &[1, 2]]));
        assert_eq!(**t.group(), AbelianGroup::cyclic(2));
        assert_eq!(t, ElementCollection::residues(2, &[1, 1]));
        let lin = linear_gale_transform(&cfg(2, &[&[1, 0], &[1, 2]])).unwrap();
        assert_eq!(lin.dim, 0);
        assert_eq!(lin.vectors, vec![Vec::<BigRational>::new(); 2]);
    }

    #[test]
    fn transform_of_standard_basis_and_p2() {
        let t = lattice_gale_transform(&cfg(2, &[&[1, 0], &[0, 1]]));
        assert!(t.group().is_trivial());
        assert!(t.elements().iter().all(GroupElement::is_zero));
        let t = lattice_gale_transform(&cfg(2, &[&[1, 0], &[0, 1], &[-1, -1]]));
        assert_eq!(t, ElementCollection::integers(&[1, 1, 1]));
        let lin = linear_gale_transform(&cfg(2, &[&[1, 0], &[0, 1], &[-1, -1]])).unwrap();
        assert_eq!(lin.dim, 1);
        assert!(lin.vectors.iter().all(|w| w == &lin.vectors[0]));
    }

    #[test]
    fn inverse_examples() {
        let c = inverse_gale_transform(&ElementCollection::residues(3, &[1, 2])).unwrap();
        assert_eq!(c, canonical_form(&cfg(2, &[&[1, 0], &[1, 3]])));
        let c = inverse_gale_transform(&ElementCollection::residues(3, &[1, 1])).unwrap();
        assert_eq!(c, canonical_form(&cfg(2, &[&[1, 0], &[2, 3]])));
        let trivial = ElementCollection::from_coords(AbelianGroup::trivial(), &[vec![], vec![]]).unwrap();
        assert_eq!(inverse_gale_transform(&trivial).unwrap(), cfg(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(
            inverse_gale_transform(&ElementCollection::integers(&[2, 2])),
            Err(Error::NotGenerating)
        );
    }

    #[test]
    fn canonical_forms() {
        let a = canonical_form(&cfg(2, &[&[1, 0], &[-1, 3]]));
        let b = canonical_form(&cfg(2, &[&[1, 0], &[2, 3]]));
        assert_eq!(a, b);
        assert_eq!(canonical_form(&a), a);
        let c = canonical_form(&cfg(2, &[&[1, 0], &[1, 2]]));
        assert_eq!(c.vectors(), &[to_bigints(&[1, 0]), to_bigints(&[1, 2])]);
    }

    #[test]
    fn equivalence_examples() {
        let a = ElementCollection::residues(3, &[1, 1]);
        assert!(pairs_equivalent(&a, &ElementCollection::residues(3, &[2, 2])).unwrap());
        assert!(!pairs_equivalent(&a, &ElementCollection::residues(3, &[1, 2])).unwrap());
        assert!(pairs_equivalent(&a, &a).unwrap());
        let z = ElementCollection::integers(&[1, 1, 2, 3]);
        let zneg = ElementCollection::integers(&[-3, -1, -2, -1]);
        assert!(pairs_equivalent(&z, &zneg).unwrap());
        assert!(!pairs_equivalent(&z, &ElementCollection::integers(&[1, 1, 1, 3])).unwrap());
    }

    #[test]
    fn equivalence_caps() {
        let big = ElementCollection::residues(65, &[1]);
        assert!(matches!(pairs_equivalent(&big, &big), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn separation_both_ways() {
        let c = cfg(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]);
        let g = linear_gale_transform(&c).unwrap();
        let all = c.all_indices();
        for i in all.subsets().filter(|s| s.len() <= 2) {
            for j in all.subsets().filter(|s| s.len() <= 2) {
                assert_eq!(
                    cones_meet_in_common_face(&c, i, j).unwrap(),
                    gale_cones_share_interior_point(&g, i, j).unwrap(),
                    "{i} {j}"
                );
            }
        }
    }
}
