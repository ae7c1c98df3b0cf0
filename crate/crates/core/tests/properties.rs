mod common;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use common::*;
use toric_gale::abelian::{
    generates_group, generates_semigroup_a, is_admissible, membership_bound, semigroup_membership,
    subgroup_membership, verify_combination,
    ElementCollection, GroupElement,
};
use toric_gale::classify::{
    build_maximal_fan, classify_pair, direct_sum_pair, has_complete_combinatorics, product_fan,
};
use toric_gale::fans::{
    check_root, cones_meet_in_common_face, he_connected_pairs, is_primitive, is_regular_cone,
    is_regular_fan,
    is_simplicial, is_strongly_regular, is_suitable, one_skeleton_strongly_regular, roots_in_box,
    validate_fan, RootOracle, SimplicialFan,
};
use toric_gale::gale::{
    bilinear_relation_holds, canonical_form, inverse_gale_transform, lattice_gale_transform,
    linear_gale_transform, pairs_equivalent,
};
use toric_gale::linalg::{
    a_priori_bound, hermite_normal_form, ilp_feasible, integer_kernel, lp_feasible, rank, smith_normal_form,
    IntMatrix, LinearSystem,
};
use toric_gale::IndexSet;

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(m, n)| {
        proptest::collection::vec(-6i64..=6, m * n).prop_map(move |e| {
            IntMatrix::from_entries(m, n, e.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

fn is_unimodular(u: &IntMatrix) -> bool {
    u.determinant().abs().is_one()
}

/// Up to two constraints over up to three variables, each variable boxed in
/// `[-3, 3]` so that brute force is exact.
fn small_system() -> impl Strategy<Value = (LinearSystem, Vec<usize>)> {
    (1usize..=3).prop_flat_map(|n| {
        let row = (proptest::collection::vec(-3i64..=3, n), -4i64..=4, 0u8..3);
        (proptest::collection::vec(row, 1..=2), proptest::collection::vec(any::<bool>(), n))
            .prop_map(move |(rows, nonneg)| {
                let mut s = LinearSystem::new(n);
                for (a, b, kind) in rows {
                    let a: Vec<BigInt> = a.into_iter().map(BigInt::from).collect();
                    match kind {
                        0 => s.add_equality(a, b.into()),
                        1 => s.add_at_least(a, b.into()),
                        _ => s.add_at_most(a, b.into()),
                    };
                }
                for j in 0..n {
                    let mut e = vec![BigInt::zero(); n];
                    e[j] = BigInt::one();
                    s.add_at_least(e.clone(), BigInt::from(-3));
                    s.add_at_most(e, BigInt::from(3));
                }
                let nonneg = (0..n).filter(|&j| nonneg[j]).collect();
                (s, nonneg)
            })
    })
}

fn brute_force(s: &LinearSystem, nonneg: &[usize]) -> bool {
    let n = s.num_vars;
    let total = 7usize.pow(n as u32);
    (0..total).any(|mut k| {
        let x: Vec<BigInt> = (0..n)
            .map(|_| {
                let v = (k % 7) as i64 - 3;
                k /= 7;
                BigInt::from(v)
            })
            .collect();
        nonneg.iter().all(|&j| !x[j].is_negative()) && s.is_satisfied_by_integers(&x)
    })
}

/// Unboxed systems with entries in `[-4, 4]`, small enough that the
/// a-priori box can be enumerated.
fn unboxed_system() -> impl Strategy<Value = (LinearSystem, Vec<usize>)> {
    (1usize..=3, 1usize..=2).prop_filter("box too large", |(n, m)| n * m <= 4).prop_flat_map(|(n, m)| {
        let row = (proptest::collection::vec(-4i64..=4, n), -4i64..=4, 0u8..3);
        (proptest::collection::vec(row, m), proptest::collection::vec(any::<bool>(), n)).prop_map(
            move |(rows, nonneg)| {
                let mut s = LinearSystem::new(n);
                for (a, b, kind) in rows {
                    let a: Vec<BigInt> = a.into_iter().map(BigInt::from).collect();
                    match kind {
                        0 => s.add_equality(a, b.into()),
                        1 => s.add_at_least(a, b.into()),
                        _ => s.add_at_most(a, b.into()),
                    };
                }
                (s, (0..n).filter(|&j| nonneg[j]).collect())
            },
        )
    })
}

/// Every integer point with `|x_j| <= bound`, checked in machine integers.
fn box_search(s: &LinearSystem, nonneg: &[usize], bound: i64) -> bool {
    let n = s.num_vars;
    let rows = |v: &[(Vec<BigInt>, BigInt)]| -> Vec<(Vec<i64>, i64)> {
        v.iter()
            .map(|(r, b)| (r.iter().map(|x| x.to_i64().unwrap()).collect(), b.to_i64().unwrap()))
            .collect()
    };
    let (eq, ge) = (rows(&s.equalities), rows(&s.weak_inequalities));
    let lo = |j: usize| if nonneg.contains(&j) { 0 } else { -bound };
    let mut x: Vec<i64> = (0..n).map(lo).collect();
    let dot = |r: &[i64], x: &[i64]| r.iter().zip(x).map(|(a, b)| a * b).sum::<i64>();
    loop {
        if eq.iter().all(|(r, b)| dot(r, &x) == *b) && ge.iter().all(|(r, b)| dot(r, &x) >= *b) {
            return true;
        }
        let mut j = 0;
        while j < n && x[j] == bound {
            x[j] = lo(j);
            j += 1;
        }
        if j == n {
            return false;
        }
        x[j] += 1;
    }
}

fn small_fan_ready(seed: u64) -> toric_gale::fans::VectorConfiguration {
    random_config(&mut rng(seed), 3, 5, 3, true)
}

fn admissible(seed: u64, max_r: usize) -> ElementCollection {
    random_admissible(&mut rng(seed), 1, max_r, 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_form_is_a_factorisation(a in matrix(4, 4)) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(&(&s.u * &a) * &s.v, s.d.clone());
        prop_assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                prop_assert!(i == j || s.d[(i, j)].is_zero());
            }
        }
        let diag = s.diagonal();
        prop_assert!(diag.iter().all(|x| !x.is_negative()));
        for w in diag.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
        prop_assert_eq!(s.rank(), rank(&a));
    }

    #[test]
    fn hermite_form_is_a_row_reduction(a in matrix(4, 4)) {
        let h = hermite_normal_form(&a);
        prop_assert_eq!(&h.u * &a, h.h.clone());
        prop_assert!(is_unimodular(&h.u));
        prop_assert!(h.pivots.windows(2).all(|w| w[0] < w[1]));
        for (i, &p) in h.pivots.iter().enumerate() {
            prop_assert!(h.h[(i, p)].is_positive());
            for k in 0..i {
                prop_assert!(!h.h[(k, p)].is_negative() && h.h[(k, p)] < h.h[(i, p)]);
            }
        }
        prop_assert_eq!(h.rank(), rank(&a));
    }

    #[test]
    fn integer_kernel_is_saturated(a in matrix(3, 5)) {
        let k = integer_kernel(&a);
        prop_assert_eq!(k.len(), a.cols() - rank(&a));
        for v in &k {
            prop_assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        if !k.is_empty() {
            let km = IntMatrix::from_rows(&k, a.cols()).unwrap();
            let f = smith_normal_form(&km).invariant_factors();
            prop_assert_eq!(f.len(), k.len());
            prop_assert!(f.iter().all(One::is_one));
        }
    }

    #[test]
    fn ilp_matches_brute_force((s, nonneg) in small_system()) {
        let got = ilp_feasible(&s, &nonneg).unwrap();
        prop_assert_eq!(got.is_some(), brute_force(&s, &nonneg));
        if let Some(x) = got {
            prop_assert!(s.is_satisfied_by_integers(&x));
            prop_assert!(nonneg.iter().all(|&j| !x[j].is_negative()));
        }
    }

    #[test]
    fn ilp_matches_the_a_priori_box((s, nonneg) in unboxed_system()) {
        let bound = a_priori_bound(&s).to_i64().unwrap();
        let got = ilp_feasible(&s, &nonneg).unwrap();
        prop_assert_eq!(got.is_some(), box_search(&s, &nonneg, bound));
        if let Some(x) = got {
            prop_assert!(s.is_satisfied_by_integers(&x));
        }
    }

    #[test]
    fn lp_witnesses_are_feasible((s, _) in small_system()) {
        match lp_feasible(&s).unwrap() {
            Some(x) => prop_assert!(s.is_satisfied_by(&x)),
            None => prop_assert!(!brute_force(&s, &[])),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zero_is_always_a_member(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let group = Arc::new(random_group(&mut rng, 2));
        let k = rng.gen_range(0..=4);
        let gens: Vec<GroupElement> = (0..k).map(|_| random_element(&mut rng, &group, 4)).collect();
        let zero = GroupElement::zero(&group);
        let x = semigroup_membership(&zero, &gens).unwrap();
        prop_assert!(x.is_some());
        prop_assert!(verify_combination(&zero, &gens, &x.unwrap()));
    }

    #[test]
    fn membership_agrees_with_search(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let group = Arc::new(random_group(&mut rng, 2));
        let k = rng.gen_range(1..=3);
        let gens: Vec<GroupElement> = (0..k).map(|_| random_element(&mut rng, &group, 3)).collect();
        let t = random_element(&mut rng, &group, 5);
        let x = semigroup_membership(&t, &gens).unwrap();
        prop_assert_eq!(x.is_some(), steinitz_membership(&t, &gens));
        if let Some(x) = x {
            prop_assert!(x.iter().all(|c| !c.is_negative()));
            prop_assert!(verify_combination(&t, &gens, &x));
        }
    }

    #[test]
    fn membership_matches_the_a_priori_box(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let group = Arc::new(random_group(&mut rng, 2));
        let k = rng.gen_range(1..=4);
        let gens: Vec<GroupElement> = (0..k).map(|_| random_element(&mut rng, &group, 2)).collect();
        let t = random_element(&mut rng, &group, 3);
        let bound = membership_bound(&t, &gens).to_i64().unwrap();
        let sums = box_sums(&group, &gens, bound, 20_000_000);
        prop_assume!(sums.is_some());
        let point = (
            t.free().iter().map(|x| x.to_i64().unwrap()).collect(),
            t.torsion().iter().map(|x| x.to_i64().unwrap()).collect(),
        );
        prop_assert_eq!(semigroup_membership(&t, &gens).unwrap().is_some(), sums.unwrap().contains(&point));
    }

    #[test]
    fn admissibility_ignores_order(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let group = Arc::new(random_group(&mut rng, 2));
        let r = rng.gen_range(1..=5);
        let coll = random_collection(&mut rng, &group, r, 2);
        let mut elems = coll.elements().to_vec();
        elems.shuffle(&mut rng);
        let shuffled = ElementCollection::new(group, elems).unwrap();
        prop_assert_eq!(
            is_admissible(&coll).unwrap().is_admissible(),
            is_admissible(&shuffled).unwrap().is_admissible()
        );
    }

    #[test]
    fn admissibility_ignores_automorphisms(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let group = Arc::new(random_group(&mut rng, 2));
        let r = rng.gen_range(1..=5);
        let coll = random_collection(&mut rng, &group, r, 2);
        let m = group.free_rank();
        let orders: Vec<i64> = group.torsion().iter().map(|d| d.to_i64().unwrap()).collect();
        // unimodular on the free part, units on the torsion, plus a shear
        // from the first free coordinate into the torsion
        let mut u: Vec<Vec<i64>> = (0..m).map(|i| (0..m).map(|j| (i == j) as i64).collect()).collect();
        if m == 2 {
            let c = rng.gen_range(-2..=2);
            u[0][1] = c;
            if rng.gen_bool(0.5) {
                u.swap(0, 1);
            }
        }
        let units: Vec<i64> = orders
            .iter()
            .map(|&d| {
                let us: Vec<i64> = (1..d).filter(|&x| num_integer::gcd(x, d) == 1).collect();
                *us.choose(&mut rng).unwrap()
            })
            .collect();
        let shear: Vec<i64> = orders.iter().map(|&d| if m > 0 { rng.gen_range(0..d) } else { 0 }).collect();
        let image = |e: &GroupElement| -> GroupElement {
            let f: Vec<i64> = e.free().iter().map(|x| x.to_i64().unwrap()).collect();
            let t: Vec<i64> = e.torsion().iter().map(|x| x.to_i64().unwrap()).collect();
            let nf: Vec<i64> = u.iter().map(|row| row.iter().zip(&f).map(|(a, b)| a * b).sum()).collect();
            let nt: Vec<i64> = (0..orders.len())
                .map(|j| (units[j] * t[j] + shear[j] * f.first().copied().unwrap_or(0)).rem_euclid(orders[j]))
                .collect();
            GroupElement::from_i64(&group, &nf, &nt).unwrap()
        };
        let moved = ElementCollection::new(group.clone(), coll.elements().iter().map(image).collect()).unwrap();
        prop_assert_eq!(
            is_admissible(&coll).unwrap().is_admissible(),
            is_admissible(&moved).unwrap().is_admissible()
        );
    }

    #[test]
    fn semigroup_generation_implies_group_generation(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let coll = random_admissible(&mut rng, 1, 5, 2);
        let subset = IndexSet::from_mask(rng.gen_range(0..(1u64 << coll.len())));
        if generates_semigroup_a(&coll, subset).unwrap() {
            prop_assert!(generates_group(&coll, subset).unwrap());
        }
    }

    #[test]
    fn suitable_iff_transform_admissible(seed in any::<u64>()) {
        let c = small_fan_ready(seed);
        prop_assert_eq!(
            is_suitable(&c).unwrap().is_suitable(),
            is_admissible(&lattice_gale_transform(&c)).unwrap().is_admissible()
        );
    }

    #[test]
    fn primitive_iff_others_generate(seed in any::<u64>()) {
        let c = random_config(&mut rng(seed), 3, 5, 4, false);
        let g = lattice_gale_transform(&c);
        for i in 0..c.len() {
            prop_assert_eq!(
                is_primitive(c.vector(i)).unwrap(),
                generates_group(&g, g.all_indices().without(i)).unwrap()
            );
        }
    }

    #[test]
    fn basis_extension_iff_span_membership(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let c = random_config(&mut rng, 3, 5, 3, false);
        let g = lattice_gale_transform(&c);
        let i = IndexSet::from_mask(rng.gen_range(0..(1u64 << c.len())));
        let rest = g.select(i.complement(c.len()));
        let mut spanned = true;
        for k in i.iter() {
            spanned &= subgroup_membership(&g.elements()[k], &rest).unwrap();
        }
        prop_assert_eq!(is_regular_cone(&c, i).unwrap(), spanned);
    }

    #[test]
    fn linear_gale_dimension_and_relation(seed in any::<u64>()) {
        let c = random_config(&mut rng(seed), 3, 6, 4, false);
        let gale = linear_gale_transform(&c).unwrap();
        prop_assert_eq!(gale.dim, c.len() - c.rank());
        prop_assert_eq!(gale.vectors.len(), c.len());
        prop_assert!(bilinear_relation_holds(&c, &gale));
    }

    #[test]
    fn configuration_round_trip(seed in any::<u64>()) {
        let c = small_fan_ready(seed);
        let back = inverse_gale_transform(&lattice_gale_transform(&c)).unwrap();
        prop_assert_eq!(canonical_form(&back), canonical_form(&c));
    }

    #[test]
    fn pair_round_trip(seed in any::<u64>()) {
        let coll = admissible(seed, 5);
        if let Ok(config) = inverse_gale_transform(&coll) {
            prop_assert!(pairs_equivalent(&lattice_gale_transform(&config), &coll).unwrap());
        }
    }

    #[test]
    fn separation_oracles_agree(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let c = random_config(&mut rng, 3, 5, 3, false);
        let oracle = RootOracle::new(&c);
        let simplicial: Vec<IndexSet> =
            c.all_indices().subsets().filter(|s| is_simplicial(&c, *s)).collect();
        let i = *simplicial.choose(&mut rng).unwrap();
        let j = *simplicial.choose(&mut rng).unwrap();
        prop_assert_eq!(oracle.meets(i, j).unwrap(), cones_meet_in_common_face(&c, i, j).unwrap());
    }

    #[test]
    fn one_skeleton_shortcut_agrees(seed in any::<u64>()) {
        let c = small_fan_ready(seed);
        let skel = SimplicialFan::one_skeleton(c.clone());
        prop_assert_eq!(
            one_skeleton_strongly_regular(&c).unwrap(),
            is_strongly_regular(&skel).unwrap().is_strongly_regular()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn maximal_fan_is_strongly_regular(seed in any::<u64>()) {
        let coll = admissible(seed, 5);
        let fan = build_maximal_fan(&coll).unwrap();
        prop_assert!(validate_fan(&fan).unwrap().is_valid());
        prop_assert!(is_regular_fan(&fan).unwrap());
        let oracle = RootOracle::new(fan.config());
        for sigma in fan.nonzero_cones() {
            for tau in sigma.facets() {
                prop_assert!(oracle.connecting_root(&fan, sigma, tau).unwrap().is_some());
            }
        }
    }

    #[test]
    fn strongly_regular_fans_have_regular_cones(seed in any::<u64>()) {
        let coll = admissible(seed, 4);
        let fan = build_maximal_fan(&coll).unwrap();
        for cones in strongly_regular_fans_on(fan.config()) {
            let sub = SimplicialFan::new(fan.config().clone(), cones).unwrap();
            prop_assert!(is_regular_fan(&sub).unwrap());
        }
    }

    #[test]
    fn roots_are_roots_and_grow_with_the_box(seed in any::<u64>()) {
        let fan = build_maximal_fan(&admissible(seed, 4)).unwrap();
        let one = roots_in_box(&fan, 1).unwrap();
        let two = roots_in_box(&fan, 2).unwrap();
        for root in &two {
            prop_assert!(check_root(&fan, root).is_ok());
            prop_assert_eq!(root.pairing(fan.config(), root.distinguished_ray), BigInt::from(-1));
            let pairs = he_connected_pairs(&fan, root).unwrap();
            for (small, big) in pairs {
                prop_assert!(small.is_subset(big) && big.len() == small.len() + 1);
            }
        }
        prop_assert!(one.iter().all(|r| two.contains(r)));
    }

    #[test]
    fn complete_pairs_have_complete_combinatorics(seed in any::<u64>()) {
        let coll = admissible(seed, 5);
        if classify_pair(&coll).unwrap().complete {
            prop_assert!(has_complete_combinatorics(&build_maximal_fan(&coll).unwrap()));
        }
    }

    #[test]
    fn direct_sums_give_products(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = random_admissible(&mut rng, 1, 3, 1);
        let b = random_admissible(&mut rng, 1, 3, 1);
        let sum = build_maximal_fan(&direct_sum_pair(&a, &b)).unwrap();
        let prod = product_fan(&build_maximal_fan(&a).unwrap(), &build_maximal_fan(&b).unwrap()).unwrap();
        prop_assert_eq!(canonical_form(sum.config()), canonical_form(prod.config()));
        prop_assert_eq!(sum.cones(), prod.cones());
    }
}
