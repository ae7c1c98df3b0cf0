#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use toric_gale::abelian::{is_admissible, AbelianGroup, ElementCollection, GroupElement};
use toric_gale::fans::{is_simplicial, primitivize, RootOracle, SimplicialFan, VectorConfiguration};
use toric_gale::IndexSet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Spanning configuration with `1 <= n <= max_n`, `n <= r <= max_r` and
/// entries in `[-bound, bound]`. With `fan_ready`, vectors are primitive and
/// pairwise distinct.
pub fn random_config(rng: &mut ChaCha8Rng, max_n: usize, max_r: usize, bound: i64, fan_ready: bool) -> VectorConfiguration {
    loop {
        let n = rng.gen_range(1..=max_n);
        let r = rng.gen_range(n..=max_r);
        let mut vectors: Vec<Vec<BigInt>> = Vec::new();
        let mut tries = 0;
        while vectors.len() < r && tries < 100 {
            tries += 1;
            let v: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
            if v.iter().all(|x| x == &BigInt::from(0)) {
                continue;
            }
            let v = if fan_ready { primitivize(&v).unwrap() } else { v };
            if fan_ready && vectors.contains(&v) {
                continue;
            }
            vectors.push(v);
        }
        if vectors.len() < r {
            continue;
        }
        if let Ok(c) = VectorConfiguration::new(n, vectors) {
            return c;
        }
    }
}

/// Free rank at most `max_free`, torsion of order at most 6.
pub fn random_group(rng: &mut ChaCha8Rng, max_free: usize) -> AbelianGroup {
    const TORSION: &[&[i64]] = &[&[], &[], &[2], &[3], &[4], &[5], &[6], &[2, 2]];
    let free = rng.gen_range(0..=max_free);
    let t = TORSION[rng.gen_range(0..TORSION.len())];
    AbelianGroup::from_i64(free, t).unwrap()
}

pub fn random_element(rng: &mut ChaCha8Rng, group: &Arc<AbelianGroup>, height: i64) -> GroupElement {
    let free: Vec<i64> = (0..group.free_rank()).map(|_| rng.gen_range(-height..=height)).collect();
    let torsion: Vec<i64> = group
        .torsion()
        .iter()
        .map(|d| rng.gen_range(0..d.to_i64().unwrap()))
        .collect();
    GroupElement::from_i64(group, &free, &torsion).unwrap()
}

pub fn random_collection(rng: &mut ChaCha8Rng, group: &Arc<AbelianGroup>, r: usize, height: i64) -> ElementCollection {
    let elements = (0..r).map(|_| random_element(rng, group, height)).collect();
    ElementCollection::new(group.clone(), elements).unwrap()
}

/// Rejection-samples an admissible pair with `min_r <= r <= max_r`.
pub fn random_admissible(rng: &mut ChaCha8Rng, min_r: usize, max_r: usize, max_free: usize) -> ElementCollection {
    loop {
        let group = Arc::new(random_group(rng, max_free));
        let r = rng.gen_range(min_r..=max_r);
        let coll = random_collection(rng, &group, r, 2);
        if is_admissible(&coll).unwrap().is_admissible() {
            return coll;
        }
    }
}

fn small(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().unwrap()).collect()
}

/// Decides `t in semigroup(gens)` by breadth-first search over partial
/// sums, independently of the integer programming route.
///
/// By the Steinitz lemma the summands of any representation can be ordered
/// so that every partial sum stays within `2 m D` (sup norm) of the segment
/// from 0 to the free part of `t`, where `m` is the free rank and `D` the
/// largest free coordinate of a generator. That tube times the torsion part
/// is finite, so the search is exhaustive.
pub fn steinitz_membership(t: &GroupElement, gens: &[GroupElement]) -> bool {
    let group = t.group();
    let m = group.free_rank();
    let orders: Vec<i64> = small(group.torsion());
    let delta = gens
        .iter()
        .flat_map(|g| small(g.free()))
        .map(i64::abs)
        .max()
        .unwrap_or(0)
        .max(1);
    let radius = 2 * m as i64 * delta;
    let target = (small(t.free()), small(t.torsion()));
    let steps: Vec<(Vec<i64>, Vec<i64>)> = gens.iter().map(|g| (small(g.free()), small(g.torsion()))).collect();

    let in_tube = |p: &[i64]| -> bool {
        let (mut lo, mut hi) = (Ratio::from_integer(0i64), Ratio::from_integer(1i64));
        for j in 0..m {
            let tj = target.0[j];
            if tj == 0 {
                if p[j].abs() > radius {
                    return false;
                }
                continue;
            }
            let a = Ratio::new(p[j] - radius, tj);
            let b = Ratio::new(p[j] + radius, tj);
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            lo = lo.max(a);
            hi = hi.min(b);
        }
        lo <= hi
    };

    let start = (vec![0i64; m], vec![0i64; orders.len()]);
    let mut seen: HashSet<(Vec<i64>, Vec<i64>)> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some((p, q)) = queue.pop_front() {
        if p == target.0 && q == target.1 {
            return true;
        }
        for (f, s) in &steps {
            let np: Vec<i64> = p.iter().zip(f).map(|(a, b)| a + b).collect();
            let nq: Vec<i64> = q
                .iter()
                .zip(s)
                .zip(&orders)
                .map(|((a, b), d)| (a + b).rem_euclid(*d))
                .collect();
            if !in_tube(&np) {
                continue;
            }
            let state = (np, nq);
            if seen.insert(state.clone()) {
                queue.push_back(state);
            }
        }
    }
    false
}

pub type Point = (Vec<i64>, Vec<i64>);

/// The set of all sums `x_1 g_1 + ... + x_k g_k` with `0 <= x_s <= bound`,
/// or `None` if it could exceed `limit` points of work.
pub fn box_sums(group: &AbelianGroup, gens: &[GroupElement], bound: i64, limit: u64) -> Option<HashSet<Point>> {
    let m = group.free_rank();
    let orders = small(group.torsion());
    let orders = orders.as_slice();
    let k = gens.len() as u64;
    let mut size: u64 = orders.iter().map(|&d| d as u64).product();
    for c in 0..m {
        let spread = gens.iter().map(|g| g.free()[c].abs().to_u64().unwrap()).max().unwrap_or(0);
        size = size.saturating_mul(2 * k * bound as u64 * spread + 1);
    }
    if size.saturating_mul(bound as u64 + 1).saturating_mul(k) > limit {
        return None;
    }
    let mut sums: HashSet<Point> = HashSet::from([(vec![0; m], vec![0; orders.len()])]);
    for g in gens {
        let (gf, gt) = (small(g.free()), small(g.torsion()));
        let mut next = HashSet::new();
        for (f, t) in &sums {
            let (mut f, mut t) = (f.clone(), t.clone());
            for _ in 0..=bound {
                next.insert((f.clone(), t.clone()));
                f.iter_mut().zip(&gf).for_each(|(a, b)| *a += b);
                t.iter_mut().zip(&gt).zip(orders).for_each(|((a, b), d)| *a = (*a + b).rem_euclid(*d));
            }
        }
        sums = next;
    }
    Some(sums)
}

/// Every strongly regular fan whose rays are exactly the vectors of
/// `config`, found by scanning all face-closed families of simplicial
/// index sets. Only meant for a handful of rays.
pub fn strongly_regular_fans_on(config: &VectorConfiguration) -> Vec<BTreeSet<IndexSet>> {
    let r = config.len();
    let oracle = RootOracle::new(config);
    let base: BTreeSet<IndexSet> = std::iter::once(IndexSet::EMPTY)
        .chain((0..r).map(IndexSet::singleton))
        .collect();
    let higher: Vec<IndexSet> = IndexSet::full(r)
        .subsets()
        .filter(|c| c.len() >= 2 && is_simplicial(config, *c))
        .collect();
    assert!(higher.len() <= 16, "too many candidate cones");
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << higher.len()) {
        let mut cones = base.clone();
        cones.extend((0..higher.len()).filter(|k| mask >> k & 1 == 1).map(|k| higher[k]));
        if !cones.iter().all(|c| c.facets().all(|f| cones.contains(&f))) {
            continue;
        }
        let fan = SimplicialFan::new(config.clone(), cones.iter().copied()).unwrap();
        if !oracle.validate(&fan).unwrap().is_valid() {
            continue;
        }
        if oracle.strong_regularity(&fan).unwrap().is_strongly_regular() {
            out.push(cones);
        }
    }
    out
}

/// The standard fan of projective `n`-space: rays `e_1, ..., e_n` and
/// `-(e_1 + ... + e_n)`, cones all proper subsets.
pub fn projective_space(n: usize) -> (VectorConfiguration, BTreeSet<IndexSet>) {
    let mut vectors: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    vectors.push(vec![BigInt::from(-1); n]);
    let config = VectorConfiguration::new(n, vectors).unwrap();
    let cones = IndexSet::full(n + 1).subsets().filter(|c| c.len() <= n).collect();
    (config, cones)
}
