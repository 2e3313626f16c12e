//! Independent ground truth: breadth-first sumset closure over a flat
//! indexing of the ambient space, giving exact minimal summand counts and
//! diameters for any generator set.
//!
//! The Cayley digraph is vertex-transitive, so the distance from A to B is
//! the distance of B - A from zero, and one BFS from zero answers every
//! reachability and minimality question. Everything here is deterministic
//! and independent of the constructive decomposition paths it certifies.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::FqMatrix;
use crate::orthogonal;
use crate::vector::{self, FqVector};

/// Cap on the number of ambient elements a closure may enumerate.
pub const AMBIENT_LIMIT: u64 = 10_000_000;

/// The element space a closure runs over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AmbientSpace {
    /// F_q^d, indexed lexicographically.
    Vectors { d: usize },
    /// Mat_d(F_q), indexed row-major lexicographically.
    Matrices { d: usize },
}

impl AmbientSpace {
    pub fn size(&self, spec: &FieldSpec) -> u64 {
        match self {
            AmbientSpace::Vectors { d } => spec.q().pow(*d as u32),
            AmbientSpace::Matrices { d } => spec.q().pow((*d * *d) as u32),
        }
    }
}

/// Maximum finite BFS distance, or a marker that some element is not a sum
/// of generators at all.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Diameter {
    Finite(u32),
    Unreachable,
}

/// Exact BFS distances from zero under repeated addition of generators.
#[derive(Clone, Debug)]
pub struct DistanceMap {
    pub ambient: AmbientSpace,
    /// `dist[i]` = minimal number of generator steps from zero to element i;
    /// None when unreachable. `dist[0]` = 0.
    pub dist: Vec<Option<u32>>,
    pub diameter: Diameter,
}

impl DistanceMap {
    pub fn distance_of_index(&self, idx: u64) -> Option<u32> {
        self.dist[idx as usize]
    }
}

/// Generators as flat indices plus an index-space adder.
fn bfs(ambient_size: u64, step: impl Fn(u64, usize) -> u64, gen_count: usize) -> Vec<Option<u32>> {
    let n = ambient_size as usize;
    let mut dist: Vec<Option<u32>> = vec![None; n];
    dist[0] = Some(0);
    let mut frontier: Vec<u64> = vec![0];
    let mut level: u32 = 0;
    while !frontier.is_empty() {
        level += 1;
        let mut next = Vec::new();
        for &s in &frontier {
            for gi in 0..gen_count {
                let t = step(s, gi);
                if dist[t as usize].is_none() {
                    dist[t as usize] = Some(level);
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    dist
}

fn diameter_of(dist: &[Option<u32>]) -> Diameter {
    let mut max = 0;
    for d in dist {
        match d {
            Some(v) => max = max.max(*v),
            None => return Diameter::Unreachable,
        }
    }
    Diameter::Finite(max)
}

/// BFS closure for a vector generator set in F_q^d.
pub fn vector_sumset_closure(
    spec: &FieldSpec,
    d: usize,
    generators: &[FqVector],
) -> Result<DistanceMap> {
    let ambient = AmbientSpace::Vectors { d };
    let size = ambient.size(spec);
    if size > AMBIENT_LIMIT {
        return Err(Error::AmbientTooLarge {
            size,
            limit: AMBIENT_LIMIT,
        });
    }
    let gens: Vec<FqVector> = generators.to_vec();
    let step = |s: u64, gi: usize| {
        let v = FqVector::from_index(spec, d, s);
        v.add(spec, &gens[gi]).index(spec)
    };
    let dist = bfs(size, step, gens.len());
    let diameter = diameter_of(&dist);
    Ok(DistanceMap {
        ambient,
        dist,
        diameter,
    })
}

/// BFS closure for a matrix generator set in Mat_d(F_q).
pub fn matrix_sumset_closure(
    spec: &FieldSpec,
    d: usize,
    generators: &[FqMatrix],
) -> Result<DistanceMap> {
    let ambient = AmbientSpace::Matrices { d };
    let size = ambient.size(spec);
    if size > AMBIENT_LIMIT {
        return Err(Error::AmbientTooLarge {
            size,
            limit: AMBIENT_LIMIT,
        });
    }
    let gens: Vec<FqMatrix> = generators.to_vec();
    let step = |s: u64, gi: usize| {
        let m = FqMatrix::from_index(spec, d, s);
        m.add(spec, &gens[gi]).index(spec)
    };
    let dist = bfs(size, step, gens.len());
    let diameter = diameter_of(&dist);
    Ok(DistanceMap {
        ambient,
        dist,
        diameter,
    })
}

/// Distances from zero under unit-vector steps in F_q^d.
pub fn unit_sum_distances(spec: &FieldSpec, d: usize) -> Result<DistanceMap> {
    let units = vector::sphere(spec, spec.one(), d);
    vector_sumset_closure(spec, d, &units)
}

/// Distances from zero under orthogonal-matrix steps in Mat_d(F_q).
/// Supported for d = 2 (full enumeration) and d = 3 (reflection closure).
pub fn orth_sum_distances(spec: &FieldSpec, d: usize) -> Result<DistanceMap> {
    let gens = orthogonal_group(spec, d)?;
    matrix_sumset_closure(spec, d, &gens)
}

/// The full orthogonal group O(d; q) for d <= 3: direct enumeration in the
/// plane, closure of the reflections under multiplication for d = 3 (the
/// reflections generate the group, so products saturate it).
pub fn orthogonal_group(spec: &FieldSpec, d: usize) -> Result<Vec<FqMatrix>> {
    match d {
        2 => Ok(orthogonal::enumerate_o2(spec)
            .into_iter()
            .map(|g| g.into_matrix())
            .collect()),
        3 => {
            let size = AmbientSpace::Matrices { d }.size(spec);
            if size > AMBIENT_LIMIT {
                return Err(Error::AmbientTooLarge {
                    size,
                    limit: AMBIENT_LIMIT,
                });
            }
            let mut mirrors = Vec::new();
            let mut seen = std::collections::BTreeSet::new();
            for idx in 1..FqVector::count(spec, 3) {
                let w = FqVector::from_index(spec, 3, idx);
                if vector::norm(spec, &w).is_zero() {
                    continue;
                }
                let r = orthogonal::reflection(spec, &w)?.into_matrix();
                if seen.insert(r.index(spec)) {
                    mirrors.push(r);
                }
            }
            // Close under multiplication.
            let mut group: Vec<FqMatrix> = vec![FqMatrix::identity(spec, 3)];
            let mut known: std::collections::BTreeSet<u64> =
                group.iter().map(|m| m.index(spec)).collect();
            let mut frontier = group.clone();
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for g in &frontier {
                    for r in &mirrors {
                        let p = g.mul(spec, r);
                        if known.insert(p.index(spec)) {
                            next.push(p.clone());
                            group.push(p);
                        }
                    }
                }
                frontier = next;
            }
            group.sort_by_key(|m| m.index(spec));
            Ok(group)
        }
        _ => Err(Error::DimensionTooSmall(d)),
    }
}

/// Minimal number of unit vectors summing to v. The zero vector reports its
/// shortest nonempty representation (a cancelling pair), not the empty sum.
pub fn min_unit_sum(spec: &FieldSpec, map: &DistanceMap, v: &FqVector) -> Option<u32> {
    debug_assert!(matches!(map.ambient, AmbientSpace::Vectors { .. }));
    if v.is_zero() {
        return Some(2);
    }
    map.distance_of_index(v.index(spec))
}

/// Minimal number of orthogonal matrices summing to A, with the same
/// convention for the zero matrix.
pub fn min_orth_sum(spec: &FieldSpec, map: &DistanceMap, a: &FqMatrix) -> Option<u32> {
    debug_assert!(matches!(map.ambient, AmbientSpace::Matrices { .. }));
    if a.is_zero() {
        return Some(2);
    }
    map.distance_of_index(a.index(spec))
}

/// Brute-force test: is the zero vector of F_q^2 a sum of exactly three
/// unit vectors? Scans unit pairs for a unit completing them to zero.
pub fn zero_is_three_unit_sum(spec: &FieldSpec) -> bool {
    let units = vector::sphere(spec, spec.one(), 2);
    for u1 in &units {
        for u2 in &units {
            let u3 = u1.add(spec, u2).neg(spec);
            if vector::norm(spec, &u3) == spec.one() {
                return true;
            }
        }
    }
    false
}

/// The set of planar two-unit sums, as a membership table over indices.
pub fn two_unit_sumset(spec: &FieldSpec) -> Vec<bool> {
    let units = vector::sphere(spec, spec.one(), 2);
    let mut table = vec![false; FqVector::count(spec, 2) as usize];
    for u1 in &units {
        for u2 in &units {
            table[u1.add(spec, u2).index(spec) as usize] = true;
        }
    }
    table
}

/// Brute-force good-length set: lengths l such that every planar vector of
/// length l lies in the two-unit sumset.
pub fn brute_good_lengths(spec: &FieldSpec) -> Vec<u64> {
    let table = two_unit_sumset(spec);
    let mut good = Vec::new();
    for l in spec.elements() {
        let all_in = vector::sphere(spec, l, 2)
            .iter()
            .all(|v| table[v.index(spec) as usize]);
        if all_in {
            good.push(spec.index(l));
        }
    }
    good
}

/// Deterministic 64-bit mixer for seeded sampling.
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, n: usize) -> FieldSpec {
        FieldSpec::make(p, n).unwrap()
    }

    #[test]
    fn unit_distances_match_pinned_values() {
        // Over F_3 every planar vector is within two unit steps.
        let f3 = f(3, 1);
        let map = unit_sum_distances(&f3, 2).unwrap();
        assert_eq!(map.diameter, Diameter::Finite(2));

        // Over F_5 the vector (2,2) needs four.
        let f5 = f(5, 1);
        let map = unit_sum_distances(&f5, 2).unwrap();
        let v = FqVector::new(vec![f5.from_u64(2), f5.from_u64(2)]);
        assert_eq!(min_unit_sum(&f5, &map, &v), Some(4));
        assert_eq!(map.diameter, Diameter::Finite(4));
    }

    #[test]
    fn generators_sit_at_distance_one() {
        let f7 = f(7, 1);
        let map = unit_sum_distances(&f7, 2).unwrap();
        for u in vector::sphere(&f7, f7.one(), 2) {
            assert_eq!(map.distance_of_index(u.index(&f7)), Some(1));
        }
        assert_eq!(map.distance_of_index(0), Some(0));
    }

    #[test]
    fn zero_minimum_is_a_cancelling_pair() {
        let f5 = f(5, 1);
        let map = unit_sum_distances(&f5, 2).unwrap();
        assert_eq!(min_unit_sum(&f5, &map, &FqVector::zero(2)), Some(2));
        let omap = orth_sum_distances(&f5, 2).unwrap();
        assert_eq!(min_orth_sum(&f5, &omap, &FqMatrix::zero(2)), Some(2));
    }

    #[test]
    fn o2_diameter_over_f5_is_eight_at_the_sharp_matrix() {
        let f5 = f(5, 1);
        let map = orth_sum_distances(&f5, 2).unwrap();
        assert_eq!(map.diameter, Diameter::Finite(8));
        let sharp = FqMatrix::from_rows(vec![vec![f5.one(), f5.zero()], vec![f5.one(), f5.zero()]]);
        assert_eq!(min_orth_sum(&f5, &map, &sharp), Some(8));
    }

    #[test]
    fn isotropic_d3_vectors_sit_at_distance_three() {
        let f7 = f(7, 1);
        let map = unit_sum_distances(&f7, 3).unwrap();
        for a in f7.elements() {
            for b in f7.elements() {
                if f7.add(f7.mul(a, a), f7.mul(b, b)) != f7.minus_one() {
                    continue;
                }
                let v = FqVector::new(vec![a, b, f7.minus_one()]);
                assert_eq!(min_unit_sum(&f7, &map, &v), Some(3));
            }
        }
    }

    #[test]
    fn distances_invariant_under_generator_relabeling() {
        let f5 = f(5, 1);
        let mut gens = vector::sphere(&f5, f5.one(), 2);
        let base = vector_sumset_closure(&f5, 2, &gens).unwrap();
        gens.reverse();
        let relabeled = vector_sumset_closure(&f5, 2, &gens).unwrap();
        assert_eq!(base.dist, relabeled.dist);
    }

    #[test]
    fn ambient_guard() {
        let f13 = f(13, 1);
        let err = orth_sum_distances(&f13, 3).unwrap_err();
        assert!(matches!(err, Error::AmbientTooLarge { .. }));
    }

    #[test]
    fn o3_group_size_and_closure() {
        // |O(3; q)| = 2 q (q^2 - 1).
        let f3 = f(3, 1);
        let group = orthogonal_group(&f3, 3).unwrap();
        assert_eq!(group.len() as u64, 2 * 3 * (9 - 1));
        for g in &group {
            assert!(orthogonal::is_orthogonal(&f3, g));
        }
    }

    #[test]
    fn o3_bfs_minima_never_beat_constructive_counts() {
        let f3 = f(3, 1);
        let map = orth_sum_distances(&f3, 3).unwrap();
        let mut rng = SplitMix64(7);
        for _ in 0..50 {
            let idx = rng.next_u64() % FqMatrix::count(&f3, 3);
            let m = FqMatrix::from_index(&f3, 3, idx);
            let dec = orthogonal::decompose_dxd(&f3, &m).unwrap();
            let min = min_orth_sum(&f3, &map, &m).unwrap();
            assert!(min <= dec.parts.len() as u32);
        }
    }

    #[test]
    fn zero_three_unit_brute_matches_criterion() {
        for (p, n) in [(3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (5, 2), (7, 2)] {
            let spec = f(p, n);
            assert_eq!(
                zero_is_three_unit_sum(&spec),
                vector::zero_three_units_possible(p, n),
                "p={p} n={n}"
            );
        }
    }

    #[test]
    fn brute_good_lengths_match_closed_form() {
        for (p, n) in [(3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (3, 2)] {
            let spec = f(p, n);
            let brute = brute_good_lengths(&spec);
            let closed: Vec<u64> = vector::good_set(&spec)
                .iter()
                .map(|&l| spec.index(l))
                .collect();
            assert_eq!(brute, closed, "q={}", spec.q());
            assert_eq!(brute.len() as u64, vector::good_set_size(spec.q()));
        }
    }

    #[test]
    fn constructive_unit_counts_between_oracle_and_bound() {
        for (p, n, d) in [(5u64, 1usize, 2usize), (7, 1, 2), (5, 1, 3), (3, 1, 4)] {
            let spec = f(p, n);
            let map = unit_sum_distances(&spec, d).unwrap();
            for idx in 0..FqVector::count(&spec, d) {
                let v = FqVector::from_index(&spec, d, idx);
                let dec = vector::decompose_unit_sum(&spec, &v).unwrap();
                let min = min_unit_sum(&spec, &map, &v).unwrap();
                assert!(
                    min as usize <= dec.count(),
                    "constructive count beat the oracle at q={} d={} v={:?}",
                    spec.q(),
                    d,
                    v
                );
                assert!(dec.count() <= vector::unit_sum_bound(&spec, &v));
            }
        }
    }

    #[test]
    fn g_equivalent_matrices_share_oracle_minima() {
        for (p, n) in [(3u64, 1usize), (5, 1)] {
            let spec = f(p, n);
            let map = orth_sum_distances(&spec, 2).unwrap();
            let group = orthogonal::enumerate_o2(&spec);
            for idx in 0..FqMatrix::count(&spec, 2) {
                let a = FqMatrix::from_index(&spec, 2, idx);
                let da = map.distance_of_index(idx);
                for x in &group {
                    for y in &group {
                        let b = x.matrix().mul(&spec, &a).mul(&spec, y.matrix());
                        assert_eq!(map.distance_of_index(b.index(&spec)), da);
                    }
                }
            }
        }
    }
}
