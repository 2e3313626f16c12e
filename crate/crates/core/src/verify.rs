//! The verification ledger: every headline claim, bound, and census formula
//! bound to an independent brute-force check, one machine-readable row per
//! claim per field (and dimension where it applies).
//!
//! The CLI's `verify-all` and the acceptance test suite both run these
//! checks; the CLI may parallelize across [`CheckId`]s, results are ordered
//! deterministically either way.

use serde::Serialize;
use serde_json::{json, Value};

use crate::field::FieldSpec;
use crate::matrix::FqMatrix;
use crate::oracle::{self, Diameter, SplitMix64};
use crate::orthogonal;
use crate::spectrum;
use crate::triangle;
use crate::vector::{self, FqVector};

/// Ranges for a verification run. `qmax` caps every per-field list (each
/// check also has its own intrinsic cap); `deep` enables the d = 4 work.
#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub qmax: u64,
    pub deep: bool,
}

impl VerifyConfig {
    /// The default command-line ranges.
    pub fn standard() -> Self {
        VerifyConfig {
            qmax: 13,
            deep: false,
        }
    }

    /// Everything, including the d = 4 recursion and the larger sphere
    /// census fields.
    pub fn full() -> Self {
        VerifyConfig {
            qmax: 27,
            deep: true,
        }
    }
}

/// One ledger row. The `theorem` field names the claim being checked.
#[derive(Clone, Debug, Serialize)]
pub struct LedgerRow {
    pub theorem: String,
    pub q: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    pub expected: Value,
    pub observed: Value,
    pub pass: bool,
}

impl LedgerRow {
    fn new(theorem: &str, q: u64, d: Option<u64>, expected: Value, observed: Value) -> Self {
        let pass = expected == observed;
        LedgerRow {
            theorem: theorem.to_string(),
            q,
            d,
            expected,
            observed,
            pass,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckId {
    SphereCensus,
    GoodLengths,
    UnitBounds,
    ZeroThree,
    Orth2x2,
    OrthDxd,
    TriangleCensus,
    CongruenceOracle,
    SpectrumBounds,
    WalkThreshold,
}

pub fn all_checks() -> Vec<CheckId> {
    vec![
        CheckId::SphereCensus,
        CheckId::GoodLengths,
        CheckId::UnitBounds,
        CheckId::ZeroThree,
        CheckId::Orth2x2,
        CheckId::OrthDxd,
        CheckId::TriangleCensus,
        CheckId::CongruenceOracle,
        CheckId::SpectrumBounds,
        CheckId::WalkThreshold,
    ]
}

pub fn check_name(id: CheckId) -> &'static str {
    match id {
        CheckId::SphereCensus => "sphere-census",
        CheckId::GoodLengths => "good-lengths",
        CheckId::UnitBounds => "unit-sum-bounds",
        CheckId::ZeroThree => "zero-three-unit-criterion",
        CheckId::Orth2x2 => "orthogonal-2x2",
        CheckId::OrthDxd => "orthogonal-dxd",
        CheckId::TriangleCensus => "triangle-census",
        CheckId::CongruenceOracle => "congruence-vs-orbit",
        CheckId::SpectrumBounds => "spectrum-bounds",
        CheckId::WalkThreshold => "walk-threshold",
    }
}

/// Decompose q as p^n for odd prime p, if it is such a power.
pub fn as_odd_prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 3 || q.is_multiple_of(2) {
        return None;
    }
    let mut p = 3;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 2;
    }
    if p * p > q {
        return Some((q, 1));
    }
    let mut v = q;
    let mut n = 0;
    while v.is_multiple_of(p) {
        v /= p;
        n += 1;
    }
    if v == 1 {
        Some((p, n))
    } else {
        None
    }
}

fn odd_prime_powers(lo: u64, hi: u64) -> Vec<(u64, usize, u64)> {
    (lo..=hi)
        .filter_map(|q| as_odd_prime_power(q).map(|(p, n)| (p, n, q)))
        .collect()
}

fn field_for(q: u64) -> FieldSpec {
    let (p, n) = as_odd_prime_power(q).expect("odd prime power");
    FieldSpec::make(p, n).expect("desk-scale field")
}

pub fn run_check(id: CheckId, cfg: &VerifyConfig) -> Vec<LedgerRow> {
    match id {
        CheckId::SphereCensus => sphere_census(cfg),
        CheckId::GoodLengths => good_lengths(cfg),
        CheckId::UnitBounds => unit_bounds(cfg),
        CheckId::ZeroThree => zero_three(cfg),
        CheckId::Orth2x2 => orth_2x2(cfg),
        CheckId::OrthDxd => orth_dxd(cfg),
        CheckId::TriangleCensus => triangle_census(cfg),
        CheckId::CongruenceOracle => congruence_oracle(cfg),
        CheckId::SpectrumBounds => spectrum_bounds(cfg),
        CheckId::WalkThreshold => walk_threshold(cfg),
    }
}

/// Run every check in order.
pub fn suite(cfg: &VerifyConfig) -> Vec<LedgerRow> {
    all_checks()
        .into_iter()
        .flat_map(|id| run_check(id, cfg))
        .collect()
}

/// Sphere census: the closed-form planar sphere size against exhaustive
/// enumeration, for every radius.
fn sphere_census(cfg: &VerifyConfig) -> Vec<LedgerRow> {
    let mut rows = Vec::new();
    for q in [3u64, 5, 7, 9, 11, 13, 25, 27] {
        if q > cfg.qmax {
            continue;
        }
        let spec = field_for(q);
        let mismatches = spec
            .elements()
            .filter(|&t| {
                vector::sphere(&spec, t, 2).len() as u64 != vector::sphere_size_formula(&spec, t)
            })
            .count();
        rows.push(LedgerRow::new(
            "sphere-census",
            q,
            Some(2),
            json!({"mismatched-radii": 0}),
            json!({"mismatched-radii": mismatches}),
        ));
    }
    rows
}

/// Good-length counts against brute force, plus the two-unit universality
/// boundary: everything at q = 3, not everything at q = 5.
fn good_lengths(cfg: &VerifyConfig) -> Vec<LedgerRow> {
    let mut rows = Vec::new();
    for (_, _, q) in odd_prime_powers(3, cfg.qmax.min(13)) {
        let spec = field_for(q);
        let brute = oracle::brute_good_lengths(&spec);
        rows.push(LedgerRow::new(
            "good-lengths",
            q,
            Some(2),
            json!({"count": vector::good_set_size(q), "closed-form": vector::good_set(&spec).iter().map(|&l| spec.index(l)).collect::<Vec<_>>()}),
            json!({"count": brute.len() as u64, "closed-form": brute}),
        ));
    }
    for (q, expect_all) in [(3u64, true), (5u64, false)] {
        if q > cfg.qmax {
            continue;
        }
        let spec = field_for(q);
        let all = oracle::two_unit_sumset(&spec).iter().all(|&b| b);
        rows.push(LedgerRow::new(
            "two-unit-universality",
            q,
            Some(2),
            json!(expect_all),
            json!(all),
        ));
    }
    rows
}

/// Constructive unit-vector decompositions: exact sums, counts within the
/// guaranteed bound, never beating the BFS oracle, plus the pinned sharp
/// distances.
fn unit_bounds(cfg: &VerifyConfig) -> Vec<LedgerRow> {
    let mut rows = Vec::new();
    let mut dims = vec![2usize, 3];
    if cfg.deep {
        dims.push(4);
    }
    for &d in &dims {
        for (_, _, q) in odd_prime_powers(3, cfg.qmax.min(13)) {
            let spec = field_for(q);
            let mut violations = 0u64;
            for idx in 0..FqVector::count(&spec, d) {
                let v = FqVector::from_index(&spec, d, idx);
                match vector::decompose_unit_sum(&spec, &v) {
                    Ok(dec) => {
                        if !dec.verify(&spec) || dec.count() > vector::unit_sum_bound(&spec, &v) {
                            violations += 1;
                        }
                    }
                    Err(_) => violations += 1,
                }
            }
            rows.push(LedgerRow::new(
                "unit-sum-bounds",
                q,
                Some(d as u64),
                json!({"violations": 0}),
                json!({"violations": violations}),
            ));

            // Oracle comparison where the BFS is desk-scale.
            let oracle_cap = if d == 4 { 9 } else { 13 };
            if q <= oracle_cap {
                let map = oracle::unit_sum_distances(&spec, d).expect("desk-scale ambient");
                let mut beat_oracle = 0u64;
                for idx in 0..FqVector::count(&spec, d) {
                    let v = FqVector::from_index(&spec, d, idx);
                    let dec = vector::decompose_unit_sum(&spec, &v).expect("decomposable");
                    let min = oracle::min_unit_sum(&spec, &map, &v).expect("reachable");
                    if (dec.count() as u32) < min {
                        beat_oracle += 1;
                    }
                }
                rows.push(LedgerRow::new(
                    "unit-sum-vs-oracle",
                    q,
                    Some(d as u64),
                    json!({"below-minimum": 0}),
                    json!({"below-minimum": beat_oracle}),
                ));
            }
        }
    }

    // Pinned distances: (2,2) in the plane over F_5 takes four steps.
    if cfg.qmax >= 5 {
        let f5 = field_for(5);
        let map = oracle::unit_sum_distances(&f5, 2).expect("desk scale");
        let v = FqVector::new(vec![f5.from_u64(2), f5.from_u64(2)]);
        rows.push(LedgerRow::new(
            "pinned-distance-plane",
            5,
            Some(2),
            json!(4),
            json!(oracle::min_unit_sum(&f5, &map, &v)),
        ));
    }
    // Isotropic (a, b, -1) vectors in three dimensions take three steps.
    for q in [7u64, 11] {
        if q > cfg.qmax {
            continue;
        }
        let spec = field_for(q);
        let map = oracle::unit_sum_distances(&spec, 3).expect("desk scale");
        let mut dists = std::collections::BTreeSet::new();
        for a in spec.elements() {
            for b in spec.elements() {
                if spec.add(spec.mul(a, a), spec.mul(b, b)) != spec.minus_one() {
                    continue;
                }
                let v = FqVector::new(vec![a, b, spec.minus_one()]);
                dists.insert(oracle::min_unit_sum(&spec, &map, &v));
            }
        }
        rows.push(LedgerRow::new(
            "pinned-distance-isotropic",
            q,
            Some(3),
            json!([3]),
            json!(dists
                .into_iter()
                .map(|d| d.unwrap_or(0))
                .collect::<Vec<_>>()),
        ));
    }
    rows
}

/// The zero-vector three-unit criterion against direct search, for p up to
/// 37 and degrees 1 and 2.
fn zero_three(_cfg: &VerifyConfig) -> Vec<LedgerRow> {
    let mut rows = Vec::new();
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        for n in [1usize, 2] {
            let spec = FieldSpec::make(p, n).expect("within range");
            let brute = oracle::zero_is_three_unit_sum(&spec);
            let predicted = vector::zero_three_units_possible(p, n);
            rows.push(LedgerRow::new(
                "zero-three-unit-criterion",
                spec.q(),
                Some(2),
                json!(predicted),
                json!(brute),
            ));
        }
    }
    rows
}

/// Exact eight/six-part decompositions for every 2x2 matrix, and the BFS
/// diameter certificate over F_5.
fn orth_2x2(cfg: &VerifyConfig) -> Vec<LedgerRow> {
    let mut rows = Vec::new();
    for (_, _, q) in odd_prime_powers(3, cfg.qmax.min(13)) {
        let spec = field_for(q);
        let want = orthogonal::exact_count(q, 2);
        let mut violations = 0u64;
        for idx in 0..FqMatrix::count(&spec, 2) {
            let m = FqMatrix::from_index(&spec, 2, idx);
            match orthogonal::decompose_2x2(&spec, &m) {
                Ok(dec) => {
                    if dec.parts.len() != want || !dec.verify(&spec) {
                        violations += 1;
                    }
                }
                Err(_) => violations += 1,
            }
        }
        rows.push(LedgerRow::new(
            "orthogonal-2x2-exact-count",
            q,
            Some(2),
            json!({"count": want, "violations": 0}),
            json!({"count": want, "violations": violations}),
        ));
    }
    if cfg.qmax >= 5 {
        let f5 = field_for(5);
        let map = oracle::orth_sum_distances(&f5, 2).expect("desk scale");
        let sharp = FqMatrix::from_rows(vec![vec![f5.one(), f5.zero()], vec![f5.one(), f5.zero()]]);
        let observed = json!({
            "diameter": match map.diameter { Diameter::Finite(v) => v, Diameter::Unreachable => u32::MAX },
            "sharp-matrix-distance": oracle::min_orth_sum(&f5, &map, &sharp),
        });
        rows.push(LedgerRow::new(
            "orthogonal-2x2-diameter",
            5,
            Some(2),
            json!({"diameter": 8, "sharp-matrix-distance": 8}),
            observed,
        ));
    }
    rows
}

/// Exact-count d >= 3 decompositions: full enumeration at (3, 3), seeded
/// samples at (3, 5) and, in deep runs, (4, 3).
fn orth_dxd(cfg: &VerifyConfig) -> Vec<LedgerRow> {
    let mut rows = Vec::new();
    let mut jobs: Vec<(usize, u64, Option<usize>)> = Vec::new();
    if cfg.qmax >= 3 {
        jobs.push((3, 3, None)); // full enumeration
    }
    if cfg.qmax >= 5 {
        jobs.push((3, 5, Some(1000)));
    }
    if cfg.deep {
        jobs.push((4, 3, Some(1000)));
    }
    for (d, q, samples) in jobs {
        let spec = field_for(q);
        let want = orthogonal::exact_count(q, d);
        let total = FqMatrix::count(&spec, d);
        let mut violations = 0u64;
        let mut tested = 0u64;
        let check = |m: &FqMatrix| match orthogonal::decompose_dxd(&spec, m) {
            Ok(dec) => {
                if dec.parts.len() != want || !dec.verify(&spec) {
                    1
                } else {
                    0
                }
            }
            Err(_) => 1,
        };
        match samples {
            None => {
                for idx in 0..total {
                    violations += check(&FqMatrix::from_index(&spec, d, idx));
                    tested += 1;
                }
            }
            Some(k) => {
                let mut rng = SplitMix64(0x5eed_0000 ^ ((d as u64) << 8) ^ q);
                for _ in 0..k {
                    let idx = rng.next_u64() % total;
                    violations += check(&FqMatrix::from_index(&spec, d, idx));
                    tested += 1;
                }
            }
        }
        rows.push(LedgerRow::new(
            "orthogonal-dxd-exact-count",
            q,
            Some(d as u64),
            json!({"count": want, "violations": 0, "tested": tested}),
            json!({"count": want, "violations": violations, "tested": tested}),
        ));
    }
    rows
}

/// Triangle census: orbit enumeration against the closed formula for small
/// q, and class enumeration against the group-index count for all q.
fn triangle_census(cfg: &VerifyConfig) -> Vec<LedgerRow> {
    let mut rows = Vec::new();
    for q in [3u64, 5, 7] {
        if q > cfg.qmax {
            continue;
        }
        let spec = field_for(q);
        let group = orthogonal::enumerate_o2(&spec);
        let mut orbit_reps = std::collections::BTreeSet::new();
        for idx in 0..FqMatrix::count(&spec, 2) {
            let m = FqMatrix::from_index(&spec, 2, idx);
            if m.det2(&spec).is_zero() {
                continue;
            }
            let rep = group
                .iter()
                .map(|g| g.matrix().mul(&spec, &m).index(&spec))
                .min()
                .expect("nonempty group");
            orbit_reps.insert(rep);
        }
        rows.push(LedgerRow::new(
            "triangle-census-orbits",
            q,
            Some(2),
            json!(triangle::count_classes(q)),
            json!(orbit_reps.len() as u64),
        ));
    }
    for (_, _, q) in odd_prime_powers(3, cfg.qmax.min(13)) {
        let spec = field_for(q);
        let classes = triangle::enumerate_classes(&spec).len() as u64;
        let o2 = orthogonal::enumerate_o2(&spec).len() as u64;
        let gl2 = (0..FqMatrix::count(&spec, 2))
            .filter(|&idx| !FqMatrix::from_index(&spec, 2, idx).det2(&spec).is_zero())
            .count() as u64;
        rows.push(LedgerRow::new(
            "triangle-census-index",
            q,
            Some(2),
            json!({"classes": triangle::count_classes(q), "group-index": triangle::count_classes(q)}),
            json!({"classes": classes, "group-index": gl2 / o2}),
        ));
    }
    rows
}

/// Invariant-triple congruence against orbit membership, on every pair of
/// invertible matrices.
fn congruence_oracle(cfg: &VerifyConfig) -> Vec<LedgerRow> {
    let mut rows = Vec::new();
    for q in [3u64, 5] {
        if q > cfg.qmax {
            continue;
        }
        let spec = field_for(q);
        let group = orthogonal::enumerate_o2(&spec);
        let mut invertible = Vec::new();
        for idx in 0..FqMatrix::count(&spec, 2) {
            let m = FqMatrix::from_index(&spec, 2, idx);
            if m.det2(&spec).is_zero() {
                continue;
            }
            let inv = triangle::invariants(&spec, &m);
            let orbit_rep = group
                .iter()
                .map(|g| g.matrix().mul(&spec, &m).index(&spec))
                .min()
                .expect("nonempty group");
            let triple = (spec.index(inv.l1), spec.index(inv.l2), spec.index(inv.mu));
            invertible.push((triple, orbit_rep));
        }
        let mut disagreements = 0u64;
        for (ta, ra) in &invertible {
            for (tb, rb) in &invertible {
                if (ta == tb) != (ra == rb) {
                    disagreements += 1;
                }
            }
        }
        rows.push(LedgerRow::new(
            "congruence-vs-orbit",
            q,
            Some(2),
            json!({"pairs": (invertible.len() * invertible.len()) as u64, "disagreements": 0}),
            json!({"pairs": (invertible.len() * invertible.len()) as u64, "disagreements": disagreements}),
        ));
    }
    rows
}

/// Full spectral reports: every bound branch, the trivial eigenvalue, the
/// closed forms, swap symmetry, and the Parseval identity.
fn spectrum_bounds(cfg: &VerifyConfig) -> Vec<LedgerRow> {
    let mut rows = Vec::new();
    for q in [5u64, 7, 9, 11, 13] {
        if q > cfg.qmax {
            continue;
        }
        let spec = field_for(q);
        let report = spectrum::bound_report(&spec).expect("desk scale");
        let failing = report.entries.iter().filter(|e| !e.pass).count() as u64;
        rows.push(LedgerRow::new(
            "spectrum-bounds",
            q,
            Some(2),
            json!({"failing-classes": 0, "classes": report.entries.len()}),
            json!({"failing-classes": failing, "classes": report.entries.len()}),
        ));
        let lam0 = report
            .entries
            .iter()
            .find(|e| matches!(e.class, spectrum::SpectralClass::Zero))
            .expect("zero class present");
        let expect0 = if q % 4 == 1 { 2 * (q - 1) } else { 2 * (q + 1) };
        rows.push(LedgerRow::new(
            "spectrum-trivial-eigenvalue",
            q,
            Some(2),
            json!(expect0),
            json!(lam0.value.re.round() as u64),
        ));
        rows.push(LedgerRow::new(
            "spectrum-closed-form",
            q,
            Some(2),
            json!(true),
            json!(report.closed_form_max_dev < 1e-6),
        ));
        rows.push(LedgerRow::new(
            "spectrum-parseval",
            q,
            Some(2),
            json!(true),
            json!(report.parseval_rel_err < 1e-6),
        ));
        rows.push(LedgerRow::new(
            "spectrum-symmetry",
            q,
            Some(2),
            json!(true),
            json!(report.symmetry_max_dev < 1e-9),
        ));
    }
    rows
}

/// Walk thresholds by direct evaluation of exhaustive circle sizes:
/// |S_1| >= (2 sqrt(q) / |S_1|)^3 on [73, 200], and the zero-radius
/// auxiliary sqrt(|S_1| |S_0|) > (2 sqrt(q) / |S_1|)^3 on [39, 200].
fn walk_threshold(_cfg: &VerifyConfig) -> Vec<LedgerRow> {
    let mut rows = Vec::new();
    for (_, _, q) in odd_prime_powers(39, 200) {
        let spec = field_for(q);
        let s1 = vector::sphere(&spec, spec.one(), 2).len() as f64;
        let s0 = vector::sphere(&spec, spec.zero(), 2).len() as f64;
        let rhs = (2.0 * (q as f64).sqrt() / s1).powi(3);
        if q >= 73 {
            rows.push(LedgerRow::new(
                "walk-threshold-main",
                q,
                Some(2),
                json!(true),
                json!(s1 >= rhs),
            ));
        }
        rows.push(LedgerRow::new(
            "walk-threshold-aux",
            q,
            Some(2),
            json!(true),
            json!((s1 * s0).sqrt() > rhs),
        ));
    }
    rows
}
