//! Eigenvalues of the Cayley digraphs T_G on Mat_n(F_q) (edge A -> B iff
//! B - A lies in the connection set G), computed through character sums.
//!
//! The additive characters chi_A(X) = chi(Tr_M(A X)) are eigenfunctions of
//! the adjacency operator with eigenvalues lambda_A = sum_{g in G} chi_A(g),
//! constant on G-equivalence classes. For G = O(2; q) the classes of
//! invertible matrices are the triangle-invariant triples, and their
//! eigenvalues have closed forms in terms of sphere Fourier transforms and
//! Kloosterman sums, with Weil-style bounds. [`bound_report`] computes the
//! full spectrum exhaustively and checks every bound branch.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::FqMatrix;
use crate::orthogonal;
use crate::triangle::{self, TriangleInvariant};
use crate::vector::{self, FqVector};

/// Cap on the ambient vertex count for exhaustive spectral scans.
pub const AMBIENT_LIMIT: u64 = 10_000_000;

/// Which standard generator family a connection set was built from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConnectionLabel {
    O2,
    Sl2,
    Gl2,
    UnitSphere { d: usize },
    PowerSubgroup { k: u64 },
}

/// The elements of a connection set; zero never belongs.
#[derive(Clone, Debug)]
pub enum ConnectionElems {
    Matrices(Vec<FqMatrix>),
    Vectors(Vec<FqVector>),
}

/// A labelled connection set for a Cayley digraph.
#[derive(Clone, Debug)]
pub struct ConnectionSet {
    pub label: ConnectionLabel,
    pub elems: ConnectionElems,
}

impl ConnectionSet {
    pub fn o2(spec: &FieldSpec) -> Self {
        ConnectionSet {
            label: ConnectionLabel::O2,
            elems: ConnectionElems::Matrices(
                orthogonal::enumerate_o2(spec)
                    .into_iter()
                    .map(|g| g.into_matrix())
                    .collect(),
            ),
        }
    }

    pub fn sl2(spec: &FieldSpec) -> Result<Self> {
        Ok(ConnectionSet {
            label: ConnectionLabel::Sl2,
            elems: ConnectionElems::Matrices(scan_2x2(spec, |spec, m| m.det2(spec) == spec.one())?),
        })
    }

    pub fn gl2(spec: &FieldSpec) -> Result<Self> {
        Ok(ConnectionSet {
            label: ConnectionLabel::Gl2,
            elems: ConnectionElems::Matrices(scan_2x2(spec, |spec, m| !m.det2(spec).is_zero())?),
        })
    }

    pub fn unit_sphere(spec: &FieldSpec, d: usize) -> Self {
        ConnectionSet {
            label: ConnectionLabel::UnitSphere { d },
            elems: ConnectionElems::Vectors(vector::sphere(spec, spec.one(), d)),
        }
    }

    /// The k-th power subgroup of the unit group, as 1-dimensional vectors.
    pub fn power_subgroup(spec: &FieldSpec, k: u64) -> Self {
        let mut seen = vec![false; spec.q() as usize];
        let mut elems = Vec::new();
        for x in spec.elements() {
            if !x.is_zero() {
                seen[spec.index(spec.pow(x, k)) as usize] = true;
            }
        }
        for (i, &s) in seen.iter().enumerate() {
            if s {
                elems.push(FqVector::new(vec![spec.element(i as u64)]));
            }
        }
        ConnectionSet {
            label: ConnectionLabel::PowerSubgroup { k },
            elems: ConnectionElems::Vectors(elems),
        }
    }

    pub fn len(&self) -> usize {
        match &self.elems {
            ConnectionElems::Matrices(v) => v.len(),
            ConnectionElems::Vectors(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of vertices of the ambient Cayley digraph.
    pub fn ambient_size(&self, spec: &FieldSpec) -> u64 {
        match &self.elems {
            ConnectionElems::Matrices(v) => {
                let d = v.first().map(|m| m.dim()).unwrap_or(2);
                spec.q().pow((d * d) as u32)
            }
            ConnectionElems::Vectors(v) => {
                let d = v.first().map(|x| x.dim()).unwrap_or(1);
                spec.q().pow(d as u32)
            }
        }
    }
}

fn scan_2x2(
    spec: &FieldSpec,
    keep: impl Fn(&FieldSpec, &FqMatrix) -> bool,
) -> Result<Vec<FqMatrix>> {
    let total = FqMatrix::count(spec, 2);
    if total > AMBIENT_LIMIT {
        return Err(Error::AmbientTooLarge {
            size: total,
            limit: AMBIENT_LIMIT,
        });
    }
    let mut out = Vec::new();
    for idx in 0..total {
        let m = FqMatrix::from_index(spec, 2, idx);
        if keep(spec, &m) {
            out.push(m);
        }
    }
    Ok(out)
}

/// chi(Tr_M(A B)) without materializing the product.
#[inline]
pub fn matrix_character(spec: &FieldSpec, a: &FqMatrix, b: &FqMatrix) -> Complex64 {
    let d = a.dim();
    let mut tr = spec.zero();
    for i in 0..d {
        for j in 0..d {
            tr = spec.add(tr, spec.mul(a.get(i, j), b.get(j, i)));
        }
    }
    spec.additive_character(tr)
}

/// lambda_A = sum over the connection set of chi(Tr_M(A g)). For A = 0 this
/// is exactly |G|.
pub fn cayley_eigenvalue(spec: &FieldSpec, a: &FqMatrix, g: &ConnectionSet) -> Complex64 {
    match &g.elems {
        ConnectionElems::Matrices(elems) => {
            elems.iter().map(|m| matrix_character(spec, a, m)).sum()
        }
        ConnectionElems::Vectors(_) => panic!("matrix eigenvalue over a vector connection set"),
    }
}

/// Eigenvalue at a frequency vector m for a vector connection set:
/// sum over g of chi(m . g).
pub fn vector_eigenvalue(spec: &FieldSpec, m: &FqVector, g: &ConnectionSet) -> Complex64 {
    match &g.elems {
        ConnectionElems::Vectors(elems) => elems
            .iter()
            .map(|x| spec.additive_character(vector::dot(spec, m, x)))
            .sum(),
        ConnectionElems::Matrices(_) => panic!("vector eigenvalue over a matrix connection set"),
    }
}

/// Check numerically that chi_A is an eigenfunction: at sampled vertices x,
/// sum_g chi_A(x + g) must equal lambda_A chi_A(x) within 1e-9.
pub fn eigenfunction_check(
    spec: &FieldSpec,
    a: &FqMatrix,
    g: &ConnectionSet,
    samples: usize,
) -> bool {
    let elems = match &g.elems {
        ConnectionElems::Matrices(e) => e,
        ConnectionElems::Vectors(_) => return false,
    };
    let d = a.dim();
    let ambient = FqMatrix::count(spec, d);
    let lambda = cayley_eigenvalue(spec, a, g);
    for j in 0..samples as u64 {
        let idx = (j.wrapping_mul(2_654_435_761)) % ambient;
        let x = FqMatrix::from_index(spec, d, idx);
        let lhs: Complex64 = elems
            .iter()
            .map(|e| matrix_character(spec, a, &x.add(spec, e)))
            .sum();
        let rhs = lambda * matrix_character(spec, a, &x);
        if (lhs - rhs).norm() > 1e-9 {
            return false;
        }
    }
    true
}

/// Spectral gap parameter n_* = (ambient / |G|) * max_{A != 0} |lambda_A|.
pub fn spectral_gap_param(spec: &FieldSpec, g: &ConnectionSet) -> Result<f64> {
    let ambient = g.ambient_size(spec);
    if ambient > AMBIENT_LIMIT {
        return Err(Error::AmbientTooLarge {
            size: ambient,
            limit: AMBIENT_LIMIT,
        });
    }
    let mut max_nontrivial: f64 = 0.0;
    match &g.elems {
        ConnectionElems::Matrices(elems) => {
            let d = elems[0].dim();
            for idx in 1..ambient {
                let a = FqMatrix::from_index(spec, d, idx);
                let lam: Complex64 = elems.iter().map(|m| matrix_character(spec, &a, m)).sum();
                max_nontrivial = max_nontrivial.max(lam.norm());
            }
        }
        ConnectionElems::Vectors(elems) => {
            let d = elems[0].dim();
            for idx in 1..ambient {
                let m = FqVector::from_index(spec, d, idx);
                let lam = vector_eigenvalue(spec, &m, g);
                max_nontrivial = max_nontrivial.max(lam.norm());
            }
        }
    }
    Ok((ambient as f64 / g.len() as f64) * max_nontrivial)
}

/// Unnormalized Fourier transform of the sphere indicator:
/// sum over x in S_t of chi(-m . x).
pub fn sphere_fourier(spec: &FieldSpec, m: &FqVector, t: FieldElement) -> Complex64 {
    vector::sphere(spec, t, m.dim())
        .iter()
        .map(|x| spec.additive_character(spec.neg(vector::dot(spec, m, x))))
        .sum()
}

/// Kloosterman sum K(a, b) = sum over x != 0 of chi(a x + b / x).
pub fn kloosterman(spec: &FieldSpec, a: FieldElement, b: FieldElement) -> Complex64 {
    spec.elements()
        .filter(|x| !x.is_zero())
        .map(|x| {
            let inv = spec.inv(x).expect("x nonzero");
            spec.additive_character(spec.add(spec.mul(a, x), spec.mul(b, inv)))
        })
        .sum()
}

/// Direct per-class evaluation: sum chi(a + d) over all matrices
/// [[a, b], [c, d]] whose invariant triple is the given one, obtained by
/// walking the first-column sphere and solving for second columns.
pub fn class_eigenvalue_by_coset(spec: &FieldSpec, inv: &TriangleInvariant) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for first in vector::sphere(spec, inv.l1, 2) {
        if first.is_zero() {
            continue;
        }
        let sols = triangle::second_column_solutions(
            spec,
            first.coords[0],
            first.coords[1],
            inv.l2,
            inv.mu,
        )
        .expect("first column nonzero");
        for s in sols {
            acc += spec.additive_character(spec.add(first.coords[0], s.coords[1]));
        }
    }
    acc
}

/// Closed form for the O(2)-graph eigenvalue of a realizable triple.
///
/// For L1 != 0: F(1 + r/L1, mu/L1) + F(1 - r/L1, mu/L1) with r a square
/// root of L1 L2 - mu^2 and F the Fourier transform of the L1-sphere
/// indicator. For L1 = 0 != L2 the class is evaluated through the unique
/// second-column solutions. For L1 = L2 = 0, mu != 0 it is the pair of
/// Kloosterman sums K(1, -i mu/2) + K(1, +i mu/2).
pub fn o2_eigenvalue_closed_form(
    spec: &FieldSpec,
    l1: FieldElement,
    l2: FieldElement,
    mu: FieldElement,
) -> Result<Complex64> {
    let inv = TriangleInvariant { l1, l2, mu };
    if !l1.is_zero() {
        if !triangle::is_realizable(spec, &inv) {
            return Err(Error::UnrealizableInvariant);
        }
        let disc = spec.sub(spec.mul(l1, l2), spec.mul(mu, mu));
        let r = spec
            .sqrt_canonical(disc)
            .expect("realizable triple has square disc");
        let ratio = spec.div(r, l1).expect("l1 nonzero");
        let beta = spec.div(mu, l1).expect("l1 nonzero");
        let alpha_plus = spec.add(spec.one(), ratio);
        let alpha_minus = spec.sub(spec.one(), ratio);
        // F(alpha, beta) = sum_{x in S_{l1}} chi(alpha x1 + beta x2), i.e.
        // the sphere transform at the negated frequency.
        let f = |alpha: FieldElement| {
            sphere_fourier(
                spec,
                &FqVector::new(vec![spec.neg(alpha), spec.neg(beta)]),
                l1,
            )
        };
        return Ok(f(alpha_plus) + f(alpha_minus));
    }
    if !l2.is_zero() {
        if !triangle::is_realizable(spec, &inv) {
            return Err(Error::UnrealizableInvariant);
        }
        return Ok(class_eigenvalue_by_coset(spec, &inv));
    }
    // L1 = L2 = 0: needs mu != 0 and isotropic directions, so q = 1 mod 4.
    if mu.is_zero() || spec.q() % 4 != 1 {
        return Err(Error::UnrealizableInvariant);
    }
    let i = spec.fourth_root().expect("q = 1 mod 4");
    let half_mu = spec.halve(mu);
    let k1 = kloosterman(spec, spec.one(), spec.neg(spec.mul(i, half_mu)));
    let k2 = kloosterman(spec, spec.one(), spec.mul(i, half_mu));
    Ok(k1 + k2)
}

/// Eigenvalue of a rank-one matrix [[a, b], [s a, s b]], summed over the two
/// components of O(2), with the flag for the exceptional direction a = +-bi.
pub struct RankOneEigen {
    pub value: Complex64,
    /// True when a = +-b i for a primitive fourth root i (so only when
    /// q = 1 mod 4); in that case, and only then, the eigenvalue escapes
    /// the 4 sqrt(q) bound, up to |SO(2)| + 2 sqrt(q).
    pub exceptional: bool,
}

pub fn rank_one_eigenvalue(
    spec: &FieldSpec,
    a: FieldElement,
    b: FieldElement,
    s: FieldElement,
) -> RankOneEigen {
    assert!(!(a.is_zero() && b.is_zero()));
    let circle = vector::sphere(spec, spec.one(), 2);
    let mut acc = Complex64::new(0.0, 0.0);
    for p in &circle {
        let (x, y) = (p.coords[0], p.coords[1]);
        // Reflection component: chi(ax + ays + by - bxs).
        let t1 = spec.add(
            spec.add(spec.mul(a, x), spec.mul(spec.mul(a, y), s)),
            spec.sub(spec.mul(b, y), spec.mul(spec.mul(b, x), s)),
        );
        // Rotation component: chi(ax - ays + by + bxs).
        let t2 = spec.add(
            spec.sub(spec.mul(a, x), spec.mul(spec.mul(a, y), s)),
            spec.add(spec.mul(b, y), spec.mul(spec.mul(b, x), s)),
        );
        acc += spec.additive_character(t1) + spec.additive_character(t2);
    }
    let exceptional = match spec.fourth_root() {
        Some(i) => a == spec.mul(b, i) || a == spec.neg(spec.mul(b, i)),
        None => false,
    };
    RankOneEigen {
        value: acc,
        exceptional,
    }
}

/// Eigenvalue-class identifier in the O(2)-graph report.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpectralClass {
    /// The zero matrix.
    Zero,
    /// Rank-one matrices w v^T, classified by the two factor lengths.
    RankOne {
        w_len: FieldElement,
        v_len: FieldElement,
    },
    /// Invertible matrices, classified by the invariant triple.
    Invertible(TriangleInvariant),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BoundBranch {
    /// lambda_0 = |O(2; q)| exactly.
    GroupOrder,
    /// (L, L, 0) classes: lambda = |SO(2)| + E with |E| <= 2 sqrt(q).
    EqualLengths,
    /// Everything else invertible: |lambda| <= 4 sqrt(q).
    Generic,
    /// Rank one, at most one isotropic factor: |lambda| <= 4 sqrt(q).
    RankOne,
    /// Rank one with both factors isotropic: |lambda| <= |SO(2)| + 2 sqrt(q).
    RankOneIsotropic,
}

impl BoundBranch {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundBranch::GroupOrder => "group-order",
            BoundBranch::EqualLengths => "equal-lengths",
            BoundBranch::Generic => "generic",
            BoundBranch::RankOne => "rank-one",
            BoundBranch::RankOneIsotropic => "rank-one-isotropic",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpectrumEntry {
    pub class: SpectralClass,
    pub value: Complex64,
    pub branch: BoundBranch,
    pub bound: f64,
    pub pass: bool,
}

/// Full spectrum of the O(2)-graph with one entry per eigenvalue class and
/// all bound verdicts, plus the global diagnostics computed alongside.
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub entries: Vec<SpectrumEntry>,
    /// n_* = (q^4 / |G|) max_{A != 0} |lambda_A|, from the exhaustive scan.
    pub gap_param: f64,
    /// Relative error of sum_A |lambda_A|^2 against q^4 |G|.
    pub parseval_rel_err: f64,
    /// Largest |closed form - direct sum| over realizable triples.
    pub closed_form_max_dev: f64,
    /// Largest |lambda(L1,L2,mu) - lambda(L2,L1,mu)|.
    pub symmetry_max_dev: f64,
}

const EPS: f64 = 1e-9;

/// Exhaustive spectrum and bound check of T_{O(2;q)} at desk scale.
pub fn bound_report(spec: &FieldSpec) -> Result<SpectrumReport> {
    let q = spec.q();
    let ambient = FqMatrix::count(spec, 2);
    if ambient > AMBIENT_LIMIT {
        return Err(Error::AmbientTooLarge {
            size: ambient,
            limit: AMBIENT_LIMIT,
        });
    }
    let g = ConnectionSet::o2(spec);
    let group_order = g.len() as f64;
    let so2_order = vector::sphere_size_formula(spec, spec.one()) as f64;
    let four_sqrt_q = 4.0 * (q as f64).sqrt();
    let two_sqrt_q = 2.0 * (q as f64).sqrt();

    let mut entries = Vec::new();

    // Zero class: the trivial character sum.
    let lam0 = cayley_eigenvalue(spec, &FqMatrix::zero(2), &g);
    let expect0 = if q % 4 == 1 { 2 * (q - 1) } else { 2 * (q + 1) };
    entries.push(SpectrumEntry {
        class: SpectralClass::Zero,
        value: lam0,
        branch: BoundBranch::GroupOrder,
        bound: expect0 as f64,
        pass: (lam0 - Complex64::new(expect0 as f64, 0.0)).norm() < EPS,
    });

    // Rank-one classes: one representative per pair of factor lengths.
    let nonzero_norms: Vec<FieldElement> = spec
        .elements()
        .filter(|&l| vector::sphere(spec, l, 2).iter().any(|v| !v.is_zero()))
        .collect();
    let first_of_norm = |l: FieldElement| -> FqVector {
        vector::sphere(spec, l, 2)
            .into_iter()
            .find(|v| !v.is_zero())
            .expect("norm achieved by a nonzero vector")
    };
    for &lw in &nonzero_norms {
        let w = first_of_norm(lw);
        for &lv in &nonzero_norms {
            let v = first_of_norm(lv);
            let mut a = FqMatrix::zero(2);
            for i in 0..2 {
                for j in 0..2 {
                    a.set(i, j, spec.mul(w.coords[i], v.coords[j]));
                }
            }
            let lam = cayley_eigenvalue(spec, &a, &g);
            let isotropic_pair = lw.is_zero() && lv.is_zero();
            let (branch, bound) = if isotropic_pair {
                (BoundBranch::RankOneIsotropic, so2_order + two_sqrt_q)
            } else {
                (BoundBranch::RankOne, four_sqrt_q)
            };
            entries.push(SpectrumEntry {
                class: SpectralClass::RankOne {
                    w_len: lw,
                    v_len: lv,
                },
                value: lam,
                branch,
                bound,
                pass: lam.norm() <= bound + EPS,
            });
        }
    }

    // Invertible classes, with the closed-form cross-check.
    let classes = triangle::enumerate_classes(spec);
    let mut by_triple: std::collections::BTreeMap<(u64, u64, u64), Complex64> =
        std::collections::BTreeMap::new();
    let mut closed_form_max_dev: f64 = 0.0;
    for inv in &classes {
        let rep = triangle::representative(spec, inv)?;
        let lam = cayley_eigenvalue(spec, &rep, &g);
        let closed = o2_eigenvalue_closed_form(spec, inv.l1, inv.l2, inv.mu)?;
        closed_form_max_dev = closed_form_max_dev.max((closed - lam).norm());
        by_triple.insert(
            (spec.index(inv.l1), spec.index(inv.l2), spec.index(inv.mu)),
            lam,
        );
        let equal_lengths = inv.l1 == inv.l2 && inv.mu.is_zero() && !inv.l1.is_zero();
        let (branch, bound, pass) = if equal_lengths {
            let err = (lam - Complex64::new(so2_order, 0.0)).norm();
            (
                BoundBranch::EqualLengths,
                so2_order + two_sqrt_q,
                err <= two_sqrt_q + EPS,
            )
        } else {
            (
                BoundBranch::Generic,
                four_sqrt_q,
                lam.norm() <= four_sqrt_q + EPS,
            )
        };
        entries.push(SpectrumEntry {
            class: SpectralClass::Invertible(*inv),
            value: lam,
            branch,
            bound,
            pass,
        });
    }

    // Swap symmetry of the two lengths.
    let mut symmetry_max_dev: f64 = 0.0;
    for (&(l1, l2, mu), &lam) in &by_triple {
        if let Some(&other) = by_triple.get(&(l2, l1, mu)) {
            symmetry_max_dev = symmetry_max_dev.max((lam - other).norm());
        }
    }

    // Exhaustive scan: gap parameter and the Parseval identity.
    let mut max_nontrivial: f64 = 0.0;
    let mut power_sum: f64 = 0.0;
    let elems = match &g.elems {
        ConnectionElems::Matrices(e) => e,
        ConnectionElems::Vectors(_) => unreachable!(),
    };
    for idx in 0..ambient {
        let a = FqMatrix::from_index(spec, 2, idx);
        let lam: Complex64 = elems.iter().map(|m| matrix_character(spec, &a, m)).sum();
        power_sum += lam.norm_sqr();
        if idx != 0 {
            max_nontrivial = max_nontrivial.max(lam.norm());
        }
    }
    let parseval_expect = ambient as f64 * group_order;
    let parseval_rel_err = (power_sum - parseval_expect).abs() / parseval_expect;
    let gap_param = (ambient as f64 / group_order) * max_nontrivial;

    Ok(SpectrumReport {
        entries,
        gap_param,
        parseval_rel_err,
        closed_form_max_dev,
        symmetry_max_dev,
    })
}

/// One row of the unit-distance (sphere) graph spectrum: frequency classes
/// are the zero vector plus one class per achievable nonzero-vector length.
#[derive(Clone, Debug)]
pub struct SphereClassEntry {
    /// None for the zero frequency, otherwise the common length of the
    /// class representatives.
    pub m_len: Option<FieldElement>,
    pub value: Complex64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct SphereSpectrumReport {
    pub entries: Vec<SphereClassEntry>,
    pub gap_param: f64,
}

/// Spectrum of the planar unit-distance Cayley graph, by frequency class.
pub fn sphere_report(spec: &FieldSpec) -> Result<SphereSpectrumReport> {
    let g = ConnectionSet::unit_sphere(spec, 2);
    let two_sqrt_q = 2.0 * (spec.q() as f64).sqrt();
    let mut entries = Vec::new();

    let zero_lam = vector_eigenvalue(spec, &FqVector::zero(2), &g);
    let size = g.len() as f64;
    entries.push(SphereClassEntry {
        m_len: None,
        value: zero_lam,
        bound: size,
        pass: (zero_lam - Complex64::new(size, 0.0)).norm() < EPS,
    });
    for l in spec.elements() {
        let rep = vector::sphere(spec, l, 2)
            .into_iter()
            .find(|v| !v.is_zero());
        let Some(rep) = rep else { continue };
        let lam = vector_eigenvalue(spec, &rep, &g);
        entries.push(SphereClassEntry {
            m_len: Some(l),
            value: lam,
            bound: two_sqrt_q,
            pass: lam.norm() <= two_sqrt_q + EPS,
        });
    }
    let gap_param = spectral_gap_param(spec, &g)?;
    Ok(SphereSpectrumReport { entries, gap_param })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, n: usize) -> FieldSpec {
        FieldSpec::make(p, n).unwrap()
    }

    #[test]
    fn zero_matrix_eigenvalue_is_group_size() {
        let f5 = f(5, 1);
        let g = ConnectionSet::o2(&f5);
        let lam = cayley_eigenvalue(&f5, &FqMatrix::zero(2), &g);
        assert!((lam - Complex64::new(8.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn eigenvalues_sum_to_zero_over_all_matrices() {
        // 0 is not in G, so sum_A lambda_A = sum_g sum_A chi_A(g) = 0.
        let f5 = f(5, 1);
        let g = ConnectionSet::o2(&f5);
        let mut acc = Complex64::new(0.0, 0.0);
        for idx in 0..FqMatrix::count(&f5, 2) {
            acc += cayley_eigenvalue(&f5, &FqMatrix::from_index(&f5, 2, idx), &g);
        }
        assert!(acc.norm() < 1e-6, "sum = {acc}");
    }

    #[test]
    fn identity_eigenvalue_matches_manual_summation() {
        let f5 = f(5, 1);
        let g = ConnectionSet::o2(&f5);
        let id = FqMatrix::identity(&f5, 2);
        let lam = cayley_eigenvalue(&f5, &id, &g);
        // Manual route: chi(Tr g) over the eight group elements.
        let mut manual = Complex64::new(0.0, 0.0);
        if let ConnectionElems::Matrices(elems) = &g.elems {
            for m in elems {
                manual += f5.additive_character(m.trace(&f5));
            }
        }
        assert!((lam - manual).norm() < 1e-12);
    }

    #[test]
    fn eigenfunction_identity_holds() {
        let f5 = f(5, 1);
        let g = ConnectionSet::o2(&f5);
        assert!(eigenfunction_check(&f5, &FqMatrix::zero(2), &g, 10));
        for idx in [1u64, 17, 123, 311, 624] {
            let a = FqMatrix::from_index(&f5, 2, idx);
            assert!(eigenfunction_check(&f5, &a, &g, 100));
        }
        let f7 = f(7, 1);
        let sphere_set = ConnectionSet::unit_sphere(&f7, 2);
        // Vector graphs take the vector route.
        for idx in [1u64, 5, 23, 40] {
            let m = FqVector::from_index(&f7, 2, idx);
            let lam = vector_eigenvalue(&f7, &m, &sphere_set);
            // Direct eigenfunction identity at a few points.
            if let ConnectionElems::Vectors(elems) = &sphere_set.elems {
                for xj in [0u64, 11, 31] {
                    let x = FqVector::from_index(&f7, 2, xj);
                    let lhs: Complex64 = elems
                        .iter()
                        .map(|e| f7.additive_character(vector::dot(&f7, &m, &x.add(&f7, e))))
                        .sum();
                    let rhs = lam * f7.additive_character(vector::dot(&f7, &m, &x));
                    assert!((lhs - rhs).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn sphere_fourier_known_values() {
        let f5 = f(5, 1);
        let zero_freq = FqVector::zero(2);
        let val = sphere_fourier(&f5, &zero_freq, f5.one());
        assert!((val - Complex64::new(4.0, 0.0)).norm() < 1e-12);

        let m = FqVector::new(vec![f5.from_u64(2), f5.zero()]);
        let val = sphere_fourier(&f5, &m, f5.one());
        assert!(val.norm() < 2.0 * 5.0_f64.sqrt());
    }

    #[test]
    fn sphere_fourier_weil_bound_exhaustive() {
        // The 2 sqrt(q) bound is for spheres of nonzero radius; the radius-0
        // locus is a line pair whose transform reaches q - 1 at isotropic
        // frequencies.
        for (p, n) in [(3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (3, 2)] {
            let spec = f(p, n);
            let bound = 2.0 * (spec.q() as f64).sqrt() + 1e-9;
            for t in spec.elements() {
                if t.is_zero() {
                    continue;
                }
                for mi in 1..FqVector::count(&spec, 2) {
                    let m = FqVector::from_index(&spec, 2, mi);
                    assert!(
                        sphere_fourier(&spec, &m, t).norm() <= bound,
                        "q={} t={:?} m={:?}",
                        spec.q(),
                        t,
                        m
                    );
                }
            }
        }
    }

    #[test]
    fn kloosterman_known_values() {
        let f5 = f(5, 1);
        let k00 = kloosterman(&f5, f5.zero(), f5.zero());
        assert!((k00 - Complex64::new(4.0, 0.0)).norm() < 1e-12);

        let k11 = kloosterman(&f5, f5.one(), f5.one());
        assert!(k11.im.abs() < 1e-9, "K(1,1) is real");
        assert!(k11.norm() <= 2.0 * 5.0_f64.sqrt() + 1e-9);

        // Conjugation symmetry.
        for (p, n) in [(5, 1), (7, 1), (13, 1)] {
            let spec = f(p, n);
            for a in spec.elements() {
                for b in spec.elements() {
                    let k = kloosterman(&spec, a, b);
                    let kc = kloosterman(&spec, spec.neg(a), spec.neg(b));
                    assert!((k - kc.conj()).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn kloosterman_weil_bound_exhaustive() {
        for (p, n) in [(5, 1), (7, 1), (11, 1), (13, 1), (3, 2)] {
            let spec = f(p, n);
            let bound = 2.0 * (spec.q() as f64).sqrt() + 1e-9;
            for a in spec.elements() {
                for b in spec.elements() {
                    if a.is_zero() && b.is_zero() {
                        continue;
                    }
                    assert!(kloosterman(&spec, a, b).norm() <= bound);
                }
            }
        }
    }

    #[test]
    fn closed_form_matches_direct_paths() {
        for (p, n) in [(5u64, 1usize), (7, 1), (3, 2), (13, 1)] {
            let spec = f(p, n);
            let g = ConnectionSet::o2(&spec);
            for inv in triangle::enumerate_classes(&spec) {
                let closed = o2_eigenvalue_closed_form(&spec, inv.l1, inv.l2, inv.mu).unwrap();
                let coset = class_eigenvalue_by_coset(&spec, &inv);
                let rep = triangle::representative(&spec, &inv).unwrap();
                let group = cayley_eigenvalue(&spec, &rep, &g);
                assert!(
                    (closed - group).norm() < 1e-6,
                    "closed vs group at q={} inv={:?}",
                    spec.q(),
                    inv
                );
                assert!(
                    (coset - group).norm() < 1e-6,
                    "coset vs group at q={} inv={:?}",
                    spec.q(),
                    inv
                );
            }
        }
    }

    #[test]
    fn equal_length_classes_hit_the_special_branch() {
        // lambda(L, L, 0) = |S_1| + F(2, 0): check the displayed form.
        let f5 = f(5, 1);
        for l in f5.elements() {
            if l.is_zero() {
                continue;
            }
            let inv = TriangleInvariant {
                l1: l,
                l2: l,
                mu: f5.zero(),
            };
            if !triangle::is_realizable(&f5, &inv) {
                continue;
            }
            let lam = o2_eigenvalue_closed_form(&f5, l, l, f5.zero()).unwrap();
            let f20 = sphere_fourier(
                &f5,
                &FqVector::new(vec![f5.neg(f5.from_u64(2)), f5.zero()]),
                l,
            );
            let s1 = vector::sphere_size_formula(&f5, f5.one()) as f64;
            assert!((lam - (Complex64::new(s1, 0.0) + f20)).norm() < 1e-9);
        }
    }

    #[test]
    fn isotropic_pair_classes_are_kloosterman_bounded() {
        let f13 = f(13, 1);
        for mu in f13.elements() {
            if mu.is_zero() {
                continue;
            }
            let lam = o2_eigenvalue_closed_form(&f13, f13.zero(), f13.zero(), mu).unwrap();
            assert!(lam.norm() <= 4.0 * 13.0_f64.sqrt() + 1e-9);
        }
    }

    #[test]
    fn gap_param_matches_exhaustive_report() {
        let f5 = f(5, 1);
        let g = ConnectionSet::o2(&f5);
        let direct = spectral_gap_param(&f5, &g).unwrap();
        let report = bound_report(&f5).unwrap();
        assert!((direct - report.gap_param).abs() < 1e-9);
    }

    #[test]
    fn unrealizable_triples_are_rejected() {
        let f5 = f(5, 1);
        assert_eq!(
            o2_eigenvalue_closed_form(&f5, f5.one(), f5.one(), f5.one()).unwrap_err(),
            Error::UnrealizableInvariant
        );
        let f7 = f(7, 1);
        assert_eq!(
            o2_eigenvalue_closed_form(&f7, f7.zero(), f7.zero(), f7.one()).unwrap_err(),
            Error::UnrealizableInvariant
        );
    }

    #[test]
    fn rank_one_worked_cases() {
        // s = 0: lambda = 2 sum chi(ax + by), within 4 sqrt(q).
        let f7 = f(7, 1);
        for ai in 0..7u64 {
            for bi in 0..7u64 {
                if ai == 0 && bi == 0 {
                    continue;
                }
                for si in 0..7u64 {
                    let r =
                        rank_one_eigenvalue(&f7, f7.from_u64(ai), f7.from_u64(bi), f7.from_u64(si));
                    assert!(!r.exceptional, "no fourth root of -1 mod 7");
                    assert!(r.value.norm() <= 4.0 * 7.0_f64.sqrt() + 1e-9);
                }
            }
        }

        // q = 5: i = 3 is a primitive fourth root; a = 1, b = 2 satisfies
        // a = -b i (1 = -2*3 mod 5), so the class is exceptional.
        let f5 = f(5, 1);
        let r = rank_one_eigenvalue(&f5, f5.one(), f5.from_u64(2), f5.from_u64(2));
        assert!(r.exceptional);
        assert!(r.value.norm() <= (5.0 - 1.0) + 2.0 * 5.0_f64.sqrt() + 1e-9);
    }

    #[test]
    fn rank_one_formula_matches_group_sum() {
        let f5 = f(5, 1);
        let g = ConnectionSet::o2(&f5);
        for ai in 0..5u64 {
            for bi in 0..5u64 {
                if ai == 0 && bi == 0 {
                    continue;
                }
                for si in 0..5u64 {
                    let (a, b, s) = (f5.from_u64(ai), f5.from_u64(bi), f5.from_u64(si));
                    let m = FqMatrix::from_rows(vec![vec![a, b], vec![f5.mul(s, a), f5.mul(s, b)]]);
                    let lam = cayley_eigenvalue(&f5, &m, &g);
                    let r = rank_one_eigenvalue(&f5, a, b, s);
                    assert!((lam - r.value).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn bound_report_small_fields() {
        for (p, n) in [(5, 1), (7, 1)] {
            let spec = f(p, n);
            let report = bound_report(&spec).unwrap();
            assert!(report.entries.iter().all(|e| e.pass), "q={}", spec.q());
            assert!(report.parseval_rel_err < 1e-6);
            assert!(report.closed_form_max_dev < 1e-6);
            assert!(report.symmetry_max_dev < 1e-9);
            assert!(report.gap_param > 0.0);
        }
    }

    #[test]
    fn eigenvalues_constant_on_g_equivalence_classes() {
        // lambda_{xAy} = lambda_A for all x, y in O(2), exhaustively.
        for (p, n) in [(3, 1), (5, 1)] {
            let spec = f(p, n);
            let g = ConnectionSet::o2(&spec);
            let group = orthogonal::enumerate_o2(&spec);
            let all: Vec<Complex64> = (0..FqMatrix::count(&spec, 2))
                .map(|idx| cayley_eigenvalue(&spec, &FqMatrix::from_index(&spec, 2, idx), &g))
                .collect();
            for idx in 0..FqMatrix::count(&spec, 2) {
                let a = FqMatrix::from_index(&spec, 2, idx);
                for x in &group {
                    for y in &group {
                        let b = x.matrix().mul(&spec, &a).mul(&spec, y.matrix());
                        let other = all[b.index(&spec) as usize];
                        assert!((all[idx as usize] - other).norm() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn power_subgroup_and_sl2_smoke() {
        let f13 = f(13, 1);
        let squares = ConnectionSet::power_subgroup(&f13, 2);
        assert_eq!(squares.len(), 6);
        let gap = spectral_gap_param(&f13, &squares).unwrap();
        assert!(gap > 0.0);

        let f3 = f(3, 1);
        let sl2 = ConnectionSet::sl2(&f3).unwrap();
        assert_eq!(sl2.len(), 24);
        let gl2 = ConnectionSet::gl2(&f3).unwrap();
        assert_eq!(gl2.len(), 48);
        // lambda_0 = |G| for any connection set.
        let lam = cayley_eigenvalue(&f3, &FqMatrix::zero(2), &sl2);
        assert!((lam - Complex64::new(24.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn sphere_report_entries_pass() {
        for (p, n) in [(5, 1), (7, 1), (13, 1)] {
            let spec = f(p, n);
            let report = sphere_report(&spec).unwrap();
            assert!(report.entries.iter().all(|e| e.pass));
            // Nontrivial eigenvalues bounded by 2 sqrt(q) makes the gap
            // parameter at most q^2 * 2 sqrt(q) / |S_1|.
            let s1 = vector::sphere_size_formula(&spec, spec.one()) as f64;
            let expect_max = (spec.q() as f64).powi(2) / s1 * 2.0 * (spec.q() as f64).sqrt();
            assert!(report.gap_param <= expect_max + 1e-6);
        }
    }
}
