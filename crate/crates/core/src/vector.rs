//! Vectors in F_q^d: lengths, spheres, and constructive decompositions into
//! unit vectors.
//!
//! "Length" is the quadratic form ||x|| = x_1^2 + ... + x_d^2 (not a metric),
//! and a unit vector is one of length 1. [`decompose_unit_sum`] writes any
//! vector as a short exact sum of unit vectors with the guaranteed counts:
//! at most 4 in the plane (3 for nonzero vectors when q = 3 mod 4, 2 when
//! q = 3), 2 or 3 for d = 3 depending on q mod 4, and 2 for every d >= 4.
//! All searches are deterministic scans in canonical enumeration order, so
//! equal inputs yield byte-equal decompositions.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::orthogonal;
use crate::triangle;

/// A coordinate vector over one field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FqVector {
    pub coords: Vec<FieldElement>,
}

impl FqVector {
    pub fn new(coords: Vec<FieldElement>) -> Self {
        FqVector { coords }
    }

    pub fn zero(d: usize) -> Self {
        FqVector {
            coords: vec![FieldElement::default(); d],
        }
    }

    /// Standard basis vector e_axis.
    pub fn basis(spec: &FieldSpec, d: usize, axis: usize) -> Self {
        let mut v = Self::zero(d);
        v.coords[axis] = spec.one();
        v
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, spec: &FieldSpec, other: &FqVector) -> FqVector {
        FqVector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| spec.add(a, b))
                .collect(),
        )
    }

    pub fn sub(&self, spec: &FieldSpec, other: &FqVector) -> FqVector {
        FqVector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| spec.sub(a, b))
                .collect(),
        )
    }

    pub fn neg(&self, spec: &FieldSpec) -> FqVector {
        FqVector::new(self.coords.iter().map(|&a| spec.neg(a)).collect())
    }

    pub fn scale(&self, spec: &FieldSpec, c: FieldElement) -> FqVector {
        FqVector::new(self.coords.iter().map(|&a| spec.mul(c, a)).collect())
    }

    /// Canonical index: coordinates read lexicographically, first coordinate
    /// most significant.
    pub fn index(&self, spec: &FieldSpec) -> u64 {
        let mut idx = 0u64;
        for &c in &self.coords {
            idx = idx * spec.q() + spec.index(c);
        }
        idx
    }

    pub fn from_index(spec: &FieldSpec, d: usize, mut idx: u64) -> FqVector {
        let mut coords = vec![FieldElement::default(); d];
        for slot in coords.iter_mut().rev() {
            *slot = spec.element(idx % spec.q());
            idx /= spec.q();
        }
        FqVector { coords }
    }

    pub fn count(spec: &FieldSpec, d: usize) -> u64 {
        spec.q().pow(d as u32)
    }
}

/// ||v|| = sum of squared coordinates.
pub fn norm(spec: &FieldSpec, v: &FqVector) -> FieldElement {
    let mut acc = spec.zero();
    for &c in &v.coords {
        acc = spec.add(acc, spec.mul(c, c));
    }
    acc
}

pub fn dot(spec: &FieldSpec, a: &FqVector, b: &FqVector) -> FieldElement {
    let mut acc = spec.zero();
    for (&x, &y) in a.coords.iter().zip(&b.coords) {
        acc = spec.add(acc, spec.mul(x, y));
    }
    acc
}

/// All vectors of length t in F_q^d, in canonical lexicographic order.
///
/// Enumeration scans the first d-1 coordinates and completes the last by a
/// square root, so the cost is O(q^(d-1)) rather than O(q^d).
pub fn sphere(spec: &FieldSpec, t: FieldElement, d: usize) -> Vec<FqVector> {
    assert!(d >= 1);
    let mut out = Vec::new();
    let prefixes = spec.q().pow((d - 1) as u32);
    for pidx in 0..prefixes {
        let prefix = FqVector::from_index(spec, d - 1, pidx);
        let rem = spec.sub(t, norm(spec, &prefix));
        if let Some(roots) = spec.sqrt(rem) {
            for r in roots {
                let mut coords = prefix.coords.clone();
                coords.push(r);
                out.push(FqVector::new(coords));
            }
        }
    }
    out
}

/// Closed form for the planar sphere size: |S_t| = q + eta(-1) * v(t) with
/// v(0) = q-1 and v(t) = -1 otherwise, eta the quadratic character.
pub fn sphere_size_formula(spec: &FieldSpec, t: FieldElement) -> u64 {
    let eta = spec.legendre(spec.minus_one()).as_i32() as i64;
    let v = if t.is_zero() { spec.q() as i64 - 1 } else { -1 };
    (spec.q() as i64 + eta * v) as u64
}

/// Whether every (equivalently, some nonzero) vector of length l in the
/// plane is a sum of two unit vectors: l != 0 and 4l - l^2 a square.
pub fn two_unit_representable(spec: &FieldSpec, l: FieldElement) -> bool {
    if l.is_zero() {
        return false;
    }
    let val = spec.sub(spec.mul(spec.from_u64(4), l), spec.mul(l, l));
    spec.legendre(val).is_square()
}

/// Size of the set of lengths l whose planar vectors are all two-unit sums:
/// (q+3)/2 when q = 3 mod 4, (q-1)/2 when q = 1 mod 4.
pub fn good_set_size(q: u64) -> u64 {
    if q % 4 == 3 {
        (q + 3) / 2
    } else {
        (q - 1) / 2
    }
}

/// Whether the zero vector of F_q^2 (q = p^n) is a sum of three unit
/// vectors: p = 1, 3, 11 mod 12 or n even (equivalently, 3 is a square).
pub fn zero_three_units_possible(p: u64, n: usize) -> bool {
    matches!(p % 12, 1 | 3 | 11) || n.is_multiple_of(2)
}

/// A target vector together with unit-vector summands adding up to it
/// exactly.
#[derive(Clone, Debug)]
pub struct UnitSumDecomposition {
    pub target: FqVector,
    pub parts: Vec<FqVector>,
}

impl UnitSumDecomposition {
    pub fn count(&self) -> usize {
        self.parts.len()
    }

    /// Re-check the defining invariants: every part has length one and the
    /// parts sum to the target, in exact field arithmetic.
    pub fn verify(&self, spec: &FieldSpec) -> bool {
        let mut acc = FqVector::zero(self.target.dim());
        for p in &self.parts {
            if norm(spec, p) != spec.one() {
                return false;
            }
            acc = acc.add(spec, p);
        }
        acc == self.target
    }
}

/// The trivial two-term representation of the zero vector.
fn zero_pair(spec: &FieldSpec, d: usize) -> Vec<FqVector> {
    let e1 = FqVector::basis(spec, d, 0);
    let m = e1.neg(spec);
    vec![e1, m]
}

/// First (a, b) in lexicographic order with a^2 + b^2 = l. Always exists:
/// every field element is a sum of two squares.
fn two_squares(spec: &FieldSpec, l: FieldElement) -> (FieldElement, FieldElement) {
    for a in spec.elements() {
        let rem = spec.sub(l, spec.mul(a, a));
        if let Some(b) = spec.sqrt_canonical(rem) {
            return (a, b);
        }
    }
    unreachable!("every element of F_q is a sum of two squares")
}

/// First nonzero (a, b) with a^2 + b^2 = l, for building isotropic
/// representatives (l = 0 with a nonzero witness requires q = 1 mod 4).
fn two_squares_nonzero(spec: &FieldSpec, l: FieldElement) -> Option<(FieldElement, FieldElement)> {
    for a in spec.elements() {
        let rem = spec.sub(l, spec.mul(a, a));
        if let Some(roots) = spec.sqrt(rem) {
            for b in roots {
                if !(a.is_zero() && b.is_zero()) {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

/// Exact sum of two unit vectors in the plane, when one exists.
pub(crate) fn exact_two_d2(spec: &FieldSpec, v: &FqVector) -> Option<Vec<FqVector>> {
    if v.is_zero() {
        return Some(zero_pair(spec, 2));
    }
    let l = norm(spec, v);
    if !two_unit_representable(spec, l) {
        return None;
    }
    // Solve for a unit u with ||v - u|| = 1: second-column solution with
    // lengths (l, 1) and column dot product l/2.
    let sols = triangle::second_column_solutions(
        spec,
        v.coords[0],
        v.coords[1],
        spec.one(),
        spec.halve(l),
    )
    .expect("first column is nonzero");
    let u = sols.into_iter().next()?;
    let rest = v.sub(spec, &u);
    Some(vec![u, rest])
}

/// Exact sum of three unit vectors in the plane, when the search finds one.
/// For q = 3 mod 4 and v nonzero this always succeeds, via a scan for an
/// intermediate length l with both 4l - l^2 and the triangle condition for
/// sides (tau, l, 1) square.
pub(crate) fn exact_three_d2(spec: &FieldSpec, v: &FqVector) -> Option<Vec<FqVector>> {
    if v.is_zero() {
        // A three-term representation of zero is an equilateral unit
        // triangle; scan unit pairs directly.
        let units = sphere(spec, spec.one(), 2);
        for u1 in &units {
            for u2 in &units {
                let u3 = u1.add(spec, u2).neg(spec);
                if norm(spec, &u3) == spec.one() {
                    return Some(vec![u1.clone(), u2.clone(), u3]);
                }
            }
        }
        return None;
    }
    let tau = norm(spec, v);
    if spec.q() % 4 == 3 {
        // tau != 0 automatically: the plane has no nonzero isotropic
        // vectors when q = 3 mod 4.
        debug_assert!(!tau.is_zero());
        let two_tau_plus2 = spec.add(spec.add(tau, tau), spec.from_u64(2));
        let tm1 = spec.sub(tau, spec.one());
        let tm1_sq = spec.mul(tm1, tm1);
        for l in spec.elements() {
            if l.is_zero() || !two_unit_representable(spec, l) {
                continue;
            }
            // -l^2 + (2 tau + 2) l - (tau - 1)^2, the side condition for a
            // triangle with sides (tau, l, 1); its quarter equals the
            // discriminant of the second-column solve below.
            let cond = spec.sub(spec.sub(spec.mul(two_tau_plus2, l), spec.mul(l, l)), tm1_sq);
            if !spec.legendre(cond).is_square() {
                continue;
            }
            let mu = spec.halve(spec.sub(spec.add(tau, spec.one()), l));
            let sols =
                triangle::second_column_solutions(spec, v.coords[0], v.coords[1], spec.one(), mu)
                    .expect("first column nonzero");
            let u = sols
                .into_iter()
                .next()
                .expect("side condition guarantees a solution");
            let w = v.sub(spec, &u);
            debug_assert_eq!(norm(spec, &w), l);
            let mut parts = vec![u];
            parts.extend(exact_two_d2(spec, &w).expect("l was chosen two-representable"));
            return Some(parts);
        }
        None
    } else {
        // q = 1 mod 4: peel one unit vector in enumeration order.
        for u in sphere(spec, spec.one(), 2) {
            let rest = v.sub(spec, &u);
            if let Some(pair) = exact_two_d2(spec, &rest) {
                let mut parts = vec![u];
                parts.extend(pair);
                return Some(parts);
            }
        }
        None
    }
}

/// Exact sum of four unit vectors in the plane. Guaranteed for every vector
/// over every odd q.
pub(crate) fn exact_four_d2(spec: &FieldSpec, v: &FqVector) -> Option<Vec<FqVector>> {
    if let Some(mut parts) = exact_two_d2(spec, v) {
        parts.extend(zero_pair(spec, 2));
        return Some(parts);
    }
    for u in sphere(spec, spec.one(), 2) {
        let rest = v.sub(spec, &u);
        if let Some(three) = exact_three_d2(spec, &rest) {
            let mut parts = vec![u];
            parts.extend(three);
            return Some(parts);
        }
    }
    None
}

/// Decompose a planar vector with the minimal count this constructive
/// search reaches (never more than the guaranteed bound).
fn decompose_d2(spec: &FieldSpec, v: &FqVector) -> Result<Vec<FqVector>> {
    if norm(spec, v) == spec.one() {
        return Ok(vec![v.clone()]);
    }
    if let Some(parts) = exact_two_d2(spec, v) {
        return Ok(parts);
    }
    if let Some(parts) = exact_three_d2(spec, v) {
        return Ok(parts);
    }
    exact_four_d2(spec, v).ok_or(Error::SearchExhausted("four-unit sum in the plane"))
}

/// Two unit vectors summing to a vector (a, b, 0) of nonzero length in
/// canonical position. Scans u with 4L - L^2 - 4Lu^2 a square, then builds
/// the isoceles triangle with sides (L, 1-u^2, 1-u^2) and lifts its apex
/// out of the plane with third coordinates +-u.
fn exact_two_d3_nonzero(
    spec: &FieldSpec,
    a: FieldElement,
    b: FieldElement,
) -> Result<Vec<FqVector>> {
    let l = spec.add(spec.mul(a, a), spec.mul(b, b));
    debug_assert!(!l.is_zero());
    let four = spec.from_u64(4);
    let base = spec.sub(spec.mul(four, l), spec.mul(l, l));
    let four_l = spec.mul(four, l);
    for u in spec.elements() {
        let d = spec.sub(base, spec.mul(four_l, spec.mul(u, u)));
        if !spec.legendre(d).is_square() {
            continue;
        }
        let l2 = spec.sub(spec.one(), spec.mul(u, u));
        let sols = triangle::second_column_solutions(spec, a, b, l2, spec.halve(l))
            .expect("first column nonzero");
        let w = sols.into_iter().next().expect("discriminant is a square");
        let (c, t) = (w.coords[0], w.coords[1]);
        let p1 = FqVector::new(vec![c, t, u]);
        let p2 = FqVector::new(vec![spec.sub(a, c), spec.sub(b, t), spec.neg(u)]);
        return Ok(vec![p1, p2]);
    }
    Err(Error::SearchExhausted("isoceles lift for a nonzero length"))
}

/// Map decomposition parts of a representative through an isometry, unless
/// the representative already equals the target.
fn map_parts(
    spec: &FieldSpec,
    rep: &FqVector,
    v: &FqVector,
    parts: Vec<FqVector>,
) -> Result<Vec<FqVector>> {
    if rep == v {
        return Ok(parts);
    }
    let w = orthogonal::witt_map(spec, rep, v)?;
    Ok(parts.iter().map(|p| w.matrix().mul_vec(spec, p)).collect())
}

fn decompose_d3(spec: &FieldSpec, v: &FqVector) -> Result<Vec<FqVector>> {
    if v.is_zero() {
        return Ok(zero_pair(spec, 3));
    }
    let tau = norm(spec, v);
    if !tau.is_zero() {
        // Canonical representative (a, b, 0) of the same length.
        let (a, b) = two_squares(spec, tau);
        let rep = FqVector::new(vec![a, b, spec.zero()]);
        let parts = exact_two_d3_nonzero(spec, a, b)?;
        return map_parts(spec, &rep, v, parts);
    }
    // Nonzero isotropic vector.
    if spec.q() % 4 == 1 {
        // (a, b, 0) with a^2 + b^2 = 0 splits as (a, b, 1) + (0, 0, -1).
        let (a, b) = two_squares_nonzero(spec, spec.zero())
            .expect("plane has nonzero isotropic vectors when q = 1 mod 4");
        let rep = FqVector::new(vec![a, b, spec.zero()]);
        let p1 = FqVector::new(vec![a, b, spec.one()]);
        let p2 = FqVector::new(vec![spec.zero(), spec.zero(), spec.minus_one()]);
        map_parts(spec, &rep, v, vec![p1, p2])
    } else {
        // q = 3 mod 4: two units cannot reach an isotropic vector; peel e3
        // off the representative (a, b, 1) with a^2 + b^2 = -1.
        let (a, b) = two_squares(spec, spec.minus_one());
        let rep = FqVector::new(vec![a, b, spec.one()]);
        let mut parts = exact_two_d3_nonzero(spec, a, b)?;
        parts.push(FqVector::basis(spec, 3, 2));
        map_parts(spec, &rep, v, parts)
    }
}

fn decompose_d4_plus(spec: &FieldSpec, v: &FqVector) -> Result<Vec<FqVector>> {
    let d = v.dim();
    if v.is_zero() {
        return Ok(zero_pair(spec, d));
    }
    let l = norm(spec, v);
    let (rep, parts) = if l.is_zero() {
        // Representative (a, b, 1, 0, ..., 0) with a^2 + b^2 = -1; halved
        // plus a +-1 fourth coordinate gives two unit parts.
        let (a, b) = two_squares(spec, spec.minus_one());
        let mut rep = FqVector::zero(d);
        rep.coords[0] = a;
        rep.coords[1] = b;
        rep.coords[2] = spec.one();
        let mut p1 = FqVector::zero(d);
        p1.coords[0] = spec.halve(a);
        p1.coords[1] = spec.halve(b);
        p1.coords[2] = spec.two_inv();
        let mut p2 = p1.clone();
        p1.coords[3] = spec.one();
        p2.coords[3] = spec.minus_one();
        (rep, vec![p1, p2])
    } else {
        // Representative (a, b, 0, ..., 0); pad the halves with (+-s, +-t)
        // where s^2 + t^2 = 1 - l/4 (zero pair allowed when l = 4).
        let (a, b) = two_squares(spec, l);
        let mut rep = FqVector::zero(d);
        rep.coords[0] = a;
        rep.coords[1] = b;
        let pad = spec.sub(spec.one(), spec.halve(spec.halve(l)));
        let (s, t) = two_squares(spec, pad);
        let mut p1 = FqVector::zero(d);
        p1.coords[0] = spec.halve(a);
        p1.coords[1] = spec.halve(b);
        p1.coords[2] = s;
        p1.coords[3] = t;
        let mut p2 = FqVector::zero(d);
        p2.coords[0] = spec.halve(a);
        p2.coords[1] = spec.halve(b);
        p2.coords[2] = spec.neg(s);
        p2.coords[3] = spec.neg(t);
        (rep, vec![p1, p2])
    };
    debug_assert!(parts.iter().all(|p| norm(spec, p) == spec.one()));
    map_parts(spec, &rep, v, parts)
}

/// Write v as an exact sum of unit vectors, with the guaranteed counts:
/// at most 4 for d = 2 (3 for nonzero v when q = 3 mod 4, 2 when q = 3),
/// at most 3 for d = 3 (2 when q = 1 mod 4), and exactly 2 for d >= 4.
pub fn decompose_unit_sum(spec: &FieldSpec, v: &FqVector) -> Result<UnitSumDecomposition> {
    let d = v.dim();
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let parts = match d {
        2 => decompose_d2(spec, v)?,
        3 => decompose_d3(spec, v)?,
        _ => decompose_d4_plus(spec, v)?,
    };
    let dec = UnitSumDecomposition {
        target: v.clone(),
        parts,
    };
    debug_assert!(dec.verify(spec));
    Ok(dec)
}

/// The guaranteed part-count bound for a vector of this dimension and field.
pub fn unit_sum_bound(spec: &FieldSpec, v: &FqVector) -> usize {
    match v.dim() {
        0 | 1 => 0,
        2 => {
            if spec.q() == 3 {
                2
            } else if spec.q() % 4 == 3 && !v.is_zero() {
                3
            } else {
                4
            }
        }
        3 => {
            if spec.q() % 4 == 1 {
                2
            } else {
                3
            }
        }
        _ => 2,
    }
}

/// Lengths l such that every planar vector of length l is a two-unit sum,
/// computed by the closed criterion (zero belongs exactly when q = 3 mod 4,
/// where the only vector of length zero is the zero vector).
pub fn good_set(spec: &FieldSpec) -> Vec<FieldElement> {
    let mut out = Vec::new();
    for l in spec.elements() {
        let good = if l.is_zero() {
            spec.q() % 4 == 3
        } else {
            two_unit_representable(spec, l)
        };
        if good {
            out.push(l);
        }
    }
    out
}
