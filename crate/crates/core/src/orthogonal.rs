//! The orthogonal group over F_q and exact-count decompositions of matrices
//! into sums of orthogonal matrices.
//!
//! Every 2x2 matrix is a sum of exactly eight orthogonal matrices, and of
//! exactly six when q = 3 mod 4. For d >= 3 the count is 8 * 6^(d-2) when
//! q = 1 mod 4 and 9 * 6^(d-2) when q = 3 mod 4, by a recursion on the
//! dimension. The constructions here realize those counts exactly and
//! deterministically; where a branch lands short, it is padded with
//! (I, -I) pairs, which the recursion's parity (even counts at every level)
//! always permits.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::FqMatrix;
use crate::vector::{self, FqVector};

/// A matrix satisfying A^T A = I exactly, checked at construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OrthogonalMatrix(FqMatrix);

impl OrthogonalMatrix {
    pub fn new(spec: &FieldSpec, m: FqMatrix) -> Result<Self> {
        if !is_orthogonal(spec, &m) {
            return Err(Error::LengthMismatch);
        }
        Ok(OrthogonalMatrix(m))
    }

    /// Wrap a matrix known orthogonal by construction.
    pub(crate) fn trusted(spec: &FieldSpec, m: FqMatrix) -> Self {
        debug_assert!(is_orthogonal(spec, &m));
        OrthogonalMatrix(m)
    }

    #[inline]
    pub fn matrix(&self) -> &FqMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> FqMatrix {
        self.0
    }
}

/// Exact test of A^T A = I.
pub fn is_orthogonal(spec: &FieldSpec, a: &FqMatrix) -> bool {
    let d = a.dim();
    let prod = a.transpose().mul(spec, a);
    prod == FqMatrix::identity(spec, d)
}

/// Rotation-form matrix [[a, -b], [b, a]] for a unit (a, b).
pub fn rotation_from_unit(spec: &FieldSpec, a: FieldElement, b: FieldElement) -> FqMatrix {
    FqMatrix::from_rows(vec![vec![a, spec.neg(b)], vec![b, a]])
}

/// Reflection-form matrix [[a, b], [b, -a]] for a unit (a, b).
pub fn reflection_from_unit(spec: &FieldSpec, a: FieldElement, b: FieldElement) -> FqMatrix {
    FqMatrix::from_rows(vec![vec![a, b], vec![b, spec.neg(a)]])
}

/// The full orthogonal group O(2; q): rotations then reflections, each over
/// the unit circle in canonical order. |O(2;q)| = 2(q -+ 1) by q mod 4.
pub fn enumerate_o2(spec: &FieldSpec) -> Vec<OrthogonalMatrix> {
    let circle = vector::sphere(spec, spec.one(), 2);
    let mut out = Vec::with_capacity(circle.len() * 2);
    for v in &circle {
        out.push(OrthogonalMatrix::trusted(
            spec,
            rotation_from_unit(spec, v.coords[0], v.coords[1]),
        ));
    }
    for v in &circle {
        out.push(OrthogonalMatrix::trusted(
            spec,
            reflection_from_unit(spec, v.coords[0], v.coords[1]),
        ));
    }
    out
}

/// Special orthogonal group SO(2; q): the rotation forms alone.
pub fn enumerate_so2(spec: &FieldSpec) -> Vec<OrthogonalMatrix> {
    vector::sphere(spec, spec.one(), 2)
        .iter()
        .map(|v| {
            OrthogonalMatrix::trusted(spec, rotation_from_unit(spec, v.coords[0], v.coords[1]))
        })
        .collect()
}

/// Reflection in the hyperplane orthogonal to w: R = I - 2 w w^T / ||w||.
/// Requires ||w|| != 0; R w = -w and R fixes the orthogonal complement.
pub fn reflection(spec: &FieldSpec, w: &FqVector) -> Result<OrthogonalMatrix> {
    let nw = vector::norm(spec, w);
    if nw.is_zero() {
        return Err(Error::IsotropicMirror);
    }
    let d = w.dim();
    let coef = spec.div(spec.from_u64(2), nw).expect("norm nonzero");
    let mut m = FqMatrix::identity(spec, d);
    for i in 0..d {
        for j in 0..d {
            let outer = spec.mul(coef, spec.mul(w.coords[i], w.coords[j]));
            m.set(i, j, spec.sub(m.get(i, j), outer));
        }
    }
    Ok(OrthogonalMatrix::trusted(spec, m))
}

/// An orthogonal matrix taking u to v, given ||u|| = ||v|| and both nonzero.
///
/// Construction: identity when u = v; the reflection in u - v when that
/// difference is non-isotropic; otherwise the reflection in v composed with
/// the one in u + v. Both differences can only be isotropic when the common
/// length is zero, in which case a two-step route through an intermediate
/// isotropic vector is found by scan. Any valid witness is acceptable.
pub fn witt_map(spec: &FieldSpec, u: &FqVector, v: &FqVector) -> Result<OrthogonalMatrix> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::ZeroVector);
    }
    if u.dim() != v.dim() {
        return Err(Error::LengthMismatch);
    }
    let n = vector::norm(spec, u);
    if n != vector::norm(spec, v) {
        return Err(Error::LengthMismatch);
    }
    let d = u.dim();
    if u == v {
        return Ok(OrthogonalMatrix::trusted(spec, FqMatrix::identity(spec, d)));
    }
    let diff = u.sub(spec, v);
    if !vector::norm(spec, &diff).is_zero() {
        let r = reflection(spec, &diff)?;
        debug_assert_eq!(&r.matrix().mul_vec(spec, u), v);
        return Ok(r);
    }
    let sum = u.add(spec, v);
    if !vector::norm(spec, &sum).is_zero() {
        // ||u-v|| + ||u+v|| = 4||u||, so reaching this branch with the sum
        // non-isotropic forces ||v|| != 0 and the reflection in v is legal.
        // Reflect u to -v, then -v to v.
        let r1 = reflection(spec, &sum)?;
        let r2 = reflection(spec, v)?;
        let w = r2.matrix().mul(spec, r1.matrix());
        debug_assert_eq!(&w.mul_vec(spec, u), v);
        return Ok(OrthogonalMatrix::trusted(spec, w));
    }
    // Both u - v and u + v isotropic: only possible for isotropic u, v with
    // u . v = 0. Route through an intermediate z of the same (zero) length
    // with non-isotropic legs.
    for zi in 1..FqVector::count(spec, d) {
        let z = FqVector::from_index(spec, d, zi);
        if vector::norm(spec, &z) != n {
            continue;
        }
        let leg1 = u.sub(spec, &z);
        let leg2 = z.sub(spec, v);
        if vector::norm(spec, &leg1).is_zero() || vector::norm(spec, &leg2).is_zero() {
            continue;
        }
        let r1 = reflection(spec, &leg1)?;
        let r2 = reflection(spec, &leg2)?;
        let w = r2.matrix().mul(spec, r1.matrix());
        debug_assert_eq!(&w.mul_vec(spec, u), v);
        return Ok(OrthogonalMatrix::trusted(spec, w));
    }
    Err(Error::SearchExhausted(
        "two-step isometry between isotropic vectors",
    ))
}

/// A target matrix with an ordered list of orthogonal summands and the
/// exact count the construction guarantees.
#[derive(Clone, Debug)]
pub struct OrthSumDecomposition {
    pub target: FqMatrix,
    pub parts: Vec<OrthogonalMatrix>,
    pub declared_count: usize,
}

impl OrthSumDecomposition {
    /// Re-check everything: each part orthogonal, the sum exact, the count
    /// as declared.
    pub fn verify(&self, spec: &FieldSpec) -> bool {
        if self.parts.len() != self.declared_count {
            return false;
        }
        let mut acc = FqMatrix::zero(self.target.dim());
        for p in &self.parts {
            if !is_orthogonal(spec, p.matrix()) {
                return false;
            }
            acc = acc.add(spec, p.matrix());
        }
        acc == self.target
    }
}

/// The exact summand count guaranteed for a d-by-d matrix over F_q.
pub fn exact_count(q: u64, d: usize) -> usize {
    let base: usize = if q % 4 == 1 { 8 } else { 9 };
    match d {
        2 => {
            if q % 4 == 1 {
                8
            } else {
                6
            }
        }
        _ => base * 6usize.pow((d - 2) as u32),
    }
}

fn lift_rotations(spec: &FieldSpec, units: &[FqVector]) -> Vec<OrthogonalMatrix> {
    units
        .iter()
        .map(|u| {
            OrthogonalMatrix::trusted(spec, rotation_from_unit(spec, u.coords[0], u.coords[1]))
        })
        .collect()
}

fn lift_reflections(spec: &FieldSpec, units: &[FqVector]) -> Vec<OrthogonalMatrix> {
    units
        .iter()
        .map(|u| {
            OrthogonalMatrix::trusted(spec, reflection_from_unit(spec, u.coords[0], u.coords[1]))
        })
        .collect()
}

/// Split a 2x2 matrix into a rotation-form and a reflection-form part and
/// decompose each defining column into unit vectors; every unit lifts to an
/// orthogonal matrix. Exactly 8 parts when q = 1 mod 4, exactly 6 when
/// q = 3 mod 4.
pub fn decompose_2x2(spec: &FieldSpec, a: &FqMatrix) -> Result<OrthSumDecomposition> {
    assert_eq!(a.dim(), 2);
    // A = [[x, -y],[y, x]] + [[w, z],[z, -w]] with the four unknowns read
    // off the entries.
    let x = spec.halve(spec.add(a.get(0, 0), a.get(1, 1)));
    let w = spec.halve(spec.sub(a.get(0, 0), a.get(1, 1)));
    let y = spec.halve(spec.sub(a.get(1, 0), a.get(0, 1)));
    let z = spec.halve(spec.add(a.get(1, 0), a.get(0, 1)));
    let rot_col = FqVector::new(vec![x, y]);
    let refl_col = FqVector::new(vec![w, z]);

    let mut parts: Vec<OrthogonalMatrix>;
    if spec.q() % 4 == 1 {
        let rot_units = vector::exact_four_d2(spec, &rot_col).ok_or(Error::SearchExhausted(
            "four-unit sum for the rotation column",
        ))?;
        let refl_units = vector::exact_four_d2(spec, &refl_col).ok_or(Error::SearchExhausted(
            "four-unit sum for the reflection column",
        ))?;
        parts = lift_rotations(spec, &rot_units);
        parts.extend(lift_reflections(spec, &refl_units));
    } else if rot_col.is_zero() {
        // Rotation part is zero: I + (-I), and four reflections.
        let id = FqMatrix::identity(spec, 2);
        parts = vec![
            OrthogonalMatrix::trusted(spec, id.clone()),
            OrthogonalMatrix::trusted(spec, id.neg(spec)),
        ];
        let refl_units = vector::exact_four_d2(spec, &refl_col).ok_or(Error::SearchExhausted(
            "four-unit sum for the reflection column",
        ))?;
        parts.extend(lift_reflections(spec, &refl_units));
    } else if refl_col.is_zero() {
        // Mirror case: four rotations plus a reflection pair.
        let rot_units = vector::exact_four_d2(spec, &rot_col).ok_or(Error::SearchExhausted(
            "four-unit sum for the rotation column",
        ))?;
        parts = lift_rotations(spec, &rot_units);
        let p = reflection_from_unit(spec, spec.one(), spec.zero());
        parts.push(OrthogonalMatrix::trusted(spec, p.clone()));
        parts.push(OrthogonalMatrix::trusted(spec, p.neg(spec)));
    } else {
        // Both columns nonzero: three units each.
        let rot_units = vector::exact_three_d2(spec, &rot_col).ok_or(Error::SearchExhausted(
            "three-unit sum for the rotation column",
        ))?;
        let refl_units = vector::exact_three_d2(spec, &refl_col).ok_or(Error::SearchExhausted(
            "three-unit sum for the reflection column",
        ))?;
        parts = lift_rotations(spec, &rot_units);
        parts.extend(lift_reflections(spec, &refl_units));
    }

    let dec = OrthSumDecomposition {
        target: a.clone(),
        declared_count: exact_count(spec.q(), 2),
        parts,
    };
    debug_assert!(dec.verify(spec));
    Ok(dec)
}

/// Split a matrix (d >= 3) into matrices whose first columns are unit
/// vectors: the first part keeps all remaining columns, the others are zero
/// outside their first column. Two parts whenever the first column is a
/// two-unit sum, three only for d = 3, q = 3 mod 4 with an isotropic
/// nonzero first column.
pub fn first_col_unit_split(spec: &FieldSpec, a: &FqMatrix) -> Result<Vec<FqMatrix>> {
    let d = a.dim();
    if d < 3 {
        return Err(Error::DimensionTooSmall(d));
    }
    let col = a.col(0);
    let dec = vector::decompose_unit_sum(spec, &col)?;
    let mut out = Vec::with_capacity(dec.parts.len());
    for (k, unit) in dec.parts.iter().enumerate() {
        let mut m = if k == 0 { a.clone() } else { FqMatrix::zero(d) };
        m.set_col(0, unit);
        out.push(m);
    }
    Ok(out)
}

/// Embed a (d-1)-dimensional orthogonal matrix as [[s, 0], [0, B]] with
/// s = +-1 alternating along the list, so the corners cancel in the sum.
fn embed_alternating(spec: &FieldSpec, parts: &[OrthogonalMatrix]) -> Vec<FqMatrix> {
    assert!(
        parts.len().is_multiple_of(2),
        "recursion requires an even count"
    );
    let d = parts[0].matrix().dim() + 1;
    parts
        .iter()
        .enumerate()
        .map(|(k, b)| {
            let mut m = FqMatrix::zero(d);
            let corner = if k % 2 == 0 {
                spec.one()
            } else {
                spec.minus_one()
            };
            m.set(0, 0, corner);
            for i in 0..d - 1 {
                for j in 0..d - 1 {
                    m.set(i + 1, j + 1, b.matrix().get(i, j));
                }
            }
            m
        })
        .collect()
}

/// Permutation matrix swapping coordinates 0 and 1.
fn swap01(spec: &FieldSpec, d: usize) -> FqMatrix {
    let mut m = FqMatrix::identity(spec, d);
    m.set(0, 0, spec.zero());
    m.set(1, 1, spec.zero());
    m.set(0, 1, spec.one());
    m.set(1, 0, spec.one());
    m
}

/// Decompose a matrix with unit first column, already rotated so that the
/// first column is e1, into exactly 3r orthogonal parts, where r is the
/// exact count one dimension down.
fn decompose_unit_first_col(spec: &FieldSpec, n: &FqMatrix) -> Result<Vec<FqMatrix>> {
    let d = n.dim();
    debug_assert_eq!(n.col(0), FqVector::basis(spec, d, 0));

    // Lower-right block, recursed.
    let mut block = FqMatrix::zero(d - 1);
    for i in 0..d - 1 {
        for j in 0..d - 1 {
            block.set(i, j, n.get(i + 1, j + 1));
        }
    }
    let e_parts = embed_alternating(spec, &decompose_matrix(spec, &block)?.parts);

    // First row beyond the corner, moved into a block one row down by the
    // swap permutation.
    let mut row_block = FqMatrix::zero(d - 1);
    for j in 0..d - 1 {
        row_block.set(0, j, n.get(0, j + 1));
    }
    let p12 = swap01(spec, d);
    let g_parts: Vec<FqMatrix> =
        embed_alternating(spec, &decompose_matrix(spec, &row_block)?.parts)
            .into_iter()
            .map(|m| p12.mul(spec, &m))
            .collect();

    // The corner itself, conjugated into the block by the same swap.
    let mut corner_block = FqMatrix::zero(d - 1);
    corner_block.set(0, 0, spec.one());
    let h_parts: Vec<FqMatrix> =
        embed_alternating(spec, &decompose_matrix(spec, &corner_block)?.parts)
            .into_iter()
            .map(|m| p12.mul(spec, &m).mul(spec, &p12))
            .collect();

    let mut parts = e_parts;
    parts.extend(g_parts);
    parts.extend(h_parts);
    Ok(parts)
}

/// Cap on materialized summand lists; the counts grow as 6^d.
pub const MAX_PARTS: usize = 1_000_000;

/// Exact-count decomposition for d >= 3: split along the first column,
/// rotate each part's unit column onto e1, recurse, rotate back, and pad
/// with (I, -I) pairs to the exact theorem count.
pub fn decompose_dxd(spec: &FieldSpec, a: &FqMatrix) -> Result<OrthSumDecomposition> {
    let d = a.dim();
    assert!(d >= 3);
    let target_count = exact_count(spec.q(), d);
    if target_count > MAX_PARTS {
        return Err(Error::AmbientTooLarge {
            size: target_count as u64,
            limit: MAX_PARTS as u64,
        });
    }
    let e1 = FqVector::basis(spec, d, 0);

    let mut parts: Vec<OrthogonalMatrix> = Vec::with_capacity(target_count);
    for piece in first_col_unit_split(spec, a)? {
        let u = piece.col(0);
        let w = witt_map(spec, &u, &e1)?;
        let n = w.matrix().mul(spec, &piece);
        debug_assert_eq!(n.col(0), e1);
        let wt = w.matrix().transpose();
        for m in decompose_unit_first_col(spec, &n)? {
            parts.push(OrthogonalMatrix::trusted(spec, wt.mul(spec, &m)));
        }
    }

    assert!(parts.len() <= target_count && (target_count - parts.len()).is_multiple_of(2));
    let id = FqMatrix::identity(spec, d);
    while parts.len() < target_count {
        parts.push(OrthogonalMatrix::trusted(spec, id.clone()));
        parts.push(OrthogonalMatrix::trusted(spec, id.neg(spec)));
    }

    let dec = OrthSumDecomposition {
        target: a.clone(),
        declared_count: target_count,
        parts,
    };
    debug_assert!(dec.verify(spec));
    Ok(dec)
}

/// Dispatch on dimension: exact eight/six for d = 2, the recursion above
/// for d >= 3.
pub fn decompose_matrix(spec: &FieldSpec, a: &FqMatrix) -> Result<OrthSumDecomposition> {
    match a.dim() {
        0 | 1 => Err(Error::DimensionTooSmall(a.dim())),
        2 => decompose_2x2(spec, a),
        _ => decompose_dxd(spec, a),
    }
}
