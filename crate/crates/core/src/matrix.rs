//! Dense square matrices over a field context.

use crate::field::{FieldElement, FieldSpec};
use crate::vector::FqVector;

/// A d-by-d matrix with entries in one field, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FqMatrix {
    d: usize,
    entries: Vec<FieldElement>,
}

impl FqMatrix {
    pub fn new(d: usize, entries: Vec<FieldElement>) -> Self {
        assert_eq!(entries.len(), d * d);
        FqMatrix { d, entries }
    }

    pub fn zero(d: usize) -> Self {
        FqMatrix {
            d,
            entries: vec![FieldElement::default(); d * d],
        }
    }

    pub fn identity(spec: &FieldSpec, d: usize) -> Self {
        let mut m = Self::zero(d);
        for i in 0..d {
            m.set(i, i, spec.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let d = rows.len();
        let mut entries = Vec::with_capacity(d * d);
        for r in rows {
            assert_eq!(r.len(), d);
            entries.extend(r);
        }
        FqMatrix { d, entries }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.entries[i * self.d + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.entries[i * self.d + j] = v;
    }

    pub fn col(&self, j: usize) -> FqVector {
        FqVector::new((0..self.d).map(|i| self.get(i, j)).collect())
    }

    pub fn set_col(&mut self, j: usize, v: &FqVector) {
        assert_eq!(v.dim(), self.d);
        for i in 0..self.d {
            self.set(i, j, v.coords[i]);
        }
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut t = FqMatrix::zero(self.d);
        for i in 0..self.d {
            for j in 0..self.d {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, spec: &FieldSpec, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.d, other.d);
        FqMatrix {
            d: self.d,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| spec.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, spec: &FieldSpec, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.d, other.d);
        FqMatrix {
            d: self.d,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| spec.sub(a, b))
                .collect(),
        }
    }

    pub fn neg(&self, spec: &FieldSpec) -> FqMatrix {
        FqMatrix {
            d: self.d,
            entries: self.entries.iter().map(|&a| spec.neg(a)).collect(),
        }
    }

    pub fn mul(&self, spec: &FieldSpec, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.d, other.d);
        let d = self.d;
        let mut out = FqMatrix::zero(d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = spec.zero();
                for k in 0..d {
                    acc = spec.add(acc, spec.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, spec: &FieldSpec, v: &FqVector) -> FqVector {
        assert_eq!(v.dim(), self.d);
        let mut out = Vec::with_capacity(self.d);
        for i in 0..self.d {
            let mut acc = spec.zero();
            for k in 0..self.d {
                acc = spec.add(acc, spec.mul(self.get(i, k), v.coords[k]));
            }
            out.push(acc);
        }
        FqVector::new(out)
    }

    pub fn trace(&self, spec: &FieldSpec) -> FieldElement {
        let mut acc = spec.zero();
        for i in 0..self.d {
            acc = spec.add(acc, self.get(i, i));
        }
        acc
    }

    /// Determinant of a 2x2 matrix.
    pub fn det2(&self, spec: &FieldSpec) -> FieldElement {
        assert_eq!(self.d, 2);
        spec.sub(
            spec.mul(self.get(0, 0), self.get(1, 1)),
            spec.mul(self.get(0, 1), self.get(1, 0)),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Canonical index in row-major lexicographic order (entry (0,0) most
    /// significant). Inverse of [`FqMatrix::from_index`].
    pub fn index(&self, spec: &FieldSpec) -> u64 {
        let mut idx = 0u64;
        for &e in &self.entries {
            idx = idx * spec.q() + spec.index(e);
        }
        idx
    }

    pub fn from_index(spec: &FieldSpec, d: usize, mut idx: u64) -> FqMatrix {
        let mut entries = vec![FieldElement::default(); d * d];
        for slot in entries.iter_mut().rev() {
            *slot = spec.element(idx % spec.q());
            idx /= spec.q();
        }
        FqMatrix { d, entries }
    }

    /// Number of d-by-d matrices over the field.
    pub fn count(spec: &FieldSpec, d: usize) -> u64 {
        spec.q().pow((d * d) as u32)
    }
}
