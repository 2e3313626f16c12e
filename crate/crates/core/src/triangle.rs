//! Origin-pinned triangles in the plane: invariants, second-column solution
//! formulas, realizability, congruence, and the census of congruence
//! classes.
//!
//! A 2x2 matrix t = [[a, b], [c, d]] encodes the triangle with vertices 0,
//! (a, c), (b, d). Its invariant triple is (L1, L2, mu) = (a^2+c^2, b^2+d^2,
//! ab+cd): the two column lengths and the column dot product. Two invertible
//! matrices determine congruent triangles exactly when their triples agree,
//! and a triple is realized by an invertible matrix exactly when
//! L1*L2 - mu^2 is a nonzero square.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::FqMatrix;
use crate::vector::FqVector;

/// The congruence invariant of an origin-pinned triangle.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TriangleInvariant {
    pub l1: FieldElement,
    pub l2: FieldElement,
    pub mu: FieldElement,
}

/// Column lengths and dot product of a 2x2 matrix.
pub fn invariants(spec: &FieldSpec, t: &FqMatrix) -> TriangleInvariant {
    assert_eq!(t.dim(), 2);
    let (a, b, c, d) = (t.get(0, 0), t.get(0, 1), t.get(1, 0), t.get(1, 1));
    TriangleInvariant {
        l1: spec.add(spec.mul(a, a), spec.mul(c, c)),
        l2: spec.add(spec.mul(b, b), spec.mul(d, d)),
        mu: spec.add(spec.mul(a, b), spec.mul(c, d)),
    }
}

/// All second columns (b, d) with b^2 + d^2 = l2 and ab + cd = mu, for a
/// fixed nonzero first column (a, c).
///
/// For L1 = a^2 + c^2 != 0 the solutions are
/// (mu/L1)(a, c) +- (sqrt(L1*l2 - mu^2)/L1)(-c, a): two, one, or none as the
/// discriminant is a nonzero square, zero, or a nonresidue. For L1 = 0 the
/// constraint is linear: one solution when mu != 0, q solutions when
/// mu = l2 = 0, none otherwise. Solutions come out in canonical order.
pub fn second_column_solutions(
    spec: &FieldSpec,
    a: FieldElement,
    c: FieldElement,
    l2: FieldElement,
    mu: FieldElement,
) -> Result<Vec<FqVector>> {
    if a.is_zero() && c.is_zero() {
        return Err(Error::ZeroFirstColumn);
    }
    let l1 = spec.add(spec.mul(a, a), spec.mul(c, c));
    let mut sols: Vec<FqVector> = Vec::new();
    if !l1.is_zero() {
        let disc = spec.sub(spec.mul(l1, l2), spec.mul(mu, mu));
        if let Some(roots) = spec.sqrt(disc) {
            let base_coef = spec.div(mu, l1).expect("l1 nonzero");
            let base = (spec.mul(base_coef, a), spec.mul(base_coef, c));
            for r in roots {
                let k = spec.div(r, l1).expect("l1 nonzero");
                let b = spec.add(base.0, spec.mul(k, spec.neg(c)));
                let d = spec.add(base.1, spec.mul(k, a));
                sols.push(FqVector::new(vec![b, d]));
            }
            // sqrt(0) yields a single root; +-r otherwise.
        }
    } else if !mu.is_zero() {
        // a and c are both nonzero on an isotropic line. The dot-product
        // constraint pins one coordinate of the line parametrization and
        // the length constraint degenerates to a linear equation.
        let t = spec
            .div(
                spec.sub(spec.mul(l2, spec.mul(c, c)), spec.mul(mu, mu)),
                spec.mul(spec.from_u64(2), spec.mul(a, spec.mul(c, mu))),
            )
            .expect("a, c, mu nonzero");
        let b = spec.mul(t, spec.neg(c));
        let d = spec.add(spec.mul(t, a), spec.div(mu, c).expect("c nonzero"));
        sols.push(FqVector::new(vec![b, d]));
    } else if l2.is_zero() {
        // mu = 0 and l2 = 0: the whole isotropic line through (a, c).
        for t in spec.elements() {
            sols.push(FqVector::new(vec![spec.mul(t, a), spec.mul(t, c)]));
        }
    }
    sols.sort_by_key(|v| v.index(spec));
    Ok(sols)
}

/// Whether the triple is realized by an invertible matrix: L1*L2 - mu^2 a
/// nonzero square.
pub fn is_realizable(spec: &FieldSpec, inv: &TriangleInvariant) -> bool {
    let disc = spec.sub(spec.mul(inv.l1, inv.l2), spec.mul(inv.mu, inv.mu));
    spec.legendre(disc) == crate::field::LegendreValue::PlusOne
}

/// Congruence of the triangles encoded by two invertible matrices.
pub fn congruent(spec: &FieldSpec, t: &FqMatrix, t2: &FqMatrix) -> Result<bool> {
    if t.det2(spec).is_zero() || t2.det2(spec).is_zero() {
        return Err(Error::DegenerateTriangle);
    }
    Ok(invariants(spec, t) == invariants(spec, t2))
}

/// Length of the third side: L3 = L1 + L2 - 2 mu.
pub fn third_side(spec: &FieldSpec, inv: &TriangleInvariant) -> FieldElement {
    spec.sub(spec.add(inv.l1, inv.l2), spec.add(inv.mu, inv.mu))
}

/// Recover the dot product from the three side lengths: mu = (L1+L2-L3)/2.
pub fn mu_from_sides(
    spec: &FieldSpec,
    l1: FieldElement,
    l2: FieldElement,
    l3: FieldElement,
) -> FieldElement {
    spec.halve(spec.sub(spec.add(l1, l2), l3))
}

/// Whether a nondegenerate triangle with the given side lengths exists:
/// 2*sigma2 - P2 must be a nonzero square, where sigma2 and P2 are the
/// elementary symmetric and power sums of the sides.
pub fn triangle_exists_with_sides(
    spec: &FieldSpec,
    l1: FieldElement,
    l2: FieldElement,
    l3: FieldElement,
) -> bool {
    let sigma2 = spec.add(
        spec.add(spec.mul(l1, l2), spec.mul(l1, l3)),
        spec.mul(l2, l3),
    );
    let p2 = spec.add(
        spec.add(spec.mul(l1, l1), spec.mul(l2, l2)),
        spec.mul(l3, l3),
    );
    let val = spec.sub(spec.add(sigma2, sigma2), p2);
    spec.legendre(val) == crate::field::LegendreValue::PlusOne
}

/// Number of congruence classes of nondegenerate triangles in the plane:
/// q(q^2-1)/2 when q = 1 mod 4, q(q-1)^2/2 when q = 3 mod 4.
pub fn count_classes(q: u64) -> u64 {
    if q % 4 == 1 {
        q * (q * q - 1) / 2
    } else {
        q * (q - 1) * (q - 1) / 2
    }
}

/// All realizable invariant triples, lexicographic in (L1, L2, mu) under the
/// canonical element order.
pub fn enumerate_classes(spec: &FieldSpec) -> Vec<TriangleInvariant> {
    let mut out = Vec::new();
    for l1 in spec.elements() {
        for l2 in spec.elements() {
            for mu in spec.elements() {
                let inv = TriangleInvariant { l1, l2, mu };
                if is_realizable(spec, &inv) {
                    out.push(inv);
                }
            }
        }
    }
    out
}

/// An invertible matrix realizing a triple: the first column is the first
/// vector of length L1 (nonzero), the second is the first solution of the
/// column constraints.
pub fn representative(spec: &FieldSpec, inv: &TriangleInvariant) -> Result<FqMatrix> {
    if !is_realizable(spec, inv) {
        return Err(Error::UnrealizableInvariant);
    }
    let first = crate::vector::sphere(spec, inv.l1, 2)
        .into_iter()
        .find(|v| !v.is_zero())
        .ok_or(Error::UnrealizableInvariant)?;
    let sols = second_column_solutions(spec, first.coords[0], first.coords[1], inv.l2, inv.mu)?;
    let second = sols
        .into_iter()
        .next()
        .ok_or(Error::UnrealizableInvariant)?;
    let mut m = FqMatrix::zero(2);
    m.set_col(0, &first);
    m.set_col(1, &second);
    debug_assert_eq!(&invariants(spec, &m), inv);
    debug_assert!(!m.det2(spec).is_zero());
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::norm;

    fn f(p: u64, n: usize) -> FieldSpec {
        FieldSpec::make(p, n).unwrap()
    }

    fn m2(spec: &FieldSpec, rows: [[u64; 2]; 2]) -> FqMatrix {
        FqMatrix::from_rows(vec![
            rows[0].iter().map(|&v| spec.from_u64(v)).collect(),
            rows[1].iter().map(|&v| spec.from_u64(v)).collect(),
        ])
    }

    #[test]
    fn invariants_known_values() {
        let f5 = f(5, 1);
        let id = FqMatrix::identity(&f5, 2);
        let inv = invariants(&f5, &id);
        assert_eq!((inv.l1, inv.l2, inv.mu), (f5.one(), f5.one(), f5.zero()));

        let t = m2(&f5, [[1, 0], [2, 0]]);
        let inv = invariants(&f5, &t);
        assert_eq!((inv.l1, inv.l2, inv.mu), (f5.zero(), f5.zero(), f5.zero()));

        let f7 = f(7, 1);
        let t = m2(&f7, [[1, 1], [2, 3]]);
        let inv = invariants(&f7, &t);
        assert_eq!(
            (inv.l1, inv.l2, inv.mu),
            (f7.from_u64(5), f7.from_u64(3), f7.zero())
        );
    }

    #[test]
    fn second_column_known_values() {
        let f7 = f(7, 1);
        let sols = second_column_solutions(&f7, f7.one(), f7.zero(), f7.one(), f7.zero()).unwrap();
        assert_eq!(
            sols,
            vec![
                FqVector::new(vec![f7.zero(), f7.one()]),
                FqVector::new(vec![f7.zero(), f7.from_u64(6)]),
            ]
        );

        // Discriminant zero forces a single solution (1, 0).
        let sols = second_column_solutions(&f7, f7.one(), f7.zero(), f7.one(), f7.one()).unwrap();
        assert_eq!(sols, vec![FqVector::new(vec![f7.one(), f7.zero()])]);

        // Isotropic first column with mu = l2 = 0: one solution per scalar.
        let f5 = f(5, 1);
        let sols =
            second_column_solutions(&f5, f5.one(), f5.from_u64(2), f5.zero(), f5.zero()).unwrap();
        assert_eq!(sols.len(), 5);

        assert_eq!(
            second_column_solutions(&f5, f5.zero(), f5.zero(), f5.one(), f5.zero()).unwrap_err(),
            Error::ZeroFirstColumn
        );
    }

    #[test]
    fn second_column_matches_exhaustive_scan() {
        for (p, n) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            let spec = f(p, n);
            for a in spec.elements() {
                for c in spec.elements() {
                    if a.is_zero() && c.is_zero() {
                        continue;
                    }
                    // Bucket all (b, d) by their (length, dot) pair.
                    let mut buckets: std::collections::BTreeMap<(u64, u64), Vec<u64>> =
                        std::collections::BTreeMap::new();
                    for b in spec.elements() {
                        for d in spec.elements() {
                            let l2 = spec.add(spec.mul(b, b), spec.mul(d, d));
                            let mu = spec.add(spec.mul(a, b), spec.mul(c, d));
                            buckets
                                .entry((spec.index(l2), spec.index(mu)))
                                .or_default()
                                .push(FqVector::new(vec![b, d]).index(&spec));
                        }
                    }
                    for l2 in spec.elements() {
                        for mu in spec.elements() {
                            let got: Vec<u64> = second_column_solutions(&spec, a, c, l2, mu)
                                .unwrap()
                                .iter()
                                .map(|v| v.index(&spec))
                                .collect();
                            let mut want = buckets
                                .get(&(spec.index(l2), spec.index(mu)))
                                .cloned()
                                .unwrap_or_default();
                            want.sort_unstable();
                            assert_eq!(got, want, "q={} a={:?} c={:?}", spec.q(), a, c);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn solutions_linearly_independent_iff_disc_nonzero() {
        let f7 = f(7, 1);
        for a in f7.elements() {
            for c in f7.elements() {
                let l1 = f7.add(f7.mul(a, a), f7.mul(c, c));
                if l1.is_zero() {
                    continue;
                }
                for l2 in f7.elements() {
                    for mu in f7.elements() {
                        let disc = f7.sub(f7.mul(l1, l2), f7.mul(mu, mu));
                        for sol in second_column_solutions(&f7, a, c, l2, mu).unwrap() {
                            // (a, c) and (b, d) dependent iff ad - cb = 0.
                            let det = f7.sub(f7.mul(a, sol.coords[1]), f7.mul(c, sol.coords[0]));
                            assert_eq!(det.is_zero(), disc.is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn realizability_known_values() {
        let f5 = f(5, 1);
        let yes = TriangleInvariant {
            l1: f5.one(),
            l2: f5.one(),
            mu: f5.zero(),
        };
        assert!(is_realizable(&f5, &yes));
        let degenerate = TriangleInvariant {
            l1: f5.one(),
            l2: f5.one(),
            mu: f5.one(),
        };
        assert!(!is_realizable(&f5, &degenerate));
        let nonres = TriangleInvariant {
            l1: f5.one(),
            l2: f5.from_u64(2),
            mu: f5.zero(),
        };
        assert!(!is_realizable(&f5, &nonres));
    }

    #[test]
    fn congruent_known_values() {
        let f5 = f(5, 1);
        let id = FqMatrix::identity(&f5, 2);
        let swap = m2(&f5, [[0, 1], [1, 0]]);
        assert!(congruent(&f5, &id, &swap).unwrap());
        let scaled = m2(&f5, [[2, 0], [0, 1]]);
        assert!(!congruent(&f5, &id, &scaled).unwrap());
        let singular = m2(&f5, [[1, 2], [2, 4]]);
        assert_eq!(
            congruent(&f5, &id, &singular).unwrap_err(),
            Error::DegenerateTriangle
        );
    }

    #[test]
    fn congruence_is_isometry_invariant() {
        let f5 = f(5, 1);
        let t = m2(&f5, [[1, 2], [3, 2]]);
        assert!(!t.det2(&f5).is_zero());
        for g in crate::orthogonal::enumerate_o2(&f5) {
            let gt = g.matrix().mul(&f5, &t);
            assert!(congruent(&f5, &t, &gt).unwrap());
        }
    }

    #[test]
    fn sides_round_trip() {
        let f7 = f(7, 1);
        let inv = TriangleInvariant {
            l1: f7.one(),
            l2: f7.one(),
            mu: f7.zero(),
        };
        assert_eq!(third_side(&f7, &inv), f7.from_u64(2));
        assert_eq!(
            mu_from_sides(&f7, f7.one(), f7.one(), f7.one()),
            f7.inv(f7.from_u64(2)).unwrap()
        );
        for l1 in f7.elements() {
            for l2 in f7.elements() {
                for mu in f7.elements() {
                    let inv = TriangleInvariant { l1, l2, mu };
                    assert_eq!(mu_from_sides(&f7, l1, l2, third_side(&f7, &inv)), mu);
                }
            }
        }
    }

    #[test]
    fn equilateral_side_one_exists_iff_three_is_square() {
        for (p, n, expect) in [(11, 1, true), (5, 1, false), (7, 1, false), (13, 1, true)] {
            let spec = f(p, n);
            let one = spec.one();
            assert_eq!(
                triangle_exists_with_sides(&spec, one, one, one),
                expect,
                "q={}",
                spec.q()
            );
        }
    }

    #[test]
    fn census_known_values() {
        assert_eq!(count_classes(5), 60);
        assert_eq!(count_classes(3), 6);
        assert_eq!(count_classes(7), 126);
    }

    #[test]
    fn enumerate_classes_f3_frozen() {
        let f3 = f(3, 1);
        let classes = enumerate_classes(&f3);
        let triples: Vec<(u64, u64, u64)> = classes
            .iter()
            .map(|i| (f3.index(i.l1), f3.index(i.l2), f3.index(i.mu)))
            .collect();
        // Exhaustive filter over the 27 triples: disc must be the square 1.
        assert_eq!(
            triples,
            vec![
                (1, 1, 0),
                (1, 2, 1),
                (1, 2, 2),
                (2, 1, 1),
                (2, 1, 2),
                (2, 2, 0)
            ]
        );
    }

    #[test]
    fn enumerate_classes_counts() {
        for (p, n) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            let spec = f(p, n);
            let classes = enumerate_classes(&spec);
            assert_eq!(classes.len() as u64, count_classes(spec.q()));
            for inv in &classes {
                assert!(is_realizable(&spec, inv));
            }
        }
    }

    #[test]
    fn representative_hits_its_triple() {
        let f9 = f(3, 2);
        for inv in enumerate_classes(&f9) {
            let m = representative(&f9, &inv).unwrap();
            assert_eq!(invariants(&f9, &m), inv);
            assert_eq!(norm(&f9, &m.col(0)), inv.l1);
        }
    }
}
