//! Exact arithmetic in GF(p^n) for odd primes p.
//!
//! A [`FieldSpec`] fixes the prime `p`, the extension degree `n`, and a monic
//! irreducible modulus over Z_p, then precomputes digit and discrete-log
//! tables so that every arithmetic operation is a table lookup or a short
//! digit loop. Elements are opaque handles ([`FieldElement`]) carrying the
//! canonical index of their reduced coefficient polynomial; they are only
//! meaningful together with the spec that produced them, and specs for the
//! same `(p, n)` always agree because the modulus is chosen
//! deterministically (lexicographically first monic irreducible, coefficient
//! list read from the constant term up).
//!
//! Supported range is desk scale: `q = p^n <= 10_000`, characteristic odd.
//! Quadratic-character values, square roots, the Galois trace and the
//! canonical additive character `chi(x) = exp(2*pi*i*Tr(x)/p)` all live here.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported field cardinality.
pub const MAX_Q: u64 = 10_000;

/// An element of GF(p^n), stored as the canonical index of its reduced
/// representative (the coefficient polynomial evaluated at p).
///
/// `Ord` on elements is the field's canonical enumeration order; index 0 is
/// the zero element and index 1 is one, for every spec.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Value of the quadratic (Legendre) character.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LegendreValue {
    MinusOne,
    Zero,
    PlusOne,
}

impl LegendreValue {
    #[inline]
    pub fn as_i32(self) -> i32 {
        match self {
            LegendreValue::MinusOne => -1,
            LegendreValue::Zero => 0,
            LegendreValue::PlusOne => 1,
        }
    }

    /// True for zero and for nonzero quadratic residues, i.e. exactly when a
    /// square root exists.
    #[inline]
    pub fn is_square(self) -> bool {
        !matches!(self, LegendreValue::MinusOne)
    }
}

/// Context for GF(p^n): modulus plus precomputed tables.
#[derive(Clone)]
pub struct FieldSpec {
    p: u64,
    n: usize,
    q: u64,
    /// Monic modulus, little-endian, length n+1.
    modulus: Vec<u64>,
    /// Base-p digits of every element, row-major: `digits[x*n + i]` is the
    /// coefficient of X^i in element x.
    digits: Vec<u16>,
    /// exp_table[k] = index of g^k for a fixed generator g of the unit group.
    exp_table: Vec<u32>,
    /// Discrete log; log_table[0] is a sentinel.
    log_table: Vec<u32>,
    /// Galois trace of every element, as a value in [0, p).
    trace_table: Vec<u16>,
    /// char_table[t] = exp(2*pi*i*t/p).
    char_table: Vec<Complex64>,
    two_inv: FieldElement,
}

const LOG_ZERO: u32 = u32::MAX;

impl std::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

/// Build GF(p^n) with the deterministically chosen modulus.
pub fn make_field(p: u64, n: usize) -> Result<FieldSpec> {
    FieldSpec::make(p, n)
}

impl FieldSpec {
    pub fn make(p: u64, n: usize) -> Result<FieldSpec> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if p < 2 || !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if n == 0 {
            return Err(Error::BadDegree("degree must be at least 1".into()));
        }
        let mut q: u64 = 1;
        for _ in 0..n {
            q = q.saturating_mul(p);
            if q > MAX_Q {
                return Err(Error::BadDegree(format!(
                    "p^n = {}^{} exceeds the supported maximum {}",
                    p, n, MAX_Q
                )));
            }
        }

        let modulus = first_irreducible(p, n);

        // Digit table.
        let mut digits = vec![0u16; (q as usize) * n];
        for x in 0..q as usize {
            let mut v = x as u64;
            for i in 0..n {
                digits[x * n + i] = (v % p) as u16;
                v /= p;
            }
        }

        let slow_mul = |a: u32, b: u32| -> u32 {
            let pa: Vec<u64> = (0..n).map(|i| digits[a as usize * n + i] as u64).collect();
            let pb: Vec<u64> = (0..n).map(|i| digits[b as usize * n + i] as u64).collect();
            let prod = poly_mul(&pa, &pb, p);
            let red = poly_rem(&prod, &modulus, p);
            let mut idx = 0u64;
            for i in (0..n).rev() {
                idx = idx * p + red.get(i).copied().unwrap_or(0);
            }
            idx as u32
        };

        // Find a generator of the unit group by computing orders directly.
        let m = q - 1;
        let mut generator = 0u32;
        for cand in 2..q as u32 {
            let mut x = cand;
            let mut order: u64 = 1;
            while x != 1 {
                x = slow_mul(x, cand);
                order += 1;
            }
            if order == m {
                generator = cand;
                break;
            }
        }
        assert!(generator != 0, "unit group of GF({q}) has a generator");

        let mut exp_table = vec![0u32; m as usize];
        exp_table[0] = 1;
        for k in 1..m as usize {
            exp_table[k] = slow_mul(exp_table[k - 1], generator);
        }
        let mut log_table = vec![LOG_ZERO; q as usize];
        for (k, &e) in exp_table.iter().enumerate() {
            debug_assert_eq!(log_table[e as usize], LOG_ZERO);
            log_table[e as usize] = k as u32;
        }

        let char_table: Vec<Complex64> = (0..p)
            .map(|t| {
                let theta = std::f64::consts::TAU * (t as f64) / (p as f64);
                Complex64::new(theta.cos(), theta.sin())
            })
            .collect();

        let mut spec = FieldSpec {
            p,
            n,
            q,
            modulus,
            digits,
            exp_table,
            log_table,
            trace_table: Vec::new(),
            char_table,
            two_inv: FieldElement(0),
        };
        spec.two_inv = spec
            .inv(spec.from_u64(2))
            .expect("2 is a unit in odd characteristic");

        // Galois trace: Tr(x) = x + x^p + ... + x^(p^(n-1)); lands in Z_p.
        let mut p_pows = Vec::with_capacity(n);
        let mut pp = 1u64;
        for _ in 0..n {
            p_pows.push(pp % m.max(1));
            pp = (pp * p) % m.max(1);
        }
        let mut trace_table = vec![0u16; q as usize];
        for x in 1..q {
            let l = spec.log_table[x as usize] as u64;
            let mut acc = FieldElement(x as u32);
            for &pe in p_pows.iter().skip(1) {
                let frob = spec.exp_table[((l * pe) % m) as usize];
                acc = spec.add(acc, FieldElement(frob));
            }
            for i in 1..n {
                debug_assert_eq!(spec.digit(acc, i), 0, "trace lies in the prime subfield");
            }
            trace_table[x as usize] = spec.digit(acc, 0) as u16;
        }
        spec.trace_table = trace_table;
        Ok(spec)
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }
    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }
    #[inline]
    pub fn minus_one(&self) -> FieldElement {
        self.neg(self.one())
    }
    #[inline]
    pub fn two_inv(&self) -> FieldElement {
        self.two_inv
    }

    /// Embed an integer via the prime subfield.
    #[inline]
    pub fn from_u64(&self, k: u64) -> FieldElement {
        FieldElement((k % self.p) as u32)
    }

    /// Element with the given canonical index (must be `< q`).
    #[inline]
    pub fn element(&self, idx: u64) -> FieldElement {
        debug_assert!(idx < self.q);
        FieldElement(idx as u32)
    }

    #[inline]
    pub fn index(&self, x: FieldElement) -> u64 {
        x.0 as u64
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u32).map(FieldElement)
    }

    #[inline]
    fn digit(&self, x: FieldElement, i: usize) -> u64 {
        self.digits[x.0 as usize * self.n + i] as u64
    }

    /// Little-endian coefficient list of the reduced representative.
    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        (0..self.n).map(|i| self.digit(x, i)).collect()
    }

    /// Build an element from little-endian coefficients (reduced mod p).
    /// Shorter lists are zero-padded; longer ones are rejected.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.n {
            return Err(Error::Parse(format!(
                "coefficient list of length {} for an extension of degree {}",
                coeffs.len(),
                self.n
            )));
        }
        let mut idx = 0u64;
        for i in (0..self.n).rev() {
            let c = coeffs.get(i).copied().unwrap_or(0) % self.p;
            idx = idx * self.p + c;
        }
        Ok(FieldElement(idx as u32))
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement(((x.0 as u64 + y.0 as u64) % self.p) as u32);
        }
        let mut idx = 0u64;
        for i in (0..self.n).rev() {
            let s = (self.digit(x, i) + self.digit(y, i)) % self.p;
            idx = idx * self.p + s;
        }
        FieldElement(idx as u32)
    }

    #[inline]
    pub fn neg(&self, x: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement(((self.p - x.0 as u64) % self.p) as u32);
        }
        let mut idx = 0u64;
        for i in (0..self.n).rev() {
            let s = (self.p - self.digit(x, i)) % self.p;
            idx = idx * self.p + s;
        }
        FieldElement(idx as u32)
    }

    #[inline]
    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.0 == 0 || y.0 == 0 {
            return FieldElement(0);
        }
        let m = self.q - 1;
        let l = (self.log_table[x.0 as usize] as u64 + self.log_table[y.0 as usize] as u64) % m;
        FieldElement(self.exp_table[l as usize])
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.0 == 0 {
            return Err(Error::DivideByZero);
        }
        let m = self.q - 1;
        let l = (m - self.log_table[x.0 as usize] as u64) % m;
        Ok(FieldElement(self.exp_table[l as usize]))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// x/2, a frequent subexpression.
    #[inline]
    pub fn halve(&self, x: FieldElement) -> FieldElement {
        self.mul(x, self.two_inv)
    }

    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        if x.0 == 0 {
            return if e == 0 { self.one() } else { self.zero() };
        }
        let m = self.q - 1;
        let l = (self.log_table[x.0 as usize] as u64 * (e % m)) % m;
        FieldElement(self.exp_table[l as usize])
    }

    /// Quadratic character: x^((q-1)/2) read in {-1, 0, +1}.
    #[inline]
    pub fn legendre(&self, x: FieldElement) -> LegendreValue {
        if x.0 == 0 {
            LegendreValue::Zero
        } else if self.log_table[x.0 as usize].is_multiple_of(2) {
            LegendreValue::PlusOne
        } else {
            LegendreValue::MinusOne
        }
    }

    /// Square roots as a set: {0} for zero, {r, -r} for nonzero squares,
    /// absent for nonresidues. Roots come out in canonical order.
    pub fn sqrt(&self, x: FieldElement) -> Option<Vec<FieldElement>> {
        if x.0 == 0 {
            return Some(vec![self.zero()]);
        }
        let r = if self.q % 4 == 3 {
            let r = self.pow(x, (self.q + 1) / 4);
            if self.mul(r, r) != x {
                return None;
            }
            r
        } else {
            let l = self.log_table[x.0 as usize];
            if !l.is_multiple_of(2) {
                return None;
            }
            FieldElement(self.exp_table[(l / 2) as usize])
        };
        let mr = self.neg(r);
        let mut roots = vec![r.min(mr), r.max(mr)];
        roots.dedup();
        Some(roots)
    }

    /// The smaller of the two square roots, when one exists.
    pub fn sqrt_canonical(&self, x: FieldElement) -> Option<FieldElement> {
        self.sqrt(x).map(|roots| roots[0])
    }

    /// A fixed primitive fourth root of unity, present exactly when
    /// q = 1 mod 4.
    pub fn fourth_root(&self) -> Option<FieldElement> {
        self.sqrt_canonical(self.minus_one())
    }

    /// Galois trace Tr(x) = x + x^p + ... + x^(p^(n-1)), as a value in [0, p).
    #[inline]
    pub fn galois_trace(&self, x: FieldElement) -> u64 {
        self.trace_table[x.0 as usize] as u64
    }

    /// Canonical additive character chi(x) = exp(2*pi*i*Tr(x)/p).
    #[inline]
    pub fn additive_character(&self, x: FieldElement) -> Complex64 {
        self.char_table[self.trace_table[x.0 as usize] as usize]
    }

    /// Render an element: a bare integer over a prime field, a little-endian
    /// coefficient list otherwise.
    pub fn format_element(&self, x: FieldElement) -> String {
        if self.n == 1 {
            format!("{}", x.0)
        } else {
            let cs: Vec<String> = self.coeffs(x).iter().map(|c| c.to_string()).collect();
            format!("[{}]", cs.join(","))
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    out
}

/// Remainder of f by a monic divisor g, little-endian coefficients.
fn poly_rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let dg = g.len() - 1;
    let mut r: Vec<u64> = f.to_vec();
    while r.len() > dg {
        let lead = *r.last().unwrap() % p;
        let k = r.len() - 1 - dg;
        if lead != 0 {
            for i in 0..=dg {
                let sub = (lead * g[i]) % p;
                r[k + i] = (r[k + i] + p * p - sub) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree up to deg/2.
    for k in 1..=deg / 2 {
        let count = p.pow(k as u32);
        for v in 0..count {
            let mut g = vec![0u64; k + 1];
            g[k] = 1;
            let mut t = v;
            for coeff in g.iter_mut().take(k) {
                *coeff = t % p;
                t /= p;
            }
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically first monic irreducible of degree n over Z_p, reading
/// the coefficient list [c0, c1, ..., c_{n-1}] with c0 most significant.
fn first_irreducible(p: u64, n: usize) -> Vec<u64> {
    let total = p.pow(n as u32);
    for v in 0..total {
        let mut f = vec![0u64; n + 1];
        f[n] = 1;
        let mut t = v;
        for i in (0..n).rev() {
            f[i] = t % p;
            t /= p;
        }
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over Z_p")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, n: usize) -> FieldSpec {
        FieldSpec::make(p, n).unwrap()
    }

    #[test]
    fn make_field_prime_field_modulus_is_x() {
        let f3 = f(3, 1);
        assert_eq!(f3.q(), 3);
        assert_eq!(f3.modulus(), &[0, 1]);
    }

    #[test]
    fn make_field_f9_modulus_is_x2_plus_1() {
        // x^2+1 is irreducible over Z_3 because -1 is a nonresidue mod 3,
        // and every lexicographically earlier monic quadratic has a root.
        let f9 = f(3, 2);
        assert_eq!(f9.q(), 9);
        assert_eq!(f9.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn make_field_first_irreducible_frozen_values() {
        // F_25: (1,0) gives x^2+1, reducible since -1 = 2^2 mod 5; the next
        // candidate x^2+x+1 has nonresidue discriminant -3 = 2.
        assert_eq!(f(5, 2).modulus(), &[1, 1, 1]);
        // F_27: every monic cubic before x^3+2x^2+1 in lexicographic order
        // has a root in Z_3 (c0 = 0 gives the root 0; x^3+1 has root 2;
        // x^3+x^2+1 has root 1).
        assert_eq!(f(3, 3).modulus(), &[1, 0, 2, 1]);
    }

    #[test]
    fn make_field_rejects_bad_input() {
        assert_eq!(
            FieldSpec::make(2, 1).unwrap_err(),
            Error::EvenCharacteristic
        );
        assert_eq!(FieldSpec::make(9, 1).unwrap_err(), Error::NonPrime(9));
        assert!(matches!(
            FieldSpec::make(3, 0).unwrap_err(),
            Error::BadDegree(_)
        ));
        assert!(matches!(
            FieldSpec::make(101, 3).unwrap_err(),
            Error::BadDegree(_)
        ));
    }

    #[test]
    fn moduli_are_irreducible_by_independent_root_and_division_check() {
        for (p, n) in [(3, 2), (3, 3), (5, 2), (7, 2), (3, 4)] {
            let spec = f(p, n);
            let m = spec.modulus().to_vec();
            assert_eq!(m.len(), n + 1);
            assert_eq!(m[n], 1);
            // No roots in Z_p.
            for r in 0..p {
                let mut val = 0u64;
                for &c in m.iter().rev() {
                    val = (val * r + c) % p;
                }
                assert_ne!(val, 0, "modulus for GF({p}^{n}) has root {r}");
            }
            // Re-run trial division independently of the constructor path.
            assert!(is_irreducible(&m, p));
        }
    }

    #[test]
    fn arithmetic_known_values() {
        let f5 = f(5, 1);
        assert_eq!(f5.inv(f5.from_u64(2)).unwrap(), f5.from_u64(3));

        // In F_9 with modulus x^2+1: x * x = -1 = 2.
        let f9 = f(3, 2);
        let x = f9.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f9.mul(x, x), f9.from_u64(2));

        let f7 = f(7, 1);
        assert_eq!(f7.pow(f7.from_u64(3), 6), f7.one());

        assert_eq!(f5.inv(f5.zero()).unwrap_err(), Error::DivideByZero);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, n) in [(5, 1), (3, 2), (5, 2)] {
            let spec = f(p, n);
            let one = spec.one();
            for x in spec.elements() {
                // Fermat and inverse round trip.
                if !x.is_zero() {
                    assert_eq!(spec.pow(x, spec.q() - 1), one);
                    assert_eq!(spec.mul(x, spec.inv(x).unwrap()), one);
                }
                for y in spec.elements() {
                    assert_eq!(spec.mul(x, y), spec.mul(y, x));
                    assert_eq!(spec.sub(spec.add(x, y), y), x);
                    for z in spec.elements() {
                        let lhs = spec.mul(x, spec.add(y, z));
                        let rhs = spec.add(spec.mul(x, y), spec.mul(x, z));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn prime_field_mul_matches_repeated_addition() {
        let f13 = f(13, 1);
        for x in f13.elements() {
            let mut acc = f13.zero();
            for _ in 0..f13.index(x) {
                acc = f13.add(acc, f13.from_u64(7));
            }
            assert_eq!(acc, f13.mul(x, f13.from_u64(7)));
        }
    }

    #[test]
    fn legendre_known_values() {
        let f5 = f(5, 1);
        assert_eq!(f5.legendre(f5.from_u64(4)), LegendreValue::PlusOne);
        // Squares mod 5 are {0, 1, 4}, so 2 is a nonresidue.
        assert_eq!(f5.legendre(f5.from_u64(2)), LegendreValue::MinusOne);
        assert_eq!(f5.legendre(f5.zero()), LegendreValue::Zero);

        // -1 is a square whenever q = 1 mod 4; 9 = 1 mod 4.
        let f9 = f(3, 2);
        assert_eq!(f9.legendre(f9.minus_one()), LegendreValue::PlusOne);
    }

    #[test]
    fn legendre_is_multiplicative_and_balanced() {
        for (p, n) in [
            (3, 1),
            (5, 1),
            (7, 1),
            (11, 1),
            (13, 1),
            (3, 2),
            (5, 2),
            (3, 3),
        ] {
            let spec = f(p, n);
            let mut residues = 0;
            for x in spec.elements() {
                if !x.is_zero() {
                    assert_eq!(spec.legendre(spec.mul(x, x)), LegendreValue::PlusOne);
                    if spec.legendre(x) == LegendreValue::PlusOne {
                        residues += 1;
                    }
                }
                for y in spec.elements() {
                    assert_eq!(
                        spec.legendre(x).as_i32() * spec.legendre(y).as_i32(),
                        spec.legendre(spec.mul(x, y)).as_i32()
                    );
                }
            }
            assert_eq!(residues, (spec.q() - 1) / 2);
        }
    }

    #[test]
    fn sqrt_known_values_and_round_trip() {
        let f7 = f(7, 1);
        let roots = f7.sqrt(f7.from_u64(2)).unwrap();
        assert_eq!(roots, vec![f7.from_u64(3), f7.from_u64(4)]);

        let f5 = f(5, 1);
        assert_eq!(f5.sqrt(f5.zero()).unwrap(), vec![f5.zero()]);
        assert!(f5.sqrt(f5.from_u64(2)).is_none());

        for (p, n) in [(5, 1), (7, 1), (13, 1), (3, 2), (5, 2), (3, 3)] {
            let spec = f(p, n);
            for x in spec.elements() {
                match spec.sqrt(x) {
                    Some(roots) => {
                        for r in roots {
                            assert_eq!(spec.mul(r, r), x);
                        }
                    }
                    None => assert_eq!(spec.legendre(x), LegendreValue::MinusOne),
                }
            }
        }
    }

    #[test]
    fn trace_known_values() {
        let f3 = f(3, 1);
        assert_eq!(f3.galois_trace(f3.from_u64(2)), 2);

        let f9 = f(3, 2);
        assert_eq!(f9.galois_trace(f9.one()), 2);
        // With modulus x^2+1 the Frobenius sends x to x^3 = -x, so Tr(x) = 0.
        let x = f9.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f9.galois_trace(x), 0);
    }

    #[test]
    fn trace_is_additive_onto_prime_field() {
        for (p, n) in [(3, 2), (5, 2), (3, 3)] {
            let spec = f(p, n);
            let mut seen = vec![false; p as usize];
            for x in spec.elements() {
                seen[spec.galois_trace(x) as usize] = true;
                for y in spec.elements() {
                    let s = (spec.galois_trace(x) + spec.galois_trace(y)) % p;
                    assert_eq!(spec.galois_trace(spec.add(x, y)), s);
                }
            }
            assert!(seen.iter().all(|&b| b), "trace is onto Z_p");
        }
    }

    #[test]
    fn character_known_values() {
        let f5 = f(5, 1);
        let c0 = f5.additive_character(f5.zero());
        assert!((c0 - Complex64::new(1.0, 0.0)).norm() < 1e-12);

        let c1 = f5.additive_character(f5.one());
        let theta = std::f64::consts::TAU / 5.0;
        assert!((c1 - Complex64::new(theta.cos(), theta.sin())).norm() < 1e-12);

        let f9 = f(3, 2);
        for x in f9.elements() {
            if f9.galois_trace(x) == 0 {
                assert!((f9.additive_character(x) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
            }
            assert!((f9.additive_character(x).norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn character_orthogonality() {
        for (p, n) in [
            (3, 1),
            (5, 1),
            (7, 1),
            (11, 1),
            (13, 1),
            (3, 2),
            (5, 2),
            (3, 3),
        ] {
            let spec = f(p, n);
            for a in spec.elements() {
                let sum: Complex64 = spec
                    .elements()
                    .map(|x| spec.additive_character(spec.mul(a, x)))
                    .sum();
                let expect = if a.is_zero() { spec.q() as f64 } else { 0.0 };
                assert!(
                    (sum - Complex64::new(expect, 0.0)).norm() < 1e-9,
                    "character sum failed at q={} a={:?}",
                    spec.q(),
                    a
                );
            }
        }
    }

    #[test]
    fn spec_is_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<FieldSpec>();
        assert_send_sync::<FieldElement>();
    }

    #[test]
    fn coeff_round_trip_and_formatting() {
        let f9 = f(3, 2);
        for x in f9.elements() {
            assert_eq!(f9.from_coeffs(&f9.coeffs(x)).unwrap(), x);
        }
        assert_eq!(f9.format_element(f9.from_coeffs(&[2, 1]).unwrap()), "[2,1]");
        let f5 = f(5, 1);
        assert_eq!(f5.format_element(f5.from_u64(4)), "4");
    }
}
