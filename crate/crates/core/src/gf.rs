//! Finite fields GF(p^k), quadratic characters, power residues, and the
//! numeric quartic Gauss sum.
//!
//! Field elements are coefficient vectors over GF(p) against a monic
//! irreducible modulus, stored constant term first. The modulus is chosen as
//! the lexicographically smallest irreducible in that coefficient order, so
//! field presentations are reproducible across runs and implementations.

use std::collections::BTreeSet;

use crate::arith;
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement};

/// GF(p^k) with an explicit irreducible modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    k: u32,
    /// k+1 coefficients, constant term first, leading coefficient 1.
    modulus: Vec<u64>,
    q: u64,
}

/// An element of a [`FiniteField`]: k coefficients in [0, p).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

/// A minimal complex value for the Gauss-sum cross checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn sub_real(self, x: f64) -> Self {
        Self::new(self.re - x, self.im)
    }

    pub fn scale(self, x: f64) -> Self {
        Self::new(self.re * x, self.im * x)
    }
}

/// The quartic Gauss sum g(4) = sum_m exp(2 pi i m^4 / v) together with
/// S(4) = (g(4) - 1) / 4, the sum over the fourth-power residues.
#[derive(Debug, Clone, Copy)]
pub struct QuarticGaussSum {
    pub g4: Complex,
    pub s4: Complex,
}

impl FiniteField {
    /// Builds GF(q) for a prime power q <= 10^6. For k >= 2 the modulus is
    /// found by exhaustive search in lexicographic order on
    /// (c_0, ..., c_{k-1}).
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = arith::prime_power(q).ok_or(Error::NotAPrimePower(q))?;
        if q > 1_000_000 {
            return Err(Error::Field(format!("field order {q} exceeds 10^6")));
        }
        let modulus = if k == 1 {
            vec![0, 1] // the polynomial x
        } else {
            Self::smallest_irreducible(p, k)?
        };
        Ok(Self { p, k, modulus, q })
    }

    fn smallest_irreducible(p: u64, k: u32) -> Result<Vec<u64>> {
        let deg = k as usize;
        // digits with c0 most significant, so the scan runs in lexicographic
        // order on (c0, ..., c_{k-1})
        for idx in 0..p.pow(k) {
            let mut c = vec![0u64; deg + 1];
            c[deg] = 1;
            let mut n = idx;
            for i in (0..deg).rev() {
                c[i] = n % p;
                n /= p;
            }
            if poly_is_irreducible(&c, p) {
                return Ok(c);
            }
        }
        Err(Error::Field(format!(
            "no irreducible polynomial of degree {k} over GF({p})"
        )))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.k as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        let mut coeffs = vec![0; self.k as usize];
        coeffs[0] = 1;
        FieldElement { coeffs }
    }

    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.k as usize {
            return Err(Error::Field(format!(
                "expected {} coefficients, got {}",
                self.k,
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Field("coefficient out of range".into()));
        }
        Ok(FieldElement {
            coeffs: coeffs.to_vec(),
        })
    }

    /// All q elements, zero first, ordered by base-p counting with the
    /// constant coefficient as the least significant digit.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |idx| {
            let mut coeffs = vec![0u64; self.k as usize];
            let mut n = idx;
            for c in coeffs.iter_mut() {
                *c = n % self.p;
                n /= self.p;
            }
            FieldElement { coeffs }
        })
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .map(|&x| if x == 0 { 0 } else { self.p - x })
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let deg = self.k as usize;
        let mut prod = vec![0u64; 2 * deg - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce modulo the monic modulus
        for i in (deg..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &m) in self.modulus.iter().enumerate().take(deg) {
                let idx = i - deg + j;
                prod[idx] = (prod[idx] + c * (self.p - m % self.p) % self.p) % self.p;
            }
        }
        prod.truncate(deg);
        FieldElement { coeffs: prod }
    }

    pub fn pow(&self, a: &FieldElement, e: u64) -> FieldElement {
        let mut result = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    /// Multiplicative inverse via a^(q-2); zero is an error.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::Field("inverse of zero".into()));
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// chi(x): 0 at zero, +1 on nonzero squares, -1 on nonsquares. Defined
    /// for odd q only.
    pub fn quadratic_character(&self, x: &FieldElement) -> Result<i32> {
        if self.p == 2 {
            return Err(Error::Field(
                "quadratic character needs odd field order".into(),
            ));
        }
        if self.is_zero(x) {
            return Ok(0);
        }
        let r = self.pow(x, (self.q - 1) / 2);
        if r == self.one() {
            Ok(1)
        } else {
            debug_assert_eq!(r, self.neg(&self.one()));
            Ok(-1)
        }
    }

    /// The additive group of the field: Z_p^k.
    pub fn additive_group(&self) -> AbelianGroup {
        AbelianGroup::new(&vec![self.p; self.k as usize]).expect("p >= 2")
    }

    /// Reads a field element as an element of the additive group, coordinate
    /// by coordinate.
    pub fn to_group_element(&self, x: &FieldElement, group: &AbelianGroup) -> Result<GroupElement> {
        group.element(x.coeffs())
    }
}

fn poly_eval(coeffs: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in coeffs.iter().rev() {
        acc = (acc * x + c) % p;
    }
    acc
}

/// Remainder of a modulo b over GF(p); b monic.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (j, &m) in b.iter().enumerate() {
                let idx = shift + j;
                r[idx] = (r[idx] + lead * (p - m % p) % p) % p;
            }
        }
        r.pop();
    }
    while r.len() > 1 && *r.last().unwrap() == 0 {
        r.pop();
    }
    r
}

/// Irreducibility by trial division with every monic polynomial of degree up
/// to half of deg(f). For degree <= 3 this reduces to the root test.
fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    for x in 0..p {
        if poly_eval(f, x, p) == 0 {
            return false;
        }
    }
    for d in 2..=deg / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = vec![0u64; d + 1];
            g[d] = 1;
            let mut n = idx;
            for c in g.iter_mut().take(d) {
                *c = n % p;
                n /= p;
            }
            let r = poly_rem(f, &g, p);
            if r.len() == 1 && r[0] == 0 {
                return false;
            }
        }
    }
    true
}

/// The set {x^e mod v : 1 <= x < v} of e-th power residues of a prime v;
/// requires e | v - 1, and has exactly (v-1)/e members.
pub fn power_residues(v: u64, e: u64) -> Result<BTreeSet<u64>> {
    if !arith::is_prime(v) {
        return Err(Error::InvalidParams(format!("{v} is not prime")));
    }
    if e == 0 || !(v - 1).is_multiple_of(e) {
        return Err(Error::InvalidParams(format!(
            "{e} does not divide v - 1 = {}",
            v - 1
        )));
    }
    let set: BTreeSet<u64> = (1..v).map(|x| arith::pow_mod(x, e, v)).collect();
    debug_assert_eq!(set.len() as u64, (v - 1) / e);
    Ok(set)
}

/// Numeric evaluation of the quartic Gauss sum for a prime v.
pub fn gauss_quartic_sum(v: u64) -> Result<QuarticGaussSum> {
    if !arith::is_prime(v) || v == 2 {
        return Err(Error::InvalidParams(format!("{v} is not an odd prime")));
    }
    let mut g4 = Complex::new(0.0, 0.0);
    for m in 0..v {
        let e = arith::pow_mod(m, 4, v);
        let angle = 2.0 * std::f64::consts::PI * e as f64 / v as f64;
        g4.re += angle.cos();
        g4.im += angle.sin();
    }
    let s4 = g4.sub_real(1.0).scale(0.25);
    Ok(QuarticGaussSum { g4, s4 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn make_field_examples() {
        let f7 = FiniteField::new(7).unwrap();
        assert_eq!((f7.p(), f7.degree()), (7, 1));

        let f9 = FiniteField::new(9).unwrap();
        assert_eq!((f9.p(), f9.degree()), (3, 2));
        assert_eq!(f9.modulus(), &[1, 0, 1]); // x^2 + 1

        assert!(matches!(
            FiniteField::new(12),
            Err(Error::NotAPrimePower(12))
        ));
    }

    #[test]
    fn gf9_arithmetic() {
        let f = FiniteField::new(9).unwrap();
        let x = f.element(&[0, 1]).unwrap();
        // x * x = -1 = 2 under x^2 + 1
        assert_eq!(f.mul(&x, &x).coeffs(), &[2, 0]);
        for a in f.elements() {
            assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
            if !f.is_zero(&a) {
                let inv = f.inv(&a).unwrap();
                assert_eq!(f.mul(&a, &inv), f.one());
            }
        }
        assert!(f.inv(&f.zero()).is_err());
    }

    #[test]
    fn gf7_inverse() {
        let f = FiniteField::new(7).unwrap();
        let three = f.element(&[3]).unwrap();
        assert_eq!(f.inv(&three).unwrap().coeffs(), &[5]);
    }

    #[test]
    fn elements_order_zero_first() {
        let f = FiniteField::new(9).unwrap();
        let els: Vec<_> = f.elements().collect();
        assert_eq!(els.len(), 9);
        assert_eq!(els[0], f.zero());
        assert_eq!(els[1], f.one());
    }

    #[test]
    fn quadratic_character_examples() {
        let f7 = FiniteField::new(7).unwrap();
        assert_eq!(f7.quadratic_character(&f7.zero()).unwrap(), 0);
        assert_eq!(
            f7.quadratic_character(&f7.element(&[2]).unwrap()).unwrap(),
            1
        );
        assert_eq!(
            f7.quadratic_character(&f7.element(&[3]).unwrap()).unwrap(),
            -1
        );

        let f9 = FiniteField::new(9).unwrap();
        for a in f9.elements() {
            if f9.is_zero(&a) {
                continue;
            }
            let sq = f9.mul(&a, &a);
            assert_eq!(f9.quadratic_character(&sq).unwrap(), 1);
        }

        let f8 = FiniteField::new(8).unwrap();
        assert!(f8.quadratic_character(&f8.one()).is_err());
    }

    #[test]
    fn character_sums_to_zero_and_is_multiplicative() {
        let mut rng = StdRng::seed_from_u64(23);
        for q in [7, 9, 11, 13, 25, 27] {
            let f = FiniteField::new(q).unwrap();
            let total: i32 = f
                .elements()
                .map(|a| f.quadratic_character(&a).unwrap())
                .sum();
            assert_eq!(total, 0, "q={q}");

            let nonzero: Vec<FieldElement> = f.elements().filter(|a| !f.is_zero(a)).collect();
            for _ in 0..100 {
                let a = &nonzero[rng.gen_range(0..nonzero.len())];
                let b = &nonzero[rng.gen_range(0..nonzero.len())];
                let lhs = f.quadratic_character(&f.mul(a, b)).unwrap();
                let rhs = f.quadratic_character(a).unwrap() * f.quadratic_character(b).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn multiplicative_group_has_order_q_minus_one() {
        for q in [4u64, 7, 8, 9, 16, 25, 27, 49] {
            let f = FiniteField::new(q).unwrap();
            for a in f.elements().filter(|a| !f.is_zero(a)) {
                assert_eq!(f.pow(&a, q - 1), f.one(), "q={q}");
            }
        }
    }

    #[test]
    fn power_residue_examples() {
        assert_eq!(
            power_residues(7, 2)
                .unwrap()
                .into_iter()
                .collect::<Vec<_>>(),
            vec![1, 2, 4]
        );
        assert_eq!(
            power_residues(29, 4)
                .unwrap()
                .into_iter()
                .collect::<Vec<_>>(),
            vec![1, 7, 16, 20, 23, 24, 25]
        );
        assert_eq!(
            power_residues(5, 4)
                .unwrap()
                .into_iter()
                .collect::<Vec<_>>(),
            vec![1]
        );
        assert!(power_residues(7, 4).is_err());
        assert!(power_residues(8, 2).is_err());
    }

    #[test]
    fn power_residues_closed_under_multiplication() {
        for (v, e) in [(13, 2), (13, 3), (29, 4), (61, 4), (31, 5)] {
            let h = power_residues(v, e).unwrap();
            assert_eq!(h.len() as u64, (v - 1) / e);
            for &a in &h {
                for &b in &h {
                    assert!(h.contains(&(a * b % v)));
                }
            }
        }
    }

    #[test]
    fn gauss_sum_small_case() {
        // v = 5: m^4 mod 5 is 0,1,1,1,1 so g(4) = 1 + 4 e^{2 pi i / 5}
        let gs = gauss_quartic_sum(5).unwrap();
        let angle = 2.0 * std::f64::consts::PI / 5.0;
        let expect = Complex::new(1.0 + 4.0 * angle.cos(), 4.0 * angle.sin());
        assert!((gs.g4.re - expect.re).abs() < 1e-9);
        assert!((gs.g4.im - expect.im).abs() < 1e-9);
    }

    #[test]
    fn gauss_sum_family_identity() {
        for v in [29u64, 61, 349] {
            let gs = gauss_quartic_sum(v).unwrap();
            let lhs = gs.g4.sub_real(5.0).norm_sqr();
            let rhs = (3 * v + 25) as f64;
            assert!((lhs - rhs).abs() < 1e-6, "v={v}: {lhs} vs {rhs}");

            // |S(4) - 1|^2 recomputed from g(4) matches direct summation
            let direct: Complex = {
                let h = power_residues(v, 4).unwrap();
                let mut acc = Complex::new(0.0, 0.0);
                for r in h {
                    let angle = 2.0 * std::f64::consts::PI * r as f64 / v as f64;
                    acc.re += angle.cos();
                    acc.im += angle.sin();
                }
                acc
            };
            let s4m1 = gs.s4.sub_real(1.0).norm_sqr();
            let direct_m1 = direct.sub_real(1.0).norm_sqr();
            assert!((s4m1 - direct_m1).abs() < 1e-6);
            assert!((s4m1 - (3 * v + 25) as f64 / 16.0).abs() < 1e-6);
        }
    }

    #[test]
    fn irreducibility_found_for_larger_degrees() {
        // GF(16) needs a degree-4 trial division beyond the root test
        let f16 = FiniteField::new(16).unwrap();
        assert_eq!(f16.degree(), 4);
        // x^4 + x^3 + 1 is the lexicographically least irreducible over GF(2)
        assert_eq!(f16.modulus(), &[1, 0, 0, 1, 1]);
        let f27 = FiniteField::new(27).unwrap();
        assert_eq!(f27.modulus(), &[1, 0, 2, 1]); // x^3 + 2x^2 + 1
    }
}
