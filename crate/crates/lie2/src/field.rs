//! Arithmetic in GF(2^k).
//!
//! Elements are residues of GF(2)[t] modulo a fixed irreducible polynomial,
//! stored as bit vectors in a `u64` (bit i = coefficient of t^i). Addition
//! is XOR; multiplication goes through discrete-log tables built once per
//! field, so a field descriptor is constructed once and shared.
//!
//! Characteristic 2 gives two standard extras that the rest of the crate
//! leans on:
//!
//! * the Frobenius x ↦ x² is bijective, so every element has a unique
//!   square root, computed as `a^(2^(k-1))`;
//! * quadratic equations reduce to the Artin–Schreier form d² + d = c,
//!   solvable in the field iff the absolute trace of c vanishes.

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// A field element: polynomial residue of degree < k, as bits.
///
/// `Fe` is deliberately a plain value; all arithmetic goes through the
/// [`FiniteField`] that owns the modulus.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Fe(pub u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Built-in irreducible moduli for GF(2^k), k = 1..=16.
///
/// Low-weight irreducibles from the standard tables; the degree-2 entry is
/// the Conway polynomial t²+t+1, so `gf4` matches the usual presentation
/// with t a cube root of unity. Irreducibility of every entry is checked
/// in the test suite.
const MODULI: [u64; 17] = [
    0,
    0b11,                // t + 1
    0b111,               // t^2 + t + 1
    0b1011,              // t^3 + t + 1
    0b10011,             // t^4 + t + 1
    0b100101,            // t^5 + t^2 + 1
    0b1011011,           // t^6 + t^4 + t^3 + t + 1
    0b10000011,          // t^7 + t + 1
    0b100011101,         // t^8 + t^4 + t^3 + t^2 + 1
    0b1000010001,        // t^9 + t^4 + 1
    0b10000001001,       // t^10 + t^3 + 1
    0b100000000101,      // t^11 + t^2 + 1
    0b1000000001001,     // t^12 + t^3 + 1
    0b10000000011011,    // t^13 + t^4 + t^3 + t + 1
    0b100000000101011,   // t^14 + t^5 + t^3 + t + 1
    0b1000000000000011,  // t^15 + t + 1
    0b10001000000001011, // t^16 + t^12 + t^3 + t + 1
];

pub const MAX_DEGREE: u32 = 16;

/// Shared handle to a field descriptor; cheap to clone, safe to send.
pub type Field = Arc<FiniteField>;

/// GF(2^k) in a fixed polynomial basis.
pub struct FiniteField {
    k: u32,
    modulus: u64,
    /// exp[i] = g^i for a fixed generator g, i in 0..2^k-1.
    exp: Vec<u64>,
    /// log[a] with a nonzero: the discrete log base g.
    log: Vec<u32>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})", self.k)
    }
}

/// GF(2) — the default field.
pub fn gf2() -> Field {
    FiniteField::new(1).unwrap()
}

/// GF(4) with modulus t²+t+1.
pub fn gf4() -> Field {
    FiniteField::new(2).unwrap()
}

/// GF(2^k) with the built-in modulus.
pub fn gf2e(k: u32) -> Result<Field> {
    FiniteField::new(k)
}

impl FiniteField {
    /// Field with the built-in modulus of degree k.
    pub fn new(k: u32) -> Result<Field> {
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::Usage(format!(
                "extension degree must be in 1..={MAX_DEGREE}, got {k}"
            )));
        }
        Ok(Self::with_modulus(k, MODULI[k as usize])?)
    }

    /// Field with an explicit modulus (degree-k irreducible over GF(2)).
    pub fn with_modulus(k: u32, modulus: u64) -> Result<Field> {
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::Usage(format!(
                "extension degree must be in 1..={MAX_DEGREE}, got {k}"
            )));
        }
        if modulus.leading_zeros() != 63 - k || !poly_is_irreducible(modulus) {
            return Err(Error::Usage(format!(
                "modulus {modulus:#b} is not an irreducible polynomial of degree {k}"
            )));
        }
        let order = 1u64 << k;
        // Find a multiplicative generator and build log/exp tables.
        let mut exp = Vec::new();
        let mut log = vec![0u32; order as usize];
        let mut g = 2 % order; // start at t (or 1 for GF(2))
        if k == 1 {
            g = 1;
        }
        loop {
            exp.clear();
            let mut a = 1u64;
            let mut ok = true;
            for i in 0..(order - 1) {
                exp.push(a);
                if a == 1 && i > 0 {
                    ok = false;
                    break;
                }
                a = poly_mulmod(a, g, modulus);
            }
            if ok && a == 1 {
                break;
            }
            g += 1;
            assert!(g < order, "no generator found; modulus not irreducible?");
        }
        for (i, &a) in exp.iter().enumerate() {
            log[a as usize] = i as u32;
        }
        Ok(Arc::new(FiniteField { k, modulus, exp, log }))
    }

    /// Parse a CLI field name: `gf2`, `gf4`, `gf2e<k>`, or `gf<2^k>`.
    pub fn parse(name: &str) -> Result<Field> {
        let s = name.to_ascii_lowercase();
        if let Some(kstr) = s.strip_prefix("gf2e") {
            let k: u32 = kstr
                .parse()
                .map_err(|_| Error::Usage(format!("bad field name {name}")))?;
            return Self::new(k);
        }
        if let Some(qstr) = s.strip_prefix("gf") {
            let q: u64 = qstr
                .parse()
                .map_err(|_| Error::Usage(format!("bad field name {name}")))?;
            if q.is_power_of_two() && q >= 2 {
                return Self::new(q.trailing_zeros());
            }
        }
        Err(Error::Usage(format!("bad field name {name} (use gf2, gf4, or gf2e<k>)")))
    }

    /// Canonical CLI name of this field.
    pub fn name(&self) -> String {
        match self.k {
            1 => "gf2".into(),
            2 => "gf4".into(),
            k => format!("gf2e{k}"),
        }
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of elements, 2^k.
    pub fn size(&self) -> u64 {
        1u64 << self.k
    }

    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    pub fn one(&self) -> Fe {
        Fe(1)
    }

    pub fn el(&self, bits: u64) -> Fe {
        debug_assert!(bits < self.size());
        Fe(bits)
    }

    /// All field elements, 0 first, then by increasing bit pattern.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.size()).map(Fe)
    }

    /// Nonzero elements.
    pub fn units(&self) -> impl Iterator<Item = Fe> {
        (1..self.size()).map(Fe)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(a.0 ^ b.0)
    }

    /// Subtraction coincides with addition in characteristic 2.
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        Fe(a.0 ^ b.0)
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        let n = self.size() - 1;
        let i = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        Fe(self.exp[(i % n) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::Domain("inverse of zero".into()));
        }
        let n = self.size() - 1;
        let i = self.log[a.0 as usize] as u64;
        Ok(Fe(self.exp[((n - i) % n) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        if a.0 == 0 {
            return if e == 0 { Fe(1) } else { Fe(0) };
        }
        let n = self.size() - 1;
        e %= n;
        let i = self.log[a.0 as usize] as u64;
        Fe(self.exp[((i * e) % n) as usize])
    }

    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    /// The unique square root: Frobenius is bijective, sqrt(a) = a^(2^(k-1)).
    pub fn sqrt(&self, a: Fe) -> Fe {
        self.pow(a, 1u64 << (self.k - 1))
    }

    /// Absolute trace to GF(2): a + a² + a⁴ + … + a^(2^(k-1)).
    pub fn trace(&self, a: Fe) -> Fe {
        let mut acc = Fe(0);
        let mut t = a;
        for _ in 0..self.k {
            acc = self.add(acc, t);
            t = self.square(t);
        }
        acc
    }

    /// Solve d² + d = c.
    ///
    /// Returns the root with the lexicographically smallest bit vector
    /// (the two roots differ by 1), or `None` when no root exists in this
    /// field — that happens exactly when trace(c) = 1, and the caller may
    /// retry over GF(2^(2k)).
    pub fn artin_schreier(&self, c: Fe) -> Option<Fe> {
        if self.trace(c) != Fe(0) {
            return None;
        }
        for bits in 0..self.size() {
            let d = Fe(bits);
            if self.add(self.square(d), d) == c {
                return Some(d);
            }
        }
        unreachable!("trace-0 element must have an Artin-Schreier root")
    }
}

/// Product in GF(2)[t] reduced modulo `modulus` (schoolbook shift-xor).
fn poly_mulmod(mut a: u64, mut b: u64, modulus: u64) -> u64 {
    let deg = 63 - modulus.leading_zeros();
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> deg != 0 {
            a ^= modulus;
        }
    }
    acc
}

fn poly_deg(a: u64) -> i32 {
    63 - a.leading_zeros() as i32
}

fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = poly_deg(b);
    while poly_deg(a) >= db && a != 0 {
        a ^= b << (poly_deg(a) - db);
    }
    a
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Irreducibility over GF(2) by the standard Frobenius test:
/// t^(2^k) ≡ t mod f, and gcd(t^(2^(k/p)) + t, f) = 1 for primes p | k.
fn poly_is_irreducible(f: u64) -> bool {
    let k = poly_deg(f);
    if k < 1 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let frob = |steps: u32| -> u64 {
        // t^(2^steps) mod f by repeated squaring of t.
        let mut x = 2u64 % f;
        for _ in 0..steps {
            x = poly_mulmod(x, x, f);
        }
        x
    };
    if frob(k as u32) != 2 % f {
        return false;
    }
    let mut m = k as u32;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            if poly_gcd(frob(k as u32 / p) ^ 2, f) != 1 {
                return false;
            }
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 && poly_gcd(frob(k as u32 / m) ^ 2, f) != 1 {
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_moduli_are_irreducible() {
        for k in 1..=MAX_DEGREE {
            let m = MODULI[k as usize];
            assert_eq!(poly_deg(m), k as i32, "degree mismatch at k={k}");
            assert!(poly_is_irreducible(m), "modulus for k={k} is reducible");
        }
    }

    #[test]
    fn gf2_basics() {
        let f = gf2();
        assert_eq!(f.add(Fe(1), Fe(1)), Fe(0));
        assert_eq!(f.inv(Fe(1)).unwrap(), Fe(1));
        assert!(f.inv(Fe(0)).is_err());
    }

    #[test]
    fn gf4_multiplication_table() {
        // modulus t²+t+1: t·t = t+1.
        let f = gf4();
        let t = Fe(0b10);
        assert_eq!(f.mul(t, t), Fe(0b11));
        assert_eq!(f.mul(t, Fe(0b11)), Fe(1)); // t·(t+1) = t²+t = 1
    }

    #[test]
    fn characteristic_two_identities() {
        for k in [1u32, 2, 3, 6] {
            let f = FiniteField::new(k).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, a), Fe(0));
                for b in f.elements() {
                    // Frobenius is additive.
                    let lhs = f.square(f.add(a, b));
                    let rhs = f.add(f.square(a), f.square(b));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn sqrt_inverts_squaring() {
        for k in [1u32, 2, 3, 4, 6] {
            let f = FiniteField::new(k).unwrap();
            assert_eq!(f.sqrt(Fe(0)), Fe(0));
            assert_eq!(f.sqrt(Fe(1)), Fe(1));
            for a in f.elements() {
                let r = f.sqrt(a);
                assert_eq!(f.square(r), a);
            }
        }
    }

    #[test]
    fn gf4_sqrt_of_t() {
        // (t+1)² = t² + 1 = t under t²+t+1.
        let f = gf4();
        assert_eq!(f.sqrt(Fe(0b10)), Fe(0b11));
    }

    #[test]
    fn artin_schreier_roots() {
        let f2 = gf2();
        assert_eq!(f2.artin_schreier(Fe(0)), Some(Fe(0)));
        assert_eq!(f2.artin_schreier(Fe(1)), None); // trace(1) = 1 over GF(2)

        // Over GF(4), d²+d=1 has the root t (t²+t = t+1+t = 1).
        let f4 = gf4();
        let d = f4.artin_schreier(Fe(1)).expect("root exists over GF(4)");
        assert_eq!(d, Fe(0b10));
        for c in f4.elements() {
            match f4.artin_schreier(c) {
                Some(d) => {
                    assert_eq!(f4.add(f4.square(d), d), c);
                    // d+1 is the other root; we return the smaller.
                    assert!(d.0 < d.0 ^ 1 || c == Fe(0));
                }
                None => assert_eq!(f4.trace(c), Fe(1)),
            }
        }
    }

    #[test]
    fn inverse_works_everywhere() {
        for k in [2u32, 5, 8] {
            let f = FiniteField::new(k).unwrap();
            for a in f.units() {
                let b = f.inv(a).unwrap();
                assert_eq!(f.mul(a, b), Fe(1));
            }
        }
    }

    #[test]
    fn parse_names() {
        assert_eq!(FiniteField::parse("gf2").unwrap().degree(), 1);
        assert_eq!(FiniteField::parse("gf4").unwrap().degree(), 2);
        assert_eq!(FiniteField::parse("gf64").unwrap().degree(), 6);
        assert_eq!(FiniteField::parse("gf2e11").unwrap().degree(), 11);
        assert!(FiniteField::parse("gf3").is_err());
        assert_eq!(gf2e(6).unwrap().name(), "gf2e6");
    }
}
