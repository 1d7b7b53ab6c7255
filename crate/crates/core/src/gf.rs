//! Finite fields GF(p^e) of odd characteristic.
//!
//! Elements are stored as their canonical integer encoding
//! `n = c_0 + c_1 p + ... + c_{e-1} p^{e-1}`, where `c_i` are the coefficients of
//! the polynomial-basis representative modulo the field's defining polynomial.
//! [`FieldSpec`] is a cheap, shareable handle; matrices and polynomials keep raw
//! `u32` encodings and route arithmetic through it. [`FieldElement`] pairs an
//! encoding with its field for checked, user-facing arithmetic.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field this crate will construct.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Fields up to this size carry full addition and multiplication tables.
const TABLE_LIMIT: u32 = 256;

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    /// Monic, constant term first, length `e + 1`.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// A finite field GF(p^e) with its canonical defining polynomial.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({self})")
    }
}

/// `p^e:c0,c1,...,ce` with the modulus coefficients constant term first.
impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
        write!(f, "{}^{}:{}", self.0.p, self.0.e, coeffs.join(","))
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(1, format!("malformed field spec `{s}`"));
        let (pe, modulus) = s.split_once(':').ok_or_else(bad)?;
        let (p, e) = pe.split_once('^').ok_or_else(bad)?;
        let p: u32 = p.trim().parse().map_err(|_| bad())?;
        let e: u32 = e.trim().parse().map_err(|_| bad())?;
        let coeffs = modulus
            .split(',')
            .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        FieldSpec::with_modulus(p, e, coeffs)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Constructs GF(p^e) with the canonical modulus.
///
/// The canonical modulus is the lexicographically smallest monic irreducible
/// polynomial of degree `e`, comparing coefficients from the constant term
/// upwards. For `e = 1` this is `x`.
pub fn make_field(p: u32, e: u32) -> Result<FieldSpec> {
    check_characteristic(p, e)?;
    let modulus = canonical_modulus(p, e);
    FieldSpec::build(p, e, modulus)
}

/// Constructs the canonical field of order `q`, which must be an odd prime power.
pub fn field_of_order(q: u64) -> Result<FieldSpec> {
    if q < 3 {
        return Err(Error::Parameter(format!(
            "field order {q} is not an odd prime power"
        )));
    }
    let p = prime_divisors(q)[0];
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(Error::Parameter(format!(
            "field order {q} is not a prime power"
        )));
    }
    make_field(p as u32, e)
}

fn check_characteristic(p: u32, e: u32) -> Result<()> {
    if !is_prime(p as u64) {
        return Err(Error::Parameter(format!("{p} is not prime")));
    }
    if p == 2 {
        return Err(Error::Parameter(
            "characteristic 2 is not supported; p must be odd".into(),
        ));
    }
    if e < 1 {
        return Err(Error::Parameter(
            "extension degree must be at least 1".into(),
        ));
    }
    let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
    if q > MAX_FIELD_SIZE {
        return Err(Error::SizeGuard {
            what: "field",
            size: q,
            limit: MAX_FIELD_SIZE,
        });
    }
    Ok(())
}

/// Remainder of `a` modulo monic `m` over GF(p); both constant term first.
fn poly_rem_prime(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let e = modulus.len() - 1;
    if e <= 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=e/2.
    for d in 1..=e / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                divisor.push((c % p as u64) as u32);
                c /= p as u64;
            }
            divisor.push(1);
            if poly_rem_prime(modulus, &divisor, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn canonical_modulus(p: u32, e: u32) -> Vec<u32> {
    let e = e as usize;
    // Odometer over (c_0, ..., c_{e-1}) with c_0 most significant.
    let mut coeffs = vec![0u32; e];
    loop {
        let mut candidate = coeffs.clone();
        candidate.push(1);
        if is_irreducible(&candidate, p) {
            return candidate;
        }
        let mut i = e;
        loop {
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            assert!(i > 0, "an irreducible polynomial of every degree exists");
        }
    }
}

impl FieldSpec {
    /// Builds a field from an explicit modulus, checking that it is monic and irreducible.
    pub fn with_modulus(p: u32, e: u32, modulus: Vec<u32>) -> Result<Self> {
        check_characteristic(p, e)?;
        if modulus.len() != e as usize + 1 || *modulus.last().unwrap() != 1 {
            return Err(Error::Parameter(format!(
                "modulus must be monic of degree {e}"
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::Parameter("modulus coefficient out of range".into()));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::Parameter("modulus is reducible".into()));
        }
        Self::build(p, e, modulus)
    }

    fn build(p: u32, e: u32, modulus: Vec<u32>) -> Result<Self> {
        let q = p.pow(e);
        let mut inner = Inner {
            p,
            e,
            q,
            modulus,
            tables: None,
        };
        if e > 1 && q <= TABLE_LIMIT {
            inner.tables = Some(Tables::build(&inner));
        }
        Ok(FieldSpec(Arc::new(inner)))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn zero(&self) -> u32 {
        0
    }

    #[inline]
    pub fn one(&self) -> u32 {
        1
    }

    #[inline]
    pub fn contains(&self, a: u32) -> bool {
        a < self.0.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.0;
        if inner.e == 1 {
            let s = a + b;
            if s >= inner.p {
                s - inner.p
            } else {
                s
            }
        } else if let Some(t) = &inner.tables {
            t.add[(a * inner.q + b) as usize]
        } else {
            digitwise(inner.p, inner.e, a, b, |x, y| (x + y) % inner.p)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let inner = &*self.0;
        if inner.e == 1 {
            if a == 0 {
                0
            } else {
                inner.p - a
            }
        } else if let Some(t) = &inner.tables {
            t.neg[a as usize]
        } else {
            digitwise(inner.p, inner.e, a, 0, |x, _| (inner.p - x) % inner.p)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.0;
        if inner.e == 1 {
            ((a as u64 * b as u64) % inner.p as u64) as u32
        } else if let Some(t) = &inner.tables {
            t.mul[(a * inner.q + b) as usize]
        } else {
            mul_poly_basis(inner, a, b)
        }
    }

    pub fn pow(&self, a: u32, mut n: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.0.tables {
            return Ok(t.inv[a as usize]);
        }
        Ok(self.pow(a, self.0.q as u64 - 2))
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let group = self.0.q as u64 - 1;
        let mut ord = group;
        for t in prime_divisors(group) {
            while ord % t == 0 && self.pow(a, ord / t) == 1 {
                ord /= t;
            }
        }
        Ok(ord)
    }

    /// The element of exact multiplicative order `l` with the smallest encoding.
    pub fn root_of_unity(&self, l: u64) -> Result<u32> {
        let q = self.0.q as u64;
        if l == 0 || (q - 1) % l != 0 {
            return Err(Error::UnsupportedOrder { order: l, q });
        }
        (1..self.0.q)
            .find(|&x| self.order(x).map(|o| o == l).unwrap_or(false))
            .ok_or(Error::UnsupportedOrder { order: l, q })
    }

    /// Polynomial-basis coefficients of an encoding, constant term first.
    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.e as usize);
        let mut n = a;
        for _ in 0..self.0.e {
            out.push(n % self.0.p);
            n /= self.0.p;
        }
        out
    }

    pub fn encode(&self, coeffs: &[u32]) -> Result<u32> {
        if coeffs.len() != self.0.e as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::Parameter(format!(
                "expected {} coefficients in [0, {})",
                self.0.e, self.0.p
            )));
        }
        Ok(coeffs.iter().rev().fold(0, |acc, &c| acc * self.0.p + c))
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if !self.contains(value) {
            return Err(Error::Parameter(format!(
                "{value} is not an element of GF({})",
                self.0.q
            )));
        }
        Ok(FieldElement {
            field: self.clone(),
            value,
        })
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }
}

fn digitwise(p: u32, e: u32, a: u32, b: u32, f: impl Fn(u32, u32) -> u32) -> u32 {
    let (mut x, mut y) = (a, b);
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..e {
        out += f(x % p, y % p) * scale;
        x /= p;
        y /= p;
        scale *= p;
    }
    out
}

fn mul_poly_basis(inner: &Inner, a: u32, b: u32) -> u32 {
    let p = inner.p;
    let e = inner.e as usize;
    let digits = |mut n: u32| {
        let mut d = vec![0u32; e];
        for slot in d.iter_mut() {
            *slot = n % p;
            n /= p;
        }
        d
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0u32; 2 * e - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let r = poly_rem_prime(&prod, &inner.modulus, p);
    r.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl Tables {
    fn build(inner: &Inner) -> Self {
        let q = inner.q;
        let (p, e) = (inner.p, inner.e);
        let mut add = vec![0; (q * q) as usize];
        let mut mul = vec![0; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                let idx = (a * q + b) as usize;
                add[idx] = digitwise(p, e, a, b, |x, y| (x + y) % p);
                mul[idx] = mul_poly_basis(inner, a, b);
            }
        }
        let neg = (0..q)
            .map(|a| digitwise(p, e, a, 0, |x, _| (p - x) % p))
            .collect();
        let mut inv = vec![0; q as usize];
        for a in 1..q {
            inv[a as usize] = (1..q).find(|&b| mul[(a * q + b) as usize] == 1).unwrap();
        }
        Tables { add, mul, neg, inv }
    }
}

/// An element bound to its field, with checked arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    value: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in GF({})", self.value, self.field.q())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Canonical integer encoding.
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        Ok(())
    }

    fn with(&self, value: u32) -> Self {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn pow(&self, n: u64) -> Self {
        self.with(self.field.pow(self.value, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Schoolbook product of two encodings reduced by long division; test-only.
    fn schoolbook_mul(p: u32, modulus: &[u32], a: u32, b: u32) -> u32 {
        let e = modulus.len() - 1;
        let dig = |mut n: u32| -> Vec<i64> {
            (0..e)
                .map(|_| {
                    let d = n % p;
                    n /= p;
                    d as i64
                })
                .collect()
        };
        let (x, y) = (dig(a), dig(b));
        let mut prod = vec![0i64; 2 * e];
        for i in 0..e {
            for j in 0..e {
                prod[i + j] += x[i] * y[j];
            }
        }
        for deg in (e..2 * e).rev() {
            let c = prod[deg].rem_euclid(p as i64);
            for (k, &m) in modulus.iter().enumerate() {
                prod[deg - e + k] -= c * m as i64;
            }
        }
        (0..e)
            .rev()
            .fold(0i64, |acc, i| acc * p as i64 + prod[i].rem_euclid(p as i64)) as u32
    }

    #[test]
    fn prime_field_examples() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(f.q(), 3);
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.add(1, 2), 0);
        assert_eq!(f.inv(2).unwrap(), 2);
        assert_eq!(f.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn gf9_canonical_modulus_and_square_of_x() {
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.q(), 9);
        assert_eq!(f.modulus(), &[1, 0, 1]);
        // x is encoded as 3
        let expected = schoolbook_mul(3, f.modulus(), 3, 3);
        assert_eq!(expected, 2);
        assert_eq!(f.mul(3, 3), expected);
    }

    #[test]
    fn even_or_composite_characteristic_rejected() {
        assert!(matches!(make_field(2, 1), Err(Error::Parameter(_))));
        assert!(matches!(make_field(9, 1), Err(Error::Parameter(_))));
        assert!(matches!(make_field(3, 0), Err(Error::Parameter(_))));
        assert!(matches!(make_field(3, 13), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn field_of_order_factors() {
        assert_eq!(field_of_order(9).unwrap(), make_field(3, 2).unwrap());
        assert_eq!(field_of_order(125).unwrap().e(), 3);
        assert!(field_of_order(15).is_err());
        assert!(field_of_order(8).is_err());
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(make_field(3, 1).unwrap().root_of_unity(2).unwrap(), 2);
        // 2^3 = 8 = 1 mod 7 and 2 != 1; 2 is the smallest such encoding.
        assert_eq!(make_field(7, 1).unwrap().root_of_unity(3).unwrap(), 2);
        assert_eq!(
            make_field(5, 1).unwrap().root_of_unity(3),
            Err(Error::UnsupportedOrder { order: 3, q: 5 })
        );
    }

    #[test]
    fn root_of_unity_has_exact_order_by_powering() {
        for (p, e) in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3), (13, 1)] {
            let f = make_field(p, e).unwrap();
            let group = f.q() as u64 - 1;
            for l in (1..=group).filter(|l| group % l == 0) {
                let xi = f.root_of_unity(l).unwrap();
                assert_eq!(f.pow(xi, l), 1);
                for j in 1..l {
                    assert_ne!(f.pow(xi, j), 1, "GF({}) l={l} j={j}", f.q());
                }
            }
        }
    }

    #[test]
    fn large_field_without_tables_matches_schoolbook() {
        let f = make_field(17, 2).unwrap();
        assert!(f.0.tables.is_none());
        for a in (0..f.q()).step_by(7) {
            for b in (0..f.q()).step_by(11) {
                assert_eq!(f.mul(a, b), schoolbook_mul(17, f.modulus(), a, b));
            }
        }
        assert_eq!(f.mul(5, f.inv(5).unwrap()), 1);
    }

    #[test]
    fn encoding_round_trip_exhaustive() {
        for (p, e) in [(3, 1), (3, 2), (5, 2), (3, 4), (7, 2)] {
            let f = make_field(p, e).unwrap();
            for x in f.elements() {
                assert_eq!(f.encode(&f.coeffs(x)).unwrap(), x);
            }
        }
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = make_field(3, 1).unwrap().element(1).unwrap();
        let b = make_field(5, 1).unwrap().element(1).unwrap();
        assert!(matches!(a.add(&b), Err(Error::FieldMismatch(..))));
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn spec_string_round_trip() {
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.to_string(), "3^2:1,0,1");
        assert_eq!("3^2:1,0,1".parse::<FieldSpec>().unwrap(), f);
        assert!("3^2:0,0,1".parse::<FieldSpec>().is_err());
    }

    fn small_field() -> impl Strategy<Value = FieldSpec> {
        prop::sample::select(vec![
            (3u32, 1u32),
            (5, 1),
            (7, 1),
            (3, 2),
            (5, 2),
            (3, 3),
            (3, 4),
        ])
        .prop_map(|(p, e)| make_field(p, e).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(f in small_field(), seed in any::<[u32; 3]>()) {
            let q = f.q();
            let (a, b, c) = (seed[0] % q, seed[1] % q, seed[2] % q);
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                prop_assert_eq!(f.pow(a, q as u64 - 1), 1);
            }
        }
    }
}
