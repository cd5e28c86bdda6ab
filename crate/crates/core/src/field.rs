//! Finite field arithmetic: GF(2^b) for the walk polynomial and GF(p^d) for
//! matroid representations.
//!
//! Elements are stored as packed integers. For characteristic two the packing
//! is the usual bit vector of polynomial coefficients; for odd characteristic
//! an element `c_0 + c_1 x + ... + c_{d-1} x^{d-1}` is stored as
//! `c_0 + c_1 p + ... + c_{d-1} p^{d-1}`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

/// Fields with at most this many bits use log/exp tables for multiplication.
const TABLE_BITS: u32 = 16;
/// Fields this small also get a full product table.
const PRODUCT_BITS: u32 = 10;

/// Primitive (hence irreducible) polynomials over GF(2) for degrees 1..=32,
/// including the leading term.
const BINARY_MODULI: [u64; 33] = [
    0,
    0x3,
    0x7,
    0xB,
    0x13,
    0x25,
    0x43,
    0x83,
    0x11D,
    0x211,
    0x409,
    0x805,
    0x1053,
    0x201B,
    0x4443,
    0x8003,
    0x1100B,
    0x20009,
    0x40081,
    0x80027,
    0x100009,
    0x200005,
    0x400003,
    0x800021,
    0x1000087,
    0x2000009,
    0x4000047,
    0x8000027,
    0x10000009,
    0x20000005,
    0x40800007,
    0x80000009,
    0x100400007,
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("operands belong to different fields: {0} vs {1}")]
    SpecMismatch(String, String),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field of order {characteristic}^{degree} does not fit in 64 bits")]
    TooLarge { characteristic: u64, degree: u32 },
    #[error("no irreducible polynomial of degree {degree} over GF({characteristic})")]
    NoIrreducible { characteristic: u64, degree: u32 },
    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    BadModulus(u32),
}

/// GF(2^b) with `b <= 32`, elements as `u32` bit vectors.
///
/// This is the hot-loop type of the walk dynamic program.
#[derive(Clone)]
pub struct BinaryField {
    bits: u32,
    modulus: u64,
    log: Vec<u32>,
    exp: Vec<u32>,
    product: Vec<u16>,
}

impl fmt::Debug for BinaryField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#x}", self.bits, self.modulus)
    }
}

impl PartialEq for BinaryField {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && self.modulus == other.modulus
    }
}

impl Eq for BinaryField {}

impl BinaryField {
    /// GF(2^bits) with the fixed modulus from the built-in table.
    pub fn new(bits: u32) -> Result<Self, FieldError> {
        if bits == 0 || bits > 32 {
            return Err(FieldError::TooLarge {
                characteristic: 2,
                degree: bits,
            });
        }
        Ok(Self::with_modulus(bits, BINARY_MODULI[bits as usize]))
    }

    fn with_modulus(bits: u32, modulus: u64) -> Self {
        let mut field = BinaryField {
            bits,
            modulus,
            log: Vec::new(),
            exp: Vec::new(),
            product: Vec::new(),
        };
        if bits <= TABLE_BITS {
            field.build_tables();
        }
        if bits <= PRODUCT_BITS {
            let size = 1usize << bits;
            let mut product = vec![0u16; size * size];
            for a in 1..size {
                for b in 1..size {
                    product[(a << bits) | b] =
                        field.exp[(field.log[a] + field.log[b]) as usize] as u16;
                }
            }
            field.product = product;
        }
        field
    }

    fn build_tables(&mut self) {
        let group = (1u64 << self.bits) - 1;
        let generator = (1..=group as u32)
            .find(|&g| self.has_full_order(g))
            .expect("multiplicative group of a finite field is cyclic");
        let group = group as usize;
        let mut exp = vec![0u32; 4 * group + 1];
        let mut log = vec![0u32; group + 1];
        let mut acc = 1u32;
        for (i, slot) in exp.iter_mut().take(group).enumerate() {
            *slot = acc;
            log[acc as usize] = i as u32;
            acc = self.mul_slow(acc, generator);
        }
        for i in group..2 * group {
            exp[i] = exp[i - group];
        }
        // log(0) points into the zero tail so that products with zero vanish
        // without a branch.
        log[0] = 2 * group as u32;
        self.exp = exp;
        self.log = log;
    }

    fn has_full_order(&self, g: u32) -> bool {
        let group = (1u64 << self.bits) - 1;
        prime_factors(group)
            .into_iter()
            .all(|q| self.pow_slow(g, group / q) != 1)
    }

    #[inline]
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let top = 1u64 << self.bits;
        let mut a = a as u64;
        let mut b = b;
        let mut acc = 0u64;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= self.modulus;
            }
        }
        acc as u32
    }

    fn pow_slow(&self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn order(&self) -> u64 {
        1u64 << self.bits
    }

    /// Modulus bit pattern, leading term included.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline(always)]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    #[inline(always)]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if !self.product.is_empty() {
            self.product[((a as usize) << self.bits) | b as usize] as u32
        } else if self.log.is_empty() {
            self.mul_slow(a, b)
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    pub fn pow(&self, base: u32, e: u64) -> u32 {
        let mut acc = 1u32;
        let mut base = base;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32, FieldError> {
        if a == 0 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        if self.bits == 32 {
            rng.gen::<u32>()
        } else {
            rng.gen_range(0..(1u32 << self.bits))
        }
    }
}

#[derive(Clone, Debug)]
enum Kernel {
    Binary(BinaryField),
    Generic,
}

/// A finite field GF(characteristic^degree) given by an explicit irreducible
/// modulus.
#[derive(Clone)]
pub struct FieldSpec {
    characteristic: u64,
    degree: u32,
    modulus: Vec<u64>,
    order: u64,
    kernel: Kernel,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.characteristic == other.characteristic
            && self.degree == other.degree
            && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "GF({})", self.characteristic)
        } else {
            write!(f, "GF({}^{})", self.characteristic, self.degree)
        }
    }
}

/// The field GF(2^b) used for the walk polynomial on an `n`-vertex graph:
/// `b = 3 + ceil(log2 n)`, so the order is at least `8n`.
pub fn build_core_field(n: usize) -> Result<BinaryField, FieldError> {
    let n = n.max(1);
    let ceil_log = usize::BITS - (n - 1).leading_zeros();
    BinaryField::new(3 + ceil_log)
}

impl FieldSpec {
    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Self::from_parts(p, 1, vec![0, 1])
    }

    /// GF(p^degree) with a deterministic modulus: the built-in table for
    /// characteristic two, otherwise the first irreducible polynomial in
    /// enumeration order.
    pub fn new(characteristic: u64, degree: u32) -> Result<Self, FieldError> {
        if !is_prime(characteristic) {
            return Err(FieldError::NotPrime(characteristic));
        }
        if degree == 0 {
            return Err(FieldError::BadModulus(0));
        }
        checked_order(characteristic, degree)?;
        if degree == 1 {
            return Self::prime(characteristic);
        }
        let modulus = if characteristic == 2 && degree <= 32 {
            let bits = BINARY_MODULI[degree as usize];
            (0..=degree).map(|i| (bits >> i) & 1).collect()
        } else {
            find_irreducible(characteristic, degree)?
        };
        Self::from_parts(characteristic, degree, modulus)
    }

    /// Field with an explicitly given monic modulus (low-to-high coefficients).
    pub fn with_modulus(characteristic: u64, modulus: Vec<u64>) -> Result<Self, FieldError> {
        if !is_prime(characteristic) {
            return Err(FieldError::NotPrime(characteristic));
        }
        let degree = modulus.len().saturating_sub(1) as u32;
        if degree == 0
            || modulus[degree as usize] != 1
            || modulus.iter().any(|&c| c >= characteristic)
            || !is_irreducible(&modulus, characteristic)
        {
            return Err(FieldError::BadModulus(degree));
        }
        Self::from_parts(characteristic, degree, modulus)
    }

    fn from_parts(characteristic: u64, degree: u32, modulus: Vec<u64>) -> Result<Self, FieldError> {
        let order = checked_order(characteristic, degree)?;
        let kernel = if characteristic == 2 && degree <= 32 {
            let bits = modulus
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | (c << i));
            Kernel::Binary(BinaryField::with_modulus(degree, bits))
        } else {
            Kernel::Generic
        };
        Ok(FieldSpec {
            characteristic,
            degree,
            modulus,
            order,
            kernel,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Monic modulus, lowest coefficient first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.degree == 1
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        1
    }

    /// Coefficient vector (length `degree`) of a packed element.
    pub fn coeffs(&self, mut a: u64) -> Vec<u64> {
        let mut out = vec![0; self.degree as usize];
        for slot in out.iter_mut() {
            *slot = a % self.characteristic;
            a /= self.characteristic;
        }
        out
    }

    /// Packs a coefficient vector; coefficients are reduced mod the
    /// characteristic and the vector may be shorter than `degree`.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> u64 {
        coeffs
            .iter()
            .take(self.degree as usize)
            .rev()
            .fold(0u64, |acc, &c| acc * self.characteristic + c % self.characteristic)
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, v: i64) -> u64 {
        v.rem_euclid(self.characteristic as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        match &self.kernel {
            Kernel::Binary(_) => a ^ b,
            Kernel::Generic if self.degree == 1 => (a + b) % self.characteristic,
            Kernel::Generic => {
                let p = self.characteristic;
                let (x, y) = (self.coeffs(a), self.coeffs(b));
                let sum: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % p).collect();
                self.from_coeffs(&sum)
            }
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        match &self.kernel {
            Kernel::Binary(_) => a,
            Kernel::Generic => {
                let p = self.characteristic;
                let c: Vec<u64> = self.coeffs(a).iter().map(|&u| (p - u) % p).collect();
                self.from_coeffs(&c)
            }
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.kernel {
            Kernel::Binary(bf) => bf.mul(a as u32, b as u32) as u64,
            Kernel::Generic if self.degree == 1 => {
                ((a as u128 * b as u128) % self.characteristic as u128) as u64
            }
            Kernel::Generic => {
                let p = self.characteristic;
                let product = poly_mul(&self.coeffs(a), &self.coeffs(b), p);
                let reduced = poly_rem(&product, &self.modulus, p);
                self.from_coeffs(&reduced)
            }
        }
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64, FieldError> {
        if a == 0 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(a, self.order - 2))
    }

    /// Uniform element; deterministic for a seeded generator.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.order)
    }

    /// All elements in packed order. Intended for small fields only.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.order
    }
}

fn checked_order(p: u64, degree: u32) -> Result<u64, FieldError> {
    p.checked_pow(degree).ok_or(FieldError::TooLarge {
        characteristic: p,
        degree,
    })
}

/// An element tied to its field.
#[derive(Clone)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    repr: u64,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr && *self.spec == *other.spec
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@{}", self.spec.coeffs(self.repr), self.spec)
    }
}

impl FieldElement {
    pub fn new(spec: &Arc<FieldSpec>, repr: u64) -> Self {
        FieldElement {
            spec: Arc::clone(spec),
            repr: repr % spec.order,
        }
    }

    pub fn zero(spec: &Arc<FieldSpec>) -> Self {
        Self::new(spec, 0)
    }

    pub fn one(spec: &Arc<FieldSpec>) -> Self {
        Self::new(spec, 1)
    }

    pub fn random<R: Rng + ?Sized>(spec: &Arc<FieldSpec>, rng: &mut R) -> Self {
        Self::new(spec, spec.sample(rng))
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn repr(&self) -> u64 {
        self.repr
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.spec.coeffs(self.repr)
    }

    pub fn is_zero(&self) -> bool {
        self.repr == 0
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if *self.spec == *other.spec {
            Ok(())
        } else {
            Err(FieldError::SpecMismatch(
                self.spec.to_string(),
                other.spec.to_string(),
            ))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(Self::new(&self.spec, self.spec.add(self.repr, other.repr)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(Self::new(&self.spec, self.spec.sub(self.repr, other.repr)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(Self::new(&self.spec, self.spec.mul(self.repr, other.repr)))
    }

    pub fn inverse(&self) -> Result<Self, FieldError> {
        Ok(Self::new(&self.spec, self.spec.inv(self.repr)?))
    }

    pub fn pow(&self, e: u64) -> Self {
        Self::new(&self.spec, self.spec.pow(self.repr, e))
    }
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> FieldElement {
        self.try_add(rhs).expect("field mismatch in addition")
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> FieldElement {
        self.try_sub(rhs).expect("field mismatch in subtraction")
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> FieldElement {
        self.try_mul(rhs).expect("field mismatch in multiplication")
    }
}

/// A field extension together with the embedding of the base field.
#[derive(Clone, Debug)]
pub struct FieldExtension {
    pub base: FieldSpec,
    pub field: FieldSpec,
    /// Image of the base generator `x`; a root of the base modulus.
    root: u64,
}

impl FieldExtension {
    pub fn is_trivial(&self) -> bool {
        self.base == self.field
    }

    /// Maps a base element into the extension field.
    pub fn embed(&self, a: u64) -> u64 {
        if self.is_trivial() {
            return a;
        }
        let coeffs = self.base.coeffs(a);
        // Horner over the root; constants of the prime subfield pack as
        // themselves.
        coeffs.iter().rev().fold(0u64, |acc, &c| {
            self.field.add(self.field.mul(acc, self.root), c)
        })
    }
}

/// Smallest extension `GF(p^(d*i))` of `base` whose order is at least
/// `min_order`.
pub fn extend_field(base: &FieldSpec, min_order: u64) -> Result<FieldExtension, FieldError> {
    let mut factor = 1u32;
    loop {
        let degree = base.degree * factor;
        let order = checked_order(base.characteristic, degree)?;
        if order >= min_order {
            break;
        }
        factor += 1;
    }
    if factor == 1 {
        return Ok(FieldExtension {
            base: base.clone(),
            field: base.clone(),
            root: base.characteristic.min(base.order - 1),
        });
    }
    let field = FieldSpec::new(base.characteristic, base.degree * factor)?;
    let root = if base.degree == 1 {
        0
    } else {
        // Every degree-d irreducible splits in GF(p^(d*i)); brute-force a root.
        field
            .elements()
            .find(|&z| {
                base.modulus
                    .iter()
                    .rev()
                    .fold(0u64, |acc, &c| field.add(field.mul(acc, z), c))
                    == 0
            })
            .ok_or(FieldError::NoIrreducible {
                characteristic: base.characteristic,
                degree: base.degree * factor,
            })?
    };
    Ok(FieldExtension {
        base: base.clone(),
        field,
        root,
    })
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
        }
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = (lead as u128 * c as u128 % p as u128) as u64;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

/// Trial division by every monic polynomial of degree `1..=d/2`.
pub fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let poly = trim(poly.to_vec());
    if poly.len() < 2 {
        return false;
    }
    let d = poly.len() - 1;
    // Normalise to monic.
    let lead = *poly.last().unwrap();
    let lead_inv = FieldSpec::prime(p)
        .map(|f| f.inv(lead).unwrap_or(1))
        .unwrap_or(1);
    let monic: Vec<u64> = poly
        .iter()
        .map(|&c| (c as u128 * lead_inv as u128 % p as u128) as u64)
        .collect();
    for e in 1..=d / 2 {
        let count = p.pow(e as u32);
        for low in 0..count {
            let mut divisor = Vec::with_capacity(e + 1);
            let mut v = low;
            for _ in 0..e {
                divisor.push(v % p);
                v /= p;
            }
            divisor.push(1);
            if poly_rem(&monic, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible polynomial of the given degree, enumerating lower
/// coefficients as base-p integers.
pub fn find_irreducible(p: u64, degree: u32) -> Result<Vec<u64>, FieldError> {
    let count = checked_order(p, degree)?;
    for low in 0..count {
        let mut poly = Vec::with_capacity(degree as usize + 1);
        let mut v = low;
        for _ in 0..degree {
            poly.push(v % p);
            v /= p;
        }
        poly.push(1);
        if is_irreducible(&poly, p) {
            return Ok(poly);
        }
    }
    Err(FieldError::NoIrreducible {
        characteristic: p,
        degree,
    })
}
