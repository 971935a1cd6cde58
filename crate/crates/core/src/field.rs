//! Finite fields GF(p^k) with tabulated arithmetic, plus the involutions
//! (identity and the order-2 Frobenius) used by Hermitian spaces.
//!
//! Elements are encoded as the base-p integer of their coefficient vector,
//! least-significant coefficient first, so `0` is the additive identity and
//! `1` the multiplicative identity in every field.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order representable with the one-byte element encoding.
pub const MAX_FIELD_ORDER: usize = 256;

/// Default cap on `q = p^k`.
pub const DEFAULT_FIELD_CAP: usize = MAX_FIELD_ORDER;

/// Fixed moduli, lowest coefficient first, leading 1 included.
const TABULATED_MODULI: &[(u32, u32, &[u8])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (5, 2, &[2, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
];

/// A field element in its canonical integer encoding.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
#[repr(transparent)]
pub struct FieldElement(u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a raw encoding without range checking; see [`FieldSpec::element`].
    pub const fn from_raw(value: u8) -> Self {
        FieldElement(value)
    }

    pub const fn value(self) -> u8 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Binary and unary field operations, addressable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

struct Tables {
    p: u32,
    k: u32,
    q: usize,
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// `a -> a^(p^(k/2))`, present when `k` is even.
    frobenius: Option<Vec<u8>>,
}

/// A finite field GF(p^k). Cheap to clone; all clones share one set of tables.
#[derive(Clone)]
pub struct FieldSpec(Arc<Tables>);

impl FieldSpec {
    /// Builds GF(p^k) under the default order cap of 256.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        Self::with_cap(p, k, DEFAULT_FIELD_CAP)
    }

    pub fn with_cap(p: u32, k: u32, cap: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::UnsupportedField { p, k });
        }
        let q = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q > cap as u64 {
            return Err(Error::FieldCapExceeded { q, cap });
        }
        if q > MAX_FIELD_ORDER as u64 {
            return Err(Error::UnsupportedField { p, k });
        }
        let modulus = modulus_for(p, k).ok_or(Error::UnsupportedField { p, k })?;
        if !is_irreducible(&modulus, p) {
            return Err(Error::UnsupportedField { p, k });
        }
        Ok(FieldSpec(Arc::new(build_tables(p, k, q as usize, modulus))))
    }

    /// Builds the field of order `q` by factoring `q = p^k`.
    pub fn of_order(q: u64) -> Result<Self> {
        Self::of_order_with_cap(q, DEFAULT_FIELD_CAP)
    }

    pub fn of_order_with_cap(q: u64, cap: usize) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::with_cap(p, k, cap)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> usize {
        self.0.q
    }

    /// Modulus coefficients, lowest degree first, including the leading 1.
    pub fn modulus(&self) -> &[u8] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Checked conversion from an integer encoding.
    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if (value as usize) < self.0.q {
            Ok(FieldElement(value as u8))
        } else {
            Err(Error::ElementOutOfRange { value, order: self.0.q })
        }
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        (a.0 as usize) < self.0.q
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(|v| FieldElement(v as u8))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.0.add[a.0 as usize * self.0.q + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.0.mul[a.0 as usize * self.0.q + b.0 as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(FieldElement(self.0.inv[a.0 as usize]))
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Dispatches `op`. `b` is ignored for the unary operations.
    pub fn arith(&self, op: FieldOp, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        if !self.contains(a) {
            return Err(Error::ElementOutOfRange { value: a.0 as u32, order: self.0.q });
        }
        if matches!(op, FieldOp::Add | FieldOp::Sub | FieldOp::Mul | FieldOp::Div) && !self.contains(b) {
            return Err(Error::ElementOutOfRange { value: b.0 as u32, order: self.0.q });
        }
        match op {
            FieldOp::Add => Ok(self.add(a, b)),
            FieldOp::Sub => Ok(self.sub(a, b)),
            FieldOp::Mul => Ok(self.mul(a, b)),
            FieldOp::Div => self.div(a, b),
            FieldOp::Neg => Ok(self.neg(a)),
            FieldOp::Inv => self.inv(a),
        }
    }

    /// Same field as `other` (characteristic and degree agree; moduli are fixed per pair).
    pub fn same_field(&self, other: &FieldSpec) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.k == other.0.k)
    }

    pub(crate) fn frobenius_table(&self) -> Option<&[u8]> {
        self.0.frobenius.as_deref()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Parses `"GF(q)"`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected GF(q), got {s:?}")))?;
        let q: u64 = inner.trim().parse().map_err(|_| Error::Parse(format!("bad field order in {s:?}")))?;
        FieldSpec::of_order(q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InvolutionKind {
    Identity,
    Frobenius,
}

impl fmt::Display for InvolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvolutionKind::Identity => "id",
            InvolutionKind::Frobenius => "frob",
        })
    }
}

impl FromStr for InvolutionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "id" => Ok(InvolutionKind::Identity),
            "frob" => Ok(InvolutionKind::Frobenius),
            other => Err(Error::Parse(format!("unknown involution {other:?} (expected id or frob)"))),
        }
    }
}

/// An automorphism of order at most two. Over a finite field this is either
/// the identity or `a -> a^(p^(k/2))` for even `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    kind: InvolutionKind,
    field: FieldSpec,
}

impl Involution {
    pub fn identity(field: &FieldSpec) -> Self {
        Involution { kind: InvolutionKind::Identity, field: field.clone() }
    }

    pub fn frobenius(field: &FieldSpec) -> Result<Self> {
        if field.frobenius_table().is_none() {
            return Err(Error::OddDegreeFrobenius(field.order()));
        }
        Ok(Involution { kind: InvolutionKind::Frobenius, field: field.clone() })
    }

    pub fn new(field: &FieldSpec, kind: InvolutionKind) -> Result<Self> {
        match kind {
            InvolutionKind::Identity => Ok(Self::identity(field)),
            InvolutionKind::Frobenius => Self::frobenius(field),
        }
    }

    pub fn kind(&self) -> InvolutionKind {
        self.kind
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_identity(&self) -> bool {
        self.kind == InvolutionKind::Identity
    }

    #[inline]
    pub fn apply(&self, a: FieldElement) -> FieldElement {
        match self.kind {
            InvolutionKind::Identity => a,
            InvolutionKind::Frobenius => {
                let table = self.field.frobenius_table().expect("frobenius involution on even degree");
                FieldElement(table[a.0 as usize])
            }
        }
    }

    /// The fixed field `{a : σ(a) = a}`, by exhaustive scan.
    pub fn fixed_subfield(&self) -> Vec<FieldElement> {
        self.field.elements().filter(|&a| self.apply(a) == a).collect()
    }

    pub fn check_restrictions(&self) -> Restrictions {
        // The centre of a finite field is the whole field, so only |F| matters.
        let r1 = self.fixed_subfield().len() > 3;
        let r2 = !(self.is_identity() && self.field.characteristic() == 2);
        Restrictions { r1, r2 }
    }
}

/// Outcome of the two restriction checks on a (field, involution) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Restrictions {
    /// More than three fixed elements.
    pub r1: bool,
    /// Not (identity involution in characteristic 2).
    pub r2: bool,
}

impl Restrictions {
    pub fn both(self) -> bool {
        self.r1 && self.r2
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Decomposes `q = p^k` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut k = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1 && p <= u32::MAX as u64).then_some((p as u32, k))
}

fn modulus_for(p: u32, k: u32) -> Option<Vec<u8>> {
    if k == 1 {
        return Some(vec![0, 1]);
    }
    if let Some((_, _, m)) = TABULATED_MODULI.iter().find(|(tp, tk, _)| *tp == p && *tk == k) {
        return Some(m.to_vec());
    }
    smallest_irreducible(p, k)
}

/// First monic irreducible of degree `k`, ordering the lower coefficients by
/// their base-p encoding. Reproduces every entry of the fixed table.
pub(crate) fn smallest_irreducible(p: u32, k: u32) -> Option<Vec<u8>> {
    let count = (p as u64).pow(k);
    (0..count).find_map(|code| {
        let mut poly = digits(code, p, k as usize);
        poly.push(1);
        is_irreducible(&poly, p).then_some(poly)
    })
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
pub(crate) fn is_irreducible(poly: &[u8], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 || poly[deg] == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut divisor = digits(code, p, d);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn digits(mut v: u64, p: u32, len: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(len + 1);
    for _ in 0..len {
        out.push((v % p as u64) as u8);
        v /= p as u64;
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u8], m: &[u8], p: u32) -> Vec<u8> {
    let dm = m.len() - 1;
    let mut r: Vec<u32> = a.iter().map(|&c| c as u32).collect();
    while r.len() > dm {
        let lead = r.pop().unwrap() % p;
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                let sub = lead * c as u32 % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
    }
    r.into_iter().map(|c| c as u8).collect()
}

fn build_tables(p: u32, k: u32, q: usize, modulus: Vec<u8>) -> Tables {
    let kk = k as usize;
    let coeffs: Vec<Vec<u8>> = (0..q as u64).map(|v| digits(v, p, kk)).collect();
    let encode = |c: &[u8]| -> u8 { c.iter().rev().fold(0u32, |acc, &d| acc * p + d as u32) as u8 };

    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    for a in 0..q {
        for b in 0..q {
            let sum: Vec<u8> = (0..kk).map(|i| ((coeffs[a][i] as u32 + coeffs[b][i] as u32) % p) as u8).collect();
            add[a * q + b] = encode(&sum);

            let mut prod = vec![0u32; 2 * kk - 1];
            for i in 0..kk {
                for j in 0..kk {
                    prod[i + j] += coeffs[a][i] as u32 * coeffs[b][j] as u32;
                }
            }
            let prod: Vec<u8> = prod.into_iter().map(|c| (c % p) as u8).collect();
            let mut red = poly_rem(&prod, &modulus, p);
            red.resize(kk, 0);
            mul[a * q + b] = encode(&red);
        }
    }

    let mut neg = vec![0u8; q];
    let mut inv = vec![0u8; q];
    for a in 0..q {
        neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8;
        if a != 0 {
            inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8;
        }
    }

    let frobenius = k.is_multiple_of(2).then(|| {
        let e = (p as u64).pow(k / 2);
        (0..q)
            .map(|a| {
                let mut acc = 1u8;
                for _ in 0..e {
                    acc = mul[acc as usize * q + a];
                }
                acc
            })
            .collect()
    });

    Tables { p, k, q, modulus, add, mul, neg, inv, frobenius }
}
