//! Arithmetic in GF(p^m) for small prime powers.
//!
//! Elements are encoded as integers in `[0, q)` whose base-p digits are the
//! coordinates in the polynomial basis `1, t, t^2, ...` (least significant digit
//! is the constant term). For `q <= 2^16` multiplication goes through log/antilog
//! tables; the schoolbook path (polynomial product reduced by the modulus) is
//! always available and is used to build and cross-check the tables.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field order for which log/antilog tables are built.
pub const TABLE_LIMIT: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field order {p}^{m} does not fit the element encoding")]
    UnsupportedSize { p: u32, m: u32 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("no default modulus for GF({p}^{m})")]
    NoDefaultModulus { p: u32, m: u32 },
    #[error("value {0} is not an element of the field")]
    OutOfRange(u64),
}

/// Canonical representative of a field element.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Wire description of a field: `{"p":2,"m":2,"modulus":[1,1,1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDesc {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

struct Tables {
    /// `exp[i] = g^i` for `i in 0..2(q-1)`, doubled so products skip a reduction.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u32>,
}

struct FieldInner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    tables: Option<Tables>,
}

/// A finite field GF(p^m). Cheap to clone and safe to share between threads.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.0.p, self.0.m, self.0.modulus)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Default moduli (Conway polynomials), coefficients low-to-high.
pub fn default_modulus(p: u32, m: u32) -> Option<Vec<u32>> {
    let c: &[u32] = match (p, m) {
        (_, 1) => return Some(vec![0, 1]),
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (2, 6) => &[1, 1, 0, 1, 1, 0, 1],
        (2, 8) => &[1, 0, 1, 1, 1, 0, 0, 0, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (5, 2) => &[2, 4, 1],
        (7, 2) => &[3, 6, 1],
        _ => return None,
    };
    Some(c.to_vec())
}

// Dense polynomials over GF(p), low-to-high, used for construction and the
// schoolbook multiplication path.

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem_p(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bi) in b.iter().enumerate() {
            let sub = (c as u64 * bi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    pow_mod_p(a, p - 2, p)
}

fn pow_mod_p(mut a: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let pm = p as u64;
    let mut base = a as u64 % pm;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % pm;
        }
        base = base * base % pm;
        e >>= 1;
    }
    a = acc as u32;
    a
}

/// Irreducibility by trial division against every monic polynomial of degree
/// `1..=m/2`.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    for deg in 1..=m / 2 {
        let count = (p as u64).pow(deg as u32);
        for code in 0..count {
            let mut divisor = Vec::with_capacity(deg + 1);
            let mut c = code;
            for _ in 0..deg {
                divisor.push((c % p as u64) as u32);
                c /= p as u64;
            }
            divisor.push(1);
            if poly_rem_p(modulus, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds GF(p^m) from a monic modulus given low-to-high.
    pub fn new(p: u32, m: u32, modulus: &[u32]) -> Result<Field, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if m == 0 {
            return Err(GfError::InvalidModulus("extension degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= u32::MAX as u64).ok_or(GfError::UnsupportedSize { p, m })?;
        if modulus.len() != m as usize + 1 {
            return Err(GfError::InvalidModulus(format!("expected {} coefficients, got {}", m + 1, modulus.len())));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(GfError::InvalidModulus("coefficient not reduced mod p".into()));
        }
        if modulus[m as usize] != 1 {
            return Err(GfError::InvalidModulus("modulus must be monic".into()));
        }
        if !is_irreducible(modulus, p) {
            return Err(GfError::ReducibleModulus { p });
        }
        let mut inner = FieldInner { p, m, q: q as u32, modulus: modulus.to_vec(), generator: 0, tables: None };
        inner.generator = find_generator(&inner);
        if q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(Field(Arc::new(inner)))
    }

    /// GF(p^m) with the catalog modulus.
    pub fn with_default_modulus(p: u32, m: u32) -> Result<Field, GfError> {
        let modulus = default_modulus(p, m).ok_or(GfError::NoDefaultModulus { p, m })?;
        Field::new(p, m, &modulus)
    }

    pub fn prime(p: u32) -> Result<Field, GfError> {
        Field::new(p, 1, &[0, 1])
    }

    pub fn from_desc(desc: &FieldDesc) -> Result<Field, GfError> {
        Field::new(desc.p, desc.m, &desc.modulus)
    }

    pub fn desc(&self) -> FieldDesc {
        FieldDesc { p: self.0.p, m: self.0.m, modulus: self.0.modulus.clone() }
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.m
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn has_tables(&self) -> bool {
        self.0.tables.is_some()
    }

    /// A primitive element.
    pub fn generator(&self) -> Elem {
        Elem(self.0.generator)
    }

    /// All elements in canonical order `0, 1, ..., q-1`.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(Elem)
    }

    pub fn elem(&self, v: u64) -> Result<Elem, GfError> {
        if v < self.0.q as u64 {
            Ok(Elem(v as u32))
        } else {
            Err(GfError::OutOfRange(v))
        }
    }

    /// Reduces an integer into the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.0.q
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.0.m == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= p { s - p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        while x > 0 || y > 0 {
            let d = (x % p + y % p) % p;
            out += d * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.m == 1 {
            return Elem(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let mut x = a.0;
        let mut out = 0u32;
        let mut place = 1u32;
        while x > 0 {
            let d = x % p;
            out += ((p - d) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        match &self.0.tables {
            Some(t) => Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_schoolbook(a, b),
        }
    }

    /// Multiplication by polynomial product and reduction modulo the modulus.
    pub fn mul_schoolbook(&self, a: Elem, b: Elem) -> Elem {
        Elem(schoolbook(&self.0, a.0, b.0))
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, GfError> {
        if a.0 == 0 {
            return Err(GfError::DivisionByZero);
        }
        Ok(match &self.0.tables {
            Some(t) => {
                let l = t.log[a.0 as usize];
                Elem(t.exp[((self.0.q - 1 - l) % (self.0.q - 1)) as usize])
            }
            None => self.pow(a, self.0.q as u64 - 2),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        if let Some(t) = &self.0.tables {
            let order = (self.0.q - 1) as u64;
            let l = t.log[a.0 as usize] as u64 * (e % order) % order;
            return Elem(t.exp[l as usize]);
        }
        let mut acc = Elem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Checked element handle bound to this field.
    pub fn element(&self, v: u64) -> Result<FieldElement, GfError> {
        Ok(FieldElement { field: self.clone(), value: self.elem(v)? })
    }

    /// Sum of a sequence of products, the inner kernel of every series action.
    #[inline]
    pub fn dot<I: IntoIterator<Item = (Elem, Elem)>>(&self, pairs: I) -> Elem {
        pairs.into_iter().fold(Elem::ZERO, |acc, (a, b)| self.add(acc, self.mul(a, b)))
    }
}

fn digits(mut x: u32, p: u32, m: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(m as usize);
    for _ in 0..m {
        d.push(x % p);
        x /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &x| acc * p + x)
}

fn schoolbook(f: &FieldInner, a: u32, b: u32) -> u32 {
    let (p, m) = (f.p, f.m);
    let da = digits(a, p, m);
    let db = digits(b, p, m);
    let mut prod = vec![0u32; 2 * m as usize];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let mut r = poly_rem_p(&prod, &f.modulus, p);
    r.resize(m as usize, 0);
    undigits(&r, p)
}

fn find_generator(f: &FieldInner) -> u32 {
    let order = f.q as u64 - 1;
    if order <= 1 {
        return 1;
    }
    let mut prime_factors = Vec::new();
    let mut n = order;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            prime_factors.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        prime_factors.push(n);
    }
    let pow = |a: u32, mut e: u64| {
        let mut acc = 1u32;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = schoolbook(f, acc, base);
            }
            base = schoolbook(f, base, base);
            e >>= 1;
        }
        acc
    };
    (2..f.q)
        .chain(std::iter::once(1))
        .find(|&g| prime_factors.iter().all(|&pf| pow(g, order / pf) != 1))
        .expect("multiplicative group of a finite field is cyclic")
}

fn build_tables(f: &FieldInner) -> Tables {
    let order = (f.q - 1) as usize;
    let mut exp = vec![0u32; 2 * order.max(1)];
    let mut log = vec![0u32; f.q as usize];
    let mut x = 1u32;
    for (i, slot) in exp.iter_mut().take(order).enumerate() {
        *slot = x;
        log[x as usize] = i as u32;
        x = schoolbook(f, x, f.generator);
    }
    for i in order..exp.len() {
        exp[i] = exp[i - order];
    }
    Tables { exp, log }
}

/// An element together with its field; the checked public face of [`Elem`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value.0)
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    fn same_field(&self, other: &FieldElement) -> Result<(), GfError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    fn wrap(&self, value: Elem) -> FieldElement {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, GfError> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, GfError> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, GfError> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> FieldElement {
        self.wrap(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement, GfError> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.wrap(self.field.pow(self.value, e))
    }
}
