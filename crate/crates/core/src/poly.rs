//! Sparse multivariate polynomials over a finite field, exponents, and the
//! weighted graded monomial order used throughout the crate.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

use crate::gf::{Elem, Field};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("leading exponent of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("arity mismatch: expected {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("vanishing product of an empty point set")]
    EmptySupport,
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error("cannot parse polynomial {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// A point of `N^r`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Exponent(pub SmallVec<[u32; 4]>);

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl From<&[u32]> for Exponent {
    fn from(v: &[u32]) -> Self {
        Exponent(SmallVec::from_slice(v))
    }
}

impl From<Vec<u32>> for Exponent {
    fn from(v: Vec<u32>) -> Self {
        Exponent(SmallVec::from_vec(v))
    }
}

impl<const N: usize> From<[u32; N]> for Exponent {
    fn from(v: [u32; N]) -> Self {
        Exponent(SmallVec::from_slice(&v))
    }
}

impl Exponent {
    pub fn zero(r: usize) -> Self {
        Exponent(SmallVec::from_elem(0, r))
    }

    pub fn unit(r: usize, i: usize) -> Self {
        let mut e = Self::zero(r);
        e.0[i] = 1;
        e
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// The partial order `<=_+` (componentwise).
    #[inline]
    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, or `None` when some component would go negative.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a.checked_sub(*b)).collect::<Option<SmallVec<_>>>().map(Exponent)
    }

    /// Componentwise maximum (least common multiple of monomials).
    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// Weighted graded order: compare `wdeg` first, then lexicographically with
/// `X1 > X2 > ... > Xr`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOrder {
    weights: Vec<u32>,
}

impl MonomialOrder {
    pub fn weighted(weights: Vec<u32>) -> Result<Self, PolyError> {
        if weights.is_empty() {
            return Err(PolyError::InvalidOrder("at least one variable is required".into()));
        }
        if weights.contains(&0) {
            return Err(PolyError::InvalidOrder("weights must be positive".into()));
        }
        Ok(MonomialOrder { weights })
    }

    /// Graded lex with unit weights.
    pub fn graded(r: usize) -> Self {
        MonomialOrder { weights: vec![1; r] }
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    #[inline]
    pub fn wdeg(&self, e: &Exponent) -> u64 {
        e.0.iter().zip(&self.weights).map(|(&a, &w)| a as u64 * w as u64).sum()
    }

    #[inline]
    pub fn cmp(&self, a: &Exponent, b: &Exponent) -> Ordering {
        self.wdeg(a).cmp(&self.wdeg(b)).then_with(|| a.0.cmp(&b.0))
    }

    pub fn less(&self, a: &Exponent, b: &Exponent) -> bool {
        self.cmp(a, b) == Ordering::Less
    }

    pub fn max<'a>(&self, a: &'a Exponent, b: &'a Exponent) -> &'a Exponent {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }

    /// All exponents with `wdeg <= bound`, sorted ascending in this order.
    pub fn initial_segment(&self, bound: u64) -> Vec<Exponent> {
        let r = self.arity();
        let mut out = Vec::new();
        let mut cur = Exponent::zero(r);
        fn rec(ord: &MonomialOrder, i: usize, budget: u64, cur: &mut Exponent, out: &mut Vec<Exponent>) {
            if i == cur.arity() {
                out.push(cur.clone());
                return;
            }
            let w = ord.weights[i] as u64;
            let mut k = 0u64;
            while k * w <= budget {
                cur.0[i] = k as u32;
                rec(ord, i + 1, budget - k * w, cur, out);
                k += 1;
            }
            cur.0[i] = 0;
        }
        rec(self, 0, bound, &mut cur, &mut out);
        out.sort_by(|a, b| self.cmp(a, b));
        out
    }
}

/// Sparse polynomial in `F[X1, ..., Xr]`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Exponent, Elem>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl MultiPoly {
    pub fn zero(field: &Field, nvars: usize) -> Self {
        MultiPoly { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &Field, nvars: usize, c: Elem) -> Self {
        Self::monomial(field, c, Exponent::zero(nvars))
    }

    pub fn one(field: &Field, nvars: usize) -> Self {
        Self::constant(field, nvars, Elem::ONE)
    }

    pub fn monomial(field: &Field, c: Elem, e: Exponent) -> Self {
        let mut p = Self::zero(field, e.arity());
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// The variable `X_{i+1}` (0-based index).
    pub fn var(field: &Field, nvars: usize, i: usize) -> Self {
        Self::monomial(field, Elem::ONE, Exponent::unit(nvars, i))
    }

    /// Builds a polynomial from `(coefficient, exponent)` pairs, summing repeats.
    pub fn from_terms<I>(field: &Field, nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Elem, Exponent)>,
    {
        let mut p = Self::zero(field, nvars);
        for (c, e) in terms {
            if e.arity() != nvars {
                return Err(PolyError::ArityMismatch { expected: nvars, got: e.arity() });
            }
            p.add_term(c, e);
        }
        Ok(p)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exponent) -> Elem {
        self.terms.get(e).copied().unwrap_or(Elem::ZERO)
    }

    /// Terms in the internal (lexicographic) storage order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, Elem)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    /// Terms sorted descending in `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(Exponent, Elem)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, &c)| (e.clone(), c)).collect();
        v.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        v
    }

    pub fn add_term(&mut self, c: Elem, e: Exponent) {
        if c.is_zero() {
            return;
        }
        let f = self.field.clone();
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Leading exponent with respect to `ord`.
    pub fn leading_exponent(&self, ord: &MonomialOrder) -> Result<Exponent, PolyError> {
        self.leading_term(ord).map(|(e, _)| e)
    }

    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(Exponent, Elem), PolyError> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(a.0, b.0))
            .map(|(e, &c)| (e.clone(), c))
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// Componentwise maximum exponent over the support (zero for the zero polynomial).
    pub fn degree_box(&self) -> Exponent {
        self.terms.keys().fold(Exponent::zero(self.nvars), |acc, e| acc.lcm(e))
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(PolyError::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(PolyError::ArityMismatch { expected: self.nvars, got: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_scaled_shifted(Elem::ONE, None, other);
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_scaled_shifted(self.field.neg(Elem::ONE), None, other);
        Ok(out)
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_compatible(other)?;
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (e, &c) in &self.terms {
            out.add_scaled_shifted(c, Some(e), other);
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(self.field.neg(Elem::ONE))
    }

    pub fn scale(&self, c: Elem) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.field, self.nvars);
        }
        MultiPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, &x)| (e.clone(), self.field.mul(c, x))).collect(),
        }
    }

    /// Multiplication by the monomial `X^shift`.
    pub fn shift(&self, shift: &Exponent) -> MultiPoly {
        MultiPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, &c)| (e.add(shift), c)).collect(),
        }
    }

    /// `self += c * X^shift * other`; both operands must share field and arity.
    pub fn add_scaled_shifted(&mut self, c: Elem, shift: Option<&Exponent>, other: &MultiPoly) {
        debug_assert!(self.field == other.field && self.nvars == other.nvars);
        if c.is_zero() {
            return;
        }
        for (e, &x) in &other.terms {
            let e = match shift {
                Some(s) => e.add(s),
                None => e.clone(),
            };
            let v = self.field.mul(c, x);
            self.add_term(v, e);
        }
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self, ord: &MonomialOrder) -> Result<MultiPoly, PolyError> {
        let (_, lc) = self.leading_term(ord)?;
        Ok(self.scale(self.field.inv(lc).expect("leading coefficient is nonzero")))
    }

    /// Evaluates `X^e` at `point`, with `0^0 = 1`.
    pub fn eval_monomial(field: &Field, e: &Exponent, point: &[Elem]) -> Elem {
        e.0.iter().zip(point).fold(Elem::ONE, |acc, (&k, &x)| field.mul(acc, field.pow(x, k as u64)))
    }

    pub fn eval(&self, point: &[Elem]) -> Result<Elem, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::ArityMismatch { expected: self.nvars, got: point.len() });
        }
        if point.iter().any(|&x| !self.field.contains(x)) {
            return Err(PolyError::FieldMismatch);
        }
        Ok(self.eval_unchecked(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[Elem]) -> Elem {
        self.terms.iter().fold(Elem::ZERO, |acc, (e, &c)| {
            self.field.add(acc, self.field.mul(c, Self::eval_monomial(&self.field, e, point)))
        })
    }

    /// Text form with terms in descending `ord`, e.g. `2*X1^2*X2 + 1`.
    pub fn to_text(&self, ord: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (e, c) in self.sorted_terms(ord) {
            let mut factors = Vec::new();
            if c != Elem::ONE || e.is_zero() {
                factors.push(c.to_string());
            }
            for (i, &k) in e.0.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(format!("X{}", i + 1)),
                    _ => factors.push(format!("X{}^{}", i + 1, k)),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }

    /// Parses the text form. Accepts `-` between terms (negating the term), integer
    /// coefficients as canonical field encodings, and `Xi` / `Xi^k` factors.
    pub fn parse(field: &Field, nvars: usize, text: &str) -> Result<MultiPoly, PolyError> {
        let err = |reason: &str| PolyError::Parse { text: text.to_string(), reason: reason.into() };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        let mut out = MultiPoly::zero(field, nvars);
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negative = false;
        for ch in compact.chars() {
            if ch == '+' || ch == '-' {
                if !cur.is_empty() {
                    chunks.push((negative, std::mem::take(&mut cur)));
                } else if !chunks.is_empty() || negative {
                    return Err(err("dangling sign"));
                }
                negative = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(err("trailing sign"));
        }
        chunks.push((negative, cur));
        for (neg, term) in chunks {
            let mut coeff = Elem::ONE;
            let mut e = Exponent::zero(nvars);
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(err("empty factor"));
                }
                if let Some(rest) = factor.strip_prefix('X').or_else(|| factor.strip_prefix('x')) {
                    let (idx, pow) = match rest.split_once('^') {
                        Some((i, k)) => (i, k.parse::<u32>().map_err(|_| err("bad exponent"))?),
                        None => (rest, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| err("bad variable index"))?;
                    if idx == 0 || idx > nvars {
                        return Err(err("variable index out of range"));
                    }
                    e.0[idx - 1] += pow;
                } else {
                    let v: u64 = factor.parse().map_err(|_| err("bad coefficient"))?;
                    let c = field.elem(v).map_err(|_| err("coefficient outside the field"))?;
                    coeff = field.mul(coeff, c);
                }
            }
            if neg {
                coeff = field.neg(coeff);
            }
            out.add_term(coeff, e);
        }
        Ok(out)
    }
}

/// The product `prod_i prod_j (X_i - a_i^{(j)})`, which vanishes on every given point.
/// Repeated coordinates are kept as repeated factors.
pub fn vanishing_product(field: &Field, points: &[Vec<Elem>]) -> Result<MultiPoly, PolyError> {
    let first = points.first().ok_or(PolyError::EmptySupport)?;
    let r = first.len();
    if r == 0 {
        return Err(PolyError::ArityMismatch { expected: 1, got: 0 });
    }
    let mut out = MultiPoly::one(field, r);
    for pt in points {
        if pt.len() != r {
            return Err(PolyError::ArityMismatch { expected: r, got: pt.len() });
        }
        for (i, &a) in pt.iter().enumerate() {
            if !field.contains(a) {
                return Err(PolyError::FieldMismatch);
            }
            let mut factor = MultiPoly::var(field, r, i);
            factor.add_term(field.neg(a), Exponent::zero(r));
            out = out.mul(&factor)?;
        }
    }
    Ok(out)
}
