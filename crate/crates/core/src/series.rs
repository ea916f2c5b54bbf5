//! Truncated power series in `F[[Y1, ..., Yr]]` and the shift action of
//! polynomials (and polynomial matrices) on them.
//!
//! A series is stored densely on a box `{a : a <=_+ B}`. Acting with `d(X)` sends
//! `W` to `sum_a (sum_b d_b W_{a+b}) Y^a`; on a truncation the result is only
//! defined where every `W_{a+b}` is available, so the output box shrinks by the
//! componentwise maximum exponent of `d`. When the box would become negative the
//! result is an empty series, and kernel tests on it are undecided.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Elem, Field};
use crate::poly::{Exponent, MultiPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("arity mismatch: expected {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("coefficient count {got} does not match box size {expected}")]
    BadLength { expected: usize, got: usize },
    #[error("coefficient {0} is not a field element")]
    BadCoefficient(u32),
}

/// Dense truncation of a power series on the box `0 <=_+ a <=_+ B`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    field: Field,
    /// Side lengths `B_i + 1`; a zero entry means the box is empty.
    dims: Vec<usize>,
    coeffs: Vec<Elem>,
}

impl std::fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TruncatedSeries").field("dims", &self.dims).field("coeffs", &self.coeffs).finish()
    }
}

/// JSON form: `{"r":2,"box":[4,3],"coeffs":[...]}` with coefficients row-major
/// (last index fastest). An empty box is written with a `-1` component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub r: usize,
    #[serde(rename = "box")]
    pub bound: Vec<i64>,
    pub coeffs: Vec<u32>,
}

/// Outcome of a kernel-membership test on a truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelVerdict {
    /// Every checked coefficient of `R o W` is zero.
    Holds,
    /// First nonzero coefficient found, as (row, index).
    Fails { row: usize, at: Exponent },
    /// The output box is empty, nothing could be checked.
    Undecided,
}

impl KernelVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, KernelVerdict::Holds)
    }
}

impl TruncatedSeries {
    pub fn zeros(field: &Field, bound: &Exponent) -> Self {
        let dims: Vec<usize> = bound.as_slice().iter().map(|&b| b as usize + 1).collect();
        let len = dims.iter().product();
        TruncatedSeries { field: field.clone(), dims, coeffs: vec![Elem::ZERO; len] }
    }

    pub fn empty(field: &Field, r: usize) -> Self {
        TruncatedSeries { field: field.clone(), dims: vec![0; r], coeffs: Vec::new() }
    }

    pub fn from_fn<F: FnMut(&Exponent) -> Elem>(field: &Field, bound: &Exponent, mut f: F) -> Self {
        let mut s = Self::zeros(field, bound);
        let idx: Vec<Exponent> = s.indices().collect();
        for (slot, e) in s.coeffs.iter_mut().zip(idx.iter()) {
            *slot = f(e);
        }
        s
    }

    pub fn from_coeffs(field: &Field, bound: &Exponent, coeffs: Vec<Elem>) -> Result<Self, SeriesError> {
        let mut s = Self::zeros(field, bound);
        if coeffs.len() != s.coeffs.len() {
            return Err(SeriesError::BadLength { expected: s.coeffs.len(), got: coeffs.len() });
        }
        if let Some(bad) = coeffs.iter().find(|c| !field.contains(**c)) {
            return Err(SeriesError::BadCoefficient(bad.value()));
        }
        s.coeffs = coeffs;
        Ok(s)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Inclusive upper corner of the box, `None` when empty.
    pub fn bound(&self) -> Option<Exponent> {
        if self.is_empty() {
            None
        } else {
            Some(Exponent::from(self.dims.iter().map(|&d| d as u32 - 1).collect::<Vec<_>>()))
        }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn contains(&self, e: &Exponent) -> bool {
        e.arity() == self.dims.len() && e.as_slice().iter().zip(&self.dims).all(|(&a, &d)| (a as usize) < d)
    }

    #[inline]
    fn offset(&self, e: &[u32]) -> usize {
        e.iter().zip(&self.dims).fold(0usize, |acc, (&a, &d)| acc * d + a as usize)
    }

    pub fn get(&self, e: &Exponent) -> Option<Elem> {
        if self.contains(e) {
            Some(self.coeffs[self.offset(e.as_slice())])
        } else {
            None
        }
    }

    /// Panics if `e` is outside the box.
    pub fn set(&mut self, e: &Exponent, v: Elem) {
        assert!(self.contains(e), "index {e:?} outside series box");
        let o = self.offset(e.as_slice());
        self.coeffs[o] = v;
    }

    /// Exponents of the box in storage order.
    pub fn indices(&self) -> BoxIter {
        BoxIter::new(&self.dims)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// First nonzero coefficient in storage order.
    pub fn first_nonzero(&self) -> Option<Exponent> {
        self.indices().zip(self.coeffs.iter()).find(|(_, c)| !c.is_zero()).map(|(e, _)| e)
    }

    /// Restriction to a sub-box (clamped to the available one).
    pub fn restrict(&self, bound: &Exponent) -> TruncatedSeries {
        if self.is_empty() {
            return self.clone();
        }
        let own = self.bound().expect("nonempty");
        let b = own.meet(bound);
        TruncatedSeries::from_fn(&self.field, &b, |e| self.get(e).expect("inside"))
    }

    /// Sum on the common box.
    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    pub fn scale(&self, c: Elem) -> TruncatedSeries {
        let mut out = self.clone();
        for x in &mut out.coeffs {
            *x = self.field.mul(c, *x);
        }
        out
    }

    fn zip_with<F: Fn(&Field, Elem, Elem) -> Elem>(
        &self,
        other: &TruncatedSeries,
        op: F,
    ) -> Result<TruncatedSeries, SeriesError> {
        if self.field != other.field {
            return Err(SeriesError::FieldMismatch);
        }
        if self.nvars() != other.nvars() {
            return Err(SeriesError::ArityMismatch { expected: self.nvars(), got: other.nvars() });
        }
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| *a.min(b)).collect();
        if dims.contains(&0) {
            return Ok(TruncatedSeries::empty(&self.field, self.nvars()));
        }
        let bound = Exponent::from(dims.iter().map(|&d| d as u32 - 1).collect::<Vec<_>>());
        Ok(TruncatedSeries::from_fn(&self.field, &bound, |e| {
            op(&self.field, self.get(e).expect("inside"), other.get(e).expect("inside"))
        }))
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            r: self.nvars(),
            bound: self.dims.iter().map(|&d| d as i64 - 1).collect(),
            coeffs: self.coeffs.iter().map(|c| c.value()).collect(),
        }
    }

    pub fn from_json(field: &Field, json: &SeriesJson) -> Result<TruncatedSeries, SeriesError> {
        if json.bound.len() != json.r {
            return Err(SeriesError::ArityMismatch { expected: json.r, got: json.bound.len() });
        }
        if json.bound.iter().any(|&b| b < 0) {
            if !json.coeffs.is_empty() {
                return Err(SeriesError::BadLength { expected: 0, got: json.coeffs.len() });
            }
            return Ok(TruncatedSeries::empty(field, json.r));
        }
        let bound = Exponent::from(json.bound.iter().map(|&b| b as u32).collect::<Vec<_>>());
        TruncatedSeries::from_coeffs(field, &bound, json.coeffs.iter().map(|&c| Elem(c)).collect())
    }
}

/// Iterates all exponents of a box `prod [0, dims_i)` with the last index fastest.
pub struct BoxIter {
    dims: Vec<usize>,
    cur: Vec<u32>,
    done: bool,
}

impl BoxIter {
    pub fn new(dims: &[usize]) -> Self {
        BoxIter { dims: dims.to_vec(), cur: vec![0; dims.len()], done: dims.contains(&0) }
    }

    /// All exponents `<=_+ bound`.
    pub fn up_to(bound: &Exponent) -> Self {
        let dims: Vec<usize> = bound.as_slice().iter().map(|&b| b as usize + 1).collect();
        Self::new(&dims)
    }
}

impl Iterator for BoxIter {
    type Item = Exponent;

    fn next(&mut self) -> Option<Exponent> {
        if self.done {
            return None;
        }
        let out = Exponent::from(self.cur.as_slice());
        let mut i = self.dims.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.cur[i] += 1;
            if (self.cur[i] as usize) < self.dims[i] {
                break;
            }
            self.cur[i] = 0;
        }
        Some(out)
    }
}

fn check_pair(d: &MultiPoly, w: &TruncatedSeries) -> Result<(), SeriesError> {
    if d.field() != w.field() {
        return Err(SeriesError::FieldMismatch);
    }
    if d.nvars() != w.nvars() {
        return Err(SeriesError::ArityMismatch { expected: w.nvars(), got: d.nvars() });
    }
    Ok(())
}

/// Output box of `act(d, w)`: `B - maxdeg(d)`, or `None` if some component is negative.
fn action_dims(d: &MultiPoly, w: &TruncatedSeries) -> Option<Vec<usize>> {
    let reach = d.degree_box();
    w.dims.iter().zip(reach.as_slice()).map(|(&dim, &k)| dim.checked_sub(k as usize).filter(|&x| x > 0)).collect()
}

/// The action `d(X) o W(Y)` on a truncation.
pub fn act(d: &MultiPoly, w: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    check_pair(d, w)?;
    let field = w.field();
    let Some(dims) = action_dims(d, w) else {
        return Ok(TruncatedSeries::empty(field, w.nvars()));
    };
    let len: usize = dims.iter().product();
    let mut out = TruncatedSeries { field: field.clone(), dims: dims.clone(), coeffs: vec![Elem::ZERO; len] };
    // Accumulate one shifted, scaled copy of `w` per term of `d`.
    let mut shifted = vec![0u32; dims.len()];
    for (beta, c) in d.terms() {
        for (k, alpha) in BoxIter::new(&dims).enumerate() {
            for ((s, a), b) in shifted.iter_mut().zip(alpha.as_slice()).zip(beta.as_slice()) {
                *s = a + b;
            }
            let x = w.coeffs[w.offset(&shifted)];
            if !x.is_zero() {
                out.coeffs[k] = field.add(out.coeffs[k], field.mul(c, x));
            }
        }
    }
    Ok(out)
}

/// Single coefficient `sum_b d_b W_{t+b}`; `None` if some needed input is missing.
pub fn act_at(d: &MultiPoly, w: &TruncatedSeries, t: &Exponent) -> Option<Elem> {
    let field = w.field();
    let mut acc = Elem::ZERO;
    for (beta, c) in d.terms() {
        let x = w.get(&beta.add(t))?;
        acc = field.add(acc, field.mul(c, x));
    }
    Some(acc)
}

/// `l` series on a shared box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesVector(Vec<TruncatedSeries>);

impl SeriesVector {
    pub fn new(parts: Vec<TruncatedSeries>) -> Result<Self, SeriesError> {
        if let Some(first) = parts.first() {
            for s in &parts[1..] {
                if s.field != first.field {
                    return Err(SeriesError::FieldMismatch);
                }
                if s.dims != first.dims {
                    return Err(SeriesError::DimensionMismatch("components must share one box".into()));
                }
            }
        }
        Ok(SeriesVector(parts))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn components(&self) -> &[TruncatedSeries] {
        &self.0
    }

    pub fn into_components(self) -> Vec<TruncatedSeries> {
        self.0
    }
}

/// A `k x l` matrix of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: Vec<Vec<MultiPoly>>,
    cols: usize,
}

impl PolyMatrix {
    pub fn new(rows: Vec<Vec<MultiPoly>>) -> Result<Self, SeriesError> {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(SeriesError::DimensionMismatch("ragged polynomial matrix".into()));
        }
        let mut all = rows.iter().flatten();
        if let Some(first) = all.next() {
            for p in all {
                if p.field() != first.field() {
                    return Err(SeriesError::FieldMismatch);
                }
                if p.nvars() != first.nvars() {
                    return Err(SeriesError::ArityMismatch { expected: first.nvars(), got: p.nvars() });
                }
            }
        }
        Ok(PolyMatrix { rows, cols })
    }

    /// The `k x 1` column of a polynomial list.
    pub fn column(polys: Vec<MultiPoly>) -> Result<Self, SeriesError> {
        Self::new(polys.into_iter().map(|p| vec![p]).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.rows[i][j]
    }
}

/// `R(X) o W(Y)`: component `i` is `sum_j act(R_ij, W_j)` on the common box.
pub fn act_matrix(r: &PolyMatrix, w: &SeriesVector) -> Result<SeriesVector, SeriesError> {
    if r.ncols() != w.len() {
        return Err(SeriesError::DimensionMismatch(format!(
            "matrix has {} columns, vector has {} components",
            r.ncols(),
            w.len()
        )));
    }
    let mut out = Vec::with_capacity(r.nrows());
    for row in &r.rows {
        let mut acc: Option<TruncatedSeries> = None;
        for (p, s) in row.iter().zip(w.components()) {
            let term = act(p, s)?;
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term)?,
            });
        }
        let acc = match acc {
            Some(a) => a,
            None => return Err(SeriesError::DimensionMismatch("matrix with zero columns".into())),
        };
        out.push(acc);
    }
    // Bring every component to the common (minimal) box.
    if let Some(min_dims) =
        out.iter().map(|s| s.dims.clone()).reduce(|a, b| a.iter().zip(&b).map(|(x, y)| *x.min(y)).collect())
    {
        if min_dims.contains(&0) {
            let r = min_dims.len();
            out = out.iter().map(|s| TruncatedSeries::empty(&s.field, r)).collect();
        } else {
            let bound = Exponent::from(min_dims.iter().map(|&d| d as u32 - 1).collect::<Vec<_>>());
            out = out.iter().map(|s| s.restrict(&bound)).collect();
        }
    }
    SeriesVector::new(out)
}

/// Whether `W` lies in `ker R(X)` as far as the truncation can tell.
pub fn is_in_kernel(r: &PolyMatrix, w: &SeriesVector) -> Result<KernelVerdict, SeriesError> {
    let image = act_matrix(r, w)?;
    if image.components().iter().any(|s| s.is_empty()) || image.is_empty() {
        return Ok(KernelVerdict::Undecided);
    }
    for (row, s) in image.components().iter().enumerate() {
        if let Some(at) = s.first_nonzero() {
            return Ok(KernelVerdict::Fails { row, at });
        }
    }
    Ok(KernelVerdict::Holds)
}

/// Whether `F o E = 0` on the available box.
pub fn orthogonal_test(f: &MultiPoly, e: &TruncatedSeries) -> Result<KernelVerdict, SeriesError> {
    let r = PolyMatrix::column(vec![f.clone()])?;
    let w = SeriesVector::new(vec![e.clone()])?;
    is_in_kernel(&r, &w)
}
