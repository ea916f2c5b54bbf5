//! One-point AG codes: curve catalog, rational points, the dual evaluation code
//! `{c : sum_i c_i X^a(P_i) = 0 for wdeg(a) <= a}`, and the generalized
//! transform `w -> sum_a (sum_i w_i X^a(P_i)) Y^a`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Elem, Field, FieldDesc, GfError};
use crate::groebner::{buchberger, GroebnerBasis, GroebnerError};
use crate::linalg::Matrix;
use crate::poly::{Exponent, MonomialOrder, MultiPoly, PolyError};
use crate::series::TruncatedSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("degree bound a = {a} violates 2g-2 < a < n (g = {genus}, n = {n})")]
    DegreeBoundViolation { a: i64, genus: u32, n: usize },
    #[error("too few points: {0}")]
    TooFewPoints(String),
    #[error("point {0:?} is not an affine rational point of the curve")]
    NotOnCurve(Vec<u32>),
    #[error("curve metadata rejected: for a = {a} the evaluation rank is {rank}, expected {expected}")]
    MetadataInvalid { a: i64, rank: usize, expected: i64 },
    #[error("Hermitian curve needs a field of square order, got {0}")]
    NotSquareOrder(u32),
    #[error("word has length {got}, code length is {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("message has length {got}, code dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Affine model of a curve with one point at infinity, plus metadata.
#[derive(Debug, Clone)]
pub struct CurveSpec {
    field: Field,
    polys: Vec<MultiPoly>,
    pole_orders: Vec<u32>,
    genus: u32,
    order: MonomialOrder,
    /// Gröbner basis of the defining ideal; `None` for the affine line/space.
    ideal: Option<GroebnerBasis>,
}

impl CurveSpec {
    pub fn new(field: &Field, polys: Vec<MultiPoly>, pole_orders: Vec<u32>, genus: u32) -> Result<Self, CodeError> {
        let order = MonomialOrder::weighted(pole_orders.clone())?;
        let r = pole_orders.len();
        for p in &polys {
            if p.field() != field {
                return Err(PolyError::FieldMismatch.into());
            }
            if p.nvars() != r {
                return Err(PolyError::ArityMismatch { expected: r, got: p.nvars() }.into());
            }
        }
        let nonzero: Vec<MultiPoly> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
        let ideal = if nonzero.is_empty() { None } else { Some(buchberger(&nonzero, &order)?) };
        Ok(CurveSpec { field: field.clone(), polys, pole_orders, genus, order, ideal })
    }

    /// The line `r = 1`, no relations, `g = 0`, pole order 1.
    pub fn projective_line(field: &Field) -> Self {
        Self::new(field, Vec::new(), vec![1], 0).expect("line is valid")
    }

    /// `X1^(q0+1) - X2^q0 - X2` over GF(q0^2), pole orders `(q0, q0+1)`,
    /// genus `q0(q0-1)/2`.
    pub fn hermitian(field: &Field) -> Result<Self, CodeError> {
        let q = field.order();
        let q0 = (q as f64).sqrt().round() as u32;
        if q0 * q0 != q {
            return Err(CodeError::NotSquareOrder(q));
        }
        let mut h = MultiPoly::zero(field, 2);
        let minus_one = field.neg(Elem::ONE);
        h.add_term(Elem::ONE, Exponent::from([q0 + 1, 0]));
        h.add_term(minus_one, Exponent::from([0, q0]));
        h.add_term(minus_one, Exponent::from([0, 1]));
        Self::new(field, vec![h], vec![q0, q0 + 1], q0 * (q0 - 1) / 2)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.pole_orders.len()
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn pole_orders(&self) -> &[u32] {
        &self.pole_orders
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn contains_point(&self, pt: &[Elem]) -> bool {
        pt.len() == self.nvars()
            && pt.iter().all(|&x| self.field.contains(x))
            && self.polys.iter().all(|p| p.eval_unchecked(pt).is_zero())
    }

    /// Affine rational points, lexicographic in the canonical encodings.
    pub fn enumerate_points(&self) -> Vec<Vec<Elem>> {
        let r = self.nvars();
        let q = self.field.order() as u64;
        let total = q.pow(r as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut pt = vec![Elem::ZERO; r];
            let mut c = code;
            for i in (0..r).rev() {
                pt[i] = Elem((c % q) as u32);
                c /= q;
            }
            if self.polys.iter().all(|p| p.eval_unchecked(&pt).is_zero()) {
                out.push(pt);
            }
        }
        out
    }

    /// Monomials with `wdeg <= a` that are standard modulo the curve ideal; their
    /// evaluations span the same space as all monomials with `wdeg <= a`.
    pub fn standard_monomials(&self, a: u64) -> Vec<Exponent> {
        self.order
            .initial_segment(a)
            .into_iter()
            .filter(|e| match &self.ideal {
                Some(g) => !g.leading_exponents().iter().any(|l| l.divides(e)),
                None => true,
            })
            .collect()
    }

    fn evaluation_matrix(&self, monomials: &[Exponent], points: &[Vec<Elem>]) -> Matrix {
        Matrix::from_rows(
            monomials
                .iter()
                .map(|e| points.iter().map(|p| MultiPoly::eval_monomial(&self.field, e, p)).collect())
                .collect(),
        )
    }

    /// Checks `rank = a - g + 1` for every `2g-2 < a < n`.
    pub fn validate_metadata(&self, points: &[Vec<Elem>]) -> Result<(), CodeError> {
        let n = points.len() as i64;
        let lo = 2 * self.genus as i64 - 2;
        for a in (lo + 1).max(0)..n {
            let rows = self.standard_monomials(a as u64);
            let rank = self.evaluation_matrix(&rows, points).rank(&self.field);
            let expected = a - self.genus as i64 + 1;
            if rank as i64 != expected {
                return Err(CodeError::MetadataInvalid { a, rank, expected });
            }
        }
        Ok(())
    }
}

fn is_full_rank(m: &Matrix, field: &Field) -> bool {
    m.rank(field) == m.rows
}

/// A dual one-point code instance.
#[derive(Debug, Clone)]
pub struct CodeSpec {
    curve: CurveSpec,
    points: Vec<Vec<Elem>>,
    a: u64,
    /// `Z = {wdeg <= a}`, ascending in the monomial order.
    region: Vec<Exponent>,
    /// Standard monomials of `Z`, one parity-check row each.
    rows: Vec<Exponent>,
    parity: Matrix,
    generator: Matrix,
}

/// Builds the dual code `C_L(P, aQ)^perp`; `points = None` uses every affine point.
pub fn build_code(curve: &CurveSpec, a: i64, points: Option<Vec<Vec<Elem>>>) -> Result<CodeSpec, CodeError> {
    let points = match points {
        Some(p) => {
            for pt in &p {
                if !curve.contains_point(pt) {
                    return Err(CodeError::NotOnCurve(pt.iter().map(|x| x.value()).collect()));
                }
            }
            let mut sorted = p.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != p.len() {
                return Err(CodeError::TooFewPoints("point list has duplicates".into()));
            }
            p
        }
        None => curve.enumerate_points(),
    };
    let n = points.len();
    if n == 0 {
        return Err(CodeError::TooFewPoints("no points".into()));
    }
    let g = curve.genus as i64;
    if !(2 * g - 2 < a && a < n as i64) || a < 0 {
        return Err(CodeError::DegreeBoundViolation { a, genus: curve.genus, n });
    }
    curve.validate_metadata(&points)?;
    let a_u = a as u64;
    let region = curve.order.initial_segment(a_u);
    let rows = curve.standard_monomials(a_u);
    let parity = curve.evaluation_matrix(&rows, &points);
    debug_assert!(is_full_rank(&parity, &curve.field));
    let kernel = parity.nullspace(&curve.field);
    let generator = Matrix::from_rows(kernel);
    Ok(CodeSpec { curve: curve.clone(), points, a: a_u, region, rows, parity, generator })
}

impl CodeSpec {
    pub fn curve(&self) -> &CurveSpec {
        &self.curve
    }

    pub fn field(&self) -> &Field {
        &self.curve.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.curve.order
    }

    pub fn points(&self) -> &[Vec<Elem>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.curve.nvars()
    }

    pub fn degree_bound(&self) -> u64 {
        self.a
    }

    /// Known-syndrome region `Z`, ascending in the monomial order.
    pub fn region(&self) -> &[Exponent] {
        &self.region
    }

    pub fn parity_rows(&self) -> &[Exponent] {
        &self.rows
    }

    pub fn parity_check(&self) -> &Matrix {
        &self.parity
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows
    }

    /// Smallest box containing `Z`.
    pub fn region_box(&self) -> Exponent {
        Exponent::from(self.curve.pole_orders.iter().map(|&o| (self.a / o as u64) as u32).collect::<Vec<_>>())
    }

    fn check_len(&self, w: &[Elem]) -> Result<(), CodeError> {
        if w.len() != self.len() {
            return Err(CodeError::LengthMismatch { expected: self.len(), got: w.len() });
        }
        if let Some(bad) = w.iter().find(|x| !self.field().contains(**x)) {
            return Err(GfError::OutOfRange(bad.value() as u64).into());
        }
        Ok(())
    }

    /// `H w`.
    pub fn syndrome(&self, w: &[Elem]) -> Result<Vec<Elem>, CodeError> {
        self.check_len(w)?;
        Ok(self.parity.mul_vec(self.field(), w))
    }

    pub fn is_codeword(&self, w: &[Elem]) -> Result<bool, CodeError> {
        Ok(self.syndrome(w)?.iter().all(|x| x.is_zero()))
    }

    pub fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>, CodeError> {
        if message.len() != self.dimension() {
            return Err(CodeError::DimensionMismatch { expected: self.dimension(), got: message.len() });
        }
        Ok(self.generator.vec_mul(self.field(), message))
    }

    pub fn to_json(&self) -> CodeSpecJson {
        let ord = &self.curve.order;
        CodeSpecJson {
            field: self.field().desc(),
            curve: CurveJson {
                polys: self.curve.polys.iter().map(|p| p.to_text(ord)).collect(),
                genus: self.curve.genus,
                pole_orders: self.curve.pole_orders.clone(),
            },
            a: self.a as i64,
            points: PointsJson::List(self.points.iter().map(|p| p.iter().map(|x| x.value()).collect()).collect()),
        }
    }
}

/// Generalized transform of `w` on the box `<=_+ bound`.
pub fn gt(w: &[Elem], code: &CodeSpec, bound: &Exponent) -> Result<TruncatedSeries, CodeError> {
    code.check_len(w)?;
    if bound.arity() != code.nvars() {
        return Err(PolyError::ArityMismatch { expected: code.nvars(), got: bound.arity() }.into());
    }
    let field = code.field();
    let mut out = TruncatedSeries::zeros(field, bound);
    let idx: Vec<Exponent> = out.indices().collect();
    for (wi, pt) in w.iter().zip(code.points()) {
        if wi.is_zero() {
            continue;
        }
        // powers[i][k] = pt_i^k
        let powers: Vec<Vec<Elem>> =
            pt.iter().zip(bound.as_slice()).map(|(&x, &b)| (0..=b).map(|k| field.pow(x, k as u64)).collect()).collect();
        for e in &idx {
            let mono =
                e.as_slice().iter().enumerate().fold(Elem::ONE, |acc, (i, &k)| field.mul(acc, powers[i][k as usize]));
            let cur = out.get(e).expect("inside");
            out.set(e, field.add(cur, field.mul(*wi, mono)));
        }
    }
    Ok(out)
}

/// Syndromes `E_a` known on `Z = {wdeg(a) <= a}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromeArray {
    series: TruncatedSeries,
    region: Vec<Exponent>,
    order: MonomialOrder,
}

impl SyndromeArray {
    /// Wraps values on a region; entries of `series` outside the region are ignored.
    pub fn new(series: TruncatedSeries, region: Vec<Exponent>, order: MonomialOrder) -> Self {
        let mut s = series;
        let idx: Vec<Exponent> = s.indices().collect();
        for e in idx {
            if region.binary_search_by(|x| order.cmp(x, &e)).is_err() {
                s.set(&e, Elem::ZERO);
            }
        }
        SyndromeArray { series: s, region, order }
    }

    pub fn get(&self, e: &Exponent) -> Option<Elem> {
        if self.is_known(e) {
            self.series.get(e)
        } else {
            None
        }
    }

    pub fn is_known(&self, e: &Exponent) -> bool {
        self.region.binary_search_by(|x| self.order.cmp(x, e)).is_ok()
    }

    /// `Z`, ascending in the monomial order.
    pub fn region(&self) -> &[Exponent] {
        &self.region
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn field(&self) -> &Field {
        self.series.field()
    }

    pub fn nvars(&self) -> usize {
        self.order.arity()
    }

    /// Values on the bounding box of `Z`, zero outside `Z`.
    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn is_zero(&self) -> bool {
        self.series.is_zero()
    }
}

/// `gt(w)` restricted to `Z`, which equals `gt(e)` there for `w = c + e`.
pub fn known_syndromes(w: &[Elem], code: &CodeSpec) -> Result<SyndromeArray, CodeError> {
    let series = gt(w, code, &code.region_box())?;
    Ok(SyndromeArray::new(series, code.region.clone(), code.order().clone()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub polys: Vec<String>,
    pub genus: u32,
    pub pole_orders: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointsJson {
    All(AllPoints),
    List(Vec<Vec<u32>>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AllPoints {
    All,
}

/// Code-spec file: `{"field":..., "curve":{"polys":[...],"genus":g,"pole_orders":[...]},
/// "a":..., "points":"all"|[[...],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpecJson {
    pub field: FieldDesc,
    pub curve: CurveJson,
    pub a: i64,
    pub points: PointsJson,
}

impl CodeSpecJson {
    pub fn build(&self) -> Result<CodeSpec, CodeError> {
        let field = Field::from_desc(&self.field)?;
        let r = self.curve.pole_orders.len();
        let polys = self.curve.polys.iter().map(|t| MultiPoly::parse(&field, r, t)).collect::<Result<Vec<_>, _>>()?;
        let curve = CurveSpec::new(&field, polys, self.curve.pole_orders.clone(), self.curve.genus)?;
        let points = match &self.points {
            PointsJson::All(_) => None,
            PointsJson::List(list) => Some(
                list.iter()
                    .map(|p| p.iter().map(|&x| field.elem(x as u64)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        build_code(&curve, self.a, points)
    }
}

/// Shipped instances.
pub mod catalog {
    use super::*;

    /// Dual Reed-Solomon style code on the line over GF(7), `a = 3`: `[7, 3]`.
    pub fn line_gf7() -> CodeSpec {
        let f = Field::prime(7).expect("GF(7)");
        build_code(&CurveSpec::projective_line(&f), 3, None).expect("valid instance")
    }

    /// Hermitian curve over GF(4), `a = 5`: `[8, 3]`.
    pub fn hermitian_gf4() -> CodeSpec {
        let f = Field::with_default_modulus(2, 2).expect("GF(4)");
        build_code(&CurveSpec::hermitian(&f).expect("square order"), 5, None).expect("valid instance")
    }

    pub fn line_gf7_json() -> CodeSpecJson {
        CodeSpecJson {
            field: FieldDesc { p: 7, m: 1, modulus: vec![0, 1] },
            curve: CurveJson { polys: vec![], genus: 0, pole_orders: vec![1] },
            a: 3,
            points: PointsJson::All(AllPoints::All),
        }
    }

    pub fn hermitian_gf4_json() -> CodeSpecJson {
        CodeSpecJson {
            field: FieldDesc { p: 2, m: 2, modulus: vec![1, 1, 1] },
            curve: CurveJson { polys: vec!["X1^3 + X2^2 + X2".into()], genus: 1, pole_orders: vec![2, 3] },
            a: 5,
            points: PointsJson::All(AllPoints::All),
        }
    }
}
