//! Reduced Gröbner bases (Buchberger), normal forms, and delta sets.
//!
//! The delta set (footprint) of a basis is `N^r` minus the union of the cones
//! `LE(G_i) + N^r`; it indexes the free initial data of the associated
//! recurrence system and a monomial basis of `F[X]/<G>`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Elem, Field, FieldDesc, GfError};
use crate::poly::{Exponent, MonomialOrder, MultiPoly, PolyError};
use crate::series::BoxIter;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("generators use {got} variables but the order has {expected}")]
    OrderArity { expected: usize, got: usize },
}

/// A reduced Gröbner basis with monic elements sorted by leading exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    field: Field,
    nvars: usize,
    order: MonomialOrder,
    polys: Vec<MultiPoly>,
    leading: Vec<Exponent>,
}

/// Order ideal of `N^r` cut out by a set of leading exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeltaSet {
    /// Sorted (lexicographically) list of the exponents in the set.
    Finite(Vec<Exponent>),
    /// Some coordinate direction is unbounded.
    Infinite,
}

impl DeltaSet {
    pub fn is_finite(&self) -> bool {
        matches!(self, DeltaSet::Finite(_))
    }

    pub fn len(&self) -> Option<usize> {
        match self {
            DeltaSet::Finite(v) => Some(v.len()),
            DeltaSet::Infinite => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, DeltaSet::Finite(v) if v.is_empty())
    }

    pub fn points(&self) -> Option<&[Exponent]> {
        match self {
            DeltaSet::Finite(v) => Some(v),
            DeltaSet::Infinite => None,
        }
    }

    pub fn contains(&self, e: &Exponent) -> bool {
        match self {
            DeltaSet::Finite(v) => v.binary_search(e).is_ok(),
            DeltaSet::Infinite => false,
        }
    }

    /// Points of the set sorted ascending in `ord`.
    pub fn sorted(&self, ord: &MonomialOrder) -> Option<Vec<Exponent>> {
        self.points().map(|p| {
            let mut v = p.to_vec();
            v.sort_by(|a, b| ord.cmp(a, b));
            v
        })
    }
}

/// Footprint of a set of leading exponents: points not in any cone `l + N^r`.
pub fn delta_from_leading(leading: &[Exponent], nvars: usize) -> DeltaSet {
    if leading.is_empty() {
        return DeltaSet::Infinite;
    }
    let mut bound = Vec::with_capacity(nvars);
    for i in 0..nvars {
        let pure = leading
            .iter()
            .filter(|l| l.as_slice().iter().enumerate().all(|(j, &x)| j == i || x == 0))
            .map(|l| l.as_slice()[i])
            .min();
        match pure {
            Some(0) => return DeltaSet::Finite(Vec::new()),
            Some(k) => bound.push(k - 1),
            None => return DeltaSet::Infinite,
        }
    }
    let pts: Vec<Exponent> = BoxIter::up_to(&Exponent::from(bound))
        .filter(|a| !leading.iter().any(|l| l.divides(a)))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    DeltaSet::Finite(pts)
}

/// Minimal elements of the complement of a finite order ideal.
pub fn outer_corners(delta: &[Exponent], nvars: usize) -> Vec<Exponent> {
    let set: BTreeSet<&Exponent> = delta.iter().collect();
    let mut candidates: BTreeSet<Exponent> = BTreeSet::new();
    candidates.insert(Exponent::zero(nvars));
    for d in delta {
        for i in 0..nvars {
            let mut e = d.clone();
            e.0[i] += 1;
            candidates.insert(e);
        }
    }
    candidates
        .into_iter()
        .filter(|c| !set.contains(c))
        .filter(|c| {
            (0..nvars).all(|i| {
                if c.as_slice()[i] == 0 {
                    return true;
                }
                let mut below = c.clone();
                below.0[i] -= 1;
                set.contains(&below)
            })
        })
        .collect()
}

/// Maximal elements of a finite order ideal under `<=_+`.
pub fn maximal_points(delta: &[Exponent]) -> Vec<Exponent> {
    delta.iter().filter(|a| !delta.iter().any(|b| b != *a && a.divides(b))).cloned().collect()
}

fn check_inputs(gens: &[MultiPoly], ord: &MonomialOrder) -> Result<(), GroebnerError> {
    if let Some(first) = gens.first() {
        for g in gens {
            if g.field() != first.field() {
                return Err(PolyError::FieldMismatch.into());
            }
            if g.nvars() != ord.arity() {
                return Err(GroebnerError::OrderArity { expected: ord.arity(), got: g.nvars() });
            }
        }
    }
    Ok(())
}

/// Full reduction of `f` by `basis` (leading exponents precomputed).
fn reduce_by(f: &MultiPoly, basis: &[MultiPoly], leading: &[(Exponent, Elem)], ord: &MonomialOrder) -> MultiPoly {
    let field = f.field().clone();
    let mut p = f.clone();
    let mut rem = MultiPoly::zero(&field, f.nvars());
    while let Ok((lt, c)) = p.leading_term(ord) {
        let hit = leading.iter().position(|(l, _)| l.divides(&lt));
        match hit {
            Some(i) => {
                let (l, lc) = &leading[i];
                let shift = lt.checked_sub(l).expect("divides");
                let factor = field.neg(field.div(c, *lc).expect("nonzero leading coefficient"));
                p.add_scaled_shifted(factor, Some(&shift), &basis[i]);
            }
            None => {
                p.add_term(field.neg(c), lt.clone());
                rem.add_term(c, lt);
            }
        }
    }
    rem
}

fn s_polynomial(f: &MultiPoly, g: &MultiPoly, ord: &MonomialOrder) -> MultiPoly {
    let field = f.field();
    let (lf, cf) = f.leading_term(ord).expect("nonzero");
    let (lg, cg) = g.leading_term(ord).expect("nonzero");
    let l = lf.lcm(&lg);
    let mut s = MultiPoly::zero(field, f.nvars());
    s.add_scaled_shifted(field.inv(cf).unwrap(), Some(&l.checked_sub(&lf).unwrap()), f);
    s.add_scaled_shifted(field.neg(field.inv(cg).unwrap()), Some(&l.checked_sub(&lg).unwrap()), g);
    s
}

/// Buchberger's algorithm with the normal selection strategy and both pruning
/// criteria; returns the reduced basis.
pub fn buchberger(gens: &[MultiPoly], ord: &MonomialOrder) -> Result<GroebnerBasis, GroebnerError> {
    check_inputs(gens, ord)?;
    let Some(first) = gens.first() else {
        return Err(PolyError::EmptySupport.into());
    };
    let field = first.field().clone();

    let mut basis: Vec<MultiPoly> = Vec::new();
    let mut leading: Vec<(Exponent, Elem)> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let m = g.monic(ord)?;
        leading.push((m.leading_exponent(ord)?, Elem::ONE));
        basis.push(m);
    }
    if basis.is_empty() {
        return Ok(GroebnerBasis::empty(&field, ord));
    }

    let mut pending: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.push((i, j));
        }
    }
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();

    while !pending.is_empty() {
        // normal strategy: smallest lcm of leading exponents first
        let (idx, _) = pending
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let la = leading[a.0].0.lcm(&leading[a.1].0);
                let lb = leading[b.0].0.lcm(&leading[b.1].0);
                ord.cmp(&la, &lb).then(a.cmp(b))
            })
            .expect("nonempty");
        let (i, j) = pending.swap_remove(idx);
        done.insert((i, j));
        let (li, lj) = (&leading[i].0, &leading[j].0);
        let l = li.lcm(lj);
        // first criterion: coprime leading monomials
        if l == li.add(lj) {
            continue;
        }
        // chain criterion
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i && k != j && leading[k].0.divides(&l) && done.contains(&key(i, k)) && done.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], ord);
        let h = reduce_by(&s, &basis, &leading, ord);
        if h.is_zero() {
            continue;
        }
        let h = h.monic(ord)?;
        let lh = h.leading_exponent(ord)?;
        let n = basis.len();
        basis.push(h);
        leading.push((lh, Elem::ONE));
        for k in 0..n {
            pending.push((k, n));
        }
    }
    Ok(GroebnerBasis::reduce(&field, ord, basis))
}

impl GroebnerBasis {
    fn empty(field: &Field, ord: &MonomialOrder) -> Self {
        GroebnerBasis {
            field: field.clone(),
            nvars: ord.arity(),
            order: ord.clone(),
            polys: Vec::new(),
            leading: Vec::new(),
        }
    }

    /// Minimalizes and inter-reduces a Gröbner basis.
    fn reduce(field: &Field, ord: &MonomialOrder, basis: Vec<MultiPoly>) -> Self {
        let les: Vec<Exponent> = basis.iter().map(|g| g.leading_exponent(ord).unwrap()).collect();
        let mut keep: Vec<usize> = Vec::new();
        for i in 0..basis.len() {
            let redundant = (0..basis.len()).any(|j| j != i && les[j].divides(&les[i]) && (les[j] != les[i] || j < i));
            if !redundant {
                keep.push(i);
            }
        }
        let mut polys: Vec<MultiPoly> = keep.iter().map(|&i| basis[i].clone()).collect();
        for i in 0..polys.len() {
            let others: Vec<MultiPoly> =
                polys.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
            let lead: Vec<(Exponent, Elem)> = others.iter().map(|p| p.leading_term(ord).unwrap()).collect();
            let reduced = reduce_by(&polys[i], &others, &lead, ord);
            polys[i] = reduced.monic(ord).expect("reduced basis element is nonzero");
        }
        polys.sort_by(|a, b| ord.cmp(&a.leading_exponent(ord).unwrap(), &b.leading_exponent(ord).unwrap()));
        let leading = polys.iter().map(|p| p.leading_exponent(ord).unwrap()).collect();
        GroebnerBasis { field: field.clone(), nvars: ord.arity(), order: ord.clone(), polys, leading }
    }

    /// The basis `{1}` of the unit ideal.
    pub fn unit(field: &Field, ord: &MonomialOrder) -> Self {
        let one = MultiPoly::one(field, ord.arity());
        GroebnerBasis {
            field: field.clone(),
            nvars: ord.arity(),
            order: ord.clone(),
            polys: vec![one],
            leading: vec![Exponent::zero(ord.arity())],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn leading_exponents(&self) -> &[Exponent] {
        &self.leading
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.leading.iter().any(|l| l.is_zero())
    }

    pub fn normal_form(&self, f: &MultiPoly) -> MultiPoly {
        let lead: Vec<(Exponent, Elem)> = self.leading.iter().map(|l| (l.clone(), Elem::ONE)).collect();
        reduce_by(f, &self.polys, &lead, &self.order)
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Same ideal: every generator of each basis reduces to zero by the other.
    pub fn same_ideal(&self, other: &GroebnerBasis) -> bool {
        self.polys.iter().all(|p| other.contains(p)) && other.polys.iter().all(|p| self.contains(p))
    }

    pub fn delta_set(&self) -> DeltaSet {
        delta_from_leading(&self.leading, self.nvars)
    }

    /// Buchberger criterion: all S-polynomials reduce to zero.
    pub fn is_groebner(&self) -> bool {
        for j in 0..self.polys.len() {
            for i in 0..j {
                let s = s_polynomial(&self.polys[i], &self.polys[j], &self.order);
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> BasisJson {
        BasisJson {
            field: self.field.desc(),
            weights: self.order.weights().to_vec(),
            polys: self.polys.iter().map(|p| p.to_text(&self.order)).collect(),
        }
    }

    /// Reads a basis file; the generators are re-run through Buchberger so the
    /// result is reduced regardless of how the file was written.
    pub fn from_json(json: &BasisJson) -> Result<GroebnerBasis, GroebnerError> {
        let field = Field::from_desc(&json.field)?;
        let ord = MonomialOrder::weighted(json.weights.clone())?;
        let polys =
            json.polys.iter().map(|t| MultiPoly::parse(&field, ord.arity(), t)).collect::<Result<Vec<_>, _>>()?;
        if polys.is_empty() {
            return Ok(GroebnerBasis::empty(&field, &ord));
        }
        buchberger(&polys, &ord)
    }
}

/// Reduced basis of `I(points)`, computed as the product of the maximal ideals
/// `<X_1 - a_1, ..., X_r - a_r>` of distinct points. No points gives the unit ideal.
pub fn vanishing_ideal(
    field: &Field,
    ord: &MonomialOrder,
    points: &[Vec<Elem>],
) -> Result<GroebnerBasis, GroebnerError> {
    let r = ord.arity();
    let mut distinct: Vec<&Vec<Elem>> = Vec::new();
    for pt in points {
        if pt.len() != r {
            return Err(PolyError::ArityMismatch { expected: r, got: pt.len() }.into());
        }
        if !distinct.contains(&pt) {
            distinct.push(pt);
        }
    }
    let mut gens = vec![MultiPoly::one(field, r)];
    for pt in distinct {
        let mut next = Vec::with_capacity(gens.len() * r);
        for (i, &a) in pt.iter().enumerate() {
            let mut lin = MultiPoly::var(field, r, i);
            lin.add_term(field.neg(a), Exponent::zero(r));
            for g in &gens {
                next.push(g.mul(&lin)?);
            }
        }
        // keep the generating set small between factors
        gens = buchberger(&next, ord)?.polys().to_vec();
    }
    buchberger(&gens, ord)
}

/// Normal form of `f` modulo `g`.
pub fn normal_form(f: &MultiPoly, g: &GroebnerBasis) -> MultiPoly {
    g.normal_form(f)
}

/// Footprint of a basis.
pub fn delta_set(g: &GroebnerBasis) -> DeltaSet {
    g.delta_set()
}

/// Basis file: `{"field":{...},"weights":[2,3],"polys":["X1^2 + 1", ...]}` with
/// polynomials listed in ascending order of their leading exponents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub field: FieldDesc,
    pub weights: Vec<u32>,
    pub polys: Vec<String>,
}
