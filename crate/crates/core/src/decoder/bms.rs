//! Berlekamp-Massey-Sakata: minimal recurrence polynomials for an array known
//! on an initial segment of the monomial order.
//!
//! The state keeps one candidate per outer corner of the current staircase `Δ`
//! and a set of witnesses: earlier candidates that failed at some index `v`,
//! remembered with their discrepancy. A witness `g` that failed at `v` has span
//! `v - LE(g)`, which lies in `Δ`. Processing index `u`:
//!
//! * each candidate `f` with `LE(f) <=_+ u` is checked at `u`; its discrepancy is
//!   `sum_b f_b E_{b + u - LE(f)}`,
//! * every failing `f` forces `u - LE(f)` (and everything below it) into `Δ`,
//! * each outer corner `s` of the new staircase gets a candidate: a monomial
//!   multiple of a passing old candidate, or, for a failing one, the
//!   combination `X^(s - LE(f)) f - (b_f / b_g) X^(span(g) - (u - s)) g` with a
//!   witness whose span dominates `u - s`. The correction term has a leading
//!   exponent `<_T s` and cancels the discrepancy at `u` without disturbing
//!   earlier indices.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::agcode::SyndromeArray;
use crate::gf::{Elem, Field};
use crate::groebner::{buchberger, outer_corners, DeltaSet, GroebnerBasis, GroebnerError};
use crate::poly::{Exponent, MonomialOrder, MultiPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BmsError {
    #[error("syndrome region is empty")]
    EmptySyndromes,
    #[error("syndrome at {0:?} is needed but not known")]
    UnknownSyndrome(Exponent),
    #[error("no witness available to update the corner {corner:?} at {at:?}")]
    NoWitness { corner: Exponent, at: Exponent },
    #[error("syndrome order does not match the requested order")]
    OrderMismatch,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

#[derive(Debug, Clone)]
struct Candidate {
    poly: MultiPoly,
    lead: Exponent,
}

#[derive(Debug, Clone)]
struct Witness {
    poly: MultiPoly,
    /// `v - LE(g)` where `v` is the index the polynomial failed at.
    span: Exponent,
    discrepancy: Elem,
}

/// Running state of the algorithm.
#[derive(Debug, Clone)]
pub struct BmsState {
    field: Field,
    order: MonomialOrder,
    candidates: Vec<Candidate>,
    witnesses: Vec<Witness>,
    delta: BTreeSet<Exponent>,
    processed: usize,
}

impl BmsState {
    pub fn new(field: &Field, order: &MonomialOrder) -> Self {
        let r = order.arity();
        BmsState {
            field: field.clone(),
            order: order.clone(),
            candidates: vec![Candidate { poly: MultiPoly::one(field, r), lead: Exponent::zero(r) }],
            witnesses: Vec::new(),
            delta: BTreeSet::new(),
            processed: 0,
        }
    }

    /// Current candidate polynomials, one per outer corner of the staircase.
    pub fn candidates(&self) -> Vec<MultiPoly> {
        self.candidates.iter().map(|c| c.poly.clone()).collect()
    }

    pub fn staircase(&self) -> DeltaSet {
        DeltaSet::Finite(self.delta.iter().cloned().collect())
    }

    /// Number of indices processed so far.
    pub fn processed(&self) -> usize {
        self.processed
    }

    fn discrepancy(
        &self,
        poly: &MultiPoly,
        lead: &Exponent,
        u: &Exponent,
        e: &SyndromeArray,
    ) -> Result<Elem, BmsError> {
        let t = u.checked_sub(lead).expect("lead divides u");
        let mut acc = Elem::ZERO;
        for (beta, c) in poly.terms() {
            let idx = beta.add(&t);
            let v = e.get(&idx).ok_or(BmsError::UnknownSyndrome(idx))?;
            acc = self.field.add(acc, self.field.mul(c, v));
        }
        Ok(acc)
    }

    /// Processes index `u`; all indices `<_T u` must have been processed before.
    pub fn step(&mut self, u: &Exponent, e: &SyndromeArray) -> Result<(), BmsError> {
        let r = self.order.arity();
        let mut disc = Vec::with_capacity(self.candidates.len());
        for c in &self.candidates {
            let b = if c.lead.divides(u) { self.discrepancy(&c.poly, &c.lead, u, e)? } else { Elem::ZERO };
            disc.push(b);
        }
        self.processed += 1;
        if disc.iter().all(|b| b.is_zero()) {
            return Ok(());
        }

        let old_delta = self.delta.clone();
        let mut new_delta = old_delta.clone();
        let mut fresh_witnesses = Vec::new();
        for (c, b) in self.candidates.iter().zip(&disc) {
            if b.is_zero() {
                continue;
            }
            let span = u.checked_sub(&c.lead).expect("checked above");
            if !old_delta.contains(&span) {
                fresh_witnesses.push(Witness { poly: c.poly.clone(), span: span.clone(), discrepancy: *b });
            }
            for below in crate::series::BoxIter::up_to(&span) {
                new_delta.insert(below);
            }
        }

        let delta_vec: Vec<Exponent> = new_delta.iter().cloned().collect();
        let corners = outer_corners(&delta_vec, r);
        let mut next = Vec::with_capacity(corners.len());
        for s in corners {
            let passing = self
                .candidates
                .iter()
                .zip(&disc)
                .filter(|(c, b)| b.is_zero() && c.lead.divides(&s))
                .map(|(c, _)| c)
                .max_by(|a, b| self.order.cmp(&a.lead, &b.lead));
            if let Some(c) = passing {
                next.push(Candidate { poly: c.poly.shift(&s.checked_sub(&c.lead).unwrap()), lead: s });
                continue;
            }
            let (c, b) = self
                .candidates
                .iter()
                .zip(&disc)
                .filter(|(c, _)| c.lead.divides(&s))
                .max_by(|a, b| self.order.cmp(&a.0.lead, &b.0.lead))
                .expect("old corners cover the complement of the staircase");
            let lifted = c.poly.shift(&s.checked_sub(&c.lead).unwrap());
            if !s.divides(u) {
                next.push(Candidate { poly: lifted, lead: s });
                continue;
            }
            let need = u.checked_sub(&s).unwrap();
            let witness = self
                .witnesses
                .iter()
                .rev()
                .filter(|w| need.divides(&w.span))
                .min_by(|a, b| self.order.cmp(&a.span, &b.span))
                .ok_or_else(|| BmsError::NoWitness { corner: s.clone(), at: u.clone() })?;
            let factor =
                self.field.neg(self.field.div(*b, witness.discrepancy).expect("witness discrepancy is nonzero"));
            let shift = witness.span.checked_sub(&need).unwrap();
            let mut poly = lifted;
            poly.add_scaled_shifted(factor, Some(&shift), &witness.poly);
            debug_assert_eq!(poly.leading_exponent(&self.order).ok().as_ref(), Some(&s));
            debug_assert!(self.discrepancy(&poly, &s, u, e).map(|d| d.is_zero()).unwrap_or(false));
            next.push(Candidate { poly, lead: s });
        }

        self.candidates = next;
        self.delta = new_delta;
        self.witnesses.extend(fresh_witnesses);
        Ok(())
    }
}

/// Result of running the algorithm over the whole known region.
#[derive(Debug, Clone)]
pub struct BmsOutput {
    /// Reduced Gröbner basis of the ideal generated by the final candidates.
    pub basis: GroebnerBasis,
    /// Staircase found by the algorithm itself.
    pub staircase: DeltaSet,
    /// Final candidate polynomials.
    pub candidates: Vec<MultiPoly>,
}

/// Runs the algorithm on every known index of `e` in increasing order.
pub fn bms_run(e: &SyndromeArray, ord: &MonomialOrder) -> Result<BmsOutput, BmsError> {
    if e.order() != ord {
        return Err(BmsError::OrderMismatch);
    }
    if e.region().is_empty() {
        return Err(BmsError::EmptySyndromes);
    }
    let mut state = BmsState::new(e.field(), ord);
    for u in e.region() {
        state.step(u, e)?;
    }
    let candidates = state.candidates();
    let staircase = state.staircase();
    let basis = if staircase.is_empty() { GroebnerBasis::unit(e.field(), ord) } else { buchberger(&candidates, ord)? };
    Ok(BmsOutput { basis, staircase, candidates })
}

/// Reduced Gröbner basis of the recurrence polynomials found on the known region.
pub fn bms(e: &SyndromeArray, ord: &MonomialOrder) -> Result<GroebnerBasis, BmsError> {
    Ok(bms_run(e, ord)?.basis)
}
