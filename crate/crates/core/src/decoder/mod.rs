//! End-to-end decoding of the dual one-point codes.
//!
//! known syndromes -> BMS locator basis -> error positions (common zeros of the
//! basis among the code points) -> completion of the syndrome array through the
//! Cauchy problem -> error values by exact linear algebra -> parity re-check.
//! Every stage failure is reported through [`DecodeStatus`]; a result marked
//! [`DecodeStatus::Success`] has always passed the final verification.

mod bms;

pub use bms::{bms, bms_run, BmsError, BmsOutput, BmsState};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agcode::{known_syndromes, CodeError, CodeSpec, SyndromeArray};
use crate::cauchy::{CauchyError, CauchyProblem, LinearRecurringSeries};
use crate::gf::Elem;
use crate::groebner::{DeltaSet, GroebnerBasis};
use crate::linalg::{Matrix, SolveOutcome};
use crate::poly::{Exponent, MultiPoly};
use crate::series::TruncatedSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Cauchy(#[from] CauchyError),
    #[error(transparent)]
    Bms(#[from] BmsError),
    #[error("delta set point {0:?} lies outside the known syndrome region")]
    InitialDataOutsideZ(Exponent),
    #[error("locator basis has an infinite delta set")]
    InfiniteDeltaSet,
    #[error("completed array disagrees with the known syndromes at {0:?}")]
    CompletionMismatch(Exponent),
    #[error("evaluation matrix on the support has rank below {0}")]
    RankDeficient(usize),
    #[error("error values are inconsistent with the syndrome array")]
    Inconsistent,
    #[error("support index {0} out of range")]
    BadSupport(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DecodeStatus {
    Success,
    LocatorFailed,
    ValuesFailed,
    InsufficientSyndromes,
}

#[derive(Debug, Clone)]
pub struct DecodeResult {
    pub status: DecodeStatus,
    /// Error vector (present on success).
    pub error: Option<Vec<Elem>>,
    /// Corrected codeword `w - e` (present on success).
    pub codeword: Option<Vec<Elem>>,
    pub locator: Option<GroebnerBasis>,
    /// Syndrome array completed beyond the known region.
    pub completed: Option<TruncatedSeries>,
    /// Positions located by the basis, even when a later stage failed.
    pub positions: Vec<usize>,
}

impl DecodeResult {
    fn failed(status: DecodeStatus, locator: Option<GroebnerBasis>, positions: Vec<usize>) -> Self {
        DecodeResult { status, error: None, codeword: None, locator, completed: None, positions }
    }

    pub fn is_success(&self) -> bool {
        self.status == DecodeStatus::Success
    }
}

/// Indices `j` with `G_i(P_j) = 0` for every basis element.
pub fn locate_errors(g: &GroebnerBasis, code: &CodeSpec) -> Vec<usize> {
    code.points()
        .iter()
        .enumerate()
        .filter(|(_, p)| g.polys().iter().all(|q| q.eval_unchecked(p).is_zero()))
        .map(|(j, _)| j)
        .collect()
}

/// Extends the known syndromes to the box by solving the Cauchy problem of `g`
/// with initial data `E|Δ(g)`.
pub fn complete_syndromes(
    g: &GroebnerBasis,
    known: &SyndromeArray,
    bound: &Exponent,
) -> Result<TruncatedSeries, DecodeError> {
    let delta = match g.delta_set() {
        DeltaSet::Finite(d) => d,
        DeltaSet::Infinite => return Err(DecodeError::InfiniteDeltaSet),
    };
    let field = known.field();
    if delta.is_empty() {
        let out = TruncatedSeries::zeros(field, bound);
        if let Some(z) = known.region().iter().find(|z| !known.get(z).unwrap().is_zero()) {
            return Err(DecodeError::CompletionMismatch(z.clone()));
        }
        return Ok(out);
    }
    let mut initial = std::collections::BTreeMap::new();
    for d in &delta {
        let v = known.get(d).ok_or_else(|| DecodeError::InitialDataOutsideZ(d.clone()))?;
        initial.insert(d.clone(), v);
    }
    let prob = CauchyProblem::new(g.clone(), initial)?;
    let mut lrs = LinearRecurringSeries::new(prob);
    let out = lrs.to_box(bound)?;
    for z in known.region() {
        let expected = known.get(z).expect("in region");
        let got = lrs.coefficient(z)?;
        if got != expected {
            return Err(DecodeError::CompletionMismatch(z.clone()));
        }
    }
    Ok(out)
}

/// Error values on `support` from `E_a = sum_j e_j X^a(P_j)`, using every index
/// of the array (overdetermined, so tampering is detected).
pub fn solve_error_values(support: &[usize], e: &TruncatedSeries, code: &CodeSpec) -> Result<Vec<Elem>, DecodeError> {
    let n = code.len();
    if let Some(&bad) = support.iter().find(|&&j| j >= n) {
        return Err(DecodeError::BadSupport(bad));
    }
    let field = code.field();
    let idx: Vec<Exponent> = e.indices().collect();
    if support.is_empty() {
        return if e.is_zero() { Ok(vec![Elem::ZERO; n]) } else { Err(DecodeError::Inconsistent) };
    }
    let rows: Vec<Vec<Elem>> = idx
        .iter()
        .map(|a| support.iter().map(|&j| MultiPoly::eval_monomial(field, a, &code.points()[j])).collect())
        .collect();
    let rhs: Vec<Elem> = idx.iter().map(|a| e.get(a).expect("inside")).collect();
    match Matrix::from_rows(rows).solve(field, &rhs) {
        SolveOutcome::Unique(x) => {
            let mut out = vec![Elem::ZERO; n];
            for (&j, v) in support.iter().zip(x) {
                out[j] = v;
            }
            Ok(out)
        }
        SolveOutcome::Underdetermined => Err(DecodeError::RankDeficient(support.len())),
        SolveOutcome::Inconsistent => Err(DecodeError::Inconsistent),
    }
}

/// Box used for syndrome completion: the bounding box of `Z` plus one shell.
pub fn completion_box(code: &CodeSpec) -> Exponent {
    let b = code.region_box();
    Exponent::from(b.as_slice().iter().map(|&x| x + 1).collect::<Vec<_>>())
}

/// Decodes a received word.
pub fn decode(w: &[Elem], code: &CodeSpec) -> Result<DecodeResult, DecodeError> {
    let field = code.field();
    let known = known_syndromes(w, code)?;
    let n = code.len();
    if known.is_zero() {
        return Ok(DecodeResult {
            status: DecodeStatus::Success,
            error: Some(vec![Elem::ZERO; n]),
            codeword: Some(w.to_vec()),
            locator: Some(GroebnerBasis::unit(field, code.order())),
            completed: Some(TruncatedSeries::zeros(field, &completion_box(code))),
            positions: Vec::new(),
        });
    }

    let out = match bms_run(&known, code.order()) {
        Ok(o) => o,
        Err(_) => return Ok(DecodeResult::failed(DecodeStatus::LocatorFailed, None, Vec::new())),
    };
    let g = out.basis;
    let delta = match g.delta_set() {
        DeltaSet::Finite(d) if !d.is_empty() => d,
        _ => return Ok(DecodeResult::failed(DecodeStatus::LocatorFailed, Some(g), Vec::new())),
    };
    if out.staircase.points() != Some(&delta[..]) {
        return Ok(DecodeResult::failed(DecodeStatus::LocatorFailed, Some(g), Vec::new()));
    }
    if delta.iter().any(|d| !known.is_known(d)) {
        return Ok(DecodeResult::failed(DecodeStatus::InsufficientSyndromes, Some(g), Vec::new()));
    }
    let positions = locate_errors(&g, code);
    if positions.len() != delta.len() {
        return Ok(DecodeResult::failed(DecodeStatus::LocatorFailed, Some(g), positions));
    }
    let completed = match complete_syndromes(&g, &known, &completion_box(code)) {
        Ok(c) => c,
        Err(DecodeError::InitialDataOutsideZ(_)) => {
            return Ok(DecodeResult::failed(DecodeStatus::InsufficientSyndromes, Some(g), positions))
        }
        Err(_) => return Ok(DecodeResult::failed(DecodeStatus::LocatorFailed, Some(g), positions)),
    };
    let error = match solve_error_values(&positions, &completed, code) {
        Ok(e) => e,
        Err(_) => return Ok(DecodeResult::failed(DecodeStatus::ValuesFailed, Some(g), positions)),
    };
    if positions.iter().any(|&j| error[j].is_zero()) {
        return Ok(DecodeResult::failed(DecodeStatus::ValuesFailed, Some(g), positions));
    }
    let codeword: Vec<Elem> = w.iter().zip(&error).map(|(&a, &b)| field.sub(a, b)).collect();
    let resyn = known_syndromes(&error, code)?;
    if !code.is_codeword(&codeword)? || resyn != known {
        return Ok(DecodeResult::failed(DecodeStatus::ValuesFailed, Some(g), positions));
    }
    Ok(DecodeResult {
        status: DecodeStatus::Success,
        error: Some(error),
        codeword: Some(codeword),
        locator: Some(g),
        completed: Some(completed),
        positions,
    })
}

/// One JSON record per decoded word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodeRecord {
    pub status: DecodeStatus,
    pub error_positions: Vec<usize>,
    pub error_values: Vec<u32>,
    pub codeword: Option<Vec<u32>>,
    pub locator_basis: Vec<String>,
}

impl DecodeRecord {
    pub fn from_result(r: &DecodeResult, code: &CodeSpec) -> Self {
        let (positions, values) = match &r.error {
            Some(e) => {
                let pos: Vec<usize> = (0..e.len()).filter(|&j| !e[j].is_zero()).collect();
                let vals = pos.iter().map(|&j| e[j].value()).collect();
                (pos, vals)
            }
            None => (r.positions.clone(), Vec::new()),
        };
        DecodeRecord {
            status: r.status,
            error_positions: positions,
            error_values: values,
            codeword: r.codeword.as_ref().map(|c| c.iter().map(|x| x.value()).collect()),
            locator_basis: r
                .locator
                .as_ref()
                .map(|g| g.polys().iter().map(|p| p.to_text(code.order())).collect())
                .unwrap_or_default(),
        }
    }
}

#[cfg(test)]
mod tests;
