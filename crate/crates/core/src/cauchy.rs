//! Homogeneous Cauchy problems `G(X) o W = 0, W|Γ = V0` with `Γ = Δ(G)`.
//!
//! For a Gröbner basis `G` every index outside its footprint is `t + LE(G_l)` for
//! some basis element, and the relation `G_l o W = 0` at shift `t` expresses
//! `W_{t+d}` through coefficients that are strictly smaller in the monomial
//! order. Walking `N^r` in increasing order therefore determines the whole
//! trajectory from its values on `Γ`.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::gf::Elem;
use crate::groebner::{DeltaSet, GroebnerBasis};
use crate::poly::Exponent;
use crate::series::{act, TruncatedSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CauchyError {
    #[error("the basis is empty")]
    EmptyBasis,
    #[error("the delta set of the basis is infinite")]
    InfiniteDeltaSet,
    #[error("no initial value for {0:?}")]
    MissingInitialValue(Exponent),
    #[error("initial value given at {0:?}, which is outside the delta set")]
    OutsideDeltaSet(Exponent),
    #[error("initial value {0} is not a field element")]
    BadValue(u32),
    #[error("basis elements disagree at {0:?}; input is not a Gröbner basis")]
    InconsistentBasis(Exponent),
    #[error("index {got:?} has {got_arity} components, expected {expected}", got_arity = got.arity())]
    ArityMismatch { expected: usize, got: Exponent },
}

/// The problem `(G(X), 0, Δ(G))` together with initial data on `Δ(G)`.
#[derive(Debug, Clone)]
pub struct CauchyProblem {
    basis: GroebnerBasis,
    gamma: Vec<Exponent>,
    initial: BTreeMap<Exponent, Elem>,
}

impl CauchyProblem {
    pub fn new(basis: GroebnerBasis, initial: BTreeMap<Exponent, Elem>) -> Result<Self, CauchyError> {
        if basis.is_empty() {
            return Err(CauchyError::EmptyBasis);
        }
        let gamma = match basis.delta_set() {
            DeltaSet::Finite(v) => v,
            DeltaSet::Infinite => return Err(CauchyError::InfiniteDeltaSet),
        };
        for (e, v) in &initial {
            if e.arity() != basis.nvars() {
                return Err(CauchyError::ArityMismatch { expected: basis.nvars(), got: e.clone() });
            }
            if gamma.binary_search(e).is_err() {
                return Err(CauchyError::OutsideDeltaSet(e.clone()));
            }
            if !basis.field().contains(*v) {
                return Err(CauchyError::BadValue(v.value()));
            }
        }
        if let Some(missing) = gamma.iter().find(|g| !initial.contains_key(*g)) {
            return Err(CauchyError::MissingInitialValue(missing.clone()));
        }
        Ok(CauchyProblem { basis, gamma, initial })
    }

    /// Initial data taken from a known series (which must cover `Δ(G)`).
    pub fn from_series(basis: GroebnerBasis, known: &TruncatedSeries) -> Result<Self, CauchyError> {
        let gamma = match basis.delta_set() {
            DeltaSet::Finite(v) => v,
            DeltaSet::Infinite => return Err(CauchyError::InfiniteDeltaSet),
        };
        let mut initial = BTreeMap::new();
        for g in &gamma {
            let v = known.get(g).ok_or_else(|| CauchyError::MissingInitialValue(g.clone()))?;
            initial.insert(g.clone(), v);
        }
        Self::new(basis, initial)
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    /// The initial-data region `Γ = Δ(G)`, lexicographically sorted.
    pub fn gamma(&self) -> &[Exponent] {
        &self.gamma
    }

    pub fn initial(&self) -> &BTreeMap<Exponent, Elem> {
        &self.initial
    }

    pub fn solve(self) -> LinearRecurringSeries {
        LinearRecurringSeries::new(self)
    }
}

/// Trajectory of a Cauchy problem, with coefficients computed on demand.
#[derive(Debug, Clone)]
pub struct LinearRecurringSeries {
    problem: CauchyProblem,
    memo: HashMap<Exponent, Elem>,
    check_choices: bool,
}

impl LinearRecurringSeries {
    pub fn new(problem: CauchyProblem) -> Self {
        let memo = problem.initial.iter().map(|(e, v)| (e.clone(), *v)).collect();
        LinearRecurringSeries { problem, memo, check_choices: cfg!(debug_assertions) }
    }

    /// Enables or disables re-deriving each coefficient from every eligible
    /// basis element (on by default in debug builds).
    pub fn with_choice_check(mut self, on: bool) -> Self {
        self.check_choices = on;
        self
    }

    pub fn problem(&self) -> &CauchyProblem {
        &self.problem
    }

    /// Coefficient `W_alpha`.
    pub fn coefficient(&mut self, alpha: &Exponent) -> Result<Elem, CauchyError> {
        let r = self.problem.basis.nvars();
        if alpha.arity() != r {
            return Err(CauchyError::ArityMismatch { expected: r, got: alpha.clone() });
        }
        if let Some(&v) = self.memo.get(alpha) {
            return Ok(v);
        }
        let ord = self.problem.basis.order().clone();
        for target in ord.initial_segment(ord.wdeg(alpha)) {
            if self.memo.contains_key(&target) {
                continue;
            }
            let v = self.derive(&target)?;
            self.memo.insert(target.clone(), v);
            if &target == alpha {
                break;
            }
        }
        Ok(self.memo[alpha])
    }

    /// `W_alpha` from the relation of basis element `l`; all predecessors must be known.
    fn via_relation(&self, l: usize, alpha: &Exponent) -> Elem {
        let basis = &self.problem.basis;
        let field = basis.field();
        let d = &basis.leading_exponents()[l];
        let g = &basis.polys()[l];
        let t = alpha.checked_sub(d).expect("leading exponent divides alpha");
        let mut acc = Elem::ZERO;
        for (beta, c) in g.terms() {
            if beta == d {
                continue;
            }
            let w = self.memo[&beta.add(&t)];
            acc = field.add(acc, field.mul(c, w));
        }
        let lc = g.coeff(d);
        field.neg(field.div(acc, lc).expect("leading coefficient is nonzero"))
    }

    fn derive(&self, alpha: &Exponent) -> Result<Elem, CauchyError> {
        let basis = &self.problem.basis;
        // basis is sorted by leading exponent, so the first eligible one is <=_T-minimal
        let mut eligible = basis.leading_exponents().iter().enumerate().filter(|(_, d)| d.divides(alpha));
        let (first, _) = eligible.next().expect("alpha outside Γ lies in some leading cone");
        let v = self.via_relation(first, alpha);
        if self.check_choices {
            for (l, _) in eligible {
                if self.via_relation(l, alpha) != v {
                    return Err(CauchyError::InconsistentBasis(alpha.clone()));
                }
            }
        }
        Ok(v)
    }

    /// Materializes the trajectory on the box `0 <=_+ a <=_+ bound`.
    pub fn to_box(&mut self, bound: &Exponent) -> Result<TruncatedSeries, CauchyError> {
        let r = self.problem.basis.nvars();
        if bound.arity() != r {
            return Err(CauchyError::ArityMismatch { expected: r, got: bound.clone() });
        }
        // the box corner has the largest weighted degree in the box
        let ord = self.problem.basis.order().clone();
        let top = ord.wdeg(bound);
        for target in ord.initial_segment(top) {
            if !self.memo.contains_key(&target) {
                let v = self.derive(&target)?;
                self.memo.insert(target, v);
            }
        }
        let field = self.problem.basis.field().clone();
        Ok(TruncatedSeries::from_fn(&field, bound, |e| self.memo[e]))
    }
}

/// `W_alpha` for the trajectory of `prob`.
pub fn solve_coefficient(prob: &CauchyProblem, alpha: &Exponent) -> Result<Elem, CauchyError> {
    LinearRecurringSeries::new(prob.clone()).coefficient(alpha)
}

/// The unique trajectory restricted to a box.
pub fn solve_box(prob: &CauchyProblem, bound: &Exponent) -> Result<TruncatedSeries, CauchyError> {
    LinearRecurringSeries::new(prob.clone()).to_box(bound)
}

/// Re-checks `G_i o W = 0` on the box by direct summation and that `W` matches
/// the initial data wherever both are defined.
pub fn consistency_check(prob: &CauchyProblem, w: &TruncatedSeries) -> bool {
    for (e, v) in prob.initial() {
        if let Some(x) = w.get(e) {
            if x != *v {
                return false;
            }
        }
    }
    prob.basis().polys().iter().all(|g| match act(g, w) {
        Ok(image) => image.is_zero(),
        Err(_) => false,
    })
}
