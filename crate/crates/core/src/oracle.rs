//! Value oracle abstraction with query and adaptive-round accounting.
//!
//! Every algorithm in this crate reads the objective exclusively through a
//! [`ValueOracle`]. The oracle owns a shared [`QueryLedger`] so the number of
//! evaluations and the number of adaptive rounds can be compared against the
//! complexity bounds the algorithms promise.
//!
//! Two transformations are supported:
//!
//! * [`ValueOracle::contract`] builds the view `g(S) = f(base ∪ S) - f(base)`
//!   restricted to a subset of the ground set.
//! * [`ValueOracle::with_dummies`] appends virtual elements whose marginal
//!   gain is zero in every context.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Index of an element of the ground set.
///
/// Real elements occupy `0..n`; dummy elements added by
/// [`ValueOracle::with_dummies`] occupy `n..n + d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ElementId(pub usize);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for ElementId {
    fn from(i: usize) -> Self {
        ElementId(i)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Read-only membership view handed to objectives.
///
/// `for_each` must visit every member exactly once.
pub trait SetView: Sync {
    fn contains(&self, id: ElementId) -> bool;
    fn for_each(&self, f: &mut dyn FnMut(ElementId));

    fn count(&self) -> usize {
        let mut n = 0;
        self.for_each(&mut |_| n += 1);
        n
    }

    fn to_vec(&self) -> Vec<ElementId> {
        let mut out = Vec::new();
        self.for_each(&mut |id| out.push(id));
        out
    }
}

/// Insertion-ordered set of distinct element ids with O(1) membership.
#[derive(Clone, Debug, Default)]
pub struct SolutionSet {
    order: Vec<ElementId>,
    member: Vec<bool>,
}

impl SolutionSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_universe(universe: usize) -> Self {
        SolutionSet {
            order: Vec::new(),
            member: vec![false; universe],
        }
    }

    pub fn from_ids<I: IntoIterator<Item = ElementId>>(ids: I) -> Self {
        let mut s = Self::new();
        s.extend(ids);
        s
    }

    /// Inserts `id`, returning `false` if it was already present.
    pub fn insert(&mut self, id: ElementId) -> bool {
        if id.0 >= self.member.len() {
            self.member.resize((id.0 + 1).max(self.member.len() * 2), false);
        }
        if self.member[id.0] {
            return false;
        }
        self.member[id.0] = true;
        self.order.push(id);
        true
    }

    pub fn extend<I: IntoIterator<Item = ElementId>>(&mut self, ids: I) {
        for id in ids {
            self.insert(id);
        }
    }

    #[inline]
    pub fn contains(&self, id: ElementId) -> bool {
        self.member.get(id.0).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Members in insertion order.
    pub fn as_slice(&self) -> &[ElementId] {
        &self.order
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.order.iter().copied()
    }

    /// Members whose id is below `limit`, keeping insertion order.
    pub fn retain_below(&self, limit: usize) -> SolutionSet {
        SolutionSet::from_ids(self.iter().filter(|id| id.0 < limit))
    }

    pub fn sorted(&self) -> Vec<ElementId> {
        let mut v = self.order.clone();
        v.sort_unstable();
        v
    }
}

impl PartialEq for SolutionSet {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for SolutionSet {}

impl FromIterator<ElementId> for SolutionSet {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        SolutionSet::from_ids(iter)
    }
}

impl SetView for SolutionSet {
    #[inline]
    fn contains(&self, id: ElementId) -> bool {
        SolutionSet::contains(self, id)
    }

    fn for_each(&self, f: &mut dyn FnMut(ElementId)) {
        for &id in &self.order {
            f(id);
        }
    }

    fn count(&self) -> usize {
        self.order.len()
    }
}

/// Disjoint union of views plus an optional extra element.
pub struct Union<'a> {
    parts: &'a [&'a dyn SetView],
    extra: Option<ElementId>,
}

impl<'a> Union<'a> {
    pub fn new(parts: &'a [&'a dyn SetView], extra: Option<ElementId>) -> Self {
        Union { parts, extra }
    }
}

impl SetView for Union<'_> {
    fn contains(&self, id: ElementId) -> bool {
        self.extra == Some(id) || self.parts.iter().any(|p| p.contains(id))
    }

    fn for_each(&self, f: &mut dyn FnMut(ElementId)) {
        for p in self.parts {
            p.for_each(f);
        }
        if let Some(x) = self.extra {
            f(x);
        }
    }
}

/// Hides ids at or above `limit` (dummy elements) from an objective.
struct RealOnly<'a> {
    inner: &'a dyn SetView,
    limit: usize,
}

impl SetView for RealOnly<'_> {
    #[inline]
    fn contains(&self, id: ElementId) -> bool {
        id.0 < self.limit && self.inner.contains(id)
    }

    fn for_each(&self, f: &mut dyn FnMut(ElementId)) {
        let limit = self.limit;
        self.inner.for_each(&mut |id| {
            if id.0 < limit {
                f(id)
            }
        });
    }
}

/// Counters for oracle evaluations, marginal-gain queries and adaptive rounds.
///
/// All counters are monotone and safe to bump from many threads.
#[derive(Debug, Default)]
pub struct QueryLedger {
    evaluations: AtomicU64,
    marginals: AtomicU64,
    rounds: AtomicU64,
}

/// Point-in-time copy of a [`QueryLedger`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LedgerSnapshot {
    pub queries: u64,
    pub marginals: u64,
    pub rounds: u64,
}

impl LedgerSnapshot {
    pub fn since(self, earlier: LedgerSnapshot) -> LedgerSnapshot {
        LedgerSnapshot {
            queries: self.queries - earlier.queries,
            marginals: self.marginals - earlier.marginals,
            rounds: self.rounds - earlier.rounds,
        }
    }
}

impl QueryLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Raw value-oracle evaluations.
    pub fn query_count(&self) -> u64 {
        self.evaluations.load(Ordering::Relaxed)
    }

    /// Marginal-gain queries (each costs one or two evaluations).
    pub fn marginal_count(&self) -> u64 {
        self.marginals.load(Ordering::Relaxed)
    }

    pub fn round_count(&self) -> u64 {
        self.rounds.load(Ordering::Relaxed)
    }

    pub fn mark_round(&self) {
        self.rounds.fetch_add(1, Ordering::Relaxed);
    }

    pub fn mark_rounds(&self, n: u64) {
        self.rounds.fetch_add(n, Ordering::Relaxed);
    }

    pub(crate) fn add_evaluations(&self, n: u64) {
        self.evaluations.fetch_add(n, Ordering::Relaxed);
    }

    pub(crate) fn add_marginal(&self) {
        self.marginals.fetch_add(1, Ordering::Relaxed);
    }

    pub fn snapshot(&self) -> LedgerSnapshot {
        LedgerSnapshot {
            queries: self.query_count(),
            marginals: self.marginal_count(),
            rounds: self.round_count(),
        }
    }
}

/// A set function over real elements `0..universe()`.
///
/// Implementations must be pure: the same membership must always produce the
/// same value, independently of the visiting order of `for_each`.
pub trait Objective<T: Scalar>: Send + Sync {
    /// Number of real elements.
    fn universe(&self) -> usize;

    fn value(&self, set: &dyn SetView) -> T;

    /// `f(S + x) - f(S)` for `x` not in `set`. Override when a cheaper
    /// closed form exists.
    fn gain(&self, x: ElementId, set: &dyn SetView) -> T {
        let parts: [&dyn SetView; 1] = [set];
        self.value(&Union::new(&parts, Some(x))) - self.value(set)
    }

    fn name(&self) -> &str {
        "objective"
    }
}

/// Batches below this size are evaluated on the calling thread.
const PARALLEL_BATCH: usize = 128;

/// Access point to a set function, carrying contraction, dummy padding and
/// the shared ledger.
pub struct ValueOracle<T: Scalar> {
    objective: Arc<dyn Objective<T>>,
    real: usize,
    dummies: usize,
    base: Arc<SolutionSet>,
    base_value: T,
    allowed: Arc<Vec<bool>>,
    allowed_count: usize,
    ledger: Arc<QueryLedger>,
}

impl<T: Scalar> Clone for ValueOracle<T> {
    fn clone(&self) -> Self {
        ValueOracle {
            objective: Arc::clone(&self.objective),
            real: self.real,
            dummies: self.dummies,
            base: Arc::clone(&self.base),
            base_value: self.base_value,
            allowed: Arc::clone(&self.allowed),
            allowed_count: self.allowed_count,
            ledger: Arc::clone(&self.ledger),
        }
    }
}

impl<T: Scalar> fmt::Debug for ValueOracle<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ValueOracle")
            .field("objective", &self.objective.name())
            .field("ground_size", &self.allowed_count)
            .field("dummies", &self.dummies)
            .field("base", &self.base.len())
            .finish()
    }
}

impl<T: Scalar> ValueOracle<T> {
    pub fn new<O: Objective<T> + 'static>(objective: O) -> Self {
        Self::from_arc(Arc::new(objective))
    }

    pub fn from_arc(objective: Arc<dyn Objective<T>>) -> Self {
        let real = objective.universe();
        ValueOracle {
            objective,
            real,
            dummies: 0,
            base: Arc::new(SolutionSet::new()),
            base_value: T::zero(),
            allowed: Arc::new(vec![true; real]),
            allowed_count: real,
            ledger: Arc::new(QueryLedger::new()),
        }
    }

    pub fn ledger(&self) -> &QueryLedger {
        &self.ledger
    }

    pub fn shared_ledger(&self) -> Arc<QueryLedger> {
        Arc::clone(&self.ledger)
    }

    /// Same function, fresh ledger.
    pub fn with_fresh_ledger(&self) -> Self {
        let mut o = self.clone();
        o.ledger = Arc::new(QueryLedger::new());
        o
    }

    pub fn objective_name(&self) -> &str {
        self.objective.name()
    }

    /// Number of real elements this oracle may be queried on.
    pub fn ground_size(&self) -> usize {
        self.allowed_count
    }

    /// Size of the id range of real elements (dummies start here).
    pub fn real_len(&self) -> usize {
        self.real
    }

    pub fn dummy_count(&self) -> usize {
        self.dummies
    }

    /// Size of the full id range, dummies included.
    pub fn universe_len(&self) -> usize {
        self.real + self.dummies
    }

    #[inline]
    pub fn is_dummy(&self, id: ElementId) -> bool {
        id.0 >= self.real && id.0 < self.real + self.dummies
    }

    #[inline]
    pub fn is_allowed(&self, id: ElementId) -> bool {
        id.0 < self.real && self.allowed[id.0]
    }

    /// Real elements of the (restricted) ground set in ascending order.
    pub fn elements(&self) -> Vec<ElementId> {
        (0..self.real)
            .filter(|&i| self.allowed[i])
            .map(ElementId)
            .collect()
    }

    pub fn dummy_ids(&self) -> impl Iterator<Item = ElementId> {
        (self.real..self.real + self.dummies).map(ElementId)
    }

    /// Contraction base, i.e. the set `B` of `g(S) = f(B ∪ S) - f(B)`.
    pub fn base(&self) -> &SolutionSet {
        &self.base
    }

    pub fn mark_round(&self) {
        self.ledger.mark_round();
    }

    fn validate_id(&self, id: ElementId) -> Result<()> {
        if self.is_dummy(id) {
            return Ok(());
        }
        if id.0 >= self.real {
            return Err(Error::InvalidElement {
                id,
                reason: "id out of range",
            });
        }
        if !self.allowed[id.0] {
            return Err(Error::InvalidElement {
                id,
                reason: "outside the restricted ground set",
            });
        }
        Ok(())
    }

    fn validate(&self, set: &dyn SetView) -> Result<()> {
        let mut bad = None;
        set.for_each(&mut |id| {
            if bad.is_none() && self.validate_id(id).is_err() {
                bad = Some(id);
            }
        });
        match bad {
            Some(id) => self.validate_id(id),
            None => Ok(()),
        }
    }

    /// `f(S)` with dummies stripped. Costs one query.
    pub fn evaluate(&self, set: &SolutionSet) -> Result<T> {
        self.evaluate_view(set)
    }

    pub fn evaluate_view(&self, set: &dyn SetView) -> Result<T> {
        self.validate(set)?;
        Ok(self.value_unchecked(set))
    }

    /// `f(S + x) - f(S)`.
    ///
    /// With `cached = Some(f(S))` this costs one query; otherwise both sets
    /// are evaluated from scratch (two queries). Dummies cost nothing.
    pub fn marginal_gain(&self, x: ElementId, set: &SolutionSet, cached: Option<T>) -> Result<T> {
        self.validate_id(x)?;
        if set.contains(x) {
            return Err(Error::Precondition(format!("element {x} is already in the set")));
        }
        self.validate(set)?;
        if self.is_dummy(x) {
            return Ok(T::zero());
        }
        match cached {
            Some(_) => Ok(self.gain_unchecked(x, set)),
            None => {
                self.ledger.add_marginal();
                let before = self.value_unchecked(set);
                let parts: [&dyn SetView; 1] = [set];
                let after = self.value_unchecked(&Union::new(&parts, Some(x)));
                Ok(after - before)
            }
        }
    }

    /// Evaluation without id validation; counts one query.
    pub(crate) fn value_unchecked(&self, set: &dyn SetView) -> T {
        self.ledger.add_evaluations(1);
        let real = RealOnly {
            inner: set,
            limit: self.real,
        };
        if self.base.is_empty() {
            self.objective.value(&real)
        } else {
            let parts: [&dyn SetView; 2] = [&*self.base, &real];
            self.objective.value(&Union::new(&parts, None)) - self.base_value
        }
    }

    /// Marginal gain with a cached `f(S)`; counts one query unless `x` is a dummy.
    pub(crate) fn gain_unchecked(&self, x: ElementId, set: &dyn SetView) -> T {
        if x.0 >= self.real {
            return T::zero();
        }
        self.ledger.add_evaluations(1);
        self.ledger.add_marginal();
        let real = RealOnly {
            inner: set,
            limit: self.real,
        };
        if self.base.is_empty() {
            self.objective.gain(x, &real)
        } else {
            let parts: [&dyn SetView; 2] = [&*self.base, &real];
            self.objective.gain(x, &Union::new(&parts, None))
        }
    }

    /// Gains of every candidate against the same context, evaluated
    /// concurrently. The caller decides how the batch maps to rounds.
    pub(crate) fn gains_batch(&self, candidates: &[ElementId], set: &dyn SetView) -> Vec<T> {
        if candidates.len() < PARALLEL_BATCH {
            candidates.iter().map(|&x| self.gain_unchecked(x, set)).collect()
        } else {
            candidates
                .par_iter()
                .map(|&x| self.gain_unchecked(x, set))
                .collect()
        }
    }

    /// `f(∅)` and the largest singleton value `max_x f({x})` over the ground
    /// set, from one evaluation plus one batch of gains. The maximum is `None`
    /// on an empty ground set. The caller marks the round.
    pub(crate) fn singleton_scan(&self) -> (T, Option<T>) {
        let empty = SolutionSet::new();
        let base = self.value_unchecked(&empty);
        let elems = self.elements();
        let gains = self.gains_batch(&elems, &empty);
        (base, gains.into_iter().map(|g| base + g).reduce(T::max))
    }

    /// Contracted and restricted view `g(S) = f(base ∪ S) - f(base)` over `allowed`.
    ///
    /// Shares this oracle's ledger. Evaluating the new base costs one query.
    pub fn contract(&self, base: &SolutionSet, allowed: &[ElementId]) -> Result<Self> {
        let mut mask = vec![false; self.real];
        for &id in allowed {
            self.validate_id(id)?;
            if self.is_dummy(id) {
                continue;
            }
            if base.contains(id) {
                return Err(Error::Precondition(format!(
                    "element {id} is both in the base and in the allowed set"
                )));
            }
            mask[id.0] = true;
        }
        self.contract_with_mask(base, mask)
    }

    /// Contraction onto `base` whose ground set is everything currently
    /// allowed except `base` and `excluded`.
    pub fn contract_excluding(&self, base: &SolutionSet, excluded: &dyn SetView) -> Result<Self> {
        let mut mask = (*self.allowed).clone();
        for (i, m) in mask.iter_mut().enumerate() {
            if *m && (base.contains(ElementId(i)) || excluded.contains(ElementId(i))) {
                *m = false;
            }
        }
        self.contract_with_mask(base, mask)
    }

    fn contract_with_mask(&self, base: &SolutionSet, mask: Vec<bool>) -> Result<Self> {
        self.validate(base)?;
        let mut merged = (*self.base).clone();
        merged.extend(base.iter().filter(|id| id.0 < self.real));
        self.ledger.add_evaluations(1);
        let base_value = self.objective.value(&merged);
        let allowed_count = mask.iter().filter(|&&b| b).count();
        Ok(ValueOracle {
            objective: Arc::clone(&self.objective),
            real: self.real,
            dummies: self.dummies,
            base: Arc::new(merged),
            base_value,
            allowed: Arc::new(mask),
            allowed_count,
            ledger: Arc::clone(&self.ledger),
        })
    }

    /// Extends the id range by `count` dummy elements.
    pub fn with_dummies(&self, count: usize) -> Self {
        let mut o = self.clone();
        o.dummies += count;
        o
    }
}
