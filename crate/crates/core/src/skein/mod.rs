//! The two skein-relation engines: full HOMFLYPT and the degree-0 part F,
//! with memoization keyed on canonical diagram encodings, plus the
//! linking-number product formula for split/connected situations.
//!
//! Both engines recurse by switching and resolving a "bad" crossing (one
//! first met on the under-strand during an ordered traversal) after
//! simplifying, until a descending unlink is reached. Switching the first
//! bad crossing strictly decreases the bad-crossing count for a fixed
//! traversal, and resolving decreases the crossing count, so the measure
//! (crossing count, bad-crossing count) decreases lexicographically.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::diagram::{Diagram, TraversalOrder};
use crate::error::{Error, Result};
use crate::poly::{unlink_factor, HomflyPoly, LaurentPoly};

/// Resource limits for a single engine call.
#[derive(Debug, Clone)]
pub struct Budget {
    /// Reject any (simplified) diagram encountered with more crossings.
    pub max_crossings: usize,
    /// Wall-clock limit per public call.
    pub timeout: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_crossings: 64,
            timeout: None,
        }
    }
}

/// How the engine picks the traversal order for each diagram it visits.
/// Computed values are independent of this choice; it only affects which
/// skein tree is explored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Components in index order, each from its first arc.
    Default,
    /// Components in index order, base points rotated by the given shift.
    Shifted(usize),
}

impl Strategy {
    fn order_for(&self, d: &Diagram) -> TraversalOrder {
        match *self {
            Strategy::Default => TraversalOrder::default_for(d),
            Strategy::Shifted(s) => TraversalOrder::alternate_for(d, s),
        }
    }
}

/// Snapshot of the engine's cache/search counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CacheStats {
    /// Skein-tree nodes visited (after simplification).
    pub nodes: u64,
    /// Memo-cache hits.
    pub hits: u64,
    /// Memo-cache misses (values computed and stored).
    pub misses: u64,
}

/// Memoizing skein engine. Cheap to share behind a reference; all public
/// methods take `&self` and are safe to call from multiple threads.
pub struct SkeinEngine {
    budget: Budget,
    strategy: Strategy,
    workers: usize,
    f_cache: Mutex<HashMap<String, LaurentPoly>>,
    h_cache: Mutex<HashMap<String, HomflyPoly>>,
    nodes: AtomicU64,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl Default for SkeinEngine {
    fn default() -> Self {
        Self::new()
    }
}

impl SkeinEngine {
    pub fn new() -> Self {
        SkeinEngine {
            budget: Budget::default(),
            strategy: Strategy::Default,
            workers: 1,
            f_cache: Mutex::new(HashMap::new()),
            h_cache: Mutex::new(HashMap::new()),
            nodes: AtomicU64::new(0),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    /// Number of threads the engine may use for sibling skein branches.
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            nodes: self.nodes.load(Ordering::Relaxed),
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
        }
    }

    pub fn reset_stats(&self) {
        self.nodes.store(0, Ordering::Relaxed);
        self.hits.store(0, Ordering::Relaxed);
        self.misses.store(0, Ordering::Relaxed);
    }

    fn deadline(&self) -> Option<Instant> {
        self.budget.timeout.map(|t| Instant::now() + t)
    }

    /// The polynomial F_L(v): the z-degree-0 part of normalized HOMFLYPT,
    /// computed directly by its simplified skein relation (resolving a
    /// crossing between two distinct components contributes nothing).
    pub fn f_polynomial(&self, d: &Diagram) -> Result<LaurentPoly> {
        self.f_rec(d, self.deadline(), 0)
    }

    /// The HOMFLYPT polynomial H_L(v, z), normalized so H(unknot) = 1.
    pub fn homfly(&self, d: &Diagram) -> Result<HomflyPoly> {
        self.h_rec(d, self.deadline(), 0)
    }

    /// F_L obtained from the full HOMFLYPT engine; oracle for
    /// [`SkeinEngine::f_polynomial`].
    pub fn f_from_homfly(&self, d: &Diagram) -> Result<LaurentPoly> {
        let h = self.homfly(d)?;
        crate::poly::z_degree_zero(&h, d.num_components())
    }

    fn check_budget(&self, d: &Diagram, deadline: Option<Instant>) -> Result<()> {
        if d.num_crossings() > self.budget.max_crossings {
            return Err(Error::BudgetExceeded(format!(
                "{} crossings exceeds limit {}",
                d.num_crossings(),
                self.budget.max_crossings
            )));
        }
        if deadline.is_some_and(|t| Instant::now() > t) {
            return Err(Error::BudgetExceeded("time limit exceeded".into()));
        }
        Ok(())
    }

    /// Evaluate the two children, possibly on separate threads. Values are
    /// deterministic regardless of scheduling: every cache entry for a key
    /// is the same polynomial by construction.
    fn join2<T: Send, F, G>(&self, depth: u32, f: F, g: G) -> (Result<T>, Result<T>)
    where
        F: FnOnce() -> Result<T> + Send,
        G: FnOnce() -> Result<T> + Send,
    {
        if self.workers > 1 && (1u32 << depth.min(16)) < self.workers as u32 * 2 {
            std::thread::scope(|s| {
                let hb = s.spawn(g);
                let a = f();
                (a, hb.join().expect("skein worker panicked"))
            })
        } else {
            (f(), g())
        }
    }

    fn f_rec(&self, d: &Diagram, deadline: Option<Instant>, depth: u32) -> Result<LaurentPoly> {
        let d = d.simplify();
        self.check_budget(&d, deadline)?;
        self.nodes.fetch_add(1, Ordering::Relaxed);
        if d.num_crossings() == 0 {
            return Ok(unlink_factor().pow(d.num_components() as u32 - 1));
        }
        let key = d.canonical_key();
        if let Some(v) = self.f_cache.lock().unwrap().get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(v.clone());
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let order = self.strategy.order_for(&d);
        let value = match d.first_bad_crossing(&order)? {
            None => unlink_factor().pow(d.num_components() as u32 - 1),
            Some(c) => {
                let sign = d.crossings()[c].sign();
                let switched = d.switch_crossing(c)?;
                let (resolved, delta) = d.resolve_crossing(c)?;
                if delta == 1 {
                    // resolving across two components contributes 0 to F
                    let f_sw = self.f_rec(&switched, deadline, depth + 1)?;
                    f_sw.shifted(2 * sign)
                } else {
                    let (f_sw, f_res) = self.join2(
                        depth,
                        || self.f_rec(&switched, deadline, depth + 1),
                        || self.f_rec(&resolved, deadline, depth + 1),
                    );
                    let (f_sw, f_res) = (f_sw?, f_res?);
                    if sign > 0 {
                        // F(L+) = v^2 F(L-) + v^2 F(L0)
                        &f_sw.shifted(2) + &f_res.shifted(2)
                    } else {
                        // F(L-) = v^-2 F(L+) - F(L0)
                        &f_sw.shifted(-2) - &f_res
                    }
                }
            }
        };
        self.f_cache.lock().unwrap().insert(key, value.clone());
        Ok(value)
    }

    fn h_rec(&self, d: &Diagram, deadline: Option<Instant>, depth: u32) -> Result<HomflyPoly> {
        let d = d.simplify();
        self.check_budget(&d, deadline)?;
        self.nodes.fetch_add(1, Ordering::Relaxed);
        if d.num_crossings() == 0 {
            return Ok(HomflyPoly::unlink_factor().pow(d.num_components() as u32 - 1));
        }
        let key = d.canonical_key();
        if let Some(v) = self.h_cache.lock().unwrap().get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(v.clone());
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let order = self.strategy.order_for(&d);
        let value = match d.first_bad_crossing(&order)? {
            None => HomflyPoly::unlink_factor().pow(d.num_components() as u32 - 1),
            Some(c) => {
                let sign = d.crossings()[c].sign();
                let switched = d.switch_crossing(c)?;
                let (resolved, _) = d.resolve_crossing(c)?;
                let (h_sw, h_res) = self.join2(
                    depth,
                    || self.h_rec(&switched, deadline, depth + 1),
                    || self.h_rec(&resolved, deadline, depth + 1),
                );
                let (h_sw, h_res) = (h_sw?, h_res?);
                if sign > 0 {
                    // H(L+) = v^2 H(L-) + v z H(L0)
                    &h_sw.shifted(2, 0) + &h_res.shifted(1, 1)
                } else {
                    // H(L-) = v^-2 H(L+) - v^-1 z H(L0)
                    &h_sw.shifted(-2, 0) - &h_res.shifted(-1, 1)
                }
            }
        };
        self.h_cache.lock().unwrap().insert(key, value.clone());
        Ok(value)
    }
}

/// The first "bad" crossing (first met on the under-strand) of `d` under the
/// given traversal order: the crossing the skein recursion would act on.
/// Errors if `d` is a descending unlink under that order.
pub fn choose_crossing(d: &Diagram, order: &TraversalOrder) -> Result<usize> {
    d.first_bad_crossing(order)?
        .ok_or_else(|| Error::InvalidDiagram("diagram is a descending unlink".into()))
}

/// The linking-number product formula
/// `F_L = (v^-2 - 1)^(n-1) * v^(2 * sum_{i<j} lk_ij) * F_{K_1} ... F_{K_n}`
/// for a link whose components have the given F polynomials and pairwise
/// linking numbers.
pub fn f_split_formula(
    component_polys: &[LaurentPoly],
    linking: &[Vec<i64>],
) -> Result<LaurentPoly> {
    let n = component_polys.len();
    if n == 0 {
        return Err(Error::DimensionMismatch(
            "need at least one component".into(),
        ));
    }
    let degenerate_ok = n == 1 && linking.is_empty();
    if !degenerate_ok && (linking.len() != n || linking.iter().any(|row| row.len() != n)) {
        return Err(Error::DimensionMismatch(format!(
            "linking matrix is not {n}x{n}"
        )));
    }
    for i in 0..linking.len() {
        for j in 0..i {
            if linking[i][j] != linking[j][i] {
                return Err(Error::DimensionMismatch(
                    "linking matrix is not symmetric".into(),
                ));
            }
        }
    }
    let mut lk_sum = 0i64;
    for i in 0..linking.len() {
        for j in (i + 1)..linking.len() {
            lk_sum += linking[i][j];
        }
    }
    let mut out = unlink_factor().pow(n as u32 - 1).shifted(2 * lk_sum);
    for p in component_polys {
        out = &out * p;
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
