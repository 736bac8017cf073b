//! Memoized evaluation of `R_f(q)`, `R̃_f(q)` and `C_f` by recurrence.
//!
//! Every evaluation follows the same reduction order:
//!
//! 1. `n = 1` is the base case.
//! 2. Fixed points are removed.
//! 3. The first `i` with `f(i) = i + 1` or `f(i + 1) = i + n` peels off `s_i`.
//! 4. The first `i` for which `g = s_i f s_i` is bounded with a double
//!    crossing at `i` expresses `f` through `f s_i` and `g`.
//! 5. Otherwise the c-equivalence class of `f` is searched breadth-first for
//!    a member where one of the previous steps applies.
//!
//! Results are cached per cyclic-shift orbit unless [`KeyMode::Window`] is chosen.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::affine::{BoundedAffinePerm, BoundednessClass, CanonicalKey, PermError};
use crate::poly::{IntPoly, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("no reduction applies anywhere in the class of {0}")]
    IrreducibleElement(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("recurrence produced a non-positive value for {0}")]
    NonPositive(String),
}

/// One applied rule, as emitted in trace mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum TraceEvent {
    Base { window: Vec<i64> },
    CacheHit { window: Vec<i64> },
    RemoveFixedPoints { window: Vec<i64>, removed: usize, result: Vec<i64> },
    SimpleFactor { window: Vec<i64>, i: usize, result: Vec<i64> },
    DoubleCrossing {
        window: Vec<i64>,
        i: usize,
        f_si: Vec<i64>,
        g: Vec<i64>,
        same_cycle: bool,
    },
    ClassMove { window: Vec<i64>, member: Vec<i64>, explored: usize },
}

#[derive(Clone, Debug)]
enum Step {
    Base,
    FixedPoints(BoundedAffinePerm),
    Simple(BoundedAffinePerm),
    Double {
        f_si: BoundedAffinePerm,
        g: BoundedAffinePerm,
        same_cycle: bool,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub r_entries: usize,
    pub c_entries: usize,
}

/// How cache entries are keyed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum KeyMode {
    /// One entry per cyclic-shift orbit.
    #[default]
    Orbit,
    /// One entry per window. Slower, but keeps shifted inputs independent,
    /// which is what the shift-invariance checks need.
    Window,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum CacheId {
    Orbit(CanonicalKey),
    Window(Vec<i64>),
}

type Key = (CacheId, BoundednessClass);

pub struct Engine {
    r_cache: HashMap<Key, IntPoly>,
    c_cache: HashMap<Key, BigUint>,
    hits: u64,
    misses: u64,
    trace: Option<Vec<TraceEvent>>,
    class_limit: Option<usize>,
    key_mode: KeyMode,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    pub fn new() -> Self {
        Self {
            r_cache: HashMap::new(),
            c_cache: HashMap::new(),
            hits: 0,
            misses: 0,
            trace: None,
            class_limit: None,
            key_mode: KeyMode::Orbit,
        }
    }

    pub fn with_key_mode(mut self, mode: KeyMode) -> Self {
        self.key_mode = mode;
        self
    }

    /// Records every applied rule; retrieve them with [`Engine::take_trace`].
    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn with_class_limit(mut self, limit: usize) -> Self {
        self.class_limit = Some(limit);
        self
    }

    pub fn take_trace(&mut self) -> Vec<TraceEvent> {
        self.trace.as_mut().map(std::mem::take).unwrap_or_default()
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits,
            misses: self.misses,
            r_entries: self.r_cache.len(),
            c_entries: self.c_cache.len(),
        }
    }

    pub fn clear(&mut self) {
        self.r_cache.clear();
        self.c_cache.clear();
    }

    fn emit(&mut self, event: impl FnOnce() -> TraceEvent) {
        if let Some(trace) = self.trace.as_mut() {
            trace.push(event());
        }
    }

    fn key(&self, f: &BoundedAffinePerm) -> Key {
        let id = match self.key_mode {
            KeyMode::Orbit => CacheId::Orbit(f.canonical_key()),
            KeyMode::Window => CacheId::Window(f.window().to_vec()),
        };
        (id, f.class())
    }

    /// The step applying directly at `f`, if any.
    fn direct_step(f: &BoundedAffinePerm) -> Result<Option<(usize, Step)>, EngineError> {
        let n = f.n();
        if n == 1 {
            return Ok(Some((0, Step::Base)));
        }
        let removal = f.remove_fixed_points();
        if removal.removed > 0 {
            return Ok(Some((removal.removed, Step::FixedPoints(removal.perm))));
        }
        let n_i = n as i64;
        for i in 0..n_i {
            if f.apply(i) == i + 1 || f.apply(i + 1) == i + n_i {
                let next = f.left_mul_s(i)?.bounded().ok_or_else(|| {
                    EngineError::PreconditionViolated(format!("s_{i} f is unbounded for {f}"))
                })?;
                return Ok(Some((i as usize, Step::Simple(next))));
            }
        }
        for i in 0..n_i {
            let Some(g) = f.conjugate_s(i)?.bounded() else {
                continue;
            };
            if !g.has_double_crossing_at(i) {
                continue;
            }
            debug_assert_eq!(g.length(), f.length() + 2);
            let f_si = f.right_mul_s(i)?.bounded().ok_or_else(|| {
                EngineError::PreconditionViolated(format!("f s_{i} is unbounded for {f}"))
            })?;
            let same_cycle = g.same_cycle(i);
            return Ok(Some((
                i as usize,
                Step::Double {
                    f_si,
                    g,
                    same_cycle,
                },
            )));
        }
        Ok(None)
    }

    /// A class member of `f` (possibly `f` itself) with an applicable step.
    fn plan(
        &mut self,
        f: &BoundedAffinePerm,
    ) -> Result<(BoundedAffinePerm, usize, Step), EngineError> {
        if let Some((i, step)) = Self::direct_step(f)? {
            return Ok((f.clone(), i, step));
        }
        let mut seen: HashSet<BoundedAffinePerm> = HashSet::from([f.clone()]);
        let mut queue: VecDeque<BoundedAffinePerm> = f.c_neighbors().into();
        seen.extend(queue.iter().cloned());
        while let Some(member) = queue.pop_front() {
            if let Some((i, step)) = Self::direct_step(&member)? {
                let explored = seen.len();
                self.emit(|| TraceEvent::ClassMove {
                    window: f.window().to_vec(),
                    member: member.window().to_vec(),
                    explored,
                });
                return Ok((member, i, step));
            }
            for next in member.c_neighbors() {
                if seen.insert(next.clone()) {
                    if let Some(limit) = self.class_limit {
                        if seen.len() > limit {
                            return Err(PermError::LimitExceeded { limit }.into());
                        }
                    }
                    queue.push_back(next);
                }
            }
        }
        Err(EngineError::IrreducibleElement(f.to_string()))
    }

    fn trace_step(&mut self, member: &BoundedAffinePerm, i: usize, step: &Step) {
        let window = member.window().to_vec();
        self.emit(|| match step {
            Step::Base => TraceEvent::Base { window },
            Step::FixedPoints(next) => TraceEvent::RemoveFixedPoints {
                window,
                removed: i,
                result: next.window().to_vec(),
            },
            Step::Simple(next) => TraceEvent::SimpleFactor {
                window,
                i,
                result: next.window().to_vec(),
            },
            Step::Double {
                f_si,
                g,
                same_cycle,
            } => TraceEvent::DoubleCrossing {
                window,
                i,
                f_si: f_si.window().to_vec(),
                g: g.window().to_vec(),
                same_cycle: *same_cycle,
            },
        });
    }

    /// `R_f(q)`.
    pub fn compute_r(&mut self, f: &BoundedAffinePerm) -> Result<IntPoly, EngineError> {
        let key = self.key(f);
        if let Some(hit) = self.r_cache.get(&key) {
            self.hits += 1;
            let hit = hit.clone();
            self.emit(|| TraceEvent::CacheHit {
                window: f.window().to_vec(),
            });
            return Ok(hit);
        }
        self.misses += 1;
        let (member, i, step) = self.plan(f)?;
        self.trace_step(&member, i, &step);
        let q_minus_one = IntPoly::from_i64s(&[-1, 1]);
        let value = match step {
            Step::Base => IntPoly::one(),
            Step::FixedPoints(next) => self.compute_r(&next)?,
            Step::Simple(next) => &q_minus_one * &self.compute_r(&next)?,
            Step::Double { f_si, g, .. } => {
                let a = &q_minus_one * &self.compute_r(&f_si)?;
                let b = &IntPoly::q() * &self.compute_r(&g)?;
                &a + &b
            }
        };
        self.r_cache.insert(key, value.clone());
        Ok(value)
    }

    /// `R̃_f(q) = R_f(q) / (q - 1)^{n - c(f)}`.
    pub fn compute_rtilde(&mut self, f: &BoundedAffinePerm) -> Result<IntPoly, EngineError> {
        let r = self.compute_r(f)?;
        let e = (f.n() - f.cycle_count()) as u32;
        Ok(r.exact_div(&IntPoly::q_minus_one_pow(e))?)
    }

    /// `C_f = R̃_f(1)`, by the integer form of the recurrence.
    pub fn compute_c(&mut self, f: &BoundedAffinePerm) -> Result<BigUint, EngineError> {
        let key = self.key(f);
        if let Some(hit) = self.c_cache.get(&key) {
            self.hits += 1;
            let hit = hit.clone();
            self.emit(|| TraceEvent::CacheHit {
                window: f.window().to_vec(),
            });
            return Ok(hit);
        }
        self.misses += 1;
        let (member, i, step) = self.plan(f)?;
        self.trace_step(&member, i, &step);
        let value = match step {
            Step::Base => BigUint::one(),
            Step::FixedPoints(next) | Step::Simple(next) => self.compute_c(&next)?,
            Step::Double {
                f_si,
                g,
                same_cycle,
            } => {
                let cg = self.compute_c(&g)?;
                if same_cycle {
                    self.compute_c(&f_si)? + cg
                } else {
                    cg
                }
            }
        };
        if value.is_zero() {
            return Err(EngineError::NonPositive(f.to_string()));
        }
        self.c_cache.insert(key, value.clone());
        Ok(value)
    }

    /// Product of `C` over the restrictions of `f` to the cycles of its reduction.
    pub fn compute_c_decoupled(&mut self, f: &BoundedAffinePerm) -> Result<BigUint, EngineError> {
        let mut product = BigUint::one();
        for cycle in f.cycles() {
            let part = f.restrict_to_cycle(cycle[0] as i64);
            product *= self.compute_c(&part)?;
        }
        Ok(product)
    }

    /// Checks `C(s_i f s_i) = C(f_1) C(f_2) + C(f)` where `f_1, f_2` resolve
    /// the crossing `(i, i + 1)` of `f`.
    pub fn double_crossing_recurrence_check(
        &mut self,
        f: &BoundedAffinePerm,
        i: i64,
    ) -> Result<bool, EngineError> {
        if !f.is_theta() || !f.has_double_crossing_at(i) {
            return Err(EngineError::PreconditionViolated(format!(
                "{f} has no double crossing at {i}"
            )));
        }
        let r = i.rem_euclid(f.n() as i64);
        let h = f.conjugate_s(r)?.bounded().ok_or_else(|| {
            EngineError::PreconditionViolated(format!("s_{r} f s_{r} is unbounded for {f}"))
        })?;
        let res = f.resolve_crossing(crate::affine::Inversion { i: r, j: r + 1 })?;
        let lhs = self.compute_c(&h)?;
        let rhs = self.compute_c(&res.f1)? * self.compute_c(&res.f2)? + self.compute_c(f)?;
        Ok(lhs == rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn w(v: &[i64]) -> BoundedAffinePerm {
        BoundedAffinePerm::from_window(v.to_vec()).unwrap()
    }

    #[test]
    fn base_and_small_cases() {
        let mut e = Engine::new();
        assert_eq!(e.compute_r(&w(&[0])).unwrap(), IntPoly::one());
        assert_eq!(e.compute_r(&w(&[1])).unwrap(), IntPoly::one());
        assert_eq!(e.compute_r(&w(&[1, 2])).unwrap(), IntPoly::from_i64s(&[-1, 1]));
        assert_eq!(e.compute_rtilde(&w(&[1, 2])).unwrap(), IntPoly::one());
        assert_eq!(e.compute_c(&w(&[1, 2])).unwrap(), BigUint::one());
    }

    #[test]
    fn trace_of_two_cycle() {
        let mut e = Engine::new().with_trace();
        e.compute_r(&w(&[1, 2])).unwrap();
        let trace = e.take_trace();
        assert!(matches!(trace[0], TraceEvent::SimpleFactor { i: 0, .. }));
        assert!(matches!(trace[1], TraceEvent::RemoveFixedPoints { removed: 2, .. }));
        assert!(matches!(trace[2], TraceEvent::Base { .. }));
    }

    #[test]
    fn catalan_values() {
        let mut e = Engine::new();
        let f25 = BoundedAffinePerm::translation(2, 5).unwrap();
        assert_eq!(e.compute_c(&f25).unwrap(), BigUint::from(2u32));
        assert_eq!(
            e.compute_rtilde(&f25).unwrap().eval_at(&BigInt::one()),
            BigInt::from(2)
        );
        let f37 = BoundedAffinePerm::translation(3, 7).unwrap();
        assert_eq!(e.compute_c(&f37).unwrap(), BigUint::from(5u32));
        assert_eq!(e.compute_c(&w(&[3, 4, 5, 8, 6, 7, 9])).unwrap(), BigUint::from(3u32));
        assert_eq!(e.compute_c(&w(&[3, 6, 4, 5, 7, 8, 9])).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn decoupling_two_cycles() {
        let mut e = Engine::new();
        let f = w(&[1, 4, 3, 6]);
        assert_eq!(e.compute_c_decoupled(&f).unwrap(), BigUint::one());
        assert_eq!(e.compute_c(&f).unwrap(), BigUint::one());
    }

    #[test]
    fn double_crossing_identity() {
        let mut e = Engine::new();
        let g = w(&[1, 4, 3, 5, 7]);
        assert!(e.double_crossing_recurrence_check(&g, 1).unwrap());
        assert_eq!(e.compute_c(&g).unwrap(), BigUint::one());
        let f25 = BoundedAffinePerm::translation(2, 5).unwrap();
        assert!(matches!(
            e.double_crossing_recurrence_check(&f25, 0),
            Err(EngineError::PreconditionViolated(_))
        ));
    }
}
