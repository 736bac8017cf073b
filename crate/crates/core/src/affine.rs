//! Bounded affine permutations.
//!
//! An affine permutation of period `n` is a bijection `f: Z -> Z` with
//! `f(i + n) = f(i) + n`. It is stored by its window `f(0), ..., f(n-1)`.
//! A bounded affine permutation additionally satisfies `i <= f(i) <= i + n`,
//! and the set of those with displacement sum `k * n` is `B(k, n)`. The
//! elements whose reduction mod `n` is a single `n`-cycle form `Theta(k, n)`.
//!
//! Indexing is 0-based throughout: residues live in `0..n`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("window is empty")]
    EmptyWindow,
    #[error("f({index}) = {value} lies outside [{index}, {index} + n]")]
    NotBounded { index: usize, value: i64 },
    #[error("f({first}) and f({second}) have the same residue mod n")]
    NotBijective { first: usize, second: usize },
    #[error("displacement sum {sum} is not divisible by n = {n}")]
    NonIntegralK { sum: i64, n: usize },
    #[error("not a single n-cycle: {0}")]
    NotNCycle(String),
    #[error("period 1 admits no n-cycle element with 1 <= k <= n - 1")]
    DegeneratePeriod,
    #[error("permutation {0} is not an n-cycle element")]
    NotTheta(String),
    #[error("({i}, {j}) is not an inversion of {perm}")]
    NotAnInversion { i: i64, j: i64, perm: String },
    #[error("c-equivalence exploration exceeded {limit} elements")]
    LimitExceeded { limit: usize },
    #[error("k = {k} out of range for n = {n}")]
    BadParameters { k: i64, n: usize },
    #[error("cannot parse permutation: {0}")]
    Parse(String),
}

/// How labels in user-facing text are interpreted.
///
/// With `OneBased`, cycle labels run over `1..=n` (label `n` is residue 0) and
/// a window lists `f(1), ..., f(n)`. The underlying map on `Z` is the same.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Indexing {
    #[default]
    ZeroBased,
    OneBased,
}

/// An arbitrary `n`-periodic bijection of the integers (not necessarily bounded).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePerm {
    window: Vec<i64>,
}

impl AffinePerm {
    pub fn from_window(window: Vec<i64>) -> Result<Self, PermError> {
        if window.is_empty() {
            return Err(PermError::EmptyWindow);
        }
        let n = window.len() as i64;
        let mut seen = vec![usize::MAX; window.len()];
        for (idx, &v) in window.iter().enumerate() {
            let r = v.rem_euclid(n) as usize;
            if seen[r] != usize::MAX {
                return Err(PermError::NotBijective {
                    first: seen[r],
                    second: idx,
                });
            }
            seen[r] = idx;
        }
        Ok(Self { window })
    }

    pub(crate) fn from_window_unchecked(window: Vec<i64>) -> Self {
        debug_assert!(Self::from_window(window.clone()).is_ok());
        Self { window }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_window_unchecked((0..n as i64).collect())
    }

    /// The simple transposition swapping `i` and `i + 1` (mod `n`). Needs `n >= 2`.
    pub fn simple_transposition(n: usize, i: i64) -> Result<Self, PermError> {
        if n < 2 {
            return Err(PermError::DegeneratePeriod);
        }
        let n_i = n as i64;
        let r = i.rem_euclid(n_i);
        let window = (0..n_i)
            .map(|x| {
                if x == r {
                    x + 1
                } else if x == (r + 1) % n_i {
                    x - 1
                } else {
                    x
                }
            })
            .collect();
        Ok(Self::from_window_unchecked(window))
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn apply(&self, x: i64) -> i64 {
        let n = self.window.len() as i64;
        let (q, r) = x.div_mod_floor(&n);
        self.window[r as usize] + q * n
    }

    pub fn apply_inverse(&self, y: i64) -> i64 {
        let n = self.window.len() as i64;
        let target = y.rem_euclid(n);
        let idx = self
            .window
            .iter()
            .position(|&v| v.rem_euclid(n) == target)
            .expect("window residues form a permutation");
        idx as i64 + (y - self.window[idx]) / n * n
    }

    pub fn displacement_sum(&self) -> i64 {
        self.window
            .iter()
            .enumerate()
            .map(|(i, &v)| v - i as i64)
            .sum()
    }

    /// Coxeter length, `sum_{0 <= i < j < n} |floor((f(j) - f(i)) / n)|`.
    pub fn length(&self) -> u64 {
        let n = self.window.len() as i64;
        let mut total = 0u64;
        for i in 0..self.window.len() {
            for j in i + 1..self.window.len() {
                let d = (self.window[j] - self.window[i]).div_euclid(n);
                total += d.unsigned_abs();
            }
        }
        total
    }

    pub fn is_bounded(&self) -> bool {
        let n = self.window.len() as i64;
        self.window
            .iter()
            .enumerate()
            .all(|(i, &v)| v >= i as i64 && v <= i as i64 + n)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffinePerm) -> AffinePerm {
        assert_eq!(self.n(), other.n(), "periods must agree");
        let window = other.window.iter().map(|&v| self.apply(v)).collect();
        AffinePerm::from_window_unchecked(window)
    }

    pub fn inverse(&self) -> AffinePerm {
        let n = self.window.len() as i64;
        let window = (0..n).map(|y| self.apply_inverse(y)).collect();
        AffinePerm::from_window_unchecked(window)
    }

    /// Cycles of the reduction mod `n`, each listed from its smallest residue,
    /// ordered by that residue.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.window.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.window[x].rem_euclid(n as i64) as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Restricts to the integers whose residues lie in `residues` (which must be
    /// closed under the map) and relabels them order-preservingly.
    pub(crate) fn restrict(&self, residues: &BTreeSet<usize>) -> AffinePerm {
        let n = self.window.len();
        let m = residues.len() as i64;
        let mut pos = vec![usize::MAX; n];
        for (idx, &r) in residues.iter().enumerate() {
            pos[r] = idx;
        }
        let window = residues
            .iter()
            .map(|&s| {
                let (q, r) = self.window[s].div_mod_floor(&(n as i64));
                let p = pos[r as usize];
                debug_assert!(p != usize::MAX, "residue set is not invariant");
                p as i64 + q * m
            })
            .collect();
        AffinePerm::from_window_unchecked(window)
    }
}

/// Membership class of a bounded affine permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundednessClass {
    /// In `B(k, n)` but its reduction mod `n` is not a single `n`-cycle.
    Bounded,
    /// In `Theta(k, n)`.
    Theta,
}

/// A bounded affine permutation `f` in `B(k, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundedAffinePerm {
    perm: AffinePerm,
    k: i64,
}

/// An inversion `(i, j)` with `0 <= i < n`, `i < j < i + n` and `f(i) > f(j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Inversion {
    pub i: i64,
    pub j: i64,
}

/// Types `(k_t, n_t - k_t)` of the two factors of a crossing resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GammaPair {
    pub gamma1: (i64, i64),
    pub gamma2: (i64, i64),
}

/// Result of resolving a crossing: `f1` carries the residue of `i`, `f2` the residue of `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub f1: BoundedAffinePerm,
    pub f2: BoundedAffinePerm,
    pub gamma: GammaPair,
}

/// Product of `f` with a simple transposition. Boundedness is a flag because
/// the recurrences branch on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleProduct {
    pub perm: AffinePerm,
    pub is_bounded: bool,
    pub length_delta: i64,
}

impl SimpleProduct {
    pub fn bounded(&self) -> Option<BoundedAffinePerm> {
        if self.is_bounded {
            Some(BoundedAffinePerm::from_affine_unchecked(self.perm.clone()))
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointRemoval {
    pub perm: BoundedAffinePerm,
    pub removed: usize,
    /// Every residue was fixed; `perm` is then the period-1 identity.
    pub emptied: bool,
}

/// Displacement word minimized over cyclic shifts, encoded big-endian so that
/// byte order agrees with numeric order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn displacements(&self) -> Vec<u16> {
        self.0
            .chunks_exact(2)
            .map(|c| u16::from_be_bytes([c[0], c[1]]))
            .collect()
    }
}

impl BoundedAffinePerm {
    pub fn from_window(window: Vec<i64>) -> Result<Self, PermError> {
        if window.is_empty() {
            return Err(PermError::EmptyWindow);
        }
        let n = window.len() as i64;
        for (i, &v) in window.iter().enumerate() {
            if v < i as i64 || v > i as i64 + n {
                return Err(PermError::NotBounded { index: i, value: v });
            }
        }
        let perm = AffinePerm::from_window(window)?;
        let sum = perm.displacement_sum();
        if sum % n != 0 {
            return Err(PermError::NonIntegralK {
                sum,
                n: n as usize,
            });
        }
        Ok(Self { perm, k: sum / n })
    }

    pub(crate) fn from_affine_unchecked(perm: AffinePerm) -> Self {
        debug_assert!(perm.is_bounded());
        let n = perm.n() as i64;
        let k = perm.displacement_sum() / n;
        Self { perm, k }
    }

    pub fn from_affine(perm: AffinePerm) -> Result<Self, PermError> {
        Self::from_window(perm.window)
    }

    /// The unique element of `Theta(k, n)` whose reduction is the given
    /// `n`-cycle, written in cycle notation starting at 0.
    pub fn from_cycle(cycle: &[usize]) -> Result<Self, PermError> {
        let image = CyclePerm::from_cycle_notation(cycle)?;
        image.to_theta()
    }

    /// `f_{k,n}: i -> i + k`, for `0 <= k <= n`.
    pub fn translation(k: i64, n: usize) -> Result<Self, PermError> {
        if n == 0 || k < 0 || k > n as i64 {
            return Err(PermError::BadParameters { k, n });
        }
        Self::from_window((0..n as i64).map(|i| i + k).collect())
    }

    /// `f_{k,n} s_1 s_2 ... s_{d-1}` with `d = gcd(k, n)`: a minimal-length
    /// element of `Theta(k, n)`, of length `d - 1`.
    pub fn min_length_witness(k: i64, n: usize) -> Result<Self, PermError> {
        if n < 2 || k < 1 || k > n as i64 - 1 {
            return Err(PermError::BadParameters { k, n });
        }
        let d = k.gcd(&(n as i64));
        let mut perm = Self::translation(k, n)?.perm;
        for i in 1..d {
            perm = perm.compose(&AffinePerm::simple_transposition(n, i)?);
        }
        Self::from_affine(perm)
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn window(&self) -> &[i64] {
        self.perm.window()
    }

    pub fn as_affine(&self) -> &AffinePerm {
        &self.perm
    }

    pub fn apply(&self, x: i64) -> i64 {
        self.perm.apply(x)
    }

    pub fn apply_inverse(&self, y: i64) -> i64 {
        self.perm.apply_inverse(y)
    }

    /// `f^r(x)` for any integer `r` (negative powers use the inverse).
    pub fn power_apply(&self, r: i64, x: i64) -> i64 {
        let mut y = x;
        if r >= 0 {
            for _ in 0..r {
                y = self.apply(y);
            }
        } else {
            for _ in 0..(-r) {
                y = self.apply_inverse(y);
            }
        }
        y
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.perm.cycles()
    }

    pub fn cycle_count(&self) -> usize {
        self.perm.cycle_count()
    }

    pub fn reduction(&self) -> CyclePerm {
        let n = self.n() as i64;
        CyclePerm {
            image: self
                .window()
                .iter()
                .map(|v| v.rem_euclid(n) as usize)
                .collect(),
        }
    }

    pub fn is_theta(&self) -> bool {
        self.n() >= 2 && self.cycle_count() == 1
    }

    pub fn class(&self) -> BoundednessClass {
        if self.is_theta() {
            BoundednessClass::Theta
        } else {
            BoundednessClass::Bounded
        }
    }

    pub(crate) fn require_theta(&self) -> Result<(), PermError> {
        if self.is_theta() {
            Ok(())
        } else {
            Err(PermError::NotTheta(self.to_string()))
        }
    }

    /// Residues `i` with `f(i) = i` or `f(i) = i + n`.
    pub fn fixed_points(&self) -> Vec<usize> {
        let n = self.n() as i64;
        self.window()
            .iter()
            .enumerate()
            .filter(|(i, &v)| v == *i as i64 || v == *i as i64 + n)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn inversions(&self) -> Vec<Inversion> {
        let n = self.n() as i64;
        let mut out = Vec::new();
        for i in 0..n {
            let fi = self.apply(i);
            for j in i + 1..i + n {
                if fi > self.apply(j) {
                    out.push(Inversion { i, j });
                }
            }
        }
        out
    }

    pub fn length(&self) -> u64 {
        self.perm.length()
    }

    fn product(&self, perm: AffinePerm) -> SimpleProduct {
        let length_delta = perm.length() as i64 - self.length() as i64;
        SimpleProduct {
            is_bounded: perm.is_bounded(),
            perm,
            length_delta,
        }
    }

    /// `s_i ∘ f`.
    pub fn left_mul_s(&self, i: i64) -> Result<SimpleProduct, PermError> {
        let s = AffinePerm::simple_transposition(self.n(), i)?;
        Ok(self.product(s.compose(&self.perm)))
    }

    /// `f ∘ s_i`.
    pub fn right_mul_s(&self, i: i64) -> Result<SimpleProduct, PermError> {
        let s = AffinePerm::simple_transposition(self.n(), i)?;
        Ok(self.product(self.perm.compose(&s)))
    }

    /// `s_i f s_i`.
    pub fn conjugate_s(&self, i: i64) -> Result<SimpleProduct, PermError> {
        let s = AffinePerm::simple_transposition(self.n(), i)?;
        Ok(self.product(s.compose(&self.perm).compose(&s)))
    }

    /// `(σf)(i) = f(i - 1) + 1`.
    pub fn cyclic_shift(&self) -> Self {
        let window = (0..self.n() as i64)
            .map(|i| self.apply(i - 1) + 1)
            .collect();
        Self {
            perm: AffinePerm::from_window_unchecked(window),
            k: self.k,
        }
    }

    /// The 180-degree rotation `g(j) = -f^{-1}(-j)`; its small path is the
    /// point reflection of the small path of `f` through `δ/2`.
    pub fn rotate_180(&self) -> Result<Self, PermError> {
        self.require_theta()?;
        let window = (0..self.n() as i64)
            .map(|j| -self.apply_inverse(-j))
            .collect();
        Self::from_window(window)
    }

    /// `(a, b, c, d) = (f^{-1}(i+1), f^{-1}(i), f(i+1), f(i))` with `i` reduced mod `n`.
    pub fn crossing_quadruple(&self, i: i64) -> (i64, i64, i64, i64) {
        let i = i.rem_euclid(self.n() as i64);
        (
            self.apply_inverse(i + 1),
            self.apply_inverse(i),
            self.apply(i + 1),
            self.apply(i),
        )
    }

    /// Whether `a < b < i < i + 1 < c < d`.
    pub fn has_double_crossing_at(&self, i: i64) -> bool {
        let r = i.rem_euclid(self.n() as i64);
        let (a, b, c, d) = self.crossing_quadruple(r);
        a < b && b < r && r + 1 < c && c < d
    }

    /// Whether residues `i` and `i + 1` lie in the same cycle of the reduction.
    pub fn same_cycle(&self, i: i64) -> bool {
        let n = self.n() as i64;
        let a = i.rem_euclid(n) as usize;
        let b = (i + 1).rem_euclid(n) as usize;
        self.cycles()
            .iter()
            .any(|c| c.contains(&a) && c.contains(&b))
    }

    fn normalize_inversion(&self, inv: Inversion) -> Result<Inversion, PermError> {
        let n = self.n() as i64;
        let t = inv.i.div_euclid(n);
        let norm = Inversion {
            i: inv.i - t * n,
            j: inv.j - t * n,
        };
        let ok = norm.i < norm.j
            && norm.j < norm.i + n
            && self.apply(norm.i) > self.apply(norm.j);
        if ok {
            Ok(norm)
        } else {
            Err(PermError::NotAnInversion {
                i: inv.i,
                j: inv.j,
                perm: self.to_string(),
            })
        }
    }

    /// Swaps the values at the inversion (periodically), splits the result
    /// into the cycle through `i` and the cycle through `j`, and relabels each.
    pub fn resolve_crossing(&self, inv: Inversion) -> Result<Resolution, PermError> {
        self.require_theta()?;
        let inv = self.normalize_inversion(inv)?;
        let n = self.n() as i64;
        let (fi, fj) = (self.apply(inv.i), self.apply(inv.j));
        let mut window = self.window().to_vec();
        let (jq, jr) = inv.j.div_mod_floor(&n);
        window[inv.i as usize] = fj;
        window[jr as usize] = fi - jq * n;
        let swapped = AffinePerm::from_window_unchecked(window);
        let cycles = swapped.cycles();
        debug_assert_eq!(cycles.len(), 2);
        let cycle_of = |r: i64| -> BTreeSet<usize> {
            cycles
                .iter()
                .find(|c| c.contains(&(r as usize)))
                .expect("every residue lies on a cycle")
                .iter()
                .copied()
                .collect()
        };
        let f1 = Self::from_affine(swapped.restrict(&cycle_of(inv.i)))?;
        let f2 = Self::from_affine(swapped.restrict(&cycle_of(jr)))?;
        f1.require_theta()?;
        f2.require_theta()?;
        let gamma = GammaPair {
            gamma1: (f1.k, f1.n() as i64 - f1.k),
            gamma2: (f2.k, f2.n() as i64 - f2.k),
        };
        Ok(Resolution { f1, f2, gamma })
    }

    /// Deletes every residue with `f(i) = i` or `f(i) = i + n` and relabels
    /// the rest.
    pub fn remove_fixed_points(&self) -> FixedPointRemoval {
        let fixed = self.fixed_points();
        if fixed.is_empty() {
            return FixedPointRemoval {
                perm: self.clone(),
                removed: 0,
                emptied: false,
            };
        }
        let keep: BTreeSet<usize> = (0..self.n()).filter(|r| !fixed.contains(r)).collect();
        if keep.is_empty() {
            return FixedPointRemoval {
                perm: Self::translation(0, 1).expect("period-1 identity"),
                removed: fixed.len(),
                emptied: true,
            };
        }
        FixedPointRemoval {
            perm: Self::from_affine_unchecked(self.perm.restrict(&keep)),
            removed: fixed.len(),
            emptied: false,
        }
    }

    /// The restriction to the cycle of the reduction through `residue`.
    pub fn restrict_to_cycle(&self, residue: i64) -> Self {
        let r = residue.rem_euclid(self.n() as i64) as usize;
        let cycle: BTreeSet<usize> = self
            .cycles()
            .into_iter()
            .find(|c| c.contains(&r))
            .expect("every residue lies on a cycle")
            .into_iter()
            .collect();
        Self::from_affine_unchecked(self.perm.restrict(&cycle))
    }

    pub fn displacements(&self) -> Vec<i64> {
        self.window()
            .iter()
            .enumerate()
            .map(|(i, &v)| v - i as i64)
            .collect()
    }

    /// Key shared by exactly the elements of one cyclic-shift orbit.
    pub fn canonical_key(&self) -> CanonicalKey {
        let d: Vec<u16> = self.displacements().iter().map(|&x| x as u16).collect();
        let n = d.len();
        let best = (0..n)
            .map(|t| {
                let mut rot = d[t..].to_vec();
                rot.extend_from_slice(&d[..t]);
                rot
            })
            .min()
            .expect("nonempty window");
        CanonicalKey(best.iter().flat_map(|x| x.to_be_bytes()).collect())
    }

    /// Length-preserving simple conjugations that stay bounded.
    pub fn c_neighbors(&self) -> Vec<BoundedAffinePerm> {
        if self.n() < 2 {
            return Vec::new();
        }
        let len = self.length();
        (0..self.n() as i64)
            .filter_map(|i| {
                let g = self.conjugate_s(i).ok()?;
                (g.is_bounded && g.perm.length() == len && g.perm != self.perm)
                    .then(|| Self::from_affine_unchecked(g.perm))
            })
            .collect()
    }

    /// Breadth-first closure under length-preserving bounded simple
    /// conjugations, sorted by window.
    pub fn c_equivalence_class(
        &self,
        limit: Option<usize>,
    ) -> Result<Vec<BoundedAffinePerm>, PermError> {
        let mut seen: HashSet<BoundedAffinePerm> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.clone());
        queue.push_back(self.clone());
        while let Some(f) = queue.pop_front() {
            for g in f.c_neighbors() {
                if seen.contains(&g) {
                    continue;
                }
                if let Some(limit) = limit {
                    if seen.len() >= limit {
                        return Err(PermError::LimitExceeded { limit });
                    }
                }
                seen.insert(g.clone());
                queue.push_back(g);
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    pub fn parse_with(text: &str, indexing: Indexing) -> Result<Self, PermError> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("window:") {
            let values = parse_list(rest)?;
            let window = match indexing {
                Indexing::ZeroBased => values,
                Indexing::OneBased => {
                    // values are f(1), ..., f(n); f(0) = f(n) - n
                    let n = values.len() as i64;
                    let mut w = Vec::with_capacity(values.len());
                    if let Some(&last) = values.last() {
                        w.push(last - n);
                        w.extend_from_slice(&values[..values.len() - 1]);
                    }
                    w
                }
            };
            Self::from_window(window)
        } else if let Some(rest) = text.strip_prefix("cycle:") {
            let labels = parse_list(rest.trim().trim_start_matches('(').trim_end_matches(')'))?;
            let n = labels.len() as i64;
            let residues: Vec<usize> = labels
                .iter()
                .map(|&l| match indexing {
                    Indexing::ZeroBased => l,
                    Indexing::OneBased => l.rem_euclid(n.max(1)),
                })
                .map(|l| usize::try_from(l).map_err(|_| PermError::Parse(format!("bad label {l}"))))
                .collect::<Result<_, _>>()?;
            let start = residues
                .iter()
                .position(|&r| r == 0)
                .ok_or_else(|| PermError::NotNCycle("cycle does not contain 0".into()))?;
            let mut rotated = residues[start..].to_vec();
            rotated.extend_from_slice(&residues[..start]);
            Self::from_cycle(&rotated)
        } else if text.starts_with('{') {
            let parsed: BoundedAffinePerm =
                serde_json::from_str(text).map_err(|e| PermError::Parse(e.to_string()))?;
            Ok(parsed)
        } else {
            Err(PermError::Parse(format!(
                "expected `window:...`, `cycle:(...)` or a JSON object, got `{text}`"
            )))
        }
    }
}

fn parse_list(text: &str) -> Result<Vec<i64>, PermError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| PermError::Parse(format!("`{s}` is not an integer")))
        })
        .collect()
}

impl FromStr for BoundedAffinePerm {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_with(s, Indexing::ZeroBased)
    }
}

impl fmt::Display for BoundedAffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "window:")?;
        for (idx, v) in self.window().iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PermJson {
    n: usize,
    k: i64,
    window: Vec<i64>,
}

impl Serialize for BoundedAffinePerm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PermJson {
            n: self.n(),
            k: self.k,
            window: self.window().to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BoundedAffinePerm {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PermJson::deserialize(deserializer)?;
        let perm = Self::from_window(raw.window).map_err(D::Error::custom)?;
        if perm.n() != raw.n || perm.k != raw.k {
            return Err(D::Error::custom(format!(
                "declared (n, k) = ({}, {}) but window gives ({}, {})",
                raw.n,
                raw.k,
                perm.n(),
                perm.k
            )));
        }
        Ok(perm)
    }
}

/// A finite permutation of `{0, ..., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclePerm {
    pub image: Vec<usize>,
}

impl CyclePerm {
    pub fn new(image: Vec<usize>) -> Result<Self, PermError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for (idx, &v) in image.iter().enumerate() {
            if v >= n || seen[v] {
                return Err(PermError::NotBijective {
                    first: idx,
                    second: idx,
                });
            }
            seen[v] = true;
        }
        Ok(Self { image })
    }

    /// Reads an `n`-cycle `(0, c_1, ..., c_{n-1})`.
    pub fn from_cycle_notation(cycle: &[usize]) -> Result<Self, PermError> {
        let n = cycle.len();
        if n == 0 {
            return Err(PermError::EmptyWindow);
        }
        if cycle[0] != 0 {
            return Err(PermError::NotNCycle(format!(
                "cycle must start at 0, got {:?}",
                cycle
            )));
        }
        let mut seen = vec![false; n];
        for &c in cycle {
            if c >= n || seen[c] {
                return Err(PermError::NotNCycle(format!(
                    "{:?} is not a permutation of 0..{n}",
                    cycle
                )));
            }
            seen[c] = true;
        }
        let mut image = vec![0; n];
        for t in 0..n {
            image[cycle[t]] = cycle[(t + 1) % n];
        }
        Ok(Self { image })
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// `#{i : image(i) < i}`.
    pub fn k(&self) -> usize {
        self.image
            .iter()
            .enumerate()
            .filter(|(i, &v)| v < *i)
            .count()
    }

    pub fn is_n_cycle(&self) -> bool {
        let n = self.n();
        let mut x = 0;
        for step in 1..=n {
            x = self.image[x];
            if x == 0 {
                return step == n;
            }
        }
        false
    }

    /// Cycle notation starting at 0 (only meaningful for `n`-cycles).
    pub fn cycle_notation(&self) -> Vec<usize> {
        let mut out = vec![0];
        let mut x = self.image[0];
        while x != 0 {
            out.push(x);
            x = self.image[x];
        }
        out
    }

    /// The bounded lift with `i < f(i) < i + n`.
    pub fn to_theta(&self) -> Result<BoundedAffinePerm, PermError> {
        let n = self.n();
        if n == 1 {
            return Err(PermError::DegeneratePeriod);
        }
        if !self.is_n_cycle() {
            return Err(PermError::NotNCycle(format!("{:?}", self.image)));
        }
        let window = self
            .image
            .iter()
            .enumerate()
            .map(|(i, &v)| if v > i { v as i64 } else { (v + n) as i64 })
            .collect();
        BoundedAffinePerm::from_window(window)
    }
}
