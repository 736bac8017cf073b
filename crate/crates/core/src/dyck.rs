//! Lattice paths above the diagonal that avoid a forbidden set, and the
//! construction of a repetition-free permutation from a convex set through a
//! concave profile.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::affine::{BoundedAffinePerm, PermError};
use crate::fset::{
    convex_hull, inversion_multiset, is_centrally_symmetric, is_convex, Frame, LatticeMultiset,
    SetError,
};
use crate::paths::LatticeVec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DyckError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error("more than {cap} paths")]
    TooManyPaths { cap: usize },
    #[error("invalid concave profile: {0}")]
    InvalidProfile(String),
    #[error("forbidden set is not centrally symmetric")]
    NotCentrallySymmetric,
    #[error("forbidden set is not convex")]
    NotConvex,
    #[error("no perturbation in the search schedule produced a valid profile for {0}")]
    SynthesisFailed(String),
    #[error("postcondition failed: {0}")]
    PostconditionFailed(String),
}

/// A unit step in the rectangular picture: `Up` raises the k-coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Step {
    Up,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    pub steps: Vec<Step>,
}

impl DyckPath {
    /// Visited points in the sheared frame, starting at the origin.
    pub fn sheared_points(&self) -> Vec<LatticeVec> {
        let mut p = LatticeVec::new(0, 0);
        let mut out = vec![p];
        for s in &self.steps {
            p = match s {
                Step::Up => LatticeVec::new(p.a + 1, p.b + 1),
                Step::Right => LatticeVec::new(p.a, p.b + 1),
            };
            out.push(p);
        }
        out
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::Up => "U",
                Step::Right => "R",
            })?;
        }
        Ok(())
    }
}

impl Serialize for DyckPath {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

fn forbidden_grid(k: i64, n: i64, forbidden: &LatticeMultiset) -> Vec<Vec<bool>> {
    let mut grid = vec![vec![false; (k + 1) as usize]; (n + 1) as usize];
    for p in forbidden.to_frame(Frame::Sheared).points() {
        if (0..=k).contains(&p.a) && (0..=n).contains(&p.b) {
            grid[p.b as usize][p.a as usize] = true;
        }
    }
    grid[0][0] = false;
    grid[n as usize][k as usize] = false;
    grid
}

fn admissible(k: i64, n: i64, grid: &[Vec<bool>], a: i64, b: i64) -> bool {
    a * n >= k * b && !grid[b as usize][a as usize]
}

/// Number of paths from `(0, 0)` to `(k, n)` with steps `(0, 1)` and `(1, 1)`
/// (sheared frame) that stay weakly above the diagonal and avoid `forbidden`.
pub fn count_avoiding_paths(k: i64, n: i64, forbidden: &LatticeMultiset) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let grid = forbidden_grid(k, n, forbidden);
    let mut col = vec![BigUint::zero(); (k + 1) as usize];
    col[0] = BigUint::one();
    for b in 1..=n {
        let mut next = vec![BigUint::zero(); (k + 1) as usize];
        for a in 0..=k {
            if !admissible(k, n, &grid, a, b) {
                continue;
            }
            let mut v = col[a as usize].clone();
            if a > 0 {
                v += &col[(a - 1) as usize];
            }
            next[a as usize] = v;
        }
        col = next;
    }
    col[k as usize].clone()
}

/// The paths counted by [`count_avoiding_paths`], in lexicographic order.
pub fn enumerate_avoiding_paths(
    k: i64,
    n: i64,
    forbidden: &LatticeMultiset,
    cap: usize,
) -> Result<Vec<DyckPath>, DyckError> {
    let count = count_avoiding_paths(k, n, forbidden);
    if count > BigUint::from(cap) {
        return Err(DyckError::TooManyPaths { cap });
    }
    let grid = forbidden_grid(k, n, forbidden);
    let mut out = Vec::new();
    let mut steps = Vec::new();
    fn walk(
        k: i64,
        n: i64,
        grid: &[Vec<bool>],
        a: i64,
        b: i64,
        steps: &mut Vec<Step>,
        out: &mut Vec<DyckPath>,
    ) {
        if b == n {
            if a == k {
                out.push(DyckPath {
                    steps: steps.clone(),
                });
            }
            return;
        }
        for (step, da) in [(Step::Up, 1), (Step::Right, 0)] {
            let (na, nb) = (a + da, b + 1);
            if na <= k && admissible(k, n, grid, na, nb) {
                steps.push(step);
                walk(k, n, grid, na, nb, steps, out);
                steps.pop();
            }
        }
    }
    if k >= 0 && k <= n {
        walk(k, n, &grid, 0, 0, &mut steps, &mut out);
    }
    Ok(out)
}

/// `H_0 = 0, ..., H_n = k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcaveProfile {
    pub k: i64,
    pub n: i64,
    pub heights: Vec<BigRational>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ProfileReport {
    pub violations: Vec<String>,
}

impl ProfileReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl ConcaveProfile {
    pub fn new(k: i64, n: i64, heights: Vec<BigRational>) -> Self {
        Self { k, n, heights }
    }

    pub fn from_pairs(k: i64, n: i64, pairs: &[(i64, i64)]) -> Self {
        Self::new(k, n, pairs.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    /// Checks endpoints, increments in `(0, 1)` and weakly decreasing, and
    /// distinct fractional parts `h_0, ..., h_{n-1}`.
    pub fn validate(&self) -> ProfileReport {
        let mut violations = Vec::new();
        let h = &self.heights;
        if h.len() as i64 != self.n + 1 {
            violations.push(format!("expected {} heights, got {}", self.n + 1, h.len()));
            return ProfileReport { violations };
        }
        if !h[0].is_zero() {
            violations.push(format!("H_0 = {} is not 0", h[0]));
        }
        if h[self.n as usize] != rat(self.k, 1) {
            violations.push(format!("H_n = {} is not k = {}", h[self.n as usize], self.k));
        }
        let inc: Vec<BigRational> = h.windows(2).map(|w| &w[1] - &w[0]).collect();
        for (i, d) in inc.iter().enumerate() {
            if *d <= BigRational::zero() || *d >= BigRational::one() {
                violations.push(format!("increment H_{} - H_{} = {d} not in (0, 1)", i + 1, i));
            }
        }
        for (i, w) in inc.windows(2).enumerate() {
            if w[1] > w[0] {
                violations.push(format!(
                    "increment {} after {} at step {} is increasing",
                    w[1],
                    w[0],
                    i + 1
                ));
            }
        }
        let mut fracs: Vec<(BigRational, usize)> = h[..self.n as usize]
            .iter()
            .enumerate()
            .map(|(r, x)| (frac(x), r))
            .collect();
        fracs.sort();
        for w in fracs.windows(2) {
            if w[0].0 == w[1].0 {
                violations.push(format!("h_{} = h_{} = {}", w[0].1, w[1].1, w[0].0));
            }
        }
        ProfileReport { violations }
    }

    /// `F'(H) = {(a, b) : k - H_{n-b} <= a <= H_b}` inside `[k-1] x [n-1]`.
    pub fn forbidden_set(&self) -> LatticeMultiset {
        let mut set = LatticeMultiset::new(Frame::Sheared, self.k, self.n);
        for a in 1..self.k {
            for b in 1..self.n {
                let lo = rat(self.k, 1) - &self.heights[(self.n - b) as usize];
                let ar = rat(a, 1);
                if lo <= ar && ar <= self.heights[b as usize] {
                    set.insert(LatticeVec::new(a, b)).expect("point is in frame");
                }
            }
        }
        set
    }
}

impl Serialize for ConcaveProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let num = |x: &BigInt| match x.to_i64() {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::from(x.to_string()),
        };
        let mut seq = serializer.serialize_seq(Some(self.heights.len()))?;
        for h in &self.heights {
            seq.serialize_element(&[num(h.numer()), num(h.denom())])?;
        }
        seq.end()
    }
}

impl fmt::Display for ConcaveProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.heights.iter().map(|h| h.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `f_H`: the n-cycle element whose orbit of 0 is ordered like the fractional parts of `H`.
pub fn profile_to_perm(profile: &ConcaveProfile) -> Result<BoundedAffinePerm, DyckError> {
    let report = profile.validate();
    if !report.is_valid() {
        return Err(DyckError::InvalidProfile(report.violations.join("; ")));
    }
    let n = profile.n as usize;
    let fracs: Vec<BigRational> = profile.heights[..n].iter().map(frac).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| fracs[x].cmp(&fracs[y]));
    let mut rank = vec![0usize; n];
    for (pos, &r) in order.iter().enumerate() {
        rank[r] = pos;
    }
    Ok(BoundedAffinePerm::from_cycle(&rank)?)
}

/// `u(b)` for `b = 0..=n`: the top of the hull of `points` over each column.
fn upper_hull_heights(points: &[LatticeVec], n: i64) -> Vec<BigRational> {
    // hull in (b, a) coordinates so that the first coordinate is the abscissa
    let swapped: Vec<LatticeVec> = points.iter().map(|p| LatticeVec::new(p.b, p.a)).collect();
    let hull = convex_hull(&swapped);
    (0..=n)
        .map(|b| {
            let mut best: Option<BigRational> = None;
            let m = hull.len();
            for t in 0..m {
                let (p, q) = (hull[t], hull[(t + 1) % m.max(1)]);
                let (lo, hi) = if p.a <= q.a { (p, q) } else { (q, p) };
                if b < lo.a || b > hi.a {
                    continue;
                }
                let y = if lo.a == hi.a {
                    rat(lo.b.max(hi.b), 1)
                } else {
                    rat(lo.b, 1) + rat((hi.b - lo.b) * (b - lo.a), hi.a - lo.a)
                };
                if best.as_ref().is_none_or(|cur| y > *cur) {
                    best = Some(y);
                }
            }
            best.expect("corners span every column")
        })
        .collect()
}

fn check_symmetric_convex(set: &LatticeMultiset) -> Result<(), DyckError> {
    if !set.is_set() {
        return Err(DyckError::Set(SetError::PreconditionViolated(
            "forbidden points must be distinct".into(),
        )));
    }
    if !is_centrally_symmetric(set) {
        return Err(DyckError::NotCentrallySymmetric);
    }
    if !is_convex(set) {
        return Err(DyckError::NotConvex);
    }
    Ok(())
}

/// A concave profile `H` with `F'(H)` equal to the given centrally symmetric
/// convex set (any frame; compared in the sheared frame).
pub fn synthesize_profile(forbidden: &LatticeMultiset) -> Result<ConcaveProfile, DyckError> {
    check_symmetric_convex(forbidden)?;
    let target = forbidden.to_frame(Frame::Sheared);
    let (k, n) = (target.k(), target.n());
    let mut pts = target.points();
    pts.push(LatticeVec::new(0, 0));
    pts.push(LatticeVec::new(k, n));
    let u = upper_hull_heights(&pts, n);
    let n2 = 8 * n * n;
    for m in 0..24u32 {
        let c = BigRational::new(BigInt::one(), BigInt::from(2u64.pow(m)));
        for s in 1..=8i64 {
            let heights: Vec<BigRational> = (0..=n)
                .map(|b| {
                    let eps = &c * rat(b * (n - b) * (s * n2 + b), n2 * s);
                    &u[b as usize] + eps
                })
                .collect();
            let profile = ConcaveProfile::new(k, n, heights);
            if !profile.validate().is_valid() {
                continue;
            }
            let floors_ok = profile
                .heights
                .iter()
                .zip(&u)
                .all(|(h, ub)| h.floor() == ub.floor());
            if floors_ok && profile.forbidden_set() == target {
                return Ok(profile);
            }
        }
    }
    Err(DyckError::SynthesisFailed(target.format_points()))
}

/// A profile together with the permutation built from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Synthesis {
    pub profile: ConcaveProfile,
    pub perm: BoundedAffinePerm,
}

/// A repetition-free `f` with `F(f)` equal to the given set, with all
/// postconditions checked.
pub fn synthesize(forbidden: &LatticeMultiset) -> Result<Synthesis, DyckError> {
    let profile = synthesize_profile(forbidden)?;
    let perm = profile_to_perm(&profile)?;
    let fs = inversion_multiset(&perm, Frame::Rect)?;
    if !fs.is_set() {
        return Err(DyckError::PostconditionFailed(format!(
            "{perm} is not repetition-free"
        )));
    }
    if fs != forbidden.to_frame(Frame::Rect) {
        return Err(DyckError::PostconditionFailed(format!(
            "F({perm}) = {{{}}} differs from the input",
            fs.format_points()
        )));
    }
    let n = perm.n() as i64;
    for r in 0..=n {
        let lhs = perm.power_apply(r, 0).div_euclid(n);
        let rhs = profile.heights[r as usize].floor().to_integer();
        if BigInt::from(lhs) != rhs {
            return Err(DyckError::PostconditionFailed(format!(
                "floor(f^{r}(0)/n) = {lhs} but floor(H_{r}) = {rhs}"
            )));
        }
    }
    Ok(Synthesis { profile, perm })
}

pub fn synthesize_perm(forbidden: &LatticeMultiset) -> Result<BoundedAffinePerm, DyckError> {
    Ok(synthesize(forbidden)?.perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(frame: Frame, k: i64, n: i64, pts: &[(i64, i64)]) -> LatticeMultiset {
        LatticeMultiset::from_points(frame, k, n, pts.iter().map(|&p| p.into())).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(
            count_avoiding_paths(3, 7, &set(Frame::Sheared, 3, 7, &[])),
            BigUint::from(5u32)
        );
        assert_eq!(
            count_avoiding_paths(3, 7, &set(Frame::Sheared, 3, 7, &[(1, 2), (2, 5)])),
            BigUint::from(3u32)
        );
        for n in 2..9 {
            assert_eq!(
                count_avoiding_paths(1, n, &set(Frame::Sheared, 1, n, &[])),
                BigUint::one()
            );
        }
    }

    #[test]
    fn enumeration() {
        let empty = set(Frame::Sheared, 3, 7, &[]);
        let paths = enumerate_avoiding_paths(3, 7, &empty, 100).unwrap();
        assert_eq!(paths.len(), 5);
        assert!(paths.iter().all(|p| p.steps.len() == 7));
        assert_eq!(
            enumerate_avoiding_paths(1, 3, &set(Frame::Sheared, 1, 3, &[]), 10)
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            enumerate_avoiding_paths(3, 7, &empty, 4),
            Err(DyckError::TooManyPaths { cap: 4 })
        );
    }

    #[test]
    fn profile_validation() {
        let good = ConcaveProfile::from_pairs(2, 5, &[(0, 1), (9, 20), (9, 10), (13, 10), (83, 50), (2, 1)]);
        assert!(good.validate().is_valid());
        let equal = ConcaveProfile::from_pairs(2, 3, &[(0, 1), (2, 3), (4, 3), (2, 1)]);
        assert!(equal.validate().is_valid());
        let path = ConcaveProfile::from_pairs(
            3,
            6,
            &[(0, 1), (1, 2), (4, 3), (11, 6), (13, 6), (8, 3), (3, 1)],
        );
        assert!(!path.validate().is_valid());
    }

    #[test]
    fn profiles_to_perms() {
        let good = ConcaveProfile::from_pairs(2, 5, &[(0, 1), (9, 20), (9, 10), (13, 10), (83, 50), (2, 1)]);
        assert_eq!(
            profile_to_perm(&good).unwrap(),
            BoundedAffinePerm::translation(2, 5).unwrap()
        );
        assert!(good.forbidden_set().is_empty());
        let equal = ConcaveProfile::from_pairs(2, 3, &[(0, 1), (2, 3), (4, 3), (2, 1)]);
        assert_eq!(profile_to_perm(&equal).unwrap().window(), &[2, 3, 4]);
        let one = ConcaveProfile::from_pairs(1, 2, &[(0, 1), (1, 2), (1, 1)]);
        assert_eq!(profile_to_perm(&one).unwrap().window(), &[1, 2]);
    }

    #[test]
    fn synthesis_examples() {
        let s = synthesize(&set(Frame::Sheared, 2, 5, &[])).unwrap();
        assert!(s.profile.validate().is_valid());
        let s = synthesize(&set(Frame::Sheared, 2, 4, &[(1, 2)])).unwrap();
        assert_eq!(s.profile.heights[2].floor(), BigRational::one());
        let s = synthesize(&set(Frame::Sheared, 3, 7, &[(1, 2), (2, 5)])).unwrap();
        assert_eq!(
            s.profile.forbidden_set(),
            set(Frame::Sheared, 3, 7, &[(1, 2), (2, 5)])
        );
        let rect = set(Frame::Rect, 3, 7, &[(1, 1), (2, 3)]);
        let f = synthesize_perm(&rect).unwrap();
        assert_eq!(inversion_multiset(&f, Frame::Rect).unwrap(), rect);
        assert_eq!(
            synthesize_perm(&set(Frame::Rect, 3, 7, &[(1, 1)])),
            Err(DyckError::NotCentrallySymmetric)
        );
    }
}
