//! Inversion multisets and the lattice geometry around them.
//!
//! Points are `(a, b)` with `a` the k-coordinate. In the rectangular frame
//! the corner is `δ̄ = (k, n - k)`; in the sheared frame it is `δ = (k, n)`,
//! and `(a, b) -> (a, a + b)` maps the first onto the second.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::{BoundedAffinePerm, Inversion, PermError};
use crate::paths::LatticeVec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SetError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("permutation {0} is not repetition-free")]
    NotRepetitionFree(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("point ({a}, {b}) lies outside the {frame} frame for k = {k}, n = {n}")]
    OutOfFrame {
        a: i64,
        b: i64,
        frame: Frame,
        k: i64,
        n: i64,
    },
    #[error("cannot parse point set: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    Rect,
    Sheared,
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Frame::Rect => "rect",
            Frame::Sheared => "sheared",
        })
    }
}

impl FromStr for Frame {
    type Err = SetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rect" => Ok(Frame::Rect),
            "sheared" => Ok(Frame::Sheared),
            other => Err(SetError::Parse(format!("unknown frame `{other}`"))),
        }
    }
}

/// A finite multiset of lattice points in one of the two frames.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMultiset {
    frame: Frame,
    k: i64,
    n: i64,
    entries: BTreeMap<LatticeVec, u32>,
}

impl LatticeMultiset {
    pub fn new(frame: Frame, k: i64, n: i64) -> Self {
        Self {
            frame,
            k,
            n,
            entries: BTreeMap::new(),
        }
    }

    /// Points must lie in `[1, k-1] x [1, n-k-1]` (rect) or `[1, k-1] x [1, n-1]` (sheared).
    pub fn from_points(
        frame: Frame,
        k: i64,
        n: i64,
        points: impl IntoIterator<Item = LatticeVec>,
    ) -> Result<Self, SetError> {
        let mut set = Self::new(frame, k, n);
        for p in points {
            set.insert(p)?;
        }
        Ok(set)
    }

    pub fn insert(&mut self, p: LatticeVec) -> Result<(), SetError> {
        let (_, bmax) = self.box_bounds();
        if p.a < 1 || p.a > self.k - 1 || p.b < 1 || p.b > bmax {
            return Err(SetError::OutOfFrame {
                a: p.a,
                b: p.b,
                frame: self.frame,
                k: self.k,
                n: self.n,
            });
        }
        *self.entries.entry(p).or_insert(0) += 1;
        Ok(())
    }

    fn box_bounds(&self) -> (i64, i64) {
        match self.frame {
            Frame::Rect => (self.k - 1, self.n - self.k - 1),
            Frame::Sheared => (self.k - 1, self.n - 1),
        }
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// The far corner: `(k, n - k)` or `(k, n)`.
    pub fn delta(&self) -> LatticeVec {
        match self.frame {
            Frame::Rect => LatticeVec::new(self.k, self.n - self.k),
            Frame::Sheared => LatticeVec::new(self.k, self.n),
        }
    }

    pub fn multiplicity(&self, p: LatticeVec) -> u32 {
        self.entries.get(&p).copied().unwrap_or(0)
    }

    /// Distinct points with their multiplicities, in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (LatticeVec, u32)> + '_ {
        self.entries.iter().map(|(&p, &m)| (p, m))
    }

    pub fn points(&self) -> Vec<LatticeVec> {
        self.entries.keys().copied().collect()
    }

    pub fn total(&self) -> u64 {
        self.entries.values().map(|&m| m as u64).sum()
    }

    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_set(&self) -> bool {
        self.entries.values().all(|&m| m == 1)
    }

    pub fn contains(&self, p: LatticeVec) -> bool {
        self.entries.contains_key(&p)
    }

    pub fn to_frame(&self, frame: Frame) -> Self {
        if frame == self.frame {
            return self.clone();
        }
        let map = |p: LatticeVec| match frame {
            Frame::Sheared => LatticeVec::new(p.a, p.a + p.b),
            Frame::Rect => LatticeVec::new(p.a, p.b - p.a),
        };
        Self {
            frame,
            k: self.k,
            n: self.n,
            entries: self.entries.iter().map(|(&p, &m)| (map(p), m)).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let points: Vec<[i64; 2]> = self
            .entries
            .iter()
            .flat_map(|(p, &m)| std::iter::repeat_n([p.a, p.b], m as usize))
            .collect();
        serde_json::json!({
            "frame": self.frame,
            "k": self.k,
            "m": self.delta().b,
            "points": points,
        })
    }

    /// Reads `{"frame", "k", "m", "points"}` where `m` is the second
    /// coordinate of the corner in that frame.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, SetError> {
        #[derive(Deserialize)]
        struct Raw {
            frame: Frame,
            k: i64,
            m: i64,
            points: Vec<[i64; 2]>,
        }
        let raw: Raw =
            serde_json::from_value(value.clone()).map_err(|e| SetError::Parse(e.to_string()))?;
        let n = match raw.frame {
            Frame::Rect => raw.m + raw.k,
            Frame::Sheared => raw.m,
        };
        Self::from_points(
            raw.frame,
            raw.k,
            n,
            raw.points.iter().map(|p| LatticeVec::new(p[0], p[1])),
        )
    }

    /// Parses `1,1;2,3` (an empty string is the empty set).
    pub fn parse_points(text: &str, frame: Frame, k: i64, n: i64) -> Result<Self, SetError> {
        let mut set = Self::new(frame, k, n);
        for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let coords: Vec<&str> = item.split(',').map(str::trim).collect();
            let parse = |s: &str| {
                s.trim_matches(|c| c == '(' || c == ')')
                    .parse::<i64>()
                    .map_err(|_| SetError::Parse(format!("bad point `{item}`")))
            };
            if coords.len() != 2 {
                return Err(SetError::Parse(format!("bad point `{item}`")));
            }
            set.insert(LatticeVec::new(parse(coords[0])?, parse(coords[1])?))?;
        }
        Ok(set)
    }

    pub fn format_points(&self) -> String {
        self.entries
            .iter()
            .flat_map(|(p, &m)| std::iter::repeat_n(format!("{},{}", p.a, p.b), m as usize))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// `F(f)` in the requested frame: one point `γ(f_1)` per inversion.
pub fn inversion_multiset(f: &BoundedAffinePerm, frame: Frame) -> Result<LatticeMultiset, SetError> {
    f.require_theta()?;
    let mut set = LatticeMultiset::new(Frame::Rect, f.k(), f.n() as i64);
    for inv in f.inversions() {
        let res = f.resolve_crossing(inv)?;
        let (a, b) = res.gamma.gamma1;
        set.insert(LatticeVec::new(a, b))?;
    }
    Ok(set.to_frame(frame))
}

pub fn is_repetition_free(f: &BoundedAffinePerm) -> Result<bool, SetError> {
    Ok(inversion_multiset(f, Frame::Rect)?.is_set())
}

pub fn is_centrally_symmetric(ms: &LatticeMultiset) -> bool {
    let d = ms.delta();
    ms.entries()
        .all(|(p, m)| ms.multiplicity(LatticeVec::new(d.a - p.a, d.b - p.b)) == m)
}

fn cross(o: LatticeVec, a: LatticeVec, b: LatticeVec) -> i128 {
    let (ax, ay) = ((a.a - o.a) as i128, (a.b - o.b) as i128);
    let (bx, by) = ((b.a - o.a) as i128, (b.b - o.b) as i128);
    ax * by - ay * bx
}

/// Vertices of the convex hull in counter-clockwise order, collinear points dropped.
pub fn convex_hull(points: &[LatticeVec]) -> Vec<LatticeVec> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<LatticeVec> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticeVec> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// All lattice points in the closed convex hull.
pub fn hull_lattice_points(points: &[LatticeVec]) -> Vec<LatticeVec> {
    let hull = convex_hull(points);
    match hull.len() {
        0 => Vec::new(),
        1 => hull,
        2 => {
            let (p, q) = (hull[0], hull[1]);
            let (da, db) = (q.a - p.a, q.b - p.b);
            let g = da.gcd(&db);
            (0..=g)
                .map(|t| LatticeVec::new(p.a + t * da / g, p.b + t * db / g))
                .collect()
        }
        _ => {
            let amin = hull.iter().map(|p| p.a).min().unwrap_or(0);
            let amax = hull.iter().map(|p| p.a).max().unwrap_or(0);
            let bmin = hull.iter().map(|p| p.b).min().unwrap_or(0);
            let bmax = hull.iter().map(|p| p.b).max().unwrap_or(0);
            let mut out = Vec::new();
            for a in amin..=amax {
                for b in bmin..=bmax {
                    let x = LatticeVec::new(a, b);
                    let inside = (0..hull.len())
                        .all(|t| cross(hull[t], hull[(t + 1) % hull.len()], x) >= 0);
                    if inside {
                        out.push(x);
                    }
                }
            }
            out
        }
    }
}

/// Whether the set together with the two corners contains every lattice
/// point of its convex hull.
pub fn is_convex(ms: &LatticeMultiset) -> bool {
    let mut pts = ms.points();
    pts.push(LatticeVec::new(0, 0));
    pts.push(ms.delta());
    hull_lattice_points(&pts).into_iter().all(|x| {
        x == LatticeVec::new(0, 0) || x == ms.delta() || ms.contains(x)
    })
}

/// Interior lattice points on the diagonal, in the sheared frame.
pub fn f_min(k: i64, n: i64) -> LatticeMultiset {
    let mut set = LatticeMultiset::new(Frame::Sheared, k, n);
    for a in 1..k {
        for b in 1..n {
            if a * n == b * k {
                set.entries.insert(LatticeVec::new(a, b), 1);
            }
        }
    }
    set
}

/// The full rectangle `[k-1] x [n-k-1]`, sheared.
pub fn f_max(k: i64, n: i64) -> LatticeMultiset {
    let mut set = LatticeMultiset::new(Frame::Sheared, k, n);
    for a in 1..k {
        for b in 1..n - k {
            set.entries.insert(LatticeVec::new(a, a + b), 1);
        }
    }
    set
}

/// Outcome of comparing the resolution factors at a double crossing with the
/// sets predicted from `F'(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCheck {
    pub f1_matches: bool,
    pub f2_matches: bool,
    pub deltas_are_vertices: bool,
}

impl SplitCheck {
    pub fn holds(&self) -> bool {
        self.f1_matches && self.f2_matches && self.deltas_are_vertices
    }
}

/// For a repetition-free `f` with a double crossing at `i`, resolves `(i, i+1)`
/// and checks `F'(f_1) = G_1`, `F'(f_2) = G_2`, and that `δ_1, δ_2` are
/// vertices of the hull of `F'(f)` with the corners. `G_1` keeps the points
/// of `F'(f)` other than `δ_1` with slope at most that of `δ_1`, closed under
/// `α -> δ_1 - α`; `G_2` is the mirror construction with slopes at least `δ_2`.
pub fn split_identity_check(f: &BoundedAffinePerm, i: i64) -> Result<SplitCheck, SetError> {
    if !f.is_theta() || !f.has_double_crossing_at(i) {
        return Err(SetError::PreconditionViolated(format!(
            "{f} has no double crossing at {i}"
        )));
    }
    let fp = inversion_multiset(f, Frame::Sheared)?;
    if !fp.is_set() {
        return Err(SetError::NotRepetitionFree(f.to_string()));
    }
    let r = i.rem_euclid(f.n() as i64);
    let res = f.resolve_crossing(Inversion { i: r, j: r + 1 })?;
    let d1 = LatticeVec::new(res.f1.k(), res.f1.n() as i64);
    let d2 = LatticeVec::new(res.f2.k(), res.f2.n() as i64);

    let predicted = |d: LatticeVec, low: bool| -> Vec<LatticeVec> {
        let mut g: Vec<LatticeVec> = fp
            .points()
            .into_iter()
            .filter(|&p| p != d)
            .filter(|p| {
                // slope(p) = p.a / p.b compared with d.a / d.b
                let (lhs, rhs) = (p.a * d.b, d.a * p.b);
                if low {
                    lhs <= rhs
                } else {
                    lhs >= rhs
                }
            })
            .collect();
        let mirrored: Vec<LatticeVec> = g
            .iter()
            .map(|p| LatticeVec::new(d.a - p.a, d.b - p.b))
            .collect();
        g.extend(mirrored);
        g.sort();
        g.dedup();
        g
    };
    let actual = |h: &BoundedAffinePerm| -> Result<Vec<LatticeVec>, SetError> {
        Ok(inversion_multiset(h, Frame::Sheared)?.points())
    };
    let f1_matches = actual(&res.f1)? == predicted(d1, true);
    let f2_matches = actual(&res.f2)? == predicted(d2, false);

    let mut pts = fp.points();
    pts.push(LatticeVec::new(0, 0));
    pts.push(fp.delta());
    let hull = convex_hull(&pts);
    let deltas_are_vertices = hull.contains(&d1) && hull.contains(&d2);
    Ok(SplitCheck {
        f1_matches,
        f2_matches,
        deltas_are_vertices,
    })
}

/// The partition `λ(f)` inside the `k x (n-k)` rectangle, rows from the top.
///
/// Box `(i, j)` occupies heights `[k-i, k-i+1]` and columns `[j-1, j]`. It
/// counts toward `λ_i` when its south-east corner `(k-i, j)` is weakly above
/// the diagonal, i.e. `(k-i)(n-k) >= k j`, and it sits weakly above every
/// point `(a, b)` of `F(f)` with `b ∈ {j-1, j}`, i.e. `k - i >= a`.
pub fn lambda_partition(f: &BoundedAffinePerm) -> Result<Vec<i64>, SetError> {
    let set = inversion_multiset(f, Frame::Rect)?;
    if !set.is_set() {
        return Err(SetError::NotRepetitionFree(f.to_string()));
    }
    let k = f.k();
    let m = f.n() as i64 - k;
    Ok((1..=k)
        .map(|i| {
            let height = k - i;
            (1..=m)
                .filter(|&j| {
                    height * m >= k * j
                        && set
                            .points()
                            .iter()
                            .filter(|p| p.b == j - 1 || p.b == j)
                            .all(|p| height >= p.a)
                })
                .count() as i64
        })
        .collect())
}

/// `a_i = λ_{i-1} - λ_i` for `i = 2..=k`.
pub fn a_sequence(f: &BoundedAffinePerm) -> Result<Vec<i64>, SetError> {
    let lambda = lambda_partition(f)?;
    Ok(lambda.windows(2).map(|w| w[0] - w[1]).collect())
}
