//! Small paths of n-cycle elements and the crossing counts between a path and
//! its lattice translates.
//!
//! The path of `f` passes through `p_r = (f^r(0)/n, r)`. The first coordinate
//! (the "k-coordinate") is drawn vertically, the second (the "n-coordinate")
//! horizontally, so `δ = (k, n)`. Everything is kept as integers scaled by `n`.

use std::fmt::Write as _;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::{BoundedAffinePerm, PermError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("shift ({a}, {b}) is a multiple of δ = ({k}, {n})")]
    AlphaOnDeltaLine { a: i64, b: i64, k: i64, n: i64 },
    #[error("ν numerator {numerator} is not divisible by {denominator}")]
    NonIntegralNu { numerator: i64, denominator: i64 },
}

/// A lattice vector `(a, b)`: `a` along `k`, `b` along `n`.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct LatticeVec {
    pub a: i64,
    pub b: i64,
}

impl LatticeVec {
    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }
}

impl From<(i64, i64)> for LatticeVec {
    fn from((a, b): (i64, i64)) -> Self {
        Self { a, b }
    }
}

/// Vertices `p_0, ..., p_n` of the small path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPath {
    pub k: i64,
    pub n: i64,
    /// `f^r(0)` for `r = 0..=n`; the vertical coordinate is this over `n`.
    pub scaled: Vec<i64>,
}

impl RatPath {
    pub fn vertical(&self, r: usize) -> Ratio<i64> {
        Ratio::new(self.scaled[r], self.n)
    }

    pub fn verticals(&self) -> Vec<Ratio<i64>> {
        (0..self.scaled.len()).map(|r| self.vertical(r)).collect()
    }

    /// `[[r, numerator, denominator], ...]` in lowest terms.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<[i64; 3]> = self
            .verticals()
            .iter()
            .enumerate()
            .map(|(r, v)| [r as i64, *v.numer(), *v.denom()])
            .collect();
        serde_json::json!(rows)
    }

    /// A polyline with the n-coordinate drawn rightwards and the
    /// k-coordinate upwards, plus the diagonal from the origin to `δ`.
    pub fn to_svg(&self, unit: u32) -> String {
        let u = unit as f64;
        let n = self.n as f64;
        let height = self.k as f64 * u;
        let pad = u / 2.0;
        let pts = self
            .scaled
            .iter()
            .enumerate()
            .fold(String::new(), |mut acc, (r, &v)| {
                let x = pad + r as f64 * u;
                let y = pad + height - v as f64 / n * u;
                let _ = write!(acc, "{x:.3},{y:.3} ");
                acc
            });
        format!(
            concat!(
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\">\n",
                "  <line x1=\"{p}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{p}\" stroke=\"gray\" stroke-dasharray=\"4\"/>\n",
                "  <polyline points=\"{pts}\" fill=\"none\" stroke=\"black\"/>\n",
                "</svg>\n"
            ),
            w = n * u + 2.0 * pad,
            h = height + 2.0 * pad,
            p = pad,
            y0 = pad + height,
            x1 = pad + n * u,
            pts = pts.trim_end(),
        )
    }
}

/// `f^r(0)` for `r = 0..n`.
fn orbit(f: &BoundedAffinePerm) -> Vec<i64> {
    let mut out = Vec::with_capacity(f.n());
    let mut x = 0;
    for _ in 0..f.n() {
        out.push(x);
        x = f.apply(x);
    }
    out
}

/// `f^r(0)` for any `r`, from one period of the orbit.
fn orbit_at(orbit: &[i64], k: i64, r: i64) -> i64 {
    let n = orbit.len() as i64;
    let (t, s) = r.div_mod_floor(&n);
    orbit[s as usize] + t * k * n
}

pub fn small_path(f: &BoundedAffinePerm) -> Result<RatPath, PathError> {
    f.require_theta()?;
    let mut scaled = orbit(f);
    scaled.push(f.k() * f.n() as i64);
    Ok(RatPath {
        k: f.k(),
        n: f.n() as i64,
        scaled,
    })
}

/// `D(r) = f^r(0) - (a n + f^{r-b}(0))` for `r = 0..=n`: the scaled height of
/// the path above its translate by `α` at abscissa `r`.
fn gap_profile(f: &BoundedAffinePerm, alpha: LatticeVec) -> Result<Vec<i64>, PathError> {
    f.require_theta()?;
    let n = f.n() as i64;
    let k = f.k();
    if alpha.b.rem_euclid(n) == 0 && alpha.a * n == alpha.b * k {
        return Err(PathError::AlphaOnDeltaLine {
            a: alpha.a,
            b: alpha.b,
            k,
            n,
        });
    }
    let orb = orbit(f);
    Ok((0..=n)
        .map(|r| {
            let d = orbit_at(&orb, k, r) - (alpha.a * n + orbit_at(&orb, k, r - alpha.b));
            debug_assert_ne!(d, 0);
            d
        })
        .collect())
}

/// Crossings of the infinite path with its translate by `α`, modulo `δ`.
pub fn intersection_count(f: &BoundedAffinePerm, alpha: LatticeVec) -> Result<u64, PathError> {
    let d = gap_profile(f, alpha)?;
    Ok(d.windows(2).filter(|w| (w[0] < 0) != (w[1] < 0)).count() as u64)
}

/// Crossings where the path passes from below its translate to above it.
pub fn multiplicity_from_paths(
    f: &BoundedAffinePerm,
    alpha: LatticeVec,
) -> Result<u64, PathError> {
    let d = gap_profile(f, alpha)?;
    Ok(d.windows(2).filter(|w| w[0] < 0 && w[1] > 0).count() as u64)
}

/// `ν(f) = sum_{r<n} (f^r(0) - k r)/n - ε`, with `ε = 1/2` when `k` and `n` are both even.
pub fn nu(f: &BoundedAffinePerm) -> Result<i64, PathError> {
    f.require_theta()?;
    let n = f.n() as i64;
    let k = f.k();
    let total: i64 = orbit(f)
        .iter()
        .enumerate()
        .map(|(r, &x)| x - k * r as i64)
        .sum();
    let eps = i64::from(k % 2 == 0 && n % 2 == 0);
    let numerator = 2 * total - eps * n;
    let denominator = 2 * n;
    if numerator % denominator != 0 {
        return Err(PathError::NonIntegralNu {
            numerator,
            denominator,
        });
    }
    Ok(numerator / denominator)
}

/// `ν(f)` reduced into `[0, gcd(k, n))`.
pub fn nu_bar(f: &BoundedAffinePerm) -> Result<i64, PathError> {
    let d = f.k().gcd(&(f.n() as i64));
    Ok(nu(f)?.rem_euclid(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> BoundedAffinePerm {
        BoundedAffinePerm::from_window(v.to_vec()).unwrap()
    }

    #[test]
    fn figure_three_path() {
        let f = w(&[3, 4, 5, 8, 6, 7]);
        let path = small_path(&f).unwrap();
        let expected: Vec<Ratio<i64>> = [(0, 1), (1, 2), (4, 3), (11, 6), (13, 6), (8, 3), (3, 1)]
            .iter()
            .map(|&(p, q)| Ratio::new(p, q))
            .collect();
        assert_eq!(path.verticals(), expected);
        assert_eq!(path.to_json()[1], serde_json::json!([1, 1, 2]));
        assert!(path.to_svg(20).contains("<polyline"));
    }

    #[test]
    fn translation_path_is_straight() {
        let f = BoundedAffinePerm::translation(3, 7).unwrap();
        let path = small_path(&f).unwrap();
        for r in 0..=7 {
            assert_eq!(path.vertical(r), Ratio::new(3 * r as i64, 7));
        }
        assert!(small_path(&w(&[0])).is_err());
    }

    #[test]
    fn figure_two_crossings() {
        let f = w(&[3, 6, 4, 5, 7, 8, 9]);
        assert_eq!(intersection_count(&f, LatticeVec::new(1, 2)).unwrap(), 2);
        assert_eq!(multiplicity_from_paths(&f, LatticeVec::new(1, 2)).unwrap(), 1);
        assert_eq!(multiplicity_from_paths(&f, LatticeVec::new(2, 5)).unwrap(), 1);
        assert_eq!(intersection_count(&f, LatticeVec::new(0, 1)).unwrap(), 0);
        assert_eq!(
            intersection_count(&f, LatticeVec::new(4, 9)).unwrap(),
            intersection_count(&f, LatticeVec::new(1, 2)).unwrap()
        );
        assert!(matches!(
            intersection_count(&f, LatticeVec::new(3, 7)),
            Err(PathError::AlphaOnDeltaLine { .. })
        ));
    }

    #[test]
    fn translation_has_no_crossings() {
        let f = BoundedAffinePerm::translation(2, 5).unwrap();
        for a in 1..2 {
            for b in 1..5 {
                assert_eq!(multiplicity_from_paths(&f, LatticeVec::new(a, b)).unwrap(), 0);
            }
        }
    }

    #[test]
    fn nu_values() {
        assert_eq!(nu(&BoundedAffinePerm::translation(2, 5).unwrap()).unwrap(), 0);
        let f = BoundedAffinePerm::min_length_witness(2, 4).unwrap();
        let d = 2;
        let shifted = f.cyclic_shift();
        assert_eq!((nu(&shifted).unwrap() - nu(&f).unwrap()).rem_euclid(d), 1);
    }
}
