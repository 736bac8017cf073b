//! Exhaustive enumeration and the verification suites.
//!
//! Each suite walks every instance up to a size bound, collects failures as
//! data, and sorts them so that serial and parallel runs report identically.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::time::Instant;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::affine::{BoundedAffinePerm, CyclePerm};
use crate::dyck::{count_avoiding_paths, synthesize};
use crate::engine::{Engine, KeyMode};
use crate::fset::{
    f_min, inversion_multiset, is_centrally_symmetric, is_convex, split_identity_check, Frame,
    LatticeMultiset,
};
use crate::paths::{multiplicity_from_paths, nu, nu_bar, small_path, LatticeVec};

/// All `(n-1)!` n-cycles, as cycle notation `(0, c_1, ..., c_{n-1})` in lexicographic order.
pub fn enumerate_cyc(n: usize) -> impl Iterator<Item = CyclePerm> {
    (1..n).permutations(n.saturating_sub(1)).map(|rest| {
        let mut cycle = vec![0];
        cycle.extend(rest);
        CyclePerm::from_cycle_notation(&cycle).expect("valid cycle notation")
    })
}

/// `Theta(k, n)` for `n >= 2`, sorted by window.
pub fn enumerate_theta(k: i64, n: usize) -> Vec<BoundedAffinePerm> {
    let mut out: Vec<_> = enumerate_cyc(n)
        .filter(|c| c.k() as i64 == k)
        .map(|c| c.to_theta().expect("n-cycle lifts"))
        .collect();
    out.sort();
    out
}

/// `Theta(k, n)` over all `k`, sorted by window.
pub fn enumerate_theta_all(n: usize) -> Vec<BoundedAffinePerm> {
    if n < 2 {
        return Vec::new();
    }
    let mut out: Vec<_> = enumerate_cyc(n)
        .map(|c| c.to_theta().expect("n-cycle lifts"))
        .collect();
    out.sort();
    out
}

/// Every bounded affine permutation of period `n` (all `k`), sorted by window.
/// A fixed residue `i` may map to `i` or to `i + n`.
pub fn enumerate_bounded(n: usize) -> Vec<BoundedAffinePerm> {
    let mut out = Vec::new();
    let n_i = n as i64;
    for image in (0..n).permutations(n) {
        let fixed: Vec<usize> = (0..n).filter(|&i| image[i] == i).collect();
        for mask in 0..(1u32 << fixed.len()) {
            let window: Vec<i64> = (0..n)
                .map(|i| {
                    let v = image[i] as i64;
                    let i64_i = i as i64;
                    if v > i64_i {
                        v
                    } else if v < i64_i {
                        v + n_i
                    } else {
                        let bit = fixed.iter().position(|&x| x == i).expect("fixed index");
                        if mask >> bit & 1 == 1 {
                            v + n_i
                        } else {
                            v
                        }
                    }
                })
                .collect();
            out.push(BoundedAffinePerm::from_window(window).expect("bounded by construction"));
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    /// The offending permutation (as `window:...`) or set.
    pub subject: String,
    pub check: String,
    pub expected: String,
    pub actual: String,
}

impl Failure {
    fn new(
        subject: impl ToString,
        check: &str,
        expected: impl ToString,
        actual: impl ToString,
    ) -> Self {
        Self {
            subject: subject.to_string(),
            check: check.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: serde_json::Value,
    pub checked: u64,
    pub failures: Vec<Failure>,
    /// Wall time in seconds.
    pub elapsed: f64,
    pub observations: BTreeMap<String, serde_json::Value>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn finish(
        suite: &str,
        params: serde_json::Value,
        checked: u64,
        mut failures: Vec<Failure>,
        start: Instant,
        observations: BTreeMap<String, serde_json::Value>,
    ) -> Self {
        failures.sort();
        Self {
            suite: suite.to_string(),
            params,
            checked,
            failures,
            elapsed: start.elapsed().as_secs_f64(),
            observations,
        }
    }
}

/// Maps `work` over `items` with one state per worker thread; `jobs <= 1` runs inline.
fn par_map<T, S, R>(
    items: &[T],
    jobs: usize,
    init: impl Fn() -> S + Sync + Send,
    work: impl Fn(&mut S, &T) -> R + Sync + Send,
) -> Vec<R>
where
    T: Sync,
    R: Send,
{
    if jobs <= 1 {
        let mut state = init();
        return items.iter().map(|x| work(&mut state, x)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| items.par_iter().map_init(&init, |s, x| work(s, x)).collect())
}

fn check_main(engine: &mut Engine, f: &BoundedAffinePerm) -> Vec<Failure> {
    let mut fails = Vec::new();
    let fp = match inversion_multiset(f, Frame::Sheared) {
        Ok(s) => s,
        Err(e) => return vec![Failure::new(f, "inversion_multiset", "ok", e)],
    };
    if !is_centrally_symmetric(&fp) {
        fails.push(Failure::new(f, "central_symmetry", "symmetric", fp.format_points()));
    }
    if fp.total() != f.length() {
        fails.push(Failure::new(f, "total_multiplicity", f.length(), fp.total()));
    }
    let (k, n) = (f.k(), f.n() as i64);
    for a in 1..k {
        for b in 1..n {
            let alpha = LatticeVec::new(a, b);
            match multiplicity_from_paths(f, alpha) {
                Ok(m) if m == fp.multiplicity(alpha) as u64 => {}
                Ok(m) => fails.push(Failure::new(
                    f,
                    &format!("path_oracle({a},{b})"),
                    fp.multiplicity(alpha),
                    m,
                )),
                Err(e) => fails.push(Failure::new(f, "path_oracle", "ok", e)),
            }
        }
    }
    if fp.is_set() {
        let rect = fp.to_frame(Frame::Rect);
        if !is_convex(&rect) {
            fails.push(Failure::new(f, "convexity", "convex", rect.format_points()));
        }
        let dyck = count_avoiding_paths(k, n, &fp);
        match engine.compute_c(f) {
            Ok(c) if c == dyck => {}
            Ok(c) => fails.push(Failure::new(f, "catalan_equals_dyck", dyck, c)),
            Err(e) => fails.push(Failure::new(f, "compute_c", "ok", e)),
        }
    }
    fails
}

/// Central symmetry and the path oracle for every `f` in `Theta(k, n)`,
/// `n <= n_max`; convexity and `C_f = #Dyck` for the repetition-free ones.
pub fn verify_main_theorem(n_max: usize, jobs: usize) -> VerificationReport {
    let start = Instant::now();
    let perms: Vec<_> = (2..=n_max).flat_map(enumerate_theta_all).collect();
    let results = par_map(&perms, jobs, Engine::new, |e, f| {
        let fails = check_main(e, f);
        let rf = inversion_multiset(f, Frame::Rect).is_ok_and(|s| s.is_set());
        (fails, rf)
    });
    let repetition_free = results.iter().filter(|r| r.1).count();
    let failures = results.into_iter().flat_map(|r| r.0).collect();
    let mut obs = BTreeMap::new();
    obs.insert("repetition_free".into(), serde_json::json!(repetition_free));
    VerificationReport::finish(
        "main",
        serde_json::json!({ "n_max": n_max }),
        perms.len() as u64,
        failures,
        start,
        obs,
    )
}

/// All centrally symmetric convex subsets of `[k-1] x [n-k-1]` (rect frame),
/// found by filtering every subset; `None` when the box has more than `max_cells` cells.
pub fn symmetric_convex_sets(k: i64, n: i64, max_cells: usize) -> Option<Vec<LatticeMultiset>> {
    let cells: Vec<LatticeVec> = (1..k)
        .flat_map(|a| (1..n - k).map(move |b| LatticeVec::new(a, b)))
        .collect();
    if cells.len() > max_cells {
        return None;
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << cells.len()) {
        let pts = cells
            .iter()
            .enumerate()
            .filter(|(t, _)| mask >> t & 1 == 1)
            .map(|(_, &p)| p);
        let set = LatticeMultiset::from_points(Frame::Rect, k, n, pts).expect("cells in frame");
        if is_centrally_symmetric(&set) && is_convex(&set) {
            out.push(set);
        }
    }
    Some(out)
}

/// Synthesizes a permutation for every centrally symmetric convex set with
/// `n <= n_max`, and checks the catalog against the sets realized by
/// repetition-free elements.
pub fn verify_synthesis(n_max: usize, jobs: usize) -> VerificationReport {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0u64;
    let mut obs = BTreeMap::new();
    let mut sizes = BTreeMap::new();
    for n in 2..=n_max as i64 {
        for k in 1..n {
            let Some(catalog) = symmetric_convex_sets(k, n, 20) else {
                failures.push(Failure::new(
                    format!("({k},{n})"),
                    "catalog",
                    "enumerable",
                    "box too large",
                ));
                continue;
            };
            let results = par_map(&catalog, jobs, || (), |_, set| {
                let subject = format!("({k},{n}) {{{}}}", set.format_points());
                match synthesize(set) {
                    Ok(s) if s.perm.is_theta() && s.perm.k() == k && s.perm.n() as i64 == n => {
                        None
                    }
                    Ok(s) => Some(Failure::new(subject, "synthesis_type", format!("Theta({k},{n})"), s.perm)),
                    Err(e) => Some(Failure::new(subject, "synthesis", "ok", e)),
                }
            });
            checked += catalog.len() as u64;
            failures.extend(results.into_iter().flatten());

            let fmin = f_min(k, n).to_frame(Frame::Rect);
            for set in &catalog {
                if !fmin.points().iter().all(|&p| set.contains(p)) {
                    failures.push(Failure::new(
                        format!("({k},{n}) {{{}}}", set.format_points()),
                        "contains_f_min",
                        fmin.format_points(),
                        set.format_points(),
                    ));
                }
            }
            let catalog_keys: BTreeSet<String> =
                catalog.iter().map(LatticeMultiset::format_points).collect();
            let realized: BTreeSet<String> = enumerate_theta(k, n as usize)
                .iter()
                .filter_map(|f| inversion_multiset(f, Frame::Rect).ok())
                .filter(LatticeMultiset::is_set)
                .map(|s| s.format_points())
                .collect();
            if catalog_keys != realized {
                failures.push(Failure::new(
                    format!("({k},{n})"),
                    "catalog_equals_realized",
                    format!("{catalog_keys:?}"),
                    format!("{realized:?}"),
                ));
            }
            sizes.insert(format!("{k},{n}"), catalog.len());
            if (k, n) == (4, 8) {
                obs.insert("catalog_4_8".into(), serde_json::json!(catalog_keys));
            }
        }
    }
    obs.insert("catalog_sizes".into(), serde_json::json!(sizes));
    VerificationReport::finish(
        "synthesis",
        serde_json::json!({ "n_max": n_max }),
        checked,
        failures,
        start,
        obs,
    )
}

struct EnginePair {
    orbit: Engine,
    window: Engine,
}

fn check_engine(e: &mut EnginePair, f: &BoundedAffinePerm) -> Vec<Failure> {
    let mut fails = Vec::new();
    let mut run = || -> Result<Vec<Failure>, crate::engine::EngineError> {
        let mut fails = Vec::new();
        let rt = e.orbit.compute_rtilde(f)?;
        let c = e.orbit.compute_c(f)?;
        if rt.eval_at(&BigInt::one()) != BigInt::from(c.clone()) {
            fails.push(Failure::new(f, "rtilde_at_one", &c, rt.eval_at(&BigInt::one())));
        }
        let cw = e.window.compute_c(f)?;
        if cw != c {
            fails.push(Failure::new(f, "cache_independence", &c, cw));
        }
        let g = f.cyclic_shift();
        let cs = e.window.compute_c(&g)?;
        if cs != c {
            fails.push(Failure::new(f, "shift_invariance_c", &c, cs));
        }
        let rts = e.window.compute_rtilde(&g)?;
        if rts != rt {
            fails.push(Failure::new(f, "shift_invariance_rtilde", &rt, rts));
        }
        let cd = e.orbit.compute_c_decoupled(f)?;
        if cd != c {
            fails.push(Failure::new(f, "decoupling", &c, cd));
        }
        if f.is_theta() {
            for i in 0..f.n() as i64 {
                if f.has_double_crossing_at(i) && !e.window.double_crossing_recurrence_check(f, i)? {
                    fails.push(Failure::new(f, &format!("double_crossing_identity({i})"), true, false));
                }
            }
        }
        Ok(fails)
    };
    match run() {
        Ok(v) => fails.extend(v),
        Err(err) => fails.push(Failure::new(f, "engine", "ok", err)),
    }
    fails
}

/// `R̃(1) = C`, exact division, shift invariance, decoupling and the
/// double-crossing identity over all of `B(., n)`, plus constancy of `C` on
/// c-equivalence classes of `Theta(k, n)`, for `n <= n_max`.
pub fn verify_engine(n_max: usize, jobs: usize) -> VerificationReport {
    let start = Instant::now();
    let perms: Vec<_> = (1..=n_max).flat_map(enumerate_bounded).collect();
    let init = || EnginePair {
        orbit: Engine::new(),
        window: Engine::new().with_key_mode(KeyMode::Window),
    };
    let mut failures: Vec<Failure> = par_map(&perms, jobs, init, check_engine)
        .into_iter()
        .flatten()
        .collect();

    let theta: Vec<_> = (2..=n_max).flat_map(enumerate_theta_all).collect();
    let mut seen: HashSet<BoundedAffinePerm> = HashSet::new();
    let mut reps = Vec::new();
    for f in &theta {
        if seen.contains(f) {
            continue;
        }
        match f.c_equivalence_class(None) {
            Ok(class) => {
                seen.extend(class.iter().cloned());
                reps.push(class);
            }
            Err(e) => failures.push(Failure::new(f, "c_equivalence_class", "ok", e)),
        }
    }
    let class_fails = par_map(
        &reps,
        jobs,
        || Engine::new().with_key_mode(KeyMode::Window),
        |e, class| -> Vec<Failure> {
            let values: Vec<_> = class.iter().map(|g| e.compute_c(g)).collect();
            let first = &values[0];
            class
                .iter()
                .zip(&values)
                .filter(|(_, v)| *v != first)
                .map(|(g, v)| Failure::new(g, "class_invariance", format!("{first:?}"), format!("{v:?}")))
                .collect()
        },
    );
    failures.extend(class_fails.into_iter().flatten());
    let mut obs = BTreeMap::new();
    obs.insert("theta_classes".into(), serde_json::json!(reps.len()));
    VerificationReport::finish(
        "engine",
        serde_json::json!({ "n_max": n_max }),
        perms.len() as u64,
        failures,
        start,
        obs,
    )
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[derive(Clone, Copy, Default)]
struct StructureTally {
    nu_shift_one: u64,
    nu_shift_other: u64,
    split_checked: u64,
    dyck_recurrence_checked: u64,
}

fn check_structure(f: &BoundedAffinePerm) -> (Vec<Failure>, StructureTally) {
    let mut tally = StructureTally::default();
    let mut fails = Vec::new();
    let (k, n) = (f.k(), f.n() as i64);
    let d = k.gcd(&n);

    // rotation reflects the small path through δ/2
    match (f.rotate_180(), small_path(f)) {
        (Ok(g), Ok(p)) => {
            let q = small_path(&g).expect("rotation stays in Theta");
            let reflected: Vec<i64> = (0..=n as usize).map(|r| k * n - p.scaled[n as usize - r]).collect();
            if q.scaled != reflected {
                fails.push(Failure::new(f, "rotation_path", format!("{reflected:?}"), format!("{:?}", q.scaled)));
            }
            if g.rotate_180().ok().as_ref() != Some(f) {
                fails.push(Failure::new(f, "rotation_involution", f, &g));
            }
        }
        (r, p) => fails.push(Failure::new(f, "rotation", "ok", format!("{:?} {:?}", r.err(), p.err()))),
    }

    let fs = inversion_multiset(f, Frame::Sheared).expect("Theta element");
    let fmin = f_min(k, n);
    if !fmin.points().iter().all(|&p| fs.contains(p)) {
        fails.push(Failure::new(f, "contains_f_min", fmin.format_points(), fs.format_points()));
    }
    let shifted = f.cyclic_shift();
    let fs_shift = inversion_multiset(&shifted, Frame::Sheared).expect("Theta element");
    if fs_shift != fs {
        fails.push(Failure::new(f, "shift_preserves_f", fs.format_points(), fs_shift.format_points()));
    }

    match (nu(f), nu(&shifted)) {
        (Ok(a), Ok(b)) => {
            if (b - a - 1).rem_euclid(d) != 0 {
                fails.push(Failure::new(f, "nu_shift_mod_gcd", 1, b - a));
            }
            if b - a == 1 {
                tally.nu_shift_one += 1;
            } else {
                tally.nu_shift_other += 1;
            }
        }
        (a, b) => fails.push(Failure::new(f, "nu", "integral", format!("{a:?} {b:?}"))),
    }

    if fs.is_set() {
        for i in 0..n {
            if !f.has_double_crossing_at(i) {
                continue;
            }
            tally.split_checked += 1;
            match split_identity_check(f, i) {
                Ok(c) if c.holds() => {}
                Ok(c) => fails.push(Failure::new(f, &format!("split_identity({i})"), "holds", format!("{c:?}"))),
                Err(e) => fails.push(Failure::new(f, &format!("split_identity({i})"), "ok", e)),
            }
            let h = f
                .conjugate_s(i)
                .ok()
                .and_then(|p| p.bounded())
                .expect("double crossing conjugates to a bounded element");
            let res = f
                .resolve_crossing(crate::affine::Inversion { i, j: i + 1 })
                .expect("(i, i+1) is an inversion");
            let count = |g: &BoundedAffinePerm| -> Option<BigUint> {
                let s = inversion_multiset(g, Frame::Sheared).ok()?;
                s.is_set().then(|| count_avoiding_paths(g.k(), g.n() as i64, &s))
            };
            if let (Some(ch), Some(c1), Some(c2), Some(cf)) =
                (count(&h), count(&res.f1), count(&res.f2), count(f))
            {
                tally.dyck_recurrence_checked += 1;
                if ch != &c1 * &c2 + &cf {
                    fails.push(Failure::new(f, &format!("dyck_recurrence({i})"), &c1 * &c2 + &cf, ch));
                }
            }
        }
    }
    (fails, tally)
}

/// Enumeration counts, minimal lengths, and the structural properties of
/// inversion sets and paths, for `n <= n_max`.
pub fn verify_structure(n_max: usize, jobs: usize) -> VerificationReport {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0u64;
    let mut tally = StructureTally::default();
    for n in 2..=n_max {
        let all = enumerate_theta_all(n);
        if all.len() as u64 != factorial(n - 1) {
            failures.push(Failure::new(format!("n={n}"), "cycle_count", factorial(n - 1), all.len()));
        }
        for k in 1..n as i64 {
            let d = k.gcd(&(n as i64));
            let min = all.iter().filter(|f| f.k() == k).map(|f| f.length()).min();
            if min != Some(d as u64 - 1) {
                failures.push(Failure::new(format!("({k},{n})"), "min_length", d - 1, format!("{min:?}")));
            }
            match BoundedAffinePerm::min_length_witness(k, n) {
                Ok(w) if w.is_theta() && w.k() == k && w.length() == d as u64 - 1 => {}
                Ok(w) => failures.push(Failure::new(format!("({k},{n})"), "min_length_witness", d - 1, w)),
                Err(e) => failures.push(Failure::new(format!("({k},{n})"), "min_length_witness", "ok", e)),
            }
        }
        let results = par_map(&all, jobs, || (), |_, f| check_structure(f));
        for (fails, t) in results {
            failures.extend(fails);
            tally.nu_shift_one += t.nu_shift_one;
            tally.nu_shift_other += t.nu_shift_other;
            tally.split_checked += t.split_checked;
            tally.dyck_recurrence_checked += t.dyck_recurrence_checked;
        }
        checked += all.len() as u64;
    }
    let mut obs = BTreeMap::new();
    obs.insert("nu_shift_equal_one".into(), serde_json::json!(tally.nu_shift_one));
    obs.insert("nu_shift_other".into(), serde_json::json!(tally.nu_shift_other));
    obs.insert("split_identity_instances".into(), serde_json::json!(tally.split_checked));
    obs.insert("dyck_recurrence_instances".into(), serde_json::json!(tally.dyck_recurrence_checked));
    VerificationReport::finish(
        "structure",
        serde_json::json!({ "n_max": n_max }),
        checked,
        failures,
        start,
        obs,
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusGroup {
    /// `F(f)` in the rect frame, `a,b;...` form.
    pub fset: String,
    pub members: usize,
    pub classes: usize,
    pub class_sizes: Vec<usize>,
    /// Distinct `ν̄` values seen in each class.
    pub nu_bar_per_class: Vec<Vec<i64>>,
    pub matches_gcd: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub k: i64,
    pub n: usize,
    pub gcd: i64,
    pub groups: Vec<CensusGroup>,
    pub agreeing_groups: usize,
    pub disagreeing_groups: usize,
    /// Whether `ν̄` was constant on every class.
    pub nu_bar_constant_on_classes: bool,
}

/// Groups the repetition-free elements of `Theta(k, n)` by `F(f)` and splits
/// each group into c-equivalence classes. Purely observational.
pub fn classes_census(k: i64, n: usize) -> CensusReport {
    let d = k.gcd(&(n as i64));
    let mut groups: BTreeMap<String, Vec<BoundedAffinePerm>> = BTreeMap::new();
    for f in enumerate_theta(k, n) {
        let s = inversion_multiset(&f, Frame::Rect).expect("Theta element");
        if s.is_set() {
            groups.entry(s.format_points()).or_default().push(f);
        }
    }
    let mut out = Vec::new();
    for (fset, members) in groups {
        let mut class_of: HashMap<BoundedAffinePerm, usize> = HashMap::new();
        let mut classes: Vec<Vec<BoundedAffinePerm>> = Vec::new();
        for f in &members {
            if class_of.contains_key(f) {
                continue;
            }
            let class = f.c_equivalence_class(None).expect("no limit");
            let idx = classes.len();
            for g in &class {
                class_of.insert(g.clone(), idx);
            }
            classes.push(class.into_iter().filter(|g| members.contains(g)).collect());
        }
        let nu_bar_per_class: Vec<Vec<i64>> = classes
            .iter()
            .map(|c| {
                c.iter()
                    .filter_map(|g| nu_bar(g).ok())
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect()
            })
            .collect();
        out.push(CensusGroup {
            fset,
            members: members.len(),
            classes: classes.len(),
            class_sizes: classes.iter().map(Vec::len).collect(),
            nu_bar_per_class,
            matches_gcd: classes.len() as i64 == d,
        });
    }
    let agreeing = out.iter().filter(|g| g.matches_gcd).count();
    CensusReport {
        k,
        n,
        gcd: d,
        agreeing_groups: agreeing,
        disagreeing_groups: out.len() - agreeing,
        nu_bar_constant_on_classes: out
            .iter()
            .all(|g| g.nu_bar_per_class.iter().all(|v| v.len() <= 1)),
        groups: out,
    }
}

/// The census for every `(k, n)` with `n <= n_max`, wrapped as a report that
/// never records failures.
pub fn census_report(n_max: usize, jobs: usize) -> VerificationReport {
    let start = Instant::now();
    let params: Vec<(i64, usize)> = (2..=n_max)
        .flat_map(|n| (1..n as i64).map(move |k| (k, n)))
        .collect();
    let reports = par_map(&params, jobs, || (), |_, &(k, n)| classes_census(k, n));
    let checked = reports.iter().map(|r| r.groups.len() as u64).sum();
    let agreeing: usize = reports.iter().map(|r| r.agreeing_groups).sum();
    let disagreeing: usize = reports.iter().map(|r| r.disagreeing_groups).sum();
    let mut obs = BTreeMap::new();
    obs.insert("agreeing_groups".into(), serde_json::json!(agreeing));
    obs.insert("disagreeing_groups".into(), serde_json::json!(disagreeing));
    obs.insert("census".into(), serde_json::json!(reports));
    VerificationReport::finish(
        "census",
        serde_json::json!({ "n_max": n_max }),
        checked,
        Vec::new(),
        start,
        obs,
    )
}

/// One row of `enumerate` output.
#[derive(Clone, Debug, Serialize)]
pub struct EnumRow {
    pub n: usize,
    pub k: i64,
    pub window: Vec<i64>,
    pub ell: u64,
    pub repetition_free: bool,
    pub catalan: String,
    pub fset: String,
    pub nu_bar: i64,
}

impl EnumRow {
    pub const CSV_HEADER: &'static str = "n,k,window,ell,repetition_free,catalan,fset,nu_bar";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},\"{}\",{},{},{},\"{}\",{}",
            self.n,
            self.k,
            self.window.iter().join(","),
            self.ell,
            self.repetition_free,
            self.catalan,
            self.fset,
            self.nu_bar
        )
    }
}

/// Rows for `Theta(k, n)` (every `k` when `k` is `None`).
pub fn enumerate_rows(
    n: usize,
    k: Option<i64>,
    repetition_free_only: bool,
    engine: &mut Engine,
) -> Result<Vec<EnumRow>, crate::Error> {
    let perms = match k {
        Some(k) => enumerate_theta(k, n),
        None => enumerate_theta_all(n),
    };
    let mut rows = Vec::new();
    for f in perms {
        let fs = inversion_multiset(&f, Frame::Rect)?;
        if repetition_free_only && !fs.is_set() {
            continue;
        }
        rows.push(EnumRow {
            n,
            k: f.k(),
            window: f.window().to_vec(),
            ell: f.length(),
            repetition_free: fs.is_set(),
            catalan: engine.compute_c(&f)?.to_string(),
            fset: fs.format_points(),
            nu_bar: nu_bar(&f)?,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_counts() {
        assert_eq!(enumerate_cyc(4).count(), 6);
        assert_eq!(enumerate_theta(1, 3).len(), 1);
        let total: usize = (1..5).map(|k| enumerate_theta(k, 5).len()).sum();
        assert_eq!(total, 24);
        let all: usize = (2..=8).map(|n| enumerate_cyc(n).count()).sum();
        assert_eq!(all, 5913);
    }

    #[test]
    fn bounded_counts() {
        // sum over permutations of 2^(fixed points)
        assert_eq!(enumerate_bounded(1).len(), 2);
        assert_eq!(enumerate_bounded(2).len(), 5);
        assert_eq!(enumerate_bounded(3).len(), 16);
    }

    #[test]
    fn small_suites_pass() {
        assert!(verify_main_theorem(2, 1).passed());
        assert!(verify_main_theorem(5, 1).passed());
        assert!(verify_synthesis(5, 1).passed());
        assert!(verify_engine(4, 1).passed());
        assert!(verify_structure(5, 1).passed());
    }

    #[test]
    fn two_four_catalog() {
        let sets = symmetric_convex_sets(2, 4, 20).unwrap();
        assert_eq!(sets.len(), 1);
        assert_eq!(sets[0].format_points(), "1,1");
    }

    #[test]
    fn census_examples() {
        let c = classes_census(2, 5);
        assert!(c.groups.iter().all(|g| g.classes == 1));
        let c = classes_census(2, 4);
        assert!(c.groups.iter().all(|g| g.classes == 2));
    }
}
