//! Acceptance criteria. Run with `cargo test --test acceptance`; prints one
//! PASS/FAIL line per criterion and exits nonzero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use posicat::harness::{
    census_report, enumerate_theta, verify_engine, verify_main_theorem, verify_synthesis,
    VerificationReport,
};
use posicat::{inversion_multiset, BoundedAffinePerm, Engine, Frame, Indexing, LatticeMultiset};

struct Outcome {
    ok: bool,
    detail: String,
    elapsed: Duration,
    budget: Option<Duration>,
}

fn jobs() -> usize {
    std::env::var("POSICAT_JOBS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or_else(|| std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1))
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Brute force over all up/right words; a visited rect point (a, b) is
/// admissible iff a (n - k) >= k b and it is not forbidden.
fn brute_dyck(k: i64, n: i64, forbidden: &[(i64, i64)]) -> u64 {
    let m = n - k;
    let len = n as u32;
    (0u64..1 << len)
        .filter(|w| w.count_ones() as i64 == k)
        .filter(|w| {
            let (mut a, mut b) = (0i64, 0i64);
            (0..len).all(|t| {
                if w >> t & 1 == 1 { a += 1 } else { b += 1 }
                a * m >= k * b && !forbidden.contains(&(a, b))
            })
        })
        .count() as u64
}

fn cross(o: (i64, i64), p: (i64, i64), q: (i64, i64)) -> i64 {
    (p.0 - o.0) * (q.1 - o.1) - (p.1 - o.1) * (q.0 - o.0)
}

fn on_segment(p: (i64, i64), a: (i64, i64), b: (i64, i64)) -> bool {
    cross(a, b, p) == 0
        && p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0)
        && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

/// Hull membership by Caratheodory: `p` is in the hull of `s` iff it lies in
/// some triangle (possibly degenerate) spanned by points of `s`.
fn in_hull(p: (i64, i64), s: &[(i64, i64)]) -> bool {
    for (x, &a) in s.iter().enumerate() {
        for (y, &b) in s.iter().enumerate().skip(x) {
            if on_segment(p, a, b) {
                return true;
            }
            for &c in &s[y..] {
                let (d1, d2, d3) = (cross(a, b, p), cross(b, c, p), cross(c, a, p));
                let has_neg = d1 < 0 || d2 < 0 || d3 < 0;
                let has_pos = d1 > 0 || d2 > 0 || d3 > 0;
                if !(has_neg && has_pos) && cross(a, b, c) != 0 {
                    return true;
                }
            }
        }
    }
    false
}

/// Centrally symmetric convex subsets of the interior box, in rect
/// coordinates, found without the library's hull code.
fn oracle_catalog(k: i64, n: i64) -> BTreeSet<String> {
    let m = n - k;
    let cells: Vec<(i64, i64)> = (1..k).flat_map(|a| (1..m).map(move |b| (a, b))).collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << cells.len() {
        let set: Vec<(i64, i64)> = cells
            .iter()
            .enumerate()
            .filter(|(t, _)| mask >> t & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        if !set.iter().all(|&(a, b)| set.contains(&(k - a, m - b))) {
            continue;
        }
        let mut sheared: Vec<(i64, i64)> = set.iter().map(|&(a, b)| (a, a + b)).collect();
        sheared.push((0, 0));
        sheared.push((k, n));
        let convex = (0..=k)
            .flat_map(|a| (0..=n).map(move |b| (a, b)))
            .filter(|&p| in_hull(p, &sheared))
            .all(|p| sheared.contains(&p));
        if convex {
            out.insert(
                set.iter()
                    .map(|(a, b)| format!("{a},{b}"))
                    .collect::<Vec<_>>()
                    .join(";"),
            );
        }
    }
    out
}

fn from_report(r: &VerificationReport, elapsed: Duration, budget: Option<Duration>) -> Outcome {
    let mut detail = format!("{} checked, {} failures", r.checked, r.failures.len());
    if let Some(f) = r.failures.first() {
        detail += &format!("; first: {} {} expected {} got {}", f.subject, f.check, f.expected, f.actual);
    }
    Outcome { ok: r.passed(), detail, elapsed, budget }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn rational_catalan() -> Outcome {
    let (res, elapsed) = timed(|| {
        let mut engine = Engine::new();
        let mut bad = Vec::new();
        let mut count = 0;
        for n in 2..=12i64 {
            for k in 1..n {
                if gcd(k, n) != 1 {
                    continue;
                }
                count += 1;
                let f = BoundedAffinePerm::translation(k, n as usize).unwrap();
                let c = engine.compute_c(&f).unwrap();
                let expected = binom(n as u64, k as u64) / n as u64;
                if c != expected.into() {
                    bad.push(format!("({k},{n}): {c} != {expected}"));
                }
            }
        }
        (count, bad)
    });
    let (count, bad) = res;
    Outcome {
        ok: bad.is_empty(),
        detail: format!("{count} coprime pairs{}", if bad.is_empty() { String::new() } else { format!(", mismatches {bad:?}") }),
        elapsed,
        budget: Some(Duration::from_secs(1)),
    }
}

fn named_instances() -> Outcome {
    let budget = Duration::from_millis(10);
    let mut notes = Vec::new();
    let mut ok = true;
    let mut worst = Duration::ZERO;

    let (c, t) = timed(|| {
        let f = BoundedAffinePerm::parse_with("cycle:(1,4,6,2,5,7,3)", Indexing::OneBased).unwrap();
        Engine::new().compute_c(&f).unwrap()
    });
    worst = worst.max(t);
    ok &= c == 3u32.into() && t < budget;
    notes.push(format!("cycle (1,4,6,2,5,7,3): C = {c} in {t:.2?}"));

    let ((c, fset, dyck), t) = timed(|| {
        let f: BoundedAffinePerm = "window:3,6,4,5,7,8,9".parse().unwrap();
        let c = Engine::new().compute_c(&f).unwrap();
        let fset = inversion_multiset(&f, Frame::Rect).unwrap();
        (c, fset, brute_dyck(3, 7, &[(1, 1), (2, 3)]))
    });
    worst = worst.max(t);
    ok &= c == 3u32.into() && dyck == 3 && fset.format_points() == "1,1;2,3" && t < budget;
    notes.push(format!(
        "window 3,6,4,5,7,8,9: C = {c}, F = {{{}}}, brute Dyck = {dyck} in {t:.2?}",
        fset.format_points()
    ));
    Outcome { ok, detail: notes.join("; "), elapsed: worst, budget: Some(budget) }
}

fn main_theorem(report: &VerificationReport, elapsed: Duration) -> Outcome {
    let expected: u64 = (2..=8).map(|n| factorial(n - 1)).sum();
    let mut out = from_report(report, elapsed, Some(Duration::from_secs(300)));
    out.ok &= report.checked == expected;
    out.detail += &format!(" (expected {expected} n-cycles for n = 2..8)");
    out
}

fn path_oracle(report: &VerificationReport, elapsed: Duration) -> Outcome {
    let path_failures: Vec<_> = report
        .failures
        .iter()
        .filter(|f| f.check.contains("path"))
        .collect();
    Outcome {
        ok: path_failures.is_empty() && report.checked > 0,
        detail: format!("{} path-oracle failures over {} elements", path_failures.len(), report.checked),
        elapsed,
        budget: None,
    }
}

fn synthesis() -> Outcome {
    let (report, elapsed) = timed(|| verify_synthesis(8, jobs()));
    let mut out = from_report(&report, elapsed, Some(Duration::from_secs(60)));
    let catalog: BTreeSet<String> = report.observations["catalog_4_8"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    let oracle = oracle_catalog(4, 8);
    let realized: BTreeSet<String> = enumerate_theta(4, 8)
        .iter()
        .map(|f| inversion_multiset(f, Frame::Rect).unwrap())
        .filter(LatticeMultiset::is_set)
        .map(|s| s.format_points())
        .collect();
    out.ok &= catalog == oracle && realized == oracle;
    out.detail += &format!("; (4,8) catalog {} sets, oracle {}, realized {}", catalog.len(), oracle.len(), realized.len());
    out
}

fn engine() -> Outcome {
    let (report, elapsed) = timed(|| verify_engine(7, jobs()));
    from_report(&report, elapsed, Some(Duration::from_secs(300)))
}

fn min_length() -> Outcome {
    let (bad, elapsed) = timed(|| {
        let mut bad = Vec::new();
        for n in 2..=8usize {
            for k in 1..n as i64 {
                let d = gcd(k, n as i64) as u64;
                let min = enumerate_theta(k, n).iter().map(|f| f.length()).min().unwrap();
                let w = BoundedAffinePerm::min_length_witness(k, n).unwrap();
                if min != d - 1 || w.length() != d - 1 || !w.is_theta() || w.k() != k {
                    bad.push(format!("({k},{n}): min {min}, witness {}", w.length()));
                }
            }
        }
        bad
    });
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() { "all (k,n) with n <= 8".into() } else { format!("{bad:?}") },
        elapsed,
        budget: None,
    }
}

fn census() -> Outcome {
    let (report, elapsed) = timed(|| census_report(8, jobs()));
    let agree = &report.observations["agreeing_groups"];
    let disagree = report.observations.get("disagreeing_groups").cloned().unwrap_or_default();
    Outcome {
        ok: report.passed(),
        detail: format!(
            "observational: {} F-groups, {agree} agree with gcd(k, n), {disagree} disagree",
            report.checked
        ),
        elapsed,
        budget: None,
    }
}

fn main() {
    let (main_report, main_elapsed) = timed(|| verify_main_theorem(8, jobs()));
    let results = [
        ("1 rational Catalan values", rational_catalan()),
        ("2 named instances", named_instances()),
        ("3 main theorem n <= 8", main_theorem(&main_report, main_elapsed)),
        ("4 path oracle n <= 8", path_oracle(&main_report, main_elapsed)),
        ("5 synthesis round trip n <= 8", synthesis()),
        ("6 engine consistency n <= 7", engine()),
        ("7 minimum length n <= 8", min_length()),
        ("8 census n <= 8", census()),
    ];
    let mut all = true;
    for (name, o) in &results {
        let within = o.budget.is_none_or(|b| o.elapsed <= b);
        let pass = o.ok && within;
        all &= pass;
        let budget = o.budget.map(|b| format!(" (budget {b:.0?})")).unwrap_or_default();
        println!(
            "criterion {name}: {} [{:.3?}{budget}] {}",
            if pass { "PASS" } else { "FAIL" },
            o.elapsed,
            o.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
