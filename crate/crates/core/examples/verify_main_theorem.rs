//! Run the exhaustive check that every n-cycle element has a symmetric convex
//! inversion set whose avoiding Dyck paths number C(f).

use posicat::harness::verify_main_theorem;

fn main() {
    let n_max = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(7);
    let jobs = std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1);
    let report = verify_main_theorem(n_max, jobs);
    println!("checked {} permutations in {:.2}s", report.checked, report.elapsed);
    for f in report.failures.iter().take(10) {
        println!("  FAIL {}: {} (expected {}, got {})", f.subject, f.check, f.expected, f.actual);
    }
    std::process::exit(if report.passed() { 0 } else { 1 });
}
