//! Group repetition-free elements of Theta(k, n) by inversion set and count
//! c-equivalence classes per group.

use posicat::harness::classes_census;

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let n_max = args.first().copied().unwrap_or(7);
    for n in 2..=n_max {
        for k in 1..n as i64 {
            let report = classes_census(k, n);
            println!(
                "({k},{n}) gcd {}: {} groups, {} agree with gcd, nu_bar constant: {}",
                report.gcd,
                report.groups.len(),
                report.agreeing_groups,
                report.nu_bar_constant_on_classes
            );
            for g in report.groups.iter().filter(|g| !g.matches_gcd) {
                println!("    F = {{{}}}: {} classes {:?}", g.fset, g.classes, g.class_sizes);
            }
        }
    }
}
