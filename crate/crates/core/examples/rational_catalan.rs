//! Catalan numbers of positroid varieties, starting from the top cell `f_{k,n}`.

use posicat::{BoundedAffinePerm, Engine};

fn main() -> Result<(), posicat::Error> {
    let mut engine = Engine::new();
    println!("{:>3} {:>3} {:>8} {:>10}  rtilde", "k", "n", "C", "binom/n");
    for n in 2..=9usize {
        for k in 1..n as i64 {
            if num_integer::gcd(k, n as i64) != 1 {
                continue;
            }
            let f = BoundedAffinePerm::translation(k, n)?;
            let c = engine.compute_c(&f)?;
            let expected = num_integer::binomial(n as u64, k as u64) / n as u64;
            let rt = engine.compute_rtilde(&f)?;
            println!("{k:>3} {n:>3} {c:>8} {expected:>10}  {rt}");
        }
    }

    let f = BoundedAffinePerm::from_cycle(&[0, 3, 2, 5, 1, 4])?;
    println!("\n{f}: C = {}", engine.compute_c(&f)?);
    println!("R = {}", engine.compute_r(&f)?);
    let stats = engine.stats();
    println!("cache: {} C entries, {} hits, {} misses", stats.c_entries, stats.hits, stats.misses);
    Ok(())
}
