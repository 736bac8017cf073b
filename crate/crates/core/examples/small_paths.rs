//! The small path of an element of Theta, its intersection numbers with
//! translated copies, and the statistics nu and nu-bar.

use posicat::paths::{intersection_count, multiplicity_from_paths, nu, nu_bar, small_path};
use posicat::{inversion_multiset, BoundedAffinePerm, Frame, LatticeVec};

fn main() -> Result<(), posicat::Error> {
    let f = BoundedAffinePerm::from_cycle(&[0, 3, 2, 5, 1, 4])?;
    let (k, n) = (f.k(), f.n() as i64);
    let path = small_path(&f)?;
    let verticals: Vec<String> = path.verticals().iter().map(|v| v.to_string()).collect();
    println!("{f}: verticals {}", verticals.join(" "));

    let fset = inversion_multiset(&f, Frame::Sheared)?;
    for a in 0..=k {
        for b in 0..=n {
            let alpha = LatticeVec { a, b };
            if (a, b) == (0, 0) || (a, b) == (k, n) {
                continue;
            }
            let m = multiplicity_from_paths(&f, alpha)?;
            if m > 0 {
                println!(
                    "  alpha = ({a},{b}): crossings {}, multiplicity {m}, in F: {}",
                    intersection_count(&f, alpha)?,
                    fset.multiplicity(alpha)
                );
            }
        }
    }
    println!("nu = {}, nu_bar = {}", nu(&f)?, nu_bar(&f)?);
    std::fs::write("small_path.svg", path.to_svg(40)).ok();
    println!("wrote small_path.svg");
    Ok(())
}
