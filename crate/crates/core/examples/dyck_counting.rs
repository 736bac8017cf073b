//! Dyck paths in a k x (n - k) rectangle avoiding a forbidden set, checked
//! against the Catalan number of the permutation that generates the set.

use posicat::dyck::{count_avoiding_paths, enumerate_avoiding_paths};
use posicat::{inversion_multiset, BoundedAffinePerm, Engine, Frame, LatticeMultiset};

fn main() -> Result<(), posicat::Error> {
    let empty = LatticeMultiset::new(Frame::Rect, 3, 7);
    println!("unrestricted (3,7): {}", count_avoiding_paths(3, 7, &empty));

    let forbid = LatticeMultiset::parse_points("1,1;2,3", Frame::Rect, 3, 7)?;
    println!("avoiding {{{}}}: {}", forbid.format_points(), count_avoiding_paths(3, 7, &forbid));
    for p in enumerate_avoiding_paths(3, 7, &forbid, 20)? {
        println!("  {p}");
    }

    let mut engine = Engine::new();
    for w in ["window:3,6,4,5,7,8,9", "window:1,4,3,5,7", "window:2,4,3,5,7,6"] {
        let f: BoundedAffinePerm = w.parse()?;
        if !f.is_theta() {
            continue;
        }
        let set = inversion_multiset(&f, Frame::Rect)?;
        println!(
            "{f}: C = {}, Dyck count = {}",
            engine.compute_c(&f)?,
            count_avoiding_paths(f.k(), f.n() as i64, &set)
        );
    }
    Ok(())
}
