//! Realize a centrally symmetric convex set as the inversion set of a
//! repetition-free permutation via a concave profile.

use posicat::dyck::synthesize;
use posicat::fset::{f_max, f_min};
use posicat::{inversion_multiset, Frame, LatticeMultiset};

fn main() -> Result<(), posicat::Error> {
    let targets = [
        f_min(4, 8),
        f_max(3, 7),
        LatticeMultiset::parse_points("1,1;2,3", Frame::Rect, 3, 7)?,
    ];
    for set in &targets {
        let s = synthesize(set)?;
        let back = inversion_multiset(&s.perm, Frame::Rect)?;
        println!("target {{{}}}", set.format_points());
        println!("  profile {}", s.profile);
        println!("  perm    {}  (F = {{{}}})", s.perm, back.format_points());
    }

    let asym = LatticeMultiset::parse_points("1,1", Frame::Rect, 3, 7)?;
    match synthesize(&asym) {
        Ok(s) => println!("unexpected: {}", s.perm),
        Err(e) => println!("{{1,1}} in (3,7): {e}"),
    }
    Ok(())
}
