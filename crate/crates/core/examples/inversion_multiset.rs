//! Inversions of a bounded affine permutation and the lattice multiset they
//! generate, in both coordinate frames.

use posicat::{inversion_multiset, is_repetition_free, BoundedAffinePerm, Frame};
use posicat::fset::{a_sequence, is_convex, lambda_partition};

fn main() -> Result<(), posicat::Error> {
    let f: BoundedAffinePerm = "window:3,6,4,5,7,8,9".parse()?;
    println!("f = {f}, k = {}, length = {}", f.k(), f.length());
    for inv in f.inversions() {
        println!("  inversion ({}, {})", inv.i, inv.j);
    }
    let rect = inversion_multiset(&f, Frame::Rect)?;
    let sheared = rect.to_frame(Frame::Sheared);
    println!("F (rect)    = {{{}}}", rect.format_points());
    println!("F (sheared) = {{{}}}", sheared.format_points());
    println!("repetition free: {}", is_repetition_free(&f)?);
    println!("convex: {}", is_convex(&rect));
    println!("lambda = {:?}, a = {:?}", lambda_partition(&f)?, a_sequence(&f)?);
    println!("{}", serde_json::to_string_pretty(&rect.to_json()).unwrap());
    Ok(())
}
