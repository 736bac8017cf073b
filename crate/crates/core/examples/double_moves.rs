//! Simple moves on Theta: conjugation by s_i, crossing resolution, and the
//! Catalan recurrence at a double crossing.

use posicat::{BoundedAffinePerm, Engine, Inversion};

fn main() -> Result<(), posicat::Error> {
    let f: BoundedAffinePerm = "window:1,4,3,5,7".parse()?;
    let mut engine = Engine::new().with_trace();
    println!("f = {f}, length {}, C = {}", f.length(), engine.compute_c(&f)?);
    for event in engine.take_trace() {
        println!("  {}", serde_json::to_string(&event).unwrap());
    }

    for i in 0..f.n() as i64 {
        if !f.has_double_crossing_at(i) {
            continue;
        }
        let g = f.conjugate_s(i)?;
        println!("double crossing at {i}; s_i f s_i bounded: {}, length change {}", g.is_bounded, g.length_delta);
        let res = f.resolve_crossing(Inversion { i, j: i + 1 })?;
        println!("  f1 = {}  f2 = {}  gamma = {:?}", res.f1, res.f2, res.gamma);
        println!("  recurrence holds: {}", engine.double_crossing_recurrence_check(&f, i)?);
    }

    let class = f.c_equivalence_class(Some(1000))?;
    println!("c-class of f has {} members:", class.len());
    for g in &class {
        println!("  {g}  C = {}", engine.compute_c(g)?);
    }
    let shifted = f.cyclic_shift();
    println!("cyclic shift {shifted}: C = {}", engine.compute_c(&shifted)?);
    Ok(())
}
