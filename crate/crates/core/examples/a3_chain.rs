//! A chain of braid moves in A3 from the cube to the three-dimensional associahedron.

use subword_complex::demo::demo_a3_chain;

fn main() -> subword_complex::Result<()> {
    let d = demo_a3_chain()?;
    for r in &d.rows {
        println!("{}  {:<9} f = {:?}  vertices {:?}", r.word, r.polytope, r.f, r.vertices);
    }
    println!("gamma_1: {:?}", d.gamma1);
    for s in &d.steps {
        println!("{} -> {}  case {}", s.before, s.after, s.report.case);
    }
    Ok(())
}
