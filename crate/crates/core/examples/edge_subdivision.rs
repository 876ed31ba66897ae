//! Edge subdivisions of a square: f-, h- and H-polynomial changes and flagness.

use subword_complex::simplicial::{LabeledComplex, VertexLabel};

fn main() -> subword_complex::Result<()> {
    let v: Vec<VertexLabel> = (1..=4).map(VertexLabel::QPos).collect();
    let square = LabeledComplex::from_facets([
        vec![v[0].clone(), v[1].clone()],
        vec![v[1].clone(), v[2].clone()],
        vec![v[2].clone(), v[3].clone()],
        vec![v[3].clone(), v[0].clone()],
    ])?;
    let fresh: Vec<VertexLabel> = ["r1", "r2", "r3"].iter().map(|n| VertexLabel::fresh(*n)).collect();
    let once = square.edge_subdivide(&v[0], &v[1], fresh[0].clone())?;
    let thrice = square.k_subdivide(&v[0], &v[1], &fresh)?;
    for (name, x) in [("square", &square), ("subdivided", &once), ("3-subdivided", &thrice)] {
        println!("{name}: f = {:?}, h = {:?}, flag = {}", x.f_vector(), x.h_vector(), x.is_flag());
        println!("  H = {}", x.h_poly());
    }
    println!("H(after) - H(before) = {}", &once.h_poly() - &square.h_poly());
    Ok(())
}
