//! Subword complexes of the A2 examples: the pentagon, the square and a void one.

use subword_complex::coxeter::{CoxeterSystem, Word};
use subword_complex::subword::SubwordDescriptor;

fn main() -> subword_complex::Result<()> {
    let sys = CoxeterSystem::named("A2")?;
    let w0 = sys.longest_element();
    for q in ["12121", "11221", "12"] {
        let d = SubwordDescriptor::new(&sys, &Word::parse(q)?, w0.clone())?;
        let x = d.build()?;
        let spherical = d.is_spherical()?;
        println!("Q = {q}: {x}");
        println!("  f = {:?}, h = {:?}, spherical = {spherical}, flag = {}", x.f_vector(), x.h_vector(), x.is_flag());
        if spherical {
            println!("  gamma = {}", x.gamma()?);
        }
    }

    // the multi-cluster complex c^k w0(c) for c = s1 s2 s3 in A3
    let sys = CoxeterSystem::named("A3")?;
    let w0 = sys.longest_element();
    let c = Word::parse("123")?;
    let q = c.concat(&c).concat(&sys.c_sorting_word(&c, &w0)?);
    let x = SubwordDescriptor::new(&sys, &q, w0)?.build()?;
    println!("Q = {q}: f = {:?}, h = {:?}", x.f_vector(), x.h_vector());
    Ok(())
}
