//! The relation ρ on reduced words of w0 in A3 with Q = s1 s2 s3, with its Hasse diagram.

use subword_complex::coxeter::{CoxeterSystem, Word, DEFAULT_WORD_CAP};
use subword_complex::poset::{build_rho, semilattice_check};

fn main() -> subword_complex::Result<()> {
    let sys = CoxeterSystem::named("A3")?;
    let rho = build_rho(&sys, &Word::parse("123")?, &Word::empty(), &sys.longest_element(), DEFAULT_WORD_CAP)?;
    println!("{} words in {} classes, antisymmetric: {}", rho.elements.len(), rho.classes.len(), rho.antisymmetric);
    if rho.antisymmetric {
        let s = semilattice_check(&rho)?;
        println!("meet-semilattice {}, join-semilattice {}", s.meet, s.join);
    }
    print!("{}", rho.export_dot());
    Ok(())
}
