//! Lengths, descents and reduced words in a few finite Coxeter groups.

use subword_complex::coxeter::{CoxeterSystem, Word, DEFAULT_WORD_CAP};

fn main() -> subword_complex::Result<()> {
    for name in ["A3", "B3", "H3", "I2:5"] {
        let sys = CoxeterSystem::named(name)?;
        let w0 = sys.longest_element();
        let words = sys.reduced_words(&w0, DEFAULT_WORD_CAP)?;
        println!(
            "{name}: |W| = {}, l(w0) = {}, w0 = {}, {} reduced words",
            sys.elements()?.len(),
            sys.length(&w0),
            sys.reduced_word(&w0),
            words.len()
        );
    }

    let sys = CoxeterSystem::named("A3")?;
    let w = Word::parse("1,2,1,3,2")?;
    let g = sys.element_of(&w)?;
    println!("{w}: reduced = {}, length {}", sys.is_reduced(&w)?, sys.length(&g));
    println!("right descents {:?}, left descents {:?}", sys.right_descents(&g), sys.left_descents(&g));
    let q = Word::parse("1,1,2,3,3,2")?;
    println!("nil-reduce {q} -> {}, Demazure product {}", sys.nil_reduce(&q)?, sys.reduced_word(&sys.demazure_product(&q)?));
    for (pos, i, j) in sys.braid_moves(&w) {
        println!("braid move at {}: {}", pos + 1, sys.apply_braid_move(&w, pos, i, j)?);
    }
    Ok(())
}
