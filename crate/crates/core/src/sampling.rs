//! Seeded random words, targets and braid contexts for property runs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::BraidContext;
use crate::coxeter::{CoxeterSystem, GroupElement, Word};
use crate::error::Result;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word<R: Rng>(rng: &mut R, rank: usize, len: usize) -> Word {
    Word::new((0..len).map(|_| rng.gen_range(0..rank)).collect())
}

/// A target for subword complexes of `q`: usually the element of a random
/// subword of `q` (so the complex is rarely void), sometimes a random element.
pub fn random_target<R: Rng>(rng: &mut R, system: &CoxeterSystem, q: &Word) -> Result<GroupElement> {
    let word = if rng.gen_bool(0.8) {
        Word::new(q.letters().iter().copied().filter(|_| rng.gen_bool(0.6)).collect())
    } else {
        let len = rng.gen_range(0..=q.len().max(1));
        random_word(rng, system.rank(), len)
    };
    system.element_of(&word)
}

/// A random `(Q, π)` with `|Q| <= max_len`.
pub fn random_instance<R: Rng>(rng: &mut R, system: &CoxeterSystem, max_len: usize) -> Result<(Word, GroupElement)> {
    let len = rng.gen_range(0..=max_len);
    let q = random_word(rng, system.rank(), len);
    let pi = random_target(rng, system, &q)?;
    Ok((q, pi))
}

/// A random braid context with `|Q| + |Q'| <= max_outer`.
pub fn random_context<'a, R: Rng>(
    rng: &mut R,
    system: &'a CoxeterSystem,
    max_outer: usize,
) -> Result<BraidContext<'a>> {
    let rank = system.rank();
    let mut gens: Vec<usize> = (0..rank).collect();
    gens.shuffle(rng);
    let (i, j) = (gens[0], gens[1]);
    let total = rng.gen_range(0..=max_outer);
    let split = rng.gen_range(0..=total);
    let q = random_word(rng, rank, split);
    let q_prime = random_word(rng, rank, total - split);
    let m = system.m(i, j) as usize;
    let full = q.concat(&Word::new(CoxeterSystem::alternating(i, j, m))).concat(&q_prime);
    let pi = random_target(rng, system, &full)?;
    BraidContext::new(system, q, q_prime, i, j, pi)
}
