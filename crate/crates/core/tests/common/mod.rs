//! Brute-force oracles shared by the integration tests. They avoid the
//! descent machinery of the library: lengths come from a breadth-first search
//! of the Cayley graph and subwords are checked by exhaustive enumeration.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use subword_complex::coxeter::{CoxeterSystem, GroupElement};

/// Word length of every element, by BFS from the identity.
pub struct LengthTable(HashMap<Vec<i64>, usize>);

impl LengthTable {
    pub fn new(sys: &CoxeterSystem) -> Self {
        let gens: Vec<GroupElement> = (0..sys.rank()).map(|s| sys.generator(s).unwrap()).collect();
        let mut dist = HashMap::new();
        let mut queue = VecDeque::new();
        dist.insert(sys.identity().key(), 0);
        queue.push_back(sys.identity());
        while let Some(g) = queue.pop_front() {
            let d = dist[&g.key()];
            for s in &gens {
                let h = g.mul(s);
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(h.key()) {
                    e.insert(d + 1);
                    queue.push_back(h);
                }
            }
        }
        LengthTable(dist)
    }

    pub fn length(&self, g: &GroupElement) -> usize {
        self.0[&g.key()]
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }
}

fn product(sys: &CoxeterSystem, letters: &[usize]) -> GroupElement {
    letters.iter().fold(sys.identity(), |g, &s| g.mul(&sys.generator(s).unwrap()))
}

/// All position sets (as bitmasks) of `q` whose letters form a reduced
/// expression of `pi`, by trying all `2^|q|` subsets.
pub fn reduced_subsets(sys: &CoxeterSystem, lengths: &LengthTable, q: &[usize], pi: &GroupElement) -> Vec<u32> {
    let target = pi.key();
    let len = lengths.length(pi);
    (0u32..1 << q.len())
        .filter(|mask| mask.count_ones() as usize == len)
        .filter(|mask| {
            let letters: Vec<usize> = (0..q.len()).filter(|p| mask >> p & 1 == 1).map(|p| q[p]).collect();
            product(sys, &letters).key() == target
        })
        .collect()
}

/// Facets of `Δ(q; pi)` as sets of 1-based positions.
pub fn oracle_facets(sys: &CoxeterSystem, lengths: &LengthTable, q: &[usize], pi: &GroupElement) -> BTreeSet<Vec<usize>> {
    reduced_subsets(sys, lengths, q, pi)
        .into_iter()
        .map(|mask| (0..q.len()).filter(|p| mask >> p & 1 == 0).map(|p| p + 1).collect())
        .collect()
}

/// Demazure product computed from the length table alone.
pub fn oracle_demazure(sys: &CoxeterSystem, lengths: &LengthTable, q: &[usize]) -> GroupElement {
    q.iter().fold(sys.identity(), |g, &s| {
        let h = g.mul(&sys.generator(s).unwrap());
        if lengths.length(&h) > lengths.length(&g) {
            h
        } else {
            g
        }
    })
}
