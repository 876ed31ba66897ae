use std::collections::{BTreeSet, HashSet, VecDeque};
use std::f64::consts::PI;
use std::hash::{Hash, Hasher};
use std::ops::ControlFlow;

use crate::coxeter::{CoxeterMatrix, CoxeterType, Word};
use crate::error::{Error, Result};

/// Default rounding grid for element equality and sign tests.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
/// Default cap on the number of reduced words enumerated.
pub const DEFAULT_WORD_CAP: usize = 100_000;
/// Default bound on the group order for whole-group enumeration.
pub const DEFAULT_SIZE_GUARD: usize = 1_000_000;

/// An element of `W`, stored as its matrix in the geometric representation
/// (columns are images of the simple roots).
///
/// Equality and hashing round every entry to the tolerance grid of the system
/// that produced the element.
#[derive(Clone, Debug)]
pub struct GroupElement {
    rank: usize,
    entries: Vec<f64>,
    grid: f64,
}

impl GroupElement {
    fn identity(rank: usize, grid: f64) -> Self {
        let mut entries = vec![0.0; rank * rank];
        for i in 0..rank {
            entries[i * rank + i] = 1.0;
        }
        GroupElement { rank, entries, grid }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Row-major matrix entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Image of the simple root `alpha_s` in simple-root coordinates.
    pub fn column(&self, s: usize) -> impl Iterator<Item = f64> + '_ {
        (0..self.rank).map(move |r| self.entries[r * self.rank + s])
    }

    /// True when `g(alpha_s)` is a negative root, i.e. `s` is a right descent.
    fn sends_negative(&self, s: usize) -> bool {
        let tol = self.grid;
        self.column(s).all(|x| x <= tol)
    }

    fn is_identity_fast(&self) -> bool {
        (0..self.rank).all(|s| !self.sends_negative(s))
    }

    /// Canonical key: entries rounded to the grid.
    pub fn key(&self) -> Vec<i64> {
        self.entries.iter().map(|x| (x / self.grid).round() as i64).collect()
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        let n = self.rank;
        let mut entries = vec![0.0; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.entries[r * n + k];
                if a == 0.0 {
                    continue;
                }
                for c in 0..n {
                    entries[r * n + c] += a * other.entries[k * n + c];
                }
            }
        }
        GroupElement { rank: n, entries, grid: self.grid }
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.key() == other.key()
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

/// A finite Coxeter system with its geometric representation.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    /// Bilinear form `B(alpha_i, alpha_j) = -cos(pi / m_ij)`, row-major.
    form: Vec<f64>,
    tolerance: f64,
    size_guard: usize,
}

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> Self {
        let n = matrix.rank();
        let mut form = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                form[i * n + j] = -(PI / matrix.m(i, j) as f64).cos();
            }
        }
        CoxeterSystem { matrix, form, tolerance: DEFAULT_TOLERANCE, size_guard: DEFAULT_SIZE_GUARD }
    }

    pub fn of_type(t: CoxeterType) -> Result<Self> {
        Ok(CoxeterSystem::new(t.matrix()?))
    }

    /// Shortcut for named groups: `"A3"`, `"H3"`, `"I2:5"`.
    pub fn named(name: &str) -> Result<Self> {
        CoxeterSystem::of_type(name.parse()?)
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_size_guard(mut self, guard: usize) -> Self {
        self.size_guard = guard;
        self
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn m(&self, i: usize, j: usize) -> u32 {
        self.matrix.m(i, j)
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.rank(), self.tolerance)
    }

    /// The reflection `v -> v - 2 B(alpha_s, v) alpha_s` as a matrix.
    pub fn generator(&self, s: usize) -> Result<GroupElement> {
        self.check_generator(s)?;
        let mut g = self.identity();
        self.mul_gen_right(&mut g, s);
        Ok(g)
    }

    fn check_generator(&self, s: usize) -> Result<()> {
        if s < self.rank() {
            Ok(())
        } else {
            Err(Error::GeneratorOutOfRange { index: s + 1, rank: self.rank() })
        }
    }

    /// `g <- g * s`.
    pub fn mul_gen_right(&self, g: &mut GroupElement, s: usize) {
        let n = self.rank();
        let row = &self.form[s * n..(s + 1) * n];
        for r in 0..n {
            let a = g.entries[r * n + s];
            if a == 0.0 {
                continue;
            }
            for (c, b) in row.iter().enumerate() {
                g.entries[r * n + c] -= 2.0 * a * b;
            }
        }
    }

    /// `g <- s * g`.
    pub fn mul_gen_left(&self, g: &mut GroupElement, s: usize) {
        let n = self.rank();
        for c in 0..n {
            let dot: f64 = (0..n).map(|k| self.form[s * n + k] * g.entries[k * n + c]).sum();
            g.entries[s * n + c] -= 2.0 * dot;
        }
    }

    /// Product of the generators in word order; the empty word is the identity.
    pub fn element_of(&self, w: &Word) -> Result<GroupElement> {
        w.check_rank(self.rank())?;
        let mut g = self.identity();
        for &s in w.letters() {
            self.mul_gen_right(&mut g, s);
        }
        Ok(g)
    }

    pub fn is_right_descent(&self, g: &GroupElement, s: usize) -> bool {
        g.sends_negative(s)
    }

    pub fn right_descents(&self, g: &GroupElement) -> BTreeSet<usize> {
        (0..self.rank()).filter(|&s| g.sends_negative(s)).collect()
    }

    pub fn left_descents(&self, g: &GroupElement) -> BTreeSet<usize> {
        self.right_descents(&self.inverse(g))
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        g.is_identity_fast()
    }

    /// Length, by stripping right descents until the identity is reached.
    pub fn length(&self, g: &GroupElement) -> usize {
        self.strip(g).len()
    }

    /// Right descents stripped from `g` (smallest index first), in stripping order.
    fn strip(&self, g: &GroupElement) -> Vec<usize> {
        let mut g = g.clone();
        let mut stripped = Vec::new();
        while let Some(s) = (0..self.rank()).find(|&s| g.sends_negative(s)) {
            self.mul_gen_right(&mut g, s);
            stripped.push(s);
        }
        stripped
    }

    /// A reduced word for `g`.
    pub fn reduced_word(&self, g: &GroupElement) -> Word {
        let mut letters = self.strip(g);
        letters.reverse();
        Word::new(letters)
    }

    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        let mut inv = self.identity();
        for s in self.strip(g) {
            self.mul_gen_right(&mut inv, s);
        }
        inv
    }

    pub fn is_reduced(&self, w: &Word) -> Result<bool> {
        Ok(self.length(&self.element_of(w)?) == w.len())
    }

    /// A reduced word for the element of `w` (not necessarily a subword of `w`).
    pub fn nil_reduce(&self, w: &Word) -> Result<Word> {
        Ok(self.reduced_word(&self.element_of(w)?))
    }

    /// Left-to-right greedy fold: multiply by `q` only when it increases length.
    pub fn demazure_product(&self, w: &Word) -> Result<GroupElement> {
        w.check_rank(self.rank())?;
        let mut g = self.identity();
        for &s in w.letters() {
            if !g.sends_negative(s) {
                self.mul_gen_right(&mut g, s);
            }
        }
        Ok(g)
    }

    /// The longest element, by greedy ascent.
    pub fn longest_element(&self) -> GroupElement {
        let mut g = self.identity();
        while let Some(s) = (0..self.rank()).find(|&s| !g.sends_negative(s)) {
            self.mul_gen_right(&mut g, s);
        }
        g
    }

    /// Visits the position sets of `letters` that spell reduced expressions of
    /// `pi`, in lexicographic order of the increasing position sequences.
    ///
    /// The search carries `x = (u^-1 pi)^-1` for the current prefix `u`; a letter
    /// `q` may be taken exactly when it is a left descent of `u^-1 pi`, and a
    /// branch is cut once the remaining length exceeds the remaining positions.
    pub fn visit_reduced_subwords<F>(&self, letters: &[usize], pi: &GroupElement, mut visit: F)
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let remaining = self.length(pi);
        let start = self.inverse(pi);
        let mut chosen = Vec::with_capacity(remaining);
        let _ = self.reduced_subword_dfs(letters, 0, start, remaining, &mut chosen, &mut visit);
    }

    fn reduced_subword_dfs<F>(
        &self,
        letters: &[usize],
        pos: usize,
        x: GroupElement,
        remaining: usize,
        chosen: &mut Vec<usize>,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if remaining == 0 {
            return visit(chosen);
        }
        if remaining > letters.len() - pos {
            return ControlFlow::Continue(());
        }
        let q = letters[pos];
        if x.sends_negative(q) {
            let mut taken = x.clone();
            self.mul_gen_right(&mut taken, q);
            chosen.push(pos);
            self.reduced_subword_dfs(letters, pos + 1, taken, remaining - 1, chosen, visit)?;
            chosen.pop();
        }
        self.reduced_subword_dfs(letters, pos + 1, x, remaining, chosen, visit)
    }

    /// Whether some subword of `q` is a reduced expression of `pi`.
    pub fn contains_reduced(&self, q: &Word, pi: &GroupElement) -> Result<bool> {
        q.check_rank(self.rank())?;
        let mut found = false;
        self.visit_reduced_subwords(q.letters(), pi, |_| {
            found = true;
            ControlFlow::Break(())
        });
        Ok(found)
    }

    /// The alternating word `i j i j ...` of length `len`.
    pub fn alternating(i: usize, j: usize, len: usize) -> Vec<usize> {
        (0..len).map(|k| if k % 2 == 0 { i } else { j }).collect()
    }

    /// Replaces the alternating window of length `m_ij` starting at the 0-based
    /// position `pos` (beginning with `i`) by the alternation beginning with `j`.
    pub fn apply_braid_move(&self, w: &Word, pos: usize, i: usize, j: usize) -> Result<Word> {
        self.check_generator(i)?;
        self.check_generator(j)?;
        if i == j {
            return Err(Error::WindowMismatch { pos, reason: "i and j coincide".into() });
        }
        let m = self.m(i, j) as usize;
        let letters = w.letters();
        if pos + m > letters.len() {
            return Err(Error::WindowMismatch {
                pos,
                reason: format!("window of length {m} runs past the end of the word"),
            });
        }
        if letters[pos..pos + m] != Self::alternating(i, j, m)[..] {
            return Err(Error::WindowMismatch {
                pos,
                reason: format!("expected the alternation of s{} and s{} of length {m}", i + 1, j + 1),
            });
        }
        let mut out = letters.to_vec();
        out[pos..pos + m].copy_from_slice(&Self::alternating(j, i, m));
        Ok(Word::new(out))
    }

    /// Every braid move available in `w`, as `(pos, i, j)`.
    pub fn braid_moves(&self, w: &Word) -> Vec<(usize, usize, usize)> {
        let letters = w.letters();
        let mut moves = Vec::new();
        for pos in 0..letters.len().saturating_sub(1) {
            let (i, j) = (letters[pos], letters[pos + 1]);
            if i == j {
                continue;
            }
            let m = self.m(i, j) as usize;
            if pos + m <= letters.len() && letters[pos..pos + m] == Self::alternating(i, j, m)[..] {
                moves.push((pos, i, j));
            }
        }
        moves
    }

    /// All reduced words of `g`, by breadth-first search over braid moves.
    pub fn reduced_words(&self, g: &GroupElement, cap: usize) -> Result<BTreeSet<Word>> {
        let seed = self.reduced_word(g);
        let mut seen = BTreeSet::new();
        seen.insert(seed.clone());
        let mut queue = VecDeque::from([seed]);
        while let Some(w) = queue.pop_front() {
            for (pos, i, j) in self.braid_moves(&w) {
                let next = self.apply_braid_move(&w, pos, i, j)?;
                if seen.insert(next.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    queue.push_back(next);
                }
            }
        }
        Ok(seen)
    }

    /// The `c`-sorting word of `g`: the lexicographically first reduced subword
    /// of `c c c ...` spelling `g`.
    pub fn c_sorting_word(&self, c: &Word, g: &GroupElement) -> Result<Word> {
        c.check_rank(self.rank())?;
        let mut sorted = c.letters().to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.rank()).collect::<Vec<_>>() {
            return Err(Error::NotCoxeterElement(format!(
                "{c} must contain every generator exactly once"
            )));
        }
        // x = (u^-1 g)^-1 for the current prefix u
        let mut x = self.inverse(g);
        let mut out = Vec::new();
        for &s in c.letters().iter().cycle() {
            if x.is_identity_fast() {
                break;
            }
            if x.sends_negative(s) {
                self.mul_gen_right(&mut x, s);
                out.push(s);
            }
        }
        Ok(Word::new(out))
    }

    /// Every element of `W`, by breadth-first search from the identity.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        let id = self.identity();
        let mut seen: HashSet<GroupElement> = HashSet::from([id.clone()]);
        let mut order = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in 0..self.rank() {
                let mut h = g.clone();
                self.mul_gen_right(&mut h, s);
                if seen.insert(h.clone()) {
                    if seen.len() > self.size_guard {
                        return Err(Error::SizeGuard { guard: self.size_guard });
                    }
                    order.push(h.clone());
                    queue.push_back(h);
                }
            }
        }
        Ok(order)
    }
}
