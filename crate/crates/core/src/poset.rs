//! The order `ρ` on reduced words of `π` induced by subword complexes
//! `Δ(Q p Q'; π)`.
//!
//! Covers come from single braid moves: case 2 or 3 orients an edge toward
//! the subdivided side, case 1 merges the two words. The relation is the
//! transitive closure on the quotient.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::braid::{BraidContext, Case};
use crate::coxeter::{CoxeterSystem, GroupElement, Word};
use crate::error::{Error, Result};
use crate::simplicial::{is_isomorphic_constrained, Bijection, LabeledComplex, VertexLabel};
use crate::subword::SubwordDescriptor;

/// Pairwise checks beyond single moves run only up to this many words.
pub const GAP_CHECK_MAX_WORDS: usize = 24;

/// A cover edge: `upper`'s complex is a subdivision of `lower`'s.
#[derive(Clone, Debug, Serialize)]
pub struct RhoEdge {
    pub lower: Word,
    pub upper: Word,
    pub case: Case,
    /// 1-based window position in the word the move was read from.
    pub position: usize,
}

/// Relations found by comparing complexes directly rather than through moves.
#[derive(Clone, Debug, Default, Serialize)]
pub struct GapReport {
    pub checked: bool,
    pub pairs_compared: usize,
    /// Isomorphic complexes in different classes.
    pub isomorphic_but_separate: Vec<(Word, Word)>,
    /// `(lower, upper)` where one edge subdivision of `lower` is isomorphic to `upper`
    /// but the pair is not related.
    pub single_subdivision_missing: Vec<(Word, Word)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RhoPoset {
    pub elements: Vec<Word>,
    /// Equivalence classes (indices into `elements`), each sorted, ordered by least member.
    pub classes: Vec<Vec<usize>>,
    pub edges: Vec<RhoEdge>,
    /// `relation[a][b]`: class `a` is below or equal to class `b`.
    pub relation: Vec<Vec<bool>>,
    pub antisymmetric: bool,
    /// Pairs of distinct classes related both ways.
    pub violations: Vec<(usize, usize)>,
    /// Moves whose mirrored reading did not give the mirrored case.
    pub mirror_mismatches: Vec<(Word, usize)>,
    /// Moves classified as case 4 or unsupported (no edge).
    pub unoriented_moves: usize,
    /// Case 1-3 moves whose witness failed to verify (no edge).
    pub unverified_moves: usize,
    pub gaps: GapReport,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let root = self.find(p);
        self.0[x] = root;
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root for stable output
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

fn closure(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut rel = vec![vec![false; n]; n];
    for (a, row) in rel.iter_mut().enumerate() {
        row[a] = true;
    }
    for &(a, b) in edges {
        rel[a][b] = true;
    }
    for k in 0..n {
        for a in 0..n {
            if rel[a][k] {
                for b in 0..n {
                    if rel[k][b] {
                        rel[a][b] = true;
                    }
                }
            }
        }
    }
    rel
}

fn complex_of(system: &CoxeterSystem, q: &Word, p: &Word, qp: &Word, pi: &GroupElement) -> Result<LabeledComplex> {
    SubwordDescriptor::new(system, &q.concat(p).concat(qp), pi.clone())?.build()
}

/// Builds `ρ_{Q,Q',π}` over all reduced words of `π`.
pub fn build_rho(
    system: &CoxeterSystem,
    q: &Word,
    q_prime: &Word,
    pi: &GroupElement,
    cap: usize,
) -> Result<RhoPoset> {
    let elements: Vec<Word> = system.reduced_words(pi, cap)?.into_iter().collect();
    let index: BTreeMap<&Word, usize> = elements.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let n = elements.len();
    let mut uf = UnionFind((0..n).collect());
    let mut word_edges: Vec<(usize, usize)> = Vec::new();
    let mut edges = Vec::new();
    let mut mirror_mismatches = Vec::new();
    let (mut unoriented, mut unverified) = (0, 0);
    let mut seen_pairs = BTreeMap::new();

    for (a, p) in elements.iter().enumerate() {
        for (pos, i, j) in system.braid_moves(p) {
            let p2 = system.apply_braid_move(p, pos, i, j)?;
            let b = index[&p2];
            let m = system.m(i, j) as usize;
            let ctx = BraidContext::new(
                system,
                q.concat(&Word::new(p.letters()[..pos].to_vec())),
                Word::new(p.letters()[pos + m..].to_vec()).concat(q_prime),
                i,
                j,
                pi.clone(),
            )?;
            let report = ctx.classify()?;
            // every move is met from both ends; the second visit checks orientation
            if let Some(&earlier) = seen_pairs.get(&(b, a, pos)) {
                if earlier != report.case.mirrored() {
                    mirror_mismatches.push((p.clone(), pos + 1));
                }
                continue;
            }
            seen_pairs.insert((a, b, pos), report.case);
            if report.case.number().is_some_and(|c| c <= 3) && !report.is_verified() {
                unverified += 1;
                continue;
            }
            match report.case {
                Case::Isomorphic => uf.union(a, b),
                Case::LeftIsSubdivisionOfRight => word_edges.push((b, a)),
                Case::RightIsSubdivisionOfLeft => word_edges.push((a, b)),
                Case::CommonRefinement | Case::Unsupported => {
                    unoriented += 1;
                    continue;
                }
            }
            let (lower, upper) = match report.case {
                Case::LeftIsSubdivisionOfRight => (p2.clone(), p.clone()),
                _ => (p.clone(), p2.clone()),
            };
            edges.push(RhoEdge { lower, upper, case: report.case, position: pos + 1 });
        }
    }

    let mut roots: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for w in 0..n {
        roots.entry(uf.find(w)).or_default().push(w);
    }
    let classes: Vec<Vec<usize>> = roots.into_values().collect();
    let class_of: Vec<usize> = {
        let mut c = vec![0; n];
        for (k, members) in classes.iter().enumerate() {
            for &w in members {
                c[w] = k;
            }
        }
        c
    };
    let class_edges: Vec<(usize, usize)> =
        word_edges.iter().map(|&(a, b)| (class_of[a], class_of[b])).collect();
    let relation = closure(classes.len(), &class_edges);
    let mut violations = Vec::new();
    for a in 0..classes.len() {
        for b in a + 1..classes.len() {
            if relation[a][b] && relation[b][a] {
                violations.push((a, b));
            }
        }
    }

    let gaps = if n <= GAP_CHECK_MAX_WORDS {
        gap_check(system, q, q_prime, pi, &elements, &classes, &relation)?
    } else {
        GapReport::default()
    };

    Ok(RhoPoset {
        elements,
        classes,
        edges,
        antisymmetric: violations.is_empty(),
        relation,
        violations,
        mirror_mismatches,
        unoriented_moves: unoriented,
        unverified_moves: unverified,
        gaps,
    })
}

fn gap_check(
    system: &CoxeterSystem,
    q: &Word,
    q_prime: &Word,
    pi: &GroupElement,
    elements: &[Word],
    classes: &[Vec<usize>],
    relation: &[Vec<bool>],
) -> Result<GapReport> {
    let complexes: Vec<LabeledComplex> = classes
        .iter()
        .map(|c| complex_of(system, q, &elements[c[0]], q_prime, pi))
        .collect::<Result<_>>()?;
    let mut report = GapReport { checked: true, ..GapReport::default() };
    let none = Bijection::new();
    for a in 0..classes.len() {
        for b in 0..classes.len() {
            if a == b {
                continue;
            }
            let (x, y) = (&complexes[a], &complexes[b]);
            let related = relation[a][b] || relation[b][a];
            report.pairs_compared += 1;
            if a < b && !related && is_isomorphic_constrained(x, y, &none).is_some() {
                report
                    .isomorphic_but_separate
                    .push((elements[classes[a][0]].clone(), elements[classes[b][0]].clone()));
            }
            if !relation[a][b] && y.vertices().len() == x.vertices().len() + 1 {
                let fresh = VertexLabel::fresh("r");
                let hit = x.edges().iter().any(|(s, t)| {
                    x.edge_subdivide(s, t, fresh.clone())
                        .map(|sub| is_isomorphic_constrained(&sub, y, &none).is_some())
                        .unwrap_or(false)
                });
                if hit {
                    report
                        .single_subdivision_missing
                        .push((elements[classes[a][0]].clone(), elements[classes[b][0]].clone()));
                }
            }
        }
    }
    Ok(report)
}

/// Meet/join existence for every pair of classes, with a failing pair if any.
#[derive(Clone, Debug, Serialize)]
pub struct SemilatticeReport {
    pub meet: bool,
    pub join: bool,
    /// A pair of class representatives without a meet.
    pub meet_counterexample: Option<(Word, Word)>,
    pub join_counterexample: Option<(Word, Word)>,
}

fn bound(rel: &[Vec<bool>], a: usize, b: usize, lower: bool) -> Option<usize> {
    let n = rel.len();
    let le = |x: usize, y: usize| if lower { rel[x][y] } else { rel[y][x] };
    let bounds: Vec<usize> = (0..n).filter(|&c| le(c, a) && le(c, b)).collect();
    bounds.iter().copied().find(|&c| bounds.iter().all(|&d| le(d, c)))
}

pub fn semilattice_check(p: &RhoPoset) -> Result<SemilatticeReport> {
    if !p.antisymmetric {
        let (a, b) = p.violations[0];
        return Err(Error::NotAntisymmetric(format!(
            "{} and {} are related both ways",
            p.elements[p.classes[a][0]], p.elements[p.classes[b][0]]
        )));
    }
    let n = p.classes.len();
    let rep = |c: usize| p.elements[p.classes[c][0]].clone();
    let mut meet_cx = None;
    let mut join_cx = None;
    for a in 0..n {
        for b in a + 1..n {
            if meet_cx.is_none() && bound(&p.relation, a, b, true).is_none() {
                meet_cx = Some((rep(a), rep(b)));
            }
            if join_cx.is_none() && bound(&p.relation, a, b, false).is_none() {
                join_cx = Some((rep(a), rep(b)));
            }
        }
    }
    Ok(SemilatticeReport {
        meet: meet_cx.is_none(),
        join: join_cx.is_none(),
        meet_counterexample: meet_cx,
        join_counterexample: join_cx,
    })
}

impl RhoPoset {
    /// Cover pairs of the quotient order (transitive reduction).
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.classes.len();
        let rel = &self.relation;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b
                    && rel[a][b]
                    && !rel[b][a]
                    && !(0..n).any(|c| c != a && c != b && rel[a][c] && rel[c][b] && !rel[c][a] && !rel[b][c])
                {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn class_label(&self, c: usize) -> String {
        let words: Vec<String> = self.classes[c].iter().map(|&w| self.elements[w].to_string()).collect();
        words.join(" ~ ")
    }

    fn class_of(&self, w: &Word) -> Option<usize> {
        let idx = self.elements.iter().position(|e| e == w)?;
        self.classes.iter().position(|c| c.contains(&idx))
    }

    /// The Hasse diagram in DOT; edges carry the case numbers of the moves behind them.
    pub fn export_dot(&self) -> String {
        let mut out = String::from("digraph rho {\n  rankdir=BT;\n  node [shape=box];\n");
        for c in 0..self.classes.len() {
            let _ = writeln!(out, "  n{c} [label=\"{}\"];", self.class_label(c));
        }
        for (a, b) in self.hasse() {
            let mut cases: Vec<String> = self
                .edges
                .iter()
                .filter(|e| self.class_of(&e.lower) == Some(a) && self.class_of(&e.upper) == Some(b))
                .map(|e| e.case.to_string())
                .collect();
            cases.sort();
            cases.dedup();
            let _ = writeln!(out, "  n{a} -> n{b} [label=\"{}\"];", cases.join(","));
        }
        out.push_str("}\n");
        out
    }
}
