//! Subword complexes `Δ(Q; π)`.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::coxeter::{CoxeterSystem, GroupElement, Word};
use crate::error::{Error, Result};
use crate::simplicial::{Face, LabeledComplex, VertexLabel};

/// A word `Q` with one vertex label per position, and a target element `π`.
#[derive(Clone, Debug)]
pub struct SubwordDescriptor<'a> {
    system: &'a CoxeterSystem,
    letters: Vec<usize>,
    labels: Vec<VertexLabel>,
    pi: GroupElement,
}

impl<'a> SubwordDescriptor<'a> {
    /// Positions are labeled `q1, q2, ...`.
    pub fn new(system: &'a CoxeterSystem, q: &Word, pi: GroupElement) -> Result<Self> {
        let labels = (1..=q.len()).map(VertexLabel::QPos).collect();
        Self::with_labels(system, q.letters().to_vec(), labels, pi)
    }

    pub fn with_labels(
        system: &'a CoxeterSystem,
        letters: Vec<usize>,
        labels: Vec<VertexLabel>,
        pi: GroupElement,
    ) -> Result<Self> {
        Word::new(letters.clone()).check_rank(system.rank())?;
        if letters.len() != labels.len() {
            return Err(Error::Parse(format!(
                "{} letters but {} labels",
                letters.len(),
                labels.len()
            )));
        }
        if labels.iter().collect::<BTreeSet<_>>().len() != labels.len() {
            return Err(Error::LabelCollision("position labels must be distinct".into()));
        }
        Ok(SubwordDescriptor { system, letters, labels, pi })
    }

    pub fn system(&self) -> &'a CoxeterSystem {
        self.system
    }

    pub fn word(&self) -> Word {
        Word::new(self.letters.clone())
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn pi(&self) -> &GroupElement {
        &self.pi
    }

    /// Position sets (0-based, increasing) carrying reduced expressions of `π`.
    pub fn reduced_expressions(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.system.visit_reduced_subwords(&self.letters, &self.pi, |chosen| {
            out.push(chosen.to_vec());
            ControlFlow::Continue(())
        });
        out
    }

    /// The subword complex; void when `Q` contains no reduced expression of `π`.
    pub fn build(&self) -> Result<LabeledComplex> {
        let expressions = self.reduced_expressions();
        if expressions.is_empty() {
            return Ok(LabeledComplex::void());
        }
        let facets: Vec<Face> = expressions
            .iter()
            .map(|chosen| {
                (0..self.letters.len())
                    .filter(|p| !chosen.contains(p))
                    .map(|p| self.labels[p].clone())
                    .collect()
            })
            .collect();
        LabeledComplex::from_facets(facets)
    }

    /// Whether the positions `t` (0-based) form a face: their complement
    /// still contains a reduced expression of `π`.
    pub fn is_face(&self, t: &[usize]) -> Result<bool> {
        let rest = self.without_positions(t)?;
        let mut found = false;
        self.system.visit_reduced_subwords(&rest.letters, &self.pi, |_| {
            found = true;
            ControlFlow::Break(())
        });
        Ok(found)
    }

    /// Spherical iff the Demazure product of `Q` equals `π`.
    pub fn is_spherical(&self) -> Result<bool> {
        Ok(self.system.demazure_product(&self.word())? == self.pi)
    }

    /// The descriptor with the given positions deleted, keeping the other labels.
    pub fn without_positions(&self, positions: &[usize]) -> Result<Self> {
        if let Some(&p) = positions.iter().find(|&&p| p >= self.letters.len()) {
            return Err(Error::Parse(format!("position {} is past the end of the word", p + 1)));
        }
        let keep = |p: &usize| !positions.contains(p);
        Ok(SubwordDescriptor {
            system: self.system,
            letters: (0..self.letters.len()).filter(keep).map(|p| self.letters[p]).collect(),
            labels: (0..self.letters.len()).filter(keep).map(|p| self.labels[p].clone()).collect(),
            pi: self.pi.clone(),
        })
    }

    /// Checks that the link of the face `t` equals the subword complex of `Q`
    /// with the letters of `t` removed, label for label.
    pub fn link_oracle_check(&self, t: &[usize]) -> Result<bool> {
        let complex = self.build()?;
        let face: Vec<VertexLabel> = t.iter().map(|&p| self.labels[p].clone()).collect();
        let link = complex.link(&face)?;
        Ok(link == self.without_positions(t)?.build()?)
    }
}
