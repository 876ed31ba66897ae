//! Worked examples: polygons from the dihedral groups and a chain of braid
//! moves in type A3 running from `I^3` to the associahedron `As^3`.

use serde::Serialize;

use crate::braid::{apply_sequence, braid_path, BraidContext, CaseReport, ChainStep};
use crate::coxeter::{CoxeterSystem, CoxeterType, GroupElement, Word, DEFAULT_WORD_CAP};
use crate::error::{Error, Result};
use crate::simplicial::VertexLabel;
use crate::subword::SubwordDescriptor;

/// Words of the A3 chain with the polytope dual to `Δ(word; w_o)`.
pub const A3_CHAIN: [(&str, &str); 8] = [
    ("123321323", "I^3"),
    ("123323123", "I^3"),
    ("123232123", "I x As^2"),
    ("123231213", "I x As^2"),
    ("123213231", "I x As^2"),
    ("123212321", "P^3"),
    ("123121321", "As^3"),
    ("123123121", "As^3"),
];

/// The braid move `Q = s1 s2`, `Q' = e` in `I2(m)` with `π = w_o`.
pub fn i2_context(system: &CoxeterSystem) -> Result<BraidContext<'_>> {
    BraidContext::new(system, Word::new(vec![0, 1]), Word::empty(), 0, 1, system.longest_element())
}

#[derive(Clone, Debug, Serialize)]
pub struct I2Demo {
    pub m: u32,
    pub report: CaseReport,
    /// `γ_1(Δ1) - γ_1(Δ2)`.
    pub gamma1_gain: Option<i64>,
}

pub fn demo_i2(m: u32) -> Result<I2Demo> {
    if m < 3 {
        return Err(Error::Parse(format!("the polygon demo needs m >= 3, got {m}")));
    }
    let system = CoxeterSystem::of_type(CoxeterType::I2(m))?;
    let report = i2_context(&system)?.classify()?;
    let gamma1_gain = report
        .polynomials
        .as_ref()
        .and_then(|p| p.gamma.as_ref())
        .map(|g| -g.lhs.coeff(1));
    Ok(I2Demo { m, report, gamma1_gain })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainRow {
    pub word: Word,
    pub polytope: &'static str,
    pub f: Vec<i64>,
    /// 1-based positions of the letters that are vertices.
    pub vertices: Vec<usize>,
    pub gamma: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainDemo {
    pub rows: Vec<ChainRow>,
    pub steps: Vec<ChainStep>,
    pub gamma1: Vec<i64>,
}

/// Rows and moves for a sequence of words of the same element, studied through
/// `Δ(word; π)`; consecutive words are joined by shortest braid-move paths.
pub fn run_chain(system: &CoxeterSystem, words: &[(Word, &'static str)], pi: &GroupElement) -> Result<ChainDemo> {
    if words.is_empty() {
        return Ok(ChainDemo { rows: Vec::new(), steps: Vec::new(), gamma1: Vec::new() });
    }
    let mut rows = Vec::new();
    for (word, polytope) in words {
        let d = SubwordDescriptor::new(system, word, pi.clone())?;
        let x = d.build()?;
        let vertices = x
            .vertices()
            .iter()
            .filter_map(|v| match v {
                VertexLabel::QPos(p) => Some(*p),
                _ => None,
            })
            .collect();
        let gamma = if d.is_spherical()? { Some(x.gamma()?.coeffs().to_vec()) } else { None };
        rows.push(ChainRow { word: word.clone(), polytope, f: x.f_vector(), vertices, gamma });
    }
    let mut moves = Vec::new();
    for pair in words.windows(2) {
        let path = braid_path(system, &pair[0].0, &pair[1].0, DEFAULT_WORD_CAP)?.ok_or_else(|| {
            Error::Parse(format!("{} and {} are not related by braid moves", pair[0].0, pair[1].0))
        })?;
        moves.extend(path);
    }
    let steps = apply_sequence(system, &words[0].0, &moves, pi)?;
    let gamma1 = rows.iter().map(|r| r.gamma.as_ref().map_or(0, |g| g.get(1).copied().unwrap_or(0))).collect();
    Ok(ChainDemo { rows, steps, gamma1 })
}

pub fn demo_a3_chain() -> Result<ChainDemo> {
    let system = CoxeterSystem::of_type(CoxeterType::A(3))?;
    let words: Vec<(Word, &'static str)> =
        A3_CHAIN.iter().map(|(w, p)| Ok((Word::parse(w)?, *p))).collect::<Result<_>>()?;
    run_chain(&system, &words, &system.longest_element())
}
