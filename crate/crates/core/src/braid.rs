//! The effect of a single braid move on subword complexes.
//!
//! A context fixes words `Q`, `Q'`, generators `i != j` and a target `π`. With
//! `m = m_ij` it compares `Δ1 = Δ(Q w_ij Q'; π)` and `Δ2 = Δ(Q w_ji Q'; π)`,
//! where `w_ij = s_i s_j s_i ...` has `m` letters. Window letters are labeled
//! `f_l` on the left and `g_l` on the right; `f_1 = g_m` and `f_m = g_1`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::coxeter::{CoxeterSystem, GroupElement, Word};
use crate::error::{Error, Result};
use crate::simplicial::{
    is_isomorphic_constrained, Bijection, ComplexSummary, Face, FaceFamily, GammaPoly, HPoly,
    LabeledComplex, VertexLabel,
};
use crate::subword::SubwordDescriptor;

/// Which side of the braid move: `Q1 = Q w_ij Q'` or `Q2 = Q w_ji Q'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// `A_k`: `Q1^k` contains no reduced expression of `π`; `B_k` likewise for `Q2^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    A,
    B,
}

/// The four outcomes of a braid move, plus contexts outside the theorems' reach.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    Isomorphic,
    LeftIsSubdivisionOfRight,
    RightIsSubdivisionOfLeft,
    CommonRefinement,
    Unsupported,
}

impl Case {
    pub fn number(self) -> Option<u8> {
        match self {
            Case::Isomorphic => Some(1),
            Case::LeftIsSubdivisionOfRight => Some(2),
            Case::RightIsSubdivisionOfLeft => Some(3),
            Case::CommonRefinement => Some(4),
            Case::Unsupported => None,
        }
    }

    /// The case seen from the other side of the move.
    pub fn mirrored(self) -> Case {
        match self {
            Case::LeftIsSubdivisionOfRight => Case::RightIsSubdivisionOfLeft,
            Case::RightIsSubdivisionOfLeft => Case::LeftIsSubdivisionOfRight,
            other => other,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.number() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "unsupported"),
        }
    }
}

impl Serialize for Case {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.number() {
            Some(n) => s.serialize_u8(n),
            None => s.serialize_str("unsupported"),
        }
    }
}

/// The four face families attached to the window.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Subfamilies {
    /// Faces of `Δ1` through an internal `f_l`.
    pub int1: FaceFamily,
    /// Faces of `Δ1` containing `F = {f_1, f_m}`.
    pub f1: FaceFamily,
    /// Faces of `Δ2` through an internal `g_l`.
    pub int2: FaceFamily,
    /// Faces of `Δ2` containing `G = {g_1, g_m}`.
    pub g2: FaceFamily,
}

#[derive(Clone, Debug)]
pub struct BraidContext<'a> {
    system: &'a CoxeterSystem,
    q: Word,
    q_prime: Word,
    i: usize,
    j: usize,
    pi: GroupElement,
    m: usize,
}

fn extend(base: &FaceFamily, extra: &[VertexLabel]) -> FaceFamily {
    base.iter()
        .map(|f| {
            let mut g: Face = f.iter().chain(extra).cloned().collect();
            g.sort();
            g.dedup();
            g
        })
        .collect()
}

fn faces_of(x: &LabeledComplex) -> FaceFamily {
    x.faces()
}

fn union(parts: &[&FaceFamily]) -> FaceFamily {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

fn minus(a: &FaceFamily, b: &FaceFamily) -> FaceFamily {
    a.difference(b).cloned().collect()
}

fn diff_note(name: &str, a: &FaceFamily, b: &FaceFamily) -> String {
    let show = |x: &FaceFamily, y: &FaceFamily| {
        x.difference(y)
            .take(4)
            .map(|f| {
                let parts: Vec<String> = f.iter().map(|v| v.to_string()).collect();
                format!("{{{}}}", parts.join(","))
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!("{name}: only left [{}], only right [{}]", show(a, b), show(b, a))
}

impl<'a> BraidContext<'a> {
    /// `i` and `j` are 0-based generator indices.
    pub fn new(
        system: &'a CoxeterSystem,
        q: Word,
        q_prime: Word,
        i: usize,
        j: usize,
        pi: GroupElement,
    ) -> Result<Self> {
        q.check_rank(system.rank())?;
        q_prime.check_rank(system.rank())?;
        Word::new(vec![i, j]).check_rank(system.rank())?;
        if i == j {
            return Err(Error::WindowMismatch { pos: q.len(), reason: "i and j coincide".into() });
        }
        let m = system.m(i, j) as usize;
        Ok(BraidContext { system, q, q_prime, i, j, pi, m })
    }

    /// The context of the braid move at the 0-based position `pos` of `word`.
    pub fn at(system: &'a CoxeterSystem, word: &Word, pos: usize, pi: GroupElement) -> Result<Self> {
        let letters = word.letters();
        if pos + 1 >= letters.len() {
            return Err(Error::WindowMismatch { pos, reason: "no window at this position".into() });
        }
        let (i, j) = (letters[pos], letters[pos + 1]);
        // validates the window
        system.apply_braid_move(word, pos, i, j)?;
        let m = system.m(i, j) as usize;
        Self::new(
            system,
            Word::new(letters[..pos].to_vec()),
            Word::new(letters[pos + m..].to_vec()),
            i,
            j,
            pi,
        )
    }

    /// The same move read in the opposite direction.
    pub fn mirrored(&self) -> Self {
        BraidContext { i: self.j, j: self.i, ..self.clone() }
    }

    pub fn system(&self) -> &'a CoxeterSystem {
        self.system
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> &Word {
        &self.q
    }

    pub fn q_prime(&self) -> &Word {
        &self.q_prime
    }

    pub fn generators(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn pi(&self) -> &GroupElement {
        &self.pi
    }

    /// `w^k`: the alternation starting with the side's first generator, of length `m - k`.
    pub fn window_word(&self, side: Side, k: usize) -> Result<Word> {
        if k > self.m {
            return Err(Error::KOutOfRange { k, m: self.m });
        }
        let (a, b) = match side {
            Side::Left => (self.i, self.j),
            Side::Right => (self.j, self.i),
        };
        Ok(Word::new(CoxeterSystem::alternating(a, b, self.m - k)))
    }

    /// `Q1^k` or `Q2^k`.
    pub fn assembled(&self, side: Side, k: usize) -> Result<Word> {
        Ok(self.q.concat(&self.window_word(side, k)?).concat(&self.q_prime))
    }

    pub fn condition(&self, which: Condition, k: usize) -> Result<bool> {
        let side = match which {
            Condition::A => Side::Left,
            Condition::B => Side::Right,
        };
        Ok(!self.system.contains_reduced(&self.assembled(side, k)?, &self.pi)?)
    }

    fn window_label(&self, side: Side, l: usize) -> VertexLabel {
        match side {
            Side::Left => VertexLabel::f(l, self.m),
            Side::Right => VertexLabel::g(l, self.m),
        }
    }

    /// `F = {f_1, f_m}` or `G = {g_1, g_m}`.
    pub fn end_edge(&self, side: Side) -> [VertexLabel; 2] {
        [self.window_label(side, 1), self.window_label(side, self.m)]
    }

    /// The labeled descriptor of `Q1^0` or `Q2^0`.
    pub fn descriptor(&self, side: Side) -> Result<SubwordDescriptor<'a>> {
        let word = self.assembled(side, 0)?;
        let labels = (1..=self.q.len())
            .map(VertexLabel::QPos)
            .chain((1..=self.m).map(|l| self.window_label(side, l)))
            .chain((1..=self.q_prime.len()).map(VertexLabel::QPrimePos))
            .collect();
        SubwordDescriptor::with_labels(self.system, word.into_letters(), labels, self.pi.clone())
    }

    /// The descriptor with window letters `l` (1-based) removed.
    fn descriptor_without(&self, side: Side, window: &[usize]) -> Result<SubwordDescriptor<'a>> {
        let offset = self.q.len();
        let positions: Vec<usize> = window.iter().map(|l| offset + l - 1).collect();
        self.descriptor(side)?.without_positions(&positions)
    }

    pub fn build_sides(&self) -> Result<(LabeledComplex, LabeledComplex)> {
        Ok((self.descriptor(Side::Left)?.build()?, self.descriptor(Side::Right)?.build()?))
    }

    /// `Δ(Q1^2; π)` and `Δ(Q2^2; π)`, labeled as the links of `{f_1, f_2}` and `{g_1, g_2}`.
    pub fn shortened_sides(&self) -> Result<(LabeledComplex, LabeledComplex)> {
        Ok((
            self.descriptor_without(Side::Left, &[1, 2])?.build()?,
            self.descriptor_without(Side::Right, &[1, 2])?.build()?,
        ))
    }

    fn int_family(&self, side: Side) -> Result<FaceFamily> {
        // edge_links[l] is the image of Δ(Q^2; π) in the link of {w_l, w_(l+1)}
        let mut edge_links = BTreeMap::new();
        for l in 1..self.m {
            edge_links.insert(l, faces_of(&self.descriptor_without(side, &[l, l + 1])?.build()?));
        }
        let mut out = FaceFamily::new();
        for l in 2..self.m {
            let (wl, wn) = (self.window_label(side, l), self.window_label(side, l + 1));
            out.extend(extend(&edge_links[&l], &[wl.clone(), wn]));
            out.extend(extend(&edge_links[&l], std::slice::from_ref(&wl)));
            out.extend(extend(&edge_links[&(l - 1)], std::slice::from_ref(&wl)));
            // faces through {w_(l-1), w_l}; for l = 2 no other term covers them
            out.extend(extend(&edge_links[&(l - 1)], &[self.window_label(side, l - 1), wl]));
        }
        Ok(out)
    }

    fn end_family(&self, side: Side) -> Result<FaceFamily> {
        let link = self.descriptor_without(side, &[1, self.m])?.build()?;
        Ok(extend(&faces_of(&link), &self.end_edge(side)))
    }

    /// The four families from their defining displays, via link re-addressing.
    pub fn subfamilies(&self) -> Result<Subfamilies> {
        Ok(Subfamilies {
            int1: self.int_family(Side::Left)?,
            f1: self.end_family(Side::Left)?,
            int2: self.int_family(Side::Right)?,
            g2: self.end_family(Side::Right)?,
        })
    }

    /// `Δ minus (Δ_int ∪ Δ_F)` for the side, from the displays.
    pub fn tilde(&self, side: Side) -> Result<FaceFamily> {
        let (d1, d2) = self.build_sides()?;
        let fam = self.subfamilies()?;
        Ok(match side {
            Side::Left => minus(&faces_of(&d1), &union(&[&fam.int1, &fam.f1])),
            Side::Right => minus(&faces_of(&d2), &union(&[&fam.int2, &fam.g2])),
        })
    }

    /// Faces of the side's complex avoiding `F` (resp. `G`) and all internal letters.
    pub fn tilde_by_filter(&self, side: Side) -> Result<FaceFamily> {
        let complex = self.descriptor(side)?.build()?;
        let [a, b] = self.end_edge(side);
        Ok(faces_of(&complex)
            .into_iter()
            .filter(|f| !(f.contains(&a) && f.contains(&b)) && !f.iter().any(|v| v.is_internal()))
            .collect())
    }

    /// The explicit vertex map `f_1 -> g_m`, `f_m -> g_1`, identity on `Q` and `Q'`.
    pub fn widetilde_map(&self, x: &LabeledComplex) -> Bijection {
        x.vertices()
            .iter()
            .filter(|v| !v.is_internal())
            .map(|v| {
                let image = match *v {
                    VertexLabel::WindowF { l, m } if l == 1 => VertexLabel::g(m, m),
                    VertexLabel::WindowF { l, m } if l == m => VertexLabel::g(1, m),
                    ref other => other.clone(),
                };
                (v.clone(), image)
            })
            .collect()
    }

    /// Checks the structural identities relating `Δ1`, `Δ2` and the four families.
    pub fn verify_decomposition(&self) -> Result<DecompositionReport> {
        let (d1, d2) = self.build_sides()?;
        let (faces1, faces2) = (faces_of(&d1), faces_of(&d2));
        let fam = self.subfamilies()?;
        let tilde1 = minus(&faces1, &union(&[&fam.int1, &fam.f1]));
        let tilde2 = minus(&faces2, &union(&[&fam.int2, &fam.g2]));
        let mut notes = Vec::new();
        let mut check = |name: &str, a: &FaceFamily, b: &FaceFamily| {
            let ok = a == b;
            if !ok {
                notes.push(diff_note(name, a, b));
            }
            ok
        };

        // the explicit map is the identity on labels once f_1 = g_m, f_m = g_1
        let mapped: FaceFamily = tilde1
            .iter()
            .map(|f| {
                let map = self.widetilde_map(&d1);
                let mut g: Face = f.iter().map(|v| map.get(v).cloned().unwrap_or(v.clone())).collect();
                g.sort();
                g
            })
            .collect();
        let widetilde_iso = check("widetilde_iso", &mapped, &tilde2);
        let widetilde_sense = check("widetilde_sense_left", &tilde1, &self.tilde_by_filter(Side::Left)?)
            & check("widetilde_sense_right", &tilde2, &self.tilde_by_filter(Side::Right)?);

        let star_f: FaceFamily = faces1
            .iter()
            .filter(|f| self.end_edge(Side::Left).iter().all(|v| f.contains(v)))
            .cloned()
            .collect();
        let star_g: FaceFamily = faces2
            .iter()
            .filter(|f| self.end_edge(Side::Right).iter().all(|v| f.contains(v)))
            .cloned()
            .collect();
        let through_internal = |x: &FaceFamily| -> FaceFamily {
            x.iter().filter(|f| f.iter().any(|v| v.is_internal())).cloned().collect()
        };
        let families_are_stars = check("delta_1F_star", &fam.f1, &star_f)
            & check("delta_2G_star", &fam.g2, &star_g)
            & check("delta_1int_star", &fam.int1, &through_internal(&faces1))
            & check("delta_2int_star", &fam.int2, &through_internal(&faces2));

        let right_parts = union(&[&fam.int2, &fam.g2]);
        let left_parts = union(&[&fam.int1, &fam.f1]);
        let delta2iso = check("delta2iso", &faces2, &union(&[&tilde1, &right_parts]))
            & tilde1.is_disjoint(&right_parts);
        let delta1iso = check("delta1iso", &faces1, &union(&[&tilde2, &left_parts]))
            & tilde2.is_disjoint(&left_parts);

        let subdivident_union = check(
            "subdivident_union",
            &union(&[&faces1, &right_parts]),
            &union(&[&faces2, &left_parts]),
        );

        let t1 = union(&[&minus(&faces1, &fam.f1), &fam.int2]);
        let t2 = union(&[&tilde1, &fam.int1, &fam.int2]);
        let t3 = union(&[&tilde2, &fam.int1, &fam.int2]);
        let t4 = union(&[&minus(&faces2, &fam.g2), &fam.int1]);
        let subdivident_chain = check("subdivident_chain_1_2", &t1, &t2)
            & check("subdivident_chain_2_3", &t2, &t3)
            & check("subdivident_chain_3_4", &t3, &t4);

        let link_fl_gl = self.check_link_fl_gl(&d1, Side::Left, &mut notes)?
            & self.check_link_fl_gl(&d2, Side::Right, &mut notes)?;

        Ok(DecompositionReport {
            widetilde_iso,
            widetilde_sense,
            families_are_stars,
            delta2iso,
            delta1iso,
            subdivident_union,
            subdivident_chain,
            link_fl_gl,
            notes,
        })
    }

    // Lk({w_l}) = (Lk({w_(l-1), w_l}) * {w_(l-1)}) ∪ (Lk({w_l, w_(l+1)}) * {w_(l+1)})
    fn check_link_fl_gl(&self, x: &LabeledComplex, side: Side, notes: &mut Vec<String>) -> Result<bool> {
        let mut ok = true;
        for l in 2..self.m {
            let (prev, cur, next) =
                (self.window_label(side, l - 1), self.window_label(side, l), self.window_label(side, l + 1));
            let link = |face: &[VertexLabel]| -> Result<FaceFamily> {
                if x.contains_face(face) {
                    Ok(faces_of(&x.link(face)?))
                } else {
                    Ok(FaceFamily::new())
                }
            };
            let lhs = link(std::slice::from_ref(&cur))?;
            let left = link(&[prev.clone(), cur.clone()])?;
            let right = link(&[cur.clone(), next.clone()])?;
            let cone = |base: &FaceFamily, apex: &VertexLabel| union(&[base, &extend(base, std::slice::from_ref(apex))]);
            let rhs = union(&[&cone(&left, &prev), &cone(&right, &next)]);
            if lhs != rhs {
                ok = false;
                notes.push(diff_note(&format!("link_{cur}"), &lhs, &rhs));
            }
        }
        Ok(ok)
    }

    /// Lemma check: for `m > 3` under `A_3` and `B_3`, no edge `{w_k, w_l}` with
    /// `w_k` internal and `|k - l| != 1`, on both sides. Also returns whether the
    /// two parts of each internal link meet only away from `{w_(l-1), w_(l+1)}`.
    pub fn check_a3b3_edges(&self) -> Result<(bool, bool)> {
        if self.m <= 3 {
            return Err(Error::Hypothesis(format!("needs m > 3 (m = {})", self.m)));
        }
        let (a3, b3) = (self.condition(Condition::A, 3)?, self.condition(Condition::B, 3)?);
        if !(a3 && b3) {
            return Err(Error::Hypothesis(format!(
                "needs m > 3 with A3 and B3 (m = {}, A3 = {a3}, B3 = {b3})",
                self.m
            )));
        }
        let (d1, d2) = self.build_sides()?;
        let mut edges_ok = true;
        let mut disjoint = true;
        for (x, side) in [(&d1, Side::Left), (&d2, Side::Right)] {
            for k in 2..self.m {
                for l in 1..=self.m {
                    if l != k && k.abs_diff(l) != 1 {
                        let e = [self.window_label(side, k), self.window_label(side, l)];
                        edges_ok &= !x.contains_face(&e);
                    }
                }
                let t = [
                    self.window_label(side, k - 1),
                    self.window_label(side, k),
                    self.window_label(side, k + 1),
                ];
                disjoint &= !x.contains_face(&t);
            }
        }
        Ok((edges_ok, disjoint))
    }

    /// `Lemma A2B2` in its stated form (`A_2 ⇔ F ∉ Δ1`, `B_2 ⇔ G ∉ Δ2`) and in the
    /// form used by the case analysis (`A_2 ⇔ G ∉ Δ2`, `B_2 ⇔ F ∉ Δ1`).
    pub fn check_a2b2(&self) -> Result<(bool, bool)> {
        let (d1, d2) = self.build_sides()?;
        let a2 = self.condition(Condition::A, 2)?;
        let b2 = self.condition(Condition::B, 2)?;
        let f_in = d1.contains_face(&self.end_edge(Side::Left));
        let g_in = d2.contains_face(&self.end_edge(Side::Right));
        Ok(((a2 == !f_in) && (b2 == !g_in), (a2 == !g_in) && (b2 == !f_in)))
    }

    /// `A_k ⇒ A_l ∧ B_l` and `B_k ⇒ A_l ∧ B_l` for all `k < l`.
    pub fn check_monotonicity(&self) -> Result<bool> {
        let a: Vec<bool> = (0..=self.m).map(|k| self.condition(Condition::A, k)).collect::<Result<_>>()?;
        let b: Vec<bool> = (0..=self.m).map(|k| self.condition(Condition::B, k)).collect::<Result<_>>()?;
        Ok((0..=self.m).all(|k| {
            (k + 1..=self.m).all(|l| (!a[k] || (a[l] && b[l])) && (!b[k] || (a[l] && b[l])))
        }))
    }

    /// Fresh labels for subdividing one side along its end edge: the other
    /// side's internal letters, ordered along the chain.
    fn subdivision_labels(&self, side: Side) -> Vec<VertexLabel> {
        let other = match side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        };
        (1..=self.m - 2).map(|i| self.window_label(other, self.m - i)).collect()
    }

    /// The `(m - 2)`-subdivision of the side's complex along its end edge.
    pub fn subdivide_side(&self, side: Side, x: &LabeledComplex) -> Result<LabeledComplex> {
        let [s, t] = self.end_edge(side);
        x.k_subdivide(&s, &t, &self.subdivision_labels(side))
    }

    fn witness(&self, target: &LabeledComplex, candidate: &LabeledComplex, description: String) -> Witness {
        if target == candidate {
            let identity = target.vertices().iter().map(|v| (v.clone(), v.clone())).collect();
            return Witness::new(description, true, true, Some(identity));
        }
        let map = is_isomorphic_constrained(candidate, target, &Bijection::new());
        Witness::new(description, map.is_some(), false, map)
    }

    pub fn classify(&self) -> Result<CaseReport> {
        let conditions = Conditions {
            a2: self.condition(Condition::A, 2)?,
            b2: self.condition(Condition::B, 2)?,
            a3: self.condition(Condition::A, 3.min(self.m))?,
            b3: self.condition(Condition::B, 3.min(self.m))?,
        };
        let (d1, d2) = self.build_sides()?;
        let case = if self.m == 2 {
            // commuting letters: both sides agree on the shared labels
            Case::Isomorphic
        } else if self.m > 3 && !(conditions.a3 && conditions.b3) {
            Case::Unsupported
        } else {
            match (conditions.a2, conditions.b2) {
                (true, true) => Case::Isomorphic,
                (false, true) => Case::LeftIsSubdivisionOfRight,
                (true, false) => Case::RightIsSubdivisionOfLeft,
                (false, false) => Case::CommonRefinement,
            }
        };
        let k = self.m - 2;
        let witness = match case {
            Case::Isomorphic => Some(self.witness(&d2, &d1, "Δ1 ≅ Δ2".into())),
            Case::LeftIsSubdivisionOfRight => {
                let sub = self.subdivide_side(Side::Right, &d2)?;
                Some(self.witness(&d1, &sub, format!("Δ1 = Sub_G^({k})(Δ2)")))
            }
            Case::RightIsSubdivisionOfLeft => {
                let sub = self.subdivide_side(Side::Left, &d1)?;
                Some(self.witness(&d2, &sub, format!("Δ2 = Sub_F^({k})(Δ1)")))
            }
            Case::CommonRefinement => {
                let sub1 = self.subdivide_side(Side::Left, &d1)?;
                let sub2 = self.subdivide_side(Side::Right, &d2)?;
                let mut w = self.witness(&sub2, &sub1, format!("Sub_F^({k})(Δ1) = Sub_G^({k})(Δ2)"));
                let fam = self.subfamilies()?;
                let display = union(&[&minus(&faces_of(&d1), &fam.f1), &fam.int2]);
                w.common_refinement_matches_display = Some(display == faces_of(&sub1));
                Some(w)
            }
            Case::Unsupported => None,
        };
        let spherical1 = self.descriptor(Side::Left)?.is_spherical()?;
        let spherical2 = self.descriptor(Side::Right)?.is_spherical()?;
        let polynomials = match self.polynomial_delta() {
            Ok(p) => Some(p),
            Err(Error::Hypothesis(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(CaseReport {
            case,
            i: self.i + 1,
            j: self.j + 1,
            m: self.m,
            q: self.q.clone(),
            q_prime: self.q_prime.clone(),
            conditions,
            delta1: d1.summary(spherical1),
            delta2: d2.summary(spherical2),
            witness,
            polynomials,
        })
    }

    /// Both sides of `H(Δ2) - H(Δ1) = (m - 2) αt (H(Δ(Q2^2)) - H(Δ(Q1^2)))` and the
    /// gamma analogue when both complexes are spherical. Also accepts `m = 2`,
    /// where both sides vanish.
    pub fn polynomial_delta(&self) -> Result<PolynomialDelta> {
        let eligible = self.m <= 3
            || (self.condition(Condition::A, 3)? && self.condition(Condition::B, 3)?);
        if !eligible {
            return Err(Error::Hypothesis(format!("m = {} needs A3 and B3", self.m)));
        }
        let (d1, d2) = self.build_sides()?;
        let (s1, s2) = self.shortened_sides()?;
        let k = self.m as i64 - 2;
        let lhs = &d2.h_poly() - &d1.h_poly();
        let rhs = (&s2.h_poly() - &s1.h_poly()).times_alpha_t().scale(k);
        let spherical =
            self.descriptor(Side::Left)?.is_spherical()? && self.descriptor(Side::Right)?.is_spherical()?;
        let gamma = if spherical {
            let g = |x: &LabeledComplex| x.gamma();
            match (g(&d1), g(&d2), g(&s1), g(&s2)) {
                (Ok(g1), Ok(g2), Ok(t1), Ok(t2)) => {
                    let lhs = &g2 - &g1;
                    let rhs = (&t2 - &t1).times_tau().scale(k);
                    Some(GammaDelta { holds: lhs == rhs, lhs, rhs })
                }
                _ => None,
            }
        } else {
            None
        };
        Ok(PolynomialDelta { holds: lhs == rhs, lhs, rhs, gamma })
    }
}

/// Outcomes of the structural identity checks.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    /// The explicit map `f_1 -> g_m`, `f_m -> g_1` carries `Δ1~` onto `Δ2~`.
    pub widetilde_iso: bool,
    /// `Δ~` from the displays equals the filtered subcomplex, on both sides.
    pub widetilde_sense: bool,
    /// `Δ_1F`, `Δ_2G` are the faces containing `F`, `G`; `Δ_1int`, `Δ_2int` the
    /// faces through an internal letter.
    pub families_are_stars: bool,
    /// `Δ2 = Δ1~ ⊔ (Δ_2int ∪ Δ_2G)`.
    pub delta2iso: bool,
    /// `Δ1 = Δ2~ ⊔ (Δ_1int ∪ Δ_1F)`.
    pub delta1iso: bool,
    /// `Δ1 ∪ Δ_2int ∪ Δ_2G = Δ2 ∪ Δ_1int ∪ Δ_1F`.
    pub subdivident_union: bool,
    /// `(Δ1 \ Δ_1F) ∪ Δ_2int = Δ1~ ∪ Δ_1int ∪ Δ_2int = Δ2~ ∪ Δ_1int ∪ Δ_2int = (Δ2 \ Δ_2G) ∪ Δ_1int`.
    pub subdivident_chain: bool,
    /// Links of internal window letters split into the two joins.
    pub link_fl_gl: bool,
    pub notes: Vec<String>,
}

impl DecompositionReport {
    pub fn all_hold(&self) -> bool {
        self.widetilde_iso
            && self.widetilde_sense
            && self.families_are_stars
            && self.delta2iso
            && self.delta1iso
            && self.subdivident_union
            && self.subdivident_chain
            && self.link_fl_gl
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Conditions {
    pub a2: bool,
    pub b2: bool,
    pub a3: bool,
    pub b3: bool,
}

/// Evidence for a case verdict.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub description: String,
    pub verified: bool,
    /// The complexes agree as face sets on the shared labels, not just up to isomorphism.
    pub literal: bool,
    pub bijection: Option<Vec<(String, String)>>,
    /// Case 4 only: whether `(Δ1 \ Δ_1F) ∪ Δ_2int` is the common refinement.
    pub common_refinement_matches_display: Option<bool>,
}

impl Witness {
    fn new(description: String, verified: bool, literal: bool, map: Option<Bijection>) -> Self {
        Witness {
            description,
            verified,
            literal,
            bijection: map.map(|m| m.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()),
            common_refinement_matches_display: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaDelta {
    pub lhs: GammaPoly,
    pub rhs: GammaPoly,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolynomialDelta {
    pub lhs: HPoly,
    pub rhs: HPoly,
    pub holds: bool,
    pub gamma: Option<GammaDelta>,
}

/// The classification of one braid move.
#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: Case,
    pub i: usize,
    pub j: usize,
    pub m: usize,
    #[serde(rename = "Q")]
    pub q: Word,
    #[serde(rename = "Qprime")]
    pub q_prime: Word,
    pub conditions: Conditions,
    pub delta1: ComplexSummary,
    pub delta2: ComplexSummary,
    pub witness: Option<Witness>,
    pub polynomials: Option<PolynomialDelta>,
}

impl CaseReport {
    /// A verdict other than `Unsupported` whose witness checked out.
    pub fn is_verified(&self) -> bool {
        self.witness.as_ref().is_some_and(|w| w.verified)
    }
}

/// One braid move of a sequence together with its classification.
#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub before: Word,
    pub after: Word,
    /// 1-based position of the window.
    pub position: usize,
    pub report: CaseReport,
}

/// Applies braid moves `(pos, i, j)` (0-based) in order, classifying each.
pub fn apply_sequence(
    system: &CoxeterSystem,
    start: &Word,
    moves: &[(usize, usize, usize)],
    pi: &GroupElement,
) -> Result<Vec<ChainStep>> {
    let mut word = start.clone();
    let mut steps = Vec::with_capacity(moves.len());
    for &(pos, i, j) in moves {
        let after = system.apply_braid_move(&word, pos, i, j)?;
        let report = BraidContext::at(system, &word, pos, pi.clone())?.classify()?;
        steps.push(ChainStep { before: word, after: after.clone(), position: pos + 1, report });
        word = after;
    }
    Ok(steps)
}

/// Shortest braid-move path from `from` to `to`, by breadth-first search.
pub fn braid_path(
    system: &CoxeterSystem,
    from: &Word,
    to: &Word,
    cap: usize,
) -> Result<Option<Vec<(usize, usize, usize)>>> {
    use std::collections::{HashMap, VecDeque};
    let mut parent: HashMap<Word, (Word, (usize, usize, usize))> = HashMap::new();
    let mut queue = VecDeque::from([from.clone()]);
    let mut seen = std::collections::HashSet::from([from.clone()]);
    while let Some(w) = queue.pop_front() {
        if &w == to {
            let mut path = Vec::new();
            let mut cur = w;
            while let Some((prev, mv)) = parent.get(&cur) {
                path.push(*mv);
                cur = prev.clone();
            }
            path.reverse();
            return Ok(Some(path));
        }
        for mv in system.braid_moves(&w) {
            let next = system.apply_braid_move(&w, mv.0, mv.1, mv.2)?;
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
                parent.insert(next.clone(), (w.clone(), mv));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}
