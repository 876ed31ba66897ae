use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use super::label::VertexLabel;
use super::poly::{binomial, GammaPoly, HPoly};
use crate::error::{Error, Result};

/// Maximum number of vertices (facets are `u128` bitsets).
pub const MAX_VERTICES: usize = 128;

/// A face as a sorted list of labels.
pub type Face = Vec<VertexLabel>;
/// A set of faces, not necessarily downward closed.
pub type FaceFamily = BTreeSet<Face>;

/// A finite simplicial complex with labeled vertices.
///
/// The representation is canonical: vertices are sorted and are exactly the
/// union of the facets, facets are the maximal faces stored as sorted
/// bitsets. Derived equality is therefore face-set equality.
///
/// The void complex (no faces at all) has no facets; the complex `{∅}` has the
/// single empty facet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledComplex {
    vertices: Vec<VertexLabel>,
    facets: Vec<u128>,
}

fn bits(mask: u128) -> impl Iterator<Item = usize> {
    (0..MAX_VERTICES).filter(move |&i| mask >> i & 1 == 1)
}

fn maximal(mut masks: Vec<u128>) -> Vec<u128> {
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    masks.dedup();
    let mut kept: Vec<u128> = Vec::with_capacity(masks.len());
    for m in masks {
        if !kept.iter().any(|&k| k & m == m) {
            kept.push(m);
        }
    }
    kept.sort_unstable();
    kept
}

fn normalize(face: &[VertexLabel]) -> Face {
    let mut f = face.to_vec();
    f.sort();
    f.dedup();
    f
}

impl LabeledComplex {
    /// The complex with no faces.
    pub fn void() -> Self {
        LabeledComplex { vertices: Vec::new(), facets: Vec::new() }
    }

    /// The complex `{∅}`.
    pub fn empty_face() -> Self {
        LabeledComplex { vertices: Vec::new(), facets: vec![0] }
    }

    /// The full simplex on the given vertices.
    pub fn simplex(vertices: &[VertexLabel]) -> Result<Self> {
        Self::from_facets([vertices.to_vec()])
    }

    /// Builds the complex generated by the given faces; non-maximal ones are dropped.
    pub fn from_facets<I, F>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[VertexLabel]>,
    {
        let facets: Vec<Face> = facets.into_iter().map(|f| normalize(f.as_ref())).collect();
        let vertices: Vec<VertexLabel> =
            facets.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        if vertices.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices { max: MAX_VERTICES });
        }
        let index = |v: &VertexLabel| vertices.binary_search(v).expect("vertex present");
        let masks = facets.iter().map(|f| f.iter().fold(0u128, |m, v| m | 1 << index(v))).collect();
        Ok(LabeledComplex { facets: maximal(masks), vertices })
    }

    /// Builds the complex generated by a face family (its downward closure).
    pub fn from_faces(faces: &FaceFamily) -> Result<Self> {
        Self::from_facets(faces.iter())
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn vertices(&self) -> &[VertexLabel] {
        &self.vertices
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    fn index_of(&self, v: &VertexLabel) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    fn mask_of(&self, face: &[VertexLabel]) -> Option<u128> {
        face.iter().try_fold(0u128, |m, v| self.index_of(v).map(|i| m | 1 << i))
    }

    fn labels_of(&self, mask: u128) -> Face {
        bits(mask).map(|i| self.vertices[i].clone()).collect()
    }

    /// Facets as sorted label lists, in canonical order.
    pub fn facets(&self) -> Vec<Face> {
        self.facets.iter().map(|&m| self.labels_of(m)).collect()
    }

    /// Facets as sorted vertex indices into [`vertices`](Self::vertices).
    pub fn facet_indices(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&m| bits(m).collect()).collect()
    }

    fn face_masks(&self) -> HashSet<u128> {
        let mut seen = HashSet::new();
        for &f in &self.facets {
            if !seen.insert(f) {
                continue;
            }
            // enumerate submasks of f
            let mut sub = f;
            while sub != 0 {
                sub = (sub - 1) & f;
                seen.insert(sub);
            }
        }
        seen
    }

    /// Every face, including the empty face for non-void complexes.
    pub fn faces(&self) -> FaceFamily {
        self.face_masks().into_iter().map(|m| self.labels_of(m)).collect()
    }

    pub fn contains_face(&self, face: &[VertexLabel]) -> bool {
        match self.mask_of(face) {
            Some(m) => self.facets.iter().any(|&f| f & m == m),
            None => false,
        }
    }

    /// `None` for the void complex, `-1` for `{∅}`.
    pub fn dim(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.count_ones() as isize - 1).max()
    }

    pub fn is_pure(&self) -> bool {
        let mut sizes = self.facets.iter().map(|f| f.count_ones());
        match sizes.next() {
            Some(s) => sizes.all(|t| t == s),
            None => true,
        }
    }

    fn face_mask_checked(&self, face: &[VertexLabel]) -> Result<u128> {
        self.mask_of(face)
            .filter(|&m| self.facets.iter().any(|&f| f & m == m))
            .ok_or_else(|| Error::NotAFace(display_face(face)))
    }

    fn sub_complex(&self, masks: Vec<u128>) -> Self {
        if masks.is_empty() {
            return Self::void();
        }
        let facets = maximal(masks);
        let used = facets.iter().fold(0u128, |a, &f| a | f);
        let kept: Vec<usize> = bits(used).collect();
        let remap = |m: u128| {
            kept.iter().enumerate().fold(0u128, |a, (new, &old)| a | ((m >> old & 1) << new))
        };
        LabeledComplex {
            vertices: kept.iter().map(|&i| self.vertices[i].clone()).collect(),
            facets: facets.into_iter().map(remap).collect::<BTreeSet<_>>().into_iter().collect(),
        }
    }

    /// `Lk(σ) = {τ : τ ∩ σ = ∅, τ ∪ σ ∈ X}`.
    pub fn link(&self, sigma: &[VertexLabel]) -> Result<Self> {
        let s = self.face_mask_checked(sigma)?;
        Ok(self.sub_complex(self.facets.iter().filter(|&&f| f & s == s).map(|f| f & !s).collect()))
    }

    /// `St(σ) = {τ : τ ∪ σ ∈ X}`.
    pub fn star(&self, sigma: &[VertexLabel]) -> Result<Self> {
        let s = self.face_mask_checked(sigma)?;
        Ok(self.sub_complex(self.facets.iter().copied().filter(|&f| f & s == s).collect()))
    }

    /// Faces of the star that do not contain `σ`.
    pub fn boundary_star(&self, sigma: &[VertexLabel]) -> Result<Self> {
        let s = self.face_mask_checked(sigma)?;
        let masks = self
            .facets
            .iter()
            .filter(|&&f| f & s == s)
            .flat_map(|&f| bits(s).map(move |i| f & !(1 << i)))
            .collect();
        Ok(self.sub_complex(masks))
    }

    /// The join `X * Y`; vertex labels must be disjoint.
    pub fn join(&self, other: &Self) -> Result<Self> {
        if let Some(v) = self.vertices.iter().find(|v| other.index_of(v).is_some()) {
            return Err(Error::LabelCollision(v.to_string()));
        }
        let facets: Vec<Face> = self
            .facets()
            .iter()
            .flat_map(|a| other.facets().into_iter().map(move |b| [a.clone(), b].concat()))
            .collect();
        if facets.is_empty() {
            return Ok(Self::void());
        }
        Self::from_facets(facets)
    }

    /// Relabels every vertex; the map must be injective on the vertex set.
    pub fn relabel(&self, map: impl Fn(&VertexLabel) -> VertexLabel) -> Result<Self> {
        let image: BTreeSet<VertexLabel> = self.vertices.iter().map(&map).collect();
        if image.len() != self.vertices.len() {
            return Err(Error::LabelCollision("relabeling is not injective".into()));
        }
        if self.is_void() {
            return Ok(Self::void());
        }
        Self::from_facets(self.facets().iter().map(|f| f.iter().map(&map).collect::<Vec<_>>()))
    }

    /// Edge subdivision along `{s, t}` with new vertex `r`.
    pub fn edge_subdivide(&self, s: &VertexLabel, t: &VertexLabel, r: VertexLabel) -> Result<Self> {
        let eta = [s.clone(), t.clone()];
        if s == t || !self.contains_face(&eta) {
            return Err(Error::NotAnEdge(display_face(&eta)));
        }
        if self.index_of(&r).is_some() {
            return Err(Error::LabelCollision(r.to_string()));
        }
        let mut facets = Vec::with_capacity(self.facets.len() + 4);
        for f in self.facets() {
            if f.contains(s) && f.contains(t) {
                let without = |x: &VertexLabel| {
                    let mut g: Face = f.iter().filter(|v| *v != x).cloned().collect();
                    g.push(r.clone());
                    g
                };
                facets.push(without(t));
                facets.push(without(s));
            } else {
                facets.push(f);
            }
        }
        Self::from_facets(facets)
    }

    /// `k` chained edge subdivisions: the `i`-th along `{r_(i-1), t}` with `r_0 = s`.
    pub fn k_subdivide(&self, s: &VertexLabel, t: &VertexLabel, fresh: &[VertexLabel]) -> Result<Self> {
        let mut current = self.clone();
        let mut prev = s.clone();
        for r in fresh {
            current = current.edge_subdivide(&prev, t, r.clone())?;
            prev = r.clone();
        }
        Ok(current)
    }

    /// Edges of the 1-skeleton as index pairs.
    fn edge_masks(&self) -> Vec<u128> {
        let n = self.vertices.len();
        let mut adj = vec![0u128; n];
        for &f in &self.facets {
            for i in bits(f) {
                adj[i] |= f & !(1 << i);
            }
        }
        adj
    }

    pub fn edges(&self) -> Vec<(VertexLabel, VertexLabel)> {
        let adj = self.edge_masks();
        let mut out = Vec::new();
        for (i, &a) in adj.iter().enumerate() {
            for j in bits(a).filter(|&j| j > i) {
                out.push((self.vertices[i].clone(), self.vertices[j].clone()));
            }
        }
        out
    }

    /// Every clique of the 1-skeleton is a face. The void complex counts as flag.
    pub fn is_flag(&self) -> bool {
        if self.is_void() {
            return true;
        }
        let adj = self.edge_masks();
        let all = if adj.is_empty() { 0 } else { u128::MAX >> (MAX_VERTICES - adj.len()) };
        let mut flag = true;
        bron_kerbosch(&adj, 0, all, 0, &mut |clique| {
            if !self.facets.iter().any(|&f| f & clique == clique) {
                flag = false;
            }
            flag
        });
        flag
    }

    /// `f_0, f_1, ...`; the implicit `f_(-1) = 1` is omitted. Empty for void and `{∅}`.
    pub fn f_vector(&self) -> Vec<i64> {
        let mut f = vec![0i64; self.dim().map_or(0, |d| (d + 1) as usize)];
        for m in self.face_masks() {
            if m != 0 {
                f[m.count_ones() as usize - 1] += 1;
            }
        }
        f
    }

    /// `h_0..h_n` with `n = dim + 1`; `None` for the void complex.
    pub fn h_vector(&self) -> Option<Vec<i64>> {
        self.dim()?;
        Some(h_from_f(&self.f_vector()))
    }

    pub fn h_poly(&self) -> HPoly {
        self.h_vector().map_or_else(HPoly::zero, |h| HPoly::from_h_vector(&h))
    }

    /// `gamma` of a complex with palindromic `h`; zero for the void complex.
    pub fn gamma(&self) -> Result<GammaPoly> {
        match self.h_vector() {
            Some(h) => GammaPoly::from_h_vector(&h),
            None => Ok(GammaPoly::zero()),
        }
    }

    pub fn summary(&self, spherical: bool) -> ComplexSummary {
        let h = self.h_vector();
        let gamma = match (&h, spherical) {
            (Some(h), true) => GammaPoly::from_h_vector(h).ok().map(|g| g.coeffs().to_vec()),
            _ => None,
        };
        ComplexSummary {
            vertices: self.vertices.iter().map(|v| v.to_string()).collect(),
            facets: self.facet_indices(),
            f: self.f_vector(),
            h,
            gamma,
            flag: self.is_flag(),
            spherical,
        }
    }
}

fn bron_kerbosch(adj: &[u128], r: u128, mut p: u128, mut x: u128, report: &mut impl FnMut(u128) -> bool) -> bool {
    if p == 0 && x == 0 {
        return report(r);
    }
    let pivot = bits(p | x).max_by_key(|&u| (adj[u] & p).count_ones()).expect("p or x nonempty");
    for v in bits(p & !adj[pivot]).collect::<Vec<_>>() {
        if !bron_kerbosch(adj, r | 1 << v, p & adj[v], x & adj[v], report) {
            return false;
        }
        p &= !(1 << v);
        x |= 1 << v;
    }
    true
}

/// `h_k = sum_i (-1)^(k-i) C(n-i, k-i) f_(i-1)` with `n = f.len()`.
pub fn h_from_f(f: &[i64]) -> Vec<i64> {
    let n = f.len();
    let fm = |i: usize| if i == 0 { 1 } else { f[i - 1] };
    (0..=n)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(n - i, k - i) * fm(i)
                })
                .sum()
        })
        .collect()
}

/// Inverse of [`h_from_f`]: `f_(i-1) = sum_k C(n-k, i-k) h_k`.
pub fn f_from_h(h: &[i64]) -> Vec<i64> {
    let n = h.len() - 1;
    (1..=n).map(|i| (0..=i).map(|k| binomial(n - k, i - k) * h[k]).sum()).collect()
}

pub(crate) fn display_face(face: &[VertexLabel]) -> String {
    let parts: Vec<String> = face.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

impl fmt::Display for LabeledComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_void() {
            return write!(f, "VOID");
        }
        let parts: Vec<String> = self.facets().iter().map(|x| display_face(x)).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// JSON view of a complex.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexSummary {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<usize>>,
    pub f: Vec<i64>,
    pub h: Option<Vec<i64>>,
    pub gamma: Option<Vec<i64>>,
    pub flag: bool,
    pub spherical: bool,
}

/// Faces of a family grouped by size, for compact diff reports.
pub fn family_difference(a: &FaceFamily, b: &FaceFamily) -> BTreeMap<&'static str, Vec<String>> {
    let show = |x: &FaceFamily, y: &FaceFamily| x.difference(y).map(|f| display_face(f)).collect();
    BTreeMap::from([("only_left", show(a, b)), ("only_right", show(b, a))])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> VertexLabel {
        VertexLabel::QPos(i)
    }

    fn polygon(n: usize) -> LabeledComplex {
        LabeledComplex::from_facets((1..=n).map(|i| vec![v(i), v(i % n + 1)])).unwrap()
    }

    #[test]
    fn void_and_empty_face() {
        let void = LabeledComplex::void();
        assert!(void.faces().is_empty());
        assert_eq!(void.h_vector(), None);
        assert!(void.h_poly().is_zero());
        assert!(void.gamma().unwrap().is_zero());
        assert!(void.is_flag());
        let e = LabeledComplex::empty_face();
        assert_eq!(e.faces().len(), 1);
        assert_eq!(e.h_vector(), Some(vec![1]));
        assert_eq!(e.dim(), Some(-1));
        assert_ne!(void, e);
    }

    #[test]
    fn f_and_h_vectors() {
        let pentagon = polygon(5);
        assert_eq!(pentagon.f_vector(), vec![5, 5]);
        assert_eq!(pentagon.h_vector(), Some(vec![1, 3, 1]));
        assert_eq!(pentagon.gamma().unwrap().coeffs(), &[1, 1]);
        assert_eq!(polygon(4).gamma().unwrap().coeffs(), &[1, 0]);

        // octahedron: facets avoid antipodal pairs (1,2),(3,4),(5,6)
        let mut facets = Vec::new();
        for a in [1, 2] {
            for b in [3, 4] {
                for c in [5, 6] {
                    facets.push(vec![v(a), v(b), v(c)]);
                }
            }
        }
        let octa = LabeledComplex::from_facets(facets).unwrap();
        assert_eq!(octa.f_vector(), vec![6, 12, 8]);
        assert_eq!(octa.h_vector(), Some(vec![1, 3, 3, 1]));

        let point = LabeledComplex::simplex(&[v(1)]).unwrap();
        assert_eq!(point.h_vector(), Some(vec![1, 0]));
    }

    #[test]
    fn h_f_round_trip() {
        for f in [vec![5, 5], vec![6, 12, 8], vec![9, 21, 14], vec![3, 1]] {
            assert_eq!(f_from_h(&h_from_f(&f)), f);
        }
    }

    #[test]
    fn link_and_star() {
        let pentagon = polygon(5);
        assert_eq!(pentagon.link(&[]).unwrap(), pentagon);
        let lk = pentagon.link(&[v(1)]).unwrap();
        assert_eq!(lk, LabeledComplex::from_facets([vec![v(2)], vec![v(5)]]).unwrap());
        let st = pentagon.star(&[v(1)]).unwrap();
        assert_eq!(st, LabeledComplex::from_facets([vec![v(5), v(1)], vec![v(1), v(2)]]).unwrap());
        let bst = pentagon.boundary_star(&[v(1)]).unwrap();
        assert_eq!(bst, lk);
        assert_eq!(pentagon.link(&[v(1), v(2)]).unwrap(), LabeledComplex::empty_face());
        assert!(matches!(pentagon.link(&[v(1), v(3)]), Err(Error::NotAFace(_))));
    }

    #[test]
    fn join_of_points() {
        let a = LabeledComplex::from_facets([vec![v(1)], vec![v(2)]]).unwrap();
        let b = LabeledComplex::from_facets([vec![v(3)], vec![v(4)]]).unwrap();
        assert_eq!(a.join(&b).unwrap(), polygon(4).relabel(|x| match x {
            VertexLabel::QPos(2) => v(3),
            VertexLabel::QPos(3) => v(2),
            other => other.clone(),
        }).unwrap());
        assert!(a.join(&a).is_err());
        assert!(a.join(&LabeledComplex::void()).unwrap().is_void());
        assert_eq!(a.join(&LabeledComplex::empty_face()).unwrap(), a);
    }

    #[test]
    fn subdivisions() {
        let square = polygon(4);
        let r = VertexLabel::fresh("r1");
        let sub = square.edge_subdivide(&v(1), &v(2), r.clone()).unwrap();
        assert_eq!(sub.f_vector(), vec![5, 5]);
        assert!(sub.contains_face(&[v(1), r.clone()]));
        assert!(!sub.contains_face(&[v(1), v(2)]));
        let h_identity = &square.h_poly() + &square.link(&[v(1), v(2)]).unwrap().h_poly().times_alpha_t();
        assert_eq!(sub.h_poly(), h_identity);

        let fresh: Vec<_> = (1..=3).map(|i| VertexLabel::fresh(format!("r{i}"))).collect();
        let seven = square.k_subdivide(&v(1), &v(2), &fresh).unwrap();
        assert_eq!(seven.f_vector(), vec![7, 7]);
        assert_eq!(seven.gamma().unwrap().coeffs(), &[1, 3]);
        assert!(seven.contains_face(&[fresh[2].clone(), v(2)]));

        assert!(matches!(square.edge_subdivide(&v(1), &v(3), r.clone()), Err(Error::NotAnEdge(_))));
        assert!(matches!(square.edge_subdivide(&v(1), &v(2), v(3)), Err(Error::LabelCollision(_))));
    }

    #[test]
    fn flagness() {
        assert!(polygon(4).is_flag());
        assert!(polygon(5).is_flag());
        assert!(!polygon(3).is_flag());
        let sub = polygon(4).edge_subdivide(&v(1), &v(2), VertexLabel::fresh("r")).unwrap();
        assert!(sub.is_flag());
        assert!(LabeledComplex::simplex(&[v(1), v(2), v(3)]).unwrap().is_flag());
    }

    #[test]
    fn summary_json() {
        let s = polygon(5).summary(true);
        let json = serde_json::to_value(&s).unwrap();
        assert_eq!(json["f"], serde_json::json!([5, 5]));
        assert_eq!(json["gamma"], serde_json::json!([1, 1]));
        assert_eq!(json["facets"][0], serde_json::json!([0, 1]));
        assert!(polygon(5).summary(false).gamma.is_none());
    }
}
