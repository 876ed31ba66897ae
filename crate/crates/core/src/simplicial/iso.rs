use std::collections::{BTreeMap, BTreeSet};

use super::complex::LabeledComplex;
use super::label::VertexLabel;

/// A vertex bijection between two complexes, keyed by source label.
pub type Bijection = BTreeMap<VertexLabel, VertexLabel>;

struct Shape {
    facets: Vec<BTreeSet<usize>>,
    adj: Vec<BTreeSet<usize>>,
    // (facet count, degree, sorted sizes of facets through the vertex)
    sig: Vec<(usize, usize, Vec<usize>)>,
}

impl Shape {
    fn of(x: &LabeledComplex) -> Self {
        let n = x.vertices().len();
        let facets: Vec<BTreeSet<usize>> =
            x.facet_indices().into_iter().map(|f| f.into_iter().collect()).collect();
        let mut adj = vec![BTreeSet::new(); n];
        let mut sizes = vec![Vec::new(); n];
        for f in &facets {
            for &a in f {
                sizes[a].push(f.len());
                adj[a].extend(f.iter().copied().filter(|&b| b != a));
            }
        }
        let sig = (0..n)
            .map(|v| {
                sizes[v].sort_unstable();
                (sizes[v].len(), adj[v].len(), sizes[v].clone())
            })
            .collect();
        Shape { facets, adj, sig }
    }
}

/// Searches for a facet-preserving vertex bijection `x -> y` extending `fixed`.
///
/// `fixed` pairs whose source is not a vertex of `x` are ignored when the
/// target is also absent from `y`; otherwise they make the search fail.
pub fn is_isomorphic_constrained(
    x: &LabeledComplex,
    y: &LabeledComplex,
    fixed: &Bijection,
) -> Option<Bijection> {
    let (xv, yv) = (x.vertices(), y.vertices());
    if xv.len() != yv.len() || x.num_facets() != y.num_facets() || x.f_vector() != y.f_vector() {
        return None;
    }
    let (sx, sy) = (Shape::of(x), Shape::of(y));
    let n = xv.len();
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];

    for (a, b) in fixed {
        match (xv.binary_search(a), yv.binary_search(b)) {
            (Ok(i), Ok(j)) => {
                if sx.sig[i] != sy.sig[j] || used[j] || assign[i].is_some_and(|k| k != j) {
                    return None;
                }
                assign[i] = Some(j);
                used[j] = true;
            }
            (Err(_), Err(_)) => {}
            _ => return None,
        }
    }
    // fixed vertices must be mutually consistent too
    let pinned: Vec<usize> = (0..n).filter(|&i| assign[i].is_some()).collect();
    for &a in &pinned {
        for &b in &pinned {
            if sx.adj[a].contains(&b) != sy.adj[assign[a]?].contains(&assign[b]?) {
                return None;
            }
        }
    }

    // most constrained first: high degree, then label order
    let mut order: Vec<usize> = (0..n).filter(|&i| assign[i].is_none()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(sx.adj[i].len()));

    let target: BTreeSet<BTreeSet<usize>> = sy.facets.iter().cloned().collect();
    if search(&sx, &sy, &order, 0, &mut assign, &mut used, &target) {
        Some(
            assign
                .iter()
                .enumerate()
                .map(|(i, j)| (xv[i].clone(), yv[j.expect("complete")].clone()))
                .collect(),
        )
    } else {
        None
    }
}

fn search(
    sx: &Shape,
    sy: &Shape,
    order: &[usize],
    depth: usize,
    assign: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    target: &BTreeSet<BTreeSet<usize>>,
) -> bool {
    let Some(&v) = order.get(depth) else {
        return sx
            .facets
            .iter()
            .all(|f| target.contains(&f.iter().map(|&a| assign[a].expect("complete")).collect()));
    };
    for w in 0..used.len() {
        if used[w] || sx.sig[v] != sy.sig[w] {
            continue;
        }
        let consistent = (0..assign.len()).all(|u| match assign[u] {
            Some(z) => sx.adj[v].contains(&u) == sy.adj[w].contains(&z),
            None => true,
        });
        if !consistent {
            continue;
        }
        assign[v] = Some(w);
        used[w] = true;
        if search(sx, sy, order, depth + 1, assign, used, target) {
            return true;
        }
        assign[v] = None;
        used[w] = false;
    }
    false
}
