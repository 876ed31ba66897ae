use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};

/// Irreducible finite Coxeter types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoxeterType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
}

impl CoxeterType {
    pub fn rank(self) -> usize {
        match self {
            CoxeterType::A(n) | CoxeterType::B(n) | CoxeterType::D(n) => n,
            CoxeterType::E6 => 6,
            CoxeterType::E7 => 7,
            CoxeterType::E8 => 8,
            CoxeterType::F4 | CoxeterType::H4 => 4,
            CoxeterType::H3 => 3,
            CoxeterType::I2(_) => 2,
        }
    }

    /// Diagram edges `(i, j, m_ij)` with `m_ij >= 3`, 0-based, Bourbaki numbering.
    fn edges(self) -> Result<Vec<(usize, usize, u32)>> {
        let path = |n: usize| (0..n.saturating_sub(1)).map(|i| (i, i + 1, 3)).collect::<Vec<_>>();
        Ok(match self {
            CoxeterType::A(n) if n >= 1 => path(n),
            CoxeterType::B(n) if n >= 2 => {
                let mut e = path(n);
                e[n - 2].2 = 4;
                e
            }
            CoxeterType::D(n) if n >= 4 => {
                let mut e = path(n - 1);
                e.push((n - 3, n - 1, 3));
                e
            }
            CoxeterType::E6 | CoxeterType::E7 | CoxeterType::E8 => {
                let n = self.rank();
                let mut e = vec![(0, 2, 3), (1, 3, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1, 3)));
                e
            }
            CoxeterType::F4 => vec![(0, 1, 3), (1, 2, 4), (2, 3, 3)],
            CoxeterType::H3 => vec![(0, 1, 5), (1, 2, 3)],
            CoxeterType::H4 => vec![(0, 1, 5), (1, 2, 3), (2, 3, 3)],
            CoxeterType::I2(m) if m >= 2 => {
                if m == 2 {
                    vec![]
                } else {
                    vec![(0, 1, m)]
                }
            }
            other => return Err(Error::InvalidMatrix(format!("no such type {other:?}"))),
        })
    }

    pub fn matrix(self) -> Result<CoxeterMatrix> {
        let n = self.rank();
        let mut rows = vec![vec![2u32; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        for (i, j, m) in self.edges()? {
            rows[i][j] = m;
            rows[j][i] = m;
        }
        CoxeterMatrix::new(rows)
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterType::A(n) => write!(f, "A{n}"),
            CoxeterType::B(n) => write!(f, "B{n}"),
            CoxeterType::D(n) => write!(f, "D{n}"),
            CoxeterType::E6 => write!(f, "E6"),
            CoxeterType::E7 => write!(f, "E7"),
            CoxeterType::E8 => write!(f, "E8"),
            CoxeterType::F4 => write!(f, "F4"),
            CoxeterType::H3 => write!(f, "H3"),
            CoxeterType::H4 => write!(f, "H4"),
            CoxeterType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

impl FromStr for CoxeterType {
    type Err = Error;

    /// Accepts `A3`, `B4`, `D4`, `E6`..`E8`, `F4`, `H3`, `H4`, `G2`, `I2:5`, `I2(5)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_uppercase();
        let bad = || Error::Parse(format!("unknown group name {s:?}"));
        if let Some(rest) = s.strip_prefix("I2") {
            let m = rest.trim_matches(|c| c == ':' || c == '(' || c == ')');
            let m: u32 = m.parse().map_err(|_| bad())?;
            return Ok(CoxeterType::I2(m));
        }
        let t = match s.as_str() {
            "E6" => CoxeterType::E6,
            "E7" => CoxeterType::E7,
            "E8" => CoxeterType::E8,
            "F4" => CoxeterType::F4,
            "H3" => CoxeterType::H3,
            "H4" => CoxeterType::H4,
            "G2" => CoxeterType::I2(6),
            _ => {
                let (head, rank) = s.split_at(1);
                let n: usize = rank.parse().map_err(|_| bad())?;
                match head {
                    "A" => CoxeterType::A(n),
                    "B" | "C" => CoxeterType::B(n),
                    "D" => CoxeterType::D(n),
                    _ => return Err(bad()),
                }
            }
        };
        t.edges()?;
        Ok(t)
    }
}

/// A symmetric Coxeter matrix of finite type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<u32>,
    components: Vec<(CoxeterType, Vec<usize>)>,
}

impl CoxeterMatrix {
    /// Validates the matrix and checks every diagram component against the
    /// finite-type catalog.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let rank = rows.len();
        if rank == 0 {
            return Err(Error::InvalidMatrix("rank must be positive".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidMatrix(format!("row {} has length {}", i + 1, row.len())));
            }
            if row[i] != 1 {
                return Err(Error::InvalidMatrix(format!("m_{0}{0} must be 1", i + 1)));
            }
            for (j, &m) in row.iter().enumerate() {
                if i != j && m < 2 {
                    return Err(Error::InvalidMatrix(format!(
                        "m_{}{} = {m} must be at least 2",
                        i + 1,
                        j + 1
                    )));
                }
                if rows[j][i] != m {
                    return Err(Error::InvalidMatrix(format!(
                        "not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let entries: Vec<u32> = rows.into_iter().flatten().collect();
        let mut matrix = CoxeterMatrix { rank, entries, components: Vec::new() };
        matrix.components = matrix.classify()?;
        Ok(matrix)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `m_ij` for 0-based generator indices.
    pub fn m(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.rank + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.rank).map(|r| r.to_vec()).collect()
    }

    pub fn is_simply_laced(&self) -> bool {
        self.entries.iter().all(|&m| m <= 3)
    }

    /// Irreducible components with the generators they contain.
    pub fn components(&self) -> &[(CoxeterType, Vec<usize>)] {
        &self.components
    }

    fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank).filter(move |&u| u != v && self.m(u, v) >= 3)
    }

    fn classify(&self) -> Result<Vec<(CoxeterType, Vec<usize>)>> {
        let mut seen = vec![false; self.rank];
        let mut out = Vec::new();
        for start in 0..self.rank {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                for u in self.neighbours(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            let t = self.classify_component(&comp)?;
            out.push((t, comp));
        }
        Ok(out)
    }

    fn classify_component(&self, comp: &[usize]) -> Result<CoxeterType> {
        let n = comp.len();
        let not_finite = || {
            let names: Vec<String> = comp.iter().map(|v| (v + 1).to_string()).collect();
            Error::NotFinite(format!("component {{{}}}", names.join(",")))
        };
        if n == 1 {
            return Ok(CoxeterType::A(1));
        }
        if n == 2 {
            let m = self.m(comp[0], comp[1]);
            return Ok(if m == 3 { CoxeterType::A(2) } else { CoxeterType::I2(m) });
        }
        let edges: Vec<(usize, usize, u32)> = comp
            .iter()
            .flat_map(|&a| comp.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| a < b && self.m(a, b) >= 3)
            .map(|(a, b)| (a, b, self.m(a, b)))
            .collect();
        if edges.len() != n - 1 {
            return Err(not_finite());
        }
        let degree = |v: usize| self.neighbours(v).count();
        let branches: Vec<usize> = comp.iter().copied().filter(|&v| degree(v) >= 3).collect();
        let heavy: Vec<&(usize, usize, u32)> = edges.iter().filter(|e| e.2 >= 4).collect();
        match (heavy.len(), branches.len()) {
            (0, 0) => Ok(CoxeterType::A(n)),
            (0, 1) => {
                let centre = branches[0];
                if degree(centre) != 3 {
                    return Err(not_finite());
                }
                let mut arms: Vec<usize> = self
                    .neighbours(centre)
                    .map(|first| self.arm_length(centre, first))
                    .collect();
                arms.sort_unstable();
                match arms.as_slice() {
                    [1, 1, c] => Ok(CoxeterType::D(c + 3)),
                    [1, 2, 2] => Ok(CoxeterType::E6),
                    [1, 2, 3] => Ok(CoxeterType::E7),
                    [1, 2, 4] => Ok(CoxeterType::E8),
                    _ => Err(not_finite()),
                }
            }
            (1, 0) => {
                let &(a, b, m) = heavy[0];
                let at_end = degree(a) == 1 || degree(b) == 1;
                match m {
                    4 if at_end => Ok(CoxeterType::B(n)),
                    4 if n == 4 => Ok(CoxeterType::F4),
                    5 if at_end && n == 3 => Ok(CoxeterType::H3),
                    5 if at_end && n == 4 => Ok(CoxeterType::H4),
                    _ => Err(not_finite()),
                }
            }
            _ => Err(not_finite()),
        }
    }

    /// Number of nodes on the path starting at `first`, walking away from `from`.
    fn arm_length(&self, from: usize, first: usize) -> usize {
        let (mut prev, mut cur, mut len) = (from, first, 1);
        loop {
            let next: Vec<usize> = self.neighbours(cur).filter(|&u| u != prev).collect();
            match next.as_slice() {
                [u] => {
                    prev = cur;
                    cur = *u;
                    len += 1;
                }
                _ => return len,
            }
        }
    }
}

/// Group description as read from a JSON file: either a named type or an
/// explicit Coxeter matrix.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Matrix {
        matrix: Vec<Vec<u32>>,
    },
    Named {
        #[serde(rename = "type")]
        kind: String,
        #[serde(default)]
        rank: Option<usize>,
        #[serde(default)]
        m: Option<u32>,
    },
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn matrix(&self) -> Result<CoxeterMatrix> {
        match self {
            GroupSpec::Matrix { matrix } => CoxeterMatrix::new(matrix.clone()),
            GroupSpec::Named { kind, rank, m } => {
                let name = match (kind.to_ascii_uppercase().as_str(), rank, m) {
                    ("I2", _, Some(m)) | ("I", _, Some(m)) => format!("I2:{m}"),
                    (k, Some(r), _) if k.len() == 1 => format!("{k}{r}"),
                    (k, _, _) => k.to_string(),
                };
                name.parse::<CoxeterType>()?.matrix()
            }
        }
    }

    /// Resolves a command-line group argument: a path to a JSON spec file, or
    /// a name such as `A3` or `I2:5`.
    pub fn resolve(arg: &str) -> Result<CoxeterMatrix> {
        let path = Path::new(arg);
        if path.is_file() {
            let text = std::fs::read_to_string(path)?;
            GroupSpec::from_json(&text)?.matrix()
        } else {
            arg.parse::<CoxeterType>()?.matrix()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn types_of(m: &CoxeterMatrix) -> Vec<CoxeterType> {
        m.components().iter().map(|(t, _)| *t).collect()
    }

    #[test]
    fn named_types_round_trip_through_classifier() {
        let names = [
            "A1", "A3", "A5", "B2", "B3", "B4", "D4", "D5", "E6", "E7", "E8", "F4", "H3", "H4",
            "I2:5", "G2",
        ];
        for name in names {
            let t: CoxeterType = name.parse().unwrap();
            let m = t.matrix().unwrap();
            assert_eq!(m.rank(), t.rank());
            let got = types_of(&m);
            assert_eq!(got.len(), 1, "{name}");
            let expected = match t {
                CoxeterType::B(2) => CoxeterType::I2(4),
                other => other,
            };
            assert_eq!(got[0], expected, "{name}");
        }
    }

    #[test]
    fn rejects_affine_and_hyperbolic() {
        // affine A2~: triangle
        assert!(matches!(
            CoxeterMatrix::new(vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]]),
            Err(Error::NotFinite(_))
        ));
        // affine C2~: [4,4]
        assert!(matches!(
            CoxeterMatrix::new(vec![vec![1, 4, 2], vec![4, 1, 4], vec![2, 4, 1]]),
            Err(Error::NotFinite(_))
        ));
        // [5,3,3,3]
        let mut rows = vec![vec![2u32; 5]; 5];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        for (i, m) in [(0, 5), (1, 3), (2, 3), (3, 3)] {
            rows[i][i + 1] = m;
            rows[i + 1][i] = m;
        }
        assert!(CoxeterMatrix::new(rows).is_err());
        // [6,3]
        assert!(CoxeterMatrix::new(vec![vec![1, 6, 2], vec![6, 1, 3], vec![2, 3, 1]]).is_err());
    }

    #[test]
    fn rejects_malformed() {
        assert!(CoxeterMatrix::new(vec![vec![1, 3], vec![2, 1]]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![2, 3], vec![3, 1]]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![1, 1], vec![1, 1]]).is_err());
        assert!(CoxeterMatrix::new(vec![]).is_err());
    }

    #[test]
    fn reducible_systems_split_into_components() {
        let m = CoxeterMatrix::new(vec![
            vec![1, 3, 2, 2],
            vec![3, 1, 2, 2],
            vec![2, 2, 1, 5],
            vec![2, 2, 5, 1],
        ])
        .unwrap();
        assert_eq!(types_of(&m), vec![CoxeterType::A(2), CoxeterType::I2(5)]);
        assert!(!m.is_simply_laced());
    }

    #[test]
    fn group_spec_json() {
        let a3 = GroupSpec::from_json(r#"{"type":"A","rank":3}"#).unwrap().matrix().unwrap();
        assert_eq!(a3, CoxeterType::A(3).matrix().unwrap());
        let i25 = GroupSpec::from_json(r#"{"type":"I2","m":5}"#).unwrap().matrix().unwrap();
        assert_eq!(i25.m(0, 1), 5);
        let h3 = GroupSpec::from_json(r#"{"type":"H3"}"#).unwrap().matrix().unwrap();
        assert_eq!(h3.m(0, 1), 5);
        let raw = GroupSpec::from_json(r#"{"matrix":[[1,3],[3,1]]}"#).unwrap().matrix().unwrap();
        assert_eq!(raw, CoxeterType::A(2).matrix().unwrap());
    }
}
