use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Serialize, Serializer};

/// Vertex labels of subword complexes and their subdivisions.
///
/// Positions are 1-based. Window letters carry the window length `m`; the
/// endpoints are identified across the two sides of a braid move, so
/// `WindowF { l: 1, m }` equals `WindowG { l: m, m }` and `WindowF { l: m, m }`
/// equals `WindowG { l: 1, m }` (including for `Hash` and `Ord`).
#[derive(Clone, Debug)]
pub enum VertexLabel {
    QPos(usize),
    WindowF { l: usize, m: usize },
    WindowG { l: usize, m: usize },
    QPrimePos(usize),
    Fresh(String),
}

#[derive(PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Key<'a> {
    Q(usize),
    F(usize, usize),
    G(usize, usize),
    QPrime(usize),
    Fresh(&'a str),
}

impl VertexLabel {
    pub fn f(l: usize, m: usize) -> Self {
        VertexLabel::WindowF { l, m }
    }

    pub fn g(l: usize, m: usize) -> Self {
        VertexLabel::WindowG { l, m }
    }

    pub fn fresh(name: impl Into<String>) -> Self {
        VertexLabel::Fresh(name.into())
    }

    fn key(&self) -> Key<'_> {
        match *self {
            VertexLabel::QPos(p) => Key::Q(p),
            VertexLabel::WindowF { l, m } => Key::F(l, m),
            VertexLabel::WindowG { l, m } if l == 1 => Key::F(m, m),
            VertexLabel::WindowG { l, m } if l == m => Key::F(1, m),
            VertexLabel::WindowG { l, m } => Key::G(l, m),
            VertexLabel::QPrimePos(p) => Key::QPrime(p),
            VertexLabel::Fresh(ref s) => Key::Fresh(s),
        }
    }

    /// Window letters strictly inside the window (`1 < l < m`).
    pub fn is_internal(&self) -> bool {
        match *self {
            VertexLabel::WindowF { l, m } | VertexLabel::WindowG { l, m } => l > 1 && l < m,
            _ => false,
        }
    }
}

impl PartialEq for VertexLabel {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for VertexLabel {}

impl PartialOrd for VertexLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl Hash for VertexLabel {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.key() {
            Key::Q(p) => write!(f, "q{p}"),
            Key::F(1, m) => write!(f, "f1|g{m}"),
            Key::F(l, m) if l == m => write!(f, "f{m}|g1"),
            Key::F(l, _) => write!(f, "f{l}"),
            Key::G(l, _) => write!(f, "g{l}"),
            Key::QPrime(p) => write!(f, "q'{p}"),
            Key::Fresh(s) => write!(f, "{s}"),
        }
    }
}

impl Serialize for VertexLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
