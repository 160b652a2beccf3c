//! Target graphs `H` whose monochromatic copies are counted.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Largest explicit pattern the generic embedding counter accepts.
pub const MAX_EXPLICIT_VERTICES: usize = 10;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum PatternGraph {
    /// Path on `k` vertices (`k - 1` edges).
    Path(usize),
    /// Cycle on `k` vertices.
    Cycle(usize),
    /// The star `K_{1,k}` (`k + 1` vertices).
    Star(usize),
    /// The clique `K_k`.
    Complete(usize),
    Explicit(SimpleGraph),
}

impl PatternGraph {
    pub fn path(k: usize) -> Result<Self> {
        Self::Path(k).validated()
    }

    pub fn cycle(k: usize) -> Result<Self> {
        Self::Cycle(k).validated()
    }

    pub fn star(k: usize) -> Result<Self> {
        Self::Star(k).validated()
    }

    pub fn complete(k: usize) -> Result<Self> {
        Self::Complete(k).validated()
    }

    pub fn explicit(g: SimpleGraph) -> Result<Self> {
        Self::Explicit(g).validated()
    }

    pub fn validated(self) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidPattern(m));
        match &self {
            PatternGraph::Path(k) if *k < 2 => bad(format!("path needs k >= 2, got {k}")),
            PatternGraph::Cycle(k) if *k < 3 => bad(format!("cycle needs k >= 3, got {k}")),
            PatternGraph::Star(k) if *k < 1 => bad("star K_{1,k} needs k >= 1".into()),
            PatternGraph::Complete(k) if *k < 2 => bad(format!("clique needs k >= 2, got {k}")),
            PatternGraph::Explicit(g) if g.edge_count() == 0 => bad("explicit pattern has no edges".into()),
            PatternGraph::Explicit(g) if g.n() > MAX_EXPLICIT_VERTICES => {
                Err(Error::PatternTooLarge { got: g.n(), max: MAX_EXPLICIT_VERTICES })
            }
            _ if self.vertex_count() > crate::graph::MAX_VERTICES => Err(Error::TooManyVertices(self.vertex_count())),
            _ => Ok(self),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            PatternGraph::Path(k) | PatternGraph::Cycle(k) | PatternGraph::Complete(k) => *k,
            PatternGraph::Star(k) => k + 1,
            PatternGraph::Explicit(g) => g.n(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            PatternGraph::Path(k) => k - 1,
            PatternGraph::Cycle(k) | PatternGraph::Star(k) => *k,
            PatternGraph::Complete(k) => k * (k - 1) / 2,
            PatternGraph::Explicit(g) => g.edge_count(),
        }
    }

    /// The pattern as a concrete graph on `0..vertex_count()`.
    pub fn to_graph(&self) -> SimpleGraph {
        let k = self.vertex_count();
        match self {
            PatternGraph::Path(_) => {
                let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
                SimpleGraph::from_edges(k, &edges).unwrap()
            }
            PatternGraph::Cycle(_) => SimpleGraph::cycle(k).unwrap(),
            PatternGraph::Star(s) => SimpleGraph::complete_bipartite(1, *s).unwrap(),
            PatternGraph::Complete(_) => SimpleGraph::complete(k).unwrap(),
            PatternGraph::Explicit(g) => g.clone(),
        }
    }

    /// Size of the automorphism group, in closed form where one is known.
    pub fn automorphisms(&self) -> u128 {
        match self {
            PatternGraph::Path(_) => 2,
            PatternGraph::Cycle(k) => 2 * *k as u128,
            PatternGraph::Star(1) => 2,
            PatternGraph::Star(k) => factorial(*k),
            PatternGraph::Complete(k) => factorial(*k),
            PatternGraph::Explicit(g) => crate::count::embedding_count(g, g),
        }
    }
}

pub(crate) fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

impl fmt::Display for PatternGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternGraph::Path(k) => write!(f, "P{k}"),
            PatternGraph::Cycle(k) => write!(f, "C{k}"),
            PatternGraph::Star(k) => write!(f, "S{k}"),
            PatternGraph::Complete(k) => write!(f, "K{k}"),
            PatternGraph::Explicit(g) => {
                write!(f, "E{}:", g.n())?;
                for (i, (u, v)) in g.edges().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{u}-{v}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for PatternGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `C5`, `P4`, `K3`, `S3` (= `K1,3`), or `E<n>:<u>-<v>,...`.
impl FromStr for PatternGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidPattern(format!("cannot parse pattern {s:?}"));
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix("K1,") {
            return PatternGraph::star(num(rest)?);
        }
        if let Some(rest) = s.strip_prefix('E') {
            let (n, edges) = rest.split_once(':').ok_or_else(bad)?;
            let n = num(n)?;
            let mut list = Vec::new();
            for e in edges.split(',').filter(|e| !e.is_empty()) {
                let (u, v) = e.split_once('-').ok_or_else(bad)?;
                list.push((num(u)?, num(v)?));
            }
            if n > MAX_EXPLICIT_VERTICES {
                return Err(Error::PatternTooLarge { got: n, max: MAX_EXPLICIT_VERTICES });
            }
            return PatternGraph::explicit(SimpleGraph::from_edges(n, &list)?);
        }
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let k = num(chars.as_str())?;
        match head.to_ascii_uppercase() {
            'C' => PatternGraph::cycle(k),
            'P' => PatternGraph::path(k),
            'K' => PatternGraph::complete(k),
            'S' => PatternGraph::star(k),
            _ => Err(bad()),
        }
    }
}

impl TryFrom<String> for PatternGraph {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<PatternGraph> for String {
    fn from(p: PatternGraph) -> String {
        p.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["C5", "P4", "K3", "S3", "E4:0-1,1-2,2-3,0-3"] {
            let p: PatternGraph = s.parse().unwrap();
            assert_eq!(p.to_string().parse::<PatternGraph>().unwrap(), p);
        }
        assert_eq!("K1,3".parse::<PatternGraph>().unwrap(), PatternGraph::Star(3));
    }

    #[test]
    fn invalid_sizes_rejected() {
        assert!(PatternGraph::cycle(2).is_err());
        assert!(PatternGraph::path(1).is_err());
        assert!(PatternGraph::star(0).is_err());
        assert!("Q4".parse::<PatternGraph>().is_err());
        assert!(matches!("E11:0-1".parse::<PatternGraph>(), Err(Error::PatternTooLarge { got: 11, .. })));
    }

    #[test]
    fn closed_form_automorphisms_match_generic() {
        for p in [
            PatternGraph::Path(4),
            PatternGraph::Cycle(5),
            PatternGraph::Star(1),
            PatternGraph::Star(3),
            PatternGraph::Complete(4),
        ] {
            let generic = PatternGraph::Explicit(p.to_graph()).automorphisms();
            assert_eq!(p.automorphisms(), generic, "{p}");
        }
    }

    #[test]
    fn star_has_k_plus_one_vertices() {
        assert_eq!(PatternGraph::Star(3).vertex_count(), 4);
        assert_eq!(PatternGraph::Star(3).to_graph().edge_count(), 3);
    }
}
