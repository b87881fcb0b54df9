//! Edge colorings by {-1, 0, 1} with three distinct colors at every vertex.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::web::{Endpoint, Web};

pub const COLORS: [i8; 3] = [-1, 0, 1];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring does not fit the web: {0}")]
    Invalid(String),
    #[error("expected an ε-web (no bottom boundary)")]
    NotEpsilonWeb,
    #[error("boundary coloring has length {found}, the web has {expected} boundary points")]
    Length { expected: usize, found: usize },
    #[error("no boundary coloring is realised by exactly one coloring of exactly one web")]
    NoWitness,
    #[error("bad boundary coloring {0:?} (expected comma separated -1, 0, 1)")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coloring {
    pub edge_colors: Vec<i8>,
    pub loop_colors: Vec<i8>,
}

/// Colors of the boundary points of an ε-web, left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoundaryColoring(pub Vec<i8>);

impl BoundaryColoring {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All `3^l` colorings in lexicographic order.
    pub fn all(l: usize) -> Vec<BoundaryColoring> {
        let mut out = vec![Vec::new()];
        for _ in 0..l {
            out = out
                .into_iter()
                .flat_map(|c: Vec<i8>| {
                    COLORS.iter().map(move |&x| {
                        let mut d = c.clone();
                        d.push(x);
                        d
                    })
                })
                .collect();
        }
        out.into_iter().map(BoundaryColoring).collect()
    }
}

impl fmt::Display for BoundaryColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for BoundaryColoring {
    type Err = ColoringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if t.is_empty() {
            return Ok(BoundaryColoring(Vec::new()));
        }
        t.split(',')
            .map(|x| match x.trim().replace('−', "-").as_str() {
                "-1" => Ok(-1),
                "0" => Ok(0),
                "1" | "+1" => Ok(1),
                _ => Err(ColoringError::Parse(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BoundaryColoring)
    }
}

/// Backtracking search over the edges of a web.
struct Search<'a> {
    web: &'a Web,
    order: Vec<usize>,
    colors: Vec<Option<i8>>,
}

impl<'a> Search<'a> {
    fn new(web: &'a Web, fixed: &[(usize, i8)]) -> Self {
        let mut colors = vec![None; web.edge_count()];
        for &(e, c) in fixed {
            colors[e] = Some(c);
        }
        // depth-first edge order so each vertex is completed early
        let mut order = Vec::with_capacity(web.edge_count());
        let mut seen = vec![false; web.edge_count()];
        let mut stack: Vec<usize> = Vec::new();
        for start in 0..web.edge_count() {
            if seen[start] || colors[start].is_some() {
                continue;
            }
            stack.push(start);
            while let Some(e) = stack.pop() {
                if seen[e] {
                    continue;
                }
                seen[e] = true;
                if colors[e].is_none() {
                    order.push(e);
                }
                let edge = web.edge(e);
                for p in [edge.tail, edge.head] {
                    if let Endpoint::Vertex(v) = p {
                        stack.extend(web.rotation(v).iter().copied().filter(|&f| !seen[f]));
                    }
                }
            }
        }
        Search { web, order, colors }
    }

    fn fits(&self, e: usize, c: i8) -> bool {
        let edge = self.web.edge(e);
        [edge.tail, edge.head].into_iter().all(|p| match p {
            Endpoint::Vertex(v) => self
                .web
                .rotation(v)
                .iter()
                .all(|&f| f == e || self.colors[f] != Some(c)),
            _ => true,
        })
    }

    fn consistent(&self) -> bool {
        (0..self.web.edge_count()).all(|e| match self.colors[e] {
            Some(c) => self.fits(e, c),
            None => true,
        })
    }

    fn run(&mut self, k: usize, visit: &mut dyn FnMut(&[Option<i8>])) {
        if k == self.order.len() {
            visit(&self.colors);
            return;
        }
        let e = self.order[k];
        for c in COLORS {
            if self.fits(e, c) {
                self.colors[e] = Some(c);
                self.run(k + 1, visit);
            }
        }
        self.colors[e] = None;
    }

    fn count(&mut self, k: usize) -> u128 {
        if k == self.order.len() {
            return 1;
        }
        let e = self.order[k];
        let mut n = 0;
        for c in COLORS {
            if self.fits(e, c) {
                self.colors[e] = Some(c);
                n += self.count(k + 1);
            }
        }
        self.colors[e] = None;
        n
    }
}

fn loop_colorings(n: usize) -> Vec<Vec<i8>> {
    BoundaryColoring::all(n).into_iter().map(|b| b.0).collect()
}

fn collect(web: &Web, fixed: &[(usize, i8)]) -> Vec<Coloring> {
    let mut search = Search::new(web, fixed);
    if !search.consistent() {
        return Vec::new();
    }
    let mut edge_colorings = Vec::new();
    search.run(0, &mut |cs| {
        edge_colorings.push(cs.iter().map(|c| c.unwrap()).collect::<Vec<i8>>())
    });
    let loops = loop_colorings(web.loop_count());
    edge_colorings
        .into_iter()
        .flat_map(|edge_colors| {
            loops.iter().map(move |l| Coloring {
                edge_colors: edge_colors.clone(),
                loop_colors: l.clone(),
            })
        })
        .collect()
}

/// Every valid coloring of `w`, loops included.
pub fn enumerate_colorings(w: &Web) -> Vec<Coloring> {
    collect(w, &[])
}

/// Number of colorings; loops contribute a factor 3 each without listing.
pub fn count_colorings(w: &Web) -> u128 {
    Search::new(w, &[]).count(0) * 3u128.pow(w.loop_count() as u32)
}

pub fn is_valid(w: &Web, c: &Coloring) -> bool {
    c.edge_colors.len() == w.edge_count()
        && c.loop_colors.len() == w.loop_count()
        && c.edge_colors
            .iter()
            .chain(&c.loop_colors)
            .all(|x| COLORS.contains(x))
        && (0..w.vertex_count()).all(|v| {
            let [a, b, d] = w.rotation(v).map(|e| c.edge_colors[e]);
            a != b && b != d && a != d
        })
}

fn boundary_edges(w: &Web) -> Result<Vec<usize>, ColoringError> {
    if !w.is_epsilon_web() {
        return Err(ColoringError::NotEpsilonWeb);
    }
    Ok((0..w.top().len())
        .map(|i| {
            w.boundary_edge(Endpoint::Top(i))
                .expect("boundary point without edge")
        })
        .collect())
}

/// The boundary coloring induced by `c`: each point takes the color of its edge.
pub fn restrict(w: &Web, c: &Coloring) -> Result<BoundaryColoring, ColoringError> {
    if !is_valid(w, c) {
        return Err(ColoringError::Invalid(format!("{:?}", c.edge_colors)));
    }
    Ok(BoundaryColoring(
        boundary_edges(w)?
            .into_iter()
            .map(|e| c.edge_colors[e])
            .collect(),
    ))
}

fn boundary_constraints(
    w: &Web,
    c0: &BoundaryColoring,
) -> Result<Option<Vec<(usize, i8)>>, ColoringError> {
    let edges = boundary_edges(w)?;
    if edges.len() != c0.len() {
        return Err(ColoringError::Length {
            expected: edges.len(),
            found: c0.len(),
        });
    }
    let mut fixed: Vec<(usize, i8)> = Vec::new();
    for (&e, &c) in edges.iter().zip(&c0.0) {
        // an arc between two boundary points is fixed twice
        if let Some(&(_, old)) = fixed.iter().find(|(f, _)| *f == e) {
            if old != c {
                return Ok(None);
            }
        } else {
            fixed.push((e, c));
        }
    }
    Ok(Some(fixed))
}

/// Colorings of an ε-web restricting to `c0`.
pub fn colorings_restricting(
    w: &Web,
    c0: &BoundaryColoring,
) -> Result<Vec<Coloring>, ColoringError> {
    Ok(match boundary_constraints(w, c0)? {
        Some(fixed) => collect(w, &fixed),
        None => Vec::new(),
    })
}

pub fn count_restricting(w: &Web, c0: &BoundaryColoring) -> Result<u128, ColoringError> {
    Ok(match boundary_constraints(w, c0)? {
        Some(fixed) => {
            let mut s = Search::new(w, &fixed);
            if s.consistent() {
                s.count(0) * 3u128.pow(w.loop_count() as u32)
            } else {
                0
            }
        }
        None => 0,
    })
}

/// How many colorings of an ε-web restrict to each boundary coloring
/// (boundary colorings with no coloring are omitted).
pub fn boundary_tally(w: &Web) -> Result<BTreeMap<BoundaryColoring, u128>, ColoringError> {
    let edges = boundary_edges(w)?;
    let mut tally = BTreeMap::new();
    let mut search = Search::new(w, &[]);
    let factor = 3u128.pow(w.loop_count() as u32);
    search.run(0, &mut |cs| {
        let b = BoundaryColoring(edges.iter().map(|&e| cs[e].unwrap()).collect());
        *tally.entry(b).or_insert(0) += factor;
    });
    Ok(tally)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub boundary: BoundaryColoring,
    pub web_index: usize,
    pub coloring: Coloring,
}

/// A boundary coloring met by exactly one coloring of exactly one of the
/// given ε-webs (the lexicographically smallest such).
pub fn unique_coloring_witness(webs: &[Web]) -> Result<Witness, ColoringError> {
    let mut total: BTreeMap<BoundaryColoring, (u128, usize)> = BTreeMap::new();
    for (i, w) in webs.iter().enumerate() {
        for (b, n) in boundary_tally(w)? {
            let slot = total.entry(b).or_insert((0, i));
            slot.0 += n;
            slot.1 = i;
        }
    }
    let (boundary, (_, web_index)) = total
        .into_iter()
        .find(|(_, (n, _))| *n == 1)
        .ok_or(ColoringError::NoWitness)?;
    let mut found = colorings_restricting(&webs[web_index], &boundary)?;
    debug_assert_eq!(found.len(), 1);
    let coloring = found.pop().ok_or(ColoringError::NoWitness)?;
    Ok(Witness {
        boundary,
        web_index,
        coloring,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signs::{Sign, SignSequence};
    use crate::web::trace_close;

    fn eps(s: &str) -> SignSequence {
        s.parse().unwrap()
    }

    fn y() -> Web {
        Web::single_vertex(eps(""), eps("+++")).unwrap()
    }

    fn cap() -> Web {
        Web::top_arc(Sign::Plus, Sign::Minus).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_colorings(&Web::circles(1)).len(), 3);
        assert_eq!(
            enumerate_colorings(&trace_close(&y(), &y()).unwrap()).len(),
            6
        );
        assert_eq!(enumerate_colorings(&cap()).len(), 3);
        assert_eq!(count_colorings(&Web::circles(3)), 27);
        assert_eq!(enumerate_colorings(&Web::empty()).len(), 1);
    }

    #[test]
    fn restriction() {
        for c in enumerate_colorings(&y()) {
            let b = restrict(&y(), &c).unwrap();
            assert_eq!(b.0, c.edge_colors.iter().rev().copied().collect::<Vec<_>>());
        }
        let closed = Web::circles(1);
        assert!(restrict(&closed, &enumerate_colorings(&closed)[0])
            .unwrap()
            .is_empty());
        let bad = Coloring {
            edge_colors: vec![0, 0, 1],
            loop_colors: vec![],
        };
        assert!(restrict(&y(), &bad).is_err());
    }

    #[test]
    fn restricting_partitions() {
        assert_eq!(
            colorings_restricting(&cap(), &"0,0".parse().unwrap())
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            colorings_restricting(&cap(), &"0,1".parse().unwrap())
                .unwrap()
                .len(),
            0
        );
        for w in [cap(), y()] {
            let l = w.top().len();
            let total: usize = BoundaryColoring::all(l)
                .iter()
                .map(|b| colorings_restricting(&w, b).unwrap().len())
                .sum();
            assert_eq!(total, enumerate_colorings(&w).len());
            let tally: u128 = boundary_tally(&w).unwrap().values().sum();
            assert_eq!(tally, count_colorings(&w));
        }
    }

    #[test]
    fn witness_for_single_webs() {
        let w = unique_coloring_witness(&[cap()]).unwrap();
        assert_eq!(w.web_index, 0);
        assert_eq!(w.boundary.0[0], w.boundary.0[1]);
        assert!(unique_coloring_witness(&[y()]).is_ok());
        assert_eq!(
            unique_coloring_witness(&[cap(), cap()]),
            Err(ColoringError::NoWitness)
        );
    }

    #[test]
    fn boundary_coloring_text() {
        let b: BoundaryColoring = "(-1, 0,1)".parse().unwrap();
        assert_eq!(b.0, vec![-1, 0, 1]);
        assert_eq!(b.to_string(), "(-1,0,1)");
        assert!("2".parse::<BoundaryColoring>().is_err());
    }
}
