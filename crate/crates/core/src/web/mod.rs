//! Webs as combinatorial maps.
//!
//! A [`Web`] is an `(ε₀, ε₁)`-web tangle drawn in the strip `R × [0, 1]`:
//! `bottom` boundary points sit on the lower line (left to right), `top`
//! points on the upper line. Read bottom to top it is a map `V^{ε₀} → V^{ε₁}`,
//! matching the slice scripts of [`crate::reptheory`]. An ε-web has empty
//! bottom and `top = ε`; a closed web has no boundary at all.
//!
//! Orientation at the boundary: a top point of sign `+` is the head of its
//! edge, a bottom point of sign `+` is its tail (strands carrying `V⁺` point
//! upwards).
//!
//! The embedding is stored as a rotation system: for every internal vertex
//! the counter-clockwise cyclic order of its three edges.

mod canon;
mod faces;
pub mod io;
mod patterns;
mod splice;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use canon::{isomorphic, CanonicalForm, Token};
pub use faces::{faces, Dart, Face, FaceSummary, Gap};
pub use patterns::{LocalPattern, PatternKind};
pub(crate) use splice::Half;

use crate::signs::{Sign, SignSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Sink,
    Source,
}

impl Polarity {
    pub fn flipped(self) -> Polarity {
        match self {
            Polarity::Sink => Polarity::Source,
            Polarity::Source => Polarity::Sink,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    Vertex(usize),
    Bottom(usize),
    Top(usize),
}

impl Endpoint {
    pub fn is_boundary(self) -> bool {
        !matches!(self, Endpoint::Vertex(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub tail: Endpoint,
    pub head: Endpoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Tail,
    Head,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WebError {
    #[error("edge {edge} refers to missing {what}")]
    DanglingEndpoint { edge: usize, what: String },
    #[error("edge {0} starts and ends at the same vertex")]
    SelfLoop(usize),
    #[error("boundary point {0:?} has {1} incident edges (expected 1)")]
    BoundaryValence(Endpoint, usize),
    #[error("boundary point {0:?} has the wrong orientation for its sign")]
    BoundaryOrientation(Endpoint),
    #[error("vertex {0} is not trivalent")]
    Valence(usize),
    #[error("vertex {0}: rotation does not list exactly its incident edges")]
    Rotation(usize),
    #[error("vertex {0} is neither a sink nor a source")]
    Polarity(usize),
    #[error("rotation system is not planar (Euler characteristic {found}, expected {expected})")]
    NotPlanar { found: i64, expected: i64 },
    #[error("boundary mismatch: {left} vs {right}")]
    BoundaryMismatch {
        left: SignSequence,
        right: SignSequence,
    },
    #[error("web is not closed")]
    NotClosed,
    #[error("web is not an ε-web (it has bottom boundary {0})")]
    NotEpsilonWeb(SignSequence),
    #[error("inconsistent orientation while splicing strands")]
    SpliceOrientation,
    #[error("strand left dangling while splicing")]
    SpliceDangling,
    #[error("vertex counts differ: {0} polarities, {1} rotations")]
    VertexCount(usize, usize),
}

/// A web tangle with a fixed planar embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Web {
    bottom: SignSequence,
    top: SignSequence,
    polarity: Vec<Polarity>,
    edges: Vec<Edge>,
    rotation: Vec<[usize; 3]>,
    loops: usize,
}

impl Web {
    /// Build and validate a web from raw parts.
    pub fn new(
        bottom: SignSequence,
        top: SignSequence,
        polarity: Vec<Polarity>,
        edges: Vec<Edge>,
        rotation: Vec<[usize; 3]>,
        loops: usize,
    ) -> Result<Web, WebError> {
        let w = Web {
            bottom,
            top,
            polarity,
            edges,
            rotation,
            loops,
        };
        w.validate()?;
        Ok(w)
    }

    pub(crate) fn from_parts_unchecked(
        bottom: SignSequence,
        top: SignSequence,
        polarity: Vec<Polarity>,
        edges: Vec<Edge>,
        rotation: Vec<[usize; 3]>,
        loops: usize,
    ) -> Web {
        let w = Web {
            bottom,
            top,
            polarity,
            edges,
            rotation,
            loops,
        };
        debug_assert_eq!(w.validate(), Ok(()));
        w
    }

    pub fn empty() -> Web {
        Web::from_parts_unchecked(
            SignSequence::empty(),
            SignSequence::empty(),
            vec![],
            vec![],
            vec![],
            0,
        )
    }

    /// `n` vertex-less loops.
    pub fn circles(n: usize) -> Web {
        let mut w = Web::empty();
        w.loops = n;
        w
    }

    /// Vertical strands, one per sign.
    pub fn identity(signs: &SignSequence) -> Web {
        let edges = signs
            .iter()
            .enumerate()
            .map(|(i, s)| match s {
                Sign::Plus => Edge {
                    tail: Endpoint::Bottom(i),
                    head: Endpoint::Top(i),
                },
                Sign::Minus => Edge {
                    tail: Endpoint::Top(i),
                    head: Endpoint::Bottom(i),
                },
            })
            .collect();
        Web::from_parts_unchecked(signs.clone(), signs.clone(), vec![], edges, vec![], 0)
    }

    /// An arc joining two adjacent top points (a map `C → V^{(a,b)}`),
    /// requires `a = -b`.
    pub fn top_arc(left: Sign, right: Sign) -> Result<Web, WebError> {
        let top = SignSequence::new(vec![left, right]);
        if left == right {
            return Err(WebError::BoundaryOrientation(Endpoint::Top(1)));
        }
        // the minus point is the tail
        let edge = if left == Sign::Minus {
            Edge {
                tail: Endpoint::Top(0),
                head: Endpoint::Top(1),
            }
        } else {
            Edge {
                tail: Endpoint::Top(1),
                head: Endpoint::Top(0),
            }
        };
        Ok(Web::from_parts_unchecked(
            SignSequence::empty(),
            top,
            vec![],
            vec![edge],
            vec![],
            0,
        ))
    }

    /// An arc joining two adjacent bottom points (a map `V^{(a,b)} → C`).
    pub fn bottom_arc(left: Sign, right: Sign) -> Result<Web, WebError> {
        Ok(Web::top_arc(left, right)?.conjugate())
    }

    /// A single trivalent vertex attached to every bottom and top point.
    ///
    /// Sources need bottom signs `-` and top signs `+`; sinks the reverse.
    pub fn single_vertex(bottom: SignSequence, top: SignSequence) -> Result<Web, WebError> {
        if bottom.len() + top.len() != 3 {
            return Err(WebError::Valence(0));
        }
        let polarity = match (bottom.iter().next(), top.iter().next()) {
            (_, Some(Sign::Plus)) | (Some(Sign::Minus), None) => Polarity::Source,
            _ => Polarity::Sink,
        };
        let mut edges = Vec::new();
        let mut rotation = Vec::new();
        // counter-clockwise from the east: top right to left, then bottom left to right
        for i in (0..top.len()).rev() {
            rotation.push(edges.len());
            edges.push(match polarity {
                Polarity::Source => Edge {
                    tail: Endpoint::Vertex(0),
                    head: Endpoint::Top(i),
                },
                Polarity::Sink => Edge {
                    tail: Endpoint::Top(i),
                    head: Endpoint::Vertex(0),
                },
            });
        }
        for i in 0..bottom.len() {
            rotation.push(edges.len());
            edges.push(match polarity {
                Polarity::Source => Edge {
                    tail: Endpoint::Vertex(0),
                    head: Endpoint::Bottom(i),
                },
                Polarity::Sink => Edge {
                    tail: Endpoint::Bottom(i),
                    head: Endpoint::Vertex(0),
                },
            });
        }
        Web::new(
            bottom,
            top,
            vec![polarity],
            edges,
            vec![[rotation[0], rotation[1], rotation[2]]],
            0,
        )
    }

    pub fn bottom(&self) -> &SignSequence {
        &self.bottom
    }

    pub fn top(&self) -> &SignSequence {
        &self.top
    }

    /// The boundary `∂w = ε` of an ε-web.
    pub fn boundary(&self) -> &SignSequence {
        &self.top
    }

    pub fn polarity(&self, v: usize) -> Polarity {
        self.polarity[v]
    }

    pub fn polarities(&self) -> &[Polarity] {
        &self.polarity
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Edge {
        self.edges[e]
    }

    /// Counter-clockwise order of the edges at `v`.
    pub fn rotation(&self, v: usize) -> [usize; 3] {
        self.rotation[v]
    }

    pub fn rotations(&self) -> &[[usize; 3]] {
        &self.rotation
    }

    pub fn loop_count(&self) -> usize {
        self.loops
    }

    pub fn vertex_count(&self) -> usize {
        self.polarity.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_closed(&self) -> bool {
        self.bottom.is_empty() && self.top.is_empty()
    }

    pub fn is_epsilon_web(&self) -> bool {
        self.bottom.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.polarity.is_empty()
            && self.edges.is_empty()
            && self.loops == 0
            && self.top.is_empty()
            && self.bottom.is_empty()
    }

    /// `V - E` of the underlying graph, boundary points counted as
    /// univalent vertices; vertex-less loops contribute nothing.
    pub fn euler_characteristic(&self) -> i64 {
        (self.vertex_count() + self.bottom.len() + self.top.len()) as i64 - self.edge_count() as i64
    }

    pub fn endpoint(&self, e: usize, end: End) -> Endpoint {
        match end {
            End::Tail => self.edges[e].tail,
            End::Head => self.edges[e].head,
        }
    }

    /// Which end of `e` sits at vertex `v` (edges never join a vertex to itself).
    pub fn end_at(&self, e: usize, v: usize) -> End {
        if self.edges[e].tail == Endpoint::Vertex(v) {
            End::Tail
        } else {
            End::Head
        }
    }

    /// Edge attached to a boundary point.
    pub fn boundary_edge(&self, p: Endpoint) -> Option<usize> {
        self.edges.iter().position(|e| e.tail == p || e.head == p)
    }

    /// Boundary points in counter-clockwise order around the disk:
    /// bottom left to right, then top right to left.
    pub fn boundary_cycle(&self) -> Vec<Endpoint> {
        (0..self.bottom.len())
            .map(Endpoint::Bottom)
            .chain((0..self.top.len()).rev().map(Endpoint::Top))
            .collect()
    }

    pub(crate) fn cycle_position(&self, p: Endpoint) -> usize {
        match p {
            Endpoint::Bottom(i) => i,
            Endpoint::Top(i) => self.bottom.len() + self.top.len() - 1 - i,
            Endpoint::Vertex(_) => unreachable!("vertices are not on the boundary"),
        }
    }

    fn validate(&self) -> Result<(), WebError> {
        let nv = self.polarity.len();
        if self.rotation.len() != nv {
            return Err(WebError::VertexCount(nv, self.rotation.len()));
        }
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
        let mut bottom_deg = vec![0usize; self.bottom.len()];
        let mut top_deg = vec![0usize; self.top.len()];
        for (i, e) in self.edges.iter().enumerate() {
            if e.tail == e.head && matches!(e.tail, Endpoint::Vertex(_)) {
                return Err(WebError::SelfLoop(i));
            }
            for (p, end) in [(e.tail, End::Tail), (e.head, End::Head)] {
                match p {
                    Endpoint::Vertex(v) => {
                        if v >= nv {
                            return Err(WebError::DanglingEndpoint {
                                edge: i,
                                what: format!("vertex {v}"),
                            });
                        }
                        incident[v].push(i);
                        let ok = match self.polarity[v] {
                            Polarity::Source => end == End::Tail,
                            Polarity::Sink => end == End::Head,
                        };
                        if !ok {
                            return Err(WebError::Polarity(v));
                        }
                    }
                    Endpoint::Bottom(k) => {
                        if k >= self.bottom.len() {
                            return Err(WebError::DanglingEndpoint {
                                edge: i,
                                what: format!("bottom point {k}"),
                            });
                        }
                        bottom_deg[k] += 1;
                        let ok = (self.bottom[k] == Sign::Plus) == (end == End::Tail);
                        if !ok {
                            return Err(WebError::BoundaryOrientation(p));
                        }
                    }
                    Endpoint::Top(k) => {
                        if k >= self.top.len() {
                            return Err(WebError::DanglingEndpoint {
                                edge: i,
                                what: format!("top point {k}"),
                            });
                        }
                        top_deg[k] += 1;
                        let ok = (self.top[k] == Sign::Plus) == (end == End::Head);
                        if !ok {
                            return Err(WebError::BoundaryOrientation(p));
                        }
                    }
                }
            }
        }
        for (k, d) in bottom_deg.iter().enumerate() {
            if *d != 1 {
                return Err(WebError::BoundaryValence(Endpoint::Bottom(k), *d));
            }
        }
        for (k, d) in top_deg.iter().enumerate() {
            if *d != 1 {
                return Err(WebError::BoundaryValence(Endpoint::Top(k), *d));
            }
        }
        for v in 0..nv {
            if incident[v].len() != 3 {
                return Err(WebError::Valence(v));
            }
            let mut listed = self.rotation[v].to_vec();
            listed.sort_unstable();
            incident[v].sort_unstable();
            if listed != incident[v] {
                return Err(WebError::Rotation(v));
            }
        }
        self.check_planar()
    }

    /// Genus-zero check: `V - E + F = 1` for the part attached to the disk
    /// boundary, `2` for every closed component (sphere).
    fn check_planar(&self) -> Result<(), WebError> {
        let comps = self.component_labels();
        let faces = self.faces();
        let n_comp = comps.count;
        let boundary_comp = self.boundary_cycle().first().map(|p| comps.of_endpoint(*p));
        let mut chi = vec![0i64; n_comp];
        for v in 0..self.vertex_count() {
            chi[comps.vertex[v]] += 1;
        }
        for e in 0..self.edge_count() {
            chi[comps.edge[e]] -= 1;
        }
        for f in &faces {
            chi[comps.edge[f.darts[0].edge]] += 1;
        }
        for (c, &x) in chi.iter().enumerate() {
            let expected = if Some(c) == boundary_comp { 1 } else { 2 };
            if x != expected {
                return Err(WebError::NotPlanar { found: x, expected });
            }
        }
        Ok(())
    }

    /// Connected components, with every component that reaches the disk
    /// boundary merged into one (the boundary circle joins them).
    pub(crate) fn component_labels(&self) -> Components {
        let nv = self.vertex_count();
        let nb = self.bottom.len() + self.top.len();
        // nodes: vertices, then boundary points in cycle order
        let node = |p: Endpoint| -> usize {
            match p {
                Endpoint::Vertex(v) => v,
                other => nv + self.cycle_position(other),
            }
        };
        let mut uf = UnionFind::new(nv + nb);
        for e in &self.edges {
            uf.union(node(e.tail), node(e.head));
        }
        for k in 1..nb {
            uf.union(nv, nv + k);
        }
        let mut label = vec![usize::MAX; nv + nb];
        let mut count = 0;
        let mut vertex = vec![0; nv];
        for (x, slot) in vertex.iter_mut().enumerate() {
            let r = uf.find(x);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            *slot = label[r];
        }
        let mut boundary = vec![0; nb];
        for (k, slot) in boundary.iter_mut().enumerate() {
            let r = uf.find(nv + k);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            *slot = label[r];
        }
        let edge = self
            .edges
            .iter()
            .map(|e| label[uf.find(node(e.tail))])
            .collect();
        Components {
            count,
            vertex,
            boundary,
            edge,
            bottom_len: self.bottom.len(),
            top_len: self.top.len(),
        }
    }

    /// Conjugate `w̄`: reflect across the horizontal midline and reverse every
    /// orientation. An `(ε₀, ε₁)`-tangle becomes an `(ε₁, ε₀)`-tangle.
    pub fn conjugate(&self) -> Web {
        let flip = |p: Endpoint| match p {
            Endpoint::Vertex(v) => Endpoint::Vertex(v),
            Endpoint::Bottom(i) => Endpoint::Top(i),
            Endpoint::Top(i) => Endpoint::Bottom(i),
        };
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                tail: flip(e.head),
                head: flip(e.tail),
            })
            .collect();
        let rotation = self.rotation.iter().map(|r| [r[2], r[1], r[0]]).collect();
        let polarity = self.polarity.iter().map(|p| p.flipped()).collect();
        Web::from_parts_unchecked(
            self.top.clone(),
            self.bottom.clone(),
            polarity,
            edges,
            rotation,
            self.loops,
        )
    }

    /// Side-by-side juxtaposition `self ⊗ other` (other to the right).
    pub fn tensor(&self, other: &Web) -> Web {
        let nv = self.vertex_count();
        let ne = self.edge_count();
        let (nb, nt) = (self.bottom.len(), self.top.len());
        let shift = |p: Endpoint| match p {
            Endpoint::Vertex(v) => Endpoint::Vertex(v + nv),
            Endpoint::Bottom(i) => Endpoint::Bottom(i + nb),
            Endpoint::Top(i) => Endpoint::Top(i + nt),
        };
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge {
            tail: shift(e.tail),
            head: shift(e.head),
        }));
        let mut rotation = self.rotation.clone();
        rotation.extend(
            other
                .rotation
                .iter()
                .map(|r| [r[0] + ne, r[1] + ne, r[2] + ne]),
        );
        let mut polarity = self.polarity.clone();
        polarity.extend_from_slice(&other.polarity);
        Web::from_parts_unchecked(
            self.bottom.concat(&other.bottom),
            self.top.concat(&other.top),
            polarity,
            edges,
            rotation,
            self.loops + other.loops,
        )
    }

    /// Stack `upper` on top of `self`, gluing `self.top` to `upper.bottom`.
    pub fn then(&self, upper: &Web) -> Result<Web, WebError> {
        if self.top != upper.bottom {
            return Err(WebError::BoundaryMismatch {
                left: self.top.clone(),
                right: upper.bottom.clone(),
            });
        }
        splice::compose(self, upper)
    }

    /// Disjoint union of closed webs (or placing closed pieces side by side).
    pub fn disjoint_union(&self, other: &Web) -> Web {
        self.tensor(other)
    }

    /// Remove the given vertices and reconnect the loose strands according
    /// to `junctions` (pairs of edge ends at removed vertices).
    pub(crate) fn resplice(
        &self,
        removed: &[usize],
        junctions: &[(Half, Half)],
    ) -> Result<Web, WebError> {
        splice::resplice(self, removed, junctions)
    }

    /// Split a closed web into its connected components and its loop count.
    pub fn closed_components(&self) -> (Vec<Web>, usize) {
        assert!(self.is_closed(), "closed_components on a web with boundary");
        let comps = self.component_labels();
        let mut out = Vec::with_capacity(comps.count);
        for c in 0..comps.count {
            let verts: Vec<usize> = (0..self.vertex_count())
                .filter(|&v| comps.vertex[v] == c)
                .collect();
            out.push(self.induced(&verts));
        }
        (out, self.loops)
    }

    /// The sub-web on a union of closed components (vertex set closed under adjacency).
    fn induced(&self, verts: &[usize]) -> Web {
        let mut vmap = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in verts.iter().enumerate() {
            vmap[v] = i;
        }
        let mut emap = vec![usize::MAX; self.edge_count()];
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if let Endpoint::Vertex(t) = e.tail {
                if vmap[t] != usize::MAX {
                    emap[i] = edges.len();
                    let remap = |p: Endpoint| match p {
                        Endpoint::Vertex(v) => Endpoint::Vertex(vmap[v]),
                        other => other,
                    };
                    edges.push(Edge {
                        tail: remap(e.tail),
                        head: remap(e.head),
                    });
                }
            }
        }
        let rotation = verts
            .iter()
            .map(|&v| self.rotation[v].map(|e| emap[e]))
            .collect();
        let polarity = verts.iter().map(|&v| self.polarity[v]).collect();
        Web::from_parts_unchecked(
            SignSequence::empty(),
            SignSequence::empty(),
            polarity,
            edges,
            rotation,
            0,
        )
    }

    pub(crate) fn without_loops(&self) -> Web {
        let mut w = self.clone();
        w.loops = 0;
        w
    }

    /// Relabel vertices and edges by permutations and rotate each rotation
    /// list cyclically. The result is the same embedded web.
    pub fn relabeled(
        &self,
        vertex_perm: &[usize],
        edge_perm: &[usize],
        rotate_by: &[usize],
    ) -> Web {
        let remap = |p: Endpoint| match p {
            Endpoint::Vertex(v) => Endpoint::Vertex(vertex_perm[v]),
            other => other,
        };
        let mut edges = vec![
            Edge {
                tail: Endpoint::Top(0),
                head: Endpoint::Top(0)
            };
            self.edge_count()
        ];
        for (i, e) in self.edges.iter().enumerate() {
            edges[edge_perm[i]] = Edge {
                tail: remap(e.tail),
                head: remap(e.head),
            };
        }
        let mut rotation = vec![[0; 3]; self.vertex_count()];
        let mut polarity = vec![Polarity::Sink; self.vertex_count()];
        for v in 0..self.vertex_count() {
            let r = self.rotation[v].map(|e| edge_perm[e]);
            let k = rotate_by[v] % 3;
            rotation[vertex_perm[v]] = [r[k], r[(k + 1) % 3], r[(k + 2) % 3]];
            polarity[vertex_perm[v]] = self.polarity[v];
        }
        Web::from_parts_unchecked(
            self.bottom.clone(),
            self.top.clone(),
            polarity,
            edges,
            rotation,
            self.loops,
        )
    }

    /// True if some connected piece never reaches the boundary.
    pub fn has_floating_component(&self) -> bool {
        if self.loops > 0 {
            return true;
        }
        let comps = self.component_labels();
        let boundary: HashSet<usize> = comps.boundary.iter().copied().collect();
        (0..comps.count).any(|c| !boundary.contains(&c))
    }
}

/// Conjugate `w̄` of a web tangle.
pub fn conjugate(w: &Web) -> Web {
    w.conjugate()
}

/// The closed web `w̄₁ w₂` obtained by gluing two ε-webs along ε.
pub fn trace_close(w1: &Web, w2: &Web) -> Result<Web, WebError> {
    for w in [w1, w2] {
        if !w.is_epsilon_web() {
            return Err(WebError::NotEpsilonWeb(w.bottom.clone()));
        }
    }
    if w1.top != w2.top {
        return Err(WebError::BoundaryMismatch {
            left: w1.top.clone(),
            right: w2.top.clone(),
        });
    }
    w2.then(&w1.conjugate())
}

pub(crate) struct Components {
    pub count: usize,
    pub vertex: Vec<usize>,
    /// indexed by boundary cycle position
    pub boundary: Vec<usize>,
    pub edge: Vec<usize>,
    bottom_len: usize,
    top_len: usize,
}

impl Components {
    pub fn of_endpoint(&self, p: Endpoint) -> usize {
        match p {
            Endpoint::Vertex(v) => self.vertex[v],
            Endpoint::Bottom(i) => self.boundary[i],
            Endpoint::Top(i) => self.boundary[self.bottom_len + self.top_len - 1 - i],
        }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn elementary_webs_validate() {
        assert_eq!(cap_pm().top(), &eps("+-"));
        assert_eq!(y_web().vertex_count(), 1);
        assert_eq!(y_web().polarity(0), Polarity::Source);
        let sink = Web::single_vertex(eps("++"), eps("-")).unwrap();
        assert_eq!(sink.polarity(0), Polarity::Sink);
        assert!(Web::top_arc(Sign::Plus, Sign::Plus).is_err());
    }

    #[test]
    fn validation_catches_bad_orientation() {
        let bad = Web::new(
            SignSequence::empty(),
            eps("+-"),
            vec![],
            vec![Edge {
                tail: Endpoint::Top(0),
                head: Endpoint::Top(1),
            }],
            vec![],
            0,
        );
        assert!(matches!(bad, Err(WebError::BoundaryOrientation(_))));
    }

    #[test]
    fn validation_catches_mixed_vertex() {
        let bad = Web::new(
            SignSequence::empty(),
            eps("++-"),
            vec![Polarity::Source],
            vec![
                Edge {
                    tail: Endpoint::Vertex(0),
                    head: Endpoint::Top(0),
                },
                Edge {
                    tail: Endpoint::Vertex(0),
                    head: Endpoint::Top(1),
                },
                Edge {
                    tail: Endpoint::Top(2),
                    head: Endpoint::Vertex(0),
                },
            ],
            vec![[2, 1, 0]],
            0,
        );
        assert_eq!(bad, Err(WebError::Polarity(0)));
    }

    #[test]
    fn validation_catches_non_planar_rotation() {
        // theta web with one vertex listed clockwise: the walk finds a single
        // face, V - E + F = 2 - 3 + 1 = 0.
        let t = theta();
        let mut rot = t.rotations().to_vec();
        rot[0] = [rot[0][0], rot[0][2], rot[0][1]];
        let bad = Web::new(
            t.bottom().clone(),
            t.top().clone(),
            t.polarities().to_vec(),
            t.edges().to_vec(),
            rot,
            0,
        );
        assert!(matches!(bad, Err(WebError::NotPlanar { .. })));
    }

    #[test]
    fn conjugation_of_strand_and_cap() {
        let up = Web::identity(&eps("+"));
        let c = up.conjugate();
        assert_eq!(c.top(), &eps("+"));
        assert_eq!(c.bottom(), &eps("+"));
        assert_eq!(c, up);
        let cup = cap_pm().conjugate();
        assert_eq!(cup.bottom(), &eps("+-"));
        assert!(cup.top().is_empty());
        assert_eq!(cup.conjugate(), cap_pm());
    }

    #[test]
    fn trace_close_examples() {
        let c = circle();
        assert!(c.is_closed());
        assert_eq!(c.vertex_count(), 0);
        assert_eq!(c.edge_count(), 0);
        assert_eq!(c.loop_count(), 1);

        let t = theta();
        assert_eq!(t.vertex_count(), 2);
        assert_eq!(t.edge_count(), 3);
        assert_eq!(t.loop_count(), 0);

        assert!(trace_close(&Web::empty(), &Web::empty())
            .unwrap()
            .is_empty());
        assert!(matches!(
            trace_close(&cap_pm(), &y_web()),
            Err(WebError::BoundaryMismatch { .. })
        ));
    }

    #[test]
    fn trace_close_euler_identity() {
        let l = 3;
        let t = theta();
        let y = y_web();
        assert_eq!(t.euler_characteristic(), 2 * y.euler_characteristic() - l);
    }

    #[test]
    fn composition_checks_boundary() {
        let err = cap_pm().then(&Web::identity(&eps("++")));
        assert!(matches!(err, Err(WebError::BoundaryMismatch { .. })));
    }

    #[test]
    fn zigzag_composes_to_a_strand() {
        // (id+ ⊗ cup_{-+}) ∘ (cap_{+-} ⊗ id+) straightens to a strand.
        let lower = cap_pm().tensor(&Web::identity(&eps("+")));
        let upper =
            Web::identity(&eps("+")).tensor(&Web::bottom_arc(Sign::Minus, Sign::Plus).unwrap());
        let w = lower.then(&upper).unwrap();
        assert_eq!(w.edge_count(), 1);
        assert_eq!(w.loop_count(), 0);
        assert_eq!(w.bottom(), &eps("+"));
        assert_eq!(w.top(), &eps("+"));
    }

    #[test]
    fn closed_components_split() {
        let w = theta()
            .disjoint_union(&theta())
            .disjoint_union(&Web::circles(2));
        let (parts, loops) = w.closed_components();
        assert_eq!(parts.len(), 2);
        assert_eq!(loops, 2);
        assert!(parts.iter().all(|p| p.vertex_count() == 2));
    }
}
