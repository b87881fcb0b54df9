//! Strand reconnection shared by composition and the skein rewrites.

use std::collections::HashMap;

use super::{Edge, End, Endpoint, Polarity, Web, WebError};
use crate::signs::SignSequence;

/// One end of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Half {
    pub edge: usize,
    pub end: End,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Node {
    Vertex(usize),
    Bottom(usize),
    Top(usize),
    /// A gluing point that disappears.
    Cut,
}

struct Raw {
    bottom: SignSequence,
    top: SignSequence,
    polarity: Vec<Polarity>,
    rotation: Vec<[usize; 3]>,
    edges: Vec<(Node, Node)>,
    keep: Vec<bool>,
    junctions: HashMap<Half, Half>,
    loops: usize,
}

impl Raw {
    fn node(&self, h: Half) -> Node {
        let (t, hd) = self.edges[h.edge];
        match h.end {
            End::Tail => t,
            End::Head => hd,
        }
    }

    fn is_kept(&self, n: Node) -> bool {
        match n {
            Node::Vertex(v) => self.keep[v],
            Node::Bottom(_) | Node::Top(_) => true,
            Node::Cut => false,
        }
    }

    fn build(self) -> Result<Web, WebError> {
        let mut new_index = vec![usize::MAX; self.keep.len()];
        let mut polarity = Vec::new();
        for (v, &k) in self.keep.iter().enumerate() {
            if k {
                new_index[v] = polarity.len();
                polarity.push(self.polarity[v]);
            }
        }
        let map = |n: Node| match n {
            Node::Vertex(v) => Endpoint::Vertex(new_index[v]),
            Node::Bottom(i) => Endpoint::Bottom(i),
            Node::Top(i) => Endpoint::Top(i),
            Node::Cut => unreachable!(),
        };
        let n = self.edges.len();
        let mut visited = vec![false; n];
        let mut edges = Vec::new();
        let mut half_to_new: HashMap<Half, usize> = HashMap::new();

        // strands that start at a surviving node
        for e in 0..n {
            if visited[e] || !self.is_kept(self.edges[e].0) {
                continue;
            }
            let mut cur = e;
            loop {
                visited[cur] = true;
                let head = Half {
                    edge: cur,
                    end: End::Head,
                };
                if self.is_kept(self.node(head)) {
                    break;
                }
                let next = *self.junctions.get(&head).ok_or(WebError::SpliceDangling)?;
                if next.end != End::Tail {
                    return Err(WebError::SpliceOrientation);
                }
                if visited[next.edge] {
                    return Err(WebError::SpliceDangling);
                }
                cur = next.edge;
            }
            let id = edges.len();
            edges.push(Edge {
                tail: map(self.edges[e].0),
                head: map(self.edges[cur].1),
            });
            half_to_new.insert(
                Half {
                    edge: e,
                    end: End::Tail,
                },
                id,
            );
            half_to_new.insert(
                Half {
                    edge: cur,
                    end: End::Head,
                },
                id,
            );
        }

        // what remains is closed up into loops or discarded with the removed region
        let mut loops = self.loops;
        for e in 0..n {
            if visited[e] {
                continue;
            }
            let mut cur = e;
            loop {
                visited[cur] = true;
                let head = Half {
                    edge: cur,
                    end: End::Head,
                };
                if self.is_kept(self.node(head)) {
                    return Err(WebError::SpliceDangling);
                }
                match self.junctions.get(&head) {
                    None => break,
                    Some(next) => {
                        if next.end != End::Tail {
                            return Err(WebError::SpliceOrientation);
                        }
                        if next.edge == e {
                            loops += 1;
                            break;
                        }
                        if visited[next.edge] {
                            break;
                        }
                        cur = next.edge;
                    }
                }
            }
        }

        let mut rotation = Vec::with_capacity(polarity.len());
        for (v, &k) in self.keep.iter().enumerate() {
            if !k {
                continue;
            }
            let end = match self.polarity[v] {
                Polarity::Source => End::Tail,
                Polarity::Sink => End::Head,
            };
            let r = self.rotation[v].map(|e| half_to_new[&Half { edge: e, end }]);
            rotation.push(r);
        }
        Ok(Web::from_parts_unchecked(
            self.bottom,
            self.top,
            polarity,
            edges,
            rotation,
            loops,
        ))
    }
}

fn junction_pairs(pairs: impl IntoIterator<Item = (Half, Half)>) -> HashMap<Half, Half> {
    let mut m = HashMap::new();
    for (a, b) in pairs {
        m.insert(a, b);
        m.insert(b, a);
    }
    m
}

/// Glue `upper.bottom` onto `lower.top`.
pub(super) fn compose(lower: &Web, upper: &Web) -> Result<Web, WebError> {
    let nv = lower.vertex_count();
    let ne = lower.edge_count();
    let conv_lower = |p: Endpoint| match p {
        Endpoint::Vertex(v) => Node::Vertex(v),
        Endpoint::Bottom(i) => Node::Bottom(i),
        Endpoint::Top(_) => Node::Cut,
    };
    let conv_upper = |p: Endpoint| match p {
        Endpoint::Vertex(v) => Node::Vertex(v + nv),
        Endpoint::Bottom(_) => Node::Cut,
        Endpoint::Top(i) => Node::Top(i),
    };
    let mut edges: Vec<(Node, Node)> = lower
        .edges()
        .iter()
        .map(|e| (conv_lower(e.tail), conv_lower(e.head)))
        .collect();
    edges.extend(
        upper
            .edges()
            .iter()
            .map(|e| (conv_upper(e.tail), conv_upper(e.head))),
    );

    let half_at = |w: &Web, p: Endpoint, offset: usize| -> Half {
        let e = w.boundary_edge(p).expect("boundary point without edge");
        let end = if w.edge(e).tail == p {
            End::Tail
        } else {
            End::Head
        };
        Half {
            edge: e + offset,
            end,
        }
    };
    let junctions = junction_pairs((0..lower.top().len()).map(|i| {
        (
            half_at(lower, Endpoint::Top(i), 0),
            half_at(upper, Endpoint::Bottom(i), ne),
        )
    }));

    let mut polarity = lower.polarities().to_vec();
    polarity.extend_from_slice(upper.polarities());
    let mut rotation = lower.rotations().to_vec();
    rotation.extend(upper.rotations().iter().map(|r| r.map(|e| e + ne)));
    let keep = vec![true; polarity.len()];

    Raw {
        bottom: lower.bottom().clone(),
        top: upper.top().clone(),
        polarity,
        rotation,
        edges,
        keep,
        junctions,
        loops: lower.loop_count() + upper.loop_count(),
    }
    .build()
}

/// Delete `removed` vertices; loose ends at them are joined pairwise by
/// `junctions`, unpaired loose ends are discarded with the region.
pub(super) fn resplice(
    w: &Web,
    removed: &[usize],
    junctions: &[(Half, Half)],
) -> Result<Web, WebError> {
    let mut keep = vec![true; w.vertex_count()];
    for &v in removed {
        keep[v] = false;
    }
    let conv = |p: Endpoint| match p {
        Endpoint::Vertex(v) => Node::Vertex(v),
        Endpoint::Bottom(i) => Node::Bottom(i),
        Endpoint::Top(i) => Node::Top(i),
    };
    Raw {
        bottom: w.bottom().clone(),
        top: w.top().clone(),
        polarity: w.polarities().to_vec(),
        rotation: w.rotations().to_vec(),
        edges: w
            .edges()
            .iter()
            .map(|e| (conv(e.tail), conv(e.head)))
            .collect(),
        keep,
        junctions: junction_pairs(junctions.iter().copied()),
        loops: w.loop_count(),
    }
    .build()
}
