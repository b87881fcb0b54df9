//! Canonical forms of embedded webs.
//!
//! A connected piece touching the boundary is encoded by a breadth-first
//! walk rooted at its first boundary point (boundary labels are fixed, so
//! the encoding is already canonical). A closed piece is encoded from every
//! possible root dart and the smallest encoding is kept. Closed pieces and
//! loops are compared as a multiset, independently of nesting.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{Endpoint, Polarity, Web};
use crate::signs::SignSequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Token {
    Bottom(usize),
    Top(usize),
    Sink,
    Source,
    /// Neighbour vertex number and the slot of the shared edge in that
    /// vertex's rotation, counted from its entry edge.
    Vertex(usize, u8),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub bottom: SignSequence,
    pub top: SignSequence,
    pub attached: Vec<Vec<Token>>,
    pub floating: Vec<Vec<Token>>,
    pub loops: usize,
}

fn boundary_token(p: Endpoint) -> Token {
    match p {
        Endpoint::Bottom(i) => Token::Bottom(i),
        Endpoint::Top(i) => Token::Top(i),
        Endpoint::Vertex(_) => unreachable!(),
    }
}

struct Walker<'a> {
    web: &'a Web,
    number: Vec<Option<(usize, usize)>>, // (number, entry edge)
    queue: VecDeque<usize>,
    next: usize,
    tokens: Vec<Token>,
}

impl<'a> Walker<'a> {
    fn new(web: &'a Web) -> Self {
        Walker {
            web,
            number: vec![None; web.vertex_count()],
            queue: VecDeque::new(),
            next: 0,
            tokens: Vec::new(),
        }
    }

    fn discover(&mut self, v: usize, entry: usize) -> (usize, u8) {
        match self.number[v] {
            Some((n, entry_edge)) => {
                let rot = self.web.rotation(v);
                let a = rot.iter().position(|&e| e == entry_edge).unwrap();
                let b = rot.iter().position(|&e| e == entry).unwrap();
                (n, ((b + 3 - a) % 3) as u8)
            }
            None => {
                let n = self.next;
                self.next += 1;
                self.number[v] = Some((n, entry));
                self.queue.push_back(v);
                (n, 0)
            }
        }
    }

    fn other_end(&self, e: usize, from: Endpoint) -> Endpoint {
        let edge = self.web.edge(e);
        if edge.tail == from {
            edge.head
        } else {
            edge.tail
        }
    }

    fn run(&mut self) {
        while let Some(v) = self.queue.pop_front() {
            let (_, entry) = self.number[v].unwrap();
            self.tokens.push(match self.web.polarity(v) {
                Polarity::Sink => Token::Sink,
                Polarity::Source => Token::Source,
            });
            let rot = self.web.rotation(v);
            let k = rot.iter().position(|&e| e == entry).unwrap();
            for i in 0..3 {
                let e = rot[(k + i) % 3];
                let tok = match self.other_end(e, Endpoint::Vertex(v)) {
                    Endpoint::Vertex(u) => {
                        let (n, slot) = self.discover(u, e);
                        Token::Vertex(n, slot)
                    }
                    p => boundary_token(p),
                };
                self.tokens.push(tok);
            }
        }
    }

    fn from_boundary(web: &'a Web, p: Endpoint) -> Vec<Token> {
        let mut w = Walker::new(web);
        w.tokens.push(boundary_token(p));
        let e = web.boundary_edge(p).unwrap();
        match w.other_end(e, p) {
            Endpoint::Vertex(u) => {
                let (n, slot) = w.discover(u, e);
                w.tokens.push(Token::Vertex(n, slot));
            }
            q => w.tokens.push(boundary_token(q)),
        }
        w.run();
        w.tokens
    }

    fn from_vertex(web: &'a Web, v: usize, entry: usize) -> Vec<Token> {
        let mut w = Walker::new(web);
        w.discover(v, entry);
        w.run();
        w.tokens
    }
}

impl Web {
    pub fn canonical_form(&self) -> CanonicalForm {
        let comps = self.component_labels();
        let mut done = vec![false; comps.count];
        let mut attached = Vec::new();
        let mut floating = Vec::new();
        // pieces reaching the boundary: rooted at each boundary point of a
        // not yet covered connected piece (comps merges all boundary pieces,
        // so track coverage by the walk instead)
        let mut covered_vertices = vec![false; self.vertex_count()];
        let mut covered_points = std::collections::HashSet::new();
        for p in self.boundary_cycle() {
            if covered_points.contains(&p) {
                continue;
            }
            let tokens = Walker::from_boundary(self, p);
            for t in &tokens {
                match *t {
                    Token::Bottom(i) => {
                        covered_points.insert(Endpoint::Bottom(i));
                    }
                    Token::Top(i) => {
                        covered_points.insert(Endpoint::Top(i));
                    }
                    _ => {}
                }
            }
            mark_reached(self, p, &mut covered_vertices);
            attached.push(tokens);
        }
        for v in 0..self.vertex_count() {
            let c = comps.vertex[v];
            if covered_vertices[v] || done[c] {
                continue;
            }
            done[c] = true;
            let verts: Vec<usize> = (0..self.vertex_count())
                .filter(|&u| comps.vertex[u] == c)
                .collect();
            let best = verts
                .iter()
                .flat_map(|&u| self.rotation(u).map(move |e| (u, e)))
                .map(|(u, e)| Walker::from_vertex(self, u, e))
                .min()
                .unwrap();
            floating.push(best);
        }
        attached.sort();
        floating.sort();
        CanonicalForm {
            bottom: self.bottom().clone(),
            top: self.top().clone(),
            attached,
            floating,
            loops: self.loop_count(),
        }
    }

    /// Isomorphism of embedded webs fixing the boundary: same map up to
    /// relabelling, same orientations and polarities.
    pub fn is_isomorphic(&self, other: &Web) -> bool {
        self.canonical_form() == other.canonical_form()
    }
}

fn mark_reached(web: &Web, p: Endpoint, covered: &mut [bool]) {
    let mut stack = Vec::new();
    let e = web.boundary_edge(p).unwrap();
    for q in [web.edge(e).tail, web.edge(e).head] {
        if let Endpoint::Vertex(v) = q {
            stack.push(v);
        }
    }
    while let Some(v) = stack.pop() {
        if covered[v] {
            continue;
        }
        covered[v] = true;
        for e in web.rotation(v) {
            for q in [web.edge(e).tail, web.edge(e).head] {
                if let Endpoint::Vertex(u) = q {
                    if !covered[u] {
                        stack.push(u);
                    }
                }
            }
        }
    }
}

pub fn isomorphic(w1: &Web, w2: &Web) -> bool {
    w1.is_isomorphic(w2)
}
