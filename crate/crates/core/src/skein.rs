//! Kuperberg bracket of closed webs by circle, digon and square removal.

use std::sync::OnceLock;

use dashmap::DashMap;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qpoly::{quantum_integer, LaurentPoly};
use crate::web::{CanonicalForm, Face, Half, Web, WebError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkeinError {
    #[error("the bracket is only defined for closed webs")]
    NotClosed,
    #[error("no circle, digon or square in a closed web with {0} vertices")]
    Stalled(usize),
    #[error("degenerate face of degree {0}")]
    DegenerateFace(usize),
    #[error("closed web evaluated to half-integral powers of q")]
    HalfPowers,
    #[error(transparent)]
    Web(#[from] WebError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Circle,
    Digon,
    SquareBranchA,
    SquareBranchB,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: Rule,
    /// Index of the face in `Web::faces` of the web being rewritten
    /// (`None` for circles).
    pub face: Option<usize>,
    /// Vertices of the web before the step.
    pub vertices: usize,
    /// Nesting depth in the square state sum.
    pub depth: usize,
}

/// Every rewrite performed while evaluating a bracket, depth first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
    pub factor: LaurentPoly,
}

fn q2() -> &'static LaurentPoly {
    static V: OnceLock<LaurentPoly> = OnceLock::new();
    V.get_or_init(|| quantum_integer(2).unwrap())
}

fn q3() -> &'static LaurentPoly {
    static V: OnceLock<LaurentPoly> = OnceLock::new();
    V.get_or_init(|| quantum_integer(3).unwrap())
}

enum Rewrite {
    Digon(Web),
    Square(Web, Web),
}

/// The two strands leaving a reducible face, or both resolutions of a square.
fn rewrite(w: &Web, face: &Face) -> Result<Rewrite, SkeinError> {
    let verts = w.face_vertices(face);
    let n = face.degree();
    let mut sides: Vec<usize> = face.darts.iter().map(|d| d.edge).collect();
    let mut distinct = verts.clone();
    distinct.sort_unstable();
    distinct.dedup();
    sides.sort_unstable();
    sides.dedup();
    if verts.len() != n || distinct.len() != n || sides.len() != n {
        return Err(SkeinError::DegenerateFace(n));
    }
    // the third edge at each vertex, seen from that vertex
    let outer: Vec<Half> = verts
        .iter()
        .map(|&v| {
            let e = w
                .rotation(v)
                .into_iter()
                .find(|e| !sides.contains(e))
                .expect("face edges exhaust a vertex");
            Half {
                edge: e,
                end: w.end_at(e, v),
            }
        })
        .collect();
    for (k, h) in outer.iter().enumerate() {
        let next = outer[(k + 1) % n];
        if h.end == next.end {
            return Err(SkeinError::Web(WebError::SpliceOrientation));
        }
    }
    match n {
        2 => Ok(Rewrite::Digon(w.resplice(&verts, &[(outer[0], outer[1])])?)),
        4 => {
            let a = w.resplice(&verts, &[(outer[0], outer[1]), (outer[2], outer[3])])?;
            let b = w.resplice(&verts, &[(outer[1], outer[2]), (outer[3], outer[0])])?;
            Ok(Rewrite::Square(a, b))
        }
        _ => Err(SkeinError::DegenerateFace(n)),
    }
}

fn reducible_faces(w: &Web) -> Vec<(usize, Face)> {
    w.faces()
        .into_iter()
        .enumerate()
        .filter(|(_, f)| matches!(f.degree(), 2 | 4))
        .collect()
}

fn check_closed(w: &Web) -> Result<(), SkeinError> {
    if w.is_closed() {
        Ok(())
    } else {
        Err(SkeinError::NotClosed)
    }
}

/// A bracket evaluator with a memo table keyed by the canonical form of
/// connected closed webs. Safe to share between threads.
#[derive(Default)]
pub struct Skein {
    memo: DashMap<CanonicalForm, LaurentPoly>,
}

impl Skein {
    pub fn new() -> Self {
        Skein::default()
    }

    pub fn bracket(&self, w: &Web) -> Result<LaurentPoly, SkeinError> {
        check_closed(w)?;
        let value = self.eval(w)?;
        value
            .ensure_integral_q_powers()
            .map_err(|_| SkeinError::HalfPowers)?;
        Ok(value)
    }

    fn eval(&self, w: &Web) -> Result<LaurentPoly, SkeinError> {
        let (components, loops) = w.closed_components();
        let mut value = q3().pow(loops as u32);
        for c in &components {
            value *= self.eval_connected(c)?;
        }
        Ok(value)
    }

    fn eval_connected(&self, w: &Web) -> Result<LaurentPoly, SkeinError> {
        let key = w.canonical_form();
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let faces = reducible_faces(w);
        // prefer digons: no branching
        let (_, face) = faces
            .iter()
            .find(|(_, f)| f.degree() == 2)
            .or_else(|| faces.first())
            .ok_or(SkeinError::Stalled(w.vertex_count()))?;
        let value = match rewrite(w, face)? {
            Rewrite::Digon(r) => q2() * &self.eval(&r)?,
            Rewrite::Square(a, b) => {
                let (x, y) = if w.vertex_count() > 14 {
                    rayon::join(|| self.eval(&a), || self.eval(&b))
                } else {
                    (self.eval(&a), self.eval(&b))
                };
                x? + y?
            }
        };
        self.memo.insert(key, value.clone());
        Ok(value)
    }
}

fn shared() -> &'static Skein {
    static S: OnceLock<Skein> = OnceLock::new();
    S.get_or_init(Skein::new)
}

/// `⟨w⟩` for a closed web.
pub fn bracket(w: &Web) -> Result<LaurentPoly, SkeinError> {
    shared().bracket(w)
}

/// The bracket with faces reduced in an order drawn from `seed`, without
/// memoisation.
pub fn bracket_randomized(w: &Web, seed: u64) -> Result<LaurentPoly, SkeinError> {
    check_closed(w)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    eval_random(w, &mut rng)
}

fn eval_random(w: &Web, rng: &mut ChaCha8Rng) -> Result<LaurentPoly, SkeinError> {
    let mut value = q3().pow(w.loop_count() as u32);
    if w.vertex_count() == 0 {
        return Ok(value);
    }
    let w = w.without_loops();
    let faces = reducible_faces(&w);
    let (_, face) = faces
        .choose(rng)
        .ok_or(SkeinError::Stalled(w.vertex_count()))?;
    value *= match rewrite(&w, face)? {
        Rewrite::Digon(r) => q2() * &eval_random(&r, rng)?,
        Rewrite::Square(a, b) => {
            if rand::Rng::gen_bool(rng, 0.5) {
                let y = eval_random(&b, rng)?;
                eval_random(&a, rng)? + y
            } else {
                eval_random(&a, rng)? + eval_random(&b, rng)?
            }
        }
    };
    Ok(value)
}

/// The bracket together with every rewrite performed (no memoisation, so
/// the trace is complete).
pub fn bracket_traced(w: &Web) -> Result<(LaurentPoly, ReductionTrace), SkeinError> {
    check_closed(w)?;
    let mut trace = ReductionTrace::default();
    let value = eval_traced(w, 0, &mut trace.steps)?;
    trace.factor = value.clone();
    Ok((value, trace))
}

fn eval_traced(
    w: &Web,
    depth: usize,
    steps: &mut Vec<TraceStep>,
) -> Result<LaurentPoly, SkeinError> {
    for _ in 0..w.loop_count() {
        steps.push(TraceStep {
            rule: Rule::Circle,
            face: None,
            vertices: w.vertex_count(),
            depth,
        });
    }
    let mut value = q3().pow(w.loop_count() as u32);
    if w.vertex_count() == 0 {
        return Ok(value);
    }
    let w = w.without_loops();
    let faces = reducible_faces(&w);
    let (id, face) = faces
        .iter()
        .find(|(_, f)| f.degree() == 2)
        .or_else(|| faces.first())
        .ok_or(SkeinError::Stalled(w.vertex_count()))?;
    let step = |rule| TraceStep {
        rule,
        face: Some(*id),
        vertices: w.vertex_count(),
        depth,
    };
    value *= match rewrite(&w, face)? {
        Rewrite::Digon(r) => {
            steps.push(step(Rule::Digon));
            q2() * &eval_traced(&r, depth, steps)?
        }
        Rewrite::Square(a, b) => {
            steps.push(step(Rule::SquareBranchA));
            let x = eval_traced(&a, depth + 1, steps)?;
            steps.push(step(Rule::SquareBranchB));
            x + eval_traced(&b, depth + 1, steps)?
        }
    };
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signs::SignSequence;
    use crate::web::trace_close;

    fn eps(s: &str) -> SignSequence {
        s.parse().unwrap()
    }

    fn theta() -> Web {
        let y = Web::single_vertex(eps(""), eps("+++")).unwrap();
        trace_close(&y, &y).unwrap()
    }

    fn circle() -> Web {
        Web::circles(1)
    }

    /// Closure of the square: the H tangle glued to its own mirror.
    fn square_closure() -> Web {
        let lower = Web::single_vertex(eps("-"), eps("++"))
            .unwrap()
            .tensor(&Web::identity(&eps("+")));
        let upper =
            Web::identity(&eps("+")).tensor(&Web::single_vertex(eps("++"), eps("-")).unwrap());
        let h = lower.then(&upper).unwrap();
        let cap = Web::top_arc(crate::signs::Sign::Minus, crate::signs::Sign::Plus).unwrap();
        let w = cap.then(&h).unwrap();
        trace_close(&w, &w).unwrap()
    }

    #[test]
    fn base_values() {
        assert_eq!(bracket(&circle()).unwrap().to_string(), "q^2 + 1 + q^-2");
        assert_eq!(bracket(&Web::empty()).unwrap(), LaurentPoly::one());
        assert_eq!(
            bracket(&theta()).unwrap().to_string(),
            "q^3 + 2q + 2q^-1 + q^-3"
        );
        assert_eq!(bracket(&Web::circles(2)).unwrap(), q3() * q3());
    }

    #[test]
    fn confluent_on_four_vertex_web() {
        let w = square_closure();
        assert_eq!(w.vertex_count(), 4);
        // sphere faces: two digons and two squares
        assert_eq!(
            reducible_faces(&w)
                .iter()
                .filter(|(_, f)| f.degree() == 4)
                .count(),
            2
        );
        let expected = q2() * q2() * q3();
        assert_eq!(bracket(&w).unwrap(), expected);
        for seed in 0..8 {
            assert_eq!(bracket_randomized(&w, seed).unwrap(), expected);
        }
    }

    #[test]
    fn rejects_open_webs() {
        let y = Web::single_vertex(eps(""), eps("+++")).unwrap();
        assert_eq!(bracket(&y), Err(SkeinError::NotClosed));
    }

    #[test]
    fn trace_records_steps() {
        let (v, t) = bracket_traced(&theta()).unwrap();
        assert_eq!(v, t.factor);
        let rules: Vec<Rule> = t.steps.iter().map(|s| s.rule).collect();
        assert_eq!(rules, vec![Rule::Digon, Rule::Circle]);
    }

    #[test]
    fn disjoint_union_multiplies() {
        let w = theta()
            .disjoint_union(&square_closure())
            .disjoint_union(&circle());
        assert_eq!(
            bracket(&w).unwrap(),
            bracket(&theta()).unwrap() * bracket(&square_closure()).unwrap() * q3().clone()
        );
        assert_eq!(bracket_randomized(&w, 3).unwrap(), bracket(&w).unwrap());
    }
}
