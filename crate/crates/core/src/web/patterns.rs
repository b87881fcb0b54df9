use serde::{Deserialize, Serialize};

use super::Web;

/// Shapes that can sit against two adjacent boundary points of an ε-web.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternKind {
    /// An arc joining the two points.
    Cap,
    /// Both points attached to one vertex.
    Lambda,
    /// The points attached to two adjacent vertices.
    H,
}

impl std::fmt::Display for PatternKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PatternKind::Cap => "∩",
            PatternKind::Lambda => "λ",
            PatternKind::H => "H",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalPattern {
    pub kind: PatternKind,
    /// The pattern occupies top points `position` and `position + 1`.
    pub position: usize,
}

impl Web {
    /// No vertex-less loop, no closed piece, no internal digon or square.
    pub fn is_non_elliptic(&self) -> bool {
        if self.has_floating_component() {
            // a closed piece always carries a digon or square of its own
            return false;
        }
        self.faces()
            .iter()
            .all(|f| !f.is_internal() || f.degree() >= 6)
    }

    /// Every cap, λ and H against adjacent top points, left to right.
    pub fn local_patterns(&self) -> Vec<LocalPattern> {
        if self.top().len() < 2 || !self.bottom().is_empty() {
            return Vec::new();
        }
        (0..self.top().len() - 1)
            .filter_map(|i| {
                let face = self.top_gap_face(i)?;
                if face.gaps.len() != 1 {
                    return None;
                }
                let kind = match face.degree() {
                    1 => PatternKind::Cap,
                    2 => PatternKind::Lambda,
                    3 => PatternKind::H,
                    _ => return None,
                };
                Some(LocalPattern { kind, position: i })
            })
            .collect()
    }

    /// First local pattern from the left, if any.
    pub fn find_local_pattern(&self) -> Option<LocalPattern> {
        self.local_patterns().into_iter().next()
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn ellipticity_of_small_webs() {
        assert!(!circle().is_non_elliptic());
        assert!(cap_pm().is_non_elliptic());
        assert!(!theta().is_non_elliptic());
        assert!(y_web().is_non_elliptic());
        assert!(Web::empty().is_non_elliptic());
        assert!(!cap_pm().tensor(&circle()).is_non_elliptic());
    }

    #[test]
    fn patterns_of_small_webs() {
        assert_eq!(
            cap_pm().find_local_pattern(),
            Some(LocalPattern {
                kind: PatternKind::Cap,
                position: 0
            })
        );
        let y = y_web().local_patterns();
        assert_eq!(y.len(), 2);
        assert!(y.iter().all(|p| p.kind == PatternKind::Lambda));
    }

    #[test]
    fn h_pattern_is_found() {
        // two λ's glued along an edge: top (+,-) from bottom (-,+), closed off below
        let lower = Web::single_vertex(eps("-"), eps("++"))
            .unwrap()
            .tensor(&Web::identity(&eps("+")));
        let upper =
            Web::identity(&eps("+")).tensor(&Web::single_vertex(eps("++"), eps("-")).unwrap());
        let h = lower.then(&upper).unwrap();
        let w = Web::top_arc(crate::signs::Sign::Minus, crate::signs::Sign::Plus)
            .unwrap()
            .then(&h)
            .unwrap();
        assert_eq!(w.top(), &eps("+-"));
        // the H face closes up into a digon against the cap, so it is elliptic
        assert!(!w.is_non_elliptic());
        assert!(w.local_patterns().iter().any(|p| p.kind == PatternKind::H));
    }
}
