use super::{Endpoint, Web};

/// An edge traversed in a direction; `forward` runs tail to head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: usize,
    pub forward: bool,
}

/// A stretch of the disk boundary between two consecutive boundary points,
/// walked from `from` to `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gap {
    pub from: Endpoint,
    pub to: Endpoint,
}

/// A face of the map: its sides in walking order (face on the left).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
    pub gaps: Vec<Gap>,
}

impl Face {
    /// Faces that do not touch the disk boundary.
    pub fn is_internal(&self) -> bool {
        self.gaps.is_empty()
    }

    /// Number of edge sides.
    pub fn degree(&self) -> usize {
        self.darts.len()
    }
}

/// Face counts of a closed web.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceSummary {
    /// Faces of the sphere embedding of every component with vertices.
    pub sphere_faces: usize,
    pub components_with_vertices: usize,
    pub loops: usize,
}

impl FaceSummary {
    /// Faces of the plane picture, the unbounded one included: `V - E + F = 1 + c`.
    pub fn planar_faces(&self) -> usize {
        self.sphere_faces + 1 + self.loops - self.components_with_vertices
    }

    pub fn bounded_faces(&self) -> usize {
        self.planar_faces() - 1
    }
}

impl Web {
    pub fn dart_start(&self, d: Dart) -> Endpoint {
        let e = self.edge(d.edge);
        if d.forward {
            e.tail
        } else {
            e.head
        }
    }

    pub fn dart_end(&self, d: Dart) -> Endpoint {
        let e = self.edge(d.edge);
        if d.forward {
            e.head
        } else {
            e.tail
        }
    }

    fn departing(&self, edge: usize, from: Endpoint) -> Dart {
        Dart {
            edge,
            forward: self.edge(edge).tail == from,
        }
    }

    /// Next side of the face to the left of `d`.
    fn face_step(&self, d: Dart) -> (Dart, Option<Gap>) {
        match self.dart_end(d) {
            Endpoint::Vertex(v) => {
                let rot = self.rotation(v);
                let k = rot
                    .iter()
                    .position(|&e| e == d.edge)
                    .expect("edge missing from rotation");
                // clockwise neighbour of the arriving edge
                let next = rot[(k + 2) % 3];
                (self.departing(next, Endpoint::Vertex(v)), None)
            }
            p => {
                let cycle = self.boundary_cycle();
                let pos = self.cycle_position(p);
                let q = cycle[(pos + 1) % cycle.len()];
                let e = self.boundary_edge(q).expect("boundary point without edge");
                (self.departing(e, q), Some(Gap { from: p, to: q }))
            }
        }
    }

    /// All faces of the map. For components that reach the boundary the
    /// disk boundary is part of the walk; closed components are traced on
    /// their own sphere.
    pub fn faces(&self) -> Vec<Face> {
        let n = self.edge_count();
        let mut seen = vec![[false; 2]; n];
        let mut faces = Vec::new();
        for e in 0..n {
            for forward in [true, false] {
                if seen[e][forward as usize] {
                    continue;
                }
                let start = Dart { edge: e, forward };
                let mut face = Face {
                    darts: Vec::new(),
                    gaps: Vec::new(),
                };
                let mut d = start;
                loop {
                    seen[d.edge][d.forward as usize] = true;
                    face.darts.push(d);
                    let (next, gap) = self.face_step(d);
                    if let Some(g) = gap {
                        face.gaps.push(g);
                    }
                    d = next;
                    if d == start {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        faces
    }

    pub fn internal_faces(&self) -> Vec<Face> {
        self.faces().into_iter().filter(Face::is_internal).collect()
    }

    /// Vertices met along a face, in order (boundary points skipped).
    pub fn face_vertices(&self, f: &Face) -> Vec<usize> {
        f.darts
            .iter()
            .filter_map(|d| match self.dart_start(*d) {
                Endpoint::Vertex(v) => Some(v),
                _ => None,
            })
            .collect()
    }

    /// Face counts of a closed web.
    pub fn face_summary(&self) -> FaceSummary {
        assert!(self.is_closed(), "face_summary needs a closed web");
        FaceSummary {
            sphere_faces: self.faces().len(),
            components_with_vertices: self.component_labels().count,
            loops: self.loop_count(),
        }
    }

    /// Face of the boundary region between top points `i` and `i + 1` of an ε-web.
    pub fn top_gap_face(&self, i: usize) -> Option<Face> {
        let target = Gap {
            from: Endpoint::Top(i + 1),
            to: Endpoint::Top(i),
        };
        self.faces().into_iter().find(|f| f.gaps.contains(&target))
    }
}

pub fn faces(w: &Web) -> Vec<Face> {
    w.faces()
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;

    #[test]
    fn circle_faces() {
        let s = circle().face_summary();
        assert_eq!(s.sphere_faces, 0);
        assert_eq!(s.planar_faces(), 2);
        assert_eq!(s.bounded_faces(), 1);
    }

    #[test]
    fn theta_has_two_bounded_digons() {
        let t = theta();
        let faces = t.faces();
        assert_eq!(faces.len(), 3);
        assert!(faces.iter().all(|f| f.degree() == 2 && f.is_internal()));
        let s = t.face_summary();
        assert_eq!(s.bounded_faces(), 2);
        assert_eq!(
            t.vertex_count() as i64 - t.edge_count() as i64 + s.planar_faces() as i64,
            2
        );
    }

    #[test]
    fn faces_are_additive_over_disjoint_union() {
        let a = circle().disjoint_union(&circle());
        let s = a.face_summary();
        assert_eq!(s.planar_faces(), 3);
        let b = theta().disjoint_union(&theta());
        assert_eq!(b.faces().len(), 6);
        let sb = b.face_summary();
        // V - E + F = 1 + #components in the plane
        assert_eq!(4 - 6 + sb.planar_faces() as i64, 3);
    }

    #[test]
    fn cap_faces_touch_boundary() {
        let c = cap_pm();
        let faces = c.faces();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| !f.is_internal()));
        let inner = c.top_gap_face(0).unwrap();
        assert_eq!(inner.degree(), 1);
    }

    #[test]
    fn y_web_gap_faces_have_two_sides() {
        let y = y_web();
        assert_eq!(y.top_gap_face(0).unwrap().degree(), 2);
        assert_eq!(y.top_gap_face(1).unwrap().degree(), 2);
    }
}
