//! Ideal triangulations of 3-manifolds: tetrahedra with faces glued in pairs.
//!
//! Face `i` of a tetrahedron is the face opposite vertex `i`. A gluing of
//! face `f` of tetrahedron `t` is a target tetrahedron together with a vertex
//! permutation `p`; the target face is `p(f)`.

mod cusp;
mod edges;
pub mod format;
mod validate;

pub use cusp::{CuspCorner, CuspTriangulation};
pub(crate) use edges::UnionFind;
pub use edges::{Corner, EdgeClass};
pub use validate::{CuspSummary, ValidationReport};

use crate::perm::Perm4;
use thiserror::Error;

/// The six edges of a tetrahedron as vertex pairs; edge `i` is opposite edge `5 - i`.
pub const EDGE_VERTICES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index of the edge joining vertices `a` and `b`.
pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not an edge: {a}{b}"),
    }
}

/// The two vertices not in `{a, b}`, in increasing order.
pub fn complement(a: usize, b: usize) -> (usize, usize) {
    let mut rest = (0..4).filter(|&x| x != a && x != b);
    (rest.next().unwrap(), rest.next().unwrap())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriError {
    #[error("triangulation has no tetrahedra")]
    Empty,
    #[error("tet {tet} face {face}: target tetrahedron {target} out of range")]
    DanglingTarget {
        tet: usize,
        face: usize,
        target: usize,
    },
    #[error("tet {tet} face {face} is glued to itself")]
    SelfGluedFace { tet: usize, face: usize },
    #[error("tet {tet} face {face}: gluing is not an involution")]
    NonInvolutive { tet: usize, face: usize },
    #[error("edge class through tet {tet} edge {edge} is identified with itself in reverse")]
    ReversedEdge { tet: usize, edge: usize },
}

/// One face gluing: target tetrahedron and vertex permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

impl Gluing {
    /// The face of the target tetrahedron that `face` is glued onto.
    pub fn target_face(&self, face: usize) -> usize {
        self.perm.apply(face)
    }
}

/// A (tetrahedron, face) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceRef {
    pub tet: usize,
    pub face: usize,
}

/// A glued pair of tetrahedron faces. `primary` is the smaller of the two
/// in (tet, face) order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceClass {
    pub primary: FaceRef,
    pub secondary: FaceRef,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealTriangulation {
    gluings: Vec<[Gluing; 4]>,
    face_class_of: Vec<[usize; 4]>,
    face_classes: Vec<FaceClass>,
}

impl IdealTriangulation {
    /// Builds a triangulation, checking that the gluings form a fixed-point-free
    /// involution on faces with mutually inverse permutations.
    pub fn new(gluings: Vec<[Gluing; 4]>) -> Result<Self, TriError> {
        let n = gluings.len();
        if n == 0 {
            return Err(TriError::Empty);
        }
        for (t, faces) in gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                if g.tet >= n {
                    return Err(TriError::DanglingTarget {
                        tet: t,
                        face: f,
                        target: g.tet,
                    });
                }
            }
        }
        for (t, faces) in gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let tf = g.target_face(f);
                if g.tet == t && tf == f {
                    return Err(TriError::SelfGluedFace { tet: t, face: f });
                }
                let back = gluings[g.tet][tf];
                if back.tet != t || back.perm != g.perm.inverse() {
                    return Err(TriError::NonInvolutive { tet: t, face: f });
                }
            }
        }
        let mut face_class_of = vec![[usize::MAX; 4]; n];
        let mut face_classes = Vec::with_capacity(2 * n);
        for t in 0..n {
            for f in 0..4 {
                if face_class_of[t][f] != usize::MAX {
                    continue;
                }
                let g = gluings[t][f];
                let partner = FaceRef {
                    tet: g.tet,
                    face: g.target_face(f),
                };
                let k = face_classes.len();
                face_class_of[t][f] = k;
                face_class_of[partner.tet][partner.face] = k;
                face_classes.push(FaceClass {
                    primary: FaceRef { tet: t, face: f },
                    secondary: partner,
                });
            }
        }
        Ok(IdealTriangulation {
            gluings,
            face_class_of,
            face_classes,
        })
    }

    pub fn tet_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Gluing {
        self.gluings[tet][face]
    }

    pub fn gluings(&self) -> &[[Gluing; 4]] {
        &self.gluings
    }

    /// Face classes in canonical order: first appearance scanning tets
    /// ascending, then faces `0..4`.
    pub fn face_classes(&self) -> &[FaceClass] {
        &self.face_classes
    }

    pub fn face_class(&self, tet: usize, face: usize) -> usize {
        self.face_class_of[tet][face]
    }

    /// Whether `(tet, face)` is the primary side of its face class.
    pub fn is_primary(&self, tet: usize, face: usize) -> bool {
        self.face_classes[self.face_class_of[tet][face]].primary == FaceRef { tet, face }
    }

    /// Disjoint union, with `other`'s tetrahedra renumbered after `self`'s.
    pub fn disjoint_union(&self, other: &IdealTriangulation) -> IdealTriangulation {
        let shift = self.tet_count();
        let mut gluings = self.gluings.clone();
        gluings.extend(other.gluings.iter().map(|faces| {
            faces.map(|g| Gluing {
                tet: g.tet + shift,
                perm: g.perm,
            })
        }));
        IdealTriangulation::new(gluings).expect("union of valid triangulations is valid")
    }

    /// Connected components of the dual graph, as a component index per tet.
    pub fn components(&self) -> Vec<usize> {
        let n = self.tet_count();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(t) = stack.pop() {
                for g in &self.gluings[t] {
                    if comp[g.tet] == usize::MAX {
                        comp[g.tet] = next;
                        stack.push(g.tet);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// Orientation sign per tetrahedron making every gluing orientation
    /// reversing, found by two-colouring the dual graph; `None` if none exists.
    pub fn orientation(&self) -> Option<Vec<bool>> {
        let n = self.tet_count();
        let mut sign: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if sign[start].is_some() {
                continue;
            }
            sign[start] = Some(true);
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                let st = sign[t].unwrap();
                for g in &self.gluings[t] {
                    // Same orientation on both sides requires an odd gluing.
                    let want = if g.perm.is_odd() { st } else { !st };
                    match sign[g.tet] {
                        None => {
                            sign[g.tet] = Some(want);
                            stack.push(g.tet);
                        }
                        Some(s) if s != want => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(sign.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_orientable(&self) -> bool {
        self.orientation().is_some()
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    fn p(s: &str) -> Perm4 {
        Perm4::parse(s).unwrap()
    }

    /// One tetrahedron, faces 0-1 and 2-3 glued by even permutations.
    pub fn one_tet_nonorientable() -> IdealTriangulation {
        let a = p("1203");
        let b = p("1032");
        IdealTriangulation::new(vec![[
            Gluing { tet: 0, perm: a },
            Gluing {
                tet: 0,
                perm: a.inverse(),
            },
            Gluing { tet: 0, perm: b },
            Gluing { tet: 0, perm: b },
        ]])
        .unwrap()
    }

    /// Two tetrahedra glued face-to-face by the identity: the double of a
    /// tetrahedron, whose four ideal vertices have sphere links.
    pub fn doubled_tet() -> IdealTriangulation {
        let id = Perm4::identity();
        IdealTriangulation::new(vec![
            [Gluing { tet: 1, perm: id }; 4],
            [Gluing { tet: 0, perm: id }; 4],
        ])
        .unwrap()
    }
}
