//! The once-punctured torus with triangle vertices tracked in the universal
//! cover, so edges carry integer slopes and `R`/`L` words become flips.

use std::collections::HashMap;

use super::{other_two, FlipSequence, Relabeling, SideGluing, SurfaceError, SurfaceIdealTri};
use crate::perm::Perm3;

type Point = (i64, i64);

/// Ball nodes as (slope key, depth) and flip edges between node indices.
type FlipBall = (Vec<(Vec<Point>, usize)>, Vec<(usize, usize)>);

/// Two triangles: (0,0),(1,0),(1,1) and (0,0),(1,1),(0,1).
pub fn standard_ptorus() -> SurfaceIdealTri {
    let g = |images: [u8; 3]| SideGluing {
        tri: 1,
        perm: Perm3::new(images).unwrap(),
    };
    let h = |images: [u8; 3]| SideGluing {
        tri: 0,
        perm: Perm3::new(images).unwrap().inverse(),
    };
    SurfaceIdealTri::new(vec![
        [g([1, 0, 2]), g([0, 2, 1]), g([2, 1, 0])],
        [h([2, 1, 0]), h([1, 0, 2]), h([0, 2, 1])],
    ])
    .expect("standard punctured torus is valid")
}

/// A punctured-torus triangulation with a lift of every triangle to the
/// integer lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedTorus {
    pub tri: SurfaceIdealTri,
    pub positions: Vec<[Point; 3]>,
}

fn normalise((dx, dy): Point) -> Point {
    if dx < 0 || (dx == 0 && dy < 0) {
        (-dx, -dy)
    } else {
        (dx, dy)
    }
}

impl MarkedTorus {
    pub fn standard() -> Self {
        MarkedTorus {
            tri: standard_ptorus(),
            positions: vec![[(0, 0), (1, 0), (1, 1)], [(0, 0), (1, 1), (0, 1)]],
        }
    }

    /// Edge vector of every edge, sign-normalised.
    pub fn edge_vectors(&self) -> Vec<Point> {
        self.tri
            .edges()
            .iter()
            .map(|&((t, s), _)| {
                let (u, v) = other_two(s);
                let (p, q) = (self.positions[t][u], self.positions[t][v]);
                normalise((q.0 - p.0, q.1 - p.1))
            })
            .collect()
    }

    /// Sorted edge vectors: identifies the marked triangulation.
    pub fn slope_key(&self) -> Vec<Point> {
        let mut k = self.edge_vectors();
        k.sort();
        k
    }

    pub fn flip(&self, edge: usize) -> Result<(MarkedTorus, usize), SurfaceError> {
        let ((a, i), (b, _)) = *self
            .tri
            .edges()
            .get(edge)
            .ok_or(SurfaceError::EdgeOutOfRange(edge))?;
        let (tri, trace) = self.tri.apply_flip_traced(edge)?;
        let a1 = other_two(i).0;
        let b1 = self.tri.gluing(a, i).perm.apply(a1);
        let (pa, pb) = (self.positions[a][a1], self.positions[b][b1]);
        let offset = (pa.0 - pb.0, pa.1 - pb.1);
        let place = |(t, l): (usize, usize)| -> Point {
            let p = self.positions[t][l];
            if t == a {
                p
            } else {
                (p.0 + offset.0, p.1 + offset.1)
            }
        };
        let mut positions = self.positions.clone();
        for (k, &nt) in trace.tris.iter().enumerate() {
            positions[nt] = trace.origin[k].map(place);
        }
        Ok((MarkedTorus { tri, positions }, trace.new_edge))
    }

    fn edge_with_vector(&self, v: Point) -> Option<usize> {
        let v = normalise(v);
        self.edge_vectors().iter().position(|&w| w == v)
    }
}

/// Basis change of one letter: `R` keeps `a` and replaces `b` by `a + b`,
/// `L` replaces `a` by `a + b` and keeps `b`.
fn letter_matrix(c: char) -> Result<[[i64; 2]; 2], SurfaceError> {
    match c {
        'R' => Ok([[1, 1], [0, 1]]),
        'L' => Ok([[1, 0], [1, 1]]),
        other => Err(SurfaceError::BadLetter(other)),
    }
}

fn mat_mul(x: [[i64; 2]; 2], y: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    std::array::from_fn(|r| std::array::from_fn(|c| x[r][0] * y[0][c] + x[r][1] * y[1][c]))
}

/// Product of the letter matrices of `word`.
pub fn word_matrix(word: &str) -> Result<[[i64; 2]; 2], SurfaceError> {
    word.chars()
        .try_fold([[1, 0], [0, 1]], |m, c| Ok(mat_mul(m, letter_matrix(c)?)))
}

/// Flip sequence realising `word` on the standard punctured torus: `R`
/// flips the edge along the current `b`, `L` the edge along `a`. The closing
/// relabeling carries the final triangulation onto the start by the inverse
/// of the word's matrix.
pub fn ptorus_word_to_flips(word: &str) -> Result<(SurfaceIdealTri, FlipSequence), SurfaceError> {
    if word.is_empty() {
        return Err(SurfaceError::EmptyWord);
    }
    let mut cur = MarkedTorus::standard();
    let (mut a, mut b): (Point, Point) = ((1, 0), (0, 1));
    let mut flips = Vec::with_capacity(word.len());
    for c in word.chars() {
        letter_matrix(c)?;
        let target = if c == 'R' { b } else { a };
        let edge = cur
            .edge_with_vector(target)
            .expect("basis vectors are edges");
        let (next, _) = cur.flip(edge)?;
        flips.push(edge);
        cur = next;
        let sum = (a.0 + b.0, a.1 + b.1);
        if c == 'R' {
            b = sum;
        } else {
            a = sum;
        }
    }
    let w = word_matrix(word)?;
    let closing = closing_map(&cur, w).ok_or(SurfaceError::NoClosingMap)?;
    let base = standard_ptorus();
    Ok((
        base,
        FlipSequence {
            flips,
            closing: Some(closing),
        },
    ))
}

/// The simplicial isomorphism onto the standard torus whose linear part
/// is `w^-1` on positions.
fn closing_map(cur: &MarkedTorus, w: [[i64; 2]; 2]) -> Option<Relabeling> {
    let base = MarkedTorus::standard();
    let det = w[0][0] * w[1][1] - w[0][1] * w[1][0];
    // Inverse of a determinant-one integer matrix.
    debug_assert_eq!(det, 1);
    let inv = [[w[1][1], -w[0][1]], [-w[1][0], w[0][0]]];
    let apply = |(x, y): Point| (inv[0][0] * x + inv[0][1] * y, inv[1][0] * x + inv[1][1] * y);
    let diff = |p: Point, q: Point| (q.0 - p.0, q.1 - p.1);
    cur.tri.isomorphisms(&base.tri).into_iter().find(|iso| {
        iso.iter().enumerate().all(|(t, &(u, rho))| {
            let src = cur.positions[t];
            let dst = base.positions[u];
            (1..3)
                .all(|l| apply(diff(src[0], src[l])) == diff(dst[rho.apply(0)], dst[rho.apply(l)]))
        })
    })
}

/// Breadth-first ball of the given radius around the standard marked
/// torus. Returns each node's slope key and depth, plus every flip edge
/// between nodes of the ball.
pub fn marked_flip_ball(radius: usize) -> FlipBall {
    let start = MarkedTorus::standard();
    let mut index: HashMap<Vec<Point>, usize> = HashMap::new();
    index.insert(start.slope_key(), 0);
    let mut nodes = vec![(start, 0usize)];
    let mut edges = Vec::new();
    let mut head = 0;
    while head < nodes.len() {
        let (cur, depth) = nodes[head].clone();
        for e in 0..cur.tri.edge_count() {
            let Ok((next, _)) = cur.flip(e) else { continue };
            let key = next.slope_key();
            let id = match index.get(&key) {
                Some(&id) => id,
                None if depth < radius => {
                    let id = nodes.len();
                    index.insert(key, id);
                    nodes.push((next, depth + 1));
                    id
                }
                None => continue,
            };
            edges.push((head, id));
        }
        head += 1;
    }
    (
        nodes.into_iter().map(|(m, d)| (m.slope_key(), d)).collect(),
        edges,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_torus_is_once_punctured() {
        let t = standard_ptorus();
        assert_eq!(t.triangle_count(), 2);
        assert_eq!(t.puncture_count(), 1);
        assert_eq!(t.euler_characteristic(), -1);
        assert!(t.is_orientable());
        assert!(t.is_isomorphic(&SurfaceIdealTri::punctured_surface(1, 1).unwrap()));
        assert_eq!(
            MarkedTorus::standard().slope_key(),
            vec![(0, 1), (1, 0), (1, 1)]
        );
    }

    #[test]
    fn letters_change_slopes() {
        let m = MarkedTorus::standard();
        let b = m.edge_with_vector((0, 1)).unwrap();
        let (r, _) = m.flip(b).unwrap();
        assert_eq!(r.slope_key(), vec![(1, 0), (1, 1), (2, 1)]);
        let a = m.edge_with_vector((1, 0)).unwrap();
        let (l, _) = m.flip(a).unwrap();
        assert_eq!(l.slope_key(), vec![(0, 1), (1, 1), (1, 2)]);
    }

    #[test]
    fn rl_word() {
        assert_eq!(word_matrix("RL").unwrap(), [[2, 1], [1, 1]]);
        let (base, seq) = ptorus_word_to_flips("RL").unwrap();
        assert_eq!(seq.flips.len(), 2);
        let end = base.apply_flips(&seq.flips).unwrap();
        assert!(end.check_isomorphism(&base, seq.closing.as_ref().unwrap()));
        assert_eq!(ptorus_word_to_flips(""), Err(SurfaceError::EmptyWord));
        assert_eq!(
            ptorus_word_to_flips("RX"),
            Err(SurfaceError::BadLetter('X'))
        );
    }

    #[test]
    fn farey_ball_sizes() {
        // Nodes at depth d of the Farey tree: 1, 3, 6, 12, 24.
        let (nodes, edges) = marked_flip_ball(4);
        let mut per_depth = [0usize; 5];
        for (_, d) in &nodes {
            per_depth[*d] += 1;
        }
        assert_eq!(per_depth, [1, 3, 6, 12, 24]);
        assert!(edges
            .iter()
            .all(|&(a, b)| a < nodes.len() && b < nodes.len()));
    }
}
