//! Ideal triangulations of punctured surfaces, elementary moves (flips) and
//! flip-path search.
//!
//! Side `i` of a triangle is the side opposite its vertex `i`. Every side is
//! glued to another side, so the ideal region is the whole boundary and the
//! triangle count equals `-2 χ`.

pub mod format;
mod ptorus;

pub use ptorus::{
    marked_flip_ball, ptorus_word_to_flips, standard_ptorus, word_matrix, MarkedTorus,
};

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::Perm3;
use crate::tri::UnionFind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("surface triangulation has no triangles")]
    Empty,
    #[error("triangle {tri} side {side}: target triangle {target} out of range")]
    DanglingTarget {
        tri: usize,
        side: usize,
        target: usize,
    },
    #[error("triangle {tri} side {side} is glued to itself")]
    SelfGluedSide { tri: usize, side: usize },
    #[error("triangle {tri} side {side}: gluing is not an involution")]
    NonInvolutive { tri: usize, side: usize },
    #[error("surface triangulation is not connected")]
    Disconnected,
    #[error("triangular number {0} is not positive; no ideal triangulation exists")]
    NonPositiveTriangularNumber(i64),
    #[error("edge {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("edge {0} has the same triangle on both sides")]
    SelfAdjacentEdge(usize),
    #[error("flip word is empty")]
    EmptyWord,
    #[error("flip word letter {0:?} is not R or L")]
    BadLetter(char),
    #[error("no simplicial isomorphism closes the flip sequence")]
    NoClosingMap,
    #[error("closing map is not a simplicial isomorphism onto the base")]
    BadClosingMap,
}

/// Gluing of one triangle side: target triangle and vertex permutation; the
/// target side is `perm(side)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SideGluing {
    pub tri: usize,
    pub perm: Perm3,
}

/// A map from the triangles of one surface triangulation onto another:
/// triangle `s` goes to `(target, labels of s -> labels of target)`.
pub type Relabeling = Vec<(usize, Perm3)>;

/// A side as `(triangle, side)`.
type Side = (usize, usize);

/// A new gluing between two sides of the rebuilt triangulation.
type InternalGluing = (Side, Side, Perm3);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceIdealTri {
    gluings: Vec<[SideGluing; 3]>,
}

/// An ordered list of edges to flip, each index referring to the
/// triangulation reached by the previous flips, with an optional relabeling
/// of the final triangulation onto a target.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipSequence {
    pub flips: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closing: Option<Relabeling>,
}

/// Where the vertices of the two new triangles of a flip came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlipTrace {
    /// Edge index of the new diagonal in the flipped triangulation.
    pub new_edge: usize,
    /// The two rebuilt triangles (same indices as the two old ones).
    pub tris: [usize; 2],
    /// For each rebuilt triangle and label, the old (triangle, label).
    pub origin: [[(usize, usize); 3]; 2],
}

/// Triangular number `-2 χ + (boundary arcs outside the ideal region)`.
pub fn triangular_number(euler_char: i64, boundary_arc_count: u64) -> i64 {
    -2 * euler_char + boundary_arc_count as i64
}

fn other_two(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

fn p3(images: [u8; 3]) -> Perm3 {
    Perm3::new(images).expect("valid permutation")
}

/// Orientation-reversing gluing of side `s` of one counterclockwise triangle
/// onto side `t` of another.
pub(crate) fn oriented_gluing(s: usize, t: usize) -> Perm3 {
    let mut images = [0u8; 3];
    images[s] = t as u8;
    images[(s + 1) % 3] = ((t + 2) % 3) as u8;
    images[(s + 2) % 3] = ((t + 1) % 3) as u8;
    p3(images)
}

/// Assembles gluings from a list of side pairs glued orientation-reversingly.
pub(crate) fn from_side_pairs(
    count: usize,
    pairs: &[(Side, Side)],
) -> Result<SurfaceIdealTri, SurfaceError> {
    let placeholder = SideGluing {
        tri: usize::MAX,
        perm: Perm3::identity(),
    };
    let mut gluings = vec![[placeholder; 3]; count];
    for &((a, s), (b, t)) in pairs {
        gluings[a][s] = SideGluing {
            tri: b,
            perm: oriented_gluing(s, t),
        };
        gluings[b][t] = SideGluing {
            tri: a,
            perm: oriented_gluing(t, s),
        };
    }
    SurfaceIdealTri::new(gluings)
}

impl SurfaceIdealTri {
    pub fn new(gluings: Vec<[SideGluing; 3]>) -> Result<Self, SurfaceError> {
        let n = gluings.len();
        if n == 0 {
            return Err(SurfaceError::Empty);
        }
        for (t, sides) in gluings.iter().enumerate() {
            for (s, g) in sides.iter().enumerate() {
                if g.tri >= n {
                    return Err(SurfaceError::DanglingTarget {
                        tri: t,
                        side: s,
                        target: g.tri,
                    });
                }
            }
        }
        for (t, sides) in gluings.iter().enumerate() {
            for (s, g) in sides.iter().enumerate() {
                let ts = g.perm.apply(s);
                if g.tri == t && ts == s {
                    return Err(SurfaceError::SelfGluedSide { tri: t, side: s });
                }
                let back = gluings[g.tri][ts];
                if back.tri != t || back.perm != g.perm.inverse() {
                    return Err(SurfaceError::NonInvolutive { tri: t, side: s });
                }
            }
        }
        let tri = SurfaceIdealTri { gluings };
        if !tri.is_connected() {
            return Err(SurfaceError::Disconnected);
        }
        Ok(tri)
    }

    /// Standard triangulation of the surface of genus `genus` with
    /// `punctures` punctures: a fan-triangulated 4g-gon (or a doubled
    /// polygon in genus 0), then one stellar subdivision per extra puncture.
    pub fn punctured_surface(genus: usize, punctures: usize) -> Result<Self, SurfaceError> {
        let chi = 2 - 2 * genus as i64 - punctures as i64;
        let t = triangular_number(chi, 0);
        if punctures == 0 || t <= 0 {
            return Err(SurfaceError::NonPositiveTriangularNumber(t));
        }
        let mut surf = if genus == 0 {
            // Two fan-triangulated `punctures`-gons glued along their boundary.
            let p = punctures;
            let k = p - 2;
            let top = |i: usize| i;
            let bot = |i: usize| k + i;
            let mut pairs = Vec::new();
            for i in 0..k {
                pairs.push(((top(i), 0), (bot(i), 0)));
                if i + 1 < k {
                    pairs.push(((top(i), 1), (top(i + 1), 2)));
                    pairs.push(((bot(i), 2), (bot(i + 1), 1)));
                }
            }
            pairs.push(((top(0), 2), (bot(0), 1)));
            pairs.push(((top(k - 1), 1), (bot(k - 1), 2)));
            from_side_pairs(2 * k, &pairs)?
        } else {
            // Fan from vertex 0 of the 4g-gon with boundary word a b a^-1 b^-1 ...
            let sides = 4 * genus;
            let k = sides - 2;
            let boundary = |e: usize| -> (usize, usize) {
                if e == 0 {
                    (0, 2)
                } else if e == sides - 1 {
                    (k - 1, 1)
                } else {
                    (e - 1, 0)
                }
            };
            let mut pairs = Vec::new();
            for i in 0..k - 1 {
                pairs.push(((i, 1), (i + 1, 2)));
            }
            for b in 0..genus {
                pairs.push((boundary(4 * b), boundary(4 * b + 2)));
                pairs.push((boundary(4 * b + 1), boundary(4 * b + 3)));
            }
            from_side_pairs(k, &pairs)?
        };
        for _ in 1..punctures.max(1) {
            if genus == 0 {
                break;
            }
            surf = surf.stellar_subdivide(0);
        }
        Ok(surf)
    }

    /// Cones triangle `t` to a new puncture, replacing it by three triangles.
    fn stellar_subdivide(&self, t: usize) -> SurfaceIdealTri {
        let n = self.triangle_count();
        let new_ids = [t, n, n + 1];
        let mut remap: HashMap<(usize, usize), (usize, usize, Perm3)> = HashMap::new();
        for s in 0..3 {
            remap.insert(
                (t, s),
                (
                    new_ids[s],
                    0,
                    p3([s as u8, ((s + 1) % 3) as u8, ((s + 2) % 3) as u8]),
                ),
            );
        }
        let internal: Vec<InternalGluing> = (0..3)
            .map(|s| {
                (
                    (new_ids[s], 1),
                    (new_ids[(s + 1) % 3], 2),
                    oriented_gluing(1, 2),
                )
            })
            .collect();
        self.rebuild(n + 2, &remap, &internal, &[])
    }

    /// Rebuilds gluings after replacing some triangles. `remap` sends old
    /// sides to (new triangle, new side, new labels -> old labels); sides not
    /// listed keep their triangle and labels. Sides in `skip` are dropped and
    /// `internal` adds new gluings.
    fn rebuild(
        &self,
        count: usize,
        remap: &HashMap<(usize, usize), (usize, usize, Perm3)>,
        internal: &[InternalGluing],
        skip: &[(usize, usize)],
    ) -> SurfaceIdealTri {
        let lookup = |t: usize, s: usize| -> (usize, usize, Perm3) {
            remap
                .get(&(t, s))
                .copied()
                .unwrap_or((t, s, Perm3::identity()))
        };
        let placeholder = SideGluing {
            tri: usize::MAX,
            perm: Perm3::identity(),
        };
        let mut gluings = vec![[placeholder; 3]; count];
        for (t, sides) in self.gluings.iter().enumerate() {
            for (s, g) in sides.iter().enumerate() {
                if skip.contains(&(t, s)) {
                    continue;
                }
                let (nt, ns, sigma) = lookup(t, s);
                let (nt2, _, sigma2) = lookup(g.tri, g.perm.apply(s));
                gluings[nt][ns] = SideGluing {
                    tri: nt2,
                    perm: sigma.then(&g.perm).then(&sigma2.inverse()),
                };
            }
        }
        for &((a, s), (b, t), perm) in internal {
            gluings[a][s] = SideGluing { tri: b, perm };
            gluings[b][t] = SideGluing {
                tri: a,
                perm: perm.inverse(),
            };
        }
        SurfaceIdealTri::new(gluings).expect("rebuild preserves validity")
    }

    pub fn triangle_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tri: usize, side: usize) -> SideGluing {
        self.gluings[tri][side]
    }

    pub fn gluings(&self) -> &[[SideGluing; 3]] {
        &self.gluings
    }

    fn is_connected(&self) -> bool {
        let n = self.triangle_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            for g in &self.gluings[t] {
                if !seen[g.tri] {
                    seen[g.tri] = true;
                    stack.push(g.tri);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Edges as pairs of sides, indexed by first appearance in (triangle,
    /// side) order; the first side listed is the smaller one.
    pub fn edges(&self) -> Vec<((usize, usize), (usize, usize))> {
        let mut out = Vec::with_capacity(3 * self.triangle_count() / 2);
        for (t, sides) in self.gluings.iter().enumerate() {
            for (s, g) in sides.iter().enumerate() {
                let other = (g.tri, g.perm.apply(s));
                if (t, s) < other {
                    out.push(((t, s), other));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        3 * self.triangle_count() / 2
    }

    /// Edge index of the edge containing side `side` of triangle `tri`.
    pub fn edge_of_side(&self, tri: usize, side: usize) -> usize {
        self.edges()
            .iter()
            .position(|&(a, b)| a == (tri, side) || b == (tri, side))
            .expect("every side lies on an edge")
    }

    /// Number of punctures (ideal vertex classes).
    pub fn puncture_count(&self) -> usize {
        let n = self.triangle_count();
        let mut uf = UnionFind::new(3 * n);
        for (t, sides) in self.gluings.iter().enumerate() {
            for (s, g) in sides.iter().enumerate() {
                for l in (0..3).filter(|&l| l != s) {
                    uf.union(3 * t + l, 3 * g.tri + g.perm.apply(l));
                }
            }
        }
        uf.labels().0
    }

    /// Euler characteristic of the punctured surface, `F - E`.
    pub fn euler_characteristic(&self) -> i64 {
        self.triangle_count() as i64 - self.edge_count() as i64
    }

    /// Whether all triangles can be oriented so every gluing reverses orientation.
    pub fn is_orientable(&self) -> bool {
        let n = self.triangle_count();
        let mut sign: Vec<Option<bool>> = vec![None; n];
        sign[0] = Some(true);
        let mut stack = vec![0];
        while let Some(t) = stack.pop() {
            let st = sign[t].unwrap();
            for g in &self.gluings[t] {
                let want = if g.perm.is_odd() { st } else { !st };
                match sign[g.tri] {
                    None => {
                        sign[g.tri] = Some(want);
                        stack.push(g.tri);
                    }
                    Some(s) if s != want => return false,
                    Some(_) => {}
                }
            }
        }
        true
    }

    /// Flips `edge`: the two triangles on either side form a square which is
    /// re-divided along its other diagonal.
    pub fn apply_flip(&self, edge: usize) -> Result<SurfaceIdealTri, SurfaceError> {
        self.apply_flip_traced(edge).map(|(t, _)| t)
    }

    pub fn apply_flip_traced(
        &self,
        edge: usize,
    ) -> Result<(SurfaceIdealTri, FlipTrace), SurfaceError> {
        let edges = self.edges();
        let &((a_tri, i), (b_tri, _)) =
            edges.get(edge).ok_or(SurfaceError::EdgeOutOfRange(edge))?;
        if a_tri == b_tri {
            return Err(SurfaceError::SelfAdjacentEdge(edge));
        }
        let q = self.gluings[a_tri][i].perm;
        let (a1, a2) = other_two(i);
        let j = q.apply(i);
        let (b1, b2) = (q.apply(a1), q.apply(a2));
        let (x, y) = (a_tri, b_tri);
        let u = |v: usize| v as u8;

        // Square i, a1, j, a2. New X = (i, a1, j), Y = (i, j, a2).
        let mut remap = HashMap::new();
        remap.insert((a_tri, a2), (x, 2, p3([u(i), u(a1), u(a2)])));
        remap.insert((b_tri, b2), (x, 0, p3([u(b2), u(b1), u(j)])));
        remap.insert((b_tri, b1), (y, 0, p3([u(b1), u(j), u(b2)])));
        remap.insert((a_tri, a1), (y, 1, p3([u(i), u(a1), u(a2)])));
        let internal = [((x, 1), (y, 2), p3([0, 2, 1]))];
        // The flipped edge's own sides are replaced by the new diagonal.
        let rebuilt = self.rebuild(
            self.triangle_count(),
            &remap,
            &internal,
            &[(a_tri, i), (b_tri, j)],
        );
        let new_edge = rebuilt.edge_of_side(x, 1);
        let trace = FlipTrace {
            new_edge,
            tris: [x, y],
            origin: [
                [(a_tri, i), (a_tri, a1), (b_tri, j)],
                [(a_tri, i), (b_tri, j), (a_tri, a2)],
            ],
        };
        Ok((rebuilt, trace))
    }

    /// Breadth-first relabeling starting from triangle `start`, whose new
    /// label `l` is old label `labels(l)`. Each newly reached neighbour is
    /// labeled so that the gluing reaching it becomes the identity.
    fn relabel_from(&self, start: usize, labels: Perm3) -> (SurfaceIdealTri, Relabeling) {
        let n = self.triangle_count();
        let mut new_index = vec![usize::MAX; n];
        // new label -> old label, per old triangle
        let mut lambda = vec![Perm3::identity(); n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        new_index[start] = 0;
        lambda[start] = labels;
        order.push(start);
        queue.push_back(start);
        while let Some(t) = queue.pop_front() {
            for s in 0..3 {
                let old_side = lambda[t].apply(s);
                let g = self.gluings[t][old_side];
                if new_index[g.tri] == usize::MAX {
                    new_index[g.tri] = order.len();
                    lambda[g.tri] = lambda[t].then(&g.perm);
                    order.push(g.tri);
                    queue.push_back(g.tri);
                }
            }
        }
        let gluings = order
            .iter()
            .map(|&t| {
                std::array::from_fn(|s| {
                    let g = self.gluings[t][lambda[t].apply(s)];
                    SideGluing {
                        tri: new_index[g.tri],
                        perm: lambda[t].then(&g.perm).then(&lambda[g.tri].inverse()),
                    }
                })
            })
            .collect();
        // old triangle -> (new triangle, old labels -> new labels)
        let map = (0..n)
            .map(|t| (new_index[t], lambda[t].inverse()))
            .collect();
        (SurfaceIdealTri { gluings }, map)
    }

    /// Lexicographically least breadth-first relabeling over all starting
    /// triangles and starting labelings; equal exactly for isomorphic inputs.
    pub fn canonical(&self) -> SurfaceIdealTri {
        let mut best: Option<SurfaceIdealTri> = None;
        for start in 0..self.triangle_count() {
            for labels in Perm3::all() {
                let (cand, _) = self.relabel_from(start, labels);
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        best.unwrap()
    }

    pub fn is_isomorphic(&self, other: &SurfaceIdealTri) -> bool {
        self.triangle_count() == other.triangle_count() && self.canonical() == other.canonical()
    }

    /// Every simplicial isomorphism from `self` onto `other`.
    pub fn isomorphisms(&self, other: &SurfaceIdealTri) -> Vec<Relabeling> {
        if self.triangle_count() != other.triangle_count() {
            return Vec::new();
        }
        let (mine, to_mine) = self.relabel_from(0, Perm3::identity());
        let mut out = Vec::new();
        for start in 0..other.triangle_count() {
            for labels in Perm3::all() {
                let (theirs, to_theirs) = other.relabel_from(start, labels);
                if theirs != mine {
                    continue;
                }
                // Compose self -> canonical -> other.
                let mut back = vec![(0, Perm3::identity()); other.triangle_count()];
                for (t, &(nt, rho)) in to_theirs.iter().enumerate() {
                    back[nt] = (t, rho.inverse());
                }
                out.push(
                    to_mine
                        .iter()
                        .map(|&(nt, rho)| {
                            let (t, rho2) = back[nt];
                            (t, rho.then(&rho2))
                        })
                        .collect(),
                );
            }
        }
        out
    }

    /// Whether `map` is a simplicial isomorphism from `self` onto `other`.
    pub fn check_isomorphism(&self, other: &SurfaceIdealTri, map: &[(usize, Perm3)]) -> bool {
        let n = self.triangle_count();
        if map.len() != n || other.triangle_count() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &(t, _) in map {
            if t >= n || hit[t] {
                return false;
            }
            hit[t] = true;
        }
        self.gluings.iter().enumerate().all(|(t, sides)| {
            sides.iter().enumerate().all(|(s, g)| {
                let (u, rho) = map[t];
                let (u2, rho2) = map[g.tri];
                other.gluings[u][rho.apply(s)]
                    == SideGluing {
                        tri: u2,
                        perm: rho.inverse().then(&g.perm).then(&rho2),
                    }
            })
        })
    }

    /// Applies the flips of `seq` in order.
    pub fn apply_flips(&self, flips: &[usize]) -> Result<SurfaceIdealTri, SurfaceError> {
        flips.iter().try_fold(self.clone(), |t, &e| t.apply_flip(e))
    }
}

/// Shortest flip sequence from `a` to a triangulation isomorphic to `b`,
/// searching breadth-first over isomorphism classes and expanding edges in
/// index order. The closing relabeling maps the end of the path onto `b`.
pub fn flip_path_bfs(
    a: &SurfaceIdealTri,
    b: &SurfaceIdealTri,
    max_depth: usize,
) -> Option<FlipSequence> {
    if a.triangle_count() != b.triangle_count() {
        return None;
    }
    let target = b.canonical();
    // canonical form -> (representative, parent canonical, edge flipped in parent's representative)
    let mut visited: HashMap<SurfaceIdealTri, (SurfaceIdealTri, Option<(SurfaceIdealTri, usize)>)> =
        HashMap::new();
    let start = a.canonical();
    visited.insert(start.clone(), (a.clone(), None));
    let mut frontier = vec![start];
    let mut found = None;
    for depth in 0..=max_depth {
        if let Some(hit) = frontier.iter().find(|c| **c == target) {
            found = Some(hit.clone());
            break;
        }
        if depth == max_depth {
            break;
        }
        let mut next = Vec::new();
        for key in &frontier {
            let rep = visited[key].0.clone();
            for e in 0..rep.edge_count() {
                let Ok(flipped) = rep.apply_flip(e) else {
                    continue;
                };
                let canon = flipped.canonical();
                if !visited.contains_key(&canon) {
                    visited.insert(canon.clone(), (flipped, Some((key.clone(), e))));
                    next.push(canon);
                }
            }
        }
        frontier = next;
    }
    let mut key = found?;
    let end = visited[&key].0.clone();
    let mut flips = Vec::new();
    while let Some((parent, e)) = visited[&key].1.clone() {
        flips.push(e);
        key = parent;
    }
    flips.reverse();
    let closing = end.isomorphisms(b).into_iter().next();
    Some(FlipSequence { flips, closing })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangular_numbers() {
        assert_eq!(triangular_number(-1, 0), 2);
        assert_eq!(triangular_number(1, 0), -2);
        assert_eq!(triangular_number(-2, 3), 7);
    }

    #[test]
    fn standard_surfaces_have_expected_triangle_counts() {
        for (g, p) in [
            (0, 3),
            (0, 4),
            (0, 5),
            (1, 1),
            (1, 2),
            (1, 3),
            (2, 1),
            (2, 2),
        ] {
            let s = SurfaceIdealTri::punctured_surface(g, p).unwrap();
            let chi = 2 - 2 * g as i64 - p as i64;
            assert_eq!(
                s.triangle_count() as i64,
                triangular_number(chi, 0),
                "g={g} p={p}"
            );
            assert_eq!(s.euler_characteristic(), chi);
            assert_eq!(s.puncture_count(), p, "g={g} p={p}");
            assert!(s.is_orientable());
        }
        assert_eq!(
            SurfaceIdealTri::punctured_surface(0, 2),
            Err(SurfaceError::NonPositiveTriangularNumber(0))
        );
        assert!(SurfaceIdealTri::punctured_surface(0, 1).is_err());
    }

    #[test]
    fn flip_preserves_counts_and_reflip_is_identity() {
        let s = SurfaceIdealTri::punctured_surface(1, 2).unwrap();
        for e in 0..s.edge_count() {
            let Ok((f, trace)) = s.apply_flip_traced(e) else {
                continue;
            };
            assert_eq!(f.triangle_count(), s.triangle_count());
            assert_eq!(f.edge_count(), s.edge_count());
            assert_eq!(f.puncture_count(), s.puncture_count());
            let back = f.apply_flip(trace.new_edge).unwrap();
            assert!(back.is_isomorphic(&s));
        }
    }

    #[test]
    fn self_adjacent_edge_cannot_flip() {
        let s = SurfaceIdealTri::punctured_surface(0, 3).unwrap();
        // Thrice-punctured sphere: two triangles, every edge between them.
        assert!((0..3).all(|e| s.apply_flip(e).is_ok()));
        let flipped = s.apply_flip(0).unwrap();
        let bad = flipped
            .edges()
            .iter()
            .position(|&((a, _), (b, _))| a == b)
            .expect("flip of thrice-punctured sphere creates a self-adjacent edge");
        assert_eq!(
            flipped.apply_flip(bad),
            Err(SurfaceError::SelfAdjacentEdge(bad))
        );
        assert_eq!(s.apply_flip(9), Err(SurfaceError::EdgeOutOfRange(9)));
    }

    #[test]
    fn bfs_trivial_distances() {
        let s = SurfaceIdealTri::punctured_surface(1, 2).unwrap();
        let seq = flip_path_bfs(&s, &s, 3).unwrap();
        assert!(seq.flips.is_empty());
        let f = s.apply_flip(0).unwrap();
        let seq = flip_path_bfs(&s, &f, 3).unwrap();
        assert!(seq.flips.len() <= 1);
        let end = s.apply_flips(&seq.flips).unwrap();
        assert!(end.check_isomorphism(&f, seq.closing.as_ref().unwrap()));
    }

    #[test]
    fn isomorphisms_are_valid() {
        let s = SurfaceIdealTri::punctured_surface(1, 1).unwrap();
        let isos = s.isomorphisms(&s);
        assert!(!isos.is_empty());
        for iso in &isos {
            assert!(s.check_isomorphism(&s, iso));
        }
    }
}
