//! Exact planar model of one truncated taut tetrahedron and the discs whose
//! boundaries run across its boundary sphere.
//!
//! The boundary sphere is cut into four hexagons `H_f` (truncated faces) and
//! four triangles `T_v` (truncated vertices). Its 1-cells are the six
//! truncated edges, numbered by edge index `0..6`, and the twelve triangle
//! sides `s(v, f) = T_v ∩ H_f`, numbered `6..18`. Hexagon coordinates are
//! integers (everything is scaled by 2), so all midpoints are lattice points.

mod enumerate;
mod gdot;

pub use enumerate::{enumerate_admissible_discs, DiscPattern};
pub use gdot::{
    arc_table, check_prop12_suite, g_dot, ArcContribution, ArcTypeRow, AreaBoundReport,
    AreaBoundViolation,
};

use serde::Serialize;
use thiserror::Error;

use crate::taut::tet_angles;
use crate::tri::{edge_index, EDGE_VERTICES};

pub type Point = (i64, i64);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiscError {
    #[error("tetrahedron does not have two in-faces and two out-faces")]
    NotTautTet,
    #[error("disc pattern is not admissible: {0}")]
    NotAdmissible(String),
}

pub const ONE_CELL_COUNT: usize = 18;

/// A 2-cell of the boundary sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Cell {
    Hexagon(usize),
    Triangle(usize),
}

/// 1-cell id of the triangle side `s(v, f)`.
pub fn side_cell(v: usize, f: usize) -> usize {
    debug_assert!(v != f && v < 4 && f < 4);
    6 + 3 * v + if f > v { f - 1 } else { f }
}

/// Decodes a triangle side id into `(v, f)`.
pub fn side_of_cell(cell: usize) -> Option<(usize, usize)> {
    let k = cell.checked_sub(6).filter(|&k| k < 12)?;
    let (v, r) = (k / 3, k % 3);
    Some((v, if r >= v { r + 1 } else { r }))
}

/// Vertex cycle of face `f` in the orientation induced on the boundary.
pub fn face_cycle(f: usize) -> [usize; 3] {
    match f {
        0 => [1, 2, 3],
        1 => [0, 3, 2],
        2 => [0, 1, 3],
        _ => [0, 2, 1],
    }
}

const HEX_VERTICES: [Point; 6] = [(4, 0), (2, 4), (-2, 4), (-4, 0), (-2, -4), (2, -4)];
const TRI_VERTICES: [Point; 3] = [(0, 0), (4, 0), (0, 4)];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hexagon {
    pub face: usize,
    /// Whether the transverse orientation points out of the tetrahedron here.
    pub out: bool,
    /// 1-cells in counterclockwise order: truncated edge, triangle side, ...
    pub sides: [usize; 6],
    pub vertices: [Point; 6],
    pub centre: Point,
    /// Side positions (into `sides`) of the two zero-angle truncated edges.
    pub zero_sides: [usize; 2],
    /// Side position of the π truncated edge.
    pub pi_side: usize,
}

impl Hexagon {
    pub fn midpoint(&self, side: usize) -> Point {
        let (p, q) = (self.vertices[side], self.vertices[(side + 1) % 6]);
        ((p.0 + q.0) / 2, (p.1 + q.1) / 2)
    }

    pub fn position(&self, cell: usize) -> Option<usize> {
        self.sides.iter().position(|&c| c == cell)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleCell {
    pub vertex: usize,
    /// Sides `s(vertex, f)` in counterclockwise order.
    pub sides: [usize; 3],
    pub vertices: [Point; 3],
}

/// One of the four arcs `α_i`: from the centre of the in-face hexagon to the
/// midpoint of the zero-angle edge `e_i`, then on to the centre of the
/// out-face hexagon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaArc {
    pub edge: usize,
    pub in_face: usize,
    pub out_face: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedModel {
    pub flags: [bool; 4],
    pub angles: [u8; 6],
    pub pi_edges: [usize; 2],
    pub zero_edges: [usize; 4],
    pub hexagons: [Hexagon; 4],
    pub triangles: [TriangleCell; 4],
    pub alphas: [AlphaArc; 4],
}

impl TruncatedModel {
    /// Model of a tetrahedron with the given out flags per face.
    pub fn build(flags: [bool; 4]) -> Result<Self, DiscError> {
        if flags.iter().filter(|&&o| o).count() != 2 {
            return Err(DiscError::NotTautTet);
        }
        let angles = tet_angles(flags);
        let pi: Vec<usize> = (0..6).filter(|&e| angles[e] == 1).collect();
        let zero: Vec<usize> = (0..6).filter(|&e| angles[e] == 0).collect();
        let hexagons = std::array::from_fn(|f| {
            let [x, y, z] = face_cycle(f);
            let sides = [
                edge_index(x, y),
                side_cell(y, f),
                edge_index(y, z),
                side_cell(z, f),
                edge_index(z, x),
                side_cell(x, f),
            ];
            let zero_sides: Vec<usize> = [0, 2, 4]
                .into_iter()
                .filter(|&k| angles[sides[k]] == 0)
                .collect();
            let pi_side = [0, 2, 4]
                .into_iter()
                .find(|&k| angles[sides[k]] == 1)
                .expect("one π edge per face");
            Hexagon {
                face: f,
                out: flags[f],
                sides,
                vertices: HEX_VERTICES,
                centre: (0, 0),
                zero_sides: [zero_sides[0], zero_sides[1]],
                pi_side,
            }
        });
        let triangles = std::array::from_fn(|v| {
            // A triangle carries at most one arc of an embedded curve, so its
            // side order never matters.
            let others: Vec<usize> = (0..4).filter(|&f| f != v).collect();
            TriangleCell {
                vertex: v,
                sides: [
                    side_cell(v, others[0]),
                    side_cell(v, others[1]),
                    side_cell(v, others[2]),
                ],
                vertices: TRI_VERTICES,
            }
        });
        let alphas = std::array::from_fn(|i| {
            let e = zero[i];
            let (a, b) = EDGE_VERTICES[e];
            let (c, d) = crate::tri::complement(a, b);
            let (in_face, out_face) = if flags[c] { (d, c) } else { (c, d) };
            AlphaArc {
                edge: e,
                in_face,
                out_face,
            }
        });
        Ok(TruncatedModel {
            flags,
            angles,
            pi_edges: [pi[0], pi[1]],
            zero_edges: [zero[0], zero[1], zero[2], zero[3]],
            hexagons,
            triangles,
            alphas,
        })
    }

    /// The two 2-cells on either side of a 1-cell.
    pub fn cells_of(&self, one_cell: usize) -> (Cell, Cell) {
        match side_of_cell(one_cell) {
            Some((v, f)) => (Cell::Hexagon(f), Cell::Triangle(v)),
            None => {
                let (a, b) = EDGE_VERTICES[one_cell];
                let (c, d) = crate::tri::complement(a, b);
                (Cell::Hexagon(c), Cell::Hexagon(d))
            }
        }
    }

    pub fn other_cell(&self, one_cell: usize, cell: Cell) -> Cell {
        let (x, y) = self.cells_of(one_cell);
        if x == cell {
            y
        } else {
            x
        }
    }

    /// The 1-cells bounding a 2-cell, in cyclic order.
    pub fn boundary(&self, cell: Cell) -> &[usize] {
        match cell {
            Cell::Hexagon(f) => &self.hexagons[f].sides,
            Cell::Triangle(v) => &self.triangles[v].sides,
        }
    }

    /// Whether a 1-cell is a truncated edge with interior angle 0.
    pub fn is_zero_edge(&self, one_cell: usize) -> bool {
        one_cell < 6 && self.angles[one_cell] == 0
    }
}

fn pattern_on(model: &TruncatedModel, cells: &mut [usize], max_cusps: usize) -> DiscPattern {
    cells.sort_unstable();
    enumerate_admissible_discs(model, max_cusps)
        .into_iter()
        .find(|p| {
            let mut c = p.crossings.clone();
            c.sort_unstable();
            c == cells
        })
        .expect("pattern exists in every taut model")
}

/// The disc cutting off ideal vertex `v`: it crosses the three truncated
/// edges at `v`.
pub fn vertex_linking_pattern(model: &TruncatedModel, v: usize) -> DiscPattern {
    let mut cells: Vec<usize> = (0..4)
        .filter(|&w| w != v)
        .map(|w| edge_index(v, w))
        .collect();
    pattern_on(model, &mut cells, 2)
}

/// The disc parallel to face `f`: it crosses the six triangle sides of the
/// other three hexagons that meet the vertices of `f`.
pub fn face_parallel_pattern(model: &TruncatedModel, f: usize) -> DiscPattern {
    let mut cells = Vec::with_capacity(6);
    for v in (0..4).filter(|&v| v != f) {
        for g in (0..4).filter(|&g| g != f && g != v) {
            cells.push(side_cell(v, g));
        }
    }
    pattern_on(model, &mut cells, 3)
}

/// Total combinatorial area, in units of π, of the carried surface with
/// weights `w`, each sheet pushed into the tetrahedron on the primary side
/// of its face as a face-parallel disc.
pub fn carried_area(
    tri: &crate::tri::IdealTriangulation,
    coor: &crate::taut::Coorientation,
    w: &[u64],
) -> Result<i64, DiscError> {
    let flags = coor.tet_flags(tri);
    let mut total = 0i64;
    for (k, fc) in tri.face_classes().iter().enumerate() {
        if w[k] == 0 {
            continue;
        }
        let model = TruncatedModel::build(flags[fc.primary.tet])?;
        total += w[k] as i64 * face_parallel_pattern(&model, fc.primary.face).area(&model);
    }
    Ok(total)
}

/// Area, in units of π, of each cusp torus tiled by vertex-linking discs.
pub fn cusp_areas(
    tri: &crate::tri::IdealTriangulation,
    coor: &crate::taut::Coorientation,
) -> Result<Vec<i64>, DiscError> {
    let flags = coor.tet_flags(tri);
    let (count, vclass) = tri.vertex_class_index();
    let mut areas = vec![0i64; count];
    for (t, f) in flags.iter().enumerate() {
        let model = TruncatedModel::build(*f)?;
        for v in 0..4 {
            areas[vclass[t][v]] += vertex_linking_pattern(&model, v).area(&model);
        }
    }
    Ok(areas)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn taut_flag_sets() -> Vec<[bool; 4]> {
        (0u8..16)
            .filter(|m| m.count_ones() == 2)
            .map(|m| std::array::from_fn(|f| (m >> f) & 1 == 1))
            .collect()
    }

    #[test]
    fn side_ids_round_trip() {
        let mut seen = [false; ONE_CELL_COUNT];
        for v in 0..4 {
            for f in (0..4).filter(|&f| f != v) {
                let c = side_cell(v, f);
                assert_eq!(side_of_cell(c), Some((v, f)));
                assert!(!seen[c]);
                seen[c] = true;
            }
        }
        assert!(seen[6..].iter().all(|&s| s));
        assert_eq!(side_of_cell(3), None);
    }

    #[test]
    fn model_structure() {
        for flags in taut_flag_sets() {
            let m = TruncatedModel::build(flags).unwrap();
            assert_eq!(m.zero_edges.len(), 4);
            assert_eq!(m.pi_edges[0] + m.pi_edges[1], 5);
            for h in &m.hexagons {
                // Sides alternate truncated edge / triangle side.
                for (k, &c) in h.sides.iter().enumerate() {
                    assert_eq!(c < 6, k % 2 == 0);
                    assert!(m
                        .boundary(m.other_cell(c, Cell::Hexagon(h.face)))
                        .contains(&c));
                }
                let alphas_here = m
                    .alphas
                    .iter()
                    .filter(|a| a.in_face == h.face || a.out_face == h.face)
                    .count();
                assert_eq!(alphas_here, 2);
                for k in 0..6 {
                    let (p, q) = (h.vertices[k], h.vertices[(k + 1) % 6]);
                    assert_eq!((p.0 + q.0) % 2, 0);
                    assert_eq!((p.1 + q.1) % 2, 0);
                }
            }
            for a in &m.alphas {
                assert_ne!(a.in_face, a.out_face);
                assert!(!m.flags[a.in_face] && m.flags[a.out_face]);
            }
            // Each truncated edge appears in two hexagons with opposite
            // directions, so the hexagon orientations agree.
            for e in 0..6 {
                let (a, b) = EDGE_VERTICES[e];
                let dirs: Vec<bool> = (0..4)
                    .filter_map(|f| {
                        let cyc = face_cycle(f);
                        (0..3).find_map(|k| {
                            let (x, y) = (cyc[k], cyc[(k + 1) % 3]);
                            if (x, y) == (a, b) {
                                Some(true)
                            } else if (x, y) == (b, a) {
                                Some(false)
                            } else {
                                None
                            }
                        })
                    })
                    .collect();
                assert_eq!(dirs.len(), 2);
                assert_ne!(dirs[0], dirs[1]);
            }
        }
        assert_eq!(TruncatedModel::build([true; 4]), Err(DiscError::NotTautTet));
    }

    #[test]
    fn figure_eight_areas() {
        use crate::layering::{build_mapping_torus, MonodromySpec};
        let l = build_mapping_torus(&MonodromySpec::from_ptorus_word("RL").unwrap()).unwrap();
        assert_eq!(cusp_areas(&l.tri, &l.coor).unwrap(), vec![0]);
        let fiber = l.fiber_weights(0).unwrap();
        assert_eq!(carried_area(&l.tri, &l.coor, &fiber).unwrap(), 2);
        for flags in taut_flag_sets() {
            let m = TruncatedModel::build(flags).unwrap();
            for v in 0..4 {
                assert_eq!(vertex_linking_pattern(&m, v).cusp_count(&m), 2);
                assert_eq!(face_parallel_pattern(&m, v).cusp_count(&m), 3);
            }
        }
    }
}
