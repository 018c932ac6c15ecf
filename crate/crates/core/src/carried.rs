//! Surfaces carried by the branched surface of a taut triangulation: switch
//! equations, bounded enumeration of their solutions, Euler characteristic,
//! the pairing with the dual cycle, and sheet-by-sheet reconstruction.

use serde::Serialize;
use thiserror::Error;

use crate::taut::{check_full_taut, corner_angles, Coorientation, DualCycle, TautError};
use crate::tri::{IdealTriangulation, UnionFind};

/// One non-negative weight per face class.
pub type WeightVector = Vec<u64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CarriedError {
    #[error("coorientation is not taut")]
    NotTaut,
    #[error("total weight {0} is odd")]
    OddTotal(u64),
    #[error("expected {expected} weights, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("weights violate the switch equation at edge class {0}")]
    SwitchViolated(usize),
    #[error("sheet matching failed: {0}")]
    Matching(String),
    #[error(transparent)]
    Taut(#[from] TautError),
}

/// The two sides of one edge class, listed bottom to top: face classes with
/// multiplicity, between the two π corners.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwitchEquation {
    pub edge_class: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// Face occurrences on each side, bottom to top: (face class, position
    /// of the face in the edge's cyclic order).
    #[serde(skip)]
    left_slots: Vec<(usize, usize)>,
    #[serde(skip)]
    right_slots: Vec<(usize, usize)>,
}

impl SwitchEquation {
    /// Left-minus-right multiplicity per face class.
    pub fn coefficients(&self, face_classes: usize) -> Vec<i64> {
        let mut c = vec![0i64; face_classes];
        for &k in &self.left {
            c[k] += 1;
        }
        for &k in &self.right {
            c[k] -= 1;
        }
        c
    }

    pub fn is_satisfied(&self, w: &[u64]) -> bool {
        let side = |s: &[usize]| s.iter().map(|&k| w[k]).sum::<u64>();
        side(&self.left) == side(&self.right)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwitchSystem {
    pub face_class_count: usize,
    pub equations: Vec<SwitchEquation>,
    /// Vertex labels (in the primary tetrahedron of the face class) of the
    /// two ends of each edge occurrence: per edge class, per position.
    #[serde(skip)]
    ends: Vec<Vec<(usize, usize)>>,
}

impl SwitchSystem {
    pub fn is_solution(&self, w: &[u64]) -> bool {
        w.len() == self.face_class_count && self.equations.iter().all(|e| e.is_satisfied(w))
    }
}

/// One equation per edge class. Around an edge the faces `F_j` (entry face
/// of corner `j`) split at the two π corners `p` (both faces out of the
/// corner's tetrahedron) and `q` (both in): the left side is
/// `F_{p+1} .. F_q`, the right side `F_p` down to `F_{q+1}`.
pub fn switch_system(
    tri: &IdealTriangulation,
    coor: &Coorientation,
) -> Result<SwitchSystem, CarriedError> {
    if !check_full_taut(tri, coor) {
        return Err(CarriedError::NotTaut);
    }
    let angles = corner_angles(tri, coor);
    let classes = tri.edge_classes().map_err(TautError::from)?;
    let mut equations = Vec::with_capacity(classes.len());
    let mut ends = Vec::with_capacity(classes.len());
    for (ec, class) in classes.iter().enumerate() {
        let d = class.degree();
        let face_at = |j: usize| {
            let c = class.corners[j % d];
            tri.face_class(c.tet, c.entry_face)
        };
        let mut p = None;
        let mut q = None;
        for (j, c) in class.corners.iter().enumerate() {
            if angles.per_tet[c.tet][c.edge()] == 1 {
                if coor.is_out(tri, c.tet, c.entry_face) {
                    p = Some(j);
                } else {
                    q = Some(j);
                }
            }
        }
        let (p, q) = (
            p.expect("taut edge has an out-out corner"),
            q.expect("taut edge has an in-in corner"),
        );
        let left_slots: Vec<(usize, usize)> = (1..=(q + d - p) % d)
            .map(|s| (p + s) % d)
            .map(|j| (face_at(j), j))
            .collect();
        let right_slots: Vec<(usize, usize)> = (0..(p + d - q) % d)
            .map(|s| (p + d - s) % d)
            .map(|j| (face_at(j), j))
            .collect();
        equations.push(SwitchEquation {
            edge_class: ec,
            left: left_slots.iter().map(|s| s.0).collect(),
            right: right_slots.iter().map(|s| s.0).collect(),
            left_slots,
            right_slots,
        });
        // Edge endpoints carried into the primary tetrahedron of each face.
        ends.push(
            class
                .corners
                .iter()
                .map(|c| {
                    let (a, b) = c.vertices;
                    if tri.is_primary(c.tet, c.entry_face) {
                        (a, b)
                    } else {
                        let g = tri.gluing(c.tet, c.entry_face);
                        (g.perm.apply(a), g.perm.apply(b))
                    }
                })
                .collect(),
        );
    }
    Ok(SwitchSystem {
        face_class_count: tri.face_classes().len(),
        equations,
        ends,
    })
}

/// All non-negative solutions with total weight at most `max_total`, in
/// lexicographic order (the zero vector first).
pub fn enumerate_solutions(system: &SwitchSystem, max_total: u64) -> Vec<WeightVector> {
    let m = system.face_class_count;
    let coeffs: Vec<Vec<i64>> = system.equations.iter().map(|e| e.coefficients(m)).collect();
    // Largest |coefficient| among variables k.. for each equation.
    let tail_max: Vec<Vec<i64>> = coeffs
        .iter()
        .map(|c| {
            let mut t = vec![0i64; m + 1];
            for k in (0..m).rev() {
                t[k] = t[k + 1].max(c[k].abs());
            }
            t
        })
        .collect();

    struct Search<'a> {
        coeffs: &'a [Vec<i64>],
        tail_max: &'a [Vec<i64>],
        residual: Vec<i64>,
        w: Vec<u64>,
        out: Vec<WeightVector>,
    }

    fn rec(s: &mut Search, k: usize, budget: u64) {
        let feasible = s
            .residual
            .iter()
            .zip(s.tail_max)
            .all(|(&r, t)| r.unsigned_abs() <= budget * t[k] as u64);
        if !feasible {
            return;
        }
        if k == s.w.len() {
            s.out.push(s.w.clone());
            return;
        }
        for v in 0..=budget {
            s.w[k] = v;
            for (r, c) in s.residual.iter_mut().zip(s.coeffs) {
                *r += c[k] * v as i64;
            }
            rec(s, k + 1, budget - v);
            for (r, c) in s.residual.iter_mut().zip(s.coeffs) {
                *r -= c[k] * v as i64;
            }
        }
        s.w[k] = 0;
    }

    let mut s = Search {
        coeffs: &coeffs,
        tail_max: &tail_max,
        residual: vec![0; coeffs.len()],
        w: vec![0; m],
        out: Vec::new(),
    };
    rec(&mut s, 0, max_total);
    s.out
}

/// `-(total weight) / 2`.
pub fn euler_char(w: &[u64]) -> Result<i64, CarriedError> {
    let total: u64 = w.iter().sum();
    if total % 2 == 1 {
        return Err(CarriedError::OddTotal(total));
    }
    Ok(-((total / 2) as i64))
}

/// Signed count of crossings of `g` with the carried surface: each face
/// class contributes its weight, positively when `g` crosses it in the
/// direction of the coorientation.
pub fn pairing(tri: &IdealTriangulation, coor: &Coorientation, g: &DualCycle, w: &[u64]) -> i64 {
    g.edges
        .iter()
        .map(|e| {
            let sign = if coor.is_out(tri, e.from, e.from_face) {
                1
            } else {
                -1
            };
            sign * w[e.face_class] as i64
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub triangles: usize,
    pub euler_characteristic: i64,
    pub boundary_curves: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub components: Vec<ComponentReport>,
    /// Boundary curves of the surface on each cusp of the manifold.
    pub boundary_curves_per_cusp: Vec<usize>,
}

impl SurfaceReport {
    pub fn euler_characteristic(&self) -> i64 {
        self.components.iter().map(|c| c.euler_characteristic).sum()
    }
}

/// Builds the carried surface from `w[k]` parallel sheets on each face class.
///
/// At every edge both sides are stacked bottom to top, sheets of one face in
/// increasing sheet order, and the two stacks are glued level by level.
pub fn reconstruct(
    tri: &IdealTriangulation,
    coor: &Coorientation,
    w: &[u64],
) -> Result<SurfaceReport, CarriedError> {
    let system = switch_system(tri, coor)?;
    let m = system.face_class_count;
    if w.len() != m {
        return Err(CarriedError::WrongLength {
            expected: m,
            found: w.len(),
        });
    }
    if let Some(e) = system.equations.iter().find(|e| !e.is_satisfied(w)) {
        return Err(CarriedError::SwitchViolated(e.edge_class));
    }
    let (cusp_count, vclass) = tri.vertex_class_index();
    let mut offset = vec![0usize; m + 1];
    for k in 0..m {
        offset[k + 1] = offset[k] + w[k] as usize;
    }
    let sheets = offset[m];
    if sheets == 0 {
        return Ok(SurfaceReport {
            components: Vec::new(),
            boundary_curves_per_cusp: vec![0; cusp_count],
        });
    }
    let mut sheet_uf = UnionFind::new(sheets);
    // Ideal vertices: slot 4 * sheet + vertex label of the primary tetrahedron.
    let mut vertex_uf = UnionFind::new(4 * sheets);
    let mut side_uses = vec![0u32; 4 * sheets];
    let mut glued_sides = 0usize;

    for (eq, ends) in system.equations.iter().zip(&system.ends) {
        let stack = |slots: &[(usize, usize)]| -> Vec<(usize, (usize, usize))> {
            slots
                .iter()
                .flat_map(|&(k, j)| (offset[k]..offset[k + 1]).map(move |s| (s, ends[j])))
                .collect()
        };
        let left = stack(&eq.left_slots);
        let right = stack(&eq.right_slots);
        if left.len() != right.len() {
            return Err(CarriedError::Matching(format!(
                "edge class {} stacks differ",
                eq.edge_class
            )));
        }
        for ((ls, (la, lb)), (rs, (ra, rb))) in left.into_iter().zip(right) {
            // The side of a sheet is named by the vertex it is opposite to.
            for (s, a, b) in [(ls, la, lb), (rs, ra, rb)] {
                let opposite = (0..4)
                    .find(|&v| v != a && v != b && !is_face_apex(tri, s, &offset, v))
                    .expect("triangle has a third vertex");
                side_uses[4 * s + opposite] += 1;
            }
            sheet_uf.union(ls, rs);
            vertex_uf.union(4 * ls + la, 4 * rs + ra);
            vertex_uf.union(4 * ls + lb, 4 * rs + rb);
            glued_sides += 2;
        }
    }
    if glued_sides != 3 * sheets || side_uses.iter().any(|&u| u > 1) {
        return Err(CarriedError::Matching(
            "some sheet side is not glued exactly once".into(),
        ));
    }

    let (comp_count, comp_of) = sheet_uf.labels();
    let mut components = vec![
        ComponentReport {
            triangles: 0,
            euler_characteristic: 0,
            boundary_curves: 0
        };
        comp_count
    ];
    for s in 0..sheets {
        components[comp_of[s]].triangles += 1;
    }
    for c in &mut components {
        // Every side is glued to exactly one other: E = 3F/2.
        c.euler_characteristic = c.triangles as i64 - (3 * c.triangles / 2) as i64;
    }
    let mut seen = vec![false; 4 * sheets];
    let mut per_cusp = vec![0usize; cusp_count];
    let sheet_face = |s: usize| {
        (0..m)
            .find(|&k| offset[k] <= s && s < offset[k + 1])
            .unwrap()
    };
    for s in 0..sheets {
        let fc = tri.face_classes()[sheet_face(s)].primary;
        for v in (0..4).filter(|&v| v != fc.face) {
            let root = vertex_uf.find(4 * s + v);
            if !seen[root] {
                seen[root] = true;
                components[comp_of[s]].boundary_curves += 1;
                per_cusp[vclass[fc.tet][v]] += 1;
            }
        }
    }
    Ok(SurfaceReport {
        components,
        boundary_curves_per_cusp: per_cusp,
    })
}

/// Whether `v` is the tetrahedron vertex opposite the face carrying sheet `s`.
fn is_face_apex(tri: &IdealTriangulation, s: usize, offset: &[usize], v: usize) -> bool {
    let k = (0..offset.len() - 1)
        .find(|&k| offset[k] <= s && s < offset[k + 1])
        .unwrap();
    tri.face_classes()[k].primary.face == v
}
