//! Transverse orientations on the faces of an ideal triangulation: the
//! induced 0/π corner angles, tautness checks, exhaustive enumeration, and
//! the oriented dual graph.
//!
//! Angles are integers in units of π, so a corner carries 0 or 1.

use serde::Serialize;
use thiserror::Error;

use crate::tri::{complement, IdealTriangulation, TriError, EDGE_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TautError {
    #[error("triangulation is not orientable")]
    NonOrientable,
    #[error("triangulation is not connected")]
    Disconnected,
    #[error("some cusp is not a torus")]
    NonTorusCusp,
    #[error("tet {tet} face {face}: flag does not match its glued partner")]
    Inconsistent { tet: usize, face: usize },
    #[error("expected {expected} flag rows, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("coorientation is not taut")]
    NotTaut,
    #[error(transparent)]
    Tri(#[from] TriError),
}

/// One side choice per face class: `true` means the transverse orientation
/// points out of the tetrahedron on the class's primary side.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coorientation {
    out_of_primary: Vec<bool>,
}

impl Coorientation {
    pub fn new(out_of_primary: Vec<bool>) -> Self {
        Coorientation { out_of_primary }
    }

    pub fn face_class_count(&self) -> usize {
        self.out_of_primary.len()
    }

    pub fn out_of_primary(&self, class: usize) -> bool {
        self.out_of_primary[class]
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.out_of_primary
    }

    /// Every glued-consistent coorientation, in enumeration order.
    pub fn all(tri: &IdealTriangulation) -> impl Iterator<Item = Coorientation> {
        let m = tri.face_classes().len();
        assert!(m < 64, "too many face classes for exhaustive listing");
        (0u64..1 << m).map(move |mask| {
            // Bit m-1-k clear means class k is out of its primary side, so the
            // sequence follows the `+` < `-` order of `enumerate_taut`.
            Coorientation::new((0..m).map(|k| (mask >> (m - 1 - k)) & 1 == 0).collect())
        })
    }

    /// Whether face `face` of `tet` is oriented out of `tet`.
    pub fn is_out(&self, tri: &IdealTriangulation, tet: usize, face: usize) -> bool {
        let k = tri.face_class(tet, face);
        if tri.is_primary(tet, face) {
            self.out_of_primary[k]
        } else {
            !self.out_of_primary[k]
        }
    }

    /// Out flags per tetrahedron face, as stored in a `coor` block.
    pub fn tet_flags(&self, tri: &IdealTriangulation) -> Vec<[bool; 4]> {
        (0..tri.tet_count())
            .map(|t| std::array::from_fn(|f| self.is_out(tri, t, f)))
            .collect()
    }

    /// Reads per-tetrahedron flags, requiring glued faces to disagree.
    pub fn from_tet_flags(
        tri: &IdealTriangulation,
        flags: &[[bool; 4]],
    ) -> Result<Self, TautError> {
        if flags.len() != tri.tet_count() {
            return Err(TautError::WrongLength {
                expected: tri.tet_count(),
                found: flags.len(),
            });
        }
        for fc in tri.face_classes() {
            let a = flags[fc.primary.tet][fc.primary.face];
            let b = flags[fc.secondary.tet][fc.secondary.face];
            if a == b {
                return Err(TautError::Inconsistent {
                    tet: fc.secondary.tet,
                    face: fc.secondary.face,
                });
            }
        }
        Ok(Coorientation {
            out_of_primary: tri
                .face_classes()
                .iter()
                .map(|fc| flags[fc.primary.tet][fc.primary.face])
                .collect(),
        })
    }

    pub fn negated(&self) -> Self {
        Coorientation {
            out_of_primary: self.out_of_primary.iter().map(|b| !b).collect(),
        }
    }
}

/// Angle per (tet, edge) corner in units of π: 1 where the two faces at the
/// corner are both in or both out, 0 where they are compatibly oriented.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerAngles {
    pub per_tet: Vec<[u8; 6]>,
}

impl CornerAngles {
    pub fn tet_sum(&self, tet: usize) -> u32 {
        self.per_tet[tet].iter().map(|&a| a as u32).sum()
    }
}

/// Corner angles from one tetrahedron's out flags.
pub fn tet_angles(flags: [bool; 4]) -> [u8; 6] {
    std::array::from_fn(|e| {
        let (a, b) = EDGE_VERTICES[e];
        let (c, d) = complement(a, b);
        u8::from(flags[c] == flags[d])
    })
}

pub fn corner_angles(tri: &IdealTriangulation, coor: &Coorientation) -> CornerAngles {
    CornerAngles {
        per_tet: coor.tet_flags(tri).into_iter().map(tet_angles).collect(),
    }
}

/// Every tetrahedron has exactly two inward faces.
pub fn check_tet_condition(tri: &IdealTriangulation, coor: &Coorientation) -> bool {
    coor.tet_flags(tri)
        .iter()
        .all(|f| f.iter().filter(|&&o| !o).count() == 2)
}

/// π-corner count per edge class (union-find edge classes).
pub fn edge_pi_counts(tri: &IdealTriangulation, coor: &Coorientation) -> Vec<u32> {
    let angles = corner_angles(tri, coor);
    let (count, idx) = tri.edge_class_index();
    let mut pis = vec![0u32; count];
    for (t, row) in idx.iter().enumerate() {
        for (e, &k) in row.iter().enumerate() {
            pis[k] += angles.per_tet[t][e] as u32;
        }
    }
    pis
}

/// Tet condition and exactly two π corners around every edge.
pub fn check_full_taut(tri: &IdealTriangulation, coor: &Coorientation) -> bool {
    check_tet_condition(tri, coor) && edge_pi_counts(tri, coor).iter().all(|&p| p == 2)
}

/// Tet condition and at least one π corner around every edge. Requires
/// torus cusps, under which it agrees with [`check_full_taut`].
pub fn check_prop9(tri: &IdealTriangulation, coor: &Coorientation) -> Result<bool, TautError> {
    let report = tri.validate();
    if !report.orientable {
        return Err(TautError::NonOrientable);
    }
    if !report.all_cusps_tori {
        return Err(TautError::NonTorusCusp);
    }
    Ok(check_tet_condition(tri, coor) && edge_pi_counts(tri, coor).iter().all(|&p| p >= 1))
}

/// Checks the preconditions shared by the taut operations.
pub fn require_torus_manifold(tri: &IdealTriangulation) -> Result<(), TautError> {
    let report = tri.validate();
    if !report.orientable {
        return Err(TautError::NonOrientable);
    }
    if !report.connected {
        return Err(TautError::Disconnected);
    }
    if !report.all_cusps_tori {
        return Err(TautError::NonTorusCusp);
    }
    tri.edge_classes()?;
    Ok(())
}

/// All taut coorientations, by backtracking over face classes in index
/// order, trying "out of primary" before "into primary". Tetrahedra prune as
/// soon as they have three faces on one side; edges prune once a third π
/// corner appears, and are closed off when their last corner is decided.
pub fn enumerate_taut(tri: &IdealTriangulation) -> Result<Vec<Coorientation>, TautError> {
    require_torus_manifold(tri)?;
    let n = tri.tet_count();
    let m = tri.face_classes().len();
    let (edge_count, edge_idx) = tri.edge_class_index();

    // Corners decided at each step, and how many corners each edge has left.
    let mut decided_at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m];
    let mut corners_left = vec![0usize; edge_count];
    for t in 0..n {
        for (e, &(a, b)) in EDGE_VERTICES.iter().enumerate() {
            let (c, d) = complement(a, b);
            let last = tri.face_class(t, c).max(tri.face_class(t, d));
            decided_at[last].push((t, e));
            corners_left[edge_idx[t][e]] += 1;
        }
    }

    struct State<'a> {
        tri: &'a IdealTriangulation,
        decided_at: &'a [Vec<(usize, usize)>],
        edge_idx: &'a [[usize; 6]],
        flags: Vec<[Option<bool>; 4]>,
        outs: Vec<u8>,
        ins: Vec<u8>,
        pis: Vec<u32>,
        left: Vec<usize>,
        choice: Vec<bool>,
        found: Vec<Coorientation>,
    }

    fn set(st: &mut State, t: usize, f: usize, out: bool) -> bool {
        st.flags[t][f] = Some(out);
        if out {
            st.outs[t] += 1;
        } else {
            st.ins[t] += 1;
        }
        st.outs[t] <= 2 && st.ins[t] <= 2
    }

    fn unset(st: &mut State, t: usize, f: usize) {
        match st.flags[t][f].take() {
            Some(true) => st.outs[t] -= 1,
            Some(false) => st.ins[t] -= 1,
            None => {}
        }
    }

    fn rec(st: &mut State, k: usize) {
        let m = st.decided_at.len();
        if k == m {
            st.found.push(Coorientation::new(st.choice.clone()));
            return;
        }
        let fc = st.tri.face_classes()[k];
        for value in [true, false] {
            let ok_a = set(st, fc.primary.tet, fc.primary.face, value);
            let ok_b = set(st, fc.secondary.tet, fc.secondary.face, !value);
            let mut ok = ok_a && ok_b;
            let mut touched = Vec::new();
            if ok {
                for &(t, e) in &st.decided_at[k] {
                    let (a, b) = EDGE_VERTICES[e];
                    let (c, d) = complement(a, b);
                    let pi = st.flags[t][c] == st.flags[t][d];
                    let ec = st.edge_idx[t][e];
                    st.pis[ec] += pi as u32;
                    st.left[ec] -= 1;
                    touched.push((ec, pi));
                    if st.pis[ec] > 2 || (st.left[ec] == 0 && st.pis[ec] != 2) {
                        ok = false;
                    }
                }
            }
            if ok {
                st.choice.push(value);
                rec(st, k + 1);
                st.choice.pop();
            }
            for (ec, pi) in touched {
                st.pis[ec] -= pi as u32;
                st.left[ec] += 1;
            }
            unset(st, fc.primary.tet, fc.primary.face);
            unset(st, fc.secondary.tet, fc.secondary.face);
        }
    }

    let mut st = State {
        tri,
        decided_at: &decided_at,
        edge_idx: &edge_idx,
        flags: vec![[None; 4]; n],
        outs: vec![0; n],
        ins: vec![0; n],
        pis: vec![0; edge_count],
        left: corners_left,
        choice: Vec::with_capacity(m),
        found: Vec::new(),
    };
    rec(&mut st, 0);
    Ok(st.found)
}

/// A directed edge of the dual graph crossing one face class, pointing the
/// way the transverse orientation does.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DualEdge {
    pub face_class: usize,
    pub from: usize,
    pub to: usize,
    /// Face of `from` that the edge leaves through.
    pub from_face: usize,
}

/// The oriented 4-valent graph dual to the faces: one node per tetrahedron,
/// one directed edge per face class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualCycle {
    pub node_count: usize,
    pub edges: Vec<DualEdge>,
}

impl DualCycle {
    pub fn in_degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|e| e.to == node).count()
    }

    pub fn out_degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|e| e.from == node).count()
    }
}

pub fn dual_cycle(tri: &IdealTriangulation, coor: &Coorientation) -> DualCycle {
    let edges = tri
        .face_classes()
        .iter()
        .enumerate()
        .map(|(k, fc)| {
            let (src, dst) = if coor.out_of_primary(k) {
                (fc.primary, fc.secondary)
            } else {
                (fc.secondary, fc.primary)
            };
            DualEdge {
                face_class: k,
                from: src.tet,
                to: dst.tet,
                from_face: src.face,
            }
        })
        .collect();
    DualCycle {
        node_count: tri.tet_count(),
        edges,
    }
}

/// Number of π angles at every vertex of every cusp triangulation.
pub fn cusp_angle_profile(tri: &IdealTriangulation, coor: &Coorientation) -> Vec<Vec<usize>> {
    let angles = corner_angles(tri, coor);
    tri.cusp_triangulations()
        .iter()
        .map(|cusp| {
            cusp.vertices
                .iter()
                .map(|corners| {
                    corners
                        .iter()
                        .filter(|c| {
                            angles.per_tet[c.tet][crate::tri::edge_index(c.vertex, c.toward)] == 1
                        })
                        .count()
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layering::{build_mapping_torus, MonodromySpec};
    use crate::tri::fixtures::*;
    use proptest::prelude::*;

    fn layered(word: &str) -> (IdealTriangulation, Coorientation) {
        let l = build_mapping_torus(&MonodromySpec::from_ptorus_word(word).unwrap()).unwrap();
        (l.tri, l.coor)
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for word in ["RL", "RRL", "RLL", "RRLL", "RLRL", "RRRL"] {
            let (tri, _) = layered(word);
            let brute: Vec<Coorientation> = Coorientation::all(&tri)
                .filter(|c| check_full_taut(&tri, c))
                .collect();
            assert_eq!(enumerate_taut(&tri).unwrap(), brute, "{word}");
        }
    }

    #[test]
    fn layered_structure_is_found_and_dual_graph_is_balanced() {
        let (tri, coor) = layered("RL");
        let all = enumerate_taut(&tri).unwrap();
        assert!(all.contains(&coor));
        for c in &all {
            let g = dual_cycle(&tri, c);
            assert_eq!(g.edges.len(), 4);
            for t in 0..tri.tet_count() {
                assert_eq!((g.in_degree(t), g.out_degree(t)), (2, 2));
            }
            assert!(cusp_angle_profile(&tri, c)
                .iter()
                .flatten()
                .all(|&p| p == 2));
        }
    }

    #[test]
    fn flag_round_trip_and_inconsistency() {
        let (tri, coor) = layered("RL");
        let flags = coor.tet_flags(&tri);
        assert_eq!(Coorientation::from_tet_flags(&tri, &flags).unwrap(), coor);
        let mut bad = flags.clone();
        let fc = tri.face_classes()[0];
        bad[fc.secondary.tet][fc.secondary.face] = bad[fc.primary.tet][fc.primary.face];
        assert!(matches!(
            Coorientation::from_tet_flags(&tri, &bad),
            Err(TautError::Inconsistent { .. })
        ));
        assert!(matches!(
            Coorientation::from_tet_flags(&tri, &flags[..1]),
            Err(TautError::WrongLength {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn preconditions_are_enforced() {
        assert_eq!(
            enumerate_taut(&one_tet_nonorientable()),
            Err(TautError::NonOrientable)
        );
        assert_eq!(enumerate_taut(&doubled_tet()), Err(TautError::NonTorusCusp));
        let tri = doubled_tet();
        let c = Coorientation::all(&tri).next().unwrap();
        assert_eq!(check_prop9(&tri, &c), Err(TautError::NonTorusCusp));
    }

    proptest! {
        #[test]
        fn negation_preserves_tautness(word_bits in proptest::collection::vec(any::<bool>(), 2..=4), mask in any::<u64>()) {
            let word: String = word_bits.iter().map(|&b| if b { 'R' } else { 'L' }).collect();
            prop_assume!(word.contains('R') && word.contains('L'));
            let (tri, _) = layered(&word);
            let m = tri.face_classes().len();
            let coor = Coorientation::new((0..m).map(|k| (mask >> k) & 1 == 1).collect());
            prop_assert_eq!(check_full_taut(&tri, &coor), check_full_taut(&tri, &coor.negated()));
            prop_assert_eq!(check_prop9(&tri, &coor).unwrap(), check_full_taut(&tri, &coor));
        }
    }

    #[test]
    fn angles_of_single_tets() {
        // In-faces {0,1}: π on the edge where they meet ({2,3}) and on {0,1}.
        let a = tet_angles([false, false, true, true]);
        assert_eq!(a, [1, 0, 0, 0, 0, 1]);
        assert_eq!(tet_angles([true; 4]), [1; 6]);
        for flags in [
            [true, false, true, false],
            [false, true, true, false],
            [true, true, false, false],
        ] {
            let a = tet_angles(flags);
            assert_eq!(a.iter().map(|&x| x as u32).sum::<u32>(), 2);
            // The π pair is a pair of opposite edges.
            let pis: Vec<usize> = (0..6).filter(|&e| a[e] == 1).collect();
            assert_eq!(pis[0] + pis[1], 5);
            // Each ideal vertex sees angles {π, 0, 0}.
            for v in 0..4 {
                let at_v: u8 = (0..4)
                    .filter(|&w| w != v)
                    .map(|w| a[crate::tri::edge_index(v, w)])
                    .sum();
                assert_eq!(at_v, 1);
            }
        }
    }
}
