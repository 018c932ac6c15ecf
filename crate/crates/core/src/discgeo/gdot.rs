//! Signed intersection of disc boundaries with the arcs `α_i`, and the
//! area inequality suite.
//!
//! Each `α_i` has one straight segment in each of the two hexagons at `e_i`,
//! running from the centre to the midpoint of `e_i`; it points away from
//! the centre in the in-face hexagon and towards it in the out-face hexagon.
//! A boundary arc meeting a segment in both interiors counts 1; meeting it
//! at an endpoint of either (an edge midpoint or the centre) counts 1/2; an
//! arc lying along the segment counts 0. The sign is that of
//! `cross(α direction, arc direction)` in the hexagon's counterclockwise
//! coordinates. The sum over all arcs and all `α_i`, halved, is `G · D`.
//! Values are kept as integer numerators over 4.

use serde::Serialize;

use super::enumerate::{enumerate_admissible_discs, Arc};
use super::{Cell, DiscPattern, Point, TruncatedModel};

fn sub(p: Point, q: Point) -> Point {
    (p.0 - q.0, p.1 - q.1)
}

fn cross(u: Point, v: Point) -> i64 {
    u.0 * v.1 - u.1 * v.0
}

/// Contribution in quarters of the arc `from -> to` against the segment
/// `tail -> head`.
fn segment_contribution(from: Point, to: Point, tail: Point, head: Point) -> i64 {
    let d = sub(to, from);
    let a = sub(head, tail);
    let denom = cross(d, a);
    if denom == 0 {
        // Parallel: an arc along the segment, or no meeting at all.
        return 0;
    }
    // from + s d = tail + t a, with s, t scaled by denom.
    let w = sub(tail, from);
    let (s_num, t_num) = (cross(w, a), cross(w, d));
    let (s_num, t_num, denom) = if denom < 0 {
        (-s_num, -t_num, -denom)
    } else {
        (s_num, t_num, denom)
    };
    if s_num < 0 || s_num > denom || t_num < 0 || t_num > denom {
        return 0;
    }
    let at_end = s_num == 0 || s_num == denom || t_num == 0 || t_num == denom;
    let weight = if at_end { 1 } else { 2 };
    weight * cross(a, d).signum()
}

/// Per-arc breakdown of `G · D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArcContribution {
    pub cell: Cell,
    pub entry: usize,
    pub exit: usize,
    /// (index into `model.alphas`, quarters) for the α segments in the cell.
    pub per_alpha: Vec<(usize, i64)>,
    pub quarters: i64,
    /// Endpoints on zero-angle truncated edges or on triangle sides.
    pub endpoint_cusps: usize,
}

impl TruncatedModel {
    pub fn arc_contribution(&self, arc: &Arc) -> ArcContribution {
        let mut per_alpha = Vec::new();
        if let Cell::Hexagon(f) = arc.cell {
            let h = &self.hexagons[f];
            let (a, b) = (
                h.position(arc.entry).unwrap(),
                h.position(arc.exit).unwrap(),
            );
            let (from, to) = (h.midpoint(a), h.midpoint(b));
            for &k in &h.zero_sides {
                let alpha = self
                    .alphas
                    .iter()
                    .position(|al| al.edge == h.sides[k])
                    .unwrap();
                let mid = h.midpoint(k);
                let (tail, head) = if h.out {
                    (mid, h.centre)
                } else {
                    (h.centre, mid)
                };
                per_alpha.push((alpha, segment_contribution(from, to, tail, head)));
            }
        }
        let endpoint_cusps = [arc.entry, arc.exit]
            .iter()
            .filter(|&&c| c >= 6 || self.is_zero_edge(c))
            .count();
        ArcContribution {
            cell: arc.cell,
            entry: arc.entry,
            exit: arc.exit,
            quarters: per_alpha.iter().map(|p| p.1).sum(),
            per_alpha,
            endpoint_cusps,
        }
    }
}

/// `G · D` as a numerator over 4.
pub fn g_dot(model: &TruncatedModel, pattern: &DiscPattern) -> i64 {
    pattern
        .arcs(model)
        .iter()
        .map(|a| model.arc_contribution(a).quarters)
        .sum()
}

/// Contribution of one hexagon arc type, in one direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArcTypeRow {
    pub hexagon: usize,
    /// Positions of the entry and exit sides, counterclockwise from the
    /// hexagon's π side.
    pub entry_from_pi: usize,
    pub exit_from_pi: usize,
    pub quarters: i64,
}

/// Contribution of every allowed directed arc in every hexagon.
pub fn arc_table(model: &TruncatedModel) -> Vec<ArcTypeRow> {
    let mut rows = Vec::new();
    for h in &model.hexagons {
        for a in 0..6 {
            for b in 0..6 {
                let arc = Arc {
                    cell: Cell::Hexagon(h.face),
                    entry: h.sides[a],
                    exit: h.sides[b],
                };
                if !model.arc_allowed(arc.cell, arc.entry, arc.exit) {
                    continue;
                }
                rows.push(ArcTypeRow {
                    hexagon: h.face,
                    entry_from_pi: (a + 6 - h.pi_side) % 6,
                    exit_from_pi: (b + 6 - h.pi_side) % 6,
                    quarters: model.arc_contribution(&arc).quarters,
                });
            }
        }
    }
    rows
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AreaBoundReport {
    pub max_cusps: usize,
    pub patterns: usize,
    /// Pattern count per cusp number `0..=max_cusps`.
    pub by_cusps: Vec<usize>,
    pub max_crossings: usize,
    /// Largest `|G · D|` seen, over 4.
    pub max_abs_g_dot_quarters: i64,
    /// Patterns where `Area = π |G · D|`.
    pub equality_cases: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AreaBoundViolation {
    pub pattern: DiscPattern,
    pub cusps: usize,
    pub g_dot_quarters: i64,
    pub reason: String,
}

impl std::fmt::Display for AreaBoundViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} for crossings {:?} (cusps {}, G.D = {}/4)",
            self.reason, self.pattern.crossings, self.cusps, self.g_dot_quarters
        )
    }
}

impl std::error::Error for AreaBoundViolation {}

/// Enumerates every admissible disc with at most `max_cusps` cusps and
/// checks `c >= 2`, `Area >= π |G · D|`, `|G · D| <= c / 2` and the per-arc
/// bounds, stopping at the first violation.
pub fn check_prop12_suite(
    model: &TruncatedModel,
    max_cusps: usize,
) -> Result<AreaBoundReport, AreaBoundViolation> {
    let patterns = enumerate_admissible_discs(model, max_cusps);
    let mut report = AreaBoundReport {
        max_cusps,
        patterns: patterns.len(),
        by_cusps: vec![0; max_cusps + 1],
        max_crossings: 0,
        max_abs_g_dot_quarters: 0,
        equality_cases: 0,
    };
    for p in patterns {
        let c = p.cusp_count(model);
        let g = g_dot(model, &p);
        let fail = |reason: &str| AreaBoundViolation {
            pattern: p.clone(),
            cusps: c,
            g_dot_quarters: g,
            reason: reason.into(),
        };
        if c < 2 {
            return Err(fail("fewer than two cusps"));
        }
        let area_quarters = 4 * (c as i64 - 2);
        if area_quarters < g.abs() {
            return Err(fail("area below pi |G.D|"));
        }
        if g.abs() > 2 * c as i64 {
            return Err(fail("|G.D| above c/2"));
        }
        for arc in p.arcs(model) {
            let ac = model.arc_contribution(&arc);
            if ac.per_alpha.iter().any(|&(_, q)| q.abs() > 2) || ac.quarters.abs() > 2 {
                return Err(fail("arc contribution above 1/2"));
            }
            if ac.quarters.abs() > ac.endpoint_cusps as i64 {
                return Err(fail(
                    "arc contribution above a quarter of its endpoint cusps",
                ));
            }
        }
        report.by_cusps[c] += 1;
        report.max_crossings = report.max_crossings.max(p.crossings.len());
        report.max_abs_g_dot_quarters = report.max_abs_g_dot_quarters.max(g.abs());
        report.equality_cases += usize::from(area_quarters == g.abs());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::side_cell;
    use super::*;
    use crate::tri::edge_index;
    use num_rational::Rational64;

    type Q = Rational64;
    type QPoint = (Q, Q);

    fn q(p: Point) -> QPoint {
        (Q::from_integer(p.0), Q::from_integer(p.1))
    }

    fn qcross(u: QPoint, v: QPoint) -> Q {
        u.0 * v.1 - u.1 * v.0
    }

    fn qsub(p: QPoint, r: QPoint) -> QPoint {
        (p.0 - r.0, p.1 - r.1)
    }

    /// Signed count of proper crossings; panics on any degenerate contact,
    /// which the perturbation is meant to rule out.
    fn proper_crossing(from: QPoint, to: QPoint, tail: QPoint, head: QPoint) -> i64 {
        let zero = Q::from_integer(0);
        let o1 = qcross(qsub(to, from), qsub(tail, from));
        let o2 = qcross(qsub(to, from), qsub(head, from));
        let o3 = qcross(qsub(head, tail), qsub(from, tail));
        let o4 = qcross(qsub(head, tail), qsub(to, tail));
        assert!(
            o1 != zero && o2 != zero && o3 != zero && o4 != zero,
            "degenerate contact"
        );
        if (o1 > zero) != (o2 > zero) && (o3 > zero) != (o4 > zero) {
            let s = qcross(qsub(head, tail), qsub(to, from));
            if s > zero {
                1
            } else {
                -1
            }
        } else {
            0
        }
    }

    /// Independent evaluation: move the point where `α_i` crosses `e_i` a
    /// little along the edge and the centre of each hexagon a little off
    /// centre, count proper crossings, and average over all sign choices.
    fn perturbed_g_dot_quarters(m: &TruncatedModel, p: &DiscPattern) -> Q {
        let eps = Q::new(1, 97);
        let u = (Q::from_integer(1), Q::from_integer(3));
        let mut total = Q::from_integer(0);
        let combos = 1u32 << 8;
        for mask in 0..combos {
            // Bits 0..4 perturb the edge crossing of α_i, bits 4..8 the centres.
            let mut count = 0i64;
            for arc in p.arcs(m) {
                let Cell::Hexagon(f) = arc.cell else { continue };
                let h = &m.hexagons[f];
                let (a, b) = (
                    h.position(arc.entry).unwrap(),
                    h.position(arc.exit).unwrap(),
                );
                let (from, to) = (q(h.midpoint(a)), q(h.midpoint(b)));
                let cs = if mask >> (4 + f) & 1 == 1 { eps } else { -eps };
                let centre = (q(h.centre).0 + cs * u.0, q(h.centre).1 + cs * u.1);
                for &k in &h.zero_sides {
                    let i = m
                        .alphas
                        .iter()
                        .position(|al| al.edge == h.sides[k])
                        .unwrap();
                    // Shift towards the edge endpoint with the larger tet vertex
                    // label, the same physical point from both hexagons.
                    let (p0, p1) = (h.vertices[k], h.vertices[(k + 1) % 6]);
                    let [x, y, z] = super::super::face_cycle(f);
                    let ends = [(x, y), (y, z), (z, x)][k / 2];
                    let toward = if ends.1 > ends.0 {
                        sub(p1, p0)
                    } else {
                        sub(p0, p1)
                    };
                    let es = if mask >> i & 1 == 1 { eps } else { -eps };
                    let mid = q(h.midpoint(k));
                    let cross_pt = (
                        mid.0 + es * Q::from_integer(toward.0),
                        mid.1 + es * Q::from_integer(toward.1),
                    );
                    let (tail, head) = if h.out {
                        (cross_pt, centre)
                    } else {
                        (centre, cross_pt)
                    };
                    count += proper_crossing(from, to, tail, head);
                }
            }
            total += Q::from_integer(count);
        }
        // Average, halve, express in quarters.
        total / Q::from_integer(combos as i64) / Q::from_integer(2) * Q::from_integer(4)
    }

    fn models() -> Vec<TruncatedModel> {
        (0u8..16)
            .filter(|mk| mk.count_ones() == 2)
            .map(|mk| TruncatedModel::build(std::array::from_fn(|f| (mk >> f) & 1 == 1)).unwrap())
            .collect()
    }

    #[test]
    fn g_dot_matches_perturbation_oracle() {
        for m in models() {
            for p in enumerate_admissible_discs(&m, 3) {
                assert_eq!(
                    Q::from_integer(g_dot(&m, &p)),
                    perturbed_g_dot_quarters(&m, &p),
                    "{:?}",
                    p.crossings
                );
            }
        }
    }

    #[test]
    fn zero_area_discs_have_zero_g_dot() {
        let m = TruncatedModel::build([false, true, false, true]).unwrap();
        let discs = enumerate_admissible_discs(&m, 2);
        let linking = discs
            .iter()
            .filter(|p| p.crossings.len() == 3 && p.crossings.iter().all(|&c| c < 6))
            .count();
        assert_eq!(linking, 8);
        for p in &discs {
            assert_eq!(g_dot(&m, p), 0, "{:?}", p.crossings);
        }
    }

    #[test]
    fn crossing_count_bound() {
        for m in models() {
            for p in enumerate_admissible_discs(&m, 6) {
                assert!(p.crossings.len() <= 2 * p.cusp_count(&m) + 2);
            }
        }
    }

    #[test]
    fn arc_table_has_nine_types_per_hexagon() {
        let m = TruncatedModel::build([false, false, true, true]).unwrap();
        let rows = arc_table(&m);
        assert_eq!(rows.len(), 4 * 18);
        for h in 0..4 {
            let here: Vec<&ArcTypeRow> = rows.iter().filter(|r| r.hexagon == h).collect();
            let mut types: Vec<(usize, usize)> = here
                .iter()
                .map(|r| {
                    (
                        r.entry_from_pi.min(r.exit_from_pi),
                        r.entry_from_pi.max(r.exit_from_pi),
                    )
                })
                .collect();
            types.sort();
            types.dedup();
            assert_eq!(types.len(), 9);
            for r in &here {
                let rev = here.iter().find(|s| {
                    s.entry_from_pi == r.exit_from_pi && s.exit_from_pi == r.entry_from_pi
                });
                assert_eq!(rev.unwrap().quarters, -r.quarters);
                assert!(r.quarters.abs() <= 2);
            }
        }
    }

    #[test]
    fn suite_passes_up_to_six_cusps() {
        for m in models() {
            let r = check_prop12_suite(&m, 6).unwrap();
            assert_eq!(r.by_cusps[0] + r.by_cusps[1], 0);
            assert!(r.by_cusps[2] >= 8);
        }
    }

    #[test]
    fn face_parallel_areas() {
        let m = TruncatedModel::build([false, false, true, true]).unwrap();
        let sides: Vec<usize> = [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)]
            .iter()
            .map(|&(v, f)| side_cell(v, f))
            .collect();
        let p = enumerate_admissible_discs(&m, 3)
            .into_iter()
            .find(|p| {
                let mut c = p.crossings.clone();
                c.sort();
                let mut s = sides.clone();
                s.sort();
                c == s
            })
            .unwrap();
        assert_eq!(p.area(&m), 1);
        assert!(g_dot(&m, &p).abs() <= 4);
        assert!(edge_index(0, 1) < 6);
    }
}
