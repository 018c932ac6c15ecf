//! Enumeration of admissible disc boundaries.
//!
//! A boundary curve is a cyclic sequence of 1-cell crossings, each at the
//! 1-cell's midpoint, joined by straight arcs inside the 2-cells. Because
//! crossings sit at midpoints, an embedded curve crosses each 1-cell at most
//! once, and two arcs in one cell must not interleave.

use rayon::prelude::*;
use serde::Serialize;

use super::{Cell, DiscError, TruncatedModel, ONE_CELL_COUNT};

/// A disc boundary as its cyclic sequence of crossed 1-cells, rotated so the
/// smallest id comes first. The direction of travel is part of the pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DiscPattern {
    pub crossings: Vec<usize>,
}

/// One arc of the boundary: the cell it runs in and the crossings it joins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub cell: Cell,
    pub entry: usize,
    pub exit: usize,
}

fn hex_gap(a: usize, b: usize) -> usize {
    let d = (a + 6 - b) % 6;
    d.min(6 - d)
}

/// Whether chords `(a, b)` and `(c, d)` on a cycle of `n` positions cross.
fn interleave(n: usize, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    let between = |x: usize| {
        let (lo, hi) = ((b + n - a) % n, (x + n - a) % n);
        hi > 0 && hi < lo
    };
    between(c) != between(d)
}

impl TruncatedModel {
    /// Whether a single arc between two 1-cells of `cell` is allowed: distinct
    /// sides, and in a hexagon neither equal nor adjacent sides.
    pub fn arc_allowed(&self, cell: Cell, entry: usize, exit: usize) -> bool {
        let sides = self.boundary(cell);
        let (Some(a), Some(b)) = (
            sides.iter().position(|&c| c == entry),
            sides.iter().position(|&c| c == exit),
        ) else {
            return false;
        };
        match cell {
            Cell::Hexagon(_) => hex_gap(a, b) >= 2,
            Cell::Triangle(_) => a != b,
        }
    }

    fn chords_cross(&self, cell: Cell, x: (usize, usize), y: (usize, usize)) -> bool {
        let sides = self.boundary(cell);
        let pos = |c: usize| sides.iter().position(|&s| s == c).unwrap();
        interleave(sides.len(), (pos(x.0), pos(x.1)), (pos(y.0), pos(y.1)))
    }
}

impl DiscPattern {
    /// Arcs in travel order; arc `k` leaves crossing `k`.
    pub fn arcs(&self, model: &TruncatedModel) -> Vec<Arc> {
        let n = self.crossings.len();
        let (c0, c1) = (self.crossings[0], self.crossings[1 % n]);
        let (x, y) = model.cells_of(c0);
        let shared = |cell: Cell| model.boundary(cell).contains(&c1);
        let mut cell = if shared(x) { x } else { y };
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let (entry, exit) = (self.crossings[k], self.crossings[(k + 1) % n]);
            out.push(Arc { cell, entry, exit });
            cell = model.other_cell(exit, cell);
        }
        out
    }

    /// Zero-angle truncated edges crossed plus arcs inside boundary triangles.
    pub fn cusp_count(&self, model: &TruncatedModel) -> usize {
        let zero = self
            .crossings
            .iter()
            .filter(|&&c| model.is_zero_edge(c))
            .count();
        let tri_arcs = self
            .arcs(model)
            .iter()
            .filter(|a| matches!(a.cell, Cell::Triangle(_)))
            .count();
        zero + tri_arcs
    }

    /// Combinatorial area in units of π: `cusps - 2`.
    pub fn area(&self, model: &TruncatedModel) -> i64 {
        self.cusp_count(model) as i64 - 2
    }

    /// Checks every admissibility condition.
    pub fn check(&self, model: &TruncatedModel) -> Result<(), DiscError> {
        let n = self.crossings.len();
        let bad = |m: &str| Err(DiscError::NotAdmissible(m.to_string()));
        if n < 2 {
            return bad("fewer than two crossings");
        }
        let mut seen = [false; ONE_CELL_COUNT];
        for &c in &self.crossings {
            if c >= ONE_CELL_COUNT || seen[c] {
                return bad("1-cell missing or crossed twice");
            }
            seen[c] = true;
        }
        let arcs = self.arcs(model);
        for (k, a) in arcs.iter().enumerate() {
            if !model.arc_allowed(a.cell, a.entry, a.exit) {
                return bad("arc joins equal or adjacent sides, or leaves its cell");
            }
            let next = arcs[(k + 1) % n];
            if model.other_cell(a.exit, a.cell) != next.cell {
                return bad("consecutive arcs do not alternate across their crossing");
            }
            for b in &arcs[k + 1..] {
                if b.cell == a.cell
                    && model.chords_cross(a.cell, (a.entry, a.exit), (b.entry, b.exit))
                {
                    return bad("arcs in one cell cross");
                }
            }
        }
        Ok(())
    }
}

struct Search<'a> {
    model: &'a TruncatedModel,
    max_cusps: usize,
    start: usize,
    closing_cell: Cell,
    path: Vec<usize>,
    used: [bool; ONE_CELL_COUNT],
    chords: Vec<(Cell, usize, usize)>,
    out: Vec<DiscPattern>,
}

impl Search<'_> {
    fn arc_fits(&self, cell: Cell, a: usize, b: usize) -> bool {
        self.model.arc_allowed(cell, a, b)
            && self
                .chords
                .iter()
                .filter(|c| c.0 == cell)
                .all(|c| !self.model.chords_cross(cell, (c.1, c.2), (a, b)))
    }

    fn extend(&mut self, cell: Cell, cusps: usize) {
        let here = *self.path.last().unwrap();
        let arc_cost = usize::from(matches!(cell, Cell::Triangle(_)));
        if cusps + arc_cost > self.max_cusps {
            return;
        }
        let sides: Vec<usize> = self.model.boundary(cell).to_vec();
        if cell == self.closing_cell
            && self.path.len() >= 2
            && self.arc_fits(cell, here, self.start)
        {
            self.out.push(DiscPattern {
                crossings: self.path.clone(),
            });
        }
        for next in sides {
            if next <= self.start || self.used[next] || !self.arc_fits(cell, here, next) {
                continue;
            }
            let cost = arc_cost + usize::from(self.model.is_zero_edge(next));
            if cusps + cost > self.max_cusps {
                continue;
            }
            self.used[next] = true;
            self.path.push(next);
            self.chords.push((cell, here, next));
            let cell2 = self.model.other_cell(next, cell);
            self.extend(cell2, cusps + cost);
            self.chords.pop();
            self.path.pop();
            self.used[next] = false;
        }
    }
}

/// Every admissible disc boundary with at most `max_cusps` cusps, sorted by
/// crossing sequence. Each starting crossing is searched independently.
pub fn enumerate_admissible_discs(model: &TruncatedModel, max_cusps: usize) -> Vec<DiscPattern> {
    let starts: Vec<(usize, Cell)> = (0..ONE_CELL_COUNT)
        .flat_map(|c| {
            let (x, y) = model.cells_of(c);
            [(c, x), (c, y)]
        })
        .collect();
    let mut found: Vec<DiscPattern> = crate::parallel::install(|| {
        starts
            .par_iter()
            .map(|&(c0, first)| {
                let start_cost = usize::from(model.is_zero_edge(c0));
                if start_cost > max_cusps {
                    return Vec::new();
                }
                let mut used = [false; ONE_CELL_COUNT];
                used[c0] = true;
                let mut s = Search {
                    model,
                    max_cusps,
                    start: c0,
                    closing_cell: model.other_cell(c0, first),
                    path: vec![c0],
                    used,
                    chords: Vec::new(),
                    out: Vec::new(),
                };
                s.extend(first, start_cost);
                s.out
            })
            .flatten()
            .collect()
    });
    found.sort();
    found
}
