use super::{complement, edge_index, IdealTriangulation, TriError, EDGE_VERTICES};

/// One tetrahedron corner around an edge class, with the traversal direction
/// recorded by the faces it is entered and left through.
///
/// `vertices` are the edge endpoints in this tetrahedron, in the order carried
/// along the walk. The walk enters through `entry_face` and leaves through
/// `exit_face`; these are the two faces containing the edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Corner {
    pub tet: usize,
    pub vertices: (usize, usize),
    pub entry_face: usize,
    pub exit_face: usize,
}

impl Corner {
    pub fn edge(&self) -> usize {
        edge_index(self.vertices.0, self.vertices.1)
    }
}

/// An edge of the triangulation: its tetrahedron corners in cyclic order.
///
/// Consecutive corners `j` and `j + 1` share a face: the exit face of corner
/// `j` is glued to the entry face of corner `j + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClass {
    pub corners: Vec<Corner>,
}

impl EdgeClass {
    pub fn degree(&self) -> usize {
        self.corners.len()
    }
}

impl IdealTriangulation {
    fn step(&self, c: Corner) -> Corner {
        let g = self.gluing(c.tet, c.exit_face);
        Corner {
            tet: g.tet,
            vertices: (g.perm.apply(c.vertices.0), g.perm.apply(c.vertices.1)),
            entry_face: g.perm.apply(c.exit_face),
            exit_face: g.perm.apply(c.entry_face),
        }
    }

    /// Edge classes, ordered by their first (tet, edge) corner. Each class
    /// starts at that corner with endpoints increasing and entry face the
    /// smaller of the two faces.
    ///
    /// Fails when an edge is identified with itself in reverse, which cannot
    /// happen in an orientable manifold.
    pub fn edge_classes(&self) -> Result<Vec<EdgeClass>, TriError> {
        let n = self.tet_count();
        let mut seen = vec![[false; 6]; n];
        let mut classes = Vec::new();
        for t in 0..n {
            for (e, &(a, b)) in EDGE_VERTICES.iter().enumerate() {
                if seen[t][e] {
                    continue;
                }
                let (c, d) = complement(a, b);
                let start = Corner {
                    tet: t,
                    vertices: (a, b),
                    entry_face: c,
                    exit_face: d,
                };
                let mut corners = Vec::new();
                let mut cur = start;
                loop {
                    let ce = cur.edge();
                    if seen[cur.tet][ce] {
                        return Err(TriError::ReversedEdge { tet: t, edge: e });
                    }
                    seen[cur.tet][ce] = true;
                    corners.push(cur);
                    cur = self.step(cur);
                    if cur.tet == start.tet && cur.edge() == e {
                        if cur != start {
                            return Err(TriError::ReversedEdge { tet: t, edge: e });
                        }
                        break;
                    }
                }
                classes.push(EdgeClass { corners });
            }
        }
        Ok(classes)
    }

    /// Edge-class index of every (tet, edge) corner, by union-find over face
    /// gluings; does not need a consistent cyclic order.
    pub fn edge_class_index(&self) -> (usize, Vec<[usize; 6]>) {
        let n = self.tet_count();
        let mut uf = UnionFind::new(6 * n);
        for t in 0..n {
            for f in 0..4 {
                let g = self.gluing(t, f);
                for &(a, b) in &EDGE_VERTICES {
                    if a == f || b == f {
                        continue;
                    }
                    let e2 = edge_index(g.perm.apply(a), g.perm.apply(b));
                    uf.union(6 * t + edge_index(a, b), 6 * g.tet + e2);
                }
            }
        }
        let (count, labels) = uf.labels();
        let per_tet = (0..n)
            .map(|t| std::array::from_fn(|e| labels[6 * t + e]))
            .collect();
        (count, per_tet)
    }
}

/// Plain union-find with path halving.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Dense labels `0..count` in order of first appearance.
    pub fn labels(&mut self) -> (usize, Vec<usize>) {
        let n = self.parent.len();
        let mut label_of_root = vec![usize::MAX; n];
        let mut labels = vec![0; n];
        let mut count = 0;
        for (x, label) in labels.iter_mut().enumerate() {
            let r = self.find(x);
            if label_of_root[r] == usize::MAX {
                label_of_root[r] = count;
                count += 1;
            }
            *label = label_of_root[r];
        }
        (count, labels)
    }
}
