use super::edges::UnionFind;
use super::IdealTriangulation;

/// Corner of the cusp triangle `(tet, vertex)` lying on the edge `{vertex, toward}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CuspCorner {
    pub tet: usize,
    pub vertex: usize,
    pub toward: usize,
}

/// The triangulated link of one ideal vertex class.
///
/// Triangles are the vertex links `(tet, vertex)`; each cusp vertex is the
/// set of triangle corners that meet at one end of an edge class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspTriangulation {
    pub triangles: Vec<(usize, usize)>,
    pub vertices: Vec<Vec<CuspCorner>>,
}

impl CuspTriangulation {
    pub fn face_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn edge_count(&self) -> usize {
        3 * self.triangles.len() / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }
}

fn corner_slot(tet: usize, v: usize, w: usize) -> usize {
    16 * tet + 4 * v + w
}

impl IdealTriangulation {
    /// Index of the ideal vertex class for every (tet, vertex).
    pub fn vertex_class_index(&self) -> (usize, Vec<[usize; 4]>) {
        let n = self.tet_count();
        let mut uf = UnionFind::new(4 * n);
        for t in 0..n {
            for f in 0..4 {
                let g = self.gluing(t, f);
                for v in (0..4).filter(|&v| v != f) {
                    uf.union(4 * t + v, 4 * g.tet + g.perm.apply(v));
                }
            }
        }
        let (count, labels) = uf.labels();
        (
            count,
            (0..n)
                .map(|t| std::array::from_fn(|v| labels[4 * t + v]))
                .collect(),
        )
    }

    /// One triangulated surface per ideal vertex class, ordered by first
    /// (tet, vertex) appearance.
    pub fn cusp_triangulations(&self) -> Vec<CuspTriangulation> {
        let n = self.tet_count();
        let (count, vclass) = self.vertex_class_index();
        let mut uf = UnionFind::new(16 * n);
        for t in 0..n {
            for f in 0..4 {
                let g = self.gluing(t, f);
                for v in (0..4).filter(|&v| v != f) {
                    for w in (0..4).filter(|&w| w != f && w != v) {
                        uf.union(
                            corner_slot(t, v, w),
                            corner_slot(g.tet, g.perm.apply(v), g.perm.apply(w)),
                        );
                    }
                }
            }
        }
        let mut cusps: Vec<CuspTriangulation> = (0..count)
            .map(|_| CuspTriangulation {
                triangles: Vec::new(),
                vertices: Vec::new(),
            })
            .collect();
        // Root slot -> (cusp, vertex index within cusp).
        let mut vertex_of_root = vec![usize::MAX; 16 * n];
        for t in 0..n {
            for v in 0..4 {
                let cusp = &mut cusps[vclass[t][v]];
                cusp.triangles.push((t, v));
                for w in (0..4).filter(|&w| w != v) {
                    let root = uf.find(corner_slot(t, v, w));
                    if vertex_of_root[root] == usize::MAX {
                        vertex_of_root[root] = cusp.vertices.len();
                        cusp.vertices.push(Vec::new());
                    }
                    cusp.vertices[vertex_of_root[root]].push(CuspCorner {
                        tet: t,
                        vertex: v,
                        toward: w,
                    });
                }
            }
        }
        cusps
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;

    #[test]
    fn doubled_tet_has_sphere_cusps() {
        let cusps = doubled_tet().cusp_triangulations();
        assert_eq!(cusps.len(), 4);
        for c in &cusps {
            assert_eq!(c.face_count(), 2);
            assert_eq!(c.vertex_count(), 3);
            assert_eq!(c.euler_characteristic(), 2);
            assert_eq!(3 * c.face_count(), 2 * c.edge_count());
        }
    }
}
