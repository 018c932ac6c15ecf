use serde::Serialize;

use super::IdealTriangulation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspSummary {
    pub triangles: usize,
    pub vertices: usize,
    pub edges: usize,
    pub euler_characteristic: i64,
}

/// Manifold checks on a structurally valid triangulation. Failures are
/// recorded in the report rather than returned as errors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub tet_count: usize,
    pub orientable: bool,
    pub connected: bool,
    pub edge_class_count: usize,
    /// Degrees of the edge classes, in edge-class order.
    pub edge_degrees: Vec<usize>,
    /// `false` when some edge class is identified with itself in reverse.
    pub edges_consistent: bool,
    pub cusps: Vec<CuspSummary>,
    pub all_cusps_tori: bool,
}

impl ValidationReport {
    /// Orientable, connected, consistent edges, and every cusp a torus.
    pub fn is_torus_cusped_manifold(&self) -> bool {
        self.orientable && self.connected && self.edges_consistent && self.all_cusps_tori
    }
}

impl IdealTriangulation {
    pub fn validate(&self) -> ValidationReport {
        let orientable = self.is_orientable();
        let (edge_class_count, per_tet) = self.edge_class_index();
        let mut edge_degrees = vec![0; edge_class_count];
        for row in &per_tet {
            for &k in row {
                edge_degrees[k] += 1;
            }
        }
        let edges_consistent = self.edge_classes().is_ok();
        let cusps: Vec<CuspSummary> = self
            .cusp_triangulations()
            .iter()
            .map(|c| CuspSummary {
                triangles: c.face_count(),
                vertices: c.vertex_count(),
                edges: c.edge_count(),
                euler_characteristic: c.euler_characteristic(),
            })
            .collect();
        let all_cusps_tori = cusps.iter().all(|c| c.euler_characteristic == 0);
        ValidationReport {
            tet_count: self.tet_count(),
            orientable,
            connected: self.is_connected(),
            edge_class_count,
            edge_degrees,
            edges_consistent,
            cusps,
            all_cusps_tori,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;

    #[test]
    fn reports_failures_without_erroring() {
        let r = one_tet_nonorientable().validate();
        assert!(!r.orientable);
        assert_eq!(r.edge_degrees.iter().sum::<usize>(), 6);
        let r = doubled_tet().validate();
        assert!(r.orientable);
        assert!(!r.all_cusps_tori);
        assert!(!r.is_torus_cusped_manifold());
        assert_eq!(r.cusps.len(), 4);
    }
}
