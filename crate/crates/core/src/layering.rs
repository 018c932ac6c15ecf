//! Layered triangulations of surface bundles: one tetrahedron per flip,
//! stacked on the base surface, with the top glued back to the bottom by the
//! closing relabeling.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{Perm3, Perm4};
use crate::surface::{ptorus_word_to_flips, Relabeling, SideGluing, SurfaceError, SurfaceIdealTri};
use crate::taut::{check_full_taut, cusp_angle_profile, Coorientation};
use crate::tri::{Gluing, IdealTriangulation, TriError, ValidationReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LayerError {
    #[error("flip list is empty")]
    NoFlips,
    #[error("flip {step}: {source}")]
    Flip { step: usize, source: SurfaceError },
    #[error("closing map is not a simplicial isomorphism onto the base")]
    BadClosing,
    #[error("base triangle {0} is never flipped and the closing map cycles through unflipped triangles only")]
    UnflippedCycle(usize),
    #[error("complex is not a valid gluing: {0}")]
    Gluing(#[from] TriError),
    #[error("complex fails manifold validation: {0}")]
    Invalid(String),
    #[error("complex is not taut: {0}")]
    NotTaut(String),
    #[error("layer {index} out of range (0..={max})")]
    LayerOutOfRange { index: usize, max: usize },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("invalid monodromy JSON: {0}")]
    Json(String),
}

/// Base triangulation, flips in order, and the relabeling of the final
/// triangulation onto the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromySpec {
    pub base: SurfaceIdealTri,
    pub flips: Vec<usize>,
    pub closing: Relabeling,
}

#[derive(Serialize, Deserialize)]
struct MonodromyJson {
    format: String,
    version: u32,
    base: Vec<[SideGluing; 3]>,
    flips: Vec<usize>,
    closing: Relabeling,
}

impl MonodromySpec {
    /// Monodromy of the once-punctured torus given by an `R`/`L` word.
    pub fn from_ptorus_word(word: &str) -> Result<Self, LayerError> {
        let (base, seq) = ptorus_word_to_flips(word)?;
        let closing = seq.closing.ok_or(SurfaceError::NoClosingMap)?;
        Ok(MonodromySpec {
            base,
            flips: seq.flips,
            closing,
        })
    }

    pub fn to_json(&self) -> String {
        let raw = MonodromyJson {
            format: "tautforge-monodromy".into(),
            version: 1,
            base: self.base.gluings().to_vec(),
            flips: self.flips.clone(),
            closing: self.closing.clone(),
        };
        serde_json::to_string_pretty(&raw).expect("serializable") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, LayerError> {
        let raw: MonodromyJson =
            serde_json::from_str(text).map_err(|e| LayerError::Json(e.to_string()))?;
        if raw.format != "tautforge-monodromy" || raw.version != 1 {
            return Err(LayerError::Json(format!(
                "unsupported format {:?} version {}",
                raw.format, raw.version
            )));
        }
        Ok(MonodromySpec {
            base: SurfaceIdealTri::new(raw.base)?,
            flips: raw.flips,
            closing: raw.closing,
        })
    }
}

/// Face of a tetrahedron carrying a surface triangle, with the map from
/// triangle labels to tetrahedron vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct FaceRef {
    tet: usize,
    face: usize,
    labels: [usize; 3],
}

/// The surface triangle below the current level: a tetrahedron face, or a
/// base triangle not yet covered by any tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Below {
    Base(usize),
    Face(FaceRef),
}

#[derive(Clone, Debug)]
pub struct LayeredTriangulation {
    pub tri: IdealTriangulation,
    pub coor: Coorientation,
    pub report: ValidationReport,
    /// Face class of every triangle of every layer; layer `k` is the
    /// surface after `k` flips.
    layers: Vec<Vec<usize>>,
}

impl LayeredTriangulation {
    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    pub fn layer_face_classes(&self, index: usize) -> Option<&[usize]> {
        self.layers.get(index).map(Vec::as_slice)
    }

    /// Weight 1 on each face class of layer `index`.
    pub fn fiber_weights(&self, index: usize) -> Result<Vec<u64>, LayerError> {
        let layer = self.layers.get(index).ok_or(LayerError::LayerOutOfRange {
            index,
            max: self.layers.len() - 1,
        })?;
        let mut w = vec![0u64; self.tri.face_classes().len()];
        for &k in layer {
            w[k] += 1;
        }
        Ok(w)
    }
}

fn other_two(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Glues one taut tetrahedron per flip on top of the base and closes up.
pub fn build_mapping_torus(spec: &MonodromySpec) -> Result<LayeredTriangulation, LayerError> {
    if spec.flips.is_empty() {
        return Err(LayerError::NoFlips);
    }
    let n_tri = spec.base.triangle_count();
    let n_tet = spec.flips.len();
    let mut gluing: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; n_tet];
    let mut glue = |a: FaceRef, b: FaceRef| {
        let mut images = [0u8; 4];
        for l in 0..3 {
            images[a.labels[l]] = b.labels[l] as u8;
        }
        images[a.face] = b.face as u8;
        let perm = Perm4::new(images).expect("face maps are bijective");
        gluing[a.tet][a.face] = Some(Gluing { tet: b.tet, perm });
        gluing[b.tet][b.face] = Some(Gluing {
            tet: a.tet,
            perm: perm.inverse(),
        });
    };

    let mut below: Vec<Below> = (0..n_tri).map(Below::Base).collect();
    let mut upper: Vec<Option<FaceRef>> = vec![None; n_tri];
    let mut surface = spec.base.clone();
    // Per layer, the (tet face) sitting on each current triangle, or the base
    // triangle it still is.
    let mut layer_refs: Vec<Vec<Below>> = vec![below.clone()];

    for (step, &edge) in spec.flips.iter().enumerate() {
        let tau = step;
        let ((a, i), (b, _)) = *surface.edges().get(edge).ok_or(LayerError::Flip {
            step,
            source: SurfaceError::EdgeOutOfRange(edge),
        })?;
        let q = surface.gluing(a, i).perm;
        let (a1, a2) = other_two(i);
        let (j, b1, b2) = (q.apply(i), q.apply(a1), q.apply(a2));
        let (next, trace) = surface
            .apply_flip_traced(edge)
            .map_err(|source| LayerError::Flip { step, source })?;

        // Tetrahedron vertices: i -> 0, a1 -> 1, a2 -> 2, j -> 3.
        let mut a_labels = [0usize; 3];
        a_labels[i] = 0;
        a_labels[a1] = 1;
        a_labels[a2] = 2;
        let mut b_labels = [0usize; 3];
        b_labels[j] = 3;
        b_labels[b1] = 1;
        b_labels[b2] = 2;
        let bottom_a = FaceRef {
            tet: tau,
            face: 3,
            labels: a_labels,
        };
        let bottom_b = FaceRef {
            tet: tau,
            face: 0,
            labels: b_labels,
        };
        for (side, tri) in [(bottom_a, a), (bottom_b, b)] {
            match below[tri] {
                Below::Base(k) => upper[k] = Some(side),
                Below::Face(r) => glue(side, r),
            }
        }
        below[trace.tris[0]] = Below::Face(FaceRef {
            tet: tau,
            face: 2,
            labels: [0, 1, 3],
        });
        below[trace.tris[1]] = Below::Face(FaceRef {
            tet: tau,
            face: 1,
            labels: [0, 3, 2],
        });
        surface = next;
        layer_refs.push(below.clone());
    }

    if !surface.check_isomorphism(&spec.base, &spec.closing) {
        return Err(LayerError::BadClosing);
    }
    // Follows the closing map from top triangle `s` until it reaches a base
    // triangle covered by a tetrahedron; returns that face and the composed
    // labels (labels of `s` -> labels of the base triangle).
    let resolve_up = |s: usize| -> Result<(FaceRef, Perm3), LayerError> {
        let (mut k, mut pi) = spec.closing[s];
        for _ in 0..=n_tri {
            if let Some(face) = upper[k] {
                return Ok((face, pi));
            }
            // Base triangle k was never flipped: it is also top triangle k.
            let (k2, pi2) = spec.closing[k];
            pi = pi.then(&pi2);
            k = k2;
        }
        Err(LayerError::UnflippedCycle(s))
    };
    for s in 0..n_tri {
        if let Below::Face(lower) = below[s] {
            let (up, pi) = resolve_up(s)?;
            let labels = std::array::from_fn(|x| up.labels[pi.apply(x)]);
            glue(lower, FaceRef { labels, ..up });
        }
    }

    let gluings = gluing
        .into_iter()
        .enumerate()
        .map(|(t, row)| {
            let mut out = [Gluing {
                tet: 0,
                perm: Perm4::identity(),
            }; 4];
            for (f, g) in row.into_iter().enumerate() {
                out[f] =
                    g.ok_or_else(|| LayerError::Invalid(format!("tet {t} face {f} left unglued")))?;
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>, LayerError>>()?;
    let tri = IdealTriangulation::new(gluings)?;
    let report = tri.validate();
    if !report.is_torus_cusped_manifold() {
        return Err(LayerError::Invalid(format!(
            "orientable={} connected={} edges_consistent={} cusp_euler={:?}",
            report.orientable,
            report.connected,
            report.edges_consistent,
            report
                .cusps
                .iter()
                .map(|c| c.euler_characteristic)
                .collect::<Vec<_>>()
        )));
    }
    let flags: Vec<[bool; 4]> = (0..n_tet).map(|_| [false, true, true, false]).collect();
    let coor = Coorientation::from_tet_flags(&tri, &flags)
        .map_err(|e| LayerError::NotTaut(e.to_string()))?;
    if !check_full_taut(&tri, &coor) {
        return Err(LayerError::NotTaut(format!(
            "edge pi counts {:?}",
            crate::taut::edge_pi_counts(&tri, &coor)
        )));
    }
    if cusp_angle_profile(&tri, &coor)
        .iter()
        .flatten()
        .any(|&p| p != 2)
    {
        return Err(LayerError::NotTaut(
            "cusp vertex without exactly two pi angles".into(),
        ));
    }

    // Face class of each layer triangle. A base triangle never covered from
    // above is resolved through the closing map to the face beneath its
    // preimage at the top.
    let face_class_of = |r: FaceRef| tri.face_class(r.tet, r.face);
    let base_face = |k: usize| -> Result<usize, LayerError> {
        let mut k = k;
        for _ in 0..=n_tri {
            if let Some(face) = upper[k] {
                return Ok(face_class_of(face));
            }
            let s = spec
                .closing
                .iter()
                .position(|&(t, _)| t == k)
                .expect("closing is a bijection");
            match below[s] {
                Below::Face(r) => return Ok(face_class_of(r)),
                Below::Base(k2) => k = k2,
            }
        }
        Err(LayerError::UnflippedCycle(k))
    };
    let layers = layer_refs
        .iter()
        .map(|refs| {
            refs.iter()
                .map(|r| match *r {
                    Below::Face(f) => Ok(face_class_of(f)),
                    Below::Base(k) => base_face(k),
                })
                .collect()
        })
        .collect::<Result<Vec<Vec<usize>>, LayerError>>()?;
    Ok(LayeredTriangulation {
        tri,
        coor,
        report,
        layers,
    })
}
