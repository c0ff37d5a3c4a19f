//! Triangle-mesh containers and the discrete differential quantities the
//! rest of the pipeline consumes.
//!
//! Meshes are indexed triangle soups with precomputed edge adjacency. All
//! operations here are pure functions of immutable snapshots; mutation happens
//! only by constructing new snapshots.

mod curvature;
mod obj;
mod shapes;
mod strain;
mod topology;

pub use curvature::{hinge_quantities, mean_curvature_summary, vertex_curvature, HingeQuantities};
pub use obj::{read_obj_2d, read_obj_3d, read_seam_sidecar, write_obj_2d, write_obj_3d, write_seam_sidecar, SeamSidecar};
pub use shapes::{cylinder_tube, flat_grid, icosahedron, unit_cube, uv_sphere};
pub use strain::{deformation_state, DeformationState};
pub use topology::{EdgeId, MeshTopology};

use nalgebra::{Point2, Point3};
use thiserror::Error;

/// Triangle area below this is treated as degenerate (m^2).
pub const DEGENERACY_AREA: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("triangle {tri} references vertex {vertex} out of range ({count} vertices)")]
    IndexOutOfRange { tri: usize, vertex: usize, count: usize },
    #[error("triangle {0} is degenerate (area < {DEGENERACY_AREA} m^2)")]
    DegenerateTriangle(usize),
    #[error("2D triangle {0} has non-positive signed area")]
    NegativeOrientation(usize),
    #[error("edge {0} is a boundary edge; no hinge")]
    BoundaryEdge(usize),
    #[error("edge {edge} is non-manifold ({count} incident triangles)")]
    NonManifoldEdge { edge: usize, count: usize },
    #[error("vertex {0} has no incident interior edge")]
    IsolatedVertex(usize),
    #[error("mesh has no interior edges")]
    NoInteriorEdges,
    #[error("2D triangle {0} is singular; deformation gradient undefined")]
    SingularRestTriangle(usize),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// 2D triangle mesh of sewing-pattern pieces.
///
/// `seam_pairs` lists pattern-vertex index pairs that stitch together when
/// the garment is assembled; `piece_id` tags each triangle with the pattern
/// piece it triangulates.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PatternMesh {
    pub vertices2d: Vec<Point2<f64>>,
    pub triangles: Vec<[usize; 3]>,
    pub piece_id: Vec<u32>,
    pub seam_pairs: Vec<(usize, usize)>,
}

impl PatternMesh {
    pub fn validate(&self) -> Result<(), MeshError> {
        let n = self.vertices2d.len();
        for (t, tri) in self.triangles.iter().enumerate() {
            for &v in tri {
                if v >= n {
                    return Err(MeshError::IndexOutOfRange { tri: t, vertex: v, count: n });
                }
            }
            let area = signed_area_2d(self.vertices2d[tri[0]], self.vertices2d[tri[1]], self.vertices2d[tri[2]]);
            if area <= 0.0 {
                return Err(MeshError::NegativeOrientation(t));
            }
            if area < DEGENERACY_AREA {
                return Err(MeshError::DegenerateTriangle(t));
            }
        }
        Ok(())
    }

    /// Rest area of a pattern triangle.
    pub fn triangle_area(&self, tri: usize) -> f64 {
        let [a, b, c] = self.triangles[tri];
        signed_area_2d(self.vertices2d[a], self.vertices2d[b], self.vertices2d[c])
    }
}

/// 3D triangle mesh of the assembled garment.
///
/// Triangle connectivity is identical to the stitched pattern connectivity.
/// `to_pattern[v]` lists the pattern vertices that map onto 3D vertex `v`;
/// seam vertices map to two or more.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GarmentMesh {
    pub vertices3d: Vec<Point3<f64>>,
    pub triangles: Vec<[usize; 3]>,
    pub to_pattern: Vec<Vec<usize>>,
}

impl GarmentMesh {
    /// Mesh with a trivial one-to-one pattern correspondence.
    pub fn from_parts(vertices3d: Vec<Point3<f64>>, triangles: Vec<[usize; 3]>) -> Self {
        let to_pattern = (0..vertices3d.len()).map(|i| vec![i]).collect();
        Self { vertices3d, triangles, to_pattern }
    }

    pub fn validate(&self) -> Result<(), MeshError> {
        let n = self.vertices3d.len();
        for (t, tri) in self.triangles.iter().enumerate() {
            for &v in tri {
                if v >= n {
                    return Err(MeshError::IndexOutOfRange { tri: t, vertex: v, count: n });
                }
            }
        }
        Ok(())
    }

    pub fn triangle_area(&self, tri: usize) -> f64 {
        let [a, b, c] = self.triangles[tri];
        let ab = self.vertices3d[b] - self.vertices3d[a];
        let ac = self.vertices3d[c] - self.vertices3d[a];
        0.5 * ab.cross(&ac).norm()
    }

    pub fn topology(&self) -> MeshTopology {
        MeshTopology::build(self.vertices3d.len(), &self.triangles)
    }
}

pub(crate) fn signed_area_2d(a: Point2<f64>, b: Point2<f64>, c: Point2<f64>) -> f64 {
    0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y))
}
