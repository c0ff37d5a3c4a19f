//! Per-triangle deformation gradient and Green strain.

use nalgebra::{Matrix2, Matrix3x2};

use super::{GarmentMesh, MeshError, PatternMesh, DEGENERACY_AREA};

/// Deformation of one 3D triangle relative to its 2D rest triangle.
#[derive(Debug, Clone, Copy)]
pub struct DeformationState {
    /// 3x2 deformation gradient mapping rest-plane edge vectors to world
    /// edge vectors.
    pub f: Matrix3x2<f64>,
    /// Green strain `(F^T F - I) / 2`; zero for isometric embeddings.
    pub green: Matrix2<f64>,
}

/// Inverse of the rest-shape edge matrix for a pattern triangle, used by both
/// strain evaluation and force assembly.
pub fn rest_inverse(pattern: &PatternMesh, pattern_tri: [usize; 3], tri: usize) -> Result<Matrix2<f64>, MeshError> {
    let [a, b, c] = pattern_tri;
    let u0 = pattern.vertices2d[a];
    let u1 = pattern.vertices2d[b];
    let u2 = pattern.vertices2d[c];
    let dm = Matrix2::new(u1.x - u0.x, u2.x - u0.x, u1.y - u0.y, u2.y - u0.y);
    let det = dm.determinant();
    if det.abs() < 2.0 * DEGENERACY_AREA {
        return Err(MeshError::SingularRestTriangle(tri));
    }
    Ok(dm.try_inverse().ok_or(MeshError::SingularRestTriangle(tri))?)
}

/// Deformation state of garment triangle `tri`.
///
/// Garment and pattern triangles correspond by index: stitching merges
/// vertices but preserves triangle order.
pub fn deformation_state(pattern: &PatternMesh, garment: &GarmentMesh, tri: usize) -> Result<DeformationState, MeshError> {
    let tri3 = garment.triangles[tri];
    let tri2 = pattern.triangles[tri];
    let dm_inv = rest_inverse(pattern, tri2, tri)?;

    let x0 = garment.vertices3d[tri3[0]];
    let x1 = garment.vertices3d[tri3[1]];
    let x2 = garment.vertices3d[tri3[2]];
    let d = Matrix3x2::from_columns(&[(x1 - x0), (x2 - x0)]);
    let f = d * dm_inv;
    let green = (f.transpose() * f - Matrix2::identity()) * 0.5;
    Ok(DeformationState { f, green })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{GarmentMesh, PatternMesh};
    use approx::assert_relative_eq;
    use nalgebra::{Matrix2, Point2, Point3};

    fn single_triangle(u: [(f64, f64); 3], x: [(f64, f64, f64); 3]) -> (PatternMesh, GarmentMesh) {
        let pattern = PatternMesh {
            vertices2d: u.iter().map(|&(a, b)| Point2::new(a, b)).collect(),
            triangles: vec![[0, 1, 2]],
            piece_id: vec![0],
            seam_pairs: vec![],
        };
        let garment = GarmentMesh::from_parts(
            x.iter().map(|&(a, b, c)| Point3::new(a, b, c)).collect(),
            vec![[0, 1, 2]],
        );
        (pattern, garment)
    }

    #[test]
    fn isometric_embedding_has_zero_strain() {
        // Same triangle, rotated into 3D.
        let (pattern, garment) = single_triangle(
            [(0.0, 0.0), (1.0, 0.0), (0.3, 0.8)],
            [(0.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.3, 0.8)],
        );
        let state = deformation_state(&pattern, &garment, 0).unwrap();
        assert!(state.green.norm() < 1e-12);
    }

    #[test]
    fn uniform_double_stretch() {
        let (pattern, garment) = single_triangle(
            [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)],
            [(0.0, 0.0, 0.0), (2.0, 0.0, 0.0), (0.0, 2.0, 0.0)],
        );
        let state = deformation_state(&pattern, &garment, 0).unwrap();
        assert_relative_eq!(state.green, Matrix2::identity() * 1.5, epsilon = 1e-12);
    }

    #[test]
    fn recovers_known_affine_map() {
        // Oracle: build the 3D triangle by a known affine action on the 2D
        // edge basis and check F reproduces it on those edges.
        let a = nalgebra::Matrix3x2::new(1.3, -0.2, 0.4, 0.9, -0.7, 0.25);
        let u = [(0.1, 0.2), (0.9, 0.3), (0.4, 1.1)];
        let to3 = |p: (f64, f64)| {
            let v = a * nalgebra::Vector2::new(p.0, p.1);
            (v.x, v.y, v.z)
        };
        let (pattern, garment) = single_triangle(u, [to3(u[0]), to3(u[1]), to3(u[2])]);
        let state = deformation_state(&pattern, &garment, 0).unwrap();
        assert_relative_eq!(state.f, a, epsilon = 1e-12);
        let sym = state.green - state.green.transpose();
        assert!(sym.norm() < 1e-14);
    }

    #[test]
    fn singular_rest_triangle_is_an_error() {
        let (pattern, garment) = single_triangle(
            [(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)],
            [(0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (2.0, 0.0, 0.0)],
        );
        assert!(matches!(
            deformation_state(&pattern, &garment, 0),
            Err(MeshError::SingularRestTriangle(0))
        ));
    }
}
