//! Hinge quantities and discrete curvature.
//!
//! A hinge is a pair of triangles sharing an interior edge. The bending angle
//! `alpha` is the supplement of the dihedral angle: zero when the triangles
//! are coplanar, `pi/2` at a right-angle fold. Local curvature across a hinge
//! is the curvature of the circle subtending the fold: two chords of mean
//! length `(h1 + h2) / 2` meeting at exterior angle `alpha` lie on a circle of
//! curvature `4 sin(alpha/2) / (h1 + h2)`. On a tessellated cylinder this
//! reproduces `1/r` exactly for hinges bending around the axis.

use nalgebra::Vector3;

use super::{GarmentMesh, MeshError, MeshTopology, DEGENERACY_AREA};

/// Geometry of one hinge.
#[derive(Debug, Clone, Copy)]
pub struct HingeQuantities {
    /// Supplement of the dihedral angle (radians, signed, in `(-pi, pi)`).
    pub alpha: f64,
    /// Altitude of the first triangle from its wing vertex onto the edge (m).
    pub h1: f64,
    /// Altitude of the second triangle (m).
    pub h2: f64,
    /// Shared edge length (m).
    pub edge_len: f64,
}

impl HingeQuantities {
    /// Curvature of the circumscribed arc across the hinge (1/m).
    pub fn curvature(&self) -> f64 {
        4.0 * (self.alpha.abs() * 0.5).sin() / (self.h1 + self.h2)
    }
}

/// Compute hinge geometry for an interior edge.
pub fn hinge_quantities(mesh: &GarmentMesh, topo: &MeshTopology, edge: usize) -> Result<HingeQuantities, MeshError> {
    let e = topo.edge(edge)?;
    let x0 = mesh.vertices3d[e.v0];
    let x1 = mesh.vertices3d[e.v1];
    let wa = mesh.vertices3d[e.wings[0]];
    let wb = mesh.vertices3d[e.wings[1]];

    let ev = x1 - x0;
    let edge_len = ev.norm();
    // Unnormalized plane normals on either side of the edge; both point the
    // same way when the hinge is flat.
    let na = ev.cross(&(wa - x0));
    let nb = (wb - x0).cross(&ev);
    let area_a = 0.5 * na.norm();
    let area_b = 0.5 * nb.norm();
    if area_a < DEGENERACY_AREA || edge_len == 0.0 {
        return Err(MeshError::DegenerateTriangle(e.tris[0]));
    }
    if area_b < DEGENERACY_AREA {
        return Err(MeshError::DegenerateTriangle(e.tris[1]));
    }

    let na_hat = na / (2.0 * area_a);
    let nb_hat = nb / (2.0 * area_b);
    let e_hat = ev / edge_len;
    let alpha = cross_dot(&na_hat, &nb_hat, &e_hat).atan2(na_hat.dot(&nb_hat));

    Ok(HingeQuantities {
        alpha,
        h1: 2.0 * area_a / edge_len,
        h2: 2.0 * area_b / edge_len,
        edge_len,
    })
}

fn cross_dot(a: &Vector3<f64>, b: &Vector3<f64>, c: &Vector3<f64>) -> f64 {
    a.cross(b).dot(c)
}

/// Local curvature at a vertex (1/m): the largest hinge curvature among the
/// interior edges incident to the vertex. Flat neighborhoods give zero; the
/// sharpest fold through the vertex dominates, which is the quantity wrinkle
/// density responds to.
pub fn vertex_curvature(mesh: &GarmentMesh, topo: &MeshTopology, vertex: usize) -> Result<f64, MeshError> {
    let edges = topo
        .vertex_interior_edges
        .get(vertex)
        .ok_or(MeshError::IsolatedVertex(vertex))?;
    if edges.is_empty() {
        return Err(MeshError::IsolatedVertex(vertex));
    }
    let mut best = 0.0f64;
    for &eid in edges {
        let h = hinge_quantities(mesh, topo, eid)?;
        best = best.max(h.curvature());
    }
    Ok(best)
}

/// Mean of the local curvature over all non-isolated vertices (1/m).
pub fn mean_curvature_summary(mesh: &GarmentMesh) -> Result<f64, MeshError> {
    let topo = mesh.topology();
    if topo.interior_edges().next().is_none() {
        return Err(MeshError::NoInteriorEdges);
    }
    let mut sum = 0.0;
    let mut count = 0usize;
    for v in 0..mesh.vertices3d.len() {
        if topo.vertex_interior_edges[v].is_empty() {
            continue;
        }
        sum += vertex_curvature(mesh, &topo, v)?;
        count += 1;
    }
    if count == 0 {
        return Err(MeshError::NoInteriorEdges);
    }
    Ok(sum / count as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::shapes::{cylinder_tube, flat_grid, icosahedron};
    use crate::mesh::GarmentMesh;
    use approx::assert_relative_eq;
    use nalgebra::Point3;

    fn two_triangle_hinge(fold: f64) -> GarmentMesh {
        // Shared edge on the x axis; wing b rotates about it by `fold`.
        let vertices = vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(0.5, 1.0, 0.0),
            Point3::new(0.5, -fold.cos(), fold.sin()),
        ];
        let triangles = vec![[0, 1, 2], [1, 0, 3]];
        GarmentMesh::from_parts(vertices, triangles)
    }

    fn shared_edge_id(topo: &MeshTopology) -> usize {
        topo.interior_edges().next().expect("interior edge").0
    }

    #[test]
    fn flat_hinge_has_zero_alpha() {
        let mesh = two_triangle_hinge(0.0);
        let topo = mesh.topology();
        let h = hinge_quantities(&mesh, &topo, shared_edge_id(&topo)).unwrap();
        assert_relative_eq!(h.alpha, 0.0, epsilon = 1e-12);
        assert_relative_eq!(h.h1, 1.0, epsilon = 1e-12);
        assert_relative_eq!(h.h2, 1.0, epsilon = 1e-12);
        assert_relative_eq!(h.edge_len, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn right_angle_fold_gives_half_pi() {
        let mesh = two_triangle_hinge(std::f64::consts::FRAC_PI_2);
        let topo = mesh.topology();
        let h = hinge_quantities(&mesh, &topo, shared_edge_id(&topo)).unwrap();
        assert_relative_eq!(h.alpha.abs(), std::f64::consts::FRAC_PI_2, epsilon = 1e-12);
    }

    #[test]
    fn icosahedron_edge_matches_brute_force_dihedral() {
        // Oracle: dihedral angle from the analytic coordinates, computed for
        // every edge from the face normals directly.
        let mesh = icosahedron(1.0);
        let topo = mesh.topology();
        for (eid, e) in topo.interior_edges() {
            let h = hinge_quantities(&mesh, &topo, eid).unwrap();
            let normal = |t: usize| {
                let [a, b, c] = mesh.triangles[t];
                (mesh.vertices3d[b] - mesh.vertices3d[a])
                    .cross(&(mesh.vertices3d[c] - mesh.vertices3d[a]))
                    .normalize()
            };
            // Outward-oriented icosahedron: the dihedral angle between faces
            // is pi minus the angle between outward normals.
            let n0 = normal(e.tris[0]);
            let n1 = normal(e.tris[1]);
            let dihedral = std::f64::consts::PI - n0.dot(&n1).clamp(-1.0, 1.0).acos();
            assert_relative_eq!(h.alpha.abs(), std::f64::consts::PI - dihedral, epsilon = 1e-10);
            // Known closed form: cos(dihedral) = -sqrt(5)/3.
            let expected = (-(5.0f64).sqrt() / 3.0).acos();
            assert_relative_eq!(dihedral, expected, epsilon = 1e-10);
        }
    }

    #[test]
    fn boundary_edge_is_an_error() {
        let mesh = flat_grid(3, 3, 0.1);
        let topo = mesh.topology();
        let boundary = topo
            .edges
            .iter()
            .position(|e| !e.is_interior())
            .expect("grid has boundary");
        assert!(matches!(
            hinge_quantities(&mesh, &topo, boundary),
            Err(MeshError::BoundaryEdge(_))
        ));
    }

    #[test]
    fn degenerate_triangle_is_an_error() {
        let vertices = vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(0.5, 1.0, 0.0),
            Point3::new(0.5, 0.0, 0.0), // collinear with the edge
        ];
        let mesh = GarmentMesh::from_parts(vertices, vec![[0, 1, 2], [1, 0, 3]]);
        let topo = mesh.topology();
        assert!(matches!(
            hinge_quantities(&mesh, &topo, shared_edge_id(&topo)),
            Err(MeshError::DegenerateTriangle(_))
        ));
    }

    #[test]
    fn flat_grid_interior_curvature_is_zero() {
        let mesh = flat_grid(6, 6, 0.1);
        let topo = mesh.topology();
        // Pick a strictly interior vertex.
        let v = 2 * 6 + 2;
        assert_relative_eq!(vertex_curvature(&mesh, &topo, v).unwrap(), 0.0, epsilon = 1e-12);
        assert_relative_eq!(mean_curvature_summary(&mesh).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn cylinder_curvature_matches_inverse_radius() {
        // Oracle: brute-force evaluation of the hinge formula on an analytic
        // cylinder, compared against 1/r.
        for &(r, expected) in &[(0.1, 10.0), (1.0, 1.0)] {
            let mesh = cylinder_tube(r, 4.0 * r, 72, 8); // 5 degree steps
            let topo = mesh.topology();
            for v in 0..mesh.vertices3d.len() {
                let k = vertex_curvature(&mesh, &topo, v).unwrap();
                assert!(
                    (k - expected).abs() <= 0.1 * expected,
                    "r={r}: vertex {v} curvature {k} not within 10% of {expected}"
                );
            }
            let mean = mean_curvature_summary(&mesh).unwrap();
            assert!((mean - expected).abs() <= 0.1 * expected);
        }
    }

    #[test]
    fn disjoint_cylinders_average_their_curvatures() {
        let a = cylinder_tube(0.1, 0.4, 72, 8);
        let b = cylinder_tube(1.0, 4.0, 72, 8);
        assert_eq!(a.vertices3d.len(), b.vertices3d.len());
        let offset = a.vertices3d.len();
        let mut vertices = a.vertices3d.clone();
        vertices.extend(b.vertices3d.iter().map(|p| Point3::new(p.x + 5.0, p.y, p.z)));
        let mut triangles = a.triangles.clone();
        triangles.extend(b.triangles.iter().map(|t| [t[0] + offset, t[1] + offset, t[2] + offset]));
        let mesh = GarmentMesh::from_parts(vertices, triangles);
        let mean = mean_curvature_summary(&mesh).unwrap();
        assert!((mean - 5.5).abs() <= 0.55, "mean {mean} not within 10% of 5.5");
    }

    #[test]
    fn isolated_vertex_is_an_error() {
        let mut mesh = flat_grid(3, 3, 0.1);
        mesh.vertices3d.push(Point3::new(9.0, 9.0, 9.0));
        mesh.to_pattern.push(vec![mesh.vertices3d.len() - 1]);
        let topo = mesh.topology();
        let v = mesh.vertices3d.len() - 1;
        assert!(matches!(
            vertex_curvature(&mesh, &topo, v),
            Err(MeshError::IsolatedVertex(_))
        ));
    }
}
