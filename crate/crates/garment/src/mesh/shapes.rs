//! Procedural reference meshes used by tests and the evaluation harness.

use nalgebra::Point3;

use super::GarmentMesh;

/// Flat grid in the xy plane: `nx` by `ny` vertices spaced `step` apart.
pub fn flat_grid(nx: usize, ny: usize, step: f64) -> GarmentMesh {
    let mut vertices = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            vertices.push(Point3::new(i as f64 * step, j as f64 * step, 0.0));
        }
    }
    let mut triangles = Vec::new();
    for j in 0..ny - 1 {
        for i in 0..nx - 1 {
            let a = j * nx + i;
            let b = a + 1;
            let c = a + nx;
            let d = c + 1;
            triangles.push([a, b, d]);
            triangles.push([a, d, c]);
        }
    }
    GarmentMesh::from_parts(vertices, triangles)
}

/// Open cylinder around the z axis: `segments` angular steps, `rows + 1`
/// vertex rings over height `height`.
pub fn cylinder_tube(radius: f64, height: f64, segments: usize, rows: usize) -> GarmentMesh {
    let mut vertices = Vec::with_capacity(segments * (rows + 1));
    for j in 0..=rows {
        let z = height * j as f64 / rows as f64;
        for i in 0..segments {
            let phi = std::f64::consts::TAU * i as f64 / segments as f64;
            vertices.push(Point3::new(radius * phi.cos(), radius * phi.sin(), z));
        }
    }
    let mut triangles = Vec::new();
    for j in 0..rows {
        for i in 0..segments {
            let i1 = (i + 1) % segments;
            let a = j * segments + i;
            let b = j * segments + i1;
            let c = (j + 1) * segments + i;
            let d = (j + 1) * segments + i1;
            triangles.push([a, b, d]);
            triangles.push([a, d, c]);
        }
    }
    GarmentMesh::from_parts(vertices, triangles)
}

/// Regular icosahedron with circumradius `radius`, centered at the origin.
pub fn icosahedron(radius: f64) -> GarmentMesh {
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let scale = radius / (1.0 + phi * phi).sqrt();
    let mut vertices = Vec::with_capacity(12);
    for &(a, b) in &[(1.0, phi), (1.0, -phi), (-1.0, phi), (-1.0, -phi)] {
        vertices.push(Point3::new(0.0, a * scale, b * scale));
        vertices.push(Point3::new(a * scale, b * scale, 0.0));
        vertices.push(Point3::new(b * scale, 0.0, a * scale));
    }
    // Faces are the vertex triples whose pairwise distances all equal the
    // edge length, oriented outward.
    let edge = 2.0 * scale;
    let close = |a: usize, b: usize| ((vertices[a] - vertices[b]).norm() - edge).abs() < 1e-9 * radius;
    let mut triangles = Vec::with_capacity(20);
    for a in 0..12 {
        for b in a + 1..12 {
            for c in b + 1..12 {
                if close(a, b) && close(b, c) && close(a, c) {
                    let n = (vertices[b] - vertices[a]).cross(&(vertices[c] - vertices[a]));
                    let centroid = (vertices[a].coords + vertices[b].coords + vertices[c].coords) / 3.0;
                    if n.dot(&centroid) > 0.0 {
                        triangles.push([a, b, c]);
                    } else {
                        triangles.push([a, c, b]);
                    }
                }
            }
        }
    }
    debug_assert_eq!(triangles.len(), 20);
    GarmentMesh::from_parts(vertices, triangles)
}

/// Axis-aligned cube spanning `[-half, half]^3`.
pub fn unit_cube(half: f64) -> GarmentMesh {
    let h = half;
    let vertices = vec![
        Point3::new(-h, -h, -h),
        Point3::new(h, -h, -h),
        Point3::new(h, h, -h),
        Point3::new(-h, h, -h),
        Point3::new(-h, -h, h),
        Point3::new(h, -h, h),
        Point3::new(h, h, h),
        Point3::new(-h, h, h),
    ];
    let triangles = vec![
        [0, 2, 1], [0, 3, 2], // bottom (z = -h)
        [4, 5, 6], [4, 6, 7], // top
        [0, 1, 5], [0, 5, 4], // front (y = -h)
        [2, 3, 7], [2, 7, 6], // back
        [1, 2, 6], [1, 6, 5], // right
        [3, 0, 4], [3, 4, 7], // left
    ];
    GarmentMesh::from_parts(vertices, triangles)
}

/// Latitude/longitude sphere.
pub fn uv_sphere(radius: f64, segments: usize, rings: usize) -> GarmentMesh {
    let mut vertices = vec![Point3::new(0.0, 0.0, radius)];
    for j in 1..rings {
        let theta = std::f64::consts::PI * j as f64 / rings as f64;
        for i in 0..segments {
            let phi = std::f64::consts::TAU * i as f64 / segments as f64;
            vertices.push(Point3::new(
                radius * theta.sin() * phi.cos(),
                radius * theta.sin() * phi.sin(),
                radius * theta.cos(),
            ));
        }
    }
    vertices.push(Point3::new(0.0, 0.0, -radius));
    let bottom = vertices.len() - 1;
    let ring = |j: usize, i: usize| 1 + (j - 1) * segments + (i % segments);

    let mut triangles = Vec::new();
    for i in 0..segments {
        triangles.push([0, ring(1, i), ring(1, i + 1)]);
    }
    for j in 1..rings - 1 {
        for i in 0..segments {
            let a = ring(j, i);
            let b = ring(j, i + 1);
            let c = ring(j + 1, i);
            let d = ring(j + 1, i + 1);
            triangles.push([a, c, d]);
            triangles.push([a, d, b]);
        }
    }
    for i in 0..segments {
        triangles.push([bottom, ring(rings - 1, i + 1), ring(rings - 1, i)]);
    }
    GarmentMesh::from_parts(vertices, triangles)
}
