//! Silhouette extraction: project the garment mesh, rasterize the projected
//! triangles to a binary mask, and trace the outer boundary of the largest
//! connected component as a closed polygon.
//!
//! Garment silhouettes are non-convex (pants), so the polygon is traced from
//! the raster rather than taken as a hull. The contour follows pixel edges
//! ("cracks"), so its enclosed area equals the covered-pixel area exactly.

use nalgebra::Point2;

use crate::mesh::GarmentMesh;

use super::{FeatureError, ProjectionMatrix, SilhouettePolygon};

/// Default raster resolution (pixels along the larger image-plane extent).
pub const RASTER_DEFAULT: usize = 512;

/// Project a garment mesh and trace its silhouette polygon (counter-clockwise,
/// image-plane units).
pub fn project_silhouette(
    mesh: &GarmentMesh,
    projection: &ProjectionMatrix,
    raster_res: usize,
) -> Result<SilhouettePolygon, FeatureError> {
    if mesh.vertices3d.is_empty() || mesh.triangles.is_empty() {
        return Err(FeatureError::EmptyMesh);
    }
    let projected: Vec<Point2<f64>> = mesh.vertices3d.iter().map(|p| projection.project(p)).collect();

    let (mut min, mut max) = (projected[0], projected[0]);
    for p in &projected {
        min.x = min.x.min(p.x);
        min.y = min.y.min(p.y);
        max.x = max.x.max(p.x);
        max.y = max.y.max(p.y);
    }
    let extent = (max.x - min.x).max(max.y - min.y);
    if (max.x - min.x) < 1e-12 || (max.y - min.y) < 1e-12 {
        return Err(FeatureError::DegenerateProjection(0.0));
    }

    let margin = 2usize;
    let res = raster_res.max(8);
    let cell = extent / (res - 2 * margin) as f64;
    let origin = Point2::new(min.x - margin as f64 * cell, min.y - margin as f64 * cell);
    let nx = ((max.x - origin.x) / cell).ceil() as usize + margin + 1;
    let ny = ((max.y - origin.y) / cell).ceil() as usize + margin + 1;

    let mut mask = vec![false; nx * ny];
    for tri in &mesh.triangles {
        rasterize_triangle(
            &mut mask,
            nx,
            ny,
            origin,
            cell,
            [projected[tri[0]], projected[tri[1]], projected[tri[2]]],
        );
    }

    let component = largest_component(&mask, nx, ny);
    let filled = component.iter().filter(|&&b| b).count();
    if filled < 3 {
        return Err(FeatureError::DegenerateProjection(filled as f64));
    }

    let corners = trace_outer_contour(&component, nx, ny);
    let mut vertices: Vec<Point2<f64>> = corners
        .into_iter()
        .map(|(i, j)| Point2::new(origin.x + i as f64 * cell, origin.y + j as f64 * cell))
        .collect();
    if super::polygon::polygon_area(&vertices) < 0.0 {
        vertices.reverse();
    }
    SilhouettePolygon::new(vertices)
}

fn rasterize_triangle(mask: &mut [bool], nx: usize, ny: usize, origin: Point2<f64>, cell: f64, tri: [Point2<f64>; 3]) {
    let minx = tri.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
    let maxx = tri.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
    let miny = tri.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
    let maxy = tri.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);

    let i0 = (((minx - origin.x) / cell).floor().max(0.0)) as usize;
    let i1 = ((((maxx - origin.x) / cell).ceil()) as usize).min(nx.saturating_sub(1));
    let j0 = (((miny - origin.y) / cell).floor().max(0.0)) as usize;
    let j1 = ((((maxy - origin.y) / cell).ceil()) as usize).min(ny.saturating_sub(1));

    let e = |a: Point2<f64>, b: Point2<f64>, p: Point2<f64>| (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    let area2 = e(tri[0], tri[1], tri[2]);
    if area2.abs() < 1e-30 {
        return;
    }
    let sign = area2.signum();
    // A small tolerance keeps shared triangle edges gap-free.
    let tol = -1e-12 * cell * cell;

    for j in j0..=j1 {
        for i in i0..=i1 {
            let p = Point2::new(origin.x + (i as f64 + 0.5) * cell, origin.y + (j as f64 + 0.5) * cell);
            let w0 = sign * e(tri[0], tri[1], p);
            let w1 = sign * e(tri[1], tri[2], p);
            let w2 = sign * e(tri[2], tri[0], p);
            if w0 >= tol && w1 >= tol && w2 >= tol {
                mask[j * nx + i] = true;
            }
        }
    }
}

fn largest_component(mask: &[bool], nx: usize, ny: usize) -> Vec<bool> {
    let mut label = vec![0u32; mask.len()];
    let mut sizes = vec![0usize]; // label 0 = empty
    let mut stack = Vec::new();
    for start in 0..mask.len() {
        if !mask[start] || label[start] != 0 {
            continue;
        }
        let id = sizes.len() as u32;
        sizes.push(0);
        stack.push(start);
        label[start] = id;
        while let Some(idx) = stack.pop() {
            sizes[id as usize] += 1;
            let (i, j) = (idx % nx, idx / nx);
            let mut push = |i2: usize, j2: usize| {
                let k = j2 * nx + i2;
                if mask[k] && label[k] == 0 {
                    label[k] = id;
                    stack.push(k);
                }
            };
            if i > 0 {
                push(i - 1, j);
            }
            if i + 1 < nx {
                push(i + 1, j);
            }
            if j > 0 {
                push(i, j - 1);
            }
            if j + 1 < ny {
                push(i, j + 1);
            }
        }
    }
    let best = (1..sizes.len()).max_by_key(|&i| sizes[i]).unwrap_or(0) as u32;
    label.iter().map(|&l| l != 0 && l == best).collect()
}

#[derive(Clone, Copy, PartialEq)]
enum Dir {
    East,
    North,
    West,
    South,
}

/// Trace the outer boundary of the filled region along pixel edges, keeping
/// the region on the left. Returns corner coordinates of the turns.
fn trace_outer_contour(mask: &[bool], nx: usize, ny: usize) -> Vec<(usize, usize)> {
    let filled = |i: isize, j: isize| -> bool {
        i >= 0 && j >= 0 && (i as usize) < nx && (j as usize) < ny && mask[j as usize * nx + i as usize]
    };
    // First filled pixel in (row, column) order: nothing filled below it.
    let start_pixel = (0..mask.len()).find(|&k| mask[k]).expect("non-empty mask");
    let (si, sj) = ((start_pixel % nx) as isize, (start_pixel / nx) as isize);

    // Start on its bottom edge heading east: region above, empty below.
    let start = (si, sj, Dir::East);
    let mut corners = Vec::new();
    let (mut x, mut y, mut dir) = start;
    loop {
        // Advance one edge.
        let (dx, dy) = match dir {
            Dir::East => (1, 0),
            Dir::North => (0, 1),
            Dir::West => (-1, 0),
            Dir::South => (0, -1),
        };
        x += dx;
        y += dy;
        // Pixels ahead of the corner relative to travel direction.
        let (fl, fr) = match dir {
            Dir::East => (filled(x, y), filled(x, y - 1)),
            Dir::North => (filled(x - 1, y), filled(x, y)),
            Dir::West => (filled(x - 1, y - 1), filled(x - 1, y)),
            Dir::South => (filled(x, y - 1), filled(x - 1, y - 1)),
        };
        let new_dir = if fr {
            // Turn right.
            match dir {
                Dir::East => Dir::South,
                Dir::South => Dir::West,
                Dir::West => Dir::North,
                Dir::North => Dir::East,
            }
        } else if fl {
            dir
        } else {
            // Turn left.
            match dir {
                Dir::East => Dir::North,
                Dir::North => Dir::West,
                Dir::West => Dir::South,
                Dir::South => Dir::East,
            }
        };
        if new_dir != dir {
            corners.push((x as usize, y as usize));
            dir = new_dir;
        }
        if (x, y, dir) == start {
            break;
        }
    }
    corners
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{cylinder_tube, unit_cube, uv_sphere};

    #[test]
    fn cube_silhouette_is_a_square() {
        let mesh = unit_cube(0.5);
        let poly = project_silhouette(&mesh, &ProjectionMatrix::default(), 512).unwrap();
        let area = poly.area();
        assert!((area - 1.0).abs() < 0.01, "area {area}");
        // Rectilinear trace of a square has exactly four corners.
        assert_eq!(poly.vertices.len(), 4);
    }

    #[test]
    fn sphere_silhouette_area_matches_disc() {
        let mesh = uv_sphere(1.0, 128, 64);
        let poly = project_silhouette(&mesh, &ProjectionMatrix::default(), 512).unwrap();
        let area = poly.area();
        let expected = std::f64::consts::PI;
        assert!((area - expected).abs() / expected < 0.01, "area {area}");
    }

    #[test]
    fn two_tubes_give_nonconvex_silhouette() {
        // Two parallel tubes viewed side-on, joined into one mesh and bridged
        // by a thin slab so they form one component: the outline is a "U".
        let a = cylinder_tube(0.2, 1.0, 48, 8);
        let b = cylinder_tube(0.2, 1.0, 48, 8);
        let offset = a.vertices3d.len();
        let mut vertices = a.vertices3d.clone();
        vertices.extend(b.vertices3d.iter().map(|p| nalgebra::Point3::new(p.x + 1.0, p.y, p.z)));
        let mut triangles = a.triangles.clone();
        triangles.extend(b.triangles.iter().map(|t| [t[0] + offset, t[1] + offset, t[2] + offset]));
        // Bridge near the top (like a pants yoke).
        let base = vertices.len();
        vertices.push(nalgebra::Point3::new(-0.2, 0.0, 0.85));
        vertices.push(nalgebra::Point3::new(1.2, 0.0, 0.85));
        vertices.push(nalgebra::Point3::new(1.2, 0.0, 1.0));
        vertices.push(nalgebra::Point3::new(-0.2, 0.0, 1.0));
        triangles.push([base, base + 1, base + 2]);
        triangles.push([base, base + 2, base + 3]);
        let mesh = GarmentMesh::from_parts(vertices, triangles);

        let proj = ProjectionMatrix::orthographic_along(1);
        let poly = project_silhouette(&mesh, &proj, 512).unwrap();
        let area = poly.area();
        // Convex hull area from the resampled boundary.
        let hull = convex_hull_area(&poly.vertices);
        assert!(area < 0.9 * hull, "area {area} hull {hull}");
    }

    #[test]
    fn degenerate_projection_is_an_error() {
        // All vertices on a line after projection.
        let mesh = GarmentMesh::from_parts(
            vec![
                nalgebra::Point3::new(0.0, 0.0, 0.0),
                nalgebra::Point3::new(1.0, 0.0, 1.0),
                nalgebra::Point3::new(0.5, 0.0, 2.0),
            ],
            vec![[0, 1, 2]],
        );
        let proj = ProjectionMatrix::orthographic_along(1);
        // Projects to a line along x only if y and z collapse; use axis 2 and
        // collinear x/y instead.
        let flat = GarmentMesh::from_parts(
            vec![
                nalgebra::Point3::new(0.0, 0.0, 0.0),
                nalgebra::Point3::new(1.0, 0.0, 1.0),
                nalgebra::Point3::new(2.0, 0.0, 2.0),
            ],
            vec![[0, 1, 2]],
        );
        assert!(project_silhouette(&flat, &ProjectionMatrix::default(), 256).is_err());
        let _ = (mesh, proj);
    }

    fn convex_hull_area(points: &[Point2<f64>]) -> f64 {
        let mut pts: Vec<Point2<f64>> = points.to_vec();
        pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
        let cross = |o: Point2<f64>, a: Point2<f64>, b: Point2<f64>| (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
        let mut hull: Vec<Point2<f64>> = Vec::new();
        for &p in pts.iter().chain(pts.iter().rev()) {
            while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
        super::super::polygon::polygon_area(&hull).abs()
    }
}
