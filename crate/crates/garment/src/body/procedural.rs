//! Procedural humanoid body.
//!
//! A watertight mesh is extracted once (marching tetrahedra over a smooth
//! union of capsules) at the canonical shape; the eight semantic shape
//! coefficients act as analytic displacement fields on that fixed mesh, so
//! every shape shares the topology and the linear body model applies
//! exactly.
//!
//! Semantic coefficients (standard-deviation units): 0 gender blend,
//! 1 height, 2 weight, 3 breast girth, 4 waist girth, 5 hip girth,
//! 6 shoulder width, 7 leg length.

use nalgebra::{Point3, Vector3};

use crate::mesh::GarmentMesh;

use super::canonical::{self, canonical_joints};
use super::{BodyError, JointId, ShapeBasis, ShapeParams, Skeleton, JOINT_COUNT};

pub const SHAPE_PARAM_COUNT: usize = 8;
pub const SHAPE_PARAM_NAMES: [&str; SHAPE_PARAM_COUNT] =
    ["gender", "height", "weight", "breast", "waist", "hip", "shoulder", "leg_length"];

/// Canonical mesh resolution (marching-tetrahedra cell size, m).
pub const DEFAULT_CELL: f64 = 0.03;

/// A procedural body: canonical mesh, linear shape basis with rig weights,
/// and the skeleton consistent with the requested shape.
pub struct ProceduralBody {
    pub mesh: GarmentMesh,
    pub basis: ShapeBasis,
    pub skeleton: Skeleton,
    pub shape: ShapeParams,
}

/// Build the procedural body at shape `z` (deterministic).
pub fn procedural_body(z: &ShapeParams) -> Result<ProceduralBody, BodyError> {
    procedural_body_with_cell(z, DEFAULT_CELL)
}

pub fn procedural_body_with_cell(z: &ShapeParams, cell: f64) -> Result<ProceduralBody, BodyError> {
    if z.coefficients.len() != SHAPE_PARAM_COUNT {
        return Err(BodyError::ShapeSizeMismatch { got: SHAPE_PARAM_COUNT, want: z.coefficients.len() });
    }
    let z = z.clamped();

    let capsules = canonical_capsules();
    let field = |p: Point3<f64>| capsule_union(p, &capsules);
    let (lo, hi) = field_bounds(&capsules);
    let canonical_mesh = marching_tetrahedra(lo, hi, cell, &field);

    // Shape components: analytic displacement fields sampled at the
    // canonical vertices.
    let components: Vec<Vec<Vector3<f64>>> = (0..SHAPE_PARAM_COUNT)
        .map(|k| canonical_mesh.vertices3d.iter().map(|&p| shape_field(k, p)).collect())
        .collect();

    // Skeleton joints follow the same fields.
    let joints: Vec<Point3<f64>> = canonical_joints()
        .iter()
        .map(|&j| {
            let mut p = j;
            for (k, &c) in z.coefficients.iter().enumerate() {
                p += shape_field(k, j) * c;
            }
            p
        })
        .collect();
    let skeleton = Skeleton::new(joints)?;

    let weights = rig_weights(&canonical_mesh.vertices3d, &Skeleton::new(canonical_joints().to_vec())?);

    let basis = ShapeBasis { mean: canonical_mesh.vertices3d.clone(), components, weights };
    let shaped = basis.shaped_vertices(&z)?;
    let mesh = GarmentMesh { vertices3d: shaped, triangles: canonical_mesh.triangles, to_pattern: canonical_mesh.to_pattern };

    Ok(ProceduralBody { mesh, basis, skeleton, shape: z })
}

// --------------------------------------------------------------------------
// Implicit surface.
// --------------------------------------------------------------------------

struct Capsule {
    a: Point3<f64>,
    b: Point3<f64>,
    ra: f64,
    rb: f64,
    /// Anisotropic cross-section scaling (applied to the offset from the axis).
    scale: Vector3<f64>,
}

impl Capsule {
    fn distance(&self, p: Point3<f64>) -> f64 {
        let q = Point3::new(p.x / self.scale.x, p.y / self.scale.y, p.z / self.scale.z);
        let a = Point3::new(self.a.x / self.scale.x, self.a.y / self.scale.y, self.a.z / self.scale.z);
        let b = Point3::new(self.b.x / self.scale.x, self.b.y / self.scale.y, self.b.z / self.scale.z);
        let ab = b - a;
        let t = if ab.norm_squared() > 0.0 {
            ((q - a).dot(&ab) / ab.norm_squared()).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let r = self.ra + (self.rb - self.ra) * t;
        (q - (a + ab * t)).norm() - r
    }
}

fn capsule_union(p: Point3<f64>, capsules: &[Capsule]) -> f64 {
    // Smooth union; negative inside.
    let k = 0.025;
    let mut acc = 0.0;
    for c in capsules {
        acc += (-c.distance(p) / k).exp();
    }
    -k * acc.ln()
}

fn canonical_capsules() -> Vec<Capsule> {
    let j = canonical_joints();
    let cap = |a: Point3<f64>, b: Point3<f64>, ra: f64, rb: f64, sx: f64, sz: f64| Capsule {
        a,
        b,
        ra,
        rb,
        scale: Vector3::new(sx, 1.0, sz),
    };
    vec![
        // Torso: pelvis through chest, elliptical cross-section.
        cap(Point3::new(0.0, 0.92, 0.0), Point3::new(0.0, 1.30, 0.0), 0.125, 0.13, 1.18, 0.74),
        // Hip band.
        cap(j[JointId::HipL as usize], j[JointId::HipR as usize], 0.10, 0.10, 1.0, 0.80),
        // Chest to neck.
        cap(Point3::new(0.0, 1.30, 0.0), j[JointId::Neck as usize], 0.125, 0.075, 1.22, 0.74),
        // Neck and head.
        cap(j[JointId::Neck as usize], j[JointId::Head as usize], 0.055, 0.06, 1.0, 1.0),
        Capsule { a: j[JointId::Head as usize], b: Point3::new(0.0, 1.68, 0.0), ra: 0.095, rb: 0.09, scale: Vector3::new(1.0, 1.0, 1.05) },
        // Shoulders.
        cap(Point3::new(-0.04, 1.40, 0.0), j[JointId::ShoulderL as usize], 0.065, 0.055, 1.0, 1.0),
        cap(Point3::new(0.04, 1.40, 0.0), j[JointId::ShoulderR as usize], 0.065, 0.055, 1.0, 1.0),
        // Upper arms (T-pose, ending at the elbows).
        cap(j[JointId::ShoulderL as usize], j[JointId::ElbowL as usize], 0.048, 0.042, 1.0, 1.0),
        cap(j[JointId::ShoulderR as usize], j[JointId::ElbowR as usize], 0.048, 0.042, 1.0, 1.0),
        // Thighs and shins.
        cap(j[JointId::HipL as usize], j[JointId::KneeL as usize], 0.085, 0.058, 1.0, 1.0),
        cap(j[JointId::HipR as usize], j[JointId::KneeR as usize], 0.085, 0.058, 1.0, 1.0),
        cap(j[JointId::KneeL as usize], j[JointId::AnkleL as usize], 0.058, 0.04, 1.0, 1.0),
        cap(j[JointId::KneeR as usize], j[JointId::AnkleR as usize], 0.058, 0.04, 1.0, 1.0),
    ]
}

fn field_bounds(capsules: &[Capsule]) -> (Point3<f64>, Point3<f64>) {
    let mut lo = Point3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
    let mut hi = Point3::new(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for c in capsules {
        let r = c.ra.max(c.rb) * c.scale.x.max(c.scale.z).max(1.0) + 0.05;
        for p in [c.a, c.b] {
            lo.x = lo.x.min(p.x - r);
            lo.y = lo.y.min(p.y - r);
            lo.z = lo.z.min(p.z - r);
            hi.x = hi.x.max(p.x + r);
            hi.y = hi.y.max(p.y + r);
            hi.z = hi.z.max(p.z + r);
        }
    }
    (lo, hi)
}

// --------------------------------------------------------------------------
// Semantic displacement fields.
// --------------------------------------------------------------------------

fn gauss(y: f64, center: f64, width: f64) -> f64 {
    let t = (y - center) / width;
    (-t * t).exp()
}

/// Displacement of a canonical point per unit of semantic coefficient `k`.
/// All fields are symmetric about the x = 0 plane.
fn shape_field(k: usize, p: Point3<f64>) -> Vector3<f64> {
    let radial = Vector3::new(p.x, 0.0, p.z);
    match k {
        // Gender blend: broader shoulders and chest, narrower hips.
        0 => {
            let shoulders = radial * (0.04 * gauss(p.y, 1.40, 0.14));
            let hips = radial * (-0.035 * gauss(p.y, 0.92, 0.12));
            shoulders + hips
        }
        // Height: uniform vertical scaling, 60 mm per unit.
        1 => Vector3::new(0.0, p.y * (0.060 / canonical::HEIGHT), 0.0),
        // Weight: overall girth, stronger around the torso.
        2 => radial * (0.012 + 0.020 * gauss(p.y, 1.05, 0.35)),
        // Breast: frontal chest offset.
        3 => Vector3::new(0.0, 0.0, (p.z.max(0.0) * 0.35 + 0.012) * gauss(p.y, 1.24, 0.09)),
        // Waist girth.
        4 => radial * (0.030 * gauss(p.y, canonical::WAIST_Y, 0.10)),
        // Hip girth.
        5 => radial * (0.030 * gauss(p.y, 0.93, 0.10)),
        // Shoulder width.
        6 => Vector3::new(p.x * 0.10 * gauss(p.y, 1.41, 0.10), 0.0, 0.0),
        // Leg length: everything below the crotch slides down.
        7 => {
            let crotch = 0.80;
            let t = ((crotch - p.y) / crotch).clamp(0.0, 1.0);
            Vector3::new(0.0, -0.050 * t, 0.0)
        }
        _ => Vector3::zeros(),
    }
}

// --------------------------------------------------------------------------
// Rig weights.
// --------------------------------------------------------------------------

/// Bone segments driven by each joint: every (joint -> child) segment.
fn bone_segments(skeleton: &Skeleton) -> Vec<(usize, Point3<f64>, Point3<f64>)> {
    let mut out = Vec::new();
    for j in 0..JOINT_COUNT {
        for c in skeleton.children(j) {
            out.push((j, skeleton.joints[j], skeleton.joints[c]));
        }
    }
    out
}

fn segment_distance(p: Point3<f64>, a: Point3<f64>, b: Point3<f64>) -> f64 {
    let ab = b - a;
    let t = if ab.norm_squared() > 0.0 {
        ((p - a).dot(&ab) / ab.norm_squared()).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (p - (a + ab * t)).norm()
}

/// Distance-to-bone falloff, keeping the three nearest joints.
pub(crate) fn rig_weights(points: &[Point3<f64>], skeleton: &Skeleton) -> Vec<Vec<(usize, f64)>> {
    let segments = bone_segments(skeleton);
    let sigma = 0.07;
    points
        .iter()
        .map(|&p| {
            let mut per_joint: Vec<(usize, f64)> = Vec::new();
            for &(j, a, b) in &segments {
                let d = segment_distance(p, a, b);
                let w = (-(d / sigma) * (d / sigma)).exp();
                match per_joint.iter_mut().find(|(jj, _)| *jj == j) {
                    Some(entry) => entry.1 = entry.1.max(w),
                    None => per_joint.push((j, w)),
                }
            }
            per_joint.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
            per_joint.truncate(3);
            let sum: f64 = per_joint.iter().map(|(_, w)| w).sum();
            if sum <= 1e-12 {
                // Far from every bone: bind rigidly to the nearest joint.
                let nearest = segments
                    .iter()
                    .min_by(|x, y| {
                        segment_distance(p, x.1, x.2)
                            .partial_cmp(&segment_distance(p, y.1, y.2))
                            .unwrap()
                    })
                    .map(|s| s.0)
                    .unwrap_or(0);
                vec![(nearest, 1.0)]
            } else {
                per_joint.into_iter().map(|(j, w)| (j, w / sum)).collect()
            }
        })
        .collect()
}

// --------------------------------------------------------------------------
// Marching tetrahedra.
// --------------------------------------------------------------------------

/// Six-tetrahedra decomposition of each grid cube, consistent across
/// neighbors; vertices are welded on shared grid edges so the result is
/// watertight.
pub fn marching_tetrahedra(
    lo: Point3<f64>,
    hi: Point3<f64>,
    cell: f64,
    field: &dyn Fn(Point3<f64>) -> f64,
) -> GarmentMesh {
    // The x lattice is symmetric about x = 0 (node count odd, node at zero)
    // and cubes on the negative side use an x-flipped tetrahedra table, so a
    // field that is even in x produces an exactly mirror-symmetric mesh.
    let half_x = lo.x.abs().max(hi.x.abs());
    let nhx = (half_x / cell).ceil() as usize;
    let x0 = -(nhx as f64) * cell;
    let nx = 2 * nhx + 1;
    let ny = ((hi.y - lo.y) / cell).ceil() as usize + 1;
    let nz = ((hi.z - lo.z) / cell).ceil() as usize + 1;
    let _ = x0;
    let at = |i: usize, j: usize, k: usize| {
        Point3::new(
            (i as f64 - nhx as f64) * cell, // exactly antisymmetric about the center node
            lo.y + j as f64 * cell,
            lo.z + k as f64 * cell,
        )
    };
    let idx = |i: usize, j: usize, k: usize| (k * ny + j) * nx + i;

    let mut values = vec![0.0f64; nx * ny * nz];
    for k in 0..nz {
        for j in 0..ny {
            for i in 0..nx {
                values[idx(i, j, k)] = field(at(i, j, k));
            }
        }
    }

    // The six tets around the cube diagonal (0,0,0)-(1,1,1), as corner
    // offsets into the cube.
    const CORNERS: [(usize, usize, usize); 8] = [
        (0, 0, 0),
        (1, 0, 0),
        (0, 1, 0),
        (1, 1, 0),
        (0, 0, 1),
        (1, 0, 1),
        (0, 1, 1),
        (1, 1, 1),
    ];
    const TETS: [[usize; 4]; 6] = [
        [0, 1, 3, 7],
        [0, 1, 7, 5],
        [0, 5, 7, 4],
        [0, 3, 2, 7],
        [0, 2, 6, 7],
        [0, 6, 4, 7],
    ];

    let mut vertices: Vec<Point3<f64>> = Vec::new();
    let mut vertex_on_edge: std::collections::HashMap<(usize, usize), usize> = std::collections::HashMap::new();
    let mut triangles: Vec<[usize; 3]> = Vec::new();

    let mut edge_vertex = |ga: usize, gb: usize, pa: Point3<f64>, pb: Point3<f64>, va: f64, vb: f64, vertices: &mut Vec<Point3<f64>>| {
        let key = (ga.min(gb), ga.max(gb));
        *vertex_on_edge.entry(key).or_insert_with(|| {
            let t = (va / (va - vb)).clamp(0.0, 1.0);
            vertices.push(Point3::from(pa.coords + (pb.coords - pa.coords) * t));
            vertices.len() - 1
        })
    };

    for k in 0..nz - 1 {
        for j in 0..ny - 1 {
            for i in 0..nx - 1 {
                // Mirror the decomposition on the negative-x side.
                let flip = i < nhx;
                let corner = |&(a, b, c): &(usize, usize, usize)| if flip { (1 - a, b, c) } else { (a, b, c) };
                let gidx: Vec<usize> = CORNERS
                    .iter()
                    .map(|cc| {
                        let (a, b, c) = corner(cc);
                        idx(i + a, j + b, k + c)
                    })
                    .collect();
                let gpos: Vec<Point3<f64>> = CORNERS
                    .iter()
                    .map(|cc| {
                        let (a, b, c) = corner(cc);
                        at(i + a, j + b, k + c)
                    })
                    .collect();
                for tet in &TETS {
                    let vi: Vec<usize> = tet.iter().map(|&c| gidx[c]).collect();
                    let vp: Vec<Point3<f64>> = tet.iter().map(|&c| gpos[c]).collect();
                    let vv: Vec<f64> = vi.iter().map(|&g| values[g]).collect();
                    let inside: Vec<usize> = (0..4).filter(|&c| vv[c] < 0.0).collect();
                    match inside.len() {
                        0 | 4 => {}
                        1 | 3 => {
                            let solo = if inside.len() == 1 {
                                inside[0]
                            } else {
                                (0..4).find(|c| !inside.contains(c)).unwrap()
                            };
                            let others: Vec<usize> = (0..4).filter(|&c| c != solo).collect();
                            let tri: Vec<usize> = others
                                .iter()
                                .map(|&o| edge_vertex(vi[solo], vi[o], vp[solo], vp[o], vv[solo], vv[o], &mut vertices))
                                .collect();
                            push_oriented(&mut triangles, &vertices, [tri[0], tri[1], tri[2]], vp[solo], vv[solo] < 0.0);
                        }
                        2 => {
                            let (a, b) = (inside[0], inside[1]);
                            let outside: Vec<usize> = (0..4).filter(|c| !inside.contains(c)).collect();
                            let (c, d) = (outside[0], outside[1]);
                            let vac = edge_vertex(vi[a], vi[c], vp[a], vp[c], vv[a], vv[c], &mut vertices);
                            let vad = edge_vertex(vi[a], vi[d], vp[a], vp[d], vv[a], vv[d], &mut vertices);
                            let vbd = edge_vertex(vi[b], vi[d], vp[b], vp[d], vv[b], vv[d], &mut vertices);
                            let vbc = edge_vertex(vi[b], vi[c], vp[b], vp[c], vv[b], vv[c], &mut vertices);
                            push_oriented(&mut triangles, &vertices, [vac, vad, vbd], vp[a], true);
                            push_oriented(&mut triangles, &vertices, [vac, vbd, vbc], vp[a], true);
                        }
                        _ => unreachable!(),
                    }
                }
            }
        }
    }

    GarmentMesh::from_parts(vertices, triangles)
}

/// Push a triangle oriented so its normal points away from the inside
/// region (`anchor` is an inside point when `anchor_inside`, otherwise an
/// outside point).
fn push_oriented(
    triangles: &mut Vec<[usize; 3]>,
    vertices: &[Point3<f64>],
    tri: [usize; 3],
    anchor: Point3<f64>,
    anchor_inside: bool,
) {
    let a = vertices[tri[0]];
    let b = vertices[tri[1]];
    let c = vertices[tri[2]];
    let n = (b - a).cross(&(c - a));
    let to_anchor = anchor - Point3::from((a.coords + b.coords + c.coords) / 3.0);
    let anchor_side = n.dot(&to_anchor) > 0.0;
    // Normal must point away from inside anchors and toward outside anchors.
    if anchor_side == anchor_inside {
        triangles.push([tri[0], tri[2], tri[1]]);
    } else {
        triangles.push(tri);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::MeshTopology;

    fn watertight(mesh: &GarmentMesh) -> bool {
        let topo = MeshTopology::build(mesh.vertices3d.len(), &mesh.triangles);
        topo.edges.iter().all(|e| e.is_interior() && e.tris[1] != usize::MAX - 1)
    }

    #[test]
    fn marching_tets_sphere_is_watertight_and_accurate() {
        let f = |p: Point3<f64>| p.coords.norm() - 0.5;
        let mesh = marching_tetrahedra(
            Point3::new(-0.7, -0.7, -0.7),
            Point3::new(0.7, 0.7, 0.7),
            0.05,
            &f,
        );
        assert!(watertight(&mesh));
        for p in &mesh.vertices3d {
            assert!((p.coords.norm() - 0.5).abs() < 0.01);
        }
        // Signed volume close to the sphere's.
        let vol: f64 = mesh
            .triangles
            .iter()
            .map(|t| {
                let a = mesh.vertices3d[t[0]].coords;
                let b = mesh.vertices3d[t[1]].coords;
                let c = mesh.vertices3d[t[2]].coords;
                a.cross(&b).dot(&c) / 6.0
            })
            .sum();
        let expected = 4.0 / 3.0 * std::f64::consts::PI * 0.5f64.powi(3);
        assert!((vol - expected).abs() / expected < 0.02, "volume {vol} vs {expected}");
    }

    #[test]
    fn canonical_body_is_watertight_and_sized() {
        let body = procedural_body(&ShapeParams::zeros(SHAPE_PARAM_COUNT)).unwrap();
        assert!(watertight(&body.mesh));
        let (mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in &body.mesh.vertices3d {
            ymin = ymin.min(p.y);
            ymax = ymax.max(p.y);
        }
        let height = ymax - ymin;
        assert!((height - canonical::HEIGHT).abs() < 0.08, "height {height}");
        body.basis.validate_weights().unwrap();
    }

    #[test]
    fn height_coefficient_raises_bounding_box() {
        let mut z = ShapeParams::zeros(SHAPE_PARAM_COUNT);
        z.coefficients[1] = 1.0;
        let tall = procedural_body(&z).unwrap();
        let base = procedural_body(&ShapeParams::zeros(SHAPE_PARAM_COUNT)).unwrap();
        let h = |m: &GarmentMesh| {
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for p in &m.vertices3d {
                lo = lo.min(p.y);
                hi = hi.max(p.y);
            }
            hi - lo
        };
        let dh = h(&tall.mesh) - h(&base.mesh);
        assert!((dh - 0.060).abs() < 0.005, "height delta {dh}");
    }

    #[test]
    fn symmetric_shape_is_sagittally_symmetric() {
        let mut z = ShapeParams::zeros(SHAPE_PARAM_COUNT);
        z.coefficients[0] = 1.3;
        z.coefficients[4] = -0.8;
        let body = procedural_body(&z).unwrap();
        // The canonical field and all shape fields are even in x, so every
        // vertex must have a mirror partner.
        let mut sorted: Vec<Point3<f64>> = body.mesh.vertices3d.clone();
        sorted.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap());
        let xs: Vec<f64> = sorted.iter().map(|p| p.x).collect();
        let mut max_err = 0.0f64;
        for p in &body.mesh.vertices3d {
            let m = Point3::new(-p.x, p.y, p.z);
            let lo = xs.partition_point(|&x| x < m.x - 1e-7);
            let hi = xs.partition_point(|&x| x <= m.x + 1e-7);
            let nearest = sorted[lo..hi]
                .iter()
                .map(|q| (q - m).norm())
                .fold(f64::INFINITY, f64::min);
            max_err = max_err.max(nearest);
        }
        assert!(max_err < 1e-9, "asymmetry {max_err}");
    }
}
