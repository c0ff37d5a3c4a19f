//! Seam stitching and the initial 3D embedding of a stitched garment.

use nalgebra::{Point2, Point3};

use crate::body::canonical;
use crate::mesh::{GarmentMesh, MeshError, MeshTopology, PatternMesh};

use super::{GarmentType, InstantiatedPattern};

/// Merge seam-paired pattern vertices into a 3D garment mesh.
///
/// The output is a rest-shape placeholder: connectivity and the pattern map
/// are final, positions are the pattern coordinates with pieces separated in
/// z until an embedding or registration places them.
pub fn stitch(pattern: &PatternMesh) -> Result<GarmentMesh, MeshError> {
    // Union-find over pattern vertices.
    let n = pattern.vertices2d.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for &(a, b) in &pattern.seam_pairs {
        let ra = find(&mut parent, a);
        let rb = find(&mut parent, b);
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }

    // Classes in first-appearance order keep vertex numbering stable.
    let mut class_of = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let root = find(&mut parent, v);
        if class_of[root] == usize::MAX {
            class_of[root] = members.len();
            members.push(Vec::new());
        }
        class_of[v] = class_of[root];
        members[class_of[v]].push(v);
    }

    // Per-triangle piece id tells pieces apart for the placeholder layout.
    let mut piece_of_vertex = vec![0u32; n];
    for (t, tri) in pattern.triangles.iter().enumerate() {
        for &v in tri {
            piece_of_vertex[v] = pattern.piece_id[t];
        }
    }

    let vertices3d: Vec<Point3<f64>> = members
        .iter()
        .map(|class| {
            let mut acc = nalgebra::Vector3::zeros();
            for &v in class {
                let p = pattern.vertices2d[v];
                acc += nalgebra::Vector3::new(p.x, p.y, 0.02 * piece_of_vertex[v] as f64);
            }
            Point3::from(acc / class.len() as f64)
        })
        .collect();

    let triangles: Vec<[usize; 3]> = pattern
        .triangles
        .iter()
        .map(|t| [class_of[t[0]], class_of[t[1]], class_of[t[2]]])
        .collect();

    let mesh = GarmentMesh { vertices3d, triangles, to_pattern: members };

    // Seams must stitch into manifold surface: no edge with more than two
    // incident triangles.
    let topo = MeshTopology::build(mesh.vertices3d.len(), &mesh.triangles);
    for (id, e) in topo.edges.iter().enumerate() {
        if e.tris[1] == usize::MAX - 1 {
            return Err(MeshError::NonManifoldEdge { edge: id, count: 3 });
        }
    }
    Ok(mesh)
}

/// Wrap the stitched garment around the canonical body axis so simulation
/// and registration start from a sensible shell: skirts and pant legs wrap
/// around vertical tubes, t-shirt bodies around the torso, sleeves around
/// the arm axes. Seam-merged vertices average the embeddings of their
/// pattern correspondents, which coincide at seams by construction.
pub fn initial_embedding(inst: &InstantiatedPattern, stitched: &GarmentMesh) -> GarmentMesh {
    let mut out = stitched.clone();
    for (v3, class) in stitched.to_pattern.iter().enumerate() {
        let mut acc = nalgebra::Vector3::zeros();
        for &v2 in class {
            let piece = inst.piece_of_vertex(v2);
            let p = inst.reference.vertices2d[v2];
            // Embed from the reference (default-sizing) coordinates.
            acc += embed_point(inst.template.garment_type, piece, p, inst).coords;
        }
        out.vertices3d[v3] = Point3::from(acc / class.len() as f64);
    }
    out
}

fn embed_point(gt: GarmentType, piece: usize, p: Point2<f64>, inst: &InstantiatedPattern) -> Point3<f64> {
    match gt {
        GarmentType::Skirt => embed_skirt(piece, p),
        GarmentType::Pants => embed_pants(piece, p, inst),
        GarmentType::Tshirt => embed_tshirt(piece, p),
    }
}

fn embed_skirt(piece: usize, p: Point2<f64>) -> Point3<f64> {
    use super::builders::{SKIRT_ALPHA, SKIRT_R1};
    let rho = p.coords.norm();
    let phi = p.x.atan2(-p.y);
    let psi = phi * std::f64::consts::PI / SKIRT_ALPHA;
    let radius = rho * SKIRT_ALPHA / std::f64::consts::PI;
    let y = canonical::WAIST_Y - (rho - SKIRT_R1);
    if piece == 0 {
        Point3::new(radius * psi.sin(), y, radius * psi.cos())
    } else {
        Point3::new(-radius * psi.sin(), y, -radius * psi.cos())
    }
}

fn embed_pants(piece: usize, p: Point2<f64>, _inst: &InstantiatedPattern) -> Point3<f64> {
    use super::builders::pants_embed_frame;
    let frame = pants_embed_frame();
    // Mirrored right pieces live at x < 0 in pattern space; unmirror and
    // carry the side sign instead.
    let (side, front) = match piece {
        0 => (-1.0, true),
        1 => (-1.0, false),
        2 => (1.0, true),
        _ => (1.0, false),
    };
    let xp = if piece >= 2 { -p.x } else { p.x };
    let y = p.y;
    let zsign = if front { 1.0 } else { -1.0 };
    let y3 = canonical::WAIST_Y + y;

    let (x_in, x_out) = frame.span_at(y);
    let width = (x_out - x_in).max(1e-6);
    let s = ((xp - x_in) / width).clamp(-0.2, 1.2);

    // Leg tube around the hip axis: medial at theta = 0, lateral at pi.
    let leg = {
        let radius = width / std::f64::consts::PI;
        let theta = s * std::f64::consts::PI;
        Point3::new(
            side * canonical::HIP_X - side * theta.cos() * radius,
            y3,
            zsign * theta.sin() * radius,
        )
    };
    // Torso band: quarter ring per piece, center seam at theta = 0.
    let torso = {
        let t = (-y / frame.crotch_drop).clamp(0.0, 1.0);
        let radius = frame.waist_radius * (1.0 - t) + frame.hip_radius * t;
        let theta = s * std::f64::consts::FRAC_PI_2;
        Point3::new(side * theta.sin() * radius, y3, zsign * theta.cos() * radius)
    };

    // Smooth hand-off across the crotch band.
    let band = 0.06;
    let w_leg = ((-y - frame.crotch_drop) / band + 0.5).clamp(0.0, 1.0);
    Point3::from(torso.coords * (1.0 - w_leg) + leg.coords * w_leg)
}

fn embed_tshirt(piece: usize, p: Point2<f64>) -> Point3<f64> {
    use super::builders::{tshirt_embed_width, TSHIRT_ARMHOLE, TSHIRT_H2, TSHIRT_L1, TSHIRT_W1};
    match piece {
        0 | 1 => {
            let front = piece == 0;
            let width = tshirt_embed_width(p.y); // full piece width at this height
            let radius = width / std::f64::consts::PI;
            let theta = (p.x / width * 2.0).clamp(-1.2, 1.2) * std::f64::consts::FRAC_PI_2;
            let zsign = if front { 1.0 } else { -1.0 };
            Point3::new(theta.sin() * radius, canonical::SHOULDER_Y + p.y, zsign * theta.cos() * radius)
        }
        _ => {
            // Sleeves: tubes around the horizontal arm axes.
            let left = piece == 2;
            let d_arm = TSHIRT_ARMHOLE * TSHIRT_H2;
            let half_w = {
                let t = (-p.y / TSHIRT_L1).clamp(0.0, 1.0);
                d_arm * (1.0 - t) + (TSHIRT_W1 / 2.0) * t
            };
            let radius = half_w / std::f64::consts::PI;
            let theta = -(p.x / half_w).clamp(-1.0, 1.0) * std::f64::consts::PI;
            let along = -p.y; // distance from shoulder along the arm
            let shoulder_x = 0.19;
            let x = if left { -(shoulder_x + along) } else { shoulder_x + along };
            Point3::new(x, 1.42 + radius * theta.cos(), radius * theta.sin())
        }
    }
}
