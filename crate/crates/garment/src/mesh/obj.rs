//! Wavefront OBJ i/o plus the JSON sidecar carrying seam pairs and piece ids.
//!
//! 2D pattern meshes are stored as OBJ with `z = 0`. Floats are printed at a
//! fixed precision so identical meshes serialize byte-identically.

use std::io::{BufRead, BufWriter, Write};
use std::path::Path;

use nalgebra::{Point2, Point3};

use super::{GarmentMesh, MeshError, PatternMesh};

/// Sidecar schema for pattern meshes: seam pairs, per-triangle piece ids and,
/// for garment meshes, the 3D-to-2D vertex map.
#[derive(Debug, Clone, Default, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeamSidecar {
    #[serde(default)]
    pub seam_pairs: Vec<(usize, usize)>,
    #[serde(default)]
    pub piece_id: Vec<u32>,
    #[serde(default)]
    pub to_pattern: Vec<Vec<usize>>,
}

pub fn write_obj_3d(path: &Path, mesh: &GarmentMesh) -> Result<(), MeshError> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    for v in &mesh.vertices3d {
        writeln!(w, "v {:.9} {:.9} {:.9}", v.x, v.y, v.z)?;
    }
    for t in &mesh.triangles {
        writeln!(w, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
    }
    Ok(())
}

pub fn write_obj_2d(path: &Path, mesh: &PatternMesh) -> Result<(), MeshError> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    for v in &mesh.vertices2d {
        writeln!(w, "v {:.9} {:.9} 0.000000000", v.x, v.y)?;
    }
    for t in &mesh.triangles {
        writeln!(w, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
    }
    Ok(())
}

fn parse_obj(path: &Path) -> Result<(Vec<Point3<f64>>, Vec<[usize; 3]>), MeshError> {
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    let mut vertices = Vec::new();
    let mut triangles = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("v") => {
                let mut coord = [0.0f64; 3];
                for c in coord.iter_mut() {
                    *c = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or(MeshError::Parse { line: lineno + 1, message: "bad vertex".into() })?;
                }
                vertices.push(Point3::new(coord[0], coord[1], coord[2]));
            }
            Some("f") => {
                let mut idx = [0usize; 3];
                for (k, i) in idx.iter_mut().enumerate() {
                    let tok = parts.next().ok_or(MeshError::Parse {
                        line: lineno + 1,
                        message: format!("face needs 3 indices, got {k}"),
                    })?;
                    // Accept `v`, `v/vt`, `v/vt/vn` forms.
                    let head = tok.split('/').next().unwrap_or(tok);
                    let one_based: isize = head.parse().map_err(|_| MeshError::Parse {
                        line: lineno + 1,
                        message: format!("bad face index {tok}"),
                    })?;
                    if one_based < 1 {
                        return Err(MeshError::Parse { line: lineno + 1, message: "negative face index".into() });
                    }
                    *i = one_based as usize - 1;
                }
                if parts.next().is_some() {
                    return Err(MeshError::Parse { line: lineno + 1, message: "only triangles supported".into() });
                }
                triangles.push(idx);
            }
            _ => {}
        }
    }
    Ok((vertices, triangles))
}

pub fn read_obj_3d(path: &Path) -> Result<GarmentMesh, MeshError> {
    let (vertices3d, triangles) = parse_obj(path)?;
    let mesh = GarmentMesh::from_parts(vertices3d, triangles);
    mesh.validate()?;
    Ok(mesh)
}

/// Read a pattern mesh (z coordinates ignored). Seam pairs and piece ids come
/// from the sidecar; without one the mesh is a single piece with no seams.
pub fn read_obj_2d(path: &Path, sidecar: Option<&SeamSidecar>) -> Result<PatternMesh, MeshError> {
    let (vertices, triangles) = parse_obj(path)?;
    let vertices2d: Vec<Point2<f64>> = vertices.iter().map(|p| Point2::new(p.x, p.y)).collect();
    let (seam_pairs, piece_id) = match sidecar {
        Some(s) => (
            s.seam_pairs.clone(),
            if s.piece_id.is_empty() { vec![0; triangles.len()] } else { s.piece_id.clone() },
        ),
        None => (Vec::new(), vec![0; triangles.len()]),
    };
    let mesh = PatternMesh { vertices2d, triangles, piece_id, seam_pairs };
    mesh.validate()?;
    Ok(mesh)
}

pub fn write_seam_sidecar(path: &Path, sidecar: &SeamSidecar) -> Result<(), MeshError> {
    let json = serde_json::to_string_pretty(sidecar).expect("sidecar serializes");
    std::fs::write(path, json)?;
    Ok(())
}

pub fn read_seam_sidecar(path: &Path) -> Result<SeamSidecar, MeshError> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| MeshError::Parse { line: e.line(), message: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::shapes::flat_grid;

    #[test]
    fn obj_round_trip_is_exact() {
        let dir = std::env::temp_dir().join("garment-obj-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("grid.obj");
        let mesh = flat_grid(4, 3, 0.25);
        write_obj_3d(&path, &mesh).unwrap();
        let back = read_obj_3d(&path).unwrap();
        assert_eq!(back.triangles, mesh.triangles);
        for (a, b) in back.vertices3d.iter().zip(&mesh.vertices3d) {
            assert!((a - b).norm() < 1e-9);
        }
    }

    #[test]
    fn sidecar_round_trip() {
        let dir = std::env::temp_dir().join("garment-obj-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("seams.json");
        let sidecar = SeamSidecar {
            seam_pairs: vec![(0, 5), (1, 6)],
            piece_id: vec![0, 0, 1, 1],
            to_pattern: vec![],
        };
        write_seam_sidecar(&path, &sidecar).unwrap();
        let back = read_seam_sidecar(&path).unwrap();
        assert_eq!(back.seam_pairs, sidecar.seam_pairs);
        assert_eq!(back.piece_id, sidecar.piece_id);
    }
}
