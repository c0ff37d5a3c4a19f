//! SVG pattern sheet for human inspection.

use std::io::Write;
use std::path::Path;

use crate::mesh::PatternMesh;

use super::{InstantiatedPattern, PatternError};

/// Write the pattern pieces side by side, boundary outlines over the
/// triangulation, with seam pairs in a highlight color.
pub fn write_pattern_svg(path: &Path, inst: &InstantiatedPattern, mesh: &PatternMesh) -> Result<(), PatternError> {
    let mut bboxes = Vec::new();
    for range in &inst.piece_ranges {
        let mut lo = nalgebra::Vector2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = nalgebra::Vector2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in range.clone() {
            let p = mesh.vertices2d[v];
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        bboxes.push((lo, hi));
    }
    let gap = 0.05;
    let mut offsets = Vec::new();
    let mut cursor = 0.0;
    let mut sheet_h: f64 = 0.0;
    for (lo, hi) in &bboxes {
        offsets.push(cursor - lo.x);
        cursor += hi.x - lo.x + gap;
        sheet_h = sheet_h.max(hi.y - lo.y);
    }
    let scale = 500.0;
    let width = cursor * scale;
    let height = (sheet_h + 2.0 * gap) * scale;

    let to_sheet = |v: usize| {
        let piece = inst.piece_of_vertex(v);
        let p = mesh.vertices2d[v];
        let (lo, hi) = bboxes[piece];
        let _ = lo;
        (
            (p.x + offsets[piece]) * scale,
            (hi.y - p.y + gap) * scale, // flip y for svg
        )
    };

    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.1} {height:.1}">"#
    );
    for tri in &mesh.triangles {
        let pts: Vec<String> = tri
            .iter()
            .map(|&v| {
                let (x, y) = to_sheet(v);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            w,
            r##"<polygon points="{}" fill="#f2ece2" stroke="#b9b0a2" stroke-width="0.4"/>"##,
            pts.join(" ")
        );
    }
    for loop_ids in &inst.piece_loops {
        let pts: Vec<String> = loop_ids
            .iter()
            .map(|&v| {
                let (x, y) = to_sheet(v);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            w,
            r##"<polygon points="{}" fill="none" stroke="#433a2f" stroke-width="1.2"/>"##,
            pts.join(" ")
        );
    }
    for &(a, b) in &mesh.seam_pairs {
        let (xa, ya) = to_sheet(a);
        let (xb, yb) = to_sheet(b);
        let _ = writeln!(
            w,
            r##"<line x1="{xa:.2}" y1="{ya:.2}" x2="{xb:.2}" y2="{yb:.2}" stroke="#c96d4a" stroke-width="0.3" stroke-dasharray="2,3"/>"##
        );
    }
    let _ = writeln!(w, "</svg>");
    Ok(())
}
