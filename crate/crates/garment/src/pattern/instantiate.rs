//! Pattern instantiation: resample boundaries, triangulate pieces, and build
//! the linear response of every mesh vertex to the sizing parameters.
//!
//! The triangulation is computed once per (template, edge length) at the
//! template defaults. Re-instantiating with a different sizing vector only
//! displaces vertices: boundary vertices through their interpolated template
//! effects, interior Steiner points through mean-value coordinates of their
//! piece boundary. This keeps instantiation exactly affine in the sizing
//! vector and keeps mesh topology identical across an optimization run.

use std::ops::Range;

use nalgebra::{Point2, Vector2};

use crate::mesh::PatternMesh;

use super::cdt;
use super::{PatternError, PatternTemplate, SizingParams};

/// A template triangulated at a fixed edge length, with the per-vertex linear
/// sizing response.
#[derive(Debug, Clone)]
pub struct InstantiatedPattern {
    pub template: PatternTemplate,
    pub target_edge_len: f64,
    /// Reference mesh at the template defaults.
    pub reference: PatternMesh,
    /// d(position)/d(g_k) per vertex per parameter.
    response: Vec<Vec<Vector2<f64>>>,
    /// Vertex range of each piece.
    pub piece_ranges: Vec<Range<usize>>,
    /// Ordered boundary-vertex ids per piece (closed loop).
    pub piece_loops: Vec<Vec<usize>>,
    /// Ordered vertex ids of each boundary segment, per piece.
    segment_vertices: Vec<Vec<Vec<usize>>>,
}

/// Instantiate a pattern mesh from a template and sizing parameters.
pub fn instantiate_pattern(
    template: &PatternTemplate,
    sizing: &SizingParams,
    target_edge_len: f64,
) -> Result<(InstantiatedPattern, PatternMesh), PatternError> {
    let inst = InstantiatedPattern::build(template, target_edge_len)?;
    let mesh = inst.with_sizing(sizing)?;
    Ok((inst, mesh))
}

struct ResampledPoint {
    position: Point2<f64>,
    response: Vec<Vector2<f64>>,
}

impl InstantiatedPattern {
    pub fn build(template: &PatternTemplate, target_edge_len: f64) -> Result<Self, PatternError> {
        if !(target_edge_len > 0.0) {
            return Err(PatternError::BadEdgeLength(target_edge_len));
        }
        let n_params = template.garment_type.parameter_count();

        // Segment subdivision counts, shared across seam partners.
        let seg_len = |p: usize, s: usize| -> f64 {
            template.pieces[p].segments[s]
                .points
                .windows(2)
                .map(|w| (w[1].position - w[0].position).norm())
                .sum()
        };
        let mut counts: Vec<Vec<usize>> = template
            .pieces
            .iter()
            .enumerate()
            .map(|(p, piece)| {
                (0..piece.segments.len())
                    .map(|s| ((seg_len(p, s) / target_edge_len).round() as usize).max(2))
                    .collect()
            })
            .collect();
        for seam in &template.seams {
            let la = seg_len(seam.piece_a, seam.segment_a);
            let lb = seg_len(seam.piece_b, seam.segment_b);
            if (la - lb).abs() > target_edge_len {
                return Err(PatternError::SeamLengthMismatch {
                    a: template.pieces[seam.piece_a].segments[seam.segment_a].name.clone(),
                    b: template.pieces[seam.piece_b].segments[seam.segment_b].name.clone(),
                    la,
                    lb,
                });
            }
            let n = counts[seam.piece_a][seam.segment_a].max(counts[seam.piece_b][seam.segment_b]);
            counts[seam.piece_a][seam.segment_a] = n;
            counts[seam.piece_b][seam.segment_b] = n;
        }

        let mut vertices = Vec::new();
        let mut responses: Vec<Vec<Vector2<f64>>> = Vec::new();
        let mut triangles = Vec::new();
        let mut piece_id = Vec::new();
        let mut piece_ranges = Vec::new();
        let mut piece_loops = Vec::new();
        let mut segment_vertices: Vec<Vec<Vec<usize>>> = Vec::new();

        for (p, piece) in template.pieces.iter().enumerate() {
            let base = vertices.len();
            // Resample each segment at equal arc length (inclusive endpoints).
            let mut seg_points: Vec<Vec<ResampledPoint>> = Vec::new();
            for (s, seg) in piece.segments.iter().enumerate() {
                seg_points.push(resample_segment(seg, counts[p][s], n_params));
            }
            // Chain segments into the closed loop. Each segment contributes
            // all its points except the last, which coincides with the next
            // segment's first.
            let mut loop_points: Vec<ResampledPoint> = Vec::new();
            let mut seg_ids: Vec<Vec<usize>> = Vec::new();
            for pts in seg_points {
                let n = pts.len();
                let mut ids = Vec::with_capacity(n);
                for (k, pt) in pts.into_iter().enumerate() {
                    if k + 1 == n {
                        ids.push(usize::MAX); // patched below
                    } else {
                        ids.push(base + loop_points.len());
                        loop_points.push(pt);
                    }
                }
                seg_ids.push(ids);
            }
            let n_segments = seg_ids.len();
            for s in 0..n_segments {
                let next_first = seg_ids[(s + 1) % n_segments][0];
                let last = seg_ids[s].len() - 1;
                seg_ids[s][last] = next_first;
            }

            let boundary: Vec<Point2<f64>> = loop_points.iter().map(|p| p.position).collect();
            let tri = cdt::triangulate_polygon(&boundary, target_edge_len);

            // Boundary responses come from the template; interior ones from
            // mean-value coordinates of the boundary loop.
            for (i, pt) in tri.points.iter().enumerate() {
                vertices.push(*pt);
                if i < boundary.len() {
                    responses.push(loop_points[i].response.clone());
                } else {
                    let lambda = mean_value_coordinates(*pt, &boundary);
                    let mut resp = vec![Vector2::zeros(); n_params];
                    for (j, &l) in lambda.iter().enumerate() {
                        for k in 0..n_params {
                            resp[k] += loop_points[j].response[k] * l;
                        }
                    }
                    responses.push(resp);
                }
            }
            for t in &tri.triangles {
                triangles.push([t[0] + base, t[1] + base, t[2] + base]);
                piece_id.push(p as u32);
            }
            piece_ranges.push(base..vertices.len());
            piece_loops.push((0..boundary.len()).map(|i| base + i).collect());
            segment_vertices.push(seg_ids);
        }

        // Seam pairs from paired segment vertices.
        let mut seam_pairs = Vec::new();
        for seam in &template.seams {
            let a = &segment_vertices[seam.piece_a][seam.segment_a];
            let b = &segment_vertices[seam.piece_b][seam.segment_b];
            debug_assert_eq!(a.len(), b.len());
            for k in 0..a.len() {
                let bk = if seam.reversed { b.len() - 1 - k } else { k };
                if a[k] != b[bk] {
                    seam_pairs.push((a[k], b[bk]));
                }
            }
        }
        seam_pairs.sort_unstable();
        seam_pairs.dedup();

        // Each boundary vertex may join at most two seams.
        let mut seam_count = std::collections::HashMap::new();
        for &(a, b) in &seam_pairs {
            *seam_count.entry(a).or_insert(0usize) += 1;
            *seam_count.entry(b).or_insert(0usize) += 1;
        }
        for (&v, &c) in &seam_count {
            if c > 2 {
                return Err(PatternError::OverConstrainedSeamVertex { vertex: v, count: c });
            }
        }

        let reference = PatternMesh { vertices2d: vertices, triangles, piece_id, seam_pairs };
        Ok(Self {
            template: template.clone(),
            target_edge_len,
            reference,
            response: responses,
            piece_ranges,
            piece_loops,
            segment_vertices,
        })
    }

    /// Displace the reference mesh to sizing vector `g`. Topology, piece ids
    /// and seam pairs are shared with the reference.
    pub fn with_sizing(&self, sizing: &SizingParams) -> Result<PatternMesh, PatternError> {
        if sizing.garment_type != self.template.garment_type {
            return Err(PatternError::GarmentTypeMismatch {
                got: sizing.garment_type,
                want: self.template.garment_type,
            });
        }
        sizing.validate()?;
        let defaults = &self.template.defaults.values;
        let delta: Vec<f64> = sizing.values.iter().zip(defaults).map(|(g, g0)| g - g0).collect();

        let mut mesh = self.reference.clone();
        for (v, resp) in mesh.vertices2d.iter_mut().zip(&self.response) {
            for (k, d) in delta.iter().enumerate() {
                *v += resp[k] * *d;
            }
        }

        for (p, loop_ids) in self.piece_loops.iter().enumerate() {
            let poly: Vec<Point2<f64>> = loop_ids.iter().map(|&i| mesh.vertices2d[i]).collect();
            if polygon_self_intersects(&poly) {
                return Err(PatternError::SelfIntersectingPiece {
                    piece: self.template.pieces[p].name.clone(),
                });
            }
        }
        for (t, tri) in mesh.triangles.iter().enumerate() {
            let area = crate::mesh::signed_area_2d(
                mesh.vertices2d[tri[0]],
                mesh.vertices2d[tri[1]],
                mesh.vertices2d[tri[2]],
            );
            if area <= 0.0 {
                let piece = mesh.piece_id[t] as usize;
                return Err(PatternError::SelfIntersectingPiece {
                    piece: self.template.pieces[piece].name.clone(),
                });
            }
        }
        Ok(mesh)
    }

    /// Ordered mesh-vertex ids of a named boundary segment.
    pub fn segment(&self, piece: usize, name: &str) -> Option<&[usize]> {
        let idx = self.template.pieces[piece].segments.iter().position(|s| s.name == name)?;
        Some(&self.segment_vertices[piece][idx])
    }

    /// Polyline length of a named segment in a displaced mesh.
    pub fn segment_length(&self, mesh: &PatternMesh, piece: usize, name: &str) -> Option<f64> {
        let ids = self.segment(piece, name)?;
        Some(
            ids.windows(2)
                .map(|w| (mesh.vertices2d[w[1]] - mesh.vertices2d[w[0]]).norm())
                .sum(),
        )
    }

    /// Piece index of a vertex.
    pub fn piece_of_vertex(&self, v: usize) -> usize {
        self.piece_ranges.iter().position(|r| r.contains(&v)).expect("vertex in range")
    }
}

fn resample_segment(seg: &super::SegmentTemplate, n_sub: usize, n_params: usize) -> Vec<ResampledPoint> {
    let pts = &seg.points;
    let cum: Vec<f64> = std::iter::once(0.0)
        .chain(pts.windows(2).scan(0.0, |acc, w| {
            *acc += (w[1].position - w[0].position).norm();
            Some(*acc)
        }))
        .collect();
    let total = *cum.last().unwrap();
    let mut out = Vec::with_capacity(n_sub + 1);
    for k in 0..=n_sub {
        let target = total * k as f64 / n_sub as f64;
        let i = match cum.binary_search_by(|c| c.partial_cmp(&target).unwrap()) {
            Ok(i) => i.min(pts.len() - 2),
            Err(i) => (i - 1).min(pts.len() - 2),
        };
        let span = (cum[i + 1] - cum[i]).max(1e-30);
        let t = ((target - cum[i]) / span).clamp(0.0, 1.0);
        let a = &pts[i];
        let b = &pts[i + 1];
        let position = Point2::from(a.position.coords * (1.0 - t) + b.position.coords * t);
        let response = (0..n_params)
            .map(|p| {
                let ea = a.effects[p].direction * a.effects[p].weight;
                let eb = b.effects[p].direction * b.effects[p].weight;
                ea * (1.0 - t) + eb * t
            })
            .collect();
        out.push(ResampledPoint { position, response });
    }
    out
}

/// Mean-value coordinates of a strictly interior point.
fn mean_value_coordinates(p: Point2<f64>, polygon: &[Point2<f64>]) -> Vec<f64> {
    let n = polygon.len();
    let mut weights = vec![0.0; n];
    for j in 0..n {
        let prev = polygon[(j + n - 1) % n] - p;
        let curr = polygon[j] - p;
        let next = polygon[(j + 1) % n] - p;
        let r = curr.norm().max(1e-30);
        let tan_half = |a: Vector2<f64>, b: Vector2<f64>| {
            let cross = a.x * b.y - a.y * b.x;
            let dot = a.dot(&b);
            let denom = a.norm() * b.norm() + dot;
            if denom.abs() < 1e-30 {
                0.0
            } else {
                cross / denom
            }
        };
        weights[j] = (tan_half(prev, curr) + tan_half(curr, next)) / r;
    }
    let sum: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= sum);
    weights
}

fn polygon_self_intersects(poly: &[Point2<f64>]) -> bool {
    let n = poly.len();
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        for j in i + 1..n {
            // Skip adjacent segments.
            if j == i || (j + 1) % n == i || (i + 1) % n == j {
                continue;
            }
            let c = poly[j];
            let d = poly[(j + 1) % n];
            let o = |p: Point2<f64>, q: Point2<f64>, r: Point2<f64>| (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
            if o(a, b, c) * o(a, b, d) < 0.0 && o(c, d, a) * o(c, d, b) < 0.0 {
                return true;
            }
        }
    }
    false
}
