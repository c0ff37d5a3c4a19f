//! Polygon geometry: areas, resampling, and the silhouette distance.

use nalgebra::Point2;

use super::SilhouettePolygon;

/// How the two polygons enter the distance sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceMode {
    /// Sum of distances from each vertex of `a` to polyline `b`. Asymmetric:
    /// zero iff every vertex of `a` lies on `b`.
    Paper,
    /// Paper-mode sum plus the reverse sum.
    Symmetric,
}

/// Signed area (positive for counter-clockwise orientation).
pub fn polygon_area(vertices: &[Point2<f64>]) -> f64 {
    let n = vertices.len();
    let mut sum = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        sum += a.x * b.y - b.x * a.y;
    }
    0.5 * sum
}

pub fn perimeter(vertices: &[Point2<f64>]) -> f64 {
    let n = vertices.len();
    (0..n).map(|i| (vertices[(i + 1) % n] - vertices[i]).norm()).sum()
}

/// Resample a closed polyline to `count` vertices at equal arc length,
/// starting from vertex 0. Makes vertex-sum distances resolution-independent.
pub fn resample_closed(vertices: &[Point2<f64>], count: usize) -> Vec<Point2<f64>> {
    let total = perimeter(vertices);
    if total == 0.0 || vertices.len() < 2 {
        return vertices.to_vec();
    }
    let n = vertices.len();
    let step = total / count as f64;
    let mut out = Vec::with_capacity(count);
    let mut seg = 0usize;
    let mut seg_start = 0.0; // arc length at start of current segment
    let mut seg_len = (vertices[1 % n] - vertices[0]).norm();
    for k in 0..count {
        let target = k as f64 * step;
        while target > seg_start + seg_len && seg < n - 1 {
            seg += 1;
            seg_start += seg_len;
            seg_len = (vertices[(seg + 1) % n] - vertices[seg]).norm();
        }
        let t = if seg_len > 0.0 { (target - seg_start) / seg_len } else { 0.0 };
        let a = vertices[seg];
        let b = vertices[(seg + 1) % n];
        out.push(Point2::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)));
    }
    out
}

fn point_segment_distance(p: Point2<f64>, a: Point2<f64>, b: Point2<f64>) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).dot(&ab) / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Distance from a point to a closed polyline.
pub fn point_polyline_distance(p: Point2<f64>, polyline: &[Point2<f64>]) -> f64 {
    let n = polyline.len();
    let mut best = f64::INFINITY;
    for i in 0..n {
        best = best.min(point_segment_distance(p, polyline[i], polyline[(i + 1) % n]));
    }
    best
}

/// Number of vertices polygons are resampled to before distance evaluation.
pub const DISTANCE_SAMPLES: usize = 256;

/// Silhouette distance: the sum over (resampled) vertices of one polygon of
/// the point-to-polyline distance to the other.
pub fn polygon_distance(a: &SilhouettePolygon, b: &SilhouettePolygon, mode: DistanceMode) -> f64 {
    let ra = resample_closed(&a.vertices, DISTANCE_SAMPLES);
    let rb = resample_closed(&b.vertices, DISTANCE_SAMPLES);
    let forward: f64 = ra.iter().map(|&p| point_polyline_distance(p, &rb)).sum();
    match mode {
        DistanceMode::Paper => forward,
        DistanceMode::Symmetric => {
            let reverse: f64 = rb.iter().map(|&p| point_polyline_distance(p, &ra)).sum();
            forward + reverse
        }
    }
}

/// Distance sum over the raw vertices of `a`, without resampling. Used where
/// the vertex set itself is meaningful (tests, diagnostics).
pub fn polygon_distance_raw(a: &SilhouettePolygon, b: &SilhouettePolygon) -> f64 {
    a.vertices.iter().map(|&p| point_polyline_distance(p, &b.vertices)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(offset: (f64, f64), side: f64) -> SilhouettePolygon {
        SilhouettePolygon::new(vec![
            Point2::new(offset.0, offset.1),
            Point2::new(offset.0 + side, offset.1),
            Point2::new(offset.0 + side, offset.1 + side),
            Point2::new(offset.0, offset.1 + side),
        ])
        .unwrap()
    }

    #[test]
    fn identical_polygons_have_zero_distance() {
        let a = square((0.0, 0.0), 1.0);
        assert_eq!(polygon_distance(&a, &a, DistanceMode::Paper), 0.0);
        assert_eq!(polygon_distance(&a, &a, DistanceMode::Symmetric), 0.0);
    }

    #[test]
    fn translated_square_raw_distance() {
        // Translating the unit square by (d, 0): the two left vertices land
        // on the original boundary (distance 0), the two right vertices sit
        // at distance d, so the raw vertex sum is 2d.
        let d = 0.25;
        let a = square((d, 0.0), 1.0);
        let b = square((0.0, 0.0), 1.0);
        let dist = polygon_distance_raw(&a, &b);
        assert!((dist - 2.0 * d).abs() < 1e-12, "got {dist}");
    }

    #[test]
    fn symmetric_mode_is_symmetric() {
        let a = square((0.3, 0.1), 1.0);
        let b = square((0.0, 0.0), 1.3);
        let ab = polygon_distance(&a, &b, DistanceMode::Symmetric);
        let ba = polygon_distance(&b, &a, DistanceMode::Symmetric);
        assert!((ab - ba).abs() < 1e-12);
        // Paper mode is asymmetric for polygons of different size.
        let pab = polygon_distance(&a, &b, DistanceMode::Paper);
        let pba = polygon_distance(&b, &a, DistanceMode::Paper);
        assert!((pab - pba).abs() > 1e-6);
    }

    #[test]
    fn matches_dense_sampling_oracle() {
        // Oracle: approximate each point-to-polyline distance by scanning
        // densely sampled points of the target polyline.
        let a = SilhouettePolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.2, 0.3),
            Point2::new(0.9, 1.1),
            Point2::new(0.2, 0.8),
        ])
        .unwrap();
        let b = SilhouettePolygon::new(vec![
            Point2::new(0.1, -0.2),
            Point2::new(1.5, 0.0),
            Point2::new(1.1, 1.4),
            Point2::new(-0.3, 1.0),
            Point2::new(-0.1, 0.4),
        ])
        .unwrap();

        let rb = resample_closed(&b.vertices, DISTANCE_SAMPLES);
        let dense: Vec<Point2<f64>> = {
            // 1e-4-resolution sampling along b's resampled polyline.
            let mut pts = Vec::new();
            let n = rb.len();
            for i in 0..n {
                let p = rb[i];
                let q = rb[(i + 1) % n];
                let len = (q - p).norm();
                let steps = (len / 1e-4).ceil() as usize;
                for s in 0..steps {
                    let t = s as f64 / steps as f64;
                    pts.push(Point2::new(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)));
                }
            }
            pts
        };
        let ra = resample_closed(&a.vertices, DISTANCE_SAMPLES);
        let oracle: f64 = ra
            .iter()
            .map(|p| dense.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
            .sum();
        let fast = polygon_distance(&a, &b, DistanceMode::Paper);
        assert!((fast - oracle).abs() < 1e-3, "fast {fast} oracle {oracle}");
    }

    #[test]
    fn resampling_preserves_perimeter_and_area() {
        let a = square((0.0, 0.0), 2.0);
        let r = resample_closed(&a.vertices, 256);
        assert_eq!(r.len(), 256);
        assert!((perimeter(&r) - 8.0).abs() < 1e-9);
        assert!((polygon_area(&r) - 4.0).abs() < 1e-6);
    }
}
