//! Observation-side quantities: silhouette polygons, polygon distances, and
//! the wrinkle-density to target-curvature map.

mod polygon;
mod silhouette;

pub use polygon::{polygon_area, polygon_distance, resample_closed, DistanceMode};
pub use silhouette::{project_silhouette, RASTER_DEFAULT};

use nalgebra::{Matrix3x4, Point2};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FeatureError {
    #[error("mesh projects to a degenerate silhouette (area {0} px)")]
    DegenerateProjection(f64),
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("mesh is empty")]
    EmptyMesh,
}

/// Closed 2D polyline traced counter-clockwise in image-plane units.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SilhouettePolygon {
    pub vertices: Vec<Point2<f64>>,
}

impl SilhouettePolygon {
    pub fn new(vertices: Vec<Point2<f64>>) -> Result<Self, FeatureError> {
        if vertices.len() < 3 {
            return Err(FeatureError::TooFewVertices(vertices.len()));
        }
        Ok(Self { vertices })
    }

    pub fn area(&self) -> f64 {
        polygon_area(&self.vertices)
    }
}

/// 3x4 projection from world space to the image plane. The default is an
/// orthographic view along +z with unit scale: the camera scaling factor is
/// ignored, matching how silhouettes are compared.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionMatrix(pub Matrix3x4<f64>);

impl Default for ProjectionMatrix {
    fn default() -> Self {
        Self(Matrix3x4::new(
            1.0, 0.0, 0.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 1.0,
        ))
    }
}

impl ProjectionMatrix {
    /// Orthographic projection along the axis (`0 = x`, `1 = y`, `2 = z`).
    pub fn orthographic_along(axis: usize) -> Self {
        let mut m = Matrix3x4::zeros();
        let (u, v) = match axis {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        m[(0, u)] = 1.0;
        m[(1, v)] = 1.0;
        m[(2, 3)] = 1.0;
        Self(m)
    }

    pub fn project(&self, p: &nalgebra::Point3<f64>) -> Point2<f64> {
        let h = self.0 * nalgebra::Vector4::new(p.x, p.y, p.z, 1.0);
        let w = if h.z.abs() < 1e-15 { 1.0 } else { h.z };
        Point2::new(h.x / w, h.y / w)
    }
}

/// Average wrinkle density of the observed garment (wrinkles per m^2).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct WrinkleDensity(pub f64);

/// Calibrated density range of the curvature map.
pub const DENSITY_RANGE: (f64, f64) = (1.0, 50.0);
/// Curvature anchors: smooth folds at density 1, one sharp wrinkle at 50.
pub const CURVATURE_ANCHORS: (f64, f64) = (1e-4, 1e5);

/// Interpolation mode for the density-to-curvature map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityMapMode {
    /// Literal linear interpolation between the anchors.
    Linear,
    /// Linear interpolation of log10 curvature between the same anchors.
    /// Default: the anchors span nine decades, which makes the linear map
    /// insensitive over almost the whole density range.
    LogLinear,
}

/// Map wrinkle density to the target mean local curvature (1/m).
///
/// Density is clamped to the calibrated range with a warning.
pub fn density_to_curvature(p: WrinkleDensity, mode: DensityMapMode) -> f64 {
    let (lo, hi) = DENSITY_RANGE;
    let mut d = p.0;
    if d < lo || d > hi {
        log::warn!("wrinkle density {d} outside calibrated range [{lo}, {hi}]; clamping");
        d = d.clamp(lo, hi);
    }
    let t = (d - lo) / (hi - lo);
    let (k_lo, k_hi) = CURVATURE_ANCHORS;
    match mode {
        DensityMapMode::Linear => k_lo + t * (k_hi - k_lo),
        DensityMapMode::LogLinear => 10f64.powf(k_lo.log10() + t * (k_hi.log10() - k_lo.log10())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchors_are_exact_in_both_modes() {
        for mode in [DensityMapMode::Linear, DensityMapMode::LogLinear] {
            assert!((density_to_curvature(WrinkleDensity(1.0), mode) - 1e-4).abs() < 1e-12);
            let hi = density_to_curvature(WrinkleDensity(50.0), mode);
            assert!((hi - 1e5).abs() / 1e5 < 1e-12);
        }
    }

    #[test]
    fn linear_midpoint() {
        let k = density_to_curvature(WrinkleDensity(25.5), DensityMapMode::Linear);
        let expected = 1e-4 + 24.5 * (1e5 - 1e-4) / 49.0;
        assert!((k - expected).abs() < 1e-6);
        assert!((k - 5.0e4).abs() / 5.0e4 < 1e-4);
    }

    #[test]
    fn monotone_and_clamped() {
        for mode in [DensityMapMode::Linear, DensityMapMode::LogLinear] {
            let mut prev = f64::NEG_INFINITY;
            for i in 0..=100 {
                let d = 1.0 + 49.0 * i as f64 / 100.0;
                let k = density_to_curvature(WrinkleDensity(d), mode);
                assert!(k >= prev);
                prev = k;
            }
            // Out-of-range densities clamp to the anchor values.
            assert_eq!(
                density_to_curvature(WrinkleDensity(0.1), mode),
                density_to_curvature(WrinkleDensity(1.0), mode)
            );
            assert_eq!(
                density_to_curvature(WrinkleDensity(99.0), mode),
                density_to_curvature(WrinkleDensity(50.0), mode)
            );
        }
    }
}
