//! Parametric sewing-pattern templates and pattern-mesh instantiation.
//!
//! A template stores pattern pieces as closed loops of boundary segments.
//! Every control point carries, per sizing parameter, a weight and a
//! displacement direction; instantiating with sizing vector `g` moves each
//! boundary point by `sum_i weight_i * (g_i - default_i) * direction_i`, an
//! affine map in `g`. Interior Steiner points follow the boundary through
//! mean-value coordinates, so re-instantiation never changes the topology:
//! the same template and edge length always yield the same triangulation
//! with displaced vertices.

pub mod cdt;
mod builders;
mod instantiate;
mod stitch;
mod svg;

pub use instantiate::{instantiate_pattern, InstantiatedPattern};
pub use stitch::{initial_embedding, stitch};
pub use svg::write_pattern_svg;

use nalgebra::{Point2, Vector2};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PatternError {
    #[error("sizing parameters are for {got:?}, template is {want:?}")]
    GarmentTypeMismatch { got: GarmentType, want: GarmentType },
    #[error("sizing needs {want} values for {garment:?}, got {got}")]
    WrongParameterCount { garment: GarmentType, want: usize, got: usize },
    #[error("sizing parameter {index} ({name}) must be positive, got {value}")]
    NonPositiveParameter { index: usize, name: &'static str, value: f64 },
    #[error("skirt sector angle must lie in (0, 2*pi], got {0}")]
    SectorAngleOutOfRange(f64),
    #[error("piece '{piece}' boundary self-intersects after applying sizing parameters")]
    SelfIntersectingPiece { piece: String },
    #[error("target edge length must be positive, got {0}")]
    BadEdgeLength(f64),
    #[error("seam between '{a}' and '{b}' pairs segments of different lengths ({la:.4} vs {lb:.4})")]
    SeamLengthMismatch { a: String, b: String, la: f64, lb: f64 },
    #[error("pattern vertex {vertex} takes part in {count} seams (max 2)")]
    OverConstrainedSeamVertex { vertex: usize, count: usize },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// The garment families with builtin templates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GarmentType {
    Skirt,
    Pants,
    Tshirt,
}

impl GarmentType {
    pub fn parameter_count(self) -> usize {
        match self {
            GarmentType::Skirt => 4,
            GarmentType::Pants => 7,
            GarmentType::Tshirt => 6,
        }
    }

    pub fn parameter_names(self) -> &'static [&'static str] {
        match self {
            GarmentType::Skirt => &["l1", "r1", "r2", "alpha"],
            GarmentType::Pants => &["w1", "w2", "w3", "w4", "h1", "h2", "h3"],
            GarmentType::Tshirt => &["r", "w1", "w2", "h1", "h2", "l1"],
        }
    }
}

/// Per-garment sizing vector. Skirt `<l1, r1, r2, alpha>` (m, m, m, rad):
/// waist arc per piece, inner radius, skirt length, sector angle. Pants
/// `<w1..w4, h1..h3>`: waist/bottom/knee/ankle girths, outseam length,
/// back and front rise lengths. T-shirt `<r, w1, w2, h1, h2, l1>`: neckline
/// radius, sleeve girth, shoulder width, hem girth, total length, sleeve
/// length.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SizingParams {
    pub garment_type: GarmentType,
    pub values: Vec<f64>,
}

impl SizingParams {
    pub fn new(garment_type: GarmentType, values: Vec<f64>) -> Result<Self, PatternError> {
        let s = Self { garment_type, values };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), PatternError> {
        let want = self.garment_type.parameter_count();
        if self.values.len() != want {
            return Err(PatternError::WrongParameterCount {
                garment: self.garment_type,
                want,
                got: self.values.len(),
            });
        }
        for (i, (&v, name)) in self.values.iter().zip(self.garment_type.parameter_names()).enumerate() {
            if !(v > 0.0) || !v.is_finite() {
                return Err(PatternError::NonPositiveParameter { index: i, name, value: v });
            }
        }
        if self.garment_type == GarmentType::Skirt {
            let alpha = self.values[3];
            if !(alpha > 0.0 && alpha <= std::f64::consts::TAU) {
                return Err(PatternError::SectorAngleOutOfRange(alpha));
            }
        }
        Ok(())
    }
}

/// Displacement response of one boundary control point to one parameter:
/// `weight * (g - g_default) * direction`. Weights stay in [0, 1]; gain is
/// folded into the direction vector.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ParamEffect {
    pub weight: f64,
    pub direction: Vector2<f64>,
}

impl ParamEffect {
    pub const ZERO: ParamEffect = ParamEffect { weight: 0.0, direction: Vector2::new(0.0, 0.0) };

    pub fn new(weight: f64, direction: Vector2<f64>) -> Self {
        Self { weight, direction }
    }

    pub fn displacement(&self, delta: f64) -> Vector2<f64> {
        self.direction * (self.weight * delta)
    }
}

/// Boundary control point: rest position plus one effect per parameter.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ControlPoint {
    pub position: Point2<f64>,
    pub effects: Vec<ParamEffect>,
}

/// One boundary segment of a piece (open polyline; consecutive segments share
/// endpoints). Seams pair whole segments.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SegmentTemplate {
    pub name: String,
    pub points: Vec<ControlPoint>,
}

/// A pattern piece: segments chained into one simple closed loop,
/// counter-clockwise.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PieceTemplate {
    pub name: String,
    pub segments: Vec<SegmentTemplate>,
}

/// Seam pairing two equal-length segments of (possibly different) pieces.
/// `reversed` runs the second segment backwards when pairing vertices.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SeamSpec {
    pub piece_a: usize,
    pub segment_a: usize,
    pub piece_b: usize,
    pub segment_b: usize,
    pub reversed: bool,
}

/// A parametric sewing-pattern template.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PatternTemplate {
    pub garment_type: GarmentType,
    pub pieces: Vec<PieceTemplate>,
    pub seams: Vec<SeamSpec>,
    pub defaults: SizingParams,
}

impl PatternTemplate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("template serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// The builtin template for a garment type.
///
/// Skirt: two mirrored annular-sector pieces in the classic circle-skirt
/// cut. Pants: four pieces (front/back x left/right). T-shirt: four pieces
/// (front, back, two sleeves). Template proportions are measured against the
/// canonical procedural body.
pub fn builtin_template(garment_type: GarmentType) -> PatternTemplate {
    match garment_type {
        GarmentType::Skirt => builders::skirt_template(),
        GarmentType::Pants => builders::pants_template(),
        GarmentType::Tshirt => builders::tshirt_template(),
    }
}
