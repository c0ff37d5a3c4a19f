//! Parameterized human body: skeleton, pose skinning, shape space, and a
//! signed-distance sampler for collision handling.

pub mod canonical;
mod lbs;
mod pca;
mod procedural;
mod sdf;

pub use lbs::{joint_transforms, skin_body, skin_points};
pub use pca::pca_shape_basis;
pub use procedural::{procedural_body, ProceduralBody};
pub use sdf::{point_triangle_distance, SdfGrid};

use nalgebra::{Point3, Vector3};
use thiserror::Error;

pub const JOINT_COUNT: usize = 14;

/// Joint ids of the common 14-joint skeleton shared by bodies and garments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[repr(usize)]
pub enum JointId {
    Pelvis = 0,
    Chest = 1,
    Neck = 2,
    Head = 3,
    ShoulderL = 4,
    ElbowL = 5,
    ShoulderR = 6,
    ElbowR = 7,
    HipL = 8,
    KneeL = 9,
    AnkleL = 10,
    HipR = 11,
    KneeR = 12,
    AnkleR = 13,
}

pub const JOINT_PARENTS: [Option<usize>; JOINT_COUNT] = [
    None,     // pelvis
    Some(0),  // chest
    Some(1),  // neck
    Some(2),  // head
    Some(1),  // shoulder L
    Some(4),  // elbow L
    Some(1),  // shoulder R
    Some(6),  // elbow R
    Some(0),  // hip L
    Some(8),  // knee L
    Some(9),  // ankle L
    Some(0),  // hip R
    Some(11), // knee R
    Some(12), // ankle R
];

#[derive(Debug, Error)]
pub enum BodyError {
    #[error("skeleton must have exactly {JOINT_COUNT} joints, got {0}")]
    WrongJointCount(usize),
    #[error("pose has {got} joint rotations, skeleton has {want}")]
    PoseSizeMismatch { got: usize, want: usize },
    #[error("skinning weights of vertex {vertex} sum to {sum}, expected 1")]
    BadWeightSum { vertex: usize, sum: f64 },
    #[error("shape basis has {got} coefficients, {want} were provided")]
    ShapeSizeMismatch { got: usize, want: usize },
    #[error("corpus meshes have mismatched vertex counts ({0} vs {1})")]
    CorpusTopologyMismatch(usize, usize),
    #[error("corpus needs at least 2 meshes, got {0}")]
    CorpusTooSmall(usize),
    #[error("mesh is not watertight: edge ({0}, {1}) borders {2} triangles")]
    NotWatertight(usize, usize, usize),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad sdf file: {0}")]
    BadSdfFile(String),
}

/// The 14-joint skeleton with rest positions.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Skeleton {
    pub joints: Vec<Point3<f64>>,
    pub parents: Vec<Option<usize>>,
}

impl Skeleton {
    pub fn new(joints: Vec<Point3<f64>>) -> Result<Self, BodyError> {
        if joints.len() != JOINT_COUNT {
            return Err(BodyError::WrongJointCount(joints.len()));
        }
        Ok(Self { joints, parents: JOINT_PARENTS.to_vec() })
    }

    pub fn children(&self, joint: usize) -> Vec<usize> {
        self.parents
            .iter()
            .enumerate()
            .filter_map(|(c, &p)| (p == Some(joint)).then_some(c))
            .collect()
    }
}

/// Per-joint axis-angle rotations (radians). The rotation of joint `j`
/// applies about its rest position and carries everything below it.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PoseParams {
    pub rotations: Vec<Vector3<f64>>,
    /// Per-joint rotation-angle limit (radians).
    pub limit: f64,
}

impl PoseParams {
    pub fn rest() -> Self {
        Self { rotations: vec![Vector3::zeros(); JOINT_COUNT], limit: std::f64::consts::PI }
    }

    pub fn with_rotation(mut self, joint: JointId, axis_angle: Vector3<f64>) -> Self {
        self.rotations[joint as usize] = axis_angle;
        self
    }

    pub fn clamped(&self) -> Self {
        let rotations = self
            .rotations
            .iter()
            .map(|r| {
                let angle = r.norm();
                if angle > self.limit {
                    r * (self.limit / angle)
                } else {
                    *r
                }
            })
            .collect();
        Self { rotations, limit: self.limit }
    }
}

/// Semantic shape coefficients in standard-deviation units.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ShapeParams {
    pub coefficients: Vec<f64>,
}

impl ShapeParams {
    pub const CLAMP: f64 = 3.0;

    pub fn zeros(n: usize) -> Self {
        Self { coefficients: vec![0.0; n] }
    }

    pub fn clamped(&self) -> Self {
        Self {
            coefficients: self.coefficients.iter().map(|c| c.clamp(-Self::CLAMP, Self::CLAMP)).collect(),
        }
    }
}

/// Linear shape space plus skinning weights: vertex v poses to
/// `sum_j w_jv T_j(theta) (mean_v + sum_k components_kv z_k)`.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct ShapeBasis {
    pub mean: Vec<Point3<f64>>,
    /// `components[k][v]` is the offset of vertex v per unit of coefficient k.
    pub components: Vec<Vec<Vector3<f64>>>,
    /// Sparse skinning weights per vertex: (joint, weight), summing to 1.
    pub weights: Vec<Vec<(usize, f64)>>,
}

impl ShapeBasis {
    /// Apply the linear model without clamping; semantic pipelines clamp
    /// coefficients before calling.
    pub fn shaped_vertices(&self, z: &ShapeParams) -> Result<Vec<Point3<f64>>, BodyError> {
        if z.coefficients.len() != self.components.len() {
            return Err(BodyError::ShapeSizeMismatch { got: self.components.len(), want: z.coefficients.len() });
        }
        let mut out = self.mean.clone();
        for (k, comp) in self.components.iter().enumerate() {
            let c = z.coefficients[k];
            if c != 0.0 {
                for (v, offset) in comp.iter().enumerate() {
                    out[v] += offset * c;
                }
            }
        }
        Ok(out)
    }

    pub fn validate_weights(&self) -> Result<(), BodyError> {
        for (v, w) in self.weights.iter().enumerate() {
            let sum: f64 = w.iter().map(|(_, x)| x).sum();
            if (sum - 1.0).abs() > 1e-9 || w.iter().any(|&(_, x)| x < 0.0) {
                return Err(BodyError::BadWeightSum { vertex: v, sum });
            }
        }
        Ok(())
    }
}
