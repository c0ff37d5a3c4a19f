//! Canonical body proportions (1.75 m reference humanoid, T-pose, y up,
//! origin on the floor between the feet). Garment templates are measured
//! against these values.

use nalgebra::Point3;

use super::{JointId, Skeleton, JOINT_COUNT};

pub const HEIGHT: f64 = 1.75;
/// Height of the garment waistband (skirt and pants).
pub const WAIST_Y: f64 = 1.02;
/// Height of the garment shoulder line (t-shirt).
pub const SHOULDER_Y: f64 = 1.40;
/// Lateral offset of the hip joints and leg axes.
pub const HIP_X: f64 = 0.09;

pub fn canonical_joints() -> [Point3<f64>; JOINT_COUNT] {
    [
        Point3::new(0.0, 0.98, 0.0),    // pelvis
        Point3::new(0.0, 1.28, 0.0),    // chest
        Point3::new(0.0, 1.46, 0.0),    // neck
        Point3::new(0.0, 1.60, 0.0),    // head
        Point3::new(-0.19, 1.42, 0.0),  // shoulder L
        Point3::new(-0.47, 1.42, 0.0),  // elbow L
        Point3::new(0.19, 1.42, 0.0),   // shoulder R
        Point3::new(0.47, 1.42, 0.0),   // elbow R
        Point3::new(-HIP_X, 0.92, 0.0), // hip L
        Point3::new(-HIP_X, 0.50, 0.0), // knee L
        Point3::new(-HIP_X, 0.08, 0.0), // ankle L
        Point3::new(HIP_X, 0.92, 0.0),  // hip R
        Point3::new(HIP_X, 0.50, 0.0),  // knee R
        Point3::new(HIP_X, 0.08, 0.0),  // ankle R
    ]
}

pub fn canonical_skeleton() -> Skeleton {
    Skeleton::new(canonical_joints().to_vec()).expect("canonical joint count")
}

/// Joints a garment skeleton uses, per garment type.
pub fn garment_joints(garment_type: crate::pattern::GarmentType) -> Vec<JointId> {
    use crate::pattern::GarmentType::*;
    match garment_type {
        Skirt => vec![JointId::Pelvis, JointId::HipL, JointId::HipR, JointId::KneeL, JointId::KneeR],
        Pants => vec![
            JointId::Pelvis,
            JointId::HipL,
            JointId::HipR,
            JointId::KneeL,
            JointId::KneeR,
            JointId::AnkleL,
            JointId::AnkleR,
        ],
        Tshirt => vec![
            JointId::Pelvis,
            JointId::Chest,
            JointId::Neck,
            JointId::ShoulderL,
            JointId::ElbowL,
            JointId::ShoulderR,
            JointId::ElbowR,
        ],
    }
}
