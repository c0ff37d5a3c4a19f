//! Linear blend skinning.

use nalgebra::{Isometry3, Point3, Translation3, UnitQuaternion};

use super::{BodyError, PoseParams, ShapeBasis, ShapeParams, Skeleton};

/// World transform per joint: a rotation about the joint's rest position,
/// composed down the tree, so the rest pose maps every point to itself.
pub fn joint_transforms(skeleton: &Skeleton, pose: &PoseParams) -> Result<Vec<Isometry3<f64>>, BodyError> {
    if pose.rotations.len() != skeleton.joints.len() {
        return Err(BodyError::PoseSizeMismatch { got: pose.rotations.len(), want: skeleton.joints.len() });
    }
    let pose = pose.clamped();
    let mut out: Vec<Isometry3<f64>> = vec![Isometry3::identity(); skeleton.joints.len()];
    // Parents precede children in the canonical ordering; process in order
    // and assert the invariant.
    for j in 0..skeleton.joints.len() {
        let local = rotation_about(skeleton.joints[j], pose.rotations[j]);
        out[j] = match skeleton.parents[j] {
            None => local,
            Some(p) => {
                debug_assert!(p < j, "parents precede children");
                out[p] * local
            }
        };
    }
    Ok(out)
}

fn rotation_about(center: Point3<f64>, axis_angle: nalgebra::Vector3<f64>) -> Isometry3<f64> {
    let rot = UnitQuaternion::from_scaled_axis(axis_angle);
    let t = center.coords - rot * center.coords;
    Isometry3::from_parts(Translation3::from(t), rot)
}

/// Skin arbitrary points with sparse per-point weights.
pub fn skin_points(
    points: &[Point3<f64>],
    weights: &[Vec<(usize, f64)>],
    transforms: &[Isometry3<f64>],
) -> Vec<Point3<f64>> {
    points
        .iter()
        .zip(weights)
        .map(|(p, w)| {
            let mut acc = nalgebra::Vector3::zeros();
            for &(j, wj) in w {
                acc += (transforms[j] * p).coords * wj;
            }
            Point3::from(acc)
        })
        .collect()
}

/// Pose and shape the body: vertex v goes to
/// `sum_j w_jv T_j(theta) (mean_v + Z_v z)`.
pub fn skin_body(
    basis: &ShapeBasis,
    skeleton: &Skeleton,
    theta: &PoseParams,
    z: &ShapeParams,
) -> Result<Vec<Point3<f64>>, BodyError> {
    basis.validate_weights()?;
    let shaped = basis.shaped_vertices(z)?;
    let transforms = joint_transforms(skeleton, theta)?;
    Ok(skin_points(&shaped, &basis.weights, &transforms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::canonical::canonical_skeleton;
    use crate::body::{JointId, JOINT_COUNT};
    use approx::assert_relative_eq;
    use nalgebra::{Rotation3, Vector3};

    fn single_joint_basis(points: Vec<Point3<f64>>, joint: usize) -> ShapeBasis {
        let n = points.len();
        ShapeBasis {
            mean: points,
            components: vec![],
            weights: vec![vec![(joint, 1.0)]; n],
        }
    }

    #[test]
    fn rest_pose_is_identity() {
        let skeleton = canonical_skeleton();
        let pts = vec![Point3::new(0.1, 1.0, 0.05), Point3::new(-0.2, 0.3, 0.0)];
        let basis = single_joint_basis(pts.clone(), 0);
        let out = skin_body(&basis, &skeleton, &PoseParams::rest(), &ShapeParams::zeros(0)).unwrap();
        for (a, b) in out.iter().zip(&pts) {
            assert_relative_eq!(a, b, epsilon = 1e-15);
        }
    }

    #[test]
    fn shape_offset_is_linear() {
        let skeleton = canonical_skeleton();
        let pts = vec![Point3::new(0.0, 1.0, 0.0)];
        let mut basis = single_joint_basis(pts, 0);
        basis.components = vec![vec![Vector3::new(1.0, 0.0, 0.0)], vec![Vector3::new(0.0, 2.0, 0.0)]];
        let z = ShapeParams { coefficients: vec![0.5, -0.25] };
        let out = skin_body(&basis, &skeleton, &PoseParams::rest(), &z).unwrap();
        assert_relative_eq!(out[0], Point3::new(0.5, 0.5, 0.0), epsilon = 1e-14);
    }

    #[test]
    fn root_rotation_is_rigid_about_joint() {
        // Oracle: rotate the points rigidly about the root joint by hand.
        let skeleton = canonical_skeleton();
        let root = skeleton.joints[0];
        let pts: Vec<Point3<f64>> = (0..10)
            .map(|i| Point3::new(0.02 * i as f64, 0.9 + 0.01 * i as f64, 0.03))
            .collect();
        let basis = single_joint_basis(pts.clone(), 0);
        let angle = std::f64::consts::FRAC_PI_2;
        let pose = PoseParams::rest().with_rotation(JointId::Pelvis, Vector3::new(0.0, 0.0, angle));
        let out = skin_body(&basis, &skeleton, &pose, &ShapeParams::zeros(0)).unwrap();
        let rot = Rotation3::from_axis_angle(&Vector3::z_axis(), angle);
        for (a, p) in out.iter().zip(&pts) {
            let expected = root + rot * (p - root);
            assert_relative_eq!(a, &expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn blended_vertex_averages_rigid_transforms() {
        let skeleton = canonical_skeleton();
        let p = Point3::new(-0.09, 0.5, 0.0);
        let basis = ShapeBasis {
            mean: vec![p],
            components: vec![],
            weights: vec![vec![(JointId::HipL as usize, 0.5), (JointId::KneeL as usize, 0.5)]],
        };
        let pose = PoseParams::rest().with_rotation(JointId::KneeL, Vector3::new(0.6, 0.0, 0.0));
        let out = skin_body(&basis, &skeleton, &pose, &ShapeParams::zeros(0)).unwrap();
        let transforms = joint_transforms(&skeleton, &pose).unwrap();
        let expected = Point3::from(
            ((transforms[JointId::HipL as usize] * p).coords + (transforms[JointId::KneeL as usize] * p).coords) * 0.5,
        );
        assert_relative_eq!(out[0], expected, epsilon = 1e-12);
    }

    #[test]
    fn bad_weight_sum_is_an_error() {
        let skeleton = canonical_skeleton();
        let basis = ShapeBasis {
            mean: vec![Point3::origin()],
            components: vec![],
            weights: vec![vec![(0, 0.7)]],
        };
        assert!(matches!(
            skin_body(&basis, &skeleton, &PoseParams::rest(), &ShapeParams::zeros(0)),
            Err(BodyError::BadWeightSum { .. })
        ));
        let _ = JOINT_COUNT;
    }

    #[test]
    fn affine_in_shape_at_fixed_pose() {
        let skeleton = canonical_skeleton();
        let mut basis = single_joint_basis(vec![Point3::new(0.05, 1.1, 0.02)], 1);
        basis.components = vec![vec![Vector3::new(0.3, -0.1, 0.2)], vec![Vector3::new(0.0, 0.5, -0.4)]];
        let pose = PoseParams::rest().with_rotation(JointId::Chest, Vector3::new(0.2, 0.3, -0.1));
        let za = ShapeParams { coefficients: vec![1.0, -0.5] };
        let zb = ShapeParams { coefficients: vec![-0.25, 2.0] };
        let z0 = ShapeParams::zeros(2);
        let (a, b) = (0.3, 0.45);
        let mix = ShapeParams {
            coefficients: za
                .coefficients
                .iter()
                .zip(&zb.coefficients)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        };
        let f = |z: &ShapeParams| skin_body(&basis, &skeleton, &pose, z).unwrap()[0];
        let lhs = f(&mix);
        let rhs = Point3::from(f(&za).coords * a + f(&zb).coords * b + f(&z0).coords * (1.0 - a - b));
        assert_relative_eq!(lhs, rhs, epsilon = 1e-10);
    }
}
