//! Garment recovery toolkit.
//!
//! Reconstructs parameterized 3D garments from 2D observations of a clothed
//! body. A garment is described by a sewing-pattern template with sizing
//! parameters, cloth material parameters (bending and stretching stiffness
//! tables), a 2D pattern mesh, and the draped 3D mesh. Given a target
//! silhouette polygon and a wrinkle density, the recovery pipeline alternates
//! derivative-free and quasi-Newton optimization around a physics-based cloth
//! simulator until the draped garment matches the observations.
//!
//! The crate is organized along the pipeline stages:
//!
//! - [`mesh`] — triangle-mesh containers and discrete differential quantities
//!   (hinge angles, curvature, Green strain).
//! - [`pattern`] — parametric sewing-pattern templates, pattern instantiation
//!   and seam stitching.
//! - [`body`] — skinned parametric human body, PCA shape spaces, and a signed
//!   distance sampler used for collisions.
//! - [`register`] — fitting a template garment onto a posed body.
//! - [`sim`] — cloth simulator (stretching, bending, gravity, collisions) and
//!   drape-to-equilibrium.
//! - [`features`] — silhouette projection, polygon distance, and the wrinkle
//!   density to curvature map.
//! - [`recover`] — the alternating sizing/material identification loop, joint
//!   pose-material refinement, and retargeting.
//! - [`harness`] — synthetic evaluation scenes with known ground truth.

pub mod body;
pub mod features;
pub mod harness;
pub mod mesh;
pub mod pattern;
pub mod recover;
pub mod register;
pub mod sim;

pub use mesh::{GarmentMesh, PatternMesh};
