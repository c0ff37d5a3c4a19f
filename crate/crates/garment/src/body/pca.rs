//! Shape-space extraction from a registered mesh corpus.

use nalgebra::{DMatrix, Point3, Vector3};

use crate::mesh::GarmentMesh;

use super::{BodyError, ShapeBasis};

/// PCA over vertex positions of a corpus with shared topology: the mean mesh
/// plus principal directions ordered by decreasing variance. Components with
/// negligible variance are dropped. Skinning weights are left empty; callers
/// attach a rig separately.
pub fn pca_shape_basis(corpus: &[GarmentMesh]) -> Result<ShapeBasis, BodyError> {
    if corpus.len() < 2 {
        return Err(BodyError::CorpusTooSmall(corpus.len()));
    }
    let n = corpus[0].vertices3d.len();
    for mesh in corpus {
        if mesh.vertices3d.len() != n {
            return Err(BodyError::CorpusTopologyMismatch(n, mesh.vertices3d.len()));
        }
    }
    let m = corpus.len();
    let dim = 3 * n;

    let mut mean = vec![Vector3::zeros(); n];
    for mesh in corpus {
        for (acc, p) in mean.iter_mut().zip(&mesh.vertices3d) {
            *acc += p.coords;
        }
    }
    for acc in &mut mean {
        *acc /= m as f64;
    }

    // Centered data matrix, one column per mesh.
    let mut data = DMatrix::zeros(dim, m);
    for (c, mesh) in corpus.iter().enumerate() {
        for (v, p) in mesh.vertices3d.iter().enumerate() {
            let d = p.coords - mean[v];
            data[(3 * v, c)] = d.x;
            data[(3 * v + 1, c)] = d.y;
            data[(3 * v + 2, c)] = d.z;
        }
    }

    // Thin SVD: left singular vectors are the principal directions and
    // sigma^2 / m the variances.
    let svd = data.svd(true, false);
    let u = svd.u.as_ref().expect("left singular vectors");
    let tol = 1e-9 * svd.singular_values.max().max(1e-300);
    let mut components = Vec::new();
    for (k, &sigma) in svd.singular_values.iter().enumerate() {
        if sigma <= tol {
            continue;
        }
        let scale = sigma / (m as f64).sqrt();
        let col = u.column(k);
        let comp: Vec<Vector3<f64>> = (0..n)
            .map(|v| Vector3::new(col[3 * v], col[3 * v + 1], col[3 * v + 2]) * scale)
            .collect();
        components.push(comp);
    }

    Ok(ShapeBasis {
        mean: mean.into_iter().map(Point3::from).collect(),
        components,
        weights: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::ShapeParams;
    use crate::mesh::uv_sphere;
    use nalgebra::Point3;

    fn scaled_sphere(rx: f64, rz: f64) -> GarmentMesh {
        let mut m = uv_sphere(1.0, 16, 8);
        for p in &mut m.vertices3d {
            p.x *= rx;
            p.z *= rz;
        }
        m
    }

    #[test]
    fn identical_corpus_has_no_components() {
        let corpus = vec![uv_sphere(1.0, 12, 6); 4];
        let basis = pca_shape_basis(&corpus).unwrap();
        assert!(basis.components.is_empty());
        for (a, b) in basis.mean.iter().zip(&corpus[0].vertices3d) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn rank_one_variation_recovered() {
        let mut a = uv_sphere(1.0, 12, 6);
        let mut b = a.clone();
        let delta = nalgebra::Vector3::new(0.0, 0.0, 0.3);
        a.vertices3d[5] += delta;
        b.vertices3d[5] -= delta;
        let basis = pca_shape_basis(&[a, b]).unwrap();
        assert_eq!(basis.components.len(), 1);
        // The single component moves only vertex 5, by the sample standard
        // deviation of the corpus.
        let comp = &basis.components[0];
        for (v, offset) in comp.iter().enumerate() {
            if v == 5 {
                assert!((offset.norm() - delta.norm()).abs() < 1e-10);
            } else {
                assert!(offset.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn two_radii_explain_ellipsoid_family() {
        // Oracle: covariance eigenvalues computed independently from the
        // data matrix confirm two dominant directions.
        let mut corpus = Vec::new();
        for i in 0..10 {
            let rx = 1.0 + 0.1 * (i as f64 % 5.0 - 2.0);
            let rz = 1.0 + 0.07 * ((i / 5) as f64 - 0.5);
            corpus.push(scaled_sphere(rx, rz));
        }
        let basis = pca_shape_basis(&corpus).unwrap();
        let var: Vec<f64> = basis
            .components
            .iter()
            .map(|c| c.iter().map(|v| v.norm_squared()).sum::<f64>())
            .collect();
        let total: f64 = var.iter().sum();
        let top2 = var[0] + var.get(1).copied().unwrap_or(0.0);
        assert!(top2 / total >= 0.99, "top-2 variance share {}", top2 / total);
    }

    #[test]
    fn reconstruction_reproduces_corpus() {
        let mut corpus = Vec::new();
        for i in 0..6 {
            corpus.push(scaled_sphere(1.0 + 0.05 * i as f64, 1.0 - 0.03 * i as f64));
        }
        let basis = pca_shape_basis(&corpus).unwrap();
        // Project the first mesh onto the components and reconstruct.
        let target = &corpus[0];
        let coeffs: Vec<f64> = basis
            .components
            .iter()
            .map(|comp| {
                let norm2: f64 = comp.iter().map(|v| v.norm_squared()).sum();
                let dot: f64 = comp
                    .iter()
                    .zip(target.vertices3d.iter().zip(&basis.mean))
                    .map(|(c, (p, m))| c.dot(&(p - m)))
                    .sum();
                dot / norm2
            })
            .collect();
        let rebuilt = basis.shaped_vertices(&ShapeParams { coefficients: coeffs }).unwrap();
        let scale: f64 = target.vertices3d.iter().map(|p| p.coords.norm()).sum::<f64>();
        let err: f64 = rebuilt
            .iter()
            .zip(&target.vertices3d)
            .map(|(a, b): (&Point3<f64>, &Point3<f64>)| (a - b).norm())
            .sum::<f64>();
        assert!(err / scale < 1e-8, "relative reconstruction error {}", err / scale);
    }

    #[test]
    fn mismatched_topology_is_an_error() {
        let a = uv_sphere(1.0, 12, 6);
        let b = uv_sphere(1.0, 16, 8);
        assert!(matches!(
            pca_shape_basis(&[a, b]),
            Err(BodyError::CorpusTopologyMismatch(..))
        ));
    }
}
