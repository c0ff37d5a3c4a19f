// temporary diagnostic
use garment::body::SdfGrid;
use garment::mesh::uv_sphere;
use nalgebra::Point3;
use rand::{Rng, SeedableRng};

fn main() {
    let mesh = uv_sphere(0.8, 24, 12);
    let sdf = SdfGrid::build(&mesh, 48).unwrap();
    println!("cell {} dims {:?} origin {:?}", sdf.cell, sdf.dims, sdf.origin);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut worst = (0.0f64, Point3::origin(), 0.0, 0.0);
    for _ in 0..1000 {
        let p = Point3::new(rng.gen_range(-1.3..1.3), rng.gen_range(-1.3..1.3), rng.gen_range(-1.3..1.3));
        let mut best = f64::INFINITY;
        for tri in &mesh.triangles {
            best = best.min(garment::body::point_triangle_distance(p, mesh.vertices3d[tri[0]], mesh.vertices3d[tri[1]], mesh.vertices3d[tri[2]]));
        }
        let truth = if p.coords.norm() < 0.8 { -best } else { best };
        let got = sdf.distance(p);
        let err = (got - truth).abs();
        if err > worst.0 { worst = (err, p, truth, got); }
    }
    println!("worst err {} at {:?} truth {} got {}", worst.0, worst.1, worst.2, worst.3);
}
