//! Constrained Delaunay triangulation of a simple polygon with interior
//! Steiner points on a hex lattice.
//!
//! Bowyer-Watson insertion over a super-triangle, edge flips to enforce the
//! polygon boundary, then removal of outside triangles. Interior lattice
//! points carry a tiny deterministic jitter so the in-circle predicate never
//! sees exactly cocircular lattice quadruples.

use nalgebra::Point2;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy)]
struct Tri {
    v: [usize; 3],
    /// Neighbor opposite vertex k, `NONE` on the hull.
    n: [usize; 3],
    alive: bool,
}

pub struct Triangulation {
    pub points: Vec<Point2<f64>>,
    pub triangles: Vec<[usize; 3]>,
}

/// Triangulate the interior of a simple closed polygon (counter-clockwise,
/// no repeated vertices). Boundary vertices are kept verbatim and come first
/// in the output; `spacing` controls interior Steiner point density.
pub fn triangulate_polygon(boundary: &[Point2<f64>], spacing: f64) -> Triangulation {
    let n_boundary = boundary.len();
    assert!(n_boundary >= 3, "polygon needs >= 3 vertices");

    let mut points: Vec<Point2<f64>> = boundary.to_vec();
    points.extend(interior_lattice(boundary, spacing));

    let mut dt = Delaunay::new(&points);
    for i in 0..points.len() {
        dt.insert(i);
    }
    for i in 0..n_boundary {
        dt.enforce_edge(i, (i + 1) % n_boundary);
    }

    let sup = points.len();
    let mut triangles = Vec::new();
    for t in &dt.tris {
        if !t.alive || t.v.iter().any(|&v| v >= sup) {
            continue;
        }
        let c = Point2::from((points[t.v[0]].coords + points[t.v[1]].coords + points[t.v[2]].coords) / 3.0);
        if point_in_polygon(c, boundary) {
            triangles.push(t.v);
        }
    }

    // Drop unused lattice points and renumber; boundary points always stay.
    let mut used = vec![false; points.len()];
    for t in &triangles {
        for &v in t {
            used[v] = true;
        }
    }
    for u in used.iter_mut().take(n_boundary) {
        *u = true;
    }
    let mut remap = vec![NONE; points.len()];
    let mut out_points = Vec::new();
    for (i, &u) in used.iter().enumerate() {
        if u {
            remap[i] = out_points.len();
            out_points.push(points[i]);
        }
    }
    let triangles = triangles.iter().map(|t| [remap[t[0]], remap[t[1]], remap[t[2]]]).collect();
    Triangulation { points: out_points, triangles }
}

/// Hex-lattice points strictly inside the polygon and clear of its boundary.
fn interior_lattice(boundary: &[Point2<f64>], spacing: f64) -> Vec<Point2<f64>> {
    let (mut min, mut max) = (boundary[0], boundary[0]);
    for p in boundary {
        min.x = min.x.min(p.x);
        min.y = min.y.min(p.y);
        max.x = max.x.max(p.x);
        max.y = max.y.max(p.y);
    }
    let row_h = spacing * 3f64.sqrt() / 2.0;
    let clearance = 0.55 * spacing;
    let mut pts = Vec::new();
    let mut j = 0usize;
    let mut y = min.y + row_h * 0.6;
    while y < max.y {
        let offset = if j % 2 == 0 { 0.0 } else { spacing / 2.0 };
        let mut x = min.x + offset + spacing * 0.3;
        let mut i = 0usize;
        while x < max.x {
            let jitter = 1e-7 * spacing;
            let p = Point2::new(
                x + jitter * hash_unit(i as u64 * 2654435761 + j as u64 * 40503),
                y + jitter * hash_unit(i as u64 * 97 + j as u64 * 1000003 + 7),
            );
            if point_in_polygon(p, boundary) && distance_to_boundary(p, boundary) > clearance {
                pts.push(p);
            }
            x += spacing;
            i += 1;
        }
        y += row_h;
        j += 1;
    }
    pts
}

/// Deterministic pseudo-random value in [-1, 1].
fn hash_unit(seed: u64) -> f64 {
    let mut h = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    h ^= h >> 32;
    h = h.wrapping_mul(0xD6E8_FEB8_6659_FD93);
    h ^= h >> 32;
    (h as f64 / u64::MAX as f64) * 2.0 - 1.0
}

pub fn point_in_polygon(p: Point2<f64>, boundary: &[Point2<f64>]) -> bool {
    let n = boundary.len();
    let mut inside = false;
    for i in 0..n {
        let a = boundary[i];
        let b = boundary[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    inside
}

pub fn distance_to_boundary(p: Point2<f64>, boundary: &[Point2<f64>]) -> f64 {
    let n = boundary.len();
    let mut best = f64::INFINITY;
    for i in 0..n {
        let a = boundary[i];
        let b = boundary[(i + 1) % n];
        let ab = b - a;
        let len2 = ab.norm_squared();
        let t = if len2 > 0.0 { ((p - a).dot(&ab) / len2).clamp(0.0, 1.0) } else { 0.0 };
        best = best.min((p - (a + ab * t)).norm());
    }
    best
}

fn orient2d(a: Point2<f64>, b: Point2<f64>, c: Point2<f64>) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Strict in-circle for counter-clockwise (a, b, c).
fn in_circumcircle(a: Point2<f64>, b: Point2<f64>, c: Point2<f64>, p: Point2<f64>) -> bool {
    let ax = a.x - p.x;
    let ay = a.y - p.y;
    let bx = b.x - p.x;
    let by = b.y - p.y;
    let cx = c.x - p.x;
    let cy = c.y - p.y;
    let det = (ax * ax + ay * ay) * (bx * cy - cx * by) - (bx * bx + by * by) * (ax * cy - cx * ay)
        + (cx * cx + cy * cy) * (ax * by - bx * ay);
    det > 0.0
}

fn segments_cross(a: Point2<f64>, b: Point2<f64>, c: Point2<f64>, d: Point2<f64>) -> bool {
    let d1 = orient2d(a, b, c);
    let d2 = orient2d(a, b, d);
    let d3 = orient2d(c, d, a);
    let d4 = orient2d(c, d, b);
    (d1 * d2 < 0.0) && (d3 * d4 < 0.0)
}

struct Delaunay {
    /// Input points followed by the three super-triangle vertices.
    pts: Vec<Point2<f64>>,
    tris: Vec<Tri>,
    last: usize,
}

impl Delaunay {
    fn new(points: &[Point2<f64>]) -> Self {
        let (mut min, mut max) = (points[0], points[0]);
        for p in points {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        let span = (max.x - min.x).max(max.y - min.y).max(1e-9);
        let cx = (min.x + max.x) / 2.0;
        let cy = (min.y + max.y) / 2.0;
        let s = 30.0 * span;
        let mut pts = points.to_vec();
        let n = pts.len();
        pts.push(Point2::new(cx - s, cy - 0.7 * s));
        pts.push(Point2::new(cx + s, cy - 0.7 * s));
        pts.push(Point2::new(cx, cy + s));
        let tris = vec![Tri { v: [n, n + 1, n + 2], n: [NONE; 3], alive: true }];
        Self { pts, tris, last: 0 }
    }

    /// Walk from the last created triangle to the one containing `p`.
    fn locate(&self, p: Point2<f64>) -> usize {
        let mut t = self.last;
        if !self.tris[t].alive {
            t = self.tris.iter().rposition(|t| t.alive).expect("alive triangle");
        }
        let mut guard = 0usize;
        loop {
            guard += 1;
            if guard > 4 * self.tris.len() + 16 {
                // Walk got stuck on a degeneracy; fall back to a scan.
                return self
                    .tris
                    .iter()
                    .position(|tri| {
                        tri.alive
                            && (0..3).all(|k| {
                                orient2d(self.pts[tri.v[k]], self.pts[tri.v[(k + 1) % 3]], p) >= -1e-30
                            })
                    })
                    .expect("containing triangle");
            }
            let tri = self.tris[t];
            let mut moved = false;
            for k in 0..3 {
                let a = self.pts[tri.v[(k + 1) % 3]];
                let b = self.pts[tri.v[(k + 2) % 3]];
                if orient2d(a, b, p) < 0.0 {
                    let nb = tri.n[k];
                    if nb != NONE {
                        t = nb;
                        moved = true;
                        break;
                    }
                }
            }
            if !moved {
                return t;
            }
        }
    }

    fn insert(&mut self, index: usize) {
        let p = self.pts[index];
        let containing = self.locate(p);

        // Grow the cavity of circumcircle violations.
        let mut in_cavity = std::collections::HashSet::new();
        in_cavity.insert(containing);
        let mut stack = vec![containing];
        while let Some(t) = stack.pop() {
            for k in 0..3 {
                let nb = self.tris[t].n[k];
                if nb == NONE || in_cavity.contains(&nb) {
                    continue;
                }
                let tv = self.tris[nb].v;
                if in_circumcircle(self.pts[tv[0]], self.pts[tv[1]], self.pts[tv[2]], p) {
                    in_cavity.insert(nb);
                    stack.push(nb);
                }
            }
        }

        // Cavity boundary as counter-clockwise directed edges.
        let mut boundary: Vec<(usize, usize, usize)> = Vec::new();
        let mut cavity: Vec<usize> = in_cavity.iter().copied().collect();
        cavity.sort_unstable();
        for &t in &cavity {
            let tv = self.tris[t].v;
            for k in 0..3 {
                let nb = self.tris[t].n[k];
                if nb == NONE || !in_cavity.contains(&nb) {
                    boundary.push((tv[(k + 1) % 3], tv[(k + 2) % 3], nb));
                }
            }
        }
        for &t in &cavity {
            self.tris[t].alive = false;
        }

        // Star the cavity from p.
        let mut created = Vec::with_capacity(boundary.len());
        let mut by_edge: std::collections::HashMap<(usize, usize), usize> = std::collections::HashMap::new();
        for &(a, b, outer) in &boundary {
            let id = self.tris.len();
            self.tris.push(Tri { v: [index, a, b], n: [outer, NONE, NONE], alive: true });
            if outer != NONE {
                let o = &mut self.tris[outer];
                for k in 0..3 {
                    let (oa, ob) = (o.v[(k + 1) % 3], o.v[(k + 2) % 3]);
                    if (oa == b && ob == a) || (oa == a && ob == b) {
                        o.n[k] = id;
                    }
                }
            }
            by_edge.insert((a, b), id);
            created.push(id);
        }
        // Fan adjacency: triangle (p, a, b) meets (p, b, c) across edge (p, b).
        // The cavity boundary is one closed loop, so each vertex starts and
        // ends exactly one directed edge.
        for &id in &created {
            let [_, a, b] = self.tris[id].v;
            if let Some(&nb) = by_edge.iter().find(|((s, _), _)| *s == b).map(|(_, id)| id) {
                self.tris[id].n[1] = nb;
            }
            if let Some(&nb) = by_edge.iter().find(|((_, e), _)| *e == a).map(|(_, id)| id) {
                self.tris[id].n[2] = nb;
            }
        }
        self.last = *created.first().expect("cavity is non-empty");
    }

    fn edge_exists(&self, a: usize, b: usize) -> bool {
        self.tris.iter().any(|t| {
            t.alive && {
                let v = t.v;
                (0..3).any(|k| (v[k] == a && v[(k + 1) % 3] == b) || (v[k] == b && v[(k + 1) % 3] == a))
            }
        })
    }

    /// Flip edges crossing segment (a, b) until it becomes an edge.
    fn enforce_edge(&mut self, a: usize, b: usize) {
        let pa = self.pts[a];
        let pb = self.pts[b];
        let mut guard = 0usize;
        while !self.edge_exists(a, b) {
            guard += 1;
            assert!(guard < 10_000, "constraint enforcement did not converge");
            let mut flipped = false;
            for t in 0..self.tris.len() {
                if !self.tris[t].alive {
                    continue;
                }
                for k in 0..3 {
                    let u = self.tris[t].v[(k + 1) % 3];
                    let w = self.tris[t].v[(k + 2) % 3];
                    if u == a || u == b || w == a || w == b {
                        continue;
                    }
                    if segments_cross(pa, pb, self.pts[u], self.pts[w]) && self.try_flip(t, k) {
                        flipped = true;
                        break;
                    }
                }
                if flipped {
                    break;
                }
            }
            assert!(flipped, "no flippable edge crossing constraint");
        }
    }

    /// Flip the edge opposite vertex `k` of triangle `t` if the surrounding
    /// quad is strictly convex. Returns whether the flip happened.
    fn try_flip(&mut self, t: usize, k: usize) -> bool {
        let nb = self.tris[t].n[k];
        if nb == NONE {
            return false;
        }
        let tv = self.tris[t].v;
        let p = tv[k];
        let u = tv[(k + 1) % 3];
        let w = tv[(k + 2) % 3];
        // Find q, the vertex of nb opposite the shared edge.
        let nv = self.tris[nb].v;
        let m = (0..3).find(|&m| nv[m] != u && nv[m] != w).expect("shared edge");
        let q = nv[m];

        // Strict convexity of quad p-u-q-w.
        if orient2d(self.pts[p], self.pts[u], self.pts[q]) <= 0.0 || orient2d(self.pts[q], self.pts[w], self.pts[p]) <= 0.0 {
            return false;
        }

        // Old neighbors.
        let t_pu = self.neighbor_across(t, p, u);
        let t_pw = self.neighbor_across(t, p, w);
        let n_qu = self.neighbor_across(nb, q, u);
        let n_qw = self.neighbor_across(nb, q, w);

        // Replace: t = (p, u, q), nb = (p, q, w).
        self.tris[t].v = [p, u, q];
        self.tris[nb].v = [p, q, w];
        self.tris[t].n = [n_qu, nb, t_pu];
        self.tris[nb].n = [n_qw, t_pw, t];
        for (tri, new_nb) in [(t_pu, t), (n_qu, t), (t_pw, nb), (n_qw, nb)] {
            if tri != NONE {
                self.relink(tri, t, nb, new_nb);
            }
        }
        true
    }

    fn neighbor_across(&self, t: usize, a: usize, b: usize) -> usize {
        let v = self.tris[t].v;
        for k in 0..3 {
            let (x, y) = (v[(k + 1) % 3], v[(k + 2) % 3]);
            if (x == a && y == b) || (x == b && y == a) {
                return self.tris[t].n[k];
            }
        }
        NONE
    }

    /// After a flip, make `tri` point at `new_nb` wherever it pointed at one
    /// of the two rebuilt triangles but no longer shares the edge.
    fn relink(&mut self, tri: usize, t: usize, nb: usize, new_nb: usize) {
        let tv = self.tris[tri].v;
        for k in 0..3 {
            let old = self.tris[tri].n[k];
            if old != t && old != nb {
                continue;
            }
            let (a, b) = (tv[(k + 1) % 3], tv[(k + 2) % 3]);
            let shares = |other: usize| {
                let ov = self.tris[other].v;
                let mut count = 0;
                for &x in &ov {
                    if x == a || x == b {
                        count += 1;
                    }
                }
                count == 2
            };
            if !shares(old) {
                debug_assert!(shares(new_nb));
                self.tris[tri].n[k] = new_nb;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_mesh(tr: &Triangulation, boundary_len: usize) {
        assert!(!tr.triangles.is_empty());
        for t in &tr.triangles {
            let area = orient2d(tr.points[t[0]], tr.points[t[1]], tr.points[t[2]]);
            assert!(area > 0.0, "non-positive triangle {t:?}");
        }
        // Every boundary segment must appear as a triangulation edge.
        let mut edges = std::collections::HashSet::new();
        for t in &tr.triangles {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                edges.insert((a.min(b), a.max(b)));
            }
        }
        for i in 0..boundary_len {
            let j = (i + 1) % boundary_len;
            assert!(edges.contains(&(i.min(j), i.max(j))), "missing boundary edge {i}-{j}");
        }
    }

    #[test]
    fn triangulates_square_with_interior_points() {
        let boundary: Vec<Point2<f64>> = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ];
        let tr = triangulate_polygon(&boundary, 0.1);
        check_mesh(&tr, 4);
        assert!(tr.points.len() > 50, "expected interior refinement, got {}", tr.points.len());
        let total_area: f64 = tr
            .triangles
            .iter()
            .map(|t| 0.5 * orient2d(tr.points[t[0]], tr.points[t[1]], tr.points[t[2]]))
            .sum();
        assert!((total_area - 1.0).abs() < 1e-9);
    }

    #[test]
    fn triangulates_nonconvex_polygon() {
        // L-shape.
        let boundary: Vec<Point2<f64>> = vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 0.8),
            Point2::new(0.8, 0.8),
            Point2::new(0.8, 2.0),
            Point2::new(0.0, 2.0),
        ];
        let tr = triangulate_polygon(&boundary, 0.15);
        check_mesh(&tr, 6);
        let total_area: f64 = tr
            .triangles
            .iter()
            .map(|t| 0.5 * orient2d(tr.points[t[0]], tr.points[t[1]], tr.points[t[2]]))
            .sum();
        let expected = 2.0 * 0.8 + 0.8 * 1.2;
        assert!((total_area - expected).abs() < 1e-9, "area {total_area} vs {expected}");
    }

    #[test]
    fn triangulates_densely_sampled_annular_sector() {
        // Circle-skirt style piece: annular sector across 2.4 radians.
        let mut boundary = Vec::new();
        let (r0, r1) = (0.25, 0.85);
        let half = 1.2;
        let steps = 48;
        for i in 0..=steps {
            let a = -half + 2.0 * half * i as f64 / steps as f64;
            boundary.push(Point2::new(r0 * a.sin(), -r0 * a.cos()));
        }
        for i in (0..=steps).rev() {
            let a = -half + 2.0 * half * i as f64 / steps as f64;
            boundary.push(Point2::new(r1 * a.sin(), -r1 * a.cos()));
        }
        // Orient counter-clockwise.
        if super::super::cdt::tests_area(&boundary) < 0.0 {
            boundary.reverse();
        }
        let tr = triangulate_polygon(&boundary, 0.05);
        check_mesh(&tr, 0); // boundary indices shuffled by reverse; skip edge check
        let total_area: f64 = tr
            .triangles
            .iter()
            .map(|t| 0.5 * orient2d(tr.points[t[0]], tr.points[t[1]], tr.points[t[2]]))
            .sum();
        // Polygon area (not the smooth sector): compare against shoelace.
        let expected = tests_area(&boundary);
        assert!((total_area - expected).abs() < 1e-9, "area {total_area} vs {expected}");
    }
}

#[cfg(test)]
pub(crate) fn tests_area(poly: &[Point2<f64>]) -> f64 {
    let n = poly.len();
    let mut s = 0.0;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        s += a.x * b.y - b.x * a.y;
    }
    0.5 * s
}
