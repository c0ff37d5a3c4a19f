//! Edge adjacency for indexed triangle soups.

use std::collections::HashMap;

use super::MeshError;

pub type EdgeId = usize;

/// One undirected edge with its incident triangles.
#[derive(Debug, Clone, Copy)]
pub struct Edge {
    /// Endpoint vertex indices, `v0 < v1`.
    pub v0: usize,
    pub v1: usize,
    /// Incident triangles; `tris[1]` is `usize::MAX` on boundary edges.
    pub tris: [usize; 2],
    /// Wing vertices opposite the edge in each incident triangle
    /// (`usize::MAX` where absent).
    pub wings: [usize; 2],
}

impl Edge {
    pub fn is_interior(&self) -> bool {
        self.tris[1] != usize::MAX
    }
}

/// Precomputed edge adjacency shared by curvature and bending computations.
#[derive(Debug, Clone)]
pub struct MeshTopology {
    pub edges: Vec<Edge>,
    /// Interior-edge ids incident to each vertex (vertex is an endpoint).
    pub vertex_interior_edges: Vec<Vec<EdgeId>>,
    /// Edge ids of the three edges of each triangle.
    pub triangle_edges: Vec<[EdgeId; 3]>,
    pub vertex_count: usize,
}

impl MeshTopology {
    pub fn build(vertex_count: usize, triangles: &[[usize; 3]]) -> Self {
        let mut map: HashMap<(usize, usize), EdgeId> = HashMap::new();
        let mut edges: Vec<Edge> = Vec::new();
        let mut triangle_edges = vec![[0usize; 3]; triangles.len()];

        for (t, tri) in triangles.iter().enumerate() {
            for k in 0..3 {
                let a = tri[k];
                let b = tri[(k + 1) % 3];
                let w = tri[(k + 2) % 3];
                let key = (a.min(b), a.max(b));
                let id = *map.entry(key).or_insert_with(|| {
                    edges.push(Edge {
                        v0: key.0,
                        v1: key.1,
                        tris: [usize::MAX; 2],
                        wings: [usize::MAX; 2],
                    });
                    edges.len() - 1
                });
                let e = &mut edges[id];
                if e.tris[0] == usize::MAX {
                    e.tris[0] = t;
                    e.wings[0] = w;
                } else if e.tris[1] == usize::MAX {
                    e.tris[1] = t;
                    e.wings[1] = w;
                } else {
                    // Non-manifold; record nothing further. Lookups that need a
                    // hinge will report the error.
                    e.tris[1] = usize::MAX - 1;
                }
                triangle_edges[t][k] = id;
            }
        }

        let mut vertex_interior_edges = vec![Vec::new(); vertex_count];
        for (id, e) in edges.iter().enumerate() {
            if e.is_interior() && e.tris[1] != usize::MAX - 1 {
                vertex_interior_edges[e.v0].push(id);
                vertex_interior_edges[e.v1].push(id);
            }
        }

        Self { edges, vertex_interior_edges, triangle_edges, vertex_count }
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> {
        self.edges.iter().enumerate().filter(|(_, e)| e.is_interior() && e.tris[1] != usize::MAX - 1)
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge, MeshError> {
        let e = self.edges.get(id).ok_or(MeshError::BoundaryEdge(id))?;
        if e.tris[1] == usize::MAX - 1 {
            return Err(MeshError::NonManifoldEdge { edge: id, count: 3 });
        }
        if !e.is_interior() {
            return Err(MeshError::BoundaryEdge(id));
        }
        Ok(e)
    }

    /// Boundary vertices (endpoint of at least one boundary edge).
    pub fn boundary_vertices(&self) -> Vec<bool> {
        let mut b = vec![false; self.vertex_count];
        for e in &self.edges {
            if !e.is_interior() {
                b[e.v0] = true;
                b[e.v1] = true;
            }
        }
        b
    }
}
