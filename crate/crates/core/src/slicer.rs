//! Cross-sections of a polychoron by the hyperplane `w = c0`.
//!
//! Each element of the resulting [`SliceMesh`] is one dimension lower than
//! the 4-D element it cuts: a mesh vertex comes from a 4-D edge, a mesh edge
//! from a 4-D face, and a mesh face from a 4-D cell. Those sources are kept
//! on every element.

use std::collections::HashMap;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polytope::Polychoron;
use crate::rotation::Point4;

/// Vertex-on-hyperplane tolerance, relative to the nominal edge length.
pub const DEFAULT_RELATIVE_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SliceError {
    #[error("slice offset must be finite, got {0}")]
    NonFiniteOffset(f64),
    #[error("classification tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("edge is parallel to the hyperplane (both ends at w = {w})")]
    ParallelEdge { w: f64 },
    #[error("edge does not cross the hyperplane")]
    EdgeDoesNotStraddle,
    #[error("hyperplane touches vertex {vertex}")]
    DegenerateSlice { vertex: usize },
    #[error("face {face} is cut {cuts} times; expected 0 or 2")]
    NonConvexFace { face: usize, cuts: usize },
    #[error("cell {cell} does not cut to a single closed polygon")]
    OpenCellSection { cell: usize },
}

/// The hyperplane `w = c0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hyperplane {
    c0: f64,
}

impl Hyperplane {
    pub fn new(c0: f64) -> Result<Self, SliceError> {
        if c0.is_finite() {
            Ok(Hyperplane { c0 })
        } else {
            Err(SliceError::NonFiniteOffset(c0))
        }
    }

    pub fn c0(self) -> f64 {
        self.c0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexSign {
    Below,
    On,
    Above,
}

pub fn classify_vertex(w: f64, c0: f64, eps: f64) -> VertexSign {
    if (w - c0).abs() <= eps {
        VertexSign::On
    } else if w < c0 - eps {
        VertexSign::Below
    } else {
        VertexSign::Above
    }
}

/// A point of the slicing hyperplane, in its own `(x, y, z)` coordinates.
/// Serialized as `[x, y, z]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, o: Point3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Point3) -> Point3 {
        Point3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(self, o: Point3) -> f64 {
        (self - o).norm()
    }
}

impl From<[f64; 3]> for Point3 {
    fn from([x, y, z]: [f64; 3]) -> Self {
        Point3 { x, y, z }
    }
}

impl From<Point3> for [f64; 3] {
    fn from(p: Point3) -> Self {
        p.to_array()
    }
}

impl Add for Point3 {
    type Output = Point3;

    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;

    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;

    fn mul(self, s: f64) -> Point3 {
        Point3::new(self.x * s, self.y * s, self.z * s)
    }
}

/// Where segment `p → q` crosses `w = c0`, and the parameter `t` along it.
///
/// `p` and `q` must lie strictly on opposite sides. The dropped w
/// coordinate of the crossing equals `c0` up to rounding.
pub fn intersect_edge(p: Point4, q: Point4, c0: f64) -> Result<(Point3, f64), SliceError> {
    let dw = q.w - p.w;
    if dw == 0.0 {
        return Err(SliceError::ParallelEdge { w: p.w });
    }
    let side = (p.w - c0) * (q.w - c0);
    if side.is_nan() || side >= 0.0 {
        return Err(SliceError::EdgeDoesNotStraddle);
    }
    let t = (c0 - p.w) / dw;
    let hit = p + (q - p) * t;
    Ok((Point3::new(hit.x, hit.y, hit.z), t))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SliceVertex {
    pub position: Point3,
    /// The 4-D edge this vertex lies on.
    pub source_edge: usize,
    /// Position along the source edge, measured from its first endpoint.
    pub t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceEdge {
    pub vertices: [usize; 2],
    pub source_face: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceFace {
    /// Convex loop, counter-clockwise seen from outside the slice.
    pub vertices: Vec<usize>,
    pub source_cell: usize,
}

/// A 3-D cross-section with 4-D provenance on every element.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SliceMesh {
    pub vertices: Vec<SliceVertex>,
    pub edges: Vec<SliceEdge>,
    pub faces: Vec<SliceFace>,
}

impl SliceMesh {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn positions(&self) -> Vec<Point3> {
        self.vertices.iter().map(|v| v.position).collect()
    }

    /// `V − E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn centroid(&self) -> Option<Point3> {
        if self.vertices.is_empty() {
            return None;
        }
        let sum = self
            .vertices
            .iter()
            .fold(Point3::default(), |acc, v| acc + v.position);
        Some(sum * (1.0 / self.vertices.len() as f64))
    }

    /// Area-weighted normal of a face loop (Newell's method).
    pub fn face_normal(&self, face: usize) -> Point3 {
        let lp = &self.faces[face].vertices;
        (0..lp.len()).fold(Point3::default(), |acc, i| {
            let a = self.vertices[lp[i]].position;
            let b = self.vertices[lp[(i + 1) % lp.len()]].position;
            acc + a.cross(b)
        })
    }
}

/// Free-function form of [`SliceMesh::euler_characteristic`].
pub fn euler_characteristic(mesh: &SliceMesh) -> i64 {
    mesh.euler_characteristic()
}

/// Cuts `polytope` with `hyperplane`.
///
/// Vertices within `eps` of the hyperplane make the slice degenerate; the
/// caller decides how to move off it. A hyperplane that misses the
/// polytope yields an empty mesh.
pub fn slice(polytope: &Polychoron, hyperplane: Hyperplane, eps: f64) -> Result<SliceMesh, SliceError> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(SliceError::InvalidTolerance(eps));
    }
    let c0 = hyperplane.c0();
    let verts = polytope.vertices();
    let mut below = Vec::with_capacity(verts.len());
    for (vertex, v) in verts.iter().enumerate() {
        match classify_vertex(v.w, c0, eps) {
            VertexSign::On => return Err(SliceError::DegenerateSlice { vertex }),
            sign => below.push(sign == VertexSign::Below),
        }
    }

    let mut mesh = SliceMesh::default();
    let mut vertex_of_edge: Vec<Option<usize>> = vec![None; polytope.edges().len()];
    for (edge, &[a, b]) in polytope.edges().iter().enumerate() {
        if below[a] != below[b] {
            let (position, t) = intersect_edge(verts[a], verts[b], c0)?;
            vertex_of_edge[edge] = Some(mesh.vertices.len());
            mesh.vertices.push(SliceVertex {
                position,
                source_edge: edge,
                t,
            });
        }
    }
    if mesh.vertices.is_empty() {
        return Ok(mesh);
    }

    let lookup = polytope.edge_lookup();
    let mut edge_of_face: Vec<Option<usize>> = vec![None; polytope.faces().len()];
    for (face, slot) in edge_of_face.iter_mut().enumerate() {
        let cuts: Vec<usize> = polytope
            .face_edges(face, &lookup)
            .into_iter()
            .flatten()
            .filter_map(|e| vertex_of_edge[e])
            .collect();
        match cuts.as_slice() {
            [] => {}
            &[u, v] => {
                *slot = Some(mesh.edges.len());
                mesh.edges.push(SliceEdge {
                    vertices: [u, v],
                    source_face: face,
                });
            }
            _ => {
                return Err(SliceError::NonConvexFace {
                    face,
                    cuts: cuts.len(),
                })
            }
        }
    }

    for (cell, faces) in polytope.cells().iter().enumerate() {
        let segments: Vec<[usize; 2]> = faces
            .iter()
            .filter_map(|&f| edge_of_face.get(f).copied().flatten())
            .map(|e| mesh.edges[e].vertices)
            .collect();
        if segments.is_empty() {
            continue;
        }
        let loop_ = walk_cycle(&segments).ok_or(SliceError::OpenCellSection { cell })?;
        mesh.faces.push(SliceFace {
            vertices: loop_,
            source_cell: cell,
        });
    }

    orient_outward(&mut mesh);
    Ok(mesh)
}

// Chains segments into one closed loop; consecutive loop vertices share a
// segment, i.e. their source edges share a 4-D face of the cell.
fn walk_cycle(segments: &[[usize; 2]]) -> Option<Vec<usize>> {
    let mut adjacent: HashMap<usize, Vec<usize>> = HashMap::new();
    for &[a, b] in segments {
        adjacent.entry(a).or_default().push(b);
        adjacent.entry(b).or_default().push(a);
    }
    if segments.len() < 3 || adjacent.values().any(|n| n.len() != 2) {
        return None;
    }
    let start = segments[0][0];
    let mut lp = vec![start];
    let (mut prev, mut cur) = (start, segments[0][1]);
    while cur != start {
        if lp.len() > segments.len() {
            return None;
        }
        lp.push(cur);
        let n = &adjacent[&cur];
        let next = if n[0] == prev { n[1] } else { n[0] };
        prev = cur;
        cur = next;
    }
    (lp.len() == segments.len()).then_some(lp)
}

fn orient_outward(mesh: &mut SliceMesh) {
    let Some(center) = mesh.centroid() else {
        return;
    };
    for face in 0..mesh.faces.len() {
        let normal = mesh.face_normal(face);
        let lp = &mesh.faces[face].vertices;
        let face_center = lp
            .iter()
            .fold(Point3::default(), |acc, &v| acc + mesh.vertices[v].position)
            * (1.0 / lp.len() as f64);
        if normal.dot(face_center - center) < 0.0 {
            mesh.faces[face].vertices.reverse();
        }
    }
}
