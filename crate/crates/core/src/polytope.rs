//! Convex 4-polytopes with explicit incidence.
//!
//! A [`Polychoron`] stores vertices, edges, faces and cells. Faces are
//! cyclic vertex loops; cells are sets of face indices. The slicer relies on
//! these identities to tag every cross-section element with the 4-D element
//! it came from, so incidence is stored rather than rediscovered from
//! coordinates.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rotation::{Point4, Rotation4};

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum PolytopeError {
    #[error("edge length must be positive and finite, got {0}")]
    InvalidEdgeLength(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polychoron {
    vertices: Vec<Point4>,
    edges: Vec<[usize; 2]>,
    faces: Vec<Vec<usize>>,
    cells: Vec<Vec<usize>>,
    edge_length_nominal: f64,
}

/// Metric summary recomputed from the current coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryReport {
    pub edge_lengths: Vec<f64>,
    pub centroid: Point4,
    pub circumradius: f64,
}

/// A broken incidence invariant. Indices refer to the offending polychoron.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IncidenceViolation {
    NonFiniteVertex {
        vertex: usize,
    },
    EdgeVertexOutOfRange {
        edge: usize,
        vertex: usize,
    },
    DegenerateEdge {
        edge: usize,
    },
    DuplicateEdge {
        edge: usize,
        first: usize,
    },
    FaceTooSmall {
        face: usize,
        len: usize,
    },
    FaceVertexOutOfRange {
        face: usize,
        vertex: usize,
    },
    FaceEdgeMissing {
        face: usize,
        from: usize,
        to: usize,
    },
    CellFaceOutOfRange {
        cell: usize,
        face: usize,
    },
    CellNotClosed {
        cell: usize,
        from: usize,
        to: usize,
        faces: usize,
    },
}

impl fmt::Display for IncidenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use IncidenceViolation::*;
        match *self {
            NonFiniteVertex { vertex } => write!(f, "vertex {vertex} has a non-finite coordinate"),
            EdgeVertexOutOfRange { edge, vertex } => write!(f, "edge {edge} names missing vertex {vertex}"),
            DegenerateEdge { edge } => write!(f, "edge {edge} joins a vertex to itself"),
            DuplicateEdge { edge, first } => write!(f, "edge {edge} duplicates edge {first}"),
            FaceTooSmall { face, len } => write!(f, "face {face} has only {len} vertices"),
            FaceVertexOutOfRange { face, vertex } => write!(f, "face {face} names missing vertex {vertex}"),
            FaceEdgeMissing { face, from, to } => {
                write!(f, "face {face} side {from}-{to} is not in the edge list")
            }
            CellFaceOutOfRange { cell, face } => write!(f, "cell {cell} names missing face {face}"),
            CellNotClosed {
                cell,
                from,
                to,
                faces,
            } => {
                write!(
                    f,
                    "cell {cell} edge {from}-{to} is shared by {faces} faces instead of 2"
                )
            }
        }
    }
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl Polychoron {
    /// Assembles a polychoron without checking it; see
    /// [`Polychoron::validate_incidence`].
    pub fn from_parts(
        vertices: Vec<Point4>,
        edges: Vec<[usize; 2]>,
        faces: Vec<Vec<usize>>,
        cells: Vec<Vec<usize>>,
        edge_length_nominal: f64,
    ) -> Self {
        Polychoron {
            vertices,
            edges,
            faces,
            cells,
            edge_length_nominal,
        }
    }

    /// The regular 5-cell with edge length `a`, centred on the origin.
    ///
    /// Built by the dimensional cascade: a segment on the x axis, lifted to
    /// an equilateral triangle (`y0 = a/√3`), a regular tetrahedron
    /// (`z0 = √(3/8)·a`) and finally the 5-cell (`w0 = √(2/5)·a`), each step
    /// shifting the previous simplex down the new axis so the centroid stays
    /// at the origin. Vertex `i` is `P_i`; `P_4` sits on the positive w axis.
    pub fn regular_pentachoron(a: f64) -> Result<Self, PolytopeError> {
        if !(a.is_finite() && a > 0.0) {
            return Err(PolytopeError::InvalidEdgeLength(a));
        }
        let s3 = 3f64.sqrt();
        let s6 = 6f64.sqrt();
        let s10 = 10f64.sqrt();
        let below = -a / (2.0 * s10);
        let vertices = vec![
            Point4::new(-a / 2.0, -a / (2.0 * s3), -a / (2.0 * s6), below),
            Point4::new(a / 2.0, -a / (2.0 * s3), -a / (2.0 * s6), below),
            Point4::new(0.0, a / s3, -a / (2.0 * s6), below),
            Point4::new(0.0, 0.0, a * s3 / (2.0 * 2f64.sqrt()), below),
            Point4::new(0.0, 0.0, 0.0, 2.0 * a / s10),
        ];

        // Every k-subset of the five vertices is a (k-1)-simplex of the 5-cell.
        let n = vertices.len();
        let mut edges = Vec::new();
        let mut faces = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push([i, j]);
                for k in j + 1..n {
                    faces.push(vec![i, j, k]);
                }
            }
        }
        let cells = (0..n)
            .rev()
            .map(|missing| {
                faces
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| !f.contains(&missing))
                    .map(|(idx, _)| idx)
                    .collect()
            })
            .collect();

        Ok(Polychoron {
            vertices,
            edges,
            faces,
            cells,
            edge_length_nominal: a,
        })
    }

    pub fn vertices(&self) -> &[Point4] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn edge_length_nominal(&self) -> f64 {
        self.edge_length_nominal
    }

    /// Lookup from unordered vertex pair to edge index.
    pub fn edge_lookup(&self) -> HashMap<(usize, usize), usize> {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, &[a, b])| (edge_key(a, b), i))
            .collect()
    }

    /// Edge indices around a face, in loop order (`None` for a missing side).
    pub fn face_edges(&self, face: usize, lookup: &HashMap<(usize, usize), usize>) -> Vec<Option<usize>> {
        let lp = &self.faces[face];
        (0..lp.len())
            .map(|i| lookup.get(&edge_key(lp[i], lp[(i + 1) % lp.len()])).copied())
            .collect()
    }

    /// Same incidence, vertices mapped through `r`.
    pub fn transform(&self, r: &Rotation4) -> Polychoron {
        Polychoron {
            vertices: self.vertices.iter().map(|&v| r.apply(v)).collect(),
            ..self.clone()
        }
    }

    pub fn geometry_report(&self) -> GeometryReport {
        let edge_lengths = self
            .edges
            .iter()
            .map(|&[a, b]| self.vertices[a].distance(self.vertices[b]))
            .collect();
        let n = self.vertices.len().max(1) as f64;
        let centroid = self.vertices.iter().fold(Point4::ORIGIN, |acc, &v| acc + v) * (1.0 / n);
        let circumradius = self
            .vertices
            .iter()
            .map(|v| v.distance(centroid))
            .fold(0.0, f64::max);
        GeometryReport {
            edge_lengths,
            centroid,
            circumradius,
        }
    }

    /// Every broken invariant, in a stable order. Empty for a valid polychoron.
    pub fn validate_incidence(&self) -> Vec<IncidenceViolation> {
        use IncidenceViolation::*;
        let mut out = Vec::new();
        let nv = self.vertices.len();

        for (vertex, v) in self.vertices.iter().enumerate() {
            if !v.is_finite() {
                out.push(NonFiniteVertex { vertex });
            }
        }

        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for (edge, &[a, b]) in self.edges.iter().enumerate() {
            let mut ok = true;
            for vertex in [a, b] {
                if vertex >= nv {
                    out.push(EdgeVertexOutOfRange { edge, vertex });
                    ok = false;
                }
            }
            if a == b {
                out.push(DegenerateEdge { edge });
                ok = false;
            }
            if ok {
                if let Some(&first) = seen.get(&edge_key(a, b)) {
                    out.push(DuplicateEdge { edge, first });
                } else {
                    seen.insert(edge_key(a, b), edge);
                }
            }
        }

        for (face, lp) in self.faces.iter().enumerate() {
            if lp.len() < 3 {
                out.push(FaceTooSmall { face, len: lp.len() });
            }
            for &vertex in lp {
                if vertex >= nv {
                    out.push(FaceVertexOutOfRange { face, vertex });
                }
            }
            for i in 0..lp.len() {
                let (from, to) = (lp[i], lp[(i + 1) % lp.len()]);
                if from < nv && to < nv && !seen.contains_key(&edge_key(from, to)) {
                    out.push(FaceEdgeMissing { face, from, to });
                }
            }
        }

        for (cell, cell_faces) in self.cells.iter().enumerate() {
            let mut sides: HashMap<(usize, usize), usize> = HashMap::new();
            for &face in cell_faces {
                let Some(lp) = self.faces.get(face) else {
                    out.push(CellFaceOutOfRange { cell, face });
                    continue;
                };
                for i in 0..lp.len() {
                    *sides.entry(edge_key(lp[i], lp[(i + 1) % lp.len()])).or_default() += 1;
                }
            }
            let mut open: Vec<_> = sides.into_iter().filter(|&(_, count)| count != 2).collect();
            open.sort_unstable();
            for ((from, to), faces) in open {
                out.push(CellNotClosed {
                    cell,
                    from,
                    to,
                    faces,
                });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation::{Angle, DoublePlaneId, PlaneId};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn rel_eq(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs()
    }

    #[test]
    fn rejects_bad_edge_lengths() {
        for a in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(Polychoron::regular_pentachoron(a).is_err(), "{a}");
        }
    }

    #[test]
    fn vertex_coordinates_for_edge_two() {
        let p = Polychoron::regular_pentachoron(2.0).unwrap();
        let v = p.vertices();
        assert_eq!(v[4], Point4::new(0.0, 0.0, 0.0, 4.0 / 10f64.sqrt()));
        assert!((v[4].w - 1.264911).abs() < 1e-6);
        let expected = Point4::new(-1.0, -1.0 / 3f64.sqrt(), -1.0 / 6f64.sqrt(), -1.0 / 10f64.sqrt());
        assert!(v[0].distance(expected) < 1e-15);
    }

    #[test]
    fn cascade_constants() {
        let a = 3.0;
        let p = Polychoron::regular_pentachoron(a).unwrap();
        let v = p.vertices();
        let y0 = a / 3f64.sqrt();
        let z0 = (3.0f64 / 8.0).sqrt() * a;
        let w0 = (2.0f64 / 5.0).sqrt() * a;
        assert!(rel_eq(v[2].y, y0, 1e-15));
        assert!(rel_eq(v[3].z, z0, 1e-15));
        assert!(rel_eq(v[4].w, w0, 1e-15));
        assert!(v[..2].iter().all(|p| rel_eq(p.y, -y0 / 2.0, 1e-15)));
        assert!(v[..3].iter().all(|p| rel_eq(p.z, -z0 / 3.0, 1e-15)));
        assert!(v[..4].iter().all(|p| rel_eq(p.w, -w0 / 4.0, 1e-15)));
    }

    #[test]
    fn counts_and_validity() {
        let p = Polychoron::regular_pentachoron(1.0).unwrap();
        assert_eq!(
            (
                p.vertices().len(),
                p.edges().len(),
                p.faces().len(),
                p.cells().len()
            ),
            (5, 10, 10, 5)
        );
        assert!(p.faces().iter().all(|f| f.len() == 3));
        assert!(p.cells().iter().all(|c| c.len() == 4));
        assert_eq!(p.validate_incidence(), vec![]);
    }

    #[test]
    fn equilateral_centred_cospherical() {
        for a in [0.5, 1.0, 2.0, 10.0] {
            let p = Polychoron::regular_pentachoron(a).unwrap();
            let report = p.geometry_report();
            assert!(report.edge_lengths.iter().all(|&l| rel_eq(l, a, 1e-12)));
            assert!(report.centroid.norm() < 1e-12 * a);
            assert!(rel_eq(report.circumradius, (0.4f64).sqrt() * a, 1e-12));
            for v in p.vertices() {
                assert!(rel_eq(v.norm(), (0.4f64).sqrt() * a, 1e-12));
            }
        }
    }

    #[test]
    fn missing_edge_is_reported() {
        let p = Polychoron::regular_pentachoron(1.0).unwrap();
        let mut edges = p.edges().to_vec();
        let removed = edges.remove(0);
        let broken = Polychoron::from_parts(
            p.vertices().to_vec(),
            edges,
            p.faces().to_vec(),
            p.cells().to_vec(),
            1.0,
        );
        let violations = broken.validate_incidence();
        assert!(!violations.is_empty());
        assert!(violations.iter().all(|v| matches!(
            v,
            IncidenceViolation::FaceEdgeMissing { from, to, .. } if edge_key(*from, *to) == (removed[0], removed[1])
        )));
        // Edge 0-1 borders faces 012, 013, 014.
        assert_eq!(violations.len(), 3);
    }

    #[test]
    fn duplicate_edge_is_reported() {
        let p = Polychoron::regular_pentachoron(1.0).unwrap();
        let mut edges = p.edges().to_vec();
        edges.push([3, 2]);
        let broken = Polychoron::from_parts(
            p.vertices().to_vec(),
            edges,
            p.faces().to_vec(),
            p.cells().to_vec(),
            1.0,
        );
        let violations = broken.validate_incidence();
        let first = p.edges().iter().position(|&e| e == [2, 3]).unwrap();
        assert_eq!(
            violations,
            vec![IncidenceViolation::DuplicateEdge { edge: 10, first }]
        );
        assert!(violations[0].to_string().contains("duplicates"));
    }

    #[test]
    fn open_cell_and_bad_indices_are_reported() {
        let p = Polychoron::regular_pentachoron(1.0).unwrap();
        let mut cells = p.cells().to_vec();
        cells[0].pop();
        cells[1].push(99);
        let mut faces = p.faces().to_vec();
        faces.push(vec![0, 7]);
        let broken = Polychoron::from_parts(p.vertices().to_vec(), p.edges().to_vec(), faces, cells, 1.0);
        let v = broken.validate_incidence();
        assert!(v.contains(&IncidenceViolation::FaceTooSmall { face: 10, len: 2 }));
        assert!(v.contains(&IncidenceViolation::FaceVertexOutOfRange { face: 10, vertex: 7 }));
        assert!(v.contains(&IncidenceViolation::CellFaceOutOfRange { cell: 1, face: 99 }));
        assert_eq!(
            v.iter()
                .filter(|x| matches!(
                    x,
                    IncidenceViolation::CellNotClosed {
                        cell: 0,
                        faces: 1,
                        ..
                    }
                ))
                .count(),
            3
        );
    }

    #[test]
    fn identity_transform_is_bit_identical() {
        let p = Polychoron::regular_pentachoron(2.0).unwrap();
        assert_eq!(p.transform(&Rotation4::IDENTITY), p);
    }

    #[test]
    fn thirty_two_xw_steps_restore_vertices() {
        let p = Polychoron::regular_pentachoron(2.0).unwrap();
        let step = Rotation4::simple(PlaneId::Xw, Angle::new(PI / 16.0).unwrap());
        let q = (0..32).fold(p.clone(), |acc, _| acc.transform(&step));
        for (a, b) in q.vertices().iter().zip(p.vertices()) {
            assert!(a.distance(*b) < 1e-9);
        }
        assert_eq!(q.edges(), p.edges());
        assert_eq!(q.cells(), p.cells());
    }

    #[test]
    fn json_shape() {
        let p = Polychoron::regular_pentachoron(2.0).unwrap();
        let value = serde_json::to_value(&p).unwrap();
        assert_eq!(value["vertices"][4].as_array().unwrap().len(), 4);
        assert_eq!(value["edges"][0], serde_json::json!([0, 1]));
        assert_eq!(value["faces"][0], serde_json::json!([0, 1, 2]));
        assert_eq!(value["cells"].as_array().unwrap().len(), 5);
        let back: Polychoron = serde_json::from_value(value).unwrap();
        assert_eq!(back, p);
    }

    proptest! {
        #[test]
        fn transform_is_an_isometry(
            a in 0.1..20.0f64,
            angles in prop::array::uniform3(-PI..PI),
            plane in prop::sample::select(PlaneId::ALL.to_vec()),
        ) {
            let p = Polychoron::regular_pentachoron(a).unwrap();
            let r = Rotation4::double(DoublePlaneId::XzYw, Angle::new(angles[0]).unwrap(), Angle::new(angles[1]).unwrap())
                .compose(&Rotation4::simple(plane, Angle::new(angles[2]).unwrap()));
            let before = p.geometry_report();
            let moved = p.transform(&r);
            let after = moved.geometry_report();
            for (x, y) in after.edge_lengths.iter().zip(&before.edge_lengths) {
                prop_assert!(rel_eq(*x, *y, 1e-12));
            }
            prop_assert!(after.centroid.norm() < 1e-12 * a);
            prop_assert!(rel_eq(after.circumradius, before.circumradius, 1e-12));
            for i in 0..5 {
                for j in i + 1..5 {
                    prop_assert!(rel_eq(moved.vertices()[i].distance(moved.vertices()[j]), a, 1e-12));
                }
            }
        }
    }
}
