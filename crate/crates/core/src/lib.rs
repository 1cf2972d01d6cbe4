//! Interactive 4-D rotation and hyperplane slicing.
//!
//! The crate is organized bottom-up:
//!
//! * [`rotation`]: SO(4) simple and double rotations as dense 4×4 matrices.
//! * [`polytope`]: incidence-complete 4-polytopes and the regular pentachoron.
//! * [`slicer`]: cross-sections by the hyperplane `w = c0` with 4-D provenance.
//! * [`controller`]: the keyboard state machine and key scripts.
//! * [`export`]: OBJ/JSON frame export and the figure replays.
//! * [`protocol`]: the length-delimited JSON session protocol and its server.

pub mod controller;
pub mod export;
pub mod polytope;
pub mod protocol;
pub mod rotation;
pub mod slicer;

pub use controller::{Key, KeyEvent, SessionConfig, SessionState};
pub use polytope::{GeometryReport, Polychoron};
pub use rotation::{Angle, DoublePlaneId, PlaneId, Point4, Rotation4};
pub use slicer::{Hyperplane, Point3, SliceMesh, VertexSign};
