//! Rotations of 4-D space.
//!
//! A [`Rotation4`] is a dense 4×4 special-orthogonal matrix acting on column
//! vectors `(x, y, z, w)`. Simple rotations turn one coordinate plane and fix
//! the absolutely perpendicular plane pointwise; double rotations turn both
//! planes of a perpendicular pair at once with independent angles.
//!
//! Axes are numbered `x → 1, y → 2, z → 3, w → 4`. A plane's code is the
//! product of its two axis numbers, written as a single hexadecimal digit,
//! which is also the keyboard key that invokes it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance on `‖mᵀm − I‖_F` accepted for a valid rotation.
pub const ORTHONORMAL_TOLERANCE: f64 = 1e-9;

/// Orthogonality drift above which [`Rotation4::compose`] renormalizes.
pub const RENORMALIZE_THRESHOLD: f64 = 1e-12;

/// Row norm below which Gram–Schmidt gives up.
const DEGENERATE_ROW_NORM: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum RotationError {
    #[error("angle must be finite, got {0}")]
    NonFiniteAngle(f64),
    #[error("matrix is degenerate: row {row} collapsed to norm {norm:e} during orthonormalization")]
    DegenerateMatrix { row: usize, norm: f64 },
    #[error("matrix is not orthonormal: ‖mᵀm − I‖_F = {error:e}")]
    NotOrthonormal { error: f64 },
    #[error("matrix is not a proper rotation: det = {det}")]
    Improper { det: f64 },
}

/// A finite rotation angle in radians.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    pub fn new(radians: f64) -> Result<Self, RotationError> {
        if radians.is_finite() {
            Ok(Angle(radians))
        } else {
            Err(RotationError::NonFiniteAngle(radians))
        }
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Angle {
    type Error = RotationError;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        Angle::new(value)
    }
}

impl From<Angle> for f64 {
    fn from(angle: Angle) -> f64 {
        angle.0
    }
}

impl Neg for Angle {
    type Output = Angle;

    fn neg(self) -> Angle {
        Angle(-self.0)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} rad", self.0)
    }
}

/// One of the six coordinate planes of 4-D space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PlaneId {
    Xy,
    Xz,
    Xw,
    Yz,
    Yw,
    Zw,
}

impl PlaneId {
    pub const ALL: [PlaneId; 6] = [
        PlaneId::Xy,
        PlaneId::Xz,
        PlaneId::Xw,
        PlaneId::Yz,
        PlaneId::Yw,
        PlaneId::Zw,
    ];

    /// Zero-based axis indices, first-listed axis first.
    pub fn axes(self) -> (usize, usize) {
        match self {
            PlaneId::Xy => (0, 1),
            PlaneId::Xz => (0, 2),
            PlaneId::Xw => (0, 3),
            PlaneId::Yz => (1, 2),
            PlaneId::Yw => (1, 3),
            PlaneId::Zw => (2, 3),
        }
    }

    /// Product of the one-based axis numbers: 2, 3, 4, 6, 8 or 12.
    pub fn code(self) -> u8 {
        let (i, j) = self.axes();
        ((i + 1) * (j + 1)) as u8
    }

    /// The code as a lowercase hexadecimal digit.
    pub fn key(self) -> char {
        char::from_digit(u32::from(self.code()), 16).expect("plane codes are single hex digits")
    }

    pub fn from_key(key: char) -> Option<PlaneId> {
        PlaneId::ALL.into_iter().find(|p| p.key() == key)
    }
}

/// A pair of absolutely perpendicular coordinate planes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DoublePlaneId {
    XyZw,
    XzYw,
    XwYz,
}

impl DoublePlaneId {
    pub const ALL: [DoublePlaneId; 3] = [DoublePlaneId::XyZw, DoublePlaneId::XzYw, DoublePlaneId::XwYz];

    /// The plane containing the x axis, then its perpendicular partner.
    pub fn planes(self) -> (PlaneId, PlaneId) {
        match self {
            DoublePlaneId::XyZw => (PlaneId::Xy, PlaneId::Zw),
            DoublePlaneId::XzYw => (PlaneId::Xz, PlaneId::Yw),
            DoublePlaneId::XwYz => (PlaneId::Xw, PlaneId::Yz),
        }
    }

    /// Named after the x axis' partner in the first plane.
    pub fn key(self) -> char {
        match self {
            DoublePlaneId::XyZw => 'y',
            DoublePlaneId::XzYw => 'z',
            DoublePlaneId::XwYz => 'w',
        }
    }

    pub fn from_key(key: char) -> Option<DoublePlaneId> {
        DoublePlaneId::ALL.into_iter().find(|p| p.key() == key)
    }
}

/// A point of 4-D space. Serialized as `[x, y, z, w]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Point4 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub w: f64,
}

impl Point4 {
    pub const ORIGIN: Point4 = Point4::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64, w: f64) -> Self {
        Point4 { x, y, z, w }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.x, self.y, self.z, self.w]
    }

    pub fn dot(self, other: Point4) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z + self.w * other.w
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(self, other: Point4) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }
}

impl From<[f64; 4]> for Point4 {
    fn from([x, y, z, w]: [f64; 4]) -> Self {
        Point4 { x, y, z, w }
    }
}

impl From<Point4> for [f64; 4] {
    fn from(p: Point4) -> Self {
        p.to_array()
    }
}

impl Add for Point4 {
    type Output = Point4;

    fn add(self, o: Point4) -> Point4 {
        Point4::new(self.x + o.x, self.y + o.y, self.z + o.z, self.w + o.w)
    }
}

impl Sub for Point4 {
    type Output = Point4;

    fn sub(self, o: Point4) -> Point4 {
        Point4::new(self.x - o.x, self.y - o.y, self.z - o.z, self.w - o.w)
    }
}

impl Mul<f64> for Point4 {
    type Output = Point4;

    fn mul(self, s: f64) -> Point4 {
        Point4::new(self.x * s, self.y * s, self.z * s, self.w * s)
    }
}

type Matrix4 = [[f64; 4]; 4];

const IDENTITY: Matrix4 = [
    [1.0, 0.0, 0.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
];

/// An element of SO(4), stored as a row-major 4×4 matrix in x-y-z-w order.
///
/// Every value of this type satisfies `‖mᵀm − I‖_F ≤ 1e-9` and
/// `|det m − 1| ≤ 1e-9`. No angles are retained: after composition the
/// matrix is the whole state.
///
/// Serialized as 16 numbers in row-major order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 16]", into = "[f64; 16]")]
pub struct Rotation4 {
    m: Matrix4,
}

impl Default for Rotation4 {
    fn default() -> Self {
        Rotation4::IDENTITY
    }
}

impl Rotation4 {
    pub const IDENTITY: Rotation4 = Rotation4 { m: IDENTITY };

    /// Rotation by `theta` in `plane`.
    ///
    /// The identity with the block `[cos θ, −sin θ; sin θ, cos θ]` on the
    /// plane's two axes; the first-listed axis gets the `cos, −sin` row, so
    /// a positive angle carries the first axis towards the second.
    pub fn simple(plane: PlaneId, theta: Angle) -> Self {
        let mut m = IDENTITY;
        write_block(&mut m, plane, theta);
        Rotation4 { m }
    }

    /// Rotation by `alpha` in the first plane of `pair` and `beta` in the
    /// second. Equal to the product of the two simple rotations, which
    /// commute.
    pub fn double(pair: DoublePlaneId, alpha: Angle, beta: Angle) -> Self {
        let (first, second) = pair.planes();
        let mut m = IDENTITY;
        write_block(&mut m, first, alpha);
        write_block(&mut m, second, beta);
        Rotation4 { m }
    }

    /// Checks the SO(4) invariants on an arbitrary matrix.
    pub fn from_matrix(m: [[f64; 4]; 4]) -> Result<Self, RotationError> {
        let candidate = Rotation4 { m };
        let error = candidate.orthogonality_error();
        if error.is_nan() || error > ORTHONORMAL_TOLERANCE {
            return Err(RotationError::NotOrthonormal { error });
        }
        let det = candidate.determinant();
        if det.is_nan() || (det - 1.0).abs() > ORTHONORMAL_TOLERANCE {
            return Err(RotationError::Improper { det });
        }
        Ok(candidate)
    }

    pub fn from_row_major(values: [f64; 16]) -> Result<Self, RotationError> {
        let mut m = [[0.0; 4]; 4];
        for (i, v) in values.into_iter().enumerate() {
            m[i / 4][i % 4] = v;
        }
        Rotation4::from_matrix(m)
    }

    pub fn to_row_major(&self) -> [f64; 16] {
        let mut out = [0.0; 16];
        for (i, v) in out.iter_mut().enumerate() {
            *v = self.m[i / 4][i % 4];
        }
        out
    }

    pub fn matrix(&self) -> &[[f64; 4]; 4] {
        &self.m
    }

    /// Matrix product `self · other`.
    ///
    /// Applying the result to a point applies `other` first. With the world
    /// frame fixed, a new step `R` lands on orientation `Q` as
    /// `R.compose(&Q)`. The product is renormalized only once its
    /// orthogonality drift exceeds [`RENORMALIZE_THRESHOLD`].
    pub fn compose(&self, other: &Rotation4) -> Rotation4 {
        let product = Rotation4 {
            m: mat_mul(&self.m, &other.m),
        };
        if product.orthogonality_error() > RENORMALIZE_THRESHOLD {
            product
                .renormalize()
                .expect("product of two rotations stays near-orthogonal")
        } else {
            product
        }
    }

    /// The transpose.
    pub fn inverse(&self) -> Rotation4 {
        let mut t = [[0.0; 4]; 4];
        for (i, row) in self.m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t[j][i] = *v;
            }
        }
        Rotation4 { m: t }
    }

    pub fn apply(&self, p: Point4) -> Point4 {
        let v = p.to_array();
        let row = |r: &[f64; 4]| r[0] * v[0] + r[1] * v[1] + r[2] * v[2] + r[3] * v[3];
        Point4::new(row(&self.m[0]), row(&self.m[1]), row(&self.m[2]), row(&self.m[3]))
    }

    /// Nearest orthonormal frame by modified Gram–Schmidt over the rows,
    /// in order. Expects a nearly orthogonal input (`‖mᵀm − I‖_F ≤ 1e-3`).
    pub fn renormalize(&self) -> Result<Rotation4, RotationError> {
        let mut rows = self.m;
        for i in 0..4 {
            for j in 0..i {
                let projection = dot4(&rows[i], &rows[j]);
                let basis = rows[j];
                for (v, b) in rows[i].iter_mut().zip(basis) {
                    *v -= projection * b;
                }
            }
            let norm = dot4(&rows[i], &rows[i]).sqrt();
            if norm.is_nan() || norm < DEGENERATE_ROW_NORM {
                return Err(RotationError::DegenerateMatrix { row: i, norm });
            }
            for v in rows[i].iter_mut() {
                *v /= norm;
            }
        }
        let result = Rotation4 { m: rows };
        let det = result.determinant();
        if det < 0.0 {
            return Err(RotationError::Improper { det });
        }
        Ok(result)
    }

    pub fn frobenius_distance(&self, other: &Rotation4) -> f64 {
        frobenius_distance(&self.m, &other.m)
    }

    /// `‖mᵀm − I‖_F`.
    pub fn orthogonality_error(&self) -> f64 {
        let gram = mat_mul(&self.inverse().m, &self.m);
        frobenius_distance(&gram, &IDENTITY)
    }

    pub fn determinant(&self) -> f64 {
        determinant(&self.m)
    }
}

impl TryFrom<[f64; 16]> for Rotation4 {
    type Error = RotationError;

    fn try_from(values: [f64; 16]) -> Result<Self, Self::Error> {
        Rotation4::from_row_major(values)
    }
}

impl From<Rotation4> for [f64; 16] {
    fn from(r: Rotation4) -> Self {
        r.to_row_major()
    }
}

fn write_block(m: &mut Matrix4, plane: PlaneId, theta: Angle) {
    let (i, j) = plane.axes();
    let (sin, cos) = theta.radians().sin_cos();
    m[i][i] = cos;
    m[i][j] = -sin;
    m[j][i] = sin;
    m[j][j] = cos;
}

fn dot4(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

fn mat_mul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    let mut out = [[0.0; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j] + a[i][3] * b[3][j];
        }
    }
    out
}

fn frobenius_distance(a: &Matrix4, b: &Matrix4) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

// Laplace expansion over complementary 2×2 minors of the top and bottom rows.
fn determinant(m: &Matrix4) -> f64 {
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    let s0 = minor(0, 1, 0, 1);
    let s1 = minor(0, 1, 0, 2);
    let s2 = minor(0, 1, 0, 3);
    let s3 = minor(0, 1, 1, 2);
    let s4 = minor(0, 1, 1, 3);
    let s5 = minor(0, 1, 2, 3);
    let c5 = minor(2, 3, 2, 3);
    let c4 = minor(2, 3, 1, 3);
    let c3 = minor(2, 3, 1, 2);
    let c2 = minor(2, 3, 0, 3);
    let c1 = minor(2, 3, 0, 2);
    let c0 = minor(2, 3, 0, 1);
    s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    fn rad(v: f64) -> Angle {
        Angle::new(v).unwrap()
    }

    fn naive_product(a: &Rotation4, b: &Rotation4) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..4).map(|k| a.matrix()[i][k] * b.matrix()[k][j]).sum();
            }
        }
        out
    }

    #[test]
    fn plane_codes_match_axis_products() {
        let codes: Vec<u8> = PlaneId::ALL.iter().map(|p| p.code()).collect();
        assert_eq!(codes, vec![2, 3, 4, 6, 8, 12]);
        let keys: String = PlaneId::ALL.iter().map(|p| p.key()).collect();
        assert_eq!(keys, "23468c");
        for p in PlaneId::ALL {
            assert_eq!(PlaneId::from_key(p.key()), Some(p));
        }
        assert_eq!(PlaneId::from_key('5'), None);
    }

    #[test]
    fn double_planes_partition_the_axes() {
        for pair in DoublePlaneId::ALL {
            let (a, b) = pair.planes();
            let mut axes = [a.axes().0, a.axes().1, b.axes().0, b.axes().1];
            axes.sort_unstable();
            assert_eq!(axes, [0, 1, 2, 3], "{pair:?}");
            assert_eq!(DoublePlaneId::from_key(pair.key()), Some(pair));
        }
    }

    #[test]
    fn non_finite_angles_are_rejected() {
        assert!(Angle::new(f64::NAN).is_err());
        assert!(Angle::new(f64::INFINITY).is_err());
        assert!(serde_json::from_str::<Angle>("1e999").is_err());
    }

    #[test]
    fn zero_angle_is_identity() {
        assert_eq!(Rotation4::simple(PlaneId::Xy, Angle::ZERO), Rotation4::IDENTITY);
    }

    #[test]
    fn quarter_turn_carries_x_to_y() {
        let r = Rotation4::simple(PlaneId::Xy, rad(FRAC_PI_2));
        let p = r.apply(Point4::new(1.0, 0.0, 0.0, 0.0));
        assert!(p.distance(Point4::new(0.0, 1.0, 0.0, 0.0)) < 1e-15);
    }

    #[test]
    fn zw_block_layout() {
        let beta = 0.41;
        let m = *Rotation4::simple(PlaneId::Zw, rad(beta)).matrix();
        assert_eq!(m[0], [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(m[1], [0.0, 1.0, 0.0, 0.0]);
        assert_eq!(m[2], [0.0, 0.0, beta.cos(), -beta.sin()]);
        assert_eq!(m[3], [0.0, 0.0, beta.sin(), beta.cos()]);
    }

    #[test]
    fn double_with_zero_beta_is_simple() {
        let alpha = rad(0.77);
        assert_eq!(
            Rotation4::double(DoublePlaneId::XyZw, alpha, Angle::ZERO),
            Rotation4::simple(PlaneId::Xy, alpha)
        );
    }

    #[test]
    fn half_turn_in_zw_flips_z() {
        let r = Rotation4::double(DoublePlaneId::XyZw, rad(FRAC_PI_2), rad(PI));
        let p = r.apply(Point4::new(0.0, 0.0, 1.0, 0.0));
        assert!(p.distance(Point4::new(0.0, 0.0, -1.0, 0.0)) < 1e-15);
    }

    #[test]
    fn compose_with_identity() {
        let r = Rotation4::double(DoublePlaneId::XwYz, rad(0.2), rad(-1.3));
        assert_eq!(r.compose(&Rotation4::IDENTITY), r);
        assert_eq!(Rotation4::IDENTITY.compose(&r), r);
    }

    #[test]
    fn thirty_two_sixteenths_of_pi_is_a_full_turn() {
        let step = Rotation4::simple(PlaneId::Xw, rad(PI / 16.0));
        let mut q = Rotation4::IDENTITY;
        for _ in 0..32 {
            q = step.compose(&q);
        }
        assert!(q.frobenius_distance(&Rotation4::IDENTITY) < 1e-9);
        let xy = Rotation4::simple(PlaneId::Xy, rad(PI / 16.0));
        let q = (0..32).fold(Rotation4::IDENTITY, |q, _| xy.compose(&q));
        assert!(q.frobenius_distance(&Rotation4::IDENTITY) < 1e-9);
    }

    #[test]
    fn perpendicular_blocks_commute() {
        let a = Rotation4::simple(PlaneId::Xy, rad(0.3));
        let b = Rotation4::simple(PlaneId::Zw, rad(0.7));
        assert!(a.compose(&b).frobenius_distance(&b.compose(&a)) < 1e-12);
    }

    #[test]
    fn inverse_negates_angles() {
        assert_eq!(Rotation4::IDENTITY.inverse(), Rotation4::IDENTITY);
        let beta = rad(1.234);
        assert_eq!(
            Rotation4::simple(PlaneId::Zw, beta).inverse(),
            Rotation4::simple(PlaneId::Zw, -beta)
        );
        let (a, b) = (rad(0.5), rad(-2.1));
        let inv = Rotation4::double(DoublePlaneId::XyZw, a, b).inverse();
        assert!(inv.frobenius_distance(&Rotation4::double(DoublePlaneId::XyZw, -a, -b)) < 1e-12);
    }

    #[test]
    fn half_turn_distance_from_identity() {
        let r = Rotation4::simple(PlaneId::Xy, rad(PI));
        let d = r.frobenius_distance(&Rotation4::IDENTITY);
        assert!((d - 2.0 * SQRT_2).abs() < 1e-15, "{d}");
        assert_eq!(Rotation4::IDENTITY.frobenius_distance(&Rotation4::IDENTITY), 0.0);
    }

    #[test]
    fn renormalize_identity_and_exact_input() {
        assert_eq!(Rotation4::IDENTITY.renormalize().unwrap(), Rotation4::IDENTITY);
        let r = Rotation4::simple(PlaneId::Xy, rad(0.37));
        assert!(r.renormalize().unwrap().frobenius_distance(&r) < 1e-14);
    }

    #[test]
    fn renormalize_repairs_perturbation() {
        let mut m = IDENTITY;
        for row in m.iter_mut() {
            for v in row.iter_mut() {
                *v += 1e-6;
            }
        }
        let perturbed = Rotation4 { m };
        assert!(perturbed.orthogonality_error() > 1e-6);
        let fixed = perturbed.renormalize().unwrap();
        assert!(fixed.orthogonality_error() < 1e-12);
        assert!((fixed.determinant() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn renormalize_rejects_degenerate_rows() {
        let mut m = IDENTITY;
        m[2] = m[1];
        let err = Rotation4 { m }.renormalize().unwrap_err();
        assert!(
            matches!(err, RotationError::DegenerateMatrix { row: 2, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn from_matrix_checks_invariants() {
        let mut reflection = IDENTITY;
        reflection[3][3] = -1.0;
        assert!(matches!(
            Rotation4::from_matrix(reflection),
            Err(RotationError::Improper { .. })
        ));
        let mut sheared = IDENTITY;
        sheared[0][1] = 0.1;
        assert!(matches!(
            Rotation4::from_matrix(sheared),
            Err(RotationError::NotOrthonormal { .. })
        ));
        let mut nan = IDENTITY;
        nan[0][0] = f64::NAN;
        assert!(Rotation4::from_matrix(nan).is_err());
    }

    #[test]
    fn serializes_as_sixteen_row_major_numbers() {
        let r = Rotation4::simple(PlaneId::Xw, rad(0.25));
        let json = serde_json::to_string(&r).unwrap();
        let values: Vec<f64> = serde_json::from_str(&json).unwrap();
        assert_eq!(values.len(), 16);
        assert_eq!(values[3], -(0.25f64).sin());
        assert_eq!(values[12], (0.25f64).sin());
        let back: Rotation4 = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(serde_json::from_str::<Rotation4>("[1,0,0,0,0,1,0,0,0,0,1,0,0,0,0,-1]").is_err());
    }

    #[test]
    fn determinant_of_permutation() {
        // Swapping two axes is odd.
        let m = [
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ];
        assert_eq!(determinant(&m), -1.0);
        let scaled = [
            [2.0, 0.0, 0.0, 0.0],
            [0.0, 3.0, 0.0, 0.0],
            [0.0, 0.0, 5.0, 0.0],
            [0.0, 0.0, 1.0, 7.0],
        ];
        assert_eq!(determinant(&scaled), 210.0);
    }

    fn any_plane() -> impl Strategy<Value = PlaneId> {
        prop::sample::select(PlaneId::ALL.to_vec())
    }

    fn any_pair() -> impl Strategy<Value = DoublePlaneId> {
        prop::sample::select(DoublePlaneId::ALL.to_vec())
    }

    fn any_rotation() -> impl Strategy<Value = Rotation4> {
        prop::collection::vec((any_plane(), -PI..PI), 0..100).prop_map(|steps| {
            steps.into_iter().fold(Rotation4::IDENTITY, |q, (plane, theta)| {
                Rotation4::simple(plane, rad(theta)).compose(&q)
            })
        })
    }

    proptest! {
        #[test]
        fn constructed_rotations_are_valid(plane in any_plane(), pair in any_pair(), a in -10.0..10.0f64, b in -10.0..10.0f64) {
            for r in [Rotation4::simple(plane, rad(a)), Rotation4::double(pair, rad(a), rad(b))] {
                prop_assert!(r.orthogonality_error() <= ORTHONORMAL_TOLERANCE);
                prop_assert!((r.determinant() - 1.0).abs() <= ORTHONORMAL_TOLERANCE);
            }
        }

        #[test]
        fn double_factors_commute_and_factor(pair in any_pair(), a in -PI..PI, b in -PI..PI) {
            let (p, q) = pair.planes();
            let ra = Rotation4::simple(p, rad(a));
            let rb = Rotation4::simple(q, rad(b));
            let ab = naive_product(&ra, &rb);
            let ba = naive_product(&rb, &ra);
            prop_assert!(frobenius_distance(&ab, &ba) < 1e-12);
            let d = Rotation4::double(pair, rad(a), rad(b));
            prop_assert!(frobenius_distance(d.matrix(), &ab) < 1e-14);
        }

        #[test]
        fn n_fold_composition_is_periodic(plane in any_plane(), n in 2usize..=64) {
            let step = Rotation4::simple(plane, rad(2.0 * PI / n as f64));
            let q = (0..n).fold(Rotation4::IDENTITY, |q, _| step.compose(&q));
            prop_assert!(q.frobenius_distance(&Rotation4::IDENTITY) < 1e-9);
        }

        #[test]
        fn apply_preserves_norm(r in any_rotation(), x in -5.0..5.0f64, y in -5.0..5.0f64, z in -5.0..5.0f64, w in -5.0..5.0f64) {
            let p = Point4::new(x, y, z, w);
            let n = p.norm();
            prop_assert!((r.apply(p).norm() - n).abs() <= 1e-12 * n.max(1e-300));
        }

        #[test]
        fn compose_with_inverse_is_identity(r in any_rotation()) {
            prop_assert!(r.compose(&r.inverse()).frobenius_distance(&Rotation4::IDENTITY) < 1e-12);
            prop_assert!(r.orthogonality_error() <= ORTHONORMAL_TOLERANCE);
        }
    }
}
