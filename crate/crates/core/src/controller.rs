//! Keyboard control of the 4-D orientation and the slicing hyperplane.
//!
//! Rotation keys are named after their plane's axis-product code (`2`, `3`,
//! `4`, `6`, `8`, `c`) or, for double rotations, after the x axis' partner
//! (`y`, `z`, `w`). Shift inverts a rotation. `k`/`j` raise and lower the
//! double-rotation angle α while `α + β = θ₀` holds; `l`/`h` move the
//! hyperplane `w = c0`.
//!
//! Rotations are extrinsic: each step multiplies the accumulated orientation
//! from the left, so the world frame and the hyperplane stay fixed while the
//! object turns.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polytope::{Polychoron, PolytopeError};
use crate::rotation::{Angle, DoublePlaneId, PlaneId, Rotation4};
use crate::slicer::{self, Hyperplane, SliceError, SliceMesh, DEFAULT_RELATIVE_EPSILON};

/// Offset added to `c0`, relative to the edge length, when the hyperplane
/// touches a vertex.
pub const DEGENERACY_NUDGE: f64 = 1e-7;

/// Largest repeat count accepted in a script token.
pub const MAX_REPEAT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ControllerError {
    #[error("unknown key {0:?}")]
    UnknownKey(char),
    #[error("parameter {name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("script token {index} ({token:?}): {reason}")]
pub struct ParseError {
    pub index: usize,
    pub token: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("event {index}: {source}")]
pub struct ReplayError {
    pub index: usize,
    pub source: ControllerError,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Key {
    Simple(PlaneId),
    Double(DoublePlaneId),
    /// `k`
    IncreaseAlpha,
    /// `j`
    DecreaseAlpha,
    /// `l`
    IncreaseC0,
    /// `h`
    DecreaseC0,
}

impl Key {
    pub const ALL: [Key; 13] = [
        Key::Simple(PlaneId::Xy),
        Key::Simple(PlaneId::Xz),
        Key::Simple(PlaneId::Xw),
        Key::Simple(PlaneId::Yz),
        Key::Simple(PlaneId::Yw),
        Key::Simple(PlaneId::Zw),
        Key::Double(DoublePlaneId::XyZw),
        Key::Double(DoublePlaneId::XzYw),
        Key::Double(DoublePlaneId::XwYz),
        Key::IncreaseAlpha,
        Key::DecreaseAlpha,
        Key::IncreaseC0,
        Key::DecreaseC0,
    ];

    pub fn from_symbol(symbol: char) -> Option<Key> {
        match symbol {
            'k' => Some(Key::IncreaseAlpha),
            'j' => Some(Key::DecreaseAlpha),
            'l' => Some(Key::IncreaseC0),
            'h' => Some(Key::DecreaseC0),
            s => PlaneId::from_key(s)
                .map(Key::Simple)
                .or_else(|| DoublePlaneId::from_key(s).map(Key::Double)),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Key::Simple(p) => p.key(),
            Key::Double(p) => p.key(),
            Key::IncreaseAlpha => 'k',
            Key::DecreaseAlpha => 'j',
            Key::IncreaseC0 => 'l',
            Key::DecreaseC0 => 'h',
        }
    }

    pub fn is_rotation(self) -> bool {
        matches!(self, Key::Simple(_) | Key::Double(_))
    }
}

/// One key press. `shifted` only matters for rotation keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KeyEvent {
    pub key: Key,
    pub shifted: bool,
}

impl KeyEvent {
    pub fn new(symbol: char, shifted: bool) -> Result<Self, ControllerError> {
        Key::from_symbol(symbol)
            .map(|key| KeyEvent { key, shifted })
            .ok_or(ControllerError::UnknownKey(symbol))
    }

    pub fn plain(key: Key) -> Self {
        KeyEvent { key, shifted: false }
    }

    pub fn shifted(key: Key) -> Self {
        KeyEvent { key, shifted: true }
    }

    pub fn symbol(self) -> char {
        self.key.symbol()
    }
}

/// Renders in script syntax: `4`, `S4`, `z`, `Z`.
impl fmt::Display for KeyEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.symbol();
        match (self.shifted && self.key.is_rotation(), s.is_ascii_digit()) {
            (false, _) => write!(f, "{s}"),
            (true, true) => write!(f, "S{s}"),
            (true, false) => write!(f, "{}", s.to_ascii_uppercase()),
        }
    }
}

/// Parameters for a fresh session. Unset fields take defaults derived from
/// `theta0` and `edge_length`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SessionConfig {
    pub edge_length: f64,
    pub theta0: f64,
    pub alpha: Option<f64>,
    pub c0: f64,
    pub step_alpha: Option<f64>,
    pub step_c0: Option<f64>,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            edge_length: 2.0,
            theta0: PI / 16.0,
            alpha: None,
            c0: 0.0,
            step_alpha: None,
            step_c0: None,
        }
    }
}

impl SessionConfig {
    pub fn alpha(&self) -> f64 {
        self.alpha.unwrap_or(self.theta0 / 2.0)
    }

    pub fn step_alpha(&self) -> f64 {
        self.step_alpha.unwrap_or(self.theta0 / 16.0)
    }

    pub fn step_c0(&self) -> f64 {
        self.step_c0.unwrap_or(0.05 * self.edge_length)
    }
}

/// Live session: orientation, angles, hyperplane offset and the untouched
/// base polytope. Values are immutable; every key press yields a new state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionState {
    orientation: Rotation4,
    theta0: Angle,
    alpha: Angle,
    c0: f64,
    step_alpha: Angle,
    step_c0: f64,
    base: Arc<Polychoron>,
}

/// Session parameters settable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Param {
    Theta0,
    Alpha,
    C0,
    StepAlpha,
    StepC0,
}

fn finite(name: &'static str, value: f64) -> Result<f64, ControllerError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(ControllerError::NonFinite { name, value })
    }
}

fn angle(name: &'static str, value: f64) -> Result<Angle, ControllerError> {
    finite(name, value).map(|v| Angle::new(v).expect("finite"))
}

impl SessionState {
    /// A fresh session around the regular pentachoron.
    pub fn new(config: &SessionConfig) -> Result<Self, ControllerError> {
        let base = Polychoron::regular_pentachoron(config.edge_length)?;
        Self::with_base(base, config)
    }

    pub fn with_base(base: Polychoron, config: &SessionConfig) -> Result<Self, ControllerError> {
        Ok(SessionState {
            orientation: Rotation4::IDENTITY,
            theta0: angle("theta0", config.theta0)?,
            alpha: angle("alpha", config.alpha())?,
            c0: finite("c0", config.c0)?,
            step_alpha: angle("step_alpha", config.step_alpha())?,
            step_c0: finite("step_c0", config.step_c0())?,
            base: Arc::new(base),
        })
    }

    pub fn orientation(&self) -> &Rotation4 {
        &self.orientation
    }

    pub fn theta0(&self) -> Angle {
        self.theta0
    }

    pub fn alpha(&self) -> Angle {
        self.alpha
    }

    /// `θ₀ − α`, derived on every read.
    pub fn beta(&self) -> Angle {
        Angle::new(self.theta0.radians() - self.alpha.radians()).expect("difference of finite angles")
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn step_alpha(&self) -> Angle {
        self.step_alpha
    }

    pub fn step_c0(&self) -> f64 {
        self.step_c0
    }

    pub fn base(&self) -> &Polychoron {
        &self.base
    }

    pub fn param(&self, param: Param) -> f64 {
        match param {
            Param::Theta0 => self.theta0.radians(),
            Param::Alpha => self.alpha.radians(),
            Param::C0 => self.c0,
            Param::StepAlpha => self.step_alpha.radians(),
            Param::StepC0 => self.step_c0,
        }
    }

    pub fn with_param(&self, param: Param, value: f64) -> Result<SessionState, ControllerError> {
        let mut next = self.clone();
        match param {
            Param::Theta0 => next.theta0 = angle("theta0", value)?,
            Param::Alpha => next.alpha = angle("alpha", value)?,
            Param::C0 => next.c0 = finite("c0", value)?,
            Param::StepAlpha => next.step_alpha = angle("step_alpha", value)?,
            Param::StepC0 => next.step_c0 = finite("step_c0", value)?,
        }
        Ok(next)
    }

    /// The rotation a rotation key applies in this state, if any.
    pub fn key_rotation(&self, event: KeyEvent) -> Option<Rotation4> {
        let sign = |a: Angle| if event.shifted { -a } else { a };
        match event.key {
            Key::Simple(plane) => Some(Rotation4::simple(plane, sign(self.theta0))),
            Key::Double(pair) => Some(Rotation4::double(pair, sign(self.alpha), sign(self.beta()))),
            _ => None,
        }
    }

    pub fn handle_key(&self, event: KeyEvent) -> Result<SessionState, ControllerError> {
        if let Some(step) = self.key_rotation(event) {
            let mut next = self.clone();
            next.orientation = step.compose(&self.orientation);
            return Ok(next);
        }
        let alpha = self.alpha.radians();
        match event.key {
            Key::IncreaseAlpha => self.with_param(Param::Alpha, alpha + self.step_alpha.radians()),
            Key::DecreaseAlpha => self.with_param(Param::Alpha, alpha - self.step_alpha.radians()),
            Key::IncreaseC0 => self.with_param(Param::C0, self.c0 + self.step_c0),
            Key::DecreaseC0 => self.with_param(Param::C0, self.c0 - self.step_c0),
            Key::Simple(_) | Key::Double(_) => unreachable!("rotation keys handled above"),
        }
    }

    /// The base polytope in its current orientation.
    pub fn oriented(&self) -> Polychoron {
        self.base.transform(&self.orientation)
    }

    /// Slice of the oriented polytope at `w = c0`.
    ///
    /// If the hyperplane touches a vertex the slice is retaken once at
    /// `c0 + 1e-7·a`; the stored `c0` is left alone.
    pub fn current_slice(&self) -> Result<SliceMesh, SliceError> {
        let a = self.base.edge_length_nominal();
        let eps = DEFAULT_RELATIVE_EPSILON * a;
        let oriented = self.oriented();
        match slicer::slice(&oriented, Hyperplane::new(self.c0)?, eps) {
            Err(SliceError::DegenerateSlice { .. }) => {
                slicer::slice(&oriented, Hyperplane::new(self.c0 + DEGENERACY_NUDGE * a)?, eps)
            }
            other => other,
        }
    }
}

/// Parses a whitespace-separated key script.
///
/// A token is a key symbol with an optional `*N` repeat (`N ≥ 1`). An
/// uppercase letter or an `S` prefix marks the key as shifted: `C`, `S4`.
pub fn parse_script(text: &str) -> Result<Vec<KeyEvent>, ParseError> {
    let mut events = Vec::new();
    for (index, token) in text.split_whitespace().enumerate() {
        let fail = |reason: String| ParseError {
            index,
            token: token.to_string(),
            reason,
        };
        let (head, count) = match token.split_once('*') {
            Some((head, n)) => {
                let count: usize = n.parse().map_err(|_| fail(format!("bad repeat count {n:?}")))?;
                if count == 0 || count > MAX_REPEAT {
                    return Err(fail(format!("repeat count must be in 1..={MAX_REPEAT}")));
                }
                (head, count)
            }
            None => (token, 1),
        };
        let (shift_prefix, body) = match head.strip_prefix('S') {
            Some(rest) if !rest.is_empty() => (true, rest),
            _ => (false, head),
        };
        let mut chars = body.chars();
        let (Some(c), None) = (chars.next(), chars.next()) else {
            return Err(fail("expected a single key symbol".into()));
        };
        let shifted = shift_prefix || c.is_ascii_uppercase();
        let event = KeyEvent::new(c.to_ascii_lowercase(), shifted).map_err(|e| fail(e.to_string()))?;
        events.extend(std::iter::repeat_n(event, count));
    }
    Ok(events)
}

/// Applies `events` in order and returns every resulting state.
pub fn replay(start: &SessionState, events: &[KeyEvent]) -> Result<Vec<SessionState>, ReplayError> {
    let mut states: Vec<SessionState> = Vec::with_capacity(events.len());
    for (index, &event) in events.iter().enumerate() {
        let current = states.last().unwrap_or(start);
        let next = current
            .handle_key(event)
            .map_err(|source| ReplayError { index, source })?;
        states.push(next);
    }
    Ok(states)
}
