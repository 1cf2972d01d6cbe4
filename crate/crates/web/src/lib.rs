//! WebAssembly bindings for the browser demo in `www/`.
//!
//! The page owns one [`Workbench`]: keyboard events become key presses,
//! the sliders set α and `c0`, and the script box replays a key script.
//! After every call the page pulls `state_json()` and `mesh_json()`, which
//! use the same JSON shapes as the `state` and `mesh` messages of the
//! session protocol.

use hyperslice::controller::{self, KeyEvent, Param, SessionConfig, SessionState};
use hyperslice::protocol::ServerMessage;
use wasm_bindgen::prelude::*;

#[wasm_bindgen]
pub struct Workbench {
    config: SessionConfig,
    state: SessionState,
}

fn param_by_name(name: &str) -> Result<Param, String> {
    serde_json::from_value(serde_json::Value::String(name.to_string()))
        .map_err(|_| format!("unknown parameter {name:?}"))
}

impl Workbench {
    pub fn try_new(edge_length: f64, theta0: f64) -> Result<Workbench, String> {
        let config = SessionConfig {
            edge_length,
            theta0,
            ..SessionConfig::default()
        };
        let state = SessionState::new(&config).map_err(|e| e.to_string())?;
        Ok(Workbench { config, state })
    }

    pub fn try_key(&mut self, symbol: &str, shifted: bool) -> Result<(), String> {
        let mut chars = symbol.chars();
        let (Some(c), None) = (chars.next(), chars.next()) else {
            return Err(format!("expected one key symbol, got {symbol:?}"));
        };
        let event = KeyEvent::new(c, shifted).map_err(|e| e.to_string())?;
        self.state = self.state.handle_key(event).map_err(|e| e.to_string())?;
        Ok(())
    }

    pub fn try_set_param(&mut self, name: &str, value: f64) -> Result<(), String> {
        let param = param_by_name(name)?;
        self.state = self.state.with_param(param, value).map_err(|e| e.to_string())?;
        Ok(())
    }

    /// Applies a whole key script; the state is left untouched on error.
    pub fn try_run_script(&mut self, script: &str) -> Result<usize, String> {
        let events = controller::parse_script(script).map_err(|e| e.to_string())?;
        let states = controller::replay(&self.state, &events).map_err(|e| e.to_string())?;
        if let Some(last) = states.last() {
            self.state = last.clone();
        }
        Ok(events.len())
    }

    pub fn state(&self) -> &SessionState {
        &self.state
    }
}

/// Expands a key script into `[{"symbol": "4", "shifted": false}, ...]` so
/// the page can animate it one press at a time.
pub fn script_events_json(script: &str) -> Result<String, String> {
    let events = controller::parse_script(script).map_err(|e| e.to_string())?;
    let list: Vec<_> = events
        .iter()
        .map(|e| serde_json::json!({ "symbol": e.symbol().to_string(), "shifted": e.shifted }))
        .collect();
    Ok(serde_json::Value::from(list).to_string())
}

#[wasm_bindgen]
pub fn script_events(script: &str) -> Result<String, JsError> {
    script_events_json(script).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
impl Workbench {
    #[wasm_bindgen(constructor)]
    pub fn new(edge_length: f64, theta0: f64) -> Result<Workbench, JsError> {
        Workbench::try_new(edge_length, theta0).map_err(|e| JsError::new(&e))
    }

    /// One key press, e.g. `("4", false)` or `("c", true)`.
    pub fn key(&mut self, symbol: &str, shifted: bool) -> Result<(), JsError> {
        self.try_key(symbol, shifted).map_err(|e| JsError::new(&e))
    }

    /// `theta0`, `alpha`, `c0`, `step_alpha` or `step_c0`.
    pub fn set_param(&mut self, name: &str, value: f64) -> Result<(), JsError> {
        self.try_set_param(name, value).map_err(|e| JsError::new(&e))
    }

    pub fn run_script(&mut self, script: &str) -> Result<usize, JsError> {
        self.try_run_script(script).map_err(|e| JsError::new(&e))
    }

    pub fn reset(&mut self) {
        self.state = SessionState::new(&self.config).expect("config was valid at construction");
    }

    pub fn param(&self, name: &str) -> f64 {
        param_by_name(name)
            .map(|p| self.state.param(p))
            .unwrap_or(f64::NAN)
    }

    pub fn beta(&self) -> f64 {
        self.state.beta().radians()
    }

    pub fn edge_length(&self) -> f64 {
        self.config.edge_length
    }

    pub fn state_json(&self) -> String {
        serde_json::to_string(&ServerMessage::state(&self.state)).expect("state serializes")
    }

    /// The current slice, or an `error` message when it degenerates.
    pub fn mesh_json(&self) -> String {
        let message = match self.state.current_slice() {
            Ok(mesh) => ServerMessage::mesh(&mesh),
            Err(e) => ServerMessage::error("degenerate_slice", e),
        };
        serde_json::to_string(&message).expect("mesh serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperslice::{Angle, PlaneId, Rotation4};
    use std::f64::consts::PI;

    fn bench() -> Workbench {
        Workbench::try_new(2.0, PI / 16.0).unwrap()
    }

    fn mesh_counts(json: &str) -> (usize, usize, usize) {
        let v: serde_json::Value = serde_json::from_str(json).unwrap();
        assert_eq!(v["type"], "mesh");
        let n = |k: &str| v[k].as_array().unwrap().len();
        (n("vertices"), n("edges"), n("faces"))
    }

    #[test]
    fn fresh_mesh_is_a_tetrahedron() {
        assert_eq!(mesh_counts(&bench().mesh_json()), (4, 6, 4));
    }

    #[test]
    fn key_rotates_and_state_json_reports_it() {
        let mut b = bench();
        b.try_key("4", false).unwrap();
        let v: serde_json::Value = serde_json::from_str(&b.state_json()).unwrap();
        let orientation: Vec<f64> = serde_json::from_value(v["orientation"].clone()).unwrap();
        let expected = Rotation4::simple(PlaneId::Xw, Angle::new(PI / 16.0).unwrap()).to_row_major();
        assert_eq!(orientation, expected);
        assert!(b.try_key("q", false).is_err());
        assert!(b.try_key("44", false).is_err());
    }

    #[test]
    fn sliders_set_parameters() {
        let mut b = bench();
        b.try_set_param("alpha", 0.05).unwrap();
        assert_eq!(b.param("alpha"), 0.05);
        assert_eq!(b.beta(), PI / 16.0 - 0.05);
        b.try_set_param("c0", 5.0).unwrap();
        assert_eq!(mesh_counts(&b.mesh_json()), (0, 0, 0));
        assert!(b.try_set_param("gamma", 1.0).is_err());
        assert!(b.param("gamma").is_nan());
    }

    #[test]
    fn script_expansion() {
        let v: serde_json::Value = serde_json::from_str(&script_events_json("z*2 S4").unwrap()).unwrap();
        assert_eq!(
            v,
            serde_json::json!([
                {"symbol": "z", "shifted": false},
                {"symbol": "z", "shifted": false},
                {"symbol": "4", "shifted": true}
            ])
        );
        assert!(script_events_json("4*0").is_err());
    }

    #[test]
    fn scripts_replay_and_reset() {
        let mut b = bench();
        assert_eq!(b.try_run_script("4*32").unwrap(), 32);
        assert!(b.state().orientation().frobenius_distance(&Rotation4::IDENTITY) < 1e-9);
        b.try_run_script("z*3").unwrap();
        let before = *b.state().orientation();
        assert!(b.try_run_script("2 2 x").is_err());
        assert_eq!(*b.state().orientation(), before);
        b.reset();
        assert_eq!(*b.state().orientation(), Rotation4::IDENTITY);
    }
}
