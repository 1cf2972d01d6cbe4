//! Frame export: one slice per replay step, written as OBJ and/or JSON.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::controller::{
    self, ControllerError, KeyEvent, ParseError, ReplayError, SessionConfig, SessionState,
};
use crate::rotation::Rotation4;
use crate::slicer::{SliceError, SliceMesh};

#[derive(Debug, Error)]
pub enum ExportError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Replay(#[from] ReplayError),
    #[error(transparent)]
    Session(#[from] ControllerError),
    #[error("frame {frame}: {source}")]
    Slice { frame: usize, source: SliceError },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Obj,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Obj => "obj",
            Format::Json => "json",
        }
    }

    /// Parses a comma-separated list such as `obj,json`.
    pub fn parse_list(text: &str) -> Result<Vec<Format>, String> {
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let f = part.parse()?;
            if !out.contains(&f) {
                out.push(f);
            }
        }
        if out.is_empty() {
            return Err("no output format given".into());
        }
        Ok(out)
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "obj" => Ok(Format::Obj),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected obj or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateSummary {
    pub orientation: Rotation4,
    pub alpha: f64,
    pub c0: f64,
}

impl From<&SessionState> for StateSummary {
    fn from(s: &SessionState) -> Self {
        StateSummary {
            orientation: *s.orientation(),
            alpha: s.alpha().radians(),
            c0: s.c0(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameExport {
    pub frame_index: usize,
    pub state: StateSummary,
    pub mesh: SliceMesh,
}

/// Frame 0 is `start`; frame `i + 1` follows event `i`.
pub fn build_frames(start: &SessionState, events: &[KeyEvent]) -> Result<Vec<FrameExport>, ExportError> {
    let states = controller::replay(start, events)?;
    std::iter::once(start)
        .chain(states.iter())
        .enumerate()
        .map(|(frame_index, s)| {
            let mesh = s.current_slice().map_err(|source| ExportError::Slice {
                frame: frame_index,
                source,
            })?;
            Ok(FrameExport {
                frame_index,
                state: s.into(),
                mesh,
            })
        })
        .collect()
}

/// Wavefront OBJ text: `v` per vertex, `l` per edge, `f` per face, 1-based.
pub fn to_obj(mesh: &SliceMesh, comment: &str) -> String {
    let mut out = String::new();
    for line in comment.lines() {
        let _ = writeln!(out, "# {line}");
    }
    for v in &mesh.vertices {
        let p = v.position;
        let _ = writeln!(out, "v {} {} {}", p.x, p.y, p.z);
    }
    for e in &mesh.edges {
        let _ = writeln!(out, "l {} {}", e.vertices[0] + 1, e.vertices[1] + 1);
    }
    for f in &mesh.faces {
        out.push('f');
        for v in &f.vertices {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    out
}

pub fn frame_file_name(frame_index: usize, format: Format) -> String {
    format!("frame_{frame_index:05}.{}", format.extension())
}

fn write_file(path: PathBuf, contents: &[u8]) -> Result<(), ExportError> {
    fs::write(&path, contents).map_err(|source| ExportError::Io { path, source })
}

pub fn write_frames(dir: &Path, frames: &[FrameExport], formats: &[Format]) -> Result<(), ExportError> {
    fs::create_dir_all(dir).map_err(|source| ExportError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    for frame in frames {
        for &format in formats {
            let path = dir.join(frame_file_name(frame.frame_index, format));
            let bytes = match format {
                Format::Obj => to_obj(&frame.mesh, &format!("frame {}", frame.frame_index)).into_bytes(),
                Format::Json => serde_json::to_vec_pretty(frame)?,
            };
            write_file(path, &bytes)?;
        }
    }
    Ok(())
}

/// Replays `script` from a fresh session and writes every frame to `out_dir`.
/// Returns the number of frames.
pub fn run_slice(
    script: &str,
    config: &SessionConfig,
    out_dir: &Path,
    formats: &[Format],
) -> Result<usize, ExportError> {
    let events = controller::parse_script(script)?;
    let start = SessionState::new(config)?;
    let frames = build_frames(&start, &events)?;
    write_frames(out_dir, &frames, formats)?;
    Ok(frames.len())
}

/// The two reference key sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Figure {
    /// 32 simple `x`–`w` steps of π/16: a full turn.
    Fig3,
    /// 15 `x`–`z`/`y`–`w` double steps with an irrational angle ratio.
    Fig4,
}

impl FromStr for Figure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fig3" => Ok(Figure::Fig3),
            "fig4" => Ok(Figure::Fig4),
            other => Err(format!("unknown figure {other:?} (expected fig3 or fig4)")),
        }
    }
}

/// `π√2 / (8√3)`, the double-rotation angle of the aperiodic sequence.
pub fn aperiodic_alpha() -> f64 {
    PI * 2f64.sqrt() / (8.0 * 3f64.sqrt())
}

impl Figure {
    pub fn script(self) -> &'static str {
        match self {
            Figure::Fig3 => "4*32",
            Figure::Fig4 => "z*15",
        }
    }

    /// The sequence's session. The aperiodic one runs with `θ₀ = 1` so
    /// that `β = 1 − α` is also `θ₀ − α`.
    pub fn config(self) -> SessionConfig {
        match self {
            Figure::Fig3 => SessionConfig::default(),
            Figure::Fig4 => SessionConfig {
                theta0: 1.0,
                alpha: Some(aperiodic_alpha()),
                ..SessionConfig::default()
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub figure: Figure,
    pub script: String,
    pub edge_length: f64,
    pub theta0: f64,
    pub alpha: f64,
    pub beta: f64,
    pub c0: f64,
    pub frames: Vec<String>,
}

pub fn figure_frames(figure: Figure) -> Result<(Manifest, Vec<FrameExport>), ExportError> {
    let config = figure.config();
    let start = SessionState::new(&config)?;
    let events = controller::parse_script(figure.script())?;
    let frames = build_frames(&start, &events)?;
    let manifest = Manifest {
        figure,
        script: figure.script().to_string(),
        edge_length: config.edge_length,
        theta0: start.theta0().radians(),
        alpha: start.alpha().radians(),
        beta: start.beta().radians(),
        c0: start.c0(),
        frames: Vec::new(),
    };
    Ok((manifest, frames))
}

/// Writes a figure's frames plus `manifest.json` listing its parameters.
pub fn run_replay_figure(
    figure: Figure,
    out_dir: &Path,
    formats: &[Format],
) -> Result<Manifest, ExportError> {
    let (mut manifest, frames) = figure_frames(figure)?;
    write_frames(out_dir, &frames, formats)?;
    manifest.frames = frames
        .iter()
        .flat_map(|f| formats.iter().map(|&fmt| frame_file_name(f.frame_index, fmt)))
        .collect();
    write_file(
        out_dir.join("manifest.json"),
        &serde_json::to_vec_pretty(&manifest)?,
    )?;
    Ok(manifest)
}

/// Largest distance between matched vertices of two meshes (vertices paired
/// by source edge), or infinity when their combinatorics differ.
pub fn mesh_distance(a: &SliceMesh, b: &SliceMesh) -> f64 {
    if a.vertices.len() != b.vertices.len() {
        return f64::INFINITY;
    }
    let mut worst: f64 = 0.0;
    for va in &a.vertices {
        match b.vertices.iter().find(|vb| vb.source_edge == va.source_edge) {
            Some(vb) => worst = worst.max(va.position.distance(vb.position)),
            None => return f64::INFINITY,
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_lists() {
        assert_eq!(
            Format::parse_list("obj,json").unwrap(),
            vec![Format::Obj, Format::Json]
        );
        assert_eq!(Format::parse_list("JSON, json").unwrap(), vec![Format::Json]);
        assert!(Format::parse_list("").is_err());
        assert!(Format::parse_list("obj,stl").is_err());
    }

    #[test]
    fn obj_of_fresh_slice() {
        let s = SessionState::new(&SessionConfig::default()).unwrap();
        let obj = to_obj(&s.current_slice().unwrap(), "frame 0");
        let count = |prefix: &str| obj.lines().filter(|l| l.starts_with(prefix)).count();
        assert_eq!((count("v "), count("l "), count("f ")), (4, 6, 4));
        assert!(obj.starts_with("# frame 0\n"));
        assert!(obj.lines().filter(|l| l.starts_with("f ")).all(|l| l
            .split_whitespace()
            .skip(1)
            .all(|i| (1..=4).contains(&i.parse::<usize>().unwrap()))));
    }

    #[test]
    fn empty_script_gives_one_frame() {
        let s = SessionState::new(&SessionConfig::default()).unwrap();
        let frames = build_frames(&s, &[]).unwrap();
        assert_eq!(frames.len(), 1);
        assert_eq!(frames[0].frame_index, 0);
        assert_eq!(frames[0].mesh.vertices.len(), 4);
    }

    #[test]
    fn figure_parameters() {
        let c = Figure::Fig4.config();
        assert_eq!(c.theta0, 1.0);
        assert!((c.alpha() - 0.320_637_457_540_466).abs() < 1e-15);
        assert_eq!(Figure::Fig3.config().theta0, PI / 16.0);
        assert_eq!("fig3".parse::<Figure>().unwrap(), Figure::Fig3);
        assert!("fig5".parse::<Figure>().is_err());
    }

    #[test]
    fn mesh_distance_pairs_by_source_edge() {
        let s = SessionState::new(&SessionConfig::default()).unwrap();
        let m = s.current_slice().unwrap();
        assert_eq!(mesh_distance(&m, &m), 0.0);
        let mut reversed = m.clone();
        reversed.vertices.reverse();
        assert_eq!(mesh_distance(&m, &reversed), 0.0);
        assert_eq!(mesh_distance(&m, &SliceMesh::default()), f64::INFINITY);
    }
}
