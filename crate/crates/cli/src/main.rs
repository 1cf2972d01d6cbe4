use std::net::TcpListener;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use hyperslice::controller::{SessionConfig, SessionState};
use hyperslice::export::{self, Figure, Format};
use hyperslice::protocol;

#[derive(Parser)]
#[command(
    name = "hyperslice",
    version,
    about = "Keyboard-driven 4-D rotations and hyperplane slices of the regular pentachoron"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay a key script and export one slice per step.
    Slice {
        /// Key script, e.g. "4*32" or "z*15 k l S2".
        #[arg(default_value = "")]
        script: String,
        #[command(flatten)]
        session: SessionArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Also write the base polytope as polytope.json.
        #[arg(long)]
        dump_polytope: bool,
    },
    /// Serve the session protocol over TCP.
    Serve {
        #[arg(long, default_value = "127.0.0.1:4040")]
        bind: String,
        #[command(flatten)]
        session: SessionArgs,
    },
    /// Export the reference sequences: fig3 (periodic) or fig4 (aperiodic).
    ReplayFigures {
        figure: Figure,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct SessionArgs {
    /// Pentachoron edge length a.
    #[arg(long, default_value_t = 2.0)]
    edge_length: f64,
    /// Per-key rotation angle θ₀ in radians (default π/16).
    #[arg(long, default_value_t = std::f64::consts::PI / 16.0)]
    theta0: f64,
    /// Initial hyperplane offset c0.
    #[arg(long, default_value_t = 0.0)]
    c0: f64,
    /// Initial double-rotation angle α (default θ₀/2).
    #[arg(long)]
    alpha: Option<f64>,
    /// α increment for k/j (default θ₀/16).
    #[arg(long)]
    step_alpha: Option<f64>,
    /// c0 increment for l/h (default 0.05·a).
    #[arg(long)]
    step_c0: Option<f64>,
}

impl SessionArgs {
    fn config(&self) -> SessionConfig {
        SessionConfig {
            edge_length: self.edge_length,
            theta0: self.theta0,
            alpha: self.alpha,
            c0: self.c0,
            step_alpha: self.step_alpha,
            step_c0: self.step_c0,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, default_value = "frames")]
    out: PathBuf,
    /// Comma-separated output formats.
    #[arg(long, default_value = "obj,json", value_delimiter = ',')]
    format: Vec<Format>,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Slice {
            script,
            session,
            output,
            dump_polytope,
        } => {
            let config = session.config();
            let frames = export::run_slice(&script, &config, &output.out, &output.format)?;
            if dump_polytope {
                let state = SessionState::new(&config)?;
                let path = output.out.join("polytope.json");
                std::fs::write(&path, serde_json::to_vec_pretty(state.base())?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            println!("wrote {frames} frames to {}", output.out.display());
        }
        Command::Serve { bind, session } => {
            let listener = TcpListener::bind(&bind).with_context(|| format!("binding {bind}"))?;
            eprintln!("hyperslice: listening on {}", listener.local_addr()?);
            protocol::serve(listener, session.config())?;
        }
        Command::ReplayFigures { figure, output } => {
            let manifest = export::run_replay_figure(figure, &output.out, &output.format)?;
            println!(
                "wrote {} files for script {:?} to {}",
                manifest.frames.len(),
                manifest.script,
                output.out.display()
            );
        }
    }
    Ok(())
}
