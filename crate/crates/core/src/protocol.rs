//! Session wire protocol.
//!
//! A connection carries frames in both directions. Each frame is a 4-byte
//! big-endian length followed by that many bytes of UTF-8 JSON. Every client
//! message is answered by a `state` message followed by a `mesh` message,
//! or by a single `error` message. One connection owns one session.
//!
//! Client messages:
//!
//! ```json
//! {"type":"key","symbol":"4","shifted":false}
//! {"type":"set_param","name":"c0","value":0.5}
//! {"type":"get_state"}
//! {"type":"reset"}
//! ```
//!
//! Server messages:
//!
//! ```json
//! {"type":"state","orientation":[16 numbers],"alpha":..,"beta":..,"c0":..,"theta0":..}
//! {"type":"mesh","vertices":[[x,y,z],..],"vertex_source_edges":[..],"edges":[[i,j],..],"faces":[[i,j,k],..]}
//! {"type":"error","code":"unknown_key","detail":".."}
//! ```

use std::io::{self, Read, Write};
use std::net::{TcpListener, TcpStream, ToSocketAddrs};
use std::thread;

use serde::{Deserialize, Serialize};

use crate::controller::{KeyEvent, Param, SessionConfig, SessionState};
use crate::slicer::SliceMesh;

/// Frames longer than this close the connection.
pub const MAX_FRAME_LEN: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ClientMessage {
    Key { symbol: char, shifted: bool },
    SetParam { name: Param, value: f64 },
    GetState,
    Reset,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ServerMessage {
    State {
        orientation: [f64; 16],
        alpha: f64,
        beta: f64,
        c0: f64,
        theta0: f64,
    },
    Mesh {
        vertices: Vec<[f64; 3]>,
        vertex_source_edges: Vec<usize>,
        edges: Vec<[usize; 2]>,
        faces: Vec<Vec<usize>>,
    },
    Error {
        code: String,
        detail: String,
    },
}

impl ServerMessage {
    pub fn state(s: &SessionState) -> Self {
        ServerMessage::State {
            orientation: s.orientation().to_row_major(),
            alpha: s.alpha().radians(),
            beta: s.beta().radians(),
            c0: s.c0(),
            theta0: s.theta0().radians(),
        }
    }

    pub fn mesh(m: &SliceMesh) -> Self {
        ServerMessage::Mesh {
            vertices: m.vertices.iter().map(|v| v.position.to_array()).collect(),
            vertex_source_edges: m.vertices.iter().map(|v| v.source_edge).collect(),
            edges: m.edges.iter().map(|e| e.vertices).collect(),
            faces: m.faces.iter().map(|f| f.vertices.clone()).collect(),
        }
    }

    pub fn error(code: &str, detail: impl ToString) -> Self {
        ServerMessage::Error {
            code: code.to_string(),
            detail: detail.to_string(),
        }
    }

    pub fn is_state(&self) -> bool {
        matches!(self, ServerMessage::State { .. })
    }
}

/// Server side of one connection.
#[derive(Debug, Clone)]
pub struct Session {
    config: SessionConfig,
    state: SessionState,
}

impl Session {
    pub fn new(config: SessionConfig) -> Result<Self, crate::controller::ControllerError> {
        let state = SessionState::new(&config)?;
        Ok(Session { config, state })
    }

    pub fn state(&self) -> &SessionState {
        &self.state
    }

    /// Replies to one decoded message.
    pub fn respond(&mut self, message: ClientMessage) -> Vec<ServerMessage> {
        let next = match message {
            ClientMessage::Key { symbol, shifted } => KeyEvent::new(symbol, shifted)
                .map_err(|e| ("unknown_key", e.to_string()))
                .and_then(|event| {
                    self.state
                        .handle_key(event)
                        .map_err(|e| ("invalid_param", e.to_string()))
                }),
            ClientMessage::SetParam { name, value } => self
                .state
                .with_param(name, value)
                .map_err(|e| ("invalid_param", e.to_string())),
            ClientMessage::GetState => Ok(self.state.clone()),
            ClientMessage::Reset => SessionState::new(&self.config).map_err(|e| ("internal", e.to_string())),
        };
        match next {
            Err((code, detail)) => vec![ServerMessage::error(code, detail)],
            Ok(next) => {
                self.state = next;
                let mesh = match self.state.current_slice() {
                    Ok(m) => ServerMessage::mesh(&m),
                    Err(e) => ServerMessage::error("degenerate_slice", e),
                };
                vec![ServerMessage::state(&self.state), mesh]
            }
        }
    }

    /// Replies to one raw frame payload.
    pub fn respond_bytes(&mut self, payload: &[u8]) -> Vec<ServerMessage> {
        match serde_json::from_slice::<ClientMessage>(payload) {
            Ok(message) => self.respond(message),
            Err(e) => vec![ServerMessage::error("bad_message", e)],
        }
    }
}

/// Reads one frame. `Ok(None)` on a clean end of stream between frames.
pub fn read_frame(reader: &mut impl Read) -> io::Result<Option<Vec<u8>>> {
    let mut header = [0u8; 4];
    let mut filled = 0;
    while filled < header.len() {
        match reader.read(&mut header[filled..]) {
            Ok(0) if filled == 0 => return Ok(None),
            Ok(0) => return Err(io::ErrorKind::UnexpectedEof.into()),
            Ok(n) => filled += n,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
            Err(e) => return Err(e),
        }
    }
    let len = u32::from_be_bytes(header) as usize;
    if len > MAX_FRAME_LEN {
        return Err(io::Error::new(
            io::ErrorKind::InvalidData,
            format!("frame of {len} bytes exceeds {MAX_FRAME_LEN}"),
        ));
    }
    let mut payload = vec![0u8; len];
    reader.read_exact(&mut payload)?;
    Ok(Some(payload))
}

pub fn write_frame(writer: &mut impl Write, payload: &[u8]) -> io::Result<()> {
    if payload.len() > MAX_FRAME_LEN {
        return Err(io::Error::new(io::ErrorKind::InvalidInput, "frame too long"));
    }
    writer.write_all(&(payload.len() as u32).to_be_bytes())?;
    writer.write_all(payload)
}

pub fn write_message<T: Serialize>(writer: &mut impl Write, message: &T) -> io::Result<()> {
    let bytes = serde_json::to_vec(message).map_err(io::Error::other)?;
    write_frame(writer, &bytes)
}

/// Serves one connection until the peer hangs up or breaks framing.
pub fn serve_connection<S: Read + Write>(stream: &mut S, config: SessionConfig) -> io::Result<()> {
    let mut session = Session::new(config).map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?;
    while let Some(payload) = read_frame(stream)? {
        for reply in session.respond_bytes(&payload) {
            write_message(stream, &reply)?;
        }
        stream.flush()?;
    }
    Ok(())
}

/// Accepts connections forever, one thread and one session per connection.
pub fn serve(listener: TcpListener, config: SessionConfig) -> io::Result<()> {
    SessionState::new(&config).map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?;
    for stream in listener.incoming() {
        let mut stream = match stream {
            Ok(s) => s,
            Err(e) => {
                log_line(&format!("accept failed: {e}"));
                continue;
            }
        };
        thread::spawn(move || {
            let _ = stream.set_nodelay(true);
            if let Err(e) = serve_connection(&mut stream, config) {
                log_line(&format!("connection closed: {e}"));
            }
        });
    }
    Ok(())
}

fn log_line(line: &str) {
    eprintln!("hyperslice: {line}");
}

/// Blocking client for one session.
pub struct Client {
    stream: TcpStream,
}

impl Client {
    pub fn connect(addr: impl ToSocketAddrs) -> io::Result<Self> {
        let stream = TcpStream::connect(addr)?;
        stream.set_nodelay(true)?;
        Ok(Client { stream })
    }

    pub fn send_raw(&mut self, payload: &[u8]) -> io::Result<()> {
        write_frame(&mut self.stream, payload)
    }

    pub fn send(&mut self, message: &ClientMessage) -> io::Result<()> {
        write_message(&mut self.stream, message)
    }

    /// Next reply frame, undecoded.
    pub fn recv_raw(&mut self) -> io::Result<Vec<u8>> {
        read_frame(&mut self.stream)?.ok_or_else(|| io::ErrorKind::UnexpectedEof.into())
    }

    pub fn recv(&mut self) -> io::Result<ServerMessage> {
        let bytes = self.recv_raw()?;
        serde_json::from_slice(&bytes).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
    }

    /// Sends a message and collects its replies: `[state, mesh]` or `[error]`.
    pub fn request(&mut self, message: &ClientMessage) -> io::Result<Vec<Vec<u8>>> {
        self.send(message)?;
        let first = self.recv_raw()?;
        let is_error = serde_json::from_slice::<ServerMessage>(&first)
            .map(|m| matches!(m, ServerMessage::Error { .. }))
            .unwrap_or(true);
        if is_error {
            return Ok(vec![first]);
        }
        let second = self.recv_raw()?;
        Ok(vec![first, second])
    }
}
