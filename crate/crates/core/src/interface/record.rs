use serde::{Deserialize, Serialize};

use crate::chess::board::{Board, Entry, Mode};
use crate::chess::game::{Flag, GameResult, Gr2Extraction};
use crate::chess::moves::LogEntry;
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    pub eps: usize,
    pub mode: Mode,
    pub validated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoardDoc {
    pub boxes: Vec<Entry>,
    pub copies: u64,
}

impl From<&Board> for BoardDoc {
    fn from(b: &Board) -> Self {
        Self {
            boxes: b.entries.clone(),
            copies: b.copies(),
        }
    }
}

/// Stable structured form of a finished game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameRecord {
    pub schema_version: u32,
    pub params: Params,
    pub initial: BoardDoc,
    pub moves: Vec<LogEntry>,
    #[serde(rename = "final")]
    pub final_board: BoardDoc,
    pub gr2: Gr2Extraction,
    pub residual_f_count: u64,
    pub flags: Vec<Flag>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Line {
    Header {
        schema_version: u32,
        params: Params,
        initial: BoardDoc,
    },
    Move(LogEntry),
    Summary {
        #[serde(rename = "final")]
        final_board: BoardDoc,
        gr2: Gr2Extraction,
        residual_f_count: u64,
        flags: Vec<Flag>,
    },
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

impl GameRecord {
    pub fn from_result(g: &GameResult) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            params: Params {
                n: g.n,
                eps: g.eps,
                mode: g.mode,
                validated: g.validated,
            },
            initial: (&g.initial).into(),
            moves: g.log.0.clone(),
            final_board: (&g.final_board).into(),
            gr2: g.gr2.clone(),
            residual_f_count: g.residual_f_count,
            flags: g.flags.clone(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(self).map_err(json_err)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(json_err)
    }

    /// One self-contained JSON document per line: header, each move, summary.
    pub fn to_json_lines(&self) -> Result<String> {
        let mut lines = Vec::with_capacity(self.moves.len() + 2);
        let header = Line::Header {
            schema_version: self.schema_version,
            params: self.params.clone(),
            initial: self.initial.clone(),
        };
        lines.push(serde_json::to_string(&header).map_err(json_err)?);
        for m in &self.moves {
            lines.push(serde_json::to_string(&Line::Move(m.clone())).map_err(json_err)?);
        }
        let summary = Line::Summary {
            final_board: self.final_board.clone(),
            gr2: self.gr2.clone(),
            residual_f_count: self.residual_f_count,
            flags: self.flags.clone(),
        };
        lines.push(serde_json::to_string(&summary).map_err(json_err)?);
        let mut out = lines.join("\n");
        out.push('\n');
        Ok(out)
    }

    pub fn from_json_lines(s: &str) -> Result<Self> {
        let mut header = None;
        let mut summary = None;
        let mut moves = Vec::new();
        for (i, raw) in s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            match serde_json::from_str::<Line>(raw).map_err(json_err)? {
                Line::Header {
                    schema_version,
                    params,
                    initial,
                } => {
                    if header.is_some() || i != 0 {
                        return Err(Error::Parse(format!("unexpected header on line {}", i + 1)));
                    }
                    header = Some((schema_version, params, initial));
                }
                Line::Move(m) => moves.push(m),
                Line::Summary {
                    final_board,
                    gr2,
                    residual_f_count,
                    flags,
                } => {
                    summary = Some((final_board, gr2, residual_f_count, flags));
                }
            }
        }
        let (schema_version, params, initial) =
            header.ok_or_else(|| Error::Parse("missing header".into()))?;
        let (final_board, gr2, residual_f_count, flags) =
            summary.ok_or_else(|| Error::Parse("missing summary".into()))?;
        Ok(Self {
            schema_version,
            params,
            initial,
            moves,
            final_board,
            gr2,
            residual_f_count,
            flags,
        })
    }
}
