use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::oracle::Space;
use crate::schur::BundleDescriptor;

pub type Pos = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Fibration,
    Flip,
}

impl Mode {
    /// Where the Ext checks of this game live.
    pub fn space(self) -> Space {
        match self {
            Mode::Fibration => Space::HyperplaneM,
            Mode::Flip => Space::Flag,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Fibration => write!(f, "fibration"),
            Mode::Flip => write!(f, "flip"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fibration" => Ok(Mode::Fibration),
            "flip" => Ok(Mode::Flip),
            other => domain(format!("unknown mode {other}")),
        }
    }
}

/// What a box holds: the pieces `S^lo, ..., S^hi` at one twist, or an
/// opaque block that only remembers its copy-count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Content {
    Block { lo: u32, hi: u32 },
    Opaque { copies: u64 },
}

impl Content {
    /// `A^m`.
    pub fn sym(m: u32) -> Self {
        Content::Block { lo: 0, hi: m }
    }

    pub fn piece(k: u32) -> Self {
        Content::Block { lo: k, hi: k }
    }

    pub fn copies(&self) -> u64 {
        match *self {
            Content::Block { lo, hi } => (hi - lo) as u64 + 1,
            Content::Opaque { copies } => copies,
        }
    }

    pub fn is_opaque(&self) -> bool {
        matches!(self, Content::Opaque { .. })
    }

    pub fn is_zero(&self) -> bool {
        *self == Content::sym(0)
    }

    /// Top power of a full block `A^m`.
    pub fn sym_max(&self) -> Option<u32> {
        match *self {
            Content::Block { lo: 0, hi } => Some(hi),
            _ => None,
        }
    }
}

impl fmt::Display for Content {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Content::Block { lo: 0, hi } => write!(f, "{hi}"),
            Content::Block { lo, hi } if lo == hi => write!(f, "S{lo}"),
            Content::Block { lo, hi } => write!(f, "S{lo}-{hi}"),
            Content::Opaque { .. } => write!(f, "x"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Entry {
    pub x: i64,
    pub y: i64,
    pub content: Content,
}

impl Entry {
    pub fn new(x: i64, y: i64, content: Content) -> Self {
        Self { x, y, content }
    }

    pub fn pos(&self) -> Pos {
        (self.x, self.y)
    }

    pub fn copies(&self) -> u64 {
        self.content.copies()
    }

    /// Bundles spanning this box, one per symmetric power.
    pub fn pieces(&self, big_n: usize) -> Result<Vec<BundleDescriptor>> {
        match self.content {
            Content::Block { lo, hi } => (lo..=hi)
                .map(|k| BundleDescriptor::new(big_n, k, self.x, self.y))
                .collect(),
            Content::Opaque { .. } => Ok(Vec::new()),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.content {
            Content::Opaque { copies } => write!(f, "x[{copies}]@({},{})", self.x, self.y),
            Content::Block { lo: 0, hi } => write!(f, "A{hi}@({},{})", self.x, self.y),
            c => write!(f, "{c}@({},{})", self.x, self.y),
        }
    }
}

/// A semiorthogonal decomposition written as an ordered list of boxes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Board {
    pub n: usize,
    pub eps: usize,
    pub mode: Mode,
    pub entries: Vec<Entry>,
}

pub(crate) fn check_params(n: usize, eps: usize) -> Result<()> {
    if n < 2 {
        return domain(format!("n must be at least 2, got {n}"));
    }
    if eps > 1 {
        return domain(format!("eps must be 0 or 1, got {eps}"));
    }
    Ok(())
}

impl Board {
    pub fn new(n: usize, eps: usize, mode: Mode, entries: Vec<Entry>) -> Result<Self> {
        check_params(n, eps)?;
        Ok(Self {
            n,
            eps,
            mode,
            entries,
        })
    }

    /// `N = 2n + eps`.
    pub fn big_n(&self) -> usize {
        2 * self.n + self.eps
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn copies(&self) -> u64 {
        self.entries.iter().map(Entry::copies).sum()
    }

    pub fn opaque_copies(&self) -> u64 {
        self.entries
            .iter()
            .filter(|e| e.content.is_opaque())
            .map(Entry::copies)
            .sum()
    }

    pub fn positions(&self, pos: Pos) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.pos() == pos)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn get(&self, pos: Pos) -> Option<&Entry> {
        self.entries.iter().find(|e| e.pos() == pos)
    }

    /// First position that holds more than one box, if any.
    pub fn duplicate_position(&self) -> Option<Pos> {
        let mut seen = std::collections::HashSet::new();
        self.entries
            .iter()
            .map(Entry::pos)
            .find(|p| !seen.insert(*p))
    }

    pub fn rows(&self) -> Vec<i64> {
        let mut ys: Vec<i64> = self.entries.iter().map(|e| e.y).collect();
        ys.sort_unstable();
        ys.dedup();
        ys
    }
}

/// `N - 2` rows of `N` zero boxes, row `y` starting at `x = y - n - 1`.
pub fn initial_board_fibration(n: usize, eps: usize) -> Result<Board> {
    check_params(n, eps)?;
    Board::new(n, eps, Mode::Fibration, staggered_rows(n, eps))
}

fn staggered_rows(n: usize, eps: usize) -> Vec<Entry> {
    let big_n = (2 * n + eps) as i64;
    let n = n as i64;
    let mut entries = Vec::new();
    for y in 1..=big_n - 2 {
        for x in (y - n - 1)..(y - n - 1 + big_n) {
            entries.push(Entry::new(x, y, Content::sym(0)));
        }
    }
    entries
}

/// Board listed by the blowup decomposition: rows `y = -(N-3)..=-1`,
/// row `y` spanning `x = y..=y+N`.
pub fn initial_board_flip(n: usize, eps: usize) -> Result<Board> {
    check_params(n, eps)?;
    let big_n = (2 * n + eps) as i64;
    let mut entries = Vec::new();
    for y in -(big_n - 3)..=-1 {
        for x in y..=y + big_n {
            entries.push(Entry::new(x, y, Content::sym(0)));
        }
    }
    Board::new(n, eps, Mode::Flip, entries)
}

/// Starting board the flip game is actually played on: the fibration
/// board read as `T`-blocks.
pub fn flip_game_board(n: usize, eps: usize) -> Result<Board> {
    check_params(n, eps)?;
    Board::new(n, eps, Mode::Flip, staggered_rows(n, eps))
}
