use serde::{Deserialize, Serialize};

use crate::chess::board::{
    check_params, flip_game_board, initial_board_fibration, Board, Content, Entry, Mode, Pos,
};
use crate::chess::moves::{Dir, Engine, MoveLog};
use crate::error::Result;

/// Snapshot taken at the end of a scripted phase.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseBoard {
    pub phase: String,
    pub board: Board,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gr2Extraction {
    pub found: bool,
    pub boxes: Vec<Entry>,
    pub copies: u64,
    /// Expected boxes that were missing or wrong, as `(position, expected, found)`.
    pub diff: Vec<(Pos, String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "flag", rename_all = "snake_case")]
pub enum Flag {
    ResidualCount { expected: u64, got: u64 },
    Gr2Missing { diff: Vec<(Pos, String, String)> },
    DuplicatePosition { pos: Pos },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameResult {
    pub n: usize,
    pub eps: usize,
    pub mode: Mode,
    pub validated: bool,
    pub initial: Board,
    pub phases: Vec<PhaseBoard>,
    pub final_board: Board,
    pub gr2: Gr2Extraction,
    pub residual: Vec<Entry>,
    pub residual_f_count: u64,
    pub log: MoveLog,
    pub flags: Vec<Flag>,
}

impl GameResult {
    pub fn has_discrepancy(&self) -> bool {
        !self.flags.is_empty()
    }
}

/// Residual block count stated for the fibration games.
pub fn expected_residual(n: usize, eps: usize) -> u64 {
    let n = n as u64;
    if eps == 0 {
        2 * n * n - n
    } else {
        2 * n * n - n - 1
    }
}

/// Validation default: on for small `n`.
pub fn default_validate(n: usize) -> bool {
    n <= 4
}

struct Script {
    e: Engine,
    n: i64,
    phases: Vec<PhaseBoard>,
}

impl Script {
    fn top(&self, pos: Pos) -> Result<u32> {
        let i = self.e.index_of(pos)?;
        self.e.board().entries[i].content.sym_max().ok_or_else(|| {
            self.e
                .pattern(format!("box at {pos:?} is not a full block"))
        })
    }

    /// Push every yellow box `(x, y)`, `x` in `xs`, one row up with rule 1.
    fn lift_row(&mut self, y: i64, xs: std::ops::RangeInclusive<i64>) -> Result<()> {
        for x in xs {
            let r = self.top((x, y))? + 1;
            self.e.rule1((x + 1, y - 1), r)?;
        }
        Ok(())
    }

    fn snapshot(&mut self) {
        self.phases.push(PhaseBoard {
            phase: self.e.phase().to_string(),
            board: self.e.board().clone(),
        });
    }

    fn phase(&mut self, name: &str) {
        self.e.set_phase(name);
    }

    fn align(&mut self) -> Result<()> {
        self.phase("align");
        let big_n = self.e.board().big_n() as i64;
        for y in 2..=big_n - 2 {
            self.e
                .serre_translate(y, Dir::LastToFront, (y - 1) as usize)?;
        }
        self.snapshot();
        Ok(())
    }

    fn global_serre(&mut self) -> Result<()> {
        self.phase("serre");
        let n = self.n;
        let big_n = self.e.board().big_n() as i64;
        for x in -n..0 {
            let first = self.e.board().entries[0].pos();
            if first != (x, 1) {
                return Err(self
                    .e
                    .pattern(format!("expected ({x},1) first, found {first:?}")));
            }
            self.e.apply(crate::chess::moves::Move::GlobalSerre {
                dir: Dir::FirstToEnd,
            })?;
        }
        let _ = big_n;
        self.snapshot();
        Ok(())
    }

    /// Move `pos` to the end of the order and then to the front by Serre.
    fn send_to_front(&mut self, pos: Pos) -> Result<()> {
        self.e.obscure_rest_past(pos)?;
        self.e.apply(crate::chess::moves::Move::GlobalSerre {
            dir: Dir::LastToFront,
        })
    }

    fn even(&mut self) -> Result<()> {
        let n = self.n;
        let top_row = 2 * n - 1;
        self.align()?;

        self.phase("first upward");
        for y in (2..=n - 1).rev() {
            self.e.obscure_right((-n, y), (n - y + 1) as usize)?;
            self.lift_row(y, -n + 1..=-y + 1)?;
        }
        self.snapshot();

        self.global_serre()?;

        self.phase("second upward");
        self.lift_row(top_row, -n + 1..=-1)?;
        for y in (n + 1..=2 * n - 2).rev() {
            self.e.obscure_right((-n, y), (n - 1) as usize)?;
            self.lift_row(y, -n + 1..=-1)?;
        }
        self.snapshot();

        self.phase("orange");
        self.e.obscure_right((-n, n), (n - 1) as usize)?;
        for k in 0..=n - 2 {
            self.climb(k)?;
        }
        self.snapshot();

        self.phase("descent");
        self.lift_row(n, -n + 2..=-1)?;
        for y in (3..=n - 1).rev() {
            self.e.obscure_right((-n, y), (y - 2) as usize)?;
            self.lift_row(y, -y + 2..=-1)?;
        }
        self.snapshot();

        self.phase("rule2");
        self.e
            .rule2((1, 2 * n - 2), (n - 2) as u32, (n - 1) as u32)?;
        self.send_to_front((1, 2 * n - 2))?;
        self.snapshot();
        Ok(())
    }

    /// The orange piece `S^k` at `(-n+1+k, n-k)` climbs one row.
    fn climb(&mut self, k: i64) -> Result<()> {
        use crate::chess::moves::{Move, Side};
        let n = self.n;
        let y = n - k - 1;
        let orange = (-n + 1 + k, n - k);
        let absorber = (-n + 3 + 2 * k, y);
        let landing = (-n + 2 + k, y);
        let a = self.e.index_of(absorber)?;
        let mut o = self
            .e
            .board()
            .entries
            .iter()
            .position(|e| e.pos() == orange && e.content == Content::piece(k as u32))
            .ok_or_else(|| self.e.pattern(format!("no orange S{k} at {orange:?}")))?;
        if o <= a {
            return Err(self.e.pattern(format!(
                "orange at {orange:?} precedes absorber {absorber:?}"
            )));
        }
        while o > a + 1 {
            self.e.apply(Move::Swap { at: o - 1 })?;
            o -= 1;
        }
        self.e.apply(Move::Absorb {
            at: a,
            side: Side::Left,
        })?;
        let mut p = a;
        loop {
            let prev = self.e.board().entries[p - 1];
            if prev.y == y && prev.x > landing.0 && prev.content.is_zero() {
                self.e.apply(Move::Swap { at: p - 1 })?;
                p -= 1;
            } else {
                break;
            }
        }
        if k < n - 2 {
            let prev = self.e.board().entries[p - 1];
            if prev.pos() != (-n, y) || !prev.content.is_opaque() {
                return Err(self.e.pattern(format!(
                    "expected x at ({},{y}) before {landing:?}, found {prev}",
                    -n
                )));
            }
            self.e.apply(Move::Obscure {
                at: p - 1,
                mover: Side::Left,
            })?;
        } else {
            self.e.apply(Move::Merge { at: p - 1, len: 2 })?;
        }
        Ok(())
    }

    fn odd(&mut self) -> Result<()> {
        let n = self.n;
        self.align()?;

        self.phase("first upward");
        for y in (2..=2 * n - 1).rev() {
            let hi = if y <= n + 1 { -1 } else { n - y };
            self.e.obscure_right((-n, y), (hi + n) as usize)?;
            self.lift_row(y, -n + 1..=hi)?;
        }
        self.snapshot();

        self.global_serre()?;

        self.phase("second upward");
        self.lift_row(2 * n, -n + 1..=0)?;
        for y in (n + 2..=2 * n - 1).rev() {
            self.e.obscure_right((-n, y), (y - n) as usize)?;
            self.lift_row(y, n + 1 - y..=0)?;
        }
        self.snapshot();

        self.phase("column");
        for y in (n + 1..=2 * n - 1).rev() {
            self.send_to_front((1, y))?;
        }
        self.snapshot();

        self.phase("rule2");
        self.e.obscure_right((-n, n + 1), 1)?;
        self.e.rule2((1, n), (n - 1) as u32, n as u32)?;
        self.send_to_front((1, n))?;
        self.snapshot();
        Ok(())
    }
}

/// Expected Gr2 boxes on the final board.
pub fn gr2_pattern(n: usize, eps: usize) -> Vec<(Pos, u32)> {
    let n = n as i64;
    let m = (n - 1) as u32;
    if eps == 0 {
        let mut v = vec![((0, 0), m - 1)];
        v.extend((1..=n).map(|y| ((0, y), m)));
        v.extend((n + 1..=2 * n - 1).map(|y| ((0, y), m - 1)));
        v
    } else {
        (-n + 1..=n + 1).map(|y| ((0, y), m)).collect()
    }
}

/// Split the final board into the Gr2 blocks and the residual boxes.
pub fn extract_gr2(board: &Board) -> (Gr2Extraction, Vec<Entry>) {
    let pattern = gr2_pattern(board.n, board.eps);
    let mut taken = vec![false; board.len()];
    let mut boxes = Vec::new();
    let mut diff = Vec::new();
    for (pos, m) in pattern {
        let hit = board
            .entries
            .iter()
            .enumerate()
            .find(|(i, e)| !taken[*i] && e.pos() == pos && e.content == Content::sym(m));
        match hit {
            Some((i, e)) => {
                taken[i] = true;
                boxes.push(*e);
            }
            None => {
                let found = board
                    .get(pos)
                    .map(|e| e.content.to_string())
                    .unwrap_or_else(|| "empty".into());
                diff.push((pos, Content::sym(m).to_string(), found));
            }
        }
    }
    let residual: Vec<Entry> = board
        .entries
        .iter()
        .zip(&taken)
        .filter(|(_, t)| !**t)
        .map(|(e, _)| *e)
        .collect();
    let copies = boxes.iter().map(Entry::copies).sum();
    (
        Gr2Extraction {
            found: diff.is_empty(),
            boxes,
            copies,
            diff,
        },
        residual,
    )
}

pub fn starting_board(n: usize, eps: usize, mode: Mode) -> Result<Board> {
    match mode {
        Mode::Fibration => initial_board_fibration(n, eps),
        Mode::Flip => flip_game_board(n, eps),
    }
}

/// Play the scripted game for `(n, eps, mode)`.
pub fn run_game(n: usize, eps: usize, mode: Mode, validate: bool) -> Result<GameResult> {
    check_params(n, eps)?;
    let initial = starting_board(n, eps, mode)?;
    let mut s = Script {
        e: Engine::new(initial.clone(), validate),
        n: n as i64,
        phases: Vec::new(),
    };
    if eps == 0 {
        s.even()?;
    } else {
        s.odd()?;
    }
    let (final_board, log) = s.e.into_parts();
    let (gr2, residual) = extract_gr2(&final_board);
    let residual_f_count: u64 = residual.iter().map(Entry::copies).sum();
    let mut flags = Vec::new();
    if !gr2.found {
        flags.push(Flag::Gr2Missing {
            diff: gr2.diff.clone(),
        });
    }
    if mode == Mode::Fibration {
        let expected = expected_residual(n, eps);
        if residual_f_count != expected {
            flags.push(Flag::ResidualCount {
                expected,
                got: residual_f_count,
            });
        }
    }
    if let Some(pos) = final_board.duplicate_position() {
        flags.push(Flag::DuplicatePosition { pos });
    }
    Ok(GameResult {
        n,
        eps,
        mode,
        validated: validate,
        initial,
        phases: s.phases,
        final_board,
        gr2,
        residual,
        residual_f_count,
        log,
        flags,
    })
}
