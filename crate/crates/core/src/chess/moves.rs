use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chess::board::{Board, Content, Entry, Pos};
use crate::error::{Error, Result};
use crate::oracle::ExtQuery;
use crate::schur::{BundleDescriptor, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dir {
    /// First box goes to the end.
    FirstToEnd,
    /// Last box goes to the front.
    LastToFront,
}

/// Atomic moves. Indices refer to the board at the time the move is made.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    /// Exchange boxes `at` and `at + 1`; needs `Ext(left, right) = 0`.
    Swap {
        at: usize,
    },
    /// Mutate one of boxes `at`, `at + 1` past the other; the mover becomes `x`.
    Obscure {
        at: usize,
        mover: Side,
    },
    /// `<S^0_Q, S^{t-1}_{Q+(-t-1,1)}>` becomes `<S^t_{Q-(t,0)}, S^0_Q>` (left)
    /// or `<S^{t-1}_{Q+(-t-1,1)}, S^t_{Q-(t,0)}>` (right).
    Absorb {
        at: usize,
        side: Side,
    },
    Split {
        at: usize,
    },
    Merge {
        at: usize,
        len: usize,
    },
    /// Row of `N` zero boxes starting at `at`, rotated by the row's Serre functor.
    RowSerre {
        at: usize,
        dir: Dir,
    },
    /// Whole board rotated by the Serre functor, twist `(1, N-2)`.
    GlobalSerre {
        dir: Dir,
    },
}

impl Move {
    pub fn name(&self) -> &'static str {
        match self {
            Move::Swap { .. } => "swap",
            Move::Obscure { .. } => "obscure",
            Move::Absorb { .. } => "absorb",
            Move::Split { .. } => "split",
            Move::Merge { .. } => "merge",
            Move::RowSerre { .. } => "row_serre",
            Move::GlobalSerre { .. } => "global_serre",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Want {
    Zero,
    PointInDegreeOne,
}

impl Want {
    fn holds(&self, v: &Verdict) -> bool {
        match (self, v) {
            (_, Verdict::Indeterminate) => false,
            (Want::Zero, Verdict::Determinate(g)) => g.is_zero(),
            (Want::PointInDegreeOne, Verdict::Determinate(g)) => g.is_point_in(1),
        }
    }
}

impl fmt::Display for Want {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Want::Zero => write!(f, "0"),
            Want::PointInDegreeOne => write!(f, "C[-1]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub query: String,
    pub want: Want,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEntry {
    pub phase: String,
    #[serde(flatten)]
    pub mv: Move,
    pub positions: Vec<Pos>,
    pub oracle: Vec<OracleCheck>,
    pub verdict: String,
    pub copies_before: u64,
    pub copies_after: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveLog(pub Vec<LogEntry>);

impl MoveLog {
    pub fn moves(&self) -> Vec<Move> {
        self.0.iter().map(|e| e.mv).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn oracle_checks(&self) -> usize {
        self.0.iter().map(|e| e.oracle.len()).sum()
    }
}

fn refused<T>(kind: &str, reason: impl Into<String>) -> Result<T> {
    Err(Error::Refused {
        kind: kind.into(),
        reason: reason.into(),
    })
}

/// Board plus log; applies atomic and composite moves.
#[derive(Debug, Clone)]
pub struct Engine {
    board: Board,
    log: MoveLog,
    validate: bool,
    phase: String,
    cache: HashMap<ExtQuery, Verdict>,
}

impl Engine {
    pub fn new(board: Board, validate: bool) -> Self {
        Self {
            board,
            log: MoveLog::default(),
            validate,
            phase: String::new(),
            cache: HashMap::new(),
        }
    }

    pub fn board(&self) -> &Board {
        &self.board
    }

    pub fn log(&self) -> &MoveLog {
        &self.log
    }

    pub fn into_parts(self) -> (Board, MoveLog) {
        (self.board, self.log)
    }

    pub fn validating(&self) -> bool {
        self.validate
    }

    pub fn set_phase(&mut self, phase: impl Into<String>) {
        self.phase = phase.into();
    }

    pub fn phase(&self) -> &str {
        &self.phase
    }

    pub fn distinct_queries(&self) -> usize {
        self.cache.len()
    }

    fn query(
        &mut self,
        src: BundleDescriptor,
        tgt: BundleDescriptor,
        want: Want,
    ) -> Result<OracleCheck> {
        let q = ExtQuery::new(src, tgt, self.board.mode.space())?.normalized();
        let v = match self.cache.get(&q) {
            Some(v) => v.clone(),
            None => {
                let v = q.eval()?;
                self.cache.insert(q, v.clone());
                v
            }
        };
        let check = OracleCheck {
            query: q.to_string(),
            want,
            got: v.to_string(),
        };
        if !want.holds(&v) {
            return refused(
                "oracle",
                format!("{} = {}, expected {}", check.query, check.got, want),
            );
        }
        Ok(check)
    }

    fn entry(&self, i: usize, kind: &str) -> Result<Entry> {
        match self.board.entries.get(i) {
            Some(e) => Ok(*e),
            None => refused(
                kind,
                format!("no box at index {i} (board has {})", self.board.len()),
            ),
        }
    }

    pub fn apply(&mut self, mv: Move) -> Result<()> {
        let before = self.board.copies();
        let (positions, oracle) = self.execute(mv)?;
        let after = self.board.copies();
        assert_eq!(before, after, "copy-count changed by {mv:?}");
        self.log.0.push(LogEntry {
            phase: self.phase.clone(),
            mv,
            positions,
            oracle,
            verdict: if self.validate {
                "confirmed".into()
            } else {
                "unchecked".into()
            },
            copies_before: before,
            copies_after: after,
        });
        Ok(())
    }

    fn execute(&mut self, mv: Move) -> Result<(Vec<Pos>, Vec<OracleCheck>)> {
        let big_n = self.board.big_n();
        let mut checks = Vec::new();
        let positions = match mv {
            Move::Swap { at } => {
                let a = self.entry(at, "swap")?;
                let b = self.entry(at + 1, "swap")?;
                if a.content.is_opaque() || b.content.is_opaque() {
                    return refused("swap", format!("{a} or {b} is opaque"));
                }
                if self.validate {
                    for pa in a.pieces(big_n)? {
                        for pb in b.pieces(big_n)? {
                            checks.push(self.query(pa, pb, Want::Zero)?);
                        }
                    }
                }
                self.board.entries.swap(at, at + 1);
                vec![a.pos(), b.pos()]
            }
            Move::Obscure { at, mover } => {
                let a = self.entry(at, "obscure")?;
                let b = self.entry(at + 1, "obscure")?;
                let m = match mover {
                    Side::Left => at,
                    Side::Right => at + 1,
                };
                let e = &mut self.board.entries[m];
                e.content = Content::Opaque { copies: e.copies() };
                self.board.entries.swap(at, at + 1);
                vec![a.pos(), b.pos()]
            }
            Move::Absorb { at, side } => {
                let q = self.entry(at, "absorb")?;
                let r = self.entry(at + 1, "absorb")?;
                let Content::Block { lo: 0, hi: 0 } = q.content else {
                    return refused("absorb", format!("left box {q} is not S0"));
                };
                let Content::Block { lo, hi } = r.content else {
                    return refused("absorb", format!("right box {r} is opaque"));
                };
                if lo != hi {
                    return refused("absorb", format!("right box {r} is not a single piece"));
                }
                let t = lo as i64 + 1;
                if r.pos() != (q.x - t - 1, q.y + 1) {
                    return refused(
                        "absorb",
                        format!(
                            "{r} is not at relative twist (-{},1) from {q}; absorb needs r = t-1",
                            t + 1
                        ),
                    );
                }
                if self.validate {
                    let src = q.pieces(big_n)?[0];
                    let tgt = r.pieces(big_n)?[0];
                    checks.push(self.query(src, tgt, Want::PointInDegreeOne)?);
                }
                let landed = Entry::new(q.x - t, q.y, Content::piece(t as u32));
                let pair = match side {
                    Side::Left => [landed, q],
                    Side::Right => [r, landed],
                };
                self.board.entries[at] = pair[0];
                self.board.entries[at + 1] = pair[1];
                vec![q.pos(), r.pos()]
            }
            Move::Split { at } => {
                let e = self.entry(at, "split")?;
                let Content::Block { lo, hi } = e.content else {
                    return refused("split", format!("{e} is opaque"));
                };
                let pieces: Vec<Entry> = (lo..=hi)
                    .map(|k| Entry::new(e.x, e.y, Content::piece(k)))
                    .collect();
                self.board.entries.splice(at..=at, pieces);
                vec![e.pos()]
            }
            Move::Merge { at, len } => {
                if len == 0 || at + len > self.board.len() {
                    return refused("merge", format!("range {at}..{} out of bounds", at + len));
                }
                let run = &self.board.entries[at..at + len];
                let first = run[0];
                let mut next = match first.content {
                    Content::Block { lo, .. } => lo,
                    Content::Opaque { .. } => {
                        return refused("merge", format!("{first} is opaque"))
                    }
                };
                let lo0 = next;
                for e in run {
                    match e.content {
                        Content::Block { lo, hi } if lo == next && e.pos() == first.pos() => {
                            next = hi + 1
                        }
                        _ => {
                            return refused(
                                "merge",
                                format!("{e} does not continue the block at {:?}", first.pos()),
                            )
                        }
                    }
                }
                let merged = Entry::new(
                    first.x,
                    first.y,
                    Content::Block {
                        lo: lo0,
                        hi: next - 1,
                    },
                );
                self.board.entries.splice(at..at + len, [merged]);
                vec![first.pos()]
            }
            Move::RowSerre { at, dir } => {
                let len = big_n;
                if at + len > self.board.len() {
                    return refused("row_serre", "row runs past the end of the board");
                }
                let row = &self.board.entries[at..at + len];
                let (x0, y0) = row[0].pos();
                let ok = row
                    .iter()
                    .enumerate()
                    .all(|(k, e)| e.content.is_zero() && e.pos() == (x0 + k as i64, y0));
                if !ok {
                    return refused(
                        "row_serre",
                        format!("boxes from index {at} are not a full row of zeros"),
                    );
                }
                let shift = big_n as i64;
                match dir {
                    Dir::LastToFront => {
                        let mut e = self.board.entries.remove(at + len - 1);
                        e.x -= shift;
                        self.board.entries.insert(at, e);
                    }
                    Dir::FirstToEnd => {
                        let mut e = self.board.entries.remove(at);
                        e.x += shift;
                        self.board.entries.insert(at + len - 1, e);
                    }
                }
                vec![(x0, y0)]
            }
            Move::GlobalSerre { dir } => {
                if self.board.is_empty() {
                    return refused("global_serre", "empty board");
                }
                let (dx, dy) = (1, big_n as i64 - 2);
                match dir {
                    Dir::FirstToEnd => {
                        let mut e = self.board.entries.remove(0);
                        let p = e.pos();
                        e.x += dx;
                        e.y += dy;
                        self.board.entries.push(e);
                        vec![p]
                    }
                    Dir::LastToFront => {
                        let mut e = self.board.entries.pop().expect("nonempty");
                        let p = e.pos();
                        e.x -= dx;
                        e.y -= dy;
                        self.board.entries.insert(0, e);
                        vec![p]
                    }
                }
            }
        };
        Ok((positions, checks))
    }

    /// Index of the unique box at `pos`.
    pub fn index_of(&self, pos: Pos) -> Result<usize> {
        match self.board.positions(pos).as_slice() {
            [i] => Ok(*i),
            [] => Err(self.pattern(format!("no box at {pos:?}"))),
            many => Err(self.pattern(format!("{} boxes at {pos:?}", many.len()))),
        }
    }

    fn piece_index(&self, pos: Pos, k: u32) -> Result<usize> {
        self.board
            .entries
            .iter()
            .position(|e| e.pos() == pos && e.content == Content::piece(k))
            .ok_or_else(|| self.pattern(format!("no piece S{k} at {pos:?}")))
    }

    pub(crate) fn pattern(&self, detail: String) -> Error {
        Error::Pattern {
            phase: self.phase.clone(),
            detail,
        }
    }

    /// Swap two adjacent boxes given by position.
    pub fn transpose(&mut self, a: Pos, b: Pos) -> Result<()> {
        let i = self.index_of(a)?;
        let j = self.index_of(b)?;
        if j != i + 1 {
            return refused(
                "swap",
                format!("{a:?} is not immediately followed by {b:?}"),
            );
        }
        self.apply(Move::Swap { at: i })
    }

    /// Absorb the box at `s` into the zero box at `t` immediately before it.
    pub fn absorb(&mut self, t: Pos, s: Pos, side: Side) -> Result<()> {
        let i = self.index_of(t)?;
        let j = self.index_of(s)?;
        if j != i + 1 {
            return refused(
                "absorb",
                format!("{t:?} is not immediately followed by {s:?}"),
            );
        }
        self.apply(Move::Absorb { at: i, side })
    }

    /// Rotate the full row `y` by its Serre functor `steps` times.
    pub fn serre_translate(&mut self, y: i64, dir: Dir, steps: usize) -> Result<()> {
        for _ in 0..steps {
            let at = self
                .board
                .entries
                .iter()
                .position(|e| e.y == y)
                .ok_or_else(|| Error::Domain(format!("no row {y}")))?;
            self.apply(Move::RowSerre { at, dir })?;
        }
        Ok(())
    }

    /// Box at `from` mutated rightwards past the next `count` boxes.
    pub fn obscure_right(&mut self, from: Pos, count: usize) -> Result<()> {
        let start = self.index_of(from)?;
        for at in start..start + count {
            self.apply(Move::Obscure {
                at,
                mover: Side::Left,
            })?;
        }
        Ok(())
    }

    /// Every box after `pos` mutated leftwards past it, leaving it last.
    pub fn obscure_rest_past(&mut self, pos: Pos) -> Result<()> {
        let mut i = self.index_of(pos)?;
        while i + 1 < self.board.len() {
            self.apply(Move::Obscure {
                at: i,
                mover: Side::Right,
            })?;
            i += 1;
        }
        Ok(())
    }

    fn zero_run(&self, start: usize, origin: Pos) -> usize {
        let mut l = 0;
        while let Some(e) = self.board.entries.get(start + l + 1) {
            if e.content.is_zero() && e.pos() == (origin.0 + l as i64 + 1, origin.1) {
                l += 1;
            } else {
                break;
            }
        }
        l
    }

    fn expect_block(&self, at: usize, pos: Pos, top: u32, rule: &str) -> Result<()> {
        match self.board.entries.get(at) {
            Some(e) if e.pos() == pos && e.content == Content::sym(top) => Ok(()),
            Some(e) => refused(
                rule,
                format!("expected A{top}@{pos:?} at index {at}, found {e}"),
            ),
            None => refused(
                rule,
                format!("expected A{top}@{pos:?} at index {at}, board ends"),
            ),
        }
    }

    /// `<A^0_o, S^0_{o+(1,0)}, .., S^0_{o+(l,0)}, A^{r-1}_{o+(-1,1)}>` becomes
    /// `<A^r_o, S^0_{o+(1,0)}, .., S^0_{o+(l,0)}>`.
    pub fn rule1(&mut self, origin: Pos, r: u32) -> Result<()> {
        let (ox, oy) = origin;
        let s = self.index_of(origin)?;
        if !self.board.entries[s].content.is_zero() {
            return refused("rule1", format!("origin {origin:?} is not a zero box"));
        }
        let l = self.zero_run(s, origin);
        let (n, eps) = (self.board.n, self.board.eps);
        if r == 0 || r as usize > l || l > 2 * n - 3 + eps || r as usize > n - 1 {
            return refused(
                "rule1",
                format!("bounds fail: r={r}, l={l}, n={n}, eps={eps}"),
            );
        }
        let lower = (ox - 1, oy + 1);
        self.expect_block(s + l + 1, lower, r - 1, "rule1")?;
        if r > 1 {
            self.apply(Move::Split { at: s + l + 1 })?;
        }
        for m in 0..r {
            let mut p = self.piece_index(lower, m)?;
            for _ in (m as usize + 2)..=l {
                self.apply(Move::Swap { at: p - 1 })?;
                p -= 1;
            }
            self.apply(Move::Absorb {
                at: p - 1,
                side: Side::Left,
            })?;
        }
        for k in 2..=r {
            let mut q = self.piece_index(origin, k)?;
            for _ in 1..k {
                self.apply(Move::Swap { at: q - 1 })?;
                q -= 1;
            }
        }
        self.apply(Move::Merge {
            at: s,
            len: r as usize + 1,
        })
    }

    /// `<S^0_{o}, .., S^0_{o+(t,0)}, A^{r-1}_{o+(-1,1)}>` becomes
    /// `<A^{r-1}_{o+(-1,1)}, A^{min(r,t)}_o, S^0_{o+(r+1,0)}, .., S^0_{o+(t,0)}>`.
    pub fn rule2(&mut self, origin: Pos, t: u32, r: u32) -> Result<()> {
        let (ox, oy) = origin;
        let s = self.index_of(origin)?;
        if !self.board.entries[s].content.is_zero() {
            return refused("rule2", format!("origin {origin:?} is not a zero box"));
        }
        let l = self.zero_run(s, origin);
        if l != t as usize {
            return refused(
                "rule2",
                format!(
                    "row of zeros has length {}, expected t+1 = {}",
                    l + 1,
                    t + 1
                ),
            );
        }
        let n = self.board.n as u32;
        if r == 0 || t + 1 < r || r > n {
            return refused("rule2", format!("bounds fail: r={r}, t={t}, n={n}"));
        }
        let lower = (ox - 1, oy + 1);
        self.expect_block(s + l + 1, lower, r - 1, "rule2")?;
        if r > 1 {
            self.apply(Move::Split { at: s + l + 1 })?;
        }
        for m in 0..r {
            let mut p = self.piece_index(lower, m)?;
            for _ in (m + 2)..=t {
                self.apply(Move::Swap { at: p - 1 })?;
                p -= 1;
            }
            if m < t {
                self.apply(Move::Absorb {
                    at: p - 1,
                    side: Side::Right,
                })?;
                p -= 1;
            }
            while p > 0 && self.board.entries[p - 1].pos() == origin {
                self.apply(Move::Swap { at: p - 1 })?;
                p -= 1;
            }
        }
        let p0 = self.piece_index(lower, 0)?;
        if r > 1 {
            self.apply(Move::Merge {
                at: p0,
                len: r as usize,
            })?;
        }
        let top = r.min(t);
        if top > 0 {
            self.apply(Move::Merge {
                at: p0 + 1,
                len: top as usize + 1,
            })?;
        }
        Ok(())
    }
}

/// Re-run the moves of `log` from `initial` without oracle checks.
pub fn replay(initial: &Board, log: &MoveLog) -> Result<Board> {
    let mut e = Engine::new(initial.clone(), false);
    for entry in &log.0 {
        e.set_phase(entry.phase.clone());
        e.apply(entry.mv)?;
    }
    Ok(e.board)
}
