//! Chessboard rewriting: boxes of symmetric-power blocks, their mutations
//! and the scripted games.

pub mod board;
pub mod game;
pub mod moves;

pub use board::{
    flip_game_board, initial_board_fibration, initial_board_flip, Board, Content, Entry, Mode, Pos,
};
pub use game::{extract_gr2, run_game, Flag, GameResult, Gr2Extraction};
pub use moves::{replay, Dir, Engine, Move, MoveLog, Side};
