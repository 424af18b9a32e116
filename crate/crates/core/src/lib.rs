//! Borel-Weil-Bott on F(1,2,N), Ext computations on its (1,1) divisor and
//! the chessboard game that mutates exceptional collections there.

pub mod chern;
pub mod chess;
pub mod error;
pub mod interface;
pub mod oracle;
pub mod schur;
pub mod weights;

pub use chess::{run_game, Board, GameResult, Mode};
pub use error::{Error, Result};
pub use oracle::{ExtQuery, LemmaId, LemmaReport, Space};
pub use schur::{BundleDescriptor, Verdict};
pub use weights::{CohomResult, GradedDims, Regularized, Weight};
