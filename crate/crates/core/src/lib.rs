#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` deliberately rejects NaN

pub mod bergman;
pub mod cli;
pub mod closed_forms;
pub mod error;
pub mod hardy;
pub mod harness;
pub mod matrix;
pub mod special;
pub mod wlft;

pub use error::{Error, Result};
