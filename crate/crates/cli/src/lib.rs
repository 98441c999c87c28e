//! File formats and output documents for the `spcut` binary.

pub mod format;
pub mod output;
