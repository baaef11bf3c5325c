//! The experiment drivers behind the command-line tool: spectrum tables,
//! the approximation table, the Example 2 reconstruction and the
//! verification suites. Everything here is deterministic for a fixed config.

pub mod config;
pub mod eigs;
pub mod example2;
pub mod table1;
pub mod verify;

pub use config::{Command, RunConfig};
pub use eigs::{cmd_eigs, SpectrumRow, SpectrumTable, SPECTRUM_HEADER};
pub use example2::{cmd_example2, Example2Report};
pub use table1::cmd_table1;
pub use verify::{cmd_verify, CheckStatus, VerifyReport};
