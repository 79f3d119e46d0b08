//! Front end for `trinotool-core`: reducibility scans with a resumable cache,
//! convergence tables, and the `trinotool` command line.

pub mod cache;
pub mod cli;
pub mod converge;
pub mod output;
pub mod record;
pub mod scan;
