//! Library surface of the `sandwich` command-line tool: document types,
//! the pipeline runner, the check registry, and the scan utility. The
//! binary in `main.rs` is a thin argument-parsing shell over these.

pub mod bundle;
pub mod checks;
pub mod json;
pub mod report;
pub mod scan;
