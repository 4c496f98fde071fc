//! File formats, the benchmark suite, timing and reports for the
//! `molemod-core` planner. The `molemod` binary wraps these.

pub mod bench;
pub mod plan_io;
pub mod scenario_io;
pub mod suite;
