//! Fact files, JSON reports, experiments and the command-line front end
//! for `ordembed-core`.

pub mod cli;
pub mod experiments;
pub mod facts;
pub mod report;
