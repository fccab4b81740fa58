//! File formats, thread fan-out and the command line front end for
//! `budlaw-core`.

pub mod cli;
pub mod fanout;
pub mod json;
