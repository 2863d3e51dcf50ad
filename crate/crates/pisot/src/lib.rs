//! File formats, reports and figures for `pisot-core`, plus the pieces of the
//! command-line front end that are worth testing on their own.

pub mod beta;
pub mod format;
pub mod report;
pub mod shared;
pub mod spec_file;
pub mod svg;
pub mod table;

pub use shared::SharedPrefixStream;
pub use spec_file::{load_spec, parse_spec, write_spec, SpecError};
