//! Library surface of the command-line front end: the manifest language,
//! report rendering, and the property-verification suite.

pub mod dsl;
pub mod report;
pub mod verify;
