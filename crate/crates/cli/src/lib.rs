//! Library surface of the command-line frontend: the serializable report
//! row and the text/CSV/JSON renderers. Kept as a library so integration
//! tests can parse the binary's output back into typed values.

pub mod report;
