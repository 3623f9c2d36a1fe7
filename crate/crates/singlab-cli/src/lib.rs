//! Report-document types shared between the `singlab` binary and its tests.

pub mod report;
