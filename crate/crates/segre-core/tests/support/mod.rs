//! Shared helpers for the integration test suite: an independent oracle and
//! fixture constructors for the standard test instances.

#![allow(dead_code)]

pub mod fixtures;
pub mod oracle;
