//! File formats, random instance generation, and the experiment
//! harness behind the `fai` binary.

pub mod experiments;
pub mod formats;
pub mod randgen;
