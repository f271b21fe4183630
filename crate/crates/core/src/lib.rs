//! Knowledge graph profiling and overlap estimation.
//!
//! The pipeline reads N-Triples dumps ([`rdf`]), builds a dictionary-encoded
//! index ([`index`]), computes graph-level and per-class statistics
//! ([`profile`], [`class_detail`]), discovers candidate identity links between
//! two graphs ([`linker`]) and turns their precision and recall against known
//! links into an estimate of the true overlap ([`overlap`]). [`report`] holds
//! the sunburst and heatmap emitters.

pub mod class_detail;
pub mod index;
pub mod linker;
pub mod overlap;
pub mod profile;
pub mod rdf;
pub mod report;
pub mod vocab;
