//! Finite crossed modules of monoids and their equivalent presentations:
//! actions, split epimorphisms, reflexive graphs and internal categories
//! over a fixed finite object set.

pub mod cli;
pub mod distlaw;
pub mod document;
pub mod equivalences;
pub mod fincat;
pub mod maps;
pub mod oracle;
pub mod report;
pub mod span;
pub mod witness;

pub use distlaw::{ActionSystem, DistLawMap, Semidirect, SplitEpiPair};
pub use document::{Document, Kind, Payload};
pub use fincat::{FinCat, Functor, Mor, Obj};
pub use report::OracleReport;
pub use span::{ObjSet, Span};
pub use witness::Witness;
