//! Verification toolkit for finite CAT(0) cube complexes given as pocsets
//! of halfspaces: Sageev duality, medians, the median cocycle, group
//! actions, balanced measures, tournaments and Appendix B predicates.

// Halfspace and hyperplane ids are indices into several parallel tables at once.
#![allow(clippy::needless_range_loop)]

pub mod action;
pub mod bits;
pub mod boundary;
pub mod cocycle;
pub mod complex;
pub mod doc;
pub mod generate;
pub mod measure;
pub mod pocset;
pub mod tournament;
pub mod verify;
