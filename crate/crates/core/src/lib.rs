//! Exact rational verification of frustum volume formulas, block dissections
//! and rearrangement certificates.

pub mod catalog;
pub mod cli;
pub mod congruence;
pub mod dehn;
pub mod dissection;
pub mod formulas;
pub mod geometry;
pub mod polytope;
