//! Computational toolkit for snowflake groups: free-group words, finite
//! presentations, coset enumeration, HNN word problems, equitable sets and
//! Dehn area estimates.

pub mod coset;
pub mod dehn;
pub mod equitable;
pub mod hnn;
pub mod presentations;
pub mod report;
pub mod words;
