//! Fusion systems on finite p-groups and their realization inside finite
//! groups through left semicharacteristic bisets.
//!
//! The pipeline runs bottom-up: [`group`] supplies exact Cayley-table
//! arithmetic, [`fusion`] closes fusion systems from generators, [`biset`]
//! works in the rational Burnside ring of `S x S` and repairs stability,
//! and [`realization`] decides the fusion induced by the automorphism group
//! of the resulting biset without ever building that group.

pub mod biset;
pub mod catalog;
pub mod error;
pub mod fusion;
pub mod group;
pub mod realization;

pub use error::{Axiom, Error, Result};
