//! Bijections, counting formulas and exact samplers for bipolar-oriented
//! planar maps and their Schnyder-wood relatives.

pub mod error;
pub mod io;
pub mod bipolar;
pub mod config;
pub mod counting;
pub mod enumerate;
pub mod map;
pub mod rerooting;
pub mod sampling;
pub mod schnyder;
pub mod slitslidesew;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
pub use map::{alpha, edge_of, CanonicalCode, CombMap, Dart, Edge, Face, Vertex};
pub use bipolar::{BipolarMap, EdgeClass, EdgeKind, PathStart, RightmostPath};
