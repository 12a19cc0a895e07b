//! Binary matroid computation: bit-packed GF(2) linear algebra, minors,
//! isomorphism via canonical keys, Tutte connectivity, generators for the
//! named matroids and recursive families, and splitter-style extension
//! enumeration with excluded-minor filtering.

pub mod connectivity;
pub mod error;
pub mod families;
pub mod gf2;
pub mod minor;
pub mod search;
pub mod iso;
pub mod matroid;

pub use error::{Error, Result};
pub use gf2::{Gf2Matrix, Gf2Vector};
pub use matroid::{BinaryMatroid, ElementId, FamilyLabeling};
