//! Two-dimensional subshifts of finite type at desk scale.
//!
//! Patterns and lattices live in [`lattice`]; SFT presentations in [`sft`];
//! bounded search in [`solver`]; finitely described configurations in
//! [`schema`]; the pattern pre-order and Cantor-Bendixson ranks in [`order`];
//! period-constrained SFT compilation in [`construct`]; worked examples in
//! [`gallery`]; images in [`render`].

pub mod construct;
pub mod error;
pub mod gallery;
pub mod lattice;
pub mod literal;
pub mod order;
pub mod render;
pub mod schema;
pub mod sft;
pub mod solver;

pub use error::{Error, Result};
pub use lattice::{Alphabet, Cells, Coord, Extent, Lattice, Pattern, Rect, Symbol};
pub use sft::{locally_admissible, ForbiddenSet, PairRule, SftPresentation};
