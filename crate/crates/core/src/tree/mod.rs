//! Finite realizations of rooted non-metric trees.
//!
//! A [`TreeSkeleton`] is a finite tree with positive rational edge lengths;
//! the ambient tree is its geometric realization, whose points are
//! [`Point`]s. Orders, meets and segments are computed exactly.

mod lca;
pub mod order;
pub mod parse;
pub mod point;
pub mod segment;
pub mod skeleton;

pub use order::{reroot, OrderError, OrderView};
pub use parse::{parse_tree, ParseError};
pub use point::{Point, PointError, RawPoint};
pub use segment::{point_on_segment, segment, PathArc, PathRepr};
pub use skeleton::{Edge, EdgeId, TreeError, TreeSkeleton, VertexId};
