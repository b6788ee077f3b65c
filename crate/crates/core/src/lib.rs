//! Multiple group racks, their colorings of Y-oriented spatial trivalent
//! graph diagrams, and the invariants built from them.
//!
//! Composition is written left to right: `g.mul(h)` is "first `g`, then
//! `h`", and conjugation is on the right, `g^h = h⁻¹gh`.

pub mod coloring;
pub mod diagram;
pub mod error;
pub mod formats;
pub mod group;
pub mod mgr;
pub mod rack;
pub mod samples;
pub mod suite;

pub use coloring::{
    assert_move_invariance, check_property_star, count_colorings, enumerate_colorings, is_coloring,
    Coloring, StarReport,
};
pub use diagram::{apply_move, connected_sum, is_isomorphic, Diagram, MoveSpec};
pub use error::{Error, Result};
pub use group::{FiniteGroup, Subgroup};
pub use mgr::{CocycleData, MgrReport, MgrViolation, MultipleGroupRack};
pub use rack::{GFamily, Rack};
