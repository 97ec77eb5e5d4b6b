//! Genus-zero equivariant Gromov-Witten theory of toric targets by
//! localization on the space of stable maps.

mod engine;
mod factors;
mod graph;
mod operators;
mod psi;

pub use engine::{Leg, LegKind, Series};
pub use factors::{edge_factor, flag_factor, vertex_factor};
pub use graph::{enumerate_loc_graphs, LocEdge, LocGraph};
pub use operators::{
    class_from_poly, descendant_invariant, descendant_series, divisor_class, indicator, mirror_transformed_j,
    point_class, s_operator_column, shifted_descendant_series, small_j, small_j_restricted, unit_class, v_operator, GwInvariant, Insertion,
};
pub use psi::{psi_integral, vertex_integral};
