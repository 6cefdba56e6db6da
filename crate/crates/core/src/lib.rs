//! Exact computation of plane-curve Severi degrees `N^{d,delta}` and of the
//! coefficients `Q^{d,delta}` of their formal logarithm, by counting
//! orderings of long-edge graphs.
//!
//! Every quantity is an exact integer or rational. Independent routes are
//! provided wherever one exists: a brute-force ordering enumerator next to
//! the falling-factorial formula, floor diagrams next to long-edge graphs,
//! and the formal logarithm next to the template sum for `Q^{d,delta}`.

pub mod counting;
pub mod enumerate;
pub mod error;
pub mod floor;
pub mod graph;
pub mod polynomial;
pub mod qcalc;
pub mod series;
pub mod util;
pub mod verify;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

pub use counting::{n_graph, n_star, n_star_total, orderings_oracle, severi_degree};
pub use enumerate::{
    allowable_offsets, enumerate_graphs, enumerate_templates, min_allowable_offset,
    GraphEnumerator, TemplateCatalog,
};
pub use error::{DiagramError, Error, GraphError, ParseError, Result};
pub use floor::{enumerate_floor_diagrams, fmcount, DiagramEdge, FloorDiagram};
pub use graph::{Distribution, Edge, LongEdgeGraph, WeightProfile};
pub use polynomial::{interpolate, node_polynomial, q_polynomial, RationalPolynomial};
pub use qcalc::{
    exp_recover_n, q_delta_log, q_delta_templates, q_graph, q_star, sigma, SimpleGraphH,
};

/// Exact nonnegative count.
pub type Count = BigUint;
/// Exact rational value.
pub type Rational = BigRational;
