//! Exact computations on signed ribbon graphs: partial duals, the signed
//! Bollobás–Riordan polynomial, and the homfly polynomial of the link
//! diagram a ribbon graph carries.

pub mod arrow;
pub mod brpoly;
pub mod dual;
pub mod enumerate;
pub mod error;
pub mod generate;
pub mod homfly;
pub mod io;
pub mod iso;
pub mod laurent;
pub mod quad;
pub mod ribbon;

pub use arrow::{from_arrow_presentation, to_arrow_presentation, Arrow, ArrowPresentation, Direction};
pub use brpoly::{
    br_polynomial, br_polynomial_parallel, br_potts, duality_side, potts_substitution, restrict_to_surface, states,
    tutte_oracle, tutte_specialization, verify_duality, StateTerm, BR_VARS, POTTS_VARS, SURFACE_VARS, TUTTE_VARS,
};
pub use dual::{geometric_dual, partial_dual};
pub use enumerate::{enumerate_graphs, realize_polynomial};
pub use error::{Error, Result};
pub use generate::{named, random_graph, random_plane_graph, Family, GenParams};
pub use homfly::{
    homfly_resolution, homfly_state_sum, homfly_state_terms, verify_link_duality, verify_transfer, HomflyPoly,
    ResolutionWeights, HOMFLY_VARS,
};
pub use io::{parse_ap, parse_rg, parse_rg_many, serialize_ap, serialize_rg};
pub use iso::is_isomorphic;
pub use laurent::LaurentPoly;
pub use quad::{QuadField, QuadValue};
pub use ribbon::{Edge, EdgeSubset, GraphStats, RibbonGraph, Sign, Vertex};
