//! Trees with boundary and their first Dirichlet eigenvalue.

pub mod canon;
pub mod error;
pub mod extremal;
pub mod json;
pub mod oracle;
pub mod ordering;
pub mod rearrange;
pub mod rooted;
pub mod sequence;
pub mod spectral;
pub mod tree;

pub use canon::{canonical_form, is_isomorphic, CanonicalCode};
pub use error::{Error, Result};
pub use extremal::{
    build_comet, build_relaxed_minimizer, build_slo_star_tree, build_td_minimizer, predicted_dcirc,
    predicted_minimizer, td_minimizer_sequence, ClassSpec, OrderedTree,
};
pub use oracle::{
    brute_force_minimizer, enumerate_class, enumerate_trees, verify_theorem, ClassCensus, Report, Theorem,
};
pub use ordering::{check_slo, is_slo_star_tree, Axiom, SloCheck, VertexOrdering};
pub use rearrange::{
    apply_shift, apply_switch, majorize_normalize, normalize_to_slo, normalize_to_slo_star, shift_delta,
    switch_delta, Move, Normalized, RearrangeTrace, ShiftMove, SwitchMove,
};
pub use sequence::{compare_sequences, DegreeSequence, Majorization};
pub use spectral::{first_eigenpair, rayleigh_quotient, DirichletEigenpair};
pub use tree::{parse_tree, TreeWithBoundary, Vertex};
