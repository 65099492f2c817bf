//! Exact combinatorics of finite convexity spaces: hulls, halfspace
//! separation, Radon/Helly-type invariants, fractional Helly statistics,
//! and the separated-pair pipeline that turns many crossing pairs into
//! certified intersection patterns.

// Points, classes, and matrix rows are addressed by index throughout;
// range loops over those ids are the notation, not an oversight.
#![allow(clippy::needless_range_loop)]

pub mod bk;
pub mod builtins;
pub mod error;
pub mod family;
pub mod fh;
pub mod hypergraph;
pub mod invariants;
pub mod io;
pub mod pipeline;
pub mod pointset;
pub mod selftest;
pub mod simplex;
pub mod space;

pub use bk::{
    bk_embed, verify_certificates, verify_nerve_isomorphism, BkCertificate, BkEmbedding, QuadIneq,
};
pub use builtins::{
    box_lower_bound_family, box_radon_formula, make_box_space, make_explicit_space,
    make_lattice_space, point_in_rational_hull, small_space_catalog,
};
pub use error::{Error, Result};
pub use fh::{
    fh_report, intersecting_k_subsets, max_intersecting_subfamily, optimal_beta, FhReport,
};
pub use hypergraph::{
    count_complete_subhypergraphs, find_complete_subhypergraph, find_complete_subhypergraph_sized,
    largest_complete_subhypergraph, transversals_present, PartiteShape,
};
pub use invariants::{
    compute_invariant_report, dual_shatter_function, dual_vc_dimension, helly_number_direct,
    helly_number_independence, radon_number, radon_partition, vc_dimension, venn_atoms,
    BoundCheck, InvariantReport, RadonValue,
};
pub use family::SetFamily;
pub use pipeline::{
    check_separable_subset, large_separated_pairs, refine_for_any_f, verify_colorful_outcome,
    verify_separated_pair, weak_colorful_run, ColorfulOutcome, LabeledFunction, MTupleWitness,
    RefineOutcome, SeparablePair, SeparatedPair, VennCell, VennCertificate,
};
pub use pointset::PointSet;
pub use selftest::{run_selftest, PropertyResult};
pub use space::{AxiomReport, ConvexitySpace, Halfspace, SeparabilityReport, SpaceKind};
