//! Exact combinatorics of spherical systems over adjoint semisimple groups
//! whose root system is a product of type A and type D components.
//!
//! The crate provides the root-system layer, exact rational feasibility
//! solvers and Hilbert-basis completion, validation of spherical systems,
//! colours and distinguished subsets, quotients and localizations, the
//! reduction pipeline to primitive systems, enumeration of all systems over
//! a group, and diagram rendering.

pub mod classify;
pub mod error;
pub mod format;
pub mod lattice;
pub mod luna;
pub mod quotient;
pub mod reduction;
pub mod rootsys;
pub mod system;

pub use classify::{
    all_groups_up_to_rank, brute_force_systems, enumerate_systems, invariants, EnumerateOptions,
    Invariants,
};
pub use error::{Error, Result};
pub use format::{parse_system_file, serialize_system};
pub use lattice::{Int, Rat};
pub use luna::{
    layout, render_svg, render_text, CircleSlot, CircleStyle, DiagramLayout, RootGlyph, RootMark,
    Side,
};
pub use quotient::{
    affine_test, direct_factors, fiber_product_decompositions, is_distinguished, is_rigid,
    localize, localize_s, localize_sigma, parabolic_induction_base, projective_elements,
    quotient_by, quotient_by_projective, DirectFactor, DistinguishedReport, QuotientTriple,
};
pub use reduction::{
    analyze_component, component_colours, decompose_by_lemma, is_comb, is_primitive, reduce,
    strong_components, strongly_adjacent, ComponentAnalysis, ComponentStatus, PrimitiveVerdict,
    ReductionNode, ReductionStep, ReductionTree, StepKind,
};
pub use rootsys::{build_root_system, parse_group_spec, CompKind, Component, RootSystem, WeightVector};
pub use system::{
    build_colours, canonical_key, spherical_roots_of_group, systems_equal_up_to_automorphism,
    validate, AElement, AxiomCheck, Colour, ColourKind, ColourSet, RootKind, SphericalRoot,
    SphericalSystem, ValidationReport,
};
