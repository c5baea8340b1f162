//! Orthogonal Vectors instances and their reductions to Fréchet problems.

pub mod gadgets;
pub mod gap;
mod instance;

pub use gadgets::{
    build_discrete_reduction, build_full_reduction, build_partial_reduction, build_plus_gadget, build_star_gadget,
    build_vector_gadget, build_weak_continuous_2d, build_weak_discrete_1d, subdivide_for_discrete, Construction,
    GadgetCurvePair, Side,
};
pub use gap::{
    default_cases, random_cases, run_campaign, verify_instance, CampaignCase, GapReport, DEFAULT_CONSTRUCTIONS, DENSITIES,
    NO_BOUND, YES_BOUND,
};
pub use instance::{bits_to_string, OvInstance, TrivialityClass, DEFAULT_CONSTANT_D_THRESHOLD};
