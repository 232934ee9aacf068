//! Arclength reparameterization, Frenet frames in E₁⁴, and curve synthesis
//! from curvature profiles.

mod apparatus;
mod arclength;
mod profile;
mod synthesis;

pub use apparatus::{
    frenet_apparatus, frenet_apparatus_with, frenet_from_jet, frenet_ode_residual, Frame, FrenetData,
    FrenetOptions, FrenetSystem, CURVATURE_FLOOR, FRAME_TOL, NULL_TOL,
};
pub use arclength::{arclength_map, derivatives_by_arclength, ArclengthMap, REPARAM_TOL};
pub use profile::{CurvatureProfile, ScalarFn};
pub use synthesis::{
    synthesize_curve, Synthesis, SynthesisOptions, GENERIC_ID, INIT_FRAME_TOL, SYNTH_TOL,
};
