//! Numerical toolkit for rectifying spacelike curves in Minkowski space-time E₁⁴.

pub mod error;
pub mod frenet;
pub mod jets;
pub mod lorentz;
pub mod quadrature;
pub mod rectifying;
pub mod reference;

pub use error::{Error, Result};
pub use frenet::{
    arclength_map, derivatives_by_arclength, frenet_apparatus, frenet_ode_residual, synthesize_curve,
    ArclengthMap, CurvatureProfile, Frame, FrenetData, FrenetOptions, FrenetSystem, Synthesis, SynthesisOptions,
};
pub use jets::{catalog_spec, eval_curve, speed, CatalogCurve, CurveJet, CurveSpec, Domain, Jet, Parameterization};
pub use lorentz::{causal_character, minkowski_dot, on_hyperbolic_sphere, pseudo_norm, CausalCharacter, Vec4};
pub use rectifying::{
    component_functions, construct_rectifying, constant_vector_x, fit_curvature_relation, integrate_kappa3,
    rectifying_residual, rho_ode_residual, spherical_center, rectifying_report, ComponentTriple,
    ConstructionParams, RectifyingReport, SphericalCenter, CurvatureFit, Tolerances,
};
