//! Rectifying spacelike curves: position components, the curvature
//! characterization and its fit, the constant-vector test, the check
//! battery, and construction from curves on H₀³(1).

mod components;
mod construct;
mod fit;
pub mod lsq;
mod report;
mod sphere;
mod witness;

pub use components::{component_functions, rectifying_residual, ComponentTriple};
pub use construct::{
    construct_rectifying, radial_rectifying_residual, rho_ode_residual, ConstructionParams, RadialLaw, SPHERE_TOL,
};
pub use fit::{
    constant_vector_x, fit_curvature_relation, integrate_kappa3, FitSamples, Kappa3Integral, CurvatureFit, MIN_FIT_SAMPLES,
};
pub use report::{
    rectifying_report, BinormalComponents, CurveInfo, DistanceQuadratic, NormalConstancy, RectifyingReport,
    TangentialLinear, PositionChecks, Tolerances,
};
pub use sphere::{center_at, spherical_center, SphericalCenter, CENTER_TOL};
pub use witness::{best_origin_shift, non_rectifying_witness, NonRectifyingWitness, OriginShift, WitnessGrid};
