//! Truncated Taylor jets and the curve catalog.
//!
//! Every curve exposes jets of its coordinates up to order four, which is
//! exactly what the Frenet apparatus in four dimensions consumes.

mod catalog;
mod curve;
mod jet;

pub use catalog::{catalog_spec, CatalogCurve, CATALOG_IDS, SINE_POLE_GUARD};
pub use curve::{
    eval_curve, speed, speed_jet, CurveJet, CurveSource, CurveSpec, Domain, Parameterization,
};
pub use jet::{jet_elementary, Elementary, Jet, ORDER, POLE_GUARD};
