//! Shared fixtures for the criterion benches.

use curvelab::reference::{constructed_clelia, unit_helix};
use curvelab::{arclength_map, ArclengthMap};

pub fn helix_map() -> ArclengthMap {
    arclength_map(&unit_helix()).expect("helix is regular")
}

pub fn constructed_map() -> ArclengthMap {
    arclength_map(&constructed_clelia(1.0, 0.3).expect("valid construction")).expect("construction is regular")
}

/// `n` cell-centred arclength samples.
pub fn samples(map: &ArclengthMap, n: usize) -> Vec<f64> {
    map.s_domain().cell_centres(n)
}
