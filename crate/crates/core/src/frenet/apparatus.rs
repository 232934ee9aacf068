use serde::{Deserialize, Serialize};

use super::arclength::ArclengthMap;
use crate::error::{Error, Result};
use crate::jets::CurveJet;
use crate::lorentz::Vec4;

/// Relative floor below which a curvature counts as zero.
pub const CURVATURE_FLOOR: f64 = 1e-10;
/// `|g(R, R)| < NULL_TOL · ‖R‖²_E` marks a residual as lightlike.
pub const NULL_TOL: f64 = 1e-10;
/// Tolerance on the ten Gram conditions of an extracted frame.
pub const FRAME_TOL: f64 = 1e-8;

/// The coefficient matrix of the Frenet system
///
/// ```text
/// T'  =          κ₁N
/// N'  = −κ₁T          + κ₂B₁
/// B₁' =       −εκ₂N          + κ₃B₂
/// B₂' =                 κ₃B₁
/// ```
///
/// `flip_b1_normal` negates the `−εκ₂` entry. It exists only so that test
/// suites can prove they detect a sign error.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrenetSystem {
    pub flip_b1_normal: bool,
}

impl FrenetSystem {
    pub const STANDARD: FrenetSystem = FrenetSystem { flip_b1_normal: false };
    pub const MUTATED: FrenetSystem = FrenetSystem { flip_b1_normal: true };

    /// Row `i` gives the derivative of frame vector `i` in the frame basis.
    pub fn matrix(&self, k1: f64, k2: f64, k3: f64, eps: f64) -> [[f64; 4]; 4] {
        let b1n = if self.flip_b1_normal { eps * k2 } else { -eps * k2 };
        [
            [0.0, k1, 0.0, 0.0],
            [-k1, 0.0, k2, 0.0],
            [0.0, b1n, 0.0, k3],
            [0.0, 0.0, k3, 0.0],
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrenetOptions {
    pub curvature_floor: f64,
    pub null_tol: f64,
    pub system: FrenetSystem,
}

impl Default for FrenetOptions {
    fn default() -> Self {
        Self { curvature_floor: CURVATURE_FLOOR, null_tol: NULL_TOL, system: FrenetSystem::STANDARD }
    }
}

/// An ordered frame `{T, N, B₁, B₂}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub t: Vec4,
    pub n: Vec4,
    pub b1: Vec4,
    pub b2: Vec4,
}

impl Frame {
    pub fn vectors(&self) -> [Vec4; 4] {
        [self.t, self.n, self.b1, self.b2]
    }

    pub fn from_vectors(v: [Vec4; 4]) -> Self {
        Self { t: v[0], n: v[1], b1: v[2], b2: v[3] }
    }

    /// The frame with `ε = ±1` built on the coordinate axes.
    pub fn standard(eps: f64) -> Self {
        if eps > 0.0 {
            Self::from_vectors([Vec4::e(1), Vec4::e(2), Vec4::e(3), Vec4::e(0)])
        } else {
            Self::from_vectors([Vec4::e(1), Vec4::e(2), Vec4::e(0), Vec4::e(3)])
        }
    }

    /// Target Gram matrix `diag(1, 1, ε, −ε)`.
    pub fn target_gram(eps: f64) -> [f64; 4] {
        [1.0, 1.0, eps, -eps]
    }

    /// Largest deviation among the ten Gram conditions.
    pub fn gram_deviation(&self, eps: f64) -> f64 {
        let v = self.vectors();
        let diag = Self::target_gram(eps);
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in i..4 {
                let want = if i == j { diag[i] } else { 0.0 };
                worst = worst.max((v[i].dot(v[j]) - want).abs());
            }
        }
        worst
    }
}

/// Frame, curvatures and sign at one arclength value.
///
/// Besides the values, the jets computed along the way give the
/// derivatives `κ₁'`, `κ₁''` and `κ₂'`, which the spherical-center formula
/// needs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrenetData {
    pub s: f64,
    pub position: Vec4,
    pub frame: Frame,
    pub kappa1: f64,
    pub kappa2: f64,
    pub kappa3: f64,
    pub eps: f64,
    pub dkappa1: f64,
    pub ddkappa1: f64,
    pub dkappa2: f64,
}

impl FrenetData {
    pub fn kappas(&self) -> [f64; 3] {
        [self.kappa1, self.kappa2, self.kappa3]
    }

    /// Right-hand side of the Frenet system at this point.
    pub fn rhs(&self, system: &FrenetSystem) -> [Vec4; 4] {
        let m = system.matrix(self.kappa1, self.kappa2, self.kappa3, self.eps);
        let f = self.frame.vectors();
        m.map(|row| row.iter().zip(f).fold(Vec4::ZERO, |acc, (c, v)| acc + v * *c))
    }
}

/// Euclidean rank test on `α', …, α⁗` by modified Gram–Schmidt on the
/// normalized columns. Returns the first level whose new direction is
/// below `floor`, so a planar curve reports level 2.
fn dimension_check(jet: &CurveJet, floor: f64, s: f64) -> Result<()> {
    let mut basis: Vec<[f64; 4]> = Vec::with_capacity(4);
    for k in 1..=4 {
        let d = jet.derivative(k);
        let norm = d.euclid_norm();
        if !(norm > 0.0) {
            return Err(Error::DegenerateFrame { level: (k - 1).max(1) as u8, s });
        }
        let mut w = (d / norm).to_array();
        for _ in 0..2 {
            for b in &basis {
                let p: f64 = w.iter().zip(b).map(|(x, y)| x * y).sum();
                for i in 0..4 {
                    w[i] -= p * b[i];
                }
            }
        }
        let r = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if k > 1 && r < floor {
            return Err(Error::DegenerateFrame { level: (k - 1) as u8, s });
        }
        basis.push(w.map(|x| x / r));
    }
    Ok(())
}

fn is_null(g: f64, r: Vec4, tol: f64) -> bool {
    g.abs() < tol * r.euclid_norm_sq()
}

/// Frenet apparatus from the arclength jet of the curve.
///
/// The extraction is carried out on jets in `s`, so each later frame vector
/// is an exact derivative of the previous one; `κ₁` is exact to second
/// order, `κ₂` to first.
pub fn frenet_from_jet(jet: &CurveJet, s: f64, opts: &FrenetOptions) -> Result<FrenetData> {
    dimension_check(jet, opts.curvature_floor, s)?;
    let t = jet.differentiate();
    let tp = t.differentiate();
    let tp0 = tp.position();
    let g11 = tp.dot(&tp);
    if g11.value() <= opts.null_tol * tp0.euclid_norm_sq() {
        return Err(Error::NonSpacelikePrincipalNormal { s, g: g11.value() });
    }
    let k1 = g11.sqrt()?;
    let n = tp.div_jet(&k1)?;

    let r1 = n.differentiate() + t.scale_jet(&k1);
    let g22 = r1.dot(&r1);
    if is_null(g22.value(), r1.position(), opts.null_tol) {
        return Err(Error::DegenerateFrame { level: 2, s });
    }
    let eps = g22.value().signum();
    let k2 = (g22 * eps).sqrt()?;
    let b1 = r1.div_jet(&k2)?;

    let m = opts.system.matrix(1.0, 1.0, 1.0, eps);
    let r2 = b1.differentiate() - n.scale_jet(&(k2 * m[2][1]));
    let r2_0 = r2.position();
    let g33 = r2_0.dot(r2_0);
    if is_null(g33, r2_0, opts.null_tol) {
        return Err(Error::DegenerateFrame { level: 3, s });
    }
    let k3 = g33.abs().sqrt();
    let [k1v, k2v] = [k1.value(), k2.value()];
    let scale = tp0.euclid_norm().max(1.0);
    if k1v <= opts.curvature_floor * scale {
        return Err(Error::DegenerateFrame { level: 1, s });
    }
    if k2v <= opts.curvature_floor * scale || k3 <= opts.curvature_floor * scale {
        return Err(Error::DegenerateFrame { level: if k2v <= opts.curvature_floor * scale { 2 } else { 3 }, s });
    }

    Ok(FrenetData {
        s,
        position: jet.position(),
        frame: Frame { t: t.position(), n: n.position(), b1: b1.position(), b2: r2_0 / k3 },
        kappa1: k1v,
        kappa2: k2v,
        kappa3: k3,
        eps,
        dkappa1: k1.derivative(1),
        ddkappa1: k1.derivative(2),
        dkappa2: k2.derivative(1),
    })
}

pub fn frenet_apparatus(map: &ArclengthMap, s: f64) -> Result<FrenetData> {
    frenet_apparatus_with(map, s, &FrenetOptions::default())
}

pub fn frenet_apparatus_with(map: &ArclengthMap, s: f64, opts: &FrenetOptions) -> Result<FrenetData> {
    frenet_from_jet(&map.curve_jet(s)?, s, opts)
}

/// Euclidean norms of `F' − (system)·F` for each frame vector `F`, with `F'`
/// a central difference of step `h` of the extracted frames.
pub fn frenet_ode_residual(map: &ArclengthMap, s: f64, h: f64, opts: &FrenetOptions) -> Result<[f64; 4]> {
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(format!("step h = {h} must be positive")));
    }
    let mid = frenet_apparatus_with(map, s, opts)?;
    let plus = frenet_apparatus_with(map, s + h, opts)?;
    let minus = frenet_apparatus_with(map, s - h, opts)?;
    if plus.eps != mid.eps || minus.eps != mid.eps {
        return Err(Error::EpsilonChanges);
    }
    let rhs = mid.rhs(&opts.system);
    let (fp, fm) = (plus.frame.vectors(), minus.frame.vectors());
    Ok(std::array::from_fn(|i| ((fp[i] - fm[i]) / (2.0 * h) - rhs[i]).euclid_norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::CatalogCurve;

    fn helix_map() -> ArclengthMap {
        let helix = CatalogCurve::LorentzHelix { a: 1.0, p: 1.0, b: 2f64.sqrt(), q: 1.0 };
        ArclengthMap::new(&helix.spec()).unwrap()
    }

    #[test]
    fn system_matrix_is_g_skew() {
        // (M G) + (M G)^T = 0 with G = diag(1, 1, ε, −ε).
        for eps in [1.0, -1.0] {
            let m = FrenetSystem::STANDARD.matrix(0.7, 1.3, 2.1, eps);
            let g = Frame::target_gram(eps);
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(m[i][j] * g[j] + m[j][i] * g[i], 0.0, "{i}{j}");
                }
            }
            let bad = FrenetSystem::MUTATED.matrix(0.7, 1.3, 2.1, eps);
            assert_ne!(bad[1][2] * g[2] + bad[2][1] * g[1], 0.0);
        }
    }

    #[test]
    fn standard_frames_are_exact() {
        for eps in [1.0, -1.0] {
            assert_eq!(Frame::standard(eps).gram_deviation(eps), 0.0);
        }
    }

    #[test]
    fn helix_curvatures_match_closed_form() {
        let map = helix_map();
        let f = frenet_apparatus(&map, 1.3).unwrap();
        assert!((f.kappa1 - 3f64.sqrt()).abs() < 1e-12);
        assert!((f.kappa2 - (8.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert!((f.kappa3 - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(f.eps, -1.0);
        assert!(f.frame.gram_deviation(f.eps) < 1e-12);
        assert!(f.dkappa1.abs() < 1e-12 && f.ddkappa1.abs() < 1e-11 && f.dkappa2.abs() < 1e-12);
    }

    #[test]
    fn planar_curves_are_degenerate_at_level_two() {
        for curve in [CatalogCurve::HyperbolicGeodesic, CatalogCurve::InverseSineGeodesic { a: 1.0, s0: 0.0 }] {
            let map = ArclengthMap::new(&curve.spec()).unwrap();
            let err = frenet_apparatus(&map, 0.5 * map.length()).unwrap_err();
            assert_eq!(err, Error::DegenerateFrame { level: 2, s: 0.5 * map.length() });
        }
    }

    #[test]
    fn helix_ode_residuals_are_small() {
        let map = helix_map();
        let r = frenet_ode_residual(&map, 2.0, 1e-4, &FrenetOptions::default()).unwrap();
        assert!(r.iter().all(|x| *x < 1e-7), "{r:?}");
    }
}
