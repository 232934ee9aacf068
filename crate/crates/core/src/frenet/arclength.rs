use rayon::prelude::*;

use crate::error::Result;
use crate::jets::{eval_curve, speed, speed_jet, CurveJet, CurveSpec, Domain, Jet, Parameterization};
use crate::lorentz::Vec4;
use crate::quadrature::{adaptive_simpson, gauss_legendre};

/// Absolute tolerance of the arclength integral over the whole domain.
pub const REPARAM_TOL: f64 = 1e-10;

/// Panels are at most this wide; each carries a fixed Gauss–Legendre rule.
const PANEL_WIDTH: f64 = 0.05;

/// Monotone map between a curve parameter `t` and arclength `s`, with
/// `s(t_lo) = 0`.
///
/// Cumulative lengths are tabulated at panel knots; inside a panel `s(t)` is
/// a fixed Gauss–Legendre integral from the left knot, which keeps `s`
/// smooth in `t`. Each panel is cross-checked against adaptive Simpson and
/// the accumulated discrepancy is kept as [`ArclengthMap::error_bound`].
#[derive(Clone, Debug)]
pub struct ArclengthMap {
    spec: CurveSpec,
    knots_t: Vec<f64>,
    knots_s: Vec<f64>,
    identity: bool,
    error_bound: f64,
}

impl ArclengthMap {
    pub fn new(spec: &CurveSpec) -> Result<Self> {
        let d = spec.domain();
        if spec.parameterization() == Parameterization::Arclength {
            return Ok(Self {
                spec: spec.clone(),
                knots_t: vec![d.lo, d.hi],
                knots_s: vec![0.0, d.width()],
                identity: true,
                error_bound: 0.0,
            });
        }
        let n = ((d.width() / PANEL_WIDTH).ceil() as usize).max(8);
        let h = d.width() / n as f64;
        let mut knots_t: Vec<f64> = (0..n).map(|i| d.lo + i as f64 * h).collect();
        knots_t.push(d.hi);
        let v = |t: f64| speed(spec, t);
        let panels = knots_t
            .par_windows(2)
            .map(|w| {
                let gl = gauss_legendre(v, w[0], w[1])?;
                let simpson = adaptive_simpson(v, w[0], w[1], REPARAM_TOL / n as f64)?;
                Ok((gl, (gl - simpson).abs()))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut knots_s = Vec::with_capacity(n + 1);
        knots_s.push(0.0);
        let mut error_bound = 0.0;
        for (len, err) in panels {
            knots_s.push(knots_s.last().unwrap() + len);
            error_bound += err;
        }
        Ok(Self { spec: spec.clone(), knots_t, knots_s, identity: false, error_bound })
    }

    pub fn spec(&self) -> &CurveSpec {
        &self.spec
    }

    pub fn length(&self) -> f64 {
        *self.knots_s.last().unwrap()
    }

    /// The covered arclength interval `[0, length]`.
    pub fn s_domain(&self) -> Domain {
        Domain { lo: 0.0, hi: self.length() }
    }

    /// Estimated absolute error of the tabulated lengths.
    pub fn error_bound(&self) -> f64 {
        self.error_bound
    }

    fn t_lo(&self) -> f64 {
        self.knots_t[0]
    }

    pub fn s_of_t(&self, t: f64) -> Result<f64> {
        self.spec.domain().check(t)?;
        if self.identity {
            return Ok(t - self.t_lo());
        }
        let k = self.knots_t.partition_point(|&x| x <= t).clamp(1, self.knots_t.len() - 1) - 1;
        Ok(self.knots_s[k] + gauss_legendre(|x| speed(&self.spec, x), self.knots_t[k], t)?)
    }

    /// Inverse map by Newton's method, falling back to bisection whenever a
    /// step leaves the current bracket.
    pub fn t_of_s(&self, s: f64) -> Result<f64> {
        self.s_domain().check(s)?;
        if self.identity {
            return Ok(self.t_lo() + s);
        }
        let k = self.knots_s.partition_point(|&x| x <= s).clamp(1, self.knots_s.len() - 1) - 1;
        let (mut a, mut b) = (self.knots_t[k], self.knots_t[k + 1]);
        let (sa, sb) = (self.knots_s[k], self.knots_s[k + 1]);
        let mut t = a + (b - a) * ((s - sa) / (sb - sa)).clamp(0.0, 1.0);
        for _ in 0..100 {
            let f = self.s_of_t(t)? - s;
            if f == 0.0 {
                break;
            }
            if f > 0.0 {
                b = t;
            } else {
                a = t;
            }
            let newton = t - f / speed(&self.spec, t)?;
            let next = if newton > a && newton < b { newton } else { 0.5 * (a + b) };
            let step = (next - t).abs();
            t = next;
            if step <= 4.0 * f64::EPSILON * t.abs().max(1.0) || b - a <= f64::EPSILON * t.abs().max(1.0) {
                break;
            }
        }
        Ok(t)
    }

    /// Jet of the inverse map `t(s)`, exact through order four.
    pub fn t_jet(&self, s: f64) -> Result<Jet> {
        let t = self.t_of_s(s)?;
        if self.identity {
            return Ok(Jet::variable(t));
        }
        let v = speed_jet(&self.spec, t)?;
        Ok(invert_series(&v) + t)
    }

    /// Jet of `α` as a function of arclength at `s`.
    pub fn curve_jet(&self, s: f64) -> Result<CurveJet> {
        let tj = self.t_jet(s)?;
        Ok(eval_curve(&self.spec, tj.value())?.compose(&tj))
    }
}

/// Series of `τ(σ)` solving `σ = ∫₀^τ v`, given the jet of `v` at zero.
///
/// Uses the fixed point `τ = (σ − Σ_{k≥2} S_k τ^k) / S_1` with
/// `S_{k+1} = v_k / (k + 1)`; each sweep fixes one more coefficient.
fn invert_series(v: &Jet) -> Jet {
    let s1 = v.c[0];
    let sigma = Jet::variable(0.0);
    let mut tau = sigma.scale(1.0 / s1);
    for _ in 0..4 {
        let mut power = tau * tau;
        let mut higher = Jet::constant(0.0);
        for k in 2..=4 {
            higher += power.scale(v.c[k - 1] / k as f64);
            power = power * tau;
        }
        tau = (sigma - higher).scale(1.0 / s1);
    }
    tau
}

pub fn arclength_map(spec: &CurveSpec) -> Result<ArclengthMap> {
    ArclengthMap::new(spec)
}

/// `dα/ds, …, d⁴α/ds⁴` at arclength `s`.
pub fn derivatives_by_arclength(map: &ArclengthMap, s: f64) -> Result<[Vec4; 4]> {
    let jet = map.curve_jet(s)?;
    Ok([1, 2, 3, 4].map(|k| jet.derivative(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::jets::CatalogCurve;

    #[test]
    fn series_inverse_of_exp_speed() {
        // v = e^τ ⇒ σ = e^τ − 1 ⇒ τ = ln(1 + σ) = σ − σ²/2 + σ³/3 − σ⁴/4.
        let v = Jet::variable(0.0).exp();
        let tau = invert_series(&v);
        let want = [0.0, 1.0, -0.5, 1.0 / 3.0, -0.25];
        for k in 0..5 {
            assert!((tau.c[k] - want[k]).abs() < 1e-15, "{k}: {}", tau.c[k]);
        }
    }

    #[test]
    fn unit_speed_curves_have_shifted_identity_maps() {
        for curve in [
            CatalogCurve::HyperbolicGeodesic,
            CatalogCurve::LorentzHelix { a: 1.0, p: 1.0, b: 2f64.sqrt(), q: 1.0 },
        ] {
            let spec = curve.spec();
            let map = ArclengthMap::new(&spec).unwrap();
            let d = spec.domain();
            for t in d.cell_centres(37) {
                assert!((map.s_of_t(t).unwrap() - (t - d.lo)).abs() < 1e-10);
                assert!((map.t_of_s(t - d.lo).unwrap() - t).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn inverse_round_trips() {
        let spec = CatalogCurve::HyperbolicClelia.spec();
        let map = ArclengthMap::new(&spec).unwrap();
        assert!(map.error_bound() < REPARAM_TOL);
        for s in map.s_domain().cell_centres(23) {
            let t = map.t_of_s(s).unwrap();
            assert!((map.s_of_t(t).unwrap() - s).abs() < 1e-13);
        }
    }

    #[test]
    fn out_of_range_arclength_is_rejected() {
        let map = ArclengthMap::new(&CatalogCurve::HyperbolicGeodesic.spec()).unwrap();
        assert!(matches!(map.t_of_s(-0.1), Err(Error::OutOfDomain { .. })));
        assert!(matches!(map.t_of_s(map.length() + 0.1), Err(Error::OutOfDomain { .. })));
    }
}
