use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jets::Jet;

/// A closed-form scalar function of arclength, evaluated on jets.
///
/// Serialized with an `"op"` tag, e.g.
/// `{"op":"div","a":{"op":"cosh","arg":{"op":"arg"}},"b":{"op":"arg"}}`
/// for `cosh(s)/s`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ScalarFn {
    Const { value: f64 },
    /// The argument `s` itself.
    Arg,
    /// `scale·s + shift`.
    Affine { scale: f64, shift: f64 },
    Add { a: Box<ScalarFn>, b: Box<ScalarFn> },
    Sub { a: Box<ScalarFn>, b: Box<ScalarFn> },
    Mul { a: Box<ScalarFn>, b: Box<ScalarFn> },
    Div { a: Box<ScalarFn>, b: Box<ScalarFn> },
    Cosh { arg: Box<ScalarFn> },
    Sinh { arg: Box<ScalarFn> },
    Sin { arg: Box<ScalarFn> },
    Cos { arg: Box<ScalarFn> },
    Exp { arg: Box<ScalarFn> },
    Sqrt { arg: Box<ScalarFn> },
}

impl ScalarFn {
    pub fn constant(value: f64) -> Self {
        ScalarFn::Const { value }
    }

    pub fn div(a: ScalarFn, b: ScalarFn) -> Self {
        ScalarFn::Div { a: Box::new(a), b: Box::new(b) }
    }

    pub fn mul(a: ScalarFn, b: ScalarFn) -> Self {
        ScalarFn::Mul { a: Box::new(a), b: Box::new(b) }
    }

    pub fn add(a: ScalarFn, b: ScalarFn) -> Self {
        ScalarFn::Add { a: Box::new(a), b: Box::new(b) }
    }

    pub fn cosh(arg: ScalarFn) -> Self {
        ScalarFn::Cosh { arg: Box::new(arg) }
    }

    pub fn sinh(arg: ScalarFn) -> Self {
        ScalarFn::Sinh { arg: Box::new(arg) }
    }

    pub fn jet(&self, s: f64) -> Result<Jet> {
        Ok(match self {
            ScalarFn::Const { value } => Jet::constant(*value),
            ScalarFn::Arg => Jet::variable(s),
            ScalarFn::Affine { scale, shift } => Jet::variable(s) * *scale + *shift,
            ScalarFn::Add { a, b } => a.jet(s)? + b.jet(s)?,
            ScalarFn::Sub { a, b } => a.jet(s)? - b.jet(s)?,
            ScalarFn::Mul { a, b } => a.jet(s)? * b.jet(s)?,
            ScalarFn::Div { a, b } => a.jet(s)?.try_div(&b.jet(s)?)?,
            ScalarFn::Cosh { arg } => arg.jet(s)?.cosh(),
            ScalarFn::Sinh { arg } => arg.jet(s)?.sinh(),
            ScalarFn::Sin { arg } => arg.jet(s)?.sin(),
            ScalarFn::Cos { arg } => arg.jet(s)?.cos(),
            ScalarFn::Exp { arg } => arg.jet(s)?.exp(),
            ScalarFn::Sqrt { arg } => arg.jet(s)?.sqrt()?,
        })
    }

    /// Replaces the argument `s` by `inner(s)`.
    pub fn substitute(&self, inner: &ScalarFn) -> ScalarFn {
        let sub = |f: &ScalarFn| Box::new(f.substitute(inner));
        match self {
            ScalarFn::Const { value } => ScalarFn::constant(*value),
            ScalarFn::Arg => inner.clone(),
            ScalarFn::Affine { scale, shift } => ScalarFn::add(
                ScalarFn::mul(ScalarFn::constant(*scale), inner.clone()),
                ScalarFn::constant(*shift),
            ),
            ScalarFn::Add { a, b } => ScalarFn::Add { a: sub(a), b: sub(b) },
            ScalarFn::Sub { a, b } => ScalarFn::Sub { a: sub(a), b: sub(b) },
            ScalarFn::Mul { a, b } => ScalarFn::Mul { a: sub(a), b: sub(b) },
            ScalarFn::Div { a, b } => ScalarFn::Div { a: sub(a), b: sub(b) },
            ScalarFn::Cosh { arg } => ScalarFn::Cosh { arg: sub(arg) },
            ScalarFn::Sinh { arg } => ScalarFn::Sinh { arg: sub(arg) },
            ScalarFn::Sin { arg } => ScalarFn::Sin { arg: sub(arg) },
            ScalarFn::Cos { arg } => ScalarFn::Cos { arg: sub(arg) },
            ScalarFn::Exp { arg } => ScalarFn::Exp { arg: sub(arg) },
            ScalarFn::Sqrt { arg } => ScalarFn::Sqrt { arg: sub(arg) },
        }
    }

    pub fn value(&self, s: f64) -> Result<f64> {
        Ok(self.jet(s)?.value())
    }
}

/// Curvature functions of arclength together with the sign `ε`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureProfile {
    pub kappa1: ScalarFn,
    pub kappa2: ScalarFn,
    pub kappa3: ScalarFn,
    pub eps: f64,
    /// `[s_start, s_end]`; a zero-length range is allowed.
    pub s_range: (f64, f64),
}

/// Points at which [`CurvatureProfile::validate`] probes positivity.
const POSITIVITY_PROBES: usize = 1000;

impl CurvatureProfile {
    /// Constant curvatures `(k1, k2, k3)` on `[s_start, s_end]`.
    pub fn constant(k: [f64; 3], eps: f64, s_range: (f64, f64)) -> Self {
        Self {
            kappa1: ScalarFn::constant(k[0]),
            kappa2: ScalarFn::constant(k[1]),
            kappa3: ScalarFn::constant(k[2]),
            eps,
            s_range,
        }
    }

    /// `κ₂ = κ₃ = 1`, `κ₁(s) = ε(A cosh s + B sinh s)/(s + c)`: the profiles
    /// whose curves are congruent to rectifying ones.
    pub fn rectifying(c: f64, a: f64, b: f64, eps: f64, s_range: (f64, f64)) -> Self {
        let num = ScalarFn::add(
            ScalarFn::mul(ScalarFn::constant(eps * a), ScalarFn::cosh(ScalarFn::Arg)),
            ScalarFn::mul(ScalarFn::constant(eps * b), ScalarFn::sinh(ScalarFn::Arg)),
        );
        Self {
            kappa1: ScalarFn::div(num, ScalarFn::Affine { scale: 1.0, shift: c }),
            kappa2: ScalarFn::constant(1.0),
            kappa3: ScalarFn::constant(1.0),
            eps,
            s_range,
        }
    }

    /// Profile of the curve shrunk by the factor `k > 0`: curvatures
    /// `k·κ(k·s)` over the range divided by `k`.
    pub fn rescaled(&self, k: f64) -> Self {
        let arg = ScalarFn::Affine { scale: k, shift: 0.0 };
        let sc = |f: &ScalarFn| ScalarFn::mul(ScalarFn::constant(k), f.substitute(&arg));
        Self {
            kappa1: sc(&self.kappa1),
            kappa2: sc(&self.kappa2),
            kappa3: sc(&self.kappa3),
            eps: self.eps,
            s_range: (self.s_range.0 / k, self.s_range.1 / k),
        }
    }

    pub fn kappa_jets(&self, s: f64) -> Result<[Jet; 3]> {
        Ok([self.kappa1.jet(s)?, self.kappa2.jet(s)?, self.kappa3.jet(s)?])
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.s_range;
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(Error::InvalidParameter(format!("profile range [{lo}, {hi}]")));
        }
        if self.eps != 1.0 && self.eps != -1.0 {
            return Err(Error::InvalidParameter(format!("eps = {} must be ±1", self.eps)));
        }
        for i in 0..=POSITIVITY_PROBES {
            let s = lo + (hi - lo) * i as f64 / POSITIVITY_PROBES as f64;
            for (name, f) in [("kappa1", &self.kappa1), ("kappa2", &self.kappa2), ("kappa3", &self.kappa3)] {
                let v = f.value(s)?;
                if !(v > 0.0) {
                    return Err(Error::InvalidParameter(format!("{name}({s}) = {v} is not positive")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosh_over_s_jet() {
        let p = CurvatureProfile::rectifying(0.0, 1.0, 0.0, 1.0, (0.5, 2.5));
        let s = 1.2f64;
        let j = p.kappa1.jet(s).unwrap();
        assert!((j.value() - s.cosh() / s).abs() < 1e-15);
        let d1 = s.sinh() / s - s.cosh() / (s * s);
        assert!((j.derivative(1) - d1).abs() < 1e-14);
    }

    #[test]
    fn json_shape_round_trips() {
        let f = ScalarFn::div(ScalarFn::cosh(ScalarFn::Arg), ScalarFn::Arg);
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(text, r#"{"op":"div","a":{"op":"cosh","arg":{"op":"arg"}},"b":{"op":"arg"}}"#);
        assert_eq!(serde_json::from_str::<ScalarFn>(&text).unwrap(), f);
    }

    #[test]
    fn non_positive_profiles_are_rejected() {
        let p = CurvatureProfile::rectifying(0.0, 1.0, 0.0, -1.0, (0.5, 2.5));
        assert!(matches!(p.validate(), Err(Error::InvalidParameter(_))));
        let q = CurvatureProfile::constant([1.0, 1.0, 1.0], 1.0, (0.0, 5.0));
        assert!(q.validate().is_ok());
    }
}
