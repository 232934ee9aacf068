use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// Highest Taylor order carried by a [`Jet`].
pub const ORDER: usize = 4;
const LEN: usize = ORDER + 1;

/// Divisors with `|c0|` at or below this are treated as poles.
pub const POLE_GUARD: f64 = 1e-300;

const FACTORIAL: [f64; LEN] = [1.0, 1.0, 2.0, 6.0, 24.0];

/// Truncated Taylor expansion of a scalar function at a point.
///
/// `c[k] = f⁽ᵏ⁾(t) / k!`. Every operation is exact truncated-series arithmetic,
/// so the coefficients of a composite are exact up to roundoff.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Jet {
    pub c: [f64; LEN],
}

impl Jet {
    pub const fn from_coeffs(c: [f64; LEN]) -> Self {
        Self { c }
    }

    pub const fn constant(v: f64) -> Self {
        Self { c: [v, 0.0, 0.0, 0.0, 0.0] }
    }

    /// The identity function expanded at `t`.
    pub const fn variable(t: f64) -> Self {
        Self { c: [t, 1.0, 0.0, 0.0, 0.0] }
    }

    /// Builds a jet from derivative values `f, f', f'', ...`.
    pub fn from_derivatives(d: [f64; LEN]) -> Self {
        let mut c = [0.0; LEN];
        for k in 0..LEN {
            c[k] = d[k] / FACTORIAL[k];
        }
        Self { c }
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// `f⁽ᵏ⁾(t)`.
    #[inline]
    pub fn derivative(&self, k: usize) -> f64 {
        self.c[k] * FACTORIAL[k]
    }

    pub fn derivatives(&self) -> [f64; LEN] {
        std::array::from_fn(|k| self.derivative(k))
    }

    /// Jet of `f'`. The top coefficient is unknown after shifting and is set
    /// to zero, so the result is exact only through order `ORDER - 1`.
    pub fn differentiate(&self) -> Jet {
        let mut c = [0.0; LEN];
        for k in 0..ORDER {
            c[k] = (k + 1) as f64 * self.c[k + 1];
        }
        Jet { c }
    }

    /// Jet of an antiderivative with value `c0` at the expansion point.
    pub fn integrate(&self, c0: f64) -> Jet {
        let mut c = [0.0; LEN];
        c[0] = c0;
        for k in 1..LEN {
            c[k] = self.c[k - 1] / k as f64;
        }
        Jet { c }
    }

    pub fn scale(&self, k: f64) -> Jet {
        Jet { c: self.c.map(|x| x * k) }
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|x| x.is_finite())
    }

    pub fn recip(&self) -> Result<Jet> {
        Jet::constant(1.0).try_div(self)
    }

    pub fn try_div(&self, d: &Jet) -> Result<Jet> {
        let d0 = d.c[0];
        if !(d0.abs() > POLE_GUARD) {
            return Err(Error::DivisionNearZero(d0));
        }
        let mut q = [0.0; LEN];
        for k in 0..LEN {
            let mut acc = self.c[k];
            for j in 1..=k {
                acc -= d.c[j] * q[k - j];
            }
            q[k] = acc / d0;
        }
        Ok(Jet { c: q })
    }

    pub fn sqrt(&self) -> Result<Jet> {
        let u0 = self.c[0];
        if !(u0 > 0.0) {
            return Err(Error::SqrtNonPositive(u0));
        }
        let mut r = [0.0; LEN];
        r[0] = u0.sqrt();
        for k in 1..LEN {
            let mut acc = self.c[k];
            for j in 1..k {
                acc -= r[j] * r[k - j];
            }
            r[k] = acc / (2.0 * r[0]);
        }
        Ok(Jet { c: r })
    }

    pub fn exp(&self) -> Jet {
        let mut e = [0.0; LEN];
        e[0] = self.c[0].exp();
        for k in 1..LEN {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * self.c[j] * e[k - j];
            }
            e[k] = acc / k as f64;
        }
        Jet { c: e }
    }

    /// `(sin, cos)` by the coupled recurrence.
    pub fn sin_cos(&self) -> (Jet, Jet) {
        let mut s = [0.0; LEN];
        let mut c = [0.0; LEN];
        (s[0], c[0]) = self.c[0].sin_cos();
        for k in 1..LEN {
            let (mut as_, mut ac) = (0.0, 0.0);
            for j in 1..=k {
                let w = j as f64 * self.c[j];
                as_ += w * c[k - j];
                ac += w * s[k - j];
            }
            s[k] = as_ / k as f64;
            c[k] = -ac / k as f64;
        }
        (Jet { c: s }, Jet { c })
    }

    pub fn sin(&self) -> Jet {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Jet {
        self.sin_cos().1
    }

    /// `(sinh, cosh)` by the coupled recurrence.
    pub fn sinh_cosh(&self) -> (Jet, Jet) {
        let mut s = [0.0; LEN];
        let mut c = [0.0; LEN];
        s[0] = self.c[0].sinh();
        c[0] = self.c[0].cosh();
        for k in 1..LEN {
            let (mut as_, mut ac) = (0.0, 0.0);
            for j in 1..=k {
                let w = j as f64 * self.c[j];
                as_ += w * c[k - j];
                ac += w * s[k - j];
            }
            s[k] = as_ / k as f64;
            c[k] = ac / k as f64;
        }
        (Jet { c: s }, Jet { c })
    }

    pub fn sinh(&self) -> Jet {
        self.sinh_cosh().0
    }

    pub fn cosh(&self) -> Jet {
        self.sinh_cosh().1
    }

    /// Integer power; negative exponents go through [`Jet::try_div`].
    pub fn powi(&self, n: i32) -> Result<Jet> {
        let mut base = *self;
        let mut acc = Jet::constant(1.0);
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            Ok(acc)
        }
    }

    /// `self ∘ inner`, where `self` is expanded at `inner.value()`.
    pub fn compose(&self, inner: &Jet) -> Jet {
        let mut h = *inner;
        h.c[0] = 0.0;
        let mut out = Jet::constant(self.c[ORDER]);
        for k in (0..ORDER).rev() {
            out = out * h;
            out.c[0] += self.c[k];
        }
        out
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet { c: std::array::from_fn(|k| self.c[k] + o.c[k]) }
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, o: Jet) {
        *self = *self + o;
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet { c: std::array::from_fn(|k| self.c[k] - o.c[k]) }
    }
}

impl SubAssign for Jet {
    fn sub_assign(&mut self, o: Jet) {
        *self = *self - o;
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    /// Cauchy product truncated at `ORDER`.
    fn mul(self, o: Jet) -> Jet {
        let mut c = [0.0; LEN];
        for k in 0..LEN {
            for j in 0..=k {
                c[k] += self.c[j] * o.c[k - j];
            }
        }
        Jet { c }
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, k: f64) -> Jet {
        self.scale(k)
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, j: Jet) -> Jet {
        j.scale(self)
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, k: f64) -> Jet {
        self.c[0] += k;
        self
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(mut self, k: f64) -> Jet {
        self.c[0] -= k;
        self
    }
}

/// Elementary operations available on jets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elementary {
    Add,
    Sub,
    Mul,
    Div,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Exp,
    Sqrt,
    Powi(i32),
}

impl Elementary {
    pub fn arity(self) -> usize {
        match self {
            Elementary::Add | Elementary::Sub | Elementary::Mul | Elementary::Div => 2,
            _ => 1,
        }
    }
}

/// Applies `kind` to `args`.
pub fn jet_elementary(kind: Elementary, args: &[Jet]) -> Result<Jet> {
    if args.len() != kind.arity() {
        return Err(Error::InvalidParameter(format!(
            "{kind:?} takes {} argument(s), got {}",
            kind.arity(),
            args.len()
        )));
    }
    let a = args[0];
    Ok(match kind {
        Elementary::Add => a + args[1],
        Elementary::Sub => a - args[1],
        Elementary::Mul => a * args[1],
        Elementary::Div => a.try_div(&args[1])?,
        Elementary::Sin => a.sin(),
        Elementary::Cos => a.cos(),
        Elementary::Sinh => a.sinh(),
        Elementary::Cosh => a.cosh(),
        Elementary::Exp => a.exp(),
        Elementary::Sqrt => a.sqrt()?,
        Elementary::Powi(n) => a.powi(n)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Jet, b: [f64; LEN], tol: f64) -> bool {
        a.c.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn sinh_maclaurin() {
        let s = Jet::variable(0.0).sinh();
        assert!(close(&s, [0.0, 1.0, 0.0, 1.0 / 6.0, 0.0], 1e-16));
    }

    #[test]
    fn square_of_identity() {
        let t = Jet::variable(1.0);
        assert_eq!((t * t).c, [1.0, 2.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn division_at_pole() {
        let one = Jet::constant(1.0);
        let s = Jet::variable(0.0).sin();
        assert!(matches!(one.try_div(&s), Err(Error::DivisionNearZero(_))));
    }

    #[test]
    fn sqrt_requires_positive() {
        assert!(matches!(Jet::constant(0.0).sqrt(), Err(Error::SqrtNonPositive(_))));
        assert!(matches!(Jet::constant(-1.0).sqrt(), Err(Error::SqrtNonPositive(_))));
    }

    #[test]
    fn geometric_series() {
        let x = Jet::variable(0.0);
        let q = Jet::constant(1.0).try_div(&(Jet::constant(1.0) - x)).unwrap();
        assert!(close(&q, [1.0; LEN], 1e-15));
    }

    #[test]
    fn exp_and_trig_maclaurin() {
        let x = Jet::variable(0.0);
        assert!(close(&x.exp(), [1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0], 1e-16));
        assert!(close(&x.cos(), [1.0, 0.0, -0.5, 0.0, 1.0 / 24.0], 1e-16));
        assert!(close(&x.cosh(), [1.0, 0.0, 0.5, 0.0, 1.0 / 24.0], 1e-16));
    }

    #[test]
    fn sqrt_squares_back() {
        let u = Jet::variable(2.0).exp() + 1.0;
        let r = u.sqrt().unwrap();
        let back = r * r;
        for k in 0..LEN {
            assert!((back.c[k] - u.c[k]).abs() < 1e-13 * u.c[0]);
        }
    }

    #[test]
    fn powi_matches_repeated_product() {
        let t = Jet::variable(0.7).sin() + 2.0;
        let p3 = t.powi(3).unwrap();
        let m = t * t * t;
        let inv2 = t.powi(-2).unwrap() * (t * t);
        for k in 0..LEN {
            assert!((p3.c[k] - m.c[k]).abs() < 1e-13);
            let expected = if k == 0 { 1.0 } else { 0.0 };
            assert!((inv2.c[k] - expected).abs() < 1e-13);
        }
    }

    #[test]
    fn compose_matches_direct_chain() {
        // exp(sin t) at t = 0.4 both ways.
        let t = Jet::variable(0.4);
        let direct = t.sin().exp();
        let outer = Jet::variable(0.4f64.sin()).exp();
        let via = outer.compose(&t.sin());
        for k in 0..LEN {
            assert!((direct.c[k] - via.c[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn differentiate_then_integrate() {
        let f = Jet::variable(0.3).cosh();
        let g = f.differentiate().integrate(f.c[0]);
        for k in 0..ORDER {
            assert!((g.c[k] - f.c[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn elementary_dispatch() {
        let t = Jet::variable(1.0);
        assert_eq!(jet_elementary(Elementary::Mul, &[t, t]).unwrap().c, [1.0, 2.0, 1.0, 0.0, 0.0]);
        assert!(jet_elementary(Elementary::Sin, &[t, t]).is_err());
        assert!(matches!(
            jet_elementary(Elementary::Div, &[t, Jet::constant(0.0)]),
            Err(Error::DivisionNearZero(_))
        ));
    }
}
