//! Linear algebra of Minkowski space-time E₁⁴.
//!
//! Coordinates are stored as `x0..x3` with `x0` the timelike slot, so the
//! metric is `g(v, w) = -v.x0 w.x0 + v.x1 w.x1 + v.x2 w.x2 + v.x3 w.x3`.
//! (Texts that index from one write the timelike coordinate as `v₁`.)

use std::fmt;
use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// Default relative band used by [`causal_character`].
pub const CAUSAL_TOL: f64 = 1e-12;

/// A point or vector of E₁⁴.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec4 {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl Vec4 {
    pub const ZERO: Vec4 = Vec4::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self { x0, x1, x2, x3 }
    }

    /// The `i`-th standard basis vector; `e(0)` is timelike.
    pub fn e(i: usize) -> Self {
        let mut c = [0.0; 4];
        c[i] = 1.0;
        Self::from_array(c)
    }

    pub const fn from_array(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub const fn to_array(self) -> [f64; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }

    pub fn is_finite(self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }

    /// Minkowski inner product.
    #[inline]
    pub fn dot(self, w: Vec4) -> f64 {
        minkowski_dot(self, w)
    }

    /// Squared Euclidean norm of the coordinate tuple.
    #[inline]
    pub fn euclid_norm_sq(self) -> f64 {
        self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    #[inline]
    pub fn euclid_norm(self) -> f64 {
        self.euclid_norm_sq().sqrt()
    }

    pub fn pseudo_norm(self) -> f64 {
        pseudo_norm(self)
    }

    pub fn max_abs(self) -> f64 {
        self.to_array().iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }
}

impl Index<usize> for Vec4 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        match i {
            0 => &self.x0,
            1 => &self.x1,
            2 => &self.x2,
            3 => &self.x3,
            _ => panic!("Vec4 index {i} out of range"),
        }
    }
}

impl Add for Vec4 {
    type Output = Vec4;
    fn add(self, o: Vec4) -> Vec4 {
        Vec4::new(self.x0 + o.x0, self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl AddAssign for Vec4 {
    fn add_assign(&mut self, o: Vec4) {
        *self = *self + o;
    }
}

impl Sub for Vec4 {
    type Output = Vec4;
    fn sub(self, o: Vec4) -> Vec4 {
        Vec4::new(self.x0 - o.x0, self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl SubAssign for Vec4 {
    fn sub_assign(&mut self, o: Vec4) {
        *self = *self - o;
    }
}

impl Neg for Vec4 {
    type Output = Vec4;
    fn neg(self) -> Vec4 {
        Vec4::new(-self.x0, -self.x1, -self.x2, -self.x3)
    }
}

impl Mul<f64> for Vec4 {
    type Output = Vec4;
    fn mul(self, k: f64) -> Vec4 {
        Vec4::new(self.x0 * k, self.x1 * k, self.x2 * k, self.x3 * k)
    }
}

impl Mul<Vec4> for f64 {
    type Output = Vec4;
    fn mul(self, v: Vec4) -> Vec4 {
        v * self
    }
}

impl Div<f64> for Vec4 {
    type Output = Vec4;
    fn div(self, k: f64) -> Vec4 {
        Vec4::new(self.x0 / k, self.x1 / k, self.x2 / k, self.x3 / k)
    }
}

impl fmt::Display for Vec4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.x0, self.x1, self.x2, self.x3)
    }
}

/// Causal character of a vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Null,
}

impl CausalCharacter {
    pub fn as_str(self) -> &'static str {
        match self {
            CausalCharacter::Spacelike => "spacelike",
            CausalCharacter::Timelike => "timelike",
            CausalCharacter::Null => "null",
        }
    }
}

impl fmt::Display for CausalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `g(v, w) = -v0 w0 + v1 w1 + v2 w2 + v3 w3`.
#[inline]
pub fn minkowski_dot(v: Vec4, w: Vec4) -> f64 {
    -v.x0 * w.x0 + v.x1 * w.x1 + v.x2 * w.x2 + v.x3 * w.x3
}

/// Classifies `v` using the relative band `tol · ‖v‖²_E`.
///
/// The zero vector is spacelike.
pub fn causal_character(v: Vec4, tol: f64) -> CausalCharacter {
    let g = minkowski_dot(v, v);
    let band = tol * v.euclid_norm_sq();
    if v == Vec4::ZERO || g > band {
        CausalCharacter::Spacelike
    } else if g < -band {
        CausalCharacter::Timelike
    } else {
        CausalCharacter::Null
    }
}

/// `sqrt(|g(v, v)|)`; zero on null vectors.
pub fn pseudo_norm(v: Vec4) -> f64 {
    minkowski_dot(v, v).abs().sqrt()
}

/// Membership in the hyperbolic unit sphere `{X : g(X, X) = -1}`.
pub fn on_hyperbolic_sphere(p: Vec4, tol: f64) -> bool {
    (minkowski_dot(p, p) + 1.0).abs() <= tol
}
