//! Scalar types the integrator runs on: `f64` and double-double.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{FromPrimitive, Num, One, ToPrimitive};
use twofloat::TwoFloat;

use crate::algebra::Rational;

pub trait Real:
    Copy + Num + Neg<Output = Self> + PartialOrd + Debug + Send + Sync + 'static
{
    const MANTISSA_BITS: u32;
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn from_rational(q: &Rational) -> Self;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;
    fn sin_cos(self) -> (Self, Self);
    fn pi() -> Self;
}

impl Real for f64 {
    const MANTISSA_BITS: u32 = 53;

    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn from_rational(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }

    fn abs(self) -> Self {
        f64::abs(self)
    }

    fn sin_cos(self) -> (Self, Self) {
        f64::sin_cos(self)
    }

    fn pi() -> Self {
        std::f64::consts::PI
    }
}

fn bigint_to_twofloat(n: &BigInt) -> TwoFloat {
    let hi = n.to_f64().unwrap_or(f64::NAN);
    if !hi.is_finite() {
        return TwoFloat::from(hi);
    }
    let rest = n - BigInt::from_f64(hi).unwrap_or_default();
    TwoFloat::new_add(hi, rest.to_f64().unwrap_or(0.0))
}

/// Double-double scalar on top of `TwoFloat`, with division and sin/cos
/// carried out to full double-double accuracy.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct DoubleDouble(pub TwoFloat);

impl DoubleDouble {
    pub fn hi(self) -> f64 {
        self.0.hi()
    }

    pub fn lo(self) -> f64 {
        self.0.lo()
    }

    fn mul_f64(self, b: f64) -> Self {
        DoubleDouble(self.0 * b)
    }

    /// sin and cos of `|r| ≤ π/4` by Taylor series.
    fn sin_cos_reduced(r: Self) -> (Self, Self) {
        let r2 = r * r;
        let mut term = r;
        let mut sin = r;
        let mut k = 1.0;
        for _ in 0..20 {
            term = -(term * r2) / DoubleDouble::from_f64((k + 1.0) * (k + 2.0));
            sin = sin + term;
            k += 2.0;
        }
        let mut term = DoubleDouble::one();
        let mut cos = term;
        let mut k = 0.0;
        for _ in 0..20 {
            term = -(term * r2) / DoubleDouble::from_f64((k + 1.0) * (k + 2.0));
            cos = cos + term;
            k += 2.0;
        }
        (sin, cos)
    }
}

impl std::ops::Add for DoubleDouble {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        DoubleDouble(self.0 + o.0)
    }
}

impl std::ops::Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        DoubleDouble(self.0 - o.0)
    }
}

impl std::ops::Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        DoubleDouble(self.0 * o.0)
    }
}

impl std::ops::Div for DoubleDouble {
    type Output = Self;
    /// Long division with three quotient digits.
    fn div(self, o: Self) -> Self {
        let b = o.0.hi();
        let q1 = self.0.hi() / b;
        let r = self - o.mul_f64(q1);
        let q2 = r.0.hi() / b;
        let r = r - o.mul_f64(q2);
        let q3 = r.0.hi() / b;
        DoubleDouble(TwoFloat::new_add(q1, q2) + q3)
    }
}

impl std::ops::Rem for DoubleDouble {
    type Output = Self;
    fn rem(self, o: Self) -> Self {
        let q = DoubleDouble((self / o).0.trunc());
        self - q * o
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble(-self.0)
    }
}

impl num_traits::Zero for DoubleDouble {
    fn zero() -> Self {
        DoubleDouble(TwoFloat::from(0.0))
    }

    fn is_zero(&self) -> bool {
        self.0.hi() == 0.0 && self.0.lo() == 0.0
    }
}

impl num_traits::One for DoubleDouble {
    fn one() -> Self {
        DoubleDouble(TwoFloat::from(1.0))
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = num_traits::ParseFloatError;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        f64::from_str_radix(s, radix).map(DoubleDouble::from_f64)
    }
}

impl Real for DoubleDouble {
    const MANTISSA_BITS: u32 = 106;

    fn from_f64(x: f64) -> Self {
        DoubleDouble(TwoFloat::from(x))
    }

    fn to_f64(self) -> f64 {
        self.0.hi() + self.0.lo()
    }

    fn from_rational(q: &Rational) -> Self {
        let n = bigint_to_twofloat(q.numer());
        let d = bigint_to_twofloat(q.denom());
        if d.hi().is_finite() && n.hi().is_finite() {
            DoubleDouble(n) / DoubleDouble(d)
        } else {
            DoubleDouble::from_f64(q.to_f64().unwrap_or(f64::NAN))
        }
    }

    fn sqrt(self) -> Self {
        DoubleDouble(self.0.sqrt())
    }

    fn abs(self) -> Self {
        DoubleDouble(self.0.abs())
    }

    fn sin_cos(self) -> (Self, Self) {
        let half_pi = DoubleDouble(twofloat::consts::FRAC_PI_2);
        let k = (self / half_pi).0.hi().round();
        let r = self - half_pi * DoubleDouble::from_f64(k);
        let (s, c) = Self::sin_cos_reduced(r);
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    fn pi() -> Self {
        DoubleDouble(twofloat::consts::PI)
    }
}

pub type Cx<T> = Complex<T>;

pub fn cabs<T: Real>(z: Cx<T>) -> T {
    (z.re * z.re + z.im * z.im).sqrt()
}

/// Cheap magnitude bound used for step control.
pub fn cnorm1<T: Real>(z: Cx<T>) -> T {
    z.re.abs() + z.im.abs()
}

pub fn to_c64<T: Real>(z: Cx<T>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

pub fn from_c64<T: Real>(z: Complex<f64>) -> Cx<T> {
    Complex::new(T::from_f64(z.re), T::from_f64(z.im))
}

pub fn czero<T: Real>() -> Cx<T> {
    Complex::new(T::zero(), T::zero())
}

pub fn is_zero<T: Real>(z: Cx<T>) -> bool {
    z.re.is_zero() && z.im.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    #[test]
    fn third_in_double_double() {
        let t = DoubleDouble::from_rational(&q(1, 3));
        let back = t * DoubleDouble::from_f64(3.0) - DoubleDouble::one();
        assert!(back.abs().to_f64() < 1e-30);
        assert!((f64::from_rational(&q(1, 3)) - 1.0 / 3.0).abs() < 1e-17);
    }

    #[test]
    fn huge_numerator() {
        let big = Rational::new(BigInt::from(10u8).pow(40) + 1, BigInt::from(10u8).pow(40));
        let t = DoubleDouble::from_rational(&big);
        assert!((t - DoubleDouble::one()).abs().to_f64() < 1e-30);
    }

    #[test]
    fn sin_cos_in_double_double() {
        let x = DoubleDouble::pi() / DoubleDouble::from_f64(6.0);
        let (s, c) = x.sin_cos();
        assert!((s - DoubleDouble::from_f64(0.5)).abs().to_f64() < 1e-30);
        assert!((c * c - DoubleDouble::from_f64(0.75)).abs().to_f64() < 1e-30);
        for t in [0.7, 2.5, -4.0, 7.0] {
            let (s, c) = DoubleDouble::from_f64(t).sin_cos();
            assert!((s * s + c * c - DoubleDouble::one()).abs().to_f64() < 1e-30);
            assert!((s.to_f64() - t.sin()).abs() < 1e-15);
            assert!((c.to_f64() - t.cos()).abs() < 1e-15);
        }
    }
}
