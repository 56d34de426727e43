//! Field abstraction shared by the exact and floating-point code paths.
//!
//! `Scalar` is a field; `Real` adds the transcendental pieces needed by the
//! geometric constructions. `Cx` is the complexification of a scalar and
//! `Dual` carries one forward-mode derivative.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub type Q = BigRational;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// Complex conjugation; the identity on real fields.
    fn conj(&self) -> Self;

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }

    fn scale_i(&self, n: i64) -> Self {
        self.clone() * Self::from_i64(n)
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

pub trait Real: Scalar + PartialOrd {
    fn sqrt(&self) -> Self;
    fn from_f64(x: f64) -> Self;
    /// Value part as a float (derivative parts dropped).
    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn conj(&self) -> Self {
        *self
    }
}

impl Real for f64 {
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
}

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn q_to_string(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn q_parse(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn q_abs(x: &Q) -> Q {
    x.abs()
}

/// Complex scalar `re + i im` over any scalar field.
#[derive(Clone, Debug, PartialEq)]
pub struct Cx<S> {
    pub re: S,
    pub im: S,
}

impl<S: Scalar> Cx<S> {
    pub fn new(re: S, im: S) -> Self {
        Cx { re, im }
    }
    pub fn real(re: S) -> Self {
        Cx { re, im: S::zero() }
    }
    pub fn i() -> Self {
        Cx { re: S::zero(), im: S::one() }
    }
    /// |z|² = re² + im² (a scalar of the base field).
    pub fn norm_sqr(&self) -> S {
        self.re.square() + self.im.square()
    }
    pub fn scale(&self, s: &S) -> Self {
        Cx { re: self.re.clone() * s.clone(), im: self.im.clone() * s.clone() }
    }
    pub fn mul_i(&self) -> Self {
        Cx { re: -self.im.clone(), im: self.re.clone() }
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl<S: Real> Cx<S> {
    pub fn abs(&self) -> S {
        self.norm_sqr().sqrt()
    }
}

impl Cx<f64> {
    pub fn to_c64(&self) -> nalgebra::Complex<f64> {
        nalgebra::Complex::new(self.re, self.im)
    }
    pub fn from_c64(z: nalgebra::Complex<f64>) -> Self {
        Cx { re: z.re, im: z.im }
    }
}

impl<S: Scalar> Add for Cx<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Cx { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<S: Scalar> Sub for Cx<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Cx { re: self.re - o.re, im: self.im - o.im }
    }
}

impl<S: Scalar> Mul for Cx<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Cx { re: self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(), im: self.re * o.im + self.im * o.re }
    }
}

impl<S: Scalar> Div for Cx<S> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let d = o.norm_sqr();
        let num = self * o.conj_cx();
        Cx { re: num.re / d.clone(), im: num.im / d }
    }
}

impl<S: Scalar> Neg for Cx<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Cx { re: -self.re, im: -self.im }
    }
}

impl<S: Scalar> Cx<S> {
    pub fn conj_cx(&self) -> Self {
        Cx { re: self.re.clone(), im: -self.im.clone() }
    }
}

impl<S: Scalar> Scalar for Cx<S> {
    fn zero() -> Self {
        Cx { re: S::zero(), im: S::zero() }
    }
    fn one() -> Self {
        Cx { re: S::one(), im: S::zero() }
    }
    fn from_i64(n: i64) -> Self {
        Cx::real(S::from_i64(n))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn conj(&self) -> Self {
        self.conj_cx()
    }
}

/// First-order dual number `v + d ε` with `ε² = 0`.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct Dual<S> {
    pub v: S,
    pub d: S,
}

impl<S: Scalar> Dual<S> {
    pub fn constant(v: S) -> Self {
        Dual { v, d: S::zero() }
    }
    pub fn variable(v: S) -> Self {
        Dual { v, d: S::one() }
    }
}

impl<S: Scalar> Add for Dual<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual { v: self.v + o.v, d: self.d + o.d }
    }
}

impl<S: Scalar> Sub for Dual<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual { v: self.v - o.v, d: self.d - o.d }
    }
}

impl<S: Scalar> Mul for Dual<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual { v: self.v.clone() * o.v.clone(), d: self.v * o.d + self.d * o.v }
    }
}

impl<S: Scalar> Div for Dual<S> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let v = self.v.clone() / o.v.clone();
        let d = (self.d * o.v.clone() - self.v * o.d) / o.v.square();
        Dual { v, d }
    }
}

impl<S: Scalar> Neg for Dual<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual { v: -self.v, d: -self.d }
    }
}

impl<S: Scalar> Scalar for Dual<S> {
    fn zero() -> Self {
        Dual::constant(S::zero())
    }
    fn one() -> Self {
        Dual::constant(S::one())
    }
    fn from_i64(n: i64) -> Self {
        Dual::constant(S::from_i64(n))
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero() && self.d.is_zero()
    }
    fn conj(&self) -> Self {
        Dual { v: self.v.conj(), d: self.d.conj() }
    }
}

impl<S: Real> Real for Dual<S> {
    fn sqrt(&self) -> Self {
        let r = self.v.sqrt();
        let d = self.d.clone() / (r.clone() + r.clone());
        Dual { v: r, d }
    }
    fn from_f64(x: f64) -> Self {
        Dual::constant(S::from_f64(x))
    }
    fn to_f64(&self) -> f64 {
        self.v.to_f64()
    }
}

/// Lifts a complex scalar into dual numbers, seeding the derivative with `seed`.
pub fn cx_dual<S: Scalar>(z: &Cx<S>, seed: &Cx<S>) -> Cx<Dual<S>> {
    Cx { re: Dual { v: z.re.clone(), d: seed.re.clone() }, im: Dual { v: z.im.clone(), d: seed.im.clone() } }
}

pub fn cx_value<S: Scalar>(z: &Cx<Dual<S>>) -> Cx<S> {
    Cx { re: z.re.v.clone(), im: z.im.v.clone() }
}

pub fn cx_deriv<S: Scalar>(z: &Cx<Dual<S>>) -> Cx<S> {
    Cx { re: z.re.d.clone(), im: z.im.d.clone() }
}

pub fn cx_const<S: Scalar>(z: &Cx<S>) -> Cx<Dual<S>> {
    Cx { re: Dual::constant(z.re.clone()), im: Dual::constant(z.im.clone()) }
}

pub fn cx_to_f64(z: &Cx<Q>) -> Cx<f64> {
    Cx { re: q_to_f64(&z.re), im: q_to_f64(&z.im) }
}

pub fn cx_real_to_f64<S: Real>(z: &Cx<S>) -> Cx<f64> {
    Cx { re: z.re.to_f64(), im: z.im.to_f64() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_division_is_exact_over_rationals() {
        let a = Cx::new(q(3, 2), q(-1, 5));
        let b = Cx::new(q(2, 7), q(4, 3));
        let c = a.clone() / b.clone();
        assert_eq!(c * b, a);
    }

    #[test]
    fn dual_sqrt_derivative() {
        let x = Dual::variable(4.0_f64);
        let r = x.sqrt();
        assert_eq!(r.v, 2.0);
        assert_eq!(r.d, 0.25);
    }

    #[test]
    fn nested_dual_second_derivative() {
        // f(x) = x^3 at x = 2: f'' = 12
        let x: Dual<Dual<f64>> = Dual { v: Dual::variable(2.0), d: Dual::constant(1.0) };
        let y = x.clone() * x.clone() * x;
        assert_eq!(y.d.d, 12.0);
    }

    #[test]
    fn rational_strings_round_trip() {
        let x = q(-7, 12);
        assert_eq!(q_parse(&q_to_string(&x)), Some(x));
        assert_eq!(q_parse("5"), Some(q(5, 1)));
        assert_eq!(q_parse("1/0"), None);
    }
}

/// Dyadic rational m/2^e with checked i128 arithmetic: exact like [`Q`] but
/// much cheaper, for the property batteries whose only divisions are by 2.
/// Overflow, or a division leaving the dyadic rationals, panics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    m: i128,
    e: u32,
}

fn overflow() -> ! {
    panic!("dyadic arithmetic overflowed i128")
}

impl Dyadic {
    /// n / 2^e.
    pub fn new(n: i128, e: u32) -> Self {
        let mut d = Dyadic { m: n, e };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.m == 0 {
            self.e = 0;
        } else {
            let t = self.m.trailing_zeros().min(self.e);
            self.m >>= t;
            self.e -= t;
        }
    }

    fn lift(&self, e: u32) -> i128 {
        let shift = e - self.e;
        if shift >= 127 {
            overflow()
        }
        self.m.checked_mul(1i128 << shift).unwrap_or_else(|| overflow())
    }

    pub fn to_q(&self) -> Q {
        BigRational::new(BigInt::from(self.m), BigInt::from(1) << self.e)
    }
}

impl Add for Dyadic {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let e = self.e.max(o.e);
        Dyadic::new(self.lift(e).checked_add(o.lift(e)).unwrap_or_else(|| overflow()), e)
    }
}

impl Sub for Dyadic {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for Dyadic {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let e = self.e.checked_add(o.e).unwrap_or_else(|| overflow());
        Dyadic::new(self.m.checked_mul(o.m).unwrap_or_else(|| overflow()), e)
    }
}

impl Div for Dyadic {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let (sign, a) = (o.m.signum(), o.m.unsigned_abs());
        if a == 0 {
            panic!("dyadic division by zero")
        }
        // (m/2^e) / (±2^j/2^f) = ±m·2^f / 2^(e+j), else exact integer quotient
        if a.is_power_of_two() {
            let j = a.trailing_zeros();
            let num = self.m.checked_mul(sign).unwrap_or_else(|| overflow());
            let lifted = Dyadic::new(num, 0).lift(o.e);
            return Dyadic::new(lifted, self.e + j);
        }
        if self.m % o.m != 0 {
            panic!("quotient leaves the dyadic rationals")
        }
        Dyadic::new(self.m / o.m, self.e) * Dyadic::new(1i128 << o.e.min(126), 0)
    }
}

impl Neg for Dyadic {
    type Output = Self;
    fn neg(self) -> Self {
        Dyadic { m: self.m.checked_neg().unwrap_or_else(|| overflow()), e: self.e }
    }
}

impl Scalar for Dyadic {
    fn zero() -> Self {
        Dyadic { m: 0, e: 0 }
    }
    fn one() -> Self {
        Dyadic { m: 1, e: 0 }
    }
    fn from_i64(n: i64) -> Self {
        Dyadic { m: n as i128, e: 0 }
    }
    fn is_zero(&self) -> bool {
        self.m == 0
    }
    fn conj(&self) -> Self {
        *self
    }
}

#[cfg(test)]
mod dyadic_tests {
    use super::*;

    #[test]
    fn dyadic_arithmetic_matches_rationals() {
        let a = Dyadic::new(-12, 3);
        let b = Dyadic::new(5, 1);
        assert_eq!((a + b).to_q(), a.to_q() + b.to_q());
        assert_eq!((a - b).to_q(), a.to_q() - b.to_q());
        assert_eq!((a * b).to_q(), a.to_q() * b.to_q());
        assert_eq!((a / Dyadic::new(-4, 0)).to_q(), a.to_q() / q(-4, 1));
        assert_eq!((b / Dyadic::new(1, 2)).to_q(), q(10, 1));
        assert_eq!(Dyadic::from_ratio(1, 2), Dyadic::new(2, 2));
        assert_eq!((Dyadic::new(3, 2) - Dyadic::new(3, 2)), Dyadic::zero());
    }

    #[test]
    #[should_panic]
    fn overflow_panics() {
        let big = Dyadic::new(i128::MAX / 2, 0);
        let _ = big * Dyadic::new(4, 0);
    }
}
