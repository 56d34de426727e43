//! Sparse exact polynomials in the 27 real coordinates of J(3), ordered
//! (z₀..z₇, y₀..y₇, x₀..x₇, ξ₁, ξ₂, ξ₃), with the α!-weighted pairing and the
//! constant-coefficient operator D^P attached to each polynomial P.

use crate::jordan::Jordan;
use crate::scalar::{Cx, Scalar, Q};
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

pub const NVARS: usize = 27;
pub type Mono = [u8; NVARS];

pub const Z0: usize = 0;
pub const Y0: usize = 8;
pub const X0: usize = 16;
pub const XI0: usize = 24;

pub const VAR_LABELS: [&str; NVARS] = [
    "z0", "z1", "z2", "z3", "z4", "z5", "z6", "z7", "y0", "y1", "y2", "y3", "y4", "y5", "y6", "y7", "x0", "x1", "x2",
    "x3", "x4", "x5", "x6", "x7", "xi1", "xi2", "xi3",
];

/// Polynomial with rational coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly27 {
    terms: BTreeMap<Mono, Q>,
}

pub fn mono_degree(m: &Mono) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

fn factorial(n: u8) -> BigInt {
    (1..=n as u32).fold(BigInt::from(1), |acc, k| acc * k)
}

/// α! = Π αᵢ!.
pub fn mono_factorial(m: &Mono) -> BigInt {
    m.iter().fold(BigInt::from(1), |acc, &e| acc * factorial(e))
}

/// All monomials of total degree k, in lexicographic order.
pub fn monomials(k: usize) -> Vec<Mono> {
    fn rec(pos: usize, left: usize, cur: &mut Mono, out: &mut Vec<Mono>) {
        if pos == NVARS - 1 {
            cur[pos] = left as u8;
            out.push(*cur);
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e as u8;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    rec(0, k, &mut [0; NVARS], &mut out);
    out
}

impl Poly27 {
    pub fn zero() -> Self {
        Poly27::default()
    }

    pub fn constant(c: Q) -> Self {
        Poly27::monomial([0; NVARS], c)
    }

    pub fn var(i: usize) -> Self {
        let mut m = [0; NVARS];
        m[i] = 1;
        Poly27::monomial(m, Q::one())
    }

    pub fn monomial(m: Mono, c: Q) -> Self {
        let mut p = Poly27::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Constant term, i.e. the value at 0.
    pub fn constant_term(&self) -> Q {
        self.coeff(&[0; NVARS])
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(mono_degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(mono_degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Q) -> Poly27 {
        if c.is_zero() {
            return Poly27::zero();
        }
        Poly27 { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Poly27 {
        (0..n).fold(Poly27::constant(Q::one()), |acc, _| &acc * self)
    }

    /// ⟪P, Q⟫ = Σ α! p_α q̄_α. Coefficients are rational, so the conjugation is trivial.
    pub fn inner(&self, o: &Poly27) -> Q {
        let (small, large) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        small.terms.iter().fold(Q::zero(), |acc, (m, c)| match large.terms.get(m) {
            Some(d) => acc + Q::from_integer(mono_factorial(m)) * c * d,
            None => acc,
        })
    }

    /// D^P(Q), with P read as the operator replacing each variable by ∂/∂(variable).
    pub fn apply(&self, q: &Poly27) -> Poly27 {
        let mut out = Poly27::zero();
        for (a, p) in &self.terms {
            for (b, c) in &q.terms {
                if (0..NVARS).any(|i| b[i] < a[i]) {
                    continue;
                }
                let mut m = [0; NVARS];
                let mut f = BigInt::from(1);
                for i in 0..NVARS {
                    m[i] = b[i] - a[i];
                    for t in (m[i] + 1)..=b[i] {
                        f *= t as u32;
                    }
                }
                out.add_term(m, p * c * Q::from_integer(f));
            }
        }
        out
    }

    /// Evaluates at a point given by its 27 coordinates in polynomial order.
    pub fn eval<S: Scalar>(&self, pt: &[Cx<S>; NVARS]) -> Cx<S> {
        self.terms.iter().fold(Cx::zero(), |acc, (m, c)| {
            let mut t = Cx::real(coeff_to::<S>(c));
            for i in 0..NVARS {
                for _ in 0..m[i] {
                    t = t * pt[i].clone();
                }
            }
            acc + t
        })
    }

    pub fn eval_jordan<S: Scalar>(&self, a: &Jordan<S>) -> Cx<S> {
        self.eval(&point_vars(a))
    }
}

/// Coordinates of a Jordan element in polynomial order.
pub fn point_vars<S: Scalar>(a: &Jordan<S>) -> [Cx<S>; NVARS] {
    std::array::from_fn(|k| match k {
        0..=7 => a.z.c[k].clone(),
        8..=15 => a.y.c[k - 8].clone(),
        16..=23 => a.x.c[k - 16].clone(),
        _ => a.xi[k - 24].clone(),
    })
}

fn coeff_to<S: Scalar>(q: &Q) -> S {
    // coefficients of the polynomials built here stay small
    let n: i64 = q.numer().try_into().expect("coefficient numerator fits in i64");
    let d: i64 = q.denom().try_into().expect("coefficient denominator fits in i64");
    S::from_ratio(n, d)
}

impl Add for &Poly27 {
    type Output = Poly27;
    fn add(self, o: &Poly27) -> Poly27 {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Poly27 {
    type Output = Poly27;
    fn sub(self, o: &Poly27) -> Poly27 {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &Poly27 {
    type Output = Poly27;
    fn neg(self) -> Poly27 {
        self.scale(&-Q::one())
    }
}

impl Mul for &Poly27 {
    type Output = Poly27;
    fn mul(self, o: &Poly27) -> Poly27 {
        let mut out = Poly27::zero();
        for (a, p) in &self.terms {
            for (b, q) in &o.terms {
                let m: Mono = std::array::from_fn(|i| a[i] + b[i]);
                out.add_term(m, p * q);
            }
        }
        out
    }
}

impl Add for Poly27 {
    type Output = Poly27;
    fn add(self, o: Poly27) -> Poly27 {
        &self + &o
    }
}

impl Sub for Poly27 {
    type Output = Poly27;
    fn sub(self, o: Poly27) -> Poly27 {
        &self - &o
    }
}

impl Mul for Poly27 {
    type Output = Poly27;
    fn mul(self, o: Poly27) -> Poly27 {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn v(i: usize) -> Poly27 {
        Poly27::var(i)
    }

    #[test]
    fn pairing_examples() {
        let c = v(XI0).pow(3);
        assert_eq!(c.inner(&c), q(6, 1));
        assert_eq!((&v(Z0) * &v(Y0)).inner(&(&v(Z0) * &v(X0))), q(0, 1));
        assert_eq!(v(XI0).pow(2).inner(&v(XI0)), q(0, 1));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(0).len(), 1);
        assert_eq!(monomials(1).len(), 27);
        assert_eq!(monomials(2).len(), 378);
        assert_eq!(monomials(3).len(), 3654);
    }

    #[test]
    fn operator_application() {
        // ∂²/∂ξ₁² (ξ₁³ z₀) = 6 ξ₁ z₀
        let p = &v(XI0).pow(3) * &v(Z0);
        let d = v(XI0).pow(2);
        assert_eq!(d.apply(&p), (&v(XI0) * &v(Z0)).scale(&q(6, 1)));
        // duality ⟪P, Q⟫ = D^P(Q)(0) on equal degrees
        let a = &(&v(1) * &v(2)) + &v(XI0 + 1).pow(2).scale(&q(3, 2));
        let b = &(&v(1) * &v(2)).scale(&q(-2, 1)) + &v(XI0 + 1).pow(2);
        assert_eq!(a.inner(&b), a.apply(&b).constant_term());
    }

    #[test]
    fn evaluation() {
        let p = &(&v(XI0) * &v(Z0)).scale(&q(1, 2)) + &Poly27::constant(q(3, 1));
        let mut pt: [Cx<Q>; NVARS] = std::array::from_fn(|_| Cx::zero());
        pt[XI0] = Cx::real(q(4, 1));
        pt[Z0] = Cx::new(q(0, 1), q(1, 1));
        assert_eq!(p.eval(&pt), Cx::new(q(3, 1), q(2, 1)));
    }
}
