//! The exceptional Jordan algebra J(3) and its complexification.
//!
//! An element is stored as
//!
//! ```text
//!     ⎡ ξ₁    z    θ(y) ⎤
//!     ⎢ θ(z)  ξ₂   x    ⎥
//!     ⎣ y     θ(x) ξ₃   ⎦
//! ```
//!
//! and its 27-vector lists (ξ₁, ξ₂, ξ₃, z₁..z₄, w₁..w₄, y₁..y₄, v₁..v₄,
//! x₁..x₄, u₁..u₄), the entries of the split pairs of z, y and x.

use crate::octonion::{rho_h, rho_h_inv, Oct};
use crate::scalar::{q_parse, q_to_string, Cx, Real, Scalar, Q};
use std::ops::{Add, Neg, Sub};

pub type Vec27<S> = [Cx<S>; 27];

pub const VEC27_LABELS: [&str; 27] = [
    "xi1", "xi2", "xi3", "z1", "z2", "z3", "z4", "w1", "w2", "w3", "w4", "y1", "y2", "y3", "y4", "v1", "v2", "v3",
    "v4", "x1", "x2", "x3", "x4", "u1", "u2", "u3", "u4",
];

#[derive(Clone, Debug, PartialEq)]
pub struct Jordan<S> {
    pub xi: [Cx<S>; 3],
    pub z: Oct<S>,
    pub y: Oct<S>,
    pub x: Oct<S>,
}

/// The six componentwise equations of A² = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareResiduals<S> {
    /// (ξ₂+ξ₃)x + θ(yz)
    pub rx: Oct<S>,
    /// (ξ₁+ξ₃)y + θ(zx)
    pub ry: Oct<S>,
    /// (ξ₁+ξ₂)z + θ(xy)
    pub rz: Oct<S>,
    /// ξ₁² + N(z) + N(y), ξ₂² + N(z) + N(x), ξ₃² + N(x) + N(y)
    pub diag: [Cx<S>; 3],
}

impl<S: Scalar> SquareResiduals<S> {
    pub fn all_zero(&self) -> bool {
        self.rx.is_zero() && self.ry.is_zero() && self.rz.is_zero() && self.diag.iter().all(|d| d.is_zero())
    }
}

impl<S: Real> SquareResiduals<S> {
    /// Hermitian norm of the residual vector.
    pub fn norm(&self) -> f64 {
        let mut s = 2.0 * (self.rx.herm_norm_sq() + self.ry.herm_norm_sq() + self.rz.herm_norm_sq()).to_f64();
        for d in &self.diag {
            s += d.norm_sqr().to_f64();
        }
        s.sqrt()
    }
}

type Mat3<S> = [[Oct<S>; 3]; 3];

impl<S: Scalar> Jordan<S> {
    pub fn zero() -> Self {
        Jordan { xi: std::array::from_fn(|_| Cx::zero()), z: Oct::zero(), y: Oct::zero(), x: Oct::zero() }
    }

    pub fn identity() -> Self {
        Self::diag([Cx::one(), Cx::one(), Cx::one()])
    }

    pub fn diag(xi: [Cx<S>; 3]) -> Self {
        Jordan { xi, ..Self::zero() }
    }

    /// Diagonal matrix unit E_ii.
    pub fn e(i: usize) -> Self {
        let mut d = Self::zero();
        d.xi[i] = Cx::one();
        d
    }

    pub fn from_vec27(v: &Vec27<S>) -> Self {
        let oct = |k: usize| {
            let a = rho_h_inv(&[v[k].clone(), v[k + 1].clone(), v[k + 2].clone(), v[k + 3].clone()]);
            let b = rho_h_inv(&[v[k + 4].clone(), v[k + 5].clone(), v[k + 6].clone(), v[k + 7].clone()]);
            let mut it = a.into_iter().chain(b);
            Oct { c: std::array::from_fn(|_| it.next().unwrap()) }
        };
        Jordan { xi: [v[0].clone(), v[1].clone(), v[2].clone()], z: oct(3), y: oct(11), x: oct(19) }
    }

    pub fn to_vec27(&self) -> Vec27<S> {
        let mut out: Vec<Cx<S>> = self.xi.to_vec();
        for o in [&self.z, &self.y, &self.x] {
            out.extend(rho_h(&o.c[0..4]));
            out.extend(rho_h(&o.c[4..8]));
        }
        let mut it = out.into_iter();
        std::array::from_fn(|_| it.next().unwrap())
    }

    fn full(&self) -> Mat3<S> {
        let d = |i: usize| Oct::scalar(self.xi[i].clone());
        [
            [d(0), self.z.clone(), self.y.theta()],
            [self.z.theta(), d(1), self.x.clone()],
            [self.y.clone(), self.x.theta(), d(2)],
        ]
    }

    fn matmul(a: &Mat3<S>, b: &Mat3<S>) -> Mat3<S> {
        std::array::from_fn(|i| std::array::from_fn(|k| (0..3).fold(Oct::zero(), |acc, j| acc + a[i][j].mul(&b[j][k]))))
    }

    fn from_full(m: &Mat3<S>) -> Self {
        Jordan {
            xi: [m[0][0].c[0].clone(), m[1][1].c[0].clone(), m[2][2].c[0].clone()],
            z: m[0][1].clone(),
            y: m[2][0].clone(),
            x: m[1][2].clone(),
        }
    }

    /// A∘B = (AB + BA)/2 with the two matrix products formed entrywise.
    pub fn jordan(&self, o: &Jordan<S>) -> Jordan<S> {
        let (a, b) = (self.full(), o.full());
        let ab = Self::matmul(&a, &b);
        let ba = Self::matmul(&b, &a);
        let half = Cx::from_ratio(1, 2);
        let m: Mat3<S> =
            std::array::from_fn(|i| std::array::from_fn(|k| (ab[i][k].clone() + ba[i][k].clone()).scale(&half)));
        Self::from_full(&m)
    }

    /// The associative square AA.
    pub fn square(&self) -> Jordan<S> {
        let a = self.full();
        Self::from_full(&Self::matmul(&a, &a))
    }

    pub fn square_residuals(&self) -> SquareResiduals<S> {
        let [x1, x2, x3] = self.xi.clone();
        let (x, y, z) = (&self.x, &self.y, &self.z);
        SquareResiduals {
            rx: x.scale(&(x2.clone() + x3.clone())) + y.mul(z).theta(),
            ry: y.scale(&(x1.clone() + x3.clone())) + z.mul(x).theta(),
            rz: z.scale(&(x1.clone() + x2.clone())) + x.mul(y).theta(),
            diag: [
                x1.clone() * x1 + z.norm_sq() + y.norm_sq(),
                x2.clone() * x2 + z.norm_sq() + x.norm_sq(),
                x3.clone() * x3 + x.norm_sq() + y.norm_sq(),
            ],
        }
    }

    pub fn trace(&self) -> Cx<S> {
        self.xi[0].clone() + self.xi[1].clone() + self.xi[2].clone()
    }

    /// Bilinear ⟨A, B⟩ = tr(A∘B) in closed form.
    pub fn inner(&self, o: &Jordan<S>) -> Cx<S> {
        let d = (0..3).fold(Cx::zero(), |acc, i| acc + self.xi[i].clone() * o.xi[i].clone());
        let off = self.z.dot(&o.z) + self.y.dot(&o.y) + self.x.dot(&o.x);
        d + off.clone() + off
    }

    /// Hermitian ⟨A, B̄⟩.
    pub fn herm_inner(&self, o: &Jordan<S>) -> Cx<S> {
        self.inner(&o.conj())
    }

    /// ‖A‖² = ⟨A, Ā⟩.
    pub fn norm_sq(&self) -> S {
        let d = self.xi.iter().fold(S::zero(), |acc, x| acc + x.norm_sqr());
        let off = self.z.herm_norm_sq() + self.y.herm_norm_sq() + self.x.herm_norm_sq();
        d + off.clone() + off
    }

    pub fn conj(&self) -> Jordan<S> {
        Jordan { xi: std::array::from_fn(|i| self.xi[i].conj()), z: self.z.conj(), y: self.y.conj(), x: self.x.conj() }
    }

    pub fn scale(&self, s: &Cx<S>) -> Jordan<S> {
        Jordan {
            xi: std::array::from_fn(|i| self.xi[i].clone() * s.clone()),
            z: self.z.scale(s),
            y: self.y.scale(s),
            x: self.x.scale(s),
        }
    }

    pub fn scale_re(&self, s: &S) -> Jordan<S> {
        self.scale(&Cx::real(s.clone()))
    }

    pub fn is_real(&self) -> bool {
        self.xi.iter().all(|x| x.is_real()) && self.z.is_real() && self.y.is_real() && self.x.is_real()
    }

    pub fn is_zero(&self) -> bool {
        self.xi.iter().all(|x| x.is_zero()) && self.z.is_zero() && self.y.is_zero() && self.x.is_zero()
    }

    /// Real (`re`) and imaginary (`im`) parts as real elements.
    pub fn re_im(&self) -> (Jordan<S>, Jordan<S>) {
        let re = self.map(|c| Cx::real(c.re.clone()));
        let im = self.map(|c| Cx::real(c.im.clone()));
        (re, im)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&Cx<S>) -> Cx<T>) -> Jordan<T> {
        Jordan { xi: std::array::from_fn(|i| f(&self.xi[i])), z: self.z.map(&f), y: self.y.map(&f), x: self.x.map(&f) }
    }

    /// (T₁, T₂, T₃) with T₃ from the Jordan power tr(A∘(A∘A)).
    pub fn trace_forms(&self) -> (Cx<S>, Cx<S>, Cx<S>) {
        let a2 = self.jordan(self);
        (self.trace(), a2.trace(), self.jordan(&a2).trace())
    }

    /// T₃ = Σξ³ + 3(N(z)(ξ₁+ξ₂) + N(y)(ξ₃+ξ₁) + N(x)(ξ₂+ξ₃)) + 6 Re(x·(yz)).
    pub fn t3_closed(&self) -> Cx<S> {
        let [x1, x2, x3] = self.xi.clone();
        let cubes =
            (0..3).fold(Cx::zero(), |acc, i| acc + self.xi[i].clone() * self.xi[i].clone() * self.xi[i].clone());
        let mixed = self.z.norm_sq() * (x1.clone() + x2.clone())
            + self.y.norm_sq() * (x3.clone() + x1)
            + self.x.norm_sq() * (x2 + x3);
        let triple = self.x.mul(&self.y.mul(&self.z)).real_part();
        cubes + mixed.scale_i(3) + triple.scale_i(6)
    }
}

impl<S: Scalar> Add for Jordan<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Jordan {
            xi: std::array::from_fn(|i| self.xi[i].clone() + o.xi[i].clone()),
            z: self.z + o.z,
            y: self.y + o.y,
            x: self.x + o.x,
        }
    }
}

impl<S: Scalar> Sub for Jordan<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Jordan {
            xi: std::array::from_fn(|i| self.xi[i].clone() - o.xi[i].clone()),
            z: self.z - o.z,
            y: self.y - o.y,
            x: self.x - o.x,
        }
    }
}

impl<S: Scalar> Neg for Jordan<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Jordan { xi: std::array::from_fn(|i| -self.xi[i].clone()), z: -self.z, y: -self.y, x: -self.x }
    }
}

/// 27 real coordinates (ξ₁, ξ₂, ξ₃, z₀..z₇, y₀..y₇, x₀..x₇) of a real element.
pub fn real_coords<S: Scalar>(a: &Jordan<S>) -> [S; 27] {
    let mut v = Vec::with_capacity(27);
    v.extend(a.xi.iter().map(|c| c.re.clone()));
    for o in [&a.z, &a.y, &a.x] {
        v.extend(o.c.iter().map(|c| c.re.clone()));
    }
    let mut it = v.into_iter();
    std::array::from_fn(|_| it.next().unwrap())
}

pub fn from_real_coords<S: Scalar>(v: &[S]) -> Jordan<S> {
    let oct = |k: usize| Oct::from_real(std::array::from_fn(|i| v[k + i].clone()));
    Jordan {
        xi: [Cx::real(v[0].clone()), Cx::real(v[1].clone()), Cx::real(v[2].clone())],
        z: oct(3),
        y: oct(11),
        x: oct(19),
    }
}

pub fn jordan_to_json_f64(a: &Jordan<f64>) -> serde_json::Value {
    let v = a.to_vec27();
    serde_json::json!({
        "mode": if a.is_real() { "real" } else { "complex" },
        "vec27": v.iter().map(|c| serde_json::json!([c.re, c.im])).collect::<Vec<_>>(),
    })
}

pub fn jordan_to_json_q(a: &Jordan<Q>) -> serde_json::Value {
    let v = a.to_vec27();
    serde_json::json!({
        "mode": if a.is_real() { "real" } else { "complex" },
        "vec27": v.iter().map(|c| serde_json::json!([q_to_string(&c.re), q_to_string(&c.im)])).collect::<Vec<_>>(),
    })
}

pub fn jordan_from_json_f64(v: &serde_json::Value) -> Option<Jordan<f64>> {
    let arr = v.get("vec27")?.as_array()?;
    if arr.len() != 27 {
        return None;
    }
    let mut out = Vec::with_capacity(27);
    for e in arr {
        let p = e.as_array()?;
        out.push(Cx::new(p.first()?.as_f64()?, p.get(1)?.as_f64()?));
    }
    let mut it = out.into_iter();
    Some(Jordan::from_vec27(&std::array::from_fn(|_| it.next().unwrap())))
}

pub fn jordan_from_json_q(v: &serde_json::Value) -> Option<Jordan<Q>> {
    let arr = v.get("vec27")?.as_array()?;
    if arr.len() != 27 {
        return None;
    }
    let mut out = Vec::with_capacity(27);
    for e in arr {
        let p = e.as_array()?;
        out.push(Cx::new(q_parse(p.first()?.as_str()?)?, q_parse(p.get(1)?.as_str()?)?));
    }
    let mut it = out.into_iter();
    Some(Jordan::from_vec27(&std::array::from_fn(|_| it.next().unwrap())))
}

/// X₁ = diag(1, 0, 0).
pub fn x1<S: Scalar>() -> Jordan<S> {
    Jordan::e(0)
}

/// The anchor point [[1, i, 0], [i, −1, 0], [0, 0, 0]] of the null cone.
pub fn a1<S: Scalar>() -> Jordan<S> {
    Jordan { xi: [Cx::one(), -Cx::one(), Cx::zero()], z: Oct::scalar(Cx::i()), ..Jordan::zero() }
}

/// √2·Y₁: off-diagonal entries 1 at (1,2) and (2,1).
pub fn sqrt2_y1<S: Scalar>() -> Jordan<S> {
    Jordan { z: Oct::one(), ..Jordan::zero() }
}

/// Y₁: off-diagonal entries 1/√2 at (1,2) and (2,1).
pub fn y1<S: Real>() -> Jordan<S> {
    let s = S::one() / S::from_i64(2).sqrt();
    Jordan { z: Oct::scalar(Cx::real(s)), ..Jordan::zero() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn sample(seed: i64) -> Jordan<Q> {
        let mut k = seed;
        let mut next = || {
            k = (k * 1103515245 + 12345) % 2147483648;
            q(k % 19 - 9, k % 5 + 1)
        };
        let mut v: Vec<Cx<Q>> = Vec::new();
        for _ in 0..27 {
            v.push(Cx::new(next(), next()));
        }
        let mut it = v.into_iter();
        Jordan::from_vec27(&std::array::from_fn(|_| it.next().unwrap()))
    }

    #[test]
    fn unit_of_jordan_product() {
        let a = sample(3);
        assert_eq!(Jordan::identity().jordan(&a), a);
    }

    #[test]
    fn x1_y1_tangent_condition() {
        let y = sqrt2_y1::<Q>();
        let p = x1::<Q>().jordan(&y);
        assert_eq!(p, y.scale(&Cx::from_ratio(1, 2)));
        assert!(Jordan::<Q>::e(0).jordan(&Jordan::e(1)).is_zero());
    }

    #[test]
    fn a1_is_null() {
        let a = a1::<Q>();
        assert!(a.square_residuals().all_zero());
        assert!(a.square().is_zero());
        assert_eq!(a.norm_sq(), q(4, 1));
        let (t1, t2, t3) = a.trace_forms();
        assert!(t1.is_zero() && t2.is_zero() && t3.is_zero());
    }

    #[test]
    fn idempotents() {
        let x = x1::<Q>();
        assert_eq!(x.square(), x);
        let d = Jordan::<Q>::diag([Cx::one(), Cx::one(), Cx::zero()]);
        assert_eq!(d.square(), d);
        let r = x.square_residuals();
        assert_eq!(r.diag, [Cx::one(), Cx::zero(), Cx::zero()]);
    }

    #[test]
    fn inner_products() {
        let id = Jordan::<Q>::identity();
        assert_eq!(id.inner(&id), Cx::from_i64(3));
        let y = sqrt2_y1::<Q>();
        assert!(x1::<Q>().inner(&y).is_zero());
        assert_eq!(y.inner(&y), Cx::from_i64(2));
        let y = y1::<f64>();
        assert!((y.norm_sq() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn t3_of_diagonal() {
        let d = Jordan::<Q>::diag([Cx::from_i64(1), Cx::from_i64(2), Cx::from_i64(3)]);
        assert_eq!(d.trace_forms().2, Cx::from_i64(36));
        assert_eq!(d.t3_closed(), Cx::from_i64(36));
        assert_eq!(Jordan::<Q>::identity().trace_forms().1, Cx::from_i64(3));
    }

    #[test]
    fn square_matches_residuals_and_jordan_square() {
        for s in 0..5 {
            let a = sample(s);
            let sq = a.square();
            let r = a.square_residuals();
            assert_eq!(sq.x, r.rx);
            assert_eq!(sq.y, r.ry);
            assert_eq!(sq.z, r.rz);
            assert_eq!(sq.xi.to_vec(), r.diag.to_vec());
            assert_eq!(a.jordan(&a), sq);
        }
    }

    #[test]
    fn vec27_round_trip_and_labels() {
        let a = sample(11);
        assert_eq!(Jordan::from_vec27(&a.to_vec27()), a);
        let v = a1::<Q>().to_vec27();
        for (k, c) in v.iter().enumerate() {
            let want = match VEC27_LABELS[k] {
                "xi1" => Cx::one(),
                "xi2" => -Cx::one(),
                "z1" | "z4" => Cx::i(),
                _ => Cx::zero(),
            };
            assert_eq!(*c, want, "{}", VEC27_LABELS[k]);
        }
    }

    #[test]
    fn json_round_trip() {
        let a = sample(5);
        assert_eq!(jordan_from_json_q(&jordan_to_json_q(&a)), Some(a));
        let b = a1::<f64>();
        assert_eq!(jordan_from_json_f64(&jordan_to_json_f64(&b)), Some(b));
    }
}
