//! Complexified octonions in the basis e₀…e₇, realised through the split
//! representation O ≅ C(2) ⊕ C(2)e₄.
//!
//! Products never fold implicitly: every multi-factor product in the crate is
//! written with explicit parentheses.

use crate::scalar::{q_parse, q_to_string, Cx, Scalar, Q};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

/// 2×2 complex matrix stored row-major as `[m11, m12, m21, m22]`.
pub type M2<S> = [Cx<S>; 4];

#[derive(Clone, Debug, PartialEq)]
pub struct Oct<S> {
    pub c: [Cx<S>; 8],
}

/// `Z + W e₄`.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitPair<S> {
    pub z: M2<S>,
    pub w: M2<S>,
}

fn m2_mul<S: Scalar>(a: &M2<S>, b: &M2<S>) -> M2<S> {
    [
        a[0].clone() * b[0].clone() + a[1].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() + a[1].clone() * b[3].clone(),
        a[2].clone() * b[0].clone() + a[3].clone() * b[2].clone(),
        a[2].clone() * b[1].clone() + a[3].clone() * b[3].clone(),
    ]
}

fn m2_add<S: Scalar>(a: &M2<S>, b: &M2<S>) -> M2<S> {
    std::array::from_fn(|k| a[k].clone() + b[k].clone())
}

fn m2_sub<S: Scalar>(a: &M2<S>, b: &M2<S>) -> M2<S> {
    std::array::from_fn(|k| a[k].clone() - b[k].clone())
}

/// Adjugate: the matrix form of quaternion conjugation.
pub fn m2_theta<S: Scalar>(a: &M2<S>) -> M2<S> {
    [a[3].clone(), -a[1].clone(), -a[2].clone(), a[0].clone()]
}

/// ρ_H(h₀ + h₁i + h₂j + h₃k).
pub fn rho_h<S: Scalar>(h: &[Cx<S>]) -> M2<S> {
    let i = Cx::<S>::i();
    [
        h[0].clone() + i.clone() * h[1].clone(),
        h[2].clone() + i.clone() * h[3].clone(),
        -h[2].clone() + i.clone() * h[3].clone(),
        h[0].clone() - i * h[1].clone(),
    ]
}

pub fn rho_h_inv<S: Scalar>(m: &M2<S>) -> [Cx<S>; 4] {
    let two = Cx::<S>::from_i64(2);
    let two_i = Cx::<S>::i() * two.clone();
    [
        (m[0].clone() + m[3].clone()) / two.clone(),
        (m[0].clone() - m[3].clone()) / two_i.clone(),
        (m[1].clone() - m[2].clone()) / two,
        (m[1].clone() + m[2].clone()) / two_i,
    ]
}

impl<S: Scalar> SplitPair<S> {
    /// (Y + V e₄)(Z + W e₄) = YZ − θ(W)V + (WY + Vθ(Z)) e₄.
    pub fn mul(&self, o: &SplitPair<S>) -> SplitPair<S> {
        let (y, v) = (&self.z, &self.w);
        let (z, w) = (&o.z, &o.w);
        SplitPair {
            z: m2_sub(&m2_mul(y, z), &m2_mul(&m2_theta(w), v)),
            w: m2_add(&m2_mul(w, y), &m2_mul(v, &m2_theta(z))),
        }
    }

    /// θ(Z + W e₄) = θ(Z) − W e₄.
    pub fn theta(&self) -> SplitPair<S> {
        SplitPair { z: m2_theta(&self.z), w: std::array::from_fn(|k| -self.w[k].clone()) }
    }
}

/// `MUL_TABLE[i][j] = (s, k)` means `e_i e_j = s e_k`.
pub fn mul_table() -> &'static [[(i8, usize); 8]; 8] {
    static TABLE: OnceLock<[[(i8, usize); 8]; 8]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [[(0i8, 0usize); 8]; 8];
        for i in 0..8 {
            for j in 0..8 {
                let p = Oct::<f64>::basis(i).to_split().mul(&Oct::<f64>::basis(j).to_split());
                let r = Oct::from_split(&p);
                let mut found = None;
                for k in 0..8 {
                    let c = &r.c[k];
                    if c.re != 0.0 || c.im != 0.0 {
                        assert!(found.is_none() && c.im == 0.0 && c.re.abs() == 1.0);
                        found = Some((c.re as i8, k));
                    }
                }
                t[i][j] = found.expect("basis product is a signed basis element");
            }
        }
        t
    })
}

impl<S: Scalar> Oct<S> {
    pub fn zero() -> Self {
        Oct { c: std::array::from_fn(|_| Cx::zero()) }
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    pub fn basis(i: usize) -> Self {
        let mut o = Self::zero();
        o.c[i] = Cx::one();
        o
    }

    pub fn from_real(c: [S; 8]) -> Self {
        let mut it = c.into_iter();
        Oct { c: std::array::from_fn(|_| Cx::real(it.next().unwrap())) }
    }

    pub fn scalar(s: Cx<S>) -> Self {
        let mut o = Self::zero();
        o.c[0] = s;
        o
    }

    pub fn to_split(&self) -> SplitPair<S> {
        SplitPair { z: rho_h(&self.c[0..4]), w: rho_h(&self.c[4..8]) }
    }

    pub fn from_split(p: &SplitPair<S>) -> Self {
        let a = rho_h_inv(&p.z);
        let b = rho_h_inv(&p.w);
        let mut it = a.into_iter().chain(b);
        Oct { c: std::array::from_fn(|_| it.next().unwrap()) }
    }

    /// Product through the generated table.
    pub fn mul(&self, o: &Oct<S>) -> Oct<S> {
        let t = mul_table();
        let mut out = Self::zero();
        for i in 0..8 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..8 {
                if o.c[j].is_zero() {
                    continue;
                }
                let (s, k) = t[i][j];
                let p = self.c[i].clone() * o.c[j].clone();
                out.c[k] = if s > 0 { out.c[k].clone() + p } else { out.c[k].clone() - p };
            }
        }
        out
    }

    /// Product through the split matrix rule (independent code path).
    pub fn mul_split(&self, o: &Oct<S>) -> Oct<S> {
        Self::from_split(&self.to_split().mul(&o.to_split()))
    }

    pub fn theta(&self) -> Oct<S> {
        Oct { c: std::array::from_fn(|k| if k == 0 { self.c[0].clone() } else { -self.c[k].clone() }) }
    }

    /// Coefficientwise complex conjugation.
    pub fn conj(&self) -> Oct<S> {
        Oct { c: std::array::from_fn(|k| self.c[k].conj()) }
    }

    /// Bilinear norm Σ cᵢ² (equals |a|² for real octonions).
    pub fn norm_sq(&self) -> Cx<S> {
        self.c.iter().fold(Cx::zero(), |acc, x| acc + x.clone() * x.clone())
    }

    /// Hermitian norm Σ |cᵢ|².
    pub fn herm_norm_sq(&self) -> S {
        self.c.iter().fold(S::zero(), |acc, x| acc + x.norm_sqr())
    }

    pub fn real_part(&self) -> Cx<S> {
        self.c[0].clone()
    }

    /// Bilinear ⟨a, b⟩ = Σ aᵢbᵢ.
    pub fn dot(&self, o: &Oct<S>) -> Cx<S> {
        (0..8).fold(Cx::zero(), |acc, k| acc + self.c[k].clone() * o.c[k].clone())
    }

    pub fn scale(&self, s: &Cx<S>) -> Oct<S> {
        Oct { c: std::array::from_fn(|k| self.c[k].clone() * s.clone()) }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_real(&self) -> bool {
        self.c.iter().all(|x| x.is_real())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&Cx<S>) -> Cx<T>) -> Oct<T> {
        Oct { c: std::array::from_fn(|k| f(&self.c[k])) }
    }
}

impl<S: Scalar> Add for Oct<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Oct { c: std::array::from_fn(|k| self.c[k].clone() + o.c[k].clone()) }
    }
}

impl<S: Scalar> Sub for Oct<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Oct { c: std::array::from_fn(|k| self.c[k].clone() - o.c[k].clone()) }
    }
}

impl<S: Scalar> Neg for Oct<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Oct { c: std::array::from_fn(|k| -self.c[k].clone()) }
    }
}

impl<S: Scalar> Mul for &Oct<S> {
    type Output = Oct<S>;
    fn mul(self, o: Self) -> Oct<S> {
        Oct::mul(self, o)
    }
}

/// 16 decimal strings, re/im interleaved per basis element.
pub fn oct_to_json_f64(a: &Oct<f64>) -> serde_json::Value {
    let mut v = Vec::with_capacity(16);
    for c in &a.c {
        v.push(serde_json::Value::String(format!("{:e}", c.re)));
        v.push(serde_json::Value::String(format!("{:e}", c.im)));
    }
    serde_json::Value::Array(v)
}

/// 16 `"p/q"` strings, re/im interleaved per basis element.
pub fn oct_to_json_q(a: &Oct<Q>) -> serde_json::Value {
    let mut v = Vec::with_capacity(16);
    for c in &a.c {
        v.push(serde_json::Value::String(q_to_string(&c.re)));
        v.push(serde_json::Value::String(q_to_string(&c.im)));
    }
    serde_json::Value::Array(v)
}

fn json_strings(v: &serde_json::Value) -> Option<Vec<String>> {
    let arr = v.as_array()?;
    if arr.len() != 16 {
        return None;
    }
    arr.iter().map(|x| x.as_str().map(str::to_owned)).collect()
}

pub fn oct_from_json_f64(v: &serde_json::Value) -> Option<Oct<f64>> {
    let s = json_strings(v)?;
    let vals: Option<Vec<f64>> = s.iter().map(|x| x.trim().parse().ok()).collect();
    let vals = vals?;
    Some(Oct { c: std::array::from_fn(|k| Cx::new(vals[2 * k], vals[2 * k + 1])) })
}

pub fn oct_from_json_q(v: &serde_json::Value) -> Option<Oct<Q>> {
    let s = json_strings(v)?;
    let vals: Option<Vec<Q>> = s.iter().map(|x| q_parse(x)).collect();
    let vals = vals?;
    Some(Oct { c: std::array::from_fn(|k| Cx::new(vals[2 * k].clone(), vals[2 * k + 1].clone())) })
}
