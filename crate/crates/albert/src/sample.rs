//! Seeded random inputs for the property batteries.

use crate::jordan::Jordan;
use crate::octonion::Oct;
use crate::scalar::{q, Cx, Dyadic, Scalar, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derived stream for shard `k` of a run seeded with `seed`.
pub fn shard_rng(seed: u64, k: u64) -> Rng64 {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(k + 1);
    r
}

pub fn rand_q(r: &mut Rng64) -> Q {
    q(r.random_range(-12..=12), r.random_range(1..=7))
}

pub fn rand_cx_q(r: &mut Rng64, complex: bool) -> Cx<Q> {
    let re = rand_q(r);
    let im = if complex { rand_q(r) } else { q(0, 1) };
    Cx::new(re, im)
}

pub fn rand_oct_q(r: &mut Rng64, complex: bool) -> Oct<Q> {
    Oct { c: std::array::from_fn(|_| rand_cx_q(r, complex)) }
}

pub fn rand_jordan_q(r: &mut Rng64, complex: bool) -> Jordan<Q> {
    Jordan {
        xi: std::array::from_fn(|_| rand_cx_q(r, complex)),
        z: rand_oct_q(r, complex),
        y: rand_oct_q(r, complex),
        x: rand_oct_q(r, complex),
    }
}

pub fn rand_jordan_f64(r: &mut Rng64, complex: bool) -> Jordan<f64> {
    let mut c = || {
        let re: f64 = r.sample(StandardNormal);
        let im: f64 = if complex { r.sample(StandardNormal) } else { 0.0 };
        Cx::new(re, im)
    };
    Jordan {
        xi: std::array::from_fn(|_| c()),
        z: Oct { c: std::array::from_fn(|_| c()) },
        y: Oct { c: std::array::from_fn(|_| c()) },
        x: Oct { c: std::array::from_fn(|_| c()) },
    }
}

/// Sixteen complex rational chart coordinates with a nonzero pivot (slot 1).
pub fn rand_chart_coords_q(r: &mut Rng64) -> [Cx<Q>; 16] {
    let mut c: [Cx<Q>; 16] = std::array::from_fn(|_| rand_cx_q(r, true));
    while c[1].re == q(0, 1) && c[1].im == q(0, 1) {
        c[1] = rand_cx_q(r, true);
    }
    c
}

pub fn gaussian_vec<const N: usize>(r: &mut Rng64) -> [f64; N] {
    std::array::from_fn(|_| r.sample(StandardNormal))
}

/// A point (b, c) of the W₁ chart with |b|² + |c|² ≤ (frac)²/8.
pub fn rand_w1(r: &mut Rng64, frac: f64) -> [f64; 16] {
    let g: [f64; 16] = gaussian_vec(r);
    let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
    let u: f64 = r.random();
    let rad = frac * (0.125f64).sqrt() * u.powf(1.0 / 16.0);
    std::array::from_fn(|k| g[k] / n * rad)
}

/// A Darboux state (b, c, β, γ): a W₁ point inside 0.9 of the domain radius
/// and a standard Gaussian momentum.
pub fn rand_state(r: &mut Rng64) -> [f64; 32] {
    let bc = rand_w1(r, 0.9);
    let p: [f64; 16] = gaussian_vec(r);
    std::array::from_fn(|k| if k < 16 { bc[k] } else { p[k - 16] })
}

/// Dyadic rational n/2^j with |n| ≤ 12, j ≤ 3.
pub fn rand_dyadic(r: &mut Rng64) -> Dyadic {
    Dyadic::new(r.random_range(-12..=12), r.random_range(0..=3))
}

fn rand_cx_dyadic(r: &mut Rng64, complex: bool) -> Cx<Dyadic> {
    let re = rand_dyadic(r);
    let im = if complex { rand_dyadic(r) } else { Dyadic::zero() };
    Cx::new(re, im)
}

pub fn rand_oct_dyadic(r: &mut Rng64, complex: bool) -> Oct<Dyadic> {
    Oct { c: std::array::from_fn(|_| rand_cx_dyadic(r, complex)) }
}

pub fn rand_jordan_dyadic(r: &mut Rng64, complex: bool) -> Jordan<Dyadic> {
    Jordan {
        xi: std::array::from_fn(|_| rand_cx_dyadic(r, complex)),
        z: rand_oct_dyadic(r, complex),
        y: rand_oct_dyadic(r, complex),
        x: rand_oct_dyadic(r, complex),
    }
}
