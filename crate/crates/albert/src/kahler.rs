//! The Kähler structure of the null cone with potential ‖A‖^{1/2}, compared
//! with the canonical symplectic structure of the cotangent bundle through τ.

use crate::embedding::{cotangent_state, push_frame};
use crate::jordan::Jordan;
use crate::scalar::{Cx, Dual, Real};
use crate::{Error, Result};

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// The potential ‖A‖^{1/2}.
pub fn potential(a: &Jordan<f64>) -> f64 {
    a.norm_sq().sqrt().sqrt()
}

/// Levi form L(U, V) = ∂_U ∂̄_V ‖A‖^{1/2}, linear in U and antilinear in V.
pub fn levi(a: &Jordan<f64>, u: &Jordan<f64>, v: &Jordan<f64>) -> Cx<f64> {
    let s = a.norm_sq();
    let h_uv = u.herm_inner(v);
    let h_ua = u.herm_inner(a);
    let h_av = a.herm_inner(v);
    h_uv.scale(&(0.25 * s.powf(-0.75))) - (h_ua * h_av).scale(&(3.0 / 16.0 * s.powf(-1.75)))
}

/// Real 2-form √(−2)∂̄∂‖A‖^{1/2} evaluated on a pair: 2√2 Im L(U, V).
pub fn kahler_pair(a: &Jordan<f64>, u: &Jordan<f64>, v: &Jordan<f64>) -> f64 {
    2.0 * SQRT2 * levi(a, u, v).im
}

pub fn kahler_matrix(a: &Jordan<f64>, frame: &[Jordan<f64>]) -> Vec<Vec<f64>> {
    let n = frame.len();
    (0..n).map(|i| (0..n).map(|j| kahler_pair(a, &frame[i], &frame[j])).collect()).collect()
}

fn add_scaled(a: &Jordan<f64>, w: &Jordan<f64>, h: f64) -> Jordan<f64> {
    a.clone() + w.scale_re(&h)
}

/// Central second difference of the potential along W.
fn second_diff(a: &Jordan<f64>, w: &Jordan<f64>, h: f64) -> f64 {
    (potential(&add_scaled(a, w, h)) - 2.0 * potential(a) + potential(&add_scaled(a, w, -h))) / (h * h)
}

/// L(W, W) = ¼(D²f[W,W] + D²f[iW,iW]) by finite differences, with the step
/// taken relative to ‖A‖/‖W‖.
fn levi_diag_fd(a: &Jordan<f64>, w: &Jordan<f64>, step: f64) -> f64 {
    let h = step * (a.norm_sq() / w.norm_sq()).sqrt();
    let iw = w.scale(&Cx::i());
    0.25 * (second_diff(a, w, h) + second_diff(a, &iw, h))
}

/// 2√2 Im L(U, V) through the polarisation Im L(U,V) = (L(U+iV) − L(U−iV))/4.
fn kahler_pair_fd(a: &Jordan<f64>, u: &Jordan<f64>, v: &Jordan<f64>, step: f64) -> f64 {
    let iv = v.scale(&Cx::i());
    let plus = levi_diag_fd(a, &(u.clone() + iv.clone()), step);
    let minus = levi_diag_fd(a, &(u.clone() - iv), step);
    2.0 * SQRT2 * (plus - minus) / 4.0
}

pub fn kahler_matrix_fd(a: &Jordan<f64>, frame: &[Jordan<f64>], step: f64) -> Vec<Vec<f64>> {
    let n = frame.len();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let k = kahler_pair_fd(a, &frame[i], &frame[j], step);
            m[i][j] = k;
            m[j][i] = -k;
        }
    }
    m
}

/// Canonical form dθ for θ = Σ pᵢ dqᵢ on the coordinate frame (q, p):
/// dθ(∂qᵢ, ∂pⱼ) = −δᵢⱼ.
pub fn canonical_matrix() -> Vec<Vec<f64>> {
    let mut m = vec![vec![0.0; 32]; 32];
    for i in 0..16 {
        m[i][16 + i] = -1.0;
        m[16 + i][i] = 1.0;
    }
    m
}

fn max_abs_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter().zip(b).flat_map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x - y).abs())).fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticCheck {
    /// Max entry error of the Richardson-extrapolated finite-difference form.
    pub residual: f64,
    /// Max entry error of the plain central difference at the given step.
    pub raw_residual: f64,
    /// Max entry error of the closed-form Levi matrix.
    pub analytic_residual: f64,
}

/// Compares the pullback of √(−2)∂̄∂‖A‖^{1/2} with the canonical form at the
/// Darboux point `qp`. The step is relative to ‖A‖.
pub fn symplectic_residual(qp: &[f64; 32], step: f64) -> Result<SymplecticCheck> {
    if !(step > 0.0) {
        return Err(Error::Invalid(format!("step must be positive, got {step}")));
    }
    // roundoff of a second difference grows like ε/step²
    if f64::EPSILON / (0.25 * step * step) > 1e-3 {
        return Err(Error::Numerical(format!("step {step:e} too small for a second difference")));
    }
    let (a, frame) = push_frame(qp)?;
    let canon = canonical_matrix();
    let k1 = kahler_matrix_fd(&a, &frame, step);
    let k2 = kahler_matrix_fd(&a, &frame, step / 2.0);
    let gap = max_abs_diff(&k1, &k2);
    if gap > 0.1 {
        return Err(Error::Numerical(format!("step {step:e} too large: halving moves entries by {gap:e}")));
    }
    let rich: Vec<Vec<f64>> =
        k1.iter().zip(&k2).map(|(r, s)| r.iter().zip(s).map(|(x, y)| (4.0 * y - x) / 3.0).collect()).collect();
    Ok(SymplecticCheck {
        residual: max_abs_diff(&rich, &canon),
        raw_residual: max_abs_diff(&k1, &canon),
        analytic_residual: max_abs_diff(&kahler_matrix(&a, &frame), &canon),
    })
}

/// The one-form √2 i∂‖A‖^{1/2}(W) = (√2/2)(i D_W f + D_{iW} f), with directional
/// derivatives by Richardson-extrapolated central differences.
pub fn kahler_one_form(a: &Jordan<f64>, w: &Jordan<f64>, step: f64) -> Cx<f64> {
    let h = step * (a.norm_sq() / w.norm_sq()).sqrt();
    let d = |dir: &Jordan<f64>| {
        let c = |h: f64| (potential(&add_scaled(a, dir, h)) - potential(&add_scaled(a, dir, -h))) / (2.0 * h);
        (4.0 * c(h / 2.0) - c(h)) / 3.0
    };
    let dw = d(w);
    let diw = d(&w.scale(&Cx::i()));
    Cx::new(SQRT2 / 2.0 * diw, SQRT2 / 2.0 * dw)
}

/// |τ*(√2 i∂‖A‖^{1/2})(V) − θ(V) − (i/√2) d‖Y‖(V)| along a direction V of
/// the Darboux coordinates.
pub fn one_form_residual(qp: &[f64; 32], dir: &[f64; 32]) -> Result<f64> {
    let d: [Dual<f64>; 32] = std::array::from_fn(|k| Dual { v: qp[k], d: dir[k] });
    let p = cotangent_state(&d)?;
    let a = crate::embedding::tau(&p)?;
    let av = a.map(|c| Cx::new(c.re.v, c.im.v));
    let w = a.map(|c| Cx::new(c.re.d, c.im.d));
    let d_norm_y = p.y.norm_sq().sqrt().d;
    let theta: f64 = (0..16).map(|i| qp[16 + i] * dir[i]).sum();
    let eta = kahler_one_form(&av, &w, 1e-3);
    let expect = Cx::new(theta, d_norm_y / SQRT2);
    Ok((eta - expect).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::x1_state;
    use crate::sample::{gaussian_vec, rand_w1, rng};

    fn random_state(r: &mut crate::sample::Rng64) -> [f64; 32] {
        let bc = rand_w1(r, 0.9);
        let p: [f64; 16] = gaussian_vec(r);
        std::array::from_fn(|k| if k < 16 { bc[k] } else { p[k - 16] })
    }

    #[test]
    fn analytic_levi_form_is_canonical() {
        let mut r = rng(21);
        let mut pts = vec![x1_state(1.0)];
        pts.extend((0..5).map(|_| random_state(&mut r)));
        for qp in &pts {
            let (a, frame) = push_frame(qp).unwrap();
            let k = kahler_matrix(&a, &frame);
            assert!(max_abs_diff(&k, &canonical_matrix()) < 1e-9, "{:?}", &k[0][16..18]);
        }
    }

    #[test]
    fn finite_difference_residual_and_order() {
        let qp = x1_state(1.0);
        let c = symplectic_residual(&qp, 1e-4).unwrap();
        assert!(c.residual < 1e-5, "{c:?}");
        let r1 = symplectic_residual(&qp, 1e-2).unwrap().raw_residual;
        let r2 = symplectic_residual(&qp, 5e-3).unwrap().raw_residual;
        let order = (r1 / r2).log2();
        assert!((order - 2.0).abs() < 0.2, "order {order}");
        assert!(symplectic_residual(&qp, 1e-9).is_err());
    }

    #[test]
    fn one_form_identity() {
        let mut r = rng(23);
        let qp = x1_state(1.0);
        for _ in 0..20 {
            let dir: [f64; 32] = gaussian_vec(&mut r);
            let res = one_form_residual(&qp, &dir).unwrap();
            assert!(res < 1e-6, "{res}");
        }
        let qp = random_state(&mut r);
        let dir: [f64; 32] = gaussian_vec(&mut r);
        assert!(one_form_residual(&qp, &dir).unwrap() < 1e-6);
    }
}
