//! The map τ from the punctured cotangent bundle of the Cayley plane onto the
//! null cone {A² = 0, A ≠ 0} of J(3)^C, its inverse, and the scaling actions.

use crate::jordan::Jordan;
use crate::linalg::solve;
use crate::plane::{chart_frame, chart_point, metric};
use crate::scalar::{Cx, Dual, Real, Scalar};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// A point (X, Y) with X on the plane and Y ≠ 0 tangent at X.
#[derive(Clone, Debug, PartialEq)]
pub struct CotangentPoint<S> {
    pub x: Jordan<S>,
    pub y: Jordan<S>,
}

/// Serialized form: chart coordinates and tangent coefficients on the chart frame.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartCotangent {
    pub bc: [f64; 16],
    pub tangent: [f64; 16],
}

impl ChartCotangent {
    pub fn to_point(&self) -> Result<CotangentPoint<f64>> {
        let x = chart_point(&self.bc)?;
        let frame = chart_frame(&self.bc)?;
        let y = frame.iter().zip(&self.tangent).fold(Jordan::zero(), |acc, (f, t)| acc + f.scale_re(t));
        Ok(CotangentPoint { x, y })
    }
}

fn sqrt2<S: Real>() -> S {
    S::from_i64(2).sqrt()
}

/// τ(X, Y) = ‖Y‖²X − Y² + i‖Y‖Y/√2.
pub fn tau<S: Real>(p: &CotangentPoint<S>) -> Result<Jordan<S>> {
    let n2 = p.y.norm_sq();
    if n2.is_zero() {
        return Err(Error::ZeroSection);
    }
    let n = n2.clone().sqrt();
    let im = p.y.scale(&Cx::new(S::zero(), n / sqrt2()));
    Ok(p.x.scale_re(&n2) - p.y.square() + im)
}

/// τ over an exact field when ‖Y‖/√2 = `half_norm` is known in that field:
/// ‖Y‖²X − Y² + i·half_norm·Y, after checking 2·half_norm² = ‖Y‖².
pub fn tau_exact<S: Scalar>(p: &CotangentPoint<S>, half_norm: &S) -> Result<Jordan<S>> {
    let n2 = p.y.norm_sq();
    if n2.is_zero() {
        return Err(Error::ZeroSection);
    }
    if half_norm.clone() * half_norm.clone() * S::from_i64(2) != n2 {
        return Err(Error::Invalid("half_norm does not match ‖Y‖/√2".into()));
    }
    Ok(p.x.scale_re(&n2) - p.y.square() + p.y.scale(&Cx::new(S::zero(), half_norm.clone())))
}

/// ‖A²‖ / ‖A‖², the relative failure of A to lie on the null cone.
pub fn null_residual<S: Real>(a: &Jordan<S>) -> f64 {
    a.square().norm_sq().to_f64().sqrt() / a.norm_sq().to_f64()
}

/// Inverse of τ; rejects A = 0 and points whose relative null residual exceeds `tol`.
pub fn tau_inv<S: Real>(a: &Jordan<S>, tol: f64) -> Result<CotangentPoint<S>> {
    let n2 = a.norm_sq();
    if n2.is_zero() {
        return Err(Error::ZeroSection);
    }
    let r = null_residual(a);
    if !(r <= tol) {
        return Err(Error::NotNull(r));
    }
    let n = n2.clone().sqrt();
    let ab = a.conj();
    let x = (a.clone() + ab.clone()).scale_re(&(S::one() / (n.clone() + n.clone())))
        + a.jordan(&ab).scale_re(&(S::one() / n2));
    // −(i/√2)‖A‖^{−1/2}(A − Ā) = √2 ‖A‖^{−1/2} Im A
    let (_, im) = a.re_im();
    let y = im.scale_re(&(sqrt2::<S>() / n.sqrt()));
    Ok(CotangentPoint { x, y })
}

/// Tolerance used when inverting float points produced by τ.
pub const NULL_TOL: f64 = 1e-9;

/// Plane point and tangent vector for Darboux coordinates `qp = (b, c, β, γ)`,
/// where the momentum is the covector g(Y, ·) on the chart frame.
pub fn cotangent_state<S: Real>(qp: &[S; 32]) -> Result<CotangentPoint<S>> {
    let bc: [S; 16] = std::array::from_fn(|k| qp[k].clone());
    let x = chart_point(&bc)?;
    let frame = chart_frame(&bc)?;
    let g = metric(&frame);
    let p: Vec<S> = qp[16..].to_vec();
    let t = solve(&g, &p).ok_or_else(|| Error::Numerical("singular chart metric".into()))?;
    let y = frame.iter().zip(&t).fold(Jordan::zero(), |acc, (f, ti)| acc + f.scale_re(ti));
    Ok(CotangentPoint { x, y })
}

/// τ in Darboux coordinates.
pub fn embed_state<S: Real>(qp: &[S; 32]) -> Result<Jordan<S>> {
    tau(&cotangent_state(qp)?)
}

/// τ(qp) and the 32 pushed-forward coordinate vectors ∂A/∂qp_j.
pub fn push_frame(qp: &[f64; 32]) -> Result<(Jordan<f64>, Vec<Jordan<f64>>)> {
    let a = embed_state(qp)?;
    let frame = (0..32)
        .map(|j| {
            let d: [Dual<f64>; 32] = std::array::from_fn(|k| Dual { v: qp[k], d: if k == j { 1.0 } else { 0.0 } });
            Ok(embed_state(&d)?.map(|c| Cx::new(c.re.d, c.im.d)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((a, frame))
}

/// Darboux coordinates of the point τ(X₁, s·Y₁) with the tangent vector along c₀.
pub fn x1_state(s: f64) -> [f64; 32] {
    // Y₁ = ∂X/∂c₀ / √2 at the origin and g is the identity there
    let mut qp = [0.0; 32];
    qp[24] = s / 2f64.sqrt();
    qp
}

/// g₀ = exp(−√2 π ‖A‖^{1/2}).
pub fn g0_weight(a: &Jordan<f64>) -> f64 {
    (-(2f64.sqrt()) * std::f64::consts::PI * a.norm_sq().sqrt().sqrt()).exp()
}

/// g₀ through the fibre norm: exp(−√2 π ‖Y‖).
pub fn g0_from_tangent(y: &Jordan<f64>) -> f64 {
    (-(2f64.sqrt()) * std::f64::consts::PI * y.norm_sq().sqrt()).exp()
}

/// T_t(A) = tA for t > 0.
pub fn dilate(a: &Jordan<f64>, t: f64) -> Result<Jordan<f64>> {
    if !(t > 0.0) {
        return Err(Error::Invalid(format!("dilation parameter must be positive, got {t}")));
    }
    Ok(a.scale_re(&t))
}

/// φ_t(A) = e^{2it}A.
pub fn flow(a: &Jordan<f64>, t: f64) -> Jordan<f64> {
    a.scale(&Cx::new((2.0 * t).cos(), (2.0 * t).sin()))
}

/// Phase picked up by a degree-k section under φ_t, given the homogeneity
/// degree of Ω (measured, see `volume::omega_scaling_exponent`).
pub fn flow_phase(k: usize, t: f64, omega_degree: f64) -> f64 {
    2.0 * t * (omega_degree + k as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{a1, sqrt2_y1, x1, y1};
    use crate::sample::{gaussian_vec, rand_w1, rng};

    fn close(a: &Jordan<f64>, b: &Jordan<f64>, tol: f64) -> bool {
        (a.clone() - b.clone()).norm_sq().sqrt() < tol
    }

    #[test]
    fn tau_anchor_examples() {
        let half_a1 = a1::<f64>().scale_re(&0.5);
        let a = tau(&CotangentPoint { x: x1(), y: y1() }).unwrap();
        assert!(close(&a, &half_a1, 1e-15));
        let a = tau(&CotangentPoint { x: x1(), y: sqrt2_y1() }).unwrap();
        assert!(close(&a, &a1(), 1e-15));
        assert_eq!(tau(&CotangentPoint { x: x1::<f64>(), y: Jordan::zero() }), Err(Error::ZeroSection));
    }

    #[test]
    fn tau_inv_anchor() {
        let p = tau_inv(&a1::<f64>(), NULL_TOL).unwrap();
        assert!(close(&p.x, &x1(), 1e-15));
        assert!(close(&p.y, &sqrt2_y1(), 1e-15));
        assert_eq!(tau_inv(&Jordan::<f64>::zero(), NULL_TOL), Err(Error::ZeroSection));
        assert!(matches!(tau_inv(&x1::<f64>(), NULL_TOL), Err(Error::NotNull(_))));
    }

    #[test]
    fn darboux_state_at_x1() {
        let p = cotangent_state(&x1_state(1.0)).unwrap();
        assert!(close(&p.x, &x1(), 1e-15));
        assert!(close(&p.y, &y1(), 1e-15));
    }

    #[test]
    fn round_trip_and_norms_on_random_states() {
        let mut r = rng(11);
        for _ in 0..200 {
            let bc = rand_w1(&mut r, 0.95);
            let t: [f64; 16] = gaussian_vec(&mut r);
            let p = ChartCotangent { bc, tangent: t }.to_point().unwrap();
            let a = tau(&p).unwrap();
            assert!(null_residual(&a) < 1e-12);
            assert!(a.trace().re.abs() < 1e-12 && a.trace().im.abs() < 1e-12);
            let ny2 = p.y.norm_sq();
            assert!((a.norm_sq().sqrt() - ny2).abs() < 1e-10 * ny2);
            let (re, im) = a.re_im();
            assert!((re.norm_sq() - 0.5 * ny2 * ny2).abs() < 1e-10 * ny2 * ny2);
            assert!((im.norm_sq() - 0.5 * ny2 * ny2).abs() < 1e-10 * ny2 * ny2);
            let back = tau_inv(&a, NULL_TOL).unwrap();
            assert!(close(&back.x, &p.x, 1e-9));
            assert!(close(&back.y, &p.y, 1e-9 * (1.0 + ny2.sqrt())));
            assert!((g0_weight(&a) - g0_from_tangent(&p.y)).abs() < 1e-12);
        }
    }

    #[test]
    fn dilation_and_flow() {
        let a: Jordan<f64> = a1();
        let p = tau_inv(&dilate(&a, 2.0).unwrap(), NULL_TOL).unwrap();
        assert!(close(&p.x, &x1(), 1e-14));
        assert!(close(&p.y, &sqrt2_y1::<f64>().scale_re(&2f64.sqrt()), 1e-14));
        assert!(close(&p.y, &y1::<f64>().scale_re(&2.0), 1e-14));
        assert!(dilate(&a, 0.0).is_err());
        let f = flow(&a, 0.7);
        assert!((f.norm_sq() - a.norm_sq()).abs() < 1e-14);
        assert!(null_residual(&f) < 1e-15);
        let ph = flow_phase(0, std::f64::consts::PI, 11.0);
        assert!((ph / (2.0 * std::f64::consts::PI) - 11.0).abs() < 1e-12);
        assert!((g0_weight(&a) - (-2.0 * std::f64::consts::PI).exp()).abs() < 1e-16);
    }

    #[test]
    fn frame_has_full_real_rank() {
        let (_, frame) = push_frame(&x1_state(1.0)).unwrap();
        let rows: Vec<Vec<f64>> = frame
            .iter()
            .map(|w| {
                crate::jordan::real_coords(&w.re_im().0)
                    .into_iter()
                    .chain(crate::jordan::real_coords(&w.re_im().1))
                    .collect()
            })
            .collect();
        let m = nalgebra::DMatrix::from_fn(32, 54, |i, j| rows[i][j]);
        assert_eq!(m.rank(1e-10), 32);
    }
}
