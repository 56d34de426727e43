//! Points of the Cayley plane through the chart around X₁ = diag(1,0,0),
//! tangent spaces and the induced metric.

use crate::jordan::{from_real_coords, real_coords, Jordan};
use crate::octonion::Oct;
use crate::scalar::{Cx, Dual, Real, Scalar};
use crate::{Error, Result};
use nalgebra::DMatrix;

/// Chart point M(b, c) for real coordinates `bc = (b₀..b₇, c₀..c₇)`.
pub fn chart_point<S: Real>(bc: &[S; 16]) -> Result<Jordan<S>> {
    let b = Oct::from_real(std::array::from_fn(|k| bc[k].clone()));
    let c = Oct::from_real(std::array::from_fn(|k| bc[k + 8].clone()));
    let nb = b.herm_norm_sq();
    let nc = c.herm_norm_sq();
    if !(nb.clone() + nc.clone() < S::from_ratio(1, 8)) {
        return Err(Error::Domain(format!("|b|^2 + |c|^2 = {} must be < 1/8", (nb + nc).to_f64())));
    }
    let half = S::from_ratio(1, 2);
    let quarter = S::from_ratio(1, 4);
    let t1 = half.clone() + (quarter.clone() - nb - nc.clone()).sqrt();
    let a = b.mul(&c).theta().scale(&Cx::real(S::one() / t1.clone()));
    let t2 = half - (quarter - nc - a.herm_norm_sq()).sqrt();
    let t3 = S::one() - t1.clone() - t2.clone();
    Ok(Jordan { xi: [Cx::real(t1), Cx::real(t2), Cx::real(t3)], z: c, y: b, x: a })
}

/// Coordinate frame ∂M/∂(b, c) by forward-mode differentiation.
pub fn chart_frame<S: Real>(bc: &[S; 16]) -> Result<Vec<Jordan<S>>> {
    (0..16)
        .map(|j| {
            let d: [Dual<S>; 16] =
                std::array::from_fn(|k| Dual { v: bc[k].clone(), d: if k == j { S::one() } else { S::zero() } });
            let x = chart_point(&d)?;
            Ok(x.map(|c| Cx::new(c.re.d.clone(), c.im.d.clone())))
        })
        .collect()
}

/// Riemannian metric g(Y₁, Y₂) = ½ tr(Y₁∘Y₂). The factor ½ is the
/// normalisation under which τ pulls the Kähler form back to the canonical
/// symplectic form; it makes the chart metric the identity at X₁.
pub fn riemann_inner<S: Real>(u: &Jordan<S>, v: &Jordan<S>) -> S {
    u.inner(v).re / S::from_i64(2)
}

/// g_ij = g(∂ᵢX, ∂ⱼX) on a frame.
pub fn metric<S: Real>(frame: &[Jordan<S>]) -> Vec<Vec<S>> {
    let n = frame.len();
    (0..n).map(|i| (0..n).map(|j| riemann_inner(&frame[i], &frame[j])).collect()).collect()
}

/// Metric in chart coordinates and the volume density √det g.
pub fn metric_and_volume(bc: &[f64; 16]) -> Result<(Vec<Vec<f64>>, f64)> {
    let g = metric(&chart_frame(bc)?);
    let d = crate::linalg::det_f64(&g);
    Ok((g, d.sqrt()))
}

/// max(‖X∘X − X‖/‖X‖, |tr X − 1|).
pub fn plane_residual(x: &Jordan<f64>) -> f64 {
    let n = x.norm_sq().sqrt();
    let e = (x.jordan(x) - x.clone()).norm_sq().sqrt() / n;
    e.max((x.trace().re - 1.0).abs()).max(x.trace().im.abs())
}

/// max(‖X∘Y − ½Y‖, |tr Y|).
pub fn tangent_residual(x: &Jordan<f64>, y: &Jordan<f64>) -> f64 {
    let e = (x.jordan(y) - y.scale_re(&0.5)).norm_sq().sqrt();
    e.max(y.trace().re.abs())
}

/// Basis of {Y real : X∘Y = ½Y, tr Y = 0}; fails unless the kernel is 16-dimensional.
pub fn tangent_space_basis(x: &Jordan<f64>) -> Result<Vec<Jordan<f64>>> {
    let mut m = DMatrix::<f64>::zeros(28, 27);
    for j in 0..27 {
        let mut e = [0.0; 27];
        e[j] = 1.0;
        let y = from_real_coords(&e);
        let img = real_coords(&(x.jordan(&y) - y.scale_re(&0.5)));
        for i in 0..27 {
            m[(i, j)] = img[i];
        }
        m[(27, j)] = y.trace().re;
    }
    let svd = m.svd(false, true);
    let vt = svd.v_t.ok_or_else(|| Error::Numerical("SVD failed".into()))?;
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let null: Vec<usize> = (0..27).filter(|&k| svd.singular_values[k] <= 1e-10 * smax).collect();
    if null.len() != 16 {
        return Err(Error::Numerical(format!("tangent kernel has dimension {}", null.len())));
    }
    Ok(null
        .into_iter()
        .map(|k| {
            let v: Vec<f64> = (0..27).map(|i| vt[(k, i)]).collect();
            from_real_coords(&v)
        })
        .collect())
}

/// The 16 tangent vectors at X₁ with z = eᵢ or y = eᵢ.
pub fn x1_tangent_basis<S: Scalar>() -> Vec<Jordan<S>> {
    let mut out = Vec::with_capacity(16);
    for i in 0..8 {
        out.push(Jordan { z: Oct::basis(i), ..Jordan::zero() });
    }
    for i in 0..8 {
        out.push(Jordan { y: Oct::basis(i), ..Jordan::zero() });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{x1, y1};
    use crate::sample::{rand_w1, rng};

    #[test]
    fn origin_is_x1() {
        assert_eq!(chart_point(&[0.0; 16]).unwrap(), x1());
    }

    #[test]
    fn c_quarter_example() {
        let mut bc = [0.0; 16];
        bc[8] = 0.25;
        let x = chart_point(&bc).unwrap();
        assert!((x.xi[0].re - (0.5 + 3f64.sqrt() / 4.0)).abs() < 1e-15);
        assert!(x.x.is_zero());
        assert!(plane_residual(&x) < 1e-12);
    }

    #[test]
    fn boundary_rejected() {
        let mut bc = [0.0; 16];
        bc[0] = 0.25;
        bc[8] = 0.25;
        assert!(matches!(chart_point(&bc), Err(Error::Domain(_))));
    }

    #[test]
    fn random_points_are_idempotent_with_sixteen_dim_tangent() {
        let mut r = rng(5);
        for _ in 0..20 {
            let bc = rand_w1(&mut r, 0.99);
            let x = chart_point(&bc).unwrap();
            assert!(plane_residual(&x) < 1e-12);
            assert!(x.xi[0].re > 0.5 && x.xi[1].re < 0.5);
            let basis = tangent_space_basis(&x).unwrap();
            for y in &basis {
                assert!(tangent_residual(&x, y) < 1e-12);
            }
            for y in chart_frame(&bc).unwrap() {
                assert!(tangent_residual(&x, &y) < 1e-12);
            }
        }
    }

    #[test]
    fn x1_tangent_space() {
        let x = x1::<f64>();
        for y in x1_tangent_basis::<f64>() {
            assert!(tangent_residual(&x, &y) < 1e-15);
        }
        assert_eq!(tangent_space_basis(&x).unwrap().len(), 16);
        assert!(tangent_residual(&x, &y1()) < 1e-15);
    }

    #[test]
    fn metric_at_origin_is_identity() {
        let (g, vol) = metric_and_volume(&[0.0; 16]).unwrap();
        for i in 0..16 {
            for j in 0..16 {
                assert_eq!(g[i][j], if i == j { 1.0 } else { 0.0 });
            }
        }
        assert!((vol - 1.0).abs() < 1e-12);
        // the trace norm of Y₁ is 1, its Riemannian length squared is ½
        assert!((y1::<f64>().norm_sq() - 1.0).abs() < 1e-15);
        assert!((riemann_inner(&y1::<f64>(), &y1()) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn metric_positive_definite_on_random_points() {
        let mut r = rng(6);
        for _ in 0..50 {
            let (g, vol) = metric_and_volume(&rand_w1(&mut r, 0.99)).unwrap();
            let m = DMatrix::from_fn(16, 16, |i, j| g[i][j]);
            assert_eq!(m, m.transpose());
            assert!(m.symmetric_eigen().eigenvalues.min() > 0.0);
            assert!(vol > 0.0);
        }
    }
}
