//! Top-form comparisons on the null cone: Ω∧Ω̄ and the Riemannian pairing
//! against the Liouville form, all evaluated on the pushed-forward Darboux frame.

use crate::atlas::{best_chart, chart, coordinate_frame, cy_coefficient, ChartId};
use crate::embedding::push_frame;
use crate::jordan::{Jordan, Vec27};
use crate::kahler::kahler_matrix;
use crate::linalg::{det_c64, pfaffian};
use crate::plane::metric_and_volume;
use crate::scalar::{Cx, Scalar};
use crate::{Error, Result};
use nalgebra::Complex;

/// Top forms evaluated on the oriented frame (τ_*∂q, τ_*∂p), with the
/// orientation flipped if needed so that the Liouville value is positive.
#[derive(Clone, Debug, PartialEq)]
pub struct TopForms {
    pub norm_a: f64,
    /// Pfaffian of the Kähler matrix on the frame, made positive.
    pub liouville: f64,
    /// −1 if the frame orientation was reversed to make the Liouville value positive.
    pub orientation: f64,
    /// Ω∧Ω̄ on the oriented frame.
    pub omega_omega_bar: f64,
    /// (dv ∧ Ω̄) on the oriented frame, dv the Riemannian volume of the base.
    pub pairing: Complex<f64>,
    pub chart: ChartId,
}

fn chart_rows(id: ChartId, frame: &[Jordan<f64>]) -> Vec<Vec<Complex<f64>>> {
    let ch = chart(id);
    let vecs: Vec<Vec27<f64>> = frame.iter().map(|f| f.to_vec27()).collect();
    (0..16).map(|k| vecs.iter().map(|v| v[ch.indices[k]].to_c64()).collect()).collect()
}

/// Ω on 16 tangent vectors (complex 27-vectors given as Jordan elements).
pub fn omega_on(id: ChartId, a: &Jordan<f64>, vs: &[Jordan<f64>]) -> Result<Complex<f64>> {
    let h = cy_coefficient(id, &a.to_vec27())?.to_c64();
    Ok(h * det_c64(&chart_rows(id, vs)))
}

/// Evaluates every top form at the Darboux point `qp`.
pub fn top_forms(qp: &[f64; 32]) -> Result<TopForms> {
    let (a, frame) = push_frame(qp)?;
    let v = a.to_vec27();
    let id = best_chart(&v);
    let liouville_raw = pfaffian(&kahler_matrix(&a, &frame));
    if !(liouville_raw.abs() > 0.0) || !liouville_raw.is_finite() {
        return Err(Error::Numerical("degenerate frame: Liouville value vanishes".into()));
    }
    let orientation = liouville_raw.signum();
    let h = cy_coefficient(id, &v)?.to_c64();
    let rows = chart_rows(id, &frame);
    let mut full = rows.clone();
    full.extend(rows.iter().map(|r| r.iter().map(|z| z.conj()).collect::<Vec<_>>()));
    let oo = h.norm_sqr() * det_c64(&full);
    if oo.im.abs() > 1e-8 * oo.re.abs().max(1e-300) {
        return Err(Error::Numerical(format!("Ω∧Ω̄ not real on the frame: {oo}")));
    }
    let bc: [f64; 16] = std::array::from_fn(|k| qp[k]);
    let (_, dv) = metric_and_volume(&bc)?;
    let omega_p = omega_on(id, &a, &frame[16..])?;
    Ok(TopForms {
        norm_a: a.norm_sq().sqrt(),
        liouville: liouville_raw.abs(),
        orientation,
        omega_omega_bar: orientation * oo.re,
        pairing: omega_p.conj() * (dv * orientation),
        chart: id,
    })
}

/// (Ω∧Ω̄)/Liouville and its normalisation by ‖A‖^14 (the constant C₁).
#[derive(Clone, Debug, PartialEq)]
pub struct VolumeRatio {
    pub norm_a: f64,
    pub ratio: f64,
    pub c1: f64,
    pub sign: f64,
}

pub fn omega_liouville_ratio(qp: &[f64; 32]) -> Result<VolumeRatio> {
    let t = top_forms(qp)?;
    let ratio = t.omega_omega_bar / t.liouville;
    Ok(VolumeRatio { norm_a: t.norm_a, ratio: ratio.abs(), c1: ratio.abs() / t.norm_a.powi(14), sign: ratio.signum() })
}

/// (dv∧Ω̄)/Liouville divided by ‖A‖³.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingConstant {
    pub norm_a: f64,
    pub value: Complex<f64>,
    pub constant: Complex<f64>,
}

pub fn riemann_pairing_constant(qp: &[f64; 32]) -> Result<PairingConstant> {
    let t = top_forms(qp)?;
    let value = t.pairing / t.liouville;
    Ok(PairingConstant { norm_a: t.norm_a, value, constant: value / t.norm_a.powi(3) })
}

/// Ω_{tA}(tV₁, …, tV₁₆) / Ω_A(V₁, …, V₁₆) on the chart coordinate frame at a
/// point given by z₁-chart coordinates; t^11 by homogeneity.
pub fn omega_scaling_ratio<S: Scalar>(c: &crate::atlas::Coords<S>, t: &S) -> Result<Cx<S>> {
    let id = ChartId::z1();
    let v = crate::atlas::solve_chart(id, c)?;
    let frame = coordinate_frame(id, c)?;
    let tc = Cx::real(t.clone());
    let tv: Vec27<S> = std::array::from_fn(|k| v[k].clone() * tc.clone());
    let tframe: Vec<Vec27<S>> = frame.iter().map(|f| std::array::from_fn(|k| f[k].clone() * tc.clone())).collect();
    let before = crate::atlas::cy_form_value(id, &v, &frame)?;
    let after = crate::atlas::cy_form_value(id, &tv, &tframe)?;
    Ok(after / before)
}

/// log₂ of the Ω scaling ratio for t = 2 at an exact rational point.
pub fn omega_scaling_exponent(c: &crate::atlas::Coords<crate::scalar::Q>) -> Result<Option<i64>> {
    let r = omega_scaling_ratio(c, &crate::scalar::q(2, 1))?;
    if !r.im.is_zero() {
        return Ok(None);
    }
    let x = r.re;
    let (n, d) = (x.numer().clone(), x.denom().clone());
    let one = num_bigint::BigInt::from(1);
    let pow2 = |m: &num_bigint::BigInt| -> Option<i64> {
        let bits = m.bits();
        (bits >= 1 && *m == (&one << (bits - 1))).then_some((bits - 1) as i64)
    };
    Ok(match (pow2(&n), pow2(&d)) {
        (Some(a), Some(b)) => Some(a - b),
        _ => None,
    })
}
