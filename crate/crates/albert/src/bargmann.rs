//! Per-degree constants of the Bargmann-type transform: b_k, a_k and the
//! norm ratio N(k), the ε-regime classification, the reproducing-kernel
//! majorant and a Monte-Carlo check of the diagonal fiber integral.
//!
//! Everything is evaluated in log space; Γ(4k+44+2ε) overflows f64 near k = 35.

use crate::harmonic::dim_h;
use crate::sample::shard_rng;
use crate::scalar::{q, Q};
use crate::{Error, Result};
use num_traits::ToPrimitive;
use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;
use std::f64::consts::{LN_2, PI, SQRT_2};

/// The isomorphism weight −47/4.
pub const EPS_ISO: f64 = -11.75;
/// Below or at this weight a finite-dimensional patch is needed.
pub const EPS_PATCH: f64 = -22.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BargmannParams {
    pub k: u64,
    pub epsilon: f64,
}

/// Volumes the closed forms carry as overall factors. Never evaluated, so they
/// default to 1 and every check is formulated so that they drop out.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Volumes {
    /// Vol(S(P²O)), the unit cotangent sphere bundle.
    pub sphere_bundle: f64,
    /// Vol(P²O).
    pub plane: f64,
}

impl Default for Volumes {
    fn default() -> Self {
        Volumes { sphere_bundle: 1.0, plane: 1.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Isomorphism,
    ForwardBoundedOnly,
    InverseBoundedOnly,
    FiniteDimPatchRequired,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Isomorphism => "isomorphism",
            Regime::ForwardBoundedOnly => "forward-bounded-only",
            Regime::InverseBoundedOnly => "inverse-bounded-only",
            Regime::FiniteDimPatchRequired => "finite-dim-patch-required",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn regime(epsilon: f64) -> Regime {
    if epsilon == EPS_ISO {
        Regime::Isomorphism
    } else if epsilon > EPS_ISO {
        Regime::ForwardBoundedOnly
    } else if epsilon > EPS_PATCH {
        Regime::InverseBoundedOnly
    } else {
        Regime::FiniteDimPatchRequired
    }
}

/// Smallest k ≥ 0 with 4k + 44 + 2ε > 0.
pub fn fock_min_degree(epsilon: f64) -> u64 {
    let bound = -11.0 - epsilon / 2.0;
    if bound < 0.0 {
        0
    } else {
        bound.floor() as u64 + 1
    }
}

/// Degrees excluded from the weighted space, which the finite-dimensional
/// patch has to cover; `None` outside the patch regime.
pub fn patch_degrees(epsilon: f64) -> Option<std::ops::Range<u64>> {
    (regime(epsilon) == Regime::FiniteDimPatchRequired).then(|| 0..fock_min_degree(epsilon))
}

/// (λ_k, e^{it}-phase exponent) = (k² + 11k, 2(11 + k)).
pub fn spectral_data(k: u64) -> (u64, u64) {
    (k * k + 11 * k, 2 * (11 + k))
}

pub fn ln_dim_h(k: u64) -> f64 {
    let d = dim_h(k as usize);
    match d.to_f64() {
        Some(x) if x.is_finite() => x.ln(),
        _ => {
            let shift = d.bits().saturating_sub(60);
            (d >> shift).to_f64().unwrap().ln() + shift as f64 * LN_2
        }
    }
}

fn check_gamma_arg(p: &BargmannParams) -> Result<f64> {
    let arg = 4.0 * p.k as f64 + 44.0 + 2.0 * p.epsilon;
    if !(arg > 0.0) || !p.epsilon.is_finite() {
        return Err(Error::GammaPole { k: p.k, arg });
    }
    Ok(arg)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantsRecord {
    pub k: u64,
    pub epsilon: f64,
    /// ln b_k with Vol(S(P²O)) factored out.
    pub log_bk_unitvol: f64,
    /// ln a_k with Vol(S¹⁵)·Vol(P²O) factored out.
    pub log_ak_unitvol: f64,
    /// ln b_k including the volume placeholders.
    pub log_bk: f64,
    /// ln a_k including Vol(S¹⁵) and the plane volume placeholder.
    pub log_ak: f64,
    /// ln N(k)², free of volumes.
    #[serde(rename = "logN2")]
    pub log_n2: f64,
    pub regime: Regime,
}

/// ln b_k / Vol(S(P²O)) = −(40+3ε)ln2 − (44+2ε)lnπ + lnΓ(4k+44+2ε) − 8k ln2 − 4k lnπ − ln dim H_k.
pub fn log_bk_unitvol(p: &BargmannParams) -> Result<f64> {
    let arg = check_gamma_arg(p)?;
    let (k, e) = (p.k as f64, p.epsilon);
    Ok(-(40.0 + 3.0 * e) * LN_2 - (44.0 + 2.0 * e) * PI.ln() + ln_gamma(arg)
        - 8.0 * k * LN_2
        - 4.0 * k * PI.ln()
        - ln_dim_h(p.k))
}

/// ln a_k / (Vol(S¹⁵)Vol(P²O)) = −5ln2 − 22lnπ + lnΓ(2k+22) − 2k ln2 − 2k lnπ − ln dim H_k.
pub fn log_ak_unitvol(k: u64) -> f64 {
    let kf = k as f64;
    -5.0 * LN_2 - 22.0 * PI.ln() + ln_gamma(2.0 * kf + 22.0) - 2.0 * kf * LN_2 - 2.0 * kf * PI.ln() - ln_dim_h(k)
}

pub fn log_bk(p: &BargmannParams, vols: &Volumes) -> Result<f64> {
    Ok(vols.sphere_bundle.ln() + log_bk_unitvol(p)?)
}

pub fn log_ak(k: u64, vols: &Volumes) -> f64 {
    ln_vol_s15() + vols.plane.ln() + log_ak_unitvol(k)
}

/// ln N(k)² with N(k)² = 2^{4k}·dim H_k·Γ(4k+44+2ε)/(2^{8k}·Γ(2k+22)²).
pub fn log_n2(p: &BargmannParams) -> Result<f64> {
    let arg = check_gamma_arg(p)?;
    let k = p.k as f64;
    Ok(4.0 * k * LN_2 + ln_dim_h(p.k) + ln_gamma(arg) - 8.0 * k * LN_2 - 2.0 * ln_gamma(2.0 * k + 22.0))
}

/// Vol(S¹⁵) = 2π⁸/7!.
pub fn ln_vol_s15() -> f64 {
    LN_2 + 8.0 * PI.ln() - ln_gamma(8.0)
}

pub fn constants(p: &BargmannParams) -> Result<ConstantsRecord> {
    constants_with(p, &Volumes::default())
}

/// As [`constants`], with explicit volume placeholders entering b_k and a_k.
pub fn constants_with(p: &BargmannParams, vols: &Volumes) -> Result<ConstantsRecord> {
    Ok(ConstantsRecord {
        k: p.k,
        epsilon: p.epsilon,
        log_bk_unitvol: log_bk_unitvol(p)?,
        log_ak_unitvol: log_ak_unitvol(p.k),
        log_bk: log_bk(p, vols)?,
        log_ak: log_ak(p.k, vols),
        log_n2: log_n2(p)?,
        regime: regime(p.epsilon),
    })
}

/// ln N(k)² from the product form obtained with the Gauss multiplication
/// theorem (n = 4 on Γ(4k+44+2ε), n = 2 on Γ(2k+22)):
/// 2^{44+4ε}(2π)^{−1/2} dim H_k Π_{j<4} Γ(k+11+ε/2+j/4) / (Γ(k+11)Γ(k+11½))².
pub fn log_n2_product(p: &BargmannParams) -> Result<f64> {
    check_gamma_arg(p)?;
    let z = p.k as f64 + 11.0 + p.epsilon / 2.0;
    let w = p.k as f64 + 11.0;
    let prod: f64 = (0..4).map(|j| ln_gamma(z + j as f64 / 4.0)).sum();
    Ok((44.0 + 4.0 * p.epsilon) * LN_2 - 0.5 * (2.0 * PI).ln() + ln_dim_h(p.k) + prod
        - 2.0 * ln_gamma(w)
        - 2.0 * ln_gamma(w + 0.5))
}

/// Both sides of lnΓ(nz) = (nz − ½)ln n − ((n−1)/2)ln 2π + Σ_{j<n} lnΓ(z + j/n).
pub fn gauss_multiplication(n: u32, z: f64) -> (f64, f64) {
    let nf = n as f64;
    let rhs = (nf * z - 0.5) * nf.ln() - (nf - 1.0) / 2.0 * (2.0 * PI).ln()
        + (0..n).map(|j| ln_gamma(z + j as f64 / nf)).sum::<f64>();
    (ln_gamma(nf * z), rhs)
}

/// Largest relative disagreement between the two N(k)² formulas over k ≤ k_max.
pub fn gauss_multiplication_check(k_max: u64, epsilon: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in 0..=k_max {
        let p = BargmannParams { k, epsilon };
        if check_gamma_arg(&p).is_err() {
            continue;
        }
        worst = worst.max((log_n2(&p)? - log_n2_product(&p)?).exp_m1().abs());
    }
    Ok(worst)
}

/// An exponent c + c_k·k + c_ε·ε with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineExponent {
    pub constant: Q,
    pub k: Q,
    pub epsilon: Q,
}

impl AffineExponent {
    fn new(c: Q, k: Q, e: Q) -> Self {
        AffineExponent { constant: c, k, epsilon: e }
    }
    fn add(&self, o: &Self) -> Self {
        AffineExponent::new(&self.constant + &o.constant, &self.k + &o.k, &self.epsilon + &o.epsilon)
    }
    fn scale(&self, s: &Q) -> Self {
        AffineExponent::new(&self.constant * s, &self.k * s, &self.epsilon * s)
    }
}

/// Power of 2 left in N(k)² after rewriting both Γ factors with the
/// multiplication theorem, tracked symbolically in k and ε.
///
/// Γ(4z) contributes 4^{4z−½} with z = k + 11 + ε/2; each Γ(2w) in the
/// denominator contributes 2^{2w−½} with w = k + 11; the explicit factors are
/// 2^{4k} and 2^{−8k}.
pub fn power_of_two_exponent() -> AffineExponent {
    let z4 = AffineExponent::new(q(44, 1), q(4, 1), q(2, 1)); // 4z
    let from_gamma4 = z4.add(&AffineExponent::new(q(-1, 2), q(0, 1), q(0, 1))).scale(&q(2, 1));
    let w2 = AffineExponent::new(q(22, 1), q(2, 1), q(0, 1)); // 2w
    let from_gamma2 = w2.add(&AffineExponent::new(q(-1, 2), q(0, 1), q(0, 1))).scale(&q(-2, 1));
    let explicit = AffineExponent::new(q(0, 1), q(4 - 8, 1), q(0, 1));
    from_gamma4.add(&from_gamma2).add(&explicit)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticReport {
    pub epsilon: f64,
    pub k_max: u64,
    /// ln N(k) for k = 0..=k_max (NaN where the weight is not integrable).
    pub log_n: Vec<f64>,
    /// N(k_max)/N(k_max − 1).
    pub last_ratio: f64,
    /// Smallest k₀ with N strictly increasing on [k₀, k_max].
    pub increasing_from: Option<u64>,
    /// Smallest k₀ with N strictly decreasing on [k₀, k_max].
    pub decreasing_from: Option<u64>,
}

impl AsymptoticReport {
    /// N(k₂)/N(k₁).
    pub fn ratio(&self, k1: u64, k2: u64) -> f64 {
        (self.log_n[k2 as usize] - self.log_n[k1 as usize]).exp()
    }
}

pub fn asymptotic_regime_probe(epsilon: f64, k_max: u64) -> Result<AsymptoticReport> {
    if k_max < 50 {
        return Err(Error::Invalid(format!("k_max must be at least 50, got {k_max}")));
    }
    let log_n: Vec<f64> =
        (0..=k_max).map(|k| log_n2(&BargmannParams { k, epsilon }).map(|v| v / 2.0).unwrap_or(f64::NAN)).collect();
    let monotone_from = |up: bool| {
        let mut k0 = k_max;
        while k0 > 0 {
            let (a, b) = (log_n[k0 as usize - 1], log_n[k0 as usize]);
            if !(if up { b > a } else { b < a }) {
                break;
            }
            k0 -= 1;
        }
        (k0 < k_max).then_some(k0)
    };
    Ok(AsymptoticReport {
        epsilon,
        k_max,
        last_ratio: (log_n[k_max as usize] - log_n[k_max as usize - 1]).exp(),
        increasing_from: monotone_from(true),
        decreasing_from: monotone_from(false),
        log_n,
    })
}

/// ln b_k − 2 ln a_k − ln N(k)², which is independent of k.
pub fn norm_proportionality(p: &BargmannParams, vols: &Volumes) -> Result<f64> {
    Ok(log_bk(p, vols)? - 2.0 * log_ak(p.k, vols) - log_n2(p)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelMajorant {
    /// ln of 2^{8k}π^{4k}(‖A‖‖B‖)^k dim H_k / Γ(4k+44+2ε), k = 0..=terms.
    pub log_terms: Vec<f64>,
    /// ln of the partial sums.
    pub log_partial_sums: Vec<f64>,
    /// term_{k+1}/term_k.
    pub ratios: Vec<f64>,
    /// Ratio test: the ratios end below 1 and decrease monotonically from some index on.
    pub converges: bool,
}

pub fn kernel_majorant(norm_a: f64, norm_b: f64, epsilon: f64, terms: u64) -> Result<KernelMajorant> {
    if !(norm_a >= 0.0 && norm_b >= 0.0) {
        return Err(Error::Invalid("norms must be nonnegative".into()));
    }
    check_gamma_arg(&BargmannParams { k: 0, epsilon })?;
    let ln_ab = (norm_a * norm_b).ln();
    let log_terms: Vec<f64> = (0..=terms)
        .map(|k| {
            let kf = k as f64;
            let power = if k == 0 { 0.0 } else { kf * ln_ab };
            8.0 * kf * LN_2 + 4.0 * kf * PI.ln() + power + ln_dim_h(k) - ln_gamma(4.0 * kf + 44.0 + 2.0 * epsilon)
        })
        .collect();
    let mut log_partial_sums = Vec::with_capacity(log_terms.len());
    let mut acc = f64::NEG_INFINITY;
    for &t in &log_terms {
        let (hi, lo) = if acc > t { (acc, t) } else { (t, acc) };
        acc = if hi == f64::NEG_INFINITY { hi } else { hi + (lo - hi).exp().ln_1p() };
        log_partial_sums.push(acc);
    }
    let ratios: Vec<f64> = log_terms.windows(2).map(|w| (w[1] - w[0]).exp()).collect();
    let converges = match ratios.last() {
        None => false,
        Some(&last) => {
            let tail_start = ratios.iter().rposition(|&r| r >= 1.0).map_or(0, |i| i + 1);
            last < 1.0 && ratios[tail_start..].windows(2).all(|w| w[1] < w[0])
        }
    };
    Ok(KernelMajorant { log_terms, log_partial_sums, ratios, converges })
}

/// (1/2)^k·Vol(S¹⁵)·Γ(2k+22)/(√2π)^{2k+22} = Γ(2k+22)/(2^{2k+11}π^{2k+22})·Vol(S¹⁵).
pub fn diagonal_closed_form(k: u64) -> f64 {
    let kf = k as f64;
    (ln_gamma(2.0 * kf + 22.0) - (2.0 * kf + 11.0) * LN_2 - (2.0 * kf + 22.0) * PI.ln() + ln_vol_s15()).exp()
}

/// Deterministic path: the fiber integral reduced to its radial part
/// (1/2)^k Vol(S¹⁵) ∫ r^{2k+21} e^{−√2π r} dr by quadrature, as a ratio to the closed form.
pub fn diagonal_radial_ratio(k: u64) -> Result<f64> {
    let r = crate::quad::radial_quadrature(2 * k as u32 + 21, SQRT_2 * PI)?;
    let value = 0.5f64.powi(k as i32) * ln_vol_s15().exp() * r.quadrature;
    Ok(value / diagonal_closed_form(k))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub k: u64,
    pub samples: u64,
    pub seed: u64,
    pub estimate: f64,
    pub closed_form: f64,
    pub ratio: f64,
    /// Standard error of the ratio.
    pub std_err: f64,
    /// 95% confidence interval of the ratio.
    pub ci95: (f64, f64),
}

pub const MC_SHARDS: u64 = 32;

fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        xs.iter().sum()
    } else {
        let (a, b) = xs.split_at(xs.len() / 2);
        pairwise_sum(a) + pairwise_sum(b)
    }
}

/// Monte-Carlo estimate of (1/2)^k ∫_{R¹⁶} (Σβ² + γ²)^{k+3} e^{−√2π r} dβ dγ over the
/// fiber at X₁, divided by the closed form.
///
/// Points are r·u with u uniform on S¹⁵ (a normalised Gaussian) and r drawn
/// from a Gamma(2k+22) law at a slightly slower rate than the integrand, so
/// the importance weights have finite variance. Shards use derived seeds and
/// are combined by pairwise summation, so the result does not depend on the
/// thread count.
pub fn bargmann_diagonal_mc(k: u64, samples: u64, seed: u64) -> Result<McEstimate> {
    if k > 3 {
        return Err(Error::Invalid(format!("k must be at most 3, got {k}")));
    }
    if samples < 100_000 {
        return Err(Error::Invalid(format!("at least 100000 samples are needed, got {samples}")));
    }
    let rate = SQRT_2 * PI;
    let shape = 2.0 * k as f64 + 22.0;
    let proposal_rate = 0.85 * rate;
    let ln_vol = ln_vol_s15();
    let ln_q_norm = shape * proposal_rate.ln() - ln_gamma(shape);
    let gamma = Gamma::new(shape, 1.0 / proposal_rate).map_err(|e| Error::Numerical(e.to_string()))?;
    let shard_stats: Vec<(f64, f64)> = (0..MC_SHARDS)
        .into_par_iter()
        .map(|s| {
            let n = samples / MC_SHARDS + u64::from(s < samples % MC_SHARDS);
            let mut rng = shard_rng(seed, s);
            let mut w = Vec::with_capacity(n as usize);
            for _ in 0..n {
                let g: [f64; 16] = std::array::from_fn(|_| rng.sample(StandardNormal));
                let gn = g.iter().map(|x| x * x).sum::<f64>().sqrt();
                let r: f64 = gamma.sample(&mut rng);
                let r2: f64 = g.iter().map(|x| (r * x / gn).powi(2)).sum();
                let rr = r2.sqrt();
                // f(x) / p(x) with p(x) = q(r) / (r¹⁵ Vol(S¹⁵))
                let ln_f = -(k as f64) * LN_2 + (k as f64 + 3.0) * r2.ln() - rate * rr;
                let ln_p = ln_q_norm + (shape - 1.0) * rr.ln() - proposal_rate * rr - 15.0 * rr.ln() - ln_vol;
                w.push((ln_f - ln_p).exp());
            }
            let sq: Vec<f64> = w.iter().map(|x| x * x).collect();
            (pairwise_sum(&w), pairwise_sum(&sq))
        })
        .collect();
    let sums: Vec<f64> = shard_stats.iter().map(|s| s.0).collect();
    let sqs: Vec<f64> = shard_stats.iter().map(|s| s.1).collect();
    let n = samples as f64;
    let mean = pairwise_sum(&sums) / n;
    let var = (pairwise_sum(&sqs) / n - mean * mean).max(0.0) * n / (n - 1.0);
    let closed_form = diagonal_closed_form(k);
    let ratio = mean / closed_form;
    let std_err = (var / n).sqrt() / closed_form;
    if !ratio.is_finite() || std_err > 0.05 * ratio.abs() {
        return Err(Error::Numerical(format!("Monte-Carlo variance blow-up: ratio {ratio}, standard error {std_err}")));
    }
    Ok(McEstimate {
        k,
        samples,
        seed,
        estimate: mean,
        closed_form,
        ratio,
        std_err,
        ci95: (ratio - 1.96 * std_err, ratio + 1.96 * std_err),
    })
}
