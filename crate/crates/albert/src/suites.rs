//! Named verification batteries run by the command-line front end.
//!
//! Every suite is deterministic for a fixed seed: each case draws from its own
//! derived random stream, so cases can run concurrently and still reproduce.

use crate::atlas::{self, ChartId};
use crate::bargmann::{self, BargmannParams, Regime, EPS_ISO};
use crate::embedding::{self, ChartCotangent, CotangentPoint};
use crate::harmonic;
use crate::jordan::{self, Jordan};
use crate::kahler;
use crate::octonion::Oct;
use crate::plane;
use crate::report::{Case, Report};
use crate::sample::{self, shard_rng, Rng64};
use crate::scalar::{q, q_to_f64, Cx, Dyadic, Scalar, Q};
use crate::volume;
use crate::{Error, Result};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

pub const SUITES: [&str; 8] = ["octonion", "jordan", "plane", "embedding", "atlas", "harmonic", "bargmann", "all"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    pub suite: String,
    /// Overrides every per-case sample count when set.
    pub samples: Option<usize>,
    pub seed: u64,
    /// Overrides every floating-point tolerance when set.
    pub tol: Option<f64>,
    /// Largest degree for exact harmonic elimination.
    pub cap: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { suite: "all".into(), samples: None, seed: 42, tol: None, cap: 2 }
    }
}

impl SuiteConfig {
    pub fn for_suite(suite: &str, seed: u64) -> Self {
        SuiteConfig { suite: suite.into(), seed, ..Default::default() }
    }
    fn n(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }
    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
    /// Random stream for case number `case`.
    fn rng(&self, case: u64) -> Rng64 {
        shard_rng(self.seed, case)
    }
}

type Job<'a> = Box<dyn Fn() -> Case + Send + Sync + 'a>;

fn run_jobs(jobs: Vec<Job<'_>>) -> Vec<Case> {
    jobs.par_iter().map(|j| j()).collect()
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    let start = Instant::now();
    let cases = match cfg.suite.as_str() {
        "all" => {
            let mut all = Vec::new();
            for s in &SUITES[..SUITES.len() - 1] {
                for mut c in suite_cases(s, cfg)? {
                    c.name = format!("{s}/{}", c.name);
                    all.push(c);
                }
            }
            all
        }
        s => suite_cases(s, cfg)?,
    };
    let echo = serde_json::to_value(cfg).unwrap_or(serde_json::Value::Null);
    Report::new(&cfg.suite, cfg.seed, echo, cases, start.elapsed().as_millis() as u64)
}

pub fn suite_cases(name: &str, cfg: &SuiteConfig) -> Result<Vec<Case>> {
    Ok(match name {
        "octonion" => octonion_cases(cfg),
        "jordan" => jordan_cases(cfg),
        "plane" => plane_cases(cfg),
        "embedding" => embedding_cases(cfg),
        "atlas" => atlas_cases(cfg),
        "harmonic" => harmonic_cases(cfg),
        "bargmann" => bargmann_cases(cfg),
        _ => return Err(Error::Invalid(format!("unknown suite '{name}'; expected one of {}", SUITES.join(", ")))),
    })
}

/// Counts the draws for which `ok` fails.
fn count_failures<T>(n: usize, r: &mut Rng64, draw: impl Fn(&mut Rng64) -> T, ok: impl Fn(&T) -> bool) -> usize {
    (0..n).filter(|_| !ok(&draw(r))).count()
}

fn max_over<T>(n: usize, r: &mut Rng64, draw: impl Fn(&mut Rng64) -> T, f: impl Fn(&T) -> f64) -> f64 {
    (0..n).map(|_| f(&draw(r))).fold(0.0, f64::max)
}

fn oct3(r: &mut Rng64) -> (Oct<Dyadic>, Oct<Dyadic>, Oct<Dyadic>) {
    (sample::rand_oct_dyadic(r, true), sample::rand_oct_dyadic(r, true), sample::rand_oct_dyadic(r, true))
}

pub fn octonion_cases(cfg: &SuiteConfig) -> Vec<Case> {
    let n = cfg.n(500);
    let jobs: Vec<Job> = vec![
        Box::new(move || {
            let f = count_failures(n, &mut cfg.rng(1), oct3, |(a, b, _)| a.mul(a).mul(b) == a.mul(&a.mul(b)));
            Case::exact("left alternative (aa)b = a(ab)", f)
        }),
        Box::new(move || {
            let f = count_failures(n, &mut cfg.rng(2), oct3, |(a, b, _)| a.mul(b).mul(b) == a.mul(&b.mul(b)));
            Case::exact("right alternative (ab)b = a(bb)", f)
        }),
        Box::new(move || {
            let f = count_failures(n, &mut cfg.rng(3), oct3, |(a, b, _)| {
                a.mul(&a.theta().mul(b)) == a.mul(&a.theta()).mul(b)
            });
            Case::exact("a(θ(a)b) = (aθ(a))b", f)
        }),
        Box::new(move || {
            let f = count_failures(n, &mut cfg.rng(4), oct3, |(a, b, _)| a.mul(b).theta() == b.theta().mul(&a.theta()));
            Case::exact("θ(ab) = θ(b)θ(a)", f)
        }),
        Box::new(move || {
            let f = count_failures(n, &mut cfg.rng(5), oct3, |(a, b, c)| {
                let abc = a.mul(b).mul(c).real_part();
                abc == a.mul(&b.mul(c)).real_part() && abc == b.mul(c).mul(a).real_part()
            });
            Case::exact("Re((ab)c) = Re(a(bc)) = Re((bc)a)", f)
        }),
        Box::new(move || {
            let f =
                count_failures(n, &mut cfg.rng(6), oct3, |(a, b, _)| a.mul(b).norm_sq() == a.norm_sq() * b.norm_sq());
            Case::exact("norm composition N(ab) = N(a)N(b)", f)
        }),
        Box::new(move || {
            let f = count_failures(n, &mut cfg.rng(7), oct3, |(a, b, _)| a.mul(b) == a.mul_split(b));
            Case::exact("table product = split-pair product", f)
        }),
    ];
    run_jobs(jobs)
}

fn jordan3(r: &mut Rng64) -> (Jordan<Dyadic>, Jordan<Dyadic>, Jordan<Dyadic>) {
    (sample::rand_jordan_dyadic(r, true), sample::rand_jordan_dyadic(r, true), sample::rand_jordan_dyadic(r, true))
}

pub fn jordan_cases(cfg: &SuiteConfig) -> Vec<Case> {
    let n = cfg.n(500);
    let jobs: Vec<Job> = vec![
        Box::new(move || {
            let f = count_failures(n, &mut cfg.rng(11), jordan3, |(x, y, z)| {
                x.jordan(y).jordan(z).trace() == x.jordan(&y.jordan(z)).trace()
            });
            Case::exact("tr((X∘Y)∘Z) = tr(X∘(Y∘Z))", f)
        }),
        Box::new(move || {
            let f =
                count_failures(n, &mut cfg.rng(12), jordan3, |(x, y, z)| x.jordan(y).inner(z) == x.inner(&y.jordan(z)));
            Case::exact("⟨X∘Y, Z⟩ = ⟨X, Y∘Z⟩", f)
        }),
        Box::new(move || {
            let f = count_failures(
                n,
                &mut cfg.rng(13),
                |r| sample::rand_jordan_dyadic(r, false),
                |a| a.trace_forms().1 == Cx::real(a.norm_sq()),
            );
            Case::exact("T₂ = ‖A‖² on real elements", f)
        }),
        Box::new(move || {
            let f = count_failures(
                n,
                &mut cfg.rng(14),
                |r| sample::rand_jordan_dyadic(r, true),
                |a| a.trace_forms().2 == a.t3_closed(),
            );
            Case::exact("closed-form T₃ = tr(A∘A²)", f)
        }),
        Box::new(move || {
            let f = count_failures(n, &mut cfg.rng(15), jordan3, |(x, y, _)| {
                let x2 = x.square();
                x2.jordan(y).jordan(x) == x2.jordan(&y.jordan(x))
            });
            Case::exact("Jordan identity (X²∘Y)∘X = X²∘(Y∘X)", f)
        }),
        Box::new(move || {
            let f = count_failures(
                n,
                &mut cfg.rng(16),
                |r| sample::rand_jordan_dyadic(r, true),
                |a| Jordan::identity().jordan(a) == *a,
            );
            Case::exact("identity is the unit of ∘", f)
        }),
    ];
    run_jobs(jobs)
}

pub fn plane_cases(cfg: &SuiteConfig) -> Vec<Case> {
    let n = cfg.n(100);
    let tol = cfg.tol(1e-12);
    let jobs: Vec<Job> = vec![
        Box::new(move || {
            let m = max_over(
                n,
                &mut cfg.rng(21),
                |r| sample::rand_w1(r, 0.95),
                |bc| plane::chart_point(bc).map_or(f64::INFINITY, |x| plane::plane_residual(&x)),
            );
            Case::below("chart points satisfy X² = X, tr X = 1", m, tol)
        }),
        Box::new(move || {
            let f = count_failures(
                n,
                &mut cfg.rng(22),
                |r| sample::rand_w1(r, 0.95),
                |bc| {
                    plane::chart_point(bc).and_then(|x| plane::tangent_space_basis(&x)).map_or(false, |b| b.len() == 16)
                },
            );
            Case::exact("tangent space has dimension 16", f)
        }),
        Box::new(move || {
            let (g, _) = plane::metric_and_volume(&[0.0; 16]).expect("origin is in the chart");
            let dev = (0..16)
                .flat_map(|i| (0..16).map(move |j| (i, j)))
                .map(|(i, j)| (g[i][j] - if i == j { 1.0 } else { 0.0 }).abs());
            Case::below("chart metric at X₁ is the identity", dev.fold(0.0, f64::max), tol)
        }),
        Box::new(move || {
            let f = count_failures(
                n,
                &mut cfg.rng(23),
                |r| sample::rand_w1(r, 0.9),
                |bc| {
                    plane::metric_and_volume(bc).map_or(false, |(g, _)| {
                        let m = nalgebra::DMatrix::from_fn(16, 16, |i, j| g[i][j]);
                        m.cholesky().is_some()
                    })
                },
            );
            Case::exact("chart metric is positive definite", f)
        }),
        Box::new(move || {
            let mut bc = [0.0; 16];
            bc[0] = (0.125f64).sqrt();
            Case::flag("domain boundary |b|²+|c|² = 1/8 is rejected", plane::chart_point(&bc).is_err())
        }),
    ];
    run_jobs(jobs)
}

fn random_cotangent(r: &mut Rng64) -> CotangentPoint<f64> {
    let bc = sample::rand_w1(r, 0.95);
    let tangent: [f64; 16] = sample::gaussian_vec(r);
    ChartCotangent { bc, tangent }.to_point().expect("sampled inside the chart")
}

fn jnorm(a: &Jordan<f64>) -> f64 {
    a.norm_sq().sqrt()
}

pub fn embedding_cases(cfg: &SuiteConfig) -> Vec<Case> {
    let n = cfg.n(1000);
    let pts = cfg.n(10);
    let jobs: Vec<Job> = vec![
        Box::new(move || {
            let m = max_over(n, &mut cfg.rng(31), random_cotangent, |p| {
                embedding::tau(p).map_or(f64::INFINITY, |a| embedding::null_residual(&a))
            });
            Case::below("‖τ(X,Y)²‖/‖A‖²", m, cfg.tol(1e-10))
        }),
        Box::new(move || {
            let m = max_over(n, &mut cfg.rng(32), random_cotangent, |p| {
                embedding::tau(p).map_or(f64::INFINITY, |a| a.trace().abs())
            });
            Case::below("|tr τ(X,Y)|", m, cfg.tol(1e-12))
        }),
        Box::new(move || {
            let m = max_over(n, &mut cfg.rng(33), random_cotangent, |p| {
                embedding::tau(p).and_then(|a| embedding::tau_inv(&a, embedding::NULL_TOL)).map_or(f64::INFINITY, |b| {
                    jnorm(&(b.x - p.x.clone())).max(jnorm(&(b.y - p.y.clone())) / jnorm(&p.y))
                })
            });
            Case::below("round trip τ⁻¹∘τ", m, cfg.tol(1e-9))
        }),
        Box::new(move || {
            let m = max_over(n, &mut cfg.rng(34), random_cotangent, |p| {
                let ny2 = p.y.norm_sq();
                embedding::tau(p).map_or(f64::INFINITY, |a| (jnorm(&a) - ny2).abs() / ny2)
            });
            Case::below("‖A‖ = ‖Y‖² (relative)", m, cfg.tol(1e-10))
        }),
        Box::new(|| {
            let p = CotangentPoint { x: jordan::x1::<Q>(), y: jordan::sqrt2_y1::<Q>() };
            let a = embedding::tau_exact(&p, &q(1, 1));
            Case::flag("τ(X₁, √2Y₁) = A₁ exactly", a.map_or(false, |a| a == jordan::a1::<Q>()))
        }),
        Box::new(move || {
            let mut r = cfg.rng(35);
            let states: Vec<[f64; 32]> =
                std::iter::once(embedding::x1_state(1.0)).chain((1..pts).map(|_| sample::rand_state(&mut r))).collect();
            let worst =
                states.iter().try_fold(0.0f64, |m, s| kahler::symplectic_residual(s, 1e-4).map(|c| m.max(c.residual)));
            Case::from_result(
                "Kähler pullback vs canonical form (finite differences)",
                worst.map(|w| Case::below("", w, cfg.tol(1e-5))),
            )
        }),
        Box::new(move || {
            let qp = embedding::x1_state(1.0);
            let order = kahler::symplectic_residual(&qp, 1e-2)
                .and_then(|a| kahler::symplectic_residual(&qp, 5e-3).map(|b| (a.raw_residual / b.raw_residual).log2()));
            Case::from_result("finite-difference convergence order", order.map(|o| Case::rel("", o, 2.0, 0.1)))
        }),
        Box::new(move || {
            let mut r = cfg.rng(36);
            let worst = (0..pts).try_fold(0.0f64, |m, i| {
                let s = if i == 0 { embedding::x1_state(1.0) } else { sample::rand_state(&mut r) };
                let (a, frame) = embedding::push_frame(&s)?;
                let k = kahler::kahler_matrix(&a, &frame);
                let c = kahler::canonical_matrix();
                Ok::<f64, Error>(
                    k.iter().zip(&c).flat_map(|(x, y)| x.iter().zip(y).map(|(u, v)| (u - v).abs())).fold(m, f64::max),
                )
            });
            Case::from_result(
                "closed-form Levi matrix vs canonical form",
                worst.map(|w| Case::below("", w, cfg.tol(1e-9))),
            )
        }),
        Box::new(move || {
            let mut r = cfg.rng(37);
            let worst = (0..2 * pts).try_fold(0.0f64, |m, i| {
                let s = if i < pts { embedding::x1_state(1.0) } else { sample::rand_state(&mut r) };
                let dir: [f64; 32] = sample::gaussian_vec(&mut r);
                kahler::one_form_residual(&s, &dir).map(|v| m.max(v))
            });
            Case::from_result(
                "one-form identity τ*(√2 i∂‖A‖^½) = θ + i d‖Y‖/√2",
                worst.map(|w| Case::below("", w, cfg.tol(1e-6))),
            )
        }),
    ];
    run_jobs(jobs)
}

fn pivot_power5(ratio: Cx<Q>) -> Cx<Q> {
    ratio.clone() * ratio.clone() * ratio.clone() * ratio.clone() * ratio
}

fn mat_mul(a: &[Vec<Cx<Q>>], b: &[Vec<Cx<Q>>]) -> Vec<Vec<Cx<Q>>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(Cx::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone())).collect())
        .collect()
}

/// A random chart other than `avoid` whose pivot is nonzero at `v`.
fn other_chart(r: &mut Rng64, v: &crate::jordan::Vec27<Q>, avoid: &[ChartId]) -> ChartId {
    loop {
        let id = ChartId(r.random_range(0..24));
        if !avoid.contains(&id) && !v[id.pivot_index()].is_zero() {
            return id;
        }
    }
}

pub const REFERENCE_C1_LOG2: i32 = 26;
pub const REFERENCE_PAIRING_LOG2: [i32; 2] = [6, 26];

pub fn atlas_cases(cfg: &SuiteConfig) -> Vec<Case> {
    let pts = cfg.n(20);
    let jobs: Vec<Job> = vec![
        Box::new(move || {
            let mut r = cfg.rng(41);
            let mut fails = 0;
            for id in ChartId::all() {
                for _ in 0..pts {
                    let c = sample::rand_chart_coords_q(&mut r);
                    let ok = atlas::solve_chart(id, &c).map_or(false, |v| {
                        let a = Jordan::from_vec27(&v);
                        a.square().is_zero() && atlas::project(id, &v).map_or(false, |back| back == c)
                    });
                    fails += usize::from(!ok);
                }
            }
            Case::exact("chart solutions are null and project back (24 charts)", fails)
        }),
        Box::new(move || {
            let mut r = cfg.rng(42);
            let mut fails = 0;
            for _ in 0..cfg.n(50) {
                let c = sample::rand_chart_coords_q(&mut r);
                let z1 = ChartId::z1();
                let ok = atlas::solve_chart(z1, &c).map_or(false, |v| {
                    let to = other_chart(&mut r, &v, &[z1]);
                    let want = pivot_power5(v[to.pivot_index()].clone() / v[z1.pivot_index()].clone());
                    atlas::jacobian_det(z1, to, &c).map_or(false, |j| {
                        j == want.scale_i(atlas::chart(to).orientation as i64) && j.norm_sqr() == want.norm_sqr()
                    })
                });
                fails += usize::from(!ok);
            }
            Case::exact("|J| = |pivot ratio|⁵ on overlaps", fails)
        }),
        Box::new(move || {
            let mut r = cfg.rng(43);
            let mut fails = 0;
            for _ in 0..pts {
                let c = sample::rand_chart_coords_q(&mut r);
                let i = ChartId::z1();
                let ok = (|| -> Result<bool> {
                    let v = atlas::solve_chart(i, &c)?;
                    let j = other_chart(&mut r, &v, &[i]);
                    let k = other_chart(&mut r, &v, &[i, j]);
                    let cj = atlas::transition(i, j, &c)?;
                    let direct = atlas::transition_jacobian(i, k, &c)?;
                    let chained =
                        mat_mul(&atlas::transition_jacobian(j, k, &cj)?, &atlas::transition_jacobian(i, j, &c)?);
                    Ok(direct == chained)
                })();
                fails += usize::from(!ok.unwrap_or(false));
            }
            Case::exact("Jacobian cocycle J_ki = J_kj·J_ji", fails)
        }),
        Box::new(move || {
            let mut r = cfg.rng(44);
            let mut fails = 0;
            for _ in 0..cfg.n(5) {
                let c = sample::rand_chart_coords_q(&mut r);
                let z1 = ChartId::z1();
                let (Ok(v), Ok(f)) = (atlas::solve_chart(z1, &c), atlas::coordinate_frame(z1, &c)) else {
                    fails += 1;
                    continue;
                };
                let w0 = atlas::cy_form_value(z1, &v, &f);
                for id in ChartId::all().filter(|id| !v[id.pivot_index()].is_zero()) {
                    fails += usize::from(atlas::cy_form_value(id, &v, &f) != w0);
                }
            }
            Case::exact("Ω agrees across all charts", fails)
        }),
        Box::new(move || {
            let mut r = cfg.rng(45);
            let samples: Vec<_> = (0..cfg.n(100))
                .filter_map(|_| {
                    let c: [Cx<f64>; 16] =
                        std::array::from_fn(|_| Cx::new(r.random::<f64>() - 0.5, r.random::<f64>() - 0.5));
                    atlas::solve_chart(ChartId::z1(), &c).ok()
                })
                .collect();
            Case::equal("complex span of null-cone samples", atlas::span_rank(&samples) as f64, 26.0)
        }),
        Box::new(move || {
            let mut r = cfg.rng(46);
            let ranks: Vec<usize> = (0..cfg.n(5))
                .filter_map(|_| atlas::solve_chart(ChartId::z1(), &sample::rand_chart_coords_q(&mut r)).ok())
                .map(|v| atlas::trace_form_gradient_rank_exact(&Jordan::from_vec27(&v)))
                .collect();
            Case::equal("rank of (∇T₁, ∇T₂, ∇T₃) on the null cone", *ranks.iter().max().unwrap_or(&0) as f64, 2.0)
        }),
        Box::new(move || {
            let a = sample::rand_jordan_q(&mut cfg.rng(47), true);
            Case::equal(
                "rank of (∇T₁, ∇T₂, ∇T₃) at a generic point",
                atlas::trace_form_gradient_rank_exact(&a) as f64,
                3.0,
            )
        }),
        Box::new(move || {
            let mut r = cfg.rng(48);
            let mut exps = vec![];
            for _ in 0..3 {
                match volume::omega_scaling_exponent(&sample::rand_chart_coords_q(&mut r)) {
                    Ok(Some(e)) => exps.push(e),
                    _ => return Case::flag("Ω homogeneity exponent", false),
                }
            }
            let all_same = exps.iter().all(|&e| e == exps[0]);
            Case::equal("Ω homogeneity exponent (exact, t = 2)", if all_same { exps[0] as f64 } else { f64::NAN }, 11.0)
        }),
    ];
    let mut cases = run_jobs(jobs);
    cases.extend(volume_cases(cfg));
    cases
}

fn volume_states(cfg: &SuiteConfig, stream: u64) -> Vec<[f64; 32]> {
    let mut r = cfg.rng(stream);
    std::iter::once(embedding::x1_state(1.0)).chain((1..cfg.n(20)).map(|_| sample::rand_state(&mut r))).collect()
}

fn volume_cases(cfg: &SuiteConfig) -> Vec<Case> {
    let states = volume_states(cfg, 49);
    let ratios: Vec<Result<volume::VolumeRatio>> = states.par_iter().map(volume::omega_liouville_ratio).collect();
    let pairs: Vec<Result<volume::PairingConstant>> = states.par_iter().map(volume::riemann_pairing_constant).collect();
    let mut cases = Vec::new();
    let reference_c1 = 2f64.powi(REFERENCE_C1_LOG2);
    match ratios.into_iter().collect::<Result<Vec<_>>>() {
        Ok(rs) => {
            let worst = rs.iter().map(|v| (v.c1 - reference_c1).abs() / reference_c1).fold(0.0, f64::max);
            let at_unit = &rs[0];
            let mut c = Case::rel("(Ω∧Ω̄)/Liouville ÷ ‖A‖¹⁴ at ‖A‖ = 1", at_unit.c1, reference_c1, cfg.tol(1e-6))
                .with_provenance("Calabi-Yau/Liouville volume constant C1, reference value 2^26");
            c.rel_error = Some(worst.max(c.rel_error.unwrap_or(0.0)));
            if worst > cfg.tol(1e-6) {
                c.status = crate::report::Status::Fail;
            }
            cases.push(c);
            let spread = rs.iter().map(|v| (v.c1 / rs[0].c1 - 1.0).abs()).fold(0.0, f64::max);
            cases.push(Case::below("(Ω∧Ω̄)/Liouville ÷ ‖A‖¹⁴ is constant across points", spread, cfg.tol(1e-6)));
            cases.push(Case::reported(
                "measured log₂ C1",
                rs[0].c1.log2(),
                REFERENCE_C1_LOG2 as f64,
                "Calabi-Yau/Liouville volume constant C1 as measured on the Darboux frame",
            ));
        }
        Err(e) => cases.push(Case::from_result("(Ω∧Ω̄)/Liouville", Err(e))),
    }
    match pairs.into_iter().collect::<Result<Vec<_>>>() {
        Ok(ps) => {
            let n = ps.len() as f64;
            let mean = ps.iter().fold(nalgebra::Complex::new(0.0, 0.0), |a, p| a + p.constant) / n;
            let var = ps.iter().map(|p| (p.constant - mean).norm_sqr()).sum::<f64>() / n;
            cases.push(Case::below(
                "Riemann pairing constant: coefficient of variation",
                var.sqrt() / mean.norm(),
                cfg.tol(1e-6),
            ));
            for (log2, what) in REFERENCE_PAIRING_LOG2.iter().zip(["2^6", "2^26"]) {
                cases.push(Case::reported(
                    &format!("Riemann pairing constant |c| vs {what}"),
                    mean.norm(),
                    2f64.powi(*log2),
                    &format!(
                        "(dv ∧ conj Ω)/Liouville = c‖A‖³; phase {:+.6}; reference values 2^6 and 2^26",
                        mean.arg()
                    ),
                ));
            }
            let s = &states[1];
            let scaled: [f64; 32] = std::array::from_fn(|k| if k < 16 { s[k] } else { s[k] * 2f64.sqrt() });
            let expo = volume::riemann_pairing_constant(s).and_then(|a| {
                volume::riemann_pairing_constant(&scaled)
                    .map(|b| (b.value.norm() / a.value.norm()).log2() / (b.norm_a / a.norm_a).log2())
            });
            cases.push(Case::from_result(
                "pairing homogeneity exponent",
                expo.map(|e| Case::rel("pairing homogeneity exponent", e, 3.0, cfg.tol(1e-6))),
            ));
        }
        Err(e) => cases.push(Case::from_result("Riemann pairing constant", Err(e))),
    }
    cases
}

pub fn harmonic_cases(cfg: &SuiteConfig) -> Vec<Case> {
    let cap = cfg.cap;
    let mut jobs: Vec<Job> = vec![
        Box::new(|| {
            let rows = harmonic::operator_identities();
            let failing = rows.iter().filter(|r| !r.holds && !r.reported).count();
            Case::exact("L and Δ identities, ⟪T₂, T₁²⟫ = 6", failing)
        }),
        Box::new(|| {
            let g = harmonic::gamma_t3();
            Case::reported(
                "Γ(T₃) exact value",
                q_to_f64(&g),
                harmonic::GAMMA_T3_REFERENCE as f64,
                "third-order invariant operator Γ applied to the cubic trace form; reference value 562",
            )
        }),
        Box::new(|| {
            Case::equal("nonzero coefficients of the triple term", harmonic::triple_signs().len() as f64, 64.0)
        }),
        Box::new(|| {
            let want = [1u64, 1, 2, 3, 4, 5, 7];
            let f = want.iter().enumerate().filter(|(k, &w)| harmonic::dim_i(*k) != w).count();
            Case::exact("dim I_k = 1,1,2,3,4,5,7 for k ≤ 6", f)
        }),
        Box::new(|| {
            Case::flag("P_P = P_H·P_I through t²⁰", harmonic::poincare_series(20).map_or(false, |s| s.identity_holds()))
        }),
        Box::new(|| {
            let inc = (0..50).all(|k| harmonic::dim_h(k) < harmonic::dim_h(k + 1));
            Case::flag("dim H_k strictly increasing through k = 50", inc)
        }),
        Box::new(|| Case::flag("L maps onto the invariants for k ≤ 4", (1..=4).all(harmonic::l_surjective))),
    ];
    for k in 0..=cap {
        jobs.push(Box::new(move || {
            let formula: f64 = harmonic::dim_h(k).to_string().parse().unwrap();
            match harmonic::harmonic_dim_exact(k, cap) {
                Ok(d) => Case::equal(&format!("harmonic dimension k = {k} (exact elimination)"), d as f64, formula),
                Err(e) => Case::from_result(&format!("harmonic dimension k = {k}"), Err(e)),
            }
        }));
    }
    run_jobs(jobs)
}

pub fn bargmann_cases(cfg: &SuiteConfig) -> Vec<Case> {
    use std::f64::consts::{PI, SQRT_2};
    let mc_samples = cfg.n(1_000_000).max(100_000) as u64;
    let probe = |eps: f64, k: u64| bargmann::asymptotic_regime_probe(eps, k);
    let mut jobs: Vec<Job> = vec![
        Box::new(move || {
            let e = bargmann::gauss_multiplication_check(50, 0.0);
            Case::from_result("N(k)² two formulas, ε = 0, k ≤ 50", e.map(|e| Case::below("", e, cfg.tol(1e-10))))
        }),
        Box::new(move || {
            let e = bargmann::gauss_multiplication_check(50, EPS_ISO);
            Case::from_result("N(k)² two formulas, ε = −47/4, k ≤ 50", e.map(|e| Case::below("", e, cfg.tol(1e-10))))
        }),
        Box::new(|| {
            let (l, r) = bargmann::gauss_multiplication(2, 1.0);
            Case::below(
                "duplication Γ(2) = 2^{3/2}(2π)^{−1/2}Γ(1)Γ(3/2)",
                (l.exp() - 1.0).abs().max((r.exp() - 1.0).abs()),
                1e-14,
            )
        }),
        Box::new(|| {
            let e = bargmann::power_of_two_exponent();
            let ok = e.constant == q(44, 1) && e.k == q(0, 1) && e.epsilon == q(4, 1);
            Case::flag("power-of-two prefactor 2^{44+4ε} from the multiplication theorem", ok)
        }),
        Box::new(|| {
            let table = [
                (EPS_ISO, Regime::Isomorphism),
                (-10.0, Regime::ForwardBoundedOnly),
                (-11.7499, Regime::ForwardBoundedOnly),
                (-11.7501, Regime::InverseBoundedOnly),
                (-20.0, Regime::InverseBoundedOnly),
                (-21.9999, Regime::InverseBoundedOnly),
                (-22.0, Regime::FiniteDimPatchRequired),
                (-23.0, Regime::FiniteDimPatchRequired),
                (5.0, Regime::ForwardBoundedOnly),
            ];
            Case::exact(
                "regime classification with boundaries −47/4 and −22",
                table.iter().filter(|(e, r)| bargmann::regime(*e) != *r).count(),
            )
        }),
        Box::new(move || {
            let p = probe(EPS_ISO, 500).map(|p| (p.ratio(499, 500) - 1.0).abs());
            Case::from_result("|N(500)/N(499) − 1| at ε = −47/4", p.map(|v| Case::below("", v, cfg.tol(1e-3))))
        }),
        Box::new(move || {
            let p = probe(-43.0 / 4.0, 5000).map(|p| {
                let slope = (p.ratio(500, 5000)).ln() / 10f64.ln();
                (p.increasing_from.is_some_and(|k| k <= 20), slope)
            });
            Case::from_result(
                "ε = −43/4: increasing from k ≤ 20 with growth exponent 1",
                p.map(|(inc, s)| {
                    let mut c = Case::rel("", s, 1.0, 0.05);
                    if !inc {
                        c.status = crate::report::Status::Fail;
                    }
                    c
                }),
            )
        }),
        Box::new(move || {
            let p = probe(-51.0 / 4.0, 5000).map(|p| p.ratio(500, 5000).ln() / 10f64.ln());
            Case::from_result("ε = −51/4: decay exponent −1", p.map(|s| Case::rel("", s, -1.0, 0.05)))
        }),
        Box::new(move || {
            let p = probe(-43.0 / 4.0, 500).map(|p| p.ratio(100, 500));
            Case::from_result(
                "N(500)/N(100) at ε = −43/4",
                p.map(|v| {
                    Case::reported("", v, 10.0, "divergence probe; N(k)² exceeds 10 over this range, N(k) grows like k")
                }),
            )
        }),
        Box::new(move || {
            let p = probe(-51.0 / 4.0, 500).map(|p| p.ratio(100, 500));
            Case::from_result(
                "N(500)/N(100) at ε = −51/4",
                p.map(|v| {
                    Case::reported(
                        "",
                        v,
                        0.1,
                        "decay probe; N(k)² falls below 0.1 over this range, N(k) decays like 1/k",
                    )
                }),
            )
        }),
        Box::new(move || {
            let mut worst = 0.0f64;
            for k in 0..=10u32 {
                for (power, rate) in [(4 * k + 43, 2.0 * SQRT_2 * PI), (2 * k + 21, SQRT_2 * PI)] {
                    match crate::quad::radial_quadrature(power, rate) {
                        Ok(r) => worst = worst.max(r.rel_error),
                        Err(e) => return Case::from_result("radial quadrature", Err(e)),
                    }
                }
            }
            Case::below("radial quadrature vs Γ closed forms, k ≤ 10", worst, cfg.tol(1e-8))
        }),
        Box::new(|| {
            let ok = bargmann::fock_min_degree(0.0) == 0
                && bargmann::fock_min_degree(-30.0) == 5
                && bargmann::spectral_data(1) == (12, 24);
            Case::flag("Fock minimal degree and spectral data", ok)
        }),
        Box::new(move || {
            let vols = bargmann::Volumes { sphere_bundle: 2.5, plane: 0.3 };
            let spread = (|| -> Result<f64> {
                let c0 = bargmann::norm_proportionality(&BargmannParams { k: 0, epsilon: 0.0 }, &vols)?;
                let mut m = 0.0f64;
                for k in 1..=50 {
                    m = m.max((bargmann::norm_proportionality(&BargmannParams { k, epsilon: 0.0 }, &vols)? - c0).abs());
                }
                Ok(m)
            })();
            Case::from_result(
                "b_k·a_k⁻² ∝ N(k)², k ≤ 50 (log spread)",
                spread.map(|s| Case::below("", s, cfg.tol(1e-9))),
            )
        }),
        Box::new(|| {
            let p = BargmannParams { k: 7, epsilon: 0.0 };
            let vols = bargmann::Volumes { sphere_bundle: 3.0, plane: 0.5 };
            let same = bargmann::constants(&p).ok().map(|c| c.log_n2)
                == bargmann::constants_with(&p, &vols).ok().map(|c| c.log_n2);
            Case::flag("ln N(k)² is independent of the volume placeholders", same)
        }),
        Box::new(|| {
            let ok = [1.0, 100.0].iter().all(|&n| bargmann::kernel_majorant(n, n, 0.0, 200).is_ok_and(|m| m.converges));
            Case::flag("kernel majorant ratio test, ‖A‖ = ‖B‖ ∈ {1, 100}", ok)
        }),
        Box::new(move || {
            let worst =
                (0..=3).try_fold(0.0f64, |m, k| bargmann::diagonal_radial_ratio(k).map(|r| m.max((r - 1.0).abs())));
            Case::from_result(
                "diagonal fiber integral, radial reduction",
                worst.map(|w| Case::below("", w, cfg.tol(1e-8))),
            )
        }),
    ];
    for k in [0u64, 1] {
        jobs.push(Box::new(move || {
            let name = format!("Monte-Carlo diagonal ratio k = {k}");
            let est = bargmann::bargmann_diagonal_mc(k, mc_samples, cfg.seed);
            Case::from_result(&name, est.map(|e| Case::rel("", e.ratio, 1.0, 0.02)))
        }));
    }
    run_jobs(jobs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octonion_suite_passes_at_seed_42() {
        let r = run_suite(&SuiteConfig { samples: Some(50), ..SuiteConfig::for_suite("octonion", 42) }).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(run_suite(&SuiteConfig::for_suite("foo", 1)), Err(Error::Invalid(_))));
    }

    #[test]
    fn runs_are_deterministic() {
        let cfg = SuiteConfig { samples: Some(20), ..SuiteConfig::for_suite("jordan", 5) };
        let a = run_suite(&cfg).unwrap();
        let b = run_suite(&cfg).unwrap();
        assert_eq!(a.cases, b.cases);
    }
}
