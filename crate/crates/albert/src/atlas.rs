//! The 24-chart holomorphic atlas of the null cone X = {A ≠ 0 : A² = 0},
//! transition Jacobians and the global holomorphic 16-form Ω.
//!
//! Chart coordinates are the 16 independent split coordinates, ordered for
//! the z₁ chart as (ξ₂, z₁, z₂, z₃, w₁, w₂, w₃, w₄, y₂, y₄, v₁, v₃, x₃, x₄, u₂, u₄);
//! slot 1 always holds the pivot. Every other chart is the image of the z₁
//! chart under a signed-permutation automorphism.

use crate::jordan::{Jordan, Vec27, VEC27_LABELS};
use crate::linalg;
use crate::scalar::{cx_const, cx_deriv, Cx, Dual, Scalar, Q};
use crate::symmetry::{pivot_maps, SignedPerm};
use crate::{Error, Result};
use std::sync::OnceLock;

/// Independent coordinates of the z₁ chart, as 27-vector indices.
pub const Z1_INDEPENDENT: [usize; 16] = [1, 3, 4, 5, 7, 8, 9, 10, 12, 14, 15, 17, 21, 22, 24, 26];

pub type Coords<S> = [Cx<S>; 16];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChartId(pub usize);

impl ChartId {
    pub fn all() -> impl Iterator<Item = ChartId> {
        (0..24).map(ChartId)
    }
    pub fn pivot_index(self) -> usize {
        self.0 + 3
    }
    pub fn label(self) -> &'static str {
        VEC27_LABELS[self.pivot_index()]
    }
    pub fn from_label(s: &str) -> Option<ChartId> {
        (3..27).find(|&k| VEC27_LABELS[k] == s).map(|k| ChartId(k - 3))
    }
    pub fn z1() -> ChartId {
        ChartId(0)
    }
}

pub struct Chart {
    pub id: ChartId,
    pub word: Vec<&'static str>,
    pub map: SignedPerm,
    /// 27-vector index of each chart coordinate.
    pub indices: [usize; 16],
    /// Sign relating chart coordinate k to the matching z₁-chart coordinate.
    pub signs: [i8; 16],
    /// ±1 making Ω = orientation / pivot⁵ · dc₁∧…∧dc₁₆ agree across charts.
    pub orientation: i8,
}

pub fn charts() -> &'static [Chart] {
    static CHARTS: OnceLock<Vec<Chart>> = OnceLock::new();
    CHARTS.get_or_init(|| {
        pivot_maps()
            .iter()
            .enumerate()
            .map(|(p, (word, g))| {
                let indices = std::array::from_fn(|k| g.perm[Z1_INDEPENDENT[k]]);
                let signs: [i8; 16] = std::array::from_fn(|k| g.sign[Z1_INDEPENDENT[k]]);
                // g preserves Ω, so h_p(gA)·det(dP_p∘g) = h_z1(A): the
                // pivot contributes sign⁵ and each coordinate its own sign.
                let orientation = signs.iter().enumerate().filter(|(k, _)| *k != 1).map(|(_, s)| *s).product();
                Chart { id: ChartId(p), word: word.clone(), map: g.clone(), indices, signs, orientation }
            })
            .collect()
    })
}

pub fn chart(id: ChartId) -> &'static Chart {
    &charts()[id.0]
}

/// Solves A² = 0 for the 11 dependent coordinates of the z₁ chart.
pub fn solve_z1<S: Scalar>(c: &Coords<S>) -> Result<Vec27<S>> {
    let [xi2, z1, z2, z3, w1, w2, w3, w4, y2, y4, v1, v3, x3, x4, u2, u4] = c.clone();
    if z1.is_zero() {
        return Err(Error::ZeroPivot("z1"));
    }
    let m = |a: &Cx<S>, b: &Cx<S>| a.clone() * b.clone();
    let x1 = (m(&xi2, &y4) - m(&z2, &x3) + m(&u4, &w1) - m(&u2, &w3)) / z1.clone();
    let x2 = (-m(&xi2, &y2) - m(&z2, &x4) + m(&u4, &w2) - m(&u2, &w4)) / z1.clone();
    let u1 = -(m(&xi2, &v1) + m(&u2, &z3) + m(&w1, &x4) - m(&w2, &x3)) / z1.clone();
    let u3 = -(m(&xi2, &v3) + m(&u4, &z3) + m(&w3, &x4) - m(&w4, &x3)) / z1.clone();
    let xi3 = (m(&x3, &y2) + m(&x4, &y4) + m(&v3, &u2) - m(&v1, &u4)) / z1.clone();
    let xi1 = -xi2.clone() - xi3.clone();
    let y1 = (m(&xi1, &x4) - m(&y2, &z3) + m(&w4, &v1) - m(&w2, &v3)) / z1.clone();
    let y3 = (-m(&xi1, &x3) - m(&y4, &z3) - m(&w3, &v1) + m(&w1, &v3)) / z1.clone();
    let v2 = (-m(&xi1, &u2) + m(&v1, &z2) - m(&w1, &y2) - m(&w2, &y4)) / z1.clone();
    let v4 = (-m(&xi1, &u4) + m(&v3, &z2) - m(&w3, &y2) - m(&w4, &y4)) / z1.clone();
    let z4 = (-m(&xi2, &xi2) + m(&z2, &z3) - m(&w1, &w4) + m(&w2, &w3) - m(&x1, &x4) + m(&x2, &x3) - m(&u1, &u4)
        + m(&u2, &u3))
        / z1.clone();
    Ok([xi1, xi2, xi3, z1, z2, z3, z4, w1, w2, w3, w4, y1, y2, y3, y4, v1, v2, v3, v4, x1, x2, x3, x4, u1, u2, u3, u4])
}

fn signed<S: Scalar>(s: i8, c: &Cx<S>) -> Cx<S> {
    if s > 0 {
        c.clone()
    } else {
        -c.clone()
    }
}

/// Reconstructs the full 27-vector from chart coordinates.
pub fn solve_chart<S: Scalar>(id: ChartId, c: &Coords<S>) -> Result<Vec27<S>> {
    let ch = chart(id);
    if c[1].is_zero() {
        return Err(Error::ZeroPivot(id.label()));
    }
    let a: Coords<S> = std::array::from_fn(|k| signed(ch.signs[k], &c[k]));
    Ok(ch.map.apply(&solve_z1(&a)?))
}

/// Chart coordinates of a point; the pivot must be nonzero.
pub fn project<S: Scalar>(id: ChartId, v: &Vec27<S>) -> Result<Coords<S>> {
    if v[id.pivot_index()].is_zero() {
        return Err(Error::ZeroPivot(id.label()));
    }
    let ch = chart(id);
    Ok(std::array::from_fn(|k| v[ch.indices[k]].clone()))
}

pub fn transition<S: Scalar>(from: ChartId, to: ChartId, c: &Coords<S>) -> Result<Coords<S>> {
    project(to, &solve_chart(from, c)?)
}

fn seeded<S: Scalar>(c: &Coords<S>, j: usize) -> Coords<Dual<S>> {
    std::array::from_fn(|k| {
        let mut z = cx_const(&c[k]);
        if k == j {
            z.re.d = S::one();
        }
        z
    })
}

/// Holomorphic Jacobian matrix of a transition, `m[k][j] = ∂c'_k/∂c_j`, by
/// forward-mode dual numbers.
pub fn transition_jacobian<S: Scalar>(from: ChartId, to: ChartId, c: &Coords<S>) -> Result<Vec<Vec<Cx<S>>>> {
    let mut m = vec![vec![Cx::<S>::zero(); 16]; 16];
    for j in 0..16 {
        let out = transition(from, to, &seeded(c, j))?;
        for k in 0..16 {
            m[k][j] = cx_deriv(&out[k]);
        }
    }
    Ok(m)
}

pub fn jacobian_det<S: Scalar>(from: ChartId, to: ChartId, c: &Coords<S>) -> Result<Cx<S>> {
    Ok(linalg::det(&transition_jacobian(from, to, c)?))
}

/// Tangent vectors ∂A/∂c_j of the chart parametrisation.
pub fn coordinate_frame<S: Scalar>(id: ChartId, c: &Coords<S>) -> Result<Vec<Vec27<S>>> {
    (0..16)
        .map(|j| {
            let v = solve_chart(id, &seeded(c, j))?;
            Ok(std::array::from_fn(|k| cx_deriv(&v[k])))
        })
        .collect()
}

/// Local coefficient h = orientation / pivot⁵ of Ω in chart `id` at `v`.
pub fn cy_coefficient<S: Scalar>(id: ChartId, v: &Vec27<S>) -> Result<Cx<S>> {
    let p = v[id.pivot_index()].clone();
    if p.is_zero() {
        return Err(Error::ZeroPivot(id.label()));
    }
    let p5 = p.clone() * p.clone() * p.clone() * p.clone() * p;
    Ok(Cx::from_i64(chart(id).orientation as i64) / p5)
}

/// Ω evaluated on 16 holomorphic tangent vectors at `v`, computed in chart `id`.
pub fn cy_form_value<S: Scalar>(id: ChartId, v: &Vec27<S>, frame: &[Vec27<S>]) -> Result<Cx<S>> {
    let h = cy_coefficient(id, v)?;
    let ch = chart(id);
    let m: Vec<Vec<Cx<S>>> = (0..16).map(|k| frame.iter().map(|f| f[ch.indices[k]].clone()).collect()).collect();
    Ok(h * linalg::det(&m))
}

/// The chart with the largest pivot modulus at a float point.
pub fn best_chart(v: &Vec27<f64>) -> ChartId {
    ChartId::all()
        .max_by(|a, b| {
            let ma = v[a.pivot_index()].norm_sqr();
            let mb = v[b.pivot_index()].norm_sqr();
            ma.partial_cmp(&mb).unwrap()
        })
        .unwrap()
}

/// Complex rank of a list of float 27-vectors (relative singular-value cut 1e−9).
pub fn span_rank(samples: &[Vec27<f64>]) -> usize {
    let rows: Vec<Vec<_>> = samples.iter().map(|v| v.iter().map(|c| c.to_c64()).collect()).collect();
    linalg::rank_c64(&rows, 1e-9)
}

pub fn span_rank_exact(samples: &[Vec27<Q>]) -> usize {
    let rows: Vec<Vec<Cx<Q>>> = samples.iter().map(|v| v.to_vec()).collect();
    linalg::rank(&rows)
}

/// Rows ∇T₁, ∇T₂, ∇T₃ with respect to the 27 split coordinates.
pub fn trace_form_gradient<S: Scalar>(a: &Jordan<S>) -> Vec<Vec<Cx<S>>> {
    let v = a.to_vec27();
    let mut g = vec![vec![Cx::<S>::zero(); 27]; 3];
    for j in 0..27 {
        let d: Vec27<Dual<S>> = std::array::from_fn(|k| {
            let mut z = cx_const(&v[k]);
            if k == j {
                z.re.d = S::one();
            }
            z
        });
        let b = Jordan::from_vec27(&d);
        let t1 = b.trace();
        let t2 = b.inner(&b);
        let t3 = b.t3_closed();
        g[0][j] = cx_deriv(&t1);
        g[1][j] = cx_deriv(&t2);
        g[2][j] = cx_deriv(&t3);
    }
    g
}

pub fn trace_form_gradient_rank_exact(a: &Jordan<Q>) -> usize {
    linalg::rank(&trace_form_gradient(a))
}

pub fn trace_form_gradient_rank(a: &Jordan<f64>) -> usize {
    let g = trace_form_gradient(a);
    let rows: Vec<Vec<_>> = g.iter().map(|r| r.iter().map(|c| c.to_c64()).collect()).collect();
    let scale = a.norm_sq().sqrt().max(1.0);
    // absolute cut relative to the natural size of each gradient row
    let sv_rows: Vec<Vec<_>> =
        rows.iter().enumerate().map(|(i, r)| r.iter().map(|c| c / scale.powi(i as i32)).collect()).collect();
    linalg::rank_c64(&sv_rows, 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::a1;
    use crate::sample::{rand_chart_coords_q, rng};
    use crate::scalar::q;

    fn a1_z1() -> Coords<Q> {
        let mut c: Coords<Q> = std::array::from_fn(|_| Cx::zero());
        c[0] = -Cx::one();
        c[1] = Cx::i();
        c
    }

    #[test]
    fn a1_from_z1_chart() {
        let v = solve_z1(&a1_z1()).unwrap();
        assert_eq!(v, a1::<Q>().to_vec27());
    }

    #[test]
    fn zero_pivot_rejected() {
        let mut c = a1_z1();
        c[1] = Cx::zero();
        assert_eq!(solve_chart(ChartId::z1(), &c), Err(Error::ZeroPivot("z1")));
    }

    #[test]
    fn all_charts_solve_exactly() {
        let mut r = rng(1);
        for id in ChartId::all() {
            for _ in 0..3 {
                let c = rand_chart_coords_q(&mut r);
                let v = solve_chart(id, &c).unwrap();
                assert!(Jordan::from_vec27(&v).square_residuals().all_zero(), "{}", id.label());
                assert_eq!(project(id, &v).unwrap(), c);
            }
        }
    }

    #[test]
    fn a1_in_z4_chart() {
        let z4 = ChartId::from_label("z4").unwrap();
        let c = transition(ChartId::z1(), z4, &a1_z1()).unwrap();
        assert_eq!(c[1], Cx::i());
        assert_eq!(solve_chart(z4, &c).unwrap(), a1::<Q>().to_vec27());
    }

    #[test]
    fn jacobian_z2_z1_example() {
        let mut r = rng(2);
        let mut c = rand_chart_coords_q(&mut r);
        c[1] = Cx::one();
        c[2] = Cx::from_i64(2);
        let z2 = ChartId::from_label("z2").unwrap();
        let j = jacobian_det(ChartId::z1(), z2, &c).unwrap();
        assert_eq!(j.norm_sqr(), q(1024, 1));
        assert_eq!(jacobian_det(ChartId::z1(), ChartId::z1(), &c).unwrap(), Cx::one());
    }

    #[test]
    fn omega_at_a1() {
        let c = a1_z1();
        let v = solve_chart(ChartId::z1(), &c).unwrap();
        let f = coordinate_frame(ChartId::z1(), &c).unwrap();
        let w = cy_form_value(ChartId::z1(), &v, &f).unwrap();
        assert_eq!(w, -Cx::i());
        let z4 = ChartId::from_label("z4").unwrap();
        assert_eq!(cy_form_value(z4, &v, &f).unwrap(), -Cx::i());
    }

    #[test]
    fn gradient_ranks() {
        let mut r = rng(3);
        let c = rand_chart_coords_q(&mut r);
        let v = solve_chart(ChartId::z1(), &c).unwrap();
        assert_eq!(trace_form_gradient_rank_exact(&Jordan::from_vec27(&v)), 2);
        let g = crate::sample::rand_jordan_q(&mut r, true);
        assert_eq!(trace_form_gradient_rank_exact(&g), 3);
        assert_eq!(trace_form_gradient_rank_exact(&Jordan::zero()), 1);
    }
}
