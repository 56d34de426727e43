//! Automorphisms of J(3) that act on the 27 split coordinates by signed
//! permutations, and the search that uses them to carry the z₁ chart onto
//! every other pivot.

use crate::jordan::{Jordan, Vec27};
use crate::octonion::Oct;
use crate::scalar::{Cx, Scalar};
use std::collections::VecDeque;
use std::sync::OnceLock;

/// `out[perm[k]] = sign[k] · in[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPerm {
    pub perm: [usize; 27],
    pub sign: [i8; 27],
}

impl SignedPerm {
    pub fn identity() -> Self {
        SignedPerm { perm: std::array::from_fn(|k| k), sign: [1; 27] }
    }

    pub fn apply<S: Scalar>(&self, v: &Vec27<S>) -> Vec27<S> {
        let mut out: Vec27<S> = std::array::from_fn(|_| Cx::zero());
        for k in 0..27 {
            out[self.perm[k]] = if self.sign[k] > 0 { v[k].clone() } else { -v[k].clone() };
        }
        out
    }

    pub fn apply_jordan<S: Scalar>(&self, a: &Jordan<S>) -> Jordan<S> {
        Jordan::from_vec27(&self.apply(&a.to_vec27()))
    }

    /// `self ∘ g`: apply `g` first.
    pub fn after(&self, g: &SignedPerm) -> SignedPerm {
        SignedPerm {
            perm: std::array::from_fn(|k| self.perm[g.perm[k]]),
            sign: std::array::from_fn(|k| self.sign[g.perm[k]] * g.sign[k]),
        }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut perm = [0; 27];
        let mut sign = [1; 27];
        for k in 0..27 {
            perm[self.perm[k]] = k;
            sign[self.perm[k]] = self.sign[k];
        }
        SignedPerm { perm, sign }
    }

    /// Reads off a C-linear map on split coordinates; `None` unless every
    /// basis vector goes to a signed basis vector.
    pub fn from_map(f: impl Fn(&Jordan<f64>) -> Jordan<f64>) -> Option<SignedPerm> {
        let mut perm = [0; 27];
        let mut sign = [0i8; 27];
        let mut hit = [false; 27];
        for k in 0..27 {
            let mut e: Vec27<f64> = std::array::from_fn(|_| Cx::zero());
            e[k] = Cx::one();
            let img = f(&Jordan::from_vec27(&e)).to_vec27();
            let nz: Vec<usize> = (0..27).filter(|&j| !img[j].is_zero()).collect();
            if nz.len() != 1 {
                return None;
            }
            let j = nz[0];
            let c = &img[j];
            if c.im != 0.0 || c.re.abs() != 1.0 || hit[j] {
                return None;
            }
            hit[j] = true;
            perm[k] = j;
            sign[k] = c.re as i8;
        }
        Some(SignedPerm { perm, sign })
    }
}

/// The matrix automorphism swapping the two rows and columns inside each
/// split block: h ↦ (h₀, −h₁, −h₂, h₃, h₄, −h₅, −h₆, h₇).
pub fn sigma_tilde<S: Scalar>(a: &Jordan<S>) -> Jordan<S> {
    let f = |o: &Oct<S>| Oct {
        c: std::array::from_fn(|k| if matches!(k, 1 | 2 | 5 | 6) { -o.c[k].clone() } else { o.c[k].clone() }),
    };
    Jordan { xi: a.xi.clone(), z: f(&a.z), y: f(&a.y), x: f(&a.x) }
}

/// Diagonal permutations: σ₁ swaps ξ₁,ξ₂; σ₂ swaps ξ₁,ξ₃; σ₃ swaps ξ₂,ξ₃.
pub fn sigma<S: Scalar>(i: usize, a: &Jordan<S>) -> Jordan<S> {
    let [x1, x2, x3] = a.xi.clone();
    match i {
        1 => Jordan { xi: [x2, x1, x3], z: a.z.theta(), y: a.x.theta(), x: a.y.theta() },
        2 => Jordan { xi: [x3, x2, x1], z: a.x.theta(), y: a.y.theta(), x: a.z.theta() },
        3 => Jordan { xi: [x1, x3, x2], z: a.y.theta(), y: a.z.theta(), x: a.x.theta() },
        _ => panic!("diagonal permutation index must be 1, 2 or 3"),
    }
}

/// Triality-type automorphism for a unit imaginary basis element a = e_k:
/// x ↦ a x, y ↦ y a, z ↦ (a z) a.
pub fn triality<S: Scalar>(k: usize, a: &Jordan<S>) -> Jordan<S> {
    let e = Oct::<S>::basis(k);
    Jordan { xi: a.xi.clone(), x: e.mul(&a.x), y: a.y.mul(&e), z: e.mul(&a.z).mul(&e) }
}

pub struct Generator {
    pub name: &'static str,
    pub map: SignedPerm,
}

/// σ̃, σ₁, σ₂, σ₃ and the triality maps for e₂, e₄, e₆, as signed permutations.
pub fn generators() -> &'static [Generator] {
    static GENS: OnceLock<Vec<Generator>> = OnceLock::new();
    GENS.get_or_init(|| {
        let mk = |name: &'static str, f: &dyn Fn(&Jordan<f64>) -> Jordan<f64>| Generator {
            name,
            map: SignedPerm::from_map(f).unwrap_or_else(|| panic!("{name} is not a signed permutation")),
        };
        vec![
            mk("sigma~", &sigma_tilde),
            mk("sigma1", &|a| sigma(1, a)),
            mk("sigma2", &|a| sigma(2, a)),
            mk("sigma3", &|a| sigma(3, a)),
            mk("tri(e2)", &|a| triality(2, a)),
            mk("tri(e4)", &|a| triality(4, a)),
            mk("tri(e6)", &|a| triality(6, a)),
        ]
    })
}

/// Index of z₁ in the 27-vector.
pub const Z1: usize = 3;

/// For each pivot index 3..27, a generator word (applied left to right) and
/// the composed map taking the z₁ coordinate to that pivot.
pub fn pivot_maps() -> &'static [(Vec<&'static str>, SignedPerm)] {
    static MAPS: OnceLock<Vec<(Vec<&'static str>, SignedPerm)>> = OnceLock::new();
    MAPS.get_or_init(|| {
        let gens = generators();
        let mut found: Vec<Option<(Vec<&'static str>, SignedPerm)>> = vec![None; 27];
        found[Z1] = Some((vec![], SignedPerm::identity()));
        let mut queue = VecDeque::from([Z1]);
        while let Some(pos) = queue.pop_front() {
            let (word, g) = found[pos].clone().unwrap();
            for gen in gens {
                let h = gen.map.after(&g);
                let np = h.perm[Z1];
                if np >= 3 && found[np].is_none() {
                    let mut w = word.clone();
                    w.push(gen.name);
                    found[np] = Some((w, h));
                    queue.push_back(np);
                }
            }
        }
        (3..27).map(|p| found[p].clone().expect("every pivot is reachable")).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Q};

    fn sample(seed: u64) -> Jordan<Q> {
        let mut k = seed.wrapping_mul(2654435761).wrapping_add(7);
        let v: Vec<Cx<Q>> = (0..27)
            .map(|_| {
                k = k.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = ((k >> 33) % 13) as i64 - 6;
                let b = ((k >> 40) % 11) as i64 - 5;
                Cx::new(q(a, 3), q(b, 2))
            })
            .collect();
        let mut it = v.into_iter();
        Jordan::from_vec27(&std::array::from_fn(|_| it.next().unwrap()))
    }

    #[test]
    fn generators_are_jordan_automorphisms() {
        for g in generators() {
            for s in 0..3 {
                let a = sample(s);
                let b = sample(s + 100);
                let lhs = g.map.apply_jordan(&a.jordan(&b));
                let rhs = g.map.apply_jordan(&a).jordan(&g.map.apply_jordan(&b));
                assert_eq!(lhs, rhs, "{}", g.name);
                assert_eq!(g.map.apply_jordan(&a).trace(), a.trace(), "{}", g.name);
            }
        }
    }

    #[test]
    fn every_pivot_is_reached() {
        let maps = pivot_maps();
        assert_eq!(maps.len(), 24);
        for (p, (_, g)) in maps.iter().enumerate() {
            assert_eq!(g.perm[Z1], p + 3);
        }
    }

    #[test]
    fn inverse_and_composition() {
        let (_, g) = &pivot_maps()[10];
        let a = sample(9).to_vec27();
        assert_eq!(g.inverse().apply(&g.apply(&a)), a);
        assert_eq!(g.inverse().after(g), SignedPerm::identity());
    }
}
