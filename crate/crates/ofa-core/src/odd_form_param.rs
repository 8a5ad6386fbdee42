//! Odd form parameters of the split classical families.
//!
//! An element of `Delta` is stored by its normal-form coordinates: the
//! `q_i . (x e_ij)` terms in lexicographic order of `(i, j)`, then the
//! `u_i . k` terms (odd orthogonal family only), then the central part over
//! the basis of the augmentation. All arithmetic goes through the embedding
//! `u -> (pi(u), rho(u))` into the Heisenberg group of `R`, which is
//! injective for these families; results are decoded back to coordinates.

use std::collections::HashSet;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coeff_ring::{El, Ring};
use crate::error::{OfaError, Result};
use crate::form_ring::{AlgElem, Family, InvAlgebra, Unital};

pub const EXHAUSTIVE_CAP: u128 = 1 << 16;
const ALL_PAIRS_CAP: u128 = 1 << 22;

/// Basis element of the augmentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DGen {
    /// `phi(e_ij)` for `i + j > 0`.
    Phi(i32, i32),
    /// `v_i` with `rho(v_i) = e_{-i,i}` (symplectic family).
    V(i32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaElem {
    pub q: Vec<El>,
    pub u: Vec<El>,
    pub d: Vec<El>,
}

/// Element of the Heisenberg group of `R` for the form `B(a, b) = inv(a) b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Heis {
    pub pi: AlgElem,
    pub rho: AlgElem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct DeltaShape {
    pub alg: InvAlgebra,
    qsupp: Vec<(i32, i32)>,
    usupp: Vec<i32>,
    dbasis: Vec<DGen>,
    drho: Vec<AlgElem>,
    dkey: Vec<usize>,
}

impl DeltaShape {
    pub fn new(alg: &InvAlgebra) -> DeltaShape {
        let fam = alg.family;
        let qsupp: Vec<(i32, i32)> =
            alg.basis().iter().copied().filter(|&(i, _)| i != 0).collect();
        let usupp: Vec<i32> = if fam.is_odd() { alg.labels().to_vec() } else { Vec::new() };
        let mut dbasis: Vec<DGen> = alg
            .basis()
            .iter()
            .filter(|&&(i, j)| i + j > 0)
            .map(|&(i, j)| DGen::Phi(i, j))
            .collect();
        if matches!(fam, Family::Symp(_)) {
            dbasis.extend(alg.labels().iter().map(|&i| DGen::V(i)));
        }
        let one = alg.ring.one();
        let mut drho = Vec::new();
        let mut dkey = Vec::new();
        for g in &dbasis {
            match *g {
                DGen::Phi(i, j) => {
                    let e = alg.e(i, j);
                    drho.push(alg.sub(&e, &alg.inv(&e)));
                    dkey.push(alg.idx(i, j));
                }
                DGen::V(i) => {
                    drho.push(alg.e_k(-i, i, one));
                    dkey.push(alg.idx(-i, i));
                }
            }
        }
        DeltaShape { alg: alg.clone(), qsupp, usupp, dbasis, drho, dkey }
    }

    pub fn ring(&self) -> &Ring {
        &self.alg.ring
    }

    pub fn q_support(&self) -> &[(i32, i32)] {
        &self.qsupp
    }
    pub fn u_support(&self) -> &[i32] {
        &self.usupp
    }
    pub fn d_basis(&self) -> &[DGen] {
        &self.dbasis
    }

    pub fn coord_count(&self) -> usize {
        self.qsupp.len() + self.usupp.len() + self.dbasis.len()
    }

    /// `|Delta|`, saturating.
    pub fn order(&self) -> u128 {
        (self.ring().size() as u128).checked_pow(self.coord_count() as u32).unwrap_or(u128::MAX)
    }

    pub fn zero(&self) -> DeltaElem {
        DeltaElem { q: vec![0; self.qsupp.len()], u: vec![0; self.usupp.len()], d: vec![0; self.dbasis.len()] }
    }

    fn from_flat(&self, c: &[El]) -> DeltaElem {
        let (nq, nu) = (self.qsupp.len(), self.usupp.len());
        DeltaElem { q: c[..nq].to_vec(), u: c[nq..nq + nu].to_vec(), d: c[nq + nu..].to_vec() }
    }

    fn q_index(&self, i: i32, j: i32) -> usize {
        self.qsupp
            .iter()
            .position(|&p| p == (i, j))
            .unwrap_or_else(|| panic!("({i},{j}) is not in the q-support"))
    }

    fn d_index(&self, g: DGen) -> usize {
        self.dbasis.iter().position(|&p| p == g).unwrap_or_else(|| panic!("{g:?} is not a basis element of D"))
    }

    /// `q_i . (x e_ij)`.
    pub fn q_term(&self, i: i32, j: i32, x: El) -> DeltaElem {
        let mut z = self.zero();
        z.q[self.q_index(i, j)] = x;
        z
    }

    /// `q_i`.
    pub fn q_gen(&self, i: i32) -> DeltaElem {
        self.q_term(i, i, self.ring().one())
    }

    /// `u_i . k` (odd orthogonal family).
    pub fn u_term(&self, i: i32, k: El) -> DeltaElem {
        let mut z = self.zero();
        let p = self.usupp.iter().position(|&x| x == i).expect("u-support");
        z.u[p] = k;
        z
    }

    /// `k` times a basis element of the augmentation.
    pub fn d_term(&self, g: DGen, k: El) -> DeltaElem {
        let mut z = self.zero();
        z.d[self.d_index(g)] = k;
        z
    }

    /// The central element `u(k)` of the odd orthogonal family.
    pub fn u_central(&self, k: El) -> DeltaElem {
        let r = self.ring();
        let mut z = self.zero();
        for &i in self.alg.labels() {
            if i != 0 {
                z.q[self.q_index(i, i)] = r.scale(2, k);
            }
        }
        z = DeltaElem { u: self.u_term(0, k).u, ..z };
        let kk2 = r.scale(2, r.mul(k, k));
        for &i in self.alg.labels() {
            if i > 0 {
                z.d[self.d_index(DGen::Phi(i, i))] = kk2;
            }
        }
        z
    }

    // Heisenberg group arithmetic.

    pub fn h_zero(&self) -> Heis {
        Heis { pi: self.alg.zero(), rho: self.alg.zero() }
    }

    pub fn h_add(&self, x: &Heis, y: &Heis) -> Heis {
        let a = &self.alg;
        let cross = a.mul(&a.inv(&x.pi), &y.pi);
        Heis { pi: a.add(&x.pi, &y.pi), rho: a.add(&a.sub(&x.rho, &cross), &y.rho) }
    }

    pub fn h_neg(&self, x: &Heis) -> Heis {
        let a = &self.alg;
        let sq = a.mul(&a.inv(&x.pi), &x.pi);
        Heis { pi: a.neg(&x.pi), rho: a.neg(&a.add(&sq, &x.rho)) }
    }

    pub fn h_act(&self, x: &Heis, r: &Unital) -> Heis {
        let a = &self.alg;
        let pi = a.u_mul(&a.unital(x.pi.clone(), 0), r).body;
        let left = a.u_mul(&a.u_inv(r), &a.unital(x.rho.clone(), 0));
        Heis { pi, rho: a.u_mul(&left, r).body }
    }

    pub fn h_phi(&self, c: &AlgElem) -> Heis {
        let a = &self.alg;
        Heis { pi: a.zero(), rho: a.sub(c, &a.inv(c)) }
    }

    /// Fold the `q` and `u` terms of a normal-form word with the cocycle rule.
    fn fold_qu(&self, q: &[El], u: &[El]) -> Heis {
        let a = &self.alg;
        let r = self.ring();
        let l = a.size();
        let mut pi = a.zero();
        let mut pibar = a.zero();
        let mut rho = a.zero();
        let terms = self
            .qsupp
            .iter()
            .zip(q)
            .map(|(&(i, j), &x)| (i, j, x, false))
            .chain(self.usupp.iter().zip(u).map(|(&i, &k)| (0, i, k, true)));
        for (i, j, x, is_u) in terms {
            if x == 0 {
                continue;
            }
            // rho -= inv(pi) * (x e_ij)
            let w = a.weight(i);
            let xw = r.scale(w, x);
            let (ci, cj) = (a.pos(i), a.pos(j));
            for row in 0..l {
                let p = pibar[row * l + ci];
                if p != 0 {
                    let k = row * l + cj;
                    rho[k] = r.sub(rho[k], r.mul(p, xw));
                }
            }
            if is_u {
                let k = a.idx(-j, j);
                rho[k] = r.sub(rho[k], r.mul(x, x));
            }
            let k = a.idx(i, j);
            pi[k] = r.add(pi[k], x);
            let s = a.inv_sign(i, j);
            let kb = a.idx(-j, -i);
            pibar[kb] = r.add(pibar[kb], if s == 1 { x } else { r.neg(x) });
        }
        Heis { pi, rho }
    }

    /// `(pi(u), rho(u))`.
    pub fn heis(&self, u: &DeltaElem) -> Heis {
        let mut h = self.fold_qu(&u.q, &u.u);
        let r = self.ring();
        for (c, img) in u.d.iter().zip(&self.drho) {
            if *c != 0 {
                for (t, s) in h.rho.iter_mut().zip(img) {
                    if *s != 0 {
                        *t = r.add(*t, r.mul(*c, *s));
                    }
                }
            }
        }
        h
    }

    /// Normal form of a Heisenberg element, if it lies in `Delta`.
    pub fn from_heis(&self, h: &Heis) -> Option<DeltaElem> {
        let a = &self.alg;
        if !a.is_member(&h.pi) || !a.is_member(&h.rho) {
            return None;
        }
        let q: Vec<El> = self.qsupp.iter().map(|&(i, j)| a.get(&h.pi, i, j)).collect();
        let u: Vec<El> = self.usupp.iter().map(|&j| a.get(&h.pi, 0, j)).collect();
        let base = self.fold_qu(&q, &u);
        let residual = a.sub(&h.rho, &base.rho);
        let d: Vec<El> = self.dkey.iter().map(|&k| residual[k]).collect();
        let z = DeltaElem { q, u, d };
        if self.heis(&z) == *h {
            Some(z)
        } else {
            None
        }
    }

    fn close(&self, h: Heis, what: &str) -> DeltaElem {
        self.from_heis(&h).unwrap_or_else(|| panic!("{what} left the odd form parameter"))
    }

    pub fn pi(&self, u: &DeltaElem) -> AlgElem {
        self.heis(u).pi
    }

    pub fn rho(&self, u: &DeltaElem) -> AlgElem {
        self.heis(u).rho
    }

    pub fn add(&self, u: &DeltaElem, v: &DeltaElem) -> DeltaElem {
        self.close(self.h_add(&self.heis(u), &self.heis(v)), "sum")
    }

    pub fn neg(&self, u: &DeltaElem) -> DeltaElem {
        self.close(self.h_neg(&self.heis(u)), "negative")
    }

    pub fn phi(&self, c: &AlgElem) -> DeltaElem {
        self.close(self.h_phi(c), "phi")
    }

    /// `tau(u) = phi(rho(u))`.
    pub fn tau(&self, u: &DeltaElem) -> DeltaElem {
        self.phi(&self.rho(u))
    }

    pub fn act(&self, u: &DeltaElem, r: &Unital) -> DeltaElem {
        self.close(self.h_act(&self.heis(u), r), "action")
    }

    pub fn act_alg(&self, u: &DeltaElem, a: &AlgElem) -> DeltaElem {
        self.act(u, &self.alg.unital(a.clone(), 0))
    }

    /// Right action of a scalar through `R x| K`.
    pub fn act_k(&self, u: &DeltaElem, k: El) -> DeltaElem {
        self.act(u, &self.alg.unital(self.alg.zero(), k))
    }

    pub fn aug_member(&self, u: &DeltaElem) -> bool {
        u.q.iter().chain(&u.u).all(|&x| x == 0)
    }

    /// Left `K`-module structure on the augmentation.
    pub fn act_scalar(&self, k: El, v: &DeltaElem) -> Result<DeltaElem> {
        if !self.aug_member(v) {
            return Err(OfaError::Domain("scalar multiplication is defined on the augmentation only".into()));
        }
        let r = self.ring();
        Ok(DeltaElem { d: v.d.iter().map(|&x| r.mul(k, x)).collect(), ..v.clone() })
    }

    pub fn elements(&self, cap: u128) -> Result<Vec<DeltaElem>> {
        let total = self.order();
        if total > cap {
            return Err(OfaError::Capacity { what: "odd form parameter".into(), size: total, cap });
        }
        let q = self.ring().size();
        let n = self.coord_count();
        Ok((0..total as u64)
            .map(|mut code| {
                let mut c = vec![0 as El; n];
                for v in c.iter_mut() {
                    *v = (code % q) as El;
                    code /= q;
                }
                self.from_flat(&c)
            })
            .collect())
    }

    pub fn d_elements(&self, cap: u128) -> Result<Vec<DeltaElem>> {
        let q = self.ring().size() as u128;
        let total = q.checked_pow(self.dbasis.len() as u32).unwrap_or(u128::MAX);
        if total > cap {
            return Err(OfaError::Capacity { what: "augmentation".into(), size: total, cap });
        }
        Ok((0..total as u64)
            .map(|mut code| {
                let mut z = self.zero();
                for v in z.d.iter_mut() {
                    *v = (code % q as u64) as El;
                    code /= q as u64;
                }
                z
            })
            .collect())
    }

    /// Every element with exactly one nonzero coordinate.
    pub fn coordinate_generators(&self) -> Vec<DeltaElem> {
        let n = self.coord_count();
        let mut out = Vec::new();
        for p in 0..n {
            for k in self.ring().elements().skip(1) {
                let mut c = vec![0; n];
                c[p] = k;
                out.push(self.from_flat(&c));
            }
        }
        out
    }

    pub fn random(&self, rng: &mut ChaCha8Rng) -> DeltaElem {
        let q = self.ring().size();
        let c: Vec<El> = (0..self.coord_count()).map(|_| rng.gen_range(0..q) as El).collect();
        self.from_flat(&c)
    }

    pub fn random_d(&self, rng: &mut ChaCha8Rng) -> DeltaElem {
        let q = self.ring().size();
        let mut z = self.zero();
        for v in z.d.iter_mut() {
            *v = rng.gen_range(0..q) as El;
        }
        z
    }

    pub fn random_alg(&self, rng: &mut ChaCha8Rng) -> AlgElem {
        let q = self.ring().size();
        let c: Vec<El> = (0..self.alg.dim()).map(|_| rng.gen_range(0..q) as El).collect();
        self.alg.from_coords(&c)
    }

    pub fn show(&self, u: &DeltaElem) -> String {
        let r = self.ring();
        let mut parts = Vec::new();
        for (&(i, j), &x) in self.qsupp.iter().zip(&u.q) {
            if x != 0 {
                parts.push(format!("q{i}.({}e({i},{j}))", r.show(x)));
            }
        }
        for (&i, &k) in self.usupp.iter().zip(&u.u) {
            if k != 0 {
                parts.push(format!("u{i}.{}", r.show(k)));
            }
        }
        for (g, &k) in self.dbasis.iter().zip(&u.d) {
            if k != 0 {
                match g {
                    DGen::Phi(i, j) => parts.push(format!("{}phi(e({i},{j}))", r.show(k))),
                    DGen::V(i) => parts.push(format!("{}v{i}", r.show(k))),
                }
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn to_json(&self, u: &DeltaElem) -> serde_json::Value {
        let r = self.ring();
        let q: Vec<_> = self
            .qsupp
            .iter()
            .zip(&u.q)
            .filter(|(_, x)| **x != 0)
            .map(|(&(i, j), &x)| serde_json::json!({"i": i, "j": j, "c": r.elem(x)}))
            .collect();
        let uu: Vec<_> = self
            .usupp
            .iter()
            .zip(&u.u)
            .filter(|(_, x)| **x != 0)
            .map(|(&i, &x)| serde_json::json!({"i": i, "c": r.elem(x)}))
            .collect();
        let d: Vec<_> = self
            .dbasis
            .iter()
            .zip(&u.d)
            .filter(|(_, x)| **x != 0)
            .map(|(g, &x)| match g {
                DGen::Phi(i, j) => serde_json::json!({"phi": [i, j], "c": r.elem(x)}),
                DGen::V(i) => serde_json::json!({"v": i, "c": r.elem(x)}),
            })
            .collect();
        serde_json::json!({"q": q, "u": uu, "d": d})
    }

    /// Whether `(pi, rho)` is injective, exhaustively when `|Delta| <= cap`.
    /// The flag is `false` when the answer rests on a sample.
    pub fn special_check(&self, cap: u128) -> (bool, bool) {
        let elems = match self.elements(cap) {
            Ok(e) => e,
            Err(_) => {
                let mut rng = ChaCha8Rng::seed_from_u64(0);
                (0..10_000).map(|_| self.random(&mut rng)).collect::<HashSet<_>>().into_iter().collect()
            }
        };
        let exhaustive = self.order() <= cap;
        let mut seen = HashSet::with_capacity(elems.len());
        let injective = elems.iter().all(|u| seen.insert(self.heis(u)));
        (injective, exhaustive)
    }
}

mod axioms;
pub use axioms::{axioms_check, structure_check};

#[cfg(test)]
mod tests;
