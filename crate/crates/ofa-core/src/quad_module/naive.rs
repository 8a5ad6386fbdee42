//! The naive odd form ring `(T, Xi)` of a quadratic module, inside
//! `End(M)^op x End(M)`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::coeff_ring::{self, El};
use crate::error::{OfaError, Result};
use crate::form_ring;

use super::{digits, QuadModule};

/// `(x^op, y)` stored as two row-major matrices acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TElem {
    pub x: Vec<El>,
    pub y: Vec<El>,
}

/// `(pi, rho)` in the Heisenberg group of `T'` for `B(t, t') = inv(t) t'`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XiElem {
    pub pi: TElem,
    pub rho: TElem,
}

#[derive(Clone, Debug)]
pub struct NaiveRing {
    pub module: QuadModule,
    /// Matrix positions allowed by `R`-linearity.
    free: Vec<usize>,
    /// Test vectors `e_i` and `e_i + e_j` on which quadratic maps are compared.
    tests: Vec<Vec<El>>,
}

impl NaiveRing {
    pub fn new(module: &QuadModule) -> NaiveRing {
        let r = module.rank();
        let free = (0..r * r).filter(|&k| module.sides[k / r] == module.sides[k % r]).collect();
        let mut tests: Vec<Vec<El>> = (0..r).map(|a| module.basis_vec(a)).collect();
        for a in 0..r {
            for b in a + 1..r {
                tests.push(module.m_add(&module.basis_vec(a), &module.basis_vec(b)));
            }
        }
        NaiveRing { module: module.clone(), free, tests }
    }

    fn r(&self) -> usize {
        self.module.rank()
    }

    fn k(&self) -> &crate::Ring {
        self.module.ring()
    }

    fn mat_add(&self, a: &[El], b: &[El]) -> Vec<El> {
        a.iter().zip(b).map(|(x, y)| self.k().add(*x, *y)).collect()
    }

    fn mat_sub(&self, a: &[El], b: &[El]) -> Vec<El> {
        a.iter().zip(b).map(|(x, y)| self.k().sub(*x, *y)).collect()
    }

    fn mat_mul(&self, a: &[El], b: &[El]) -> Vec<El> {
        form_ring::mat_mul(self.k(), self.r(), a, b)
    }

    fn apply(&self, a: &[El], v: &[El]) -> Vec<El> {
        let r = self.r();
        (0..r).map(|i| (0..r).fold(0, |acc, j| self.k().add(acc, self.k().mul(a[i * r + j], v[j])))).collect()
    }

    pub fn t_zero(&self) -> TElem {
        let z = vec![0; self.r() * self.r()];
        TElem { x: z.clone(), y: z }
    }

    pub fn t_one(&self) -> TElem {
        let i = form_ring::mat_identity(self.k(), self.r());
        TElem { x: i.clone(), y: i }
    }

    pub fn t_add(&self, a: &TElem, b: &TElem) -> TElem {
        TElem { x: self.mat_add(&a.x, &b.x), y: self.mat_add(&a.y, &b.y) }
    }

    pub fn t_sub(&self, a: &TElem, b: &TElem) -> TElem {
        TElem { x: self.mat_sub(&a.x, &b.x), y: self.mat_sub(&a.y, &b.y) }
    }

    pub fn t_neg(&self, a: &TElem) -> TElem {
        self.t_sub(&self.t_zero(), a)
    }

    pub fn t_mul(&self, a: &TElem, b: &TElem) -> TElem {
        TElem { x: self.mat_mul(&b.x, &a.x), y: self.mat_mul(&a.y, &b.y) }
    }

    pub fn t_inv(&self, a: &TElem) -> TElem {
        TElem { x: a.y.clone(), y: a.x.clone() }
    }

    /// Both components are `R`-linear.
    pub fn in_tprime(&self, t: &TElem) -> bool {
        self.module.r_linear(&t.x) && self.module.r_linear(&t.y)
    }

    /// `B(m, y m') = B(x m, m')` on basis vectors.
    pub fn in_t(&self, t: &TElem) -> bool {
        let m = &self.module;
        let r = self.r();
        self.in_tprime(t)
            && (0..r).all(|a| {
                let xa = m.column(&t.x, a);
                (0..r).all(|b| m.b(&m.basis_vec(a), &m.column(&t.y, b)) == m.b(&xa, &m.basis_vec(b)))
            })
    }

    fn coords_to_t(&self, c: &[El]) -> TElem {
        let mut t = self.t_zero();
        let f = self.free.len();
        for (p, &k) in self.free.iter().enumerate() {
            t.x[k] = c[p];
            t.y[k] = c[f + p];
        }
        t
    }

    fn t_to_coords(&self, t: &TElem) -> Vec<El> {
        self.free.iter().map(|&k| t.x[k]).chain(self.free.iter().map(|&k| t.y[k])).collect()
    }

    /// Additive generators of `T`, from the kernel of the adjointness defect.
    pub fn t_generators(&self) -> Vec<TElem> {
        let m = &self.module;
        let r = self.r();
        let nout = r * r * 2;
        coeff_ring::kernel(self.k(), 2 * self.free.len(), nout, |c| {
            let t = self.coords_to_t(c);
            let mut out = Vec::with_capacity(nout);
            for a in 0..r {
                let xa = m.column(&t.x, a);
                for b in 0..r {
                    let d = m.qr.sub(m.b(&m.basis_vec(a), &m.column(&t.y, b)), m.b(&xa, &m.basis_vec(b)));
                    out.extend(d);
                }
            }
            out
        })
        .iter()
        .map(|c| self.coords_to_t(c))
        .collect()
    }

    pub fn t_order(&self) -> u128 {
        let m = &self.module;
        let r = self.r();
        coeff_ring::kernel_size(self.k(), 2 * self.free.len(), r * r * 2, |c| {
            let t = self.coords_to_t(c);
            let mut out = Vec::new();
            for a in 0..r {
                let xa = m.column(&t.x, a);
                for b in 0..r {
                    out.extend(m.qr.sub(m.b(&m.basis_vec(a), &m.column(&t.y, b)), m.b(&xa, &m.basis_vec(b))));
                }
            }
            out
        })
    }

    pub fn t_elements(&self, cap: usize) -> Result<Vec<TElem>> {
        let gens: Vec<Vec<El>> = self.t_generators().iter().map(|t| self.t_to_coords(t)).collect();
        let span = coeff_ring::span_elements(self.k(), 2 * self.free.len(), &gens, cap)?;
        Ok(span.iter().map(|c| self.coords_to_t(c)).collect())
    }

    // The Heisenberg group of T'.

    pub fn xi_zero(&self) -> XiElem {
        XiElem { pi: self.t_zero(), rho: self.t_zero() }
    }

    pub fn xi_add(&self, u: &XiElem, v: &XiElem) -> XiElem {
        let cross = self.t_mul(&self.t_inv(&u.pi), &v.pi);
        XiElem { pi: self.t_add(&u.pi, &v.pi), rho: self.t_add(&self.t_sub(&u.rho, &cross), &v.rho) }
    }

    pub fn xi_act(&self, u: &XiElem, t: &TElem) -> XiElem {
        XiElem { pi: self.t_mul(&u.pi, t), rho: self.t_mul(&self.t_mul(&self.t_inv(t), &u.rho), t) }
    }

    pub fn xi_phi(&self, t: &TElem) -> XiElem {
        XiElem { pi: self.t_zero(), rho: self.t_sub(t, &self.t_inv(t)) }
    }

    /// `inv(pi) pi + rho + inv(rho) = 0`.
    pub fn in_xi_max(&self, u: &XiElem) -> bool {
        let s = self.t_add(&self.t_add(&self.t_mul(&self.t_inv(&u.pi), &u.pi), &u.rho), &self.t_inv(&u.rho));
        s == self.t_zero()
    }

    /// `q(y m) + phi(B(m, w m))` on the test vectors, with `pi = (x^op, y)`, `rho = (z^op, w)`.
    fn quad_defect(&self, y: &[El], w: &[El]) -> Vec<El> {
        let m = &self.module;
        self.tests
            .iter()
            .map(|v| m.ring().add(m.qv(&self.apply(y, v)), m.qr.phi(m.b(v, &self.apply(w, v)))))
            .collect()
    }

    pub fn in_xi(&self, u: &XiElem) -> bool {
        self.in_t(&u.pi)
            && self.in_t(&u.rho)
            && self.in_xi_max(u)
            && self.quad_defect(&u.pi.y, &u.rho.y).iter().all(|&d| d == 0)
    }

    /// Key of the additive map `rho -> (rho + inv(rho), phi(B(m, w m)))`.
    fn rho_key(&self, rho: &TElem) -> (TElem, Vec<El>) {
        let zero = vec![0; self.r() * self.r()];
        (self.t_add(rho, &self.t_inv(rho)), self.quad_defect(&zero, &rho.y))
    }

    /// Solvable `pi` with one `rho` each, and the group of `rho` with `(0, rho)` in `Xi`.
    pub fn xi_fibers(&self, cap: usize) -> Result<(Vec<XiElem>, Vec<TElem>)> {
        let ts = self.t_elements(cap)?;
        let zero_key = self.rho_key(&self.t_zero());
        let keys: Vec<(TElem, Vec<El>)> = ts.par_iter().map(|t| self.rho_key(t)).collect();
        let mut lookup: HashMap<&(TElem, Vec<El>), &TElem> = HashMap::new();
        let mut h0 = Vec::new();
        for (t, key) in ts.iter().zip(&keys) {
            lookup.entry(key).or_insert(t);
            if *key == zero_key {
                h0.push(t.clone());
            }
        }
        let k = self.k();
        let zero = vec![0; self.r() * self.r()];
        let reps: Vec<XiElem> = ts
            .par_iter()
            .filter_map(|pi| {
                let target = (
                    self.t_neg(&self.t_mul(&self.t_inv(pi), pi)),
                    self.quad_defect(&pi.y, &zero).iter().map(|&d| k.neg(d)).collect::<Vec<_>>(),
                );
                lookup.get(&target).map(|&rho| XiElem { pi: pi.clone(), rho: rho.clone() })
            })
            .collect();
        Ok((reps, h0))
    }

    pub fn xi_order(&self, cap: usize) -> Result<u128> {
        let (reps, h0) = self.xi_fibers(cap)?;
        Ok(reps.len() as u128 * h0.len() as u128)
    }

    pub fn xi_elements(&self, cap: usize) -> Result<Vec<XiElem>> {
        let (reps, h0) = self.xi_fibers(cap)?;
        let total = reps.len() * h0.len();
        if total > cap {
            return Err(OfaError::Capacity { what: "naive odd form parameter".into(), size: total as u128, cap: cap as u128 });
        }
        let mut out: Vec<XiElem> = reps
            .iter()
            .flat_map(|u| h0.iter().map(move |h| XiElem { pi: u.pi.clone(), rho: self.t_add(&u.rho, h) }))
            .collect();
        out.sort();
        Ok(out)
    }

    /// `U(T, Xi)` as the sorted matrices `b` with `alpha = ((b^-1)^op, b)`.
    pub fn unitary_elements(&self, cap: u64) -> Result<Vec<Vec<El>>> {
        let r = self.r();
        let q = self.k().size();
        let total = (q as u128).checked_pow(self.free.len() as u32).unwrap_or(u128::MAX);
        if total > cap as u128 {
            return Err(OfaError::Capacity { what: "naive unitary candidates".into(), size: total, cap: cap as u128 });
        }
        let one = self.t_one();
        let mut out: Vec<Vec<El>> = (0..total as u64)
            .into_par_iter()
            .filter_map(|code| {
                let d = digits(code, q, self.free.len());
                let mut b = vec![0; r * r];
                for (&k, v) in self.free.iter().zip(d) {
                    b[k] = v;
                }
                let binv = form_ring::mat_inverse(self.k(), r, &b)?;
                let beta = self.t_sub(&TElem { x: binv, y: b.clone() }, &one);
                let gamma = XiElem { pi: beta.clone(), rho: self.t_inv(&beta) };
                self.in_xi(&gamma).then_some(b)
            })
            .collect();
        out.sort();
        Ok(out)
    }
}
