//! The canonical odd form ring `(S, Theta)` of a quadratic module and its
//! morphism into the naive one.
//!
//! `L` and its inverse are identified with `R`, so `S = M (x) L^-1 (x) M^op`
//! has the basis `s_ij = e_i (x) 1 (x) e_j^op`, restricted to opposite sides
//! for the linear type. Then `s_ij s_kl = b(j, k) s_il` and
//! `inv(s_ij) = c s_ji`, where `b` is the scalar part of the Gram matrix and
//! `c` is the sign of the involution of `L^-1`. `Theta` is special, so it is
//! stored inside the Heisenberg group of `S`.

use std::collections::{BTreeSet, HashSet};

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff_ring::{self, El};
use crate::error::{structural, OfaError, Result};
use crate::form_ring::{self, eps, AlgElem, Family};
use crate::odd_form_param::{DeltaShape, Heis};
use crate::report::Report;
use crate::unitary::{UnitaryGroup, GROUP_CAP};

use super::naive::{NaiveRing, TElem, XiElem};
use super::{HeisElem, Pair, QuadModule, QuadType};

/// `(pi, rho)` with both components dense `r x r` arrays over the `s_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SHeis {
    pub pi: Vec<El>,
    pub rho: Vec<El>,
}

/// Normal form of an element of `Theta`: one element of the odd form
/// parameter per basis vector of `N`, then `phi` of `sum_{i<j} n_i^op l_ij n_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaNf {
    pub u: Vec<HeisElem>,
    /// `l_ij` for `i < j` in lexicographic order.
    pub phi: Vec<Pair>,
}

#[derive(Clone, Debug)]
pub struct Canonical {
    pub module: QuadModule,
    sign: i64,
    bmat: Vec<El>,
    support: Vec<bool>,
}

impl Canonical {
    pub fn new(module: &QuadModule) -> Canonical {
        let r = module.rank();
        let linear = module.ty() == QuadType::Linear;
        let sign = if module.ty() == QuadType::Symplectic { -1 } else { 1 };
        let bmat = (0..r * r)
            .map(|k| {
                let (j, l) = (k / r, k % r);
                let g = module.g(j, l);
                if linear {
                    g[1 - module.sides[j]]
                } else {
                    g[0]
                }
            })
            .collect();
        let support = (0..r * r).map(|k| !linear || module.sides[k / r] != module.sides[k % r]).collect();
        Canonical { module: module.clone(), sign, bmat, support }
    }

    fn r(&self) -> usize {
        self.module.rank()
    }

    fn k(&self) -> &crate::Ring {
        self.module.ring()
    }

    /// The scalar form `b(j, k)` used by the product.
    pub fn bmat(&self) -> &[El] {
        &self.bmat
    }

    pub fn s_dim(&self) -> usize {
        self.support.iter().filter(|&&s| s).count()
    }

    pub fn s_zero(&self) -> Vec<El> {
        vec![0; self.r() * self.r()]
    }

    pub fn s_basis(&self) -> Vec<Vec<El>> {
        (0..self.r() * self.r())
            .filter(|&k| self.support[k])
            .map(|k| {
                let mut s = self.s_zero();
                s[k] = self.k().one();
                s
            })
            .collect()
    }

    pub fn s_member(&self, s: &[El]) -> bool {
        s.iter().zip(&self.support).all(|(&x, &ok)| ok || x == 0)
    }

    pub fn s_add(&self, a: &[El], b: &[El]) -> Vec<El> {
        a.iter().zip(b).map(|(x, y)| self.k().add(*x, *y)).collect()
    }

    pub fn s_sub(&self, a: &[El], b: &[El]) -> Vec<El> {
        a.iter().zip(b).map(|(x, y)| self.k().sub(*x, *y)).collect()
    }

    pub fn s_scale(&self, k: El, a: &[El]) -> Vec<El> {
        a.iter().map(|x| self.k().mul(k, *x)).collect()
    }

    pub fn s_mul(&self, a: &[El], b: &[El]) -> Vec<El> {
        let (k, r) = (self.k(), self.r());
        form_ring::mat_mul(k, r, &form_ring::mat_mul(k, r, a, &self.bmat), b)
    }

    pub fn s_inv(&self, a: &[El]) -> Vec<El> {
        let r = self.r();
        let k = self.k();
        let mut out = self.s_zero();
        for i in 0..r {
            for j in 0..r {
                out[j * r + i] = k.scale(self.sign, a[i * r + j]);
            }
        }
        out
    }

    // Heisenberg group of S.

    pub fn h_zero(&self) -> SHeis {
        SHeis { pi: self.s_zero(), rho: self.s_zero() }
    }

    pub fn h_add(&self, u: &SHeis, v: &SHeis) -> SHeis {
        let cross = self.s_mul(&self.s_inv(&u.pi), &v.pi);
        SHeis { pi: self.s_add(&u.pi, &v.pi), rho: self.s_add(&self.s_sub(&u.rho, &cross), &v.rho) }
    }

    pub fn h_neg(&self, u: &SHeis) -> SHeis {
        let sq = self.s_mul(&self.s_inv(&u.pi), &u.pi);
        SHeis { pi: self.s_scale(self.k().neg(self.k().one()), &u.pi), rho: self.s_sub(&self.s_zero(), &self.s_add(&sq, &u.rho)) }
    }

    pub fn h_act(&self, u: &SHeis, s: &[El]) -> SHeis {
        SHeis { pi: self.s_mul(&u.pi, s), rho: self.s_mul(&self.s_mul(&self.s_inv(s), &u.rho), s) }
    }

    /// Action of a scalar `k` of the unitalization.
    pub fn h_act_scalar(&self, u: &SHeis, k: El) -> SHeis {
        let kk = self.k().mul(k, k);
        SHeis { pi: self.s_scale(k, &u.pi), rho: self.s_scale(kk, &u.rho) }
    }

    pub fn h_phi(&self, s: &[El]) -> SHeis {
        SHeis { pi: self.s_zero(), rho: self.s_sub(s, &self.s_inv(s)) }
    }

    pub fn commutator(&self, u: &SHeis, v: &SHeis) -> SHeis {
        let a = self.h_add(u, v);
        let b = self.h_add(&a, &self.h_neg(u));
        self.h_add(&b, &self.h_neg(v))
    }

    // N = L^-1 (x) M^op, as row vectors over the basis n_j.

    fn comp(&self, l: Pair, i: usize) -> El {
        if self.module.ty() == QuadType::Linear {
            l[self.module.sides[i]]
        } else {
            l[0]
        }
    }

    /// `n^op l n'`.
    pub fn outer(&self, n: &[El], l: Pair, n2: &[El]) -> Vec<El> {
        let (k, r) = (self.k(), self.r());
        let mut out = self.s_zero();
        for i in 0..r {
            if n[i] == 0 {
                continue;
            }
            let li = k.scale(self.sign, self.comp(l, i));
            for j in 0..r {
                if self.support[i * r + j] && n2[j] != 0 {
                    out[i * r + j] = k.mul(k.mul(n[i], n2[j]), li);
                }
            }
        }
        out
    }

    /// `m n` in `S` for `m` in `M` and `n` in `N`.
    pub fn m_times_n(&self, m: &[El], n: &[El]) -> Vec<El> {
        let (k, r) = (self.k(), self.r());
        let mut out = self.s_zero();
        for i in 0..r {
            for j in 0..r {
                if self.support[i * r + j] {
                    out[i * r + j] = k.mul(m[i], n[j]);
                }
            }
        }
        out
    }

    /// Left action of `R` on `N`.
    pub fn r_times_n(&self, rr: Pair, n: &[El]) -> Vec<El> {
        let k = self.k();
        let linear = self.module.ty() == QuadType::Linear;
        n.iter().zip(&self.module.sides).map(|(&x, &s)| k.mul(x, if linear { rr[1 - s] } else { rr[0] })).collect()
    }

    /// Right action of `S` on `N`.
    pub fn n_times_s(&self, n: &[El], s: &[El]) -> Vec<El> {
        let (k, r) = (self.k(), self.r());
        let nb: Vec<El> = (0..r).map(|a| (0..r).fold(0, |acc, j| k.add(acc, k.mul(n[j], self.bmat[j * r + a])))).collect();
        (0..r).map(|b| (0..r).fold(0, |acc, a| k.add(acc, k.mul(nb[a], s[a * r + b])))).collect()
    }

    pub fn boxtimes(&self, u: &HeisElem, n: &[El]) -> SHeis {
        SHeis { pi: self.m_times_n(&u.m, n), rho: self.outer(n, u.l, n) }
    }

    pub fn n_basis(&self, j: usize) -> Vec<El> {
        self.module.basis_vec(j)
    }

    fn upper_pairs(&self) -> Vec<(usize, usize)> {
        let r = self.r();
        (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect()
    }

    pub fn nf_eval(&self, nf: &ThetaNf) -> SHeis {
        let mut acc = self.h_zero();
        for (j, u) in nf.u.iter().enumerate() {
            acc = self.h_add(&acc, &self.boxtimes(u, &self.n_basis(j)));
        }
        let mut s = self.s_zero();
        for (&(i, j), &l) in self.upper_pairs().iter().zip(&nf.phi) {
            s = self.s_add(&s, &self.outer(&self.n_basis(i), l, &self.n_basis(j)));
        }
        self.h_add(&acc, &self.h_phi(&s))
    }

    /// The summands `L (x) n_j` and the central part of the normal form.
    pub fn summands(&self, cap: u64) -> Result<(Vec<Vec<SHeis>>, Vec<SHeis>)> {
        let lp = self.module.lparam_elements(cap)?;
        let parts: Vec<Vec<SHeis>> = (0..self.r())
            .map(|j| {
                let set: BTreeSet<SHeis> = lp.iter().map(|u| self.boxtimes(u, &self.n_basis(j))).collect();
                set.into_iter().collect()
            })
            .collect();
        let ls = self.module.qr.r_elements();
        let mut gens = Vec::new();
        for (i, j) in self.upper_pairs() {
            for &l in &ls {
                gens.push(self.h_phi(&self.outer(&self.n_basis(i), l, &self.n_basis(j))).rho);
            }
        }
        let span = coeff_ring::span_elements(self.k(), self.r() * self.r(), &gens, cap as usize)?;
        let central = span.into_iter().map(|rho| SHeis { pi: self.s_zero(), rho }).collect();
        Ok((parts, central))
    }

    /// Size of `Theta` predicted by the normal form.
    pub fn theta_order(&self, cap: u64) -> Result<u128> {
        let (parts, central) = self.summands(cap)?;
        Ok(parts.iter().map(|p| p.len() as u128).product::<u128>() * central.len() as u128)
    }

    /// All elements of `Theta`, sorted, and whether the normal form was unique.
    pub fn theta_elements(&self, cap: u64) -> Result<(Vec<SHeis>, bool)> {
        let total = self.theta_order(cap)?;
        if total > cap as u128 {
            return Err(OfaError::Capacity { what: "canonical odd form parameter".into(), size: total, cap: cap as u128 });
        }
        let (parts, central) = self.summands(cap)?;
        let mut cur = vec![self.h_zero()];
        for p in parts.iter().chain(std::iter::once(&central)) {
            cur = cur.iter().flat_map(|x| p.iter().map(move |a| self.h_add(x, a))).collect();
        }
        let n = cur.len();
        cur.sort();
        cur.dedup();
        let unique = cur.len() == n;
        Ok((cur, unique))
    }

    /// Generators `u (x) n_j` and `phi(s_ij)`.
    pub fn theta_generators(&self, cap: u64) -> Result<Vec<SHeis>> {
        let lp = self.module.lparam_elements(cap)?;
        let mut out: Vec<SHeis> = (0..self.r())
            .flat_map(|j| lp.iter().map(move |u| self.boxtimes(u, &self.n_basis(j))))
            .collect();
        out.extend(self.s_basis().iter().map(|s| self.h_phi(s)));
        Ok(out)
    }

    /// The defining relations and operations on random arguments.
    pub fn relations_check(&self, samples: u64, seed: u64, cap: u64) -> Result<Report> {
        let mut rep = Report::new("canonical relations");
        let m = &self.module;
        let lp = m.lparam_elements(cap)?;
        let ls = m.qr.r_elements();
        let (k, r, qs) = (self.k(), self.r(), self.k().size());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vec = |rng: &mut ChaCha8Rng| (0..r).map(|_| rng.gen_range(0..qs) as El).collect::<Vec<El>>();
        let svec = |rng: &mut ChaCha8Rng| {
            let mut s: Vec<El> = (0..r * r).map(|_| rng.gen_range(0..qs) as El).collect();
            for (x, &ok) in s.iter_mut().zip(&self.support) {
                if !ok {
                    *x = 0;
                }
            }
            s
        };
        struct Sample {
            u: HeisElem,
            u2: HeisElem,
            n: Vec<El>,
            n2: Vec<El>,
            s: Vec<El>,
            s2: Vec<El>,
            l: Pair,
            rr: Pair,
            kk: El,
        }
        let samples: Vec<Sample> = (0..samples)
            .map(|_| Sample {
                u: lp[rng.gen_range(0..lp.len())].clone(),
                u2: lp[rng.gen_range(0..lp.len())].clone(),
                n: vec(&mut rng),
                n2: vec(&mut rng),
                s: svec(&mut rng),
                s2: svec(&mut rng),
                l: ls[rng.gen_range(0..ls.len())],
                rr: ls[rng.gen_range(0..ls.len())],
                kk: rng.gen_range(0..qs) as El,
            })
            .collect();
        let n = samples.len() as u64;
        let at = |i: u64| &samples[i as usize];
        let show = |i: u64| format!("sample {i}");
        rep.check_all("phi_additive", n, |i| {
            let x = at(i);
            (self.h_phi(&self.s_add(&x.s, &x.s2)) != self.h_add(&self.h_phi(&x.s), &self.h_phi(&x.s2))).then(|| show(i))
        });
        rep.check_all("phi_central", n, |i| {
            let x = at(i);
            (self.commutator(&self.h_phi(&x.s), &self.boxtimes(&x.u, &x.n)) != self.h_zero()).then(|| show(i))
        });
        rep.check_all("boxtimes_commutator", n, |i| {
            let x = at(i);
            let lhs = self.commutator(&self.boxtimes(&x.u, &x.n), &self.boxtimes(&x.u2, &x.n2));
            let l = m.qr.neg(m.b(&x.u.m, &x.u2.m));
            (lhs != self.h_phi(&self.outer(&x.n, l, &x.n2))).then(|| show(i))
        });
        rep.check_all("boxtimes_additive_left", n, |i| {
            let x = at(i);
            let lhs = self.boxtimes(&m.heis_add(&x.u, &x.u2), &x.n);
            (lhs != self.h_add(&self.boxtimes(&x.u, &x.n), &self.boxtimes(&x.u2, &x.n))).then(|| show(i))
        });
        rep.check_all("boxtimes_balanced", n, |i| {
            let x = at(i);
            (self.boxtimes(&m.heis_act(&x.u, x.rr), &x.n) != self.boxtimes(&x.u, &self.r_times_n(x.rr, &x.n))).then(|| show(i))
        });
        rep.check_all("boxtimes_additive_right", n, |i| {
            let x = at(i);
            let lhs = self.boxtimes(&x.u, &self.s_add_n(&x.n, &x.n2));
            let mid = self.h_phi(&self.outer(&x.n2, x.u.l, &x.n));
            let rhs = self.h_add(&self.h_add(&self.boxtimes(&x.u, &x.n), &mid), &self.boxtimes(&x.u, &x.n2));
            (lhs != rhs).then(|| show(i))
        });
        rep.check_all("boxtimes_lmin", n, |i| {
            let x = at(i);
            let u = HeisElem { m: m.zero(), l: m.qr.sub(x.l, m.qr.l_inv(x.l)) };
            (self.boxtimes(&u, &x.n) != self.h_phi(&self.outer(&x.n, x.l, &x.n))).then(|| show(i))
        });
        rep.check_all("phi_hermitian_vanishes", n, |i| {
            let x = at(i);
            let h = self.s_add(&x.s, &self.s_inv(&x.s));
            (self.h_phi(&h) != self.h_zero()).then(|| show(i))
        });
        rep.check_all("action_on_phi", n, |i| {
            let x = at(i);
            let lhs = self.h_act(&self.h_phi(&x.s2), &x.s);
            (lhs != self.h_phi(&self.s_mul(&self.s_mul(&self.s_inv(&x.s), &x.s2), &x.s))).then(|| show(i))
        });
        rep.check_all("action_on_boxtimes", n, |i| {
            let x = at(i);
            let lhs = self.h_act(&self.boxtimes(&x.u, &x.n), &x.s);
            (lhs != self.boxtimes(&x.u, &self.n_times_s(&x.n, &x.s))).then(|| show(i))
        });
        rep.check_all("scalar_action", n, |i| {
            let x = at(i);
            let nk: Vec<El> = x.n.iter().map(|&a| k.mul(a, x.kk)).collect();
            let ok1 = self.h_act_scalar(&self.boxtimes(&x.u, &x.n), x.kk) == self.boxtimes(&x.u, &nk);
            let kk2 = k.mul(x.kk, x.kk);
            let ok2 = self.h_act_scalar(&self.h_phi(&x.s), x.kk) == self.h_phi(&self.s_scale(kk2, &x.s));
            (!(ok1 && ok2)).then(|| show(i))
        });
        rep.check_all("augmentation_scalars", n, |i| {
            let x = at(i);
            let lam = HeisElem { m: m.zero(), l: x.l };
            if m.qr.phi(x.l) != 0 {
                return None;
            }
            let v = self.boxtimes(&lam, &x.n);
            let kv = self.boxtimes(&HeisElem { m: m.zero(), l: m.qr.scale(x.kk, x.l) }, &x.n);
            let scaled = SHeis { pi: v.pi.clone(), rho: self.s_scale(x.kk, &v.rho) };
            let phi_ok = self.h_phi(&self.s_scale(x.kk, &x.s)).rho == self.s_scale(x.kk, &self.h_phi(&x.s).rho);
            (kv != scaled || !phi_ok).then(|| show(i))
        });
        Ok(rep)
    }

    fn s_add_n(&self, a: &[El], b: &[El]) -> Vec<El> {
        a.iter().zip(b).map(|(x, y)| self.k().add(*x, *y)).collect()
    }

    // Identification with the split presets: e_ij = w_j s_{i,-j}.

    fn preset_family(&self, family: Family) -> Result<()> {
        if QuadType::of_family(family) != self.module.ty() || family.labels() != self.module.labels {
            return structural(format!("module does not match the split family {}", family.name()));
        }
        Ok(())
    }

    fn weight(&self, b: i32) -> i64 {
        if self.module.ty() == QuadType::Symplectic {
            eps(b)
        } else {
            1
        }
    }

    pub fn to_preset(&self, shape: &DeltaShape, s: &[El]) -> AlgElem {
        let a = &shape.alg;
        let (k, r) = (self.k(), self.r());
        let labels = &self.module.labels;
        let mut out = a.zero();
        for i in 0..r {
            for j in 0..r {
                let c = s[i * r + j];
                if c != 0 {
                    a.set(&mut out, labels[i], -labels[j], k.scale(self.weight(labels[j]), c));
                }
            }
        }
        out
    }

    pub fn from_preset(&self, shape: &DeltaShape, x: &AlgElem) -> Vec<El> {
        let a = &shape.alg;
        let (k, r) = (self.k(), self.r());
        let mut out = self.s_zero();
        for &(i, j) in a.basis() {
            let c = a.get(x, i, j);
            if c != 0 {
                let (p, q) = (self.module.pos(i), self.module.pos(-j));
                out[p * r + q] = k.scale(self.weight(-j), c);
            }
        }
        out
    }

    pub fn heis_to_preset(&self, shape: &DeltaShape, h: &SHeis) -> Heis {
        Heis { pi: self.to_preset(shape, &h.pi), rho: self.to_preset(shape, &h.rho) }
    }

    /// Compare `(S, Theta, Ker pi)` with the preset `(R, Delta, D)` of a split family.
    pub fn preset_check(&self, family: Family, cap: u64) -> Result<Report> {
        self.preset_family(family)?;
        let shape = DeltaShape::new(&form_ring::InvAlgebra::new(family, self.k())?);
        let a = &shape.alg;
        let mut rep = Report::new(format!("canonical construction vs {} over {:?}", family.name(), self.k().spec()));
        let basis = self.s_basis();
        rep.check("dimension", basis.len() == a.dim(), || format!("{} vs {}", basis.len(), a.dim()));
        let nb = basis.len() as u64;
        rep.check_all("product", nb * nb, |t| {
            let (x, y) = (&basis[(t / nb) as usize], &basis[(t % nb) as usize]);
            let lhs = self.to_preset(&shape, &self.s_mul(x, y));
            (lhs != a.mul(&self.to_preset(&shape, x), &self.to_preset(&shape, y))).then(|| format!("pair {t}"))
        });
        rep.check_all("involution", nb, |t| {
            let x = &basis[t as usize];
            (self.to_preset(&shape, &self.s_inv(x)) != a.inv(&self.to_preset(&shape, x))).then(|| format!("basis {t}"))
        });
        rep.check_all("roundtrip", nb, |t| {
            let x = &basis[t as usize];
            (self.from_preset(&shape, &self.to_preset(&shape, x)) != *x).then(|| format!("basis {t}"))
        });
        let (theta, unique) = self.theta_elements(cap)?;
        rep.check("normal_form_unique", unique, || "two normal forms give the same element".into());
        let mapped: Vec<Option<_>> = theta.iter().map(|h| shape.from_heis(&self.heis_to_preset(&shape, h))).collect();
        rep.check_all("theta_in_delta", theta.len() as u64, |i| mapped[i as usize].is_none().then(|| format!("element {i}")));
        let distinct: HashSet<_> = mapped.iter().flatten().collect();
        rep.check("theta_onto_delta", distinct.len() as u128 == shape.order() && theta.len() as u128 == shape.order(), || {
            format!("|Theta| = {}, images {}, |Delta| = {}", theta.len(), distinct.len(), shape.order())
        });
        let aug: Vec<&SHeis> = theta.iter().filter(|h| h.pi.iter().all(|&x| x == 0)).collect();
        let aug_ok = aug.iter().all(|h| shape.from_heis(&self.heis_to_preset(&shape, h)).is_some_and(|d| shape.aug_member(&d)));
        let d_count = shape.d_elements(cap as u128)?.len();
        rep.check("augmentation_is_d", aug_ok && aug.len() == d_count, || format!("|Ker pi| = {}, |D| = {d_count}", aug.len()));
        let lam_gens: Vec<Vec<El>> = self
            .module
            .qr
            .r_elements()
            .into_iter()
            .filter(|&l| self.module.qr.phi(l) == 0)
            .flat_map(|l| (0..self.r()).map(move |j| (l, j)))
            .map(|(l, j)| self.boxtimes(&HeisElem { m: self.module.zero(), l }, &self.n_basis(j)).rho)
            .chain(self.s_basis().iter().map(|s| self.h_phi(s).rho))
            .collect();
        let span = coeff_ring::span_elements(self.k(), self.r() * self.r(), &lam_gens, cap as usize)?;
        rep.check("augmentation_generated", span.len() == aug.len(), || format!("span {} vs {}", span.len(), aug.len()));
        rep.note(format!("|Theta| = {}, |Ker pi| = {}", theta.len(), aug.len()));
        Ok(rep)
    }
}

/// The morphism `f: (S, Theta) -> (T, Xi)`.
#[derive(Clone, Debug)]
pub struct CanonicalMorphism {
    pub canon: Canonical,
    pub naive: NaiveRing,
}

impl CanonicalMorphism {
    pub fn new(module: &QuadModule) -> CanonicalMorphism {
        CanonicalMorphism { canon: Canonical::new(module), naive: NaiveRing::new(module) }
    }

    /// `f(s) = (inv(s) b, s b)`.
    pub fn f_s(&self, s: &[El]) -> TElem {
        let c = &self.canon;
        let (k, r) = (c.k(), c.r());
        TElem { x: form_ring::mat_mul(k, r, &c.s_inv(s), c.bmat()), y: form_ring::mat_mul(k, r, s, c.bmat()) }
    }

    pub fn f_theta(&self, h: &SHeis) -> XiElem {
        XiElem { pi: self.f_s(&h.pi), rho: self.f_s(&h.rho) }
    }

    /// Whether `B` induces `M^op = Hom(M, L)`, i.e. the scalar form is invertible.
    pub fn regular(&self) -> bool {
        let c = &self.canon;
        c.k().is_unit(form_ring::det(c.k(), c.r(), c.bmat()))
    }

    /// Morphism axioms and bijectivity on `S -> T` and `Theta -> Xi`.
    pub fn naive_canon_check(&self, cap: u64, samples: u64, seed: u64) -> Result<Report> {
        let (c, t) = (&self.canon, &self.naive);
        let m = &c.module;
        let mut rep = Report::new(format!("canonical vs naive, {} module of rank {} over {:?}", m.ty().name(), m.rank(), c.k().spec()));
        rep.note(format!("regular: {}", self.regular()));
        let basis = c.s_basis();
        let nb = basis.len() as u64;
        rep.check_all("f_s_in_t", nb, |i| (!t.in_t(&self.f_s(&basis[i as usize]))).then(|| format!("basis {i}")));
        rep.check_all("f_s_multiplicative", nb * nb, |i| {
            let (x, y) = (&basis[(i / nb) as usize], &basis[(i % nb) as usize]);
            (self.f_s(&c.s_mul(x, y)) != t.t_mul(&self.f_s(x), &self.f_s(y))).then(|| format!("pair {i}"))
        });
        rep.check_all("f_s_involution", nb, |i| {
            let x = &basis[i as usize];
            (self.f_s(&c.s_inv(x)) != t.t_inv(&self.f_s(x))).then(|| format!("basis {i}"))
        });
        let r = c.r();
        let support: Vec<usize> = (0..r * r).filter(|&k| c.support[k]).collect();
        let ker = coeff_ring::kernel_size(c.k(), support.len(), 2 * r * r, |v| {
            let mut s = c.s_zero();
            for (&k, &x) in support.iter().zip(v) {
                s[k] = x;
            }
            let f = self.f_s(&s);
            f.x.into_iter().chain(f.y).collect()
        });
        let s_order = (c.k().size() as u128).pow(support.len() as u32);
        let t_order = t.t_order();
        rep.check("f_s_injective", ker == 1, || format!("kernel of size {ker}"));
        rep.check("f_s_surjective", s_order / ker == t_order, || format!("|f(S)| = {}, |T| = {t_order}", s_order / ker));

        let xi = t.xi_elements(cap as usize)?;
        let xi_set: HashSet<&XiElem> = xi.iter().collect();
        let (theta, _) = c.theta_elements(cap)?;
        let images: Vec<XiElem> = theta.iter().map(|h| self.f_theta(h)).collect();
        rep.check_all("f_theta_in_xi", images.len() as u64, |i| {
            (!xi_set.contains(&images[i as usize])).then(|| format!("element {i}"))
        });
        let distinct: HashSet<&XiElem> = images.iter().collect();
        rep.check("f_theta_injective", distinct.len() == theta.len(), || format!("{} images of {}", distinct.len(), theta.len()));
        rep.check("f_theta_surjective", distinct.len() == xi.len() && distinct.iter().all(|x| xi_set.contains(x)), || {
            format!("|f(Theta)| = {}, |Xi| = {}", distinct.len(), xi.len())
        });
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs: Vec<(usize, usize, usize)> = (0..samples)
            .map(|_| (rng.gen_range(0..theta.len()), rng.gen_range(0..theta.len()), rng.gen_range(0..basis.len().max(1))))
            .collect();
        rep.check_all("f_theta_additive", pairs.len() as u64, |i| {
            let (a, b, _) = pairs[i as usize];
            let lhs = self.f_theta(&c.h_add(&theta[a], &theta[b]));
            (lhs != t.xi_add(&images[a], &images[b])).then(|| format!("pair {a}, {b}"))
        });
        rep.check_all("f_theta_equivariant", pairs.len() as u64, |i| {
            let (a, _, s) = pairs[i as usize];
            let s = basis.get(s)?;
            (self.f_theta(&c.h_act(&theta[a], s)) != t.xi_act(&images[a], &self.f_s(s))).then(|| format!("element {a}"))
        });
        rep.note(format!("|S| = {s_order}, |T| = {t_order}, |Theta| = {}, |Xi| = {}", theta.len(), xi.len()));
        Ok(rep)
    }

    /// The canonical unitary group of a split module pushed into `Aut(M)`
    /// as `1 + y(f(beta))`, sorted, with duplicates removed.
    pub fn canonical_unitary_image(&self, family: Family) -> Result<(usize, Vec<Vec<El>>)> {
        let c = &self.canon;
        c.preset_family(family)?;
        let g = UnitaryGroup::new(family, c.k())?;
        let elems = g.enumerate(GROUP_CAP)?;
        let one = form_ring::mat_identity(c.k(), c.r());
        let mut out: Vec<Vec<El>> = elems
            .iter()
            .map(|x| {
                let s = c.from_preset(&g.shape, &x.beta);
                c.s_add(&self.f_s(&s).y, &one)
            })
            .collect();
        out.sort();
        out.dedup();
        Ok((elems.len(), out))
    }

    /// `U(M)`, `U(T, Xi)` and the image of `U(S, Theta)` side by side.
    pub fn unitary_comparison(&self, family: Family, cap: u64) -> Result<Report> {
        let m = &self.canon.module;
        let mut rep = Report::new(format!("unitary groups of the split {} module", family.name()));
        let module_u = m.enumerate_unitary(GROUP_CAP)?;
        let naive_u = self.naive.unitary_elements(cap)?;
        let (canon_order, canon_img) = self.canonical_unitary_image(family)?;
        rep.check("naive_equals_module", naive_u == module_u, || {
            format!("|U(T, Xi)| = {}, |U(M)| = {}", naive_u.len(), module_u.len())
        });
        rep.check("canonical_equals_module", canon_order == module_u.len() && canon_img == module_u, || {
            format!("|U(S, Theta)| = {canon_order} with {} distinct images, |U(M)| = {}", canon_img.len(), module_u.len())
        });
        rep.note(format!("|U(M)| = {}, |U(T, Xi)| = {}, |U(S, Theta)| = {canon_order}", module_u.len(), naive_u.len()));
        Ok(rep)
    }
}
