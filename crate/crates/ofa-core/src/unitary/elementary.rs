//! Hyperbolic pairs and families, elementary transvections and dilations,
//! and the parabolic subgroups they generate.

use crate::coeff_ring::{self, El};
use crate::error::{OfaError, Result};
use crate::form_ring::{AlgElem, Unital};
use crate::odd_form_param::{DeltaElem, Heis};
use crate::report::Report;

use super::{UnitaryElem, UnitaryGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicPair {
    pub e_minus: AlgElem,
    pub e_plus: AlgElem,
    pub q_minus: DeltaElem,
    pub q_plus: DeltaElem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicFamily {
    pub pairs: Vec<HyperbolicPair>,
}

impl HyperbolicFamily {
    pub fn rank(&self) -> usize {
        self.pairs.len()
    }

    fn pair(&self, i: i32) -> &HyperbolicPair {
        assert!(i != 0 && i.unsigned_abs() as usize <= self.rank(), "index {i} outside the family");
        &self.pairs[i.unsigned_abs() as usize - 1]
    }

    pub fn e(&self, i: i32) -> &AlgElem {
        let p = self.pair(i);
        if i > 0 {
            &p.e_plus
        } else {
            &p.e_minus
        }
    }

    pub fn q(&self, i: i32) -> &DeltaElem {
        let p = self.pair(i);
        if i > 0 {
            &p.q_plus
        } else {
            &p.q_minus
        }
    }

    /// Signed indices `-m..-1, 1..m`.
    pub fn indices(&self) -> Vec<i32> {
        let m = self.rank() as i32;
        (-m..=m).filter(|&i| i != 0).collect()
    }
}

fn add_all(g: &UnitaryGroup, xs: &[&AlgElem]) -> AlgElem {
    xs.iter().fold(g.alg().zero(), |acc, x| g.alg().add(&acc, x))
}

impl UnitaryGroup {
    /// `eta_i = (e_{-i,-i}, e_ii, q_{-i}, q_i)` for `i = 1..n`.
    pub fn standard_family(&self) -> HyperbolicFamily {
        self.standard_family_rank(self.family().n())
    }

    pub fn standard_family_rank(&self, m: usize) -> HyperbolicFamily {
        let a = self.alg();
        let s = &self.shape;
        let pairs = (1..=m as i32)
            .map(|i| HyperbolicPair { e_minus: a.e(-i, -i), e_plus: a.e(i, i), q_minus: s.q_gen(-i), q_plus: s.q_gen(i) })
            .collect();
        HyperbolicFamily { pairs }
    }

    pub fn pair_sum(&self, x: &HyperbolicPair, y: &HyperbolicPair) -> Result<HyperbolicPair> {
        let a = self.alg();
        let ex = a.add(&x.e_minus, &x.e_plus);
        let ey = a.add(&y.e_minus, &y.e_plus);
        if !a.is_zero(&a.mul(&ex, &ey)) || !a.is_zero(&a.mul(&ey, &ex)) {
            return Err(OfaError::Precondition("hyperbolic pairs are not orthogonal".into()));
        }
        let s = &self.shape;
        Ok(HyperbolicPair {
            e_minus: a.add(&x.e_minus, &y.e_minus),
            e_plus: a.add(&x.e_plus, &y.e_plus),
            q_minus: s.add(&x.q_minus, &y.q_minus),
            q_plus: s.add(&x.q_plus, &y.q_plus),
        })
    }

    pub fn validate_pair(&self, p: &HyperbolicPair, rep: &mut Report, tag: &str) {
        let a = self.alg();
        let s = &self.shape;
        let idem = |e: &AlgElem| a.mul(e, e) == *e;
        rep.check(format!("{tag}.idempotents"), idem(&p.e_minus) && idem(&p.e_plus), || a.show(&p.e_plus));
        rep.check(
            format!("{tag}.orthogonal"),
            a.is_zero(&a.mul(&p.e_minus, &p.e_plus)) && a.is_zero(&a.mul(&p.e_plus, &p.e_minus)),
            || a.show(&a.mul(&p.e_minus, &p.e_plus)),
        );
        rep.check(format!("{tag}.involution"), a.inv(&p.e_plus) == p.e_minus, || a.show(&a.inv(&p.e_plus)));
        for (name, q, e) in [("minus", &p.q_minus, &p.e_minus), ("plus", &p.q_plus, &p.e_plus)] {
            let h = s.heis(q);
            rep.check(format!("{tag}.pi_{name}"), h.pi == *e, || a.show(&h.pi));
            rep.check(format!("{tag}.rho_{name}"), a.is_zero(&h.rho), || a.show(&h.rho));
            let qe = s.act_alg(q, e);
            rep.check(format!("{tag}.absorbs_{name}"), qe == *q, || s.show(&qe));
        }
    }

    /// All pair and family invariants, including `e_|i| in R e_|j| R`.
    pub fn validate_family(&self, fam: &HyperbolicFamily) -> Report {
        let a = self.alg();
        let mut rep = Report::new(format!("hyperbolic family of rank {} in {}", fam.rank(), self.family().name()));
        for (k, p) in fam.pairs.iter().enumerate() {
            self.validate_pair(p, &mut rep, &format!("pair{}", k + 1));
        }
        let abs: Vec<AlgElem> = (1..=fam.rank() as i32).map(|i| a.add(fam.e(-i), fam.e(i))).collect();
        for i in 0..abs.len() {
            for j in 0..abs.len() {
                if i != j {
                    rep.check(format!("abs_orthogonal.{}.{}", i + 1, j + 1), a.is_zero(&a.mul(&abs[i], &abs[j])), || {
                        a.show(&a.mul(&abs[i], &abs[j]))
                    });
                }
                rep.check(format!("two_sided_span.{}.{}", i + 1, j + 1), self.in_two_sided_ideal(&abs[i], &abs[j]), || {
                    a.show(&abs[i])
                });
            }
        }
        rep
    }

    /// Whether `x` lies in the two-sided ideal `R y R`.
    pub fn in_two_sided_ideal(&self, x: &AlgElem, y: &AlgElem) -> bool {
        let a = self.alg();
        let basis: Vec<AlgElem> = a.basis().iter().map(|&(i, j)| a.e(i, j)).collect();
        let mut gens: Vec<Vec<El>> = Vec::new();
        for l in &basis {
            let ly = a.mul(l, y);
            if a.is_zero(&ly) {
                continue;
            }
            for r in &basis {
                let g = a.coords(&a.mul(&ly, r));
                if g.iter().any(|&c| c != 0) {
                    gens.push(g);
                }
            }
        }
        let target = a.coords(x);
        if gens.is_empty() {
            return target.iter().all(|&c| c == 0);
        }
        let r = &a.ring;
        let d = a.dim();
        coeff_ring::solve(
            r,
            gens.len(),
            d,
            |c| {
                let mut out = vec![0; d];
                for (k, g) in c.iter().zip(&gens) {
                    if *k != 0 {
                        for (o, v) in out.iter_mut().zip(g) {
                            *o = r.add(*o, r.mul(*k, *v));
                        }
                    }
                }
                out
            },
            &target,
        )
        .is_some()
    }

    /// Elements of the corner `e R f`.
    pub fn corner_elements(&self, e: &AlgElem, f: &AlgElem, cap: usize) -> Result<Vec<AlgElem>> {
        let a = self.alg();
        let gens: Vec<Vec<El>> = a
            .basis()
            .iter()
            .map(|&(i, j)| a.coords(&a.mul(&a.mul(e, &a.e(i, j)), f)))
            .filter(|c| c.iter().any(|&x| x != 0))
            .collect();
        Ok(coeff_ring::span_elements(&a.ring, a.dim(), &gens, cap)?.into_iter().map(|c| a.from_coords(&c)).collect())
    }

    fn decode(&self, h: &Heis, what: &str) -> Result<DeltaElem> {
        self.shape.from_heis(h).ok_or_else(|| OfaError::Structural(format!("{what} left the odd form parameter")))
    }

    /// `T_ij(x)`: `beta = x - inv(x)`, `gamma = q_i x - q_{-j} inv(x) - phi(x)`.
    pub fn transvection_short(&self, fam: &HyperbolicFamily, i: i32, j: i32, x: &AlgElem) -> Result<UnitaryElem> {
        let a = self.alg();
        let s = &self.shape;
        if i == 0 || j == 0 || i == j || i == -j {
            return Err(OfaError::Precondition(format!("T_{{{i},{j}}} needs i, j nonzero and i != +-j")));
        }
        if a.mul(&a.mul(fam.e(i), x), fam.e(j)) != *x {
            return Err(OfaError::Precondition(format!("x is not in e_{i} R e_{j}")));
        }
        let xb = a.inv(x);
        let t1 = s.h_act(&s.heis(fam.q(i)), &a.unital(x.clone(), 0));
        let t2 = s.h_act(&s.heis(fam.q(-j)), &a.unital(xb.clone(), 0));
        let h = s.h_add(&s.h_add(&t1, &s.h_neg(&t2)), &s.h_neg(&s.h_phi(x)));
        Ok(UnitaryElem { beta: a.sub(x, &xb), gamma: self.decode(&h, "T_ij")? })
    }

    /// `(sum_k e_|k|) pi(u) = 0`.
    pub fn delta0_member(&self, fam: &HyperbolicFamily, u: &DeltaElem) -> bool {
        let a = self.alg();
        let refs: Vec<&AlgElem> = fam.indices().iter().map(|&k| fam.e(k)).collect();
        let e = add_all(self, &refs);
        a.is_zero(&a.mul(&e, &self.shape.pi(u)))
    }

    /// `T_i(u)` for `u` in `Delta^0 e_i`.
    pub fn transvection_ultrashort(&self, fam: &HyperbolicFamily, i: i32, u: &DeltaElem) -> Result<UnitaryElem> {
        let a = self.alg();
        let s = &self.shape;
        if i == 0 || !self.delta0_member(fam, u) || s.act_alg(u, fam.e(i)) != *u {
            return Err(OfaError::Precondition(format!("u is not in Delta^0 e_{i}")));
        }
        let hu = s.heis(u);
        let pib = a.inv(&hu.pi);
        let beta = a.sub(&a.add(&hu.rho, &hu.pi), &pib);
        let t = s.h_act(&s.heis(fam.q(-i)), &a.unital(a.sub(&hu.rho, &pib), 0));
        let h = s.h_add(&s.h_add(&hu, &s.h_neg(&s.h_phi(&a.add(&hu.rho, &hu.pi)))), &t);
        Ok(UnitaryElem { beta, gamma: self.decode(&h, "T_i")? })
    }

    /// Inverse of `x` in the corner ring `e R e` with identity `e`.
    pub fn corner_inverse(&self, e: &AlgElem, x: &AlgElem) -> Option<AlgElem> {
        let a = self.alg();
        let d = a.dim();
        let target: Vec<El> = a.coords(e).into_iter().chain(a.coords(e)).collect();
        let y = coeff_ring::solve(
            &a.ring,
            d,
            2 * d,
            |c| {
                let y = a.mul(&a.mul(e, &a.from_coords(c)), e);
                a.coords(&a.mul(x, &y)).into_iter().chain(a.coords(&a.mul(&y, x))).collect()
            },
            &target,
        )?;
        Some(a.mul(&a.mul(e, &a.from_coords(&y)), e))
    }

    /// `D_i(a)`: `beta = a + inv(a)^-1 - e_|i|`.
    pub fn dilation(&self, fam: &HyperbolicFamily, i: i32, x: &AlgElem) -> Result<UnitaryElem> {
        let a = self.alg();
        let s = &self.shape;
        let (ei, emi) = (fam.e(i), fam.e(-i));
        if a.mul(&a.mul(ei, x), ei) != *x {
            return Err(OfaError::Precondition(format!("a is not in e_{i} R e_{i}")));
        }
        let xinv = self.corner_inverse(ei, x).ok_or_else(|| OfaError::Precondition("a is not a unit of the corner".into()))?;
        let bar_inv = a.inv(&xinv);
        let beta = a.sub(&a.add(x, &bar_inv), &a.add(ei, emi));
        let t1 = s.h_act(&s.heis(fam.q(-i)), &a.unital(a.sub(&bar_inv, emi), 0));
        let t2 = s.h_act(&s.heis(fam.q(i)), &a.unital(a.sub(x, ei), 0));
        let h = s.h_add(&s.h_add(&t1, &t2), &s.h_neg(&s.h_phi(&a.sub(x, ei))));
        Ok(UnitaryElem { beta, gamma: self.decode(&h, "D_i")? })
    }

    /// `e_0 = 1 - sum e_|i|` in `R x| K`.
    pub fn complement_idempotent(&self, fam: &HyperbolicFamily) -> Unital {
        let a = self.alg();
        let refs: Vec<&AlgElem> = fam.indices().iter().map(|&k| fam.e(k)).collect();
        a.unital(a.neg(&add_all(self, &refs)), a.ring.one())
    }

    /// Elements `D_0(g)`: members of `U(R, Delta)` with `beta` in the corner `e_0 R e_0`.
    /// Empty when `e_0 R e_0 = 0`.
    pub fn dilations_zero(&self, fam: &HyperbolicFamily, cap: usize) -> Result<Vec<UnitaryElem>> {
        let a = self.alg();
        let e0 = self.complement_idempotent(fam);
        let corner = |x: &AlgElem| a.u_mul(&a.u_mul(&e0, &a.unital(x.clone(), 0)), &e0).body;
        let gens: Vec<Vec<El>> = a
            .basis()
            .iter()
            .map(|&(i, j)| a.coords(&corner(&a.e(i, j))))
            .filter(|c| c.iter().any(|&x| x != 0))
            .collect();
        if gens.is_empty() {
            return Ok(Vec::new());
        }
        let elems = coeff_ring::span_elements(&a.ring, a.dim(), &gens, cap)?;
        Ok(elems.iter().filter_map(|c| self.from_beta(&a.from_coords(c))).collect())
    }

    /// `Delta^0 e_i`, enumerated through `(pi, rho)` in `(e_0 R e_i, inv(e_i) R e_i)`.
    pub fn delta0_corner(&self, fam: &HyperbolicFamily, i: i32, cap: usize) -> Result<Vec<DeltaElem>> {
        let a = self.alg();
        let e0 = self.complement_idempotent(fam);
        let ei = fam.e(i);
        let pis: Vec<AlgElem> = {
            let gens: Vec<Vec<El>> = a
                .basis()
                .iter()
                .map(|&(k, l)| {
                    let x = a.u_mul(&e0, &a.unital(a.e(k, l), 0)).body;
                    a.coords(&a.mul(&x, ei))
                })
                .filter(|c| c.iter().any(|&x| x != 0))
                .collect();
            coeff_ring::span_elements(&a.ring, a.dim(), &gens, cap)?.into_iter().map(|c| a.from_coords(&c)).collect()
        };
        let rhos = self.corner_elements(fam.e(-i), ei, cap)?;
        if pis.len().saturating_mul(rhos.len()) > cap {
            return Err(OfaError::Capacity {
                what: "Delta^0 e_i candidates".into(),
                size: (pis.len() * rhos.len()) as u128,
                cap: cap as u128,
            });
        }
        let s = &self.shape;
        let mut out = Vec::new();
        for pi in &pis {
            for rho in &rhos {
                if let Some(u) = s.from_heis(&Heis { pi: pi.clone(), rho: rho.clone() }) {
                    if self.delta0_member(fam, &u) && s.act_alg(&u, ei) == u {
                        out.push(u);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Units of the corner ring `e_i R e_i`.
    pub fn corner_units(&self, fam: &HyperbolicFamily, i: i32, cap: usize) -> Result<Vec<AlgElem>> {
        let ei = fam.e(i);
        Ok(self.corner_elements(ei, ei, cap)?.into_iter().filter(|x| self.corner_inverse(ei, x).is_some()).collect())
    }

    /// Generators `D_i` (`0 <= i <= m`), `T_ij` (`i < j`), `T_j` (`j > 0`) of the parabolic subgroup, over all parameters.
    pub fn parabolic_generators(&self, fam: &HyperbolicFamily, cap: usize) -> Result<Vec<(String, UnitaryElem)>> {
        let a = self.alg();
        let mut out = Vec::new();
        for g in self.dilations_zero(fam, cap)? {
            out.push(("D_0".to_string(), g));
        }
        let m = fam.rank() as i32;
        for i in 1..=m {
            for x in self.corner_units(fam, i, cap)? {
                out.push((format!("D_{i}"), self.dilation(fam, i, &x)?));
            }
        }
        let idx = fam.indices();
        for &i in &idx {
            for &j in &idx {
                if i < j && i != -j {
                    for x in self.corner_elements(fam.e(i), fam.e(j), cap)? {
                        if !a.is_zero(&x) {
                            out.push((format!("T_{{{i},{j}}}"), self.transvection_short(fam, i, j, &x)?));
                        }
                    }
                }
            }
        }
        for j in 1..=m {
            for u in self.delta0_corner(fam, j, cap)? {
                if u != self.shape.zero() {
                    out.push((format!("T_{j}"), self.transvection_ultrashort(fam, j, &u)?));
                }
            }
        }
        Ok(out)
    }

    /// The subgroup generated by all parabolic generators of the family.
    pub fn parabolic_p(&self, fam: &HyperbolicFamily, cap: usize) -> Result<Vec<UnitaryElem>> {
        let gens: Vec<UnitaryElem> = self.parabolic_generators(fam, cap)?.into_iter().map(|(_, g)| g).collect();
        self.generate_subgroup(&gens, cap)
    }
}

impl UnitaryGroup {
    /// Membership of `T_ij`, `T_i`, `D_i` over every parameter, additivity of
    /// each `T_ij` and multiplicativity of each `D_i`, all exhaustive.
    pub fn elementary_check(&self, fam: &HyperbolicFamily, cap: usize) -> Result<Report> {
        let a = self.alg();
        let mut rep = Report::new(format!("elementary generators of {} over a rank {} family", self.family().name(), fam.rank()));
        let idx = fam.indices();
        for &i in &idx {
            for &j in &idx {
                if i == j || i == -j {
                    continue;
                }
                let xs = self.corner_elements(fam.e(i), fam.e(j), cap)?;
                let ts = xs.iter().map(|x| self.transvection_short(fam, i, j, x)).collect::<Result<Vec<_>>>()?;
                let n = xs.len() as u64;
                rep.check_all(format!("T_{{{i},{j}}}.member"), n, |k| (!self.contains(&ts[k as usize])).then(|| a.show(&xs[k as usize])));
                rep.check_all(format!("T_{{{i},{j}}}.additive"), n * n, |k| {
                    let (p, q) = ((k / n) as usize, (k % n) as usize);
                    let ok = self.transvection_short(fam, i, j, &a.add(&xs[p], &xs[q])).is_ok_and(|t| self.mul(&ts[p], &ts[q]) == t);
                    (!ok).then(|| format!("{} + {}", a.show(&xs[p]), a.show(&xs[q])))
                });
            }
        }
        for &i in &idx {
            let ei = fam.e(i);
            let us = self.corner_units(fam, i, cap)?;
            let ds = us.iter().map(|x| self.dilation(fam, i, x)).collect::<Result<Vec<_>>>()?;
            let n = us.len() as u64;
            rep.check_all(format!("D_{i}.member"), n, |k| (!self.contains(&ds[k as usize])).then(|| a.show(&us[k as usize])));
            rep.check_all(format!("D_{i}.multiplicative"), n * n, |k| {
                let (p, q) = ((k / n) as usize, (k % n) as usize);
                let prod = a.mul(&us[p], &us[q]);
                let ok = a.mul(&a.mul(ei, &prod), ei) == prod && self.dilation(fam, i, &prod).is_ok_and(|d| self.mul(&ds[p], &ds[q]) == d);
                (!ok).then(|| format!("{} * {}", a.show(&us[p]), a.show(&us[q])))
            });
            let vs = self.delta0_corner(fam, i, cap)?;
            let tv = vs.iter().map(|u| self.transvection_ultrashort(fam, i, u)).collect::<Result<Vec<_>>>()?;
            rep.check_all(format!("T_{i}.member"), tv.len() as u64, |k| {
                (!self.contains(&tv[k as usize])).then(|| self.shape.show(&vs[k as usize]))
            });
        }
        let d0 = self.dilations_zero(fam, cap)?;
        rep.check_all("D_0.member", d0.len() as u64, |k| (!self.contains(&d0[k as usize])).then(|| a.show(&d0[k as usize].beta)));
        Ok(rep)
    }
}
