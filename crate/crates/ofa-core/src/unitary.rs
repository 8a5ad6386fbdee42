//! Unitary groups of the split odd form algebras.
//!
//! An element is `(beta, gamma)` with `alpha = beta + 1` in `R x| K`. Since the
//! odd form parameters are special, `gamma` is the unique element of `Delta`
//! with `(pi, rho) = (beta, inv(beta))`, so enumeration searches over `beta`
//! only, column by column.

use std::collections::{BTreeSet, VecDeque};

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coeff_ring::{El, Ring};
use crate::error::{structural, OfaError, Result};
use crate::form_ring::{self, AlgElem, Family, InvAlgebra, Unital};
use crate::odd_form_param::{DeltaElem, DeltaShape, Heis};
use crate::report::Report;

mod classical;
mod elementary;
mod orth;
#[cfg(test)]
mod tests;

pub use classical::{ClassicalPair, Sigma};
pub use elementary::{HyperbolicFamily, HyperbolicPair};
pub use orth::{so3_enumerate, so_odd_split, OddEmbedding};

pub const GROUP_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitaryElem {
    pub beta: AlgElem,
    pub gamma: DeltaElem,
}

#[derive(Clone, Debug)]
pub struct UnitaryGroup {
    pub shape: DeltaShape,
}

impl UnitaryGroup {
    pub fn new(family: Family, ring: &Ring) -> Result<UnitaryGroup> {
        Ok(UnitaryGroup { shape: DeltaShape::new(&InvAlgebra::new(family, ring)?) })
    }

    pub fn alg(&self) -> &InvAlgebra {
        &self.shape.alg
    }

    pub fn ring(&self) -> &Ring {
        &self.shape.alg.ring
    }

    pub fn family(&self) -> Family {
        self.shape.alg.family
    }

    pub fn alpha(&self, g: &UnitaryElem) -> Unital {
        self.alg().unital(g.beta.clone(), self.ring().one())
    }

    pub fn identity(&self) -> UnitaryElem {
        UnitaryElem { beta: self.alg().zero(), gamma: self.shape.zero() }
    }

    fn unitary_alpha(&self, beta: &AlgElem) -> bool {
        let a = self.alg();
        let alpha = a.unital(beta.clone(), self.ring().one());
        let abar = a.u_inv(&alpha);
        let one = a.u_one();
        a.u_mul(&alpha, &abar) == one && a.u_mul(&abar, &alpha) == one
    }

    /// The three membership equations.
    pub fn is_member(&self, beta: &AlgElem, gamma: &DeltaElem) -> bool {
        let a = self.alg();
        a.is_member(beta)
            && self.unitary_alpha(beta)
            && self.shape.heis(gamma) == Heis { pi: beta.clone(), rho: a.inv(beta) }
    }

    pub fn contains(&self, g: &UnitaryElem) -> bool {
        self.is_member(&g.beta, &g.gamma)
    }

    /// The element with the given `beta`, if there is one.
    pub fn from_beta(&self, beta: &AlgElem) -> Option<UnitaryElem> {
        let a = self.alg();
        if !a.is_member(beta) || !self.unitary_alpha(beta) {
            return None;
        }
        let gamma = self.shape.from_heis(&Heis { pi: beta.clone(), rho: a.inv(beta) })?;
        Some(UnitaryElem { beta: beta.clone(), gamma })
    }

    /// `beta(gh) = beta(g) beta(h) + beta(g) + beta(h)`, `gamma(gh) = gamma(g) alpha(h) + gamma(h)`.
    pub fn mul(&self, g: &UnitaryElem, h: &UnitaryElem) -> UnitaryElem {
        let s = &self.shape;
        let beta = self.alg().u_mul(&self.alpha(g), &self.alpha(h)).body;
        let prod = s.h_add(&s.h_act(&s.heis(&g.gamma), &self.alpha(h)), &s.heis(&h.gamma));
        let gamma = s.from_heis(&prod).expect("unitary group is closed under products");
        UnitaryElem { beta, gamma }
    }

    pub fn inv(&self, g: &UnitaryElem) -> UnitaryElem {
        let a = self.alg();
        let beta = a.inv(&g.beta);
        let gamma = self
            .shape
            .from_heis(&Heis { pi: beta.clone(), rho: g.beta.clone() })
            .expect("unitary group is closed under inverses");
        UnitaryElem { beta, gamma }
    }

    /// Entry `(a, c)` of `inv(beta) beta + beta + inv(beta)`; depends on columns `-a` and `c` only.
    fn left_unitarity_entry(&self, beta: &AlgElem, a_lab: i32, c_lab: i32) -> El {
        let alg = self.alg();
        let r = self.ring();
        let mut s = 0;
        if alg.in_support(a_lab, c_lab) {
            s = alg.get(beta, a_lab, c_lab);
            let bar = alg.get(beta, -c_lab, -a_lab);
            let bar = if alg.inv_sign(-c_lab, -a_lab) == 1 { bar } else { r.neg(bar) };
            s = r.add(s, bar);
        }
        for &b in alg.labels() {
            if !alg.in_support(-b, -a_lab) || !alg.in_support(b, c_lab) {
                continue;
            }
            let x = alg.get(beta, -b, -a_lab);
            let y = alg.get(beta, b, c_lab);
            if x == 0 || y == 0 {
                continue;
            }
            let x = if alg.inv_sign(-b, -a_lab) == 1 { x } else { r.neg(x) };
            s = r.add(s, r.scale(alg.weight(b), r.mul(x, y)));
        }
        s
    }

    /// Every element, sorted by `beta`.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<UnitaryElem>> {
        let alg = self.alg();
        let r = self.ring();
        let labels = alg.labels().to_vec();
        // columns in the order 0, 1, -1, 2, -2, ...
        let mut order: Vec<i32> = Vec::new();
        if labels.contains(&0) {
            order.push(0);
        }
        for k in 1..=alg.family.n() as i32 {
            order.push(k);
            order.push(-k);
        }
        let q = r.size();
        let col_rows: Vec<Vec<i32>> =
            order.iter().map(|&c| labels.iter().copied().filter(|&b| alg.in_support(b, c)).collect()).collect();
        for rows in &col_rows {
            let total = (q as u128).checked_pow(rows.len() as u32).unwrap_or(u128::MAX);
            if total > 1 << 24 {
                return Err(OfaError::Capacity { what: "column candidates".into(), size: total, cap: 1 << 24 });
            }
        }
        let candidates: Vec<Vec<Vec<El>>> = col_rows
            .iter()
            .map(|rows| {
                let total = q.pow(rows.len() as u32);
                (0..total)
                    .map(|mut idx| {
                        rows.iter()
                            .map(|_| {
                                let v = (idx % q) as El;
                                idx /= q;
                                v
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let search = Search { g: self, order: &order, rows: &col_rows, cands: &candidates };
        let found: Vec<Vec<UnitaryElem>> = candidates[0]
            .par_iter()
            .map(|first| {
                let mut beta = alg.zero();
                search.place(&mut beta, 0, first);
                let mut level = Vec::new();
                if search.consistent(&beta, 0) {
                    search.dfs(&mut beta, 1, &mut level);
                }
                level
            })
            .collect();
        let mut all: Vec<UnitaryElem> = found.into_iter().flatten().collect();
        if all.len() > cap {
            return Err(OfaError::Capacity { what: "unitary group".into(), size: all.len() as u128, cap: cap as u128 });
        }
        all.sort();
        Ok(all)
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.enumerate(GROUP_CAP)?.len())
    }

    /// Block determinants of `alpha` for the linear family.
    pub fn det_linear(&self, g: &UnitaryElem) -> Result<(El, El)> {
        let Family::Lin(n) = self.family() else {
            return structural("det is defined for the linear family");
        };
        let a = self.alg();
        let r = self.ring();
        let block = |sign: i32| -> Vec<El> {
            let mut m = Vec::with_capacity(n * n);
            for i in 1..=n as i32 {
                for j in 1..=n as i32 {
                    let (i, j) = (sign * i, sign * j);
                    let v = a.get(&g.beta, i, j);
                    m.push(if i == j { r.add(v, r.one()) } else { v });
                }
            }
            m
        };
        Ok((form_ring::det(r, n, &block(1)), form_ring::det(r, n, &block(-1))))
    }

    pub fn sl_member(&self, g: &UnitaryElem) -> Result<bool> {
        let one = self.ring().one();
        Ok(self.det_linear(g)? == (one, one))
    }

    /// `alpha` as a square matrix; the family must be unital.
    pub fn alpha_matrix(&self, g: &UnitaryElem) -> Result<Vec<El>> {
        if self.family().is_odd() {
            return structural("alpha is a matrix only for the unital families");
        }
        Ok(self.alg().add(&g.beta, &self.alg().diag_sum()))
    }

    /// `g a g^-1 = alpha a inv(alpha)`.
    pub fn act_alg(&self, g: &UnitaryElem, x: &AlgElem) -> AlgElem {
        let a = self.alg();
        let alpha = self.alpha(g);
        let left = a.u_mul(&alpha, &a.unital(x.clone(), 0));
        a.u_mul(&left, &a.u_inv(&alpha)).body
    }

    /// `(gamma(g) pi(u) + u) inv(alpha)`.
    pub fn act_delta(&self, g: &UnitaryElem, u: &DeltaElem) -> DeltaElem {
        let s = &self.shape;
        let a = self.alg();
        let hu = s.heis(u);
        let moved = s.h_act(&s.heis(&g.gamma), &a.unital(hu.pi.clone(), 0));
        let h = s.h_act(&s.h_add(&moved, &hu), &a.u_inv(&self.alpha(g)));
        s.from_heis(&h).expect("conjugation preserves the odd form parameter")
    }

    /// Group law checks on an enumerated group: closure and inverses on all
    /// elements, associativity on sampled triples.
    pub fn group_check(&self, elems: &[UnitaryElem], samples: u64, seed: u64) -> Report {
        let mut rep = Report::new(format!("unitary group of {} ({} elements)", self.family().name(), elems.len()));
        let set: BTreeSet<&AlgElem> = elems.iter().map(|g| &g.beta).collect();
        let id = self.identity();
        rep.check("identity_member", elems.contains(&id), || "identity missing".into());
        rep.check_all("members", elems.len() as u64, |i| {
            let g = &elems[i as usize];
            (!self.contains(g)).then(|| self.alg().show(&g.beta))
        });
        rep.check_all("inverse_exact", elems.len() as u64, |i| {
            let g = &elems[i as usize];
            let h = self.inv(g);
            let ok = set.contains(&h.beta) && self.mul(g, &h) == id && self.mul(&h, g) == id;
            (!ok).then(|| self.alg().show(&g.beta))
        });
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = elems.len();
        let triples: Vec<(usize, usize, usize)> = if n == 0 {
            Vec::new()
        } else {
            (0..samples).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))).collect()
        };
        rep.check_all("closed_associative_sampled", triples.len() as u64, |k| {
            let (i, j, l) = triples[k as usize];
            let (g, h, f) = (&elems[i], &elems[j], &elems[l]);
            let gh = self.mul(g, h);
            let ok = set.contains(&gh.beta) && self.mul(&gh, f) == self.mul(g, &self.mul(h, f));
            (!ok).then(|| format!("indices {i}, {j}, {l}"))
        });
        rep
    }

    /// Breadth-first closure of `gens` under products (inverses come for free in a finite group).
    pub fn generate_subgroup(&self, gens: &[UnitaryElem], cap: usize) -> Result<Vec<UnitaryElem>> {
        let mut seen: BTreeSet<UnitaryElem> = BTreeSet::new();
        let id = self.identity();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        let gens: Vec<UnitaryElem> = gens.iter().flat_map(|g| [g.clone(), self.inv(g)]).collect();
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = self.mul(&x, g);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(OfaError::Capacity {
                            what: "generated subgroup".into(),
                            size: seen.len() as u128 + 1,
                            cap: cap as u128,
                        });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    pub fn show(&self, g: &UnitaryElem) -> String {
        format!("beta = {}; gamma = {}", self.alg().show(&g.beta), self.shape.show(&g.gamma))
    }

    pub fn to_json(&self, g: &UnitaryElem) -> serde_json::Value {
        serde_json::json!({"beta": self.alg().to_json(&g.beta), "gamma": self.shape.to_json(&g.gamma)})
    }
}

struct Search<'a> {
    g: &'a UnitaryGroup,
    order: &'a [i32],
    rows: &'a [Vec<i32>],
    cands: &'a [Vec<Vec<El>>],
}

impl Search<'_> {
    fn place(&self, beta: &mut AlgElem, level: usize, col: &[El]) {
        let alg = self.g.alg();
        let c = self.order[level];
        for (&b, &v) in self.rows[level].iter().zip(col) {
            alg.set(beta, b, c, v);
        }
    }

    /// Unitarity entries whose two columns are both placed, one of them at `level`.
    fn consistent(&self, beta: &AlgElem, level: usize) -> bool {
        let t = self.order[level];
        let placed = &self.order[..=level];
        placed.iter().all(|&c| {
            self.g.left_unitarity_entry(beta, -t, c) == 0 && self.g.left_unitarity_entry(beta, -c, t) == 0
        })
    }

    fn dfs(&self, beta: &mut AlgElem, level: usize, out: &mut Vec<UnitaryElem>) {
        if level == self.order.len() {
            if let Some(g) = self.g.from_beta(beta) {
                out.push(g);
            }
            return;
        }
        for col in &self.cands[level] {
            self.place(beta, level, col);
            if self.consistent(beta, level) {
                self.dfs(beta, level + 1, out);
            }
        }
        let zero = vec![0; self.rows[level].len()];
        self.place(beta, level, &zero);
    }
}
