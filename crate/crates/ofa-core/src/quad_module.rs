//! Classical quadratic algebras, quadratic modules over them, Heisenberg
//! groups with odd form parameters, and the two odd form rings attached to a
//! quadratic module.
//!
//! Elements of `R` and `L` are stored as pairs. The linear type uses both
//! slots (`K x K`); the symplectic and orthogonal types use the first slot
//! only. `A` is always `K` (identically zero for the symplectic type).
//! Modules are free over `K` with a labelled basis; for the linear type each
//! basis vector also carries the side of `K x K` it lives on.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coeff_ring::{El, Ring, RingHom};
use crate::error::{structural, OfaError, Result};
use crate::form_ring::{self, Family};
use crate::report::Report;

mod canonical;
mod hdet;
mod naive;
#[cfg(test)]
mod tests;

pub use canonical::{Canonical, CanonicalMorphism, SHeis, ThetaNf};
pub use hdet::{gram_det, hdet, hdet_poly, semiregular, Poly};
pub use naive::{NaiveRing, TElem, XiElem};

pub type Pair = [El; 2];

pub const MODULE_ENUM_CAP: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadType {
    Linear,
    Symplectic,
    Orthogonal,
}

impl QuadType {
    pub fn of_family(f: Family) -> QuadType {
        match f {
            Family::Lin(_) => QuadType::Linear,
            Family::Symp(_) => QuadType::Symplectic,
            Family::OrthEven(_) | Family::OrthOdd(_) => QuadType::Orthogonal,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            QuadType::Linear => "linear",
            QuadType::Symplectic => "symplectic",
            QuadType::Orthogonal => "orthogonal",
        }
    }
}

/// The classical even quadratic algebra `(R, L, A)` of a given type over `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadRing {
    pub ty: QuadType,
    pub ring: Ring,
}

impl QuadRing {
    pub fn new(ty: QuadType, ring: &Ring) -> QuadRing {
        QuadRing { ty, ring: ring.clone() }
    }

    fn linear(&self) -> bool {
        self.ty == QuadType::Linear
    }

    /// Scalar `k` as an element of `R` (or `L`).
    pub fn scalar(&self, k: El) -> Pair {
        if self.linear() {
            [k, k]
        } else {
            [k, 0]
        }
    }

    /// All elements of `R`; `L` has the same underlying set.
    pub fn r_elements(&self) -> Vec<Pair> {
        let r = &self.ring;
        if self.linear() {
            r.elements().flat_map(|a| r.elements().map(move |b| [a, b])).collect()
        } else {
            r.elements().map(|a| [a, 0]).collect()
        }
    }

    pub fn a_elements(&self) -> Vec<El> {
        match self.ty {
            QuadType::Symplectic => vec![0],
            _ => self.ring.elements().collect(),
        }
    }

    pub fn add(&self, x: Pair, y: Pair) -> Pair {
        [self.ring.add(x[0], y[0]), self.ring.add(x[1], y[1])]
    }

    pub fn sub(&self, x: Pair, y: Pair) -> Pair {
        [self.ring.sub(x[0], y[0]), self.ring.sub(x[1], y[1])]
    }

    pub fn neg(&self, x: Pair) -> Pair {
        [self.ring.neg(x[0]), self.ring.neg(x[1])]
    }

    pub fn mul(&self, x: Pair, y: Pair) -> Pair {
        [self.ring.mul(x[0], y[0]), self.ring.mul(x[1], y[1])]
    }

    /// Multiplication by a scalar of `K`.
    pub fn scale(&self, k: El, x: Pair) -> Pair {
        [self.ring.mul(k, x[0]), self.ring.mul(k, x[1])]
    }

    /// Involution of `R`: the swap for the linear type, trivial otherwise.
    pub fn r_inv(&self, x: Pair) -> Pair {
        if self.linear() {
            [x[1], x[0]]
        } else {
            x
        }
    }

    /// Involution of `L`.
    pub fn l_inv(&self, l: Pair) -> Pair {
        match self.ty {
            QuadType::Linear => [l[1], l[0]],
            QuadType::Symplectic => [self.ring.neg(l[0]), 0],
            QuadType::Orthogonal => l,
        }
    }

    /// `r^op l r'`.
    pub fn bimod(&self, r: Pair, l: Pair, r2: Pair) -> Pair {
        self.mul(self.mul(self.r_inv(r), l), r2)
    }

    pub fn phi(&self, l: Pair) -> El {
        match self.ty {
            QuadType::Linear => self.ring.add(l[0], l[1]),
            QuadType::Symplectic => 0,
            QuadType::Orthogonal => l[0],
        }
    }

    pub fn tr(&self, a: El) -> Pair {
        match self.ty {
            QuadType::Linear => [a, a],
            QuadType::Symplectic => [0, 0],
            QuadType::Orthogonal => [self.ring.scale(2, a), 0],
        }
    }

    /// Right action `a . r` of the multiplicative monoid of `R` on `A`.
    pub fn a_act(&self, a: El, r: Pair) -> El {
        let k = &self.ring;
        match self.ty {
            QuadType::Linear => k.mul(k.mul(r[0], a), r[1]),
            QuadType::Symplectic => 0,
            QuadType::Orthogonal => k.mul(a, k.mul(r[0], r[0])),
        }
    }

    /// The quadratic ring axioms on `samples` random triples, plus evenness.
    pub fn axioms_check(&self, samples: u64, seed: u64) -> Report {
        let mut rep = Report::new(format!("{} quadratic algebra over {:?}", self.ty.name(), self.ring.spec()));
        let rs = self.r_elements();
        let aa = self.a_elements();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let triples: Vec<(Pair, Pair, Pair, El, Pair)> = (0..samples)
            .map(|_| {
                let pick = |rng: &mut ChaCha8Rng| rs[rng.gen_range(0..rs.len())];
                (pick(&mut rng), pick(&mut rng), pick(&mut rng), aa[rng.gen_range(0..aa.len())], pick(&mut rng))
            })
            .collect();
        let n = triples.len() as u64;
        let at = |i: u64| triples[i as usize];
        let k = &self.ring;
        rep.check_all("inv_inv", n, |i| {
            let (l, ..) = at(i);
            (self.l_inv(self.l_inv(l)) != l).then(|| format!("l = {l:?}"))
        });
        rep.check_all("inv_bimodule", n, |i| {
            let (l, r, r2, ..) = at(i);
            (self.l_inv(self.bimod(r, l, r2)) != self.bimod(r2, self.l_inv(l), r)).then(|| format!("{l:?} {r:?} {r2:?}"))
        });
        rep.check_all("phi_equivariant", n, |i| {
            let (l, r, ..) = at(i);
            (self.phi(self.bimod(r, l, r)) != self.a_act(self.phi(l), r)).then(|| format!("{l:?} {r:?}"))
        });
        rep.check_all("tr_equivariant", n, |i| {
            let (_, r, _, a, _) = at(i);
            (self.tr(self.a_act(a, r)) != self.bimod(r, self.tr(a), r)).then(|| format!("{a} {r:?}"))
        });
        rep.check_all("tr_phi", n, |i| {
            let (l, ..) = at(i);
            (self.tr(self.phi(l)) != self.add(l, self.l_inv(l))).then(|| format!("{l:?}"))
        });
        rep.check_all("tr_hermitian", n, |i| {
            let (_, _, _, a, _) = at(i);
            (self.l_inv(self.tr(a)) != self.tr(a)).then(|| format!("{a}"))
        });
        rep.check_all("phi_inv", n, |i| {
            let (l, ..) = at(i);
            (self.phi(l) != self.phi(self.l_inv(l))).then(|| format!("{l:?}"))
        });
        rep.check_all("act_additive", n, |i| {
            let (_, r, r2, a, _) = at(i);
            let lhs = self.a_act(a, self.add(r, r2));
            let mid = self.phi(self.bimod(r, self.tr(a), r2));
            let rhs = k.add(k.add(self.a_act(a, r), mid), self.a_act(a, r2));
            (lhs != rhs).then(|| format!("{a} {r:?} {r2:?}"))
        });
        rep.check_all("phi_tr_is_two", n, |i| {
            let (_, _, _, a, _) = at(i);
            (self.phi(self.tr(a)) != k.scale(2, a)).then(|| format!("{a}"))
        });
        let mut images: Vec<El> = rs.iter().map(|&l| self.phi(l)).collect();
        images.sort();
        images.dedup();
        rep.check("phi_surjective", images == aa, || format!("image {images:?}"));
        rep
    }
}

/// A quadratic module, free over `K` on labelled basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadModule {
    pub qr: QuadRing,
    pub labels: Vec<i32>,
    /// Side of `K x K` for each basis vector (linear type); zero otherwise.
    pub sides: Vec<usize>,
    /// `B(e_i, e_j)`, row-major.
    pub gram: Vec<Pair>,
    /// `q(e_i)`.
    pub q: Vec<El>,
}

/// Element `(m, l)` of the Heisenberg group of a module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeisElem {
    pub m: Vec<El>,
    pub l: Pair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Min,
    Max,
}

fn side_of(ty: QuadType, label: i32) -> usize {
    usize::from(ty == QuadType::Linear && label > 0)
}

impl QuadModule {
    pub fn from_tables(ty: QuadType, ring: &Ring, labels: Vec<i32>, gram: Vec<Pair>, q: Vec<El>) -> Result<QuadModule> {
        let r = labels.len();
        if gram.len() != r * r || q.len() != r {
            return structural(format!("tables do not match rank {r}"));
        }
        let sides = labels.iter().map(|&i| side_of(ty, i)).collect();
        let m = QuadModule { qr: QuadRing::new(ty, ring), labels, sides, gram, q };
        let rep = m.validate();
        if !rep.passed() {
            let bad: Vec<String> = rep.failures().iter().map(|c| c.name.clone()).collect();
            return structural(format!("not a quadratic module: {}", bad.join(", ")));
        }
        Ok(m)
    }

    pub fn ring(&self) -> &Ring {
        &self.qr.ring
    }

    pub fn ty(&self) -> QuadType {
        self.qr.ty
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn pos(&self, label: i32) -> usize {
        self.labels.iter().position(|&i| i == label).unwrap_or_else(|| panic!("no basis vector {label}"))
    }

    pub fn g(&self, a: usize, b: usize) -> Pair {
        self.gram[a * self.rank() + b]
    }

    pub fn zero(&self) -> Vec<El> {
        vec![0; self.rank()]
    }

    pub fn basis_vec(&self, a: usize) -> Vec<El> {
        let mut v = self.zero();
        v[a] = self.ring().one();
        v
    }

    pub fn m_add(&self, x: &[El], y: &[El]) -> Vec<El> {
        x.iter().zip(y).map(|(a, b)| self.ring().add(*a, *b)).collect()
    }

    pub fn m_neg(&self, x: &[El]) -> Vec<El> {
        x.iter().map(|a| self.ring().neg(*a)).collect()
    }

    /// `m . r` for `r` in `R`.
    pub fn m_act(&self, x: &[El], r: Pair) -> Vec<El> {
        let k = self.ring();
        x.iter().zip(&self.sides).map(|(&a, &s)| k.mul(a, if self.qr.linear() { r[s] } else { r[0] })).collect()
    }

    pub fn b(&self, x: &[El], y: &[El]) -> Pair {
        let k = self.ring();
        let mut acc = [0, 0];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (c, &yc) in y.iter().enumerate() {
                if yc != 0 {
                    acc = self.qr.add(acc, self.qr.scale(k.mul(xa, yc), self.g(a, c)));
                }
            }
        }
        acc
    }

    pub fn qv(&self, x: &[El]) -> El {
        let k = self.ring();
        let mut acc = 0;
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            acc = k.add(acc, k.mul(k.mul(xa, xa), self.q[a]));
            for c in a + 1..self.rank() {
                if x[c] != 0 {
                    acc = k.add(acc, k.mul(k.mul(xa, x[c]), self.qr.phi(self.g(a, c))));
                }
            }
        }
        acc
    }

    /// All module elements, in little-endian coordinate order.
    pub fn elements(&self, cap: u64) -> Result<Vec<Vec<El>>> {
        let q = self.ring().size();
        let total = (q as u128).checked_pow(self.rank() as u32).unwrap_or(u128::MAX);
        if total > cap as u128 {
            return Err(OfaError::Capacity { what: "module".into(), size: total, cap: cap as u128 });
        }
        Ok((0..total as u64).map(|c| digits(c, q, self.rank())).collect())
    }

    /// Hermitian symmetry, `tr q = B` on the diagonal, linear-type side
    /// constraints, and the quadratic expansion on sampled pairs.
    pub fn validate(&self) -> Report {
        let mut rep = Report::new("quadratic module");
        let r = self.rank();
        let qr = &self.qr;
        rep.check_all("hermitian", (r * r) as u64, |k| {
            let (a, b) = (k as usize / r, k as usize % r);
            (self.g(a, b) != qr.l_inv(self.g(b, a))).then(|| format!("B(e{}, e{})", self.labels[a], self.labels[b]))
        });
        rep.check_all("tr_q_is_b", r as u64, |a| {
            let a = a as usize;
            (qr.tr(self.q[a]) != self.g(a, a)).then(|| format!("e{}", self.labels[a]))
        });
        if qr.linear() {
            let idem = |s: usize| if s == 0 { [1, 0] } else { [0, 1] };
            rep.check_all("sides_respected", (r * r) as u64, |k| {
                let (a, b) = (k as usize / r, k as usize % r);
                let g = self.g(a, b);
                (qr.bimod(idem(self.sides[a]), g, idem(self.sides[b])) != g)
                    .then(|| format!("B(e{}, e{})", self.labels[a], self.labels[b]))
            });
            rep.check_all("q_respects_sides", r as u64, |a| {
                let a = a as usize;
                (qr.a_act(self.q[a], idem(self.sides[a])) != self.q[a]).then(|| format!("e{}", self.labels[a]))
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let qs = self.ring().size();
        let pairs: Vec<(Vec<El>, Vec<El>)> = (0..256)
            .map(|_| {
                let v = |rng: &mut ChaCha8Rng| (0..r).map(|_| rng.gen_range(0..qs) as El).collect::<Vec<_>>();
                (v(&mut rng), v(&mut rng))
            })
            .collect();
        let k = self.ring();
        rep.check_all("q_expansion", pairs.len() as u64, |i| {
            let (x, y) = &pairs[i as usize];
            let lhs = self.qv(&self.m_add(x, y));
            let rhs = k.add(k.add(self.qv(x), qr.phi(self.b(x, y))), self.qv(y));
            (lhs != rhs).then(|| format!("{x:?}, {y:?}"))
        });
        rep
    }

    // Heisenberg group and odd form parameters.

    pub fn heis_zero(&self) -> HeisElem {
        HeisElem { m: self.zero(), l: [0, 0] }
    }

    pub fn heis_add(&self, x: &HeisElem, y: &HeisElem) -> HeisElem {
        let qr = &self.qr;
        HeisElem { m: self.m_add(&x.m, &y.m), l: qr.add(qr.sub(x.l, self.b(&x.m, &y.m)), y.l) }
    }

    pub fn heis_neg(&self, x: &HeisElem) -> HeisElem {
        let qr = &self.qr;
        HeisElem { m: self.m_neg(&x.m), l: qr.neg(qr.add(self.b(&x.m, &x.m), x.l)) }
    }

    pub fn heis_act(&self, x: &HeisElem, r: Pair) -> HeisElem {
        HeisElem { m: self.m_act(&x.m, r), l: self.qr.bimod(r, x.l, r) }
    }

    /// `q(m) + phi(l) = 0`.
    pub fn lparam_member(&self, h: &HeisElem) -> bool {
        self.ring().add(self.qv(&h.m), self.qr.phi(h.l)) == 0
    }

    pub fn lminmax_member(&self, h: &HeisElem, which: Bound) -> bool {
        let qr = &self.qr;
        match which {
            Bound::Min => {
                h.m.iter().all(|&x| x == 0) && qr.r_elements().into_iter().any(|x| qr.sub(x, qr.l_inv(x)) == h.l)
            }
            Bound::Max => qr.add(qr.add(self.b(&h.m, &h.m), h.l), qr.l_inv(h.l)) == [0, 0],
        }
    }

    pub fn heis_elements(&self, cap: u64) -> Result<Vec<HeisElem>> {
        let ls = self.qr.r_elements();
        let ms = self.elements(cap / ls.len() as u64)?;
        Ok(ms.iter().flat_map(|m| ls.iter().map(move |&l| HeisElem { m: m.clone(), l })).collect())
    }

    /// Elements of the odd form parameter `{(m, l) | q(m) + phi(l) = 0}`.
    pub fn lparam_elements(&self, cap: u64) -> Result<Vec<HeisElem>> {
        Ok(self.heis_elements(cap)?.into_iter().filter(|h| self.lparam_member(h)).collect())
    }

    /// `L_min <= L <= L_max` and closure of `L` under the group law and the
    /// action of `R`, over the whole Heisenberg group.
    pub fn lparam_check(&self, cap: u64) -> Result<Report> {
        let mut rep = Report::new("odd form parameter");
        let all = self.heis_elements(cap)?;
        let lp: Vec<&HeisElem> = all.iter().filter(|h| self.lparam_member(h)).collect();
        let n = all.len() as u64;
        rep.check("zero_in_l", self.lparam_member(&self.heis_zero()), String::new);
        rep.check_all("lmin_in_l", n, |i| {
            let h = &all[i as usize];
            (self.lminmax_member(h, Bound::Min) && !self.lparam_member(h)).then(|| format!("{h:?}"))
        });
        rep.check_all("l_in_lmax", n, |i| {
            let h = &all[i as usize];
            (self.lparam_member(h) && !self.lminmax_member(h, Bound::Max)).then(|| format!("{h:?}"))
        });
        let p = lp.len() as u64;
        rep.check_all("l_closed_add", p * p, |k| {
            let (x, y) = (lp[(k / p) as usize], lp[(k % p) as usize]);
            (!self.lparam_member(&self.heis_add(x, y))).then(|| format!("{x:?} + {y:?}"))
        });
        rep.check_all("l_closed_neg", p, |k| {
            let x = lp[k as usize];
            let back = self.heis_add(x, &self.heis_neg(x));
            (!self.lparam_member(&self.heis_neg(x)) || back != self.heis_zero()).then(|| format!("{x:?}"))
        });
        let rs = self.qr.r_elements();
        let nr = rs.len() as u64;
        rep.check_all("l_closed_action", p * nr, |k| {
            let (x, r) = (lp[(k / nr) as usize], rs[(k % nr) as usize]);
            (!self.lparam_member(&self.heis_act(x, r))).then(|| format!("{x:?} . {r:?}"))
        });
        rep.note(format!("|Heis| = {}, |L| = {}", all.len(), lp.len()));
        Ok(rep)
    }

    // Scalar extension and isometries.

    pub fn extend_scalars(&self, hom: &RingHom) -> Result<QuadModule> {
        if hom.src != *self.ring() {
            return structural("homomorphism source is not the coefficient ring");
        }
        let map = |p: &Pair| [hom.apply(p[0]), hom.apply(p[1])];
        QuadModule::from_tables(
            self.ty(),
            &hom.dst,
            self.labels.clone(),
            self.gram.iter().map(map).collect(),
            self.q.iter().map(|&x| hom.apply(x)).collect(),
        )
    }

    /// Column `c` of a row-major matrix.
    pub fn column(&self, g: &[El], c: usize) -> Vec<El> {
        let r = self.rank();
        (0..r).map(|row| g[row * r + c]).collect()
    }

    /// Whether a matrix is `R`-linear (preserves the sides of the linear type).
    pub fn r_linear(&self, g: &[El]) -> bool {
        let r = self.rank();
        (0..r * r).all(|k| self.sides[k / r] == self.sides[k % r] || g[k] == 0)
    }

    /// Whether `g` is an automorphism of `(M, B, q)`.
    pub fn is_unitary(&self, g: &[El]) -> bool {
        let r = self.rank();
        if g.len() != r * r || !self.r_linear(g) || !self.ring().is_unit(form_ring::det(self.ring(), r, g)) {
            return false;
        }
        let cols: Vec<Vec<El>> = (0..r).map(|c| self.column(g, c)).collect();
        (0..r).all(|a| self.qv(&cols[a]) == self.q[a] && (0..r).all(|b| self.b(&cols[a], &cols[b]) == self.g(a, b)))
    }

    /// Candidate images of basis vector `c`: vectors on its side with the right `q` and `B`.
    fn column_candidates(&self, c: usize) -> Result<Vec<Vec<El>>> {
        let r = self.rank();
        let support: Vec<usize> = (0..r).filter(|&a| self.sides[a] == self.sides[c]).collect();
        let q = self.ring().size();
        let total = (q as u128).checked_pow(support.len() as u32).unwrap_or(u128::MAX);
        if total > MODULE_ENUM_CAP as u128 {
            return Err(OfaError::Capacity { what: "column candidates".into(), size: total, cap: MODULE_ENUM_CAP as u128 });
        }
        Ok((0..total as u64)
            .filter_map(|code| {
                let d = digits(code, q, support.len());
                let mut v = self.zero();
                for (&a, x) in support.iter().zip(d) {
                    v[a] = x;
                }
                (self.qv(&v) == self.q[c] && self.b(&v, &v) == self.g(c, c)).then_some(v)
            })
            .collect())
    }

    /// The unitary group `U(M, B, q)` as sorted row-major matrices.
    pub fn enumerate_unitary(&self, cap: usize) -> Result<Vec<Vec<El>>> {
        use rayon::prelude::*;
        let r = self.rank();
        let cands: Vec<Vec<Vec<El>>> = (0..r).map(|c| self.column_candidates(c)).collect::<Result<_>>()?;
        if r == 0 {
            return Ok(vec![vec![]]);
        }
        let found: Vec<Result<Vec<Vec<Vec<El>>>>> = cands[0]
            .par_iter()
            .map(|first| {
                let mut out = Vec::new();
                let mut cols = vec![first.clone()];
                self.extend_columns(&cands, &mut cols, &mut out, cap)?;
                Ok(out)
            })
            .collect();
        let mut mats = Vec::new();
        for part in found {
            for cols in part? {
                let mut g = vec![0; r * r];
                for (c, col) in cols.iter().enumerate() {
                    for (row, &x) in col.iter().enumerate() {
                        g[row * r + c] = x;
                    }
                }
                if self.ring().is_unit(form_ring::det(self.ring(), r, &g)) {
                    mats.push(g);
                }
            }
            if mats.len() > cap {
                return Err(OfaError::Capacity { what: "module unitary group".into(), size: mats.len() as u128, cap: cap as u128 });
            }
        }
        mats.sort();
        Ok(mats)
    }

    fn extend_columns(&self, cands: &[Vec<Vec<El>>], cols: &mut Vec<Vec<El>>, out: &mut Vec<Vec<Vec<El>>>, cap: usize) -> Result<()> {
        let c = cols.len();
        if c == cands.len() {
            if out.len() >= cap {
                return Err(OfaError::Capacity { what: "module unitary group".into(), size: out.len() as u128 + 1, cap: cap as u128 });
            }
            out.push(cols.clone());
            return Ok(());
        }
        for v in &cands[c] {
            let ok = (0..c).all(|a| self.b(&cols[a], v) == self.g(a, c) && self.b(v, &cols[a]) == self.g(c, a));
            if ok {
                cols.push(v.clone());
                self.extend_columns(cands, cols, out, cap)?;
                cols.pop();
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let k = self.ring();
        let lval = |p: &Pair| {
            if self.qr.linear() {
                serde_json::json!([k.elem(p[0]), k.elem(p[1])])
            } else {
                serde_json::json!(k.elem(p[0]))
            }
        };
        let r = self.rank();
        let gram: Vec<Vec<serde_json::Value>> = (0..r).map(|a| (0..r).map(|b| lval(&self.g(a, b))).collect()).collect();
        serde_json::json!({
            "type": self.ty().name(),
            "ring": k.spec(),
            "rank": r,
            "labels": self.labels,
            "gram": gram,
            "q": self.q.iter().map(|&x| k.elem(x)).collect::<Vec<_>>(),
        })
    }
}

pub(crate) fn digits(mut code: u64, q: u64, len: usize) -> Vec<El> {
    (0..len)
        .map(|_| {
            let d = (code % q) as El;
            code /= q;
            d
        })
        .collect()
}

/// `B(e_i, e_{-i})` for `i > 0` in the split module of a type.
fn split_pairing(qr: &QuadRing, i: i32) -> Pair {
    let one = qr.ring.one();
    match qr.ty {
        QuadType::Linear if i > 0 => [one, 0],
        QuadType::Linear => [0, one],
        QuadType::Symplectic if i > 0 => [one, 0],
        QuadType::Symplectic => [qr.ring.neg(one), 0],
        QuadType::Orthogonal => [one, 0],
    }
}

/// The split module of a family: hyperbolic pairs `e_{-i}, e_i`, plus `e_0`
/// with `q(e_0) = 1` for the odd orthogonal family.
pub fn split_module(ty: QuadType, ring: &Ring, family: Family) -> Result<QuadModule> {
    if QuadType::of_family(family) != ty {
        return structural(format!("family {} is not of {} type", family.name(), ty.name()));
    }
    let qr = QuadRing::new(ty, ring);
    let labels = family.labels();
    let r = labels.len();
    let mut gram = vec![[0, 0]; r * r];
    let mut q = vec![0; r];
    for (a, &i) in labels.iter().enumerate() {
        for (b, &j) in labels.iter().enumerate() {
            if i == -j && i != 0 {
                gram[a * r + b] = split_pairing(&qr, i);
            }
        }
        if i == 0 {
            q[a] = ring.one();
            gram[a * r + a] = qr.tr(ring.one());
        }
    }
    QuadModule::from_tables(ty, ring, labels, gram, q)
}

/// The split module of a family, with the type read off the family.
pub fn split_module_for(ring: &Ring, family: Family) -> Result<QuadModule> {
    split_module(QuadType::of_family(family), ring, family)
}

/// The hyperbolic space `Hom(P, L)^op + P` of a free module `P` of rank `p`.
/// Positive labels index `P`, label `-k` is the dual functional `f_k` scaled
/// so that `B(e_k, e_{-k})` matches the split module.
pub fn hyperbolic_space(ty: QuadType, ring: &Ring, p: usize) -> Result<QuadModule> {
    let qr = QuadRing::new(ty, ring);
    let labels: Vec<i32> = (-(p as i32)..=p as i32).filter(|&i| i != 0).collect();
    let r = labels.len();
    // value f_k(e_k) in L
    let fval: Vec<Pair> = (1..=p as i32).map(|k| qr.l_inv(split_pairing(&qr, k))).collect();
    // an element is (f, x) with f = sum c_k f_k, x = sum x_k e_k
    let split = |v: &[El]| -> (Vec<El>, Vec<El>) {
        let f = (0..p).map(|k| v[p - 1 - k]).collect();
        let x = (0..p).map(|k| v[p + k]).collect();
        (f, x)
    };
    let pairing = |f: &[El], x: &[El]| -> Pair {
        (0..p).fold([0, 0], |acc, k| qr.add(acc, qr.scale(ring.mul(f[k], x[k]), fval[k])))
    };
    let mut gram = vec![[0, 0]; r * r];
    let mut q = vec![0; r];
    let basis = |a: usize| {
        let mut v = vec![0; r];
        v[a] = ring.one();
        v
    };
    for a in 0..r {
        let (f, x) = split(&basis(a));
        for b in 0..r {
            let (f2, x2) = split(&basis(b));
            gram[a * r + b] = qr.add(pairing(&f, &x2), qr.l_inv(pairing(&f2, &x)));
        }
        q[a] = qr.phi(pairing(&f, &x));
    }
    QuadModule::from_tables(ty, ring, labels, gram, q)
}
