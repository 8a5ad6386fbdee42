//! The order-2 automorphism of the linear family and the classical pairs
//! `symp(2n), orth(2n) -> lin(2n)` with their general unitary groups.

use std::collections::BTreeSet;

use crate::error::{structural, OfaError, Result};
use crate::form_ring::{AlgElem, Family};
use crate::odd_form_param::{DeltaElem, Heis};
use crate::report::Report;

use super::{UnitaryElem, UnitaryGroup, GROUP_CAP};

/// `e_ij -> e_{s(i) s(j)}` with `s(i) = i -+ (n + 1)` on the linear family.
#[derive(Clone, Debug)]
pub struct Sigma {
    pub group: UnitaryGroup,
}

impl Sigma {
    pub fn new(group: &UnitaryGroup) -> Result<Sigma> {
        if !matches!(group.family(), Family::Lin(_)) {
            return structural("sigma is defined on the linear family");
        }
        Ok(Sigma { group: group.clone() })
    }

    pub fn label(&self, i: i32) -> i32 {
        let n = self.group.family().n() as i32;
        if i > 0 {
            i - n - 1
        } else {
            i + n + 1
        }
    }

    pub fn apply_alg(&self, x: &AlgElem) -> AlgElem {
        let a = self.group.alg();
        let mut out = a.zero();
        for &(i, j) in a.basis() {
            a.set(&mut out, self.label(i), self.label(j), a.get(x, i, j));
        }
        out
    }

    pub fn apply_delta(&self, u: &DeltaElem) -> DeltaElem {
        let s = &self.group.shape;
        let h = s.heis(u);
        s.from_heis(&Heis { pi: self.apply_alg(&h.pi), rho: self.apply_alg(&h.rho) })
            .expect("sigma preserves the odd form parameter")
    }

    pub fn apply(&self, g: &UnitaryElem) -> UnitaryElem {
        UnitaryElem { beta: self.apply_alg(&g.beta), gamma: self.apply_delta(&g.gamma) }
    }

    /// Automorphism, order 2, swap of the central idempotents; bijectivity on `elems` when given.
    pub fn check(&self, elems: Option<&[UnitaryElem]>) -> Report {
        let g = &self.group;
        let (a, s) = (g.alg(), &g.shape);
        let mut rep = Report::new(format!("sigma on {}", g.family().name()));
        let basis: Vec<AlgElem> = a.basis().iter().map(|&(i, j)| a.e(i, j)).collect();
        let nb = basis.len() as u64;
        let decodes = |x: &AlgElem, y: &AlgElem| s.from_heis(&Heis { pi: self.apply_alg(x), rho: self.apply_alg(y) });
        rep.check_all("order_two", nb, |k| {
            let x = &basis[k as usize];
            (self.apply_alg(&self.apply_alg(x)) != *x).then(|| a.show(x))
        });
        rep.check_all("multiplicative", nb * nb, |k| {
            let (x, y) = (&basis[(k / nb) as usize], &basis[(k % nb) as usize]);
            (self.apply_alg(&a.mul(x, y)) != a.mul(&self.apply_alg(x), &self.apply_alg(y)))
                .then(|| format!("{} * {}", a.show(x), a.show(y)))
        });
        rep.check_all("involution", nb, |k| {
            let x = &basis[k as usize];
            (self.apply_alg(&a.inv(x)) != a.inv(&self.apply_alg(x))).then(|| a.show(x))
        });
        let gens = s.coordinate_generators();
        rep.check_all("preserves_delta", gens.len() as u64, |k| {
            let h = s.heis(&gens[k as usize]);
            decodes(&h.pi, &h.rho).is_none().then(|| s.show(&gens[k as usize]))
        });
        rep.check_all("phi", nb, |k| {
            let x = &basis[k as usize];
            (self.apply_delta(&s.phi(x)) != s.phi(&self.apply_alg(x))).then(|| a.show(x))
        });
        let ng = gens.len() as u64;
        rep.check_all("sum", ng * ng, |k| {
            let (u, v) = (&gens[(k / ng) as usize], &gens[(k % ng) as usize]);
            (self.apply_delta(&s.add(u, v)) != s.add(&self.apply_delta(u), &self.apply_delta(v)))
                .then(|| format!("{} , {}", s.show(u), s.show(v)))
        });
        rep.check_all("action", ng * nb, |k| {
            let (u, x) = (&gens[(k / nb) as usize], &basis[(k % nb) as usize]);
            (self.apply_delta(&s.act_alg(u, x)) != s.act_alg(&self.apply_delta(u), &self.apply_alg(x)))
                .then(|| format!("{} . {}", s.show(u), a.show(x)))
        });
        let n = g.family().n() as i32;
        let mut plus = a.zero();
        let mut minus = a.zero();
        for i in 1..=n {
            plus = a.add(&plus, &a.e(i, i));
            minus = a.add(&minus, &a.e(-i, -i));
        }
        rep.check("swaps_central_idempotents", self.apply_alg(&plus) == minus && self.apply_alg(&minus) == plus, || {
            a.show(&self.apply_alg(&plus))
        });
        if let Some(elems) = elems {
            let set: BTreeSet<&UnitaryElem> = elems.iter().collect();
            let images: Vec<UnitaryElem> = elems.iter().map(|x| self.apply(x)).collect();
            let image_set: BTreeSet<&UnitaryElem> = images.iter().collect();
            rep.check("bijective_on_group", image_set == set, || {
                format!("{} images, {} inside the group", image_set.len(), image_set.intersection(&set).count())
            });
        }
        rep
    }
}

/// `symp(2n)` or `orth(2n)` inside `lin(2n)` via `e_ij -> e_ij +- e_{bar(-i) bar(-j)}`.
#[derive(Clone, Debug)]
pub struct ClassicalPair {
    pub sub: UnitaryGroup,
    pub big: UnitaryGroup,
}

impl ClassicalPair {
    pub fn new(sub: &UnitaryGroup) -> Result<ClassicalPair> {
        let n = match sub.family() {
            Family::Symp(n) | Family::OrthEven(n) => n,
            f => {
                return Err(OfaError::Structural(format!(
                    "classical pair for {} is not supported (symplectic and even orthogonal only)",
                    f.name()
                )))
            }
        };
        let big = UnitaryGroup::new(Family::Lin(2 * n), sub.ring())?;
        Ok(ClassicalPair { sub: sub.clone(), big })
    }

    /// Position of an unbarred label in the positive block; barred labels are its negatives.
    fn p(&self, i: i32) -> i32 {
        let n = self.sub.family().n() as i32;
        if i < 0 {
            i + n + 1
        } else {
            i + n
        }
    }

    pub fn map_alg(&self, x: &AlgElem) -> AlgElem {
        let (a, b) = (self.sub.alg(), self.big.alg());
        let r = &a.ring;
        let mut out = b.zero();
        for &(i, j) in a.basis() {
            let c = a.get(x, i, j);
            if c == 0 {
                continue;
            }
            b.set(&mut out, self.p(i), self.p(j), c);
            let signed = if a.inv_sign(i, j) == 1 { c } else { r.neg(c) };
            b.set(&mut out, -self.p(-i), -self.p(-j), signed);
        }
        out
    }

    pub fn preimage_alg(&self, y: &AlgElem) -> Option<AlgElem> {
        let (a, b) = (self.sub.alg(), self.big.alg());
        let mut x = a.zero();
        for &(i, j) in a.basis() {
            a.set(&mut x, i, j, b.get(y, self.p(i), self.p(j)));
        }
        (self.map_alg(&x) == *y).then_some(x)
    }

    pub fn map_delta(&self, u: &DeltaElem) -> Option<DeltaElem> {
        let h = self.sub.shape.heis(u);
        self.big.shape.from_heis(&Heis { pi: self.map_alg(&h.pi), rho: self.map_alg(&h.rho) })
    }

    pub fn preimage_delta(&self, v: &DeltaElem) -> Option<DeltaElem> {
        let h = self.big.shape.heis(v);
        let (pi, rho) = (self.preimage_alg(&h.pi)?, self.preimage_alg(&h.rho)?);
        self.sub.shape.from_heis(&Heis { pi, rho })
    }

    /// The embedding is a morphism of odd form algebras (checked on generators).
    pub fn verify(&self) -> Report {
        let (a, b) = (self.sub.alg(), self.big.alg());
        let (s, t) = (&self.sub.shape, &self.big.shape);
        let mut rep = Report::new(format!("classical pair {} in {}", self.sub.family().name(), self.big.family().name()));
        let basis: Vec<AlgElem> = a.basis().iter().map(|&(i, j)| a.e(i, j)).collect();
        let nb = basis.len() as u64;
        rep.check_all("multiplicative", nb * nb, |k| {
            let (x, y) = (&basis[(k / nb) as usize], &basis[(k % nb) as usize]);
            (self.map_alg(&a.mul(x, y)) != b.mul(&self.map_alg(x), &self.map_alg(y)))
                .then(|| format!("{} * {}", a.show(x), a.show(y)))
        });
        rep.check_all("involution", nb, |k| {
            let x = &basis[k as usize];
            (self.map_alg(&a.inv(x)) != b.inv(&self.map_alg(x))).then(|| a.show(x))
        });
        rep.check_all("injective_on_basis", nb, |k| {
            let x = &basis[k as usize];
            (self.preimage_alg(&self.map_alg(x)).as_ref() != Some(x)).then(|| a.show(x))
        });
        let gens = s.coordinate_generators();
        let ng = gens.len() as u64;
        rep.check_all("delta_maps_into_delta", ng, |k| self.map_delta(&gens[k as usize]).is_none().then(|| s.show(&gens[k as usize])));
        rep.check_all("phi", nb, |k| {
            let x = &basis[k as usize];
            (self.map_delta(&s.phi(x)) != Some(t.phi(&self.map_alg(x)))).then(|| a.show(x))
        });
        rep.check_all("sum", ng * ng, |k| {
            let (u, v) = (&gens[(k / ng) as usize], &gens[(k % ng) as usize]);
            let lhs = self.map_delta(&s.add(u, v));
            let rhs = self.map_delta(u).zip(self.map_delta(v)).map(|(x, y)| t.add(&x, &y));
            (lhs != rhs || lhs.is_none()).then(|| format!("{} , {}", s.show(u), s.show(v)))
        });
        rep.check_all("action", ng * nb, |k| {
            let (u, x) = (&gens[(k / nb) as usize], &basis[(k % nb) as usize]);
            let lhs = self.map_delta(&s.act_alg(u, x));
            let rhs = self.map_delta(u).map(|v| t.act_alg(&v, &self.map_alg(x)));
            (lhs != rhs || lhs.is_none()).then(|| format!("{} . {}", s.show(u), a.show(x)))
        });
        rep
    }

    /// `g` stabilizes the image of `R` and of `Delta`.
    pub fn gu_member(&self, g: &UnitaryElem) -> bool {
        let a = self.sub.alg();
        let r_ok = a.basis().iter().all(|&(i, j)| self.preimage_alg(&self.big.act_alg(g, &self.map_alg(&a.e(i, j)))).is_some());
        r_ok && self.sub.shape.coordinate_generators().iter().all(|u| match self.map_delta(u) {
            Some(v) => self.preimage_delta(&self.big.act_delta(g, &v)).is_some(),
            None => false,
        })
    }

    /// The general unitary group, by filtering an enumeration of the big group.
    pub fn gu_enumerate(&self) -> Result<Vec<UnitaryElem>> {
        Ok(self.big.enumerate(GROUP_CAP)?.into_iter().filter(|g| self.gu_member(g)).collect())
    }

    /// Sigma on the big algebra stabilizes the image (symplectic) or fixes it pointwise (orthogonal).
    pub fn sigma_check(&self) -> Result<Report> {
        let sigma = Sigma::new(&self.big)?;
        let a = self.sub.alg();
        let s = &self.sub.shape;
        let mut rep = Report::new(format!("sigma on the image of {}", self.sub.family().name()));
        let basis: Vec<AlgElem> = a.basis().iter().map(|&(i, j)| a.e(i, j)).collect();
        let gens = s.coordinate_generators();
        let images: Vec<Option<DeltaElem>> = gens.iter().map(|u| self.map_delta(u)).collect();
        rep.check_all("stabilizes_r", basis.len() as u64, |k| {
            let x = &basis[k as usize];
            self.preimage_alg(&sigma.apply_alg(&self.map_alg(x))).is_none().then(|| a.show(x))
        });
        rep.check_all("stabilizes_delta", gens.len() as u64, |k| {
            let ok = images[k as usize].as_ref().is_some_and(|v| self.preimage_delta(&sigma.apply_delta(v)).is_some());
            (!ok).then(|| s.show(&gens[k as usize]))
        });
        if matches!(self.sub.family(), Family::OrthEven(_)) {
            rep.check_all("centralizes_r", basis.len() as u64, |k| {
                let y = self.map_alg(&basis[k as usize]);
                (sigma.apply_alg(&y) != y).then(|| a.show(&basis[k as usize]))
            });
            rep.check_all("centralizes_delta", gens.len() as u64, |k| {
                let ok = images[k as usize].as_ref().is_some_and(|v| sigma.apply_delta(v) == *v);
                (!ok).then(|| s.show(&gens[k as usize]))
            });
        }
        Ok(rep)
    }
}
