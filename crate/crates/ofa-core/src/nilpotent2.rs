//! 2-step nilpotent modules presented as split central extensions
//! `M1 ∔ M0` with a bilinear cocycle, divided by an invariant subgroup.
//!
//! Elements are stored as split coordinates and reduced to the
//! lexicographically least member of their coset.

mod axioms;
mod bridge;
mod descent;
#[cfg(test)]
mod tests;

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use serde_json::{json, Value};

use crate::coeff_ring::{El, Ring, RingHom, RingSpec};
use crate::error::{structural, OfaError, Result};
use crate::report::Report;

pub use axioms::{axioms_check, TwoStep, DEFAULT_BUDGET};
pub use bridge::bridge_check;
pub use descent::{descent_roundtrip, registered_extension, registered_extensions, DescentDatum, Descended, Nil2Map};

pub const NIL2_ENUM_CAP: u64 = 1 << 20;
/// Modules up to this size are checked element by element.
pub const NIL2_EXHAUSTIVE: usize = 1 << 14;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Nil2Elem {
    pub m1: Vec<El>,
    pub m0: Vec<El>,
}

impl Nil2Elem {
    pub fn zero(r1: usize, r0: usize) -> Nil2Elem {
        Nil2Elem { m1: vec![0; r1], m0: vec![0; r0] }
    }

    pub fn central(m0: Vec<El>, r1: usize) -> Nil2Elem {
        Nil2Elem { m1: vec![0; r1], m0 }
    }

    pub fn is_zero(&self) -> bool {
        self.m1.iter().chain(&self.m0).all(|&x| x == 0)
    }
}

#[derive(Clone, Debug)]
pub struct Nil2Module {
    ring: Ring,
    r0: usize,
    r1: usize,
    /// `b[i * r1 + j] = b(e_i, e_j)` in `K^r0`.
    b: Vec<Vec<El>>,
    gens: Vec<Nil2Elem>,
    /// The subgroup divided out, sorted; always contains zero.
    closure: Vec<Nil2Elem>,
    /// `M1`-projection of the closure, each with one preimage.
    proj1: HashMap<Vec<El>, Nil2Elem>,
}

impl PartialEq for Nil2Module {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.r0 == other.r0 && self.r1 == other.r1 && self.b == other.b && self.closure == other.closure
    }
}

impl Eq for Nil2Module {}

fn vadd(ring: &Ring, x: &[El], y: &[El]) -> Vec<El> {
    x.iter().zip(y).map(|(&a, &b)| ring.add(a, b)).collect()
}

fn vneg(ring: &Ring, x: &[El]) -> Vec<El> {
    x.iter().map(|&a| ring.neg(a)).collect()
}

fn vscale(ring: &Ring, k: El, x: &[El]) -> Vec<El> {
    x.iter().map(|&a| ring.mul(k, a)).collect()
}

/// All vectors of length `len` over `ring`, in lexicographic order.
pub(crate) fn all_vectors(ring: &Ring, len: usize, cap: u64) -> Result<Vec<Vec<El>>> {
    let q = ring.size();
    let total = (q as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if total > cap as u128 {
        return Err(OfaError::Capacity { what: "vectors".into(), size: total, cap: cap as u128 });
    }
    Ok((0..total as u64)
        .map(|mut code| {
            let mut v = vec![0 as El; len];
            for c in v.iter_mut().rev() {
                *c = (code % q) as El;
                code /= q;
            }
            v
        })
        .collect())
}

impl Nil2Module {
    /// Split module `K^r1 ∔ K^r0` with cocycle table `b`.
    pub fn split(ring: &Ring, r0: usize, r1: usize, b: Vec<Vec<El>>) -> Result<Nil2Module> {
        if b.len() != r1 * r1 {
            return structural(format!("cocycle table needs {} entries, got {}", r1 * r1, b.len()));
        }
        for v in &b {
            if v.len() != r0 || v.iter().any(|&x| !ring.contains(x)) {
                return structural("cocycle value is not a vector of M0");
            }
        }
        let zero = Nil2Elem::zero(r1, r0);
        let proj1 = HashMap::from([(zero.m1.clone(), zero.clone())]);
        Ok(Nil2Module { ring: ring.clone(), r0, r1, b, gens: Vec::new(), closure: vec![zero], proj1 })
    }

    /// Divide by the smallest subgroup containing `gens` for which the
    /// quotient is again a 2-step module.
    pub fn with_quotient(&self, gens: Vec<Nil2Elem>) -> Result<Nil2Module> {
        for g in &gens {
            self.validate_elem(g)?;
        }
        let mut all = self.gens.clone();
        all.extend(gens);
        let closure = self.admissible_closure(&all, NIL2_ENUM_CAP)?;
        Ok(self.with_closure(all, closure))
    }

    fn with_closure(&self, gens: Vec<Nil2Elem>, closure: BTreeSet<Nil2Elem>) -> Nil2Module {
        let mut proj1 = HashMap::new();
        for x in &closure {
            proj1.entry(x.m1.clone()).or_insert_with(|| x.clone());
        }
        Nil2Module { gens, closure: closure.into_iter().collect(), proj1, ..self.clone() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn r0(&self) -> usize {
        self.r0
    }

    pub fn r1(&self) -> usize {
        self.r1
    }

    pub fn cocycle(&self) -> &[Vec<El>] {
        &self.b
    }

    pub fn quotient_generators(&self) -> &[Nil2Elem] {
        &self.gens
    }

    pub fn closure(&self) -> &[Nil2Elem] {
        &self.closure
    }

    pub fn is_split(&self) -> bool {
        self.closure.len() == 1
    }

    pub fn validate_elem(&self, x: &Nil2Elem) -> Result<()> {
        if x.m1.len() != self.r1 || x.m0.len() != self.r0 {
            return structural("element has the wrong shape");
        }
        if x.m1.iter().chain(&x.m0).any(|&c| !self.ring.contains(c)) {
            return structural("element has coordinates outside the ring");
        }
        Ok(())
    }

    pub fn zero(&self) -> Nil2Elem {
        Nil2Elem::zero(self.r1, self.r0)
    }

    pub fn e1(&self, i: usize) -> Nil2Elem {
        let mut z = self.zero();
        z.m1[i] = self.ring.one();
        z
    }

    pub fn e0(&self, l: usize) -> Nil2Elem {
        let mut z = self.zero();
        z.m0[l] = self.ring.one();
        z
    }

    pub fn bmap(&self, x: &[El], y: &[El]) -> Vec<El> {
        let r = &self.ring;
        let mut out = vec![0; self.r0];
        for i in 0..self.r1 {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.r1 {
                let k = r.mul(x[i], y[j]);
                if k != 0 {
                    for (o, &v) in out.iter_mut().zip(&self.b[i * self.r1 + j]) {
                        *o = r.add(*o, r.mul(k, v));
                    }
                }
            }
        }
        out
    }

    pub fn raw_add(&self, x: &Nil2Elem, y: &Nil2Elem) -> Nil2Elem {
        let r = &self.ring;
        let m0 = vadd(r, &vadd(r, &x.m0, &self.bmap(&x.m1, &y.m1)), &y.m0);
        Nil2Elem { m1: vadd(r, &x.m1, &y.m1), m0 }
    }

    pub fn raw_neg(&self, x: &Nil2Elem) -> Nil2Elem {
        let r = &self.ring;
        // -(x1, x0) = (-x1, -x0 + b(x1, x1))
        Nil2Elem { m1: vneg(r, &x.m1), m0: vadd(r, &vneg(r, &x.m0), &self.bmap(&x.m1, &x.m1)) }
    }

    pub fn raw_act(&self, x: &Nil2Elem, k: El) -> Nil2Elem {
        let r = &self.ring;
        Nil2Elem { m1: vscale(r, k, &x.m1), m0: vscale(r, r.mul(k, k), &x.m0) }
    }

    pub fn raw_tau(&self, x: &Nil2Elem) -> Nil2Elem {
        let r = &self.ring;
        let m0 = vadd(r, &vscale(r, r.from_int(2), &x.m0), &vneg(r, &self.bmap(&x.m1, &x.m1)));
        Nil2Elem::central(m0, self.r1)
    }

    pub fn raw_commutator(&self, x: &Nil2Elem, y: &Nil2Elem) -> Nil2Elem {
        let r = &self.ring;
        Nil2Elem::central(vadd(r, &self.bmap(&x.m1, &y.m1), &vneg(r, &self.bmap(&y.m1, &x.m1))), self.r1)
    }

    /// Least member of the coset `x ∔ X`.
    pub fn reduce(&self, x: &Nil2Elem) -> Nil2Elem {
        if self.is_split() {
            return x.clone();
        }
        self.closure.iter().map(|a| self.raw_add(x, a)).min().unwrap()
    }

    pub fn add(&self, x: &Nil2Elem, y: &Nil2Elem) -> Nil2Elem {
        self.reduce(&self.raw_add(x, y))
    }

    pub fn neg(&self, x: &Nil2Elem) -> Nil2Elem {
        self.reduce(&self.raw_neg(x))
    }

    pub fn act(&self, x: &Nil2Elem, k: El) -> Nil2Elem {
        self.reduce(&self.raw_act(x, k))
    }

    pub fn tau(&self, x: &Nil2Elem) -> Nil2Elem {
        self.reduce(&self.raw_tau(x))
    }

    pub fn in_m0(&self, x: &Nil2Elem) -> bool {
        self.proj1.contains_key(&x.m1)
    }

    /// A representative of `x` with vanishing `M1` part, if `x` lies in `M0`.
    pub fn central_rep(&self, x: &Nil2Elem) -> Option<Vec<El>> {
        let a = self.proj1.get(&x.m1)?;
        Some(self.raw_add(x, &self.raw_neg(a)).m0)
    }

    pub fn scale0(&self, k: El, x: &Nil2Elem) -> Result<Nil2Elem> {
        let v = self.central_rep(x).ok_or_else(|| OfaError::Domain("scalar multiplication is defined on M0 only".into()))?;
        Ok(self.reduce(&Nil2Elem::central(vscale(&self.ring, k, &v), self.r1)))
    }

    /// Subgroup of the ambient split module generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[Nil2Elem], cap: u64) -> Result<BTreeSet<Nil2Elem>> {
        let zero = self.zero();
        let mut seen = BTreeSet::from([zero.clone()]);
        let mut frontier = vec![zero];
        let gens: Vec<&Nil2Elem> = gens.iter().filter(|g| !g.is_zero()).collect();
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = self.raw_add(&x, g);
                if !seen.contains(&y) {
                    seen.insert(y.clone());
                    if seen.len() as u64 > cap {
                        return Err(OfaError::Capacity { what: "subgroup".into(), size: seen.len() as u128, cap: cap as u128 });
                    }
                    frontier.push(y);
                }
            }
        }
        Ok(seen)
    }

    fn scalar_images(&self, gens: &[Nil2Elem]) -> Vec<Nil2Elem> {
        let set: BTreeSet<Nil2Elem> = gens.iter().flat_map(|g| self.ring.elements().map(move |k| self.raw_act(g, k))).collect();
        set.into_iter().collect()
    }

    /// Least subset of the ambient split module containing `gens` and closed
    /// under `∔`, `⊖` and `·k`.
    pub fn invariant_closure(&self, gens: &[Nil2Elem], cap: u64) -> Result<BTreeSet<Nil2Elem>> {
        // `·k` is an endomorphism of the split group, so closing the generators suffices
        self.generated_subgroup(&self.scalar_images(gens), cap)
    }

    /// The invariant closure made normal and with a `K`-submodule as its
    /// intersection with `M0`.
    pub fn admissible_closure(&self, gens: &[Nil2Elem], cap: u64) -> Result<BTreeSet<Nil2Elem>> {
        let mut g = self.scalar_images(gens);
        let ks: Vec<El> = self.ring.elements().collect();
        let mut extra = BTreeSet::new();
        for x in &g {
            for i in 0..self.r1 {
                for &k in &ks {
                    extra.insert(self.raw_commutator(&self.raw_act(&self.e1(i), k), x));
                }
            }
        }
        g.extend(extra);
        loop {
            let x = self.generated_subgroup(&g, cap)?;
            let new: BTreeSet<Nil2Elem> = x
                .iter()
                .filter(|y| y.m1.iter().all(|&c| c == 0))
                .flat_map(|y| ks.iter().map(move |&k| Nil2Elem::central(vscale(&self.ring, k, &y.m0), self.r1)))
                .filter(|y| !x.contains(y))
                .collect();
            if new.is_empty() {
                return Ok(x);
            }
            g.extend(new);
        }
    }

    pub fn ambient_order(&self) -> u128 {
        (self.ring.size() as u128).pow((self.r0 + self.r1) as u32)
    }

    pub fn order(&self) -> u128 {
        self.ambient_order() / self.closure.len() as u128
    }

    /// Canonical representatives of all elements, in increasing order.
    pub fn elements(&self, cap: u64) -> Result<Vec<Nil2Elem>> {
        if self.order() > cap as u128 {
            return Err(OfaError::Capacity { what: "2-step module".into(), size: self.order(), cap: cap as u128 });
        }
        let all = all_vectors(&self.ring, self.r1 + self.r0, self.ambient_order().min(u64::MAX as u128) as u64)?;
        let split = |v: Vec<El>| Nil2Elem { m1: v[..self.r1].to_vec(), m0: v[self.r1..].to_vec() };
        if self.is_split() {
            return Ok(all.into_iter().map(split).collect());
        }
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for v in all {
            let x = split(v);
            if seen.contains(&x) {
                continue;
            }
            for a in &self.closure {
                seen.insert(self.raw_add(&x, a));
            }
            out.push(x);
        }
        Ok(out)
    }

    /// Canonical representatives of `M0`.
    pub fn m0_elements(&self, cap: u64) -> Result<Vec<Nil2Elem>> {
        let set: BTreeSet<Nil2Elem> =
            all_vectors(&self.ring, self.r0, cap)?.into_iter().map(|v| self.reduce(&Nil2Elem::central(v, self.r1))).collect();
        Ok(set.into_iter().collect())
    }

    /// Coordinatewise image along a ring homomorphism, without reduction.
    pub fn map_elem(&self, hom: &RingHom, x: &Nil2Elem) -> Nil2Elem {
        Nil2Elem { m1: x.m1.iter().map(|&c| hom.apply(c)).collect(), m0: x.m0.iter().map(|&c| hom.apply(c)).collect() }
    }

    /// `M ⊠ E` for `hom: K -> E`, presented as the split extension of
    /// `E ⊗ M1` by `E ⊗ M0` divided by the relations coming from the quotient.
    pub fn boxtimes(&self, hom: &RingHom) -> Result<Boxtimes> {
        if hom.src != self.ring {
            return structural("homomorphism source is not the coefficient ring");
        }
        let e = &hom.dst;
        let b = self.b.iter().map(|v| v.iter().map(|&c| hom.apply(c)).collect()).collect();
        let split = Nil2Module::split(e, self.r0, self.r1, b)?;
        if self.is_split() {
            return Ok(Boxtimes { module: split, hom: hom.clone(), injective: true, witness: None });
        }
        // a small generating set of X as a group
        let mut xgens: Vec<Nil2Elem> = Vec::new();
        let mut span = BTreeSet::from([self.zero()]);
        for x in &self.closure {
            if !span.contains(x) {
                xgens.push(x.clone());
                span = self.generated_subgroup(&xgens, NIL2_ENUM_CAP)?;
            }
        }
        let es: Vec<El> = e.elements().collect();
        let mut rel: BTreeSet<Nil2Elem> = BTreeSet::new();
        for x in &xgens {
            let img = self.map_elem(hom, x);
            for &k in &es {
                rel.insert(split.raw_act(&img, k));
            }
        }
        // E-span of the image of X ∩ M0
        let y_img: Vec<Nil2Elem> = self.closure.iter().filter(|x| x.m1.iter().all(|&c| c == 0)).map(|x| self.map_elem(hom, x)).collect();
        let mut y_gens = BTreeSet::new();
        for y in &y_img {
            for &k in &es {
                y_gens.insert(Nil2Elem::central(vscale(e, k, &y.m0), self.r1));
            }
        }
        let y_span = split.generated_subgroup(&y_gens.iter().cloned().collect::<Vec<_>>(), NIL2_ENUM_CAP)?;
        rel.extend(y_gens);
        let mut normal = BTreeSet::new();
        for r in &rel {
            for i in 0..self.r1 {
                for &k in &es {
                    normal.insert(split.raw_commutator(&split.raw_act(&split.e1(i), k), r));
                }
            }
        }
        rel.extend(normal);
        let rel: Vec<Nil2Elem> = rel.into_iter().collect();
        let closure = split.generated_subgroup(&rel, NIL2_ENUM_CAP)?;
        let witness = closure.iter().find(|r| r.m1.iter().all(|&c| c == 0) && !y_span.contains(*r)).cloned();
        let module = split.with_closure(rel, closure);
        Ok(Boxtimes { module, hom: hom.clone(), injective: witness.is_none(), witness })
    }

    /// The trivial-kernel test for `E ⊗ M0 -> M ⊠ E`.
    pub fn universality_probe(&self, hom: &RingHom) -> Result<Probe> {
        let bx = self.boxtimes(hom)?;
        Ok(Probe { injective: bx.injective, witness: bx.witness, extension_order: bx.module.order() })
    }

    pub fn elem_json(&self, x: &Nil2Elem) -> Value {
        let k = &self.ring;
        json!({
            "m1": x.m1.iter().map(|&c| k.elem(c)).collect::<Vec<_>>(),
            "m0": x.m0.iter().map(|&c| k.elem(c)).collect::<Vec<_>>(),
        })
    }

    pub fn to_json(&self) -> Value {
        let k = &self.ring;
        let b: Vec<Vec<Vec<Vec<u64>>>> = (0..self.r1)
            .map(|i| (0..self.r1).map(|j| self.b[i * self.r1 + j].iter().map(|&c| k.elem(c)).collect()).collect())
            .collect();
        json!({
            "ring": k.spec(),
            "r0": self.r0,
            "r1": self.r1,
            "b": b,
            "quotient_generators": self.gens.iter().map(|g| self.elem_json(g)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Nil2Module> {
        let bad = |what: &str| OfaError::Structural(format!("2-step module JSON: {what}"));
        let spec: RingSpec = serde_json::from_value(v["ring"].clone()).map_err(|e| bad(&e.to_string()))?;
        let ring = Ring::new(spec)?;
        let r0 = v["r0"].as_u64().ok_or_else(|| bad("missing r0"))? as usize;
        let r1 = v["r1"].as_u64().ok_or_else(|| bad("missing r1"))? as usize;
        let el = |c: &Value| -> Result<El> {
            let coords: Vec<u64> = serde_json::from_value(c.clone()).map_err(|e| bad(&e.to_string()))?;
            if coords.len() != ring.dim() || coords.iter().zip(ring.moduli()).any(|(x, m)| x >= m) {
                return Err(bad("ring element out of range"));
            }
            Ok(ring.encode(&coords))
        };
        let vec_of = |c: &Value, len: usize| -> Result<Vec<El>> {
            let arr = c.as_array().ok_or_else(|| bad("expected an array"))?;
            if arr.len() != len {
                return Err(bad("vector has the wrong length"));
            }
            arr.iter().map(el).collect()
        };
        let rows = v["b"].as_array().ok_or_else(|| bad("missing b"))?;
        if rows.len() != r1 {
            return Err(bad("b has the wrong number of rows"));
        }
        let mut b = Vec::new();
        for row in rows {
            let row = row.as_array().ok_or_else(|| bad("b row is not an array"))?;
            if row.len() != r1 {
                return Err(bad("b row has the wrong length"));
            }
            for c in row {
                b.push(vec_of(c, r0)?);
            }
        }
        let m = Nil2Module::split(&ring, r0, r1, b)?;
        let gens = match v.get("quotient_generators") {
            None | Some(Value::Null) => Vec::new(),
            Some(g) => g
                .as_array()
                .ok_or_else(|| bad("quotient_generators is not an array"))?
                .iter()
                .map(|x| Ok(Nil2Elem { m1: vec_of(&x["m1"], r1)?, m0: vec_of(&x["m0"], r0)? }))
                .collect::<Result<Vec<_>>>()?,
        };
        if gens.is_empty() {
            Ok(m)
        } else {
            m.with_quotient(gens)
        }
    }
}

impl TwoStep for Nil2Module {
    type Elem = Nil2Elem;

    fn scalars(&self) -> &Ring {
        &self.ring
    }

    fn zero(&self) -> Nil2Elem {
        Nil2Module::zero(self)
    }

    fn add(&self, x: &Nil2Elem, y: &Nil2Elem) -> Nil2Elem {
        Nil2Module::add(self, x, y)
    }

    fn neg(&self, x: &Nil2Elem) -> Nil2Elem {
        Nil2Module::neg(self, x)
    }

    fn act(&self, x: &Nil2Elem, k: El) -> Nil2Elem {
        Nil2Module::act(self, x, k)
    }

    fn tau(&self, x: &Nil2Elem) -> Nil2Elem {
        Nil2Module::tau(self, x)
    }

    fn in_m0(&self, x: &Nil2Elem) -> bool {
        Nil2Module::in_m0(self, x)
    }

    fn scale0(&self, k: El, x: &Nil2Elem) -> Nil2Elem {
        Nil2Module::scale0(self, k, x).expect("element of M0")
    }
}

#[derive(Clone, Debug)]
pub struct Boxtimes {
    /// The extension; its divided subgroup is the full relation subgroup.
    pub module: Nil2Module,
    pub hom: RingHom,
    /// Whether `E ⊗ M0` embeds.
    pub injective: bool,
    /// A relation lying in `E ⊗ M0` but outside the image of `E ⊗ (X ∩ M0)`.
    pub witness: Option<Nil2Elem>,
}

impl Boxtimes {
    /// `m ⊠ e`.
    pub fn image(&self, src: &Nil2Module, x: &Nil2Elem, e: El) -> Nil2Elem {
        self.module.act(&src.map_elem(&self.hom, x), e)
    }

    /// `e ⊗ m` for `m ∈ M0` given by its central coordinates.
    pub fn tensor0(&self, e: El, m0: &[El]) -> Nil2Elem {
        let v: Vec<El> = m0.iter().map(|&c| self.module.ring.mul(e, self.hom.apply(c))).collect();
        self.module.reduce(&Nil2Elem::central(v, self.module.r1))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Probe {
    pub injective: bool,
    pub witness: Option<Nil2Elem>,
    #[serde(serialize_with = "crate::nilpotent2::ser_u128")]
    pub extension_order: u128,
}

pub(crate) fn ser_u128<S: serde::Serializer>(x: &u128, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// `(Z/m)[s] / (s^2 - 2)`.
pub fn sqrt2_ring(m: u64) -> Result<Ring> {
    if m < 2 {
        return structural("modulus must be at least 2");
    }
    Ring::new(RingSpec::PolyQuotient { base: Box::new(RingSpec::ZMod(m)), modulus: vec![vec![(m - 2) % m], vec![0], vec![1]] })
}

#[derive(Clone, Debug)]
pub struct Sqrt2Counterexample {
    pub report: Report,
    pub module: Nil2Module,
    pub extension: Boxtimes,
    /// Image of `F2 ⊗ M0` in `M ⊠ F2`.
    pub image: Vec<Nil2Elem>,
}

/// The module `K ∔ K` over `K = (Z/m)[s]/(s^2 - 2)` with `b(x, y) = xy`,
/// divided by the invariant subgroup generated by `s ∔ 1`, and its
/// extension to `F2` along `s -> 0`.
pub fn counterexample_sqrt2(m: u64) -> Result<Sqrt2Counterexample> {
    if !m.is_multiple_of(2) {
        return Err(OfaError::Precondition(format!("modulus {m} is odd, so K has no map to F2")));
    }
    let k = sqrt2_ring(m)?;
    let s = k.encode(&[0, 1]);
    let f2 = Ring::zmod(2);
    let hom = RingHom::new(&k, &f2, vec![1, 0])?;
    let split = Nil2Module::split(&k, 1, 1, vec![vec![k.one()]])?;
    let g = Nil2Elem { m1: vec![s], m0: vec![k.one()] };
    let plain = split.invariant_closure(std::slice::from_ref(&g), NIL2_ENUM_CAP)?;
    let module = split.with_quotient(vec![g.clone()])?;
    let bx = module.boxtimes(&hom)?;
    let image: BTreeSet<Nil2Elem> = f2.elements().map(|e| bx.tensor0(e, &[k.one()])).collect();
    let image: Vec<Nil2Elem> = image.into_iter().collect();

    let mut rep = Report::new(format!("non-universal module over (Z/{m})[s]/(s^2-2)"));
    let x_m0 = module.closure().iter().filter(|x| x.m1[0] == 0).count();
    rep.note(format!("|K| = {}, |K ∔ K| = {}", k.size(), split.ambient_order()));
    rep.note(format!("|X| = {} (plain invariant closure {}), |X ∩ M0| = {x_m0}", module.closure().len(), plain.len()));
    rep.note(format!("|M| = {}, |M ⊠ F2| = {}", module.order(), bx.module.order()));
    let probe_elem = module.act(&Nil2Elem { m1: vec![k.one()], m0: vec![s] }, s);
    rep.note(format!("(1 ∔ s)·s reduces to {}", module.elem_json(&probe_elem)));
    rep.note(format!("image of F2 ⊗ M0: {}", serde_json::to_string(&image.iter().map(|x| bx.module.elem_json(x)).collect::<Vec<_>>()).unwrap()));
    rep.check("closure_is_normal_and_linear", plain.iter().cloned().collect::<Vec<_>>() == module.closure(), || {
        format!("admissible closure has {} elements, plain {}", module.closure().len(), plain.len())
    });
    rep.check("closure_meets_m0_trivially", x_m0 == 1, || format!("|X ∩ M0| = {x_m0}"));
    let tau_bad = module.closure().iter().find(|x| !split.raw_tau(x).is_zero()).cloned();
    rep.check("closure_in_kernel_of_tau", tau_bad.is_none(), || format!("{tau_bad:?}"));
    rep.check("image_of_m0_vanishes", image.iter().all(|x| x.is_zero()), || format!("{} nonzero image elements", image.iter().filter(|x| !x.is_zero()).count()));
    rep.check("probe_not_injective", !bx.injective, || "E ⊗ M0 embeds".into());
    Ok(Sqrt2Counterexample { report: rep, module, extension: bx, image })
}
