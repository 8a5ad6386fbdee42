//! Descent of split 2-step modules along finite free extensions `E / K`.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff_ring::{El, Extension, Ring, RingHom, RingSpec};
use crate::error::{structural, OfaError, Result};
use crate::form_ring::{det, mat_mul};
use crate::report::Report;

use super::axioms::{axioms_check, DEFAULT_BUDGET};
use super::{all_vectors, vadd, vneg, Nil2Elem, Nil2Module, NIL2_ENUM_CAP};

/// Extensions with tensor towers available for descent.
pub fn registered_extensions() -> Vec<(&'static str, Extension)> {
    let gr4 = Ring::new(RingSpec::PolyQuotient { base: Box::new(RingSpec::ZMod(4)), modulus: vec![vec![1], vec![1], vec![1]] })
        .expect("Galois ring of order 16");
    vec![
        ("f2-f4", Extension::new(&Ring::zmod(2), &Ring::gf(2, 2)).expect("F4 over F2")),
        ("f3-f9", Extension::new(&Ring::zmod(3), &Ring::gf(3, 2)).expect("F9 over F3")),
        ("z4-gr4", Extension::new(&Ring::zmod(4), &gr4).expect("Galois ring over Z/4")),
    ]
}

pub fn registered_extension(name: &str) -> Result<Extension> {
    registered_extensions()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, e)| e)
        .ok_or_else(|| OfaError::Structural(format!("unknown extension {name}; known: f2-f4, f3-f9, z4-gr4")))
}

/// Morphism of split 2-step modules, given by the images of the `M1` basis
/// and a linear map on `M0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nil2Map {
    pub ones: Vec<Nil2Elem>,
    /// Row-major `r0 × r0` matrix.
    pub d: Vec<El>,
}

impl Nil2Map {
    pub fn identity(m: &Nil2Module) -> Nil2Map {
        Nil2Map { ones: (0..m.r1).map(|j| m.e1(j)).collect(), d: crate::form_ring::mat_identity(&m.ring, m.r0) }
    }

    /// `x -> x·u`.
    pub fn scalar(m: &Nil2Module, u: El) -> Nil2Map {
        let r = &m.ring;
        let uu = r.mul(u, u);
        Nil2Map { ones: (0..m.r1).map(|j| m.raw_act(&m.e1(j), u)).collect(), d: crate::form_ring::mat_identity(r, m.r0).iter().map(|&c| r.mul(c, uu)).collect() }
    }

    fn apply_d(&self, ring: &Ring, v: &[El]) -> Vec<El> {
        let n = v.len();
        (0..n).map(|a| (0..n).fold(ring.zero(), |acc, b| ring.add(acc, ring.mul(self.d[a * n + b], v[b])))).collect()
    }

    pub fn apply(&self, src: &Nil2Module, dst: &Nil2Module, x: &Nil2Elem) -> Nil2Elem {
        let r = &src.ring;
        let mut acc = dst.zero();
        for (j, &k) in x.m1.iter().enumerate() {
            acc = dst.raw_add(&acc, &dst.raw_act(&self.ones[j], k));
        }
        // the ordered sum of the k_j e_j overshoots x1 ∔ 0 by sum_{i<j} k_i k_j b(e_i, e_j)
        let mut corr = vec![0; src.r0];
        for i in 0..src.r1 {
            for j in i + 1..src.r1 {
                let k = r.mul(x.m1[i], x.m1[j]);
                for (c, &v) in corr.iter_mut().zip(&src.b[i * src.r1 + j]) {
                    *c = r.add(*c, r.mul(k, v));
                }
            }
        }
        let central = self.apply_d(r, &vadd(r, &x.m0, &vneg(r, &corr)));
        dst.raw_add(&acc, &Nil2Elem::central(central, dst.r1))
    }

    pub fn base_change(&self, hom: &RingHom) -> Nil2Map {
        let f = |v: &[El]| v.iter().map(|&c| hom.apply(c)).collect::<Vec<_>>();
        Nil2Map { ones: self.ones.iter().map(|x| Nil2Elem { m1: f(&x.m1), m0: f(&x.m0) }).collect(), d: f(&self.d) }
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &Nil2Map, mid: &Nil2Module, dst: &Nil2Module) -> Nil2Map {
        Nil2Map { ones: self.ones.iter().map(|x| after.apply(mid, dst, x)).collect(), d: mat_mul(&mid.ring, mid.r0, &after.d, &self.d) }
    }

    /// Morphism conditions on generators, bijectivity, and sampled additivity
    /// and equivariance.
    pub fn check(&self, src: &Nil2Module, dst: &Nil2Module, samples: u64, seed: u64) -> Report {
        let r = &src.ring;
        let mut rep = Report::new("2-step module isomorphism");
        let shape_ok = src.ring == dst.ring
            && src.r0 == dst.r0
            && src.r1 == dst.r1
            && self.ones.len() == src.r1
            && self.d.len() == src.r0 * src.r0
            && self.ones.iter().all(|x| dst.validate_elem(x).is_ok());
        rep.check("shape", shape_ok, || "map does not match the modules".into());
        if !shape_ok {
            return rep;
        }
        let (r0, r1) = (src.r0, src.r1);
        let mut bad = None;
        for i in 0..r1 {
            for j in 0..r1 {
                let lhs = self.apply_d(r, &src.raw_commutator(&src.e1(i), &src.e1(j)).m0);
                if lhs != dst.raw_commutator(&self.ones[i], &self.ones[j]).m0 {
                    bad.get_or_insert((i, j));
                }
            }
        }
        rep.check("preserves_commutators", bad.is_none(), || format!("basis pair {bad:?}"));
        let bad_tau = (0..r1).find(|&j| self.apply_d(r, &src.raw_tau(&src.e1(j)).m0) != dst.raw_tau(&self.ones[j]).m0);
        rep.check("preserves_tau", bad_tau.is_none(), || format!("basis vector {bad_tau:?}"));
        let a: Vec<El> = (0..r1 * r1).map(|idx| self.ones[idx % r1].m1[idx / r1]).collect();
        rep.check("bijective_on_quotient", r.is_unit(det(r, r1, &a)), || "M1 matrix is not invertible".into());
        rep.check("bijective_on_m0", r.is_unit(det(r, r0, &self.d)), || "M0 matrix is not invertible".into());
        let q = r.size();
        let random = |rng: &mut ChaCha8Rng| Nil2Elem {
            m1: (0..r1).map(|_| rng.gen_range(0..q) as El).collect(),
            m0: (0..r0).map(|_| rng.gen_range(0..q) as El).collect(),
        };
        rep.check_all("additive", samples, |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ i.wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let (x, y) = (random(&mut rng), random(&mut rng));
            let lhs = self.apply(src, dst, &src.raw_add(&x, &y));
            (lhs != dst.raw_add(&self.apply(src, dst, &x), &self.apply(src, dst, &y))).then(|| format!("{x:?} {y:?}"))
        });
        rep.check_all("equivariant", samples, |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 7 ^ i.wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let x = random(&mut rng);
            let k = rng.gen_range(0..q) as El;
            (self.apply(src, dst, &src.raw_act(&x, k)) != dst.raw_act(&self.apply(src, dst, &x), k)).then(|| format!("{x:?} k={k}"))
        });
        rep
    }
}

fn pullback(n: &Nil2Module, hom: &RingHom) -> Result<Nil2Module> {
    Ok(n.boxtimes(hom)?.module)
}

/// A split module `N` over `E` with `psi: i1^* N -> i2^* N`.
#[derive(Clone, Debug)]
pub struct DescentDatum {
    pub ext: Extension,
    pub n: Nil2Module,
    pub psi: Nil2Map,
    pub i1: RingHom,
    pub i2: RingHom,
}

const ISO_SAMPLES: u64 = 200;

impl DescentDatum {
    pub fn new(ext: &Extension, n: Nil2Module, psi: Nil2Map) -> Result<DescentDatum> {
        if &n.ring != ext.ext() {
            return structural("module is not defined over the extension ring");
        }
        if !n.is_split() {
            return structural("descent is implemented for split modules");
        }
        let d = DescentDatum { i1: ext.tower_hom(1, 2, &[0]), i2: ext.tower_hom(1, 2, &[1]), ext: ext.clone(), n, psi };
        let rep = d.psi.check(&d.layer1(&d.i1)?, &d.layer1(&d.i2)?, ISO_SAMPLES, 0);
        if let Some(c) = rep.failures().first() {
            return Err(OfaError::Precondition(format!("psi is not an isomorphism: {} ({})", c.name, c.witness.clone().unwrap_or_default())));
        }
        Ok(d)
    }

    /// `M ⊠ E` with the identity as `psi`.
    pub fn canonical(m: &Nil2Module, ext: &Extension) -> Result<DescentDatum> {
        if !m.is_split() {
            return structural("descent is implemented for split modules");
        }
        let n = m.boxtimes(&ext.inclusion())?.module;
        let psi = Nil2Map::identity(&pullback(&n, &ext.tower_hom(1, 2, &[0]))?);
        DescentDatum::new(ext, n, psi)
    }

    fn layer1(&self, hom: &RingHom) -> Result<Nil2Module> {
        pullback(&self.n, hom)
    }

    /// `i23^* psi ∘ i12^* psi = i13^* psi`, compared on generators.
    pub fn cocycle_check(&self) -> Result<std::result::Result<(), String>> {
        let e = &self.ext;
        let j: Vec<Nil2Module> = (0..3).map(|s| pullback(&self.n, &e.tower_hom(1, 3, &[s]))).collect::<Result<_>>()?;
        let p12 = self.psi.base_change(&e.tower_hom(2, 3, &[0, 1]));
        let p13 = self.psi.base_change(&e.tower_hom(2, 3, &[0, 2]));
        let p23 = self.psi.base_change(&e.tower_hom(2, 3, &[1, 2]));
        let lhs = p12.then(&p23, &j[1], &j[2]);
        let r = &j[0].ring;
        for (idx, (a, b)) in lhs.ones.iter().zip(&p13.ones).enumerate() {
            if a != b {
                return Ok(Err(format!("generator e1[{idx}]: composite gives {}, direct gives {}", j[2].elem_json(a), j[2].elem_json(b))));
            }
        }
        if lhs.d != p13.d {
            let show = |d: &[El]| d.iter().map(|&c| r.show(c)).collect::<Vec<_>>().join(",");
            return Ok(Err(format!("M0 part: composite gives [{}], direct gives [{}]", show(&lhs.d), show(&p13.d))));
        }
        Ok(Ok(()))
    }

    /// The equalizer `{n : psi(i1 n) = i2 n}` as a split module over `K`.
    pub fn descend(&self) -> Result<Descended> {
        if let Err(w) = self.cocycle_check()? {
            return Err(OfaError::Precondition(format!("cocycle condition fails: {w}")));
        }
        let (l1, l2) = (self.layer1(&self.i1)?, self.layer1(&self.i2)?);
        let n = &self.n;
        let vs = all_vectors(&n.ring, n.r1 + n.r0, NIL2_ENUM_CAP)?;
        let eq: Vec<Nil2Elem> = vs
            .into_iter()
            .map(|v| Nil2Elem { m1: v[..n.r1].to_vec(), m0: v[n.r1..].to_vec() })
            .filter(|x| self.psi.apply(&l1, &l2, &n.map_elem(&self.i1, x)) == n.map_elem(&self.i2, x))
            .collect();
        let incl = self.ext.inclusion();
        let k = &self.ext.base;
        let set1: BTreeSet<Vec<El>> = eq.iter().map(|x| x.m1.clone()).collect();
        let set0: BTreeSet<Vec<El>> = eq.iter().filter(|x| x.m1.iter().all(|&c| c == 0)).map(|x| x.m0.clone()).collect();
        let (basis1, coords1) = free_basis(k, &incl, &n.ring, &set1)?;
        let (basis0, coords0) = free_basis(k, &incl, &n.ring, &set0)?;
        let mut lift_of: HashMap<&Vec<El>, &Nil2Elem> = HashMap::new();
        for x in &eq {
            lift_of.entry(&x.m1).or_insert(x);
        }
        let lifts: Vec<Nil2Elem> = basis1.iter().map(|u| lift_of[u].clone()).collect();
        let (r1, r0) = (basis1.len(), basis0.len());
        let mut b = Vec::with_capacity(r1 * r1);
        for i in 0..r1 {
            for j in 0..r1 {
                let v = match i.cmp(&j) {
                    std::cmp::Ordering::Greater => n.raw_commutator(&lifts[i], &lifts[j]).m0,
                    std::cmp::Ordering::Equal => vneg(&n.ring, &n.raw_tau(&lifts[i]).m0),
                    std::cmp::Ordering::Less => vec![0; n.r0],
                };
                b.push(coords0.get(&v).cloned().ok_or_else(|| OfaError::Structural("cocycle value leaves the descended M0".into()))?);
            }
        }
        let module = Nil2Module::split(k, r0, r1, b)?;
        Ok(Descended { module, n: n.clone(), incl, lifts, basis0, coords1, coords0, equalizer: eq })
    }
}

/// A basis of `set` as a free `K`-module inside `E^r`, chosen greedily in
/// increasing order, with the coordinates of every element.
fn free_basis(k: &Ring, incl: &RingHom, e: &Ring, set: &BTreeSet<Vec<El>>) -> Result<(Vec<Vec<El>>, HashMap<Vec<El>, Vec<El>>)> {
    let len = set.iter().next().map_or(0, |v| v.len());
    let mut basis = Vec::new();
    let mut span: HashMap<Vec<El>, Vec<El>> = HashMap::from([(vec![0; len], Vec::new())]);
    let ks: Vec<El> = k.elements().collect();
    for v in set {
        if span.len() == set.len() {
            break;
        }
        if span.contains_key(v) {
            continue;
        }
        let mut next = HashMap::with_capacity(span.len() * ks.len());
        for (s, c) in &span {
            for &kk in &ks {
                let w: Vec<El> = s.iter().zip(v).map(|(&a, &b)| e.add(a, e.mul(incl.apply(kk), b))).collect();
                let mut cc = c.clone();
                cc.push(kk);
                next.insert(w, cc);
            }
        }
        if next.len() == span.len() * ks.len() && next.keys().all(|w| set.contains(w)) {
            basis.push(v.clone());
            span = next;
        }
    }
    if span.len() != set.len() {
        return structural("descended module is not free over the base ring");
    }
    Ok((basis, span))
}

#[derive(Clone, Debug)]
pub struct Descended {
    /// The descended module over `K`.
    pub module: Nil2Module,
    pub n: Nil2Module,
    pub incl: RingHom,
    /// Lifts in `N` of the chosen basis of the quotient.
    pub lifts: Vec<Nil2Elem>,
    pub basis0: Vec<Vec<El>>,
    coords1: HashMap<Vec<El>, Vec<El>>,
    coords0: HashMap<Vec<El>, Vec<El>>,
    pub equalizer: Vec<Nil2Elem>,
}

impl Descended {
    fn section(&self, x1: &[El]) -> Nil2Elem {
        let mut acc = self.n.zero();
        for (l, &k) in self.lifts.iter().zip(x1) {
            acc = self.n.raw_add(&acc, &self.n.raw_act(l, self.incl.apply(k)));
        }
        acc
    }

    /// The element of `N` represented by `x`.
    pub fn embed(&self, x: &Nil2Elem) -> Nil2Elem {
        let e = &self.n.ring;
        let mut v = vec![0; self.n.r0];
        for (g, &k) in self.basis0.iter().zip(&x.m0) {
            v = v.iter().zip(g).map(|(&a, &b)| e.add(a, e.mul(self.incl.apply(k), b))).collect();
        }
        self.n.raw_add(&self.section(&x.m1), &Nil2Elem::central(v, self.n.r1))
    }

    /// Coordinates of an element of the equalizer.
    pub fn coords(&self, y: &Nil2Elem) -> Option<Nil2Elem> {
        let m1 = self.coords1.get(&y.m1)?.clone();
        let c = self.n.raw_add(&self.n.raw_neg(&self.section(&m1)), y);
        let m0 = self.coords0.get(&c.m0)?.clone();
        Some(Nil2Elem { m1, m0 })
    }
}

/// Extend a split module to `E` with the canonical `psi`, descend, and
/// compare with the original through the unit map.
pub fn descent_roundtrip(m: &Nil2Module, ext: &Extension, seed: u64) -> Result<Report> {
    let datum = DescentDatum::canonical(m, ext)?;
    let des = datum.descend()?;
    let elems = m.elements(NIL2_ENUM_CAP)?;
    let unit = |x: &Nil2Elem| des.coords(&m.map_elem(&des.incl, x));
    let images: Vec<Option<Nil2Elem>> = elems.iter().map(unit).collect();
    let mut rep = Report::new(format!("descent roundtrip along {:?}", ext.ext().spec()));
    let undefined = elems.iter().zip(&images).find(|(_, y)| y.is_none()).map(|(x, _)| x.clone());
    rep.check("unit_lands_in_equalizer", undefined.is_none(), || format!("{undefined:?}"));
    if undefined.is_some() {
        return Ok(rep);
    }
    let images: Vec<Nil2Elem> = images.into_iter().flatten().collect();
    let distinct: BTreeSet<&Nil2Elem> = images.iter().collect();
    rep.check("unit_injective", distinct.len() == elems.len(), || format!("{} images for {} elements", distinct.len(), elems.len()));
    rep.check("unit_surjective", des.module.order() == elems.len() as u128, || format!("descended order {}", des.module.order()));
    rep.check("bijective_on_m0", des.module.r0 == m.r0, || format!("descended M0 rank {}", des.module.r0));
    rep.check("bijective_on_quotient", des.module.r1 == m.r1, || format!("descended quotient rank {}", des.module.r1));
    let n = elems.len() as u64;
    let pairs = (n * n).min(DEFAULT_BUDGET);
    rep.check_all("unit_additive", pairs, |i| {
        let (a, b) = if n * n <= DEFAULT_BUDGET { ((i / n) as usize, (i % n) as usize) } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ i);
            (rng.gen_range(0..n) as usize, rng.gen_range(0..n) as usize)
        };
        let s = m.add(&elems[a], &elems[b]);
        let idx = elems.binary_search(&s).expect("canonical element");
        (images[idx] != des.module.add(&images[a], &images[b])).then(|| format!("{:?} {:?}", elems[a], elems[b]))
    });
    let ks: Vec<El> = m.ring.elements().collect();
    let nk = ks.len() as u64;
    rep.check_all("unit_equivariant", n * nk, |i| {
        let (a, k) = ((i / nk) as usize, ks[(i % nk) as usize]);
        let idx = elems.binary_search(&m.act(&elems[a], k)).expect("canonical element");
        (images[idx] != des.module.act(&images[a], k)).then(|| format!("{:?} k={}", elems[a], m.ring.show(k)))
    });
    let des_elems = des.module.elements(NIL2_ENUM_CAP)?;
    rep.merge("descended_", axioms_check(&des.module, &des_elems, DEFAULT_BUDGET, seed));
    Ok(rep)
}
