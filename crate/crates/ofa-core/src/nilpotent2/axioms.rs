//! The defining identities of 2-step nilpotent modules, checked on any
//! implementation of [`TwoStep`].

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff_ring::{El, Ring};
use crate::report::Report;

/// Default evaluation budget per identity: below it checks are exhaustive,
/// above it they are sampled.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

pub trait TwoStep: Sync {
    type Elem: Clone + PartialEq + std::fmt::Debug + Send + Sync;

    fn scalars(&self) -> &Ring;
    fn zero(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    /// Right action of the multiplicative monoid of `K`.
    fn act(&self, x: &Self::Elem, k: El) -> Self::Elem;
    fn tau(&self, x: &Self::Elem) -> Self::Elem;
    fn in_m0(&self, x: &Self::Elem) -> bool;
    /// Left `K`-module structure on `M0`.
    fn scale0(&self, k: El, x: &Self::Elem) -> Self::Elem;

    fn commutator(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let s = self.add(x, y);
        self.add(&s, &self.add(&self.neg(x), &self.neg(y)))
    }
}

fn index_rng(seed: u64, i: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ i.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Decode index `i` into positions below `dims`, exhaustively if the product
/// fits, otherwise pseudo-randomly.
fn pick(i: u64, dims: &[u64], exhaustive: bool, seed: u64) -> Vec<usize> {
    if exhaustive {
        let mut rest = i;
        dims.iter()
            .map(|&d| {
                let v = rest % d;
                rest /= d;
                v as usize
            })
            .collect()
    } else {
        let mut rng = index_rng(seed, i);
        dims.iter().map(|&d| rng.gen_range(0..d) as usize).collect()
    }
}

fn plan(dims: &[u64], cap: u64) -> (u64, bool) {
    let total = dims.iter().fold(1u128, |a, &d| a * d as u128);
    if total <= cap as u128 {
        (total as u64, true)
    } else {
        (cap, false)
    }
}

/// Every identity is checked on all of `elems`; scalar pairs and element
/// pairs are sampled once their count exceeds `budget`.
pub fn axioms_check<T: TwoStep>(t: &T, elems: &[T::Elem], budget: u64, seed: u64) -> Report {
    let ring = t.scalars();
    let ks: Vec<El> = ring.elements().collect();
    let m0: Vec<T::Elem> = elems.iter().filter(|x| t.in_m0(x)).cloned().collect();
    let (n, nk, n0) = (elems.len() as u64, ks.len() as u64, m0.len() as u64);
    let zero = t.zero();
    let mut rep = Report::new("2-step nilpotent module axioms");
    if n == 0 {
        return rep;
    }
    let show = |x: &T::Elem| format!("{x:?}");

    rep.check_all("identity", n, |i| {
        let x = &elems[i as usize];
        (t.add(x, &zero) != *x || t.add(&zero, x) != *x).then(|| show(x))
    });
    rep.check_all("inverse", n, |i| {
        let x = &elems[i as usize];
        (t.add(x, &t.neg(x)) != zero).then(|| show(x))
    });
    rep.check_all("unital", n, |i| {
        let x = &elems[i as usize];
        (t.act(x, ring.one()) != *x).then(|| show(x))
    });
    rep.check_all("tau_in_m0", n, |i| {
        let x = &elems[i as usize];
        (!t.in_m0(&t.tau(x))).then(|| show(x))
    });
    rep.check_all("tau_on_m0_is_double", n0, |i| {
        let x = &m0[i as usize];
        (t.tau(x) != t.add(x, x)).then(|| show(x))
    });

    // each element against every scalar, or a sample of scalars
    let per = (budget / n).max(1);
    let (ck, kex) = plan(&[nk], per);
    rep.check_all("tau_of_act", n * ck, |i| {
        let x = &elems[(i / ck) as usize];
        let k = ks[pick(i % ck, &[nk], kex, seed)[0]];
        (t.tau(&t.act(x, k)) != t.scale0(ring.mul(k, k), &t.tau(x))).then(|| format!("{} k={}", show(x), ring.show(k)))
    });
    let (ckk, kkex) = plan(&[nk, nk], per);
    rep.check_all("act_multiplicative", n * ckk, |i| {
        let x = &elems[(i / ckk) as usize];
        let p = pick(i % ckk, &[nk, nk], kkex, seed);
        let (k, l) = (ks[p[0]], ks[p[1]]);
        (t.act(&t.act(x, k), l) != t.act(x, ring.mul(k, l))).then(|| format!("{} k={} l={}", show(x), ring.show(k), ring.show(l)))
    });
    rep.check_all("act_additive", n * ckk, |i| {
        let x = &elems[(i / ckk) as usize];
        let p = pick(i % ckk, &[nk, nk], kkex, seed);
        let (k, l) = (ks[p[0]], ks[p[1]]);
        let lhs = t.act(x, ring.add(k, l));
        let mid = t.scale0(ring.mul(k, l), &t.tau(x));
        let rhs = t.add(&t.add(&t.act(x, k), &mid), &t.act(x, l));
        (lhs != rhs).then(|| format!("{} k={} l={}", show(x), ring.show(k), ring.show(l)))
    });
    let (c0, ex0) = plan(&[n0.max(1), nk], budget);
    rep.check_all("act_on_m0", if n0 == 0 { 0 } else { c0 }, |i| {
        let p = pick(i, &[n0, nk], ex0, seed);
        let (x, k) = (&m0[p[0]], ks[p[1]]);
        (t.act(x, k) != t.scale0(ring.mul(k, k), x)).then(|| format!("{} k={}", show(x), ring.show(k)))
    });
    rep.check_all("m0_module", if n0 == 0 { 0 } else { c0 }, |i| {
        let p = pick(i, &[n0, nk], ex0, seed);
        let (x, k) = (&m0[p[0]], ks[p[1]]);
        let y = &m0[pick(i, &[n0], false, seed ^ 1)[0]];
        let ok = t.in_m0(&t.add(x, y))
            && t.scale0(k, &t.add(x, y)) == t.add(&t.scale0(k, x), &t.scale0(k, y))
            && t.scale0(ring.add(k, ring.one()), x) == t.add(&t.scale0(k, x), x);
        (!ok).then(|| format!("{} {} k={}", show(x), show(y), ring.show(k)))
    });

    let (cp, pex) = plan(&[n, n], budget);
    rep.check_all("associative", cp, |i| {
        let p = pick(i, &[n, n], pex, seed);
        let z = &elems[pick(i, &[n], false, seed ^ 2)[0]];
        let (x, y) = (&elems[p[0]], &elems[p[1]]);
        (t.add(&t.add(x, y), z) != t.add(x, &t.add(y, z))).then(|| format!("{} {} {}", show(x), show(y), show(z)))
    });
    rep.check_all("commutator_in_m0", cp, |i| {
        let p = pick(i, &[n, n], pex, seed);
        let (x, y) = (&elems[p[0]], &elems[p[1]]);
        (!t.in_m0(&t.commutator(x, y))).then(|| format!("{} {}", show(x), show(y)))
    });
    let (cc, cex) = plan(&[n, n0.max(1)], budget);
    rep.check_all("commutator_central", if n0 == 0 { 0 } else { cc }, |i| {
        let p = pick(i, &[n, n0], cex, seed);
        let (x, y) = (&elems[p[0]], &m0[p[1]]);
        (t.commutator(x, y) != zero).then(|| format!("{} {}", show(x), show(y)))
    });
    rep.check_all("commutator_scalar", cp, |i| {
        let p = pick(i, &[n, n], pex, seed);
        let q = pick(i, &[nk, nk], false, seed ^ 3);
        let (x, y, k, l) = (&elems[p[0]], &elems[p[1]], ks[q[0]], ks[q[1]]);
        let lhs = t.commutator(&t.act(x, k), &t.act(y, l));
        (lhs != t.scale0(ring.mul(k, l), &t.commutator(x, y))).then(|| format!("{} {} k={} l={}", show(x), show(y), ring.show(k), ring.show(l)))
    });
    rep.check_all("tau_of_sum", cp, |i| {
        let p = pick(i, &[n, n], pex, seed);
        let (x, y) = (&elems[p[0]], &elems[p[1]]);
        let rhs = t.add(&t.add(&t.tau(x), &t.commutator(x, y)), &t.tau(y));
        (t.tau(&t.add(x, y)) != rhs).then(|| format!("{} {}", show(x), show(y)))
    });
    rep
}
