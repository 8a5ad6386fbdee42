//! Dickson invariants and the odd orthogonal group `O~(2n+1)` with its
//! embedding into the even orthogonal group of rank one higher.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::clifford::{ClifElem, CliffordAlg};
use crate::coeff_ring::{El, Ring};
use crate::error::{structural, OfaError, Result};
use crate::form_ring::{self, AlgElem, Family};
use crate::report::Report;

use super::{UnitaryElem, UnitaryGroup, GROUP_CAP};

/// Clifford data needed to evaluate the Dickson invariant of an even orthogonal group.
#[derive(Clone, Debug)]
pub struct Dickson {
    clif: CliffordAlg,
    omega: ClifElem,
}

impl UnitaryGroup {
    pub fn dickson_context(&self) -> Result<Dickson> {
        let Family::OrthEven(n) = self.family() else {
            return structural("the Dickson invariant is defined here for the even orthogonal family");
        };
        if n == 0 {
            return structural("the Dickson invariant needs rank at least 1");
        }
        let clif = CliffordAlg::new(2 * n, self.ring())?;
        let omega = clif.center_idempotent()?;
        Ok(Dickson { clif, omega })
    }

    pub fn dickson_even(&self, ctx: &Dickson, g: &UnitaryElem) -> Result<El> {
        ctx.clif.dickson(&self.alpha_matrix(g)?, &ctx.omega)
    }

    pub fn det_alpha(&self, g: &UnitaryElem) -> Result<El> {
        let m = self.alpha_matrix(g)?;
        Ok(form_ring::det(self.ring(), self.alg().size(), &m))
    }
}

/// `1 - 2d`.
pub fn one_minus_two(r: &Ring, d: El) -> El {
    r.sub(r.one(), r.scale(2, d))
}

/// The embedding `O~(2n+1) -> O(2n+2)` induced by `e_0 -> e_{-n-1} + e_{n+1}`.
#[derive(Clone, Debug)]
pub struct OddEmbedding {
    pub odd: UnitaryGroup,
    pub even: UnitaryGroup,
    pub dickson: Dickson,
}

impl OddEmbedding {
    pub fn new(n: usize, ring: &Ring) -> Result<OddEmbedding> {
        let odd = UnitaryGroup::new(Family::OrthOdd(n), ring)?;
        let even = UnitaryGroup::new(Family::OrthEven(n + 1), ring)?;
        let dickson = even.dickson_context()?;
        Ok(OddEmbedding { odd, even, dickson })
    }

    fn top(&self) -> i32 {
        self.odd.family().n() as i32 + 1
    }

    /// The algebra morphism on `R`.
    pub fn map_alg(&self, x: &AlgElem) -> AlgElem {
        let (a, b) = (self.odd.alg(), self.even.alg());
        let r = &a.ring;
        let m = self.top();
        let lift = |i: i32| -> Vec<i32> { if i == 0 { vec![-m, m] } else { vec![i] } };
        let mut out = b.zero();
        for &(i, j) in a.basis() {
            let c = a.get(x, i, j);
            if c == 0 {
                continue;
            }
            for &p in &lift(i) {
                for &q in &lift(j) {
                    let k = b.idx(p, q);
                    out[k] = r.add(out[k], c);
                }
            }
        }
        out
    }

    pub fn embed(&self, g: &UnitaryElem) -> Result<UnitaryElem> {
        self.even
            .from_beta(&self.map_alg(&g.beta))
            .ok_or_else(|| OfaError::Structural("image of a unitary element is not unitary".into()))
    }

    /// `alpha(g) (e_{-m} - e_m) = e_{-m} - e_m`.
    pub fn fixes_vector(&self, g: &UnitaryElem) -> bool {
        let b = self.even.alg();
        let r = self.even.ring();
        let m = self.top();
        let mut v = vec![0; b.size()];
        v[b.pos(-m)] = r.one();
        v[b.pos(m)] = r.neg(r.one());
        let alpha = self.even.alpha_matrix(g).expect("even family");
        let l = b.size();
        (0..l).all(|row| {
            let s = (0..l).fold(0, |acc, c| r.add(acc, r.mul(alpha[row * l + c], v[c])));
            s == v[row]
        })
    }

    pub fn dickson_odd(&self, g: &UnitaryElem) -> Result<El> {
        self.even.dickson_even(&self.dickson, &self.embed(g)?)
    }

    /// `1 + rep(beta(g))` on the odd module.
    pub fn rep_matrix(&self, g: &UnitaryElem) -> Vec<El> {
        let a = self.odd.alg();
        a.add(&a.rep_odd(&g.beta).expect("odd family"), &a.diag_sum())
    }
}

/// Matrices of `SO(3, K)` on the split module with basis `e_-1, e_0, e_1`, sorted.
pub fn so3_enumerate(ring: &Ring) -> Result<Vec<Vec<El>>> {
    let q = ring.size();
    let total = (q as u128).pow(9);
    if total > 1 << 24 {
        return Err(OfaError::Capacity { what: "3x3 matrices".into(), size: total, cap: 1 << 24 });
    }
    let clif = CliffordAlg::new(3, ring)?;
    let one = ring.one();
    let mut out: Vec<Vec<El>> = (0..total as u64)
        .into_par_iter()
        .filter_map(|mut idx| {
            let h: Vec<El> = (0..9)
                .map(|_| {
                    let v = (idx % q) as El;
                    idx /= q;
                    v
                })
                .collect();
            (clif.preserves_form(&h) && form_ring::det(ring, 3, &h) == one).then_some(h)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Verify the decomposition `O~(3, K) = SO(3, K) x (Z/2)(K)` by enumeration.
pub fn so_odd_split(ring: &Ring, with_image: bool) -> Result<Report> {
    let emb = OddEmbedding::new(1, ring)?;
    let (g, a, r) = (&emb.odd, emb.odd.alg(), ring);
    let mut rep = Report::new(format!("odd orthogonal split, rank 3 over {:?}", ring.spec()));
    let elems = g.enumerate(GROUP_CAP)?;
    let so3 = so3_enumerate(ring)?;
    let idem = ring.idempotents(1 << 20)?;
    rep.note(format!("|O~(3)| = {}, |SO(3)| = {}, |(Z/2)(K)| = {}", elems.len(), so3.len(), idem.len()));
    rep.check("order_product", elems.len() == so3.len() * idem.len(), || {
        format!("{} != {} * {}", elems.len(), so3.len(), idem.len())
    });

    let dick: Vec<Result<El>> = elems.par_iter().map(|x| emb.dickson_odd(x)).collect();
    let dick: Vec<El> = dick.into_iter().collect::<Result<_>>()?;
    rep.check_all("dickson_idempotent", elems.len() as u64, |i| {
        let d = dick[i as usize];
        (r.mul(d, d) != d).then(|| g.show(&elems[i as usize]))
    });
    rep.check_all("det_rep_is_one_minus_two_dickson", elems.len() as u64, |i| {
        let x = &elems[i as usize];
        let det = form_ring::det(r, 3, &emb.rep_matrix(x));
        (det != one_minus_two(r, dick[i as usize])).then(|| g.show(x))
    });
    let n = elems.len();
    rep.check_all("dickson_homomorphism", (n * n) as u64, |k| {
        let (i, j) = (k as usize / n, k as usize % n);
        let xy = g.mul(&elems[i], &elems[j]);
        let Ok(pos) = elems.binary_search(&xy) else {
            return Some(format!("product of {i} and {j} not enumerated"));
        };
        let expect = r.idem_op(dick[i], dick[j]);
        (dick[pos] != expect).then(|| format!("{} * {}", g.show(&elems[i]), g.show(&elems[j])))
    });

    let kernel: Vec<&UnitaryElem> = elems.iter().zip(&dick).filter(|(_, &d)| d == 0).map(|(x, _)| x).collect();
    let images: Vec<Vec<El>> = kernel.iter().map(|x| emb.rep_matrix(x)).collect();
    let image_set: BTreeSet<&Vec<El>> = images.iter().collect();
    let so3_set: BTreeSet<&Vec<El>> = so3.iter().collect();
    rep.check("rep_kernel_injective", image_set.len() == kernel.len(), || {
        format!("{} kernel elements, {} images", kernel.len(), image_set.len())
    });
    rep.check("rep_kernel_onto_so3", image_set == so3_set, || {
        let extra = image_set.difference(&so3_set).count();
        let missing = so3_set.difference(&image_set).count();
        format!("{extra} images outside SO(3), {missing} elements of SO(3) missed")
    });

    // the subgroup with central beta
    let basis: Vec<AlgElem> = a.basis().iter().map(|&(i, j)| a.e(i, j)).collect();
    let central: BTreeSet<&UnitaryElem> =
        elems.iter().filter(|x| basis.iter().all(|b| a.is_zero(&a.commutator(&x.beta, b)))).collect();
    let roots: Vec<El> = ring.elements().filter(|&k| r.add(r.mul(k, k), k) == 0).collect();
    let mut expected = BTreeSet::new();
    let mut param_ok = true;
    for &k in &roots {
        let z = UnitaryElem { beta: a.x_central(k), gamma: g.shape.u_central(k) };
        param_ok &= g.contains(&z) && emb.dickson_odd(&z)? == r.neg(k);
        expected.insert(z);
    }
    rep.check("central_subgroup_is_x_u", central.iter().copied().cloned().collect::<BTreeSet<_>>() == expected, || {
        format!("{} central elements, {} parametrized", central.len(), expected.len())
    });
    rep.check("central_dickson_is_minus_k", param_ok, || "Dickson(x(k), u(k)) != -k".into());

    let embedded: Vec<Result<UnitaryElem>> = elems.par_iter().map(|x| emb.embed(x)).collect();
    let embedded: Vec<UnitaryElem> = embedded.into_iter().collect::<Result<_>>()?;
    rep.check_all("embedding_fixes_vector", n as u64, |i| {
        (!emb.fixes_vector(&embedded[i as usize])).then(|| g.show(&elems[i as usize]))
    });
    rep.check_all("embedding_homomorphism", (n * n) as u64, |k| {
        let (i, j) = (k as usize / n, k as usize % n);
        let xy = g.mul(&elems[i], &elems[j]);
        let Ok(lhs) = emb.embed(&xy) else {
            return Some(format!("product of {i} and {j} does not embed"));
        };
        (lhs != emb.even.mul(&embedded[i], &embedded[j])).then(|| format!("pair {i}, {j}"))
    });
    let distinct: BTreeSet<&UnitaryElem> = embedded.iter().collect();
    rep.check("embedding_injective", distinct.len() == n, || format!("{} images of {n}", distinct.len()));
    if with_image {
        let big = emb.even.enumerate(GROUP_CAP)?;
        let stab: BTreeSet<&UnitaryElem> = big.iter().filter(|x| emb.fixes_vector(x)).collect();
        rep.check("embedding_image_is_stabilizer", stab == distinct, || {
            format!("stabilizer has {} elements, image has {}", stab.len(), distinct.len())
        });
    }
    Ok(rep)
}
