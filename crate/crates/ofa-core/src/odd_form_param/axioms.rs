//! Axiom suite for odd form parameters and their augmentations.

use std::borrow::Cow;
use std::collections::HashMap;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{DGen, DeltaElem, DeltaShape, Heis, Strategy, ALL_PAIRS_CAP, EXHAUSTIVE_CAP};
use crate::coeff_ring::El;
use crate::form_ring::{eps, Family, Unital};
use crate::report::Report;

/// Unwrap inside a check closure; a missing value is itself a failure.
macro_rules! or_fail {
    ($e:expr, $what:expr) => {
        match $e {
            Some(v) => v,
            None => return Some(format!("{} left its domain", $what)),
        }
    };
}

#[derive(Clone, Copy)]
enum Arg {
    U,
    V,
    A,
    B,
    K,
    D,
    W,
}

struct Ctx {
    us: Vec<DeltaElem>,
    hus: Vec<Heis>,
    vs: Vec<DeltaElem>,
    hvs: Vec<Heis>,
    as_: Vec<Unital>,
    bs: Vec<Unital>,
    ks: Vec<El>,
    ds: Vec<DeltaElem>,
    ws: Vec<DeltaElem>,
    /// `Some(n)`: zip the lists tuple by tuple; `None`: full products.
    zipped: Option<u64>,
}

impl Ctx {
    fn len(&self, a: Arg) -> usize {
        match a {
            Arg::U => self.us.len(),
            Arg::V => self.vs.len(),
            Arg::A => self.as_.len(),
            Arg::B => self.bs.len(),
            Arg::K => self.ks.len(),
            Arg::D => self.ds.len(),
            Arg::W => self.ws.len(),
        }
    }
}

const NONE: u32 = u32::MAX;

/// Values reused across the pair checks when `us` is all of `Delta`.
struct Tables {
    /// Index in `us` of `u + v`, row-major over `(u, v)`; `NONE` if the sum leaves `Delta`.
    sum: Vec<u32>,
    tau_u: Vec<Heis>,
    tau_v: Vec<Heis>,
    neg_u: Vec<Heis>,
    neg_v: Vec<Heis>,
    /// `u . b` row-major over `(b, u)`, and likewise for `v`.
    act_u: Vec<Heis>,
    act_v: Vec<Heis>,
    /// `u . a` row-major over `(a, u)`.
    act_ua: Vec<Heis>,
}

fn tables(s: &DeltaShape, ctx: &Ctx) -> Option<Tables> {
    if ctx.zipped.is_some() {
        return None;
    }
    let index: HashMap<&DeltaElem, u32> = ctx.us.iter().enumerate().map(|(i, u)| (u, i as u32)).collect();
    let nv = ctx.vs.len();
    let sum = (0..ctx.us.len() * nv)
        .into_par_iter()
        .map(|k| {
            let h = s.h_add(&ctx.hus[k / nv], &ctx.hvs[k % nv]);
            s.from_heis(&h).and_then(|w| index.get(&w).copied()).unwrap_or(NONE)
        })
        .collect();
    let taus = |xs: &[DeltaElem]| xs.par_iter().map(|u| s.heis(&s.tau(u))).collect::<Vec<_>>();
    let negs = |hs: &[Heis]| hs.par_iter().map(|h| s.h_neg(h)).collect::<Vec<_>>();
    let acts = |xs: &[Unital], hs: &[Heis]| {
        xs.par_iter().flat_map_iter(|x| hs.iter().map(move |h| s.h_act(h, x))).collect::<Vec<_>>()
    };
    Some(Tables {
        sum,
        tau_u: taus(&ctx.us),
        tau_v: taus(&ctx.vs),
        neg_u: negs(&ctx.hus),
        neg_v: negs(&ctx.hvs),
        act_u: acts(&ctx.bs, &ctx.hus),
        act_v: acts(&ctx.bs, &ctx.hvs),
        act_ua: acts(&ctx.as_, &ctx.hus),
    })
}

fn run<F>(rep: &mut Report, ctx: &Ctx, name: &str, args: &[Arg], f: F)
where
    F: Fn(&[usize]) -> Option<String> + Sync,
{
    match ctx.zipped {
        Some(n) => rep.check_all(name, n, |t| f(&vec![t as usize; args.len()])),
        None => {
            let dims: Vec<usize> = args.iter().map(|&a| ctx.len(a)).collect();
            let total: u64 = dims.iter().map(|&d| d as u64).product();
            rep.check_all(name, total, |mut t| {
                let idx: Vec<usize> = dims
                    .iter()
                    .map(|&d| {
                        let i = (t % d as u64) as usize;
                        t /= d as u64;
                        i
                    })
                    .collect();
                f(&idx)
            })
        }
    }
}

fn build_ctx(s: &DeltaShape, strategy: Strategy, rep: &mut Report) -> Ctx {
    let alg = &s.alg;
    let r = s.ring();
    let strategy = match strategy {
        Strategy::Exhaustive if s.order() > EXHAUSTIVE_CAP => {
            rep.note(format!(
                "|Delta| = {} exceeds the exhaustive cap {}; ran sampled with 10000 tuples, seed 0",
                s.order(),
                EXHAUSTIVE_CAP
            ));
            Strategy::Sampled { count: 10_000, seed: 0 }
        }
        st => st,
    };
    match strategy {
        Strategy::Exhaustive => {
            let us = s.elements(EXHAUSTIVE_CAP).expect("within cap");
            let vs = if s.order() * s.order() <= ALL_PAIRS_CAP {
                us.clone()
            } else {
                rep.note("pairs range over all of Delta against the coordinate generators");
                s.coordinate_generators()
            };
            let mut as_: Vec<Unital> = Vec::new();
            for &(i, j) in alg.basis() {
                for k in r.elements().skip(1) {
                    as_.push(alg.unital(alg.e_k(i, j, k), 0));
                }
            }
            for k in r.elements() {
                as_.push(alg.unital(alg.zero(), k));
            }
            let mut bs: Vec<Unital> = alg.basis().iter().map(|&(i, j)| alg.unital(alg.e(i, j), 0)).collect();
            bs.push(alg.u_one());
            let ds = s.d_elements(1 << 12).unwrap_or_else(|_| {
                let mut g = vec![s.zero()];
                g.extend(s.coordinate_generators().into_iter().filter(|u| s.aug_member(u)));
                g
            });
            let ws = ds.clone();
            let hus = us.iter().map(|u| s.heis(u)).collect();
            let hvs = vs.iter().map(|u| s.heis(u)).collect();
            rep.note(format!("exhaustive over |Delta| = {}", s.order()));
            Ctx { us, hus, vs, hvs, as_, bs, ks: r.elements().collect(), ds, ws, zipped: None }
        }
        Strategy::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = count as usize;
            let q = r.size();
            let us: Vec<DeltaElem> = (0..n).map(|_| s.random(&mut rng)).collect();
            let vs: Vec<DeltaElem> = (0..n).map(|_| s.random(&mut rng)).collect();
            let unital = |rng: &mut ChaCha8Rng| {
                let body = s.random_alg(rng);
                alg.unital(body, rng.gen_range(0..q) as El)
            };
            let as_: Vec<Unital> = (0..n).map(|_| unital(&mut rng)).collect();
            let bs: Vec<Unital> = (0..n).map(|_| unital(&mut rng)).collect();
            let ks: Vec<El> = (0..n).map(|_| rng.gen_range(0..q) as El).collect();
            let ds: Vec<DeltaElem> = (0..n).map(|_| s.random_d(&mut rng)).collect();
            let ws: Vec<DeltaElem> = (0..n).map(|_| s.random_d(&mut rng)).collect();
            let hus = us.iter().map(|u| s.heis(u)).collect();
            let hvs = vs.iter().map(|u| s.heis(u)).collect();
            rep.note(format!("sampled {count} tuples with seed {seed}"));
            Ctx { us, hus, vs, hvs, as_, bs, ks, ds, ws, zipped: Some(count) }
        }
    }
}

/// Evaluate every odd form ring axiom, every augmentation axiom and the
/// structure relations of the family.
pub fn axioms_check(s: &DeltaShape, strategy: Strategy) -> Report {
    let mut rep = Report::new(format!("axioms {} over {:?}", s.alg.family.name(), s.ring().spec()));
    let ctx = build_ctx(s, strategy, &mut rep);
    let a = &s.alg;
    let r = s.ring();
    let dec = |h: &Heis| s.from_heis(h);
    let show = |u: &DeltaElem| s.show(u);
    let body = |x: &Unital| x.body.clone();
    use Arg::*;

    run(&mut rep, &ctx, "normal_form_roundtrip", &[U], |i| {
        let u = &ctx.us[i[0]];
        (dec(&ctx.hus[i[0]]).as_ref() != Some(u)).then(|| show(u))
    });
    run(&mut rep, &ctx, "rho_quadratic", &[U], |i| {
        let h = &ctx.hus[i[0]];
        let t = a.add(&a.add(&h.rho, &a.inv(&h.rho)), &a.mul(&a.inv(&h.pi), &h.pi));
        (!a.is_zero(&t)).then(|| show(&ctx.us[i[0]]))
    });
    run(&mut rep, &ctx, "neg_inverse", &[U], |i| {
        let h = &ctx.hus[i[0]];
        let n = s.h_neg(h);
        let ok = dec(&n).is_some() && s.h_add(h, &n) == s.h_zero() && n.rho == a.inv(&h.rho);
        (!ok).then(|| show(&ctx.us[i[0]]))
    });
    run(&mut rep, &ctx, "unital_action", &[U], |i| {
        let h = &ctx.hus[i[0]];
        (s.h_act(h, &a.u_one()) != *h).then(|| show(&ctx.us[i[0]]))
    });
    run(&mut rep, &ctx, "zero_action", &[U], |i| {
        let h = &ctx.hus[i[0]];
        (s.h_act(h, &a.unital(a.zero(), 0)) != s.h_zero()).then(|| show(&ctx.us[i[0]]))
    });
    run(&mut rep, &ctx, "ker_pi_in_augmentation", &[U], |i| {
        let u = &ctx.us[i[0]];
        (a.is_zero(&ctx.hus[i[0]].pi) != s.aug_member(u)).then(|| show(u))
    });

    let tab = tables(s, &ctx);
    match &tab {
        Some(t) => pair_checks_tabulated(s, &ctx, t, &mut rep),
        None => pair_checks(s, &ctx, &mut rep),
    }

    run(&mut rep, &ctx, "action_closed_pi_rho", &[U, A], |i| {
        let h = &ctx.hus[i[0]];
        let x = &ctx.as_[i[1]];
        let m = s.h_act(h, x);
        let pi = a.u_mul(&a.unital(h.pi.clone(), 0), x).body;
        let rho = a.u_mul(&a.u_mul(&a.u_inv(x), &a.unital(h.rho.clone(), 0)), x).body;
        (dec(&m).is_none() || m.pi != pi || m.rho != rho)
            .then(|| format!("{} . {}", show(&ctx.us[i[0]]), a.show(&x.body)))
    });
    let nu = ctx.us.len();
    let act_a = |u: usize, k: usize| match &tab {
        Some(t) => Cow::Borrowed(&t.act_ua[k * nu + u]),
        None => Cow::Owned(s.h_act(&ctx.hus[u], &ctx.as_[k])),
    };
    let act_b = |u: usize, k: usize| match &tab {
        Some(t) => Cow::Borrowed(&t.act_u[k * nu + u]),
        None => Cow::Owned(s.h_act(&ctx.hus[u], &ctx.bs[k])),
    };
    run(&mut rep, &ctx, "action_bilinear", &[U, A, B], |i| {
        let h = &ctx.hus[i[0]];
        let (x, y) = (&ctx.as_[i[1]], &ctx.bs[i[2]]);
        let lhs = s.h_act(h, &a.u_add(x, y));
        let corr = a.u_mul(&a.u_mul(&a.u_inv(y), &a.unital(h.rho.clone(), 0)), x).body;
        let rhs = s.h_add(&s.h_add(&act_a(i[0], i[1]), &s.h_phi(&corr)), &act_b(i[0], i[2]));
        (dec(&lhs).is_none() || lhs != rhs).then(|| {
            format!("{} . ({} + {})", show(&ctx.us[i[0]]), a.show(&body(x)), a.show(&body(y)))
        })
    });
    run(&mut rep, &ctx, "action_monoid", &[U, A, B], |i| {
        let h = &ctx.hus[i[0]];
        let (x, y) = (&ctx.as_[i[1]], &ctx.bs[i[2]]);
        let lhs = s.h_act(h, &a.u_mul(x, y));
        let rhs = s.h_act(&act_a(i[0], i[1]), y);
        (lhs != rhs).then(|| format!("{} . ({} {})", show(&ctx.us[i[0]]), a.show(&body(x)), a.show(&body(y))))
    });
    match &tab {
        Some(t) => {
            let nv = ctx.vs.len();
            run(&mut rep, &ctx, "action_endomorphism", &[U, V, B], |i| {
                let (u, v, b) = (i[0], i[1], i[2]);
                let w = t.sum[u * nv + v];
                let ok = w != NONE && t.act_u[b * nu + w as usize] == s.h_add(&t.act_u[b * nu + u], &t.act_v[b * nv + v]);
                (!ok).then(|| format!("({} + {}) . {}", show(&ctx.us[u]), show(&ctx.vs[v]), a.show(&ctx.bs[b].body)))
            });
        }
        None => {
            run(&mut rep, &ctx, "action_endomorphism", &[U, V, B], |i| {
                let (hu, hv) = (&ctx.hus[i[0]], &ctx.hvs[i[1]]);
                let x = &ctx.bs[i[2]];
                let lhs = s.h_act(&s.h_add(hu, hv), x);
                let rhs = s.h_add(&s.h_act(hu, x), &s.h_act(hv, x));
                (lhs != rhs).then(|| format!("({} + {}) . {}", show(&ctx.us[i[0]]), show(&ctx.vs[i[1]]), a.show(&x.body)))
            });
        }
    }
    run(&mut rep, &ctx, "scalar_distributivity", &[U, K, K], |i| {
        let u = &ctx.us[i[0]];
        let h = &ctx.hus[i[0]];
        let (k, l) = (ctx.ks[i[1]], ctx.ks[i[2]]);
        let lhs = s.h_act(h, &a.unital(a.zero(), r.add(k, l)));
        let tau = or_fail!(s.act_scalar(r.mul(k, l), &s.tau(u)).ok(), "scalar action");
        let rhs = s.h_add(
            &s.h_add(&s.h_act(h, &a.unital(a.zero(), k)), &s.heis(&tau)),
            &s.h_act(h, &a.unital(a.zero(), l)),
        );
        (lhs != rhs).then(|| format!("{} . ({} + {})", show(u), r.show(k), r.show(l)))
    });

    run(&mut rep, &ctx, "phi_additive", &[A, B], |i| {
        let (x, y) = (&ctx.as_[i[0]].body, &ctx.bs[i[1]].body);
        let lhs = s.h_phi(&a.add(x, y));
        let rhs = s.h_add(&s.h_phi(x), &s.h_phi(y));
        (lhs != rhs).then(|| format!("{} , {}", a.show(x), a.show(y)))
    });
    run(&mut rep, &ctx, "phi_action", &[A, B], |i| {
        let (x, y) = (&ctx.bs[i[1]], &ctx.as_[i[0]].body);
        let lhs = s.h_act(&s.h_phi(y), x);
        let c = a.u_mul(&a.u_mul(&a.u_inv(x), &a.unital(y.clone(), 0)), x).body;
        (lhs != s.h_phi(&c)).then(|| format!("phi({}) . {}", a.show(y), a.show(&x.body)))
    });
    run(&mut rep, &ctx, "phi_pi_rho", &[A], |i| {
        let x = &ctx.as_[i[0]].body;
        let h = s.h_phi(x);
        let ok = dec(&h).is_some() && a.is_zero(&h.pi) && h.rho == a.sub(x, &a.inv(x));
        (!ok).then(|| a.show(x))
    });
    run(&mut rep, &ctx, "phi_hermitian_zero", &[A], |i| {
        let x = &ctx.as_[i[0]].body;
        let herm = a.add(x, &a.inv(x));
        (s.h_phi(&herm) != s.h_zero()).then(|| a.show(&herm))
    });

    run(&mut rep, &ctx, "aug_phi_in_d_linear", &[A, K], |i| {
        let x = &ctx.as_[i[0]].body;
        let k = ctx.ks[i[1]];
        let p = or_fail!(dec(&s.h_phi(x)), "result");
        let kp = or_fail!(s.act_scalar(k, &p).ok(), "scalar action");
        let ok = s.aug_member(&p) && dec(&s.h_phi(&a.scale(k, x))).as_ref() == Some(&kp);
        (!ok).then(|| format!("{} , {}", a.show(x), r.show(k)))
    });
    run(&mut rep, &ctx, "aug_pi_zero_scalar_square", &[D, K], |i| {
        let v = &ctx.ds[i[0]];
        let k = ctx.ks[i[1]];
        let hv = s.heis(v);
        let sq = or_fail!(s.act_scalar(r.mul(k, k), v).ok(), "scalar action");
        let ok = a.is_zero(&hv.pi) && dec(&s.h_act(&hv, &a.unital(a.zero(), k))).as_ref() == Some(&sq);
        (!ok).then(|| format!("{} , {}", show(v), r.show(k)))
    });
    run(&mut rep, &ctx, "aug_rho_linear", &[D, K], |i| {
        let v = &ctx.ds[i[0]];
        let k = ctx.ks[i[1]];
        let kv = or_fail!(s.act_scalar(k, v).ok(), "scalar action");
        (s.rho(&kv) != a.scale(k, &s.rho(v))).then(|| format!("{} , {}", show(v), r.show(k)))
    });
    run(&mut rep, &ctx, "aug_action_linear_invariant", &[D, K, A], |i| {
        let v = &ctx.ds[i[0]];
        let k = ctx.ks[i[1]];
        let x = &ctx.as_[i[2]];
        let kv = or_fail!(s.act_scalar(k, v).ok(), "scalar action");
        let va = or_fail!(dec(&s.h_act(&s.heis(v), x)), "result");
        let lhs = or_fail!(dec(&s.h_act(&s.heis(&kv), x)), "result");
        let ok = s.aug_member(&va) && s.act_scalar(k, &va).ok().as_ref() == Some(&lhs);
        (!ok).then(|| format!("{} , {} , {}", show(v), r.show(k), a.show(&x.body)))
    });
    run(&mut rep, &ctx, "aug_subgroup_k_module", &[D, W, K], |i| {
        let (v, w) = (&ctx.ds[i[0]], &ctx.ws[i[1]]);
        let k = ctx.ks[i[2]];
        let sum = or_fail!(dec(&s.h_add(&s.heis(v), &s.heis(w))), "result");
        let lhs = or_fail!(s.act_scalar(k, &sum).ok(), "scalar action");
        let kv = or_fail!(s.act_scalar(k, v).ok(), "scalar action");
        let kw = or_fail!(s.act_scalar(k, w).ok(), "scalar action");
        let rhs = or_fail!(dec(&s.h_add(&s.heis(&kv), &s.heis(&kw))), "result");
        let one = or_fail!(s.act_scalar(r.one(), v).ok(), "scalar action");
        let ok = s.aug_member(&sum) && lhs == rhs && one == *v;
        (!ok).then(|| format!("{} , {} , {}", show(v), show(w), r.show(k)))
    });
    run(&mut rep, &ctx, "aug_scalar_associative", &[D, K, K], |i| {
        let v = &ctx.ds[i[0]];
        let (k, l) = (ctx.ks[i[1]], ctx.ks[i[2]]);
        let lhs = or_fail!(s.act_scalar(r.mul(k, l), v).ok(), "scalar action");
        let lv = or_fail!(s.act_scalar(l, v).ok(), "scalar action");
        let rhs = or_fail!(s.act_scalar(k, &lv).ok(), "scalar action");
        let sum = or_fail!(s.act_scalar(r.add(k, l), v).ok(), "scalar action");
        let kv = or_fail!(s.act_scalar(k, v).ok(), "scalar action");
        let split = or_fail!(dec(&s.h_add(&s.heis(&kv), &s.heis(&lv))), "result");
        (lhs != rhs || sum != split).then(|| format!("{} , {} , {}", show(v), r.show(k), r.show(l)))
    });

    rep.merge("structure.", structure_check(s));
    rep
}

fn pair_checks(s: &DeltaShape, ctx: &Ctx, rep: &mut Report) {
    let a = &s.alg;
    let dec = |h: &Heis| s.from_heis(h);
    let show = |u: &DeltaElem| s.show(u);
    use Arg::*;

    run(rep, ctx, "sum_closed", &[U, V], |i| {
        let h = s.h_add(&ctx.hus[i[0]], &ctx.hvs[i[1]]);
        dec(&h).is_none().then(|| format!("{} + {}", show(&ctx.us[i[0]]), show(&ctx.vs[i[1]])))
    });
    run(rep, ctx, "pi_additive_rho_cocycle", &[U, V], |i| {
        let (hu, hv) = (&ctx.hus[i[0]], &ctx.hvs[i[1]]);
        let w = or_fail!(dec(&s.h_add(hu, hv)), "result");
        let hw = s.heis(&w);
        let rho = a.add(&a.sub(&hu.rho, &a.mul(&a.inv(&hu.pi), &hv.pi)), &hv.rho);
        (hw.pi != a.add(&hu.pi, &hv.pi) || hw.rho != rho)
            .then(|| format!("{} + {}", show(&ctx.us[i[0]]), show(&ctx.vs[i[1]])))
    });
    run(rep, ctx, "commutator", &[U, V], |i| {
        let (hu, hv) = (&ctx.hus[i[0]], &ctx.hvs[i[1]]);
        let c = s.h_add(&s.h_add(&s.h_add(hu, hv), &s.h_neg(hu)), &s.h_neg(hv));
        let expect = s.h_phi(&a.neg(&a.mul(&a.inv(&hu.pi), &hv.pi)));
        (dec(&c).is_none() || c != expect).then(|| format!("[{}, {}]", show(&ctx.us[i[0]]), show(&ctx.vs[i[1]])))
    });
    run(rep, ctx, "tau_additivity", &[U, V], |i| {
        let (u, v) = (&ctx.us[i[0]], &ctx.vs[i[1]]);
        let (hu, hv) = (&ctx.hus[i[0]], &ctx.hvs[i[1]]);
        let sum = or_fail!(dec(&s.h_add(hu, hv)), "result");
        let comm = s.h_add(&s.h_add(&s.h_add(hu, hv), &s.h_neg(hu)), &s.h_neg(hv));
        let lhs = s.heis(&s.tau(&sum));
        let rhs = s.h_add(&s.h_add(&s.heis(&s.tau(u)), &comm), &s.heis(&s.tau(v)));
        (lhs != rhs).then(|| format!("{} , {}", show(u), show(v)))
    });
}

/// Same identities as [`pair_checks`], reading sums, `tau`, negatives and
/// actions from `t`. `sum_closed` also confirms each tabulated sum.
fn pair_checks_tabulated(s: &DeltaShape, ctx: &Ctx, t: &Tables, rep: &mut Report) {
    let a = &s.alg;
    let show = |u: &DeltaElem| s.show(u);
    let nv = ctx.vs.len();
    let pair = |i: &[usize]| format!("{} , {}", show(&ctx.us[i[0]]), show(&ctx.vs[i[1]]));
    use Arg::*;

    run(rep, ctx, "sum_closed", &[U, V], |i| {
        let w = t.sum[i[0] * nv + i[1]];
        let ok = w != NONE && ctx.hus[w as usize] == s.h_add(&ctx.hus[i[0]], &ctx.hvs[i[1]]);
        (!ok).then(|| pair(i))
    });
    run(rep, ctx, "pi_additive_rho_cocycle", &[U, V], |i| {
        let (hu, hv) = (&ctx.hus[i[0]], &ctx.hvs[i[1]]);
        let w = t.sum[i[0] * nv + i[1]];
        if w == NONE {
            return Some(pair(i));
        }
        let hw = &ctx.hus[w as usize];
        let rho = a.add(&a.sub(&hu.rho, &a.mul(&a.inv(&hu.pi), &hv.pi)), &hv.rho);
        (hw.pi != a.add(&hu.pi, &hv.pi) || hw.rho != rho).then(|| pair(i))
    });
    let comm = |i: &[usize]| {
        let sum = s.h_add(&ctx.hus[i[0]], &ctx.hvs[i[1]]);
        s.h_add(&s.h_add(&sum, &t.neg_u[i[0]]), &t.neg_v[i[1]])
    };
    run(rep, ctx, "commutator", &[U, V], |i| {
        let (hu, hv) = (&ctx.hus[i[0]], &ctx.hvs[i[1]]);
        let c = comm(i);
        let expect = s.h_phi(&a.neg(&a.mul(&a.inv(&hu.pi), &hv.pi)));
        (s.from_heis(&c).is_none() || c != expect).then(|| pair(i))
    });
    run(rep, ctx, "tau_additivity", &[U, V], |i| {
        let w = t.sum[i[0] * nv + i[1]];
        if w == NONE {
            return Some(pair(i));
        }
        let rhs = s.h_add(&s.h_add(&t.tau_u[i[0]], &comm(i)), &t.tau_v[i[1]]);
        (t.tau_u[w as usize] != rhs).then(|| pair(i))
    });
}

/// The explicit generator relations of each split family.
pub fn structure_check(s: &DeltaShape) -> Report {
    let a = &s.alg;
    let r = s.ring();
    let fam = a.family;
    let labels: Vec<i32> = a.labels().to_vec();
    let nz: Vec<i32> = labels.iter().copied().filter(|&i| i != 0).collect();
    let mut rep = Report::new("structure relations");

    let ok = nz.iter().all(|&i| {
        let h = s.heis(&s.q_gen(i));
        h.pi == a.e(i, i) && a.is_zero(&h.rho) && s.act_alg(&s.q_gen(i), &a.e(i, i)) == s.q_gen(i)
    });
    rep.check("q_i: pi = e_ii, rho = 0, q_i . e_ii = q_i", ok, || "q generator".into());

    if matches!(fam, Family::Symp(_)) {
        for &i in &nz {
            let v = s.d_term(DGen::V(i), r.one());
            let hv = s.heis(&v);
            rep.check(format!("v_{i}: pi = 0, rho = e(-i,i)"), a.is_zero(&hv.pi) && hv.rho == a.e(-i, i), || s.show(&v));
            let two_v = s.d_term(DGen::V(i), r.from_int(2));
            rep.check(format!("phi(e({},{i})) = 2 v_{i}", -i), s.phi(&a.e(-i, i)) == two_v, || s.show(&s.phi(&a.e(-i, i))));
            for &j in &nz {
                for &k in &nz {
                    let got = s.act_alg(&v, &a.e(j, k));
                    let want = if j == i {
                        s.d_term(DGen::V(k), r.from_int(eps(i) * eps(k)))
                    } else {
                        s.zero()
                    };
                    rep.check(format!("v_{i} . e({j},{k})"), got == want, || s.show(&got));
                }
            }
        }
    }

    if fam.is_odd() {
        for &i in &labels {
            let ui = s.u_term(i, r.one());
            let h = s.heis(&ui);
            rep.check(
                format!("u_{i}: pi = e(0,i), rho = -e(-i,i)"),
                h.pi == a.e(0, i) && h.rho == a.neg(&a.e(-i, i)),
                || s.show(&ui),
            );
            for &j in &labels {
                for &k in &labels {
                    let got = s.act_alg(&ui, &a.e(j, k));
                    let want = if j != i {
                        s.zero()
                    } else if i != 0 {
                        s.u_term(k, r.one())
                    } else {
                        s.act_k(&s.u_term(k, r.one()), r.from_int(2))
                    };
                    rep.check(format!("u_{i} . e({j},{k})"), got == want, || s.show(&got));
                }
            }
        }
        let ks: Vec<El> = r.elements().collect();
        let ok = ks.iter().all(|&k| {
            let u = s.u_central(k);
            let h = s.heis(&u);
            h.pi == a.x_central(k)
                && h.rho == a.x_central(r.neg(r.mul(k, k)))
                && s.phi(&a.x_central(k)) == s.zero()
                && ks.iter().all(|&l| {
                    let kl2 = r.scale(2, r.mul(k, l));
                    s.act_alg(&u, &a.x_central(l)) == s.u_central(kl2)
                        && a.mul(&a.x_central(k), &a.x_central(l)) == a.x_central(kl2)
                })
        });
        rep.check("central u(k), x(k) relations", ok, || "u(k)".into());
    }

    let (special, exhaustive) = s.special_check(EXHAUSTIVE_CAP);
    rep.check(
        if exhaustive { "special (exhaustive)" } else { "special (sampled)" },
        special,
        || "(pi, rho) collision".into(),
    );
    rep
}
