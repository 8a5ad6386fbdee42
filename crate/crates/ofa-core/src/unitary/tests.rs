use super::*;
use crate::coeff_ring::Ring;
use crate::odd_form_param::DGen;

fn q_pow(q: u64, e: u32) -> u64 {
    q.pow(e)
}

fn gl_order(n: u32, q: u64) -> u64 {
    (0..n).map(|i| q_pow(q, n) - q_pow(q, i)).product()
}

fn sp_order(n: u32, q: u64) -> u64 {
    q_pow(q, n * n) * (1..=n).map(|i| q_pow(q, 2 * i) - 1).product::<u64>()
}

fn o_plus_order(n: u32, q: u64) -> u64 {
    2 * q_pow(q, n * (n - 1)) * (q_pow(q, n) - 1) * (1..n).map(|i| q_pow(q, 2 * i) - 1).product::<u64>()
}

fn group(f: Family, r: Ring) -> UnitaryGroup {
    UnitaryGroup::new(f, &r).unwrap()
}

#[test]
fn identity_and_rejection() {
    let g = group(Family::OrthEven(1), Ring::zmod(2));
    let id = g.identity();
    assert!(g.contains(&id));
    let beta = g.alg().e(1, 1);
    assert!(g.from_beta(&beta).is_none());
    assert!(!g.is_member(&beta, &g.shape.zero()));
}

#[test]
fn small_orders_match_formulas() {
    let cases = [
        (Family::Lin(2), Ring::gf(2, 1), gl_order(2, 2)),
        (Family::Lin(2), Ring::gf(3, 1), gl_order(2, 3)),
        (Family::Symp(1), Ring::gf(3, 1), sp_order(1, 3)),
        (Family::Symp(2), Ring::gf(2, 1), sp_order(2, 2)),
        (Family::OrthEven(1), Ring::gf(3, 1), o_plus_order(1, 3)),
        (Family::OrthEven(2), Ring::gf(2, 1), o_plus_order(2, 2)),
        (Family::OrthOdd(1), Ring::gf(2, 1), 2 * sp_order(1, 2)),
        (Family::OrthOdd(1), Ring::gf(3, 1), 2 * 24),
    ];
    for (f, r, expect) in cases {
        let g = group(f, r);
        assert_eq!(g.order().unwrap() as u64, expect, "{}", f.name());
    }
}

#[test]
fn sl_subgroup_and_det() {
    let g = group(Family::Lin(2), Ring::gf(3, 1));
    let elems = g.enumerate(GROUP_CAP).unwrap();
    let sl = elems.iter().filter(|x| g.sl_member(x).unwrap()).count();
    assert_eq!(sl, 24);
    let fam = g.standard_family();
    let t = g.transvection_short(&fam, 1, 2, &g.alg().e(1, 2)).unwrap();
    assert!(g.sl_member(&t).unwrap());
    let n = elems.len();
    for k in (0..n * n).step_by(37) {
        let (x, y) = (&elems[k / n], &elems[k % n]);
        let (a, b) = g.det_linear(x).unwrap();
        let (c, d) = g.det_linear(y).unwrap();
        let r = g.ring();
        assert_eq!(g.det_linear(&g.mul(x, y)).unwrap(), (r.mul(a, c), r.mul(b, d)));
    }
}

#[test]
fn group_laws_symp() {
    let g = group(Family::Symp(1), Ring::gf(3, 1));
    let elems = g.enumerate(GROUP_CAP).unwrap();
    let rep = g.group_check(&elems, 500, 7);
    assert!(rep.passed(), "{:?}", rep.failures());
}

#[test]
fn short_transvections() {
    let g = group(Family::OrthEven(2), Ring::zmod(3));
    let fam = g.standard_family();
    let t = g.transvection_short(&fam, 1, 2, &g.alg().e(1, 2)).unwrap();
    assert!(g.contains(&t));
    assert_eq!(g.transvection_short(&fam, 1, 2, &g.alg().zero()).unwrap(), g.identity());

    let g = group(Family::Symp(2), Ring::zmod(2));
    let fam = g.standard_family();
    let x = g.alg().e(1, 2);
    let t = g.transvection_short(&fam, 1, 2, &x).unwrap();
    let u = g.transvection_short(&fam, 1, 2, &g.alg().neg(&x)).unwrap();
    assert_eq!(g.mul(&t, &u), g.identity());
    assert!(g.transvection_short(&fam, 1, -1, &g.alg().e(1, -1)).is_err());
}

#[test]
fn ultrashort_transvections() {
    let g = group(Family::Symp(1), Ring::zmod(3));
    let fam = g.standard_family();
    for k in 0..3 {
        let u = g.shape.d_term(DGen::V(1), k);
        let t = g.transvection_ultrashort(&fam, 1, &u).unwrap();
        assert!(g.contains(&t));
    }
    let g = group(Family::OrthOdd(1), Ring::zmod(2));
    let fam = g.standard_family();
    let us = g.delta0_corner(&fam, 1, 1 << 16).unwrap();
    assert!(us.len() > 1);
    for u in &us {
        assert!(g.contains(&g.transvection_ultrashort(&fam, 1, u).unwrap()));
    }
    assert_eq!(g.transvection_ultrashort(&fam, 1, &g.shape.zero()).unwrap(), g.identity());
}

#[test]
fn dilations() {
    let g = group(Family::Lin(1), Ring::zmod(3));
    let fam = g.standard_family();
    let a = g.alg();
    assert_eq!(g.dilation(&fam, 1, &a.e(1, 1)).unwrap(), g.identity());
    let d = g.dilation(&fam, 1, &a.e_k(1, 1, 2)).unwrap();
    let expect = a.sub(&a.add(&a.e_k(1, 1, 2), &a.e_k(-1, -1, 2)), &a.add(&a.e(-1, -1), &a.e(1, 1)));
    assert_eq!(d.beta, expect);
    assert!(g.contains(&d));

    let g = group(Family::OrthEven(2), Ring::zmod(3));
    let fam = g.standard_family();
    let gens: Vec<UnitaryElem> =
        g.corner_units(&fam, 1, 100).unwrap().iter().map(|x| g.dilation(&fam, 1, x).unwrap()).collect();
    assert_eq!(g.generate_subgroup(&gens, 100).unwrap().len(), 2);
    assert!(g.dilation(&fam, 1, &g.alg().zero()).is_err());
}

#[test]
fn dickson_even_cases() {
    let g = group(Family::OrthEven(1), Ring::zmod(3));
    let ctx = g.dickson_context().unwrap();
    let a = g.alg();
    let swap = a.sub(&a.add(&a.e(-1, 1), &a.e(1, -1)), &a.diag_sum());
    let s = g.from_beta(&swap).unwrap();
    assert_eq!(g.dickson_even(&ctx, &s).unwrap(), 1);
    assert_eq!(g.dickson_even(&ctx, &g.identity()).unwrap(), 0);

    for f in [Family::OrthEven(1), Family::OrthEven(2)] {
        let g = group(f, Ring::zmod(2));
        let ctx = g.dickson_context().unwrap();
        let elems = g.enumerate(GROUP_CAP).unwrap();
        let ker = elems.iter().filter(|x| g.dickson_even(&ctx, x).unwrap() == 0).count();
        assert_eq!(2 * ker, elems.len());
    }
}

#[test]
fn dickson_matches_det_odd_char() {
    let g = group(Family::OrthEven(2), Ring::zmod(3));
    let ctx = g.dickson_context().unwrap();
    let fam = g.standard_family();
    let gens: Vec<UnitaryElem> = g.parabolic_generators(&fam, 1000).unwrap().into_iter().map(|(_, x)| x).collect();
    for x in &gens {
        let d = g.dickson_even(&ctx, x).unwrap();
        assert_eq!(g.det_alpha(x).unwrap(), orth::one_minus_two(g.ring(), d));
    }
}

#[test]
fn odd_split_small() {
    for r in [Ring::gf(2, 1), Ring::gf(3, 1)] {
        let rep = so_odd_split(&r, true).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
    }
}

#[test]
fn sigma_linear() {
    let g = group(Family::Lin(1), Ring::zmod(5));
    let s = Sigma::new(&g).unwrap();
    assert_eq!(s.apply_alg(&g.alg().e(1, 1)), g.alg().e(-1, -1));
    let g = group(Family::Lin(2), Ring::gf(2, 1));
    let s = Sigma::new(&g).unwrap();
    let elems = g.enumerate(GROUP_CAP).unwrap();
    let rep = s.check(Some(&elems));
    assert!(rep.passed(), "{:?}", rep.failures());
}

#[test]
fn general_unitary_symplectic() {
    let sub = group(Family::Symp(1), Ring::gf(3, 1));
    let pair = ClassicalPair::new(&sub).unwrap();
    assert!(pair.verify().passed());
    assert_eq!(pair.gu_enumerate().unwrap().len(), 48);
    assert!(pair.sigma_check().unwrap().passed());
    let orth = ClassicalPair::new(&group(Family::OrthEven(1), Ring::gf(3, 1))).unwrap();
    assert!(orth.verify().passed());
    assert!(orth.sigma_check().unwrap().passed());
}

#[test]
fn parabolics() {
    let g = group(Family::Symp(1), Ring::gf(2, 1));
    let p = g.parabolic_p(&g.standard_family(), 1000).unwrap();
    assert_eq!(p.len(), 2);
    let g = group(Family::Lin(2), Ring::gf(3, 1));
    let p = g.parabolic_p(&g.standard_family(), 1000).unwrap();
    assert_eq!(p.len(), 12);
    assert_eq!(g.generate_subgroup(&[g.identity()], 10).unwrap(), vec![g.identity()]);
}

#[test]
fn hyperbolic_families() {
    let g = group(Family::OrthEven(2), Ring::zmod(3));
    assert!(g.validate_family(&g.standard_family()).passed());
    let g = group(Family::Symp(2), Ring::zmod(3));
    let fam = g.standard_family();
    let sum = g.pair_sum(&fam.pairs[0], &fam.pairs[1]).unwrap();
    let mut rep = Report::new("sum");
    g.validate_pair(&sum, &mut rep, "sum");
    assert!(rep.passed(), "{:?}", rep.failures());
    let mut bad = fam.pairs[0].clone();
    bad.q_plus = g.shape.add(&bad.q_plus, &g.shape.d_term(DGen::V(1), 1));
    let mut rep = Report::new("bad");
    g.validate_pair(&bad, &mut rep, "bad");
    assert!(!rep.passed());
    assert!(rep.failures().iter().any(|c| c.name == "bad.rho_plus"));
}

#[test]
fn projective_action() {
    let g = group(Family::Symp(1), Ring::gf(3, 1));
    let elems = g.enumerate(GROUP_CAP).unwrap();
    for (k, x) in elems.iter().enumerate().step_by(5) {
        let y = &elems[(k * 7 + 3) % elems.len()];
        let conj = g.mul(&g.mul(x, y), &g.inv(x));
        assert_eq!(g.act_alg(x, &y.beta), conj.beta);
        assert_eq!(g.act_delta(x, &y.gamma), conj.gamma);
    }
    let u = g.shape.d_term(DGen::V(1), 1);
    assert_eq!(g.act_delta(&g.identity(), &u), u);
}

#[test]
fn elementary_generators_rank_two() {
    for f in [Family::Symp(2), Family::OrthEven(2)] {
        let g = group(f, Ring::gf(3, 1));
        let rep = g.elementary_check(&g.standard_family(), 1 << 16).unwrap();
        assert!(rep.passed(), "{} {:?}", f.name(), rep.failures());
        assert!(rep.checks.iter().any(|c| c.name == "T_{-2,1}.additive" && c.checked == 9));
    }
    let g = group(Family::OrthOdd(1), Ring::zmod(2));
    let rep = g.elementary_check(&g.standard_family(), 1 << 16).unwrap();
    assert!(rep.passed(), "{:?}", rep.failures());
}
