use std::collections::BTreeSet;

use super::*;
use crate::coeff_ring::Extension;
use crate::form_ring::Family;

fn xy_module(k: &Ring) -> Nil2Module {
    Nil2Module::split(k, 1, 1, vec![vec![k.one()]]).unwrap()
}

/// Rank 2 over rank 1 with a non-symmetric cocycle.
fn heisenberg(k: &Ring) -> Nil2Module {
    Nil2Module::split(k, 1, 2, vec![vec![0], vec![k.one()], vec![0], vec![0]]).unwrap()
}

/// Closure by brute force: keep adding sums, negatives and multiples until stable.
fn naive_closure(m: &Nil2Module, gens: &[Nil2Elem]) -> BTreeSet<Nil2Elem> {
    let mut set: BTreeSet<Nil2Elem> = gens.iter().cloned().collect();
    set.insert(m.zero());
    loop {
        let mut next = set.clone();
        for x in &set {
            next.insert(m.raw_neg(x));
            for k in m.ring().elements() {
                next.insert(m.raw_act(x, k));
            }
            for y in &set {
                next.insert(m.raw_add(x, y));
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

#[test]
fn split_axioms_hold() {
    let f4 = Ring::gf(2, 2);
    let mods = [xy_module(&Ring::zmod(2)), xy_module(&Ring::zmod(4)), heisenberg(&Ring::zmod(3)), heisenberg(&f4)];
    for m in mods {
        let elems = m.elements(1 << 14).unwrap();
        assert_eq!(elems.len() as u128, m.order());
        let rep = axioms_check(&m, &elems, DEFAULT_BUDGET, 1);
        assert!(rep.passed(), "{:?}", rep.failures());
    }
}

#[test]
fn inverse_and_tau_on_m0() {
    let k = Ring::zmod(4);
    let m = heisenberg(&k);
    for x in m.elements(1 << 10).unwrap() {
        assert!(m.add(&x, &m.neg(&x)).is_zero());
        if m.in_m0(&x) {
            assert_eq!(m.tau(&x), m.add(&x, &x));
        }
    }
}

#[test]
fn closures() {
    let k = Ring::zmod(2);
    let m = xy_module(&k);
    assert_eq!(m.invariant_closure(&[m.zero()], 1 << 10).unwrap(), BTreeSet::from([m.zero()]));
    let g = m.e1(0);
    let c = m.invariant_closure(std::slice::from_ref(&g), 1 << 10).unwrap();
    assert_eq!(c, naive_closure(&m, std::slice::from_ref(&g)));
    // (1 ∔ 0)·1 ∔ (1 ∔ 0)·1 = 0 ∔ 1
    assert!(c.contains(&Nil2Elem { m1: vec![0], m0: vec![1] }));
    assert_eq!(c.len(), 4);
    let again = m.invariant_closure(&c.iter().cloned().collect::<Vec<_>>(), 1 << 10).unwrap();
    assert_eq!(again, c);

    let r = sqrt2_ring(4).unwrap();
    let m = xy_module(&r);
    let g = Nil2Elem { m1: vec![r.encode(&[0, 1])], m0: vec![r.one()] };
    assert_eq!(m.invariant_closure(std::slice::from_ref(&g), 1 << 12).unwrap(), naive_closure(&m, &[g]));
}

#[test]
fn quotient_is_a_module() {
    let k = Ring::zmod(4);
    // the central element 0 ∔ 2 generates a K-submodule of M0
    let m = heisenberg(&k).with_quotient(vec![Nil2Elem { m1: vec![0, 0], m0: vec![2] }]).unwrap();
    assert_eq!(m.order(), 32);
    let rep = axioms_check(&m, &m.elements(1 << 10).unwrap(), DEFAULT_BUDGET, 2);
    assert!(rep.passed(), "{:?}", rep.failures());
    // a non-central generator forces its commutators into the closure
    let n = heisenberg(&k).with_quotient(vec![m.e1(0)]).unwrap();
    assert!(n.closure().contains(&Nil2Elem { m1: vec![0, 0], m0: vec![1] }));
    let rep = axioms_check(&n, &n.elements(1 << 10).unwrap(), DEFAULT_BUDGET, 2);
    assert!(rep.passed(), "{:?}", rep.failures());
}

#[test]
fn boxtimes_split() {
    let f2 = Ring::zmod(2);
    let f4 = Ring::gf(2, 2);
    let m = heisenberg(&f2);
    assert_eq!(m.boxtimes(&RingHom::identity(&f2)).unwrap().module, m);
    let hom = Extension::new(&f2, &f4).unwrap().inclusion();
    let bx = m.boxtimes(&hom).unwrap();
    assert!(bx.injective);
    assert_eq!(bx.module, heisenberg(&f4));
    for e in f4.elements() {
        let v = bx.image(&m, &m.e0(0), e);
        assert_eq!(v, bx.tensor0(f4.mul(e, e), &[1]));
    }
    let plain = Nil2Module::split(&f2, 2, 0, vec![]).unwrap().with_quotient(vec![Nil2Elem { m1: vec![], m0: vec![1, 1] }]).unwrap();
    assert!(plain.universality_probe(&hom).unwrap().injective);
}

#[test]
fn sqrt2_counterexample() {
    for m in [2, 4] {
        let c = counterexample_sqrt2(m).unwrap();
        assert!(c.report.passed(), "{m}: {:?}", c.report.failures());
        assert_eq!(c.image, vec![c.extension.module.zero()]);
        let w = c.extension.witness.clone().unwrap();
        assert_eq!(w, Nil2Elem { m1: vec![0], m0: vec![1] });
    }
    let c = counterexample_sqrt2(4).unwrap();
    assert_eq!(c.module.order(), 32);
    assert!(matches!(counterexample_sqrt2(3), Err(OfaError::Precondition(_))));
    // without the quotient the same extension is injective
    let r = sqrt2_ring(4).unwrap();
    let hom = RingHom::new(&r, &Ring::zmod(2), vec![1, 0]).unwrap();
    assert!(xy_module(&r).universality_probe(&hom).unwrap().injective);
}

#[test]
fn boxtimes_functorial() {
    let k = Ring::zmod(2);
    let ext = registered_extension("f2-f4").unwrap();
    let incl = ext.inclusion();
    let i1 = ext.tower_hom(1, 2, &[0]);
    for m in [heisenberg(&k), heisenberg(&k).with_quotient(vec![Nil2Elem { m1: vec![1, 0], m0: vec![0] }]).unwrap()] {
        let step = m.boxtimes(&incl).unwrap().module.boxtimes(&i1).unwrap().module;
        let direct = m.boxtimes(&incl.compose(&i1)).unwrap().module;
        assert_eq!(step, direct);
    }
}

#[test]
fn flat_extensions_are_injective() {
    for name in ["f2-f4", "z4-gr4"] {
        let ext = registered_extension(name).unwrap();
        let k = ext.base.clone();
        let two = k.from_int(2);
        let m = heisenberg(&k).with_quotient(vec![Nil2Elem { m1: vec![two, 0], m0: vec![0] }]).unwrap();
        let bx = m.boxtimes(&ext.inclusion()).unwrap();
        assert!(bx.injective, "{name}");
        let elems = m.elements(1 << 12).unwrap();
        let imgs: BTreeSet<Nil2Elem> = elems.iter().map(|x| bx.image(&m, x, ext.ext().one())).collect();
        assert_eq!(imgs.len(), elems.len(), "{name}");
    }
}

#[test]
fn descent_roundtrips() {
    let ext = registered_extension("f2-f4").unwrap();
    let k = Ring::zmod(2);
    let cases = [
        xy_module(&k),
        heisenberg(&k),
        Nil2Module::split(&k, 2, 2, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![0, 0]]).unwrap(),
        Nil2Module::split(&k, 0, 0, vec![]).unwrap(),
    ];
    for m in cases {
        let rep = descent_roundtrip(&m, &ext, 3).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
    }
    let ext = registered_extension("z4-gr4").unwrap();
    let rep = descent_roundtrip(&heisenberg(&Ring::zmod(4)), &ext, 3).unwrap();
    assert!(rep.passed(), "{:?}", rep.failures());
    let ext = registered_extension("f3-f9").unwrap();
    let rep = descent_roundtrip(&xy_module(&Ring::zmod(3)), &ext, 3).unwrap();
    assert!(rep.passed(), "{:?}", rep.failures());
}

#[test]
fn twisted_datum_rejected() {
    // psi = ·(-1) over F9 ⊗ F9 fails the cocycle condition
    let ext = registered_extension("f3-f9").unwrap();
    let n = xy_module(&Ring::zmod(3)).boxtimes(&ext.inclusion()).unwrap().module;
    let e2 = &ext.towers[1];
    let l1 = n.boxtimes(&ext.tower_hom(1, 2, &[0])).unwrap().module;
    let d = DescentDatum::new(&ext, n.clone(), Nil2Map::scalar(&l1, e2.neg(e2.one()))).unwrap();
    assert!(d.cocycle_check().unwrap().is_err());
    assert!(matches!(d.descend(), Err(OfaError::Precondition(_))));

    // over F4 ⊗ F4 the twist by i1(x) fails as well
    let ext = registered_extension("f2-f4").unwrap();
    let n = heisenberg(&Ring::zmod(2)).boxtimes(&ext.inclusion()).unwrap().module;
    let i1 = ext.tower_hom(1, 2, &[0]);
    let l1 = n.boxtimes(&i1).unwrap().module;
    let u = i1.apply(ext.ext().encode(&[0, 1]));
    let d = DescentDatum::new(&ext, n.clone(), Nil2Map::scalar(&l1, u)).unwrap();
    let w = d.cocycle_check().unwrap().unwrap_err();
    assert!(w.contains("generator"), "{w}");
    // a non-invertible psi is not a descent datum at all
    assert!(DescentDatum::new(&ext, n, Nil2Map::scalar(&l1, 0)).is_err());
}

#[test]
fn classical_parameters_are_two_step() {
    for r in [Ring::zmod(2), Ring::zmod(3)] {
        for f in [Family::Lin(1), Family::Symp(1), Family::OrthEven(1), Family::OrthOdd(1)] {
            let rep = bridge_check(f, &r, 300, 1 << 12, 4).unwrap();
            assert!(rep.passed(), "{} {:?}", f.name(), rep.failures());
        }
    }
}

#[test]
fn json_roundtrip() {
    let r = sqrt2_ring(4).unwrap();
    let m = xy_module(&r).with_quotient(vec![Nil2Elem { m1: vec![r.encode(&[0, 1])], m0: vec![r.one()] }]).unwrap();
    let v = m.to_json();
    assert_eq!(v["r0"], 1);
    assert_eq!(Nil2Module::from_json(&v).unwrap(), m);
    assert!(Nil2Module::from_json(&serde_json::json!({"ring": {"zmod": 2}, "r0": 1, "r1": 1, "b": [[[[5]]]]})).is_err());
}
