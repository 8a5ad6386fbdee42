use super::*;
use crate::coeff_ring::RingSpec;

fn shape(f: Family, m: u64) -> DeltaShape {
    DeltaShape::new(&InvAlgebra::new(f, &Ring::zmod(m)).unwrap())
}

#[test]
fn coordinate_counts() {
    assert_eq!(shape(Family::Lin(1), 2).coord_count(), 3);
    assert_eq!(shape(Family::Symp(1), 2).coord_count(), 7);
    assert_eq!(shape(Family::OrthEven(1), 2).coord_count(), 5);
    assert_eq!(shape(Family::OrthOdd(1), 2).coord_count(), 12);
}

#[test]
fn q_merge_in_char_two() {
    let s = shape(Family::OrthEven(2), 2);
    let x = s.q_term(1, -1, 1);
    assert_eq!(s.add(&x, &x), s.zero());
}

#[test]
fn symplectic_phi_of_antidiagonal() {
    let s = shape(Family::Symp(1), 3);
    let a = &s.alg;
    assert_eq!(s.phi(&a.e(-1, 1)), s.d_term(DGen::V(1), 2));
    let s4 = shape(Family::Symp(1), 4);
    let two_v = s4.d_term(DGen::V(1), 2);
    assert_eq!(s4.phi(&s4.alg.e(-1, 1)), two_v);
    assert_eq!(s4.rho(&two_v), s4.alg.e_k(-1, 1, 2));
}

#[test]
fn odd_u_generators() {
    let s = shape(Family::OrthOdd(1), 3);
    let a = &s.alg;
    let u1 = s.u_term(1, 1);
    assert_eq!(s.pi(&u1), a.e(0, 1));
    assert_eq!(s.rho(&u1), a.neg(&a.e(-1, 1)));
    let n = s.neg(&u1);
    assert_eq!(s.add(&u1, &n), s.zero());
    assert_eq!(s.rho(&n), a.inv(&s.rho(&u1)));
    assert!(!s.aug_member(&s.u_term(0, 1)));
}

#[test]
fn phi_and_rho_basics() {
    let s = shape(Family::OrthEven(2), 3);
    assert_eq!(s.phi(&s.alg.e(1, -1)), s.zero());
    let l = shape(Family::Lin(2), 3);
    let a = &l.alg;
    assert_eq!(l.rho(&l.phi(&a.e(1, 2))), a.sub(&a.e(1, 2), &a.e(-2, -1)));
    assert!(a.is_zero(&l.rho(&l.q_gen(1))));
}

#[test]
fn cocycle_identity_on_two_q_terms() {
    let s = shape(Family::OrthEven(1), 3);
    let a = &s.alg;
    let u = s.add(&s.q_term(1, -1, 1), &s.q_term(-1, -1, 1));
    let h = s.heis(&u);
    let t = a.add(&a.add(&h.rho, &a.inv(&h.rho)), &a.mul(&a.inv(&h.pi), &h.pi));
    assert!(a.is_zero(&t));
    // rho = -inv(e_{-1,-1}) e_{1,-1} = -e_{1,1} e_{1,-1} = -e_{1,-1}
    assert_eq!(h.rho, a.neg(&a.e(1, -1)));
}

#[test]
fn generator_actions() {
    let s = shape(Family::OrthOdd(2), 3);
    assert_eq!(s.act_alg(&s.u_term(1, 1), &s.alg.e(1, 2)), s.u_term(2, 1));
    let p = shape(Family::Symp(2), 3);
    assert_eq!(p.act_alg(&p.d_term(DGen::V(1), 1), &p.alg.e(1, -2)), p.d_term(DGen::V(-2), 2));
    let u = p.q_term(1, 2, 1);
    assert_eq!(p.act(&u, &p.alg.unital(p.alg.zero(), 0)), p.zero());
}

#[test]
fn scalar_action_on_augmentation() {
    let s = shape(Family::Symp(1), 4);
    let v = s.d_term(DGen::V(1), 1);
    let e = s.alg.e(1, 1);
    let lhs = s.act_alg(&s.act_scalar(2, &v).unwrap(), &e);
    let rhs = s.act_scalar(2, &s.act_alg(&v, &e)).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(s.act_scalar(3, &s.zero()).unwrap(), s.zero());
    assert!(s.act_scalar(1, &s.q_gen(1)).is_err());
}

#[test]
fn central_u() {
    let s = shape(Family::OrthOdd(1), 3);
    assert_eq!(s.u_central(0), s.zero());
    assert_eq!(s.pi(&s.u_central(1)), s.alg.x_central(1));
    let t = shape(Family::OrthOdd(1), 4);
    assert_eq!(t.rho(&t.u_central(1)), t.alg.x_central(3));
}

#[test]
fn small_axiom_suites_pass() {
    for (f, m) in [(Family::OrthEven(1), 2), (Family::Symp(1), 3), (Family::Lin(1), 2)] {
        let rep = axioms_check(&shape(f, m), Strategy::Exhaustive);
        assert!(rep.passed(), "{:?}", rep.failures());
    }
    let rep = axioms_check(&shape(Family::OrthOdd(1), 4), Strategy::Sampled { count: 500, seed: 7 });
    assert!(rep.passed(), "{:?}", rep.failures());
}

#[test]
fn specialness() {
    assert_eq!(shape(Family::Lin(1), 2).special_check(EXHAUSTIVE_CAP), (true, true));
    assert_eq!(shape(Family::Symp(1), 3).special_check(EXHAUSTIVE_CAP), (true, true));
    assert_eq!(shape(Family::OrthOdd(1), 2).special_check(EXHAUSTIVE_CAP), (true, true));
}

#[test]
fn product_ring_family() {
    let r = Ring::new(RingSpec::Product(vec![RingSpec::ZMod(2), RingSpec::ZMod(3)])).unwrap();
    let s = DeltaShape::new(&InvAlgebra::new(Family::OrthEven(1), &r).unwrap());
    let rep = axioms_check(&s, Strategy::Sampled { count: 300, seed: 1 });
    assert!(rep.passed(), "{:?}", rep.failures());
}
