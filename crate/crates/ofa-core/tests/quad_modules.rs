use ofa_core::coeff_ring::Ring;
use ofa_core::form_ring::Family;
use ofa_core::quad_module::{split_module_for, Canonical, CanonicalMorphism};

#[test]
fn naive_canonical_rank_two_linear() {
    for r in [Ring::gf(2, 1), Ring::gf(3, 1)] {
        let m = split_module_for(&r, Family::Lin(2)).unwrap();
        let cm = CanonicalMorphism::new(&m);
        let rep = cm.naive_canon_check(1 << 20, 500, 2).unwrap();
        println!("{:?}", rep.notes);
        assert!(rep.passed(), "{:?}", rep.failures());
        let cmp = cm.unitary_comparison(Family::Lin(2), 1 << 20).unwrap();
        assert!(cmp.passed(), "{:?}", cmp.failures());
    }
}

#[test]
fn canonical_even_orthogonal_rank_four_over_f2() {
    let r = Ring::gf(2, 1);
    let m = split_module_for(&r, Family::OrthEven(2)).unwrap();
    let c = Canonical::new(&m);
    let rep = c.preset_check(Family::OrthEven(2), 1 << 22).unwrap();
    assert!(rep.passed(), "{:?}", rep.failures());
}

#[test]
fn unitary_comparison_regular_cases() {
    for r in [Ring::gf(2, 1), Ring::gf(3, 1)] {
        for f in [Family::Lin(1), Family::Symp(1), Family::OrthEven(1)] {
            let m = split_module_for(&r, f).unwrap();
            let rep = CanonicalMorphism::new(&m).unitary_comparison(f, 1 << 20).unwrap();
            assert!(rep.passed(), "{} {:?}", f.name(), rep.failures());
        }
    }
}
