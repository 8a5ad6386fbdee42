use ofa_core::coeff_ring::Ring;
use ofa_core::form_ring::Family;
use ofa_core::unitary::{so_odd_split, UnitaryGroup, GROUP_CAP};

fn o_plus_order(n: u32, q: u64) -> u64 {
    2 * q.pow(n * (n - 1)) * (q.pow(n) - 1) * (1..n).map(|i| q.pow(2 * i) - 1).product::<u64>()
}

#[test]
fn even_orthogonal_rank_two_over_f3() {
    let g = UnitaryGroup::new(Family::OrthEven(2), &Ring::gf(3, 1)).unwrap();
    let elems = g.enumerate(GROUP_CAP).unwrap();
    assert_eq!(elems.len() as u64, o_plus_order(2, 3));
    let rep = g.group_check(&elems, 2000, 1);
    assert!(rep.passed(), "{:?}", rep.failures());
}

#[test]
fn symplectic_rank_two_over_f3_inverses() {
    let g = UnitaryGroup::new(Family::Symp(1), &Ring::gf(3, 1)).unwrap();
    for x in g.enumerate(GROUP_CAP).unwrap() {
        assert_eq!(g.mul(&x, &g.inv(&x)), g.identity());
    }
}

#[test]
fn odd_split_over_z4() {
    let rep = so_odd_split(&Ring::zmod(4), true).unwrap();
    assert!(rep.passed(), "{:?}", rep.failures());
}

#[test]
fn dickson_homomorphism_even_rank_two() {
    let g = UnitaryGroup::new(Family::OrthEven(2), &Ring::gf(2, 1)).unwrap();
    let ctx = g.dickson_context().unwrap();
    let elems = g.enumerate(GROUP_CAP).unwrap();
    let d: Vec<u32> = elems.iter().map(|x| g.dickson_even(&ctx, x).unwrap()).collect();
    let r = g.ring();
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            let k = elems.binary_search(&g.mul(x, y)).unwrap();
            assert_eq!(d[k], r.idem_op(d[i], d[j]));
        }
    }
}
