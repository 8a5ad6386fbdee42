//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p ofa-cli --test acceptance -- --nocapture`.

use std::process::Command;
use std::time::Instant;

use ofa_core::clifford::{clif0_relation_check, CliffordAlg};
use ofa_core::coeff_ring::Ring;
use ofa_core::form_ring::{Family, InvAlgebra};
use ofa_core::nilpotent2::{counterexample_sqrt2, descent_roundtrip, registered_extension, DescentDatum, Nil2Elem, Nil2Map, Nil2Module};
use ofa_core::odd_form_param::{axioms_check, structure_check, DeltaShape, Strategy, EXHAUSTIVE_CAP};
use ofa_core::quad_module::{split_module_for, CanonicalMorphism, NaiveRing};
use ofa_core::report::Report;
use ofa_core::unitary::{so_odd_split, ClassicalPair, Sigma, UnitaryGroup, GROUP_CAP};

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

type Outcome = Result<String, String>;

fn ensure(rep: &Report, tag: &str) -> Result<(), String> {
    match rep.failures().first() {
        None => Ok(()),
        Some(c) => Err(format!("{tag}: {} failed ({})", c.name, c.witness.clone().unwrap_or_default())),
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(got: T, want: T, tag: &str) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{tag}: got {got:?}, expected {want:?}"))
    }
}

fn small_rings() -> Vec<(&'static str, Ring)> {
    vec![("Z/2", Ring::zmod(2)), ("Z/3", Ring::zmod(3)), ("Z/4", Ring::zmod(4)), ("F4", Ring::gf(2, 2))]
}

fn rank_one() -> [Family; 4] {
    [Family::Lin(1), Family::Symp(1), Family::OrthEven(1), Family::OrthOdd(1)]
}

fn shape(f: Family, r: &Ring) -> DeltaShape {
    DeltaShape::new(&InvAlgebra::new(f, r).unwrap())
}

fn axiom_suites() -> Outcome {
    let (mut exhaustive, mut sampled) = (0, 0);
    for (name, r) in small_rings() {
        for f in rank_one() {
            let s = shape(f, &r);
            let strategy = if s.order() <= EXHAUSTIVE_CAP {
                exhaustive += 1;
                Strategy::Exhaustive
            } else {
                sampled += 1;
                Strategy::Sampled { count: 10_000, seed: 0 }
            };
            ensure(&axioms_check(&s, strategy), &format!("{} over {name}", f.name()))?;
            ensure(&structure_check(&s), &format!("{} over {name} structure", f.name()))?;
        }
        for f in [Family::Lin(2), Family::Symp(2), Family::OrthEven(2), Family::OrthOdd(2)] {
            sampled += 1;
            let rep = axioms_check(&shape(f, &r), Strategy::Sampled { count: 10_000, seed: 0 });
            ensure(&rep, &format!("{} over {name}", f.name()))?;
        }
    }
    Ok(format!("{exhaustive} exhaustive and {sampled} sampled suites"))
}

fn specialness() -> Outcome {
    let mut exhaustive = 0;
    for (name, r) in small_rings() {
        for f in rank_one() {
            let (special, ex) = shape(f, &r).special_check(EXHAUSTIVE_CAP);
            if !special {
                return Err(format!("{} over {name} is not special", f.name()));
            }
            exhaustive += ex as usize;
        }
    }
    Ok(format!("16 cases, {exhaustive} exhaustive"))
}

fn group_orders() -> Outcome {
    let f2 = Ring::gf(2, 1);
    let f3 = Ring::gf(3, 1);
    let cases = [
        (Family::Lin(2), &f2, 6),
        (Family::Lin(2), &f3, 48),
        (Family::Symp(1), &f3, 24),
        (Family::Symp(2), &f2, 720),
        (Family::OrthEven(1), &f3, 4),
        (Family::OrthEven(2), &f2, 72),
        (Family::OrthEven(2), &f3, 1152),
    ];
    let mut out = Vec::new();
    for (f, r, n) in cases {
        let got = UnitaryGroup::new(f, r).unwrap().enumerate(GROUP_CAP).unwrap().len();
        expect(got, n, &f.name())?;
        out.push(format!("{}={got}", f.name()));
    }
    let g = UnitaryGroup::new(Family::Lin(2), &f3).unwrap();
    let sl = g.enumerate(GROUP_CAP).unwrap().iter().filter(|x| g.sl_member(x).unwrap()).count();
    expect(sl, 24, "SL subgroup of lin(2) over F3")?;
    out.push(format!("SL={sl}"));
    Ok(out.join(" "))
}

fn odd_split() -> Outcome {
    for (name, r) in [("F2", Ring::gf(2, 1)), ("F3", Ring::gf(3, 1)), ("Z/4", Ring::zmod(4))] {
        ensure(&so_odd_split(&r, true).unwrap(), name)?;
    }
    Ok("F2, F3, Z/4".into())
}

fn naive_canonical() -> Outcome {
    for (name, r) in [("F2", Ring::gf(2, 1)), ("F3", Ring::gf(3, 1))] {
        for f in [Family::Lin(1), Family::Lin(2), Family::Symp(1), Family::OrthEven(1)] {
            let cm = CanonicalMorphism::new(&split_module_for(&r, f).unwrap());
            let tag = format!("{} over {name}", f.name());
            ensure(&cm.naive_canon_check(1 << 20, 200, 1).unwrap(), &tag)?;
            ensure(&cm.unitary_comparison(f, 1 << 20).unwrap(), &tag)?;
        }
    }
    let f2 = Ring::gf(2, 1);
    let m = split_module_for(&f2, Family::OrthOdd(1)).unwrap();
    let rep = CanonicalMorphism::new(&m).naive_canon_check(1 << 20, 200, 1).unwrap();
    if rep.failures().iter().all(|c| c.name != "f_theta_surjective") {
        return Err("orth_odd(3) over F2: f_theta reported surjective".into());
    }
    let naive = NaiveRing::new(&m).unitary_elements(1 << 20).unwrap().len();
    let odd = UnitaryGroup::new(Family::OrthOdd(1), &f2).unwrap().order().unwrap();
    expect((naive, odd), (6, 12), "orth_odd(3) over F2 unitary orders")?;
    Ok(format!("8 isomorphisms; orth_odd(3)/F2 not surjective, {naive} vs {odd}"))
}

fn elementary() -> Outcome {
    for f in [Family::Symp(2), Family::OrthEven(2)] {
        let g = UnitaryGroup::new(f, &Ring::gf(3, 1)).unwrap();
        ensure(&g.elementary_check(&g.standard_family(), 1 << 16).unwrap(), &format!("{} over F3", f.name()))?;
    }
    let g = UnitaryGroup::new(Family::Symp(2), &Ring::gf(2, 1)).unwrap();
    let fam = g.standard_family_rank(1);
    ensure(&g.elementary_check(&fam, 1 << 16).unwrap(), "symp(4) over F2, rank 1 family")?;
    let gens = g.parabolic_generators(&fam, 100_000).unwrap();
    let p = g.parabolic_p(&fam, 100_000).unwrap();
    if let Some((name, _)) = gens.iter().find(|(_, x)| p.binary_search(x).is_err()) {
        return Err(format!("parabolic misses generator {name}"));
    }
    let order = g.order().unwrap();
    if p.len() >= order {
        return Err(format!("parabolic is all of U ({order})"));
    }
    Ok(format!("parabolic of rank 1 family in symp(4)/F2: {} of {order}, {} generators", p.len(), gens.len()))
}

fn heisenberg(k: &Ring) -> Nil2Module {
    Nil2Module::split(k, 1, 2, vec![vec![0], vec![k.one()], vec![0], vec![0]]).unwrap()
}

fn nilpotent() -> Outcome {
    for name in ["f2-f4", "z4-gr4"] {
        let ext = registered_extension(name).unwrap();
        let k = ext.base.clone();
        let m = heisenberg(&k).with_quotient(vec![Nil2Elem { m1: vec![k.from_int(2), 0], m0: vec![0] }]).unwrap();
        let incl = ext.inclusion();
        let i1 = ext.tower_hom(1, 2, &[0]);
        let step = m.boxtimes(&incl).unwrap().module.boxtimes(&i1).unwrap().module;
        if step != m.boxtimes(&incl.compose(&i1)).unwrap().module {
            return Err(format!("{name}: extension is not functorial"));
        }
        if !m.boxtimes(&incl).unwrap().injective {
            return Err(format!("{name}: flat extension is not injective"));
        }
    }
    let ext = registered_extension("f2-f4").unwrap();
    let k = Ring::zmod(2);
    let splits = [
        Nil2Module::split(&k, 1, 1, vec![vec![1]]).unwrap(),
        heisenberg(&k),
        Nil2Module::split(&k, 2, 2, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![0, 0]]).unwrap(),
    ];
    for m in &splits {
        ensure(&descent_roundtrip(m, &ext, 3).unwrap(), "descent roundtrip")?;
    }
    let n = heisenberg(&k).boxtimes(&ext.inclusion()).unwrap().module;
    let i1 = ext.tower_hom(1, 2, &[0]);
    let l1 = n.boxtimes(&i1).unwrap().module;
    let twist = Nil2Map::scalar(&l1, i1.apply(ext.ext().encode(&[0, 1])));
    let witness = match DescentDatum::new(&ext, n, twist).unwrap().cocycle_check().unwrap() {
        Ok(()) => return Err("twisted datum passed the cocycle check".into()),
        Err(w) => w,
    };
    if witness.is_empty() {
        return Err("cocycle rejection has no witness".into());
    }
    let c = counterexample_sqrt2(4).unwrap();
    let vanishes = c.image.iter().all(|x| x.is_zero());
    let verdict = if vanishes { "image of F2 ⊗ M0 vanishes" } else { "DISCREPANCY: image of F2 ⊗ M0 does not vanish" };
    ensure(&c.report, "counterexample")?;
    Ok(format!("3 roundtrips, cocycle rejected; verdict (m = 4): {verdict}"))
}

fn clifford() -> Outcome {
    let f2 = Ring::gf(2, 1);
    for n in 1..=5 {
        expect(CliffordAlg::new(n, &f2).unwrap().rank(), 1 << n, &format!("rank in dim {n}"))?;
    }
    let c = CliffordAlg::new(3, &Ring::gf(3, 1)).unwrap();
    let spin = c.spin_enumerate(1 << 20).unwrap();
    let id: Vec<u32> = (0..9).map(|k| u32::from(k % 4 == 0)).collect();
    let ker = spin.iter().filter(|u| c.vector_rep(u).as_ref() == Some(&id)).count();
    expect((spin.len(), ker), (24, 2), "Spin(3, F3) and kernel")?;
    for r in [Ring::gf(2, 1), Ring::gf(3, 1)] {
        for dim in [2, 4] {
            ensure(&clif0_relation_check(dim, &r).unwrap(), &format!("relations dim {dim}"))?;
            let q = r.size() as u128;
            expect(CliffordAlg::new(dim, &r).unwrap().even_center_size(), q * q, &format!("even center dim {dim}"))?;
        }
    }
    Ok("ranks 2^n (n <= 5), |Spin(3,F3)| = 24, kernel 2, relations and rank-2 centers".into())
}

fn sigma_gu() -> Outcome {
    for r in [Ring::gf(2, 1), Ring::gf(3, 1)] {
        for n in [1, 2] {
            let g = UnitaryGroup::new(Family::Lin(n), &r).unwrap();
            let elems = g.enumerate(GROUP_CAP).unwrap();
            ensure(&Sigma::new(&g).unwrap().check(Some(&elems)), &format!("sigma of lin({n})"))?;
        }
    }
    let f3 = Ring::gf(3, 1);
    let symp = ClassicalPair::new(&UnitaryGroup::new(Family::Symp(1), &f3).unwrap()).unwrap();
    ensure(&symp.verify(), "symplectic embedding")?;
    let gu = symp.gu_enumerate().unwrap().len();
    expect(gu, 48, "GU order")?;
    ensure(&symp.sigma_check().unwrap(), "sigma on symplectic image")?;
    let orth = ClassicalPair::new(&UnitaryGroup::new(Family::OrthEven(1), &f3).unwrap()).unwrap();
    ensure(&orth.verify(), "orthogonal embedding")?;
    ensure(&orth.sigma_check().unwrap(), "sigma on orthogonal image")?;
    Ok(format!("|GU| = {gu}"))
}

fn run_cli(args: &[&str], jobs: &str) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_ofa")).args(args).args(["--jobs", jobs]).output().expect("ofa runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn determinism() -> Outcome {
    let cases: &[&[&str]] = &[
        &["algebra", "build", "--family", "symp", "--n", "1", "--ring", "zmod:4"],
        &["axioms", "--family", "orth-even", "--n", "1", "--ring", "zmod:2", "--mode", "exhaustive"],
        &["axioms", "--family", "orth-odd", "--n", "1", "--ring", "zmod:3", "--mode", "sampled", "--samples", "2000", "--seed", "5"],
        &["group", "enumerate", "--family", "symp", "--n", "1", "--ring", "gf:3"],
        &["group", "order", "--family", "symp", "--n", "2", "--ring", "gf:2"],
        &["group", "invariants", "--family", "orth-even", "--n", "2", "--ring", "gf:2"],
        &["so-odd-split", "--ring", "zmod:4", "--with-image"],
        &["construct", "naive", "--family", "symp", "--n", "1", "--ring", "gf:2"],
        &["construct", "canonical", "--family", "orth-even", "--n", "1", "--ring", "gf:3", "--seed", "2"],
        &["construct", "compare", "--family", "orth-odd", "--n", "1", "--ring", "gf:2", "--seed", "2"],
        &["hdet", "--family", "orth-odd", "--n", "1", "--ring", "zmod:8"],
        &["nil2", "extend", "--preset", "heisenberg", "--ext", "z4-gr4"],
        &["nil2", "probe", "--preset", "xy", "--ext", "f3-f9"],
        &["nil2", "descend", "--preset", "heisenberg", "--ext", "f2-f4", "--seed", "9"],
        &["nil2", "counterexample", "--modulus", "4"],
        &["clifford", "spin", "--dim", "3", "--ring", "gf:3"],
        &["clifford", "relations", "--dim", "4", "--ring", "gf:2"],
        &["clifford", "center", "--dim", "4", "--ring", "gf:3"],
        &["parabolic", "--family", "symp", "--n", "2", "--ring", "gf:2", "--rank", "1"],
        &["hdet", "--family", "orth-even", "--n", "1", "--ring", "zmod:8"],
    ];
    for args in cases {
        let (code, first) = run_cli(args, "1");
        for jobs in ["1", "3", "8"] {
            let (c, again) = run_cli(args, jobs);
            if (c, &again) != (code, &first) {
                return Err(format!("`ofa {}` differs with --jobs {jobs}", args.join(" ")));
            }
        }
        serde_json::from_slice::<serde_json::Value>(&first).map_err(|e| format!("`ofa {}`: {e}", args.join(" ")))?;
    }
    Ok(format!("{} commands, 4 runs each across --jobs 1, 3, 8", cases.len()))
}

#[test]
fn acceptance() {
    // (name, check, runtime budget in seconds)
    let criteria: [(&str, fn() -> Outcome, Option<f64>); 10] = [
        ("axiom suites", axiom_suites, Some(60.0)),
        ("specialness", specialness, None),
        ("unitary group orders", group_orders, Some(300.0)),
        ("odd orthogonal split", odd_split, None),
        ("naive vs canonical", naive_canonical, None),
        ("elementary generators and parabolic", elementary, None),
        ("2-step nilpotent modules", nilpotent, None),
        ("Clifford algebras and spin", clifford, None),
        ("sigma and GU", sigma_gu, None),
        ("CLI determinism", determinism, None),
    ];
    let mut failed = Vec::new();
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut res = f();
        let secs = start.elapsed().as_secs_f64();
        if let (Ok(msg), Some(limit)) = (&res, budget) {
            if secs > *limit {
                res = Err(format!("{msg}, but took {secs:.1}s against a budget of {limit}s"));
            }
        }
        match &res {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} [{secs:.1}s]", i + 1),
            Err(msg) => {
                println!("criterion {:>2} FAIL  {name}: {msg} [{secs:.1}s]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
