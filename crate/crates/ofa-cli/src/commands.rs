use std::collections::BTreeMap;

use serde_json::{json, Value};

use ofa_core::clifford::{clif0_relation_check, CliffordAlg};
use ofa_core::form_ring::{Family, InvAlgebra};
use ofa_core::nilpotent2::{counterexample_sqrt2, descent_roundtrip, registered_extension, Nil2Module};
use ofa_core::odd_form_param::{axioms_check, structure_check, DeltaShape, Strategy, EXHAUSTIVE_CAP};
use ofa_core::quad_module::{self, split_module_for, Canonical, CanonicalMorphism, NaiveRing};
use ofa_core::report::Report;
use ofa_core::unitary::UnitaryGroup;
use ofa_core::{El, Ring};

use crate::ring::parse_ring;
use crate::{
    AxiomsArgs, CliError, CliffordArgs, ConstructArgs, CounterexampleArgs, GroupArgs, Mode, Nil2Args, Outcome,
    ParabolicArgs, Preset, SoOddArgs, Target,
};

type Res = Result<Outcome, CliError>;

fn ring(s: &str) -> Result<Ring, CliError> {
    parse_ring(s).map_err(CliError::Usage)
}

fn big(x: u128) -> Value {
    u64::try_from(x).map(Value::from).unwrap_or_else(|_| Value::from(x.to_string()))
}

fn from_report(rep: Report, extra: Value) -> Outcome {
    let passed = rep.passed();
    let mut v = json!({"report": rep});
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    Outcome { passed, result: v }
}

fn info(result: Value) -> Outcome {
    Outcome { passed: true, result }
}

fn seed_for(seed: Option<u64>, what: &str) -> Result<u64, CliError> {
    seed.ok_or_else(|| CliError::Usage(format!("{what} samples and needs --seed")))
}

pub fn algebra_build(t: &Target) -> Res {
    let alg = InvAlgebra::new(t.family(), &ring(&t.ring)?)?;
    let basis: Vec<[i32; 2]> = alg.basis().iter().map(|&(i, j)| [i, j]).collect();
    let hermitian: Vec<Value> = alg.hermitian_center().iter().map(|x| alg.to_json(x)).collect();
    Ok(info(json!({
        "family": t.family().name(),
        "ring": alg.ring.spec(),
        "dim": alg.dim(),
        "basis": basis,
        "center_size": big(alg.center_size()),
        "hermitian_center": hermitian,
    })))
}

pub fn axioms(a: &AxiomsArgs) -> Res {
    let alg = InvAlgebra::new(a.target.family(), &ring(&a.target.ring)?)?;
    let shape = DeltaShape::new(&alg);
    let strategy = match a.mode {
        Mode::Exhaustive => Strategy::Exhaustive,
        Mode::Sampled => Strategy::Sampled { count: a.samples, seed: seed_for(a.seed, "sampled mode")? },
    };
    let mut rep = Report::new(format!("odd form parameter of {} over {}", a.target.family().name(), a.target.ring));
    rep.merge("", axioms_check(&shape, strategy));
    rep.merge("structure.", structure_check(&shape));
    let (special, exhaustive) = shape.special_check(EXHAUSTIVE_CAP);
    rep.check("special", special, || "(pi, rho) is not injective".into());
    if !exhaustive {
        rep.note("specialness checked on a sample of 10000 elements");
    }
    Ok(from_report(rep, json!({"delta_order": big(shape.order())})))
}

fn group(t: &Target) -> Result<UnitaryGroup, CliError> {
    Ok(UnitaryGroup::new(t.family(), &ring(&t.ring)?)?)
}

pub fn group_enumerate(a: &GroupArgs) -> Res {
    let g = group(&a.target)?;
    let elems = g.enumerate(a.cap)?;
    let rep = g.group_check(&elems, 0, 0);
    let list: Vec<Value> = elems.iter().map(|x| g.to_json(x)).collect();
    Ok(from_report(rep, json!({"order": elems.len(), "elements": list})))
}

pub fn group_order(a: &GroupArgs) -> Res {
    let g = group(&a.target)?;
    Ok(info(json!({"order": g.enumerate(a.cap)?.len()})))
}

pub fn group_invariants(a: &GroupArgs) -> Res {
    let g = group(&a.target)?;
    let elems = g.enumerate(a.cap)?;
    let rep = g.group_check(&elems, 0, 0);
    let mut extra = json!({"order": elems.len()});
    match g.family() {
        Family::Lin(_) => {
            let mut dets: BTreeMap<String, usize> = BTreeMap::new();
            let mut sl = 0;
            for x in &elems {
                let (d1, d2) = g.det_linear(x)?;
                *dets.entry(format!("({}, {})", g.ring().show(d1), g.ring().show(d2))).or_default() += 1;
                sl += g.sl_member(x)? as usize;
            }
            extra["sl_order"] = json!(sl);
            extra["det_fibers"] = json!(dets);
        }
        Family::OrthEven(_) => {
            let ctx = g.dickson_context()?;
            let mut fibers: BTreeMap<String, usize> = BTreeMap::new();
            for x in &elems {
                *fibers.entry(g.ring().show(g.dickson_even(&ctx, x)?)).or_default() += 1;
            }
            extra["dickson_fibers"] = json!(fibers);
        }
        _ => {}
    }
    Ok(from_report(rep, extra))
}

pub fn so_odd_split(a: &SoOddArgs) -> Res {
    let rep = ofa_core::unitary::so_odd_split(&ring(&a.ring)?, a.with_image)?;
    Ok(from_report(rep, json!({})))
}

fn module(t: &Target) -> Result<quad_module::QuadModule, CliError> {
    Ok(split_module_for(&ring(&t.ring)?, t.family())?)
}

pub fn construct_naive(a: &ConstructArgs) -> Res {
    let m = module(&a.target)?;
    let t = NaiveRing::new(&m);
    Ok(info(json!({
        "t_order": big(t.t_order()),
        "xi_order": big(t.xi_order(a.cap as usize)?),
        "unitary_order": t.unitary_elements(a.cap)?.len(),
    })))
}

pub fn construct_canonical(a: &ConstructArgs) -> Res {
    let seed = seed_for(a.seed, "the relation check")?;
    let m = module(&a.target)?;
    let c = Canonical::new(&m);
    let mut rep = c.preset_check(a.target.family(), a.cap)?;
    rep.merge("relations.", c.relations_check(a.samples, seed, a.cap)?);
    Ok(from_report(rep, json!({"theta_order": big(c.theta_order(a.cap)?)})))
}

pub fn construct_compare(a: &ConstructArgs) -> Res {
    let seed = seed_for(a.seed, "the morphism check")?;
    let m = module(&a.target)?;
    let cm = CanonicalMorphism::new(&m);
    let mut rep = cm.naive_canon_check(a.cap, a.samples, seed)?;
    rep.merge("unitary.", cm.unitary_comparison(a.target.family(), a.cap)?);
    Ok(from_report(rep, json!({"regular": cm.regular()})))
}

pub fn hdet(t: &Target) -> Res {
    let m = module(t)?;
    let r = m.ring().clone();
    let h = quad_module::hdet(&m)?;
    let g = quad_module::gram_det(&m)?;
    let mut rep = Report::new(format!("half determinant of {} over {}", t.family().name(), t.ring));
    rep.check("double_is_gram_det", r.scale(2, h) == g, || format!("2 * {} != {}", r.show(h), r.show(g)));
    Ok(from_report(rep, json!({"hdet": r.elem(h), "gram_det": r.elem(g), "semiregular": quad_module::semiregular(&m)?})))
}

fn nil2_input(a: &Nil2Args) -> Result<(Nil2Module, ofa_core::coeff_ring::Extension), CliError> {
    let ext = registered_extension(&a.ext)?;
    let k = ext.base.clone();
    let m = match (&a.input, a.preset) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            let m = Nil2Module::from_json(v.pointer("/result/module").or_else(|| v.get("module")).unwrap_or(&v))?;
            if m.ring() != &k {
                return Err(CliError::Usage(format!("module ring does not match the base of `{}`", a.ext)));
            }
            m
        }
        (None, Some(Preset::Xy)) => Nil2Module::split(&k, 1, 1, vec![vec![k.one()]])?,
        (None, Some(Preset::Heisenberg)) => Nil2Module::split(&k, 1, 2, vec![vec![0], vec![k.one()], vec![0], vec![0]])?,
        (None, None) => return Err(CliError::Usage("pass --input or --preset".into())),
    };
    Ok((m, ext))
}

pub fn nil2_extend(a: &Nil2Args) -> Res {
    let (m, ext) = nil2_input(a)?;
    let bx = m.boxtimes(&ext.inclusion())?;
    let witness = bx.witness.as_ref().map(|w| bx.module.elem_json(w));
    Ok(info(json!({
        "order": big(bx.module.order()),
        "injective": bx.injective,
        "witness": witness,
        "module": bx.module.to_json(),
    })))
}

pub fn nil2_probe(a: &Nil2Args) -> Res {
    let (m, ext) = nil2_input(a)?;
    Ok(info(json!({"probe": m.universality_probe(&ext.inclusion())?})))
}

pub fn nil2_descend(a: &Nil2Args) -> Res {
    let (m, ext) = nil2_input(a)?;
    Ok(from_report(descent_roundtrip(&m, &ext, a.seed)?, json!({})))
}

pub fn nil2_counterexample(a: &CounterexampleArgs) -> Res {
    let c = counterexample_sqrt2(a.modulus)?;
    let image: Vec<Value> = c.image.iter().map(|x| c.extension.module.elem_json(x)).collect();
    let vanishes = c.image.iter().all(|x| x.is_zero());
    let verdict = if vanishes { "image of F2 ⊗ M0 vanishes" } else { "image of F2 ⊗ M0 does not vanish" };
    Ok(from_report(
        c.report,
        json!({
            "verdict": verdict,
            "image": image,
            "module": c.module.to_json(),
            "extension_order": big(c.extension.module.order()),
            "sizes": {"module": big(c.module.order()), "closure": c.module.closure().len()},
        }),
    ))
}

fn clifford(a: &CliffordArgs) -> Result<CliffordAlg, CliError> {
    Ok(CliffordAlg::new(a.dim, &ring(&a.ring)?)?)
}

pub fn clifford_spin(a: &CliffordArgs) -> Res {
    let c = clifford(a)?;
    let spin = c.spin_enumerate(a.cap)?;
    let r = c.ring.clone();
    let reps: Vec<Option<Vec<El>>> = spin.iter().map(|u| c.vector_rep(u)).collect();
    let id: Vec<El> = (0..a.dim * a.dim).map(|k| if k % (a.dim + 1) == 0 { r.one() } else { 0 }).collect();
    let kernel = reps.iter().filter(|v| v.as_deref() == Some(&id[..])).count();
    let image: std::collections::BTreeSet<&Vec<El>> = reps.iter().flatten().collect();
    let mut rep = Report::new(format!("spin group in dimension {} over {}", a.dim, a.ring));
    rep.check("rank_is_power_of_two", c.rank() == 1 << a.dim, || format!("rank {}", c.rank()));
    rep.check_all("vector_rep_defined", reps.len() as u64, |i| reps[i as usize].is_none().then(|| format!("element {i}")));
    Ok(from_report(rep, json!({"order": spin.len(), "kernel": kernel, "image": image.len(), "rank": c.rank()})))
}

pub fn clifford_relations(a: &CliffordArgs) -> Res {
    Ok(from_report(clif0_relation_check(a.dim, &ring(&a.ring)?)?, json!({})))
}

pub fn clifford_center(a: &CliffordArgs) -> Res {
    let c = clifford(a)?;
    let q = c.ring.size() as u128;
    let size = c.even_center_size();
    let rank = (0..=c.rank() as u32).find(|&k| q.checked_pow(k) == Some(size));
    let mut extra = json!({"size": big(size), "rank": rank});
    if a.dim.is_multiple_of(2) {
        extra["idempotent"] = c.to_json(&c.center_idempotent()?);
    }
    Ok(info(extra))
}

pub fn parabolic(a: &ParabolicArgs) -> Res {
    let g = group(&a.target)?;
    let fam = g.standard_family_rank(a.rank.unwrap_or(a.target.n));
    let gens = g.parabolic_generators(&fam, a.cap)?;
    let p = g.parabolic_p(&fam, a.cap)?;
    let order = g.enumerate(ofa_core::unitary::GROUP_CAP)?.len();
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for (name, _) in &gens {
        *counts.entry(name.as_str()).or_default() += 1;
    }
    let mut rep = g.elementary_check(&fam, a.cap)?;
    rep.check_all("parabolic_contains_generators", gens.len() as u64, |i| {
        let (name, x) = &gens[i as usize];
        p.binary_search(x).is_err().then(|| format!("{name}: {}", g.show(x)))
    });
    rep.check("parabolic_proper", p.len() < order, || format!("parabolic has all {order} elements"));
    Ok(from_report(rep, json!({"generators": counts, "parabolic_order": p.len(), "group_order": order})))
}
