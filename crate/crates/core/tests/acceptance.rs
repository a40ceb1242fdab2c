//! The eleven acceptance criteria, one PASS/FAIL line each.

mod common;

use std::time::Instant;

use common::{At, Order};
use inflator_core::directory::DirectoryElement;
use inflator_core::fields::{parse_element, rat, FieldElement, FieldId, HahnSeries, Rational};
use inflator_core::fundamental::{classify_tame, membership, residue_endo, Classification};
use inflator_core::hahn;
use inflator_core::inflators::{
    catalog, check_morphism, malleability_probe, refute_twist_step, Inflator, Verdict,
};
use inflator_core::lattice::corpus::{corpus, module_lattice};
use inflator_core::lattice::{flatten, rk0, rk_bot};
use inflator_core::linalg::Subspace;
use inflator_core::mutation::{
    check_iterated, check_monotone, mutate, taming_line, vandermonde_certificate, Line,
};
use inflator_core::report::Status;
use inflator_core::sample;
use inflator_core::suites::{hahn_lines, morphism_inflators, mutation_pairs};
use num_traits::Zero;
use rand::Rng;

const SEED: u64 = 20240601;

fn build(name: &str) -> Inflator {
    Inflator::build(&catalog::by_name(name).unwrap()).unwrap()
}

fn el(field: FieldId, s: &str) -> FieldElement {
    parse_element(field, s).unwrap()
}

fn line(field: FieldId, xs: &[&str]) -> Line {
    Line::new(field, xs.iter().map(|s| el(field, s)).collect()).unwrap()
}

/// `Ok(())` or a description of what went wrong.
type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn morphism_axioms() -> Outcome {
    let start = Instant::now();
    let fs = morphism_inflators().map_err(|e| e.to_string())?;
    ensure(fs.len() == 11, || format!("{} inflators", fs.len()))?;
    for (name, f) in &fs {
        let r = check_morphism(f, 200, SEED, 3);
        ensure(r.passed(), || format!("{name}:\n{r}"))?;
    }
    let mut rng = sample::trial_rng(SEED, 101);
    for (name, at) in [("valuation-0", Some(0)), ("valuation-inf", None::<i64>)] {
        let f = build(name);
        for _ in 0..100 {
            let n = rng.gen_range(1..=3);
            let v = sample::subspace(&mut rng, FieldId::Qt, n);
            let img = f.evaluate(n, &v).map_err(|e| e.to_string())?;
            ensure(
                common::valuation_image_matches(&img.parts[0], &v, at),
                || format!("{name}: {v:?}"),
            )?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 120.0, || format!("{secs:.1}s"))
}

fn valuation_ring() -> Outcome {
    let f = build("valuation-0");
    let mut rng = sample::trial_rng(SEED, 102);
    let at: At = Some(0);
    for _ in 0..100 {
        let a = sample::element(&mut rng, FieldId::Qt);
        let m = membership(&f, &a).map_err(|e| e.to_string())?;
        ensure(
            m.in_r == common::in_o(&a, at) && m.in_i == common::in_m(&a, at),
            || format!("membership of {a}"),
        )?;
    }
    let in_ring = |rng: &mut rand_chacha::ChaCha8Rng| {
        let a = sample::element(rng, FieldId::Qt);
        if common::in_o(&a, at) {
            a
        } else {
            a.inv().unwrap()
        }
    };
    let res = |x: &FieldElement| {
        residue_endo(&f, x).unwrap().blocks[0][0][0]
            .as_rational()
            .unwrap()
    };
    for _ in 0..50 {
        let (a, b) = (in_ring(&mut rng), in_ring(&mut rng));
        let (ra, rb) = (res(&a), res(&b));
        ensure(ra == common::res(&a, at), || format!("residue of {a}"))?;
        ensure(
            res(&(&a * &b)) == &ra * &rb && res(&(&a + &b)) == &ra + &rb,
            || format!("pair {a}, {b}"),
        )?;
    }
    Ok(())
}

fn product_ring() -> Outcome {
    let f = build("product-0-1");
    let mut rng = sample::trial_rng(SEED, 103);
    for _ in 0..100 {
        let a = sample::element(&mut rng, FieldId::Qt);
        let m = membership(&f, &a).map_err(|e| e.to_string())?;
        let in_r = common::in_o(&a, Some(0)) && common::in_o(&a, Some(1));
        let in_i = common::in_m(&a, Some(0)) && common::in_m(&a, Some(1));
        ensure(m.in_r == in_r && m.in_i == in_i, || {
            format!("membership of {a}")
        })?;
    }
    Ok(())
}

fn descended_galois() -> Outcome {
    let f = build("fiona");
    let mut rng = sample::trial_rng(SEED, 104);
    for _ in 0..50 {
        let a = sample::element(&mut rng, FieldId::Qi);
        let g = a.as_gaussian().unwrap();
        let m = membership(&f, &a).map_err(|e| e.to_string())?;
        ensure(m.in_r == g.im.is_zero() && m.in_i == a.is_zero(), || {
            format!("membership of {a}")
        })?;
    }
    Ok(())
}

fn fiona_mutation() -> Outcome {
    let g = mutate(&build("fiona"), &line(FieldId::Qi, &["1", "i"])).map_err(|e| e.to_string())?;
    let (_, _, mprime) = g.mutation_parts().unwrap();
    ensure(mprime.length() == 2, || {
        format!("length {}", mprime.length())
    })?;
    let dead = mprime.parts.iter().filter(|p| p.is_zero()).count();
    ensure(dead == 1, || format!("{dead} dead summands"))?;
    let mut rng = sample::trial_rng(SEED, 105);
    for _ in 0..50 {
        let a = sample::element(&mut rng, FieldId::Qi);
        let m = membership(&g, &a).map_err(|e| e.to_string())?;
        ensure(m.in_r && m.in_i == a.is_zero(), || {
            format!("membership of {a}")
        })?;
    }
    Ok(())
}

fn gerald_taming() -> Outcome {
    let f = build("gerald");
    let a = el(FieldId::Qt, "t+1");
    let qs = [rat(0, 1), rat(1, 1), rat(2, 1)];
    let before = classify_tame(&f, &a, &qs).map_err(|e| e.to_string())?;
    ensure(before.classification == Classification::Wild, || {
        "t+1 not wild".into()
    })?;
    ensure(before.probes[1..].iter().all(|p| !p.in_r), || {
        "a probe succeeded".into()
    })?;
    let g = mutate(&f, &taming_line(&a, 2).unwrap()).map_err(|e| e.to_string())?;
    let mut rng = sample::trial_rng(SEED, 106);
    for _ in 0..50 {
        let x = sample::element(&mut rng, FieldId::Qt);
        let m = membership(&g, &x).map_err(|e| e.to_string())?;
        let in_r = common::in_o(&x, Some(0)) && common::in_o(&x, Some(1));
        let in_i = common::in_m(&x, Some(0)) && common::in_m(&x, Some(1));
        ensure(m.in_r == in_r && m.in_i == in_i, || {
            format!("membership of {x}")
        })?;
    }
    let after = classify_tame(&g, &a, &qs).map_err(|e| e.to_string())?;
    ensure(after.classification == Classification::Tame, || {
        "t+1 still wild".into()
    })
}

/// `(ε, qε, …, q^d ε)` lies in part `part` of `ς_{d+1}(K·(1, a, …, a^d))`.
fn certificate_holds(
    f: &Inflator,
    a: &FieldElement,
    q: &Rational,
    part: usize,
    eps: &[String],
) -> bool {
    let d = f.degree();
    let k = f.codomain().summands[part].field;
    let eps: Vec<FieldElement> = eps.iter().map(|s| el(k, s)).collect();
    if eps.iter().all(|x| x.is_zero()) {
        return false;
    }
    let mut powers = vec![FieldElement::one(f.source())];
    for _ in 0..d {
        powers.push(powers.last().unwrap() * a);
    }
    let l = Subspace::line(f.source(), powers).unwrap();
    let img = f.evaluate(d + 1, &l).unwrap();
    let qk = FieldElement::from_rational(k, q.clone());
    let mut v = Vec::new();
    let mut c = FieldElement::one(k);
    for _ in 0..=d {
        v.extend(eps.iter().map(|x| x * &c));
        c = &c * &qk;
    }
    img.parts[part].contains_vector(&v)
}

fn mutation_laws() -> Outcome {
    let mut rng = sample::trial_rng(SEED, 107);
    let mut certificates = 0;
    for (name, f, l1, l2) in mutation_pairs().map_err(|e| e.to_string())? {
        let xs: Vec<FieldElement> = (0..30)
            .map(|_| sample::element(&mut rng, f.source()))
            .collect();
        let r = check_monotone(&f, &l1, &xs).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{name} monotone:\n{r}"))?;
        let g = mutate(&f, &l1).map_err(|e| e.to_string())?;
        for x in &xs {
            let (m, mg) = (membership(&f, x).unwrap(), membership(&g, x).unwrap());
            ensure((!m.in_r || mg.in_r) && (!m.in_i || mg.in_i), || {
                format!("{name}: {x} lost")
            })?;
        }
        let r = check_iterated(&f, &l1, &l2, 20, SEED, 2).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{name} iterated:\n{r}"))?;

        let qs: Vec<Rational> = (0..=f.degree() as i64).map(|q| rat(q, 1)).collect();
        for x in xs.iter().filter(|x| !x.is_zero()).take(10) {
            if qs
                .iter()
                .any(|q| *x == FieldElement::from_rational(f.source(), q.clone()))
            {
                continue;
            }
            let g = mutate(&f, &taming_line(x, f.degree()).unwrap()).unwrap();
            let t = classify_tame(&g, x, &qs).unwrap();
            for (p, q) in t.probes[1..].iter().zip(&qs) {
                if !p.in_r {
                    let c = vandermonde_certificate(&f, x, q)
                        .map_err(|e| format!("{name}: {x} at {q}: {e}"))?;
                    ensure(certificate_holds(&f, x, q, c.part, &c.epsilon), || {
                        format!("{name}: bad certificate for {x}")
                    })?;
                    certificates += 1;
                }
            }
        }
    }
    println!("    {certificates} certificates verified");
    Ok(())
}

fn lattices() -> Outcome {
    let start = Instant::now();
    for entry in corpus() {
        let l = &entry.lattice;
        let o = Order::new(l);
        let name = entry.name;
        ensure(
            o.modular() == entry.modular && l.is_modular() == entry.modular,
            || format!("{name}: modularity"),
        )?;
        if !entry.modular {
            ensure(rk0(l).is_err(), || {
                format!("{name}: rank of a nonmodular lattice")
            })?;
            continue;
        }
        let cube = o.cube_rank(None);
        ensure(Some(cube) == entry.rk0, || {
            format!("{name}: oracle cube rank {cube}, expected {:?}", entry.rk0)
        })?;
        ensure(rk0(l).unwrap() == cube, || {
            format!("{name}: rk0 {}", rk0(l).unwrap())
        })?;
        if l.len() <= 12 {
            let (m, j) = (o.irredundant_rank(true), o.irredundant_rank(false));
            ensure(m == cube && j == cube, || {
                format!("{name}: cube {cube}, meets {m}, joins {j}")
            })?;
        }
        let bot_rank = o.cube_rank(Some(o.bottom()));
        ensure(rk_bot(l).unwrap() == bot_rank, || format!("{name}: rk_bot"))?;

        let fl = flatten(l).map_err(|e| e.to_string())?;
        let s = o.socle();
        ensure(fl.socle == s, || format!("{name}: socle"))?;
        let f = |x: usize| o.meet(x, s);
        ensure((0..o.n).all(|x| fl.map[x] == f(x)), || {
            format!("{name}: map")
        })?;
        let b = o.bottom();
        let below_s: Vec<usize> = (0..o.n).filter(|&x| l.leq(x, s)).collect();
        let atoms = o.atoms();
        let atomistic = below_s.iter().all(|&x| {
            let under: Vec<usize> = atoms.iter().copied().filter(|&a| l.leq(a, x)).collect();
            under.iter().fold(b, |m, &a| o.join(m, a)) == x
        });
        ensure(atomistic && o.height(b, s) == bot_rank, || {
            format!("{name}: ff1")
        })?;
        ensure(below_s.iter().all(|&y| (0..o.n).any(|x| f(x) == y)), || {
            format!("{name}: ff2")
        })?;
        for x in 0..o.n {
            for y in 0..o.n {
                ensure(!l.leq(x, y) || l.leq(f(x), f(y)), || format!("{name}: ff3"))?;
                ensure(f(o.meet(x, y)) == o.meet(f(x), f(y)), || {
                    format!("{name}: ff4")
                })?;
                ensure(l.leq(o.join(f(x), f(y)), f(o.join(x, y))), || {
                    format!("{name}: ff5")
                })?;
            }
            ensure((x == b) == (f(x) == b), || format!("{name}: ff6"))?;
        }
        if l.len() <= 10 {
            ensure(o.nonprincipal_filter().is_none(), || {
                format!("{name}: nonprincipal filter")
            })?;
            ensure(l.nonprincipal_filter().is_none(), || {
                format!("{name}: library filter")
            })?;
        }
    }
    let (ml, labels) = module_lattice().map_err(|e| e.to_string())?;
    let o = Order::new(&ml);
    ensure(
        o.modular() && o.cube_rank(None) == 2 && rk0(&ml).unwrap() == 2,
        || format!("module lattice {labels:?}"),
    )?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("{secs:.1}s"))
}

fn hahn_series(s: &str) -> HahnSeries {
    match el(FieldId::Hahn, s) {
        FieldElement::Hahn(h) => h,
        _ => unreachable!(),
    }
}

fn endless() -> Outcome {
    let two = rat(2, 1);
    for (name, l) in hahn_lines() {
        let gamma = l[1..]
            .iter()
            .filter_map(|a| common::min_exp(a, true))
            .map(|e| &two - e)
            .fold(Rational::zero(), |m, x| if x > m { x } else { m });
        ensure(gamma == rat(5, 3), || {
            format!("{name}: oracle gamma {gamma}")
        })?;
        let p = hahn::mutated_gamma(&l).map_err(|e| e.to_string())?;
        ensure(p.gamma == gamma, || format!("{name}: gamma {}", p.gamma))?;
        let w = hahn::endless_witness(&p).map_err(|e| e.to_string())?;
        let (x, y, ratio) = (hahn_series(&w.x), hahn_series(&w.y), hahn_series(&w.ratio));
        let in_pedestal = |z: &HahnSeries| {
            common::min_exp(z, false).is_none_or(|e| e >= gamma)
                && common::min_exp(z, true).is_none_or(|e| e >= two)
        };
        ensure(in_pedestal(&x) && !in_pedestal(&y), || {
            format!("{name}: membership of witness")
        })?;
        ensure(x.mul(&ratio) == y, || format!("{name}: x·ratio ≠ y"))?;
        ensure(
            ratio.terms().iter().all(|(e, _)| *e >= Rational::zero()),
            || format!("{name}: ratio outside O"),
        )?;
    }
    let mut rng = sample::trial_rng(SEED, 109);
    for _ in 0..100 {
        let (x, y) = (hahn::sample_in_r(&mut rng), hahn::sample_in_r(&mut rng));
        ensure(common::hahn_in_r(&x) && common::hahn_in_r(&y), || {
            "sample outside R".into()
        })?;
        ensure(
            common::hahn_in_r(&x.add(&y)) && common::hahn_in_r(&x.mul(&y)),
            || format!("{} {}", x.render(), y.render()),
        )?;
    }
    Ok(())
}

fn reconstruction() -> Outcome {
    let f = build("valuation-0");
    let mut rng = sample::trial_rng(SEED, 110);
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let v = sample::subspace(&mut rng, FieldId::Qt, n);
        let direct = f.evaluate(n, &v).map_err(|e| e.to_string())?;
        let rebuilt = common::reconstruct(&f, &v);
        ensure(direct.parts[0] == rebuilt, || format!("{v:?}"))?;
    }
    Ok(())
}

fn malleability() -> Outcome {
    for name in ["valuation-0", "fiona"] {
        let r = malleability_probe(&build(name), 100, SEED);
        let lifted = r.count(Status::Pass);
        ensure(lifted == 100, || {
            format!("{name}: {lifted}/100 lifted\n{r}")
        })?;
    }
    let eric = build("eric");
    let l = Subspace::line(
        FieldId::Qi,
        vec![el(FieldId::Qi, "1"), el(FieldId::Qi, "i")],
    )
    .unwrap();
    let y = DirectoryElement::new(
        eric.codomain().clone(),
        2,
        vec![Subspace::zero(FieldId::Qi, 2), l],
    )
    .unwrap();
    let v = refute_twist_step(&eric, &y).map_err(|e| e.to_string())?;
    ensure(matches!(v, Verdict::Refuted { .. }), || format!("{v:?}"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 morphism axioms", morphism_axioms),
        ("2 valuation ring and residues", valuation_ring),
        ("3 product ring", product_ring),
        ("4 descended Galois ring", descended_galois),
        ("5 descended Galois mutation", fiona_mutation),
        ("6 taming t+1", gerald_taming),
        ("7 mutation laws and certificates", mutation_laws),
        ("8 lattices", lattices),
        ("9 endless mutation", endless),
        ("10 reconstruction from ring and residues", reconstruction),
        ("11 malleability", malleability),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(()) => println!("PASS {name} ({:.1}s)", start.elapsed().as_secs_f64()),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed: {failed:?}");
        std::process::exit(1);
    }
}
