//! Named batches of checks run by `inflator suite`.

use rand::Rng;
use serde_json::{json, Value};

use crate::directory::Endo;
use crate::error::{Error, Result};
use crate::fields::{int, parse_element, FieldElement, FieldId, HahnSeries, Place, Rational};
use crate::fundamental::{
    classify_tame, default_qs, membership, mv_type_test, residue_compose_check, Classification,
};
use crate::hahn;
use crate::inflators::{catalog, check_lattice_compat, check_morphism, Inflator};
use crate::lattice::corpus::{corpus, module_lattice};
use crate::lattice::cube::{
    max_independent_over_bottom, max_irredundant_join, max_irredundant_meet, max_strict_cube,
};
use crate::lattice::flatten::{flatten, verify_flattening};
use crate::mutation::{
    check_iterated, check_monotone, mutate, taming_line, vandermonde_certificate, Line,
};
use crate::report::Report;
use crate::sample;

pub const SUITES: [&str; 6] = [
    "morphism",
    "fundamental",
    "mutation",
    "lattice",
    "hahn",
    "all",
];

pub fn run(name: &str, seed: u64, trials: usize, max_level: usize) -> Result<Report> {
    let mut report = match name {
        "morphism" => morphism(seed, trials, max_level)?,
        "fundamental" => fundamental(seed, trials)?,
        "mutation" => mutation(seed, trials)?,
        "lattice" => lattice()?,
        "hahn" => hahn_suite(seed, trials),
        "all" => {
            let mut r = Report::new("suite", seed);
            for s in &SUITES[..5] {
                r.extend(run(s, seed, trials, max_level)?);
            }
            r
        }
        _ => {
            return Err(Error::Precondition(format!(
                "unknown suite {name:?}; expected one of {SUITES:?}"
            )))
        }
    };
    report.command = format!("suite {name}");
    report.seed = seed;
    Ok(report)
}

fn absorb(into: &mut Report, prefix: &str, from: Report) {
    for mut c in from.checks {
        c.name = format!("{prefix}: {}", c.name);
        into.push(c);
    }
    into.notes.extend(from.notes);
}

fn el(field: FieldId, s: &str) -> FieldElement {
    parse_element(field, s).expect("literal")
}

fn line(field: FieldId, xs: &[&str]) -> Line {
    Line::new(field, xs.iter().map(|s| el(field, s)).collect()).expect("line")
}

/// The seven base inflators and a mutation of each of the last four.
pub fn morphism_inflators() -> Result<Vec<(String, Inflator)>> {
    let mut out = Vec::new();
    for (name, spec) in catalog::all() {
        if name != "eric" {
            out.push((name.to_string(), Inflator::build(&spec)?));
        }
    }
    let mutations = [
        ("gerald", line(FieldId::Qt, &["1", "t+1"])),
        ("galois", line(FieldId::Qi, &["1", "i"])),
        ("fiona", line(FieldId::Qi, &["1", "i"])),
        ("restrict", line(FieldId::Qi, &["1", "i"])),
    ];
    for (name, l) in mutations {
        let f = Inflator::build(&catalog::by_name(name).expect("catalog"))?;
        out.push((
            format!("{name} mutated along ({})", l.render().join(", ")),
            mutate(&f, &l)?,
        ));
    }
    Ok(out)
}

pub fn morphism(seed: u64, trials: usize, max_level: usize) -> Result<Report> {
    let mut r = Report::new("suite morphism", seed);
    for (name, f) in morphism_inflators()? {
        absorb(&mut r, &name, check_morphism(&f, trials, seed, max_level));
        absorb(
            &mut r,
            &name,
            check_lattice_compat(&f, trials / 4 + 1, seed, max_level),
        );
    }
    Ok(r)
}

/// A random element with nonnegative valuation at `p`.
fn sample_in_o<R: Rng>(rng: &mut R, p: &Place) -> Result<FieldElement> {
    let x = sample::element(rng, p.field());
    Ok(if p.in_ring(&x)? { x } else { x.inv()? })
}

fn block_concat(parts: &[Endo]) -> Vec<Vec<crate::linalg::Vector>> {
    parts.iter().flat_map(|e| e.blocks.clone()).collect()
}

pub fn fundamental(seed: u64, trials: usize) -> Result<Report> {
    let mut r = Report::new("suite fundamental", seed);
    let mut rng = sample::trial_rng(seed, 0);
    let p0 = Place::at(0);
    let p1 = Place::at(1);
    let val0 = Inflator::build(&catalog::valuation_at_zero())?;

    let mut bad = Vec::new();
    for _ in 0..trials {
        let a = sample::element(&mut rng, FieldId::Qt);
        let m = membership(&val0, &a)?;
        let ok = m.in_r == p0.in_ring(&a)?
            && m.in_i == p0.in_ideal(&a)?
            && match &m.residue_endo {
                Some(e) => e.blocks[0][0][0] == p0.residue(&a)?,
                None => true,
            };
        if !ok {
            bad.push(a.to_string());
        }
    }
    r.check(
        "valuation ring is {val ≥ 0}, ideal is {val > 0}",
        bad.is_empty(),
        json!({"samples": trials, "violations": bad}),
    );

    let mut bad = Vec::new();
    for _ in 0..trials / 2 {
        let a = sample_in_o(&mut rng, &p0)?;
        let b = sample_in_o(&mut rng, &p0)?;
        if !residue_compose_check(&val0, &a, &b)?.passed() {
            bad.push(json!([a.to_string(), b.to_string()]));
        }
    }
    r.check(
        "residue map is a ring homomorphism",
        bad.is_empty(),
        json!({"violations": bad}),
    );

    let prod = Inflator::build(&catalog::product_zero_one())?;
    let factors = prod.factors().expect("product").to_vec();
    let mut bad = Vec::new();
    for _ in 0..trials {
        let a = sample::element(&mut rng, FieldId::Qt);
        let m = membership(&prod, &a)?;
        let ms: Vec<_> = factors
            .iter()
            .map(|f| membership(f, &a))
            .collect::<Result<_>>()?;
        let mut ok = m.in_r == ms.iter().all(|x| x.in_r) && m.in_i == ms.iter().all(|x| x.in_i);
        if let Some(e) = &m.residue_endo {
            let parts: Vec<Endo> = ms
                .iter()
                .map(|x| x.residue_endo.clone().expect("in R"))
                .collect();
            ok &= e.blocks == block_concat(&parts);
        }
        if !ok {
            bad.push(a.to_string());
        }
    }
    r.check(
        "product ring is the intersection of factor rings",
        bad.is_empty(),
        json!({"samples": trials, "violations": bad}),
    );

    let fiona = Inflator::build(&catalog::fiona())?;
    let mut bad = Vec::new();
    for _ in 0..trials / 2 {
        let a = sample::element(&mut rng, FieldId::Qi);
        let m = membership(&fiona, &a)?;
        if m.in_r != a.as_rational().is_some() || m.in_i != a.is_zero() {
            bad.push(a.to_string());
        }
    }
    r.check(
        "descended Galois ring is Q, ideal is 0",
        bad.is_empty(),
        json!({"violations": bad}),
    );

    let restrict = Inflator::build(&catalog::restrict_qi())?;
    let mut bad = Vec::new();
    for _ in 0..trials / 2 {
        let a = sample::element(&mut rng, FieldId::Qi);
        let g = a.as_gaussian().expect("Qi");
        let q = |x: &Rational| FieldElement::Q(x.clone());
        let expected = vec![vec![q(&g.re), q(&-&g.im)], vec![q(&g.im), q(&g.re)]];
        let m = membership(&restrict, &a)?;
        if !m.in_r || m.residue_endo.map(|e| e.blocks[0].clone()) != Some(expected) {
            bad.push(a.to_string());
        }
    }
    r.check(
        "restriction of scalars: ring is all of Q(i)",
        bad.is_empty(),
        json!({"violations": bad}),
    );

    for (name, f, place) in [
        ("valuation-0", &val0, Some(&p0)),
        ("product-0-1", &prod, None),
        ("fiona", &fiona, None),
    ] {
        let mut bad = Vec::new();
        for _ in 0..trials / 4 + 1 {
            let (a, b) = match place {
                Some(p) => (sample_in_o(&mut rng, p)?, sample_in_o(&mut rng, p)?),
                None if f.source() == FieldId::Qi => (
                    FieldElement::from_rational(FieldId::Qi, sample::small_rational(&mut rng)),
                    FieldElement::from_rational(FieldId::Qi, sample::small_rational(&mut rng)),
                ),
                None => {
                    let a = sample_in_o(&mut rng, &p0)?;
                    let b = sample_in_o(&mut rng, &p1)?;
                    let both = |x: FieldElement| -> Result<FieldElement> {
                        Ok(if p1.in_ring(&x)? {
                            x
                        } else {
                            &x * &(&FieldElement::t(FieldId::Qt)? - &FieldElement::one(FieldId::Qt))
                                .pow(
                                    -p1.valuation(&x)?
                                        .finite()
                                        .expect("nonzero")
                                        .to_integer()
                                        .try_into()
                                        .unwrap_or(0i64),
                                )?
                        })
                    };
                    (both(a)?, both(b)?)
                }
            };
            if !membership(f, &a)?.in_r || !membership(f, &b)?.in_r {
                continue;
            }
            let q = sample::small_rational(&mut rng);
            let qe = FieldElement::from_rational(f.source(), q.clone());
            let ok = membership(f, &(&a + &b))?.in_r
                && membership(f, &(&a * &b))?.in_r
                && membership(f, &qe)?.residue_endo == Some(Endo::scalar(f.codomain(), &q));
            if !ok {
                bad.push(json!([a.to_string(), b.to_string()]));
            }
        }
        r.check(
            format!("{name}: ring closure and rational residues"),
            bad.is_empty(),
            json!({"violations": bad}),
        );
    }

    let mut bad = Vec::new();
    for _ in 0..trials / 4 + 1 {
        let a = sample::element(&mut rng, FieldId::Qt);
        let a = if p0.in_ideal(&a)? {
            a
        } else {
            &a * &FieldElement::t(FieldId::Qt)?.pow(
                1 - p0
                    .valuation(&a)?
                    .finite()
                    .map(|v| v.to_integer().try_into().unwrap_or(0i64))
                    .unwrap_or(0),
            )?
        };
        if !membership(&val0, &a)?.in_i {
            continue;
        }
        let one = FieldElement::one(FieldId::Qt);
        let u = &one + &a;
        if !(membership(&val0, &u)?.in_r && membership(&val0, &u.inv()?)?.in_r) {
            bad.push(a.to_string());
        }
    }
    r.check(
        "1 + I consists of units of R",
        bad.is_empty(),
        json!({"violations": bad}),
    );

    let gerald = Inflator::build(&catalog::gerald())?;
    let a = el(FieldId::Qt, "t+1");
    let t = classify_tame(&gerald, &a, &default_qs(3))?;
    r.check(
        "gerald: t+1 is wild",
        t.classification == Classification::Wild,
        serde_json::to_value(&t)?,
    );
    let mv = mv_type_test(&gerald, std::slice::from_ref(&a), &default_qs(2))?;
    r.check(
        "gerald: t+1 certifies failure of multi-valuation type",
        !mv.passed(),
        Value::Null,
    );
    let mv = mv_type_test(
        &prod,
        &[
            el(FieldId::Qt, "1/(t^2-t)"),
            el(FieldId::Qt, "t+1"),
            el(FieldId::Qt, "1/t"),
        ],
        &default_qs(2),
    )?;
    r.check(
        "product: no counterexample among samples",
        mv.passed(),
        Value::Null,
    );
    r.note("multi-valuation type passes are sample-limited evidence");
    Ok(r)
}

/// `(name, inflator, L₁, L₂)` for the mutation laws.
pub fn mutation_pairs() -> Result<Vec<(String, Inflator, Line, Line)>> {
    let qt = |a: &str| line(FieldId::Qt, &["1", a]);
    let qi = |a: &str| line(FieldId::Qi, &["1", a]);
    let cases = [
        ("valuation-0", qt("t"), qt("t+1")),
        ("valuation-inf", qt("t"), qt("t-1")),
        ("product-0-1", qt("t"), qt("t+1")),
        ("gerald", qt("t+1"), qt("t")),
        ("galois", qi("i"), qi("1+i")),
        ("fiona", qi("i"), qi("1+i")),
        ("restrict", qi("i"), qi("1+i")),
    ];
    cases
        .into_iter()
        .map(|(n, l1, l2)| {
            Ok((
                n.to_string(),
                Inflator::build(&catalog::by_name(n).expect("catalog"))?,
                l1,
                l2,
            ))
        })
        .collect()
}

pub fn mutation(seed: u64, trials: usize) -> Result<Report> {
    let mut r = Report::new("suite mutation", seed);
    let mut rng = sample::trial_rng(seed, 1);
    let samples = (trials / 4).clamp(4, 30);
    for (name, f, l1, l2) in mutation_pairs()? {
        let elems: Vec<FieldElement> = (0..samples)
            .map(|_| sample::element(&mut rng, f.source()))
            .collect();
        let mono = check_monotone(&f, &l1, &elems)?;
        r.check(
            format!("{name}: R and I grow under mutation"),
            mono.passed(),
            json!({"samples": samples}),
        );
        absorb(
            &mut r,
            &name,
            check_iterated(&f, &l1, &l2, (trials / 10).clamp(2, 20), seed, 2)?,
        );
    }

    let fiona = Inflator::build(&catalog::fiona())?;
    let g = mutate(&fiona, &line(FieldId::Qi, &["1", "i"]))?;
    let (_, _, mprime) = g.mutation_parts().expect("mutated");
    let dead = mprime.parts.iter().filter(|p| p.is_zero()).count();
    r.check(
        "fiona along (1, i): length 2, one dead summand",
        g.degree() == 2 && dead == 1,
        json!({"codomain": g.codomain().to_string()}),
    );
    let mut bad = Vec::new();
    for _ in 0..samples {
        let a = sample::element(&mut rng, FieldId::Qi);
        let m = membership(&g, &a)?;
        if !m.in_r || m.in_i != a.is_zero() {
            bad.push(a.to_string());
        }
    }
    r.check(
        "fiona along (1, i): every element in R′, I′ = 0",
        bad.is_empty(),
        json!({"violations": bad}),
    );

    let gerald = Inflator::build(&catalog::gerald())?;
    let a = el(FieldId::Qt, "t+1");
    let g = mutate(&gerald, &taming_line(&a, 2)?)?;
    let (p0, p1) = (Place::at(0), Place::at(1));
    let mut bad = Vec::new();
    for _ in 0..samples {
        let x = sample::element(&mut rng, FieldId::Qt);
        let m = membership(&g, &x)?;
        let in_r = p0.in_ring(&x)? && p1.in_ring(&x)?;
        let in_i = p0.in_ideal(&x)? && p1.in_ideal(&x)?;
        if m.in_r != in_r || m.in_i != in_i {
            bad.push(x.to_string());
        }
    }
    r.check(
        "gerald along (1, t+1): R′ = O₀ ∩ O₁, I′ = m₀ ∩ m₁",
        bad.is_empty(),
        json!({"violations": bad}),
    );

    let qs = default_qs(3);
    let mut tamed = 0;
    let mut certs = Vec::new();
    let mut bad = Vec::new();
    for (name, f, _, _) in mutation_pairs()? {
        let qs = default_qs(f.degree() + 1);
        for _ in 0..samples / 2 {
            let x = sample::nonzero_element(&mut rng, f.source());
            if qs
                .iter()
                .any(|q| x == FieldElement::from_rational(f.source(), q.clone()))
            {
                continue;
            }
            if classify_tame(&f, &x, &qs)?.classification == Classification::Tame {
                continue;
            }
            tamed += 1;
            let g = mutate(&f, &taming_line(&x, f.degree())?)?;
            let t = classify_tame(&g, &x, &qs)?;
            if t.classification != Classification::Tame || !t.bound_holds {
                bad.push(json!({"inflator": name, "x": x.to_string()}));
            }
            for (p, q) in t.probes[1..].iter().zip(&qs) {
                if !p.in_r {
                    match vandermonde_certificate(&f, &x, q) {
                        Ok(c) => certs.push(serde_json::to_value(c)?),
                        Err(e) => bad.push(json!({"inflator": name, "x": x.to_string(), "q": q.to_string(), "error": e.to_string()})),
                    }
                }
            }
        }
    }
    let t = classify_tame(&g, &a, &qs)?;
    r.check(
        "gerald along (1, t+1): t+1 is tame",
        t.classification == Classification::Tame && t.bound_holds,
        serde_json::to_value(&t)?,
    );
    r.check(
        "taming lines tame every wild sample; failed probes carry certificates",
        bad.is_empty(),
        json!({"wild_samples": tamed, "certificates": certs.len(), "violations": bad}),
    );
    Ok(r)
}

pub fn lattice() -> Result<Report> {
    let mut r = Report::new("suite lattice", 0);
    for entry in corpus() {
        let l = &entry.lattice;
        let name = entry.name;
        let witness = l.modularity_witness();
        r.check(
            format!("{name}: modularity"),
            witness.is_none() == entry.modular,
            json!({"witness": witness}),
        );
        if !entry.modular {
            continue;
        }
        let rk = crate::lattice::rk0(l)?;
        let cube = max_strict_cube(l, None).generators.len();
        let joins = max_irredundant_join(l).len();
        let meets = max_irredundant_meet(l).len();
        r.check(
            format!("{name}: rk0"),
            Some(rk) == entry.rk0 && cube == rk && joins == rk && meets == rk,
            json!({"rk0": rk, "expected": entry.rk0, "cube": cube, "joins": joins, "meets": meets}),
        );
        let rkb = crate::lattice::rk_bot(l)?;
        let cube_b = max_strict_cube(l, Some(l.bottom())).generators.len();
        r.check(
            format!("{name}: rk_bot"),
            rkb == cube_b,
            json!({"rk_bot": rkb, "cube": cube_b}),
        );
        let fl = flatten(l)?;
        absorb(&mut r, name, verify_flattening(l, &fl)?);
        if l.len() <= 10 {
            let f = l.nonprincipal_filter();
            r.check(
                format!("{name}: filters are principal"),
                f.is_none(),
                json!({"filter": f}),
            );
        }
    }
    let (l, labels) = module_lattice()?;
    let rk = crate::lattice::rk0(&l)?;
    r.check(
        "modules over O₀ ∩ O₁: rk0 = 2",
        rk == 2 && max_strict_cube(&l, None).generators.len() == 2,
        json!({"elements": labels, "rk0": rk, "rk_bot": max_independent_over_bottom(&l).len()}),
    );
    Ok(r)
}

pub fn hahn_lines() -> Vec<(&'static str, Vec<HahnSeries>)> {
    let h = |s: &str| match parse_element(FieldId::Hahn, s).expect("literal") {
        FieldElement::Hahn(x) => x,
        _ => unreachable!(),
    };
    vec![
        ("(1, t^(1/3))", vec![h("1"), h("t^(1/3)")]),
        (
            "(1, t^(1/3), t^(5/3))",
            vec![h("1"), h("t^(1/3)"), h("t^(5/3)")],
        ),
        ("(1, t + t^(1/3))", vec![h("1"), h("t+t^(1/3)")]),
    ]
}

pub fn hahn_suite(seed: u64, trials: usize) -> Report {
    let mut r = Report::new("suite hahn", seed);
    for (name, l) in hahn_lines() {
        let res =
            hahn::mutated_gamma(&l).and_then(|p| Ok((p.gamma.clone(), hahn::endless_witness(&p)?)));
        match res {
            Ok((gamma, w)) => r.check(
                format!("line {name}"),
                gamma < int(2) && w.verdict == "not_stabilized_by_O",
                serde_json::to_value(&w).unwrap_or(Value::Null),
            ),
            Err(e) => r.check(
                format!("line {name}"),
                false,
                json!({"error": e.to_string()}),
            ),
        }
    }
    let mut rng = sample::trial_rng(seed, 2);
    let mut bad = Vec::new();
    for _ in 0..trials {
        let (x, y) = (hahn::sample_in_r(&mut rng), hahn::sample_in_r(&mut rng));
        if !hahn::in_r(&x.add(&y)) || !hahn::in_r(&x.mul(&y)) {
            bad.push(json!([x.render(), y.render()]));
        }
    }
    r.check(
        "R is closed under + and ×",
        bad.is_empty(),
        json!({"samples": trials, "violations": bad}),
    );
    let mut bad = Vec::new();
    for _ in 0..2 * trials {
        let (x, y) = (
            sample::hahn_series(&mut rng, 4),
            sample::hahn_series(&mut rng, 4),
        );
        let ((gx, hx), (gy, hy)) = (hahn::even_odd(&x), hahn::even_odd(&y));
        let (gxy, hxy) = hahn::even_odd(&x.mul(&y));
        if gxy != gx.mul(&gy).add(&hx.mul(&hy)) || hxy != gx.mul(&hy).add(&hx.mul(&gy)) {
            bad.push(json!([x.render(), y.render()]));
        }
    }
    r.check(
        "g and h multiply like even and odd parts",
        bad.is_empty(),
        json!({"violations": bad}),
    );
    let mut bad = Vec::new();
    let one = HahnSeries::constant(int(1));
    for _ in 0..trials / 2 {
        let s = hahn::sample_in_r(&mut rng);
        let a = loop {
            let a = sample::hahn_series(&mut rng, 3);
            if hahn::in_o(&a) && !hahn::in_r(&a) {
                break a;
            }
        };
        if !hahn::in_r(&s.mul(&one)) || hahn::in_r(&a.mul(&one)) {
            bad.push(json!([s.render(), a.render()]));
        }
    }
    r.check(
        "elements of O outside R do not stabilize R",
        bad.is_empty(),
        json!({"violations": bad}),
    );
    r
}
