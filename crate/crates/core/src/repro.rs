//! Reproductions of the worked examples, by id.

use serde_json::json;

use crate::directory::DirectoryElement;
use crate::error::{Error, Result};
use crate::fields::{parse_element, FieldElement, FieldId, Place};
use crate::fundamental::membership;
use crate::inflators::{catalog, malleability_probe, refute_twist_step, Inflator, Verdict};
use crate::linalg::Subspace;
use crate::mutation::{mutate, taming_line, Line};
use crate::report::Report;
use crate::sample;
use crate::suites::{fundamental, hahn_suite};

pub const IDS: [(&str, &str); 10] = [
    (
        "calvin-ring",
        "valuation inflator on Q(t) at t = 0: ring {val ≥ 0}, ideal {val > 0}",
    ),
    (
        "beth-ring",
        "restriction of scalars Q(i)/Q: ring is all of Q(i), residues are multiplication matrices",
    ),
    (
        "fiona-ring",
        "descended Galois twist on Q(i): ring Q, ideal 0",
    ),
    (
        "gerald-ring",
        "twist of the places t = 0, t = 1: ring {x ∈ O₀ ∩ O₁ : res₀ x = res₁ x}, ideal m₀ ∩ m₁",
    ),
    (
        "dorothy-ring",
        "product of the places t = 0, t = 1: ring O₀ ∩ O₁, ideal m₀ ∩ m₁",
    ),
    (
        "eric-not-malleable",
        "Galois twist on Q(i): Y = (0, Q(i)·(1, i)) has no lifting line",
    ),
    (
        "fiona-malleable",
        "descended Galois twist on Q(i): sampled Y lift to lines",
    ),
    (
        "mut-galois",
        "mutation of the Galois twist along (1, i): every element lands in R′",
    ),
    (
        "mut-gerald",
        "mutation of the twist of t = 0, t = 1 along (1, t+1): ring O₀ ∩ O₁, ideal m₀ ∩ m₁",
    ),
    (
        "endless",
        "Hahn field Q((t^Γ)), Γ = Z[1/3]: mutated pedestals are not stabilized by O",
    ),
];

pub fn source(id: &str) -> Option<&'static str> {
    IDS.iter().find(|(i, _)| *i == id).map(|(_, s)| *s)
}

fn build(name: &str) -> Result<Inflator> {
    Inflator::build(&catalog::by_name(name).expect("catalog"))
}

/// Checks `samples` random elements of `field` against expected `(in_R, in_I)`.
fn membership_pattern(
    r: &mut Report,
    name: &str,
    f: &Inflator,
    seed: u64,
    samples: usize,
    expect: impl Fn(&FieldElement) -> Result<(bool, bool)>,
) -> Result<()> {
    let mut rng = sample::trial_rng(seed, 0);
    let mut bad = Vec::new();
    let (mut in_r, mut in_i) = (0, 0);
    for _ in 0..samples {
        let a = sample::element(&mut rng, f.source());
        let m = membership(f, &a)?;
        in_r += m.in_r as usize;
        in_i += m.in_i as usize;
        if (m.in_r, m.in_i) != expect(&a)? {
            bad.push(json!({"element": a.to_string(), "in_R": m.in_r, "in_I": m.in_i}));
        }
    }
    r.check(
        name,
        bad.is_empty(),
        json!({"samples": samples, "in_R": in_r, "in_I": in_i, "mismatches": bad}),
    );
    Ok(())
}

pub fn run(id: &str, seed: u64, samples: usize) -> Result<Report> {
    let src = source(id).ok_or_else(|| {
        let ids: Vec<&str> = IDS.iter().map(|(i, _)| *i).collect();
        Error::Precondition(format!("unknown repro id {id:?}; expected one of {ids:?}"))
    })?;
    let mut r = Report::new(format!("repro {id}"), seed);
    r.source = Some(src.to_string());
    let (p0, p1) = (Place::at(0), Place::at(1));
    match id {
        "calvin-ring" => {
            let f = build("valuation-0")?;
            membership_pattern(&mut r, "membership", &f, seed, samples, |a| {
                Ok((p0.in_ring(a)?, p0.in_ideal(a)?))
            })?;
            let t = parse_element(FieldId::Qt, "t")?;
            let e = f.evaluate(2, &crate::fundamental::theta(&t))?;
            let expected = DirectoryElement::new(
                f.codomain().clone(),
                2,
                vec![Subspace::line(
                    FieldId::Q,
                    vec![
                        FieldElement::one(FieldId::Q),
                        FieldElement::zero(FieldId::Q),
                    ],
                )?],
            )?;
            r.check(
                "ς(Θ_t) = k·(1, 0)",
                e == expected,
                serde_json::to_value(&e)?,
            );
        }
        "beth-ring" => {
            let f = build("restrict")?;
            let report = fundamental(seed, samples)?;
            for c in report
                .checks
                .into_iter()
                .filter(|c| c.name.starts_with("restriction"))
            {
                r.push(c);
            }
            membership_pattern(&mut r, "membership", &f, seed, samples, |a| {
                Ok((true, a.is_zero()))
            })?;
        }
        "fiona-ring" => {
            let f = build("fiona")?;
            membership_pattern(&mut r, "membership", &f, seed, samples, |a| {
                Ok((a.as_rational().is_some(), a.is_zero()))
            })?;
        }
        "gerald-ring" => {
            let f = build("gerald")?;
            membership_pattern(&mut r, "membership", &f, seed, samples, |a| {
                let both = p0.in_ring(a)? && p1.in_ring(a)?;
                let in_r = both && p0.residue(a)? == p1.residue(a)?;
                Ok((in_r, p0.in_ideal(a)? && p1.in_ideal(a)?))
            })?;
        }
        "dorothy-ring" => {
            let f = build("product-0-1")?;
            membership_pattern(&mut r, "membership", &f, seed, samples, |a| {
                Ok((
                    p0.in_ring(a)? && p1.in_ring(a)?,
                    p0.in_ideal(a)? && p1.in_ideal(a)?,
                ))
            })?;
        }
        "eric-not-malleable" => {
            let f = build("eric")?;
            let l = Subspace::line(
                FieldId::Qi,
                vec![
                    FieldElement::one(FieldId::Qi),
                    FieldElement::i(FieldId::Qi)?,
                ],
            )?;
            let y = DirectoryElement::new(
                f.codomain().clone(),
                2,
                vec![Subspace::zero(FieldId::Qi, 2), l],
            )?;
            let v = refute_twist_step(&f, &y)?;
            r.check(
                "refuted",
                matches!(v, Verdict::Refuted { .. }),
                serde_json::to_value(&v)?,
            );
        }
        "fiona-malleable" => {
            let f = build("fiona")?;
            let mut p = malleability_probe(&f, samples, seed);
            p.notes.clear();
            for c in p.checks {
                r.push(c);
            }
        }
        "mut-galois" => {
            let g = mutate(
                &build("galois")?,
                &Line::new(
                    FieldId::Qi,
                    vec![
                        FieldElement::one(FieldId::Qi),
                        FieldElement::i(FieldId::Qi)?,
                    ],
                )?,
            )?;
            r.check(
                "codomain",
                true,
                json!({"codomain": g.codomain().to_string()}),
            );
            membership_pattern(&mut r, "membership", &g, seed, samples, |a| {
                Ok((true, a.is_zero()))
            })?;
        }
        "mut-gerald" => {
            let a = parse_element(FieldId::Qt, "t+1")?;
            let g = mutate(&build("gerald")?, &taming_line(&a, 2)?)?;
            let (_, _, mprime) = g.mutation_parts().expect("mutated");
            let shape: Vec<usize> = mprime.parts.iter().map(|p| p.dim()).collect();
            r.check(
                "ς(Θ_{t+1}) = (k², 0)",
                shape == [2, 0],
                json!({"dims": shape}),
            );
            membership_pattern(&mut r, "membership", &g, seed, samples, |a| {
                Ok((
                    p0.in_ring(a)? && p1.in_ring(a)?,
                    p0.in_ideal(a)? && p1.in_ideal(a)?,
                ))
            })?;
        }
        "endless" => {
            let h = hahn_suite(seed, samples);
            for c in h.checks.into_iter().filter(|c| c.name.starts_with("line")) {
                r.push(c);
            }
        }
        _ => unreachable!(),
    }
    Ok(r)
}
