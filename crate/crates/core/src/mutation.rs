//! Mutation along lines, taming lines and limiting-ring probes.

use rand::Rng;
use serde::Serialize;
use serde_json::json;

use crate::directory::{DirectoryElement, Endo};
use crate::error::{Error, Result};
use crate::fields::{FieldElement, FieldId, Rational};
use crate::fundamental::{membership, probe_element};
use crate::inflators::Inflator;
use crate::linalg::{tensor_lines, unit_vector, xi_line, zero_vector, Subspace, Vector};
use crate::report::Report;
use crate::sample;

/// A line `K·(a₁, …, a_m)` with first nonzero coordinate `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line(Subspace);

impl Line {
    pub fn new(field: FieldId, generator: Vector) -> Result<Line> {
        Ok(Line(Subspace::line(field, generator)?))
    }

    pub fn from_subspace(s: Subspace) -> Result<Line> {
        if s.dim() != 1 {
            return Err(Error::NotALine(s.dim()));
        }
        Ok(Line(s))
    }

    pub fn trivial(field: FieldId) -> Line {
        Line(Subspace::full(field, 1))
    }

    pub fn m(&self) -> usize {
        self.0.ambient()
    }

    pub fn generator(&self) -> &Vector {
        &self.0.rows()[0]
    }

    pub fn subspace(&self) -> &Subspace {
        &self.0
    }

    /// `L₂ ⊗ L₁`, with `self = L₂`.
    pub fn tensor(&self, l1: &Line) -> Result<Line> {
        Ok(Line(tensor_lines(&self.0, &l1.0)?))
    }

    pub fn render(&self) -> Vec<String> {
        self.generator().iter().map(|x| x.to_string()).collect()
    }
}

pub fn mutate(f: &Inflator, line: &Line) -> Result<Inflator> {
    f.mutate(line.subspace())
}

/// `K·(1, a, …, a^{d−1})`.
pub fn taming_line(a: &FieldElement, d: usize) -> Result<Line> {
    if d == 0 {
        return Err(Error::Precondition("d must be positive".into()));
    }
    let mut g = vec![FieldElement::one(a.field())];
    for k in 1..d {
        g.push(&g[k - 1] * a);
    }
    Line::new(a.field(), g)
}

#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    pub label: String,
    pub element: String,
    pub in_r: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Evidence {
    pub element: String,
    pub line: Vec<String>,
    pub candidates: Vec<Candidate>,
    /// The first candidate found in the mutated ring.
    pub found: Option<String>,
}

/// Mutates along `taming_line(x, d)` and checks which of
/// `x, 1/(x−q₁), …, 1/(x−q_d)` lies in the mutated fundamental ring.
pub fn limit_ring_probe(f: &Inflator, x: &FieldElement, qs: &[Rational]) -> Result<Evidence> {
    for (i, q) in qs.iter().enumerate() {
        if qs[..i].contains(q) {
            return Err(Error::Precondition(format!("repeated probe value {q}")));
        }
    }
    let line = taming_line(x, f.degree())?;
    let mut candidates = Vec::with_capacity(qs.len() + 1);
    if x.is_zero() {
        candidates.push(Candidate {
            label: "x".into(),
            element: x.to_string(),
            in_r: true,
        });
        return Ok(Evidence {
            element: x.to_string(),
            line: line.render(),
            candidates,
            found: Some("x".into()),
        });
    }
    let g = mutate(f, &line)?;
    candidates.push(Candidate {
        label: "x".into(),
        element: x.to_string(),
        in_r: membership(&g, x)?.in_r,
    });
    for q in qs {
        let c = probe_element(x, q)?;
        candidates.push(Candidate {
            label: format!("1/(x-{q})"),
            element: c.to_string(),
            in_r: membership(&g, &c)?.in_r,
        });
    }
    let found = candidates.iter().find(|c| c.in_r).map(|c| c.label.clone());
    Ok(Evidence {
        element: x.to_string(),
        line: line.render(),
        candidates,
        found,
    })
}

/// Compares `mutate(mutate(f, L₁), L₂)` at `V`, mapped back into
/// `M^{m₁m₂n}`, with `ς_{m₁m₂n}(ξ^{L₂⊗L₁}_n(V))` on random `V`.
pub fn check_iterated(
    f: &Inflator,
    l1: &Line,
    l2: &Line,
    trials: usize,
    seed: u64,
    max_level: usize,
) -> Result<Report> {
    let once = mutate(f, l1)?;
    let twice = mutate(&once, l2)?;
    let l21 = l2.tensor(l1)?;
    let mut report = Report::new("check-iterated", seed);
    let mut bad = Vec::new();
    for i in 0..trials as u64 {
        let mut rng = sample::trial_rng(seed, i);
        let n = rng.gen_range(1..=max_level.max(1));
        let v = sample::subspace(&mut rng, f.source(), n);
        let nested = twice.lower(&twice.evaluate(n, &v)?)?;
        let direct = f.evaluate(l21.m() * n, &xi_line(l21.subspace(), &v)?)?;
        if nested != direct {
            bad.push(json!({"trial": i, "level": n, "v": v}));
        }
    }
    report.check(
        "iterated_equals_tensor",
        bad.is_empty(),
        json!({"l1": l1.render(), "l2": l2.render(), "trials": trials, "violations": bad}),
    );
    Ok(report)
}

/// `in_R(f, a) ⇒ in_R(f′, a)` and `in_I(f, a) ⇒ in_I(f′, a)` for a mutation
/// `f′` of `f`, plus transport of residues onto `M′`.
pub fn check_monotone(f: &Inflator, line: &Line, samples: &[FieldElement]) -> Result<Report> {
    let g = mutate(f, line)?;
    let (_, _, mprime) = g.mutation_parts().expect("mutated");
    let mut report = Report::new("monotone", 0);
    for a in samples {
        let before = membership(f, a)?;
        let after = membership(&g, a)?;
        let ok = (!before.in_r || after.in_r) && (!before.in_i || after.in_i);
        let mut transported = true;
        if let (Some(phi), Some(psi)) = (&before.residue_endo, &after.residue_endo) {
            transported = transport_endo(mprime, phi)? == *psi;
        }
        report.check(
            format!("element {a}"),
            ok && transported,
            json!({"before": before.to_json(), "after": after.to_json(), "residue_transported": transported}),
        );
    }
    Ok(report)
}

/// The restriction of `φ^{⊕m}` to `M′ ⊆ M^m`, in the RREF bases of `M′`.
pub fn transport_endo(mprime: &DirectoryElement, phi: &Endo) -> Result<Endo> {
    let mut summands = Vec::new();
    let mut blocks = Vec::new();
    for (i, basis) in mprime.parts.iter().enumerate() {
        if basis.dim() == 0 {
            continue;
        }
        let s = mprime.codomain.summands[i];
        let a = &phi.blocks[i];
        let images: Vec<Vector> = basis
            .rows()
            .iter()
            .map(|b| {
                let mut out = Vec::with_capacity(b.len());
                for blk in b.chunks(s.mult) {
                    for row in a {
                        out.push(
                            row.iter()
                                .zip(blk)
                                .fold(FieldElement::zero(s.field), |acc, (p, q)| acc + p * q),
                        );
                    }
                }
                out
            })
            .collect();
        let coords = images
            .iter()
            .map(|v| {
                basis
                    .coordinates(v)
                    .ok_or_else(|| Error::NotContained(format!("φ moves summand {i} off M′")))
            })
            .collect::<Result<Vec<_>>>()?;
        let dp = basis.dim();
        blocks.push(
            (0..dp)
                .map(|r| (0..dp).map(|c| coords[c][r].clone()).collect())
                .collect(),
        );
        summands.push(crate::directory::Summand {
            field: s.field,
            mult: dp,
        });
    }
    Ok(Endo {
        codomain: crate::directory::Codomain::new(summands),
        blocks,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub q: String,
    pub part: usize,
    pub epsilon: Vec<String>,
}

/// For `1/(a−q)` outside the ring of the mutation along
/// `K·(1, a, …, a^{d−1})`: a nonzero `ε ∈ M` with
/// `(ε, qε, …, q^d ε) ∈ ς_{d+1}(K·(1, a, …, a^d))`, checked by containment.
pub fn vandermonde_certificate(
    f: &Inflator,
    a: &FieldElement,
    q: &Rational,
) -> Result<Certificate> {
    let d = f.degree();
    let n = taming_line(a, d + 1)?;
    let x = f.evaluate(d + 1, n.subspace())?;
    for (i, (part, s)) in x.parts.iter().zip(&f.codomain().summands).enumerate() {
        let k = s.field;
        let dm = s.mult;
        let qk = FieldElement::from_rational(k, q.clone());
        let rows: Vec<Vector> = (0..dm)
            .map(|j| {
                let e = unit_vector(k, dm, j);
                let mut row = Vec::with_capacity(dm * (d + 1));
                let mut c = FieldElement::one(k);
                for _ in 0..=d {
                    row.extend(e.iter().map(|x| x * &c));
                    c = &c * &qk;
                }
                row
            })
            .collect();
        let geometric = Subspace::from_rows(k, dm * (d + 1), rows)?;
        let meet = part.intersect(&geometric)?;
        if let Some(r) = meet.rows().first() {
            let eps: Vector = r[..dm].to_vec();
            let mut full = zero_vector(k, 0);
            let mut c = FieldElement::one(k);
            for _ in 0..=d {
                full.extend(eps.iter().map(|x| x * &c));
                c = &c * &qk;
            }
            if !part.contains_vector(&full) {
                return Err(Error::Internal("certificate fails containment".into()));
            }
            return Ok(Certificate {
                q: q.to_string(),
                part: i,
                epsilon: eps.iter().map(|x| x.to_string()).collect(),
            });
        }
    }
    Err(Error::NoWitness(format!(
        "no Vandermonde certificate at q = {q}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::parse_element;
    use crate::fundamental::{classify_tame, default_qs, Classification};
    use crate::inflators::catalog;

    fn el(f: FieldId, s: &str) -> FieldElement {
        parse_element(f, s).unwrap()
    }

    #[test]
    fn taming_lines() {
        let l = taming_line(&el(FieldId::Qi, "i"), 3).unwrap();
        assert_eq!(l.render(), vec!["1", "i", "-1"]);
        assert_eq!(taming_line(&el(FieldId::Qt, "t"), 1).unwrap().m(), 1);
    }

    #[test]
    fn galois_mutation_kills_a_summand() {
        let f = Inflator::build(&catalog::fiona()).unwrap();
        let g = mutate(
            &f,
            &Line::new(
                FieldId::Qi,
                vec![el(FieldId::Qi, "1"), el(FieldId::Qi, "i")],
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(g.degree(), 2);
        assert_eq!(g.codomain().summands.len(), 1);
        assert_eq!(g.codomain().summands[0].mult, 2);
        assert!(membership(&g, &el(FieldId::Qi, "i")).unwrap().in_r);
    }

    #[test]
    fn gerald_is_tamed() {
        let f = Inflator::build(&catalog::gerald()).unwrap();
        let a = el(FieldId::Qt, "t+1");
        let g = mutate(&f, &taming_line(&a, 2).unwrap()).unwrap();
        assert_eq!(g.codomain().summands.len(), 1);
        let r = classify_tame(&g, &a, &default_qs(3)).unwrap();
        assert_eq!(r.classification, Classification::Tame);
        let ev = limit_ring_probe(&f, &a, &default_qs(2)).unwrap();
        assert_eq!(ev.found.as_deref(), Some("x"));
    }

    #[test]
    fn certificates_exist_for_failed_probes() {
        let f = Inflator::build(&catalog::gerald()).unwrap();
        let a = el(FieldId::Qt, "t+1");
        let g = mutate(&f, &taming_line(&a, 2).unwrap()).unwrap();
        for q in default_qs(3) {
            if !membership(&g, &probe_element(&a, &q).unwrap())
                .unwrap()
                .in_r
            {
                vandermonde_certificate(&f, &a, &q).unwrap();
            }
        }
    }

    #[test]
    fn iterated_mutation() {
        let f = Inflator::build(&catalog::product_zero_one()).unwrap();
        let l1 = Line::new(
            FieldId::Qt,
            vec![el(FieldId::Qt, "1"), el(FieldId::Qt, "t")],
        )
        .unwrap();
        let l2 = Line::new(
            FieldId::Qt,
            vec![el(FieldId::Qt, "1"), el(FieldId::Qt, "t+1")],
        )
        .unwrap();
        let r = check_iterated(&f, &l1, &l2, 5, 1, 2).unwrap();
        assert!(r.passed(), "{r}");
    }
}
