//! Fundamental ring and ideal membership, generalized residues, tameness.

use serde::Serialize;
use serde_json::{json, Value};

use crate::directory::Endo;
use crate::error::{Error, Result};
use crate::fields::{FieldElement, Rational};
use crate::inflators::Inflator;
use crate::linalg::{is_zero_vector, Subspace};
use crate::report::Report;

/// `Θ_a = K·(1, a)`.
pub fn theta(a: &FieldElement) -> Subspace {
    let field = a.field();
    Subspace::line(field, vec![FieldElement::one(field), a.clone()]).expect("nonzero generator")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub in_r: bool,
    pub in_i: bool,
    pub residue_endo: Option<Endo>,
}

impl MembershipVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "in_R": self.in_r,
            "in_I": self.in_i,
            "residue_endo": self.residue_endo.as_ref().map(Endo::to_json),
        })
    }
}

/// Reads `ς₂(Θ_a)`: `a ∈ R` iff it meets `0 ⊕ M` trivially, `a ∈ I` iff it
/// lies in `M ⊕ 0`; for `a ∈ R` it is the graph of `res(a)`.
pub fn membership(f: &Inflator, a: &FieldElement) -> Result<MembershipVerdict> {
    if a.field() != f.source() {
        return Err(Error::FieldMismatch {
            expected: f.source(),
            found: a.field(),
        });
    }
    let x = f.evaluate(2, &theta(a))?;
    let mut in_r = true;
    let mut in_i = true;
    for (p, s) in x.parts.iter().zip(&f.codomain().summands) {
        let d = s.mult;
        let upper = Subspace::from_rows(
            s.field,
            2 * d,
            (d..2 * d)
                .map(|k| crate::linalg::unit_vector(s.field, 2 * d, k))
                .collect(),
        )?;
        in_r &= p.intersect(&upper)?.is_zero();
        in_i &= p.rows().iter().all(|r| is_zero_vector(&r[d..]));
    }
    let residue_endo = if in_r {
        let e = x
            .as_graph()
            .ok_or_else(|| Error::Internal(format!("{x} is not a graph")))?;
        if in_i != e.is_zero() {
            return Err(Error::Internal(format!(
                "ideal test disagrees with residue {e}"
            )));
        }
        Some(e)
    } else {
        if in_i {
            return Err(Error::Internal("element of I outside R".into()));
        }
        None
    };
    Ok(MembershipVerdict {
        in_r,
        in_i,
        residue_endo,
    })
}

/// The residue of `a`, or `NotInRing`.
pub fn residue_endo(f: &Inflator, a: &FieldElement) -> Result<Endo> {
    membership(f, a)?
        .residue_endo
        .ok_or_else(|| Error::NotInRing(a.to_string()))
}

/// `res(ab) = res(a)∘res(b)` and `res(a+b) = res(a)+res(b)`.
pub fn residue_compose_check(f: &Inflator, a: &FieldElement, b: &FieldElement) -> Result<Report> {
    let ra = residue_endo(f, a)?;
    let rb = residue_endo(f, b)?;
    let rab = residue_endo(f, &(a * b))?;
    let rsum = residue_endo(f, &(a + b))?;
    let mut report = Report::new("residue-compose", 0);
    let comp = ra.compose(&rb)?;
    report.check(
        "multiplicative",
        rab == comp,
        json!({"res(ab)": rab.to_json(), "res(a)res(b)": comp.to_json()}),
    );
    let sum = ra.add(&rb)?;
    report.check(
        "additive",
        rsum == sum,
        json!({"res(a+b)": rsum.to_json(), "res(a)+res(b)": sum.to_json()}),
    );
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    Tame,
    Wild,
}

#[derive(Clone, Debug, Serialize)]
pub struct Probe {
    /// `None` for `a` itself, `Some(q)` for `1/(a−q)`.
    pub q: Option<String>,
    pub candidate: String,
    pub in_r: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TameReport {
    pub element: String,
    pub probes: Vec<Probe>,
    pub classification: Classification,
    /// Failed `1/(a−q)` probes.
    pub exceptions: usize,
    /// For a tame element, whether `exceptions ≤ d`.
    pub bound_holds: bool,
}

fn check_distinct(qs: &[Rational]) -> Result<()> {
    for (i, q) in qs.iter().enumerate() {
        if qs[..i].contains(q) {
            return Err(Error::Precondition(format!("repeated probe value {q}")));
        }
    }
    Ok(())
}

/// `1/(a−q)`, or `DegenerateProbe` when `a = q`.
pub fn probe_element(a: &FieldElement, q: &Rational) -> Result<FieldElement> {
    let diff = a - &FieldElement::from_rational(a.field(), q.clone());
    if diff.is_zero() {
        return Err(Error::DegenerateProbe(q.to_string()));
    }
    diff.inv()
}

/// Probes `a` and `1/(a−q)` for each `q`; tame iff some probe lands in `R`.
pub fn classify_tame(f: &Inflator, a: &FieldElement, qs: &[Rational]) -> Result<TameReport> {
    check_distinct(qs)?;
    if qs.len() < f.degree() + 1 {
        return Err(Error::Precondition(format!(
            "need at least {} probe values",
            f.degree() + 1
        )));
    }
    let mut probes = vec![Probe {
        q: None,
        candidate: a.to_string(),
        in_r: membership(f, a)?.in_r,
    }];
    for q in qs {
        let c = probe_element(a, q)?;
        probes.push(Probe {
            q: Some(q.to_string()),
            candidate: c.to_string(),
            in_r: membership(f, &c)?.in_r,
        });
    }
    let exceptions = probes[1..].iter().filter(|p| !p.in_r).count();
    let tame = probes.iter().any(|p| p.in_r);
    Ok(TameReport {
        element: a.to_string(),
        probes,
        classification: if tame {
            Classification::Tame
        } else {
            Classification::Wild
        },
        exceptions,
        bound_holds: !tame || exceptions <= f.degree(),
    })
}

/// For each sample `x`, looks for one of `x, 1/(x−q₁), …, 1/(x−q_d)` in `R`.
/// A sample with none is a certificate that `R` is not a multi-valuation
/// ring; a clean run is only evidence.
pub fn mv_type_test(f: &Inflator, samples: &[FieldElement], qs: &[Rational]) -> Result<Report> {
    check_distinct(qs)?;
    if qs.len() != f.degree() {
        return Err(Error::Precondition(format!(
            "need exactly {} probe values",
            f.degree()
        )));
    }
    let mut report = Report::new("mvtype", 0);
    for x in samples {
        let mut hit = None;
        if membership(f, x)?.in_r {
            hit = Some(x.to_string());
        } else {
            for q in qs {
                let Ok(c) = probe_element(x, q) else { continue };
                if membership(f, &c)?.in_r {
                    hit = Some(c.to_string());
                    break;
                }
            }
        }
        let detail = match &hit {
            Some(c) => json!({"in_R": c}),
            None => json!({"witness": x.to_string()}),
        };
        report.check(format!("sample {x}"), hit.is_some(), detail);
    }
    report.note("a pass is evidence on the given samples only");
    Ok(report)
}

/// Default probe values `0, 1, …, k-1`.
pub fn default_qs(k: usize) -> Vec<Rational> {
    (0..k as i64)
        .map(|q| Rational::from_integer(q.into()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{parse_element, FieldId};
    use crate::inflators::{catalog, InflatorSpec};

    fn el(f: FieldId, s: &str) -> FieldElement {
        parse_element(f, s).unwrap()
    }

    #[test]
    fn valuation_membership() {
        let f = Inflator::build(&catalog::valuation_at_zero()).unwrap();
        let m = membership(&f, &el(FieldId::Qt, "t")).unwrap();
        assert!(m.in_r && m.in_i);
        assert!(m.residue_endo.unwrap().is_zero());
        let m = membership(&f, &el(FieldId::Qt, "1/t")).unwrap();
        assert!(!m.in_r && !m.in_i);
        let m = membership(&f, &el(FieldId::Qt, "(t+2)/(t+1)")).unwrap();
        assert_eq!(m.residue_endo.unwrap().blocks[0][0][0], el(FieldId::Q, "2"));
    }

    #[test]
    fn fiona_ring_is_rational() {
        let f = Inflator::build(&catalog::fiona()).unwrap();
        assert!(!membership(&f, &el(FieldId::Qi, "i")).unwrap().in_r);
        let m = membership(&f, &el(FieldId::Qi, "1/2")).unwrap();
        assert!(m.in_r && !m.in_i);
        let e = m.residue_endo.unwrap();
        assert_eq!(e, Endo::scalar(f.codomain(), &crate::fields::rat(1, 2)));
    }

    #[test]
    fn restriction_residue_is_multiplication() {
        let f = Inflator::build(&catalog::restrict_qi()).unwrap();
        let e = residue_endo(&f, &el(FieldId::Qi, "2+3i")).unwrap();
        // 1 ↦ (2, 3), i ↦ (-3, 2)
        let q = |s| el(FieldId::Q, s);
        assert_eq!(
            e.blocks[0],
            vec![vec![q("2"), q("-3")], vec![q("3"), q("2")]]
        );
    }

    #[test]
    fn compose_check() {
        let f = Inflator::build(&catalog::valuation_at_zero()).unwrap();
        let r =
            residue_compose_check(&f, &el(FieldId::Qt, "t+1"), &el(FieldId::Qt, "t+2")).unwrap();
        assert!(r.passed(), "{r}");
        assert!(matches!(
            residue_compose_check(&f, &el(FieldId::Qt, "1/t"), &el(FieldId::Qt, "1")),
            Err(Error::NotInRing(_))
        ));
    }

    #[test]
    fn tameness() {
        let f = Inflator::build(&catalog::valuation_at_zero()).unwrap();
        let r = classify_tame(&f, &el(FieldId::Qt, "1/t"), &default_qs(2)).unwrap();
        assert_eq!(r.classification, Classification::Tame);
        let g = Inflator::build(&catalog::gerald()).unwrap();
        let r = classify_tame(&g, &el(FieldId::Qt, "t+1"), &default_qs(3)).unwrap();
        assert_eq!(r.classification, Classification::Wild);
        assert!(matches!(
            classify_tame(&f, &el(FieldId::Qt, "1"), &default_qs(2)),
            Err(Error::DegenerateProbe(_))
        ));
    }

    #[test]
    fn mv_type() {
        let p = Inflator::build(&catalog::product_zero_one()).unwrap();
        let r = mv_type_test(
            &p,
            &[el(FieldId::Qt, "1/(t^2-t)"), el(FieldId::Qt, "t+1")],
            &default_qs(2),
        )
        .unwrap();
        assert!(r.passed(), "{r}");
        let g = Inflator::build(&catalog::gerald()).unwrap();
        let r = mv_type_test(&g, &[el(FieldId::Qt, "t+1")], &default_qs(2)).unwrap();
        assert!(!r.passed());
        let bad = InflatorSpec::product(vec![catalog::valuation_at_zero()]);
        let one = Inflator::build(&bad).unwrap();
        assert!(mv_type_test(&one, &[el(FieldId::Qt, "0")], &default_qs(1))
            .unwrap()
            .passed());
    }
}
