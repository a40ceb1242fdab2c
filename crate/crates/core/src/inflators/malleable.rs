//! Sampled atom-lifting probes and the exact refuter for the twisted Galois pair.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::spec::InflatorSpec;
use super::valuation::adapted_basis;
use super::Inflator;
use crate::directory::DirectoryElement;
use crate::error::{Error, Result};
use crate::fields::FieldElement;
use crate::linalg::{solve_left, vec_axpy, zero_vector, Subspace, Vector};
use crate::report::{Check, Report, Status};
use crate::sample;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// No line `L` has `ς(L) ≥ Y`: any such `L` would contain both vectors.
    Refuted {
        y: Vec<String>,
        conj_y: Vec<String>,
    },
    Witness {
        line: Subspace,
    },
}

fn render(v: &[FieldElement]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn is_twisted_galois(spec: &InflatorSpec) -> bool {
    matches!(spec, InflatorSpec::TwistSumIntersect { inner }
        if matches!(inner.as_ref(), InflatorSpec::GaloisPair { .. }))
}

/// Decides whether some `L` with `dim L = ℓ(Y)` has `ς(L) ≥ Y`, for the
/// twist of a Galois pair and `ℓ(Y) ≤ 1`.
pub fn refute_twist_step(f: &Inflator, y: &DirectoryElement) -> Result<Verdict> {
    if !is_twisted_galois(f.spec()) {
        return Err(Error::Precondition(format!(
            "expected a twisted Galois pair, got {}",
            f.spec().kind()
        )));
    }
    if y.codomain != *f.codomain() {
        return Err(Error::CodomainMismatch);
    }
    if y.length() > 1 {
        return Err(Error::Precondition(format!(
            "step of length {}",
            y.length()
        )));
    }
    let n = y.level;
    let k = f.source();
    let Some((part, v)) = y
        .parts
        .iter()
        .enumerate()
        .find_map(|(i, p)| p.rows().first().map(|v| (i, v.clone())))
    else {
        return Ok(Verdict::Witness {
            line: Subspace::zero(k, n),
        });
    };
    let line = Subspace::line(k, v.clone())?;
    if part == 1 {
        let conj: Vector = v.iter().map(|x| x.conj()).collect();
        if !line.contains_vector(&conj) {
            return Ok(Verdict::Refuted {
                y: render(&v),
                conj_y: render(&conj),
            });
        }
    }
    if !y.leq(&f.evaluate(n, &line)?)? {
        return Err(Error::Internal(format!(
            "witness {line} does not cover the step"
        )));
    }
    Ok(Verdict::Witness { line })
}

/// Candidate preimages of `y` in part `part`, specific to the node kind.
fn targeted_candidates(
    f: &Inflator,
    z: &Subspace,
    part: usize,
    y: &[FieldElement],
) -> Result<Vec<Vector>> {
    let k = f.source();
    if let Some(place) = f.place() {
        let basis = adapted_basis(place, z)?;
        let residues: Vec<Vector> = basis
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| place.residue(x))
                    .collect::<Result<Vector>>()
            })
            .collect::<Result<_>>()?;
        let Some(c) = solve_left(place.residue_field(), &residues, y) else {
            return Ok(vec![]);
        };
        let mut w = zero_vector(k, z.ambient());
        for (cj, bj) in c.iter().zip(&basis.rows) {
            w = vec_axpy(&w, &place.lift(cj)?, bj);
        }
        return Ok(vec![w]);
    }
    if let InflatorSpec::DescendFixed { .. } = f.spec() {
        let y: Vector = y.iter().map(|x| x.embed(k)).collect::<Result<_>>()?;
        if part == 1 {
            return Ok(vec![y]);
        }
        let conj_rows: Vec<Vector> = z
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| x.conj()).collect())
            .collect();
        let stacked: Vec<Vector> = z.rows().iter().cloned().chain(conj_rows).collect();
        let Some(c) = solve_left(k, &stacked, &y) else {
            return Ok(vec![]);
        };
        let (a, b) = c.split_at(z.dim());
        let mut w = zero_vector(k, z.ambient());
        for ((aj, bj), r) in a.iter().zip(b).zip(z.rows()) {
            w = vec_axpy(&w, &(aj + &bj.conj()), r);
        }
        return Ok(vec![w]);
    }
    Ok(vec![])
}

fn probe_case(f: &Inflator, seed: u64, index: u64) -> Result<Check> {
    let mut rng = sample::trial_rng(seed, index);
    let k = f.source();
    let n = rng.gen_range(1..=3);
    let z = loop {
        let z = sample::subspace(&mut rng, k, n);
        if z.dim() > 0 {
            break z;
        }
    };
    let dim_v = rng.gen_range(0..z.dim());
    let v = sample::subspace_within(&mut rng, &z, dim_v);
    let sv = f.evaluate(n, &v)?;
    let sz = f.evaluate(n, &z)?;
    let open: Vec<usize> = (0..sv.parts.len())
        .filter(|&i| sv.parts[i] != sz.parts[i])
        .collect();
    let part = open[rng.gen_range(0..open.len())];
    let y = loop {
        let y = sample::combination(&mut rng, &sz.parts[part]);
        if !sv.parts[part].contains_vector(&y) {
            break y;
        }
    };
    let mut target = sv.clone();
    target.parts[part] = sv.parts[part].sum(&Subspace::line(sz.parts[part].field(), y.clone())?)?;

    let mut candidates = targeted_candidates(f, &z, part, &y)?;
    candidates.extend(z.rows().iter().cloned());
    candidates.extend((0..4).map(|_| sample::combination(&mut rng, &z)));
    for w in candidates {
        if v.contains_vector(&w) {
            continue;
        }
        let lifted = v.sum(&Subspace::line(k, w.clone())?)?;
        if target.leq(&f.evaluate(n, &lifted)?)? {
            return Ok(Check::new(
                format!("case {index}"),
                true,
                json!({"level": n, "v": v, "z": z, "y": render(&y), "w": render(&w)}),
            ));
        }
    }
    let mut check = Check::new(
        format!("case {index}"),
        true,
        json!({"level": n, "v": v, "z": z, "y": render(&y)}),
    );
    check.status = Status::Inconclusive;
    Ok(check)
}

/// Samples `V ⊊ Z` and a one-step `Y` with `ς(V) < Y ≤ ς(Z)`, then searches
/// `V + K·w` over rows of `Z`, random combinations and residue lifts for a
/// lift of `Y`. A missed lift is inconclusive, never a refutation.
pub fn malleability_probe(f: &Inflator, trials: usize, seed: u64) -> Report {
    let checks: Vec<Check> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            probe_case(f, seed, i).unwrap_or_else(|e| {
                Check::new(format!("case {i}"), false, json!({"error": e.to_string()}))
            })
        })
        .collect();
    let mut report = Report::new("malleable", seed);
    report.checks = checks;
    report.note("sampled probe: lifted cases are exact, inconclusive cases decide nothing");
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{parse_element, FieldId};
    use crate::inflators::catalog;

    fn qi(xs: &[&str]) -> Vector {
        xs.iter()
            .map(|s| parse_element(FieldId::Qi, s).unwrap())
            .collect()
    }

    fn step(f: &Inflator, part: usize, v: Vector) -> DirectoryElement {
        let mut y = DirectoryElement::bottom(f.codomain(), 2);
        y.parts[part] = Subspace::line(FieldId::Qi, v).unwrap();
        y
    }

    #[test]
    fn galois_twist_intersection_step_is_refuted() {
        let f = Inflator::build(&catalog::eric()).unwrap();
        let v = refute_twist_step(&f, &step(&f, 1, qi(&["1", "i"]))).unwrap();
        assert!(matches!(v, Verdict::Refuted { .. }));
    }

    #[test]
    fn stable_and_sum_steps_have_witnesses() {
        let f = Inflator::build(&catalog::eric()).unwrap();
        let v = refute_twist_step(&f, &step(&f, 1, qi(&["1", "0"]))).unwrap();
        assert!(matches!(v, Verdict::Witness { line } if line.dim() == 1));
        let v = refute_twist_step(&f, &step(&f, 0, qi(&["1", "i"]))).unwrap();
        assert!(matches!(v, Verdict::Witness { .. }));
        let v = refute_twist_step(&f, &DirectoryElement::bottom(f.codomain(), 2)).unwrap();
        assert!(matches!(v, Verdict::Witness { line } if line.is_zero()));
    }

    #[test]
    fn refuter_rejects_other_shapes() {
        let f = Inflator::build(&catalog::gerald()).unwrap();
        let y = DirectoryElement::bottom(f.codomain(), 2);
        assert!(matches!(
            refute_twist_step(&f, &y),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn valuation_steps_lift() {
        let f = Inflator::build(&catalog::valuation_at_zero()).unwrap();
        let r = malleability_probe(&f, 20, 3);
        assert_eq!(r.count(Status::Pass), 20, "{r}");
    }
}
