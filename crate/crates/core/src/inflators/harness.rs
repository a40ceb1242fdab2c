//! Randomized verification of the inflator axioms.

use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::directory::{Codomain, DirectoryElement};
use crate::error::Result;
use crate::fields::FieldId;
use crate::linalg::{unit_vector, Subspace};
use crate::report::{Check, Report};
use crate::sample;

/// A family of level maps `Sub_K(K^n) → Dir(M^n)`.
pub trait LevelMap: Sync {
    fn source(&self) -> FieldId;
    fn codomain(&self) -> &Codomain;
    fn degree(&self) -> usize;
    /// `ς_n(V)` with no length check.
    fn apply(&self, n: usize, v: &Subspace) -> Result<DirectoryElement>;
}

/// Sends `V` to the span of the first `dim V` unit vectors. Order-preserving
/// and length-scaling but not equivariant; exists to exercise the harness.
pub struct StandardFlag {
    pub field: FieldId,
    codomain: Codomain,
}

impl StandardFlag {
    pub fn new(field: FieldId) -> Self {
        StandardFlag {
            field,
            codomain: Codomain::single(field, 1),
        }
    }
}

impl LevelMap for StandardFlag {
    fn source(&self) -> FieldId {
        self.field
    }
    fn codomain(&self) -> &Codomain {
        &self.codomain
    }
    fn degree(&self) -> usize {
        1
    }
    fn apply(&self, n: usize, v: &Subspace) -> Result<DirectoryElement> {
        let rows = (0..v.dim())
            .map(|k| unit_vector(self.field, n, k))
            .collect();
        DirectoryElement::new(
            self.codomain.clone(),
            n,
            vec![Subspace::from_rows(self.field, n, rows)?],
        )
    }
}

#[derive(Default)]
struct TrialOutcome {
    violations: Vec<(&'static str, Value)>,
}

impl TrialOutcome {
    fn fail(&mut self, axiom: &'static str, detail: Value) {
        self.violations.push((axiom, detail));
    }
}

const AXIOMS: [&str; 5] = ["length", "order", "oplus", "gl_equivariance", "bounds"];
const MAX_REPORTED: usize = 5;

fn run_trial<F: LevelMap + ?Sized>(f: &F, seed: u64, index: u64, max_level: usize) -> TrialOutcome {
    let mut out = TrialOutcome::default();
    let mut rng = sample::trial_rng(seed, index);
    let k = f.source();
    let d = f.degree();
    let n = rng.gen_range(1..=max_level);
    let w = sample::subspace(&mut rng, k, n);
    let dim_v = rng.gen_range(0..=w.dim());
    let v = sample::subspace_within(&mut rng, &w, dim_v);
    let err = |e: crate::Error| json!({"trial": index, "level": n, "error": e.to_string()});

    let (sv, sw) = match (f.apply(n, &v), f.apply(n, &w)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            out.fail("length", err(e));
            return out;
        }
    };
    for (x, s) in [(&v, &sv), (&w, &sw)] {
        if s.length() != d * x.dim() {
            out.fail("length", json!({"trial": index, "level": n, "v": x, "length": s.length(), "expected": d * x.dim()}));
        }
    }
    if !sv.leq(&sw).unwrap_or(false) {
        out.fail("order", json!({"trial": index, "level": n, "v": v, "w": w}));
    }

    if n >= 2 {
        let a = rng.gen_range(1..n);
        let v1 = sample::subspace(&mut rng, k, a);
        let v2 = sample::subspace(&mut rng, k, n - a);
        let direct = v1.oplus(&v2).and_then(|s| f.apply(n, &s));
        let split = f.apply(a, &v1).and_then(|x| x.oplus(&f.apply(n - a, &v2)?));
        match (direct, split) {
            (Ok(x), Ok(y)) if x == y => {}
            (Ok(_), Ok(_)) => out.fail("oplus", json!({"trial": index, "v1": v1, "v2": v2})),
            (Err(e), _) | (_, Err(e)) => out.fail("oplus", err(e)),
        }
    }

    let mu = sample::unimodular(&mut rng, n);
    let moved = v.apply_matrix(&mu).and_then(|mv| f.apply(n, &mv));
    match (moved, sv.gl_action(&mu)) {
        (Ok(x), Ok(y)) if x == y => {}
        (Ok(_), Ok(_)) => {
            let m: Vec<Vec<String>> = mu
                .entries
                .iter()
                .map(|r| r.iter().map(|q| q.to_string()).collect())
                .collect();
            out.fail("gl_equivariance", json!({"trial": index, "v": v, "mu": m}));
        }
        (Err(e), _) | (_, Err(e)) => out.fail("gl_equivariance", err(e)),
    }

    let bottom = f.apply(n, &Subspace::zero(k, n));
    let top = f.apply(n, &Subspace::full(k, n));
    let ok = matches!(bottom, Ok(ref b) if *b == DirectoryElement::bottom(f.codomain(), n))
        && matches!(top, Ok(ref t) if *t == DirectoryElement::top(f.codomain(), n));
    if !ok {
        out.fail("bounds", json!({"trial": index, "level": n}));
    }
    out
}

/// Checks order preservation, `⊕`-compatibility, `GL_n(Q)`-equivariance,
/// length scaling and the values at `0` and `K^n` on `trials` random cases
/// at levels `1..=max_level`. Trial `i` draws from `trial_rng(seed, i)`.
pub fn check_morphism<F: LevelMap + ?Sized>(
    f: &F,
    trials: usize,
    seed: u64,
    max_level: usize,
) -> Report {
    let max_level = max_level.max(1);
    let outcomes: Vec<TrialOutcome> = (0..trials as u64)
        .into_par_iter()
        .map(|i| run_trial(f, seed, i, max_level))
        .collect();
    let mut report = Report::new("check-morphism", seed);
    for axiom in AXIOMS {
        let hits: Vec<&Value> = outcomes
            .iter()
            .flat_map(|o| {
                o.violations
                    .iter()
                    .filter(|(a, _)| *a == axiom)
                    .map(|(_, v)| v)
            })
            .collect();
        let detail = if hits.is_empty() {
            json!({"trials": trials})
        } else {
            json!({"violations": hits.len(), "reproducers": hits.iter().take(MAX_REPORTED).collect::<Vec<_>>()})
        };
        report.push(Check::new(axiom, hits.is_empty(), detail));
    }
    report
}

/// `ς(V∩W) ≤ ςV ∧ ςW` and `ςV ∨ ςW ≤ ς(V+W)` always, with equality whenever
/// the lengths already match `d·dim`.
pub fn check_lattice_compat<F: LevelMap + ?Sized>(
    f: &F,
    trials: usize,
    seed: u64,
    max_level: usize,
) -> Report {
    let max_level = max_level.max(1);
    let results: Vec<Option<Value>> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample::trial_rng(seed, i);
            let n = rng.gen_range(1..=max_level);
            let v = sample::subspace(&mut rng, f.source(), n);
            let w = sample::subspace(&mut rng, f.source(), n);
            let d = f.degree();
            let run = || -> Result<bool> {
                let (sv, sw) = (f.apply(n, &v)?, f.apply(n, &w)?);
                let (vm, vj) = (v.intersect(&w)?, v.sum(&w)?);
                let (sm, sj) = (f.apply(n, &vm)?, f.apply(n, &vj)?);
                let meet = sv.intersect(&sw)?;
                let join = sv.sum(&sw)?;
                let mut ok = sm.leq(&meet)? && join.leq(&sj)?;
                if meet.length() == d * vm.dim() {
                    ok &= sm == meet;
                }
                if join.length() == d * vj.dim() {
                    ok &= sj == join;
                }
                Ok(ok)
            };
            match run() {
                Ok(true) => None,
                Ok(false) => Some(json!({"trial": i, "level": n, "v": v, "w": w})),
                Err(e) => Some(json!({"trial": i, "error": e.to_string()})),
            }
        })
        .collect();
    let bad: Vec<Value> = results.into_iter().flatten().collect();
    let mut report = Report::new("lattice-compat", seed);
    report.check(
        "meets_and_joins",
        bad.is_empty(),
        json!({"trials": trials, "violations": bad.iter().take(MAX_REPORTED).collect::<Vec<_>>()}),
    );
    report
}
