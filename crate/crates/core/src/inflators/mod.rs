//! Inflators: families of maps `Sub_K(K^n) → Dir(M^n)` scaling dimension by `d`.

pub mod harness;
pub mod malleable;
pub mod spec;
pub mod valuation;

use std::fmt;

use crate::directory::{Codomain, DirectoryElement, Summand};
use crate::error::{Error, Result};
use crate::fields::{parse_element, FieldElement, FieldId, Place};
use crate::linalg::{xi_line, Subspace, Vector};

pub use harness::{check_lattice_compat, check_morphism, LevelMap};
pub use malleable::{malleability_probe, refute_twist_step, Verdict};
pub use spec::{catalog, InflatorSpec};

#[derive(Clone, Debug)]
enum Node {
    Valuation(Place),
    Embed(Box<Inflator>),
    Restrict,
    Product(Vec<Inflator>),
    Galois,
    Twist(Box<Inflator>),
    Descend(Box<Inflator>),
    Mutate {
        inner: Box<Inflator>,
        line: Subspace,
        mprime: DirectoryElement,
    },
}

/// A validated inflator with its source field and codomain.
#[derive(Clone, Debug)]
pub struct Inflator {
    spec: InflatorSpec,
    source: FieldId,
    codomain: Codomain,
    node: Node,
}

fn spec_err(path: &str, message: impl Into<String>) -> Error {
    Error::Spec {
        path: path.to_string(),
        message: message.into(),
    }
}

impl Inflator {
    pub fn build(spec: &InflatorSpec) -> Result<Inflator> {
        Self::build_at(spec, "$")
    }

    fn build_at(spec: &InflatorSpec, path: &str) -> Result<Inflator> {
        let (source, codomain, node) = match spec {
            InflatorSpec::Valuation { place } => {
                if !place.field().supports_linear_algebra() {
                    return Err(spec_err(
                        path,
                        format!("no linear algebra over {}", place.field()),
                    ));
                }
                (
                    place.field(),
                    Codomain::single(place.residue_field(), 1),
                    Node::Valuation(place.clone()),
                )
            }
            InflatorSpec::EmbedResidue { inner, target } => {
                let inner = Self::build_at(inner, &format!("{path}.inner"))?;
                let mut summands = inner.codomain.summands.clone();
                for s in &mut summands {
                    if !s.field.embeds_into(*target) {
                        return Err(spec_err(
                            path,
                            format!("{} does not embed into {target}", s.field),
                        ));
                    }
                    s.field = *target;
                }
                (
                    inner.source,
                    Codomain::new(summands),
                    Node::Embed(Box::new(inner)),
                )
            }
            InflatorSpec::RestrictScalars { field } => {
                let base = match field {
                    FieldId::Qi => FieldId::Q,
                    FieldId::Qit => FieldId::Qt,
                    f => return Err(spec_err(path, format!("restriction of scalars from {f}"))),
                };
                (*field, Codomain::single(base, 2), Node::Restrict)
            }
            InflatorSpec::Product { factors } => {
                if factors.is_empty() {
                    return Err(spec_err(path, "empty product"));
                }
                let built = factors
                    .iter()
                    .enumerate()
                    .map(|(k, f)| Self::build_at(f, &format!("{path}.factors[{k}]")))
                    .collect::<Result<Vec<_>>>()?;
                let source = built[0].source;
                if let Some(b) = built.iter().find(|b| b.source != source) {
                    return Err(spec_err(
                        path,
                        format!("factors over {source} and {}", b.source),
                    ));
                }
                let codomain = built
                    .iter()
                    .skip(1)
                    .fold(built[0].codomain.clone(), |c, b| c.concat(&b.codomain));
                (source, codomain, Node::Product(built))
            }
            InflatorSpec::GaloisPair { field } => {
                if !field.has_i() {
                    return Err(spec_err(path, format!("{field} has no conjugation")));
                }
                let s = Summand {
                    field: *field,
                    mult: 1,
                };
                (*field, Codomain::new(vec![s, s]), Node::Galois)
            }
            InflatorSpec::TwistSumIntersect { inner } => {
                let inner = Self::build_at(inner, &format!("{path}.inner"))?;
                match inner.codomain.summands.as_slice() {
                    [a, b] if a == b => {}
                    _ => return Err(spec_err(path, "twist needs two equal summands")),
                }
                (
                    inner.source,
                    inner.codomain.clone(),
                    Node::Twist(Box::new(inner)),
                )
            }
            InflatorSpec::DescendFixed { inner } => {
                let inner_path = format!("{path}.inner");
                let inner = match inner.as_ref() {
                    InflatorSpec::GaloisPair { .. } => {
                        Self::build_at(&InflatorSpec::twist((**inner).clone()), &inner_path)?
                    }
                    other => Self::build_at(other, &inner_path)?,
                };
                let mut summands = inner.codomain.summands.clone();
                for s in &mut summands {
                    s.field = match s.field {
                        FieldId::Qi => FieldId::Q,
                        FieldId::Qit => FieldId::Qt,
                        f => return Err(spec_err(path, format!("cannot descend {f}"))),
                    };
                }
                (
                    inner.source,
                    Codomain::new(summands),
                    Node::Descend(Box::new(inner)),
                )
            }
            InflatorSpec::Mutate { inner, line } => {
                let inner = Self::build_at(inner, &format!("{path}.inner"))?;
                let v = line
                    .iter()
                    .map(|lit| parse_element(inner.source, lit))
                    .collect::<Result<Vector>>()
                    .map_err(|e| spec_err(&format!("{path}.line"), e.to_string()))?;
                let line = Subspace::line(inner.source, v)?;
                return Self::mutate_built(inner, line, spec.clone());
            }
        };
        Ok(Inflator {
            spec: spec.clone(),
            source,
            codomain,
            node,
        })
    }

    fn mutate_built(inner: Inflator, line: Subspace, spec: InflatorSpec) -> Result<Inflator> {
        let mprime = inner.evaluate(line.ambient(), &line)?;
        let codomain = Codomain::new(
            mprime
                .parts
                .iter()
                .zip(&mprime.codomain.summands)
                .filter(|(p, _)| p.dim() > 0)
                .map(|(p, s)| Summand {
                    field: s.field,
                    mult: p.dim(),
                })
                .collect(),
        );
        Ok(Inflator {
            spec,
            source: inner.source,
            codomain,
            node: Node::Mutate {
                inner: Box::new(inner),
                line,
                mprime,
            },
        })
    }

    /// Mutation along the line spanned by `line` in `K^m`.
    pub fn mutate(&self, line: &Subspace) -> Result<Inflator> {
        if line.dim() != 1 {
            return Err(Error::NotALine(line.dim()));
        }
        if line.field() != self.source {
            return Err(Error::FieldMismatch {
                expected: self.source,
                found: line.field(),
            });
        }
        let lits = line.rows()[0].iter().map(|x| x.to_string()).collect();
        let spec = InflatorSpec::Mutate {
            inner: Box::new(self.spec.clone()),
            line: lits,
        };
        Self::mutate_built(self.clone(), line.clone(), spec)
    }

    pub fn spec(&self) -> &InflatorSpec {
        &self.spec
    }

    pub fn source(&self) -> FieldId {
        self.source
    }

    pub fn codomain(&self) -> &Codomain {
        &self.codomain
    }

    pub fn degree(&self) -> usize {
        self.codomain.total_length()
    }

    /// For a mutation, `(inner, line, M′)`.
    pub fn mutation_parts(&self) -> Option<(&Inflator, &Subspace, &DirectoryElement)> {
        match &self.node {
            Node::Mutate {
                inner,
                line,
                mprime,
            } => Some((inner, line, mprime)),
            _ => None,
        }
    }

    /// The inner inflator of a twist or descent node.
    pub fn inner(&self) -> Option<&Inflator> {
        match &self.node {
            Node::Twist(i) | Node::Descend(i) | Node::Embed(i) => Some(i),
            Node::Mutate { inner, .. } => Some(inner),
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<&[Inflator]> {
        match &self.node {
            Node::Product(f) => Some(f),
            _ => None,
        }
    }

    pub fn place(&self) -> Option<&Place> {
        match &self.node {
            Node::Valuation(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_galois_pair(&self) -> bool {
        matches!(self.node, Node::Galois)
    }

    /// `ς_n(V)`; fails with `Internal` if the length is not `d·dim V`.
    pub fn evaluate(&self, n: usize, v: &Subspace) -> Result<DirectoryElement> {
        let x = self.evaluate_unchecked(n, v)?;
        if x.length() != self.degree() * v.dim() {
            return Err(Error::Internal(format!(
                "length {} != {}·{} for {}",
                x.length(),
                self.degree(),
                v.dim(),
                self.spec.kind()
            )));
        }
        Ok(x)
    }

    pub(crate) fn evaluate_unchecked(&self, n: usize, v: &Subspace) -> Result<DirectoryElement> {
        if v.field() != self.source {
            return Err(Error::FieldMismatch {
                expected: self.source,
                found: v.field(),
            });
        }
        if v.ambient() != n {
            return Err(Error::DimensionMismatch(format!(
                "subspace of K^{} at level {n}",
                v.ambient()
            )));
        }
        let parts = match &self.node {
            Node::Valuation(place) => vec![valuation::specialize(place, v)?],
            Node::Embed(inner) => {
                let x = inner.evaluate_unchecked(n, v)?;
                x.parts
                    .iter()
                    .zip(&self.codomain.summands)
                    .map(|(p, s)| p.change_field(s.field))
                    .collect::<Result<_>>()?
            }
            Node::Restrict => vec![restrict_scalars(v)?],
            Node::Product(factors) => {
                let mut parts = Vec::new();
                for f in factors {
                    parts.extend(f.evaluate_unchecked(n, v)?.parts);
                }
                parts
            }
            Node::Galois => vec![v.clone(), v.conjugate()],
            Node::Twist(inner) => {
                let x = inner.evaluate_unchecked(n, v)?;
                vec![
                    x.parts[0].sum(&x.parts[1])?,
                    x.parts[0].intersect(&x.parts[1])?,
                ]
            }
            Node::Descend(inner) => {
                let x = inner.evaluate_unchecked(n, v)?;
                x.parts
                    .iter()
                    .zip(&self.codomain.summands)
                    .map(|(p, s)| descend(p, s.field))
                    .collect::<Result<_>>()?
            }
            Node::Mutate {
                inner,
                line,
                mprime,
            } => {
                let lifted = xi_line(line, v)?;
                let x = inner.evaluate_unchecked(line.ambient() * n, &lifted)?;
                return DirectoryElement::recoordinatize(mprime, &x);
            }
        };
        DirectoryElement::new(self.codomain.clone(), n, parts)
    }

    /// Maps an element over this inflator's codomain down through every
    /// enclosing mutation to the codomain of the innermost non-mutated
    /// inflator.
    pub fn lower(&self, y: &DirectoryElement) -> Result<DirectoryElement> {
        match &self.node {
            Node::Mutate { inner, mprime, .. } => {
                inner.lower(&DirectoryElement::decoordinatize(mprime, y)?)
            }
            _ => Ok(y.clone()),
        }
    }
}

/// Rewrites a `Q(i)`-subspace as a `Q`-subspace of twice the dimension, with
/// coordinate `j` becoming the block `(re, im)`.
fn restrict_scalars(v: &Subspace) -> Result<Subspace> {
    let field = v.field();
    let base = if field == FieldId::Qi {
        FieldId::Q
    } else {
        FieldId::Qt
    };
    let i = FieldElement::i(field)?;
    let half =
        FieldElement::from_rational(field, num_rational::BigRational::new(1.into(), 2.into()));
    let split = |x: &FieldElement| -> Result<(FieldElement, FieldElement)> {
        let re = (&(x + &x.conj()) * &half).real_part_field()?;
        let im = (&(x - &x.conj()) * &(&half / &i)).real_part_field()?;
        Ok((re, im))
    };
    let mut rows = Vec::with_capacity(2 * v.dim());
    for r in v.rows() {
        for w in [r.clone(), r.iter().map(|x| &i * x).collect::<Vector>()] {
            let mut out = Vec::with_capacity(2 * w.len());
            for x in &w {
                let (re, im) = if field == FieldId::Qi {
                    let g = x.as_gaussian().expect("Qi element");
                    (FieldElement::Q(g.re), FieldElement::Q(g.im))
                } else {
                    split(x)?
                };
                out.push(re);
                out.push(im);
            }
            rows.push(out);
        }
    }
    Subspace::from_rows(base, 2 * v.ambient(), rows)
}

/// The fixed part of a conjugation-stable subspace, read over the fixed field.
fn descend(p: &Subspace, target: FieldId) -> Result<Subspace> {
    if p.conjugate() != *p {
        return Err(Error::Domain(format!(
            "{p} is not stable under conjugation"
        )));
    }
    let rows = p
        .rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.real_part_field())
                .collect::<Result<Vector>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Subspace::from_rows(target, p.ambient(), rows)
}

impl fmt::Display for Inflator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}-inflator from {} to {}",
            self.degree(),
            self.source,
            self.codomain
        )
    }
}

impl LevelMap for Inflator {
    fn source(&self) -> FieldId {
        self.source
    }
    fn codomain(&self) -> &Codomain {
        &self.codomain
    }
    fn degree(&self) -> usize {
        self.degree()
    }
    fn apply(&self, n: usize, v: &Subspace) -> Result<DirectoryElement> {
        self.evaluate_unchecked(n, v)
    }
}
