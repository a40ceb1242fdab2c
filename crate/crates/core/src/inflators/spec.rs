//! Declarative inflator construction trees and their JSON form.
//!
//! ```json
//! {"type": "valuation", "place": {"field": "Qt", "kind": "finite", "center": "0"}}
//! {"type": "embed_residue", "inner": {...}, "target": "Qi"}
//! {"type": "restrict_scalars", "field": "Qi"}
//! {"type": "product", "factors": [{...}, {...}]}
//! {"type": "galois_pair", "field": "Qi"}
//! {"type": "twist_sum_intersect", "inner": {...}}
//! {"type": "descend_fixed", "inner": {"type": "galois_pair", "field": "Qi"}}
//! {"type": "mutate", "inner": {...}, "line": ["1", "i"]}
//! ```

use serde::{Deserialize, Serialize};

use crate::fields::{FieldId, Place};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum InflatorSpec {
    Valuation {
        place: Place,
    },
    EmbedResidue {
        inner: Box<InflatorSpec>,
        target: FieldId,
    },
    /// `Qi` over `Q`, or `Qit` over `Qt`.
    RestrictScalars {
        field: FieldId,
    },
    Product {
        factors: Vec<InflatorSpec>,
    },
    GaloisPair {
        field: FieldId,
    },
    TwistSumIntersect {
        inner: Box<InflatorSpec>,
    },
    /// Descent to the conjugation-fixed subfield. A bare `galois_pair` inner
    /// node is twisted first.
    DescendFixed {
        inner: Box<InflatorSpec>,
    },
    Mutate {
        inner: Box<InflatorSpec>,
        line: Vec<String>,
    },
}

impl InflatorSpec {
    pub fn valuation(place: Place) -> Self {
        InflatorSpec::Valuation { place }
    }

    pub fn product(factors: Vec<InflatorSpec>) -> Self {
        InflatorSpec::Product { factors }
    }

    pub fn twist(inner: InflatorSpec) -> Self {
        InflatorSpec::TwistSumIntersect {
            inner: Box::new(inner),
        }
    }

    pub fn galois(field: FieldId) -> Self {
        InflatorSpec::GaloisPair { field }
    }

    pub fn descend(inner: InflatorSpec) -> Self {
        InflatorSpec::DescendFixed {
            inner: Box::new(inner),
        }
    }

    pub fn restrict(field: FieldId) -> Self {
        InflatorSpec::RestrictScalars { field }
    }

    pub fn embed(inner: InflatorSpec, target: FieldId) -> Self {
        InflatorSpec::EmbedResidue {
            inner: Box::new(inner),
            target,
        }
    }

    pub fn mutate(inner: InflatorSpec, line: &[&str]) -> Self {
        InflatorSpec::Mutate {
            inner: Box::new(inner),
            line: line.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            InflatorSpec::Valuation { .. } => "valuation",
            InflatorSpec::EmbedResidue { .. } => "embed_residue",
            InflatorSpec::RestrictScalars { .. } => "restrict_scalars",
            InflatorSpec::Product { .. } => "product",
            InflatorSpec::GaloisPair { .. } => "galois_pair",
            InflatorSpec::TwistSumIntersect { .. } => "twist_sum_intersect",
            InflatorSpec::DescendFixed { .. } => "descend_fixed",
            InflatorSpec::Mutate { .. } => "mutate",
        }
    }
}

/// Named inflators used throughout the suites and the CLI.
pub mod catalog {
    use super::*;

    pub fn valuation_at_zero() -> InflatorSpec {
        InflatorSpec::valuation(Place::at(0))
    }

    pub fn valuation_at_infinity() -> InflatorSpec {
        InflatorSpec::valuation(Place::infinity(FieldId::Qt).expect("Qt"))
    }

    /// Places `t = 0` and `t = 1` on `Q(t)`.
    pub fn product_zero_one() -> InflatorSpec {
        InflatorSpec::product(vec![
            InflatorSpec::valuation(Place::at(0)),
            InflatorSpec::valuation(Place::at(1)),
        ])
    }

    /// The twist of two independent valuations: `(A+B, A∩B)`.
    pub fn gerald() -> InflatorSpec {
        InflatorSpec::twist(product_zero_one())
    }

    pub fn galois_qi() -> InflatorSpec {
        InflatorSpec::galois(FieldId::Qi)
    }

    /// The twisted Galois pair over `Q(i)`.
    pub fn eric() -> InflatorSpec {
        InflatorSpec::twist(galois_qi())
    }

    /// Descent of the twisted Galois pair to `Q`.
    pub fn fiona() -> InflatorSpec {
        InflatorSpec::descend(galois_qi())
    }

    pub fn restrict_qi() -> InflatorSpec {
        InflatorSpec::restrict(FieldId::Qi)
    }

    /// `(name, spec)` for every named inflator.
    pub fn all() -> Vec<(&'static str, InflatorSpec)> {
        vec![
            ("valuation-0", valuation_at_zero()),
            ("valuation-inf", valuation_at_infinity()),
            ("product-0-1", product_zero_one()),
            ("gerald", gerald()),
            ("galois", galois_qi()),
            ("eric", eric()),
            ("fiona", fiona()),
            ("restrict", restrict_qi()),
        ]
    }

    pub fn by_name(name: &str) -> Option<InflatorSpec> {
        all().into_iter().find(|(n, _)| *n == name).map(|(_, s)| s)
    }
}
