//! Places (valuations trivial on `Q`) with residue maps and lifts.

use std::fmt;
use std::ops::Add;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::coeff::{format_rational, Coefficient, Gaussian, Rational};
use super::element::{FieldElement, FieldId};
use super::parse::parse_element;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// A value in `Q ∪ {∞}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ValueOrInf {
    Finite(Rational),
    Infinity,
}

impl ValueOrInf {
    pub fn int(n: i64) -> Self {
        ValueOrInf::Finite(Rational::from_integer(n.into()))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ValueOrInf::Infinity)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ValueOrInf::Finite(v) => Some(v),
            ValueOrInf::Infinity => None,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.finite().is_none_or(|v| !v.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        self.finite().is_none_or(|v| v.is_positive())
    }
}

impl Add for &ValueOrInf {
    type Output = ValueOrInf;
    fn add(self, rhs: &ValueOrInf) -> ValueOrInf {
        match (self, rhs) {
            (ValueOrInf::Finite(a), ValueOrInf::Finite(b)) => ValueOrInf::Finite(a + b),
            _ => ValueOrInf::Infinity,
        }
    }
}

impl fmt::Display for ValueOrInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueOrInf::Finite(v) => f.write_str(&format_rational(v)),
            ValueOrInf::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for ValueOrInf {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PlaceKind {
    /// Zero of the minimal polynomial of `c` over the coefficient field.
    FiniteCenter(Gaussian),
    Infinity,
    HahnTAdic,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "PlaceRepr", into = "PlaceRepr")]
pub struct Place {
    field: FieldId,
    kind: PlaceKind,
}

#[derive(Serialize, Deserialize)]
struct PlaceRepr {
    field: FieldId,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    center: Option<String>,
}

impl TryFrom<PlaceRepr> for Place {
    type Error = Error;
    fn try_from(r: PlaceRepr) -> Result<Place> {
        match r.kind.as_str() {
            "finite" => {
                let lit = r
                    .center
                    .ok_or_else(|| Error::Domain("finite place needs a center".into()))?;
                let c = parse_element(FieldId::Qi, &lit)?
                    .as_gaussian()
                    .expect("Qi element");
                Place::finite(r.field, c)
            }
            "infinity" => Place::infinity(r.field),
            "hahn_t_adic" => match r.field {
                FieldId::Hahn => Ok(Place::hahn_t_adic()),
                f => Err(Error::Domain(format!("hahn_t_adic place on {f}"))),
            },
            k => Err(Error::Domain(format!("unknown place kind {k:?}"))),
        }
    }
}

impl From<Place> for PlaceRepr {
    fn from(p: Place) -> PlaceRepr {
        let (kind, center) = match &p.kind {
            PlaceKind::FiniteCenter(c) => ("finite", Some(c.render())),
            PlaceKind::Infinity => ("infinity", None),
            PlaceKind::HahnTAdic => ("hahn_t_adic", None),
        };
        PlaceRepr {
            field: p.field,
            kind: kind.into(),
            center,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PlaceKind::FiniteCenter(c) => write!(f, "{}@t={}", self.field, c.render()),
            PlaceKind::Infinity => write!(f, "{}@t=inf", self.field),
            PlaceKind::HahnTAdic => write!(f, "Hahn@t-adic"),
        }
    }
}

impl Place {
    /// `t = c` on `Qt` (any `c ∈ Q(i)`, non-real centers have residue field
    /// `Qi`) or on `Qit`.
    pub fn finite(field: FieldId, c: Gaussian) -> Result<Place> {
        match field {
            FieldId::Qt | FieldId::Qit => Ok(Place {
                field,
                kind: PlaceKind::FiniteCenter(c),
            }),
            f => Err(Error::Domain(format!("no finite places on {f}"))),
        }
    }

    pub fn rational(field: FieldId, c: Rational) -> Result<Place> {
        Self::finite(field, Gaussian::from_rational(c))
    }

    /// `t = n` on `Qt`.
    pub fn at(n: i64) -> Place {
        Self::rational(FieldId::Qt, Rational::from_integer(n.into())).expect("Qt has finite places")
    }

    pub fn infinity(field: FieldId) -> Result<Place> {
        match field {
            FieldId::Qt | FieldId::Qit => Ok(Place {
                field,
                kind: PlaceKind::Infinity,
            }),
            f => Err(Error::Domain(format!("no place at infinity on {f}"))),
        }
    }

    pub fn hahn_t_adic() -> Place {
        Place {
            field: FieldId::Hahn,
            kind: PlaceKind::HahnTAdic,
        }
    }

    pub fn field(&self) -> FieldId {
        self.field
    }

    pub fn kind(&self) -> &PlaceKind {
        &self.kind
    }

    pub fn residue_field(&self) -> FieldId {
        match (&self.kind, self.field) {
            (PlaceKind::FiniteCenter(c), FieldId::Qt) if c.is_real() => FieldId::Q,
            (PlaceKind::Infinity, FieldId::Qt) | (PlaceKind::HahnTAdic, _) => FieldId::Q,
            _ => FieldId::Qi,
        }
    }

    fn check(&self, x: &FieldElement) -> Result<()> {
        if x.field() != self.field {
            return Err(Error::FieldMismatch {
                expected: self.field,
                found: x.field(),
            });
        }
        Ok(())
    }

    /// Minimal polynomial of the center over `Q`, for `Qt`.
    fn qt_modulus(c: &Gaussian) -> Poly<Rational> {
        if c.is_real() {
            Poly::linear(&c.re)
        } else {
            let two = Rational::from_integer(2.into());
            Poly::from_coeffs(vec![c.norm(), -(two * &c.re), Rational::one()])
        }
    }

    pub fn valuation(&self, x: &FieldElement) -> Result<ValueOrInf> {
        self.check(x)?;
        if x.is_zero() {
            return Ok(ValueOrInf::Infinity);
        }
        let v = match (x, &self.kind) {
            (FieldElement::Qt(f), PlaceKind::FiniteCenter(c)) => f.order_at(&Self::qt_modulus(c)),
            (FieldElement::Qit(f), PlaceKind::FiniteCenter(c)) => f.order_at(&Poly::linear(c)),
            (FieldElement::Qt(f), PlaceKind::Infinity) => f.order_at_infinity(),
            (FieldElement::Qit(f), PlaceKind::Infinity) => f.order_at_infinity(),
            (FieldElement::Hahn(h), PlaceKind::HahnTAdic) => {
                return Ok(ValueOrInf::Finite(
                    h.min_exponent().expect("nonzero").clone(),
                ))
            }
            _ => return Err(Error::Internal(format!("place {self} on {}", x.field()))),
        };
        Ok(ValueOrInf::int(v.expect("nonzero")))
    }

    pub fn residue(&self, x: &FieldElement) -> Result<FieldElement> {
        let v = self.valuation(x)?;
        if !v.is_nonnegative() {
            return Err(Error::NegativeValuation);
        }
        let k = self.residue_field();
        if v.is_positive() {
            return Ok(FieldElement::zero(k));
        }
        Ok(match (x, &self.kind) {
            (FieldElement::Qt(f), PlaceKind::FiniteCenter(c)) => {
                let (n, d) = f.strip(&Self::qt_modulus(c));
                if c.is_real() {
                    FieldElement::Q(n.eval(&c.re) / d.eval(&c.re))
                } else {
                    let to_g =
                        |p: &Poly<Rational>| p.map(|q| Gaussian::from_rational(q.clone())).eval(c);
                    FieldElement::Qi(to_g(&n).div(&to_g(&d)))
                }
            }
            (FieldElement::Qit(f), PlaceKind::FiniteCenter(c)) => {
                let (n, d) = f.strip(&Poly::linear(c));
                FieldElement::Qi(n.eval(c).div(&d.eval(c)))
            }
            (FieldElement::Qt(f), PlaceKind::Infinity) => {
                FieldElement::Q(f.num().leading() / f.den().leading())
            }
            (FieldElement::Qit(f), PlaceKind::Infinity) => {
                FieldElement::Qi(f.num().leading().div(&f.den().leading()))
            }
            (FieldElement::Hahn(h), PlaceKind::HahnTAdic) => {
                FieldElement::Q(h.coeff_at(&Rational::zero()))
            }
            _ => return Err(Error::Internal(format!("place {self} on {}", x.field()))),
        })
    }

    /// A section of the residue map: constants lift to constants, except at
    /// non-real centers `c = a+bi` on `Qt` where `i` lifts to `(t-a)/b`.
    pub fn lift(&self, r: &FieldElement) -> Result<FieldElement> {
        let k = self.residue_field();
        if r.field() != k {
            return Err(Error::FieldMismatch {
                expected: k,
                found: r.field(),
            });
        }
        match (&self.kind, self.field) {
            (PlaceKind::FiniteCenter(c), FieldId::Qt) if !c.is_real() => {
                let g = r.as_gaussian().expect("Qi element");
                let num = Poly::from_coeffs(vec![&g.re - &g.im * &c.re / &c.im, &g.im / &c.im]);
                Ok(FieldElement::Qt(RatFunc::from_poly(num)))
            }
            _ => match r {
                FieldElement::Q(q) => Ok(FieldElement::from_rational(self.field, q.clone())),
                FieldElement::Qi(g) => FieldElement::from_gaussian(self.field, g.clone()),
                _ => Err(Error::Internal("residue field is Q or Qi".into())),
            },
        }
    }

    pub fn in_ring(&self, x: &FieldElement) -> Result<bool> {
        Ok(self.valuation(x)?.is_nonnegative())
    }

    pub fn in_ideal(&self, x: &FieldElement) -> Result<bool> {
        Ok(self.valuation(x)?.is_positive())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qt(s: &str) -> FieldElement {
        parse_element(FieldId::Qt, s).unwrap()
    }

    #[test]
    fn valuations_at_zero_and_one() {
        let x = qt("t^2/(t-1)");
        assert_eq!(Place::at(0).valuation(&x).unwrap(), ValueOrInf::int(2));
        assert_eq!(Place::at(1).valuation(&x).unwrap(), ValueOrInf::int(-1));
        assert_eq!(
            Place::at(0).valuation(&qt("0")).unwrap(),
            ValueOrInf::Infinity
        );
    }

    #[test]
    fn residues() {
        assert_eq!(
            Place::at(0)
                .residue(&qt("(t+2)/(t+1)"))
                .unwrap()
                .to_string(),
            "2"
        );
        assert_eq!(Place::at(1).residue(&qt("t+1")).unwrap().to_string(), "2");
        assert_eq!(
            Place::at(0).residue(&qt("1/t")),
            Err(Error::NegativeValuation)
        );
    }

    #[test]
    fn infinity_place() {
        let p = Place::infinity(FieldId::Qt).unwrap();
        assert_eq!(p.valuation(&qt("t/(t^3+1)")).unwrap(), ValueOrInf::int(2));
        assert_eq!(p.residue(&qt("(2*t+1)/(t-5)")).unwrap().to_string(), "2");
    }

    #[test]
    fn non_real_center_has_gaussian_residues() {
        let p = Place::finite(FieldId::Qt, Gaussian::i()).unwrap();
        assert_eq!(p.residue_field(), FieldId::Qi);
        assert_eq!(p.valuation(&qt("t^2+1")).unwrap(), ValueOrInf::int(1));
        assert_eq!(p.residue(&qt("t")).unwrap().to_string(), "i");
        let r = parse_element(FieldId::Qi, "2-3i").unwrap();
        assert_eq!(p.residue(&p.lift(&r).unwrap()).unwrap(), r);
    }

    #[test]
    fn place_json_round_trip() {
        let p = Place::at(1);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"field":"Qt","kind":"finite","center":"1"}"#);
        let q: Place = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
