use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::coeff::{Coefficient, Gaussian, Rational};
use super::hahn_series::HahnSeries;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldId {
    Q,
    Qi,
    Qt,
    Qit,
    Hahn,
}

impl FieldId {
    pub const ALL: [FieldId; 5] = [
        FieldId::Q,
        FieldId::Qi,
        FieldId::Qt,
        FieldId::Qit,
        FieldId::Hahn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FieldId::Q => "Q",
            FieldId::Qi => "Qi",
            FieldId::Qt => "Qt",
            FieldId::Qit => "Qit",
            FieldId::Hahn => "Hahn",
        }
    }

    pub fn has_i(self) -> bool {
        matches!(self, FieldId::Qi | FieldId::Qit)
    }

    pub fn has_t(self) -> bool {
        matches!(self, FieldId::Qt | FieldId::Qit | FieldId::Hahn)
    }

    /// Whether `self` embeds canonically into `target`.
    pub fn embeds_into(self, target: FieldId) -> bool {
        use FieldId::*;
        self == target || matches!((self, target), (Q, _) | (Qi, Qit) | (Qt, Qit))
    }

    /// Linear algebra needs exact inverses of arbitrary nonzero elements.
    pub fn supports_linear_algebra(self) -> bool {
        self != FieldId::Hahn
    }
}

impl fmt::Display for FieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FieldId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FieldId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown field {s:?}")))
    }
}

/// An exact element of one of the supported fields.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FieldElement {
    Q(Rational),
    Qi(Gaussian),
    Qt(RatFunc<Rational>),
    Qit(RatFunc<Gaussian>),
    Hahn(HahnSeries),
}

fn mismatch(a: FieldId, b: FieldId) -> Error {
    Error::FieldMismatch {
        expected: a,
        found: b,
    }
}

impl FieldElement {
    pub fn field(&self) -> FieldId {
        match self {
            FieldElement::Q(_) => FieldId::Q,
            FieldElement::Qi(_) => FieldId::Qi,
            FieldElement::Qt(_) => FieldId::Qt,
            FieldElement::Qit(_) => FieldId::Qit,
            FieldElement::Hahn(_) => FieldId::Hahn,
        }
    }

    /// Image of a rational under the structure map `Q -> field`.
    pub fn from_rational(field: FieldId, q: Rational) -> Self {
        match field {
            FieldId::Q => FieldElement::Q(q),
            FieldId::Qi => FieldElement::Qi(Gaussian::from_rational(q)),
            FieldId::Qt => FieldElement::Qt(RatFunc::constant(q)),
            FieldId::Qit => FieldElement::Qit(RatFunc::constant(Gaussian::from_rational(q))),
            FieldId::Hahn => FieldElement::Hahn(HahnSeries::constant(q)),
        }
    }

    pub fn from_int(field: FieldId, n: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(n.into()))
    }

    pub fn zero(field: FieldId) -> Self {
        Self::from_rational(field, Rational::zero())
    }

    pub fn one(field: FieldId) -> Self {
        Self::from_rational(field, Rational::one())
    }

    /// The variable `t`.
    pub fn t(field: FieldId) -> Result<Self> {
        match field {
            FieldId::Qt => Ok(FieldElement::Qt(RatFunc::t())),
            FieldId::Qit => Ok(FieldElement::Qit(RatFunc::t())),
            FieldId::Hahn => Ok(FieldElement::Hahn(HahnSeries::monomial(
                Rational::one(),
                Rational::one(),
            )?)),
            f => Err(Error::Domain(format!("field {f} has no variable t"))),
        }
    }

    /// The imaginary unit.
    pub fn i(field: FieldId) -> Result<Self> {
        match field {
            FieldId::Qi => Ok(FieldElement::Qi(Gaussian::i())),
            FieldId::Qit => Ok(FieldElement::Qit(RatFunc::constant(Gaussian::i()))),
            f => Err(Error::Domain(format!("field {f} does not contain i"))),
        }
    }

    pub fn from_gaussian(field: FieldId, g: Gaussian) -> Result<Self> {
        match field {
            FieldId::Qi => Ok(FieldElement::Qi(g)),
            FieldId::Qit => Ok(FieldElement::Qit(RatFunc::constant(g))),
            _ if g.is_real() => Ok(Self::from_rational(field, g.re)),
            f => Err(Error::Domain(format!("field {f} does not contain i"))),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Q(x) => x.is_zero(),
            FieldElement::Qi(x) => Coefficient::is_zero(x),
            FieldElement::Qt(x) => x.is_zero(),
            FieldElement::Qit(x) => x.is_zero(),
            FieldElement::Hahn(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.field())
    }

    /// The rational this element equals, if it lies in the image of `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            FieldElement::Q(x) => Some(x.clone()),
            FieldElement::Qi(x) => x.is_real().then(|| x.re.clone()),
            FieldElement::Qt(x) => x.as_constant(),
            FieldElement::Qit(x) => x.as_constant().filter(|g| g.is_real()).map(|g| g.re),
            FieldElement::Hahn(x) => match x.terms() {
                [] => Some(Rational::zero()),
                [(e, c)] if e.is_zero() => Some(c.clone()),
                _ => None,
            },
        }
    }

    pub fn as_gaussian(&self) -> Option<Gaussian> {
        match self {
            FieldElement::Qi(x) => Some(x.clone()),
            FieldElement::Qit(x) => x.as_constant(),
            _ => self.as_rational().map(Gaussian::from_rational),
        }
    }

    /// Complex conjugation on `Qi` and `Qit`; identity elsewhere.
    pub fn conj(&self) -> Self {
        match self {
            FieldElement::Qi(x) => FieldElement::Qi(x.conj()),
            FieldElement::Qit(x) => FieldElement::Qit(x.map(|c| c.conj())),
            other => other.clone(),
        }
    }

    /// Image under the canonical embedding into `target`.
    pub fn embed(&self, target: FieldId) -> Result<Self> {
        if self.field() == target {
            return Ok(self.clone());
        }
        if !self.field().embeds_into(target) {
            return Err(mismatch(target, self.field()));
        }
        match (self, target) {
            (FieldElement::Q(q), _) => Ok(Self::from_rational(target, q.clone())),
            (FieldElement::Qi(g), FieldId::Qit) => {
                Ok(FieldElement::Qit(RatFunc::constant(g.clone())))
            }
            (FieldElement::Qt(f), FieldId::Qit) => Ok(FieldElement::Qit(
                f.map(|c| Gaussian::from_rational(c.clone())),
            )),
            _ => Err(mismatch(target, self.field())),
        }
    }

    /// Inverse of [`embed`](Self::embed) on `Qit -> Qt`, `Qi -> Q` when the
    /// coefficients are real.
    pub fn real_part_field(&self) -> Result<Self> {
        match self {
            FieldElement::Qi(g) if g.is_real() => Ok(FieldElement::Q(g.re.clone())),
            FieldElement::Qit(f) => {
                let real = f
                    .num()
                    .coeffs()
                    .iter()
                    .chain(f.den().coeffs())
                    .all(|c| c.is_real());
                if real {
                    Ok(FieldElement::Qt(f.map(|c| c.re.clone())))
                } else {
                    Err(Error::Domain(format!("{self} has non-real coefficients")))
                }
            }
            _ => Err(Error::Domain(format!("{self} is not real"))),
        }
    }

    fn binary(
        &self,
        other: &Self,
        q: impl Fn(&Rational, &Rational) -> Rational,
        g: impl Fn(&Gaussian, &Gaussian) -> Gaussian,
        qt: impl Fn(&RatFunc<Rational>, &RatFunc<Rational>) -> RatFunc<Rational>,
        qit: impl Fn(&RatFunc<Gaussian>, &RatFunc<Gaussian>) -> RatFunc<Gaussian>,
        h: impl Fn(&HahnSeries, &HahnSeries) -> Result<HahnSeries>,
    ) -> Result<Self> {
        use FieldElement as E;
        Ok(match (self, other) {
            (E::Q(a), E::Q(b)) => E::Q(q(a, b)),
            (E::Qi(a), E::Qi(b)) => E::Qi(g(a, b)),
            (E::Qt(a), E::Qt(b)) => E::Qt(qt(a, b)),
            (E::Qit(a), E::Qit(b)) => E::Qit(qit(a, b)),
            (E::Hahn(a), E::Hahn(b)) => E::Hahn(h(a, b)?),
            _ => return Err(mismatch(self.field(), other.field())),
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.binary(
            other,
            |a, b| a + b,
            |a, b| a.add(b),
            |a, b| a.add(b),
            |a, b| a.add(b),
            |a, b| Ok(a.add(b)),
        )
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.binary(
            other,
            |a, b| a - b,
            |a, b| a.sub(b),
            |a, b| a.sub(b),
            |a, b| a.sub(b),
            |a, b| Ok(a.sub(b)),
        )
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.binary(
            other,
            |a, b| a * b,
            |a, b| a.mul(b),
            |a, b| a.mul(b),
            |a, b| a.mul(b),
            |a, b| Ok(a.mul(b)),
        )
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if self.field() != other.field() {
            return Err(mismatch(self.field(), other.field()));
        }
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let (FieldElement::Hahn(a), FieldElement::Hahn(b)) = (self, other) {
            return Ok(FieldElement::Hahn(a.div(b)?));
        }
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Q(x) => FieldElement::Q(x.recip()),
            FieldElement::Qi(x) => FieldElement::Qi(x.inv()),
            FieldElement::Qt(x) => FieldElement::Qt(x.inv().expect("nonzero")),
            FieldElement::Qit(x) => FieldElement::Qit(x.inv().expect("nonzero")),
            FieldElement::Hahn(x) => {
                FieldElement::Hahn(HahnSeries::constant(Rational::one()).div(x)?)
            }
        })
    }

    pub fn checked_neg(&self) -> Self {
        match self {
            FieldElement::Q(x) => FieldElement::Q(-x),
            FieldElement::Qi(x) => FieldElement::Qi(Coefficient::neg(x)),
            FieldElement::Qt(x) => FieldElement::Qt(x.neg()),
            FieldElement::Qit(x) => FieldElement::Qit(x.neg()),
            FieldElement::Hahn(x) => FieldElement::Hahn(x.neg()),
        }
    }

    /// Integer power; negative exponents need an invertible base.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.field());
        for _ in 0..e.unsigned_abs() {
            acc = acc.checked_mul(&base)?;
        }
        Ok(acc)
    }

    /// Multiplication by a rational through the structure map.
    pub fn scale(&self, q: &Rational) -> Self {
        self * &Self::from_rational(self.field(), q.clone())
    }

    pub fn render(&self) -> String {
        match self {
            FieldElement::Q(x) => x.render(),
            FieldElement::Qi(x) => x.render(),
            FieldElement::Qt(x) => x.render(),
            FieldElement::Qit(x) => x.render(),
            FieldElement::Hahn(x) => x.render(),
        }
    }

    /// Polynomial `num` in `t` as a field element of `Qt`.
    pub fn qt_from_poly(p: Poly<Rational>) -> Self {
        FieldElement::Qt(RatFunc::from_poly(p))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}: {e}", stringify!($method)),
                }
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);
forward_op!(Div, div, checked_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.checked_neg()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.checked_neg()
    }
}
