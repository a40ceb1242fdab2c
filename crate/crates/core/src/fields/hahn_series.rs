//! Finitely supported series over `Q` with exponents in `Z[1/3]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::coeff::{format_rational, Coefficient, Rational};
use crate::error::{Error, Result};

/// Sorted `(exponent, coefficient)` pairs, exponents strictly increasing,
/// coefficients nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HahnSeries {
    terms: Vec<(Rational, Rational)>,
}

pub fn is_triadic(q: &Rational) -> bool {
    let mut d = q.denom().clone();
    let three = BigInt::from(3);
    while d.is_multiple_of(&three) {
        d /= &three;
    }
    num_traits::One::is_one(&d)
}

impl HahnSeries {
    pub fn zero() -> Self {
        HahnSeries { terms: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Rational::zero()).expect("zero exponent is triadic")
    }

    pub fn monomial(c: Rational, e: Rational) -> Result<Self> {
        if !is_triadic(&e) {
            return Err(Error::Domain(format!(
                "exponent {} is not in Z[1/3]",
                format_rational(&e)
            )));
        }
        if c.is_zero() {
            return Ok(Self::zero());
        }
        Ok(HahnSeries {
            terms: vec![(e, c)],
        })
    }

    /// Accepts unsorted terms with repeated exponents.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let mut v: Vec<(Rational, Rational)> = terms.into_iter().collect();
        if let Some((e, _)) = v.iter().find(|(e, _)| !is_triadic(e)) {
            return Err(Error::Domain(format!(
                "exponent {} is not in Z[1/3]",
                format_rational(e)
            )));
        }
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Ok(HahnSeries { terms: out })
    }

    pub fn terms(&self) -> &[(Rational, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Smallest exponent in the support; `None` for zero.
    pub fn min_exponent(&self) -> Option<&Rational> {
        self.terms.first().map(|(e, _)| e)
    }

    pub fn coeff_at(&self, e: &Rational) -> Rational {
        self.terms
            .iter()
            .find(|(x, _)| x == e)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    fn merge(&self, other: &Self, sign: &Rational) -> Self {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0.clone(), &b[j].1 * sign));
                j += 1;
            } else {
                let c = &a[i].1 + &b[j].1 * sign;
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
        HahnSeries { terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, &Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, &-Rational::one())
    }

    pub fn neg(&self) -> Self {
        HahnSeries {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                terms.push((e1 + e2, c1 * c2));
            }
        }
        Self::from_terms(terms).expect("sums of triadic exponents are triadic")
    }

    /// Division by a monomial `c·t^e`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        match other.terms.as_slice() {
            [] => Err(Error::DivisionByZero),
            [(e, c)] => Ok(HahnSeries {
                terms: self.terms.iter().map(|(x, d)| (x - e, d / c)).collect(),
            }),
            _ => Err(Error::HahnUnsupportedInverse),
        }
    }

    /// Splits by the parity of the exponent class in `Z[1/3] / 2·Z[1/3]`,
    /// returning `(even, odd)`.
    pub fn parity_split(&self) -> (Self, Self) {
        let (even, odd): (Vec<_>, Vec<_>) = self
            .terms
            .iter()
            .cloned()
            .partition(|(e, _)| exponent_is_even(e));
        (HahnSeries { terms: even }, HahnSeries { terms: odd })
    }

    /// Ascending exponents, e.g. `2*t^(1/3)-t^2`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in &self.terms {
            let (neg, a) = c.split_sign();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if e.is_zero() {
                out.push_str(&format_rational(&a));
                continue;
            }
            if !a.is_one() {
                out.push_str(&a.render_factor());
                out.push('*');
            }
            out.push('t');
            if e.is_one() {
                continue;
            }
            if e.is_integer() && e.is_positive() {
                out.push('^');
                out.push_str(&e.numer().to_string());
            } else {
                out.push_str(&format!("^({})", format_rational(e)));
            }
        }
        out
    }
}

/// Parity of `p` when `e = p/3^k` in lowest terms.
pub fn exponent_is_even(e: &Rational) -> bool {
    e.numer().is_even()
}
