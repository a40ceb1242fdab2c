//! Rational functions `num/den` in `t` with coprime parts and monic denominator.

use super::coeff::Coefficient;
use super::poly::Poly;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc<C: Coefficient> {
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: Coefficient> RatFunc<C> {
    /// Panics when `den` is zero.
    pub fn new(num: Poly<C>, den: Poly<C>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, _) = num.divrem(&g);
        let (mut den, _) = den.divrem(&g);
        let lc = den.leading();
        if !lc.is_one() {
            let inv = lc.inv();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(num: Poly<C>) -> Self {
        RatFunc {
            num,
            den: Poly::one(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn t() -> Self {
        Self::from_poly(Poly::monomial(C::one(), 1))
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn num(&self) -> &Poly<C> {
        &self.num
    }

    pub fn den(&self) -> &Poly<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The constant value, if this is a constant.
    pub fn as_constant(&self) -> Option<C> {
        if self.den.is_one() && self.num.degree().unwrap_or(0) == 0 {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    /// `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> RatFunc<D> {
        RatFunc::new(self.num.map(&f), self.den.map(&f))
    }

    /// Order of vanishing along the irreducible polynomial `p`.
    pub fn order_at(&self, p: &Poly<C>) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let (a, _) = self.num.split_off(p);
        let (b, _) = self.den.split_off(p);
        Some(a as i64 - b as i64)
    }

    /// Numerator and denominator with all factors of `p` removed.
    pub fn strip(&self, p: &Poly<C>) -> (Poly<C>, Poly<C>) {
        (self.num.split_off(p).1, self.den.split_off(p).1)
    }

    /// `deg den - deg num`.
    pub fn order_at_infinity(&self) -> Option<i64> {
        let dn = self.num.degree()? as i64;
        Some(self.den.degree().unwrap_or(0) as i64 - dn)
    }

    pub fn render(&self) -> String {
        let num = self.num.render();
        if self.den.is_one() {
            return num;
        }
        let bare = self.num.term_count() == 1
            && !num[1..].contains(['+', '-'])
            && (self.num.degree() != Some(0) || !num.contains('/'));
        let num = if bare { num } else { format!("({num})") };
        let den = self.den.render();
        let den = if self.den.term_count() == 1 {
            den
        } else {
            format!("({den})")
        };
        format!("{num}/{den}")
    }
}

#[cfg(test)]
mod tests {
    use super::super::coeff::{int, Rational};
    use super::*;

    fn p(cs: &[i64]) -> Poly<Rational> {
        Poly::from_coeffs(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn cancels_common_factor() {
        let f = RatFunc::new(p(&[-1, 0, 1]), p(&[-1, 1]));
        assert_eq!(f, RatFunc::from_poly(p(&[1, 1])));
    }

    #[test]
    fn denominator_is_monic() {
        let f = RatFunc::new(p(&[1]), p(&[2, 2]));
        assert!(f.den().leading().is_one());
        assert_eq!(f.render(), "(1/2)/(t+1)");
    }

    #[test]
    fn renders_monomial_parts_bare() {
        let f = RatFunc::new(p(&[1]), p(&[0, 0, 1]));
        assert_eq!(f.render(), "1/t^2");
        let g = RatFunc::new(p(&[0, 0, 1]), p(&[-1, 1]));
        assert_eq!(g.render(), "t^2/(t-1)");
    }

    #[test]
    fn orders() {
        let g = RatFunc::new(p(&[0, 0, 1]), p(&[-1, 1]));
        assert_eq!(g.order_at(&p(&[0, 1])), Some(2));
        assert_eq!(g.order_at(&p(&[-1, 1])), Some(-1));
        assert_eq!(g.order_at_infinity(), Some(-1));
    }
}
