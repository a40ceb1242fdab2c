//! Coefficient fields for polynomial arithmetic: `Q` and `Q(i)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact field operations needed by [`super::poly::Poly`] and
/// [`super::ratfunc::RatFunc`].
pub trait Coefficient: Clone + PartialEq + Eq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Standalone rendering, e.g. `-1/2` or `1+2i`.
    fn render(&self) -> String;

    /// Returns `(true, -self)` when the rendering of `self` naturally starts
    /// with a minus sign that can be pulled out in front of a term.
    fn split_sign(&self) -> (bool, Self);

    /// Rendering as a multiplicative factor in front of `t^k`.
    fn render_factor(&self) -> String;
}

impl Coefficient for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Coefficient::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn render(&self) -> String {
        format_rational(self)
    }
    fn split_sign(&self) -> (bool, Self) {
        if self.is_negative() {
            (true, -self)
        } else {
            (false, self.clone())
        }
    }
    fn render_factor(&self) -> String {
        if self.is_integer() {
            format_rational(self)
        } else {
            format!("({})", format_rational(self))
        }
    }
}

/// An element `re + im·i` of `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        Gaussian {
            re,
            im: <Rational as Coefficient>::zero(),
        }
    }

    pub fn i() -> Self {
        Gaussian {
            re: <Rational as Coefficient>::zero(),
            im: <Rational as Coefficient>::one(),
        }
    }

    pub fn conj(&self) -> Self {
        Gaussian {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn is_real(&self) -> bool {
        Coefficient::is_zero(&self.im)
    }

    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn render_imag(im: &Rational) -> String {
    if im.is_one() {
        "i".to_string()
    } else if *im == -Rational::one() {
        "-i".to_string()
    } else {
        format!("{}i", format_rational(im))
    }
}

impl Coefficient for Gaussian {
    fn zero() -> Self {
        Gaussian {
            re: <Rational as Coefficient>::zero(),
            im: <Rational as Coefficient>::zero(),
        }
    }
    fn one() -> Self {
        Gaussian {
            re: <Rational as Coefficient>::one(),
            im: <Rational as Coefficient>::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        Coefficient::is_zero(&self.re) && Coefficient::is_zero(&self.im)
    }
    fn add(&self, o: &Self) -> Self {
        Gaussian {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
    fn sub(&self, o: &Self) -> Self {
        Gaussian {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
    fn mul(&self, o: &Self) -> Self {
        Gaussian {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn neg(&self) -> Self {
        Gaussian {
            re: -&self.re,
            im: -&self.im,
        }
    }
    fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!Coefficient::is_zero(&n), "inverse of zero");
        Gaussian {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }
    fn render(&self) -> String {
        if Coefficient::is_zero(&self.im) {
            format_rational(&self.re)
        } else if Coefficient::is_zero(&self.re) {
            render_imag(&self.im)
        } else if self.im.is_negative() {
            format!("{}-{}", format_rational(&self.re), render_imag(&-&self.im))
        } else {
            format!("{}+{}", format_rational(&self.re), render_imag(&self.im))
        }
    }
    fn split_sign(&self) -> (bool, Self) {
        let negative = if Coefficient::is_zero(&self.im) {
            self.re.is_negative()
        } else if Coefficient::is_zero(&self.re) {
            self.im.is_negative()
        } else {
            false
        };
        if negative {
            (true, Coefficient::neg(self))
        } else {
            (false, self.clone())
        }
    }
    fn render_factor(&self) -> String {
        if Coefficient::is_zero(&self.im) {
            self.re.render_factor()
        } else {
            format!("({})", self.render())
        }
    }
}
