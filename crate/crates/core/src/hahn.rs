//! The even/odd pedestal ring on `Q((t^Γ))`, `Γ = Z[1/3]`, and witnesses that
//! its mutated pedestals are not stabilized by the valuation ring.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::hahn_series::exponent_is_even;
use crate::fields::{int, HahnSeries, Rational, ValueOrInf};
use crate::sample;

pub const ODD_THRESHOLD: i64 = 2;

/// `(g, h)`: the terms with even and odd exponent numerators.
pub fn even_odd(x: &HahnSeries) -> (HahnSeries, HahnSeries) {
    x.parity_split()
}

pub fn val(x: &HahnSeries) -> ValueOrInf {
    match x.min_exponent() {
        Some(e) => ValueOrInf::Finite(e.clone()),
        None => ValueOrInf::Infinity,
    }
}

fn at_least(v: &ValueOrInf, k: &Rational) -> bool {
    match v {
        ValueOrInf::Infinity => true,
        ValueOrInf::Finite(e) => e >= k,
    }
}

pub fn in_o(x: &HahnSeries) -> bool {
    at_least(&val(x), &int(0))
}

/// `val g ≥ 0` and `val h ≥ 2`.
pub fn in_r(x: &HahnSeries) -> bool {
    HahnPedestal::base().contains(x)
}

/// `A′ = {x : val g(x) ≥ γ, val h(x) ≥ 2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HahnPedestal {
    pub gamma: Rational,
}

impl HahnPedestal {
    pub fn base() -> Self {
        HahnPedestal { gamma: int(0) }
    }

    pub fn contains(&self, x: &HahnSeries) -> bool {
        let (g, h) = even_odd(x);
        at_least(&val(&g), &self.gamma) && at_least(&val(&h), &int(ODD_THRESHOLD))
    }
}

/// `γ = max({0} ∪ {2 − val h(a_i)})` for a line `(1, a₂, …, a_m)` in `O^m`.
pub fn mutated_gamma(line: &[HahnSeries]) -> Result<HahnPedestal> {
    match line.first() {
        Some(a) if *a == HahnSeries::constant(int(1)) => {}
        _ => return Err(Error::Precondition("line must start with 1".into())),
    }
    let mut gamma = int(0);
    for a in &line[1..] {
        if !in_o(a) {
            return Err(Error::NotInO(a.render()));
        }
        if let ValueOrInf::Finite(v) = val(&even_odd(a).1) {
            let c = int(ODD_THRESHOLD) - v;
            if c > gamma {
                gamma = c;
            }
        }
    }
    if gamma >= int(ODD_THRESHOLD) {
        return Err(Error::Internal(format!("gamma {gamma} is not below 2")));
    }
    Ok(HahnPedestal { gamma })
}

#[derive(Clone, Debug, Serialize)]
pub struct EndlessWitness {
    pub gamma: String,
    pub x: String,
    pub y: String,
    pub ratio: String,
    pub x_in_pedestal: bool,
    pub y_in_pedestal: bool,
    pub ratio_in_o: bool,
    pub verdict: &'static str,
}

/// Monomials `x = t^{p/3^k}` with `p` even and `y = t^{p′/3^k}` with `p′`
/// odd and `γ < val x < val y < 2`, at the least `k` where they exist:
/// `x` is the smallest such grid point above `γ`, `y` the largest below 2.
pub fn endless_witness(p: &HahnPedestal) -> Result<EndlessWitness> {
    let two = int(ODD_THRESHOLD);
    if p.gamma >= two {
        return Err(Error::Precondition(format!(
            "gamma {} is not below 2",
            p.gamma
        )));
    }
    let one = int(1);
    for k in 0..40u32 {
        let den = num_bigint::BigInt::from(3u8).pow(k);
        let scaled = &p.gamma * Rational::from_integer(den.clone());
        let mut px = scaled.floor().to_integer() + 1;
        if num_integer::Integer::is_odd(&px) {
            px += 1;
        }
        let mut py = (&two * Rational::from_integer(den.clone())).to_integer() - 1;
        if num_integer::Integer::is_even(&py) {
            py -= 1;
        }
        if px >= py {
            continue;
        }
        let ex = Rational::new(px, den.clone());
        let ey = Rational::new(py, den);
        debug_assert!(exponent_is_even(&ex) && !exponent_is_even(&ey));
        let x = HahnSeries::monomial(one.clone(), ex)?;
        let y = HahnSeries::monomial(one.clone(), ey)?;
        let ratio = y.div(&x)?;
        let w = EndlessWitness {
            gamma: p.gamma.to_string(),
            x: x.render(),
            y: y.render(),
            ratio: ratio.render(),
            x_in_pedestal: p.contains(&x),
            y_in_pedestal: p.contains(&y),
            ratio_in_o: in_o(&ratio),
            verdict: "",
        };
        let ok = w.x_in_pedestal && !w.y_in_pedestal && w.ratio_in_o;
        return Ok(EndlessWitness {
            verdict: if ok { "not_stabilized_by_O" } else { "invalid" },
            ..w
        });
    }
    Err(Error::NoWitness(format!(
        "no grid points inside ({}, 2)",
        p.gamma
    )))
}

/// A random element of `R` with at most four terms.
pub fn sample_in_r<R: Rng>(rng: &mut R) -> HahnSeries {
    loop {
        let x = sample::hahn_series(rng, 4);
        let (g, h) = even_odd(&x);
        let shift = |s: &HahnSeries, lo: i64| {
            HahnSeries::from_terms(s.terms().iter().map(|(e, c)| {
                let e = if *e < int(lo) {
                    e + int(lo + 1)
                } else {
                    e.clone()
                };
                (e, c.clone())
            }))
            .expect("triadic")
        };
        let y = shift(&g, 0).add(&shift(&h, ODD_THRESHOLD));
        if in_r(&y) {
            return y;
        }
    }
}
