//! Seeded random generators for field elements, subspaces and matrices.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fields::poly::Poly;
use crate::fields::ratfunc::RatFunc;
use crate::fields::{FieldElement, FieldId, Gaussian, HahnSeries, Rational};
use crate::linalg::{vec_axpy, zero_vector, K0Matrix, Subspace, Vector};

pub const DEFAULT_SEED: u64 = 20240601;

/// The generator for trial `index` under `seed`; independent of scheduling.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let n: i64 = rng.gen_range(-4..=4);
    let d: i64 = rng.gen_range(1..=3);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let q = small_rational(rng);
        if q != Rational::from_integer(0.into()) {
            return q;
        }
    }
}

fn small_gaussian<R: Rng>(rng: &mut R) -> Gaussian {
    if rng.gen_bool(0.3) {
        Gaussian::from_rational(small_rational(rng))
    } else {
        Gaussian::new(small_rational(rng), small_rational(rng))
    }
}

fn small_poly<C: crate::fields::coeff::Coefficient, R: Rng>(
    rng: &mut R,
    max_deg: usize,
    coeff: &impl Fn(&mut R) -> C,
) -> Poly<C> {
    let deg = rng.gen_range(0..=max_deg);
    Poly::from_coeffs((0..=deg).map(|_| coeff(rng)).collect())
}

/// `c · t^a (t-1)^b · p/q` with small random `p`, `q`, so that orders at the
/// places `0`, `1` and `∞` vary.
fn structured_ratfunc<C: crate::fields::coeff::Coefficient, R: Rng>(
    rng: &mut R,
    coeff: impl Fn(&mut R) -> C,
) -> RatFunc<C> {
    let t = RatFunc::<C>::t();
    let t1 = t.sub(&RatFunc::one());
    let mut x = RatFunc::constant(coeff(rng));
    while x.is_zero() {
        x = RatFunc::constant(coeff(rng));
    }
    let a: i32 = rng.gen_range(-2..=2);
    let b: i32 = rng.gen_range(-2..=2);
    for (base, e) in [(&t, a), (&t1, b)] {
        for _ in 0..e.unsigned_abs() {
            x = if e > 0 {
                x.mul(base)
            } else {
                x.mul(&base.inv().expect("nonzero"))
            };
        }
    }
    let p = small_poly(rng, 1, &coeff);
    let q = small_poly(rng, 1, &coeff);
    if !p.is_zero() && !q.is_zero() && rng.gen_bool(0.6) {
        x = x.mul(&RatFunc::new(p, q));
    }
    x
}

pub fn hahn_series<R: Rng>(rng: &mut R, max_terms: usize) -> HahnSeries {
    let k = rng.gen_range(0..=max_terms);
    let terms = (0..k).map(|_| {
        let den = [1i64, 3, 9][rng.gen_range(0..3)];
        let num: i64 = rng.gen_range(-2 * den..=3 * den);
        (Rational::new(num.into(), den.into()), nonzero_rational(rng))
    });
    HahnSeries::from_terms(terms).expect("triadic exponents")
}

/// A random element, biased toward interesting valuations; zero with
/// probability about 1/10.
pub fn element<R: Rng>(rng: &mut R, field: FieldId) -> FieldElement {
    if rng.gen_bool(0.1) {
        return FieldElement::zero(field);
    }
    match field {
        FieldId::Q => FieldElement::Q(small_rational(rng)),
        FieldId::Qi => FieldElement::Qi(small_gaussian(rng)),
        FieldId::Qt => FieldElement::Qt(structured_ratfunc(rng, |r: &mut R| small_rational(r))),
        FieldId::Qit => FieldElement::Qit(structured_ratfunc(rng, |r: &mut R| small_gaussian(r))),
        FieldId::Hahn => FieldElement::Hahn(hahn_series(rng, 4)),
    }
}

pub fn nonzero_element<R: Rng>(rng: &mut R, field: FieldId) -> FieldElement {
    loop {
        let x = element(rng, field);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn vector<R: Rng>(rng: &mut R, field: FieldId, n: usize) -> Vector {
    (0..n)
        .map(|_| {
            if rng.gen_bool(0.25) {
                FieldElement::zero(field)
            } else {
                element(rng, field)
            }
        })
        .collect()
}

/// A random subspace of `K^n` of dimension at most `dim`.
pub fn subspace_of_dim<R: Rng>(rng: &mut R, field: FieldId, n: usize, dim: usize) -> Subspace {
    let rows = (0..dim).map(|_| vector(rng, field, n)).collect();
    Subspace::from_rows(field, n, rows).expect("well-formed rows")
}

pub fn subspace<R: Rng>(rng: &mut R, field: FieldId, n: usize) -> Subspace {
    let dim = rng.gen_range(0..=n);
    subspace_of_dim(rng, field, n, dim)
}

/// A random subspace of `w` of dimension at most `dim`.
pub fn subspace_within<R: Rng>(rng: &mut R, w: &Subspace, dim: usize) -> Subspace {
    let field = w.field();
    let rows = (0..dim.min(w.dim())).map(|_| combination(rng, w)).collect();
    Subspace::from_rows(field, w.ambient(), rows).expect("well-formed rows")
}

/// A random linear combination of the basis of `w`.
pub fn combination<R: Rng>(rng: &mut R, w: &Subspace) -> Vector {
    let field = w.field();
    let mut v = zero_vector(field, w.ambient());
    for r in w.rows() {
        let c = if rng.gen_bool(0.5) {
            FieldElement::from_rational(field, small_rational(rng))
        } else {
            element(rng, field)
        };
        v = vec_axpy(&v, &c, r);
    }
    v
}

/// A product of integer elementary matrices and a permutation.
pub fn unimodular<R: Rng>(rng: &mut R, n: usize) -> K0Matrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = K0Matrix::permutation(&perm);
    if n < 2 {
        if rng.gen_bool(0.5) {
            m = K0Matrix::from_ints(&[&[-1]]);
        }
        return m;
    }
    for _ in 0..rng.gen_range(1..=3) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c: i64 = [-2, -1, 1, 2][rng.gen_range(0..4)];
        let mut e = K0Matrix::identity(n);
        e.entries[i][j] = Rational::from_integer(c.into());
        m = e.mul(&m);
    }
    m
}
