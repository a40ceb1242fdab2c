//! Test-only oracles. They recompute results from raw data (polynomial
//! coefficients, order relations, series terms) without the library's
//! algorithms.
#![allow(dead_code)]

use inflator_core::fields::{FieldElement, FieldId, HahnSeries, Rational};
use inflator_core::fundamental::{membership, residue_endo};
use inflator_core::inflators::Inflator;
use inflator_core::lattice::FiniteLattice;
use inflator_core::linalg::Subspace;
use num_traits::{One, Signed, Zero};

pub type Poly = Vec<Rational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn eval(p: &[Rational], c: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, x| acc * c + x)
}

/// Divides by `(t − c)` assuming `p(c) = 0`.
fn deflate(p: &[Rational], c: &Rational) -> Poly {
    let n = p.len();
    let mut q = vec![Rational::zero(); n - 1];
    let mut carry = Rational::zero();
    for k in (1..n).rev() {
        carry = &p[k] + carry * c;
        q[k - 1] = carry.clone();
    }
    q
}

/// `(multiplicity of c as a root, p with those factors removed)`.
fn strip_root(p: &[Rational], c: &Rational) -> (i64, Poly) {
    let mut p = trim(p.to_vec());
    let mut k = 0;
    while !p.is_empty() && eval(&p, c).is_zero() {
        p = deflate(&p, c);
        k += 1;
    }
    (k, p)
}

fn qt_parts(x: &FieldElement) -> (Poly, Poly) {
    match x {
        FieldElement::Qt(r) => (r.num().coeffs().to_vec(), r.den().coeffs().to_vec()),
        FieldElement::Q(q) => (vec![q.clone()], vec![Rational::one()]),
        _ => panic!("expected an element of Q(t)"),
    }
}

/// A place of `Q(t)`: `Some(c)` is `t = c`, `None` is `t = ∞`.
pub type At = Option<i64>;

/// `None` for zero.
pub fn val(x: &FieldElement, at: At) -> Option<i64> {
    let (n, d) = qt_parts(x);
    let n = trim(n);
    if n.is_empty() {
        return None;
    }
    let d = trim(d);
    Some(match at {
        Some(c) => {
            let c = Rational::from_integer(c.into());
            strip_root(&n, &c).0 - strip_root(&d, &c).0
        }
        None => d.len() as i64 - n.len() as i64,
    })
}

pub fn in_o(x: &FieldElement, at: At) -> bool {
    val(x, at).is_none_or(|v| v >= 0)
}

pub fn in_m(x: &FieldElement, at: At) -> bool {
    val(x, at).is_none_or(|v| v > 0)
}

/// Residue of an element of the valuation ring.
pub fn res(x: &FieldElement, at: At) -> Rational {
    match val(x, at) {
        None => Rational::zero(),
        Some(v) if v > 0 => Rational::zero(),
        Some(v) => {
            assert_eq!(v, 0, "residue outside the ring");
            let (n, d) = qt_parts(x);
            let (n, d) = (trim(n), trim(d));
            match at {
                Some(c) => {
                    let c = Rational::from_integer(c.into());
                    eval(&strip_root(&n, &c).1, &c) / eval(&strip_root(&d, &c).1, &c)
                }
                None => n.last().unwrap() / d.last().unwrap(),
            }
        }
    }
}

/// Laplace expansion along the first row.
pub fn det(m: &[Vec<FieldElement>], field: FieldId) -> FieldElement {
    match m.len() {
        0 => FieldElement::one(field),
        1 => m[0][0].clone(),
        n => {
            let mut acc = FieldElement::zero(field);
            for j in 0..n {
                let minor: Vec<Vec<FieldElement>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &det(&minor, field);
                acc = if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out.sort();
    out
}

/// Maximal minors of the row matrix.
pub fn plucker(rows: &[Vec<FieldElement>], n: usize, field: FieldId) -> Vec<FieldElement> {
    subsets(n, rows.len())
        .into_iter()
        .map(|cols| {
            let m: Vec<Vec<FieldElement>> = rows
                .iter()
                .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
                .collect();
            det(&m, field)
        })
        .collect()
}

fn uniformizer(at: At) -> FieldElement {
    let t = FieldElement::t(FieldId::Qt).unwrap();
    match at {
        Some(c) => &t - &FieldElement::from_int(FieldId::Qt, c),
        None => FieldElement::one(FieldId::Qt).checked_div(&t).unwrap(),
    }
}

/// Plücker vector of the reduction of `V ∩ O^n`: minors scaled to minimal
/// valuation zero, then reduced.
pub fn reduced_plucker(v: &Subspace, at: At) -> Vec<Rational> {
    let minors = plucker(v.rows(), v.ambient(), FieldId::Qt);
    let min = minors
        .iter()
        .filter_map(|m| val(m, at))
        .min()
        .expect("nonzero minor");
    let scale = uniformizer(at).pow(-min).unwrap();
    minors.iter().map(|m| res(&(m * &scale), at)).collect()
}

pub fn rational_plucker(s: &Subspace) -> Vec<Rational> {
    plucker(s.rows(), s.ambient(), FieldId::Q)
        .iter()
        .map(|x| x.as_rational().unwrap())
        .collect()
}

pub fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if b[i].is_zero() {
        return false;
    }
    let lambda = &b[i] / &a[i];
    a.iter().zip(b).all(|(x, y)| x * &lambda == *y)
}

/// The valuation image `ς_n(V)` at `at` agrees with the Plücker oracle.
pub fn valuation_image_matches(image: &Subspace, v: &Subspace, at: At) -> bool {
    if image.dim() != v.dim() {
        return false;
    }
    if v.dim() == 0 {
        return image.is_zero();
    }
    proportional(&reduced_plucker(v, at), &rational_plucker(image))
}

/// Rebuilds `ς_n(V)` for a 1-inflator to `Q` from its fundamental ring and
/// residue map alone: integral row reduction with pivots chosen so every
/// quotient lies in the ring, then residues of the rows.
pub fn reconstruct(f: &Inflator, v: &Subspace) -> Subspace {
    let in_r = |x: &FieldElement| membership(f, x).unwrap().in_r;
    let residue = |x: &FieldElement| -> FieldElement {
        let e = residue_endo(f, x).unwrap();
        e.blocks[0][0][0].clone()
    };
    let n = v.ambient();
    let mut rows: Vec<Vec<FieldElement>> = v.rows().to_vec();
    let mut done = 0;
    let mut used_cols = Vec::new();
    while done < rows.len() {
        let entries: Vec<(usize, usize)> = (done..rows.len())
            .flat_map(|r| {
                (0..n)
                    .filter(|c| !used_cols.contains(c))
                    .map(move |c| (r, c))
            })
            .filter(|&(r, c)| !rows[r][c].is_zero())
            .collect();
        let &(pr, pc) = entries
            .iter()
            .find(|&&(r, c)| {
                entries
                    .iter()
                    .all(|&(r2, c2)| in_r(&rows[r2][c2].checked_div(&rows[r][c]).unwrap()))
            })
            .expect("a minimal entry");
        rows.swap(done, pr);
        let p = rows[done][pc].clone();
        rows[done] = rows[done]
            .iter()
            .map(|x| x.checked_div(&p).unwrap())
            .collect();
        for r in 0..rows.len() {
            if r != done && !rows[r][pc].is_zero() {
                let c = rows[r][pc].clone();
                rows[r] = rows[r]
                    .iter()
                    .zip(&rows[done])
                    .map(|(x, y)| x - &(&c * y))
                    .collect();
            }
        }
        used_cols.push(pc);
        done += 1;
    }
    let reduced: Vec<Vec<FieldElement>> = rows
        .iter()
        .map(|r| r.iter().map(&residue).collect())
        .collect();
    Subspace::from_rows(FieldId::Q, n, reduced).unwrap()
}

/// Order oracles built from `leq` alone.
pub struct Order<'a> {
    pub l: &'a FiniteLattice,
    pub n: usize,
}

impl<'a> Order<'a> {
    pub fn new(l: &'a FiniteLattice) -> Self {
        Order { l, n: l.len() }
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        let lower: Vec<usize> = (0..self.n)
            .filter(|&x| self.l.leq(x, a) && self.l.leq(x, b))
            .collect();
        *lower
            .iter()
            .find(|&&x| lower.iter().all(|&y| self.l.leq(y, x)))
            .expect("meet")
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        let upper: Vec<usize> = (0..self.n)
            .filter(|&x| self.l.leq(a, x) && self.l.leq(b, x))
            .collect();
        *upper
            .iter()
            .find(|&&x| upper.iter().all(|&y| self.l.leq(x, y)))
            .expect("join")
    }

    pub fn bottom(&self) -> usize {
        (0..self.n)
            .find(|&x| (0..self.n).all(|y| self.l.leq(x, y)))
            .unwrap()
    }

    pub fn top(&self) -> usize {
        (0..self.n)
            .find(|&x| (0..self.n).all(|y| self.l.leq(y, x)))
            .unwrap()
    }

    pub fn modular(&self) -> bool {
        (0..self.n).all(|a| {
            (0..self.n).all(|b| {
                !self.l.leq(a, b)
                    || (0..self.n)
                        .all(|x| self.join(a, self.meet(x, b)) == self.meet(self.join(a, x), b))
            })
        })
    }

    fn meet_all(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.top(), |m, &x| self.meet(m, x))
    }

    fn join_all(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.bottom(), |m, &x| self.join(m, x))
    }

    /// Largest `k` with a strict `k`-cube over some base, by exhaustive
    /// search over all generator sets of each size.
    pub fn cube_rank(&self, base: Option<usize>) -> usize {
        let bases: Vec<usize> = base
            .map(|b| vec![b])
            .unwrap_or_else(|| (0..self.n).collect());
        let mut best = 0;
        for k in 1..=self.n {
            let found = bases.iter().any(|&b| {
                let above: Vec<usize> = (0..self.n)
                    .filter(|&x| x != b && self.l.leq(b, x))
                    .collect();
                subsets(above.len(), k).into_iter().any(|s| {
                    let gens: Vec<usize> = s.iter().map(|&i| above[i]).collect();
                    self.strict_cube(b, &gens)
                })
            });
            if !found {
                break;
            }
            best = k;
        }
        best
    }

    pub fn strict_cube(&self, base: usize, gens: &[usize]) -> bool {
        let k = gens.len();
        let corner = |s: usize| -> usize {
            let picked: Vec<usize> = (0..k)
                .filter(|i| s >> i & 1 == 1)
                .map(|i| gens[i])
                .collect();
            self.join(base, self.join_all(&picked))
        };
        let cs: Vec<usize> = (0..1 << k).map(corner).collect();
        let distinct = (0..cs.len()).all(|i| (0..i).all(|j| cs[i] != cs[j]));
        distinct
            && (0..cs.len()).all(|s| {
                (0..cs.len()).all(|t| {
                    self.meet(cs[s], cs[t]) == cs[s & t] && self.join(cs[s], cs[t]) == cs[s | t]
                })
            })
    }

    /// Largest family in which omitting any member changes the meet
    /// (`meets`) or the join.
    pub fn irredundant_rank(&self, meets: bool) -> usize {
        let fold = |xs: &[usize]| {
            if meets {
                self.meet_all(xs)
            } else {
                self.join_all(xs)
            }
        };
        let mut best = 0;
        for k in 1..=self.n {
            let found = subsets(self.n, k).into_iter().any(|s| {
                let all = fold(&s);
                (0..k).all(|i| {
                    let rest: Vec<usize> = s
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, &x)| x)
                        .collect();
                    fold(&rest) != all
                })
            });
            if !found {
                break;
            }
            best = k;
        }
        best
    }

    pub fn atoms(&self) -> Vec<usize> {
        let b = self.bottom();
        (0..self.n)
            .filter(|&x| x != b && (0..self.n).all(|y| y == b || y == x || !self.l.leq(y, x)))
            .collect()
    }

    pub fn socle(&self) -> usize {
        self.join_all(&self.atoms())
    }

    /// Length of the longest chain in `[a, b]`.
    pub fn height(&self, a: usize, b: usize) -> usize {
        fn go(o: &Order, x: usize, b: usize) -> usize {
            (0..o.n)
                .filter(|&y| y != x && o.l.leq(x, y) && o.l.leq(y, b))
                .map(|y| 1 + go(o, y, b))
                .max()
                .unwrap_or(0)
        }
        go(self, a, b)
    }

    /// A filter without a least element, by enumerating all up-closed
    /// meet-closed subsets.
    pub fn nonprincipal_filter(&self) -> Option<Vec<usize>> {
        for mask in 1u32..(1 << self.n) {
            let set: Vec<usize> = (0..self.n).filter(|i| mask >> i & 1 == 1).collect();
            let has = |x: usize| mask >> x & 1 == 1;
            let up = set
                .iter()
                .all(|&x| (0..self.n).all(|y| !self.l.leq(x, y) || has(y)));
            let closed = set
                .iter()
                .all(|&x| set.iter().all(|&y| has(self.meet(x, y))));
            if up && closed && !set.iter().any(|&m| set.iter().all(|&x| self.l.leq(m, x))) {
                return Some(set);
            }
        }
        None
    }
}

/// Terms of a Hahn series.
pub fn hahn_terms(x: &HahnSeries) -> Vec<(Rational, Rational)> {
    x.terms().to_vec()
}

pub fn odd_exponent(e: &Rational) -> bool {
    e.numer().is_odd_integer()
}

trait OddInt {
    fn is_odd_integer(&self) -> bool;
}

impl OddInt for num_bigint::BigInt {
    fn is_odd_integer(&self) -> bool {
        (self.abs() % 2u8) == num_bigint::BigInt::one()
    }
}

/// Minimal exponent among terms with odd (`true`) or even numerator.
pub fn min_exp(x: &HahnSeries, odd: bool) -> Option<Rational> {
    hahn_terms(x)
        .into_iter()
        .filter(|(e, c)| !c.is_zero() && odd_exponent(e) == odd)
        .map(|(e, _)| e)
        .min()
}

pub fn hahn_in_r(x: &HahnSeries) -> bool {
    let two = Rational::from_integer(2.into());
    min_exp(x, false).is_none_or(|e| e >= Rational::zero())
        && min_exp(x, true).is_none_or(|e| e >= two)
}
