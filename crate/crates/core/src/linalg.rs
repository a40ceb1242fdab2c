//! Subspaces of `K^n` in reduced row echelon form, and rational matrices.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{parse_element, FieldElement, FieldId, Rational};

pub type Vector = Vec<FieldElement>;

pub fn zero_vector(field: FieldId, n: usize) -> Vector {
    vec![FieldElement::zero(field); n]
}

pub fn unit_vector(field: FieldId, n: usize, k: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[k] = FieldElement::one(field);
    v
}

pub fn is_zero_vector(v: &[FieldElement]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_add(a: &[FieldElement], b: &[FieldElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[FieldElement], b: &[FieldElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &FieldElement, a: &[FieldElement]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

/// `a + c·b`
pub fn vec_axpy(a: &[FieldElement], c: &FieldElement, b: &[FieldElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + &(c * y)).collect()
}

fn check_field(field: FieldId) -> Result<()> {
    if field.supports_linear_algebra() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("linear algebra over {field}")))
    }
}

/// Reduces `rows` in place to RREF with zero rows removed; returns pivot
/// columns.
pub fn rref(rows: &mut Vec<Vector>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            rows[r] = vec_scale(&inv, &rows[r]);
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = -&row[c];
                *row = vec_axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : A x = 0}` for `A` given by rows with `ncols` columns.
pub fn nullspace(field: FieldId, rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = zero_vector(field, ncols);
            x[f] = FieldElement::one(field);
            for (row, &p) in m.iter().zip(&pivots) {
                x[p] = -&row[f];
            }
            x
        })
        .collect()
}

/// Basis of `{c : Σ c_i·rows_i = 0}`.
pub fn left_kernel(field: FieldId, rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let k = rows.len();
    let transposed: Vec<Vector> = (0..ncols)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect();
    nullspace(field, &transposed, k)
}

/// Determinant of a square matrix.
pub fn det(field: FieldId, m: &[Vector]) -> FieldElement {
    let n = m.len();
    let mut a = m.to_vec();
    let mut acc = FieldElement::one(field);
    for c in 0..n {
        let Some(p) = (c..n).find(|&k| !a[k][c].is_zero()) else {
            return FieldElement::zero(field);
        };
        if p != c {
            a.swap(p, c);
            acc = -acc;
        }
        acc = &acc * &a[c][c];
        let inv = a[c][c].inv().expect("nonzero pivot");
        let pivot_row = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if !row[c].is_zero() {
                let f = -(&row[c] * &inv);
                *row = vec_axpy(row, &f, &pivot_row);
            }
        }
    }
    acc
}

/// Solves `x·A = b` for row vector `x`, where `A` has the given rows.
pub fn solve_left(field: FieldId, rows: &[Vector], b: &[FieldElement]) -> Option<Vector> {
    let k = rows.len();
    let n = b.len();
    let mut aug: Vec<Vector> = (0..n)
        .map(|j| {
            let mut r: Vector = rows.iter().map(|row| row[j].clone()).collect();
            r.push(b[j].clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, k + 1);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut x = zero_vector(field, k);
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[k].clone();
    }
    Some(x)
}

/// A subspace of `K^n`, stored by its reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    field: FieldId,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_rows(field: FieldId, ambient: usize, rows: Vec<Vector>) -> Result<Self> {
        check_field(field)?;
        for r in &rows {
            if r.len() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} in K^{ambient}",
                    r.len()
                )));
            }
            if let Some(x) = r.iter().find(|x| x.field() != field) {
                return Err(Error::FieldMismatch {
                    expected: field,
                    found: x.field(),
                });
            }
        }
        Ok(Self::from_rows_unchecked(field, ambient, rows))
    }

    pub(crate) fn from_rows_unchecked(
        field: FieldId,
        ambient: usize,
        mut rows: Vec<Vector>,
    ) -> Self {
        let pivots = rref(&mut rows, ambient);
        Subspace {
            field,
            ambient,
            rows,
            pivots,
        }
    }

    pub fn zero(field: FieldId, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldId, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: (0..ambient)
                .map(|k| unit_vector(field, ambient, k))
                .collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn line(field: FieldId, v: Vector) -> Result<Self> {
        let n = v.len();
        let s = Self::from_rows(field, n, vec![v])?;
        if s.dim() != 1 {
            return Err(Error::NotALine(s.dim()));
        }
        Ok(s)
    }

    pub fn field(&self) -> FieldId {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field,
                found: other.field,
            });
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "K^{} vs K^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[FieldElement]) -> Option<Vector> {
        let coords: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (c, row) in coords.iter().zip(&self.rows) {
            if !c.is_zero() {
                rest = vec_axpy(&rest, &-c, row);
            }
        }
        is_zero_vector(&rest).then_some(coords)
    }

    pub fn contains_vector(&self, v: &[FieldElement]) -> bool {
        v.len() == self.ambient && self.coordinates(v).is_some()
    }

    pub fn contains(&self, other: &Self) -> bool {
        other.rows.iter().all(|r| self.contains_vector(r))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Ok(Self::from_rows_unchecked(self.field, self.ambient, rows))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(other.clone());
        }
        let stacked: Vec<Vector> = self.rows.iter().chain(&other.rows).cloned().collect();
        let kernel = left_kernel(self.field, &stacked, self.ambient);
        let p = self.rows.len();
        let rows = kernel
            .iter()
            .map(|c| {
                let mut v = zero_vector(self.field, self.ambient);
                for (ci, row) in c[..p].iter().zip(&self.rows) {
                    if !ci.is_zero() {
                        v = vec_axpy(&v, ci, row);
                    }
                }
                v
            })
            .collect();
        Ok(Self::from_rows_unchecked(self.field, self.ambient, rows))
    }

    /// Block direct sum `V ⊕ W ⊆ K^{n+m}`.
    pub fn oplus(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field,
                found: other.field,
            });
        }
        let n = self.ambient + other.ambient;
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for r in &self.rows {
            let mut v = r.clone();
            v.extend(zero_vector(self.field, other.ambient));
            rows.push(v);
        }
        for r in &other.rows {
            let mut v = zero_vector(self.field, self.ambient);
            v.extend(r.iter().cloned());
            rows.push(v);
        }
        Ok(Self::from_rows_unchecked(self.field, n, rows))
    }

    /// `{μ·v : v ∈ V}` with `v` a column vector.
    pub fn apply_matrix(&self, mu: &K0Matrix) -> Result<Self> {
        if mu.rows != self.ambient || mu.cols != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix on K^{}",
                mu.rows, mu.cols, self.ambient
            )));
        }
        if !mu.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        let rows = self.rows.iter().map(|r| mu.apply(self.field, r)).collect();
        Ok(Self::from_rows_unchecked(self.field, self.ambient, rows))
    }

    /// Entrywise complex conjugate.
    pub fn conjugate(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.conj()).collect())
            .collect();
        Self::from_rows_unchecked(self.field, self.ambient, rows)
    }

    /// Whether every RREF entry lies in `Q`; equivalently the subspace is
    /// defined over `Q`.
    pub fn is_rational(&self) -> bool {
        self.rows
            .iter()
            .flatten()
            .all(|x| x.as_rational().is_some())
    }

    /// Same rows, re-read over another field along a canonical embedding or
    /// its inverse on rational entries.
    pub fn change_field(&self, target: FieldId) -> Result<Self> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| match x.embed(target) {
                        Ok(y) => Ok(y),
                        Err(_) => x
                            .as_rational()
                            .map(|q| FieldElement::from_rational(target, q))
                            .ok_or_else(|| Error::Domain(format!("{x} is not in {target}"))),
                    })
                    .collect::<Result<Vector>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(target, self.ambient, rows)
    }

    /// Coordinates `[lo, hi)` of every basis vector, re-reduced.
    pub fn project(&self, lo: usize, hi: usize) -> Self {
        let rows = self.rows.iter().map(|r| r[lo..hi].to_vec()).collect();
        Self::from_rows_unchecked(self.field, hi - lo, rows)
    }

    /// `{v ∈ V : v_j = 0 for j ∉ [lo, hi)}` restricted to `[lo, hi)`.
    pub fn slice(&self, lo: usize, hi: usize) -> Self {
        let mask = Subspace {
            field: self.field,
            ambient: self.ambient,
            rows: (lo..hi)
                .map(|k| unit_vector(self.field, self.ambient, k))
                .collect(),
            pivots: (lo..hi).collect(),
        };
        self.intersect(&mask).expect("same shape").project(lo, hi)
    }
}

/// `ξ^L_n(V) ⊆ K^{mn}`: coordinate `i·m + s` of the image of `x` is `a_s·x_i`,
/// where `(a_1, …, a_m)` is the RREF generator of `L`.
pub fn xi_line(line: &Subspace, v: &Subspace) -> Result<Subspace> {
    if line.dim() != 1 {
        return Err(Error::NotALine(line.dim()));
    }
    if line.field() != v.field() {
        return Err(Error::FieldMismatch {
            expected: v.field(),
            found: line.field(),
        });
    }
    let a = &line.rows()[0];
    let m = a.len();
    let rows = v
        .rows()
        .iter()
        .map(|x| {
            x.iter()
                .flat_map(|xi| a.iter().map(move |as_| as_ * xi))
                .collect()
        })
        .collect();
    Ok(Subspace::from_rows_unchecked(
        v.field(),
        m * v.ambient(),
        rows,
    ))
}

/// Generator of `L₂ ⊗ L₁`, the line with `ξ^{L₁}_{m₂n} ∘ ξ^{L₂}_n = ξ^{L₂⊗L₁}_n`.
pub fn tensor_lines(l2: &Subspace, l1: &Subspace) -> Result<Subspace> {
    let (b, a) = (&l2.rows()[0], &l1.rows()[0]);
    let v: Vector = b
        .iter()
        .flat_map(|bs| a.iter().map(move |ar| bs * ar))
        .collect();
    Subspace::line(l1.field(), v)
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "0 in {}^{}", self.field, self.ambient);
        }
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                format!(
                    "({})",
                    r.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            })
            .collect();
        write!(f, "span{{{}}}", rows.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    field: FieldId,
    ambient: usize,
    rows: Vec<Vec<String>>,
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubspaceRepr {
            field: self.field,
            ambient: self.ambient,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SubspaceRepr::deserialize(d)?;
        let rows = r
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|lit| parse_element(r.field, lit))
                    .collect::<Result<Vector>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Subspace::from_rows(r.field, r.ambient, rows).map_err(serde::de::Error::custom)
    }
}

/// A matrix over `Q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct K0Matrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Rational>>,
}

impl K0Matrix {
    pub fn new(entries: Vec<Vec<Rational>>) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        K0Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_ints(entries: &[&[i64]]) -> Self {
        Self::new(
            entries
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::new(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                Rational::one()
                            } else {
                                Rational::zero()
                            }
                        })
                        .collect()
                })
                .collect(),
        )
    }

    /// Permutation matrix sending `e_j` to `e_{perm[j]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (j, &i) in perm.iter().enumerate() {
            m[i][j] = Rational::one();
        }
        Self::new(m)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            (0..self.rows)
                .map(|i| {
                    (0..other.cols)
                        .map(|j| {
                            (0..self.cols)
                                .map(|k| &self.entries[i][k] * &other.entries[k][j])
                                .sum()
                        })
                        .collect()
                })
                .collect(),
        )
    }

    fn as_field_rows(&self, field: FieldId) -> Vec<Vector> {
        self.entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|q| FieldElement::from_rational(field, q.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && !det(FieldId::Q, &self.as_field_rows(FieldId::Q)).is_zero()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        let n = self.rows;
        let mut aug: Vec<Vector> = self
            .as_field_rows(FieldId::Q)
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                r.extend(unit_vector(FieldId::Q, n, i));
                r
            })
            .collect();
        rref(&mut aug, 2 * n);
        Ok(Self::new(
            aug.iter()
                .map(|r| {
                    r[n..]
                        .iter()
                        .map(|x| x.as_rational().expect("rational"))
                        .collect()
                })
                .collect(),
        ))
    }

    /// `μ·v` for a column vector `v` over `field`.
    pub fn apply(&self, field: FieldId, v: &[FieldElement]) -> Vector {
        self.entries
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .fold(FieldElement::zero(field), |acc, (q, x)| {
                        if q.is_zero() {
                            acc
                        } else {
                            acc + x.scale(q)
                        }
                    })
            })
            .collect()
    }

    /// Kronecker product `μ ⊗ I_d`.
    pub fn kron_identity(&self, d: usize) -> Self {
        let n = self.rows * d;
        let mut m = vec![vec![Rational::zero(); self.cols * d]; n];
        for i in 0..self.rows {
            for j in 0..self.cols {
                for s in 0..d {
                    m[i * d + s][j * d + s] = self.entries[i][j].clone();
                }
            }
        }
        Self::new(m)
    }
}
