//! Directory elements over a semisimple codomain `M = ⊕ k_i^{d_i}`.
//!
//! Part `i` of an element at level `n` lives in `k_i^{d_i·n}` as `n` blocks of
//! `d_i` coordinates, one block per copy of `M`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{FieldElement, FieldId};
use crate::linalg::{is_zero_vector, vec_axpy, zero_vector, K0Matrix, Subspace, Vector};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Summand {
    pub field: FieldId,
    pub mult: usize,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Codomain {
    pub summands: Vec<Summand>,
}

impl Codomain {
    pub fn new(summands: Vec<Summand>) -> Self {
        Codomain { summands }
    }

    pub fn single(field: FieldId, mult: usize) -> Self {
        Codomain {
            summands: vec![Summand { field, mult }],
        }
    }

    pub fn total_length(&self) -> usize {
        self.summands.iter().map(|s| s.mult).sum()
    }

    pub fn concat(&self, other: &Codomain) -> Codomain {
        Codomain {
            summands: self
                .summands
                .iter()
                .chain(&other.summands)
                .copied()
                .collect(),
        }
    }
}

impl fmt::Display for Codomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .summands
            .iter()
            .map(|s| format!("{}^{}", s.field, s.mult))
            .collect();
        f.write_str(&s.join(" + "))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DirectoryElement {
    pub codomain: Codomain,
    pub level: usize,
    pub parts: Vec<Subspace>,
}

impl DirectoryElement {
    pub fn new(codomain: Codomain, level: usize, parts: Vec<Subspace>) -> Result<Self> {
        if parts.len() != codomain.summands.len() {
            return Err(Error::CodomainMismatch);
        }
        for (p, s) in parts.iter().zip(&codomain.summands) {
            if p.field() != s.field || p.ambient() != s.mult * level {
                return Err(Error::CodomainMismatch);
            }
        }
        Ok(DirectoryElement {
            codomain,
            level,
            parts,
        })
    }

    pub fn bottom(codomain: &Codomain, level: usize) -> Self {
        let parts = codomain
            .summands
            .iter()
            .map(|s| Subspace::zero(s.field, s.mult * level))
            .collect();
        DirectoryElement {
            codomain: codomain.clone(),
            level,
            parts,
        }
    }

    pub fn top(codomain: &Codomain, level: usize) -> Self {
        let parts = codomain
            .summands
            .iter()
            .map(|s| Subspace::full(s.field, s.mult * level))
            .collect();
        DirectoryElement {
            codomain: codomain.clone(),
            level,
            parts,
        }
    }

    pub fn length(&self) -> usize {
        self.parts.iter().map(|p| p.dim()).sum()
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.codomain != other.codomain {
            return Err(Error::CodomainMismatch);
        }
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        Ok(())
    }

    fn zip_parts(
        &self,
        other: &Self,
        f: impl Fn(&Subspace, &Subspace) -> Result<Subspace>,
    ) -> Result<Self> {
        self.compatible(other)?;
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| f(a, b))
            .collect::<Result<_>>()?;
        Ok(DirectoryElement {
            codomain: self.codomain.clone(),
            level: self.level,
            parts,
        })
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.zip_parts(other, |a, b| a.sum(b))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.zip_parts(other, |a, b| a.intersect(b))
    }

    /// `x ⊕ y` at level `n + m`.
    pub fn oplus(&self, other: &Self) -> Result<Self> {
        if self.codomain != other.codomain {
            return Err(Error::CodomainMismatch);
        }
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| a.oplus(b))
            .collect::<Result<_>>()?;
        Ok(DirectoryElement {
            codomain: self.codomain.clone(),
            level: self.level + other.level,
            parts,
        })
    }

    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.compatible(other)?;
        Ok(self
            .parts
            .iter()
            .zip(&other.parts)
            .all(|(a, b)| b.contains(a)))
    }

    /// Applies `μ ⊗ I_{d_i}` to part `i`.
    pub fn gl_action(&self, mu: &K0Matrix) -> Result<Self> {
        if mu.rows != self.level {
            return Err(Error::LevelMismatch(mu.rows, self.level));
        }
        let parts = self
            .parts
            .iter()
            .zip(&self.codomain.summands)
            .map(|(p, s)| p.apply_matrix(&mu.kron_identity(s.mult)))
            .collect::<Result<_>>()?;
        Ok(DirectoryElement {
            codomain: self.codomain.clone(),
            level: self.level,
            parts,
        })
    }

    /// Re-reads an element of `(M′)^n ⊆ M^{mn}` over the codomain of `M′`,
    /// where `mprime` is `M′ ⊆ M^m`. Summands with `M′_i = 0` are dropped.
    pub fn recoordinatize(
        mprime: &DirectoryElement,
        x: &DirectoryElement,
    ) -> Result<DirectoryElement> {
        if mprime.codomain != x.codomain {
            return Err(Error::CodomainMismatch);
        }
        let m = mprime.level;
        if m == 0 || !x.level.is_multiple_of(m) {
            return Err(Error::LevelMismatch(m, x.level));
        }
        let n = x.level / m;
        let mut summands = Vec::new();
        let mut parts = Vec::new();
        for (i, (basis, part)) in mprime.parts.iter().zip(&x.parts).enumerate() {
            let s = x.codomain.summands[i];
            let chunk = s.mult * m;
            if basis.dim() == 0 {
                if !part.is_zero() {
                    return Err(Error::NotContained(format!("summand {i} of M' is zero")));
                }
                continue;
            }
            let mut rows = Vec::with_capacity(part.dim());
            for v in part.rows() {
                let mut coords = Vec::with_capacity(basis.dim() * n);
                for b in 0..n {
                    let c = basis
                        .coordinates(&v[b * chunk..(b + 1) * chunk])
                        .ok_or_else(|| {
                            Error::NotContained(format!("summand {i}, block {b} leaves M'"))
                        })?;
                    coords.extend(c);
                }
                rows.push(coords);
            }
            summands.push(Summand {
                field: s.field,
                mult: basis.dim(),
            });
            parts.push(Subspace::from_rows(s.field, basis.dim() * n, rows)?);
        }
        DirectoryElement::new(Codomain::new(summands), n, parts)
    }

    /// Inverse of [`recoordinatize`](Self::recoordinatize): maps an element
    /// over the codomain of `M′` back into `M^{mn}`.
    pub fn decoordinatize(
        mprime: &DirectoryElement,
        y: &DirectoryElement,
    ) -> Result<DirectoryElement> {
        let m = mprime.level;
        let n = y.level;
        let live: Vec<usize> = (0..mprime.parts.len())
            .filter(|&i| mprime.parts[i].dim() > 0)
            .collect();
        if live.len() != y.parts.len() {
            return Err(Error::CodomainMismatch);
        }
        let mut parts: Vec<Subspace> = mprime
            .codomain
            .summands
            .iter()
            .map(|s| Subspace::zero(s.field, s.mult * m * n))
            .collect();
        for (&i, part) in live.iter().zip(&y.parts) {
            let basis = &mprime.parts[i];
            let s = mprime.codomain.summands[i];
            let chunk = s.mult * m;
            let dp = basis.dim();
            if part.ambient() != dp * n {
                return Err(Error::CodomainMismatch);
            }
            let rows = part
                .rows()
                .iter()
                .map(|c| {
                    let mut v = Vec::with_capacity(chunk * n);
                    for b in 0..n {
                        let mut block = zero_vector(s.field, chunk);
                        for (cj, row) in c[b * dp..(b + 1) * dp].iter().zip(basis.rows()) {
                            if !cj.is_zero() {
                                block = vec_axpy(&block, cj, row);
                            }
                        }
                        v.extend(block);
                    }
                    v
                })
                .collect();
            parts[i] = Subspace::from_rows(s.field, chunk * n, rows)?;
        }
        DirectoryElement::new(mprime.codomain.clone(), m * n, parts)
    }

    /// The endomorphism whose level-2 graph this is, if it is one.
    pub fn as_graph(&self) -> Option<Endo> {
        if self.level != 2 {
            return None;
        }
        let mut blocks = Vec::with_capacity(self.parts.len());
        for (p, s) in self.parts.iter().zip(&self.codomain.summands) {
            let d = s.mult;
            if p.dim() != d || p.pivots().iter().enumerate().any(|(j, &c)| c != j) {
                return None;
            }
            let a: Vec<Vector> = (0..d)
                .map(|r| (0..d).map(|c| p.rows()[c][d + r].clone()).collect())
                .collect();
            blocks.push(a);
        }
        Some(Endo {
            codomain: self.codomain.clone(),
            blocks,
        })
    }
}

impl fmt::Display for DirectoryElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(
            f,
            "[{}] @ level {} over {}",
            parts.join("; "),
            self.level,
            self.codomain
        )
    }
}

/// An endomorphism of `M`: one `d_i × d_i` matrix over `k_i` per summand,
/// acting on column vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Endo {
    pub codomain: Codomain,
    pub blocks: Vec<Vec<Vector>>,
}

impl Endo {
    pub fn scalar(codomain: &Codomain, c: &crate::fields::Rational) -> Self {
        let blocks = codomain
            .summands
            .iter()
            .map(|s| {
                (0..s.mult)
                    .map(|i| {
                        (0..s.mult)
                            .map(|j| {
                                if i == j {
                                    FieldElement::from_rational(s.field, c.clone())
                                } else {
                                    FieldElement::zero(s.field)
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Endo {
            codomain: codomain.clone(),
            blocks,
        }
    }

    pub fn zero(codomain: &Codomain) -> Self {
        Self::scalar(codomain, &num_traits::Zero::zero())
    }

    pub fn identity(codomain: &Codomain) -> Self {
        Self::scalar(codomain, &num_traits::One::one())
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().all(|r| is_zero_vector(r))
    }

    pub fn compose(&self, other: &Endo) -> Result<Endo> {
        if self.codomain != other.codomain {
            return Err(Error::CodomainMismatch);
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .zip(&self.codomain.summands)
            .map(|((a, b), s)| {
                let d = s.mult;
                (0..d)
                    .map(|i| {
                        (0..d)
                            .map(|j| {
                                (0..d).fold(FieldElement::zero(s.field), |acc, k| {
                                    acc + &a[i][k] * &b[k][j]
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Endo {
            codomain: self.codomain.clone(),
            blocks,
        })
    }

    pub fn add(&self, other: &Endo) -> Result<Endo> {
        if self.codomain != other.codomain {
            return Err(Error::CodomainMismatch);
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| {
                a.iter()
                    .zip(b)
                    .map(|(r, q)| crate::linalg::vec_add(r, q))
                    .collect()
            })
            .collect();
        Ok(Endo {
            codomain: self.codomain.clone(),
            blocks,
        })
    }

    /// `φ(v)` for `v ∈ M` given as concatenated summand coordinates.
    pub fn apply(&self, v: &[FieldElement]) -> Vector {
        let mut out = Vec::with_capacity(v.len());
        let mut off = 0;
        for (a, s) in self.blocks.iter().zip(&self.codomain.summands) {
            let x = &v[off..off + s.mult];
            for row in a {
                out.push(
                    row.iter()
                        .zip(x)
                        .fold(FieldElement::zero(s.field), |acc, (p, q)| acc + p * q),
                );
            }
            off += s.mult;
        }
        out
    }

    /// `{(y, φy)}` at level 2.
    pub fn graph(&self) -> DirectoryElement {
        let parts = self
            .blocks
            .iter()
            .zip(&self.codomain.summands)
            .map(|(a, s)| {
                let d = s.mult;
                let rows = (0..d)
                    .map(|j| {
                        let mut r = zero_vector(s.field, 2 * d);
                        r[j] = FieldElement::one(s.field);
                        for k in 0..d {
                            r[d + k] = a[k][j].clone();
                        }
                        r
                    })
                    .collect();
                Subspace::from_rows(s.field, 2 * d, rows).expect("well-formed graph")
            })
            .collect();
        DirectoryElement {
            codomain: self.codomain.clone(),
            level: 2,
            parts,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.blocks
                .iter()
                .map(|a| {
                    serde_json::Value::Array(
                        a.iter()
                            .map(|r| {
                                serde_json::Value::Array(
                                    r.iter().map(|x| x.to_string().into()).collect(),
                                )
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

impl fmt::Display for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|a| {
                let rows: Vec<String> = a
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
                format!("[{}]", rows.join("; "))
            })
            .collect();
        f.write_str(&blocks.join(" ⊕ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::parse_element;

    fn q(s: &str) -> FieldElement {
        parse_element(FieldId::Q, s).unwrap()
    }

    #[test]
    fn lengths() {
        let c = Codomain::new(vec![
            Summand {
                field: FieldId::Q,
                mult: 1,
            },
            Summand {
                field: FieldId::Q,
                mult: 1,
            },
        ]);
        assert_eq!(DirectoryElement::bottom(&c, 3).length(), 0);
        assert_eq!(DirectoryElement::top(&c, 3).length(), 6);
        let x = DirectoryElement::new(
            c.clone(),
            2,
            vec![
                Subspace::full(FieldId::Q, 2),
                Subspace::line(FieldId::Q, vec![q("1"), q("1")]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(x.length(), 3);
    }

    #[test]
    fn oplus_of_top_and_bottom() {
        let c = Codomain::single(FieldId::Q, 2);
        let x = DirectoryElement::top(&c, 1)
            .oplus(&DirectoryElement::bottom(&c, 1))
            .unwrap();
        assert_eq!(x.level, 2);
        assert_eq!(x.length(), 2);
    }

    #[test]
    fn graphs_of_zero_and_one_span_the_plane() {
        let c = Codomain::single(FieldId::Q, 1);
        let g0 = Endo::zero(&c).graph();
        let g1 = Endo::identity(&c).graph();
        assert_eq!(g0.sum(&g1).unwrap(), DirectoryElement::top(&c, 2));
        assert_eq!(g1.as_graph().unwrap(), Endo::identity(&c));
    }

    #[test]
    fn swap_transposes_graph() {
        let c = Codomain::single(FieldId::Q, 1);
        let phi = Endo {
            codomain: c.clone(),
            blocks: vec![vec![vec![q("2")]]],
        };
        let swapped = phi
            .graph()
            .gl_action(&K0Matrix::permutation(&[1, 0]))
            .unwrap();
        let inv = Endo {
            codomain: c,
            blocks: vec![vec![vec![q("1/2")]]],
        };
        assert_eq!(swapped, inv.graph());
    }

    #[test]
    fn recoordinatize_onto_diagonal() {
        let c = Codomain::single(FieldId::Q, 1);
        let diag = Endo::identity(&c).graph();
        let x = diag.clone();
        let y = DirectoryElement::recoordinatize(&diag, &x).unwrap();
        assert_eq!(y.codomain, Codomain::single(FieldId::Q, 1));
        assert_eq!(y, DirectoryElement::top(&y.codomain, 1));
        assert_eq!(DirectoryElement::decoordinatize(&diag, &y).unwrap(), x);
    }

    #[test]
    fn recoordinatize_drops_dead_summands() {
        let c = Codomain::new(vec![
            Summand {
                field: FieldId::Q,
                mult: 1,
            },
            Summand {
                field: FieldId::Q,
                mult: 1,
            },
        ]);
        let mprime = DirectoryElement::new(
            c.clone(),
            1,
            vec![Subspace::full(FieldId::Q, 1), Subspace::zero(FieldId::Q, 1)],
        )
        .unwrap();
        let x = mprime.oplus(&mprime).unwrap();
        let y = DirectoryElement::recoordinatize(&mprime, &x).unwrap();
        assert_eq!(y.codomain, Codomain::single(FieldId::Q, 1));
        assert_eq!(y.length(), 2);
        let outside = DirectoryElement::top(&c, 2);
        assert!(matches!(
            DirectoryElement::recoordinatize(&mprime, &outside),
            Err(Error::NotContained(_))
        ));
    }
}
