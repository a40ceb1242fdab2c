//! Specialization of subspaces along a place.

use crate::error::Result;
use crate::fields::{FieldElement, Place};
use crate::linalg::{vec_axpy, vec_scale, Subspace, Vector};

/// A basis of `V ∩ Oⁿ` over `O`, with pivot columns where the basis matrix
/// restricts to the identity.
pub struct AdaptedBasis {
    pub rows: Vec<Vector>,
    pub pivots: Vec<usize>,
}

/// Valuation-pivoted elimination: repeatedly takes the entry of least
/// valuation among the unprocessed rows as the next pivot, scales it to 1 and
/// clears its column in every other row.
pub fn adapted_basis(place: &Place, v: &Subspace) -> Result<AdaptedBasis> {
    let mut rows: Vec<Vector> = v.rows().to_vec();
    let k = rows.len();
    let mut done = vec![false; k];
    let mut pivots = vec![0; k];
    for _ in 0..k {
        let mut best: Option<(usize, usize, crate::fields::ValueOrInf)> = None;
        for (r, row) in rows.iter().enumerate() {
            if done[r] {
                continue;
            }
            for (c, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let val = place.valuation(x)?;
                if best.as_ref().is_none_or(|(_, _, b)| val < *b) {
                    best = Some((r, c, val));
                }
            }
        }
        let (r, c, _) = best.expect("basis rows are nonzero");
        let inv = rows[r][c].inv()?;
        rows[r] = vec_scale(&inv, &rows[r]);
        let pivot_row = rows[r].clone();
        for (s, row) in rows.iter_mut().enumerate() {
            if s != r && !row[c].is_zero() {
                let f = -&row[c];
                *row = vec_axpy(row, &f, &pivot_row);
            }
        }
        done[r] = true;
        pivots[r] = c;
    }
    Ok(AdaptedBasis { rows, pivots })
}

/// `(V ∩ Oⁿ + mⁿ)/mⁿ ⊆ kⁿ`.
pub fn specialize(place: &Place, v: &Subspace) -> Result<Subspace> {
    let basis = adapted_basis(place, v)?;
    let k = place.residue_field();
    let rows = basis
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| place.residue(x))
                .collect::<Result<Vec<FieldElement>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Subspace::from_rows(k, v.ambient(), rows)
}
