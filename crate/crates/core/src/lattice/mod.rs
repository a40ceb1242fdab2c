//! Finite bounded lattices given by cover relations.

pub mod corpus;
pub mod cube;
pub mod flatten;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cube::{rk0, rk_bot};
pub use flatten::{flatten, quasi_atoms, FlatteningResult};

/// `{"elements": N, "covers": [[lo, hi], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeJson {
    pub elements: usize,
    pub covers: Vec<[usize; 2]>,
}

/// A validated finite lattice with order, meet and join tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    n: usize,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

fn not_a_lattice(message: impl Into<String>, witness: (usize, usize)) -> Error {
    Error::NotALattice {
        message: message.into(),
        witness,
    }
}

impl FiniteLattice {
    /// From a cover (or any generating) relation `lo < hi`.
    pub fn from_covers(n: usize, covers: &[[usize; 2]]) -> Result<Self> {
        if n == 0 {
            return Err(not_a_lattice("empty poset", (0, 0)));
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &[lo, hi] in covers {
            if lo >= n || hi >= n {
                return Err(not_a_lattice(
                    format!("index out of range in cover ({lo}, {hi})"),
                    (lo, hi),
                ));
            }
            if lo == hi {
                return Err(not_a_lattice("element covers itself", (lo, hi)));
            }
            leq[lo][hi] = true;
        }
        for k in 0..n {
            let row = leq[k].clone();
            for r in leq.iter_mut().filter(|r| r[k]) {
                for (x, &y) in r.iter_mut().zip(&row) {
                    *x |= y;
                }
            }
        }
        Self::from_order(leq)
    }

    /// From a reflexive, transitive relation `leq[a][b] ⇔ a ≤ b`.
    pub fn from_order(leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = leq.len();
        if let Some(ab) = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| leq[a][b] && leq[b][a])
        {
            return Err(not_a_lattice("cycle in order", ab));
        }
        let minimal: Vec<usize> = (0..n)
            .filter(|&a| (0..n).all(|b| b == a || !leq[b][a]))
            .collect();
        let maximal: Vec<usize> = (0..n)
            .filter(|&a| (0..n).all(|b| b == a || !leq[a][b]))
            .collect();
        if minimal.len() != 1 {
            return Err(not_a_lattice(
                "no unique bottom",
                (minimal[0], *minimal.get(1).unwrap_or(&minimal[0])),
            ));
        }
        if maximal.len() != 1 {
            return Err(not_a_lattice(
                "no unique top",
                (maximal[0], *maximal.get(1).unwrap_or(&maximal[0])),
            ));
        }
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in a..n {
                let lower: Vec<usize> = (0..n).filter(|&c| leq[c][a] && leq[c][b]).collect();
                let m = lower
                    .iter()
                    .copied()
                    .find(|&c| lower.iter().all(|&e| leq[e][c]))
                    .ok_or_else(|| not_a_lattice("missing meet", (a, b)))?;
                let upper: Vec<usize> = (0..n).filter(|&c| leq[a][c] && leq[b][c]).collect();
                let j = upper
                    .iter()
                    .copied()
                    .find(|&c| upper.iter().all(|&e| leq[c][e]))
                    .ok_or_else(|| not_a_lattice("missing join", (a, b)))?;
                meet[a][b] = m;
                meet[b][a] = m;
                join[a][b] = j;
                join[b][a] = j;
            }
        }
        Ok(FiniteLattice {
            n,
            leq,
            meet,
            join,
            bottom: minimal[0],
            top: maximal[0],
        })
    }

    pub fn from_json(j: &LatticeJson) -> Result<Self> {
        Self::from_covers(j.elements, &j.covers)
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            elements: self.n,
            covers: self.covers(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |m, x| self.meet(m, x))
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |m, x| self.join(m, x))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Pairs `(a, b)` with `b` covering `a`.
    pub fn covers(&self) -> Vec<[usize; 2]> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.lt(a, b) && !(0..self.n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push([a, b]);
                }
            }
        }
        out
    }

    pub fn atoms(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| a != self.bottom && self.covers_pair(self.bottom, a))
            .collect()
    }

    fn covers_pair(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) && !(0..self.n).any(|c| self.lt(a, c) && self.lt(c, b))
    }

    /// Length of the longest chain in `[a, b]`.
    pub fn height_between(&self, a: usize, b: usize) -> usize {
        let mut memo = vec![None; self.n];
        self.height_from(a, b, &mut memo)
    }

    fn height_from(&self, a: usize, b: usize, memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(h) = memo[a] {
            return h;
        }
        let h = (0..self.n)
            .filter(|&c| self.covers_pair(a, c) && self.leq(c, b))
            .map(|c| 1 + self.height_from(c, b, memo))
            .max()
            .unwrap_or(0);
        memo[a] = Some(h);
        h
    }

    pub fn height(&self) -> usize {
        self.height_between(self.bottom, self.top)
    }

    /// A triple `(a, b, c)` with `a ≤ c` and `a ∨ (b ∧ c) ≠ (a ∨ b) ∧ c`.
    pub fn modularity_witness(&self) -> Option<(usize, usize, usize)> {
        for a in 0..self.n {
            for c in 0..self.n {
                if !self.leq(a, c) {
                    continue;
                }
                for b in 0..self.n {
                    if self.join(a, self.meet(b, c)) != self.meet(self.join(a, b), c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_modular(&self) -> bool {
        self.modularity_witness().is_none()
    }

    pub fn require_modular(&self) -> Result<()> {
        match self.modularity_witness() {
            None => Ok(()),
            Some(w) => Err(Error::NotModular(w)),
        }
    }

    /// The interval `[a, b]` as a lattice, with the inclusion map.
    pub fn interval(&self, a: usize, b: usize) -> (FiniteLattice, Vec<usize>) {
        let elems: Vec<usize> = (0..self.n)
            .filter(|&x| self.leq(a, x) && self.leq(x, b))
            .collect();
        let leq = elems
            .iter()
            .map(|&x| elems.iter().map(|&y| self.leq(x, y)).collect())
            .collect();
        (
            FiniteLattice::from_order(leq).expect("intervals are lattices"),
            elems,
        )
    }

    /// Every filter is `↑a` for some `a`; returns a non-principal filter if
    /// one exists. Exhaustive, so only for small lattices.
    pub fn nonprincipal_filter(&self) -> Option<Vec<usize>> {
        assert!(self.n <= 20, "filter enumeration is exponential");
        for mask in 1u32..(1u32 << self.n) {
            let has = |x: usize| mask & (1 << x) != 0;
            let elems: Vec<usize> = (0..self.n).filter(|&x| has(x)).collect();
            let up_closed = elems
                .iter()
                .all(|&x| (0..self.n).all(|y| !self.leq(x, y) || has(y)));
            let meet_closed = elems
                .iter()
                .all(|&x| elems.iter().all(|&y| has(self.meet(x, y))));
            if up_closed && meet_closed {
                let m = self.meet_all(elems.iter().copied());
                if !elems.iter().all(|&x| self.leq(m, x))
                    || (0..self.n).any(|y| self.leq(m, y) && !has(y))
                {
                    return Some(elems);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn load_and_reject() {
        let c3 = FiniteLattice::from_covers(3, &[[0, 1], [1, 2]]).unwrap();
        assert_eq!(c3.height(), 2);
        let m3 = FiniteLattice::from_covers(5, &[[0, 1], [0, 2], [0, 3], [1, 4], [2, 4], [3, 4]])
            .unwrap();
        assert!(m3.is_modular());
        let no_top = FiniteLattice::from_covers(3, &[[0, 1], [0, 2]]);
        assert!(matches!(no_top, Err(Error::NotALattice { .. })));
        let cyc = FiniteLattice::from_covers(2, &[[0, 1], [1, 0]]);
        assert!(matches!(cyc, Err(Error::NotALattice { .. })));
        let bowtie = FiniteLattice::from_covers(
            6,
            &[
                [0, 1],
                [0, 2],
                [1, 3],
                [2, 3],
                [1, 4],
                [2, 4],
                [3, 5],
                [4, 5],
            ],
        );
        assert!(
            matches!(bowtie, Err(Error::NotALattice { message, .. }) if message.contains("join"))
        );
    }

    #[test]
    fn pentagon_is_not_modular() {
        let n5 = FiniteLattice::from_covers(5, &[[0, 1], [1, 2], [2, 4], [0, 3], [3, 4]]).unwrap();
        let (a, b, c) = n5.modularity_witness().unwrap();
        assert!(n5.leq(a, c));
        assert_ne!(n5.join(a, n5.meet(b, c)), n5.meet(n5.join(a, b), c));
    }

    #[test]
    fn json_round_trip() {
        let j: LatticeJson =
            serde_json::from_str(r#"{"elements": 3, "covers": [[0, 1], [1, 2]]}"#).unwrap();
        let l = FiniteLattice::from_json(&j).unwrap();
        assert_eq!(l.to_json(), j);
    }
}
