//! Strict cubes: reduced rank `rk₀` and `rk_⊥`.

use super::FiniteLattice;
use crate::error::Result;

/// Largest family whose meets are irredundant: dropping any member changes
/// the meet. Any subfamily of such a family is again irredundant, so the
/// search only extends irredundant families.
pub fn max_irredundant_meet(l: &FiniteLattice) -> Vec<usize> {
    max_irredundant(l, &|l, a, b| l.meet(a, b), l.top())
}

/// The dual search with joins.
pub fn max_irredundant_join(l: &FiniteLattice) -> Vec<usize> {
    max_irredundant(l, &|l, a, b| l.join(a, b), l.bottom())
}

type Op = dyn Fn(&FiniteLattice, usize, usize) -> usize;

fn fold(l: &FiniteLattice, op: &Op, unit: usize, xs: &[usize], skip: Option<usize>) -> usize {
    xs.iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != skip)
        .fold(unit, |m, (_, &x)| op(l, m, x))
}

fn irredundant(l: &FiniteLattice, op: &Op, unit: usize, xs: &[usize]) -> bool {
    let all = fold(l, op, unit, xs, None);
    (0..xs.len()).all(|i| fold(l, op, unit, xs, Some(i)) != all)
}

fn max_irredundant(l: &FiniteLattice, op: &Op, unit: usize) -> Vec<usize> {
    fn go(
        l: &FiniteLattice,
        op: &Op,
        unit: usize,
        cur: &mut Vec<usize>,
        next: usize,
        best: &mut Vec<usize>,
    ) {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        for x in next..l.len() {
            if cur.len() + (l.len() - x) <= best.len() {
                return;
            }
            cur.push(x);
            if irredundant(l, op, unit, cur) {
                go(l, op, unit, cur, x + 1, best);
            }
            cur.pop();
        }
    }
    let mut best = Vec::new();
    go(l, op, unit, &mut Vec::new(), 0, &mut best);
    best
}

/// A strict cube: base `c` and generators `b_i > c`, with
/// `S ↦ c ∨ ⋁_{i∈S} b_i` an injective lattice homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cube {
    pub base: usize,
    pub generators: Vec<usize>,
}

fn corner(l: &FiniteLattice, base: usize, gens: &[usize], s: usize) -> usize {
    gens.iter()
        .enumerate()
        .filter(|(i, _)| s & (1 << i) != 0)
        .fold(base, |m, (_, &b)| l.join(m, b))
}

/// Whether the generators span a strict cube over `base`.
pub fn is_strict_cube(l: &FiniteLattice, base: usize, gens: &[usize]) -> bool {
    let k = gens.len();
    let corners: Vec<usize> = (0..1usize << k).map(|s| corner(l, base, gens, s)).collect();
    for s in 0..corners.len() {
        for t in 0..corners.len() {
            if s != t && corners[s] == corners[t] {
                return false;
            }
            if l.meet(corners[s], corners[t]) != corners[s & t] {
                return false;
            }
        }
    }
    true
}

/// Largest strict cube by exhaustive search over bases and generators,
/// optionally with the base fixed.
pub fn max_strict_cube(l: &FiniteLattice, fixed_base: Option<usize>) -> Cube {
    fn go(l: &FiniteLattice, base: usize, cur: &mut Vec<usize>, next: usize, best: &mut Cube) {
        if cur.len() > best.generators.len() {
            *best = Cube {
                base,
                generators: cur.clone(),
            };
        }
        for x in next..l.len() {
            if !l.lt(base, x) {
                continue;
            }
            cur.push(x);
            if is_strict_cube(l, base, cur) {
                go(l, base, cur, x + 1, best);
            }
            cur.pop();
        }
    }
    let mut best = Cube {
        base: l.bottom(),
        generators: Vec::new(),
    };
    let bases: Vec<usize> = match fixed_base {
        Some(b) => vec![b],
        None => (0..l.len()).collect(),
    };
    for base in bases {
        go(l, base, &mut Vec::new(), 0, &mut best);
    }
    best
}

/// Largest sequence `b₁, …, b_n > ⊥` with `(b₁ ∨ ⋯ ∨ b_{k−1}) ∧ b_k = ⊥`.
pub fn max_independent_over_bottom(l: &FiniteLattice) -> Vec<usize> {
    fn go(l: &FiniteLattice, cur: &mut Vec<usize>, acc: usize, next: usize, best: &mut Vec<usize>) {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        for x in next..l.len() {
            if x == l.bottom() || l.meet(acc, x) != l.bottom() {
                continue;
            }
            cur.push(x);
            go(l, cur, l.join(acc, x), x + 1, best);
            cur.pop();
        }
    }
    let mut best = Vec::new();
    go(l, &mut Vec::new(), l.bottom(), 0, &mut best);
    best
}

/// Reduced rank, through irredundant meets.
pub fn rk0(l: &FiniteLattice) -> Result<usize> {
    l.require_modular()?;
    Ok(max_irredundant_meet(l).len())
}

/// Largest strict cube with base `⊥`.
pub fn rk_bot(l: &FiniteLattice) -> Result<usize> {
    l.require_modular()?;
    Ok(max_independent_over_bottom(l).len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FiniteLattice {
        let covers: Vec<[usize; 2]> = (1..n).map(|i| [i - 1, i]).collect();
        FiniteLattice::from_covers(n, &covers).unwrap()
    }

    #[test]
    fn chains_have_rank_one() {
        let c = chain(5);
        assert_eq!(rk0(&c).unwrap(), 1);
        assert_eq!(rk_bot(&c).unwrap(), 1);
        assert_eq!(max_strict_cube(&c, None).generators.len(), 1);
        assert_eq!(rk0(&chain(1)).unwrap(), 0);
    }

    #[test]
    fn diamond() {
        let m3 = FiniteLattice::from_covers(5, &[[0, 1], [0, 2], [0, 3], [1, 4], [2, 4], [3, 4]])
            .unwrap();
        assert_eq!(rk0(&m3).unwrap(), 2);
        assert_eq!(rk_bot(&m3).unwrap(), 2);
        assert_eq!(max_irredundant_join(&m3).len(), 2);
        assert_eq!(max_strict_cube(&m3, Some(0)).generators.len(), 2);
    }
}
