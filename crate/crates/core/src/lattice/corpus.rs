//! Small lattices: chains, `M₃`, `N₅`, subspace lattices over `F_p`,
//! divisor lattices, and a lattice of modules over `O₀ ∩ O₁` on `Q(t)`.

use std::collections::BTreeSet;

use super::FiniteLattice;
use crate::error::{Error, Result};
use crate::fields::{FieldElement, FieldId, Place};

pub fn chain(n: usize) -> FiniteLattice {
    let covers: Vec<[usize; 2]> = (1..n).map(|i| [i - 1, i]).collect();
    FiniteLattice::from_covers(n, &covers).expect("chain")
}

pub fn m3() -> FiniteLattice {
    FiniteLattice::from_covers(5, &[[0, 1], [0, 2], [0, 3], [1, 4], [2, 4], [3, 4]]).expect("M3")
}

pub fn n5() -> FiniteLattice {
    FiniteLattice::from_covers(5, &[[0, 1], [1, 2], [2, 4], [0, 3], [3, 4]]).expect("N5")
}

fn from_sets(sets: &[BTreeSet<usize>]) -> FiniteLattice {
    let leq = sets
        .iter()
        .map(|a| sets.iter().map(|b| a.is_subset(b)).collect())
        .collect();
    FiniteLattice::from_order(leq).expect("inclusion lattice")
}

/// All subspaces of `F_p^k`, ordered by inclusion. Vectors are encoded as
/// base-`p` integers.
pub fn subspaces_fp(p: usize, k: usize) -> FiniteLattice {
    let size = p.pow(k as u32);
    let decode = |v: usize| -> Vec<usize> { (0..k).map(|i| (v / p.pow(i as u32)) % p).collect() };
    let encode =
        |x: &[usize]| -> usize { x.iter().enumerate().map(|(i, c)| c * p.pow(i as u32)).sum() };
    let add = |a: usize, b: usize| -> usize {
        let (x, y) = (decode(a), decode(b));
        encode(
            &x.iter()
                .zip(&y)
                .map(|(s, t)| (s + t) % p)
                .collect::<Vec<_>>(),
        )
    };
    let span_with = |s: &BTreeSet<usize>, v: usize| -> BTreeSet<usize> {
        let mut out = s.clone();
        let mut mult = 0;
        for _ in 0..p {
            for &w in s {
                out.insert(add(w, mult));
            }
            mult = add(mult, v);
        }
        out
    };
    let zero: BTreeSet<usize> = [0].into_iter().collect();
    let mut found: BTreeSet<BTreeSet<usize>> = [zero.clone()].into_iter().collect();
    let mut frontier = vec![zero];
    while let Some(s) = frontier.pop() {
        for v in 0..size {
            if !s.contains(&v) {
                let t = span_with(&s, v);
                if found.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
    }
    from_sets(&found.into_iter().collect::<Vec<_>>())
}

/// Divisors of `n` under divisibility.
pub fn divisors(n: u64) -> FiniteLattice {
    let ds: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let leq = ds
        .iter()
        .map(|a| ds.iter().map(|b| b % a == 0).collect())
        .collect();
    FiniteLattice::from_order(leq).expect("divisor lattice")
}

/// A lower bound on a valuation: `None` is no condition, `Some(k)` is `v ≥ k`.
type Cut = Option<i64>;

/// The module `{x : v₀(x) ≥ a, v₁(x) ≥ b}`, or the zero module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Module {
    Zero,
    Cuts(Cut, Cut),
}

fn tighter(a: Cut, b: Cut) -> Cut {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.max(y)),
    }
}

fn looser(a: Cut, b: Cut) -> Cut {
    match (a, b) {
        (None, _) | (_, None) => None,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

impl Module {
    fn meet(self, o: Module) -> Module {
        match (self, o) {
            (Module::Cuts(a, b), Module::Cuts(c, d)) => Module::Cuts(tighter(a, c), tighter(b, d)),
            _ => Module::Zero,
        }
    }

    /// Sums are componentwise by weak approximation for the two
    /// independent places.
    fn join(self, o: Module) -> Module {
        match (self, o) {
            (Module::Cuts(a, b), Module::Cuts(c, d)) => Module::Cuts(looser(a, c), looser(b, d)),
            (Module::Zero, x) | (x, Module::Zero) => x,
        }
    }

    fn contains(self, x: &FieldElement, p0: &Place, p1: &Place) -> Result<bool> {
        let ok = |p: &Place, c: Cut| -> Result<bool> {
            Ok(match c {
                None => true,
                Some(k) => !p
                    .valuation(x)?
                    .finite()
                    .is_some_and(|v| *v < crate::fields::int(k)),
            })
        };
        Ok(match self {
            Module::Zero => x.is_zero(),
            Module::Cuts(a, b) => ok(p0, a)? && ok(p1, b)?,
        })
    }

    fn label(self) -> String {
        let c = |x: Cut, m: &str, o: &str| match x {
            None => None,
            Some(0) => Some(o.to_string()),
            Some(_) => Some(m.to_string()),
        };
        match self {
            Module::Zero => "0".into(),
            Module::Cuts(a, b) => match (c(a, "m0", "O0"), c(b, "m1", "O1")) {
                (None, None) => "K".into(),
                (Some(x), None) | (None, Some(x)) => x,
                (Some(x), Some(y)) => format!("{x}∩{y}"),
            },
        }
    }
}

/// The lattice of `R`-submodules of `Q(t)` generated by `O₀, O₁, m₀, m₁, K, 0`
/// for `R = O₀ ∩ O₁`, with labels. Inclusions are cross-checked against
/// membership of the test elements `t^i (t−1)^j`, `|i|, |j| ≤ 2`.
pub fn module_lattice() -> Result<(FiniteLattice, Vec<String>)> {
    let gens = [
        Module::Cuts(Some(0), None),
        Module::Cuts(None, Some(0)),
        Module::Cuts(Some(1), None),
        Module::Cuts(None, Some(1)),
        Module::Cuts(None, None),
        Module::Zero,
    ];
    let mut elems: BTreeSet<Module> = gens.into_iter().collect();
    loop {
        let cur: Vec<Module> = elems.iter().copied().collect();
        let before = elems.len();
        for &a in &cur {
            for &b in &cur {
                elems.insert(a.meet(b));
                elems.insert(a.join(b));
            }
        }
        if elems.len() == before {
            break;
        }
    }
    let elems: Vec<Module> = elems.into_iter().collect();
    let (p0, p1) = (Place::at(0), Place::at(1));
    let t = FieldElement::t(FieldId::Qt)?;
    let t1 = &t - &FieldElement::one(FieldId::Qt);
    let mut tests = vec![FieldElement::zero(FieldId::Qt)];
    for i in -2..=2 {
        for j in -2..=2 {
            tests.push(&t.pow(i)? * &t1.pow(j)?);
        }
    }
    let members: Vec<BTreeSet<usize>> = elems
        .iter()
        .map(|m| {
            let mut s = BTreeSet::new();
            for (k, x) in tests.iter().enumerate() {
                if m.contains(x, &p0, &p1)? {
                    s.insert(k);
                }
            }
            Ok(s)
        })
        .collect::<Result<_>>()?;
    let by_cuts = |a: Module, b: Module| a.join(b) == b;
    for (i, &a) in elems.iter().enumerate() {
        for (j, &b) in elems.iter().enumerate() {
            if by_cuts(a, b) != members[i].is_subset(&members[j]) {
                return Err(Error::Internal(format!(
                    "{} ⊆ {} disagrees with membership",
                    a.label(),
                    b.label()
                )));
            }
        }
    }
    Ok((
        from_sets(&members),
        elems.iter().map(|m| m.label()).collect(),
    ))
}

pub struct CorpusEntry {
    pub name: &'static str,
    pub lattice: FiniteLattice,
    pub modular: bool,
    /// Reduced rank by hand, for modular entries.
    pub rk0: Option<usize>,
}

pub fn corpus() -> Vec<CorpusEntry> {
    let e = |name, lattice, modular, rk0| CorpusEntry {
        name,
        lattice,
        modular,
        rk0,
    };
    vec![
        e("C3", chain(3), true, Some(1)),
        e("C5", chain(5), true, Some(1)),
        e("M3", m3(), true, Some(2)),
        e("N5", n5(), false, None),
        e("Sub_F2(F2^2)", subspaces_fp(2, 2), true, Some(2)),
        e("Sub_F2(F2^3)", subspaces_fp(2, 3), true, Some(3)),
        e("Sub_F3(F3^2)", subspaces_fp(3, 2), true, Some(2)),
        // 60 = 2²·3·5: the divisors 2, 3, 5 over 1 span a strict 3-cube.
        e("Div(60)", divisors(60), true, Some(3)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(subspaces_fp(2, 2).len(), 5);
        assert_eq!(subspaces_fp(2, 3).len(), 16);
        assert_eq!(subspaces_fp(3, 2).len(), 6);
        assert_eq!(divisors(60).len(), 12);
    }

    #[test]
    fn module_lattice_has_rank_two() {
        let (l, labels) = module_lattice().unwrap();
        assert_eq!(l.len(), 10, "{labels:?}");
        assert!(l.is_modular());
        assert_eq!(super::super::rk0(&l).unwrap(), 2);
    }
}
