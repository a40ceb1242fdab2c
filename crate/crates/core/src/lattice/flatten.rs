//! Quasi-atoms and the flattening map `x ↦ x ∧ socle`.

use serde::Serialize;

use super::cube::max_independent_over_bottom;
use super::FiniteLattice;
use crate::error::Result;
use crate::report::Report;

/// Elements `q > ⊥` whose interval `(⊥, q]` is closed under meets.
pub fn quasi_atoms(l: &FiniteLattice) -> Vec<usize> {
    let bot = l.bottom();
    (0..l.len())
        .filter(|&q| q != bot)
        .filter(|&q| {
            let below: Vec<usize> = (0..l.len()).filter(|&x| x != bot && l.leq(x, q)).collect();
            below
                .iter()
                .all(|&x| below.iter().all(|&y| l.meet(x, y) != bot))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatteningResult {
    pub quasi_atoms: Vec<usize>,
    /// Quasi-atoms grouped by the least element of `(⊥, q]`.
    pub classes: Vec<Vec<usize>>,
    pub socle: usize,
    /// Elements of `[⊥, socle]`.
    pub flat_elements: Vec<usize>,
    pub map: Vec<usize>,
}

pub fn flatten(l: &FiniteLattice) -> Result<FlatteningResult> {
    l.require_modular()?;
    let bot = l.bottom();
    let qa = quasi_atoms(l);
    let mut classes: Vec<(usize, Vec<usize>)> = Vec::new();
    for &q in &qa {
        let least = l.meet_all((0..l.len()).filter(|&x| x != bot && l.leq(x, q)));
        match classes.iter_mut().find(|(m, _)| *m == least) {
            Some((_, c)) => c.push(q),
            None => classes.push((least, vec![q])),
        }
    }
    let socle = l.join_all(l.atoms());
    let map = (0..l.len()).map(|x| l.meet(x, socle)).collect();
    let flat_elements = (0..l.len()).filter(|&x| l.leq(x, socle)).collect();
    Ok(FlatteningResult {
        quasi_atoms: qa,
        classes: classes.into_iter().map(|(_, c)| c).collect(),
        socle,
        flat_elements,
        map,
    })
}

/// The flattening properties ff1–ff6, the atom description of the map, the
/// class bijection and the quasi-atom independence rank.
pub fn verify_flattening(l: &FiniteLattice, fl: &FlatteningResult) -> Result<Report> {
    let n = l.len();
    let bot = l.bottom();
    let rk = max_independent_over_bottom(l).len();
    let atoms = l.atoms();
    let (flat, _) = l.interval(bot, fl.socle);
    let f = |x: usize| fl.map[x];
    let mut r = Report::new("flatten", 0);

    let atomistic = (0..flat.len())
        .all(|x| flat.join_all(flat.atoms().into_iter().filter(|&a| flat.leq(a, x))) == x);
    r.check(
        "ff1_semisimple_of_rank",
        atomistic && flat.height() == rk,
        serde_json::json!({"length": flat.height(), "rk_bot": rk}),
    );
    let image: std::collections::BTreeSet<usize> = (0..n).map(f).collect();
    r.check(
        "ff2_surjective",
        image.iter().copied().eq(fl.flat_elements.iter().copied()),
        serde_json::Value::Null,
    );
    let pairs = || (0..n).flat_map(|x| (0..n).map(move |y| (x, y)));
    r.check(
        "ff3_monotone",
        pairs().all(|(x, y)| !l.leq(x, y) || l.leq(f(x), f(y))),
        serde_json::Value::Null,
    );
    r.check(
        "ff4_meets",
        pairs().all(|(x, y)| f(l.meet(x, y)) == l.meet(f(x), f(y))),
        serde_json::Value::Null,
    );
    r.check(
        "ff5_joins",
        pairs().all(|(x, y)| l.leq(l.join(f(x), f(y)), f(l.join(x, y)))),
        serde_json::Value::Null,
    );
    r.check(
        "ff6_nonzero",
        (0..n).all(|x| (x != bot) == (f(x) != bot)),
        serde_json::Value::Null,
    );
    let by_atoms =
        (0..n).all(|x| l.join_all(atoms.iter().copied().filter(|&a| l.leq(a, x))) == f(x));
    r.check(
        "map_is_join_of_atoms_below",
        by_atoms,
        serde_json::Value::Null,
    );
    r.check(
        "classes_match_atoms",
        fl.classes.len() == atoms.len(),
        serde_json::json!({"classes": fl.classes.len(), "atoms": atoms.len()}),
    );
    let qa_rank = independent_quasi_atoms(l, &fl.quasi_atoms);
    r.check(
        "quasi_atom_rank",
        qa_rank == rk,
        serde_json::json!({"quasi_atom_rank": qa_rank, "rk_bot": rk}),
    );
    Ok(r)
}

fn independent_quasi_atoms(l: &FiniteLattice, qa: &[usize]) -> usize {
    fn go(l: &FiniteLattice, qa: &[usize], acc: usize, size: usize, next: usize, best: &mut usize) {
        *best = (*best).max(size);
        for i in next..qa.len() {
            if l.meet(acc, qa[i]) == l.bottom() {
                go(l, qa, l.join(acc, qa[i]), size + 1, i + 1, best);
            }
        }
    }
    let mut best = 0;
    go(l, qa, l.bottom(), 0, 0, &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_flattens_to_its_atom() {
        let c = FiniteLattice::from_covers(3, &[[0, 1], [1, 2]]).unwrap();
        let fl = flatten(&c).unwrap();
        assert_eq!(fl.quasi_atoms, vec![1, 2]);
        assert_eq!(fl.classes, vec![vec![1, 2]]);
        assert_eq!(fl.socle, 1);
        assert_eq!(fl.map, vec![0, 1, 1]);
        assert!(verify_flattening(&c, &fl).unwrap().passed());
    }

    #[test]
    fn diamond_is_already_flat() {
        let m3 = FiniteLattice::from_covers(5, &[[0, 1], [0, 2], [0, 3], [1, 4], [2, 4], [3, 4]])
            .unwrap();
        let fl = flatten(&m3).unwrap();
        assert_eq!(fl.socle, 4);
        assert_eq!(fl.map, vec![0, 1, 2, 3, 4]);
        assert!(verify_flattening(&m3, &fl).unwrap().passed());
    }
}
