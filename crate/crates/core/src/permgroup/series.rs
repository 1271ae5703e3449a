use crate::error::Result;
use crate::perm::Permutation;

use super::PermGroup;

/// Smallest normal subgroup of `group` containing `elements`.
pub fn normal_closure(group: &PermGroup, elements: &[Permutation]) -> Result<PermGroup> {
    let gens: Vec<Permutation> = elements.iter().filter(|g| !g.is_identity()).cloned().collect();
    let mut closure = PermGroup::new(group.degree(), gens)?;
    let mut k = 0;
    while k < closure.generators().len() {
        let h = closure.generators()[k].clone();
        for g in group.generators() {
            let c = h.conjugate_by(g);
            if !closure.contains(&c) {
                closure = closure.with_generator(c)?;
            }
        }
        k += 1;
    }
    Ok(closure)
}

pub fn derived_subgroup(group: &PermGroup) -> Result<PermGroup> {
    let gens = group.generators();
    let mut commutators = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.commutator(b);
            if !c.is_identity() {
                commutators.push(c);
            }
        }
    }
    normal_closure(group, &commutators)
}

/// `G = G^(0) > G^(1) > ...`, ending at the first term equal to its own
/// derived subgroup.
pub fn derived_series(group: &PermGroup) -> Result<Vec<PermGroup>> {
    let mut series = vec![group.clone()];
    loop {
        let last = series.last().unwrap();
        let next = derived_subgroup(last)?;
        if next.order() == last.order() {
            return Ok(series);
        }
        series.push(next);
    }
}

impl PermGroup {
    pub fn is_solvable(&self) -> Result<bool> {
        Ok(derived_series(self)?.last().unwrap().is_trivial())
    }

    /// Last term of the derived series: the smallest normal subgroup with
    /// solvable quotient.
    pub fn solvable_residual(&self) -> Result<PermGroup> {
        Ok(derived_series(self)?.pop().unwrap())
    }

    pub fn derived_subgroup(&self) -> Result<PermGroup> {
        derived_subgroup(self)
    }

    pub fn derived_series(&self) -> Result<Vec<PermGroup>> {
        derived_series(self)
    }

    pub fn normal_closure_of(&self, elements: &[Permutation]) -> Result<PermGroup> {
        normal_closure(self, elements)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::permgroup::{alternating_group, cyclic_group, group_from_cycles, symmetric_group};

    /// Commutator closure on explicit element sets.
    fn brute_force_solvable(g: &PermGroup) -> bool {
        let mut current: Vec<Permutation> = g.elements(1000).unwrap();
        loop {
            let mut next: HashSet<Permutation> = HashSet::new();
            next.insert(g.identity());
            for a in &current {
                for b in &current {
                    next.insert(a.commutator(b));
                }
            }
            // close under products
            loop {
                let snapshot: Vec<Permutation> = next.iter().cloned().collect();
                let before = next.len();
                for a in &snapshot {
                    for b in &snapshot {
                        next.insert(a * b);
                    }
                }
                if next.len() == before {
                    break;
                }
            }
            if next.len() == 1 {
                return true;
            }
            if next.len() == current.len() {
                return false;
            }
            current = next.into_iter().collect();
        }
    }

    #[test]
    fn solvability_examples() {
        assert!(symmetric_group(4).is_solvable().unwrap());
        assert!(!alternating_group(5).is_solvable().unwrap());
        assert!(PermGroup::trivial(1).is_solvable().unwrap());
    }

    #[test]
    fn solvability_matches_brute_force() {
        let groups = vec![
            symmetric_group(3),
            symmetric_group(4),
            alternating_group(4),
            alternating_group(5),
            symmetric_group(5),
            cyclic_group(12),
            group_from_cycles(8, &["(1,4,7)(2,8,5)", "(1,6,2,3)(4,7,8,5)"]).unwrap(),
        ];
        for g in groups {
            assert!(g.order() <= 500);
            assert_eq!(g.is_solvable().unwrap(), brute_force_solvable(&g), "order {}", g.order());
        }
    }

    #[test]
    fn derived_series_strictly_decreasing() {
        let s4 = symmetric_group(4);
        let orders: Vec<u64> = s4.derived_series().unwrap().iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        let s5 = symmetric_group(5);
        let orders: Vec<u64> = s5.derived_series().unwrap().iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![120, 60]);
        assert_eq!(s5.solvable_residual().unwrap().order(), 60);
    }
}
