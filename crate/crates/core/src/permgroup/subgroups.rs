//! Subgroups up to conjugacy by cyclic extension.
//!
//! Starting from the trivial group, every class representative `H` is
//! extended by one element `c` from each double coset `HcH` outside `H`. Each
//! subgroup is the end of a chain `<c1> <= <c1,c2> <= ...`, and conjugating
//! such a chain moves its first term onto a stored representative, so the
//! fixed point contains every subgroup up to conjugacy. Subgroups are stored as
//! bitsets over the element indices of the enumerated group; whenever a new
//! class is found, its whole conjugacy orbit is recorded so later duplicates
//! are detected by a set lookup.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::{Enumeration, PermGroup};

/// Default cap on the total number of subgroups (all conjugates counted).
pub const DEFAULT_SUBGROUP_COUNT_BOUND: u64 = 150_000;

type Bits = Vec<u64>;

fn bits_new(n: usize) -> Bits {
    vec![0; n.div_ceil(64)]
}

#[inline]
fn bit_get(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

#[inline]
fn bit_set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn bit_iter(b: &Bits) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(w, &word)| {
        (0..64).filter(move |k| word >> k & 1 == 1).map(move |k| w * 64 + k)
    })
}

/// One conjugacy class of subgroups.
#[derive(Debug, Clone)]
pub struct SubgroupClass {
    pub group: PermGroup,
    /// Number of subgroups in the class, i.e. `[G : N_G(H)]`.
    pub conjugates: u64,
}

impl SubgroupClass {
    pub fn order(&self) -> u64 {
        self.group.order()
    }
}

#[derive(Debug)]
pub struct SubgroupLattice {
    enumeration: Arc<Enumeration>,
    classes: Vec<SubgroupClass>,
}

impl SubgroupLattice {
    /// Classes sorted by increasing order (trivial group first, `G` last).
    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn enumeration(&self) -> &Arc<Enumeration> {
        &self.enumeration
    }

    /// Total number of subgroups, all conjugates counted.
    pub fn total_subgroups(&self) -> u64 {
        self.classes.iter().map(|c| c.conjugates).sum()
    }
}

pub fn all_subgroups_up_to_conjugacy(group: &PermGroup, max_order: u64) -> Result<SubgroupLattice> {
    all_subgroups_with_limits(group, max_order, DEFAULT_SUBGROUP_COUNT_BOUND)
}

pub fn all_subgroups_with_limits(
    group: &PermGroup,
    max_order: u64,
    max_subgroups: u64,
) -> Result<SubgroupLattice> {
    if group.order() > max_order {
        return Err(Error::capacity("group order", group.order(), max_order));
    }
    let enumeration = Arc::new(Enumeration::new(group, max_order)?);
    let n = enumeration.len();
    let gen_idx: Vec<usize> = group
        .generators()
        .iter()
        .map(|g| enumeration.index_of(g).unwrap())
        .collect();
    let inverse: Vec<usize> = enumeration
        .elements()
        .iter()
        .map(|g| enumeration.index_of(&g.inverse()).unwrap())
        .collect();

    struct Rec {
        gens: Vec<usize>,
        order: u64,
        conjugates: u64,
    }

    let conj_bits = |bits: &Bits, s: usize| -> Bits {
        let mut out = bits_new(n);
        for x in bit_iter(bits) {
            let y = enumeration.mul(enumeration.mul(inverse[s], x), s);
            bit_set(&mut out, y);
        }
        out
    };

    let mut seen: HashSet<Bits> = HashSet::new();
    let mut reps: Vec<Rec> = Vec::new();

    let record = |bits: Bits, gens: Vec<usize>, order: u64, seen: &mut HashSet<Bits>, reps: &mut Vec<Rec>| -> Result<()> {
        seen.insert(bits.clone());
        let mut orbit = vec![bits];
        let mut k = 0;
        while k < orbit.len() {
            for &s in &gen_idx {
                let c = conj_bits(&orbit[k], s);
                if seen.insert(c.clone()) {
                    orbit.push(c);
                }
            }
            k += 1;
        }
        if seen.len() as u64 > max_subgroups {
            return Err(Error::capacity("subgroup count", seen.len() as u64, max_subgroups));
        }
        reps.push(Rec {
            gens,
            order,
            conjugates: orbit.len() as u64,
        });
        Ok(())
    };

    let id = enumeration.identity_index();
    let mut trivial = bits_new(n);
    bit_set(&mut trivial, id);
    record(trivial, vec![], 1, &mut seen, &mut reps)?;
    if n > 1 {
        let mut all = bits_new(n);
        for i in 0..n {
            bit_set(&mut all, i);
        }
        record(all, gen_idx.clone(), n as u64, &mut seen, &mut reps)?;
    }

    let mut next = 0;
    while next < reps.len() {
        if reps[next].order == n as u64 {
            next += 1;
            continue;
        }
        let h_gens = reps[next].gens.clone();
        let mut covered = bits_new(n);
        let h_perms: Vec<Permutation> = h_gens.iter().map(|&i| enumeration.element(i).clone()).collect();
        for g in PermGroup::new(group.degree(), h_perms)?.elements(u64::MAX)? {
            bit_set(&mut covered, enumeration.index_of(&g).unwrap());
        }
        for c in 0..n {
            if bit_get(&covered, c) {
                continue;
            }
            // mark the double coset HcH
            bit_set(&mut covered, c);
            let mut stack = vec![c];
            while let Some(x) = stack.pop() {
                for &h in &h_gens {
                    for y in [enumeration.mul(h, x), enumeration.mul(x, h)] {
                        if !bit_get(&covered, y) {
                            bit_set(&mut covered, y);
                            stack.push(y);
                        }
                    }
                }
            }

            let mut k_gens = h_gens.clone();
            k_gens.push(c);
            let perms: Vec<Permutation> = k_gens.iter().map(|&i| enumeration.element(i).clone()).collect();
            let k_group = PermGroup::new(group.degree(), perms)?;
            if k_group.order() == n as u64 {
                continue;
            }
            let mut k_bits = bits_new(n);
            for g in k_group.elements(u64::MAX)? {
                bit_set(&mut k_bits, enumeration.index_of(&g).unwrap());
            }
            if seen.contains(&k_bits) {
                continue;
            }
            record(k_bits, k_gens, k_group.order(), &mut seen, &mut reps)?;
        }
        next += 1;
    }

    let mut order_idx: Vec<usize> = (0..reps.len()).collect();
    order_idx.sort_by_key(|&i| (reps[i].order, i));
    let classes = order_idx
        .into_iter()
        .map(|i| {
            let r = &reps[i];
            let gens = r.gens.iter().map(|&g| enumeration.element(g).clone()).collect();
            Ok(SubgroupClass {
                group: PermGroup::new(group.degree(), gens)?,
                conjugates: r.conjugates,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SubgroupLattice {
        enumeration,
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::{alternating_group, cyclic_group, group_from_cycles, symmetric_group};
    use std::collections::BTreeSet;

    /// Every subgroup, by closing the set of subgroups under "join with one
    /// more element", working on element sets only.
    fn brute_force_subgroups(g: &PermGroup) -> HashSet<BTreeSet<Permutation>> {
        let elts = g.elements(1000).unwrap();
        let close = |start: &BTreeSet<Permutation>| {
            let mut set = start.clone();
            loop {
                let snapshot: Vec<_> = set.iter().cloned().collect();
                let before = set.len();
                for a in &snapshot {
                    for b in &snapshot {
                        set.insert(a * b);
                    }
                }
                if set.len() == before {
                    return set;
                }
            }
        };
        let trivial: BTreeSet<Permutation> = [g.identity()].into_iter().collect();
        let mut all: HashSet<BTreeSet<Permutation>> = HashSet::new();
        all.insert(trivial.clone());
        let mut frontier = vec![trivial];
        while let Some(h) = frontier.pop() {
            for x in &elts {
                if h.contains(x) {
                    continue;
                }
                let mut s = h.clone();
                s.insert(x.clone());
                let k = close(&s);
                if all.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        all
    }

    #[test]
    fn s3_has_four_classes() {
        let lat = all_subgroups_up_to_conjugacy(&symmetric_group(3), 30_000).unwrap();
        let orders: Vec<u64> = lat.classes().iter().map(|c| c.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        assert_eq!(lat.total_subgroups(), 6);
    }

    #[test]
    fn a5_has_nine_classes() {
        let lat = all_subgroups_up_to_conjugacy(&alternating_group(5), 30_000).unwrap();
        let orders: Vec<u64> = lat.classes().iter().map(|c| c.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 5, 6, 10, 12, 60]);
        assert_eq!(lat.total_subgroups(), 59);
    }

    #[test]
    fn cyclic_four() {
        let lat = all_subgroups_up_to_conjugacy(&cyclic_group(4), 30_000).unwrap();
        let orders: Vec<u64> = lat.classes().iter().map(|c| c.order()).collect();
        assert_eq!(orders, vec![1, 2, 4]);
    }

    #[test]
    fn trivial_group_lattice() {
        let lat = all_subgroups_up_to_conjugacy(&PermGroup::trivial(2), 30_000).unwrap();
        assert_eq!(lat.len(), 1);
    }

    #[test]
    fn class_counts_match_brute_force() {
        let groups = vec![
            symmetric_group(4),
            alternating_group(4),
            group_from_cycles(8, &["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"]).unwrap(), // Q8
            group_from_cycles(8, &["(1,4,7)(2,8,5)", "(1,6,2,3)(4,7,8,5)"]).unwrap(),     // SL(2,3)
            group_from_cycles(6, &["(1,2)", "(3,4)", "(5,6)", "(1,3,5)(2,4,6)"]).unwrap(), // C2 wr C3, order 24
            group_from_cycles(7, &["(1,2,3,4)", "(5,6,7)", "(1,2)"]).unwrap(),             // S4 x C3, order 72 > 48
        ];
        for g in groups.into_iter().filter(|g| g.order() <= 48) {
            let lat = all_subgroups_up_to_conjugacy(&g, 30_000).unwrap();
            let brute = brute_force_subgroups(&g);
            assert_eq!(lat.total_subgroups(), brute.len() as u64, "order {}", g.order());
            for c in lat.classes() {
                let bits: BTreeSet<Permutation> = c.group.elements(1000).unwrap().into_iter().collect();
                assert!(brute.contains(&bits));
            }
        }
    }

    #[test]
    fn capacity_errors() {
        let s8 = symmetric_group(8);
        assert!(matches!(
            all_subgroups_up_to_conjugacy(&s8, 30_000),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(
            all_subgroups_with_limits(&symmetric_group(4), 100, 10),
            Err(Error::Capacity { .. })
        ));
    }
}
