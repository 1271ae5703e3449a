use std::collections::HashSet;
use std::sync::Arc;

use super::*;
use crate::chartab::character_table;
use crate::perm::Permutation;
use crate::permgroup::{
    all_subgroups_up_to_conjugacy, alternating_group, conjugacy_classes, cyclic_group, group_from_cycles,
    symmetric_group,
};

fn psl27() -> PermGroup {
    group_from_cycles(8, &["(1,2,3,4,5,6,7)", "(1,8)(2,7)(3,4)(5,6)"]).unwrap()
}

fn sl23() -> PermGroup {
    group_from_cycles(8, &["(1,4,7)(2,8,5)", "(1,6,2,3)(4,7,8,5)"]).unwrap()
}

fn degree_index(ctx: &QsiContext, degree: i128) -> Vec<usize> {
    (0..ctx.table().len())
        .filter(|&i| ctx.table().irreducible(i).degree() == degree)
        .collect()
}

fn check_witnesses(verdicts: &GroupVerdict) {
    for v in &verdicts.verdicts {
        if let Some(w) = &v.witness {
            verify_witness(&v.character, w, v.mode).unwrap();
        }
    }
}

#[test]
fn a5_is_not_qsi() {
    let ctx = QsiContext::new(&alternating_group(5), SearchOptions::default()).unwrap();
    let gv = ctx.decide_all(Mode::Qsi).unwrap();
    assert_eq!(gv.conclusion(), Some(false));
    assert!(!gv.solvable);
    let four = degree_index(&ctx, 4)[0];
    let v = &gv.verdicts[four];
    assert_eq!(v.status, Status::RefutedByPrefilter);
    assert_eq!(v.pruning_log.len(), 9);
    let classes: HashSet<usize> = v.pruning_log.iter().map(|e| e.subgroup_class).collect();
    assert_eq!(classes.len(), 9);
    // the whole group is rejected as simple, every proper subgroup by class fractions
    assert_eq!(v.pruning_log[0].order, 60);
    assert_eq!(v.pruning_log[0].outcome, ClassOutcome::NonAbelianSimple);
    assert!(v.pruning_log[1..]
        .iter()
        .all(|e| matches!(e.outcome, ClassOutcome::ClassFraction { .. })));
    check_witnesses(&gv);
}

#[test]
fn psl27_steinberg_characters_are_monomial() {
    let ctx = QsiContext::new(&psl27(), SearchOptions::default()).unwrap();
    for degree in [7, 8] {
        let i = degree_index(&ctx, degree)[0];
        let v = ctx.decide(i, Mode::Monomial).unwrap();
        assert_eq!(v.status, Status::MonomialWithWitness);
        let w = v.witness.as_ref().unwrap();
        assert_eq!(w.multiplier, 1);
        assert_eq!(w.subgroup.order() as i128 * degree, 168);
        verify_witness(&v.character, w, Mode::Monomial).unwrap();
    }
    let six = degree_index(&ctx, 6)[0];
    let v = ctx.decide(six, Mode::Qsi).unwrap();
    assert_eq!(v.status.decision(), Some(false));
    assert_eq!(v.pruning_log.len(), ctx.lattice().unwrap().len());
    let v = ctx.decide(six, Mode::Monomial).unwrap();
    assert_eq!(v.status.decision(), Some(false));
}

#[test]
fn solvable_groups_have_trivial_witnesses() {
    for g in [symmetric_group(4), sl23(), cyclic_group(6)] {
        let gv = decide_qsi_group(&g, SearchOptions::default()).unwrap();
        assert_eq!(gv.conclusion(), Some(true));
        for v in &gv.verdicts {
            let w = v.witness.as_ref().unwrap();
            assert_eq!(w.subgroup.order(), g.order());
            assert_eq!(w.multiplier, 1);
        }
        check_witnesses(&gv);
    }
}

#[test]
fn monomial_groups() {
    let s4 = decide_monomial_group(&symmetric_group(4), SearchOptions::default()).unwrap();
    assert_eq!(s4.conclusion(), Some(true));
    check_witnesses(&s4);
    let abelian = decide_monomial_group(&cyclic_group(5), SearchOptions::default()).unwrap();
    assert_eq!(abelian.conclusion(), Some(true));
    // SL(2,3) is solvable but its degree-2 characters are not monomial
    let sl = decide_monomial_group(&sl23(), SearchOptions::default()).unwrap();
    assert_eq!(sl.conclusion(), Some(false));
    for v in &sl.verdicts {
        assert_eq!(v.status.decision(), Some(v.character.degree() != 2));
    }
}

/// Monomiality of `S₄` by brute force: every subgroup as `<a, b>`, induction
/// summed over elements.
#[test]
fn s4_monomial_brute_force() {
    let g = symmetric_group(4);
    let gc = Arc::new(conjugacy_classes(&g, 1000).unwrap());
    let table = CharacterTable::from_classes(gc.clone()).unwrap();
    let elts = g.elements(1000).unwrap();
    let mut subgroups: Vec<PermGroup> = Vec::new();
    let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
    for a in &elts {
        for b in &elts {
            let u = PermGroup::new(4, vec![a.clone(), b.clone()]).unwrap();
            let mut key = u.elements(1000).unwrap();
            key.sort();
            if seen.insert(key) {
                subgroups.push(u);
            }
        }
    }
    assert_eq!(subgroups.len(), 30);
    for chi in table.irreducibles() {
        let found = subgroups.iter().any(|u| {
            if u.order() as i128 * chi.degree() != 24 {
                return false;
            }
            let uc = Arc::new(conjugacy_classes(u, 1000).unwrap());
            let tu = CharacterTable::from_classes(uc).unwrap();
            tu.irreducibles()
                .iter()
                .filter(|l| l.is_linear())
                .any(|l| induce_pointwise(l, &gc) == chi.values())
        });
        assert!(found, "degree {}", chi.degree());
    }
}

#[test]
fn prefilters_do_not_change_verdicts() {
    for g in [symmetric_group(4), alternating_group(5), sl23(), psl27(), alternating_group(4)] {
        for mode in [Mode::Qsi, Mode::Monomial] {
            let with = QsiContext::new(&g, SearchOptions::default()).unwrap();
            let without = QsiContext::new(
                &g,
                SearchOptions {
                    prefilters: false,
                    ..SearchOptions::default()
                },
            )
            .unwrap();
            let a = with.decide_all(mode).unwrap();
            let b = without.decide_all(mode).unwrap();
            for (x, y) in a.verdicts.iter().zip(&b.verdicts) {
                assert_eq!(x.key(), y.key(), "order {} mode {mode:?}", g.order());
            }
        }
    }
}

#[test]
fn class_fraction_examples() {
    let a5 = alternating_group(5);
    let t = character_table(&a5).unwrap();
    let chi4 = t.irreducibles().iter().find(|c| c.degree() == 4).unwrap();
    assert!(class_fraction_prefilter(chi4, &a5).unwrap());
    let lattice = all_subgroups_up_to_conjugacy(&a5, 1000).unwrap();
    for class in &lattice.classes()[..lattice.len() - 1] {
        assert!(!class_fraction_prefilter(chi4, &class.group).unwrap());
    }
    // 1_G is non-zero everywhere, so the trivial subgroup misses classes:
    // indeed 1_U^G is the regular character, no multiple of 1_G
    let one = t.irreducible(0);
    assert!(!class_fraction_prefilter(one, &PermGroup::trivial(5)).unwrap());
    let trivial = PermGroup::trivial(5);
    let cc = Arc::new(conjugacy_classes(&trivial, 10).unwrap());
    let reg = induce_pointwise(&crate::chartab::Character::trivial(&cc), one.classes());
    assert_ne!(reg[1], one.value(1).clone());
    assert!(reg[1].is_zero());
    // values (1 ± √5)/2 are compared numerically; the whole group passes
    for chi in t.irreducibles() {
        assert!(class_fraction_prefilter(chi, &a5).unwrap());
    }
}


#[test]
fn simple_subgroup_examples() {
    let a5 = alternating_group(5);
    let t = character_table(&a5).unwrap();
    let chi4 = t.irreducibles().iter().find(|c| c.degree() == 4).unwrap();
    assert!(!simple_subgroup_prefilter(chi4, &a5).unwrap());
    assert!(simple_subgroup_prefilter(t.irreducible(0), &a5).unwrap());
    let a4 = group_from_cycles(5, &["(1,2,3)", "(2,3,4)"]).unwrap();
    assert!(simple_subgroup_prefilter(chi4, &a4).unwrap());
}

#[test]
fn steinberg_kernel_examples() {
    let s3 = symmetric_group(3);
    let t = character_table(&s3).unwrap();
    let faithful = t.irreducibles().iter().find(|c| c.degree() == 2).unwrap();
    for p in [2, 3, 5] {
        assert!(steinberg_kernel_constraint(faithful, p));
    }
    assert!(!steinberg_kernel_constraint(t.irreducible(0), 3));
    assert!(!steinberg_kernel_constraint(t.irreducible(0), 2));
    assert_eq!(prefilter::steinberg_primes(168, 8), vec![2]);
    assert_eq!(prefilter::steinberg_primes(168, 7), vec![7]);
    assert!(prefilter::steinberg_primes(168, 6).is_empty());
}

#[test]
fn quotient_transfer() {
    let s4 = symmetric_group(4);
    let v4 = group_from_cycles(4, &["(1,2)(3,4)", "(1,3)(2,4)"]).unwrap();
    let opts = SearchOptions::default();
    let g = decide_qsi_group(&s4, opts).unwrap();
    let q = decide_qsi_group(&s4.quotient(&v4, 1000).unwrap(), opts).unwrap();
    assert!(quotient_transfer_check(&g, &q));
    let trivial = decide_qsi_group(&s4.quotient(&s4, 1000).unwrap(), opts).unwrap();
    assert!(quotient_transfer_check(&g, &trivial));
    let a5 = alternating_group(5);
    let ga5 = decide_qsi_group(&a5, opts).unwrap();
    let qa5 = decide_qsi_group(&a5.quotient(&PermGroup::trivial(5), 1000).unwrap(), opts).unwrap();
    assert!(quotient_transfer_check(&ga5, &qa5));
}

#[test]
fn descent_to_normal_subgroup() {
    let cases = [
        (symmetric_group(4), alternating_group(4)),
        (symmetric_group(4), group_from_cycles(4, &["(1,2)(3,4)", "(1,3)(2,4)"]).unwrap()),
        // Q₈ as the derived subgroup
        (sl23(), sl23().derived_subgroup().unwrap()),
    ];
    for (g, n) in cases {
        assert!(n.is_normal_in(&g));
        let ctx = QsiContext::new(&g, SearchOptions::default()).unwrap();
        let nt = character_table(&n).unwrap();
        let mut checked = 0;
        for chi in nt.irreducibles().iter().filter(|c| c.is_invariant_in(&g)) {
            for (i, rho) in ctx.table().irreducibles().iter().enumerate() {
                if rho.restrict_to(chi.classes()).unwrap().multiplicity(chi).unwrap() == 0 {
                    continue;
                }
                // monomial witnesses give proper subgroups U
                for mode in [Mode::Qsi, Mode::Monomial] {
                    let v = ctx.decide(i, mode).unwrap();
                    if let Some(w) = &v.witness {
                        let d = descent_witness(&g, chi, rho, w).unwrap();
                        let d = d.expect("descent must produce a witness");
                        verify_witness(chi, &d, Mode::Qsi).unwrap();
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 0);
    }
}

#[test]
fn capacity_gives_undecided() {
    let a5 = alternating_group(5);
    let ctx = QsiContext::new(
        &a5,
        SearchOptions {
            max_group_order: 50,
            ..SearchOptions::default()
        },
    )
    .unwrap();
    let gv = ctx.decide_all(Mode::Qsi).unwrap();
    assert_eq!(gv.conclusion(), None);
    // the trivial character needs no lattice
    assert_eq!(gv.verdicts[0].status, Status::QsiWithWitness);
    assert!(gv.verdicts[1..].iter().all(|v| v.status == Status::UndecidedCapacity));
    assert!(matches!(gv.verdicts[1].capacity, Some(Error::Capacity { bound: 50, .. })));
}

#[test]
fn tampered_witness_fails_verification() {
    let ctx = QsiContext::new(&psl27(), SearchOptions::default()).unwrap();
    let i = degree_index(&ctx, 7)[0];
    let v = ctx.decide(i, Mode::Monomial).unwrap();
    let mut w = v.witness.clone().unwrap();
    w.multiplier = 2;
    assert!(verify_witness(&v.character, &w, Mode::Qsi).is_err());
    let other = ctx.table().irreducible(degree_index(&ctx, 8)[0]);
    assert!(verify_witness(other, v.witness.as_ref().unwrap(), Mode::Qsi).is_err());
}

#[test]
fn json_record() {
    let ctx = QsiContext::new(&alternating_group(5), SearchOptions::default()).unwrap();
    let gv = ctx.decide_all(Mode::Qsi).unwrap();
    let j = gv.to_json();
    assert_eq!(j["conclusion"], false);
    assert_eq!(j["verdicts"][0]["status"], "qsi-with-witness");
    assert_eq!(j["verdicts"][0]["witness"]["k"], 1);
}
