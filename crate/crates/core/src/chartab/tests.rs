use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::perm::Permutation;
use crate::permgroup::{
    all_subgroups_up_to_conjugacy, alternating_group, cyclic_group, group_from_cycles, symmetric_group,
};

fn table(g: &PermGroup) -> CharacterTable {
    character_table(g).unwrap()
}

fn classes_of(g: &PermGroup) -> Arc<ConjugacyClasses> {
    Arc::new(conjugacy_classes(g, 1_000_000).unwrap())
}

fn sorted_degrees(t: &CharacterTable) -> Vec<i128> {
    let mut d = t.degrees();
    d.sort();
    d
}

/// Inner product summed over every element rather than classwise.
fn elementwise_inner(a: &Character, b: &Character) -> Cyclotomic {
    let elts = a.group().elements(1_000_000).unwrap();
    let n = elts.len() as i128;
    let sum: Cyclotomic = elts
        .iter()
        .map(|g| a.value_at(g).unwrap() * &b.value_at(g).unwrap().conj())
        .sum();
    sum.scale(Rational::new(1, n))
}

fn psl27() -> PermGroup {
    group_from_cycles(8, &["(1,2,3,4,5,6,7)", "(1,8)(2,7)(3,4)(5,6)"]).unwrap()
}

#[test]
fn a5_degrees_and_elementwise_orthogonality() {
    let t = table(&alternating_group(5));
    assert_eq!(sorted_degrees(&t), vec![1, 3, 3, 4, 5]);
    assert!(t.irreducible(0).is_trivial());
    for (i, a) in t.irreducibles().iter().enumerate() {
        for (j, b) in t.irreducibles().iter().enumerate() {
            assert_eq!(elementwise_inner(a, b), Cyclotomic::from_integer((i == j) as i64));
        }
    }
    // the two degree-3 characters take the values (1 ± √5)/2 on 5-elements
    let threes: Vec<&Character> = t.irreducibles().iter().filter(|c| c.degree() == 3).collect();
    assert_eq!(threes[0].values().iter().filter(|v| v.conductor() == 5).count(), 2);
    // π₅ − 1 and π₆ − 1 (via A₅ ≅ PSL(2,5) on 6 points) are irreducible
    let cc = t.classes().clone();
    let chi4 = Character::permutation(&cc).sub(&Character::trivial(&cc)).unwrap();
    assert!(t.position(&chi4).is_some());
    let a5_on_6 = group_from_cycles(6, &["(1,2,3,4,5)", "(1,6)(2,5)"]).unwrap();
    let t6 = table(&a5_on_6);
    let cc6 = t6.classes().clone();
    let chi5 = Character::permutation(&cc6).sub(&Character::trivial(&cc6)).unwrap();
    assert_eq!(chi5.degree(), 5);
    assert!(t6.position(&chi5).is_some());
}

#[test]
fn psl27_degrees() {
    let t = table(&psl27());
    assert_eq!(sorted_degrees(&t), vec![1, 3, 3, 6, 7, 8]);
    assert_eq!(t.degrees().iter().map(|d| d * d).sum::<i128>(), 168);
}

#[test]
fn m11_degrees() {
    let m11 = group_from_cycles(11, &["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"]).unwrap();
    let t = table(&m11);
    assert_eq!(sorted_degrees(&t), vec![1, 10, 10, 10, 11, 16, 16, 44, 45, 55]);
}

#[test]
fn cyclic_three() {
    let t = table(&cyclic_group(3));
    assert_eq!(t.len(), 3);
    assert!(t.irreducibles().iter().all(Character::is_linear));
    let conductors: Vec<u32> = t.irreducibles()[1..]
        .iter()
        .flat_map(|c| c.values()[1..].iter().map(Cyclotomic::conductor))
        .collect();
    assert!(conductors.iter().all(|&c| c == 3));
}

#[test]
fn trivial_group_table() {
    let t = table(&PermGroup::trivial(3));
    assert_eq!(t.degrees(), vec![1]);
}

#[test]
fn inner_products_with_special_characters() {
    let a5 = alternating_group(5);
    let t = table(&a5);
    let cc = t.classes().clone();
    let reg = Character::regular(&cc);
    for chi in t.irreducibles() {
        assert_eq!(chi.multiplicity(chi).unwrap(), 1);
        assert_eq!(reg.multiplicity(chi).unwrap(), chi.degree());
    }
    // Burnside: ⟨π, 1⟩ is the number of orbits
    let pi = Character::permutation(&cc);
    let orbits = {
        let mut seen = [false; 5];
        let mut count = 0;
        for p in 0..5 {
            if !seen[p] {
                count += 1;
                for q in a5.orbit(p) {
                    seen[q] = true;
                }
            }
        }
        count
    };
    assert_eq!(pi.multiplicity(&Character::trivial(&cc)).unwrap(), orbits);
    assert_eq!(orbits, 1);
}

#[test]
fn mismatched_groups_rejected() {
    let a = Character::trivial(&classes_of(&alternating_group(5)));
    let b = Character::trivial(&classes_of(&symmetric_group(4)));
    assert!(matches!(a.inner_product(&b), Err(Error::Domain(_))));
}

#[test]
fn kernels() {
    let s4 = symmetric_group(4);
    let t = table(&s4);
    let triv = t.irreducible(0);
    assert_eq!(triv.kernel().unwrap().order(), 24);
    let sign = t
        .irreducibles()
        .iter()
        .find(|c| c.is_linear() && !c.is_trivial())
        .unwrap();
    // direct evaluation over all 24 elements
    let direct = s4
        .elements(100)
        .unwrap()
        .iter()
        .filter(|g| sign.value_at(g) == Some(&Cyclotomic::one()))
        .count();
    assert_eq!(direct, 12);
    let ker = sign.kernel().unwrap();
    assert_eq!(ker.order(), 12);
    assert!(ker.is_normal_in(&s4));
    let faithful = t.irreducibles().iter().find(|c| c.degree() == 3).unwrap();
    assert_eq!(faithful.kernel().unwrap().order(), 1);
    // the degree-2 character has kernel V₄
    let two = t.irreducibles().iter().find(|c| c.degree() == 2).unwrap();
    assert_eq!(two.kernel().unwrap().order(), 4);
}

/// Fixed points of `g` on the right cosets `Ux`, counted pointwise.
fn coset_fixed_points(g: &Permutation, u: &PermGroup, elts: &[Permutation]) -> i64 {
    let fixed = elts
        .iter()
        .filter(|x| u.contains(&(*x * g * x.inverse())))
        .count() as u64;
    (fixed / u.order()) as i64
}

#[test]
fn induction_from_trivial_and_coset_actions() {
    let g = symmetric_group(4);
    let gc = classes_of(&g);
    let elts = g.elements(100).unwrap();
    let one = classes_of(&PermGroup::trivial(4));
    let reg = Character::trivial(&one).induce_to(&gc).unwrap();
    assert_eq!(reg, Character::regular(&gc));
    let lat = all_subgroups_up_to_conjugacy(&g, 30_000).unwrap();
    for class in lat.classes() {
        let uc = classes_of(&class.group);
        let induced = Character::trivial(&uc).induce_to(&gc).unwrap();
        assert_eq!(induced.degree(), (24 / class.order()) as i128);
        for (k, rep) in gc.representatives().iter().enumerate() {
            let expect = coset_fixed_points(rep, &class.group, &elts);
            assert_eq!(*induced.value(k), Cyclotomic::from_integer(expect));
        }
        assert_eq!(induced.multiplicity(&Character::trivial(&gc)).unwrap(), 1);
    }
}

#[test]
fn restriction_basics() {
    let a7 = alternating_group(7);
    let t7 = table(&a7);
    let c7 = t7.classes().clone();
    let chi7 = Character::permutation(&c7).sub(&Character::trivial(&c7)).unwrap();
    assert!(chi7.is_irreducible());
    // A₅ on the first five points
    let a5 = group_from_cycles(7, &["(1,2,3,4,5)", "(1,2,3)"]).unwrap();
    let c5 = classes_of(&a5);
    let restricted = chi7.restrict_to(&c5).unwrap();
    // fixed points on the first five points only
    let one = Character::trivial(&c5);
    let chi5 = Character::permutation(&c5).sub(&one.scale(3)).unwrap();
    assert!(chi5.is_irreducible());
    assert_eq!(restricted, chi5.add(&one.scale(2)).unwrap());
    assert_eq!(chi7.restrict_to(&c7).unwrap(), chi7);
    let reg = Character::regular(&c7).restrict_to(&c5).unwrap();
    assert_eq!(reg, Character::regular(&c5).scale(42));
}

#[test]
fn frobenius_reciprocity_and_transitivity() {
    for g in [symmetric_group(4), alternating_group(5)] {
        let t = table(&g);
        let gc = t.classes().clone();
        let lat = all_subgroups_up_to_conjugacy(&g, 30_000).unwrap();
        for class in lat.classes() {
            let tu = CharacterTable::from_classes(classes_of(&class.group)).unwrap();
            for phi in tu.irreducibles() {
                let induced = phi.induce_to(&gc).unwrap();
                for chi in t.irreducibles() {
                    let left = induced.multiplicity(chi).unwrap();
                    let right = phi.multiplicity(&chi.restrict_to(tu.classes()).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }
    // C₂ ≤ V₄ ≤ D₈ ≤ S₄
    let s4 = symmetric_group(4);
    let d8 = group_from_cycles(4, &["(1,2,3,4)", "(1,3)"]).unwrap();
    let v4 = group_from_cycles(4, &["(1,2)(3,4)", "(1,3)(2,4)"]).unwrap();
    let c2 = group_from_cycles(4, &["(1,2)(3,4)"]).unwrap();
    let (gc, dc, vc, cc) = (classes_of(&s4), classes_of(&d8), classes_of(&v4), classes_of(&c2));
    for phi in CharacterTable::from_classes(cc.clone()).unwrap().irreducibles() {
        let direct = phi.induce_to(&gc).unwrap();
        let staged = phi.induce_to(&vc).unwrap().induce_to(&dc).unwrap().induce_to(&gc).unwrap();
        assert_eq!(direct, staged);
    }
}

#[test]
fn clifford_decomposition_for_invariant_characters() {
    let cases = [
        (symmetric_group(4), alternating_group(4)),
        (symmetric_group(4), group_from_cycles(4, &["(1,2)(3,4)", "(1,3)(2,4)"]).unwrap()),
        (alternating_group(4), group_from_cycles(4, &["(1,2)(3,4)", "(1,3)(2,4)"]).unwrap()),
        (psl27(), PermGroup::trivial(8)),
    ];
    for (g, n) in cases {
        assert!(n.is_normal_in(&g));
        let tg = table(&g);
        let tn = CharacterTable::from_classes(classes_of(&n)).unwrap();
        let mut checked = 0;
        for chi in tn.irreducibles().iter().filter(|c| c.is_invariant_in(&g)) {
            for rho in tg.irreducibles() {
                let res = rho.restrict_to(tn.classes()).unwrap();
                let k = res.multiplicity(chi).unwrap();
                if k != 0 {
                    assert_eq!(res, chi.scale(k as i64));
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }
}

#[test]
fn json_export() {
    let t = table(&symmetric_group(3));
    let v = t.to_json();
    assert_eq!(v["classes"].as_array().unwrap().len(), 3);
    assert_eq!(v["classes"][0]["representative"], "()");
    assert_eq!(v["irreducibles"][0]["values"][1]["conductor"], 1);
    assert!(t.render().contains("X.3"));
}

fn arb_group() -> impl Strategy<Value = PermGroup> {
    let perm = Just((0u32..6).collect::<Vec<u32>>()).prop_shuffle();
    prop::collection::vec(perm, 1..3).prop_map(|gens| {
        let gens = gens
            .into_iter()
            .map(|im| Permutation::from_images(im).unwrap())
            .collect();
        PermGroup::new(6, gens).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn random_tables_are_consistent(g in arb_group()) {
        let t = table(&g);
        prop_assert_eq!(t.len(), t.classes().len());
        let n = g.order() as i128;
        prop_assert_eq!(t.degrees().iter().map(|d| d * d).sum::<i128>(), n);
        prop_assert!(t.degrees().iter().all(|d| n % d == 0));
        let reg = Character::regular(t.classes());
        let rebuilt = t
            .irreducibles()
            .iter()
            .fold(reg.scale(0), |acc, chi| acc.add(&chi.scale(chi.degree() as i64)).unwrap());
        prop_assert_eq!(rebuilt, reg);
    }
}
