use super::*;
use crate::chartab::character_table;
use crate::lietype::{group_order, LieFamily};
use crate::permgroup::to_generator_file;

#[test]
fn builtin_groups_have_their_orders() {
    let cat = Catalog::builtin();
    assert!(cat.ids().len() >= 19);
    for e in cat.entries() {
        let g = cat.load(&e.id).unwrap();
        assert_eq!(g.order(), e.expected_order, "{}", e.id);
    }
    assert!(matches!(cat.load("M24"), Err(Error::NotFound(_))));
    assert_eq!(load("a5").unwrap().order(), 60);
}

#[test]
fn roundtrip_through_generator_files() {
    let cat = Catalog::builtin();
    for e in cat.entries() {
        let g = cat.load(&e.id).unwrap();
        let h = parse_generator_file(&to_generator_file(&g, &e.notes)).unwrap();
        assert!(h.same_group(&g), "{}", e.id);
    }
}

#[test]
fn lie_type_names_match_orders() {
    let cat = Catalog::builtin();
    let mut checked = 0;
    for e in cat.entries() {
        for t in &e.lie_type {
            let family = LieFamily::parse(&t.family, Some(t.n)).unwrap();
            let o = group_order(family, t.q).unwrap();
            let want = if t.simply_connected { o.simply_connected } else { o.simple };
            assert_eq!(want, e.expected_order.into(), "{} as {}", e.id, family.name_at(t.q));
            checked += 1;
        }
    }
    assert!(checked >= 10);
}

#[test]
fn hand_entered_generators_are_the_intended_groups() {
    let q8 = load("Q8").unwrap();
    let involutions = q8.elements(8).unwrap().iter().filter(|g| g.order() == 2).count();
    assert_eq!(involutions, 1);
    assert!(!q8.is_abelian());

    let a6 = load("A6").unwrap();
    assert_eq!(a6.degree(), 6);
    assert!(a6.is_subgroup_of(&crate::permgroup::alternating_group(6)));
    let classes = conjugacy_classes(&a6, 360).unwrap();
    assert!(classes.is_nonabelian_simple().unwrap());
}

#[test]
fn directory_catalog_matches_builtin() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let cat = Catalog::from_dir(dir).unwrap();
    assert_eq!(cat.ids(), Catalog::builtin().ids());
    assert_eq!(cat.load("PSL27").unwrap().order(), 168);
    assert!(matches!(Catalog::from_dir("/nonexistent/catalog"), Err(Error::NotFound(_))));
}

#[test]
fn wrong_manifest_order_is_an_integrity_error() {
    let dir = std::env::temp_dir().join(format!("qsi-catalog-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("S3.gens"), "degree 3\n(1,2,3)\n(1,2)\n").unwrap();
    std::fs::write(
        dir.join("manifest.json"),
        r#"{"groups":[{"id":"S3","file":"S3.gens","expected_order":12}]}"#,
    )
    .unwrap();
    let cat = Catalog::from_dir(&dir).unwrap();
    assert!(matches!(cat.load("S3"), Err(Error::Integrity(_))));
    std::fs::write(dir.join("manifest.json"), "{not json").unwrap();
    assert!(matches!(Catalog::from_dir(&dir), Err(Error::MalformedInput(_))));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn linear_character_data_are_checked() {
    let cat = Catalog::builtin();
    let a5 = cat.load_subgroup("A5_in_A5").unwrap();
    assert!(a5.character.is_none());
    let bad = LinearCharacterDatum { order: 2, exponents: vec![1, 0] };
    assert!(matches!(linear_character(&a5.classes, &bad), Err(Error::Integrity(_))));
    let short = LinearCharacterDatum { order: 2, exponents: vec![1] };
    assert!(matches!(linear_character(&a5.classes, &short), Err(Error::MalformedInput(_))));
    let trivial = LinearCharacterDatum { order: 3, exponents: vec![0, 3] };
    assert!(linear_character(&a5.classes, &trivial).unwrap().is_trivial());

    let a4 = cat.load_subgroup("A4_in_A5").unwrap();
    assert_eq!(a4.group.order(), 12);
    assert!(a4.group.is_subgroup_of(&a4.parent));
}

#[test]
fn stored_witness_induces_to_twice_steinberg() {
    let sub = Catalog::builtin().load_subgroup("PSU42_U160").unwrap();
    let phi = sub.character.expect("witness has a character");
    assert!(phi.is_linear());
    assert_eq!(phi.kernel_order(), 80);
    let table = character_table(&sub.parent).unwrap();
    let st = table.irreducibles().iter().find(|c| c.degree() == 81).unwrap();
    assert_eq!(phi.induce_to(table.classes()).unwrap(), st.scale(2));
}

/// Numbers of groups of order 1..=24 up to isomorphism.
const GROUP_COUNTS: [usize; 24] = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15];

#[test]
fn small_group_counts() {
    let groups = small_groups(24).unwrap();
    for n in 1..=24 {
        let of_order: Vec<&SmallGroup> = groups.iter().filter(|g| g.order == n).collect();
        assert_eq!(of_order.len(), GROUP_COUNTS[n - 1], "order {n}");
        for g in of_order {
            assert_eq!(g.group.order(), n as u64, "{}", g.id());
        }
    }
    // abelian groups: products of partition counts over the prime powers
    let abelian = |n: usize| groups.iter().filter(|g| g.order == n && g.group.is_abelian()).count();
    assert_eq!(abelian(16), 5);
    assert_eq!(abelian(24), 3);
    assert_eq!(abelian(8), 3);
}
