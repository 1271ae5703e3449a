//! Named reproductions. Each case runs a computation and records one check
//! per assertion; the case passes iff every check does.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use anyhow::Result;
use qsi_core::catalog::Catalog;
use qsi_core::chartab::character_table;
use qsi_core::permgroup::{alternating_group, conjugacy_classes, ConjugacyClasses, DEFAULT_ELEMENT_BOUND};
use qsi_core::qsi::{induce_pointwise, verify_witness, Mode, QsiContext, QsiWitness, SearchOptions, Status};
use qsi_core::{Character, PermGroup, Permutation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::commands::{Report, UsageError};

pub const CASES: &[(&str, &str)] = &[
    ("a5-not-qsi", "A5 is not QSI: the degree-4 character is refuted over every subgroup class"),
    ("psl27-steinberg-monomial", "PSL(2,7): degrees 7 and 8 monomial, degree 6 refuted"),
    ("psp43-2st-witness", "PSp4(3): the stored order-160 subgroup induces 2St from a linear character"),
    ("m11-generation-sample", "M11: 200 random pairs of elements of orders 8 and 11 generate M11"),
    ("an-restriction-identity", "A_n, n = 7, 8, 9: (pi_n - 1) restricted to A_(n-2) is (pi_(n-2) - 1) + 2"),
];

struct Check {
    name: String,
    passed: bool,
    detail: String,
}

#[derive(Default)]
struct Case {
    checks: Vec<Check>,
    capacity: Option<String>,
}

impl Case {
    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.to_string(), passed, detail: detail.into() });
    }

    fn passed(&self) -> bool {
        self.capacity.is_none() && self.checks.iter().all(|c| c.passed)
    }
}

pub fn run(catalog: &Catalog, id: &str, options: SearchOptions) -> Result<Report> {
    let ids: Vec<&str> = if id == "all" {
        CASES.iter().map(|(id, _)| *id).collect()
    } else if CASES.iter().any(|(c, _)| *c == id) {
        vec![id]
    } else {
        let known: Vec<&str> = CASES.iter().map(|(id, _)| *id).collect();
        return Err(UsageError(format!("unknown case `{id}`; known cases: {}, all", known.join(", "))).into());
    };
    let mut text = String::new();
    let mut records = Vec::new();
    let mut ok = true;
    let mut capacity = None;
    for id in ids {
        let start = Instant::now();
        let case = match id {
            "a5-not-qsi" => a5_not_qsi(catalog, options)?,
            "psl27-steinberg-monomial" => psl27_steinberg_monomial(catalog, options)?,
            "psp43-2st-witness" => psp43_2st_witness(catalog)?,
            "m11-generation-sample" => m11_generation_sample(catalog)?,
            "an-restriction-identity" => an_restriction_identity()?,
            _ => unreachable!("case ids are checked above"),
        };
        let seconds = start.elapsed().as_secs_f64();
        let passed = case.passed();
        ok &= passed;
        if capacity.is_none() {
            capacity = case.capacity.clone();
        }
        let _ = writeln!(text, "{id}: {} ({seconds:.2} s)", if passed { "PASS" } else { "FAIL" });
        for c in &case.checks {
            let _ = writeln!(text, "  {} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
        }
        records.push(json!({
            "case": id,
            "passed": passed,
            "seconds": seconds,
            "capacity": case.capacity,
            "checks": case.checks.iter().map(|c| json!({
                "name": c.name, "passed": c.passed, "detail": c.detail,
            })).collect::<Vec<Value>>(),
        }));
    }
    let json = json!({"command": "verify-paper", "passed": ok, "cases": records});
    Ok(Report { text, json, capacity, ok })
}

fn degree_indices(ctx: &QsiContext, degree: i128) -> Vec<usize> {
    (0..ctx.table().len()).filter(|&i| ctx.table().irreducible(i).degree() == degree).collect()
}

fn a5_not_qsi(catalog: &Catalog, options: SearchOptions) -> Result<Case> {
    let mut case = Case::default();
    let ctx = QsiContext::new(&catalog.load("A5")?, options)?;
    let gv = ctx.decide_all(Mode::Qsi)?;
    if let Some(e) = gv.verdicts.iter().find_map(|v| v.capacity.as_ref()) {
        case.capacity = Some(e.to_string());
    }
    case.check("not solvable", !gv.solvable, "A5 is perfect");
    let lattice_len = match ctx.lattice() {
        Ok(l) => l.len(),
        Err(_) => 0,
    };
    case.check("subgroup classes", lattice_len == 9, format!("{lattice_len} classes of subgroups"));
    for i in degree_indices(&ctx, 4) {
        let v = &gv.verdicts[i];
        let mut seen: Vec<usize> = v.pruning_log.iter().map(|e| e.subgroup_class).collect();
        seen.sort_unstable();
        seen.dedup();
        case.check(
            "degree 4 refuted",
            v.status.decision() == Some(false),
            format!("status {}", v.status.as_str()),
        );
        case.check(
            "exhaustive pruning log",
            seen.len() == lattice_len && v.pruning_log.len() == lattice_len,
            format!("{} of {lattice_len} classes logged", seen.len()),
        );
    }
    let verified = gv
        .verdicts
        .iter()
        .filter_map(|v| v.witness.as_ref().map(|w| verify_witness(&v.character, w, Mode::Qsi).is_ok()))
        .all(|ok| ok);
    case.check("witnesses re-verify", verified, "every witness for the other characters");
    case.check("A5 is not QSI", gv.conclusion() == Some(false), format!("conclusion {:?}", gv.conclusion()));
    Ok(case)
}

fn psl27_steinberg_monomial(catalog: &Catalog, options: SearchOptions) -> Result<Case> {
    let mut case = Case::default();
    let ctx = QsiContext::new(&catalog.load("PSL27")?, options)?;
    let mut degrees = ctx.table().degrees();
    degrees.sort_unstable();
    case.check("degrees", degrees == [1, 3, 3, 6, 7, 8], format!("{degrees:?}"));
    for d in [7, 8] {
        for i in degree_indices(&ctx, d) {
            let v = ctx.decide(i, Mode::Monomial)?;
            let detail = match &v.witness {
                Some(w) => {
                    let ok = verify_witness(&v.character, w, Mode::Monomial).is_ok()
                        && w.multiplier == 1
                        && w.phi.is_linear()
                        && w.subgroup.order() as i128 * d == 168;
                    case.check(&format!("degree {d} witness re-verifies"), ok, "linear phi, k = 1, index = degree");
                    format!("U of order {} generated by {}", w.subgroup.order(), w.subgroup.generator_strings().join(" "))
                }
                None => v.status.as_str().to_string(),
            };
            case.check(&format!("degree {d} monomial"), v.status == Status::MonomialWithWitness, detail);
            if v.capacity.is_some() {
                case.capacity = v.capacity.as_ref().map(|e| e.to_string());
            }
        }
    }
    for i in degree_indices(&ctx, 6) {
        let v = ctx.decide(i, Mode::Qsi)?;
        if v.capacity.is_some() {
            case.capacity = v.capacity.as_ref().map(|e| e.to_string());
        }
        let lattice_len = ctx.lattice().map(|l| l.len()).unwrap_or(0);
        case.check("degree 6 refuted", v.status.decision() == Some(false), v.status.as_str());
        case.check(
            "degree 6 pruning log covers every class",
            v.pruning_log.len() == lattice_len,
            format!("{} of {lattice_len}", v.pruning_log.len()),
        );
        let no14 = ctx
            .lattice()
            .map(|l| l.classes().iter().all(|c| c.order() == 168 || c.order() % 14 != 0))
            .unwrap_or(false);
        case.check("no proper subgroup of order divisible by 14", no14, "checked on the subgroup lattice");
    }
    Ok(case)
}

fn psp43_2st_witness(catalog: &Catalog) -> Result<Case> {
    let mut case = Case::default();
    let sub = catalog.load_subgroup("PSU42_U160")?;
    let g = &sub.parent;
    let table = character_table(g)?;
    let st: Vec<&Character> = table.irreducibles().iter().filter(|c| c.degree() == 81).collect();
    case.check("unique degree-81 irreducible", st.len() == 1, format!("{} found", st.len()));
    let three_part = {
        let mut n = g.order();
        let mut p = 1;
        while n % 3 == 0 {
            n /= 3;
            p *= 3;
        }
        p
    };
    case.check("degree is the 3-part of |G|", three_part == 81, format!("|G| = {}", g.order()));
    let Some(phi) = sub.character.clone() else {
        case.check("stored linear character", false, "fixture has no character");
        return Ok(case);
    };
    let st = st[0];
    case.check("phi linear", phi.is_linear(), format!("image order {}", sub.group.order() / phi.kernel_order()));
    let m = g.stabilizer(0)?;
    case.check(
        "U inside the point stabilizer 2^4:A5",
        m.order() == 960 && sub.group.is_subgroup_of(&m),
        format!("|M| = {}, [G:U] = {}", m.order(), g.order() / sub.group.order()),
    );
    let induced = phi.induce_to(table.classes())?;
    case.check("phi^G = 2 St (fusion)", induced == st.scale(2), "exact cyclotomic comparison");
    let pointwise = induce_pointwise(&phi, table.classes());
    case.check("phi^G = 2 St (pointwise)", pointwise == st.scale(2).values(), "independent Frobenius formula");
    let kernel = phi.kernel()?;
    let solvable = sub.group.solvable_residual()?.is_subgroup_of(&kernel);
    case.check("U / ker phi solvable", solvable, format!("|ker phi| = {}", kernel.order()));
    case.check("3 does not divide |ker phi|", kernel.order() % 3 != 0, format!("|ker phi| = {}", kernel.order()));
    let witness = QsiWitness {
        subgroup: sub.group.clone(),
        subgroup_class: None,
        char_index: 0,
        kernel_order: kernel.order(),
        solvable_quotient_order: sub.group.order() / kernel.order(),
        phi,
        multiplier: 2,
    };
    let ok = verify_witness(st, &witness, Mode::Qsi).is_ok();
    case.check("witness check with k = 2", ok, "2 St is monomial");
    let not_k1 = verify_witness(st, &QsiWitness { multiplier: 1, ..witness }, Mode::Qsi).is_err();
    case.check("k = 1 rejected", not_k1, "St itself is not induced from this phi");
    Ok(case)
}

fn m11_generation_sample(catalog: &Catalog) -> Result<Case> {
    let mut case = Case::default();
    let g = catalog.load("M11")?;
    let mut rng = ChaCha8Rng::seed_from_u64(7920);
    let mut pick = |order: u64| loop {
        let x = g.random_element(&mut rng);
        if x.order() == order {
            break x;
        }
    };
    let mut generated = 0;
    for _ in 0..200 {
        let x = pick(8);
        let y = pick(11);
        if PermGroup::new(g.degree(), vec![x, y])?.order() == g.order() {
            generated += 1;
        }
    }
    case.check("every pair generates", generated == 200, format!("{generated} of 200 pairs give order 7920"));
    Ok(case)
}

fn point_character(classes: &Arc<ConjugacyClasses>, points: usize, shift: i64) -> Result<Character> {
    let values: Vec<i64> = classes
        .representatives()
        .iter()
        .map(|r| r.fixed_points_below(points) as i64 + shift)
        .collect();
    Ok(Character::from_integers(classes.clone(), &values)?)
}

fn an_restriction_identity() -> Result<Case> {
    let mut case = Case::default();
    for n in [7usize, 8, 9] {
        let big = Arc::new(conjugacy_classes(&alternating_group(n), DEFAULT_ELEMENT_BOUND)?);
        let chi_n = point_character(&big, n, -1)?;
        let small_gens: Vec<Permutation> = alternating_group(n - 2)
            .generators()
            .iter()
            .map(|g| g.extend_to(n))
            .collect();
        let embedded = PermGroup::new(n, small_gens)?;
        let sub = Arc::new(conjugacy_classes(&embedded, DEFAULT_ELEMENT_BOUND)?);
        let restricted = chi_n.restrict_to(&sub)?;

        let standalone = Arc::new(conjugacy_classes(&alternating_group(n - 2), DEFAULT_ELEMENT_BOUND)?);
        let chi_small = point_character(&standalone, n - 2, -1)?;
        let transported: Vec<i64> = sub
            .representatives()
            .iter()
            .map(|r| {
                let images: Vec<u32> = r.images()[..n - 2].to_vec();
                let r = Permutation::from_images(images).expect("A_(n-2) fixes the last two points");
                let c = standalone.class_of(&r).expect("class of A_(n-2)");
                chi_small.value(c).to_integer().expect("rational values") as i64 + 2
            })
            .collect();
        let expected = Character::from_integers(sub.clone(), &transported)?;
        let irreducible = chi_n.is_irreducible() && chi_small.is_irreducible();
        let trivial = restricted.multiplicity(&Character::trivial(&sub))?;
        case.check(
            &format!("n = {n}"),
            restricted == expected && irreducible && trivial == 2,
            format!(
                "|A_{n}| = {}, chi_{n} irreducible: {irreducible}, <res, 1> = {trivial}",
                big.group_order()
            ),
        );
    }
    Ok(case)
}
