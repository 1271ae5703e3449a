//! Searches the point stabilizer 2^4:A5 of PSU4(2) = PSp4(3) on 27 points for
//! a subgroup U of order 160 and a linear character φ with φ^G = 2·St.
//! Prints the fixture lines for the catalog.

use qsi_core::chartab::character_table;
use qsi_core::permgroup::{all_subgroups_up_to_conjugacy, group_from_cycles, PermGroup};
use qsi_core::Cyclotomic;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = group_from_cycles(
        27,
        &[
            "(1,23,16,17,5,18,12,9,26)(2,4,14,13,11,19,7,25,27)(3,24,6,10,15,21,22,20,8)",
            "(1,23,6,4,20)(2,16,3,27,25)(5,10,19,24,12)(7,22,14,13,21)(8,15,17,9,26)",
        ],
    )?;
    let table = character_table(&g)?;
    let st = table.irreducibles().iter().find(|c| c.degree() == 81).expect("Steinberg character");
    let target = st.scale(2);
    let m = g.stabilizer(0)?;
    println!("# |M| = {}", m.order());
    let lattice = all_subgroups_up_to_conjugacy(&m, 30_000)?;
    let mut rng = ChaCha8Rng::seed_from_u64(160);
    for class in lattice.classes().iter().filter(|c| c.order() == 160) {
        let u = &class.group;
        let ut = character_table(u)?;
        for phi in ut.irreducibles().iter().filter(|c| c.is_linear()) {
            if phi.induce_to(table.classes())? != target {
                continue;
            }
            // two random elements generating U keep the fixture short
            let elements = u.elements(1_000)?;
            let gens = loop {
                let a = elements[rng.gen_range(0..elements.len())].clone();
                let b = elements[rng.gen_range(0..elements.len())].clone();
                if PermGroup::new(27, vec![a.clone(), b.clone()])?.order() == 160 {
                    break vec![a, b];
                }
            };
            let image_order = u.order() / phi.kernel_order();
            println!("degree 27");
            for x in &gens {
                let v = phi.value_at(x).expect("generator lies in U");
                let k = (0..image_order)
                    .find(|&k| *v == Cyclotomic::root_of_unity(image_order as u32, k as i64))
                    .expect("linear character values are roots of unity");
                println!("{}  # phi = E({image_order})^{k}", x.to_cycle_string());
            }
            return Ok(());
        }
    }
    Err("no witness found".into())
}
