//! Independent re-verification of witnesses, working element by element
//! instead of through class fusion.

use crate::chartab::Character;
use crate::cyclotomic::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::permgroup::{ConjugacyClasses, DEFAULT_ELEMENT_BOUND};

use super::{Mode, QsiWitness};

/// `φ^G(x) = (1/|U|) Σ_{y ∈ G, x^y ∈ U} φ(x^y)` at every class representative
/// of `G`.
pub fn induce_pointwise(phi: &Character, group: &ConjugacyClasses) -> Vec<Cyclotomic> {
    let u_order = phi.classes().group_order() as i128;
    let elements = group.enumeration().elements();
    group
        .representatives()
        .iter()
        .map(|x| {
            let sum: Cyclotomic = elements
                .iter()
                .filter_map(|y| phi.value_at(&x.conjugate_by(y)).cloned())
                .sum();
            sum.scale(Rational::new(1, u_order))
        })
        .collect()
}

/// Rechecks `k χ = φ^G` pointwise and the solvability of `U / ker φ` through
/// an explicit quotient group.
pub fn verify_witness(chi: &Character, witness: &QsiWitness, mode: Mode) -> Result<()> {
    let u = &witness.subgroup;
    for g in u.generators() {
        if !chi.group().contains(g) {
            return Err(Error::Integrity(format!("witness generator {g} is outside the group")));
        }
    }
    if witness.phi.classes().group_order() != u.order() {
        return Err(Error::Integrity("φ is not a character of the witness subgroup".into()));
    }
    let induced = induce_pointwise(&witness.phi, chi.classes());
    let k = Rational::from_integer(witness.multiplier as i128);
    for (class, value) in induced.iter().enumerate() {
        if *value != chi.value(class).scale(k) {
            return Err(Error::Integrity(format!(
                "induced value {value} differs from {} · {} on class {class}",
                witness.multiplier,
                chi.value(class)
            )));
        }
    }
    let degree = witness.phi.value(0).clone();
    let kernel = u.subgroup_where(DEFAULT_ELEMENT_BOUND, |g| witness.phi.value_at(g) == Some(&degree))?;
    if kernel.order() != witness.kernel_order {
        return Err(Error::Integrity(format!(
            "kernel has order {}, witness records {}",
            kernel.order(),
            witness.kernel_order
        )));
    }
    let quotient = u.quotient(&kernel, DEFAULT_ELEMENT_BOUND)?;
    if quotient.order() != witness.solvable_quotient_order || !quotient.is_solvable()? {
        return Err(Error::Integrity("U / ker φ is not solvable of the recorded order".into()));
    }
    if mode == Mode::Monomial && (witness.multiplier != 1 || !witness.phi.is_linear()) {
        return Err(Error::Integrity("monomial witness needs a linear φ and k = 1".into()));
    }
    Ok(())
}
