//! Necessary conditions on `(U, φ)` for `k χ = φ^G`, used to prune the search.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::chartab::Character;
use crate::cyclotomic::Rational;
use crate::error::Result;
use crate::permgroup::{conjugacy_classes, ConjugacyClasses, PermGroup, DEFAULT_ELEMENT_BOUND};

/// `|C ∩ U|` for every class `C` of `G`, given the fusion of `U`'s classes.
pub fn class_intersections(g: &ConjugacyClasses, u: &ConjugacyClasses, fusion: &[usize]) -> Vec<u64> {
    let mut counts = vec![0; g.len()];
    for (i, &k) in fusion.iter().enumerate() {
        counts[k] += u.size(i);
    }
    counts
}

/// First class `C` with `|C ∩ U| / |C| < |χ(g_C)| / χ(1)`.
///
/// Squared moduli are compared exactly when rational. Irrational ones are
/// compared numerically with a safety margin, and undecidable comparisons
/// never reject.
pub fn class_fraction_violation(chi: &Character, intersections: &[u64]) -> Option<usize> {
    let classes = chi.classes();
    let degree = chi.degree();
    (0..classes.len()).find(|&k| {
        let v = chi.value(k);
        if v.is_zero() {
            return false;
        }
        if intersections[k] == 0 {
            return true;
        }
        let bound = Rational::new(degree * intersections[k] as i128, classes.size(k) as i128);
        v.abs_squared().cmp_real_rational(bound * bound) == Some(Ordering::Greater)
    })
}

/// Every class on which `χ` is non-zero meets `U` in at least the fraction
/// `|χ(g)| / χ(1)` of its elements.
pub fn class_fraction_prefilter(chi: &Character, u: &PermGroup) -> Result<bool> {
    let uc = conjugacy_classes(u, DEFAULT_ELEMENT_BOUND)?;
    let fusion = chi.classes().fusion_from(&uc)?;
    let counts = class_intersections(chi.classes(), &uc, &fusion);
    Ok(class_fraction_violation(chi, &counts).is_none())
}

/// A non-abelian simple `U` can only induce multiples of the trivial character.
pub fn simple_subgroup_prefilter(chi: &Character, u: &PermGroup) -> Result<bool> {
    if chi.is_trivial() {
        return Ok(true);
    }
    let uc = Arc::new(conjugacy_classes(u, DEFAULT_ELEMENT_BOUND)?);
    Ok(!uc.is_nonabelian_simple()?)
}

/// `p ∤ |ker φ|`, necessary when a Steinberg character of degree `|G|_p` is
/// induced from `φ`.
pub fn steinberg_kernel_constraint(phi: &Character, p: u64) -> bool {
    phi.kernel_order() % p != 0
}

/// `χ(1)` divides `[G : ker φ]`: it divides `[G:U] φ(1)`, and `φ(1)` divides
/// `[U : ker φ]`. For `χ(1) = |G|_p` this is the Steinberg constraint.
pub fn kernel_degree_constraint(group_order: u64, chi_degree: i128, phi: &Character) -> bool {
    let index = group_order / phi.kernel_order();
    index as i128 % chi_degree == 0
}

/// Primes `p` with `χ(1) = |G|_p > 1`.
pub fn steinberg_primes(group_order: u64, chi_degree: i128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = group_order;
    let mut p = 2;
    while n > 1 {
        if n % p == 0 {
            let mut part = 1u64;
            while n % p == 0 {
                n /= p;
                part *= p;
            }
            if part as i128 == chi_degree {
                out.push(p);
            }
        }
        p += 1;
    }
    out
}
