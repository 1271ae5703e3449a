use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::PermGroup;

/// `G/N` as the permutation group induced on the cosets of `N`.
///
/// The action is faithful because the kernel of the coset action of a normal
/// subgroup is the subgroup itself. The degree is `[G:N]`.
pub fn quotient(group: &PermGroup, normal: &PermGroup, bound: u64) -> Result<PermGroup> {
    if !normal.is_normal_in(group) {
        return Err(Error::Domain("subgroup is not normal in the group".into()));
    }
    let elements = group.elements(bound)?;
    let n_elements = normal.elements(bound)?;
    let mut coset_of: HashMap<Permutation, u32> = HashMap::with_capacity(elements.len());
    let mut reps: Vec<Permutation> = Vec::new();
    for g in &elements {
        if coset_of.contains_key(g) {
            continue;
        }
        let id = reps.len() as u32;
        for n in &n_elements {
            coset_of.insert(n * g, id);
        }
        reps.push(g.clone());
    }
    let index = reps.len();
    let gens = group
        .generators()
        .iter()
        .map(|s| {
            let images = reps.iter().map(|r| coset_of[&(r * s)]).collect();
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    let q = PermGroup::new(index.max(1), gens)?;
    if q.order() * normal.order() != group.order() {
        return Err(Error::Integrity(format!(
            "quotient order {} does not match |G|/|N| = {}",
            q.order(),
            group.order() / normal.order()
        )));
    }
    Ok(q)
}

impl PermGroup {
    pub fn quotient(&self, normal: &PermGroup, bound: u64) -> Result<PermGroup> {
        quotient(self, normal, bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::{alternating_group, group_from_cycles, symmetric_group};

    #[test]
    fn s4_mod_v4_is_s3() {
        let s4 = symmetric_group(4);
        let v4 = group_from_cycles(4, &["(1,2)(3,4)", "(1,3)(2,4)"]).unwrap();
        let q = quotient(&s4, &v4, 1000).unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
    }

    #[test]
    fn trivial_and_full_quotients() {
        let a5 = alternating_group(5);
        assert_eq!(quotient(&a5, &a5, 1000).unwrap().order(), 1);
        let one = PermGroup::trivial(5);
        assert_eq!(quotient(&a5, &one, 1000).unwrap().order(), 60);
    }

    #[test]
    fn non_normal_rejected() {
        let s4 = symmetric_group(4);
        let h = group_from_cycles(4, &["(1,2)"]).unwrap();
        assert!(matches!(quotient(&s4, &h, 1000), Err(Error::Domain(_))));
    }
}
