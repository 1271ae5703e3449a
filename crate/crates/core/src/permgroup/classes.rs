use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::PermGroup;

/// A fully enumerated group: every element with a stable index.
#[derive(Debug)]
pub struct Enumeration {
    group: PermGroup,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
}

impl Enumeration {
    pub fn new(group: &PermGroup, bound: u64) -> Result<Self> {
        let elements = group.elements(bound)?;
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i as u32))
            .collect();
        Ok(Enumeration {
            group: group.clone(),
            elements,
            index,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    /// Index of `elements[a] * elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&(&self.elements[a] * &self.elements[b])] as usize
    }

    pub fn identity_index(&self) -> usize {
        self.index[&self.group.identity()] as usize
    }
}

/// Conjugacy classes of a fully enumerated group.
///
/// Classes are sorted by (element order, class size, smallest element), the
/// smallest element of each class being its representative, so the identity
/// class always comes first.
#[derive(Debug)]
pub struct ConjugacyClasses {
    enumeration: Arc<Enumeration>,
    representatives: Vec<Permutation>,
    sizes: Vec<u64>,
    orders: Vec<u64>,
    element_to_class: Vec<u32>,
}

pub fn conjugacy_classes(group: &PermGroup, bound: u64) -> Result<ConjugacyClasses> {
    let enumeration = Arc::new(Enumeration::new(group, bound)?);
    Ok(ConjugacyClasses::from_enumeration(enumeration))
}

impl ConjugacyClasses {
    pub fn from_enumeration(enumeration: Arc<Enumeration>) -> Self {
        let n = enumeration.len();
        let gens = enumeration.group().generators().to_vec();
        let mut raw_class = vec![u32::MAX; n];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if raw_class[start] != u32::MAX {
                continue;
            }
            let id = members.len() as u32;
            raw_class[start] = id;
            let mut orbit = vec![start];
            let mut k = 0;
            while k < orbit.len() {
                let x = enumeration.element(orbit[k]);
                for s in &gens {
                    let j = enumeration.index_of(&x.conjugate_by(s)).expect("closed under conjugation");
                    if raw_class[j] == u32::MAX {
                        raw_class[j] = id;
                        orbit.push(j);
                    }
                }
                k += 1;
            }
            members.push(orbit);
        }

        let mut keyed: Vec<(u64, u64, Permutation, usize)> = members
            .iter()
            .enumerate()
            .map(|(c, m)| {
                let rep = m
                    .iter()
                    .map(|&i| enumeration.element(i))
                    .min()
                    .unwrap()
                    .clone();
                (rep.order(), m.len() as u64, rep, c)
            })
            .collect();
        keyed.sort();

        let mut relabel = vec![0u32; members.len()];
        for (new, (_, _, _, old)) in keyed.iter().enumerate() {
            relabel[*old] = new as u32;
        }
        let element_to_class = raw_class.iter().map(|&c| relabel[c as usize]).collect();
        let mut representatives = Vec::with_capacity(keyed.len());
        let mut sizes = Vec::with_capacity(keyed.len());
        let mut orders = Vec::with_capacity(keyed.len());
        for (order, size, rep, _) in keyed {
            representatives.push(rep);
            sizes.push(size);
            orders.push(order);
        }
        ConjugacyClasses {
            enumeration,
            representatives,
            sizes,
            orders,
            element_to_class,
        }
    }

    pub fn group(&self) -> &PermGroup {
        self.enumeration.group()
    }

    pub fn enumeration(&self) -> &Arc<Enumeration> {
        &self.enumeration
    }

    pub fn group_order(&self) -> u64 {
        self.enumeration.len() as u64
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.representatives
    }

    pub fn representative(&self, class: usize) -> &Permutation {
        &self.representatives[class]
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn size(&self, class: usize) -> u64 {
        self.sizes[class]
    }

    /// Element order of the class representatives.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn centralizer_order(&self, class: usize) -> u64 {
        self.group_order() / self.sizes[class]
    }

    pub fn class_of_index(&self, element: usize) -> usize {
        self.element_to_class[element] as usize
    }

    /// Class of an arbitrary permutation, `None` if it is not in the group.
    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.enumeration
            .index_of(g)
            .map(|i| self.element_to_class[i] as usize)
    }

    /// Members of a class, as element indices.
    pub fn members(&self, class: usize) -> impl Iterator<Item = usize> + '_ {
        self.element_to_class
            .iter()
            .enumerate()
            .filter(move |&(_, &c)| c as usize == class)
            .map(|(i, _)| i)
    }

    /// Class of `g^-1` for the representative of each class.
    pub fn inverse_classes(&self) -> Vec<usize> {
        self.representatives
            .iter()
            .map(|g| self.class_of(&g.inverse()).unwrap())
            .collect()
    }

    /// `power_map(k)[c]` is the class of `rep(c)^k`.
    pub fn power_map(&self, k: u64) -> Vec<usize> {
        self.representatives
            .iter()
            .map(|g| self.class_of(&g.pow(k)).unwrap())
            .collect()
    }

    /// Exponent of the group.
    pub fn exponent(&self) -> u64 {
        self.orders
            .iter()
            .fold(1, |acc, &o| num_integer::lcm(acc, o))
    }

    /// For a subgroup enumerated separately, maps each of its classes to the
    /// class of this group containing it.
    pub fn fusion_from(&self, sub: &ConjugacyClasses) -> Result<Vec<usize>> {
        sub.representatives
            .iter()
            .map(|u| {
                self.class_of(u).ok_or_else(|| {
                    Error::Domain(format!("subgroup element {u} is not in the group"))
                })
            })
            .collect()
    }

    /// True iff the group is non-abelian and simple. Decided by the normal
    /// closures of class representatives.
    pub fn is_nonabelian_simple(&self) -> Result<bool> {
        let n = self.group_order();
        if n == 1 || self.len() as u64 == n {
            return Ok(false);
        }
        for rep in self.representatives.iter().skip(1) {
            let closure = super::series::normal_closure(self.group(), std::slice::from_ref(rep))?;
            if closure.order() != n {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn element_orders_present(group: &PermGroup, bound: u64) -> Result<BTreeSet<u64>> {
    if group.order() > bound {
        return Err(Error::capacity("group order", group.order(), bound));
    }
    Ok(group
        .elements(bound)?
        .iter()
        .map(Permutation::order)
        .collect())
}
