//! Permutation groups given by generators, backed by a base and strong
//! generating set built with the deterministic Schreier-Sims algorithm.

mod classes;
mod genfile;
mod quotient;
mod series;
mod subgroups;

pub use classes::{conjugacy_classes, element_orders_present, ConjugacyClasses, Enumeration};
pub use genfile::{parse_generator_file, parse_generators, to_generator_file};
pub use quotient::quotient;
pub use subgroups::{
    all_subgroups_up_to_conjugacy, all_subgroups_with_limits, SubgroupClass, SubgroupLattice,
    DEFAULT_SUBGROUP_COUNT_BOUND,
};

use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default bound on the number of elements a group may have before any
/// operation that enumerates it refuses to run.
pub const DEFAULT_ELEMENT_BOUND: u64 = 1_000_000;

/// Default bound on the group order for subgroup enumeration.
pub const DEFAULT_SUBGROUP_ORDER_BOUND: u64 = 30_000;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    orbit: Vec<usize>,
    // transversal[b] maps the base point to b
    transversal: Vec<Option<Permutation>>,
}

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    strong_generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: u64,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            strong_generators: Vec::new(),
            levels: Vec::new(),
            order: 1,
        }
    }

    /// Runs Schreier-Sims on `generators`. `degree` is needed for the empty
    /// generator list; otherwise every generator must have exactly this degree.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::MalformedInput("degree must be at least 1".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::MalformedInput(format!(
                "generator {g} has degree {}, expected {degree}",
                g.degree()
            )));
        }
        let mut group = PermGroup::trivial(degree);
        group.generators = generators;
        group.schreier_sims();
        Ok(group)
    }

    /// Like [`PermGroup::new`] but infers the degree from the generators.
    pub fn from_generators(generators: Vec<Permutation>) -> Result<Self> {
        let degree = generators
            .first()
            .map(Permutation::degree)
            .ok_or_else(|| Error::MalformedInput("empty generator list has no degree".into()))?;
        Self::new(degree, generators)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong_generators
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    fn schreier_sims(&mut self) {
        let mut strong: Vec<Permutation> = self
            .generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let mut base: Vec<usize> = Vec::new();
        for g in &strong {
            if base.iter().all(|&b| g.image(b) == b) {
                base.push(g.first_moved().expect("non-identity"));
            }
        }
        let mut levels: Vec<Level> = Vec::with_capacity(base.len());
        for (i, &b) in base.iter().enumerate() {
            levels.push(self.level_for(b, &strong, &base[..i]));
        }

        let mut i = levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let gens: Vec<&Permutation> = strong
                .iter()
                .filter(|s| base[..lvl].iter().all(|&b| s.image(b) == b))
                .collect();
            let mut new_level = None;
            'scan: for &beta in &levels[lvl].orbit {
                let u_beta = levels[lvl].transversal[beta].as_ref().unwrap();
                for s in &gens {
                    let image = s.image(beta);
                    let u_image = levels[lvl].transversal[image].as_ref().unwrap();
                    let h = &(u_beta * *s) * &u_image.inverse();
                    if h.is_identity() {
                        continue;
                    }
                    let (residue, depth) = strip(&levels, lvl + 1, h);
                    if depth < levels.len() || !residue.is_identity() {
                        if depth == levels.len() {
                            base.push(residue.first_moved().expect("non-identity"));
                        }
                        strong.push(residue);
                        new_level = Some(depth);
                        break 'scan;
                    }
                }
            }
            match new_level {
                Some(depth) => {
                    for l in lvl + 1..=depth {
                        let level = self.level_for(base[l], &strong, &base[..l]);
                        if l < levels.len() {
                            levels[l] = level;
                        } else {
                            levels.push(level);
                        }
                    }
                    i = depth as isize;
                }
                None => i -= 1,
            }
        }

        self.order = levels.iter().map(|l| l.orbit.len() as u64).product();
        self.levels = levels;
        self.strong_generators = strong;
    }

    fn level_for(&self, point: usize, strong: &[Permutation], fixed: &[usize]) -> Level {
        let gens: Vec<&Permutation> = strong
            .iter()
            .filter(|s| fixed.iter().all(|&b| s.image(b) == b))
            .collect();
        let mut transversal: Vec<Option<Permutation>> = vec![None; self.degree];
        transversal[point] = Some(Permutation::identity(self.degree));
        let mut orbit = vec![point];
        let mut k = 0;
        while k < orbit.len() {
            let beta = orbit[k];
            for s in &gens {
                let image = s.image(beta);
                if transversal[image].is_none() {
                    let u = transversal[beta].as_ref().unwrap() * *s;
                    transversal[image] = Some(u);
                    orbit.push(image);
                }
            }
            k += 1;
        }
        Level {
            base_point: point,
            orbit,
            transversal,
        }
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, depth) = strip(&self.levels, 0, g.clone());
        depth == self.levels.len() && residue.is_identity()
    }

    /// Every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Same degree, mutual containment.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    pub fn is_normal_in(&self, parent: &PermGroup) -> bool {
        self.is_subgroup_of(parent)
            && parent.generators.iter().all(|g| {
                self.generators
                    .iter()
                    .all(|h| self.contains(&h.conjugate_by(g)))
            })
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| &(a * b) == &(b * a)))
    }

    /// Uniformly distributed element, drawn through the stabilizer chain.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = self.identity();
        for level in self.levels.iter().rev() {
            let beta = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = &g * level.transversal[beta].as_ref().unwrap();
        }
        g
    }

    /// All elements, in the deterministic order induced by the stabilizer chain.
    pub fn elements(&self, bound: u64) -> Result<Vec<Permutation>> {
        if self.order > bound {
            return Err(Error::capacity("group order", self.order, bound));
        }
        let mut out = vec![self.identity()];
        // g = u_{k-1} * ... * u_0: extend from the deepest level outwards
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for h in &out {
                for &beta in &level.orbit {
                    next.push(h * level.transversal[beta].as_ref().unwrap());
                }
            }
            out = next;
        }
        Ok(out)
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut k = 0;
        while k < orbit.len() {
            for g in &self.generators {
                let image = g.image(orbit[k]);
                if !seen[image] {
                    seen[image] = true;
                    orbit.push(image);
                }
            }
            k += 1;
        }
        orbit
    }

    /// Point stabilizer, from Schreier generators.
    pub fn stabilizer(&self, point: usize) -> Result<PermGroup> {
        let level = self.level_for(point, &self.generators, &[]);
        let mut stab = PermGroup::trivial(self.degree);
        for &beta in &level.orbit {
            let u_beta = level.transversal[beta].as_ref().unwrap();
            for s in &self.generators {
                let u_image = level.transversal[s.image(beta)].as_ref().unwrap();
                let h = &(u_beta * s) * &u_image.inverse();
                if !stab.contains(&h) {
                    stab = stab.with_generator(h)?;
                    if stab.order * level.orbit.len() as u64 == self.order {
                        return Ok(stab);
                    }
                }
            }
        }
        Ok(stab)
    }

    /// `<self, g>`, rebuilt from scratch.
    pub fn with_generator(&self, g: Permutation) -> Result<PermGroup> {
        let mut gens = self.generators.clone();
        gens.push(g);
        PermGroup::new(self.degree, gens)
    }

    /// Subgroup of the elements satisfying `pred`, which must describe a subgroup.
    pub fn subgroup_where(&self, bound: u64, pred: impl Fn(&Permutation) -> bool) -> Result<PermGroup> {
        let mut sub = PermGroup::trivial(self.degree);
        for g in self.elements(bound)? {
            if pred(&g) && !sub.contains(&g) {
                sub = sub.with_generator(g)?;
            }
        }
        Ok(sub)
    }

    /// `self ∩ other`, by filtering the elements of the smaller group.
    pub fn intersection(&self, other: &PermGroup, bound: u64) -> Result<PermGroup> {
        let (small, large) = if self.order <= other.order {
            (self, other)
        } else {
            (other, self)
        };
        small.subgroup_where(bound, |g| large.contains(g))
    }

    /// Moved points, as a sorted set.
    pub fn support(&self) -> BTreeSet<usize> {
        self.generators
            .iter()
            .flat_map(|g| (0..self.degree).filter(move |&i| g.image(i) != i))
            .collect()
    }

    /// Generators in 1-based cycle notation.
    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(Permutation::to_cycle_string).collect()
    }
}

/// Sifts `g` through `levels[from..]`. Returns the residue and the level at
/// which sifting stopped (`levels.len()` if it went all the way through).
fn strip(levels: &[Level], from: usize, mut g: Permutation) -> (Permutation, usize) {
    for (l, level) in levels.iter().enumerate().skip(from) {
        let beta = g.image(level.base_point);
        match &level.transversal[beta] {
            Some(u) => g = &g * &u.inverse(),
            None => return (g, l),
        }
    }
    (g, levels.len())
}

/// Convenience: parse cycle strings into a group of the given degree.
pub fn group_from_cycles(degree: usize, cycles: &[&str]) -> Result<PermGroup> {
    let gens = cycles
        .iter()
        .map(|c| Permutation::parse(c, degree))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(degree, gens)
}

/// Symmetric group on `n` points.
pub fn symmetric_group(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(n.max(1));
    }
    let cycle: Vec<usize> = (0..n).collect();
    let gens = vec![
        Permutation::from_cycles(n, &[cycle]).unwrap(),
        Permutation::from_cycles(n, &[vec![0, 1]]).unwrap(),
    ];
    PermGroup::new(n, gens).unwrap()
}

/// Alternating group on `n` points, generated by the 3-cycles `(1,2,k)`.
pub fn alternating_group(n: usize) -> PermGroup {
    if n < 3 {
        return PermGroup::trivial(n.max(1));
    }
    let gens = (2..n)
        .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]).unwrap())
        .collect();
    PermGroup::new(n, gens).unwrap()
}

/// Cyclic group of order `n` acting regularly.
pub fn cyclic_group(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(1);
    }
    let cycle: Vec<usize> = (0..n).collect();
    PermGroup::new(n, vec![Permutation::from_cycles(n, &[cycle]).unwrap()]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Orbit-closure count of the generated group, independent of the chain.
    fn brute_force_order(g: &PermGroup) -> usize {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let id = g.identity();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for s in g.generators() {
                let y = &x * s;
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn small_orders() {
        let a5 = group_from_cycles(5, &["(1,2,3,4,5)", "(1,2,3)"]).unwrap();
        assert_eq!(a5.order(), 60);
        assert_eq!(PermGroup::new(4, vec![]).unwrap().order(), 1);
        assert_eq!(symmetric_group(4).order(), 24);
        assert_eq!(alternating_group(7).order(), 2520);
        assert_eq!(cyclic_group(4).order(), 4);
    }

    #[test]
    fn m11_order_matches_closure() {
        let m11 = group_from_cycles(11, &["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"])
            .unwrap();
        assert_eq!(brute_force_order(&m11), 7920);
        assert_eq!(m11.order(), 7920);
    }

    #[test]
    fn inconsistent_degrees_rejected() {
        let a = Permutation::parse("(1,2)", 3).unwrap();
        let b = Permutation::parse("(1,2)", 4).unwrap();
        assert!(matches!(
            PermGroup::new(3, vec![a, b]),
            Err(Error::MalformedInput(_))
        ));
    }

    #[test]
    fn membership_and_elements() {
        let s4 = symmetric_group(4);
        let a4 = alternating_group(4);
        let odd = Permutation::parse("(1,2)", 4).unwrap();
        assert!(s4.contains(&odd));
        assert!(!a4.contains(&odd));
        assert!(a4.is_normal_in(&s4));
        let elts = s4.elements(100).unwrap();
        let set: HashSet<_> = elts.iter().cloned().collect();
        assert_eq!(set.len(), 24);
        assert!(s4.elements(10).is_err());
    }

    #[test]
    fn stabilizer_orders() {
        let s5 = symmetric_group(5);
        assert_eq!(s5.stabilizer(0).unwrap().order(), 24);
        let m11 = group_from_cycles(11, &["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"])
            .unwrap();
        assert_eq!(m11.stabilizer(3).unwrap().order(), 720);
    }

    #[test]
    fn order_is_product_of_orbit_lengths() {
        let g = group_from_cycles(8, &["(1,2,3,4)(5,6,7,8)", "(1,5)(2,8)(3,7)(4,6)"]).unwrap();
        let prod: usize = g.basic_orbit_lengths().iter().product();
        assert_eq!(prod as u64, g.order());
        assert_eq!(brute_force_order(&g) as u64, g.order());
    }
}
