//! All groups of small order, built as cyclic extensions.
//!
//! Every group of order below 60 is solvable and so has a normal subgroup `N`
//! of prime index `p`. It is then `N⟨g⟩` with `g^p = z ∈ N` and conjugation
//! by `g` an automorphism `β` of `N` such that `β(z) = z` and `β^p` is
//! conjugation by `z`. Running over all `(N, β, z)` and removing isomorphic
//! duplicates gives every group of order `n`. Groups are returned in their
//! right regular representation.

use std::collections::HashMap;

use crate::error::Result;
use crate::perm::Permutation;
use crate::permgroup::PermGroup;

/// Multiplication table of a finite group; element 0 is the identity.
#[derive(Clone, Debug)]
struct Table {
    n: usize,
    mul: Vec<Vec<u8>>,
}

impl Table {
    fn trivial() -> Self {
        Table { n: 1, mul: vec![vec![0]] }
    }

    fn m(&self, a: usize, b: usize) -> usize {
        self.mul[a][b] as usize
    }

    fn inverse(&self, a: usize) -> usize {
        (0..self.n).find(|&b| self.mul[a][b] == 0).unwrap()
    }

    fn order(&self, a: usize) -> usize {
        let (mut x, mut k) = (a, 1);
        while x != 0 {
            x = self.m(x, a);
            k += 1;
        }
        k
    }

    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.n];
        inside[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &s in gens {
                let y = self.m(x, s);
                if !inside[y] {
                    inside[y] = true;
                    stack.push(y);
                }
            }
        }
        inside
    }

    /// A generating set, preferring elements of large order.
    fn generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (1..self.n).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.order(a)), a));
        let mut gens = Vec::new();
        let mut inside = self.closure(&gens);
        for a in by_order {
            if !inside[a] {
                gens.push(a);
                inside = self.closure(&gens);
            }
        }
        gens
    }

    /// Extends `gens[i] ↦ images[i]` to an injective homomorphism into
    /// `target`, if that is possible.
    fn extend(&self, gens: &[usize], images: &[usize], target: &Table) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.n];
        map[0] = 0;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for (&s, &t) in gens.iter().zip(images) {
                let y = self.m(x, s);
                let v = target.m(map[x], t);
                if map[y] == usize::MAX {
                    map[y] = v;
                    stack.push(y);
                } else if map[y] != v {
                    return None;
                }
            }
        }
        // well defined on all of the group; check multiplicativity and injectivity
        let mut seen = vec![false; target.n];
        for &v in &map {
            if v == usize::MAX || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        for a in 0..self.n {
            for b in 0..self.n {
                if map[self.m(a, b)] != target.m(map[a], map[b]) {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// All isomorphisms `self → target` sending the generators in turn to
    /// elements of equal order, stopping after the first when `first_only`.
    fn isomorphisms(&self, target: &Table, first_only: bool) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let orders: Vec<usize> = gens.iter().map(|&g| self.order(g)).collect();
        let mut found = Vec::new();
        let mut images = Vec::with_capacity(gens.len());
        self.search(target, &gens, &orders, &mut images, first_only, &mut found);
        found
    }

    fn search(
        &self,
        target: &Table,
        gens: &[usize],
        orders: &[usize],
        images: &mut Vec<usize>,
        first_only: bool,
        found: &mut Vec<Vec<usize>>,
    ) {
        if first_only && !found.is_empty() {
            return;
        }
        if images.len() == gens.len() {
            if let Some(map) = self.extend(gens, images, target) {
                found.push(map);
            }
            return;
        }
        let want = orders[images.len()];
        for t in 0..target.n {
            if target.order(t) == want {
                images.push(t);
                self.search(target, gens, orders, images, first_only, found);
                images.pop();
            }
        }
    }

    fn automorphisms(&self) -> Vec<Vec<usize>> {
        self.isomorphisms(self, false)
    }

    fn invariant(&self) -> Vec<(usize, usize)> {
        let mut inv: Vec<(usize, usize)> = (0..self.n)
            .map(|a| (self.order(a), (0..self.n).filter(|&b| self.m(a, b) == self.m(b, a)).count()))
            .collect();
        inv.sort_unstable();
        inv
    }

    /// The extension `N⟨g⟩` with `g^p = z` and `g b g⁻¹ = β(b)`. Elements are
    /// `(a, i) ↦ a + i·|N|`, standing for `a g^i`.
    fn extension(&self, p: usize, beta: &[usize], z: usize) -> Table {
        let n = self.n * p;
        let mut powers = vec![(0..self.n).collect::<Vec<_>>()];
        for i in 1..p {
            let prev: &Vec<usize> = &powers[i - 1];
            powers.push(prev.iter().map(|&b| beta[b]).collect());
        }
        let mut mul = vec![vec![0u8; n]; n];
        for i in 0..p {
            for a in 0..self.n {
                for j in 0..p {
                    for b in 0..self.n {
                        let mut c = self.m(a, powers[i][b]);
                        if i + j >= p {
                            c = self.m(c, z);
                        }
                        mul[a + i * self.n][b + j * self.n] = (c + ((i + j) % p) * self.n) as u8;
                    }
                }
            }
        }
        Table { n, mul }
    }

    fn is_associative(&self) -> bool {
        (0..self.n).all(|a| {
            (0..self.n).all(|b| (0..self.n).all(|c| self.m(self.m(a, b), c) == self.m(a, self.m(b, c))))
        })
    }

    /// Right regular representation on the generators.
    fn to_group(&self) -> Result<PermGroup> {
        let gens = self
            .generators()
            .into_iter()
            .map(|g| Permutation::from_images((0..self.n).map(|a| self.m(a, g) as u32).collect()))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(self.n, gens)
    }
}

fn all_extensions(base: &Table, p: usize) -> Vec<Table> {
    let mut out = Vec::new();
    for beta in base.automorphisms() {
        let mut power: Vec<usize> = (0..base.n).collect();
        for _ in 0..p {
            power = power.iter().map(|&b| beta[b]).collect();
        }
        for z in 0..base.n {
            if beta[z] != z {
                continue;
            }
            let zi = base.inverse(z);
            if (0..base.n).all(|b| power[b] == base.m(base.m(z, b), zi)) {
                out.push(base.extension(p, &beta, z));
            }
        }
    }
    out
}

fn primes_dividing(n: usize) -> Vec<usize> {
    (2..=n).filter(|&p| n % p == 0 && (2..p).all(|d| p % d != 0)).collect()
}

/// One group of a given order up to isomorphism.
#[derive(Clone, Debug)]
pub struct SmallGroup {
    pub order: usize,
    /// Position among the groups of this order, in the order of discovery.
    /// Unrelated to any other numbering of small groups.
    pub index: usize,
    pub group: PermGroup,
}

impl SmallGroup {
    pub fn id(&self) -> String {
        format!("G{}_{}", self.order, self.index)
    }
}

/// Every group of order at most `max_order` (which must be below 60),
/// exactly once up to isomorphism.
pub fn small_groups(max_order: usize) -> Result<Vec<SmallGroup>> {
    assert!(max_order < 60, "the construction assumes solvability, valid below order 60");
    let mut tables: Vec<Vec<Table>> = vec![Vec::new(), vec![Table::trivial()]];
    for n in 2..=max_order {
        let mut found: Vec<Table> = Vec::new();
        let mut invariants: HashMap<Vec<(usize, usize)>, Vec<usize>> = HashMap::new();
        for p in primes_dividing(n) {
            for base in tables[n / p].clone() {
                for t in all_extensions(&base, p) {
                    debug_assert!(t.is_associative());
                    let inv = t.invariant();
                    let bucket = invariants.entry(inv).or_default();
                    if bucket.iter().any(|&i| !t.isomorphisms(&found[i], true).is_empty()) {
                        continue;
                    }
                    bucket.push(found.len());
                    found.push(t);
                }
            }
        }
        tables.push(found);
    }
    let mut out = Vec::new();
    for (order, list) in tables.iter().enumerate().skip(1) {
        for (index, t) in list.iter().enumerate() {
            out.push(SmallGroup { order, index: index + 1, group: t.to_group()? });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extensions_are_groups() {
        let c2 = all_extensions(&Table::trivial(), 2);
        assert_eq!(c2.len(), 1);
        let c4_or_v4 = all_extensions(&c2[0], 2);
        assert!(c4_or_v4.iter().all(Table::is_associative));
        let s3 = all_extensions(&all_extensions(&Table::trivial(), 3)[0], 2);
        assert!(s3.iter().all(Table::is_associative));
    }

    #[test]
    fn automorphism_counts() {
        let c2 = all_extensions(&Table::trivial(), 2).remove(0);
        let fours = all_extensions(&c2, 2);
        let mut counts: Vec<usize> = fours.iter().map(|t| t.automorphisms().len()).collect();
        counts.sort();
        counts.dedup();
        // Aut(C4) = C2, Aut(C2 x C2) = S3
        assert_eq!(counts, vec![2, 6]);
    }
}
