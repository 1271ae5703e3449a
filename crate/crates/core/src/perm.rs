//! Permutations of `{0, .., n-1}` acting on the right.
//!
//! The product `a * b` applies `a` first and then `b`, so `i^(ab) = (i^a)^b`.
//! Conjugation follows the same convention: `x^y = y^-1 x y`.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::MalformedInput(format!(
                    "image list {images:?} is not a bijection"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 0-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(Error::MalformedInput(format!(
                        "point {} exceeds degree {degree}",
                        p + 1
                    )));
                }
                if touched[p] {
                    return Err(Error::MalformedInput(format!(
                        "point {} occurs twice in a cycle product",
                        p + 1
                    )));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses disjoint-cycle notation with 1-based points, e.g. `(1,2,3)(4,5)`.
    /// The empty string and `()` denote the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cycles = Vec::new();
        let mut rest = text.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.find(')').map(|end| (&r[..end], &r[end + 1..])));
            let Some((inner, tail)) = body else {
                return Err(Error::MalformedInput(format!("bad cycle notation `{text}`")));
            };
            if !inner.is_empty() {
                let mut cycle = Vec::new();
                for tok in inner.split(',') {
                    let p: usize = tok.parse().map_err(|_| {
                        Error::MalformedInput(format!("bad point `{tok}` in `{text}`"))
                    })?;
                    if p == 0 {
                        return Err(Error::MalformedInput(format!(
                            "points are 1-based, found 0 in `{text}`"
                        )));
                    }
                    cycle.push(p - 1);
                }
                cycles.push(cycle);
            }
            rest = tail;
        }
        Self::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self^other = other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Self {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[other.images[i] as usize] = other.images[x as usize];
        }
        Permutation { images }
    }

    pub fn commutator(&self, other: &Permutation) -> Self {
        // [a, b] = a^-1 b^-1 a b
        &(&self.inverse() * &other.inverse()) * &(self * other)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Order as the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, l| num_integer::lcm(acc, l as u64))
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j] as usize;
                len += 1;
            }
            out.push(len);
        }
        out
    }

    pub fn fixed_points(&self) -> usize {
        self.fixed_points_below(self.degree())
    }

    /// Number of fixed points among `0..limit`.
    pub fn fixed_points_below(&self, limit: usize) -> usize {
        self.images[..limit.min(self.degree())]
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i == x as usize)
            .count()
    }

    /// First point moved by `self`, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i != x as usize)
            .map(|(i, _)| i)
    }

    /// 0-based nontrivial cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] || self.images[i] as usize == i {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                j = self.images[j] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// 1-based cycle string; the identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            s.push_str(&pts.join(","));
            s.push(')');
        }
        s
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn extend_to(&self, degree: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), rhs.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| rhs.images[x as usize])
                .collect(),
        }
    }
}

impl Mul for Permutation {
    type Output = Permutation;

    fn mul(self, rhs: Permutation) -> Permutation {
        &self * &rhs
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_print() {
        let p = Permutation::parse("(1,2,3)(4,5)", 6).unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 4, 3, 5]);
        assert_eq!(p.to_cycle_string(), "(1,2,3)(4,5)");
        assert_eq!(p.order(), 6);
        assert_eq!(Permutation::parse("()", 3).unwrap(), Permutation::identity(3));
        assert_eq!(Permutation::parse("", 3).unwrap(), Permutation::identity(3));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Permutation::parse("(1,2", 3).is_err());
        assert!(Permutation::parse("(1,4)", 3).is_err());
        assert!(Permutation::parse("(0,1)", 3).is_err());
        assert!(Permutation::parse("(1,2)(2,3)", 3).is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn right_action_convention() {
        let a = Permutation::parse("(1,2)", 3).unwrap();
        let b = Permutation::parse("(2,3)", 3).unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!((&a * &b).image(0), 2);
        let x = Permutation::parse("(1,2,3)", 3).unwrap();
        assert_eq!(x.conjugate_by(&a), &(&a.inverse() * &x) * &a);
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn group_axioms(a in arb_perm(9), b in arb_perm(9), c in arb_perm(9)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert!((&a.inverse() * &a).is_identity());
            prop_assert!(a.pow(a.order()).is_identity());
            let reparsed = Permutation::parse(&a.to_cycle_string(), 9).unwrap();
            prop_assert_eq!(reparsed, a.clone());
            prop_assert_eq!(a.conjugate_by(&b).order(), a.order());
        }
    }
}
