//! Exact class functions and character tables.

mod dixon;
#[cfg(test)]
mod tests;

use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;
use serde_json::{json, Value};

use crate::cyclotomic::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::permgroup::{conjugacy_classes, ConjugacyClasses, PermGroup, DEFAULT_ELEMENT_BOUND};

/// A class function: one cyclotomic value per conjugacy class.
#[derive(Clone)]
pub struct Character {
    classes: Arc<ConjugacyClasses>,
    values: Vec<Cyclotomic>,
}

fn same_classes(a: &Arc<ConjugacyClasses>, b: &Arc<ConjugacyClasses>) -> bool {
    Arc::ptr_eq(a, b)
        || (a.group_order() == b.group_order() && a.representatives() == b.representatives())
}

impl Character {
    pub fn from_values(classes: Arc<ConjugacyClasses>, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != classes.len() {
            return Err(Error::MalformedInput(format!(
                "{} values for {} classes",
                values.len(),
                classes.len()
            )));
        }
        Ok(Character { classes, values })
    }

    pub fn from_integers(classes: Arc<ConjugacyClasses>, values: &[i64]) -> Result<Self> {
        Self::from_values(classes, values.iter().map(|&v| Cyclotomic::from_integer(v)).collect())
    }

    pub fn trivial(classes: &Arc<ConjugacyClasses>) -> Self {
        Character {
            classes: classes.clone(),
            values: vec![Cyclotomic::one(); classes.len()],
        }
    }

    pub fn regular(classes: &Arc<ConjugacyClasses>) -> Self {
        let mut values = vec![Cyclotomic::zero(); classes.len()];
        values[0] = Cyclotomic::from_integer(classes.group_order() as i64);
        Character {
            classes: classes.clone(),
            values,
        }
    }

    /// Number of fixed points on the natural points of the group.
    pub fn permutation(classes: &Arc<ConjugacyClasses>) -> Self {
        let values = classes
            .representatives()
            .iter()
            .map(|g| Cyclotomic::from_integer(g.fixed_points() as i64))
            .collect();
        Character {
            classes: classes.clone(),
            values,
        }
    }

    pub fn classes(&self) -> &Arc<ConjugacyClasses> {
        &self.classes
    }

    pub fn group(&self) -> &PermGroup {
        self.classes.group()
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    /// Value at an arbitrary group element.
    pub fn value_at(&self, g: &crate::Permutation) -> Option<&Cyclotomic> {
        self.classes.class_of(g).map(|c| &self.values[c])
    }

    /// Value at the identity, as an integer.
    pub fn degree(&self) -> i128 {
        self.values[0]
            .to_integer()
            .expect("class functions built here take integer values at 1")
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| *v == Cyclotomic::one())
    }

    pub fn is_linear(&self) -> bool {
        self.degree() == 1
    }

    fn check_same(&self, other: &Character) -> Result<()> {
        if same_classes(&self.classes, &other.classes) {
            Ok(())
        } else {
            Err(Error::Domain("characters belong to different groups".into()))
        }
    }

    /// `(1/|G|) Σ_g a(g) · conj(b(g))`.
    pub fn inner_product(&self, other: &Character) -> Result<Cyclotomic> {
        self.check_same(other)?;
        let sum: Cyclotomic = self
            .values
            .iter()
            .zip(&other.values)
            .zip(self.classes.sizes())
            .filter(|((a, b), _)| !a.is_zero() && !b.is_zero())
            .map(|((a, b), &h)| (a * &b.conj()).scale(Ratio::from_integer(h as i128)))
            .sum();
        Ok(sum.scale(Rational::new(1, self.classes.group_order() as i128)))
    }

    /// Inner product that must be a rational integer, as for two characters.
    pub fn multiplicity(&self, other: &Character) -> Result<i128> {
        let ip = self.inner_product(other)?;
        ip.to_integer().ok_or_else(|| {
            Error::Integrity(format!("inner product {ip} of characters is not an integer"))
        })
    }

    pub fn is_irreducible(&self) -> bool {
        matches!(self.multiplicity(self), Ok(1)) && self.degree() > 0
    }

    pub fn add(&self, other: &Character) -> Result<Character> {
        self.check_same(other)?;
        Ok(Character {
            classes: self.classes.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Character) -> Result<Character> {
        self.check_same(other)?;
        Ok(Character {
            classes: self.classes.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }

    /// Pointwise product.
    pub fn tensor(&self, other: &Character) -> Result<Character> {
        self.check_same(other)?;
        Ok(Character {
            classes: self.classes.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn scale(&self, k: i64) -> Character {
        let k = Ratio::from_integer(k as i128);
        Character {
            classes: self.classes.clone(),
            values: self.values.iter().map(|v| v.scale(k)).collect(),
        }
    }

    pub fn conj(&self) -> Character {
        Character {
            classes: self.classes.clone(),
            values: self.values.iter().map(Cyclotomic::conj).collect(),
        }
    }

    /// Classes on which the value equals the degree.
    pub fn kernel_classes(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&k| self.values[k] == self.values[0])
            .collect()
    }

    pub fn kernel_order(&self) -> u64 {
        self.kernel_classes().iter().map(|&k| self.classes.size(k)).sum()
    }

    /// `{g : χ(g) = χ(1)}` as a normal subgroup.
    pub fn kernel(&self) -> Result<PermGroup> {
        let reps: Vec<_> = self
            .kernel_classes()
            .into_iter()
            .map(|k| self.classes.representative(k).clone())
            .collect();
        let ker = self.group().normal_closure_of(&reps)?;
        if ker.order() != self.kernel_order() {
            return Err(Error::Integrity(format!(
                "kernel classes cover {} elements but generate a group of order {}",
                self.kernel_order(),
                ker.order()
            )));
        }
        Ok(ker)
    }

    /// Pulls the values back to a subgroup along a class fusion map.
    pub fn restrict(&self, sub: &Arc<ConjugacyClasses>, fusion: &[usize]) -> Result<Character> {
        check_fusion(sub, &self.classes, fusion)?;
        Ok(Character {
            classes: sub.clone(),
            values: fusion.iter().map(|&k| self.values[k].clone()).collect(),
        })
    }

    /// Restriction to a subgroup, computing the fusion.
    pub fn restrict_to(&self, sub: &Arc<ConjugacyClasses>) -> Result<Character> {
        let fusion = self.classes.fusion_from(sub)?;
        self.restrict(sub, &fusion)
    }

    /// `φ^G(g) = |C_G(g)| Σ_{u ~ g} φ(u) / |C_U(u)|`, summed over the classes
    /// of `U` fusing into the class of `g`.
    pub fn induce(&self, group: &Arc<ConjugacyClasses>, fusion: &[usize]) -> Result<Character> {
        check_fusion(&self.classes, group, fusion)?;
        let sub_order = self.classes.group_order() as i128;
        let mut values = vec![Cyclotomic::zero(); group.len()];
        for (i, &k) in fusion.iter().enumerate() {
            if self.values[i].is_zero() {
                continue;
            }
            let coeff = Rational::new(
                group.centralizer_order(k) as i128 * self.classes.size(i) as i128,
                sub_order,
            );
            values[k] = &values[k] + &self.values[i].scale(coeff);
        }
        Ok(Character {
            classes: group.clone(),
            values,
        })
    }

    /// Induction to an overgroup, computing the fusion.
    pub fn induce_to(&self, group: &Arc<ConjugacyClasses>) -> Result<Character> {
        let fusion = group.fusion_from(&self.classes)?;
        self.induce(group, &fusion)
    }

    /// True iff the values are constant on the orbits of `overgroup` acting
    /// by conjugation, the group of this character being normal in it.
    pub fn is_invariant_in(&self, overgroup: &PermGroup) -> bool {
        self.classes.representatives().iter().enumerate().all(|(k, n)| {
            overgroup
                .generators()
                .iter()
                .all(|s| self.value_at(&n.conjugate_by(s)) == Some(&self.values[k]))
        })
    }

    /// Multiplicities against a list of irreducibles.
    pub fn decompose(&self, table: &CharacterTable) -> Result<Vec<i128>> {
        table.irreducibles.iter().map(|chi| self.multiplicity(chi)).collect()
    }
}

fn check_fusion(sub: &ConjugacyClasses, group: &ConjugacyClasses, fusion: &[usize]) -> Result<()> {
    for g in sub.group().generators() {
        if !group.group().contains(g) {
            return Err(Error::Domain(format!("{g} is not an element of the overgroup")));
        }
    }
    if fusion.len() != sub.len() {
        return Err(Error::Integrity(format!(
            "fusion map has {} entries for {} classes",
            fusion.len(),
            sub.len()
        )));
    }
    for (i, &k) in fusion.iter().enumerate() {
        if k >= group.len() || sub.orders()[i] != group.orders()[k] {
            return Err(Error::Integrity(format!("fusion of class {i} is inconsistent")));
        }
    }
    Ok(())
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        same_classes(&self.classes, &other.classes) && self.values == other.values
    }
}

impl Eq for Character {}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.values).finish()
    }
}

/// Complete table of irreducible characters.
pub struct CharacterTable {
    classes: Arc<ConjugacyClasses>,
    irreducibles: Vec<Character>,
}

pub fn character_table(group: &PermGroup) -> Result<CharacterTable> {
    CharacterTable::from_classes(Arc::new(conjugacy_classes(group, DEFAULT_ELEMENT_BOUND)?))
}

impl CharacterTable {
    pub fn from_classes(classes: Arc<ConjugacyClasses>) -> Result<Self> {
        let mut irreducibles = dixon::irreducibles(&classes)?;
        irreducibles.sort_by(|a, b| {
            (a.degree(), !a.is_trivial(), &a.values).cmp(&(b.degree(), !b.is_trivial(), &b.values))
        });
        let table = CharacterTable {
            classes,
            irreducibles,
        };
        table.validate()?;
        Ok(table)
    }

    /// Exact row orthogonality and the degree equation.
    fn validate(&self) -> Result<()> {
        let order = self.classes.group_order() as i128;
        let degree_squares: i128 = self.irreducibles.iter().map(|c| c.degree() * c.degree()).sum();
        if degree_squares != order {
            return Err(Error::Integrity(format!(
                "squared degrees sum to {degree_squares}, not {order}"
            )));
        }
        for (i, a) in self.irreducibles.iter().enumerate() {
            if a.degree() <= 0 || order % a.degree() != 0 {
                return Err(Error::Integrity(format!("invalid degree {}", a.degree())));
            }
            for b in &self.irreducibles[i..] {
                let expect = i128::from(std::ptr::eq(a, b));
                if a.multiplicity(b)? != expect {
                    return Err(Error::Integrity("row orthogonality fails".into()));
                }
            }
        }
        let r = self.classes.len();
        for i in 0..r {
            for j in i..r {
                let sum: Cyclotomic = self
                    .irreducibles
                    .iter()
                    .map(|chi| &chi.values[i] * &chi.values[j].conj())
                    .sum();
                let expect = if i == j { self.classes.centralizer_order(i) as i64 } else { 0 };
                if sum != Cyclotomic::from_integer(expect) {
                    return Err(Error::Integrity("column orthogonality fails".into()));
                }
            }
        }
        Ok(())
    }

    pub fn classes(&self) -> &Arc<ConjugacyClasses> {
        &self.classes
    }

    pub fn group(&self) -> &PermGroup {
        self.classes.group()
    }

    pub fn irreducibles(&self) -> &[Character] {
        &self.irreducibles
    }

    pub fn irreducible(&self, i: usize) -> &Character {
        &self.irreducibles[i]
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn degrees(&self) -> Vec<i128> {
        self.irreducibles.iter().map(Character::degree).collect()
    }

    /// Index of an irreducible equal to `chi`.
    pub fn position(&self, chi: &Character) -> Option<usize> {
        self.irreducibles.iter().position(|x| x == chi)
    }

    pub fn to_json(&self) -> Value {
        let classes: Vec<Value> = (0..self.classes.len())
            .map(|k| {
                json!({
                    "representative": self.classes.representative(k).to_cycle_string(),
                    "size": self.classes.size(k),
                    "element_order": self.classes.orders()[k],
                })
            })
            .collect();
        let irreducibles: Vec<Value> = self
            .irreducibles
            .iter()
            .map(|c| json!({ "degree": c.degree() as i64, "values": c.values }))
            .collect();
        json!({
            "group_order": self.classes.group_order(),
            "classes": classes,
            "irreducibles": irreducibles,
        })
    }

    /// Plain-text rendering with one row per irreducible.
    pub fn render(&self) -> String {
        let mut rows: Vec<Vec<String>> = Vec::new();
        rows.push(
            std::iter::once(String::new())
                .chain(self.classes.orders().iter().zip(self.classes.sizes()).map(|(o, s)| format!("{o}:{s}")))
                .collect(),
        );
        for (i, chi) in self.irreducibles.iter().enumerate() {
            rows.push(
                std::iter::once(format!("X.{}", i + 1))
                    .chain(chi.values.iter().map(|v| v.to_string()))
                    .collect(),
            );
        }
        let widths: Vec<usize> = (0..rows[0].len())
            .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::from("order:size\n");
        for row in rows {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, &w)| format!("{cell:>w$}"))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
