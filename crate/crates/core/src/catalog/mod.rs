//! Named groups and subgroups shipped as generator files, plus the groups of
//! small order.
//!
//! The built-in files are compiled in. A directory with the same layout (a
//! `manifest.json` next to the `.gens` files) can be used instead.

mod small;
#[cfg(test)]
mod tests;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chartab::Character;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::permgroup::{conjugacy_classes, parse_generator_file, ConjugacyClasses, PermGroup};

pub use small::{small_groups, SmallGroup};

const MANIFEST: &str = include_str!("../../fixtures/manifest.json");

const BUILTIN: &[(&str, &str)] = &[
    ("S3.gens", include_str!("../../fixtures/S3.gens")),
    ("D8.gens", include_str!("../../fixtures/D8.gens")),
    ("Q8.gens", include_str!("../../fixtures/Q8.gens")),
    ("D10.gens", include_str!("../../fixtures/D10.gens")),
    ("A4.gens", include_str!("../../fixtures/A4.gens")),
    ("F20.gens", include_str!("../../fixtures/F20.gens")),
    ("S4.gens", include_str!("../../fixtures/S4.gens")),
    ("SL23.gens", include_str!("../../fixtures/SL23.gens")),
    ("A5.gens", include_str!("../../fixtures/A5.gens")),
    ("PSL25.gens", include_str!("../../fixtures/PSL25.gens")),
    ("S5.gens", include_str!("../../fixtures/S5.gens")),
    ("PSL27.gens", include_str!("../../fixtures/PSL27.gens")),
    ("PSL32.gens", include_str!("../../fixtures/PSL32.gens")),
    ("A6.gens", include_str!("../../fixtures/A6.gens")),
    ("PSL29.gens", include_str!("../../fixtures/PSL29.gens")),
    ("PSL211.gens", include_str!("../../fixtures/PSL211.gens")),
    ("A7.gens", include_str!("../../fixtures/A7.gens")),
    ("M11.gens", include_str!("../../fixtures/M11.gens")),
    ("PSU42.gens", include_str!("../../fixtures/PSU42.gens")),
    ("A4_in_A5.gens", include_str!("../../fixtures/A4_in_A5.gens")),
    ("A5_in_A5.gens", include_str!("../../fixtures/A5_in_A5.gens")),
    ("PSU42_U160.gens", include_str!("../../fixtures/PSU42_U160.gens")),
];

/// A Lie-type name under which a catalog group is known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieTypeTag {
    pub family: String,
    pub n: u32,
    pub q: u64,
    /// Whether the group is the simply connected cover rather than the
    /// simple quotient.
    #[serde(default)]
    pub simply_connected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub file: String,
    pub expected_order: u64,
    #[serde(default)]
    pub notes: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lie_type: Vec<LieTypeTag>,
}

/// A linear character given by its image order `m` and, for each generator
/// in the subgroup's file, the exponent `k` with value `E(m)^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearCharacterDatum {
    pub order: u32,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDatum {
    pub id: String,
    pub parent: String,
    pub file: String,
    pub expected_order: u64,
    #[serde(default)]
    pub notes: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linear_character: Option<LinearCharacterDatum>,
}

#[derive(Clone, Debug, Deserialize)]
struct Manifest {
    groups: Vec<CatalogEntry>,
    #[serde(default)]
    subgroups: Vec<SubgroupDatum>,
}

#[derive(Clone, Debug)]
enum Source {
    Builtin,
    Dir(PathBuf),
}

#[derive(Clone, Debug)]
pub struct Catalog {
    manifest: Manifest,
    source: Source,
}

/// A loaded subgroup together with its parent and optional linear character.
#[derive(Clone, Debug)]
pub struct LoadedSubgroup {
    pub datum: SubgroupDatum,
    pub parent: PermGroup,
    pub group: PermGroup,
    pub classes: Arc<ConjugacyClasses>,
    pub character: Option<Character>,
}

impl Catalog {
    pub fn builtin() -> Self {
        let manifest = serde_json::from_str(MANIFEST).expect("built-in manifest parses");
        Catalog { manifest, source: Source::Builtin }
    }

    pub fn from_dir(path: impl AsRef<Path>) -> Result<Self> {
        let dir = path.as_ref().to_path_buf();
        let text = read_path(&dir.join("manifest.json"))?;
        let manifest = serde_json::from_str(&text)
            .map_err(|e| Error::MalformedInput(format!("{}: {e}", dir.join("manifest.json").display())))?;
        Ok(Catalog { manifest, source: Source::Dir(dir) })
    }

    pub fn ids(&self) -> Vec<&str> {
        self.manifest.groups.iter().map(|e| e.id.as_str()).collect()
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.manifest.groups
    }

    pub fn subgroups(&self) -> &[SubgroupDatum] {
        &self.manifest.subgroups
    }

    pub fn entry(&self, id: &str) -> Result<&CatalogEntry> {
        self.manifest
            .groups
            .iter()
            .find(|e| e.id.eq_ignore_ascii_case(id))
            .ok_or_else(|| Error::NotFound(format!("no catalog group `{id}`")))
    }

    pub fn subgroup(&self, id: &str) -> Result<&SubgroupDatum> {
        self.manifest
            .subgroups
            .iter()
            .find(|e| e.id.eq_ignore_ascii_case(id))
            .ok_or_else(|| Error::NotFound(format!("no catalog subgroup `{id}`")))
    }

    fn read(&self, file: &str) -> Result<String> {
        match &self.source {
            Source::Builtin => BUILTIN
                .iter()
                .find(|(name, _)| *name == file)
                .map(|(_, text)| text.to_string())
                .ok_or_else(|| Error::NotFound(format!("no built-in file `{file}`"))),
            Source::Dir(dir) => read_path(&dir.join(file)),
        }
    }

    fn load_checked(&self, id: &str, file: &str, expected: u64) -> Result<PermGroup> {
        let g = parse_generator_file(&self.read(file)?)
            .map_err(|e| Error::MalformedInput(format!("{file}: {e}")))?;
        if g.order() != expected {
            return Err(Error::Integrity(format!(
                "`{id}` has order {}, the manifest says {expected}",
                g.order()
            )));
        }
        Ok(g)
    }

    /// Loads a group, checking its order against the manifest.
    pub fn load(&self, id: &str) -> Result<PermGroup> {
        let e = self.entry(id)?;
        self.load_checked(&e.id, &e.file, e.expected_order)
    }

    /// Loads a subgroup and its parent, checks containment and builds the
    /// linear character if one is recorded.
    pub fn load_subgroup(&self, id: &str) -> Result<LoadedSubgroup> {
        let datum = self.subgroup(id)?.clone();
        let parent = self.load(&datum.parent)?;
        let group = self.load_checked(&datum.id, &datum.file, datum.expected_order)?;
        if group.degree() != parent.degree() || !group.is_subgroup_of(&parent) {
            return Err(Error::Integrity(format!("`{}` is not a subgroup of `{}`", datum.id, datum.parent)));
        }
        let classes = Arc::new(conjugacy_classes(&group, datum.expected_order)?);
        let character = match &datum.linear_character {
            Some(lc) => Some(linear_character(&classes, lc)?),
            None => None,
        };
        Ok(LoadedSubgroup { datum, parent, group, classes, character })
    }
}

fn read_path(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::NotFound(path.display().to_string()),
        _ => Error::MalformedInput(format!("{}: {e}", path.display())),
    })
}

/// Builds the linear character sending generator `i` of the group to
/// `E(m)^exponents[i]`, failing if that assignment is not a homomorphism.
pub fn linear_character(classes: &Arc<ConjugacyClasses>, datum: &LinearCharacterDatum) -> Result<Character> {
    let group = classes.group();
    let gens = group.generators();
    if datum.order == 0 || datum.exponents.len() != gens.len() {
        return Err(Error::MalformedInput(format!(
            "linear character needs a positive order and {} exponents",
            gens.len()
        )));
    }
    let m = datum.order;
    let en = classes.enumeration();
    let gen_idx: Vec<usize> = gens.iter().map(|g| en.index_of(g).expect("generator is enumerated")).collect();
    let mut exp = vec![u32::MAX; en.len()];
    let start = en.identity_index();
    exp[start] = 0;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for (&s, &e) in gen_idx.iter().zip(&datum.exponents) {
            let y = en.mul(x, s);
            let v = (exp[x] + e % m) % m;
            if exp[y] == u32::MAX {
                exp[y] = v;
                stack.push(y);
            } else if exp[y] != v {
                return Err(Error::Integrity(
                    "generator exponents do not define a homomorphism".into(),
                ));
            }
        }
    }
    let values = (0..classes.len())
        .map(|c| {
            let r = en.index_of(classes.representative(c)).expect("representative is enumerated");
            Cyclotomic::root_of_unity(m, exp[r] as i64)
        })
        .collect();
    Character::from_values(classes.clone(), values)
}

/// Loads a built-in group.
pub fn load(id: &str) -> Result<PermGroup> {
    Catalog::builtin().load(id)
}
