//! Deciding whether irreducible characters are monomial or quasi solvably
//! induced, with certified witnesses and exhaustive refutations.
//!
//! A character `χ` of `G` is QSI from `U ≤ G` and `φ ∈ Irr(U)` when
//! `k χ = φ^G` for some positive integer `k` and `U / ker φ` is solvable.
//! Comparing degrees pins `k = [G:U] φ(1) / χ(1)`. Conjugate pairs `(U, φ)`
//! induce the same character, so one subgroup per conjugacy class suffices.

pub mod prefilter;
mod verify;
#[cfg(test)]
mod tests;

use std::sync::{Arc, OnceLock};

use serde::Serialize;
use serde_json::{json, Value};

use crate::chartab::{Character, CharacterTable};
use crate::error::{Error, Result};
use crate::permgroup::{
    all_subgroups_with_limits, ConjugacyClasses, Enumeration, PermGroup, SubgroupLattice,
    DEFAULT_ELEMENT_BOUND, DEFAULT_SUBGROUP_COUNT_BOUND, DEFAULT_SUBGROUP_ORDER_BOUND,
};

pub use prefilter::{
    class_fraction_prefilter, simple_subgroup_prefilter, steinberg_kernel_constraint,
};
pub use verify::{induce_pointwise, verify_witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest group whose subgroup lattice is enumerated.
    pub max_group_order: u64,
    /// Largest number of subgroups (conjugates counted) kept in the lattice.
    pub max_subgroups: u64,
    pub prefilters: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_group_order: DEFAULT_SUBGROUP_ORDER_BOUND,
            max_subgroups: DEFAULT_SUBGROUP_COUNT_BOUND,
            prefilters: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Any `φ` with solvable `U / ker φ` and any multiplier `k`.
    Qsi,
    /// Linear `φ` and `k = 1`.
    Monomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    QsiWithWitness,
    MonomialWithWitness,
    RefutedExhaustive,
    RefutedByPrefilter,
    UndecidedCapacity,
}

impl Status {
    /// `Some(true)` for a witness, `Some(false)` for a refutation.
    pub fn decision(self) -> Option<bool> {
        match self {
            Status::QsiWithWitness | Status::MonomialWithWitness => Some(true),
            Status::RefutedExhaustive | Status::RefutedByPrefilter => Some(false),
            Status::UndecidedCapacity => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::QsiWithWitness => "qsi-with-witness",
            Status::MonomialWithWitness => "monomial-with-witness",
            Status::RefutedExhaustive => "refuted-exhaustive",
            Status::RefutedByPrefilter => "refuted-by-prefilter",
            Status::UndecidedCapacity => "undecided-capacity",
        }
    }
}

#[derive(Debug, Clone)]
pub struct QsiWitness {
    pub subgroup: PermGroup,
    /// Index of the subgroup's class in the lattice, `None` for `U = G`
    /// found without enumerating the lattice.
    pub subgroup_class: Option<usize>,
    /// Index of `φ` in the character table of `U`.
    pub char_index: usize,
    pub phi: Character,
    pub multiplier: u64,
    pub kernel_order: u64,
    pub solvable_quotient_order: u64,
}

impl QsiWitness {
    pub fn to_json(&self) -> Value {
        json!({
            "subgroup_generators": self.subgroup.generator_strings(),
            "subgroup_order": self.subgroup.order(),
            "subgroup_class": self.subgroup_class,
            "char_index": self.char_index,
            "phi_values": self.phi.values(),
            "k": self.multiplier,
            "kernel_order": self.kernel_order,
            "solvable_quotient_order": self.solvable_quotient_order,
        })
    }
}

/// What happened to one subgroup class during a search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassOutcome {
    /// `U` misses too much of the given class of `G`.
    ClassFraction { class: usize },
    NonAbelianSimple,
    /// Monomial mode needs `[G:U] = χ(1)`.
    IndexMismatch,
    /// Every candidate `φ` was examined; `kernel_rejected` of them were
    /// discarded by the kernel-order constraint without inducing.
    Searched { tried: usize, kernel_rejected: usize },
    Witness { char_index: usize },
}

impl ClassOutcome {
    pub fn is_prefilter(&self) -> bool {
        matches!(self, ClassOutcome::ClassFraction { .. } | ClassOutcome::NonAbelianSimple)
    }

    fn to_json(&self) -> Value {
        match self {
            ClassOutcome::ClassFraction { class } => json!({"kind": "class-fraction", "class": class}),
            ClassOutcome::NonAbelianSimple => json!({"kind": "non-abelian-simple"}),
            ClassOutcome::IndexMismatch => json!({"kind": "index-mismatch"}),
            ClassOutcome::Searched { tried, kernel_rejected } => {
                json!({"kind": "searched", "tried": tried, "kernel_rejected": kernel_rejected})
            }
            ClassOutcome::Witness { char_index } => json!({"kind": "witness", "char_index": char_index}),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PruningEntry {
    pub subgroup_class: usize,
    pub order: u64,
    pub outcome: ClassOutcome,
}

#[derive(Debug, Clone)]
pub struct QsiVerdict {
    pub character_index: usize,
    pub character: Character,
    pub mode: Mode,
    pub status: Status,
    pub witness: Option<QsiWitness>,
    pub pruning_log: Vec<PruningEntry>,
    /// The bound that stopped the search, for undecided verdicts.
    pub capacity: Option<Error>,
}

impl QsiVerdict {
    /// Decision plus the identity of the witness, for comparing runs.
    pub fn key(&self) -> (Option<bool>, Option<(Option<usize>, usize)>) {
        (
            self.status.decision(),
            self.witness.as_ref().map(|w| (w.subgroup_class, w.char_index)),
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "character_index": self.character_index,
            "degree": self.character.degree() as i64,
            "values": self.character.values(),
            "mode": self.mode,
            "status": self.status.as_str(),
            "witness": self.witness.as_ref().map(QsiWitness::to_json),
            "pruning_log": self.pruning_log.iter().map(|e| json!({
                "subgroup_class": e.subgroup_class,
                "order": e.order,
                "outcome": e.outcome.to_json(),
            })).collect::<Vec<_>>(),
            "capacity": self.capacity.as_ref().map(|e| e.to_string()),
        })
    }
}

#[derive(Debug, Clone)]
pub struct GroupVerdict {
    pub mode: Mode,
    pub verdicts: Vec<QsiVerdict>,
    pub solvable: bool,
}

impl GroupVerdict {
    /// `Some(true)` iff every irreducible has a witness, `Some(false)` if
    /// one is refuted, `None` if undecided.
    pub fn conclusion(&self) -> Option<bool> {
        if self.verdicts.iter().any(|v| v.status.decision() == Some(false)) {
            Some(false)
        } else if self.verdicts.iter().all(|v| v.status.decision() == Some(true)) {
            Some(true)
        } else {
            None
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "mode": self.mode,
            "solvable": self.solvable,
            "conclusion": self.conclusion(),
            "verdicts": self.verdicts.iter().map(QsiVerdict::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Lazily computed data about one subgroup class representative.
struct SubgroupData {
    classes: Arc<ConjugacyClasses>,
    fusion: Vec<usize>,
    intersections: Vec<u64>,
    table: OnceLock<Result<Arc<CharacterTable>>>,
    residual: OnceLock<Result<PermGroup>>,
    simple: OnceLock<Result<bool>>,
}

impl SubgroupData {
    fn new(group: &ConjugacyClasses, u: &PermGroup) -> Result<Self> {
        let classes = Arc::new(ConjugacyClasses::from_enumeration(Arc::new(Enumeration::new(
            u,
            DEFAULT_ELEMENT_BOUND,
        )?)));
        let fusion = group.fusion_from(&classes)?;
        let intersections = prefilter::class_intersections(group, &classes, &fusion);
        Ok(SubgroupData {
            classes,
            fusion,
            intersections,
            table: OnceLock::new(),
            residual: OnceLock::new(),
            simple: OnceLock::new(),
        })
    }

    fn table(&self) -> Result<Arc<CharacterTable>> {
        self.table
            .get_or_init(|| CharacterTable::from_classes(self.classes.clone()).map(Arc::new))
            .clone()
    }

    fn residual(&self) -> Result<PermGroup> {
        self.residual
            .get_or_init(|| self.classes.group().solvable_residual())
            .clone()
    }

    fn is_nonabelian_simple(&self) -> Result<bool> {
        self.simple
            .get_or_init(|| self.classes.is_nonabelian_simple())
            .clone()
    }
}

/// Shared state for deciding many characters of one group.
pub struct QsiContext {
    table: CharacterTable,
    options: SearchOptions,
    lattice: OnceLock<Result<Arc<SubgroupLattice>>>,
    subgroups: OnceLock<Vec<OnceLock<Result<Arc<SubgroupData>>>>>,
    solvable: OnceLock<Result<bool>>,
}

impl QsiContext {
    pub fn new(group: &PermGroup, options: SearchOptions) -> Result<Self> {
        let table = crate::chartab::character_table(group)?;
        Ok(Self::from_table(table, options))
    }

    pub fn from_table(table: CharacterTable, options: SearchOptions) -> Self {
        QsiContext {
            table,
            options,
            lattice: OnceLock::new(),
            subgroups: OnceLock::new(),
            solvable: OnceLock::new(),
        }
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn group(&self) -> &PermGroup {
        self.table.group()
    }

    pub fn options(&self) -> SearchOptions {
        self.options
    }

    pub fn is_solvable(&self) -> Result<bool> {
        self.solvable.get_or_init(|| self.group().is_solvable()).clone()
    }

    pub fn lattice(&self) -> Result<Arc<SubgroupLattice>> {
        self.lattice
            .get_or_init(|| {
                all_subgroups_with_limits(self.group(), self.options.max_group_order, self.options.max_subgroups)
                    .map(Arc::new)
            })
            .clone()
    }

    fn subgroup(&self, lattice: &SubgroupLattice, index: usize) -> Result<Arc<SubgroupData>> {
        let slots = self
            .subgroups
            .get_or_init(|| (0..lattice.len()).map(|_| OnceLock::new()).collect());
        slots[index]
            .get_or_init(|| {
                SubgroupData::new(self.table.classes(), &lattice.classes()[index].group).map(Arc::new)
            })
            .clone()
    }

    /// Decides one irreducible of `G`, given by its index in the table.
    pub fn decide(&self, character_index: usize, mode: Mode) -> Result<QsiVerdict> {
        let chi = self.table.irreducible(character_index).clone();
        let mut verdict = QsiVerdict {
            character_index,
            character: chi.clone(),
            mode,
            status: Status::UndecidedCapacity,
            witness: None,
            pruning_log: Vec::new(),
            capacity: None,
        };

        // U = G needs no lattice: φ = χ, k = 1
        if let Some(w) = self.whole_group_witness(&chi, mode)? {
            verdict.status = positive(mode);
            verdict.witness = Some(w);
            return Ok(verdict);
        }

        let lattice = match self.lattice() {
            Ok(l) => l,
            Err(e @ Error::Capacity { .. }) => {
                verdict.capacity = Some(e);
                return Ok(verdict);
            }
            Err(e) => return Err(e),
        };
        let g_order = self.table.classes().group_order();
        for index in (0..lattice.len()).rev() {
            let class = &lattice.classes()[index];
            let data = self.subgroup(&lattice, index)?;
            let outcome = examine(self.table.classes(), self.options, &chi, mode, &data)?;
            let found = match &outcome {
                ClassOutcome::Witness { char_index } => Some(*char_index),
                _ => None,
            };
            verdict.pruning_log.push(PruningEntry {
                subgroup_class: index,
                order: class.order(),
                outcome,
            });
            if let Some(char_index) = found {
                let table = data.table()?;
                let phi = table.irreducible(char_index).clone();
                let kernel_order = phi.kernel_order();
                verdict.witness = Some(QsiWitness {
                    subgroup: class.group.clone(),
                    subgroup_class: Some(index),
                    char_index,
                    multiplier: multiplier(g_order, class.order(), &phi, &chi).unwrap(),
                    kernel_order,
                    solvable_quotient_order: class.order() / kernel_order,
                    phi,
                });
                verdict.status = positive(mode);
                return Ok(verdict);
            }
        }
        verdict.status = if verdict.pruning_log.iter().all(|e| e.outcome.is_prefilter()) {
            Status::RefutedByPrefilter
        } else {
            Status::RefutedExhaustive
        };
        Ok(verdict)
    }

    fn whole_group_witness(&self, chi: &Character, mode: Mode) -> Result<Option<QsiWitness>> {
        let g = self.group();
        let ok = match mode {
            Mode::Monomial => chi.is_linear(),
            Mode::Qsi => {
                if self.is_solvable()? {
                    true
                } else {
                    let kernel = chi.kernel()?;
                    let residual = g.solvable_residual()?;
                    residual.is_subgroup_of(&kernel)
                }
            }
        };
        if !ok {
            return Ok(None);
        }
        let kernel_order = chi.kernel_order();
        Ok(Some(QsiWitness {
            subgroup: g.clone(),
            subgroup_class: None,
            char_index: self.table.position(chi).expect("irreducible of this table"),
            phi: chi.clone(),
            multiplier: 1,
            kernel_order,
            solvable_quotient_order: g.order() / kernel_order,
        }))
    }

    pub fn decide_all(&self, mode: Mode) -> Result<GroupVerdict> {
        let verdicts = (0..self.table.len())
            .map(|i| self.decide(i, mode))
            .collect::<Result<Vec<_>>>()?;
        let result = GroupVerdict {
            mode,
            verdicts,
            solvable: self.is_solvable()?,
        };
        // QSI groups are solvable, and so in particular are monomial ones
        if result.conclusion() == Some(true) && !result.solvable {
            return Err(Error::Integrity(
                "a non-solvable group was certified QSI".into(),
            ));
        }
        if mode == Mode::Qsi && result.solvable && result.conclusion() != Some(true) {
            return Err(Error::Integrity("a solvable group was not certified QSI".into()));
        }
        Ok(result)
    }
}

fn examine(
    group: &Arc<ConjugacyClasses>,
    options: SearchOptions,
    chi: &Character,
    mode: Mode,
    data: &SubgroupData,
) -> Result<ClassOutcome> {
    let g_order = group.group_order();
    let u_order = data.classes.group_order();
    if mode == Mode::Monomial && (g_order / u_order) as i128 != chi.degree() {
        return Ok(ClassOutcome::IndexMismatch);
    }
    if options.prefilters {
        if let Some(class) = prefilter::class_fraction_violation(chi, &data.intersections) {
            return Ok(ClassOutcome::ClassFraction { class });
        }
        if !chi.is_trivial() && data.is_nonabelian_simple()? {
            return Ok(ClassOutcome::NonAbelianSimple);
        }
    }
    let table = data.table()?;
    let mut order: Vec<usize> = (0..table.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(table.irreducible(i).degree()), i));
    let mut tried = 0;
    let mut kernel_rejected = 0;
    for i in order {
        let phi = table.irreducible(i);
        if mode == Mode::Monomial && !phi.is_linear() {
            continue;
        }
        let Some(k) = multiplier(g_order, u_order, phi, chi) else {
            continue;
        };
        tried += 1;
        if options.prefilters && !prefilter::kernel_degree_constraint(g_order, chi.degree(), phi) {
            kernel_rejected += 1;
            continue;
        }
        let induced = phi.induce(group, &data.fusion)?;
        if induced != chi.scale(k as i64) {
            continue;
        }
        if mode == Mode::Qsi {
            let kernel = phi.kernel()?;
            if !data.residual()?.is_subgroup_of(&kernel) {
                continue;
            }
        }
        return Ok(ClassOutcome::Witness { char_index: i });
    }
    Ok(ClassOutcome::Searched {
        tried,
        kernel_rejected,
    })
}

fn positive(mode: Mode) -> Status {
    match mode {
        Mode::Qsi => Status::QsiWithWitness,
        Mode::Monomial => Status::MonomialWithWitness,
    }
}

/// `k = [G:U] φ(1) / χ(1)` when it is a positive integer (and 1 for the
/// monomial case is checked by the caller through the index).
fn multiplier(g_order: u64, u_order: u64, phi: &Character, chi: &Character) -> Option<u64> {
    let num = (g_order / u_order) as i128 * phi.degree();
    (num % chi.degree() == 0).then(|| (num / chi.degree()) as u64)
}

pub fn decide_qsi_character(group: &PermGroup, chi: &Character, options: SearchOptions) -> Result<QsiVerdict> {
    decide_character(group, chi, Mode::Qsi, options)
}

pub fn decide_monomial_character(group: &PermGroup, chi: &Character, options: SearchOptions) -> Result<QsiVerdict> {
    decide_character(group, chi, Mode::Monomial, options)
}

fn decide_character(group: &PermGroup, chi: &Character, mode: Mode, options: SearchOptions) -> Result<QsiVerdict> {
    let ctx = QsiContext::new(group, options)?;
    let index = ctx
        .table()
        .irreducibles()
        .iter()
        .position(|x| x.values() == chi.values() && x.classes().representatives() == chi.classes().representatives())
        .ok_or_else(|| Error::Domain("character is not an irreducible of the group".into()))?;
    ctx.decide(index, mode)
}

pub fn decide_qsi_group(group: &PermGroup, options: SearchOptions) -> Result<GroupVerdict> {
    QsiContext::new(group, options)?.decide_all(Mode::Qsi)
}

pub fn decide_monomial_group(group: &PermGroup, options: SearchOptions) -> Result<GroupVerdict> {
    QsiContext::new(group, options)?.decide_all(Mode::Monomial)
}

/// If `G` is QSI then so is `G/N`; false only when the computed verdicts
/// contradict that implication.
pub fn quotient_transfer_check(group: &GroupVerdict, quotient: &GroupVerdict) -> bool {
    group.conclusion() != Some(true) || quotient.conclusion() == Some(true)
}

/// Searches a single subgroup `V` of the group of `target` for a `ψ ∈ Irr(V)`
/// with `ψ^N = k χ` and `V / ker ψ` solvable.
pub fn search_subgroup(target: &Character, v: &PermGroup, mode: Mode) -> Result<Option<QsiWitness>> {
    let data = SubgroupData::new(target.classes(), v)?;
    let options = SearchOptions {
        prefilters: false,
        ..SearchOptions::default()
    };
    match examine(target.classes(), options, target, mode, &data)? {
        ClassOutcome::Witness { char_index } => {
            let phi = data.table()?.irreducible(char_index).clone();
            let kernel_order = phi.kernel_order();
            let n_order = target.classes().group_order();
            Ok(Some(QsiWitness {
                subgroup: v.clone(),
                subgroup_class: None,
                char_index,
                multiplier: multiplier(n_order, v.order(), &phi, target).unwrap(),
                kernel_order,
                solvable_quotient_order: v.order() / kernel_order,
                phi,
            }))
        }
        _ => Ok(None),
    }
}

/// The descent step for normal subgroups: if `ρ ∈ Irr(G)` is QSI from `U`
/// and covers the `G`-invariant `χ ∈ Irr(N)`, then `χ` is QSI from `U ∩ N`.
/// Returns the witness found inside `U ∩ N`.
pub fn descent_witness(
    group: &PermGroup,
    chi: &Character,
    rho: &Character,
    rho_witness: &QsiWitness,
) -> Result<Option<QsiWitness>> {
    let n = chi.group();
    if !n.is_normal_in(group) {
        return Err(Error::Domain("subgroup is not normal".into()));
    }
    if !chi.is_invariant_in(group) {
        return Err(Error::Domain("character is not invariant in the overgroup".into()));
    }
    if rho.restrict_to(chi.classes())?.multiplicity(chi)? == 0 {
        return Err(Error::Domain("character is not a constituent of the restriction".into()));
    }
    let v = rho_witness.subgroup.intersection(n, DEFAULT_ELEMENT_BOUND)?;
    search_subgroup(chi, &v, Mode::Qsi)
}
