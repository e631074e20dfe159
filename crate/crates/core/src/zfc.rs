//! Audit a finite membership structure `(Σ, N)` against the translated ZFC
//! axioms. `N[a,b]` means `b ∈ a`; the set of `a` is its row `N[a,#]`.
//!
//! Every sub-check evaluates the axiom literally on the finite model. A
//! failing axiom is reported with a witness, never raised as an error.
//! Per-element checks scan Σ from the last element down and report the first
//! failure they meet, so witnesses sit at the top of the model.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hf::{self, HfCode};
use crate::pairing::{FinDomain, FinPairing};

/// Largest `k` for which `V_k` is materialized (65 536 elements).
pub const MAX_VK: u32 = 5;

/// A finite model: a domain Σ and the membership rows of its elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelDesc {
    sigma: FinDomain,
    /// Sorted member positions of each element.
    rows: Vec<Vec<u32>>,
}

impl ModelDesc {
    pub fn from_pairing(n: &FinPairing) -> Result<Self> {
        if n.left() != n.right() {
            return Err(Error::Model("N must relate Σ to itself".into()));
        }
        let rows = (0..n.left().len())
            .map(|a| {
                n.row(a)
                    .iter()
                    .enumerate()
                    .filter_map(|(b, &x)| x.then_some(b as u32))
                    .collect()
            })
            .collect();
        Ok(ModelDesc {
            sigma: n.left().clone(),
            rows,
        })
    }

    /// Rows given as member positions; they are sorted and deduplicated.
    pub fn from_rows(sigma: FinDomain, mut rows: Vec<Vec<u32>>) -> Result<Self> {
        if rows.len() != sigma.len() {
            return Err(Error::Model(format!(
                "{} rows for {} elements",
                rows.len(),
                sigma.len()
            )));
        }
        for row in &mut rows {
            row.sort_unstable();
            row.dedup();
            if row.last().is_some_and(|&b| b as usize >= sigma.len()) {
                return Err(Error::Model("row refers to a position outside Σ".into()));
            }
        }
        Ok(ModelDesc { sigma, rows })
    }

    /// The truncation `V_k`: codes `0..|V_k|` with bit membership.
    pub fn vk(k: u32) -> Result<Self> {
        if k > MAX_VK {
            return Err(Error::Model(format!(
                "V_{k} is too large to materialize (k ≤ {MAX_VK})"
            )));
        }
        let size = hf::stage_size(k).expect("k ≤ 5") as usize;
        let rows = (0..size as u64)
            .map(|n| {
                HfCode::from(n)
                    .member_indices()
                    .into_iter()
                    .map(|m| m as u32)
                    .collect()
            })
            .collect();
        Ok(ModelDesc {
            sigma: FinDomain::range(size),
            rows,
        })
    }

    /// `vk:<k>` shorthand.
    pub fn parse_shorthand(text: &str) -> Option<Result<Self>> {
        let k = text.strip_prefix("vk:")?;
        Some(
            k.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse {
                    position: 3,
                    message: format!("`{k}` is not a stage"),
                })
                .and_then(ModelDesc::vk),
        )
    }

    pub fn sigma(&self) -> &FinDomain {
        &self.sigma
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.rows[a]
    }

    pub fn mem(&self, a: usize, b: usize) -> bool {
        self.rows[a].binary_search(&(b as u32)).is_ok()
    }

    /// Dense pairing view; only sensible for small models.
    pub fn to_pairing(&self) -> FinPairing {
        FinPairing::from_fn(self.sigma.clone(), self.sigma.clone(), |a, b| {
            self.mem(a, b)
        })
    }

    fn labels(&self, row: &[u32]) -> Vec<String> {
        row.iter()
            .map(|&b| self.sigma.label(b as usize).to_string())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Foundation,
    SetsAreSets,
    Extensionality,
    Union,
    Powerset,
    Infinity,
    Choice,
    Separation,
    Replacement,
}

impl Axiom {
    pub const ALL: [Axiom; 9] = [
        Axiom::Foundation,
        Axiom::SetsAreSets,
        Axiom::Extensionality,
        Axiom::Union,
        Axiom::Powerset,
        Axiom::Infinity,
        Axiom::Choice,
        Axiom::Separation,
        Axiom::Replacement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Foundation => "foundation",
            Axiom::SetsAreSets => "sets-are-sets",
            Axiom::Extensionality => "extensionality",
            Axiom::Union => "union",
            Axiom::Powerset => "powerset",
            Axiom::Infinity => "infinity",
            Axiom::Choice => "choice",
            Axiom::Separation => "separation",
            Axiom::Replacement => "replacement",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    /// No counterexample among the sampled cases.
    PassSampled,
    Fail,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::PassSampled => "pass (sampled)",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "n/a",
        })
    }
}

/// A counterexample to one axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A nonempty set with no member disjoint from it.
    NoMinimalMember { set: String },
    /// Distinct elements with the same members.
    SameMembers { first: String, second: String },
    /// No element has `(N*N)[set,#]` as its members.
    MissingUnion { set: String, members: Vec<String> },
    /// No element has `{b | N[b,#] ⊆ N[set,#]}` as its members.
    MissingPowerset { set: String, members: Vec<String> },
    /// A row covering all of Σ, where choice has nothing to pick.
    CoversUniverse { set: String },
    /// A subset of a row that is not itself a row.
    MissingSubset { set: String, members: Vec<String> },
    /// A map on a row whose image is not a row.
    MissingImage {
        set: String,
        map: BTreeMap<String, String>,
        members: Vec<String>,
    },
    /// Every row of a finite model is finite.
    FiniteModel { size: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set_of = |members: &[String]| format!("{{{}}}", members.join(","));
        match self {
            Witness::NoMinimalMember { set } => write!(f, "{set} has no member disjoint from it"),
            Witness::SameMembers { first, second } => {
                write!(f, "{first} and {second} have the same members")
            }
            Witness::MissingUnion { set, members } => {
                write!(
                    f,
                    "union of {set} would be {}, which is not an element",
                    set_of(members)
                )
            }
            Witness::MissingPowerset { set, members } => {
                write!(
                    f,
                    "powerset of {set} would be {}, which is not an element",
                    set_of(members)
                )
            }
            Witness::CoversUniverse { set } => write!(f, "{set} contains every element"),
            Witness::MissingSubset { set, members } => {
                write!(f, "subset {} of {set} is not an element", set_of(members))
            }
            Witness::MissingImage { set, map, members } => {
                let map: Vec<String> = map.iter().map(|(x, y)| format!("{x}->{y}")).collect();
                write!(
                    f,
                    "image {} of {set} under {} is not an element",
                    set_of(members),
                    map.join(",")
                )
            }
            Witness::FiniteModel { size } => write!(f, "all {size} rows are finite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl AxiomReport {
    fn pass(axiom: Axiom) -> Self {
        AxiomReport {
            axiom,
            verdict: Verdict::Pass,
            witness: None,
            note: None,
        }
    }

    fn fail(axiom: Axiom, witness: Witness) -> Self {
        AxiomReport {
            axiom,
            verdict: Verdict::Fail,
            witness: Some(witness),
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        matches!(self.verdict, Verdict::Pass | Verdict::PassSampled)
    }
}

/// How extensionality compares two rows.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtensionalityMode {
    /// Rows compared as whole functions on Σ.
    #[default]
    Strict,
    /// Mutual inclusion tested only at members of each row. Quadratic in the
    /// number of checked elements; agrees with `Strict` on finite models.
    Lenient,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOptions {
    /// Elements whose per-element axioms are checked; `None` means all of Σ.
    pub focus: Option<Vec<usize>>,
    /// Rows with at most this many members get every subset checked.
    pub separation_bound: u32,
    pub separation_samples: usize,
    /// Maps on a row are enumerated when there are at most this many.
    pub replacement_bound: u64,
    pub replacement_samples: usize,
    pub seed: u64,
    pub extensionality: ExtensionalityMode,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            focus: None,
            separation_bound: 12,
            separation_samples: 256,
            replacement_bound: 4u64.pow(4),
            replacement_samples: 256,
            seed: 0,
            extensionality: ExtensionalityMode::Strict,
        }
    }
}

impl CheckOptions {
    /// Focus on the elements of `V_s` inside a `vk` model.
    pub fn below_stage(mut self, model: &ModelDesc, s: u32) -> Self {
        let size = hf::stage_size(s).map_or(model.len(), |n| (n as usize).min(model.len()));
        self.focus = Some((0..size).collect());
        self
    }
}

struct Checker<'a> {
    model: &'a ModelDesc,
    opts: &'a CheckOptions,
    by_row: HashMap<&'a [u32], Vec<u32>>,
}

impl<'a> Checker<'a> {
    fn new(model: &'a ModelDesc, opts: &'a CheckOptions) -> Self {
        let mut by_row: HashMap<&[u32], Vec<u32>> = HashMap::with_capacity(model.len());
        for (a, row) in model.rows.iter().enumerate() {
            by_row.entry(row.as_slice()).or_default().push(a as u32);
        }
        Checker {
            model,
            opts,
            by_row,
        }
    }

    /// Checked elements, last first.
    fn scan(&self) -> Vec<usize> {
        let mut elements = match &self.opts.focus {
            Some(focus) => focus
                .iter()
                .copied()
                .filter(|&a| a < self.model.len())
                .collect(),
            None => (0..self.model.len()).collect::<Vec<_>>(),
        };
        elements.sort_unstable_by(|a, b| b.cmp(a));
        elements.dedup();
        elements
    }

    fn is_row(&self, members: &[u32]) -> bool {
        self.by_row.contains_key(members)
    }

    fn label(&self, a: usize) -> String {
        self.model.sigma.label(a).to_string()
    }

    fn check(&self, axiom: Axiom) -> AxiomReport {
        match axiom {
            Axiom::Foundation => self.foundation(),
            Axiom::SetsAreSets => {
                AxiomReport::pass(axiom).with_note("rows of a finite model are finite")
            }
            Axiom::Extensionality => self.extensionality(),
            Axiom::Union => self.union(),
            Axiom::Powerset => self.powerset(),
            Axiom::Infinity => AxiomReport::fail(
                axiom,
                Witness::FiniteModel {
                    size: self.model.len(),
                },
            )
            .with_note("finite model"),
            Axiom::Choice => self.choice(),
            Axiom::Separation => self.separation(),
            Axiom::Replacement => self.replacement(),
        }
    }

    fn has_minimal_member(&self, a: usize) -> bool {
        let row = self.model.row(a);
        row.is_empty()
            || row
                .iter()
                .any(|&b| disjoint(self.model.row(b as usize), row))
    }

    fn foundation(&self) -> AxiomReport {
        for a in self.scan() {
            if !self.has_minimal_member(a) {
                return AxiomReport::fail(
                    Axiom::Foundation,
                    Witness::NoMinimalMember { set: self.label(a) },
                );
            }
        }
        let report = AxiomReport::pass(Axiom::Foundation);
        match find_cycle(self.model) {
            Some(cycle) => report.with_note(format!(
                "membership has a cycle {}, yet every set has a minimal member",
                cycle.join(" -> ")
            )),
            None => report,
        }
    }

    fn extensionality(&self) -> AxiomReport {
        let pair = match self.opts.extensionality {
            ExtensionalityMode::Strict => self.by_row_duplicates(),
            ExtensionalityMode::Lenient => self.mutual_inclusion_duplicates(),
        };
        match pair {
            Some((first, second)) => AxiomReport::fail(
                Axiom::Extensionality,
                Witness::SameMembers {
                    first: self.label(first),
                    second: self.label(second),
                },
            ),
            None => AxiomReport::pass(Axiom::Extensionality),
        }
    }

    fn by_row_duplicates(&self) -> Option<(usize, usize)> {
        self.scan().into_iter().find_map(|a| {
            let same = &self.by_row[self.model.row(a)];
            same.iter()
                .map(|&b| b as usize)
                .find(|&b| b != a)
                .map(|b| (b.min(a), b.max(a)))
        })
    }

    fn mutual_inclusion_duplicates(&self) -> Option<(usize, usize)> {
        let included = |a: usize, b: usize| {
            self.model
                .row(a)
                .iter()
                .all(|&x| self.model.mem(b, x as usize))
        };
        for a in self.scan() {
            for b in 0..self.model.len() {
                if a != b && included(a, b) && included(b, a) {
                    return Some((a.min(b), a.max(b)));
                }
            }
        }
        None
    }

    /// `(N*N)[a,#]`.
    fn union_row(&self, a: usize) -> Vec<u32> {
        let mut members: Vec<u32> = self
            .model
            .row(a)
            .iter()
            .flat_map(|&b| self.model.row(b as usize).iter().copied())
            .collect();
        members.sort_unstable();
        members.dedup();
        members
    }

    fn union(&self) -> AxiomReport {
        for a in self.scan() {
            let target = self.union_row(a);
            if !self.is_row(&target) {
                let members = self.model.labels(&target);
                return AxiomReport::fail(
                    Axiom::Union,
                    Witness::MissingUnion {
                        set: self.label(a),
                        members,
                    },
                );
            }
        }
        AxiomReport::pass(Axiom::Union)
    }

    /// `{b | N[b,#] ⊆ N[a,#]}`.
    fn powerset_row(&self, a: usize) -> Vec<u32> {
        let row = self.model.row(a);
        let mut members: Vec<u32> = if row.len() < 20 && (1usize << row.len()) < self.model.len() {
            let mut out = Vec::new();
            for mask in 0u32..1 << row.len() {
                let subset = select(row, u64::from(mask));
                if let Some(owners) = self.by_row.get(subset.as_slice()) {
                    out.extend_from_slice(owners);
                }
            }
            out
        } else {
            (0..self.model.len() as u32)
                .filter(|&b| subset_of(self.model.row(b as usize), row))
                .collect()
        };
        members.sort_unstable();
        members
    }

    fn powerset(&self) -> AxiomReport {
        for a in self.scan() {
            let target = self.powerset_row(a);
            if !self.is_row(&target) {
                let members = self.model.labels(&target);
                return AxiomReport::fail(
                    Axiom::Powerset,
                    Witness::MissingPowerset {
                        set: self.label(a),
                        members,
                    },
                );
            }
        }
        AxiomReport::pass(Axiom::Powerset)
    }

    fn choice(&self) -> AxiomReport {
        let n = self.model.len();
        for a in self.scan() {
            if self.model.row(a).len() == n {
                return AxiomReport::fail(
                    Axiom::Choice,
                    Witness::CoversUniverse { set: self.label(a) },
                );
            }
        }
        AxiomReport::pass(Axiom::Choice).with_note("ch[a] = least non-member of a")
    }

    fn separation(&self) -> AxiomReport {
        let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed);
        let mut sampled = false;
        for a in self.scan() {
            let row = self.model.row(a);
            let masks: Box<dyn Iterator<Item = u64>> =
                if row.len() as u32 <= self.opts.separation_bound {
                    Box::new(0..1u64 << row.len())
                } else {
                    sampled = true;
                    let draws: Vec<u64> = (0..self.opts.separation_samples)
                        .map(|_| rng.gen::<u64>() & low_bits(row.len().min(64)))
                        .collect();
                    Box::new(draws.into_iter())
                };
            for mask in masks {
                let subset = if row.len() <= 64 {
                    select(row, mask)
                } else {
                    row.iter().copied().filter(|_| rng.gen::<bool>()).collect()
                };
                if !self.is_row(&subset) {
                    let members = self.model.labels(&subset);
                    return AxiomReport::fail(
                        Axiom::Separation,
                        Witness::MissingSubset {
                            set: self.label(a),
                            members,
                        },
                    );
                }
            }
        }
        if sampled {
            AxiomReport {
                axiom: Axiom::Separation,
                verdict: Verdict::PassSampled,
                witness: None,
                note: Some(format!(
                    "rows above {} members sampled: {} subsets each, seed {}",
                    self.opts.separation_bound, self.opts.separation_samples, self.opts.seed
                )),
            }
        } else {
            AxiomReport::pass(Axiom::Separation)
        }
    }

    fn replacement(&self) -> AxiomReport {
        let n = self.model.len() as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed);
        let mut sampled = false;
        for a in self.scan() {
            let row = self.model.row(a);
            let count = u32::try_from(row.len()).ok().and_then(|r| n.checked_pow(r));
            let maps: Vec<Vec<u32>> = match count {
                Some(count) if count <= self.opts.replacement_bound => (0..count)
                    .map(|index| mixed_radix(index, n, row.len()))
                    .collect(),
                _ if n == 0 => Vec::new(),
                _ => {
                    sampled = true;
                    (0..self.opts.replacement_samples)
                        .map(|_| (0..row.len()).map(|_| rng.gen_range(0..n as u32)).collect())
                        .collect()
                }
            };
            for values in maps {
                let mut image = values.clone();
                image.sort_unstable();
                image.dedup();
                if !self.is_row(&image) {
                    let map = row
                        .iter()
                        .zip(&values)
                        .map(|(&x, &y)| (self.label(x as usize), self.label(y as usize)))
                        .collect();
                    let members = self.model.labels(&image);
                    return AxiomReport::fail(
                        Axiom::Replacement,
                        Witness::MissingImage {
                            set: self.label(a),
                            map,
                            members,
                        },
                    );
                }
            }
        }
        if sampled {
            AxiomReport {
                axiom: Axiom::Replacement,
                verdict: Verdict::PassSampled,
                witness: None,
                note: Some(format!(
                    "rows with more than {} maps sampled: {} maps each, seed {}",
                    self.opts.replacement_bound, self.opts.replacement_samples, self.opts.seed
                )),
            }
        } else {
            AxiomReport::pass(Axiom::Replacement)
        }
    }
}

fn low_bits(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

fn select(row: &[u32], mask: u64) -> Vec<u32> {
    row.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &b)| b)
        .collect()
}

fn mixed_radix(mut index: u64, radix: u64, digits: usize) -> Vec<u32> {
    (0..digits)
        .map(|_| {
            let d = index % radix;
            index /= radix;
            d as u32
        })
        .collect()
}

fn disjoint(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

fn subset_of(small: &[u32], big: &[u32]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

fn find_cycle(model: &ModelDesc) -> Option<Vec<String>> {
    let n = model.len();
    // 0 new, 1 open, 2 done
    let mut mark = vec![0u8; n];
    for root in 0..n {
        if mark[root] != 0 {
            continue;
        }
        let mut path = vec![(root, 0usize)];
        mark[root] = 1;
        while let Some(&mut (v, ref mut next)) = path.last_mut() {
            let row = model.row(v);
            if *next < row.len() {
                let b = row[*next] as usize;
                *next += 1;
                match mark[b] {
                    1 => {
                        let start = path.iter().position(|&(x, _)| x == b).unwrap();
                        let labels = path[start..]
                            .iter()
                            .map(|&(x, _)| model.sigma.label(x).to_string())
                            .collect();
                        return Some(labels);
                    }
                    0 => {
                        mark[b] = 1;
                        path.push((b, 0));
                    }
                    _ => {}
                }
            } else {
                mark[v] = 2;
                path.pop();
            }
        }
    }
    None
}

/// Run one sub-check.
pub fn check_axiom(model: &ModelDesc, axiom: Axiom, opts: &CheckOptions) -> AxiomReport {
    Checker::new(model, opts).check(axiom)
}

/// Run every sub-check, each on its own thread; reports come back in axiom
/// order.
pub fn check_all(model: &ModelDesc, opts: &CheckOptions) -> Vec<AxiomReport> {
    let checker = Checker::new(model, opts);
    std::thread::scope(|scope| {
        let handles: Vec<_> = Axiom::ALL
            .iter()
            .map(|&axiom| {
                let checker = &checker;
                scope.spawn(move || checker.check(axiom))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sub-check panicked"))
            .collect()
    })
}

/// The choice function `a ↦ least non-member of a`, or `None` at an element
/// whose row covers Σ.
pub fn least_non_member_choice(model: &ModelDesc) -> Vec<Option<usize>> {
    (0..model.len())
        .map(|a| (0..model.len()).find(|&c| !model.mem(a, c)))
        .collect()
}

/// Re-verify a witness against the model on its own. `true` means the
/// witness is a genuine counterexample.
pub fn witness_fails(model: &ModelDesc, witness: &Witness) -> bool {
    let opts = CheckOptions::default();
    let checker = Checker::new(model, &opts);
    let sigma = &model.sigma;
    let position = |label: &str| sigma.position(label);
    let positions = |labels: &[String]| -> Option<Vec<u32>> {
        let mut out = labels
            .iter()
            .map(|l| position(l).map(|p| p as u32))
            .collect::<Option<Vec<_>>>()?;
        out.sort_unstable();
        Some(out)
    };
    match witness {
        Witness::NoMinimalMember { set } => {
            position(set).is_some_and(|a| !checker.has_minimal_member(a))
        }
        Witness::SameMembers { first, second } => match (position(first), position(second)) {
            (Some(a), Some(b)) => a != b && model.row(a) == model.row(b),
            _ => false,
        },
        Witness::MissingUnion { set, members } => match (position(set), positions(members)) {
            (Some(a), Some(target)) => checker.union_row(a) == target && !checker.is_row(&target),
            _ => false,
        },
        Witness::MissingPowerset { set, members } => match (position(set), positions(members)) {
            (Some(a), Some(target)) => {
                let expected: Vec<u32> = (0..model.len() as u32)
                    .filter(|&b| subset_of(model.row(b as usize), model.row(a)))
                    .collect();
                expected == target && !checker.is_row(&target)
            }
            _ => false,
        },
        Witness::CoversUniverse { set } => {
            position(set).is_some_and(|a| model.row(a).len() == model.len())
        }
        Witness::MissingSubset { set, members } => match (position(set), positions(members)) {
            (Some(a), Some(subset)) => subset_of(&subset, model.row(a)) && !checker.is_row(&subset),
            _ => false,
        },
        Witness::MissingImage { set, map, members } => {
            let Some(a) = position(set) else { return false };
            let Some(image) = positions(members) else {
                return false;
            };
            let domain: Option<Vec<u32>> = positions(&map.keys().cloned().collect::<Vec<_>>());
            let values: Option<Vec<u32>> = positions(&map.values().cloned().collect::<Vec<_>>());
            match (domain, values) {
                (Some(domain), Some(mut values)) => {
                    values.dedup();
                    domain == model.row(a) && values == image && !checker.is_row(&image)
                }
                _ => false,
            }
        }
        Witness::FiniteModel { size } => *size == model.len(),
    }
}
