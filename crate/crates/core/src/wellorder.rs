//! Finite well-orders and recursion along them.
//!
//! A [`FinWellOrder`] is a carrier listed in rank order. [`recurse`] builds
//! the maximal recursive partial function for a [`RecursionCondition`] by
//! evaluating the condition in increasing rank and stopping at the first
//! element where it is undefined.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pairing::FinDomain;

/// A finite carrier with a total order, stored as its labels in rank order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinWellOrder {
    carrier: FinDomain,
}

impl FinWellOrder {
    /// Labels listed least first.
    pub fn from_ranked<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ok(FinWellOrder {
            carrier: FinDomain::new(labels)?,
        })
    }

    pub fn from_domain(carrier: FinDomain) -> Self {
        FinWellOrder { carrier }
    }

    /// Order a domain by an explicit rank map, which must be a bijection onto
    /// `0..n`.
    pub fn with_ranks(carrier: &FinDomain, rank_of: &BTreeMap<String, usize>) -> Result<Self> {
        let n = carrier.len();
        let mut slots: Vec<Option<String>> = vec![None; n];
        for label in carrier.labels() {
            let &rank = rank_of
                .get(label)
                .ok_or_else(|| Error::InvalidOrder(format!("`{label}` has no rank")))?;
            if rank >= n {
                return Err(Error::InvalidOrder(format!(
                    "rank {rank} of `{label}` is out of range"
                )));
            }
            if let Some(other) = &slots[rank] {
                return Err(Error::InvalidOrder(format!(
                    "`{other}` and `{label}` share rank {rank}"
                )));
            }
            slots[rank] = Some(label.clone());
        }
        if let Some(stray) = rank_of.keys().find(|k| !carrier.contains(k)) {
            return Err(Error::StrayElement(stray.clone()));
        }
        FinWellOrder::from_ranked(slots.into_iter().map(|s| s.expect("all ranks filled")))
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn carrier(&self) -> &FinDomain {
        &self.carrier
    }

    /// Labels, least first.
    pub fn in_order(&self) -> &[String] {
        self.carrier.labels()
    }

    pub fn rank(&self, label: &str) -> Option<usize> {
        self.carrier.position(label)
    }

    pub fn at_rank(&self, rank: usize) -> &str {
        self.carrier.label(rank)
    }

    pub fn less(&self, x: &str, y: &str) -> bool {
        matches!((self.rank(x), self.rank(y)), (Some(a), Some(b)) if a < b)
    }

    /// Least element of a subset, if any.
    pub fn min_of<'a, I>(&self, subset: I) -> Option<usize>
    where
        I: IntoIterator<Item = &'a str>,
    {
        subset.into_iter().filter_map(|x| self.rank(x)).min()
    }

    /// Whether the subset is downward closed.
    pub fn is_saturated<'a, I>(&self, subset: I) -> Result<bool>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut ranks = BTreeSet::new();
        for x in subset {
            ranks.insert(
                self.rank(x)
                    .ok_or_else(|| Error::StrayElement(x.to_string()))?,
            );
        }
        Ok(ranks.iter().enumerate().all(|(i, &r)| i == r))
    }
}

impl Serialize for FinWellOrder {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.carrier.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FinWellOrder {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(FinWellOrder {
            carrier: FinDomain::deserialize(deserializer)?,
        })
    }
}

/// Immutable snapshot of a partial function restricted to the elements
/// strictly below the current one.
#[derive(Debug)]
pub struct Restriction<'a, V> {
    order: &'a FinWellOrder,
    values: &'a [V],
}

impl<V> Clone for Restriction<'_, V> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<V> Copy for Restriction<'_, V> {}

impl<'a, V> Restriction<'a, V> {
    pub fn new(order: &'a FinWellOrder, values: &'a [V]) -> Self {
        assert!(values.len() <= order.len());
        Restriction { order, values }
    }

    /// Number of defined points.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&'a V> {
        self.order.rank(label).and_then(|r| self.values.get(r))
    }

    pub fn values(&self) -> &'a [V] {
        self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'a str, &'a V)> + 'a {
        let order = self.order;
        self.values
            .iter()
            .enumerate()
            .map(move |(r, v)| (order.at_rank(r), v))
    }
}

/// A step function `R[f↾(c > #), c]`; `None` means `(f, c)` lies outside the
/// domain of the condition.
pub trait RecursionCondition<V> {
    fn step(&self, below: Restriction<'_, V>, current: &str) -> Option<V>;
}

impl<V, F> RecursionCondition<V> for F
where
    F: Fn(Restriction<'_, V>, &str) -> Option<V>,
{
    fn step(&self, below: Restriction<'_, V>, current: &str) -> Option<V> {
        self(below, current)
    }
}

/// A recursive partial function; defined exactly on ranks `0..values.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recursive<V> {
    order: FinWellOrder,
    values: Vec<V>,
}

impl<V> Recursive<V> {
    pub fn order(&self) -> &FinWellOrder {
        &self.order
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    pub fn into_values(self) -> Vec<V> {
        self.values
    }

    pub fn get(&self, label: &str) -> Option<&V> {
        self.order.rank(label).and_then(|r| self.values.get(r))
    }

    pub fn domain(&self) -> &[String] {
        &self.order.in_order()[..self.values.len()]
    }

    pub fn is_total(&self) -> bool {
        self.values.len() == self.order.len()
    }

    pub fn as_restriction(&self) -> Restriction<'_, V> {
        Restriction::new(&self.order, &self.values)
    }
}

/// The maximal recursive partial function for `condition`.
pub fn recurse<V, R>(order: &FinWellOrder, condition: &R) -> Recursive<V>
where
    R: RecursionCondition<V> + ?Sized,
{
    let mut values = Vec::with_capacity(order.len());
    for rank in 0..order.len() {
        let below = Restriction::new(order, &values);
        match condition.step(below, order.at_rank(rank)) {
            Some(v) => values.push(v),
            None => break,
        }
    }
    Recursive {
        order: order.clone(),
        values,
    }
}

/// Check that `f` satisfies the recursion equations on its (saturated)
/// domain and the maximality criterion: either the domain is everything or
/// the condition is undefined at the least missing element.
pub fn is_maximal_recursive<V, R>(condition: &R, f: &Recursive<V>) -> bool
where
    V: PartialEq,
    R: RecursionCondition<V> + ?Sized,
{
    let order = &f.order;
    for (rank, value) in f.values.iter().enumerate() {
        let below = Restriction::new(order, &f.values[..rank]);
        if condition.step(below, order.at_rank(rank)).as_ref() != Some(value) {
            return false;
        }
    }
    f.is_total()
        || condition
            .step(f.as_restriction(), order.at_rank(f.values.len()))
            .is_none()
}

/// An order-preserving bijection between an initial segment of `source` and
/// an initial segment of `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderIso {
    source: FinWellOrder,
    target: FinWellOrder,
    /// Target rank for each source rank in the domain.
    images: Vec<usize>,
}

impl OrderIso {
    pub fn source(&self) -> &FinWellOrder {
        &self.source
    }

    pub fn target(&self) -> &FinWellOrder {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn domain(&self) -> Vec<&str> {
        (0..self.images.len())
            .map(|r| self.source.at_rank(r))
            .collect()
    }

    pub fn image(&self) -> Vec<&str> {
        self.images
            .iter()
            .map(|&r| self.target.at_rank(r))
            .collect()
    }

    pub fn pairs(&self) -> Vec<(String, String)> {
        self.domain()
            .into_iter()
            .zip(self.image())
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    pub fn get(&self, label: &str) -> Option<&str> {
        let r = self.source.rank(label)?;
        self.images.get(r).map(|&t| self.target.at_rank(t))
    }

    pub fn is_order_preserving(&self) -> bool {
        self.images.windows(2).all(|w| w[0] < w[1])
    }

    pub fn has_saturated_domain(&self) -> bool {
        self.source.is_saturated(self.domain()).unwrap_or(false)
    }

    pub fn has_saturated_image(&self) -> bool {
        self.target.is_saturated(self.image()).unwrap_or(false)
    }

    /// Full domain or full image.
    pub fn is_maximal(&self) -> bool {
        self.images.len() == self.source.len() || self.images.len() == self.target.len()
    }
}

/// The maximal order-isomorphism between saturated subdomains, from the
/// recursion condition `R[f, a] = min[B − im f]`.
pub fn max_order_iso(source: &FinWellOrder, target: &FinWellOrder) -> OrderIso {
    let least_unused = |below: Restriction<'_, usize>, _current: &str| {
        let used: BTreeSet<usize> = below.values().iter().copied().collect();
        (0..target.len()).find(|r| !used.contains(r))
    };
    let f = recurse(source, &least_unused);
    OrderIso {
        source: source.clone(),
        target: target.clone(),
        images: f.into_values(),
    }
}

/// Well-order a domain by a choice function that picks an element outside
/// each proper subset: rank `k` gets the element chosen for the image of
/// ranks `0..k`.
pub fn well_order_from_choice<C>(domain: &FinDomain, choice: C) -> Result<FinWellOrder>
where
    C: Fn(&BTreeSet<String>) -> Option<String>,
{
    let steps = FinWellOrder::from_domain(FinDomain::range(domain.len()));
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let condition = |below: Restriction<'_, String>, _step: &str| {
        let chosen_so_far: BTreeSet<String> = below.values().iter().cloned().collect();
        if chosen_so_far.len() == domain.len() {
            return None;
        }
        let subset = || chosen_so_far.iter().cloned().collect::<Vec<_>>();
        let Some(next) = choice(&chosen_so_far) else {
            *failure.borrow_mut() = Some(Error::ChoiceUndefined { subset: subset() });
            return None;
        };
        if !domain.contains(&next) {
            *failure.borrow_mut() = Some(Error::StrayElement(next));
            return None;
        }
        if chosen_so_far.contains(&next) {
            *failure.borrow_mut() = Some(Error::ChoiceViolation {
                subset: subset(),
                chosen: next,
            });
            return None;
        }
        Some(next)
    };
    let enumeration = recurse(&steps, &condition);
    if let Some(err) = failure.into_inner() {
        return Err(err);
    }
    FinWellOrder::from_ranked(enumeration.into_values())
}

/// A choice table: proper subsets (as sorted label sets) to the chosen
/// element outside them. In JSON the keys are the sorted labels joined by
/// `,`, with `""` for the empty subset.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChoiceTable {
    entries: BTreeMap<BTreeSet<String>, String>,
}

impl ChoiceTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, subset: BTreeSet<String>, chosen: String) {
        self.entries.insert(subset, chosen);
    }

    pub fn get(&self, subset: &BTreeSet<String>) -> Option<String> {
        self.entries.get(subset).cloned()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The table of "least unused label" (byte order) over every proper
    /// subset of `domain`.
    pub fn least_unused(domain: &FinDomain) -> Self {
        let labels: BTreeSet<String> = domain.labels().iter().cloned().collect();
        let sorted: Vec<&String> = labels.iter().collect();
        let n = sorted.len();
        assert!(n < 24, "choice table over 2^{n} subsets");
        let mut table = ChoiceTable::new();
        for mask in 0u32..(1 << n) {
            let subset: BTreeSet<String> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| sorted[i].clone())
                .collect();
            if let Some(first) = sorted.iter().find(|l| !subset.contains(**l)) {
                table.insert(subset, (*first).clone());
            }
        }
        table
    }
}

impl Serialize for ChoiceTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let flat: BTreeMap<String, &String> = self
            .entries
            .iter()
            .map(|(k, v)| (k.iter().cloned().collect::<Vec<_>>().join(","), v))
            .collect();
        flat.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ChoiceTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let flat = BTreeMap::<String, String>::deserialize(deserializer)?;
        let entries = flat
            .into_iter()
            .map(|(k, v)| {
                let subset = if k.is_empty() {
                    BTreeSet::new()
                } else {
                    k.split(',').map(str::to_string).collect()
                };
                (subset, v)
            })
            .collect();
        Ok(ChoiceTable { entries })
    }
}
