//! Finite logical domains and boolean-valued pairings between them.
//!
//! Every carrier here is an explicit finite sequence of labels, so each
//! quantifier in the structural operations (domain, injectivity, composition,
//! quotients) is decided by enumeration.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{EquivalenceLaw, Error, Result};

/// A finite domain of pairwise distinct labels. Equality of elements is label
/// equality.
#[derive(Clone, Default)]
pub struct FinDomain {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl FinDomain {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(FinDomain { labels, index })
    }

    /// Domain `{"0", "1", ..., "n-1"}`.
    pub fn range(n: usize) -> Self {
        FinDomain::new((0..n).map(|i| i.to_string())).expect("decimal labels are distinct")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.position(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    /// Labels of the given positions, in the order given.
    pub fn labels_of<'a, I>(&'a self, positions: I) -> Vec<String>
    where
        I: IntoIterator<Item = &'a usize>,
    {
        positions
            .into_iter()
            .map(|&i| self.labels[i].clone())
            .collect()
    }
}

impl PartialEq for FinDomain {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Eq for FinDomain {}

impl fmt::Debug for FinDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.labels).finish()
    }
}

impl Serialize for FinDomain {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.labels.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FinDomain {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let labels = Vec::<String>::deserialize(deserializer)?;
        FinDomain::new(labels).map_err(serde::de::Error::custom)
    }
}

/// A total boolean-valued map on `left × right`.
#[derive(Clone, PartialEq, Eq)]
pub struct FinPairing {
    left: FinDomain,
    right: FinDomain,
    rel: Vec<bool>,
}

impl FinPairing {
    /// Build from a row-major matrix, row index = left position.
    pub fn new(left: FinDomain, right: FinDomain, rows: Vec<Vec<bool>>) -> Result<Self> {
        let bad_row = rows.iter().find(|row| row.len() != right.len());
        if rows.len() != left.len() || bad_row.is_some() {
            return Err(Error::Shape {
                rows: rows.len(),
                cols: bad_row.map_or(right.len(), Vec::len),
                expected_rows: left.len(),
                expected_cols: right.len(),
            });
        }
        let rel = rows.into_iter().flatten().collect();
        Ok(FinPairing { left, right, rel })
    }

    pub fn from_fn(
        left: FinDomain,
        right: FinDomain,
        mut f: impl FnMut(usize, usize) -> bool,
    ) -> Self {
        let (n, m) = (left.len(), right.len());
        let mut rel = Vec::with_capacity(n * m);
        for a in 0..n {
            for b in 0..m {
                rel.push(f(a, b));
            }
        }
        FinPairing { left, right, rel }
    }

    /// The all-no pairing.
    pub fn empty(left: FinDomain, right: FinDomain) -> Self {
        Self::from_fn(left, right, |_, _| false)
    }

    /// The `≐` pairing of a domain.
    pub fn identity(domain: FinDomain) -> Self {
        Self::from_fn(domain.clone(), domain, |a, b| a == b)
    }

    /// Pairing given by a list of related label pairs.
    pub fn from_pairs<'a, I>(left: FinDomain, right: FinDomain, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut p = Self::empty(left, right);
        for (a, b) in pairs {
            let i = p.left.require(a)?;
            let j = p.right.require(b)?;
            p.set(i, j, true);
        }
        Ok(p)
    }

    /// The evaluation pairing `P[base] × base → y/n`, `(s, x) ↦ x ∈ s`. Left
    /// labels are the subsets written as `{x,y}` in base order.
    pub fn evaluation(base: &FinDomain) -> Self {
        let n = base.len();
        assert!(
            n < usize::BITS as usize,
            "evaluation pairing needs 2^n rows"
        );
        let subsets: Vec<String> = (0..1usize << n)
            .map(|mask| {
                let members: Vec<&str> = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| base.label(i))
                    .collect();
                format!("{{{}}}", members.join(","))
            })
            .collect();
        let left = FinDomain::new(subsets).expect("subset labels are distinct");
        Self::from_fn(left, base.clone(), |s, x| s >> x & 1 == 1)
    }

    pub fn left(&self) -> &FinDomain {
        &self.left
    }

    pub fn right(&self) -> &FinDomain {
        &self.right
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> bool {
        self.rel[a * self.right.len() + b]
    }

    #[inline]
    pub fn set(&mut self, a: usize, b: usize, value: bool) {
        let m = self.right.len();
        self.rel[a * m + b] = value;
    }

    pub fn related(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.get(self.left.require(a)?, self.right.require(b)?))
    }

    pub fn row(&self, a: usize) -> &[bool] {
        let m = self.right.len();
        &self.rel[a * m..(a + 1) * m]
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        (0..self.left.len()).map(|a| self.row(a).to_vec()).collect()
    }

    /// Left positions related to at least one right element.
    pub fn domain(&self) -> Vec<usize> {
        (0..self.left.len())
            .filter(|&a| self.row(a).iter().any(|&x| x))
            .collect()
    }

    /// Right positions related to at least one left element; the domain of
    /// the opposite.
    pub fn image(&self) -> Vec<usize> {
        self.opposite().domain()
    }

    /// Same relation with the variables swapped.
    pub fn opposite(&self) -> FinPairing {
        FinPairing::from_fn(self.right.clone(), self.left.clone(), |b, a| self.get(a, b))
    }

    /// No left element relates to two distinct right elements.
    pub fn is_single_valued(&self) -> bool {
        (0..self.left.len()).all(|a| self.row(a).iter().filter(|&&x| x).count() <= 1)
    }

    /// The opposite is single-valued.
    pub fn is_injective(&self) -> bool {
        self.opposite().is_single_valued()
    }

    /// Literal evaluation of `∀ a₁ a₂ b. λ[a₁,b] & λ[a₂,b] ⟹ a₁ = a₂`.
    pub fn detect_injective(&self) -> bool {
        let (n, m) = (self.left.len(), self.right.len());
        for a1 in 0..n {
            for a2 in 0..n {
                for b in 0..m {
                    if self.get(a1, b) && self.get(a2, b) && a1 != a2 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Relational composition `(α*β)[a,c] = ∃ b. α[a,b] & β[b,c]`.
    pub fn compose(&self, other: &FinPairing) -> Result<FinPairing> {
        if self.right != other.left {
            return Err(Error::DomainMismatch(format!(
                "cannot compose: right domain {:?} differs from left domain {:?}",
                self.right, other.left
            )));
        }
        let middle = self.right.len();
        Ok(FinPairing::from_fn(
            self.left.clone(),
            other.right.clone(),
            |a, c| (0..middle).any(|b| self.get(a, b) && other.get(b, c)),
        ))
    }

    /// `a ↦ {b | λ[a,b]}`.
    pub fn adjoint(&self) -> Vec<BTreeSet<usize>> {
        (0..self.left.len())
            .map(|a| {
                self.row(a)
                    .iter()
                    .enumerate()
                    .filter_map(|(b, &x)| x.then_some(b))
                    .collect()
            })
            .collect()
    }

    /// The adjoint with labels in place of positions.
    pub fn adjoint_labels(&self) -> BTreeMap<String, BTreeSet<String>> {
        self.adjoint()
            .into_iter()
            .enumerate()
            .map(|(a, bs)| {
                let row = bs
                    .iter()
                    .map(|&b| self.right.label(b).to_string())
                    .collect();
                (self.left.label(a).to_string(), row)
            })
            .collect()
    }
}

impl fmt::Debug for FinPairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pairs = Vec::new();
        for a in 0..self.left.len() {
            for b in 0..self.right.len() {
                if self.get(a, b) {
                    pairs.push((self.left.label(a), self.right.label(b)));
                }
            }
        }
        f.debug_struct("FinPairing")
            .field("left", &self.left)
            .field("right", &self.right)
            .field("pairs", &pairs)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct PairingRepr {
    left: FinDomain,
    right: FinDomain,
    rel: Vec<Vec<bool>>,
}

impl Serialize for FinPairing {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PairingRepr {
            left: self.left.clone(),
            right: self.right.clone(),
            rel: self.rows(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FinPairing {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PairingRepr::deserialize(deserializer)?;
        FinPairing::new(repr.left, repr.right, repr.rel).map_err(serde::de::Error::custom)
    }
}

/// An equivalence relation on a finite domain, validated on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinEquivalence {
    eqv: FinPairing,
}

/// Equivalence classes together with the canonical projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub classes: FinDomain,
    /// Class position of each base element.
    pub projection: Vec<usize>,
}

impl FinEquivalence {
    pub fn new(eqv: FinPairing) -> Result<Self> {
        if eqv.left != eqv.right {
            return Err(Error::DomainMismatch(
                "an equivalence must relate a domain to itself".into(),
            ));
        }
        let n = eqv.left.len();
        let witness = |xs: &[usize]| eqv.left.labels_of(xs);
        for x in 0..n {
            if !eqv.get(x, x) {
                return Err(Error::NotEquivalence {
                    law: EquivalenceLaw::Reflexive,
                    witness: witness(&[x]),
                });
            }
        }
        for x in 0..n {
            for y in 0..n {
                if eqv.get(x, y) && !eqv.get(y, x) {
                    return Err(Error::NotEquivalence {
                        law: EquivalenceLaw::Symmetric,
                        witness: witness(&[x, y]),
                    });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !eqv.get(x, y) {
                    continue;
                }
                for z in 0..n {
                    if eqv.get(y, z) && !eqv.get(x, z) {
                        return Err(Error::NotEquivalence {
                            law: EquivalenceLaw::Transitive,
                            witness: witness(&[x, y, z]),
                        });
                    }
                }
            }
        }
        Ok(FinEquivalence { eqv })
    }

    pub fn base(&self) -> &FinDomain {
        &self.eqv.left
    }

    pub fn pairing(&self) -> &FinPairing {
        &self.eqv
    }

    /// Classes are numbered by first occurrence and labelled `{x,y,...}`.
    pub fn quotient(&self) -> Quotient {
        let n = self.base().len();
        let mut projection = vec![usize::MAX; n];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if projection[x] != usize::MAX {
                continue;
            }
            let class = members.len();
            let row: Vec<usize> = (x..n).filter(|&y| self.eqv.get(x, y)).collect();
            for &y in &row {
                projection[y] = class;
            }
            members.push(row);
        }
        let labels = members
            .iter()
            .map(|row| format!("{{{}}}", self.base().labels_of(row).join(",")));
        Quotient {
            classes: FinDomain::new(labels).expect("classes are disjoint"),
            projection,
        }
    }
}

/// A total map between finite domains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinMap {
    source: FinDomain,
    target: FinDomain,
    images: Vec<usize>,
}

impl FinMap {
    pub fn new(source: FinDomain, target: FinDomain, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.len() {
            let missing = source
                .labels()
                .get(images.len())
                .cloned()
                .unwrap_or_default();
            return Err(Error::NotTotal(missing));
        }
        if let Some(&bad) = images.iter().find(|&&j| j >= target.len()) {
            return Err(Error::UnknownLabel(format!("#{bad}")));
        }
        Ok(FinMap {
            source,
            target,
            images,
        })
    }

    /// Build from `label ↦ label` entries; every source label must appear.
    pub fn from_labels(
        source: FinDomain,
        target: FinDomain,
        entries: &BTreeMap<String, String>,
    ) -> Result<Self> {
        for key in entries.keys() {
            source.require(key)?;
        }
        let images = source
            .labels()
            .iter()
            .map(|a| {
                let b = entries.get(a).ok_or_else(|| Error::NotTotal(a.clone()))?;
                target.require(b)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FinMap {
            source,
            target,
            images,
        })
    }

    pub fn identity(domain: FinDomain) -> Self {
        let images = (0..domain.len()).collect();
        FinMap {
            source: domain.clone(),
            target: domain,
            images,
        }
    }

    pub fn source(&self) -> &FinDomain {
        &self.source
    }

    pub fn target(&self) -> &FinDomain {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn to_labels(&self) -> BTreeMap<String, String> {
        self.images
            .iter()
            .enumerate()
            .map(|(a, &b)| {
                (
                    self.source.label(a).to_string(),
                    self.target.label(b).to_string(),
                )
            })
            .collect()
    }

    /// The graph of the map as a pairing.
    pub fn graph(&self) -> FinPairing {
        FinPairing::from_fn(self.source.clone(), self.target.clone(), |a, b| {
            self.images[a] == b
        })
    }

    /// Errors with a colliding pair if two sources share an image.
    pub fn check_injective(&self) -> Result<()> {
        let mut seen: Vec<Option<usize>> = vec![None; self.target.len()];
        for (a, &b) in self.images.iter().enumerate() {
            if let Some(prev) = seen[b] {
                return Err(Error::NotInjective {
                    first: self.source.label(prev).to_string(),
                    second: self.source.label(a).to_string(),
                    image: self.target.label(b).to_string(),
                });
            }
            seen[b] = Some(a);
        }
        Ok(())
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len() && self.check_injective().is_ok()
    }
}

/// Bijection `A → B` from injections `f: A → B` and `g: B → A`.
///
/// With `J = g∘f` and `k = im g ⊆ A`, the map `Ĵ` fixes every `a` lying in a
/// layer `Jⁿ[k] − Jⁿ⁺¹[A]` and sends every other `a` to `J[a]`. `Ĵ` is a
/// bijection `A → k`, which `g⁻¹` transports to `B`. Layers are scanned for
/// `n ≤ |A|`; on a finite carrier the iterates of `J` repeat by then.
pub fn cantor_bernstein(f: &FinMap, g: &FinMap) -> Result<FinMap> {
    if f.target != g.source || g.target != f.source {
        return Err(Error::DomainMismatch(
            "expected f: A -> B and g: B -> A".into(),
        ));
    }
    f.check_injective()?;
    g.check_injective()?;

    let n = f.source.len();
    let jump: Vec<usize> = (0..n).map(|a| g.apply(f.apply(a))).collect();
    let push = |set: &[bool]| {
        let mut out = vec![false; n];
        for a in (0..n).filter(|&a| set[a]) {
            out[jump[a]] = true;
        }
        out
    };

    let mut in_g_image = vec![false; n];
    for &a in &g.images {
        in_g_image[a] = true;
    }
    // layer_k = Jⁿ[k], layer_j = Jⁿ[j] = Jⁿ⁺¹[A]
    let mut layer_k = in_g_image.clone();
    let mut layer_j = push(&vec![true; n]);
    let mut fixed = vec![false; n];
    for _ in 0..=n {
        for a in 0..n {
            fixed[a] |= layer_k[a] && !layer_j[a];
        }
        layer_k = push(&layer_k);
        layer_j = push(&layer_j);
    }

    let mut g_inverse = vec![usize::MAX; n];
    for (b, &a) in g.images.iter().enumerate() {
        g_inverse[a] = b;
    }
    let images = (0..n)
        .map(|a| {
            let hat = if fixed[a] { a } else { jump[a] };
            g_inverse[hat]
        })
        .collect::<Vec<_>>();
    if images.contains(&usize::MAX) {
        return Err(Error::NotBijective("Ĵ left the image of g".into()));
    }
    let h = FinMap {
        source: f.source.clone(),
        target: f.target.clone(),
        images,
    };
    if !h.is_bijective() {
        return Err(Error::NotBijective(format!("{:?}", h.to_labels())));
    }
    Ok(h)
}
