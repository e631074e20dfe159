//! Well-founded pairings on finite vertex sets and their collapse into
//! hereditarily finite sets.
//!
//! Edges follow the membership direction of `∋`: `λ[a,b] = yes` means `b` is
//! a member of `a`. The collapse sends each vertex to the code whose members
//! are the codes of its children, evaluated children first. It is the unique
//! morphism of pairings into `(ℕ, ∋)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hf::{self, HfCode};
use crate::pairing::{FinDomain, FinPairing};

/// Braces text longer than this is omitted from collapse output.
pub const BRACES_LIMIT: usize = 4096;

/// A pairing `λ` on a finite vertex set, read as "child is a member of
/// parent". Cycles are allowed at construction so they can be reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WfGraph {
    lambda: FinPairing,
}

/// A vertex and a code at which the morphism biconditional fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismFailure {
    pub vertex: String,
    pub code: HfCode,
}

impl WfGraph {
    pub fn new(lambda: FinPairing) -> Result<Self> {
        if lambda.left() != lambda.right() {
            return Err(Error::DomainMismatch(
                "a graph pairing must relate its vertices to themselves".into(),
            ));
        }
        Ok(WfGraph { lambda })
    }

    pub fn from_edges<'a, I>(vertices: FinDomain, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        WfGraph::new(FinPairing::from_pairs(vertices.clone(), vertices, edges)?)
    }

    /// Membership graph of `n`: vertices are `n` and its hereditary members,
    /// labelled by decimal code in increasing order.
    pub fn membership_graph(n: &HfCode) -> Self {
        let closure = hf::transitive_closure(n);
        let mut codes: Vec<HfCode> = closure.members().collect();
        if !closure.mem(n) {
            codes.push(n.clone());
        }
        let index: HashMap<&HfCode, usize> =
            codes.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let vertices =
            FinDomain::new(codes.iter().map(ToString::to_string)).expect("codes are distinct");
        let mut lambda = FinPairing::empty(vertices.clone(), vertices);
        for (a, code) in codes.iter().enumerate() {
            for member in code.members() {
                lambda.set(a, index[&member], true);
            }
        }
        WfGraph { lambda }
    }

    pub fn vertices(&self) -> &FinDomain {
        self.lambda.left()
    }

    pub fn pairing(&self) -> &FinPairing {
        &self.lambda
    }

    pub fn len(&self) -> usize {
        self.vertices().len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices().is_empty()
    }

    pub fn children(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.lambda
            .row(a)
            .iter()
            .enumerate()
            .filter_map(|(b, &x)| x.then_some(b))
    }

    /// Smallest transitive pairing containing `λ`, by reachability.
    pub fn transitive_closure_rel(&self) -> FinPairing {
        let n = self.len();
        let mut reach = self.lambda.clone();
        for k in 0..n {
            for i in 0..n {
                if !reach.get(i, k) {
                    continue;
                }
                for j in 0..n {
                    if reach.get(k, j) {
                        reach.set(i, j, true);
                    }
                }
            }
        }
        reach
    }

    /// A cycle `v₀ → v₁ → … → v₀`, listed from `v₀`, if one exists.
    pub fn find_cycle(&self) -> Option<Vec<String>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Open,
            Done,
        }
        let n = self.len();
        let mut mark = vec![Mark::New; n];
        for root in 0..n {
            if mark[root] != Mark::New {
                continue;
            }
            let mut path: Vec<usize> = vec![root];
            let mut cursor: Vec<usize> = vec![0];
            mark[root] = Mark::Open;
            while let Some(&v) = path.last() {
                let next = (cursor[cursor.len() - 1]..n).find(|&b| self.lambda.get(v, b));
                match next {
                    Some(b) => {
                        *cursor.last_mut().unwrap() = b + 1;
                        match mark[b] {
                            Mark::Open => {
                                let start = path.iter().position(|&x| x == b).unwrap();
                                return Some(self.vertices().labels_of(&path[start..]));
                            }
                            Mark::New => {
                                mark[b] = Mark::Open;
                                path.push(b);
                                cursor.push(0);
                            }
                            Mark::Done => {}
                        }
                    }
                    None => {
                        mark[v] = Mark::Done;
                        path.pop();
                        cursor.pop();
                    }
                }
            }
        }
        None
    }

    /// On a finite carrier, well-foundedness is acyclicity; the error carries
    /// a cycle.
    pub fn well_founded(&self) -> Result<()> {
        match self.find_cycle() {
            Some(cycle) => Err(Error::NotWellFounded(cycle)),
            None => Ok(()),
        }
    }

    pub fn is_well_founded(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// Two distinct vertices with the same children, if any.
    pub fn extensionality_witness(&self) -> Option<(String, String)> {
        let mut seen: HashMap<&[bool], usize> = HashMap::new();
        for a in 0..self.len() {
            if let Some(&prev) = seen.get(self.lambda.row(a)) {
                let labels = self.vertices();
                return Some((labels.label(prev).to_string(), labels.label(a).to_string()));
            }
            seen.insert(self.lambda.row(a), a);
        }
        None
    }

    pub fn is_extensional(&self) -> bool {
        self.extensionality_witness().is_none()
    }

    /// Vertices with every child listed before its parent.
    pub fn children_first_order(&self) -> Result<Vec<usize>> {
        self.well_founded()?;
        let n = self.len();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for root in 0..n {
            if placed[root] {
                continue;
            }
            let mut stack = vec![(root, false)];
            while let Some((v, expanded)) = stack.pop() {
                if placed[v] {
                    continue;
                }
                if expanded {
                    placed[v] = true;
                    order.push(v);
                } else {
                    stack.push((v, true));
                    stack.extend(self.children(v).filter(|&b| !placed[b]).map(|b| (b, false)));
                }
            }
        }
        Ok(order)
    }

    /// The collapse map; fails with a cycle on non-well-founded input.
    pub fn collapse(&self) -> Result<Collapse> {
        let mut codes: Vec<Option<HfCode>> = vec![None; self.len()];
        for v in self.children_first_order()? {
            let members: Vec<&HfCode> = self
                .children(v)
                .map(|b| codes[b].as_ref().expect("children come first"))
                .collect();
            codes[v] = Some(HfCode::from_members(members)?);
        }
        Ok(Collapse {
            vertices: self.vertices().clone(),
            codes: codes
                .into_iter()
                .map(|c| c.expect("every vertex placed"))
                .collect(),
        })
    }

    /// The collapse with each value interned instead of coded: vertices get
    /// the same class exactly when their collapse codes are equal. Works on
    /// graphs too deep for the codes to be materialized.
    pub fn collapse_classes(&self) -> Result<Vec<usize>> {
        let mut interned: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut classes: Vec<Option<usize>> = vec![None; self.len()];
        for v in self.children_first_order()? {
            let mut members: Vec<usize> = self
                .children(v)
                .map(|b| classes[b].expect("children come first"))
                .collect();
            members.sort_unstable();
            members.dedup();
            let fresh = interned.len();
            classes[v] = Some(*interned.entry(members).or_insert(fresh));
        }
        Ok(classes
            .into_iter()
            .map(|c| c.expect("every vertex placed"))
            .collect())
    }

    /// Check `x ∈ f(a) ⟺ ∃b. f(b) = x ∧ λ[a,b]` for every vertex `a` and
    /// every `x` that is a member of `f(a)` or a value of `f`.
    pub fn is_morphism(&self, f: &[HfCode]) -> Result<(), MorphismFailure> {
        assert_eq!(f.len(), self.len(), "map must be total on vertices");
        let values: BTreeSet<&HfCode> = f.iter().collect();
        for a in 0..self.len() {
            let members = f[a].members().collect::<Vec<_>>();
            let candidates = members.iter().chain(values.iter().copied());
            for x in candidates {
                let lhs = f[a].mem(x);
                let rhs = self.children(a).any(|b| f[b] == *x);
                if lhs != rhs {
                    return Err(MorphismFailure {
                        vertex: self.vertices().label(a).to_string(),
                        code: x.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Parse `name: child child ...` lines. Blank lines and `#` comments are
    /// skipped; children never declared on their own line become sinks.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut declared: Vec<(String, Vec<String>)> = Vec::new();
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut offset = 0;
        for line in text.lines() {
            let line_start = offset;
            offset += line.len() + 1;
            let content = line.split('#').next().unwrap_or_default().trim();
            if content.is_empty() {
                continue;
            }
            let (name, rest) = content.split_once(':').ok_or_else(|| Error::Parse {
                position: line_start,
                message: format!("expected `name: children` in `{content}`"),
            })?;
            let name = name.trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(Error::Parse {
                    position: line_start,
                    message: format!("bad vertex name `{name}`"),
                });
            }
            if !seen.insert(name.to_string()) {
                return Err(Error::DuplicateLabel(name.to_string()));
            }
            declared.push((
                name.to_string(),
                rest.split_whitespace().map(str::to_string).collect(),
            ));
        }
        let mut labels: Vec<String> = declared.iter().map(|(n, _)| n.clone()).collect();
        for (_, children) in &declared {
            for child in children {
                if seen.insert(child.clone()) {
                    labels.push(child.clone());
                }
            }
        }
        let vertices = FinDomain::new(labels)?;
        let edges = declared
            .iter()
            .flat_map(|(n, cs)| cs.iter().map(move |c| (n.as_str(), c.as_str())));
        WfGraph::from_edges(vertices, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for a in 0..self.len() {
            let _ = write!(out, "{}:", self.vertices().label(a));
            for b in self.children(a) {
                let _ = write!(out, " {}", self.vertices().label(b));
            }
            out.push('\n');
        }
        out
    }
}

impl Serialize for WfGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.lambda.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WfGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        WfGraph::new(FinPairing::deserialize(deserializer)?).map_err(serde::de::Error::custom)
    }
}

/// Output of [`WfGraph::collapse`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collapse {
    vertices: FinDomain,
    codes: Vec<HfCode>,
}

#[derive(Serialize)]
struct CollapsedVertex {
    code: HfCode,
    braces: Option<String>,
}

impl Collapse {
    pub fn vertices(&self) -> &FinDomain {
        &self.vertices
    }

    /// Codes aligned with vertex positions.
    pub fn codes(&self) -> &[HfCode] {
        &self.codes
    }

    pub fn get(&self, label: &str) -> Option<&HfCode> {
        self.vertices.position(label).map(|i| &self.codes[i])
    }

    pub fn is_injective(&self) -> bool {
        let distinct: BTreeSet<&HfCode> = self.codes.iter().collect();
        distinct.len() == self.codes.len()
    }

    /// Every member of an image code is itself an image code.
    pub fn image_is_saturated(&self) -> bool {
        let image: BTreeSet<&HfCode> = self.codes.iter().collect();
        self.codes
            .iter()
            .all(|c| c.members().all(|m| image.contains(&m)))
    }

    pub fn to_map(&self) -> BTreeMap<String, HfCode> {
        self.vertices
            .labels()
            .iter()
            .cloned()
            .zip(self.codes.iter().cloned())
            .collect()
    }
}

/// JSON: `{"name": {"code": "3", "braces": "{{},{{}}}"}, ...}`; `braces` is
/// `null` past [`BRACES_LIMIT`].
impl Serialize for Collapse {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries: BTreeMap<&str, CollapsedVertex> = self
            .vertices
            .labels()
            .iter()
            .zip(&self.codes)
            .map(|(label, code)| {
                let braces = hf::decode_bounded(code, BRACES_LIMIT);
                (
                    label.as_str(),
                    CollapsedVertex {
                        code: code.clone(),
                        braces,
                    },
                )
            })
            .collect();
        entries.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(text: &str) -> WfGraph {
        WfGraph::parse_text(text).unwrap()
    }

    #[test]
    fn closure_examples() {
        let g = graph("a:\nb:");
        assert_eq!(g.transitive_closure_rel(), *g.pairing());

        let chain = graph("a: b\nb: c\nc:");
        let t = chain.transitive_closure_rel();
        assert!(t.related("a", "c").unwrap());
        assert!(!t.related("c", "a").unwrap());
        let again = WfGraph::new(t.clone()).unwrap().transitive_closure_rel();
        assert_eq!(again, t);
    }

    #[test]
    fn classes_follow_codes_past_the_materialization_limit() {
        let g = graph("a: b c\nb: c\nc: d\nd:\ne: c");
        let codes = g.collapse().unwrap();
        let classes = g.collapse_classes().unwrap();
        for i in 0..g.len() {
            for j in 0..g.len() {
                assert_eq!(
                    codes.codes()[i] == codes.codes()[j],
                    classes[i] == classes[j]
                );
            }
        }
        let tall = (0..9)
            .map(|i| format!("t{i}: t{}", i + 1))
            .collect::<Vec<_>>()
            .join("\n");
        let tall = graph(&format!("{tall}\nt9:\nu: t1"));
        assert!(matches!(tall.collapse(), Err(Error::CodeTooLarge(_))));
        let classes = tall.collapse_classes().unwrap();
        let u = tall.vertices().position("u").unwrap();
        let t0 = tall.vertices().position("t0").unwrap();
        assert_eq!(classes[u], classes[t0]);
    }

    #[test]
    fn well_founded_examples() {
        assert!(graph("a: b c\nb: c\nc:").is_well_founded());
        assert_eq!(graph("a: a").find_cycle(), Some(vec!["a".to_string()]));
        assert_eq!(
            graph("a: b\nb: a").find_cycle(),
            Some(vec!["a".to_string(), "b".to_string()])
        );
        assert_eq!(
            graph("x: a\na: b\nb: c\nc: a").well_founded(),
            Err(Error::NotWellFounded(vec![
                "a".into(),
                "b".into(),
                "c".into()
            ]))
        );
    }

    #[test]
    fn extensional_examples() {
        assert!(graph("a:").is_extensional());
        assert_eq!(
            graph("a:\nb:").extensionality_witness(),
            Some(("a".into(), "b".into()))
        );
        let g = WfGraph::membership_graph(&HfCode::from(11));
        assert!(g.is_extensional());
    }

    #[test]
    fn collapse_examples() {
        let empty = WfGraph::new(FinPairing::empty(
            FinDomain::default(),
            FinDomain::default(),
        ))
        .unwrap();
        assert!(empty.collapse().unwrap().codes().is_empty());

        let single = graph("v:");
        assert_eq!(single.collapse().unwrap().codes(), [HfCode::from(0)]);

        let chain = graph("v0: v1\nv1:");
        let c = chain.collapse().unwrap();
        assert_eq!(c.get("v1"), Some(&HfCode::from(0)));
        assert_eq!(c.get("v0"), Some(&HfCode::from(1)));
    }

    #[test]
    fn collapse_rejects_cycles() {
        assert_eq!(
            graph("a: b\nb: a").collapse(),
            Err(Error::NotWellFounded(vec!["a".into(), "b".into()]))
        );
    }

    #[test]
    fn non_extensional_vertices_merge() {
        let g = graph("top: x y\nx: z\ny: w\nz:\nw:");
        let c = g.collapse().unwrap();
        assert_eq!(c.get("x"), c.get("y"));
        assert_eq!(c.get("top"), Some(&HfCode::from(2)));
        assert!(g.is_morphism(c.codes()).is_ok());
        assert!(!c.is_injective());
    }

    #[test]
    fn morphism_examples() {
        let g = graph("a: b\nb:");
        let c = g.collapse().unwrap();
        assert!(g.is_morphism(c.codes()).is_ok());
        let zero = vec![HfCode::from(0); 2];
        assert_eq!(
            g.is_morphism(&zero),
            Err(MorphismFailure {
                vertex: "a".into(),
                code: HfCode::from(0)
            })
        );
    }

    #[test]
    fn permuted_collapse_is_not_a_morphism() {
        // a ∋ b ∋ c collapses to a ↦ 2, b ↦ 1, c ↦ 0
        let g = graph("a: b\nb: c\nc:");
        let c = g.collapse().unwrap();
        assert_eq!(
            c.codes(),
            [HfCode::from(2), HfCode::from(1), HfCode::from(0)]
        );
        let swaps: [[u64; 3]; 5] = [[2, 0, 1], [1, 2, 0], [1, 0, 2], [0, 2, 1], [0, 1, 2]];
        for perm in swaps {
            let f: Vec<HfCode> = perm.iter().map(|&x| HfCode::from(x)).collect();
            assert!(g.is_morphism(&f).is_err(), "{perm:?}");
        }
    }

    #[test]
    fn membership_graph_round_trip() {
        for n in [0u64, 1, 2, 3, 11, 1000, 4095] {
            let g = WfGraph::membership_graph(&HfCode::from(n));
            let c = g.collapse().unwrap();
            assert_eq!(c.get(&n.to_string()), Some(&HfCode::from(n)));
            assert!(c.image_is_saturated());
        }
    }

    #[test]
    fn text_format() {
        let g = graph("# comment\nroot: a b\n\na: b\n");
        assert_eq!(g.vertices().labels(), ["root", "a", "b"]);
        assert_eq!(g.to_text(), "root: a b\na: b\nb:\n");
        assert!(matches!(
            WfGraph::parse_text("root a b"),
            Err(Error::Parse { .. })
        ));
        assert_eq!(
            WfGraph::parse_text("a:\na: b"),
            Err(Error::DuplicateLabel("a".into()))
        );
    }

    #[test]
    fn collapse_json() {
        let c = graph("v0: v1\nv1:").collapse().unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(
            json,
            r#"{"v0":{"code":"1","braces":"{{}}"},"v1":{"code":"0","braces":"{}"}}"#
        );
    }
}
