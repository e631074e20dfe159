#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use setkernel::{FinDomain, FinMap, FinWellOrder, Ordinal, SymCardinal, WfGraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random notation with exponents nested at most `depth` deep.
pub fn ordinal(rng: &mut impl Rng, depth: u32) -> Ordinal {
    if depth == 0 || rng.gen_bool(0.3) {
        return Ordinal::nat(small_coefficient(rng, true));
    }
    let count = rng.gen_range(1..=3);
    let mut exponents: Vec<Ordinal> = (0..count).map(|_| ordinal(rng, depth - 1)).collect();
    exponents.sort_by(|a, b| b.cmp(a));
    exponents.dedup();
    let terms = exponents
        .into_iter()
        .map(|e| (e, small_coefficient(rng, false)))
        .collect();
    Ordinal::from_terms(terms).expect("strictly decreasing exponents")
}

fn small_coefficient(rng: &mut impl Rng, allow_zero: bool) -> u64 {
    let low = u64::from(!allow_zero);
    if rng.gen_bool(0.8) {
        rng.gen_range(low..=4)
    } else {
        rng.gen_range(low..=1_000_000)
    }
}

pub fn cardinal(rng: &mut impl Rng) -> SymCardinal {
    if rng.gen_bool(0.3) {
        SymCardinal::fin(rng.gen_range(0..=1_000))
    } else {
        SymCardinal::Beth(ordinal(rng, 3))
    }
}

/// Random DAG on `n` vertices: edges only run from a later vertex in a
/// hidden topological order to an earlier one.
pub fn dag(rng: &mut impl Rng, n: usize, density: f64) -> WfGraph {
    let vertices = FinDomain::new((0..n).map(|i| format!("v{i}"))).unwrap();
    let mut topo: Vec<usize> = (0..n).collect();
    topo.shuffle(rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..i {
            if rng.gen_bool(density) {
                edges.push((
                    vertices.label(topo[i]).to_string(),
                    vertices.label(topo[j]).to_string(),
                ));
            }
        }
    }
    WfGraph::from_edges(
        vertices,
        edges.iter().map(|(a, b)| (a.as_str(), b.as_str())),
    )
    .unwrap()
}

/// Graph on vertices `0..n` from the low `n²` bits of `mask`, row-major.
pub fn graph_from_mask(n: usize, mask: u64) -> WfGraph {
    let vertices = FinDomain::range(n);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if mask >> (a * n + b) & 1 == 1 {
                edges.push((a.to_string(), b.to_string()));
            }
        }
    }
    WfGraph::from_edges(
        vertices,
        edges.iter().map(|(a, b)| (a.as_str(), b.as_str())),
    )
    .unwrap()
}

/// Random well-order of `n` labels drawn from a shuffled pool.
pub fn well_order(rng: &mut impl Rng, n: usize, prefix: &str) -> FinWellOrder {
    let mut labels: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
    labels.shuffle(rng);
    FinWellOrder::from_ranked(labels).unwrap()
}

/// Random injection between two `n`-element domains.
pub fn injection(rng: &mut impl Rng, source: &FinDomain, target: &FinDomain) -> FinMap {
    let mut images: Vec<usize> = (0..target.len()).collect();
    images.shuffle(rng);
    images.truncate(source.len());
    FinMap::new(source.clone(), target.clone(), images).unwrap()
}
