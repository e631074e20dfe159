//! Benchmark bodies, shared by the `kernel` bench target.

use criterion::{black_box, BenchmarkId, Criterion};

use setkernel::hf::{self, HfCode};
use setkernel::ordinal::{pair_index, unpair};
use setkernel::wellorder::max_order_iso;
use setkernel::zfc::{self, CheckOptions, ModelDesc};
use setkernel::{FinWellOrder, WfGraph};

pub fn hf(c: &mut Criterion) {
    let mut group = c.benchmark_group("hf");
    for n in [0xffu64, 0xffff] {
        let code = HfCode::from(n);
        group.bench_with_input(BenchmarkId::new("decode", n), &code, |b, code| {
            b.iter(|| hf::decode(code))
        });
        let text = hf::decode(&code);
        group.bench_with_input(BenchmarkId::new("encode", n), &text, |b, text| {
            b.iter(|| hf::encode(text))
        });
    }
    for members in [8u64, 16] {
        let code = HfCode::from((1u64 << members) - 1);
        group.bench_with_input(BenchmarkId::new("powerset", members), &code, |b, code| {
            b.iter(|| hf::powerset(code, hf::DEFAULT_POWERSET_BOUND))
        });
    }
    group.bench_function("transitive_closure/65535", |b| {
        let code = HfCode::from(65535);
        b.iter(|| hf::transitive_closure(&code))
    });
    group.finish();
}

pub fn collapse(c: &mut Criterion) {
    let mut group = c.benchmark_group("collapse");
    for n in [1000u64, 4095] {
        let graph = WfGraph::membership_graph(&HfCode::from(n));
        group.bench_with_input(BenchmarkId::new("membership_graph", n), &graph, |b, g| {
            b.iter(|| g.collapse())
        });
    }
    let chain = (0..64)
        .map(|i| format!("v{i}: v{}", i + 1))
        .collect::<Vec<_>>()
        .join("\n")
        + "\nv64:";
    let chain = WfGraph::parse_text(&chain).unwrap();
    group.bench_function("classes/chain64", |b| b.iter(|| chain.collapse_classes()));
    group.bench_function("is_extensional/chain64", |b| {
        b.iter(|| chain.is_extensional())
    });
    group.finish();
}

pub fn zfc(c: &mut Criterion) {
    let mut group = c.benchmark_group("zfc");
    group.sample_size(20);
    for k in [3u32, 4] {
        let model = ModelDesc::vk(k).unwrap();
        group.bench_with_input(
            BenchmarkId::new("check_all", format!("vk{k}")),
            &model,
            |b, m| b.iter(|| zfc::check_all(m, &CheckOptions::default())),
        );
    }
    group.finish();
}

pub fn ordinals(c: &mut Criterion) {
    let mut group = c.benchmark_group("ordinal");
    group.bench_function("pair_round_trip/200", |b| {
        b.iter(|| {
            for a in 0..200u64 {
                for x in 0..200u64 {
                    black_box(unpair(pair_index(a, x)));
                }
            }
        })
    });
    let source = FinWellOrder::from_ranked((0..200).map(|i| format!("a{i}"))).unwrap();
    let target = FinWellOrder::from_ranked((0..150).map(|i| format!("b{i}"))).unwrap();
    group.bench_function("max_order_iso/200x150", |b| {
        b.iter(|| max_order_iso(&source, &target))
    });
    group.finish();
}
