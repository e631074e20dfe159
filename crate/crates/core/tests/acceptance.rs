//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod common;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use setkernel::cardinal::{
    beth, card_cmp, card_product, card_union, is_strong_limit, rank_law_1b, rank_of_cardinal,
};
use setkernel::hf::{self, HfCode};
use setkernel::ordinal::{cmp_canonical, pair_index, unpair, CanonicalPair};
use setkernel::pairing::cantor_bernstein;
use setkernel::wellorder::{max_order_iso, recurse, Restriction};
use setkernel::zfc::{self, Axiom, CheckOptions, ModelDesc, Verdict, Witness};
use setkernel::{Error, FinDomain, FinWellOrder, Ordinal, SymCardinal, WfGraph};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn subsets_by_max_symmetric_difference() -> Outcome {
    let universe = 16u32;
    let mut subsets: Vec<BTreeSet<u32>> = (0u32..1 << universe)
        .map(|mask| {
            let mut s = BTreeSet::new();
            let mut k = 0;
            let mut rest = mask;
            while rest > 0 {
                if rest % 2 == 1 {
                    s.insert(k);
                }
                rest /= 2;
                k += 1;
            }
            s
        })
        .collect();
    // A < B iff the largest element of A Δ B lies in B
    subsets.sort_by(|a, b| match a.symmetric_difference(b).max() {
        None => Ordering::Equal,
        Some(m) if b.contains(m) => Ordering::Less,
        Some(_) => Ordering::Greater,
    });
    for (n, s) in subsets.iter().enumerate() {
        let bits: BTreeSet<u32> = HfCode::from(n as u64)
            .member_indices()
            .into_iter()
            .map(|m| m as u32)
            .collect();
        ensure!(&bits == s, "position {n}: enumerator {s:?}, bits {bits:?}");
    }
    Ok(format!("{} subsets", subsets.len()))
}

fn collapse_round_trip() -> Outcome {
    for n in 0u64..1 << 12 {
        let code = HfCode::from(n);
        let graph = WfGraph::membership_graph(&code);
        let collapse = graph.collapse().map_err(|e| format!("n = {n}: {e}"))?;
        ensure!(
            collapse.get(&n.to_string()) == Some(&code),
            "n = {n} does not return to itself"
        );
    }
    Ok("n < 4096".into())
}

/// Every map `0..n → 0..16` satisfying `f(a) = {f(b) | λ[a,b]}` bitwise.
fn brute_force_morphisms(n: usize, children: &[Vec<usize>]) -> Vec<Vec<u64>> {
    let mut found = Vec::new();
    for index in 0u64..16u64.pow(n as u32) {
        let f: Vec<u64> = (0..n).map(|v| index >> (4 * v) & 15).collect();
        let ok = (0..n).all(|a| children[a].iter().fold(0u64, |acc, &b| acc | 1 << f[b]) == f[a]);
        if ok {
            found.push(f);
        }
    }
    found
}

fn collapse_uniqueness() -> Outcome {
    let mut graphs = 0;
    for n in 0..=4usize {
        for mask in 0u64..1 << (n * n) {
            let graph = common::graph_from_mask(n, mask);
            if !graph.is_well_founded() || !graph.is_extensional() {
                continue;
            }
            graphs += 1;
            let children: Vec<Vec<usize>> = (0..n).map(|a| graph.children(a).collect()).collect();
            let morphisms = brute_force_morphisms(n, &children);
            ensure!(
                morphisms.len() == 1,
                "n = {n}, edges {mask:#b}: {} morphisms",
                morphisms.len()
            );
            let collapse = graph.collapse().map_err(|e| e.to_string())?;
            let expected: Vec<HfCode> = morphisms[0].iter().map(|&c| HfCode::from(c)).collect();
            ensure!(
                collapse.codes() == expected,
                "n = {n}, edges {mask:#b}: collapse differs from search"
            );
            ensure!(
                graph.is_morphism(collapse.codes()).is_ok(),
                "collapse is not a morphism"
            );
        }
    }
    Ok(format!("{graphs} extensional well-founded graphs"))
}

fn collapse_injective_iff_extensional() -> Outcome {
    let mut rng = common::rng(4);
    let (mut extensional, mut coded) = (0, 0);
    for case in 0..1000 {
        let n = rng.gen_range(1..=10);
        let density = rng.gen_range(0.1..0.9);
        let graph = common::dag(&mut rng, n, density);
        let classes = graph
            .collapse_classes()
            .map_err(|e| format!("case {case}: {e}"))?;
        let injective = classes.iter().collect::<BTreeSet<_>>().len() == classes.len();
        let ext = graph.is_extensional();
        extensional += usize::from(ext);
        ensure!(
            injective == ext,
            "case {case}: injective {injective} vs extensional {ext}"
        );
        match graph.collapse() {
            Ok(collapse) => {
                coded += 1;
                ensure!(
                    collapse.is_injective() == injective,
                    "case {case}: codes disagree with classes"
                );
                for i in 0..n {
                    for j in 0..n {
                        let same = collapse.codes()[i] == collapse.codes()[j];
                        ensure!(
                            same == (classes[i] == classes[j]),
                            "case {case}: classes split codes"
                        );
                    }
                }
                ensure!(
                    graph.is_morphism(collapse.codes()).is_ok(),
                    "case {case}: not a morphism"
                );
            }
            Err(Error::CodeTooLarge(_)) => {}
            Err(e) => return Err(format!("case {case}: {e}")),
        }
    }
    Ok(format!(
        "1000 DAGs, {extensional} extensional, {coded} with materialized codes"
    ))
}

fn zfc_matrix() -> Outcome {
    let opts = CheckOptions::default();
    for k in 2..=4u32 {
        let model = ModelDesc::vk(k).map_err(|e| e.to_string())?;
        let reports = zfc::check_all(&model, &opts);
        let verdict: BTreeMap<Axiom, &zfc::AxiomReport> =
            reports.iter().map(|r| (r.axiom, r)).collect();
        for axiom in [
            Axiom::Foundation,
            Axiom::Extensionality,
            Axiom::Union,
            Axiom::Choice,
            Axiom::Separation,
        ] {
            ensure!(
                verdict[&axiom].verdict == Verdict::Pass,
                "V_{k}: {axiom} is {}",
                verdict[&axiom].verdict
            );
        }
        ensure!(
            verdict[&Axiom::Infinity].verdict == Verdict::Fail,
            "V_{k}: infinity passed"
        );
        let powerset = verdict[&Axiom::Powerset];
        ensure!(powerset.verdict == Verdict::Fail, "V_{k}: powerset passed");
        let Some(witness @ Witness::MissingPowerset { set, .. }) = &powerset.witness else {
            return Err(format!("V_{k}: powerset witness {:?}", powerset.witness));
        };
        let code = HfCode::parse_number(set).map_err(|e| e.to_string())?;
        ensure!(
            hf::stage(&code) == k - 1,
            "V_{k}: witness {set} is not in the top stage"
        );
        ensure!(
            zfc::witness_fails(&model, witness),
            "V_{k}: witness {set} does not re-fail"
        );
        for report in &reports {
            if let Some(w) = &report.witness {
                ensure!(
                    zfc::witness_fails(&model, w),
                    "V_{k}: {} witness unsound",
                    report.axiom
                );
            }
        }
    }
    let v5 = ModelDesc::vk(5).map_err(|e| e.to_string())?;
    let focused = CheckOptions::default().below_stage(&v5, 4);
    let powerset = zfc::check_axiom(&v5, Axiom::Powerset, &focused);
    ensure!(
        powerset.verdict == Verdict::Pass,
        "V_5 below stage 4: powerset {:?}",
        powerset.witness
    );
    Ok("V_2, V_3, V_4 and V_5 below stage 4".into())
}

fn pairing_bijection() -> Outcome {
    let n = 200u64;
    let side = (n + 1) as usize;
    let mut seen = vec![false; side * side];
    let mut largest = vec![0u128; side];
    for a in 0..=n {
        for b in 0..=n {
            let i = pair_index(a, b);
            ensure!(
                (i as usize) < seen.len(),
                "pair_index({a}, {b}) = {i} out of range"
            );
            ensure!(!seen[i as usize], "pair_index({a}, {b}) = {i} repeats");
            seen[i as usize] = true;
            ensure!(unpair(i) == (a, b), "unpair({i}) = {:?}", unpair(i));
            let m = a.max(b) as usize;
            largest[m] = largest[m].max(i);
        }
    }
    // {0..m}² fills exactly 0..(m+1)² for every m ≤ 200
    let mut running = 0u128;
    for (m, &top) in largest.iter().enumerate() {
        running = running.max(top);
        ensure!(
            running + 1 == ((m + 1) * (m + 1)) as u128,
            "m = {m}: largest index {running}"
        );
    }
    let mut pairs: Vec<CanonicalPair<u64>> = (0..=30)
        .flat_map(|a| (0..=30).map(move |b| CanonicalPair::new(a, b)))
        .collect();
    pairs.sort_by(cmp_canonical);
    for (position, p) in pairs.iter().enumerate() {
        ensure!(
            pair_index(p.first, p.second) == position as u128,
            "({}, {}) sorts to {position}",
            p.first,
            p.second
        );
    }
    Ok("n ≤ 200 bijective, n ≤ 30 matches sorted order".into())
}

fn cantor_bernstein_instances() -> Outcome {
    let mut rng = common::rng(7);
    for case in 0..500 {
        let n = rng.gen_range(0..=8);
        let a = FinDomain::new((0..n).map(|i| format!("a{i}"))).unwrap();
        let b = FinDomain::new((0..n).map(|i| format!("b{i}"))).unwrap();
        let f = common::injection(&mut rng, &a, &b);
        let g = common::injection(&mut rng, &b, &a);
        let h = cantor_bernstein(&f, &g).map_err(|e| format!("case {case}: {e}"))?;
        ensure!(h.is_bijective(), "case {case}: not a bijection");
        for x in 0..n {
            let y = h.apply(x);
            ensure!(
                f.apply(x) == y || g.apply(y) == x,
                "case {case}: h({x}) = {y} follows neither map"
            );
        }
    }
    Ok("500 instances".into())
}

/// Top-down evaluation of `f(x) = R[f restricted below x, x]`, memoized.
fn top_down<V: Clone>(
    order: &FinWellOrder,
    step: &dyn Fn(Restriction<'_, V>, &str) -> Option<V>,
) -> Vec<V> {
    fn eval<V: Clone>(
        order: &FinWellOrder,
        step: &dyn Fn(Restriction<'_, V>, &str) -> Option<V>,
        rank: usize,
        memo: &mut HashMap<usize, Option<V>>,
    ) -> Option<V> {
        if let Some(v) = memo.get(&rank) {
            return v.clone();
        }
        let mut below = Vec::with_capacity(rank);
        for r in 0..rank {
            match eval(order, step, r, memo) {
                Some(v) => below.push(v),
                None => {
                    memo.insert(rank, None);
                    return None;
                }
            }
        }
        let value = step(Restriction::new(order, &below), order.at_rank(rank));
        memo.insert(rank, value.clone());
        value
    }
    let mut memo = HashMap::new();
    let mut values = Vec::new();
    for rank in (0..order.len()).rev() {
        eval(order, step, rank, &mut memo);
    }
    for rank in 0..order.len() {
        match memo[&rank].clone() {
            Some(v) => values.push(v),
            None => break,
        }
    }
    values
}

fn recursion_engine() -> Outcome {
    let mut rng = common::rng(8);
    for case in 0..1000 {
        let (m, n) = (rng.gen_range(0..=8), rng.gen_range(0..=8));
        let source = common::well_order(&mut rng, m, "a");
        let target = common::well_order(&mut rng, n, "b");
        let iso = max_order_iso(&source, &target);
        ensure!(
            iso.is_order_preserving(),
            "case {case}: not order preserving"
        );
        ensure!(
            iso.has_saturated_domain(),
            "case {case}: domain not saturated"
        );
        ensure!(
            iso.has_saturated_image(),
            "case {case}: image not saturated"
        );
        ensure!(
            iso.is_maximal(),
            "case {case}: neither domain nor image is full"
        );

        let t = target.len();
        let least_unused = move |below: Restriction<'_, usize>, _: &str| {
            (0..t).find(|r| !below.values().contains(r))
        };
        ensure!(
            top_down(&source, &least_unused) == iso.images(),
            "case {case}: top-down order isomorphism differs"
        );

        // a random condition that may stop early
        let table: Vec<Option<u32>> = (0..source.len())
            .map(|_| rng.gen_bool(0.85).then(|| rng.gen_range(0..5)))
            .collect();
        let ranks = source.clone();
        let condition = move |below: Restriction<'_, u32>, current: &str| {
            let r = ranks.rank(current).unwrap();
            table[r].map(|x| x + below.values().iter().sum::<u32>())
        };
        let bottom_up = recurse(&source, &condition);
        ensure!(
            top_down(&source, &condition) == bottom_up.values(),
            "case {case}: top-down and bottom-up recursion differ"
        );
    }
    Ok("1000 order pairs".into())
}

/// Ordinal comparison straight from the normal-form definition.
fn oracle_cmp(a: &Ordinal, b: &Ordinal) -> Ordering {
    for (x, y) in a.terms().iter().zip(b.terms()) {
        match oracle_cmp(&x.exponent, &y.exponent) {
            Ordering::Equal => {}
            other => return other,
        }
        match x.coefficient.cmp(&y.coefficient) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    a.terms().len().cmp(&b.terms().len())
}

fn oracle_is_limit(a: &Ordinal) -> bool {
    a.terms()
        .last()
        .is_some_and(|t| !t.exponent.terms().is_empty())
}

fn cardinal_laws() -> Outcome {
    let mut rng = common::rng(9);
    for case in 0..10_000 {
        let x = common::cardinal(&mut rng);
        let y = common::cardinal(&mut rng);
        let larger = if card_cmp(&x, &y) == Ordering::Less {
            &y
        } else {
            &x
        };
        match (&x, &y) {
            (SymCardinal::Fin(p), SymCardinal::Fin(q)) => {
                ensure!(
                    card_product(&x, &y) == SymCardinal::Fin(p * q),
                    "case {case}: finite product"
                );
                ensure!(
                    card_union(&x, &y) == SymCardinal::Fin(p + q),
                    "case {case}: finite union"
                );
                ensure!(
                    card_cmp(&x, &y) == p.cmp(q),
                    "case {case}: finite comparison"
                );
            }
            _ => {
                ensure!(
                    &card_product(&x, &y) == larger,
                    "case {case}: product of {x} and {y}"
                );
                ensure!(
                    &card_union(&x, &y) == larger,
                    "case {case}: union of {x} and {y}"
                );
            }
        }
        match (&x, &y) {
            (SymCardinal::Beth(a), SymCardinal::Beth(b)) => {
                ensure!(
                    card_cmp(&beth(a), &beth(b)) == oracle_cmp(a, b),
                    "case {case}: {x} vs {y}"
                );
            }
            (SymCardinal::Fin(_), SymCardinal::Beth(_)) => {
                ensure!(
                    card_cmp(&x, &y) == Ordering::Less,
                    "case {case}: {x} not below {y}"
                );
            }
            (SymCardinal::Beth(_), SymCardinal::Fin(_)) => {
                ensure!(
                    card_cmp(&x, &y) == Ordering::Greater,
                    "case {case}: {x} not above {y}"
                );
            }
            _ => {}
        }
        let expected = match &x {
            SymCardinal::Fin(_) => false,
            SymCardinal::Beth(a) => a.terms().is_empty() || oracle_is_limit(a),
        };
        ensure!(
            is_strong_limit(&x) == expected,
            "case {case}: strong limit {x}"
        );
        if let SymCardinal::Beth(a) = &x {
            let next = a.succ();
            ensure!(
                card_cmp(&beth(a), &beth(&next)) == Ordering::Less,
                "case {case}: beth not increasing"
            );
        }
    }
    Ok("10000 random pairs".into())
}

fn rank_bookkeeping() -> Outcome {
    let mut rng = common::rng(10);
    for case in 0..1000 {
        let a = common::ordinal(&mut rng, 3);
        let rank = rank_of_cardinal(&SymCardinal::Beth(a.clone()));
        ensure!(rank == a.succ(), "case {case}: rank of beth:{a} is {rank}");
        ensure!(
            rank_law_1b(&rank).as_ref() == Ok(&a),
            "case {case}: rank_law_1b(succ {a}) is not {a}"
        );
        match rank_law_1b(&a) {
            Ok(p) => {
                ensure!(
                    !a.terms().is_empty() && !oracle_is_limit(&a),
                    "case {case}: accepted {a}"
                );
                ensure!(p.succ() == a, "case {case}: predecessor of {a} is {p}");
            }
            Err(Error::RankLevel { .. }) => {
                ensure!(
                    a.terms().is_empty() || oracle_is_limit(&a),
                    "case {case}: rejected successor {a}"
                );
            }
            Err(other) => return Err(format!("case {case}: {other}")),
        }
    }
    Ok("1000 random levels".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "subset enumeration matches bit coding",
            limit: Some(Duration::from_secs(5)),
            run: subsets_by_max_symmetric_difference,
        },
        Criterion {
            id: 2,
            name: "collapse round trip",
            limit: Some(Duration::from_secs(10)),
            run: collapse_round_trip,
        },
        Criterion {
            id: 3,
            name: "collapse uniqueness",
            limit: None,
            run: collapse_uniqueness,
        },
        Criterion {
            id: 4,
            name: "collapse injective iff extensional",
            limit: None,
            run: collapse_injective_iff_extensional,
        },
        Criterion {
            id: 5,
            name: "axiom matrix",
            limit: Some(Duration::from_secs(30)),
            run: zfc_matrix,
        },
        Criterion {
            id: 6,
            name: "finite pairing bijection",
            limit: None,
            run: pairing_bijection,
        },
        Criterion {
            id: 7,
            name: "Cantor-Bernstein bijections",
            limit: None,
            run: cantor_bernstein_instances,
        },
        Criterion {
            id: 8,
            name: "recursion engine",
            limit: None,
            run: recursion_engine,
        },
        Criterion {
            id: 9,
            name: "cardinal laws",
            limit: None,
            run: cardinal_laws,
        },
        Criterion {
            id: 10,
            name: "rank bookkeeping",
            limit: None,
            run: rank_bookkeeping,
        },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let message = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {message}"))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (other, _) => other,
        };
        let (status, detail) = match &outcome {
            Ok(detail) => ("PASS", detail),
            Err(detail) => {
                failures += 1;
                ("FAIL", detail)
            }
        };
        println!(
            "[{status}] {:>2} {:<40} {:>9.2?}  {detail}",
            c.id, c.name, elapsed
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
