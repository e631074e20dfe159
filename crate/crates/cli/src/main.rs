use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use setkernel::cardinal::{
    beth, card_cmp, card_product, card_union, cofinality_transfer, is_strong_limit,
    rank_of_cardinal,
};
use setkernel::hf::{self, HfCode};
use setkernel::ordinal::{canonical_embedding, classify_finite, pair_index_ordinal, sup, unpair};
use setkernel::pairing::cantor_bernstein;
use setkernel::wellorder::{max_order_iso, recurse, well_order_from_choice, Restriction};
use setkernel::zfc::{self, CheckOptions, ExtensionalityMode, ModelDesc};
use setkernel::{
    ChoiceTable, Error, FinDomain, FinMap, FinPairing, FinWellOrder, Ordinal, SymCardinal, WfGraph,
};

/// Symbolic set-theory kernel.
#[derive(Parser)]
#[command(name = "setk", version)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hereditarily finite sets in the Ackermann coding.
    #[command(subcommand)]
    Hf(HfCommand),
    /// Ordinal notations below ε₀.
    #[command(subcommand)]
    Ordinal(OrdinalCommand),
    /// Finite counts and Beth values.
    #[command(subcommand)]
    Cardinal(CardinalCommand),
    /// Collapse a well-founded graph into HF codes.
    Collapse {
        /// Graph file (`name: child ...` lines or pairing JSON); `-` for stdin.
        graph: String,
    },
    /// Finite model audits.
    #[command(subcommand)]
    Zfc(ZfcCommand),
    /// Bijection from a pair of injections.
    Cb {
        /// JSON `{"f": {a: b, ...}, "g": {b: a, ...}}`; `-` for stdin.
        injections: String,
    },
    /// Finite well-orders.
    #[command(subcommand)]
    Wo(WoCommand),
}

#[derive(Subcommand)]
enum HfCommand {
    /// Evaluate a braces term or number to its code.
    Eval { term: String },
    /// Encode braces notation, noting repeated members.
    Encode { braces: String },
    /// Braces notation of a code.
    Decode { code: String },
    /// Union of the members.
    Union { code: String },
    /// Powerset (member count bounded; see RELAXED_POWERSET_BOUND).
    Powerset { code: String },
    /// Transitive closure.
    Closure { code: String },
    /// Von Neumann stage.
    Stage { code: String },
    /// Least non-member.
    Choice { code: String },
}

#[derive(Subcommand)]
enum OrdinalCommand {
    Cmp {
        a: String,
        b: String,
    },
    Succ {
        a: String,
    },
    Sup {
        #[arg(required = true)]
        family: Vec<String>,
    },
    Cofinality {
        a: String,
    },
    /// Index of a pair of naturals in the canonical order.
    Pair {
        a: String,
        b: String,
    },
    Unpair {
        n: String,
    },
    /// Order type of a finite well-order given as comma-separated labels.
    Classify {
        order: String,
    },
}

#[derive(Subcommand)]
enum CardinalCommand {
    Cmp { a: String, b: String },
    Product { a: String, b: String },
    Union { a: String, b: String },
    Beth { index: String },
    Rank { c: String },
    Stronglimit { c: String },
}

#[derive(Subcommand)]
enum ZfcCommand {
    /// Check every axiom on a model (`vk:<k>` or pairing JSON file).
    Check(ZfcCheck),
}

#[derive(Args)]
struct ZfcCheck {
    model: String,
    /// Restrict per-element checks to elements of stage below this.
    #[arg(long)]
    max_stage: Option<u32>,
    /// Rows up to this many members get every subset checked.
    #[arg(long, default_value_t = 12)]
    separation_bound: u32,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Compare rows by mutual inclusion.
    #[arg(long)]
    lenient_extensionality: bool,
}

#[derive(Subcommand)]
enum WoCommand {
    /// Evaluate a built-in recursion along an order.
    Recurse {
        /// Comma-separated labels, least first.
        order: String,
        #[arg(long, value_enum, default_value_t = Rule::Rank)]
        rule: Rule,
        /// Make the condition undefined at this label.
        #[arg(long)]
        undefined_at: Option<String>,
    },
    /// Maximal order-isomorphism between two orders.
    Iso { source: String, target: String },
    /// Well-order a domain from a choice table.
    Fromchoice {
        /// Comma-separated labels.
        domain: String,
        /// Choice table JSON; defaults to least unused label.
        #[arg(long)]
        table: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    /// Number of predecessors.
    Rank,
    /// The HF set of the values below.
    VonNeumann,
}

enum Failure {
    Domain(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<(String, Value), Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let result = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    result.map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    Ok(text)
}

fn code(text: &str) -> Result<HfCode, Error> {
    if text.trim_start().starts_with('{') {
        hf::encode(text)
    } else {
        HfCode::parse_number(text)
    }
}

fn is_hex(text: &str) -> bool {
    let t = text.trim();
    t.starts_with("0x") || t.starts_with("0X")
}

fn ordinal(text: &str) -> Result<Ordinal, Error> {
    if is_hex(text) {
        let n = HfCode::parse_number(text)?;
        let n = n.to_u64().ok_or_else(|| Error::Parse {
            position: 0,
            message: format!("`{text}` is too large"),
        })?;
        Ok(Ordinal::nat(n))
    } else {
        text.parse()
    }
}

fn cardinal(text: &str) -> Result<SymCardinal, Error> {
    match text.trim().strip_prefix("fin:") {
        Some(n) if is_hex(n) => Ok(SymCardinal::Fin(HfCode::parse_number(n)?.value().clone())),
        _ => text.parse(),
    }
}

fn labels(list: &str) -> Vec<String> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

fn code_value(c: &HfCode) -> Value {
    json!({ "code": c.to_string(), "braces": hf::decode_bounded(c, setkernel::collapse::BRACES_LIMIT) })
}

fn plain_code(c: HfCode) -> Outcome {
    let value = code_value(&c);
    Ok((c.to_string(), value))
}

fn powerset_bound() -> Result<u32, Failure> {
    match std::env::var("RELAXED_POWERSET_BOUND") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("RELAXED_POWERSET_BOUND: `{v}` is not a number"))),
        Err(_) => Ok(hf::DEFAULT_POWERSET_BOUND),
    }
}

fn run_hf(cmd: HfCommand) -> Outcome {
    match cmd {
        HfCommand::Eval { term } => plain_code(code(&term)?),
        HfCommand::Encode { braces } => {
            let encoded = hf::encode_with_notes(&braces)?;
            for d in &encoded.duplicates {
                eprintln!("note: member {} repeated at byte {}", d.member, d.position);
            }
            let mut value = code_value(&encoded.code);
            value["duplicates"] = encoded
                .duplicates
                .iter()
                .map(|d| json!({ "position": d.position, "member": d.member.to_string() }))
                .collect();
            Ok((encoded.code.to_string(), value))
        }
        HfCommand::Decode { code: c } => {
            let c = code(&c)?;
            let braces = hf::decode(&c);
            Ok((
                braces.clone(),
                json!({ "code": c.to_string(), "braces": braces }),
            ))
        }
        HfCommand::Union { code: c } => plain_code(hf::set_union(&code(&c)?)),
        HfCommand::Powerset { code: c } => plain_code(hf::powerset(&code(&c)?, powerset_bound()?)?),
        HfCommand::Closure { code: c } => plain_code(hf::transitive_closure(&code(&c)?)),
        HfCommand::Stage { code: c } => {
            let s = hf::stage(&code(&c)?);
            Ok((s.to_string(), json!({ "stage": s })))
        }
        HfCommand::Choice { code: c } => plain_code(hf::choice_fn(&code(&c)?)),
    }
}

fn ordering_name(o: std::cmp::Ordering) -> (&'static str, &'static str) {
    match o {
        std::cmp::Ordering::Less => ("<", "less"),
        std::cmp::Ordering::Equal => ("=", "equal"),
        std::cmp::Ordering::Greater => (">", "greater"),
    }
}

fn plain_ordinal(a: Ordinal) -> Outcome {
    Ok((a.to_string(), json!({ "ordinal": a })))
}

fn run_ordinal(cmd: OrdinalCommand) -> Outcome {
    match cmd {
        OrdinalCommand::Cmp { a, b } => {
            let (symbol, name) = ordering_name(ordinal(&a)?.cmp(&ordinal(&b)?));
            Ok((symbol.into(), json!({ "ordering": name })))
        }
        OrdinalCommand::Succ { a } => plain_ordinal(ordinal(&a)?.succ()),
        OrdinalCommand::Sup { family } => {
            let family = family
                .iter()
                .map(|a| ordinal(a))
                .collect::<Result<Vec<_>, _>>()?;
            plain_ordinal(sup(&family)?)
        }
        OrdinalCommand::Cofinality { a } => {
            let c = ordinal(&a)?.cofinality();
            Ok((c.to_string(), json!({ "cofinality": c })))
        }
        OrdinalCommand::Pair { a, b } => {
            let n = pair_index_ordinal(&ordinal(&a)?, &ordinal(&b)?)?;
            Ok((n.to_string(), json!({ "index": n.to_string() })))
        }
        OrdinalCommand::Unpair { n } => {
            let code = HfCode::parse_number(&n)?;
            let n: u128 = code
                .to_u64()
                .map(u128::from)
                .or_else(|| code.to_string().parse().ok())
                .ok_or_else(|| Error::Parse {
                    position: 0,
                    message: format!("`{n}` exceeds 128 bits"),
                })?;
            let (a, b) = unpair(n);
            Ok((format!("{a} {b}"), json!({ "first": a, "second": b })))
        }
        OrdinalCommand::Classify { order } => {
            let order = FinWellOrder::from_ranked(labels(&order))?;
            let embedding = canonical_embedding(&order);
            let kind = classify_finite(&order);
            let map: BTreeMap<String, String> = embedding
                .iter()
                .map(|(l, o)| (l.clone(), o.to_string()))
                .collect();
            Ok((
                kind.to_string(),
                json!({ "ordinal": kind, "embedding": map }),
            ))
        }
    }
}

fn plain_cardinal(c: SymCardinal) -> Outcome {
    Ok((c.to_string(), json!({ "cardinal": c })))
}

fn run_cardinal(cmd: CardinalCommand) -> Outcome {
    match cmd {
        CardinalCommand::Cmp { a, b } => {
            let (symbol, name) = ordering_name(card_cmp(&cardinal(&a)?, &cardinal(&b)?));
            Ok((symbol.into(), json!({ "ordering": name })))
        }
        CardinalCommand::Product { a, b } => {
            plain_cardinal(card_product(&cardinal(&a)?, &cardinal(&b)?))
        }
        CardinalCommand::Union { a, b } => {
            plain_cardinal(card_union(&cardinal(&a)?, &cardinal(&b)?))
        }
        CardinalCommand::Beth { index } => {
            let index = ordinal(&index)?;
            let c = beth(&index);
            let cofinality = cofinality_transfer(&index);
            Ok((
                c.to_string(),
                json!({ "cardinal": c, "cofinality": cofinality }),
            ))
        }
        CardinalCommand::Rank { c } => plain_ordinal(rank_of_cardinal(&cardinal(&c)?)),
        CardinalCommand::Stronglimit { c } => {
            let yes = is_strong_limit(&cardinal(&c)?);
            Ok((
                if yes { "yes" } else { "no" }.into(),
                json!({ "strong_limit": yes }),
            ))
        }
    }
}

fn run_collapse(path: &str) -> Outcome {
    let text = read_input(path)?;
    let graph = if text.trim_start().starts_with('{') {
        WfGraph::new(serde_json::from_str::<FinPairing>(&text).map_err(Error::from)?)?
    } else {
        WfGraph::parse_text(&text)?
    };
    let collapse = graph.collapse()?;
    let mut plain = String::new();
    for (label, c) in collapse.to_map() {
        let braces = hf::decode_bounded(&c, 80).unwrap_or_else(|| "…".into());
        writeln!(plain, "{label}\t{c}\t{braces}").unwrap();
    }
    let value = serde_json::to_value(&collapse).map_err(Error::from)?;
    Ok((plain.trim_end().to_string(), value))
}

fn run_zfc(cmd: ZfcCommand) -> Outcome {
    let ZfcCommand::Check(args) = cmd;
    let model = match ModelDesc::parse_shorthand(&args.model) {
        Some(model) => model?,
        None => {
            let text = read_input(&args.model)?;
            ModelDesc::from_pairing(
                &serde_json::from_str::<FinPairing>(&text).map_err(Error::from)?,
            )?
        }
    };
    let mut opts = CheckOptions {
        separation_bound: args.separation_bound,
        seed: args.seed,
        extensionality: if args.lenient_extensionality {
            ExtensionalityMode::Lenient
        } else {
            ExtensionalityMode::Strict
        },
        ..CheckOptions::default()
    };
    if let Some(s) = args.max_stage {
        opts = opts.below_stage(&model, s);
    }
    let reports = zfc::check_all(&model, &opts);
    let mut plain = String::new();
    for r in &reports {
        let detail = match (&r.witness, &r.note) {
            (Some(w), Some(n)) => format!("{w} ({n})"),
            (Some(w), None) => w.to_string(),
            (None, Some(n)) => n.clone(),
            (None, None) => String::new(),
        };
        let line = format!(
            "{:<15} {:<15} {detail}",
            r.axiom.to_string(),
            r.verdict.to_string()
        );
        writeln!(plain, "{}", line.trim_end()).unwrap();
    }
    let value = serde_json::to_value(&reports).map_err(Error::from)?;
    Ok((plain.trim_end().to_string(), value))
}

fn run_cb(path: &str) -> Outcome {
    #[derive(serde::Deserialize)]
    struct Injections {
        f: BTreeMap<String, String>,
        g: BTreeMap<String, String>,
    }
    let text = read_input(path)?;
    let input: Injections = serde_json::from_str(&text).map_err(Error::from)?;
    let a = FinDomain::new(input.f.keys().cloned())?;
    let b = FinDomain::new(input.g.keys().cloned())?;
    let f = FinMap::from_labels(a.clone(), b.clone(), &input.f)?;
    let g = FinMap::from_labels(b, a, &input.g)?;
    let h = cantor_bernstein(&f, &g)?;
    let map = h.to_labels();
    let plain = map
        .iter()
        .map(|(x, y)| format!("{x} -> {y}"))
        .collect::<Vec<_>>()
        .join("\n");
    Ok((plain, json!(map)))
}

fn run_wo(cmd: WoCommand) -> Outcome {
    match cmd {
        WoCommand::Recurse {
            order,
            rule,
            undefined_at,
        } => {
            let order = FinWellOrder::from_ranked(labels(&order))?;
            let stop = |current: &str| undefined_at.as_deref() == Some(current);
            let values: Vec<String> = match rule {
                Rule::Rank => {
                    let condition = |below: Restriction<'_, u64>, current: &str| {
                        (!stop(current)).then_some(below.len() as u64)
                    };
                    recurse(&order, &condition)
                        .values()
                        .iter()
                        .map(u64::to_string)
                        .collect()
                }
                Rule::VonNeumann => {
                    let condition = |below: Restriction<'_, HfCode>, current: &str| {
                        if stop(current) {
                            return None;
                        }
                        HfCode::from_members(below.values()).ok()
                    };
                    recurse(&order, &condition)
                        .values()
                        .iter()
                        .map(HfCode::to_string)
                        .collect()
                }
            };
            let defined: Vec<(&str, &String)> = order
                .in_order()
                .iter()
                .map(String::as_str)
                .zip(&values)
                .collect();
            let mut plain = defined
                .iter()
                .map(|(l, v)| format!("{l}\t{v}"))
                .collect::<Vec<_>>()
                .join("\n");
            let stopped = order.in_order().get(values.len());
            if let Some(at) = stopped {
                if !plain.is_empty() {
                    plain.push('\n');
                }
                write!(plain, "undefined from {at}").unwrap();
            }
            let map: BTreeMap<&str, &String> = defined.into_iter().collect();
            Ok((plain, json!({ "values": map, "undefined_from": stopped })))
        }
        WoCommand::Iso { source, target } => {
            let source = FinWellOrder::from_ranked(labels(&source))?;
            let target = FinWellOrder::from_ranked(labels(&target))?;
            let iso = max_order_iso(&source, &target);
            let pairs = iso.pairs();
            let plain = pairs
                .iter()
                .map(|(a, b)| format!("{a} -> {b}"))
                .collect::<Vec<_>>()
                .join("\n");
            let value = json!({
                "pairs": pairs,
                "full_domain": iso.len() == source.len(),
                "full_image": iso.len() == target.len(),
            });
            Ok((plain, value))
        }
        WoCommand::Fromchoice { domain, table } => {
            let domain = FinDomain::new(labels(&domain))?;
            let table = match table {
                Some(path) => {
                    serde_json::from_str::<ChoiceTable>(&read_input(&path)?).map_err(Error::from)?
                }
                None => ChoiceTable::least_unused(&domain),
            };
            let order = well_order_from_choice(&domain, |s| table.get(s))?;
            let kind = classify_finite(&order);
            let plain = format!("{}\t{kind}", order.in_order().join(","));
            Ok((plain, json!({ "order": order, "ordinal": kind })))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Hf(cmd) => run_hf(cmd),
        Command::Ordinal(cmd) => run_ordinal(cmd),
        Command::Cardinal(cmd) => run_cardinal(cmd),
        Command::Collapse { graph } => run_collapse(&graph),
        Command::Zfc(cmd) => run_zfc(cmd),
        Command::Cb { injections } => run_cb(&injections),
        Command::Wo(cmd) => run_wo(cmd),
    };
    match outcome {
        Ok((plain, value)) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&value).expect("JSON values serialize")
                );
            } else if !plain.is_empty() {
                println!("{plain}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            if cli.json {
                eprintln!("{}", json!({ "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
