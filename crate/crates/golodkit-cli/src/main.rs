//! Command-line front end. Each subcommand parses an ideal, runs one stage
//! of the pipeline, and renders text, JSON, or CSV with deterministic
//! output, so seeded runs are byte-reproducible.

mod dot;

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use golodkit::ainf::Transfer;
use golodkit::complex::BasedComplex;
use golodkit::golod::{
    gcd_condition, golod_decision, is_generic, is_strongly_generic, GolodConfig,
};
use golodkit::monomial::Monomial;
use golodkit::morse::{
    greedy_maximal_matching, minimal_reduction, staged_matching, validate_matching, Matching,
    MinimalReduction, Strategy,
};
use golodkit::parse::{parse_ideal, render_ideal};
use golodkit::verify::{run as run_verify, VerifyConfig};
use golodkit::{Error as ToolkitError, Field, MonomialIdeal};

#[derive(Parser)]
#[command(
    name = "golodkit",
    version,
    about = "Exact computations on monomial quotient rings: resolutions, matchings, transferred products, Golod verdicts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal free resolution via iterated matching reduction
    Resolve(ResolveArgs),
    /// Betti numbers of the quotient ring
    Betti(BettiArgs),
    /// Multigraded rank table of the minimal resolution
    TorTable(TorTableArgs),
    /// Construct an acyclic matching on the full cell complex
    Match(MatchArgs),
    /// Transferred product tables up to an arity cap
    Ainf(AinfArgs),
    /// Criteria report and verdict for the quotient ring
    Golod(GolodArgs),
    /// Standalone classifiers, plus validation of a matching file
    Check(CheckArgs),
    /// The lattice of subset lcms with covering relations
    LcmLattice(LcmLatticeArgs),
    /// Graphviz rendering of the cell graph with a matching highlighted
    ExportDot(ExportDotArgs),
    /// Randomized self-checks across every module
    Verify(VerifyArgs),
}

#[derive(Args)]
struct InputOpts {
    /// Ideal file, text grammar or JSON; `-` reads standard input
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Ideal source given inline instead of a file
    #[arg(long, value_name = "SRC", conflicts_with = "input")]
    inline: Option<String>,
}

impl InputOpts {
    fn read(&self) -> anyhow::Result<MonomialIdeal> {
        let text = match (&self.input, &self.inline) {
            (Some(path), _) if path.as_os_str() == "-" => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                s
            }
            (Some(path), _) => fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?,
            (None, Some(src)) => src.clone(),
            (None, None) => bail!("no ideal given; use --input or --inline"),
        };
        Ok(parse_ideal(&text)?)
    }
}

#[derive(Args)]
struct FieldOpts {
    /// Coefficient field: rat, f2, or fp:<p>
    #[arg(long, value_name = "FIELD", default_value = "rat", value_parser = parse_field)]
    field: Field,
    /// Work in characteristic two, same as --field f2; sign-free
    #[arg(long)]
    char2: bool,
}

impl FieldOpts {
    fn get(&self) -> Field {
        if self.char2 {
            Field::prime(2).expect("2 is prime")
        } else {
            self.field
        }
    }
}

fn parse_field(s: &str) -> Result<Field, String> {
    match s {
        "rat" => Ok(Field::Rational),
        "f2" => Field::prime(2).map_err(|e| e.to_string()),
        other => match other.strip_prefix("fp:") {
            Some(p) => {
                let p: u32 = p.parse().map_err(|_| format!("bad prime `{p}`"))?;
                Field::prime(p).map_err(|e| e.to_string())
            }
            None => Err(format!("unknown field `{other}`; use rat, f2, or fp:<p>")),
        },
    }
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    match s {
        "lex" => Ok(Strategy::Lex),
        "revlex" => Ok(Strategy::RevLex),
        other => match other.strip_prefix("random:") {
            Some(seed) => seed
                .parse()
                .map(Strategy::Random)
                .map_err(|_| format!("bad seed `{seed}`")),
            None => Err(format!(
                "unknown strategy `{other}`; use lex, revlex, or random:<seed>"
            )),
        },
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Construction {
    /// Greedy scan in strategy order
    Greedy,
    /// Staged batches of admissible arrows
    Jollenbeck,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct OutputOpts {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write here instead of standard output
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

impl OutputOpts {
    fn emit(&self, text: &str) -> anyhow::Result<()> {
        match &self.output {
            Some(path) => fs::write(path, text)
                .with_context(|| format!("writing {}", path.display()))?,
            None => print!("{text}"),
        }
        Ok(())
    }
}

#[derive(Args)]
struct ResolveArgs {
    #[command(flatten)]
    input: InputOpts,
    #[command(flatten)]
    field: FieldOpts,
    /// Matching order: lex, revlex, or random:<seed>
    #[arg(long, value_name = "STRATEGY", default_value = "lex", value_parser = parse_strategy)]
    strategy: Strategy,
    /// Skip validation of the constructed complexes
    #[arg(long)]
    unchecked: bool,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
struct BettiArgs {
    #[command(flatten)]
    input: InputOpts,
    #[command(flatten)]
    field: FieldOpts,
    #[arg(long, value_name = "STRATEGY", default_value = "lex", value_parser = parse_strategy)]
    strategy: Strategy,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
struct TorTableArgs {
    #[command(flatten)]
    input: InputOpts,
    #[command(flatten)]
    field: FieldOpts,
    #[arg(long, value_name = "STRATEGY", default_value = "lex", value_parser = parse_strategy)]
    strategy: Strategy,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
struct MatchArgs {
    #[command(flatten)]
    input: InputOpts,
    #[command(flatten)]
    field: FieldOpts,
    #[arg(long, value_name = "STRATEGY", default_value = "lex", value_parser = parse_strategy)]
    strategy: Strategy,
    #[arg(long, value_enum, default_value_t = Construction::Greedy)]
    construction: Construction,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
struct AinfArgs {
    #[command(flatten)]
    input: InputOpts,
    #[command(flatten)]
    field: FieldOpts,
    #[arg(long, value_name = "STRATEGY", default_value = "lex", value_parser = parse_strategy)]
    strategy: Strategy,
    /// Use this matching file instead of constructing one
    #[arg(long, value_name = "PATH")]
    matching: Option<PathBuf>,
    /// Highest arity to materialize
    #[arg(long, value_name = "N", default_value_t = 3)]
    max_arity: usize,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
struct GolodArgs {
    #[command(flatten)]
    input: InputOpts,
    #[command(flatten)]
    field: FieldOpts,
    /// Highest arity whose minimality is tested
    #[arg(long, value_name = "N", default_value_t = 2)]
    max_arity: usize,
    /// Truncation order of the series bound
    #[arg(long, value_name = "N", default_value_t = 8)]
    series_order: usize,
    /// Strategies probed in order, repeatable; default lex, revlex,
    /// random:1, random:2
    #[arg(long = "strategy", value_name = "STRATEGY", value_parser = parse_strategy)]
    strategies: Vec<Strategy>,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    input: InputOpts,
    #[command(flatten)]
    field: FieldOpts,
    /// Coprime generator pairs need a third generator dividing their lcm
    #[arg(long)]
    gcd: bool,
    /// No two generators share a positive exponent on any variable
    #[arg(long)]
    strongly_generic: bool,
    /// Shared exponents are covered by a third generator with full support
    #[arg(long)]
    generic: bool,
    /// Validate this matching file against the full complex
    #[arg(long, value_name = "PATH")]
    matching: Option<PathBuf>,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
struct LcmLatticeArgs {
    #[command(flatten)]
    input: InputOpts,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
struct ExportDotArgs {
    #[command(flatten)]
    input: InputOpts,
    #[command(flatten)]
    field: FieldOpts,
    #[arg(long, value_name = "STRATEGY", default_value = "lex", value_parser = parse_strategy)]
    strategy: Strategy,
    /// Render this matching file instead of constructing one
    #[arg(long, value_name = "PATH")]
    matching: Option<PathBuf>,
    /// Write here instead of standard output
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Seed for every random draw
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Random ideals for the per-ideal checks
    #[arg(long, default_value_t = 200)]
    ideals: usize,
    /// Random pairs for the strand comparison
    #[arg(long, default_value_t = 25)]
    strand_pairs: usize,
    /// Ideals re-run under every strategy
    #[arg(long, default_value_t = 50)]
    independence: usize,
    #[command(flatten)]
    out: OutputOpts,
}

fn main() -> ExitCode {
    // Rust ignores SIGPIPE by default, turning `golodkit ... | head` into a
    // panic on the first failed write. Restore the usual silent exit.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = match e.downcast_ref::<ToolkitError>() {
                Some(ToolkitError::TooManyGenerators { .. }) => 3,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Resolve(args) => cmd_resolve(args),
        Command::Betti(args) => cmd_betti(args),
        Command::TorTable(args) => cmd_tor_table(args),
        Command::Match(args) => cmd_match(args),
        Command::Ainf(args) => cmd_ainf(args),
        Command::Golod(args) => cmd_golod(args),
        Command::Check(args) => cmd_check(args),
        Command::LcmLattice(args) => cmd_lcm_lattice(args),
        Command::ExportDot(args) => cmd_export_dot(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn reduce(
    ideal: &MonomialIdeal,
    field: Field,
    strategy: Strategy,
    checked: bool,
) -> anyhow::Result<(BasedComplex, MinimalReduction)> {
    let taylor = BasedComplex::taylor_full(ideal.clone(), field, checked)?;
    let reduction = minimal_reduction(&taylor, strategy)?;
    Ok((taylor, reduction))
}

fn ranks_tuple(counts: &[usize]) -> String {
    let parts: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(","))
}

fn cmd_resolve(args: ResolveArgs) -> anyhow::Result<ExitCode> {
    let ideal = args.input.read()?;
    let field = args.field.get();
    let (_, reduction) = reduce(&ideal, field, args.strategy, !args.unchecked)?;
    let complex = &reduction.complex;
    let text = match args.out.format {
        Format::Json => format!("{}\n", complex.to_json()),
        Format::Csv => {
            let mut s = String::from("degree,rank\n");
            for (n, c) in reduction.critical_counts().iter().enumerate() {
                s.push_str(&format!("{n},{c}\n"));
            }
            s
        }
        Format::Text => {
            let ring = ideal.ring();
            let rounds = reduction.rounds.len();
            let plural = if rounds == 1 { "round" } else { "rounds" };
            let mut s = format!(
                "minimal resolution over {field} (strategy {}, {rounds} {plural})\n",
                args.strategy
            );
            s.push_str(&render_ideal(&ideal));
            s.push_str(&format!("ranks: {}\n", ranks_tuple(&reduction.critical_counts())));
            for n in 0..=complex.max_degree() {
                let cells = complex.cells_of_degree(n);
                if cells.is_empty() {
                    continue;
                }
                let rendered: Vec<String> = cells
                    .iter()
                    .map(|c| format!("{} [{}]", c.label(), complex.multidegree(*c).render(ring)))
                    .collect();
                s.push_str(&format!("degree {n}: {}\n", rendered.join(", ")));
            }
            for cell in complex.cells() {
                let image = complex.diff(*cell);
                if !image.is_zero() {
                    s.push_str(&format!("d({}) = {}\n", cell.label(), image.render(ring)));
                }
            }
            s
        }
    };
    args.out.emit(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_betti(args: BettiArgs) -> anyhow::Result<ExitCode> {
    let ideal = args.input.read()?;
    let (_, reduction) = reduce(&ideal, args.field.get(), args.strategy, false)?;
    let counts = reduction.critical_counts();
    let text = match args.out.format {
        Format::Text => format!("{}\n", ranks_tuple(&counts)),
        Format::Json => format!("{}\n", serde_json::json!({ "betti": counts })),
        Format::Csv => {
            let mut s = String::from("degree,rank\n");
            for (n, c) in counts.iter().enumerate() {
                s.push_str(&format!("{n},{c}\n"));
            }
            s
        }
    };
    args.out.emit(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_tor_table(args: TorTableArgs) -> anyhow::Result<ExitCode> {
    let ideal = args.input.read()?;
    let (_, reduction) = reduce(&ideal, args.field.get(), args.strategy, false)?;
    let complex = &reduction.complex;
    let ring = ideal.ring();
    // rank per (degree, multidegree), ascending
    let mut rows: Vec<(usize, Monomial, usize)> = Vec::new();
    for n in 0..=complex.max_degree() {
        let mut by_mdeg: BTreeMap<Monomial, usize> = BTreeMap::new();
        for cell in complex.cells_of_degree(n) {
            *by_mdeg.entry(complex.multidegree(cell)).or_default() += 1;
        }
        for (m, count) in by_mdeg {
            rows.push((n, m, count));
        }
    }
    let text = match args.out.format {
        Format::Text => {
            let mut s = String::from("degree  multidegree  rank\n");
            for (n, m, count) in &rows {
                s.push_str(&format!("{n}  {}  {count}\n", m.render(ring)));
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("degree,multidegree,rank\n");
            for (n, m, count) in &rows {
                s.push_str(&format!("{n},{},{count}\n", m.render(ring)));
            }
            s
        }
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(n, m, count)| {
                    serde_json::json!({
                        "degree": n,
                        "multidegree": m.render(ring),
                        "rank": count,
                    })
                })
                .collect();
            format!("{}\n", serde_json::Value::Array(items))
        }
    };
    args.out.emit(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_match(args: MatchArgs) -> anyhow::Result<ExitCode> {
    let ideal = args.input.read()?;
    let field = args.field.get();
    let taylor = BasedComplex::taylor_full(ideal.clone(), field, false)?;
    let matching = match args.construction {
        Construction::Greedy => greedy_maximal_matching(&taylor, args.strategy),
        Construction::Jollenbeck => {
            let outcome = staged_matching(&ideal, field)?;
            if let Some(stall) = &outcome.stall {
                eprintln!("warning: {stall}");
            }
            outcome.matching
        }
    };
    let text = match args.out.format {
        Format::Json => format!("{}\n", matching.to_json()),
        Format::Csv => {
            let mut s = String::from("source,target,stage,substage\n");
            for a in matching.arrows() {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    a.source.label(),
                    a.target.label(),
                    a.stage.map_or(String::new(), |v| v.to_string()),
                    a.substage.map_or(String::new(), |v| v.to_string()),
                ));
            }
            s
        }
        Format::Text => {
            let criticals = matching.critical_cells(&taylor);
            let mut counts = vec![0usize; taylor.max_degree() + 1];
            for c in &criticals {
                counts[c.len()] += 1;
            }
            while counts.last() == Some(&0) {
                counts.pop();
            }
            let mut s = format!("{} arrows\n", matching.len());
            for a in matching.arrows() {
                let tag = match (a.stage, a.substage) {
                    (Some(i), Some(j)) => format!(" [stage {i}.{j}]"),
                    (Some(i), None) => format!(" [stage {i}]"),
                    _ => String::new(),
                };
                s.push_str(&format!(
                    "  {} -> {}{tag}\n",
                    a.source.label(),
                    a.target.label()
                ));
            }
            let labels: Vec<String> = criticals.iter().map(|c| c.label()).collect();
            s.push_str(&format!("critical cells: {}\n", labels.join(", ")));
            s.push_str(&format!("critical counts: {}\n", ranks_tuple(&counts)));
            s
        }
    };
    args.out.emit(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_ainf(args: AinfArgs) -> anyhow::Result<ExitCode> {
    let ideal = args.input.read()?;
    let field = args.field.get();
    let taylor = BasedComplex::taylor_full(ideal.clone(), field, false)?;
    let transfer = match &args.matching {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let matching = Matching::from_json(&text)?;
            Transfer::new(taylor, &matching)?
        }
        None => {
            let reduction = minimal_reduction(&taylor, args.strategy)?;
            Transfer::from_homotopy(
                taylor.clone(),
                reduction.homotopy.clone(),
                reduction.criticals().to_vec(),
            )
        }
    };
    let structure = transfer.mu_structure(args.max_arity);
    let ring = ideal.ring();
    let basis = transfer.positive_criticals();
    let labels: Vec<String> = basis.iter().map(|c| c.label()).collect();
    let render = |v: &golodkit::complex::ModuleElement| -> String {
        if v.is_zero() {
            "0".to_string()
        } else {
            v.render(ring)
        }
    };

    let text = match args.out.format {
        Format::Text => {
            let mut s = format!("transferred products over {field} through arity {}\n", args.max_arity);
            s.push_str(&format!("basis: {}\n", labels.join(", ")));
            for arity in 2..=args.max_arity {
                let Some(table) = structure.table(arity) else { continue };
                s.push_str(&format!("arity {arity}:\n"));
                let mut zeros = 0usize;
                for (tuple, value) in table {
                    if value.is_zero() {
                        zeros += 1;
                        continue;
                    }
                    let t: Vec<String> = tuple.iter().map(|c| c.label()).collect();
                    s.push_str(&format!("  mu({}) = {}\n", t.join(", "), render(value)));
                }
                s.push_str(&format!("  ({zeros} further entries vanish)\n"));
                let m = structure.minimality(arity).expect("materialized arity");
                if m.minimal {
                    s.push_str(&format!("  arity {arity} is minimal\n"));
                } else {
                    let (tuple, cell) = m.offender.as_ref().expect("offender recorded");
                    let t: Vec<String> = tuple.iter().map(|c| c.label()).collect();
                    s.push_str(&format!(
                        "  arity {arity} is not minimal: mu({}) has a unit at {}\n",
                        t.join(", "),
                        cell.label()
                    ));
                }
            }
            s
        }
        Format::Csv => {
            let mut s = String::new();
            // arity 2 as a square table, rows and columns in basis order
            if args.max_arity >= 2 {
                if let Some(table) = structure.table(2) {
                    s.push_str("mu2");
                    for l in &labels {
                        s.push_str(&format!(",{l}"));
                    }
                    s.push('\n');
                    for a in &basis {
                        s.push_str(&a.label());
                        for b in &basis {
                            let value = table
                                .get(&vec![*a, *b])
                                .map(&render)
                                .unwrap_or_else(|| "0".to_string());
                            s.push_str(&format!(",{value}"));
                        }
                        s.push('\n');
                    }
                }
            }
            for arity in 3..=args.max_arity {
                let Some(table) = structure.table(arity) else { continue };
                s.push('\n');
                s.push_str("arity,inputs,value\n");
                for (tuple, value) in table {
                    let t: Vec<String> = tuple.iter().map(|c| c.label()).collect();
                    s.push_str(&format!("{arity},({}),{}\n", t.join(" "), render(value)));
                }
            }
            s
        }
        Format::Json => {
            let mut tables = serde_json::Map::new();
            for arity in 2..=args.max_arity {
                let Some(table) = structure.table(arity) else { continue };
                if arity == 2 {
                    let entries: Vec<Vec<String>> = basis
                        .iter()
                        .map(|a| {
                            basis
                                .iter()
                                .map(|b| {
                                    table
                                        .get(&vec![*a, *b])
                                        .map(&render)
                                        .unwrap_or_else(|| "0".to_string())
                                })
                                .collect()
                        })
                        .collect();
                    tables.insert(
                        arity.to_string(),
                        serde_json::json!({ "basis": labels, "entries": entries }),
                    );
                } else {
                    let items: Vec<_> = table
                        .iter()
                        .map(|(tuple, value)| {
                            let t: Vec<String> = tuple.iter().map(|c| c.label()).collect();
                            serde_json::json!({ "inputs": t, "value": render(value) })
                        })
                        .collect();
                    tables.insert(arity.to_string(), serde_json::Value::Array(items));
                }
            }
            let mut minimality = serde_json::Map::new();
            for arity in 2..=args.max_arity {
                let Some(m) = structure.minimality(arity) else { continue };
                let offender = m.offender.as_ref().map(|(tuple, cell)| {
                    let t: Vec<String> = tuple.iter().map(|c| c.label()).collect();
                    serde_json::json!({ "inputs": t, "cell": cell.label() })
                });
                minimality.insert(
                    arity.to_string(),
                    serde_json::json!({
                        "minimal": m.minimal,
                        "offender": offender,
                    }),
                );
            }
            let doc = serde_json::json!({
                "field": field.to_string(),
                "cap": args.max_arity,
                "tables": tables,
                "minimality": minimality,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc)?)
        }
    };
    args.out.emit(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_golod(args: GolodArgs) -> anyhow::Result<ExitCode> {
    let ideal = args.input.read()?;
    let mut config = GolodConfig {
        cap: args.max_arity,
        series_order: args.series_order,
        ..GolodConfig::default()
    };
    if !args.strategies.is_empty() {
        config.strategies = args.strategies.clone();
    }
    let report = golod_decision(&ideal, args.field.get(), &config)?;
    let text = match args.out.format {
        Format::Text => report.render_text(),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report)?),
        Format::Csv => {
            let mut s = String::from("criterion,holds,witness\n");
            let row = |name: &str, holds: bool, witness: &Option<String>| {
                format!(
                    "{name},{holds},{}\n",
                    witness.as_deref().map(quote_csv).unwrap_or_default()
                )
            };
            s.push_str(&row(
                "gcd",
                report.gcd_condition.holds,
                &report.gcd_condition.witness,
            ));
            s.push_str(&row(
                "lcm",
                report.lcm_condition.holds,
                &report.lcm_condition.witness,
            ));
            s.push_str(&row(
                "product-trivial",
                report.product_trivial.holds,
                &report.product_trivial.witness,
            ));
            for m in &report.mu_minimality {
                let witness = m.offender.as_ref().map(|o| {
                    format!("({}) -> {}", o.inputs.join(", "), o.cell)
                });
                s.push_str(&row(&format!("mu{}-minimal", m.arity), m.minimal, &witness));
            }
            s
        }
    };
    args.out.emit(&text)?;
    if report.is_inconclusive() {
        Ok(ExitCode::from(2))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn quote_csv(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_check(args: CheckArgs) -> anyhow::Result<ExitCode> {
    let ideal = args.input.read()?;
    let ring = ideal.ring();
    let all = !args.gcd && !args.strongly_generic && !args.generic && args.matching.is_none();
    let mut lines: Vec<String> = Vec::new();
    let mut doc = serde_json::Map::new();

    if args.gcd || all {
        let verdict = gcd_condition(&ideal);
        let witness = verdict.witness.map(|(i, j)| {
            format!(
                "({}, {})",
                ideal.generator(i).render(ring),
                ideal.generator(j).render(ring)
            )
        });
        match &witness {
            None => lines.push("gcd condition: holds".to_string()),
            Some(w) => lines.push(format!("gcd condition: fails at {w}")),
        }
        doc.insert(
            "gcd".to_string(),
            serde_json::json!({ "holds": verdict.holds, "witness": witness }),
        );
    }
    if args.strongly_generic || all {
        let verdict = is_strongly_generic(&ideal);
        let witness = verdict.witness.map(|(var, i, j)| {
            format!(
                "{} shares an exponent in ({}, {})",
                ring.var_names()[var],
                ideal.generator(i).render(ring),
                ideal.generator(j).render(ring)
            )
        });
        match &witness {
            None => lines.push("strongly generic: yes".to_string()),
            Some(w) => lines.push(format!("strongly generic: no, {w}")),
        }
        doc.insert(
            "strongly_generic".to_string(),
            serde_json::json!({ "holds": verdict.holds, "witness": witness }),
        );
    }
    if args.generic || all {
        let verdict = is_generic(&ideal);
        let witness = verdict.witness.map(|(var, i, j)| {
            format!(
                "{} shares an exponent in ({}, {}) with no covering generator",
                ring.var_names()[var],
                ideal.generator(i).render(ring),
                ideal.generator(j).render(ring)
            )
        });
        match &witness {
            None => lines.push("generic: yes".to_string()),
            Some(w) => lines.push(format!("generic: no, {w}")),
        }
        doc.insert(
            "generic".to_string(),
            serde_json::json!({ "holds": verdict.holds, "witness": witness }),
        );
    }
    if let Some(path) = &args.matching {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let matching = Matching::from_json(&text)?;
        let taylor = BasedComplex::taylor_full(ideal.clone(), args.field.get(), false)?;
        match validate_matching(&taylor, &matching) {
            Ok(()) => {
                lines.push(format!("matching: valid ({} arrows)", matching.len()));
                doc.insert(
                    "matching".to_string(),
                    serde_json::json!({ "valid": true, "arrows": matching.len() }),
                );
            }
            Err(problem) => {
                lines.push(format!("matching: invalid, {problem}"));
                doc.insert(
                    "matching".to_string(),
                    serde_json::json!({ "valid": false, "problem": problem.to_string() }),
                );
            }
        }
    }

    let text = match args.out.format {
        Format::Text => format!("{}\n", lines.join("\n")),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&doc)?),
        Format::Csv => {
            let mut s = String::from("check,result\n");
            for line in &lines {
                let (name, rest) = line.split_once(": ").unwrap_or((line, ""));
                s.push_str(&format!("{},{}\n", name, quote_csv(rest)));
            }
            s
        }
    };
    args.out.emit(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_lcm_lattice(args: LcmLatticeArgs) -> anyhow::Result<ExitCode> {
    let ideal = args.input.read()?;
    let ring = ideal.ring();
    let lattice: Vec<Monomial> = ideal.lcm_lattice().into_iter().collect();
    // covered elements: maximal proper divisors within the lattice
    let covers: Vec<(String, Vec<String>)> = lattice
        .iter()
        .map(|mu| {
            let divisors: Vec<Monomial> = lattice
                .iter()
                .filter(|nu| *nu != mu && nu.divides(mu))
                .cloned()
                .collect();
            let maximal: Vec<String> = divisors
                .iter()
                .filter(|nu| {
                    !divisors
                        .iter()
                        .any(|other| other != *nu && nu.divides(other))
                })
                .map(|nu| nu.render(ring))
                .collect();
            (mu.render(ring), maximal)
        })
        .collect();
    let text = match args.out.format {
        Format::Json => {
            let items: Vec<_> = covers
                .iter()
                .map(|(m, c)| serde_json::json!({ "multidegree": m, "covers": c }))
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&serde_json::Value::Array(items))?)
        }
        Format::Csv => {
            let mut s = String::from("multidegree,cover\n");
            for (m, cs) in &covers {
                for c in cs {
                    s.push_str(&format!("{m},{c}\n"));
                }
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (m, cs) in &covers {
                if cs.is_empty() {
                    s.push_str(&format!("{m}\n"));
                } else {
                    s.push_str(&format!("{m} covers {}\n", cs.join(", ")));
                }
            }
            s
        }
    };
    args.out.emit(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_export_dot(args: ExportDotArgs) -> anyhow::Result<ExitCode> {
    let ideal = args.input.read()?;
    let field = args.field.get();
    let taylor = BasedComplex::taylor_full(ideal, field, false)?;
    let matching = match &args.matching {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            Matching::from_json(&text)?
        }
        None => greedy_maximal_matching(&taylor, args.strategy),
    };
    let text = dot::render(&taylor, &matching);
    match &args.output {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let config = VerifyConfig {
        seed: args.seed,
        ideals: args.ideals,
        strand_pairs: args.strand_pairs,
        independence_ideals: args.independence,
        ..VerifyConfig::default()
    };
    match run_verify(&config) {
        Ok(report) => {
            let text = match args.out.format {
                Format::Json => {
                    let checks: Vec<_> = report
                        .checks
                        .iter()
                        .map(|(name, cases)| serde_json::json!({ "check": name, "cases": cases }))
                        .collect();
                    format!(
                        "{}\n",
                        serde_json::json!({ "seed": report.seed, "checks": checks })
                    )
                }
                Format::Csv => {
                    let mut s = String::from("check,cases\n");
                    for (name, cases) in &report.checks {
                        s.push_str(&format!("{name},{cases}\n"));
                    }
                    s
                }
                Format::Text => report.to_string(),
            };
            args.out.emit(&text)?;
            Ok(ExitCode::SUCCESS)
        }
        Err(failure) => {
            eprintln!("{failure}");
            Ok(ExitCode::FAILURE)
        }
    }
}
