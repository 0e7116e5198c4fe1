use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use grouprep::entropic::{entropic_vector, verify_theorem};
use grouprep::group::{build_group_bounded, validate_group, Elem, Group, GroupSpec};
use grouprep::represent::{
    classify_n2_bounded, find_abelian_representation, n2_certificate, necessary_divisibility,
    p3_uniform_representation, self_certificate, N2Classification, NonRepresentabilityWitness,
    RepresentationCertificate, SearchOptions, SearchOutcome,
};
use grouprep::repro::{self, ReproConfig, CRITERIA};
use grouprep::subgroup::{
    enumerate_subgroups_with, generated_subgroup, is_nilpotent, is_normal, EnumerateOptions,
    Subgroup, SubgroupTuple, TuplePolicy,
};
use grouprep::{Error, Execution};

#[derive(Parser)]
#[command(
    name = "grouprep",
    version,
    about = "Subgroup lattices, entropic vectors and abelian representability"
)]
struct Cli {
    /// Largest group (or abelian search) order to build.
    #[arg(long, global = true, default_value_t = grouprep::group::DEFAULT_MAX_ORDER, value_parser = clap::value_parser!(usize))]
    bound: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Abelian orders searched are c|G| for each c, e.g. `1,2,3`.
    #[arg(long, global = true, value_delimiter = ',', default_value = "1")]
    multipliers: Vec<usize>,
    /// Allow trivial and whole-group parts in tuples.
    #[arg(long, global = true)]
    include_improper: bool,
    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Input {
    /// Group spec as JSON, e.g. '{"family":"dihedral","m":4}'.
    #[arg(
        long,
        conflicts_with = "spec_file",
        required_unless_present = "spec_file"
    )]
    spec: Option<String>,
    #[arg(long)]
    spec_file: Option<PathBuf>,
}

#[derive(Args)]
struct TupleInput {
    #[command(flatten)]
    input: Input,
    /// One subgroup per selector: comma-separated generator words ("r^2,s")
    /// or a lattice position from `subgroups` ("#3").
    #[arg(required = true)]
    selectors: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Search,
    N2,
    P3,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group and validate its table.
    Group {
        #[command(flatten)]
        input: Input,
        /// Include the full Cayley table.
        #[arg(long)]
        table: bool,
    },
    /// List the subgroup lattice in canonical order.
    Subgroups {
        #[command(flatten)]
        input: Input,
    },
    /// Index table and entropies of a subgroup tuple.
    Entropy {
        #[command(flatten)]
        tuple: TupleInput,
        /// Also check the coset distribution against the indices.
        #[arg(long)]
        verify: bool,
    },
    /// Certificate or non-representability witness for a subgroup tuple.
    Represent {
        #[command(flatten)]
        tuple: TupleInput,
        #[arg(long, value_enum, default_value_t = Method::Search)]
        method: Method,
    },
    /// Decide abelian representability for pairs (nilpotency).
    Classify {
        #[command(flatten)]
        input: Input,
    },
    /// Run reproduction checks by name or number, or `all`.
    Repro {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = ReproConfig::default().seed)]
        seed: u64,
        /// Include wall-clock timings in the output.
        #[arg(long)]
        timings: bool,
    },
    /// Re-validate a certificate or witness file from scratch.
    Check { file: PathBuf },
}

/// Bad input rather than a failed computation; exits with status 2.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// A check that ran and failed; exits with status 1 after printing output.
struct Failed;

impl Cli {
    fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        }
    }

    fn policy(&self) -> TuplePolicy {
        TuplePolicy {
            allow_improper: self.include_improper,
        }
    }

    fn build(&self, input: &Input) -> anyhow::Result<Group> {
        let text = match (&input.spec, &input.spec_file) {
            (Some(s), _) => s.clone(),
            (None, Some(path)) => std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?,
            (None, None) => return Err(usage("one of --spec or --spec-file is required")),
        };
        let spec = GroupSpec::from_json(&text).map_err(|e| usage(e.to_string()))?;
        match build_group_bounded(&spec, self.bound) {
            Err(e @ (Error::InvalidParameter(_) | Error::OrderOverflow { .. })) => {
                Err(usage(e.to_string()))
            }
            other => Ok(other?),
        }
    }

    fn lattice(&self, g: &Group) -> anyhow::Result<Vec<Subgroup>> {
        Ok(enumerate_subgroups_with(
            g,
            EnumerateOptions {
                max_order: self.bound,
                exec: self.exec(),
            },
        )?)
    }
}

/// Splits on commas outside parentheses, so product labels like `(r,s)`
/// stay whole.
fn split_words(selector: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in selector.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(selector[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(selector[start..].trim());
    out
}

fn select(cli: &Cli, g: &Group, selectors: &[String]) -> anyhow::Result<Vec<Subgroup>> {
    let mut lattice: Option<Vec<Subgroup>> = None;
    selectors
        .iter()
        .map(|sel| {
            if let Some(pos) = sel.trim().strip_prefix('#') {
                let pos: usize = pos
                    .parse()
                    .map_err(|_| usage(format!("bad lattice index {sel:?}")))?;
                if lattice.is_none() {
                    lattice = Some(cli.lattice(g)?);
                }
                let subs = lattice.as_ref().expect("filled above");
                return subs.get(pos).cloned().ok_or_else(|| {
                    usage(format!("lattice has {} subgroups, no #{pos}", subs.len()))
                });
            }
            let gens = split_words(sel)
                .into_iter()
                .map(|w| {
                    g.find_label(w)
                        .ok_or_else(|| usage(format!("{w:?} is not an element of {}", g.name())))
                })
                .collect::<anyhow::Result<Vec<Elem>>>()?;
            Ok(generated_subgroup(g, &gens))
        })
        .collect()
}

fn make_tuple<'g>(
    cli: &Cli,
    g: &'g Group,
    selectors: &[String],
) -> anyhow::Result<SubgroupTuple<'g>> {
    let parts = select(cli, g, selectors)?;
    SubgroupTuple::with_policy(g, parts, cli.policy()).map_err(|e| match e {
        Error::ImproperSubgroup { .. } | Error::InvalidParameter(_) => {
            usage(format!("{e} (use --include-improper to allow)"))
        }
        other => other.into(),
    })
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn csv_unsupported(cli: &Cli, what: &str) -> anyhow::Result<()> {
    if cli.format == Format::Csv {
        bail!(usage(format!("{what} only has JSON output")));
    }
    Ok(())
}

fn label_list(g: &Group, members: &[Elem]) -> Vec<String> {
    members.iter().map(|&x| g.label(x)).collect()
}

fn cmd_group(cli: &Cli, input: &Input, table: bool) -> anyhow::Result<Result<(), Failed>> {
    let g = cli.build(input)?;
    let report = validate_group(&g);
    let valid = report.is_valid();
    if cli.format == Format::Csv {
        let mut out = io::stdout().lock();
        writeln!(out, "element,label,order")?;
        for x in 0..g.order() {
            writeln!(out, "{x},\"{}\",{}", g.label(x), g.element_order(x))?;
        }
    } else {
        let mut value = json!({
            "name": g.name(),
            "order": g.order(),
            "spec": g.spec(),
            "abelian": g.is_abelian(),
            "nilpotent": is_nilpotent(&g),
            "valid": valid,
            "validation": report,
            "labels": (0..g.order()).map(|x| g.label(x)).collect::<Vec<_>>(),
        });
        if table {
            value["table"] = json!((0..g.order()).map(|x| g.row(x)).collect::<Vec<_>>());
        }
        print_json(&value)?;
    }
    Ok(if valid { Ok(()) } else { Err(Failed) })
}

fn cmd_subgroups(cli: &Cli, input: &Input) -> anyhow::Result<()> {
    let g = cli.build(input)?;
    let subs = cli.lattice(&g)?;
    if cli.format == Format::Csv {
        let mut out = io::stdout().lock();
        writeln!(out, "index,order,normal,members")?;
        for (i, h) in subs.iter().enumerate() {
            let members: Vec<String> = h.iter().map(|x| x.to_string()).collect();
            writeln!(
                out,
                "{i},{},{},{}",
                h.size(),
                is_normal(&g, h)?,
                members.join(" ")
            )?;
        }
        return Ok(());
    }
    let rows = subs
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let members = h.members();
            Ok(json!({
                "index": i,
                "order": h.size(),
                "normal": is_normal(&g, h)?,
                "members": members,
                "labels": label_list(&g, &members),
            }))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    print_json(&json!({ "group": g.name(), "order": g.order(), "subgroups": rows }))
}

fn cmd_entropy(cli: &Cli, tuple: &TupleInput, verify: bool) -> anyhow::Result<Result<(), Failed>> {
    let g = cli.build(&tuple.input)?;
    let t = make_tuple(cli, &g, &tuple.selectors)?;
    let vector = entropic_vector(&t);
    let report = verify.then(|| verify_theorem(&t, repro::ENTROPY_TOLERANCE));
    let passed = report.as_ref().is_none_or(|r| r.passed());
    match cli.format {
        Format::Csv => vector.write_csv(io::stdout().lock())?,
        Format::Json => match report {
            None => print_json(&vector)?,
            Some(r) => print_json(&json!({ "vector": vector, "verification": r }))?,
        },
    }
    Ok(if passed { Ok(()) } else { Err(Failed) })
}

fn cmd_represent(cli: &Cli, tuple: &TupleInput, method: Method) -> anyhow::Result<()> {
    csv_unsupported(cli, "represent")?;
    let g = cli.build(&tuple.input)?;
    let t = make_tuple(cli, &g, &tuple.selectors)?;
    match method {
        Method::N2 => return print_json(&n2_certificate(&t)?),
        Method::P3 => return print_json(&p3_uniform_representation(&t)?),
        Method::Search => {}
    }
    if let Ok(cert) = self_certificate(&t) {
        return print_json(&cert);
    }
    if let Some(witness) = necessary_divisibility(&t, true) {
        return print_json(&witness);
    }
    let opts = SearchOptions {
        multipliers: cli.multipliers.clone(),
        max_order: cli.bound,
        exec: cli.exec(),
    };
    match find_abelian_representation(&t, &opts)? {
        SearchOutcome::Found { certificate } => print_json(&certificate),
        not_found => print_json(&not_found),
    }
}

fn cmd_classify(cli: &Cli, input: &Input) -> anyhow::Result<()> {
    let g = cli.build(input)?;
    let c = classify_n2_bounded(&g, cli.bound)?;
    if cli.format == Format::Csv {
        let (i1, i2, i12) = match &c {
            N2Classification::NotRepresentable { witness } => {
                let (a, b, c) = witness.indices;
                (a.to_string(), b.to_string(), c.to_string())
            }
            N2Classification::Representable => Default::default(),
        };
        let label = if c.is_representable() {
            "representable"
        } else {
            "not_representable"
        };
        let mut out = io::stdout().lock();
        writeln!(out, "group,order,nilpotent,classification,i1,i2,i12")?;
        writeln!(
            out,
            "{},{},{},{label},{i1},{i2},{i12}",
            g.name(),
            g.order(),
            is_nilpotent(&g)
        )?;
        return Ok(());
    }
    let mut value = serde_json::to_value(&c)?;
    value["group"] = json!(g.name());
    value["order"] = json!(g.order());
    value["nilpotent"] = json!(is_nilpotent(&g));
    print_json(&value)
}

fn cmd_repro(
    cli: &Cli,
    suite: &str,
    seed: u64,
    timings: bool,
) -> anyhow::Result<Result<(), Failed>> {
    let cfg = ReproConfig {
        seed,
        exec: cli.exec(),
        ..Default::default()
    };
    let keys: Vec<&str> = if suite == "all" {
        CRITERIA.iter().map(|&(_, name)| name).collect()
    } else {
        suite.split(',').map(str::trim).collect()
    };
    let outcomes = keys
        .iter()
        .map(|key| repro::run(key, &cfg).map_err(|e| usage(e.to_string())))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let all_passed = outcomes.iter().all(|o| o.passed);
    if cli.format == Format::Csv {
        let mut out = io::stdout().lock();
        writeln!(out, "id,name,passed,detail")?;
        for o in &outcomes {
            writeln!(
                out,
                "{},{},{},\"{}\"",
                o.id,
                o.name,
                o.passed,
                o.detail.replace('"', "'")
            )?;
        }
    } else {
        let rows: Vec<serde_json::Value> = outcomes
            .iter()
            .map(|o| {
                let mut row =
                    json!({ "id": o.id, "name": o.name, "passed": o.passed, "detail": o.detail });
                if timings {
                    row["elapsed_ms"] = json!(o.elapsed_ms);
                }
                row
            })
            .collect();
        print_json(&json!({ "passed": all_passed, "criteria": rows }))?;
    }
    Ok(if all_passed { Ok(()) } else { Err(Failed) })
}

fn cmd_check(cli: &Cli, file: &PathBuf) -> anyhow::Result<Result<(), Failed>> {
    csv_unsupported(cli, "check")?;
    let text =
        std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let (kind, outcome) = if value.get("index_table").is_some() {
        let cert: RepresentationCertificate =
            serde_json::from_value(value).map_err(|e| usage(format!("not a certificate: {e}")))?;
        ("certificate", cert.verify().map(|s| json!(s)))
    } else if value.get("indices").is_some() && value.get("masks").is_some() {
        let w: NonRepresentabilityWitness =
            serde_json::from_value(value).map_err(|e| usage(format!("not a witness: {e}")))?;
        (
            "witness",
            w.verify().map(|_| json!({ "indices": w.indices })),
        )
    } else {
        bail!(usage("file is neither a certificate nor a witness"));
    };
    let valid = outcome.is_ok();
    let mut report = json!({ "kind": kind, "valid": valid });
    match outcome {
        Ok(summary) => report["summary"] = summary,
        Err(e) => report["error"] = json!(e.to_string()),
    }
    print_json(&report)?;
    Ok(if valid { Ok(()) } else { Err(Failed) })
}

fn run(cli: &Cli) -> anyhow::Result<Result<(), Failed>> {
    if cli.bound == 0 {
        bail!(usage("--bound must be at least 1"));
    }
    if cli.multipliers.is_empty() || cli.multipliers.contains(&0) {
        bail!(usage("--multipliers must be positive"));
    }
    match &cli.command {
        Command::Group { input, table } => cmd_group(cli, input, *table),
        Command::Subgroups { input } => cmd_subgroups(cli, input).map(Ok),
        Command::Entropy { tuple, verify } => cmd_entropy(cli, tuple, *verify),
        Command::Represent { tuple, method } => cmd_represent(cli, tuple, *method).map(Ok),
        Command::Classify { input } => cmd_classify(cli, input).map(Ok),
        Command::Repro {
            suite,
            seed,
            timings,
        } => cmd_repro(cli, suite, *seed, *timings),
        Command::Check { file } => cmd_check(cli, file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failed)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
