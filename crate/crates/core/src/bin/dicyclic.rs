use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dicyclic::abelian::AbelianGroup;
use dicyclic::criteria::{
    distance_power_sets, family_corollary_check, DicContext, Verdict,
};
use dicyclic::dicyclic::ConnectionSet;
use dicyclic::reps::IrrepInventory;
use dicyclic::spectra::{cayley_graph, distance_matrix, integer_spectrum};
use dicyclic::sweep::{
    catalog_asymmetric_integral, run_one, run_sweep, sibling, Check, SweepConfig, SweepMode,
    SweepRecord,
};
use dicyclic::{Error, Result};

#[derive(Parser)]
#[command(name = "dicyclic", version, about = "Integrality checks for Cayley graphs over generalized dicyclic groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

#[derive(Args)]
struct GroupArgs {
    /// Abelian group, e.g. Z8 or Z2xZ6
    #[arg(long)]
    group: String,
    /// Element of order 2, e.g. 4 or (0,3)
    #[arg(long)]
    y: String,
}

#[derive(Args)]
struct InstanceArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// S1 as a subset of A, e.g. [1,3]
    #[arg(long, default_value = "[]")]
    s1: String,
    /// S2 as a subset of A (S = S1 ∪ xS2)
    #[arg(long, default_value = "[]")]
    s2: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Also write the output to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 16)]
    max_dic_order: usize,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: Mode,
    /// Number of random instances (random mode)
    #[arg(long, default_value_t = 0)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Comma-separated checks (default: all)
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    /// JSONL output path; summary and catalog files are written next to it
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record per-check wall time in microseconds
    #[arg(long)]
    timings: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Integrality criterion against Babai's criterion and the adjacency spectrum
    CheckIntegral(InstanceArgs),
    /// Distance-integrality criterion against Huang-Li and the distance spectrum
    CheckDistanceIntegral(InstanceArgs),
    /// Integral iff distance integral, for S2 = -S2
    CheckEquivalence(InstanceArgs),
    /// The three-condition form and redundancy of its third condition
    CheckProposition(InstanceArgs),
    /// The cyclic-A corollary against the general criterion
    CheckCyclic(InstanceArgs),
    /// S1, S2 in B(A) iff integral with S2 = -S2
    CheckBooleanPair(InstanceArgs),
    /// Atom-constant word lengths imply distance integrality
    CheckSufficient(InstanceArgs),
    /// With S2 = -S2, distance integral iff both word-length multisets are atom-constant
    CheckSymmetricS2(InstanceArgs),
    /// Distance powers of S1 ∪ x{0,y}
    CheckFamily {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Distance set, e.g. [1,2]
        #[arg(long)]
        d: String,
    },
    /// S^D computed by set products and by BFS shells
    DistancePower {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        d: String,
    },
    /// Exact adjacency and distance spectra
    Spectrum {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Write the adjacency edge list and distance matrix CSV with this prefix
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Irreducible representations of Dic(A, y)
    Irreps {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Atoms of the Boolean algebra B(A)
    Atoms {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exhaustive or random campaign
    Sweep(SweepArgs),
    /// Integral instances with S2 != -S2
    Catalog(SweepArgs),
}

/// Exit status for a completed run.
enum Outcome {
    Agree,
    Disagree,
}

fn parse_depths(text: &str) -> Result<Vec<u32>> {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    inner
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u32>().map_err(|_| Error::Parse {
                input: text.to_string(),
                reason: format!("`{t}` is not a positive integer"),
            })
        })
        .collect()
}

fn load(args: &InstanceArgs) -> Result<(DicContext, ConnectionSet)> {
    let ctx = DicContext::parse(&args.group.group, &args.group.y)?;
    let s = ctx.connection_set(&args.s1, &args.s2)?;
    Ok((ctx, s))
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    print!("{text}");
    if let Some(path) = out {
        fs::write(path, text).map_err(|e| Error::Internal(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn render_verdict(record: &SweepRecord, verdict: &Verdict, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(record).expect("record serializes") + "\n",
        Format::Text => {
            let mut out = format!(
                "group: {} y={}\nS1: {}\nS2: {}\ncheck: {}\nholds: {}\n",
                record.group, record.y, record.s1, record.s2, record.check, record.holds
            );
            for c in &verdict.conditions {
                out.push_str(&format!("  {}: {}\n", c.name, c.holds));
            }
            for w in &verdict.witnesses {
                out.push_str(&format!("witness: {}", w.description));
                if let Some(c) = &w.character {
                    out.push_str(&format!(" (character {c:?})"));
                }
                if let Some(e) = &w.element {
                    out.push_str(&format!(" (element {e})"));
                }
                if let Some(v) = &w.value {
                    out.push_str(&format!(" value {v}"));
                }
                out.push('\n');
            }
            for o in &verdict.oracles {
                out.push_str(&format!("oracle {}: {}\n", o.name, o.holds));
            }
            out.push_str(&format!("agreement: {}\n", record.agreement));
            out
        }
    }
}

fn outcome_of(record: &SweepRecord) -> Outcome {
    if record.agreement && !record.is_violation() {
        Outcome::Agree
    } else {
        Outcome::Disagree
    }
}

fn run_check(check: Check, args: &InstanceArgs) -> Result<Outcome> {
    let (ctx, s) = load(args)?;
    let start = Instant::now();
    let verdict = run_one(check, &ctx, &s, 8)?;
    let micros = start.elapsed().as_micros() as u64;
    let record = SweepRecord::from_verdict(&ctx, &s, check, &verdict, Some(micros));
    emit(&render_verdict(&record, &verdict, args.format), args.out.as_ref())?;
    Ok(outcome_of(&record))
}

#[derive(Serialize)]
struct FamilyOutput<'a> {
    group: String,
    y: String,
    s1: String,
    d: Vec<u32>,
    verdict: &'a Verdict,
}

fn verdict_text(verdict: &Verdict) -> String {
    let mut t = format!("check: {}\nholds: {}\n", verdict.claim_id, verdict.holds);
    for c in &verdict.conditions {
        t.push_str(&format!("  {}: {}\n", c.name, c.holds));
    }
    for w in &verdict.witnesses {
        t.push_str(&format!("witness: {}\n", w.description));
    }
    for o in &verdict.oracles {
        t.push_str(&format!("oracle {}: {}\n", o.name, o.holds));
    }
    t.push_str(&format!("agreement: {}\n", verdict.oracle_agreement.unwrap_or(true)));
    t
}

fn run_family(args: &InstanceArgs, d: &str) -> Result<Outcome> {
    let ctx = DicContext::parse(&args.group.group, &args.group.y)?;
    let a = ctx.group().abelian();
    let s1 = a.parse_set(&args.s1)?;
    let depths = parse_depths(d)?;
    let verdict = family_corollary_check(&ctx, &s1, &depths)?;
    let text = match args.format {
        Format::Json => {
            let out = FamilyOutput {
                group: a.to_string(),
                y: a.format_element(ctx.group().y()),
                s1: a.format_set(&s1),
                d: depths,
                verdict: &verdict,
            };
            serde_json::to_string(&out).expect("serializes") + "\n"
        }
        Format::Text => verdict_text(&verdict),
    };
    emit(&text, args.out.as_ref())?;
    Ok(if verdict.holds && verdict.oracle_agreement == Some(true) {
        Outcome::Agree
    } else {
        Outcome::Disagree
    })
}

#[derive(Serialize)]
struct DistancePowerOutput<'a> {
    group: String,
    y: String,
    s1: String,
    s2: String,
    d: Vec<u32>,
    s1_d: String,
    s2_d: String,
    verdict: &'a Verdict,
}

fn run_distance_power(args: &InstanceArgs, d: &str) -> Result<Outcome> {
    let (ctx, s) = load(args)?;
    let depths = parse_depths(d)?;
    let (s1d, s2d, verdict) = distance_power_sets(&ctx, &s, &depths)?;
    let a = ctx.group().abelian();
    let out = DistancePowerOutput {
        group: a.to_string(),
        y: a.format_element(ctx.group().y()),
        s1: a.format_set(&s.s1),
        s2: a.format_set(&s.s2),
        d: depths,
        s1_d: a.format_set(&s1d),
        s2_d: a.format_set(&s2d),
        verdict: &verdict,
    };
    let text = match args.format {
        Format::Json => serde_json::to_string(&out).expect("serializes") + "\n",
        Format::Text => format!(
            "S1^D: {}\nS2^D: {}\n{}",
            out.s1_d,
            out.s2_d,
            verdict_text(&verdict)
        ),
    };
    emit(&text, args.out.as_ref())?;
    Ok(if verdict.holds && verdict.oracle_agreement == Some(true) {
        Outcome::Agree
    } else {
        Outcome::Disagree
    })
}

fn run_spectrum(args: &InstanceArgs, export: Option<&PathBuf>) -> Result<Outcome> {
    let (ctx, s) = load(args)?;
    let graph = cayley_graph(ctx.group(), &s)?;
    let adjacency = integer_spectrum(&graph.adjacency_matrix())?;
    let distance = match distance_matrix(&graph) {
        Ok(d) => {
            if let Some(prefix) = export {
                let io = |e: std::io::Error| Error::Internal(e.to_string());
                fs::write(sibling(prefix, "distance.csv"), d.to_csv()).map_err(io)?;
            }
            Some(integer_spectrum(&d)?)
        }
        Err(Error::Disconnected) => None,
        Err(e) => return Err(e),
    };
    if let Some(prefix) = export {
        let io = |e: std::io::Error| Error::Internal(e.to_string());
        fs::write(sibling(prefix, "edges.txt"), graph.to_edge_list()).map_err(io)?;
        fs::write(sibling(prefix, "adjacency.csv"), graph.adjacency_matrix().to_csv())
            .map_err(io)?;
    }
    let text = match args.format {
        Format::Json => {
            serde_json::to_string(&serde_json::json!({
                "adjacency": adjacency,
                "distance": distance,
            }))
            .expect("serializes")
                + "\n"
        }
        Format::Text => {
            let show = |r: &dicyclic::spectra::SpectrumReport| match &r.eigenvalues {
                Some(ev) => ev
                    .iter()
                    .map(|(v, k)| if *k == 1 { v.to_string() } else { format!("{v}^{k}") })
                    .collect::<Vec<_>>()
                    .join(", "),
                None => format!(
                    "not integral (residual {})",
                    r.witness.as_ref().map(ToString::to_string).unwrap_or_default()
                ),
            };
            let mut t = format!("adjacency: {}\n", show(&adjacency));
            match &distance {
                Some(d) => t.push_str(&format!("distance: {}\n", show(d))),
                None => t.push_str("distance: graph is disconnected\n"),
            }
            t
        }
    };
    emit(&text, args.out.as_ref())?;
    Ok(Outcome::Agree)
}

#[derive(Serialize)]
struct IrrepRow {
    dim: usize,
    character: Vec<u64>,
    x_image: Option<String>,
    pi_y: i8,
}

fn run_irreps(args: &GroupArgs, format: Format) -> Result<Outcome> {
    let ctx = DicContext::parse(&args.group, &args.y)?;
    let g = ctx.group();
    let inv: &IrrepInventory = ctx.inventory();
    let y = g.y();
    let mut rows: Vec<IrrepRow> = inv
        .one_dim
        .iter()
        .map(|r| IrrepRow {
            dim: 1,
            character: r.base.index().to_vec(),
            x_image: Some(r.x_image_label().to_string()),
            pi_y: r.base.sign_at(y).unwrap_or(0),
        })
        .collect();
    rows.extend(inv.two_dim.iter().map(|r| IrrepRow {
        dim: 2,
        character: r.pi.index().to_vec(),
        x_image: None,
        pi_y: r.y_sign,
    }));
    let text = match format {
        Format::Json => {
            serde_json::to_string(&serde_json::json!({
                "group": g.abelian().to_string(),
                "y": g.abelian().format_element(y),
                "order": g.order(),
                "two_rank": g.abelian().two_rank(),
                "one_dim": inv.one_dim.len(),
                "two_dim": inv.two_dim.len(),
                "sum_of_squared_dims": inv.sum_of_squared_dims(),
                "irreps": rows,
            }))
            .expect("serializes")
                + "\n"
        }
        Format::Text => {
            let mut t = format!(
                "{g}: order {}, n = {}\none-dimensional: {}\ntwo-dimensional: {}\nsum of squared dimensions: {}\n\ndim  character  pi(y)  x\n",
                g.order(),
                g.abelian().two_rank(),
                inv.one_dim.len(),
                inv.two_dim.len(),
                inv.sum_of_squared_dims()
            );
            for r in &rows {
                t.push_str(&format!(
                    "{:<4} {:<10} {:<6} {}\n",
                    r.dim,
                    format!("{:?}", r.character),
                    r.pi_y,
                    r.x_image.as_deref().unwrap_or("[[0,pi(y)],[1,0]]")
                ));
            }
            t
        }
    };
    print!("{text}");
    Ok(Outcome::Agree)
}

fn run_atoms(group: &str, format: Format) -> Result<Outcome> {
    let a = AbelianGroup::parse(group)?;
    let atoms: Vec<String> = a.atoms().iter().map(|s| a.format_set(s)).collect();
    match format {
        Format::Json => println!("{}", serde_json::to_string(&atoms).expect("serializes")),
        Format::Text => {
            for atom in atoms {
                println!("{atom}");
            }
        }
    }
    Ok(Outcome::Agree)
}

fn sweep_config(args: &SweepArgs) -> Result<SweepConfig> {
    let checks = if args.checks.is_empty() {
        Check::ALL.to_vec()
    } else {
        args.checks.iter().map(|c| c.parse()).collect::<Result<Vec<_>>>()?
    };
    Ok(SweepConfig {
        max_dic_order: args.max_dic_order,
        mode: match args.mode {
            Mode::Exhaustive => SweepMode::Exhaustive,
            Mode::Random => SweepMode::Random,
        },
        sample_count: args.samples,
        seed: args.seed,
        jobs: args.jobs,
        checks,
        timings: args.timings,
        ..SweepConfig::default()
    })
}

fn run_sweep_cmd(args: &SweepArgs) -> Result<Outcome> {
    let config = sweep_config(args)?;
    let report = run_sweep(&config)?;
    if let Some(path) = &args.out {
        report.write(path)?;
    }
    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report.summary).expect("serializes")
        ),
        Format::Text => {
            let s = &report.summary;
            println!(
                "instances: {}\nrecords: {}\nagreements: {}\ndisagreements: {}\nviolations: {}\nintegral: {}\ndistance integral: {}\nintegral with S2 != -S2: {}",
                s.instances,
                s.records,
                s.agreements,
                s.disagreements,
                s.violations,
                s.integral,
                s.distance_integral,
                s.asymmetric_integral
            );
            print!("{}", report.summary_csv());
        }
    }
    Ok(if report.passed() {
        Outcome::Agree
    } else {
        Outcome::Disagree
    })
}

fn run_catalog(args: &SweepArgs) -> Result<Outcome> {
    let config = sweep_config(args)?;
    let catalog = catalog_asymmetric_integral(&config)?;
    let json = serde_json::to_string_pretty(&catalog).expect("serializes") + "\n";
    if let Some(path) = &args.out {
        fs::write(path, &json).map_err(|e| Error::Internal(format!("{}: {e}", path.display())))?;
    }
    match args.format {
        Format::Json => print!("{json}"),
        Format::Text => {
            for e in &catalog {
                println!(
                    "{} y={} S1={} S2={} spectrum_integral={}",
                    e.group, e.y, e.s1, e.s2, e.spectrum_integral
                );
            }
            println!("{} instance(s)", catalog.len());
        }
    }
    Ok(if catalog.iter().all(|e| e.spectrum_integral) {
        Outcome::Agree
    } else {
        Outcome::Disagree
    })
}

fn dispatch(command: &Command) -> Result<Outcome> {
    match command {
        Command::CheckIntegral(a) => run_check(Check::Integrality, a),
        Command::CheckDistanceIntegral(a) => run_check(Check::DistanceIntegrality, a),
        Command::CheckEquivalence(a) => run_check(Check::Equivalence, a),
        Command::CheckProposition(a) => run_check(Check::Proposition, a),
        Command::CheckCyclic(a) => run_check(Check::Cyclic, a),
        Command::CheckBooleanPair(a) => run_check(Check::BooleanPair, a),
        Command::CheckSufficient(a) => run_check(Check::Sufficient, a),
        Command::CheckSymmetricS2(a) => run_check(Check::SymmetricS2, a),
        Command::CheckFamily { instance, d } => run_family(instance, d),
        Command::DistancePower { instance, d } => run_distance_power(instance, d),
        Command::Spectrum { instance, export } => run_spectrum(instance, export.as_ref()),
        Command::Irreps { group, format } => run_irreps(group, *format),
        Command::Atoms { group, format } => run_atoms(group, *format),
        Command::Sweep(a) => run_sweep_cmd(a),
        Command::Catalog(a) => run_catalog(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(Outcome::Agree) => ExitCode::SUCCESS,
        Ok(Outcome::Disagree) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
