use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cayley_sigraph::analysis::ConditionStatus;
use cayley_sigraph::arith::nonunit_runs;
use cayley_sigraph::cayley::{build_sigraph, validate_spec};
use cayley_sigraph::harness::{
    analyze_graph, sweep_specs, verify_specs, AnalysisOptions, ClaimId, ClaimStatus, ClaimVerdict,
    GraphDocument, DEFAULT_SWEEP_MAX,
};
use cayley_sigraph::oracle::{enumerate_simple_cycles, DEFAULT_CYCLE_LIMIT, DEFAULT_MARKING_LIMIT};
use cayley_sigraph::{AnalysisDocument, Error, GroupSpec, Sigraph};

const EXIT_USAGE: u8 = 2;
const EXIT_GATE: u8 = 3;
const EXIT_IO: u8 = 1;

#[derive(Parser)]
#[command(
    name = "cayley-sigraph",
    version,
    about = "Signed Cayley graphs on Z_p x Z_n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the sigraph of Z_p x Z_n as DOT, JSON or an edge list
    Build {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Balance, clusterability, sign-compatibility and line-sigraph analysis
    Analyze {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        limits: Limits,
        #[command(flatten)]
        output: Output,
    },
    /// Check each claim against enumerated ground truth over one instance or a sweep
    Verify {
        #[arg(long, requires = "n")]
        p: Option<u64>,
        #[arg(long, requires = "p")]
        n: Option<u64>,
        /// Sweep every valid (p, n) with p * n at most this bound
        #[arg(long, default_value_t = DEFAULT_SWEEP_MAX)]
        sweep_max: u64,
        /// Comma-separated claim ids; listed claims are reported even when not applicable
        #[arg(long, value_delimiter = ',')]
        claims: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        limits: Limits,
        #[command(flatten)]
        output: Output,
    },
    /// Runs of consecutive residues sharing a factor with n
    Lambda {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// List every simple cycle (refused above the cycle limit)
    Cycles {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, default_value_t = DEFAULT_CYCLE_LIMIT)]
        cycle_limit: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct Instance {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: u64,
}

#[derive(Args)]
struct Limits {
    /// Largest vertex count for exhaustive cycle enumeration
    #[arg(long, default_value_t = DEFAULT_CYCLE_LIMIT)]
    cycle_limit: usize,
    /// Largest vertex count for exhaustive marking search
    #[arg(long, default_value_t = DEFAULT_MARKING_LIMIT)]
    marking_limit: usize,
}

impl Limits {
    fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            cycle_limit: self.cycle_limit,
            marking_limit: self.marking_limit,
        }
    }
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SizeGate { .. } => EXIT_GATE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn emit(output: &Output, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure {
            code: EXIT_IO,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            // A closed pipe is not an error worth reporting.
            let _ = io::stdout().lock().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn edge_list(g: &Sigraph) -> String {
    let mut out = String::new();
    for e in g.edges() {
        let _ = writeln!(out, "{} -- {} {}", g.label(e.a), g.label(e.b), e.sign);
    }
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn status_word(s: ConditionStatus) -> &'static str {
    match s {
        ConditionStatus::Pass => "pass",
        ConditionStatus::Fail => "fail",
        ConditionStatus::Unchecked => "unchecked",
    }
}

fn render_analysis(spec: &GroupSpec, g: &Sigraph, doc: &AnalysisDocument) -> String {
    let mut out = String::new();
    let vertex_list = |vs: &[usize]| vs.iter().map(|&v| g.label(v)).collect::<Vec<_>>().join(" ");
    let _ = writeln!(out, "instance     {spec}");
    let _ = writeln!(out, "vertices     {}", g.vertex_count());
    let _ = writeln!(
        out,
        "edges        {} ({} positive, {} negative)",
        doc.counts.total(),
        doc.counts.positive,
        doc.counts.negative
    );
    let _ = writeln!(out, "components   {:?}", doc.components);
    let _ = writeln!(out, "balanced     {}", yes_no(doc.balance.balanced));
    if let Some(c) = &doc.balance.witness_cycle {
        let _ = writeln!(out, "  negative cycle: {}", vertex_list(&c.vertices));
    }
    let _ = writeln!(out, "clusterable  {}", yes_no(doc.clusters.clusterable));
    match (&doc.clusters.clusters, &doc.clusters.witness_cycle) {
        (Some(cl), _) => {
            let _ = writeln!(out, "  {} clusters", cl.len());
        }
        (None, Some(c)) => {
            let _ = writeln!(out, "  one-negative cycle: {}", vertex_list(&c.vertices));
        }
        _ => {}
    }
    let _ = writeln!(out, "compatible   {}", yes_no(doc.compat.compatible));
    if let Some(m) = &doc.compat.marking {
        let _ = writeln!(out, "  marked -: {}", vertex_list(&m.negative_vertices()));
    }
    let lb = &doc.line_balance;
    let _ = writeln!(
        out,
        "line sigraph {} vertices, {} edges, balanced {}",
        lb.line_vertices,
        lb.line_edges,
        yes_no(lb.balanced)
    );
    let _ = writeln!(
        out,
        "  conditions 1a {} / 1b {} / 2 {}{}",
        status_word(lb.conditions.cond1a.status),
        status_word(lb.conditions.cond1b.status),
        status_word(lb.conditions.cond2.status),
        if lb.conditions.exhaustive {
            ""
        } else {
            " (cycles not enumerated)"
        }
    );
    let _ = writeln!(
        out,
        "lambda       {} ({} maximal runs)",
        doc.lambda.lambda,
        doc.lambda.maximal_run_count()
    );
    for pred in &doc.predictions {
        let _ = writeln!(
            out,
            "predicted    {:?}: positive {:?}, negative {:?}",
            pred.applicable_rule, pred.predicted_positive, pred.predicted_negative
        );
    }
    out
}

fn render_verdicts(rows: &[ClaimVerdict]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<12} {:<10} {:<20} {:<20} {:<15} oracle",
        "claim", "instance", "predicted", "observed", "status"
    );
    let show = |v: &Option<_>| {
        v.map_or_else(
            || "-".to_string(),
            |v: cayley_sigraph::harness::ClaimValue| v.to_string(),
        )
    };
    for r in rows {
        let oracle = match r.oracle_confirms {
            Some(true) => "confirms".to_string(),
            Some(false) => "CONTRADICTS".to_string(),
            None => r.note.clone().unwrap_or_else(|| "-".to_string()),
        };
        let _ = writeln!(
            out,
            "{:<12} {:<10} {:<20} {:<20} {:<15} {}",
            r.claim_id.as_str(),
            format!("({},{})", r.instance.p, r.instance.n),
            show(&r.predicted),
            show(&r.observed),
            r.status.to_string(),
            oracle
        );
    }
    let count = |s| rows.iter().filter(|r| r.status == s).count();
    let _ = writeln!(
        out,
        "{} rows: {} AGREE, {} DISAGREE, {} NOT_APPLICABLE",
        rows.len(),
        count(ClaimStatus::Agree),
        count(ClaimStatus::Disagree),
        count(ClaimStatus::NotApplicable)
    );
    out
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Build {
            instance,
            format,
            output,
        } => {
            let spec = validate_spec(instance.p, instance.n)?;
            let g = build_sigraph(&spec);
            let text = match format {
                Format::Dot => g.to_dot(),
                Format::Json => to_json(&GraphDocument::new(&spec, &g, None)),
                Format::Text => edge_list(&g),
            };
            emit(&output, &text)
        }
        Command::Analyze {
            instance,
            format,
            limits,
            output,
        } => {
            let spec = validate_spec(instance.p, instance.n)?;
            let g = build_sigraph(&spec);
            let doc = analyze_graph(&spec, &g, &limits.options())?;
            let text = match format {
                Format::Json => to_json(&GraphDocument::new(&spec, &g, Some(doc))),
                Format::Text => render_analysis(&spec, &g, &doc),
                Format::Dot => return Err(usage("analyze supports --format json or text")),
            };
            emit(&output, &text)
        }
        Command::Verify {
            p,
            n,
            sweep_max,
            claims,
            format,
            limits,
            output,
        } => {
            let specs = match (p, n) {
                (Some(p), Some(n)) => vec![validate_spec(p, n)?],
                _ => sweep_specs(sweep_max),
            };
            let (claim_ids, explicit) = match claims {
                Some(list) => (
                    list.iter()
                        .map(|c| c.parse::<ClaimId>())
                        .collect::<Result<Vec<_>, _>>()?,
                    true,
                ),
                None => (ClaimId::ALL.to_vec(), false),
            };
            let rows = verify_specs(&specs, &claim_ids, explicit, &limits.options())?;
            let text = match format {
                Format::Json => to_json(&rows),
                Format::Text => render_verdicts(&rows),
                Format::Dot => return Err(usage("verify supports --format json or text")),
            };
            emit(&output, &text)
        }
        Command::Lambda { n, format, output } => {
            let report = nonunit_runs(n)?;
            let text = match format {
                Format::Json => to_json(&report),
                Format::Text => {
                    let mut s = format!(
                        "n = {n}\nlambda = {}\nmaximal runs = {}\n",
                        report.lambda,
                        report.maximal_run_count()
                    );
                    for run in &report.all_runs {
                        let members: Vec<String> = (run.start..run.start + run.length)
                            .map(|x| x.to_string())
                            .collect();
                        let _ = writeln!(s, "run [{}]", members.join(", "));
                    }
                    s
                }
                Format::Dot => return Err(usage("lambda supports --format json or text")),
            };
            emit(&output, &text)
        }
        Command::Cycles {
            instance,
            cycle_limit,
            format,
            output,
        } => {
            let spec = validate_spec(instance.p, instance.n)?;
            let g = build_sigraph(&spec);
            let cycles = enumerate_simple_cycles(&g, cycle_limit)?;
            let text = match format {
                Format::Json => to_json(&cycles),
                Format::Text => {
                    let mut s = String::new();
                    for c in &cycles {
                        let labels: Vec<String> = c.vertices.iter().map(|&v| g.label(v)).collect();
                        let signs: String = c.signs.iter().map(|s| s.to_string()).collect();
                        let _ = writeln!(s, "{} [{signs}]", labels.join(" "));
                    }
                    let _ = writeln!(s, "{} cycles", cycles.len());
                    s
                }
                Format::Dot => return Err(usage("cycles supports --format json or text")),
            };
            emit(&output, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
