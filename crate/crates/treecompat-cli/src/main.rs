//! Command line front end: generate extremal constraint families, decide
//! compatibility of constraint files, run the verification suites, and
//! export quartet graphs as DOT.
//!
//! Reports are line-oriented `key=value` text. Exit codes: 0 for
//! compatible/pass, 1 for incompatible/fail, 2 for any error.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use treecompat::constructions::{
    minimal_incompatible_characters, minimal_incompatible_quartets, FoldedLadder, LadderFamily,
    RingFamily, SharedChoice,
};
use treecompat::verify::{self, CriterionReport};
use treecompat::{characters, formats, quartets, triplets, LabelUniverse, Verdict};

#[derive(Parser)]
#[command(name = "treecompat", version, about = "Compatibility of quartets, triplets, and multi-state characters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a constraint family in its line format.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Decide compatibility of a constraint file.
    Check {
        /// Constraint kind stored in the file.
        kind: CheckKind,
        /// Decision procedure to run.
        #[arg(long)]
        method: MethodArg,
        /// Input file, one constraint per line.
        input: PathBuf,
        /// Label cap for the exhaustive methods; larger inputs are refused.
        #[arg(long)]
        max_labels: Option<usize>,
        /// Omit timing so reports are byte-identical across runs.
        #[arg(long)]
        deterministic: bool,
    },
    /// Run one named verification suite.
    Verify {
        /// Suite to run.
        kind: VerifyKind,
        /// Largest rail length (obs1, lemma2) or witness range (lemma3-4).
        #[arg(long)]
        max: Option<usize>,
        /// Largest label count (thm3, cor3).
        #[arg(long)]
        n_max: Option<usize>,
        /// Largest state budget or ring size (thm5, thm6).
        #[arg(long)]
        r_max: Option<usize>,
        /// Number of random instances (lemma1, thm2-agreement, thm7-agreement, thm8).
        #[arg(long)]
        cases: Option<usize>,
        /// Seed for the random suites.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads for independent sub-checks; never changes the report.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Omit timing so reports are byte-identical across runs.
        #[arg(long)]
        deterministic: bool,
    },
    /// Print the quartet graph of a quartet file as DOT.
    ExportDot {
        /// Input quartet file.
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Ladder quartet family on rails of length s and t.
    Qst {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evenly split ladder quartet family on n labels.
    Theorem3 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Character family with state budget r.
    Theorem5 {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hub-and-ring triplet family of size r.
    Rr {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Folded ladder triplet family on n labels.
    Corollary3 {
        #[arg(long)]
        n: usize,
        /// Short-rail corner shared by every triplet.
        #[arg(long, value_enum, default_value_t = Corner::A2)]
        ell: Corner,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Characters induced by the quartets of a file.
    Cq {
        /// Quartet file to lift.
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Corner {
    A1,
    A2,
}

#[derive(Copy, Clone, ValueEnum)]
enum CheckKind {
    Quartets,
    Characters,
    Triplets,
}

#[derive(Copy, Clone, ValueEnum)]
enum MethodArg {
    Brute,
    Unification,
    Build,
    Sweep,
}

impl fmt::Display for MethodArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            MethodArg::Brute => "brute",
            MethodArg::Unification => "unification",
            MethodArg::Build => "build",
            MethodArg::Sweep => "sweep",
        };
        f.write_str(name)
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum VerifyKind {
    #[value(name = "obs1")]
    Obs1,
    #[value(name = "lemma1")]
    Lemma1,
    #[value(name = "lemma2")]
    Lemma2,
    #[value(name = "lemma3-4")]
    Lemma34,
    #[value(name = "thm2-agreement")]
    Thm2Agreement,
    #[value(name = "thm3")]
    Thm3,
    #[value(name = "thm5")]
    Thm5,
    #[value(name = "thm6")]
    Thm6,
    #[value(name = "thm7-agreement")]
    Thm7Agreement,
    #[value(name = "thm8")]
    Thm8,
    #[value(name = "cor3")]
    Cor3,
}

enum CliError {
    Lib(treecompat::Error),
    Io(std::io::Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => e.fmt(f),
            CliError::Io(e) => e.fmt(f),
            CliError::Usage(msg) => f.write_str(msg),
        }
    }
}

impl From<treecompat::Error> for CliError {
    fn from(e: treecompat::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Writes a finished report, tolerating a closed pipe on the read end.
fn print_report(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Gen { kind } => cmd_gen(kind),
        Command::Check { kind, method, input, max_labels, deterministic } => {
            cmd_check(kind, method, &input, max_labels, deterministic)
        }
        Command::Verify { kind, max, n_max, r_max, cases, seed, jobs, deterministic } => {
            cmd_verify(kind, Ranges { max, n_max, r_max, cases, seed }, jobs, deterministic)
        }
        Command::ExportDot { input } => cmd_export_dot(&input),
    }
}

fn emit(lines: Vec<String>, out: Option<&Path>) -> Result<ExitCode, CliError> {
    let count = lines.len();
    let text = lines.join("\n") + "\n";
    match out {
        Some(path) => fs::write(path, text)?,
        None => print_report(&text),
    }
    eprintln!("count={count}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(kind: GenKind) -> Result<ExitCode, CliError> {
    match kind {
        GenKind::Qst { s, t, out } => {
            let family = LadderFamily::new(s, t)?;
            let u = family.universe();
            let lines = family.quartets().iter().map(|q| formats::quartet_line(q, u)).collect();
            emit(lines, out.as_deref())
        }
        GenKind::Theorem3 { n, out } => {
            let family = minimal_incompatible_quartets(n)?;
            let u = family.universe();
            let lines = family.quartets().iter().map(|q| formats::quartet_line(q, u)).collect();
            emit(lines, out.as_deref())
        }
        GenKind::Theorem5 { r, out } => {
            let (chars, u) = minimal_incompatible_characters(r)?;
            let lines = chars.iter().map(|c| formats::character_line(c, &u)).collect();
            emit(lines, out.as_deref())
        }
        GenKind::Rr { r, out } => {
            let ring = RingFamily::new(r)?;
            let u = ring.universe();
            let lines = ring.triplets().iter().map(|t| formats::triplet_line(t, u)).collect();
            emit(lines, out.as_deref())
        }
        GenKind::Corollary3 { n, ell, out } => {
            let choice = match ell {
                Corner::A1 => SharedChoice::FirstA,
                Corner::A2 => SharedChoice::SecondA,
            };
            let folded = FoldedLadder::new(n, choice)?;
            let u = folded.universe();
            let lines = folded.triplets().iter().map(|t| formats::triplet_line(t, u)).collect();
            emit(lines, out.as_deref())
        }
        GenKind::Cq { from, out } => {
            let text = fs::read_to_string(&from)?;
            let mut u = LabelUniverse::default();
            let qs = formats::parse_quartet_file(&text, &mut u)?;
            let chars = characters::characters_of_quartets(&qs)?;
            let lines = chars.iter().map(|c| formats::character_line(c, &u)).collect();
            emit(lines, out.as_deref())
        }
    }
}

struct CheckOutcome {
    constraints: usize,
    labels: usize,
    verdict: Verdict,
    witness: Option<String>,
    certificate: Vec<String>,
}

fn cmd_check(
    kind: CheckKind,
    method: MethodArg,
    input: &Path,
    max_labels: Option<usize>,
    deterministic: bool,
) -> Result<ExitCode, CliError> {
    let started = Instant::now();
    let text = fs::read_to_string(input)?;
    let mut u = LabelUniverse::default();
    let unsupported = || {
        CliError::Usage(format!("method `{method}` does not apply to this constraint kind"))
    };
    let outcome = match kind {
        CheckKind::Quartets => {
            let qs = formats::parse_quartet_file(&text, &mut u)?;
            let report = match method {
                MethodArg::Brute => quartets::compat_brute(&qs, max_labels.unwrap_or(9))?,
                MethodArg::Unification => quartets::compat_unification(&qs)?,
                _ => return Err(unsupported()),
            };
            CheckOutcome {
                constraints: qs.len(),
                labels: quartets::label_union(&qs).len(),
                verdict: report.verdict,
                witness: report.witness.map(|w| w.to_newick(&u)),
                certificate: report
                    .certificate
                    .unwrap_or_default()
                    .iter()
                    .map(|q| formats::quartet_line(q, &u))
                    .collect(),
            }
        }
        CheckKind::Characters => {
            let chars = formats::parse_character_file(&text, &mut u)?;
            let report = match method {
                MethodArg::Brute => characters::compat_brute(&chars, max_labels.unwrap_or(9))?,
                _ => return Err(unsupported()),
            };
            let labels = chars.first().map(|c| c.labels().len()).unwrap_or(0);
            CheckOutcome {
                constraints: chars.len(),
                labels,
                verdict: report.verdict,
                witness: report.witness.map(|w| w.to_newick(&u)),
                certificate: report
                    .certificate
                    .unwrap_or_default()
                    .iter()
                    .map(|c| formats::character_line(c, &u))
                    .collect(),
            }
        }
        CheckKind::Triplets => {
            let rs = formats::parse_triplet_file(&text, &mut u)?;
            let labels = triplets::label_union(&rs).len();
            let (verdict, witness, certificate) = match method {
                MethodArg::Brute => {
                    let report = triplets::compat_brute(&rs, max_labels.unwrap_or(7))?;
                    (report.verdict, report.witness, report.certificate)
                }
                MethodArg::Build => {
                    let report = triplets::build_compat(&rs)?;
                    (report.verdict, report.witness, report.certificate)
                }
                MethodArg::Sweep => {
                    (triplets::compat_subset_sweep(&rs, max_labels.unwrap_or(12))?, None, None)
                }
                MethodArg::Unification => return Err(unsupported()),
            };
            CheckOutcome {
                constraints: rs.len(),
                labels,
                verdict,
                witness: witness.map(|w| w.to_newick(&u)),
                certificate: certificate
                    .unwrap_or_default()
                    .iter()
                    .map(|t| formats::triplet_line(t, &u))
                    .collect(),
            }
        }
    };
    let kind_name = match kind {
        CheckKind::Quartets => "quartets",
        CheckKind::Characters => "characters",
        CheckKind::Triplets => "triplets",
    };
    let mut report = String::new();
    let _ = writeln!(report, "command=check");
    let _ = writeln!(report, "kind={kind_name}");
    let _ = writeln!(report, "method={method}");
    let _ = writeln!(report, "constraints={}", outcome.constraints);
    let _ = writeln!(report, "labels={}", outcome.labels);
    let verdict = if outcome.verdict.is_compatible() { "compatible" } else { "incompatible" };
    let _ = writeln!(report, "verdict={verdict}");
    if let Some(newick) = &outcome.witness {
        let _ = writeln!(report, "witness={newick}");
    }
    for line in &outcome.certificate {
        let _ = writeln!(report, "certificate={line}");
    }
    if !deterministic {
        let _ = writeln!(report, "time_ms={}", started.elapsed().as_millis());
    }
    print_report(&report);
    Ok(if outcome.verdict.is_compatible() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

struct Ranges {
    max: Option<usize>,
    n_max: Option<usize>,
    r_max: Option<usize>,
    cases: Option<usize>,
    seed: Option<u64>,
}

fn cmd_verify(
    kind: VerifyKind,
    ranges: Ranges,
    jobs: usize,
    deterministic: bool,
) -> Result<ExitCode, CliError> {
    let started = Instant::now();
    let Ranges { max, n_max, r_max, cases, seed } = ranges;
    let mut params: Vec<(&str, u64)> = Vec::new();
    let mut reports: Vec<CriterionReport> = Vec::new();
    match kind {
        VerifyKind::Obs1 => {
            let max = max.unwrap_or(8);
            params.push(("max", max as u64));
            reports.push(verify::family_size_formula(max, jobs)?);
        }
        VerifyKind::Lemma1 => {
            let (cases, seed) = (cases.unwrap_or(200), seed.unwrap_or(101));
            params.push(("cases", cases as u64));
            params.push(("seed", seed));
            reports.push(verify::quartet_character_agreement(cases, seed, jobs)?);
        }
        VerifyKind::Lemma2 => {
            let max = max.unwrap_or(8);
            params.push(("max", max as u64));
            reports.push(verify::rail_swap_exactness(max, jobs)?);
        }
        VerifyKind::Lemma34 => {
            let max = max.unwrap_or(6);
            params.push(("max", max as u64));
            reports.push(verify::ladder_incompatible_brute(jobs)?);
            reports.push(verify::ladder_witnesses(max, jobs)?);
        }
        VerifyKind::Thm2Agreement => {
            let (cases, seed) = (cases.unwrap_or(200), seed.unwrap_or(202));
            params.push(("cases", cases as u64));
            params.push(("seed", seed));
            reports.push(verify::unification_agreement(cases, seed, jobs)?);
        }
        VerifyKind::Thm3 => {
            let n_max = n_max.unwrap_or(8);
            params.push(("n_max", n_max as u64));
            reports.push(verify::even_split_minimality(n_max, jobs)?);
        }
        VerifyKind::Thm5 => {
            let r_max = r_max.unwrap_or(5);
            params.push(("r_max", r_max as u64));
            reports.push(verify::character_family_minimality(r_max, jobs)?);
        }
        VerifyKind::Thm6 => {
            let r_max = r_max.unwrap_or(8);
            params.push(("r_max", r_max as u64));
            reports.push(verify::ring_family_checks(r_max, jobs)?);
        }
        VerifyKind::Thm7Agreement => {
            let (cases, seed) = (cases.unwrap_or(300), seed.unwrap_or(303));
            params.push(("cases", cases as u64));
            params.push(("seed", seed));
            reports.push(verify::triplet_method_agreement(cases, seed, jobs)?);
        }
        VerifyKind::Thm8 => {
            let (cases, seed) = (cases.unwrap_or(100), seed.unwrap_or(404));
            params.push(("cases", cases as u64));
            params.push(("seed", seed));
            reports.push(verify::extraction_bound(cases, seed, jobs)?);
        }
        VerifyKind::Cor3 => {
            let n_max = n_max.unwrap_or(12);
            params.push(("n_max", n_max as u64));
            reports.push(verify::folded_ladder_minimality(n_max, jobs)?);
        }
    }
    let mut text = String::new();
    let _ = writeln!(text, "command=verify");
    let kind_name = kind.to_possible_value().expect("no skipped variants");
    let _ = writeln!(text, "kind={}", kind_name.get_name());
    for (key, value) in params {
        let _ = writeln!(text, "{key}={value}");
    }
    for report in &reports {
        let _ = writeln!(text, "suite={}", report.name);
        let _ = writeln!(text, "checks={}", report.checks.len());
        for (i, check) in report.checks.iter().enumerate() {
            let _ = writeln!(text, "check.{i}.name={}", check.name);
            let _ = writeln!(text, "check.{i}.verdict={}", if check.pass { "pass" } else { "fail" });
        }
    }
    let passed = reports.iter().all(CriterionReport::passed);
    let _ = writeln!(text, "passed={passed}");
    if !deterministic {
        let _ = writeln!(text, "time_ms={}", started.elapsed().as_millis());
    }
    print_report(&text);
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_export_dot(input: &Path) -> Result<ExitCode, CliError> {
    let text = fs::read_to_string(input)?;
    let mut u = LabelUniverse::default();
    let qs = formats::parse_quartet_file(&text, &mut u)?;
    let graph = quartets::QuartetGraph::new(&qs)?;
    print_report(&formats::quartet_graph_dot(&graph, &u));
    Ok(ExitCode::SUCCESS)
}
