//! `sopsigma`: generate patterns, build Σ posets, realize them as set
//! systems and check the results.
//!
//! Exit status: 0 when every check passes or the artifact was written, 1 when
//! a check fails (the report carries witnesses), 2 on bad input or usage.

use std::collections::BTreeMap;
use std::fs;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sopsigma::dot::export_dot;
use sopsigma::embedding::{check_label_map, find_embedding};
use sopsigma::enumerate::enumerate_posets_bounded;
use sopsigma::generators::{gen_atp, gen_sop3, gen_tp, gen_tp1, gen_tp2};
use sopsigma::json::{
    map_to_json, parse_embedding_map, parse_pattern, parse_poset, parse_set_system,
    pattern_to_json, poset_doc, poset_to_json, set_system_to_json, sigma_audit_to_json, to_json,
};
use sopsigma::pattern::{
    check_coverage, check_maximality, check_weak_maximality, validate_pattern,
};
use sopsigma::setsystem::{has_sop, inclusion_poset};
use sopsigma::sigma::{sigma_ip_bounded, sigma_op, verify_sigma_properties};
use sopsigma::witnesses::{
    extract_pattern_witness, ip_sigma_sets_bounded, op_sigma_sets, pattern_roundtrip,
    pattern_sigma_sets, IntendedMap, DEFAULT_IP_SETS_BOUND,
};
use sopsigma::{
    sigma_pattern, Check, ConsistencyPattern, Poset, Report, SetSystem, Witness,
    DEFAULT_ENUMERATION_BOUND, DEFAULT_SIGMA_IP_BOUND,
};

#[derive(Parser)]
#[command(
    name = "sopsigma",
    version,
    about = "Σ posets, consistency patterns and their set-system witnesses"
)]
struct Cli {
    /// Write the main output here instead of stdout.
    #[arg(short, long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    /// Print reports as a table instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Consistency patterns.
    #[command(subcommand)]
    Pattern(PatternCmd),
    /// Σ_OP, Σ_IP and Σ_P.
    #[command(subcommand)]
    Sigma(SigmaCmd),
    /// Set systems realizing Σ posets.
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Search for an order embedding of SUB into SUP.
    Embed { sub: PathBuf, sup: PathBuf },
    /// All posets on N points up to isomorphism.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, env = "SOPSIGMA_ENUM_BOUND", default_value_t = DEFAULT_ENUMERATION_BOUND)]
        bound: usize,
    },
    /// Hasse diagrams.
    #[command(subcommand)]
    Export(ExportCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Tp1,
    Tp2,
    Atp,
    Sop3,
    Tp,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Axiom {
    /// C1 and C2.
    C,
    /// M1, M2 and M3.
    M,
    Weak,
    Coverage,
}

#[derive(Subcommand)]
enum PatternCmd {
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        branching: Option<usize>,
    },
    /// Check pattern axioms; all groups unless --axiom is given.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        axiom: Vec<Axiom>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SigmaSource {
    #[arg(long, value_name = "N")]
    op: Option<usize>,
    #[arg(long, value_name = "N")]
    ip: Option<usize>,
    #[arg(long, value_name = "FILE")]
    pattern: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SigmaCmd {
    Build {
        #[command(flatten)]
        source: SigmaSource,
        /// For --pattern: emit the closure stages r0, r1, r2 as well.
        #[arg(long)]
        audit: bool,
        #[arg(long, env = "SOPSIGMA_IP_BOUND", default_value_t = DEFAULT_SIGMA_IP_BOUND)]
        ip_bound: usize,
    },
    Verify {
        #[arg(long)]
        pattern: PathBuf,
    },
}

#[derive(Subcommand)]
enum WitnessCmd {
    Op {
        #[arg(long)]
        n: usize,
        /// Also write the intended map from Σ labels to set names.
        #[arg(long, value_name = "FILE")]
        map_out: Option<PathBuf>,
    },
    Ip {
        #[arg(long)]
        n: usize,
        #[arg(long, value_name = "FILE")]
        map_out: Option<PathBuf>,
        #[arg(long, env = "SOPSIGMA_IP_SETS_BOUND", default_value_t = DEFAULT_IP_SETS_BOUND)]
        ip_bound: usize,
    },
    Pattern {
        file: PathBuf,
        #[arg(long)]
        no_padding: bool,
        #[arg(long, value_name = "FILE")]
        map_out: Option<PathBuf>,
    },
    /// Does the inclusion order of SYSTEM contain a copy of SIGMA?
    Check {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
        /// Check this map instead of searching.
        #[arg(long, value_name = "FILE")]
        map: Option<PathBuf>,
        /// Extract a pattern witness from the embedding.
        #[arg(long, value_name = "FILE")]
        pattern: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        embedding_out: Option<PathBuf>,
    },
    /// Realize Σ_P, search for an embedding and extract the pattern back.
    Roundtrip {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        no_padding: bool,
    },
}

#[derive(Subcommand)]
enum ExportCmd {
    Dot { file: PathBuf },
}

/// Bad input or usage; exits with status 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Run = Result<bool, InputError>;

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load<T>(path: &Path, parse: impl Fn(&str) -> sopsigma::Result<T>) -> Result<T, InputError> {
    parse(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

struct Out {
    path: Option<PathBuf>,
    human: bool,
}

impl Out {
    fn write(&self, text: &str) -> Result<(), InputError> {
        match &self.path {
            Some(p) => write_file(p, text),
            None => match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            },
        }
    }

    fn report(&self, r: &Report) -> Run {
        if self.human {
            self.write(&r.to_human())?;
        } else {
            self.write(&to_json(r))?;
        }
        Ok(r.passed())
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), InputError> {
    fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn write_map(path: Option<&PathBuf>, map: &IntendedMap) -> Result<(), InputError> {
    match path {
        Some(p) => write_file(p, &map_to_json(map)),
        None => Ok(()),
    }
}

fn need(value: Option<usize>, flag: &str, kind: &str) -> Result<usize, InputError> {
    value.ok_or_else(|| InputError(format!("--kind {kind} needs --{flag}")))
}

fn generate(
    kind: Kind,
    depth: Option<usize>,
    rows: Option<usize>,
    cols: Option<usize>,
    n: Option<usize>,
    branching: Option<usize>,
) -> Result<ConsistencyPattern, InputError> {
    Ok(match kind {
        Kind::Tp1 => gen_tp1(need(depth, "depth", "tp1")?)?,
        Kind::Tp2 => gen_tp2(need(rows, "rows", "tp2")?, need(cols, "cols", "tp2")?)?,
        Kind::Atp => gen_atp(need(depth, "depth", "atp")?)?,
        Kind::Sop3 => gen_sop3(need(n, "n", "sop3")?)?,
        Kind::Tp => gen_tp(
            need(depth, "depth", "tp")?,
            need(branching, "branching", "tp")?,
        )?,
    })
}

fn check_pattern(p: &ConsistencyPattern, axioms: &[Axiom]) -> Report {
    let all = axioms.is_empty();
    let wants = |a: Axiom| all || axioms.contains(&a);
    let mut r = Report::default();
    if wants(Axiom::C) {
        r.extend(validate_pattern(p));
    }
    if wants(Axiom::M) {
        r.extend(check_maximality(p));
    }
    if wants(Axiom::Weak) {
        r.extend(check_weak_maximality(p));
    }
    if wants(Axiom::Coverage) {
        r.extend(check_coverage(p));
    }
    r
}

fn witness_check(
    out: &Out,
    system: &SetSystem,
    sigma: &Poset,
    map: Option<BTreeMap<String, String>>,
    pattern: Option<ConsistencyPattern>,
    embedding_out: Option<&PathBuf>,
) -> Run {
    let (target, rep) = inclusion_poset(system);
    let mut report = Report::default();
    let embedding = match map {
        Some(map) => {
            // Set names are sent to their inclusion classes first.
            let mut image = BTreeMap::new();
            for (k, v) in &map {
                let class = rep.get(v).ok_or_else(|| {
                    InputError(format!("map.{k}: `{v}` is not a set of the system"))
                })?;
                image.insert(k.clone(), class.clone());
            }
            let violations = check_label_map(sigma, &target, &image);
            let witnesses = violations
                .iter()
                .map(|v| Witness::note(format!("{v:?}")))
                .collect();
            report.push(Check::from_witnesses("embedding", witnesses));
            violations.is_empty().then(|| {
                sopsigma::OrderEmbedding::new(sigma.clone(), target.clone(), &image)
                    .expect("checked above")
            })
        }
        None => {
            let found = has_sop(system, sigma);
            let witnesses = if found.is_some() {
                vec![]
            } else {
                vec![Witness::note(format!(
                    "no copy of the {}-element poset among {} inclusion classes",
                    sigma.len(),
                    target.len()
                ))]
            };
            report.push(Check::from_witnesses("embedding", witnesses));
            found
        }
    };
    if let Some(e) = &embedding {
        if let Some(path) = embedding_out {
            write_file(path, &map_to_json(&e.map()))?;
        }
        if let Some(p) = &pattern {
            let w = extract_pattern_witness(system, e, p)?;
            for mut c in w.check().checks {
                c.name = format!("extracted: {}", c.name);
                report.push(c);
            }
        }
    }
    out.report(&report)
}

fn run(cli: Cli) -> Run {
    let out = Out {
        path: cli.output,
        human: cli.human,
    };
    match cli.command {
        Command::Pattern(PatternCmd::Gen {
            kind,
            depth,
            rows,
            cols,
            n,
            branching,
        }) => {
            let p = generate(kind, depth, rows, cols, n, branching)?;
            out.write(&pattern_to_json(&p))?;
            Ok(true)
        }
        Command::Pattern(PatternCmd::Check { file, axiom }) => {
            let p = load(&file, parse_pattern)?;
            out.report(&check_pattern(&p, &axiom))
        }
        Command::Sigma(SigmaCmd::Build {
            source,
            audit,
            ip_bound,
        }) => {
            if audit && source.pattern.is_none() {
                return Err(InputError("--audit applies to --pattern only".into()));
            }
            let poset = if let Some(n) = source.op {
                sigma_op(n)?
            } else if let Some(n) = source.ip {
                sigma_ip_bounded(n, ip_bound)?
            } else {
                let path = source.pattern.expect("clap requires one source");
                let s = sigma_pattern(&load(&path, parse_pattern)?)?;
                if audit {
                    out.write(&sigma_audit_to_json(&s))?;
                    return Ok(true);
                }
                s.poset
            };
            out.write(&poset_to_json(&poset))?;
            Ok(true)
        }
        Command::Sigma(SigmaCmd::Verify { pattern }) => {
            let s = sigma_pattern(&load(&pattern, parse_pattern)?)?;
            out.report(&verify_sigma_properties(&s))
        }
        Command::Witness(WitnessCmd::Op { n, map_out }) => {
            let (s, map) = op_sigma_sets(n)?;
            write_map(map_out.as_ref(), &map)?;
            out.write(&set_system_to_json(&s))?;
            Ok(true)
        }
        Command::Witness(WitnessCmd::Ip {
            n,
            map_out,
            ip_bound,
        }) => {
            let (s, map) = ip_sigma_sets_bounded(n, ip_bound)?;
            write_map(map_out.as_ref(), &map)?;
            out.write(&set_system_to_json(&s))?;
            Ok(true)
        }
        Command::Witness(WitnessCmd::Pattern {
            file,
            no_padding,
            map_out,
        }) => {
            let p = load(&file, parse_pattern)?;
            let (s, map) = pattern_sigma_sets(&p, !no_padding)?;
            write_map(map_out.as_ref(), &map)?;
            out.write(&set_system_to_json(&s))?;
            Ok(true)
        }
        Command::Witness(WitnessCmd::Check {
            system,
            sigma,
            map,
            pattern,
            embedding_out,
        }) => {
            let s = load(&system, parse_set_system)?;
            let sigma = load(&sigma, parse_poset)?;
            let map = map.map(|m| load(&m, parse_embedding_map)).transpose()?;
            let pattern = pattern.map(|p| load(&p, parse_pattern)).transpose()?;
            witness_check(&out, &s, &sigma, map, pattern, embedding_out.as_ref())
        }
        Command::Witness(WitnessCmd::Roundtrip {
            pattern,
            no_padding,
        }) => {
            let p = load(&pattern, parse_pattern)?;
            out.report(&pattern_roundtrip(&p, !no_padding)?)
        }
        Command::Embed { sub, sup } => {
            let a = load(&sub, parse_poset)?;
            let b = load(&sup, parse_poset)?;
            match find_embedding(&a, &b) {
                Some(e) => {
                    out.write(&map_to_json(&e.map()))?;
                    Ok(true)
                }
                None => out.report(&Report::new(vec![Check::from_witnesses(
                    "embedding",
                    vec![Witness::note(format!(
                        "no order embedding of {} ({} elements, {} pairs) into {} ({} elements, {} pairs)",
                        sub.display(),
                        a.len(),
                        a.relation_size(),
                        sup.display(),
                        b.len(),
                        b.relation_size()
                    ))],
                )])),
            }
        }
        Command::Enumerate { n, bound } => {
            let docs: Vec<_> = enumerate_posets_bounded(n, bound)?
                .iter()
                .map(poset_doc)
                .collect();
            out.write(&to_json(&docs))?;
            Ok(true)
        }
        Command::Export(ExportCmd::Dot { file }) => {
            out.write(&export_dot(&load(&file, parse_poset)?))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
