//! Batch front end: dimension reports, decomposition of maps from files,
//! seeded sampling, predicate verification and bimodule axiom checks.
//!
//! All commands are deterministic: identical invocations produce
//! byte-identical output. Exit codes partition the failure modes: 2 bad
//! input, 3 direct-sum failure, 4 predicate failure, 5 theorem
//! falsification, 6 axiom failure.

use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use jordec_core::decompose::StepResult;
use jordec_core::formats::{
    load_custom_unchecked, read_map_file, to_canonical_json, BimoduleSpec, DecompositionFile,
    MapFile, MapsFile,
};
use jordec_core::maps::{check_kind, is_kind, vanishes_on_diagonal};
use jordec_core::{
    check_bimodule_axioms, decompose, dims_report, project_decompose_oracle, sample_map,
    space_basis, verify_proof_steps, AxiomReport, BlockPartition, DimsReport, Error, MapKind,
    StepCheckConfig, StepReport,
};

const EXIT_INPUT: u8 = 2;
const EXIT_DIRECT_SUM: u8 = 3;
const EXIT_PREDICATE: u8 = 4;
const EXIT_THEOREM: u8 = 5;
const EXIT_AXIOM: u8 = 6;

#[derive(Parser)]
#[command(name = "jordec")]
#[command(about = "Derivation spaces and Jordan-derivation decomposition on block upper triangular algebras")]
#[command(version)]
struct Cli {
    /// Output format: json | text
    #[arg(long, global = true, default_value = "json")]
    format: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the dimensions of the jordan, derivation and
    /// diagonal-vanishing antiderivation spaces
    Dims(ModuleArgs),

    /// Decompose a Jordan derivation read from a map file into
    /// derivation + antiderivation
    Decompose {
        /// Map file to decompose
        #[arg(long)]
        map: PathBuf,

        /// Write the decomposition here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,

        /// Seed for the identity-check sample stream
        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Random elements drawn per identity check
        #[arg(long, default_value_t = 32)]
        count: usize,
    },

    /// Write seeded sample maps drawn from one of the spaces
    Sample {
        #[command(flatten)]
        module: ModuleArgs,

        /// Space to sample from: derivation | antiderivation |
        /// antiderivation_diag0 | jordan
        #[arg(long)]
        kind: String,

        /// Base seed; map i uses seed + i
        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Number of maps to write
        #[arg(long, default_value_t = 1)]
        count: usize,

        /// Write the maps here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Check a map file against one of the defining identities
    Verify {
        /// Map file to check
        #[arg(long)]
        map: PathBuf,

        /// Identity to check: derivation | antiderivation |
        /// antiderivation_diag0 | jordan
        #[arg(long)]
        kind: String,
    },

    /// Run the bimodule axiom checks and report violations
    Axioms(ModuleArgs),
}

#[derive(Args)]
struct ModuleArgs {
    /// Comma-separated block sizes, e.g. 2,1
    #[arg(long)]
    partition: String,

    /// Built-in module family: natural | regular | corner_scalar
    #[arg(long, conflicts_with = "custom_bimodule")]
    bimodule: Option<String>,

    /// JSON file with explicit action matrices
    #[arg(long)]
    custom_bimodule: Option<PathBuf>,
}

impl ModuleArgs {
    fn resolve(&self) -> Result<(BlockPartition, BimoduleSpec), Error> {
        let partition: BlockPartition = self.partition.parse()?;
        let spec = match (&self.bimodule, &self.custom_bimodule) {
            (Some(name), None) => match name.as_str() {
                "natural" => BimoduleSpec::Natural,
                "regular" => BimoduleSpec::Regular,
                "corner_scalar" => BimoduleSpec::CornerScalar,
                other => {
                    return Err(Error::InvalidInput(format!(
                        "unknown bimodule `{other}`; expected natural, regular or corner_scalar"
                    )))
                }
            },
            (None, Some(path)) => BimoduleSpec::Custom(path.display().to_string()),
            (None, None) => {
                return Err(Error::InvalidInput(
                    "one of --bimodule or --custom-bimodule is required".into(),
                ))
            }
            (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
        };
        Ok((partition, spec))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = init_thread_pool() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_INPUT);
    }
    let json = match cli.format.as_str() {
        "json" => true,
        "text" => false,
        other => {
            eprintln!("error: unknown format `{other}`; expected json or text");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    match run(cli.command, json) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

/// JORDEC_THREADS caps the rayon pool used by the axiom checker.
fn init_thread_pool() -> Result<(), String> {
    let Ok(raw) = std::env::var("JORDEC_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("JORDEC_THREADS must be a positive integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::NotJordan(_) => EXIT_PREDICATE,
        Error::TheoremViolation { .. } => EXIT_THEOREM,
        Error::AxiomViolation { .. } => EXIT_AXIOM,
        _ => EXIT_INPUT,
    }
}

fn run(command: Command, json: bool) -> Result<u8, Error> {
    match command {
        Command::Dims(module) => cmd_dims(&module, json),
        Command::Decompose { map, out, seed, count } => {
            cmd_decompose(&map, out.as_deref(), seed, count, json)
        }
        Command::Sample { module, kind, seed, count, out } => {
            cmd_sample(&module, &kind, seed, count, out.as_deref(), json)
        }
        Command::Verify { map, kind } => cmd_verify(&map, &kind, json),
        Command::Axioms(module) => cmd_axioms(&module, json),
    }
}

fn parse_kind(name: &str) -> Result<MapKind, Error> {
    name.parse()
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(Error::from),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn render_dims(report: &DimsReport, json: bool) -> Result<String, Error> {
    if json {
        return to_canonical_json(report);
    }
    Ok(format!(
        "space                 dim\n\
         jordan                {}\n\
         derivation            {}\n\
         antiderivation_diag0  {}\n\
         direct_sum_ok         {}\n",
        report.jordan, report.derivation, report.antiderivation_diag0, report.direct_sum_ok
    ))
}

fn cmd_dims(module: &ModuleArgs, json: bool) -> Result<u8, Error> {
    let (partition, spec) = module.resolve()?;
    let m = spec.resolve(&partition)?;
    let report = dims_report(&m);
    print!("{}", render_dims(&report, json)?);
    Ok(if report.direct_sum_ok { 0 } else { EXIT_DIRECT_SUM })
}

fn render_steps_text(steps: &[StepResult]) -> String {
    let mut out = String::new();
    for s in steps {
        out.push_str(&format!(
            "{:28} {}{}\n",
            s.name,
            if s.passed { "pass" } else { "FAIL" },
            s.witness.as_deref().map(|w| format!(" at {w}")).unwrap_or_default()
        ));
    }
    out
}

fn cmd_decompose(
    map_path: &Path,
    out: Option<&Path>,
    seed: u64,
    count: usize,
    json: bool,
) -> Result<u8, Error> {
    let file = read_map_file(map_path)?;
    let f = file.into_map()?;
    let (pair, trace) = decompose(&f)?;

    // Cross-checks before anything is written: classification of both
    // parts, exact reassembly, and agreement with the independent
    // projection oracle.
    let violation = |what: &str| Error::TheoremViolation {
        step: "output_checks".into(),
        detail: what.into(),
    };
    if !is_kind(&pair.d, MapKind::Derivation) {
        return Err(violation("d is not a derivation"));
    }
    if !is_kind(&pair.alpha, MapKind::Antiderivation) {
        return Err(violation("alpha is not an antiderivation"));
    }
    if !vanishes_on_diagonal(&pair.alpha) {
        return Err(violation("alpha does not vanish on the diagonal"));
    }
    if pair.d.add(&pair.alpha)? != f {
        return Err(violation("d + alpha differs from the input"));
    }
    let oracle = project_decompose_oracle(&f)?;
    if oracle.d != pair.d || oracle.alpha != pair.alpha {
        return Err(violation("projection oracle disagrees"));
    }

    let checks = if f.partition().k() > 1 {
        verify_proof_steps(&f, &StepCheckConfig { samples: count, seed })?
    } else {
        StepReport { steps: Vec::new() }
    };

    let output = DecompositionFile::new(
        MapFile::from_map(&pair.d, file.bimodule.clone()),
        MapFile::from_map(&pair.alpha, file.bimodule.clone()),
        &trace,
        checks,
    );
    let rendered = if json {
        to_canonical_json(&output)?
    } else {
        let mut text = String::new();
        for (i, level) in output.trace.iter().enumerate() {
            let b: Vec<String> = level.b.iter().map(|x| x.to_string()).collect();
            text.push_str(&format!(
                "level {i}: B = [{}], corner dim {}\n",
                b.join(", "),
                level.sub_dim
            ));
        }
        text.push_str(&render_steps_text(&output.checks.steps));
        text
    };
    emit(out, &rendered)?;
    Ok(0)
}

fn cmd_sample(
    module: &ModuleArgs,
    kind: &str,
    seed: u64,
    count: usize,
    out: Option<&Path>,
    json: bool,
) -> Result<u8, Error> {
    let kind = parse_kind(kind)?;
    let (partition, spec) = module.resolve()?;
    let m = spec.resolve(&partition)?;
    let space = space_basis(kind, &m);
    let maps: Vec<MapFile> = (0..count as u64)
        .map(|i| {
            let f = sample_map(&space, seed.wrapping_add(i));
            assert!(is_kind(&f, kind), "sampled map must satisfy its kind");
            MapFile::from_map(&f, spec.clone())
        })
        .collect();
    let file = MapsFile { maps };
    let rendered = if json {
        to_canonical_json(&file)?
    } else {
        format!(
            "sampled {} map(s) from the {} space (dim {})\n",
            count,
            kind,
            space.dim()
        )
    };
    emit(out, &rendered)?;
    Ok(0)
}

fn cmd_verify(map_path: &Path, kind: &str, json: bool) -> Result<u8, Error> {
    let kind = parse_kind(kind)?;
    let file = read_map_file(map_path)?;
    let f = file.into_map()?;
    let witness = check_kind(&f, kind);
    let passed = witness.is_none();
    if json {
        let value = serde_json::json!({
            "kind": kind.as_str(),
            "passed": passed,
            "witness": witness.as_ref().map(|w| w.to_string()),
        });
        println!("{value:#}");
    } else if let Some(w) = &witness {
        println!("fail {kind}: {w}");
    } else {
        println!("ok {kind}");
    }
    Ok(if passed { 0 } else { EXIT_PREDICATE })
}

fn cmd_axioms(module: &ModuleArgs, json: bool) -> Result<u8, Error> {
    let (partition, spec) = module.resolve()?;
    // Load without the axiom gate; reporting the violations is the point.
    let m = match &spec {
        BimoduleSpec::Custom(path) => {
            std::sync::Arc::new(load_custom_unchecked(Path::new(path), &partition)?)
        }
        other => other.resolve(&partition)?,
    };
    let report: AxiomReport = check_bimodule_axioms(&m);
    if json {
        print!("{}", to_canonical_json(&report)?);
    } else if report.ok() {
        println!("ok");
    } else {
        for v in &report.violations {
            match v.pair {
                Some((a, b)) => println!("{} ({a}, {b})", v.axiom),
                None => println!("{}", v.axiom),
            }
        }
    }
    Ok(if report.ok() { 0 } else { EXIT_AXIOM })
}
