//! `torelli`: symplectic matrices, Johnson homomorphism values and the
//! verification suites from the command line.
//!
//! Exit codes: 0 success, 1 verification failure (including a non-Torelli
//! word passed to `tau`), 2 usage or parse error, 3 internal inconsistency.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use torelli::format::{format_relations, format_witnesses, kv, parse_job, JobFile};
use torelli::johnson::{Johnson, JohnsonError};
use torelli::presentation::{relations_comm, relations_conj, relations_h, relations_sanity, Relation};
use torelli::random::DEFAULT_SEED;
use torelli::suite::{self, Check};
use torelli::witness::{self, Witnesses};
use torelli::{GeneratorTable, LatticeVector, TauValue};

#[derive(Parser)]
#[command(name = "torelli", version, about = "Exact computations in the mapping class group and the Johnson homomorphism")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Lemmas,
    Relations,
    Lantern,
    Formulas,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Comm,
    H,
    Conj,
    Sanity,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Print the symplectic matrix of a word from a job file.
    Symp {
        job: PathBuf,
        word: String,
    },
    /// Print the Johnson homomorphism of a Torelli word from a job file.
    Tau {
        job: PathBuf,
        word: String,
        /// Override the job file's boundary count (0 or 1).
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        boundary: Option<u8>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite_name: Option<Suite>,
        #[arg(long, value_enum, conflicts_with = "suite_name")]
        suite: Option<Suite>,
        /// Run at this genus only (default: the suite's standard genera).
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=6))]
        genus: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Coefficient bound for W synthesis.
        #[arg(long)]
        radius: Option<BigInt>,
        /// Witness file realizing the J symbols (default: the curated table).
        #[arg(long)]
        witnesses: Option<PathBuf>,
        /// Job file whose `genus` and `option.seed` provide defaults.
        #[arg(long)]
        job: Option<PathBuf>,
    },
    /// Dump the relation families of the presentation.
    Relations {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..=6))]
        genus: u64,
        #[arg(long, value_enum, default_value_t = Family::All)]
        family: Family,
        #[arg(long)]
        radius: Option<BigInt>,
    },
    /// Search for witness words realizing every J symbol.
    Witnesses {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..=4))]
        genus: u64,
        /// Maximal conjugator length in the search.
        #[arg(long, default_value_t = 2)]
        conj_len: usize,
    },
}

/// Error classes mapped onto exit codes.
enum Failure {
    Verification(String),
    Usage(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Usage(m) | Failure::Internal(m) => m,
        }
    }
}

fn from_johnson(e: JohnsonError) -> Failure {
    match e {
        JohnsonError::NotTorelli(w) => Failure::Verification(format!("word is not in the Torelli group: {w}")),
        e if e.is_internal() => Failure::Internal(e.to_string()),
        e => Failure::Usage(e.to_string()),
    }
}

fn read_job(path: &Path) -> Result<JobFile, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_job(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn job_word<'a>(job: &'a JobFile, name: &str) -> Result<&'a torelli::MappingClassWord, Failure> {
    job.word(name).ok_or_else(|| Failure::Usage(format!("no word named '{name}' in the job file")))
}

fn join(v: &LatticeVector) -> String {
    v.coords().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_symp(path: &Path, name: &str) -> Result<(), Failure> {
    let job = read_job(path)?;
    let w = job_word(&job, name)?;
    let table = GeneratorTable::new(job.genus).map_err(|e| Failure::Usage(e.to_string()))?;
    let m = table.symplectic_action(w).map_err(|e| Failure::Usage(e.to_string()))?;
    println!("{}", kv("genus", job.genus));
    println!("{}", kv("word", name));
    for r in 0..m.rows() {
        println!("{}", kv(&format!("row.{r}"), join(&m.row(r))));
    }
    println!("{}", kv("torelli", m.is_identity()));
    Ok(())
}

fn cmd_tau(path: &Path, name: &str, boundary: Option<u8>) -> Result<(), Failure> {
    let job = read_job(path)?;
    let boundary = boundary.map_or(job.boundary, |b| b == 1);
    let w = job_word(&job, name)?.with_boundary(boundary);
    let j = Johnson::new(job.genus).map_err(from_johnson)?;
    let t = j.tau(&w).map_err(from_johnson)?;
    println!("{}", kv("genus", job.genus));
    println!("{}", kv("boundary", u8::from(boundary)));
    println!("{}", kv("word", name));
    match t {
        TauValue::Open(v) => {
            println!("{}", kv("tau", &v));
            println!("{}", kv("tau.coords", join(v.coords())));
        }
        TauValue::Closed(q) => {
            let c = q.coset_coords();
            println!("{}", kv("tau.free", join(&c.free)));
            println!("{}", kv("tau.torsion", join(&c.torsion)));
            let moduli: Vec<String> = q.structure().torsion().iter().map(ToString::to_string).collect();
            println!("{}", kv("tau.torsion_moduli", moduli.join(" ")));
        }
    }
    Ok(())
}

fn load_witnesses(path: Option<&Path>, genus: usize) -> Result<Option<Witnesses>, Failure> {
    match path {
        Some(p) => {
            let text =
                std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?;
            witness::load(&text, genus).map(Some).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
        None => Ok(witness::curated(genus).ok()),
    }
}

struct VerifyArgs {
    suite: Suite,
    genus: Option<usize>,
    seed: u64,
    radius: Option<BigInt>,
    witnesses: Option<PathBuf>,
}

fn run_suite(a: &VerifyArgs) -> Result<Vec<Check>, Failure> {
    let genera = |default: &[usize]| a.genus.map_or_else(|| default.to_vec(), |g| vec![g]);
    let mut checks = Vec::new();
    let want = |s: Suite| a.suite == s || a.suite == Suite::All;
    if want(Suite::Lemmas) {
        for g in genera(&[2, 3]) {
            checks.extend(suite::lemma31(g, a.seed, 50));
            checks.extend(suite::quotient_rank(g));
        }
        checks.extend(suite::lemma32(a.genus.unwrap_or(4).max(2)));
    }
    if want(Suite::Formulas) {
        for g in genera(&[2, 3]) {
            checks.extend(suite::generator_certificates(g));
            checks.extend(suite::intersection_shadow(g));
            checks.extend(suite::tau_basics(g, a.seed, 20, 100));
            checks.extend(suite::bp_divisibility(g, 3));
            checks.extend(suite::equivariance(g, a.seed, 30));
            checks.extend(suite::sip_remark(g, a.seed, 50));
        }
        if a.genus.is_none_or(|g| g == 2) {
            checks.extend(suite::bp_divisibility(2, 4));
            checks.extend(suite::closed_well_defined(2, a.seed, 10));
        }
        checks.extend(suite::calibration());
    }
    if want(Suite::Relations) {
        for g in genera(&[3]) {
            let w = load_witnesses(a.witnesses.as_deref(), g)?;
            checks.extend(suite::presentation(g, w.as_ref(), a.radius.as_ref()));
            checks.extend(suite::conj_fixed(g));
        }
        if a.genus.is_none_or(|g| g == 2) {
            checks.extend(suite::synthesis_minimality(2, 3));
        }
    }
    if want(Suite::Lantern) {
        for g in genera(&[3]) {
            if g < 3 {
                if a.suite == Suite::Lantern {
                    return Err(Failure::Usage(format!("the lantern suite needs genus at least 3, got {g}")));
                }
                continue;
            }
            checks.extend(suite::lantern(g));
        }
    }
    checks.sort_by(|x, y| x.id.cmp(&y.id));
    Ok(checks)
}

fn cmd_verify(a: VerifyArgs) -> Result<(), Failure> {
    let checks = run_suite(&a)?;
    for c in &checks {
        println!("{c}");
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    println!("{}", kv("summary", format!("{passed}/{} passed", checks.len())));
    if let Some(c) = checks.iter().find(|c| c.internal) {
        return Err(Failure::Internal(format!("check {} could not run: {}", c.id, c.detail)));
    }
    if passed != checks.len() {
        return Err(Failure::Verification(format!("{} checks failed", checks.len() - passed)));
    }
    Ok(())
}

fn cmd_relations(genus: usize, family: Family, radius: Option<BigInt>) -> Result<(), Failure> {
    let want = |f: Family| family == f || family == Family::All;
    let usage = |e: torelli::presentation::PresentationError| Failure::Usage(e.to_string());
    let mut rels: Vec<Relation> = Vec::new();
    if want(Family::Comm) {
        rels.extend(relations_comm(genus));
    }
    if want(Family::H) {
        rels.extend(relations_h(genus).map_err(usage)?);
    }
    if want(Family::Conj) {
        rels.extend(relations_conj(genus, radius.as_ref()).map_err(usage)?);
    }
    if want(Family::Sanity) {
        rels.extend(relations_sanity(genus).map_err(usage)?);
    }
    print!("{}", format_relations(genus, &rels));
    Ok(())
}

fn cmd_witnesses(genus: usize, conj_len: usize) -> Result<(), Failure> {
    let j = Johnson::new(genus).map_err(from_johnson)?;
    let w = witness::synthesize(&j, conj_len).map_err(|e| Failure::Verification(e.to_string()))?;
    println!("# J-symbol witnesses, regenerate with `torelli witnesses --genus {genus}`");
    print!("{}", format_witnesses(genus, &w));
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Symp { job, word } => cmd_symp(&job, &word),
        Command::Tau { job, word, boundary } => cmd_tau(&job, &word, boundary),
        Command::Verify { suite_name, suite, genus, seed, radius, witnesses, job } => (|| {
            let mut a = VerifyArgs {
                suite: suite_name.or(suite).unwrap_or(Suite::All),
                genus: genus.map(|g| g as usize),
                seed,
                radius,
                witnesses,
            };
            if let Some(path) = job {
                let jf = read_job(&path)?;
                a.genus = a.genus.or(Some(jf.genus));
                if let Some(s) = jf.options.get("seed") {
                    a.seed = s.parse().map_err(|_| Failure::Usage(format!("option.seed is not an integer: {s}")))?;
                }
            }
            cmd_verify(a)
        })(),
        Command::Relations { genus, family, radius } => cmd_relations(genus as usize, family, radius),
        Command::Witnesses { genus, conj_len } => cmd_witnesses(genus as usize, conj_len),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
