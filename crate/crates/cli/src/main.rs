use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use syzdim::checker::{
    generate_corpus, run_checks, CheckOptions, CheckReport, Claim, Instance, Nondecreasing,
    Profile, CORPUS_SEED, CORPUS_SIZE,
};
use syzdim::instance::{builtin_names, InstanceFile, Overrides};
use syzdim::resolution::{compare_with_oracle, resolve};
use syzdim::ring::{FieldSpec, DEFAULT_PRIME};
use syzdim::{Error, Result};

/// Version of the machine-readable output schema.
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "syzdim",
    version,
    about = "Free resolutions, supports and dimensions of syzygy modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Out {
    Text,
    Machine,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClaimSet {
    All,
    Main,
    Dim,
    Supp,
    Shrink,
    Quick,
    Strict,
}

impl ClaimSet {
    fn claims(self) -> Vec<Claim> {
        match self {
            ClaimSet::All => Claim::ALL.to_vec(),
            ClaimSet::Main => vec![Claim::TheoremMain],
            ClaimSet::Dim => vec![Claim::CorollaryDim],
            ClaimSet::Supp => vec![Claim::LemmaSupp],
            ClaimSet::Shrink => vec![Claim::LemmaShrink],
            ClaimSet::Quick => vec![Claim::PropQuick],
            ClaimSet::Strict => vec![Claim::LemmaStrict],
        }
    }
}

#[derive(clap::Args)]
struct Source {
    /// Instance file, or `@name` for a built-in instance
    instance: String,
    /// Coefficient field: `q` for the rationals, `p` for GF(32003), `pN` for GF(N)
    #[arg(long, value_parser = parse_field)]
    field: Option<FieldSpec>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a minimal free resolution and its Betti numbers
    Resolve {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        window: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        out: Out,
    },
    /// Check support and Betti number statements on the resolution window
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "all")]
        claims: ClaimSet,
        #[arg(long)]
        window: Option<usize>,
        /// Assert non-decreasing Betti numbers from this index instead of detecting it
        #[arg(long)]
        nondecreasing_from: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        out: Out,
    },
    /// Compare engine Betti numbers with the linear-algebra oracle
    OracleCompare {
        #[command(flatten)]
        source: Source,
        #[arg(short = 'D', long)]
        degree_bound: Option<i32>,
        #[arg(short = 'H', long)]
        hom_bound: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        out: Out,
    },
    /// Check a generated corpus of instances
    Corpus {
        #[arg(long, default_value_t = CORPUS_SEED)]
        seed: u64,
        #[arg(long, default_value_t = CORPUS_SIZE)]
        count: usize,
        #[arg(long, default_value = "default", value_parser = parse_profile)]
        profile: Profile,
        #[arg(long, value_enum, default_value = "all")]
        claims: ClaimSet,
        #[arg(long, value_enum, default_value = "text")]
        out: Out,
        /// Write each generated instance as an instance file into this directory
        #[arg(long)]
        dump: Option<std::path::PathBuf>,
    },
    /// List the built-in instances
    List,
    /// Print an instance file
    Show { instance: String },
}

fn parse_field(s: &str) -> std::result::Result<FieldSpec, String> {
    match s {
        "q" | "Q" | "0" => Ok(FieldSpec::Rational),
        "p" => Ok(FieldSpec::Prime(DEFAULT_PRIME)),
        _ => {
            let digits = s
                .strip_prefix('p')
                .ok_or_else(|| format!("unknown field `{s}`"))?;
            let p: u64 = digits.parse().map_err(|_| format!("unknown field `{s}`"))?;
            FieldSpec::from_characteristic(p).map_err(|e| e.to_string())
        }
    }
}

fn parse_profile(s: &str) -> std::result::Result<Profile, String> {
    Profile::parse(s)
        .ok_or_else(|| format!("unknown profile `{s}` (default, hypersurface, fixtures)"))
}

fn load(name: &str) -> Result<InstanceFile> {
    if let Some(b) = name.strip_prefix('@') {
        return InstanceFile::builtin(b);
    }
    let text = std::fs::read_to_string(name)
        .map_err(|e| Error::Instance(format!("cannot read `{name}`: {e}")))?;
    InstanceFile::parse(&text)
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json output"));
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_resolve(source: &Source, window: Option<usize>, out: Out) -> Result<ExitCode> {
    let file = load(&source.instance)?;
    let inst = file.instance(&Overrides {
        field: source.field,
        window,
        limits: None,
    })?;
    let res = resolve(&inst.module, inst.window)?;
    let betti = res.betti();
    let names = inst.ring().variables();
    match out {
        Out::Text => {
            println!("instance: {} over {}", inst.label, inst.ring().field());
            for (k, m) in res.maps().iter().enumerate() {
                println!("δ_{} ({}x{}):", k + 1, m.nrows(), m.ncols());
                for line in m.format(names).lines() {
                    println!("  {line}");
                }
            }
            println!("betti: {}", join(&betti.values));
            println!(
                "terminated: {}",
                if betti.terminated { "yes" } else { "no" }
            );
        }
        Out::Machine => {
            let maps: Vec<_> = res
                .maps()
                .iter()
                .map(|m| {
                    json!({
                        "row_degrees": m.row_degrees(),
                        "col_degrees": m.col_degrees(),
                        "columns": m.columns().iter()
                            .map(|c| c.iter().map(|p| inst.ring().format(p)).collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            let graded: Vec<_> = res
                .graded_betti()
                .entries
                .iter()
                .map(|(&(i, j), &n)| json!([i, j, n]))
                .collect();
            print_json(&json!({
                "version": SCHEMA_VERSION,
                "kind": "resolve",
                "label": inst.label,
                "field": inst.ring().field().characteristic(),
                "window": inst.window,
                "betti": betti,
                "graded_betti": graded,
                "differentials": maps,
            }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_report(r: &CheckReport) {
    println!("instance: {} (window {})", r.label, r.window);
    println!(
        "betti: {}{}",
        join(&r.betti.values),
        if r.betti.terminated {
            " (terminated)"
        } else {
            ""
        }
    );
    println!("dim R: {}", r.ring_dim);
    println!("dims: {}", join(&r.dims));
    for (i, s) in r.supports.iter().enumerate() {
        println!("supp Ω_{i}: {s}");
    }
    let classes: Vec<String> = r
        .supp_classes
        .iter()
        .map(|c| format!("{{{}}}", join(c)))
        .collect();
    println!("equal supports: {}", classes.join(" "));
    match r.nondecreasing_from {
        Some(n) => println!(
            "non-decreasing from: {n}{}",
            if r.nondecreasing_asserted {
                " (asserted)"
            } else {
                ""
            }
        ),
        None => println!("non-decreasing from: none in window"),
    }
    if let Some(p) = &r.min_primes {
        println!("minn R: {}", p.primes.join(", "));
    }
    if let Some(why) = &r.min_primes_unavailable {
        println!("minn R: unavailable ({why})");
    }
    for c in &r.claims {
        match c.index {
            Some(n) => println!("{}: {} (n = {n})", c.claim, c.verdict),
            None => println!("{}: {}", c.claim, c.verdict),
        }
        for w in &c.witnesses {
            println!("    {w}");
        }
        for n in &c.notes {
            println!("    note: {n}");
        }
    }
}

fn verdict_code(reports: &[CheckReport]) -> ExitCode {
    if reports.iter().any(CheckReport::has_failure) {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_check(
    source: &Source,
    claims: ClaimSet,
    window: Option<usize>,
    from: Option<usize>,
    out: Out,
) -> Result<ExitCode> {
    let file = load(&source.instance)?;
    let inst = file.instance(&Overrides {
        field: source.field,
        window,
        limits: None,
    })?;
    let options = CheckOptions {
        nondecreasing: from.map_or(Nondecreasing::Detect, Nondecreasing::Assert),
    };
    let report = run_checks(&inst, &claims.claims(), &options)?;
    match out {
        Out::Text => print_report(&report),
        Out::Machine => {
            print_json(&json!({"version": SCHEMA_VERSION, "kind": "check", "report": report}))
        }
    }
    Ok(verdict_code(std::slice::from_ref(&report)))
}

fn cmd_oracle(source: &Source, d: Option<i32>, h: Option<usize>, out: Out) -> Result<ExitCode> {
    let file = load(&source.instance)?;
    let d = d.or(file.options.degree_bound).unwrap_or(6);
    let h = h.or(file.options.hom_bound).unwrap_or(4);
    let inst = file.instance(&Overrides {
        field: source.field,
        window: None,
        limits: None,
    })?;
    let cmp = compare_with_oracle(&inst.module, d, h)?;
    match out {
        Out::Text => {
            println!("instance: {} (degrees ≤ {d}, indices ≤ {h})", inst.label);
            println!("{:>3} {:>8} {:>8}  range", "i", "engine", "oracle");
            for r in &cmp.rows {
                let range = if r.certified { "certified" } else { "partial" };
                println!("{:>3} {:>8} {:>8}  {range}", r.index, r.engine, r.oracle);
            }
            for x in &cmp.discrepancies {
                println!(
                    "differs at β_{{{},{}}}: engine {} oracle {}",
                    x.index, x.degree, x.engine, x.oracle
                );
            }
            println!("{}", if cmp.agrees() { "equal" } else { "DIFFERENT" });
        }
        Out::Machine => print_json(
            &json!({"version": SCHEMA_VERSION, "kind": "oracle-compare", "comparison": cmp}),
        ),
    }
    Ok(if cmp.agrees() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_corpus(
    seed: u64,
    count: usize,
    profile: Profile,
    claims: ClaimSet,
    out: Out,
    dump: Option<&std::path::Path>,
) -> Result<ExitCode> {
    let instances: Vec<Instance> = generate_corpus(seed, count, profile)?;
    if let Some(dir) = dump {
        std::fs::create_dir_all(dir)
            .map_err(|e| Error::Instance(format!("cannot create `{}`: {e}", dir.display())))?;
        for inst in &instances {
            let path = dir.join(format!("{}.inst", inst.label));
            std::fs::write(&path, InstanceFile::from_instance(inst).to_toml())
                .map_err(|e| Error::Instance(format!("cannot write `{}`: {e}", path.display())))?;
        }
    }
    let mut reports = Vec::new();
    for inst in &instances {
        let r = run_checks(inst, &claims.claims(), &CheckOptions::default())?;
        if out == Out::Text {
            let verdicts: Vec<String> = r
                .claims
                .iter()
                .map(|c| format!("{}={}", c.claim, c.verdict))
                .collect();
            println!(
                "{} betti [{}] {}",
                r.label,
                join(&r.betti.values),
                verdicts.join(" ")
            );
        }
        reports.push(r);
    }
    match out {
        Out::Text => {
            let fails = reports.iter().filter(|r| r.has_failure()).count();
            println!("{} instances, {fails} with a failing claim", reports.len());
        }
        Out::Machine => print_json(&json!({
            "version": SCHEMA_VERSION,
            "kind": "corpus",
            "seed": seed,
            "profile": profile,
            "reports": reports,
        })),
    }
    Ok(verdict_code(&reports))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Resolve {
            source,
            window,
            out,
        } => cmd_resolve(&source, window, out),
        Command::Check {
            source,
            claims,
            window,
            nondecreasing_from,
            out,
        } => cmd_check(&source, claims, window, nondecreasing_from, out),
        Command::OracleCompare {
            source,
            degree_bound,
            hom_bound,
            out,
        } => cmd_oracle(&source, degree_bound, hom_bound, out),
        Command::Corpus {
            seed,
            count,
            profile,
            claims,
            out,
            dump,
        } => cmd_corpus(seed, count, profile, claims, out, dump.as_deref()),
        Command::List => {
            for n in builtin_names() {
                println!("@{n}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Show { instance } => {
            print!("{}", load(&instance)?.to_toml());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            match &e {
                Error::BoundTooSmall { .. } => eprintln!("uncertified: {e}"),
                _ => eprintln!("error: {e}"),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
