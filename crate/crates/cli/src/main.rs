use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use eqc_core::chevalley::{chevalley, ivanov_chevalley};
use eqc_core::exactalg::{render, SPoly};
use eqc_core::factorial_basis::{tworow, Family};
use eqc_core::partitions::{enumerate_sp, LieType, PartitionError, StrictPartition};
use eqc_core::qh_ring::{
    positivity_check, specialize, type_b_shift, CacheError, ClassExpansion, Mode, RingContext, RingError,
    SpecializeError, StructureCache,
};
use eqc_core::schur_oracle::{eval_p_direct, eval_symbolic, gamma_degree, identity_check, Certificate, OracleError};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        match e {
            RingError::Partition(p) => CliError::Usage(p.to_string()),
            RingError::ZeroRank => CliError::Usage(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<PartitionError> for CliError {
    fn from(e: PartitionError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<SpecializeError> for CliError {
    fn from(e: SpecializeError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CacheError> for CliError {
    fn from(e: CacheError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Internal(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TypeArg {
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
    #[value(name = "D")]
    D,
}

impl TypeArg {
    /// Type B is computed in type D and specialized afterwards.
    fn lie(self) -> LieType {
        match self {
            TypeArg::C => LieType::C,
            TypeArg::B | TypeArg::D => LieType::D,
        }
    }

    fn name(self) -> &'static str {
        match self {
            TypeArg::B => "B",
            TypeArg::C => "C",
            TypeArg::D => "D",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    OracleIdentities,
    Chevalley,
    Associativity,
    Positivity,
}

#[derive(Parser, Debug)]
#[command(name = "schubert-eqc", version, about = "Equivariant quantum cohomology of isotropic Grassmannians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Lie type.
    #[arg(long = "type", value_enum, global = true)]
    lie: Option<TypeArg>,
    /// Rank.
    #[arg(long, global = true)]
    n: Option<u32>,
    /// Strict partition, e.g. 3,1; an empty string is the empty partition.
    #[arg(long, global = true)]
    lambda: Option<String>,
    #[arg(long, global = true)]
    mu: Option<String>,
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Set q = 0.
    #[arg(long, global = true)]
    q0: bool,
    /// Cache directory; overrides SCHUBERT_EQC_CACHE.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generators and relations of the ring.
    Present,
    /// The polynomial representing σ_λ.
    Giambelli,
    /// σ_λ * σ_μ.
    Mult,
    /// Computes and stores every product over SP(n).
    Table,
    /// Runs a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// σ_λ * σ_μ under q = 0, t = 0 or the type B reduction.
    Specialize {
        #[arg(long)]
        mode: String,
    },
}

impl Cli {
    fn lie(&self) -> Result<TypeArg, CliError> {
        self.lie.ok_or_else(|| CliError::Usage("--type is required".into()))
    }

    fn rank(&self) -> Result<u32, CliError> {
        match self.n {
            Some(0) => Err(CliError::Usage("--n must be at least 1".into())),
            Some(n) => Ok(n),
            None => Err(CliError::Usage("--n is required".into())),
        }
    }

    fn partition(&self, which: &str, value: &Option<String>) -> Result<StrictPartition, CliError> {
        let s = value.as_deref().ok_or_else(|| CliError::Usage(format!("--{which} is required")))?;
        let p: StrictPartition =
            s.parse().map_err(|e| CliError::Usage(format!("--{which} {s:?}: {e}; expected distinct descending parts like 3,1")))?;
        p.check_fits(self.rank()?)?;
        Ok(p)
    }

    fn context(&self) -> Result<RingContext, CliError> {
        let (lie, n) = (self.lie()?.lie(), self.rank()?);
        Ok(if self.q0 { RingContext::build_q0(lie, n)? } else { RingContext::build(lie, n)? })
    }
}

fn emit(format: Format, text: String, value: serde_json::Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{}", serde_json::to_string(&value).expect("serializable")),
    }
}

fn cmd_present(cli: &Cli) -> Result<(), CliError> {
    let ty = cli.lie()?;
    let ctx = cli.context()?;
    let shift = |p: &SPoly| if ty == TypeArg::B { type_b_shift(p) } else { p.clone() };
    let rels: Vec<String> = ctx.relations().iter().map(|r| render(&shift(r))).collect();
    let gens: Vec<_> = (1..=ctx.n).map(|i| json!({"name": format!("X{i}"), "degree": i})).collect();
    let mut text = format!("type {} n={} deg q={}\ngenerators:", ty.name(), ctx.n, ctx.deg_q);
    for i in 1..=ctx.n {
        text += &format!(" X{i}({i})");
    }
    for (i, r) in rels.iter().enumerate() {
        text += &format!("\nR{} = {r}", i + 1);
    }
    let value = json!({"type": ty.name(), "n": ctx.n, "deg_q": ctx.deg_q, "q0": cli.q0, "generators": gens, "relations": rels});
    emit(cli.format, text, value);
    Ok(())
}

fn cmd_giambelli(cli: &Cli) -> Result<(), CliError> {
    let ty = cli.lie()?;
    let lambda = cli.partition("lambda", &cli.lambda)?;
    let ctx = cli.context()?;
    let mut class = ctx.giambelli_class(&lambda)?;
    if ty == TypeArg::B {
        class = type_b_shift(&class);
    }
    let text = render(&class);
    emit(cli.format, text.clone(), json!({"type": ty.name(), "n": ctx.n, "lambda": lambda, "class": text}));
    Ok(())
}

fn cache_dir(cli: &Cli) -> PathBuf {
    match &cli.cache {
        Some(d) => d.clone(),
        None => StructureCache::directory(None),
    }
}

fn product(cli: &Cli) -> Result<ClassExpansion, CliError> {
    let (lie, n) = (cli.lie()?.lie(), cli.rank()?);
    let lambda = cli.partition("lambda", &cli.lambda)?;
    let mu = cli.partition("mu", &cli.mu)?;
    let cached = match StructureCache::load(&cache_dir(cli), lie, n) {
        Ok(c) => c.and_then(|c| c.get(&lambda, &mu)),
        Err(e) => {
            log::warn!("ignoring unreadable cache: {e}");
            None
        }
    };
    let e = match cached {
        Some(e) => e,
        None => RingContext::build(lie, n)?.schubert_product(&lambda, &mu)?,
    };
    Ok(if cli.q0 { specialize(&e, Mode::Q0)? } else { e })
}

fn emit_expansion(cli: &Cli, e: &ClassExpansion) {
    emit(cli.format, e.to_string(), serde_json::to_value(e.to_json_terms()).expect("serializable"));
}

fn cmd_mult(cli: &Cli) -> Result<(), CliError> {
    let mut e = product(cli)?;
    if cli.lie()? == TypeArg::B {
        e = specialize(&e, Mode::TypeB)?;
    }
    emit_expansion(cli, &e);
    Ok(())
}

fn cmd_specialize(cli: &Cli, mode: &str) -> Result<(), CliError> {
    let mode: Mode = mode.parse()?;
    let mut e = product(cli)?;
    if cli.lie()? == TypeArg::B && mode != Mode::TypeB {
        e = specialize(&e, Mode::TypeB)?;
    }
    emit_expansion(cli, &specialize(&e, mode)?);
    Ok(())
}

fn cmd_table(cli: &Cli) -> Result<(), CliError> {
    let ty = cli.lie()?;
    let ctx = cli.context()?;
    if cli.q0 {
        return Err(CliError::Usage("table stores the full quantum products; drop --q0".into()));
    }
    let pairs: Vec<(StrictPartition, StrictPartition)> =
        ctx.basis().iter().flat_map(|a| ctx.basis().iter().map(move |b| (a.clone(), b.clone()))).collect();
    let cache = StructureCache::new(ctx.lie, ctx.n, ctx.deg_q);
    pairs.par_iter().try_for_each(|(a, b)| -> Result<(), CliError> {
        cache.insert(a.clone(), b.clone(), ctx.schubert_product(a, b)?);
        Ok(())
    })?;
    let dir = cache_dir(cli);
    match StructureCache::load(&dir, ctx.lie, ctx.n) {
        Ok(Some(old)) => {
            for (a, b) in &pairs {
                if let Some(prev) = old.get(a, b) {
                    if Some(&prev) != cache.get(a, b).as_ref() {
                        return Err(CliError::Internal(format!("cached product s[{a}]*s[{b}] disagrees with the recomputation")));
                    }
                }
            }
        }
        Ok(None) => {}
        Err(e) => log::warn!("replacing unusable cache file: {e}"),
    }
    let path = cache.save(&dir)?;
    match (ty, cli.format) {
        (TypeArg::B, Format::Json) => {
            let entries: Result<Vec<_>, CliError> = pairs
                .iter()
                .map(|(a, b)| {
                    let e = specialize(&cache.get(a, b).expect("computed"), Mode::TypeB)?;
                    Ok(json!({"lambda": a, "mu": b, "terms": e.to_json_terms()}))
                })
                .collect();
            println!("{}", serde_json::to_string(&json!({"type": "B", "n": ctx.n, "entries": entries?})).expect("serializable"));
        }
        (_, Format::Json) => print!("{}", cache.to_json()),
        (_, Format::Text) => println!("wrote {} products to {}", cache.len(), path.display()),
    }
    Ok(())
}

/// Outcome of one check inside a ring-level suite.
struct Check {
    name: String,
    holds: bool,
    checked: usize,
    failures: Vec<String>,
}

impl Check {
    fn json(&self) -> serde_json::Value {
        json!({"name": self.name, "holds": self.holds, "checked": self.checked, "failures": self.failures})
    }
}

fn oracle_certificates() -> Result<Vec<Certificate>, CliError> {
    let mut jobs: Vec<(String, SPoly, Option<StrictPartition>)> = Vec::new();
    for k in 2..=4 {
        for l in 1..k {
            if k + l <= 5 {
                let lam = StrictPartition::new(vec![k, l])?;
                jobs.push((format!("two-row P_{k},{l}"), tworow(k, l, Family::P, None).expr, Some(lam)));
            }
        }
    }
    for i in 1..=2 {
        for f in [Family::P, Family::Q] {
            jobs.push((format!("vanishing {f:?}_{i},{i}"), tworow(i, i, f, None).expr, None));
        }
    }
    let mut certs: Vec<Certificate> = jobs
        .par_iter()
        .map(|(name, expr, lam)| {
            let d = gamma_degree(expr).max(lam.as_ref().map_or(0, |l| l.weight()));
            identity_check(
                name,
                |pt| eval_symbolic(expr, pt),
                |pt| match lam {
                    Some(l) => eval_p_direct(l, pt),
                    None => Ok(Default::default()),
                },
                d,
                d + 1,
            )
        })
        .collect::<Result<_, _>>()?;
    let shapes: Vec<_> = enumerate_sp(3).into_iter().filter(|l| l.weight() <= 3).collect();
    let ivanov: Vec<Certificate> = shapes
        .par_iter()
        .flat_map(|l| [Family::P, Family::Q].map(|f| ivanov_chevalley(l, f).certify()))
        .collect::<Result<_, _>>()?;
    certs.extend(ivanov);
    Ok(certs)
}

fn suite_targets(cli: &Cli, default_n: u32) -> Result<Vec<(LieType, u32)>, CliError> {
    let types = match cli.lie {
        Some(t) => vec![t.lie()],
        None => vec![LieType::C, LieType::D],
    };
    let ranks = match cli.n {
        Some(_) => vec![cli.rank()?],
        None => (1..=default_n).collect(),
    };
    Ok(types.into_iter().flat_map(|t| ranks.iter().map(move |&n| (t, n))).collect())
}

fn chevalley_check(lie: LieType, n: u32) -> Result<Check, CliError> {
    let ctx = RingContext::build(lie, n)?;
    let basis = enumerate_sp(n);
    let one = StrictPartition::row(1);
    let mut failures = Vec::new();
    for l in &basis {
        let e = ctx.schubert_product(&one, l)?;
        if e.terms() != &chevalley(lie, l, n).terms() {
            failures.push(format!("s[1]*s[{l}] = {e}"));
        }
    }
    Ok(Check { name: format!("chevalley {lie}{n}"), holds: failures.is_empty(), checked: basis.len(), failures })
}

fn associativity_check(lie: LieType, n: u32) -> Result<Check, CliError> {
    let ctx = RingContext::build(lie, n)?;
    let basis = enumerate_sp(n);
    let b = &basis;
    let triples: Vec<[&StrictPartition; 3]> =
        b.iter().flat_map(|x| b.iter().flat_map(move |y| b.iter().map(move |z| [x, y, z]))).collect();
    let failures: Vec<String> = triples
        .par_iter()
        .map(|[a, b, c]| -> Result<Option<String>, CliError> {
            let left = ctx.triple_product(a, b, c)?;
            let right = ctx.triple_product(b, c, a)?;
            Ok((left != right).then(|| format!("({a})({b})({c})")))
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(Check { name: format!("associativity {lie}{n}"), holds: failures.is_empty(), checked: triples.len(), failures })
}

fn positivity_suite_check(lie: LieType, n: u32) -> Result<Check, CliError> {
    let ctx = RingContext::build(lie, n)?;
    let basis = enumerate_sp(n);
    let mut failures = Vec::new();
    for a in &basis {
        for b in &basis {
            let r = positivity_check(&ctx.schubert_product(a, b)?);
            failures.extend(r.failures.into_iter().map(|f| format!("s[{a}]*s[{b}]: {f}")));
        }
    }
    Ok(Check { name: format!("positivity {lie}{n}"), holds: failures.is_empty(), checked: basis.len().pow(2), failures })
}

fn cmd_verify(cli: &Cli, suite: Suite) -> Result<(), CliError> {
    let (name, results): (&str, Vec<(String, bool, serde_json::Value)>) = match suite {
        Suite::OracleIdentities => {
            let certs = oracle_certificates()?;
            let rows = certs
                .into_iter()
                .map(|c| {
                    let line = format!("{} (degree <= {}, {} points, {} symbolic t)", c.name, c.degree_bound, c.points_checked, c.symbolic_t);
                    let v = serde_json::to_value(&c).expect("serializable");
                    (line, c.holds, v)
                })
                .collect();
            ("oracle-identities", rows)
        }
        Suite::Chevalley | Suite::Associativity | Suite::Positivity => {
            let (name, default_n, f): (&str, u32, fn(LieType, u32) -> Result<Check, CliError>) = match suite {
                Suite::Chevalley => ("chevalley", 3, chevalley_check),
                Suite::Associativity => ("associativity", 2, associativity_check),
                _ => ("positivity", 3, positivity_suite_check),
            };
            let rows = suite_targets(cli, default_n)?
                .into_iter()
                .map(|(lie, n)| {
                    let c = f(lie, n)?;
                    let mut line = format!("{} ({} checked)", c.name, c.checked);
                    for fl in &c.failures {
                        line += &format!("\n    {fl}");
                    }
                    Ok((line, c.holds, c.json()))
                })
                .collect::<Result<_, CliError>>()?;
            (name, rows)
        }
    };
    let holds = results.iter().all(|r| r.1);
    let text: Vec<String> = results.iter().map(|(l, h, _)| format!("{} {l}", if *h { "PASS" } else { "FAIL" })).collect();
    let certs: Vec<_> = results.into_iter().map(|r| r.2).collect();
    emit(cli.format, text.join("\n"), json!({"suite": name, "holds": holds, "certificates": certs}));
    if holds {
        Ok(())
    } else {
        Err(CliError::Verification(format!("suite {name}")))
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Present => cmd_present(cli),
        Command::Giambelli => cmd_giambelli(cli),
        Command::Mult => cmd_mult(cli),
        Command::Table => cmd_table(cli),
        Command::Verify { suite } => cmd_verify(cli, *suite),
        Command::Specialize { mode } => cmd_specialize(cli, mode),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("schubert-eqc: {e}");
            ExitCode::from(e.code())
        }
    }
}
