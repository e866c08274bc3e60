//! The `ncwalk` command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification failure,
//! 3 resource cap exceeded.

mod args;
mod render;

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::error::ErrorKind;
use clap::Parser;
use ncwalk_core::engine::{
    build_omega, build_sigma_star, chamber_count, load_table, loop_free_count, save_table, SigmaMethod,
    CACHE_VERSION,
};
use ncwalk_core::model::format_arcs;
use ncwalk_core::tableau::partition_to_tableau;
use ncwalk_core::verify::{
    cross_check_suite, enumerate_partitions, sampler_uniformity_with_retry, OracleError, VerifyError,
    MAX_PARTITION_N,
};
use ncwalk_core::{
    parse_partition, CountTable, EngineError, PartitionSampler, RandomStream, SamplerError, SetPartition, SizeLimit,
    TableKind, TwoRegularSampler, Variant,
};

pub use args::{Cli, Command, DiagramFormat, OutputFormat, VariantArg};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Largest n used by `verify` for the uniformity runs.
const UNIFORMITY_N: usize = 6;

#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification,
    Cap(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::TooLarge { .. } => Failure::Cap(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<SamplerError> for Failure {
    fn from(e: SamplerError) -> Self {
        match e {
            SamplerError::Engine(inner) => inner.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Engine(inner) => inner.into(),
            VerifyError::Sampler(inner) => inner.into(),
            VerifyError::Oracle(OracleError::PartitionCap { .. }) | VerifyError::SuiteCap { .. } => {
                Failure::Cap(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = dispatch(cli.command, input, out, err).and_then(|()| out.flush().map_err(Failure::from));
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
        Err(Failure::Verification) => EXIT_VERIFY,
        Err(Failure::Cap(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_CAP
        }
    }
}

fn dispatch(command: Command, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Count(a) => count(a, out),
        Command::Sample(a) => sample(a, out, err),
        Command::Enumerate(a) => enumerate(a, out),
        Command::Tables(a) => tables(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Render(a) => render_input(a, input, out),
    }
}

fn limit(allow_large: bool) -> SizeLimit {
    if allow_large {
        SizeLimit::unbounded()
    } else {
        SizeLimit::default()
    }
}

fn to_usize(n: u64) -> Result<usize, Failure> {
    usize::try_from(n).map_err(|_| Failure::Cap(format!("n = {n} does not fit in memory")))
}

fn count(a: args::CountArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let n = to_usize(a.size.n)?;
    let limit = limit(a.size.allow_large);
    let value = match Variant::from(a.size.variant) {
        Variant::Plain => chamber_count(n, limit)?,
        Variant::TwoRegular => {
            limit.check(n)?;
            loop_free_count(n - 1, SizeLimit::unbounded())?
        }
    };
    writeln!(out, "{value}")?;
    Ok(())
}

/// `<dir>/ncwalk-v<version>-<kind>-n<n>.tbl`
pub fn cache_file(dir: &Path, kind: TableKind, n: usize) -> PathBuf {
    dir.join(format!("ncwalk-v{CACHE_VERSION}-{}-n{n}.tbl", kind.name()))
}

fn table_spec(variant: Variant, n: usize) -> (TableKind, usize) {
    match variant {
        Variant::Plain => (TableKind::Omega, n),
        Variant::TwoRegular => (TableKind::SigmaStar, n - 1),
    }
}

fn build_table(variant: Variant, n: usize, limit: SizeLimit) -> Result<CountTable, Failure> {
    limit.check(n)?;
    Ok(match variant {
        Variant::Plain => build_omega(n, limit)?,
        Variant::TwoRegular => build_sigma_star(n - 1, SigmaMethod::DirectDp, limit)?,
    })
}

fn cached_table(dir: &Path, variant: Variant, n: usize, err: &mut dyn Write) -> Option<CountTable> {
    let (kind, table_n) = table_spec(variant, n);
    let path = cache_file(dir, kind, table_n);
    let file = fs::File::open(&path).ok()?;
    match load_table(BufReader::new(file)) {
        Ok(table) if table.kind() == kind && table.n() >= table_n => Some(table),
        Ok(_) => {
            let _ = writeln!(err, "warning: {} does not hold a usable table, rebuilding", path.display());
            None
        }
        Err(e) => {
            let _ = writeln!(err, "warning: ignoring cache {}: {e}", path.display());
            None
        }
    }
}

enum Sampler {
    Plain(PartitionSampler),
    TwoRegular(TwoRegularSampler),
}

impl Sampler {
    fn new(variant: Variant, n: usize, table: CountTable) -> Result<Self, Failure> {
        Ok(match variant {
            Variant::Plain => Sampler::Plain(PartitionSampler::with_table(n, table)?),
            Variant::TwoRegular => Sampler::TwoRegular(TwoRegularSampler::with_table(n, table)?),
        })
    }

    fn sample(&self, rng: &mut RandomStream) -> Result<SetPartition, SamplerError> {
        match self {
            Sampler::Plain(s) => s.sample(rng),
            Sampler::TwoRegular(s) => s.sample(rng),
        }
    }
}

fn format_partition_as(p: &SetPartition, format: OutputFormat) -> Result<String, Failure> {
    Ok(match format {
        OutputFormat::Blocks => p.to_string(),
        OutputFormat::Arcs => format!("n={}: {}", p.n(), format_arcs(&p.canonical_arcs()))
            .trim_end()
            .to_string(),
        OutputFormat::Tableau => partition_to_tableau(p)
            .map_err(|e| Failure::Usage(e.to_string()))?
            .to_string(),
    })
}

fn clock_seed() -> u64 {
    let nanos = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_nanos())
        .unwrap_or(0);
    (nanos as u64) ^ ((nanos >> 64) as u64)
}

fn sample(a: args::SampleArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let n = to_usize(a.size.n)?;
    let variant = Variant::from(a.size.variant);
    let limit = limit(a.size.allow_large);
    limit.check(n)?;
    let table = match a.cache.as_deref().and_then(|dir| cached_table(dir, variant, n, err)) {
        Some(table) => table,
        None => build_table(variant, n, limit)?,
    };
    let sampler = Sampler::new(variant, n, table)?;
    let seed = a.seed.unwrap_or_else(|| {
        let seed = clock_seed();
        let _ = writeln!(err, "seed {seed}");
        seed
    });
    let mut rng = RandomStream::new(seed);
    for _ in 0..a.count {
        let p = sampler.sample(&mut rng)?;
        writeln!(out, "{}", format_partition_as(&p, a.format)?)?;
    }
    Ok(())
}

fn enumerate(a: args::EnumerateArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let n = to_usize(a.n)?;
    if n > MAX_PARTITION_N {
        return Err(Failure::Cap(format!(
            "enumerate lists every partition and is capped at n = {MAX_PARTITION_N}; use `count` or `sample` for larger n"
        )));
    }
    let variant = Variant::from(a.variant);
    for p in enumerate_partitions(n, variant.filter()).map_err(VerifyError::from)? {
        writeln!(out, "{}", format_partition_as(&p, a.format)?)?;
    }
    Ok(())
}

fn tables(a: args::TablesArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let n = to_usize(a.size.n)?;
    let variant = Variant::from(a.size.variant);
    let started = Instant::now();
    let table = build_table(variant, n, limit(a.size.allow_large))?;
    let elapsed = started.elapsed();
    fs::create_dir_all(&a.out)?;
    let path = cache_file(&a.out, table.kind(), table.n());
    let mut sink = BufWriter::new(fs::File::create(&path)?);
    save_table(&table, &mut sink)?;
    sink.flush()?;
    writeln!(
        out,
        "{} n={} built in {:.3}s, {} entries, written to {}",
        table.kind(),
        table.n(),
        elapsed.as_secs_f64(),
        table.entry_count(),
        path.display()
    )?;
    Ok(())
}

fn verify(a: args::VerifyArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let n_max = to_usize(a.n_max)?;
    let report = cross_check_suite(n_max)?;
    let mut lines: Vec<String> = report.checks.iter().map(|c| c.to_string()).collect();
    let mut passed = report.passed();
    let n = n_max.min(UNIFORMITY_N);
    for variant in [Variant::Plain, Variant::TwoRegular] {
        let runs = sampler_uniformity_with_retry(variant, n, a.samples_per_class, a.seed)?;
        let (seed, last) = runs.last().expect("at least one run");
        let ok = last.passed() && last.every_class_seen();
        passed &= ok;
        lines.push(format!(
            "CHECK uniformity_{} {} n={n} seed={seed} runs={} {last}",
            variant.name(),
            if ok { "pass" } else { "fail" },
            runs.len()
        ));
    }
    for line in &lines {
        writeln!(out, "{line}")?;
    }
    if let Some(path) = &a.summary {
        fs::write(path, lines.iter().map(|l| format!("{l}\n")).collect::<String>())?;
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn render_input(a: args::RenderArgs, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<(), Failure> {
    let mut first = true;
    for (index, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let p = parse_partition(&line).map_err(|e| Failure::Usage(format!("line {}: {e}", index + 1)))?;
        match a.format {
            DiagramFormat::Ascii => {
                if !first {
                    writeln!(out)?;
                }
                write!(out, "{}", render::ascii(&p))?;
            }
            DiagramFormat::Svg => write!(out, "{}", render::svg(&p))?,
        }
        first = false;
    }
    Ok(())
}
