//! `oredim`: dimension tables for finitely presented group-ring modules.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use oredim::complex::{finite_group_betti, ore_homology, quotient_homology};
use oredim::dimension::{
    approx_report, elek_truncation_dim, ore_dim, parse_tolerance, virtual_ore_dim, ApproxConfig,
    Record, DEFAULT_FOLNER_SIZES, DEFAULT_LEVELS, HEISENBERG_FOLNER_SIZES,
};
use oredim::json::{parse_complex, parse_matrix};
use oredim::{Error, FieldDescriptor, GroupDescriptor, PresentedModule, RankAlgorithm, RankOptions, Subgroup};

#[derive(Parser)]
#[command(name = "oredim", version, about = "Dimensions of finitely presented modules over group rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact Ore dimension of coker(A) over k[Z^d].
    Ore(Single),
    /// Ore and virtual Ore dimensions next to the Følner and quotient tables.
    Approx(Approx),
    /// Følner truncation table.
    Folner(Leveled),
    /// Virtual Ore dimension through a finite-index free abelian subgroup.
    Vdim(Vdim),
    /// Homology dimensions of a free chain complex.
    Homology(Leveled),
    /// Betti numbers of (Z/n)^d.
    BettiFinite(BettiFinite),
    /// Run the acceptance suite.
    Selftest(Selftest),
}

#[derive(Args)]
struct Output {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "rank-alg", value_enum, default_value_t = RankAlg::Auto)]
    rank_alg: RankAlg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the table here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Output {
    fn options(&self) -> RankOptions {
        RankOptions { algorithm: self.rank_alg.into(), seed: self.seed }
    }
}

#[derive(Args)]
struct Single {
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Leveled {
    #[arg(long)]
    input: PathBuf,
    /// Levels or sizes, strictly increasing.
    #[arg(long, value_delimiter = ',')]
    levels: Option<Vec<usize>>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Approx {
    #[arg(long)]
    input: PathBuf,
    /// Quotient levels, strictly increasing.
    #[arg(long, value_delimiter = ',')]
    levels: Option<Vec<usize>>,
    /// Følner sizes, strictly increasing.
    #[arg(long = "folner-sizes", value_delimiter = ',')]
    folner_sizes: Option<Vec<usize>>,
    /// Agreement tolerance as p/q or a decimal.
    #[arg(long, default_value = "1/20")]
    tol: String,
    /// Index n of the subgroup (nZ)^d for the virtual Ore dimension.
    #[arg(long = "subgroup-index")]
    subgroup_index: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Vdim {
    #[arg(long)]
    input: PathBuf,
    /// Index n of the subgroup (nZ)^d; the rotation subgroup is used for D_inf.
    #[arg(long = "subgroup-index")]
    subgroup_index: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BettiFinite {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    /// A prime p or Q.
    #[arg(long, default_value = "2")]
    field: String,
    #[arg(long = "i-max", default_value_t = 4)]
    i_max: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Selftest {
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    only: Option<Vec<u8>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RankAlg {
    Auto,
    Dense,
    Sparse,
    Bareiss,
    Prob,
}

impl From<RankAlg> for RankAlgorithm {
    fn from(a: RankAlg) -> Self {
        match a {
            RankAlg::Auto => RankAlgorithm::Auto,
            RankAlg::Dense => RankAlgorithm::Dense,
            RankAlg::Sparse => RankAlgorithm::Sparse,
            RankAlg::Bareiss => RankAlgorithm::Bareiss,
            RankAlg::Prob => RankAlgorithm::Prob,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

const EXIT_INPUT: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;

enum Failure {
    Input(String),
    Library(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_module(path: &PathBuf) -> Result<PresentedModule, Failure> {
    Ok(PresentedModule::new(parse_matrix(&read(path)?)?))
}

fn subgroup(index: Option<usize>, group: GroupDescriptor) -> Result<Subgroup, Failure> {
    Ok(match index {
        Some(n) => Subgroup::Scaled { n },
        None => Subgroup::default_for(group)?,
    })
}

fn emit(records: &[Record], output: &Output) -> Result<(), Failure> {
    let bytes = match output.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in records {
                w.serialize(r).map_err(|e| Failure::Io(std::io::Error::other(e)))?;
            }
            w.into_inner().map_err(|e| Failure::Io(std::io::Error::other(e.to_string())))?
        }
        Format::Json => {
            let mut text = serde_json::to_string_pretty(records).expect("records serialize");
            text.push('\n');
            text.into_bytes()
        }
    };
    match &output.out {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    Ok(())
}

fn field_from_flag(text: &str) -> Result<FieldDescriptor, Failure> {
    if text.eq_ignore_ascii_case("q") {
        return Ok(FieldDescriptor::rationals());
    }
    let digits = text.trim_start_matches(['F', 'f']).trim_start_matches('_');
    let p: u64 = digits.parse().map_err(|_| Failure::Input(format!("invalid field '{text}'; use a prime or Q")))?;
    Ok(FieldDescriptor::prime(p)?)
}

fn run(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Ore(a) => {
            let m = load_module(&a.input)?;
            emit(&[Record::from_value(&ore_dim(&m, a.output.options())?)], &a.output)?;
        }
        Command::Approx(a) => {
            let m = load_module(&a.input)?;
            let mut config = ApproxConfig::defaults_for(m.group());
            config.tolerance = parse_tolerance(&a.tol)?;
            config.rank = a.output.options();
            if let Some(levels) = a.levels {
                config.quotient_levels = levels;
            }
            if let Some(sizes) = a.folner_sizes {
                config.folner_levels = sizes;
            }
            config.subgroup = a.subgroup_index.map(|n| Subgroup::Scaled { n });
            let report = approx_report(&m, &config)?;
            emit(&report.records(), &a.output)?;
            let verdict = |v: Option<bool>| match v {
                Some(true) => "within",
                Some(false) => "outside",
                None => "no target",
            };
            eprintln!(
                "agreement at tolerance {}: folner {}, quotient {}",
                oredim::json::ratio_string::to_string(&report.agreement.tolerance),
                verdict(report.agreement.folner),
                verdict(report.agreement.quotient)
            );
        }
        Command::Folner(a) => {
            let m = load_module(&a.input)?;
            let default = match m.group() {
                GroupDescriptor::Heisenberg => HEISENBERG_FOLNER_SIZES.to_vec(),
                _ => DEFAULT_FOLNER_SIZES.to_vec(),
            };
            let table = elek_truncation_dim(&m, &a.levels.unwrap_or(default), a.output.rank_alg.into())?;
            emit(&Record::from_table(&table), &a.output)?;
        }
        Command::Vdim(a) => {
            let m = load_module(&a.input)?;
            let h = subgroup(a.subgroup_index, m.group())?;
            emit(&[Record::from_value(&virtual_ore_dim(&m, h, a.output.options())?)], &a.output)?;
        }
        Command::Homology(a) => {
            let c = parse_complex(&read(&a.input)?)?;
            let levels = a.levels.unwrap_or_else(|| DEFAULT_LEVELS.to_vec());
            let mut report = quotient_homology(&c, &levels, a.output.rank_alg.into())?;
            if let GroupDescriptor::Zd(_) = c.group() {
                report.ore = Some(ore_homology(&c, a.output.options())?);
            }
            emit(&report.records(), &a.output)?;
        }
        Command::BettiFinite(a) => {
            let field = field_from_flag(&a.field)?;
            let betti = finite_group_betti(a.d, a.n, field, a.i_max)?;
            let order = a.n.pow(a.d as u32);
            let records: Vec<Record> = betti
                .iter()
                .enumerate()
                .map(|(i, &b)| Record {
                    method: format!("betti-b{i}"),
                    level: Some(a.n),
                    normalizer: order,
                    raw: b,
                    normalized: oredim::json::ratio_string::parse(&format!("{b}/{order}")).expect("valid ratio"),
                    certified: true,
                })
                .collect();
            emit(&records, &a.output)?;
        }
        Command::Selftest(a) => {
            let ids = a.only.unwrap_or_else(oredim::acceptance::criterion_ids);
            let mut all = true;
            for id in ids {
                let result = oredim::acceptance::run_criterion(id)
                    .ok_or_else(|| Failure::Input(format!("unknown criterion {id}")))?;
                println!("{result}");
                all &= result.passed;
            }
            return Ok(all);
        }
    }
    Ok(true)
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(text) = std::env::var("OREDIM_THREADS") else { return Ok(()) };
    let threads: usize = match text.trim().parse() {
        Ok(n) if n >= 1 => n,
        _ => return Err(Failure::Input(format!("OREDIM_THREADS must be an integer >= 1, got '{text}'"))),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Input(format!("cannot configure {threads} threads: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli.command)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(Failure::Library(e)) if e.is_unsupported() => {
            eprintln!("{e}");
            ExitCode::from(EXIT_UNSUPPORTED)
        }
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
