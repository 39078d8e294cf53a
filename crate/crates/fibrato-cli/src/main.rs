use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fibrato::exactalg::primefield::DEFAULT_PRIME;
use fibrato::moduli::StratifyOptions;
use fibrato::parallel::Execution;
use fibrato_cli::{
    cmd_a6, cmd_classify, cmd_horikawa, cmd_invariants, cmd_moduli, cmd_pg3_example, cmd_solve, cmd_stratify,
    cmd_torsion, CliError, TupleFile,
};

#[derive(Parser)]
#[command(name = "fibrato", version, about = "Genus-2 and genus-3 fibrations: invariants, bundles and strata")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Prime used for sampling.
    #[arg(long, global = true, env = "FIBRATO_DEFAULT_PRIME", default_value_t = DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants, derived bundles and admissibility of a tuple file, or of
    /// genus-2 numerical data given by --b, --chi, --ksq.
    Invariants {
        file: Option<PathBuf>,
        #[arg(long, requires_all = ["chi", "ksq"], conflicts_with = "file")]
        b: Option<u32>,
        #[arg(long)]
        chi: Option<i64>,
        #[arg(long)]
        ksq: Option<i64>,
    },
    /// Stratum of a surface with p_g = q = 1, K^2 = 3 and genus-2 Albanese fibres.
    Classify {
        /// e.g. "f2=f3=0", "f1=0", "none-zero".
        #[arg(long)]
        pattern: String,
        /// "[0]", "general", "L1", "M4", ...
        #[arg(long, default_value = "general")]
        tau: String,
        /// Run the sampler when h0(Ã6) is delegated to it.
        #[arg(long)]
        resolve: bool,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Dimension counts for every stratum.
    Moduli,
    /// The p_g = 3, q = 0 family over P^1 with d rank drops.
    Pg3Example {
        #[arg(long)]
        d: u32,
    },
    /// Rank of F' over random parameters, as TSV with a summary.
    Stratify {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 100)]
        lines: usize,
        /// Also compute the gcd of maximal minors over Q[a, b, c, d].
        #[arg(long)]
        exact_gcd: bool,
        #[arg(long)]
        sequential: bool,
    },
    /// The branch bundle Ã6 of a genus-2 tuple file.
    A6 { file: PathBuf },
    /// Torsion of the relative canonical algebra in degree k.
    Torsion {
        #[arg(long, default_value_t = 2)]
        genus: u32,
        #[arg(long)]
        k: u32,
        /// Multiplicities of the points of τ.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        s: Vec<u32>,
    },
    /// Horikawa type of a special fibre; the whole table without --s.
    Horikawa {
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        lambda_zero: Option<bool>,
    },
}

fn read_tuple(path: &PathBuf) -> Result<TupleFile, CliError> {
    TupleFile::from_json(&std::fs::read_to_string(path)?)
}

fn run(cli: Cli) -> Result<String, CliError> {
    let json = |v: serde_json::Value| serde_json::to_string_pretty(&v).expect("serializable") + "\n";
    let opts = |samples, lines, exact_gcd, sequential: bool| StratifyOptions {
        samples,
        lines,
        seed: cli.seed,
        prime: cli.prime,
        exact_gcd,
        exec: if sequential { Execution::Sequential } else { Execution::Parallel },
    };
    match &cli.command {
        Command::Invariants { file: Some(f), .. } => Ok(json(cmd_invariants(&read_tuple(f)?)?)),
        Command::Invariants { b: Some(b), chi: Some(chi), ksq: Some(ksq), .. } => Ok(json(cmd_solve(*b, *chi, *ksq)?)),
        Command::Invariants { .. } => Err(CliError::Schema("give a tuple file or --b, --chi and --ksq".into())),
        Command::Classify { pattern, tau, resolve, samples } => {
            let o = opts(*samples, 20, false, false);
            Ok(json(cmd_classify(pattern, tau, resolve.then_some(&o))?))
        }
        Command::Moduli => Ok(json(cmd_moduli())),
        Command::Pg3Example { d } => Ok(json(cmd_pg3_example(*d)?)),
        Command::Stratify { samples, lines, exact_gcd, sequential } => {
            cmd_stratify(&opts(*samples, *lines, *exact_gcd, *sequential))
        }
        Command::A6 { file } => Ok(json(cmd_a6(&read_tuple(file)?)?)),
        Command::Torsion { genus, k, s } => Ok(json(cmd_torsion(*genus, *k, s)?)),
        Command::Horikawa { s, lambda_zero } => Ok(json(cmd_horikawa(*s, *lambda_zero)?)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.clone();
    let result = run(cli).and_then(|text| match &output {
        Some(p) => std::fs::write(p, text).map_err(CliError::from),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fibrato: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
