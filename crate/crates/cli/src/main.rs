//! `klr`: batch front end for the KLR workbench.
//!
//! Exit codes: 0 when every requested check passes, 1 on a falsification or internal
//! failure, 2 when a check was refused for lack of window, 64 on malformed input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use klr_cli::{execute, exit_code, job_spec, Params};

#[derive(Parser, Debug)]
#[command(name = "klr", version, about = "Exact computations with finite type KLR algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Positive roots with heights and root lengths.
    Roots(Common),
    /// The convex order of a reduced word of the longest element.
    Orders(Common),
    /// Kostant partitions of alpha and their bilexicographic comparisons.
    Kp(Common),
    /// Characters of simple, reduced standard and standard modules.
    Characters(Common),
    /// Check a theorem on a window.
    Verify {
        #[arg(value_enum)]
        what: Check,
        #[command(flatten)]
        common: Common,
    },
    /// Decomposition matrices over each field.
    Decomp(Common),
    /// Adjustment matrices for each prime.
    Adjustment(Common),
    /// Ext^1 windows over Q and F_p and the torsion they indicate.
    Ext1(Common),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Check {
    TheoremA,
    TheoremB,
    Freeness,
}

#[derive(Args, Debug)]
struct Common {
    /// Cartan type such as A2, B2, G2.
    #[arg(long = "type")]
    cartan_type: String,
    /// Coefficients of alpha in the simple roots, comma separated.
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<i64>>,
    /// Reduced word of the longest element (0-based letters, comma separated).
    #[arg(long, value_delimiter = ',')]
    order_word: Option<Vec<usize>>,
    #[arg(long, default_value_t = 8)]
    max_deg: i32,
    #[arg(long, default_value_t = 8)]
    ann_deg: i32,
    /// Coefficient fields among Q, F2, F3, F5, F7.
    #[arg(long, value_delimiter = ',', default_value = "Q")]
    fields: Vec<String>,
    /// Primes for adjustment and Ext^1 comparisons.
    #[arg(long = "p", value_delimiter = ',', default_value = "2")]
    primes: Vec<u64>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (task, common) = match &cli.cmd {
        Cmd::Roots(c) => ("roots", c),
        Cmd::Orders(c) => ("orders", c),
        Cmd::Kp(c) => ("kp", c),
        Cmd::Characters(c) => ("characters", c),
        Cmd::Verify { what: Check::TheoremA, common } => ("theorem-a", common),
        Cmd::Verify { what: Check::TheoremB, common } => ("theorem-b", common),
        Cmd::Verify { what: Check::Freeness, common } => ("freeness", common),
        Cmd::Decomp(c) => ("decomp", c),
        Cmd::Adjustment(c) => ("adjustment", c),
        Cmd::Ext1(c) => ("ext1", c),
    };
    let params = Params {
        cartan_type: common.cartan_type.clone(),
        alpha: common.alpha.clone(),
        order_word: common.order_word.clone(),
        max_deg: common.max_deg,
        ann_deg: common.ann_deg,
        fields: common.fields.clone(),
        primes: common.primes.clone(),
    };
    let job = match job_spec(task, &params) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(64);
        }
    };
    match execute(&job, &common.out, common.cache_dir.as_deref(), common.jobs) {
        Ok((outs, status)) => {
            for l in outs.iter().flat_map(|o| &o.lines) {
                println!("{}", l);
            }
            ExitCode::from(exit_code(status))
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(1)
        }
    }
}
