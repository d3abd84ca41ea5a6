mod run;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ramify", version, about = "Ramification invariants of Witt vectors and differential forms over K((t))")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Characteristic of the residue field.
    #[arg(long, global = true, default_value_t = 2)]
    pub p: u32,
    /// Witt vector length.
    #[arg(long, global = true, default_value_t = 1)]
    pub n: usize,
    /// Number of variables z1..zm (unbounded when omitted).
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Starting precision for symbols and dlog expansions.
    #[arg(long, global = true, env = "RAMIFY_PREC")]
    pub prec: Option<i64>,
    /// JSON output (the default).
    #[arg(long, global = true)]
    pub json: bool,
    /// Human-readable output.
    #[arg(long, global = true, conflicts_with = "json")]
    pub pretty: bool,
    /// Read the input element (or the batch requests) from a JSON file.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Kr,
    Artin,
    AlphaP,
    Rose,
    Log,
    Matsuda,
    Dr,
    Irr,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Conductor or filtration level of an element.
    Conductor {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Expected form degree for `--kind dr`.
        #[arg(long)]
        q: Option<usize>,
        expr: Option<String>,
    },
    /// Local symbol (a, f) with respect to a coefficient field.
    Symbol {
        /// 0 for the standard coefficient field, 1 for the twisted one.
        #[arg(long, default_value_t = 0)]
        sigma: u8,
        /// Twist exponent of the twisted coefficient field.
        #[arg(long, default_value_t = 0)]
        e: u32,
        /// The function f.
        #[arg(long)]
        unit: String,
        expr: Option<String>,
    },
    /// Residue of V^r([a][t]^i) dV^s([b][t]^j) in W_n(K).
    Residue {
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        s: usize,
        #[arg(long, allow_hyphen_values = true)]
        i: i64,
        #[arg(long, allow_hyphen_values = true)]
        j: i64,
        a: String,
        b: String,
    },
    /// Canonical decomposition into Teichmüller and Verschiebung monomials.
    CanonicalForm { expr: Option<String> },
    /// Randomized checks of the conductor axioms (or `--conductor symbols` for the symbol laws).
    Axioms {
        #[arg(long)]
        conductor: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Deepest pole of sampled elements.
        #[arg(long, default_value_t = 4)]
        depth: i64,
        /// CSV instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Requests from `--file`, or a sampled table of conductors.
    Batch {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        depth: i64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run::run(&cli) {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("{}", serde_json::json!({ "error": e.to_string() }));
            ExitCode::from(e.code())
        }
    }
}
