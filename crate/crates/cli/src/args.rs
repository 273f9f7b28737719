use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "polyzeta", version, about = "Exact harmonic sums, certified MZV evaluation and identity checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = 128)]
    pub prec: u32,
    /// Pass threshold for numeric checks (overrides per-family tolerances).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Cap on series terms per atom.
    #[arg(long, global = true, default_value_t = polyzeta::eval::DEFAULT_MAX_TERMS)]
    pub max_terms: usize,
    /// Write a JSON report to this path.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Seed for random parameter grids.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Random instances per sampled family when `--seed` is given.
    #[arg(long, global = true, default_value_t = 20)]
    pub samples: usize,
    /// Include wall-clock milliseconds per instance.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a single value.
    #[command(subcommand)]
    Eval(EvalCmd),
    /// Exact truncated sum ζ_n(k), ζ*_n(k) or ζ*_n(k; x).
    Finite {
        n: u64,
        /// Signed index such as "2,1" or "-1,2".
        #[arg(allow_hyphen_values = true)]
        index: String,
        #[arg(long)]
        star: bool,
        /// Weight x^{n_r} on the innermost variable (star sums only).
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
    },
    /// Harmonic product u * v.
    Stuffle {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Star expansion k⋆.
    Starexpand {
        #[arg(allow_hyphen_values = true)]
        k: String,
    },
    /// Circled product k ⊛ l (with `--star`, k ⊛ l⋆).
    Circledstar {
        #[arg(allow_hyphen_values = true)]
        k: String,
        #[arg(allow_hyphen_values = true)]
        l: String,
        #[arg(long)]
        star: bool,
    },
    /// Labelled poset integrals from a JSON file.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Verify an identity family instance, or `suite <name>`, or `list`.
    Verify {
        /// Family id, `suite` or `list`.
        target: String,
        /// Suite name after `suite`.
        name: Option<String>,
        /// Parameters such as m=1:2,p=0,a=-1/2.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        params: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum EvalCmd {
    /// Alternating MZV, e.g. "2,1" or "-1,-1".
    Mzv {
        #[arg(allow_hyphen_values = true)]
        index: String,
    },
    /// Multiple polylogarithm Li_s(z_1, ..., z_r).
    Li {
        exps: String,
        /// Comma-separated rational arguments, default all 1.
        #[arg(long, allow_hyphen_values = true)]
        args: Option<String>,
        /// Read arguments as Li^Ξ.
        #[arg(long)]
        xi: bool,
    },
    /// Star polylogarithm Li*_s(z).
    Listar {
        exps: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Kaneko–Yamamoto value Σ x^n ζ_{n-1}(k') ζ*_n(l') / n^{k_1+l_1}; `l` may start with 0.
    Ky {
        #[arg(allow_hyphen_values = true)]
        k: String,
        #[arg(allow_hyphen_values = true)]
        l: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        x: String,
        /// Also sum the defining series directly with this many terms (f64).
        #[arg(long)]
        direct: Option<usize>,
    },
    /// Iterated integral of a word such as "[0,1,-1]".
    Word {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum PosetCmd {
    /// Value of the poset integral.
    Eval { file: PathBuf },
    /// Linear extensions as a formal sum of words.
    Expand {
        file: PathBuf,
        /// Incomparable-pair choice for the pair decomposition.
        #[arg(long, value_enum)]
        order: Option<Split>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Split {
    First,
    Last,
}
