use clap::{Args, Parser, Subcommand, ValueEnum};

/// Document arguments (rings, matrices, words, certificates, polynomials)
/// take inline JSON or a path to a JSON file. A ring may also be written
/// as `BASE` or `BASE[v1,v2,...]`, e.g. `Z/6` or `Q[x,y]`.
#[derive(Parser, Debug)]
#[command(name = "matpatch", version, about = "Exact factorization, lifting, patching and row tools with self-checking output")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    #[command(subcommand)]
    Ring(RingCmd),
    #[command(subcommand)]
    Mat(MatCmd),
    #[command(subcommand)]
    Factor(FactorCmd),
    #[command(subcommand)]
    Hensel(HenselCmd),
    #[command(subcommand)]
    Patch(PatchCmd),
    #[command(subcommand)]
    Umrow(UmrowCmd),
    #[command(subcommand)]
    Pseudo(PseudoCmd),
}

#[derive(Args, Debug)]
pub struct RingArg {
    #[arg(long)]
    pub ring: String,
}

#[derive(Subcommand, Debug)]
pub enum RingCmd {
    /// Normal form of an expression.
    Normalize {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        expr: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum MatCmd {
    Det {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        matrix: String,
    },
    /// Elementary word for diag(M, M^-1).
    Whitehead {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        matrix: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Lower,
    Upper,
}

#[derive(Subcommand, Debug)]
pub enum FactorCmd {
    /// Closed-form conjugate of e21(t g) (or e12) by a matrix with column (b, d).
    Suslin {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        b: String,
        #[arg(long)]
        d: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "t")]
        t: String,
        #[arg(long, value_enum, default_value_t = SideArg::Lower)]
        side: SideArg,
    },
    /// Regroups a word along a splitting of each parameter.
    Regroup {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        word: String,
        /// JSON list of `[b, a]` pairs with `b + a` the generator parameter.
        #[arg(long)]
        split: String,
    },
    /// Splits `num / (fg)^k` into fractions over `f` and `g`.
    Partfrac {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        comax: ComaxArgs,
        #[arg(long)]
        num: String,
        #[arg(long)]
        k: u32,
    },
    /// Elementary word for a matrix congruent to the identity modulo the truncation ideal.
    Reduce {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        matrix: String,
    },
    /// Splits a 2x2 word over the localization at `fg`; every parameter is `z / (fg)^k`.
    Zsplit2 {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        comax: ComaxArgs,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
}

#[derive(Args, Debug)]
pub struct ComaxArgs {
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub g: String,
    #[arg(long)]
    pub u: String,
    #[arg(long)]
    pub v: String,
}

#[derive(Subcommand, Debug)]
pub enum HenselCmd {
    /// Sylvester resultant with declared degrees (defaults to actual degrees).
    Resultant {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Root in the truncation ideal of an N-polynomial.
    Root {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        f: String,
    },
    /// Lifts a factorization modulo the truncation ideal.
    Lift {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g_bar: String,
        #[arg(long)]
        h_bar: String,
        #[arg(long, requires = "t_bar")]
        s_bar: Option<String>,
        #[arg(long, requires = "s_bar")]
        t_bar: Option<String>,
    },
    /// f = u g h with g monic and h in 1 + tI[t].
    Split {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        f: String,
    },
    /// Unit witness in A[x,y]/(xy - alpha).
    OverringWitness {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        alpha: String,
        /// Element of A[x,y].
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "x")]
        x: String,
        #[arg(long, default_value = "y")]
        y: String,
    },
}

#[derive(Args, Debug)]
pub struct SquareArg {
    /// `{"ambient": RING, "i": [...], "j": [...]}`.
    #[arg(long)]
    pub square: String,
}

#[derive(Subcommand, Debug)]
pub enum PatchCmd {
    /// The four rings of a Milnor square.
    Square {
        #[command(flatten)]
        square: SquareArg,
    },
    /// Idempotent of the module patched along sigma.
    Idempotent {
        #[command(flatten)]
        square: SquareArg,
        #[arg(long)]
        sigma: String,
    },
    /// Determinant-one factors of sigma, from trivializations or a certificate.
    Factorize {
        #[command(flatten)]
        square: SquareArg,
        #[arg(long)]
        sigma: String,
        #[arg(long, requires = "tau1", conflicts_with = "cert")]
        tau0: Option<String>,
        #[arg(long, requires = "tau0")]
        tau1: Option<String>,
        #[arg(long)]
        cert: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum UmrowCmd {
    /// Elementary orbits on unimodular rows of a finite ring.
    Orbits {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        sequential: bool,
    },
    /// Moves a row over a semilocal ring to one with a unit entry.
    Reduce {
        #[command(flatten)]
        ring: RingArg,
        /// JSON list of entries.
        #[arg(long)]
        row: String,
        /// JSON list of `{"target": RING, "images": [...]}` maps onto fields.
        #[arg(long)]
        maps: String,
    },
    /// The row (1 + a, x1, x2) with its witness.
    Murthy {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        verify: bool,
    },
    /// Checks a Bezout witness and optionally a completion.
    Check {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        row: String,
        #[arg(long)]
        witness: String,
        #[arg(long)]
        completion: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum PseudoCmd {
    Verify {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        cert: String,
        #[arg(long)]
        matrix: String,
    },
    Compose {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        cert: String,
        #[arg(long)]
        with: String,
    },
    /// Certificate for a 2x2 elementary word.
    Fromword {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        word: String,
    },
    /// Lifts a certificate over a quotient ring back to `--ring`; variables map by name.
    Lift {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        target: String,
        #[arg(long)]
        cert: String,
    },
    /// tau(t) with tau(1) the certified matrix and tau(0) integral.
    Isotopy {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        cert: String,
    },
}
