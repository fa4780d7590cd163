use clap::{Parser, Subcommand, ValueEnum};

use bernoulli_games::GameId;

#[derive(Debug, Parser)]
#[command(
    name = "bgame",
    version,
    about = "Bernoulli games, kernel positions and related counting sequences"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    /// `n value` per line; integer sequences only.
    Bfile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Exhaustive Grundy computation.
    Oracle,
    /// Sum over elementary kernel factor types.
    Formula,
    /// Removal of the last elementary kernel factor.
    Recurrence,
    /// Generating function coefficient.
    Gf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count kernel positions of rank n by one or more methods.
    Kernels {
        /// original, instant, poly:<x>, flat or flat-xf
        game: GameId,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "formula")]
        methods: Vec<Method>,
    },
    /// Factor a position into elementary kernel positions.
    Decompose {
        game: GameId,
        /// Canonical (`1.1.1,2.2.1`) or native (`1,2,1`, `u;v`) word.
        word: String,
    },
    /// Winning moves from a position, and the move the engine would play.
    Bestmove { game: GameId, word: String },
    /// Connected permutations: counts of rank n, or facts about one permutation.
    Connected {
        #[arg(long, required_unless_present = "perm")]
        n: Option<usize>,
        /// Print every connected permutation of rank n.
        #[arg(long, requires = "n")]
        list: bool,
        /// A permutation in one-line notation, such as 251376948 or 2,5,1,3,7,6,9,4,8.
        #[arg(long, conflicts_with = "n")]
        perm: Option<String>,
    },
    /// Bernoulli numbers of the second kind b_0..b_n, or the polynomial b_n(x).
    Bernoulli2 {
        #[arg(long)]
        n: usize,
        /// Print b_n(x) in the power and binomial bases instead.
        #[arg(long)]
        poly: bool,
        /// Divide by n! (Jordan's normalization).
        #[arg(long)]
        jordan: bool,
    },
    /// Check an identity for every n up to --max-n.
    Verify {
        /// e-b2e, e-b2rec, e-mrgf, e-if, t-epi, king-equiv, e-fbgen, e-kgen, e-st, e-b2bound, gf-compose, c-fbperm
        identity: String,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// Sign table of a_n with both inequality phrasings.
    Conjecture {
        #[arg(long, default_value_t = 200)]
        max_n: usize,
    },
    /// Play against the engine; you move first.
    Play {
        game: GameId,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Start from this position instead of a random one.
        #[arg(long)]
        start: Option<String>,
    },
}
