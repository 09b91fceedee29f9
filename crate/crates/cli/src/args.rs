use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "boolinv",
    version,
    about = "Completions and Booleanizations of finite inverse semigroups, definite languages and Cuntz-Toeplitz maps"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Finite inverse semigroups given as Cayley tables.
    #[command(subcommand)]
    Semigroup(SemigroupCmd),
    /// Definite languages X + YA*.
    #[command(subcommand)]
    Lang(LangCmd),
    /// The polycyclic monoid P_n.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Maps of the Cuntz-Toeplitz monoid and its Cuntz quotient.
    #[command(subcommand)]
    Ct(CtCmd),
    /// Integer-matrix representations.
    #[command(subcommand)]
    Rep(RepCmd),
}

/// A table named on the command line or read from a JSON file.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct TableSource {
    /// Built-in table: I1, I2, I3, chain3, antichain3, bool2, bool4.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Cayley table JSON file.
    #[arg(long = "in", value_name = "PATH")]
    pub input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum SemigroupCmd {
    /// Check the inverse-semigroup axioms; exits 1 when one fails.
    Verify(TableSource),
    /// Distributive, Boolean, meet-semigroup and monoid flags.
    Classify(TableSource),
    /// The distributive completion D(S).
    Complete(TableSource),
    /// The Booleanization B(S).
    Booleanize {
        #[command(flatten)]
        table: TableSource,
        /// Build through the proper-filter groupoid and certify the
        /// isomorphism with the route through D(S).
        #[arg(long, conflicts_with = "distributive")]
        direct: bool,
        /// Treat the input as distributive and use its prime groupoid.
        #[arg(long)]
        distributive: bool,
    },
    /// Boolean hull of a distributive subalgebra. Without --sub, the image
    /// of D(S) inside B(S).
    Hull {
        #[command(flatten)]
        table: TableSource,
        /// Comma-separated element indices of a subalgebra of the (Boolean)
        /// input table.
        #[arg(long)]
        sub: Option<String>,
    },
    /// Factor a homomorphism S → T through D(S) or B(S).
    Factor {
        #[command(flatten)]
        table: TableSource,
        /// Target: built-in name.
        #[arg(long, conflicts_with = "target_in")]
        target: Option<String>,
        /// Target: Cayley table JSON file.
        #[arg(long, value_name = "PATH")]
        target_in: Option<PathBuf>,
        /// The homomorphism as comma-separated target indices.
        #[arg(long)]
        map: String,
        /// Which universal property to use.
        #[arg(long, value_enum, default_value_t = Stage::Booleanization)]
        through: Stage,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Stage {
    Completion,
    Booleanization,
}

/// A language given inline or as a JSON file.
#[derive(Args, Debug, Clone)]
pub struct LangSource {
    /// Alphabet size for inline input.
    #[arg(long)]
    pub alphabet: Option<usize>,
    /// Comma-separated words of the finite part X.
    #[arg(long, default_value = "")]
    pub bounded: String,
    /// Comma-separated words of Y in YA*.
    #[arg(long, default_value = "")]
    pub code: String,
    /// Language JSON file.
    #[arg(long = "in", value_name = "PATH", conflicts_with = "alphabet")]
    pub input: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpArg {
    Union,
    Intersect,
    Difference,
    Complement,
}

#[derive(Subcommand, Debug)]
pub enum LangCmd {
    /// Normal form of X + YA*.
    Normalize(LangSource),
    /// Boolean operation on languages read from JSON files.
    Combine {
        #[arg(value_enum)]
        op: OpArg,
        /// First language (JSON file or inline JSON object).
        left: String,
        /// Second language, absent for complement.
        right: Option<String>,
    },
    /// Whether YA* has finite complement.
    Essential {
        #[arg(long)]
        alphabet: usize,
        /// Comma-separated prefix code.
        #[arg(long)]
        code: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum PolyCmd {
    /// Product of elements written "y,x" (meaning y x⁻¹, "e" for ε) or "0".
    Mul {
        #[arg(long)]
        n: usize,
        #[arg(required = true, num_args = 1..)]
        elements: Vec<String>,
    },
    /// Order, compatibility and orthogonality of two elements.
    Relate {
        #[arg(long)]
        n: usize,
        a: String,
        b: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum CtCmd {
    /// Product m1·m2 (apply m2 first).
    Compose { m1: String, m2: String },
    /// The inverse partial bijection.
    Inverse { m: String },
    /// Largest map below both.
    Meet { m1: String, m2: String },
    /// Join of compatible maps; refuses incompatible ones.
    Join { m1: String, m2: String },
    /// m1 ∖ m2 for m2 ≤ m1.
    Subtract { m1: String, m2: String },
    /// The language of fixed points.
    Fix { m: String },
    /// Image in the Cuntz monoid.
    Quotient { m: String },
    /// Whether two maps differ by a finite-domain map.
    Congruent { m1: String, m2: String },
    /// Seeded random canonical maps.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Longest word in the raw description.
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum RepCmd {
    /// Compare B(S) with the Boolean closure inside the regular representation.
    RussiaCheck(TableSource),
}
