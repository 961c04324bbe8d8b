use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use zerosum::extremal::Family;
use zerosum::suite::Level;

#[derive(Parser, Debug)]
#[command(name = "zerosum", version, about = "Subset sums, zero-sum-free sequences and their certificates over Z_p")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub output: OutputFormat,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Refuse exhaustive jobs that would visit more objects than this.
    #[arg(long, env = "ZEROSUM_MAX_ENUMERATION", value_parser = parse_big, global = true)]
    pub max_enumeration: Option<BigUint>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Structured,
}

fn parse_big(s: &str) -> Result<BigUint, String> {
    s.trim().parse::<BigUint>().map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Zero-sum-free / complete classification, optionally for l-sums.
    Classify {
        /// Sequence as `p=11; A=1^2,7` or `{"p":11,"elements":[[1,2],[7,1]]}`.
        #[arg(long)]
        input: String,
        /// l values to classify (comma separated).
        #[arg(short = 'l', long = "l", value_delimiter = ',')]
        l: Vec<u64>,
    },
    /// The sumset, its longest progression and an optional K-net check.
    Sumset {
        #[arg(long)]
        input: String,
        /// Restrict to sums of exactly l elements.
        #[arg(short = 'l', long = "l")]
        l: Option<u64>,
        /// Check whether the sumset is a K-net.
        #[arg(long)]
        knet: Option<u64>,
    },
    /// Search for a small-norm certificate.
    Witness {
        #[arg(long, value_parser = ["1", "2", "3"])]
        theorem: String,
        #[arg(long)]
        input: String,
        /// Largest exceptional part to consider (default |A|).
        #[arg(long)]
        budget: Option<u64>,
        #[arg(short = 'l', long = "l")]
        l: Option<u64>,
        #[arg(long)]
        window: Option<u64>,
        /// Multiplicity bound entering f(p, m) (default m(A)).
        #[arg(short = 'm')]
        m: Option<u64>,
    },
    /// Extremal families and the size threshold n(p).
    Extremal(ExtremalArgs),
    /// Partition counts and exhaustive censuses.
    #[command(subcommand)]
    Count(CountCmd),
    /// Erdős–Ginzburg–Ziv checks.
    #[command(subcommand)]
    Egz(EgzCmd),
    /// Constructive lemmas and seeded probes.
    #[command(subcommand)]
    Lemma(LemmaCmd),
    /// Run the verification battery.
    Verify {
        #[arg(long, value_parser = parse_level, default_value = "quick")]
        level: Level,
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u32>,
    },
}

fn parse_level(s: &str) -> Result<Level, String> {
    s.parse().map_err(|e: zerosum::Error| e.to_string())
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
pub struct ExtremalArgs {
    #[command(subcommand)]
    pub sub: Option<ExtremalCmd>,
    #[arg(long, value_parser = parse_family)]
    pub family: Option<Family>,
    #[arg(short = 'p')]
    pub p: Option<u64>,
    #[arg(short = 'm')]
    pub m: Option<u64>,
    #[arg(short = 'l', long = "l")]
    pub l: Option<u64>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: zerosum::Error| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum ExtremalCmd {
    /// Largest n with 1 + … + (n-1) < p.
    NOfP {
        #[arg(short = 'p')]
        p: u64,
    },
    /// The set {-2, 1, 3, …, n(p)} and whether p is the special prime.
    Zerofree3 {
        #[arg(short = 'p')]
        p: u64,
    },
    /// Every n(p)-subset of the nonzero residues, tested.
    Scan {
        #[arg(short = 'p')]
        p: u64,
    },
    /// Dilate a zero-sum-free sequence into the A1 family.
    Embed {
        #[arg(long)]
        input: String,
        #[arg(short = 'm')]
        m: u64,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CountCmd {
    /// Partitions of n with each part used at most m times.
    Partitions {
        #[arg(short = 'n')]
        n: u64,
        /// Omit for unrestricted partitions.
        #[arg(short = 'm')]
        m: Option<u64>,
        /// Print the whole table p_m(0..=n).
        #[arg(long)]
        table: bool,
    },
    /// Count zero-sum-free and incomplete sequences with multiplicities at most m.
    Census {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'm')]
        m: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum EgzCmd {
    /// Every multiset of size 2p - 1 has a zero p-sum.
    Verify {
        #[arg(short = 'p')]
        p: u64,
        /// Evaluate one representative per affine orbit.
        #[arg(long)]
        orbits: bool,
    },
    /// All p-zero-sum-free multisets of size 2p - 2.
    Extremal {
        #[arg(short = 'p')]
        p: u64,
    },
    /// Explicit zero p-sum in {0^[p-k1], 1^[p-k2], a_1, …}.
    Greedy {
        #[arg(long)]
        input: String,
    },
    /// The two most frequent elements of a p-zero-sum-free sequence.
    Structure {
        #[arg(long)]
        input: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum LemmaCmd {
    /// Nonempty block of D residues summing to 0 mod D.
    ZeroSubset {
        #[arg(short = 'D', long = "modulus")]
        d: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
    },
    /// Sub-multiset of D units mod D with a prescribed sum.
    FullSumset {
        #[arg(short = 'D', long = "modulus")]
        d: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
        #[arg(short = 'r')]
        r: u64,
    },
    /// 0 <= a_i < d_i with Σ a_i / d_i ≡ r / lcm (mod 1).
    Crt {
        #[arg(long = "d", value_delimiter = ',', required = true)]
        d_list: Vec<u64>,
        #[arg(short = 'r')]
        r: u64,
    },
    /// Fewest steps Σ a_i with Σ a_i d_i ≡ r (mod D).
    CrtBounded {
        #[arg(long = "d", value_delimiter = ',', required = true)]
        d_list: Vec<u64>,
        #[arg(short = 'D', long = "modulus")]
        modulus: u64,
        #[arg(short = 'r')]
        r: u64,
    },
    /// Least |Σ_⌊|A|/2⌋(A)| / |A|^2 over all subsets of Z_p.
    OlsonProbe {
        #[arg(short = 'p')]
        p: u64,
    },
    /// Longest progressions in l-sumsets of random sets.
    ApProbe {
        #[arg(short = 'p')]
        p: u64,
        #[arg(long)]
        size: u64,
        #[arg(short = 'l', long = "l")]
        l: u64,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = zerosum::lemmas::DEFAULT_SEED)]
        seed: u64,
    },
}
