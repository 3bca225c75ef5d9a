//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "nmix", version, about = "Exact checks on noncommutative Artin motives at desk scale")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Coefficient ring: q, fp:<p> or z.
    #[arg(long, global = true, default_value = "q")]
    pub ring: String,
    /// Maximum number of cubes visited in one degree.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    pub budget: usize,
    /// Abort long enumerations after this many seconds (exit 3).
    #[arg(long, global = true)]
    pub time_limit: Option<u64>,
    /// Worker threads; accepted for compatibility, results never depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Also write the JSON report here.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Suppress progress on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hochschild homology of a finite-dimensional algebra.
    Hh(HhArgs),
    /// Homology of the complex of exact cubes over a product of prime fields.
    Cubes(CubesArgs),
    /// Graded Hom table and checks in an orbit category.
    Orbit(OrbitArgs),
    /// Hopf axioms for the function algebra of a finite group.
    Hopf(HopfArgs),
    /// Double cosets and tensor products of fields.
    Galois(GaloisArgs),
    /// Bar object over a generator set and its H₀ bialgebra.
    Bar(BarArgs),
    /// K-theoretic Hom groups between Artin motives.
    Khom(KhomArgs),
    /// Runs the built-in invariant suite.
    Selftest,
}

#[derive(Debug, Args)]
pub struct HhArgs {
    /// Inline étale algebra, e.g. q:x^2+1 or f4.
    #[arg(long, conflicts_with = "algebra", required_unless_present = "algebra")]
    pub etale: Option<String>,
    /// Algebra file (JSON or TOML).
    #[arg(long)]
    pub algebra: Option<PathBuf>,
    /// Number of degrees reported, starting at 0.
    #[arg(long, default_value_t = 4)]
    pub max_degree: usize,
}

#[derive(Debug, Args)]
pub struct CubesArgs {
    /// Base ring, e.g. f2, f3, f2xf2.
    #[arg(long)]
    pub base: String,
    /// Largest dimension of the vector spaces in the exact category.
    #[arg(long, default_value_t = 2)]
    pub dim_cap: usize,
    /// Highest cube degree enumerated; homology is reported below it.
    #[arg(long, default_value_t = 2)]
    pub max_degree: usize,
    /// Stop the top degree once the homology below it is determined.
    #[arg(long)]
    pub stop_when_exact: bool,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    /// Built-in category: pure or two-object.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub corpus: Option<String>,
    /// Graded category and twist (JSON or TOML).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Twists of the test objects range over -g..=g.
    #[arg(long, default_value_t = 3)]
    pub max_grade: i64,
}

#[derive(Debug, Args)]
pub struct HopfArgs {
    /// Group name (trivial, z<n>, z2xz2, s3).
    #[arg(long, conflicts_with = "group_file", required_unless_present = "group_file")]
    pub group: Option<String>,
    /// Group as a multiplication table or permutation generators.
    #[arg(long)]
    pub group_file: Option<PathBuf>,
    /// Also run the mutation suite.
    #[arg(long)]
    pub mutations: bool,
    /// Normal subgroup (comma-separated elements) for C(G/N) → C(G) → C(N).
    #[arg(long)]
    pub normal: Option<String>,
}

#[derive(Debug, Args)]
pub struct GaloisArgs {
    /// Galois group name (trivial, z<n>, z2xz2, s3).
    #[arg(long, conflicts_with = "group_file")]
    pub group: Option<String>,
    /// Galois group as a multiplication table or permutation generators.
    #[arg(long)]
    pub group_file: Option<PathBuf>,
    /// Elements of H'.
    #[arg(long, requires = "h")]
    pub hp: Option<String>,
    /// Elements of H.
    #[arg(long, requires = "hp")]
    pub h: Option<String>,
    /// Fixed field of H', for the étale route.
    #[arg(long, requires = "field_h")]
    pub field_hp: Option<String>,
    /// Fixed field of H, for the étale route.
    #[arg(long, requires = "field_hp")]
    pub field_h: Option<String>,
    /// Prime power q for F_(q^a) ⊗ F_(q^b).
    #[arg(long, requires = "degrees")]
    pub fq: Option<u64>,
    /// Pairs a,b separated by ';', e.g. "1,1;2,4".
    #[arg(long, requires = "fq")]
    pub degrees: Option<String>,
}

#[derive(Debug, Args)]
pub struct BarArgs {
    /// Built-in generator set: base or gaussian.
    #[arg(long, conflicts_with = "gens", required_unless_present = "gens")]
    pub corpus: Option<String>,
    /// Generator set file (JSON or TOML).
    #[arg(long)]
    pub gens: Option<PathBuf>,
    /// Highest simplicial degree N built.
    #[arg(long, default_value_t = 2)]
    pub truncation: usize,
}

#[derive(Debug, Args)]
pub struct KhomArgs {
    /// Source field, inline étale spec.
    #[arg(long)]
    pub l: String,
    /// Target field, inline étale spec.
    #[arg(long)]
    pub lp: String,
    /// K-theory degree.
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    /// Allow finite coefficients over a finite base.
    #[arg(long)]
    pub relax_characteristic: bool,
}
