use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "gct", version, about = "Exact computations around determinant and permanent complexity")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Print the report and its run manifest as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Seed for every random choice a command makes.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads (0 = one per core). Results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Named polynomials and decomposition witnesses.
    #[command(subcommand)]
    Zoo(ZooCmd),
    /// Catalecticant ranks and derived lower bounds.
    #[command(subcommand)]
    Flatten(FlattenCmd),
    /// The map S^d(S^n C^v) -> S^n(S^d C^v).
    #[command(subcommand)]
    Hhh(HhhCmd),
    /// Symmetric group characters and multiplicities.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Signed Latin square counts and pairings.
    #[command(subcommand)]
    Latin(LatinCmd),
    /// Hessians, characteristic polynomials and classical identities.
    #[command(subcommand)]
    Geo(GeoCmd),
}

/// A polynomial argument: a file in the polynomial record format, or
/// `zoo:<family>[:<param>...]`, e.g. `zoo:det:3`.
pub type PolySource = String;

#[derive(Subcommand, Debug)]
pub enum ZooCmd {
    /// List the families and their parameters.
    List,
    /// Build a named polynomial.
    Make {
        family: String,
        params: Vec<usize>,
        /// Write the polynomial record here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a decomposition witness: ryser N, fischer N, benor M K, perm2.
    Witness {
        kind: String,
        params: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a witness expands to the target polynomial.
    Verify { witness: PathBuf, target: PolySource },
}

#[derive(Subcommand, Debug)]
pub enum FlattenCmd {
    /// Rank of the flattening P_{k,d-k} (every k when omitted).
    Rank {
        poly: PolySource,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Border Waring rank lower bound from the largest flattening.
    WaringLb { poly: PolySource },
    /// Border Chow rank lower bound.
    ChowLb { poly: PolySource },
    /// Dimension of the span of x^l times the order-k partials.
    Shifted {
        poly: PolySource,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
    },
}

#[derive(Args, Debug, Clone)]
pub struct HhhShape {
    pub d: usize,
    pub n: usize,
    pub v: usize,
    /// Restrict to one weight space, e.g. `3,3,3`.
    #[arg(long, value_delimiter = ',')]
    pub weight: Option<Vec<u32>>,
    /// Largest basis allowed in one elimination.
    #[arg(long)]
    pub max_basis: Option<usize>,
    /// Largest rows*cols*min(rows,cols) allowed in one elimination.
    #[arg(long)]
    pub max_work: Option<u128>,
}

#[derive(Subcommand, Debug)]
pub enum HhhCmd {
    /// Rank of h_{d,n} on C^v.
    Rank(HhhShape),
    /// Kernel dimension, with kernel vectors tested on random products of linear forms.
    Kernel {
        #[command(flatten)]
        shape: HhhShape,
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Irreducible decomposition of the kernel.
    Character {
        #[command(flatten)]
        shape: HhhShape,
        /// Only these partitions and those dominating them, e.g. `14,7,2,2`.
        #[arg(long = "target")]
        targets: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum RepCmd {
    /// chi_pi at cycle type mu (whole character table row when mu is omitted).
    Char { pi: String, mu: Option<String> },
    /// Kronecker coefficient k_{pi mu nu}.
    Kron { pi: String, mu: String, nu: String },
    /// Symmetric Kronecker coefficient sk^pi_{mu mu}.
    Skron { pi: String, mu: String },
    /// Littlewood-Richardson coefficient c^pi_{mu nu}.
    Lr { pi: String, mu: String, nu: String },
    /// Multiplicity of S_pi in S^d(S^n).
    Pleth { pi: String, d: u32, n: u32 },
    /// Occurrence-obstruction test against the rectangle (d^n).
    Obstruct { pi: String, d: u32, n: u32 },
    /// Necessary conditions for S_pi to be useful against perm_m.
    Useful { pi: String, d: u32, n: u32, m: u32 },
}

#[derive(Subcommand, Debug)]
pub enum LatinCmd {
    /// Exhaustive signed count of Latin squares of order n.
    Count {
        n: usize,
        /// Checkpoint file: resumed from when present, written as work finishes.
        #[arg(long)]
        resume: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// <perm_n^n, det_n^n>, or with --all-vars <prod x_ij, det_n^n>.
    Pairing {
        n: usize,
        #[arg(long)]
        all_vars: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum GeoCmd {
    /// Hessian matrix of a polynomial.
    Hessian { poly: PolySource },
    /// Characteristic-polynomial coefficients cp_0..cp_s of the Hessian.
    Cp {
        poly: PolySource,
        #[arg(long)]
        up_to: usize,
    },
    /// Structure of the characteristic polynomial of H(det_v).
    Sfturbo {
        v: usize,
        /// Subset of cp1,cp3,cp5,sub_top,top (defaults depend on v).
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
    },
    /// det(H(Δ)) = 3888·Δ² for the binary cubic discriminant.
    Discriminant,
    /// det_n(∂) det_n^{s+1} = ((s+n)!/s!) det_n^s.
    Cayley { n: usize, s: usize },
    /// det^p divides cp_{C(v-1,k)+p} of the k-th compound.
    Sylfranke { v: usize, k: usize, p: usize },
    /// Dual variety dimension at a point (sampled for zoo:det and zoo:perm).
    Dualdim {
        poly: PolySource,
        /// Coordinates, e.g. `1,0,-1/2`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Option<Vec<String>>,
    },
    /// Dimension of the Lie algebra of the stabilizer.
    Stab { poly: PolySource },
}
