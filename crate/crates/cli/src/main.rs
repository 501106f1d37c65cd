mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Parser)]
#[command(name = "ncomplex", version, about = "N-complexes of mixed Young symmetry tensor fields, in exact arithmetic")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Seed for randomized probe tensors.
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
    /// Worker threads for block sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
pub struct Complex {
    /// Order N of the complex.
    #[arg(long = "N")]
    pub n: usize,
    /// Dimension D of the base space.
    #[arg(long = "D")]
    pub dim: usize,
}

#[derive(Args, Clone)]
pub struct Input {
    /// JSON input file; `-` or absent reads stdin.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the Schur module of a shape.
    Dim {
        /// Row lengths, e.g. 2,1.
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<usize>,
        #[arg(long = "D")]
        dim: usize,
        /// Also compute the rank of the Young projector.
        #[arg(long)]
        check: bool,
    },
    /// Young-project a tensor onto a shape.
    Project {
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Apply d^k to a field.
    Diff {
        #[arg(long, default_value_t = 1)]
        power: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Apply the divergence-type operator to a contravariant field.
    Delta {
        #[command(flatten)]
        input: Input,
    },
    /// Apply the ε-duality (covariant to contravariant, or back).
    Dual {
        #[command(flatten)]
        input: Input,
        /// Also report the constants relating the divergence to the dual differential.
        #[arg(long)]
        constants: bool,
    },
    /// Block cohomology dimensions.
    Cohomology {
        #[command(flatten)]
        complex: Complex,
        /// Tensor degrees (default: all).
        #[arg(long, value_delimiter = ',')]
        p: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        qmax: usize,
    },
    /// Vanishing of cohomology in the well-filled degrees.
    Poincare {
        #[command(flatten)]
        complex: Complex,
        #[arg(long, default_value_t = 2)]
        nmax: usize,
        #[arg(long, default_value_t = 3)]
        qmax: usize,
    },
    /// Exactness of the hexagon of cohomologies, or of the four-term sequence.
    Hexagon {
        #[command(flatten)]
        complex: Complex,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        l: usize,
        #[arg(long, default_value_t = 3)]
        qmax: usize,
        #[arg(long)]
        four_term: bool,
    },
    /// Rank certificates for the multiform vanishing statements.
    Theorem2 {
        #[command(flatten)]
        complex: Complex,
        /// Slot set K, 1-based.
        #[arg(long = "K", value_delimiter = ',', required = true)]
        k_set: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        qmax: usize,
        /// A single multidegree (default: all).
        #[arg(long, value_delimiter = ',')]
        degrees: Vec<usize>,
        /// Check the relative cohomology of slot i instead.
        #[arg(long)]
        relative: Option<usize>,
    },
    /// The constant relating d to the projected slot differential, per block.
    Green {
        #[command(flatten)]
        complex: Complex,
        #[arg(long, value_delimiter = ',')]
        p: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        qmax: usize,
    },
    /// The linearized gravity complex: hand-written operators against d.
    Spin2 {
        #[arg(long = "D")]
        dim: usize,
        /// Polynomial degree of the random potential.
        #[arg(long, default_value_t = 3)]
        q: usize,
        #[arg(long, default_value_t = 3)]
        qmax: usize,
        /// Vector potential or metric, as field JSON (default: random).
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Exactness of the spin-S gauge sequence.
    #[command(name = "spinS")]
    SpinS {
        #[arg(long = "S")]
        s: usize,
        #[arg(long = "D")]
        dim: usize,
        #[arg(long, default_value_t = 3)]
        qmax: usize,
    },
    /// A Riemann-symmetric potential for a divergence-free symmetric tensor.
    StressPotential {
        #[arg(long = "D", default_value_t = 3)]
        dim: usize,
        /// Polynomial degree of the random input.
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Relation checks for the quotient algebra.
    Algebra {
        #[command(flatten)]
        complex: Complex,
        #[arg(long, default_value_t = 3)]
        cap: usize,
    },
    /// Run the property suite.
    VerifyAll {
        #[arg(long)]
        small: bool,
    },
}

pub enum Failure {
    /// Exit 1.
    Check(String),
    /// Exit 2.
    Usage(String),
}

impl From<ncomplex::Error> for Failure {
    fn from(e: ncomplex::Error) -> Failure {
        match e {
            ncomplex::Error::Inconsistent(_) | ncomplex::Error::NoPreimage(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn dispatch(cli: &Cli) -> Result<output::Output, Failure> {
    use commands as c;
    match &cli.command {
        Command::Dim { shape, dim, check } => c::dim(shape, *dim, *check),
        Command::Project { shape, input } => c::project(shape, input),
        Command::Diff { power, input } => c::diff(*power, input),
        Command::Delta { input } => c::delta(input),
        Command::Dual { input, constants } => c::dual(input, *constants),
        Command::Cohomology { complex, p, qmax } => c::cohomology(*complex, p, *qmax),
        Command::Poincare { complex, nmax, qmax } => c::poincare(*complex, *nmax, *qmax),
        Command::Hexagon { complex, k, l, qmax, four_term } => c::hexagon(*complex, *k, *l, *qmax, *four_term),
        Command::Theorem2 { complex, k_set, m, qmax, degrees, relative } => {
            c::theorem2(*complex, k_set, *m, *qmax, degrees, *relative)
        }
        Command::Green { complex, p, qmax } => c::green(*complex, p, *qmax),
        Command::Spin2 { dim, q, qmax, input } => c::spin2(*dim, *q, *qmax, input.as_deref(), cli.seed),
        Command::SpinS { s, dim, qmax } => c::spin_s(*s, *dim, *qmax),
        Command::StressPotential { dim, q, input } => c::stress_potential(*dim, *q, input.as_deref(), cli.seed),
        Command::Algebra { complex, cap } => c::algebra(*complex, *cap, cli.seed),
        Command::VerifyAll { small } => c::verify_all(*small, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().expect("global pool is set once");
    }
    let result = dispatch(&cli).and_then(|out| out.render(cli.format).map(|s| (s, out.passed)).map_err(Failure::Usage));
    match result {
        Ok((text, passed)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            if passed == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
