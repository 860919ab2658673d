use clap::{Parser, Subcommand};

/// Variance order on Hermitian matrices. Matrices are JSON files of the form
/// {"dim": n, "matrix": [[[re, im], ...], ...]}; results are printed as JSON.
///
/// Exit codes: 0 positive verdict, 1 negative verdict, 2 input error,
/// 3 internal inconsistency.
#[derive(Debug, Parser)]
#[command(name = "varorder", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide A ⪯ B; prints the certificate f with A = f(B) or a witness state.
    CheckOrder {
        a: String,
        b: String,
        /// Tolerance for commutation, scalarity and Lipschitz checks
        /// [default: 1e-8 * max(1, |A|_F, |B|_F)]
        #[arg(long)]
        tol: Option<f64>,
        /// Random density matrices sampled to cross-check the verdict (0 disables
        /// the cross-check)
        #[arg(long, default_value_t = 0)]
        oracle_trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The 1-Lipschitz f with A = f(B), tabulated on the spectrum of B.
    ExtractFunction {
        a: String,
        b: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Expectation and variance of an observable in a state file
    /// ({"dim": n, "vector": [...]} or {"dim": n, "density": [[...]]}).
    Variance { observable: String, state: String },
    /// A common upper bound C with A ⪯ C and B ⪯ C for commuting A, B.
    JointUpperBound {
        a: String,
        b: String,
        /// Commutator norm above which A and B count as non-commuting
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// The families t E_A(ω), 0 <= t <= t_ω, of two-point observables below A.
    LowerSet { a: String },
    /// The q-matrix of a spectrum, given inline ("0,1,3,7") or as a JSON array file.
    QMatrix { spectrum: String },
    /// Recovers pairwise spectral distances from a q-matrix file.
    ReconstructMetric { q: String },
    /// Checks that A -> alpha U A U* preserves the order on random pairs.
    VerifyAutomorphism {
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Unitary matrix file [default: identity]
        #[arg(long)]
        unitary: Option<String>,
        /// Treat U as antiunitary (entries are conjugated before conjugating by U)
        #[arg(long)]
        antiunitary: bool,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Dimension of the sampled pairs [default: that of U, or 3]
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The canonical member of the class {±A + cI}, with smallest eigenvalue 0.
    Canonical { a: String },
    /// The largest standard deviation of A over pure states (half the spectral diameter).
    MaxDeviation { a: String },
}
