use serde::Serialize;
use varorder::linalg::default_group_tol;
use varorder::order::{default_order_tol, FAIL_MARGIN_TOL};
use varorder::structure::qmatrix::TIE_RTOL;
use varorder::structure::{two_point_lower_set, QMatrix};
use varorder::{
    canonical_representative, check_state_order, decide_order, expectation, extract_function, joint_upper_bound,
    maximal_deviation, q_matrix, reconstruct_metric, variance, verify_automorphism, witness_search, AutomorphismSpec,
    Error, FunctionTable, OracleConfig, UnitaryMap, VERSION,
};

use crate::cli::Command;
use crate::error::CliResult;
use crate::io::{self, MatrixOut, StateInput};

pub const POSITIVE: u8 = 0;
pub const NEGATIVE: u8 = 1;
pub const INCONSISTENT: u8 = 3;

/// Oracle verdicts below this gap count as agreeing with `Holds`.
const ORACLE_HOLDS_TOL: f64 = 1e-6;
const STATE_CHECK_TOL: f64 = 1e-9;

pub struct Output {
    pub json: String,
    pub code: u8,
}

fn emit<T: Serialize>(value: &T, code: u8) -> CliResult<Output> {
    Ok(Output {
        json: io::to_json(value),
        code,
    })
}

fn table(f: &FunctionTable) -> Vec<[f64; 2]> {
    f.points().iter().map(|&(x, y)| [x, y]).collect()
}

#[derive(Serialize)]
struct Tolerances {
    order: f64,
    group_b: f64,
}

#[derive(Serialize)]
struct OracleReport {
    density_trials: usize,
    /// Largest `Delta(A) - Delta(B)` among sampled density matrices, when above tolerance.
    density_violation: Option<f64>,
    /// Best gap found by gradient ascent over pure states.
    search_gap: f64,
    /// Gap recomputed at the emitted witness (failing verdicts only).
    witness_gap: Option<f64>,
    agrees: bool,
}

#[derive(Serialize)]
struct VerdictReport {
    holds: bool,
    certificate: Option<Vec<[f64; 2]>>,
    witness: Option<Vec<[f64; 2]>>,
    margin: f64,
    tolerances: Tolerances,
    oracle: Option<OracleReport>,
    version: &'static str,
}

fn check_order(a: &str, b: &str, tol: Option<f64>, trials: usize, seed: u64) -> CliResult<Output> {
    let (a, b) = (io::read_observable(a)?, io::read_observable(b)?);
    let tol = tol.unwrap_or_else(|| default_order_tol(&a, &b));
    let verdict = decide_order(&a, &b, tol)?;

    let oracle = if trials > 0 {
        let states = check_state_order(&a, &b, trials, seed, STATE_CHECK_TOL)?;
        let search = witness_search(
            &a,
            &b,
            &OracleConfig {
                seed,
                ..OracleConfig::default()
            },
        )?;
        let (witness_gap, agrees) = match verdict.witness() {
            None => (None, states.holds && search.value <= ORACLE_HOLDS_TOL),
            Some(w) => {
                let gap = variance(&a, w)? - variance(&b, w)?;
                (Some(gap), gap > FAIL_MARGIN_TOL && search.value > FAIL_MARGIN_TOL)
            }
        };
        Some(OracleReport {
            density_trials: trials,
            density_violation: states.violation.map(|v| v.1),
            search_gap: search.value,
            witness_gap,
            agrees,
        })
    } else {
        None
    };

    let code = match (&oracle, verdict.holds()) {
        (Some(o), _) if !o.agrees => INCONSISTENT,
        (_, true) => POSITIVE,
        (_, false) => NEGATIVE,
    };
    let report = VerdictReport {
        holds: verdict.holds(),
        certificate: verdict.certificate().map(table),
        witness: verdict.witness().map(|w| io::pairs(w.vector())),
        margin: verdict.margin(),
        tolerances: Tolerances {
            order: tol,
            group_b: default_group_tol(&b),
        },
        oracle,
        version: VERSION,
    };
    emit(&report, code)
}

fn extract(a: &str, b: &str, tol: Option<f64>) -> CliResult<Output> {
    let (a, b) = (io::read_observable(a)?, io::read_observable(b)?);
    let tol = tol.unwrap_or_else(|| default_order_tol(&a, &b));
    #[derive(Serialize)]
    struct Extracted {
        holds: bool,
        certificate: Option<Vec<[f64; 2]>>,
        lipschitz_constant: Option<f64>,
        witness: Option<Vec<[f64; 2]>>,
        margin: f64,
    }
    match extract_function(&a, &b, tol) {
        Ok(f) => emit(
            &Extracted {
                holds: true,
                certificate: Some(table(&f)),
                lipschitz_constant: Some(f.lipschitz_constant()),
                witness: None,
                margin: 0.0,
            },
            POSITIVE,
        ),
        Err(Error::OrderDoesNotHold { witness, margin }) => emit(
            &Extracted {
                holds: false,
                certificate: None,
                lipschitz_constant: None,
                witness: Some(io::pairs(witness.vector())),
                margin,
            },
            NEGATIVE,
        ),
        Err(e) => Err(e.into()),
    }
}

fn state_variance(observable: &str, state: &str) -> CliResult<Output> {
    let a = io::read_observable(observable)?;
    #[derive(Serialize)]
    struct Moments {
        expectation: f64,
        variance: f64,
    }
    let m = match io::read_state(state)? {
        StateInput::Pure(x) => Moments {
            expectation: expectation(&a, &x)?,
            variance: variance(&a, &x)?,
        },
        StateInput::Mixed(rho) => Moments {
            expectation: expectation(&a, &rho)?,
            variance: variance(&a, &rho)?,
        },
    };
    emit(&m, POSITIVE)
}

fn upper_bound(a: &str, b: &str, tol: f64) -> CliResult<Output> {
    let (a, b) = (io::read_observable(a)?, io::read_observable(b)?);
    #[derive(Serialize)]
    struct Bound {
        exists: bool,
        bound: Option<MatrixOut>,
        tau: Option<f64>,
        beta: Option<f64>,
        commutator_norm: Option<f64>,
    }
    match joint_upper_bound(&a, &b, tol) {
        Ok(ub) => emit(
            &Bound {
                exists: true,
                bound: Some(MatrixOut::new(ub.bound.matrix())),
                tau: Some(ub.tau),
                beta: Some(ub.beta),
                commutator_norm: None,
            },
            POSITIVE,
        ),
        Err(Error::NotCommuting { norm }) => emit(
            &Bound {
                exists: false,
                bound: None,
                tau: None,
                beta: None,
                commutator_norm: Some(norm),
            },
            NEGATIVE,
        ),
        Err(e) => Err(e.into()),
    }
}

fn lower_set(a: &str) -> CliResult<Output> {
    let a = io::read_observable(a)?;
    #[derive(Serialize)]
    struct Family {
        subset: Vec<f64>,
        threshold: f64,
        projector: MatrixOut,
    }
    let families = two_point_lower_set(&a)?;
    let out: Vec<Family> = families
        .iter()
        .map(|f| Family {
            subset: f.subset.clone(),
            threshold: f.threshold,
            projector: MatrixOut::new(&f.projector),
        })
        .collect();
    #[derive(Serialize)]
    struct LowerSet {
        families: Vec<Family>,
    }
    emit(&LowerSet { families: out }, POSITIVE)
}

#[derive(Serialize)]
struct QReport {
    spectrum: Vec<f64>,
    q: Vec<Vec<f64>>,
    /// `[j, k, q_jk]` for `j < k`.
    pairs: Vec<(usize, usize, f64)>,
    max: f64,
    max_pairs: Vec<(usize, usize)>,
}

fn q_report(spectrum: Vec<f64>, q: &QMatrix) -> QReport {
    let n = q.n();
    let pairs = (0..n)
        .flat_map(|j| ((j + 1)..n).map(move |k| (j, k)))
        .map(|(j, k)| (j, k, q.get(j, k)))
        .collect();
    let (max, max_pairs) = q.max_pairs(TIE_RTOL);
    QReport {
        spectrum,
        q: q.rows(),
        pairs,
        max,
        max_pairs,
    }
}

fn q_matrix_cmd(spectrum: &str) -> CliResult<Output> {
    let s = io::read_spectrum(spectrum)?;
    let q = q_matrix(&s)?;
    emit(&q_report(s, &q), POSITIVE)
}

fn reconstruct(path: &str) -> CliResult<Output> {
    let rows = io::read_json::<io::QFile>(path)?.into_rows();
    let q = QMatrix::new(rows)?;
    let r = reconstruct_metric(&q)?;
    #[derive(Serialize)]
    struct Metric {
        distances: Vec<Vec<f64>>,
        spectrum: Vec<f64>,
        endpoints: (usize, usize),
        max_count: usize,
    }
    emit(
        &Metric {
            distances: r.distances,
            spectrum: r.spectrum,
            endpoints: r.endpoints,
            max_count: r.max_count,
        },
        POSITIVE,
    )
}

fn automorphism(
    alpha: f64,
    unitary: Option<&str>,
    antiunitary: bool,
    trials: usize,
    dim: Option<usize>,
    seed: u64,
) -> CliResult<Output> {
    let u = match unitary {
        Some(path) => io::read_unitary(path, antiunitary)?,
        None => {
            let n = dim.unwrap_or(3);
            if antiunitary {
                UnitaryMap::new(UnitaryMap::identity(n).matrix().clone(), true)?
            } else {
                UnitaryMap::identity(n)
            }
        }
    };
    let dim = dim.unwrap_or(u.dim());
    let spec = AutomorphismSpec::new(alpha, u)?;
    let r = verify_automorphism(&spec, trials, dim, seed)?;
    #[derive(Serialize)]
    struct Counter {
        trial: usize,
        lower: MatrixOut,
        upper: MatrixOut,
        before: bool,
        after: bool,
    }
    #[derive(Serialize)]
    struct Report {
        passed: bool,
        trials: usize,
        related_pairs: usize,
        counterexample: Option<Counter>,
    }
    let report = Report {
        passed: r.passed,
        trials: r.trials,
        related_pairs: r.related_pairs,
        counterexample: r.counterexample.map(|c| Counter {
            trial: c.trial,
            lower: MatrixOut::new(c.lower.matrix()),
            upper: MatrixOut::new(c.upper.matrix()),
            before: c.before,
            after: c.after,
        }),
    };
    emit(&report, if report.passed { POSITIVE } else { NEGATIVE })
}

fn canonical(a: &str) -> CliResult<Output> {
    let a = io::read_observable(a)?;
    emit(&MatrixOut::new(canonical_representative(&a)?.matrix()), POSITIVE)
}

fn max_deviation(a: &str) -> CliResult<Output> {
    let a = io::read_observable(a)?;
    #[derive(Serialize)]
    struct Deviation {
        max_deviation: f64,
        diameter: f64,
    }
    emit(
        &Deviation {
            max_deviation: maximal_deviation(&a)?,
            diameter: a.spectral()?.diameter(),
        },
        POSITIVE,
    )
}

pub fn dispatch(command: &Command) -> CliResult<Output> {
    match command {
        Command::CheckOrder {
            a,
            b,
            tol,
            oracle_trials,
            seed,
        } => check_order(a, b, *tol, *oracle_trials, *seed),
        Command::ExtractFunction { a, b, tol } => extract(a, b, *tol),
        Command::Variance { observable, state } => state_variance(observable, state),
        Command::JointUpperBound { a, b, tol } => upper_bound(a, b, *tol),
        Command::LowerSet { a } => lower_set(a),
        Command::QMatrix { spectrum } => q_matrix_cmd(spectrum),
        Command::ReconstructMetric { q } => reconstruct(q),
        Command::VerifyAutomorphism {
            alpha,
            unitary,
            antiunitary,
            trials,
            dim,
            seed,
        } => automorphism(*alpha, unitary.as_deref(), *antiunitary, *trials, *dim, *seed),
        Command::Canonical { a } => canonical(a),
        Command::MaxDeviation { a } => max_deviation(a),
    }
}
