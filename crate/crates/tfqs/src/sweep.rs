//! Deterministic parameter sweeps over (variant, beta, lambda, n, c0, t).
//!
//! A sweep enumerates the cross product of its axes in lexicographic order
//! (variants in declaration order, numeric axes ascending, time innermost)
//! and produces one row per point.  Evaluation may fan out across parameter
//! combinations when the `parallel` feature is enabled, but rows are
//! assembled in axis order, so the output is byte-for-byte identical no
//! matter how the work was scheduled.  [`run_sweep_serial`] is always
//! available for comparison and for builds without the thread pool.

use std::io::Write;
use std::path::Path;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

use crate::model::{ab_from_concurrence, ModelParams, QubitCount};
use crate::observables::{excited_probability, reduce, total_probability};
use crate::propagate::{evolve, EvolutionSpec, FractionalOrder, TfseVariant};

pub const DEFAULT_T_MAX: f64 = 20.0;
pub const DEFAULT_T_STEPS: usize = 400;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
    #[error(
        "sweep point variant={variant} l={l} beta={beta} lambda={lambda} n={n} c0={c0} t={t}: {message}"
    )]
    Numerical {
        variant: &'static str,
        l: u8,
        beta: f64,
        lambda: f64,
        n: u32,
        c0: f64,
        t: f64,
        message: String,
    },
}

pub type SweepResult<T> = Result<T, SweepError>;

/// Quantities a sweep can record beyond the fixed CSV columns.
/// `Total` and `Excited` are always materialized (they are the canonical
/// schema); `RhoDiag` appends the four diagonal entries of the reduced
/// density matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Observable {
    Total,
    Excited,
    RhoDiag,
}

impl Observable {
    pub fn name(self) -> &'static str {
        match self {
            Self::Total => "total",
            Self::Excited => "excited",
            Self::RhoDiag => "rho_diag",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "total" => Some(Self::Total),
            "excited" => Some(Self::Excited),
            "rho_diag" => Some(Self::RhoDiag),
            _ => None,
        }
    }
}

/// Which sweep axis distinguishes the curves of a plot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveAxis {
    Beta,
    Lambda,
    PhotonNumber,
    Concurrence,
}

impl CurveAxis {
    pub fn key(self) -> &'static str {
        match self {
            Self::Beta => "beta",
            Self::Lambda => "lambda",
            Self::PhotonNumber => "n",
            Self::Concurrence => "c0",
        }
    }

    pub fn value(self, row: &SweepRow) -> f64 {
        match self {
            Self::Beta => row.beta,
            Self::Lambda => row.lambda,
            Self::PhotonNumber => row.n as f64,
            Self::Concurrence => row.c0,
        }
    }
}

/// Which probability a plot puts on the y axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YField {
    Total,
    Excited,
}

impl YField {
    pub fn label(self) -> &'static str {
        match self {
            Self::Total => "P_total",
            Self::Excited => "P_excited",
        }
    }

    pub fn value(self, row: &SweepRow) -> f64 {
        match self {
            Self::Total => row.p_total,
            Self::Excited => row.p_excited,
        }
    }
}

/// Axes and options of one sweep.  All value lists are sorted and
/// deduplicated before the run, so the stated row order is unambiguous.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub variants: Vec<TfseVariant>,
    pub qubits: QubitCount,
    pub beta_values: Vec<f64>,
    pub lambda_values: Vec<f64>,
    pub n_values: Vec<u32>,
    pub c0_values: Vec<f64>,
    pub t_max: f64,
    pub t_steps: usize,
    pub observables: Vec<Observable>,
}

impl SweepConfig {
    /// A single-combination sweep with the documented defaults:
    /// lambda 0.5, n 50, c0 0.5, t in [0, 20] at 400 steps, total and
    /// excited probabilities recorded.
    pub fn single(variant: TfseVariant, qubits: QubitCount, beta: f64) -> Self {
        Self {
            variants: vec![variant],
            qubits,
            beta_values: vec![beta],
            lambda_values: vec![0.5],
            n_values: vec![50],
            c0_values: vec![0.5],
            t_max: DEFAULT_T_MAX,
            t_steps: DEFAULT_T_STEPS,
            observables: vec![Observable::Total, Observable::Excited],
        }
    }

    /// Validates every axis, then sorts and deduplicates the value lists.
    pub fn canonical(mut self) -> SweepResult<Self> {
        fn check_axis(
            name: &str,
            values: &[f64],
            lo: f64,
            hi: f64,
            domain: &str,
        ) -> SweepResult<()> {
            if values.is_empty() {
                return Err(SweepError::InvalidConfig(format!("{name} has no values")));
            }
            for &v in values {
                if !v.is_finite() || v < lo || v > hi {
                    return Err(SweepError::InvalidConfig(format!(
                        "{name} value {v} outside {domain}"
                    )));
                }
            }
            Ok(())
        }
        if self.variants.is_empty() {
            return Err(SweepError::InvalidConfig("no variants selected".into()));
        }
        check_axis("beta", &self.beta_values, f64::MIN_POSITIVE, 1.0, "(0, 1]")?;
        check_axis("lambda", &self.lambda_values, 0.0, 1.0, "[0, 1]")?;
        check_axis("c0", &self.c0_values, 0.0, 1.0, "[0, 1]")?;
        if self.n_values.is_empty() {
            return Err(SweepError::InvalidConfig("n has no values".into()));
        }
        if !self.t_max.is_finite() || self.t_max <= 0.0 {
            return Err(SweepError::InvalidConfig(format!(
                "t_max must be positive, got {}",
                self.t_max
            )));
        }
        if self.t_steps < 2 {
            return Err(SweepError::InvalidConfig(format!(
                "t_steps must be at least 2, got {}",
                self.t_steps
            )));
        }
        if self.observables.is_empty() {
            return Err(SweepError::InvalidConfig("no observables selected".into()));
        }
        self.variants.sort();
        self.variants.dedup();
        for values in [&mut self.beta_values, &mut self.lambda_values, &mut self.c0_values] {
            values.sort_by(|a, b| a.partial_cmp(b).expect("validated finite"));
            values.dedup();
        }
        self.n_values.sort_unstable();
        self.n_values.dedup();
        self.observables.sort();
        self.observables.dedup();
        Ok(self)
    }

    /// Rows a canonical run will produce:
    /// |variants| * |beta| * |lambda| * |n| * |c0| * t_steps.
    pub fn expected_rows(&self) -> usize {
        self.variants.len()
            * self.beta_values.len()
            * self.lambda_values.len()
            * self.n_values.len()
            * self.c0_values.len()
            * self.t_steps
    }

    /// The inclusive time grid t_i = i * t_max / (t_steps - 1).
    pub fn time_grid(&self) -> Vec<f64> {
        let last = self.t_steps.saturating_sub(1).max(1) as f64;
        (0..self.t_steps).map(|i| self.t_max * (i as f64) / last).collect()
    }

    pub fn wants(&self, observable: Observable) -> bool {
        self.observables.contains(&observable)
    }
}

/// One sweep point.  `rho_diag` is present when requested; the one-qubit
/// case fills the two unused slots with zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub variant: TfseVariant,
    pub l: u8,
    pub beta: f64,
    pub lambda: f64,
    pub n: u32,
    pub c0: f64,
    pub t: f64,
    pub p_total: f64,
    pub p_excited: f64,
    pub rho_diag: Option<[f64; 4]>,
}

/// The assembled result table, in canonical row order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    has_rho_diag: bool,
    rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn rows(&self) -> &[SweepRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn header(&self) -> &'static str {
        if self.has_rho_diag {
            "variant,l,beta,lambda,n,c0,t,p_total,p_excited,rho11,rho22,rho33,rho44"
        } else {
            "variant,l,beta,lambda,n,c0,t,p_total,p_excited"
        }
    }

    #[cfg(test)]
    pub(crate) fn from_rows_for_tests(rows: Vec<SweepRow>) -> Self {
        let has_rho_diag = rows.iter().any(|r| r.rho_diag.is_some());
        SweepTable { has_rho_diag, rows }
    }

    /// Renders the whole table as CSV: canonical header, one line per row,
    /// every float printed with 12 significant digits, newline-terminated.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::with_capacity(80 * (self.rows.len() + 1));
        out.push_str(self.header());
        out.push('\n');
        for row in &self.rows {
            out.push_str(row.variant.cli_name());
            out.push(',');
            out.push_str(&row.l.to_string());
            for v in [row.beta, row.lambda] {
                out.push(',');
                out.push_str(&fmt_field(v));
            }
            out.push(',');
            out.push_str(&row.n.to_string());
            for v in [row.c0, row.t, row.p_total, row.p_excited] {
                out.push(',');
                out.push_str(&fmt_field(v));
            }
            if self.has_rho_diag {
                for v in row.rho_diag.expect("rho_diag rows in a rho_diag table") {
                    out.push(',');
                    out.push_str(&fmt_field(v));
                }
            }
            out.push('\n');
        }
        out
    }
}

fn fmt_field(v: f64) -> String {
    format!("{v:.11e}")
}

/// Writes the table to `path` as CSV (see [`SweepTable::to_csv_string`]).
pub fn write_csv(table: &SweepTable, path: &Path) -> std::io::Result<()> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(table.to_csv_string().as_bytes())
}

#[derive(Debug, Clone, Copy)]
struct Combo {
    variant: TfseVariant,
    beta: f64,
    lambda: f64,
    n: u32,
    c0: f64,
}

fn combos(config: &SweepConfig) -> Vec<Combo> {
    let mut out = Vec::with_capacity(config.expected_rows() / config.t_steps);
    for &variant in &config.variants {
        for &beta in &config.beta_values {
            for &lambda in &config.lambda_values {
                for &n in &config.n_values {
                    for &c0 in &config.c0_values {
                        out.push(Combo { variant, beta, lambda, n, c0 });
                    }
                }
            }
        }
    }
    out
}

fn combo_rows(config: &SweepConfig, combo: Combo, ts: &[f64]) -> SweepResult<Vec<SweepRow>> {
    let fail = |t: f64, message: String| SweepError::Numerical {
        variant: combo.variant.cli_name(),
        l: config.qubits.count() as u8,
        beta: combo.beta,
        lambda: combo.lambda,
        n: combo.n,
        c0: combo.c0,
        t,
        message,
    };
    let prepare = |message: String| fail(0.0, message);

    let params = ModelParams::new(combo.lambda, combo.n, config.qubits)
        .map_err(|e| prepare(e.to_string()))?;
    let init = ab_from_concurrence(combo.c0).map_err(|e| prepare(e.to_string()))?;
    let beta = FractionalOrder::new(combo.beta).map_err(|e| prepare(e.to_string()))?;
    let spec = EvolutionSpec::for_model(combo.variant, beta, &params, &init)
        .map_err(|e| prepare(e.to_string()))?;
    let want_diag = config.wants(Observable::RhoDiag);

    let mut rows = Vec::with_capacity(ts.len());
    for &t in ts {
        let psi = evolve(&spec, t).map_err(|e| fail(t, e.to_string()))?;
        let rho = reduce(&psi).map_err(|e| fail(t, e.to_string()))?;
        let p_total = total_probability(&rho);
        let p_excited = excited_probability(&rho).map_err(|e| fail(t, e.to_string()))?;
        let rho_diag = want_diag.then(|| {
            let mut diag = [0.0; 4];
            for i in 0..rho.dim() {
                diag[i] = rho.entry(i, i).re;
            }
            diag
        });
        rows.push(SweepRow {
            variant: combo.variant,
            l: config.qubits.count() as u8,
            beta: combo.beta,
            lambda: combo.lambda,
            n: combo.n,
            c0: combo.c0,
            t,
            p_total,
            p_excited,
            rho_diag,
        });
    }
    Ok(rows)
}

fn assemble(config: &SweepConfig, chunks: Vec<Vec<SweepRow>>) -> SweepTable {
    let rows: Vec<SweepRow> = chunks.into_iter().flatten().collect();
    debug_assert_eq!(rows.len(), config.expected_rows());
    SweepTable { has_rho_diag: config.wants(Observable::RhoDiag), rows }
}

/// Runs the sweep, fanning parameter combinations out across the thread
/// pool.  Row order and values are identical to [`run_sweep_serial`].
#[cfg(feature = "parallel")]
pub fn run_sweep_parallel(config: &SweepConfig) -> SweepResult<SweepTable> {
    let config = config.clone().canonical()?;
    let ts = config.time_grid();
    let chunks = combos(&config)
        .into_par_iter()
        .map(|combo| combo_rows(&config, combo, &ts))
        .collect::<SweepResult<Vec<_>>>()?;
    Ok(assemble(&config, chunks))
}

/// Runs the sweep on the calling thread.
pub fn run_sweep_serial(config: &SweepConfig) -> SweepResult<SweepTable> {
    let config = config.clone().canonical()?;
    let ts = config.time_grid();
    let chunks = combos(&config)
        .into_iter()
        .map(|combo| combo_rows(&config, combo, &ts))
        .collect::<SweepResult<Vec<_>>>()?;
    Ok(assemble(&config, chunks))
}

/// Runs the sweep with the best strategy compiled in: parallel when the
/// `parallel` feature is enabled, serial otherwise.
pub fn run_sweep(config: &SweepConfig) -> SweepResult<SweepTable> {
    #[cfg(feature = "parallel")]
    {
        run_sweep_parallel(config)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_sweep_serial(config)
    }
}

/// One canned reproduction run: a sweep plus how to plot it.
#[derive(Debug, Clone, PartialEq)]
pub struct PresetRun {
    pub label: String,
    pub config: SweepConfig,
    pub curves: CurveAxis,
    pub y: YField,
}

/// The thirteen canned parameter studies, `fig1` through `fig13`.  Each
/// expands to one sweep per qubit count it covers.  Time ranges are not
/// part of the study definitions; every preset uses the default
/// t in [0, 20] with 400 steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FigurePreset {
    id: u8,
}

const CAPUTO_TRIO: [TfseVariant; 3] =
    [TfseVariant::NaberI, TfseVariant::NaberII, TfseVariant::NewTfse];

impl FigurePreset {
    pub const COUNT: u8 = 13;

    pub fn all() -> impl Iterator<Item = FigurePreset> {
        (1..=Self::COUNT).map(|id| FigurePreset { id })
    }

    pub fn from_name(name: &str) -> Option<Self> {
        let id: u8 = name.strip_prefix("fig")?.parse().ok()?;
        (1..=Self::COUNT).contains(&id).then_some(FigurePreset { id })
    }

    pub fn name(self) -> String {
        format!("fig{}", self.id)
    }

    /// The sweeps this preset expands to, one per qubit count.
    pub fn runs(self) -> Vec<PresetRun> {
        let all = TfseVariant::ALL.to_vec();
        let trio = CAPUTO_TRIO.to_vec();
        let xgf = vec![TfseVariant::Xgf];
        // variants, qubit counts, betas, lambdas, ns, c0s, y, curve axis
        let (variants, ls, betas, lambdas, ns, c0s, y, curves) = match self.id {
            1 => (trio, vec![1, 2], vec![0.2, 0.6, 1.0], vec![0.5], vec![50], vec![0.5], YField::Total, CurveAxis::Beta),
            2 => (trio, vec![1, 2], vec![0.5], vec![0.0, 0.5, 1.0], vec![50], vec![0.5], YField::Total, CurveAxis::Lambda),
            3 => (trio, vec![1, 2], vec![0.5], vec![0.5], vec![0, 100, 200], vec![0.5], YField::Total, CurveAxis::PhotonNumber),
            4 => (trio, vec![2], vec![0.5], vec![0.5], vec![50], vec![0.0, 0.5, 1.0], YField::Total, CurveAxis::Concurrence),
            5 => (xgf, vec![1, 2], vec![0.1, 0.5, 1.0], vec![0.5], vec![50], vec![0.5], YField::Total, CurveAxis::Beta),
            6 => (xgf, vec![1, 2], vec![0.5], vec![0.0, 0.5, 1.0], vec![50], vec![0.5], YField::Total, CurveAxis::Lambda),
            7 => (xgf, vec![1, 2], vec![0.5], vec![0.5], vec![0, 50, 500], vec![0.5], YField::Total, CurveAxis::PhotonNumber),
            8 => (xgf, vec![2], vec![0.5], vec![0.5], vec![50], vec![0.0, 0.5, 1.0], YField::Total, CurveAxis::Concurrence),
            9 => (all, vec![1, 2], vec![0.1, 0.3, 0.5, 0.7, 0.9, 1.0], vec![0.5], vec![20], vec![0.5], YField::Excited, CurveAxis::Beta),
            10 => (all, vec![1, 2], vec![0.8], vec![0.5], vec![0, 10, 50], vec![0.5], YField::Excited, CurveAxis::PhotonNumber),
            11 => (all, vec![2], vec![0.9], vec![0.5], vec![50], vec![0.2, 0.6, 1.0], YField::Excited, CurveAxis::Concurrence),
            12 => (all, vec![1, 2], vec![0.8], vec![0.0, 0.05, 0.1, 0.2, 0.6, 1.0], vec![40], vec![0.5], YField::Excited, CurveAxis::Lambda),
            // the zero-coupling study names the cases n = 0, 10, 50 and
            // beta = 0.1, 0.5, 1 without pinning every pairing, so the
            // preset sweeps the full cross product, including a c0 grid
            13 => (all, vec![1, 2], vec![0.1, 0.5, 1.0], vec![0.0], vec![0, 10, 50], vec![0.0, 0.25, 0.5, 0.75, 1.0], YField::Excited, CurveAxis::Concurrence),
            _ => unreachable!("constructors only produce ids 1..=13"),
        };
        ls.into_iter()
            .map(|l| PresetRun {
                label: format!("{}_l{l}", self.name()),
                config: SweepConfig {
                    variants: variants.clone(),
                    qubits: QubitCount::from_u8(l).expect("preset qubit counts are 1 or 2"),
                    beta_values: betas.clone(),
                    lambda_values: lambdas.clone(),
                    n_values: ns.clone(),
                    c0_values: c0s.clone(),
                    t_max: DEFAULT_T_MAX,
                    t_steps: DEFAULT_T_STEPS,
                    observables: vec![Observable::Total, Observable::Excited],
                },
                curves,
                y,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn small_config() -> SweepConfig {
        SweepConfig {
            variants: vec![TfseVariant::NewTfse, TfseVariant::NaberI, TfseVariant::NaberI],
            qubits: QubitCount::One,
            beta_values: vec![0.7, 0.3],
            lambda_values: vec![0.5],
            n_values: vec![1],
            c0_values: vec![0.5],
            t_max: 3.0,
            t_steps: 4,
            observables: vec![Observable::Total, Observable::Excited],
        }
    }

    #[test]
    fn canonicalization_sorts_and_dedups() {
        let cfg = small_config().canonical().unwrap();
        assert_eq!(cfg.variants, [TfseVariant::NaberI, TfseVariant::NewTfse]);
        assert_eq!(cfg.beta_values, [0.3, 0.7]);
        assert_eq!(cfg.expected_rows(), 2 * 2 * 4);
        assert_eq!(cfg.time_grid(), [0.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut bad = small_config();
        bad.beta_values = vec![1.5];
        assert!(matches!(bad.canonical(), Err(SweepError::InvalidConfig(_))));

        let mut bad = small_config();
        bad.lambda_values = vec![-0.2];
        assert!(bad.canonical().is_err());

        let mut bad = small_config();
        bad.c0_values = vec![1.01];
        assert!(bad.canonical().is_err());

        let mut bad = small_config();
        bad.t_steps = 1;
        assert!(bad.canonical().is_err());

        let mut bad = small_config();
        bad.variants.clear();
        assert!(bad.canonical().is_err());

        let mut bad = small_config();
        bad.t_max = f64::NAN;
        assert!(bad.canonical().is_err());
    }

    #[test]
    fn rows_follow_the_canonical_order() {
        let table = run_sweep(&small_config()).unwrap();
        assert_eq!(table.len(), 16);
        let keys: Vec<(TfseVariant, f64, f64)> =
            table.rows().iter().map(|r| (r.variant, r.beta, r.t)).collect();
        let mut sorted = keys.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(keys, sorted);
        assert_eq!(table.rows()[0].t, 0.0);
        assert_eq!(table.rows()[3].t, 3.0);
        assert_eq!(table.rows()[0].variant, TfseVariant::NaberI);
        assert_eq!(table.rows()[15].variant, TfseVariant::NewTfse);
    }

    #[test]
    fn serial_and_default_strategies_match_exactly() {
        let cfg = small_config();
        let a = run_sweep(&cfg).unwrap();
        let b = run_sweep_serial(&cfg).unwrap();
        assert_eq!(a.to_csv_string(), b.to_csv_string());
        let c = run_sweep(&cfg).unwrap();
        assert_eq!(a.to_csv_string(), c.to_csv_string());
    }

    #[test]
    fn zero_coupling_rows_are_flat() {
        let mut cfg = small_config();
        cfg.lambda_values = vec![0.0];
        let table = run_sweep(&cfg).unwrap();
        for row in table.rows() {
            assert_relative_eq!(row.p_total, 1.0, epsilon = 1e-12);
            assert_relative_eq!(row.p_excited, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn rabi_node_at_pi() {
        // new law, beta = 1, lambda = 0.5, n = 0: excited probability is
        // cos^2(t/2), zero at t = pi
        let cfg = SweepConfig {
            variants: vec![TfseVariant::NewTfse],
            qubits: QubitCount::One,
            beta_values: vec![1.0],
            lambda_values: vec![0.5],
            n_values: vec![0],
            c0_values: vec![0.5],
            t_max: std::f64::consts::PI,
            t_steps: 2,
            observables: vec![Observable::Total, Observable::Excited],
        };
        let table = run_sweep(&cfg).unwrap();
        assert_eq!(table.len(), 2);
        assert_relative_eq!(table.rows()[0].p_excited, 1.0, epsilon = 1e-12);
        assert!(table.rows()[1].p_excited.abs() <= 1e-12);
    }

    #[test]
    fn csv_shape_and_formatting() {
        let table = run_sweep(&small_config()).unwrap();
        let csv = table.to_csv_string();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "variant,l,beta,lambda,n,c0,t,p_total,p_excited"
        );
        let first = lines.next().unwrap();
        assert_eq!(
            first,
            "naber1,1,3.00000000000e-1,5.00000000000e-1,1,5.00000000000e-1,0.00000000000e0,1.00000000000e0,1.00000000000e0"
        );
        assert_eq!(csv.lines().count(), 17);
        assert!(csv.ends_with('\n'));
    }

    #[test]
    fn header_only_csv_for_an_empty_table() {
        let table = SweepTable { has_rho_diag: false, rows: Vec::new() };
        assert_eq!(table.to_csv_string(), "variant,l,beta,lambda,n,c0,t,p_total,p_excited\n");
    }

    #[test]
    fn density_diagonal_columns_append() {
        let mut cfg = small_config();
        cfg.observables.push(Observable::RhoDiag);
        let table = run_sweep(&cfg).unwrap();
        let csv = table.to_csv_string();
        assert!(csv.starts_with(
            "variant,l,beta,lambda,n,c0,t,p_total,p_excited,rho11,rho22,rho33,rho44\n"
        ));
        // one qubit: the 3rd and 4th slots stay zero, first two sum to the total
        for row in table.rows() {
            let d = row.rho_diag.unwrap();
            assert_eq!(d[2], 0.0);
            assert_eq!(d[3], 0.0);
            assert_relative_eq!(d[0] + d[1], row.p_total, epsilon = 1e-12);
        }
    }

    #[test]
    fn csv_written_to_disk_matches_the_string(){
        let table = run_sweep(&small_config()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_csv(&table, &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), table.to_csv_string());
    }

    #[test]
    fn numerical_failures_carry_the_sweep_point() {
        let cfg = SweepConfig {
            variants: vec![TfseVariant::Xgf],
            qubits: QubitCount::Two,
            beta_values: vec![0.05],
            lambda_values: vec![1.0],
            n_values: vec![400],
            c0_values: vec![0.5],
            t_max: 20.0,
            t_steps: 2,
            observables: vec![Observable::Total],
        };
        match run_sweep(&cfg) {
            Err(SweepError::Numerical { variant, n, t, .. }) => {
                assert_eq!(variant, "xgf");
                assert_eq!(n, 400);
                assert_eq!(t, 20.0);
            }
            other => panic!("expected a located numerical error, got {other:?}"),
        }
    }

    #[test]
    fn preset_names_round_trip() {
        assert_eq!(FigurePreset::all().count(), 13);
        for preset in FigurePreset::all() {
            assert_eq!(FigurePreset::from_name(&preset.name()), Some(preset));
        }
        assert!(FigurePreset::from_name("fig0").is_none());
        assert!(FigurePreset::from_name("fig14").is_none());
        assert!(FigurePreset::from_name("figure1").is_none());
    }

    #[test]
    fn preset_expansion_shapes() {
        let runs = FigurePreset::from_name("fig1").unwrap().runs();
        assert_eq!(runs.len(), 2);
        assert_eq!(runs[0].label, "fig1_l1");
        assert_eq!(runs[1].label, "fig1_l2");
        for run in &runs {
            assert_eq!(run.config.expected_rows(), 3 * 3 * 400);
            assert_eq!(run.y, YField::Total);
            assert_eq!(run.curves, CurveAxis::Beta);
        }

        let runs = FigurePreset::from_name("fig11").unwrap().runs();
        assert_eq!(runs.len(), 1);
        assert_eq!(runs[0].config.qubits, QubitCount::Two);
        assert_eq!(runs[0].y, YField::Excited);

        for preset in FigurePreset::all() {
            for run in preset.runs() {
                run.config.clone().canonical().unwrap();
            }
        }
    }
}
