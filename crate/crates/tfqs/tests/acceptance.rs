//! The acceptance gate: eight release criteria, one test each.  Every test
//! prints a single summary line (visible under `--nocapture`) and enforces
//! its runtime budget, so this file doubles as the go/no-go checklist.

use std::time::{Duration, Instant};

use num_complex::Complex64;

use tfqs::mlf::ml;
use tfqs::model::{ab_from_concurrence, initial_state, InitialState, ModelParams, QubitCount};
use tfqs::observables::{excited_probability, reduce, strict_local_maxima, total_probability};
use tfqs::propagate::{closed_form_amplitudes, evolve, EvolutionSpec, FractionalOrder, TfseVariant};
use tfqs::sweep::{run_sweep, FigurePreset, Observable, SweepConfig, SweepTable};

fn budget(name: &str, started: Instant, limit: Duration) {
    let used = started.elapsed();
    assert!(
        used <= limit,
        "{name}: runtime {used:.2?} exceeds the {limit:.2?} budget"
    );
}

fn base_config() -> SweepConfig {
    SweepConfig {
        variants: vec![TfseVariant::NewTfse],
        qubits: QubitCount::One,
        beta_values: vec![0.5],
        lambda_values: vec![0.5],
        n_values: vec![50],
        c0_values: vec![0.5],
        t_max: 20.0,
        t_steps: 400,
        observables: vec![Observable::Total, Observable::Excited],
    }
}

fn sweep(config: SweepConfig) -> SweepTable {
    run_sweep(&config).expect("sweep succeeds")
}

#[test]
fn criterion_1_mittag_leffler_grid_accuracy() {
    let started = Instant::now();
    let grid = include_str!("data/mlf_reference_grid.txt");
    let mut points = 0usize;
    let mut worst = 0.0f64;
    let mut worst_at = (0.0, Complex64::new(0.0, 0.0));
    for line in grid.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<f64> = line
            .split_whitespace()
            .map(|v| v.parse().expect("numeric grid field"))
            .collect();
        assert_eq!(f.len(), 5, "malformed grid row: {line}");
        let (beta, z) = (f[0], Complex64::new(f[1], f[2]));
        let want = Complex64::new(f[3], f[4]);
        let got = ml(beta, z, 1e-12).expect("grid points are representable");
        let rel = (got - want).norm() / want.norm();
        if rel > worst {
            worst = rel;
            worst_at = (beta, z);
        }
        points += 1;
    }
    assert!(points >= 200, "only {points} grid points");
    assert!(
        worst <= 1e-10,
        "worst relative error {worst:.3e} at beta={} z={}",
        worst_at.0,
        worst_at.1
    );
    budget("criterion 1", started, Duration::from_secs(10));
    println!(
        "criterion 1 (Mittag-Leffler grid): PASS, {points} points, worst rel err {worst:.2e}, {:.2?}",
        started.elapsed()
    );
}

#[test]
fn criterion_2_order_one_reduces_to_rabi_oscillations() {
    let started = Instant::now();
    let mut worst = 0.0f64;
    for (lambda, n) in [(0.5, 0u32), (0.5, 50), (1.0, 20)] {
        let table = sweep(SweepConfig {
            variants: TfseVariant::ALL.to_vec(),
            beta_values: vec![1.0],
            lambda_values: vec![lambda],
            n_values: vec![n],
            ..base_config()
        });
        assert_eq!(table.len(), 4 * 400);
        for row in table.rows() {
            let omega = lambda * ((f64::from(n) + 1.0).sqrt());
            let want = (omega * row.t).cos().powi(2);
            worst = worst.max((row.p_excited - want).abs());
        }
    }
    assert!(worst <= 1e-8, "worst deviation {worst:.3e}");
    budget("criterion 2", started, Duration::from_secs(5));
    println!(
        "criterion 2 (order-one Rabi reduction): PASS, 4800 points, worst dev {worst:.2e}, {:.2?}",
        started.elapsed()
    );
}

#[test]
fn criterion_3_conformable_law_conserves_probability() {
    let started = Instant::now();
    let betas: Vec<f64> = (1..=10).map(|k| f64::from(k) / 10.0).collect();
    let mut worst = 0.0f64;
    let mut rows = 0usize;
    for config in [
        SweepConfig { beta_values: betas.clone(), ..base_config() },
        SweepConfig {
            beta_values: betas,
            qubits: QubitCount::Two,
            c0_values: vec![0.0, 0.5, 1.0],
            ..base_config()
        },
    ] {
        let table = sweep(config);
        rows += table.len();
        for row in table.rows() {
            worst = worst.max((row.p_total - 1.0).abs());
        }
    }
    assert_eq!(rows, 10 * 400 + 10 * 3 * 400);
    assert!(worst <= 1e-9, "worst |P_total - 1| = {worst:.3e}");
    budget("criterion 3", started, Duration::from_secs(30));
    println!(
        "criterion 3 (conformable conservation): PASS, {rows} rows, worst |P-1| {worst:.2e}, {:.2?}",
        started.elapsed()
    );
}

#[test]
fn criterion_4_one_sided_bounds_and_monotone_growth() {
    let started = Instant::now();
    let mut naber1_min = f64::INFINITY;
    let mut naber2_max = f64::NEG_INFINITY;
    for run in FigurePreset::from_name("fig1").unwrap().runs() {
        let table = sweep(run.config);
        for row in table.rows() {
            match row.variant {
                TfseVariant::NaberI => naber1_min = naber1_min.min(row.p_total),
                TfseVariant::NaberII => naber2_max = naber2_max.max(row.p_total),
                _ => {}
            }
        }
    }
    assert!(naber1_min >= 1.0 - 1e-9, "NaberI min P_total = {naber1_min}");
    assert!(naber2_max <= 1.0 + 1e-9, "NaberII max P_total = {naber2_max}");

    // the growth law: along every curve of its own preset grid the total
    // probability never decreases
    let mut checked = 0usize;
    for run in FigurePreset::from_name("fig5").unwrap().runs() {
        let table = sweep(run.config);
        for pair in table.rows().windows(2) {
            if pair[0].beta == pair[1].beta && pair[1].t > pair[0].t {
                assert!(
                    pair[1].p_total >= pair[0].p_total - 1e-12 * pair[0].p_total,
                    "XGF dip at beta={} t={}: {} -> {}",
                    pair[1].beta,
                    pair[1].t,
                    pair[0].p_total,
                    pair[1].p_total
                );
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 2 * 3 * 399);
    budget("criterion 4", started, Duration::from_secs(60));
    println!(
        "criterion 4 (one-sided bounds, monotone growth): PASS, NaberI min {naber1_min:.12}, \
         NaberII max {naber2_max:.12}, {checked} XGF steps, {:.2?}",
        started.elapsed()
    );
}

#[test]
fn criterion_5_spectral_route_matches_the_printed_forms() {
    let started = Instant::now();
    // moderate coupling keeps every amplitude O(10), so the absolute bound
    // stays meaningful for the growing laws out to t = 10; a second pass at
    // strong coupling checks the same agreement relative to the state scale
    let mut worst_abs = 0.0f64;
    let mut worst_rel = 0.0f64;
    let mut points = 0usize;
    for variant in TfseVariant::ALL {
        for qubits in [QubitCount::One, QubitCount::Two] {
            for beta in [0.2, 0.5, 0.8] {
                for (lambda, n, absolute) in [(0.2, 2, true), (0.5, 30, false)] {
                    let params = ModelParams::new(lambda, n, qubits).unwrap();
                    let init = InitialState::new(0.6, 0.8).unwrap();
                    let order = FractionalOrder::new(beta).unwrap();
                    let spec =
                        EvolutionSpec::for_model(variant, order, &params, &init).unwrap();
                    for k in 0..50 {
                        let t = 10.0 * f64::from(k) / 49.0;
                        let a = evolve(&spec, t).unwrap();
                        let b =
                            closed_form_amplitudes(variant, &params, &init, order, t).unwrap();
                        assert_eq!(a.basis(), b.basis());
                        let scale = a.amps().iter().map(|x| x.norm()).fold(1.0, f64::max);
                        for (x, y) in a.amps().iter().zip(b.amps()) {
                            let dev = (x - y).norm();
                            if absolute {
                                worst_abs = worst_abs.max(dev);
                            } else {
                                worst_rel = worst_rel.max(dev / scale);
                            }
                        }
                        if absolute {
                            points += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(points >= 1000, "only {points} comparison points");
    assert!(worst_abs <= 1e-9, "worst amplitude deviation {worst_abs:.3e}");
    assert!(worst_rel <= 1e-9, "worst relative deviation {worst_rel:.3e}");
    budget("criterion 5", started, Duration::from_secs(60));
    println!(
        "criterion 5 (dual-route agreement): PASS, {points} states, worst abs dev \
         {worst_abs:.2e}, worst rel dev {worst_rel:.2e}, {:.2?}",
        started.elapsed()
    );
}

#[test]
fn criterion_6_zero_coupling_freezes_the_populations() {
    let started = Instant::now();
    let betas: Vec<f64> = (1..=10).map(|k| f64::from(k) / 10.0).collect();
    let mut worst = 0.0f64;
    for variant in TfseVariant::ALL {
        for &beta in &betas {
            for (qubits, c0) in [
                (QubitCount::One, 0.5),
                (QubitCount::Two, 0.0),
                (QubitCount::Two, 0.5),
                (QubitCount::Two, 1.0),
            ] {
                let params = ModelParams::new(0.0, 50, qubits).unwrap();
                let init = ab_from_concurrence(c0).unwrap();
                let order = FractionalOrder::new(beta).unwrap();
                let spec = EvolutionSpec::for_model(variant, order, &params, &init).unwrap();
                for t in [0.0, 5.0, 20.0] {
                    let state = evolve(&spec, t).unwrap();
                    let rho = reduce(&state).unwrap();
                    worst = worst.max((total_probability(&rho) - 1.0).abs());
                    let p_top = excited_probability(&rho).unwrap();
                    let want = match qubits {
                        QubitCount::One => 1.0,
                        QubitCount::Two => init.b() * init.b(),
                    };
                    worst = worst.max((p_top - want).abs());
                }
            }
        }
    }
    assert!(worst <= 1e-12, "worst deviation {worst:.3e}");
    budget("criterion 6", started, Duration::from_secs(30));
    println!(
        "criterion 6 (zero-coupling limit): PASS, worst dev {worst:.2e}, {:.2?}",
        started.elapsed()
    );
}

#[test]
fn criterion_7_memory_laws_keep_oscillating() {
    let started = Instant::now();
    let mut least = usize::MAX;
    for variant in [TfseVariant::NaberI, TfseVariant::NewTfse] {
        for beta in [0.1, 0.5, 0.9] {
            let table = sweep(SweepConfig {
                variants: vec![variant],
                beta_values: vec![beta],
                n_values: vec![20],
                ..base_config()
            });
            let curve: Vec<f64> = table.rows().iter().map(|r| r.p_excited).collect();
            assert_eq!(curve.len(), 400);
            let maxima = strict_local_maxima(&curve, 1e-12);
            least = least.min(maxima);
            assert!(
                maxima >= 3,
                "{} beta={beta}: only {maxima} local maxima",
                variant.label()
            );
        }
    }
    budget("criterion 7", started, Duration::from_secs(30));
    println!(
        "criterion 7 (oscillation witness): PASS, every curve has >= {least} maxima, {:.2?}",
        started.elapsed()
    );
}

#[test]
fn criterion_8_repeated_sweeps_are_byte_identical() {
    let started = Instant::now();
    let runs = FigurePreset::from_name("fig1").unwrap().runs();
    let mut total_rows = 0usize;
    for run in &runs {
        let first = sweep(run.config.clone());
        let second = sweep(run.config.clone());
        let a = first.to_csv_string();
        let b = second.to_csv_string();
        assert_eq!(a.as_bytes(), b.as_bytes(), "{}: runs differ", run.label);
        let expected = run.config.clone().canonical().unwrap().expected_rows();
        assert_eq!(expected, 3 * 3 * 400, "{}: row formula", run.label);
        assert_eq!(first.len(), expected, "{}: row count", run.label);
        assert_eq!(a.lines().count(), expected + 1, "{}: csv line count", run.label);
        total_rows += first.len();
    }
    assert_eq!(total_rows, 2 * 3600);
    budget("criterion 8", started, Duration::from_secs(60));
    println!(
        "criterion 8 (determinism): PASS, {total_rows} rows byte-stable, {:.2?}",
        started.elapsed()
    );
}

/// Keeps the single-qubit evolution honest end to end: the initial state
/// helper, the spectral propagator and the reduced density matrix agree on
/// the flagship closed form.
#[test]
fn cross_check_rabi_transfer_through_the_full_stack() {
    let params = ModelParams::new(0.5, 0, QubitCount::One).unwrap();
    let init = InitialState::new(0.0, 1.0).unwrap();
    let order = FractionalOrder::new(1.0).unwrap();
    let spec =
        EvolutionSpec::for_model(TfseVariant::NaberII, order, &params, &init).unwrap();
    let state0 = initial_state(&params, &init);
    assert_eq!(state0.amps(), spec.psi0().amps());
    let t = std::f64::consts::PI; // half a Rabi period at lambda = 0.5, n = 0
    let state = evolve(&spec, t).unwrap();
    let rho = reduce(&state).unwrap();
    assert!((excited_probability(&rho).unwrap()).abs() < 1e-12);
    assert!((total_probability(&rho) - 1.0).abs() < 1e-12);
}
