//! Pins every figure preset to the checked-in parameter table so silent
//! edits to the canned studies cannot pass unnoticed.

use tfqs::propagate::TfseVariant;
use tfqs::sweep::{CurveAxis, FigurePreset, YField, DEFAULT_T_MAX, DEFAULT_T_STEPS};

struct TableRow {
    preset: String,
    variants: Vec<TfseVariant>,
    qubit_counts: Vec<u8>,
    beta: Vec<f64>,
    lambda: Vec<f64>,
    n: Vec<u32>,
    c0: Vec<f64>,
    y: YField,
    curves: CurveAxis,
}

fn load_table() -> Vec<TableRow> {
    let text = include_str!("data/figure_captions.tsv");
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("preset\t") {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        assert_eq!(fields.len(), 9, "malformed table row: {line}");
        let list = |s: &str| s.split(',').map(str::to_string).collect::<Vec<_>>();
        rows.push(TableRow {
            preset: fields[0].to_string(),
            variants: list(fields[1])
                .iter()
                .map(|v| TfseVariant::from_cli_name(v).expect("variant name"))
                .collect(),
            qubit_counts: list(fields[2]).iter().map(|v| v.parse().unwrap()).collect(),
            beta: list(fields[3]).iter().map(|v| v.parse().unwrap()).collect(),
            lambda: list(fields[4]).iter().map(|v| v.parse().unwrap()).collect(),
            n: list(fields[5]).iter().map(|v| v.parse().unwrap()).collect(),
            c0: list(fields[6]).iter().map(|v| v.parse().unwrap()).collect(),
            y: match fields[7] {
                "total" => YField::Total,
                "excited" => YField::Excited,
                other => panic!("unknown y field {other}"),
            },
            curves: match fields[8] {
                "beta" => CurveAxis::Beta,
                "lambda" => CurveAxis::Lambda,
                "n" => CurveAxis::PhotonNumber,
                "c0" => CurveAxis::Concurrence,
                other => panic!("unknown curve axis {other}"),
            },
        });
    }
    rows
}

#[test]
fn every_preset_matches_the_checked_in_table() {
    let table = load_table();
    assert_eq!(table.len(), FigurePreset::COUNT as usize);
    for row in &table {
        let preset = FigurePreset::from_name(&row.preset)
            .unwrap_or_else(|| panic!("table names unknown preset {}", row.preset));
        let runs = preset.runs();
        assert_eq!(
            runs.len(),
            row.qubit_counts.len(),
            "{}: expansion count",
            row.preset
        );
        for (run, &l) in runs.iter().zip(&row.qubit_counts) {
            assert_eq!(run.label, format!("{}_l{l}", row.preset));
            assert_eq!(run.config.qubits.count(), usize::from(l), "{}", run.label);
            assert_eq!(run.config.variants, row.variants, "{}", run.label);
            assert_eq!(run.config.beta_values, row.beta, "{}", run.label);
            assert_eq!(run.config.lambda_values, row.lambda, "{}", run.label);
            assert_eq!(run.config.n_values, row.n, "{}", run.label);
            assert_eq!(run.config.c0_values, row.c0, "{}", run.label);
            assert_eq!(run.config.t_max, DEFAULT_T_MAX, "{}", run.label);
            assert_eq!(run.config.t_steps, DEFAULT_T_STEPS, "{}", run.label);
            assert_eq!(run.y, row.y, "{}", run.label);
            assert_eq!(run.curves, row.curves, "{}", run.label);
        }
    }
}

#[test]
fn the_table_covers_all_presets_exactly_once() {
    let mut names: Vec<String> = load_table().iter().map(|r| r.preset.clone()).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), FigurePreset::COUNT as usize);
    for preset in FigurePreset::all() {
        assert!(names.contains(&preset.name()), "{} missing", preset.name());
    }
}
