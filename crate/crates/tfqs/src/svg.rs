//! Self-contained SVG line plots of sweep tables, no plotting toolkit.
//!
//! A plot stacks one panel per variant present in the table.  Within a
//! panel, rows are split into curves by one sweep axis (for example one
//! curve per beta) with the selected probability on the y axis against t.
//! Rendering is a pure function of the table and grouping, so identical
//! inputs produce identical bytes.

use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

use crate::propagate::TfseVariant;
use crate::sweep::{CurveAxis, SweepRow, SweepTable, YField};

#[derive(Debug, Error)]
pub enum SvgError {
    #[error("empty selection: {0}")]
    EmptySelection(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// How to turn table rows into curves: which axis separates them and which
/// probability is plotted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grouping {
    pub curves: CurveAxis,
    pub y: YField,
}

const PANEL_WIDTH: f64 = 640.0;
const PANEL_HEIGHT: f64 = 300.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 160.0;
const MARGIN_TOP: f64 = 34.0;
const MARGIN_BOTTOM: f64 = 42.0;
const PALETTE: [&str; 6] =
    ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

struct Curve<'a> {
    key: f64,
    rows: Vec<&'a SweepRow>,
}

struct Panel<'a> {
    variant: TfseVariant,
    curves: Vec<Curve<'a>>,
}

/// Renders the plot as an SVG document string.
pub fn render_svg(table: &SweepTable, grouping: Grouping) -> Result<String, SvgError> {
    let panels = split_panels(table, grouping)?;
    let width = PANEL_WIDTH;
    let height = PANEL_HEIGHT * panels.len() as f64;
    let mut out = String::new();
    let _ = write!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\">\n\
         <style>text{{font-family:monospace;font-size:11px;fill:#222}}</style>\n\
         <rect width=\"{width:.0}\" height=\"{height:.0}\" fill=\"#ffffff\"/>\n"
    );
    for (k, panel) in panels.iter().enumerate() {
        render_panel(&mut out, panel, grouping, PANEL_HEIGHT * k as f64);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Renders the plot and writes it to `path`.
pub fn emit_svg(table: &SweepTable, grouping: Grouping, path: &Path) -> Result<(), SvgError> {
    let doc = render_svg(table, grouping)?;
    std::fs::write(path, doc)?;
    Ok(())
}

fn split_panels(table: &SweepTable, grouping: Grouping) -> Result<Vec<Panel<'_>>, SvgError> {
    if table.is_empty() {
        return Err(SvgError::EmptySelection("the table has no rows".into()));
    }
    let mut panels: Vec<Panel<'_>> = Vec::new();
    for row in table.rows() {
        let panel = match panels.iter_mut().find(|p| p.variant == row.variant) {
            Some(p) => p,
            None => {
                panels.push(Panel { variant: row.variant, curves: Vec::new() });
                panels.last_mut().expect("just pushed")
            }
        };
        let key = grouping.curves.value(row);
        match panel.curves.iter_mut().find(|c| c.key == key) {
            Some(c) => c.rows.push(row),
            None => panel.curves.push(Curve { key, rows: vec![row] }),
        }
    }
    for panel in &panels {
        for curve in &panel.curves {
            if curve.rows.len() < 2 {
                return Err(SvgError::EmptySelection(format!(
                    "curve {}={} of {} has {} point(s); a line needs at least 2",
                    grouping.curves.key(),
                    fmt_number(curve.key),
                    panel.variant.label(),
                    curve.rows.len()
                )));
            }
        }
    }
    Ok(panels)
}

fn render_panel(out: &mut String, panel: &Panel<'_>, grouping: Grouping, y_offset: f64) {
    let plot_w = PANEL_WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = PANEL_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;

    let mut t_min = f64::INFINITY;
    let mut t_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for curve in &panel.curves {
        for row in &curve.rows {
            t_min = t_min.min(row.t);
            t_max = t_max.max(row.t);
            let y = grouping.y.value(row);
            y_min = y_min.min(y);
            y_max = y_max.max(y);
        }
    }
    if t_max <= t_min {
        t_max = t_min + 1.0;
    }
    // pad the value range; a flat curve still gets a visible band
    let pad = (0.05 * (y_max - y_min)).max(0.05 * y_max.abs().max(y_min.abs())).max(1e-3);
    y_min -= pad;
    y_max += pad;

    let x_of = |t: f64| MARGIN_LEFT + (t - t_min) / (t_max - t_min) * plot_w;
    let y_of = |v: f64| MARGIN_TOP + (y_max - v) / (y_max - y_min) * plot_h;

    let _ = write!(out, "<g class=\"panel\" transform=\"translate(0,{y_offset:.1})\">\n");
    let _ = write!(
        out,
        "<text x=\"{:.1}\" y=\"20\" font-size=\"13\">{}: {}(t)</text>\n",
        MARGIN_LEFT,
        panel.variant.label(),
        grouping.y.label()
    );

    // frame
    let _ = write!(
        out,
        "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"{plot_w:.1}\" height=\"{plot_h:.1}\" \
         fill=\"none\" stroke=\"#444\"/>\n",
        MARGIN_LEFT, MARGIN_TOP
    );

    // ticks and labels
    for k in 0..=4 {
        let frac = k as f64 / 4.0;
        let t = t_min + frac * (t_max - t_min);
        let x = x_of(t);
        let base = MARGIN_TOP + plot_h;
        let _ = write!(
            out,
            "<line x1=\"{x:.1}\" y1=\"{base:.1}\" x2=\"{x:.1}\" y2=\"{:.1}\" stroke=\"#444\"/>\n\
             <text x=\"{x:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>\n",
            base + 5.0,
            base + 18.0,
            fmt_number(t)
        );
        let v = y_min + frac * (y_max - y_min);
        let y = y_of(v);
        let _ = write!(
            out,
            "<line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" stroke=\"#444\"/>\n\
             <text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">{}</text>\n",
            MARGIN_LEFT - 5.0,
            MARGIN_LEFT,
            MARGIN_LEFT - 8.0,
            y + 4.0,
            fmt_number(v)
        );
    }
    let _ = write!(
        out,
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">t</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        MARGIN_TOP + plot_h + 34.0
    );

    // curves
    for (k, curve) in panel.curves.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let mut points = String::new();
        for row in &curve.rows {
            let _ = write!(points, "{:.2},{:.2} ", x_of(row.t), y_of(grouping.y.value(row)));
        }
        let _ = write!(
            out,
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            points.trim_end()
        );
    }

    // legend
    let legend_x = PANEL_WIDTH - MARGIN_RIGHT + 12.0;
    for (k, curve) in panel.curves.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let y = MARGIN_TOP + 8.0 + 16.0 * k as f64;
        let _ = write!(
            out,
            "<line x1=\"{legend_x:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" \
             stroke=\"{color}\" stroke-width=\"1.5\"/>\n\
             <text x=\"{:.1}\" y=\"{:.1}\">{}={}</text>\n",
            legend_x + 22.0,
            legend_x + 28.0,
            y + 4.0,
            grouping.curves.key(),
            fmt_number(curve.key)
        );
    }
    out.push_str("</g>\n");
}

/// Short decimal form for tick and legend values: up to four decimal
/// places with trailing zeros removed.
fn fmt_number(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e4 || v.abs() < 1e-3) {
        return format!("{v:.2e}");
    }
    let mut s = format!("{v:.4}");
    while s.contains('.') && (s.ends_with('0') || s.ends_with('.')) {
        s.pop();
    }
    s
}
