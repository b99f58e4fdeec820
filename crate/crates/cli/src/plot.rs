//! Deterministic SVG figure emitters: histogram, landscape scatter,
//! footprint overlay, kNN decision regions, projection coefficient bars,
//! and per-generation fitness curves.
//!
//! Every emitter is a pure function from data to SVG text, so identical
//! inputs give byte-identical files.

use std::path::PathBuf;

use anyhow::{bail, Context};
use hcspace_core::analysis::{knn_classify, runtime_histogram, AlgoLabel};
use hcspace_core::archive::InstanceRecord;
use hcspace_core::features::FEATURE_NAMES;
use hcspace_core::projection::ProjectionModel;

use crate::cmds::{labeled_points, load_model};
use crate::ioutil::{read_records, write_text};

const W: f64 = 640.0;
const H: f64 = 480.0;
const ML: f64 = 64.0; // left margin
const MR: f64 = 24.0;
const MT: f64 = 48.0;
const MB: f64 = 56.0;

/// Linear data-to-pixel frame for the plot area.
struct Frame {
    xlo: f64,
    xhi: f64,
    ylo: f64,
    yhi: f64,
}

impl Frame {
    /// Frame over the given data ranges with 5% padding; degenerate
    /// ranges widen to ±0.5 so single values still render.
    fn padded(xr: (f64, f64), yr: (f64, f64)) -> Frame {
        let pad = |(lo, hi): (f64, f64)| {
            if hi > lo {
                let d = (hi - lo) * 0.05;
                (lo - d, hi + d)
            } else {
                (lo - 0.5, hi + 0.5)
            }
        };
        let (xlo, xhi) = pad(xr);
        let (ylo, yhi) = pad(yr);
        Frame { xlo, xhi, ylo, yhi }
    }

    fn px(&self, x: f64) -> f64 {
        ML + (x - self.xlo) / (self.xhi - self.xlo) * (W - ML - MR)
    }

    fn py(&self, y: f64) -> f64 {
        H - MB - (y - self.ylo) / (self.yhi - self.ylo) * (H - MT - MB)
    }
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn fmt_px(v: f64) -> String {
    format!("{v:.2}")
}

/// Two-color ramp from blue (low) to red (high); `t` in [0,1].
fn ramp(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let lerp = |a: u8, b: u8| (a as f64 + (b as f64 - a as f64) * t).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        lerp(0x21, 0xb2),
        lerp(0x66, 0x18),
        lerp(0xac, 0x2c)
    )
}

fn svg_open(out: &mut String) {
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
    ));
    out.push_str(&format!("<rect width=\"{W}\" height=\"{H}\" fill=\"#ffffff\"/>\n"));
}

fn svg_text(out: &mut String, x: f64, y: f64, size: f64, anchor: &str, extra: &str, s: &str) {
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"{size}\" font-family=\"sans-serif\" text-anchor=\"{anchor}\"{extra}>{}</text>\n",
        fmt_px(x),
        fmt_px(y),
        esc(s)
    ));
}

/// Plot border, 5 ticks per axis, and axis labels.
fn svg_axes(out: &mut String, frame: &Frame, xlabel: &str, ylabel: &str) {
    out.push_str(&format!(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#333333\"/>\n",
        fmt_px(ML),
        fmt_px(MT),
        fmt_px(W - ML - MR),
        fmt_px(H - MT - MB)
    ));
    for i in 0..5 {
        let f = i as f64 / 4.0;
        let xv = frame.xlo + f * (frame.xhi - frame.xlo);
        let yv = frame.ylo + f * (frame.yhi - frame.ylo);
        let xp = frame.px(xv);
        let yp = frame.py(yv);
        out.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#333333\"/>\n",
            fmt_px(xp),
            fmt_px(H - MB),
            fmt_px(H - MB + 4.0)
        ));
        svg_text(out, xp, H - MB + 16.0, 10.0, "middle", "", &format!("{xv:.2}"));
        out.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{2}\" x2=\"{1}\" y2=\"{2}\" stroke=\"#333333\"/>\n",
            fmt_px(ML - 4.0),
            fmt_px(ML),
            fmt_px(yp)
        ));
        svg_text(out, ML - 6.0, yp + 3.0, 10.0, "end", "", &format!("{yv:.2}"));
    }
    svg_text(out, ML + (W - ML - MR) / 2.0, H - 12.0, 12.0, "middle", "", xlabel);
    let ty = MT + (H - MT - MB) / 2.0;
    svg_text(
        out,
        16.0,
        ty,
        12.0,
        "middle",
        &format!(" transform=\"rotate(-90 16 {})\"", fmt_px(ty)),
        ylabel,
    );
}

fn svg_title(out: &mut String, title: &str) {
    svg_text(out, W / 2.0, 20.0, 13.0, "middle", "", title);
}

fn svg_annotation(out: &mut String, note: &str) {
    svg_text(out, W / 2.0, 36.0, 11.0, "middle", "", note);
}

// ---- histogram -------------------------------------------------------------

fn plot_histogram(records: &[InstanceRecord], width: f64, clamp: Option<(f64, f64)>) -> anyhow::Result<String> {
    let values: Vec<f64> = records.iter().filter_map(|r| r.runtime_diff()).collect();
    if values.is_empty() {
        bail!("no record has a runtime difference; run the solve command first");
    }
    let hist = runtime_histogram(&values, width, clamp).context("binning runtime differences")?;
    let bins = hist.counts.len();
    let max_count = *hist.counts.iter().max().expect("non-empty") as f64;
    let (lo, _) = hist.bin_edges(0);
    let (_, hi) = hist.bin_edges(bins - 1);
    let frame = Frame::padded((lo, hi), (0.0, max_count.max(1.0)));
    let mut out = String::new();
    svg_open(&mut out);
    svg_title(&mut out, "runtime difference histogram");
    match clamp {
        Some((a, b)) => svg_annotation(
            &mut out,
            &format!("{} values, clamped to [{a}, {b}]", values.len()),
        ),
        None => svg_annotation(&mut out, &format!("{} values", values.len())),
    }
    for (i, &c) in hist.counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (l, r) = hist.bin_edges(i);
        let x = frame.px(l);
        let w = frame.px(r) - x;
        let y = frame.py(c as f64);
        out.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#2166ac\" stroke=\"#ffffff\" stroke-width=\"0.5\"/>\n",
            fmt_px(x),
            fmt_px(y),
            fmt_px(w),
            fmt_px(frame.py(0.0) - y)
        ));
    }
    svg_axes(&mut out, &frame, "runtime difference (s)", "instances");
    out.push_str("</svg>\n");
    Ok(out)
}

// ---- scatter plots ---------------------------------------------------------

fn coord_points(records: &[InstanceRecord]) -> anyhow::Result<Vec<(f64, f64, Option<f64>, u64)>> {
    let pts: Vec<(f64, f64, Option<f64>, u64)> = records
        .iter()
        .filter_map(|r| Some((r.px?, r.py?, r.runtime_diff(), r.id)))
        .collect();
    if pts.is_empty() {
        bail!("no record has landscape coordinates; run the project command first");
    }
    Ok(pts)
}

fn frame_of(pts: &[(f64, f64, Option<f64>, u64)]) -> Frame {
    let xr = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |a, p| {
        (a.0.min(p.0), a.1.max(p.0))
    });
    let yr = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |a, p| {
        (a.0.min(p.1), a.1.max(p.1))
    });
    Frame::padded(xr, yr)
}

fn plot_landscape(records: &[InstanceRecord], clamp: Option<(f64, f64)>) -> anyhow::Result<String> {
    let pts = coord_points(records)?;
    let frame = frame_of(&pts);
    let diffs: Vec<f64> = pts.iter().filter_map(|p| p.2).collect();
    let (lo, hi) = match clamp {
        Some(c) => c,
        None => {
            let lo = diffs.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = diffs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            if diffs.is_empty() {
                (0.0, 1.0)
            } else if hi > lo {
                (lo, hi)
            } else {
                (lo - 0.5, hi + 0.5)
            }
        }
    };
    let mut out = String::new();
    svg_open(&mut out);
    svg_title(&mut out, "instance landscape");
    match clamp {
        Some((a, b)) => svg_annotation(
            &mut out,
            &format!("color: runtime difference clamped to [{a}, {b}]"),
        ),
        None => svg_annotation(&mut out, &format!("color: runtime difference over [{lo:.3}, {hi:.3}]")),
    }
    for (x, y, diff, _) in &pts {
        let fill = match diff {
            Some(d) => ramp((d - lo) / (hi - lo)),
            None => "#999999".to_string(),
        };
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{}\" fill-opacity=\"0.8\"/>\n",
            fmt_px(frame.px(*x)),
            fmt_px(frame.py(*y)),
            fill
        ));
    }
    svg_axes(&mut out, &frame, "component 1", "component 2");
    out.push_str("</svg>\n");
    Ok(out)
}

fn plot_footprint(records: &[InstanceRecord], tag: &str) -> anyhow::Result<String> {
    let pts = coord_points(records)?;
    let tagged: std::collections::HashSet<u64> =
        hcspace_core::analysis::footprint(records, tag)
            .iter()
            .map(|r| r.id)
            .collect();
    let frame = frame_of(&pts);
    let hit_count = pts.iter().filter(|p| tagged.contains(&p.3)).count();
    let mut out = String::new();
    svg_open(&mut out);
    svg_title(&mut out, "source footprint");
    svg_annotation(
        &mut out,
        &format!("footprint of {tag}: {hit_count} of {} instances", pts.len()),
    );
    // Background points first so the footprint draws on top.
    for (x, y, _, id) in pts.iter().filter(|p| !tagged.contains(&p.3)) {
        let _ = id;
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"2.5\" fill=\"#bbbbbb\" fill-opacity=\"0.7\"/>\n",
            fmt_px(frame.px(*x)),
            fmt_px(frame.py(*y))
        ));
    }
    for (x, y, _, _) in pts.iter().filter(|p| tagged.contains(&p.3)) {
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#b2182c\" fill-opacity=\"0.85\"/>\n",
            fmt_px(frame.px(*x)),
            fmt_px(frame.py(*y))
        ));
    }
    svg_axes(&mut out, &frame, "component 1", "component 2");
    out.push_str("</svg>\n");
    Ok(out)
}

fn plot_regions(records: &[InstanceRecord], k: usize, res: usize) -> anyhow::Result<String> {
    let train = labeled_points(records);
    if train.is_empty() {
        bail!("no record has coordinates and a runtime difference; run solve and project first");
    }
    if res < 2 {
        bail!("--grid-res must be at least 2");
    }
    let pts: Vec<(f64, f64, Option<f64>, u64)> = train
        .iter()
        .map(|p| (p.x, p.y, Some(p.runtime_diff), p.instance_id))
        .collect();
    let frame = frame_of(&pts);
    let mut out = String::new();
    svg_open(&mut out);
    svg_title(&mut out, "solver-choice decision regions");
    svg_annotation(
        &mut out,
        &format!("k-nearest-neighbour regions, k = {k}, {} training points", train.len()),
    );
    let cw = (W - ML - MR) / res as f64;
    let ch = (H - MT - MB) / res as f64;
    for gy in 0..res {
        for gx in 0..res {
            let cx = frame.xlo + (gx as f64 + 0.5) / res as f64 * (frame.xhi - frame.xlo);
            let cy = frame.ylo + (gy as f64 + 0.5) / res as f64 * (frame.yhi - frame.ylo);
            let label = knn_classify(&train, (cx, cy), k).context("classifying grid cell")?;
            let fill = match label {
                AlgoLabel::ExactFaster => "#d1e5f0",
                AlgoLabel::HeuristicFaster => "#fddbc7",
            };
            // Pixel y of the cell's top edge: higher gy = higher data y.
            let x = ML + gx as f64 * cw;
            let y = H - MB - (gy as f64 + 1.0) * ch;
            out.push_str(&format!(
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{fill}\"/>\n",
                fmt_px(x),
                fmt_px(y),
                fmt_px(cw + 0.1),
                fmt_px(ch + 0.1)
            ));
        }
    }
    for p in &train {
        let fill = match p.label {
            AlgoLabel::ExactFaster => "#2166ac",
            AlgoLabel::HeuristicFaster => "#b2182c",
        };
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"2.5\" fill=\"{fill}\"/>\n",
            fmt_px(frame.px(p.x)),
            fmt_px(frame.py(p.y))
        ));
    }
    svg_axes(&mut out, &frame, "component 1", "component 2");
    out.push_str("</svg>\n");
    Ok(out)
}

// ---- coefficients ----------------------------------------------------------

fn plot_coefficients(model: &ProjectionModel) -> anyhow::Result<String> {
    let max_abs = model
        .components
        .iter()
        .flatten()
        .fold(0.0f64, |a, c| a.max(c.abs()))
        .max(1e-12);
    let frame = Frame::padded((0.0, FEATURE_NAMES.len() as f64), (-max_abs, max_abs));
    let mut out = String::new();
    svg_open(&mut out);
    svg_title(&mut out, "projection component coefficients");
    svg_annotation(
        &mut out,
        &format!(
            "variance explained: {:.3} / {:.3}",
            model.variance_explained[0], model.variance_explained[1]
        ),
    );
    let zero_y = frame.py(0.0);
    out.push_str(&format!(
        "<line x1=\"{}\" y1=\"{2}\" x2=\"{}\" y2=\"{2}\" stroke=\"#888888\"/>\n",
        fmt_px(ML),
        fmt_px(W - MR),
        fmt_px(zero_y)
    ));
    let colors = ["#2166ac", "#e08214"];
    for (f, name) in FEATURE_NAMES.iter().enumerate() {
        for c in 0..2 {
            let v = model.components[c][f];
            let x = frame.px(f as f64 + 0.15 + 0.35 * c as f64);
            let w = frame.px(f as f64 + 0.5) - frame.px(f as f64 + 0.15);
            let y = frame.py(v.max(0.0));
            let h = (frame.py(v.min(0.0)) - y).max(0.5);
            out.push_str(&format!(
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n",
                fmt_px(x),
                fmt_px(y),
                fmt_px(w),
                fmt_px(h),
                colors[c]
            ));
        }
        let lx = frame.px(f as f64 + 0.5);
        svg_text(
            &mut out,
            lx,
            H - MB + 14.0,
            8.0,
            "end",
            &format!(" transform=\"rotate(-45 {} {})\"", fmt_px(lx), fmt_px(H - MB + 14.0)),
            name,
        );
    }
    svg_text(&mut out, W - MR - 150.0, MT + 14.0, 10.0, "start", "", "component 1");
    out.push_str(&format!(
        "<rect x=\"{}\" y=\"{}\" width=\"10\" height=\"10\" fill=\"#2166ac\"/>\n",
        fmt_px(W - MR - 164.0),
        fmt_px(MT + 5.0)
    ));
    svg_text(&mut out, W - MR - 150.0, MT + 30.0, 10.0, "start", "", "component 2");
    out.push_str(&format!(
        "<rect x=\"{}\" y=\"{}\" width=\"10\" height=\"10\" fill=\"#e08214\"/>\n",
        fmt_px(W - MR - 164.0),
        fmt_px(MT + 21.0)
    ));
    svg_text(
        &mut out,
        16.0,
        MT + (H - MT - MB) / 2.0,
        12.0,
        "middle",
        &format!(" transform=\"rotate(-90 16 {})\"", fmt_px(MT + (H - MT - MB) / 2.0)),
        "coefficient",
    );
    out.push_str("</svg>\n");
    Ok(out)
}

// ---- fitness curves --------------------------------------------------------

struct StatsRow {
    gen: f64,
    min: f64,
    mean: f64,
    max: f64,
}

fn parse_stats_csv(text: &str) -> anyhow::Result<Vec<StatsRow>> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    if header != "gen,min,mean,max,mean_edges" {
        bail!("unexpected stats header {header:?}");
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<f64> = line
            .split(',')
            .map(|f| f.parse::<f64>())
            .collect::<Result<_, _>>()
            .with_context(|| format!("stats line {}", i + 2))?;
        if fields.len() != 5 {
            bail!("stats line {} has {} fields, expected 5", i + 2, fields.len());
        }
        rows.push(StatsRow {
            gen: fields[0],
            min: fields[1],
            mean: fields[2],
            max: fields[3],
        });
    }
    if rows.is_empty() {
        bail!("stats file has no data rows");
    }
    Ok(rows)
}

fn plot_fitness_curves(text: &str) -> anyhow::Result<String> {
    let rows = parse_stats_csv(text)?;
    let xr = (rows[0].gen, rows[rows.len() - 1].gen);
    let ylo = rows.iter().map(|r| r.min).fold(f64::INFINITY, f64::min);
    let yhi = rows.iter().map(|r| r.max).fold(f64::NEG_INFINITY, f64::max);
    let frame = Frame::padded(xr, (ylo, yhi));
    let mut out = String::new();
    svg_open(&mut out);
    svg_title(&mut out, "fitness per generation");
    svg_annotation(&mut out, &format!("{} generations", rows.len()));
    let series: [(&str, &str, fn(&StatsRow) -> f64); 3] = [
        ("#2166ac", "min", |r| r.min),
        ("#555555", "mean", |r| r.mean),
        ("#b2182c", "max", |r| r.max),
    ];
    for (color, label, get) in series {
        let path: Vec<String> = rows
            .iter()
            .map(|r| format!("{},{}", fmt_px(frame.px(r.gen)), fmt_px(frame.py(get(r)))))
            .collect();
        out.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
            path.join(" ")
        ));
        let last = &rows[rows.len() - 1];
        svg_text(
            &mut out,
            W - MR - 4.0,
            frame.py(get(last)) - 4.0,
            9.0,
            "end",
            "",
            label,
        );
    }
    svg_axes(&mut out, &frame, "generation", "fitness (s)");
    out.push_str("</svg>\n");
    Ok(out)
}

// ---- command glue ----------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Histogram,
    Landscape,
    Footprint,
    Regions,
    Coefficients,
    FitnessCurves,
}

pub struct PlotArgs {
    pub kind: PlotKind,
    pub archive: Option<PathBuf>,
    pub model: Option<PathBuf>,
    pub stats: Option<PathBuf>,
    pub tag: Option<String>,
    pub k: usize,
    pub grid_res: usize,
    pub bin_width: f64,
    pub clamp: Option<(f64, f64)>,
    pub out: Option<PathBuf>,
}

pub fn cmd_plot(a: &PlotArgs) -> anyhow::Result<()> {
    let svg = match a.kind {
        PlotKind::Histogram => {
            let records = read_records(a.archive.as_deref())?;
            plot_histogram(&records, a.bin_width, a.clamp)?
        }
        PlotKind::Landscape => {
            let records = read_records(a.archive.as_deref())?;
            plot_landscape(&records, a.clamp)?
        }
        PlotKind::Footprint => {
            let records = read_records(a.archive.as_deref())?;
            let Some(tag) = &a.tag else {
                bail!("footprint plots need --tag (e.g. generator, evolved:novelty)");
            };
            plot_footprint(&records, tag)?
        }
        PlotKind::Regions => {
            let records = read_records(a.archive.as_deref())?;
            plot_regions(&records, a.k, a.grid_res)?
        }
        PlotKind::Coefficients => {
            let Some(model) = &a.model else {
                bail!("coefficient plots need --model");
            };
            plot_coefficients(&load_model(model)?)?
        }
        PlotKind::FitnessCurves => {
            let Some(stats) = &a.stats else {
                bail!("fitness-curve plots need --stats (a per-generation CSV)");
            };
            let text = std::fs::read_to_string(stats)
                .with_context(|| format!("reading {}", stats.display()))?;
            plot_fitness_curves(&text)?
        }
    };
    write_text(a.out.as_deref(), &svg)
}
