//! Stability diagrams: regime classification swept over a (radius, length)
//! grid, with deterministic CSV/JSON serialization and an SVG rendering.
//!
//! A sweep evaluates the pointwise classification at every grid node, so a
//! diagram is nothing more than many [`crate::regimes::classify`] calls laid
//! out row-major (radius outer, length inner). Cells are independent; the
//! output ordering is fixed by the grid, so the sweep could run cells in
//! parallel without changing a byte of the serialized result.
//!
//! All three output formats are byte-deterministic for identical input:
//! numbers are rendered with 12 significant digits, JSON keys are sorted,
//! and SVG coordinates use fixed two-decimal pixels.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::fmt::{fmt_sig, opt_sig_json_number as opt_sig_number, sig_json_number as sig_number};
use crate::potential::PotentialParams;
use crate::regimes::{self, Regime, RegimeBoundaries};
use crate::spectrum::ModeIndex;
use serde_json::{json, Value};

/// Rectangular sweep request: uniform grid endpoints-inclusive on both axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub r_steps: usize,
    pub l_min: f64,
    pub l_max: f64,
    pub l_steps: usize,
    pub params: PotentialParams,
}

impl SweepSpec {
    /// Geometry checks: the grid must sit strictly outside the rod, have at
    /// least two steps per axis, and positive extent.
    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > self.params.r0) {
            return Err(Error::Domain(format!(
                "r_min = {} must exceed the rod radius r0 = {}",
                self.r_min, self.params.r0
            )));
        }
        if self.r_steps < 2 || self.l_steps < 2 {
            return Err(Error::Domain(format!(
                "need at least 2 steps per axis, got {} x {}",
                self.r_steps, self.l_steps
            )));
        }
        if !(self.r_max > self.r_min) {
            return Err(Error::Domain(format!(
                "r_max = {} must exceed r_min = {}",
                self.r_max, self.r_min
            )));
        }
        if !(self.l_min > 0.0) || !(self.l_max > self.l_min) {
            return Err(Error::Domain(format!(
                "length window must satisfy 0 < l_min < l_max, got [{}, {}]",
                self.l_min, self.l_max
            )));
        }
        if [self.r_min, self.r_max, self.l_min, self.l_max]
            .iter()
            .any(|x| !x.is_finite())
        {
            return Err(Error::Domain("grid bounds must be finite".into()));
        }
        Ok(())
    }
}

/// One grid node's verdict. `mode` is the governing instability of that
/// radius, absent in the very-thin regime where nothing ever destabilizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub r: f64,
    pub l: f64,
    pub stable: bool,
    pub regime: Regime,
    pub mode: Option<ModeIndex>,
}

/// Critical length over one grid radius; `None` renders as "inf"/null.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub r: f64,
    pub l_crit: Option<f64>,
}

/// Fully materialized sweep result.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityDiagram {
    pub params: PotentialParams,
    pub cells: Vec<Cell>,
    pub curve: Vec<CurvePoint>,
    pub boundaries: RegimeBoundaries,
}

/// Evaluate the classification on the grid, row-major in `r` then `l`.
///
/// A cell is stable exactly when its length sits strictly below the critical
/// length of its radius (a cell *at* the critical length carries the neutral
/// mode, counted as unstable).
pub fn sweep(spec: &SweepSpec) -> Result<StabilityDiagram> {
    spec.validate()?;
    let radii = uniform_grid(spec.r_min, spec.r_max, spec.r_steps);
    let lengths = uniform_grid(spec.l_min, spec.l_max, spec.l_steps);

    let mut cells = Vec::with_capacity(radii.len() * lengths.len());
    let mut curve = Vec::with_capacity(radii.len());
    for &r in &radii {
        let at_cell = |l: f64, e: Error| Error::AtCell {
            r,
            l,
            source: Box::new(e),
        };
        let report = regimes::classify(r, &spec.params).map_err(|e| at_cell(spec.l_min, e))?;
        curve.push(CurvePoint {
            r,
            l_crit: report.critical.length(),
        });
        for &l in &lengths {
            // Fresh classification per cell keeps every verdict independently
            // reproducible.
            let report = regimes::classify(r, &spec.params).map_err(|e| at_cell(l, e))?;
            let stable = match report.critical.length() {
                None => true,
                Some(l_crit) => l < l_crit,
            };
            cells.push(Cell {
                r,
                l,
                stable,
                regime: report.regime,
                mode: report.critical.mode(),
            });
        }
    }

    Ok(StabilityDiagram {
        params: spec.params,
        cells,
        curve,
        boundaries: regimes::boundaries(&spec.params, spec.r_max)?,
    })
}

/// Endpoint-inclusive uniform grid with the endpoints reproduced exactly.
fn uniform_grid(min: f64, max: f64, steps: usize) -> Vec<f64> {
    let span = max - min;
    (0..steps)
        .map(|i| {
            if i == steps - 1 {
                max
            } else {
                min + span * i as f64 / (steps as f64 - 1.0)
            }
        })
        .collect()
}

impl StabilityDiagram {
    /// CSV with columns exactly `r,l,stable,regime,k,m`, one row per cell;
    /// the very-thin regime leaves `k` and `m` empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,l,stable,regime,k,m\n");
        for c in &self.cells {
            let (k, m) = match c.mode {
                Some(mode) => (mode.k().to_string(), mode.m().to_string()),
                None => (String::new(), String::new()),
            };
            writeln!(
                out,
                "{},{},{},{},{},{}",
                fmt_sig(c.r, 12),
                fmt_sig(c.l, 12),
                c.stable,
                c.regime,
                k,
                m
            )
            .expect("writing to a String cannot fail");
        }
        out
    }

    /// JSON object with `params`, `boundaries`, `cells`, `curve` and a
    /// `schema_version` marker; unbounded critical lengths become null.
    pub fn to_json(&self) -> String {
        let cells: Vec<Value> = self
            .cells
            .iter()
            .map(|c| {
                json!({
                    "r": sig_number(c.r),
                    "l": sig_number(c.l),
                    "stable": c.stable,
                    "regime": c.regime.to_string(),
                    "k": c.mode.map_or(Value::Null, |m| m.k().into()),
                    "m": c.mode.map_or(Value::Null, |m| m.m().into()),
                })
            })
            .collect();
        let curve: Vec<Value> = self
            .curve
            .iter()
            .map(|p| {
                json!({
                    "r": sig_number(p.r),
                    "l_crit": opt_sig_number(p.l_crit),
                })
            })
            .collect();
        let doc = json!({
            "schema_version": 1,
            "params": {
                "rho": sig_number(self.params.rho),
                "omega": sig_number(self.params.omega),
                "alpha": sig_number(self.params.alpha),
                "r0": sig_number(self.params.r0),
            },
            "boundaries": {
                "r1": opt_sig_number(self.boundaries.r1),
                "r2": opt_sig_number(self.boundaries.r2),
                "r_critical_closed_form": opt_sig_number(self.boundaries.r_critical_closed_form),
            },
            "cells": cells,
            "curve": curve,
        });
        serde_json::to_string(&doc).expect("diagram JSON is always serializable")
    }

    /// Raster-free SVG 1.1 rendering: cells as fill rectangles (stable in
    /// one color, unstable keyed by governing mode), a regime ribbon with
    /// one path per contiguous regime band, the critical-length curve, and
    /// labeled axes.
    pub fn to_svg(&self) -> Result<String> {
        if self.cells.is_empty() {
            return Err(Error::Domain("cannot render an empty diagram".into()));
        }
        let svg = SvgLayout::new(self).render();
        Ok(svg)
    }
}

// ---------------------------------------------------------------------------
// SVG rendering
// ---------------------------------------------------------------------------

const SVG_WIDTH: f64 = 720.0;
const SVG_HEIGHT: f64 = 540.0;
const PLOT_LEFT: f64 = 70.0;
const PLOT_RIGHT: f64 = 545.0;
const PLOT_TOP: f64 = 60.0;
const PLOT_BOTTOM: f64 = 480.0;
const RIBBON_TOP: f64 = 38.0;
const RIBBON_BOTTOM: f64 = 52.0;
const LEGEND_X: f64 = 565.0;

const FILL_STABLE: &str = "#c6dbef";
const FILL_UNSTABLE_02: &str = "#fdae6b";
const FILL_UNSTABLE_11: &str = "#e15759";
const FILL_VERY_THIN: &str = "#74add1";
const FILL_MEDIUM: &str = "#fee090";
const FILL_THICK: &str = "#f46d43";

struct SvgLayout<'a> {
    diagram: &'a StabilityDiagram,
    r_lo: f64,
    r_hi: f64,
    l_lo: f64,
    l_hi: f64,
    dr: f64,
    dl: f64,
}

impl<'a> SvgLayout<'a> {
    fn new(diagram: &'a StabilityDiagram) -> Self {
        let mut radii: Vec<f64> = diagram.curve.iter().map(|p| p.r).collect();
        radii.dedup();
        let mut lengths: Vec<f64> = diagram.cells.iter().map(|c| c.l).collect();
        lengths.sort_by(f64::total_cmp);
        lengths.dedup();
        let spacing = |v: &[f64]| {
            if v.len() > 1 {
                (v[v.len() - 1] - v[0]) / (v.len() as f64 - 1.0)
            } else {
                1.0
            }
        };
        let (dr, dl) = (spacing(&radii), spacing(&lengths));
        let r_lo = radii.first().copied().unwrap_or(0.0) - 0.5 * dr;
        let r_hi = radii.last().copied().unwrap_or(1.0) + 0.5 * dr;
        let l_lo = lengths.first().copied().unwrap_or(0.0) - 0.5 * dl;
        let l_hi = lengths.last().copied().unwrap_or(1.0) + 0.5 * dl;
        Self {
            diagram,
            r_lo,
            r_hi,
            l_lo,
            l_hi,
            dr,
            dl,
        }
    }

    fn x(&self, r: f64) -> f64 {
        PLOT_LEFT + (r - self.r_lo) / (self.r_hi - self.r_lo) * (PLOT_RIGHT - PLOT_LEFT)
    }

    fn y(&self, l: f64) -> f64 {
        PLOT_BOTTOM - (l - self.l_lo) / (self.l_hi - self.l_lo) * (PLOT_BOTTOM - PLOT_TOP)
    }

    fn render(&self) -> String {
        let mut s = String::with_capacity(64 * 1024);
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
             width=\"{SVG_WIDTH}\" height=\"{SVG_HEIGHT}\" \
             viewBox=\"0 0 {SVG_WIDTH} {SVG_HEIGHT}\">"
        )
        .unwrap();
        s.push_str("<title>Film stability diagram</title>\n");

        self.render_cells(&mut s);
        self.render_regime_ribbon(&mut s);
        self.render_curve(&mut s);
        self.render_axes(&mut s);
        self.render_legend(&mut s);

        s.push_str("</svg>\n");
        s
    }

    fn render_cells(&self, s: &mut String) {
        s.push_str("<g stroke=\"none\">\n");
        for c in &self.diagram.cells {
            let (class, fill) = cell_style(c);
            let x0 = self.x(c.r - 0.5 * self.dr);
            let x1 = self.x(c.r + 0.5 * self.dr);
            let y0 = self.y(c.l + 0.5 * self.dl);
            let y1 = self.y(c.l - 0.5 * self.dl);
            writeln!(
                s,
                "<rect class=\"{class}\" x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" \
                 height=\"{:.2}\" fill=\"{fill}\"/>",
                x0,
                y0,
                x1 - x0,
                y1 - y0
            )
            .unwrap();
        }
        s.push_str("</g>\n");
    }

    /// One path per regime band in the strip above the plot; regimes are
    /// contiguous in radius, so min/max extent per regime is exact.
    fn render_regime_ribbon(&self, s: &mut String) {
        for (regime, class, fill) in regime_styles() {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for c in &self.diagram.cells {
                if c.regime == regime {
                    lo = lo.min(c.r - 0.5 * self.dr);
                    hi = hi.max(c.r + 0.5 * self.dr);
                }
            }
            if lo > hi {
                continue; // regime absent from this sweep
            }
            let (x0, x1) = (self.x(lo), self.x(hi));
            writeln!(
                s,
                "<path class=\"{class}\" fill=\"{fill}\" d=\"M {x0:.2} {RIBBON_TOP} \
                 L {x1:.2} {RIBBON_TOP} L {x1:.2} {RIBBON_BOTTOM} L {x0:.2} {RIBBON_BOTTOM} Z\"/>"
            )
            .unwrap();
        }
    }

    fn render_curve(&self, s: &mut String) {
        let mut d = String::new();
        let mut pen_down = false;
        for p in &self.diagram.curve {
            match p.l_crit {
                Some(l) if l >= self.l_lo && l <= self.l_hi => {
                    let cmd = if pen_down { 'L' } else { 'M' };
                    write!(d, "{cmd} {:.2} {:.2} ", self.x(p.r), self.y(l)).unwrap();
                    pen_down = true;
                }
                // Unbounded or out of frame: break the stroke.
                _ => pen_down = false,
            }
        }
        if !d.is_empty() {
            writeln!(
                s,
                "<path class=\"critical-curve\" fill=\"none\" stroke=\"#1a1a1a\" \
                 stroke-width=\"2\" d=\"{}\"/>",
                d.trim_end()
            )
            .unwrap();
        }
    }

    fn render_axes(&self, s: &mut String) {
        writeln!(
            s,
            "<path fill=\"none\" stroke=\"#333\" stroke-width=\"1\" \
             d=\"M {PLOT_LEFT} {PLOT_TOP} L {PLOT_LEFT} {PLOT_BOTTOM} L {PLOT_RIGHT} {PLOT_BOTTOM}\"/>"
        )
        .unwrap();
        let label = |s: &mut String, x: f64, y: f64, anchor: &str, text: String| {
            writeln!(
                s,
                "<text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"12\" \
                 font-family=\"sans-serif\" text-anchor=\"{anchor}\">{text}</text>"
            )
            .unwrap();
        };
        let radii = (self.r_lo + 0.5 * self.dr, self.r_hi - 0.5 * self.dr);
        let lengths = (self.l_lo + 0.5 * self.dl, self.l_hi - 0.5 * self.dl);
        label(
            s,
            self.x(radii.0),
            PLOT_BOTTOM + 16.0,
            "middle",
            fmt_sig(radii.0, 6),
        );
        label(
            s,
            self.x(radii.1),
            PLOT_BOTTOM + 16.0,
            "middle",
            fmt_sig(radii.1, 6),
        );
        label(
            s,
            PLOT_LEFT - 6.0,
            self.y(lengths.0) + 4.0,
            "end",
            fmt_sig(lengths.0, 6),
        );
        label(
            s,
            PLOT_LEFT - 6.0,
            self.y(lengths.1) + 4.0,
            "end",
            fmt_sig(lengths.1, 6),
        );
        label(
            s,
            0.5 * (PLOT_LEFT + PLOT_RIGHT),
            PLOT_BOTTOM + 38.0,
            "middle",
            "film radius r (length units)".into(),
        );
        writeln!(
            s,
            "<text x=\"18\" y=\"{:.2}\" font-size=\"12\" font-family=\"sans-serif\" \
             text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">film length l (length units)</text>",
            0.5 * (PLOT_TOP + PLOT_BOTTOM),
            0.5 * (PLOT_TOP + PLOT_BOTTOM)
        )
        .unwrap();
    }

    fn render_legend(&self, s: &mut String) {
        let mut y = PLOT_TOP + 10.0;
        let entry = |s: &mut String, y: &mut f64, class: &str, fill: &str, text: &str| {
            writeln!(
                s,
                "<rect class=\"{class}\" x=\"{LEGEND_X}\" y=\"{:.2}\" width=\"14\" \
                 height=\"14\" fill=\"{fill}\"/>",
                *y
            )
            .unwrap();
            writeln!(
                s,
                "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" \
                 font-family=\"sans-serif\">{text}</text>",
                LEGEND_X + 20.0,
                *y + 11.0
            )
            .unwrap();
            *y += 22.0;
        };

        for (regime, _, fill) in regime_styles() {
            if self.diagram.cells.iter().any(|c| c.regime == regime) {
                let name = match regime {
                    Regime::VeryThin => "very thin",
                    Regime::Medium => "medium",
                    Regime::Thick => "thick",
                };
                entry(s, &mut y, "legend-regime", fill, name);
            }
        }
        y += 8.0;
        entry(s, &mut y, "legend-cell", FILL_STABLE, "stable");
        if self
            .diagram
            .cells
            .iter()
            .any(|c| !c.stable && is_mode(c, 0, 2))
        {
            entry(
                s,
                &mut y,
                "legend-cell",
                FILL_UNSTABLE_02,
                "unstable, mode (0,2)",
            );
        }
        if self
            .diagram
            .cells
            .iter()
            .any(|c| !c.stable && is_mode(c, 1, 1))
        {
            entry(
                s,
                &mut y,
                "legend-cell",
                FILL_UNSTABLE_11,
                "unstable, mode (1,1)",
            );
        }
    }
}

fn is_mode(c: &Cell, k: u32, m: u32) -> bool {
    c.mode.is_some_and(|mode| mode.k() == k && mode.m() == m)
}

fn cell_style(c: &Cell) -> (&'static str, &'static str) {
    if c.stable {
        ("cell-stable", FILL_STABLE)
    } else if is_mode(c, 1, 1) {
        ("cell-unstable-k1m1", FILL_UNSTABLE_11)
    } else {
        ("cell-unstable-k0m2", FILL_UNSTABLE_02)
    }
}

fn regime_styles() -> [(Regime, &'static str, &'static str); 3] {
    [
        (Regime::VeryThin, "band-verythin", FILL_VERY_THIN),
        (Regime::Medium, "band-medium", FILL_MEDIUM),
        (Regime::Thick, "band-thick", FILL_THICK),
    ]
}
