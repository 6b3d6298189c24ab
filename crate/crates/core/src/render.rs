//! Deterministic ASCII and SVG staircase pictures: dots at line bottoms,
//! vertical rays above them, optional band-corner guides and gap labels.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lattice::{self, GroundSet, Point, Window};
use crate::sequence::DoublingSequence;

/// Largest ASCII grid, cells per side.
const ASCII_MAX: i64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderOptions {
    pub show_ck_labels: bool,
    pub show_gap_labels: bool,
    /// SVG pixels per lattice unit, at least 1.
    pub cell_size: u32,
    pub margin: u32,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            show_ck_labels: false,
            show_gap_labels: false,
            cell_size: 24,
            margin: 30,
        }
    }
}

/// The dots a rendering of `w` carries: every line bottom that falls inside
/// the window.
pub fn dot_points(seq: &DoublingSequence, ground: GroundSet, w: &Window) -> Result<Vec<Point>> {
    let mut dots = Vec::new();
    for x in w.x_min..=w.x_max {
        if let Some(bottom) = lattice::line_bottom(seq, ground, x)? {
            if bottom >= w.y_min && bottom <= w.y_max {
                dots.push(Point::new(x, bottom));
            }
        }
    }
    Ok(dots)
}

/// Text grid: `o` at line bottoms, `|` above them, `.` elsewhere in-domain,
/// space out-of-domain. Top row is `y_max`.
pub fn render_ascii(seq: &DoublingSequence, ground: GroundSet, w: &Window) -> Result<String> {
    if w.width() > ASCII_MAX || w.height() > ASCII_MAX {
        return Err(Error::WindowTooLarge {
            width: w.width(),
            height: w.height(),
            max: ASCII_MAX,
        });
    }
    let mut bottoms = Vec::with_capacity(w.width() as usize);
    for x in w.x_min..=w.x_max {
        bottoms.push(lattice::line_bottom(seq, ground, x)?);
    }
    let mut out = String::with_capacity((w.width() as usize + 1) * w.height() as usize);
    for y in (w.y_min..=w.y_max).rev() {
        for (col, x) in (w.x_min..=w.x_max).enumerate() {
            let glyph = if !ground.contains_x(x) || !ground.contains_y(y) {
                ' '
            } else {
                match bottoms[col] {
                    Some(b) if y == b => 'o',
                    Some(b) if y > b => '|',
                    _ => '.',
                }
            };
            out.push(glyph);
        }
        out.push('\n');
    }
    Ok(out)
}

/// Fixed numeric formatting: integers where exact, otherwise one decimal
/// place, so identical input gives byte-identical output.
fn fmt_px(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v:.1}")
    }
}

struct Canvas {
    out: String,
    cell: f64,
    margin: f64,
    x_min: i64,
    y_max: i64,
}

impl Canvas {
    fn px(&self, x: f64) -> f64 {
        self.margin + (x - self.x_min as f64) * self.cell
    }

    fn py(&self, y: f64) -> f64 {
        self.margin + (self.y_max as f64 - y) * self.cell
    }

    fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, style: &str) {
        let _ = writeln!(
            self.out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {style}/>",
            fmt_px(self.px(x1)),
            fmt_px(self.py(y1)),
            fmt_px(self.px(x2)),
            fmt_px(self.py(y2)),
        );
    }

    fn circle(&mut self, x: f64, y: f64, r: f64) {
        let _ = writeln!(
            self.out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\"/>",
            fmt_px(self.px(x)),
            fmt_px(self.py(y)),
            fmt_px(r),
        );
    }

    fn text(&mut self, x: f64, y: f64, size: f64, content: &str) {
        let _ = writeln!(
            self.out,
            "<text x=\"{}\" y=\"{}\" font-size=\"{}\" font-family=\"monospace\" text-anchor=\"middle\">{content}</text>",
            fmt_px(self.px(x)),
            fmt_px(self.py(y)),
            fmt_px(size),
        );
    }
}

/// A standalone SVG staircase picture. Dots sit exactly on the line bottoms
/// inside the window; rays are clipped at the window top.
pub fn render_svg(
    seq: &DoublingSequence,
    ground: GroundSet,
    w: &Window,
    opts: &RenderOptions,
) -> Result<String> {
    if opts.cell_size < 1 {
        return Err(Error::Parse("cell size must be at least 1".to_string()));
    }
    let cell = opts.cell_size as f64;
    let margin = opts.margin as f64;
    let width = margin * 2.0 + (w.width() - 1) as f64 * cell;
    let height = margin * 2.0 + (w.height() - 1) as f64 * cell;
    let mut canvas = Canvas {
        out: String::new(),
        cell,
        margin,
        x_min: w.x_min,
        y_max: w.y_max,
    };
    let _ = writeln!(
        canvas.out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        fmt_px(width),
        fmt_px(height),
        fmt_px(width),
        fmt_px(height),
    );
    let _ = writeln!(
        canvas.out,
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>",
        fmt_px(width),
        fmt_px(height),
    );

    let thin = format!(
        "stroke=\"#999999\" stroke-width=\"{}\"",
        fmt_px(cell * 0.05)
    );
    if w.y_min <= 0 && 0 <= w.y_max {
        let style = thin.clone();
        canvas.line(w.x_min as f64, 0.0, w.x_max as f64, 0.0, &style);
    }
    if w.x_min <= 0 && 0 <= w.x_max {
        let style = thin.clone();
        canvas.line(0.0, w.y_min as f64, 0.0, w.y_max as f64, &style);
    }
    // the y = x guide
    let diag_lo = w.x_min.max(w.y_min);
    let diag_hi = w.x_max.min(w.y_max);
    if diag_lo <= diag_hi {
        let style = thin.clone();
        canvas.line(
            diag_lo as f64,
            diag_lo as f64,
            diag_hi as f64,
            diag_hi as f64,
            &style,
        );
    }

    let ray_style = format!("stroke=\"black\" stroke-width=\"{}\"", fmt_px(cell * 0.12));
    let mut bottoms = Vec::with_capacity(w.width() as usize);
    for x in w.x_min..=w.x_max {
        bottoms.push(lattice::line_bottom(seq, ground, x)?);
    }
    for (col, x) in (w.x_min..=w.x_max).enumerate() {
        let Some(bottom) = bottoms[col] else { continue };
        if bottom > w.y_max {
            continue;
        }
        let start = bottom.max(w.y_min);
        canvas.line(
            x as f64,
            start as f64,
            x as f64,
            w.y_max as f64,
            &ray_style.clone(),
        );
        if bottom >= w.y_min {
            canvas.circle(x as f64, bottom as f64, cell * 0.18);
        }
    }

    if opts.show_ck_labels {
        let dotted = format!(
            "stroke=\"#666666\" stroke-width=\"{}\" stroke-dasharray=\"2,3\"",
            fmt_px(cell * 0.05)
        );
        for k in 2u32.. {
            let c = seq.term(k)?;
            let Some(c) = c.to_i64() else { break };
            if c > w.x_max {
                break;
            }
            if c < w.x_min {
                continue;
            }
            let lo = 0.max(w.y_min);
            let hi = c.min(w.y_max);
            if lo <= hi {
                canvas.line(c as f64, lo as f64, c as f64, hi as f64, &dotted.clone());
            }
            let label_y = if w.y_min <= 0 {
                -0.6
            } else {
                w.y_min as f64 - 0.6
            };
            canvas.text(
                c as f64,
                label_y.max(w.y_min as f64 - 0.9),
                cell * 0.45,
                &format!("c{k}"),
            );
        }
    }

    if opts.show_gap_labels {
        let dashed = format!(
            "stroke=\"#666666\" stroke-width=\"{}\" stroke-dasharray=\"1,2\"",
            fmt_px(cell * 0.04)
        );
        for x in w.x_min.max(1)..=w.x_max {
            let idx = (x - w.x_min) as usize;
            let Some(bottom) = bottoms[idx] else { continue };
            let gap = bottom - x;
            let lo = x.max(w.y_min);
            let hi = bottom.min(w.y_max);
            if lo > hi {
                continue;
            }
            canvas.line(x as f64, lo as f64, x as f64, hi as f64, &dashed.clone());
            let mid = (lo + hi) as f64 / 2.0;
            canvas.text(x as f64 + 0.3, mid, cell * 0.4, &gap.to_string());
        }
    }

    canvas.out.push_str("</svg>\n");
    Ok(canvas.out)
}
